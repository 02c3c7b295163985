//! Singular vectors for the subalgebra action: product families, leading
//! monomials, branching patterns, and graded exponent sets.
//!
//! A vector here is a product of determinant minors of the variable table
//! together with extended far-column variables; the exponent data of one
//! product is a [`SingularSpec`]. The feasible exponent tuples are bounded
//! by the weight increments `k_i`, and deduplicating products by leading
//! monomial yields one representative per subalgebra highest-weight line,
//! in bijection with interlacing branching patterns (Zhelobenko rules).
//!
//! # Examples
//!
//! ```
//! use oscrep::exact::Int;
//! use oscrep::liealg::Weight;
//! use oscrep::oscrep::RepContext;
//! use oscrep::singular::{
//!     branching_dimension_sum, enumerate_basis_specs, singular_poly, verify_singular,
//! };
//! use oscrep::Parity;
//!
//! let lambda: Weight = "0,1".parse().unwrap();
//! let specs = enumerate_basis_specs(Parity::Odd, &lambda, None).unwrap();
//! assert_eq!(specs.len(), 3);
//!
//! // Each product is annihilated by the subalgebra raising operators, and
//! // its smallest monomial is known in closed form.
//! let ctx = RepContext::for_weight(1, Parity::Odd, &lambda).unwrap();
//! for spec in &specs {
//!     assert!(verify_singular(&ctx, spec).unwrap());
//!     let p = singular_poly(&ctx, spec).unwrap();
//!     assert_eq!(p.leading(Parity::Odd).unwrap().0, &spec.leading_monomial());
//! }
//!
//! // Summing subalgebra dimensions over the family recovers the ambient
//! // dimension: the branching rule at the level of numbers.
//! assert_eq!(branching_dimension_sum(Parity::Odd, &lambda).unwrap(), Int::from(5));
//! ```

use crate::exact::{HalfInt, Int};
use crate::liealg::{sub_raising_elems, weyl_dim, Weight};
use crate::oscrep::RepContext;
use crate::poly::{Monomial, Poly, VarIndex};
use crate::{Error, Parity, Result};
use num::ToPrimitive;

/// Exponent tuple of one singular-vector product for subalgebra rank `n`.
///
/// The product is, for the odd family,
/// `f_{n,0}(0)^{g0} * prod_i f_{n,i}(i)^{gamma[i-1]}
///  * prod_j f_{n,j}(-(n+1))^{gamma_pr[j-1]}
///  * prod_k x_{k-1,-(n+1)}^{gamma_neg[k-1]}`,
/// and for the even family the `g0` factor is absent, the `gamma_neg[0]`
/// exponent belongs to `f_{n,1}(-1)` instead of `x_{0,-(n+1)}`, and
/// `gamma_pr[0]` is identically zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SingularSpec {
    pub parity: Parity,
    /// Subalgebra rank (the ambient weight has rank `n + 1`).
    pub n: u32,
    /// Exponent of `f_{n,0}(0)` (odd family only).
    pub gamma0: u64,
    /// Exponents of `f_{n,i}(i)` for `i = 1..n`.
    pub gamma: Vec<u64>,
    /// Exponents of `x_{i-1,-(n+1)}` for `i = 1..n` (odd) respectively
    /// `f_{n,1}(-1)` at index 0 and `x_{i-1,-(n+1)}` above (even).
    pub gamma_neg: Vec<u64>,
    /// Exponents of `f_{n,j}(-(n+1))` for `j = 1..n`.
    pub gamma_pr: Vec<u64>,
}

/// The exponent tuple of the leading monomial of a singular product: the
/// top-row variable `x_{n,i}` carries `pos[i-1]`, `x_{n,-i}` carries
/// `neg[i-1]`, and (odd only) `x_{n,0}` carries `beta0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BetaTuple {
    pub parity: Parity,
    pub n: u32,
    pub beta0: u64,
    pub pos: Vec<u64>,
    pub neg: Vec<u64>,
}

/// An interlacing branching pattern `(kappa, nu)`.
///
/// `kappa` holds `kappa_0..kappa_n` for the odd family and
/// `kappa_1..kappa_n` for the even family; `nu` holds `nu_1..nu_n` (the
/// subalgebra highest weight) for both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingPattern {
    pub parity: Parity,
    pub kappa: Vec<HalfInt>,
    pub nu: Vec<HalfInt>,
}

fn ks_u64(parity: Parity, lambda: &Weight) -> Result<Vec<u64>> {
    Ok(lambda
        .ks(parity)?
        .iter()
        .map(|k| {
            k.to_u64()
                .expect("dominant increments are nonnegative and small")
        })
        .collect())
}

fn check_rank(parity: Parity, lambda: &Weight, n: u32) -> Result<()> {
    if lambda.rank() != n as usize + 1 {
        return Err(Error::InvalidWeight(format!(
            "ambient weight {lambda} has rank {}, expected {}",
            lambda.rank(),
            n + 1
        )));
    }
    if parity == Parity::Even && lambda.rank() < 2 {
        return Err(Error::InvalidWeight(
            "the even family needs an ambient rank of at least 2".into(),
        ));
    }
    Ok(())
}

impl SingularSpec {
    /// The all-zero spec (the empty product `1`).
    pub fn zero(parity: Parity, n: u32) -> Self {
        SingularSpec {
            parity,
            n,
            gamma0: 0,
            gamma: vec![0; n as usize],
            gamma_neg: vec![0; n as usize],
            gamma_pr: vec![0; n as usize],
        }
    }

    /// Degree of the product in the top-row variables: each plain factor
    /// contributes 1 and each `f_{n,j}(-(n+1))` factor contributes 2.
    pub fn degree(&self) -> u64 {
        self.gamma0
            + self.gamma.iter().sum::<u64>()
            + self.gamma_neg.iter().sum::<u64>()
            + 2 * self.gamma_pr.iter().sum::<u64>()
    }

    /// Validates the family constraints against the ambient weight.
    pub fn check(&self, lambda: &Weight) -> Result<()> {
        check_rank(self.parity, lambda, self.n)?;
        let n = self.n as usize;
        if self.gamma.len() != n || self.gamma_neg.len() != n || self.gamma_pr.len() != n {
            return Err(Error::ConstraintViolation(format!(
                "exponent vectors must have length {n}"
            )));
        }
        let ks = ks_u64(self.parity, lambda)?;
        let fail = |what: String| Err(Error::ConstraintViolation(what));
        match self.parity {
            Parity::Odd => {
                if n == 0 {
                    if self.gamma0 > ks[0] {
                        return fail(format!("gamma0 = {} > k1 = {}", self.gamma0, ks[0]));
                    }
                    return Ok(());
                }
                if self.gamma[n - 1] + self.gamma_pr[n - 1] > ks[n] {
                    return fail(format!("top-level exponents exceed k_{} = {}", n + 1, ks[n]));
                }
                for i in 1..n {
                    if self.gamma[i - 1] + self.gamma_neg[i] + self.gamma_pr[i - 1] > ks[i] {
                        return fail(format!("level-{i} exponents exceed k_{} = {}", i + 1, ks[i]));
                    }
                }
                if self.gamma0 + 2 * self.gamma_neg[0] > ks[0] {
                    return fail(format!("gamma0 + 2*gamma_neg1 exceeds k1 = {}", ks[0]));
                }
            }
            Parity::Even => {
                if self.gamma0 != 0 {
                    return fail("the even family has no gamma0 factor".into());
                }
                if self.gamma_pr[0] != 0 {
                    return fail("the even family has no f_{n,1}(-(n+1)) factor".into());
                }
                if self.gamma[n - 1] + self.gamma_pr[n - 1] > ks[n] {
                    return fail(format!("top-level exponents exceed k_{} = {}", n + 1, ks[n]));
                }
                for i in 2..n {
                    if self.gamma[i - 1] + self.gamma_neg[i] + self.gamma_pr[i - 1] > ks[i] {
                        return fail(format!("level-{i} exponents exceed k_{} = {}", i + 1, ks[i]));
                    }
                }
                if n >= 2 {
                    if self.gamma[0] + self.gamma_neg[1] > ks[1] {
                        return fail(format!("gamma1 + gamma_neg2 exceeds k2 = {}", ks[1]));
                    }
                    if self.gamma_neg[0] + self.gamma_neg[1] > ks[0] {
                        return fail(format!("gamma_neg1 + gamma_neg2 exceeds k1 = {}", ks[0]));
                    }
                } else if self.gamma_neg[0] > ks[0] {
                    return fail(format!("gamma_neg1 exceeds k1 = {}", ks[0]));
                }
            }
        }
        Ok(())
    }

    /// Leading-monomial exponents on the top row.
    pub fn beta(&self) -> BetaTuple {
        let n = self.n as usize;
        let mut pos = Vec::with_capacity(n);
        let mut neg = Vec::with_capacity(n);
        for i in 0..n {
            pos.push(self.gamma[i] + self.gamma_pr[i]);
            neg.push(self.gamma_neg[i] + self.gamma_pr[i]);
        }
        BetaTuple {
            parity: self.parity,
            n: self.n,
            beta0: self.gamma0,
            pos,
            neg,
        }
    }

    /// Closed-form leading monomial: `x_{n,0}^{beta0} * prod x_{n,i}^{pos_i}
    /// * prod x_{n,-i}^{neg_i}` (the `x_{n,0}` factor only for the odd
    /// family). This is the minimal monomial of the expanded product in the
    /// degree-lexicographic order.
    pub fn leading_monomial(&self) -> Monomial {
        let beta = self.beta();
        let n = self.n;
        let mut pairs: Vec<(VarIndex, u32)> = Vec::new();
        if self.parity == Parity::Odd && beta.beta0 > 0 {
            pairs.push((VarIndex::new(n, 0), beta.beta0 as u32));
        }
        for i in 1..=n as usize {
            if beta.pos[i - 1] > 0 {
                pairs.push((VarIndex::new(n, i as i32), beta.pos[i - 1] as u32));
            }
            if beta.neg[i - 1] > 0 {
                pairs.push((VarIndex::new(n, -(i as i32)), beta.neg[i - 1] as u32));
            }
        }
        Monomial::from_pairs(pairs)
    }

    /// Subalgebra weight of the product: `nu_i = mu_i + gamma_i -
    /// gamma_neg_i`.
    pub fn weight(&self, lambda: &Weight) -> Weight {
        let n = self.n as usize;
        let mut coords = Vec::with_capacity(n);
        for i in 1..=n {
            let shift = self.gamma[i - 1] as i64 - self.gamma_neg[i - 1] as i64;
            coords.push(lambda.mu(i).plus_int(shift));
        }
        Weight::new(coords)
    }

    /// Canonical representative with the same leading monomial: primed
    /// exponents are maximized level by level (equivalently, the tuple is
    /// lexicographically minimal in the interleaved order `(gamma0,
    /// gamma_1, gamma_neg_1, gamma_2, ..., gamma_pr_1, ...)`).
    pub fn canonical(&self) -> SingularSpec {
        self.beta().canonical_spec()
    }

    /// The degree-reflecting substitution: replaces the `f_{n,0}(0)` and
    /// `f_{n,j}(-(n+1))` exponents (odd) respectively the level-1 and
    /// `f_{n,j}(-(n+1))` exponents (even) by their budget complements,
    /// then canonicalizes. It maps degree `r` to `2*mu_{n+1} - r`; the
    /// subalgebra weight is preserved except that the even substitution
    /// negates the first coordinate.
    pub fn involution(&self, lambda: &Weight) -> Result<SingularSpec> {
        self.check(lambda)?;
        let ks = ks_u64(self.parity, lambda)?;
        let n = self.n as usize;
        let mut out = self.clone();
        match self.parity {
            Parity::Odd => {
                if n == 0 {
                    out.gamma0 = ks[0] - self.gamma0;
                    return Ok(out);
                }
                out.gamma0 = ks[0] - self.gamma0 - 2 * self.gamma_neg[0];
                for j in 1..n {
                    out.gamma_pr[j - 1] =
                        ks[j] - self.gamma[j - 1] - self.gamma_neg[j] - self.gamma_pr[j - 1];
                }
                out.gamma_pr[n - 1] = ks[n] - self.gamma[n - 1] - self.gamma_pr[n - 1];
            }
            Parity::Even => {
                let gn2 = if n >= 2 { self.gamma_neg[1] } else { 0 };
                out.gamma[0] = ks[1] - self.gamma[0] - gn2;
                out.gamma_neg[0] = ks[0] - self.gamma_neg[0] - gn2;
                for j in 2..n {
                    out.gamma_pr[j - 1] =
                        ks[j] - self.gamma[j - 1] - self.gamma_neg[j] - self.gamma_pr[j - 1];
                }
                if n >= 2 {
                    out.gamma_pr[n - 1] = ks[n] - self.gamma[n - 1] - self.gamma_pr[n - 1];
                }
            }
        }
        Ok(out.canonical())
    }
}

impl BetaTuple {
    /// Coordinates in signed-index order: `beta_{-n}, ..., beta_{-1},
    /// (beta_0 for the odd family,) beta_1, ..., beta_n`.
    pub fn signed_vec(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.neg.iter().rev().copied().collect();
        if self.parity == Parity::Odd {
            out.push(self.beta0);
        }
        out.extend(self.pos.iter().copied());
        out
    }

    /// Total degree `|beta|`.
    pub fn degree(&self) -> u64 {
        self.beta0 + self.pos.iter().sum::<u64>() + self.neg.iter().sum::<u64>()
    }

    /// Subalgebra weight `nu_i = mu_i + beta_i - beta_{-i}`.
    pub fn weight(&self, lambda: &Weight) -> Weight {
        let n = self.n as usize;
        let mut coords = Vec::with_capacity(n);
        for i in 1..=n {
            let shift = self.pos[i - 1] as i64 - self.neg[i - 1] as i64;
            coords.push(lambda.mu(i).plus_int(shift));
        }
        Weight::new(coords)
    }

    /// The canonical spec with this leading monomial: primed exponents take
    /// `min(pos, neg)` on every level that has them.
    pub fn canonical_spec(&self) -> SingularSpec {
        let n = self.n as usize;
        let mut gamma = vec![0u64; n];
        let mut gamma_neg = vec![0u64; n];
        let mut gamma_pr = vec![0u64; n];
        for i in 0..n {
            let primed_level = self.parity == Parity::Odd || i >= 1;
            if primed_level {
                let p = self.pos[i].min(self.neg[i]);
                gamma_pr[i] = p;
                gamma[i] = self.pos[i] - p;
                gamma_neg[i] = self.neg[i] - p;
            } else {
                gamma[i] = self.pos[i];
                gamma_neg[i] = self.neg[i];
            }
        }
        SingularSpec {
            parity: self.parity,
            n: self.n,
            gamma0: self.beta0,
            gamma,
            gamma_neg,
            gamma_pr,
        }
    }
}

/// Expands the product polynomial of a spec in the context's variables.
pub fn singular_poly(ctx: &RepContext, spec: &SingularSpec) -> Result<Poly> {
    let lambda = ctx.weight().ok_or_else(|| {
        Error::InvalidWeight("singular vectors need a dominant-weight context".into())
    })?;
    spec.check(lambda)?;
    if spec.parity != ctx.parity() || spec.n != ctx.n() {
        return Err(Error::InvalidArgument(
            "spec family does not match the context".into(),
        ));
    }
    let n = spec.n;
    let vt = ctx.var_table();
    let far = -(n as i32) - 1;
    let mut out = Poly::one();
    if spec.parity == Parity::Odd && spec.gamma0 > 0 {
        out = out.mul(&vt.f_lower(n, 0, 0).pow(spec.gamma0 as u32));
    }
    for i in 1..=n as usize {
        let gi = spec.gamma[i - 1] as u32;
        if gi > 0 {
            out = out.mul(&vt.f_lower(n, i as u32, i as i32).pow(gi));
        }
        let gp = spec.gamma_pr[i - 1] as u32;
        if gp > 0 {
            out = out.mul(&vt.f_lower(n, i as u32, far).pow(gp));
        }
        let gm = spec.gamma_neg[i - 1] as u32;
        if gm > 0 {
            let factor = if spec.parity == Parity::Even && i == 1 {
                vt.f_lower(n, 1, -1)
            } else {
                vt.x(i as u32 - 1, far).clone()
            };
            out = out.mul(&factor.pow(gm));
        }
    }
    assert!(!out.is_zero(), "singular products are nonzero");
    Ok(out)
}

/// True iff the expanded product is annihilated by every raising operator
/// of the subalgebra.
pub fn verify_singular(ctx: &RepContext, spec: &SingularSpec) -> Result<bool> {
    let f = singular_poly(ctx, spec)?;
    for e in sub_raising_elems(ctx.n(), ctx.parity()) {
        if !ctx.apply_pair(e.i, e.j, &f).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Enumerates the full constrained family (all feasible exponent tuples,
/// canonical or not). Intended for exhaustive verification at small rank.
pub fn enumerate_family(parity: Parity, lambda: &Weight) -> Result<Vec<SingularSpec>> {
    let n = lambda.rank() as u32 - 1;
    check_rank(parity, lambda, n)?;
    let ks = ks_u64(parity, lambda)?;
    let cap = ks.iter().copied().max().unwrap_or(0);
    let nn = n as usize;
    let mut out = Vec::new();
    // Box enumeration over all coordinates, filtered by the constraints.
    let coords = 1 + 3 * nn;
    let mut cur = vec![0u64; coords];
    loop {
        let spec = SingularSpec {
            parity,
            n,
            gamma0: cur[0],
            gamma: cur[1..1 + nn].to_vec(),
            gamma_neg: cur[1 + nn..1 + 2 * nn].to_vec(),
            gamma_pr: cur[1 + 2 * nn..].to_vec(),
        };
        if spec.check(lambda).is_ok() {
            out.push(spec);
        }
        // Odometer increment.
        let mut idx = coords;
        for i in 0..coords {
            if cur[i] < cap {
                cur[i] += 1;
                for c in cur.iter_mut().take(i) {
                    *c = 0;
                }
                idx = i;
                break;
            }
        }
        if idx == coords {
            break;
        }
    }
    out.sort_by_key(|s| (s.degree(), s.beta().signed_vec()));
    Ok(out)
}

/// Which graded exponent set to enumerate.
#[derive(Clone, Copy, PartialEq, Eq)]
enum BetaSet {
    /// The full polynomial-space set: no bound involving the top ambient
    /// label (no `beta_n <= k_{n+1}`, and at the degenerate rank where the
    /// first-coordinate increments already involve the top label — odd
    /// `n = 0`, even `n = 1` — no bounds at all).
    Hat,
    /// The finite-module set: all family constraints.
    Module,
}

struct BetaWalk<'a> {
    parity: Parity,
    n: u32,
    nn: usize,
    ks: &'a [u64],
    set: BetaSet,
    degree: Option<u64>,
    /// Whether the bounds tying the first signed coordinates to `k_1`
    /// (and `k_2`) apply. They reference the top ambient label exactly
    /// when the subalgebra rank is degenerate (odd 0, even 1), so the
    /// polynomial-space set drops them there.
    first_active: bool,
    out: Vec<BetaTuple>,
}

impl BetaWalk<'_> {
    fn budget(&self, used: u64) -> Option<u64> {
        self.degree.map(|r| r - used)
    }

    fn walk_pos(&mut self, i: usize, beta0: u64, pos: &mut Vec<u64>, used: u64) {
        if i > self.nn {
            self.walk_neg(1, beta0, pos, &mut Vec::new(), used);
            return;
        }
        let cap: Option<u64> = if i < self.nn {
            Some(self.ks[i])
        } else {
            match self.set {
                BetaSet::Module => Some(self.ks[self.nn]),
                BetaSet::Hat => None,
            }
        };
        let ub = match (cap, self.budget(used)) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("the unbounded set is enumerated per degree"),
        };
        for v in 0..=ub {
            pos.push(v);
            self.walk_pos(i + 1, beta0, pos, used + v);
            pos.pop();
        }
    }

    fn walk_neg(&mut self, i: usize, beta0: u64, pos: &[u64], neg: &mut Vec<u64>, used: u64) {
        if i > self.nn {
            if self.degree.is_some_and(|r| used != r) {
                return;
            }
            self.out.push(BetaTuple {
                parity: self.parity,
                n: self.n,
                beta0,
                pos: pos.to_vec(),
                neg: neg.clone(),
            });
            return;
        }
        let cap: Option<i64> = match (self.parity, i) {
            (Parity::Odd, 1) => {
                Some((2 * pos[0] as i64 - beta0 as i64 + self.ks[0] as i64).div_euclid(2))
            }
            (Parity::Even, 1) => {
                if self.first_active {
                    Some(self.ks[0] as i64)
                } else {
                    None
                }
            }
            (Parity::Even, 2) => {
                let a = pos[1] as i64 - pos[0] as i64 + self.ks[1] as i64;
                let b = pos[1] as i64 - neg[0] as i64 + self.ks[0] as i64;
                Some(a.min(b))
            }
            _ => Some(pos[i - 1] as i64 - pos[i - 2] as i64 + self.ks[i - 1] as i64),
        };
        let ub = match (cap, self.budget(used)) {
            (Some(a), Some(b)) => a.min(b as i64),
            (Some(a), None) => a,
            (None, Some(b)) => b as i64,
            (None, None) => unreachable!("the unbounded set is enumerated per degree"),
        };
        if ub < 0 {
            return;
        }
        for v in 0..=ub as u64 {
            neg.push(v);
            self.walk_neg(i + 1, beta0, pos, neg, used + v);
            neg.pop();
        }
    }
}

fn enumerate_betas(
    parity: Parity,
    lambda: &Weight,
    set: BetaSet,
    degree: Option<u64>,
) -> Result<Vec<BetaTuple>> {
    let n = lambda.rank() as u32 - 1;
    check_rank(parity, lambda, n)?;
    let ks = ks_u64(parity, lambda)?;
    let nn = n as usize;
    let degenerate_first = match parity {
        Parity::Odd => nn == 0,
        Parity::Even => nn == 1,
    };
    let mut walk = BetaWalk {
        parity,
        n,
        nn,
        ks: &ks,
        set,
        degree,
        first_active: set == BetaSet::Module || !degenerate_first,
        out: Vec::new(),
    };
    let beta0_cap: Option<u64> = match parity {
        Parity::Even => Some(0),
        Parity::Odd => {
            if walk.first_active {
                Some(ks[0])
            } else {
                None
            }
        }
    };
    let beta0_ub = match (beta0_cap, degree) {
        (Some(a), Some(r)) => a.min(r),
        (Some(a), None) => a,
        (None, Some(r)) => r,
        (None, None) => unreachable!("the unbounded set is enumerated per degree"),
    };
    for b0 in 0..=beta0_ub {
        walk.walk_pos(1, b0, &mut Vec::new(), b0);
    }
    let mut out = walk.out;
    out.sort_by_key(|b| (b.degree(), b.signed_vec()));
    Ok(out)
}

/// Enumerates the canonical singular-vector basis specs for the finite
/// module: one per leading monomial, optionally filtered to top-row
/// degree `r`.
pub fn enumerate_basis_specs(
    parity: Parity,
    lambda: &Weight,
    r: Option<u64>,
) -> Result<Vec<SingularSpec>> {
    let betas = enumerate_betas(parity, lambda, BetaSet::Module, None)?;
    Ok(betas
        .into_iter()
        .filter(|b| r.is_none_or(|r| b.degree() == r))
        .map(|b| b.canonical_spec())
        .collect())
}

/// Enumerates the degree-`r` exponent tuples for the whole polynomial
/// space (no top-label cutoff).
pub fn enumerate_beta_hat(parity: Parity, lambda: &Weight, r: u64) -> Result<Vec<BetaTuple>> {
    enumerate_betas(parity, lambda, BetaSet::Hat, Some(r))
}

/// Sum of subalgebra dimensions over the branching classes; equals the
/// ambient dimension when the family is complete.
pub fn branching_dimension_sum(parity: Parity, lambda: &Weight) -> Result<Int> {
    let mut sum = Int::from(0);
    for spec in enumerate_basis_specs(parity, lambda, None)? {
        sum += weyl_dim(parity, &spec.weight(lambda))?;
    }
    Ok(sum)
}

/// Branching pattern of a spec: `kappa_i = mu_i + beta_i`, `nu_i = kappa_i
/// - beta_{-i}` on primed levels; on the first level the odd family sets
/// `kappa_0 = min(mu_1, nu_1) - gamma0` and the even family sets `nu_1 =
/// mu_1 + gamma_1 - gamma_neg_1`, `kappa_1 = max(|mu_1|, |nu_1|) +
/// min(gamma_1, gamma_neg_1)`.
pub fn to_pattern(spec: &SingularSpec, lambda: &Weight) -> Result<BranchingPattern> {
    spec.check(lambda)?;
    let n = spec.n as usize;
    let beta = spec.beta();
    let nu = spec.weight(lambda);
    let mut kappa = Vec::new();
    match spec.parity {
        Parity::Odd => {
            let mut k0 = lambda.mu(1).clone();
            if n >= 1 {
                k0 = k0.min(nu.mu(1).clone());
            }
            kappa.push(k0.plus_int(-(spec.gamma0 as i64)));
            for i in 1..=n {
                kappa.push(lambda.mu(i).plus_int(beta.pos[i - 1] as i64));
            }
        }
        Parity::Even => {
            let base = lambda.mu(1).abs().max(nu.mu(1).abs());
            let m = spec.gamma[0].min(spec.gamma_neg[0]);
            kappa.push(base.plus_int(m as i64));
            for i in 2..=n {
                kappa.push(lambda.mu(i).plus_int(beta.pos[i - 1] as i64));
            }
        }
    }
    let pattern = BranchingPattern {
        parity: spec.parity,
        kappa,
        nu: nu.coords().to_vec(),
    };
    check_interlacing(&pattern, lambda)?;
    Ok(pattern)
}

/// Validates the interlacing chains of a pattern against the ambient
/// weight.
pub fn check_interlacing(pattern: &BranchingPattern, lambda: &Weight) -> Result<()> {
    let n = lambda.rank() - 1;
    let fail = |what: String| Err(Error::InterlacingViolation(what));
    if pattern.nu.len() != n {
        return fail(format!("nu must have length {n}"));
    }
    let class_ok = |x: &HalfInt| (x - lambda.mu(1)).is_integer();
    if !pattern.kappa.iter().all(class_ok) || !pattern.nu.iter().all(class_ok) {
        return fail("kappa and nu must be integral or half-integral as the ambient weight".into());
    }
    match pattern.parity {
        Parity::Odd => {
            if pattern.kappa.len() != n + 1 {
                return fail(format!("kappa must have length {}", n + 1));
            }
            let k0 = &pattern.kappa[0];
            if &-lambda.mu(1) > k0 || k0 > lambda.mu(1) {
                return fail(format!("kappa_0 = {k0} outside [-mu_1, mu_1]"));
            }
            if n >= 1 {
                let nu1 = &pattern.nu[0];
                if &(-nu1) > k0 || k0 > nu1 {
                    return fail(format!("kappa_0 = {k0} outside [-nu_1, nu_1]"));
                }
            }
            for i in 1..=n {
                let ki = &pattern.kappa[i];
                if lambda.mu(i) > ki || ki > lambda.mu(i + 1) {
                    return fail(format!("kappa_{i} = {ki} outside [mu_{i}, mu_{}]", i + 1));
                }
                if &pattern.nu[i - 1] > ki {
                    return fail(format!("nu_{i} > kappa_{i}"));
                }
                if i >= 2 && pattern.kappa[i - 1] > pattern.nu[i - 1] {
                    return fail(format!("kappa_{} > nu_{i}", i - 1));
                }
            }
        }
        Parity::Even => {
            if pattern.kappa.len() != n {
                return fail(format!("kappa must have length {n}"));
            }
            for i in 1..=n {
                let ki = &pattern.kappa[i - 1];
                let lower = if i == 1 {
                    lambda.mu(1).abs()
                } else {
                    lambda.mu(i).clone()
                };
                if &lower > ki || ki > lambda.mu(i + 1) {
                    return fail(format!("kappa_{i} = {ki} outside its interval"));
                }
                let nu_lower = if i == 1 {
                    pattern.nu[0].abs()
                } else {
                    pattern.nu[i - 1].clone()
                };
                if &nu_lower > ki {
                    return fail(format!("nu_{i} not below kappa_{i}"));
                }
                if i >= 2 && pattern.kappa[i - 2] > pattern.nu[i - 1] {
                    return fail(format!("kappa_{} > nu_{i}", i - 1));
                }
            }
        }
    }
    Ok(())
}

/// Inverse of [`to_pattern`]: rebuilds the canonical spec from an
/// interlacing pattern.
pub fn from_pattern(pattern: &BranchingPattern, lambda: &Weight) -> Result<SingularSpec> {
    check_interlacing(pattern, lambda)?;
    let parity = pattern.parity;
    let n = lambda.rank() - 1;
    let to_u64 = |h: HalfInt, what: &str| -> Result<u64> {
        let v = h.to_int()?.to_i64().expect("small exponent");
        if v < 0 {
            return Err(Error::InterlacingViolation(format!("negative {what}: {v}")));
        }
        Ok(v as u64)
    };
    let mut spec = SingularSpec::zero(parity, n as u32);
    let split = |kappa: &HalfInt, mu: &HalfInt, nu: &HalfInt| -> Result<(u64, u64, u64)> {
        // (gamma_i, gamma_neg_i, gamma_pr_i) on a primed level.
        if mu > nu {
            Ok((
                0,
                to_u64(mu - nu, "mu - nu")?,
                to_u64(kappa - mu, "kappa - mu")?,
            ))
        } else {
            Ok((
                to_u64(nu - mu, "nu - mu")?,
                0,
                to_u64(kappa - nu, "kappa - nu")?,
            ))
        }
    };
    match parity {
        Parity::Odd => {
            for i in 1..=n {
                let (g, gm, gp) = split(&pattern.kappa[i], lambda.mu(i), &pattern.nu[i - 1])?;
                spec.gamma[i - 1] = g;
                spec.gamma_neg[i - 1] = gm;
                spec.gamma_pr[i - 1] = gp;
            }
            let mut base = lambda.mu(1).clone();
            if n >= 1 {
                base = base.min(pattern.nu[0].clone());
            }
            spec.gamma0 = to_u64(&base - &pattern.kappa[0], "min(mu_1, nu_1) - kappa_0")?;
        }
        Parity::Even => {
            for i in 2..=n {
                let (g, gm, gp) = split(&pattern.kappa[i - 1], lambda.mu(i), &pattern.nu[i - 1])?;
                spec.gamma[i - 1] = g;
                spec.gamma_neg[i - 1] = gm;
                spec.gamma_pr[i - 1] = gp;
            }
            let mu1 = lambda.mu(1);
            let nu1 = &pattern.nu[0];
            let m = to_u64(
                &pattern.kappa[0] - &mu1.abs().max(nu1.abs()),
                "kappa_1 - max(|mu_1|, |nu_1|)",
            )?;
            if mu1 > nu1 {
                spec.gamma[0] = m;
                spec.gamma_neg[0] = m + to_u64(mu1 - nu1, "mu_1 - nu_1")?;
            } else {
                spec.gamma[0] = m + to_u64(nu1 - mu1, "nu_1 - mu_1")?;
                spec.gamma_neg[0] = m;
            }
        }
    }
    spec.check(lambda)
        .map_err(|e| Error::InterlacingViolation(format!("rebuilt spec infeasible: {e}")))?;
    Ok(spec)
}
