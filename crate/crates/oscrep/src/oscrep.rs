//! First-order differential operators and the operator realization of the
//! orthogonal algebras on polynomial spaces.
//!
//! Operators have the shape `sum_v p_v * d_v + q` with exact polynomial
//! coefficients. [`RepContext`] builds the operator image of every canonical
//! basis element in two independent ways:
//!
//! * closed-form expressions in the minor determinants of the variable
//!   table, and
//! * an inductive tower that realizes each rank inside the next, starting
//!   from the empty rank;
//!
//! the two constructions are compared term-by-term in tests.
//!
//! # Examples
//!
//! ```
//! use oscrep::exact::rat;
//! use oscrep::liealg::canonical_elems;
//! use oscrep::oscrep::RepContext;
//! use oscrep::Parity;
//!
//! // Any rational parameters give a true homomorphism; dominance only
//! // matters later, when modules are built.
//! let ctx = RepContext::new(1, Parity::Odd, vec![rat(5, 7), rat(3, 2)]);
//! ctx.verify_homomorphism().unwrap();
//! ctx.verify_highest_vector().unwrap();
//!
//! // The closed forms agree with the inductive tower construction.
//! let tower = ctx.inductive_ops();
//! for e in canonical_elems(1, Parity::Odd) {
//!     assert!(ctx.op_ref(e) == &tower[&(e.i, e.j)]);
//! }
//! ```

use crate::exact::Rat;
use crate::liealg::{bracket, canonical_elems, raising_elems, BasisElem, Weight};
use crate::poly::{Poly, VarIndex, VarTable};
use crate::{Error, Parity, Result};
use num::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// A first-order differential operator `sum_v coeff_v * d_v + scalar` with
/// polynomial coefficients. The map never stores zero coefficients, so
/// equality of operators is equality of the representations.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiffOp {
    coeffs: BTreeMap<VarIndex, Poly>,
    scalar: Poly,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    /// The multiplication operator by `p`.
    pub fn from_scalar(p: Poly) -> Self {
        DiffOp {
            coeffs: BTreeMap::new(),
            scalar: p,
        }
    }

    /// The operator `coeff * d_v`.
    pub fn deriv(v: VarIndex, coeff: Poly) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(v, coeff);
        }
        DiffOp {
            coeffs,
            scalar: Poly::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.scalar.is_zero()
    }

    pub fn scalar_part(&self) -> &Poly {
        &self.scalar
    }

    pub fn coeff(&self, v: VarIndex) -> Poly {
        self.coeffs.get(&v).cloned().unwrap_or_else(Poly::zero)
    }

    fn set_coeff(&mut self, v: VarIndex, p: Poly) {
        if p.is_zero() {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, p);
        }
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (v, p) in &other.coeffs {
            let sum = out.coeff(*v).add(p);
            out.set_coeff(*v, sum);
        }
        out.scalar = out.scalar.add(&other.scalar);
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp {
            coeffs: self.coeffs.iter().map(|(v, p)| (*v, p.neg())).collect(),
            scalar: self.scalar.neg(),
        }
    }

    pub fn scale(&self, c: &Rat) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero();
        }
        DiffOp {
            coeffs: self.coeffs.iter().map(|(v, p)| (*v, p.scale(c))).collect(),
            scalar: self.scalar.scale(c),
        }
    }

    /// Left multiplication by the function `p`: `(p * L)(f) = p * L(f)`.
    pub fn mul_poly(&self, p: &Poly) -> DiffOp {
        if p.is_zero() {
            return DiffOp::zero();
        }
        DiffOp {
            coeffs: self.coeffs.iter().map(|(v, q)| (*v, q.mul(p))).collect(),
            scalar: self.scalar.mul(p),
        }
    }

    pub fn add_scalar(&self, p: &Poly) -> DiffOp {
        let mut out = self.clone();
        out.scalar = out.scalar.add(p);
        out
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = self.scalar.mul(f);
        for (v, p) in &self.coeffs {
            out = out.add(&p.mul(&f.partial(*v)));
        }
        out
    }

    /// The commutator `[self, other]` of two first-order operators, again a
    /// first-order operator:
    /// `[V1 + q1, V2 + q2] = [V1, V2] + V1(q2) - V2(q1)`.
    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (u, bu) in &other.coeffs {
            let mut acc = Poly::zero();
            for (w, aw) in &self.coeffs {
                acc = acc.add(&aw.mul(&bu.partial(*w)));
            }
            out.set_coeff(*u, out.coeff(*u).add(&acc));
        }
        for (u, au) in &self.coeffs {
            let mut acc = Poly::zero();
            for (w, bw) in &other.coeffs {
                acc = acc.add(&bw.mul(&au.partial(*w)));
            }
            out.set_coeff(*u, out.coeff(*u).sub(&acc));
        }
        let mut scalar = Poly::zero();
        for (w, aw) in &self.coeffs {
            scalar = scalar.add(&aw.mul(&other.scalar.partial(*w)));
        }
        for (w, bw) in &other.coeffs {
            scalar = scalar.sub(&bw.mul(&self.scalar.partial(*w)));
        }
        out.scalar = scalar;
        out
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(v, p)| {
                if *p == Poly::one() {
                    format!("d[{},{}]", v.row, v.col)
                } else {
                    format!("({p})*d[{},{}]", v.row, v.col)
                }
            })
            .collect();
        if !self.scalar.is_zero() {
            parts.push(format!("({})", self.scalar));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn vi(r: i32, c: i32) -> VarIndex {
    VarIndex::new(r as u32, c)
}

/// The operator realization of one algebra at a fixed parameter vector
/// `mu = (mu_1, ..., mu_{n+1})`.
///
/// All canonical operators are built eagerly at construction through the
/// closed-form expressions; the independent inductive tower is available via
/// [`RepContext::inductive_ops`].
pub struct RepContext {
    n: u32,
    parity: Parity,
    mu: Vec<Rat>,
    weight: Option<Weight>,
    vt: VarTable,
    ops: BTreeMap<(i32, i32), DiffOp>,
}

impl RepContext {
    /// Builds the realization for arbitrary rational parameters (the
    /// homomorphism property holds identically in `mu`).
    pub fn new(n: u32, parity: Parity, mu: Vec<Rat>) -> Self {
        assert_eq!(
            mu.len(),
            n as usize + 1,
            "need n+1 parameters for rank n+1"
        );
        let vt = VarTable::new(n, parity);
        let mut ctx = RepContext {
            n,
            parity,
            mu,
            weight: None,
            vt,
            ops: BTreeMap::new(),
        };
        for e in canonical_elems(n, parity) {
            let op = ctx.make_op(e);
            ctx.ops.insert((e.i, e.j), op);
        }
        ctx
    }

    /// Builds the realization attached to a dominant highest weight of rank
    /// `n+1`.
    pub fn for_weight(n: u32, parity: Parity, lambda: &Weight) -> Result<Self> {
        if lambda.rank() != n as usize + 1 {
            return Err(Error::InvalidWeight(format!(
                "weight {lambda} has rank {}, expected {}",
                lambda.rank(),
                n + 1
            )));
        }
        lambda.check_dominant(parity)?;
        let mu = lambda.coords().iter().map(|c| c.to_rat()).collect();
        let mut ctx = RepContext::new(n, parity, mu);
        ctx.weight = Some(lambda.clone());
        Ok(ctx)
    }

    /// The dominant weight this context was built for, when it was built
    /// through [`RepContext::for_weight`].
    pub fn weight(&self) -> Option<&Weight> {
        self.weight.as_ref()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn var_table(&self) -> &VarTable {
        &self.vt
    }

    /// `mu_i` with the convention `mu_0 = 0`; 1-based otherwise.
    pub fn mu_rat(&self, i: u32) -> Rat {
        if i == 0 {
            Rat::zero()
        } else {
            self.mu[i as usize - 1].clone()
        }
    }

    pub fn mu(&self) -> &[Rat] {
        &self.mu
    }

    /// The cached operator of a canonical element.
    pub fn op_ref(&self, e: BasisElem) -> &DiffOp {
        self.ops
            .get(&(e.i, e.j))
            .unwrap_or_else(|| panic!("no canonical operator A[{},{}]", e.i, e.j))
    }

    /// The operator of an arbitrary index pair, resolved through
    /// canonicalization (`A[i,-i] = 0`, `A[i,j] = -A[-j,-i]`).
    pub fn op(&self, i: i32, j: i32) -> DiffOp {
        match crate::liealg::canonicalize(i, j) {
            None => DiffOp::zero(),
            Some((e, 1)) => self.op_ref(e).clone(),
            Some((e, _)) => self.op_ref(e).neg(),
        }
    }

    /// Applies `A[i,j]` to a polynomial without cloning the operator.
    pub fn apply_pair(&self, i: i32, j: i32, f: &Poly) -> Poly {
        match crate::liealg::canonicalize(i, j) {
            None => Poly::zero(),
            Some((e, sign)) => {
                let out = self.op_ref(e).apply(f);
                if sign < 0 {
                    out.neg()
                } else {
                    out
                }
            }
        }
    }

    /// `Phi f_{m,r}`: the operator `sum_s f_{m,r}(s) d_{x[r,s]}` over the
    /// genuine columns `s` of row `r`.
    fn phi_f(&self, m: i32, r: i32) -> DiffOp {
        let mut out = DiffOp::zero();
        for s in self.vt.genuine_cols(r as u32) {
            out = out.add(&DiffOp::deriv(vi(r, s), self.vt.f_lower(m as u32, r as u32, s)));
        }
        out
    }

    fn xp(&self, r: i32, c: i32) -> Poly {
        self.vt.x(r as u32, c).clone()
    }

    /// Cartan operator `A[j,j]`, `1 <= j <= n+1`.
    fn build_cartan(&self, j: i32) -> DiffOp {
        let n = self.n as i32;
        let mut op = DiffOp::zero();
        for r in j..=n {
            op = op.add(&DiffOp::deriv(vi(r, j), self.xp(r, j)));
            op = op.sub(&DiffOp::deriv(vi(r, -j), self.xp(r, -j)));
        }
        for s in self.vt.genuine_cols((j - 1) as u32) {
            op = op.sub(&DiffOp::deriv(vi(j - 1, s), self.xp(j - 1, s)));
        }
        op.add_scalar(&Poly::constant(self.mu_rat(j as u32)))
    }

    /// Raising operator `A[j,i]`, `|i| < j <= n+1`.
    fn build_raising(&self, j: i32, i: i32) -> DiffOp {
        let n = self.n as i32;
        let mut op = DiffOp::zero();
        for r in j..=n {
            op = op.add(&DiffOp::deriv(vi(r, i), self.xp(r, j)));
            op = op.sub(&DiffOp::deriv(vi(r, -j), self.xp(r, -i)));
        }
        op.add(&DiffOp::deriv(vi(j - 1, i), Poly::one()))
    }

    /// Lowering operator `A[i,j]`, `0 < i < j <= n+1`.
    fn build_lowering_pos(&self, i: i32, j: i32) -> DiffOp {
        let n = self.n as i32;
        let mut op = DiffOp::zero();
        for r in j..=n {
            op = op.add(&DiffOp::deriv(vi(r, j), self.xp(r, i)));
            op = op.sub(&DiffOp::deriv(vi(r, -i), self.xp(r, -j)));
        }
        op = op.sub(&self.phi_f(j - 1, i - 1));
        for r in i..j {
            let dmu = self.mu_rat(r as u32 + 1) - self.mu_rat(r as u32);
            let mut t = self.phi_f(j - 1, r).mul_poly(&self.xp(r, i));
            t = t.add_scalar(&self.vt.f_lower((j - 1) as u32, r as u32, i).scale(&dmu).neg());
            t = t.add(&DiffOp::deriv(vi(r, -i), self.xp(r, -j)));
            op = op.sub(&t);
        }
        op
    }

    /// Lowering operator `A[-i,j]`, `0 <= i < j <= n+1` (`i = 0` exists only
    /// when the family has a zero column).
    fn build_lowering_neg(&self, i: i32, j: i32) -> DiffOp {
        assert!(i > 0 || self.parity.has_zero_column());
        let n = self.n as i32;
        let mut op = DiffOp::zero();
        for r in j..=n {
            op = op.add(&DiffOp::deriv(vi(r, j), self.xp(r, -i)));
            op = op.sub(&DiffOp::deriv(vi(r, i), self.xp(r, -j)));
        }
        for r in i..j {
            let dmu = self.mu_rat(r as u32 + 1) - self.mu_rat(r as u32);
            let mut t = self.phi_f(j - 1, r).mul_poly(&self.xp(r, -i));
            t = t.add_scalar(&self.vt.f_lower((j - 1) as u32, r as u32, -i).scale(&dmu).neg());
            t = t.add(&DiffOp::deriv(vi(r, i), self.xp(r, -j)));
            op = op.sub(&t);
        }
        for r in 0..i {
            let dmu = self.mu_rat(r as u32 + 1) - self.mu_rat(r as u32);
            let mut t = self.phi_f(j - 1, r).mul_poly(&self.xp(r, -i));
            t = t.add_scalar(&self.vt.f_lower((j - 1) as u32, r as u32, -i).scale(&dmu).neg());
            t = t.sub(&self.phi_f(i - 1, r).mul_poly(&self.xp(r, -j)));
            t = t.add_scalar(&self.vt.f_lower((i - 1) as u32, r as u32, -j).scale(&dmu));
            op = op.sub(&t);
        }
        op
    }

    /// Closed-form operator of a canonical element.
    pub fn make_op(&self, e: BasisElem) -> DiffOp {
        if e.is_cartan() {
            self.build_cartan(e.j)
        } else if e.is_raising() {
            self.build_raising(e.i, e.j)
        } else if e.i > 0 {
            self.build_lowering_pos(e.i, e.j)
        } else {
            self.build_lowering_neg(-e.i, e.j)
        }
    }

    /// Independent construction: the inductive tower. Rank by rank, the
    /// operators of level `l` are produced from those of level `l-1` by
    ///
    /// * `A[i,j] -> x[l,i] d[l,j] - x[l,-j] d[l,-i] + A[i,j]` for inner
    ///   indices,
    /// * `A[l+1,i] = d[l,i]`, `A[l+1,l+1] = -E_l + mu_{l+1}` with `E_l` the
    ///   row Euler operator, and
    /// * `A[i,l+1] = -x[l,i] E_l + mu_{l+1} x[l,i] + eta_l d[l,-i]
    ///   - sum_r x[l,r] A[i,r]`, where `eta_l = -x[l,-(l+1)]` and the sum
    ///   canonicalizes `A[i,r]` into the previous level.
    ///
    /// Returns the full operator map of the top level.
    pub fn inductive_ops(&self) -> BTreeMap<(i32, i32), DiffOp> {
        let mut prev: BTreeMap<(i32, i32), DiffOp> = BTreeMap::new();
        for level in 0..=(self.n as i32) {
            let lb = level + 1;
            let mu_top = self.mu_rat(lb as u32);
            let cols = self.vt.genuine_cols(level as u32);
            let mut euler = DiffOp::zero();
            for &s in &cols {
                euler = euler.add(&DiffOp::deriv(vi(level, s), self.xp(level, s)));
            }
            let eta = self.xp(level, -lb).neg();
            let mut cur = BTreeMap::new();
            for i in -lb..=lb {
                for j in -lb..=lb {
                    if i + j <= 0 {
                        continue;
                    }
                    if !self.parity.has_zero_column() && (i == 0 || j == 0) {
                        continue;
                    }
                    let op = if i.abs() < lb && j.abs() < lb {
                        let mut o = DiffOp::deriv(vi(level, j), self.xp(level, i))
                            .sub(&DiffOp::deriv(vi(level, -i), self.xp(level, -j)));
                        if let Some(p) = prev.get(&(i, j)) {
                            o = o.add(p);
                        }
                        o
                    } else if i == lb && j == lb {
                        euler.neg().add_scalar(&Poly::constant(mu_top.clone()))
                    } else if i == lb {
                        DiffOp::deriv(vi(level, j), Poly::one())
                    } else {
                        // j == lb, |i| <= level
                        let xi = self.xp(level, i);
                        let mut o = euler.neg().mul_poly(&xi);
                        o = o.add_scalar(&xi.scale(&mu_top));
                        o = o.add(&DiffOp::deriv(vi(level, -i), eta.clone()));
                        for &r in &cols {
                            if let Some((e, sign)) = crate::liealg::canonicalize(i, r) {
                                let inner = prev
                                    .get(&(e.i, e.j))
                                    .expect("inner operator missing from previous level");
                                let term = inner.mul_poly(&self.xp(level, r));
                                o = if sign < 0 { o.add(&term) } else { o.sub(&term) };
                            }
                        }
                        o
                    };
                    cur.insert((i, j), op);
                }
            }
            prev = cur;
        }
        prev
    }

    /// Eigenvalue list of a simultaneous eigenvector of the Cartan
    /// operators, or `None` when `f` is not one.
    pub fn weight_of_vector(&self, f: &Poly) -> Option<Vec<Rat>> {
        if f.is_zero() {
            return None;
        }
        let (m0, c0) = f.terms().next().expect("nonzero polynomial has a term");
        let mut out = Vec::new();
        for j in 1..=(self.n as i32 + 1) {
            let q = self.apply_pair(j, j, f);
            let cand = q.coeff(m0) / c0.clone();
            if q != f.scale(&cand) {
                return None;
            }
            out.push(cand);
        }
        Some(out)
    }

    /// Checks `[op(x), op(y)] = op([x, y])` for every pair of canonical
    /// elements, returning the first failing pair.
    pub fn verify_homomorphism(&self) -> std::result::Result<(), String> {
        let elems = canonical_elems(self.n, self.parity);
        let pairs: Vec<(BasisElem, BasisElem)> = elems
            .iter()
            .flat_map(|&x| elems.iter().map(move |&y| (x, y)))
            .collect();
        let failures: Vec<String> = pairs
            .par_iter()
            .filter_map(|&(x, y)| {
                let lhs = self.op_ref(x).commutator(self.op_ref(y));
                let mut rhs = DiffOp::zero();
                for (e, c) in bracket(x, y, self.n, self.parity) {
                    rhs = rhs.add(&self.op_ref(e).scale(&Rat::from_integer(c.into())));
                }
                if lhs != rhs {
                    Some(format!("[{x},{y}]"))
                } else {
                    None
                }
            })
            .collect();
        if failures.is_empty() {
            Ok(())
        } else {
            Err(format!(
                "{} commutator mismatches, first at {}",
                failures.len(),
                failures[0]
            ))
        }
    }

    /// Checks that the constant `1` is a highest-weight vector: every
    /// raising operator kills it and the Cartan eigenvalues are `mu`.
    pub fn verify_highest_vector(&self) -> std::result::Result<(), String> {
        let one = Poly::one();
        for e in raising_elems(self.n, self.parity) {
            let img = self.op_ref(e).apply(&one);
            if !img.is_zero() {
                return Err(format!("{e} does not annihilate 1: got {img}"));
            }
        }
        match self.weight_of_vector(&one) {
            Some(w) if w == self.mu => Ok(()),
            Some(w) => Err(format!("1 has eigenvalues {w:?}, expected {:?}", self.mu)),
            None => Err("1 is not a simultaneous eigenvector".into()),
        }
    }
}
