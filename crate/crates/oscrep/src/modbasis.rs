//! Bases of the irreducible modules: exact operator closure, graded
//! dimensions, and the combinatorial spanning family of minor products.
//!
//! The ground truth for every dimension in this crate is the *operator
//! closure*: starting from the constant polynomial `1`, the lowering
//! operators are applied until the exactly row-reduced span stabilizes.
//! The alternating-sum formula for graded dimensions and the spanning
//! family of products of minors are checked against that closure.
//!
//! # Examples
//!
//! ```
//! use oscrep::exact::Int;
//! use oscrep::liealg::{weyl_dim, Weight};
//! use oscrep::modbasis::{graded_dims_formula, spanning_span_dim};
//! use oscrep::oscrep::RepContext;
//! use oscrep::{Guards, Parity};
//!
//! let lambda: Weight = "1,2".parse().unwrap();
//! let ctx = RepContext::for_weight(1, Parity::Even, &lambda).unwrap();
//!
//! // The spanning family has exactly the Weyl dimension, here 8.
//! let dim = spanning_span_dim(&ctx, &Guards::default()).unwrap();
//! assert_eq!(Int::from(dim as u64), weyl_dim(Parity::Even, &lambda).unwrap());
//!
//! // Its graded refinement sums back to the same number.
//! let graded = graded_dims_formula(Parity::Even, &lambda).unwrap();
//! let total: Int = graded.iter().cloned().sum();
//! assert_eq!(total, Int::from(8));
//! ```

use crate::exact::{binom, Int, Rat};
use crate::liealg::{lowering_elems, weyl_dim, Weight};
use crate::oscrep::RepContext;
use crate::poly::{Monomial, Poly, VarIndex};
use crate::{Error, Guards, Parity, Result};
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// An exact incremental row reducer over the rationals.
///
/// Rows are kept pivoted on their largest monomial; inserting a polynomial
/// reduces it against the current rows and, when a nonzero remainder is
/// left, stores it as a new row with unit pivot coefficient.
#[derive(Default)]
pub struct SpanReducer {
    rows: BTreeMap<Monomial, Poly>,
}

impl SpanReducer {
    pub fn new() -> Self {
        SpanReducer::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Total number of stored terms across all rows (a size proxy used by
    /// guards).
    pub fn cells(&self) -> u64 {
        self.rows.values().map(|p| p.num_terms() as u64).sum()
    }

    /// Fully reduces `p` against the stored rows.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut out = p.clone();
        loop {
            // Largest monomial of `out` that is a pivot.
            let mut hit: Option<(Monomial, Rat)> = None;
            for (m, c) in out.terms() {
                if self.rows.contains_key(m) {
                    hit = Some((m.clone(), c.clone()));
                }
            }
            match hit {
                None => return out,
                Some((m, c)) => {
                    out = out.sub(&self.rows[&m].scale(&c));
                }
            }
        }
    }

    /// Returns `true` when `p` enlarges the span.
    pub fn insert(&mut self, p: &Poly) -> bool {
        let r = self.reduce(p);
        if r.is_zero() {
            return false;
        }
        let (m, c) = r.max_term().expect("nonzero polynomial");
        let (m, c) = (m.clone(), c.clone());
        let row = r.scale(&(Rat::one() / c));
        self.rows.insert(m, row);
        true
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Poly> {
        self.rows.values()
    }
}

/// The exactly row-reduced module generated from `1` by the lowering
/// operators.
pub struct ModuleClosure {
    n: u32,
    reducer: SpanReducer,
}

impl ModuleClosure {
    /// Builds the closure. The context must carry a dominant weight (the
    /// module is finite-dimensional exactly then); guards bound the total
    /// stored size.
    pub fn build(ctx: &RepContext, guards: &Guards) -> Result<Self> {
        ctx.weight().ok_or_else(|| {
            Error::InvalidWeight("operator closure needs a dominant-weight context".into())
        })?;
        let lows = lowering_elems(ctx.n(), ctx.parity());
        let mut reducer = SpanReducer::new();
        let mut queue: Vec<Poly> = vec![Poly::one()];
        while let Some(p) = queue.pop() {
            let r = reducer.reduce(&p);
            if r.is_zero() {
                continue;
            }
            let (m, c) = r.max_term().expect("nonzero polynomial");
            let (m, c) = (m.clone(), c.clone());
            let row = r.scale(&(Rat::one() / c));
            for e in &lows {
                queue.push(ctx.apply_pair(e.i, e.j, &row));
            }
            reducer.rows.insert(m, row);
            let cells = reducer.cells();
            if cells > guards.max_matrix_entries {
                return Err(Error::GuardExceeded {
                    what: "closure cells",
                    limit: guards.max_matrix_entries,
                    actual: cells,
                });
            }
        }
        Ok(ModuleClosure {
            n: ctx.n(),
            reducer,
        })
    }

    pub fn dim(&self) -> usize {
        self.reducer.dim()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reducer.contains(p)
    }

    pub fn reducer(&self) -> &SpanReducer {
        &self.reducer
    }

    /// Dimensions of the graded components, grading by total degree in the
    /// top-row variables. The module splits as a direct sum over that
    /// degree, so the homogeneous components of any spanning set span the
    /// components; each is row-reduced separately.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut per: BTreeMap<u32, SpanReducer> = BTreeMap::new();
        let mut max_d = 0u32;
        for row in self.reducer.rows() {
            for d in 0..=row.row_degree(self.n) {
                let comp = row.row_component(self.n, d);
                if comp.is_zero() {
                    continue;
                }
                max_d = max_d.max(d);
                per.entry(d).or_default().insert(&comp);
            }
        }
        let out: Vec<usize> = (0..=max_d)
            .map(|d| per.get(&d).map_or(0, |r| r.dim()))
            .collect();
        debug_assert_eq!(out.iter().sum::<usize>(), self.dim());
        out
    }
}

/// Builds the closure for a dominant weight and returns its dimension.
pub fn module_dim(n: u32, parity: Parity, lambda: &Weight, guards: &Guards) -> Result<Int> {
    let ctx = RepContext::for_weight(n, parity, lambda)?;
    let closure = ModuleClosure::build(&ctx, guards)?;
    Ok(Int::from(closure.dim() as u64))
}

/// Graded dimensions by the alternating-sum formula.
///
/// For `0 <= r <= mu_{n+1}` the dimension of the degree-`r` component is
/// `sum_s (-1)^{n-s} C(n+s+r+mu_{s+1}-mu_{n+1}, 2n) d(lambda_s)` in the odd
/// family (the even family shifts the binomial to `C(..-1, 2n-1)`), where
/// `lambda_s` keeps the first `s` labels and replaces the rest by
/// `mu_{i+1}+1`; degrees beyond the middle reflect: `dim_r =
/// dim_{2 mu_{n+1} - r}`.
pub fn graded_dims_formula(parity: Parity, lambda: &Weight) -> Result<Vec<Int>> {
    lambda.check_dominant(parity)?;
    let np1 = lambda.rank();
    if np1 == 0 || (parity == Parity::Even && np1 < 2) {
        return Err(Error::InvalidWeight(format!(
            "graded dimensions need rank >= {} for the {parity} family",
            if parity == Parity::Even { 2 } else { 1 }
        )));
    }
    let n = np1 - 1;
    let top = lambda.mu(np1).clone();
    let total = top
        .twice()
        .to_usize()
        .ok_or_else(|| Error::InvalidWeight(format!("top label of {lambda} out of range")))?;

    // Truncated-and-shifted companion weights and their dimensions.
    let mut dims = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let coords: Vec<_> = (1..=n)
            .map(|i| {
                if i <= s {
                    lambda.mu(i).clone()
                } else {
                    lambda.mu(i + 1).plus_int(1)
                }
            })
            .collect();
        dims.push(weyl_dim(parity, &Weight::new(coords))?);
    }

    let choose_deg = if parity == Parity::Odd {
        2 * n as u32
    } else {
        2 * n as u32 - 1
    };
    let mut out = Vec::with_capacity(total + 1);
    for r in 0..=total {
        let r_eff = r.min(total - r) as i64;
        let mut acc = Int::zero();
        for s in 0..=n {
            let diff = (lambda.mu(s + 1) - &top).to_int()?;
            let mut arg = diff + Int::from(n as i64 + s as i64 + r_eff);
            if parity == Parity::Even {
                arg -= 1;
            }
            let term = binom(&arg, choose_deg) * &dims[s];
            if (n - s) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        assert!(
            acc.is_positive(),
            "graded dimension must be positive: {lambda} ({parity}), r={r}: {acc}"
        );
        out.push(acc);
    }
    Ok(out)
}

/// One generator of the spanning family: a nonconstant minor `F_{s,t}` of
/// the variable table, tagged with its class `t` (its second row index).
pub struct SpanGenerator {
    pub poly: Poly,
    pub class_t: u32,
    pub top_degree: u32,
}

/// Enumerates the generators: all nonconstant minors `F_{s,t}(Theta)` with
/// `t <= s <= n` (class `t` starting at 0 for the odd family, 1 for the
/// even) over strictly increasing column tuples `Theta` of length `s-t+1`
/// drawn from `-(n+1), ..., s`.
pub fn spanning_generators(ctx: &RepContext) -> Vec<SpanGenerator> {
    let n = ctx.n();
    let parity = ctx.parity();
    let vt = ctx.var_table();
    let t_min = if parity.has_zero_column() { 0 } else { 1 };
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for t in t_min..=n {
        for s in t..=n {
            let len = (s - t + 1) as usize;
            let lo = -(n as i32) - 1;
            let hi = s as i32;
            for theta in increasing_tuples(lo, hi, len, !parity.has_zero_column()) {
                let f = vt.det_f(s, t, &theta);
                if f.is_zero() || f.degree() == 0 {
                    continue;
                }
                // Normalize the sign so +F and -F coincide, then dedup
                // within the class.
                let (_, c) = f.max_term().expect("nonzero");
                let f = if c.is_negative() {
                    f.neg()
                } else {
                    f
                };
                if !seen.insert((t, f.to_string())) {
                    continue;
                }
                let top_degree = f
                    .homogeneous_row_degree(n)
                    .expect("minors are homogeneous in the top-row variables");
                out.push(SpanGenerator {
                    poly: f,
                    class_t: t,
                    top_degree,
                });
            }
        }
    }
    out
}

fn increasing_tuples(lo: i32, hi: i32, len: usize, skip_zero: bool) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(
        next: i32,
        hi: i32,
        len: usize,
        skip_zero: bool,
        cur: &mut Vec<i32>,
        out: &mut Vec<Vec<i32>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in next..=hi {
            if skip_zero && v == 0 {
                continue;
            }
            cur.push(v);
            rec(v + 1, hi, len, skip_zero, cur, out);
            cur.pop();
        }
    }
    rec(lo, hi, len, skip_zero, &mut cur, &mut out);
    out
}

/// Per-class count budgets for products of generators.
///
/// For a weight with increments `k_1, ..., k_{n+1}` the number of factors
/// of class `t` in one product is bounded by: `k_{t+1}` for every class
/// with `t >= 1` in the odd family and `t >= 2` in the even family, by
/// `k_1` for the odd class 0, and by `k_1 + k_2` for the even class 1.
/// (The first-class budgets are the total increments available to the
/// first coordinate, which both of its first-row variables draw on.)
fn class_budgets(n: u32, parity: Parity, ks: &[Int]) -> BTreeMap<u32, u64> {
    let k_of = |i: usize| -> u64 {
        ks[i]
            .to_u64()
            .expect("dominant increments are small nonnegative integers")
    };
    let mut budget = BTreeMap::new();
    match parity {
        Parity::Odd => {
            for t in 0..=n {
                budget.insert(t, k_of(t as usize));
            }
        }
        Parity::Even => {
            if n >= 1 {
                budget.insert(1, k_of(0) + k_of(1));
            }
            for t in 2..=n {
                budget.insert(t, k_of(t as usize));
            }
        }
    }
    budget
}

/// Enumerates the spanning family: all products of generators (including
/// the empty product `1`) subject to the per-class count budgets of
/// [`class_budgets`]. The family spans the module only after the kernel
/// cut of [`kernel_cut_basis`] — individual products may exceed the
/// first-row degree bounds that module elements satisfy, and the excess
/// cancels in the combinations that the cut retains.
pub fn spanning_products(ctx: &RepContext, guards: &Guards) -> Result<Vec<Poly>> {
    let lambda = ctx
        .weight()
        .ok_or_else(|| {
            Error::InvalidWeight("spanning family needs a dominant-weight context".into())
        })?
        .clone();
    let parity = ctx.parity();
    let n = ctx.n();
    let ks = lambda.ks(parity)?;
    let gens = spanning_generators(ctx);

    struct St<'a> {
        gens: &'a [SpanGenerator],
        out: Vec<Poly>,
        limit: u64,
    }
    fn rec(st: &mut St, idx: usize, prod: &Poly, counts: &mut BTreeMap<u32, u64>) -> Result<()> {
        if st.out.len() as u64 >= st.limit {
            return Err(Error::GuardExceeded {
                what: "spanning products",
                limit: st.limit,
                actual: st.out.len() as u64 + 1,
            });
        }
        st.out.push(prod.clone());
        for g in idx..st.gens.len() {
            let gen = &st.gens[g];
            let c = counts.get_mut(&gen.class_t).expect("budgeted class");
            if *c == 0 {
                continue;
            }
            *c -= 1;
            let next = prod.mul(&gen.poly);
            rec(st, g, &next, counts)?;
            *counts.get_mut(&gen.class_t).unwrap() += 1;
        }
        Ok(())
    }

    let mut st = St {
        gens: &gens,
        out: Vec::new(),
        limit: guards.max_words,
    };
    let mut counts = class_budgets(n, parity, &ks);
    rec(&mut st, 0, &Poly::one(), &mut counts)?;
    Ok(st.out)
}

/// The monomials that module elements never contain: for the odd family
/// those with `x[0,0]`-exponent above `k_1`, for the even family those
/// with `x[1,-1]`-exponent above `k_1` or `x[1,1]`-exponent above `k_2`.
/// Equivalently, the module lies in the kernel of the derivative powers
/// `d^{k_1+1}/dx[0,0]` (odd) respectively `d^{k_1+1}/dx[1,-1]` and
/// `d^{k_2+1}/dx[1,1]` (even).
fn first_row_violation(parity: Parity, ks: &[Int]) -> impl Fn(&Monomial) -> bool {
    let k_of = |i: usize| -> u32 {
        ks[i]
            .to_u32()
            .expect("dominant increments are small nonnegative integers")
    };
    let (va, ka, vb, kb) = match parity {
        Parity::Odd => (VarIndex::new(0, 0), k_of(0), None, 0),
        Parity::Even => (
            VarIndex::new(1, -1),
            k_of(0),
            Some(VarIndex::new(1, 1)),
            k_of(1),
        ),
    };
    move |m: &Monomial| {
        if m.exp(va) > ka {
            return true;
        }
        match vb {
            Some(vb) => m.exp(vb) > kb,
            None => false,
        }
    }
}

/// Splits off the part of `p` supported on monomials flagged by `violates`.
fn violating_part(p: &Poly, violates: &impl Fn(&Monomial) -> bool) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        if violates(m) {
            out = out.add(&Poly::monomial(m.clone(), c.clone()));
        }
    }
    out
}

/// Exact basis of `Span(polys) ∩ {no violating monomials}`.
///
/// Gaussian elimination on the violating parts, with each elimination step
/// mirrored on the full polynomials: a combination whose violating part
/// reduces to zero is a member of the cut subspace.
pub fn kernel_cut_basis(polys: &[Poly], violates: impl Fn(&Monomial) -> bool) -> Vec<Poly> {
    // Rows keyed by the pivot (largest monomial) of the reduced violating
    // part, carrying the matching combination of full polynomials.
    let mut rows: BTreeMap<Monomial, (Poly, Poly)> = BTreeMap::new();
    let mut cut = SpanReducer::new();
    let mut basis = Vec::new();
    for p in polys {
        let mut carrier = p.clone();
        let mut viol = violating_part(p, &violates);
        loop {
            let mut hit: Option<(Monomial, Rat)> = None;
            for (m, c) in viol.terms() {
                if rows.contains_key(m) {
                    hit = Some((m.clone(), c.clone()));
                }
            }
            match hit {
                None => break,
                Some((m, c)) => {
                    let (rv, rc) = &rows[&m];
                    viol = viol.sub(&rv.scale(&c));
                    carrier = carrier.sub(&rc.scale(&c));
                }
            }
        }
        match viol.max_term() {
            None => {
                // Fully violating-free combination: a cut-subspace member.
                if cut.insert(&carrier) {
                    basis.push(carrier);
                }
            }
            Some((m, c)) => {
                let inv = Rat::one() / c.clone();
                let key = m.clone();
                rows.insert(key, (viol.scale(&inv), carrier.scale(&inv)));
            }
        }
    }
    basis
}

/// Exact basis of the module cut out of the spanning family: the kernel of
/// the first-row derivative-power conditions intersected with the span of
/// the budgeted products.
pub fn spanning_cut_basis(ctx: &RepContext, guards: &Guards) -> Result<Vec<Poly>> {
    let lambda = ctx
        .weight()
        .ok_or_else(|| {
            Error::InvalidWeight("spanning family needs a dominant-weight context".into())
        })?
        .clone();
    let ks = lambda.ks(ctx.parity())?;
    let products = spanning_products(ctx, guards)?;
    let violates = first_row_violation(ctx.parity(), &ks);
    Ok(kernel_cut_basis(&products, violates))
}

/// Dimension of the span of the (kernel-cut) spanning family.
pub fn spanning_span_dim(ctx: &RepContext, guards: &Guards) -> Result<usize> {
    Ok(spanning_cut_basis(ctx, guards)?.len())
}

/// Exact dimension of the plain span of a family of polynomials.
pub fn span_dim(polys: &[Poly]) -> usize {
    let mut red = SpanReducer::new();
    for p in polys {
        red.insert(p);
    }
    red.dim()
}
