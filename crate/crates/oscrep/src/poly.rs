//! Sparse exact polynomials and the triangular variable tables.
//!
//! * Variables are `(row, col)` pairs ([`VarIndex`]); row `i` of the table
//!   carries the genuine variables `x[i,j]` with `|j| <= i` (column `0` only
//!   in the odd family).
//! * [`Poly`] maps monomials to rational coefficients in a fixed graded
//!   order, so printing and iteration are deterministic.
//! * [`VarTable`] extends each row beyond the genuine columns: `x[i,i+1] = 1`,
//!   `x[i,j] = 0` for `j > i+1`, and recursively defined entries at columns
//!   `-(i+1)` down to `-(n+1)`.
//! * [`VarTable::det_f`] and [`VarTable::f_lower`] are the determinant
//!   families every module generator and singular vector is built from.
//! * [`lexdeg_cmp`] is the graded comparison defining leading monomials; its
//!   tie-breaking scan depends on the family.

use crate::exact::{Int, Rat};
use crate::Parity;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Index of one polynomial variable `x[row, col]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VarIndex {
    pub row: u32,
    pub col: i32,
}

impl VarIndex {
    pub fn new(row: u32, col: i32) -> Self {
        VarIndex { row, col }
    }

    /// Rank of a column within its row for storage purposes:
    /// `0, -1, +1, -2, +2, ...`.
    fn col_rank(col: i32) -> u32 {
        if col == 0 {
            0
        } else if col < 0 {
            2 * col.unsigned_abs() - 1
        } else {
            2 * col as u32
        }
    }

    fn storage_key(self) -> (u32, u32) {
        (self.row, Self::col_rank(self.col))
    }
}

impl PartialOrd for VarIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VarIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.storage_key().cmp(&other.storage_key())
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.row, self.col)
    }
}

/// A monomial: finitely many variables with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: BTreeMap<VarIndex, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarIndex) -> Self {
        let mut exps = BTreeMap::new();
        exps.insert(v, 1);
        Monomial { exps }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarIndex, u32)>) -> Self {
        let mut exps = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *exps.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    /// Exponent of one variable (zero when absent).
    pub fn exp(&self, v: VarIndex) -> u32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    /// Total degree contributed by a single row of variables.
    pub fn row_degree(&self, row: u32) -> u32 {
        self.exps
            .iter()
            .filter(|(v, _)| v.row == row)
            .map(|(_, e)| *e)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarIndex, &u32)> {
        self.exps.iter()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            *exps.entry(*v).or_insert(0) += e;
        }
        Monomial { exps }
    }

    /// Divides by one power of `v`, or `None` when `v` is absent.
    pub fn div_var(&self, v: VarIndex) -> Option<Monomial> {
        let e = self.exp(v);
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        if e == 1 {
            exps.remove(&v);
        } else {
            exps.insert(v, e - 1);
        }
        Some(Monomial { exps })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded order on the storage scan: total degree first, then the first
    /// position (in [`VarIndex`] order) where the exponents differ, larger
    /// exponent greater.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // The earlier variable has a positive exponent where the
                    // other monomial has zero.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Tie-breaking scan rank of one variable inside its row.
///
/// Odd family: `0, -1, +1, -2, +2, ...` (column `0` first).
/// Even family: `+1, -1, +2, -2, ...` (no column `0`).
fn scan_rank(parity: Parity, v: VarIndex) -> (u32, u32) {
    let r = match parity {
        Parity::Odd => VarIndex::col_rank(v.col),
        Parity::Even => {
            debug_assert!(v.col != 0, "even-family monomial touching column 0");
            if v.col > 0 {
                2 * v.col as u32 - 1
            } else {
                2 * v.col.unsigned_abs()
            }
        }
    };
    (v.row, r)
}

/// The graded comparison used for leading monomials.
///
/// Total degree decides first. Ties walk the variables row by row (scan order
/// per family, see [`scan_rank`]); at the first position where the exponents
/// differ, the larger exponent wins. The leading monomial of a polynomial is
/// the *minimal* one under this comparison.
pub fn lexdeg_cmp(parity: Parity, a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    let key = |m: &Monomial| {
        let mut v: Vec<((u32, u32), u32)> = m
            .iter()
            .map(|(var, e)| (scan_rank(parity, *var), *e))
            .collect();
        v.sort_unstable();
        v
    };
    let av = key(a);
    let bv = key(b);
    let mut ai = av.iter().peekable();
    let mut bi = bv.iter().peekable();
    loop {
        match (ai.peek(), bi.peek()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((ka, ea)), Some((kb, eb))) => match ka.cmp(kb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(eb);
                    }
                    ai.next();
                    bi.next();
                }
            },
        }
    }
}

/// A sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(v: VarIndex) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Rat::one());
        Poly { terms }
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// The largest term in the plain monomial order (degree, then variable
    /// comparison) — the pivot order used for exact row reduction.
    pub fn max_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly { terms }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        Poly { terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to one variable.
    pub fn partial(&self, v: VarIndex) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if let Some(q) = m.div_var(v) {
                let e = m.exp(v);
                out.insert(q, c * Rat::from(Int::from(e)));
            }
        }
        out
    }

    /// Largest exponent of `v` across all terms.
    pub fn deg_in(&self, v: VarIndex) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Largest row-degree across all terms.
    pub fn row_degree(&self, row: u32) -> u32 {
        self.terms
            .keys()
            .map(|m| m.row_degree(row))
            .max()
            .unwrap_or(0)
    }

    /// `Some(d)` when every term has row-degree `d` in `row`.
    pub fn homogeneous_row_degree(&self, row: u32) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.row_degree(row));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The part of the polynomial whose row-degree in `row` equals `d`.
    pub fn row_component(&self, row: u32, d: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.row_degree(row) == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly { terms }
    }

    /// The minimal monomial under [`lexdeg_cmp`], i.e. the leading monomial.
    pub fn leading(&self, parity: Parity) -> Option<(&Monomial, &Rat)> {
        self.terms
            .iter()
            .min_by(|(a, _), (b, _)| lexdeg_cmp(parity, a, b))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Deterministic: descending storage order.
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if unit {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// The triangular table of variables and extended entries for one family.
///
/// Row `i` (for `0 <= i <= n`) holds, at column `j`:
/// * the genuine variable `x[i,j]` when `|j| <= i` (odd) or `1 <= |j| <= i`
///   (even);
/// * `0` at column `0` in the even family;
/// * `1` at `j = i+1` and `0` for `j > i+1`;
/// * recursively defined polynomials for `-(n+1) <= j <= -(i+1)`: the
///   self-pairing entry at `j = -(i+1)` and far entries obtained by pairing
///   row `i` against the opposite columns of row `-j-1`.
#[derive(Clone, Debug)]
pub struct VarTable {
    n: u32,
    parity: Parity,
    rows: Vec<Vec<Poly>>,
}

impl VarTable {
    pub fn new(n: u32, parity: Parity) -> Self {
        let width = (2 * n + 3) as usize;
        let ni = n as i32;
        let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(n as usize + 1);
        for i in 0..=ni {
            let mut row = Vec::with_capacity(width);
            for j in -(ni + 1)..=(ni + 1) {
                let entry = if j == i + 1 {
                    Poly::one()
                } else if j > i + 1 {
                    Poly::zero()
                } else if parity == Parity::Even && j == 0 {
                    Poly::zero()
                } else if j.abs() <= i {
                    Poly::var(VarIndex::new(i as u32, j))
                } else {
                    // Extended column, filled below.
                    Poly::zero()
                };
                row.push(entry);
            }
            rows.push(row);
        }
        let mut vt = VarTable { n, parity, rows };
        for i in 0..=ni {
            // Self-pairing entry at column -(i+1).
            let mut sp = Poly::zero();
            for r in vt.genuine_cols(i as u32) {
                sp = sp.add(&vt.x(i as u32, r).mul(vt.x(i as u32, -r)));
            }
            let half = Rat::new(Int::from(-1), Int::from(2));
            vt.set(i as u32, -(i + 1), sp.scale(&half));
            // Far entries pair row i against the opposite columns of row q-1.
            for q in (i + 2)..=(ni + 1) {
                let mut acc = Poly::zero();
                for r in (1 - q)..=(i + 1) {
                    let a = vt.x(i as u32, r).clone();
                    if a.is_zero() {
                        continue;
                    }
                    let b = vt.x((q - 1) as u32, -r);
                    acc = acc.add(&a.mul(b));
                }
                vt.set(i as u32, -q, acc.neg());
            }
        }
        vt
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    fn idx(&self, col: i32) -> usize {
        (col + self.n as i32 + 1) as usize
    }

    fn set(&mut self, row: u32, col: i32, p: Poly) {
        let c = self.idx(col);
        self.rows[row as usize][c] = p;
    }

    /// Table entry at `(row, col)`; valid for `row <= n`, `|col| <= n+1`.
    pub fn x(&self, row: u32, col: i32) -> &Poly {
        assert!(row <= self.n, "row {row} out of range");
        assert!(col.abs() <= self.n as i32 + 1, "col {col} out of range");
        &self.rows[row as usize][self.idx(col)]
    }

    /// Whether `(row, col)` is a genuine variable of this family.
    pub fn is_genuine(&self, row: u32, col: i32) -> bool {
        col.abs() <= row as i32 && (self.parity.has_zero_column() || col != 0)
    }

    /// Genuine columns of one row, ascending.
    pub fn genuine_cols(&self, row: u32) -> Vec<i32> {
        let r = row as i32;
        (-r..=r)
            .filter(|&c| self.parity.has_zero_column() || c != 0)
            .collect()
    }

    /// All genuine variables, ascending rows then ascending columns.
    pub fn all_vars(&self) -> Vec<VarIndex> {
        let mut out = Vec::new();
        for row in 0..=self.n {
            for col in self.genuine_cols(row) {
                out.push(VarIndex::new(row, col));
            }
        }
        out
    }

    /// Determinant over table rows `t..=s` and the given columns.
    ///
    /// The column list length must be `s - t + 1`. Swapping two columns
    /// negates the result; a repeated column gives zero.
    pub fn det_f(&self, s: u32, t: u32, theta: &[i32]) -> Poly {
        assert!(t <= s && s <= self.n, "bad determinant rows {t}..{s}");
        assert_eq!(
            theta.len(),
            (s - t + 1) as usize,
            "column count must match row count"
        );
        let mat: Vec<Vec<Poly>> = (t..=s)
            .map(|row| theta.iter().map(|&c| self.x(row, c).clone()).collect())
            .collect();
        det(&mat)
    }

    /// `f[s,t](r)`: the determinant with columns `t+1, ..., s, r`.
    pub fn f_lower(&self, s: u32, t: u32, r: i32) -> Poly {
        let mut cols: Vec<i32> = ((t as i32 + 1)..=(s as i32)).collect();
        cols.push(r);
        self.det_f(s, t, &cols)
    }
}

/// Determinant by expansion along the first row, skipping zero entries.
/// The matrices here are tiny (side <= n+1) and their first rows are sparse.
fn det(mat: &[Vec<Poly>]) -> Poly {
    let k = mat.len();
    if k == 1 {
        return mat[0][0].clone();
    }
    let mut acc = Poly::zero();
    for (c, cell) in mat[0].iter().enumerate() {
        if cell.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(cc, _)| *cc != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sub = det(&minor);
        let signed = if c % 2 == 0 { sub } else { sub.neg() };
        acc = acc.add(&cell.mul(&signed));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn v(row: u32, col: i32) -> VarIndex {
        VarIndex::new(row, col)
    }

    /// Odd n=1 shorthand: y = x[0,0], xk = x[1,k].
    fn odd1() -> VarTable {
        VarTable::new(1, Parity::Odd)
    }

    fn even1() -> VarTable {
        VarTable::new(1, Parity::Even)
    }

    #[test]
    fn extended_entries_odd_n1() {
        let vt = odd1();
        let y = Poly::var(v(0, 0));
        let x1 = Poly::var(v(1, 1));
        let x0 = Poly::var(v(1, 0));
        let xm1 = Poly::var(v(1, -1));
        // x[0,-1] = -y^2/2
        assert_eq!(*vt.x(0, -1), y.pow(2).scale(&rat(-1, 2)));
        // x[1,-2] = -(x0^2/2 + x1*x_{-1})
        let eta = x0.pow(2).scale(&rat(1, 2)).add(&x1.mul(&xm1));
        assert_eq!(*vt.x(1, -2), eta.neg());
        // x[0,-2] = y^2/2*x1 - y*x0 - x_{-1}
        let expect = y
            .pow(2)
            .scale(&rat(1, 2))
            .mul(&x1)
            .sub(&y.mul(&x0))
            .sub(&xm1);
        assert_eq!(*vt.x(0, -2), expect);
        // Boundary values.
        assert_eq!(*vt.x(0, 1), Poly::one());
        assert_eq!(*vt.x(0, 2), Poly::zero());
        assert_eq!(*vt.x(1, 2), Poly::one());
    }

    #[test]
    fn extended_entries_even_n1() {
        let vt = even1();
        let x1 = Poly::var(v(1, 1));
        let xm1 = Poly::var(v(1, -1));
        assert_eq!(*vt.x(0, 0), Poly::zero());
        assert_eq!(*vt.x(0, 1), Poly::one());
        // Row 0 has no genuine variables; its self-pairing entry vanishes.
        assert_eq!(*vt.x(0, -1), Poly::zero());
        // x[1,-2] = -x1*x_{-1}
        assert_eq!(*vt.x(1, -2), x1.mul(&xm1).neg());
        // x[0,-2] = -x[1,-1]
        assert_eq!(*vt.x(0, -2), xm1.neg());
    }

    #[test]
    fn self_pairing_identity_all_rows() {
        // sum_k x[r,k]*x[r,-k] + 2*x[r,-(r+1)] = 0 over genuine columns k.
        for parity in [Parity::Odd, Parity::Even] {
            for n in 0..=3 {
                let vt = VarTable::new(n, parity);
                for r in 0..=n {
                    let mut s = Poly::zero();
                    for k in vt.genuine_cols(r) {
                        s = s.add(&vt.x(r, k).mul(vt.x(r, -k)));
                    }
                    s = s.add(&vt.x(r, -(r as i32 + 1)).scale(&rat(2, 1)));
                    assert!(s.is_zero(), "parity {parity} n={n} row {r}");
                }
            }
        }
    }

    #[test]
    fn even_row0_far_entries_collapse() {
        // In the even family x[0,-q] = -f[q-1,1](-1) for q >= 2 (the row-0
        // recursion telescopes into a single minor of the rows below).
        for n in 1..=3u32 {
            let vt = VarTable::new(n, Parity::Even);
            for q in 2..=(n as i32 + 1) {
                let expect = vt.f_lower((q - 1) as u32, 1, -1).neg();
                assert_eq!(*vt.x(0, -q), expect, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn f_lower_small_cases() {
        let vt = odd1();
        let y = Poly::var(v(0, 0));
        let x1 = Poly::var(v(1, 1));
        let x0 = Poly::var(v(1, 0));
        let xm1 = Poly::var(v(1, -1));
        // f[1,1](r) = x[1,r]
        assert_eq!(vt.f_lower(1, 1, 1), x1);
        assert_eq!(vt.f_lower(1, 1, -2), vt.x(1, -2).clone());
        // f[1,0](0) = x0 - y*x1
        assert_eq!(vt.f_lower(1, 0, 0), x0.sub(&y.mul(&x1)));
        // f[1,0](-1) = x_{-1} + y^2/2*x1
        assert_eq!(
            vt.f_lower(1, 0, -1),
            xm1.add(&y.pow(2).scale(&rat(1, 2)).mul(&x1))
        );
        // f[1,0](1) = 0 (duplicate column)
        assert!(vt.f_lower(1, 0, 1).is_zero());
        // Even family: f[1,0](-1) = x_{-1}.
        let vte = even1();
        assert_eq!(vte.f_lower(1, 0, -1), Poly::var(v(1, -1)));
    }

    #[test]
    fn f_vanishes_on_inner_duplicate_columns() {
        for parity in [Parity::Odd, Parity::Even] {
            let vt = VarTable::new(3, parity);
            for s in 0..=3u32 {
                for t in 0..=s {
                    for r in (t as i32 + 1)..=(s as i32) {
                        assert!(
                            vt.f_lower(s, t, r).is_zero(),
                            "parity {parity} f[{s},{t}]({r})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn det_alternates_in_columns() {
        let vt = VarTable::new(2, Parity::Odd);
        let a = vt.det_f(2, 1, &[0, -1]);
        let b = vt.det_f(2, 1, &[-1, 0]);
        assert_eq!(a, b.neg());
        assert!(vt.det_f(2, 1, &[0, 0]).is_zero());
    }

    /// First expansion of the lower-triangular recurrences.
    #[test]
    fn f_recurrence_expand_last_row() {
        // f[s,t](r) = x[s,r] - sum_{k=t+1}^{s} x[s,k] * f[k-1,t](r)
        for parity in [Parity::Odd, Parity::Even] {
            for n in 0..=3u32 {
                let vt = VarTable::new(n, parity);
                for s in 0..=n {
                    for t in 0..=s {
                        for r in -(n as i32 + 1)..=(s as i32 + 1) {
                            let lhs = vt.f_lower(s, t, r);
                            let mut rhs = vt.x(s, r).clone();
                            for k in (t + 1)..=s {
                                rhs = rhs.sub(&vt.x(s, k as i32).mul(&vt.f_lower(k - 1, t, r)));
                            }
                            assert_eq!(lhs, rhs, "parity {parity} n={n} f[{s},{t}]({r})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f_recurrence_expand_first_column() {
        // f[s,t](r) = x[s,r] - sum_{k=t}^{s-1} x[k,r] * f[s,k+1](k+1)
        for parity in [Parity::Odd, Parity::Even] {
            for n in 0..=3u32 {
                let vt = VarTable::new(n, parity);
                for s in 0..=n {
                    for t in 0..=s {
                        for r in -(n as i32 + 1)..=(s as i32 + 1) {
                            let lhs = vt.f_lower(s, t, r);
                            let mut rhs = vt.x(s, r).clone();
                            for k in t..s {
                                rhs = rhs.sub(
                                    &vt.x(k, r).mul(&vt.f_lower(s, k + 1, k as i32 + 1)),
                                );
                            }
                            assert_eq!(lhs, rhs, "parity {parity} n={n} f[{s},{t}]({r})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f_recurrence_peel_top_row() {
        // f[s,t](r) = f[s,t+1](r) - x[t,r] * f[s,t+1](t+1)
        for parity in [Parity::Odd, Parity::Even] {
            for n in 0..=3u32 {
                let vt = VarTable::new(n, parity);
                for s in 0..=n {
                    for t in 0..s {
                        for r in -(n as i32 + 1)..=(s as i32 + 1) {
                            let lhs = vt.f_lower(s, t, r);
                            let rhs = vt
                                .f_lower(s, t + 1, r)
                                .sub(&vt.x(t, r).mul(&vt.f_lower(s, t + 1, t as i32 + 1)));
                            assert_eq!(lhs, rhs, "parity {parity} n={n} f[{s},{t}]({r})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_vanishing_identity() {
        // sum_k x[r,k] * f[s,t](-k) = 0 for t <= r, summed over the support
        // -(s+1) <= k <= r+1.
        for parity in [Parity::Odd, Parity::Even] {
            for n in 0..=3u32 {
                let vt = VarTable::new(n, parity);
                for s in 0..=n {
                    for t in 0..=s {
                        for r in t..=n {
                            let mut acc = Poly::zero();
                            for k in -(s as i32 + 1)..=(r as i32 + 1) {
                                let a = vt.x(r, k);
                                if a.is_zero() {
                                    continue;
                                }
                                acc = acc.add(&a.mul(&vt.f_lower(s, t, -k)));
                            }
                            assert!(
                                acc.is_zero(),
                                "parity {parity} n={n} s={s} t={t} r={r}: {acc}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn corner_decomposition_odd() {
        // x[n,-(n+1)] = sum_{i=1}^n f[n,i](i) * x[i-1,-(n+1)] - f[n,0](0)^2/2
        for n in 1..=3u32 {
            let vt = VarTable::new(n, Parity::Odd);
            let mut rhs = vt.f_lower(n, 0, 0).pow(2).scale(&rat(-1, 2));
            for i in 1..=n {
                rhs = rhs.add(&vt.f_lower(n, i, i as i32).mul(vt.x(i - 1, -(n as i32 + 1))));
            }
            assert_eq!(*vt.x(n, -(n as i32 + 1)), rhs, "n={n}");
        }
    }

    #[test]
    fn leading_monomials_of_generators() {
        // L(f[n,i](i)) = x[n,i]; L(x[k,-(n+1)]) = -x[n,-(k+1)] up to sign;
        // L(f[n,j](-(n+1))) = x[n,j]*x[n,-j].
        for parity in [Parity::Odd, Parity::Even] {
            for n in 1..=3u32 {
                let vt = VarTable::new(n, parity);
                let lo = if parity == Parity::Odd { 0 } else { 1 };
                for i in lo..=n {
                    let f = vt.f_lower(n, i, i as i32);
                    let (m, _) = f.leading(parity).unwrap();
                    assert_eq!(*m, Monomial::var(v(n, i as i32)), "parity {parity} i={i}");
                }
                for k in lo..n {
                    let f = vt.x(k, -(n as i32 + 1));
                    let (m, c) = f.leading(parity).unwrap();
                    assert_eq!(*m, Monomial::var(v(n, -(k as i32 + 1))), "parity {parity} k={k}");
                    assert_eq!(*c, rat(-1, 1));
                }
                for j in 1..=n {
                    let f = vt.f_lower(n, j, -(n as i32 + 1));
                    let (m, _) = f.leading(parity).unwrap();
                    let expect =
                        Monomial::from_pairs([(v(n, j as i32), 1), (v(n, -(j as i32)), 1)]);
                    assert_eq!(*m, expect, "parity {parity} j={j}");
                }
            }
        }
    }

    #[test]
    fn odd_lexdeg_prefers_paired_quadratic_over_middle_square() {
        // The tie-break must rank x[1,1]*x[1,-1] below x[1,0]^2.
        let paired = Monomial::from_pairs([(v(1, 1), 1), (v(1, -1), 1)]);
        let square = Monomial::from_pairs([(v(1, 0), 2)]);
        assert_eq!(
            lexdeg_cmp(Parity::Odd, &paired, &square),
            Ordering::Less
        );
    }

    #[test]
    fn even_lexdeg_ranks_outer_pair_below_inner_pair() {
        let outer = Monomial::from_pairs([(v(2, 2), 1), (v(2, -2), 1)]);
        let inner = Monomial::from_pairs([(v(2, 1), 1), (v(2, -1), 1)]);
        assert_eq!(lexdeg_cmp(Parity::Even, &outer, &inner), Ordering::Less);
        // Degree dominates everything.
        let small = Monomial::var(v(2, -2));
        assert_eq!(lexdeg_cmp(Parity::Even, &small, &inner), Ordering::Less);
    }

    #[test]
    fn partial_derivative_basics() {
        let vt = odd1();
        let f = vt.x(0, -2).clone();
        // d/dx[1,-1] (y^2/2*x1 - y*x0 - x_{-1}) = -1
        assert_eq!(f.partial(v(1, -1)), Poly::one().neg());
        let y = v(0, 0);
        // d/dy = y*x1 - x0
        let expect = Poly::var(y)
            .mul(&Poly::var(v(1, 1)))
            .sub(&Poly::var(v(1, 0)));
        assert_eq!(f.partial(y), expect);
    }

    #[test]
    fn display_formats() {
        let vt = odd1();
        assert_eq!(vt.x(0, -1).to_string(), "-1/2*x[0,0]^2");
        assert_eq!(vt.x(1, -2).to_string(), "-1/2*x[1,0]^2 - x[1,-1]*x[1,1]");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::one().to_string(), "1");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        // Small random polynomials over x[0,0], x[1,-1], x[1,0], x[1,1].
        let vars = [v(0, 0), v(1, -1), v(1, 0), v(1, 1)];
        proptest::collection::vec(
            (0usize..4, 0u32..3, -3i64..4),
            0..6,
        )
        .prop_map(move |spec| {
            let mut p = Poly::zero();
            for (vi, e, c) in spec {
                let m = Monomial::from_pairs([(vars[vi], e)]);
                p = p.add(&Poly::monomial(m, rat(c, 1)));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), Poly::zero());
        }

        #[test]
        fn product_rule(a in arb_poly(), b in arb_poly()) {
            for var in [v(0, 0), v(1, 0)] {
                let lhs = a.mul(&b).partial(var);
                let rhs = a.partial(var).mul(&b).add(&a.mul(&b.partial(var)));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn leading_is_multiplicative(a in arb_poly(), b in arb_poly()) {
            // The graded scan order is compatible with exponent addition, so
            // leading monomials multiply.
            if !a.is_zero() && !b.is_zero() {
                let p = a.mul(&b);
                if !p.is_zero() {
                    let (la, _) = a.leading(Parity::Odd).unwrap();
                    let (lb, _) = b.leading(Parity::Odd).unwrap();
                    let (lp, _) = p.leading(Parity::Odd).unwrap();
                    // Cancellation can only remove monomials, and the product
                    // of the two minima is minimal among surviving monomials
                    // when it survives; it always survives because its
                    // coefficient is the product of two leading coefficients
                    // plus contributions from strictly larger pairs, which
                    // cannot reach the minimal slot.
                    prop_assert_eq!(lp, &la.mul(lb));
                }
            }
        }
    }
}
