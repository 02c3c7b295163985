//! The matrix model of the orthogonal algebras.
//!
//! * Basis elements `A[i,j]`, realized as `E[pos(i),pos(j)] -
//!   E[pos(-j),pos(-i)]` over the index set `{0, ±1, ..., ±(n+1)}` (odd
//!   family) or `{±1, ..., ±(n+1)}` (even family);
//! * canonicalization `(i,j) -> (-j,-i)` with a sign, and `A[i,-i] = 0`;
//! * exact brackets through matrix commutators, with a reconstruction check
//!   on every call;
//! * raising / Cartan / lowering partitions, dominance tests, and the Weyl
//!   dimension formula for both families.
//!
//! # Examples
//!
//! ```
//! use oscrep::exact::Int;
//! use oscrep::liealg::{canonical_elems, weyl_dim, Weight};
//! use oscrep::Parity;
//!
//! let lambda: Weight = "1/2,3/2".parse().unwrap();
//! assert!(lambda.is_dominant(Parity::Odd));
//! assert_eq!(weyl_dim(Parity::Odd, &lambda).unwrap(), Int::from(16));
//!
//! // o(5) has 10 canonical basis elements.
//! assert_eq!(canonical_elems(1, Parity::Odd).len(), 10);
//! ```

use crate::exact::{HalfInt, Int, Rat};
use crate::{Error, Parity, Result};
use num::{One, Signed};
use std::fmt;
use std::str::FromStr;

/// One basis element `A[i,j]` of the algebra.
///
/// Stored pairs always satisfy `i + j != 0`; the canonical representatives
/// have `i + j > 0` (see [`canonicalize`]).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisElem {
    pub i: i32,
    pub j: i32,
}

impl BasisElem {
    pub fn new(i: i32, j: i32) -> Self {
        assert!(i + j != 0, "A[{i},{j}] is zero or non-canonical");
        BasisElem { i, j }
    }

    /// Cartan element?
    pub fn is_cartan(self) -> bool {
        self.i == self.j
    }

    /// Raising element `A[s,t]` with `|t| < s`?
    pub fn is_raising(self) -> bool {
        self.j.abs() < self.i
    }

    /// Lowering element `A[i,j]` with `|i| < j`?
    pub fn is_lowering(self) -> bool {
        self.i.abs() < self.j
    }
}

impl fmt::Display for BasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A[{},{}]", self.i, self.j)
    }
}

/// Rewrites `A[i,j]` as a signed canonical element, or `None` when it is
/// zero: `A[i,j] = -A[-j,-i]`, so pairs with `i + j < 0` flip, and
/// `A[i,-i] = 0` for every `i`.
pub fn canonicalize(i: i32, j: i32) -> Option<(BasisElem, i64)> {
    use std::cmp::Ordering;
    match (i + j).cmp(&0) {
        Ordering::Greater => Some((BasisElem { i, j }, 1)),
        Ordering::Less => Some((BasisElem { i: -j, j: -i }, -1)),
        Ordering::Equal => None,
    }
}

/// Whether `a` is a legal index for the family: `|a| <= n+1`, and nonzero in
/// the even family.
pub fn valid_index(n: u32, parity: Parity, a: i32) -> bool {
    a.abs() <= n as i32 + 1 && (parity.has_zero_column() || a != 0)
}

/// All canonical basis elements, in a fixed deterministic order.
pub fn canonical_elems(n: u32, parity: Parity) -> Vec<BasisElem> {
    let b = n as i32 + 1;
    let mut out = Vec::new();
    for i in -b..=b {
        for j in -b..=b {
            if valid_index(n, parity, i) && valid_index(n, parity, j) && i + j > 0 {
                out.push(BasisElem { i, j });
            }
        }
    }
    out
}

/// Canonical Cartan elements `A[j,j]`, `1 <= j <= n+1`.
pub fn cartan_elems(n: u32, parity: Parity) -> Vec<BasisElem> {
    canonical_elems(n, parity)
        .into_iter()
        .filter(|e| e.is_cartan())
        .collect()
}

/// Canonical raising elements `A[s,t]`, `|t| < s <= n+1`.
pub fn raising_elems(n: u32, parity: Parity) -> Vec<BasisElem> {
    canonical_elems(n, parity)
        .into_iter()
        .filter(|e| e.is_raising())
        .collect()
}

/// Canonical lowering elements `A[i,j]`, `|i| < j <= n+1`.
pub fn lowering_elems(n: u32, parity: Parity) -> Vec<BasisElem> {
    canonical_elems(n, parity)
        .into_iter()
        .filter(|e| e.is_lowering())
        .collect()
}

/// Raising elements of the rank-`n` subalgebra: `|t| < s <= n`.
pub fn sub_raising_elems(n: u32, parity: Parity) -> Vec<BasisElem> {
    raising_elems(n, parity)
        .into_iter()
        .filter(|e| e.i <= n as i32)
        .collect()
}

/// Row/column position of index `a` inside the `(2n+3)`-square matrices:
/// `0 -> 0`, `i -> i`, `-i -> n+1+i`. The even family simply never touches
/// position `0`.
pub fn pos(a: i32, n: u32) -> usize {
    if a >= 0 {
        a as usize
    } else {
        (n as usize + 1) + (-a) as usize
    }
}

pub type Matrix = Vec<Vec<i64>>;

fn zero_matrix(n: u32) -> Matrix {
    let m = (2 * n + 3) as usize;
    vec![vec![0; m]; m]
}

/// The matrix of `A[i,j]`; works for any index pair, including the zero
/// elements `A[i,-i]`.
pub fn matrix_of(i: i32, j: i32, n: u32) -> Matrix {
    let mut m = zero_matrix(n);
    m[pos(i, n)][pos(j, n)] += 1;
    m[pos(-j, n)][pos(-i, n)] -= 1;
    m
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = a.len();
    let mut out = vec![vec![0i64; m]; m];
    for r in 0..m {
        for (k, &ark) in a[r].iter().enumerate() {
            if ark == 0 {
                continue;
            }
            for c in 0..m {
                out[r][c] += ark * b[k][c];
            }
        }
    }
    out
}

fn mat_commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    ab.iter()
        .zip(&ba)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

/// Exact bracket `[A[x], A[y]]` expanded over the canonical basis.
///
/// The result is read off the commutator matrix and then verified by
/// reconstruction: the signed sum of the canonical matrices must reproduce
/// the commutator exactly.
pub fn bracket(x: BasisElem, y: BasisElem, n: u32, parity: Parity) -> Vec<(BasisElem, i64)> {
    let m = mat_commutator(&matrix_of(x.i, x.j, n), &matrix_of(y.i, y.j, n));
    let mut out = Vec::new();
    for e in canonical_elems(n, parity) {
        let c = m[pos(e.i, n)][pos(e.j, n)];
        if c != 0 {
            out.push((e, c));
        }
    }
    // Reconstruction check: the extraction above must account for the whole
    // commutator.
    let mut rebuilt = zero_matrix(n);
    for (e, c) in &out {
        rebuilt[pos(e.i, n)][pos(e.j, n)] += c;
        rebuilt[pos(-e.j, n)][pos(-e.i, n)] -= c;
    }
    assert_eq!(rebuilt, m, "bracket reconstruction failed for [{x},{y}]");
    out
}

/// A weight, stored as exact half-integers in the increasing convention
/// (`mu_1 <= mu_2 <= ...` for dominant weights).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weight {
    coords: Vec<HalfInt>,
}

impl Weight {
    pub fn new(coords: Vec<HalfInt>) -> Self {
        Weight { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[HalfInt] {
        &self.coords
    }

    /// 1-based coordinate accessor.
    pub fn mu(&self, i: usize) -> &HalfInt {
        &self.coords[i - 1]
    }

    /// Drops the last coordinate (the subalgebra restriction of the label).
    pub fn truncated(&self) -> Weight {
        Weight {
            coords: self.coords[..self.coords.len() - 1].to_vec(),
        }
    }

    /// Dominance test for the family.
    ///
    /// Odd (type B): `mu_1 >= 0` and every consecutive difference a
    /// nonnegative integer. Even (type D): `mu_1 + mu_2` a nonnegative
    /// integer and every consecutive difference a nonnegative integer
    /// (`mu_1` itself may be negative).
    pub fn is_dominant(&self, parity: Parity) -> bool {
        let c = &self.coords;
        if c.is_empty() {
            return true;
        }
        for w in c.windows(2) {
            let d = &w[1] - &w[0];
            if d.is_negative() || !d.is_integer() {
                return false;
            }
        }
        match parity {
            Parity::Odd => !c[0].is_negative(),
            Parity::Even => {
                if c.len() == 1 {
                    return true;
                }
                let s = &c[0] + &c[1];
                !s.is_negative() && s.is_integer()
            }
        }
    }

    pub fn check_dominant(&self, parity: Parity) -> Result<()> {
        if self.is_dominant(parity) {
            Ok(())
        } else {
            Err(Error::NotDominant(format!("{self} ({parity})")))
        }
    }

    /// The nonnegative integer increments determined by a dominant weight:
    /// `k_1 = 2*mu_1` (odd) or `mu_1 + mu_2` (even), and `k_i = mu_i -
    /// mu_{i-1}` for `i >= 2`.
    pub fn ks(&self, parity: Parity) -> Result<Vec<Int>> {
        self.check_dominant(parity)?;
        let c = &self.coords;
        let mut out = Vec::with_capacity(c.len());
        for i in 0..c.len() {
            let k = if i == 0 {
                match parity {
                    Parity::Odd => c[0].twice().clone(),
                    Parity::Even => (&c[0] + &c[1]).to_int()?,
                }
            } else {
                (&c[i] - &c[i - 1]).to_int()?
            };
            out.push(k);
        }
        Ok(out)
    }

    /// Inverse of [`Weight::ks`]: rebuilds the weight from its increments.
    pub fn from_ks(parity: Parity, ks: &[Int]) -> Result<Weight> {
        if ks.is_empty() || (parity == Parity::Even && ks.len() < 2) {
            return Err(Error::InvalidWeight(format!(
                "need at least {} increments for the {parity} family",
                if parity == Parity::Even { 2 } else { 1 }
            )));
        }
        let mut coords = Vec::with_capacity(ks.len());
        match parity {
            Parity::Odd => {
                coords.push(HalfInt::from_twice(ks[0].clone()));
                for k in &ks[1..] {
                    let prev: &HalfInt = coords.last().unwrap();
                    coords.push(HalfInt::from_twice(prev.twice() + k * 2));
                }
            }
            Parity::Even => {
                coords.push(HalfInt::from_twice(&ks[0] - &ks[1]));
                coords.push(HalfInt::from_twice(&ks[0] + &ks[1]));
                for k in &ks[2..] {
                    let prev: &HalfInt = coords.last().unwrap();
                    coords.push(HalfInt::from_twice(prev.twice() + k * 2));
                }
            }
        }
        let w = Weight { coords };
        w.check_dominant(parity)?;
        Ok(w)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|part| HalfInt::from_str(part.trim()))
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::InvalidWeight("empty weight".into()));
        }
        Ok(Weight { coords })
    }
}

/// Weyl dimension of the irreducible module with dominant highest weight
/// `lambda`, for the family selected by `parity` (odd: type B of rank
/// `lambda.rank()`; even: type D). Rank 0 gives 1; type D of rank 1 has no
/// positive roots, so it also gives 1.
pub fn weyl_dim(parity: Parity, lambda: &Weight) -> Result<Int> {
    lambda.check_dominant(parity)?;
    let m = lambda.rank();
    // rho for B: (1/2, 3/2, ...); for D: (0, 1, 2, ...).
    let rho: Vec<HalfInt> = (1..=m)
        .map(|i| match parity {
            Parity::Odd => HalfInt::from_twice(Int::from(2 * i as i64 - 1)),
            Parity::Even => HalfInt::from_int(Int::from(i as i64 - 1)),
        })
        .collect();
    let shifted: Vec<HalfInt> = lambda
        .coords()
        .iter()
        .zip(&rho)
        .map(|(a, b)| a + b)
        .collect();
    let mut num = Rat::one();
    let mut den = Rat::one();
    let mut push = |top: HalfInt, bottom: HalfInt| {
        num = &num * top.to_rat();
        den = &den * bottom.to_rat();
    };
    for r in 0..m {
        if parity == Parity::Odd {
            push(shifted[r].clone(), rho[r].clone());
        }
        for s in 0..r {
            push(&shifted[r] - &shifted[s], &rho[r] - &rho[s]);
            push(&shifted[r] + &shifted[s], &rho[r] + &rho[s]);
        }
    }
    let q = num / den;
    assert!(q.is_integer(), "Weyl quotient must be an integer: {q}");
    let d = q.to_integer();
    assert!(d.is_positive(), "Weyl dimension must be positive: {d}");
    Ok(d)
}
