//! Exact verification of the dimension and combinatorial identities that
//! follow from the graded module structure: alternating binomial sums of
//! subalgebra dimensions against the ambient dimension, Steinberg-weight
//! closed forms, and graded decomposition counts. Every check is exact
//! integer arithmetic; a report never rounds.
//!
//! # Examples
//!
//! ```
//! use oscrep::exact::Int;
//! use oscrep::identities::{decomposition_identity, macdonald_odd, steinberg_odd};
//! use oscrep::liealg::Weight;
//! use oscrep::Parity;
//!
//! // Alternating binomial sum against a power of k + 1.
//! let report = steinberg_odd(3, 5);
//! assert!(report.pass);
//!
//! // Alternating sum of smaller Weyl dimensions equals the full one.
//! let lambda: Weight = "1/2,3/2".parse().unwrap();
//! let sum = macdonald_odd(1, &lambda).unwrap();
//! assert!(sum.pass);
//! assert_eq!(sum.lhs, Int::from(16));
//!
//! // Graded decomposition: degree-1 subalgebra content of a spin module.
//! let mu: Weight = "1/2".parse().unwrap();
//! let cell = decomposition_identity(1, &mu, 1, Parity::Odd).unwrap();
//! assert!(cell.pass);
//! assert_eq!(cell.lhs, Int::from(6));
//! ```

use crate::exact::{binom, int, HalfInt, Int, Rat};
use crate::liealg::{weyl_dim, Weight};
use crate::modbasis::graded_dims_formula;
use crate::singular::enumerate_beta_hat;
use crate::{Error, Parity, Result};
use num::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    /// Kebab-case identity name, e.g. `steinberg-odd`.
    pub id: String,
    /// Rendered parameters, e.g. `n=2 lambda=1/2,1/2,3/2`.
    pub params: String,
    pub lhs: Int,
    pub rhs: Int,
    pub pass: bool,
    /// Error text or reconciliation note for failing cells.
    pub note: Option<String>,
}

impl IdentityReport {
    fn new(id: &str, params: String, lhs: Int, rhs: Int) -> Self {
        let pass = lhs == rhs;
        IdentityReport {
            id: id.to_string(),
            params,
            lhs,
            rhs,
            pass,
            note: None,
        }
    }

    /// A failed cell carrying an error instead of a comparison.
    pub fn error_cell(id: &str, params: String, err: &Error) -> Self {
        IdentityReport {
            id: id.to_string(),
            params,
            lhs: Int::zero(),
            rhs: Int::zero(),
            pass: false,
            note: Some(err.to_string()),
        }
    }
}

/// The rank-`n` weight keeping the first `s` labels of a rank-`n+1`
/// weight and replacing label `i` by `mu_{i+1} + 1` above.
pub fn reduced_weight(lambda: &Weight, s: usize) -> Weight {
    let n = lambda.rank() - 1;
    let mut coords = Vec::with_capacity(n);
    for i in 1..=s {
        coords.push(lambda.mu(i).clone());
    }
    for i in s + 1..=n {
        coords.push(lambda.mu(i + 1).plus_int(1));
    }
    Weight::new(coords)
}

fn check_macdonald_input(parity: Parity, n: u32, lambda: &Weight) -> Result<()> {
    if lambda.rank() != n as usize + 1 {
        return Err(Error::InvalidWeight(format!(
            "weight {lambda} has rank {}, expected {}",
            lambda.rank(),
            n + 1
        )));
    }
    lambda.check_dominant(parity)?;
    if parity == Parity::Even && lambda.mu(1).is_negative() {
        return Err(Error::InvalidWeight(
            "the even dimension sums assume a nonnegative first label".into(),
        ));
    }
    Ok(())
}

/// Reconciliation note attached to failing alternating-sum reports.
const SUM_NOTE: &str = "summation runs over s = 0..n in the label form; \
the increment-indexed variant of the same sum is derived from it";

/// Ambient odd dimension as an alternating binomial sum of subalgebra
/// dimensions. Dispatches on the parity of twice the top label; the
/// half-integral branch carries an overall factor 2 because the graded
/// dimensions are palindromic and every degree below the midpoint pairs
/// with one above.
pub fn macdonald_odd(n: u32, lambda: &Weight) -> Result<IdentityReport> {
    check_macdonald_input(Parity::Odd, n, lambda)?;
    let params = format!("n={n} lambda={lambda}");
    let lhs = weyl_dim(Parity::Odd, lambda)?;
    let nn = n as usize;
    let top_half_integral = !lambda.mu(nn + 1).is_integer();
    let rhs = if top_half_integral {
        let mut acc = Int::zero();
        let half = HalfInt::from_twice(int(1));
        for s in 0..=nn {
            let top = (lambda.mu(s + 1) + &half)
                .plus_int((nn + s) as i64)
                .to_int()?;
            let term = binom(&top, 2 * n + 1) * weyl_dim(Parity::Odd, &reduced_weight(lambda, s))?;
            if (nn - s) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc * 2
    } else {
        let mut acc = Rat::zero();
        for s in 0..=nn {
            let top = lambda.mu(s + 1).plus_int((nn + s) as i64).to_int()?;
            let weight_factor = Rat::new(
                int(2 * s as i64 + 1) + lambda.mu(s + 1).twice(),
                int(2 * n as i64 + 1),
            );
            let term = Rat::from_integer(
                binom(&top, 2 * n) * weyl_dim(Parity::Odd, &reduced_weight(lambda, s))?,
            ) * weight_factor;
            if (nn - s) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        assert!(acc.is_integer(), "alternating sum must be integral");
        acc.to_integer()
    };
    let mut report = IdentityReport::new("macdonald-odd", params, lhs, rhs);
    if !report.pass {
        report.note = Some(SUM_NOTE.into());
    }
    Ok(report)
}

/// Ambient even dimension as an alternating binomial sum of subalgebra
/// dimensions. The degenerate subalgebra rank 1 is excluded: its rank-1
/// dimension convention collapses the sum.
pub fn macdonald_even(n: u32, lambda: &Weight) -> Result<IdentityReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "the even dimension sum needs n >= 2".into(),
        ));
    }
    check_macdonald_input(Parity::Even, n, lambda)?;
    let params = format!("n={n} lambda={lambda}");
    let lhs = weyl_dim(Parity::Even, lambda)?;
    let nn = n as usize;
    let top_half_integral = !lambda.mu(nn + 1).is_integer();
    let rhs = if top_half_integral {
        let mut acc = Int::zero();
        let half = HalfInt::from_twice(int(1));
        for s in 0..=nn {
            let top = (lambda.mu(s + 1) - &half)
                .plus_int((nn + s) as i64)
                .to_int()?;
            let term = binom(&top, 2 * n) * weyl_dim(Parity::Even, &reduced_weight(lambda, s))?;
            if (nn - s) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc * 2
    } else {
        let mut acc = Rat::zero();
        for s in 0..=nn {
            let top = lambda.mu(s + 1).plus_int((nn + s) as i64 - 1).to_int()?;
            let weight_factor = Rat::new(
                int(s as i64) + lambda.mu(s + 1).to_int()?,
                int(n as i64),
            );
            let term = Rat::from_integer(
                binom(&top, 2 * n - 1) * weyl_dim(Parity::Even, &reduced_weight(lambda, s))?,
            ) * weight_factor;
            if (nn - s) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        assert!(acc.is_integer(), "alternating sum must be integral");
        acc.to_integer()
    };
    let mut report = IdentityReport::new("macdonald-even", params, lhs, rhs);
    if !report.pass {
        report.note = Some(SUM_NOTE.into());
    }
    Ok(report)
}

/// Pure binomial identity obtained from the odd dimension sum at the
/// Steinberg weights `mu_i = (i - 1/2) k`, dispatched on the parity of
/// `k`.
pub fn steinberg_odd(n: u32, k: u32) -> IdentityReport {
    let params = format!("n={n} k={k}");
    let nn = n as i64;
    let (lhs, rhs) = if k % 2 == 1 {
        // 2 * sum_s (-1)^(n-s) C(n + (s+1/2)(k+1), 2n+1) C(2n+1, n-s)
        //   = (k+1)^(2n+1)
        let mut acc = Int::zero();
        for s in 0..=nn {
            let top = int(nn + (2 * s + 1) * (k as i64 + 1) / 2);
            let term = binom(&top, 2 * n + 1) * binom(&int(2 * nn + 1), (n - s as u32) as u32);
            if (nn - s) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        (acc * 2, int(k as i64 + 1).pow(2 * n + 1))
    } else {
        // sum_s (-1)^(n-s) C(n-1/2 + (s+1/2)(k+1), 2n) C(2n+1, n-s)
        //   * (2s+1)/(2n+1) = (k+1)^(2n)
        let mut acc = Rat::zero();
        for s in 0..=nn {
            let top = int(nn + s * (k as i64 + 1) + k as i64 / 2);
            let term = Rat::from_integer(
                binom(&top, 2 * n) * binom(&int(2 * nn + 1), (n - s as u32) as u32),
            ) * Rat::new(int(2 * s + 1), int(2 * nn + 1));
            if (nn - s) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        assert!(acc.is_integer(), "alternating sum must be integral");
        (acc.to_integer(), int(k as i64 + 1).pow(2 * n))
    };
    IdentityReport::new("steinberg-odd", params, lhs, rhs)
}

/// Pure binomial identity obtained from the even dimension sum at the
/// Steinberg weights `mu_i = (i - 1) k`:
/// `sum_{s=1}^n (-1)^(n-s) s C(n+s(k+1)-1, 2n-1) C(2n, n-s)
///  = n (k+1)^(2n-1)`.
pub fn steinberg_even(n: u32, k: u32) -> IdentityReport {
    let params = format!("n={n} k={k}");
    let nn = n as i64;
    let mut acc = Int::zero();
    for s in 1..=nn {
        let top = int(nn + s * (k as i64 + 1) - 1);
        let term = int(s) * binom(&top, 2 * n - 1) * binom(&int(2 * nn), (n - s as u32) as u32);
        if (nn - s) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let rhs = int(nn) * int(k as i64 + 1).pow(2 * n - 1);
    IdentityReport::new("steinberg-even", params, acc, rhs)
}

/// The Steinberg weight of the given parity: `mu_i = (i - 1/2) k` (odd)
/// or `mu_i = (i - 1) k` (even), `i = 1..rank`.
pub fn steinberg_weight(parity: Parity, rank: u32, k: u32) -> Weight {
    let coords = (1..=rank as i64)
        .map(|i| match parity {
            Parity::Odd => HalfInt::from_twice(int((2 * i - 1) * k as i64)),
            Parity::Even => HalfInt::from_int(int((i - 1) * k as i64)),
        })
        .collect();
    Weight::new(coords)
}

/// Checks the closed-form dimensions at Steinberg weights: the ambient
/// dimension `(k+1)^((n+1)^2)` (odd) / `(k+1)^(n^2+n)` (even) and the
/// reduced dimensions `C(2n+1, n-s)(k+1)^(n^2)` for `s = 0..n` (odd) /
/// `C(2n, n-s)(k+1)^(n^2-n)` for `s = 1..n` (even; the cross-block
/// product behind the closed form is empty at `s = 0`).
pub fn steinberg_dims(n: u32, k: u32, parity: Parity) -> Result<IdentityReport> {
    if parity == Parity::Even && n < 1 {
        return Err(Error::InvalidArgument("even case needs n >= 1".into()));
    }
    let params = format!("n={n} k={k} parity={parity}");
    let id = "steinberg-dims";
    let lambda = steinberg_weight(parity, n + 1, k);
    let kp1 = int(k as i64 + 1);
    let ambient = weyl_dim(parity, &lambda)?;
    let ambient_closed = match parity {
        Parity::Odd => kp1.pow((n + 1) * (n + 1)),
        Parity::Even => kp1.pow(n * n + n),
    };
    if ambient != ambient_closed {
        return Ok(IdentityReport::new(id, params, ambient, ambient_closed));
    }
    let s_lo = match parity {
        Parity::Odd => 0u32,
        Parity::Even => 1,
    };
    for s in s_lo..=n {
        let reduced = weyl_dim(parity, &reduced_weight(&lambda, s as usize))?;
        let closed = match parity {
            Parity::Odd => binom(&int(2 * n as i64 + 1), n - s) * kp1.pow(n * n),
            Parity::Even => binom(&int(2 * n as i64), n - s) * kp1.pow(n * n - n),
        };
        if reduced != closed {
            return Ok(IdentityReport::new(
                id,
                format!("{params} s={s}"),
                reduced,
                closed,
            ));
        }
    }
    Ok(IdentityReport::new(id, params, ambient, ambient_closed))
}

/// Graded decomposition identity: the degree-`r` classes of the
/// polynomial space, weighted by their subalgebra dimensions, count the
/// full degree-`r` component:
/// `sum_{beta} d(lambda(beta)) = C(2n+r, 2n) d(mu)` (odd) respectively
/// `C(2n+r-1, 2n-1) d(mu)` (even). `mu` is the subalgebra weight of rank
/// `n`.
pub fn decomposition_identity(
    n: u32,
    mu: &Weight,
    r: u64,
    parity: Parity,
) -> Result<IdentityReport> {
    if mu.rank() != n as usize {
        return Err(Error::InvalidWeight(format!(
            "subalgebra weight {mu} has rank {}, expected {n}",
            mu.rank()
        )));
    }
    if parity == Parity::Even && n < 1 {
        return Err(Error::InvalidArgument("even case needs n >= 1".into()));
    }
    mu.check_dominant(parity)?;
    let params = format!("n={n} mu={mu} r={r}");
    // Extend to an ambient weight; the graded set never reads the top
    // increment, so any dominant extension gives the same classes.
    let mut coords = mu.coords().to_vec();
    coords.push(if n == 0 {
        HalfInt::from_int(int(0))
    } else {
        mu.mu(n as usize).clone()
    });
    let ambient = Weight::new(coords);
    let mut lhs = Int::zero();
    for beta in enumerate_beta_hat(parity, &ambient, r)? {
        lhs += weyl_dim(parity, &beta.weight(&ambient))?;
    }
    let rhs = match parity {
        Parity::Odd => binom(&int(2 * n as i64 + r as i64), 2 * n),
        Parity::Even => binom(&int(2 * n as i64 + r as i64 - 1), 2 * n - 1),
    } * weyl_dim(parity, mu)?;
    let id = match parity {
        Parity::Odd => "decomposition-odd",
        Parity::Even => "decomposition-even",
    };
    Ok(IdentityReport::new(id, params, lhs, rhs))
}

/// Three-way agreement for one weight: the graded dimension formula
/// summed over all degrees, the Weyl dimension, and the alternating
/// binomial sum must coincide. `lhs` is the graded sum, `rhs` the Weyl
/// dimension; the alternating sum is checked via its own report.
pub fn graded_consistency(parity: Parity, lambda: &Weight) -> Result<IdentityReport> {
    let n = lambda.rank() as u32 - 1;
    let graded_sum: Int = graded_dims_formula(parity, lambda)?.into_iter().sum();
    let dim = weyl_dim(parity, lambda)?;
    let alt = match parity {
        Parity::Odd => macdonald_odd(n, lambda)?,
        Parity::Even => macdonald_even(n, lambda)?,
    };
    let mut report = IdentityReport::new(
        "graded-sum",
        format!("n={n} lambda={lambda} parity={parity}"),
        graded_sum,
        dim,
    );
    if !alt.pass {
        report.pass = false;
        report.note = Some(format!(
            "alternating sum disagrees: lhs={} rhs={}",
            alt.lhs, alt.rhs
        ));
    }
    Ok(report)
}

/// Runs one report-producing closure per cell in parallel, preserving
/// input order; per-cell errors become failed reports instead of
/// aborting the sweep.
pub fn sweep<T, F>(id: &str, cells: Vec<T>, f: F) -> Vec<IdentityReport>
where
    T: Send + std::fmt::Display,
    F: Fn(&T) -> Result<IdentityReport> + Sync,
{
    cells
        .into_par_iter()
        .map(|cell| match f(&cell) {
            Ok(report) => report,
            Err(e) => IdentityReport::error_cell(id, cell.to_string(), &e),
        })
        .collect()
}

/// Seeded dominant weights of the given rank: increments are drawn
/// uniformly in `0..5` and rejected until the top label is at most
/// `top_cap`, so alternating-sum grids stay desk-sized.
pub fn random_dominant_weights(
    parity: Parity,
    rank: u32,
    count: usize,
    seed: u64,
    top_cap: i64,
) -> Result<Vec<Weight>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let cap = HalfInt::from_int(int(top_cap));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ks: Vec<Int> = (0..rank).map(|_| int((rng.next_u64() % 5) as i64)).collect();
        let w = Weight::from_ks(parity, &ks)?;
        if w.mu(rank as usize) <= &cap {
            out.push(w);
        }
    }
    Ok(out)
}

/// Replaces the first label by its absolute value (an even-parity
/// dimension-preserving reflection).
pub fn fold_first_label(w: Weight) -> Weight {
    let mut coords = w.coords().to_vec();
    coords[0] = coords[0].abs();
    Weight::new(coords)
}

/// Steinberg sweep over a parameter grid, all cells exact.
pub fn sweep_steinberg(parity: Parity, n_max: u32, k_max: u32) -> Vec<IdentityReport> {
    let cells: Vec<(u32, u32)> = (1..=n_max)
        .flat_map(|n| (0..=k_max).map(move |k| (n, k)))
        .collect();
    let id = match parity {
        Parity::Odd => "steinberg-odd",
        Parity::Even => "steinberg-even",
    };
    struct Cell((u32, u32));
    impl std::fmt::Display for Cell {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            write!(f, "n={} k={}", self.0 .0, self.0 .1)
        }
    }
    sweep(id, cells.into_iter().map(Cell).collect(), |cell| {
        let (n, k) = cell.0;
        Ok(match parity {
            Parity::Odd => steinberg_odd(n, k),
            Parity::Even => steinberg_even(n, k),
        })
    })
}

/// Alternating-sum sweep over seeded random dominant weights with the
/// top label capped at 4.
pub fn sweep_macdonald(
    parity: Parity,
    n: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<IdentityReport>> {
    let mut weights = random_dominant_weights(parity, n + 1, count, seed, 4)?;
    if parity == Parity::Even {
        // The even sums assume a nonnegative first label; flipping its
        // sign preserves every dimension involved, so fold the samples.
        weights = weights.into_iter().map(fold_first_label).collect();
    }
    let id = match parity {
        Parity::Odd => "macdonald-odd",
        Parity::Even => "macdonald-even",
    };
    Ok(sweep(id, weights, |w| match parity {
        Parity::Odd => macdonald_odd(n, w),
        Parity::Even => macdonald_even(n, w),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;

    fn lam(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn macdonald_odd_examples() {
        // Half-integral top label.
        let r = macdonald_odd(1, &lam("1/2,3/2")).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(16));
        // Integral top label.
        let r = macdonald_odd(1, &lam("0,1")).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(5));
        // Degenerate n = 0 base case: d3 = 2*mu1 + 1.
        let r = macdonald_odd(0, &lam("2")).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(5));
        let r = macdonald_odd(0, &lam("5/2")).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(6));
    }

    #[test]
    fn macdonald_even_examples() {
        let r = macdonald_even(2, &lam("0,0,1")).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(6));
        // Half-integral branch (carries the overall factor 2).
        let r = macdonald_even(2, &lam("1/2,1/2,3/2")).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(20));
        let r = macdonald_even(2, &lam("1/2,1/2,1/2")).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(4));
        // Zero weight: both sides 1.
        let r = macdonald_even(2, &lam("0,0,0")).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, int(1));
        assert_eq!(r.rhs, int(1));
        // Degenerate subalgebra rank is excluded.
        assert!(macdonald_even(1, &lam("0,1")).is_err());
    }

    #[test]
    fn macdonald_exhaustive_small_grid() {
        // Every dominant weight with increments <= 2 at ranks 2 and 3.
        for n in [1u32, 2] {
            let rank = n + 1;
            let mut stack = vec![Vec::<Int>::new()];
            while let Some(ks) = stack.pop() {
                if ks.len() == rank as usize {
                    let w = Weight::from_ks(Parity::Odd, &ks).unwrap();
                    let r = macdonald_odd(n, &w).unwrap();
                    assert!(r.pass, "odd {r:?}");
                    if n >= 2 {
                        let w = fold_first_label(Weight::from_ks(Parity::Even, &ks).unwrap());
                        let r = macdonald_even(n, &w).unwrap();
                        assert!(r.pass, "even {r:?}");
                    }
                    continue;
                }
                for k in 0..=2 {
                    let mut next = ks.clone();
                    next.push(int(k));
                    stack.push(next);
                }
            }
        }
    }

    #[test]
    fn steinberg_odd_examples() {
        let r = steinberg_odd(1, 1);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(8));
        assert_eq!(r.rhs, int(8));
        let r = steinberg_odd(1, 0);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.rhs, int(1));
        let r = steinberg_odd(5, 7);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.rhs, int(8).pow(11));
    }

    #[test]
    fn steinberg_even_examples() {
        let r = steinberg_even(1, 0);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(1));
        let r = steinberg_even(1, 2);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.rhs, int(3));
        let r = steinberg_even(4, 5);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn steinberg_grid_passes() {
        for parity in [Parity::Odd, Parity::Even] {
            for report in sweep_steinberg(parity, 4, 6) {
                assert!(report.pass, "{report:?}");
            }
        }
    }

    #[test]
    fn steinberg_dims_closed_forms() {
        let r = steinberg_dims(1, 1, Parity::Odd).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(16));
        let r = steinberg_dims(2, 1, Parity::Even).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(64));
        // Reduced spot value: odd n=2, k=3, s=1 gives C(5,1) * 4^4.
        let lambda = steinberg_weight(Parity::Odd, 3, 3);
        assert_eq!(
            weyl_dim(Parity::Odd, &reduced_weight(&lambda, 1)).unwrap(),
            binom(&int(5), 1) * int(4).pow(4)
        );
        for parity in [Parity::Odd, Parity::Even] {
            for n in 1..=3 {
                for k in 0..=3 {
                    let r = steinberg_dims(n, k, parity).unwrap();
                    assert!(r.pass, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn decomposition_hand_examples() {
        // Odd n=1, mu=0, r=1: single class, 3 = C(3,2)*1.
        let r = decomposition_identity(1, &lam("0"), 1, Parity::Odd).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(3));
        // Odd n=1, mu=1/2, r=1: 4 + 2 = C(3,2)*2.
        let r = decomposition_identity(1, &lam("1/2"), 1, Parity::Odd).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(6));
        // r=0 is d(mu) on both sides.
        let r = decomposition_identity(2, &lam("1,2"), 0, Parity::Odd).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, r.rhs);
        // Even degenerate rank 1: the set is unconstrained and the count
        // is r + 1.
        let r = decomposition_identity(1, &lam("0"), 3, Parity::Even).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(4));
        let r = decomposition_identity(1, &lam("2"), 5, Parity::Even).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(6));
        // Even n=2 hand-checked cells.
        let r = decomposition_identity(2, &lam("1,2"), 1, Parity::Even).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(32));
        let r = decomposition_identity(2, &lam("0,1"), 1, Parity::Even).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.lhs, int(16));
    }

    #[test]
    fn decomposition_small_grid() {
        let odd_mus = ["0", "1/2", "2", "0,1", "1/2,3/2", "1,2", "0,0,1"];
        for s in odd_mus {
            let mu = lam(s);
            for r in 0..=4 {
                let rep =
                    decomposition_identity(mu.rank() as u32, &mu, r, Parity::Odd).unwrap();
                assert!(rep.pass, "odd {rep:?}");
            }
        }
        let even_mus = ["0", "3/2", "0,1", "1,2", "-1,2", "1/2,5/2", "0,0,1"];
        for s in even_mus {
            let mu = lam(s);
            for r in 0..=4 {
                let rep =
                    decomposition_identity(mu.rank() as u32, &mu, r, Parity::Even).unwrap();
                assert!(rep.pass, "even {rep:?}");
            }
        }
    }

    #[test]
    fn graded_three_way_agreement() {
        for (parity, s) in [
            (Parity::Odd, "0,1"),
            (Parity::Odd, "1/2,3/2"),
            (Parity::Even, "0,0,1"),
            (Parity::Even, "1/2,1/2,3/2"),
        ] {
            let r = graded_consistency(parity, &lam(s)).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn sweeps_are_deterministic_and_error_tolerant() {
        let a = sweep_macdonald(Parity::Odd, 1, 5, 42).unwrap();
        let b = sweep_macdonald(Parity::Odd, 1, 5, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.pass), "{a:?}");
        // An error cell becomes a failed report, not an abort.
        let reports = sweep("macdonald-odd", vec![lam("1,0")], |w| macdonald_odd(1, w));
        assert_eq!(reports.len(), 1);
        assert!(!reports[0].pass);
        assert!(reports[0].note.is_some());
    }

    #[test]
    fn random_weights_are_seeded_and_capped() {
        let a = random_dominant_weights(Parity::Odd, 2, 8, 7, 4).unwrap();
        let b = random_dominant_weights(Parity::Odd, 2, 8, 7, 4).unwrap();
        assert_eq!(a, b);
        let cap = HalfInt::from_int(int(4));
        for w in &a {
            assert!(w.check_dominant(Parity::Odd).is_ok());
            assert!(w.mu(2) <= &cap);
        }
        let c = random_dominant_weights(Parity::Odd, 2, 8, 8, 4).unwrap();
        assert_ne!(a, c, "different seeds should differ");
    }

    #[test]
    fn one_i64_is_one() {
        // Guard against accidental truncation in the report plumbing.
        assert_eq!(Int::one(), int(1));
    }
}
