//! Acceptance suite: eleven end-to-end criteria, one test per criterion,
//! each printing a single machine-greppable pass/fail line.

use oscrep::exact::{rat, Int, Rat};
use oscrep::identities;
use oscrep::liealg::{canonical_elems, weyl_dim, Weight};
use oscrep::modbasis::{graded_dims_formula, spanning_span_dim, ModuleClosure};
use oscrep::oscrep::RepContext;
use oscrep::poly::{Poly, VarTable};
use oscrep::singular::{enumerate_basis_specs, singular_poly, verify_singular};
use oscrep::{Guards, Parity};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn criterion(index: u32, name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let result = std::panic::catch_unwind(body);
    let word = if result.is_ok() { "PASS" } else { "FAIL" };
    println!("acceptance {index:02} {name}: {word}");
    if let Err(payload) = result {
        std::panic::resume_unwind(payload);
    }
}

/// The (tower index, family) combinations the operator checks run over.
const COMBOS: [(u32, Parity); 5] = [
    (0, Parity::Odd),
    (1, Parity::Odd),
    (2, Parity::Odd),
    (1, Parity::Even),
    (2, Parity::Even),
];

fn random_rationals(rng: &mut ChaCha20Rng, len: usize) -> Vec<Rat> {
    (0..len)
        .map(|_| {
            let num = (rng.next_u64() % 19) as i64 - 9;
            let den = (rng.next_u64() % 7) as i64 + 1;
            Rat::new(Int::from(num), Int::from(den))
        })
        .collect()
}

fn parse(s: &str) -> Weight {
    s.parse().expect("weight literal")
}

#[test]
fn criterion_01_bracket_relations_hold_for_random_rational_weights() {
    criterion(1, "bracket relations for seeded rational weights", || {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for (n, parity) in COMBOS {
            for trial in 0..3 {
                let mu = random_rationals(&mut rng, n as usize + 1);
                let ctx = RepContext::new(n, parity, mu.clone());
                if let Err(e) = ctx.verify_homomorphism() {
                    panic!("n={n} {parity} trial {trial} mu={mu:?}: {e}");
                }
            }
        }
    });
}

#[test]
fn criterion_02_closed_form_operators_equal_the_inductive_tower() {
    criterion(2, "closed-form operators match the inductive tower", || {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for (n, parity) in COMBOS {
            for _ in 0..2 {
                let mu = random_rationals(&mut rng, n as usize + 1);
                let ctx = RepContext::new(n, parity, mu);
                let tower = ctx.inductive_ops();
                for e in canonical_elems(n, parity) {
                    let closed = ctx.op_ref(e);
                    let inductive = tower
                        .get(&(e.i, e.j))
                        .unwrap_or_else(|| panic!("missing tower entry for {e}"));
                    assert!(closed == inductive, "n={n} {parity}: {e} differs");
                }
            }
        }
    });
}

#[test]
fn criterion_03_determinant_lemmas_hold_for_all_admissible_indices() {
    criterion(3, "determinant recurrences and pairing vanishing", || {
        for parity in [Parity::Odd, Parity::Even] {
            for n in 0..=3u32 {
                let vt = VarTable::new(n, parity);
                for s in 0..=n {
                    for t in 0..=s {
                        for r in -(n as i32 + 1)..=(s as i32 + 1) {
                            let lhs = vt.f_lower(s, t, r);

                            // Expansion along the last row.
                            let mut rhs = vt.x(s, r).clone();
                            for k in (t + 1)..=s {
                                rhs = rhs.sub(&vt.x(s, k as i32).mul(&vt.f_lower(k - 1, t, r)));
                            }
                            assert!(lhs == rhs, "last-row: {parity} n={n} f[{s},{t}]({r})");

                            // Expansion along the first column.
                            let mut rhs = vt.x(s, r).clone();
                            for k in t..s {
                                rhs =
                                    rhs.sub(&vt.x(k, r).mul(&vt.f_lower(s, k + 1, k as i32 + 1)));
                            }
                            assert!(lhs == rhs, "first-column: {parity} n={n} f[{s},{t}]({r})");

                            // Peeling the top row.
                            if t < s {
                                let rhs = vt
                                    .f_lower(s, t + 1, r)
                                    .sub(&vt.x(t, r).mul(&vt.f_lower(s, t + 1, t as i32 + 1)));
                                assert!(lhs == rhs, "peel: {parity} n={n} f[{s},{t}]({r})");
                            }
                        }

                        // Pairing rows against the minors kills the sum.
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
                                "pairing: {parity} n={n} s={s} t={t} r={r}"
                            );
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_04_spanning_dimensions_match_the_closed_forms() {
    criterion(4, "spanning sets have the predicted dimensions", || {
        let guards = Guards::default();
        let cases: [(u32, Parity, &str, u64); 8] = [
            (0, Parity::Odd, "1/2", 2),
            (0, Parity::Odd, "1", 3),
            (0, Parity::Odd, "2", 5),
            (1, Parity::Even, "0,1", 4),
            (1, Parity::Even, "1,2", 8),
            (1, Parity::Even, "1/2,1/2", 2),
            (1, Parity::Odd, "0,1", 5),
            (1, Parity::Odd, "1/2,1/2", 4),
        ];
        for (n, parity, lam, expect) in cases {
            let w = parse(lam);
            let ctx = RepContext::for_weight(n, parity, &w).unwrap();
            let span = spanning_span_dim(&ctx, &guards).unwrap();
            let formula = weyl_dim(parity, &w).unwrap();
            assert_eq!(Int::from(span as u64), formula, "{parity} n={n} λ={lam}");
            assert_eq!(span as u64, expect, "{parity} n={n} λ={lam}");
        }
    });
}

#[test]
fn criterion_05_graded_dimensions_match_and_are_palindromic() {
    criterion(5, "graded dimensions match the formula and reflect", || {
        let guards = Guards::default();
        let w = parse("0,1");
        let ctx = RepContext::for_weight(1, Parity::Odd, &w).unwrap();
        let closure = ModuleClosure::build(&ctx, &guards).unwrap();
        let measured = closure.graded_dims();
        let formula = graded_dims_formula(Parity::Odd, &w).unwrap();
        assert_eq!(measured.len(), formula.len(), "graded support differs");
        for (r, dim) in measured.iter().enumerate() {
            assert_eq!(Int::from(*dim as u64), formula[r], "degree {r}");
        }

        let palindromes = [
            (Parity::Odd, "0,1"),
            (Parity::Odd, "1/2,3/2"),
            (Parity::Odd, "1,2"),
            (Parity::Even, "0,1"),
            (Parity::Even, "1,2"),
            (Parity::Even, "0,0,1"),
        ];
        for (parity, lam) in palindromes {
            let dims = graded_dims_formula(parity, &parse(lam)).unwrap();
            let len = dims.len();
            for r in 0..len {
                assert_eq!(dims[r], dims[len - 1 - r], "{parity} λ={lam} degree {r}");
            }
        }
    });
}

#[test]
fn criterion_06_singular_vectors_are_annihilated() {
    criterion(6, "singular vectors are annihilated by the subalgebra", || {
        let cases: [(u32, Parity, &str); 6] = [
            (1, Parity::Odd, "1/2,3/2"),
            (1, Parity::Odd, "0,1"),
            (2, Parity::Odd, "0,0,1"),
            (1, Parity::Even, "0,1"),
            (1, Parity::Even, "1,2"),
            (2, Parity::Even, "0,0,1"),
        ];
        for (n, parity, lam) in cases {
            let w = parse(lam);
            let ctx = RepContext::for_weight(n, parity, &w).unwrap();
            let specs = enumerate_basis_specs(parity, &w, None).unwrap();
            assert!(!specs.is_empty(), "{parity} λ={lam} has no vectors");
            for spec in &specs {
                assert!(
                    verify_singular(&ctx, spec).unwrap(),
                    "{parity} λ={lam}: {spec:?} is not singular"
                );
            }
        }
    });
}

#[test]
fn criterion_07_branching_sums_recover_the_ambient_dimension() {
    criterion(7, "branching dimension sums and the table entry", || {
        let towers: [(Parity, &[&str]); 3] = [
            (Parity::Odd, &["0,1", "1/2,3/2", "1,2"]),
            (Parity::Odd, &["0,0,1", "1/2,1/2,3/2", "1,1,2"]),
            (Parity::Even, &["0,0,1", "1,1,2", "-1/2,1/2,3/2"]),
        ];
        for (parity, lams) in towers {
            for lam in lams {
                let w = parse(lam);
                let sum = oscrep::singular::branching_dimension_sum(parity, &w).unwrap();
                let ambient = weyl_dim(parity, &w).unwrap();
                assert_eq!(sum, ambient, "{parity} λ={lam}");
            }
        }

        // The rank-two table: nu = 0 appears twice (dimension 1 each) and
        // nu = 1 once (dimension 3), totalling 5.
        let w = parse("0,1");
        let specs = enumerate_basis_specs(Parity::Odd, &w, None).unwrap();
        let mut rows: Vec<(String, Int)> = specs
            .iter()
            .map(|spec| {
                let p = oscrep::singular::to_pattern(spec, &w).unwrap();
                let sub = Weight::new(p.nu.clone());
                (sub.to_string(), weyl_dim(Parity::Odd, &sub).unwrap())
            })
            .collect();
        rows.sort();
        let expected: Vec<(String, Int)> = vec![
            ("0".into(), Int::from(1)),
            ("0".into(), Int::from(1)),
            ("1".into(), Int::from(3)),
        ];
        assert_eq!(rows, expected);
        let total: Int = rows.into_iter().map(|(_, d)| d).sum();
        assert_eq!(total, Int::from(5));
    });
}

#[test]
fn criterion_08_decomposition_identities_hold_on_the_grid() {
    criterion(8, "graded decomposition identities", || {
        // Hand-checked cells first.
        let cell = identities::decomposition_identity(1, &parse("0"), 1, Parity::Odd).unwrap();
        assert!(cell.pass);
        assert_eq!(cell.lhs, Int::from(3));
        let cell = identities::decomposition_identity(1, &parse("1/2"), 1, Parity::Odd).unwrap();
        assert!(cell.pass);
        assert_eq!(cell.lhs, Int::from(6));

        let grid: [(Parity, u32, &[&str]); 6] = [
            (Parity::Odd, 1, &["0", "1/2", "2"]),
            (Parity::Odd, 2, &["0,1", "1/2,3/2"]),
            (Parity::Odd, 3, &["0,0,1"]),
            (Parity::Even, 1, &["0", "3/2"]),
            (Parity::Even, 2, &["0,1", "-1,2"]),
            (Parity::Even, 3, &["0,0,1"]),
        ];
        for (parity, n, mus) in grid {
            for mu in mus {
                let w = parse(mu);
                for r in 0..=6u64 {
                    let report = identities::decomposition_identity(n, &w, r, parity).unwrap();
                    assert!(
                        report.pass,
                        "{parity} n={n} μ={mu} r={r}: {} != {}",
                        report.lhs, report.rhs
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_09_alternating_dimension_sums_pass_for_seeded_weights() {
    criterion(9, "alternating binomial dimension sums", || {
        for n in [1u32, 2, 3] {
            for report in identities::sweep_macdonald(Parity::Odd, n, 20, 900 + n as u64).unwrap()
            {
                assert!(report.pass, "odd n={n} {}: failed", report.params);
            }
        }
        for n in [2u32, 3] {
            for report in identities::sweep_macdonald(Parity::Even, n, 20, 950 + n as u64).unwrap()
            {
                assert!(report.pass, "even n={n} {}: failed", report.params);
            }
        }
    });
}

#[test]
fn criterion_10_power_identities_pass_on_the_full_grid() {
    criterion(10, "power identities and closed-form dimensions", || {
        for parity in [Parity::Odd, Parity::Even] {
            for report in identities::sweep_steinberg(parity, 6, 10) {
                assert!(report.pass, "{parity} {}: failed", report.params);
            }
            for n in 1..=3u32 {
                for k in 0..=3u32 {
                    let report = identities::steinberg_dims(n, k, parity).unwrap();
                    assert!(report.pass, "{parity} dims n={n} k={k}: failed");
                }
            }
        }
    });
}

#[test]
fn criterion_11_leading_monomial_law_on_seeded_specs() {
    criterion(11, "leading monomials of singular products", || {
        for parity in [Parity::Odd, Parity::Even] {
            let mut weights: Vec<Weight> = Vec::new();
            for (i, rank) in [2u32, 3].into_iter().enumerate() {
                weights.extend(
                    identities::random_dominant_weights(parity, rank, 30, 41 + i as u64, 2)
                        .unwrap(),
                );
            }
            let mut count = 0usize;
            'weights: for w in &weights {
                let n = w.rank() as u32 - 1;
                let ctx = RepContext::for_weight(n, parity, w).unwrap();
                for spec in enumerate_basis_specs(parity, w, None).unwrap() {
                    let p = singular_poly(&ctx, &spec).unwrap();
                    let (lead, _) = p.leading(parity).expect("nonzero singular product");
                    assert_eq!(
                        lead,
                        &spec.leading_monomial(),
                        "{parity} λ={w}: {spec:?}"
                    );
                    count += 1;
                    if count >= 200 {
                        break 'weights;
                    }
                }
            }
            assert!(count >= 200, "{parity}: only {count} specs sampled");
        }
    });
}

// Keep the dimension helper honest on a case whose product form is easy to
// see by hand: the even rank-two module with labels (1, 2) factors as
// (2 - 1 + 1) * (2 + 1 + 1) = 8.
#[test]
fn product_formula_spot_check() {
    let w = parse("1,2");
    assert_eq!(weyl_dim(Parity::Even, &w).unwrap(), rat(8, 1).to_integer());
}
