use cliffop::fock::*;
use cliffop::ops::{hamiltonian, Hamiltonian};
use cliffop::poly::Term;
use cliffop::scalar::{int, rat};
use cliffop::{Blade, MultiIndex, Polynomial, Rational, Signature, WeightedFunction};
use proptest::prelude::*;

fn sig(n: usize) -> Signature {
    Signature::euclidean(n).unwrap()
}

/// I_{2m} = (2m−1)/2 · I_{2m−2}, I_0 = 1, odd moments zero.
fn moment_1d(e: u32) -> Rational {
    if e % 2 == 1 {
        return int(0);
    }
    (1..=e / 2).fold(int(1), |acc, m| acc * rat(2 * m as i64 - 1, 2))
}

#[test]
fn moments_match_recurrence_oracle() {
    for n in 1..=3 {
        let monos = MultiIndex::up_to_degree(n, 6);
        for a in &monos {
            for b in &monos {
                let oracle = (1..=n).fold(int(1), |acc, j| acc * moment_1d(a.get(j) + b.get(j)));
                assert_eq!(monomial_pairing(a, b, n), oracle, "{a:?} {b:?}");
            }
        }
    }
}

fn m1(n: usize) -> Polynomial<Rational> {
    monogenic_part(&Polynomial::var(sig(n), 1).unwrap()).unwrap()
}

#[test]
fn hermite_states_are_orthogonal() {
    for n in [2, 3] {
        for seed in [Polynomial::one(sig(n)), m1(n)] {
            let st = hermite_sequence(&seed, 5).unwrap();
            for k in 0..st.len() {
                for l in 0..st.len() {
                    let s = l2_inner(&st[k].raw, &st[l].raw).unwrap().scalar_part();
                    if k != l {
                        assert_eq!(s, int(0), "n={n} k={k} l={l}");
                    } else {
                        assert!(s > int(0));
                    }
                }
            }
        }
    }
}

#[test]
fn norm_ratios_follow_parity() {
    // even steps multiply by 2k, odd steps by 2(k + n − 1 + 2m) for a degree-m seed
    for n in [2usize, 3, 4] {
        for (m, seed) in [(0usize, Polynomial::one(sig(n))), (1, m1(n))] {
            let st = hermite_sequence(&seed, 6).unwrap();
            for k in 1..st.len() {
                let expect = if k % 2 == 0 { int(2 * k as i64) } else { int(2 * (k + n - 1 + 2 * m) as i64) };
                assert_eq!(norm_ratio(&st, k).unwrap(), expect, "n={n} m={m} k={k}");
                assert_eq!(lowering_factor(&st, k).unwrap(), Some(-expect));
            }
        }
    }
}

#[test]
fn eigen_equations() {
    for n in [2, 3] {
        let st = hermite_sequence(&Polynomial::one(sig(n)), 5).unwrap();
        for s in &st {
            assert!(h0_residual(s).unwrap().is_zero());
            assert!(j0_residual(s).unwrap().is_zero());
        }
        // a degree-m seed shifts the eigenvalue by m
        let st = hermite_sequence(&m1(n), 3).unwrap();
        for s in &st {
            let img = hamiltonian(Hamiltonian::H0).apply_weighted(&s.raw).unwrap();
            let ev = rat(2 * s.k as i64 + 2 + n as i64, 2);
            assert_eq!(img.poly, s.raw.poly.scale_rational(&ev));
        }
    }
}

#[test]
fn ck_product_form_is_not_the_squared_norm() {
    let st = hermite_sequence(&Polynomial::one(sig(2)), 3).unwrap();
    let ck = ck_comparison(&st, 2);
    assert_eq!(ck[1].product_form, rat(3, 2));
    assert_eq!(ck[1].printed_form, rat(3, 4));
    assert_eq!(ck[1].observed, int(2));
}

#[test]
fn weyl_states() {
    for n in 1..=3 {
        let states = cliffop::fock::weyl_states(sig(n), 4).unwrap();
        for a in &states {
            assert_eq!(a.norm_sq, weyl_norm_sq(&a.alpha));
            for b in &states {
                if a.alpha != b.alpha {
                    assert!(l2_inner(&a.raw, &b.raw).unwrap().is_zero());
                }
            }
            for j in 1..=n {
                let lower = cliffop::ops::weyl_heisenberg_ladder(j, cliffop::ops::LadderSign::Lower);
                let img = lower.apply_weighted(&a.raw).unwrap();
                if a.alpha[j - 1] == 0 {
                    assert!(img.poly.is_zero());
                } else {
                    let mut beta = a.alpha.clone();
                    beta[j - 1] -= 1;
                    let prev = weyl_state(sig(n), &beta).unwrap();
                    assert_eq!(img.poly, prev.raw.poly.scale_rational(&int(2 * a.alpha[j - 1] as i64)));
                }
            }
        }
    }
}

fn monomial_basis(n: usize, k: usize) -> Vec<Polynomial<Rational>> {
    let s = sig(n);
    MultiIndex::of_degree(n, k)
        .into_iter()
        .flat_map(|m| s.blades().map(move |b| Polynomial::monomial(s, m, b, int(1))))
        .collect()
}

#[test]
fn fischer_routes_agree_on_monomials() {
    for n in [2, 3] {
        for k in 0..=4 {
            for p in monomial_basis(n, k) {
                let a = fischer_tower(&p, FischerRoute::Dirac).unwrap();
                for m in &a.parts {
                    assert!(is_monogenic(m).unwrap());
                }
                assert_eq!(a.reconstruct().unwrap(), p);
                assert_eq!(fischer_tower(&p, FischerRoute::Projection).unwrap(), a);
                assert_eq!(fischer_tower(&p, FischerRoute::IntegralOperator).unwrap(), a);
            }
        }
    }
}

#[test]
fn harmonic_split_requires_harmonic_input() {
    let p = Polynomial::var(sig(2), 1).unwrap().mul_var(1).unwrap();
    assert_eq!(fischer_split(&p), Err(cliffop::Error::NotHarmonic));
    let e1 = Polynomial::monomial(sig(2), MultiIndex::ONE, Blade::generator(1), int(1));
    let (top, low) = fischer_split(&e1).unwrap();
    assert_eq!((top, low.is_zero()), (e1, true));
}

#[test]
fn generating_function_coefficients() {
    let n = 3;
    let seed = Polynomial::one(sig(n));
    let f = generating_function(&seed, 6).unwrap();
    let st = hermite_sequence(&seed, 6).unwrap();
    for s in &st {
        let coeff = f.lambda_coeff(s.k as u16);
        assert_eq!(coeff, s.raw.poly.scale_rational(&generating_coefficient(n, s.k)).to_symbolic());
    }
    assert_eq!(generating_coefficient(n, 1), rat(1, 3));
}

fn small_poly(n: usize) -> impl Strategy<Value = Polynomial<Rational>> {
    let s = sig(n);
    prop::collection::vec((prop::collection::vec(0u32..=5, n), 0..s.blade_count() as u16, -4i64..=4), 0..5).prop_map(
        move |terms| {
            Polynomial::from_terms(
                s,
                terms
                    .into_iter()
                    .filter(|(e, ..)| e.iter().sum::<u32>() <= 5)
                    .map(|(e, b, c)| (Term { mono: MultiIndex::new(&e).unwrap(), blade: Blade(b) }, int(c))),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ck_extension_solves_cauchy_problem(f in (2usize..=3).prop_flat_map(small_poly)) {
        let big = ck_extension(&f).unwrap();
        prop_assert!(ck_residual(&big).unwrap().is_zero());
        prop_assert_eq!(ck_restrict(&big, f.signature()).unwrap(), f);
    }

    #[test]
    fn gaussian_pairing_is_hermitian(f in small_poly(2), g in small_poly(2)) {
        let a = l2_inner(&WeightedFunction::gaussian(f.clone()), &WeightedFunction::gaussian(g.clone())).unwrap();
        let b = l2_inner(&WeightedFunction::gaussian(g), &WeightedFunction::gaussian(f)).unwrap();
        prop_assert_eq!(a.involution(cliffop::Involution::Conjugation), b);
    }
}
