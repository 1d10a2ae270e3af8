use cliffop::fock::{monogenic_part, monogenic_seeds};
use cliffop::maxwell::*;
use cliffop::scalar::{int, HyperComponent};
use cliffop::{Polynomial, Signature};

fn sig(n: usize) -> Signature {
    Signature::euclidean(n).unwrap()
}

#[test]
fn parts_are_harmonic_and_residuals_pair_up() {
    for n in [2, 3] {
        for s in 0..=3 {
            for seed in monogenic_seeds(sig(n), s).unwrap().into_iter().take(3) {
                let sol = maxwell_solution(&seed, SeedKind::Monogenic).unwrap();
                let (a, b) = sol.laplacians().unwrap();
                assert!(a.is_zero() && b.is_zero(), "n={n} s={s}");
                // eigen and coupled residuals differ only by sign
                let e = sol.eigen_residual().unwrap();
                let c = sol.coupled_residual().unwrap();
                assert!(e.add(&c).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn heat_forms_agree() {
    for n in [2, 3] {
        for s in 0..=3 {
            for seed in monogenic_seeds(sig(n), s).unwrap().into_iter().take(2) {
                let sol = maxwell_solution(&seed, SeedKind::General).unwrap();
                assert_eq!(sol.heat_form().unwrap(), sol.outer_heat_form().unwrap());
                assert_eq!(sol.full().unwrap(), sol.outer_heat_form().unwrap());
            }
        }
    }
}

#[test]
fn residual_for_unit_seed_is_frozen() {
    // n = 2, s = 0: residual is the scalar ρS − λC with ρ = √2
    let sol = maxwell_solution(&Polynomial::one(sig(2)), SeedKind::Monogenic).unwrap();
    let r = sol.pde_residual().unwrap();
    assert!(r.component(HyperComponent::One).is_zero());
    let pts = vec![vec![0.3, -1.2], vec![2.0, 0.5]];
    for lambda in [0.5, 1.0, 2.0] {
        let rho = 2f64.sqrt();
        let mu = lambda * rho / 2.0;
        let expect = (rho * mu.sinh() - lambda * mu.cosh()).abs();
        let got = sol.numeric_residual(&r, lambda, &pts).unwrap();
        assert!((got - expect).abs() < 1e-12, "λ={lambda}: {got} vs {expect}");
    }
}

#[test]
fn sampled_field_matches_symbolic_parts() {
    let x1 = Polynomial::var(sig(3), 1).unwrap();
    let sol = maxwell_solution(&monogenic_part(&x1).unwrap(), SeedKind::Monogenic).unwrap();
    assert_eq!(sol.rho_sq(), int(5));
    let vals = sol.sample(1.0, &[vec![0.0, 0.0, 0.0]]).unwrap();
    assert!(vals[0].terms().all(|(_, c)| c.abs() < 1e-15));
}

#[test]
fn json_round_trip() {
    let x2 = Polynomial::var(sig(2), 2).unwrap();
    let sol = maxwell_solution(&monogenic_part(&x2).unwrap(), SeedKind::Monogenic).unwrap();
    let text = serde_json::to_string(&sol.to_json()).unwrap();
    let back: MaxwellJson = serde_json::from_str(&text).unwrap();
    assert_eq!(MaxwellSolution::from_json(&back).unwrap(), sol);
    let mut bad = back;
    bad.rho_sq = "7".into();
    assert!(MaxwellSolution::from_json(&bad).is_err());
}

#[test]
fn seeds_are_validated() {
    let x1 = Polynomial::var(sig(2), 1).unwrap();
    assert_eq!(maxwell_solution(&x1, SeedKind::Monogenic), Err(cliffop::Error::NotMonogenic));
    let mixed = x1.add(&Polynomial::one(sig(2))).unwrap();
    assert_eq!(maxwell_solution(&mixed, SeedKind::General), Err(cliffop::Error::NotHomogeneous));
}

#[test]
fn closed_form_series_departs_at_second_order() {
    for n in [2, 3] {
        let cmp = exp_dminusx_closed_form(&Polynomial::one(sig(n)), 6).unwrap();
        assert!(cmp.j0_scalar);
        assert_eq!(cmp.first_mismatch, Some(2));
    }
}

#[test]
fn displaced_identities_hold_to_first_order_only() {
    for r in displaced_intertwine_check(2, 3, 4).unwrap() {
        assert_eq!(r.witness().map(|w| w.lambda_order), Some(2), "{}", r.expression);
    }
}

#[test]
fn landau_suite_profile() {
    let reports = landau_suite(2, 3).unwrap();
    let order = |name: &str| {
        reports.iter().find(|r| r.name.as_deref() == Some(name)).unwrap().witness().map(|w| w.lambda_order)
    };
    assert_eq!(order("exp(lD/n) L+ exp(-lD/n) = L+_lambda"), Some(2));
    assert_eq!(order("{L+_lambda, L-_lambda} = -4H_lambda"), Some(1));
    assert_eq!(order("Helmholtz-plus-gauge form = factored form"), None);
    assert!(landau_reduces_to_h0(&Polynomial::var(sig(2), 1).unwrap()).unwrap());
}

#[test]
fn generating_series_is_not_the_displaced_exponential() {
    assert_eq!(generating_vs_displaced(&Polynomial::one(sig(2)), 4).unwrap(), Some(1));
}
