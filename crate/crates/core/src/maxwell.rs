//! Closed-form homogeneous solutions of (D − λ + (2λ/n)Γ)f = 0 over the
//! formal symbols λ, ρ = √(2s+n), C = cosh(λρ/n), S = sinh(λρ/n).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::clifford::Multivector;
use crate::dsl::parse;
use crate::error::{Error, Result};
use crate::fock::{generating_function, is_monogenic};
use crate::ops::{hamiltonian, Expr, Hamiltonian};
use crate::poly::{Polynomial, PolynomialJson};
use crate::scalar::{
    factorial, format_rational, int, parse_rational, Coefficient, HyperComponent, Rational, SymbolValues, Symbolic,
};
use crate::verify::{displaced, landau, run_items, IdentityReport};

const PDE: &str = "D - lambda + 2*lambda/n*Gamma";
const EIGEN: &str = "Delta - 2*lambda/n*X - 2*E";
const COUPLED: &str = "2*E + 2*lambda/n*X";
const HEAT: &str = "exp(-Delta/4)";

fn op(text: &str) -> Expr {
    parse(text).expect("builtin operator parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedKind {
    /// C·P − (S/ρ)·xP.
    Monogenic,
    /// exp(−Δ/4)[C·P + (S/ρ)(D/2 − X)P].
    General,
}

/// P_{λ,s} = C·cosh_part + (S/ρ)·sinh_part.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxwellSolution {
    pub s: usize,
    pub kind: SeedKind,
    pub seed: Polynomial<Rational>,
    pub cosh_part: Polynomial<Rational>,
    /// Coefficient of S/ρ.
    pub sinh_part: Polynomial<Rational>,
}

pub fn maxwell_solution(seed: &Polynomial<Rational>, kind: SeedKind) -> Result<MaxwellSolution> {
    if !seed.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let s = seed.degree().unwrap_or(0);
    let (cosh_part, sinh_part) = match kind {
        SeedKind::Monogenic => {
            if !is_monogenic(seed)? {
                return Err(Error::NotMonogenic);
            }
            (seed.clone(), op("X").apply(seed)?.neg())
        }
        SeedKind::General => {
            let heat = op(HEAT);
            (heat.apply(seed)?, heat.apply(&op("D/2 - X").apply(seed)?)?)
        }
    };
    Ok(MaxwellSolution { s, kind, seed: seed.clone(), cosh_part, sinh_part })
}

impl MaxwellSolution {
    pub fn n(&self) -> usize {
        self.seed.n()
    }

    /// ρ² = 2s + n.
    pub fn rho_sq(&self) -> Rational {
        int((2 * self.s + self.n()) as i64)
    }

    /// Assemble C·cosh_part + (S·ρ/ρ²)·sinh_part.
    pub fn full(&self) -> Result<Polynomial<Symbolic>> {
        combine(&self.cosh_part, &self.sinh_part, &self.rho_sq())
    }

    /// The same solution with the sinh part negated (control case).
    pub fn sign_flipped(&self) -> Self {
        MaxwellSolution { sinh_part: self.sinh_part.neg(), ..self.clone() }
    }

    fn residual_of(&self, text: &str, shift: Rational) -> Result<Polynomial<Symbolic>> {
        let f = self.full()?;
        let img = op(text).apply(&f)?;
        let img = img.add(&f.scale(&Symbolic::constant(shift)))?;
        Ok(img.reduce_rho(&self.rho_sq()))
    }

    /// (D − λ + (2λ/n)Γ)P_{λ,s}.
    pub fn pde_residual(&self) -> Result<Polynomial<Symbolic>> {
        self.residual_of(PDE, int(0))
    }

    /// ΔP − (2λ/n)XP − 2EP + 2sP.
    pub fn eigen_residual(&self) -> Result<Polynomial<Symbolic>> {
        self.residual_of(EIGEN, int(2 * self.s as i64))
    }

    /// 2EP − 2sP + (2λ/n)XP.
    pub fn coupled_residual(&self) -> Result<Polynomial<Symbolic>> {
        self.residual_of(COUPLED, int(-2 * self.s as i64))
    }

    /// Δ applied to (cosh_part, sinh_part).
    pub fn laplacians(&self) -> Result<(Polynomial<Rational>, Polynomial<Rational>)> {
        let lap = op("Delta");
        Ok((lap.apply(&self.cosh_part)?, lap.apply(&self.sinh_part)?))
    }

    /// C·P^Δ + (S/ρ)(D − X)P^Δ with P^Δ = exp(−Δ/4)P.
    pub fn heat_form(&self) -> Result<Polynomial<Symbolic>> {
        let pd = op(HEAT).apply(&self.seed)?;
        combine(&pd, &op("D - X").apply(&pd)?, &self.rho_sq())
    }

    /// exp(−Δ/4)[C·P + (S/ρ)(D/2 − X)P].
    pub fn outer_heat_form(&self) -> Result<Polynomial<Symbolic>> {
        let heat = op(HEAT);
        combine(&heat.apply(&self.seed)?, &heat.apply(&op("D/2 - X").apply(&self.seed)?)?, &self.rho_sq())
    }

    /// Largest Euclidean coefficient norm of the residual at the given points.
    pub fn numeric_residual(&self, residual: &Polynomial<Symbolic>, lambda: f64, points: &[Vec<f64>]) -> Result<f64> {
        let vals = SymbolValues::maxwell(lambda, crate::scalar::rational_to_f64(&self.rho_sq()), self.n());
        points.iter().try_fold(0.0f64, |acc, p| {
            let mv = residual.evaluate_with(p, |c| c.eval(&vals))?;
            Ok(acc.max(mv_norm(&mv)))
        })
    }

    /// Field values at the given points.
    pub fn sample(&self, lambda: f64, points: &[Vec<f64>]) -> Result<Vec<Multivector<f64>>> {
        let full = self.full()?;
        let vals = SymbolValues::maxwell(lambda, crate::scalar::rational_to_f64(&self.rho_sq()), self.n());
        points.iter().map(|p| full.evaluate_with(p, |c| c.eval(&vals))).collect()
    }

    pub fn to_json(&self) -> MaxwellJson {
        MaxwellJson {
            s: self.s,
            n: self.n(),
            kind: self.kind,
            rho_sq: format_rational(&self.rho_sq()),
            sinh_scale: "1/rho".to_string(),
            seed: self.seed.to_json(),
            cosh_part: self.cosh_part.to_json(),
            sinh_part: self.sinh_part.to_json(),
        }
    }

    pub fn from_json(j: &MaxwellJson) -> Result<Self> {
        let sol = MaxwellSolution {
            s: j.s,
            kind: j.kind,
            seed: Polynomial::from_json(&j.seed)?,
            cosh_part: Polynomial::from_json(&j.cosh_part)?,
            sinh_part: Polynomial::from_json(&j.sinh_part)?,
        };
        if parse_rational(&j.rho_sq)? != sol.rho_sq() || j.n != sol.n() {
            return Err(Error::Malformed("rho_sq inconsistent with s and n".into()));
        }
        Ok(sol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxwellJson {
    pub s: usize,
    pub n: usize,
    pub kind: SeedKind,
    pub rho_sq: String,
    pub sinh_scale: String,
    pub seed: PolynomialJson,
    pub cosh_part: PolynomialJson,
    pub sinh_part: PolynomialJson,
}

fn combine(c: &Polynomial<Rational>, s: &Polynomial<Rational>, rho_sq: &Rational) -> Result<Polynomial<Symbolic>> {
    // 1/ρ = ρ/ρ²
    let inv_rho = Symbolic::rho().scale_rational(&(Rational::from_integer(1.into()) / rho_sq));
    let cs = c.to_symbolic().scale(&Symbolic::cosh());
    let ss = s.to_symbolic().scale(&Symbolic::sinh().mul_ref(&inv_rho));
    cs.add(&ss)
}

fn mv_norm(m: &Multivector<f64>) -> f64 {
    m.terms().map(|(_, c)| c * c).sum::<f64>().sqrt()
}

/// Split into the parts multiplying 1, C and S.
pub fn components(p: &Polynomial<Symbolic>) -> [Polynomial<Symbolic>; 3] {
    [p.component(HyperComponent::One), p.component(HyperComponent::Cosh), p.component(HyperComponent::Sinh)]
}

/// Direct truncated exponential against the hyperbolic closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormComparison {
    pub order: u16,
    pub direct: Polynomial<Symbolic>,
    pub closed: Polynomial<Symbolic>,
    /// Whether (2J₀)P^Δ = (2s+n)P^Δ.
    pub j0_scalar: bool,
    /// Lowest λ-power where the two disagree.
    pub first_mismatch: Option<u16>,
}

impl ClosedFormComparison {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Σ_{k≤N} (λ/n(D−X))^k/k! P^Δ against
/// Σ λ^{2k}/(n^{2k}(2k)!)(I + λ/(n(2k+1))(D−X))(2J₀)^k P^Δ, through λ^N.
pub fn exp_dminusx_closed_form(seed: &Polynomial<Rational>, order: u16) -> Result<ClosedFormComparison> {
    if !seed.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let n = seed.n();
    let s = seed.degree().unwrap_or(0);
    let pd = op(HEAT).apply(seed)?;
    let direct = op(&format!("exp[{order}](lambda/n*(D - X))")).apply(&pd.to_symbolic())?.truncate_lambda(order);
    let two_j0 = op(&format!("2*({})", crate::ops::hamiltonian_text(Hamiltonian::J0)));
    let dmx = op("D - X");
    let j0_scalar = two_j0.apply(&pd)? == pd.scale_rational(&int((2 * s + n) as i64));
    let mut closed = Polynomial::zero(seed.signature());
    let mut power = pd.clone();
    let mut k = 0u32;
    while 2 * k <= order as u32 {
        let even = Rational::new(1.into(), BigInt::from(n).pow(2 * k) * factorial(2 * k));
        let odd = &even * Rational::new(1.into(), BigInt::from(n * (2 * k as usize + 1)));
        let lam_even = Symbolic::lambda_pow(2 * k as u16);
        let lam_odd = Symbolic::lambda_pow(2 * k as u16 + 1);
        closed = closed.add(&power.scale_rational(&even).to_symbolic().scale(&lam_even))?;
        closed = closed.add(&dmx.apply(&power)?.scale_rational(&odd).to_symbolic().scale(&lam_odd))?;
        power = two_j0.apply(&power)?;
        k += 1;
    }
    let closed = closed.truncate_lambda(order);
    let diff = direct.sub(&closed)?;
    Ok(ClosedFormComparison { order, j0_scalar, first_mismatch: diff.lambda_valuation(), direct, closed })
}

/// Both displaced-intertwining identities as λ-series through order N.
pub fn displaced_intertwine_check(n: usize, bound: usize, order: u32) -> Result<Vec<IdentityReport>> {
    run_items(&displaced(order), n, bound)
}

pub fn landau_suite(n: usize, bound: usize) -> Result<Vec<IdentityReport>> {
    run_items(&landau(), n, bound)
}

/// λ-coefficients of the generating function against exp(λ/n(D−X)) applied to
/// the seed; returns the first λ-order where they differ.
pub fn generating_vs_displaced(seed: &Polynomial<Rational>, order: u16) -> Result<Option<u16>> {
    let gen = generating_function(seed, order as usize)?;
    let disp = op(&format!("exp[{order}](lambda/n*(D - X))")).apply(&seed.to_symbolic())?.truncate_lambda(order);
    Ok(gen.sub(&disp)?.lambda_valuation())
}

/// H_λ applied on the conjugated side equals H₀ conjugated, at λ = 0.
pub fn landau_reduces_to_h0(p: &Polynomial<Rational>) -> Result<bool> {
    let hl = hamiltonian(Hamiltonian::HLambda).apply(&p.to_symbolic())?.lambda_coeff(0);
    let h0 = hamiltonian(Hamiltonian::H0).apply(p)?.to_symbolic();
    Ok(hl == h0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Signature;
    use crate::fock::monogenic_part;
    use crate::poly::MultiIndex;

    fn sig(n: usize) -> Signature {
        Signature::euclidean(n).unwrap()
    }

    #[test]
    fn seed_one_parts() {
        let sol = maxwell_solution(&Polynomial::one(sig(2)), SeedKind::Monogenic).unwrap();
        assert_eq!(sol.rho_sq(), int(2));
        assert_eq!(sol.cosh_part, Polynomial::one(sig(2)));
        assert_eq!(sol.sinh_part, Polynomial::vector_variable(sig(2)).neg());
    }

    #[test]
    fn parts_are_harmonic() {
        let x1 = Polynomial::var(sig(2), 1).unwrap();
        let m1 = monogenic_part(&x1).unwrap();
        let sol = maxwell_solution(&m1, SeedKind::Monogenic).unwrap();
        let (a, b) = sol.laplacians().unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn seed_checks() {
        let x1 = Polynomial::var(sig(2), 1).unwrap();
        assert_eq!(maxwell_solution(&x1, SeedKind::Monogenic), Err(Error::NotMonogenic));
        let mixed = x1.add(&Polynomial::one(sig(2))).unwrap();
        assert_eq!(maxwell_solution(&mixed, SeedKind::General), Err(Error::NotHomogeneous));
    }

    #[test]
    fn heat_forms_agree() {
        let p = Polynomial::monomial(
            sig(3),
            MultiIndex::new(&[2, 1, 0]).unwrap(),
            crate::clifford::Blade::generator(2),
            int(1),
        );
        let sol = maxwell_solution(&p, SeedKind::General).unwrap();
        assert_eq!(sol.heat_form().unwrap(), sol.outer_heat_form().unwrap());
        assert_eq!(sol.full().unwrap(), sol.outer_heat_form().unwrap());
    }

    #[test]
    fn seed_one_residual_components() {
        // (D − λ + λΓ)(C − (S/ρ)x) = −λC + ρS for n = 2, s = 0
        let sol = maxwell_solution(&Polynomial::one(sig(2)), SeedKind::Monogenic).unwrap();
        let r = sol.pde_residual().unwrap();
        let expect = Symbolic::lambda()
            .mul_ref(&Symbolic::cosh())
            .neg_ref()
            .add_ref(&Symbolic::rho().mul_ref(&Symbolic::sinh()));
        assert_eq!(r, Polynomial::constant(&Multivector::scalar(sig(2), expect)));
    }

    #[test]
    fn closed_form_linear_term() {
        let cmp = exp_dminusx_closed_form(&Polynomial::one(sig(2)), 1).unwrap();
        assert!(cmp.agrees());
        assert!(cmp.j0_scalar);
    }

    #[test]
    fn landau_at_zero_is_h0() {
        let p = Polynomial::monomial(
            sig(2),
            MultiIndex::new(&[1, 2]).unwrap(),
            crate::clifford::Blade::generator(1),
            int(3),
        );
        assert!(landau_reduces_to_h0(&p).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let sol = maxwell_solution(&Polynomial::one(sig(3)), SeedKind::Monogenic).unwrap();
        let j = serde_json::to_string(&sol.to_json()).unwrap();
        let back: MaxwellJson = serde_json::from_str(&j).unwrap();
        assert_eq!(MaxwellSolution::from_json(&back).unwrap(), sol);
    }
}
