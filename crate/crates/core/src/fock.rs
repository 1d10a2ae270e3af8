//! Gaussian pairings, Clifford-Hermite and Weyl-Heisenberg states, Fischer
//! decomposition and the Cauchy-Kowalevskaya extension.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::clifford::{Blade, Involution, Multivector, Signature};
use crate::error::{Error, Result};
use crate::ops::{hamiltonian, ladder_pair, weyl_heisenberg_ladder, Atom, Expr, Hamiltonian, LadderSign};
use crate::poly::{MultiIndex, Polynomial, WeightedFunction};
use crate::scalar::{factorial, format_rational, int, odd_double_factorial, Rational, Symbolic};

/// Normalized Gaussian moment π^{−1/2}∫t^{2m}e^{−t²}dt = (2m−1)!!/2^m.
pub fn moment(m: u32) -> Rational {
    Rational::new(odd_double_factorial(m), BigInt::from(2).pow(m))
}

/// Normalized pairing of x^α and x^β against e^{−|x|²}.
pub fn monomial_pairing(a: &MultiIndex, b: &MultiIndex, n: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 1..=n {
        let e = a.get(j) + b.get(j);
        if e % 2 == 1 {
            return Rational::zero();
        }
        acc *= moment(e / 2);
    }
    acc
}

fn pair_terms(f: &Polynomial<Rational>, g: &Polynomial<Rational>) -> Result<Multivector<Rational>> {
    if f.signature() != g.signature() {
        return Err(Error::SignatureMismatch(f.signature(), g.signature()));
    }
    let sig = f.signature();
    let n = sig.dim();
    let mut out = Multivector::zero(sig);
    for (tf, cf) in f.terms() {
        let conj = tf.blade.involution_sign(Involution::Conjugation);
        for (tg, cg) in g.terms() {
            let m = monomial_pairing(&tf.mono, &tg.mono, n);
            if m.is_zero() {
                continue;
            }
            let (s, b) = tf.blade.product(tg.blade, &sig);
            let c = cf * cg * m * int((s * conj) as i64);
            out = out.add(&Multivector::blade(sig, b, c))?;
        }
    }
    Ok(out)
}

/// Fischer pairing ∫ f(x)†g(x) e^{−|x|²}dx / π^{n/2} of two polynomials.
pub fn fischer_inner(f: &Polynomial<Rational>, g: &Polynomial<Rational>) -> Result<Multivector<Rational>> {
    pair_terms(f, g)
}

/// L₂ pairing of weighted functions; the envelopes must combine to e^{−|x|²}.
pub fn l2_inner(f: &WeightedFunction<Rational>, g: &WeightedFunction<Rational>) -> Result<Multivector<Rational>> {
    let total = &f.envelope + &g.envelope;
    if total != int(-1) {
        return Err(Error::EnvelopeMismatch(format_rational(&total)));
    }
    pair_terms(&f.poly, &g.poly)
}

/// Scalar part of ⟨f, f⟩.
pub fn norm_sq(f: &WeightedFunction<Rational>) -> Result<Rational> {
    Ok(l2_inner(f, f)?.scalar_part())
}

fn dirac() -> Expr {
    Expr::Atom(Atom::D)
}

pub fn is_monogenic(p: &Polynomial<Rational>) -> Result<bool> {
    Ok(dirac().apply(p)?.is_zero())
}

fn check_seed(seed: &Polynomial<Rational>) -> Result<usize> {
    if !seed.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if !is_monogenic(seed)? {
        return Err(Error::NotMonogenic);
    }
    Ok(seed.degree().unwrap_or(0))
}

/// (L⁺)^k applied to e^{−|x|²/2}·seed, stored unnormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteState {
    pub k: usize,
    pub raw: WeightedFunction<Rational>,
    pub norm_sq: Rational,
}

impl HermiteState {
    /// Polynomial part ψ_k (envelope stripped).
    pub fn polynomial(&self) -> &Polynomial<Rational> {
        &self.raw.poly
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "envelope": format_rational(&self.raw.envelope),
            "norm_sq": format_rational(&self.norm_sq),
            "raw": self.raw.poly.to_json(),
        })
    }
}

pub fn hermite_polynomial(state: &HermiteState) -> Polynomial<Rational> {
    state.raw.poly.clone()
}

/// States 0..=k_max; the seed must be homogeneous and monogenic.
pub fn hermite_sequence(seed: &Polynomial<Rational>, k_max: usize) -> Result<Vec<HermiteState>> {
    check_seed(seed)?;
    let raise = ladder_pair().raise;
    let mut raw = WeightedFunction::gaussian(seed.clone());
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            raw = raise.apply_weighted(&raw)?;
        }
        out.push(HermiteState { k, norm_sq: norm_sq(&raw)?, raw: raw.clone() });
    }
    Ok(out)
}

/// norm_sq(k)/norm_sq(k−1).
pub fn norm_ratio(states: &[HermiteState], k: usize) -> Option<Rational> {
    if k == 0 || k >= states.len() {
        return None;
    }
    Some(&states[k].norm_sq / &states[k - 1].norm_sq)
}

/// The predicted ratio 2(k + (n−1)/2) = 2k + n − 1.
pub fn predicted_ratio(k: usize, n: usize) -> Rational {
    int(2 * k as i64 + n as i64 - 1)
}

/// The scalar c with L⁻ raw_k = c·raw_{k−1}, if one exists.
pub fn lowering_factor(states: &[HermiteState], k: usize) -> Result<Option<Rational>> {
    if k == 0 || k >= states.len() {
        return Ok(None);
    }
    let low = ladder_pair().lower.apply_weighted(&states[k].raw)?;
    Ok(proportional(&low.poly, &states[k - 1].raw.poly))
}

/// c with a = c·b, if any.
pub fn proportional(a: &Polynomial<Rational>, b: &Polynomial<Rational>) -> Option<Rational> {
    let (t, cb) = b.terms().next()?;
    let c = a.coeff(t) / cb;
    (b.scale(&c) == *a).then_some(c)
}

/// Three readings of the normalization constant c_k.
#[derive(Debug, Clone, PartialEq)]
pub struct CkComparison {
    pub k: usize,
    /// ∏_{j=1}^k (j + (n−1)/2).
    pub product_form: Rational,
    /// The product with an extra trailing factor (n−1)/2.
    pub printed_form: Rational,
    /// norm_sq(k) / (2^k norm_sq(0)), i.e. the squared norm of (D⁺)^k Ψ.
    pub observed: Rational,
}

pub fn ck_comparison(states: &[HermiteState], n: usize) -> Vec<CkComparison> {
    let half = Rational::new(BigInt::from(n as i64 - 1), BigInt::from(2));
    let mut product = Rational::one();
    states
        .iter()
        .map(|s| {
            if s.k > 0 {
                product *= int(s.k as i64) + &half;
            }
            let two_k = Rational::from_integer(BigInt::from(2).pow(s.k as u32));
            CkComparison {
                k: s.k,
                product_form: product.clone(),
                printed_form: &product * &half,
                observed: &s.norm_sq / (two_k * &states[0].norm_sq),
            }
        })
        .collect()
}

/// Checks L⁻(e^{−|x|²/2}P) = e^{−|x|²/2}·sign·DP and returns the sign that holds.
pub fn rodrigues_sign(p: &Polynomial<Rational>) -> Result<Option<i8>> {
    let low = ladder_pair().lower.apply_weighted(&WeightedFunction::gaussian(p.clone()))?;
    let dp = dirac().apply(p)?;
    Ok(if low.poly == dp {
        Some(1)
    } else if low.poly == dp.neg() {
        Some(-1)
    } else {
        None
    })
}

/// Scalar Hermite function ∏_j (X_j − ∂_j)^{α_j} e^{−|x|²/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylState {
    pub alpha: Vec<u32>,
    pub raw: WeightedFunction<Rational>,
    pub norm_sq: Rational,
}

pub fn weyl_state(sig: Signature, alpha: &[u32]) -> Result<WeylState> {
    if alpha.len() != sig.dim() {
        return Err(Error::DimensionMismatch(alpha.len(), sig.dim()));
    }
    let mut raw = WeightedFunction::gaussian(Polynomial::one(sig));
    for (i, &a) in alpha.iter().enumerate() {
        let op = weyl_heisenberg_ladder(i + 1, LadderSign::Raise);
        for _ in 0..a {
            raw = op.apply_weighted(&raw)?;
        }
    }
    Ok(WeylState { alpha: alpha.to_vec(), norm_sq: norm_sq(&raw)?, raw })
}

/// All φ_α with |α| ≤ alpha_max, graded order.
pub fn weyl_states(sig: Signature, alpha_max: usize) -> Result<Vec<WeylState>> {
    MultiIndex::up_to_degree(sig.dim(), alpha_max)
        .par_iter()
        .map(|m| weyl_state(sig, &m.exponents(sig.dim())))
        .collect()
}

/// 2^{|α|} α!.
pub fn weyl_norm_sq(alpha: &[u32]) -> Rational {
    let total: u32 = alpha.iter().sum();
    let prod = alpha.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a));
    Rational::from_integer(BigInt::from(2).pow(total) * prod)
}

/// Which Fischer-tower algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FischerRoute {
    /// Recursion on Dp using D(x^s M) = c_s x^{s−1} M.
    Dirac,
    /// Almansi harmonic parts split by I + XD/(2j+n−2).
    Projection,
    /// Almansi harmonic parts split by I + ½X I_{n/2} D.
    IntegralOperator,
}

/// p = Σ_s X^s M_{k−s} with every M monogenic; `parts[s]` is M_{k−s}.
#[derive(Debug, Clone, PartialEq)]
pub struct FischerTower {
    pub k: usize,
    pub parts: Vec<Polynomial<Rational>>,
}

impl FischerTower {
    pub fn reconstruct(&self) -> Result<Polynomial<Rational>> {
        let x = Polynomial::vector_variable(self.parts[0].signature());
        let mut acc = Polynomial::zero(self.parts[0].signature());
        let mut xs = Polynomial::one(self.parts[0].signature());
        for m in &self.parts {
            acc = acc.add(&xs.mul(m)?)?;
            xs = x.mul(&xs)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "parts": self.parts.iter().enumerate().map(|(s, m)| json!({
                "power": s,
                "degree": self.k - s,
                "monogenic": m.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn x_times(p: &Polynomial<Rational>) -> Result<Polynomial<Rational>> {
    Expr::Atom(Atom::X).apply(p)
}

fn x_power_times(s: usize, p: &Polynomial<Rational>) -> Result<Polynomial<Rational>> {
    (0..s).try_fold(p.clone(), |acc, _| x_times(&acc))
}

fn homogeneous_degree(p: &Polynomial<Rational>) -> Result<usize> {
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(p.degree().unwrap_or(0))
}

/// Harmonic split p = M_k + x·M_{k−1} for p ∈ ker Δ homogeneous.
pub fn fischer_split(p: &Polynomial<Rational>) -> Result<(Polynomial<Rational>, Polynomial<Rational>)> {
    let k = homogeneous_degree(p)?;
    if !Expr::Atom(Atom::Delta).apply(p)?.is_zero() {
        return Err(Error::NotHarmonic);
    }
    harmonic_split(p, k, FischerRoute::Projection)
}

fn harmonic_split(
    h: &Polynomial<Rational>,
    k: usize,
    route: FischerRoute,
) -> Result<(Polynomial<Rational>, Polynomial<Rational>)> {
    let n = h.n();
    let denom = 2 * k as i64 + n as i64 - 2;
    if denom == 0 || h.is_zero() {
        // only k = 0, n = 2: constants are monogenic
        return Ok((h.clone(), Polynomial::zero(h.signature())));
    }
    let dh = dirac().apply(h)?;
    let xdh = match route {
        FischerRoute::IntegralOperator => {
            let is = Expr::Atom(Atom::Is(Rational::new(BigInt::from(n), BigInt::from(2))));
            x_times(&is.apply(&dh)?)?.scale_rational(&Rational::new(1.into(), 2.into()))
        }
        _ => x_times(&dh)?.scale_rational(&Rational::new(1.into(), denom.into())),
    };
    let lower = dh.scale_rational(&Rational::new((-1).into(), denom.into()));
    Ok((h.add(&xdh)?, lower))
}

/// Almansi decomposition p = Σ_t |x|^{2t} H_{k−2t}; entry t is H_{k−2t}.
pub fn almansi(p: &Polynomial<Rational>) -> Result<Vec<Polynomial<Rational>>> {
    let k = homogeneous_degree(p)?;
    almansi_rec(p, k)
}

fn almansi_rec(p: &Polynomial<Rational>, k: usize) -> Result<Vec<Polynomial<Rational>>> {
    let sig = p.signature();
    let n = sig.dim() as i64;
    if k < 2 || p.is_zero() {
        let mut v = vec![p.clone()];
        v.resize(k / 2 + 1, Polynomial::zero(sig));
        return Ok(v);
    }
    // Δ(|x|^{2t}H_j) = 2t(2j + n + 2t − 2)|x|^{2t−2}H_j
    let lap = Expr::Atom(Atom::Delta).apply(p)?;
    let g = almansi_rec(&lap, k - 2)?;
    let r2 = Expr::Atom(Atom::X).pow(2).neg();
    let mut parts = vec![Polynomial::zero(sig)];
    let mut rest = p.clone();
    for (i, gi) in g.iter().enumerate() {
        let t = i as i64 + 1;
        let j = k as i64 - 2 * t;
        let c = 2 * t * (2 * j + n + 2 * t - 2);
        let h = gi.scale_rational(&Rational::new(1.into(), c.into()));
        let mut lifted = h.clone();
        for _ in 0..t {
            lifted = r2.apply(&lifted)?;
        }
        rest = rest.sub(&lifted)?;
        parts.push(h);
    }
    parts[0] = rest;
    Ok(parts)
}

/// Full Fischer tower of a homogeneous polynomial.
pub fn fischer_tower(p: &Polynomial<Rational>, route: FischerRoute) -> Result<FischerTower> {
    let k = homogeneous_degree(p)?;
    let parts = match route {
        FischerRoute::Dirac => dirac_tower(p, k)?,
        _ => {
            let sig = p.signature();
            let mut parts = vec![Polynomial::zero(sig); k + 1];
            for (t, h) in almansi(p)?.iter().enumerate() {
                let j = k - 2 * t;
                let (m, m_low) = harmonic_split(h, j, route)?;
                // |x|^{2t} = (−1)^t X^{2t}
                let sign = if t % 2 == 0 { int(1) } else { int(-1) };
                parts[2 * t] = parts[2 * t].add(&m.scale_rational(&sign))?;
                if j > 0 {
                    parts[2 * t + 1] = parts[2 * t + 1].add(&m_low.scale_rational(&sign))?;
                }
            }
            parts
        }
    };
    Ok(FischerTower { k, parts })
}

fn dirac_tower(p: &Polynomial<Rational>, k: usize) -> Result<Vec<Polynomial<Rational>>> {
    let sig = p.signature();
    if k == 0 || p.is_zero() {
        let mut v = vec![p.clone()];
        v.resize(k + 1, Polynomial::zero(sig));
        return Ok(v);
    }
    let n = sig.dim() as i64;
    let sub = dirac_tower(&dirac().apply(p)?, k - 1)?;
    let mut parts = vec![Polynomial::zero(sig)];
    let mut rest = p.clone();
    for (i, ni) in sub.iter().enumerate() {
        let s = i as i64 + 1;
        let j = k as i64 - s;
        let c = if s % 2 == 0 { -s } else { -(2 * j + n + s - 1) };
        let m = ni.scale_rational(&Rational::new(1.into(), c.into()));
        rest = rest.sub(&x_power_times(s as usize, &m)?)?;
        parts.push(m);
    }
    parts[0] = rest;
    Ok(parts)
}

/// Monogenic component of a homogeneous polynomial of top degree.
pub fn monogenic_part(p: &Polynomial<Rational>) -> Result<Polynomial<Rational>> {
    Ok(fischer_tower(p, FischerRoute::Dirac)?.parts.swap_remove(0))
}

/// Cauchy-Kowalevskaya extension Σ x_{n+1}^k/k!·(e_{n+1}D)^k f into one more
/// variable whose generator squares to −1.
pub fn ck_extension(f: &Polynomial<Rational>) -> Result<Polynomial<Rational>> {
    let sig = f.signature();
    let big = Signature::new(sig.p(), sig.q() + 1)?;
    let m = big.dim();
    let mut g = f.embed(big)?;
    let mut acc = Polynomial::zero(big);
    let mut k = 0u32;
    while !g.is_zero() {
        let mut term = g.clone();
        for _ in 0..k {
            term = term.mul_var(m)?;
        }
        acc = acc.add(&term.scale_rational(&Rational::new(1.into(), factorial(k))))?;
        g = dirac_n(&g, m - 1)?.mul_generator(m)?;
        k += 1;
    }
    Ok(acc)
}

/// Σ_{j≤n} e_j ∂_j.
pub fn dirac_n(p: &Polynomial<Rational>, n: usize) -> Result<Polynomial<Rational>> {
    (1..=n).try_fold(Polynomial::zero(p.signature()), |acc, j| acc.add(&p.partial(j)?.mul_generator(j)?))
}

/// (∂_{n+1} + ē_{n+1}D_n)F; zero for a CK extension.
pub fn ck_residual(big: &Polynomial<Rational>) -> Result<Polynomial<Rational>> {
    let m = big.n();
    let d = dirac_n(big, m - 1)?.mul_generator(m)?;
    // ē_{n+1} = −e_{n+1}
    big.partial(m)?.sub(&d)
}

/// F restricted to x_{n+1} = 0.
pub fn ck_restrict(big: &Polynomial<Rational>, sig: Signature) -> Result<Polynomial<Rational>> {
    let m = big.n();
    let kept = Polynomial::from_terms(
        big.signature(),
        big.terms().filter(|(t, _)| t.mono.get(m) == 0).map(|(t, c)| (*t, c.clone())),
    );
    kept.restrict(sig)
}

/// Σ_{k≤k_max} λ^k/(n^k k!)·ψ_k over the Hermite sequence of `seed`.
pub fn generating_function(seed: &Polynomial<Rational>, k_max: usize) -> Result<Polynomial<Symbolic>> {
    let states = hermite_sequence(seed, k_max)?;
    let n = seed.n();
    let mut acc = Polynomial::zero(seed.signature());
    for s in &states {
        let c = generating_coefficient(n, s.k);
        let lam = Symbolic::lambda_pow(s.k as u16);
        acc = acc.add(&s.raw.poly.scale_rational(&c).to_symbolic().scale(&lam))?;
    }
    Ok(acc)
}

/// 1/(n^k k!).
pub fn generating_coefficient(n: usize, k: usize) -> Rational {
    Rational::new(1.into(), BigInt::from(n).pow(k as u32) * factorial(k as u32))
}

/// ψ + xDψ/(2k+n−2), the identity when the denominator vanishes.
pub fn monogenic_projection(psi: &Polynomial<Rational>, k: usize) -> Result<Polynomial<Rational>> {
    let denom = 2 * k as i64 + psi.n() as i64 - 2;
    if denom == 0 {
        return Ok(psi.clone());
    }
    let xd = x_times(&dirac().apply(psi)?)?;
    psi.add(&xd.scale_rational(&Rational::new(1.into(), denom.into())))
}

/// Σ λ^k/(n^k k!)·(ψ_k + xDψ_k/(2k+n−2)).
pub fn monogenic_generating_function(seed: &Polynomial<Rational>, k_max: usize) -> Result<Polynomial<Symbolic>> {
    let states = hermite_sequence(seed, k_max)?;
    let n = seed.n();
    let mut acc = Polynomial::zero(seed.signature());
    for s in &states {
        let proj = monogenic_projection(&s.raw.poly, s.k)?;
        let lam = Symbolic::lambda_pow(s.k as u16);
        acc = acc.add(&proj.scale_rational(&generating_coefficient(n, s.k)).to_symbolic().scale(&lam))?;
    }
    Ok(acc)
}

/// H₀ raw_k − (k + n/2) raw_k.
pub fn h0_residual(state: &HermiteState) -> Result<Polynomial<Rational>> {
    let n = state.raw.n();
    let img = hamiltonian(Hamiltonian::H0).apply_weighted(&state.raw)?;
    let ev = Rational::new((2 * state.k as i64 + n as i64).into(), 2.into());
    img.poly.sub(&state.raw.poly.scale_rational(&ev))
}

/// J₀ψ_k − (k + n/2)ψ_k.
pub fn j0_residual(state: &HermiteState) -> Result<Polynomial<Rational>> {
    let n = state.raw.n();
    let img = hamiltonian(Hamiltonian::J0).apply(&state.raw.poly)?;
    let ev = Rational::new((2 * state.k as i64 + n as i64).into(), 2.into());
    img.sub(&state.raw.poly.scale_rational(&ev))
}

/// Scalar monogenic seeds x^α-derived: monogenic parts of every degree-s
/// monomial, deduplicated, zero parts dropped.
pub fn monogenic_seeds(sig: Signature, s: usize) -> Result<Vec<Polynomial<Rational>>> {
    let mut out: Vec<Polynomial<Rational>> = Vec::new();
    for m in MultiIndex::of_degree(sig.dim(), s) {
        let p = Polynomial::monomial(sig, m, Blade::SCALAR, int(1));
        let mk = monogenic_part(&p)?;
        if !mk.is_zero() && !out.contains(&mk) {
            out.push(mk);
        }
    }
    Ok(out)
}
