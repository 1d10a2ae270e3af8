//! Clifford-valued polynomials in n real variables and Gaussian-weighted
//! functions e^{g|x|²}·P.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::clifford::{fmt_signed_terms, Blade, Multivector, MultivectorJson, Signature, MAX_DIM};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, parse_rational, rat, Coefficient, HyperComponent, Rational, Symbolic};

/// Exponent vector of a monomial x^α. Entries beyond the ambient n are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex {
    deg: u16,
    e: [u8; MAX_DIM],
}

impl MultiIndex {
    pub const ONE: MultiIndex = MultiIndex { deg: 0, e: [0; MAX_DIM] };

    pub fn new(exponents: &[u32]) -> Result<Self> {
        if exponents.len() > MAX_DIM {
            return Err(Error::Malformed(format!("{} exponents exceed {MAX_DIM}", exponents.len())));
        }
        let mut m = MultiIndex::ONE;
        for (j, &a) in exponents.iter().enumerate() {
            if a > u8::MAX as u32 {
                return Err(Error::Malformed(format!("exponent {a} too large")));
            }
            m.e[j] = a as u8;
            m.deg += a as u16;
        }
        Ok(m)
    }

    /// x_j for the 1-based axis j.
    pub fn unit(j: usize) -> Self {
        let mut m = MultiIndex::ONE;
        m.e[j - 1] = 1;
        m.deg = 1;
        m
    }

    pub fn degree(&self) -> usize {
        self.deg as usize
    }

    /// Exponent of x_j (1-based).
    pub fn get(&self, j: usize) -> u32 {
        self.e[j - 1] as u32
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        self.e[..n].iter().map(|&a| a as u32).collect()
    }

    pub fn mul(&self, o: &MultiIndex) -> MultiIndex {
        let mut m = *self;
        for (a, b) in m.e.iter_mut().zip(o.e.iter()) {
            *a += b;
        }
        m.deg += o.deg;
        m
    }

    pub(crate) fn raised(&self, j: usize) -> MultiIndex {
        let mut m = *self;
        m.e[j - 1] += 1;
        m.deg += 1;
        m
    }

    pub(crate) fn lowered(&self, j: usize) -> Option<MultiIndex> {
        if self.e[j - 1] == 0 {
            return None;
        }
        let mut m = *self;
        m.e[j - 1] -= 1;
        m.deg -= 1;
        Some(m)
    }

    /// All multi-indices in n variables of total degree exactly d, in canonical order.
    pub fn of_degree(n: usize, d: usize) -> Vec<MultiIndex> {
        fn rec(n: usize, j: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if j + 1 == n {
                cur.push(left as u32);
                out.push(MultiIndex::new(cur).expect("bounded"));
                cur.pop();
                return;
            }
            for a in (0..=left).rev() {
                cur.push(a as u32);
                rec(n, j + 1, left - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, 0, d, &mut Vec::new(), &mut out);
        out
    }

    /// All multi-indices of degree ≤ d, graded lexicographic.
    pub fn up_to_degree(n: usize, d: usize) -> Vec<MultiIndex> {
        (0..=d).flat_map(|k| MultiIndex::of_degree(n, k)).collect()
    }

    fn fmt_vars(&self) -> String {
        let mut parts = Vec::new();
        for (j, &a) in self.e.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("x{}", j + 1)),
                _ => parts.push(format!("x{}^{}", j + 1, a)),
            }
        }
        parts.join("*")
    }
}

// Graded lexicographic: lower degree first, then x1 before x2 before …
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| other.e.cmp(&self.e))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Basis function x^α ē^β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub mono: MultiIndex,
    pub blade: Blade,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.mono.fmt_vars();
        match (vars.is_empty(), self.blade == Blade::SCALAR) {
            (true, _) => write!(f, "{}", self.blade),
            (false, true) => write!(f, "{vars}"),
            (false, false) => write!(f, "{vars}*{}", self.blade),
        }
    }
}

/// Σ c_{α,β} x^α ē^β with coefficients in `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<R: Coefficient> {
    sig: Signature,
    terms: BTreeMap<Term, R>,
}

pub(crate) fn add_into<R: Coefficient>(map: &mut BTreeMap<Term, R>, t: Term, c: R) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(t) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            o.get_mut().add_assign_ref(&c);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl<R: Coefficient> Polynomial<R> {
    pub fn zero(sig: Signature) -> Self {
        Polynomial { sig, terms: BTreeMap::new() }
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Term, R)>) -> Self {
        let mut map = BTreeMap::new();
        for (t, c) in terms {
            add_into(&mut map, t, c);
        }
        Polynomial { sig, terms: map }
    }

    pub(crate) fn from_map(sig: Signature, terms: BTreeMap<Term, R>) -> Self {
        Polynomial { sig, terms }
    }

    pub fn monomial(sig: Signature, mono: MultiIndex, blade: Blade, c: R) -> Self {
        Self::from_terms(sig, [(Term { mono, blade }, c)])
    }

    pub fn constant(m: &Multivector<R>) -> Self {
        Self::from_terms(m.signature(), m.terms().map(|(b, c)| (Term { mono: MultiIndex::ONE, blade: *b }, c.clone())))
    }

    pub fn one(sig: Signature) -> Self {
        Self::monomial(sig, MultiIndex::ONE, Blade::SCALAR, R::one())
    }

    /// The coordinate x_j (1-based).
    pub fn var(sig: Signature, j: usize) -> Result<Self> {
        check_axis(j, sig.dim())?;
        Ok(Self::monomial(sig, MultiIndex::unit(j), Blade::SCALAR, R::one()))
    }

    /// The vector variable x = Σ x_j e_j.
    pub fn vector_variable(sig: Signature) -> Self {
        Self::from_terms(
            sig,
            (1..=sig.dim()).map(|j| (Term { mono: MultiIndex::unit(j), blade: Blade::generator(j) }, R::one())),
        )
    }

    pub fn n(&self) -> usize {
        self.sig.dim()
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Term) -> R {
        self.terms.get(t).cloned().unwrap_or_else(R::zero)
    }

    /// Multivector coefficient of x^α.
    pub fn coefficient(&self, mono: &MultiIndex) -> Multivector<R> {
        Multivector::from_terms(
            self.sig,
            self.terms.iter().filter(|(t, _)| t.mono == *mono).map(|(t, c)| (t.blade, c.clone())),
        )
    }

    /// Distinct monomials in canonical order with their multivector coefficients.
    pub fn grouped(&self) -> Vec<(MultiIndex, Multivector<R>)> {
        let mut out: Vec<(MultiIndex, Multivector<R>)> = Vec::new();
        for (t, c) in &self.terms {
            match out.last_mut() {
                Some((m, mv)) if *m == t.mono => mv.add_term(t.blade, c.clone()),
                _ => out.push((t.mono, Multivector::blade(self.sig, t.blade, c.clone()))),
            }
        }
        out
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.sig != o.sig {
            return Err(Error::SignatureMismatch(self.sig, o.sig));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut map = self.terms.clone();
        for (t, c) in &o.terms {
            add_into(&mut map, *t, c.clone());
        }
        Ok(Polynomial { sig: self.sig, terms: map })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut map = self.terms.clone();
        for (t, c) in &o.terms {
            add_into(&mut map, *t, c.neg_ref());
        }
        Ok(Polynomial { sig: self.sig, terms: map })
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, k: &R) -> Self {
        if k.is_zero() {
            return Self::zero(self.sig);
        }
        self.map(|c| c.mul_ref(k))
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        if Zero::is_zero(q) {
            return Self::zero(self.sig);
        }
        self.map(|c| c.scale_rational(q))
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial::from_terms(self.sig, self.terms.iter().map(|(t, c)| (*t, f(c))))
    }

    /// Pointwise (Clifford) product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut map = BTreeMap::new();
        for (ta, ca) in &self.terms {
            for (tb, cb) in &o.terms {
                let (s, b) = ta.blade.product(tb.blade, &self.sig);
                let c = ca.mul_ref(cb);
                add_into(&mut map, Term { mono: ta.mono.mul(&tb.mono), blade: b }, if s < 0 { c.neg_ref() } else { c });
            }
        }
        Ok(Polynomial { sig: self.sig, terms: map })
    }

    /// Coefficient-wise multivector multiplication on the given side.
    pub fn mul_multivector(&self, m: &Multivector<R>, side: Side) -> Result<Self> {
        if m.signature() != self.sig {
            return Err(Error::SignatureMismatch(self.sig, m.signature()));
        }
        let mut map = BTreeMap::new();
        for (t, c) in &self.terms {
            for (b, k) in m.terms() {
                let (s, blade, coeff) = match side {
                    Side::Left => {
                        let (s, bl) = b.product(t.blade, &self.sig);
                        (s, bl, k.mul_ref(c))
                    }
                    Side::Right => {
                        let (s, bl) = t.blade.product(*b, &self.sig);
                        (s, bl, c.mul_ref(k))
                    }
                };
                add_into(&mut map, Term { mono: t.mono, blade }, if s < 0 { coeff.neg_ref() } else { coeff });
            }
        }
        Ok(Polynomial { sig: self.sig, terms: map })
    }

    /// ∂/∂x_j.
    pub fn partial(&self, j: usize) -> Result<Self> {
        check_axis(j, self.n())?;
        let mut map = BTreeMap::new();
        for (t, c) in &self.terms {
            if let Some(m) = t.mono.lowered(j) {
                let k = Rational::from_integer(t.mono.get(j).into());
                add_into(&mut map, Term { mono: m, blade: t.blade }, c.scale_rational(&k));
            }
        }
        Ok(Polynomial { sig: self.sig, terms: map })
    }

    /// Multiplication by x_j.
    pub fn mul_var(&self, j: usize) -> Result<Self> {
        check_axis(j, self.n())?;
        Ok(Polynomial {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (Term { mono: t.mono.raised(j), blade: t.blade }, c.clone()))
                .collect(),
        })
    }

    /// Left multiplication by e_j.
    pub fn mul_generator(&self, j: usize) -> Result<Self> {
        check_axis(j, self.n())?;
        let g = Blade::generator(j);
        Ok(Polynomial {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| {
                    let (s, b) = g.product(t.blade, &self.sig);
                    (Term { mono: t.mono, blade: b }, if s < 0 { c.neg_ref() } else { c.clone() })
                })
                .collect(),
        })
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|t| t.mono.degree()).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|t| t.mono.degree()).min()
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn homogeneous_part(&self, k: usize) -> Self {
        Polynomial {
            sig: self.sig,
            terms: self.terms.iter().filter(|(t, _)| t.mono.degree() == k).map(|(t, c)| (*t, c.clone())).collect(),
        }
    }

    /// Nonzero homogeneous parts in increasing degree.
    pub fn homogeneous_decompose(&self) -> Vec<(usize, Self)> {
        let mut out: Vec<(usize, Self)> = Vec::new();
        for (t, c) in &self.terms {
            let d = t.mono.degree();
            match out.last_mut() {
                Some((k, p)) if *k == d => {
                    p.terms.insert(*t, c.clone());
                }
                _ => {
                    let mut p = Self::zero(self.sig);
                    p.terms.insert(*t, c.clone());
                    out.push((d, p));
                }
            }
        }
        out
    }

    /// Multiply the degree-k part by `f(k)`.
    pub fn scale_by_degree(&self, f: impl Fn(usize) -> Rational) -> Self {
        Self::from_terms(self.sig, self.terms.iter().map(|(t, c)| (*t, c.scale_rational(&f(t.mono.degree())))))
    }

    /// Re-embed into another signature with at least as many generators
    /// (new variables absent). Blades keep their indices.
    pub fn embed(&self, sig: Signature) -> Result<Self> {
        if sig.dim() < self.n() {
            return Err(Error::DimensionMismatch(self.n(), sig.dim()));
        }
        Ok(Polynomial { sig, terms: self.terms.clone() })
    }

    /// Restrict to the first `sig.dim()` variables by setting the others to zero.
    pub fn restrict(&self, sig: Signature) -> Result<Self> {
        let m = sig.dim();
        if m > self.n() {
            return Err(Error::DimensionMismatch(self.n(), m));
        }
        let keep = |t: &Term| (m + 1..=self.n()).all(|j| t.mono.get(j) == 0 && !t.blade.contains(j));
        let lost_blades = self.terms.keys().any(|t| (m + 1..=self.n()).all(|j| t.mono.get(j) == 0) && !keep(t));
        if lost_blades {
            return Err(Error::Malformed("restriction leaves blades outside the target signature".into()));
        }
        Ok(Polynomial {
            sig,
            terms: self.terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (*t, c.clone())).collect(),
        })
    }

    /// Numeric value at `point` with coefficients mapped through `num`.
    pub fn evaluate_with(&self, point: &[f64], num: impl Fn(&R) -> f64) -> Result<Multivector<f64>> {
        if point.len() != self.n() {
            return Err(Error::DimensionMismatch(self.n(), point.len()));
        }
        let mut out = Multivector::zero(self.sig);
        for (t, c) in &self.terms {
            let mut v = num(c);
            for (j, x) in point.iter().enumerate() {
                v *= x.powi(t.mono.get(j + 1) as i32);
            }
            out.add_term(t.blade, v);
        }
        Ok(out)
    }
}

fn check_axis(j: usize, n: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::AxisOutOfRange { axis: j, n });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl<R: Coefficient> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_signed_terms(f, self.terms.iter().map(|(t, c)| (t.to_string(), c)))
    }
}

impl Polynomial<Rational> {
    pub fn to_symbolic(&self) -> Polynomial<Symbolic> {
        self.map(|c| Symbolic::constant(c.clone()))
    }

    pub fn evaluate(&self, point: &[f64]) -> Result<Multivector<f64>> {
        self.evaluate_with(point, crate::scalar::rational_to_f64)
    }

    pub fn to_json(&self) -> PolynomialJson {
        weighted_json(self, &<Rational as Zero>::zero())
    }

    pub fn from_json(j: &PolynomialJson) -> Result<Self> {
        let w = WeightedFunction::from_json(j)?;
        if !Zero::is_zero(&w.envelope) {
            return Err(Error::Malformed(format!("expected envelope 0, got {}", j.envelope)));
        }
        Ok(w.poly)
    }
}

impl Polynomial<Symbolic> {
    /// Apply `f` to every coefficient (zeros pruned).
    pub fn map_symbolic(&self, f: impl Fn(&Symbolic) -> Symbolic) -> Self {
        self.map(f)
    }

    pub fn lambda_coeff(&self, k: u16) -> Self {
        self.map(|c| c.lambda_coeff(k))
    }

    pub fn truncate_lambda(&self, order: u16) -> Self {
        self.map(|c| c.truncate_lambda(order))
    }

    pub fn reduce_rho(&self, rho_sq: &Rational) -> Self {
        self.map(|c| c.reduce_rho(rho_sq))
    }

    pub fn component(&self, which: HyperComponent) -> Self {
        self.map(|c| c.component(which))
    }

    /// Smallest λ-power carrying a nonzero coefficient.
    pub fn lambda_valuation(&self) -> Option<u16> {
        self.terms.values().filter_map(|c| c.lambda_valuation()).min()
    }

    pub fn lambda_degree(&self) -> Option<u16> {
        self.terms.values().filter_map(|c| c.lambda_degree()).max()
    }

    /// Exact conversion when every coefficient is a plain rational.
    pub fn to_rational(&self) -> Option<Polynomial<Rational>> {
        let mut map = BTreeMap::new();
        for (t, c) in &self.terms {
            map.insert(*t, c.as_rational()?);
        }
        Some(Polynomial { sig: self.sig, terms: map })
    }
}

/// e^{g|x|²}·P.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedFunction<R: Coefficient> {
    pub envelope: Rational,
    pub poly: Polynomial<R>,
}

impl<R: Coefficient> WeightedFunction<R> {
    pub fn new(envelope: Rational, poly: Polynomial<R>) -> Self {
        WeightedFunction { envelope, poly }
    }

    /// e^{−|x|²/2}·P.
    pub fn gaussian(poly: Polynomial<R>) -> Self {
        WeightedFunction { envelope: rat(-1, 2), poly }
    }

    pub fn polynomial(poly: Polynomial<R>) -> Self {
        WeightedFunction { envelope: int(0), poly }
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Ok(WeightedFunction { envelope: &self.envelope + &o.envelope, poly: self.poly.mul(&o.poly)? })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.envelope != o.envelope {
            return Err(Error::EnvelopeMismatch(format!("{} vs {}", self.envelope, o.envelope)));
        }
        Ok(WeightedFunction { envelope: self.envelope.clone(), poly: self.poly.add(&o.poly)? })
    }

    pub fn evaluate_with(&self, point: &[f64], num: impl Fn(&R) -> f64) -> Result<Multivector<f64>> {
        let r2: f64 = point.iter().map(|x| x * x).sum();
        let w = (crate::scalar::rational_to_f64(&self.envelope) * r2).exp();
        Ok(self.poly.evaluate_with(point, num)?.scale(&w))
    }
}

impl WeightedFunction<Rational> {
    pub fn evaluate(&self, point: &[f64]) -> Result<Multivector<f64>> {
        self.evaluate_with(point, crate::scalar::rational_to_f64)
    }

    pub fn to_json(&self) -> PolynomialJson {
        weighted_json(&self.poly, &self.envelope)
    }

    pub fn from_json(j: &PolynomialJson) -> Result<Self> {
        let sig = Signature::new(j.signature[0], j.signature[1])?;
        if j.n != sig.dim() {
            return Err(Error::DimensionMismatch(j.n, sig.dim()));
        }
        let envelope = parse_rational(&j.envelope)?;
        let mut map = BTreeMap::new();
        for t in &j.terms {
            if t.exponents.len() != j.n {
                return Err(Error::Malformed(format!("exponent vector {:?} has wrong length", t.exponents)));
            }
            let mono = MultiIndex::new(&t.exponents)?;
            let mv = Multivector::from_json(&t.multivector)?;
            if mv.signature() != sig {
                return Err(Error::SignatureMismatch(sig, mv.signature()));
            }
            for (b, c) in mv.terms() {
                add_into(&mut map, Term { mono, blade: *b }, c.clone());
            }
        }
        Ok(WeightedFunction { envelope, poly: Polynomial { sig, terms: map } })
    }
}

fn weighted_json(p: &Polynomial<Rational>, envelope: &Rational) -> PolynomialJson {
    PolynomialJson {
        n: p.n(),
        signature: [p.sig.p(), p.sig.q()],
        envelope: format_rational(envelope),
        terms: p
            .grouped()
            .into_iter()
            .map(|(m, mv)| PolyTermJson { exponents: m.exponents(p.n()), multivector: mv.to_json() })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exponents: Vec<u32>,
    pub multivector: MultivectorJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub n: usize,
    pub signature: [usize; 2],
    pub envelope: String,
    pub terms: Vec<PolyTermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize) -> Signature {
        Signature::euclidean(n).unwrap()
    }

    fn x(n: usize, j: usize) -> Polynomial<Rational> {
        Polynomial::var(sig(n), j).unwrap()
    }

    fn e(n: usize, j: usize) -> Multivector<Rational> {
        Multivector::generator(sig(n), j).unwrap()
    }

    #[test]
    fn ring_plumbing_examples() {
        let s = x(2, 1).add(&x(2, 1)).unwrap();
        assert_eq!(s, x(2, 1).scale_rational(&int(2)));
        let x1e1 = x(2, 1).mul_multivector(&e(2, 1), Side::Left).unwrap();
        assert_eq!(x1e1.to_string(), "x1*e1");
        let x1e2 = x(2, 1).mul_multivector(&e(2, 2), Side::Left).unwrap();
        let l = x1e2.mul_multivector(&e(2, 2), Side::Left).unwrap();
        let r = x1e2.mul_multivector(&e(2, 2), Side::Right).unwrap();
        assert_eq!(l, x(2, 1).neg());
        assert_eq!(r, x(2, 1).neg());
    }

    #[test]
    fn partial_derivative_examples() {
        let x1 = x(2, 1);
        let p = x1.mul(&x1).unwrap().mul_multivector(&e(2, 1), Side::Left).unwrap();
        assert_eq!(p.partial(1).unwrap(), x1.mul_multivector(&e(2, 1), Side::Left).unwrap().scale_rational(&int(2)));
        assert!(x1.partial(2).unwrap().is_zero());
        assert!(x1.partial(3).is_err());
    }

    #[test]
    fn homogeneous_parts() {
        let s = sig(2);
        let p = Polynomial::one(s).add(&x(2, 1)).unwrap().add(&x(2, 1).mul(&x(2, 2)).unwrap()).unwrap();
        let parts = p.homogeneous_decompose();
        assert_eq!(parts.iter().map(|(k, _)| *k).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(parts[1].1, x(2, 1));
        assert!(Polynomial::<Rational>::zero(s).homogeneous_decompose().is_empty());
    }

    #[test]
    fn vector_variable_squares_to_minus_norm() {
        let s = sig(2);
        let xv = Polynomial::<Rational>::vector_variable(s);
        let sq = xv.mul(&xv).unwrap();
        let norm = x(2, 1).mul(&x(2, 1)).unwrap().add(&x(2, 2).mul(&x(2, 2)).unwrap()).unwrap();
        assert_eq!(sq, norm.neg());
    }

    #[test]
    fn evaluation_examples() {
        let s = sig(2);
        let g = WeightedFunction::gaussian(Polynomial::<Rational>::one(s));
        assert_eq!(g.evaluate(&[0.0, 0.0]).unwrap().scalar_part(), 1.0);
        assert_eq!(x(2, 1).evaluate(&[2.0, 0.0]).unwrap().scalar_part(), 2.0);
        let w = WeightedFunction::gaussian(x(2, 1));
        let v = w.evaluate(&[1.0, 0.0]).unwrap().scalar_part();
        assert!((v - (-0.5f64).exp()).abs() < 1e-15);
        assert!(x(2, 1).evaluate(&[1.0]).is_err());
    }

    #[test]
    fn canonical_monomial_order() {
        let order: Vec<String> =
            MultiIndex::up_to_degree(2, 2).iter().map(|m| format!("{:?}", m.exponents(2))).collect();
        assert_eq!(order, ["[0, 0]", "[1, 0]", "[0, 1]", "[2, 0]", "[1, 1]", "[0, 2]"]);
    }

    #[test]
    fn json_round_trip() {
        let s = sig(3);
        let p = x(3, 1)
            .mul_multivector(&e(3, 2), Side::Left)
            .unwrap()
            .add(&Polynomial::one(s).scale_rational(&rat(-3, 4)))
            .unwrap();
        let w = WeightedFunction::gaussian(p);
        let j = w.to_json();
        assert_eq!(j.envelope, "-1/2");
        assert_eq!(j.terms[0].exponents, vec![0, 0, 0]);
        let text = serde_json::to_string(&j).unwrap();
        let back: PolynomialJson = serde_json::from_str(&text).unwrap();
        assert_eq!(WeightedFunction::from_json(&back).unwrap(), w);
    }

    #[test]
    fn restriction_drops_new_variable() {
        let s3 = sig(3);
        let s2 = sig(2);
        let p = x(3, 1).add(&x(3, 3)).unwrap();
        assert_eq!(p.restrict(s2).unwrap(), x(2, 1));
        let q = x(2, 1).embed(s3).unwrap();
        assert_eq!(q, x(3, 1));
    }
}
