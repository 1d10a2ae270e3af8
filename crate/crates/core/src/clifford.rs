//! Multivectors of the real Clifford algebra R_{p,q} on a bitmask blade basis.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, pretty_rational, Coefficient, Rational};

pub const MAX_DIM: usize = 16;

/// Diagonal signature: the first `p` generators square to +1, the remaining
/// `q` square to −1. R_{0,n} is the negative-definite algebra of the operator
/// calculus (e_j² = −1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidSignature { p, q, max: MAX_DIM });
        }
        Ok(Signature { p, q })
    }

    /// R_{0,n}.
    pub fn euclidean(n: usize) -> Result<Self> {
        Self::new(0, n)
    }

    pub fn p(&self) -> usize {
        self.p
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// e_j² for the 1-based generator index j.
    pub fn square(&self, j: usize) -> i8 {
        if j <= self.p {
            1
        } else {
            -1
        }
    }

    fn negative_mask(&self) -> u32 {
        let all = (1u32 << self.dim()) - 1;
        all & !((1u32 << self.p) - 1)
    }

    /// Full blade space size 2^n.
    pub fn blade_count(&self) -> usize {
        1 << self.dim()
    }

    pub fn blades(&self) -> impl Iterator<Item = Blade> {
        let mut all: Vec<Blade> = (0..self.blade_count() as u32).map(|m| Blade(m as u16)).collect();
        all.sort();
        all.into_iter()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Basis blade e_{j1}…e_{jr} with j1 < … < jr, bit j−1 set for e_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(pub u16);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn generator(j: usize) -> Blade {
        Blade(1 << (j - 1))
    }

    pub fn from_indices(idx: &[usize]) -> Blade {
        Blade(idx.iter().fold(0u16, |m, j| m | (1 << (j - 1))))
    }

    pub fn grade(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based generator indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..16).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0 & (1 << (j - 1)) != 0
    }

    /// Sign and blade of the product self·other in the given signature.
    pub fn product(self, other: Blade, sig: &Signature) -> (i8, Blade) {
        let a = self.0 as u32;
        let b = other.0 as u32;
        let mut swaps = 0u32;
        let mut s = a >> 1;
        while s != 0 {
            swaps += (s & b).count_ones();
            s >>= 1;
        }
        let negatives = (a & b & sig.negative_mask()).count_ones();
        let sign = if (swaps + negatives) % 2 == 0 { 1 } else { -1 };
        (sign, Blade((a ^ b) as u16))
    }

    pub fn involution_sign(&self, kind: Involution) -> i8 {
        let r = self.grade();
        let odd = match kind {
            Involution::Main => r % 2 == 1,
            Involution::Reversion => (r * r.saturating_sub(1) / 2) % 2 == 1,
            Involution::Conjugation => (r * (r + 1) / 2) % 2 == 1,
        };
        if odd {
            -1
        } else {
            1
        }
    }
}

// Grade ascending, then index lists lexicographically.
impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.grade().cmp(&other.grade()) {
            Ordering::Equal if self.0 != other.0 => {
                let d = self.0 ^ other.0;
                let low = d & d.wrapping_neg();
                if self.0 & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            o => o,
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for j in self.indices() {
            write!(f, "e{j}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    /// a ↦ a` : e_j ↦ −e_j, homomorphism.
    Main,
    /// a ↦ a* : reverses blade order, anti-homomorphism.
    Reversion,
    /// a ↦ a† = (a*)` , anti-homomorphism.
    Conjugation,
}

/// Element of R_{p,q}. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<R: Coefficient> {
    sig: Signature,
    terms: BTreeMap<Blade, R>,
}

impl<R: Coefficient> Multivector<R> {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, c: R) -> Self {
        Self::blade(sig, Blade::SCALAR, c)
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, R::one())
    }

    pub fn blade(sig: Signature, b: Blade, c: R) -> Self {
        let mut m = Self::zero(sig);
        m.add_term(b, c);
        m
    }

    /// The generator e_j (1-based).
    pub fn generator(sig: Signature, j: usize) -> Result<Self> {
        if j == 0 || j > sig.dim() {
            return Err(Error::AxisOutOfRange { axis: j, n: sig.dim() });
        }
        Ok(Self::blade(sig, Blade::generator(j), R::one()))
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, R)>) -> Self {
        let mut m = Self::zero(sig);
        for (b, c) in terms {
            m.add_term(b, c);
        }
        m
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: Blade) -> R {
        self.terms.get(&b).cloned().unwrap_or_else(R::zero)
    }

    pub fn scalar_part(&self) -> R {
        self.coeff(Blade::SCALAR)
    }

    pub(crate) fn add_term(&mut self, b: Blade, c: R) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
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

    fn check_sig(&self, o: &Self) -> Result<()> {
        if self.sig != o.sig {
            return Err(Error::SignatureMismatch(self.sig, o.sig));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_sig(o)?;
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, k: &R) -> Self {
        if k.is_zero() {
            return Self::zero(self.sig);
        }
        Self::from_terms(self.sig, self.terms.iter().map(|(b, c)| (*b, c.mul_ref(k))))
    }

    /// Apply `f` to every coefficient (zeros pruned).
    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> Multivector<S> {
        Multivector::from_terms(self.sig, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    /// Geometric product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_sig(o)?;
        let mut out = Self::zero(self.sig);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &o.terms {
                let (s, b) = ba.product(*bb, &self.sig);
                let c = ca.mul_ref(cb);
                out.add_term(b, if s < 0 { c.neg_ref() } else { c });
            }
        }
        Ok(out)
    }

    /// Left multiplication by a single blade.
    pub fn blade_mul_left(&self, b: Blade) -> Self {
        Self::from_terms(
            self.sig,
            self.terms.iter().map(|(bb, c)| {
                let (s, m) = b.product(*bb, &self.sig);
                (m, if s < 0 { c.neg_ref() } else { c.clone() })
            }),
        )
    }

    pub fn grade_project(&self, r: usize) -> Self {
        Self::from_terms(self.sig, self.terms.iter().filter(|(b, _)| b.grade() == r).map(|(b, c)| (*b, c.clone())))
    }

    /// Grades carrying a nonzero coefficient.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn is_pure_grade(&self, r: usize) -> bool {
        self.terms.keys().all(|b| b.grade() == r)
    }

    pub fn involution(&self, kind: Involution) -> Self {
        Self::from_terms(
            self.sig,
            self.terms.iter().map(|(b, c)| (*b, if b.involution_sign(kind) < 0 { c.neg_ref() } else { c.clone() })),
        )
    }

    /// (a, b) = [a†b]₀.
    pub fn clifford_inner(&self, o: &Self) -> Result<R> {
        self.check_sig(o)?;
        let mut acc = R::zero();
        for (ba, ca) in &self.terms {
            if let Some(cb) = o.terms.get(ba) {
                // a†b has a scalar part only from equal blades
                let (s, _) = ba.product(*ba, &self.sig);
                let sign = s * ba.involution_sign(Involution::Conjugation);
                let c = ca.mul_ref(cb);
                acc.add_assign_ref(&if sign < 0 { c.neg_ref() } else { c });
            }
        }
        Ok(acc)
    }

    /// (x•a, x∧a) for a grade-1 `x`.
    pub fn wedge_dot(x: &Self, a: &Self) -> Result<(Self, Self)> {
        if !x.is_pure_grade(1) {
            return Err(Error::NotVector);
        }
        x.check_sig(a)?;
        let half = R::from_rational(&crate::scalar::rat(1, 2));
        let mut dot = Self::zero(x.sig);
        let mut wedge = Self::zero(x.sig);
        for r in a.grades() {
            let ar = a.grade_project(r);
            let xa = x.mul(&ar)?;
            let ax = ar.mul(x)?;
            let ax_signed = if r % 2 == 0 { ax } else { ax.neg() };
            dot = dot.add(&xa.sub(&ax_signed)?.scale(&half))?;
            wedge = wedge.add(&xa.add(&ax_signed)?.scale(&half))?;
        }
        Ok((dot, wedge))
    }
}

impl Multivector<Rational> {
    /// x⁻¹ = x / x² for a grade-1 `x` with nonzero square.
    pub fn vector_inverse(&self) -> Result<Self> {
        if !self.is_pure_grade(1) || self.is_zero() {
            return Err(Error::NotVector);
        }
        let sq = self.mul(self)?;
        let s = sq.scalar_part();
        if num_traits::Zero::is_zero(&s) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&(<Rational as num_traits::One>::one() / s)))
    }

    pub fn to_json(&self) -> MultivectorJson {
        MultivectorJson {
            signature: [self.sig.p(), self.sig.q()],
            terms: self
                .terms
                .iter()
                .map(|(b, c)| BladeTermJson { blade: b.indices(), coeff: format_rational(c) })
                .collect(),
        }
    }

    pub fn from_json(j: &MultivectorJson) -> Result<Self> {
        let sig = Signature::new(j.signature[0], j.signature[1])?;
        let mut m = Self::zero(sig);
        for t in &j.terms {
            if t.blade.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Malformed(format!("blade {:?} not strictly increasing", t.blade)));
            }
            if t.blade.iter().any(|&j| j == 0 || j > sig.dim()) {
                return Err(Error::Malformed(format!("blade {:?} outside signature {sig}", t.blade)));
            }
            m.add_term(Blade::from_indices(&t.blade), parse_rational(&t.coeff)?);
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BladeTermJson {
    pub blade: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub signature: [usize; 2],
    pub terms: Vec<BladeTermJson>,
}

/// Writes `c*blade` terms joined by signs; used by polynomial display too.
pub(crate) fn fmt_signed_terms<'a, R: Coefficient>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a R)>,
) -> fmt::Result {
    let mut first = true;
    for (basis, c) in terms {
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => (true, rest.to_string()),
            _ => (false, text.clone()),
        };
        let compound = mag.contains(" + ") || mag.contains(" - ");
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let mag = if compound { format!("({mag})") } else { mag };
        match (basis.as_str(), mag.as_str()) {
            ("1", m) => write!(f, "{m}")?,
            (b, "1") => write!(f, "{b}")?,
            (b, m) => write!(f, "{m}*{b}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<R: Coefficient> fmt::Display for Multivector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_signed_terms(f, self.terms.iter().map(|(b, c)| (b.to_string(), c)))
    }
}

/// Printable form of a rational multivector coefficient list (tests, reports).
pub fn describe(m: &Multivector<Rational>) -> String {
    m.terms().map(|(b, c)| format!("{}:{}", b, pretty_rational(c))).collect::<Vec<_>>().join(", ")
}
