//! Scalar rings: exact rationals, the formal tower ℚ[λ, ρ] ⊕ C·ℚ[λ, ρ] ⊕ S·ℚ[λ, ρ],
//! and plain `f64` for numeric evaluation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serialize as `"a/b"`; the denominator is always written.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Short human form: integers without denominator.
pub fn pretty_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Coefficient ring used by multivectors and polynomials.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Embed a tower element; `None` if the ring cannot represent it.
    fn from_symbolic(s: &Symbolic) -> Option<Self>;

    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(q))
    }
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn from_symbolic(s: &Symbolic) -> Option<Self> {
        s.as_rational()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
}

impl Coefficient for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn from_symbolic(s: &Symbolic) -> Option<Self> {
        s.as_rational().map(|q| rational_to_f64(&q))
    }
}

/// Exponents of (λ, ρ, C, S) in a tower monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymMono(pub [u16; 4]);

impl SymMono {
    pub const ONE: SymMono = SymMono([0; 4]);
    pub fn lambda(&self) -> u16 {
        self.0[0]
    }
    fn mul(&self, o: &SymMono) -> SymMono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        SymMono(e)
    }
}

/// Which hyperbolic symbol a component carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum HyperComponent {
    One,
    Cosh,
    Sinh,
}

/// Numeric values substituted for the formal symbols.
#[derive(Debug, Clone, Copy)]
pub struct SymbolValues {
    pub lambda: f64,
    pub rho: f64,
    pub cosh: f64,
    pub sinh: f64,
}

impl SymbolValues {
    /// λ with ρ = √(2s+n), C = cosh(λρ/n), S = sinh(λρ/n).
    pub fn maxwell(lambda: f64, rho_sq: f64, n: usize) -> Self {
        let rho = rho_sq.sqrt();
        let mu = lambda * rho / n as f64;
        SymbolValues { lambda, rho, cosh: mu.cosh(), sinh: mu.sinh() }
    }
}

/// Element of the scalar tower: a sparse polynomial in λ, ρ and the formal
/// hyperbolic symbols C, S over ℚ. C and S are independent; ρ² is reduced only
/// on request via [`Symbolic::reduce_rho`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Symbolic {
    terms: BTreeMap<SymMono, Rational>,
}

impl Symbolic {
    fn single(m: SymMono, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(m, c);
        }
        Symbolic { terms }
    }
    pub fn constant(q: Rational) -> Self {
        Self::single(SymMono::ONE, q)
    }
    pub fn lambda() -> Self {
        Self::single(SymMono([1, 0, 0, 0]), int(1))
    }
    pub fn lambda_pow(k: u16) -> Self {
        Self::single(SymMono([k, 0, 0, 0]), int(1))
    }
    pub fn rho() -> Self {
        Self::single(SymMono([0, 1, 0, 0]), int(1))
    }
    pub fn cosh() -> Self {
        Self::single(SymMono([0, 0, 1, 0]), int(1))
    }
    pub fn sinh() -> Self {
        Self::single(SymMono([0, 0, 0, 1]), int(1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymMono, &Rational)> {
        self.terms.iter()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Zero::zero()),
            1 => self.terms.get(&SymMono::ONE).cloned(),
            _ => None,
        }
    }

    pub fn has_lambda(&self) -> bool {
        self.terms.keys().any(|m| m.lambda() > 0)
    }

    /// Largest power of λ present.
    pub fn lambda_degree(&self) -> Option<u16> {
        self.terms.keys().map(|m| m.lambda()).max()
    }

    /// Smallest power of λ present.
    pub fn lambda_valuation(&self) -> Option<u16> {
        self.terms.keys().map(|m| m.lambda()).min()
    }

    /// Coefficient of λ^k (a λ-free tower element).
    pub fn lambda_coeff(&self, k: u16) -> Symbolic {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.lambda() == k)
            .map(|(m, c)| {
                let mut e = m.0;
                e[0] = 0;
                (SymMono(e), c.clone())
            })
            .collect();
        Symbolic { terms }
    }

    /// Drop every term of λ-degree above `order`.
    pub fn truncate_lambda(&self, order: u16) -> Symbolic {
        let terms = self.terms.iter().filter(|(m, _)| m.lambda() <= order).map(|(m, c)| (*m, c.clone())).collect();
        Symbolic { terms }
    }

    /// Rewrite ρ² → `rho_sq`.
    pub fn reduce_rho(&self, rho_sq: &Rational) -> Symbolic {
        let mut out = Symbolic::default();
        for (m, c) in &self.terms {
            let mut e = m.0;
            let pairs = e[1] / 2;
            e[1] %= 2;
            let mut c = c.clone();
            for _ in 0..pairs {
                c *= rho_sq;
            }
            out.add_term(SymMono(e), c);
        }
        out
    }

    /// Part multiplying 1, C or S (with the symbol itself stripped).
    pub fn component(&self, which: HyperComponent) -> Symbolic {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| match which {
                HyperComponent::One => m.0[2] == 0 && m.0[3] == 0,
                HyperComponent::Cosh => m.0[2] == 1 && m.0[3] == 0,
                HyperComponent::Sinh => m.0[2] == 0 && m.0[3] == 1,
            })
            .map(|(m, c)| (SymMono([m.0[0], m.0[1], 0, 0]), c.clone()))
            .collect();
        Symbolic { terms }
    }

    pub fn eval(&self, v: &SymbolValues) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let e = m.0;
                rational_to_f64(c)
                    * v.lambda.powi(e[0] as i32)
                    * v.rho.powi(e[1] as i32)
                    * v.cosh.powi(e[2] as i32)
                    * v.sinh.powi(e[3] as i32)
            })
            .sum()
    }

    fn add_term(&mut self, m: SymMono, c: Rational) {
        if Zero::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if Zero::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }
}

impl Coefficient for Symbolic {
    fn zero() -> Self {
        Symbolic::default()
    }
    fn one() -> Self {
        Symbolic::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
    fn add_assign_ref(&mut self, o: &Self) {
        for (m, c) in &o.terms {
            self.add_term(*m, c.clone());
        }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = Symbolic::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        Symbolic { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        Symbolic::constant(q.clone())
    }
    fn from_symbolic(s: &Symbolic) -> Option<Self> {
        Some(s.clone())
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        if Zero::is_zero(q) {
            return Symbolic::default();
        }
        Symbolic { terms: self.terms.iter().map(|(m, c)| (*m, c * q)).collect() }
    }
}

impl fmt::Display for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        const NAMES: [&str; 4] = ["lambda", "rho", "C", "S"];
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *m == SymMono::ONE || !mag.is_one() {
                factors.push(pretty_rational(&mag));
            }
            for (k, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(NAMES[k].to_string()),
                    _ => factors.push(format!("{}^{}", NAMES[k], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Double factorial (2m−1)!! as a rational; `odd_double_factorial(0) = 1`.
pub fn odd_double_factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1))
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}
