//! Operator expressions over the generators x_j, ∂_j, e_j and their action on
//! polynomials and Gaussian-weighted functions.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::clifford::Blade;
use crate::error::{Error, Result};
use crate::poly::{add_into, MultiIndex, Polynomial, Term, WeightedFunction};
use crate::scalar::{int, Coefficient, Rational, Symbolic};

/// Primitive operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    /// Dirac operator Σ e_j ∂_j.
    D,
    /// Vector variable Σ e_j x_j (left multiplication).
    X,
    /// Euler operator Σ x_j ∂_j.
    E,
    /// Gamma operator −Σ_{j<k} e_j e_k (x_j ∂_k − x_k ∂_j).
    Gamma,
    /// Laplacian Σ ∂_j².
    Delta,
    Id,
    /// Multiplication by x_j.
    Xj(usize),
    /// ∂/∂x_j.
    Dj(usize),
    /// Left multiplication by e_j.
    Xi(usize),
    /// I_s: degree-k part times 1/(k+s).
    Is(Rational),
}

/// Operator expression tree. Scalars are ℚ[λ]-valued expressions built from
/// integer literals, `lambda` and the session dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Num(u64),
    Lambda,
    Dim,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a constant scalar.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Comm(Box<Expr>, Box<Expr>),
    Anti(Box<Expr>, Box<Expr>),
    /// exp of a degree-lowering operator; a terminating sum on polynomials.
    Exp(Box<Expr>),
    /// Σ_{k≤N} op^k/k! for an operand divisible by λ.
    ExpTrunc(Box<Expr>, u32),
}

fn b(e: Expr) -> Box<Expr> {
    Box::new(e)
}

impl Expr {
    pub fn atom(a: Atom) -> Expr {
        Expr::Atom(a)
    }
    pub fn add(self, o: Expr) -> Expr {
        Expr::Add(b(self), b(o))
    }
    pub fn sub(self, o: Expr) -> Expr {
        Expr::Sub(b(self), b(o))
    }
    pub fn mul(self, o: Expr) -> Expr {
        Expr::Mul(b(self), b(o))
    }
    pub fn div(self, o: Expr) -> Expr {
        Expr::Div(b(self), b(o))
    }
    pub fn neg(self) -> Expr {
        Expr::Neg(b(self))
    }
    pub fn pow(self, k: u32) -> Expr {
        Expr::Pow(b(self), k)
    }
    pub fn comm(self, o: Expr) -> Expr {
        Expr::Comm(b(self), b(o))
    }
    pub fn anti(self, o: Expr) -> Expr {
        Expr::Anti(b(self), b(o))
    }
    pub fn exp(self) -> Expr {
        Expr::Exp(b(self))
    }
    pub fn exp_truncated(self, order: u32) -> Expr {
        Expr::ExpTrunc(b(self), order)
    }

    /// Literal for a rational constant, e.g. `-3/4` → Neg(Div(3, 4)).
    pub fn rational(q: &Rational) -> Expr {
        let mag = q.abs();
        let num = Expr::Num(mag.numer().try_into().expect("literal fits in u64"));
        let e = if mag.denom().is_one() {
            num
        } else {
            num.div(Expr::Num(mag.denom().try_into().expect("literal fits in u64")))
        };
        if q.is_negative() {
            e.neg()
        } else {
            e
        }
    }

    fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Atom(_) | Expr::Num(_) | Expr::Lambda | Expr::Dim => vec![],
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Exp(a) | Expr::ExpTrunc(a, _) => vec![a],
            Expr::Add(a, c)
            | Expr::Sub(a, c)
            | Expr::Mul(a, c)
            | Expr::Div(a, c)
            | Expr::Comm(a, c)
            | Expr::Anti(a, c) => vec![a, c],
        }
    }

    pub fn contains_lambda(&self) -> bool {
        matches!(self, Expr::Lambda) || self.children().iter().any(|c| c.contains_lambda())
    }

    /// Smallest truncation order among truncated exponentials, if any.
    pub fn truncation_order(&self) -> Option<u32> {
        let own = match self {
            Expr::ExpTrunc(_, n) => Some(*n),
            _ => None,
        };
        self.children().iter().filter_map(|c| c.truncation_order()).chain(own).min()
    }

    /// True for expressions without operator atoms, λ or exponentials.
    pub fn is_constant_scalar(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Dim => true,
            Expr::Atom(_) | Expr::Lambda | Expr::Exp(_) | Expr::ExpTrunc(..) => false,
            Expr::Comm(..) | Expr::Anti(..) => false,
            _ => self.children().iter().all(|c| c.is_constant_scalar()),
        }
    }

    /// Value of a constant scalar expression in dimension n.
    pub fn constant_value(&self, n: usize) -> Result<Rational> {
        Ok(match self {
            Expr::Num(k) => Rational::from_integer((*k).into()),
            Expr::Dim => int(n as i64),
            Expr::Neg(a) => -a.constant_value(n)?,
            Expr::Add(a, c) => a.constant_value(n)? + c.constant_value(n)?,
            Expr::Sub(a, c) => a.constant_value(n)? - c.constant_value(n)?,
            Expr::Mul(a, c) => a.constant_value(n)? * c.constant_value(n)?,
            Expr::Div(a, c) => {
                let d = c.constant_value(n)?;
                if Zero::is_zero(&d) {
                    return Err(Error::DivisionByZero);
                }
                a.constant_value(n)? / d
            }
            Expr::Pow(a, k) => {
                let v = a.constant_value(n)?;
                (0..*k).fold(<Rational as One>::one(), |acc, _| acc * &v)
            }
            other => return Err(Error::NonScalarDivisor(other.to_string())),
        })
    }

    /// Bounds (min, max) on the change of polynomial degree; `weighted`
    /// accounts for the extra x-multiplications appearing on e^{g|x|²}·P.
    pub fn degree_shift(&self, weighted: bool) -> (i64, i64) {
        match self {
            Expr::Atom(a) => match a {
                Atom::D | Atom::Dj(_) if weighted => (-1, 1),
                Atom::D | Atom::Dj(_) => (-1, -1),
                Atom::Delta if weighted => (-2, 2),
                Atom::Delta => (-2, -2),
                Atom::E if weighted => (0, 2),
                Atom::X | Atom::Xj(_) => (1, 1),
                Atom::E | Atom::Gamma | Atom::Id | Atom::Xi(_) | Atom::Is(_) => (0, 0),
            },
            Expr::Num(_) | Expr::Lambda | Expr::Dim => (0, 0),
            Expr::Neg(a) | Expr::Div(a, _) => a.degree_shift(weighted),
            Expr::Add(a, c) | Expr::Sub(a, c) => {
                let (x, y) = (a.degree_shift(weighted), c.degree_shift(weighted));
                (x.0.min(y.0), x.1.max(y.1))
            }
            Expr::Mul(a, c) | Expr::Comm(a, c) | Expr::Anti(a, c) => {
                let (x, y) = (a.degree_shift(weighted), c.degree_shift(weighted));
                (x.0 + y.0, x.1 + y.1)
            }
            Expr::Pow(a, k) => {
                let (lo, hi) = a.degree_shift(weighted);
                if *k == 0 {
                    (0, 0)
                } else {
                    (lo * *k as i64, hi * *k as i64)
                }
            }
            Expr::Exp(a) | Expr::ExpTrunc(a, _) => {
                let (lo, hi) = a.degree_shift(weighted);
                (lo.min(0), hi.max(0))
            }
        }
    }

    /// Guaranteed power of λ dividing the operator.
    pub fn lambda_valuation(&self) -> u32 {
        match self {
            Expr::Lambda => 1,
            Expr::Atom(_) | Expr::Num(_) | Expr::Dim | Expr::Exp(_) | Expr::ExpTrunc(..) => 0,
            Expr::Neg(a) | Expr::Div(a, _) => a.lambda_valuation(),
            Expr::Add(a, c) | Expr::Sub(a, c) => a.lambda_valuation().min(c.lambda_valuation()),
            Expr::Mul(a, c) | Expr::Comm(a, c) | Expr::Anti(a, c) => a.lambda_valuation() + c.lambda_valuation(),
            Expr::Pow(a, k) => a.lambda_valuation() * k,
        }
    }

    /// Apply to a polynomial.
    pub fn apply<R: Coefficient>(&self, p: &Polynomial<R>) -> Result<Polynomial<R>> {
        self.eval(p, &<Rational as Zero>::zero())
    }

    /// Apply to e^{g|x|²}·P. The envelope is preserved; x-derivatives pick up
    /// the 2g·x_j terms of the envelope.
    pub fn apply_weighted<R: Coefficient>(&self, f: &WeightedFunction<R>) -> Result<WeightedFunction<R>> {
        Ok(WeightedFunction::new(f.envelope.clone(), self.eval(&f.poly, &f.envelope)?))
    }

    fn eval<R: Coefficient>(&self, p: &Polynomial<R>, g: &Rational) -> Result<Polynomial<R>> {
        let n = p.n();
        match self {
            Expr::Atom(a) => apply_atom(a, p, g),
            Expr::Num(k) => Ok(p.scale_rational(&Rational::from_integer((*k).into()))),
            Expr::Dim => Ok(p.scale_rational(&int(n as i64))),
            Expr::Lambda => {
                let l = R::from_symbolic(&Symbolic::lambda()).ok_or(Error::LambdaUnavailable)?;
                Ok(p.scale(&l))
            }
            Expr::Neg(a) => Ok(a.eval(p, g)?.neg()),
            Expr::Add(a, c) => a.eval(p, g)?.add(&c.eval(p, g)?),
            Expr::Sub(a, c) => a.eval(p, g)?.sub(&c.eval(p, g)?),
            Expr::Mul(a, c) => a.eval(&c.eval(p, g)?, g),
            Expr::Div(a, c) => {
                if !c.is_constant_scalar() {
                    return Err(Error::NonScalarDivisor(c.to_string()));
                }
                let d = c.constant_value(n)?;
                if Zero::is_zero(&d) {
                    return Err(Error::DivisionByZero);
                }
                Ok(a.eval(p, g)?.scale_rational(&(<Rational as One>::one() / d)))
            }
            Expr::Pow(a, k) => {
                let mut cur = p.clone();
                for _ in 0..*k {
                    if cur.is_zero() {
                        break;
                    }
                    cur = a.eval(&cur, g)?;
                }
                Ok(cur)
            }
            Expr::Comm(a, c) => a.eval(&c.eval(p, g)?, g)?.sub(&c.eval(&a.eval(p, g)?, g)?),
            Expr::Anti(a, c) => a.eval(&c.eval(p, g)?, g)?.add(&c.eval(&a.eval(p, g)?, g)?),
            Expr::Exp(a) => {
                let (_, hi) = a.degree_shift(!Zero::is_zero(g));
                if hi >= 0 {
                    return Err(Error::NotNilpotent(a.to_string()));
                }
                let mut sum = p.clone();
                let mut term = p.clone();
                let mut k = 1i64;
                while !term.is_zero() {
                    term = a.eval(&term, g)?.scale_rational(&Rational::new(1.into(), k.into()));
                    sum = sum.add(&term)?;
                    k += 1;
                }
                Ok(sum)
            }
            Expr::ExpTrunc(a, order) => {
                if a.lambda_valuation() == 0 {
                    return Err(Error::NotLambdaDivisible(a.to_string()));
                }
                let mut sum = p.clone();
                let mut term = p.clone();
                for k in 1..=*order as i64 {
                    term = a.eval(&term, g)?.scale_rational(&Rational::new(1.into(), k.into()));
                    if term.is_zero() {
                        break;
                    }
                    sum = sum.add(&term)?;
                }
                Ok(sum)
            }
        }
    }
}

fn check_axis(j: usize, n: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::AxisOutOfRange { axis: j, n });
    }
    Ok(())
}

fn negate_if<R: Coefficient>(s: i8, c: R) -> R {
    if s < 0 {
        c.neg_ref()
    } else {
        c
    }
}

fn exponent_rational(k: u32) -> Rational {
    Rational::from_integer(k.into())
}

/// Σ_j e_j x_j.
fn vector_mul<R: Coefficient>(p: &Polynomial<R>) -> Polynomial<R> {
    let sig = p.signature();
    let mut out = BTreeMap::new();
    for (t, c) in p.terms() {
        for j in 1..=p.n() {
            let (s, bl) = Blade::generator(j).product(t.blade, &sig);
            add_into(&mut out, Term { mono: t.mono.raised(j), blade: bl }, negate_if(s, c.clone()));
        }
    }
    Polynomial::from_map(sig, out)
}

/// Σ_j e_j ∂_j.
fn dirac<R: Coefficient>(p: &Polynomial<R>) -> Polynomial<R> {
    let sig = p.signature();
    let mut out = BTreeMap::new();
    for (t, c) in p.terms() {
        for j in 1..=p.n() {
            if let Some(m) = t.mono.lowered(j) {
                let (s, bl) = Blade::generator(j).product(t.blade, &sig);
                let c = c.scale_rational(&exponent_rational(t.mono.get(j)));
                add_into(&mut out, Term { mono: m, blade: bl }, negate_if(s, c));
            }
        }
    }
    Polynomial::from_map(sig, out)
}

fn euler<R: Coefficient>(p: &Polynomial<R>) -> Polynomial<R> {
    p.scale_by_degree(|k| int(k as i64))
}

fn laplacian<R: Coefficient>(p: &Polynomial<R>) -> Polynomial<R> {
    let mut out = BTreeMap::new();
    for (t, c) in p.terms() {
        for j in 1..=p.n() {
            let a = t.mono.get(j);
            if a >= 2 {
                let m = t.mono.lowered(j).and_then(|m| m.lowered(j)).expect("a >= 2");
                add_into(&mut out, Term { mono: m, blade: t.blade }, c.scale_rational(&exponent_rational(a * (a - 1))));
            }
        }
    }
    Polynomial::from_map(p.signature(), out)
}

/// |x|²·p.
fn radius_sq<R: Coefficient>(p: &Polynomial<R>) -> Polynomial<R> {
    let mut out = BTreeMap::new();
    for (t, c) in p.terms() {
        for j in 1..=p.n() {
            add_into(&mut out, Term { mono: t.mono.raised(j).raised(j), blade: t.blade }, c.clone());
        }
    }
    Polynomial::from_map(p.signature(), out)
}

fn gamma<R: Coefficient>(p: &Polynomial<R>) -> Polynomial<R> {
    let sig = p.signature();
    let n = p.n();
    let mut out = BTreeMap::new();
    for (t, c) in p.terms() {
        for j in 1..=n {
            for k in j + 1..=n {
                let (s1, b1) = Blade::generator(k).product(t.blade, &sig);
                let (s2, bl) = Blade::generator(j).product(b1, &sig);
                // −e_j e_k x_j ∂_k
                if let Some(m) = t.mono.lowered(k) {
                    let v = c.scale_rational(&exponent_rational(t.mono.get(k)));
                    add_into(&mut out, Term { mono: m.raised(j), blade: bl }, negate_if(-s1 * s2, v));
                }
                // +e_j e_k x_k ∂_j
                if let Some(m) = t.mono.lowered(j) {
                    let v = c.scale_rational(&exponent_rational(t.mono.get(j)));
                    add_into(&mut out, Term { mono: m.raised(k), blade: bl }, negate_if(s1 * s2, v));
                }
            }
        }
    }
    Polynomial::from_map(sig, out)
}

fn apply_atom<R: Coefficient>(a: &Atom, p: &Polynomial<R>, g: &Rational) -> Result<Polynomial<R>> {
    let n = p.n();
    let weighted = !Zero::is_zero(g);
    let two_g = g * int(2);
    Ok(match a {
        Atom::Id => p.clone(),
        Atom::X => vector_mul(p),
        Atom::Xj(j) => {
            check_axis(*j, n)?;
            p.mul_var(*j)?
        }
        Atom::Xi(j) => {
            check_axis(*j, n)?;
            p.mul_generator(*j)?
        }
        Atom::Dj(j) => {
            check_axis(*j, n)?;
            let d = p.partial(*j)?;
            if weighted {
                d.add(&p.mul_var(*j)?.scale_rational(&two_g))?
            } else {
                d
            }
        }
        Atom::D => {
            let d = dirac(p);
            if weighted {
                d.add(&vector_mul(p).scale_rational(&two_g))?
            } else {
                d
            }
        }
        Atom::E => {
            let e = euler(p);
            if weighted {
                e.add(&radius_sq(p).scale_rational(&two_g))?
            } else {
                e
            }
        }
        Atom::Delta => {
            let l = laplacian(p);
            if weighted {
                // (∂_j + 2g x_j)² summed: Δ + 4gE + 2gn + 4g²|x|²
                let four_g = g * int(4);
                let extra = euler(p)
                    .scale_rational(&four_g)
                    .add(&p.scale_rational(&(&two_g * int(n as i64))))?
                    .add(&radius_sq(p).scale_rational(&(g * g * int(4))))?;
                l.add(&extra)?
            } else {
                l
            }
        }
        // the angular derivatives x_j∂_k − x_k∂_j annihilate e^{g|x|²}
        Atom::Gamma => gamma(p),
        Atom::Is(s) => {
            if weighted {
                return Err(Error::UnsupportedOnWeighted("I_s".into()));
            }
            if !s.is_positive() {
                return Err(Error::InvalidIs(s.to_string()));
            }
            p.scale_by_degree(|k| <Rational as One>::one() / (int(k as i64) + s))
        }
    })
}

/// I_s(p) for s > 0, applied degree by degree.
pub fn integral_operator_is<R: Coefficient>(s: &Rational, p: &Polynomial<R>) -> Result<Polynomial<R>> {
    Expr::Atom(Atom::Is(s.clone())).apply(p)
}

/// E_s = E + s, the inverse of I_s on polynomials.
pub fn euler_shifted<R: Coefficient>(s: &Rational, p: &Polynomial<R>) -> Polynomial<R> {
    p.scale_by_degree(|k| int(k as i64) + s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hamiltonian {
    /// ½(−Δ + |x|²).
    H0,
    /// −½Δ + E + n/2.
    J0,
    /// The Landau operator with formal λ.
    HLambda,
}

/// DSL text of the named Hamiltonians.
pub fn hamiltonian_text(kind: Hamiltonian) -> &'static str {
    match kind {
        Hamiltonian::H0 => "(-Delta - X^2)/2",
        Hamiltonian::J0 => "-Delta/2 + E + n/2",
        Hamiltonian::HLambda => "((D - lambda)*(D + lambda) - X^2 - 2*lambda/n*(X - 2*lambda*(Id - Gamma/n)*Gamma))/2",
    }
}

pub fn hamiltonian(kind: Hamiltonian) -> Expr {
    crate::dsl::parse(hamiltonian_text(kind)).expect("builtin Hamiltonian parses")
}

/// √2-free ladders L⁺ = X − D, L⁻ = X + D, with D^± = 2^{sqrt2_power/2} L^±.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderPair {
    pub raise: Expr,
    pub lower: Expr,
    /// Exponent of √2 relating the normalized ladders D^± to `raise`/`lower` (−1).
    pub sqrt2_power: i32,
}

pub fn ladder_pair() -> LadderPair {
    LadderPair {
        raise: Expr::Atom(Atom::X).sub(Expr::Atom(Atom::D)),
        lower: Expr::Atom(Atom::X).add(Expr::Atom(Atom::D)),
        sqrt2_power: -1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderSign {
    Raise,
    Lower,
}

/// X_j ∓ ∂_j (√2-free Weyl-Heisenberg ladders).
pub fn weyl_heisenberg_ladder(j: usize, sign: LadderSign) -> Expr {
    let x = Expr::Atom(Atom::Xj(j));
    let d = Expr::Atom(Atom::Dj(j));
    match sign {
        LadderSign::Raise => x.sub(d),
        LadderSign::Lower => x.add(d),
    }
}

/// Spanning functions x^α ē^β with |α| ≤ bound, all blades, canonical order.
pub fn spanning_set(sig: crate::clifford::Signature, bound: usize) -> Vec<Term> {
    let blades: Vec<Blade> = sig.blades().collect();
    MultiIndex::up_to_degree(sig.dim(), bound)
        .into_iter()
        .flat_map(|m| blades.iter().map(move |b| Term { mono: m, blade: *b }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{Multivector, Signature};
    use crate::dsl::parse;
    use crate::poly::Side;
    use crate::scalar::rat;

    fn sig(n: usize) -> Signature {
        Signature::euclidean(n).unwrap()
    }
    fn x(n: usize, j: usize) -> Polynomial<Rational> {
        Polynomial::var(sig(n), j).unwrap()
    }
    fn e(n: usize, j: usize) -> Multivector<Rational> {
        Multivector::generator(sig(n), j).unwrap()
    }
    fn run(text: &str, p: &Polynomial<Rational>) -> Polynomial<Rational> {
        parse(text).unwrap().apply(p).unwrap()
    }

    #[test]
    fn euler_and_gamma_examples() {
        let x1sq = x(2, 1).mul(&x(2, 1)).unwrap();
        assert_eq!(run("E", &x1sq), x1sq.scale_rational(&int(2)));
        // Γx₁ = x₂e₁e₂
        let expect = x(2, 2).mul_multivector(&e(2, 1).mul(&e(2, 2)).unwrap(), Side::Left).unwrap();
        assert_eq!(run("Gamma", &x(2, 1)), expect);
        assert_eq!(run("{X,D}", &x(2, 1)), x(2, 1).scale_rational(&int(-4)));
    }

    #[test]
    fn commutator_example() {
        let lhs = run("[E,X]", &x(2, 1));
        assert_eq!(lhs, run("X", &x(2, 1)));
    }

    #[test]
    fn integral_operator_examples() {
        let n = 2;
        let x1sq = x(n, 1).mul(&x(n, 1)).unwrap();
        let s = rat(n as i64, 2);
        assert_eq!(integral_operator_is(&s, &x1sq).unwrap(), x1sq.scale_rational(&rat(1, 3)));
        let one = Polynomial::<Rational>::one(sig(2));
        assert_eq!(integral_operator_is(&int(1), &one).unwrap(), one);
        assert!(integral_operator_is(&int(0), &one).is_err());
        assert!(integral_operator_is(&int(-1), &one).is_err());
    }

    #[test]
    fn nilpotent_exponential_examples() {
        let x1sq = x(2, 1).mul(&x(2, 1)).unwrap();
        let one = Polynomial::<Rational>::one(sig(2));
        assert_eq!(run("exp(-Delta/4)", &x1sq), x1sq.sub(&one.scale_rational(&rat(1, 2))).unwrap());
        assert_eq!(run("exp(-Delta/4)", &x(2, 1)), x(2, 1));
        // exp(λ/n D)(x₁e₁) = x₁e₁ − λ/2
        let x1e1 = x(2, 1).mul_multivector(&e(2, 1), Side::Left).unwrap().to_symbolic();
        let got = parse("exp(lambda/n*D)").unwrap().apply(&x1e1).unwrap();
        let half_l = Polynomial::one(sig(2)).scale(&Symbolic::lambda().scale_rational(&rat(1, 2)));
        assert_eq!(got, x1e1.sub(&half_l).unwrap());
        assert!(matches!(parse("exp(X)").unwrap().apply(&one), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn truncated_exponential_examples() {
        let p = x(2, 1).to_symbolic();
        assert_eq!(parse("exp[0](lambda/n*(D-X))").unwrap().apply(&p).unwrap(), p);
        let a = parse("exp[3](lambda/n*(D-X))").unwrap().apply(&p).unwrap();
        let b = parse("exp[4](lambda/n*(D-X))").unwrap().apply(&p).unwrap();
        let diff = b.sub(&a).unwrap();
        assert_eq!(diff.lambda_valuation(), Some(4));
        assert_eq!(diff.lambda_degree(), Some(4));
        assert!(matches!(parse("exp[2](D)").unwrap().apply(&p), Err(Error::NotLambdaDivisible(_))));
    }

    #[test]
    fn lambda_needs_symbolic_ring() {
        let p = x(2, 1);
        assert!(matches!(parse("lambda*X").unwrap().apply(&p), Err(Error::LambdaUnavailable)));
    }

    #[test]
    fn hamiltonian_examples() {
        let s = sig(3);
        let ground = WeightedFunction::gaussian(Polynomial::<Rational>::one(s));
        let h = hamiltonian(Hamiltonian::H0).apply_weighted(&ground).unwrap();
        assert_eq!(h.poly, ground.poly.scale_rational(&rat(3, 2)));
        let j0 = hamiltonian(Hamiltonian::J0).apply(&x(2, 1)).unwrap();
        assert_eq!(j0, x(2, 1).scale_rational(&int(2)));
    }

    #[test]
    fn weighted_dirac_matches_product_rule() {
        // D(e^{−|x|²/2}P) = e^{−|x|²/2}(DP − XP)
        let s = sig(2);
        let p = x(2, 1).mul(&x(2, 2)).unwrap().mul_multivector(&e(2, 1), Side::Left).unwrap();
        let w = WeightedFunction::gaussian(p.clone());
        let got = Expr::Atom(Atom::D).apply_weighted(&w).unwrap();
        let expect = run("D", &p).sub(&run("X", &p)).unwrap();
        assert_eq!(got.poly, expect);
        assert!(matches!(
            Expr::Atom(Atom::Is(int(1))).apply_weighted(&WeightedFunction::gaussian(Polynomial::<Rational>::one(s))),
            Err(Error::UnsupportedOnWeighted(_))
        ));
    }

    #[test]
    fn weyl_heisenberg_ladder_examples() {
        let s = sig(2);
        let ground = WeightedFunction::gaussian(Polynomial::<Rational>::one(s));
        let low = weyl_heisenberg_ladder(1, LadderSign::Lower).apply_weighted(&ground).unwrap();
        assert!(low.poly.is_zero());
        let up = weyl_heisenberg_ladder(1, LadderSign::Raise).apply_weighted(&ground).unwrap();
        assert_eq!(up.poly, x(2, 1).scale_rational(&int(2)));
    }

    #[test]
    fn axis_out_of_range() {
        assert!(parse("X_3").unwrap().apply(&x(2, 1)).is_err());
    }

    #[test]
    fn spanning_set_size() {
        // C(2+3,3) monomials of degree ≤ 3 in 2 variables times 4 blades
        assert_eq!(spanning_set(sig(2), 3).len(), 10 * 4);
    }
}
