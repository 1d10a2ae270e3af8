//! Text syntax for operator expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INT)*
//! primary := INT | atom | '(' expr ')' | '[' expr ',' expr ']' | '{' expr ',' expr '}'
//!          | 'exp' '(' expr ')' | 'exp' '[' INT ']' '(' expr ')'
//! atom    := D | X | E | Gamma | Delta | Id | X_j | d_j | xi_j | I_s(RATIONAL) | lambda | n
//! ```
//!
//! `/` only accepts constant divisors (integers, `n` and arithmetic of them).

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::ops::{Atom, Expr};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown identifier {name:?} at {line}:{col}")]
    UnknownIdentifier { line: usize, col: usize, name: String },
    #[error("I_s at {line}:{col}: {msg}")]
    Arity { line: usize, col: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            let v = s.parse::<u64>().map_err(|_| ParseError::Syntax {
                line: l0,
                col: c0,
                msg: format!("integer literal {s} out of range"),
            })?;
            out.push(Spanned { tok: Tok::Int(v), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
            continue;
        }
        if "+-*/^()[]{},".contains(c) {
            out.push(Spanned { tok: Tok::Sym(c), line: l0, col: c0 });
            col += 1;
            i += 1;
            continue;
        }
        return Err(ParseError::Syntax { line: l0, col: c0, msg: format!("unexpected character {c:?}") });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, at: &Spanned, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { line: at.line, col: at.col, msg: msg.into() })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok != Tok::Sym(c) {
            return self.syntax(&t, format!("expected '{c}', found {}", describe(&t.tok)));
        }
        Ok(())
    }

    fn expect_int(&mut self) -> Result<u64, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Int(v) => Ok(v),
            ref other => self.syntax(&t, format!("expected integer, found {}", describe(other))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.is_sym('+') {
                self.next();
                lhs = lhs.add(self.term()?);
            } else if self.is_sym('-') {
                self.next();
                lhs = lhs.sub(self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.next();
                lhs = lhs.mul(self.unary()?);
            } else if self.is_sym('/') {
                let at = self.next();
                let rhs = self.unary()?;
                if !rhs.is_constant_scalar() {
                    return self.syntax(&at, format!("divisor {rhs} is not a constant scalar"));
                }
                lhs = lhs.div(rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.is_sym('-') {
            self.next();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.primary()?;
        while self.is_sym('^') {
            let at = self.next();
            let k = self.expect_int()?;
            let k = u32::try_from(k).or_else(|_| self.syntax(&at, "exponent too large"))?;
            base = base.pow(k);
        }
        Ok(base)
    }

    fn pair(&mut self, close: char) -> Result<(Expr, Expr), ParseError> {
        let a = self.expr()?;
        self.expect(',')?;
        let c = self.expr()?;
        self.expect(close)?;
        Ok((a, c))
    }

    fn index(&self, at: &Spanned, name: &str, digits: &str) -> Result<usize, ParseError> {
        match digits.parse::<usize>() {
            Ok(j) if j >= 1 && !digits.starts_with('0') => Ok(j),
            _ => Err(ParseError::UnknownIdentifier { line: at.line, col: at.col, name: name.to_string() }),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(v) => Ok(Expr::Num(*v)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                let (a, c) = self.pair(']')?;
                Ok(a.comm(c))
            }
            Tok::Sym('{') => {
                let (a, c) = self.pair('}')?;
                Ok(a.anti(c))
            }
            Tok::Ident(name) => self.identifier(&t, name),
            other => self.syntax(&t, format!("unexpected {}", describe(other))),
        }
    }

    fn identifier(&mut self, at: &Spanned, name: &str) -> Result<Expr, ParseError> {
        let a = |x| Ok(Expr::Atom(x));
        match name {
            "D" => a(Atom::D),
            "X" => a(Atom::X),
            "E" => a(Atom::E),
            "Gamma" => a(Atom::Gamma),
            "Delta" => a(Atom::Delta),
            "Id" => a(Atom::Id),
            "lambda" => Ok(Expr::Lambda),
            "n" => Ok(Expr::Dim),
            "exp" => {
                if self.is_sym('[') {
                    self.next();
                    let k = self.expect_int()?;
                    let k = u32::try_from(k).or_else(|_| self.syntax(at, "truncation order too large"))?;
                    self.expect(']')?;
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(e.exp_truncated(k))
                } else {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(e.exp())
                }
            }
            "I_s" => self.integral_atom(at),
            _ => {
                if let Some(d) = name.strip_prefix("X_") {
                    return a(Atom::Xj(self.index(at, name, d)?));
                }
                if let Some(d) = name.strip_prefix("d_") {
                    return a(Atom::Dj(self.index(at, name, d)?));
                }
                if let Some(d) = name.strip_prefix("xi_") {
                    return a(Atom::Xi(self.index(at, name, d)?));
                }
                Err(ParseError::UnknownIdentifier { line: at.line, col: at.col, name: name.to_string() })
            }
        }
    }

    fn integral_atom(&mut self, at: &Spanned) -> Result<Expr, ParseError> {
        let arity = |msg: &str| ParseError::Arity { line: at.line, col: at.col, msg: msg.to_string() };
        if !self.is_sym('(') {
            return Err(arity("expected one rational argument in parentheses"));
        }
        self.next();
        let num = match self.next().tok {
            Tok::Int(v) => v,
            _ => return Err(arity("argument must be a rational literal")),
        };
        let mut den = 1u64;
        if self.is_sym('/') {
            self.next();
            den = match self.next().tok {
                Tok::Int(v) if v > 0 => v,
                _ => return Err(arity("denominator must be a positive integer")),
            };
        }
        if !self.is_sym(')') {
            return Err(arity("takes exactly one argument"));
        }
        self.next();
        Ok(Expr::Atom(Atom::Is(Rational::new(num.into(), den.into()))))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier {s:?}"),
        Tok::Int(v) => format!("integer {v}"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".to_string(),
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.syntax(&t, format!("unexpected {} after expression", describe(&t.tok)));
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "(")?;
        write_expr(f, e, 0)?;
        return write!(f, ")");
    }
    match e {
        Expr::Atom(a) => match a {
            Atom::D => write!(f, "D"),
            Atom::X => write!(f, "X"),
            Atom::E => write!(f, "E"),
            Atom::Gamma => write!(f, "Gamma"),
            Atom::Delta => write!(f, "Delta"),
            Atom::Id => write!(f, "Id"),
            Atom::Xj(j) => write!(f, "X_{j}"),
            Atom::Dj(j) => write!(f, "d_{j}"),
            Atom::Xi(j) => write!(f, "xi_{j}"),
            Atom::Is(s) => {
                if s.denom().is_one() || s.is_zero() {
                    write!(f, "I_s({})", s.numer())
                } else {
                    write!(f, "I_s({}/{})", s.numer(), s.denom())
                }
            }
        },
        Expr::Num(k) => write!(f, "{k}"),
        Expr::Lambda => write!(f, "lambda"),
        Expr::Dim => write!(f, "n"),
        Expr::Neg(a) => {
            write!(f, "-")?;
            write_expr(f, a, 3)
        }
        Expr::Add(a, c) | Expr::Sub(a, c) => {
            write_expr(f, a, 1)?;
            write!(f, "{}", if matches!(e, Expr::Add(..)) { " + " } else { " - " })?;
            write_expr(f, c, 2)
        }
        Expr::Mul(a, c) | Expr::Div(a, c) => {
            write_expr(f, a, 2)?;
            write!(f, "{}", if matches!(e, Expr::Mul(..)) { "*" } else { "/" })?;
            write_expr(f, c, 3)
        }
        Expr::Pow(a, k) => {
            write_expr(f, a, 4)?;
            write!(f, "^{k}")
        }
        Expr::Comm(a, c) | Expr::Anti(a, c) => {
            let (open, close) = if matches!(e, Expr::Comm(..)) { ('[', ']') } else { ('{', '}') };
            write!(f, "{open}")?;
            write_expr(f, a, 0)?;
            write!(f, ", ")?;
            write_expr(f, c, 0)?;
            write!(f, "{close}")
        }
        Expr::Exp(a) => {
            write!(f, "exp(")?;
            write_expr(f, a, 0)?;
            write!(f, ")")
        }
        Expr::ExpTrunc(a, k) => {
            write!(f, "exp[{k}](")?;
            write_expr(f, a, 0)?;
            write!(f, ")")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn anticommutator_parses() {
        let e = parse("{X,D} + 2*E + n").unwrap();
        let expect =
            Expr::Atom(Atom::X).anti(Expr::Atom(Atom::D)).add(Expr::Num(2).mul(Expr::Atom(Atom::E))).add(Expr::Dim);
        assert_eq!(e, expect);
        assert_eq!(e.to_string(), "{X, D} + 2*E + n");
    }

    #[test]
    fn commutator_parses() {
        assert_eq!(parse("[Gamma, Delta]").unwrap(), Expr::Atom(Atom::Gamma).comm(Expr::Atom(Atom::Delta)));
    }

    #[test]
    fn lambda_scalars_parse() {
        let e = parse("(D - lambda + (2*lambda/n)*Gamma)").unwrap();
        assert!(e.contains_lambda());
        assert_eq!(e.to_string(), "D - lambda + 2*lambda/n*Gamma");
    }

    #[test]
    fn precedence_rules() {
        // '^' binds tighter than unary minus and '*'
        assert_eq!(parse("-X^2").unwrap(), Expr::Atom(Atom::X).pow(2).neg());
        assert_eq!(parse("2*X^2").unwrap(), Expr::Num(2).mul(Expr::Atom(Atom::X).pow(2)));
        assert_eq!(parse("X - D - E").unwrap(), Expr::Atom(Atom::X).sub(Expr::Atom(Atom::D)).sub(Expr::Atom(Atom::E)));
        assert_eq!(parse("X - (D - E)").unwrap().to_string(), "X - (D - E)");
    }

    #[test]
    fn indexed_atoms() {
        assert_eq!(parse("X_2*d_1*xi_3").unwrap().to_string(), "X_2*d_1*xi_3");
        assert_eq!(parse("I_s(3/2)").unwrap(), Expr::Atom(Atom::Is(rat(3, 2))));
        assert_eq!(parse("exp[4](lambda*D)").unwrap().to_string(), "exp[4](lambda*D)");
    }

    #[test]
    fn errors_carry_positions() {
        match parse("X +\n  * D") {
            Err(ParseError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("Foo"), Err(ParseError::UnknownIdentifier { .. })));
        assert!(matches!(parse("X_0"), Err(ParseError::UnknownIdentifier { .. })));
        assert!(matches!(parse("I_s(1,2)"), Err(ParseError::Arity { .. })));
        assert!(matches!(parse("I_s"), Err(ParseError::Arity { .. })));
        assert!(matches!(parse("X/D"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("[X, D"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("X $ D"), Err(ParseError::Syntax { .. })));
    }
}
