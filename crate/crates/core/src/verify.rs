//! Identity checking on graded spanning sets and the canned identity suites.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::clifford::Signature;
use crate::dsl::{parse, ParseError};
use crate::error::{Error, Result};
use crate::ops::{hamiltonian_text, spanning_set, Expr, Hamiltonian};
use crate::poly::{Polynomial, Term};
use crate::scalar::{int, pretty_rational, rat, Coefficient, Rational, Symbolic};

/// First spanning function with a nonzero image.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub input: Term,
    pub image: String,
    /// Lowest power of λ in the image (0 when λ is absent).
    pub lambda_order: u16,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Zero,
    Nonzero(Witness),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: Option<String>,
    pub tag: Option<String>,
    pub expression: String,
    pub n: usize,
    pub bound: usize,
    /// λ-order above which images are ignored (truncated exponentials).
    pub lambda_order: Option<u32>,
    pub checked: usize,
    pub verdict: Verdict,
}

impl IdentityReport {
    pub fn is_zero(&self) -> bool {
        self.verdict == Verdict::Zero
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Zero => None,
            Verdict::Nonzero(w) => Some(w),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "expr": self.expression,
            "n": self.n,
            "bound": self.bound,
            "verdict": if self.is_zero() { "zero" } else { "nonzero" },
        });
        let obj = v.as_object_mut().expect("object");
        if let Some(name) = &self.name {
            obj.insert("name".into(), json!(name));
        }
        if let Some(tag) = &self.tag {
            obj.insert("tag".into(), json!(tag));
        }
        if let Some(order) = self.lambda_order {
            obj.insert("lambda_order".into(), json!(order));
        }
        if let Some(w) = self.witness() {
            obj.insert(
                "witness".into(),
                json!({
                    "input": w.input.to_string(),
                    "image": w.image,
                    "lowest_lambda_power": w.lambda_order,
                }),
            );
        }
        v
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] Error),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

/// Options for [`check_identity`].
#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub signature: Signature,
    pub bound: usize,
    /// Ignore λ-powers above this order; defaults to the smallest truncation
    /// order of the expression's truncated exponentials.
    pub lambda_order: Option<u32>,
}

impl CheckOptions {
    pub fn new(n: usize, bound: usize) -> Result<Self> {
        Ok(CheckOptions { signature: Signature::euclidean(n)?, bound, lambda_order: None })
    }
}

/// Apply `expr` to every x^α ē^β with |α| ≤ bound; zero verdict iff all
/// images vanish exactly.
pub fn check_identity_zero(expr: &Expr, n: usize, bound: usize) -> Result<IdentityReport> {
    check_identity(expr, &CheckOptions::new(n, bound)?)
}

pub fn check_identity(expr: &Expr, opts: &CheckOptions) -> Result<IdentityReport> {
    let order = opts.lambda_order.or_else(|| expr.truncation_order());
    let symbolic = expr.contains_lambda() || order.is_some();
    let basis = spanning_set(opts.signature, opts.bound);
    let witness = if symbolic {
        first_failure::<Symbolic>(expr, &basis, opts.signature, |p| match order {
            Some(k) => p.truncate_lambda(k.min(u16::MAX as u32) as u16),
            None => p,
        })?
    } else {
        first_failure::<Rational>(expr, &basis, opts.signature, |p| p)?
    };
    Ok(IdentityReport {
        name: None,
        tag: None,
        expression: expr.to_string(),
        n: opts.signature.dim(),
        bound: opts.bound,
        lambda_order: order,
        checked: basis.len(),
        verdict: match witness {
            None => Verdict::Zero,
            Some(w) => Verdict::Nonzero(w),
        },
    })
}

trait LambdaInfo {
    fn lowest_lambda(&self) -> u16;
}

impl LambdaInfo for Polynomial<Rational> {
    fn lowest_lambda(&self) -> u16 {
        0
    }
}

impl LambdaInfo for Polynomial<Symbolic> {
    fn lowest_lambda(&self) -> u16 {
        self.lambda_valuation().unwrap_or(0)
    }
}

fn first_failure<R: Coefficient>(
    expr: &Expr,
    basis: &[Term],
    sig: Signature,
    post: impl Fn(Polynomial<R>) -> Polynomial<R> + Sync,
) -> Result<Option<Witness>>
where
    Polynomial<R>: LambdaInfo,
{
    let found = basis.par_iter().find_map_first(|t| {
        let p = Polynomial::monomial(sig, t.mono, t.blade, R::one());
        match expr.apply(&p).map(&post) {
            Ok(img) if img.is_zero() => None,
            Ok(img) => Some(Ok(Witness { input: *t, lambda_order: img.lowest_lambda(), image: img.to_string() })),
            Err(e) => Some(Err(e)),
        }
    });
    found.transpose()
}

/// Parse and check in one step.
pub fn check_text(text: &str, n: usize, bound: usize) -> std::result::Result<IdentityReport, CheckError> {
    Ok(check_identity_zero(&parse(text)?, n, bound)?)
}

/// Named identity of a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteItem {
    pub name: String,
    pub tag: &'static str,
    pub expr: Expr,
}

impl SuiteItem {
    fn new(name: impl Into<String>, tag: &'static str, text: &str) -> Self {
        SuiteItem { name: name.into(), tag, expr: parse(text).expect("builtin identity parses") }
    }
}

pub const SUITES: [&str; 8] =
    ["core_relations", "osp12", "osp12_shifted", "powers_dpm", "displaced", "landau", "intertwining", "heisenberg"];

const TAG_CORE: &str = "X-D-E-Gamma relations";
const TAG_OSP: &str = "osp(1|2) relations";
const TAG_OSP_SHIFTED: &str = "shifted osp(1|2) relations";
const TAG_POWERS: &str = "ladder powers";
const TAG_DISPLACED: &str = "displaced intertwining";
const TAG_LADDER_LAMBDA: &str = "conjugated ladders";
const TAG_SPLITTING: &str = "Landau splitting";
const TAG_CONJUGATION: &str = "Landau conjugation";
const TAG_LANDAU_FORMS: &str = "Landau operator forms";
const TAG_INTERTWINING: &str = "Gaussian intertwining";
const TAG_HEISENBERG: &str = "Weyl-Heisenberg relations";

/// The relations among X, D, E, Γ, Δ, each written as an expression that must vanish.
pub fn core_relations() -> Vec<SuiteItem> {
    [
        ("{X,D} = -2E - n", "{X, D} + 2*E + n"),
        ("[E,D] = -D", "[E, D] + D"),
        ("[E,X] = X", "[E, X] - X"),
        ("[Delta,X] = 2D", "[Delta, X] - 2*D"),
        ("XD = -E - Gamma", "X*D + E + Gamma"),
        ("[D,X^2] = -2X", "[D, X^2] + 2*X"),
        ("[E,X^2] = 2X^2", "[E, X^2] - 2*X^2"),
        ("[E,Delta] = -2Delta", "[E, Delta] + 2*Delta"),
        ("[Delta,X^2] = -4E - 2n", "[Delta, X^2] + 4*E + 2*n"),
        ("Gamma = E + n + DX", "Gamma - E - n - D*X"),
        ("{Gamma,X} = (n-1)X", "{Gamma, X} - (n - 1)*X"),
        ("{Gamma,D} = (n-1)D", "{Gamma, D} - (n - 1)*D"),
        ("[Gamma,X^2] = 0", "[Gamma, X^2]"),
        ("[Gamma,Delta] = 0", "[Gamma, Delta]"),
        ("[E,Gamma] = 0", "[E, Gamma]"),
    ]
    .into_iter()
    .map(|(name, text)| SuiteItem::new(name, TAG_CORE, text))
    .collect()
}

/// Generators of osp(1|2); R± are odd and carry a factor i in the abstract
/// algebra, realized here without it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OspGen {
    PMinus,
    PPlus,
    Q,
    RPlus,
    RMinus,
}

impl OspGen {
    pub fn is_odd(self) -> bool {
        matches!(self, OspGen::RPlus | OspGen::RMinus)
    }
    fn label(self) -> &'static str {
        match self {
            OspGen::PMinus => "P-",
            OspGen::PPlus => "P+",
            OspGen::Q => "Q",
            OspGen::RPlus => "R+",
            OspGen::RMinus => "R-",
        }
    }
}

/// [a, b] = coeff·rhs in the abstract algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct OspRelation {
    pub a: OspGen,
    pub b: OspGen,
    pub coeff: Rational,
    pub rhs: Option<OspGen>,
}

/// The nine defining relations.
pub fn osp_relations() -> Vec<OspRelation> {
    use OspGen::*;
    let r = |a, b, c: Rational, rhs| OspRelation { a, b, coeff: c, rhs };
    vec![
        r(RPlus, PPlus, int(0), None),
        r(RPlus, PMinus, rat(1, 2), Some(RMinus)),
        r(Q, RPlus, rat(1, 2), Some(RPlus)),
        r(RMinus, PPlus, int(-1), Some(RPlus)),
        r(RMinus, PMinus, int(0), None),
        r(Q, RMinus, rat(-1, 2), Some(RMinus)),
        r(PMinus, PPlus, int(1), Some(Q)),
        r(Q, PPlus, int(1), Some(PPlus)),
        r(Q, PMinus, int(-1), Some(PMinus)),
    ]
}

/// Sign relating an abstract relation to its real form with R± = i·R̃±:
/// the left side carries i^{#odd in the bracket}, the right side i^{#odd rhs};
/// dividing through leaves i^{rhs − lhs} ∈ {±1}.
pub fn osp_sign(rel: &OspRelation) -> Result<i8> {
    let lhs = rel.a.is_odd() as i32 + rel.b.is_odd() as i32;
    let rhs = match rel.rhs {
        Some(g) if !num_traits::Zero::is_zero(&rel.coeff) => g.is_odd() as i32,
        _ => return Ok(1),
    };
    match (rhs - lhs).rem_euclid(4) {
        0 => Ok(1),
        2 => Ok(-1),
        _ => Err(Error::Malformed(format!(
            "relation [{}, {}] mixes real and imaginary parts",
            rel.a.label(),
            rel.b.label()
        ))),
    }
}

/// DSL texts for (P−, P+, Q, R+, R−).
pub struct OspRealization {
    pub p_minus: &'static str,
    pub p_plus: &'static str,
    pub q: &'static str,
    pub r_plus: &'static str,
    pub r_minus: &'static str,
}

pub const OSP_STANDARD: OspRealization =
    OspRealization { p_minus: "-Delta/4", p_plus: "X^2/2", q: "(E + n/2)/2", r_plus: "X", r_minus: "D" };

pub const OSP_SHIFTED: OspRealization = OspRealization {
    p_minus: "-Delta/4",
    p_plus: "(X - lambda + 2*lambda/n*Gamma)^2/2",
    q: "(E + n/2)/2 + lambda/(2*n)*D",
    r_plus: "X - lambda + 2*lambda/n*Gamma",
    r_minus: "D",
};

fn osp_items(real: &OspRealization, tag: &'static str) -> Vec<SuiteItem> {
    let gen = |g: OspGen| -> Expr {
        let text = match g {
            OspGen::PMinus => real.p_minus,
            OspGen::PPlus => real.p_plus,
            OspGen::Q => real.q,
            OspGen::RPlus => real.r_plus,
            OspGen::RMinus => real.r_minus,
        };
        parse(text).expect("builtin generator parses")
    };
    osp_relations()
        .iter()
        .map(|rel| {
            let sign = osp_sign(rel).expect("builtin relations are consistent");
            let coeff = &rel.coeff * int(sign as i64);
            let bracket = gen(rel.a).comm(gen(rel.b));
            let expr = match rel.rhs {
                Some(g) if !num_traits::Zero::is_zero(&coeff) => bracket.sub(Expr::rational(&coeff).mul(gen(g))),
                _ => bracket,
            };
            let rhs = match rel.rhs {
                Some(g) if !num_traits::Zero::is_zero(&coeff) => {
                    let c = pretty_rational(&coeff);
                    match c.as_str() {
                        "1" => g.label().to_string(),
                        "-1" => format!("-{}", g.label()),
                        _ => format!("{c}*{}", g.label()),
                    }
                }
                _ => "0".to_string(),
            };
            SuiteItem { name: format!("[{}, {}] = {}", rel.a.label(), rel.b.label(), rhs), tag, expr }
        })
        .collect()
}

pub fn osp12() -> Vec<SuiteItem> {
    osp_items(&OSP_STANDARD, TAG_OSP)
}

pub fn osp12_shifted() -> Vec<SuiteItem> {
    osp_items(&OSP_SHIFTED, TAG_OSP_SHIFTED)
}

/// [L−, (L+)^k] for k = 1..=k_max with L± = X ∓ D.
pub fn powers_dpm(k_max: u32) -> Vec<SuiteItem> {
    (1..=k_max)
        .map(|k| {
            let j = k / 2;
            let text = if k % 2 == 0 {
                format!("[X + D, (X - D)^{k}] + 4*{j}*(X - D)^{}", k - 1)
            } else if j == 0 {
                "[X + D, X - D] - 4*(Gamma - n/2)".to_string()
            } else {
                format!("[X + D, (X - D)^{k}] - 4*(X - D)^{}*(Gamma - (n/2 + {j}))", 2 * j)
            };
            SuiteItem::new(format!("[L-, (L+)^{k}]"), TAG_POWERS, &text)
        })
        .collect()
}

const DISPLACE: &str = "lambda/n*(D - X)";

pub fn displaced(order: u32) -> Vec<SuiteItem> {
    let e = format!("exp[{order}]({DISPLACE})");
    vec![
        SuiteItem::new(
            "exp(A)D = (D + 2lambda/n Gamma - lambda)exp(A)",
            TAG_DISPLACED,
            &format!("{e}*D - (D + 2*lambda/n*Gamma - lambda)*{e}"),
        ),
        SuiteItem::new(
            "exp(A)X = (X + 2lambda/n Gamma - lambda)exp(A)",
            TAG_DISPLACED,
            &format!("{e}*X - (X + 2*lambda/n*Gamma - lambda)*{e}"),
        ),
    ]
}

pub const RAISE_LAMBDA: &str = "X - (D + lambda) + 2*lambda/n*Gamma";
pub const LOWER_LAMBDA: &str = "X + (D - lambda) + 2*lambda/n*Gamma";
const CONJ_L: &str = "exp(lambda/n*D)";
const CONJ_R: &str = "exp(-lambda/n*D)";

pub fn landau() -> Vec<SuiteItem> {
    let h = hamiltonian_text(Hamiltonian::HLambda);
    let h0 = hamiltonian_text(Hamiltonian::H0);
    let mut items = vec![
        SuiteItem::new(
            "exp(lD/n) L+ exp(-lD/n) = L+_lambda",
            TAG_LADDER_LAMBDA,
            &format!("{CONJ_L}*(X - D)*{CONJ_R} - ({RAISE_LAMBDA})"),
        ),
        SuiteItem::new(
            "exp(lD/n) L- exp(-lD/n) = L-_lambda",
            TAG_LADDER_LAMBDA,
            &format!("{CONJ_L}*(X + D)*{CONJ_R} - ({LOWER_LAMBDA})"),
        ),
    ];
    items.extend(osp12_shifted());
    items.push(SuiteItem::new(
        "{L+_lambda, L-_lambda} = -4H_lambda",
        TAG_SPLITTING,
        &format!("{{{RAISE_LAMBDA}, {LOWER_LAMBDA}}} + 4*({h})"),
    ));
    items.push(SuiteItem::new(
        "H_lambda = exp(lD/n) H0 exp(-lD/n)",
        TAG_CONJUGATION,
        &format!("{h} - {CONJ_L}*({h0})*{CONJ_R}"),
    ));
    items.push(SuiteItem::new(
        "Helmholtz-plus-gauge form = factored form",
        TAG_LANDAU_FORMS,
        &format!("(-(Delta + lambda^2) - X^2)/2 - lambda/n*(X - 2*lambda*(Id - Gamma/n)*Gamma) - ({h})"),
    ));
    items
}

pub fn intertwining() -> Vec<SuiteItem> {
    let j0 = hamiltonian_text(Hamiltonian::J0);
    vec![
        SuiteItem::new(
            "exp(-Delta/4)(E + n/2) = J0 exp(-Delta/4)",
            TAG_INTERTWINING,
            &format!("exp(-Delta/4)*(E + n/2) - ({j0})*exp(-Delta/4)"),
        ),
        SuiteItem::new(
            "[X, exp(-Delta/4)] = D/2 exp(-Delta/4)",
            TAG_INTERTWINING,
            "[X, exp(-Delta/4)] - D/2*exp(-Delta/4)",
        ),
        SuiteItem::new(
            "(D - X)exp(-Delta/4) = exp(-Delta/4)(D/2 - X)",
            TAG_INTERTWINING,
            "(D - X)*exp(-Delta/4) - exp(-Delta/4)*(D/2 - X)",
        ),
        SuiteItem::new("[L-, L+] = 2(2Gamma - n)", TAG_INTERTWINING, "[X + D, X - D] - 2*(2*Gamma - n)"),
        SuiteItem::new("{L+, L-} = -4H0", TAG_INTERTWINING, "{X - D, X + D} + 4*(-Delta - X^2)/2"),
    ]
}

/// Weyl-Heisenberg relations for axes up to n and ladder powers up to `d_max`.
pub fn heisenberg(n: usize, d_max: u32) -> Vec<SuiteItem> {
    let mut items = Vec::new();
    for j in 1..=n {
        for k in 1..=n {
            let delta = if j == k { " - Id" } else { "" };
            items.push(SuiteItem::new(format!("[d_{j}, X_{k}]"), TAG_HEISENBERG, &format!("[d_{j}, X_{k}]{delta}")));
            items.push(SuiteItem::new(format!("[d_{j}, d_{k}]"), TAG_HEISENBERG, &format!("[d_{j}, d_{k}]")));
            for d in 1..=d_max {
                let rhs = if j == k { format!(" - 2*{d}*(X_{k} - d_{k})^{}", d - 1) } else { String::new() };
                items.push(SuiteItem::new(
                    format!("[A-_{j}, (A+_{k})^{d}]"),
                    TAG_HEISENBERG,
                    &format!("[X_{j} + d_{j}, (X_{k} - d_{k})^{d}]{rhs}"),
                ));
            }
        }
    }
    items
}

/// Items of a named suite for dimension n (the default truncation order for
/// `displaced` is 6).
pub fn builtin_suite(name: &str, n: usize) -> std::result::Result<Vec<SuiteItem>, CheckError> {
    Ok(match name {
        "core_relations" => core_relations(),
        "osp12" => osp12(),
        "osp12_shifted" => osp12_shifted(),
        "powers_dpm" => powers_dpm(6),
        "displaced" => displaced(6),
        "landau" => landau(),
        "intertwining" => intertwining(),
        "heisenberg" => heisenberg(n, 4),
        other => return Err(CheckError::UnknownSuite(other.to_string())),
    })
}

pub fn run_items(items: &[SuiteItem], n: usize, bound: usize) -> Result<Vec<IdentityReport>> {
    items
        .iter()
        .map(|item| {
            let mut r = check_identity_zero(&item.expr, n, bound)?;
            r.name = Some(item.name.clone());
            r.tag = Some(item.tag.to_string());
            Ok(r)
        })
        .collect()
}

pub fn run_suite(name: &str, n: usize, bound: usize) -> std::result::Result<Vec<IdentityReport>, CheckError> {
    Ok(run_items(&builtin_suite(name, n)?, n, bound)?)
}

/// Markdown table of reports.
pub fn markdown_table(reports: &[IdentityReport]) -> String {
    let mut s = String::from("| identity | group | n | bound | verdict | witness |\n|---|---|---|---|---|---|\n");
    for r in reports {
        let witness = r.witness().map(|w| format!("`{}` ↦ `{}`", w.input, w.image)).unwrap_or_default();
        s.push_str(&format!(
            "| `{}` | {} | {} | {} | {} | {} |\n",
            r.name.clone().unwrap_or_else(|| r.expression.clone()),
            r.tag.clone().unwrap_or_default().replace('|', "\\|"),
            r.n,
            r.bound,
            if r.is_zero() { "zero" } else { "NONZERO" },
            witness.replace('|', "\\|"),
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_instances() {
        assert!(check_text("{X,D} + 2*E + n", 3, 5).unwrap().is_zero());
        assert!(check_text("[E,X] - X", 3, 5).unwrap().is_zero());
    }

    #[test]
    fn sign_flipped_control_has_first_witness() {
        let r = check_text("[E,X] + X", 2, 3).unwrap();
        let w = r.witness().expect("nonzero");
        // the constant 1 is the first spanning function: ([E,X] + X)1 = 2x
        assert_eq!(w.input.to_string(), "1");
        assert_eq!(w.image, "2*x1*e1 + 2*x2*e2");
        let v = r.to_json();
        assert_eq!(v["verdict"], "nonzero");
        assert_eq!(v["witness"]["input"], "1");
    }

    #[test]
    fn osp_sign_table_is_trivial() {
        // i appears once on each side of every relation with an odd member
        for rel in osp_relations() {
            assert_eq!(osp_sign(&rel).unwrap(), 1);
        }
        // an odd-odd bracket equal to an even generator would need a sign flip
        let odd_odd = OspRelation { a: OspGen::RPlus, b: OspGen::RMinus, coeff: int(1), rhs: Some(OspGen::Q) };
        assert_eq!(osp_sign(&odd_odd).unwrap(), -1);
        let mixed = OspRelation { a: OspGen::RPlus, b: OspGen::Q, coeff: int(1), rhs: Some(OspGen::Q) };
        assert!(osp_sign(&mixed).is_err());
    }

    #[test]
    fn suites_parse_and_names() {
        for name in SUITES {
            assert!(!builtin_suite(name, 2).unwrap().is_empty(), "{name}");
        }
        assert!(matches!(builtin_suite("nope", 2), Err(CheckError::UnknownSuite(_))));
        assert_eq!(core_relations().len(), 15);
        assert_eq!(osp12().len(), 9);
    }

    #[test]
    fn truncation_order_is_picked_up() {
        let r = check_text("exp[2](lambda*D) - exp[3](lambda*D)", 2, 4).unwrap();
        assert_eq!(r.lambda_order, Some(2));
        assert!(r.is_zero());
    }

    #[test]
    fn markdown_lists_each_report() {
        let reports = run_items(&core_relations()[..2], 2, 2).unwrap();
        let md = markdown_table(&reports);
        assert_eq!(md.lines().count(), 4);
        assert!(md.contains("X-D-E-Gamma relations"));
    }
}
