use crate::error::{Error, Result};
use std::fmt;

/// First-order formulas over graphs: the edge relation, equality, Boolean
/// connectives, plain quantifiers, threshold counting (`exists>=m`,
/// `exists=m`) and modular counting (`exists[j mod l]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Edge(String, String),
    Eq(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    /// At least m witnesses.
    CountGeq(u64, String, Box<Formula>),
    /// Exactly m witnesses.
    CountEq(u64, String, Box<Formula>),
    /// Number of witnesses congruent to j mod l.
    CountMod { j: u64, l: u64, var: String, body: Box<Formula> },
}

/// A formula with no free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence(Formula);

impl Sentence {
    pub fn new(formula: Formula) -> Result<Self> {
        let mut scope = Vec::new();
        check_closed(&formula, &mut scope)?;
        check_moduli(&formula)?;
        if quantifier_depth(&formula) > 12 {
            return Err(Error::Resource("quantifier depth exceeds 12".into()));
        }
        Ok(Sentence(formula))
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }
}

fn check_closed(f: &Formula, scope: &mut Vec<String>) -> Result<()> {
    let check_var = |v: &str, scope: &Vec<String>| -> Result<()> {
        if scope.iter().any(|s| s == v) {
            Ok(())
        } else {
            Err(Error::Parse { pos: 0, msg: format!("free variable: {v}") })
        }
    };
    match f {
        Formula::Edge(a, b) | Formula::Eq(a, b) => {
            check_var(a, scope)?;
            check_var(b, scope)
        }
        Formula::Not(inner) => check_closed(inner, scope),
        Formula::And(l, r) | Formula::Or(l, r) => {
            check_closed(l, scope)?;
            check_closed(r, scope)
        }
        Formula::Exists(v, body)
        | Formula::Forall(v, body)
        | Formula::CountGeq(_, v, body)
        | Formula::CountEq(_, v, body)
        | Formula::CountMod { var: v, body, .. } => {
            scope.push(v.clone());
            let r = check_closed(body, scope);
            scope.pop();
            r
        }
    }
}

fn check_moduli(f: &Formula) -> Result<()> {
    match f {
        Formula::CountMod { j, l, body, .. } => {
            if *l == 0 {
                return Err(Error::Parse { pos: 0, msg: "modulus must be >= 1".into() });
            }
            if j >= l {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("residue {j} must be below modulus {l}"),
                });
            }
            check_moduli(body)
        }
        Formula::Not(inner) => check_moduli(inner),
        Formula::And(l, r) | Formula::Or(l, r) => {
            check_moduli(l)?;
            check_moduli(r)
        }
        Formula::Exists(_, body)
        | Formula::Forall(_, body)
        | Formula::CountGeq(_, _, body)
        | Formula::CountEq(_, _, body) => check_moduli(body),
        Formula::Edge(..) | Formula::Eq(..) => Ok(()),
    }
}

pub fn quantifier_depth(f: &Formula) -> usize {
    match f {
        Formula::Edge(..) | Formula::Eq(..) => 0,
        Formula::Not(inner) => quantifier_depth(inner),
        Formula::And(l, r) | Formula::Or(l, r) => quantifier_depth(l).max(quantifier_depth(r)),
        Formula::Exists(_, body)
        | Formula::Forall(_, body)
        | Formula::CountGeq(_, _, body)
        | Formula::CountEq(_, _, body)
        | Formula::CountMod { body, .. } => 1 + quantifier_depth(body),
    }
}

// Precedence levels for printing: Or < And < unary.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

fn fmt_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let p = precedence(f);
    let parens = p < min;
    if parens {
        write!(out, "(")?;
    }
    match f {
        Formula::Edge(a, b) => write!(out, "E({a},{b})")?,
        Formula::Eq(a, b) => write!(out, "{a} = {b}")?,
        Formula::Not(inner) => {
            write!(out, "!")?;
            fmt_at(inner, 3, out)?;
        }
        Formula::And(l, r) => {
            fmt_at(l, 2, out)?;
            write!(out, " & ")?;
            fmt_at(r, 3, out)?;
        }
        Formula::Or(l, r) => {
            fmt_at(l, 1, out)?;
            write!(out, " | ")?;
            fmt_at(r, 2, out)?;
        }
        Formula::Exists(v, body) => {
            write!(out, "exists {v} (")?;
            fmt_at(body, 0, out)?;
            write!(out, ")")?;
        }
        Formula::Forall(v, body) => {
            write!(out, "forall {v} (")?;
            fmt_at(body, 0, out)?;
            write!(out, ")")?;
        }
        Formula::CountGeq(m, v, body) => {
            write!(out, "exists>={m} {v} (")?;
            fmt_at(body, 0, out)?;
            write!(out, ")")?;
        }
        Formula::CountEq(m, v, body) => {
            write!(out, "exists={m} {v} (")?;
            fmt_at(body, 0, out)?;
            write!(out, ")")?;
        }
        Formula::CountMod { j, l, var, body } => {
            write!(out, "exists[{j} mod {l}] {var} (")?;
            fmt_at(body, 0, out)?;
            write!(out, ")")?;
        }
    }
    if parens {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_at(self, 0, f)
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
