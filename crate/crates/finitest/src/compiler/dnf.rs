use crate::compiler::CompileOptions;
use crate::error::{Error, Result};
use crate::graph::ExplicitGraph;
use crate::logic::hanf::{eval_hanf_atom, AtomKind, HanfAtom, HnfSentence};

/// A possibly negated Hanf atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Literal {
    pub negated: bool,
    pub atom: HanfAtom,
}

impl Literal {
    fn key(&self) -> (bool, u8, u64, u64, u32, Vec<u8>) {
        let (tag, a, b) = match self.atom.kind {
            AtomKind::Geq(m) => (0u8, m, 0),
            AtomKind::Eq(m) => (1, m, 0),
            AtomKind::Mod { j, l } => (2, j, l),
        };
        (self.negated, tag, a, b, self.atom.radius, self.atom.ball.code.as_bytes().to_vec())
    }
}

/// A conjunction of literals. No literals means "true".
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Clause(pub Vec<Literal>);

impl Clause {
    /// Sort, dedup, and detect complementary pairs. Returns None when the
    /// clause is syntactically contradictory.
    fn normalized(mut self) -> Option<Clause> {
        self.0.sort_by_key(|l| l.key());
        self.0.dedup();
        for w in self.0.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.negated != b.negated && a.atom == b.atom {
                return None;
            }
        }
        Some(self)
    }
}

/// A disjunction of clauses. No clauses means "false".
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DnfSentence(pub Vec<Clause>);

impl DnfSentence {
    pub fn eval(&self, g: &ExplicitGraph) -> Result<bool> {
        for clause in &self.0 {
            let mut all = true;
            for lit in &clause.0 {
                if eval_hanf_atom(g, &lit.atom)? == lit.negated {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub(crate) fn dedup_clauses(&mut self) {
        self.0.sort_by(|a, b| {
            let ka: Vec<_> = a.0.iter().map(Literal::key).collect();
            let kb: Vec<_> = b.0.iter().map(Literal::key).collect();
            ka.cmp(&kb)
        });
        self.0.dedup();
    }
}

// Negation-normal intermediate: negations pushed onto atoms, exact-count
// atoms expanded into threshold pairs so downstream stages only see "at
// least" and modular literals.
enum Nnf {
    True,
    False,
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(s: &HnfSentence, negated: bool) -> Nnf {
    match s {
        HnfSentence::True => {
            if negated {
                Nnf::False
            } else {
                Nnf::True
            }
        }
        HnfSentence::False => {
            if negated {
                Nnf::True
            } else {
                Nnf::False
            }
        }
        HnfSentence::Not(inner) => nnf(inner, !negated),
        HnfSentence::And(xs) => {
            let parts = xs.iter().map(|x| nnf(x, negated)).collect();
            if negated {
                Nnf::Or(parts)
            } else {
                Nnf::And(parts)
            }
        }
        HnfSentence::Or(xs) => {
            let parts = xs.iter().map(|x| nnf(x, negated)).collect();
            if negated {
                Nnf::And(parts)
            } else {
                Nnf::Or(parts)
            }
        }
        HnfSentence::Atom(a) => match (negated, a.kind) {
            // A negated exact count splits along the threshold shortcut
            // (=m is ">=m and not >=m+1"); the positive form stays a
            // literal and the cap accounts for it directly.
            (true, AtomKind::Eq(m)) => {
                let geq_m = HanfAtom {
                    kind: AtomKind::Geq(m),
                    radius: a.radius,
                    ball: a.ball.clone(),
                };
                let geq_m1 = HanfAtom {
                    kind: AtomKind::Geq(m + 1),
                    radius: a.radius,
                    ball: a.ball.clone(),
                };
                Nnf::Or(vec![
                    Nnf::Lit(Literal { negated: true, atom: geq_m }),
                    Nnf::Lit(Literal { negated: false, atom: geq_m1 }),
                ])
            }
            _ => Nnf::Lit(Literal { negated, atom: a.clone() }),
        },
    }
}

fn distribute(node: &Nnf, guard: usize) -> Result<Vec<Clause>> {
    Ok(match node {
        Nnf::True => vec![Clause::default()],
        Nnf::False => Vec::new(),
        Nnf::Lit(l) => vec![Clause(vec![l.clone()])],
        Nnf::Or(parts) => {
            let mut out = Vec::new();
            for p in parts {
                out.extend(distribute(p, guard)?);
                if out.len() > guard {
                    return Err(Error::Resource(format!(
                        "dnf clause guard {guard} exceeded"
                    )));
                }
            }
            out
        }
        Nnf::And(parts) => {
            let mut acc = vec![Clause::default()];
            for p in parts {
                let rhs = distribute(p, guard)?;
                let mut next = Vec::with_capacity(acc.len() * rhs.len().max(1));
                for a in &acc {
                    for b in &rhs {
                        let mut merged = a.clone();
                        merged.0.extend(b.0.iter().cloned());
                        next.push(merged);
                        if next.len() > guard {
                            return Err(Error::Resource(format!(
                                "dnf clause guard {guard} exceeded"
                            )));
                        }
                    }
                }
                acc = next;
            }
            acc
        }
    })
}

/// Convert a Hanf-normal-form sentence into disjunctive normal form over
/// threshold and modular literals. Exact-count atoms are expanded via the
/// threshold shortcut; syntactically contradictory clauses are dropped.
pub fn to_dnf(s: &HnfSentence, opts: &CompileOptions) -> Result<DnfSentence> {
    let normal = nnf(s, false);
    let clauses = distribute(&normal, opts.clause_guard)?;
    let mut out = DnfSentence(clauses.into_iter().filter_map(Clause::normalized).collect());
    out.dedup_clauses();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::hanf::BallLabel;

    fn atom(kind: AtomKind) -> HnfSentence {
        let ball =
            BallLabel::from_rooted(&ExplicitGraph::empty(1), 1).unwrap();
        HnfSentence::Atom(HanfAtom { kind, radius: 1, ball })
    }

    fn edge_atom(kind: AtomKind) -> HnfSentence {
        let e = ExplicitGraph::from_edges(2, &[(1, 2)]).unwrap();
        let ball = BallLabel::from_rooted(&e, 1).unwrap();
        HnfSentence::Atom(HanfAtom { kind, radius: 1, ball })
    }

    #[test]
    fn single_atom_single_clause() {
        let d = to_dnf(&atom(AtomKind::Geq(1)), &CompileOptions::default()).unwrap();
        assert_eq!(d.0.len(), 1);
        assert_eq!(d.0[0].0.len(), 1);
    }

    #[test]
    fn distribution() {
        // (A | B) & C -> {A,C}, {B,C}
        let a = atom(AtomKind::Geq(1));
        let b = atom(AtomKind::Geq(2));
        let c = edge_atom(AtomKind::Geq(1));
        let s = HnfSentence::And(vec![HnfSentence::Or(vec![a, b]), c]);
        let d = to_dnf(&s, &CompileOptions::default()).unwrap();
        assert_eq!(d.0.len(), 2);
        assert!(d.0.iter().all(|cl| cl.0.len() == 2));
    }

    #[test]
    fn de_morgan() {
        // !(A & B) -> {!A}, {!B}
        let a = atom(AtomKind::Geq(1));
        let b = edge_atom(AtomKind::Geq(1));
        let s = HnfSentence::Not(Box::new(HnfSentence::And(vec![a, b])));
        let d = to_dnf(&s, &CompileOptions::default()).unwrap();
        assert_eq!(d.0.len(), 2);
        assert!(d.0.iter().all(|cl| cl.0.len() == 1 && cl.0[0].negated));
    }

    #[test]
    fn contradictory_clause_dropped() {
        let a = atom(AtomKind::Geq(2));
        let s = HnfSentence::And(vec![a.clone(), HnfSentence::Not(Box::new(a))]);
        let d = to_dnf(&s, &CompileOptions::default()).unwrap();
        assert!(d.0.is_empty());
    }

    #[test]
    fn dnf_preserves_truth_constants() {
        let t = to_dnf(&HnfSentence::True, &CompileOptions::default()).unwrap();
        assert_eq!(t.0.len(), 1);
        assert!(t.0[0].0.is_empty());
        let f = to_dnf(&HnfSentence::False, &CompileOptions::default()).unwrap();
        assert!(f.0.is_empty());
    }

    #[test]
    fn exact_count_literals() {
        // Positive exact counts stay literals; negated ones split along
        // the threshold shortcut.
        let s = atom(AtomKind::Eq(3));
        let d = to_dnf(&s, &CompileOptions::default()).unwrap();
        assert_eq!(d.0.len(), 1);
        assert_eq!(d.0[0].0.len(), 1);
        assert_eq!(d.0[0].0[0].atom.kind, AtomKind::Eq(3));
        assert!(!d.0[0].0[0].negated);

        let neg = HnfSentence::Not(Box::new(atom(AtomKind::Eq(3))));
        let d = to_dnf(&neg, &CompileOptions::default()).unwrap();
        assert_eq!(d.0.len(), 2);
        assert!(d
            .0
            .iter()
            .any(|c| c.0[0].negated && c.0[0].atom.kind == AtomKind::Geq(3)));
        assert!(d
            .0
            .iter()
            .any(|c| !c.0[0].negated && c.0[0].atom.kind == AtomKind::Geq(4)));
    }
}
