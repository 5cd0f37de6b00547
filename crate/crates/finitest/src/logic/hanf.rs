//! Hanf sentences: counting assertions about the number of vertices whose
//! radius-r ball has a given rooted isomorphism type, plus Boolean
//! structure over them. The ball predicate is evaluated by type counting
//! and never materialized as first-order syntax.

use crate::catalog::{canonical_code, CanonicalCode, TypeCatalog};
use crate::error::{Error, Result};
use crate::graph::{ExplicitGraph, RootedBall};
use serde::{Deserialize, Serialize};

/// A rooted ball type referenced by an atom: the canonical (rooted) code
/// plus a decoded representative.
#[derive(Debug, Clone)]
pub struct BallLabel {
    pub code: CanonicalCode,
    pub graph: ExplicitGraph,
    pub root: usize,
}

impl PartialEq for BallLabel {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}
impl Eq for BallLabel {}

impl BallLabel {
    pub fn from_rooted(graph: &ExplicitGraph, root: usize) -> Result<Self> {
        let code = canonical_code(graph, Some(root))?;
        let (canon_graph, canon_root) = code.decode()?;
        Ok(BallLabel { code, graph: canon_graph, root: canon_root.unwrap() })
    }

    pub fn from_code(code: CanonicalCode) -> Result<Self> {
        if !code.is_rooted() {
            return Err(Error::Argument("ball labels need rooted codes".into()));
        }
        let (graph, root) = code.decode()?;
        Ok(BallLabel { code, graph, root: root.unwrap() })
    }
}

/// Kinds of counting in a Hanf atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomKind {
    /// At least m vertices of the type.
    Geq(u64),
    /// Exactly m vertices of the type.
    Eq(u64),
    /// Vertex count congruent to j mod l.
    Mod { j: u64, l: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HanfAtom {
    pub kind: AtomKind,
    pub radius: u32,
    pub ball: BallLabel,
}

/// Boolean combinations of Hanf atoms, with explicit truth constants so
/// unrealizable types can collapse structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HnfSentence {
    True,
    False,
    Atom(HanfAtom),
    Not(Box<HnfSentence>),
    And(Vec<HnfSentence>),
    Or(Vec<HnfSentence>),
}

impl HnfSentence {
    pub fn atoms(&self) -> Vec<&HanfAtom> {
        let mut out = Vec::new();
        self.walk(&mut out);
        out
    }

    fn walk<'a>(&'a self, out: &mut Vec<&'a HanfAtom>) {
        match self {
            HnfSentence::Atom(a) => out.push(a),
            HnfSentence::Not(x) => x.walk(out),
            HnfSentence::And(xs) | HnfSentence::Or(xs) => xs.iter().for_each(|x| x.walk(out)),
            HnfSentence::True | HnfSentence::False => {}
        }
    }
}

/// Number of vertices of `g` whose radius-r ball matches the label.
pub fn ball_type_count(g: &ExplicitGraph, radius: u32, ball: &BallLabel) -> Result<u64> {
    let mut count = 0;
    for v in 1..=g.vertex_count() {
        let b = RootedBall::around(g, v, radius);
        if b.graph.vertex_count() != ball.graph.vertex_count()
            || b.graph.edge_count() != ball.graph.edge_count()
        {
            continue;
        }
        if canonical_code(&b.graph, Some(b.root))? == ball.code {
            count += 1;
        }
    }
    Ok(count)
}

/// Evaluate one Hanf atom on an explicit graph by isomorphism-type
/// counting.
pub fn eval_hanf_atom(g: &ExplicitGraph, atom: &HanfAtom) -> Result<bool> {
    let count = ball_type_count(g, atom.radius, &atom.ball)?;
    Ok(match atom.kind {
        AtomKind::Geq(m) => count >= m,
        AtomKind::Eq(m) => count == m,
        AtomKind::Mod { j, l } => count % l == j,
    })
}

/// Evaluate a whole Hanf-normal-form sentence on an explicit graph.
pub fn eval_hnf(g: &ExplicitGraph, s: &HnfSentence) -> Result<bool> {
    Ok(match s {
        HnfSentence::True => true,
        HnfSentence::False => false,
        HnfSentence::Atom(a) => eval_hanf_atom(g, a)?,
        HnfSentence::Not(x) => !eval_hnf(g, x)?,
        HnfSentence::And(xs) => {
            for x in xs {
                if !eval_hnf(g, x)? {
                    return Ok(false);
                }
            }
            true
        }
        HnfSentence::Or(xs) => {
            for x in xs {
                if eval_hnf(g, x)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

// ---------------------------------------------------------------------------
// JSON interchange:
// {"c":2,"d":1,"sentence":{"bool":"not","arg":{"bool":"and","args":[
//    {"bool":"atom","atom":{"kind":"geq","m":1,"r":1,"ball":0}}, ...]}}}
// Atoms reference ball types either by catalog index (radius-(c-1) types)
// or by rooted canonical code in hex.

#[derive(Debug, Serialize, Deserialize)]
pub struct HnfFile {
    pub c: u32,
    pub d: u32,
    pub sentence: HnfNodeJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "bool", rename_all = "lowercase")]
pub enum HnfNodeJson {
    And { args: Vec<HnfNodeJson> },
    Or { args: Vec<HnfNodeJson> },
    Not { arg: Box<HnfNodeJson> },
    Atom { atom: HanfAtomJson },
    True,
    False,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HanfAtomJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    pub r: u32,
    pub ball: serde_json::Value,
}

impl HnfFile {
    pub fn parse(text: &str) -> Result<HnfFile> {
        Ok(serde_json::from_str(text)?)
    }

    /// Resolve against a catalog built for the file's (c, d).
    pub fn resolve(&self, catalog: &TypeCatalog) -> Result<HnfSentence> {
        if catalog.c() != self.c || catalog.d() != self.d {
            return Err(Error::CatalogMismatch(format!(
                "file is for C^{}_{}, catalog is C^{}_{}",
                self.c,
                self.d,
                catalog.c(),
                catalog.d()
            )));
        }
        resolve_node(&self.sentence, catalog)
    }
}

fn resolve_node(node: &HnfNodeJson, catalog: &TypeCatalog) -> Result<HnfSentence> {
    Ok(match node {
        HnfNodeJson::True => HnfSentence::True,
        HnfNodeJson::False => HnfSentence::False,
        HnfNodeJson::And { args } => HnfSentence::And(
            args.iter().map(|a| resolve_node(a, catalog)).collect::<Result<_>>()?,
        ),
        HnfNodeJson::Or { args } => HnfSentence::Or(
            args.iter().map(|a| resolve_node(a, catalog)).collect::<Result<_>>()?,
        ),
        HnfNodeJson::Not { arg } => HnfSentence::Not(Box::new(resolve_node(arg, catalog)?)),
        HnfNodeJson::Atom { atom } => HnfSentence::Atom(resolve_atom(atom, catalog)?),
    })
}

fn resolve_atom(atom: &HanfAtomJson, catalog: &TypeCatalog) -> Result<HanfAtom> {
    let kind = match atom.kind.as_str() {
        "geq" => AtomKind::Geq(
            atom.m.ok_or_else(|| Error::Parse { pos: 0, msg: "geq atom needs m".into() })?,
        ),
        "eq" => AtomKind::Eq(
            atom.m.ok_or_else(|| Error::Parse { pos: 0, msg: "eq atom needs m".into() })?,
        ),
        "mod" => {
            let j = atom.j.ok_or_else(|| Error::Parse { pos: 0, msg: "mod atom needs j".into() })?;
            let l = atom.l.ok_or_else(|| Error::Parse { pos: 0, msg: "mod atom needs l".into() })?;
            if l == 0 || j >= l {
                return Err(Error::Parse { pos: 0, msg: format!("bad residue pair ({j},{l})") });
            }
            AtomKind::Mod { j, l }
        }
        other => return Err(Error::Parse { pos: 0, msg: format!("unknown atom kind: {other}") }),
    };
    let ball = match &atom.ball {
        serde_json::Value::Number(n) => {
            let idx = n
                .as_u64()
                .ok_or_else(|| Error::Parse { pos: 0, msg: "bad ball index".into() })?
                as usize;
            if atom.r < catalog.radius() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!(
                        "catalog ball indices refer to radius-{} types; use an explicit code for radius {}",
                        catalog.radius(),
                        atom.r
                    ),
                });
            }
            let bt = catalog.ball_types().get(idx).ok_or_else(|| {
                Error::Parse { pos: 0, msg: format!("ball index {idx} out of range") }
            })?;
            BallLabel::from_code(bt.code.clone())?
        }
        serde_json::Value::String(hex) => BallLabel::from_code(CanonicalCode::from_hex(hex)?)?,
        other => {
            return Err(Error::Parse { pos: 0, msg: format!("bad ball reference: {other}") })
        }
    };
    Ok(HanfAtom { kind, radius: atom.r, ball })
}

/// Serialize back to the interchange form, using catalog indices where the
/// type is in the catalog and hex codes otherwise.
pub fn to_json_node(s: &HnfSentence, catalog: &TypeCatalog) -> HnfNodeJson {
    match s {
        HnfSentence::True => HnfNodeJson::True,
        HnfSentence::False => HnfNodeJson::False,
        HnfSentence::And(xs) => {
            HnfNodeJson::And { args: xs.iter().map(|x| to_json_node(x, catalog)).collect() }
        }
        HnfSentence::Or(xs) => {
            HnfNodeJson::Or { args: xs.iter().map(|x| to_json_node(x, catalog)).collect() }
        }
        HnfSentence::Not(x) => HnfNodeJson::Not { arg: Box::new(to_json_node(x, catalog)) },
        HnfSentence::Atom(a) => {
            let (kind, m, j, l) = match a.kind {
                AtomKind::Geq(m) => ("geq", Some(m), None, None),
                AtomKind::Eq(m) => ("eq", Some(m), None, None),
                AtomKind::Mod { j, l } => ("mod", None, Some(j), Some(l)),
            };
            let ball = match catalog.ball_index(&a.ball.code) {
                Some(idx) if a.radius >= catalog.radius() => {
                    serde_json::Value::Number(idx.into())
                }
                _ => serde_json::Value::String(a.ball.code.to_hex()),
            };
            HnfNodeJson::Atom {
                atom: HanfAtomJson { kind: kind.into(), m, j, l, r: a.radius, ball },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> TypeCatalog {
        TypeCatalog::new(2, 1).unwrap()
    }

    fn edge_label() -> BallLabel {
        let e = ExplicitGraph::from_edges(2, &[(1, 2)]).unwrap();
        BallLabel::from_rooted(&e, 1).unwrap()
    }

    fn vertex_label() -> BallLabel {
        BallLabel::from_rooted(&ExplicitGraph::empty(1), 1).unwrap()
    }

    fn disjoint_edges(k: usize) -> ExplicitGraph {
        let edges: Vec<(u32, u32)> = (0..k as u32).map(|i| (2 * i + 1, 2 * i + 2)).collect();
        ExplicitGraph::from_edges(2 * k, &edges).unwrap()
    }

    #[test]
    fn atom_counting() {
        let g6 = disjoint_edges(3);
        let atom = HanfAtom { kind: AtomKind::Geq(6), radius: 1, ball: edge_label() };
        assert!(eval_hanf_atom(&g6, &atom).unwrap());
        let atom7 = HanfAtom { kind: AtomKind::Geq(7), radius: 1, ball: edge_label() };
        assert!(!eval_hanf_atom(&g6, &atom7).unwrap());

        // Everything is congruent to 0 mod 1.
        let trivial = HanfAtom { kind: AtomKind::Mod { j: 0, l: 1 }, radius: 1, ball: vertex_label() };
        assert!(eval_hanf_atom(&g6, &trivial).unwrap());

        let empty4 = ExplicitGraph::empty(4);
        let four = HanfAtom { kind: AtomKind::Eq(4), radius: 1, ball: vertex_label() };
        assert!(eval_hanf_atom(&empty4, &four).unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let cat = catalog();
        let text = r#"{"c":2,"d":1,"sentence":{"bool":"not","arg":{"bool":"and","args":[
            {"bool":"atom","atom":{"kind":"geq","m":1,"r":1,"ball":0}},
            {"bool":"atom","atom":{"kind":"geq","m":1,"r":1,"ball":1}}]}}}"#;
        let file = HnfFile::parse(text).unwrap();
        let hnf = file.resolve(&cat).unwrap();
        assert_eq!(hnf.atoms().len(), 2);

        let node = to_json_node(&hnf, &cat);
        let text2 = serde_json::to_string(&HnfFile { c: 2, d: 1, sentence: node }).unwrap();
        let again = HnfFile::parse(&text2).unwrap().resolve(&cat).unwrap();
        assert_eq!(again, hnf);
    }

    #[test]
    fn bad_references_rejected() {
        let cat = catalog();
        let bad_idx = r#"{"c":2,"d":1,"sentence":{"bool":"atom","atom":{"kind":"geq","m":1,"r":1,"ball":9}}}"#;
        assert!(HnfFile::parse(bad_idx).unwrap().resolve(&cat).is_err());
        let bad_cd = r#"{"c":3,"d":1,"sentence":{"bool":"true"}}"#;
        assert!(HnfFile::parse(bad_cd).unwrap().resolve(&cat).is_err());
        // Sub-radius atoms must use explicit codes, not indices.
        let sub = r#"{"c":2,"d":1,"sentence":{"bool":"atom","atom":{"kind":"geq","m":1,"r":0,"ball":0}}}"#;
        assert!(HnfFile::parse(sub).unwrap().resolve(&cat).is_err());
    }
}
