//! Shared fixtures for the integration suites: the regression corpus of
//! paired sentence forms (textual, for the exact model checker, and Hanf
//! normal form, for the pipeline) plus exhaustive small-graph enumerators.

use finitest::catalog::TypeCatalog;
use finitest::graph::ExplicitGraph;
use finitest::logic::hanf::{AtomKind, BallLabel, HanfAtom, HnfSentence};

pub fn k1() -> ExplicitGraph {
    ExplicitGraph::empty(1)
}

pub fn k2() -> ExplicitGraph {
    ExplicitGraph::from_edges(2, &[(1, 2)]).unwrap()
}

pub fn p3() -> ExplicitGraph {
    ExplicitGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap()
}

pub fn k3() -> ExplicitGraph {
    ExplicitGraph::from_edges(3, &[(1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn label(graph: &ExplicitGraph, root: usize) -> BallLabel {
    BallLabel::from_rooted(graph, root).unwrap()
}

pub fn atom(kind: AtomKind, radius: u32, ball: BallLabel) -> HnfSentence {
    HnfSentence::Atom(HanfAtom { kind, radius, ball })
}

/// One regression case: a sentence in the textual grammar and the same
/// property as a hand-written Hanf-normal-form input.
pub struct Regression {
    pub name: &'static str,
    pub fo: &'static str,
    pub hnf: HnfSentence,
}

const PSI_TEXT: &str = "!(exists x (forall y (!E(x,y))) & exists x (exists y (E(x,y) & forall z ((!E(x,z) | z = y) & (!E(y,z) | z = x)))))";

/// The running example: no isolated vertex together with an isolated edge.
pub fn psi() -> Regression {
    Regression {
        name: "psi_no_vertex_and_edge",
        fo: PSI_TEXT,
        hnf: HnfSentence::Not(Box::new(HnfSentence::And(vec![
            atom(AtomKind::Geq(1), 1, label(&k1(), 1)),
            atom(AtomKind::Geq(1), 1, label(&k2(), 1)),
        ]))),
    }
}

/// Regression corpus for component bound 2, degree bound 1.
pub fn corpus_2_1() -> Vec<Regression> {
    let tv = || label(&k1(), 1);
    let te = || label(&k2(), 1);
    let mut out = vec![psi()];
    out.push(Regression {
        name: "phi_vertex_and_edge",
        fo: "exists x (forall y (!E(x,y))) & exists x (exists y (E(x,y) & forall z ((!E(x,z) | z = y) & (!E(y,z) | z = x))))",
        hnf: HnfSentence::And(vec![
            atom(AtomKind::Geq(1), 1, tv()),
            atom(AtomKind::Geq(1), 1, te()),
        ]),
    });
    out.push(Regression {
        name: "vertex_count_even",
        fo: "exists[0 mod 2] x (x = x)",
        hnf: HnfSentence::Or(vec![
            HnfSentence::And(vec![
                atom(AtomKind::Mod { j: 0, l: 2 }, 1, tv()),
                atom(AtomKind::Mod { j: 0, l: 2 }, 1, te()),
            ]),
            HnfSentence::And(vec![
                atom(AtomKind::Mod { j: 1, l: 2 }, 1, tv()),
                atom(AtomKind::Mod { j: 1, l: 2 }, 1, te()),
            ]),
        ]),
    });
    out.push(Regression {
        name: "exactly_one_isolated_vertex",
        fo: "exists=1 x (forall y (!E(x,y)))",
        hnf: atom(AtomKind::Eq(1), 1, tv()),
    });
    out.push(Regression {
        name: "at_least_two_edges",
        fo: "exists>=3 x (exists y (E(x,y)))",
        hnf: atom(AtomKind::Geq(3), 1, te()),
    });
    out.push(Regression {
        name: "odd_edge_count",
        fo: "exists[2 mod 4] x (exists y (E(x,y)))",
        hnf: atom(AtomKind::Mod { j: 2, l: 4 }, 1, te()),
    });
    out.push(Regression {
        name: "no_edges",
        fo: "forall x (forall y (!E(x,y)))",
        hnf: HnfSentence::Not(Box::new(atom(AtomKind::Geq(1), 1, te()))),
    });
    out.push(Regression {
        name: "one_vertex_and_odd_edges",
        fo: "exists=1 x (forall y (!E(x,y))) & exists[2 mod 4] x (exists y (E(x,y)))",
        hnf: HnfSentence::And(vec![
            atom(AtomKind::Eq(1), 1, tv()),
            atom(AtomKind::Mod { j: 2, l: 4 }, 1, te()),
        ]),
    });
    out.push(Regression {
        name: "exactly_two_edges_consistent_mod",
        fo: "exists=4 x (exists y (E(x,y))) & exists[0 mod 4] x (exists y (E(x,y)))",
        hnf: HnfSentence::And(vec![
            atom(AtomKind::Eq(4), 1, te()),
            atom(AtomKind::Mod { j: 0, l: 4 }, 1, te()),
        ]),
    });
    out
}

/// Regression corpus for component bound 3, degree bound 2. Some atoms
/// sit at radius 0 or 1 to exercise radius unification.
pub fn corpus_3_2() -> Vec<Regression> {
    vec![
        Regression {
            name: "some_vertex_exists",
            fo: "exists x (x = x)",
            hnf: atom(AtomKind::Geq(1), 0, label(&k1(), 1)),
        },
        Regression {
            name: "no_triangles",
            fo: "!(exists x (exists y (E(x,y) & exists z (E(y,z) & E(x,z)))))",
            hnf: HnfSentence::Not(Box::new(atom(AtomKind::Geq(1), 2, label(&k3(), 1)))),
        },
        Regression {
            name: "odd_path_count",
            fo: "exists[1 mod 2] x (exists y (exists z (E(x,y) & E(x,z) & !(y = z) & !E(y,z))))",
            hnf: atom(AtomKind::Mod { j: 1, l: 2 }, 2, label(&p3(), 2)),
        },
        Regression {
            name: "two_degree_one_vertices",
            fo: "exists>=2 x (exists y (E(x,y) & forall z (!E(x,z) | z = y)))",
            // Radius-1 ball of a degree-1 vertex is a rooted edge whether
            // or not the neighbor continues; lifts to two radius-2
            // supertypes.
            hnf: atom(AtomKind::Geq(2), 1, label(&k2(), 1)),
        },
        Regression {
            name: "vertex_count_one_mod_three",
            fo: "exists[1 mod 3] x (x = x)",
            hnf: atom(AtomKind::Mod { j: 1, l: 3 }, 0, label(&k1(), 1)),
        },
        Regression {
            name: "isolated_vertex_and_odd_isolated_edges",
            fo: "exists x (forall y (!E(x,y))) & exists[2 mod 4] x (exists y (E(x,y) & forall z ((!E(x,z) | z = y) & (!E(y,z) | z = x))))",
            hnf: HnfSentence::And(vec![
                atom(AtomKind::Geq(1), 2, label(&k1(), 1)),
                atom(AtomKind::Mod { j: 2, l: 4 }, 2, label(&k2(), 1)),
            ]),
        },
        // Degree-1 vertices come in pairs (edge endpoints and path ends),
        // so an odd count is unsatisfiable: every residue tuple fails the
        // per-type congruence against the orbit repetition.
        Regression {
            name: "odd_degree_one_count_unsatisfiable",
            fo: "exists[1 mod 2] x (exists y (E(x,y) & forall z (!E(x,z) | z = y)))",
            hnf: atom(AtomKind::Mod { j: 1, l: 2 }, 1, label(&k2(), 1)),
        },
        Regression {
            name: "exactly_three_vertices",
            fo: "exists=3 x (x = x)",
            hnf: atom(AtomKind::Eq(3), 0, label(&k1(), 1)),
        },
    ]
}

/// All labeled graphs in the degree-1, component-size-2 class on exactly
/// n vertices: partial matchings of {1..n}.
pub fn labeled_matchings(n: usize) -> Vec<ExplicitGraph> {
    fn extend(available: &[u32], edges: &mut Vec<(u32, u32)>, n: usize, out: &mut Vec<ExplicitGraph>) {
        match available.first() {
            None => out.push(ExplicitGraph::from_edges(n, edges).unwrap()),
            Some(&v) => {
                let rest: Vec<u32> = available[1..].to_vec();
                // v stays isolated.
                extend(&rest, edges, n, out);
                // v pairs with any later vertex.
                for (i, &u) in rest.iter().enumerate() {
                    let mut remaining = rest.clone();
                    remaining.remove(i);
                    edges.push((v, u));
                    extend(&remaining, edges, n, out);
                    edges.pop();
                }
            }
        }
    }
    let all: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::new();
    extend(&all, &mut Vec::new(), n, &mut out);
    out
}

/// Component censuses of every isomorphism class of the catalog's class
/// with at most max_n vertices.
pub fn class_censuses(catalog: &TypeCatalog, max_n: u64) -> Vec<Vec<u64>> {
    let sizes: Vec<u64> = catalog.component_types().iter().map(|t| t.size as u64).collect();
    let mut out = Vec::new();
    let mut counts = vec![0u64; sizes.len()];
    fn recurse(sizes: &[u64], counts: &mut Vec<u64>, idx: usize, budget: u64, out: &mut Vec<Vec<u64>>) {
        if idx == sizes.len() {
            out.push(counts.clone());
            return;
        }
        let mut z = 0;
        while z * sizes[idx] <= budget {
            counts[idx] = z;
            recurse(sizes, counts, idx + 1, budget - z * sizes[idx], out);
            z += 1;
        }
        counts[idx] = 0;
    }
    recurse(&sizes, &mut counts, 0, max_n, &mut out);
    out
}
