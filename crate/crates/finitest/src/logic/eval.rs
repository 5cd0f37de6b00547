use crate::error::{Error, Result};
use crate::graph::ExplicitGraph;
use crate::logic::ast::{Formula, Sentence};

/// Vertex cap for the exact model checker. It recurses over all
/// assignments, so it is a ground-truth oracle for desk-scale graphs, not
/// a runtime component.
pub const EVAL_VERTEX_CAP: usize = 12;

struct Env<'g, 'f> {
    g: &'g ExplicitGraph,
    bindings: Vec<(&'f str, usize)>,
}

impl Env<'_, '_> {
    fn lookup(&self, name: &str) -> usize {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
            .expect("validated sentences have no free variables")
    }
}

fn eval<'f>(f: &'f Formula, env: &mut Env<'_, 'f>) -> bool {
    match f {
        Formula::Edge(a, b) => {
            let (va, vb) = (env.lookup(a), env.lookup(b));
            va != vb && env.g.has_edge(va, vb)
        }
        Formula::Eq(a, b) => env.lookup(a) == env.lookup(b),
        Formula::Not(inner) => !eval(inner, env),
        Formula::And(l, r) => eval(l, env) && eval(r, env),
        Formula::Or(l, r) => eval(l, env) || eval(r, env),
        Formula::Exists(v, body) => {
            (1..=env.g.vertex_count()).any(|x| with_binding(env, v, x, body))
        }
        Formula::Forall(v, body) => {
            (1..=env.g.vertex_count()).all(|x| with_binding(env, v, x, body))
        }
        Formula::CountGeq(m, v, body) => count_up_to(env, v, body, Some(*m)) >= *m,
        Formula::CountEq(m, v, body) => count_up_to(env, v, body, Some(*m + 1)) == *m,
        Formula::CountMod { j, l, var, body } => count_up_to(env, var, body, None) % *l == *j,
    }
}

fn with_binding<'f>(env: &mut Env<'_, 'f>, var: &'f str, value: usize, body: &'f Formula) -> bool {
    env.bindings.push((var, value));
    let r = eval(body, env);
    env.bindings.pop();
    r
}

fn count_up_to<'f>(
    env: &mut Env<'_, 'f>,
    var: &'f str,
    body: &'f Formula,
    stop: Option<u64>,
) -> u64 {
    let mut count = 0;
    for x in 1..=env.g.vertex_count() {
        if with_binding(env, var, x, body) {
            count += 1;
            if let Some(s) = stop {
                if count >= s {
                    return count;
                }
            }
        }
    }
    count
}

/// Evaluate a sentence on an explicit graph by direct semantic recursion.
pub fn eval_exact(g: &ExplicitGraph, s: &Sentence) -> Result<bool> {
    if g.vertex_count() > EVAL_VERTEX_CAP {
        return Err(Error::Resource(format!(
            "exact evaluation capped at {EVAL_VERTEX_CAP} vertices, got {}",
            g.vertex_count()
        )));
    }
    let mut env = Env { g, bindings: Vec::new() };
    Ok(eval(s.formula(), &mut env))
}

/// Evaluate a formula with one free variable bound to `vertex`. Used when
/// matching body predicates against catalog representatives.
pub fn eval_at(g: &ExplicitGraph, f: &Formula, var: &str, vertex: usize) -> Result<bool> {
    if g.vertex_count() > EVAL_VERTEX_CAP {
        return Err(Error::Resource(format!(
            "exact evaluation capped at {EVAL_VERTEX_CAP} vertices"
        )));
    }
    let mut env = Env { g, bindings: vec![(var, vertex)] };
    Ok(eval(f, &mut env))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse_sentence;

    fn phi() -> Sentence {
        // Isolated vertex and isolated edge both present.
        parse_sentence(
            "exists x (forall y (!E(x,y))) & exists x (exists y (E(x,y) & forall z ((!E(x,z) | z = y) & (!E(y,z) | z = x))))",
        )
        .unwrap()
    }

    fn psi() -> Sentence {
        parse_sentence(
            "!(exists x (forall y (!E(x,y))) & exists x (exists y (E(x,y) & forall z ((!E(x,z) | z = y) & (!E(y,z) | z = x)))))",
        )
        .unwrap()
    }

    fn disjoint_edges(k: usize) -> ExplicitGraph {
        let edges: Vec<(u32, u32)> = (0..k as u32).map(|i| (2 * i + 1, 2 * i + 2)).collect();
        ExplicitGraph::from_edges(2 * k, &edges).unwrap()
    }

    #[test]
    fn matching_families() {
        // Disjoint edges satisfy psi; add an isolated vertex and they no
        // longer do.
        let g4 = disjoint_edges(2);
        assert!(eval_exact(&g4, &psi()).unwrap());
        assert!(!eval_exact(&g4, &phi()).unwrap());

        let g5 = ExplicitGraph::from_edges(5, &[(1, 2), (3, 4)]).unwrap();
        assert!(!eval_exact(&g5, &psi()).unwrap());
        assert!(eval_exact(&g5, &phi()).unwrap());
    }

    #[test]
    fn empty_graph_quantifiers() {
        let empty = ExplicitGraph::empty(0);
        let some = parse_sentence("exists x (x = x)").unwrap();
        assert!(!eval_exact(&empty, &some).unwrap());
        let one = ExplicitGraph::empty(1);
        assert!(eval_exact(&one, &some).unwrap());
        // Universal statements hold vacuously.
        let all = parse_sentence("forall x (E(x,x))").unwrap();
        assert!(eval_exact(&empty, &all).unwrap());
    }

    #[test]
    fn counting_semantics() {
        let g = ExplicitGraph::from_edges(5, &[(1, 2), (3, 4)]).unwrap();
        let endpoints_geq = |m: u64| {
            parse_sentence(&format!("exists>={m} x (exists y (E(x,y)))")).unwrap()
        };
        assert!(eval_exact(&g, &endpoints_geq(4)).unwrap());
        assert!(!eval_exact(&g, &endpoints_geq(5)).unwrap());

        let exactly_one_isolated =
            parse_sentence("exists=1 x (forall y (!E(x,y)))").unwrap();
        assert!(eval_exact(&g, &exactly_one_isolated).unwrap());

        let n_even = parse_sentence("exists[0 mod 2] x (x = x)").unwrap();
        assert!(!eval_exact(&g, &n_even).unwrap());
        assert!(eval_exact(&disjoint_edges(3), &n_even).unwrap());

        let trivial = parse_sentence("exists[0 mod 1] x (x = x)").unwrap();
        assert!(eval_exact(&ExplicitGraph::empty(0), &trivial).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let big = ExplicitGraph::empty(13);
        let s = parse_sentence("exists x (x = x)").unwrap();
        assert!(matches!(eval_exact(&big, &s), Err(Error::Resource(_))));
    }
}
