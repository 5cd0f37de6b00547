use crate::catalog::{Chv, TypeCatalog};
use crate::error::{Error, Result};
use crate::graph::{read_full, ExplicitGraph, NeighborOracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::atomic::AtomicU64;

/// Named graph families. The two paired-vertex families answer queries
/// arithmetically, so n can be enormous without materialization.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// Vertices 2i-1 and 2i joined by an edge; n must be even.
    Edges { n: u64 },
    /// Same, plus vertex n isolated; n must be odd.
    EdgesPlusVertex { n: u64 },
    /// Disjoint union realizing the given per-type counts.
    FromChv { counts: Vec<u64> },
    /// Components drawn by weighted choice until n vertices fit exactly.
    RandomMix { n: u64, weights: Vec<f64>, seed: u64 },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Edges { .. } => "EDGES",
            FamilySpec::EdgesPlusVertex { .. } => "EDGES_PLUS_VERTEX",
            FamilySpec::FromChv { .. } => "FROM_CHV",
            FamilySpec::RandomMix { .. } => "RANDOM_MIX",
        }
    }

    /// Compact form: `NAME:key=value,...` with `chv`/`w` lists separated
    /// by `+`, e.g. `EDGES:n=1000000` or `FROM_CHV:chv=1+3`.
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let (name, params) = text.split_once(':').unwrap_or((text, ""));
        let mut n: Option<u64> = None;
        let mut seed: u64 = 0;
        let mut counts: Option<Vec<u64>> = None;
        let mut weights: Option<Vec<f64>> = None;
        for part in params.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("family parameter without '=': {part}"),
            })?;
            match key {
                "n" => n = Some(value.parse().map_err(|_| bad_param(part))?),
                "seed" => seed = value.parse().map_err(|_| bad_param(part))?,
                "chv" => {
                    counts = Some(
                        value
                            .split('+')
                            .map(|x| x.parse().map_err(|_| bad_param(part)))
                            .collect::<Result<_>>()?,
                    )
                }
                "w" => {
                    weights = Some(
                        value
                            .split('+')
                            .map(|x| x.parse().map_err(|_| bad_param(part)))
                            .collect::<Result<_>>()?,
                    )
                }
                _ => return Err(bad_param(part)),
            }
        }
        let need_n = || n.ok_or_else(|| Error::Parse { pos: 0, msg: format!("{name} needs n=") });
        Ok(match name {
            "EDGES" => FamilySpec::Edges { n: need_n()? },
            "EDGES_PLUS_VERTEX" => FamilySpec::EdgesPlusVertex { n: need_n()? },
            "FROM_CHV" => FamilySpec::FromChv {
                counts: counts.ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: "FROM_CHV needs chv=z1+z2+...".into(),
                })?,
            },
            "RANDOM_MIX" => FamilySpec::RandomMix {
                n: need_n()?,
                weights: weights.ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: "RANDOM_MIX needs w=w1+w2+...".into(),
                })?,
                seed,
            },
            other => {
                return Err(Error::Parse { pos: 0, msg: format!("unknown family: {other}") })
            }
        })
    }
}

fn bad_param(part: &str) -> Error {
    Error::Parse { pos: 0, msg: format!("bad family parameter: {part}") }
}

enum Layout {
    /// 2i-1 <-> 2i pairs, optionally with a trailing isolated vertex.
    Pairs { paired: u64 },
    /// Consecutive blocks of component representatives in catalog order.
    Blocks { spans: Vec<(u64, u64, Vec<Vec<u64>>)> },
}

/// A generated family instance: a neighbor oracle with known component
/// census.
pub struct Family {
    pub spec: FamilySpec,
    /// Component census, in catalog order.
    pub counts: Vec<u64>,
    /// Vertices added by mix padding, when remainder fitting failed.
    pub padded: u64,
    n: u64,
    d: u32,
    layout: Layout,
    counter: AtomicU64,
}

impl Family {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn chv(&self) -> Chv {
        Chv(self.counts.clone())
    }

    pub fn materialize(&self) -> Result<ExplicitGraph> {
        read_full(self)
    }
}

impl NeighborOracle for Family {
    fn vertex_count(&self) -> u64 {
        self.n
    }

    fn degree_bound(&self) -> u32 {
        self.d
    }

    fn neighbor_uncounted(&self, v: u64, port: u32) -> Option<u64> {
        match &self.layout {
            Layout::Pairs { paired } => {
                if port != 1 || v > *paired {
                    return None;
                }
                Some(if v % 2 == 1 { v + 1 } else { v - 1 })
            }
            Layout::Blocks { spans } => {
                // Find the block by span start (spans are few).
                let mut base = 0u64;
                for (total, size, adjacency) in spans {
                    if v <= base + total {
                        let local = (v - base - 1) % size;
                        let comp_start = v - local;
                        let neighbors = &adjacency[local as usize];
                        return neighbors
                            .get(port as usize - 1)
                            .map(|&w| comp_start + w - 1);
                    }
                    base += total;
                }
                None
            }
        }
    }

    fn query_counter(&self) -> &AtomicU64 {
        &self.counter
    }
}

fn blocks_layout(counts: &[u64], catalog: &TypeCatalog) -> (u64, Layout) {
    let mut spans = Vec::new();
    let mut n = 0u64;
    for (t, &z) in counts.iter().enumerate() {
        if z == 0 {
            continue;
        }
        let rep = &catalog.component_types()[t].representative;
        let size = rep.vertex_count() as u64;
        let adjacency: Vec<Vec<u64>> = (1..=rep.vertex_count())
            .map(|v| rep.neighbors(v).iter().map(|&w| w as u64).collect())
            .collect();
        spans.push((z * size, size, adjacency));
        n += z * size;
    }
    (n, Layout::Blocks { spans })
}

/// Instantiate a family against a catalog. The generated instance always
/// passes membership for the catalog's (c, d).
pub fn gen_family(spec: &FamilySpec, catalog: &TypeCatalog) -> Result<Family> {
    let vertex_type = catalog
        .component_types()
        .iter()
        .position(|t| t.size == 1)
        .expect("every catalog has the one-vertex type");
    let edge_type = catalog.component_types().iter().position(|t| {
        t.size == 2 && t.representative.edge_count() == 1
    });
    match spec {
        FamilySpec::Edges { n } => {
            if n % 2 != 0 {
                return Err(Error::Argument(format!("EDGES needs even n, got {n}")));
            }
            let edge_type = edge_type
                .ok_or_else(|| Error::Argument("catalog has no edge component type".into()))?;
            let mut counts = vec![0u64; catalog.component_types().len()];
            counts[edge_type] = n / 2;
            Ok(Family {
                spec: spec.clone(),
                counts,
                padded: 0,
                n: *n,
                d: catalog.d(),
                layout: Layout::Pairs { paired: *n },
                counter: AtomicU64::new(0),
            })
        }
        FamilySpec::EdgesPlusVertex { n } => {
            if n % 2 != 1 {
                return Err(Error::Argument(format!(
                    "EDGES_PLUS_VERTEX needs odd n, got {n}"
                )));
            }
            let edge_type = edge_type
                .ok_or_else(|| Error::Argument("catalog has no edge component type".into()))?;
            let mut counts = vec![0u64; catalog.component_types().len()];
            counts[edge_type] = n / 2;
            counts[vertex_type] = 1;
            Ok(Family {
                spec: spec.clone(),
                counts,
                padded: 0,
                n: *n,
                d: catalog.d(),
                layout: Layout::Pairs { paired: n - 1 },
                counter: AtomicU64::new(0),
            })
        }
        FamilySpec::FromChv { counts } => {
            if counts.len() != catalog.component_types().len() {
                return Err(Error::CatalogMismatch(format!(
                    "chv has {} entries, catalog has {} component types",
                    counts.len(),
                    catalog.component_types().len()
                )));
            }
            let (n, layout) = blocks_layout(counts, catalog);
            Ok(Family {
                spec: spec.clone(),
                counts: counts.clone(),
                padded: 0,
                n,
                d: catalog.d(),
                layout,
                counter: AtomicU64::new(0),
            })
        }
        FamilySpec::RandomMix { n, weights, seed } => {
            let m = catalog.component_types().len();
            if weights.len() != m {
                return Err(Error::CatalogMismatch(format!(
                    "{} weights for {} component types",
                    weights.len(),
                    m
                )));
            }
            if weights.iter().any(|w| *w < 0.0) || weights.iter().sum::<f64>() <= 0.0 {
                return Err(Error::Argument("mix weights must be nonnegative, not all zero".into()));
            }
            let sizes: Vec<u64> =
                catalog.component_types().iter().map(|t| t.size as u64).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut counts = vec![0u64; m];
            let mut padded = 0u64;
            'attempts: for attempt in 0..=100 {
                counts.iter_mut().for_each(|z| *z = 0);
                let mut remaining = *n;
                while remaining > 0 {
                    let fitting: Vec<usize> = (0..m)
                        .filter(|&t| sizes[t] <= remaining && weights[t] > 0.0)
                        .collect();
                    if fitting.is_empty() {
                        if attempt == 100 {
                            // Pad with the smallest type that still fits.
                            let smallest = (0..m)
                                .filter(|&t| sizes[t] <= remaining)
                                .min_by_key(|&t| sizes[t])
                                .expect("the one-vertex type always fits");
                            let fill = remaining / sizes[smallest];
                            counts[smallest] += fill;
                            padded += fill * sizes[smallest];
                            remaining -= fill * sizes[smallest];
                            debug_assert_eq!(remaining, 0);
                            break 'attempts;
                        }
                        continue 'attempts;
                    }
                    let total: f64 = fitting.iter().map(|&t| weights[t]).sum();
                    let mut pick = rng.gen_range(0.0..total);
                    let mut chosen = fitting[0];
                    for &t in &fitting {
                        if pick < weights[t] {
                            chosen = t;
                            break;
                        }
                        pick -= weights[t];
                    }
                    counts[chosen] += 1;
                    remaining -= sizes[chosen];
                }
                break;
            }
            let (total, layout) = blocks_layout(&counts, catalog);
            debug_assert_eq!(total, *n);
            Ok(Family {
                spec: spec.clone(),
                counts,
                padded,
                n: *n,
                d: catalog.d(),
                layout,
                counter: AtomicU64::new(0),
            })
        }
    }
}
