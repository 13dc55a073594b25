//! Exhaustive subloop enumeration, covering relations, global lattice
//! properties, and the annotated lattice graph with its JSON/DOT exports.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::loopcore::{generating_sequence, CayleyTable, IsoType, SubloopSet};

/// Every product-closed subset containing the identity, found by
/// saturation: seed with all cyclic subloops, then repeatedly extend each
/// known proper subloop by each outside element and close. Complete
/// because every subloop of order > 1 arises as the closure of a maximal
/// proper subloop plus one element.
///
/// The result is sorted lexicographically and includes the trivial subloop
/// and the full element set.
pub fn enumerate_subloops(table: &CayleyTable) -> Vec<SubloopSet> {
    let n = table.n();
    let full = SubloopSet::full(n);
    // A generating set of the whole table lets closures bail out early once
    // they absorb it; closure monotonicity makes the shortcut sound.
    let gen_set = generating_sequence(table);

    let mut known: HashSet<SubloopSet> = HashSet::new();
    known.insert(full.clone());
    let mut frontier: Vec<SubloopSet> = Vec::new();
    let push_new =
        |set: SubloopSet, known: &mut HashSet<SubloopSet>, frontier: &mut Vec<SubloopSet>| {
            let proper = set.len() < n;
            if known.insert(set.clone()) && proper {
                frontier.push(set);
            }
        };
    push_new(table.closure(&[]), &mut known, &mut frontier);
    for x in 0..n {
        push_new(table.closure(&[x]), &mut known, &mut frontier);
    }
    while !frontier.is_empty() {
        let (gen_set, full) = (&gen_set, &full);
        let extensions: Vec<SubloopSet> = frontier
            .par_iter()
            .flat_map_iter(|h| {
                (0..n)
                    .filter(|&g| !h.contains(g))
                    .map(move |g| table.closure_with_generating_set(h, g, gen_set, full))
            })
            .collect();
        frontier = Vec::new();
        for set in extensions {
            push_new(set, &mut known, &mut frontier);
        }
    }
    let mut subloops: Vec<SubloopSet> = known.into_iter().collect();
    subloops.sort();
    subloops
}

/// Strict-containment and covering structure over an enumerated family.
pub struct Covers {
    /// For each subloop, the indices of its strict subsets in the family.
    pub strict_subs: Vec<Vec<usize>>,
    /// Covering pairs: `downs[b]` lists the maximal subloops of `b`,
    /// `ups[a]` the minimal overloops of `a`.
    pub downs: Vec<Vec<usize>>,
    pub ups: Vec<Vec<usize>>,
}

pub fn covering_relations(subloops: &[SubloopSet]) -> Covers {
    let m = subloops.len();
    let strict_subs: Vec<Vec<usize>> = (0..m)
        .into_par_iter()
        .map(|b| {
            (0..m)
                .filter(|&a| {
                    a != b
                        && subloops[a].len() < subloops[b].len()
                        && subloops[a].is_subset(&subloops[b])
                })
                .collect()
        })
        .collect();
    let downs: Vec<Vec<usize>> = (0..m)
        .into_par_iter()
        .map(|b| {
            let subs = &strict_subs[b];
            subs.iter()
                .copied()
                .filter(|&a| {
                    !subs.iter().any(|&x| {
                        x != a
                            && subloops[a].len() < subloops[x].len()
                            && subloops[a].is_subset(&subloops[x])
                    })
                })
                .collect()
        })
        .collect();
    let mut ups: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (b, maximal_subs) in downs.iter().enumerate() {
        for &a in maximal_subs {
            ups[a].push(b);
        }
    }
    Covers {
        strict_subs,
        downs,
        ups,
    }
}

/// The immediate neighbors of a subloop: its maximal subloops and minimal
/// overloops.
pub fn neighbors(covers: &Covers, a: usize) -> (&[usize], &[usize]) {
    (&covers.downs[a], &covers.ups[a])
}

/// Strong Lagrange property over the enumerated family: for every
/// containment pair the smaller order divides the larger (the full loop
/// included).
pub fn check_strong_lagrange(subloops: &[SubloopSet], covers: &Covers) -> bool {
    (0..subloops.len()).all(|b| {
        covers.strict_subs[b]
            .iter()
            .all(|&a| subloops[b].len().is_multiple_of(subloops[a].len()))
    })
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// Weak Cauchy property: a subloop of order p for every prime p dividing
/// the loop order. Fails for the ambient loop because 5 divides 120 yet no
/// order-5 subloop exists.
pub fn check_weak_cauchy(n: usize, subloops: &[SubloopSet]) -> bool {
    prime_divisors(n)
        .into_iter()
        .all(|p| subloops.iter().any(|s| s.len() == p))
}

/// A node of the orbit-level lattice graph: one orbit representative, with
/// the trivial subloop and the full loop as bottom and top.
#[derive(Clone, Serialize)]
pub struct LatticeNode {
    pub id: usize,
    pub order: usize,
    #[serde(rename = "type")]
    pub iso_type: String,
    pub orbit: String,
    pub size: usize,
    pub representative: Vec<usize>,
}

/// An edge between orbit representatives. `l_glb` is the number of copies
/// of the lower type inside one copy of the upper type; `l_orb` counts
/// upper-orbit copies above the lower representative. `maximal` marks
/// covering (thick) edges.
#[derive(Clone, Serialize)]
pub struct LatticeEdge {
    pub from: usize,
    pub to: usize,
    pub l_glb: usize,
    pub l_orb: usize,
    pub maximal: bool,
}

#[derive(Clone, Serialize)]
pub struct LatticeGraph {
    pub elements: usize,
    pub nodes: Vec<LatticeNode>,
    pub edges: Vec<LatticeEdge>,
}

/// Builds the orbit-level lattice graph: one node per orbit (the trivial
/// subloop at the bottom, the whole loop at the top), edges between
/// nontrivial proper representatives whenever some copy in the upper orbit
/// contains the lower representative, and edges to the bottom/top exactly
/// when a covering pair exists. Every edge records the abstract count
/// `l[A:B]`, the orbit count `l_orb[A:B:C]`, and whether some copy of the
/// lower orbit is maximal in a copy of the upper one.
pub fn figure2(p: &crate::pipeline::Pipeline) -> LatticeGraph {
    let orbits = &p.orbits.orbits;
    let n_orbits = orbits.len();
    let mut node_order: Vec<usize> = (0..n_orbits).collect();
    node_order.sort_by_key(|&o| {
        (
            p.subloops[orbits[o].representative].len(),
            p.orbit_labels[o].clone(),
        )
    });
    let node_id: Vec<usize> = {
        let mut id = vec![0; n_orbits];
        for (k, &o) in node_order.iter().enumerate() {
            id[o] = k;
        }
        id
    };
    let nodes: Vec<LatticeNode> = node_order
        .iter()
        .map(|&o| {
            let rep = orbits[o].representative;
            LatticeNode {
                id: node_id[o],
                order: p.subloops[rep].len(),
                iso_type: p.orbit_types[o].to_string(),
                orbit: p.orbit_labels[o].clone(),
                size: orbits[o].size(),
                representative: p.subloops[rep].indices(),
            }
        })
        .collect();

    let has_cover = |lower: usize, upper: usize| -> bool {
        orbits[upper].members.iter().any(|&b| {
            p.covers.downs[b]
                .iter()
                .any(|&a| p.orbits.orbit_of[a] == lower)
        })
    };
    let hasse = p.hasse();
    let mut edges = Vec::new();
    for &lo in &node_order {
        for &hi in &node_order {
            let lo_order = p.subloops[orbits[lo].representative].len();
            let hi_order = p.subloops[orbits[hi].representative].len();
            if lo_order >= hi_order {
                continue;
            }
            let endpoint = p.orbit_types[lo] == IsoType::Trivial
                || p.orbit_types[hi] == IsoType::Ambient;
            let maximal = has_cover(lo, hi);
            let l_orb = hasse.l_orb(lo, hi);
            let present = if endpoint { maximal } else { l_orb > 0 };
            if !present {
                continue;
            }
            edges.push(LatticeEdge {
                from: node_id[lo],
                to: node_id[hi],
                l_glb: hasse.abstract_count(&p.orbit_types[lo], &p.orbit_types[hi]),
                l_orb,
                maximal,
            });
        }
    }
    edges.sort_by_key(|e| (e.from, e.to));
    LatticeGraph {
        elements: p.paige.n(),
        nodes,
        edges,
    }
}

/// Deterministic serialization: nodes are already sorted by (order, orbit
/// label), edges lexicographically by (from, to).
pub fn export_json(graph: &LatticeGraph) -> String {
    let mut text = serde_json::to_string_pretty(graph).expect("graph serializes");
    text.push('\n');
    text
}

/// DOT rendering of the orbit-level graph; covering edges are bold, each
/// edge is annotated `l_glb:l_orb`.
pub fn export_dot(graph: &LatticeGraph) -> String {
    let mut out = String::from("digraph subloops {\n");
    out.push_str("  rankdir=BT;\n  node [shape=box];\n  edge [arrowhead=none];\n");
    for node in &graph.nodes {
        out.push_str(&format!(
            "  n{} [label=\"{}\\n|O|={}\"];\n",
            node.id, node.orbit, node.size
        ));
    }
    for edge in &graph.edges {
        let style = if edge.maximal { ", style=bold" } else { "" };
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}:{}\"{}];\n",
            edge.from, edge.to, edge.l_glb, edge.l_orb, style
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loopcore::{classify, parse_cayley, IsoType};

    #[test]
    fn enumerates_s3_subgroups() {
        let t = parse_cayley(include_str!("../fixtures/s3.tab")).unwrap();
        let subs = enumerate_subloops(&t);
        // 1 trivial + 3 C2 + 1 C3 + S3 itself.
        assert_eq!(subs.len(), 6);
        let c2s = subs.iter().filter(|s| s.len() == 2).count();
        assert_eq!(c2s, 3);
        assert!(subs.iter().any(|s| s.len() == 6));
    }

    #[test]
    fn enumerates_c2xc4_subgroups() {
        let t = parse_cayley(include_str!("../fixtures/c2xc4.tab")).unwrap();
        let subs = enumerate_subloops(&t);
        assert_eq!(subs.len(), 8);
        let by_type = |ty: IsoType| subs.iter().filter(|s| classify(&t, s) == ty).count();
        assert_eq!(by_type(IsoType::C2), 3);
        assert_eq!(by_type(IsoType::C4), 2);
        assert_eq!(by_type(IsoType::E4), 1);
    }

    #[test]
    fn enumeration_is_sorted_and_deduplicated() {
        let t = parse_cayley(include_str!("../fixtures/a4.tab")).unwrap();
        let subs = enumerate_subloops(&t);
        // 1 + 3 C2 + 4 C3 + 1 E4 + A4.
        assert_eq!(subs.len(), 10);
        for w in subs.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn covers_of_a4() {
        let t = parse_cayley(include_str!("../fixtures/a4.tab")).unwrap();
        let subs = enumerate_subloops(&t);
        let covers = covering_relations(&subs);
        let top = subs.iter().position(|s| s.len() == 12).unwrap();
        // Maximal subgroups of A4: the four C3 and the E4.
        let mut max_orders: Vec<usize> =
            covers.downs[top].iter().map(|&a| subs[a].len()).collect();
        max_orders.sort_unstable();
        assert_eq!(max_orders, vec![3, 3, 3, 3, 4]);
        // C2 subgroups are covered only by the E4, which covers the bottom.
        let e4 = subs
            .iter()
            .position(|s| s.len() == 4 && classify(&t, s) == IsoType::E4)
            .unwrap();
        let (downs, ups) = neighbors(&covers, e4);
        assert_eq!(downs.len(), 3);
        assert_eq!(ups, &[top]);
    }

    #[test]
    fn lagrange_and_cauchy_on_small_fixtures() {
        let t = parse_cayley(include_str!("../fixtures/a4.tab")).unwrap();
        let subs = enumerate_subloops(&t);
        let covers = covering_relations(&subs);
        assert!(check_strong_lagrange(&subs, &covers));
        assert!(check_weak_cauchy(12, &subs));
        // The order-5 fixture has a subloop of order 2, violating Lagrange.
        let l5 = parse_cayley(include_str!("../fixtures/loop5.tab")).unwrap();
        let subs5 = enumerate_subloops(&l5);
        let covers5 = covering_relations(&subs5);
        assert!(!check_strong_lagrange(&subs5, &covers5));
    }
}
