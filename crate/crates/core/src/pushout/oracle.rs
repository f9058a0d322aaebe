//! Enumeration check of the pushout universal property.
//!
//! For a square over a span `G1 ← G0 → G2` with corner `G3`, every cone
//! `(θ1 : G1 → G4, θ2 : G2 → G4)` with `θ1∘φ1 = θ2∘φ2` must factor through
//! the corner by exactly one homomorphism `θ : G3 → G4`. Cones are found by
//! exhaustive constraint search into a handful of target graphs, and
//! mediating maps are counted by exhaustive search over node maps. This is
//! exponential and meant for tests on small graphs only. It shares no code
//! with the pushout construction or the homomorphism matcher.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Side, Square};
use crate::graph::{Graph, NodeId, Term};

#[derive(Debug, Clone)]
pub struct UniversalOracle {
    /// Corners with more nodes than this are not checked.
    pub node_bound: usize,
    /// Cones examined per target graph.
    pub cone_limit: usize,
    /// Targets besides the corner itself and the corner plus one isolated
    /// unlabeled node.
    pub extra_targets: Vec<Arc<Graph>>,
}

impl Default for UniversalOracle {
    fn default() -> Self {
        UniversalOracle {
            node_bound: 8,
            cone_limit: 64,
            extra_targets: Vec::new(),
        }
    }
}

/// Dense view of a graph: nodes by position, labels, successor positions.
struct Dense {
    ids: Vec<NodeId>,
    terms: Vec<Option<(String, Vec<usize>)>>,
}

impl Dense {
    fn new(g: &Graph) -> Dense {
        let ids: Vec<NodeId> = g.nodes().cloned().collect();
        let pos = |n: &NodeId| ids.iter().position(|x| x == n).unwrap();
        let terms = ids
            .iter()
            .map(|id| {
                g.term(id.as_str()).map(|t: &Term| {
                    (
                        t.symbol.as_str().to_string(),
                        t.args.iter().map(pos).collect(),
                    )
                })
            })
            .collect();
        Dense { ids, terms }
    }

    fn pos(&self, n: &NodeId) -> usize {
        self.ids.iter().position(|x| x == n).unwrap()
    }

    fn len(&self) -> usize {
        self.ids.len()
    }
}

/// Does `theta` (partial, on `src` positions) respect labels and successors
/// at `var`, given whatever else is already assigned?
fn hom_ok_at(src: &Dense, dst: &Dense, theta: &[Option<usize>], var: usize) -> bool {
    let Some(image) = theta[var] else { return true };
    if let Some((sym, args)) = &src.terms[var] {
        let Some((dsym, dargs)) = &dst.terms[image] else {
            return false;
        };
        if sym != dsym {
            return false;
        }
        for (a, da) in args.iter().zip(dargs) {
            if let Some(ia) = theta[*a] {
                if ia != *da {
                    return false;
                }
            }
        }
    }
    // predecessors of var that are already placed
    for (p, term) in src.terms.iter().enumerate() {
        let (Some((_, args)), Some(ip)) = (term, theta[p]) else {
            continue;
        };
        let Some((_, dargs)) = &dst.terms[ip] else { continue };
        for (a, da) in args.iter().zip(dargs) {
            if *a == var && image != *da {
                return false;
            }
        }
    }
    true
}

struct ConeSearch<'a> {
    g1: &'a Dense,
    g2: &'a Dense,
    target: &'a Dense,
    /// (left position, right position) per apex node
    glue: Vec<(usize, usize)>,
    limit: usize,
}

type Cone = (Vec<usize>, Vec<usize>);

impl ConeSearch<'_> {
    fn run(&self) -> Vec<Cone> {
        let mut out = Vec::new();
        let mut t1 = vec![None; self.g1.len()];
        let mut t2 = vec![None; self.g2.len()];
        self.step(0, &mut t1, &mut t2, &mut out);
        out
    }

    fn ok(&self, t1: &[Option<usize>], t2: &[Option<usize>], var: usize) -> bool {
        let n1 = self.g1.len();
        if var < n1 {
            if !hom_ok_at(self.g1, self.target, t1, var) {
                return false;
            }
        } else if !hom_ok_at(self.g2, self.target, t2, var - n1) {
            return false;
        }
        self.glue.iter().all(|&(a, b)| match (t1[a], t2[b]) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        })
    }

    fn step(
        &self,
        var: usize,
        t1: &mut Vec<Option<usize>>,
        t2: &mut Vec<Option<usize>>,
        out: &mut Vec<Cone>,
    ) {
        if out.len() >= self.limit {
            return;
        }
        let n1 = self.g1.len();
        if var == n1 + self.g2.len() {
            out.push((
                t1.iter().map(|x| x.unwrap()).collect(),
                t2.iter().map(|x| x.unwrap()).collect(),
            ));
            return;
        }
        for c in 0..self.target.len() {
            if var < n1 {
                t1[var] = Some(c);
            } else {
                t2[var - n1] = Some(c);
            }
            if self.ok(t1, t2, var) {
                self.step(var + 1, t1, t2, out);
            }
            if var < n1 {
                t1[var] = None;
            } else {
                t2[var - n1] = None;
            }
        }
    }
}

/// Counts homomorphisms `θ : corner → target` with `θ∘ψi = θi`, stopping
/// at `stop`.
fn count_mediating(
    corner: &Dense,
    target: &Dense,
    forced: &[Vec<usize>],
    stop: usize,
) -> usize {
    fn go(
        var: usize,
        corner: &Dense,
        target: &Dense,
        forced: &[Vec<usize>],
        theta: &mut Vec<Option<usize>>,
        count: &mut usize,
        stop: usize,
    ) {
        if *count >= stop {
            return;
        }
        if var == corner.len() {
            *count += 1;
            return;
        }
        for c in 0..target.len() {
            if forced[var].iter().any(|&f| f != c) {
                continue;
            }
            theta[var] = Some(c);
            if hom_ok_at(corner, target, theta, var) {
                go(var + 1, corner, target, forced, theta, count, stop);
            }
            theta[var] = None;
        }
    }
    let mut theta = vec![None; corner.len()];
    let mut count = 0;
    go(0, corner, target, forced, &mut theta, &mut count, stop);
    count
}

impl UniversalOracle {
    fn targets(&self, corner: &Arc<Graph>) -> Vec<Arc<Graph>> {
        let mut extended = corner.raw_nodes().clone();
        let mut extra = NodeId::from("extra");
        while extended.contains_key(&extra) {
            extra = extra.primed();
        }
        extended.insert(extra, None);
        let extended = Graph::from_nodes(extended, corner.signature().clone())
            .expect("adding an isolated node keeps the graph valid");
        let mut targets = vec![corner.clone(), Arc::new(extended)];
        targets.extend(self.extra_targets.iter().cloned());
        targets
    }

    /// `Some(true)` when every examined cone has exactly one mediating
    /// homomorphism, `Some(false)` on a counterexample, `None` when the
    /// corner exceeds the node bound.
    pub fn check(&self, square: &Square) -> Option<bool> {
        let corner = square.corner();
        if corner.node_count() > self.node_bound {
            return None;
        }
        let span = &square.span;
        let g1 = Dense::new(span.foot(Side::Left));
        let g2 = Dense::new(span.foot(Side::Right));
        let g3 = Dense::new(corner);
        let glue: Vec<(usize, usize)> = span
            .apex()
            .nodes()
            .map(|n| {
                (
                    g1.pos(&span.left.map()[n]),
                    g2.pos(&span.right.map()[n]),
                )
            })
            .collect();
        let psi1: Vec<usize> = g1
            .ids
            .iter()
            .map(|n| g3.pos(&square.left_leg.map()[n]))
            .collect();
        let psi2: Vec<usize> = g2
            .ids
            .iter()
            .map(|n| g3.pos(&square.right_leg.map()[n]))
            .collect();

        for target in self.targets(corner) {
            let t = Dense::new(&target);
            let search = ConeSearch {
                g1: &g1,
                g2: &g2,
                target: &t,
                glue: glue.clone(),
                limit: self.cone_limit,
            };
            for (theta1, theta2) in search.run() {
                let mut forced: Vec<Vec<usize>> = vec![Vec::new(); g3.len()];
                for (i, &c) in psi1.iter().enumerate() {
                    forced[c].push(theta1[i]);
                }
                for (i, &c) in psi2.iter().enumerate() {
                    forced[c].push(theta2[i]);
                }
                if count_mediating(&g3, &t, &forced, 2) != 1 {
                    return Some(false);
                }
            }
        }
        Some(true)
    }
}

/// Every cone over the square's span into `target`, up to `limit`, as pairs
/// of node maps.
pub fn cones_into(
    square: &Square,
    target: &Graph,
    limit: usize,
) -> Vec<(BTreeMap<NodeId, NodeId>, BTreeMap<NodeId, NodeId>)> {
    let span = &square.span;
    let g1 = Dense::new(span.foot(Side::Left));
    let g2 = Dense::new(span.foot(Side::Right));
    let t = Dense::new(target);
    let glue = span
        .apex()
        .nodes()
        .map(|n| (g1.pos(&span.left.map()[n]), g2.pos(&span.right.map()[n])))
        .collect();
    let search = ConeSearch {
        g1: &g1,
        g2: &g2,
        target: &t,
        glue,
        limit,
    };
    let named = |d: &Dense, m: Vec<usize>| {
        d.ids
            .iter()
            .cloned()
            .zip(m.into_iter().map(|c| t.ids[c].clone()))
            .collect()
    };
    search
        .run()
        .into_iter()
        .map(|(a, b)| (named(&g1, a), named(&g2, b)))
        .collect()
}
