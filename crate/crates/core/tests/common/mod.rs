//! Random instance generators and independent oracles shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::Arc;

use dsrw::text::{parse_graph, parse_rules};
use dsrw::{Edge, Graph, Homomorphism, LrrRule, NodeDecl, NodeId, RewriteSystem, Signature, Term};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const SYMBOLS: [(&str, usize); 5] = [("f", 2), ("g", 1), ("h", 3), ("a", 0), ("b", 0)];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn fixture_graph(name: &str) -> Arc<Graph> {
    Arc::new(parse_graph(&fixture(name)).unwrap())
}

pub fn fixture_rules(name: &str) -> RewriteSystem {
    parse_rules(&fixture(name)).unwrap()
}

fn random_term(rng: &mut StdRng, targets: &[NodeId]) -> Term {
    let (sym, arity) = *SYMBOLS.choose(rng).unwrap();
    let args: Vec<NodeId> = (0..arity).map(|_| targets.choose(rng).unwrap().clone()).collect();
    Term::new(sym, args)
}

/// A graph on nodes `v0 … v{n-1}`; each node is labeled with probability
/// `p_label`, successors uniform over all nodes.
pub fn random_graph(rng: &mut StdRng, n: usize, p_label: f64) -> Graph {
    let ids: Vec<NodeId> = (0..n).map(|i| NodeId::new(format!("v{i}"))).collect();
    let decls: Vec<NodeDecl> = ids
        .iter()
        .map(|id| NodeDecl {
            id: id.clone(),
            term: rng.gen_bool(p_label).then(|| random_term(rng, &ids)),
        })
        .collect();
    Graph::build(decls, &Signature::new()).unwrap()
}

fn fresh_name(prefix: &str, taken: &BTreeSet<NodeId>) -> NodeId {
    (0..)
        .map(|k| NodeId::new(format!("{prefix}{k}")))
        .find(|id| !taken.contains(id))
        .unwrap()
}

/// A homomorphism out of `g0` built by merging some unlabeled nodes into
/// other nodes, labeling some of the remaining unlabeled ones and adding up
/// to `extra` new nodes. Labeled nodes stay distinct, so the result is
/// injective on labeled nodes.
pub fn random_extension(rng: &mut StdRng, g0: &Arc<Graph>, extra: usize) -> Homomorphism {
    let mut image: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    let mut kept: Vec<NodeId> = g0.labeled().map(|(n, _)| n.clone()).collect();
    for n in &kept {
        image.insert(n.clone(), n.clone());
    }
    let mut unlabeled: Vec<NodeId> = g0.unlabeled().cloned().collect();
    unlabeled.shuffle(rng);
    for u in unlabeled {
        if !kept.is_empty() && rng.gen_bool(0.25) {
            let v = kept.choose(rng).unwrap().clone();
            image.insert(u, v);
        } else {
            image.insert(u.clone(), u.clone());
            kept.push(u);
        }
    }
    let mut taken: BTreeSet<NodeId> = g0.nodes().cloned().collect();
    let mut extras = Vec::new();
    for _ in 0..rng.gen_range(0..=extra) {
        let id = fresh_name("x", &taken);
        taken.insert(id.clone());
        extras.push(id);
    }
    let mut all: Vec<NodeId> = kept.clone();
    all.extend(extras.iter().cloned());
    all.sort();

    let mut decls = Vec::new();
    for n in &kept {
        let term = match g0.term(n.as_str()) {
            Some(t) => Some(Term {
                symbol: t.symbol.clone(),
                args: t.args.iter().map(|a| image[a].clone()).collect(),
            }),
            None => rng.gen_bool(0.3).then(|| random_term(rng, &all)),
        };
        decls.push(NodeDecl {
            id: n.clone(),
            term,
        });
    }
    for n in &extras {
        decls.push(NodeDecl {
            id: n.clone(),
            term: rng.gen_bool(0.5).then(|| random_term(rng, &all)),
        });
    }
    let g1 = Arc::new(Graph::build(decls, &Signature::new()).unwrap());
    Homomorphism::new(g0.clone(), g1, image).unwrap()
}

/// A homomorphism `L → host` with `L` of at most `max_nodes` nodes, grown
/// from random seeds in `host`. With `omega_injective`, labeled nodes of `L`
/// get distinct images; otherwise merges are encouraged.
pub fn random_hom_into(
    rng: &mut StdRng,
    host: &Arc<Graph>,
    max_nodes: usize,
    omega_injective: bool,
) -> Option<Homomorphism> {
    let host_nodes: Vec<NodeId> = host.nodes().cloned().collect();
    if host_nodes.is_empty() {
        return None;
    }
    let mut image: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    let mut labeled: BTreeSet<NodeId> = BTreeSet::new();
    let mut used_labeled_images = BTreeSet::new();
    let seeds = rng.gen_range(1..=max_nodes.min(3));
    for j in 0..seeds {
        let x = host_nodes.choose(rng).unwrap().clone();
        let id = NodeId::new(format!("l{j}"));
        let label = host.is_labeled(x.as_str())
            && rng.gen_bool(0.7)
            && !(omega_injective && used_labeled_images.contains(&x));
        if label {
            used_labeled_images.insert(x.clone());
            labeled.insert(id.clone());
        }
        image.insert(id, x);
    }
    // Fill in successors of labeled nodes, reusing nodes where possible.
    let mut decls: BTreeMap<NodeId, Option<Term>> = BTreeMap::new();
    let mut queue: Vec<NodeId> = image.keys().cloned().collect();
    let mut counter = 0;
    while let Some(l) = queue.pop() {
        if !labeled.contains(&l) {
            decls.insert(l, None);
            continue;
        }
        let t = host.term(image[&l].as_str()).unwrap().clone();
        let mut args = Vec::new();
        for s in &t.args {
            let existing: Vec<NodeId> = image
                .iter()
                .filter(|(_, v)| *v == s)
                .map(|(k, _)| k.clone())
                .collect();
            let reuse = !existing.is_empty() && (rng.gen_bool(0.7) || image.len() >= max_nodes);
            if reuse {
                args.push(existing.choose(rng).unwrap().clone());
            } else if image.len() < max_nodes {
                let id = NodeId::new(format!("y{counter}"));
                counter += 1;
                image.insert(id.clone(), s.clone());
                // Occasionally label the new node as well, if allowed.
                if host.is_labeled(s.as_str())
                    && rng.gen_bool(0.3)
                    && !(omega_injective && used_labeled_images.contains(s))
                {
                    used_labeled_images.insert(s.clone());
                    labeled.insert(id.clone());
                }
                queue.push(id.clone());
                args.push(id);
            } else {
                return None;
            }
        }
        decls.insert(
            l,
            Some(Term {
                symbol: t.symbol.clone(),
                args,
            }),
        );
    }
    let g = Graph::build(
        decls.into_iter().map(|(id, term)| NodeDecl { id, term }),
        &Signature::new(),
    )
    .unwrap();
    Some(Homomorphism::new(Arc::new(g), host.clone(), image).unwrap())
}

/// A random subset of the edges of `g`.
pub fn random_edges(rng: &mut StdRng, g: &Graph, p: f64) -> BTreeSet<Edge> {
    g.edges().into_iter().filter(|_| rng.gen_bool(p)).collect()
}

/// A valid LRR rule over a random left-hand side with at most `max_lhs`
/// nodes: `R` keeps `D(L,E)`'s labeled structure, adds up to two nodes, and
/// sends each fresh node to a random node of `R`.
pub fn random_rule(rng: &mut StdRng, name: &str, max_lhs: usize) -> LrrRule {
    let n = rng.gen_range(1..=max_lhs);
    let lhs = Arc::new(random_graph(rng, n, 0.6));
    let e = random_edges(rng, &lhs, 0.4);

    let mut taken: BTreeSet<NodeId> = lhs.nodes().cloned().collect();
    let mut new_nodes = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let id = fresh_name("r", &taken);
        taken.insert(id.clone());
        new_nodes.push(id);
    }
    let all: Vec<NodeId> = taken.iter().cloned().collect();

    let mut rho: BTreeMap<NodeId, NodeId> = lhs.nodes().map(|n| (n.clone(), n.clone())).collect();
    let mut decls = Vec::new();
    for d in lhs.decls() {
        let term = d.term.map(|mut t| {
            for (i, arg) in t.args.iter_mut().enumerate() {
                let edge = Edge::new(d.id.clone(), i + 1);
                if e.contains(&edge) {
                    let target = all.choose(rng).unwrap().clone();
                    rho.insert(d.id.edge_child(i + 1), target.clone());
                    *arg = target;
                }
            }
            t
        });
        decls.push(NodeDecl { id: d.id, term });
    }
    for id in &new_nodes {
        decls.push(NodeDecl {
            id: id.clone(),
            term: rng.gen_bool(0.6).then(|| random_term(rng, &all)),
        });
    }
    let rhs = Arc::new(Graph::build(decls, &Signature::new()).unwrap());
    let mut redirects = Vec::new();
    if rng.gen_bool(0.3) {
        redirects.push((all.choose(rng).unwrap().clone(), all.choose(rng).unwrap().clone()));
    }
    LrrRule::new(name, lhs, e, rhs, rho, redirects).expect("generated rule is valid")
}

/// Homomorphism check straight from the definition, independent of the
/// library's validator.
pub fn is_hom_oracle(g: &Graph, h: &Graph, map: &BTreeMap<NodeId, NodeId>) -> bool {
    if g.nodes().any(|n| !map.contains_key(n)) || map.len() != g.node_count() {
        return false;
    }
    if map.values().any(|v| !h.contains(v.as_str())) {
        return false;
    }
    g.labeled().all(|(n, t)| match h.term(map[n].as_str()) {
        None => false,
        Some(ht) => {
            ht.symbol == t.symbol
                && ht.args.len() == t.args.len()
                && t.args.iter().zip(&ht.args).all(|(a, b)| map[a] == *b)
        }
    })
}

pub fn is_omega_injective_oracle(g: &Graph, map: &BTreeMap<NodeId, NodeId>) -> bool {
    let images: Vec<&NodeId> = g.labeled().map(|(n, _)| &map[n]).collect();
    let distinct: BTreeSet<&NodeId> = images.iter().copied().collect();
    distinct.len() == images.len()
}

/// Every node map `g → h`, in lexicographic order of image tuples.
pub fn all_maps(g: &Graph, h: &Graph) -> Vec<BTreeMap<NodeId, NodeId>> {
    let dom: Vec<NodeId> = g.nodes().cloned().collect();
    let cod: Vec<NodeId> = h.nodes().cloned().collect();
    let mut out = Vec::new();
    if cod.is_empty() {
        if dom.is_empty() {
            out.push(BTreeMap::new());
        }
        return out;
    }
    let mut idx = vec![0usize; dom.len()];
    loop {
        out.push(
            dom.iter()
                .cloned()
                .zip(idx.iter().map(|&i| cod[i].clone()))
                .collect(),
        );
        let mut k = dom.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < cod.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Isomorphism by trying every bijection.
pub fn isomorphic_oracle(g: &Graph, h: &Graph) -> bool {
    if g.node_count() != h.node_count() {
        return false;
    }
    let dom: Vec<NodeId> = g.nodes().cloned().collect();
    let cod: Vec<NodeId> = h.nodes().cloned().collect();
    let mut perm: Vec<usize> = (0..cod.len()).collect();
    loop {
        let map: BTreeMap<NodeId, NodeId> = dom
            .iter()
            .cloned()
            .zip(perm.iter().map(|&i| cod[i].clone()))
            .collect();
        let inverse: BTreeMap<NodeId, NodeId> =
            map.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        if is_hom_oracle(g, h, &map) && is_hom_oracle(h, g, &inverse) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// A copy of `g` with every node renamed by `prefix`, plus the renaming.
pub fn renamed(g: &Graph, prefix: &str) -> (Graph, BTreeMap<NodeId, NodeId>) {
    let ren: BTreeMap<NodeId, NodeId> = g
        .nodes()
        .map(|n| (n.clone(), NodeId::new(format!("{prefix}{n}"))))
        .collect();
    (g.rename(&ren).unwrap(), ren)
}

/// Label multiset as signed counts.
pub fn census(g: &Graph) -> BTreeMap<String, i64> {
    g.label_census()
        .into_iter()
        .map(|(s, c)| (s.as_str().to_string(), c as i64))
        .collect()
}

/// The circular list `r: #(c1)`, `ci: cons(xi, c{i+1})`, `ck` back to `c1`.
pub fn length_input(k: usize) -> Graph {
    let mut decls = vec![NodeDecl::labeled("r", "#", ["c1"])];
    for i in 1..=k {
        let next = if i == k { 1 } else { i + 1 };
        decls.push(NodeDecl::labeled(
            &format!("c{i}"),
            "cons",
            [format!("x{i}"), format!("c{next}")],
        ));
        decls.push(NodeDecl::unlabeled(&format!("x{i}")));
    }
    Graph::build(decls, &Signature::new()).unwrap()
}

/// `succ(succ(… 0))` with `k` successor nodes.
pub fn succ_chain(k: usize) -> Graph {
    let mut decls = vec![NodeDecl::labeled("z", "0", Vec::<String>::new())];
    for i in 1..=k {
        let arg = if i == 1 { "z".to_string() } else { format!("s{}", i - 1) };
        decls.push(NodeDecl::labeled(&format!("s{i}"), "succ", [arg]));
    }
    Graph::build(decls, &Signature::new()).unwrap()
}
