//! Ordered, partially labeled graphs and their homomorphisms.
//!
//! A graph has a set of nodes, some of which carry an operation symbol
//! together with an ordered string of successors whose length is the arity
//! of the symbol. Unlabeled nodes carry nothing and act as placeholders.
//! A homomorphism is a node map that sends labeled nodes to labeled nodes
//! with the same symbol and maps successor strings pointwise.

use std::borrow::Borrow;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::search::{self, SearchMode};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: impl Into<String>) -> Self {
        NodeId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Id of the fresh node standing for the target of edge `(self, index)`.
    pub fn edge_child(&self, index: usize) -> NodeId {
        NodeId(format!("{}[{}]", self.0, index))
    }

    pub(crate) fn primed(&self) -> NodeId {
        NodeId(format!("{}'", self.0))
    }
}

impl Borrow<str> for NodeId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_string())
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        NodeId(s)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Self {
        Symbol(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Symbol {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol(s.to_string())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Operation symbols with their arities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    arities: BTreeMap<Symbol, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares `symbol` with `arity`. Redeclaring with the same arity is a
    /// no-op; a different arity is an error.
    pub fn declare(&mut self, symbol: impl Into<Symbol>, arity: usize) -> Result<()> {
        let symbol = symbol.into();
        match self.arities.entry(symbol) {
            Entry::Vacant(v) => {
                v.insert(arity);
                Ok(())
            }
            Entry::Occupied(o) if *o.get() == arity => Ok(()),
            Entry::Occupied(o) => Err(Error::InconsistentArity {
                symbol: o.key().clone(),
                first: *o.get(),
                second: arity,
            }),
        }
    }

    pub fn with(mut self, symbol: &str, arity: usize) -> Result<Self> {
        self.declare(symbol, arity)?;
        Ok(self)
    }

    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.arities.get(symbol).copied()
    }

    pub fn merge(&mut self, other: &Signature) -> Result<()> {
        for (symbol, &arity) in &other.arities {
            self.declare(symbol.clone(), arity)?;
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.arities.iter().map(|(s, &a)| (s, a))
    }

    pub fn len(&self) -> usize {
        self.arities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arities.is_empty()
    }
}

/// The label and ordered successors of a labeled node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub symbol: Symbol,
    pub args: Vec<NodeId>,
}

impl Term {
    pub fn new<I, S>(symbol: &str, args: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<NodeId>,
    {
        Term {
            symbol: Symbol::from(symbol),
            args: args.into_iter().map(Into::into).collect(),
        }
    }
}

/// One node of a graph declaration: an id and, for labeled nodes, a term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeDecl {
    pub id: NodeId,
    pub term: Option<Term>,
}

impl NodeDecl {
    pub fn unlabeled(id: &str) -> Self {
        NodeDecl {
            id: id.into(),
            term: None,
        }
    }

    pub fn labeled<I, S>(id: &str, symbol: &str, args: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<NodeId>,
    {
        NodeDecl {
            id: id.into(),
            term: Some(Term::new(symbol, args)),
        }
    }
}

/// An edge `(source, index)`; the index is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: NodeId,
    pub index: usize,
}

impl Edge {
    pub fn new(source: impl Into<NodeId>, index: usize) -> Self {
        Edge {
            source: source.into(),
            index,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.source, self.index)
    }
}

/// An immutable, validated graph.
///
/// Equality is structural: two graphs are equal when they have the same
/// nodes, labels and successor strings. The signature is ambient and does not
/// take part in comparisons.
#[derive(Debug, Clone)]
pub struct Graph {
    nodes: BTreeMap<NodeId, Option<Term>>,
    signature: Signature,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty() -> Self {
        Graph {
            nodes: BTreeMap::new(),
            signature: Signature::new(),
        }
    }

    /// Builds a graph from declarations. Symbols missing from `signature`
    /// are added with the arity of their first use.
    pub fn build<I>(decls: I, signature: &Signature) -> Result<Graph>
    where
        I: IntoIterator<Item = NodeDecl>,
    {
        let mut nodes = BTreeMap::new();
        let mut sig = signature.clone();
        for decl in decls {
            if let Some(term) = &decl.term {
                match signature.arity(term.symbol.as_str()) {
                    Some(expected) if expected != term.args.len() => {
                        return Err(Error::ArityMismatch {
                            node: decl.id.clone(),
                            symbol: term.symbol.clone(),
                            expected,
                            found: term.args.len(),
                        });
                    }
                    _ => sig.declare(term.symbol.clone(), term.args.len())?,
                }
            }
            match nodes.entry(decl.id) {
                Entry::Occupied(o) => return Err(Error::DuplicateNode(o.key().clone())),
                Entry::Vacant(v) => {
                    v.insert(decl.term);
                }
            }
        }
        Graph::from_nodes(nodes, sig)
    }

    /// Validating constructor used by the graph constructions.
    pub(crate) fn from_nodes(
        nodes: BTreeMap<NodeId, Option<Term>>,
        mut signature: Signature,
    ) -> Result<Graph> {
        for (id, term) in &nodes {
            let Some(term) = term else { continue };
            match signature.arity(term.symbol.as_str()) {
                Some(expected) if expected != term.args.len() => {
                    return Err(Error::ArityMismatch {
                        node: id.clone(),
                        symbol: term.symbol.clone(),
                        expected,
                        found: term.args.len(),
                    })
                }
                Some(_) => {}
                None => signature.declare(term.symbol.clone(), term.args.len())?,
            }
            if let Some(missing) = term.args.iter().find(|a| !nodes.contains_key(*a)) {
                return Err(Error::UnknownNode(missing.clone()));
            }
        }
        Ok(Graph { nodes, signature })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, node: &str) -> bool {
        self.nodes.contains_key(node)
    }

    /// All nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = &NodeId> + '_ {
        self.nodes.keys()
    }

    pub fn labeled(&self) -> impl Iterator<Item = (&NodeId, &Term)> + '_ {
        self.nodes
            .iter()
            .filter_map(|(id, t)| t.as_ref().map(|t| (id, t)))
    }

    pub fn unlabeled(&self) -> impl Iterator<Item = &NodeId> + '_ {
        self.nodes
            .iter()
            .filter(|(_, t)| t.is_none())
            .map(|(id, _)| id)
    }

    pub fn labeled_count(&self) -> usize {
        self.labeled().count()
    }

    pub fn term(&self, node: &str) -> Option<&Term> {
        self.nodes.get(node).and_then(Option::as_ref)
    }

    pub fn is_labeled(&self, node: &str) -> bool {
        self.term(node).is_some()
    }

    pub fn label(&self, node: &str) -> Option<&Symbol> {
        self.term(node).map(|t| &t.symbol)
    }

    /// Successor string of a node; empty for unlabeled or unknown nodes.
    pub fn successors(&self, node: &str) -> &[NodeId] {
        self.term(node).map(|t| t.args.as_slice()).unwrap_or(&[])
    }

    /// The `index`-th successor (1-based).
    pub fn succ(&self, node: &str, index: usize) -> Option<&NodeId> {
        index
            .checked_sub(1)
            .and_then(|i| self.successors(node).get(i))
    }

    pub fn target(&self, edge: &Edge) -> Result<&NodeId> {
        self.succ(edge.source.as_str(), edge.index)
            .ok_or_else(|| Error::NoSuchEdge(edge.clone()))
    }

    pub fn has_edge(&self, edge: &Edge) -> bool {
        self.target(edge).is_ok()
    }

    /// Every `(n, i)` with `n` labeled and `1 <= i <= arity(n)`.
    pub fn edges(&self) -> BTreeSet<Edge> {
        self.labeled()
            .flat_map(|(id, t)| (1..=t.args.len()).map(move |i| Edge::new(id.clone(), i)))
            .collect()
    }

    /// An edge is disconnected when its target is unlabeled.
    pub fn is_disconnected_edge(&self, edge: &Edge) -> Result<bool> {
        let target = self.target(edge)?;
        Ok(!self.is_labeled(target.as_str()))
    }

    /// Edges whose target is `node`, in ascending order.
    pub fn incoming(&self, node: &str) -> Vec<Edge> {
        self.labeled()
            .flat_map(|(id, t)| {
                t.args
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.as_str() == node)
                    .map(move |(i, _)| Edge::new(id.clone(), i + 1))
            })
            .collect()
    }

    /// Number of labeled nodes per symbol.
    pub fn label_census(&self) -> BTreeMap<Symbol, usize> {
        let mut census = BTreeMap::new();
        for (_, t) in self.labeled() {
            *census.entry(t.symbol.clone()).or_insert(0) += 1;
        }
        census
    }

    /// Declarations in ascending id order; `Graph::build` inverts this.
    pub fn decls(&self) -> impl Iterator<Item = NodeDecl> + '_ {
        self.nodes.iter().map(|(id, t)| NodeDecl {
            id: id.clone(),
            term: t.clone(),
        })
    }

    pub(crate) fn raw_nodes(&self) -> &BTreeMap<NodeId, Option<Term>> {
        &self.nodes
    }

    /// Renames nodes; `renaming` must be injective and total.
    pub fn rename(&self, renaming: &BTreeMap<NodeId, NodeId>) -> Result<Graph> {
        let look = |n: &NodeId| {
            renaming
                .get(n)
                .cloned()
                .ok_or_else(|| Error::NotTotal(n.clone()))
        };
        let mut nodes = BTreeMap::new();
        for (id, term) in &self.nodes {
            let term = match term {
                Some(t) => Some(Term {
                    symbol: t.symbol.clone(),
                    args: t.args.iter().map(look).collect::<Result<_>>()?,
                }),
                None => None,
            };
            if nodes.insert(look(id)?, term).is_some() {
                return Err(Error::DuplicateNode(look(id)?));
            }
        }
        Graph::from_nodes(nodes, self.signature.clone())
    }
}

/// A validated graph homomorphism. Its identity is entirely determined by
/// domain, codomain and node map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    dom: Arc<Graph>,
    cod: Arc<Graph>,
    map: BTreeMap<NodeId, NodeId>,
}

impl Homomorphism {
    /// Checks that `map` is a total node map preserving labels and
    /// successor strings.
    pub fn new(dom: Arc<Graph>, cod: Arc<Graph>, map: BTreeMap<NodeId, NodeId>) -> Result<Self> {
        check_map(&dom, &cod, &map)?;
        Ok(Homomorphism { dom, cod, map })
    }

    pub(crate) fn new_unchecked(
        dom: Arc<Graph>,
        cod: Arc<Graph>,
        map: BTreeMap<NodeId, NodeId>,
    ) -> Self {
        debug_assert!(
            check_map(&dom, &cod, &map).is_ok(),
            "{:?}",
            check_map(&dom, &cod, &map)
        );
        Homomorphism { dom, cod, map }
    }

    pub fn identity(graph: Arc<Graph>) -> Self {
        let map = graph.nodes().map(|n| (n.clone(), n.clone())).collect();
        Homomorphism {
            dom: graph.clone(),
            cod: graph,
            map,
        }
    }

    pub fn dom(&self) -> &Arc<Graph> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Graph> {
        &self.cod
    }

    pub fn map(&self) -> &BTreeMap<NodeId, NodeId> {
        &self.map
    }

    pub fn image(&self, node: &str) -> Option<&NodeId> {
        self.map.get(node)
    }

    /// Image of an edge: `(n, i)` goes to `(φ(n), i)`.
    pub fn image_edge(&self, edge: &Edge) -> Option<Edge> {
        self.image(edge.source.as_str())
            .map(|s| Edge::new(s.clone(), edge.index))
    }

    /// Injective on labeled nodes; unlabeled nodes may collide freely.
    pub fn is_omega_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.dom
            .labeled()
            .all(|(n, _)| seen.insert(&self.map[n]))
    }

    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<_> = self.map.values().collect();
        images.len() == self.map.len()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if !Arc::ptr_eq(&self.cod, &next.dom) && *self.cod != *next.dom {
            return Err(Error::DomainMismatch);
        }
        let map = self
            .map
            .iter()
            .map(|(k, v)| (k.clone(), next.map[v].clone()))
            .collect();
        Ok(Homomorphism::new_unchecked(
            self.dom.clone(),
            next.cod.clone(),
            map,
        ))
    }
}

/// `ψ ∘ φ`, with `φ` applied first.
pub fn compose(first: &Homomorphism, second: &Homomorphism) -> Result<Homomorphism> {
    first.then(second)
}

fn check_map(dom: &Graph, cod: &Graph, map: &BTreeMap<NodeId, NodeId>) -> Result<()> {
    for n in dom.nodes() {
        let Some(image) = map.get(n) else {
            return Err(Error::NotTotal(n.clone()));
        };
        if !cod.contains(image.as_str()) {
            return Err(Error::UnknownNode(image.clone()));
        }
    }
    if let Some(extra) = map.keys().find(|k| !dom.contains(k.as_str())) {
        return Err(Error::UnknownNode(extra.clone()));
    }
    // Labels first, so a wrong symbol is reported as such rather than as a
    // successor mismatch at some predecessor.
    for (n, term) in dom.labeled() {
        let Some(image_term) = cod.term(map[n].as_str()) else {
            return Err(Error::UnlabeledImageOfLabeled(n.clone()));
        };
        if image_term.symbol != term.symbol {
            return Err(Error::LabelNotPreserved(n.clone()));
        }
    }
    for (n, term) in dom.labeled() {
        let image_term = cod.term(map[n].as_str()).expect("checked above");
        for (i, (arg, image_arg)) in term.args.iter().zip(&image_term.args).enumerate() {
            if map[arg] != *image_arg {
                return Err(Error::SuccessorNotPreserved {
                    node: n.clone(),
                    index: i + 1,
                });
            }
        }
    }
    Ok(())
}

/// Every homomorphism `dom → cod`, in the search's deterministic order.
pub fn all_homomorphisms(dom: &Arc<Graph>, cod: &Arc<Graph>) -> Vec<Homomorphism> {
    let mut out = Vec::new();
    search::for_each_hom(dom, cod, SearchMode::Any, |map| {
        out.push(Homomorphism::new_unchecked(dom.clone(), cod.clone(), map.clone()));
        true
    });
    out
}

/// Searches for a bijective homomorphism whose inverse is also a
/// homomorphism. The search order is deterministic.
pub fn find_isomorphism(g: &Arc<Graph>, h: &Arc<Graph>) -> Option<Homomorphism> {
    if g.node_count() != h.node_count()
        || g.labeled_count() != h.labeled_count()
        || g.label_census() != h.label_census()
    {
        return None;
    }
    let mut found = None;
    search::for_each_hom(g, h, SearchMode::Bijective, |map| {
        found = Some(map.clone());
        false
    });
    found.map(|map| Homomorphism::new_unchecked(g.clone(), h.clone(), map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_g() -> Graph {
        Graph::build(
            [
                NodeDecl::labeled("m", "f", ["n", "o"]),
                NodeDecl::unlabeled("n"),
                NodeDecl::labeled("o", "g", ["n", "p"]),
                NodeDecl::labeled("p", "h", ["q", "r", "m"]),
                NodeDecl::unlabeled("q"),
                NodeDecl::unlabeled("r"),
            ],
            &Signature::new(),
        )
        .unwrap()
    }

    fn example_h() -> Graph {
        Graph::build(
            [
                NodeDecl::labeled("a", "f", ["b", "c"]),
                NodeDecl::unlabeled("b"),
                NodeDecl::labeled("c", "g", ["d", "e"]),
                NodeDecl::unlabeled("d"),
                NodeDecl::unlabeled("e"),
            ],
            &Signature::new(),
        )
        .unwrap()
    }

    fn node_map(pairs: &[(&str, &str)]) -> BTreeMap<NodeId, NodeId> {
        pairs.iter().map(|(a, b)| ((*a).into(), (*b).into())).collect()
    }

    #[test]
    fn build_partitions_labeled_and_unlabeled() {
        let g = example_g();
        let labeled: Vec<_> = g.labeled().map(|(n, _)| n.as_str()).collect();
        let unlabeled: Vec<_> = g.unlabeled().map(NodeId::as_str).collect();
        assert_eq!(labeled, ["m", "o", "p"]);
        assert_eq!(unlabeled, ["n", "q", "r"]);
        assert_eq!(g.signature().arity("h"), Some(3));
    }

    #[test]
    fn build_empty() {
        let g = Graph::build([], &Signature::new()).unwrap();
        assert!(g.is_empty());
        assert!(g.edges().is_empty());
    }

    #[test]
    fn build_rejects_declared_arity_mismatch() {
        let sig = Signature::new().with("f", 2).unwrap();
        let err = Graph::build(
            [NodeDecl::labeled("m", "f", ["n"]), NodeDecl::unlabeled("n")],
            &sig,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { expected: 2, found: 1, .. }));
    }

    #[test]
    fn build_rejects_inconsistent_inferred_arity() {
        let err = Graph::build(
            [
                NodeDecl::labeled("m", "f", ["n"]),
                NodeDecl::labeled("k", "f", ["n", "n"]),
                NodeDecl::unlabeled("n"),
            ],
            &Signature::new(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InconsistentArity { .. }));
    }

    #[test]
    fn build_rejects_unknown_and_duplicate() {
        let err = Graph::build([NodeDecl::labeled("m", "f", ["x"])], &Signature::new());
        assert!(matches!(err, Err(Error::UnknownNode(n)) if n.as_str() == "x"));
        let err = Graph::build(
            [NodeDecl::unlabeled("m"), NodeDecl::unlabeled("m")],
            &Signature::new(),
        );
        assert!(matches!(err, Err(Error::DuplicateNode(_))));
    }

    #[test]
    fn edges_of_examples() {
        let edges: Vec<String> = example_g().edges().iter().map(Edge::to_string).collect();
        assert_eq!(
            edges,
            ["(m,1)", "(m,2)", "(o,1)", "(o,2)", "(p,1)", "(p,2)", "(p,3)"]
        );
        let edges: Vec<String> = example_h().edges().iter().map(Edge::to_string).collect();
        assert_eq!(edges, ["(a,1)", "(a,2)", "(c,1)", "(c,2)"]);
        let only_vars = Graph::build([NodeDecl::unlabeled("x")], &Signature::new()).unwrap();
        assert!(only_vars.edges().is_empty());
    }

    #[test]
    fn disconnected_edges() {
        let h = example_h();
        assert!(h.is_disconnected_edge(&Edge::new("c", 1)).unwrap());
        let g = example_g();
        assert!(!g.is_disconnected_edge(&Edge::new("m", 2)).unwrap());
        assert!(g.is_disconnected_edge(&Edge::new("m", 1)).unwrap());
        assert!(matches!(
            g.is_disconnected_edge(&Edge::new("m", 3)),
            Err(Error::NoSuchEdge(_))
        ));
        assert!(matches!(
            g.is_disconnected_edge(&Edge::new("n", 1)),
            Err(Error::NoSuchEdge(_))
        ));
    }

    #[test]
    fn phi_is_homomorphism() {
        let phi = Homomorphism::new(
            Arc::new(example_h()),
            Arc::new(example_g()),
            node_map(&[("a", "m"), ("b", "n"), ("c", "o"), ("d", "n"), ("e", "p")]),
        )
        .unwrap();
        assert!(phi.is_omega_injective());
        assert!(!phi.is_injective());
        assert_eq!(phi.image_edge(&Edge::new("c", 2)), Some(Edge::new("o", 2)));
    }

    #[test]
    fn label_violation_detected() {
        let err = Homomorphism::new(
            Arc::new(example_h()),
            Arc::new(example_g()),
            node_map(&[("a", "m"), ("b", "n"), ("c", "p"), ("d", "q"), ("e", "r")]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::LabelNotPreserved(n) if n.as_str() == "c"));
    }

    #[test]
    fn successor_violation_detected() {
        let err = Homomorphism::new(
            Arc::new(example_h()),
            Arc::new(example_g()),
            node_map(&[("a", "m"), ("b", "q"), ("c", "o"), ("d", "n"), ("e", "p")]),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::SuccessorNotPreserved { node, index: 1 } if node.as_str() == "a"
        ));
    }

    #[test]
    fn not_total_and_unlabeled_image() {
        let g = Arc::new(example_g());
        let err = Homomorphism::new(g.clone(), g.clone(), node_map(&[("m", "m")])).unwrap_err();
        assert!(matches!(err, Error::NotTotal(_)));
        let h = Arc::new(example_h());
        let err = Homomorphism::new(
            h,
            g,
            node_map(&[("a", "n"), ("b", "n"), ("c", "o"), ("d", "n"), ("e", "p")]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnlabeledImageOfLabeled(n) if n.as_str() == "a"));
    }

    #[test]
    fn identity_law() {
        let g = Arc::new(example_g());
        let h = Arc::new(example_h());
        let phi = Homomorphism::new(
            h.clone(),
            g.clone(),
            node_map(&[("a", "m"), ("b", "n"), ("c", "o"), ("d", "n"), ("e", "p")]),
        )
        .unwrap();
        assert_eq!(phi.then(&Homomorphism::identity(g)).unwrap(), phi);
        assert_eq!(Homomorphism::identity(h).then(&phi).unwrap(), phi);
    }

    #[test]
    fn compose_checks_domains() {
        let g = Arc::new(example_g());
        let h = Arc::new(example_h());
        let err = Homomorphism::identity(g).then(&Homomorphism::identity(h));
        assert!(matches!(err, Err(Error::DomainMismatch)));
    }

    #[test]
    fn isomorphism_to_renamed_copy() {
        let g = Arc::new(example_g());
        let renaming: BTreeMap<_, _> = g
            .nodes()
            .map(|n| (n.clone(), NodeId::new(format!("{n}'"))))
            .collect();
        let primed = Arc::new(g.rename(&renaming).unwrap());
        let iso = find_isomorphism(&g, &primed).unwrap();
        assert_eq!(iso.map(), &renaming);
        assert!(find_isomorphism(&g, &Arc::new(example_h())).is_none());
    }
}
