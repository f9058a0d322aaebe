//! Disconnection of edges and of nodes.
//!
//! `disconnect_edges` redirects each edge of a set `E` to its own fresh
//! unlabeled node named `n[i]`; the connection homomorphism sends each fresh
//! node back to the original target. `disconnect_node` redirects every edge
//! targeting a node `o` to a single fresh unlabeled node `mr`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Homomorphism, NodeId};

#[derive(Debug, Clone)]
pub struct DisconnectionResult {
    pub disconnected: Arc<Graph>,
    pub fresh_nodes: BTreeMap<Edge, NodeId>,
    /// `D(G,E) → G`.
    pub connection: Homomorphism,
}

#[derive(Debug, Clone)]
pub struct NodeDisconnectionResult {
    pub disconnected: Arc<Graph>,
    pub mr: NodeId,
    /// `D̄(G,o) → G`, sending `mr` to `o`.
    pub connection: Homomorphism,
}

/// `D_{φ,E}` together with the two disconnections it connects.
#[derive(Debug, Clone)]
pub struct DisconnectedHom {
    pub hom: Homomorphism,
    pub source: DisconnectionResult,
    pub target: DisconnectionResult,
}

pub fn disconnect_edges(graph: &Arc<Graph>, edges: &BTreeSet<Edge>) -> Result<DisconnectionResult> {
    let mut nodes = graph.raw_nodes().clone();
    let mut fresh_nodes = BTreeMap::new();
    let mut connection: BTreeMap<NodeId, NodeId> =
        graph.nodes().map(|n| (n.clone(), n.clone())).collect();

    for edge in edges {
        let target = graph.target(edge)?.clone();
        let fresh = edge.source.edge_child(edge.index);
        if nodes.contains_key(&fresh) {
            return Err(Error::FreshIdCollision(fresh));
        }
        let term = nodes
            .get_mut(&edge.source)
            .and_then(Option::as_mut)
            .expect("edge source is labeled");
        term.args[edge.index - 1] = fresh.clone();
        nodes.insert(fresh.clone(), None);
        connection.insert(fresh.clone(), target);
        fresh_nodes.insert(edge.clone(), fresh);
    }

    let disconnected = Arc::new(Graph::from_nodes(nodes, graph.signature().clone())?);
    let connection = Homomorphism::new(disconnected.clone(), graph.clone(), connection)
        .map_err(|e| Error::InvalidHom(Box::new(e)))?;
    Ok(DisconnectionResult {
        disconnected,
        fresh_nodes,
        connection,
    })
}

/// Builds `D_{φ,E} : D(G,E) → D(H,φ(E))`. When `φ` merges the sources of
/// several edges in `E`, their fresh nodes share one image.
///
/// The map is a homomorphism only if `E` is closed under the merges of `φ`:
/// when `φ(n) = φ(n')` for labeled `n`, `n'`, then `(n,i) ∈ E` iff
/// `(n',i) ∈ E`. Otherwise `φ(n')` has its `i`-th edge cut while `n'` does
/// not, and the result is `InvalidHom`. Injective `φ` always qualifies.
pub fn disconnect_hom(phi: &Homomorphism, edges: &BTreeSet<Edge>) -> Result<DisconnectedHom> {
    let source = disconnect_edges(phi.dom(), edges)?;
    let image_edges: BTreeSet<Edge> = edges
        .iter()
        .map(|e| phi.image_edge(e).ok_or_else(|| Error::NoSuchEdge(e.clone())))
        .collect::<Result<_>>()?;
    let target = disconnect_edges(phi.cod(), &image_edges)?;

    let mut map = phi.map().clone();
    for (edge, fresh) in &source.fresh_nodes {
        let image_edge = phi.image_edge(edge).expect("checked above");
        map.insert(fresh.clone(), target.fresh_nodes[&image_edge].clone());
    }
    let hom = Homomorphism::new(
        source.disconnected.clone(),
        target.disconnected.clone(),
        map,
    )
    .map_err(|e| Error::InvalidHom(Box::new(e)))?;
    Ok(DisconnectedHom {
        hom,
        source,
        target,
    })
}

/// Fresh id for the node-disconnection: `mr`, or `mr1`, `mr2`, … when taken.
fn fresh_mr(graph: &Graph) -> NodeId {
    if !graph.contains("mr") {
        return NodeId::from("mr");
    }
    (1..)
        .map(|k| NodeId::new(format!("mr{k}")))
        .find(|id| !graph.contains(id.as_str()))
        .unwrap()
}

pub fn disconnect_node(graph: &Arc<Graph>, o: &NodeId) -> Result<NodeDisconnectionResult> {
    if !graph.contains(o.as_str()) {
        return Err(Error::NoSuchNode(o.clone()));
    }
    let mr = fresh_mr(graph);
    let mut nodes = graph.raw_nodes().clone();
    for term in nodes.values_mut().flatten() {
        for arg in term.args.iter_mut().filter(|a| *a == o) {
            *arg = mr.clone();
        }
    }
    nodes.insert(mr.clone(), None);
    let disconnected = Arc::new(Graph::from_nodes(nodes, graph.signature().clone())?);
    let mut connection: BTreeMap<NodeId, NodeId> =
        graph.nodes().map(|n| (n.clone(), n.clone())).collect();
    connection.insert(mr.clone(), o.clone());
    let connection = Homomorphism::new(disconnected.clone(), graph.clone(), connection)
        .map_err(|e| Error::InvalidHom(Box::new(e)))?;
    Ok(NodeDisconnectionResult {
        disconnected,
        mr,
        connection,
    })
}
