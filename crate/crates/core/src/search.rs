//! Backtracking search for homomorphisms between two graphs.
//!
//! Labeled domain nodes are branched on first, ordered by how rare their
//! symbol is in the codomain. Assigning a labeled node forces its whole
//! successor string, which is propagated eagerly. Unlabeled domain nodes not
//! reached by propagation are unconstrained and branched on last.

use std::collections::{BTreeMap, HashMap};

use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchMode {
    /// Every homomorphism.
    Any,
    /// Injective on labeled domain nodes.
    OmegaInjective,
    /// Bijective, unlabeled onto unlabeled. Callers check the cardinalities.
    Bijective,
}

struct Indexed {
    ids: Vec<NodeId>,
    labels: Vec<Option<usize>>,
    succ: Vec<Vec<usize>>,
}

impl Indexed {
    fn new(g: &Graph, symbols: &mut HashMap<String, usize>) -> Self {
        let ids: Vec<NodeId> = g.nodes().cloned().collect();
        let index: HashMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut labels = Vec::with_capacity(ids.len());
        let mut succ = Vec::with_capacity(ids.len());
        for id in &ids {
            match g.term(id.as_str()) {
                Some(t) => {
                    let next = symbols.len();
                    labels.push(Some(
                        *symbols.entry(t.symbol.as_str().to_string()).or_insert(next),
                    ));
                    succ.push(t.args.iter().map(|a| index[a.as_str()]).collect());
                }
                None => {
                    labels.push(None);
                    succ.push(Vec::new());
                }
            }
        }
        Indexed { ids, labels, succ }
    }
}

struct State<'a> {
    dom: &'a Indexed,
    cod: &'a Indexed,
    mode: SearchMode,
    assigned: Vec<Option<usize>>,
    owner: Vec<Option<usize>>,
    trail: Vec<Undo>,
}

enum Undo {
    Assign(usize),
    Own(usize),
}

impl State<'_> {
    fn tracked(&self, d: usize) -> bool {
        match self.mode {
            SearchMode::Any => false,
            SearchMode::OmegaInjective => self.dom.labels[d].is_some(),
            SearchMode::Bijective => true,
        }
    }

    /// Assigns `d ↦ c` and everything it forces. On failure the caller
    /// rolls back to its saved trail length.
    fn assign(&mut self, d: usize, c: usize) -> bool {
        let mut work = vec![(d, c)];
        while let Some((d, c)) = work.pop() {
            if let Some(prev) = self.assigned[d] {
                if prev != c {
                    return false;
                }
                continue;
            }
            match (self.dom.labels[d], self.cod.labels[c]) {
                (Some(a), Some(b)) if a != b => return false,
                (Some(_), None) => return false,
                (None, Some(_)) if self.mode == SearchMode::Bijective => return false,
                _ => {}
            }
            if self.tracked(d) {
                if self.owner[c].is_some() {
                    return false;
                }
                self.owner[c] = Some(d);
                self.trail.push(Undo::Own(c));
            }
            self.assigned[d] = Some(c);
            self.trail.push(Undo::Assign(d));
            if self.dom.labels[d].is_some() {
                for (&ds, &cs) in self.dom.succ[d].iter().zip(&self.cod.succ[c]) {
                    work.push((ds, cs));
                }
            }
        }
        true
    }

    fn rollback(&mut self, len: usize) {
        while self.trail.len() > len {
            match self.trail.pop().unwrap() {
                Undo::Assign(d) => self.assigned[d] = None,
                Undo::Own(c) => self.owner[c] = None,
            }
        }
    }

    fn descend(
        &mut self,
        order: &[usize],
        pos: usize,
        visit: &mut dyn FnMut(&BTreeMap<NodeId, NodeId>) -> bool,
    ) -> bool {
        let Some(&d) = order[pos..].iter().find(|&&d| self.assigned[d].is_none()) else {
            let map = self
                .assigned
                .iter()
                .enumerate()
                .map(|(d, c)| (self.dom.ids[d].clone(), self.cod.ids[c.unwrap()].clone()))
                .collect();
            return visit(&map);
        };
        let pos = order.iter().position(|&x| x == d).unwrap();
        for c in 0..self.cod.ids.len() {
            let mark = self.trail.len();
            if self.assign(d, c) && !self.descend(order, pos + 1, visit) {
                self.rollback(mark);
                return false;
            }
            self.rollback(mark);
        }
        true
    }
}

/// Calls `visit` on every homomorphism `dom → cod` admitted by `mode`, in a
/// deterministic order, until `visit` returns `false`.
pub(crate) fn for_each_hom(
    dom: &Graph,
    cod: &Graph,
    mode: SearchMode,
    mut visit: impl FnMut(&BTreeMap<NodeId, NodeId>) -> bool,
) {
    let mut symbols = HashMap::new();
    let d = Indexed::new(dom, &mut symbols);
    let c = Indexed::new(cod, &mut symbols);
    if d.ids.is_empty() {
        visit(&BTreeMap::new());
        return;
    }
    if c.ids.is_empty() {
        return;
    }

    let mut frequency: HashMap<usize, usize> = HashMap::new();
    for l in c.labels.iter().flatten() {
        *frequency.entry(*l).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..d.ids.len()).collect();
    order.sort_by_key(|&i| match d.labels[i] {
        Some(l) => (0, frequency.get(&l).copied().unwrap_or(0), i),
        None => (1, 0, i),
    });

    let mut state = State {
        dom: &d,
        cod: &c,
        mode,
        assigned: vec![None; d.ids.len()],
        owner: vec![None; c.ids.len()],
        trail: Vec::new(),
    };
    state.descend(&order, 0, &mut visit);
}
