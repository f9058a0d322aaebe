//! Pushouts of graphs.
//!
//! The node square of a pushout is the canonical pushout of sets: the
//! disjoint union of the two feet quotiented by the equivalence generated by
//! `φ1(n) ~ φ2(n)`. A span has a graph pushout when it is strongly labeled,
//! meaning that the labeled nodes of each class agree on their symbol and
//! have class-wise equal successor strings. The labeled nodes of the result
//! are the classes holding a labeled node; each takes label and successors
//! from a chosen representative (the section).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, Homomorphism, NodeId, Term};

pub mod oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A node of the disjoint union of the two feet. Ordered left before right,
/// then by id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tagged {
    pub side: Side,
    pub node: NodeId,
}

impl Tagged {
    pub fn left(node: impl Into<NodeId>) -> Self {
        Tagged {
            side: Side::Left,
            node: node.into(),
        }
    }

    pub fn right(node: impl Into<NodeId>) -> Self {
        Tagged {
            side: Side::Right,
            node: node.into(),
        }
    }
}

impl fmt::Display for Tagged {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Left => "left",
            Side::Right => "right",
        };
        write!(f, "{}@{}", self.node, side)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub usize);

/// Two homomorphisms out of a common apex.
#[derive(Debug, Clone)]
pub struct Span {
    pub left: Homomorphism,
    pub right: Homomorphism,
}

impl Span {
    pub fn new(left: Homomorphism, right: Homomorphism) -> Result<Span> {
        if !same_graph(left.dom(), right.dom()) {
            return Err(Error::InvalidSquare(
                "span legs have different domains".into(),
            ));
        }
        Ok(Span { left, right })
    }

    pub fn apex(&self) -> &Arc<Graph> {
        self.left.dom()
    }

    pub fn foot(&self, side: Side) -> &Arc<Graph> {
        match side {
            Side::Left => self.left.cod(),
            Side::Right => self.right.cod(),
        }
    }

    fn term(&self, t: &Tagged) -> Option<&Term> {
        self.foot(t.side).term(t.node.as_str())
    }
}

fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A span with candidate legs into a common corner.
#[derive(Debug, Clone)]
pub struct Square {
    pub span: Span,
    /// `G1 → G3`
    pub left_leg: Homomorphism,
    /// `G2 → G3`
    pub right_leg: Homomorphism,
}

impl Square {
    pub fn new(span: Span, left_leg: Homomorphism, right_leg: Homomorphism) -> Result<Square> {
        if !same_graph(left_leg.dom(), span.left.cod()) {
            return Err(Error::InvalidSquare(
                "left leg does not start at the left foot".into(),
            ));
        }
        if !same_graph(right_leg.dom(), span.right.cod()) {
            return Err(Error::InvalidSquare(
                "right leg does not start at the right foot".into(),
            ));
        }
        if !same_graph(left_leg.cod(), right_leg.cod()) {
            return Err(Error::InvalidSquare("legs end at different corners".into()));
        }
        Ok(Square {
            span,
            left_leg,
            right_leg,
        })
    }

    pub fn corner(&self) -> &Arc<Graph> {
        self.left_leg.cod()
    }

    fn leg(&self, side: Side) -> &Homomorphism {
        match side {
            Side::Left => &self.left_leg,
            Side::Right => &self.right_leg,
        }
    }
}

/// The canonical set pushout: a partition of the disjoint union of the feet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientWitness {
    classes: Vec<Vec<Tagged>>,
    class_of: BTreeMap<Tagged, ClassId>,
}

impl QuotientWitness {
    pub fn class_of(&self, t: &Tagged) -> Option<ClassId> {
        self.class_of.get(t).copied()
    }

    pub fn members(&self, c: ClassId) -> &[Tagged] {
        &self.classes[c.0]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> impl Iterator<Item = (ClassId, &[Tagged])> + '_ {
        self.classes
            .iter()
            .enumerate()
            .map(|(i, m)| (ClassId(i), m.as_slice()))
    }

    /// Class containing `node` of the given foot.
    pub fn class_of_node(&self, side: Side, node: &NodeId) -> Option<ClassId> {
        self.class_of(&Tagged {
            side,
            node: node.clone(),
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    // the smaller root wins, so each root is its class minimum
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// Closes `φ1(n) ~ φ2(n)` over all apex nodes. Classes are numbered by
/// their least member (left nodes before right nodes, then by id).
pub fn quotient(span: &Span) -> QuotientWitness {
    let elements: Vec<Tagged> = span
        .foot(Side::Left)
        .nodes()
        .map(|n| Tagged::left(n.clone()))
        .chain(span.foot(Side::Right).nodes().map(|n| Tagged::right(n.clone())))
        .collect();
    let index: BTreeMap<&Tagged, usize> = elements.iter().enumerate().map(|(i, t)| (t, i)).collect();

    let mut uf = UnionFind::new(elements.len());
    for n in span.apex().nodes() {
        let a = Tagged::left(span.left.image(n.as_str()).unwrap().clone());
        let b = Tagged::right(span.right.image(n.as_str()).unwrap().clone());
        uf.union(index[&a], index[&b]);
    }

    let mut class_by_root: BTreeMap<usize, ClassId> = BTreeMap::new();
    let mut classes: Vec<Vec<Tagged>> = Vec::new();
    let mut class_of = BTreeMap::new();
    // elements are sorted, so roots are met in increasing order
    for (i, t) in elements.iter().enumerate() {
        let root = uf.find(i);
        let id = *class_by_root.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            ClassId(classes.len() - 1)
        });
        classes[id.0].push(t.clone());
        class_of.insert(t.clone(), id);
    }
    QuotientWitness { classes, class_of }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClashReason {
    LabelClash,
    /// Successors at this (1-based) position fall in different classes.
    SuccessorClash { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clash {
    pub first: Tagged,
    pub second: Tagged,
    pub reason: ClashReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongLabelDiagnostic {
    pub ok: bool,
    pub offending_class: Option<ClassId>,
    pub class_members: Vec<Tagged>,
    pub conflict: Option<Clash>,
}

impl fmt::Display for StrongLabelDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(clash) = &self.conflict else {
            return f.write_str("strongly labeled");
        };
        let members: Vec<String> = self.class_members.iter().map(ToString::to_string).collect();
        let what = match clash.reason {
            ClashReason::LabelClash => "different labels".to_string(),
            ClashReason::SuccessorClash { index } => {
                format!("inequivalent successors at position {index}")
            }
        };
        write!(
            f,
            "class {{{}}} holds {} and {} with {}",
            members.join(", "),
            clash.first,
            clash.second,
            what
        )
    }
}

/// Checks every class: its labeled members share one symbol and have
/// successor strings that agree class-wise. Reports the first offending
/// class in class order.
pub fn is_strongly_labeled(span: &Span) -> StrongLabelDiagnostic {
    strong_label_check(span, &quotient(span))
}

fn strong_label_check(span: &Span, w: &QuotientWitness) -> StrongLabelDiagnostic {
    for (c, members) in w.classes() {
        let mut labeled = members.iter().filter_map(|t| span.term(t).map(|term| (t, term)));
        let Some((first, first_term)) = labeled.next() else {
            continue;
        };
        for (other, term) in labeled {
            let reason = if term.symbol != first_term.symbol {
                Some(ClashReason::LabelClash)
            } else {
                first_term
                    .args
                    .iter()
                    .zip(&term.args)
                    .position(|(a, b)| {
                        w.class_of_node(first.side, a) != w.class_of_node(other.side, b)
                    })
                    .map(|i| ClashReason::SuccessorClash { index: i + 1 })
            };
            if let Some(reason) = reason {
                return StrongLabelDiagnostic {
                    ok: false,
                    offending_class: Some(c),
                    class_members: members.to_vec(),
                    conflict: Some(Clash {
                        first: first.clone(),
                        second: other.clone(),
                        reason,
                    }),
                };
            }
        }
    }
    StrongLabelDiagnostic {
        ok: true,
        offending_class: None,
        class_members: Vec::new(),
        conflict: None,
    }
}

/// How a pushout picks class representatives and node names.
pub trait ClassPolicy {
    /// Picks the representative among the labeled members of a class.
    fn section(&mut self, class: ClassId, labeled: &[&Tagged]) -> Tagged;

    /// Preferred name of a class, with a priority. Names are handed out in
    /// increasing (priority, class) order; a name already taken is primed.
    fn name(
        &self,
        witness: &QuotientWitness,
        class: ClassId,
        representative: Option<&Tagged>,
    ) -> (u8, NodeId);
}

/// Prefers a right-foot representative (the least one), else the least left
/// one. Labeled classes are named after their representative, unlabeled
/// classes after their least member.
#[derive(Debug, Clone, Copy, Default)]
pub struct DefaultPolicy;

impl ClassPolicy for DefaultPolicy {
    fn section(&mut self, _class: ClassId, labeled: &[&Tagged]) -> Tagged {
        labeled
            .iter()
            .find(|t| t.side == Side::Right)
            .or_else(|| labeled.first())
            .map(|t| (*t).clone())
            .expect("labeled class has a labeled member")
    }

    fn name(
        &self,
        witness: &QuotientWitness,
        class: ClassId,
        representative: Option<&Tagged>,
    ) -> (u8, NodeId) {
        let t = representative.unwrap_or(&witness.members(class)[0]);
        (0, t.node.clone())
    }
}

#[derive(Debug, Clone)]
pub struct PushoutResult {
    pub result: Arc<Graph>,
    /// `ψ1 : G1 → G3`
    pub left_leg: Homomorphism,
    /// `ψ2 : G2 → G3`
    pub right_leg: Homomorphism,
    pub witness: QuotientWitness,
    /// Representative of each labeled class.
    pub section: BTreeMap<ClassId, Tagged>,
    /// Node of the result standing for each class.
    pub class_nodes: Vec<NodeId>,
}

impl PushoutResult {
    pub fn square(&self, span: Span) -> Square {
        Square {
            span,
            left_leg: self.left_leg.clone(),
            right_leg: self.right_leg.clone(),
        }
    }
}

pub fn pushout(span: &Span) -> Result<PushoutResult> {
    pushout_with(span, &mut DefaultPolicy)
}

pub fn pushout_with(span: &Span, policy: &mut dyn ClassPolicy) -> Result<PushoutResult> {
    let witness = quotient(span);
    let diagnostic = strong_label_check(span, &witness);
    if !diagnostic.ok {
        return Err(Error::NotStronglyLabeled(Box::new(diagnostic)));
    }

    let mut section = BTreeMap::new();
    for (c, members) in witness.classes() {
        let labeled: Vec<&Tagged> = members.iter().filter(|t| span.term(t).is_some()).collect();
        if !labeled.is_empty() {
            section.insert(c, policy.section(c, &labeled));
        }
    }

    let mut wanted: Vec<(u8, ClassId, NodeId)> = witness
        .classes()
        .map(|(c, _)| {
            let (prio, name) = policy.name(&witness, c, section.get(&c));
            (prio, c, name)
        })
        .collect();
    wanted.sort();
    let mut taken = BTreeSet::new();
    let mut class_nodes = vec![NodeId::from(""); witness.len()];
    for (_, c, mut name) in wanted {
        while taken.contains(&name) {
            name = name.primed();
        }
        taken.insert(name.clone());
        class_nodes[c.0] = name;
    }

    let node_of = |side: Side, n: &NodeId| -> NodeId {
        class_nodes[witness.class_of_node(side, n).expect("foot node").0].clone()
    };
    let mut nodes = BTreeMap::new();
    for (c, _) in witness.classes() {
        let term = section.get(&c).map(|rep| {
            let t = span.term(rep).expect("representative is labeled");
            Term {
                symbol: t.symbol.clone(),
                args: t.args.iter().map(|a| node_of(rep.side, a)).collect(),
            }
        });
        nodes.insert(class_nodes[c.0].clone(), term);
    }
    let mut signature = span.foot(Side::Left).signature().clone();
    signature.merge(span.foot(Side::Right).signature())?;
    let result = Arc::new(Graph::from_nodes(nodes, signature)?);

    let leg = |side: Side| {
        let foot = span.foot(side);
        let map = foot.nodes().map(|n| (n.clone(), node_of(side, n))).collect();
        Homomorphism::new_unchecked(foot.clone(), result.clone(), map)
    };
    let left_leg = leg(Side::Left);
    let right_leg = leg(Side::Right);

    Ok(PushoutResult {
        result,
        left_leg,
        right_leg,
        witness,
        section,
        class_nodes,
    })
}

/// Outcome of the structural pushout test for a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PushoutCheck {
    pub commutes: bool,
    /// The node square is a pushout of sets.
    pub set_pushout: bool,
    /// Every labeled corner node is the image of a labeled node of a foot.
    pub labeled_covered: bool,
    /// Result of the enumeration oracle, when it ran.
    pub universal: Option<bool>,
}

impl PushoutCheck {
    pub fn holds(&self) -> bool {
        self.commutes && self.set_pushout && self.labeled_covered && self.universal != Some(false)
    }
}

/// Structural test: commutativity, set pushout on nodes, and labeled
/// coverage of the corner. Together these make the square a graph pushout.
pub fn check_square(square: &Square) -> PushoutCheck {
    let span = &square.span;
    let commutes = span.apex().nodes().all(|n| {
        let a = &span.left.map()[n];
        let b = &span.right.map()[n];
        square.left_leg.map()[a] == square.right_leg.map()[b]
    });

    let witness = quotient(span);
    let mut image_of_class: Vec<Option<&NodeId>> = vec![None; witness.len()];
    let mut well_defined = true;
    for (c, members) in witness.classes() {
        for t in members {
            let image = &square.leg(t.side).map()[&t.node];
            match image_of_class[c.0] {
                None => image_of_class[c.0] = Some(image),
                Some(prev) if prev != image => well_defined = false,
                Some(_) => {}
            }
        }
    }
    let images: BTreeSet<&NodeId> = image_of_class.iter().flatten().copied().collect();
    let injective = images.len() == witness.len();
    let surjective = square.corner().nodes().all(|n| images.contains(n));
    let set_pushout = well_defined && injective && surjective;

    let mut covered: BTreeSet<&NodeId> = BTreeSet::new();
    for side in [Side::Left, Side::Right] {
        for (n, _) in span.foot(side).labeled() {
            covered.insert(&square.leg(side).map()[n]);
        }
    }
    let labeled_covered = square
        .corner()
        .labeled()
        .all(|(n, _)| covered.contains(n));

    PushoutCheck {
        commutes,
        set_pushout,
        labeled_covered,
        universal: None,
    }
}

/// Decides whether `square` is a pushout. With an oracle, squares whose
/// corner is within the oracle's node bound are also checked against the
/// universal property by enumeration.
pub fn verify_pushout(square: &Square, oracle: Option<&oracle::UniversalOracle>) -> bool {
    let mut check = check_square(square);
    if let Some(oracle) = oracle {
        check.universal = oracle.check(square);
    }
    check.holds()
}
