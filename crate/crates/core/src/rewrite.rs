//! Rewrite rules and rewrite steps.
//!
//! An LRR rule is a span `L ← D(L,E) → R`: the edges in `E` are cut loose
//! from their targets and `ρ` decides where each of them points in `R`. A
//! step against an Ω-injective match `μ : L → U` is the double pushout whose
//! left square is the disconnecting pushout of `μ` and `E`, and whose right
//! square is the pushout of `D(U,μ(E)) ← D(L,E) → R`.
//!
//! A GR step redirects every edge targeting a node `a` to a node `b`, as the
//! double pushout of the fixed switch rule `P ← SW → P`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::disconnect::{disconnect_edges, disconnect_hom, disconnect_node, DisconnectionResult};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Homomorphism, NodeDecl, NodeId, Signature};
use crate::pushout::{
    check_square, pushout_with, ClassId, ClassPolicy, DefaultPolicy, QuotientWitness, Side, Span,
    Square, Tagged,
};
use crate::search::{self, SearchMode};

#[derive(Debug, Clone)]
pub struct LrrRule {
    name: String,
    lhs: Arc<Graph>,
    disconnect_set: BTreeSet<Edge>,
    rhs: Arc<Graph>,
    disconnection: DisconnectionResult,
    rho: Homomorphism,
    redirects: Vec<(NodeId, NodeId)>,
}

impl PartialEq for LrrRule {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && *self.lhs == *other.lhs
            && self.disconnect_set == other.disconnect_set
            && *self.rhs == *other.rhs
            && self.rho.map() == other.rho.map()
            && self.redirects == other.redirects
    }
}

impl LrrRule {
    /// Validates `rho : D(L,E) → R` and the two side conditions on the
    /// unlabeled nodes of `L`: they go to unlabeled nodes, injectively.
    pub fn new(
        name: impl Into<String>,
        lhs: Arc<Graph>,
        disconnect_set: BTreeSet<Edge>,
        rhs: Arc<Graph>,
        rho: BTreeMap<NodeId, NodeId>,
        redirects: Vec<(NodeId, NodeId)>,
    ) -> Result<LrrRule> {
        let disconnection = disconnect_edges(&lhs, &disconnect_set)?;
        let hom_err = |e: Error| Error::RhoNotHom(Box::new(e));

        if let Some(n) = disconnection
            .disconnected
            .nodes()
            .find(|n| !rho.contains_key(*n))
        {
            return Err(hom_err(Error::NotTotal(n.clone())));
        }
        let mut seen: BTreeMap<&NodeId, &NodeId> = BTreeMap::new();
        for n in lhs.unlabeled() {
            let image = &rho[n];
            if !rhs.contains(image.as_str()) {
                return Err(hom_err(Error::UnknownNode(image.clone())));
            }
            if rhs.is_labeled(image.as_str()) {
                return Err(Error::UnlabeledMappedToLabeled {
                    node: n.clone(),
                    image: image.clone(),
                });
            }
            if let Some(first) = seen.insert(image, n) {
                return Err(Error::UnlabeledMergedByRho {
                    first: first.clone(),
                    second: n.clone(),
                });
            }
        }
        let rho = Homomorphism::new(disconnection.disconnected.clone(), rhs.clone(), rho)
            .map_err(hom_err)?;
        for (a, b) in &redirects {
            for n in [a, b] {
                if !rhs.contains(n.as_str()) {
                    return Err(Error::BadRedirectTarget(n.clone()));
                }
            }
        }
        Ok(LrrRule {
            name: name.into(),
            lhs,
            disconnect_set,
            rhs,
            disconnection,
            rho,
            redirects,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lhs(&self) -> &Arc<Graph> {
        &self.lhs
    }

    pub fn rhs(&self) -> &Arc<Graph> {
        &self.rhs
    }

    pub fn disconnect_set(&self) -> &BTreeSet<Edge> {
        &self.disconnect_set
    }

    /// `D(L,E)` and its connection to `L`.
    pub fn disconnection(&self) -> &DisconnectionResult {
        &self.disconnection
    }

    pub fn rho(&self) -> &Homomorphism {
        &self.rho
    }

    /// Global redirections applied, through `ν`, after the local step.
    pub fn redirects(&self) -> &[(NodeId, NodeId)] {
        &self.redirects
    }
}

/// The switch rule `P ← SW → P` of global redirection.
#[derive(Debug, Clone)]
pub struct GrRule {
    pub p: Arc<Graph>,
    pub sw: Arc<Graph>,
    pub lambda: Homomorphism,
    pub rho: Homomorphism,
}

impl GrRule {
    pub fn new() -> GrRule {
        let unlabeled = |ids: &[&str]| {
            Arc::new(
                Graph::build(ids.iter().map(|n| NodeDecl::unlabeled(n)), &Signature::new())
                    .expect("unlabeled graph"),
            )
        };
        let p = unlabeled(&["ar", "pr"]);
        let sw = unlabeled(&["ar", "pr", "mr"]);
        let map = |pairs: [(&str, &str); 3]| {
            pairs
                .iter()
                .map(|(a, b)| (NodeId::from(*a), NodeId::from(*b)))
                .collect()
        };
        let lambda = Homomorphism::new_unchecked(
            sw.clone(),
            p.clone(),
            map([("ar", "ar"), ("mr", "ar"), ("pr", "pr")]),
        );
        let rho = Homomorphism::new_unchecked(
            sw.clone(),
            p.clone(),
            map([("ar", "ar"), ("mr", "pr"), ("pr", "pr")]),
        );
        GrRule { p, sw, lambda, rho }
    }
}

impl Default for GrRule {
    fn default() -> Self {
        GrRule::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub rule: String,
    pub mu: Homomorphism,
}

impl Match {
    pub fn new(rule: &LrrRule, mu: Homomorphism) -> Result<Match> {
        check_match_domain(rule, &mu)?;
        if !mu.is_omega_injective() {
            return Err(Error::MatchInvalid(
                "match is not injective on labeled nodes".into(),
            ));
        }
        Ok(Match {
            rule: rule.name.clone(),
            mu,
        })
    }
}

fn check_match_domain(rule: &LrrRule, mu: &Homomorphism) -> Result<()> {
    if !Arc::ptr_eq(mu.dom(), &rule.lhs) && **mu.dom() != *rule.lhs {
        return Err(Error::MatchInvalid(format!(
            "match domain is not the left-hand side of rule {}",
            rule.name
        )));
    }
    Ok(())
}

/// The two squares of a double pushout.
#[derive(Debug, Clone)]
pub struct StepTrace {
    pub left: Square,
    pub right: Square,
}

#[derive(Debug, Clone)]
pub struct StepResult {
    /// Rule that fired, for steps taken by `apply_once`.
    pub rule: Option<String>,
    /// `R → V` (or `P → V` for a global redirection).
    pub nu: Homomorphism,
    /// `D(U,μ(E)) → V` (or `D̄(U,a) → V`).
    pub rho_prime: Homomorphism,
    pub trace: StepTrace,
    /// For a global redirection, the pair `(a, b)` in the host graph.
    pub redirection: Option<(NodeId, NodeId)>,
    /// Global redirections performed after a local step, in order.
    pub redirects: Vec<StepResult>,
}

impl StepResult {
    /// Pushout object of this step, before any follow-up redirection.
    pub fn pushout_graph(&self) -> &Arc<Graph> {
        self.nu.cod()
    }

    /// Final graph, after all follow-up redirections.
    pub fn result(&self) -> &Arc<Graph> {
        self.redirects
            .last()
            .map(StepResult::result)
            .unwrap_or_else(|| self.pushout_graph())
    }

    /// Node of the result that a pointer to `node` of the host graph points
    /// to after the step: its image in the pushout, moved along by every
    /// global redirection.
    pub fn follow(&self, node: &NodeId) -> Option<NodeId> {
        let mut v = self.rho_prime.image(node.as_str())?.clone();
        if let Some((a, b)) = &self.redirection {
            if v == *a {
                v = b.clone();
            }
        }
        for r in &self.redirects {
            v = r.follow(&v)?;
        }
        Some(v)
    }
}

/// Class naming used by rewrite steps: classes holding a host node keep the
/// least such host id; otherwise the right-hand-side name is used.
struct StepPolicy<'a> {
    host: &'a Graph,
}

impl ClassPolicy for StepPolicy<'_> {
    fn section(&mut self, class: ClassId, labeled: &[&Tagged]) -> Tagged {
        DefaultPolicy.section(class, labeled)
    }

    fn name(
        &self,
        witness: &QuotientWitness,
        class: ClassId,
        representative: Option<&Tagged>,
    ) -> (u8, NodeId) {
        let members = witness.members(class);
        if let Some(t) = members
            .iter()
            .find(|t| t.side == Side::Left && self.host.contains(t.node.as_str()))
        {
            return (0, t.node.clone());
        }
        if let Some(rep) = representative.filter(|r| r.side == Side::Right) {
            return (1, rep.node.clone());
        }
        if let Some(t) = members.iter().find(|t| t.side == Side::Right) {
            return (1, t.node.clone());
        }
        (2, members[0].node.clone())
    }
}

/// All Ω-injective homomorphisms `L → U`, ordered by their images listed in
/// ascending order of `L`'s node ids.
pub fn find_lrr_matches(rule: &LrrRule, host: &Arc<Graph>) -> Vec<Match> {
    let mut maps = Vec::new();
    search::for_each_hom(&rule.lhs, host, SearchMode::OmegaInjective, |m| {
        maps.push(m.clone());
        true
    });
    maps.sort_by(|a, b| a.values().cmp(b.values()));
    maps.into_iter()
        .map(|map| Match {
            rule: rule.name.clone(),
            mu: Homomorphism::new_unchecked(rule.lhs.clone(), host.clone(), map),
        })
        .collect()
}

/// One LRR step, followed by the rule's global redirections.
pub fn lrr_step(rule: &LrrRule, m: &Match) -> Result<StepResult> {
    check_match_domain(rule, &m.mu)?;
    if !m.mu.is_omega_injective() {
        return Err(Error::MatchInvalid(
            "match is not injective on labeled nodes".into(),
        ));
    }
    lrr_step_unchecked(rule, &m.mu)
}

/// Like `lrr_step` but without the Ω-injectivity check, so that the
/// failure of the right pushout on non-injective matches can be observed.
pub fn lrr_step_unchecked(rule: &LrrRule, mu: &Homomorphism) -> Result<StepResult> {
    check_match_domain(rule, mu)?;
    let host = mu.cod();
    let d_mu = disconnect_hom(mu, &rule.disconnect_set)?;

    let left = Square::new(
        Span::new(rule.disconnection.connection.clone(), d_mu.hom.clone())?,
        mu.clone(),
        d_mu.target.connection.clone(),
    )?;
    let span = Span::new(d_mu.hom.clone(), rule.rho.clone())?;
    let po = pushout_with(&span, &mut StepPolicy { host })?;
    let right = po.square(span);
    debug_assert!(check_square(&left).holds(), "left square is not a pushout");
    debug_assert!(check_square(&right).holds(), "right square is not a pushout");

    let mut step = StepResult {
        rule: None,
        nu: po.right_leg,
        rho_prime: po.left_leg,
        trace: StepTrace { left, right },
        redirection: None,
        redirects: Vec::new(),
    };
    let mut current = step.pushout_graph().clone();
    for (a, b) in &rule.redirects {
        let a = step.nu.image(a.as_str()).expect("redirect names an R node").clone();
        let b = step.nu.image(b.as_str()).expect("redirect names an R node").clone();
        let gr = gr_step(&current, &a, &b)?;
        current = gr.result().clone();
        step.redirects.push(gr);
    }
    Ok(step)
}

/// Redirects every edge of `host` that targets `from` towards `to`.
pub fn gr_step(host: &Arc<Graph>, from: &NodeId, to: &NodeId) -> Result<StepResult> {
    for n in [from, to] {
        if !host.contains(n.as_str()) {
            return Err(Error::NoSuchNode(n.clone()));
        }
    }
    let rule = GrRule::new();
    let mu = Homomorphism::new(
        rule.p.clone(),
        host.clone(),
        [("ar", from), ("pr", to)]
            .into_iter()
            .map(|(k, v)| (NodeId::from(k), v.clone()))
            .collect(),
    )?;
    let cut = disconnect_node(host, from)?;
    let d_mu = Homomorphism::new(
        rule.sw.clone(),
        cut.disconnected.clone(),
        [("ar", from), ("pr", to), ("mr", &cut.mr)]
            .into_iter()
            .map(|(k, v)| (NodeId::from(k), v.clone()))
            .collect(),
    )?;

    let left = Square::new(
        Span::new(rule.lambda.clone(), d_mu.clone())?,
        mu,
        cut.connection.clone(),
    )?;
    let span = Span::new(d_mu, rule.rho.clone())?;
    let po = pushout_with(&span, &mut StepPolicy { host })?;
    let right = po.square(span);
    debug_assert!(check_square(&left).holds(), "left square is not a pushout");
    debug_assert!(check_square(&right).holds(), "right square is not a pushout");

    Ok(StepResult {
        rule: None,
        nu: po.right_leg,
        rho_prime: po.left_leg,
        trace: StepTrace { left, right },
        redirection: Some((from.clone(), to.clone())),
        redirects: Vec::new(),
    })
}

/// Restriction of `graph` to the nodes reachable from `roots`.
pub fn trim(graph: &Graph, roots: &[NodeId]) -> Result<Graph> {
    let mut keep = BTreeSet::new();
    let mut queue = VecDeque::new();
    for r in roots {
        if !graph.contains(r.as_str()) {
            return Err(Error::NoSuchNode(r.clone()));
        }
        if keep.insert(r.clone()) {
            queue.push_back(r.clone());
        }
    }
    while let Some(n) = queue.pop_front() {
        for s in graph.successors(n.as_str()) {
            if keep.insert(s.clone()) {
                queue.push_back(s.clone());
            }
        }
    }
    let nodes = graph
        .raw_nodes()
        .iter()
        .filter(|(id, _)| keep.contains(*id))
        .map(|(id, t)| (id.clone(), t.clone()))
        .collect();
    Graph::from_nodes(nodes, graph.signature().clone())
}

pub const DEFAULT_FUEL: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteSystem {
    pub signature: Signature,
    rules: Vec<LrrRule>,
    pub fuel: usize,
    pub trim_roots: Option<Vec<NodeId>>,
}

impl RewriteSystem {
    pub fn new(signature: Signature, rules: Vec<LrrRule>) -> Result<RewriteSystem> {
        let mut names = BTreeSet::new();
        for r in &rules {
            if !names.insert(r.name.as_str()) {
                return Err(Error::DuplicateRule(r.name.clone()));
            }
        }
        Ok(RewriteSystem {
            signature,
            rules,
            fuel: DEFAULT_FUEL,
            trim_roots: None,
        })
    }

    pub fn rules(&self) -> &[LrrRule] {
        &self.rules
    }

    pub fn rule(&self, name: &str) -> Result<&LrrRule> {
        self.rules
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::NoSuchRule(name.to_string()))
    }
}

/// Fires the first match of the first rule that has one.
pub fn apply_once(system: &RewriteSystem, host: &Arc<Graph>) -> Result<Option<StepResult>> {
    for rule in &system.rules {
        if let Some(m) = find_lrr_matches(rule, host).into_iter().next() {
            let mut step = lrr_step(rule, &m)?;
            step.rule = Some(rule.name.clone());
            return Ok(Some(step));
        }
    }
    Ok(None)
}

/// One step taken by `normalize`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppliedStep {
    pub rule: String,
    /// Global redirections performed after the local step.
    pub redirects: usize,
}

#[derive(Debug, Clone)]
pub struct Normalization {
    pub graph: Arc<Graph>,
    pub steps: Vec<AppliedStep>,
    /// Where the trim roots ended up.
    pub roots: Vec<NodeId>,
}

/// Rewrites until no rule matches. With trim roots, the roots are followed
/// through every step and unreachable nodes are dropped after each step, so
/// garbage left behind by a step cannot be matched again.
pub fn normalize(system: &RewriteSystem, host: &Arc<Graph>) -> Result<Normalization> {
    let mut roots = system.trim_roots.clone();
    let mut current = match &roots {
        Some(r) => Arc::new(trim(host, r)?),
        None => host.clone(),
    };
    let mut steps = Vec::new();
    while let Some(step) = apply_once(system, &current)? {
        if steps.len() >= system.fuel {
            return Err(Error::FuelExhausted {
                steps: steps.len(),
                last: Box::new((*current).clone()),
            });
        }
        steps.push(AppliedStep {
            rule: step.rule.clone().unwrap_or_default(),
            redirects: step.redirects.len(),
        });
        current = step.result().clone();
        if let Some(r) = &mut roots {
            for root in r.iter_mut() {
                *root = step.follow(root).expect("host nodes survive a step");
            }
            current = Arc::new(trim(&current, r)?);
        }
    }
    Ok(Normalization {
        graph: current,
        steps,
        roots: roots.unwrap_or_default(),
    })
}
