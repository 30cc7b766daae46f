//! Explicit automorphisms of the `G x G` Cayley graphs, the predicted
//! automorphism-group order, and edge/arc transitivity.

use serde::Serialize;
use thiserror::Error;

use crate::gamma::GammaInstance;
use crate::graph::{
    automorphism_search, orbits_on, GraphError, ItemKind, PermGroup, VertexPermutation, DEFAULT_SEARCH_BOUND,
};
use crate::group::{
    aut_stabilizing_subgroup, generating_subset, is_elementary_abelian, is_normal, orbit_of, quotient, FiniteGroup,
    GroupAut, GroupError, Subgroup, DEFAULT_ORDER_BOUND,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("{map} is not an automorphism of the graph")]
    AutomorphismCheckFailed { map: String },
    #[error("edge-transitive instance with quotient that is not elementary abelian: {detail}")]
    CorollaryViolated { detail: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T, E = SymmetryError> = std::result::Result<T, E>;

#[derive(Debug, Clone)]
pub struct NamedAutomorphisms {
    /// `(x, y) -> (y, x)`
    pub sigma: VertexPermutation,
    /// `(x, y) -> (y^-1, y^-1 x)`; a permutation always, an automorphism only sometimes.
    pub alpha: VertexPermutation,
    pub alpha_is_automorphism: bool,
    /// `psi_(a,e)` then `psi_(e,a)` for each `a` in a generating subset of `G`.
    pub translations: Vec<VertexPermutation>,
    /// `f~` for each `f` in a generating subset of `Aut_H(G)`.
    pub lifted: Vec<VertexPermutation>,
    pub lifted_from: Vec<GroupAut>,
}

impl NamedAutomorphisms {
    /// Every map that is an automorphism, as one generator list.
    pub fn generators(&self) -> Vec<VertexPermutation> {
        let mut gens = self.translations.clone();
        gens.push(self.sigma.clone());
        if self.alpha_is_automorphism {
            gens.push(self.alpha.clone());
        }
        gens.extend(self.lifted.iter().cloned());
        gens
    }
}

/// `psi_(a,b): (x, y) -> (x a^-1, y b^-1)`.
///
/// Adjacency depends on `u v^-1`, so right multiplication preserves it for
/// every `H`; left multiplication only does when `H` is normal. The inverse
/// keeps `psi_(a,b) psi_(c,d) = psi_(ac,bd)`.
pub fn translation(group: &FiniteGroup, a: usize, b: usize) -> VertexPermutation {
    let n = group.order();
    let (ai, bi) = (group.inv(a), group.inv(b));
    VertexPermutation::from_fn(n * n, |v| group.mul(v / n, ai) * n + group.mul(v % n, bi)).expect("bijection")
}

/// `f~: (x, y) -> (f(x), f(y))`.
pub fn lift(group: &FiniteGroup, f: &GroupAut) -> VertexPermutation {
    let n = group.order();
    VertexPermutation::from_fn(n * n, |v| f.apply(v / n) * n + f.apply(v % n)).expect("bijection")
}

pub fn sigma(group: &FiniteGroup) -> VertexPermutation {
    let n = group.order();
    VertexPermutation::from_fn(n * n, |v| (v % n) * n + v / n).expect("bijection")
}

pub fn alpha(group: &FiniteGroup) -> VertexPermutation {
    let n = group.order();
    VertexPermutation::from_fn(n * n, |v| {
        let (x, yi) = (v / n, group.inv(v % n));
        yi * n + group.mul(yi, x)
    })
    .expect("bijection")
}

/// A subset of `auts` generating the same group, picked greedily in order.
fn generating_auts(order: usize, auts: &[GroupAut]) -> Vec<GroupAut> {
    let mut picked: Vec<GroupAut> = Vec::new();
    let mut span = PermGroup::trivial(order);
    for f in auts {
        let p = VertexPermutation::new(f.mapping().to_vec()).expect("automorphism is a bijection");
        if !span.contains(&p) {
            picked.push(f.clone());
            let gens =
                picked.iter().map(|g| VertexPermutation::new(g.mapping().to_vec()).expect("bijection")).collect();
            span = PermGroup::new(order, gens).expect("same degree");
        }
    }
    picked
}

pub fn named_automorphisms(inst: &GammaInstance) -> Result<NamedAutomorphisms> {
    let (group, h, graph) = (inst.group(), inst.subgroup(), inst.graph());
    let check = |p: &VertexPermutation, name: String| -> Result<()> {
        if graph.is_automorphism(p)? {
            Ok(())
        } else {
            Err(SymmetryError::AutomorphismCheckFailed { map: name })
        }
    };
    let e = group.identity();

    let sigma = sigma(group);
    check(&sigma, "sigma".into())?;

    let alpha = alpha(group);
    let alpha_is_automorphism = graph.is_automorphism(&alpha)?;
    if !alpha_is_automorphism && is_normal(group, h) {
        return Err(SymmetryError::AutomorphismCheckFailed { map: "alpha (normal subgroup)".into() });
    }

    let mut translations = Vec::new();
    for a in generating_subset(group) {
        for (x, y) in [(a, e), (e, a)] {
            let psi = translation(group, x, y);
            check(&psi, format!("psi_({x},{y})"))?;
            translations.push(psi);
        }
    }

    let lifted_from = generating_auts(group.order(), &aut_stabilizing_subgroup(group, h, DEFAULT_ORDER_BOUND)?);
    let mut lifted = Vec::new();
    for f in &lifted_from {
        let ft = lift(group, f);
        check(&ft, format!("lift of {:?}", f.mapping()))?;
        lifted.push(ft);
    }
    Ok(NamedAutomorphisms { sigma, alpha, alpha_is_automorphism, translations, lifted, lifted_from })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PredictedOrders {
    pub stabilizer: u128,
    pub full: u128,
}

/// `|Aut_H(G)| * (6 if H is normal else 2)` and `|G|^2` times that.
/// `None` when `H` is trivial or all of `G`, where the formula does not apply.
pub fn predicted_orders(group: &FiniteGroup, h: &Subgroup) -> Result<Option<PredictedOrders>> {
    if h.is_trivial() || h.is_whole() {
        return Ok(None);
    }
    let aut_h = aut_stabilizing_subgroup(group, h, DEFAULT_ORDER_BOUND)?.len() as u128;
    let stabilizer = aut_h * if is_normal(group, h) { 6 } else { 2 };
    let n = group.order() as u128;
    Ok(Some(PredictedOrders { stabilizer, full: n * n * stabilizer }))
}

/// Whether to run the refinement search for the full automorphism group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BruteforceLeg {
    /// Only when `|G| <= 8`.
    #[default]
    Auto,
    Skip,
    /// Up to the search bound of 100 vertices.
    Force,
}

pub const AUTO_BRUTEFORCE_MAX_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transitivity {
    pub vertex: bool,
    pub edge: bool,
    pub arc: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryVerdict {
    pub predicted_stabilizer_order: Option<u128>,
    pub predicted_full_order: Option<u128>,
    pub generated_order: u128,
    pub bruteforce_order: Option<u128>,
    pub alpha_is_automorphism: bool,
    pub vertex_transitive: bool,
    pub edge_transitive_algebraic: bool,
    pub edge_transitive_orbits: bool,
    pub arc_transitive_orbits: bool,
    /// `None` when `H` is not normal.
    pub elementary_abelian_quotient: Option<bool>,
    /// Orbits were computed from the searched group rather than the named maps.
    pub orbits_from_search: bool,
}

impl SymmetryVerdict {
    /// Predicted, generated and searched orders coincide where present.
    pub fn orders_agree(&self) -> bool {
        let predicted = self.predicted_full_order.is_none_or(|p| p == self.generated_order);
        let searched = self.bruteforce_order.is_none_or(|b| b == self.generated_order);
        predicted && searched
    }

    pub fn transitivity_agrees(&self) -> bool {
        self.edge_transitive_orbits == self.arc_transitive_orbits
            && self.edge_transitive_orbits == self.edge_transitive_algebraic
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.predicted_full_order.is_some_and(|p| p != self.generated_order) {
            out.push("aut_order:predicted_vs_generated".into());
        }
        if self.bruteforce_order.is_some_and(|b| b != self.generated_order) {
            out.push("aut_order:generated_vs_search".into());
        }
        if !self.vertex_transitive {
            out.push("vertex_transitive".into());
        }
        if !self.transitivity_agrees() {
            out.push("edge_arc_equivalence".into());
        }
        out
    }
}

pub fn transitivity_by_orbits(inst: &GammaInstance, group: &PermGroup) -> Result<Transitivity> {
    let g = inst.graph();
    let single = |kind| -> Result<bool> { Ok(orbits_on(group, g, kind)?.len() == 1) };
    Ok(Transitivity {
        vertex: single(ItemKind::Vertices)?,
        edge: single(ItemKind::Edges)?,
        arc: single(ItemKind::Arcs)?,
    })
}

/// `H` normal and `Aut_H(G)` transitive on `G \ H`.
pub fn edge_transitivity_condition(group: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    if h.is_whole() || !is_normal(group, h) {
        return Ok(false);
    }
    let auts: Vec<Vec<usize>> =
        aut_stabilizing_subgroup(group, h, DEFAULT_ORDER_BOUND)?.into_iter().map(|f| f.mapping().to_vec()).collect();
    let outside = h.complement();
    Ok(orbit_of(&auts, outside[0])? == outside)
}

pub fn certify_aut_group(inst: &GammaInstance, leg: BruteforceLeg) -> Result<SymmetryVerdict> {
    let (group, h) = (inst.group(), inst.subgroup());
    let named = named_automorphisms(inst)?;
    let degree = inst.graph().vertex_count();
    let generated = PermGroup::new(degree, named.generators())?;
    let generated_order = generated.order()?;
    let predicted = predicted_orders(group, h)?;

    let run_search = match leg {
        BruteforceLeg::Auto => group.order() <= AUTO_BRUTEFORCE_MAX_ORDER,
        BruteforceLeg::Skip => false,
        BruteforceLeg::Force => true,
    };
    let searched = if run_search { Some(automorphism_search(inst.graph(), DEFAULT_SEARCH_BOUND)?) } else { None };
    let bruteforce_order = searched.as_ref().map(PermGroup::order).transpose()?;

    let orbit_group = searched.as_ref().unwrap_or(&generated);
    let t = transitivity_by_orbits(inst, orbit_group)?;
    let elementary_abelian_quotient =
        if is_normal(group, h) { Some(is_elementary_abelian(&quotient(group, h)?)) } else { None };

    Ok(SymmetryVerdict {
        predicted_stabilizer_order: predicted.map(|p| p.stabilizer),
        predicted_full_order: predicted.map(|p| p.full),
        generated_order,
        bruteforce_order,
        alpha_is_automorphism: named.alpha_is_automorphism,
        vertex_transitive: t.vertex,
        edge_transitive_algebraic: edge_transitivity_condition(group, h)?,
        edge_transitive_orbits: t.edge,
        arc_transitive_orbits: t.arc,
        elementary_abelian_quotient,
        orbits_from_search: searched.is_some(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CorollaryVerdict {
    Holds,
    /// Not edge-transitive. `converse_failure`: `H` is normal with
    /// elementary abelian quotient all the same.
    NotApplicable {
        converse_failure: bool,
    },
}

/// Edge-transitive implies `G/H` elementary abelian.
pub fn corollary_elem_abelian_check(group: &FiniteGroup, h: &Subgroup) -> Result<CorollaryVerdict> {
    let normal = is_normal(group, h);
    if edge_transitivity_condition(group, h)? {
        let q = quotient(group, h)?;
        if !is_elementary_abelian(&q) {
            return Err(SymmetryError::CorollaryViolated { detail: format!("{} / {:?}", group.label(), h.members()) });
        }
        return Ok(CorollaryVerdict::Holds);
    }
    let converse_failure = normal && !h.is_whole() && is_elementary_abelian(&quotient(group, h)?);
    Ok(CorollaryVerdict::NotApplicable { converse_failure })
}
