//! Common-neighbour parameters of a graph, and their closed-form values
//! for the `G x G` Cayley graphs built in [`crate::gamma`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::gamma::{build_gamma, GammaInstance, Result};
use crate::graph::{Graph, Regularity};
use crate::group::{is_normal, witness_coset_asymmetry, FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParameterProfile {
    pub n: usize,
    /// Common degree, or `None` when the graph is not regular.
    pub k: Option<usize>,
    /// Two vertices of different degree, when not regular.
    pub irregular_pair: Option<(usize, usize)>,
    pub a_values: BTreeSet<usize>,
    pub c_values: BTreeSet<usize>,
    /// Non-adjacent distinct pairs by common-neighbour count.
    pub c_histogram: BTreeMap<usize, usize>,
    /// First adjacent pair (lexicographic) realizing each value in `a_values`.
    pub a_examples: BTreeMap<usize, (usize, usize)>,
    /// First non-adjacent pair realizing each value in `c_values`.
    pub c_examples: BTreeMap<usize, (usize, usize)>,
}

pub fn empirical_profile(g: &Graph) -> ParameterProfile {
    let n = g.vertex_count();
    let (k, irregular_pair) = match g.regularity() {
        Regularity::Regular(k) => (Some(k), None),
        Regularity::NotRegular { u, v, .. } => (None, Some((u, v))),
    };
    let mut a_examples = BTreeMap::new();
    let mut c_examples = BTreeMap::new();
    let mut c_histogram = BTreeMap::new();
    for u in 0..n {
        for v in u + 1..n {
            let c = g.common_count_unchecked(u, v);
            if g.has_edge(u, v) {
                a_examples.entry(c).or_insert((u, v));
            } else {
                c_examples.entry(c).or_insert((u, v));
                *c_histogram.entry(c).or_insert(0) += 1;
            }
        }
    }
    ParameterProfile {
        n,
        k,
        irregular_pair,
        a_values: a_examples.keys().copied().collect(),
        c_values: c_examples.keys().copied().collect(),
        c_histogram,
        a_examples,
        c_examples,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Index2,
    NormalH2,
    NormalHbig,
    NonnormalH2,
    NonnormalHbig,
    #[serde(rename = "trivial_H")]
    TrivialH,
    #[serde(rename = "improper_H")]
    ImproperH,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Index2 => "index2",
            CaseTag::NormalH2 => "normal_h2",
            CaseTag::NormalHbig => "normal_hbig",
            CaseTag::NonnormalH2 => "nonnormal_h2",
            CaseTag::NonnormalHbig => "nonnormal_hbig",
            CaseTag::TrivialH => "trivial_H",
            CaseTag::ImproperH => "improper_H",
        })
    }
}

/// Two or more formula terms of a case that evaluate to the same number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub value: usize,
    pub terms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    /// Common neighbours of adjacent vertices; `None` for the edgeless graph.
    pub a: Option<usize>,
    pub c_set: BTreeSet<usize>,
    pub case_tag: CaseTag,
    pub collisions: Vec<Collision>,
}

pub fn predict(group: &FiniteGroup, h: &Subgroup) -> Prediction {
    let (order, sub) = (group.order(), h.order());
    let outside = order - sub;
    let normal = is_normal(group, h);
    let case_tag = match () {
        _ if h.is_whole() => CaseTag::ImproperH,
        _ if h.is_trivial() => CaseTag::TrivialH,
        _ if h.index() == 2 => CaseTag::Index2,
        _ if normal && sub == 2 => CaseTag::NormalH2,
        _ if normal => CaseTag::NormalHbig,
        _ if sub == 2 => CaseTag::NonnormalH2,
        _ => CaseTag::NonnormalHbig,
    };
    let big = "|G|-|H|";
    let terms: Vec<(&str, usize)> = match case_tag {
        CaseTag::ImproperH => vec![("0", 0)],
        CaseTag::TrivialH => vec![("6", 6)],
        CaseTag::Index2 => vec![("0", 0), ("2", 2), (big, outside)],
        CaseTag::NormalH2 => vec![("2", 2), ("6", 6), (big, outside)],
        CaseTag::NormalHbig => vec![("0", 0), ("2", 2), ("6", 6), (big, outside)],
        CaseTag::NonnormalH2 => vec![("2", 2), ("4", 4), ("6", 6), (big, outside)],
        CaseTag::NonnormalHbig => vec![("0", 0), ("2", 2), ("4", 4), ("6", 6), (big, outside)],
    };
    let mut by_value: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (name, value) in terms {
        by_value.entry(value).or_default().push(name.to_string());
    }
    let collisions =
        by_value.iter().filter(|(_, t)| t.len() > 1).map(|(&value, t)| Collision { value, terms: t.clone() }).collect();
    let a = (case_tag != CaseTag::ImproperH).then(|| order + 2 - 2 * sub);
    Prediction { a, c_set: by_value.into_keys().collect(), case_tag, collisions }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Srg {
        n: usize,
        k: usize,
        a: usize,
        c: Option<usize>,
    },
    Qsrg {
        n: usize,
        k: usize,
        a: usize,
        c_set: BTreeSet<usize>,
    },
    /// `witness` is a pair of adjacent pairs with different counts, or the
    /// irregular vertex pair when the graph is not regular.
    NotQsrg {
        witness: Vec<(usize, usize)>,
    },
}

pub fn classify(p: &ParameterProfile) -> Classification {
    let Some(k) = p.k else {
        let (u, v) = p.irregular_pair.expect("irregular pair recorded");
        return Classification::NotQsrg { witness: vec![(u, v)] };
    };
    if p.a_values.len() > 1 {
        return Classification::NotQsrg { witness: p.a_examples.values().take(2).copied().collect() };
    }
    // an edgeless graph has no adjacent pairs; read its a as 0
    let a = p.a_values.first().copied().unwrap_or(0);
    if p.c_values.len() <= 1 {
        Classification::Srg { n: p.n, k, a, c: p.c_values.first().copied() }
    } else {
        Classification::Qsrg { n: p.n, k, a, c_set: p.c_values.clone() }
    }
}

/// A non-adjacent pair `((e,e), v)` that the theory says has `expected`
/// common neighbours, with the observed count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub claim: String,
    pub pair: ((usize, usize), (usize, usize)),
    pub expected: usize,
    pub observed: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParameterReport {
    pub prediction: Prediction,
    pub profile: ParameterProfile,
    pub degree_match: bool,
    pub a_match: bool,
    pub c_set_match: bool,
    pub witnesses: Vec<WitnessCheck>,
}

impl ParameterReport {
    pub fn all_match(&self) -> bool {
        self.degree_match && self.a_match && self.c_set_match && self.witnesses.iter().all(|w| w.holds)
    }

    /// Names of the failing claims.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (ok, name) in [(self.degree_match, "degree"), (self.a_match, "a"), (self.c_set_match, "c_set")] {
            if !ok {
                out.push(name.to_string());
            }
        }
        out.extend(self.witnesses.iter().filter(|w| !w.holds).map(|w| format!("witness:{}", w.claim)));
        out
    }
}

fn lemma_witnesses(inst: &GammaInstance) -> Vec<WitnessCheck> {
    let (group, h) = (inst.group(), inst.subgroup());
    let e = group.identity();
    if h.is_whole() || h.is_trivial() {
        return Vec::new();
    }
    let base = inst.base_vertex();
    let hs: Vec<usize> = h.members().iter().copied().filter(|&x| x != e).collect();
    let outside = h.complement();
    let (h1, g) = (hs[0], outside[0]);
    let mut picks: Vec<(&str, (usize, usize), usize)> =
        vec![("(e,h) shares |G|-|H|", (e, h1), group.order() - h.order()), ("(g,h) shares 2", (g, h1), 2)];
    if h.order() > 2 {
        picks.push(("(h1,h2) shares 0", (hs[0], hs[1]), 0));
    }
    if h.index() > 2 {
        // g1, g2 outside H with different left and different right cosets
        let pair = outside
            .iter()
            .flat_map(|&x| outside.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| !h.contains(group.mul(group.inv(x), y)) && !h.contains(group.mul(x, group.inv(y))));
        if let Some(p) = pair {
            picks.push(("(g1,g2) in distinct cosets shares 6", p, 6));
        }
    }
    if let Some(p) = witness_coset_asymmetry(group, h) {
        picks.push(("coset-asymmetric (g1,g2) shares 4", p, 4));
    }
    picks
        .into_iter()
        .map(|(claim, (x, y), expected)| {
            let v = inst.vertex(x, y);
            let observed = inst.graph().common_neighbour_count(base, v).expect("vertices in range");
            WitnessCheck {
                claim: claim.to_string(),
                pair: ((e, e), (x, y)),
                expected,
                observed,
                holds: observed == expected && !inst.graph().has_edge(base, v),
            }
        })
        .collect()
}

/// Compares the measured parameters of an already built instance with [`predict`].
pub fn certify_instance(inst: &GammaInstance) -> ParameterReport {
    let prediction = predict(inst.group(), inst.subgroup());
    let profile = empirical_profile(inst.graph());
    let a_match = match prediction.a {
        Some(a) => profile.a_values.len() == 1 && profile.a_values.contains(&a),
        None => profile.a_values.is_empty(),
    };
    ParameterReport {
        degree_match: profile.k == Some(inst.expected_degree()),
        a_match,
        c_set_match: profile.c_values == prediction.c_set,
        witnesses: lemma_witnesses(inst),
        prediction,
        profile,
    }
}

pub fn certify_parameters(group: &FiniteGroup, h: &Subgroup, allow_small: bool) -> Result<ParameterReport> {
    Ok(certify_instance(&build_gamma(group, h, allow_small)?))
}
