//! The Cayley graph of `G x G` with connection set
//! `S = {(g,e), (e,g), (g,g) : g not in H}` and its neighbourhood families.
//!
//! Vertex `(g1, g2)` has index `g1 * |G| + g2`, which is also the element
//! index of the pair in `G.direct_product(G)`.

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::group::{cosets, CosetSide, FiniteGroup, GroupError, Subgroup};

/// Smallest group order the construction is defined for.
pub const MIN_GROUP_ORDER: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("group order {order} is below {MIN_GROUP_ORDER}; pass the small-order override to build it anyway")]
    OrderTooSmall { order: usize },
    #[error("connection set is not inverse-symmetric: {element} is in it but its inverse {inverse} is not")]
    NotInverseSymmetric { element: usize, inverse: usize },
    #[error("connection set contains the identity")]
    ContainsIdentity,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T, E = GammaError> = std::result::Result<T, E>;

/// Cayley graph on `group`: distinct `u, v` adjacent iff `u v^-1` is in `connection`.
pub fn build_cayley(group: &FiniteGroup, connection: &[usize]) -> Result<Graph> {
    let n = group.order();
    let mut in_s = vec![false; n];
    for &s in connection {
        group.check_index(s)?;
        in_s[s] = true;
    }
    if in_s[group.identity()] {
        return Err(GammaError::ContainsIdentity);
    }
    if let Some(element) = (0..n).find(|&s| in_s[s] && !in_s[group.inv(s)]) {
        return Err(GammaError::NotInverseSymmetric { element, inverse: group.inv(element) });
    }
    let mut g = Graph::empty(n);
    for v in 0..n {
        let vi = group.inv(v);
        for u in v + 1..n {
            if in_s[group.mul(u, vi)] {
                g.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighbourType {
    /// `(g, e)` with `g` outside `H`
    Type1,
    /// `(e, g)` with `g` outside `H`
    Type2,
    /// `(g, g)` with `g` outside `H`
    Type3,
    NotNeighbour,
}

/// The connection set and its canonical pieces, as vertex indices.
///
/// Index `i` of each triple is the `i+1`-th type: `(g,e)`, `(e,g)`, `(g,g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionFamily {
    pub s: Vec<usize>,
    pub s_types: [Vec<usize>; 3],
    /// `blocks[i][j]`: type `i` vertices whose element lies in the `j`-th
    /// nontrivial right coset `Ha_j`, cosets ordered by minimal element.
    pub blocks: [Vec<Vec<usize>>; 3],
    /// Type `i` vertices built from `H \ {e}`.
    pub h_sets: [Vec<usize>; 3],
    /// Type `i` vertices built from `G \ {e}`.
    pub c_sets: [Vec<usize>; 3],
}

fn typed_vertex(n: usize, e: usize, kind: usize, g: usize) -> usize {
    match kind {
        0 => g * n + e,
        1 => e * n + g,
        _ => g * n + g,
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

pub fn connection_set(group: &FiniteGroup, h: &Subgroup) -> Result<ConnectionFamily> {
    h.check_parent(group)?;
    let n = group.order();
    let e = group.identity();
    let outside = h.complement();
    let right_cosets: Vec<Vec<usize>> =
        cosets(group, h, CosetSide::Right)?.into_iter().filter(|block| !h.contains(block[0])).collect();
    let h_nontrivial: Vec<usize> = h.members().iter().copied().filter(|&x| x != e).collect();
    let nonidentity: Vec<usize> = group.elements().filter(|&x| x != e).collect();

    let per_type = |kind: usize, elements: &[usize]| -> Vec<usize> {
        sorted(elements.iter().map(|&g| typed_vertex(n, e, kind, g)).collect())
    };
    let s_types = [0, 1, 2].map(|k| per_type(k, &outside));
    let blocks = [0, 1, 2].map(|k| right_cosets.iter().map(|c| per_type(k, c)).collect());
    let h_sets = [0, 1, 2].map(|k| per_type(k, &h_nontrivial));
    let c_sets = [0, 1, 2].map(|k| per_type(k, &nonidentity));
    let s = sorted(s_types.iter().flatten().copied().collect());
    Ok(ConnectionFamily { s, s_types, blocks, h_sets, c_sets })
}

#[derive(Debug, Clone)]
pub struct GammaInstance {
    group: FiniteGroup,
    subgroup: Subgroup,
    graph: Graph,
}

impl GammaInstance {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex(&self, g1: usize, g2: usize) -> usize {
        g1 * self.group.order() + g2
    }

    pub fn pair(&self, v: usize) -> (usize, usize) {
        (v / self.group.order(), v % self.group.order())
    }

    /// The vertex `(e, e)`.
    pub fn base_vertex(&self) -> usize {
        let e = self.group.identity();
        self.vertex(e, e)
    }

    pub fn expected_degree(&self) -> usize {
        3 * (self.group.order() - self.subgroup.order())
    }

    pub fn neighbour_type(&self, v: usize) -> Result<NeighbourType> {
        self.graph.check_vertex(v)?;
        let e = self.group.identity();
        let (a, b) = self.pair(v);
        let out = |x: usize| !self.subgroup.contains(x);
        Ok(match (a, b) {
            (a, b) if b == e && a != e && out(a) => NeighbourType::Type1,
            (a, b) if a == e && b != e && out(b) => NeighbourType::Type2,
            (a, b) if a == b && out(a) => NeighbourType::Type3,
            _ => NeighbourType::NotNeighbour,
        })
    }

    pub fn connection_family(&self) -> ConnectionFamily {
        connection_set(&self.group, &self.subgroup).expect("instance subgroup belongs to its group")
    }
}

/// Builds the graph for `(group, h)`. Orders below [`MIN_GROUP_ORDER`] are
/// refused unless `allow_small` is set.
pub fn build_gamma(group: &FiniteGroup, h: &Subgroup, allow_small: bool) -> Result<GammaInstance> {
    if group.order() < MIN_GROUP_ORDER && !allow_small {
        return Err(GammaError::OrderTooSmall { order: group.order() });
    }
    let family = connection_set(group, h)?;
    let square = group.direct_product(group);
    let graph = build_cayley(&square, &family.s)?;
    Ok(GammaInstance { group: group.clone(), subgroup: h.clone(), graph })
}
