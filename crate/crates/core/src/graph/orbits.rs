use std::collections::HashMap;

use super::{Graph, GraphError, PermGroup, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ItemKind {
    Vertices,
    /// Unordered adjacent pairs.
    Edges,
    /// Ordered adjacent pairs.
    Arcs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Item {
    Vertex(usize),
    /// Stored with `u < v`.
    Edge(usize, usize),
    Arc(usize, usize),
}

fn items(g: &Graph, kind: ItemKind) -> Vec<Item> {
    match kind {
        ItemKind::Vertices => (0..g.vertex_count()).map(Item::Vertex).collect(),
        ItemKind::Edges => g.edges().map(|(u, v)| Item::Edge(u, v)).collect(),
        ItemKind::Arcs => g.edges().flat_map(|(u, v)| [Item::Arc(u, v), Item::Arc(v, u)]).collect(),
    }
}

fn image(item: Item, p: &[usize]) -> Item {
    match item {
        Item::Vertex(v) => Item::Vertex(p[v]),
        Item::Edge(u, v) => {
            let (a, b) = (p[u], p[v]);
            Item::Edge(a.min(b), a.max(b))
        }
        Item::Arc(u, v) => Item::Arc(p[u], p[v]),
    }
}

/// Orbits of the induced action on the chosen items. Each orbit is sorted,
/// and orbits are ordered by their least item.
pub fn orbits_on(group: &PermGroup, g: &Graph, kind: ItemKind) -> Result<Vec<Vec<Item>>> {
    if group.degree() != g.vertex_count() {
        return Err(GraphError::DegreeMismatch { expected: g.vertex_count(), found: group.degree() });
    }
    let all = items(g, kind);
    let index: HashMap<Item, usize> = all.iter().enumerate().map(|(i, &it)| (it, i)).collect();
    let mut orbit_of = vec![usize::MAX; all.len()];
    let mut orbits: Vec<Vec<Item>> = Vec::new();
    for start in 0..all.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let it = all[members[k]];
            for gen in group.generators() {
                let j = *index
                    .get(&image(it, gen.as_slice()))
                    .ok_or_else(|| GraphError::NotAPermutation("generator does not preserve adjacency".into()))?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        let mut orbit: Vec<Item> = members.into_iter().map(|i| all[i]).collect();
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{automorphism_search, VertexPermutation, DEFAULT_SEARCH_BOUND};
    use proptest::prelude::*;

    #[test]
    fn cycle_is_edge_transitive() {
        let c5 = Graph::cycle(5);
        let aut = automorphism_search(&c5, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(orbits_on(&aut, &c5, ItemKind::Edges).unwrap().len(), 1);
        assert_eq!(orbits_on(&aut, &c5, ItemKind::Arcs).unwrap().len(), 1);
    }

    #[test]
    fn star_has_two_vertex_orbits() {
        let s = star(3);
        let aut = automorphism_search(&s, DEFAULT_SEARCH_BOUND).unwrap();
        let orbits = orbits_on(&aut, &s, ItemKind::Vertices).unwrap();
        assert_eq!(orbits, vec![vec![Item::Vertex(0)], vec![Item::Vertex(1), Item::Vertex(2), Item::Vertex(3)]]);
    }

    #[test]
    fn trivial_group_on_triangle() {
        let k3 = Graph::complete(3);
        let orbits = orbits_on(&PermGroup::trivial(3), &k3, ItemKind::Edges).unwrap();
        assert_eq!(orbits.len(), 3);
        assert_eq!(orbits_on(&PermGroup::trivial(3), &k3, ItemKind::Arcs).unwrap().len(), 6);
    }

    #[test]
    fn path_arcs_split_from_edges() {
        // P3 has one edge orbit; the leaf swap does not reverse an arc
        let p3 = path3();
        let aut = automorphism_search(&p3, DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(orbits_on(&aut, &p3, ItemKind::Edges).unwrap().len(), 1);
        assert_eq!(orbits_on(&aut, &p3, ItemKind::Arcs).unwrap().len(), 2);
    }

    #[test]
    fn degree_mismatch() {
        assert!(orbits_on(&PermGroup::trivial(4), &Graph::complete(3), ItemKind::Vertices).is_err());
    }

    proptest! {
        #[test]
        fn orbit_blocks_have_equal_degree_sums(n in 2usize..=9, bits in proptest::collection::vec(any::<bool>(), 36)) {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] { g.add_edge_unchecked(u, v); }
                    k += 1;
                }
            }
            let aut = automorphism_search(&g, DEFAULT_SEARCH_BOUND).unwrap();
            for p in aut.generators() {
                let single = PermGroup::new(n, vec![p.clone()]).unwrap();
                for orbit in orbits_on(&single, &g, ItemKind::Vertices).unwrap() {
                    let vs: Vec<usize> = orbit.iter().map(|it| match it { Item::Vertex(v) => *v, _ => unreachable!() }).collect();
                    let internal = |v: usize| vs.iter().filter(|&&w| g.has_edge(v, w)).count();
                    prop_assert!(vs.iter().all(|&v| internal(v) == internal(vs[0])));
                    prop_assert!(vs.iter().all(|&v| g.degree(v) == g.degree(vs[0])));
                }
            }
            let id = PermGroup::new(n, vec![VertexPermutation::identity(n)]).unwrap();
            prop_assert_eq!(orbits_on(&id, &g, ItemKind::Vertices).unwrap().len(), n);
        }
    }
}
