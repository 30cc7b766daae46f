use std::collections::VecDeque;

use super::{subgroup_generate, FiniteGroup, GroupError, Result, Subgroup};

/// Default upper bound on group order for the exhaustive searches.
pub const DEFAULT_ORDER_BOUND: usize = 16;

/// A group automorphism, as the permutation `x -> mapping[x]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupAut {
    mapping: Vec<usize>,
}

impl GroupAut {
    pub fn identity(order: usize) -> Self {
        GroupAut { mapping: (0..order).collect() }
    }

    /// Accepts `mapping` only if it is a bijective homomorphism of `group`.
    pub fn new(group: &FiniteGroup, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != group.order() {
            return Err(GroupError::DegreeMismatch { expected: group.order(), found: mapping.len() });
        }
        if !is_homomorphic_bijection(group, &mapping) {
            return Err(GroupError::InvalidParameters("mapping is not an automorphism".into()));
        }
        Ok(GroupAut { mapping })
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &GroupAut) -> GroupAut {
        GroupAut { mapping: other.mapping.iter().map(|&x| self.mapping[x]).collect() }
    }

    pub fn fixes_setwise(&self, h: &Subgroup) -> bool {
        h.members().iter().all(|&x| h.contains(self.mapping[x]))
    }
}

fn is_homomorphic_bijection(group: &FiniteGroup, mapping: &[usize]) -> bool {
    let n = group.order();
    let mut hit = vec![false; n];
    for &y in mapping {
        if y >= n || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    (0..n).all(|a| (0..n).all(|b| mapping[group.mul(a, b)] == group.mul(mapping[a], mapping[b])))
}

/// A small generating set: repeatedly add the element of largest order
/// (lowest index on ties) not yet in the generated subgroup.
pub fn generating_subset(group: &FiniteGroup) -> Vec<usize> {
    let mut by_order: Vec<usize> = group.elements().filter(|&x| x != group.identity()).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(group.element_order(x)), x));
    let mut gens = Vec::new();
    let mut current = subgroup_generate(group, &[]).expect("empty generator list");
    for x in by_order {
        if current.is_whole() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = subgroup_generate(group, &gens).expect("indices in range");
        }
    }
    gens
}

/// Extends generator images multiplicatively along a breadth-first word
/// tree. Returns `None` on an inconsistency or a non-bijective result.
fn extend_from_generators(group: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = group.order();
    let mut mapping = vec![usize::MAX; n];
    mapping[group.identity()] = group.identity();
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = group.mul(x, g);
            let fy = group.mul(mapping[x], img);
            if mapping[y] == usize::MAX {
                mapping[y] = fy;
                queue.push_back(y);
            } else if mapping[y] != fy {
                return None;
            }
        }
    }
    if mapping.contains(&usize::MAX) {
        return None;
    }
    is_homomorphic_bijection(group, &mapping).then_some(mapping)
}

/// All automorphisms of `group`, sorted by mapping.
///
/// Generator images are restricted to elements of the same order, every
/// combination is extended multiplicatively and then checked in full.
pub fn automorphism_group(group: &FiniteGroup, bound: usize) -> Result<Vec<GroupAut>> {
    if group.order() > bound {
        return Err(GroupError::OrderBoundExceeded { order: group.order(), bound });
    }
    let gens = generating_subset(group);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = group.element_order(g);
            group.elements().filter(|&x| group.element_order(x) == o).collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    fn recurse(
        group: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<GroupAut>,
    ) {
        if depth == gens.len() {
            if let Some(mapping) = extend_from_generators(group, gens, images) {
                out.push(GroupAut { mapping });
            }
            return;
        }
        for &c in &candidates[depth] {
            if images[..depth].contains(&c) {
                continue;
            }
            images[depth] = c;
            recurse(group, gens, candidates, images, depth + 1, out);
        }
    }
    recurse(group, &gens, &candidates, &mut images, 0, &mut out);
    out.sort();
    Ok(out)
}

/// `Aut_H(G)`: the automorphisms mapping `h` onto itself.
pub fn aut_stabilizing_subgroup(group: &FiniteGroup, h: &Subgroup, bound: usize) -> Result<Vec<GroupAut>> {
    h.check_parent(group)?;
    let auts: Vec<GroupAut> = automorphism_group(group, bound)?.into_iter().filter(|f| f.fixes_setwise(h)).collect();
    debug_assert!(auts.iter().all(|f| auts.iter().all(|g| auts.contains(&f.compose(g)))));
    Ok(auts)
}

/// Orbit of `seed` under the group generated by `perms`, ascending.
pub fn orbit_of(perms: &[Vec<usize>], seed: usize) -> Result<Vec<usize>> {
    let degree = match perms.first() {
        Some(p) => p.len(),
        None => return Ok(vec![seed]),
    };
    if let Some(p) = perms.iter().find(|p| p.len() != degree) {
        return Err(GroupError::DegreeMismatch { expected: degree, found: p.len() });
    }
    if seed >= degree {
        return Err(GroupError::IndexOutOfRange { index: seed, order: degree });
    }
    let mut seen = vec![false; degree];
    seen[seed] = true;
    let mut stack = vec![seed];
    while let Some(x) = stack.pop() {
        for p in perms {
            let y = p[x];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    Ok((0..degree).filter(|&x| seen[x]).collect())
}
