use std::collections::BTreeSet;

use super::{FiniteGroup, GroupError, Result};

/// A subgroup of a [`FiniteGroup`], stored as its sorted member list.
///
/// Subgroups only remember the order of their parent; every operation that
/// needs products takes the parent explicitly and checks that it matches.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// By order, then member list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl Subgroup {
    fn from_closed_set(group: &FiniteGroup, mask: Vec<bool>) -> Self {
        let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        debug_assert_eq!(group.order() % members.len(), 0, "Lagrange");
        Subgroup { parent_order: group.order(), members, mask }
    }

    /// Checks that `elements` already form a subgroup of `group`.
    pub fn from_members(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut mask = vec![false; group.order()];
        for &x in elements {
            group.check_index(x)?;
            mask[x] = true;
        }
        let closed = mask[group.identity()]
            && (0..mask.len())
                .filter(|&a| mask[a])
                .all(|a| mask[group.inv(a)] && (0..mask.len()).filter(|&b| mask[b]).all(|b| mask[group.mul(a, b)]));
        if !closed {
            return Err(GroupError::InvalidParameters(format!("{elements:?} is not closed under the group operation")));
        }
        Ok(Self::from_closed_set(group, mask))
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        let mut mask = vec![false; group.order()];
        mask[group.identity()] = true;
        Self::from_closed_set(group, mask)
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::from_closed_set(group, vec![true; group.order()])
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent_order
    }

    /// Elements of the parent outside the subgroup, ascending.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.parent_order).filter(|&x| !self.mask[x]).collect()
    }

    pub(crate) fn check_parent(&self, group: &FiniteGroup) -> Result<()> {
        if self.parent_order == group.order() {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch { expected: group.order(), found: self.parent_order })
        }
    }
}

fn closure(group: &FiniteGroup, seed: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; group.order()];
    let mut members = vec![group.identity()];
    mask[group.identity()] = true;
    for &g in seed {
        if !mask[g] {
            mask[g] = true;
            members.push(g);
        }
    }
    // In a finite group closure under products alone gives the subgroup.
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        let mut j = 0;
        while j < members.len() {
            let b = members[j];
            for p in [group.mul(a, b), group.mul(b, a)] {
                if !mask[p] {
                    mask[p] = true;
                    members.push(p);
                }
            }
            j += 1;
        }
        i += 1;
    }
    mask
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_generate(group: &FiniteGroup, gens: &[usize]) -> Result<Subgroup> {
    for &g in gens {
        group.check_index(g)?;
    }
    Ok(Subgroup::from_closed_set(group, closure(group, gens)))
}

/// Every subgroup of `group` exactly once, sorted by (order, members).
///
/// Built by joining cyclic subgroups pairwise until nothing new appears;
/// every subgroup is a join of the cyclic subgroups it contains.
pub fn all_subgroups(group: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if group.order() > bound {
        return Err(GroupError::OrderBoundExceeded { order: group.order(), bound });
    }
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    let cyclic: BTreeSet<Subgroup> =
        group.elements().map(|g| Subgroup::from_closed_set(group, closure(group, &[g]))).collect();
    found.extend(cyclic.iter().cloned());
    let mut frontier: Vec<Subgroup> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &cyclic {
                if c.members.iter().all(|&x| a.contains(x)) {
                    continue;
                }
                let mut seed = a.members.clone();
                seed.extend_from_slice(&c.members);
                let joined = Subgroup::from_closed_set(group, closure(group, &seed));
                if found.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    Ok(found.into_iter().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetSide {
    /// `gH`
    Left,
    /// `Hg`
    Right,
}

/// Partition of the parent into cosets of `h`, each block sorted, blocks
/// ordered by their minimal element.
pub fn cosets(group: &FiniteGroup, h: &Subgroup, side: CosetSide) -> Result<Vec<Vec<usize>>> {
    h.check_parent(group)?;
    let mut assigned = vec![false; group.order()];
    let mut blocks = Vec::with_capacity(h.index());
    for g in group.elements() {
        if assigned[g] {
            continue;
        }
        let mut block: Vec<usize> = h
            .members()
            .iter()
            .map(|&x| match side {
                CosetSide::Left => group.mul(g, x),
                CosetSide::Right => group.mul(x, g),
            })
            .collect();
        block.sort_unstable();
        for &x in &block {
            assigned[x] = true;
        }
        blocks.push(block);
    }
    Ok(blocks)
}

pub fn is_normal(group: &FiniteGroup, h: &Subgroup) -> bool {
    group.elements().all(|g| {
        let gi = group.inv(g);
        h.members().iter().all(|&x| h.contains(group.mul(group.mul(g, x), gi)))
    })
}

/// Some `g1, g2` outside `h` with `Hg1 = Hg2` but `g1H != g2H`, or `None`
/// when `h` is normal. The lexicographically first such pair is returned.
pub fn witness_coset_asymmetry(group: &FiniteGroup, h: &Subgroup) -> Option<(usize, usize)> {
    let outside = h.complement();
    for &g1 in &outside {
        for &g2 in &outside {
            let same_right = h.contains(group.mul(g1, group.inv(g2)));
            let same_left = h.contains(group.mul(group.inv(g1), g2));
            if same_right && !same_left {
                return Some((g1, g2));
            }
        }
    }
    None
}

pub fn commutator_subgroup(group: &FiniteGroup) -> Subgroup {
    let commutators: BTreeSet<usize> = group
        .elements()
        .flat_map(|a| group.elements().map(move |b| (a, b)))
        .map(|(a, b)| group.commutator(a, b))
        .collect();
    let seed: Vec<usize> = commutators.into_iter().collect();
    Subgroup::from_closed_set(group, closure(group, &seed))
}

/// The quotient by a normal subgroup. Element 0 is the block `h`, the other
/// cosets follow ordered by minimal element.
pub fn quotient(group: &FiniteGroup, h: &Subgroup) -> Result<FiniteGroup> {
    h.check_parent(group)?;
    if !is_normal(group, h) {
        return Err(GroupError::NotNormal);
    }
    let mut blocks = cosets(group, h, CosetSide::Left)?;
    let home = blocks.iter().position(|b| b.contains(&group.identity())).expect("identity");
    let h_block = blocks.remove(home);
    blocks.insert(0, h_block);
    let mut block_of = vec![0; group.order()];
    for (b, block) in blocks.iter().enumerate() {
        for &x in block {
            block_of[x] = b;
        }
    }
    let rows: Vec<Vec<usize>> =
        blocks.iter().map(|a| blocks.iter().map(|b| block_of[group.mul(a[0], b[0])]).collect()).collect();
    FiniteGroup::from_table(&rows, format!("{}/H", group.label()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::symmetric_element;
    use crate::group::{catalog_group, GroupSpec};

    fn z6() -> FiniteGroup {
        catalog_group(&GroupSpec::Cyclic(6)).unwrap()
    }

    fn s3() -> FiniteGroup {
        catalog_group(&GroupSpec::Symmetric(3)).unwrap()
    }

    /// Subgroups by scanning every subset containing the identity.
    fn powerset_subgroups(group: &FiniteGroup) -> BTreeSet<Vec<usize>> {
        let n = group.order();
        let e = group.identity();
        (0u32..1 << n)
            .filter(|m| m >> e & 1 == 1)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|set| Subgroup::from_members(group, set).is_ok())
            .collect()
    }

    #[test]
    fn generate_small_subgroups() {
        assert_eq!(subgroup_generate(&z6(), &[3]).unwrap().members(), &[0, 3]);
        assert_eq!(subgroup_generate(&z6(), &[2]).unwrap().members(), &[0, 2, 4]);
        let g = s3();
        let t = symmetric_element(3, "(12)").unwrap();
        let h = subgroup_generate(&g, &[t]).unwrap();
        assert_eq!(h.order(), 2);
        assert!(h.contains(t));
        assert!(matches!(subgroup_generate(&g, &[6]).unwrap_err(), GroupError::IndexOutOfRange { index: 6, order: 6 }));
    }

    #[test]
    fn subgroups_of_z6() {
        let subs = all_subgroups(&z6(), 16).unwrap();
        let lists: Vec<&[usize]> = subs.iter().map(|s| s.members()).collect();
        assert_eq!(lists, vec![&[0][..], &[0, 3], &[0, 2, 4], &[0, 1, 2, 3, 4, 5]]);
    }

    #[test]
    fn subgroup_counts_match_powerset_oracle() {
        for (spec, count) in
            [("symmetric:3", 6), ("quaternion", 6), ("dihedral:8", 10), ("product(cyclic:2,cyclic:4)", 8)]
        {
            let g = catalog_group(&spec.parse().unwrap()).unwrap();
            let subs = all_subgroups(&g, 16).unwrap();
            let oracle = powerset_subgroups(&g);
            let ours: BTreeSet<Vec<usize>> = subs.iter().map(|s| s.members().to_vec()).collect();
            assert_eq!(ours, oracle, "{spec}");
            assert_eq!(subs.len(), count, "{spec}");
        }
    }

    #[test]
    fn q8_subgroups_are_all_normal() {
        let g = catalog_group(&GroupSpec::Quaternion).unwrap();
        let subs = all_subgroups(&g, 16).unwrap();
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(|h| is_normal(&g, h)));
    }

    #[test]
    fn order_bound_is_enforced() {
        let g = catalog_group(&GroupSpec::Symmetric(4)).unwrap();
        assert_eq!(all_subgroups(&g, 16).unwrap_err(), GroupError::OrderBoundExceeded { order: 24, bound: 16 });
        assert_eq!(all_subgroups(&g, 24).unwrap().len(), 30);
    }

    #[test]
    fn z6_right_cosets() {
        let g = z6();
        let h = subgroup_generate(&g, &[3]).unwrap();
        assert_eq!(cosets(&g, &h, CosetSide::Right).unwrap(), vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        let whole = Subgroup::whole(&g);
        assert_eq!(cosets(&g, &whole, CosetSide::Left).unwrap().len(), 1);
    }

    #[test]
    fn s3_left_and_right_cosets_differ() {
        let g = s3();
        let h = subgroup_generate(&g, &[symmetric_element(3, "(12)").unwrap()]).unwrap();
        let left = cosets(&g, &h, CosetSide::Left).unwrap();
        let right = cosets(&g, &h, CosetSide::Right).unwrap();
        assert_eq!(left.len(), 3);
        assert_eq!(right.len(), 3);
        assert_ne!(left, right);
        assert_eq!(left[0], h.members());
    }

    #[test]
    fn normality() {
        let g = z6();
        assert!(is_normal(&g, &subgroup_generate(&g, &[3]).unwrap()));
        let s = s3();
        let t = subgroup_generate(&s, &[symmetric_element(3, "(12)").unwrap()]).unwrap();
        assert!(!is_normal(&s, &t));
        let a3 = subgroup_generate(&s, &[symmetric_element(3, "(123)").unwrap()]).unwrap();
        assert!(is_normal(&s, &a3));
    }

    #[test]
    fn coset_asymmetry_witnesses() {
        let s = s3();
        let h = subgroup_generate(&s, &[symmetric_element(3, "(12)").unwrap()]).unwrap();
        let (g1, g2) = witness_coset_asymmetry(&s, &h).unwrap();
        assert!(!h.contains(g1) && !h.contains(g2));
        assert!(h.contains(s.mul(g1, s.inv(g2))));
        assert!(!h.contains(s.mul(s.inv(g1), g2)));

        let g = z6();
        assert_eq!(witness_coset_asymmetry(&g, &subgroup_generate(&g, &[3]).unwrap()), None);

        // <s> in D4 is not normal
        let d4 = catalog_group(&GroupSpec::Dihedral(8)).unwrap();
        let refl = subgroup_generate(&d4, &[4]).unwrap();
        assert!(!is_normal(&d4, &refl));
        assert!(witness_coset_asymmetry(&d4, &refl).is_some());
    }

    #[test]
    fn commutator_subgroups() {
        assert!(commutator_subgroup(&z6()).is_trivial());
        let s = s3();
        let a3 = subgroup_generate(&s, &[symmetric_element(3, "(123)").unwrap()]).unwrap();
        assert_eq!(commutator_subgroup(&s), a3);
        let q = catalog_group(&GroupSpec::Quaternion).unwrap();
        assert_eq!(commutator_subgroup(&q).members(), &[0, 1]);
    }

    #[test]
    fn quotients() {
        let g = z6();
        let q = quotient(&g, &subgroup_generate(&g, &[2]).unwrap()).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.identity(), 0);

        let g = catalog_group(&"product(cyclic:4,cyclic:2)".parse().unwrap()).unwrap();
        // (1,0) generates the Z4 factor
        let h = subgroup_generate(&g, &[2]).unwrap();
        assert_eq!(h.order(), 4);
        let q = quotient(&g, &h).unwrap();
        assert_eq!(q.order(), 2);
        assert!(q.is_elementary_abelian());

        let s = s3();
        let a3 = subgroup_generate(&s, &[symmetric_element(3, "(123)").unwrap()]).unwrap();
        assert_eq!(quotient(&s, &a3).unwrap().order(), 2);
        let t = subgroup_generate(&s, &[symmetric_element(3, "(12)").unwrap()]).unwrap();
        assert_eq!(quotient(&s, &t).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn from_members_rejects_non_subgroups() {
        let g = z6();
        assert!(Subgroup::from_members(&g, &[0, 1]).is_err());
        assert!(Subgroup::from_members(&g, &[3]).is_err());
        assert_eq!(Subgroup::from_members(&g, &[3, 0]).unwrap().members(), &[0, 3]);
    }
}
