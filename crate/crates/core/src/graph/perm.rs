use std::collections::HashSet;
use std::sync::OnceLock;

use super::{GraphError, Result};

/// A bijection of `0..n`, `v -> mapping[v]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPermutation {
    mapping: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut hit = vec![false; n];
        for &y in &mapping {
            if y >= n || hit[y] {
                return Err(GraphError::NotAPermutation(format!("image {y} repeated or out of range 0..{n}")));
            }
            hit[y] = true;
        }
        Ok(VertexPermutation { mapping })
    }

    pub(crate) fn from_vec_unchecked(mapping: Vec<usize>) -> Self {
        debug_assert!(VertexPermutation::new(mapping.clone()).is_ok());
        VertexPermutation { mapping }
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation { mapping: (0..n).collect() }
    }

    /// Builds the permutation from an image function, checking bijectivity.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        VertexPermutation::new((0..n).map(f).collect())
    }

    pub fn degree(&self) -> usize {
        self.mapping.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.mapping[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` after `other`: `v -> self(other(v))`.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        VertexPermutation { mapping: other.mapping.iter().map(|&x| self.mapping[x]).collect() }
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &x) in self.mapping.iter().enumerate() {
            inv[x] = i;
        }
        VertexPermutation { mapping: inv }
    }

    pub fn pow(&self, k: usize) -> VertexPermutation {
        (0..k).fold(VertexPermutation::identity(self.degree()), |acc, _| self.compose(&acc))
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u128 {
        let n = self.mapping.len();
        let mut seen = vec![false; n];
        let mut order: u128 = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u128;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.mapping[x];
                len += 1;
            }
            order = order / gcd(order, len) * len;
        }
        order
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A permutation group given by generators.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<VertexPermutation>,
    chain: OnceLock<StabilizerChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<VertexPermutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GraphError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        Ok(PermGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), chain: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[VertexPermutation] {
        &self.generators
    }

    fn chain(&self) -> &StabilizerChain {
        self.chain.get_or_init(|| {
            let gens: Vec<Vec<usize>> = self.generators.iter().map(|g| g.mapping.clone()).collect();
            StabilizerChain::build(self.degree, &gens)
        })
    }

    /// Group order from a stabilizer chain: product of the basic orbit lengths.
    pub fn order(&self) -> Result<u128> {
        self.chain()
            .levels
            .iter()
            .try_fold(1u128, |acc, level| acc.checked_mul(level.orbit.len() as u128))
            .ok_or(GraphError::OrderOverflow)
    }

    /// Base points of the stabilizer chain, in order.
    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, p: &VertexPermutation) -> bool {
        p.degree() == self.degree && self.chain().sift(p.mapping.clone(), 0).0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Order by enumerating every element. Only sensible for tiny groups;
    /// returns `None` once more than `limit` elements have been seen.
    pub fn naive_order(&self, limit: usize) -> Option<u128> {
        let id: Vec<usize> = (0..self.degree).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y: Vec<usize> = x.iter().map(|&v| g.mapping[v]).collect();
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    stack.push(y);
                }
            }
        }
        Some(seen.len() as u128)
    }
}

/// `a` then `b`.
#[inline]
fn then(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

fn invert(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn is_identity(a: &[usize]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i == x)
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    /// Strong generators first introduced at this level. The group at
    /// level `i` is generated by the union over levels `>= i`.
    gens: Vec<Vec<usize>>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Vec<usize>>>,
    orbit: Vec<usize>,
}

#[derive(Debug, Clone)]
struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Deterministic Schreier-Sims. Base points are the lowest-index points
    /// moved by the residue that opens each new level.
    fn build(degree: usize, gens: &[Vec<usize>]) -> Self {
        let mut chain = StabilizerChain { degree, levels: Vec::new() };
        for g in gens {
            let (h, j) = chain.sift(g.clone(), 0);
            if !is_identity(&h) {
                chain.add_generator(j, h);
            }
        }
        'restart: loop {
            for i in (0..chain.levels.len()).rev() {
                let gens_i = chain.generators_from(i);
                let orbit = chain.levels[i].orbit.clone();
                for &p in &orbit {
                    for s in &gens_i {
                        let u_p = chain.levels[i].transversal[p].as_ref().expect("orbit point");
                        let u_sp = chain.levels[i].transversal[s[p]].as_ref().expect("orbit closed");
                        let schreier = then(&then(u_p, s), &invert(u_sp));
                        let (h, j) = chain.sift(schreier, i + 1);
                        if !is_identity(&h) {
                            chain.add_generator(j, h);
                            continue 'restart;
                        }
                    }
                }
            }
            break;
        }
        chain
    }

    fn generators_from(&self, level: usize) -> Vec<Vec<usize>> {
        self.levels[level..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    fn add_generator(&mut self, level: usize, h: Vec<usize>) {
        if level == self.levels.len() {
            let base = (0..self.degree).find(|&x| h[x] != x).expect("non-identity residue");
            self.levels.push(Level { base, gens: Vec::new(), transversal: Vec::new(), orbit: Vec::new() });
        }
        self.levels[level].gens.push(h);
        for i in 0..=level {
            self.rebuild_orbit(i);
        }
    }

    fn rebuild_orbit(&mut self, i: usize) {
        let gens = self.generators_from(i);
        let base = self.levels[i].base;
        let mut transversal: Vec<Option<Vec<usize>>> = vec![None; self.degree];
        transversal[base] = Some((0..self.degree).collect());
        let mut orbit = vec![base];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for s in &gens {
                let y = s[x];
                if transversal[y].is_none() {
                    transversal[y] = Some(then(transversal[x].as_ref().expect("visited"), s));
                    orbit.push(y);
                }
            }
            k += 1;
        }
        let level = &mut self.levels[i];
        level.transversal = transversal;
        level.orbit = orbit;
    }

    /// Strips `g` through the levels from `start`; returns the residue and
    /// the level where stripping stopped (`levels.len()` if it got through).
    fn sift(&self, mut g: Vec<usize>, start: usize) -> (Vec<usize>, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let p = g[level.base];
            match &level.transversal[p] {
                Some(u) => g = then(&g, &invert(u)),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }
}
