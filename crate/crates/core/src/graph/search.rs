//! Automorphism group generators by individualization and refinement.
//!
//! The search fixes a first path down the search tree (always individualizing
//! the lowest vertex of the target cell) and compares every other leaf with
//! its first leaf. Levels are processed bottom-up: at each level the sibling
//! vertices of the first-path choice that are not already in its orbit under
//! the generators found so far are tried, and a sibling subtree is searched
//! only until one leaf yields an automorphism. The generators collected this
//! way form a strong generating set relative to the first-path base.

use super::{Graph, GraphError, PermGroup, Result, VertexPermutation};

/// Default maximum vertex count for [`automorphism_search`].
pub const DEFAULT_SEARCH_BOUND: usize = 100;

type Cells = Vec<Vec<usize>>;

/// Refinement trace: one entry per cell split, recording where the split
/// happened and the resulting neighbour counts and cell sizes. Identical
/// for any two nodes related by an automorphism.
type Trace = Vec<(usize, usize, usize, usize)>;

struct Node {
    cells: Cells,
    trace: Trace,
}

fn refine(g: &Graph, cells: &mut Cells) -> Trace {
    let n = g.vertex_count();
    let mut trace = Trace::new();
    let mut mask = vec![0u64; n.div_ceil(64)];
    'again: loop {
        for s in 0..cells.len() {
            mask.fill(0);
            for &v in &cells[s] {
                mask[v / 64] |= 1 << (v % 64);
            }
            for c in 0..cells.len() {
                if cells[c].len() == 1 {
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> = cells[c]
                    .iter()
                    .map(|&v| (g.row(v).iter().zip(&mask).map(|(a, b)| (a & b).count_ones() as usize).sum(), v))
                    .collect();
                if keyed.iter().all(|&(k, _)| k == keyed[0].0) {
                    continue;
                }
                keyed.sort_unstable();
                let mut pieces: Cells = Vec::new();
                let mut last = usize::MAX;
                for (k, v) in keyed {
                    if k != last {
                        pieces.push(Vec::new());
                        last = k;
                        trace.push((s, c, k, 0));
                    }
                    pieces.last_mut().expect("piece").push(v);
                    trace.last_mut().expect("entry").3 += 1;
                }
                cells.splice(c..=c, pieces);
                continue 'again;
            }
        }
        return trace;
    }
}

/// First smallest non-singleton cell by position.
fn target_cell(cells: &Cells) -> Option<usize> {
    cells.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|&(i, c)| (c.len(), i)).map(|(i, _)| i)
}

fn individualize(cells: &Cells, cell: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..cell]);
    out.push(vec![v]);
    out.push(cells[cell].iter().copied().filter(|&x| x != v).collect());
    out.extend_from_slice(&cells[cell + 1..]);
    out
}

fn leaf_order(cells: &Cells) -> Vec<usize> {
    cells.iter().map(|c| c[0]).collect()
}

struct Search<'a> {
    graph: &'a Graph,
    first_path: Vec<Node>,
    first_leaf: Vec<usize>,
}

impl Search<'_> {
    /// Looks for a leaf below `cells` (at `depth`) equivalent to the first leaf.
    fn find_equivalent_leaf(&self, mut cells: Cells, depth: usize) -> Option<Vec<usize>> {
        let trace = refine(self.graph, &mut cells);
        let reference = &self.first_path[depth];
        if trace != reference.trace || cells.len() != reference.cells.len() {
            return None;
        }
        match target_cell(&cells) {
            None => {
                let leaf = leaf_order(&cells);
                let mut map = vec![0; leaf.len()];
                for (a, b) in self.first_leaf.iter().zip(&leaf) {
                    map[*a] = *b;
                }
                self.graph.is_automorphism_map(&map).then_some(map)
            }
            Some(t) => {
                if cells[t].len() != reference.cells[t].len() {
                    return None;
                }
                cells[t].iter().find_map(|&u| self.find_equivalent_leaf(individualize(&cells, t, u), depth + 1))
            }
        }
    }
}

/// Union-find over vertices, merged along generator cycles.
struct Orbits {
    parent: Vec<usize>,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn absorb(&mut self, map: &[usize]) {
        for (x, &y) in map.iter().enumerate() {
            let (a, b) = (self.find(x), self.find(y));
            if a != b {
                self.parent[a.max(b)] = a.min(b);
            }
        }
    }
}

/// Generators of the full automorphism group of `g`.
pub fn automorphism_search(g: &Graph, bound: usize) -> Result<PermGroup> {
    let n = g.vertex_count();
    if n > bound {
        return Err(GraphError::SizeBoundExceeded { n, bound });
    }
    if n == 0 {
        return PermGroup::new(0, Vec::new());
    }

    let mut first_path = Vec::new();
    let mut choices = Vec::new();
    let mut cells: Cells = vec![(0..n).collect()];
    loop {
        let trace = refine(g, &mut cells);
        first_path.push(Node { cells: cells.clone(), trace });
        let Some(t) = target_cell(&cells) else { break };
        let v = cells[t][0];
        choices.push((t, v));
        cells = individualize(&cells, t, v);
    }
    let first_leaf = leaf_order(&cells);
    let search = Search { graph: g, first_path, first_leaf };

    let mut generators: Vec<Vec<usize>> = Vec::new();
    for level in (0..choices.len()).rev() {
        let (t, v) = choices[level];
        let node_cells = &search.first_path[level].cells;
        // Every generator found so far fixes the first-path prefix above this level.
        let mut orbits = Orbits::new(n);
        for gen in &generators {
            orbits.absorb(gen);
        }
        let mut failed: Vec<usize> = Vec::new();
        for &w in &node_cells[t] {
            if w == v || orbits.find(w) == orbits.find(v) {
                continue;
            }
            if failed.iter().any(|&f| orbits.find(f) == orbits.find(w)) {
                continue;
            }
            match search.find_equivalent_leaf(individualize(node_cells, t, w), level + 1) {
                Some(map) => {
                    orbits.absorb(&map);
                    generators.push(map);
                }
                None => failed.push(w),
            }
        }
    }

    let generators = generators.into_iter().map(VertexPermutation::from_vec_unchecked).collect();
    PermGroup::new(n, generators)
}
