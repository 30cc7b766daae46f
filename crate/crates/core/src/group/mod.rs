//! Finite groups given by a full multiplication table.
//!
//! Elements are the dense indices `0..n`. Every downstream computation
//! (subgroups, cosets, automorphisms, the product graphs) reads products
//! straight out of the table, so a [`FiniteGroup`] is only ever built
//! through [`FiniteGroup::from_table`], which checks the group axioms.

mod automorphism;
pub(crate) mod catalog;
mod subgroup;

use std::fmt;

use thiserror::Error;

pub use automorphism::{
    aut_stabilizing_subgroup, automorphism_group, generating_subset, orbit_of, GroupAut, DEFAULT_ORDER_BOUND,
};
pub use catalog::{
    catalog_group, format_table, parse_table_file, parse_table_str, symmetric_element, write_table_file, GroupSpec,
};
pub use subgroup::{
    all_subgroups, commutator_subgroup, cosets, is_normal, quotient, subgroup_generate, witness_coset_asymmetry,
    CosetSide, Subgroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is empty")]
    EmptyTable,
    #[error("table row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range 0..{order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("not a Latin square: {line} {index} repeats element {value}")]
    NotLatinSquare { line: &'static str, index: usize, value: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup belongs to a group of order {found}, expected {expected}")]
    ParentMismatch { expected: usize, found: usize },
    #[error("permutations of degree {found} mixed with degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("invalid group parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

/// A finite group with elements `0..order` and a validated Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    label: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates `rows` as a group multiplication table (`rows[i][j] = i*j`).
    ///
    /// The identity does not have to be element 0; it is located here.
    /// Checks run in the order shape, range, Latin square, identity,
    /// inverses, associativity, and the first violation is reported.
    pub fn from_table(rows: &[Vec<usize>], label: impl Into<String>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupError::NotSquare { row, len: entries.len(), expected: n });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { row, col, value, order: n });
                }
                table.push(value);
            }
        }

        let mut seen = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let v = table[i * n + j];
                if seen[v] == i {
                    return Err(GroupError::NotLatinSquare { line: "row", index: i, value: v });
                }
                seen[v] = i;
            }
        }
        seen.fill(usize::MAX);
        for j in 0..n {
            for i in 0..n {
                let v = table[i * n + j];
                if seen[v] == j {
                    return Err(GroupError::NotLatinSquare { line: "column", index: j, value: v });
                }
                seen[v] = j;
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|i| table[e * n + i] == i && table[i * n + e] == i))
            .ok_or(GroupError::NoIdentity)?;

        let mut inverses = Vec::with_capacity(n);
        for i in 0..n {
            // Latin rows guarantee exactly one right inverse.
            let j = (0..n).find(|&j| table[i * n + j] == identity).expect("Latin row");
            if table[j * n + i] != identity {
                return Err(GroupError::NoInverse { element: i });
            }
            inverses.push(j);
        }

        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        Ok(FiniteGroup { order: n, table, identity, inverses, label: label.into() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// The table as nested rows, suitable for feeding back into [`FiniteGroup::from_table`].
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.order {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange { index, order: self.order })
        }
    }

    pub fn pow(&self, a: usize, mut k: usize) -> usize {
        let mut acc = self.identity;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ai = self.inv(a);
        let bi = self.inv(b);
        self.mul(self.mul(ai, bi), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Abelian with every non-identity element of one common prime order.
    ///
    /// The trivial group counts as elementary abelian.
    pub fn is_elementary_abelian(&self) -> bool {
        if !self.is_abelian() {
            return false;
        }
        let mut common = None;
        for a in self.elements().filter(|&a| a != self.identity) {
            let o = self.element_order(a);
            match common {
                None if is_prime(o) => common = Some(o),
                None => return false,
                Some(p) if p != o => return false,
                Some(_) => {}
            }
        }
        true
    }

    /// Direct product with lexicographic element order: `(a, b) -> a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let size = n * m;
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            let (a1, b1) = (x / m, x % m);
            for y in 0..size {
                let (a2, b2) = (y / m, y % m);
                table.push(self.mul(a1, a2) * m + other.mul(b1, b2));
            }
        }
        let inverses = (0..size).map(|x| self.inv(x / m) * m + other.inv(x % m)).collect();
        FiniteGroup {
            order: size,
            table,
            identity: self.identity * m + other.identity,
            inverses,
            label: format!("{}x{}", self.label, other.label),
        }
    }
}

pub fn is_elementary_abelian(group: &FiniteGroup) -> bool {
    group.is_elementary_abelian()
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Vec<Vec<usize>> {
        vec![vec![0, 1], vec![1, 0]]
    }

    /// Q8 from the relations i^2 = j^2 = k^2 = ijk = -1, elements ordered
    /// 1, -1, i, -i, j, -j, k, -k.
    fn quaternion_rows_from_relations() -> Vec<Vec<usize>> {
        // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k
        let unit_mul = |u: usize, v: usize| -> (bool, usize) {
            match (u, v) {
                (0, x) | (x, 0) => (false, x),
                (a, b) if a == b => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let decode = |x: usize| (x % 2 == 1, x / 2);
        let encode = |neg: bool, u: usize| 2 * u + neg as usize;
        (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (sx, ux) = decode(x);
                        let (sy, uy) = decode(y);
                        let (s, u) = unit_mul(ux, uy);
                        encode(sx ^ sy ^ s, u)
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn smallest_group_validates() {
        let g = FiniteGroup::from_table(&z2(), "Z2").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn repeated_row_entry_is_rejected() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![0, 1]], "bad").unwrap_err();
        assert!(matches!(err, GroupError::NotLatinSquare { line: "column", .. }), "{err}");
        let err = FiniteGroup::from_table(&[vec![0, 0], vec![1, 0]], "bad").unwrap_err();
        assert!(matches!(err, GroupError::NotLatinSquare { line: "row", index: 0, value: 0 }));
    }

    #[test]
    fn quaternion_table_from_relations_validates() {
        let g = FiniteGroup::from_table(&quaternion_rows_from_relations(), "Q8").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.identity(), 0);
        assert!(!g.is_abelian());
        // every element outside {1,-1} has order 4
        assert!((2..8).all(|x| g.element_order(x) == 4));
    }

    #[test]
    fn identity_need_not_be_zero() {
        // Z3 with the identity stored at index 2
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table(&rows, "Z3'").unwrap();
        assert_eq!(g.identity(), 2);
        assert_eq!(g.inv(0), 1);
    }

    #[test]
    fn latin_square_without_identity() {
        // x*y = -x-y mod 3 is a Latin square with no identity
        let rows: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (6 - x - y) % 3).collect()).collect();
        assert_eq!(FiniteGroup::from_table(&rows, "q").unwrap_err(), GroupError::NoIdentity);
    }

    #[test]
    fn loop_that_is_not_associative() {
        // The smallest non-associative loop with two-sided inverses has order 5.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(&rows, "loop").unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }), "{err}");
    }

    #[test]
    fn shape_and_range_errors() {
        assert_eq!(FiniteGroup::from_table(&[], "e").unwrap_err(), GroupError::EmptyTable);
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1]], "x").unwrap_err(),
            GroupError::NotSquare { row: 1, .. }
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]], "x").unwrap_err(),
            GroupError::EntryOutOfRange { row: 0, col: 1, value: 2, .. }
        ));
    }

    #[test]
    fn elementary_abelian_convention() {
        let trivial = FiniteGroup::from_table(&[vec![0]], "1").unwrap();
        assert!(trivial.is_elementary_abelian());
        let z2 = FiniteGroup::from_table(&z2(), "Z2").unwrap();
        assert!(z2.direct_product(&z2).is_elementary_abelian());
        let z4 = catalog_group(&GroupSpec::Cyclic(4)).unwrap();
        assert!(!z4.is_elementary_abelian());
        let z6 = catalog_group(&GroupSpec::Cyclic(6)).unwrap();
        assert!(!z6.is_elementary_abelian());
    }

    #[test]
    fn power_and_order() {
        let z6 = catalog_group(&GroupSpec::Cyclic(6)).unwrap();
        assert_eq!(z6.pow(5, 3), 3);
        assert_eq!(z6.element_order(2), 3);
        assert_eq!(z6.element_order(0), 1);
    }
}
