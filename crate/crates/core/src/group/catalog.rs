//! Named group families and the plain-text table format.
//!
//! Element orderings are fixed per family:
//! - `cyclic:n`: residue `k` is element `k`.
//! - `dihedral:2n`: element `k < n` is the rotation `r^k`, element `n + k` is `r^k s`.
//! - `symmetric:n`: permutations of `1..=n` in lexicographic one-line order;
//!   products compose right to left, `(p*q)(x) = p(q(x))`.
//! - `quaternion`: `1, -1, i, -i, j, -j, k, -k`.
//! - `product(A,B)`: pair `(a, b)` is element `a * |B| + b`.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{FiniteGroup, GroupError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Parameter is the group order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Quaternion,
    Product(Box<GroupSpec>, Box<GroupSpec>),
    File(PathBuf),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    /// Order of the group this spec names, when known without building it.
    pub fn order_hint(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) => Some(*n),
            GroupSpec::Symmetric(n) => Some((1..=*n).product()),
            GroupSpec::Quaternion => Some(8),
            GroupSpec::Product(a, b) => Some(a.order_hint()? * b.order_hint()?),
            GroupSpec::File(_) => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Quaternion => write!(f, "quaternion:8"),
            GroupSpec::Product(a, b) => write!(f, "product({a},{b})"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let split = top_level_comma(inner)
                .ok_or_else(|| GroupError::InvalidParameters(format!("product needs two factors: `{s}`")))?;
            let a = inner[..split].parse()?;
            let b = inner[split + 1..].parse()?;
            return Ok(GroupSpec::product(a, b));
        }
        let (family, param) = match s.split_once(':') {
            Some((f, p)) => (f.trim(), Some(p.trim())),
            None => (s, None),
        };
        if family == "file" {
            let path = param
                .filter(|p| !p.is_empty())
                .ok_or_else(|| GroupError::InvalidParameters("file: needs a path".to_string()))?;
            return Ok(GroupSpec::File(PathBuf::from(path)));
        }
        let number = |name: &str| -> Result<usize> {
            let p = param.ok_or_else(|| GroupError::InvalidParameters(format!("{name} needs a numeric parameter")))?;
            p.parse().map_err(|_| GroupError::InvalidParameters(format!("`{p}` is not a valid {name} parameter")))
        };
        match family {
            "cyclic" | "Z" => Ok(GroupSpec::Cyclic(number("cyclic")?)),
            "dihedral" | "D" => Ok(GroupSpec::Dihedral(number("dihedral")?)),
            "symmetric" | "S" => Ok(GroupSpec::Symmetric(number("symmetric")?)),
            "quaternion" | "Q" => match param {
                None | Some("8") => Ok(GroupSpec::Quaternion),
                Some(p) => Err(GroupError::InvalidParameters(format!("only quaternion:8 is supported, got `{p}`"))),
            },
            other => Err(GroupError::UnknownFamily(other.to_string())),
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

pub fn catalog_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Dihedral(order) => dihedral(*order),
        GroupSpec::Symmetric(n) => symmetric(*n),
        GroupSpec::Quaternion => Ok(quaternion()),
        GroupSpec::Product(a, b) => Ok(catalog_group(a)?.direct_product(&catalog_group(b)?)),
        GroupSpec::File(path) => parse_table_file(path),
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(GroupError::InvalidParameters("cyclic group order must be positive".into()));
    }
    let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(&rows, format!("Z{n}"))
}

fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(GroupError::InvalidParameters(format!("dihedral order must be even and at least 2, got {order}")));
    }
    let n = order / 2;
    // r^a s^x * r^b s^y = r^(a + (-1)^x b) s^(x+y)
    let rows: Vec<Vec<usize>> = (0..order)
        .map(|p| {
            let (a, x) = (p % n, p / n);
            (0..order)
                .map(|q| {
                    let (b, y) = (q % n, q / n);
                    let rot = if x == 0 { (a + b) % n } else { (a + n - b) % n };
                    rot + n * ((x + y) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&rows, format!("D{n}"))
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                extend(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    if !(1..=4).contains(&n) {
        return Err(GroupError::InvalidParameters(format!("symmetric groups are supported for 1 <= n <= 4, got {n}")));
    }
    let perms = lexicographic_permutations(n);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("permutation");
    let rows: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                    index(&composed)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&rows, format!("S{n}"))
}

/// Index in `symmetric:n` of the permutation written in cycle notation,
/// e.g. `(12)`, `(1 2 3)(4 5)` or `()`. Points are 1-based.
pub fn symmetric_element(n: usize, cycles: &str) -> Result<usize> {
    let bad = |msg: String| GroupError::InvalidParameters(msg);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rest = cycles.trim();
    // Cycles are applied right to left to match the group product.
    let mut parsed: Vec<Vec<usize>> = Vec::new();
    while !rest.is_empty() {
        let body_start = rest.strip_prefix('(').ok_or_else(|| bad(format!("expected `(` in `{cycles}`")))?;
        let close = body_start.find(')').ok_or_else(|| bad(format!("unclosed cycle in `{cycles}`")))?;
        let body = &body_start[..close];
        let points: Vec<usize> = if body.contains([' ', ',']) {
            body.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad(format!("bad point `{t}`"))))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad(format!("bad point `{c}`"))))
                .collect::<Result<_>>()?
        };
        for &p in &points {
            if p == 0 || p > n {
                return Err(bad(format!("point {p} outside 1..={n}")));
            }
        }
        let mut distinct = points.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != points.len() {
            return Err(bad(format!("repeated point in cycle `({body})`")));
        }
        parsed.push(points.iter().map(|p| p - 1).collect());
        rest = body_start[close + 1..].trim_start();
    }
    for cycle in parsed.iter().rev() {
        let mut step: Vec<usize> = (0..n).collect();
        for (i, &p) in cycle.iter().enumerate() {
            step[p] = cycle[(i + 1) % cycle.len()];
        }
        perm = perm.iter().map(|&x| step[x]).collect();
    }
    // perm[x] is the image of x after applying the cycles right to left
    let one_line: Vec<usize> = (0..n).map(|x| perm[x]).collect();
    Ok(lexicographic_permutations(n).iter().position(|q| *q == one_line).expect("valid permutation"))
}

fn quaternion() -> FiniteGroup {
    // (negated, unit) with unit 0 = 1, 1 = i, 2 = j, 3 = k
    fn unit_mul(u: usize, v: usize) -> (bool, usize) {
        if u == 0 {
            return (false, v);
        }
        if v == 0 {
            return (false, u);
        }
        if u == v {
            return (true, 0);
        }
        let w = 6 - u - v;
        // i*j = k, j*k = i, k*i = j are the positive cyclic products
        let positive = (v + 3 - u) % 3 == 1;
        (!positive, w)
    }
    let rows: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (s, u) = unit_mul(x / 2, y / 2);
                    2 * u + ((x % 2 == 1) ^ (y % 2 == 1) ^ s) as usize
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&rows, "Q8").expect("quaternion table is a group")
}

/// Parses the plain-text table format:
///
/// ```text
/// # comment
/// order 3
/// label Z3
/// 0 1 2
/// 1 2 0
/// 2 0 1
/// ```
pub fn parse_table_str(text: &str, default_label: &str) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) =
        lines.next().ok_or(GroupError::ParseError { line: 0, message: "missing `order n` header".into() })?;
    let order: usize = header.strip_prefix("order").map(str::trim).and_then(|n| n.parse().ok()).ok_or_else(|| {
        GroupError::ParseError { line: line_no, message: format!("expected `order n`, found `{header}`") }
    })?;

    let mut label = default_label.to_string();
    let mut rows = Vec::with_capacity(order);
    let mut lines = lines.peekable();
    if let Some(name) = lines.peek().and_then(|(_, l)| l.strip_prefix("label ")) {
        label = name.trim().to_string();
        lines.next();
    }
    for (line_no, line) in lines {
        if rows.len() == order {
            return Err(GroupError::ParseError { line: line_no, message: format!("more than {order} table rows") });
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| GroupError::ParseError {
                    line: line_no,
                    message: format!("`{t}` is not an element index"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != order {
        return Err(GroupError::ParseError {
            line: text.lines().count(),
            message: format!("expected {order} table rows, found {}", rows.len()),
        });
    }
    FiniteGroup::from_table(&rows, label)
}

pub fn parse_table_file(path: &Path) -> Result<FiniteGroup> {
    let text = fs::read_to_string(path)
        .map_err(|e| GroupError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("file");
    parse_table_str(&text, stem)
}

pub fn format_table(group: &FiniteGroup) -> String {
    let mut out = format!("order {}\nlabel {}\n", group.order(), group.label());
    for row in group.rows() {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_table_file(group: &FiniteGroup, path: &Path) -> Result<()> {
    fs::write(path, format_table(group))
        .map_err(|e| GroupError::Io { path: path.display().to_string(), message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_six() {
        let g = catalog_group(&"cyclic:6".parse().unwrap()).unwrap();
        assert_eq!(g.mul(2, 5), 1);
        assert_eq!(g.label(), "Z6");
    }

    #[test]
    fn product_orders_multiply() {
        let spec: GroupSpec = "product(cyclic:4,cyclic:2)".parse().unwrap();
        assert_eq!(spec, GroupSpec::product(GroupSpec::Cyclic(4), GroupSpec::Cyclic(2)));
        let g = catalog_group(&spec).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_abelian());
        // (1,0) * (3,1) = (0,1)
        assert_eq!(g.mul(2, 7), 1);
    }

    #[test]
    fn nested_products_parse() {
        let spec: GroupSpec = "product(product(cyclic:2,cyclic:2),cyclic:2)".parse().unwrap();
        assert_eq!(catalog_group(&spec).unwrap().order(), 8);
        assert_eq!(spec.to_string().parse::<GroupSpec>().unwrap(), spec);
    }

    #[test]
    fn symmetric_three_is_nonabelian() {
        let g = catalog_group(&GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(g.order(), 6);
        let t12 = symmetric_element(3, "(12)").unwrap();
        let t13 = symmetric_element(3, "(13)").unwrap();
        assert_ne!(g.mul(t12, t13), g.mul(t13, t12));
        // (13)(12)(13) = (23)
        let t23 = symmetric_element(3, "(23)").unwrap();
        assert_eq!(g.mul(g.mul(t13, t12), t13), t23);
        assert_eq!(symmetric_element(3, "()").unwrap(), g.identity());
    }

    #[test]
    fn cycle_notation_composes_right_to_left() {
        let g = catalog_group(&GroupSpec::Symmetric(3)).unwrap();
        let t12 = symmetric_element(3, "(12)").unwrap();
        let t23 = symmetric_element(3, "(23)").unwrap();
        let both = symmetric_element(3, "(12)(23)").unwrap();
        assert_eq!(both, g.mul(t12, t23));
        // (12)(23) sends 1 -> 2, 2 -> 3, 3 -> 1
        assert_eq!(both, symmetric_element(3, "(123)").unwrap());
        assert_eq!(symmetric_element(4, "(1 2)(3 4)").unwrap(), symmetric_element(4, "(34)(12)").unwrap());
        assert!(symmetric_element(3, "(14)").is_err());
        assert!(symmetric_element(3, "(11)").is_err());
    }

    #[test]
    fn dihedral_relations() {
        let g = catalog_group(&GroupSpec::Dihedral(8)).unwrap();
        assert_eq!(g.label(), "D4");
        let (r, s) = (1, 4);
        assert_eq!(g.element_order(r), 4);
        assert_eq!(g.element_order(s), 2);
        // s r s = r^-1
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
        assert!(catalog_group(&GroupSpec::Dihedral(7)).is_err());
    }

    #[test]
    fn quaternion_is_q8() {
        let g = catalog_group(&GroupSpec::Quaternion).unwrap();
        let (i, j, k) = (2, 4, 6);
        assert_eq!(g.mul(i, j), k);
        assert_eq!(g.mul(j, i), 7);
        assert_eq!(g.mul(i, i), 1);
        assert_eq!(g.mul(g.mul(i, j), k), 1);
    }

    #[test]
    fn unknown_family_and_bad_parameters() {
        assert_eq!("alternating:4".parse::<GroupSpec>().unwrap_err(), GroupError::UnknownFamily("alternating".into()));
        assert!("cyclic:x".parse::<GroupSpec>().is_err());
        assert!("cyclic".parse::<GroupSpec>().is_err());
        assert!(catalog_group(&GroupSpec::Symmetric(5)).is_err());
        assert!(catalog_group(&GroupSpec::Cyclic(0)).is_err());
    }

    #[test]
    fn table_text_round_trip() {
        let g = catalog_group(&GroupSpec::Symmetric(3)).unwrap();
        let back = parse_table_str(&format_table(&g), "x").unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn table_text_comments_and_identity_location() {
        let text = "# Z3 with identity last\norder 3\n1 2 0 # row 0\n2 0 1\n\n0 1 2\n";
        let g = parse_table_str(text, "z3").unwrap();
        assert_eq!(g.identity(), 2);
        assert_eq!(g.label(), "z3");
    }

    #[test]
    fn table_text_errors() {
        assert!(matches!(parse_table_str("order 2\n0 1\n", "x").unwrap_err(), GroupError::ParseError { .. }));
        assert!(matches!(parse_table_str("size 2\n", "x").unwrap_err(), GroupError::ParseError { line: 1, .. }));
        assert!(matches!(
            parse_table_str("order 2\n0 a\n1 0\n", "x").unwrap_err(),
            GroupError::ParseError { line: 2, .. }
        ));
        assert!(matches!(parse_table_str("order 2\n0 1\n0 1\n", "x").unwrap_err(), GroupError::NotLatinSquare { .. }));
    }

    #[test]
    fn every_catalog_group_revalidates() {
        for spec in ["cyclic:7", "dihedral:10", "symmetric:4", "quaternion", "product(cyclic:3,cyclic:3)"] {
            let g = catalog_group(&spec.parse().unwrap()).unwrap();
            let again = FiniteGroup::from_table(&g.rows(), g.label()).unwrap();
            assert_eq!(again, g, "{spec}");
        }
    }
}
