use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{DyckPath, Step};
use crate::pipedream::PipeDream;

pub type Point = (usize, usize);

/// Lattice points (x, y) of the n×n grid weakly above ν: the top row y = n, and x ≤ X_y below it,
/// where X_y is the abscissa of ν's north step leaving height y.
pub fn region(nu: &DyckPath) -> Vec<Point> {
    let n = nu.size();
    let xs = nu.north_x();
    let mut out: Vec<Point> = (0..n).flat_map(|y| (0..=xs[y]).map(move |x| (x, y))).collect();
    out.extend((0..=n).map(|x| (x, n)));
    out.sort_unstable();
    out
}

pub fn in_region(nu: &DyckPath, (x, y): Point) -> bool {
    let n = nu.size();
    y == n || (y < n && x <= nu.north_x()[y])
}

/// Incompatible iff strictly south-west/north-east of each other with the enclosing rectangle above ν.
pub fn nu_compatible(p: Point, q: Point, nu: &DyckPath) -> bool {
    let strictly_ordered = (p.0 < q.0 && p.1 < q.1) || (q.0 < p.0 && q.1 < p.1);
    !strictly_ordered || !in_region(nu, (p.0.max(q.0), p.1.min(q.1)))
}

/// A maximal set of pairwise ν-compatible points, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NuTree {
    nu: DyckPath,
    nodes: Vec<Point>,
}

impl NuTree {
    pub fn new(nu: DyckPath, nodes: impl IntoIterator<Item = Point>) -> Result<Self> {
        let nodes: BTreeSet<Point> = nodes.into_iter().collect();
        if let Some(p) = nodes.iter().find(|&&p| !in_region(&nu, p)) {
            return Err(Error::invalid("ν-tree", format!("point {p:?} lies below ν")));
        }
        for &p in &nodes {
            if let Some(q) = nodes.iter().find(|&&q| !nu_compatible(p, q, &nu)) {
                return Err(Error::invalid("ν-tree", format!("points {p:?} and {q:?} are incompatible")));
            }
        }
        let tree = NuTree {
            nu,
            nodes: nodes.into_iter().collect(),
        };
        let extensible = region(&tree.nu)
            .into_iter()
            .filter(|p| !tree.contains(*p))
            .any(|p| tree.nodes.iter().all(|&q| nu_compatible(p, q, &tree.nu)));
        if extensible {
            return Err(Error::invalid("ν-tree", "point set is not maximal"));
        }
        Ok(tree)
    }

    pub(crate) fn from_sorted_unchecked(nu: DyckPath, nodes: Vec<Point>) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        NuTree { nu, nodes }
    }

    /// The tree of the empty path.
    pub fn empty() -> Self {
        NuTree {
            nu: DyckPath::diagonal(0),
            nodes: vec![(0, 0)],
        }
    }

    pub fn nu(&self) -> &DyckPath {
        &self.nu
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn size(&self) -> usize {
        self.nu.size()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.nodes.binary_search(&p).is_ok()
    }

    /// Nearest node above in the same column, or else nearest node to the left in the same row.
    pub fn parent(&self, (x, y): Point) -> Option<Point> {
        let above = self.nodes.iter().filter(|&&(a, b)| a == x && b > y).min_by_key(|p| p.1);
        let left = self.nodes.iter().filter(|&&(a, b)| b == y && a < x).max_by_key(|p| p.0);
        above.or(left).copied()
    }

    /// Points on the diagonal; these are always nodes.
    pub fn diagonal_leaves(&self) -> Vec<usize> {
        self.nu.diagonal_touches()
    }

    /// All ν-trees, by Bron–Kerbosch over the compatibility graph.
    pub fn enumerate(nu: &DyckPath) -> Vec<NuTree> {
        let points = region(nu);
        assert!(points.len() <= 64, "ν-tree enumeration is limited to 64 lattice points");
        let adjacency: Vec<u64> = points
            .iter()
            .map(|&p| {
                points
                    .iter()
                    .enumerate()
                    .filter(|&(_, &q)| q != p && nu_compatible(p, q, nu))
                    .fold(0u64, |mask, (i, _)| mask | 1 << i)
            })
            .collect();
        let mut cliques = Vec::new();
        let all = if points.len() == 64 { u64::MAX } else { (1u64 << points.len()) - 1 };
        bron_kerbosch(0, all, 0, &adjacency, &mut cliques);
        let mut trees: Vec<NuTree> = cliques
            .into_iter()
            .map(|mask| {
                let nodes = (0..points.len()).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect();
                NuTree::from_sorted_unchecked(nu.clone(), nodes)
            })
            .collect();
        trees.sort();
        trees
    }

    /// Swaps `node` for the unique other point compatible with the remaining nodes.
    pub fn rotate(&self, node: Point) -> Result<NuTree> {
        let not_rotatable = Error::NotRotatable { x: node.0, y: node.1 };
        if !self.contains(node) {
            return Err(not_rotatable);
        }
        let rest: Vec<Point> = self.nodes.iter().copied().filter(|&p| p != node).collect();
        let candidates: Vec<Point> = region(&self.nu)
            .into_iter()
            .filter(|&p| p != node && !self.contains(p))
            .filter(|&p| rest.iter().all(|&q| nu_compatible(p, q, &self.nu)))
            .collect();
        match candidates.as_slice() {
            [single] => {
                let mut nodes = rest;
                nodes.push(*single);
                nodes.sort_unstable();
                Ok(NuTree::from_sorted_unchecked(self.nu.clone(), nodes))
            }
            _ => Err(not_rotatable),
        }
    }

    /// All trees one rotation away.
    pub fn rotations(&self) -> Vec<NuTree> {
        let mut out: Vec<NuTree> = self.nodes.iter().filter_map(|&p| self.rotate(p).ok()).collect();
        out.sort();
        out
    }

    /// The path above ν with (number of nodes at height y) − 1 east steps at height y.
    pub fn to_path(&self) -> DyckPath {
        let n = self.size();
        let mut per_height = vec![0usize; n + 1];
        for &(_, y) in &self.nodes {
            per_height[y] += 1;
        }
        let mut steps = Vec::with_capacity(2 * n);
        for (y, &count) in per_height.iter().enumerate() {
            steps.extend(std::iter::repeat(Step::E).take(count - 1));
            if y < n {
                steps.push(Step::N);
            }
        }
        DyckPath::new(steps).expect("node counts describe a path above ν")
    }
}

fn bron_kerbosch(r: u64, mut p: u64, mut x: u64, adjacency: &[u64], out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut candidates = p & !adjacency[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        bron_kerbosch(r | 1 << v, p & adjacency[v], x & adjacency[v], adjacency, out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

impl fmt::Display for NuTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.nu)?;
        let points: Vec<String> = self.nodes.iter().map(|(x, y)| format!("({x},{y})")).collect();
        f.write_str(&points.join(""))
    }
}

#[derive(Serialize, Deserialize)]
struct NuTreeJson {
    nu: String,
    nodes: Vec<Point>,
}

impl Serialize for NuTree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        NuTreeJson {
            nu: self.nu.to_string(),
            nodes: self.nodes.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NuTree {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = NuTreeJson::deserialize(deserializer)?;
        let nu: DyckPath = raw.nu.parse().map_err(serde::de::Error::custom)?;
        NuTree::new(nu, raw.nodes).map_err(serde::de::Error::custom)
    }
}

/// Pipe cell (i, j) sits at lattice point (j, n − i).
fn cell_point(n: usize, (i, j): (usize, usize)) -> Point {
    (j, n - i)
}

fn dominant_path(dream: &PipeDream) -> Result<DyckPath> {
    Ok(dream.exit_permutation().dominant_data()?.path)
}

/// Elbows in the top row, the left column or the Rothe diagram, as lattice points.
pub fn psi(dream: &PipeDream) -> Result<NuTree> {
    let nu = dominant_path(dream)?;
    let n = dream.size();
    let nodes: Vec<Point> = region(&nu)
        .into_iter()
        .filter(|&(x, y)| !dream.is_cross(n - y, x))
        .collect();
    let mut nodes = nodes;
    nodes.sort_unstable();
    debug_assert_eq!(nodes.len(), 2 * n + 1);
    debug_assert!(dream.crosses().iter().all(|&c| in_region(&nu, cell_point(n, c))));
    Ok(NuTree::from_sorted_unchecked(nu, nodes))
}

/// Inverse of `psi`: crosses at the region points that are not nodes.
pub fn psi_inverse(tree: &NuTree) -> PipeDream {
    let n = tree.size();
    let crosses = region(&tree.nu)
        .into_iter()
        .filter(|&p| !tree.contains(p))
        .map(|(x, y)| (n - y, x));
    PipeDream::from_cells_unchecked(n, crosses)
}

/// The ν-path of a dominant pipe dream, through its ν-tree.
pub fn phi(dream: &PipeDream) -> Result<super::NuPath> {
    let tree = psi(dream)?;
    Ok(super::NuPath::new(tree.nu.clone(), tree.to_path()).expect("tree paths lie above ν"))
}
