use crate::hopf::HopfBasis;
use crate::linear::FormalSum;
use crate::paths::DyckPath;

use super::tree::{NuTree, Point};

fn path_slice(path: &DyckPath, from: usize, to: usize) -> DyckPath {
    DyckPath::new(path.steps()[2 * from..2 * to].to_vec()).expect("slices between diagonal touches are Dyck paths")
}

impl NuTree {
    /// Lowest and highest y reached in each column 0..=d by the path of ancestors from (d, d).
    fn ancestor_band(&self, d: usize) -> Vec<(usize, usize)> {
        let mut band = vec![(usize::MAX, 0usize); d + 1];
        let mut touch = |x: usize, y: usize| {
            band[x].0 = band[x].0.min(y);
            band[x].1 = band[x].1.max(y);
        };
        let mut node = (d, d);
        touch(d, d);
        while let Some(parent) = self.parent(node) {
            for x in parent.0..=node.0 {
                touch(x, node.1);
            }
            touch(parent.0, parent.1);
            node = parent;
        }
        band
    }

    /// Part of the tree weakly left of the ancestors of the diagonal leaf (d, d), with the rows above d merged.
    pub fn vertical_packing(&self, d: usize) -> NuTree {
        let band = self.ancestor_band(d);
        let mut nodes: Vec<Point> = self
            .nodes()
            .iter()
            .filter(|&&(x, y)| x <= d && y <= band[x].1)
            .map(|&(x, y)| (x, y.min(d)))
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        NuTree::from_sorted_unchecked(path_slice(self.nu(), 0, d), nodes)
    }

    /// Part of the tree weakly right of the ancestors of (d, d), with the columns left of d merged.
    pub fn horizontal_packing(&self, d: usize) -> NuTree {
        let band = self.ancestor_band(d);
        let mut nodes: Vec<Point> = self
            .nodes()
            .iter()
            .filter(|&&(x, y)| x > d || y >= band[x].0)
            .map(|&(x, y)| (x.max(d) - d, y - d))
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        NuTree::from_sorted_unchecked(path_slice(self.nu(), d, self.size()), nodes)
    }

    pub fn coproduct(&self) -> FormalSum<(NuTree, NuTree)> {
        FormalSum::from_terms(
            self.diagonal_leaves()
                .into_iter()
                .map(|d| ((self.vertical_packing(d), self.horizontal_packing(d)), 1i64)),
        )
    }

    /// Grafts `other` at the diagonal leaf (gap, gap), shifting the points right of and above it.
    pub fn insert(&self, gap: usize, other: &NuTree) -> NuTree {
        assert!(self.diagonal_leaves().contains(&gap), "({gap},{gap}) is not a diagonal leaf");
        let n = other.size();
        let nu = path_slice(self.nu(), 0, gap)
            .concat(other.nu())
            .concat(&path_slice(self.nu(), gap, self.size()));
        let shifted = self
            .nodes()
            .iter()
            .map(|&(x, y)| (x + if x > gap { n } else { 0 }, y + if y >= gap { n } else { 0 }));
        let grafted = other.nodes().iter().map(|&(x, y)| (x + gap, y + gap));
        let mut nodes: Vec<Point> = shifted.chain(grafted).collect();
        nodes.sort_unstable();
        nodes.dedup();
        NuTree::from_sorted_unchecked(nu, nodes)
    }

    /// Sum over weakly increasing tuples of diagonal leaves of `other`, one per interior diagonal leaf of `self`;
    /// `other` is cut at the tuple and the pieces are grafted at the diagonal leaves of `self`.
    pub fn product(&self, other: &NuTree) -> FormalSum<NuTree> {
        let gaps = self.diagonal_leaves();
        let cuts = other.diagonal_leaves();
        let mut terms = Vec::new();
        let mut tuple = vec![0usize; gaps.len() - 1];
        loop {
            let mut bounds = vec![0];
            bounds.extend(tuple.iter().map(|&k| cuts[k]));
            bounds.push(other.size());
            let mut result = self.clone();
            for k in (0..gaps.len()).rev() {
                let piece = other.vertical_packing(bounds[k + 1]).horizontal_packing(bounds[k]);
                result = result.insert(gaps[k], &piece);
            }
            terms.push((result, 1i64));
            // Next weakly increasing tuple.
            let Some(pos) = (0..tuple.len()).rev().find(|&i| tuple[i] + 1 < cuts.len()) else {
                break;
            };
            let value = tuple[pos] + 1;
            tuple[pos..].iter_mut().for_each(|t| *t = value);
        }
        FormalSum::from_terms(terms)
    }
}

impl HopfBasis for NuTree {
    fn degree(&self) -> usize {
        self.size()
    }

    fn unit() -> Self {
        NuTree::empty()
    }

    fn product(&self, other: &Self) -> FormalSum<Self> {
        NuTree::product(self, other)
    }

    fn coproduct(&self) -> FormalSum<(Self, Self)> {
        NuTree::coproduct(self)
    }
}

/// Every ν-tree of size n over all ν.
pub fn all_trees(n: usize) -> Vec<NuTree> {
    let mut out: Vec<NuTree> = DyckPath::all(n).iter().flat_map(NuTree::enumerate).collect();
    out.sort();
    out
}
