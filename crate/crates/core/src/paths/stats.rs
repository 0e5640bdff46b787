use serde::Serialize;

use super::dyck::DyckPath;
use crate::linear::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub area: usize,
    pub dinv: usize,
    pub bounce: usize,
    #[serde(rename = "type")]
    pub type_partition: Partition,
    pub area_sequence: Vec<usize>,
}

impl DyckPath {
    /// #{i<j : a_i = a_j} + #{i<j : a_i = a_j + 1}.
    pub fn dinv(&self) -> usize {
        let a = self.area_sequence();
        let mut count = 0;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i] == a[j] || a[i] == a[j] + 1 {
                    count += 1;
                }
            }
        }
        count
    }

    /// Interior diagonal points b₁ < b₂ < ⋯ of the canonical bounce path below this path.
    pub fn bounce_set(&self) -> Vec<usize> {
        let n = self.size();
        let xs = self.north_x();
        let mut out = Vec::new();
        let mut b = 0;
        while b < n {
            b = xs.iter().filter(|&&x| x <= b).count();
            if b < n {
                out.push(b);
            }
        }
        out
    }

    /// The bounce path below this path with b₁ maximal, then b₂ maximal, and so on.
    pub fn canonical_bounce(&self) -> DyckPath {
        let mut bounds = self.bounce_set();
        bounds.insert(0, 0);
        bounds.push(self.size());
        let parts: Vec<usize> = bounds.windows(2).map(|w| w[1] - w[0]).collect();
        DyckPath::bounce_path(&parts)
    }

    pub fn bounce(&self) -> usize {
        let n = self.size();
        self.bounce_set().iter().map(|b| n - b).sum()
    }

    /// Heights of the isolated E steps of the canonical steep path above this path.
    pub fn steep_set(&self) -> Vec<usize> {
        let xs = self.north_x();
        let mut heights = Vec::new();
        for (y, &limit) in xs.iter().enumerate().skip(1) {
            if heights.len() < limit {
                heights.push(y);
            }
        }
        heights
    }

    /// The steep path above this path with b'₁ minimal, then b'₂ minimal, and so on.
    pub fn canonical_steep(&self) -> DyckPath {
        DyckPath::steep_path(self.size(), &self.steep_set()).expect("greedy heights lie in 1..n")
    }

    pub fn stats(&self) -> PathStats {
        PathStats {
            area: self.area(),
            dinv: self.dinv(),
            bounce: self.bounce(),
            type_partition: self.type_partition(),
            area_sequence: self.area_sequence(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    /// Oracle: the highest bounce path weakly below, by exhaustive search over compositions.
    fn brute_bounce(path: &DyckPath) -> DyckPath {
        let n = path.size();
        let candidates: Vec<DyckPath> = DyckPath::all(n)
            .into_iter()
            .filter(|c| c.is_bounce_path() && path.is_above(c))
            .collect();
        // Lexicographically largest touch sequence is the greedy maximal one.
        candidates
            .into_iter()
            .max_by_key(|c| {
                let mut t = c.diagonal_touches();
                t.push(usize::MAX);
                t
            })
            .unwrap()
    }

    /// Oracle: the steep path above with lexicographically smallest isolated-E heights.
    fn brute_steep(path: &DyckPath) -> DyckPath {
        let n = path.size();
        DyckPath::all(n)
            .into_iter()
            .filter(|c| c.is_steep() && c.is_above(path))
            .min_by_key(|c| {
                let mut h = c.isolated_east_heights();
                h.push(usize::MAX);
                h
            })
            .unwrap()
    }

    #[test]
    fn companions_match_exhaustive_search() {
        for n in 1..=6 {
            for path in DyckPath::all(n) {
                assert_eq!(path.canonical_bounce(), brute_bounce(&path), "{path}");
                assert_eq!(path.canonical_steep(), brute_steep(&path), "{path}");
            }
        }
    }

    #[test]
    fn companion_predicates() {
        for n in 0..=7 {
            for path in DyckPath::all(n) {
                let bounce = path.canonical_bounce();
                assert!(bounce.is_bounce_path() && path.is_above(&bounce));
                let steep = path.canonical_steep();
                assert!(steep.is_steep() && steep.is_above(&path));
            }
        }
        assert_eq!(DyckPath::diagonal(5).canonical_bounce(), DyckPath::diagonal(5));
        assert_eq!(DyckPath::top(5).canonical_bounce(), DyckPath::top(5));
    }

    #[test]
    fn dinv_area_distribution_n3() {
        let mut dist: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for path in DyckPath::all(3) {
            *dist.entry((path.dinv(), path.area())).or_default() += 1;
        }
        let expected: BTreeMap<(usize, usize), usize> =
            [((3, 0), 1), ((2, 1), 1), ((1, 2), 1), ((0, 3), 1), ((1, 1), 1)].into_iter().collect();
        assert_eq!(dist, expected);
    }

    #[test]
    fn n2_statistics() {
        let diag = DyckPath::diagonal(2);
        assert_eq!((diag.area(), diag.dinv(), diag.bounce()), (0, 1, 1));
        let top = DyckPath::top(2);
        assert_eq!((top.area(), top.dinv(), top.bounce()), (1, 0, 0));
    }
}
