use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linear::Partition;

/// A lattice step. `N < E`, so derived orders are lex with N before E.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    N,
    E,
}

/// N/E word from (0,0) to (n,n) staying weakly above the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height: i64 = 0;
        for (position, step) in steps.iter().enumerate() {
            height += match step {
                Step::N => 1,
                Step::E => -1,
            };
            if height < 0 {
                return Err(Error::parse("Dyck path", position, "path dips below the diagonal"));
            }
        }
        if height != 0 {
            return Err(Error::parse("Dyck path", steps.len(), "unequal numbers of N and E steps"));
        }
        Ok(DyckPath { steps })
    }

    /// (NE)ⁿ.
    pub fn diagonal(n: usize) -> Self {
        DyckPath {
            steps: (0..n).flat_map(|_| [Step::N, Step::E]).collect(),
        }
    }

    /// NⁿEⁿ.
    pub fn top(n: usize) -> Self {
        DyckPath {
            steps: std::iter::repeat(Step::N)
                .take(n)
                .chain(std::iter::repeat(Step::E).take(n))
                .collect(),
        }
    }

    /// All Dyck paths of size n in lex order (N < E).
    pub fn all(n: usize) -> Vec<DyckPath> {
        fn rec(n: usize, north: usize, east: usize, prefix: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
            if north == n && east == n {
                out.push(DyckPath { steps: prefix.clone() });
                return;
            }
            if north < n {
                prefix.push(Step::N);
                rec(n, north + 1, east, prefix, out);
                prefix.pop();
            }
            if east < north {
                prefix.push(Step::E);
                rec(n, north, east + 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, 0, 0, &mut Vec::with_capacity(2 * n), &mut out);
        out
    }

    pub fn size(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// x-coordinate of the N step leaving height y, for y = 0..n−1.
    pub fn north_x(&self) -> Vec<usize> {
        let mut x = 0;
        let mut out = Vec::with_capacity(self.size());
        for step in &self.steps {
            match step {
                Step::N => out.push(x),
                Step::E => x += 1,
            }
        }
        out
    }

    /// Inverse of `north_x`; fails unless the sequence is weakly increasing with x_y ≤ y.
    pub fn from_north_x(xs: &[usize]) -> Result<Self> {
        let n = xs.len();
        let mut steps = Vec::with_capacity(2 * n);
        let mut x = 0;
        for (y, &target) in xs.iter().enumerate() {
            if target < x || target > y {
                return Err(Error::invalid("Dyck path", format!("north step {y} at x = {target}")));
            }
            steps.extend(std::iter::repeat(Step::E).take(target - x));
            steps.push(Step::N);
            x = target;
        }
        steps.extend(std::iter::repeat(Step::E).take(n - x));
        DyckPath::new(steps)
    }

    /// Entry i counts the boxes between the path and the diagonal in row i (bottom row first).
    pub fn area_sequence(&self) -> Vec<usize> {
        self.north_x().iter().enumerate().map(|(y, &x)| y - x).collect()
    }

    pub fn from_area_sequence(area: &[usize]) -> Result<Self> {
        let xs: Vec<usize> = area
            .iter()
            .enumerate()
            .map(|(y, &a)| y.checked_sub(a).ok_or_else(|| Error::invalid("area sequence", format!("entry {a} in row {y}"))))
            .collect::<Result<_>>()?;
        DyckPath::from_north_x(&xs)
    }

    pub fn area(&self) -> usize {
        self.area_sequence().iter().sum()
    }

    /// Maximal N-run lengths as a partition.
    pub fn type_partition(&self) -> Partition {
        let mut runs = Vec::new();
        let mut current = 0;
        for step in &self.steps {
            match step {
                Step::N => current += 1,
                Step::E => {
                    if current > 0 {
                        runs.push(current);
                    }
                    current = 0;
                }
            }
        }
        Partition::new(runs)
    }

    /// Number of E steps at each height y = 0..=n.
    pub fn east_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.size() + 1];
        let mut y = 0;
        for step in &self.steps {
            match step {
                Step::N => y += 1,
                Step::E => counts[y] += 1,
            }
        }
        counts
    }

    /// Heights d with (d,d) on the path.
    pub fn diagonal_touches(&self) -> Vec<usize> {
        let mut out = vec![0];
        let (mut x, mut y) = (0, 0);
        for step in &self.steps {
            match step {
                Step::N => y += 1,
                Step::E => x += 1,
            }
            if x == y {
                out.push(x);
            }
        }
        out
    }

    /// Weakly above `other` (both of the same size).
    pub fn is_above(&self, other: &DyckPath) -> bool {
        self.size() == other.size()
            && self
                .north_x()
                .iter()
                .zip(other.north_x())
                .all(|(a, b)| *a <= b)
    }

    /// Pieces between consecutive diagonal touches.
    pub fn primitive_components(&self) -> Vec<DyckPath> {
        let touches = self.diagonal_touches();
        touches
            .windows(2)
            .map(|w| DyckPath {
                steps: self.steps[2 * w[0]..2 * w[1]].to_vec(),
            })
            .collect()
    }

    /// N^{i₁}E^{i₁}N^{i₂}E^{i₂}⋯.
    pub fn is_bounce_path(&self) -> bool {
        self.primitive_components()
            .iter()
            .all(|c| *c == DyckPath::top(c.size()))
    }

    pub fn bounce_path(parts: &[usize]) -> DyckPath {
        let steps = parts
            .iter()
            .flat_map(|&p| std::iter::repeat(Step::N).take(p).chain(std::iter::repeat(Step::E).take(p)))
            .collect();
        DyckPath { steps }
    }

    /// Heights of maximal E-runs of length one strictly below the top.
    pub fn isolated_east_heights(&self) -> Vec<usize> {
        let n = self.size();
        self.east_counts()
            .iter()
            .enumerate()
            .filter(|&(y, &c)| y < n && c == 1)
            .map(|(y, _)| y)
            .collect()
    }

    /// No EE below the top row.
    pub fn is_steep(&self) -> bool {
        let n = self.size();
        self.east_counts().iter().take(n).all(|&c| c <= 1)
    }

    /// Steep path with isolated E steps exactly at the given heights (subset of 1..n−1).
    pub fn steep_path(n: usize, heights: &[usize]) -> Result<DyckPath> {
        let mut xs = Vec::with_capacity(n);
        let mut x = 0;
        for y in 0..n {
            if heights.contains(&y) {
                x += 1;
            }
            xs.push(x);
        }
        if heights.iter().any(|&h| h == 0 || h >= n) {
            return Err(Error::invalid("steep path", format!("heights {heights:?} outside 1..{n}")));
        }
        DyckPath::from_north_x(&xs)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            f.write_str(match step {
                Step::N => "N",
                Step::E => "E",
            })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let steps = text
            .trim()
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                'N' => Ok(Step::N),
                'E' => Ok(Step::E),
                other => Err(Error::parse("Dyck path", i, format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
