use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::dyck::{DyckPath, Step};
use crate::error::{Error, Result};
use crate::linear::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WalkStep {
    /// (0, 1)
    Up,
    /// (1, −1)
    Down,
    /// (−1, 1)
    Back,
}

impl WalkStep {
    fn delta(self) -> (i64, i64) {
        match self {
            WalkStep::Up => (0, 1),
            WalkStep::Down => (1, -1),
            WalkStep::Back => (-1, 1),
        }
    }

    fn letter(self) -> char {
        match self {
            WalkStep::Up => 'u',
            WalkStep::Down => 'd',
            WalkStep::Back => 'b',
        }
    }
}

/// Quarter-plane walk from the origin ending on the horizontal axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    steps: Vec<WalkStep>,
}

impl Walk {
    pub fn new(steps: Vec<WalkStep>) -> Result<Self> {
        let (mut x, mut y) = (0i64, 0i64);
        for (position, step) in steps.iter().enumerate() {
            let (dx, dy) = step.delta();
            x += dx;
            y += dy;
            if x < 0 || y < 0 {
                return Err(Error::parse("walk", position, "walk leaves the quarter plane"));
            }
        }
        if y != 0 {
            return Err(Error::parse("walk", steps.len(), "walk does not end on the horizontal axis"));
        }
        Ok(Walk { steps })
    }

    pub fn steps(&self) -> &[WalkStep] {
        &self.steps
    }

    pub fn size(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn up_steps(&self) -> usize {
        self.steps.iter().filter(|&&s| s == WalkStep::Up).count()
    }

    /// All walks with 2n steps.
    pub fn all(n: usize) -> Vec<Walk> {
        fn rec(remaining: usize, x: i64, y: i64, prefix: &mut Vec<WalkStep>, out: &mut Vec<Walk>) {
            if y > remaining as i64 {
                return;
            }
            if remaining == 0 {
                if y == 0 {
                    out.push(Walk { steps: prefix.clone() });
                }
                return;
            }
            for step in [WalkStep::Up, WalkStep::Down, WalkStep::Back] {
                let (dx, dy) = step.delta();
                if x + dx >= 0 && y + dy >= 0 {
                    prefix.push(step);
                    rec(remaining - 1, x + dx, y + dy, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(2 * n, 0, 0, &mut Vec::new(), &mut out);
        out
    }

    /// (0,1) ↦ black N, (1,−1) ↦ E, (−1,1) ↦ red N.
    pub fn to_colored(&self) -> ColoredDyckPath {
        let steps = self
            .steps
            .iter()
            .map(|s| match s {
                WalkStep::Down => Step::E,
                _ => Step::N,
            })
            .collect();
        let red = self
            .steps
            .iter()
            .filter(|&&s| s != WalkStep::Down)
            .map(|&s| s == WalkStep::Back)
            .collect();
        ColoredDyckPath {
            path: DyckPath::new(steps).expect("walk height stays nonnegative"),
            red,
        }
    }

    pub fn from_colored(colored: &ColoredDyckPath) -> Walk {
        let mut reds = colored.red.iter();
        let steps = colored
            .path
            .steps()
            .iter()
            .map(|s| match s {
                Step::E => WalkStep::Down,
                Step::N if *reds.next().unwrap() => WalkStep::Back,
                Step::N => WalkStep::Up,
            })
            .collect();
        Walk::new(steps).expect("colored paths give valid walks")
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

impl FromStr for Walk {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let steps = text
            .trim()
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                'u' => Ok(WalkStep::Up),
                'd' => Ok(WalkStep::Down),
                'b' => Ok(WalkStep::Back),
                other => Err(Error::parse("walk", i, format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Walk::new(steps)
    }
}

impl Serialize for Walk {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Dyck path with some north steps colored red; red N steps never outnumber E steps in a prefix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredDyckPath {
    path: DyckPath,
    /// One flag per north step, in order.
    red: Vec<bool>,
}

impl ColoredDyckPath {
    pub fn new(path: DyckPath, red: Vec<bool>) -> Result<Self> {
        if red.len() != path.size() {
            return Err(Error::invalid("colored path", "one color per north step required"));
        }
        let (mut reds, mut easts, mut north_index) = (0, 0, 0);
        for (position, step) in path.steps().iter().enumerate() {
            match step {
                Step::E => easts += 1,
                Step::N => {
                    if red[north_index] {
                        reds += 1;
                    }
                    north_index += 1;
                }
            }
            if reds > easts {
                return Err(Error::parse("colored path", position, "more red north steps than east steps"));
            }
        }
        Ok(ColoredDyckPath { path, red })
    }

    pub fn path(&self) -> &DyckPath {
        &self.path
    }

    pub fn red(&self) -> &[bool] {
        &self.red
    }

    pub fn black_count(&self) -> usize {
        self.red.iter().filter(|&&r| !r).count()
    }

    /// (π₁, π₂) with π₂ steep above π₁; a red j-th north step becomes an isolated E at height j−1.
    pub fn to_steep_pair(&self) -> (DyckPath, DyckPath) {
        let heights: Vec<usize> = self
            .red
            .iter()
            .enumerate()
            .filter(|&(_, &r)| r)
            .map(|(j, _)| j)
            .collect();
        let steep = DyckPath::steep_path(self.path.size(), &heights).expect("red steps are never first");
        (self.path.clone(), steep)
    }

    pub fn from_steep_pair(lower: &DyckPath, steep: &DyckPath) -> Result<Self> {
        if !steep.is_steep() || !steep.is_above(lower) {
            return Err(Error::invalid("steep pair", format!("{steep} is not a steep path above {lower}")));
        }
        let heights = steep.isolated_east_heights();
        let red = (0..lower.size()).map(|j| heights.contains(&j)).collect();
        ColoredDyckPath::new(lower.clone(), red)
    }

    /// All colored paths of size n.
    pub fn all(n: usize) -> Vec<ColoredDyckPath> {
        let mut out = Vec::new();
        for path in DyckPath::all(n) {
            for mask in 0u32..(1 << n) {
                let red = (0..n).map(|j| mask >> j & 1 == 1).collect();
                if let Ok(c) = ColoredDyckPath::new(path.clone(), red) {
                    out.push(c);
                }
            }
        }
        out
    }
}

impl fmt::Display for ColoredDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut reds = self.red.iter();
        for step in self.path.steps() {
            let ch = match step {
                Step::E => 'E',
                Step::N if *reds.next().unwrap() => 'n',
                Step::N => 'N',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl FromStr for ColoredDyckPath {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        let mut red = Vec::new();
        for (i, ch) in text.trim().chars().enumerate() {
            match ch {
                'N' | 'n' => {
                    steps.push(Step::N);
                    red.push(ch == 'n');
                }
                'E' => steps.push(Step::E),
                other => return Err(Error::parse("colored path", i, format!("unexpected character {other:?}"))),
            }
        }
        ColoredDyckPath::new(DyckPath::new(steps)?, red)
    }
}

/// Number of 2n-step walks.
pub fn count_walks(n: usize) -> Integer {
    count_walks_by_up_steps(n).into_iter().sum()
}

/// Number of 2n-step walks with exactly k steps (0,1).
pub fn count_walks_by_k(n: usize, k: usize) -> Integer {
    count_walks_by_up_steps(n).into_iter().nth(k).unwrap_or_default()
}

/// Entry k counts walks with k up steps, k = 0..=n.
pub fn count_walks_by_up_steps(n: usize) -> Vec<Integer> {
    let mut layer: HashMap<(i64, i64, usize), Integer> = HashMap::new();
    layer.insert((0, 0, 0), Integer::one());
    for remaining in (0..2 * n).rev() {
        let mut next: HashMap<(i64, i64, usize), Integer> = HashMap::new();
        for (&(x, y, ups), count) in &layer {
            for step in [WalkStep::Up, WalkStep::Down, WalkStep::Back] {
                let (dx, dy) = step.delta();
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || ny > remaining as i64 {
                    continue;
                }
                let nups = ups + usize::from(step == WalkStep::Up);
                *next.entry((nx, ny, nups)).or_default() += count;
            }
        }
        layer = next;
    }
    let mut by_k = vec![Integer::zero(); n + 1];
    for ((_, y, ups), count) in layer {
        debug_assert_eq!(y, 0);
        by_k[ups] += count;
    }
    by_k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals() {
        let expected = [1, 1, 3, 12, 57, 301, 1707];
        for (n, &total) in expected.iter().enumerate() {
            assert_eq!(count_walks(n), Integer::from(total as i64));
            assert_eq!(Walk::all(n).len(), total);
        }
    }

    #[test]
    fn refined_counts_n3() {
        let by_k: Vec<Integer> = (0..=3).map(|k| count_walks_by_k(3, k)).collect();
        assert_eq!(by_k, vec![0i64, 1, 6, 5].into_iter().map(Integer::from).collect::<Vec<_>>());
    }

    #[test]
    fn single_step_walk() {
        let walks = Walk::all(1);
        assert_eq!(walks.len(), 1);
        assert_eq!(walks[0].to_string(), "ud");
        assert!(matches!("bd".parse::<Walk>(), Err(Error::Parse { position: 0, .. })));
        assert!(matches!("uu".parse::<Walk>(), Err(Error::Parse { position: 2, .. })));
    }

    #[test]
    fn bijections_round_trip() {
        for n in 0..=6 {
            let walks = Walk::all(n);
            let colored = ColoredDyckPath::all(n);
            assert_eq!(walks.len(), colored.len());
            for walk in &walks {
                let c = walk.to_colored();
                assert_eq!(&Walk::from_colored(&c), walk);
                assert_eq!(c.black_count(), walk.up_steps());
                let (lower, steep) = c.to_steep_pair();
                assert!(steep.is_steep() && steep.is_above(&lower));
                assert_eq!(steep.isolated_east_heights().len(), n - c.black_count());
                assert_eq!(ColoredDyckPath::from_steep_pair(&lower, &steep).unwrap(), c);
                assert_eq!(c.to_string().parse::<ColoredDyckPath>().unwrap(), c);
            }
        }
    }

    #[test]
    fn diagonal_all_black() {
        let walk: Walk = "ududud".parse().unwrap();
        let c = walk.to_colored();
        assert_eq!(c.path(), &DyckPath::diagonal(3));
        assert_eq!(c.to_steep_pair().1, DyckPath::top(3));
    }
}
