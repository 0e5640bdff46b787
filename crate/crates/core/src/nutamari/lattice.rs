use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::paths::{DyckPath, Step};

/// A path weakly above a fixed base path ν of the same size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NuPath {
    pub nu: DyckPath,
    pub path: DyckPath,
}

impl NuPath {
    pub fn new(nu: DyckPath, path: DyckPath) -> Result<Self> {
        if !path.is_above(&nu) {
            return Err(Error::invalid("ν-path", format!("{path} is not weakly above {nu}")));
        }
        Ok(NuPath { nu, path })
    }

    /// Every path weakly above ν, in lex order.
    pub fn all(nu: &DyckPath) -> Vec<NuPath> {
        DyckPath::all(nu.size())
            .into_iter()
            .filter(|p| p.is_above(nu))
            .map(|path| NuPath { nu: nu.clone(), path })
            .collect()
    }

    /// Covers obtained by moving the east step before each valley past the following excursion
    /// that returns to the same horizontal distance from ν.
    pub fn up_covers(&self) -> Vec<NuPath> {
        let n = self.path.size();
        let mut bound = self.nu.north_x();
        bound.push(n);
        let steps = self.path.steps();
        let mut points = Vec::with_capacity(steps.len() + 1);
        let (mut x, mut y) = (0usize, 0usize);
        points.push((x, y));
        for step in steps {
            match step {
                Step::N => y += 1,
                Step::E => x += 1,
            }
            points.push((x, y));
        }
        let distance = |(x, y): (usize, usize)| bound[y] - x;
        let mut out = Vec::new();
        for valley in 1..steps.len() {
            if steps[valley - 1] != Step::E || steps[valley] != Step::N {
                continue;
            }
            let target = distance(points[valley]);
            let end = (valley + 1..points.len())
                .find(|&k| distance(points[k]) == target)
                .expect("the endpoint has distance zero");
            let mut moved = steps[..valley - 1].to_vec();
            moved.extend_from_slice(&steps[valley..end]);
            moved.push(Step::E);
            moved.extend_from_slice(&steps[end..]);
            let path = DyckPath::new(moved).expect("rotation keeps the path above ν");
            out.push(NuPath { nu: self.nu.clone(), path });
        }
        out.sort();
        out
    }
}

impl fmt::Display for NuPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.path, self.nu)
    }
}

/// Fixed-size bit set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BitSet(Vec<u64>);

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet(vec![0; len.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| 64 * k + b)
        })
    }
}

/// The ν-Tamari lattice with its order relation, indexed by positions in `DyckPath::all(n)`.
#[derive(Clone, Debug)]
pub struct NuTamari {
    pub nu: usize,
    /// Indices of the paths weakly above ν.
    pub elements: Vec<usize>,
    pub covers: HashMap<usize, Vec<usize>>,
    /// `up[a]` holds every b with a ≤ b.
    up: HashMap<usize, BitSet>,
}

impl NuTamari {
    pub fn contains(&self, path: usize) -> bool {
        self.up.contains_key(&path)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up.get(&a).is_some_and(|set| set.contains(b))
    }

    pub fn up_set(&self, a: usize) -> Option<&BitSet> {
        self.up.get(&a)
    }
}

/// All Dyck paths of size n, each with its ν-Tamari lattice.
#[derive(Clone, Debug)]
pub struct TamariFamily {
    pub n: usize,
    pub paths: Vec<DyckPath>,
    index: HashMap<DyckPath, usize>,
    lattices: Vec<Arc<NuTamari>>,
}

impl TamariFamily {
    pub fn new(n: usize) -> Self {
        let paths = DyckPath::all(n);
        let index: HashMap<DyckPath, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let lattices = (0..paths.len())
            .map(|b| Arc::new(Self::build(b, &paths, &index)))
            .collect();
        TamariFamily { n, paths, index, lattices }
    }

    fn build(base: usize, paths: &[DyckPath], index: &HashMap<DyckPath, usize>) -> NuTamari {
        let nu = &paths[base];
        let mut elements: Vec<usize> = (0..paths.len()).filter(|&i| paths[i].is_above(nu)).collect();
        let covers: HashMap<usize, Vec<usize>> = elements
            .iter()
            .map(|&i| {
                let up = NuPath { nu: nu.clone(), path: paths[i].clone() }
                    .up_covers()
                    .into_iter()
                    .map(|c| index[&c.path])
                    .collect();
                (i, up)
            })
            .collect();
        // Up-covers strictly increase the area.
        elements.sort_by_key(|&i| std::cmp::Reverse(paths[i].area()));
        let mut up: HashMap<usize, BitSet> = HashMap::new();
        for &i in &elements {
            let mut set = BitSet::new(paths.len());
            set.insert(i);
            for c in &covers[&i] {
                set.union_with(&up[c]);
            }
            up.insert(i, set);
        }
        elements.sort_unstable();
        NuTamari { nu: base, elements, covers, up }
    }

    pub fn index_of(&self, path: &DyckPath) -> Option<usize> {
        self.index.get(path).copied()
    }

    pub fn lattice(&self, base: usize) -> &NuTamari {
        &self.lattices[base]
    }

    /// Whether `lower ≤ upper` in the ν-Tamari order.
    pub fn is_interval(&self, nu: &DyckPath, lower: &DyckPath, upper: &DyckPath) -> bool {
        match (self.index_of(nu), self.index_of(lower), self.index_of(upper)) {
            (Some(b), Some(l), Some(u)) => self.lattices[b].leq(l, u),
            _ => false,
        }
    }
}
