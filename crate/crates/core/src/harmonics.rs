//! Hopf chains of nested Dyck paths, the collar statistic, and the e-expansion, bigraded Hilbert
//! series and chain-count tables built from them.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linear::{binomial, multinomial, Integer, IntPoly, IntPoly2, Partition};
use crate::nutamari::{BitSet, TamariFamily};
use crate::paths::DyckPath;

/// Explicit bounds for chain computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainLimits {
    pub max_n: usize,
    pub time_budget: Option<Duration>,
}

impl Default for ChainLimits {
    fn default() -> Self {
        ChainLimits {
            max_n: 5,
            time_budget: None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Deadline(Option<Instant>);

impl Deadline {
    fn check(&self) -> Result<()> {
        match self.0 {
            Some(end) if Instant::now() > end => Err(Error::ResourceBound("time budget exhausted".into())),
            _ => Ok(()),
        }
    }
}

/// A chain of nested Dyck paths starting at the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HopfChain {
    pub paths: Vec<DyckPath>,
}

impl HopfChain {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn top(&self) -> &DyckPath {
        self.paths.last().expect("chains are nonempty")
    }

    pub fn is_strict(&self) -> bool {
        self.paths.windows(2).all(|w| w[0] != w[1])
    }
}

/// Every Dyck path of size n with its ν-Tamari lattices and nesting relations as bit sets.
#[derive(Debug)]
pub struct ChainSpace {
    family: TamariFamily,
    weak_above: Vec<BitSet>,
    strict_above: Vec<BitSet>,
    areas: Vec<usize>,
    diagonal: usize,
    deadline: Deadline,
}

impl ChainSpace {
    pub fn new(n: usize, limits: &ChainLimits) -> Result<Self> {
        if n > limits.max_n {
            return Err(Error::ResourceBound(format!("chain size {n} exceeds the limit {}", limits.max_n)));
        }
        let family = TamariFamily::new(n);
        let count = family.paths.len();
        let relation = |strict: bool| -> Vec<BitSet> {
            (0..count)
                .map(|a| {
                    let mut set = BitSet::new(count);
                    for b in 0..count {
                        if family.paths[b].is_above(&family.paths[a]) && !(strict && a == b) {
                            set.insert(b);
                        }
                    }
                    set
                })
                .collect()
        };
        let weak_above = relation(false);
        let strict_above = relation(true);
        let areas = family.paths.iter().map(DyckPath::area).collect();
        let diagonal = family.index_of(&DyckPath::diagonal(n)).expect("the diagonal is a Dyck path");
        let deadline = Deadline(limits.time_budget.map(|budget| Instant::now() + budget));
        Ok(ChainSpace {
            family,
            weak_above,
            strict_above,
            areas,
            diagonal,
            deadline,
        })
    }

    pub fn n(&self) -> usize {
        self.family.n
    }

    pub fn paths(&self) -> &[DyckPath] {
        &self.family.paths
    }

    pub fn family(&self) -> &TamariFamily {
        &self.family
    }

    fn index(&self, path: &DyckPath) -> Result<usize> {
        self.family
            .index_of(path)
            .ok_or_else(|| Error::invalid("chain", format!("{path} is not a Dyck path of size {}", self.n())))
    }

    fn up(&self, base: usize, a: usize) -> &BitSet {
        self.family.lattice(base).up_set(a).expect("chain elements lie above every earlier element")
    }

    /// Admissible successors after appending `new` to `prefix`, given those admissible before it.
    fn extend(&self, prefix: &[usize], candidates: &BitSet, new: usize, strict: bool) -> BitSet {
        let mut next = candidates.clone();
        next.intersect_with(if strict { &self.strict_above[new] } else { &self.weak_above[new] });
        for &base in prefix {
            next.intersect_with(self.up(base, new));
        }
        next
    }

    /// Admissible successors of a whole chain, or `None` when the chain itself violates the conditions.
    fn candidates(&self, chain: &[usize], strict: bool) -> Option<BitSet> {
        let (&first, _) = chain.split_first()?;
        if first != self.diagonal {
            return None;
        }
        let mut current = if strict { self.strict_above[first].clone() } else { self.weak_above[first].clone() };
        for k in 1..chain.len() {
            if !current.contains(chain[k]) {
                return None;
            }
            current = self.extend(&chain[..k], &current, chain[k], strict);
        }
        Some(current)
    }

    pub fn is_hopf_chain(&self, paths: &[DyckPath]) -> bool {
        paths
            .iter()
            .map(|p| self.index(p))
            .collect::<Result<Vec<_>>>()
            .is_ok_and(|chain| self.candidates(&chain, false).is_some())
    }

    /// Longest run of insertions strictly between the last element of `prefix` and `top`.
    fn insertion_depth(&self, prefix: &mut Vec<usize>, candidates: &BitSet, top: usize) -> Result<usize> {
        self.deadline.check()?;
        let last = *prefix.last().expect("prefix is nonempty");
        let ceiling = self.areas[top] - self.areas[last] - 1;
        let mut best = 0;
        for tau in candidates.iter() {
            if best == ceiling {
                break;
            }
            if tau == top || !self.strict_above[last].contains(tau) || !self.strict_above[tau].contains(top) {
                continue;
            }
            if 1 + (self.areas[top] - self.areas[tau] - 1) <= best {
                continue;
            }
            let next = self.extend(prefix, candidates, tau, true);
            if !next.contains(top) {
                continue;
            }
            prefix.push(tau);
            let depth = 1 + self.insertion_depth(prefix, &next, top)?;
            prefix.pop();
            best = best.max(depth);
        }
        Ok(best)
    }

    fn collar_of(&self, prefix: &[usize], candidates: &BitSet, top: usize) -> Result<usize> {
        if prefix.last() == Some(&top) {
            return Ok(0);
        }
        Ok(1 + self.insertion_depth(&mut prefix.to_vec(), candidates, top)?)
    }

    /// One plus the most distinct paths that fit strictly between the last two entries, 0 when they agree.
    pub fn collar(&self, chain: &HopfChain) -> Result<usize> {
        let indices = chain.paths.iter().map(|p| self.index(p)).collect::<Result<Vec<_>>>()?;
        if self.candidates(&indices, false).is_none() {
            return Err(Error::invalid("collar", "not a Hopf chain"));
        }
        match indices.as_slice() {
            [] => Err(Error::invalid("collar", "empty chain")),
            [_] => Ok(0),
            [prefix @ .., top] => {
                let candidates = self.candidates(prefix, false).expect("prefixes of Hopf chains are Hopf chains");
                self.collar_of(prefix, &candidates, *top)
            }
        }
    }

    fn to_chain(&self, indices: &[usize]) -> HopfChain {
        HopfChain {
            paths: indices.iter().map(|&i| self.family.paths[i].clone()).collect(),
        }
    }

    /// Strict Hopf chains with their collars, sharded by second element.
    pub fn strict_hopf_chains(&self) -> Result<StrictChains> {
        let root = vec![self.diagonal];
        let start = self.strict_above[self.diagonal].clone();
        let shards: Vec<Result<Vec<(Vec<usize>, usize)>>> = start
            .iter()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|second| {
                let mut out = Vec::new();
                let mut chain = root.clone();
                let collar = self.collar_of(&chain, &start, second)?;
                let next = self.extend(&chain, &start, second, true);
                chain.push(second);
                out.push((chain.clone(), collar));
                self.grow_hopf(&mut chain, &next, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut chains = vec![(root, 0)];
        for shard in shards {
            chains.extend(shard?);
        }
        Ok(StrictChains {
            n: self.n(),
            entries: chains
                .into_iter()
                .map(|(indices, collar)| StrictChain { indices, collar })
                .collect(),
        })
    }

    fn grow_hopf(&self, chain: &mut Vec<usize>, candidates: &BitSet, out: &mut Vec<(Vec<usize>, usize)>) -> Result<()> {
        self.deadline.check()?;
        for top in candidates.iter() {
            let collar = self.collar_of(chain, candidates, top)?;
            let next = self.extend(chain, candidates, top, true);
            chain.push(top);
            out.push((chain.clone(), collar));
            self.grow_hopf(chain, &next, out)?;
            chain.pop();
        }
        Ok(())
    }

    /// Strict chains in the classical Tamari lattice starting at the diagonal.
    pub fn strict_tamari_chains(&self) -> Result<Vec<Vec<usize>>> {
        fn grow(space: &ChainSpace, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
            space.deadline.check()?;
            out.push(chain.clone());
            let last = *chain.last().expect("chain is nonempty");
            for next in space.up(space.diagonal, last).iter().filter(|&p| p != last) {
                chain.push(next);
                grow(space, chain, out)?;
                chain.pop();
            }
            Ok(())
        }
        let mut out = Vec::new();
        grow(self, &mut vec![self.diagonal], &mut out)?;
        Ok(out)
    }

    /// Strict Tamari chains of length four that fail the Hopf condition. Every Tamari chain that is not a
    /// Hopf chain contains one of these as a subchain.
    pub fn killers(&self) -> Result<Vec<HopfChain>> {
        Ok(self
            .strict_tamari_chains()?
            .into_iter()
            .filter(|c| c.len() == 4 && self.candidates(c, true).is_none())
            .map(|c| self.to_chain(&c))
            .collect())
    }

    /// All Hopf chains of length r together with their collars, without going through strict chains.
    pub fn all_hopf_chains(&self, r: usize) -> Result<Vec<(HopfChain, usize)>> {
        fn grow(
            space: &ChainSpace,
            r: usize,
            chain: &mut Vec<usize>,
            candidates: &BitSet,
            out: &mut Vec<(HopfChain, usize)>,
        ) -> Result<()> {
            space.deadline.check()?;
            if chain.len() == r {
                let (top, prefix) = chain.split_last().expect("r ≥ 1");
                let collar = match prefix {
                    [] => 0,
                    _ => {
                        let before = space.candidates(prefix, false).expect("valid prefix");
                        space.collar_of(prefix, &before, *top)?
                    }
                };
                out.push((space.to_chain(chain), collar));
                return Ok(());
            }
            for next in candidates.iter() {
                let following = space.extend(chain, candidates, next, false);
                chain.push(next);
                grow(space, r, chain, &following, out)?;
                chain.pop();
            }
            Ok(())
        }
        let mut out = Vec::new();
        if r == 0 {
            return Ok(out);
        }
        let start = self.weak_above[self.diagonal].clone();
        grow(self, r, &mut vec![self.diagonal], &start, &mut out)?;
        Ok(out)
    }

    /// The chain removing boxes from `path` one at a time, leftmost box of the highest nonempty row first.
    pub fn max_strict_chain(&self, path: &DyckPath) -> Result<HopfChain> {
        max_strict_chain(path)
    }
}

/// Paths of the form (NE)^a ρ (NE)^b with ρ meeting the diagonal only at its ends.
pub fn leaves_diagonal_at_most_once(path: &DyckPath) -> bool {
    path.primitive_components().iter().filter(|c| c.size() > 1).count() <= 1
}

pub fn max_strict_chain(path: &DyckPath) -> Result<HopfChain> {
    if !leaves_diagonal_at_most_once(path) {
        return Err(Error::MultipleExcursions(path.to_string()));
    }
    let mut xs = path.north_x();
    let mut paths = vec![path.clone()];
    while let Some(row) = (0..xs.len()).rev().find(|&y| xs[y] < y) {
        xs[row] += 1;
        paths.push(DyckPath::from_north_x(&xs)?);
    }
    paths.reverse();
    Ok(HopfChain { paths })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictChain {
    pub indices: Vec<usize>,
    pub collar: usize,
}

/// All strict Hopf chains of one size, in enumeration order.
#[derive(Clone, Debug)]
pub struct StrictChains {
    pub n: usize,
    pub entries: Vec<StrictChain>,
}

impl StrictChains {
    /// Number of strict chains by length ℓ (index ℓ − 1).
    pub fn counts_by_length(&self) -> Vec<usize> {
        let longest = self.entries.iter().map(|c| c.indices.len()).max().unwrap_or(0);
        let mut counts = vec![0; longest];
        for c in &self.entries {
            counts[c.indices.len() - 1] += 1;
        }
        counts
    }

    /// Number of strict chains by type of the top path and length ℓ (index ℓ − 1).
    pub fn counts_by_type(&self, space: &ChainSpace) -> BTreeMap<Partition, Vec<usize>> {
        let mut out: BTreeMap<Partition, Vec<usize>> = BTreeMap::new();
        for c in &self.entries {
            let top = &space.paths()[*c.indices.last().expect("nonempty")];
            let row = out.entry(top.type_partition()).or_default();
            if row.len() < c.indices.len() {
                row.resize(c.indices.len(), 0);
            }
            row[c.indices.len() - 1] += 1;
        }
        out
    }

    pub fn chains(&self, space: &ChainSpace) -> Vec<HopfChain> {
        self.entries.iter().map(|c| space.to_chain(&c.indices)).collect()
    }

    /// Ψ_{n,r}(q) expanded in the binomials C(r−2, k).
    pub fn e_expansion(&self, space: &ChainSpace) -> EExpansion {
        let mut coefficients: BTreeMap<Partition, Vec<IntPoly>> = BTreeMap::new();
        let one = Integer::one();
        for c in &self.entries {
            let top = &space.paths()[*c.indices.last().expect("nonempty")];
            let row = coefficients.entry(top.type_partition()).or_default();
            let length = c.indices.len();
            let mut add = |k: usize, degree: usize| {
                if row.len() <= k {
                    row.resize(k + 1, IntPoly::zero());
                }
                row[k].add_monomial(degree, &one);
            };
            if length == 1 {
                add(0, 0);
            } else {
                add(length - 2, c.collar);
                add(length - 1, 0);
            }
        }
        EExpansion { n: self.n, coefficients }
    }

    /// Ψ̃_{n,r}(q₁, q₂) expanded in the binomials C(r−2, k).
    pub fn bigraded(&self, space: &ChainSpace) -> BinomialSeries {
        let mut coefficients: Vec<IntPoly2> = Vec::new();
        let one = Integer::one();
        for c in &self.entries {
            let top = &space.paths()[*c.indices.last().expect("nonempty")];
            let dinv = top.dinv();
            let length = c.indices.len();
            let mut add = |k: usize, d1: usize| {
                if coefficients.len() <= k {
                    coefficients.resize(k + 1, IntPoly2::zero());
                }
                coefficients[k].add_monomial(d1, dinv, &one);
            };
            if length == 1 {
                add(0, 0);
            } else {
                add(length - 2, c.collar);
                add(length - 1, 0);
            }
        }
        BinomialSeries { coefficients }
    }
}

/// Σ_k c_k(q) C(r−2, k) per e_λ, valid for r ≥ 2; r = 1 gives e_{1ⁿ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EExpansion {
    pub n: usize,
    pub coefficients: BTreeMap<Partition, Vec<IntPoly>>,
}

impl EExpansion {
    pub fn coefficient(&self, lambda: &Partition) -> &[IntPoly] {
        self.coefficients.get(lambda).map_or(&[], Vec::as_slice)
    }

    pub fn evaluate(&self, r: usize) -> BTreeMap<Partition, IntPoly> {
        if r == 1 {
            return BTreeMap::from([(Partition::new(vec![1; self.n]), IntPoly::constant(1))]);
        }
        self.coefficients
            .iter()
            .map(|(lambda, row)| {
                let total = row.iter().enumerate().fold(IntPoly::zero(), |acc, (k, c)| {
                    &acc + &c.scale(&binomial(r as i64 - 2, k as i64))
                });
                (lambda.clone(), total)
            })
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    /// Number of Hopf chains of length r, e_λ ↦ 1 at q = 1.
    pub fn unlabeled(&self, r: usize) -> Integer {
        self.evaluate(r).values().map(|p| p.eval(&Integer::one())).sum()
    }

    /// e_λ ↦ n! / λ! at q = 1.
    pub fn labeled(&self, r: usize) -> Integer {
        self.evaluate(r)
            .iter()
            .map(|(lambda, p)| p.eval(&Integer::one()) * multinomial(lambda.parts()))
            .sum()
    }
}

impl Serialize for EExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coefficients.len()))?;
        for (lambda, row) in &self.coefficients {
            seq.serialize_element(&(lambda, row))?;
        }
        seq.end()
    }
}

/// Σ_k c_k(q₁, q₂) C(r−2, k), valid for r ≥ 2; r = 1 gives 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialSeries {
    pub coefficients: Vec<IntPoly2>,
}

impl BinomialSeries {
    pub fn evaluate(&self, r: usize) -> IntPoly2 {
        if r == 1 {
            return IntPoly2::monomial(0, 0, 1);
        }
        self.coefficients.iter().enumerate().fold(IntPoly2::zero(), |acc, (k, c)| {
            &acc + &c.scale(&binomial(r as i64 - 2, k as i64))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.coefficients.iter().all(|c| *c == c.swap_variables())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCounts {
    pub r: usize,
    pub tamari: Integer,
    pub hopf: Integer,
    pub labeled: Integer,
}

/// Everything the chain tables need for one size.
#[derive(Debug)]
pub struct ChainTables {
    pub space: ChainSpace,
    pub strict: StrictChains,
    pub tamari_by_length: Vec<usize>,
    pub expansion: EExpansion,
    pub bigraded: BinomialSeries,
}

impl ChainTables {
    pub fn new(n: usize, limits: &ChainLimits) -> Result<Self> {
        let space = ChainSpace::new(n, limits)?;
        let strict = space.strict_hopf_chains()?;
        let mut tamari_by_length = Vec::new();
        for chain in space.strict_tamari_chains()? {
            if tamari_by_length.len() < chain.len() {
                tamari_by_length.resize(chain.len(), 0);
            }
            tamari_by_length[chain.len() - 1] += 1;
        }
        let expansion = strict.e_expansion(&space);
        let bigraded = strict.bigraded(&space);
        Ok(ChainTables {
            space,
            strict,
            tamari_by_length,
            expansion,
            bigraded,
        })
    }

    pub fn counts(&self, r: usize) -> ChainCounts {
        let aggregate = |by_length: &[usize]| -> Integer {
            by_length
                .iter()
                .enumerate()
                .map(|(k, &c)| binomial(r as i64 - 1, k as i64) * Integer::from(c))
                .sum()
        };
        ChainCounts {
            r,
            tamari: aggregate(&self.tamari_by_length),
            hopf: self.expansion.unlabeled(r),
            labeled: self.expansion.labeled(r),
        }
    }
}

/// Σ (n − i + 1)(λ_i − 1) over i = 1..=n with λ_i = 0 past the length of λ.
pub fn max_area_of_type(lambda: &Partition) -> i64 {
    let n = lambda.weight() as i64;
    (1..=n)
        .map(|i| {
            let part = lambda.parts().get(i as usize - 1).copied().unwrap_or(0) as i64;
            (n - i + 1) * (part - 1)
        })
        .sum()
}

/// The path of type λ with connected north runs and maximal area.
pub fn max_area_path(lambda: &Partition) -> DyckPath {
    let xs: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(k, &part)| std::iter::repeat(k).take(part))
        .collect();
    DyckPath::from_north_x(&xs).expect("runs of a partition of n fit above the diagonal")
}

/// Whether each e_λ coefficient ends C(r−2, m) + (q + b) C(r−2, m−1) with b > 0 and m the maximal area of type λ.
pub fn structure_check(expansion: &EExpansion) -> Vec<(Partition, bool)> {
    Partition::all(expansion.n)
        .into_iter()
        .map(|lambda| {
            let m = max_area_of_type(&lambda);
            let row = expansion.coefficient(&lambda);
            let ok = m >= 0
                && row.len() == m as usize + 1
                && row[m as usize] == IntPoly::constant(1)
                && (m == 0 || {
                    let below = &row[m as usize - 1];
                    below.degree() == Some(1) && below.coeff(1) == Integer::one() && below.coeff(0) > Integer::zero()
                });
            (lambda, ok)
        })
        .collect()
}
