//! Permutations under the global-descent product, with the shuffle/deconcatenation
//! Hopf structure and the dominant-permutation dictionary.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linear::{FormalSum, Partition};
use crate::paths::{DyckPath, Step};

/// One-line notation over 1..=n. Ordered lexicographically by word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

/// The unique ⊛-factorization into atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicFactorization {
    pub factors: Vec<Permutation>,
}

impl AtomicFactorization {
    pub fn sizes(&self) -> Vec<usize> {
        self.factors.iter().map(Permutation::size).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> Permutation {
        Permutation::gd_product_all(&self.factors)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantData {
    pub rothe: BTreeSet<(usize, usize)>,
    pub shape: Partition,
    pub path: DyckPath,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for (position, &value) in word.iter().enumerate() {
            if value == 0 || value > n {
                return Err(Error::parse(
                    "permutation",
                    position,
                    format!("value {value} outside 1..={n}"),
                ));
            }
            if std::mem::replace(&mut seen[value], true) {
                return Err(Error::parse(
                    "permutation",
                    position,
                    format!("value {value} repeated"),
                ));
            }
        }
        Ok(Permutation(word))
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation(word)
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// n…21.
    pub fn reversal(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    /// All permutations of size n in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut word: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(word.clone()));
            let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
                break;
            };
            let j = (i..word.len()).rev().find(|&j| word[j] > word[i - 1]).unwrap();
            word.swap(i - 1, j);
            word[i..].reverse();
        }
        out
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    /// ω(position) with 1-indexed positions.
    pub fn at(&self, position: usize) -> usize {
        self.0[position - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn inversions(&self) -> usize {
        self.lehmer_code().iter().sum()
    }

    /// Gaps γ with ω([γ]) = [n] ∖ [n−γ], in increasing order.
    pub fn global_descents(&self) -> Vec<usize> {
        let n = self.size();
        let mut out = vec![0];
        let mut min_prefix = usize::MAX;
        for (gamma, &value) in self.0.iter().enumerate().map(|(i, v)| (i + 1, v)) {
            min_prefix = min_prefix.min(value);
            if min_prefix == n - gamma + 1 {
                out.push(gamma);
            }
        }
        if n == 0 {
            return vec![0];
        }
        out
    }

    pub fn is_global_descent(&self, gap: usize) -> bool {
        self.global_descents().contains(&gap)
    }

    pub fn is_atomic(&self) -> bool {
        self.size() > 0 && self.global_descents().len() == 2
    }

    /// Splits ω = ω₁ ⊛ ω₂ with |ω₁| = γ.
    pub fn split_at(&self, gamma: usize) -> Result<(Permutation, Permutation)> {
        if !self.is_global_descent(gamma) {
            return Err(Error::NotGlobalDescent {
                gap: gamma,
                permutation: self.to_string(),
            });
        }
        Ok((self.block(0, gamma), self.block(gamma, self.size())))
    }

    /// Standardized positions lo+1..=hi, assuming lo and hi are global descents.
    fn block(&self, lo: usize, hi: usize) -> Permutation {
        let shift = self.size() - hi;
        Permutation(self.0[lo..hi].iter().map(|&v| v - shift).collect())
    }

    pub fn atomic_factorization(&self) -> AtomicFactorization {
        let gaps = self.global_descents();
        AtomicFactorization {
            factors: gaps
                .windows(2)
                .map(|pair| self.block(pair[0], pair[1]))
                .collect(),
        }
    }

    /// (μ⊛ν)(i) = μ(i)+|ν| for i ≤ |μ|, ν(i−|μ|) otherwise.
    pub fn gd_product(&self, other: &Permutation) -> Permutation {
        let shift = other.size();
        Permutation(
            self.0
                .iter()
                .map(|&v| v + shift)
                .chain(other.0.iter().copied())
                .collect(),
        )
    }

    pub fn gd_product_all<'a>(factors: impl IntoIterator<Item = &'a Permutation>) -> Permutation {
        let factors: Vec<&Permutation> = factors.into_iter().collect();
        let mut word = Vec::new();
        let mut remaining: usize = factors.iter().map(|f| f.size()).sum();
        for factor in factors {
            remaining -= factor.size();
            word.extend(factor.0.iter().map(|&v| v + remaining));
        }
        Permutation(word)
    }

    /// Shuffle of atomic factorizations, recombined with ⊛.
    pub fn shuffle_product(&self, other: &Permutation) -> FormalSum<Permutation> {
        let left = self.atomic_factorization().factors;
        let right = other.atomic_factorization().factors;
        let mut out = FormalSum::zero();
        for pattern in block_interleavings(left.len(), right.len()) {
            let (mut li, mut ri) = (left.iter(), right.iter());
            let merged: Vec<&Permutation> = pattern
                .iter()
                .map(|&from_left| if from_left { li.next() } else { ri.next() }.unwrap())
                .collect();
            out.add_term(Permutation::gd_product_all(merged), 1i64);
        }
        out
    }

    /// Deconcatenation of the atomic factorization.
    pub fn deconcat_coproduct(&self) -> FormalSum<(Permutation, Permutation)> {
        let factors = self.atomic_factorization().factors;
        (0..=factors.len())
            .map(|i| {
                (
                    (
                        Permutation::gd_product_all(&factors[..i]),
                        Permutation::gd_product_all(&factors[i..]),
                    ),
                    crate::linear::Integer::one(),
                )
            })
            .collect()
    }

    /// i_k = #{j > k : ω(k) > ω(j)} for k = 1..n−1.
    pub fn lehmer_code(&self) -> Vec<usize> {
        let n = self.size();
        (0..n.saturating_sub(1))
            .map(|k| (k + 1..n).filter(|&j| self.0[k] > self.0[j]).count())
            .collect()
    }

    /// Inverse of `lehmer_code`; a missing final zero is allowed.
    pub fn from_lehmer_code(code: &[usize], n: usize) -> Result<Permutation> {
        if code.len() > n || (code.len() + 1 < n) {
            return Err(Error::invalid("Lehmer code", format!("length {} for size {n}", code.len())));
        }
        let mut unused: Vec<usize> = (1..=n).collect();
        let mut word = Vec::with_capacity(n);
        for k in 0..n {
            let c = code.get(k).copied().unwrap_or(0);
            if c >= unused.len() {
                return Err(Error::invalid("Lehmer code", format!("entry {c} at position {}", k + 1)));
            }
            word.push(unused.remove(c));
        }
        Ok(Permutation(word))
    }

    /// {(ω(i), j) : i > j, ω(i) < ω(j)} in 1-indexed matrix coordinates.
    pub fn rothe_diagram(&self) -> BTreeSet<(usize, usize)> {
        let n = self.size();
        let mut boxes = BTreeSet::new();
        for i in 1..=n {
            for j in 1..i {
                if self.at(i) < self.at(j) {
                    boxes.insert((self.at(i), j));
                }
            }
        }
        boxes
    }

    pub fn is_dominant(&self) -> bool {
        self.dominant_data().is_ok()
    }

    pub fn dominant_data(&self) -> Result<DominantData> {
        let rothe = self.rothe_diagram();
        let n = self.size();
        let rows: Vec<usize> = (1..=n)
            .map(|r| rothe.iter().filter(|&&(row, _)| row == r).count())
            .collect();
        let anchored = rothe.iter().all(|&(r, c)| c <= rows[r - 1]);
        let decreasing = rows.windows(2).all(|w| w[0] >= w[1]);
        if !anchored || !decreasing {
            return Err(Error::NotDominant(self.to_string()));
        }
        let shape = Partition::new(rows.clone());
        // Row r of the shape occupies the strip between heights n−r and n−r+1.
        let north_x: Vec<usize> = (0..n).map(|h| rows[n - 1 - h]).collect();
        let path = DyckPath::from_north_x(&north_x)?;
        Ok(DominantData { rothe, shape, path })
    }

    /// The dominant permutation whose Rothe diagram lies above/left of `path`.
    pub fn from_dyck_path(path: &DyckPath) -> Permutation {
        let n = path.size();
        let north_x = path.north_x();
        let rows: Vec<usize> = (1..=n).map(|r| north_x[n - r]).collect();
        // Column k of the Rothe diagram holds i_k boxes, so the code is the conjugate shape.
        let code: Vec<usize> = (1..=n).map(|k| rows.iter().filter(|&&len| len >= k).count()).collect();
        Permutation::from_lehmer_code(&code, n).expect("conjugate of a staircase-bounded shape")
    }

    /// Dominant permutations of size n, ordered by their Dyck paths.
    pub fn dominant(n: usize) -> Vec<Permutation> {
        DyckPath::all(n).iter().map(Permutation::from_dyck_path).collect()
    }
}

/// All interleavings of `left` and `right` items; `true` picks from the left.
pub fn block_interleavings(left: usize, right: usize) -> Vec<Vec<bool>> {
    fn rec(left: usize, right: usize, prefix: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if left == 0 && right == 0 {
            out.push(prefix.clone());
            return;
        }
        if left > 0 {
            prefix.push(true);
            rec(left - 1, right, prefix, out);
            prefix.pop();
        }
        if right > 0 {
            prefix.push(false);
            rec(left, right - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(left, right, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        if self.size() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "e" || text == "ε" {
            return Ok(Permutation::empty());
        }
        let word: Vec<usize> = if text.contains(',') {
            let mut offset = 0;
            let mut word = Vec::new();
            for piece in text.split(',') {
                let value = piece.trim().parse().map_err(|_| {
                    Error::parse("permutation", offset, format!("expected an integer, found {piece:?}"))
                })?;
                word.push(value);
                offset += piece.len() + 1;
            }
            word
        } else {
            text.chars()
                .enumerate()
                .map(|(i, ch)| {
                    ch.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::parse("permutation", i, format!("unexpected character {ch:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl DyckPath {
    /// Concatenation of two paths, matching ⊛ on dominant permutations.
    pub fn concat(&self, other: &DyckPath) -> DyckPath {
        let steps: Vec<Step> = self.steps().iter().chain(other.steps()).copied().collect();
        DyckPath::new(steps).expect("concatenation of Dyck paths")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::Integer;
    use proptest::prelude::*;

    fn p(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    /// Oracle: check the defining set equality gap by gap.
    fn brute_global_descents(w: &Permutation) -> Vec<usize> {
        let n = w.size();
        (0..=n)
            .filter(|&g| {
                let image: BTreeSet<usize> = w.word()[..g].iter().copied().collect();
                image == (n - g + 1..=n).collect()
            })
            .collect()
    }

    #[test]
    fn global_descent_examples() {
        assert_eq!(p("635421").global_descents(), vec![0, 1, 4, 5, 6]);
        assert_eq!(p("123").global_descents(), vec![0, 3]);
        assert_eq!(p("321").global_descents(), brute_global_descents(&p("321")));
        assert_eq!(p("321").global_descents(), vec![0, 1, 2, 3]);
        assert_eq!(Permutation::empty().global_descents(), vec![0]);
        for n in 0..=6 {
            for w in Permutation::all(n) {
                assert_eq!(w.global_descents(), brute_global_descents(&w));
            }
        }
    }

    #[test]
    fn atomic_factorization_examples() {
        let factors = |s: &str| {
            p(s).atomic_factorization()
                .factors
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        };
        assert_eq!(factors("635421"), vec!["1", "132", "1", "1"]);
        assert_eq!(factors("53412"), vec!["1", "12", "12"]);
        assert_eq!(factors("2413"), vec!["2413"]);
        assert!(Permutation::empty().atomic_factorization().is_empty());
    }

    #[test]
    fn gd_product_examples() {
        assert_eq!(p("132").gd_product(&p("1")), p("2431"));
        assert_eq!(p("1").gd_product(&p("12")), p("312"));
        assert_eq!(Permutation::empty().gd_product(&p("231")), p("231"));
        assert_eq!(p("231").gd_product(&Permutation::empty()), p("231"));
    }

    #[test]
    fn shuffle_examples() {
        let product = p("2431").shuffle_product(&p("312"));
        let expected = FormalSum::from_terms([
            (p("5764312"), 2i64),
            (p("5764231"), 1),
            (p("7465312"), 1),
            (p("7465231"), 1),
            (p("7562431"), 1),
        ]);
        assert_eq!(product, expected);
        assert_eq!(p("231").shuffle_product(&Permutation::empty()), FormalSum::basis(p("231")));
        assert_eq!(p("1").shuffle_product(&p("1")), FormalSum::from_terms([(p("21"), 2i64)]));
    }

    #[test]
    fn coproduct_examples() {
        let expected = FormalSum::from_terms([
            ((Permutation::empty(), p("635421")), 1i64),
            ((p("1"), p("35421")), 1),
            ((p("4132"), p("21")), 1),
            ((p("52431"), p("1")), 1),
            ((p("635421"), Permutation::empty()), 1),
        ]);
        assert_eq!(p("635421").deconcat_coproduct(), expected);
        assert_eq!(
            Permutation::empty().deconcat_coproduct(),
            FormalSum::basis((Permutation::empty(), Permutation::empty()))
        );
        assert_eq!(p("2413").deconcat_coproduct().len(), 2);
    }

    #[test]
    fn lehmer_examples() {
        assert_eq!(p("321").lehmer_code(), vec![2, 1]);
        assert_eq!(p("1234").lehmer_code(), vec![0, 0, 0]);
        assert_eq!(p("2431").lehmer_code(), vec![1, 2, 1]);
        for n in 1..=5 {
            for w in Permutation::all(n) {
                assert_eq!(Permutation::from_lehmer_code(&w.lehmer_code(), n).unwrap(), w);
            }
        }
    }

    #[test]
    fn dominant_examples() {
        let data = p("3241").dominant_data().unwrap();
        assert_eq!(data.shape.parts(), &[3, 1]);
        let identity = Permutation::identity(4).dominant_data().unwrap();
        assert!(identity.shape.is_empty());
        assert_eq!(identity.path.to_string(), "NNNNEEEE");
        let reversal = Permutation::reversal(4).dominant_data().unwrap();
        assert_eq!(reversal.shape.parts(), &[3, 2, 1]);
        assert_eq!(reversal.path, DyckPath::diagonal(4));
        assert!(matches!(p("2413").dominant_data(), Err(Error::NotDominant(_))));
    }

    #[test]
    fn dominant_count_is_catalan() {
        for n in 0..=8 {
            let count = Permutation::all(n).iter().filter(|w| w.is_dominant()).count();
            assert_eq!(Integer::from(count), crate::linear::catalan(n), "n = {n}");
        }
    }

    #[test]
    fn dominant_dictionary_round_trips() {
        for n in 0..=6 {
            for w in Permutation::all(n).into_iter().filter(Permutation::is_dominant) {
                let data = w.dominant_data().unwrap();
                assert_eq!(Permutation::from_dyck_path(&data.path), w);
                let touches = data.path.diagonal_touches();
                assert_eq!(touches, w.global_descents());
                let concatenated = w
                    .atomic_factorization()
                    .factors
                    .iter()
                    .map(|f| f.dominant_data().unwrap().path)
                    .fold(DyckPath::diagonal(0), |acc, seg| acc.concat(&seg));
                assert_eq!(concatenated, data.path);
                for factor in w.atomic_factorization().factors {
                    let seg = factor.dominant_data().unwrap().path;
                    assert_eq!(seg.diagonal_touches(), vec![0, seg.size()]);
                }
            }
        }
    }

    #[test]
    fn parsing_rejects_with_positions() {
        assert!(matches!("1a3".parse::<Permutation>(), Err(Error::Parse { position: 1, .. })));
        assert!(matches!("1224".parse::<Permutation>(), Err(Error::Parse { position: 2, .. })));
        let long: Permutation = "10,9,8,7,6,5,4,3,2,1".parse().unwrap();
        assert_eq!(long, Permutation::reversal(10));
        assert_eq!(long.to_string(), "10,9,8,7,6,5,4,3,2,1");
    }

    fn hopf_pairs(max_total: usize) -> Vec<(Permutation, Permutation)> {
        let mut out = Vec::new();
        for m in 0..=max_total {
            for n in 0..=max_total - m {
                for a in Permutation::all(m) {
                    for b in Permutation::all(n) {
                        out.push((a.clone(), b));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn shuffle_commutes_and_coproduct_is_multiplicative() {
        for (a, b) in hopf_pairs(5) {
            let ab = a.shuffle_product(&b);
            assert_eq!(ab, b.shuffle_product(&a));
            let lengths = (a.atomic_factorization().len(), b.atomic_factorization().len());
            assert_eq!(
                ab.total_mass(),
                crate::linear::binomial((lengths.0 + lengths.1) as i64, lengths.0 as i64)
            );
            let lhs = ab.flat_map(Permutation::deconcat_coproduct);
            let rhs = a.deconcat_coproduct().bilinear(&b.deconcat_coproduct(), |(a1, a2), (b1, b2)| {
                a1.shuffle_product(b1).tensor(&a2.shuffle_product(b2))
            });
            assert_eq!(lhs, rhs, "{a} {b}");
        }
    }

    fn arb_permutation(max: usize) -> impl Strategy<Value = Permutation> {
        (0..=max).prop_flat_map(|n| {
            Just((1..=n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(Permutation)
        })
    }

    proptest! {
        #[test]
        fn gd_product_is_associative(a in arb_permutation(6), b in arb_permutation(6), c in arb_permutation(6)) {
            prop_assert_eq!(a.gd_product(&b).gd_product(&c), a.gd_product(&b.gd_product(&c)));
            prop_assert_eq!(a.gd_product(&Permutation::empty()), a.clone());
        }

        #[test]
        fn factorization_is_unique(factors in proptest::collection::vec(arb_permutation(4), 0..4)) {
            let atoms: Vec<Permutation> = factors.iter().flat_map(|f| f.atomic_factorization().factors).collect();
            let product = Permutation::gd_product_all(&atoms);
            prop_assert_eq!(product.atomic_factorization().factors, atoms);
        }

        #[test]
        fn shuffle_is_associative(a in arb_permutation(3), b in arb_permutation(3), c in arb_permutation(3)) {
            let left = a.shuffle_product(&b).flat_map(|x| x.shuffle_product(&c));
            let right = b.shuffle_product(&c).flat_map(|y| a.shuffle_product(y));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn coproduct_is_coassociative(a in arb_permutation(7)) {
            let delta = a.deconcat_coproduct();
            let left = delta.flat_map(|(x, y)| x.deconcat_coproduct().tensor(&FormalSum::basis(y.clone())))
                .map_basis(|((x, y), z)| (x.clone(), y.clone(), z.clone()));
            let right = delta.flat_map(|(x, y)| FormalSum::basis(x.clone()).tensor(&y.deconcat_coproduct()))
                .map_basis(|(x, (y, z))| (x.clone(), y.clone(), z.clone()));
            prop_assert_eq!(left, right);
        }
    }
}
