use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::dyck::DyckPath;
use crate::linear::{binomial, Integer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NestedConstraint {
    /// Lower path is a bounce path with k parts.
    BounceBottom(usize),
    /// Upper path is steep with n−k isolated east steps.
    SteepTop(usize),
    None,
}

/// Paths μ with `upper` ≥ μ ≥ `lower`.
pub fn count_between(lower: &DyckPath, upper: &DyckPath) -> Integer {
    let n = lower.size();
    debug_assert_eq!(n, upper.size());
    let (lo, hi) = (upper.north_x(), lower.north_x());
    // ways[x] = number of prefixes whose current north step sits at x.
    let mut ways = vec![Integer::zero(); n + 1];
    ways[0] = Integer::one();
    for y in 0..n {
        let mut next = vec![Integer::zero(); n + 1];
        let mut running = Integer::zero();
        for x in 0..=n {
            running += &ways[x];
            if (lo[y]..=hi[y]).contains(&x) {
                next[x] = running.clone();
            }
        }
        ways = next;
    }
    ways.into_iter().sum()
}

/// Paths weakly above `lower`, as a Kreweras determinant det C(λ_i + 1, i − j + 1).
pub fn count_above_determinant(lower: &DyckPath) -> Integer {
    let rows: Vec<usize> = lower.north_x().into_iter().rev().collect();
    let size = rows.len();
    let matrix: Vec<Vec<BigInt>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| binomial(rows[i] as i64 + 1, i as i64 - j as i64 + 1).to_bigint())
                .collect()
        })
        .collect();
    Integer::from(bareiss_determinant(matrix))
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    let mut sign = BigInt::one();
    let mut previous = BigInt::one();
    for k in 0..size {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &previous;
            }
        }
        previous = m[k][k].clone();
    }
    if size == 0 {
        return BigInt::one();
    }
    sign * &m[size - 1][size - 1]
}

/// Bounce paths of size n with exactly k parts.
pub fn bounce_paths(n: usize, k: usize) -> Vec<DyckPath> {
    compositions(n, k).iter().map(|c| DyckPath::bounce_path(c)).collect()
}

/// Steep paths of size n with exactly `isolated` isolated east steps.
pub fn steep_paths(n: usize, isolated: usize) -> Vec<DyckPath> {
    let interior: Vec<usize> = (1..n).collect();
    subsets(&interior, isolated)
        .iter()
        .map(|heights| DyckPath::steep_path(n, heights).expect("heights in 1..n"))
        .collect()
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if items.len() < size {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mut rest in subsets(&items[1..], size - 1) {
        rest.insert(0, items[0]);
        out.push(rest);
    }
    out.extend(subsets(&items[1..], size));
    out
}

/// Counts nested pairs (π₁ ≤ π₂) of size n subject to the constraint.
pub fn enumerate_nested_pairs(n: usize, constraint: NestedConstraint) -> Integer {
    match constraint {
        NestedConstraint::BounceBottom(k) => bounce_paths(n, k)
            .iter()
            .map(|b| count_between(b, &DyckPath::top(n)))
            .sum(),
        NestedConstraint::SteepTop(k) => {
            if k > n || (n > 0 && k == 0) {
                return Integer::zero();
            }
            steep_paths(n, n - k)
                .iter()
                .map(|s| count_between(&DyckPath::diagonal(n), s))
                .sum()
        }
        NestedConstraint::None => DyckPath::all(n)
            .iter()
            .map(|p| count_between(p, &DyckPath::top(n)))
            .sum(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteepBounceRow {
    pub k: usize,
    pub bounce_bottom: Integer,
    pub steep_top: Integer,
    pub equal: bool,
}

/// Per-k comparison of bounce-bottom and steep-top nested pair counts.
pub fn verify_steep_bounce(n: usize) -> Vec<SteepBounceRow> {
    (1..=n)
        .map(|k| {
            let bounce_bottom = enumerate_nested_pairs(n, NestedConstraint::BounceBottom(k));
            let steep_top = enumerate_nested_pairs(n, NestedConstraint::SteepTop(k));
            SteepBounceRow {
                k,
                equal: bounce_bottom == steep_top,
                bounce_bottom,
                steep_top,
            }
        })
        .collect()
}

/// Sorted count lists behind the two failed naive bijection strategies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaiveWitness {
    pub above_bounce: Vec<Integer>,
    pub below_steep: Vec<Integer>,
    pub bounce_below: Vec<usize>,
    pub steep_above: Vec<usize>,
}

pub fn naive_witness(n: usize) -> NaiveWitness {
    let all = DyckPath::all(n);
    let bounces: Vec<DyckPath> = all.iter().filter(|p| p.is_bounce_path()).cloned().collect();
    let mut above_bounce: Vec<Integer> = bounces
        .iter()
        .map(|b| count_between(b, &DyckPath::top(n)))
        .collect();
    let mut below_steep: Vec<Integer> = bounces
        .iter()
        .map(|b| count_between(&DyckPath::diagonal(n), &b.zeta_inverse()))
        .collect();
    let steeps: Vec<&DyckPath> = all.iter().filter(|p| p.is_steep()).collect();
    let mut bounce_below: Vec<usize> = all
        .iter()
        .map(|p| bounces.iter().filter(|b| p.is_above(b)).count())
        .collect();
    let mut steep_above: Vec<usize> = all
        .iter()
        .map(|p| steeps.iter().filter(|s| s.is_above(p)).count())
        .collect();
    above_bounce.sort();
    below_steep.sort();
    bounce_below.sort_unstable();
    steep_above.sort_unstable();
    NaiveWitness {
        above_bounce,
        below_steep,
        bounce_below,
        steep_above,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::catalan;

    fn brute_between(lower: &DyckPath, upper: &DyckPath) -> usize {
        DyckPath::all(lower.size())
            .iter()
            .filter(|p| p.is_above(lower) && upper.is_above(p))
            .count()
    }

    #[test]
    fn counting_matches_brute_force() {
        for n in 0..=6 {
            for path in DyckPath::all(n) {
                let top = DyckPath::top(n);
                let diag = DyckPath::diagonal(n);
                assert_eq!(count_between(&path, &top), Integer::from(brute_between(&path, &top)));
                assert_eq!(count_between(&diag, &path), Integer::from(brute_between(&diag, &path)));
            }
        }
    }

    #[test]
    fn determinant_matches_brute_force() {
        for n in 0..=6 {
            for k in 1..=n.max(1) {
                for bounce in bounce_paths(n, k) {
                    assert_eq!(
                        count_above_determinant(&bounce),
                        Integer::from(brute_between(&bounce, &DyckPath::top(n))),
                        "{bounce}"
                    );
                }
            }
        }
    }

    #[test]
    fn n3_by_k() {
        let by_k: Vec<Integer> = (1..=3)
            .map(|k| enumerate_nested_pairs(3, NestedConstraint::BounceBottom(k)))
            .collect();
        assert_eq!(by_k, vec![1i64, 6, 5].into_iter().map(Integer::from).collect::<Vec<_>>());
    }

    #[test]
    fn closed_forms_small() {
        for n in 2..=6usize {
            let a = |k| enumerate_nested_pairs(n, NestedConstraint::BounceBottom(k));
            assert_eq!(a(1), Integer::one());
            assert_eq!(a(2), Integer::from((1i64 << n) - 2));
            assert_eq!(a(n), catalan(n));
            let expected = Integer::from(n as i64 + 1) * catalan(n) - catalan(n + 1);
            assert_eq!(a(n - 1), expected);
        }
        assert_eq!(enumerate_nested_pairs(4, NestedConstraint::BounceBottom(3)), Integer::from(28));
    }

    #[test]
    fn naive_approaches_fail_at_four() {
        let witness = naive_witness(4);
        assert_ne!(witness.above_bounce, witness.below_steep);
        assert_ne!(witness.bounce_below, witness.steep_above);
    }
}
