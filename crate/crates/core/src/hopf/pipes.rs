use crate::error::{Error, Result};
use crate::linear::{FormalSum, Integer};
use crate::permutation::block_interleavings;
use crate::pipedream::{PipeDream, MAX_SIZE};

use super::HopfBasis;

impl PipeDream {
    /// Keeps the pipes entering rows 1..=k and contracts their horizontal steps crossed by the others.
    pub fn horizontal_packing(&self, k: usize) -> PipeDream {
        let n = self.size();
        assert!(k <= n, "packing at {k} exceeds size {n}");
        let trace = self.trace();
        let red = |pipe: usize| pipe <= k;
        let mut crosses = Vec::new();
        for row in 0..=k {
            let mut col = 0;
            for c in 0..=n - row {
                let west = trace.west(row, c);
                match trace.south(row, c) {
                    None => col += usize::from(red(west)),
                    Some(south) if self.is_cross(row, c) => {
                        if red(south) {
                            debug_assert!(red(west), "a red pipe crosses a blue one horizontally");
                            crosses.push((row, col));
                            col += 1;
                        }
                    }
                    // A red-over-blue elbow opens a merge that the next blue-over-red elbow closes.
                    Some(_) => col += usize::from(red(west)),
                }
            }
            debug_assert_eq!(col, k + 1 - row, "packed row {row} has the wrong length");
        }
        PipeDream::from_cells_unchecked(k, crosses)
    }

    /// Keeps the pipes exiting columns 1..=k, relabeled, contracting their crossed vertical steps.
    pub fn vertical_packing(&self, k: usize) -> PipeDream {
        self.transpose().horizontal_packing(k).transpose()
    }

    /// Σ over global descents γ of vertical(γ) ⊗ horizontal(n − γ).
    pub fn coproduct(&self) -> FormalSum<(PipeDream, PipeDream)> {
        let n = self.size();
        self.exit_permutation()
            .global_descents()
            .into_iter()
            .map(|gamma| ((self.vertical_packing(gamma), self.horizontal_packing(n - gamma)), Integer::one()))
            .collect()
    }

    /// P ⋆_γ Q; the exit permutation becomes ω₁ ⊛ ω_Q ⊛ ω₂ where ω_P = ω₁ ⊛ ω₂ splits at γ.
    pub fn insert(&self, gamma: usize, other: &PipeDream) -> Result<PipeDream> {
        let omega = self.exit_permutation();
        if !omega.is_global_descent(gamma) {
            return Err(Error::NotGlobalDescent {
                gap: gamma,
                permutation: omega.to_string(),
            });
        }
        let (m, n) = (self.size(), other.size());
        if m + n > MAX_SIZE {
            return Err(Error::ResourceBound(format!("pipe dream size {} exceeds {MAX_SIZE}", m + n)));
        }
        let split = m - gamma;
        let shifted = self.crosses().into_iter().map(|(i, j)| {
            (i + if i > split { n } else { 0 }, j + if j > gamma { n } else { 0 })
        });
        let inner = other.crosses().into_iter().map(|(a, b)| (split + a, gamma + b));
        let new_columns = (gamma + 1..=gamma + n).flat_map(|j| (0..split).map(move |i| (i, j)));
        let new_rows = (split + 1..=split + n).flat_map(|i| (0..gamma).map(move |j| (i, j)));
        let crosses: Vec<(usize, usize)> = shifted.chain(inner).chain(new_columns).chain(new_rows).collect();
        Ok(PipeDream::from_cells_unchecked(m + n, crosses))
    }

    /// Σ over P/Q-shuffles of the tangled pipe dreams.
    pub fn product(&self, other: &PipeDream) -> FormalSum<PipeDream> {
        let p_sizes = self.exit_permutation().atomic_factorization().sizes();
        let q_sizes = other.exit_permutation().atomic_factorization().sizes();
        let mut out = FormalSum::zero();
        for pattern in block_interleavings(p_sizes.len(), q_sizes.len()) {
            out.add_term(self.tangle(other, &p_sizes, &q_sizes, &pattern), 1i64);
        }
        out
    }

    /// Inserts the pieces of `other` cut at its p-blocks into the gaps marked by its q-blocks.
    fn tangle(&self, other: &PipeDream, p_sizes: &[usize], q_sizes: &[usize], pattern: &[bool]) -> PipeDream {
        // (gap in P, number of q letters) for each maximal q-block.
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        let (mut gap, mut pi, mut qi) = (0, 0, 0);
        let mut previous_was_q = false;
        for &from_p in pattern {
            if from_p {
                gap += p_sizes[pi];
                pi += 1;
                previous_was_q = false;
            } else {
                if !previous_was_q {
                    blocks.push((gap, 0));
                }
                blocks.last_mut().expect("open block").1 += q_sizes[qi];
                qi += 1;
                previous_was_q = true;
            }
        }
        let mut rest = other.clone();
        let mut pieces = Vec::with_capacity(blocks.len());
        for &(gap, len) in &blocks {
            pieces.push((gap, rest.vertical_packing(len)));
            rest = rest.horizontal_packing(rest.size() - len);
        }
        pieces.into_iter().rev().fold(self.clone(), |acc, (gap, piece)| {
            acc.insert(gap, &piece).expect("q-blocks sit at global descents")
        })
    }

    /// Rows 0..r−1 and columns 1..n−r are all crosses.
    pub fn is_star0_decomposable_at(&self, r: usize) -> bool {
        let n = self.size();
        0 < r && r < n && (0..r).all(|i| (1..=n - r).all(|j| self.is_cross(i, j)))
    }

    /// P = P₁ ⋆₀ (P₂ ⋆₀ (⋯ ⋆₀ P_ℓ)) with every factor ⋆₀-indecomposable.
    pub fn decompose_star0(&self) -> Vec<PipeDream> {
        let n = self.size();
        match (1..n).find(|&r| self.is_star0_decomposable_at(r)) {
            None => vec![self.clone()],
            Some(r) => {
                let mut factors = vec![self.horizontal_packing(r)];
                factors.extend(self.vertical_packing(n - r).decompose_star0());
                factors
            }
        }
    }

    pub fn compose_star0(factors: &[PipeDream]) -> PipeDream {
        factors
            .iter()
            .rev()
            .cloned()
            .reduce(|acc, factor| factor.insert(0, &acc).expect("gap 0 is always a global descent"))
            .unwrap_or_else(PipeDream::empty)
    }

    /// Crosses at (n_ℓ, 0), (n_ℓ + n_{ℓ−1}, 0), …, (n_ℓ + ⋯ + n₂, 0) for atomic sizes n₁, …, n_ℓ.
    pub fn is_indecomposable(&self) -> bool {
        if self.size() == 0 {
            return false;
        }
        let sizes = self.exit_permutation().atomic_factorization().sizes();
        let mut row = 0;
        sizes[1..].iter().rev().all(|&size| {
            row += size;
            self.is_cross(row, 0)
        })
    }

    /// Column-0 product P₁·P₂·⋯·P_ℓ of the ⋆₀-factors.
    pub fn factor_product(&self) -> FormalSum<PipeDream> {
        self.decompose_star0()
            .iter()
            .map(|f| FormalSum::basis(f.clone()))
            .reduce(|acc, f| product_of_sums(&acc, &f))
            .unwrap_or_else(|| FormalSum::basis(PipeDream::empty()))
    }
}

impl HopfBasis for PipeDream {
    fn degree(&self) -> usize {
        self.size()
    }

    fn unit() -> Self {
        PipeDream::empty()
    }

    fn product(&self, other: &Self) -> FormalSum<Self> {
        PipeDream::product(self, other)
    }

    fn coproduct(&self) -> FormalSum<(Self, Self)> {
        PipeDream::coproduct(self)
    }
}

pub fn product_of_sums(a: &FormalSum<PipeDream>, b: &FormalSum<PipeDream>) -> FormalSum<PipeDream> {
    super::multiply(a, b)
}

/// Least pipe dream in reading-word order with its coefficient.
pub fn leading_term(sum: &FormalSum<PipeDream>) -> Result<(Integer, PipeDream)> {
    sum.first().map(|(p, c)| (c.clone(), p.clone())).ok_or(Error::ZeroSum)
}

/// P*·Q* = Σ R* over R with (m, n)-untangling P ⊗ Q.
pub fn dual_product(left: &PipeDream, right: &PipeDream) -> FormalSum<PipeDream> {
    let (m, n) = (left.size(), right.size());
    let omega = left.exit_permutation().gd_product(&right.exit_permutation());
    PipeDream::enumerate(&omega)
        .into_iter()
        .filter(|r| &r.vertical_packing(m) == left && &r.horizontal_packing(n) == right)
        .map(|r| (r, Integer::one()))
        .collect()
}

/// ω maps the product to ⋓ and the coproduct to deconcatenation, termwise.
pub fn omega_morphism_check(left: &PipeDream, right: &PipeDream) -> bool {
    let exit = |p: &PipeDream| p.exit_permutation();
    let product = left.product(right).map_basis(exit);
    let shuffle = left.exit_permutation().shuffle_product(&right.exit_permutation());
    let coproducts = [left, right].iter().all(|p| {
        p.coproduct().map_basis(|(a, b)| (a.exit_permutation(), b.exit_permutation()))
            == p.exit_permutation().deconcat_coproduct()
    });
    product == shuffle && coproducts
}
