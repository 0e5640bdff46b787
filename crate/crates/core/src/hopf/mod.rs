//! Graded connected Hopf algebras on combinatorial bases, the pipe dream operations, and
//! restricted-atom subalgebras.

mod pipes;
mod subalgebra;

use std::fmt::Debug;

use rayon::prelude::*;
use serde::Serialize;

use crate::linear::FormalSum;
use crate::permutation::Permutation;

pub use pipes::{dual_product, leading_term, omega_morphism_check, product_of_sums};
pub use subalgebra::{subalgebra_dims, AtomSet, SubalgebraRow};

/// Basis of a graded connected Hopf algebra with unit of degree zero.
pub trait HopfBasis: Ord + Clone + Debug + Send + Sync {
    fn degree(&self) -> usize;
    fn unit() -> Self;
    fn product(&self, other: &Self) -> FormalSum<Self>;
    fn coproduct(&self) -> FormalSum<(Self, Self)>;
}

impl HopfBasis for Permutation {
    fn degree(&self) -> usize {
        self.size()
    }

    fn unit() -> Self {
        Permutation::empty()
    }

    fn product(&self, other: &Self) -> FormalSum<Self> {
        self.shuffle_product(other)
    }

    fn coproduct(&self) -> FormalSum<(Self, Self)> {
        self.deconcat_coproduct()
    }
}

pub fn multiply<B: HopfBasis>(a: &FormalSum<B>, b: &FormalSum<B>) -> FormalSum<B> {
    a.bilinear(b, |x, y| x.product(y))
}

/// Componentwise product (a ⊗ b)(c ⊗ d) = ac ⊗ bd.
pub fn multiply_tensors<B: HopfBasis>(x: &FormalSum<(B, B)>, y: &FormalSum<(B, B)>) -> FormalSum<(B, B)> {
    x.bilinear(y, |(a, b), (c, d)| a.product(c).tensor(&b.product(d)))
}

pub fn is_associative<B: HopfBasis>(a: &B, b: &B, c: &B) -> bool {
    let left = multiply(&a.product(b), &FormalSum::basis(c.clone()));
    let right = multiply(&FormalSum::basis(a.clone()), &b.product(c));
    left == right
}

pub fn is_coassociative<B: HopfBasis>(a: &B) -> bool {
    let delta = a.coproduct();
    let left: FormalSum<(B, B, B)> = delta.flat_map(|(x, y)| x.coproduct().map_basis(|(u, v)| (u.clone(), v.clone(), y.clone())));
    let right: FormalSum<(B, B, B)> = delta.flat_map(|(x, y)| y.coproduct().map_basis(|(u, v)| (x.clone(), u.clone(), v.clone())));
    left == right
}

/// Δ(a·b) = Δ(a)·Δ(b).
pub fn is_compatible<B: HopfBasis>(a: &B, b: &B) -> bool {
    let left = a.product(b).flat_map(|x| x.coproduct());
    let right = multiply_tensors(&a.coproduct(), &b.coproduct());
    left == right
}

/// Unit and counit laws, and homogeneity of both operations.
pub fn is_unital<B: HopfBasis>(a: &B) -> bool {
    let single = FormalSum::basis(a.clone());
    let graded = a.coproduct().iter().all(|((x, y), _)| x.degree() + y.degree() == a.degree());
    let ends = a.coproduct().contains(&(B::unit(), a.clone())) && a.coproduct().contains(&(a.clone(), B::unit()));
    a.product(&B::unit()) == single && B::unit().product(a) == single && graded && ends
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub max_total_degree: usize,
    pub elements: usize,
    pub associativity_checks: usize,
    pub compatibility_checks: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustive axiom check over all basis elements whose degrees sum to at most `max_total`.
/// `basis(d)` lists the basis of degree d.
pub fn verify_axioms<B: HopfBasis>(basis: impl Fn(usize) -> Vec<B>, max_total: usize) -> AxiomReport {
    let by_degree: Vec<Vec<B>> = (0..=max_total).map(basis).collect();
    let all: Vec<&B> = by_degree.iter().flatten().collect();
    let mut failures: Vec<String> = all
        .par_iter()
        .filter_map(|a| {
            if !is_unital(*a) {
                Some(format!("unit or grading fails for {a:?}"))
            } else if !is_coassociative(*a) {
                Some(format!("coassociativity fails for {a:?}"))
            } else {
                None
            }
        })
        .collect();
    let pairs: Vec<(&B, &B)> = all
        .iter()
        .flat_map(|a| all.iter().filter(move |b| a.degree() + b.degree() <= max_total).map(move |b| (*a, *b)))
        .collect();
    failures.extend(pairs.par_iter().filter_map(|(a, b)| {
        (!is_compatible(*a, *b)).then(|| format!("compatibility fails for {a:?}, {b:?}"))
    }).collect::<Vec<_>>());
    let positive: Vec<&B> = all.iter().copied().filter(|a| a.degree() > 0).collect();
    let mut triples: Vec<(&B, &B, &B)> = Vec::new();
    for a in &positive {
        for b in &positive {
            for c in &positive {
                if a.degree() + b.degree() + c.degree() <= max_total {
                    triples.push((*a, *b, *c));
                }
            }
        }
    }
    failures.extend(triples.par_iter().filter_map(|(a, b, c)| {
        (!is_associative(*a, *b, *c)).then(|| format!("associativity fails for {a:?}, {b:?}, {c:?}"))
    }).collect::<Vec<_>>());
    failures.sort();
    AxiomReport {
        max_total_degree: max_total,
        elements: all.len(),
        associativity_checks: triples.len(),
        compatibility_checks: pairs.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_axioms() {
        let report = verify_axioms(Permutation::all, 5);
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.elements, 1 + 1 + 2 + 6 + 24 + 120);
    }
}
