use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::Integer;
use crate::paths::DyckPath;
use crate::permutation::Permutation;
use crate::pipedream::PipeDream;

/// A set of atomic permutations generating a sub-Hopf algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomSet {
    List(Vec<Permutation>),
    /// 1, 12, 123, …
    Identities,
    /// Atomic dominant permutations.
    DominantAtoms,
}

impl AtomSet {
    pub fn list(atoms: Vec<Permutation>) -> Result<Self> {
        if let Some(bad) = atoms.iter().find(|a| !a.is_atomic()) {
            return Err(Error::invalid("atom set", format!("{bad} is not atomic")));
        }
        let mut atoms = atoms;
        atoms.sort();
        atoms.dedup();
        Ok(AtomSet::List(atoms))
    }

    pub fn contains(&self, atom: &Permutation) -> bool {
        match self {
            AtomSet::List(atoms) => atoms.contains(atom),
            AtomSet::Identities => *atom == Permutation::identity(atom.size()) && atom.size() > 0,
            AtomSet::DominantAtoms => atom.is_atomic() && atom.is_dominant(),
        }
    }

    pub fn atoms_of_size(&self, size: usize) -> Vec<Permutation> {
        match self {
            AtomSet::List(atoms) => atoms.iter().filter(|a| a.size() == size).cloned().collect(),
            AtomSet::Identities if size > 0 => vec![Permutation::identity(size)],
            AtomSet::Identities => Vec::new(),
            AtomSet::DominantAtoms => DyckPath::all(size)
                .iter()
                .filter(|p| size > 0 && p.diagonal_touches().len() == 2)
                .map(Permutation::from_dyck_path)
                .collect(),
        }
    }

    /// Every ⊛-product of atoms of total size n, with its number of atoms, sorted.
    pub fn permutations(&self, n: usize) -> Vec<(Permutation, usize)> {
        let atoms: Vec<Vec<Permutation>> = (0..=n).map(|k| self.atoms_of_size(k)).collect();
        fn rec(
            remaining: usize,
            atoms: &[Vec<Permutation>],
            prefix: &mut Vec<Permutation>,
            out: &mut Vec<(Permutation, usize)>,
        ) {
            if remaining == 0 {
                out.push((Permutation::gd_product_all(prefix.iter()), prefix.len()));
                return;
            }
            for size in 1..=remaining {
                for atom in &atoms[size] {
                    prefix.push(atom.clone());
                    rec(remaining - size, atoms, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &atoms, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomSet::Identities => f.write_str("identities"),
            AtomSet::DominantAtoms => f.write_str("dominant"),
            AtomSet::List(atoms) => {
                let words: Vec<String> = atoms.iter().map(|a| a.to_string().replace(',', ".")).collect();
                f.write_str(&words.join(";"))
            }
        }
    }
}

/// "identities", "dominant", or atoms separated by ',' or ';' (use ';' when an atom contains commas).
impl FromStr for AtomSet {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.trim() {
            "identities" => Ok(AtomSet::Identities),
            "dominant" => Ok(AtomSet::DominantAtoms),
            list => {
                let separator = if list.contains(';') { ';' } else { ',' };
                let atoms = list
                    .split(separator)
                    .map(|w| w.trim().replace('.', ","))
                    .filter(|w| !w.is_empty())
                    .map(|w| w.parse::<Permutation>())
                    .collect::<Result<Vec<_>>>()?;
                if atoms.is_empty() {
                    return Err(Error::parse("atom set", 0, "no atoms given"));
                }
                AtomSet::list(atoms)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraRow {
    pub n: usize,
    /// Number of pipe dreams whose exit permutation factors into atoms of the set.
    pub dimension: Integer,
    /// ⋆₀-indecomposable ones among them.
    pub generators: Integer,
    /// Degree-n dimension of the free algebra on the generator counts so far.
    pub free_dimension: Integer,
    /// Entry k restricts to exit permutations with k atoms.
    pub by_atom_count: Vec<Integer>,
}

impl SubalgebraRow {
    pub fn is_free_consistent(&self) -> bool {
        self.dimension == self.free_dimension
    }
}

pub fn subalgebra_dims(atoms: &AtomSet, max_n: usize) -> Vec<SubalgebraRow> {
    let mut rows: Vec<SubalgebraRow> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let counts: Vec<(usize, usize, usize)> = atoms
            .permutations(n)
            .par_iter()
            .map(|(omega, k)| {
                let dreams = PipeDream::enumerate(omega);
                let generators = if n == 0 { 0 } else { dreams.iter().filter(|p| p.is_indecomposable()).count() };
                (*k, dreams.len(), generators)
            })
            .collect();
        let mut by_atom_count = vec![Integer::zero(); n + 1];
        let (mut dimension, mut generators) = (Integer::zero(), Integer::zero());
        for (k, dims, gens) in counts {
            by_atom_count[k] += Integer::from(dims);
            dimension += Integer::from(dims);
            generators += Integer::from(gens);
        }
        let free_dimension = if n == 0 {
            Integer::one()
        } else {
            (1..=n)
                .map(|k| {
                    let g = if k == n { &generators } else { &rows[k].generators };
                    g * &rows[n - k].free_dimension
                })
                .sum()
        };
        rows.push(SubalgebraRow {
            n,
            dimension,
            generators,
            free_dimension,
            by_atom_count,
        });
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::catalan;

    fn column(rows: &[SubalgebraRow], f: impl Fn(&SubalgebraRow) -> &Integer) -> Vec<i64> {
        rows.iter().map(|r| f(r).to_i64().unwrap()).collect()
    }

    #[test]
    fn single_atom_one() {
        let rows = subalgebra_dims(&"1".parse().unwrap(), 6);
        for row in &rows {
            assert_eq!(row.dimension, catalan(row.n));
            assert!(row.is_free_consistent());
            if row.n > 0 {
                assert_eq!(row.generators, catalan(row.n - 1));
            }
        }
    }

    #[test]
    fn single_atom_twelve() {
        let rows = subalgebra_dims(&"12".parse().unwrap(), 6);
        assert_eq!(column(&rows, |r| &r.generators), vec![0, 0, 1, 0, 5, 0, 42]);
        assert_eq!(rows[4].dimension, Integer::from(6));
        assert!(rows.iter().all(SubalgebraRow::is_free_consistent));
    }

    #[test]
    fn identities() {
        let rows = subalgebra_dims(&AtomSet::Identities, 5);
        assert_eq!(column(&rows, |r| &r.dimension), vec![1, 1, 3, 12, 57, 301]);
        let by_k: Vec<i64> = rows[3].by_atom_count.iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(by_k, vec![0, 1, 6, 5]);
        assert!(rows.iter().all(SubalgebraRow::is_free_consistent));
    }

    #[test]
    fn parsing() {
        assert_eq!("identities".parse::<AtomSet>().unwrap(), AtomSet::Identities);
        assert_eq!("dominant".parse::<AtomSet>().unwrap(), AtomSet::DominantAtoms);
        let set: AtomSet = "1, 213".parse().unwrap();
        assert_eq!(set.to_string(), "1;213");
        assert!("12,21".parse::<AtomSet>().is_err());
        let dominant = AtomSet::DominantAtoms;
        assert_eq!(dominant.atoms_of_size(3).len(), 2);
        assert!(dominant.atoms_of_size(3).iter().all(|a| dominant.contains(a)));
    }

    #[test]
    fn dominant_atoms_give_all_dominant_permutations() {
        for n in 0..=6 {
            let perms: Vec<Permutation> = AtomSet::DominantAtoms.permutations(n).into_iter().map(|(p, _)| p).collect();
            let mut expected = Permutation::dominant(n);
            expected.sort();
            assert_eq!(perms, expected);
        }
    }
}
