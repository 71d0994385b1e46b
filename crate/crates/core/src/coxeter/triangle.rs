//! Classification of rank-3 standard parabolic subgroups.

use serde::Serialize;

use super::matrix::{Bond, CoxeterMatrix};
use super::Gen;

/// Which triangle groups a Coxeter matrix contains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    /// No triple realizes `(2, b, c)` with `b, c >= 3` and `min(b, c)` finite.
    pub avoids_tri: bool,
    pub tri_witnesses: Vec<[Gen; 3]>,
    /// Some triple is `(3, 3, c)` with `3 < c < inf`.
    pub contains_33c_finite: bool,
    pub witness_33c: Option<[Gen; 3]>,
    pub contains_333: bool,
    pub witness_333: Option<[Gen; 3]>,
    pub has_infinite_bond: bool,
    /// Largest finite off-diagonal label.
    pub max_finite_bond: Option<u32>,
    /// Finiteness of the palindromic set; only decided when Tri is avoided.
    pub palindromic_set_finite: Option<bool>,
}

impl TriangleReport {
    /// Length bound `|S| (m0 + 3)` on palindromic elements, when the set is finite.
    pub fn palindromic_length_bound(&self, rank: usize) -> Option<usize> {
        match (self.palindromic_set_finite, self.max_finite_bond) {
            (Some(true), Some(m0)) => Some(rank * (m0 as usize + 3)),
            _ => None,
        }
    }
}

fn sorted_labels(a: Bond, b: Bond, c: Bond) -> [Bond; 3] {
    let mut v = [a, b, c];
    v.sort();
    v
}

pub fn triangle_scan(matrix: &CoxeterMatrix) -> TriangleReport {
    let n = matrix.rank();
    let mut tri_witnesses = Vec::new();
    let mut witness_33c = None;
    let mut witness_333 = None;
    for r in 0..n {
        for s in r + 1..n {
            for t in s + 1..n {
                let labels = sorted_labels(matrix.bond(r, s), matrix.bond(r, t), matrix.bond(s, t));
                let triple = [r as Gen, s as Gen, t as Gen];
                // Finite sorts before Infinite, so labels[1] is min(b, c)
                if labels[0] == Bond::Finite(2)
                    && labels[1].at_least(3)
                    && labels[1].finite().is_some()
                {
                    tri_witnesses.push(triple);
                }
                if labels[0] == Bond::Finite(3) && labels[1] == Bond::Finite(3) {
                    match labels[2] {
                        Bond::Finite(3) => {
                            witness_333.get_or_insert(triple);
                        }
                        Bond::Finite(_) => {
                            witness_33c.get_or_insert(triple);
                        }
                        Bond::Infinite => {}
                    }
                }
            }
        }
    }
    let mut has_infinite_bond = false;
    let mut max_finite_bond = None;
    for i in 0..n {
        for j in i + 1..n {
            match matrix.bond(i, j) {
                Bond::Infinite => has_infinite_bond = true,
                Bond::Finite(m) => max_finite_bond = max_finite_bond.max(Some(m)),
            }
        }
    }
    let avoids_tri = tri_witnesses.is_empty();
    let contains_333 = witness_333.is_some();
    TriangleReport {
        avoids_tri,
        tri_witnesses,
        contains_33c_finite: witness_33c.is_some(),
        witness_33c,
        contains_333,
        witness_333,
        has_infinite_bond,
        max_finite_bond,
        palindromic_set_finite: avoids_tri.then_some(!has_infinite_bond && !contains_333),
    }
}
