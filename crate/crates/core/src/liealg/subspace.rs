use num_traits::Zero;

use super::{AlgebraId, Element};
use crate::exact::{Mat, Rat};

/// A linear subspace of a realized algebra.
///
/// The basis is kept in reduced row echelon form (rows are coordinate
/// vectors, pivots normalized to one), which makes it canonical: two
/// subspaces are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    alg: AlgebraId,
    ambient: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(alg: AlgebraId, ambient: usize) -> Self {
        Subspace {
            alg,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(alg: AlgebraId, ambient: usize, vectors: Vec<Vec<Rat>>) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(alg, ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length");
        let rref = Mat::from_rows(vectors).expect("rectangular").rref();
        let rows = (0..rref.pivots.len()).map(|i| rref.matrix.row(i).to_vec()).collect();
        Subspace {
            alg,
            ambient,
            rows,
            pivots: rref.pivots,
        }
    }

    pub fn span(alg: AlgebraId, ambient: usize, elements: &[Element]) -> Self {
        for e in elements {
            assert_eq!(e.alg, alg, "elements of different algebras");
        }
        Subspace::from_vectors(alg, ambient, elements.iter().map(|e| e.coords.clone()).collect())
    }

    pub fn algebra(&self) -> AlgebraId {
        self.alg
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> Vec<Element> {
        self.rows
            .iter()
            .map(|r| Element {
                alg: self.alg,
                coords: r.clone(),
            })
            .collect()
    }

    pub fn basis_vectors(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Subtracts from `v` its expansion along the pivot coordinates. The
    /// result is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &c * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, x: &Element) -> bool {
        assert_eq!(x.alg, self.alg, "elements of different algebras");
        self.reduce(&x.coords).iter().all(Zero::is_zero)
    }

    /// Coordinates of `x` in the echelon basis, if `x` lies in the subspace.
    pub fn coords_of(&self, x: &Element) -> Option<Vec<Rat>> {
        if !self.contains(x) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| x.coords[p].clone()).collect())
    }

    pub fn element_from_coords(&self, c: &[Rat]) -> Element {
        assert_eq!(c.len(), self.dim(), "subspace coordinate length");
        let mut coords = vec![Rat::zero(); self.ambient];
        for (ci, row) in c.iter().zip(&self.rows) {
            if ci.is_zero() {
                continue;
            }
            for (o, r) in coords.iter_mut().zip(row) {
                *o += ci * r;
            }
        }
        Element { alg: self.alg, coords }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.alg, other.alg, "subspaces of different algebras");
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::from_vectors(self.alg, self.ambient, v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::liealg::Family;

    const ID: AlgebraId = AlgebraId {
        family: Family::A,
        rank: 2,
    };

    fn el(v: &[i64]) -> Element {
        Element {
            alg: ID,
            coords: v.iter().map(|&x| rat(x)).collect(),
        }
    }

    #[test]
    fn echelon_basis_is_canonical() {
        let a = Subspace::span(ID, 3, &[el(&[1, 1, 0]), el(&[0, 1, 1])]);
        let b = Subspace::span(ID, 3, &[el(&[1, 2, 1]), el(&[1, 0, -1]), el(&[2, 2, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn membership_and_coordinates() {
        let s = Subspace::span(ID, 3, &[el(&[1, 1, 0]), el(&[0, 0, 1])]);
        let x = el(&[2, 2, -3]);
        assert!(s.contains(&x));
        let c = s.coords_of(&x).unwrap();
        assert_eq!(s.element_from_coords(&c), x);
        assert!(!s.contains(&el(&[1, 0, 0])));
        assert!(s.coords_of(&el(&[1, 0, 0])).is_none());
    }
}
