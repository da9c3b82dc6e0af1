//! Linear subspaces of Q^n in a canonical basis.
//!
//! A subspace is stored as an `ambient x dim` basis matrix in reduced
//! column echelon form (the transpose of the reduced row echelon form of
//! any spanning set). That form is unique, so two values represent the
//! same subspace exactly when they are structurally equal — set equality
//! degrades to `==`, which the arrangement layer leans on heavily.

use std::cmp::Ordering;

use num_traits::One;

use crate::exactlin::{Rat, RatMatrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    /// `ambient x dim`, reduced column echelon, pivot entries 1.
    basis: RatMatrix,
}

impl Subspace {
    /// Span of the columns of `gens` (rows = ambient dimension). The
    /// generating set may be redundant or dependent; the stored basis is
    /// canonicalized.
    pub fn from_cols(gens: &RatMatrix) -> Self {
        let red = gens.transpose().row_reduce();
        let dim = red.pivots.len();
        let basis = red.rref.select_rows(&(0..dim).collect::<Vec<_>>()).transpose();
        Subspace {
            ambient: gens.rows(),
            basis,
        }
    }

    pub fn from_vecs(ambient: usize, vecs: &[Vec<Rat>]) -> Self {
        if vecs.is_empty() {
            return Subspace::zero(ambient);
        }
        for v in vecs {
            assert_eq!(v.len(), ambient, "generator has wrong length");
        }
        Subspace::from_cols(&RatMatrix::from_rows(vecs.to_vec()).transpose())
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMatrix::identity(ambient),
        }
    }

    /// Span of the coordinate axes listed in `indices` (0-indexed).
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let mut sorted: Vec<usize> = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut basis = RatMatrix::zeros(ambient, sorted.len());
        for (j, &i) in sorted.iter().enumerate() {
            assert!(i < ambient, "coordinate index {i} out of range");
            basis.set(i, j, Rat::one());
        }
        Subspace {
            ambient,
            basis,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    /// First canonical basis vector, if the subspace is nonzero. Used to
    /// extract deterministic witnesses.
    pub fn first_vector(&self) -> Option<Vec<Rat>> {
        (self.dim() > 0).then(|| self.basis.col(0))
    }

    pub fn contains_vec(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        self.basis.solve(v).is_some()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if other.dim() > self.dim() {
            return false;
        }
        (0..other.dim()).all(|j| self.contains_vec(&other.basis.col(j)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        Subspace::from_cols(&self.basis.hstack(&other.basis))
    }

    /// Intersection via the kernel of `[U | -V]`: a kernel vector `(a, b)`
    /// satisfies `U a = V b`, and those common points span the result.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let stacked = self.basis.hstack(&other.basis.neg());
        let k = stacked.kernel();
        let a_part = k.select_rows(&(0..self.dim()).collect::<Vec<_>>());
        Subspace::from_cols(&self.basis.mul(&a_part))
    }

    /// Rows spanning the annihilator `{q : q v = 0 for all v in self}`,
    /// returned as a `(ambient - dim) x ambient` matrix.
    pub fn annihilator(&self) -> RatMatrix {
        self.basis.transpose().kernel().transpose()
    }

    /// `{x : map x ∈ self}`. `map` must have `ambient` rows.
    pub fn preimage(&self, map: &RatMatrix) -> Subspace {
        assert_eq!(map.rows(), self.ambient, "map codomain mismatch");
        let q = self.annihilator();
        Subspace::from_cols(&q.mul(map).kernel())
    }

    /// Image of this subspace under `map` (`map` has `ambient` columns).
    pub fn image(&self, map: &RatMatrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient, "map domain mismatch");
        Subspace::from_cols(&map.mul(&self.basis))
    }

    /// Total order used for canonical sorting: dimension first, then the
    /// basis entries vector-by-vector. Equal subspaces compare equal.
    pub fn canonical_cmp(&self, other: &Subspace) -> Ordering {
        debug_assert_eq!(self.ambient, other.ambient);
        self.dim().cmp(&other.dim()).then_with(|| {
            for j in 0..self.dim() {
                for i in 0..self.ambient {
                    match self.basis.at(i, j).cmp(other.basis.at(i, j)) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
            }
            Ordering::Equal
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_vec(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_integer(x.into())).collect()
    }

    #[test]
    fn kernel_of_partial_readout_is_the_unmeasured_plane() {
        // Readout that sees coordinates 1 and 3 of a 4-state system.
        let c = RatMatrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]);
        let ker = Subspace::from_cols(&c.kernel());
        let expected = Subspace::coordinate(4, &[1, 3]);
        assert_eq!(ker, expected);
        assert_eq!(ker.dim(), 2);
    }

    #[test]
    fn canonical_basis_ignores_generating_set() {
        let a = Subspace::from_vecs(3, &[int_vec(&[1, 1, 0]), int_vec(&[0, 1, 1])]);
        let b = Subspace::from_vecs(
            3,
            &[
                int_vec(&[2, 2, 0]),
                int_vec(&[1, 2, 1]),
                int_vec(&[3, 4, 1]),
            ],
        );
        assert_eq!(a, b);
    }

    #[test]
    fn sum_and_intersection_of_planes() {
        let xy = Subspace::coordinate(3, &[0, 1]);
        let yz = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(xy.sum(&yz), Subspace::full(3));
        assert_eq!(xy.intersect(&yz), Subspace::coordinate(3, &[1]));
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let m = RatMatrix::from_int_rows(&[&[1, 1, 1]]);
        let pre = Subspace::zero(1).preimage(&m);
        assert_eq!(pre, Subspace::from_cols(&m.kernel()));
        assert_eq!(pre.dim(), 2);
    }

    #[test]
    fn preimage_of_full_is_everything() {
        let m = RatMatrix::from_int_rows(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(Subspace::full(3).preimage(&m), Subspace::full(2));
    }

    #[test]
    fn containment_and_witness_direction() {
        let line = Subspace::from_vecs(4, &[int_vec(&[0, 1, 0, -1])]);
        let plane = Subspace::coordinate(4, &[1, 3]);
        assert!(plane.contains(&line));
        assert!(!line.contains(&plane));
        assert_eq!(line.first_vector().unwrap(), int_vec(&[0, 1, 0, -1]));
    }

    fn arb_subspace(ambient: usize, gens: usize) -> impl Strategy<Value = Subspace> {
        prop::collection::vec(
            prop::collection::vec(-3i64..4, ambient),
            0..=gens,
        )
        .prop_map(move |rows| {
            let vecs: Vec<Vec<Rat>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(|v| Rat::from_integer(v.into())).collect())
                .collect();
            Subspace::from_vecs(ambient, &vecs)
        })
    }

    proptest! {
        #[test]
        fn dims_satisfy_modular_law(u in arb_subspace(4, 3), v in arb_subspace(4, 3)) {
            let s = u.sum(&v);
            let i = u.intersect(&v);
            prop_assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
            prop_assert!(s.contains(&u) && s.contains(&v));
            prop_assert!(u.contains(&i) && v.contains(&i));
        }

        #[test]
        fn preimage_maps_into_target(u in arb_subspace(3, 2), seed in any::<u64>()) {
            let mut s = seed;
            let mut next = || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) as i64 % 5) - 2
            };
            let m = RatMatrix::from_fn(3, 4, |_, _| Rat::from_integer(next().into()));
            let pre = u.preimage(&m);
            for j in 0..pre.dim() {
                let x = pre.basis().col(j);
                prop_assert!(u.contains_vec(&m.apply(&x)));
            }
            // Maximality: the preimage of the kernel's complement... cheaper
            // check: kernel of m is always inside the preimage.
            prop_assert!(pre.contains(&Subspace::from_cols(&m.kernel())));
        }

        #[test]
        fn canonicalization_is_stable_under_column_shuffle(u in arb_subspace(4, 4)) {
            if u.dim() >= 2 {
                let perm: Vec<usize> = (0..u.dim()).rev().collect();
                let shuffled = u.basis().select_cols(&perm);
                prop_assert_eq!(Subspace::from_cols(&shuffled), u);
            }
        }
    }
}
