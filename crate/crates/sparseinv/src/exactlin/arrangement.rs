//! Finite unions of subspaces ("arrangements") and their calculus.
//!
//! An arrangement is kept in a minimal canonical form: no member contains
//! another, members are sorted by dimension and then by basis entries, and
//! the union of nothing is represented by the single zero subspace. Over an
//! infinite field a subspace inside a finite union of subspaces must lie
//! inside one member, so the pruned member set is unique and structural
//! equality coincides with set equality — `equal` double-checks the
//! mutual-containment definition anyway.

use std::cmp::Ordering;
use std::fmt;

use crate::exactlin::{RatMatrix, Subspace};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrangement {
    ambient: usize,
    members: Vec<Subspace>,
}

impl Arrangement {
    /// Canonicalizes an arbitrary list of members: drops members contained
    /// in another, deduplicates, sorts. An empty list collapses to the zero
    /// arrangement.
    pub fn new(ambient: usize, members: Vec<Subspace>) -> Self {
        for m in &members {
            assert_eq!(m.ambient(), ambient, "member ambient mismatch");
        }
        let mut kept: Vec<Subspace> = Vec::new();
        for cand in members {
            if kept.iter().any(|k| k.contains(&cand)) {
                continue;
            }
            kept.retain(|k| !cand.contains(k));
            kept.push(cand);
        }
        if kept.is_empty() {
            kept.push(Subspace::zero(ambient));
        }
        kept.sort_by(Subspace::canonical_cmp);
        Arrangement {
            ambient,
            members: kept,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Arrangement::new(ambient, vec![])
    }

    pub fn full(ambient: usize) -> Self {
        Arrangement::new(ambient, vec![Subspace::full(ambient)])
    }

    pub fn from_subspace(s: Subspace) -> Self {
        let ambient = s.ambient();
        Arrangement::new(ambient, vec![s])
    }

    /// The s-sparse input set: the union of all coordinate subspaces with
    /// support size `min(s, m)` in `Q^m`. Only maximal supports are stored;
    /// smaller supports are subsets of them and would be pruned anyway.
    pub fn sparse(m: usize, s: usize) -> Self {
        let k = s.min(m);
        let supports = combinations(m, k);
        Arrangement::new(
            m,
            supports
                .into_iter()
                .map(|idx| Subspace::coordinate(m, &idx))
                .collect(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    /// Number of members of the minimal representation (written `c(·)`).
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// True when the arrangement is exactly the origin.
    pub fn is_zero(&self) -> bool {
        self.members.len() == 1 && self.members[0].is_zero()
    }

    pub fn contains_vec(&self, v: &[num_rational::BigRational]) -> bool {
        self.members.iter().any(|m| m.contains_vec(v))
    }

    /// A subspace lies in the union iff it lies in a single member.
    pub fn contains_subspace(&self, s: &Subspace) -> bool {
        self.members.iter().any(|m| m.contains(s))
    }

    /// Set equality via mutual member-wise containment. With both sides in
    /// canonical form this coincides with `==`; see the property tests.
    pub fn equal(&self, other: &Arrangement) -> bool {
        self.ambient == other.ambient
            && self.members.iter().all(|m| other.contains_subspace(m))
            && other.members.iter().all(|m| self.contains_subspace(m))
    }

    /// Pairwise sums of members: `(∪ U_i) + (∪ V_j) = ∪_{i,j} (U_i + V_j)`.
    pub fn sum(&self, other: &Arrangement) -> Arrangement {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut out = Vec::with_capacity(self.size() * other.size());
        for u in &self.members {
            for v in &other.members {
                out.push(u.sum(v));
            }
        }
        Arrangement::new(self.ambient, out)
    }

    /// Pairwise intersections of members.
    pub fn intersect(&self, other: &Arrangement) -> Arrangement {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut out = Vec::with_capacity(self.size() * other.size());
        for u in &self.members {
            for v in &other.members {
                out.push(u.intersect(v));
            }
        }
        Arrangement::new(self.ambient, out)
    }

    pub fn intersect_subspace(&self, s: &Subspace) -> Arrangement {
        assert_eq!(self.ambient, s.ambient(), "ambient mismatch");
        Arrangement::new(
            self.ambient,
            self.members.iter().map(|m| m.intersect(s)).collect(),
        )
    }

    /// Member-wise image under a linear map with `ambient` columns.
    pub fn image(&self, map: &RatMatrix) -> Arrangement {
        Arrangement::new(
            map.rows(),
            self.members.iter().map(|m| m.image(map)).collect(),
        )
    }

    /// Member-wise preimage under a linear map with `ambient` rows.
    pub fn preimage(&self, map: &RatMatrix) -> Arrangement {
        Arrangement::new(
            map.cols(),
            self.members.iter().map(|m| m.preimage(map)).collect(),
        )
    }

    /// Embeds into a larger space with `prefix` fresh zero coordinates in
    /// front: each member `U` becomes `{0} x U`.
    pub fn prepend_zeros(&self, prefix: usize) -> Arrangement {
        let ambient = prefix + self.ambient;
        let members = self
            .members
            .iter()
            .map(|m| {
                let b = RatMatrix::zeros(prefix, m.dim()).vstack(m.basis());
                Subspace::from_cols(&b)
            })
            .collect();
        Arrangement::new(ambient, members)
    }

    /// Cartesian product arrangement in `Q^{self.ambient + other.ambient}`:
    /// members are all `U_i x V_j` with block-diagonal bases.
    pub fn product(&self, other: &Arrangement) -> Arrangement {
        let ambient = self.ambient + other.ambient;
        let mut out = Vec::with_capacity(self.size() * other.size());
        for u in &self.members {
            for v in &other.members {
                let top = u.basis().hstack(&RatMatrix::zeros(self.ambient, v.dim()));
                let bot = RatMatrix::zeros(other.ambient, u.dim()).hstack(v.basis());
                out.push(Subspace::from_cols(&top.vstack(&bot)));
            }
        }
        Arrangement::new(ambient, out)
    }

    /// First nonzero member of the pairwise intersection with `other`, if
    /// any — the deterministic witness for a non-trivial intersection.
    pub fn intersection_witness(&self, other: &Arrangement) -> Option<Vec<num_rational::BigRational>> {
        let inter = self.intersect(other);
        inter
            .members
            .iter()
            .find(|m| !m.is_zero())
            .and_then(Subspace::first_vector)
    }

    pub fn dim_vector(&self) -> DimVector {
        let mut counts = vec![0usize; self.ambient];
        for m in &self.members {
            if m.dim() > 0 {
                counts[m.dim() - 1] += 1;
            }
        }
        DimVector { counts }
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "{{0}}");
        }
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            let vecs: Vec<String> = (0..m.dim())
                .map(|j| {
                    let col: Vec<String> =
                        m.basis().col(j).iter().map(|v| v.to_string()).collect();
                    format!("({})", col.join(", "))
                })
                .collect();
            write!(f, "span{{{}}}", vecs.join(", "))?;
        }
        Ok(())
    }
}

/// `counts[k-1]` is the number of k-dimensional members; the zero member is
/// not counted. Ordered by the highest dimension at which two vectors
/// disagree, which totally orders dimension profiles and strictly decreases
/// along refinement chains of arrangements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimVector {
    counts: Vec<usize>,
}

impl DimVector {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn cmp_dimensional(&self, other: &DimVector) -> Ordering {
        assert_eq!(self.counts.len(), other.counts.len(), "length mismatch");
        for i in (0..self.counts.len()).rev() {
            match self.counts[i].cmp(&other.counts[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    pub fn leq(&self, other: &DimVector) -> bool {
        self.cmp_dimensional(other) != Ordering::Greater
    }

    pub fn lt(&self, other: &DimVector) -> bool {
        self.cmp_dimensional(other) == Ordering::Less
    }
}

/// All k-subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = k - cur.len();
        for i in start..=m.saturating_sub(remaining) {
            cur.push(i);
            rec(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    if k <= m {
        rec(m, k, 0, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rat;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn line(ambient: usize, v: &[i64]) -> Subspace {
        Subspace::from_vecs(
            ambient,
            &[v.iter().map(|&x| Rat::from_integer(x.into())).collect()],
        )
    }

    #[test]
    fn pruning_drops_contained_members() {
        let arr = Arrangement::new(
            3,
            vec![
                Subspace::coordinate(3, &[0]),
                Subspace::coordinate(3, &[0, 1]),
                Subspace::zero(3),
            ],
        );
        assert_eq!(arr.size(), 1);
        assert_eq!(arr.members()[0], Subspace::coordinate(3, &[0, 1]));
    }

    #[test]
    fn empty_union_is_the_origin() {
        let arr = Arrangement::zero(4);
        assert!(arr.is_zero());
        assert_eq!(arr.size(), 1);
        assert_eq!(arr.dim_vector().counts(), &[0, 0, 0, 0]);
    }

    #[test]
    fn sparse_arrangement_counts() {
        assert_eq!(Arrangement::sparse(4, 1).size(), 4);
        assert_eq!(Arrangement::sparse(4, 2).size(), 6);
        // Sparsity past the input dimension clips to the whole space.
        assert_eq!(Arrangement::sparse(2, 5).size(), 1);
        assert!(Arrangement::sparse(2, 5).members()[0].dim() == 2);
        assert!(Arrangement::sparse(3, 0).is_zero());
    }

    #[test]
    fn axes_meet_the_diagonal_only_at_zero() {
        let axes = Arrangement::sparse(2, 1);
        let diag = Arrangement::from_subspace(line(2, &[1, 1]));
        assert!(axes.intersect(&diag).is_zero());
    }

    #[test]
    fn dimensional_order_compares_highest_disagreement() {
        // Three lines vs. one plane: the plane dominates.
        let a = DimVector {
            counts: vec![3, 0, 0],
        };
        let b = DimVector {
            counts: vec![0, 1, 0],
        };
        assert!(a.lt(&b));
        assert!(!b.leq(&a));
        assert!(a.leq(&a));
    }

    #[test]
    fn equality_is_structural_and_setwise() {
        let a = Arrangement::new(
            2,
            vec![Subspace::coordinate(2, &[0]), Subspace::coordinate(2, &[1])],
        );
        let b = Arrangement::new(
            2,
            vec![
                Subspace::coordinate(2, &[1]),
                Subspace::coordinate(2, &[0]),
                Subspace::zero(2),
            ],
        );
        assert_eq!(a, b);
        assert!(a.equal(&b));
    }

    #[test]
    fn product_and_prepend_shapes() {
        let axes = Arrangement::sparse(2, 1);
        let prod = axes.product(&axes);
        assert_eq!(prod.ambient(), 4);
        assert_eq!(prod.size(), 4);
        let lifted = axes.prepend_zeros(3);
        assert_eq!(lifted.ambient(), 5);
        for m in lifted.members() {
            for j in 0..m.dim() {
                let col = m.basis().col(j);
                assert!(col[..3].iter().all(|v| v.is_zero()));
            }
        }
    }

    fn arb_arrangement(ambient: usize) -> impl Strategy<Value = Arrangement> {
        prop::collection::vec(
            prop::collection::vec(prop::collection::vec(-2i64..3, ambient), 1..=2),
            0..4,
        )
        .prop_map(move |member_gens| {
            let members: Vec<Subspace> = member_gens
                .into_iter()
                .map(|gens| {
                    let vecs: Vec<Vec<Rat>> = gens
                        .into_iter()
                        .map(|g| g.into_iter().map(|v| Rat::from_integer(v.into())).collect())
                        .collect();
                    Subspace::from_vecs(ambient, &vecs)
                })
                .collect();
            Arrangement::new(ambient, members)
        })
    }

    proptest! {
        #[test]
        fn canonical_equality_matches_mutual_containment(
            a in arb_arrangement(3),
            b in arb_arrangement(3),
        ) {
            prop_assert_eq!(a.equal(&b), a == b);
        }

        #[test]
        fn strict_refinement_strictly_drops_dim_vector(a in arb_arrangement(3)) {
            // Intersecting with a fixed plane can only shrink; if the point
            // set strictly shrinks the dimension profile must strictly drop.
            let plane = Subspace::from_vecs(
                3,
                &[
                    vec![Rat::from_integer(1.into()), Rat::from_integer(1.into()), Rat::from_integer(0.into())],
                    vec![Rat::from_integer(0.into()), Rat::from_integer(1.into()), Rat::from_integer(1.into())],
                ],
            );
            let cut = a.intersect_subspace(&plane);
            prop_assert!(cut.dim_vector().leq(&a.dim_vector()));
            if !cut.equal(&a) {
                prop_assert!(cut.dim_vector().lt(&a.dim_vector()));
            }
        }

        #[test]
        fn pruned_members_are_incomparable(a in arb_arrangement(4)) {
            let ms = a.members();
            for i in 0..ms.len() {
                for j in 0..ms.len() {
                    if i != j {
                        prop_assert!(!ms[i].contains(&ms[j]));
                    }
                }
            }
        }

        #[test]
        fn union_points_survive_canonicalization(a in arb_arrangement(3), b in arb_arrangement(3)) {
            // Sampled membership: every member basis vector of the inputs
            // stays inside the sum arrangement.
            let s = a.sum(&b);
            for m in a.members().iter().chain(b.members()) {
                for j in 0..m.dim() {
                    prop_assert!(s.contains_vec(&m.basis().col(j)));
                }
            }
        }
    }
}
