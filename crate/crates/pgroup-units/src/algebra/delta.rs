//! Relative augmentation ideals: for a subgroup H of G, the span of
//! {q(h - 1) : q a left coset representative, h in H minus the identity}.
//! For H = G this is the augmentation ideal itself.

use rand::Rng;

use super::{AlgebraElement, AlgebraError, GroupAlgebra};
use crate::fp::RowSpace;
use crate::pcgroup::enumeration::Subgroup;

/// An echelonized basis of the ideal spanned by q(h - 1) over a fixed
/// transversal (identity first) of the subgroup.
#[derive(Debug, Clone)]
pub struct DeltaBasis {
    parent: u64,
    subgroup: Subgroup,
    transversal: Vec<u64>,
    /// Each basis vector is e[qh] - e[q], stored as the index pair (qh, q).
    pairs: Vec<(u64, u64)>,
    space: RowSpace,
}

impl GroupAlgebra {
    /// Builds the basis of the span of q(h-1). Fails if the index set is not
    /// closed under multiplication or misses the identity.
    pub fn delta_basis(&self, sub: &Subgroup) -> Result<DeltaBasis, AlgebraError> {
        let n = self.dimension() as u64;
        if !sub.contains(0) || sub.indices().iter().any(|&h| h >= n) {
            return Err(AlgebraError::NotASubgroup);
        }
        for &h1 in sub.indices() {
            for &h2 in sub.indices() {
                if !sub.contains(self.product_index(h1, h2)) {
                    return Err(AlgebraError::NotASubgroup);
                }
            }
        }
        let transversal = self.enumeration().left_coset_reps(sub);
        debug_assert_eq!(transversal[0], 0, "transversal starts at the identity");
        let mut pairs = Vec::with_capacity(transversal.len() * (sub.order() as usize - 1));
        for &q in &transversal {
            for &h in sub.indices() {
                if h == 0 {
                    continue;
                }
                pairs.push((self.product_index(q, h), q));
            }
        }
        let mut space = RowSpace::with_coordinates(self.prime(), n as usize, pairs.len());
        for &(qh, q) in &pairs {
            let mut v = vec![0u64; n as usize];
            v[qh as usize] = 1;
            v[q as usize] = self.prime() - 1;
            let enlarged = space.insert(&v);
            assert!(enlarged, "basis vectors of the relative ideal are independent");
        }
        debug_assert_eq!(pairs.len() as u64, n - transversal.len() as u64);
        Ok(DeltaBasis {
            parent: self.id(),
            subgroup: sub.clone(),
            transversal,
            pairs,
            space,
        })
    }
}

impl DeltaBasis {
    pub fn dimension(&self) -> usize {
        self.pairs.len()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn transversal(&self) -> &[u64] {
        &self.transversal
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    /// The i-th basis vector q(h-1) as an algebra element.
    pub fn basis_element(&self, alg: &GroupAlgebra, i: usize) -> AlgebraElement {
        assert_eq!(self.parent, alg.id(), "basis belongs to a different algebra");
        let (qh, q) = self.pairs[i];
        let mut coeffs = vec![0u64; alg.dimension()];
        coeffs[qh as usize] = 1;
        coeffs[q as usize] = alg.prime() - 1;
        alg.from_coeffs(&coeffs)
    }

    /// Membership test; on success returns the coordinates of x over the
    /// pair basis, in pair order.
    pub fn in_span(&self, x: &AlgebraElement) -> Option<Vec<u64>> {
        if x.parent_id() != self.parent {
            return None;
        }
        self.space.coordinates(x.coeffs())
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        self.in_span(x).is_some()
    }

    /// Residual of x against the span, for building intersections.
    pub fn residual(&self, x: &[u64]) -> Vec<u64> {
        self.space.residual(x)
    }

    /// A random combination of the basis vectors.
    pub fn random_element<R: Rng>(&self, alg: &GroupAlgebra, rng: &mut R) -> AlgebraElement {
        assert_eq!(self.parent, alg.id(), "basis belongs to a different algebra");
        let p = alg.prime();
        let mut coeffs = vec![0u64; alg.dimension()];
        for &(qh, q) in &self.pairs {
            let lam = rng.random_range(0..p);
            if lam != 0 {
                coeffs[qh as usize] = (coeffs[qh as usize] + lam) % p;
                coeffs[q as usize] = (coeffs[q as usize] + p - lam) % p;
            }
        }
        alg.from_coeffs(&coeffs)
    }
}
