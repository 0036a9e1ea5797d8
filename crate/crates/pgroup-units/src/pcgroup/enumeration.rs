//! Exhaustive enumeration of a presented group: element indexing, subgroup
//! machinery, conjugacy classes, and abelian invariants.
//!
//! Elements are indexed in mixed radix with generator 0 varying fastest, so
//! index `t` decodes to exponents `(t mod p^{e_1}, (t / p^{e_1}) mod p^{e_2},
//! ...)`. The identity has index 0.

use std::collections::BTreeMap;

use thiserror::Error;

use super::presentation::{ConsistencyViolation, GroupElement, PcPresentation};

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("group order {order} exceeds the enumeration budget {budget}")]
    Budget { order: u128, budget: u64 },
    #[error("presentation is inconsistent: {0}")]
    Inconsistent(#[from] ConsistencyViolation),
}

/// Converts the sizes of the filtration layers (elements of order dividing
/// p^l, for l = 0, 1, ...) of an abelian p-group into its invariant exponent
/// partition, sorted nonincreasing: the number of cyclic factors of exponent
/// at least l is log_p of the ratio of consecutive layer sizes.
pub(crate) fn invariants_from_layer_sizes(layer_sizes: &[u64], p: u64) -> Vec<u32> {
    let mut parts_per_level = Vec::new();
    for w in layer_sizes.windows(2) {
        let ratio = w[1] / w[0];
        let mut count = 0u32;
        let mut r = ratio;
        while r > 1 {
            r /= p;
            count += 1;
        }
        parts_per_level.push(count);
    }
    let total = parts_per_level.first().copied().unwrap_or(0);
    let mut invariants = Vec::new();
    for i in 0..total {
        let e = parts_per_level.iter().take_while(|&&c| c > i).count() as u32;
        invariants.push(e);
    }
    invariants
}

/// A subgroup given by the sorted list of its element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    indices: Vec<u64>,
}

impl Subgroup {
    pub fn from_sorted(indices: Vec<u64>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Subgroup { indices }
    }

    pub fn order(&self) -> u64 {
        self.indices.len() as u64
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn contains(&self, idx: u64) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }
}

/// A fully enumerated group. Construction verifies presentation consistency
/// and refuses groups larger than the given budget.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pres: PcPresentation,
    strides: Vec<u64>,
    order: u64,
    elems: Vec<GroupElement>,
    center: Vec<u64>,
    classes: Vec<Vec<u64>>,
    class_of: Vec<u32>,
}

impl Enumeration {
    pub fn new(pres: &PcPresentation, budget: u64) -> Result<Self, EnumerationError> {
        let order_wide = pres.order();
        if order_wide > budget as u128 {
            return Err(EnumerationError::Budget { order: order_wide, budget });
        }
        pres.consistency_check()?;
        let order = order_wide as u64;
        let s = pres.num_gens();
        let mut strides = vec![1u64; s];
        for i in 1..s {
            strides[i] = strides[i - 1] * pres.modulus(i - 1);
        }
        let mut elems = Vec::with_capacity(order as usize);
        for t in 0..order {
            let mut v = Vec::with_capacity(s);
            let mut r = t;
            for i in 0..s {
                let m = pres.modulus(i);
                v.push(r % m);
                r /= m;
            }
            elems.push(GroupElement(v));
        }
        let mut e = Enumeration {
            pres: pres.clone(),
            strides,
            order,
            elems,
            center: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        e.center = (0..order).filter(|&i| e.commutes_with_all(i)).collect();
        e.build_classes();
        Ok(e)
    }

    fn commutes_with_all(&self, idx: u64) -> bool {
        let x = &self.elems[idx as usize];
        (0..self.pres.num_gens()).all(|j| {
            let g = self.pres.generator(j);
            self.pres.is_identity(&self.pres.commutator(x, &g))
        })
    }

    /// Conjugacy classes as orbits under conjugation by the generators,
    /// ordered by their smallest element index.
    fn build_classes(&mut self) {
        let order = self.order as usize;
        let mut class_of = vec![u32::MAX; order];
        let mut classes: Vec<Vec<u64>> = Vec::new();
        let gens: Vec<GroupElement> =
            (0..self.pres.num_gens()).map(|j| self.pres.generator(j)).collect();
        let gen_invs: Vec<GroupElement> = gens.iter().map(|g| self.pres.inverse(g)).collect();
        for start in 0..order as u64 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut orbit = vec![start];
            class_of[start as usize] = id;
            let mut queue = vec![start];
            while let Some(x) = queue.pop() {
                let xe = self.elems[x as usize].clone();
                for (g, gi) in gens.iter().zip(&gen_invs) {
                    let y = self.pres.mul(&self.pres.mul(gi, &xe), g);
                    let yi = self.index_of(&y);
                    if class_of[yi as usize] == u32::MAX {
                        class_of[yi as usize] = id;
                        orbit.push(yi);
                        queue.push(yi);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn prime(&self) -> u64 {
        self.pres.prime()
    }

    pub fn index_of(&self, g: &GroupElement) -> u64 {
        g.0.iter().zip(&self.strides).map(|(&a, &s)| a * s).sum()
    }

    pub fn element(&self, idx: u64) -> &GroupElement {
        &self.elems[idx as usize]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elems
    }

    pub fn mul_idx(&self, i: u64, j: u64) -> u64 {
        self.index_of(&self.pres.mul(&self.elems[i as usize], &self.elems[j as usize]))
    }

    pub fn inv_idx(&self, i: u64) -> u64 {
        self.index_of(&self.pres.inverse(&self.elems[i as usize]))
    }

    pub fn order_of_idx(&self, i: u64) -> u64 {
        self.pres.element_order(&self.elems[i as usize])
    }

    /// Sorted indices of the center.
    pub fn center(&self) -> &[u64] {
        &self.center
    }

    pub fn center_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.center.clone())
    }

    pub fn conjugacy_classes(&self) -> &[Vec<u64>] {
        &self.classes
    }

    pub fn class_of(&self) -> &[u32] {
        &self.class_of
    }

    /// Subgroup generated by the given elements (breadth-first closure).
    pub fn closure(&self, gens: &[GroupElement]) -> Subgroup {
        let mut seen = vec![false; self.order as usize];
        seen[0] = true;
        let mut queue = vec![0u64];
        let mut members = vec![0u64];
        while let Some(x) = queue.pop() {
            let xe = &self.elems[x as usize];
            for g in gens {
                let y = self.index_of(&self.pres.mul(xe, g));
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                    queue.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup::from_sorted(members)
    }

    pub fn closure_of_indices(&self, gens: &[u64]) -> Subgroup {
        let gens: Vec<GroupElement> =
            gens.iter().map(|&i| self.elems[i as usize].clone()).collect();
        self.closure(&gens)
    }

    /// The sorted set of p^l-th powers of all elements.
    pub fn power_image(&self, l: u32) -> Vec<u64> {
        let e = self.prime().pow(l) as i64;
        let mut out: Vec<u64> = self
            .elems
            .iter()
            .map(|x| self.index_of(&self.pres.pow(x, e)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The subgroup generated by all p^l-th powers. For the groups in this
    /// class the generating set is already closed, which the tests assert
    /// separately; the closure here keeps the result a subgroup regardless.
    pub fn power_subgroup(&self, l: u32) -> Subgroup {
        self.closure_of_indices(&self.power_image(l))
    }

    /// The sorted set of elements of order dividing p^l.
    pub fn omega_set(&self, l: u32) -> Vec<u64> {
        let e = self.prime().pow(l) as i64;
        (0..self.order)
            .filter(|&i| self.pres.is_identity(&self.pres.pow(&self.elems[i as usize], e)))
            .collect()
    }

    /// The subgroup generated by all elements of order dividing p^l.
    pub fn omega(&self, l: u32) -> Subgroup {
        self.closure_of_indices(&self.omega_set(l))
    }

    pub fn exponent(&self) -> u64 {
        self.elems
            .iter()
            .map(|x| self.pres.element_order(x))
            .max()
            .unwrap_or(1)
    }

    /// Element order -> number of elements of that order.
    pub fn order_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for x in &self.elems {
            *hist.entry(self.pres.element_order(x)).or_insert(0) += 1;
        }
        hist
    }

    /// Derived subgroup, generated by all commutators of generators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let mut gens = Vec::new();
        for i in 0..self.pres.num_gens() {
            for j in 0..self.pres.num_gens() {
                let c = self
                    .pres
                    .commutator(&self.pres.generator(i), &self.pres.generator(j));
                if !self.pres.is_identity(&c) {
                    gens.push(c);
                }
            }
        }
        self.closure(&gens)
    }

    pub fn is_abelian_subgroup(&self, sub: &Subgroup) -> bool {
        let xs = sub.indices();
        xs.iter().all(|&i| {
            let a = &self.elems[i as usize];
            xs.iter().all(|&j| {
                let b = &self.elems[j as usize];
                self.pres.is_identity(&self.pres.commutator(a, b))
            })
        })
    }

    /// Order of the coset of `g` in `sub` (the least p^t with g^{p^t} in sub).
    /// Meaningful when `sub` is normalized by `g`; all uses here are inside
    /// abelian subgroups or modulo the center.
    pub fn coset_order(&self, g: &GroupElement, sub: &Subgroup) -> u64 {
        let p = self.prime() as i64;
        let mut y = g.clone();
        let mut ord = 1u64;
        while !sub.contains(self.index_of(&y)) {
            y = self.pres.pow(&y, p);
            ord *= self.prime();
        }
        ord
    }

    /// Abelian invariants of an abelian subgroup, as the sorted (descending)
    /// list of exponents e with one cyclic factor of order p^e per entry.
    /// Computed from the filtration by the subgroups of elements of order
    /// dividing p^l: the number of factors of exponent at least l is
    /// log_p of the index of one filtration layer in the next.
    pub fn abelian_invariants(&self, sub: &Subgroup) -> Vec<u32> {
        assert!(self.is_abelian_subgroup(sub), "abelian invariants of a nonabelian subgroup");
        let p = self.prime();
        let mut layer_sizes = vec![1u64];
        loop {
            let l = layer_sizes.len() as u32;
            let e = p.pow(l) as i64;
            let size = sub
                .indices()
                .iter()
                .filter(|&&i| self.pres.is_identity(&self.pres.pow(&self.elems[i as usize], e)))
                .count() as u64;
            layer_sizes.push(size);
            if size == sub.order() {
                break;
            }
        }
        invariants_from_layer_sizes(&layer_sizes, p)
    }

    /// A basis of an abelian subgroup: elements whose cyclic spans intersect
    /// trivially and together generate, sorted by decreasing order. Greedy on
    /// maximal coset order with a purity adjustment at each step.
    pub fn find_basis(&self, sub: &Subgroup) -> Vec<GroupElement> {
        let basis = self
            .extend_basis(sub, Vec::new())
            .expect("greedy basis extension succeeds from an empty seed");
        let orders: u64 = basis.iter().map(|z| self.pres.element_order(z)).product();
        assert_eq!(orders, sub.order(), "basis must decompose the subgroup directly");
        basis
    }

    /// Extends `seed` to a full basis of the abelian subgroup `sub`, greedy
    /// on maximal coset order with a purity adjustment at each step. Returns
    /// None when the seed does not embed in any basis (its span is not pure,
    /// or the seed elements are not independent). The result is sorted by
    /// decreasing element order.
    pub fn extend_basis(
        &self,
        sub: &Subgroup,
        seed: Vec<GroupElement>,
    ) -> Option<Vec<GroupElement>> {
        assert!(self.is_abelian_subgroup(sub), "basis of a nonabelian subgroup");
        let mut basis = seed;
        let mut span = self.closure(&basis);
        let seed_orders: u64 = basis.iter().map(|z| self.pres.element_order(z)).product();
        if span.order() != seed_orders {
            return None;
        }
        while span.order() < sub.order() {
            let (&best, t) = sub
                .indices()
                .iter()
                .map(|i| (i, self.coset_order(&self.elems[*i as usize], &span)))
                .max_by_key(|&(i, t)| (t, std::cmp::Reverse(*i)))
                .expect("nonempty subgroup");
            let g = self.elems[best as usize].clone();
            let gt = self.pres.pow(&g, t as i64);
            // Purity: find s in the current span with s^t = g^t, so that
            // g*s^-1 has order exactly t and still extends the span.
            let s = span
                .indices()
                .iter()
                .map(|&i| &self.elems[i as usize])
                .find(|&s| self.pres.pow(s, t as i64) == gt)?;
            let z = self.pres.mul(&g, &self.pres.inverse(s));
            debug_assert_eq!(self.pres.element_order(&z), t);
            basis.push(z);
            let prev = span.order();
            span = self.closure(&basis);
            if span.order() != prev * t {
                return None;
            }
        }
        basis.sort_by_key(|z| std::cmp::Reverse(self.pres.element_order(z)));
        Some(basis)
    }

    /// Minimal-index representatives q of the cosets qH, in index order.
    pub fn left_coset_reps(&self, sub: &Subgroup) -> Vec<u64> {
        let mut covered = vec![false; self.order as usize];
        let mut reps = Vec::new();
        for q in 0..self.order {
            if covered[q as usize] {
                continue;
            }
            reps.push(q);
            let qe = &self.elems[q as usize];
            for &h in sub.indices() {
                let x = self.index_of(&self.pres.mul(qe, &self.elems[h as usize]));
                covered[x as usize] = true;
            }
        }
        reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::inner_abelian::{abelian, mp, mp1};

    fn enumerate(p: &PcPresentation) -> Enumeration {
        Enumeration::new(p, 1 << 20).unwrap()
    }

    #[test]
    fn heisenberg_class_equation() {
        let g = enumerate(&mp1(3, 1, 1).unwrap());
        assert_eq!(g.order(), 27);
        assert_eq!(g.center().len(), 3);
        // 3 central singletons and 8 classes of size 3.
        assert_eq!(g.conjugacy_classes().len(), 11);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn power_and_omega_structure_of_mp21() {
        let g = enumerate(&mp(3, 2, 1).unwrap());
        let powers = g.power_image(1);
        let psub = g.power_subgroup(1);
        assert_eq!(powers, psub.indices());
        assert_eq!(psub.order(), 3);
        let omega = g.omega(1);
        assert_eq!(omega.order(), 9);
        assert_eq!(omega.indices(), g.omega_set(1));
        assert_eq!(g.exponent(), 9);
        let derived = g.derived_subgroup();
        assert_eq!(derived.order(), 3);
        assert_eq!(derived.indices(), psub.indices());
    }

    #[test]
    fn center_and_invariants() {
        let g = enumerate(&mp(3, 3, 2).unwrap());
        let z = g.center_subgroup();
        assert_eq!(z.order(), 27);
        assert_eq!(g.abelian_invariants(&z), vec![2, 1]);
        let basis = g.find_basis(&z);
        let orders: Vec<u64> = basis.iter().map(|b| g.presentation().element_order(b)).collect();
        assert_eq!(orders, vec![9, 3]);

        let a = enumerate(&abelian(3, &[2, 1, 1]).unwrap());
        let all = a.closure(&[a.presentation().generator(0), a.presentation().generator(1), a.presentation().generator(2)]);
        assert_eq!(a.abelian_invariants(&all), vec![2, 1, 1]);
    }

    #[test]
    fn basis_of_skew_subgroup_of_z9_squared() {
        let a = enumerate(&abelian(3, &[2, 2]).unwrap());
        let p = a.presentation();
        let g1 = p.normalize(&[(0, 1), (1, 6)]);
        let g2 = p.normalize(&[(1, 3)]);
        let sub = a.closure(&[g1, g2]);
        assert_eq!(sub.order(), 27);
        assert_eq!(a.abelian_invariants(&sub), vec![2, 1]);
        let basis = a.find_basis(&sub);
        let orders: Vec<u64> = basis.iter().map(|b| p.element_order(b)).collect();
        assert_eq!(orders, vec![9, 3]);
        let regenerated = a.closure(&basis);
        assert_eq!(regenerated, sub);
    }

    #[test]
    fn coset_reps_partition_the_group() {
        let g = enumerate(&mp(3, 2, 2).unwrap());
        let z = g.center_subgroup();
        let reps = g.left_coset_reps(&z);
        assert_eq!(reps.len() as u64 * z.order(), g.order());
        assert_eq!(reps[0], 0);
        // Elementwise: every element is q*h for exactly one rep q.
        let mut seen = vec![false; g.order() as usize];
        for &q in &reps {
            for &h in z.indices() {
                let x = g.mul_idx(q, h);
                assert!(!seen[x as usize]);
                seen[x as usize] = true;
            }
        }
        assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn order_histogram_of_heisenberg() {
        let g = enumerate(&mp1(3, 1, 1).unwrap());
        let h = g.order_histogram();
        assert_eq!(h.get(&1), Some(&1));
        assert_eq!(h.get(&3), Some(&26));
        assert_eq!(h.get(&9), None);
    }

    #[test]
    fn budget_is_enforced() {
        let err = Enumeration::new(&mp(3, 5, 5).unwrap(), 100).unwrap_err();
        assert!(matches!(err, EnumerationError::Budget { .. }));
    }
}
