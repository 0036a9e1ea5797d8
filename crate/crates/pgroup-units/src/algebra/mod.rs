//! The modular group algebra F_p[G] over a fully enumerated group, with
//! dense coefficient vectors indexed by the group enumeration and a
//! precomputed product-index table. All coefficients are canonical residues
//! in [0, p), reduced eagerly, so equal elements are equal as vectors.

pub mod class_sums;
pub mod delta;

use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use thiserror::Error;

use crate::pcgroup::enumeration::Enumeration;
use crate::pcgroup::presentation::GroupElement;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

/// Default cap on group orders accepted for algebra work.
pub const DEFAULT_ALGEBRA_BUDGET: u64 = 729;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("group of order {order} exceeds the algebra budget {budget}")]
    Budget { order: u64, budget: u64 },
    #[error("elements belong to different algebras")]
    ParentMismatch,
    #[error("augmentation is {found}, expected 1")]
    NotNormalized { found: u64 },
    #[error("the given index set is not a subgroup")]
    NotASubgroup,
    #[error("element is not central in the algebra")]
    NotCentral,
    #[error("unit order exceeds the cap p^{cap_exp}")]
    UnitOrderCap { cap_exp: u32 },
    #[error("power-splitting invariant failed: {0}")]
    SplitInvariant(String),
    #[error("{0}")]
    Precondition(String),
}

/// A dense algebra element. The coefficient at position i belongs to the
/// group element with enumeration index i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    parent: u64,
    coeffs: Vec<u64>,
}

impl AlgebraElement {
    pub(crate) fn parent_id(&self) -> u64 {
        self.parent
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: u64) -> u64 {
        self.coeffs[idx as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Indices of group elements with nonzero coefficient.
    pub fn support(&self) -> Vec<u64> {
        (0..self.coeffs.len() as u64).filter(|&i| self.coeffs[i as usize] != 0).collect()
    }
}

#[derive(Debug, Clone)]
pub struct GroupAlgebra {
    id: u64,
    en: Enumeration,
    n: usize,
    p: u64,
    /// Row-major `n * n` table of product indices.
    table: Vec<u32>,
    /// Index of g^p for each g.
    pow_p: Vec<u32>,
    central: Vec<bool>,
    /// log_p cap for unit orders.
    cap_exp: u32,
}

impl GroupAlgebra {
    pub fn new(en: &Enumeration, budget: u64) -> Result<Self, AlgebraError> {
        let order = en.order();
        if order > budget {
            return Err(AlgebraError::Budget { order, budget });
        }
        let n = order as usize;
        let p = en.prime();
        let mut table = vec![0u32; n * n];
        for i in 0..n as u64 {
            for j in 0..n as u64 {
                table[(i as usize) * n + j as usize] = en.mul_idx(i, j) as u32;
            }
        }
        let mut pow_p = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = 0usize;
            for _ in 0..p {
                acc = table[acc * n + i] as usize;
            }
            pow_p.push(acc as u32);
        }
        let mut central = vec![false; n];
        for &z in en.center() {
            central[z as usize] = true;
        }
        let mut log_n = 0;
        let mut v = 1u64;
        while v < order {
            v *= p;
            log_n += 1;
        }
        let max_rel = en
            .presentation()
            .gens()
            .iter()
            .map(|g| g.order_exp)
            .max()
            .unwrap_or(1);
        let cap_exp = log_n + max_rel;
        let id = NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed);
        Ok(GroupAlgebra { id, en: en.clone(), n, p, table, pow_p, central, cap_exp })
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }

    pub fn enumeration(&self) -> &Enumeration {
        &self.en
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn product_index(&self, i: u64, j: u64) -> u64 {
        self.table[(i as usize) * self.n + j as usize] as u64
    }

    pub fn is_central_index(&self, i: u64) -> bool {
        self.central[i as usize]
    }

    fn check_parent(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if x.parent != self.id {
            return Err(AlgebraError::ParentMismatch);
        }
        Ok(())
    }

    fn wrap(&self, coeffs: Vec<u64>) -> AlgebraElement {
        AlgebraElement { parent: self.id, coeffs }
    }

    pub fn zero(&self) -> AlgebraElement {
        self.wrap(vec![0; self.n])
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis(0)
    }

    /// The group element with enumeration index `idx`, as an algebra element.
    pub fn basis(&self, idx: u64) -> AlgebraElement {
        let mut coeffs = vec![0; self.n];
        coeffs[idx as usize] = 1;
        self.wrap(coeffs)
    }

    pub fn from_group_element(&self, g: &GroupElement) -> AlgebraElement {
        self.basis(self.en.index_of(g))
    }

    /// Builds an element from raw coefficients, reducing mod p.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> AlgebraElement {
        assert_eq!(coeffs.len(), self.n, "coefficient vector length");
        self.wrap(coeffs.iter().map(|&c| c % self.p).collect())
    }

    /// Sum of the group elements at the given indices; repeated indices add.
    pub fn hat(&self, indices: &[u64]) -> AlgebraElement {
        let mut coeffs = vec![0u64; self.n];
        for &i in indices {
            coeffs[i as usize] = (coeffs[i as usize] + 1) % self.p;
        }
        self.wrap(coeffs)
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(&a, &b)| (a + b) % self.p).collect();
        Ok(self.wrap(coeffs))
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        Ok(self.wrap(coeffs))
    }

    pub fn neg(&self, x: &AlgebraElement) -> AlgebraElement {
        self.wrap(x.coeffs.iter().map(|&a| (self.p - a) % self.p).collect())
    }

    pub fn scalar_mul(&self, c: u64, x: &AlgebraElement) -> AlgebraElement {
        let c = c % self.p;
        self.wrap(x.coeffs.iter().map(|&a| a * c % self.p).collect())
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_parent(x)?;
        self.check_parent(y)?;
        let mut out = vec![0u64; self.n];
        for i in 0..self.n {
            let a = x.coeffs[i];
            if a == 0 {
                continue;
            }
            let row = &self.table[i * self.n..(i + 1) * self.n];
            for j in 0..self.n {
                let b = y.coeffs[j];
                if b == 0 {
                    continue;
                }
                let t = row[j] as usize;
                out[t] = (out[t] + a * b) % self.p;
            }
        }
        Ok(self.wrap(out))
    }

    pub fn pow(&self, x: &AlgebraElement, e: u128) -> Result<AlgebraElement, AlgebraError> {
        self.check_parent(x)?;
        let mut base = x.clone();
        let mut e = e;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// g * x, in O(|G|).
    pub fn left_mul_group(&self, g: u64, x: &AlgebraElement) -> AlgebraElement {
        let mut out = vec![0u64; self.n];
        let row = &self.table[(g as usize) * self.n..(g as usize + 1) * self.n];
        for j in 0..self.n {
            if x.coeffs[j] != 0 {
                out[row[j] as usize] = x.coeffs[j];
            }
        }
        self.wrap(out)
    }

    /// x * g, in O(|G|).
    pub fn right_mul_group(&self, x: &AlgebraElement, g: u64) -> AlgebraElement {
        let mut out = vec![0u64; self.n];
        for i in 0..self.n {
            if x.coeffs[i] != 0 {
                out[self.table[i * self.n + g as usize] as usize] = x.coeffs[i];
            }
        }
        self.wrap(out)
    }

    /// The augmentation: sum of all coefficients.
    pub fn epsilon(&self, x: &AlgebraElement) -> u64 {
        x.coeffs.iter().fold(0, |acc, &c| (acc + c) % self.p)
    }

    /// Whether x commutes with every group element (generators suffice).
    pub fn commutes_with_group(&self, x: &AlgebraElement) -> bool {
        let pres = self.en.presentation();
        (0..pres.num_gens()).all(|i| {
            let g = self.en.index_of(&pres.generator(i));
            self.left_mul_group(g, x) == self.right_mul_group(x, g)
        })
    }

    /// Inverse of a normalized unit, by the geometric series in 1 - x.
    /// Terminates because the augmentation ideal is nilpotent.
    pub fn normalized_inverse(&self, x: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_parent(x)?;
        let eps = self.epsilon(x);
        if eps != 1 {
            return Err(AlgebraError::NotNormalized { found: eps });
        }
        let y = self.sub(&self.one(), x)?;
        let mut acc = self.one();
        let mut term = y.clone();
        let mut steps = 0usize;
        while !term.is_zero() {
            acc = self.add(&acc, &term)?;
            term = self.mul(&term, &y)?;
            steps += 1;
            assert!(steps <= self.n, "augmentation ideal failed to nilpotentize");
        }
        debug_assert_eq!(self.mul(x, &acc).unwrap(), self.one());
        Ok(acc)
    }

    /// Multiplicative order of a normalized unit, always a power of p,
    /// capped to detect nontermination bugs.
    pub fn unit_order(&self, x: &AlgebraElement) -> Result<u64, AlgebraError> {
        self.check_parent(x)?;
        let eps = self.epsilon(x);
        if eps != 1 {
            return Err(AlgebraError::NotNormalized { found: eps });
        }
        let one = self.one();
        let mut cur = x.clone();
        let mut e = 0u32;
        while cur != one {
            if e >= self.cap_exp {
                return Err(AlgebraError::UnitOrderCap { cap_exp: self.cap_exp });
            }
            cur = self.pow(&cur, self.p as u128)?;
            e += 1;
        }
        Ok(self.p.pow(e))
    }

    /// Enumeration index of g^p, from the precomputed table.
    pub fn pth_power_index(&self, i: u64) -> u64 {
        self.pow_p[i as usize] as u64
    }

    /// Uniformly random coefficients.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> AlgebraElement {
        let coeffs = (0..self.n).map(|_| rng.random_range(0..self.p)).collect();
        self.wrap(coeffs)
    }

    /// Uniformly random coefficients, with the identity coefficient adjusted
    /// so the augmentation is 1.
    pub fn random_normalized_unit<R: Rng>(&self, rng: &mut R) -> AlgebraElement {
        let mut x = self.random_element(rng);
        let eps = self.epsilon(&x);
        x.coeffs[0] = (x.coeffs[0] + 1 + self.p - eps) % self.p;
        debug_assert_eq!(self.epsilon(&x), 1);
        x
    }

    /// Per-conjugacy-class coefficient sums, indexed by class id.
    pub fn class_coefficient_sums(&self, x: &AlgebraElement) -> Vec<u64> {
        let class_of = self.en.class_of();
        let mut sums = vec![0u64; self.en.conjugacy_classes().len()];
        for i in 0..self.n {
            if x.coeffs[i] != 0 {
                let c = class_of[i] as usize;
                sums[c] = (sums[c] + x.coeffs[i]) % self.p;
            }
        }
        sums
    }

    /// Whether x lies in the span of all Lie brackets gh - hg, which holds
    /// exactly when every conjugacy-class coefficient sum vanishes.
    pub fn lie_membership(&self, x: &AlgebraElement) -> bool {
        self.class_coefficient_sums(x).iter().all(|&s| s == 0)
    }

    /// The restricted-bracket variant coincides with `lie_membership` over a
    /// prime field, since p annihilates everything.
    pub fn lie_p_membership(&self, x: &AlgebraElement) -> bool {
        self.lie_membership(x)
    }

    /// Whether x is a linear combination of the noncentral class sums:
    /// zero on central elements and constant on each noncentral class.
    pub fn is_class_sum_combination(&self, x: &AlgebraElement) -> bool {
        let class_of = self.en.class_of();
        let classes = self.en.conjugacy_classes();
        for i in 0..self.n {
            if self.central[i] {
                if x.coeffs[i] != 0 {
                    return false;
                }
            } else {
                let rep = classes[class_of[i] as usize][0] as usize;
                if x.coeffs[i] != x.coeffs[rep] {
                    return false;
                }
            }
        }
        true
    }

    /// Splits x^p as s + delta with s the termwise p-th power of x and
    /// delta a Lie element; for normalized x, delta is additionally a
    /// combination of noncentral class sums squaring to zero.
    pub fn frobenius_split(
        &self,
        x: &AlgebraElement,
    ) -> Result<(AlgebraElement, AlgebraElement), AlgebraError> {
        self.check_parent(x)?;
        let mut s = vec![0u64; self.n];
        for i in 0..self.n {
            if x.coeffs[i] != 0 {
                let t = self.pow_p[i] as usize;
                s[t] = (s[t] + x.coeffs[i]) % self.p;
            }
        }
        let s = self.wrap(s);
        let xp = self.pow(x, self.p as u128)?;
        let delta = self.sub(&xp, &s)?;
        if !self.lie_membership(&delta) {
            return Err(AlgebraError::SplitInvariant(
                "p-th power deviation is not a Lie element".into(),
            ));
        }
        if self.epsilon(x) == 1 {
            if !self.is_class_sum_combination(&delta) {
                return Err(AlgebraError::SplitInvariant(
                    "deviation of a normalized unit is not a class-sum combination".into(),
                ));
            }
            // delta^2 = 0 certifies delta^p = 0 for p >= 2.
            if !self.mul(&delta, &delta)?.is_zero() {
                return Err(AlgebraError::SplitInvariant(
                    "deviation square is nonzero".into(),
                ));
            }
        }
        Ok((s, delta))
    }

    /// Checks the closed p-th power expansion of a sum of two group elements
    /// whose commutator is central: (a+b)^p against
    /// a^p + b^p + sum_r (binom(p,r)/p) a^r b^{p-r} H, where H is the
    /// p-term commutator sum 1 + c + ... + c^{p-1} (which vanishes when a
    /// and b commute and equals the derived-subgroup sum otherwise).
    pub fn abp_check(&self, a: u64, b: u64) -> Result<bool, AlgebraError> {
        let pres = self.en.presentation();
        let ea = self.en.element(a).clone();
        let eb = self.en.element(b).clone();
        let c = pres.commutator(&ea, &eb);
        let ci = self.en.index_of(&c);
        if !self.central[ci as usize] {
            return Err(AlgebraError::Precondition(
                "commutator of the pair is not central".into(),
            ));
        }
        if ci != 0 && self.en.order_of_idx(ci) != self.p {
            return Err(AlgebraError::Precondition(format!(
                "commutator has order {}, expected {} or 1",
                self.en.order_of_idx(ci),
                self.p
            )));
        }
        let mut h = self.zero();
        let mut cp = 0u64;
        for _ in 0..self.p {
            h = self.add(&h, &self.basis(cp))?;
            cp = self.product_index(cp, ci);
        }
        let av = self.basis(a);
        let bv = self.basis(b);
        let lhs = self.pow(&self.add(&av, &bv)?, self.p as u128)?;
        let mut rhs = self.add(&self.basis(self.pow_p[a as usize] as u64), &self.basis(self.pow_p[b as usize] as u64))?;
        for r in 1..self.p {
            let coeff = (binom_over_p(self.p, r) % self.p as u128) as u64;
            if coeff == 0 {
                continue;
            }
            let term = self.mul(&self.pow(&av, r as u128)?, &self.pow(&bv, (self.p - r) as u128)?)?;
            let term = self.mul(&term, &h)?;
            rhs = self.add(&rhs, &self.scalar_mul(coeff, &term))?;
        }
        Ok(lhs == rhs)
    }
}

/// binom(p, r) / p for 1 <= r <= p-1, which is an exact integer.
fn binom_over_p(p: u64, r: u64) -> u128 {
    let mut b = 1u128;
    for i in 0..r {
        // The running product stays integral: a product of i+1 consecutive
        // integers is divisible by (i+1)!.
        b = b * (p - i) as u128 / (i + 1) as u128;
    }
    assert_eq!(b % p as u128, 0, "binom(p, r) must be divisible by p");
    b / p as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::inner_abelian::{abelian, mp, mp1};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn heisenberg_algebra() -> GroupAlgebra {
        let pres = mp1(3, 1, 1).unwrap();
        let en = Enumeration::new(&pres, 1 << 20).unwrap();
        GroupAlgebra::new(&en, DEFAULT_ALGEBRA_BUDGET).unwrap()
    }

    fn random_element(alg: &GroupAlgebra, rng: &mut ChaCha8Rng) -> AlgebraElement {
        let coeffs: Vec<u64> =
            (0..alg.dimension()).map(|_| rng.random_range(0..alg.prime())).collect();
        alg.from_coeffs(&coeffs)
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let alg = heisenberg_algebra();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = random_element(&alg, &mut rng);
            let y = random_element(&alg, &mut rng);
            let z = random_element(&alg, &mut rng);
            let xy_z = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
            let x_yz = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
            assert_eq!(xy_z, x_yz);
            let left = alg.mul(&x, &alg.add(&y, &z).unwrap()).unwrap();
            let right = alg.add(&alg.mul(&x, &y).unwrap(), &alg.mul(&x, &z).unwrap()).unwrap();
            assert_eq!(left, right);
            assert_eq!(
                alg.epsilon(&alg.mul(&x, &y).unwrap()),
                alg.epsilon(&x) * alg.epsilon(&y) % 3
            );
        }
    }

    #[test]
    fn augmentation_of_group_sum_vanishes() {
        let alg = heisenberg_algebra();
        let all: Vec<u64> = (0..alg.dimension() as u64).collect();
        let g_hat = alg.hat(&all);
        assert_eq!(alg.epsilon(&g_hat), 0);
    }

    #[test]
    fn derived_subgroup_sum_squares_to_zero() {
        let alg = heisenberg_algebra();
        let derived = alg.enumeration().derived_subgroup();
        assert_eq!(derived.order(), 3);
        let d_hat = alg.hat(derived.indices());
        assert!(alg.mul(&d_hat, &d_hat).unwrap().is_zero());
    }

    #[test]
    fn normalized_inverse_of_group_element_is_its_inverse() {
        let alg = heisenberg_algebra();
        for g in [1u64, 5, 13] {
            let x = alg.basis(g);
            let inv = alg.normalized_inverse(&x).unwrap();
            assert_eq!(inv, alg.basis(alg.enumeration().inv_idx(g)));
        }
    }

    #[test]
    fn normalized_inverse_of_a_generic_unit() {
        let alg = heisenberg_algebra();
        let en = alg.enumeration();
        let pres = en.presentation();
        let x = en.index_of(&pres.generator(0));
        let y = en.index_of(&pres.generator(1));
        // 1 + x(y - 1)
        let one = alg.one();
        let xy = alg.basis(alg.product_index(x, y));
        let u = alg.add(&one, &alg.sub(&xy, &alg.basis(x)).unwrap()).unwrap();
        let inv = alg.normalized_inverse(&u).unwrap();
        assert_eq!(alg.mul(&inv, &u).unwrap(), one);
        assert_eq!(alg.mul(&u, &inv).unwrap(), one);
    }

    #[test]
    fn unit_order_of_one_plus_class_sum_is_p() {
        let alg = heisenberg_algebra();
        let en = alg.enumeration();
        let noncentral = (0..en.order()).find(|&i| !alg.is_central_index(i)).unwrap();
        let class = &en.conjugacy_classes()[en.class_of()[noncentral as usize] as usize];
        let u = alg.add(&alg.one(), &alg.hat(class)).unwrap();
        assert_eq!(alg.unit_order(&u).unwrap(), 3);
    }

    #[test]
    fn augmentation_ideal_nilpotency() {
        let alg = heisenberg_algebra();
        let g = alg.basis(1);
        let y = alg.sub(&alg.one(), &g).unwrap();
        let mut power = y.clone();
        let mut steps = 1;
        while !power.is_zero() {
            power = alg.mul(&power, &y).unwrap();
            steps += 1;
            assert!(steps <= alg.dimension());
        }
        assert!(steps <= alg.dimension());
    }

    #[test]
    fn lie_membership_matches_bracket_span_oracle() {
        let alg = heisenberg_algebra();
        let n = alg.dimension();
        // Oracle: echelon span of all gh - hg.
        let mut space = crate::fp::RowSpace::new(3, n);
        for g in 0..n as u64 {
            for h in 0..n as u64 {
                let gh = alg.product_index(g, h) as usize;
                let hg = alg.product_index(h, g) as usize;
                let mut v = vec![0u64; n];
                v[gh] = (v[gh] + 1) % 3;
                v[hg] = (v[hg] + 2) % 3;
                space.insert(&v);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let x = random_element(&alg, &mut rng);
            assert_eq!(alg.lie_membership(&x), space.contains(x.coeffs()));
            assert_eq!(alg.lie_p_membership(&x), alg.lie_membership(&x));
        }
        // ab - ba is a member; a central element with nonzero sum is not.
        let a = alg.basis(1);
        let b = alg.basis(3);
        let bracket =
            alg.sub(&alg.mul(&a, &b).unwrap(), &alg.mul(&b, &a).unwrap()).unwrap();
        assert!(alg.lie_membership(&bracket));
        assert!(!alg.lie_membership(&alg.one()));
    }

    #[test]
    fn frobenius_split_on_group_elements_and_sums() {
        let alg = heisenberg_algebra();
        let en = alg.enumeration();
        let pres = en.presentation();
        let a_idx = en.index_of(&pres.generator(0));
        let b_idx = en.index_of(&pres.generator(1));
        // A single group element has zero deviation.
        let (s, delta) = alg.frobenius_split(&alg.basis(a_idx)).unwrap();
        assert!(delta.is_zero());
        assert_eq!(s, alg.one()); // exponent 3 group: a^3 = 1

        // x = a + b: deviation matches the closed form
        // sum_r (binom(p,r)/p) a^r b^{p-r} (1 + c + c^2).
        let x = alg.add(&alg.basis(a_idx), &alg.basis(b_idx)).unwrap();
        let (_, delta) = alg.frobenius_split(&x).unwrap();
        let c = pres.commutator(&pres.generator(0), &pres.generator(1));
        let ci = en.index_of(&c);
        let mut h = alg.zero();
        let mut cp = 0u64;
        for _ in 0..3 {
            h = alg.add(&h, &alg.basis(cp)).unwrap();
            cp = alg.product_index(cp, ci);
        }
        let av = alg.basis(a_idx);
        let bv = alg.basis(b_idx);
        let mut expect = alg.zero();
        for r in 1..3u64 {
            let coeff = (super::binom_over_p(3, r) % 3) as u64;
            let term = alg
                .mul(&alg.pow(&av, r as u128).unwrap(), &alg.pow(&bv, (3 - r) as u128).unwrap())
                .unwrap();
            let term = alg.mul(&term, &h).unwrap();
            expect = alg.add(&expect, &alg.scalar_mul(coeff, &term)).unwrap();
        }
        assert_eq!(delta, expect);
    }

    #[test]
    fn frobenius_split_deviation_is_lie_for_random_elements() {
        let pres = mp(3, 2, 1).unwrap();
        let en = Enumeration::new(&pres, 1 << 20).unwrap();
        let alg = GroupAlgebra::new(&en, DEFAULT_ALGEBRA_BUDGET).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let x = random_element(&alg, &mut rng);
            let (s, delta) = alg.frobenius_split(&x).unwrap();
            assert_eq!(alg.add(&s, &delta).unwrap(), alg.pow(&x, 3).unwrap());
        }
    }

    #[test]
    fn abp_expansion_holds_in_test_groups() {
        let alg = heisenberg_algebra();
        let en = alg.enumeration();
        let pres = en.presentation();
        let a = en.index_of(&pres.generator(0));
        let b = en.index_of(&pres.generator(1));
        assert!(alg.abp_check(a, b).unwrap());
        // Commuting pair, including a = b.
        assert!(alg.abp_check(a, a).unwrap());

        let pres = mp(3, 2, 1).unwrap();
        let en = Enumeration::new(&pres, 1 << 20).unwrap();
        let alg = GroupAlgebra::new(&en, DEFAULT_ALGEBRA_BUDGET).unwrap();
        let a = en.index_of(&pres.generator(0));
        let b = en.index_of(&pres.generator(1));
        assert!(alg.abp_check(a, b).unwrap());
        assert!(alg.abp_check(b, a).unwrap());
    }

    #[test]
    fn parent_mismatch_is_rejected() {
        let alg1 = heisenberg_algebra();
        let alg2 = heisenberg_algebra();
        let x = alg1.one();
        let y = alg2.one();
        assert_eq!(alg1.add(&x, &y).unwrap_err(), AlgebraError::ParentMismatch);
        assert_eq!(alg1.mul(&x, &y).unwrap_err(), AlgebraError::ParentMismatch);
    }

    #[test]
    fn budget_is_enforced() {
        let pres = abelian(3, &[4]).unwrap();
        let en = Enumeration::new(&pres, 1 << 20).unwrap();
        match GroupAlgebra::new(&en, 27) {
            Err(AlgebraError::Budget { order: 81, budget: 27 }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn powers_of_normalized_units_commute_with_the_group() {
        // p-th powers of normalized units are central.
        let pres = mp1(3, 2, 1).unwrap();
        let en = Enumeration::new(&pres, 1 << 20).unwrap();
        let alg = GroupAlgebra::new(&en, DEFAULT_ALGEBRA_BUDGET).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..25 {
            let mut x = random_element(&alg, &mut rng);
            // Normalize: adjust the identity coefficient so epsilon = 1.
            let eps = alg.epsilon(&x);
            let fix = (1 + 3 - eps % 3) % 3;
            let mut coeffs = x.coeffs().to_vec();
            coeffs[0] = (coeffs[0] + fix) % 3;
            x = alg.from_coeffs(&coeffs);
            assert_eq!(alg.epsilon(&x), 1);
            let xp = alg.pow(&x, 3).unwrap();
            assert!(alg.commutes_with_group(&xp));
        }
    }
}
