//! Power-commutator presentations for finite p-groups of class at most 2
//! whose commutators land in a single designated central element of order p.
//!
//! Elements are kept in normal form `g_1^{a_1} ... g_s^{a_s}` with
//! `0 <= a_i < p^{e_i}`. Collection moves generators into position using the
//! commutator table (all corrections are powers of the derived element, which
//! is central) and then folds exponent overflow through the power relations,
//! which only feed strictly later central generators.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fp;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    /// Relative order is `p^order_exp`.
    pub order_exp: u32,
    pub central: bool,
}

/// Normal-form exponent vector of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn exps(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("modulus {0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("generator {0}: relative order exponent must be at least 1")]
    ZeroOrderExp(usize),
    #[error("power relation table has wrong shape")]
    PowerShape,
    #[error("power relation of generator {i} has support at {j}: must be a strictly later central generator")]
    PowerSupport { i: usize, j: usize },
    #[error("power relation of generator {i} has out-of-range exponent at {j}")]
    PowerRange { i: usize, j: usize },
    #[error("commutator table has wrong shape")]
    CommShape,
    #[error("derived element vector has wrong length")]
    DerivedShape,
    #[error("derived element has support at noncentral generator {0}")]
    DerivedSupport(usize),
    #[error("derived element has out-of-range exponent at {0}")]
    DerivedRange(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConsistencyViolation {
    #[error("commutator table not antisymmetric at ({i},{j}): {a} + {b} != 0 mod p")]
    Antisymmetry { i: usize, j: usize, a: u64, b: u64 },
    #[error("nonzero commutator entry at ({i},{j}) although a central generator is involved")]
    CentralCommutator { i: usize, j: usize },
    #[error("derived element must have order exactly p, found order {0}")]
    DerivedOrder(u64),
    #[error("associativity fails on generator triple ({i},{j},{k})")]
    Associativity { i: usize, j: usize, k: usize },
    #[error("p-th power of generator {i} does not commute with generator {j}")]
    PowerCentrality { i: usize, j: usize },
    #[error("generator {i} does not invert: g * g^-1 != 1")]
    Inverse { i: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPresentation {
    p: u64,
    gens: Vec<Generator>,
    /// `powers[i]` is the exponent vector of `g_i^{p^{e_i}}`.
    powers: Vec<Vec<u64>>,
    /// `comm[i][j]` is the exponent `r` in `[g_j, g_i] = c^r`.
    comm: Vec<Vec<u64>>,
    /// Exponent vector of the designated derived element `c` (zero vector for
    /// abelian presentations).
    derived: Vec<u64>,
    #[serde(skip)]
    moduli: Vec<u64>,
}

impl PcPresentation {
    pub fn new(
        p: u64,
        gens: Vec<Generator>,
        powers: Vec<Vec<u64>>,
        comm: Vec<Vec<u64>>,
        derived: Vec<u64>,
    ) -> Result<Self, PresentationError> {
        if p < 3 || !fp::is_prime(p) {
            return Err(PresentationError::NotAnOddPrime(p));
        }
        let s = gens.len();
        for (i, g) in gens.iter().enumerate() {
            if g.order_exp == 0 {
                return Err(PresentationError::ZeroOrderExp(i));
            }
        }
        let moduli: Vec<u64> = gens.iter().map(|g| p.pow(g.order_exp)).collect();
        if powers.len() != s || powers.iter().any(|w| w.len() != s) {
            return Err(PresentationError::PowerShape);
        }
        for (i, w) in powers.iter().enumerate() {
            for (j, &e) in w.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if j <= i || !gens[j].central {
                    return Err(PresentationError::PowerSupport { i, j });
                }
                if e >= moduli[j] {
                    return Err(PresentationError::PowerRange { i, j });
                }
            }
        }
        if comm.len() != s || comm.iter().any(|r| r.len() != s) {
            return Err(PresentationError::CommShape);
        }
        if derived.len() != s {
            return Err(PresentationError::DerivedShape);
        }
        for (j, &e) in derived.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !gens[j].central {
                return Err(PresentationError::DerivedSupport(j));
            }
            if e >= moduli[j] {
                return Err(PresentationError::DerivedRange(j));
            }
        }
        Ok(PcPresentation { p, gens, powers, comm, derived, moduli })
    }

    /// Restores the derived caches after deserialization.
    pub fn rebuild(self) -> Result<Self, PresentationError> {
        PcPresentation::new(self.p, self.gens, self.powers, self.comm, self.derived)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn power_relation(&self, i: usize) -> &[u64] {
        &self.powers[i]
    }

    pub fn commutator_table(&self) -> &[Vec<u64>] {
        &self.comm
    }

    /// Exponent `r` with `[g_i, g_j] = c^r`.
    pub fn comm_exp(&self, i: usize, j: usize) -> u64 {
        self.comm[j][i] % self.p
    }

    pub fn derived_element(&self) -> GroupElement {
        GroupElement(self.derived.clone())
    }

    pub fn modulus(&self, i: usize) -> u64 {
        self.moduli[i]
    }

    /// Group order as the product of all relative orders.
    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.gens.len()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut v = vec![0; self.gens.len()];
        v[i] = 1;
        GroupElement(v)
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        g.0.iter().all(|&x| x == 0)
    }

    /// Reduces a raw exponent vector (already in generator order) to normal
    /// form by folding overflow through the power relations. Exact because
    /// every power relation is supported on strictly later central
    /// generators.
    pub fn reduce(&self, raw: &mut [i64]) -> GroupElement {
        let s = self.gens.len();
        for i in 0..s {
            let m = self.moduli[i] as i64;
            let q = raw[i].div_euclid(m);
            raw[i] = raw[i].rem_euclid(m);
            if q != 0 {
                for j in i + 1..s {
                    let w = self.powers[i][j];
                    if w != 0 {
                        raw[j] += q * w as i64;
                    }
                }
            }
        }
        GroupElement(raw.iter().map(|&x| x as u64).collect())
    }

    /// Single-generator power `g_i^e` in normal form (`e` may be negative).
    pub fn gen_power(&self, i: usize, e: i64) -> GroupElement {
        let mut raw = vec![0i64; self.gens.len()];
        raw[i] = e;
        self.reduce(&mut raw)
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let s = self.gens.len();
        assert_eq!(a.0.len(), s, "element does not belong to this presentation");
        assert_eq!(b.0.len(), s, "element does not belong to this presentation");
        let mut c_exp: u64 = 0;
        for i in 0..s {
            let ai = a.0[i] % self.p;
            if ai == 0 {
                continue;
            }
            for j in 0..i {
                let bj = b.0[j] % self.p;
                if bj == 0 {
                    continue;
                }
                let r = self.comm[j][i] % self.p; // [g_i, g_j] = c^r
                if r != 0 {
                    c_exp = (c_exp + ai * bj % self.p * r) % self.p;
                }
            }
        }
        let mut raw: Vec<i64> = (0..s).map(|i| (a.0[i] + b.0[i]) as i64).collect();
        if c_exp != 0 {
            for j in 0..s {
                let d = self.derived[j];
                if d != 0 {
                    raw[j] += (c_exp * d) as i64;
                }
            }
        }
        self.reduce(&mut raw)
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let s = self.gens.len();
        let mut acc = self.identity();
        for i in (0..s).rev() {
            if a.0[i] != 0 {
                acc = self.mul(&acc, &self.gen_power(i, -(a.0[i] as i64)));
            }
        }
        acc
    }

    pub fn pow(&self, a: &GroupElement, e: i64) -> GroupElement {
        if e < 0 {
            return self.pow(&self.inverse(a), -e);
        }
        let mut base = a.clone();
        let mut e = e as u64;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Normal form of an arbitrary word `[(gen index, exponent), ...]`.
    pub fn normalize(&self, word: &[(usize, i64)]) -> GroupElement {
        let mut acc = self.identity();
        for &(i, e) in word {
            assert!(i < self.gens.len(), "generator index out of range");
            if e != 0 {
                acc = self.mul(&acc, &self.gen_power(i, e));
            }
        }
        acc
    }

    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let ia = self.inverse(a);
        let ib = self.inverse(b);
        self.mul(&self.mul(&ia, &ib), &self.mul(a, b))
    }

    /// Exponent of the derived element in `[a, b]`, via bilinearity of the
    /// commutator map on a group of class at most 2.
    pub fn comm_exp_elements(&self, a: &GroupElement, b: &GroupElement) -> u64 {
        let s = self.gens.len();
        let mut acc: u64 = 0;
        for i in 0..s {
            let ai = a.0[i] % self.p;
            if ai == 0 {
                continue;
            }
            for j in 0..s {
                let bj = b.0[j] % self.p;
                if bj == 0 {
                    continue;
                }
                let r = self.comm[j][i] % self.p;
                acc = (acc + ai * bj % self.p * r) % self.p;
            }
        }
        acc
    }

    pub fn is_central_element(&self, a: &GroupElement) -> bool {
        (0..self.gens.len()).all(|j| {
            let mut acc: u64 = 0;
            for i in 0..self.gens.len() {
                let ai = a.0[i] % self.p;
                if ai != 0 {
                    acc = (acc + ai * (self.comm[j][i] % self.p)) % self.p;
                }
            }
            acc == 0
        })
    }

    /// Order of `a` as a power of p.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        let mut y = a.clone();
        let mut ord = 1u64;
        while !self.is_identity(&y) {
            y = self.pow(&y, self.p as i64);
            ord *= self.p;
        }
        ord
    }

    /// Structural and semantic consistency: antisymmetric table vanishing on
    /// central generators, derived element of order exactly p when the table
    /// is nontrivial, associativity on all generator triples, and centrality
    /// of every relative power. Passing implies the normal forms carry a
    /// group structure of order `prod p^{e_i}`.
    pub fn consistency_check(&self) -> Result<(), ConsistencyViolation> {
        let s = self.gens.len();
        let p = self.p;
        for i in 0..s {
            for j in 0..s {
                let a = self.comm[i][j] % p;
                let b = self.comm[j][i] % p;
                if (a + b) % p != 0 {
                    return Err(ConsistencyViolation::Antisymmetry { i, j, a, b });
                }
                if a != 0 && (self.gens[i].central || self.gens[j].central) {
                    return Err(ConsistencyViolation::CentralCommutator { i, j });
                }
            }
        }
        let nontrivial_table = self
            .comm
            .iter()
            .any(|row| row.iter().any(|&x| x % p != 0));
        if nontrivial_table {
            let d = self.derived_element();
            let ord = self.element_order(&d);
            if ord != p {
                return Err(ConsistencyViolation::DerivedOrder(ord));
            }
        }
        for i in 0..s {
            let gi = self.generator(i);
            let inv = self.inverse(&gi);
            if !self.is_identity(&self.mul(&gi, &inv)) {
                return Err(ConsistencyViolation::Inverse { i });
            }
        }
        for i in 0..s {
            for j in 0..s {
                for k in 0..s {
                    let gi = self.generator(i);
                    let gj = self.generator(j);
                    let gk = self.generator(k);
                    let left = self.mul(&self.mul(&gi, &gj), &gk);
                    let right = self.mul(&gi, &self.mul(&gj, &gk));
                    if left != right {
                        return Err(ConsistencyViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..s {
            let w = GroupElement(self.powers[i].clone());
            for j in 0..s {
                let gj = self.generator(j);
                if !self.is_identity(&self.commutator(&w, &gj)) {
                    return Err(ConsistencyViolation::PowerCentrality { i, j });
                }
            }
        }
        Ok(())
    }

    /// Renders an element as a word in the generator names.
    pub fn format_element(&self, a: &GroupElement) -> String {
        let mut parts = Vec::new();
        for (i, &e) in a.0.iter().enumerate() {
            if e == 1 {
                parts.push(self.gens[i].name.clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.gens[i].name, e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}
