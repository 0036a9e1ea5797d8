//! Classification of the center of a group in this class, relative to a
//! distinguished central subgroup N with elementary abelian quotient.
//!
//! With N isomorphic to Z_{p^n} x Z_{p^m} (n >= m), the center decomposes in
//! exactly one of four ways, distinguished by where the two top cyclic
//! factors sit relative to N:
//!
//! - A1: Z_{p^n} x Z_{p^m} x E, with N = <z_1> x <z_2>,
//! - A2: Z_{p^{n+1}} x Z_{p^m} x E, with N = <z_1^p> x <z_2>,
//! - A3: Z_{p^n} x Z_{p^{m+1}} x E, with N = <z_1> x <z_2^p> (needs n > m),
//! - A4: Z_{p^{n+1}} x Z_{p^{m+1}} x E, with N = <z_1^p> x <z_2^p>,
//!
//! where E is elementary abelian of rank r - 2. When n = m the A3 profile
//! coincides with A2 and is reported as A2.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::enumeration::{Enumeration, Subgroup};
use super::presentation::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CenterClass {
    A1,
    A2,
    A3,
    A4,
}

impl fmt::Display for CenterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CenterClass::A1 => "A1",
            CenterClass::A2 => "A2",
            CenterClass::A3 => "A3",
            CenterClass::A4 => "A4",
        };
        f.write_str(s)
    }
}

impl CenterClass {
    /// Offsets (d1, d2) with N = <z_1^{p^{d1}}> x <z_2^{p^{d2}}>.
    pub fn offsets(self) -> (u32, u32) {
        match self {
            CenterClass::A1 => (0, 0),
            CenterClass::A2 => (1, 0),
            CenterClass::A3 => (0, 1),
            CenterClass::A4 => (1, 1),
        }
    }
}

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("N is not contained in the center")]
    NotCentral,
    #[error("N must be a rank-2 abelian group, found invariants {0:?}")]
    WrongRank(Vec<u32>),
    #[error("G/N is not elementary abelian")]
    QuotientNotElementaryAbelian,
    #[error("center invariants {found:?} match no admissible profile for n={n}, m={m}")]
    OutsideClass { found: Vec<u32>, n: u32, m: u32 },
    #[error("no center basis locates N in the {tag} position")]
    NoWitnessBasis { tag: CenterClass },
}

#[derive(Debug, Clone)]
pub struct CenterClassification {
    pub tag: CenterClass,
    /// n >= m with N isomorphic to Z_{p^n} x Z_{p^m}.
    pub n: u32,
    pub m: u32,
    /// Rank of the center.
    pub rank: usize,
    /// Basis z_1, ..., z_r of the center, orders nonincreasing, chosen so
    /// that N = <z_1^{p^{d1}}> x <z_2^{p^{d2}}> with (d1, d2) the tag's
    /// offsets.
    pub basis: Vec<GroupElement>,
    pub orders: Vec<u64>,
}

fn profile(n: u32, m: u32, d1: u32, d2: u32, rank: usize) -> Vec<u32> {
    let mut v = vec![n + d1, m + d2];
    v.sort_unstable_by(|a, b| b.cmp(a));
    while v.len() < rank {
        v.push(1);
    }
    v
}

pub fn classify_center(
    en: &Enumeration,
    n_sub: &Subgroup,
) -> Result<CenterClassification, ClassifyError> {
    let p = en.prime();
    let pres = en.presentation();
    let center = en.center_subgroup();
    if !n_sub.indices().iter().all(|&i| center.contains(i)) {
        return Err(ClassifyError::NotCentral);
    }
    let n_invs = en.abelian_invariants(n_sub);
    if n_invs.len() != 2 {
        return Err(ClassifyError::WrongRank(n_invs));
    }
    let (n, m) = (n_invs[0], n_invs[1]);
    // G/N is elementary abelian iff all generator p-th powers and all
    // generator commutators land in N (p-th powering is a homomorphism in
    // this class, so generators suffice).
    for i in 0..pres.num_gens() {
        let gi = pres.generator(i);
        if !n_sub.contains(en.index_of(&pres.pow(&gi, p as i64))) {
            return Err(ClassifyError::QuotientNotElementaryAbelian);
        }
        for j in 0..pres.num_gens() {
            let c = pres.commutator(&gi, &pres.generator(j));
            if !n_sub.contains(en.index_of(&c)) {
                return Err(ClassifyError::QuotientNotElementaryAbelian);
            }
        }
    }

    let center_invs = en.abelian_invariants(&center);
    let rank = center_invs.len();
    let mut tag = None;
    for candidate in [CenterClass::A1, CenterClass::A2, CenterClass::A3, CenterClass::A4] {
        if candidate == CenterClass::A3 && n == m {
            continue; // profile coincides with A2; reported as A2
        }
        let (d1, d2) = candidate.offsets();
        if profile(n, m, d1, d2, rank) == center_invs {
            tag = Some(candidate);
            break;
        }
    }
    let Some(tag) = tag else {
        return Err(ClassifyError::OutsideClass { found: center_invs, n, m });
    };
    let (d1, d2) = tag.offsets();

    // Witness basis: first try the greedy basis of the center, then search
    // pairs (u, v) of the right orders whose p^d powers span N and which
    // extend to a full basis.
    let greedy = en.find_basis(&center);
    if let Some(result) =
        witness_with_pair(en, n_sub, &center, &greedy[0], &greedy[1], tag, n, m, &center_invs)
    {
        return Ok(result);
    }
    let want_u = p.pow(n + d1);
    let want_v = p.pow(m + d2);
    for &ui in center.indices() {
        let u = en.element(ui);
        if pres.element_order(u) != want_u {
            continue;
        }
        for &vi in center.indices() {
            let v = en.element(vi);
            if pres.element_order(v) != want_v {
                continue;
            }
            if let Some(result) =
                witness_with_pair(en, n_sub, &center, u, v, tag, n, m, &center_invs)
            {
                return Ok(result);
            }
        }
    }
    Err(ClassifyError::NoWitnessBasis { tag })
}

#[allow(clippy::too_many_arguments)]
fn witness_with_pair(
    en: &Enumeration,
    n_sub: &Subgroup,
    center: &Subgroup,
    u: &GroupElement,
    v: &GroupElement,
    tag: CenterClass,
    n: u32,
    m: u32,
    center_invs: &[u32],
) -> Option<CenterClassification> {
    let p = en.prime();
    let pres = en.presentation();
    let (d1, d2) = tag.offsets();
    if pres.element_order(u) != p.pow(n + d1) || pres.element_order(v) != p.pow(m + d2) {
        return None;
    }
    let u_part = pres.pow(u, p.pow(d1) as i64);
    let v_part = pres.pow(v, p.pow(d2) as i64);
    let located = en.closure(&[u_part.clone(), v_part.clone()]);
    if located != *n_sub {
        return None;
    }
    // The located copy must be the direct product of the two cyclic parts.
    if located.order() != pres.element_order(&u_part) * pres.element_order(&v_part) {
        return None;
    }
    let basis = en.extend_basis(center, vec![u.clone(), v.clone()])?;
    if basis[0] != *u || basis[1] != *v {
        return None;
    }
    let orders: Vec<u64> = basis.iter().map(|z| pres.element_order(z)).collect();
    let exps: Vec<u32> = orders
        .iter()
        .map(|&o| {
            let mut e = 0;
            let mut r = o;
            while r > 1 {
                r /= p;
                e += 1;
            }
            e
        })
        .collect();
    if exps != center_invs {
        return None;
    }
    Some(CenterClassification {
        tag,
        n,
        m,
        rank: center_invs.len(),
        basis,
        orders,
    })
}
