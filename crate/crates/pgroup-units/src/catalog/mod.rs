//! The nineteen-type catalog: every group in this class is a central product
//! of inner abelian building blocks and abelian parts, in one of nineteen
//! shapes determined by four parameters (n, m, k, r) and the prime p.
//!
//! Shapes 1..=10 leave the two distinguished cyclic factors of the center at
//! their base depths (tag A1); 11..=14 deepen the first (A2); 15..=18 deepen
//! the second (A3, which collapses to A2 when n = m); 19 deepens both (A4).

pub mod format;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pcgroup::central_product::{central_product, CentralProductError};
use crate::pcgroup::classify::{classify_center, CenterClass};
use crate::pcgroup::enumeration::{Enumeration, EnumerationError};
use crate::pcgroup::fingerprint::{fingerprint, is_isomorphic_bruteforce, OracleError};
use crate::pcgroup::inner_abelian::{abelian, cyclic, mp, mp1, BuildError};
use crate::pcgroup::presentation::{GroupElement, PcPresentation};
use crate::pcgroup::symplectic::symplectic_form;

/// One of the nineteen group shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum TypeId {
    T1_1,
    T1_2,
    T1_3,
    T1_4,
    T1_5,
    T1_6,
    T1_7,
    T1_8,
    T1_9,
    T1_10,
    T1_11,
    T1_12,
    T1_13,
    T1_14,
    T1_15,
    T1_16,
    T1_17,
    T1_18,
    T1_19,
}

pub const ALL_TYPES: [TypeId; 19] = [
    TypeId::T1_1,
    TypeId::T1_2,
    TypeId::T1_3,
    TypeId::T1_4,
    TypeId::T1_5,
    TypeId::T1_6,
    TypeId::T1_7,
    TypeId::T1_8,
    TypeId::T1_9,
    TypeId::T1_10,
    TypeId::T1_11,
    TypeId::T1_12,
    TypeId::T1_13,
    TypeId::T1_14,
    TypeId::T1_15,
    TypeId::T1_16,
    TypeId::T1_17,
    TypeId::T1_18,
    TypeId::T1_19,
];

impl TypeId {
    pub fn number(self) -> u32 {
        (ALL_TYPES.iter().position(|&t| t == self).unwrap() + 1) as u32
    }

    /// Needs two explicit nonabelian non-Heisenberg factors.
    fn needs_two_pairs(self) -> bool {
        matches!(self, TypeId::T1_2 | TypeId::T1_7)
    }

    fn needs_strict(self) -> bool {
        matches!(
            self,
            TypeId::T1_6 | TypeId::T1_7 | TypeId::T1_8 | TypeId::T1_9 | TypeId::T1_10
        )
    }

    /// Expected center tag for given (n, m).
    pub fn expected_tag(self, n: u32, m: u32) -> CenterClass {
        let num = self.number();
        match num {
            1..=10 => CenterClass::A1,
            11..=14 => CenterClass::A2,
            15..=18 => {
                if n > m {
                    CenterClass::A3
                } else {
                    CenterClass::A2
                }
            }
            _ => CenterClass::A4,
        }
    }

    /// Extra center depth over n + m + r - 2, by tag family.
    pub fn center_depth(self) -> u32 {
        match self.number() {
            1..=10 => 0,
            11..=18 => 1,
            _ => 2,
        }
    }

    /// log_p of the expected exponent.
    pub fn exponent_exp(self, n: u32, m: u32) -> u32 {
        match self {
            TypeId::T1_4 => (m + 1).max(n),
            TypeId::T1_5 | TypeId::T1_8 | TypeId::T1_10 => n,
            TypeId::T1_16 | TypeId::T1_18 => n.max(m + 1),
            _ => n + 1,
        }
    }
}

impl fmt::Display for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1.{}", self.number())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown type id: {0}")]
pub struct ParseTypeIdError(String);

impl FromStr for TypeId {
    type Err = ParseTypeIdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim();
        let tail = norm
            .strip_prefix("T1_")
            .or_else(|| norm.strip_prefix("1."))
            .unwrap_or(norm);
        match tail.parse::<usize>() {
            Ok(t) if (1..=19).contains(&t) => Ok(ALL_TYPES[t - 1]),
            _ => Err(ParseTypeIdError(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    pub p: u64,
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub r: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedInvariants {
    /// log_p |G|.
    pub order_exp: u32,
    /// log_p |center|.
    pub center_order_exp: u32,
    pub center_tag: CenterClass,
    /// log_p exponent(G).
    pub exponent_exp: u32,
    /// |G'| (always p).
    pub derived_order: u64,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub type_id: TypeId,
    pub params: Params,
    pub presentation: PcPresentation,
    pub expected: ExpectedInvariants,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("type {type_id} requires {requirement} (got n={n}, m={m}, k={k}, r={r})")]
    Constraint { type_id: TypeId, requirement: &'static str, n: u32, m: u32, k: u32, r: u32 },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Product(#[from] CentralProductError),
}

/// Per-type parameter constraints, beyond the global
/// p odd prime, n >= m >= 1, k >= 1, r >= 2.
pub fn check_constraints(
    type_id: TypeId,
    params: &Params,
) -> Result<(), CatalogError> {
    let Params { n, m, k, r, .. } = *params;
    let fail = |requirement: &'static str| {
        Err(CatalogError::Constraint { type_id, requirement, n, m, k, r })
    };
    if m < 1 || n < m {
        return fail("n >= m >= 1");
    }
    if k < 1 {
        return fail("k >= 1");
    }
    if r < 2 {
        return fail("r >= 2");
    }
    if type_id.needs_two_pairs() && k < 2 {
        return fail("k >= 2");
    }
    if type_id.needs_strict() && n <= m {
        return fail("n > m");
    }
    Ok(())
}

/// The factor decomposition of one catalog shape: nonabelian factors merged
/// over the shared derived element, an optional abelian amalgam with the
/// element c is identified with, and direct abelian cofactors.
struct Recipe {
    nonabelian: Vec<PcPresentation>,
    amalgam: Option<(PcPresentation, GroupElement)>,
    direct: Vec<PcPresentation>,
}

fn recipe(type_id: TypeId, params: &Params) -> Result<Recipe, CatalogError> {
    let Params { p, n, m, k, .. } = *params;
    let heis = || mp1(p, 1, 1);
    // Cyclic factor of order p^t, amalgamated over its order-p subgroup
    // <z^{p^{t-1}}>.
    let cyc_amalgam = |t: u32| -> Result<(PcPresentation, GroupElement), BuildError> {
        let z = cyclic(p, t)?;
        let elem = z.gen_power(0, p.pow(t - 1) as i64);
        Ok((z, elem))
    };
    let mut heis_count = k as usize - 1;
    let mut nonabelian: Vec<PcPresentation> = Vec::new();
    let mut amalgam = None;
    let mut direct = Vec::new();
    match type_id {
        TypeId::T1_1 => {
            nonabelian.push(mp(p, n + 1, m + 1)?);
        }
        TypeId::T1_2 => {
            nonabelian.push(mp(p, n + 1, 1)?);
            nonabelian.push(mp1(p, m + 1, 1)?);
            heis_count = k as usize - 2;
        }
        TypeId::T1_3 => {
            nonabelian.push(mp(p, n + 1, 1)?);
            direct.push(cyclic(p, m)?);
        }
        TypeId::T1_4 => {
            nonabelian.push(mp1(p, m + 1, 1)?);
            amalgam = Some(cyc_amalgam(n)?);
        }
        TypeId::T1_5 => {
            heis_count = k as usize;
            amalgam = Some(cyc_amalgam(n)?);
            direct.push(cyclic(p, m)?);
        }
        TypeId::T1_6 => {
            nonabelian.push(mp(p, m + 1, n + 1)?);
        }
        TypeId::T1_7 => {
            nonabelian.push(mp(p, m + 1, 1)?);
            nonabelian.push(mp1(p, n + 1, 1)?);
            heis_count = k as usize - 2;
        }
        TypeId::T1_8 => {
            nonabelian.push(mp(p, m + 1, 1)?);
            direct.push(cyclic(p, n)?);
        }
        TypeId::T1_9 => {
            nonabelian.push(mp1(p, n + 1, 1)?);
            amalgam = Some(cyc_amalgam(m)?);
        }
        TypeId::T1_10 => {
            heis_count = k as usize;
            amalgam = Some(cyc_amalgam(m)?);
            direct.push(cyclic(p, n)?);
        }
        TypeId::T1_11 => {
            nonabelian.push(mp1(p, m + 1, 1)?);
            amalgam = Some(cyc_amalgam(n + 1)?);
        }
        TypeId::T1_12 => {
            heis_count = k as usize;
            amalgam = Some(cyc_amalgam(n + 1)?);
            direct.push(cyclic(p, m)?);
        }
        TypeId::T1_13 => {
            nonabelian.push(mp(p, m + 1, 1)?);
            direct.push(cyclic(p, n + 1)?);
        }
        TypeId::T1_14 => {
            heis_count = k as usize;
            amalgam = Some(cyc_amalgam(m)?);
            direct.push(cyclic(p, n + 1)?);
        }
        TypeId::T1_15 => {
            nonabelian.push(mp(p, n + 1, 1)?);
            direct.push(cyclic(p, m + 1)?);
        }
        TypeId::T1_16 => {
            heis_count = k as usize;
            amalgam = Some(cyc_amalgam(n)?);
            direct.push(cyclic(p, m + 1)?);
        }
        TypeId::T1_17 => {
            nonabelian.push(mp1(p, n + 1, 1)?);
            amalgam = Some(cyc_amalgam(m + 1)?);
        }
        TypeId::T1_18 => {
            heis_count = k as usize;
            amalgam = Some(cyc_amalgam(m + 1)?);
            direct.push(cyclic(p, n)?);
        }
        TypeId::T1_19 => {
            heis_count = k as usize;
            let a = abelian(p, &[n + 1, m + 1])?;
            let elem = a.gen_power(0, p.pow(n) as i64);
            amalgam = Some((a, elem));
        }
    }
    for _ in 0..heis_count {
        nonabelian.push(heis()?);
    }
    Ok(Recipe { nonabelian, amalgam, direct })
}

pub fn build_entry(type_id: TypeId, params: Params) -> Result<CatalogEntry, CatalogError> {
    check_constraints(type_id, &params)?;
    let Params { p, n, m, k, r } = params;
    let rec = recipe(type_id, &params)?;

    let mut g = rec.nonabelian[0].clone();
    for f in &rec.nonabelian[1..] {
        let ident = (g.derived_element(), f.derived_element());
        g = central_product(&g, f, &[ident])?;
    }
    if let Some((a, elem)) = rec.amalgam {
        let ident = (g.derived_element(), elem);
        g = central_product(&g, &a, &[ident])?;
    }
    for extra in &rec.direct {
        g = central_product(&g, extra, &[])?;
    }
    if r > 2 {
        let tail = abelian(p, &vec![1; (r - 2) as usize])?;
        g = central_product(&g, &tail, &[])?;
    }

    let depth = type_id.center_depth();
    let expected = ExpectedInvariants {
        order_exp: 2 * k + n + m + r - 2 + depth,
        center_order_exp: n + m + r - 2 + depth,
        center_tag: type_id.expected_tag(n, m),
        exponent_exp: type_id.exponent_exp(n, m),
        derived_order: p,
    };
    Ok(CatalogEntry { type_id, params, presentation: g, expected })
}

/// Expected log_p |G| without building anything, for range filtering.
pub fn expected_order_exp(type_id: TypeId, params: &Params) -> u32 {
    2 * params.k + params.n + params.m + params.r - 2 + type_id.center_depth()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub type_id: TypeId,
    pub params: Params,
    pub passed: bool,
    pub checks: Vec<VerifyCheck>,
}

fn push_check(checks: &mut Vec<VerifyCheck>, name: &str, passed: bool, details: String) {
    checks.push(VerifyCheck { name: name.to_string(), passed, details });
}

fn log_p(p: u64, mut v: u128) -> u32 {
    let mut e = 0;
    while v > 1 {
        v /= p as u128;
        e += 1;
    }
    e
}

/// Runs every structural check of one entry against its expected invariants.
/// Failures are recorded in the report, never raised as errors.
pub fn verify_entry(entry: &CatalogEntry, budget: u64) -> VerifyReport {
    let mut checks = Vec::new();
    let p = entry.params.p;
    let Params { n, m, k, .. } = entry.params;
    let en = match Enumeration::new(&entry.presentation, budget) {
        Ok(en) => en,
        Err(e) => {
            let details = match &e {
                EnumerationError::Budget { order, budget } => {
                    format!("order {order} exceeds budget {budget}")
                }
                EnumerationError::Inconsistent(v) => format!("{v}"),
            };
            push_check(&mut checks, "enumeration", false, details);
            return VerifyReport {
                type_id: entry.type_id,
                params: entry.params,
                passed: false,
                checks,
            };
        }
    };
    push_check(&mut checks, "consistency", true, "presentation is consistent".into());

    let order_ok = log_p(p, en.order() as u128) == entry.expected.order_exp
        && en.order() as u128 == (p as u128).pow(entry.expected.order_exp);
    push_check(
        &mut checks,
        "order",
        order_ok,
        format!("|G| = {} (expected p^{})", en.order(), entry.expected.order_exp),
    );

    let derived = en.derived_subgroup();
    push_check(
        &mut checks,
        "derived_order",
        derived.order() == p,
        format!("|G'| = {} (expected {p})", derived.order()),
    );

    let center = en.center_subgroup();
    let center_ok = center.order() as u128 == (p as u128).pow(entry.expected.center_order_exp);
    push_check(
        &mut checks,
        "center_order",
        center_ok,
        format!(
            "|center| = {} (expected p^{})",
            center.order(),
            entry.expected.center_order_exp
        ),
    );

    // G/center elementary abelian of rank 2k, via the commutator form.
    match symplectic_form(&en) {
        Ok(form) => {
            let rank_ok = form.dimension() == 2 * k as usize;
            push_check(
                &mut checks,
                "quotient_rank",
                rank_ok,
                format!("dim G/center = {} (expected {})", form.dimension(), 2 * k),
            );
            push_check(
                &mut checks,
                "form_nondegenerate",
                true,
                "commutator form is nondegenerate".into(),
            );
        }
        Err(e) => {
            push_check(&mut checks, "quotient_rank", false, format!("{e}"));
            push_check(&mut checks, "form_nondegenerate", false, format!("{e}"));
        }
    }

    let exp_ok = en.exponent() as u128 == (p as u128).pow(entry.expected.exponent_exp);
    push_check(
        &mut checks,
        "exponent",
        exp_ok,
        format!("exponent = {} (expected p^{})", en.exponent(), entry.expected.exponent_exp),
    );

    // Existence of N <= center with N of type (n, m) and G/N elementary
    // abelian: N must contain the Frattini subgroup G^p G'; search pairs.
    let mut frat_gens = en.power_image(1);
    frat_gens.extend_from_slice(derived.indices());
    let frat = en.closure_of_indices(&frat_gens);
    let pres = en.presentation();
    let target = (p as u128).pow(n + m);
    let mut found = None;
    'search: for &ui in center.indices() {
        let u = en.element(ui);
        if pres.element_order(u) != p.pow(n) {
            continue;
        }
        for &vi in center.indices() {
            let v = en.element(vi);
            if pres.element_order(v) != p.pow(m) {
                continue;
            }
            let mut gens: Vec<u64> = frat.indices().to_vec();
            gens.push(ui);
            gens.push(vi);
            let cand = en.closure_of_indices(&gens);
            if cand.order() as u128 != target {
                continue;
            }
            if en.abelian_invariants(&cand) != vec![n, m] {
                continue;
            }
            found = Some(cand);
            break 'search;
        }
    }
    match found {
        Some(n_sub) => {
            push_check(
                &mut checks,
                "n_subgroup",
                true,
                format!("found N of order p^{} containing the Frattini subgroup", n + m),
            );
            match classify_center(&en, &n_sub) {
                Ok(cls) => {
                    let tag_ok = cls.tag == entry.expected.center_tag;
                    push_check(
                        &mut checks,
                        "center_tag",
                        tag_ok,
                        format!("tag = {} (expected {})", cls.tag, entry.expected.center_tag),
                    );
                }
                Err(e) => {
                    push_check(&mut checks, "center_tag", false, format!("{e}"));
                }
            }
        }
        None => {
            push_check(
                &mut checks,
                "n_subgroup",
                false,
                "no central N of the required type with elementary abelian quotient".into(),
            );
            push_check(&mut checks, "center_tag", false, "no N found".into());
        }
    }

    let passed = checks.iter().all(|c| c.passed);
    VerifyReport { type_id: entry.type_id, params: entry.params, passed, checks }
}

/// All buildable entries for the prime and ranges, ordered by type id then
/// lexicographic parameters, skipping entries whose expected order exceeds
/// the budget.
pub fn admissible_entries(
    p: u64,
    n_max: u32,
    m_max: u32,
    k_max: u32,
    r_max: u32,
    types: Option<&[TypeId]>,
    order_budget: u64,
) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut out = Vec::new();
    for &type_id in ALL_TYPES.iter() {
        if let Some(filter) = types {
            if !filter.contains(&type_id) {
                continue;
            }
        }
        for n in 1..=n_max {
            for m in 1..=m_max.min(n) {
                for k in 1..=k_max {
                    for r in 2..=r_max {
                        let params = Params { p, n, m, k, r };
                        if check_constraints(type_id, &params).is_err() {
                            continue;
                        }
                        let exp = expected_order_exp(type_id, &params);
                        if (p as u128).pow(exp) > order_budget as u128 {
                            continue;
                        }
                        out.push(build_entry(type_id, params)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistinguishRecord {
    pub left: TypeId,
    pub right: TypeId,
    pub params: Params,
    pub fingerprints_differ: bool,
    pub oracle_used: bool,
    /// Some(verdict) when the oracle ran.
    pub isomorphic: Option<bool>,
}

/// Compares all same-parameter pairs of entries by fingerprint, escalating
/// ties to the brute-force oracle when the groups fit its bound.
pub fn pairwise_distinguish(
    entries: &[CatalogEntry],
    enum_budget: u64,
    oracle_bound: u64,
) -> Result<Vec<DistinguishRecord>, EnumerationError> {
    let mut enums: Vec<Option<(Enumeration, crate::pcgroup::fingerprint::Fingerprint)>> =
        Vec::with_capacity(entries.len());
    for e in entries {
        let en = Enumeration::new(&e.presentation, enum_budget)?;
        let fp = fingerprint(&en);
        enums.push(Some((en, fp)));
    }
    let mut out = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if entries[i].params != entries[j].params {
                continue;
            }
            let (en_i, fp_i) = enums[i].as_ref().unwrap();
            let (en_j, fp_j) = enums[j].as_ref().unwrap();
            let differ = fp_i != fp_j;
            let (oracle_used, isomorphic) = if differ {
                (false, None)
            } else {
                match is_isomorphic_bruteforce(en_i, en_j, oracle_bound) {
                    Ok(iso) => (true, Some(iso)),
                    Err(OracleError::Budget { .. }) => (false, None),
                }
            };
            out.push(DistinguishRecord {
                left: entries[i].type_id,
                right: entries[j].type_id,
                params: entries[i].params,
                fingerprints_differ: differ,
                oracle_used,
                isomorphic,
            });
        }
    }
    Ok(out)
}
