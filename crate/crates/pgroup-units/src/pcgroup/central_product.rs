//! Central and direct products of presented groups.
//!
//! The central product H ⋎ K identifies chosen central subgroups of the two
//! factors: it is the quotient of H × K by the relations u = w for each
//! identified pair (u, w). Since everything identified is central, only the
//! abelian lattice spanned by the central generators changes; the quotient
//! lattice is renormalized with a Hermite normal form, redundant central
//! generators are eliminated by substitution, and the surviving relations are
//! rewritten onto the remaining generators.

use thiserror::Error;

use crate::fp;

use super::presentation::{
    ConsistencyViolation, Generator, GroupElement, PcPresentation, PresentationError,
};

#[derive(Debug, Error)]
pub enum CentralProductError {
    #[error("factors live over different primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("{side} factor is inconsistent: {violation}")]
    FactorInconsistent { side: &'static str, violation: ConsistencyViolation },
    #[error("identified element on the {side} side has wrong length")]
    IdentShape { side: &'static str },
    #[error("identified element on the {side} side is not a product of central generators")]
    IdentSupport { side: &'static str },
    #[error("identified elements have different orders: {left} vs {right}")]
    IdentOrderMismatch { left: u64, right: u64 },
    #[error("both factors are nonabelian but the identification does not merge their derived subgroups")]
    DerivedNotIdentified,
    #[error("the identification collapses the derived subgroup")]
    DerivedCollapsed,
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("internal: product presentation failed its consistency check: {0}")]
    ResultInconsistent(ConsistencyViolation),
}

/// Direct product (central product with nothing identified). Fails when both
/// factors are nonabelian, because the result would have a derived subgroup
/// of order p^2 and leave the class this crate models.
pub fn direct_product(
    h: &PcPresentation,
    k: &PcPresentation,
) -> Result<PcPresentation, CentralProductError> {
    central_product(h, k, &[])
}

struct QuotientLattice {
    hnf: Vec<Vec<i64>>,
    dim: usize,
}

impl QuotientLattice {
    /// Normal form of an integer vector over the central coordinates:
    /// entries land in [0, d_t) where d_t is the t-th diagonal entry, so
    /// eliminated coordinates (d_t = 1) become zero.
    fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for t in 0..self.dim {
            let d = self.hnf[t][t];
            let q = v[t].div_euclid(d);
            v[t] = v[t].rem_euclid(d);
            if q != 0 {
                for x in t + 1..self.dim {
                    v[x] -= q * self.hnf[t][x];
                }
            }
        }
        v
    }
}

pub fn central_product(
    h: &PcPresentation,
    k: &PcPresentation,
    idents: &[(GroupElement, GroupElement)],
) -> Result<PcPresentation, CentralProductError> {
    let p = h.prime();
    if k.prime() != p {
        return Err(CentralProductError::PrimeMismatch(p, k.prime()));
    }
    h.consistency_check()
        .map_err(|violation| CentralProductError::FactorInconsistent { side: "left", violation })?;
    k.consistency_check()
        .map_err(|violation| CentralProductError::FactorInconsistent { side: "right", violation })?;

    let sh = h.num_gens();
    let sk = k.num_gens();
    // Direct-product generator indices: H generator i stays i, K generator j
    // becomes sh + j. Central coordinates, H's first.
    let mut central_cols: Vec<usize> = Vec::new();
    for i in 0..sh {
        if h.gens()[i].central {
            central_cols.push(i);
        }
    }
    for j in 0..sk {
        if k.gens()[j].central {
            central_cols.push(sh + j);
        }
    }
    let dim = central_cols.len();
    let col_of = |dp_index: usize| central_cols.iter().position(|&c| c == dp_index);

    // Relation rows: the power relation of every central generator, plus one
    // identification row u - w per identified pair.
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (t, &c) in central_cols.iter().enumerate() {
        let mut row = vec![0i64; dim];
        let (pres, local, off): (&PcPresentation, usize, usize) =
            if c < sh { (h, c, 0) } else { (k, c - sh, sh) };
        row[t] = pres.modulus(local) as i64;
        for (j, &w) in pres.power_relation(local).iter().enumerate() {
            if w != 0 {
                let col = col_of(off + j).expect("power relations feed central generators");
                row[col] -= w as i64;
            }
        }
        rows.push(row);
    }
    for (u, w) in idents {
        if u.exps().len() != sh {
            return Err(CentralProductError::IdentShape { side: "left" });
        }
        if w.exps().len() != sk {
            return Err(CentralProductError::IdentShape { side: "right" });
        }
        let mut row = vec![0i64; dim];
        for (i, &e) in u.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let Some(col) = col_of(i) else {
                return Err(CentralProductError::IdentSupport { side: "left" });
            };
            row[col] += e as i64;
        }
        for (j, &e) in w.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let Some(col) = col_of(sh + j) else {
                return Err(CentralProductError::IdentSupport { side: "right" });
            };
            row[col] -= e as i64;
        }
        let lo = h.element_order(u);
        let ro = k.element_order(w);
        if lo != ro {
            return Err(CentralProductError::IdentOrderMismatch { left: lo, right: ro });
        }
        rows.push(row);
    }

    let lattice = QuotientLattice { hnf: fp::hermite_normal_form(&rows, dim), dim };

    // Surviving central generators and their new relative orders.
    let mut kept: Vec<usize> = Vec::new();
    let mut kept_exp: Vec<u32> = Vec::new();
    for t in 0..dim {
        let d = lattice.hnf[t][t];
        if d == 1 {
            continue;
        }
        let mut e = 0u32;
        let mut r = d as u64;
        while r % p == 0 {
            r /= p;
            e += 1;
        }
        assert!(r == 1, "quotient of a p-group has p-power cyclic factors");
        kept.push(t);
        kept_exp.push(e);
    }

    // Maps a direct-product exponent vector supported on central generators
    // to its normal form over the kept central coordinates.
    let project = |vec_h: Option<&[u64]>, vec_k: Option<&[u64]>| -> Vec<u64> {
        let mut v = vec![0i64; dim];
        if let Some(ve) = vec_h {
            for (i, &e) in ve.iter().enumerate() {
                if e != 0 {
                    v[col_of(i).expect("central support")] += e as i64;
                }
            }
        }
        if let Some(ve) = vec_k {
            for (j, &e) in ve.iter().enumerate() {
                if e != 0 {
                    v[col_of(sh + j).expect("central support")] += e as i64;
                }
            }
        }
        let r = lattice.reduce(v);
        kept.iter().map(|&t| r[t] as u64).collect()
    };

    // New generator layout: noncentral H, noncentral K, kept centrals.
    let h_noncentral: Vec<usize> = (0..sh).filter(|&i| !h.gens()[i].central).collect();
    let k_noncentral: Vec<usize> = (0..sk).filter(|&j| !k.gens()[j].central).collect();
    let nh = h_noncentral.len();
    let nk = k_noncentral.len();
    let total = nh + nk + kept.len();

    let mut names: Vec<String> = Vec::new();
    let unique_name = |base: &str, names: &Vec<String>| -> String {
        let mut candidate = base.to_string();
        while names.contains(&candidate) {
            candidate.push('\'');
        }
        candidate
    };
    let mut gens: Vec<Generator> = Vec::new();
    for &i in &h_noncentral {
        let g = &h.gens()[i];
        let name = unique_name(&g.name, &names);
        names.push(name.clone());
        gens.push(Generator { name, order_exp: g.order_exp, central: false });
    }
    for &j in &k_noncentral {
        let g = &k.gens()[j];
        let name = unique_name(&g.name, &names);
        names.push(name.clone());
        gens.push(Generator { name, order_exp: g.order_exp, central: false });
    }
    for (pos, &t) in kept.iter().enumerate() {
        let c = central_cols[t];
        let g = if c < sh { &h.gens()[c] } else { &k.gens()[c - sh] };
        let name = unique_name(&g.name, &names);
        names.push(name.clone());
        gens.push(Generator { name, order_exp: kept_exp[pos], central: true });
    }

    // Power relations. Noncentral generators keep their relative order and
    // have their old central target rewritten; kept centrals read theirs off
    // the reduced lattice relation d_t e_t = -tail.
    let mut powers = vec![vec![0u64; total]; total];
    for (new_i, &i) in h_noncentral.iter().enumerate() {
        let tail = project(Some(h.power_relation(i)), None);
        for (pos, &e) in tail.iter().enumerate() {
            powers[new_i][nh + nk + pos] = e;
        }
    }
    for (new_j, &j) in k_noncentral.iter().enumerate() {
        let tail = project(None, Some(k.power_relation(j)));
        for (pos, &e) in tail.iter().enumerate() {
            powers[nh + new_j][nh + nk + pos] = e;
        }
    }
    for (pos, &t) in kept.iter().enumerate() {
        let mut v = vec![0i64; dim];
        v[t] = lattice.hnf[t][t];
        let r = lattice.reduce(v);
        for (pos2, &t2) in kept.iter().enumerate() {
            if r[t2] != 0 {
                assert!(pos2 > pos, "lattice relations point forward");
                powers[nh + nk + pos][nh + nk + pos2] = r[t2] as u64;
            }
        }
    }

    // Derived element and commutator tables. With two nonabelian factors the
    // identification must have merged the derived subgroups; K's table is
    // then rescaled into powers of H's derived image.
    let h_nonabelian = h
        .commutator_table()
        .iter()
        .any(|row| row.iter().any(|&x| x % p != 0));
    let k_nonabelian = k
        .commutator_table()
        .iter()
        .any(|row| row.iter().any(|&x| x % p != 0));
    let img_h = project(Some(h.derived_element().exps()), None);
    let img_k = project(None, Some(k.derived_element().exps()));
    let order_in_quotient = |v: &[u64]| -> u64 {
        // v is already in normal form over kept coordinates.
        let mut ord = 1u64;
        let mut cur: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        loop {
            if cur.iter().all(|&x| x == 0) {
                return ord;
            }
            let mut wide = vec![0i64; dim];
            for (pos, &t) in kept.iter().enumerate() {
                wide[t] = cur[pos] * p as i64;
            }
            let r = lattice.reduce(wide);
            cur = kept.iter().map(|&t| r[t]).collect();
            ord *= p;
        }
    };
    let scaled_image = |img: &[u64], lambda: u64| -> Vec<u64> {
        let mut wide = vec![0i64; dim];
        for (pos, &t) in kept.iter().enumerate() {
            wide[t] = (img[pos] * lambda) as i64;
        }
        let r = lattice.reduce(wide);
        kept.iter().map(|&t| r[t] as u64).collect()
    };
    let (derived, lambda_k) = match (h_nonabelian, k_nonabelian) {
        (false, false) => (vec![0u64; kept.len()], 0u64),
        (true, false) => {
            if order_in_quotient(&img_h) != p {
                return Err(CentralProductError::DerivedCollapsed);
            }
            (img_h.clone(), 0)
        }
        (false, true) => {
            if order_in_quotient(&img_k) != p {
                return Err(CentralProductError::DerivedCollapsed);
            }
            (img_k.clone(), 1)
        }
        (true, true) => {
            if order_in_quotient(&img_h) != p {
                return Err(CentralProductError::DerivedCollapsed);
            }
            let lambda = (1..p).find(|&l| scaled_image(&img_h, l) == img_k);
            let Some(lambda) = lambda else {
                return Err(CentralProductError::DerivedNotIdentified);
            };
            (img_h.clone(), lambda)
        }
    };

    let mut comm = vec![vec![0u64; total]; total];
    for (ni, &i) in h_noncentral.iter().enumerate() {
        for (nj, &j) in h_noncentral.iter().enumerate() {
            comm[ni][nj] = h.commutator_table()[i][j] % p;
        }
    }
    for (ni, &i) in k_noncentral.iter().enumerate() {
        for (nj, &j) in k_noncentral.iter().enumerate() {
            comm[nh + ni][nh + nj] = k.commutator_table()[i][j] % p * lambda_k % p;
        }
    }

    let mut derived_vec = vec![0u64; total];
    for (pos, &e) in derived.iter().enumerate() {
        derived_vec[nh + nk + pos] = e;
    }

    let result = PcPresentation::new(p, gens, powers, comm, derived_vec)?;
    result
        .consistency_check()
        .map_err(CentralProductError::ResultInconsistent)?;
    // |identified| = |A| / |A'| where A is the central sublattice of the
    // direct product and A' its quotient; the product order must shrink by
    // exactly that factor.
    let central_before: u128 = central_cols
        .iter()
        .map(|&c| {
            if c < sh {
                h.modulus(c) as u128
            } else {
                k.modulus(c - sh) as u128
            }
        })
        .product();
    let central_after: u128 = (0..dim).map(|t| lattice.hnf[t][t] as u128).product();
    debug_assert_eq!(
        result.order() * (central_before / central_after),
        h.order() * k.order(),
        "central product order must be |H||K| / |identified|"
    );
    Ok(result)
}
