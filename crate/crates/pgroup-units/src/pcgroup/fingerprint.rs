//! Isomorphism invariants and a brute-force isomorphism oracle.
//!
//! The fingerprint is a tuple of cheap invariants that distinguishes the
//! catalog types in practice; the oracle does an exhaustive generator-image
//! search and is the ground truth the fingerprint is validated against.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::enumeration::{invariants_from_layer_sizes, Enumeration};

/// Default order bound for the brute-force oracle.
pub const DEFAULT_ISO_BOUND: u64 = 243;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("group of order {order} exceeds the isomorphism oracle bound {bound}")]
    Budget { order: u64, bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u64,
    pub exponent: u64,
    /// Invariant exponents of G modulo its derived subgroup.
    pub abelianization: Vec<u32>,
    /// Invariant exponents of the center.
    pub center_invariants: Vec<u32>,
    pub power_subgroup_order: u64,
    pub omega1_order: u64,
    /// Sorted (element order, count) pairs.
    pub order_histogram: Vec<(u64, u64)>,
    pub class_count: u64,
}

/// Invariant exponents of G/G', from the sizes of the sets
/// {g : g^{p^l} in G'}.
fn abelianization_invariants(en: &Enumeration) -> Vec<u32> {
    let p = en.prime();
    let derived = en.derived_subgroup();
    let dsize = derived.order();
    let pres = en.presentation();
    let mut layers = vec![1u64];
    loop {
        let e = p.pow(layers.len() as u32) as i64;
        let count = en
            .elements()
            .iter()
            .filter(|x| derived.contains(en.index_of(&pres.pow(x, e))))
            .count() as u64
            / dsize;
        layers.push(count);
        if count * dsize == en.order() {
            break;
        }
    }
    invariants_from_layer_sizes(&layers, p)
}

pub fn fingerprint(en: &Enumeration) -> Fingerprint {
    Fingerprint {
        order: en.order(),
        exponent: en.exponent(),
        abelianization: abelianization_invariants(en),
        center_invariants: en.abelian_invariants(&en.center_subgroup()),
        power_subgroup_order: en.power_subgroup(1).order(),
        omega1_order: en.omega(1).order(),
        order_histogram: en.order_histogram().into_iter().collect(),
        class_count: en.conjugacy_classes().len() as u64,
    }
}

/// A minimal generating set, as lifts of a basis of G modulo its Frattini
/// subgroup G^p G' (scanned in index order).
pub fn minimal_generators(en: &Enumeration) -> Vec<u64> {
    let p = en.prime();
    let pres = en.presentation();
    let mut frat_gens = en.power_image(1);
    for &d in en.derived_subgroup().indices() {
        frat_gens.push(d);
    }
    let frat = en.closure_of_indices(&frat_gens);
    // Incremental span: every span contains G' (so is normal) and all p-th
    // powers, so adjoining x unions the cosets S x^i, i < p.
    let mut in_span = vec![false; en.order() as usize];
    let mut members: Vec<u64> = frat.indices().to_vec();
    for &x in &members {
        in_span[x as usize] = true;
    }
    let mut gens = Vec::new();
    for idx in 0..en.order() {
        if in_span[idx as usize] {
            continue;
        }
        gens.push(idx);
        let x = en.element(idx).clone();
        let mut xi = x.clone();
        let mut added = Vec::new();
        for _ in 1..p {
            for &s in &members {
                let y = en.index_of(&pres.mul(en.element(s), &xi));
                if !in_span[y as usize] {
                    in_span[y as usize] = true;
                    added.push(y);
                }
            }
            xi = pres.mul(&xi, &x);
        }
        members.extend(added);
        if members.len() as u64 == en.order() {
            break;
        }
    }
    gens
}

/// Per-element invariants used to prune candidate generator images:
/// element order, centrality, and depth modulo the derived subgroup (the
/// least l with g^{p^l} in G').
fn element_signature(
    en: &Enumeration,
    derived: &super::enumeration::Subgroup,
    idx: u64,
) -> (u64, bool, u32) {
    let pres = en.presentation();
    let p = en.prime() as i64;
    let mut depth = 0u32;
    let mut y = en.element(idx).clone();
    while !derived.contains(en.index_of(&y)) {
        y = pres.pow(&y, p);
        depth += 1;
    }
    (
        en.order_of_idx(idx),
        en.center().binary_search(&idx).is_ok(),
        depth,
    )
}

/// Exhaustive isomorphism test: maps a minimal generating set of `g` to
/// candidate tuples in `h` (filtered by element signature), replaying the
/// Cayley-graph closure of the generated subgroup to force the map to be an
/// injective homomorphism at every depth. Deterministic.
pub fn is_isomorphic_bruteforce(
    g: &Enumeration,
    h: &Enumeration,
    bound: u64,
) -> Result<bool, OracleError> {
    for side in [g, h] {
        if side.order() > bound {
            return Err(OracleError::Budget { order: side.order(), bound });
        }
    }
    if g.order() != h.order() || g.prime() != h.prime() {
        return Ok(false);
    }
    let gens = minimal_generators(g);
    let d = gens.len();
    if d == 0 {
        return Ok(true); // both are trivial groups of equal order 1
    }

    // Candidate images per generator, by matching signature.
    let g_derived = g.derived_subgroup();
    let h_derived = h.derived_subgroup();
    let h_sigs: Vec<(u64, bool, u32)> =
        (0..h.order()).map(|i| element_signature(h, &h_derived, i)).collect();
    let mut candidates: Vec<Vec<u64>> = Vec::with_capacity(d);
    for &gi in &gens {
        let sig = element_signature(g, &g_derived, gi);
        let list: Vec<u64> = (0..h.order()).filter(|&i| h_sigs[i as usize] == sig).collect();
        if list.is_empty() {
            return Ok(false);
        }
        candidates.push(list);
    }

    // For each prefix length t, the closure of <gens[0..=t]> in BFS order and
    // the Cayley edge targets x * gens[s]; the same walk is replayed in `h`
    // for every candidate tuple.
    let mut closure_lists: Vec<Vec<u64>> = Vec::with_capacity(d);
    let mut edge_targets: Vec<Vec<u64>> = Vec::with_capacity(d);
    for t in 0..d {
        let mut in_set = vec![false; g.order() as usize];
        in_set[0] = true;
        let mut list = vec![0u64];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for s in 0..=t {
                let y = g.mul_idx(x, gens[s]);
                if !in_set[y as usize] {
                    in_set[y as usize] = true;
                    list.push(y);
                }
            }
        }
        let mut targets = Vec::with_capacity(list.len() * (t + 1));
        for &x in &list {
            for s in 0..=t {
                targets.push(g.mul_idx(x, gens[s]));
            }
        }
        closure_lists.push(list);
        edge_targets.push(targets);
    }
    assert_eq!(
        closure_lists[d - 1].len() as u64,
        g.order(),
        "minimal generators must generate the whole group"
    );

    // Position of each element inside its prefix closure, for map indexing.
    let replay = |t: usize, images: &[u64]| -> bool {
        let list = &closure_lists[t];
        let targets = &edge_targets[t];
        let mut map: Vec<u64> = vec![u64::MAX; g.order() as usize];
        let mut used = vec![false; h.order() as usize];
        map[0] = 0;
        used[0] = true;
        for (pos, &x) in list.iter().enumerate() {
            let mx = map[x as usize];
            debug_assert_ne!(mx, u64::MAX, "BFS order maps parents first");
            for s in 0..=t {
                let y = targets[pos * (t + 1) + s];
                let z = h.mul_idx(mx, images[s]);
                let slot = &mut map[y as usize];
                if *slot == u64::MAX {
                    if used[z as usize] {
                        return false;
                    }
                    *slot = z;
                    used[z as usize] = true;
                } else if *slot != z {
                    return false;
                }
            }
        }
        true
    };

    fn dfs(
        depth: usize,
        d: usize,
        candidates: &[Vec<u64>],
        images: &mut Vec<u64>,
        replay: &dyn Fn(usize, &[u64]) -> bool,
    ) -> bool {
        if depth == d {
            return true;
        }
        for &cand in &candidates[depth] {
            images.push(cand);
            if replay(depth, images) && dfs(depth + 1, d, candidates, images, replay) {
                return true;
            }
            images.pop();
        }
        false
    }

    let mut images = Vec::with_capacity(d);
    Ok(dfs(0, d, &candidates, &mut images, &replay))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::enumeration::Enumeration;
    use crate::pcgroup::inner_abelian::{abelian, mp, mp1};
    use crate::pcgroup::presentation::PcPresentation;

    fn en(p: &PcPresentation) -> Enumeration {
        Enumeration::new(p, 1 << 20).unwrap()
    }

    #[test]
    fn abelianization_of_metacyclic_groups() {
        let f = fingerprint(&en(&mp(3, 2, 1).unwrap()));
        assert_eq!(f.abelianization, vec![1, 1]);
        let f = fingerprint(&en(&mp(3, 3, 1).unwrap()));
        assert_eq!(f.abelianization, vec![2, 1]);
        let f = fingerprint(&en(&abelian(3, &[2, 1]).unwrap()));
        assert_eq!(f.abelianization, vec![2, 1]);
    }

    #[test]
    fn fingerprint_distinguishes_exponent_9_from_exponent_3() {
        let f1 = fingerprint(&en(&mp(3, 2, 1).unwrap()));
        let f2 = fingerprint(&en(&mp1(3, 1, 1).unwrap()));
        assert_eq!(f1.order, f2.order);
        assert_ne!(f1.exponent, f2.exponent);
        assert_ne!(f1, f2);
    }

    #[test]
    fn oracle_on_identical_and_distinct_groups() {
        let a = en(&mp1(3, 1, 1).unwrap());
        let b = en(&mp(3, 2, 1).unwrap());
        assert!(is_isomorphic_bruteforce(&a, &a, 243).unwrap());
        assert!(!is_isomorphic_bruteforce(&a, &b, 243).unwrap());
    }

    #[test]
    fn oracle_matches_swapped_presentations() {
        // Swapping the generator roles gives a different presentation of an
        // isomorphic group.
        let a = en(&mp1(3, 2, 1).unwrap());
        let b = en(&mp1(3, 1, 2).unwrap());
        assert!(is_isomorphic_bruteforce(&a, &b, 243).unwrap());
        assert_eq!(fingerprint(&a), fingerprint(&b));
    }

    #[test]
    fn oracle_budget() {
        let a = en(&mp(3, 3, 3).unwrap());
        assert!(matches!(
            is_isomorphic_bruteforce(&a, &a, 243),
            Err(OracleError::Budget { .. })
        ));
    }

    #[test]
    fn minimal_generators_have_frattini_rank() {
        let g = en(&mp1(3, 1, 1).unwrap());
        assert_eq!(minimal_generators(&g).len(), 2);
        let g = en(&abelian(3, &[2, 1, 1]).unwrap());
        assert_eq!(minimal_generators(&g).len(), 3);
        let g = en(&mp(3, 2, 2).unwrap());
        assert_eq!(minimal_generators(&g).len(), 2);
    }

    #[test]
    fn abelian_oracle_cases() {
        let a = en(&abelian(3, &[2, 1]).unwrap());
        let b = en(&abelian(3, &[1, 2]).unwrap());
        let c = en(&abelian(3, &[1, 1, 1]).unwrap());
        assert!(is_isomorphic_bruteforce(&a, &b, 243).unwrap());
        assert!(!is_isomorphic_bruteforce(&a, &c, 243).unwrap());
    }
}
