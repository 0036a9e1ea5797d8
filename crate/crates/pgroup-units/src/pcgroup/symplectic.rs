//! The commutator pairing on G modulo its center, as a symplectic form over
//! GF(p), and Darboux bases for it.
//!
//! For a nonabelian group in this class, [x, y] = c^{f(x̄,ȳ)} defines a
//! nondegenerate alternating bilinear form on the elementary abelian quotient
//! G/ζG. A Darboux basis splits the quotient into hyperbolic pairs; lifting
//! the pairs back to G exhibits the generating subgroups used throughout the
//! structure theory.

use thiserror::Error;

use crate::fp;

use super::enumeration::Enumeration;
use super::presentation::{GroupElement, PcPresentation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("the commutator form is only defined for nonabelian groups")]
    Abelian,
    #[error("the commutator form is degenerate on the chosen basis")]
    Degenerate,
}

/// The commutator form f(x̄, ȳ) on a fixed basis of G/ζG, together with
/// lifts of the basis vectors to G.
#[derive(Debug, Clone)]
pub struct SymplecticForm {
    p: u64,
    basis: Vec<GroupElement>,
    matrix: Vec<Vec<u64>>,
}

impl SymplecticForm {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Lifts to G of the quotient basis vectors.
    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    /// matrix[i][j] is the exponent r with [b_i, b_j] = c^r.
    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    /// Form value on coordinate vectors over the basis.
    pub fn pairing(&self, u: &[u64], v: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (i, &ui) in u.iter().enumerate() {
            if ui % self.p == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                acc = (acc + ui % self.p * (vj % self.p) % self.p * self.matrix[i][j]) % self.p;
            }
        }
        acc
    }

    /// Lift of a coordinate vector to a group element (product of basis
    /// lifts with the given exponents).
    pub fn lift(&self, coords: &[u64], pres: &PcPresentation) -> GroupElement {
        let mut acc = pres.identity();
        for (b, &e) in self.basis.iter().zip(coords) {
            if e != 0 {
                acc = pres.mul(&acc, &pres.pow(b, e as i64));
            }
        }
        acc
    }
}

/// Builds the commutator form of a nonabelian enumerated group on a greedy
/// basis of G/ζG: elements are scanned in index order and kept whenever they
/// leave the span of the center and the lifts chosen so far.
pub fn symplectic_form(en: &Enumeration) -> Result<SymplecticForm, SymplecticError> {
    let pres = en.presentation();
    let p = pres.prime();
    if en.center().len() as u64 == en.order() {
        return Err(SymplecticError::Abelian);
    }
    // Incremental span of ζG and the chosen lifts. Every span S here
    // contains the derived subgroup, so S is normal, and x^p is central for
    // every x (commutators have order p), so adjoining x just unions the
    // cosets S x^i for i < p.
    let mut in_span = vec![false; en.order() as usize];
    let mut members: Vec<u64> = en.center().to_vec();
    for &z in &members {
        in_span[z as usize] = true;
    }
    let mut basis = Vec::new();
    for idx in 0..en.order() {
        if in_span[idx as usize] {
            continue;
        }
        let x = en.element(idx).clone();
        basis.push(x.clone());
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
    let d = basis.len();
    let matrix: Vec<Vec<u64>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| pres.comm_exp_elements(a, b)).collect())
        .collect();
    let det = fp::Mat::from_rows(p, matrix.clone()).det();
    if det == 0 {
        return Err(SymplecticError::Degenerate);
    }
    debug_assert_eq!(en.order(), en.center().len() as u64 * p.pow(d as u32));
    Ok(SymplecticForm { p, basis, matrix })
}

/// Darboux basis of a symplectic form, as coordinate-vector pairs
/// (x̄_i, ȳ_i) over the form's basis with pairing(x̄_i, ȳ_j) = δ_ij and all
/// x-x and y-y pairings zero.
///
/// Deterministic choices: the lowest-index remaining vector that has a
/// non-orthogonal partner, its lowest-index partner, and the partner (never
/// the first vector) is rescaled to make the pairing 1.
pub fn symplectic_basis(
    form: &SymplecticForm,
) -> Result<Vec<(Vec<u64>, Vec<u64>)>, SymplecticError> {
    let p = form.p;
    let d = form.dimension();
    if d == 0 {
        return Err(SymplecticError::Abelian);
    }
    let mut remaining: Vec<Vec<u64>> = (0..d)
        .map(|i| {
            let mut e = vec![0u64; d];
            e[i] = 1;
            e
        })
        .collect();
    let mut pairs = Vec::new();
    while !remaining.is_empty() {
        let mut found = None;
        'outer: for a in 0..remaining.len() {
            for b in 0..remaining.len() {
                if b != a && form.pairing(&remaining[a], &remaining[b]) != 0 {
                    found = Some((a, b));
                    break 'outer;
                }
            }
        }
        let Some((a, b)) = found else {
            return Err(SymplecticError::Degenerate);
        };
        let u = remaining[a].clone();
        let w = remaining[b].clone();
        let lambda = fp::inv_mod(form.pairing(&u, &w), p);
        let v: Vec<u64> = w.iter().map(|&x| x * lambda % p).collect();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        remaining.remove(hi);
        remaining.remove(lo);
        for t in remaining.iter_mut() {
            let ftv = form.pairing(t, &v);
            let ftu = form.pairing(t, &u);
            for i in 0..d {
                // t <- t - f(t,v) u + f(t,u) v over GF(p).
                let adj = (p - ftv) * u[i] % p + ftu * v[i] % p;
                t[i] = (t[i] + adj) % p;
            }
        }
        pairs.push((u, v));
    }
    Ok(pairs)
}

/// Convenience composition: form, Darboux basis, and lifts of every pair
/// back to the group.
pub fn darboux_pairs(
    en: &Enumeration,
) -> Result<Vec<(GroupElement, GroupElement)>, SymplecticError> {
    let form = symplectic_form(en)?;
    let pairs = symplectic_basis(&form)?;
    let pres = en.presentation();
    Ok(pairs
        .into_iter()
        .map(|(x, y)| (form.lift(&x, pres), form.lift(&y, pres)))
        .collect())
}
