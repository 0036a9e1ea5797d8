//! Constructors for the building-block groups: the two families of inner
//! abelian p-groups (minimal nonabelian, with derived subgroup of order p)
//! and finite abelian p-groups.
//!
//! `mp(p, n, m)` builds the metacyclic group
//! `<a, b | a^{p^n} = b^{p^m} = 1, [a, b] = a^{p^{n-1}}>` with `n >= 2`, and
//! `mp1(p, n, m)` builds the non-metacyclic group
//! `<a, b, c | a^{p^n} = b^{p^m} = c^p = 1, [a, b] = c, c central>`.
//! Both are laid out on generators of relative order p for the noncentral
//! part: `a` and `b` keep relative order p and feed central generators
//! `z1 = a^p`, `z2 = b^p` when `n` or `m` exceeds 1.

use thiserror::Error;

use super::presentation::{Generator, PcPresentation, PresentationError};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("parameters out of range: {0}")]
    Parameter(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

fn gen(name: &str, order_exp: u32, central: bool) -> Generator {
    Generator { name: name.to_string(), order_exp, central }
}

/// Abelian p-group with one central generator of order `p^e` per entry.
pub fn abelian(p: u64, exps: &[u32]) -> Result<PcPresentation, BuildError> {
    if exps.iter().any(|&e| e == 0) {
        return Err(BuildError::Parameter("abelian invariants must be positive".into()));
    }
    let s = exps.len();
    let gens = exps
        .iter()
        .enumerate()
        .map(|(i, &e)| gen(&format!("z{}", i + 1), e, true))
        .collect();
    Ok(PcPresentation::new(
        p,
        gens,
        vec![vec![0; s]; s],
        vec![vec![0; s]; s],
        vec![0; s],
    )?)
}

/// Cyclic group of order `p^t`.
pub fn cyclic(p: u64, t: u32) -> Result<PcPresentation, BuildError> {
    abelian(p, &[t])
}

/// The metacyclic inner abelian group M_p(n, m) of order p^{n+m}, n >= 2.
pub fn mp(p: u64, n: u32, m: u32) -> Result<PcPresentation, BuildError> {
    if n < 2 || m < 1 {
        return Err(BuildError::Parameter(format!(
            "metacyclic family needs n >= 2 and m >= 1, got n={n}, m={m}"
        )));
    }
    let mut gens = vec![gen("a", 1, false), gen("b", 1, false)];
    let z1 = gens.len();
    gens.push(gen("z1", n - 1, true));
    let z2 = if m >= 2 {
        gens.push(gen("z2", m - 1, true));
        Some(gens.len() - 1)
    } else {
        None
    };
    let s = gens.len();
    let mut powers = vec![vec![0u64; s]; s];
    powers[0][z1] = 1;
    if let Some(z2) = z2 {
        powers[1][z2] = 1;
    }
    // [a, b] = a^{p^{n-1}} = z1^{p^{n-2}}.
    let mut comm = vec![vec![0u64; s]; s];
    comm[1][0] = 1;
    comm[0][1] = p - 1;
    let mut derived = vec![0u64; s];
    derived[z1] = p.pow(n - 2);
    Ok(PcPresentation::new(p, gens, powers, comm, derived)?)
}

/// The non-metacyclic inner abelian group M_p(n, m, 1) of order p^{n+m+1}.
pub fn mp1(p: u64, n: u32, m: u32) -> Result<PcPresentation, BuildError> {
    if n < 1 || m < 1 {
        return Err(BuildError::Parameter(format!(
            "non-metacyclic family needs n, m >= 1, got n={n}, m={m}"
        )));
    }
    let mut gens = vec![gen("a", 1, false), gen("b", 1, false)];
    let z1 = if n >= 2 {
        gens.push(gen("z1", n - 1, true));
        Some(gens.len() - 1)
    } else {
        None
    };
    let z2 = if m >= 2 {
        gens.push(gen("z2", m - 1, true));
        Some(gens.len() - 1)
    } else {
        None
    };
    gens.push(gen("c", 1, true));
    let c = gens.len() - 1;
    let s = gens.len();
    let mut powers = vec![vec![0u64; s]; s];
    if let Some(z1) = z1 {
        powers[0][z1] = 1;
    }
    if let Some(z2) = z2 {
        powers[1][z2] = 1;
    }
    let mut comm = vec![vec![0u64; s]; s];
    comm[1][0] = 1;
    comm[0][1] = p - 1;
    let mut derived = vec![0u64; s];
    derived[c] = 1;
    Ok(PcPresentation::new(p, gens, powers, comm, derived)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_the_families() {
        assert_eq!(mp(3, 2, 1).unwrap().order(), 27);
        assert_eq!(mp(3, 3, 2).unwrap().order(), 3u128.pow(5));
        assert_eq!(mp1(3, 1, 1).unwrap().order(), 27);
        assert_eq!(mp1(5, 2, 1).unwrap().order(), 5u128.pow(4));
        assert_eq!(cyclic(3, 4).unwrap().order(), 81);
        assert_eq!(abelian(7, &[2, 1]).unwrap().order(), 343);
    }

    #[test]
    fn families_are_consistent() {
        for (n, m) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            assert!(mp(3, n, m).unwrap().consistency_check().is_ok());
            assert!(mp1(3, n, m).unwrap().consistency_check().is_ok());
        }
        assert!(mp1(3, 1, 1).unwrap().consistency_check().is_ok());
        assert!(mp1(5, 1, 1).unwrap().consistency_check().is_ok());
    }

    #[test]
    fn derived_element_is_commutator_of_the_generators() {
        for g in [mp(3, 2, 1).unwrap(), mp(3, 3, 2).unwrap(), mp1(3, 2, 2).unwrap()] {
            let a = g.generator(0);
            let b = g.generator(1);
            assert_eq!(g.commutator(&a, &b), g.derived_element());
            assert_eq!(g.element_order(&g.derived_element()), 3);
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(mp(3, 1, 1).is_err());
        assert!(mp1(3, 0, 1).is_err());
        assert!(abelian(3, &[0]).is_err());
        assert!(mp(4, 2, 1).is_err());
        assert!(mp(2, 2, 1).is_err());
    }
}
