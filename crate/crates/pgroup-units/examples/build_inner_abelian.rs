//! Construct the two-generator building blocks and do arithmetic in them.
//!
//! Every group in the catalog is assembled from three families:
//! - `mp(p, n, m)`: the metacyclic group with a of order p^n, b of order
//!   p^m, and [a, b] = a^(p^(n-1)),
//! - `mp1(p, n, m)`: the non-metacyclic block where the commutator c is a
//!   fresh central generator of order p,
//! - `abelian(p, exps)`: direct products of cyclic p-groups.
//!
//! Run with `cargo run --example build_inner_abelian`.

use pgroup_units::pcgroup::inner_abelian::{abelian, mp, mp1};
use pgroup_units::pcgroup::presentation::PcPresentation;

fn describe(label: &str, pres: &PcPresentation) {
    println!("{label}:");
    println!("  order {}", pres.order());
    println!(
        "  consistency: {}",
        match pres.consistency_check() {
            Ok(()) => "ok".to_string(),
            Err(violation) => violation.to_string(),
        }
    );

    // Multiply the first two generators both ways; in class 2 the commutator
    // lands in the center, so the two products differ by a power of c.
    let a = pres.generator(0);
    let b = pres.generator(1);
    let ab = pres.mul(&a, &b);
    let ba = pres.mul(&b, &a);
    println!("  a*b = {}", pres.format_element(&ab));
    println!("  b*a = {}", pres.format_element(&ba));
    println!("  [a,b] = {}", pres.format_element(&pres.commutator(&a, &b)));
    println!("  order of a*b: {}", pres.element_order(&ab));
    println!();
}

fn main() {
    // The smallest nonabelian case: both generators of order 3, extraspecial
    // of order 27 and exponent 3.
    describe("mp1(3,1,1), order 27", &mp1(3, 1, 1).expect("valid parameters"));

    // A metacyclic block: a has order 9 and its cube is the commutator.
    describe("mp(3,2,1), order 27", &mp(3, 2, 1).expect("valid parameters"));

    // A bigger non-metacyclic block at p = 5.
    describe("mp1(5,2,1), order 5^4", &mp1(5, 2, 1).expect("valid parameters"));

    describe("abelian(3, [2,1]), Z_9 x Z_3", &abelian(3, &[2, 1]).expect("valid parameters"));

    // Parameter validation is part of the constructors.
    let err = mp(3, 1, 1).unwrap_err();
    println!("mp(3,1,1) is rejected: {err}");
}
