//! Amalgamated central products, and how the catalog instances arise.
//!
//! `central_product(h, k, idents)` glues two presentations along central
//! identifications: each pair (x, y) forces x = y in the product. With no
//! identifications it degenerates to the direct product. The catalog builds
//! all of its multi-block groups this way, always gluing over the common
//! derived element c.
//!
//! Run with `cargo run --example central_products`.

use pgroup_units::catalog::{build_entry, Params, TypeId};
use pgroup_units::pcgroup::central_product::{central_product, direct_product};
use pgroup_units::pcgroup::enumeration::Enumeration;
use pgroup_units::pcgroup::fingerprint::{fingerprint, is_isomorphic_bruteforce};
use pgroup_units::pcgroup::inner_abelian::{cyclic, mp1};

fn main() {
    let heis = mp1(3, 1, 1).unwrap();
    println!("building block: order {}", heis.order());

    // Gluing two copies over c divides one factor of p out of the direct
    // product: 27 * 27 / 3 = 243.
    let c = heis.derived_element();
    let glued = central_product(&heis, &heis, &[(c.clone(), c)]).unwrap();
    println!("glued over c:   order {}", glued.order());

    // A plain direct product of two nonabelian factors is rejected: it
    // would have a derived subgroup of order p^2, leaving the class.
    match direct_product(&heis, &heis) {
        Ok(_) => println!("unexpected direct product of two nonabelian factors"),
        Err(e) => println!("unglued product: {e}"),
    }

    // The glued product has center of rank 1, one step short of the catalog
    // class; a cyclic direct factor brings the center to rank 2 and lands
    // exactly on the type 1.5 instance with two symplectic pairs.
    let padded = direct_product(&glued, &cyclic(3, 1).unwrap()).unwrap();
    let entry = build_entry(TypeId::T1_5, Params { p: 3, n: 1, m: 1, k: 2, r: 2 }).unwrap();

    let a = Enumeration::new(&padded, 729).unwrap();
    let b = Enumeration::new(&entry.presentation, 729).unwrap();
    println!("\nhand-built padded product vs catalog 1.5 at (1,1,2,2):");
    println!("  fingerprints equal: {}", fingerprint(&a) == fingerprint(&b));
    println!(
        "  exhaustive isomorphism search: {}",
        is_isomorphic_bruteforce(&a, &b, 729).unwrap()
    );

    // Identifications must be central elements of equal order; gluing c to a
    // noncentral generator is rejected.
    let bad = central_product(&heis, &heis, &[(heis.generator(0), heis.derived_element())]);
    match bad {
        Ok(_) => println!("unexpectedly glued a noncentral element"),
        Err(e) => println!("\nnoncentral identification: {e}"),
    }
}
