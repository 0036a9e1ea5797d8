//! The symplectic geometry of G over its center.
//!
//! When G has class 2 and derived subgroup of order p generated by c, the
//! commutator map [x, y] = c^f(x,y) induces a nondegenerate alternating form
//! f on the elementary abelian quotient G/center. A Darboux basis splits the
//! quotient into k hyperbolic planes; its lifts to G are generator pairs
//! with [x_i, y_i] = c and all other commutators trivial.
//!
//! Run with `cargo run --example symplectic_darboux`.

use pgroup_units::catalog::{build_entry, Params, TypeId};
use pgroup_units::pcgroup::enumeration::Enumeration;
use pgroup_units::pcgroup::symplectic::{darboux_pairs, symplectic_form};

fn main() {
    // Two symplectic pairs: the type 1.5 instance with k = 2 glues two
    // copies of the smallest nonabelian block over their commutator.
    let entry = build_entry(TypeId::T1_5, Params { p: 3, n: 1, m: 1, k: 2, r: 2 }).unwrap();
    let en = Enumeration::new(&entry.presentation, 729).unwrap();
    let pres = en.presentation();

    let form = symplectic_form(&en).expect("nonabelian, so the form exists");
    println!("coset basis of G/center, with the form matrix ([b_i, b_j] = c^m_ij):");
    for (row, b) in form.matrix().iter().zip(form.basis()) {
        println!("  {:<8} {row:?}", pres.format_element(b));
    }

    let pairs = darboux_pairs(&en).expect("nondegenerate");
    println!("\ndarboux pairs (k = {}):", pairs.len());
    for (x, y) in &pairs {
        println!(
            "  x = {:<8} y = {:<8} [x,y] = {}",
            pres.format_element(x),
            pres.format_element(y),
            pres.format_element(&pres.commutator(x, y)),
        );
    }

    // Cross commutators between different pairs vanish.
    let (x0, _) = &pairs[0];
    let (_, y1) = &pairs[1];
    println!("  [x_0, y_1] = {} (trivial)", pres.format_element(&pres.commutator(x0, y1)));

    // Degenerate input: abelian groups have no symplectic structure.
    let flat = pgroup_units::pcgroup::inner_abelian::abelian(3, &[1, 1]).unwrap();
    let flat_en = Enumeration::new(&flat, 9).unwrap();
    match symplectic_form(&flat_en) {
        Ok(_) => println!("unexpected form on an abelian group"),
        Err(e) => println!("\nabelian group: {e}"),
    }
}
