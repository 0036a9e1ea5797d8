//! Walk the catalog of nineteen group types.
//!
//! Each type is a recipe: a leading block (metacyclic or not), optional
//! further nonabelian factors amalgamated over the common commutator, and a
//! free abelian padding that brings the center to rank r. `admissible_entries`
//! sweeps the parameter box and `verify_entry` replays every structural
//! invariant against the actual group.
//!
//! Run with `cargo run --example catalog_tour`.

use pgroup_units::catalog::{admissible_entries, build_entry, verify_entry, Params, TypeId};

fn main() {
    let entries = admissible_entries(3, 1, 1, 2, 2, None, 729).expect("sweep");
    println!("admissible entries at p=3, n=m=1, k<=2, r=2, order <= 3^6:");
    println!("{:<6} {:<14} {:<8} {:<4} verified", "type", "(n,m,k,r)", "order", "tag");
    for entry in &entries {
        let q = entry.params;
        let report = verify_entry(entry, 729);
        println!(
            "{:<6} ({},{},{},{})      3^{:<6} {:<4} {}",
            entry.type_id.to_string(),
            q.n,
            q.m,
            q.k,
            q.r,
            entry.expected.order_exp,
            entry.expected.center_tag.to_string(),
            report.passed
        );
    }

    // The per-type constraints are enforced: type 1.2 needs two symplectic
    // pairs, type 1.6 needs n strictly larger than m.
    println!();
    for (t, params) in [
        (TypeId::T1_2, Params { p: 3, n: 1, m: 1, k: 1, r: 2 }),
        (TypeId::T1_6, Params { p: 3, n: 1, m: 1, k: 1, r: 2 }),
    ] {
        match build_entry(t, params) {
            Ok(_) => println!("{t} unexpectedly accepted"),
            Err(e) => println!("{t} rejects (n=m=k=1): {e}"),
        }
    }

    // A verification report is itemized; here is one in full.
    let entry = build_entry(TypeId::T1_11, Params { p: 3, n: 1, m: 1, k: 1, r: 2 }).unwrap();
    let report = verify_entry(&entry, 729);
    println!("\nreport for 1.11 at (1,1,1,2):");
    for check in &report.checks {
        println!("  {:<18} {:<5} {}", check.name, check.passed, check.details);
    }
}
