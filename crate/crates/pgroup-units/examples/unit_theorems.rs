//! The structural results about V(F_p[G]), checked live on two groups.
//!
//! The standard battery covers: the closed form for the order of the center
//! of V, coefficientwise p^l-th powers with constructed roots, the direct
//! decomposition of central units over V(F_p[center]) and class-sum
//! perturbations, the intersection of G with the power-unit factor, and the
//! omega layers of V against the augmentation ideals of the omega subgroups.
//!
//! One result is deliberately shown failing: for the pure metacyclic type
//! at k = 1 and center rank 2 the first omega layer is claimed to sit
//! properly inside 1 + Delta(G, Omega_1(G)), but the two sets are equal, and
//! the report carries the search evidence.
//!
//! Run with `cargo run --example unit_theorems`.

use pgroup_units::catalog::{build_entry, Params, TypeId};
use pgroup_units::theorems::{run_standard_checks, TheoremContext, Verdict};

fn battery(type_id: TypeId, params: Params) {
    let entry = build_entry(type_id, params).unwrap();
    let ctx = TheoremContext::for_entry(&entry, 6561, 729).unwrap();
    println!("{} (order {}):", ctx.descriptor().name, ctx.descriptor().order);
    for result in run_standard_checks(&ctx, 100, 0) {
        match &result.verdict {
            Verdict::Pass => {
                println!("  {:<22} pass", result.check);
                for note in &result.notes {
                    println!("      {note}");
                }
            }
            Verdict::Fail { witness } => println!("  {:<22} FAIL\n      {witness}", result.check),
            Verdict::Skipped { reason } => {
                println!("  {:<22} skipped ({reason})", result.check)
            }
        }
    }
    println!();
}

fn main() {
    // A clean run: one nonabelian block plus a rank-2 center.
    battery(TypeId::T1_5, Params { p: 3, n: 1, m: 1, k: 1, r: 2 });

    // The refuted case: every check passes except the strictness of the
    // first omega layer, which fails because the containment is an equality
    // for this group.
    battery(TypeId::T1_1, Params { p: 3, n: 1, m: 1, k: 1, r: 2 });

    // The same type with a rank-3 center: an extra central direct factor
    // revives the strict containment, and the report names a witness.
    battery(TypeId::T1_1, Params { p: 3, n: 1, m: 1, k: 1, r: 3 });
}
