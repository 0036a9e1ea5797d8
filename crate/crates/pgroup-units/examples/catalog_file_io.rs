//! Serialize a catalog to JSON and load it back.
//!
//! The file format is versioned and self-describing: prime, parameter
//! ranges, and one record per entry carrying the full presentation
//! (generators, power relations, commutator table) plus the expected
//! invariants. Parsing rebuilds real presentations and re-checks them.
//!
//! Run with `cargo run --example catalog_file_io`.

use pgroup_units::catalog::admissible_entries;
use pgroup_units::catalog::format::{
    catalog_file, entries_from_file, parse_json, read_catalog, write_catalog, Ranges,
};
use pgroup_units::pcgroup::enumeration::Enumeration;

fn main() {
    let entries = admissible_entries(3, 1, 1, 1, 2, None, 729).expect("sweep");
    let ranges = Ranges { n_max: 1, m_max: 1, k_max: 1, r_max: 2 };
    let file = catalog_file(3, ranges, &entries);

    let path = std::env::temp_dir().join("pgroup-catalog-example.json");
    write_catalog(&path, &file).expect("write");
    println!("wrote {} entries to {}", file.entries.len(), path.display());

    let loaded = read_catalog(&path).expect("read");
    println!("format {} v{}, prime {}", loaded.format, loaded.version, loaded.prime);

    let rebuilt = entries_from_file(&loaded).expect("rebuild");
    let first = &rebuilt[0];
    let en = Enumeration::new(&first.presentation, 729).expect("enumerate");
    println!(
        "first entry: {} at (n={},m={},k={},r={}), order {} == 3^{}: {}",
        first.type_id,
        first.params.n,
        first.params.m,
        first.params.k,
        first.params.r,
        en.order(),
        first.expected.order_exp,
        en.order() == 3u64.pow(first.expected.order_exp),
    );

    // Corrupt input is rejected with a positioned parse error and no
    // partial result.
    match parse_json("{ \"format\": \"pgroup-catalog\", ") {
        Ok(_) => println!("unexpected parse success"),
        Err(e) => println!("corrupt text: {e}"),
    }

    std::fs::remove_file(&path).ok();
}
