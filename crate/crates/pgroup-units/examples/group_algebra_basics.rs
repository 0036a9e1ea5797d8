//! First steps in the modular group algebra F_p[G].
//!
//! Elements are dense coefficient vectors over the enumerated group. The
//! augmentation map sends an element to the sum of its coefficients; units
//! of augmentation 1 form the normalized unit group V, and 1 + x is such a
//! unit for every x in the augmentation ideal.
//!
//! Run with `cargo run --example group_algebra_basics`.

use pgroup_units::algebra::GroupAlgebra;
use pgroup_units::pcgroup::enumeration::Enumeration;
use pgroup_units::pcgroup::inner_abelian::mp1;
use pgroup_units::rng::seeded;

fn main() {
    let pres = mp1(3, 1, 1).unwrap();
    let en = Enumeration::new(&pres, 27).unwrap();
    let alg = GroupAlgebra::new(&en, 27).unwrap();
    println!("F_3[G] with dim {} over the group of order {}", alg.dimension(), en.order());

    // Group elements embed as basis vectors and multiply through the group.
    let a = alg.basis(1);
    let b = alg.basis(en.order() - 1);
    let ab = alg.mul(&a, &b).unwrap();
    println!("a*b has support {:?}", ab.support());

    // A normalized unit and its inverse.
    let mut rng = seeded(11);
    let u = alg.random_normalized_unit(&mut rng);
    println!("\nrandom normalized unit: augmentation {}", alg.epsilon(&u));
    let inv = alg.normalized_inverse(&u).unwrap();
    println!("u * u^-1 == 1: {}", alg.mul(&u, &inv).unwrap() == alg.one());
    println!("multiplicative order of u: {}", alg.unit_order(&u).unwrap());

    // The p-th power map acts coefficientwise on central elements up to a
    // correction supported on the derived subgroup; `frobenius_split`
    // separates the two parts: x^p = s + d with s the termwise power and
    // d^2 = 0.
    let x = alg.random_element(&mut rng);
    let (s, d) = alg.frobenius_split(&x).unwrap();
    let xp = alg.pow(&x, 3).unwrap();
    println!("\nfrobenius split of a random x:");
    println!("  x^p == s + d: {}", alg.add(&s, &d).unwrap() == xp);
    println!("  d^2 == 0:     {}", alg.mul(&d, &d).unwrap().is_zero());

    // In class 2, powers of products expand with a binomial commutator
    // correction; the identity is checked exactly on group element pairs.
    let ga = 5 % en.order();
    let gb = 17 % en.order();
    println!("\nproduct power expansion at (g_{ga}, g_{gb}): {}", alg.abp_check(ga, gb).unwrap());

    // Class sums span the center of the algebra.
    let data = alg.class_sum_data().unwrap();
    println!("\nnoncentral class count t = {}", data.t());
    let ones = vec![1; data.t()];
    let c_elt = data.c_element(&alg, &ones).unwrap();
    println!("1 + sum of class sums commutes with G: {}", alg.commutes_with_group(&c_elt));
}
