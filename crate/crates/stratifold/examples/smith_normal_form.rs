//! Exact integer Smith normal form and elementary ideals.
//!
//! Run with: cargo run --example smith_normal_form

use stratifold::homology::{cokernel, elementary_ideal_gcd, minor_gcd_direct, smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
    println!("M =\n{m}");
    let snf = smith_normal_form(&m);
    println!("D =\n{}", snf.d);
    println!("divisors: {:?}", snf.divisors);
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
    println!("U·M·V = D verified, |det U| = {}, |det V| = {}",
        snf.u.determinant(), snf.v.determinant());

    // Elementary ideals: gcd of all (n−k)-minors equals the product of the
    // first n−k invariant factors. Two independent routes agree.
    for k in 0..=3usize {
        let via_snf = elementary_ideal_gcd(&m, k);
        let direct = minor_gcd_direct(&m, 3 - k);
        println!("e_{k} = {via_snf} (direct minor gcd: {direct})");
        assert_eq!(via_snf, direct);
    }

    // The cokernel is the presented abelian group.
    println!("coker(M) = {}", cokernel(&m, 0));
}
