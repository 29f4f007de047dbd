//! Smith normal form of the A2 Cartan matrix.
//!
//! cargo run --example snf

use bgparam::lattice::{smith_normal_form, IntegerMatrix};

fn main() {
    let a = IntegerMatrix::from_i64(&[vec![2, -1], vec![-1, 2]]);
    let snf = smith_normal_form(&a);
    println!("A =\n{a}");
    println!("D =\n{}", snf.d);
    // U A V = D
    assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);
    let diag: Vec<String> = snf.diagonal().iter().map(|x| x.to_string()).collect();
    println!("invariant factors: {}", diag.join(", "));
    assert_eq!(diag, ["1", "3"]);
}
