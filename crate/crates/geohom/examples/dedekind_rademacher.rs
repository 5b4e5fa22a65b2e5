//! Dedekind sums, reciprocity, and the Rademacher symbol on a few matrices.
//!
//!     cargo run --example dedekind_rademacher

use geohom::exactmath::{dedekind_sum, int, rademacher_psi, rat_string, Mat};

fn main() {
    for (a, c) in [(1, 3), (2, 5), (7, 11), (35, 74)] {
        let s = dedekind_sum(&int(a), &int(c)).unwrap();
        let t = dedekind_sum(&int(c), &int(a)).unwrap();
        println!("s({a},{c}) = {:<8} s({c},{a}) = {:<8} sum = {}", rat_string(&s), rat_string(&t), rat_string(&(s.clone() + t)));
    }
    for m in [Mat::t(), Mat::from_i64(0, -1, 1, 0), Mat::from_i64(7, -2, 11, -3), Mat::from_i64(26, -35, 55, -74)] {
        println!("Psi{m} = {}", rat_string(&rademacher_psi(&m)));
    }
}
