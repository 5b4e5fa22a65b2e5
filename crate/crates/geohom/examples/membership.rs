//! Refuting membership of γ_Q in the subgroup generated by the non-T
//! generators, for fields with h+ = 2.
//!
//!     cargo run --example membership -- 11

use geohom::concentration::refute_membership_report;
use geohom::exactmath::{int, Int};
use geohom::modcurve::Level;

fn main() {
    let p: Int = std::env::args().nth(1).unwrap_or_else(|| "11".into()).parse().expect("integer p");
    let l = Level::new(&p).unwrap();
    for d in [5i64, 12, 92, 177, 237, 321, 413, 501] {
        let r = refute_membership_report(&l, &int(d)).unwrap();
        println!("{}", r.to_json());
    }
}
