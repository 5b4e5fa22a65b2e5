//! The Hecke genus identity: Σ_A <C_A, w_E> χ(A) against class numbers of
//! the two imaginary quadratic fields behind χ.
//!
//!     cargo run --example hecke_identity -- 11 1756

use geohom::concentration::{hecke_identity_check, Discriminant};
use geohom::exactmath::{rat_string, Int};

fn main() {
    let args: Vec<Int> = std::env::args().skip(1).map(|s| s.parse().expect("integer")).collect();
    let (p, d) = match args.as_slice() {
        [p, d] => (p.clone(), d.clone()),
        _ => ("11".parse().unwrap(), "92".parse().unwrap()),
    };
    let disc = Discriminant::new(&d).expect("positive fundamental discriminant");
    let rep = hecke_identity_check(&p, &disc).expect("p must split");
    for (f, e) in rep.forms.iter().zip(&rep.pairings) {
        println!("{:<18} <C, w_E> = {}", f.to_string(), rat_string(e));
    }
    for r in &rep.rows {
        println!(
            "chi = ({:>4}, {:>5}): L = {:<6} chi(J) = {:>2} chi(A_p) = {:>2}  lhs = {:<8} rhs = {:<8} {}",
            r.chi.d1,
            r.chi.d2,
            rat_string(&r.l_value),
            r.chi_j,
            r.chi_ap,
            rat_string(&r.lhs),
            rat_string(&r.rhs),
            if r.holds() { "ok" } else { "MISMATCH" }
        );
    }
}
