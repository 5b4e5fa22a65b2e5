//! The Eisenstein pairing two ways: Dedekind sums on the matrix, and the
//! homology vector against the pairings of the basis.
//!
//!     cargo run --example eisenstein_pairing

use geohom::exactmath::{int, rat_string, Mat};
use geohom::geocoding::{basis_pairings, class_of, eisenstein_pairing, pairing_of_vector};
use geohom::modcurve::Level;

fn main() {
    let p = int(11);
    let l = Level::new(&p).unwrap();
    let b: Vec<String> = basis_pairings(&l.basis).unwrap().iter().map(rat_string).collect();
    println!("basis pairings: {}", b.join(", "));
    let h = l.gens.hyperbolic();
    let samples = [
        Mat::from_i64(26, -35, 55, -74),
        &(h[0] * h[1]) * &Mat::t(),
        &(h[1] * &Mat::t_pow(&int(-3))) * &h[0].inverse(),
        Mat::from_i64(1, 0, 11, 1),
    ];
    for g in samples {
        let v = class_of(&g, &l).unwrap();
        println!(
            "{:<22} class {:<12} Dedekind {:>6}   basis {:>6}",
            g.to_string(),
            v.to_string(),
            rat_string(&eisenstein_pairing(&g, &p).unwrap()),
            rat_string(&pairing_of_vector(&v, &l.basis).unwrap())
        );
    }
}
