//! Hecke matrices on H1(Y0(p)), the Eisenstein eigenvector, and the Fricke
//! and ι actions.
//!
//!     cargo run --example hecke_operators -- 23

use geohom::exactmath::{int, Int, Mat};
use geohom::geocoding::{class_of, fricke, hecke_matrix, iota};
use geohom::modcurve::Level;

fn main() {
    let p: Int = std::env::args().nth(1).unwrap_or_else(|| "11".into()).parse().expect("integer p");
    let l = Level::new(&p).unwrap();
    for n in [2i64, 3, 5, 7] {
        if int(n) == p {
            continue;
        }
        let cols = hecke_matrix(&int(n), &l).unwrap();
        println!("T_{n} (columns = images of T, h1, ...):");
        for i in 0..cols.len() {
            let row: Vec<String> = cols.iter().map(|c| format!("{:>4}", c.0[i])).collect();
            println!("  {}", row.join(""));
        }
    }
    let w = fricke(&Mat::t(), &p).unwrap();
    println!("W_p T W_p = {w}, class {}", class_of(&w, &l).unwrap());
    println!("iota(T) = {}, class {}", iota(&Mat::t()), class_of(&iota(&Mat::t()), &l).unwrap());
}
