//! The hyperbolic matrix of a level-p form, its word in the polygon
//! generators, and its homology class.
//!
//!     cargo run --example geodesic_word -- 11 -20 7 11

use geohom::exactmath::{int, rat_string, Int};
use geohom::geocoding::{geodesic, membership_refutation};
use geohom::modcurve::Level;
use geohom::quadforms::QuadForm;

fn main() {
    let args: Vec<Int> = std::env::args().skip(1).map(|s| s.parse().expect("integer")).collect();
    let (q, p) = if args.len() == 4 {
        (QuadForm::new(args[0].clone(), args[1].clone(), args[2].clone()).unwrap(), args[3].clone())
    } else {
        (QuadForm::from_i64(11, -20, 7), int(11))
    };
    let l = Level::new(&p).unwrap();
    let g = geodesic(&q, &l).expect("level-p form of fundamental discriminant");
    println!("Q = {}, d = {}", g.form, g.form.disc());
    println!("gamma_Q = {}", g.gamma);
    println!("word = {}   ({} letters)", g.word, g.word.length());
    println!("homology in [T, h1, ...] = {}", g.homology);
    println!("<C, w_E> = {}", rat_string(&g.pairing));
    println!("membership: {:?}", membership_refutation(&g.gamma, &l).unwrap());
}
