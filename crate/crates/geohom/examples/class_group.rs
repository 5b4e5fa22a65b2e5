//! Narrow class group, genus characters and the fundamental unit of Q(√d).
//!
//!     cargo run --example class_group -- 1756

use geohom::concentration::Discriminant;
use geohom::exactmath::Int;
use geohom::quadforms::{genus_signature, narrow_class_group};

fn main() {
    let d: Int = std::env::args().nth(1).unwrap_or_else(|| "92".into()).parse().expect("integer d");
    let g = narrow_class_group(&d).expect("positive fundamental discriminant");
    let disc = Discriminant::new(&d).unwrap();
    println!("d = {d}, h+ = {}, unit of norm -1: {}", g.h_plus(), disc.norm_minus_one);
    println!("u^2 - d v^2 = 4 with (u, v) = ({}, {})", disc.unit.u2, disc.unit.v2);
    let chars: Vec<String> = disc.characters.iter().map(|c| format!("({}, {})", c.d1, c.d2)).collect();
    println!("genus characters: {}", chars.join(" "));
    for (i, c) in g.classes().iter().enumerate() {
        let tag = if i == g.identity() { "I" } else if i == disc.j_index { "J" } else { "" };
        println!(
            "[{i}] {:<16} {tag:<2} cycle {:>3}  genus {:?}  square -> [{}]",
            c.fingerprint.to_string(),
            c.cycle.len(),
            genus_signature(&c.fingerprint).unwrap(),
            g.mul(i, i)
        );
    }
}
