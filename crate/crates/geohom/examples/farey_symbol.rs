//! Farey symbol of Γ0(p), its generators, and the structural checks.
//!
//!     cargo run --example farey_symbol -- 23

use geohom::exactmath::Int;
use geohom::modcurve::{verify_poincare, zagier_generators, Level};

fn main() {
    let p: Int = std::env::args().nth(1).unwrap_or_else(|| "11".into()).parse().expect("integer p");
    let l = Level::new(&p).expect("prime level");
    println!("g = {}, e2 = {}, e3 = {}, rank H1 = {}", l.data.g, l.data.e2, l.data.e3, l.data.rank());
    let fr: Vec<String> = l.symbol.fractions.iter().map(|(a, b)| format!("{a}/{b}")).collect();
    println!("fractions: {}", fr.join(", "));
    println!("sides: {:?}", l.symbol.sides);
    for g in &l.gens.gens {
        println!("  {:<24} {:?}", g.mat.to_string(), g.kind);
    }
    let rep = verify_poincare(&l.symbol);
    println!("checks ok: {}, minimal: {}", rep.ok(), rep.minimal);
    let z = zagier_generators(&p).unwrap();
    let inside = l.gens.hyperbolic().iter().filter(|h| z.contains(h) || z.contains(&h.inverse())).count();
    println!("{inside} of {} hyperbolic generators lie in the Zagier set", l.gens.hyperbolic().len());
}
