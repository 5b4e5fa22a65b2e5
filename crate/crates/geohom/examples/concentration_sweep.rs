//! A small concentration sweep, printed as CSV with a summary.
//!
//!     cargo run --release --example concentration_sweep -- 11 3000

use geohom::concentration::run_sweep;
use geohom::exactmath::{int, Int};
use geohom::modcurve::Level;

fn main() {
    let args: Vec<Int> = std::env::args().skip(1).map(|s| s.parse().expect("integer")).collect();
    let p = args.first().cloned().unwrap_or(int(11));
    let dmax = args.get(1).cloned().unwrap_or(int(2000));
    let l = Level::new(&p).unwrap();
    let s = run_sweep(&l, &dmax, false, 1).unwrap();
    s.write_csv(std::io::stdout().lock()).unwrap();
    let sum = &s.summary;
    eprintln!("{} rows; Spearman(d, sup distance) = {:?}; d* = {:?}", sum.rows, sum.spearman, sum.d_star.as_ref().map(|d| d.to_string()));
}
