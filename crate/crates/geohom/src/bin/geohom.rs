use std::fs::File;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use geohom::concentration::{hecke_identity_check, run_sweep, Discriminant};
use geohom::exactmath::{rat_string, Int};
use geohom::geocoding::{geodesic_with_unit, hecke_matrix, pairing_of_vector};
use geohom::json::int_value;
use geohom::modcurve::Level;
use geohom::quadforms::{genus_signature, level_p_classes, narrow_class_group, sqrt_mod_4p};
use geohom::Error;

#[derive(Parser)]
#[command(name = "geohom", version, about = "Closed geodesics on X0(p) from real quadratic class groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Farey symbol, generators and genus data of Gamma0(p)
    Farey {
        #[arg(long)]
        level: Int,
        #[arg(long)]
        json: bool,
    },
    /// Word and homology class of the geodesic of one narrow class
    Geodesic {
        #[arg(long)]
        level: Int,
        #[arg(long)]
        disc: Int,
        /// class index in the sorted class list; defaults to the principal class
        #[arg(long)]
        class_index: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Sweep qualifying discriminants and write the CSV
    Concentrate {
        #[arg(long)]
        level: Int,
        #[arg(long)]
        max_disc: Int,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        json: bool,
        /// fill the elapsed_ms column (makes output run-dependent)
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value_t = default_threads())]
        threads: usize,
    },
    /// Hecke identity and decomposition checks for one (p, d)
    Verify {
        #[arg(long)]
        level: Int,
        #[arg(long)]
        disc: Int,
        #[arg(long)]
        json: bool,
    },
    /// Narrow class group, genera and units of Q(sqrt d)
    Classgroup {
        #[arg(long)]
        disc: Int,
        #[arg(long)]
        json: bool,
    },
    /// Matrix of T_n on the homology basis
    Hecke {
        #[arg(long)]
        level: Int,
        #[arg(long)]
        n: Int,
        #[arg(long)]
        json: bool,
    },
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Ok(true): all checks passed; Ok(false): a verification failed.
type Outcome = geohom::Result<bool>;

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn farey(level: &Int, as_json: bool) -> Outcome {
    let l = Level::new(level)?;
    if as_json {
        print(&l.to_json());
        return Ok(true);
    }
    let d = &l.data;
    println!("p = {}  g = {}  e2 = {}  e3 = {}  rank = {}", d.p, d.g, d.e2, d.e3, d.rank());
    let fr: Vec<String> = l.symbol.fractions.iter().map(|(a, b)| format!("{a}/{b}")).collect();
    println!("fractions: {}", fr.join(" "));
    for (i, s) in l.symbol.sides.iter().enumerate() {
        println!("  side {i}: {s:?}");
    }
    for (id, g) in l.gens.gens.iter().enumerate() {
        println!("  gen {id}: {} {:?}", g.mat, g.kind);
    }
    println!("minimal: {}", l.symbol.is_minimal());
    Ok(true)
}

fn geodesic(level: &Int, d: &Int, k: Option<usize>, as_json: bool) -> Outcome {
    let l = Level::new(level)?;
    let disc = Discriminant::new(d)?;
    let r = sqrt_mod_4p(d, level)?.ok_or_else(|| Error::Inert { p: level.to_string(), d: d.to_string() })?;
    let k = k.unwrap_or(disc.set.identity);
    let classes = level_p_classes(&disc.set, level, &r)?;
    let lc = classes
        .iter()
        .find(|c| c.label == k)
        .ok_or_else(|| Error::Invalid(format!("class index {k} out of range (h+ = {})", disc.set.h_plus())))?;
    let g = geodesic_with_unit(&lc.form, &l, &disc.unit)?;
    if as_json {
        print(&g.to_json());
    } else {
        println!("form: {}", g.form);
        println!("gamma: {}", g.gamma);
        println!("word: {}", g.word);
        println!("homology: {}", g.homology);
        println!("eisenstein pairing: {}", rat_string(&g.pairing));
        println!("word length: {}", g.word.length());
    }
    Ok(true)
}

fn concentrate(level: &Int, max: &Int, out: Option<&str>, as_json: bool, timing: bool, threads: usize) -> Outcome {
    let l = Level::new(level)?;
    let sweep = run_sweep(&l, max, timing, threads)?;
    match out {
        Some(path) => sweep.write_csv(BufWriter::new(File::create(path)?))?,
        None if !as_json => sweep.write_csv(io::stdout().lock())?,
        None => {}
    }
    let s = &sweep.summary;
    if as_json {
        print(&sweep.to_json());
    } else {
        eprintln!(
            "rows = {}  spearman(d, sup_distance) = {}  d* = {}  sign violations = {}",
            s.rows,
            s.spearman.map(|x| format!("{x:.6}")).unwrap_or_else(|| "n/a".into()),
            s.d_star.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "none".into()),
            s.sign_violations.len()
        );
    }
    Ok(s.sign_violations.is_empty())
}

fn verify(level: &Int, d: &Int, as_json: bool) -> Outcome {
    let l = Level::new(level)?;
    let disc = Discriminant::new(d)?;
    let rep = hecke_identity_check(level, &disc)?;
    let mut failures = Vec::new();
    for (form, e) in rep.forms.iter().zip(&rep.pairings) {
        // decompose re-evaluates its word, so success is the round trip
        let g = geodesic_with_unit(form, &l, &disc.unit)?;
        let via_word = pairing_of_vector(&g.homology, &l.basis)?;
        if &via_word != e {
            failures.push(format!("{form}: word pairing {} vs Rademacher {}", rat_string(&via_word), rat_string(e)));
        }
    }
    for row in rep.rows.iter().filter(|r| !r.holds()) {
        failures.push(format!(
            "chi = ({}, {}): {} != {}",
            row.chi.d1,
            row.chi.d2,
            rat_string(&row.lhs),
            rat_string(&row.rhs)
        ));
    }
    if as_json {
        let mut v = rep.to_json();
        v["failures"] = json!(failures);
        print(&v);
    } else {
        for (form, e) in rep.forms.iter().zip(&rep.pairings) {
            println!("{form}: <C, w_E> = {}", rat_string(e));
        }
        for row in &rep.rows {
            println!(
                "chi = ({}, {}): lhs = {}  rhs = {}  {}",
                row.chi.d1,
                row.chi.d2,
                rat_string(&row.lhs),
                rat_string(&row.rhs),
                if row.holds() { "ok" } else { "FAIL" }
            );
        }
        for f in &failures {
            println!("failure: {f}");
        }
    }
    Ok(failures.is_empty())
}

fn classgroup(d: &Int, as_json: bool) -> Outcome {
    let g = narrow_class_group(d)?;
    let disc = Discriminant::new(d)?;
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let f = &c.fingerprint;
            Ok(json!({
                "index": i,
                "form": [int_value(&f.a), int_value(&f.b), int_value(&f.c)],
                "cycle_length": c.cycle.len(),
                "genus": genus_signature(f)?,
                "inverse": g.inverse_index(i),
            }))
        })
        .collect::<geohom::Result<_>>()?;
    let chars: Vec<Value> = disc.characters.iter().map(|c| json!([c.d1, c.d2])).collect();
    let v = json!({
        "d": int_value(d),
        "h_plus": g.h_plus(),
        "identity": g.identity(),
        "j_index": disc.j_index,
        "norm_minus_one_unit": disc.norm_minus_one,
        "pell": [int_value(&disc.unit.u2), int_value(&disc.unit.v2)],
        "genus_characters": chars,
        "classes": classes,
        "table": g.table,
    });
    if as_json {
        print(&v);
    } else {
        println!("d = {d}  h+ = {}  norm -1 unit: {}", g.h_plus(), disc.norm_minus_one);
        println!("u2 = {}  v2 = {}", disc.unit.u2, disc.unit.v2);
        for (i, c) in g.classes().iter().enumerate() {
            let mark = if i == g.identity() {
                " (I)"
            } else if i == disc.j_index {
                " (J)"
            } else {
                ""
            };
            println!("  [{i}] {}{mark}  genus {:?}", c.fingerprint, genus_signature(&c.fingerprint)?);
        }
    }
    Ok(true)
}

fn hecke(level: &Int, n: &Int, as_json: bool) -> Outcome {
    let l = Level::new(level)?;
    let cols = hecke_matrix(n, &l)?;
    if as_json {
        print(&json!({
            "p": int_value(level),
            "n": int_value(n),
            "columns": cols.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        }));
    } else {
        println!("T_{n} on [T, h_1, ...] (column k is the image of basis element k):");
        let rank = cols.len();
        for i in 0..rank {
            let row: Vec<String> = cols.iter().map(|c| format!("{:>6}", c.0[i])).collect();
            println!("{}", row.join(" "));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Farey { level, json } => farey(level, *json),
        Cmd::Geodesic { level, disc, class_index, json } => geodesic(level, disc, *class_index, *json),
        Cmd::Concentrate { level, max_disc, out, json, timing, threads } => {
            concentrate(level, max_disc, out.as_deref(), *json, *timing, *threads)
        }
        Cmd::Verify { level, disc, json } => verify(level, disc, *json),
        Cmd::Classgroup { disc, json } => classgroup(disc, *json),
        Cmd::Hecke { level, n, json } => hecke(level, n, *json),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ Error::Defect(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
