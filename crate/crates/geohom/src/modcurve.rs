//! Combinatorial models of Γ₀(p) for prime p: genus data, the Zagier pairing
//! set, Farey symbols, their generators, and the homology basis.

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{int, is_prime, mod_inverse, ExtRat, Int, Mat};
use crate::json::{int_value, mat_value};

/// Genus and elliptic counts of X₀(p).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gamma0Data {
    pub p: i64,
    pub g: i64,
    pub e2: i64,
    pub e3: i64,
}

impl Gamma0Data {
    /// Rank of H₁(Y₀(p)), i.e. 2g + 1.
    pub fn rank(&self) -> usize {
        (2 * self.g + 1) as usize
    }
    /// Number of Farey sides, 4g + e2 + e3.
    pub fn sides(&self) -> usize {
        (4 * self.g + self.e2 + self.e3) as usize
    }
}

fn check_prime(p: &Int) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    p.to_i64().ok_or_else(|| Error::Invalid(format!("level {p} too large")))
}

pub fn gamma0_invariants(p: &Int) -> Result<Gamma0Data> {
    let p = check_prime(p)?;
    let e2 = match p {
        2 => 1,
        _ if p % 4 == 1 => 2,
        _ => 0,
    };
    let e3 = match p {
        3 => 1,
        _ if p % 3 == 1 => 2,
        _ => 0,
    };
    // 12g = 12 + (p+1) − 3 e2 − 4 e3 − 12·(2 cusps)/2
    let twelve_g = 12 + (p + 1) - 3 * e2 - 4 * e3 - 12;
    debug_assert_eq!(twelve_g % 12, 0);
    Ok(Gamma0Data { p, g: twelve_g / 12, e2, e3 })
}

/// One member of the pairing set (a, −(aa*+1)/p; p, −a*).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZagierElement {
    pub a: i64,
    pub a_star: i64,
    pub mat: Mat,
    pub elliptic: bool,
}

#[derive(Clone, Debug)]
pub struct ZagierSet {
    pub p: i64,
    /// T and (1,0;p,1)
    pub parabolic: Vec<Mat>,
    pub family: Vec<ZagierElement>,
}

impl ZagierSet {
    pub fn all(&self) -> impl Iterator<Item = &Mat> {
        self.parabolic.iter().chain(self.family.iter().map(|z| &z.mat))
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.all().any(|x| x == m)
    }
}

pub fn zagier_generators(p: &Int) -> Result<ZagierSet> {
    let pp = check_prime(p)?;
    let parabolic = vec![Mat::t(), Mat::from_i64(1, 0, pp, 1)];
    let mut family = Vec::new();
    for a in 1..pp {
        // a a* ≡ −1 mod p
        let inv = mod_inverse(&int(a), p).expect("p prime").to_i64().unwrap();
        let a_star = (pp - inv) % pp;
        let top_right = -(a * a_star + 1) / pp;
        family.push(ZagierElement {
            a,
            a_star,
            mat: Mat::new(int(a), int(top_right), int(pp), int(-a_star))?,
            elliptic: a == a_star,
        });
    }
    Ok(ZagierSet { p: pp, parabolic, family })
}

/// Label of one Farey side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Even,
    Odd,
    Paired(usize),
}

#[derive(Clone, Debug)]
pub struct FareySymbol {
    pub p: i64,
    /// a_i/b_i, from 0/1 to 1/1
    pub fractions: Vec<(i64, i64)>,
    /// one label per side i = [a_i/b_i, a_{i+1}/b_{i+1}]
    pub sides: Vec<Side>,
}

impl FareySymbol {
    pub fn n(&self) -> usize {
        self.sides.len()
    }

    pub fn fraction(&self, i: usize) -> ExtRat {
        let (a, b) = self.fractions[i];
        ExtRat::from_i64(a, b)
    }

    /// Pairs (i, i*) with i < i*.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.sides
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                Side::Paired(j) if i < *j => Some((i, *j)),
                _ => None,
            })
            .collect()
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let e2 = self.sides.iter().filter(|s| **s == Side::Even).count();
        let e3 = self.sides.iter().filter(|s| **s == Side::Odd).count();
        (e2, e3, self.n() - e2 - e3)
    }

    /// Side matrix g_i = (a_{i+1}, a_i; b_{i+1}, b_i), sending 0 ↦ a_i/b_i and
    /// ∞ ↦ a_{i+1}/b_{i+1}.
    pub fn side_matrix(&self, i: usize) -> Mat {
        let (a0, b0) = self.fractions[i];
        let (a1, b1) = self.fractions[i + 1];
        Mat::from_i64(a1, a0, b1, b0)
    }

    /// Minimal: every pairing sum is exactly p.
    pub fn is_minimal(&self) -> bool {
        self.pairs().iter().all(|&(i, j)| pair_sum(self, i, j) == self.p as i128)
    }
}

fn pair_sum(fs: &FareySymbol, i: usize, j: usize) -> i128 {
    let b = |k: usize| fs.fractions[k].1 as i128;
    b(i) * b(j) + b(i + 1) * b(j + 1)
}

fn even_ok(p: i128, b0: i128, b1: i128) -> bool {
    (b0 * b0 + b1 * b1) % p == 0
}

fn odd_ok(p: i128, b0: i128, b1: i128) -> bool {
    (b0 * b0 + b0 * b1 + b1 * b1) % p == 0
}

fn pair_ok(p: i128, bi: (i128, i128), bj: (i128, i128)) -> bool {
    (bi.0 * bj.0 + bi.1 * bj.1) % p == 0
}

/// Build a Farey symbol of level p by mediant insertion.
///
/// Works in passes. Each pass visits, left to right, the sides that were
/// unlabeled when the pass began; a side is marked EVEN, else ODD, else paired
/// with the least unlabeled side satisfying the pairing congruence, else split
/// at its mediant. Sides born during a pass wait for the next one.
pub fn farey_symbol(p: &Int) -> Result<FareySymbol> {
    let pp = check_prime(p)?;
    let pm = pp as i128;
    let mut fr: Vec<(i64, i64)> = vec![(0, 1), (1, 1)];
    let mut lab: Vec<Option<Side>> = vec![None];
    // sides born in the current pass
    let mut fresh: Vec<bool> = vec![false];
    let cap = 100 * pp as usize;
    let mut insertions = 0usize;
    loop {
        if lab.iter().all(|l| l.is_some()) {
            break;
        }
        fresh.iter_mut().for_each(|f| *f = false);
        let mut i = 0;
        while i < lab.len() {
            if lab[i].is_some() || fresh[i] {
                i += 1;
                continue;
            }
            let bi = (fr[i].1 as i128, fr[i + 1].1 as i128);
            if even_ok(pm, bi.0, bi.1) {
                lab[i] = Some(Side::Even);
            } else if odd_ok(pm, bi.0, bi.1) {
                lab[i] = Some(Side::Odd);
            } else if let Some(j) = (0..lab.len()).find(|&j| {
                j != i && lab[j].is_none() && pair_ok(pm, bi, (fr[j].1 as i128, fr[j + 1].1 as i128))
            }) {
                lab[i] = Some(Side::Paired(j));
                lab[j] = Some(Side::Paired(i));
            } else {
                insertions += 1;
                if insertions > cap {
                    return Err(Error::Defect(format!("Farey construction for p = {pp} exceeded {cap} insertions")));
                }
                let m = (fr[i].0 + fr[i + 1].0, fr[i].1 + fr[i + 1].1);
                fr.insert(i + 1, m);
                // side i splits into i and i+1; shift partner indices
                for l in lab.iter_mut() {
                    if let Some(Side::Paired(j)) = l {
                        if *j > i {
                            *j += 1;
                        }
                    }
                }
                lab.insert(i + 1, None);
                fresh[i] = true;
                fresh.insert(i + 1, true);
                i += 2;
                continue;
            }
            i += 1;
        }
    }
    let fs = FareySymbol { p: pp, fractions: fr, sides: lab.into_iter().map(Option::unwrap).collect() };
    let data = gamma0_invariants(p)?;
    let (e2, e3, free) = fs.counts();
    // index of the generated group is 3n + e3; it must be p + 1
    if (e2 as i64, e3 as i64, free as i64) != (data.e2, data.e3, 4 * data.g) || 3 * fs.n() as i64 + e3 as i64 != pp + 1 {
        return Err(Error::Defect(format!(
            "Farey symbol for p = {pp} has counts (e2, e3, free) = ({e2}, {e3}, {free}), expected ({}, {}, {})",
            data.e2,
            data.e3,
            4 * data.g
        )));
    }
    Ok(fs)
}

/// Role of a generator in the free product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Parabolic,
    /// order 2, attached to an EVEN side
    Order2 { side: usize },
    /// order 3, attached to an ODD side
    Order3 { side: usize },
    /// maps side `from` onto side `to`
    Hyperbolic { from: usize, to: usize },
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub kind: GenKind,
    pub mat: Mat,
}

impl Generator {
    pub fn order(&self) -> Option<u32> {
        match self.kind {
            GenKind::Order2 { .. } => Some(2),
            GenKind::Order3 { .. } => Some(3),
            _ => None,
        }
    }
}

/// Independent generators: T first, then the elliptic ones, then one
/// hyperbolic matrix per pair i < i*, each group in side order.
#[derive(Clone, Debug)]
pub struct SpecialPolygonGenerators {
    pub p: i64,
    pub gens: Vec<Generator>,
    /// generator id per side (the elliptic or hyperbolic one owning it)
    pub side_gen: Vec<usize>,
}

impl SpecialPolygonGenerators {
    pub fn t(&self) -> &Mat {
        &self.gens[0].mat
    }
    pub fn elliptic(&self) -> Vec<&Mat> {
        self.gens.iter().filter(|g| g.order().is_some()).map(|g| &g.mat).collect()
    }
    pub fn hyperbolic(&self) -> Vec<&Mat> {
        self.gens
            .iter()
            .filter(|g| matches!(g.kind, GenKind::Hyperbolic { .. }))
            .map(|g| &g.mat)
            .collect()
    }
    /// Position of generator `id` in the homology basis, None for torsion.
    pub fn basis_index(&self, id: usize) -> Option<usize> {
        match self.gens[id].kind {
            GenKind::Parabolic => Some(0),
            GenKind::Hyperbolic { .. } => {
                Some(1 + self.gens[..id].iter().filter(|g| matches!(g.kind, GenKind::Hyperbolic { .. })).count())
            }
            _ => None,
        }
    }
    pub fn rank(&self) -> usize {
        1 + self.hyperbolic().len()
    }
}

fn even_matrix(a0: i64, b0: i64, a1: i64, b1: i64) -> Result<Mat> {
    let i = |x: i64| int(x);
    Mat::new(
        i(a1) * i(b1) + i(a0) * i(b0),
        -(i(a0) * i(a0)) - i(a1) * i(a1),
        i(b0) * i(b0) + i(b1) * i(b1),
        -(i(a1) * i(b1)) - i(a0) * i(b0),
    )
}

fn odd_matrix(a0: i64, b0: i64, a1: i64, b1: i64) -> Result<Mat> {
    let i = |x: i64| int(x);
    Mat::new(
        i(a1) * i(b1) + i(a0) * i(b1) + i(a0) * i(b0),
        -(i(a0) * i(a0)) - i(a0) * i(a1) - i(a1) * i(a1),
        i(b0) * i(b0) + i(b0) * i(b1) + i(b1) * i(b1),
        -(i(a1) * i(b1)) - i(a1) * i(b0) - i(a0) * i(b0),
    )
}

/// Sends side i onto side j (endpoints reversed).
fn pair_matrix(fs: &FareySymbol, i: usize, j: usize) -> Result<Mat> {
    let f = |k: usize| (int(fs.fractions[k].0), int(fs.fractions[k].1));
    let ((ai, bi), (ai1, bi1)) = (f(i), f(i + 1));
    let ((aj, bj), (aj1, bj1)) = (f(j), f(j + 1));
    Mat::new(
        &aj1 * &bi1 + &aj * &bi,
        -(&ai * &aj) - &ai1 * &aj1,
        &bi * &bj + &bi1 * &bj1,
        -(&ai1 * &bj1) - &ai * &bj,
    )
}

pub fn polygon_generators(fs: &FareySymbol) -> Result<SpecialPolygonGenerators> {
    let n = fs.n();
    if fs.fractions.len() != n + 1 || fs.fractions[0] != (0, 1) || fs.fractions[n] != (1, 1) {
        return Err(Error::Invalid("Farey symbol must run from 0/1 to 1/1".into()));
    }
    for (i, s) in fs.sides.iter().enumerate() {
        if let Side::Paired(j) = s {
            if *j >= n || *j == i || fs.sides[*j] != Side::Paired(i) {
                return Err(Error::Invalid(format!("side {i} has a broken pairing")));
            }
        }
    }
    let mut gens = vec![Generator { kind: GenKind::Parabolic, mat: Mat::t() }];
    let mut side_gen = vec![usize::MAX; n];
    for (i, s) in fs.sides.iter().enumerate() {
        let (a0, b0) = fs.fractions[i];
        let (a1, b1) = fs.fractions[i + 1];
        let g = match s {
            Side::Even => Generator { kind: GenKind::Order2 { side: i }, mat: even_matrix(a0, b0, a1, b1)? },
            Side::Odd => Generator { kind: GenKind::Order3 { side: i }, mat: odd_matrix(a0, b0, a1, b1)? },
            Side::Paired(_) => continue,
        };
        side_gen[i] = gens.len();
        gens.push(g);
    }
    for (i, j) in fs.pairs() {
        side_gen[i] = gens.len();
        side_gen[j] = gens.len();
        gens.push(Generator { kind: GenKind::Hyperbolic { from: i, to: j }, mat: pair_matrix(fs, i, j)? });
    }
    Ok(SpecialPolygonGenerators { p: fs.p, gens, side_gen })
}

/// Outcome of the structural checks on a symbol and its generators.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PoincareReport {
    pub failures: Vec<String>,
    pub minimal: bool,
}

impl PoincareReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_poincare(fs: &FareySymbol) -> PoincareReport {
    let mut rep = PoincareReport::default();
    let p = fs.p as i128;
    let n = fs.n();
    if fs.fractions.len() != n + 1 {
        rep.failures.push(format!("{} fractions for {} sides", fs.fractions.len(), n));
        return rep;
    }
    for i in 0..n {
        let (a0, b0) = fs.fractions[i];
        let (a1, b1) = fs.fractions[i + 1];
        if a1 as i128 * b0 as i128 - a0 as i128 * b1 as i128 != 1 {
            rep.failures.push(format!("fractions {a0}/{b0}, {a1}/{b1} are not Farey neighbours"));
        }
        let (b0, b1) = (b0 as i128, b1 as i128);
        match fs.sides[i] {
            Side::Even if !even_ok(p, b0, b1) => rep.failures.push(format!("EVEN side {i}: b_i² + b_(i+1)² ≢ 0 mod {p}")),
            Side::Odd if !odd_ok(p, b0, b1) => {
                rep.failures.push(format!("ODD side {i}: b_i² + b_i b_(i+1) + b_(i+1)² ≢ 0 mod {p}"))
            }
            Side::Paired(j) => {
                if j >= n || fs.sides[j] != Side::Paired(i) {
                    rep.failures.push(format!("side {i} pairs with {j}, which does not pair back"));
                } else if !pair_ok(p, (b0, b1), (fs.fractions[j].1 as i128, fs.fractions[j + 1].1 as i128)) {
                    rep.failures.push(format!("pair {i}↔{j}: b_i b_j + b_(i+1) b_(j+1) ≢ 0 mod {p}"));
                }
            }
            _ => {}
        }
    }
    if !rep.failures.is_empty() {
        return rep;
    }
    let gens = match polygon_generators(fs) {
        Ok(g) => g,
        Err(e) => {
            rep.failures.push(e.to_string());
            return rep;
        }
    };
    let pi = int(fs.p);
    for (id, g) in gens.gens.iter().enumerate() {
        if !g.mat.in_gamma0(&pi) {
            rep.failures.push(format!("generator {id} = {} is not in Gamma0({})", g.mat, fs.p));
        }
        if g.mat.finite_order() != g.order() {
            rep.failures.push(format!("generator {id} = {} has order {:?}, expected {:?}", g.mat, g.mat.finite_order(), g.order()));
        }
    }
    match gamma0_invariants(&pi) {
        Ok(data) => {
            let expect = 1 + data.e2 + data.e3 + 2 * data.g;
            if gens.gens.len() as i64 != expect {
                rep.failures.push(format!("{} generators, expected 1 + e2 + e3 + 2g = {expect}", gens.gens.len()));
            }
            if 3 * n as i64 + data.e3 != data.p + 1 {
                rep.failures.push(format!("index 3n + e3 = {} differs from p + 1", 3 * n as i64 + data.e3));
            }
        }
        Err(e) => rep.failures.push(e.to_string()),
    }
    rep.minimal = fs.is_minimal();
    rep
}

/// Ordered basis [T, h_1, ..., h_2g] of H₁(Y₀(p), ℝ); index 0 is the
/// Eisenstein element.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub p: i64,
    pub elements: Vec<Mat>,
    /// generator id in the polygon table for each basis element
    pub gen_ids: Vec<usize>,
}

impl HomologyBasis {
    pub fn rank(&self) -> usize {
        self.elements.len()
    }
}

pub fn homology_basis(gens: &SpecialPolygonGenerators) -> HomologyBasis {
    let mut elements = vec![gens.t().clone()];
    let mut gen_ids = vec![0];
    for (id, g) in gens.gens.iter().enumerate() {
        if let GenKind::Hyperbolic { .. } = g.kind {
            elements.push(g.mat.clone());
            gen_ids.push(id);
        }
    }
    HomologyBasis { p: gens.p, elements, gen_ids }
}

/// Everything needed to work at one level.
#[derive(Clone, Debug)]
pub struct Level {
    pub data: Gamma0Data,
    pub symbol: FareySymbol,
    pub gens: SpecialPolygonGenerators,
    pub basis: HomologyBasis,
}

impl Level {
    pub fn new(p: &Int) -> Result<Level> {
        let data = gamma0_invariants(p)?;
        let symbol = farey_symbol(p)?;
        let rep = verify_poincare(&symbol);
        if !rep.ok() {
            return Err(Error::Defect(rep.failures.join("; ")));
        }
        let gens = polygon_generators(&symbol)?;
        let basis = homology_basis(&gens);
        Ok(Level { data, symbol, gens, basis })
    }

    pub fn p(&self) -> Int {
        int(self.data.p)
    }

    /// The `farey --json` document.
    pub fn to_json(&self) -> Value {
        let fractions: Vec<String> = self.symbol.fractions.iter().map(|(a, b)| format!("{a}/{b}")).collect();
        let pairings: Vec<Value> = self
            .symbol
            .sides
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Side::Even => json!({"side": i, "kind": "even"}),
                Side::Odd => json!({"side": i, "kind": "odd"}),
                Side::Paired(j) => json!({"side": i, "kind": "pair", "partner": j}),
            })
            .collect();
        let generators: Vec<Value> = self
            .gens
            .gens
            .iter()
            .map(|g| {
                let kind = match g.kind {
                    GenKind::Parabolic => json!({"kind": "parabolic"}),
                    GenKind::Order2 { side } => json!({"kind": "order2", "side": side}),
                    GenKind::Order3 { side } => json!({"kind": "order3", "side": side}),
                    GenKind::Hyperbolic { from, to } => json!({"kind": "hyperbolic", "from": from, "to": to}),
                };
                json!({"type": kind, "matrix": mat_value(&g.mat)})
            })
            .collect();
        json!({
            "p": int_value(&int(self.data.p)),
            "g": self.data.g,
            "e2": self.data.e2,
            "e3": self.data.e3,
            "fractions": fractions,
            "pairings": pairings,
            "generators": generators,
            "minimal": self.symbol.is_minimal(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn primes(lim: i64) -> Vec<i64> {
        (2..=lim).filter(|&n| is_prime(&int(n))).collect()
    }

    #[test]
    fn invariants_examples() {
        let g = |p| {
            let d = gamma0_invariants(&int(p)).unwrap();
            (d.g, d.e2, d.e3)
        };
        assert_eq!(g(11), (1, 0, 0));
        assert_eq!(g(2), (0, 1, 0));
        assert_eq!(g(3), (0, 0, 1));
        assert_eq!(g(23), (2, 0, 0));
        assert_eq!(g(13), (0, 2, 2));
        assert_eq!(g(37), (2, 2, 2));
        assert!(gamma0_invariants(&int(15)).is_err());
    }

    #[test]
    fn zagier_examples() {
        let z = zagier_generators(&int(11)).unwrap();
        assert!(z.contains(&Mat::from_i64(7, -2, 11, -3)));
        assert!(z.contains(&Mat::from_i64(8, -3, 11, -4)));
        assert!(z.contains(&Mat::t()));
        for p in primes(200) {
            let z = zagier_generators(&int(p)).unwrap();
            let data = gamma0_invariants(&int(p)).unwrap();
            for e in &z.family {
                assert!(e.mat.in_gamma0(&int(p)));
                // a ↔ a* is an involution, and the partner is the inverse
                let partner = z.family.iter().find(|f| f.a == e.a_star).unwrap();
                assert_eq!(partner.a_star, e.a);
                assert_eq!(partner.mat, e.mat.inverse());
            }
            let has_elliptic = z.family.iter().any(|e| e.elliptic);
            assert_eq!(has_elliptic, data.e2 > 0, "p={p}");
        }
    }

    #[test]
    fn farey_examples() {
        let fs = farey_symbol(&int(11)).unwrap();
        assert_eq!(fs.fractions, vec![(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)]);
        assert_eq!(fs.pairs(), vec![(0, 2), (1, 3)]);
        let fs = farey_symbol(&int(2)).unwrap();
        assert_eq!(fs.fractions, vec![(0, 1), (1, 1)]);
        assert_eq!(fs.sides, vec![Side::Even]);
        let fs = farey_symbol(&int(3)).unwrap();
        assert_eq!(fs.sides, vec![Side::Odd]);
    }

    #[test]
    fn generator_examples() {
        let gens = polygon_generators(&farey_symbol(&int(11)).unwrap()).unwrap();
        let h: Vec<Mat> = gens.hyperbolic().into_iter().cloned().collect();
        assert_eq!(h, vec![Mat::from_i64(7, -2, 11, -3), Mat::from_i64(8, -3, 11, -4)]);
        // inverses of A = (3,−2;11,−7), B = (4,−3;11,−8)
        assert_eq!(h[0], Mat::from_i64(3, -2, 11, -7).inverse());
        assert_eq!(h[1], Mat::from_i64(4, -3, 11, -8).inverse());

        let gens = polygon_generators(&farey_symbol(&int(2)).unwrap()).unwrap();
        let e = gens.elliptic()[0].clone();
        assert_eq!(e, Mat::from_i64(1, -1, 2, -1));
        assert!((&e * &e).is_identity());
        let gens = polygon_generators(&farey_symbol(&int(3)).unwrap()).unwrap();
        let e = gens.elliptic()[0].clone();
        assert_eq!(e, Mat::from_i64(1, -1, 3, -2));
        assert!((&(&e * &e) * &e).is_identity());
    }

    #[test]
    fn basis_examples() {
        let l = Level::new(&int(11)).unwrap();
        assert_eq!(
            l.basis.elements,
            vec![Mat::t(), Mat::from_i64(7, -2, 11, -3), Mat::from_i64(8, -3, 11, -4)]
        );
        assert_eq!(Level::new(&int(2)).unwrap().basis.rank(), 1);
        assert_eq!(Level::new(&int(23)).unwrap().basis.rank(), 5);
    }

    #[test]
    fn all_levels_to_200() {
        for p in primes(200) {
            let pi = int(p);
            let data = gamma0_invariants(&pi).unwrap();
            let fs = farey_symbol(&pi).unwrap();
            let rep = verify_poincare(&fs);
            assert!(rep.ok(), "p={p}: {:?}", rep.failures);
            let gens = polygon_generators(&fs).unwrap();
            assert_eq!(gens.gens.len() as i64, 1 + data.e2 + data.e3 + 2 * data.g);
            assert_eq!(homology_basis(&gens).rank(), data.rank());
            for g in &gens.gens {
                assert!(g.mat.in_gamma0(&pi));
                let [a, b, c, d] = g.mat.entries();
                assert!((a * d - b * c).is_one());
            }
            if rep.minimal {
                let z = zagier_generators(&pi).unwrap();
                for h in gens.hyperbolic() {
                    assert!(z.contains(h) || z.contains(&h.inverse()), "p={p}: {h}");
                }
            }
        }
    }

    #[test]
    fn corrupted_pairing_is_named() {
        let mut fs = farey_symbol(&int(11)).unwrap();
        fs.sides = vec![Side::Paired(1), Side::Paired(0), Side::Paired(3), Side::Paired(2)];
        let rep = verify_poincare(&fs);
        assert!(!rep.ok());
        assert!(rep.failures[0].contains("pair 0↔1"), "{:?}", rep.failures);
    }

    #[test]
    fn p11_is_minimal() {
        let fs = farey_symbol(&int(11)).unwrap();
        assert!(verify_poincare(&fs).minimal);
    }
}
