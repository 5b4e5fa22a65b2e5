//! Words in the special-polygon generators, homology coordinates, the
//! Eisenstein pairing, and the Hecke, Fricke and ι actions.
//!
//! Decomposition is ping-pong: track w = δ·z0 for a base point z0 inside the
//! polygon, read off which generator region w lies in, peel that generator
//! off δ, repeat until w is back in the polygon. z0 = (√2 − 1) + i√3 never
//! lies on a geodesic with rational ends, so every comparison is strict and
//! exact in ℤ[√2].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{int, rademacher_psi, Int, Mat, Rat};
use crate::json::{ints_value, rat_value};
use crate::modcurve::{GenKind, HomologyBasis, Level, Side, SpecialPolygonGenerators};
use crate::quadforms::{gamma_q_with_unit, pell_plus, PellUnit, QuadForm};

/// x + y√2
#[derive(Clone, Debug, PartialEq, Eq)]
struct Zr2 {
    x: Int,
    y: Int,
}

impl Zr2 {
    fn new(x: Int, y: Int) -> Zr2 {
        Zr2 { x, y }
    }
    fn int(x: Int) -> Zr2 {
        Zr2 { x, y: Int::zero() }
    }
    fn scale(&self, k: &Int) -> Zr2 {
        Zr2 { x: &self.x * k, y: &self.y * k }
    }
    fn sign(&self) -> Ordering {
        let (sx, sy) = (self.x.sign(), self.y.sign());
        use num_bigint::Sign::*;
        match (sx, sy) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus | NoSign, Plus | NoSign) => Ordering::Greater,
            (Minus | NoSign, Minus | NoSign) => Ordering::Less,
            _ => {
                // opposite signs: compare x² with 2y²
                let x2 = &self.x * &self.x;
                let y2 = int(2) * &self.y * &self.y;
                let bigger_x = x2.cmp(&y2);
                if sx == Plus {
                    bigger_x
                } else {
                    bigger_x.reverse()
                }
            }
        }
    }
    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }
    /// floor(self / n) for n > 0
    fn floor_div(&self, n: &Zr2) -> Int {
        // self/n = self·n̄ / N(n)
        let conj = Zr2::new(n.x.clone(), -&n.y);
        let num = self * &conj;
        let mut m = &n.x * &n.x - int(2) * &n.y * &n.y;
        let (mut u, mut v) = (num.x, num.y);
        if m.is_negative() {
            m = -m;
            u = -u;
            v = -v;
        }
        // floor(v√2), exact since 2v² is never a square unless v = 0
        let t = (int(2) * &v * &v).sqrt();
        let f = if v.is_negative() { -t - 1 } else { t };
        (u + f).div_floor(&m)
    }
}

impl Add for &Zr2 {
    type Output = Zr2;
    fn add(self, o: &Zr2) -> Zr2 {
        Zr2::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &Zr2 {
    type Output = Zr2;
    fn sub(self, o: &Zr2) -> Zr2 {
        Zr2::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Mul for &Zr2 {
    type Output = Zr2;
    fn mul(self, o: &Zr2) -> Zr2 {
        Zr2::new(&self.x * &o.x + int(2) * &self.y * &o.y, &self.x * &o.y + &self.y * &o.x)
    }
}

/// δ·z0 = (X + i√3)/N with X, N in ℤ[√2], N > 0.
struct Image {
    x: Zr2,
    n: Zr2,
}

fn image(m: &Mat) -> Image {
    let [a, b, c, d] = m.entries();
    // z0 = x0 + i√3, x0 = √2 − 1
    let u = Zr2::new(&b - &a, a.clone());
    let v = Zr2::new(&d - &c, c.clone());
    let x = &(&u * &v) + &Zr2::int(int(3) * &a * &c);
    let n = &(&v * &v) + &Zr2::int(int(3) * &c * &c);
    Image { x, n }
}

impl Image {
    /// sign of Re(w) − a/b, b > 0
    fn cmp_re(&self, a: i64, b: i64) -> Ordering {
        (&self.x.scale(&int(b)) - &self.n.scale(&int(a))).sign()
    }
    /// |w − a/b|² compared with r²·... : w inside the half-disk on [α, β]
    fn under_arc(&self, (a0, b0): (i64, i64), (a1, b1): (i64, i64)) -> bool {
        // (x − α)(x − β) + y² < 0, scaled by N² b0 b1
        let l = &self.x.scale(&int(b0)) - &self.n.scale(&int(a0));
        let r = &self.x.scale(&int(b1)) - &self.n.scale(&int(a1));
        let s = &(&l * &r) + &Zr2::int(int(3) * int(b0) * int(b1));
        s.sign() == Ordering::Less
    }
    /// |w|² > 1
    fn outside_unit(&self) -> bool {
        (&(&(&self.x * &self.x) + &Zr2::int(int(3))) - &(&self.n * &self.n)).is_positive()
    }
    /// w in {Re > 1/2} ∪ {|w − 1| < 1}
    fn in_odd_region(&self) -> bool {
        let half = &self.x.scale(&int(2)) - &self.n;
        if half.is_positive() {
            return true;
        }
        let xm = &self.x - &self.n;
        (&(&(&xm * &xm) + &Zr2::int(int(3))) - &(&self.n * &self.n)).sign() == Ordering::Less
    }
}

/// Run-length word over a generator table; exponents nonzero, neighbours distinct.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<(usize, Int)>,
}

impl Word {
    pub fn new() -> Word {
        Word::default()
    }

    /// Append g^e, merging with the last letter and reducing torsion exponents.
    pub fn push(&mut self, gens: &SpecialPolygonGenerators, id: usize, e: Int) {
        let reduce = |e: Int| match gens.gens[id].order() {
            Some(k) => {
                // representative in (−k/2, k/2]
                let k = int(k as i64);
                let r = e.mod_floor(&k);
                if int(2) * &r > k {
                    r - k
                } else {
                    r
                }
            }
            None => e,
        };
        let e = if let Some((last, le)) = self.letters.last() {
            if *last == id {
                let s = le + e;
                self.letters.pop();
                s
            } else {
                e
            }
        } else {
            e
        };
        let e = reduce(e);
        if !e.is_zero() {
            self.letters.push((id, e));
        }
    }

    pub fn concat(&self, other: &Word, gens: &SpecialPolygonGenerators) -> Word {
        let mut w = self.clone();
        for (id, e) in &other.letters {
            w.push(gens, *id, e.clone());
        }
        w
    }

    pub fn eval(&self, gens: &SpecialPolygonGenerators) -> Mat {
        let mut m = Mat::identity();
        for (id, e) in &self.letters {
            let g = &gens.gens[*id].mat;
            let p = if *id == 0 { Mat::t_pow(e) } else { pow_int(g, e) };
            m = &m * &p;
        }
        m
    }

    /// Number of letters, Σ|e|.
    pub fn length(&self) -> Int {
        self.letters.iter().map(|(_, e)| e.abs()).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.letters.iter().map(|(id, e)| json!([id, crate::json::int_value(e)])).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(id, e)| {
                let name = if *id == 0 { "T".to_string() } else { format!("g{id}") };
                if e.is_one() {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn pow_int(g: &Mat, e: &Int) -> Mat {
    let (base, mut k) = if e.is_negative() { (g.inverse(), -e) } else { (g.clone(), e.clone()) };
    let mut acc = Mat::identity();
    let mut sq = base;
    while !k.is_zero() {
        if k.is_odd() {
            acc = &acc * &sq;
        }
        sq = &sq * &sq;
        k >>= 1;
    }
    acc
}

fn check_gamma0(g: &Mat, p: &Int) -> Result<()> {
    if g.in_gamma0(p) {
        Ok(())
    } else {
        Err(Error::NotInGamma0(g.to_string(), p.to_string()))
    }
}

/// Write γ as a word in the polygon generators; the result is re-evaluated
/// and compared with γ before returning.
pub fn decompose(gamma: &Mat, level: &Level) -> Result<Word> {
    let p = level.p();
    check_gamma0(gamma, &p)?;
    let fs = &level.symbol;
    let gens = &level.gens;
    let mut word = Word::new();
    let mut delta = gamma.clone();
    let cap = 64 * (gamma.max_abs_entry().bits() as usize + 8) * (fs.n() + 2);
    for _ in 0..cap {
        let w = image(&delta);
        if w.x.sign() == Ordering::Less || (&w.x - &w.n).is_positive() {
            let k = w.x.floor_div(&w.n);
            delta = &Mat::t_pow(&-&k) * &delta;
            word.push(gens, 0, k);
            continue;
        }
        // side j with a_j/b_j < Re w < a_{j+1}/b_{j+1}
        let (mut lo, mut hi) = (0usize, fs.n());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let (a, b) = fs.fractions[mid];
            if w.cmp_re(a, b) == Ordering::Greater {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let j = lo;
        if !w.under_arc(fs.fractions[j], fs.fractions[j + 1]) {
            break;
        }
        let id = gens.side_gen[j];
        let g = &gens.gens[id].mat;
        match fs.sides[j] {
            Side::Even => {
                delta = g * &delta;
                word.push(gens, id, int(1));
            }
            Side::Paired(_) => {
                let GenKind::Hyperbolic { from, .. } = gens.gens[id].kind else {
                    return Err(Error::Defect(format!("side {j} owns a non-hyperbolic generator")));
                };
                if j == from {
                    delta = g * &delta;
                    word.push(gens, id, int(-1));
                } else {
                    delta = &g.inverse() * &delta;
                    word.push(gens, id, int(1));
                }
            }
            Side::Odd => {
                // standard position: the side is the imaginary axis, the
                // elliptic point (1 + i√3)/2
                let side = fs.side_matrix(j);
                let w2 = image(&(&side.inverse() * &delta));
                if !w2.in_odd_region() {
                    break;
                }
                // the generator is side·U²·side⁻¹ with U: z ↦ 1 − 1/z
                if w2.outside_unit() {
                    delta = g * &delta;
                    word.push(gens, id, int(-1));
                } else {
                    delta = &g.inverse() * &delta;
                    word.push(gens, id, int(1));
                }
            }
        }
    }
    if !delta.is_identity() {
        return Err(Error::Defect(format!("decomposition of {gamma} stopped at residual {delta}")));
    }
    if &word.eval(gens) != gamma {
        return Err(Error::Defect(format!("word {word} does not evaluate to {gamma}")));
    }
    Ok(word)
}

/// Coordinates in the basis [T, h_1, ..., h_2g].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyVector(pub Vec<Int>);

impl HomologyVector {
    pub fn zero(rank: usize) -> HomologyVector {
        HomologyVector(vec![Int::zero(); rank])
    }
    pub fn from_i64(v: &[i64]) -> HomologyVector {
        HomologyVector(v.iter().map(|&x| int(x)).collect())
    }
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
    pub fn eisenstein(&self) -> &Int {
        &self.0[0]
    }
    pub fn to_json(&self) -> Value {
        ints_value(&self.0)
    }
}

impl Add for &HomologyVector {
    type Output = HomologyVector;
    fn add(self, o: &HomologyVector) -> HomologyVector {
        HomologyVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Neg for &HomologyVector {
    type Output = HomologyVector;
    fn neg(self) -> HomologyVector {
        HomologyVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Exponent sums over T and the hyperbolic generators; torsion drops out.
pub fn homology_vector(w: &Word, gens: &SpecialPolygonGenerators) -> HomologyVector {
    let mut v = HomologyVector::zero(gens.rank());
    for (id, e) in &w.letters {
        if let Some(k) = gens.basis_index(*id) {
            v.0[k] += e;
        }
    }
    v
}

pub fn class_of(gamma: &Mat, level: &Level) -> Result<HomologyVector> {
    Ok(homology_vector(&decompose(gamma, level)?, &level.gens))
}

/// Geodesic data of a level-p form.
#[derive(Clone, Debug)]
pub struct Geodesic {
    pub form: QuadForm,
    pub gamma: Mat,
    pub word: Word,
    pub homology: HomologyVector,
    pub pairing: Rat,
}

impl Geodesic {
    pub fn to_json(&self) -> Value {
        let [a, b, c, d] = self.gamma.entries();
        json!({
            "form": ints_value(&[self.form.a.clone(), self.form.b.clone(), self.form.c.clone()]),
            "gamma": ints_value(&[a, b, c, d]),
            "word": self.word.to_json(),
            "homology_vector": self.homology.to_json(),
            "eisenstein_pairing": rat_value(&self.pairing),
            "word_length": crate::json::int_value(&self.word.length()),
        })
    }
}

pub fn geodesic(q: &QuadForm, level: &Level) -> Result<Geodesic> {
    let unit = pell_plus(&q.disc())?;
    geodesic_with_unit(q, level, &unit)
}

pub fn geodesic_with_unit(q: &QuadForm, level: &Level, unit: &PellUnit) -> Result<Geodesic> {
    let gamma = gamma_q_with_unit(q, &level.p(), unit)?;
    let word = decompose(&gamma, level)?;
    let homology = homology_vector(&word, &level.gens);
    let pairing = eisenstein_pairing(&gamma, &level.p())?;
    Ok(Geodesic { form: q.clone(), gamma, word, homology, pairing })
}

/// Homology class of the closed geodesic of a level-p form.
pub fn geodesic_class(q: &QuadForm, level: &Level) -> Result<HomologyVector> {
    Ok(geodesic(q, level)?.homology)
}

/// (Ψ(γ′) − Ψ(γ))/(p − 1) with γ′ = (a, bp; c/p, d).
pub fn eisenstein_pairing(gamma: &Mat, p: &Int) -> Result<Rat> {
    check_gamma0(gamma, p)?;
    let [a, b, c, d] = gamma.entries();
    let g2 = Mat::new(a, b * p, c / p, d)?;
    Ok((rademacher_psi(&g2) - rademacher_psi(gamma)) / Rat::from_integer(p - 1))
}

/// Pairings of the basis elements with ω_E.
pub fn basis_pairings(basis: &HomologyBasis) -> Result<Vec<Rat>> {
    let p = int(basis.p);
    basis.elements.iter().map(|m| eisenstein_pairing(m, &p)).collect()
}

pub fn pairing_of_vector(v: &HomologyVector, basis: &HomologyBasis) -> Result<Rat> {
    let values = basis_pairings(basis)?;
    Ok(v.0.iter().zip(&values).map(|(x, e)| e * Rat::from_integer(x.clone())).sum())
}

type Raw = [Int; 4];

fn raw_mul(x: &Raw, y: &Raw) -> Raw {
    [
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

/// Upper-triangular (a, b; 0, d) with ad = n, 0 ≤ b < d, gcd(a, p) = 1.
pub fn hecke_representatives(n: &Int, p: &Int) -> Vec<Raw> {
    let mut out = Vec::new();
    let mut a = int(1);
    while &a <= n {
        if (n % &a).is_zero() && a.gcd(p).is_one() {
            let d = n / &a;
            let mut b = int(0);
            while b < d {
                out.push([a.clone(), b.clone(), int(0), d.clone()]);
                b += 1;
            }
        }
        a += 1;
    }
    out
}

/// One Γ₀(p) element per orbit of γ on the Hecke cosets; their classes sum
/// to T_n applied to the class of γ.
pub fn hecke_orbit_products(gamma: &Mat, n: &Int, p: &Int) -> Result<Vec<Mat>> {
    check_gamma0(gamma, p)?;
    if !n.is_positive() {
        return Err(Error::Invalid(format!("Hecke index must be positive, got {n}")));
    }
    let reps = hecke_representatives(n, p);
    let g = gamma.entries();
    let mut perm = Vec::with_capacity(reps.len());
    let mut pieces = Vec::with_capacity(reps.len());
    for r in &reps {
        let m = raw_mul(r, &g);
        let mut found = None;
        for (j, s) in reps.iter().enumerate() {
            let adj = [s[3].clone(), -&s[1], int(0), s[0].clone()];
            let q = raw_mul(&m, &adj);
            if q.iter().all(|x| (x % n).is_zero()) && ((&q[2] / n) % p).is_zero() {
                found = Some((j, q.map(|x| x / n)));
                break;
            }
        }
        let (j, q) = found.ok_or_else(|| Error::Defect(format!("no Hecke coset matches for {gamma}, n = {n}")))?;
        let [a, b, c, d] = q;
        perm.push(j);
        pieces.push(Mat::new(a, b, c, d)?);
    }
    let mut seen = vec![false; reps.len()];
    let mut out = Vec::new();
    for start in 0..reps.len() {
        if seen[start] {
            continue;
        }
        let mut prod = Mat::identity();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            prod = &prod * &pieces[i];
            i = perm[i];
        }
        out.push(prod);
    }
    Ok(out)
}

/// T_n on the class of γ.
pub fn hecke_class(gamma: &Mat, n: &Int, level: &Level) -> Result<HomologyVector> {
    let mut v = HomologyVector::zero(level.basis.rank());
    for m in hecke_orbit_products(gamma, n, &level.p())? {
        v = &v + &class_of(&m, level)?;
    }
    Ok(v)
}

/// Matrix of T_n on the homology basis, column k = T_n(basis element k).
pub fn hecke_matrix(n: &Int, level: &Level) -> Result<Vec<HomologyVector>> {
    level.basis.elements.iter().map(|m| hecke_class(m, n, level)).collect()
}

/// Conjugation by W_p: (a, b; c, d) ↦ (d, −c/p; −pb, a).
pub fn fricke(gamma: &Mat, p: &Int) -> Result<Mat> {
    check_gamma0(gamma, p)?;
    let [a, b, c, d] = gamma.entries();
    Mat::new(d, -(c / p), -(p * b), a)
}

/// (a, b; c, d) ↦ (a, −b; −c, d)
pub fn iota(gamma: &Mat) -> Mat {
    let [a, b, c, d] = gamma.entries();
    Mat::new(a, -b, -c, d).expect("determinant is preserved")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// the T-exponent sum is nonzero, so γ is outside the subgroup generated
    /// by the non-T generators
    Refuted { t_exponent: Int },
    Inconclusive,
}

pub fn membership_refutation(gamma: &Mat, level: &Level) -> Result<Membership> {
    let v = class_of(gamma, level)?;
    let t = v.eisenstein().clone();
    Ok(if t.is_zero() { Membership::Inconclusive } else { Membership::Refuted { t_exponent: t } })
}
