//! Indefinite binary quadratic forms of fundamental discriminant, and the
//! narrow class group they realize.
//!
//! A transform `M` acts on a form by substitution, `Q∘M (x, y) = Q(M (x, y))`.
//! The left action `σ·Q = Q∘σ⁻¹` moves the roots of `Q(z, 1)` by `z ↦ σz`,
//! and that is the action under which `gamma_q` is equivariant.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{ext_gcd, int, is_prime, kronecker, mod_inverse, Int, Mat};

/// Integral binary quadratic form a x² + b xy + c y².
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl Serialize for QuadForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.a, &self.b, &self.c].map(crate::json::number).serialize(s)
    }
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn is_square(n: &Int) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

impl QuadForm {
    /// Checks the discriminant is positive and not a square.
    pub fn new(a: Int, b: Int, c: Int) -> Result<QuadForm> {
        let d = &b * &b - int(4) * &a * &c;
        if !d.is_positive() || is_square(&d) {
            return Err(Error::Invalid(format!("discriminant {d} is not a positive non-square")));
        }
        Ok(QuadForm { a, b, c })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(int(a), int(b), int(c)).expect("valid form")
    }

    pub fn disc(&self) -> Int {
        &self.b * &self.b - int(4) * &self.a * &self.c
    }

    pub fn eval(&self, x: &Int, y: &Int) -> Int {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// Q∘M.
    pub fn substitute(&self, m: &Mat) -> QuadForm {
        let (al, be, ga, de) = (m.a(), m.b(), m.c(), m.d());
        QuadForm {
            a: self.eval(al, ga),
            b: int(2) * &self.a * al * be + &self.b * (al * de + be * ga) + int(2) * &self.c * ga * de,
            c: self.eval(be, de),
        }
    }

    /// σ·Q = Q∘σ⁻¹.
    pub fn act(&self, sigma: &Mat) -> QuadForm {
        self.substitute(&sigma.inverse())
    }

    pub fn neg(&self) -> QuadForm {
        QuadForm { a: -&self.a, b: -&self.b, c: -&self.c }
    }

    /// Inverse in the class group.
    pub fn inverse(&self) -> QuadForm {
        QuadForm { a: self.a.clone(), b: -&self.b, c: self.c.clone() }
    }

    /// p-dilation (a/p, b, cp); needs p | a.
    pub fn dilate(&self, p: &Int) -> QuadForm {
        QuadForm { a: &self.a / p, b: self.b.clone(), c: &self.c * p }
    }

    pub fn is_reduced(&self) -> bool {
        let s = self.disc().sqrt();
        let two_a = int(2) * self.a.abs();
        self.b.is_positive() && self.b <= s && &two_a + &self.b > s && &two_a - &self.b <= s
    }

    /// One reduction step ρ(a,b,c) = (c, b', (b'² − d)/(4c)) with b' ≡ −b mod 2c
    /// in the reduced window, together with the transform P, ρ(Q) = Q∘P.
    pub fn rho(&self) -> (QuadForm, Mat) {
        let d = self.disc();
        let s = d.sqrt();
        let c = &self.c;
        let two_c = int(2) * c.abs();
        let nb = -&self.b;
        // r ≡ −b (mod 2|c|) in the window (lo, lo + 2|c|]
        let lo = if c.abs() > s { -c.abs() } else { &s - &two_c };
        let shifted: Int = &nb - &lo - 1;
        let r: Int = &lo + shifted.mod_floor(&two_c) + 1;
        let t = (&r + &self.b) / (int(2) * c);
        let next = QuadForm { a: c.clone(), b: r.clone(), c: (&r * &r - &d) / (int(4) * c) };
        let p = Mat::new(int(0), int(-1), int(1), t).expect("det 1");
        (next, p)
    }

    /// Values (x, y) coprime, found in a growing box, with gcd(Q(x,y), m) = 1;
    /// returns the equivalent form Q∘M whose first coefficient is that value.
    pub fn coprime_representative(&self, m: &Int) -> (QuadForm, Mat) {
        if self.a.gcd(m).is_one() {
            return (self.clone(), Mat::identity());
        }
        let mut bound = 1i64;
        loop {
            for x in -bound..=bound {
                for y in 0..=bound {
                    if (y == 0 && x != 1) || num_integer::gcd(x, y) != 1 {
                        continue;
                    }
                    let (xi, yi) = (int(x), int(y));
                    let v = self.eval(&xi, &yi);
                    if v.is_zero() || !v.gcd(m).is_one() {
                        continue;
                    }
                    // complete (x, y) to a unimodular matrix [[x, z], [y, w]]
                    let (_, u, w0) = ext_gcd(&xi, &yi);
                    // x u + y w0 = 1  ⇒  x·u − y·(−w0) = 1
                    let mat = Mat::new(xi, -w0, yi, u).expect("det 1");
                    return (self.substitute(&mat), mat);
                }
            }
            bound *= 2;
        }
    }
}

/// True iff d is a positive fundamental discriminant (non-square automatically).
pub fn is_fundamental(d: &Int) -> bool {
    d > &int(1) && is_fundamental_discriminant(d)
}

/// Fundamental discriminant of either sign; 1 is excluded.
pub fn is_fundamental_discriminant(d: &Int) -> bool {
    if d.is_zero() || d.is_one() {
        return false;
    }
    let r = d.mod_floor(&int(4));
    if r == int(1) {
        squarefree(d)
    } else if r.is_zero() {
        let m: Int = d / 4;
        let r4 = m.mod_floor(&int(4));
        (r4 == int(2) || r4 == int(3)) && squarefree(&m)
    } else {
        false
    }
}

fn squarefree(n: &Int) -> bool {
    let mut n = n.abs();
    let mut k = int(2);
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            n /= &k;
            if (&n % &k).is_zero() {
                return false;
            }
        }
        k += 1;
    }
    true
}

fn check_fundamental(d: &Int) -> Result<()> {
    if is_fundamental(d) {
        Ok(())
    } else {
        Err(Error::NotFundamental(d.to_string()))
    }
}

/// Reduce by iterating ρ; returns the reduced form and M with reduced = Q∘M.
pub fn reduce(q: &QuadForm) -> Result<(QuadForm, Mat)> {
    let d = q.disc();
    if !d.is_positive() || is_square(&d) {
        return Err(Error::Invalid(format!("discriminant {d} is not a positive non-square")));
    }
    let mut cur = q.clone();
    let mut m = Mat::identity();
    while !cur.is_reduced() {
        let (next, p) = cur.rho();
        cur = next;
        m = &m * &p;
    }
    Ok((cur, m))
}

/// The ρ-cycle through a reduced form.
pub fn reduced_cycle(q: &QuadForm) -> Vec<QuadForm> {
    let mut cycle = vec![q.clone()];
    let mut cur = q.rho().0;
    while &cur != q {
        cycle.push(cur.clone());
        cur = cur.rho().0;
    }
    cycle
}

pub fn equivalent(q1: &QuadForm, q2: &QuadForm) -> Result<bool> {
    let (d1, d2) = (q1.disc(), q2.disc());
    if d1 != d2 {
        return Err(Error::DiscriminantMismatch(d1.to_string(), d2.to_string()));
    }
    let (r1, _) = reduce(q1)?;
    let (r2, _) = reduce(q2)?;
    Ok(reduced_cycle(&r1).contains(&r2))
}

/// Dirichlet composition through concordant forms; the result is reduced.
pub fn compose(q1: &QuadForm, q2: &QuadForm) -> Result<QuadForm> {
    let d = q1.disc();
    if d != q2.disc() {
        return Err(Error::DiscriminantMismatch(d.to_string(), q2.disc().to_string()));
    }
    let (f2, _) = q2.coprime_representative(&q1.a);
    let b = crt_middle(&q1.a, &q1.b, &f2.a, &f2.b)?;
    let a3 = &q1.a * &f2.a;
    let c3 = (&b * &b - &d) / (int(4) * &a3);
    Ok(reduce(&QuadForm { a: a3, b, c: c3 })?.0)
}

/// B ≡ b1 mod 2|a1| and B ≡ b2 mod 2|a2|, for coprime a1, a2 and b1 ≡ b2 mod 2.
fn crt_middle(a1: &Int, b1: &Int, a2: &Int, b2: &Int) -> Result<Int> {
    let (m1, m2) = (a1.abs(), a2.abs());
    let inv = mod_inverse(&m1, &m2)
        .ok_or_else(|| Error::Defect(format!("CRT alignment: gcd({a1}, {a2}) != 1")))?;
    if (b2 - b1).is_odd() {
        return Err(Error::Defect("CRT alignment: middle coefficients of different parity".into()));
    }
    let half: Int = (b2 - b1) / 2;
    let k = (inv * half).mod_floor(&m2);
    Ok(b1 + int(2) * &m1 * k)
}

/// A proper equivalence class, named by the least reduced form of its cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormClass {
    pub fingerprint: QuadForm,
    pub cycle: Vec<QuadForm>,
}

impl FormClass {
    fn from_reduced(q: &QuadForm) -> FormClass {
        let cycle = reduced_cycle(q);
        let fingerprint = cycle.iter().min().unwrap().clone();
        FormClass { fingerprint, cycle }
    }
}

pub fn form_class(q: &QuadForm) -> Result<FormClass> {
    Ok(FormClass::from_reduced(&reduce(q)?.0))
}

/// The classes of one discriminant without the multiplication table, for
/// when only membership and genus data are needed.
#[derive(Clone, Debug)]
pub struct ClassSet {
    pub d: Int,
    pub classes: Vec<FormClass>,
    pub identity: usize,
    lookup: HashMap<QuadForm, usize>,
}

impl ClassSet {
    pub fn h_plus(&self) -> usize {
        self.classes.len()
    }

    pub fn index_of(&self, q: &QuadForm) -> Result<usize> {
        if q.disc() != self.d {
            return Err(Error::DiscriminantMismatch(self.d.to_string(), q.disc().to_string()));
        }
        let (r, _) = reduce(q)?;
        self.lookup
            .get(&r)
            .copied()
            .ok_or_else(|| Error::Defect(format!("reduced form {r} missing from the class list")))
    }
}

pub fn principal_form(d: &Int) -> QuadForm {
    let b0 = d.mod_floor(&int(2));
    let c = (&b0 * &b0 - d) / 4;
    QuadForm { a: int(1), b: b0, c }
}

/// Enumerate every reduced form of discriminant d and split into ρ-cycles.
pub fn form_classes(d: &Int) -> Result<ClassSet> {
    check_fundamental(d)?;
    let dd = d.to_i64().ok_or_else(|| Error::Invalid(format!("discriminant {d} too large")))?;
    let s = (dd as f64).sqrt() as i64;
    let s = (s - 2..=s + 2).filter(|k| *k >= 0 && k * k <= dd).max().unwrap();
    let mut reduced = Vec::new();
    let mut b = if dd % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let n = (dd - b * b) / 4; // = −ac > 0
        // s < 2a + b and 2a − b <= s
        let amin = (s - b) / 2 + 1;
        let amax = (s + b) / 2;
        for a in amin..=amax {
            if a > 0 && n % a == 0 {
                let c = -(n / a);
                reduced.push(QuadForm::from_i64(a, b, c));
                reduced.push(QuadForm::from_i64(-a, b, -c));
            }
        }
        b += 2;
    }
    let mut lookup: HashMap<QuadForm, usize> = HashMap::new();
    let mut classes = Vec::new();
    for q in &reduced {
        if lookup.contains_key(q) {
            continue;
        }
        let fc = FormClass::from_reduced(q);
        for f in &fc.cycle {
            lookup.insert(f.clone(), usize::MAX);
        }
        classes.push(fc);
    }
    classes.sort_by(|x, y| x.fingerprint.cmp(&y.fingerprint));
    for (i, fc) in classes.iter().enumerate() {
        for f in &fc.cycle {
            lookup.insert(f.clone(), i);
        }
    }
    let mut set = ClassSet { d: d.clone(), classes, identity: 0, lookup };
    set.identity = set.index_of(&principal_form(d))?;
    Ok(set)
}

/// Cl⁺ as form classes with a full multiplication table.
#[derive(Clone, Debug)]
pub struct NarrowClassGroup {
    pub set: ClassSet,
    pub table: Vec<Vec<usize>>,
}

impl NarrowClassGroup {
    pub fn h_plus(&self) -> usize {
        self.set.h_plus()
    }
    pub fn identity(&self) -> usize {
        self.set.identity
    }
    pub fn classes(&self) -> &[FormClass] {
        &self.set.classes
    }
    pub fn index_of(&self, q: &QuadForm) -> Result<usize> {
        self.set.index_of(q)
    }
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }
    pub fn inverse_index(&self, i: usize) -> usize {
        (0..self.h_plus()).find(|&j| self.table[i][j] == self.set.identity).expect("group")
    }
}

pub fn narrow_class_group(d: &Int) -> Result<NarrowClassGroup> {
    let set = form_classes(d)?;
    let h = set.h_plus();
    let mut table = vec![vec![0usize; h]; h];
    for i in 0..h {
        for j in i..h {
            let q = compose(&set.classes[i].fingerprint, &set.classes[j].fingerprint)?;
            let k = set.index_of(&q)?;
            table[i][j] = k;
            table[j][i] = k;
        }
    }
    Ok(NarrowClassGroup { set, table })
}

/// Doubled Pell coordinates: u = u2/2, v = v2/2 with u² − d v² = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellUnit {
    pub u2: Int,
    pub v2: Int,
}

/// Fundamental solution of x² − d y² = ±4 with x, y > 0, and its sign.
/// Read off the first convergent p/q of (b0 + √d)/2 whose p − q·ω' has norm ±1.
pub fn fundamental_unit(d: &Int) -> Result<(Int, Int, i32)> {
    check_fundamental(d)?;
    let b0 = d.mod_floor(&int(2));
    let s = d.sqrt();
    let n0 = (&b0 * &b0 - d) / 4;
    // complete quotients (P + √d)/Q
    let (mut pp, mut qq) = (b0.clone(), int(2));
    let (mut p_prev, mut p_cur) = (int(0), int(1));
    let (mut q_prev, mut q_cur) = (int(1), int(0));
    loop {
        let a = (&pp + &s).div_floor(&qq);
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        let norm: Int = &p_cur * &p_cur - &b0 * &p_cur * &q_cur + &n0 * &q_cur * &q_cur;
        if norm.abs().is_one() {
            let x = int(2) * &p_cur - &q_cur * &b0;
            return Ok((x, q_cur, if norm.is_positive() { 1 } else { -1 }));
        }
        pp = &a * &qq - &pp;
        qq = (d - &pp * &pp) / &qq;
        debug_assert!(qq.is_positive());
    }
}

pub fn pell_plus(d: &Int) -> Result<PellUnit> {
    let (x, y, norm) = fundamental_unit(d)?;
    if norm == 1 {
        Ok(PellUnit { u2: x, v2: y })
    } else {
        Ok(PellUnit { u2: (&x * &x + d * &y * &y) / 2, v2: x * y })
    }
}

pub fn has_norm_minus_one_unit(d: &Int) -> Result<bool> {
    Ok(fundamental_unit(d)?.2 == -1)
}

/// The form (−1, b0, (d − b0²)/4): the principal class with orientation reversed.
pub fn j_form(d: &Int) -> QuadForm {
    principal_form(d).neg()
}

pub fn j_class(d: &Int) -> Result<FormClass> {
    check_fundamental(d)?;
    form_class(&j_form(d))
}

/// d = d1·d2 with both factors fundamental discriminants (or 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GenusCharacter {
    pub d1: i64,
    pub d2: i64,
}

impl GenusCharacter {
    pub fn is_trivial(&self) -> bool {
        self.d1 == 1 || self.d2 == 1
    }
    /// Value on the class of a form representing m, gcd(m, 2d) = 1.
    pub fn value_at(&self, m: &Int) -> i32 {
        kronecker(&int(self.d1), m)
    }
}

impl fmt::Display for GenusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// Prime discriminants whose product is d: q* = ±q for odd q, and −4, ±8.
pub fn prime_discriminants(d: &Int) -> Result<Vec<i64>> {
    check_fundamental(d)?;
    let mut n = d.to_i64().ok_or_else(|| Error::Invalid("discriminant too large".into()))?;
    let mut out = Vec::new();
    let mut odd_product = 1i64;
    let mut q = 3i64;
    while n % 2 == 0 {
        n /= 2;
    }
    while q * q <= n {
        if n % q == 0 {
            let qs = if q % 4 == 1 { q } else { -q };
            out.push(qs);
            odd_product *= qs;
            n /= q;
        }
        q += 2;
    }
    if n > 1 {
        let qs = if n % 4 == 1 { n } else { -n };
        out.push(qs);
        odd_product *= qs;
    }
    let dd = d.to_i64().unwrap();
    let two_part = dd / odd_product;
    if two_part != 1 {
        out.push(two_part);
    }
    out.sort_by_key(|x| (x.abs(), *x));
    Ok(out)
}

/// All 2^{t−1} genus characters, the trivial one first, each pair ordered
/// d1 <= d2.
pub fn genus_characters(d: &Int) -> Result<Vec<GenusCharacter>> {
    let primes = prime_discriminants(d)?;
    let t = primes.len();
    let dd = d.to_i64().unwrap();
    let mut chars = Vec::new();
    for mask in 0u64..(1u64 << (t - 1)) {
        let d1: i64 = (0..t - 1).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]).product();
        let d2 = dd / d1;
        let (x, y) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        chars.push(GenusCharacter { d1: x, d2: y });
    }
    chars.sort_by_key(|c| (!c.is_trivial(), c.d1.abs(), c.d1));
    Ok(chars)
}

/// A value represented by Q coprime to 2d, of least absolute value inside the
/// first box where one appears.
pub fn represented_coprime_value(q: &QuadForm) -> Int {
    let m = int(2) * q.disc();
    let mut bound = 2i64;
    loop {
        let mut best: Option<Int> = None;
        for x in -bound..=bound {
            for y in 0..=bound {
                if num_integer::gcd(x, y) != 1 {
                    continue;
                }
                let v = q.eval(&int(x), &int(y));
                if v.is_zero() || !v.gcd(&m).is_one() {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some(b) => (v.abs(), v.is_negative()) < (b.abs(), b.is_negative()),
                };
                if better {
                    best = Some(v);
                }
            }
        }
        if let Some(v) = best {
            return v;
        }
        bound *= 2;
    }
}

/// Values of the nontrivial genus characters, in `genus_characters` order.
pub fn genus_signature(q: &QuadForm) -> Result<Vec<i32>> {
    let chars = genus_characters(&q.disc())?;
    let m = represented_coprime_value(q);
    Ok(chars.iter().filter(|c| !c.is_trivial()).map(|c| c.value_at(&m)).collect())
}

pub fn in_principal_genus(q: &QuadForm) -> Result<bool> {
    Ok(genus_signature(q)?.iter().all(|&v| v == 1))
}

/// Least r >= 0 with r² ≡ d mod 4p and r ≡ d mod 2; None when p is inert.
pub fn sqrt_mod_4p(d: &Int, p: &Int) -> Result<Option<Int>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if (d % p).is_zero() {
        return Err(Error::Ramified { p: p.to_string(), d: d.to_string() });
    }
    let four_p = int(4) * p;
    let parity = d.mod_floor(&int(2));
    let mut r = parity.clone();
    let two_p = int(2) * p;
    while r < two_p {
        if (&r * &r - d).mod_floor(&four_p).is_zero() {
            return Ok(Some(r));
        }
        r += 2;
    }
    Ok(None)
}

pub fn p_ideal_form(d: &Int, p: &Int, r: &Int) -> Result<QuadForm> {
    let num = r * r - d;
    let four_p = int(4) * p;
    if !(&num % &four_p).is_zero() {
        return Err(Error::Invalid(format!("r = {r} does not satisfy r² ≡ {d} mod {four_p}")));
    }
    QuadForm::new(p.clone(), r.clone(), num / four_p)
}

/// γ_Q = (u + bv, 2cv; −2av, u − bv) for a form with p | a.
pub fn gamma_q(q: &QuadForm, p: &Int) -> Result<Mat> {
    let unit = pell_plus(&q.disc())?;
    gamma_q_with_unit(q, p, &unit)
}

pub fn gamma_q_with_unit(q: &QuadForm, p: &Int, unit: &PellUnit) -> Result<Mat> {
    if !(&q.a % p).is_zero() {
        return Err(Error::LevelViolation(q.to_string(), p.to_string()));
    }
    let (u2, v2) = (&unit.u2, &unit.v2);
    Mat::new(
        (u2 + &q.b * v2) / 2,
        &q.c * v2,
        -(&q.a * v2),
        (u2 - &q.b * v2) / 2,
    )
}

/// A level-p form attached to a narrow class.
#[derive(Clone, Debug)]
pub struct LevelClass {
    /// index into the class list of the discriminant
    pub label: usize,
    pub form: QuadForm,
}

/// One level-p form per narrow class A, with p | a and b ≡ r mod 2p, chosen so
/// that its p-dilation (a/p, b, cp) lies in A. Built by composing a
/// representative of A (first coefficient prime to p) with (p, r, ·).
pub fn level_p_classes(set: &ClassSet, p: &Int, r: &Int) -> Result<Vec<LevelClass>> {
    let d = &set.d;
    if (d % p).is_zero() {
        return Err(Error::Ramified { p: p.to_string(), d: d.to_string() });
    }
    if !(r * r - d).mod_floor(&(int(4) * p)).is_zero() {
        return Err(Error::Inert { p: p.to_string(), d: d.to_string() });
    }
    let mut out = Vec::with_capacity(set.h_plus());
    for (label, fc) in set.classes.iter().enumerate() {
        // smallest |a| prime to p, positive first
        let f = match fc
            .cycle
            .iter()
            .filter(|f| f.a.gcd(p).is_one())
            .min_by_key(|f| (f.a.abs(), f.a.is_negative(), f.b.clone()))
        {
            Some(f) => f.clone(),
            None => fc.fingerprint.coprime_representative(p).0,
        };
        let a = &f.a * p;
        // translate b into (−|a|, |a|]; a T-power substitution, so the
        // Gamma0(p)-class is unchanged
        let b0 = crt_middle(&f.a, &f.b, p, r)?;
        let two_a = int(2) * a.abs();
        let shifted: Int = &b0 + a.abs() - 1;
        let b = &b0 - shifted.div_floor(&two_a) * &two_a;
        let c = (&b * &b - d) / (int(4) * &a);
        let form = QuadForm { a, b, c };
        out.push(LevelClass { label, form });
    }
    Ok(out)
}

/// Family generator: fundamental d with d m² = n² + p, p ∤ n, and a prime
/// q ≡ 3 mod 4 dividing d. Every output must pass the three family filters.
pub fn family_candidates(p: i64, n_max: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        if n % p == 0 {
            continue;
        }
        let big = n * n + p;
        // big = f·s² with f squarefree
        let mut f = 1i64;
        let mut rest = big;
        let mut k = 2i64;
        let mut s = 1i64;
        while k * k <= rest {
            while rest % (k * k) == 0 {
                rest /= k * k;
                s *= k;
            }
            if rest % k == 0 {
                rest /= k;
                f *= k;
            }
            k += 1;
        }
        f *= rest;
        let d = if f % 4 == 1 {
            f
        } else if s % 2 == 0 {
            4 * f
        } else {
            continue;
        };
        let has_q3 = {
            let mut m = f;
            let mut found = false;
            let mut q = 3i64;
            while q * q <= m {
                if m % q == 0 {
                    found |= q % 4 == 3;
                    while m % q == 0 {
                        m /= q;
                    }
                }
                q += 2;
            }
            found || (m > 1 && m % 4 == 3)
        };
        if has_q3 && d > 1 {
            out.push(d);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The three hypotheses: p splits, no unit of norm −1, and A_p outside (Cl⁺)².
pub fn in_family(p: &Int, d: &Int) -> Result<bool> {
    if !is_fundamental(d) || (d % p).is_zero() {
        return Ok(false);
    }
    let r = match sqrt_mod_4p(d, p)? {
        Some(r) => r,
        None => return Ok(false),
    };
    if has_norm_minus_one_unit(d)? {
        return Ok(false);
    }
    Ok(!in_principal_genus(&p_ideal_form(d, p, &r)?)?)
}

pub fn discriminant_family(p: &Int, limit: &Int) -> Result<Vec<Int>> {
    if !is_prime(p) || p == &int(2) {
        return Err(Error::Invalid(format!("{p} is not an odd prime")));
    }
    let mut out = Vec::new();
    let mut d = int(5);
    while &d <= limit {
        if in_family(p, &d)? {
            out.push(d.clone());
        }
        d += 1;
    }
    Ok(out)
}
