//! Exact integers, rationals and PSL2(Z) matrices, plus the number theory
//! that sits directly on top of them: Kronecker symbols, sawtooth and
//! Dedekind sums, and the Rademacher symbol.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

pub fn rat_int(n: Int) -> Rat {
    Rat::from_integer(n)
}

/// Sign as -1, 0, 1.
pub fn sign(x: &Int) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Floor of a rational.
pub fn floor_rat(x: &Rat) -> Int {
    x.numer().div_floor(x.denom())
}

/// "num/den" rendering used by every text output.
pub fn rat_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Decimal rendering with `digits` digits after the point, truncated toward
/// zero and computed exactly.
pub fn rat_decimal(x: &Rat, digits: usize) -> String {
    let scale = num_traits::pow(int(10), digits);
    let scaled = (x * rat_int(scale.clone())).trunc().to_integer();
    let neg = scaled.is_negative();
    let mag = scaled.abs();
    let (ip, fp) = mag.div_rem(&scale);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&format!("{}.{:0>width$}", ip, fp.to_string(), width = digits));
    s
}

/// An element of PSL2(Z), stored as the representative with c > 0, or
/// c = 0 and a > 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    a: Int,
    b: Int,
    c: Int,
    d: Int,
}

/// Canonical representative of {M, -M}.
pub fn psl_normalize(a: Int, b: Int, c: Int, d: Int) -> Result<Mat> {
    let det = &a * &d - &b * &c;
    if !det.is_one() {
        return Err(Error::Determinant(det.to_string()));
    }
    Ok(Mat::normalized_unchecked(a, b, c, d))
}

impl Mat {
    fn normalized_unchecked(a: Int, b: Int, c: Int, d: Int) -> Mat {
        let flip = c.is_negative() || (c.is_zero() && a.is_negative());
        if flip {
            Mat { a: -a, b: -b, c: -c, d: -d }
        } else {
            Mat { a, b, c, d }
        }
    }

    pub fn new(a: Int, b: Int, c: Int, d: Int) -> Result<Mat> {
        psl_normalize(a, b, c, d)
    }

    /// Small-entry constructor; panics on a bad determinant, so meant for
    /// literals.
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Mat {
        psl_normalize(int(a), int(b), int(c), int(d)).expect("determinant 1")
    }

    pub fn identity() -> Mat {
        Mat::from_i64(1, 0, 0, 1)
    }

    pub fn t() -> Mat {
        Mat::from_i64(1, 1, 0, 1)
    }

    pub fn t_pow(k: &Int) -> Mat {
        Mat { a: int(1), b: k.clone(), c: int(0), d: int(1) }
    }

    pub fn a(&self) -> &Int {
        &self.a
    }
    pub fn b(&self) -> &Int {
        &self.b
    }
    pub fn c(&self) -> &Int {
        &self.c
    }
    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn entries(&self) -> [Int; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    pub fn inverse(&self) -> Mat {
        Mat::normalized_unchecked(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, e: i64) -> Mat {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Mat::identity();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            n >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.c.is_zero() && self.b.is_zero()
    }

    /// Trace of the canonical representative (so only |trace| is meaningful).
    pub fn trace(&self) -> Int {
        &self.a + &self.d
    }

    pub fn in_gamma0(&self, p: &Int) -> bool {
        (&self.c % p).is_zero()
    }

    /// Order in PSL2(Z) when finite (1, 2 or 3).
    pub fn finite_order(&self) -> Option<u32> {
        if self.is_identity() {
            return Some(1);
        }
        let t = self.trace().abs();
        if t.is_zero() {
            Some(2)
        } else if t.is_one() {
            Some(3)
        } else {
            None
        }
    }

    pub fn max_abs_entry(&self) -> Int {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap()
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        Mat::normalized_unchecked(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for Mat {
    type Output = Mat;
    fn mul(self, o: Mat) -> Mat {
        &self * &o
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Kronecker symbol (a/n), the full extension of the Jacobi symbol to all
/// integers n.
pub fn kronecker(a: &Int, n: &Int) -> i32 {
    const TAB2: [i32; 8] = [0, 1, 0, -1, 0, -1, 0, 1];
    let mod8 = |x: &Int| -> usize { x.mod_floor(&int(8)).try_into().unwrap_or(0) };
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    if a.is_even() && n.is_even() {
        return 0;
    }
    let mut b = n.clone();
    let mut v = 0u64;
    while b.is_even() {
        b >>= 1;
        v += 1;
    }
    let mut k = if v % 2 == 0 { 1 } else { TAB2[mod8(a)] };
    if b.is_negative() {
        b = -b;
        if a.is_negative() {
            k = -k;
        }
    }
    // b is odd and positive: Jacobi symbol from here on.
    let mut a = a.mod_floor(&b);
    loop {
        if a.is_zero() {
            return if b.is_one() { k } else { 0 };
        }
        let mut v = 0u64;
        while a.is_even() {
            a >>= 1;
            v += 1;
        }
        if v % 2 == 1 {
            k *= TAB2[mod8(&b)];
        }
        if mod8(&a) % 4 == 3 && mod8(&b) % 4 == 3 {
            k = -k;
        }
        let r = a.clone();
        a = b.mod_floor(&r);
        b = r;
    }
}

/// ((x)) = x - floor(x) - 1/2 off the integers, 0 on them.
pub fn sawtooth(x: &Rat) -> Rat {
    if x.is_integer() {
        return Rat::zero();
    }
    x - rat_int(floor_rat(x)) - rat(1, 2)
}

/// Dedekind sum s(a, c), c > 0, by the reciprocity law
/// s(a,c) + s(c,a) = -1/4 + (a/c + c/a + 1/(ac))/12.
pub fn dedekind_sum(a: &Int, c: &Int) -> Result<Rat> {
    if !c.is_positive() {
        return Err(Error::NonPositiveModulus(c.to_string()));
    }
    // s(ka, kc) = s(a, c)
    let g = a.gcd(c);
    let mut c = c / &g;
    let mut a = (a / &g).mod_floor(&c);
    let mut acc = Rat::zero();
    let mut positive = true;
    while !a.is_zero() {
        let ac = &a * &c;
        let term = rat(-1, 4)
            + (Rat::new(&a * &a + &c * &c + int(1), ac)) / rat_int(int(12));
        if positive {
            acc += term;
        } else {
            acc -= term;
        }
        positive = !positive;
        let r = c.mod_floor(&a);
        c = a;
        a = r;
    }
    Ok(acc)
}

/// Rademacher symbol: (a+d)/c - 12 sign(c) s(a,c) - 3 sign(c(a+d)) for
/// c != 0, and b/d otherwise. sign(0) is taken to be 0.
pub fn rademacher_psi(m: &Mat) -> Rat {
    // canonical representative has c >= 0, and c = 0 forces a = d = 1
    if m.c.is_zero() {
        return Rat::new(m.b.clone(), m.d.clone());
    }
    let tr = m.trace();
    let s = dedekind_sum(&m.a, &m.c).expect("c > 0");
    Rat::new(tr.clone(), m.c.clone()) - s * rat_int(int(12)) - rat_int(int(3 * sign(&tr) as i64))
}

/// A cusp: a reduced fraction with non-negative denominator, or infinity as 1/0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtRat {
    num: Int,
    den: Int,
}

impl ExtRat {
    pub fn new(num: Int, den: Int) -> Result<ExtRat> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::Invalid("0/0 is not a cusp".into()));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / &g);
        if d.is_negative() || (d.is_zero() && n.is_negative()) {
            n = -n;
            d = -d;
        }
        Ok(ExtRat { num: n, den: d })
    }

    pub fn infinity() -> ExtRat {
        ExtRat { num: int(1), den: int(0) }
    }

    pub fn from_i64(n: i64, d: i64) -> ExtRat {
        ExtRat::new(int(n), int(d)).expect("valid cusp")
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    pub fn num(&self) -> &Int {
        &self.num
    }

    pub fn den(&self) -> &Int {
        &self.den
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if self.is_infinity() {
            None
        } else {
            Some(Rat::new(self.num.clone(), self.den.clone()))
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Linear fractional action on cusps.
pub fn mobius_act(m: &Mat, x: &ExtRat) -> ExtRat {
    let n = &m.a * &x.num + &m.b * &x.den;
    let d = &m.c * &x.num + &m.d * &x.den;
    // determinant 1 keeps (n, d) coprime and never both zero
    ExtRat::new(n, d).expect("nonzero column")
}

pub fn is_prime(n: &Int) -> bool {
    if n < &int(2) {
        return false;
    }
    let mut k = int(2);
    while &k * &k <= *n {
        if (n % &k).is_zero() {
            return false;
        }
        k += 1;
    }
    true
}

/// Extended gcd: (g, x, y) with a x + b y = g >= 0.
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Inverse of a modulo m (m > 0), if it exists.
pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    let (g, x, _) = ext_gcd(&a.mod_floor(m), m);
    if g.is_one() {
        Some(x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // the defining O(c) sum
    fn dedekind_naive(a: i64, c: i64) -> Rat {
        (1..=c)
            .map(|n| sawtooth(&rat(n, c)) * sawtooth(&rat(n * a, c)))
            .fold(Rat::zero(), |x, y| x + y)
    }

    // Euler's criterion / brute force squares, then multiplicativity
    fn legendre_oracle(a: i64, q: i64) -> i32 {
        let r = a.rem_euclid(q);
        if r == 0 {
            return 0;
        }
        if (1..q).any(|x| (x * x) % q == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(psl_normalize(int(-1), int(0), int(0), int(-1)).unwrap(), Mat::identity());
        let g = psl_normalize(int(-26), int(35), int(-55), int(74)).unwrap();
        assert_eq!(g.entries(), [int(26), int(-35), int(55), int(-74)]);
        let m = Mat::from_i64(1, -5, 0, 1);
        assert_eq!(m.entries(), [int(1), int(-5), int(0), int(1)]);
        assert!(psl_normalize(int(2), int(0), int(0), int(1)).is_err());
    }

    #[test]
    fn kronecker_examples_and_oracle() {
        assert_eq!(kronecker(&int(92), &int(11)), 1);
        assert_eq!(kronecker(&int(-4), &int(7)), -1);
        assert_eq!(kronecker(&int(12345), &int(1)), 1);
        for q in [3i64, 5, 7, 11, 13, 23, 101] {
            for a in -60..60 {
                assert_eq!(kronecker(&int(a), &int(q)), legendre_oracle(a, q), "({a}/{q})");
            }
        }
        // (a/2) for odd a depends on a mod 8
        for a in [1i64, 7, -1, 9] {
            assert_eq!(kronecker(&int(a), &int(2)), 1);
        }
        for a in [3i64, 5, -3, 11] {
            assert_eq!(kronecker(&int(a), &int(2)), -1);
        }
        assert_eq!(kronecker(&int(-4), &int(-1)), -1);
        assert_eq!(kronecker(&int(5), &int(-1)), 1);
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&rat(1, 3)), rat(-1, 6));
        assert_eq!(sawtooth(&rat(0, 1)), rat(0, 1));
        assert_eq!(sawtooth(&rat(-1, 3)), rat(1, 6));
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_naive(1, 3), rat(1, 18));
        assert_eq!(dedekind_naive(7, 11), rat(-3, 22));
        assert_eq!(dedekind_sum(&int(1), &int(3)).unwrap(), rat(1, 18));
        assert_eq!(dedekind_sum(&int(0), &int(1)).unwrap(), rat(0, 1));
        assert_eq!(dedekind_sum(&int(7), &int(11)).unwrap(), rat(-3, 22));
        assert!(dedekind_sum(&int(1), &int(0)).is_err());
    }

    // same defining sum with the common denominator 4c^2 pulled out
    fn dedekind_naive_int(a: i64, c: i64) -> Rat {
        let saw = |k: i64| {
            let r = k.rem_euclid(c);
            if r == 0 { 0 } else { 2 * r - c }
        };
        let total: i64 = (1..=c).map(|n| saw(n) * saw(n * a)).sum();
        rat(total, 4 * c * c)
    }

    #[test]
    fn dedekind_matches_defining_sum_up_to_200() {
        for c in 1..=200i64 {
            for a in 0..c {
                assert_eq!(dedekind_sum(&int(a), &int(c)).unwrap(), dedekind_naive_int(a, c), "s({a},{c})");
            }
        }
        for (a, c) in [(3, 7), (5, 12), (0, 9)] {
            assert_eq!(dedekind_naive_int(a, c), dedekind_naive(a, c));
        }
    }

    #[test]
    fn rademacher_examples() {
        assert_eq!(rademacher_psi(&Mat::t()), rat(1, 1));
        assert_eq!(rademacher_psi(&Mat::from_i64(1, 11, 0, 1)), rat(11, 1));
        assert_eq!(rademacher_psi(&Mat::from_i64(7, -2, 11, -3)), rat(-1, 1));
        assert_eq!(rademacher_psi(&Mat::from_i64(0, -1, 1, 0)), rat(0, 1));
    }

    #[test]
    fn mobius_examples() {
        let inf = ExtRat::infinity();
        assert_eq!(mobius_act(&Mat::t(), &inf), inf);
        let b_inv = Mat::from_i64(4, -3, 11, -8);
        assert_eq!(mobius_act(&b_inv, &ExtRat::from_i64(1, 1)), ExtRat::from_i64(1, 3));
        let x = ExtRat::from_i64(-5, 7);
        assert_eq!(mobius_act(&Mat::identity(), &x), x);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat_decimal(&rat(1, 2), 12), "0.500000000000");
        assert_eq!(rat_decimal(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(rat_decimal(&rat(7, 3), 3), "2.333");
    }
}
