//! Experiment driver: qualifying conditions, principal-genus class sums of
//! geodesic classes, the sup-distance to −v_E, the Hecke genus identity, and
//! the concentration sweep.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{int, rat_decimal, rat_string, Int, Rat};
use crate::geocoding::{geodesic_with_unit, membership_refutation, pairing_of_vector, HomologyVector, Membership};
use crate::json::{int_value, ints_value, rat_value};
use crate::modcurve::Level;
use crate::quadforms::{
    form_classes, gamma_q_with_unit, genus_characters, has_norm_minus_one_unit, is_fundamental, is_fundamental_discriminant,
    j_form,
    level_p_classes, p_ideal_form, pell_plus, represented_coprime_value, sqrt_mod_4p, ClassSet, GenusCharacter,
    LevelClass, PellUnit, QuadForm,
};

/// Class-group data of one discriminant, shared by every check below.
#[derive(Clone, Debug)]
pub struct Discriminant {
    pub d: Int,
    pub set: ClassSet,
    pub unit: PellUnit,
    pub norm_minus_one: bool,
    pub characters: Vec<GenusCharacter>,
    /// chi values per class, in `characters` order
    pub values: Vec<Vec<i32>>,
    pub j_index: usize,
}

impl Discriminant {
    pub fn new(d: &Int) -> Result<Discriminant> {
        let set = form_classes(d)?;
        let unit = pell_plus(d)?;
        let norm_minus_one = has_norm_minus_one_unit(d)?;
        let characters = genus_characters(d)?;
        let values = set
            .classes
            .iter()
            .map(|c| {
                let m = represented_coprime_value(&c.fingerprint);
                characters.iter().map(|ch| ch.value_at(&m)).collect()
            })
            .collect();
        let j_index = set.index_of(&j_form(d))?;
        Ok(Discriminant { d: d.clone(), set, unit, norm_minus_one, characters, values, j_index })
    }

    pub fn in_principal_genus(&self, class: usize) -> bool {
        self.values[class].iter().all(|&v| v == 1)
    }

    /// |(Cl⁺)²| = h⁺ / (number of genera)
    pub fn subgroup_order(&self) -> usize {
        self.set.h_plus() / self.characters.len()
    }
}

/// Which hypotheses hold for (p, d).
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub d: Int,
    pub p: Int,
    pub splits: bool,
    pub r: Option<Int>,
    pub has_norm_minus_one: bool,
    pub j_nontrivial: bool,
    /// J ∉ (Cl⁺)²; stronger than J ≠ I when every odd prime factor of d is 1 mod 4
    pub j_outside_principal_genus: bool,
    pub ap_outside_principal_genus: bool,
    pub h_plus: usize,
    pub subgroup_order: usize,
    /// class index of A_p when p splits
    pub ap_index: Option<usize>,
}

impl ConditionReport {
    pub fn qualifies(&self) -> bool {
        self.splits && self.j_nontrivial && self.j_outside_principal_genus && self.ap_outside_principal_genus
    }

    /// First failed hypothesis, for error messages.
    pub fn failure(&self) -> Option<&'static str> {
        if !self.splits {
            Some("p does not split")
        } else if !self.j_nontrivial {
            Some("a unit of norm −1 exists, so J is trivial")
        } else if !self.j_outside_principal_genus {
            Some("J lies in the principal genus, so ±Q cancel in the class sum")
        } else if !self.ap_outside_principal_genus {
            Some("A_p lies in the principal genus")
        } else {
            None
        }
    }
}

pub fn conditions(p: &Int, disc: &Discriminant) -> Result<ConditionReport> {
    let d = &disc.d;
    let r = if (d % p).is_zero() { None } else { sqrt_mod_4p(d, p)? };
    let ap_index = match &r {
        Some(r) => Some(disc.set.index_of(&p_ideal_form(d, p, r)?)?),
        None => None,
    };
    Ok(ConditionReport {
        d: d.clone(),
        p: p.clone(),
        splits: r.is_some(),
        r,
        has_norm_minus_one: disc.norm_minus_one,
        j_nontrivial: disc.j_index != disc.set.identity,
        j_outside_principal_genus: !disc.in_principal_genus(disc.j_index),
        ap_outside_principal_genus: ap_index.map(|i| !disc.in_principal_genus(i)).unwrap_or(false),
        h_plus: disc.set.h_plus(),
        subgroup_order: disc.subgroup_order(),
        ap_index,
    })
}

fn level_classes(report: &ConditionReport, disc: &Discriminant) -> Result<Vec<LevelClass>> {
    match &report.r {
        Some(r) => level_p_classes(&disc.set, &report.p, r),
        None => Err(Error::Inert { p: report.p.to_string(), d: disc.d.to_string() }),
    }
}

/// Σ over the principal genus of the geodesic classes, with its pieces.
#[derive(Clone, Debug)]
pub struct ClassSum {
    pub vector: HomologyVector,
    pub forms: Vec<QuadForm>,
    /// Σ of the Rademacher pairings of the summands
    pub pairing: Rat,
    pub word_length: Int,
}

pub fn class_sum(level: &Level, disc: &Discriminant) -> Result<ClassSum> {
    let report = conditions(&level.p(), disc)?;
    if let Some(reason) = report.failure() {
        return Err(Error::NotQualifying { p: level.p().to_string(), d: disc.d.to_string(), reason: reason.into() });
    }
    class_sum_unchecked(level, disc, &report)
}

fn class_sum_unchecked(level: &Level, disc: &Discriminant, report: &ConditionReport) -> Result<ClassSum> {
    let mut vector = HomologyVector::zero(level.basis.rank());
    let mut forms = Vec::new();
    let mut pairing = Rat::zero();
    let mut word_length = Int::zero();
    for lc in level_classes(report, disc)? {
        if !disc.in_principal_genus(lc.label) {
            continue;
        }
        let g = geodesic_with_unit(&lc.form, level, &disc.unit)?;
        vector = &vector + &g.homology;
        pairing += &g.pairing;
        word_length += g.word.length();
        forms.push(lc.form);
    }
    Ok(ClassSum { vector, forms, pairing, word_length })
}

/// ‖ v/‖v‖_∞ + e_T ‖_∞
pub fn sup_distance(v: &HomologyVector) -> Result<Rat> {
    let m = v.0.iter().map(|x| x.abs()).max().unwrap_or_default();
    if m.is_zero() {
        return Err(Error::ZeroVector);
    }
    let m = Rat::from_integer(m);
    Ok(v.0
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let y = Rat::from_integer(x.clone()) / &m;
            if i == 0 {
                (y + Rat::one()).abs()
            } else {
                y.abs()
            }
        })
        .max()
        .unwrap())
}

/// |v_0| > |v_i| for every i > 0.
pub fn eisenstein_coordinate_maximal(v: &HomologyVector) -> bool {
    let e = v.0[0].abs();
    v.0[1..].iter().all(|x| x.abs() < e)
}

/// h(D) for D < 0 fundamental, by counting reduced forms.
pub fn class_number_imag(dneg: &Int) -> Result<Int> {
    if !dneg.is_negative() || !is_fundamental_discriminant(dneg) {
        return Err(Error::NotFundamental(dneg.to_string()));
    }
    let dd = dneg.to_i64().ok_or_else(|| Error::Invalid(format!("discriminant {dneg} too large")))?;
    let n = -dd;
    let mut h = 0i64;
    // a ≤ √(|D|/3)
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b - dd;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    Ok(int(h))
}

fn units_imag(dneg: i64) -> i64 {
    match dneg {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// L(χ, 0) of a genus character: the product of 2h/w over its two factors
/// when both are negative, 0 otherwise.
pub fn genus_l_value(chi: &GenusCharacter) -> Result<Rat> {
    if chi.d1 < 0 && chi.d2 < 0 {
        let f = |x: i64| -> Result<Rat> {
            Ok(Rat::new(int(2) * class_number_imag(&int(x))?, int(units_imag(x))))
        };
        Ok(f(chi.d1)? * f(chi.d2)?)
    } else {
        Ok(Rat::zero())
    }
}

#[derive(Clone, Debug)]
pub struct HeckeRow {
    pub chi: GenusCharacter,
    pub lhs: Rat,
    pub rhs: Rat,
    pub chi_j: i32,
    pub chi_ap: i32,
    pub l_value: Rat,
}

impl HeckeRow {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct HeckeReport {
    pub p: Int,
    pub d: Int,
    /// ⟨C_A, ω_E⟩ per narrow class, by the Rademacher route
    pub pairings: Vec<Rat>,
    pub forms: Vec<QuadForm>,
    pub rows: Vec<HeckeRow>,
}

impl HeckeReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(HeckeRow::holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": int_value(&self.p),
            "d": int_value(&self.d),
            "classes": self.forms.iter().zip(&self.pairings).map(|(f, e)| json!({
                "form": ints_value(&[f.a.clone(), f.b.clone(), f.c.clone()]),
                "eisenstein_pairing": rat_value(e),
            })).collect::<Vec<_>>(),
            "characters": self.rows.iter().map(|r| json!({
                "chi": [r.chi.d1, r.chi.d2],
                "lhs": rat_value(&r.lhs),
                "rhs": rat_value(&r.rhs),
                "chi_J": r.chi_j,
                "chi_Ap": r.chi_ap,
                "L": rat_value(&r.l_value),
                "holds": r.holds(),
            })).collect::<Vec<_>>(),
            "holds": self.holds(),
        })
    }
}

/// Σ_A ⟨C_A, ω_E⟩ χ(A) against 6/(p−1)·(1 − χ(J))(χ(A_p) − 1)·L(χ, 0) for
/// every genus character, trivial one included.
pub fn hecke_identity_check(p: &Int, disc: &Discriminant) -> Result<HeckeReport> {
    let report = conditions(p, disc)?;
    let classes = level_classes(&report, disc)?;
    let ap = report.ap_index.expect("split");
    let mut pairings = vec![Rat::zero(); disc.set.h_plus()];
    let mut forms = vec![None; disc.set.h_plus()];
    for lc in &classes {
        let g = gamma_q_with_unit(&lc.form, p, &disc.unit)?;
        pairings[lc.label] = crate::geocoding::eisenstein_pairing(&g, p)?;
        forms[lc.label] = Some(lc.form.clone());
    }
    let forms = forms.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| Error::Defect("a class has no level form".into()))?;
    let factor = Rat::new(int(6), p - 1);
    let mut rows = Vec::new();
    for (k, chi) in disc.characters.iter().enumerate() {
        let lhs: Rat = pairings
            .iter()
            .enumerate()
            .map(|(a, e)| e * Rat::from_integer(int(disc.values[a][k] as i64)))
            .sum();
        let chi_j = if chi.d1 < 0 && chi.d2 < 0 { -1 } else { 1 };
        let chi_ap = disc.values[ap][k];
        let l_value = genus_l_value(chi)?;
        let rhs = &factor * Rat::from_integer(int((1 - chi_j) as i64 * (chi_ap - 1) as i64)) * &l_value;
        rows.push(HeckeRow { chi: *chi, lhs, rhs, chi_j, chi_ap, l_value });
    }
    Ok(HeckeReport { p: p.clone(), d: disc.d.clone(), pairings, forms, rows })
}

/// One qualifying discriminant of the sweep.
#[derive(Clone, Debug)]
pub struct ExperimentRecord {
    pub report: ConditionReport,
    pub class_sum: HomologyVector,
    pub eis_pairing: Rat,
    pub sup_distance: Rat,
    pub eis_coord_maximal: bool,
    pub word_length_total: Int,
    pub elapsed_ms: Option<u128>,
}

impl ExperimentRecord {
    pub fn to_json(&self) -> Value {
        let r = &self.report;
        json!({
            "d": int_value(&r.d),
            "h_plus": r.h_plus,
            "subgroup_order": r.subgroup_order,
            "splits": r.splits,
            "r": r.r.as_ref().map(int_value),
            "j_nontrivial": r.j_nontrivial,
            "ap_outside_principal_genus": r.ap_outside_principal_genus,
            "class_sum": self.class_sum.to_json(),
            "eis_pairing": rat_value(&self.eis_pairing),
            "sup_distance": rat_value(&self.sup_distance),
            "sup_distance_dec": rat_decimal(&self.sup_distance, 12),
            "eis_coord_maximal": self.eis_coord_maximal,
            "word_length_total": int_value(&self.word_length_total),
            "elapsed_ms": self.elapsed_ms.map(|t| t as u64),
        })
    }
}

pub const CSV_HEADER: [&str; 14] = [
    "d",
    "h_plus",
    "subgroup_order",
    "splits",
    "r",
    "j_nontrivial",
    "ap_outside_principal_genus",
    "class_sum",
    "eis_pairing",
    "sup_distance",
    "sup_distance_dec",
    "eis_coord_maximal",
    "word_length_total",
    "elapsed_ms",
];

/// Build the record for (p, d), or None when (p, d) does not qualify.
pub fn experiment(level: &Level, d: &Int, timing: bool) -> Result<Option<ExperimentRecord>> {
    let start = Instant::now();
    let disc = Discriminant::new(d)?;
    let report = conditions(&level.p(), &disc)?;
    if !report.qualifies() {
        return Ok(None);
    }
    let sum = class_sum_unchecked(level, &disc, &report)?;
    let via_basis = pairing_of_vector(&sum.vector, &level.basis)?;
    if via_basis != sum.pairing {
        return Err(Error::Defect(format!(
            "d = {d}: pairing {} from the word differs from {} by Dedekind sums",
            rat_string(&via_basis),
            rat_string(&sum.pairing)
        )));
    }
    let sup = sup_distance(&sum.vector)?;
    Ok(Some(ExperimentRecord {
        eis_coord_maximal: eisenstein_coordinate_maximal(&sum.vector),
        class_sum: sum.vector,
        eis_pairing: sum.pairing,
        sup_distance: sup,
        word_length_total: sum.word_length,
        report,
        elapsed_ms: timing.then(|| start.elapsed().as_millis()),
    }))
}

#[derive(Clone, Debug)]
pub struct SweepSummary {
    pub p: Int,
    pub d_max: Int,
    pub rows: usize,
    /// rows with eis_pairing >= 0
    pub sign_violations: Vec<Int>,
    pub spearman: Option<f64>,
    /// least d from which every row has a strictly maximal Eisenstein coordinate
    pub d_star: Option<Int>,
}

impl SweepSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "p": int_value(&self.p),
            "d_max": int_value(&self.d_max),
            "rows": self.rows,
            "sign_violations": ints_value(&self.sign_violations),
            "spearman_d_vs_sup_distance": self.spearman,
            "d_star": self.d_star.as_ref().map(int_value),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Sweep {
    pub records: Vec<ExperimentRecord>,
    pub summary: SweepSummary,
}

impl Sweep {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for rec in &self.records {
            let r = &rec.report;
            w.write_record([
                r.d.to_string(),
                r.h_plus.to_string(),
                r.subgroup_order.to_string(),
                r.splits.to_string(),
                r.r.as_ref().map(|x| x.to_string()).unwrap_or_default(),
                r.j_nontrivial.to_string(),
                r.ap_outside_principal_genus.to_string(),
                rec.class_sum.to_json().to_string(),
                rat_string(&rec.eis_pairing),
                rat_string(&rec.sup_distance),
                rat_decimal(&rec.sup_distance, 12),
                rec.eis_coord_maximal.to_string(),
                rec.word_length_total.to_string(),
                rec.elapsed_ms.map(|t| t.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "records": self.records.iter().map(ExperimentRecord::to_json).collect::<Vec<_>>(),
            "summary": self.summary.to_json(),
        })
    }
}

/// Average ranks, ties sharing the mean position.
fn ranks<T: Ord>(xs: &[T]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].cmp(&xs[b]));
    let mut r = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for k in i..=j {
            r[idx[k]] = avg;
        }
        i = j + 1;
    }
    r
}

/// Spearman's ρ; None when either side is constant or n < 2.
pub fn spearman<A: Ord, B: Ord>(x: &[A], y: &[B]) -> Option<f64> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return None;
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let mean = (n as f64 + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (a, b) = (rx[i] - mean, ry[i] - mean);
        sxy += a * b;
        sxx += a * a;
        syy += b * b;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Every qualifying fundamental d ≤ d_max, in increasing order. Work is
/// spread over `threads` workers; the output does not depend on it.
pub fn run_sweep(level: &Level, d_max: &Int, timing: bool, threads: usize) -> Result<Sweep> {
    let top = d_max.to_i64().ok_or_else(|| Error::Invalid(format!("bound {d_max} too large")))?;
    let ds: Vec<i64> = (5..=top).filter(|&d| is_fundamental(&int(d))).collect();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Result<Option<ExperimentRecord>>)>> = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..threads.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= ds.len() {
                    break;
                }
                let r = experiment(level, &int(ds[i]), timing);
                results.lock().unwrap().push((i, r));
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(i, _)| *i);
    let mut records = Vec::new();
    for (_, r) in results {
        if let Some(rec) = r? {
            records.push(rec);
        }
    }
    let summary = summarize(level.p(), d_max.clone(), &records);
    Ok(Sweep { records, summary })
}

pub fn summarize(p: Int, d_max: Int, records: &[ExperimentRecord]) -> SweepSummary {
    let ds: Vec<Int> = records.iter().map(|r| r.report.d.clone()).collect();
    let sups: Vec<Rat> = records.iter().map(|r| r.sup_distance.clone()).collect();
    let sign_violations = records.iter().filter(|r| !r.eis_pairing.is_negative()).map(|r| r.report.d.clone()).collect();
    let mut d_star = None;
    for r in records.iter().rev() {
        if !r.eis_coord_maximal {
            break;
        }
        d_star = Some(r.report.d.clone());
    }
    SweepSummary { p, d_max, rows: records.len(), sign_violations, spearman: spearman(&ds, &sups), d_star }
}

/// Outcome of the subgroup-membership refutation for one field.
#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub p: Int,
    pub d: Int,
    pub hypothesis_failure: Option<String>,
    pub form: Option<QuadForm>,
    pub outcome: Option<Membership>,
}

impl MembershipReport {
    pub fn to_json(&self) -> Value {
        let (status, t) = match &self.outcome {
            Some(Membership::Refuted { t_exponent }) => ("refuted", Some(int_value(t_exponent))),
            Some(Membership::Inconclusive) => ("inconclusive", Some(json!(0))),
            None => ("hypothesis_failure", None),
        };
        json!({
            "p": int_value(&self.p),
            "d": int_value(&self.d),
            "status": status,
            "t_exponent": t,
            "form": self.form.as_ref().map(|f| ints_value(&[f.a.clone(), f.b.clone(), f.c.clone()])),
            "reason": self.hypothesis_failure,
        })
    }
}

/// Needs a qualifying field with h⁺ = 2 and wide class number 1; then checks
/// the T-exponent of the principal-class geodesic.
pub fn refute_membership_report(level: &Level, d: &Int) -> Result<MembershipReport> {
    let disc = Discriminant::new(d)?;
    let report = conditions(&level.p(), &disc)?;
    let mut out = MembershipReport { p: level.p(), d: d.clone(), hypothesis_failure: None, form: None, outcome: None };
    // no norm −1 unit, so the wide class number is h⁺/2
    let failure = report.failure().map(str::to_string).or_else(|| {
        (report.h_plus != 2).then(|| format!("h+ = {} (need 2, i.e. wide class number 1)", report.h_plus))
    });
    if let Some(f) = failure {
        out.hypothesis_failure = Some(f);
        return Ok(out);
    }
    let lc = level_classes(&report, &disc)?
        .into_iter()
        .find(|lc| lc.label == disc.set.identity)
        .ok_or_else(|| Error::Defect("no level form for the principal class".into()))?;
    let gamma = gamma_q_with_unit(&lc.form, &level.p(), &disc.unit)?;
    out.outcome = Some(membership_refutation(&gamma, level)?);
    out.form = Some(lc.form);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn lvl(p: i64) -> Level {
        Level::new(&int(p)).unwrap()
    }

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(&int(d)).unwrap()
    }

    #[test]
    fn class_sum_examples() {
        let l = lvl(11);
        let s = class_sum(&l, &disc(92)).unwrap();
        assert_eq!(s.vector, HomologyVector::from_i64(&[-2, 1, 0]));
        assert_eq!(s.forms.len(), 1);
        assert_eq!(s.pairing, rat(-9, 5));
        let s = class_sum(&l, &disc(12)).unwrap();
        assert_eq!(s.forms.len(), 1);
        assert_eq!(s.pairing, rat(-1, 5));
        assert_eq!(pairing_of_vector(&s.vector, &l.basis).unwrap(), rat(-1, 5));
        assert!(matches!(class_sum(&l, &disc(5)), Err(Error::NotQualifying { .. })));
    }

    #[test]
    fn j_in_principal_genus_does_not_qualify() {
        // Q(√34): no unit of norm −1, yet d = 8·17 has only positive prime
        // discriminants, so J is a square
        let r = conditions(&int(11), &disc(136)).unwrap();
        assert!(r.splits && r.j_nontrivial && !r.j_outside_principal_genus);
        assert!(!r.qualifies());
        let r = conditions(&int(11), &disc(92)).unwrap();
        assert!(r.j_outside_principal_genus && r.qualifies());
    }

    #[test]
    fn sup_distance_examples() {
        let v = |x: &[i64]| HomologyVector::from_i64(x);
        assert_eq!(sup_distance(&v(&[-1, 0, 0])).unwrap(), rat(0, 1));
        assert_eq!(sup_distance(&v(&[-2, 1, 0])).unwrap(), rat(1, 2));
        assert_eq!(sup_distance(&v(&[0, 1, 0])).unwrap(), rat(1, 1));
        assert_eq!(sup_distance(&v(&[0, 0, 0])), Err(Error::ZeroVector));
        assert_eq!(sup_distance(&v(&[3, 1, 0])).unwrap(), rat(2, 1));
    }

    #[test]
    fn imaginary_class_numbers() {
        let h = |d: i64| class_number_imag(&int(d)).unwrap();
        assert_eq!(h(-3), int(1));
        assert_eq!(h(-4), int(1));
        assert_eq!(h(-23), int(3));
        // known values
        for (d, want) in [(-7, 1), (-8, 1), (-15, 2), (-20, 2), (-47, 5), (-71, 7), (-163, 1), (-191, 13), (-231, 12)] {
            assert_eq!(h(d), int(want), "D={d}");
        }
        assert!(class_number_imag(&int(-12)).is_err());
    }

    #[test]
    fn hecke_examples() {
        let r = hecke_identity_check(&int(11), &disc(92)).unwrap();
        assert!(r.holds());
        let chi = r.rows.iter().find(|x| !x.chi.is_trivial()).unwrap();
        assert_eq!((chi.chi.d1.min(chi.chi.d2), chi.chi.d1.max(chi.chi.d2)), (-23, -4));
        assert_eq!(chi.lhs, rat(-18, 5));
        assert_eq!(chi.l_value, rat(3, 2));
        assert_eq!((chi.chi_j, chi.chi_ap), (-1, -1));
        let triv = r.rows.iter().find(|x| x.chi.is_trivial()).unwrap();
        assert_eq!(triv.lhs, rat(0, 1));
        let mut p = r.pairings.clone();
        p.sort();
        assert_eq!(p, vec![rat(-9, 5), rat(9, 5)]);

        let r = hecke_identity_check(&int(11), &disc(12)).unwrap();
        assert!(r.holds());
        let chi = r.rows.iter().find(|x| !x.chi.is_trivial()).unwrap();
        assert_eq!(chi.lhs, rat(-2, 5));
        assert_eq!(chi.l_value, rat(1, 6));
        assert!(matches!(hecke_identity_check(&int(11), &disc(13)), Err(Error::Inert { .. })));
    }

    #[test]
    fn hecke_identity_all_small() {
        for p in [11i64, 23] {
            for d in 5..=2000 {
                let di = int(d);
                if !is_fundamental(&di) || d % p == 0 {
                    continue;
                }
                if sqrt_mod_4p(&di, &int(p)).unwrap().is_none() {
                    continue;
                }
                let r = hecke_identity_check(&int(p), &disc(d)).unwrap();
                assert!(r.holds(), "p={p} d={d}: {:?}", r.rows);
                assert!(r.pairings.iter().sum::<Rat>().is_zero());
            }
        }
    }

    #[test]
    fn sweep_small() {
        let l = lvl(11);
        let s = run_sweep(&l, &int(100), false, 2).unwrap();
        let ds: Vec<Int> = s.records.iter().map(|r| r.report.d.clone()).collect();
        assert!(ds.contains(&int(12)) && ds.contains(&int(92)));
        assert!(s.summary.sign_violations.is_empty());
        let row = s.records.iter().find(|r| r.report.d == int(92)).unwrap();
        assert_eq!(row.sup_distance, rat(1, 2));
        for r in &s.records {
            assert!(r.eis_pairing.is_negative());
            assert!(r.sup_distance >= rat(0, 1) && r.sup_distance <= rat(2, 1));
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        s.write_csv(&mut a).unwrap();
        run_sweep(&l, &int(100), false, 3).unwrap().write_csv(&mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn membership_examples() {
        let l = lvl(11);
        let r = refute_membership_report(&l, &int(92)).unwrap();
        assert_eq!(r.outcome, Some(Membership::Refuted { t_exponent: int(-2) }));
        let r = refute_membership_report(&l, &int(5)).unwrap();
        assert!(r.hypothesis_failure.is_some());
        let r = refute_membership_report(&l, &int(12)).unwrap();
        assert!(r.outcome.is_some());
    }

    #[test]
    fn spearman_basics() {
        assert_eq!(spearman(&[1, 2, 3], &[3, 2, 1]), Some(-1.0));
        assert_eq!(spearman(&[1, 2, 3], &[1, 1, 1]), None);
        let r = spearman(&[1, 2, 3, 4], &[1, 3, 2, 4]).unwrap();
        assert!((r - 0.8).abs() < 1e-12);
    }
}
