//! Two-row dimensions `φ_A(M)` and exhaustive scans of the lower bounds on
//! irreducible dimensions of `S_M`, plus the calculator for how many encoded
//! bits a register with `k` clean qubits can hold.
//!
//! Every scan walks [`enumerate_partitions`] in its fixed order, so reports
//! are reproducible field for field.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fraction::{floor_log2, Fraction};
use crate::partitions::{binomial, dimension, enumerate_partitions, Cell, Partition};

/// Largest `M` the exhaustive scans accept (`p(40) = 37338`).
pub const SCAN_LIMIT: u32 = 40;

pub(crate) fn ser_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_opt_big<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// A shape whose dimension fell below the bound a scan was checking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub shape: Partition,
    #[serde(serialize_with = "ser_big")]
    pub bound: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub actual: BigUint,
    pub note: String,
}

/// One row of a scan's minima table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Minimum {
    /// What the row is indexed by, e.g. `"A"` or `"part2"`.
    pub parameter: String,
    pub value: u32,
    pub shape: Partition,
    #[serde(serialize_with = "ser_big")]
    pub dimension: BigUint,
    #[serde(serialize_with = "ser_opt_big")]
    pub bound: Option<BigUint>,
    pub holds: bool,
    pub note: String,
}

/// Result of an exhaustive scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub label: String,
    pub range: [u32; 2],
    pub params: BTreeMap<String, String>,
    pub checked_count: u64,
    pub violations: Vec<Violation>,
    pub minima: Vec<Minimum>,
    pub details: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(label: &str, m: u32) -> Self {
        BoundReport {
            label: label.to_string(),
            range: [m, m],
            params: BTreeMap::new(),
            checked_count: 0,
            violations: Vec::new(),
            minima: Vec::new(),
            details: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Concatenates per-`M` reports of the same scan, in the given order.
    pub fn merge(label: &str, reports: Vec<BoundReport>) -> BoundReport {
        let mut out = BoundReport::new(label, 0);
        let lo = reports.iter().map(|r| r.range[0]).min().unwrap_or(0);
        let hi = reports.iter().map(|r| r.range[1]).max().unwrap_or(0);
        out.range = [lo, hi];
        for r in reports {
            out.checked_count += r.checked_count;
            out.violations.extend(r.violations);
            out.minima.extend(r.minima);
            for (k, v) in r.params {
                out.params.entry(k).or_insert(v);
            }
            for (k, v) in r.details {
                out.details.insert(format!("M={}:{k}", r.range[0]), v);
            }
            for n in r.notes {
                if !out.notes.contains(&n) {
                    out.notes.push(n);
                }
            }
        }
        out
    }
}

fn check_scan_range(m: u32, min: u32) -> Result<()> {
    if m < min || m > SCAN_LIMIT {
        return Err(Error::OutOfRange(format!(
            "M = {m} outside the scan range {min}..={SCAN_LIMIT}"
        )));
    }
    Ok(())
}

/// `φ_A(M) = C(M, A) - C(M, A - 1)`, the dimension of the shape `(M - A, A)`.
pub fn phi(a: u32, m: u32) -> Result<BigUint> {
    if 2 * a > m {
        return Err(Error::OutOfRange(format!(
            "A = {a} exceeds M/2 for M = {m}"
        )));
    }
    let upper = binomial(m, a);
    let lower = if a == 0 {
        BigUint::zero()
    } else {
        binomial(m, a - 1)
    };
    Ok(upper - lower)
}

fn shapes_with_dims(m: u32) -> Vec<(Partition, BigUint)> {
    enumerate_partitions(m)
        .map(|p| {
            let d = dimension(&p);
            (p, d)
        })
        .collect()
}

// First minimum in enumeration order.
fn argmin<'a, I>(shapes: I) -> Option<(&'a Partition, &'a BigUint)>
where
    I: Iterator<Item = &'a (Partition, BigUint)>,
{
    let mut best: Option<(&Partition, &BigUint)> = None;
    for (p, d) in shapes {
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((p, d));
        }
    }
    best
}

/// Both parts of the two-row lower bound:
///
/// 1. every shape with first row exactly `M - A` (`A ≤ M/2`) has dimension
///    at least `φ_A(M)`;
/// 2. every shape with first row and first column at most `M/2` has
///    dimension at least `φ_{⌊M/2⌋}(M)`.
pub fn check_rasala(m: u32) -> Result<BoundReport> {
    check_scan_range(m, 4)?;
    let shapes = shapes_with_dims(m);
    let mut report = BoundReport::new("rasala", m);

    for a in 0..=m / 2 {
        let bound = phi(a, m)?;
        let class: Vec<_> = shapes
            .iter()
            .filter(|(p, _)| p.first_row() == m - a)
            .collect();
        for (p, d) in &class {
            report.checked_count += 1;
            if *d < bound {
                report.violations.push(Violation {
                    shape: p.clone(),
                    bound: bound.clone(),
                    actual: d.clone(),
                    note: format!("part 1, A = {a}"),
                });
            }
        }
        if let Some((p, d)) = argmin(class.into_iter()) {
            let two_row = Partition::two_row(m, a)?;
            report.minima.push(Minimum {
                parameter: "A".into(),
                value: a,
                shape: p.clone(),
                dimension: d.clone(),
                holds: *d >= bound,
                note: if *p == two_row && *d == bound {
                    "attained at (M-A, A)".into()
                } else {
                    "minimum differs from (M-A, A)".into()
                },
                bound: Some(bound),
            });
        }
    }

    let half = m / 2;
    let bound = phi(half, m)?;
    let class: Vec<_> = shapes
        .iter()
        .filter(|(p, _)| 2 * p.first_row() <= m && 2 * p.first_column() <= m)
        .collect();
    for (p, d) in &class {
        report.checked_count += 1;
        if *d < bound {
            report.violations.push(Violation {
                shape: p.clone(),
                bound: bound.clone(),
                actual: d.clone(),
                note: "part 2".into(),
            });
        }
    }
    if let Some((p, d)) = argmin(class.into_iter()) {
        report.minima.push(Minimum {
            parameter: "part2".into(),
            value: half,
            shape: p.clone(),
            dimension: d.clone(),
            holds: *d >= bound,
            note: "first row and column at most M/2".into(),
            bound: Some(bound),
        });
    }
    Ok(report)
}

/// For every `A ≤ M/2`, the `B` in `A..=⌊M/2⌋` minimising `φ_B(M)` (ties go
/// to the smaller `B`). The minimiser should be `A` below a crossover and
/// `⌊M/2⌋` from the crossover on, with the crossover about `c·√M` below
/// `M/2`.
pub fn scan_phi_minimizer(m: u32) -> Result<BoundReport> {
    check_scan_range(m, 4)?;
    let half = m / 2;
    let phis: Vec<BigUint> = (0..=half).map(|b| phi(b, m)).collect::<Result<_>>()?;
    let mut report = BoundReport::new("phi-minimizer", m);
    let mut argmins = Vec::with_capacity(phis.len());

    for a in 0..=half {
        let mut best = a;
        for b in a..=half {
            report.checked_count += 1;
            if phis[b as usize] < phis[best as usize] {
                best = b;
            }
        }
        argmins.push(best);
        let two_regime = best == a || best == half;
        if !two_regime {
            report.violations.push(Violation {
                shape: Partition::two_row(m, best)?,
                bound: phis[a as usize].clone(),
                actual: phis[best as usize].clone(),
                note: format!("A = {a}: minimiser is neither A nor floor(M/2)"),
            });
        }
        report.minima.push(Minimum {
            parameter: "A".into(),
            value: a,
            shape: Partition::two_row(m, best)?,
            dimension: phis[best as usize].clone(),
            bound: None,
            holds: two_regime,
            note: format!("argmin B = {best}"),
        });
    }

    // Smallest A from which the minimiser stays at floor(M/2).
    let crossover = (0..=half)
        .rev()
        .take_while(|&a| argmins[a as usize] == half)
        .last()
        .unwrap_or(half);
    for a in 0..crossover {
        if argmins[a as usize] != a {
            report.violations.push(Violation {
                shape: Partition::two_row(m, a)?,
                bound: phis[argmins[a as usize] as usize].clone(),
                actual: phis[a as usize].clone(),
                note: format!("A = {a} below the crossover {crossover} is not self-minimising"),
            });
        }
    }
    let sqrt_m = (m as f64).sqrt();
    let gap = m as f64 / 2.0 - crossover as f64;
    let fitted_c = gap / sqrt_m;
    if !(0.0..=sqrt_m).contains(&gap) {
        report.violations.push(Violation {
            shape: Partition::two_row(m, crossover)?,
            bound: BigUint::zero(),
            actual: BigUint::zero(),
            note: format!("crossover {crossover} is not within sqrt(M) below M/2"),
        });
    }
    report
        .details
        .insert("crossover".into(), crossover.to_string());
    report
        .details
        .insert("fitted_c".into(), format!("{:.6}", fitted_c));
    Ok(report)
}

/// Scans the long-row-or-column claim: a shape whose first row and first
/// column are both at most `M - A` should have dimension above the budget
/// once `A ≥ ceil(log2(budget))`.
///
/// `details` carries:
/// * `a_star`: the largest `A` whose class (first row and column `≤ M - A`)
///   is nonempty and lies entirely above the budget, 0 if there is none;
/// * `threshold`: the smallest `A` from which every class, empty or not,
///   lies above the budget;
/// * `a_budget`: `ceil(log2(budget))`, the class whose members are checked
///   for violations.
///
/// Each minima row also records whether the class minimum reaches `2^A`, the
/// intermediate claim of the proof, together with its case (`A ≥ M/2 - √M`
/// is case 1). That claim is asymptotic and fails for some small `M`; a row
/// with `holds = false` is reported, not counted as a violation.
pub fn check_long_row_or_column(m: u32, dim_budget: &BigUint) -> Result<BoundReport> {
    check_scan_range(m, 4)?;
    let shapes = shapes_with_dims(m);
    let mut report = BoundReport::new("long-row-or-column", m);
    report
        .params
        .insert("dim_budget".into(), dim_budget.to_string());
    report.params.insert("c".into(), "1".into());

    let a_budget = ceil_log2(dim_budget);
    let case_split = m as f64 / 2.0 - (m as f64).sqrt();
    let mut a_star = 0u32;
    let mut threshold = None;

    for a in 0..=m {
        let class: Vec<_> = shapes
            .iter()
            .filter(|(p, _)| p.first_row() + a <= m && p.first_column() + a <= m)
            .collect();
        let all_above = class.iter().all(|(_, d)| d > dim_budget);
        if all_above && threshold.is_none() {
            threshold = Some(a);
        }
        if !all_above {
            threshold = None;
        }
        if all_above && !class.is_empty() {
            a_star = a;
        }
        if a as u64 == a_budget {
            for (p, d) in &class {
                report.checked_count += 1;
                if d <= dim_budget {
                    report.violations.push(Violation {
                        shape: p.clone(),
                        bound: dim_budget.clone(),
                        actual: d.clone(),
                        note: format!(
                            "first row and column <= M - {a} but dimension within budget"
                        ),
                    });
                }
            }
        }
        if let Some((p, d)) = argmin(class.into_iter()) {
            let claim = BigUint::one() << a;
            let case = if a as f64 >= case_split { 1 } else { 2 };
            report.minima.push(Minimum {
                parameter: "A".into(),
                value: a,
                shape: p.clone(),
                dimension: d.clone(),
                holds: *d >= claim,
                note: format!("case {case}; dimension >= 2^A"),
                bound: Some(claim),
            });
        }
    }

    report.details.insert("a_star".into(), a_star.to_string());
    report.details.insert(
        "threshold".into(),
        threshold.map_or_else(|| "none".into(), |t| t.to_string()),
    );
    report
        .details
        .insert("a_budget".into(), a_budget.to_string());
    report
        .details
        .insert("case_split".into(), format!("{case_split:.6}"));
    Ok(report)
}

fn ceil_log2(x: &BigUint) -> u64 {
    if x <= &BigUint::one() {
        return 0;
    }
    let bits = x.bits();
    if (BigUint::one() << (bits - 1)) == *x {
        bits - 1
    } else {
        bits
    }
}

/// Removing the last cell of a long first row (or column) costs at most a
/// factor `(M - 2ℓ)/M` in dimension, where `ℓ < M/2` is the row's deficit.
/// Checked as `dim(λ⁻)·M ≥ (M - 2ℓ)·dim(λ)` in integers.
pub fn check_shape_lemma(m: u32) -> Result<BoundReport> {
    check_scan_range(m, 3)?;
    let mut report = BoundReport::new("shape-lemma", m);
    let mut skipped = 0u64;
    // Tightest case as a reduced fraction dim(λ⁻)·M / ((M - 2ℓ)·dim(λ)).
    let mut tightest: Option<(BigRational, Partition, BigUint, &'static str)> = None;

    for lambda in enumerate_partitions(m) {
        let dim = dimension(&lambda);
        let sides = [
            ("row", lambda.first_row(), Cell::new(1, lambda.first_row())),
            (
                "column",
                lambda.first_column(),
                Cell::new(lambda.first_column(), 1),
            ),
        ];
        for (side, length, last) in sides {
            let deficit = m - length;
            if 2 * deficit >= m {
                skipped += 1;
                continue;
            }
            report.checked_count += 1;
            let reduced = lambda.remove_cell(last).ok_or_else(|| {
                Error::Internal(format!("last {side} cell of {lambda} is not removable"))
            })?;
            let lhs = dimension(&reduced) * m;
            let rhs = &dim * (m - 2 * deficit);
            if lhs < rhs {
                report.violations.push(Violation {
                    shape: lambda.clone(),
                    bound: rhs.clone(),
                    actual: lhs.clone(),
                    note: format!("{side}: dim(lambda-)*M < (M-2l)*dim(lambda)"),
                });
            }
            let ratio = BigRational::new(BigInt::from(lhs), BigInt::from(rhs));
            if tightest.as_ref().is_none_or(|(r, ..)| ratio < *r) {
                tightest = Some((ratio, lambda.clone(), dim.clone(), side));
            }
        }
    }
    if let Some((ratio, shape, dim, side)) = tightest {
        report.minima.push(Minimum {
            parameter: "tightest".into(),
            value: m,
            shape,
            dimension: dim,
            bound: None,
            holds: ratio >= BigRational::one(),
            note: format!("{side}: ratio {}", Fraction(ratio)),
        });
    }
    report.details.insert("skipped".into(), skipped.to_string());
    Ok(report)
}

/// Which overlap bound the qubit calculator inverts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// Operators composing as a true representation: `1 - 2^{k+1}·c·n/M`.
    Representation,
    /// Operators composing only up to phases: `1 - 2^{k+1}·√(c·n)/√M`.
    General,
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::Representation => "representation",
            BoundMode::General => "general",
        })
    }
}

impl FromStr for BoundMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "representation" | "rep" => Ok(BoundMode::Representation),
            "general" => Ok(BoundMode::General),
            other => Err(Error::OutOfRange(format!("unknown mode {other:?}"))),
        }
    }
}

/// Register size, clean qubits, required gap and the unnamed constant `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremParams {
    pub n: u64,
    pub k: u32,
    pub delta: BigRational,
    pub c: BigRational,
}

impl TheoremParams {
    pub fn new(n: u64, k: u32, delta: BigRational, c: BigRational) -> Result<Self> {
        let p = TheoremParams { n, k, delta, c };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k as u64 > self.n {
            return Err(Error::OutOfRange(format!(
                "need 0 <= k <= n and n >= 1, got n = {}, k = {}",
                self.n, self.k
            )));
        }
        if !self.delta.is_positive() || self.delta > BigRational::one() {
            return Err(Error::OutOfRange(format!(
                "delta = {} outside (0, 1]",
                Fraction(self.delta.clone())
            )));
        }
        if !self.c.is_positive() {
            return Err(Error::OutOfRange("c must be positive".into()));
        }
        Ok(())
    }
}

/// The largest `M` (as an exact rational) for which the overlap lower bound
/// of `mode` still leaves room for a gap of `delta`.
///
/// Representation mode: `M ≤ 2^{k+1}·c·n/δ`. General mode:
/// `M ≤ 4^{k+1}·c·n/δ²`.
pub fn max_encoded_size(p: &TheoremParams, mode: BoundMode) -> Result<BigRational> {
    p.validate()?;
    let n = BigRational::from_integer(BigInt::from(p.n));
    let bound = match mode {
        BoundMode::Representation => {
            let pow = BigRational::from_integer(BigInt::one() << (p.k + 1));
            pow * &p.c * n / &p.delta
        }
        BoundMode::General => {
            let pow = BigRational::from_integer(BigInt::one() << (2 * (p.k + 1)));
            pow * &p.c * n / (&p.delta * &p.delta)
        }
    };
    Ok(bound)
}

/// `m = ⌊log2(max M)⌋`: the number of bits whose `M = 2^m` encodings can
/// still be pairwise distinguishable. `M` equal to the bound is allowed.
/// Returns 0 if even `M = 1` exceeds the bound.
pub fn max_simulatable_qubits(p: &TheoremParams, mode: BoundMode) -> Result<u32> {
    let bound = max_encoded_size(p, mode)?;
    let m = floor_log2(&bound).unwrap_or(0).max(0);
    m.to_u32()
        .ok_or_else(|| Error::Internal(format!("log2 bound {m} does not fit u32")))
}

/// Serializable output of the qubit calculator.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub label: String,
    pub params: BTreeMap<String, String>,
    pub max_encoded_size: Fraction,
    pub max_encoded_size_decimal: f64,
    pub max_qubits: u32,
    pub notes: Vec<String>,
}

pub fn theorem_report(p: &TheoremParams, mode: BoundMode) -> Result<TheoremReport> {
    let bound = max_encoded_size(p, mode)?;
    let max_qubits = max_simulatable_qubits(p, mode)?;
    let mut params = BTreeMap::new();
    params.insert("n".into(), p.n.to_string());
    params.insert("k".into(), p.k.to_string());
    params.insert("c".into(), Fraction(p.c.clone()).to_string());
    params.insert("delta".into(), Fraction(p.delta.clone()).to_string());
    params.insert("mode".into(), mode.to_string());
    let mut notes = vec![
        "M may equal the bound: an overlap floor exactly at 1 - delta is accepted".to_string(),
        format!(
            "c = {} is a free parameter, not derived",
            Fraction(p.c.clone())
        ),
    ];
    if mode == BoundMode::General {
        notes.push(
            "general mode uses the per-irreducible constant sqrt(4cn/M); \
             the summed form with sqrt(2cn/M) would give a different constant"
                .to_string(),
        );
    }
    let bound_frac = Fraction(bound);
    Ok(TheoremReport {
        label: "theorem".into(),
        params,
        max_encoded_size_decimal: bound_frac.decimal(),
        max_encoded_size: bound_frac,
        max_qubits,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::parse_rational;

    fn params(n: u64, k: u32, delta: &str, c: &str) -> TheoremParams {
        TheoremParams::new(
            n,
            k,
            parse_rational(delta).unwrap(),
            parse_rational(c).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(2, 11).unwrap(), BigUint::from(44u32));
        for m in 0..12 {
            assert_eq!(phi(0, m).unwrap(), BigUint::one());
        }
        for m in 2..12 {
            assert_eq!(phi(1, m).unwrap(), BigUint::from(m - 1));
        }
        assert!(phi(6, 11).is_err());
    }

    #[test]
    fn rasala_small_cases() {
        let r = check_rasala(11).unwrap();
        let row = r
            .minima
            .iter()
            .find(|m| m.parameter == "A" && m.value == 2)
            .unwrap();
        assert_eq!(row.shape, "[9,2]".parse().unwrap());
        assert_eq!(row.dimension, BigUint::from(44u32));

        let r = check_rasala(4).unwrap();
        let row = &r.minima[0];
        assert_eq!((row.value, row.shape.clone()), (0, Partition::row(4)));
        assert_eq!(row.dimension, BigUint::one());

        let r = check_rasala(12).unwrap();
        assert!(r.holds());
        assert!(check_rasala(3).is_err());
    }

    #[test]
    fn phi_minimizer_examples() {
        let r = scan_phi_minimizer(16).unwrap();
        let argmin = |a: u32| {
            r.minima
                .iter()
                .find(|m| m.value == a)
                .unwrap()
                .shape
                .part(2)
        };
        assert_eq!(argmin(1), 1);
        assert_eq!(argmin(8), 8);
        assert_eq!(argmin(7), 8);
        assert_eq!(argmin(6), 8);
        assert!(r.holds());
        // φ_4(16) = 1260 < φ_8(16) = 1430 < φ_5(16) = 2548
        assert_eq!(r.details["crossover"], "5");
    }

    #[test]
    fn long_row_examples() {
        let r = check_long_row_or_column(12, &BigUint::from(16u32)).unwrap();
        assert_eq!(r.details["a_budget"], "4");
        assert!(r.checked_count > 0);
        assert!(r.holds());

        let r = check_long_row_or_column(12, &BigUint::zero()).unwrap();
        // The largest A whose class is nonempty: a 12-cell shape fits in a
        // 4x4 box but not a 3x3 one, so A = 8.
        assert_eq!(r.details["a_star"], "8");
        assert_eq!(r.details["threshold"], "0");

        let budget = crate::partitions::factorial(11) / 2u32;
        let r = check_long_row_or_column(12, &budget).unwrap();
        assert_eq!(r.details["a_star"], "0");
    }

    #[test]
    fn shape_lemma_examples() {
        let r = check_shape_lemma(11).unwrap();
        assert!(r.holds());
        let r = check_shape_lemma(14).unwrap();
        assert!(r.holds());
        assert!(check_shape_lemma(2).is_err());
    }

    #[test]
    fn row_shape_meets_shape_lemma_with_equality() {
        // λ = (M): λ⁻ = (M-1), 1·M = M·1
        let m = 9;
        let lhs = dimension(&Partition::row(m - 1)) * m;
        let rhs = dimension(&Partition::row(m)) * m;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theorem_calculator_examples() {
        let p = params(1024, 1, "1/2", "1");
        assert_eq!(max_simulatable_qubits(&p, BoundMode::General).unwrap(), 16);
        // 2^2 * 1024 / (1/2) = 2^13, and M = 2^13 is allowed.
        assert_eq!(
            max_simulatable_qubits(&p, BoundMode::Representation).unwrap(),
            13
        );
        let p = params(1, 0, "1", "1");
        assert_eq!(
            max_simulatable_qubits(&p, BoundMode::Representation).unwrap(),
            1
        );
    }

    #[test]
    fn theorem_params_rejected() {
        let one = BigRational::one();
        assert!(TheoremParams::new(4, 1, BigRational::zero(), one.clone()).is_err());
        assert!(TheoremParams::new(4, 1, parse_rational("1.5").unwrap(), one.clone()).is_err());
        assert!(TheoremParams::new(4, 5, one.clone(), one.clone()).is_err());
        assert!(TheoremParams::new(4, 1, one.clone(), BigRational::zero()).is_err());
    }

    #[test]
    fn theorem_report_flags_constant() {
        let p = params(1024, 1, "0.5", "1");
        let r = theorem_report(&p, BoundMode::General).unwrap();
        assert_eq!(r.max_encoded_size.to_string(), "65536/1");
        assert!(r.notes.iter().any(|n| n.contains("4cn")));
    }
}
