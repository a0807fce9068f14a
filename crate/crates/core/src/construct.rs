//! Building normal elements with a prescribed corresponding vector.
//!
//! [`prescribe`] handles `n = 2^s >= 4` and odd `n` (plus the trivial
//! `n = 2`): starting from any normal `beta` with vector `b`, the target
//! `h = f_a * f_b^(-1)` is factored as `g * g^*` and `alpha = sum g_i
//! beta^(2^i)` then has vector `a`. Other `n` are reached through
//! [`compose`], which multiplies normal elements of coprime subfields.

use std::fmt;

use crate::error::{Error, Result};
use crate::factor::{factor_2power, factor_odd, is_two_power_ge4, odd_half_sum};
use crate::field::{FieldElem, FieldSpec};
use crate::normal::{
    corresponding_vector, corresponding_vector_in_subfield, find_normal, is_normal, Strategy,
    TraceVector,
};
use crate::poly2::CyclicPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Exactly characterized and all conditions hold.
    Valid,
    Invalid,
    /// Every known necessary condition holds; sufficiency is unknown.
    NecessaryOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Valid => "valid",
            Status::Invalid => "invalid",
            Status::NecessaryOnly => "necessary-only",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub condition: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Verdict {
    fn from_checks(checks: Vec<(String, bool)>, if_all_pass: Status) -> Self {
        let checks: Vec<Check> = checks
            .into_iter()
            .map(|(condition, passed)| Check { condition, passed })
            .collect();
        let status = if checks.iter().all(|c| c.passed) {
            if_all_pass
        } else {
            Status::Invalid
        };
        Self { status, checks }
    }

    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.condition.clone())
            .collect()
    }
}

/// `n = 2^s * m` with `m` odd.
pub fn split_two_power(n: usize) -> (usize, usize) {
    assert!(n >= 1);
    let pow2 = 1 << n.trailing_zeros();
    (pow2, n / pow2)
}

fn symmetric_check(a: &TraceVector) -> (String, bool) {
    ("a_i = a_(n-i) for 1 <= i <= n-1".into(), a.is_symmetric())
}

fn two_power_checks(a: &TraceVector) -> Vec<(String, bool)> {
    let n = a.n();
    vec![
        ("a_0 = 1".into(), a.get(0)),
        (format!("a_{} = 0", n / 2), !a.get(n / 2)),
        symmetric_check(a),
        (
            format!("a_1 + a_3 + ... + a_{} = 1", n / 2 - 1),
            odd_half_sum(a.as_poly()),
        ),
    ]
}

fn odd_checks(a: &TraceVector) -> Vec<(String, bool)> {
    vec![
        symmetric_check(a),
        (
            format!("gcd(f_a(x), x^{}-1) = 1", a.n()),
            a.as_poly().is_unit(),
        ),
    ]
}

/// Conditions inherited from tracing down to GF(2^pow2) and GF(2^m).
fn composite_checks(pow2: usize, m: usize, a: &TraceVector) -> Vec<(String, bool)> {
    let col = |k: usize| (0..m).fold(false, |acc, i| acc ^ a.get(i * pow2 + k));
    let mut checks = vec![
        symmetric_check(a),
        (format!("sum_i a_(i*{pow2}) = 1"), col(0)),
        (
            format!("sum_i a_(i*{pow2}+{}) = 0", pow2 / 2),
            !col(pow2 / 2),
        ),
    ];
    if pow2 >= 4 {
        let odd = (1..pow2 / 2).step_by(2).fold(false, |acc, k| acc ^ col(k));
        checks.push((
            format!("sum over odd k < {} of sum_i a_(i*{pow2}+k) = 1", pow2 / 2),
            odd,
        ));
    }
    let mut folded = CyclicPoly::zero(m);
    for k in 0..m {
        let t = (0..pow2).fold(false, |acc, i| acc ^ a.get(i * m + k));
        folded.set(k, t);
    }
    checks.push((
        format!("gcd(sum_k (sum_i a_(i*{m}+k)) x^k, x^{m}-1) = 1"),
        folded.is_unit(),
    ));
    checks
}

fn check_len(n: usize, a: &TraceVector) -> Result<()> {
    if a.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: a.n(),
        });
    }
    Ok(())
}

/// Classify `a` as a candidate corresponding vector for GF(2^n).
///
/// `n = 2^s >= 4`, odd `n` and `n = 2` are characterized exactly. For other
/// `n` the best available answer is [`Status::NecessaryOnly`].
pub fn validate_vector(n: usize, a: &TraceVector) -> Result<Verdict> {
    check_len(n, a)?;
    let (pow2, m) = split_two_power(n);
    Ok(if m == n {
        Verdict::from_checks(odd_checks(a), Status::Valid)
    } else if n == 2 {
        Verdict::from_checks(
            vec![("a_0 = 1".into(), a.get(0)), ("a_1 = 0".into(), !a.get(1))],
            Status::Valid,
        )
    } else if m == 1 {
        Verdict::from_checks(two_power_checks(a), Status::Valid)
    } else {
        Verdict::from_checks(composite_checks(pow2, m, a), Status::NecessaryOnly)
    })
}

/// Necessary conditions for `n = 2^s * m`, `2^s >= 4`, odd `m > 1`.
pub fn necessary_conditions(n: usize, a: &TraceVector) -> Result<Verdict> {
    check_len(n, a)?;
    let (pow2, m) = split_two_power(n);
    if pow2 < 4 || m == 1 {
        return Err(Error::Unsupported(format!(
            "necessary conditions need n = 2^s * m with 2^s >= 4 and odd m > 1, got n = {n}"
        )));
    }
    Ok(Verdict::from_checks(
        composite_checks(pow2, m, a),
        Status::NecessaryOnly,
    ))
}

/// Every intermediate of one run of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prescription {
    pub beta: FieldElem,
    pub beta_vector: TraceVector,
    pub beta_vector_inv: CyclicPoly,
    /// `h = f_a * f_b^(-1)`.
    pub target: CyclicPoly,
    /// `g` with `g * g^* = h`; the basis-change coefficients.
    pub coefficients: CyclicPoly,
    pub element: FieldElem,
    /// Recomputed from `element`, equal to the requested vector.
    pub vector: TraceVector,
}

fn exactly_supported(t: usize) -> bool {
    t % 2 == 1 || t == 2 || is_two_power_ge4(t)
}

fn require_valid(t: usize, a: &TraceVector) -> Result<()> {
    if !exactly_supported(t) {
        return Err(Error::Unsupported(format!(
            "no exact characterization for n = {t}; use compose or weight3"
        )));
    }
    let verdict = validate_vector(t, a)?;
    if !verdict.is_valid() {
        return Err(Error::InvalidVector(verdict.failures()));
    }
    Ok(())
}

/// Runs the construction inside GF(2^t) starting from `beta` in that
/// subfield (`t = n` for the whole field).
fn realize(spec: &FieldSpec, t: usize, beta: FieldElem, a: &TraceVector) -> Result<Prescription> {
    let beta_vector = corresponding_vector_in_subfield(spec, beta, t)?;
    let beta_vector_inv = beta_vector
        .as_poly()
        .inv()
        .map_err(|_| Error::Unsupported(format!("beta = {beta} is not normal")))?;
    let target = a.as_poly().mul(&beta_vector_inv)?;
    let coefficients = if t % 2 == 1 {
        factor_odd(&target)?
    } else if t == 2 {
        if !target.is_one() {
            return Err(Error::Internal(format!("GF(4) target {target} is not 1")));
        }
        target.clone()
    } else {
        factor_2power(&target)?
    };
    let conj = spec.conjugates(beta, t);
    let element = coefficients
        .support()
        .into_iter()
        .fold(spec.zero(), |acc, i| spec.add(acc, conj[i]));
    let vector = corresponding_vector_in_subfield(spec, element, t)?;
    if vector != *a || !vector.as_poly().is_unit() {
        return Err(Error::Internal(format!(
            "constructed {element} has vector {vector}, wanted {a}"
        )));
    }
    Ok(Prescription {
        beta,
        beta_vector,
        beta_vector_inv,
        target,
        coefficients,
        element,
        vector,
    })
}

/// A normal element of GF(2^n) whose corresponding vector is `a`.
pub fn prescribe(spec: &FieldSpec, a: &TraceVector) -> Result<Prescription> {
    prescribe_with(spec, a, Strategy::Scan)
}

pub fn prescribe_with(spec: &FieldSpec, a: &TraceVector, strategy: Strategy) -> Result<Prescription> {
    require_valid(spec.n(), a)?;
    realize(spec, spec.n(), find_normal(spec, strategy), a)
}

/// As [`prescribe`], but starting from a caller-chosen normal `beta`.
pub fn prescribe_with_beta(spec: &FieldSpec, a: &TraceVector, beta: FieldElem) -> Result<Prescription> {
    require_valid(spec.n(), a)?;
    if !spec.contains(beta) {
        return Err(Error::ElementOutOfRange {
            bits: beta.bits(),
            n: spec.n(),
        });
    }
    realize(spec, spec.n(), beta, a)
}

/// An element of the subfield GF(2^t), normal over GF(2), whose vector
/// (traces taken inside GF(2^t)) is `a`. The starting point is the
/// relative trace of a normal element of the whole field.
pub fn prescribe_in_subfield(spec: &FieldSpec, t: usize, a: &TraceVector) -> Result<Prescription> {
    if t == 0 || !spec.n().is_multiple_of(t) {
        return Err(Error::NotADivisor { t, n: spec.n() });
    }
    require_valid(t, a)?;
    let delta = find_normal(spec, Strategy::Scan);
    let beta = spec.rel_trace(delta, t)?;
    realize(spec, t, beta, a)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub element: FieldElem,
    /// `c_k = a_(k mod 2^s) * b_(k mod m)`, confirmed against the field.
    pub vector: TraceVector,
    pub two_power_part: FieldElem,
    pub odd_part: FieldElem,
}

/// The product-form vector `c_k = a_(k mod len a) * b_(k mod len b)`.
pub fn product_vector(a: &TraceVector, b: &TraceVector) -> TraceVector {
    let n = a.n() * b.n();
    let bits: Vec<bool> = (0..n)
        .map(|k| a.get(k % a.n()) && b.get(k % b.n()))
        .collect();
    TraceVector::from_bits(&bits)
}

/// Multiplies a normal element of GF(2^(2^s)) with vector `a` by one of
/// GF(2^m) with vector `b`. Besides `2^s >= 4` this also accepts `2^s = 2`
/// (with the only possible vector `(1,0)`) and `2^s = 1`.
pub fn compose(spec: &FieldSpec, a: &TraceVector, b: &TraceVector) -> Result<Composition> {
    let (pow2, m) = (a.n(), b.n());
    if !pow2.is_power_of_two() {
        return Err(Error::Unsupported(format!(
            "first part has length {pow2}, not a power of two"
        )));
    }
    if m % 2 == 0 {
        return Err(Error::NotOdd(m));
    }
    if pow2 * m != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            found: pow2 * m,
        });
    }
    require_valid(pow2, a)?;
    require_valid(m, b)?;
    let expected = product_vector(a, b);

    let (alpha, beta) = if m == 1 {
        (prescribe_in_subfield(spec, pow2, a)?.element, spec.one())
    } else if pow2 == 1 {
        (spec.one(), prescribe_in_subfield(spec, m, b)?.element)
    } else {
        (
            prescribe_in_subfield(spec, pow2, a)?.element,
            prescribe_in_subfield(spec, m, b)?.element,
        )
    };
    let element = spec.mul(alpha, beta);
    let vector = corresponding_vector(spec, element);
    if vector != expected || !is_normal(spec, element) {
        return Err(Error::Internal(format!(
            "product {element} has vector {vector}, predicted {expected}"
        )));
    }
    Ok(Composition {
        element,
        vector,
        two_power_part: alpha,
        odd_part: beta,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight3 {
    pub element: FieldElem,
    pub vector: TraceVector,
    pub two_power: usize,
    pub odd_part: usize,
    pub i0: usize,
    /// Solution of `m * j0 = i0 (mod 2^s)`.
    pub j0: usize,
}

/// A normal element whose vector has weight 3, for `4 | n`: the
/// composition of `a` = ones at `{0, i0, 2^s - i0}` with `b = e_0`.
pub fn weight3(spec: &FieldSpec, i0: usize) -> Result<Weight3> {
    let n = spec.n();
    if !n.is_multiple_of(4) {
        return Err(Error::Unsupported(format!("weight-3 construction needs 4 | n, got {n}")));
    }
    let (pow2, m) = split_two_power(n);
    if i0.is_multiple_of(2) || i0 >= pow2 {
        return Err(Error::Unsupported(format!(
            "i0 must be odd and in [1, {}], got {i0}",
            pow2 - 1
        )));
    }
    let j0 = (0..pow2)
        .find(|&x| (m * x) % pow2 == i0)
        .expect("m is invertible modulo 2^s");
    let a = TraceVector::from_support(pow2, &[0, i0, pow2 - i0]);
    let b = TraceVector::unit(m);
    let comp = compose(spec, &a, &b)?;
    let support = TraceVector::from_support(n, &[0, j0 * m, n - j0 * m]);
    if comp.vector != support || comp.vector.weight() != 3 {
        return Err(Error::Internal(format!(
            "weight-3 vector {} differs from {support}",
            comp.vector
        )));
    }
    Ok(Weight3 {
        element: comp.element,
        vector: comp.vector,
        two_power: pow2,
        odd_part: m,
        i0,
        j0,
    })
}
