//! Normal elements and their trace self-orthogonal vectors.
//!
//! The corresponding vector of `alpha` is `a_i = Tr(alpha * alpha^(2^i))`.
//! Viewed as `f_a(x) = sum a_i x^i` in GF(2)[x]/(x^n - 1), `alpha` is
//! normal exactly when `f_a` is a unit, and changing basis by `c` maps the
//! vector polynomial to `f_b * f_c * f_c^*`.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::poly2::CyclicPoly;

/// The vector `(a_0, ..., a_(n-1))`; positionally identical to a
/// [`CyclicPoly`] of ring size `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceVector(CyclicPoly);

impl TraceVector {
    pub fn from_bits(bits: &[bool]) -> Self {
        Self(CyclicPoly::from_bits(bits))
    }

    pub fn from_support(n: usize, idx: &[usize]) -> Self {
        Self(CyclicPoly::from_support(n, idx))
    }

    /// `e_0 = (1, 0, ..., 0)`, the vector of a self-dual normal basis.
    pub fn unit(n: usize) -> Self {
        Self(CyclicPoly::one(n))
    }

    pub fn parse(s: &str) -> Result<Self> {
        CyclicPoly::parse_bits(s).map(Self)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0.get(i)
    }

    pub fn bits(&self) -> Vec<bool> {
        self.0.bits()
    }

    pub fn weight(&self) -> usize {
        self.0.weight()
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.support()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    pub fn as_poly(&self) -> &CyclicPoly {
        &self.0
    }

    pub fn into_poly(self) -> CyclicPoly {
        self.0
    }
}

impl From<CyclicPoly> for TraceVector {
    fn from(p: CyclicPoly) -> Self {
        Self(p)
    }
}

impl From<TraceVector> for CyclicPoly {
    fn from(v: TraceVector) -> Self {
        v.0
    }
}

impl fmt::Display for TraceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.to_bit_string())
    }
}

impl fmt::Debug for TraceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TraceVector{self}")
    }
}

pub fn corresponding_vector(spec: &FieldSpec, alpha: FieldElem) -> TraceVector {
    let mut v = CyclicPoly::zero(spec.n());
    let mut conj = alpha;
    for i in 0..spec.n() {
        v.set(i, spec.abs_trace(spec.mul(alpha, conj)));
        conj = spec.square(conj);
    }
    TraceVector(v)
}

/// The length-`t` vector of `alpha` regarded as an element of GF(2^t),
/// with traces taken from GF(2^t) down to GF(2).
pub fn corresponding_vector_in_subfield(
    spec: &FieldSpec,
    alpha: FieldElem,
    t: usize,
) -> Result<TraceVector> {
    if !spec.in_subfield(alpha, t)? {
        return Err(Error::NotInSubfield(t));
    }
    let mut v = CyclicPoly::zero(t);
    let mut conj = alpha;
    for i in 0..t {
        let prod = spec.mul(alpha, conj);
        let tr = (0..t).fold(spec.zero(), |acc, j| spec.add(acc, spec.frobenius(prod, j)));
        if tr.bits() > 1 {
            return Err(Error::Internal(format!(
                "subfield trace of {prod} left GF(2): {tr}"
            )));
        }
        v.set(i, tr.bits() == 1);
        conj = spec.square(conj);
    }
    Ok(TraceVector(v))
}

/// Normality via the gcd criterion: `gcd(f_a, x^n - 1) = 1`.
pub fn is_normal(spec: &FieldSpec, alpha: FieldElem) -> bool {
    corresponding_vector(spec, alpha).as_poly().is_unit()
}

/// Normality of `alpha` over GF(2) inside the subfield GF(2^t).
pub fn is_normal_in_subfield(spec: &FieldSpec, alpha: FieldElem, t: usize) -> Result<bool> {
    Ok(corresponding_vector_in_subfield(spec, alpha, t)?
        .as_poly()
        .is_unit())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Coordinates by increasing Hamming weight, ascending integer
    /// encoding within each weight.
    #[default]
    Scan,
    /// Uniform sampling from a ChaCha stream seeded with the given value.
    Random(u64),
}

pub fn find_normal(spec: &FieldSpec, strategy: Strategy) -> FieldElem {
    match strategy {
        Strategy::Scan => (1..=spec.n())
            .flat_map(|w| same_weight(spec.n(), w))
            .map(|v| spec.elem(v).expect("words stay below 2^n"))
            .find(|&a| is_normal(spec, a))
            .expect("every finite field has a normal element"),
        Strategy::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let a = spec.random(&mut rng);
                if is_normal(spec, a) {
                    return a;
                }
            }
        }
    }
}

/// All `n`-bit words of weight `w` in ascending order.
fn same_weight(n: usize, w: usize) -> impl Iterator<Item = u64> {
    let first = if w == 64 { u64::MAX } else { (1u64 << w) - 1 };
    std::iter::successors(Some(first), move |&v| {
        let low = v & v.wrapping_neg();
        let (r, carry) = v.overflowing_add(low);
        if carry {
            return None;
        }
        let next = (((r ^ v) >> 2) / low) | r;
        (n == 64 || next >> n == 0).then_some(next)
    })
}

/// `sum c_i beta^(2^i)`.
pub fn apply_basis_change(spec: &FieldSpec, beta: FieldElem, c: &CyclicPoly) -> Result<FieldElem> {
    if c.n() != spec.n() {
        return Err(Error::RingSizeMismatch(c.n(), spec.n()));
    }
    Ok(spec.combine(c.bits(), &spec.conjugates(beta, spec.n())))
}

/// `f_b * f_c * f_c^*` modulo `x^n - 1`.
pub fn vector_transform(f_b: &CyclicPoly, f_c: &CyclicPoly) -> Result<CyclicPoly> {
    f_b.mul(f_c)?.mul(&f_c.reciprocal())
}

pub fn is_self_dual(spec: &FieldSpec, alpha: FieldElem) -> bool {
    let v = corresponding_vector(spec, alpha);
    v == TraceVector::unit(spec.n()) && v.as_poly().is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank_u64;

    fn gf16() -> FieldSpec {
        FieldSpec::new(16, "0x1002D".parse().unwrap()).unwrap()
    }

    fn rank_normal(spec: &FieldSpec, a: FieldElem) -> bool {
        let mut rows: Vec<u64> = spec.conjugates(a, spec.n()).iter().map(|e| e.bits()).collect();
        rank_u64(&mut rows) == spec.n()
    }

    #[test]
    fn example_beta_vector() {
        let f = gf16();
        let beta = f.parse_elem("pow:1,126").unwrap();
        let v = corresponding_vector(&f, beta);
        assert_eq!(v, TraceVector::parse("1,0,1,1,1,0,0,0,0,0,0,0,1,1,1,0").unwrap());
        assert!(f.abs_trace(beta));
        assert!(is_normal(&f, beta));
        assert!(!is_self_dual(&f, beta));
    }

    #[test]
    fn trivial_elements() {
        let f = gf16();
        assert_eq!(corresponding_vector(&f, f.zero()).weight(), 0);
        assert!(!is_normal(&f, f.zero()));
        assert!(!is_normal(&f, f.one()));
        assert!(!is_self_dual(&f, f.zero()));
    }

    #[test]
    fn vector_of_one_in_subfields() {
        let f = FieldSpec::with_default_modulus(12).unwrap();
        for t in [1, 2, 3, 4, 6, 12] {
            let v = corresponding_vector_in_subfield(&f, f.one(), t).unwrap();
            assert!(v.bits().iter().all(|&b| b == (t % 2 == 1)));
        }
        assert_eq!(
            corresponding_vector_in_subfield(&f, f.gamma(), 4),
            Err(Error::NotInSubfield(4))
        );
        let a = f.gamma();
        assert_eq!(
            corresponding_vector_in_subfield(&f, a, 12).unwrap(),
            corresponding_vector(&f, a)
        );
    }

    #[test]
    fn gf16_normal_count_matches_rank_test() {
        let f = FieldSpec::with_default_modulus(4).unwrap();
        let gcd_count = (0..16).filter(|&v| is_normal(&f, f.elem(v).unwrap())).count();
        let rank_count = (0..16).filter(|&v| rank_normal(&f, f.elem(v).unwrap())).count();
        assert_eq!(gcd_count, 8);
        assert_eq!(rank_count, 8);
    }

    #[test]
    fn symmetry_and_normality_agree_exhaustively() {
        for n in 1..=12 {
            let f = FieldSpec::with_default_modulus(n).unwrap();
            for v in 0..1u64 << n {
                let a = f.elem(v).unwrap();
                assert!(corresponding_vector(&f, a).is_symmetric());
                assert_eq!(is_normal(&f, a), rank_normal(&f, a), "n = {n}, a = {a}");
            }
        }
    }

    #[test]
    fn find_normal_strategies() {
        let f = FieldSpec::with_default_modulus(2).unwrap();
        assert_eq!(find_normal(&f, Strategy::Scan), f.gamma());
        let f = gf16();
        for s in [Strategy::Scan, Strategy::Random(7)] {
            assert!(is_normal(&f, find_normal(&f, s)));
        }
        let words: Vec<u64> = same_weight(5, 2).collect();
        assert_eq!(words, [3, 5, 6, 9, 10, 12, 17, 18, 20, 24]);
        assert_eq!(same_weight(64, 64).collect::<Vec<_>>(), [u64::MAX]);
        assert_eq!(same_weight(64, 1).count(), 64);
        assert_eq!(
            find_normal(&f, Strategy::Random(42)),
            find_normal(&f, Strategy::Random(42))
        );
    }

    #[test]
    fn basis_change() {
        let f = gf16();
        let beta = f.parse_elem("pow:1,126").unwrap();
        assert_eq!(apply_basis_change(&f, beta, &CyclicPoly::one(16)).unwrap(), beta);
        let ones = CyclicPoly::from_bits(&[true; 16]);
        let tr = apply_basis_change(&f, beta, &ones).unwrap();
        assert!(!is_normal(&f, tr));
        assert!(!ones.is_unit());
        assert!(apply_basis_change(&f, beta, &CyclicPoly::one(8)).is_err());
    }

    #[test]
    fn transform_identity_and_mismatch() {
        let fb = CyclicPoly::parse_bits("1,0,1,1,1,0,0,0,0,0,0,0,1,1,1,0").unwrap();
        assert_eq!(vector_transform(&fb, &CyclicPoly::one(16)).unwrap(), fb);
        assert!(vector_transform(&fb, &CyclicPoly::one(15)).is_err());
    }

    #[test]
    fn self_dual_in_gf8() {
        let f = FieldSpec::with_default_modulus(3).unwrap();
        let sd: Vec<_> = (0..8)
            .map(|v| f.elem(v).unwrap())
            .filter(|&a| is_self_dual(&f, a))
            .collect();
        assert!(!sd.is_empty());
        for a in sd {
            assert_eq!(corresponding_vector(&f, a), TraceVector::unit(3));
        }
    }
}
