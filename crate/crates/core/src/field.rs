//! GF(2^n) in polynomial-basis coordinates, `n <= 64`.
//!
//! Elements are bare coordinate words; every operation takes the
//! [`FieldSpec`] explicitly. Elements are range-checked when they enter
//! through [`FieldSpec::elem`] or [`FieldSpec::parse_elem`].

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly2::{clmul64, find_irreducible, is_irreducible, Poly};

pub const MAX_DEGREE: usize = 64;

/// An element of GF(2^n); bit `i` is the coordinate of `gamma^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u64);

impl FieldElem {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:X}", self.0)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem(0x{:X})", self.0)
    }
}

/// GF(2)[gamma]/(modulus) for an irreducible modulus of degree `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    n: usize,
    modulus: Poly,
    reducer: u128,
    mask: u64,
    trace_mask: u64,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})/{}", self.n, self.modulus.to_hex())
    }
}

impl FieldSpec {
    pub fn new(n: usize, modulus: Poly) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        if modulus.degree() != Some(n) {
            return Err(Error::ModulusDegree {
                expected: n,
                found: modulus.degree(),
            });
        }
        if !is_irreducible(&modulus) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let reducer = modulus.to_u128().expect("degree <= 64 fits in 128 bits");
        let mask = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        let mut spec = Self {
            n,
            modulus,
            reducer,
            mask,
            trace_mask: 0,
        };
        // Tr is linear: precompute Tr(gamma^j) for each basis vector.
        let mut tm = 0u64;
        for j in 0..n {
            let t = spec.rel_trace_unchecked(FieldElem(1 << j), 1);
            debug_assert!(t.0 <= 1, "absolute trace must land in GF(2)");
            tm |= (t.0 & 1) << j;
        }
        spec.trace_mask = tm;
        Ok(spec)
    }

    /// The field defined by [`find_irreducible`]`(n)`.
    pub fn with_default_modulus(n: usize) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        Self::new(n, find_irreducible(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Number of elements as a power of two, `2^n`.
    pub fn order(&self) -> u128 {
        1u128 << self.n
    }

    pub fn elem(&self, bits: u64) -> Result<FieldElem> {
        if bits & !self.mask != 0 {
            return Err(Error::ElementOutOfRange { bits, n: self.n });
        }
        Ok(FieldElem(bits))
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 & !self.mask == 0
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The class of `x`, i.e. the root of the modulus.
    pub fn gamma(&self) -> FieldElem {
        self.reduce(2)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        FieldElem(rng.gen::<u64>() & self.mask)
    }

    fn reduce(&self, mut v: u128) -> FieldElem {
        let n = self.n as u32;
        while v >> n != 0 {
            let top = 127 - v.leading_zeros();
            v ^= self.reducer << (top - n);
        }
        FieldElem(v as u64)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(self.contains(a) && self.contains(b));
        self.reduce(clmul64(a.0, b.0))
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// `a^e` by square-and-multiply. For nonzero `a` the exponent is
    /// reduced modulo `2^n - 1`; `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, e: u128) -> FieldElem {
        if a.is_zero() {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let mut e = e % ((1u128 << self.n) - 1);
        let mut base = a;
        let mut acc = self.one();
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `a^(2^(k mod n))`.
    pub fn frobenius(&self, a: FieldElem, k: usize) -> FieldElem {
        (0..k % self.n).fold(a, |x, _| self.square(x))
    }

    /// `Tr(a) = sum_{i<n} a^(2^i)`, returned as a bit.
    pub fn abs_trace(&self, a: FieldElem) -> bool {
        (a.0 & self.trace_mask).count_ones() & 1 == 1
    }

    fn rel_trace_unchecked(&self, a: FieldElem, t: usize) -> FieldElem {
        let mut acc = self.zero();
        let mut x = a;
        for _ in 0..self.n / t {
            acc = self.add(acc, x);
            x = self.frobenius(x, t);
        }
        acc
    }

    fn check_divisor(&self, t: usize) -> Result<()> {
        if t == 0 || !self.n.is_multiple_of(t) {
            return Err(Error::NotADivisor { t, n: self.n });
        }
        Ok(())
    }

    /// Trace onto GF(2^t): `sum_{i < n/t} a^(2^(t i))`.
    pub fn rel_trace(&self, a: FieldElem, t: usize) -> Result<FieldElem> {
        self.check_divisor(t)?;
        Ok(self.rel_trace_unchecked(a, t))
    }

    /// Whether `a^(2^t) = a`, i.e. `a` lies in GF(2^t).
    pub fn in_subfield(&self, a: FieldElem, t: usize) -> Result<bool> {
        self.check_divisor(t)?;
        Ok(self.frobenius(a, t) == a)
    }

    /// `sum c_i a_i` for a bit mask of coefficients over a list of elements.
    pub(crate) fn combine<I>(&self, coeffs: I, elems: &[FieldElem]) -> FieldElem
    where
        I: IntoIterator<Item = bool>,
    {
        coeffs
            .into_iter()
            .zip(elems)
            .filter(|(c, _)| *c)
            .fold(self.zero(), |acc, (_, &e)| self.add(acc, e))
    }

    /// The conjugates `a, a^2, ..., a^(2^(k-1))`.
    pub fn conjugates(&self, a: FieldElem, k: usize) -> Vec<FieldElem> {
        let mut out = Vec::with_capacity(k);
        let mut x = a;
        for _ in 0..k {
            out.push(x);
            x = self.square(x);
        }
        out
    }

    /// Parses `0x...` coordinates or `pow:i,j,...` (meaning
    /// `gamma^i + gamma^j + ...`).
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if let Some(list) = s.strip_prefix("pow:") {
            let mut acc = self.zero();
            for tok in list.split(',') {
                let e: u128 = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {tok:?} in {s:?}")))?;
                acc = self.add(acc, self.pow(self.gamma(), e));
            }
            return Ok(acc);
        }
        let hex = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .ok_or_else(|| Error::Parse(format!("element {s:?} is neither 0x... nor pow:...")))?;
        let bits = u64::from_str_radix(hex, 16)
            .map_err(|_| Error::Parse(format!("bad hex element {s:?}")))?;
        self.elem(bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf16() -> FieldSpec {
        FieldSpec::new(16, "0x1002D".parse().unwrap()).unwrap()
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            FieldSpec::new(65, Poly::monomial(65)),
            Err(Error::DegreeOutOfRange(65))
        );
        assert!(matches!(
            FieldSpec::new(4, "x^4+x^2+1".parse().unwrap()),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(
            FieldSpec::new(4, "x^3+x+1".parse().unwrap()),
            Err(Error::ModulusDegree { .. })
        ));
        assert!(FieldSpec::with_default_modulus(0).is_err());
    }

    #[test]
    fn gamma_reduction() {
        let f = gf16();
        let g16 = f.pow(f.gamma(), 16);
        assert_eq!(g16, f.parse_elem("pow:5,3,2,0").unwrap());
        assert_eq!(g16.bits(), 0b10_1101);
    }

    #[test]
    fn identities() {
        let f = gf16();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            assert_eq!(f.mul(a, f.one()), a);
            assert!(f.add(a, a).is_zero());
            assert_eq!(f.frobenius(a, 0), a);
            assert_eq!(f.frobenius(a, 16), a);
            assert_eq!(f.frobenius(a, 1), f.square(a));
            assert_eq!(f.square(f.add(a, b)), f.add(f.square(a), f.square(b)));
            assert_eq!(f.square(f.mul(a, b)), f.mul(f.square(a), f.square(b)));
            let t = f.rel_trace(a, 4).unwrap();
            assert!(f.in_subfield(t, 4).unwrap());
            if !a.is_zero() {
                assert_eq!(f.pow(a, 65535), f.one());
            }
        }
    }

    #[test]
    fn trace_mask_matches_definition() {
        for n in [1, 2, 5, 12] {
            let f = FieldSpec::with_default_modulus(n).unwrap();
            let mut ones = 0u64;
            for v in 0..1u64 << n {
                let a = f.elem(v).unwrap();
                let def = f.rel_trace(a, 1).unwrap();
                assert_eq!(def.bits() == 1, f.abs_trace(a));
                ones += f.abs_trace(a) as u64;
            }
            assert_eq!(ones, 1 << (n - 1));
        }
    }

    #[test]
    fn trace_transitivity_exhaustive_n12() {
        let f = FieldSpec::with_default_modulus(12).unwrap();
        for v in 0..1u64 << 12 {
            let a = f.elem(v).unwrap();
            for t in [1, 2, 3, 4, 6, 12] {
                let down = f.rel_trace(a, t).unwrap();
                // absolute trace of an element of GF(2^t), taken inside GF(2^t)
                let inner = (0..t).fold(f.zero(), |acc, j| f.add(acc, f.frobenius(down, j)));
                assert_eq!(inner.bits() == 1, f.abs_trace(a));
                assert!(inner.bits() <= 1);
            }
        }
    }

    #[test]
    fn subfield_sizes() {
        let f = FieldSpec::with_default_modulus(12).unwrap();
        for (t, size) in [(1, 2), (2, 4), (3, 8), (4, 16), (6, 64)] {
            let count = (0..1u64 << 12)
                .filter(|&v| f.in_subfield(f.elem(v).unwrap(), t).unwrap())
                .count();
            assert_eq!(count, size, "t = {t}");
        }
        assert!(f.in_subfield(f.zero(), 5).is_err());
        assert!(f.rel_trace(f.one(), 0).is_err());
        assert_eq!(f.rel_trace(f.gamma(), 12).unwrap(), f.gamma());
    }

    #[test]
    fn pow_edge_cases() {
        let f = gf16();
        assert_eq!(f.pow(f.zero(), 0), f.one());
        assert_eq!(f.pow(f.zero(), 5), f.zero());
        assert_eq!(f.pow(f.gamma(), 0), f.one());
        assert_eq!(f.pow(f.gamma(), 65535 + 3), f.pow(f.gamma(), 3));
        let f64 = FieldSpec::with_default_modulus(64).unwrap();
        assert_eq!(f64.pow(f64.gamma(), u64::MAX as u128), f64.one());
    }

    #[test]
    fn element_parsing() {
        let f = gf16();
        assert_eq!(f.parse_elem("0x2B").unwrap().bits(), 0x2B);
        assert!(f.parse_elem("0x10000").is_err());
        assert!(f.parse_elem("43").is_err());
        assert!(f.parse_elem("pow:1,x").is_err());
        let beta = f.parse_elem("pow:1,126").unwrap();
        assert_eq!(beta, f.add(f.gamma(), f.pow(f.gamma(), 126)));
        assert_eq!(beta.to_string(), format!("0x{:X}", beta.bits()));
    }
}
