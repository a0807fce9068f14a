//! Polynomials over GF(2) and the cyclic quotient ring GF(2)[x]/(x^n - 1).
//!
//! Coefficients are stored LSB-first in 64-bit words: bit `i` of the
//! packed vector is the coefficient of `x^i`. [`Poly`] is kept canonical
//! (no trailing zero words), while [`CyclicPoly`] always carries exactly
//! `n` coefficients so that a ring element and a length-`n` bit vector are
//! the same object.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Carry-less product of two 64-bit words.
#[inline]
pub(crate) fn clmul64(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut b = b;
    let mut acc = 0u128;
    while b != 0 {
        let i = b.trailing_zeros();
        acc ^= a << i;
        b &= b - 1;
    }
    acc
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A polynomial in GF(2)[x].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    words: Vec<u64>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / WORD + 1];
        words[k / WORD] = 1 << (k % WORD);
        Self { words }
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Self { words };
        p.trim();
        p
    }

    pub fn from_u128(v: u128) -> Self {
        Self::from_words(vec![v as u64, (v >> 64) as u64])
    }

    /// Builds `sum x^e` over the given exponents. Repeated exponents cancel.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p.flip(e);
        }
        p
    }

    /// `x^n - 1` (equal to `x^n + 1` in characteristic two).
    pub fn x_pow_n_minus_1(n: usize) -> Self {
        Self::from_exponents(&[0, n])
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    fn flip(&mut self, i: usize) {
        let w = i / WORD;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (i % WORD);
        self.trim();
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (63 - top.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD)
            .is_some_and(|w| (w >> (i % WORD)) & 1 == 1)
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    /// The integer `sum coeff_i 2^i`, if it fits in 128 bits.
    pub fn to_u128(&self) -> Option<u128> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0] as u128),
            2 => Some(self.words[0] as u128 | (self.words[1] as u128) << 64),
            _ => None,
        }
    }

    /// Hex rendering of the LSB-first integer encoding, e.g. `0x1002D`.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".to_string();
        }
        let mut s = format!("{:X}", self.words.last().unwrap());
        for w in self.words.iter().rev().skip(1) {
            s.push_str(&format!("{w:016X}"));
        }
        format!("0x{s}")
    }

    /// XOR `other * x^shift` into `self`.
    fn xor_shifted(&mut self, other: &Poly, shift: usize) {
        let Some(deg) = other.degree() else { return };
        let need = words_for(deg + shift + 1);
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        let (ws, bs) = (shift / WORD, shift % WORD);
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs != 0 && i + ws + 1 < self.words.len() {
                self.words[i + ws + 1] ^= w >> (WORD - bs);
            }
        }
        self.trim();
    }

    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let shift = dr - db;
            rem.xor_shifted(divisor, shift);
            quot.flip(shift);
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn square(&self) -> Poly {
        self * self
    }

    /// Reduce modulo `x^n - 1`, folding exponent `e` onto `e mod n`.
    fn fold_cyclic(&self, n: usize) -> Vec<u64> {
        let mut out = vec![0u64; words_for(n)];
        for e in self.exponents() {
            let k = e % n;
            out[k / WORD] ^= 1 << (k % WORD);
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Poly::from_words(words)
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u64; self.words.len() + rhs.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.words.iter().enumerate() {
                let p = clmul64(a, b);
                out[i + j] ^= p as u64;
                out[i + j + 1] ^= (p >> 64) as u64;
            }
        }
        Poly::from_words(out)
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    /// Descending text form such as `x^16+x^5+x^3+x^2+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.exponents().collect();
        let terms: Vec<String> = exps.iter().rev().map(|&e| term(e)).collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn term(e: usize) -> String {
    match e {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{e}"),
    }
}

fn parse_hex_words(digits: &str) -> Result<Vec<u64>> {
    if digits.is_empty() {
        return Err(Error::Parse("empty hex literal".into()));
    }
    let mut words = Vec::new();
    let bytes = digits.as_bytes();
    let mut end = bytes.len();
    while end > 0 {
        let start = end.saturating_sub(16);
        let chunk = &digits[start..end];
        let w = u64::from_str_radix(chunk, 16)
            .map_err(|_| Error::Parse(format!("invalid hex digits in {digits:?}")))?;
        words.push(w);
        end = start;
    }
    Ok(words)
}

impl FromStr for Poly {
    type Err = Error;

    /// Accepts `0x...` (LSB-first integer encoding) or a sum of distinct
    /// terms `x^K`, `x`, `1` in any order.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            return Ok(Poly::from_words(parse_hex_words(hex)?));
        }
        if s == "0" {
            return Ok(Poly::zero());
        }
        let mut exps = Vec::new();
        for raw in s.split('+') {
            let t: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let e = match t.as_str() {
                "1" => 0,
                "x" => 1,
                _ => t
                    .strip_prefix("x^")
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad term {raw:?} in {s:?}")))?,
            };
            if exps.contains(&e) {
                return Err(Error::Parse(format!("duplicate term {} in {s:?}", term(e))));
            }
            exps.push(e);
        }
        Ok(Poly::from_exponents(&exps))
    }
}

/// `gcd(a, b)`; the result is monic (every nonzero GF(2) polynomial is).
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(&r1)?;
        r0 = std::mem::replace(&mut r1, r);
    }
    Ok(r0)
}

/// Extended Euclid: returns `(g, u, v)` with `u*a + v*b = g = gcd(a, b)`.
pub fn ext_gcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (Poly::one(), Poly::zero());
    let (mut v0, mut v1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        let u = &u0 + &(&q * &u1);
        let v = &v0 + &(&q * &v1);
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
        v0 = std::mem::replace(&mut v1, v);
    }
    Ok((r0, u0, v0))
}

fn mulmod(a: &Poly, b: &Poly, m: &Poly) -> Poly {
    (a * b).rem(m).expect("modulus is nonzero")
}

/// `x^(2^k) mod m`.
fn x_pow_two_pow(k: usize, m: &Poly) -> Poly {
    let mut r = Poly::x().rem(m).expect("modulus is nonzero");
    for _ in 0..k {
        r = mulmod(&r, &r, m);
    }
    r
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `d` is irreducible iff `x^(2^d) = x mod f`
/// and `gcd(x^(2^(d/p)) - x, f) = 1` for every prime `p | d`.
/// Constants (including zero) are reported as not irreducible.
pub fn is_irreducible(f: &Poly) -> bool {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x = Poly::x().rem(f).expect("nonzero");
    if x_pow_two_pow(d, f) != x {
        return false;
    }
    prime_factors(d).into_iter().all(|p| {
        let t = &x_pow_two_pow(d / p, f) + &x;
        gcd(&t, f).map(|g| g.is_one()).unwrap_or(false)
    })
}

/// The irreducible polynomial of degree `n` with the smallest integer
/// encoding.
pub fn find_irreducible(n: usize) -> Poly {
    assert!(n >= 1, "degree must be positive");
    let lead = Poly::monomial(n);
    let mut low = 0u64;
    loop {
        let f = &lead + &Poly::from_words(vec![low]);
        if is_irreducible(&f) {
            return f;
        }
        low += 1;
    }
}

/// An element of GF(2)[x]/(x^n - 1), stored as exactly `n` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicPoly {
    n: usize,
    words: Vec<u64>,
}

impl CyclicPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "ring size must be positive");
        Self {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0)
    }

    /// `x^(k mod n)`.
    pub fn monomial(n: usize, k: usize) -> Self {
        let mut p = Self::zero(n);
        p.set(k % n, true);
        p
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut p = Self::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            p.set(i, b);
        }
        p
    }

    /// Ones exactly at the given indices (each reduced mod `n`; repeats cancel).
    pub fn from_support(n: usize, idx: &[usize]) -> Self {
        let mut p = Self::zero(n);
        for &i in idx {
            let i = i % n;
            p.set(i, !p.get(i));
        }
        p
    }

    /// Low `n` bits of an integer encoding (`n <= 64`).
    pub fn from_u64(n: usize, v: u64) -> Self {
        assert!((1..=64).contains(&n));
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self {
            n,
            words: vec![v & mask],
        }
    }

    /// Reduce an arbitrary polynomial modulo `x^n - 1`.
    pub fn from_poly(n: usize, p: &Poly) -> Self {
        assert!(n >= 1, "ring size must be positive");
        Self {
            n,
            words: p.fold_cyclic(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.n, "index {i} out of range for ring size {}", self.n);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.n, "index {i} out of range for ring size {}", self.n);
        let m = 1u64 << (i % WORD);
        if v {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
        }
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.n).map(|i| self.get(i)).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        self.to_poly().exponents().collect()
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.n)
    }

    /// Integer encoding of the coefficients, when `n <= 64`.
    pub fn to_u64(&self) -> Option<u64> {
        (self.n <= 64).then(|| self.words[0])
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_words(self.words.clone())
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RingSizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self { n: self.n, words })
    }

    /// Product reduced modulo `x^n - 1`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self::from_poly(self.n, &(&self.to_poly() * &other.to_poly())))
    }

    /// Inverse modulo `x^n - 1` by extended Euclid.
    pub fn inv(&self) -> Result<Self> {
        let modulus = Poly::x_pow_n_minus_1(self.n);
        let me = self.to_poly();
        if me.is_zero() {
            return Err(Error::NotUnit {
                n: self.n,
                poly: me,
                factor: modulus,
            });
        }
        let (g, u, _) = ext_gcd(&me, &modulus)?;
        if !g.is_one() {
            return Err(Error::NotUnit {
                n: self.n,
                poly: me,
                factor: g,
            });
        }
        Ok(Self::from_poly(self.n, &u))
    }

    /// `g*(x) = sum b_i x^(n-i) mod x^n - 1`: index 0 stays, index `i`
    /// moves to `n - i`.
    pub fn reciprocal(&self) -> Self {
        let mut out = Self::zero(self.n);
        for i in self.support() {
            out.set((self.n - i) % self.n, true);
        }
        out
    }

    /// `a_i = a_(n-i)` for `1 <= i <= n-1`.
    pub fn is_symmetric(&self) -> bool {
        (1..self.n).all(|i| self.get(i) == self.get(self.n - i))
    }

    /// `gcd(f, x^n - 1) = 1`.
    pub fn is_unit(&self) -> bool {
        let p = self.to_poly();
        !p.is_zero()
            && gcd(&p, &Poly::x_pow_n_minus_1(self.n))
                .map(|g| g.is_one())
                .unwrap_or(false)
    }

    /// Comma-separated bit list `1,0,1,...`.
    pub fn to_bit_string(&self) -> String {
        self.bits()
            .iter()
            .map(|&b| if b { "1" } else { "0" })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parse a comma-separated bit list; the ring size is its length.
    pub fn parse_bits(s: &str) -> Result<Self> {
        let bits = s
            .split(',')
            .map(|t| match t.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Parse(format!("bad bit {other:?} in vector"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bits(&bits))
    }

    /// Parse a polynomial (text or hex) as an element of the size-`n` ring.
    /// Terms of degree `>= n` are rejected rather than folded.
    pub fn parse_poly(n: usize, s: &str) -> Result<Self> {
        let p: Poly = s.parse()?;
        if p.degree().is_some_and(|d| d >= n) {
            return Err(Error::Parse(format!(
                "{s:?} has degree >= ring size {n}"
            )));
        }
        Ok(Self::from_poly(n, &p))
    }
}

impl fmt::Display for CyclicPoly {
    /// Ascending text form such as `1+x+x^15`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.support();
        if s.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = s.into_iter().map(term).collect();
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicPoly[{}]({self})", self.n)
    }
}
