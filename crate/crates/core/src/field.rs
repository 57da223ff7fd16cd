//! Exact coefficient fields: prime fields `F_p` and the rationals.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use crate::error::AlgebraError;

/// Default working prime.
pub const DEFAULT_PRIME: u64 = 32003;
/// Default prime congruent to 1 mod 4, used when a square root of -1 is needed.
pub const DEFAULT_PRIME_WITH_I: u64 = 32029;

/// A coefficient field with exact arithmetic.
///
/// Elements are plain values; every operation goes through the field so that
/// runtime parameters (the modulus) stay in one place.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Characteristic; 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// A fixed element `i` with `i^2 = -1`, when the field was built with one.
    fn sqrt_minus_one(&self) -> Option<Self::Elem>;
    /// Uniform-ish sample used for "general point" arguments.
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Parses a decimal integer or `num/den`.
    fn parse_number(&self, text: &str) -> Result<Self::Elem, String>;
    /// Splits an element into a sign and a printable magnitude.
    fn signed_repr(&self, a: &Self::Elem) -> (bool, String);

    /// Scalar that brings a nonzero polynomial with these coefficients
    /// (leading one first) into canonical form.
    fn normalizer(&self, coeffs: &[&Self::Elem]) -> Self::Elem;

    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field `F_p` for an odd prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    i: Option<u64>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p < 3 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Self { p, i: None })
    }

    /// `F_p` together with a square root of -1; requires `p ≡ 1 (mod 4)`.
    pub fn with_sqrt_minus_one(p: u64) -> Result<Self, AlgebraError> {
        let mut field = Self::new(p)?;
        if p % 4 != 1 {
            return Err(AlgebraError::NoSqrtMinusOne(p));
        }
        // a^((p-1)/4) squares to a^((p-1)/2) = ±1; any quadratic non-residue works.
        let e = (p - 1) / 4;
        let root = (2..p)
            .map(|a| field.pow(&a, e))
            .find(|r| field.mul(r, r) == p - 1)
            .ok_or(AlgebraError::NoSqrtMinusOne(p))?;
        field.i = Some(root);
        Ok(field)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        Some(self.reduce_i64(t))
    }

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn sqrt_minus_one(&self) -> Option<u64> {
        self.i
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn parse_number(&self, text: &str) -> Result<u64, String> {
        let (num, den) = split_fraction(text)?;
        let m = BigInt::from(self.p);
        let reduce = |v: &BigInt| -> u64 {
            let r = v.mod_floor(&m);
            r.try_into().unwrap_or(0)
        };
        let n = reduce(&num);
        let d = reduce(&den);
        self.div(&n, &d)
            .ok_or_else(|| format!("denominator of {text} vanishes mod {}", self.p))
    }

    fn signed_repr(&self, a: &u64) -> (bool, String) {
        if let Some(i) = self.i {
            if *a == i {
                return (false, "i".into());
            }
            if *a == self.p - i {
                return (true, "i".into());
            }
        }
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }

    fn normalizer(&self, coeffs: &[&u64]) -> u64 {
        self.inv(coeffs[0]).expect("leading coefficient is nonzero")
    }

    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// Magnitude bound for random rational samples.
const RATIONAL_SAMPLE_BOUND: i64 = 1 << 15;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn characteristic(&self) -> u64 {
        0
    }
    fn sqrt_minus_one(&self) -> Option<BigRational> {
        None
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }

    fn parse_number(&self, text: &str) -> Result<BigRational, String> {
        let (num, den) = split_fraction(text)?;
        if den.is_zero() {
            return Err(format!("zero denominator in {text}"));
        }
        Ok(BigRational::new(num, den))
    }

    fn signed_repr(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }

    /// Clears denominators and content, leading coefficient positive.
    fn normalizer(&self, coeffs: &[&BigRational]) -> BigRational {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in coeffs {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut scale = BigRational::new(den, num);
        if coeffs[0].is_negative() {
            scale = -scale;
        }
        scale
    }

    fn name(&self) -> String {
        "QQ".into()
    }
}

fn split_fraction(text: &str) -> Result<(BigInt, BigInt), String> {
    let parse = |s: &str| -> Result<BigInt, String> {
        let s = s.trim();
        if s.is_empty()
            || !s
                .trim_start_matches('-')
                .bytes()
                .all(|b| b.is_ascii_digit())
        {
            return Err(format!("malformed number `{text}`"));
        }
        s.parse::<BigInt>()
            .map_err(|e| format!("malformed number `{text}`: {e}"))
    };
    match text.split_once('/') {
        Some((n, d)) => Ok((parse(n)?, parse(d)?)),
        None => Ok((parse(text)?, BigInt::one())),
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
