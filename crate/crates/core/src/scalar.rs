//! Exact scalars over ℚ or a prime field GF(p).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest accepted prime modulus. Residues are multiplied in `u128`, the
/// bound only keeps primality testing by trial division cheap.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// The ground field a structure is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Validated prime field descriptor.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime {
                residue: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `n / d` reduced into the field. Fails when `d` vanishes in the field.
    pub fn ratio(self, n: i64, d: i64) -> Result<Scalar> {
        let d = self.from_i64(d).inverse()?;
        Ok(&self.from_i64(n) * &d)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "rational" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("prime ") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::InvalidFieldDescriptor(s.to_string()))?;
            return Field::prime(p);
        }
        Err(Error::InvalidFieldDescriptor(s.to_string()))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Representations are always canonical: rationals
/// reduced with positive denominator, residues in `[0, p)`, so structural
/// equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// True iff the value is stored in canonical form. Constructors only
    /// produce canonical values; tests scan for this after every operation.
    pub fn is_canonical(&self) -> bool {
        match self {
            Scalar::Rational(q) => {
                q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
            }
            Scalar::Prime { residue, modulus } => residue < modulus,
        }
    }

    /// Parses the exact text form used in files: `n` or `n/d` for
    /// rationals, `r mod p` for prime fields. Non-canonical spellings such
    /// as `2/4`, `3/1`, `+1` or `7 mod 5` are rejected.
    pub fn parse(text: &str, field: Field) -> Result<Scalar> {
        let bad = || Error::NonCanonicalScalar(text.to_string());
        match field {
            Field::Rational => {
                let (num, den) = match text.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (text, None),
                };
                let numer = parse_canonical_int(num).ok_or_else(bad)?;
                let denom = match den {
                    Some(d) => {
                        let d = parse_canonical_int(d).ok_or_else(bad)?;
                        if !d.is_positive() || d.is_one() || !numer.gcd(&d).is_one() {
                            return Err(bad());
                        }
                        d
                    }
                    None => BigInt::one(),
                };
                if numer.is_zero() && den.is_some() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new_raw(numer, denom)))
            }
            Field::Prime(p) => {
                let (r, m) = text.split_once(" mod ").ok_or_else(bad)?;
                let r: u64 = parse_canonical_u64(r).ok_or_else(bad)?;
                let m: u64 = parse_canonical_u64(m).ok_or_else(bad)?;
                if m != p {
                    return Err(Error::MixedFields(Field::Prime(m), field));
                }
                if r >= p {
                    return Err(bad());
                }
                Ok(Scalar::Prime {
                    residue: r,
                    modulus: p,
                })
            }
        }
    }
}

fn parse_canonical_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    if s.starts_with('-') && digits == "0" {
        return None;
    }
    s.parse().ok()
}

fn parse_canonical_u64(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if s.len() > 1 && s.starts_with('0') {
        return None;
    }
    s.parse().ok()
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { residue, modulus } => write!(f, "{residue} mod {modulus}"),
        }
    }
}

// The operator impls assume both operands live in the same field, which every
// `LinearMap` guarantees for its entries. Mixing fields here is a logic error;
// use the `checked_*` methods at trust boundaries.

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Prime { residue: a, modulus },
                Scalar::Prime {
                    residue: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Scalar::Prime {
                residue: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => panic!("mixed fields: {} + {}", self.field(), rhs.field()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Prime { residue: a, modulus },
                Scalar::Prime {
                    residue: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Scalar::Prime {
                residue: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => panic!("mixed fields: {} * {}", self.field(), rhs.field()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rational.ratio(n, d).unwrap()
    }

    #[test]
    fn rational_add() {
        assert_eq!(q(1, 2).checked_add(&q(1, 3)).unwrap(), q(5, 6));
        assert_eq!(q(5, 6).to_string(), "5/6");
    }

    #[test]
    fn prime_mul() {
        let f5 = Field::prime(5).unwrap();
        let p = f5.from_i64(3).checked_mul(&f5.from_i64(4)).unwrap();
        assert_eq!(p, f5.from_i64(2));
        assert_eq!(p.to_string(), "2 mod 5");
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(q(2, 3).inverse().unwrap(), q(3, 2));
        assert!(matches!(q(0, 1).inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn prime_inverse() {
        let f7 = Field::prime(7).unwrap();
        for v in 1..7 {
            let x = f7.from_i64(v);
            assert!((&x * &x.inverse().unwrap()).is_one());
        }
        assert!(matches!(f7.zero().inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(
            q(1, 2).checked_add(&f5.one()),
            Err(Error::MixedFields(..))
        ));
        let f7 = Field::prime(7).unwrap();
        assert!(matches!(
            f7.one().checked_mul(&f5.one()),
            Err(Error::MixedFields(..))
        ));
    }

    #[test]
    fn bad_moduli() {
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(2).is_ok());
        assert_eq!("prime 13".parse::<Field>().unwrap(), Field::Prime(13));
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert!("prime 12".parse::<Field>().is_err());
    }

    #[test]
    fn parse_canonical_forms() {
        let r = Field::Rational;
        assert_eq!(Scalar::parse("-3/4", r).unwrap(), q(-3, 4));
        assert_eq!(Scalar::parse("0", r).unwrap(), q(0, 1));
        assert_eq!(Scalar::parse("12", r).unwrap(), q(12, 1));
        for bad in ["2/4", "3/1", "+1", "01", "-0", "1/-2", "1/0", "0/5", "x", ""] {
            assert!(
                matches!(Scalar::parse(bad, r), Err(Error::NonCanonicalScalar(_))),
                "{bad} accepted"
            );
        }
        let f5 = Field::Prime(5);
        assert_eq!(Scalar::parse("4 mod 5", f5).unwrap(), f5.from_i64(4));
        assert!(Scalar::parse("7 mod 5", f5).is_err());
        assert!(Scalar::parse("4", f5).is_err());
        assert!(Scalar::parse("1 mod 7", f5).is_err());
    }

    proptest! {
        #[test]
        fn rational_ops_stay_canonical(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let x = q(a, b);
            let y = q(c, d);
            for z in [&x + &y, &x - &y, &x * &y, -&x] {
                prop_assert!(z.is_canonical());
                prop_assert_eq!(Scalar::parse(&z.to_string(), Field::Rational).unwrap(), z);
            }
            if !y.is_zero() {
                let inv = y.inverse().unwrap();
                prop_assert!(inv.is_canonical());
                prop_assert!((&y * &inv).is_one());
            }
        }

        #[test]
        fn prime_ops_stay_canonical(a in 0i64..1000, b in 0i64..1000) {
            let f = Field::Prime(101);
            let x = f.from_i64(a);
            let y = f.from_i64(b);
            for z in [&x + &y, &x - &y, &x * &y, -&x] {
                prop_assert!(z.is_canonical());
            }
            prop_assert_eq!(&(&x - &y) + &y, x);
        }
    }
}
