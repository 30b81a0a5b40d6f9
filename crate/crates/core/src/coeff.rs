//! Exact coefficient fields: the rationals and prime fields GF(p).
//!
//! Every algorithm in this crate is generic over [`Field`]. Two
//! implementations are provided: [`Rational`] (arbitrary precision, always
//! in lowest terms) and [`Zp`] (residues modulo a runtime prime).
//!
//! `Zp` carries its modulus in each value. The constants produced by
//! [`Zero::zero`] and [`One::one`] (and small integers obtained from them)
//! are modulus-free until they meet a bound residue, at which point they
//! adopt its modulus. Combining residues of two different primes is a usage
//! error: the `checked_*` methods report it, the operators panic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields (GF({0}) and GF({1}))")]
    MixedField(u64, u64),
    #[error("{0} is not a prime below 2^63")]
    NotPrime(u64),
    #[error("invalid field selector `{0}` (expected `q` or `zp:<prime>`)")]
    BadSelector(String),
    #[error("modulus-free constant {0} cannot be inverted before it is bound to a prime")]
    UnboundConstant(String),
}

/// An exact field of coefficients.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn try_inv(&self) -> Result<Self, ArithError>;

    fn try_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.clone() * rhs.try_inv()?)
    }

    /// Nonzero constants are exactly the units of the field.
    fn is_unit_constant(&self) -> bool {
        !self.is_zero()
    }
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// The prime field GF(p), validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p >= 1 << 63 || !is_prime_u64(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> Zp {
        Zp(ZpRepr::Residue { v: v % self.p, p: self.p })
    }

    pub fn from_i64(&self, v: i64) -> Zp {
        Zp(ZpRepr::Residue { v: reduce_i128(v as i128, self.p), p: self.p })
    }

    pub fn from_bigint(&self, n: &BigInt) -> Zp {
        let r = n.mod_floor(&BigInt::from(self.p));
        self.elem(r.to_u64().expect("residue fits in u64"))
    }
}

fn reduce_i128(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

#[derive(Debug, Clone, Copy)]
enum ZpRepr {
    Residue { v: u64, p: u64 },
    Int(i64),
}

/// An element of GF(p) for a runtime prime p.
#[derive(Debug, Clone, Copy)]
pub struct Zp(ZpRepr);

impl Zp {
    /// The modulus, or `None` for a modulus-free constant.
    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            ZpRepr::Residue { p, .. } => Some(p),
            ZpRepr::Int(_) => None,
        }
    }

    /// Canonical residue in `[0, p)`, or the raw integer for modulus-free values.
    pub fn residue(&self) -> i128 {
        match self.0 {
            ZpRepr::Residue { v, .. } => v as i128,
            ZpRepr::Int(k) => k as i128,
        }
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn symmetric(&self) -> i128 {
        match self.0 {
            ZpRepr::Residue { v, p } => {
                if v > p / 2 {
                    v as i128 - p as i128
                } else {
                    v as i128
                }
            }
            ZpRepr::Int(k) => k as i128,
        }
    }

    fn bind(self, p: u64) -> u64 {
        match self.0 {
            ZpRepr::Residue { v, .. } => v,
            ZpRepr::Int(k) => reduce_i128(k as i128, p),
        }
    }

    fn common_modulus(a: &Zp, b: &Zp) -> Result<Option<u64>, ArithError> {
        match (a.modulus(), b.modulus()) {
            (Some(p), Some(q)) if p != q => Err(ArithError::MixedField(p, q)),
            (Some(p), _) | (_, Some(p)) => Ok(Some(p)),
            (None, None) => Ok(None),
        }
    }

    fn int_op(a: i64, b: i64, op: fn(i64, i64) -> Option<i64>) -> Zp {
        Zp(ZpRepr::Int(op(a, b).expect("modulus-free constant overflowed i64")))
    }

    pub fn checked_add(&self, rhs: &Zp) -> Result<Zp, ArithError> {
        Ok(match Self::common_modulus(self, rhs)? {
            Some(p) => {
                let s = self.bind(p) as u128 + rhs.bind(p) as u128;
                Zp(ZpRepr::Residue { v: (s % p as u128) as u64, p })
            }
            None => Self::int_op(self.residue() as i64, rhs.residue() as i64, i64::checked_add),
        })
    }

    pub fn checked_sub(&self, rhs: &Zp) -> Result<Zp, ArithError> {
        self.checked_add(&-*rhs)
    }

    pub fn checked_mul(&self, rhs: &Zp) -> Result<Zp, ArithError> {
        Ok(match Self::common_modulus(self, rhs)? {
            Some(p) => Zp(ZpRepr::Residue { v: mul_mod(self.bind(p), rhs.bind(p), p), p }),
            None => Self::int_op(self.residue() as i64, rhs.residue() as i64, i64::checked_mul),
        })
    }

    pub fn checked_div(&self, rhs: &Zp) -> Result<Zp, ArithError> {
        match Self::common_modulus(self, rhs)? {
            Some(p) => {
                let inv = Zp(ZpRepr::Residue { v: rhs.bind(p), p }).try_inv()?;
                self.checked_mul(&inv)
            }
            None => {
                let (a, b) = (self.residue() as i64, rhs.residue() as i64);
                if b == 0 {
                    Err(ArithError::DivisionByZero)
                } else if a % b == 0 {
                    Ok(Zp(ZpRepr::Int(a / b)))
                } else {
                    Err(ArithError::UnboundConstant(format!("{a}/{b}")))
                }
            }
        }
    }
}

impl PartialEq for Zp {
    fn eq(&self, other: &Self) -> bool {
        match (self.0, other.0) {
            (ZpRepr::Residue { v, p }, ZpRepr::Residue { v: w, p: q }) => v == w && p == q,
            (ZpRepr::Residue { v, p }, ZpRepr::Int(k)) | (ZpRepr::Int(k), ZpRepr::Residue { v, p }) => {
                reduce_i128(k as i128, p) == v
            }
            (ZpRepr::Int(a), ZpRepr::Int(b)) => a == b,
        }
    }
}

impl fmt::Display for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl Neg for Zp {
    type Output = Zp;
    fn neg(self) -> Zp {
        match self.0 {
            ZpRepr::Residue { v, p } => Zp(ZpRepr::Residue { v: if v == 0 { 0 } else { p - v }, p }),
            ZpRepr::Int(k) => Zp(ZpRepr::Int(k.checked_neg().expect("modulus-free constant overflowed i64"))),
        }
    }
}

macro_rules! zp_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for Zp {
            type Output = Zp;
            fn $method(self, rhs: Zp) -> Zp {
                match self.$checked(&rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

zp_binop!(Add, add, checked_add);
zp_binop!(Sub, sub, checked_sub);
zp_binop!(Mul, mul, checked_mul);
zp_binop!(Div, div, checked_div);

impl Zero for Zp {
    fn zero() -> Self {
        Zp(ZpRepr::Int(0))
    }
    fn is_zero(&self) -> bool {
        match self.0 {
            ZpRepr::Residue { v, .. } => v == 0,
            ZpRepr::Int(k) => k == 0,
        }
    }
}

impl One for Zp {
    fn one() -> Self {
        Zp(ZpRepr::Int(1))
    }
}

impl Field for Zp {
    fn try_inv(&self) -> Result<Self, ArithError> {
        match self.0 {
            ZpRepr::Residue { v: 0, .. } | ZpRepr::Int(0) => Err(ArithError::DivisionByZero),
            // p prime, so Fermat: v^(p-2)
            ZpRepr::Residue { v, p } => Ok(Zp(ZpRepr::Residue { v: pow_mod(v, p - 2, p), p })),
            ZpRepr::Int(k) if k == 1 || k == -1 => Ok(*self),
            ZpRepr::Int(k) => Err(ArithError::UnboundConstant(k.to_string())),
        }
    }
}

/// A coefficient field chosen at runtime, as named by a selector string
/// (`q` or `zp:<prime>`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    Prime(PrimeField),
}

impl FromStr for FieldKind {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldKind::Rationals);
        }
        let digits = t
            .strip_prefix("zp:")
            .or_else(|| t.strip_prefix("Zp:"))
            .ok_or_else(|| ArithError::BadSelector(s.to_string()))?;
        let p: u64 = digits.trim().parse().map_err(|_| ArithError::BadSelector(s.to_string()))?;
        Ok(FieldKind::Prime(PrimeField::new(p)?))
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "q"),
            FieldKind::Prime(k) => write!(f, "zp:{}", k.modulus()),
        }
    }
}

/// Maps rational constants into a concrete field.
pub trait Embed<F: Field> {
    fn embed(&self, q: &Rational) -> Result<F, ArithError>;
}

/// The field of rational numbers, as an embedding target.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalField;

impl Embed<Rational> for RationalField {
    fn embed(&self, q: &Rational) -> Result<Rational, ArithError> {
        Ok(q.clone())
    }
}

impl Embed<Zp> for PrimeField {
    fn embed(&self, q: &Rational) -> Result<Zp, ArithError> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.checked_div(&den)
    }
}

/// Integer constant in any field, built from `one()` so no field context is needed.
pub fn small_int<F: Field>(k: i64) -> F {
    let mut acc = F::zero();
    let unit = if k < 0 { -F::one() } else { F::one() };
    let mut base = unit;
    let mut m = k.unsigned_abs();
    while m > 0 {
        if m & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        m >>= 1;
    }
    acc
}
