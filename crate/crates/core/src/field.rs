//! Exact scalar fields.
//!
//! Every computation in the crate is generic over [`Field`]. Two
//! implementations are provided: [`Rational`] (the rationals, with an `i64`
//! fast path that spills into big integers on overflow) and [`Fp`] (a prime
//! field whose modulus is fixed once per process with [`set_modulus`]).

use std::fmt;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// An exact field. Arithmetic is total except for inverting zero.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// `num / den`; `None` when `den` vanishes in the field.
    fn from_ratio(num: i64, den: i64) -> Option<Self> {
        let d = Self::from_i64(den).inv()?;
        Some(Self::from_i64(num).mul(&d))
    }
    /// Short human-readable name, e.g. `Q` or `F_7`.
    fn field_name() -> String;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// A rational number in lowest terms with positive denominator.
///
/// Values that fit in `i64` are stored inline; everything else lives in a
/// [`BigRational`]. The representation is canonical, so derived equality
/// and hashing are correct.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(Self::from_i128(num as i128, den as i128))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    /// Image in another field; `None` when the denominator vanishes there.
    pub fn to_field<F: Field>(&self) -> Option<F> {
        match self {
            Rational::Small(n, d) => F::from_ratio(*n, *d),
            Rational::Big(r) => {
                let num = big_to_field::<F>(r.numer());
                let den = big_to_field::<F>(r.denom());
                num.div(&den)
            }
        }
    }

    pub fn numer_string(&self) -> String {
        match self {
            Rational::Small(n, _) => n.to_string(),
            Rational::Big(r) => r.numer().to_string(),
        }
    }

    pub fn denom_string(&self) -> String {
        match self {
            Rational::Small(_, d) => d.to_string(),
            Rational::Big(r) => r.denom().to_string(),
        }
    }
}

fn big_to_field<F: Field>(n: &BigInt) -> F {
    // Horner in base 2^32.
    let (sign, digits) = n.to_u32_digits();
    let base = F::from_i64(1 << 32);
    let mut acc = F::zero();
    for d in digits.iter().rev() {
        acc = acc.mul(&base).add(&F::from_i64(*d as i64));
    }
    if sign == num_bigint::Sign::Minus {
        acc.neg()
    } else {
        acc
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }
    fn one() -> Self {
        Rational::Small(1, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }
    fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }
    fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a + c, b)
                } else {
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() + rhs.to_big()),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * rhs.to_big()),
        }
    }
    fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(-n, *d),
            _ => Self::from_big(-self.to_big()),
        }
    }
    fn inv(&self) -> Option<Self> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Self::from_i128(*d as i128, *n as i128)),
            Rational::Big(r) => Some(Self::from_big(r.recip())),
        }
    }
    fn from_i64(n: i64) -> Self {
        Rational::Small(n, 1)
    }
    fn from_ratio(num: i64, den: i64) -> Option<Self> {
        Rational::new(num, den)
    }
    fn field_name() -> String {
        "Q".to_string()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Rational {
    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(r) => r.is_negative(),
        }
    }
}

static MODULUS: AtomicU64 = AtomicU64::new(0);

/// Fixes the characteristic used by [`Fp`] for the rest of the process.
///
/// Calling it again with the same prime is a no-op; a different prime is an
/// error, since values already created would silently change meaning.
pub fn set_modulus(p: u64) -> Result<(), crate::Error> {
    if !is_prime(p) || p >= (1u64 << 62) {
        return Err(crate::Error::Field(format!("{p} is not a supported prime")));
    }
    match MODULUS.compare_exchange(0, p, Ordering::SeqCst, Ordering::SeqCst) {
        Ok(_) => Ok(()),
        Err(q) if q == p => Ok(()),
        Err(q) => Err(crate::Error::Field(format!(
            "prime field already fixed to F_{q}, cannot switch to F_{p}"
        ))),
    }
}

/// The modulus chosen with [`set_modulus`], if any.
pub fn modulus() -> Option<u64> {
    match MODULUS.load(Ordering::Relaxed) {
        0 => None,
        p => Some(p),
    }
}

fn p() -> u64 {
    modulus().expect("prime field used before set_modulus")
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of the prime field `F_p` for the process-wide modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Fp {
        let m = p() as u128;
        let mut base = self.0 as u128;
        let mut acc = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        let m = p();
        let s = self.0 + rhs.0;
        Fp(if s >= m { s - m } else { s })
    }
    fn sub(&self, rhs: &Self) -> Self {
        let m = p();
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + m - rhs.0 })
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp((self.0 as u128 * rhs.0 as u128 % p() as u128) as u64)
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(p() - self.0)
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(p() - 2))
        }
    }
    fn from_i64(n: i64) -> Self {
        let m = p() as i128;
        Fp((n as i128).rem_euclid(m) as u64)
    }
    fn field_name() -> String {
        format!("F_{}", p())
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Print the symmetric representative so that -1 reads as -1.
        let m = p();
        if self.0 > m / 2 {
            write!(f, "-{}", m - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which ground field a session runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
}

impl std::str::FromStr for FieldChoice {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "q" || s == "Q" {
            return Ok(FieldChoice::Rational);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| crate::Error::Field(format!("bad prime in `{s}`")))?;
            if !is_prime(p) {
                return Err(crate::Error::Field(format!("{p} is not prime")));
            }
            return Ok(FieldChoice::Prime(p));
        }
        Err(crate::Error::Field(format!("unknown field `{s}` (expected q or fp:<p>)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn rational_normalizes() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(q(0, -5), Rational::zero());
        assert_eq!(q(1, 2).to_string(), "1/2");
        assert_eq!(q(-4, 2).to_string(), "-2");
    }

    #[test]
    fn rational_overflow_spills_to_big_and_back() {
        let big = Rational::from_i64(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq.div(&big).unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
        let m = Rational::from_i64(i64::MIN);
        assert_eq!(m.neg().add(&m), Rational::zero());
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(Rational::zero().inv(), None);
        assert_eq!(q(-3, 7).inv().unwrap(), q(-7, 3));
        assert_eq!(Rational::from_ratio(1, 0), None);
    }

    #[test]
    fn field_choice_parses() {
        assert_eq!("q".parse::<FieldChoice>().unwrap(), FieldChoice::Rational);
        assert_eq!("fp:7".parse::<FieldChoice>().unwrap(), FieldChoice::Prime(7));
        assert!("fp:8".parse::<FieldChoice>().is_err());
        assert!("r".parse::<FieldChoice>().is_err());
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
