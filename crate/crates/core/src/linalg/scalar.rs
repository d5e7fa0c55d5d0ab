use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::LinalgError;

/// Which field the computation runs over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScalarMode {
    Rational,
    /// F_p for a prime p < 2^31.
    Prime(u64),
}

impl ScalarMode {
    /// F_p mode; rejects non-primes and moduli too large for u64 products.
    pub fn prime(p: u64) -> Result<ScalarMode, LinalgError> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(ScalarMode::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_integer(0)
    }

    pub fn one(self) -> Scalar {
        self.from_integer(1)
    }

    pub fn from_integer(self, n: i64) -> Scalar {
        match self {
            ScalarMode::Rational => Scalar::Rational(BigRational::from(BigInt::from(n))),
            ScalarMode::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Prime { value: r, modulus: p }
            }
        }
    }

    /// Reduce an exact rational into this field.  In F_p the denominator must
    /// be invertible, i.e. not divisible by p.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar, LinalgError> {
        match self {
            ScalarMode::Rational => Ok(Scalar::Rational(q.clone())),
            ScalarMode::Prime(p) => {
                let modulus = BigInt::from(p);
                let num = q.numer().mod_floor_u64(&modulus);
                let den = q.denom().mod_floor_u64(&modulus);
                let den_elt = Scalar::Prime { value: den, modulus: p };
                let inv = den_elt.inv().ok_or(LinalgError::NotInvertible(format!(
                    "denominator of {q} vanishes mod {p}"
                )))?;
                Ok(&Scalar::Prime { value: num, modulus: p } * &inv)
            }
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, m: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, m: &BigInt) -> u64 {
        use num::Integer;
        let r = self.mod_floor(m);
        let (_, digits) = r.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue below a u64 modulus"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with positive denominator (the
/// representation `BigRational` maintains); prime-field values live in
/// [0, p).  Arithmetic between mismatched modes panics — public entry points
/// validate modes up front, so such a panic flags an internal bug, not user
/// error.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn mode(&self) -> ScalarMode {
        match self {
            Scalar::Rational(_) => ScalarMode::Rational,
            Scalar::Prime { modulus, .. } => ScalarMode::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => {
                (!q.is_zero()).then(|| Scalar::Rational(BigRational::one() / q))
            }
            Scalar::Prime { value, modulus } => {
                (*value != 0).then(|| Scalar::Prime {
                    value: mod_inv(*value, *modulus),
                    modulus: *modulus,
                })
            }
        }
    }

    /// `true` for rationals < 0; prime-field elements have no sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Prime { .. } => false,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.abs()),
            s => s.clone(),
        }
    }

    fn check_mode(&self, other: &Scalar) {
        assert!(
            self.mode() == other.mode(),
            "scalar mode mismatch: {:?} vs {:?}",
            self.mode(),
            other.mode()
        );
    }
}

/// Inverse mod p by the extended Euclidean algorithm; `a` must be nonzero.
fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "gcd(a, p) = 1 for prime p and a != 0");
    old_s.rem_euclid(p as i128) as u64
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_mode(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: (a + b) % modulus, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_mode(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: (a + modulus - b) % modulus, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_mode(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus }, Scalar::Prime { value: b, .. }) => {
                let v = ((*a as u128 * *b as u128) % *modulus as u128) as u64;
                Scalar::Prime { value: v, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => {
                Scalar::Prime { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", format_rational(q)),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Parse an exact rational literal: an integer (`-3`), a decimal (`0.25`,
/// parsed exactly, so `0.1` becomes 1/10), or a fraction (`a/b`).
pub fn parse_rational(s: &str) -> Result<BigRational, LinalgError> {
    let bad = || LinalgError::BadRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        let den: BigInt = d.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_mag = whole.strip_prefix(['-', '+']).unwrap_or(whole);
        if !whole_mag.bytes().all(|b| b.is_ascii_digit()) || whole_mag.is_empty() {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole_mag}{frac}").parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let q = BigRational::new(digits, scale);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from(n))
}

/// Render exactly: integers bare, denominators of the form 2^a·5^b as finite
/// decimals, everything else as `a/b`.  Round-trips through
/// [`parse_rational`].
pub fn format_rational(q: &BigRational) -> String {
    use num::Integer;
    let denom = q.denom();
    if denom.is_one() {
        return q.numer().to_string();
    }
    // strip factors of 2 and 5 from the denominator
    let (two, five, ten) = (BigInt::from(2), BigInt::from(5), BigInt::from(10));
    let mut rest = denom.clone();
    let (mut a, mut b) = (0u32, 0u32);
    while rest.is_multiple_of(&two) {
        rest /= &two;
        a += 1;
    }
    while rest.is_multiple_of(&five) {
        rest /= &five;
        b += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", q.numer(), denom);
    }
    let k = a.max(b);
    let scaled = (q.numer() * ten.pow(k)) / denom; // exact by construction
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let digits = if digits.len() <= k as usize {
        format!("{}{}", "0".repeat(k as usize + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - k as usize;
    format!("{}{}.{}", if neg { "-" } else { "" }, &digits[..split], &digits[split..])
}
