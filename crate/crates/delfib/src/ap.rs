//! Fixed-point decimal arithmetic at a caller-chosen precision.
//!
//! A [`Real`] stores `mant * 10^-scale` with an exact big-integer mantissa.
//! Every operation rounds to the working scale, so the absolute error of a
//! single operation is at most one unit in the last working digit.  A
//! [`PrecisionContext`] asks for `digits` delivered decimal digits and works
//! internally with [`GUARD_DIGITS`] extra digits; the delivered-accuracy
//! contract on derived quantities is an error below `10^(5 - digits)`.
//!
//! Elementary functions are computed from scratch: square and n-th roots by
//! exact integer Newton iteration, `ln` by repeated square-root reduction
//! followed by the atanh series, `exp` by halving reduction and the Taylor
//! series, and pi by the Machin formula.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::{Error, Result};

/// Lowest accepted context precision.
pub const MIN_DIGITS: u32 = 20;

/// Extra working digits carried beyond the requested precision.
pub const GUARD_DIGITS: u32 = 15;

/// Requested decimal precision for derived real/complex values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::DigitsTooLow(digits));
        }
        Ok(Self { digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working scale (fractional digits) used for intermediate values.
    pub fn scale(&self) -> u32 {
        self.digits + GUARD_DIGITS
    }

    /// Accuracy bound promised on derived values: `10^(5 - digits)`.
    pub fn tolerance(&self) -> Real {
        Real::pow10(5 - self.digits as i64, self.scale())
    }
}

fn pow10(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

/// Integer division rounded half away from zero.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(!d.is_zero());
    let (q, r) = n.div_rem(d);
    if &r.abs() * 2 >= d.abs() {
        if (n.sign() == Sign::Minus) ^ (d.sign() == Sign::Minus) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Fixed-point decimal real number: `mant * 10^-scale`.
#[derive(Clone, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    scale: u32,
}

impl Real {
    pub fn zero(scale: u32) -> Self {
        Real { mant: BigInt::zero(), scale }
    }

    pub fn one(scale: u32) -> Self {
        Real { mant: pow10(scale), scale }
    }

    pub fn from_i64(v: i64, scale: u32) -> Self {
        Real { mant: BigInt::from(v) * pow10(scale), scale }
    }

    pub fn from_bigint(v: &BigInt, scale: u32) -> Self {
        Real { mant: v * pow10(scale), scale }
    }

    pub fn from_natural(v: &BigUint, scale: u32) -> Self {
        Real { mant: BigInt::from(v.clone()) * pow10(scale), scale }
    }

    /// Rounded value of the exact fraction `num/den`.
    pub fn from_ratio(num: i64, den: i64, scale: u32) -> Self {
        Self::from_big_ratio(&BigInt::from(num), &BigInt::from(den), scale)
    }

    pub fn from_big_ratio(num: &BigInt, den: &BigInt, scale: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Real { mant: div_round(&(num * pow10(scale)), den), scale }
    }

    /// `10^exp` (exp may be negative) at the given scale.
    pub fn pow10(exp: i64, scale: u32) -> Self {
        if exp >= 0 {
            Real { mant: pow10(scale + exp as u32), scale }
        } else {
            let shift = (-exp) as u32;
            assert!(shift <= scale, "10^{exp} underflows scale {scale}");
            Real { mant: pow10(scale - shift), scale }
        }
    }

    /// Parses a plain decimal string such as `-0.72212441830311284114`.
    pub fn parse(s: &str, scale: u32) -> Result<Self> {
        let t = s.trim();
        let (sign, rest) = match t.strip_prefix('-') {
            Some(r) => (-1i32, r),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::Fixture(format!("not a decimal number: {s:?}")));
        }
        let digits_ok = |p: &str| p.chars().all(|c| c.is_ascii_digit());
        if !digits_ok(int_part) || !digits_ok(frac_part) {
            return Err(Error::Fixture(format!("not a decimal number: {s:?}")));
        }
        let joined = format!("{int_part}{frac_part}");
        let raw: BigInt = joined.parse().unwrap_or_else(|_| BigInt::zero());
        let frac_len = frac_part.len() as u32;
        let mant = if frac_len <= scale {
            raw * pow10(scale - frac_len)
        } else {
            div_round(&raw, &pow10(frac_len - scale))
        };
        Ok(Real { mant: mant * sign, scale })
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Real {
        Real { mant: self.mant.abs(), scale: self.scale }
    }

    fn check_scale(&self, other: &Real) {
        assert_eq!(self.scale, other.scale, "mixed-scale arithmetic");
    }

    pub fn mul_i64(&self, k: i64) -> Real {
        Real { mant: &self.mant * k, scale: self.scale }
    }

    pub fn div_i64(&self, k: i64) -> Real {
        Real { mant: div_round(&self.mant, &BigInt::from(k)), scale: self.scale }
    }

    /// Exact multiplication by a power of two (used by series reductions).
    fn mul_pow2(&self, k: u32) -> Real {
        Real { mant: &self.mant << k, scale: self.scale }
    }

    pub fn recip(&self) -> Real {
        Real::one(self.scale) / self
    }

    /// Nearest integer, halves away from zero.
    pub fn round_int(&self) -> BigInt {
        div_round(&self.mant, &pow10(self.scale))
    }

    pub fn floor_int(&self) -> BigInt {
        self.mant.div_floor(&pow10(self.scale))
    }

    /// Nonnegative integer square root in fixed point (floor in the last digit).
    pub fn sqrt(&self) -> Real {
        assert!(!self.is_negative(), "sqrt of negative value");
        Real { mant: (&self.mant * pow10(self.scale)).sqrt(), scale: self.scale }
    }

    /// n-th root of a nonnegative value.
    pub fn nth_root(&self, n: u32) -> Real {
        assert!(n >= 1);
        assert!(!self.is_negative(), "nth_root of negative value");
        let m = &self.mant * pow10(self.scale * (n - 1));
        Real { mant: m.nth_root(n), scale: self.scale }
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, mut e: u64) -> Real {
        let mut base = self.clone();
        let mut acc = Real::one(self.scale);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Natural logarithm of a positive value.
    ///
    /// Repeated square roots pull the argument into `[1 - 1/16, 1 + 1/16]`,
    /// then `ln x = 2 atanh((x-1)/(x+1))` is summed and scaled back up.
    pub fn ln(&self) -> Real {
        assert!(self.mant.is_positive(), "ln of non-positive value");
        let one = pow10(self.scale);
        let thresh = &one / 16u32;
        let mut x = self.clone();
        let mut halvings = 0u32;
        while (&x.mant - &one).abs() > thresh {
            x = x.sqrt();
            halvings += 1;
            assert!(halvings < 64, "ln reduction runaway");
        }
        let z = &(&x - &Real::one(self.scale)) / &(&x + &Real::one(self.scale));
        let zz = &z * &z;
        let mut pow = z.clone();
        let mut sum = z;
        let mut k = 1u64;
        loop {
            pow = &pow * &zz;
            if pow.is_zero() {
                break;
            }
            k += 2;
            sum = &sum + &pow.div_i64(k as i64);
        }
        // ln(self) = 2^halvings * 2 * atanh(z)
        sum.mul_pow2(halvings + 1)
    }

    /// Exponential function.
    pub fn exp(&self) -> Real {
        let one = pow10(self.scale);
        // halve until |x| < 1/32 so the Taylor series converges fast
        let mut x = self.clone();
        let mut halvings = 0u32;
        let thresh = &one / 32u32;
        while x.mant.abs() > thresh {
            x = Real { mant: div_round(&x.mant, &BigInt::from(2)), scale: x.scale };
            halvings += 1;
            assert!(halvings < 64, "exp reduction runaway");
        }
        let mut term = Real::one(self.scale);
        let mut sum = Real::one(self.scale);
        let mut k = 0i64;
        loop {
            k += 1;
            term = (&term * &x).div_i64(k);
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        for _ in 0..halvings {
            sum = &sum * &sum;
        }
        sum
    }

    /// Pi by the Machin formula `16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi(scale: u32) -> Real {
        let a = Real::atan_inv(5, scale);
        let b = Real::atan_inv(239, scale);
        &a.mul_i64(16) - &b.mul_i64(4)
    }

    /// arctan(1/n) for integer n >= 2, by the alternating series.
    fn atan_inv(n: i64, scale: u32) -> Real {
        let nn = n * n;
        let mut pow = Real::from_ratio(1, n, scale);
        let mut sum = pow.clone();
        let mut k = 1i64;
        let mut sign = -1i64;
        loop {
            pow = pow.div_i64(nn);
            if pow.is_zero() {
                break;
            }
            k += 2;
            sum = &sum + &pow.div_i64(sign * k);
            sign = -sign;
        }
        sum
    }

    /// Decimal digits of the integer part (0 for |x| < 1).
    pub fn int_digits(&self) -> u32 {
        let i = self.mant.abs() / pow10(self.scale);
        if i.is_zero() {
            0
        } else {
            i.to_string().len() as u32
        }
    }

    /// Renders with exactly `frac_digits` digits after the point,
    /// rounding half away from zero.
    pub fn to_decimal(&self, frac_digits: u32) -> String {
        assert!(frac_digits <= self.scale, "cannot extend precision in display");
        let m = div_round(&self.mant, &pow10(self.scale - frac_digits));
        let neg = m.is_negative();
        let digits = m.abs().to_string();
        let digits = if digits.len() <= frac_digits as usize {
            format!("{}{}", "0".repeat(frac_digits as usize + 1 - digits.len()), digits)
        } else {
            digits
        };
        let split = digits.len() - frac_digits as usize;
        let (int_part, frac_part) = digits.split_at(split);
        let sign = if neg { "-" } else { "" };
        if frac_digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Rough f64 view, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let scale_pow = pow10(self.scale);
        let (q, r) = self.mant.div_rem(&scale_pow);
        q.to_f64().unwrap_or(f64::NAN)
            + r.to_f64().unwrap_or(0.0) / scale_pow.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.check_scale(other);
        self.mant.cmp(&other.mant)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(self.scale))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.scale))
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        self.check_scale(rhs);
        Real { mant: &self.mant + &rhs.mant, scale: self.scale }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        self.check_scale(rhs);
        Real { mant: &self.mant - &rhs.mant, scale: self.scale }
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        self.check_scale(rhs);
        Real { mant: div_round(&(&self.mant * &rhs.mant), &pow10(self.scale)), scale: self.scale }
    }
}

impl Div for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        self.check_scale(rhs);
        assert!(!rhs.is_zero(), "division by zero");
        Real { mant: div_round(&(&self.mant * pow10(self.scale)), &rhs.mant), scale: self.scale }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mant: -&self.mant, scale: self.scale }
    }
}

macro_rules! forward_owned_binop {
    ($($t:ident :: $m:ident),*) => {$(
        impl $t for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { (&self).$m(&rhs) }
        }
        impl $t<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real { (&self).$m(rhs) }
        }
        impl $t<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { self.$m(&rhs) }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

/// Complex value as a pair of fixed-point reals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        re.check_scale(&im);
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let scale = re.scale();
        Complex { re, im: Real::zero(scale) }
    }

    pub fn zero(scale: u32) -> Self {
        Complex { re: Real::zero(scale), im: Real::zero(scale) }
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn add(&self, rhs: &Complex) -> Complex {
        Complex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }

    pub fn sub(&self, rhs: &Complex) -> Complex {
        Complex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    pub fn mul(&self, rhs: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }

    pub fn div(&self, rhs: &Complex) -> Complex {
        let d = rhs.norm_sq();
        assert!(!d.is_zero(), "complex division by zero");
        let num = self.mul(&rhs.conj());
        Complex { re: &num.re / &d, im: &num.im / &d }
    }

    pub fn norm_sq(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sq().sqrt()
    }

    pub fn powi(&self, mut e: u64) -> Complex {
        let scale = self.re.scale();
        let mut base = self.clone();
        let mut acc = Complex::from_real(Real::one(scale));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: u32 = 45; // 30 digits + guard

    fn r(s: &str) -> Real {
        Real::parse(s, S).unwrap()
    }

    fn assert_close(got: &Real, want: &str, tol_exp: i64) {
        let w = r(want);
        let tol = Real::pow10(tol_exp, S);
        let diff = (got - &w).abs();
        assert!(diff <= tol, "got {got}, want {want} (diff {diff})");
    }

    #[test]
    fn context_rejects_low_digits() {
        assert!(PrecisionContext::new(19).is_err());
        assert!(PrecisionContext::new(20).is_ok());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let x = r("-12.5");
        assert_eq!(x.to_decimal(3), "-12.500");
        assert_eq!(r("0.125").to_decimal(2), "0.13"); // half away from zero
        assert_eq!(r("-0.125").to_decimal(2), "-0.13");
        assert_eq!(r("3").to_decimal(0), "3");
    }

    #[test]
    fn basic_arithmetic() {
        let a = Real::from_ratio(1, 3, S);
        let b = a.mul_i64(3);
        assert!((&b - &Real::one(S)).abs() <= Real::pow10(-(S as i64), S));
        let q = &Real::from_i64(7, S) / &Real::from_i64(2, S);
        assert_eq!(q.to_decimal(1), "3.5");
    }

    #[test]
    fn sqrt_matches_reference() {
        // sqrt(5) to 40 digits
        assert_close(
            &Real::from_i64(5, S).sqrt(),
            "2.236067977499789696409173668731276235441",
            -38,
        );
    }

    #[test]
    fn cbrt_matches_reference() {
        let x = Real::from_i64(2, S).nth_root(3);
        assert_close(&x, "1.259921049894873164767210607278228350570", -38);
    }

    #[test]
    fn ln_matches_reference() {
        assert_close(
            &Real::from_i64(10, S).ln(),
            "2.302585092994045684017991454684364207601",
            -36,
        );
        assert_close(
            &Real::from_i64(2, S).ln(),
            "0.693147180559945309417232121458176568076",
            -36,
        );
        // ln of a value below 1
        assert_close(
            &Real::from_ratio(1, 2, S).ln(),
            "-0.693147180559945309417232121458176568076",
            -36,
        );
    }

    #[test]
    fn ln_of_huge_argument() {
        // ln(10^500) = 500 ln 10
        let huge = Real::pow10(500, S);
        let want = &Real::from_i64(10, S).ln() * &Real::from_i64(500, S);
        let diff = (&huge.ln() - &want).abs();
        assert!(diff <= Real::pow10(-34, S), "diff {diff}");
    }

    #[test]
    fn exp_matches_reference() {
        assert_close(
            &Real::one(S).exp(),
            "2.718281828459045235360287471352662497757",
            -36,
        );
        // exp(ln 2) = 2
        let two = Real::from_i64(2, S);
        let diff = (&two.ln().exp() - &two).abs();
        assert!(diff <= Real::pow10(-34, S));
    }

    #[test]
    fn pi_matches_reference() {
        assert_close(
            &Real::pi(S),
            "3.141592653589793238462643383279502884197",
            -38,
        );
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = Real::from_ratio(3, 7, S);
        let mut manual = Real::one(S);
        for _ in 0..13 {
            manual = &manual * &x;
        }
        let diff = (&x.powi(13) - &manual).abs();
        assert!(diff <= Real::pow10(-(S as i64) + 2, S));
    }

    #[test]
    fn complex_mul_and_abs() {
        let z = Complex::new(Real::from_i64(3, S), Real::from_i64(4, S));
        assert_eq!(z.abs().to_decimal(5), "5.00000");
        let w = z.mul(&z.conj());
        assert_eq!(w.re.to_decimal(0), "25");
        assert!(w.im.is_zero());
    }

    #[test]
    fn determinism_identical_digit_strings() {
        let a = Real::from_i64(5, S).sqrt().ln().to_decimal(30);
        let b = Real::from_i64(5, S).sqrt().ln().to_decimal(30);
        assert_eq!(a, b);
    }
}
