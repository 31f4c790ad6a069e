//! Exact rational arithmetic. Everything the library reports as an invariant
//! (separation indices, sigma/mu entries) is a `Rational`; floats exist only
//! in the display helper below.
//!
//! Backed by `num`'s `BigRational`, which already maintains the invariants we
//! need: always reduced, denominator positive, arbitrary-precision integers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;

pub type Rational = BigRational;

/// Rational from a (numerator, denominator) pair of machine integers.
/// Panics on a zero denominator, like `BigRational::new`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational representing an integer.
pub fn rat_int(num: i128) -> Rational {
    Rational::from(BigInt::from(num))
}

/// Binomial coefficient as a `BigInt`; zero when `k > n`.
pub fn binomial_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    num::integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Binomial coefficient in `i128`. Exact for every `n <= 128`, which covers
/// all subset lattices this crate can enumerate.
pub fn binomial_i128(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for j in 0..k {
        // Multiply before dividing; the running product of j+1 consecutive
        // binomials keeps the division exact.
        acc = acc * (n - j) as i128 / (j + 1) as i128;
    }
    acc
}

/// Decimal rendering with six significant digits, for human-facing output
/// next to the exact fraction.
pub fn decimal_6sig(r: &Rational) -> String {
    let f = r.to_f64().unwrap_or(f64::NAN);
    if !f.is_finite() {
        return String::from("?");
    }
    if f == 0.0 {
        return String::from("0.00000");
    }
    let mag = f.abs().log10().floor() as i32;
    let decimals = (5 - mag).max(0) as usize;
    format!("{:.*}", decimals, f)
}

/// `num/den` string (den omitted when 1); the canonical exact rendering used
/// in CLI output and reports.
pub fn fraction_str(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_match() {
        for n in 0..=40 {
            for k in 0..=n {
                assert_eq!(BigInt::from(binomial_i128(n, k)), binomial_big(n, k));
            }
        }
        assert_eq!(binomial_i128(3, 7), 0);
        assert_eq!(binomial_i128(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn subset_size_identity() {
        // Sum over j of C(n-j, 3) * (j+1) telescopes to C(n+2, 5); the
        // 0-move recurrence leans on this, so pin it over a wide range.
        for n in 4..=60usize {
            let lhs: i128 = (0..=(n - 3))
                .map(|j| binomial_i128(n - j, 3) * (j + 1) as i128)
                .sum();
            assert_eq!(lhs, binomial_i128(n + 2, 5), "n = {n}");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_6sig(&rat(-4, 5)), "-0.800000");
        assert_eq!(decimal_6sig(&rat(13, 5)), "2.60000");
        assert_eq!(decimal_6sig(&rat(0, 5)), "0.00000");
        assert_eq!(fraction_str(&rat(-4, 5)), "-4/5");
        assert_eq!(fraction_str(&rat(-2, 2)), "-1");
    }
}
