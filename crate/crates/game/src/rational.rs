use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// Parses `p`, `-p`, or `p/q` into a reduced rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of the denominators, 1 for an empty input.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Largest denominator, 1 for an empty input.
pub fn max_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .map(|r| r.denom().clone())
        .max()
        .unwrap_or_else(BigInt::one)
}

/// Best rational approximation of `x` whose denominator is at most `bound`.
///
/// Walks the continued fraction of `x` and compares the last convergent with
/// the best semiconvergent.
pub fn best_approximation(x: &Rational, bound: &BigInt) -> Rational {
    if x.denom() <= bound {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    loop {
        let a = num.div_floor(&den);
        let q2 = &a * &q1 + &q0;
        if &q2 > bound {
            let k = (bound - &q0).div_floor(&q1);
            let semi = Rational::new(&k * &p1 + &p0, &k * &q1 + &q0);
            let conv = Rational::new(p1.clone(), q1.clone());
            let d_semi = (&semi - x).abs();
            let d_conv = (&conv - x).abs();
            return if d_semi < d_conv { semi } else { conv };
        }
        let p2 = &a * &p1 + &p0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let rem = &num - &a * &den;
        num = std::mem::replace(&mut den, rem);
        if den.is_zero() {
            return Rational::new(p1, q1);
        }
    }
}
