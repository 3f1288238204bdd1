//! Exact rational scalars.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! no floating point ever enters a certified result. `Rat` values are kept
//! in lowest terms with a positive denominator by construction.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// Rational from an integer pair, `n/d`.
pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn qi(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn qzero() -> Rat {
    Rat::zero()
}

pub fn qone() -> Rat {
    Rat::one()
}

/// Parse `p`, `-p` or `p/q` with an arbitrary-precision numerator/denominator.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".to_string());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in `{s}`"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("bad denominator in `{s}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(num, den))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal rendering with enough digits to reconstruct small rationals;
/// used only for SDPA-style output where the exact sidecar is authoritative.
pub fn fmt_decimal(x: &Rat, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (a.numer() * &scale) / a.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut frac = format!("{:0width$}", frac_part, width = digits);
    while frac.ends_with('0') && frac.len() > 1 {
        frac.pop();
    }
    let sign = if neg { "-" } else { "" };
    format!("{sign}{int_part}.{frac}")
}

/// Best rational approximation to `x` with denominator at most `max_den`,
/// by the continued-fraction convergent/semiconvergent construction.
pub fn round_f64_to_rat(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut x = x.abs();
    // continued fraction expansion with convergents p/q
    let (mut p0, mut q0, mut p1, mut q1) = (
        BigInt::zero(),
        BigInt::one(),
        BigInt::one(),
        BigInt::zero(),
    );
    let cap = BigInt::from(max_den);
    for _ in 0..64 {
        let a = x.floor();
        if a >= 1e18 {
            break;
        }
        let ai = BigInt::from(a as u64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > cap {
            // best semiconvergent under the cap
            let t = (&cap - &q0) / &q1;
            let ps = &t * &p1 + &p0;
            let qs = &t * &q1 + &q0;
            let cand = if q0.is_zero() {
                Rat::new(p1.clone(), q1.clone())
            } else {
                let c1 = Rat::new(ps, qs);
                let c2 = Rat::new(p1.clone(), q1.clone());
                let xr = Rat::new(
                    BigInt::from((x * 1e15) as i128),
                    BigInt::from(10u64.pow(15)),
                );
                if (&c1 - &xr).abs() < (&c2 - &xr).abs() {
                    c1
                } else {
                    c2
                }
            };
            return Some(if neg { -cand } else { cand });
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = x - a;
        if frac < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    let cand = Rat::new(p1, q1.max(BigInt::one()));
    Some(if neg { -cand } else { cand })
}

/// `f64` value of a rational, for heuristics only.
pub fn rat_to_f64(x: &Rat) -> f64 {
    let f = |b: &BigInt| -> f64 {
        let (s, digits) = b.to_u64_digits();
        let mut v = 0.0f64;
        for d in digits.iter().rev() {
            v = v * 1.8446744073709552e19 + *d as f64;
        }
        if s == Sign::Minus {
            -v
        } else {
            v
        }
    };
    f(x.numer()) / f(x.denom())
}

/// ⌈log2 v⌉ for a positive integer count.
pub fn ceil_log2(v: u64) -> u32 {
    assert!(v >= 1);
    64 - (v - 1).leading_zeros().min(64)
}

/// ⌈√n⌉ for a nonnegative integer.
pub fn ceil_sqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r * r >= n {
        r -= 1;
    }
    while r * r < n {
        r += 1;
    }
    r
}

/// Exact comparison `e^k >= d` for integers `k >= 0`, `d >= 1`, via rational
/// truncations of the exponential series with a certified tail bound.
pub fn exp_ge(k: u32, d: &BigInt) -> bool {
    if k == 0 {
        return d <= &BigInt::one();
    }
    // e^k = sum_{i<=N} k^i/i! + R_N, with R_N <= k^{N+1}/(N+1)! * (N+2)/(N+2-k)
    let kq = Rat::from_integer(BigInt::from(k));
    let dq = Rat::from_integer(d.clone());
    let mut term = Rat::one();
    let mut lower = Rat::one();
    let mut i = 1u32;
    loop {
        term = &term * &kq / Rat::from_integer(BigInt::from(i));
        lower += &term;
        if i + 2 > k {
            // tail <= term_{i+1} * (1 + k/(i+2) + (k/(i+2))^2 + ...)
            let tail = &term * &kq / Rat::from_integer(BigInt::from(i + 1))
                * Rat::new(BigInt::from(i + 2), BigInt::from(i + 2 - k));
            let upper = &lower + &tail;
            if lower >= dq {
                return true;
            }
            if upper < dq {
                return false;
            }
        }
        i += 1;
        assert!(i < 10_000, "exponential series failed to separate");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "5", "-3", "1/2", "-7/3", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(fmt_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(fmt_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn continued_fraction_rounding() {
        assert_eq!(round_f64_to_rat(0.5, 100).unwrap(), q(1, 2));
        assert_eq!(round_f64_to_rat(-0.25, 100).unwrap(), q(-1, 4));
        assert_eq!(round_f64_to_rat(1.0 / 3.0, 1 << 16).unwrap(), q(1, 3));
        assert_eq!(round_f64_to_rat(2.0, 10).unwrap(), qi(2));
        let pi = round_f64_to_rat(std::f64::consts::PI, 120).unwrap();
        assert_eq!(pi, q(355, 113));
    }

    #[test]
    fn integer_logs_and_roots() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(9), 4);
        assert_eq!(ceil_log2(24), 5);
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(ceil_sqrt(9), 3);
        assert_eq!(ceil_sqrt(10), 4);
    }

    #[test]
    fn exp_comparisons() {
        // e^1 = 2.718..., e^4 = 54.59..., e^9 = 8103.08...
        assert!(exp_ge(1, &BigInt::from(2)));
        assert!(!exp_ge(1, &BigInt::from(3)));
        assert!(exp_ge(4, &BigInt::from(54)));
        assert!(!exp_ge(4, &BigInt::from(55)));
        assert!(exp_ge(9, &BigInt::from(8103)));
        assert!(!exp_ge(9, &BigInt::from(8104)));
        assert!(!exp_ge(4, &BigInt::from(256)));
        assert!(exp_ge(9, &BigInt::from(256)));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(fmt_decimal(&q(1, 2), 6), "0.5");
        assert_eq!(fmt_decimal(&q(-4, 3), 6), "-1.333333");
        assert_eq!(fmt_decimal(&qi(7), 3), "7.0");
    }
}
