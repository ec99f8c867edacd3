//! Diagnostic cross-check of exact cyclotomic arithmetic against a complex
//! embedding evaluated to 30 significant digits in fixed-point integer
//! arithmetic. Exact arithmetic is authoritative; this guards against a
//! systematic reduction bug that exact identities alone might miss.

use num_bigint::BigInt;
use weilmono::{CycInt, QmodZ};

/// 45 fractional digits: 30 significant plus guard digits for the Taylor
/// truncation and the per-term division roundoff.
const FRAC_DIGITS: u32 = 45;
const PI_45: &str = "3141592653589793238462643383279502884197169399";

fn scale() -> BigInt {
    BigInt::from(10u32).pow(FRAC_DIGITS)
}

/// (cos, sin) of 2*pi*num/den at fixed point, by Taylor series. num/den is
/// in [0, 1), so the angle stays below 2*pi and the series needs on the
/// order of a hundred terms.
fn cos_sin_2pi(num: u32, den: u32) -> (BigInt, BigInt) {
    let s = scale();
    let pi: BigInt = PI_45.parse().unwrap();
    let theta = BigInt::from(2) * pi * num / den;
    let mut cos = s.clone();
    let mut sin = theta.clone();
    let mut term = theta.clone();
    let mut n = 1u32;
    while n < 400 {
        term = &term * &theta / (&s * BigInt::from(n + 1));
        n += 1;
        if term == BigInt::from(0) {
            break;
        }
        let signed = if (n / 2) % 2 == 1 { -term.clone() } else { term.clone() };
        if n % 2 == 0 {
            cos += signed;
        } else {
            sin += signed;
        }
    }
    (cos, sin)
}

/// Evaluate at z_M = exp(2*pi*i/M), returning fixed-point (re, im).
fn eval(x: &CycInt) -> (BigInt, BigInt) {
    let m = x.level();
    let mut re = BigInt::from(0);
    let mut im = BigInt::from(0);
    for (k, &c) in x.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (cos, sin) = cos_sin_2pi(k as u32 % m, m);
        re += cos * c;
        im += sin * c;
    }
    (re, im)
}

/// Max-norm distance between the evaluations, in fixed-point units.
fn distance(x: &CycInt, y: &CycInt) -> BigInt {
    let (xr, xi) = eval(x);
    let (yr, yi) = eval(y);
    let dr = (xr - yr).magnitude().clone();
    let di = (xi - yi).magnitude().clone();
    BigInt::from(dr.max(di))
}

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_cyc(rng: &mut Lcg, level: u32) -> CycInt {
    let mut x = CycInt::zero(level);
    for _ in 0..3 {
        let c = rng.below(7) as i64 - 3;
        let e = rng.below(level as u64) as i64;
        x = x.add(&CycInt::root(QmodZ::new(e, level as i64)).scale(c));
    }
    x
}

#[test]
fn equality_matches_thirty_digit_evaluation() {
    // agreement below 10^-30 in fixed-point units; exact-equal pairs land
    // around the 10^-43 roundoff floor, exact-unequal pairs far above
    let tolerance = BigInt::from(10u32).pow(FRAC_DIGITS - 30);
    let levels = [3u32, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24, 36];
    let mut rng = Lcg(0x5eed_cafe_f00d_0001);
    let mut equal_pairs = 0;
    let mut unequal_pairs = 0;
    for i in 0..100 {
        let m = levels[rng.below(levels.len() as u64) as usize];
        let a = random_cyc(&mut rng, m);
        let b = random_cyc(&mut rng, m);
        let one = CycInt::from_int(m, 1);
        let (x, y) = match i % 4 {
            // distributivity: a(b + 1) = ab + a
            0 => (a.mul(&b.add(&one)), a.mul(&b).add(&a)),
            // re-levelling round trip evaluates identically
            1 => (a.to_level(2 * m), a.clone()),
            // cancellation: (a + b) - b = a
            2 => (a.add(&b).sub(&b), a.clone()),
            // perturbation by a root of unity is never invisible
            _ => {
                let e = rng.below(m as u64) as i64;
                (a.add(&CycInt::root(QmodZ::new(e, m as i64))), a.clone())
            }
        };
        let exactly_equal = x == y;
        let close = distance(&x, &y) < tolerance;
        assert_eq!(
            exactly_equal, close,
            "instance {i} at level {m}: exact equality and 30-digit evaluation disagree \
             for {x} vs {y}"
        );
        if exactly_equal {
            equal_pairs += 1;
        } else {
            unequal_pairs += 1;
        }
    }
    // the instance mix must actually exercise both answers
    assert_eq!(equal_pairs + unequal_pairs, 100);
    assert!(equal_pairs >= 40 && unequal_pairs >= 20, "{equal_pairs} / {unequal_pairs}");
}

#[test]
fn evaluation_sanity() {
    // z_4 = i: checked against the embedding directly
    let i_val = CycInt::root(QmodZ::new(1, 4));
    let (re, im) = eval(&i_val);
    let tol = BigInt::from(10u32).pow(FRAC_DIGITS - 40);
    assert!(re.magnitude() < tol.magnitude());
    assert!((im - scale()).magnitude() < tol.magnitude());
    // the full level-5 root sum vanishes exactly and numerically
    let mut s = CycInt::from_int(5, 1);
    for e in 1..5 {
        s = s.add(&CycInt::root(QmodZ::new(e, 5)));
    }
    assert!(s.is_zero());
    let (re, im) = eval(&s);
    assert!(re.magnitude() < tol.magnitude() && im.magnitude() < tol.magnitude());
}
