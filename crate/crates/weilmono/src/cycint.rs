use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::qmodz::QmodZ;

/// An element of Z[ζ_M], stored as an integer polynomial in ζ_M reduced mod
/// the M-th cyclotomic polynomial. Values at different levels compare equal
/// when they agree after re-levelling to the lcm.
#[derive(Clone, Serialize)]
pub struct CycInt {
    level: u32,
    /// Length φ(M); coefficient of ζ_M^k at index k.
    coeffs: Vec<i64>,
}

/// Coefficients of Φ_M, ascending. The recursive quotient of x^M - 1 by all
/// lower-level cyclotomic polynomials.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    assert!(m >= 1);
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

/// Exact division of integer polynomials (panics on nonzero remainder).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert_eq!(*den.last().unwrap(), 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact polynomial division");
    quot
}

fn reduce_mod(mut poly: Vec<i64>, modulus: &[i64]) -> Vec<i64> {
    let deg = modulus.len() - 1;
    if poly.len() < deg {
        poly.resize(deg, 0);
        return poly;
    }
    for k in (deg..poly.len()).rev() {
        let c = poly[k];
        if c != 0 {
            poly[k] = 0;
            for (i, &d) in modulus.iter().enumerate().take(deg) {
                poly[k - deg + i] -= c * d;
            }
        }
    }
    poly.truncate(deg);
    poly.resize(deg, 0);
    poly
}

impl CycInt {
    pub fn zero(level: u32) -> CycInt {
        let deg = cyclotomic_poly(level).len() - 1;
        CycInt { level, coeffs: vec![0; deg] }
    }

    pub fn from_int(level: u32, n: i64) -> CycInt {
        let mut z = CycInt::zero(level);
        z.coeffs[0] = n;
        z
    }

    /// The single root of unity ζ^num at level den.
    pub fn root(exp: QmodZ) -> CycInt {
        let level = exp.den() as u32;
        let modulus = cyclotomic_poly(level);
        let mut poly = vec![0i64; level as usize];
        poly[exp.num() as usize] = 1;
        CycInt { level, coeffs: reduce_mod(poly, &modulus) }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Re-express at a multiple of the current level (ζ_M = ζ_{kM}^k).
    pub fn to_level(&self, new_level: u32) -> CycInt {
        assert!(new_level % self.level == 0, "can only raise to a multiple level");
        if new_level == self.level {
            return self.clone();
        }
        let k = (new_level / self.level) as usize;
        let modulus = cyclotomic_poly(new_level);
        let mut poly = vec![0i64; (self.coeffs.len() - 1) * k + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            poly[j * k] = c;
        }
        CycInt { level: new_level, coeffs: reduce_mod(poly, &modulus) }
    }

    fn at_common_level(&self, other: &CycInt) -> (CycInt, CycInt) {
        let m = self.level.lcm(&other.level);
        (self.to_level(m), other.to_level(m))
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        let (mut a, b) = self.at_common_level(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        let (mut a, b) = self.at_common_level(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> CycInt {
        let mut a = self.clone();
        for c in &mut a.coeffs {
            *c = -*c;
        }
        a
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        let (a, b) = self.at_common_level(other);
        let modulus = cyclotomic_poly(a.level);
        let mut poly = vec![0i64; a.coeffs.len() + b.coeffs.len()];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x != 0 {
                for (j, &y) in b.coeffs.iter().enumerate() {
                    poly[i + j] += x * y;
                }
            }
        }
        CycInt { level: a.level, coeffs: reduce_mod(poly, &modulus) }
    }

    pub fn scale(&self, n: i64) -> CycInt {
        let mut a = self.clone();
        for c in &mut a.coeffs {
            *c *= n;
        }
        a
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(level={}, coeffs={:?})", self.level, self.coeffs)
    }
}

/// Renders as an integer polynomial in z{M} = exp(2*pi*i/M): "0", "-2",
/// "1 + z12^5 - 2*z12^7". The constant term prints as a bare integer.
impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(k, &c)| (k, c))
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, &(k, c)) in terms.iter().enumerate() {
            let mag = c.abs();
            if pos == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "z{}^{}", self.level, k)?;
            } else {
                write!(f, "{mag}*z{}^{}", self.level, k)?;
            }
        }
        Ok(())
    }
}

/// Sum of roots of unity, at level lcm of the denominators. The empty sum
/// is 0 (at level 1).
pub fn cyc_sum(exps: &[QmodZ]) -> CycInt {
    let level = exps.iter().fold(1i64, |m, e| m.lcm(&e.den())) as u32;
    let modulus = cyclotomic_poly(level);
    let mut poly = vec![0i64; level as usize];
    for e in exps {
        let k = (e.num() * (level as i64 / e.den())) as usize;
        poly[k] += 1;
    }
    CycInt { level, coeffs: reduce_mod(poly, &modulus) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(7), vec![1; 7]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        // phi(105) = 48; first cyclotomic with a coefficient of size 2
        let c105 = cyclotomic_poly(105);
        assert_eq!(c105.len(), 49);
        assert!(c105.contains(&-2));
    }

    #[test]
    fn full_root_sets_vanish() {
        for m in [2u32, 3, 4, 6, 7, 12, 21] {
            let exps: Vec<QmodZ> = (0..m as i64).map(|k| QmodZ::new(k, m as i64)).collect();
            assert!(cyc_sum(&exps).is_zero(), "m={m}");
        }
    }

    #[test]
    fn small_sums() {
        assert!(cyc_sum(&[QmodZ::ZERO, QmodZ::new(1, 3), QmodZ::new(2, 3)]).is_zero());
        assert_eq!(cyc_sum(&[QmodZ::ZERO, QmodZ::ZERO]), CycInt::from_int(1, 2));
        assert!(cyc_sum(&[]).is_zero());
    }

    #[test]
    fn gauss_period_satisfies_quadratic() {
        // eta = zeta_7 + zeta_7^2 + zeta_7^4 is a root of x^2 + x + 2
        let eta = cyc_sum(&[QmodZ::new(1, 7), QmodZ::new(2, 7), QmodZ::new(4, 7)]);
        let val = eta.mul(&eta).add(&eta).add(&CycInt::from_int(7, 2));
        assert!(val.is_zero());
    }

    #[test]
    fn relevel_round_trip() {
        let a = cyc_sum(&[QmodZ::new(1, 3), QmodZ::new(1, 4)]);
        assert_eq!(a.level(), 12);
        let b = a.to_level(24).to_level(48);
        assert_eq!(a, b);
        // arithmetic commutes with re-levelling
        let x = CycInt::root(QmodZ::new(1, 3));
        let y = CycInt::root(QmodZ::new(1, 5));
        let lhs = x.add(&y).to_level(30);
        let rhs = x.to_level(15).add(&y.to_level(30));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coset_sums_vanish() {
        // any coset of a nontrivial subgroup of mu_M sums to 0
        for (m, d) in [(6, 2), (6, 3), (12, 4), (21, 7), (21, 3)] {
            for shift in 0..m {
                let exps: Vec<QmodZ> = (0..d)
                    .map(|k| QmodZ::new(shift + k * (m / d), m))
                    .collect();
                assert!(cyc_sum(&exps).is_zero(), "m={m} d={d} shift={shift}");
            }
        }
    }
}
