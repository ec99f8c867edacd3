//! Character-set combinatorics for the hypergeometric families attached to a
//! block pair (m, n-m): upstairs/downstairs multiplicative character sets,
//! rank and wild dimension, geometric determinant, and reduction of arbitrary
//! (b, c, j) labels to the canonical coprime form.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::kubert::{abc, prime_power};
use crate::qmodz::QmodZ;
use crate::{Error, Result};

/// A finite set of tame multiplicative characters, identified with exponents
/// in Q/Z whose denominators divide the level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharSet {
    level: i64,
    exps: Vec<QmodZ>,
}

impl CharSet {
    fn from_set(exps: BTreeSet<QmodZ>) -> CharSet {
        let level = exps.iter().fold(1i64, |l, x| l.lcm(&x.den()));
        CharSet {
            level,
            exps: exps.into_iter().collect(),
        }
    }

    /// Minimal common denominator of the exponents.
    pub fn level(&self) -> i64 {
        self.level
    }

    /// Exponents sorted by (denominator, numerator).
    pub fn exps(&self) -> &[QmodZ] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn contains(&self, x: QmodZ) -> bool {
        self.exps.binary_search(&x).is_ok()
    }
}

/// The N-th roots of a character: exponents (chi + k)/N for k = 0..N-1.
pub fn char_set(n: i64, chi_exp: QmodZ) -> Result<CharSet> {
    if n <= 0 {
        return Err(Error::BadParams(format!("char set order {n} must be positive")));
    }
    let mut exps = BTreeSet::new();
    for k in 0..n {
        exps.insert(chi_exp.shift_div(k, n));
    }
    if exps.len() != n as usize {
        return Err(Error::BadParams(format!(
            "char set of order {n} over {chi_exp} degenerated to {} elements",
            exps.len()
        )));
    }
    Ok(CharSet::from_set(exps))
}

/// Which member of the family: the j-th twisted local system or the j = 0
/// one, whose pulled-out trivial summand changes the bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    Hj,
    H0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HypFamilyParams {
    pub q: u32,
    pub n: u32,
    pub m: u32,
    pub b: i64,
    pub c: i64,
    pub j: i64,
    pub phi: QmodZ,
    pub kind: FamilyKind,
}

impl HypFamilyParams {
    pub fn new(
        q: u32,
        n: u32,
        m: u32,
        b: i64,
        c: i64,
        j: i64,
        phi: QmodZ,
        kind: FamilyKind,
    ) -> Result<HypFamilyParams> {
        prime_power(q).ok_or(Error::NotPrime(q as u64))?;
        if n < 2 || m == 0 || m >= n {
            return Err(Error::BadParams(format!(
                "block sizes ({m}, {}) need 1 <= m <= n-1",
                n as i64 - m as i64
            )));
        }
        let (a, bb, cc) = abc(q, n, m);
        let qm1 = q as i64 - 1;
        match kind {
            FamilyKind::Hj => {
                if b * cc - c * bb != 1 {
                    return Err(Error::BadParams(format!(
                        "labels (b, c) = ({b}, {c}) have bC - cB = {}, expected 1",
                        b * cc - c * bb
                    )));
                }
                let tame = qm1 / qm1.gcd(&c);
                if a.gcd(&tame) != 1 {
                    return Err(Error::BadParams(format!(
                        "gcd(A, (q-1)/gcd(c, q-1)) = gcd({a}, {tame}) != 1"
                    )));
                }
                if j < 1 || j > qm1 - 1 {
                    return Err(Error::BadParams(format!(
                        "twist index {j} outside 1..={}",
                        qm1 - 1
                    )));
                }
            }
            FamilyKind::H0 => {
                if j != 0 {
                    return Err(Error::BadParams(format!(
                        "the j = 0 family takes twist index 0, got {j}"
                    )));
                }
            }
        }
        Ok(HypFamilyParams {
            q,
            n,
            m,
            b,
            c,
            j,
            phi,
            kind,
        })
    }
}

/// Upstairs/downstairs character sets together with rank and wild dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SheafShape {
    pub upstairs: CharSet,
    pub downstairs: CharSet,
    #[serde(rename = "D")]
    pub d: i64,
    #[serde(rename = "W")]
    pub w: i64,
}

fn shifted(base: &CharSet, phi: QmodZ) -> BTreeSet<QmodZ> {
    base.exps().iter().map(|&x| phi.add(x)).collect()
}

/// Raw upstairs/downstairs exponent sets in the uniform (all-j) convention,
/// with no trivial-character removal. Used by the normalization check, where
/// equality of the full sets is the right statement for every j.
pub(crate) fn family_sets_raw(
    q: u32,
    n: u32,
    m: u32,
    b: i64,
    c: i64,
    j: i64,
    phi: QmodZ,
) -> Result<(BTreeSet<QmodZ>, BTreeSet<QmodZ>)> {
    let (a, bb, cc) = abc(q, n, m);
    let qm1 = q as i64 - 1;
    let up = char_set(a, QmodZ::new((b + c) * j, qm1))?;
    let dn_b = char_set(bb, QmodZ::new(b * j, qm1))?;
    let dn_c = char_set(cc, QmodZ::new(c * j, qm1))?;
    let up = shifted(&up, phi);
    let mut dn = shifted(&dn_b, phi);
    for x in shifted(&dn_c, phi) {
        dn.insert(x);
    }
    Ok((up, dn))
}

/// Builds the character-set shape of a family member and checks its
/// structural invariants.
pub fn family_shape(params: &HypFamilyParams) -> Result<SheafShape> {
    let p = HypFamilyParams::new(
        params.q,
        params.n,
        params.m,
        params.b,
        params.c,
        params.j,
        params.phi,
        params.kind,
    )?;
    let (a, bb, cc) = abc(p.q, p.n, p.m);
    let qm1 = p.q as i64 - 1;
    let up_base = char_set(a, QmodZ::new((p.b + p.c) * p.j, qm1))?;
    let dn_b = char_set(bb, QmodZ::new(p.b * p.j, qm1))?;
    let dn_c = char_set(cc, QmodZ::new(p.c * p.j, qm1))?;
    let mut up = shifted(&up_base, p.phi);
    let mut dn_c = shifted(&dn_c, p.phi);
    if p.kind == FamilyKind::H0 {
        // The trivial summand is split off: drop one copy of the trivial
        // character upstairs and the copy living in the C block downstairs.
        if !up.remove(&p.phi) || !dn_c.remove(&p.phi) {
            return Err(Error::BadParams(
                "j = 0 family lost its trivial character before removal".into(),
            ));
        }
    }
    let mut dn = shifted(&dn_b, p.phi);
    let expected_dn = dn.len() + dn_c.len();
    for x in dn_c {
        dn.insert(x);
    }
    if dn.len() != expected_dn {
        return Err(Error::BadParams(format!(
            "downstairs characters collide: {} distinct of {expected_dn}",
            dn.len()
        )));
    }
    if let Some(x) = up.intersection(&dn).next() {
        return Err(Error::BadParams(format!(
            "upstairs and downstairs share the character {x}"
        )));
    }
    let d = up.len() as i64;
    let w = d - dn.len() as i64;
    let q = p.q as i64;
    let expect_w = (q.pow(p.m) - 1) * (q.pow(p.n - p.m) - 1) / (q - 1);
    if w != expect_w {
        return Err(Error::BadParams(format!(
            "wild dimension {w} != (q^m-1)(q^(n-m)-1)/(q-1) = {expect_w}"
        )));
    }
    let (pr, _) = prime_power(p.q).unwrap();
    if w % pr as i64 == 0 {
        return Err(Error::BadParams(format!(
            "wild dimension {w} divisible by the characteristic {pr}"
        )));
    }
    debug_assert_eq!(a - if p.kind == FamilyKind::H0 { 1 } else { 0 }, d);
    Ok(SheafShape {
        upstairs: CharSet::from_set(up),
        downstairs: CharSet::from_set(dn),
        d,
        w,
    })
}

/// Geometric determinant data: the tame exponent of the determinant character
/// (sum of the upstairs exponents) and whether the wild part has rank one.
pub fn geom_det(shape: &SheafShape) -> (QmodZ, bool) {
    let mut s = QmodZ::ZERO;
    for &x in shape.upstairs.exps() {
        s = s.add(x);
    }
    (s, shape.w == 1)
}

fn min_solution(modulus: i64, mul: i64, target: i64) -> Option<i64> {
    // smallest e >= 0 with e*mul = target mod modulus
    (0..modulus).find(|&e| (e * mul - target).rem_euclid(modulus) == 0)
}

/// Reduces an arbitrary label triple (b0, c0, j0) to the canonical form with
/// bC - cB = 1 and c in [0, C(q-1)), returning the canonical parameters and
/// the Frobenius-shift exponent e used along the way. The shifted twist
/// phi' = e*j0/(q-1) lands in the output's phi slot.
pub fn normalize_params(
    q: u32,
    n: u32,
    m: u32,
    b0: i64,
    c0: i64,
    j0: i64,
) -> Result<(HypFamilyParams, i64)> {
    prime_power(q).ok_or(Error::NotPrime(q as u64))?;
    if n < 2 || m == 0 || m >= n {
        return Err(Error::BadParams(format!(
            "block sizes ({m}, {}) need 1 <= m <= n-1",
            n as i64 - m as i64
        )));
    }
    if (n as i64).gcd(&(m as i64)) != 1 {
        return Err(Error::BadParams(format!(
            "normalization needs coprime block degrees, got ({m}, {n})"
        )));
    }
    let (a, bb, cc) = abc(q, n, m);
    let qm1 = q as i64 - 1;
    let j0 = j0.rem_euclid(qm1.max(1));
    if bb > 1 && b0.gcd(&bb) != 1 {
        return Err(Error::BadParams(format!("gcd(b0, B) = gcd({b0}, {bb}) != 1")));
    }
    if cc > 1 && c0.gcd(&cc) != 1 {
        return Err(Error::BadParams(format!("gcd(c0, C) = gcd({c0}, {cc}) != 1")));
    }
    let side = b0 * (n - m) as i64 - c0 * m as i64;
    if side.gcd(&qm1) != 1 {
        return Err(Error::BadParams(format!(
            "gcd(b0(n-m) - c0 m, q-1) = gcd({side}, {qm1}) != 1"
        )));
    }

    // Shift depth: one more than the largest exponent in the factorization of
    // q-1, so that n^d kills every obstruction prime.
    let d = if qm1 <= 1 {
        1u32
    } else {
        let mut r = qm1;
        let mut best = 0u32;
        let mut f = 2i64;
        while f * f <= r {
            if r % f == 0 {
                let mut e = 0u32;
                while r % f == 0 {
                    r /= f;
                    e += 1;
                }
                best = best.max(e);
            }
            f += 1;
        }
        if r > 1 {
            best = best.max(1);
        }
        best + 1
    };
    let nd = (n as i64).pow(d);
    let e = min_solution(nd, (n - m) as i64, c0.rem_euclid(nd))
        .ok_or_else(|| Error::BadParams(format!("no Frobenius shift with e(n-m) = c0 mod {nd}")))?;

    let x = if bb > 1 {
        min_solution(bb, cc, 1)
            .ok_or_else(|| Error::BadParams("C not invertible mod B".into()))?
    } else {
        0
    };
    let y = (x * cc - 1) / bb;
    let delta = b0 * cc - c0 * bb;
    let z = if qm1 > 1 {
        min_solution(qm1, delta, 1).ok_or_else(|| {
            Error::BadParams(format!("bC - cB = {delta} not invertible mod q-1"))
        })?
    } else {
        0
    };
    let w = (z * delta - 1).div_euclid(qm1);

    let b1 = z * (b0 - e * bb) - qm1 * x * w;
    let c1 = z * (c0 - e * cc) - qm1 * y * w;
    let j1 = if qm1 > 1 {
        ((b0 * (n - m) as i64 - c0 * m as i64) * j0).rem_euclid(qm1)
    } else {
        0
    };

    // Translate by the index lattice spanned by (B(q-1), C(q-1)) to land c in
    // [0, C(q-1)).
    let lb = bb * qm1;
    let lc = cc * qm1;
    let k = -(c1.div_euclid(lc));
    let b2 = b1 + k * lb;
    let c2 = c1 + k * lc;

    if b2 * cc - c2 * bb != 1 {
        return Err(Error::BadParams(format!(
            "normalization drifted: bC - cB = {}",
            b2 * cc - c2 * bb
        )));
    }
    let tame = qm1 / qm1.gcd(&c2);
    if a.gcd(&tame) != 1 {
        return Err(Error::BadParams(format!(
            "normalized c = {c2} fails the tame condition"
        )));
    }

    let phi = QmodZ::new(e * j0, qm1);
    let kind = if j1 == 0 { FamilyKind::H0 } else { FamilyKind::Hj };

    // The canonical labels must present the same local system: same full
    // character sets after the phi' twist.
    let (up0, dn0) = family_sets_raw(q, n, m, b0, c0, j0, QmodZ::ZERO)?;
    let (up2, dn2) = family_sets_raw(q, n, m, b2, c2, j1, phi)?;
    if up0 != up2 || dn0 != dn2 {
        return Err(Error::BadParams(
            "normalized parameters changed the character sets".into(),
        ));
    }

    let params = HypFamilyParams::new(q, n, m, b2, c2, j1, phi, kind)?;
    Ok((params, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qz(n: i64, d: i64) -> QmodZ {
        QmodZ::new(n, d)
    }

    #[test]
    fn char_set_examples() {
        let c = char_set(3, QmodZ::ZERO).unwrap();
        assert_eq!(c.level(), 3);
        assert_eq!(c.exps(), &[qz(0, 1), qz(1, 3), qz(2, 3)]);

        let c = char_set(1, qz(2, 5)).unwrap();
        assert_eq!(c.exps(), &[qz(2, 5)]);

        // Seventh roots of the quadratic character: odd numerators over 14.
        let c = char_set(7, qz(1, 2)).unwrap();
        assert_eq!(c.level(), 14);
        let want: Vec<QmodZ> = (0..7).map(|k| qz(2 * k + 1, 14)).collect();
        let mut want = want;
        want.sort();
        assert_eq!(c.exps(), &want[..]);

        assert!(char_set(0, QmodZ::ZERO).is_err());
    }

    #[test]
    fn binary_h0_shape() {
        let p = HypFamilyParams::new(2, 3, 1, 1, 2, 0, QmodZ::ZERO, FamilyKind::H0).unwrap();
        let s = family_shape(&p).unwrap();
        assert_eq!(s.d, 6);
        assert_eq!(s.w, 3);
        let want: Vec<QmodZ> = (1..7).map(|k| qz(k, 7)).collect();
        let mut want = want;
        want.sort();
        assert_eq!(s.upstairs.exps(), &want[..]);
        assert_eq!(s.downstairs.exps(), &[qz(0, 1), qz(1, 3), qz(2, 3)]);
        assert_eq!(s.downstairs.level(), 3);
        let (det, wild) = geom_det(&s);
        assert_eq!(det, QmodZ::ZERO);
        assert!(!wild);
    }

    #[test]
    fn ternary_twisted_shape() {
        let p = HypFamilyParams::new(3, 3, 1, 1, 3, 1, QmodZ::ZERO, FamilyKind::Hj).unwrap();
        let s = family_shape(&p).unwrap();
        assert_eq!(s.d, 13);
        assert_eq!(s.downstairs.len(), 5);
        assert_eq!(s.w, 8);
        // Upstairs: thirteenth roots of the chi^(b+c) = chi^4 = trivial point.
        assert!(s.upstairs.contains(QmodZ::ZERO));
        assert!(s.upstairs.contains(qz(1, 13)));
        // Downstairs: {1/2} from the B block, tenth roots of chi^3 = chi.
        assert!(s.downstairs.contains(qz(1, 2)));
        assert!(s.downstairs.contains(qz(1, 8)));
        let (det, wild) = geom_det(&s);
        assert_eq!(det, QmodZ::ZERO);
        assert!(!wild);
    }

    #[test]
    fn rank_two_wild_family() {
        // Smallest family: blocks (1, 1) over F_2 has rank 2 and wild part of
        // dimension 1.
        let p = HypFamilyParams::new(2, 2, 1, 1, 2, 0, QmodZ::ZERO, FamilyKind::H0).unwrap();
        let s = family_shape(&p).unwrap();
        assert_eq!(s.d, 2);
        assert_eq!(s.w, 1);
        let (_, wild) = geom_det(&s);
        assert!(wild);
    }

    #[test]
    fn phi_translates_both_sets() {
        let phi = qz(1, 2);
        let p = HypFamilyParams::new(3, 3, 1, 1, 3, 1, phi, FamilyKind::Hj).unwrap();
        let s0 = family_shape(&HypFamilyParams { phi: QmodZ::ZERO, ..p }).unwrap();
        let s1 = family_shape(&p).unwrap();
        let shift = |c: &CharSet| -> Vec<QmodZ> {
            let mut v: Vec<QmodZ> = c.exps().iter().map(|&x| x.add(phi)).collect();
            v.sort();
            v
        };
        assert_eq!(shift(&s0.upstairs), s1.upstairs.exps());
        assert_eq!(shift(&s0.downstairs), s1.downstairs.exps());
        assert_eq!((s0.d, s0.w), (s1.d, s1.w));
    }

    #[test]
    fn validation_rejects_bad_labels() {
        // bC - cB != 1
        assert!(HypFamilyParams::new(3, 3, 1, 1, 1, 1, QmodZ::ZERO, FamilyKind::Hj).is_err());
        // tame condition: over F_4 with n = 3 the label c must kill the
        // common factor 3 of A = 21 and q - 1 = 3.
        assert!(HypFamilyParams::new(4, 3, 1, 1, 4, 1, QmodZ::ZERO, FamilyKind::Hj).is_err());
        assert!(HypFamilyParams::new(4, 3, 1, 2, 9, 1, QmodZ::ZERO, FamilyKind::Hj).is_ok());
        // twist index out of range
        assert!(HypFamilyParams::new(3, 3, 1, 1, 3, 2, QmodZ::ZERO, FamilyKind::Hj).is_err());
        assert!(HypFamilyParams::new(2, 3, 1, 1, 2, 1, QmodZ::ZERO, FamilyKind::Hj).is_err());
        // j = 0 must go through the H0 kind
        assert!(HypFamilyParams::new(3, 3, 1, 1, 3, 0, QmodZ::ZERO, FamilyKind::H0).is_ok());
        // block sizes
        assert!(HypFamilyParams::new(2, 3, 3, 1, 2, 0, QmodZ::ZERO, FamilyKind::H0).is_err());
    }

    #[test]
    fn equal_blocks_collide_downstairs() {
        // Blocks (2, 2) over F_2: both downstairs factors are the cubic
        // characters, so the shape degenerates.
        let p = HypFamilyParams::new(2, 4, 2, 1, 2, 0, QmodZ::ZERO, FamilyKind::H0).unwrap();
        let err = family_shape(&p).unwrap_err();
        assert!(matches!(err, Error::BadParams(_)));
    }

    #[test]
    fn normalize_worked_examples() {
        let (p, e) = normalize_params(3, 3, 1, 1, 1, 1).unwrap();
        assert_eq!((p.b, p.c, p.j, e), (2, 7, 1, 5));
        assert_eq!(p.kind, FamilyKind::Hj);
        assert_eq!(p.phi, qz(5, 2));
        assert!(family_shape(&p).is_ok());

        let (p, e) = normalize_params(4, 3, 1, 1, 1, 1).unwrap();
        assert_eq!((p.b, p.c, p.j, e), (2, 9, 1, 5));
        assert_eq!(p.c % 3, 0);
        assert!(family_shape(&p).is_ok());

        let (p, e) = normalize_params(2, 3, 1, 0, 1, 0).unwrap();
        assert_eq!((p.b, p.c, p.j, e), (1, 2, 0, 2));
        assert_eq!(p.kind, FamilyKind::H0);
        assert!(family_shape(&p).is_ok());
    }

    #[test]
    fn normalize_fixes_canonical_labels() {
        // Already-canonical labels come back unchanged (the shift exponent
        // need not be zero, but its induced twist is trivial).
        let (p, e) = normalize_params(2, 3, 1, 1, 2, 0).unwrap();
        assert_eq!((p.b, p.c, p.j, e), (1, 2, 0, 1));
        let (p, e) = normalize_params(3, 3, 1, 2, 7, 1).unwrap();
        assert_eq!((p.b, p.c, p.j, e), (2, 7, 1, 8));
        assert_eq!(p.phi, QmodZ::ZERO);
    }

    #[test]
    fn normalize_requires_unit_delta() {
        // b0*C - c0*B must be a unit mod q-1 for the determinant-preserving
        // rescale to exist.
        assert!(normalize_params(3, 3, 1, 1, 4, 1).is_err());
        // non-coprime blocks are out of scope
        assert!(normalize_params(2, 4, 2, 1, 1, 0).is_err());
    }

    #[test]
    fn shape_serialization() {
        let p = HypFamilyParams::new(2, 3, 1, 1, 2, 0, QmodZ::ZERO, FamilyKind::H0).unwrap();
        let s = family_shape(&p).unwrap();
        let js = serde_json::to_value(&s).unwrap();
        assert_eq!(js["D"], 6);
        assert_eq!(js["W"], 3);
        assert_eq!(js["downstairs"]["level"], 3);
        assert_eq!(js["downstairs"]["exps"][0], "0/1");
    }
}
