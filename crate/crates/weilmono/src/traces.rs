//! Frobenius traces of the hypergeometric family as exact point counts over
//! finite fields: the G_0 and twisted G_j summands, the full module W via a
//! linearized-polynomial kernel, the Kummer pullback counts, and the
//! pushforward fiber identification.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cycint::{cyc_sum, CycInt};
use crate::field::{norm, FieldTable, FqElem};
use crate::kubert::{abc, prime_power};
use crate::qmodz::QmodZ;
use crate::sheaf::HypFamilyParams;
use crate::{Error, Result};

/// Checks K is an extension of F_q and returns (e_q, f) with #K = q^f,
/// q = p^e_q.
pub(crate) fn field_degree(k: &FieldTable, q: u32) -> Result<(u32, u32)> {
    let (p, eq) = prime_power(q).ok_or(Error::NotPrime(q as u64))?;
    if k.p() != p || k.e() % eq != 0 {
        return Err(Error::NotASubfield {
            sub_p: p as u64,
            sub_e: eq,
            sup_p: k.p() as u64,
            sup_e: k.e(),
        });
    }
    Ok((eq, k.e() / eq))
}

/// Solutions v of u^(-b) v^B + u^(c q^m) v^(-C q^m) = 1 in K^x, in exp-table
/// order.
pub fn g0_solutions(k: &FieldTable, params: &HypFamilyParams, u: FqElem) -> Result<Vec<FqElem>> {
    field_degree(k, params.q)?;
    let lu = u.log().ok_or(Error::ZeroArgument)? as i64;
    let (_, bb, cc) = abc(params.q, params.n, params.m);
    let qm = (params.q as i64).pow(params.m);
    let units = k.units() as i64;
    let mut sols = Vec::new();
    for lv in 0..units {
        let t1 = k.exp(-params.b * lu + bb * lv);
        let t2 = k.exp(params.c * qm * lu - cc * qm * lv);
        if k.add(t1, t2) == FqElem::ONE {
            sols.push(FqElem::Unit(lv as u32));
        }
    }
    Ok(sols)
}

/// Trace of the rank-B hypergeometric summand at u: -1 plus the solution
/// count of its defining equation.
pub fn trace_g0(k: &FieldTable, params: &HypFamilyParams, u: FqElem) -> Result<i64> {
    Ok(g0_solutions(k, params, u)?.len() as i64 - 1)
}

/// Trace of the j-twisted summand: the solutions weighted by the order-(q-1)
/// character of their norm, as an exact cyclotomic integer.
pub fn trace_gj(k: &FieldTable, params: &HypFamilyParams, u: FqElem, j: i64) -> Result<CycInt> {
    let (eq, _) = field_degree(k, params.q)?;
    let qm1 = params.q as i64 - 1;
    if j < 1 || j > qm1 - 1 {
        return Err(Error::BadParams(format!(
            "character twist {j} outside 1..={}",
            qm1 - 1
        )));
    }
    let base = FieldTable::new(k.p(), eq)?;
    let sols = g0_solutions(k, params, u)?;
    let mut exps = Vec::with_capacity(sols.len());
    for v in sols {
        let nv = norm(k, &base, v)?;
        exps.push(QmodZ::new(nv.log().unwrap() as i64 * j, qm1));
    }
    Ok(cyc_sum(&exps))
}

/// F_q-dimension of the kernel of w -> u^b w^(q^m) - u^(b + c q^m) w^(q^n) - w
/// on K, by Gaussian elimination on its matrix over the prime field.
pub fn solution_space_dim(k: &FieldTable, params: &HypFamilyParams, u: FqElem) -> Result<u32> {
    let (eq, _) = field_degree(k, params.q)?;
    u.log().ok_or(Error::ZeroArgument)?;
    let p = k.p();
    let ee = k.e() as usize;
    let qm = (params.q as i64).pow(params.m);
    let qn = (params.q as i64).pow(params.n);
    let cu1 = k.pow(u, params.b);
    let cu2 = k.pow(u, params.b + params.c * qm);
    // column i: prime-field coordinates of the image of the basis power x^i
    let mut mat = vec![vec![0u32; ee]; ee];
    for i in 0..ee {
        let basis = k.from_code(p.pow(i as u32));
        let img = k.sub(
            k.sub(k.mul(cu1, k.pow(basis, qm)), k.mul(cu2, k.pow(basis, qn))),
            basis,
        );
        let mut code = k.code(img);
        for row in mat.iter_mut() {
            row[i] = code % p;
            code /= p;
        }
    }
    let rank = fp_rank(p, &mut mat);
    let dim_p = ee - rank;
    debug_assert_eq!(dim_p % eq as usize, 0, "kernel is an F_q-subspace");
    Ok((dim_p / eq as usize) as u32)
}

/// Row rank of a matrix over F_p (entries reduced mod p in place).
fn fp_rank(p: u32, mat: &mut [Vec<u32>]) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let inv = |a: u32| -> u32 {
        // p is prime and a != 0
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| mat[r][c] % p != 0) else {
            continue;
        };
        mat.swap(rank, piv);
        let pi = inv(mat[rank][c] % p);
        for x in mat[rank].iter_mut() {
            *x = *x % p * pi % p;
        }
        for r in 0..rows {
            if r != rank && mat[r][c] % p != 0 {
                let f = mat[r][c] % p;
                for c2 in 0..cols {
                    let sub = f * mat[rank][c2] % p;
                    mat[r][c2] = (mat[r][c2] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Trace of the full module at u: q^dim - 2 for the kernel dimension above,
/// so always a power of q (or 1) minus 2.
pub fn trace_w(k: &FieldTable, params: &HypFamilyParams, u: FqElem) -> Result<i64> {
    let d = solution_space_dim(k, params, u)?;
    Ok((params.q as i64).pow(d) - 2)
}

/// The same count by exhaustive scan over K, for cross-validation.
#[cfg(test)]
fn trace_w_scan(k: &FieldTable, params: &HypFamilyParams, u: FqElem) -> Result<i64> {
    field_degree(k, params.q)?;
    let lu = u.log().ok_or(Error::ZeroArgument)? as i64;
    let qm = (params.q as i64).pow(params.m);
    let qn = (params.q as i64).pow(params.n);
    let units = k.units() as i64;
    let mut cnt = 1i64; // w = 0 always solves
    for lw in 0..units {
        let t1 = k.exp(params.b * lu + qm * lw);
        let t2 = k.exp((params.b + params.c * qm) * lu + qn * lw);
        if k.sub(t1, t2) == FqElem::Unit(lw as u32) {
            cnt += 1;
        }
    }
    Ok(cnt - 2)
}

/// Degree of the Kummer pullback: N = (q-1) C / gcd(q-1, c).
pub fn pullback_degree(params: &HypFamilyParams) -> i64 {
    let (_, _, cc) = abc(params.q, params.n, params.m);
    let qm1 = params.q as i64 - 1;
    qm1 * cc / gcd_i64(qm1, params.c)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

fn pullback_rhs(k: &FieldTable, params: &HypFamilyParams, u: FqElem) -> Result<FqElem> {
    let lu = u.log().ok_or(Error::ZeroArgument)? as i64;
    let qm1 = params.q as i64 - 1;
    let e = qm1 / gcd_i64(qm1, params.c);
    Ok(k.exp(e * lu))
}

/// Unit-count form of the pulled-back full module: -1 plus the number of
/// w in K^x with w^(q^m - 1) - w^(q^n - 1) = u^((q-1)/gcd(q-1, c)).
pub fn trace_w_pullback(k: &FieldTable, params: &HypFamilyParams, u: FqElem) -> Result<i64> {
    field_degree(k, params.q)?;
    let rhs = pullback_rhs(k, params, u)?;
    let qm = (params.q as i64).pow(params.m);
    let qn = (params.q as i64).pow(params.n);
    let units = k.units() as i64;
    let mut cnt = 0i64;
    for lw in 0..units {
        let t1 = k.exp((qm - 1) * lw);
        let t2 = k.exp((qn - 1) * lw);
        if k.sub(t1, t2) == rhs {
            cnt += 1;
        }
    }
    Ok(cnt - 1)
}

/// Companion count for the rank-B summand: w^B - w^A on the same right side.
pub fn trace_g0_pullback(k: &FieldTable, params: &HypFamilyParams, u: FqElem) -> Result<i64> {
    field_degree(k, params.q)?;
    let rhs = pullback_rhs(k, params, u)?;
    let (aa, bb, _) = abc(params.q, params.n, params.m);
    let units = k.units() as i64;
    let mut cnt = 0i64;
    for lw in 0..units {
        let t1 = k.exp(bb * lw);
        let t2 = k.exp(aa * lw);
        if k.sub(t1, t2) == rhs {
            cnt += 1;
        }
    }
    Ok(cnt - 1)
}

/// Both pullback counts match the underlying traces at u^(-N): the Kummer
/// cover inverts and raises to the pullback degree.
pub fn pullback_consistent(k: &FieldTable, params: &HypFamilyParams, u: FqElem) -> Result<bool> {
    let lu = u.log().ok_or(Error::ZeroArgument)? as i64;
    let npull = pullback_degree(params);
    let arg = k.exp(-npull * lu);
    Ok(trace_w_pullback(k, params, u)? == trace_w(k, params, arg)?
        && trace_g0_pullback(k, params, u)? == trace_g0(k, params, arg)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct PushforwardReport {
    pub field: String,
    pub points: u32,
    pub consistent: bool,
    /// u indices (exp-table order) where a fiber count disagrees.
    pub mismatches: Vec<u32>,
}

/// Identifies 1 + trace of the pulled-back summands with fiber counts of
/// t^B - t^A (rank-B part) and t^((q-1)B) - t^((q-1)A) (full module) at the
/// power-transformed argument.
pub fn pushforward_check(k: &FieldTable, params: &HypFamilyParams) -> Result<PushforwardReport> {
    field_degree(k, params.q)?;
    let (aa, bb, _) = abc(params.q, params.n, params.m);
    let qm1 = params.q as i64 - 1;
    let npull = pullback_degree(params);
    let units = k.units() as i64;

    // fiber histograms of both polynomials over K (x = 0 maps to 0, never a
    // unit, so it cannot hit any tested right side)
    let mut fib_f: BTreeMap<u32, i64> = BTreeMap::new();
    let mut fib_big: BTreeMap<u32, i64> = BTreeMap::new();
    for lx in 0..units {
        let vf = k.sub(k.exp(bb * lx), k.exp(aa * lx));
        *fib_f.entry(k.code(vf)).or_insert(0) += 1;
        let vb = k.sub(k.exp(qm1 * bb * lx), k.exp(qm1 * aa * lx));
        *fib_big.entry(k.code(vb)).or_insert(0) += 1;
    }

    let mut mismatches = Vec::new();
    for lu in 0..units {
        let arg = k.exp(-npull * lu);
        let rhs = pullback_rhs(k, params, FqElem::Unit(lu as u32))?;
        let code = k.code(rhs);
        let lhs_f = 1 + trace_g0(k, params, arg)?;
        let lhs_big = 1 + trace_w(k, params, arg)?;
        let got_f = fib_f.get(&code).copied().unwrap_or(0);
        let got_big = fib_big.get(&code).copied().unwrap_or(0);
        if lhs_f != got_f || lhs_big != got_big {
            mismatches.push(lu as u32);
        }
    }
    Ok(PushforwardReport {
        field: format!("{}^{}", k.p(), k.e()),
        points: units as u32,
        consistent: mismatches.is_empty(),
        mismatches,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TracePoint {
    pub u_index: u32,
    pub j: i64,
    pub value: CycInt,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceReport {
    pub params: HypFamilyParams,
    pub field: String,
    pub points: Vec<TracePoint>,
    /// Full-module trace value -> frequency over all of K^x.
    pub histogram: BTreeMap<i64, u64>,
}

/// Evaluates the requested summand traces (j = 0 meaning the untwisted one)
/// at the requested u indices, plus the full-module histogram over all u.
pub fn trace_report(
    k: &FieldTable,
    params: &HypFamilyParams,
    js: &[i64],
    us: &[u32],
) -> Result<TraceReport> {
    field_degree(k, params.q)?;
    let mut points = Vec::new();
    for &lu in us {
        if lu >= k.units() {
            return Err(Error::BadParams(format!(
                "u index {lu} outside 0..{}",
                k.units()
            )));
        }
        let u = FqElem::Unit(lu);
        for &j in js {
            let value = if j == 0 {
                CycInt::from_int(1, trace_g0(k, params, u)?)
            } else {
                trace_gj(k, params, u, j)?
            };
            points.push(TracePoint { u_index: lu, j, value });
        }
    }
    let mut histogram = BTreeMap::new();
    for lu in 0..k.units() {
        let v = trace_w(k, params, FqElem::Unit(lu))?;
        *histogram.entry(v).or_insert(0u64) += 1;
    }
    Ok(TraceReport {
        params: *params,
        field: format!("{}^{}", k.p(), k.e()),
        points,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheaf::FamilyKind;

    fn fam(q: u32, n: u32, m: u32, b: i64, c: i64) -> HypFamilyParams {
        let kind = if q == 2 { FamilyKind::H0 } else { FamilyKind::Hj };
        let j = if q == 2 { 0 } else { 1 };
        HypFamilyParams::new(q, n, m, b, c, j, QmodZ::ZERO, kind).unwrap()
    }

    fn ft(p: u32, e: u32) -> FieldTable {
        FieldTable::new(p, e).unwrap()
    }

    #[test]
    fn g0_frozen_values() {
        let p = fam(2, 3, 1, 1, 2);
        let f2 = ft(2, 1);
        let f8 = ft(2, 3);
        assert_eq!(trace_g0(&f2, &p, FqElem::ONE).unwrap(), -1);
        assert_eq!(trace_g0(&f8, &p, FqElem::ONE).unwrap(), -1);
        let alpha = f8.generator();
        assert_eq!(trace_g0(&f8, &p, alpha).unwrap(), 0);
        assert_eq!(
            g0_solutions(&f8, &p, alpha).unwrap(),
            vec![f8.pow(alpha, 4)]
        );
        assert_eq!(trace_g0(&f8, &p, FqElem::Zero), Err(Error::ZeroArgument));
    }

    #[test]
    fn w_frozen_values_and_kernel() {
        let p = fam(2, 3, 1, 1, 2);
        let f8 = ft(2, 3);
        assert_eq!(solution_space_dim(&f8, &p, FqElem::ONE).unwrap(), 0);
        assert_eq!(trace_w(&f8, &p, FqElem::ONE).unwrap(), -1);
        let alpha = f8.generator();
        assert_eq!(solution_space_dim(&f8, &p, alpha).unwrap(), 1);
        assert_eq!(trace_w(&f8, &p, alpha).unwrap(), 0);
        // the kernel at u = alpha is {0, alpha + 1}
        let w = f8.add(alpha, FqElem::ONE);
        let img = f8.sub(
            f8.mul(f8.pow(alpha, 1), f8.pow(w, 2)),
            f8.mul(f8.pow(alpha, 1 + 2 * 2), f8.pow(w, 8)),
        );
        assert_eq!(img, w);
    }

    #[test]
    fn gj_empty_sum() {
        let p = fam(3, 3, 1, 1, 3);
        let f3 = ft(3, 1);
        let t = trace_gj(&f3, &p, FqElem::ONE, 1).unwrap();
        assert!(t.is_zero());
        assert_eq!(t.to_string(), "0");
        // j out of range
        assert!(trace_gj(&f3, &p, FqElem::ONE, 2).is_err());
        let p2 = fam(2, 3, 1, 1, 2);
        assert!(trace_gj(&ft(2, 3), &p2, FqElem::ONE, 1).is_err());
    }

    #[test]
    fn kernel_matches_scan() {
        for (q, n, m, b, c, ks) in [
            (2u32, 3u32, 1u32, 1i64, 2i64, vec![1u32, 2, 3, 6]),
            (3, 3, 1, 1, 3, vec![1, 2, 3]),
            (3, 3, 1, 2, 7, vec![1, 2, 3]),
        ] {
            let p = fam(q, n, m, b, c);
            let (pr, eq) = crate::kubert::prime_power(q).unwrap();
            for ke in ks {
                let k = ft(pr, eq * ke);
                for lu in 0..k.units() {
                    let u = FqElem::Unit(lu);
                    assert_eq!(
                        trace_w(&k, &p, u).unwrap(),
                        trace_w_scan(&k, &p, u).unwrap(),
                        "family ({q},{n},{m},{b},{c}) field {}^{} u {lu}",
                        k.p(),
                        k.e()
                    );
                }
            }
        }
    }

    #[test]
    fn trace_laws_across_fields() {
        // power-of-q, direct sum, pullback consistency; no full splitting
        for (q, n, m, b, c) in [
            (2u32, 3u32, 1u32, 1i64, 2i64),
            (3, 3, 1, 1, 3),
            (3, 3, 1, 2, 7),
        ] {
            let p = fam(q, n, m, b, c);
            let (pr, eq) = crate::kubert::prime_power(q).unwrap();
            for ke in [1u32, 2, 3, 6] {
                let k = ft(pr, eq * ke);
                let mut full_split = 0u32;
                for lu in 0..k.units() {
                    let u = FqElem::Unit(lu);
                    let tw = trace_w(&k, &p, u).unwrap();
                    let mut v = tw + 2;
                    while v % q as i64 == 0 {
                        v /= q as i64;
                    }
                    assert_eq!(v, 1, "trace_w + 2 not a q-power at u {lu}");
                    if tw == (q as i64).pow(n) - 2 {
                        full_split += 1;
                    }
                    let mut total = CycInt::from_int(1, trace_g0(&k, &p, u).unwrap());
                    for j in 1..=(q as i64 - 2) {
                        total = total.add(&trace_gj(&k, &p, u, j).unwrap());
                    }
                    assert_eq!(total, CycInt::from_int(1, tw), "direct sum at u {lu}");
                    assert!(pullback_consistent(&k, &p, u).unwrap(), "pullback at u {lu}");
                }
                assert_eq!(full_split, 0, "unexpected full splitting");
            }
        }
    }

    #[test]
    fn pullback_base_point() {
        // u = 1: count form and trace form agree trivially
        let p = fam(2, 3, 1, 1, 2);
        let f8 = ft(2, 3);
        assert_eq!(trace_w_pullback(&f8, &p, FqElem::ONE).unwrap(), -1);
        assert_eq!(trace_w(&f8, &p, FqElem::ONE).unwrap(), -1);
        assert_eq!(pullback_degree(&p), 3);
        let p3 = fam(3, 3, 1, 1, 3);
        assert_eq!(pullback_degree(&p3), 8);
        let p37 = fam(3, 3, 1, 2, 7);
        assert_eq!(pullback_degree(&p37), 8);
    }

    #[test]
    fn pushforward_examples() {
        let p = fam(2, 3, 1, 1, 2);
        for ke in [1u32, 3, 6] {
            let k = ft(2, ke);
            let r = pushforward_check(&k, &p).unwrap();
            assert!(r.consistent, "field 2^{ke}: {:?}", r.mismatches);
            assert_eq!(r.points, k.units());
        }
        let p3 = fam(3, 3, 1, 1, 3);
        let r = pushforward_check(&ft(3, 2), &p3).unwrap();
        assert!(r.consistent);
    }

    #[test]
    fn report_shape() {
        let p = fam(3, 3, 1, 1, 3);
        let k = ft(3, 1);
        let r = trace_report(&k, &p, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(r.points.len(), 4);
        assert_eq!(r.field, "3^1");
        let total: u64 = r.histogram.values().sum();
        assert_eq!(total, k.units() as u64);
        // F_3: u = 1 (index 0) has G_0 = 0 - 1 = -1; serialization carries
        // exact cyclotomic values
        let js = serde_json::to_value(&r).unwrap();
        assert_eq!(js["points"][0]["u_index"], 0);
        assert!(js["points"][0]["value"]["coeffs"].is_array());
        assert!(trace_report(&k, &p, &[0], &[5]).is_err());
    }
}
