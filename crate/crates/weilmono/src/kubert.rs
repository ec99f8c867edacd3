use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::qmodz::QmodZ;
use crate::{Error, Result};

/// Factor q as p^e, if it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut v = q;
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            return if v == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// The Kubert V function. For x with denominator d prime to p, let f be the
/// multiplicative order of p mod d and write x = k/(p^f - 1); the value is
/// digitsum_p(k)/(f(p-1)). Computed equivalently as the average of the
/// fractional parts of p^i·x over the p-orbit, which never needs p^f itself.
pub fn kubert_v(p: u32, x: QmodZ) -> Result<Ratio<i64>> {
    let d = x.den();
    if d % p as i64 == 0 && !x.is_integer() {
        return Err(Error::BadParams(format!(
            "V argument {x} has denominator divisible by p={p}"
        )));
    }
    if x.is_integer() {
        return Ok(Ratio::from_integer(0));
    }
    let p = p as i64;
    let mut k = x.num();
    let mut sum = 0i64;
    let mut f = 0i64;
    loop {
        sum += k;
        f += 1;
        k = (k * p) % d;
        if k == x.num() {
            break;
        }
    }
    Ok(Ratio::new(sum, f * d))
}

/// V(k/level) for every k in [0, level), by walking each p-orbit once.
/// V is constant on orbits, so this is O(level) orbit steps.
pub fn v_table(p: u32, level: i64) -> Result<Vec<Ratio<i64>>> {
    if level % p as i64 == 0 {
        return Err(Error::BadParams(format!(
            "level {level} is divisible by p={p}"
        )));
    }
    let p = p as i64;
    let mut table = vec![None; level as usize];
    table[0] = Some(Ratio::from_integer(0));
    let mut orbit = Vec::new();
    for start in 1..level {
        if table[start as usize].is_some() {
            continue;
        }
        orbit.clear();
        let mut k = start;
        let mut sum = 0i64;
        loop {
            orbit.push(k);
            sum += k;
            k = (k * p) % level;
            if k == start {
                break;
            }
        }
        let v = Ratio::new(sum, orbit.len() as i64 * level);
        for &k in &orbit {
            table[k as usize] = Some(v);
        }
    }
    Ok(table.into_iter().map(|v| v.unwrap()).collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Verdict {
    #[serde(rename = "HOLDS")]
    Holds,
    #[serde(rename = "FAILS")]
    Fails,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum VTestVariant {
    /// The full W=1 inequality with the (A-2)/(A-1) averaged term.
    W1,
    /// The reduced W=1 inequality (derivable when the full one never fails).
    W1Reduced,
    /// The big-wild-part inequality for 1 <= m <= n-1.
    Wbig,
    /// The trivial-tau specialization certifying the surviving families.
    TauTrivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct VTestInstance {
    pub p: u32,
    pub q: u32,
    pub n: u32,
    pub m: u32,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    /// Exponent of the twisting character tau; zero means trivial.
    pub t: QmodZ,
    /// The rho parameter (W=1 variants only).
    pub s: i64,
    pub modulus: i64,
    pub variant: VTestVariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(rename = "N")]
    pub n_coef: i64,
    pub x: QmodZ,
}

/// Instance counts for the proof-internal equalities checked under
/// --assert-internal. They are consequences of the main inequality holding
/// at every pair, so they are only binding on a HOLDS run.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct InternalChecks {
    pub checked: u64,
    pub holds: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VTestReport {
    pub verdict: Verdict,
    pub counterexample: Option<Witness>,
    pub pairs_checked: u64,
    pub orbits_skipped: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub internal: Option<InternalChecks>,
}

pub(crate) fn abc(q: u32, n: u32, m: u32) -> (i64, i64, i64) {
    let q = q as i64;
    let a = (q.pow(n) - 1) / (q - 1);
    let b = (q.pow(m) - 1) / (q - 1);
    let c = (q.pow(n - m) - 1) / (q - 1);
    (a, b, c)
}

impl VTestInstance {
    fn base(q: u32, n: u32, m: u32, variant: VTestVariant) -> Result<(u32, i64, i64, i64)> {
        let (p, _) = prime_power(q)
            .ok_or_else(|| Error::BadParams(format!("q={q} is not a prime power")))?;
        if n < 3 || m < 1 || m > n - 1 {
            return Err(Error::BadParams(format!(
                "need n >= 3 and 1 <= m <= n-1, got n={n} m={m} for {variant:?}"
            )));
        }
        let (a, b, c) = abc(q, n, m);
        debug_assert_eq!(a, b + c * (q as i64).pow(m));
        Ok((p, a, b, c))
    }

    pub fn w1(q: u32, n: u32, t: QmodZ, s: i64, modulus: i64) -> Result<VTestInstance> {
        VTestInstance::w1_variant(q, n, t, s, modulus, VTestVariant::W1)
    }

    pub fn w1_reduced(q: u32, n: u32, t: QmodZ, s: i64, modulus: i64) -> Result<VTestInstance> {
        VTestInstance::w1_variant(q, n, t, s, modulus, VTestVariant::W1Reduced)
    }

    fn w1_variant(
        q: u32,
        n: u32,
        t: QmodZ,
        s: i64,
        modulus: i64,
        variant: VTestVariant,
    ) -> Result<VTestInstance> {
        let (p, a, b, c) = VTestInstance::base(q, n, n - 1, variant)?;
        let theta = ((q as i64).pow(n - 1) - 1) / (q as i64 - 1);
        if t.is_integer() || !t.mul_int(theta).is_integer() {
            return Err(Error::BadParams(format!(
                "t={t} must be a nonintegral multiple of 1/{theta}"
            )));
        }
        if !(1..a).contains(&s) {
            return Err(Error::BadParams(format!("s={s} out of range [1, {}]", a - 1)));
        }
        if modulus % a != 0 || modulus % theta != 0 || modulus % p as i64 == 0 {
            return Err(Error::BadParams(format!(
                "modulus {modulus} must be divisible by {a} and {theta} and prime to {p}"
            )));
        }
        Ok(VTestInstance { p, q, n, m: n - 1, a, b, c, t, s, modulus, variant })
    }

    pub fn wbig(q: u32, n: u32, m: u32, t: QmodZ, modulus: i64) -> Result<VTestInstance> {
        let (p, a, b, c) = VTestInstance::base(q, n, m, VTestVariant::Wbig)?;
        let theta = ((q as i64).pow(n - 1) - 1) / (q as i64 - 1);
        if !t.mul_int(theta).is_integer() {
            return Err(Error::BadParams(format!(
                "t={t} must have order dividing {theta}"
            )));
        }
        if modulus % p as i64 == 0 || modulus % t.den() != 0 {
            return Err(Error::BadParams(format!(
                "modulus {modulus} must be prime to {p} and divisible by den(t)={}",
                t.den()
            )));
        }
        Ok(VTestInstance { p, q, n, m, a, b, c, t, s: 0, modulus, variant: VTestVariant::Wbig })
    }

    pub fn tau_trivial(q: u32, n: u32, m: u32, modulus: i64) -> Result<VTestInstance> {
        let (p, a, b, c) = VTestInstance::base(q, n, m, VTestVariant::TauTrivial)?;
        if modulus % p as i64 == 0 {
            return Err(Error::BadParams(format!(
                "modulus {modulus} is divisible by p={p}"
            )));
        }
        Ok(VTestInstance {
            p,
            q,
            n,
            m,
            a,
            b,
            c,
            t: QmodZ::ZERO,
            s: 0,
            modulus,
            variant: VTestVariant::TauTrivial,
        })
    }

    /// Smallest level that contains every character exponent of the family:
    /// all witnesses live at this modulus.
    pub fn minimal_tau_level(q: u32, n: u32, m: u32) -> i64 {
        let q = q as i64;
        (q.pow(n) - 1).lcm(&(q.pow(m) - 1)).lcm(&(q.pow(n - m) - 1))
    }
}

/// Evaluator with a shared V-table covering every argument the instance can
/// produce.
struct VEval {
    level: i64,
    table: Vec<Ratio<i64>>,
}

impl VEval {
    fn new(inst: &VTestInstance) -> Result<VEval> {
        let level = inst.modulus.lcm(&inst.t.den()).lcm(&inst.a);
        Ok(VEval { level, table: v_table(inst.p, level)? })
    }

    fn v(&self, x: QmodZ) -> Ratio<i64> {
        debug_assert_eq!(self.level % x.den(), 0);
        self.table[(x.num() * (self.level / x.den())) as usize]
    }
}

/// LHS - RHS of the instance's inequality at the pair (N, x).
fn margin(inst: &VTestInstance, ev: &VEval, n_coef: i64, x: QmodZ) -> Ratio<i64> {
    let nt = inst.t.mul_int(n_coef);
    match inst.variant {
        VTestVariant::W1 | VTestVariant::W1Reduced => {
            let ns_a = QmodZ::new(n_coef * inst.s, inst.a);
            let lhs = ev.v(nt.add(x.mul_int(inst.a)))
                + ev.v(x.mul_int(inst.a).neg())
                + Ratio::new(3, 2);
            let common = ev.v(nt.add(x)) + ev.v(x.neg()) + ev.v(ns_a.neg().sub(x));
            let head = if inst.variant == VTestVariant::W1 {
                (Ratio::from_integer(inst.a - 2) * ev.v(nt) + ev.v(nt.sub(ns_a)))
                    / Ratio::from_integer(inst.a - 1)
            } else {
                ev.v(nt)
            };
            lhs - head - common
        }
        VTestVariant::Wbig | VTestVariant::TauTrivial => {
            let lhs = ev.v(nt.add(x.mul_int(inst.a)))
                + ev.v(x.mul_int(inst.b).neg())
                + ev.v(x.mul_int(inst.c).neg());
            let rhs = ev.v(nt.add(x)) + ev.v(x.neg());
            lhs - rhs
        }
    }
}

/// LHS - RHS of the instance's inequality at a single (N, x) pair, for
/// re-verifying a reported witness independently of the scan. Negative
/// means the pair violates the inequality.
pub fn witness_margin(inst: &VTestInstance, n_coef: i64, x: QmodZ) -> Result<Ratio<i64>> {
    let ev = VEval::new(inst)?;
    if ev.level % x.den() != 0 {
        return Err(Error::BadParams(format!(
            "witness denominator {} does not divide the search level {}",
            x.den(),
            ev.level
        )));
    }
    Ok(margin(inst, &ev, n_coef, x))
}

/// x-values u/M in scan order: by (denominator, numerator) of the reduced
/// fraction.
fn x_scan_order(modulus: i64) -> Vec<QmodZ> {
    let mut xs: Vec<QmodZ> = (0..modulus).map(|u| QmodZ::new(u, modulus)).collect();
    xs.sort();
    xs
}

/// A pair is canonical iff it is minimal in its joint Frobenius orbit
/// (N, x) -> (pN, px), ordered by (N, den x, num x).
fn is_canonical(p: u32, modulus: i64, n_coef: i64, x: QmodZ) -> bool {
    let key = (n_coef, x.den(), x.num());
    let p = p as i64;
    let (mut n1, mut x1) = ((n_coef * p) % modulus, x.mul_int(p));
    while (n1, x1) != (n_coef, x) {
        if (n1, x1.den(), x1.num()) < key {
            return false;
        }
        n1 = (n1 * p) % modulus;
        x1 = x1.mul_int(p);
    }
    true
}

/// Same, for scans where N plays no role: minimality of x in its p-orbit.
fn is_canonical_x(p: u32, x: QmodZ) -> bool {
    let key = (x.den(), x.num());
    let mut x1 = x.mul_int(p as i64);
    while x1 != x {
        if (x1.den(), x1.num()) < key {
            return false;
        }
        x1 = x1.mul_int(p as i64);
    }
    true
}

fn units(modulus: i64) -> Vec<i64> {
    (1..modulus).filter(|&n| n.gcd(&modulus) == 1).collect()
}

/// Check the proof-internal equalities at the current N: both three-term
/// sums equal 3/2 and the two shifted V-values agree, for u not congruent
/// to 0 or Ns mod A.
fn internal_identities(inst: &VTestInstance, ev: &VEval, n_coef: i64, stats: &mut InternalChecks) {
    let a = inst.a;
    let nt = inst.t.mul_int(n_coef);
    let ns = (n_coef * inst.s).rem_euclid(a);
    let three_halves = Ratio::new(3, 2);
    for u in 1..a {
        if u == ns {
            continue;
        }
        let u_a = QmodZ::new(u, a);
        let lhs1 = ev.v(u_a) + ev.v(nt.sub(u_a)) + ev.v(nt.sub(QmodZ::new(u + ns, a)));
        let lhs2 = ev.v(nt.sub(u_a)) + ev.v(u_a) + ev.v(QmodZ::new(u - ns, a));
        let eqty = ev.v(nt.sub(QmodZ::new(u + ns, a))) == ev.v(QmodZ::new(u - ns, a));
        stats.checked += 1;
        if lhs1 == three_halves && lhs2 == three_halves && eqty {
            stats.holds += 1;
        }
    }
}

/// Run the instance's scan. FAILS reports the first violating pair in scan
/// order (N ascending over units of the modulus, x by (den, num)); pairs in
/// the same Frobenius orbit as an earlier pair are skipped.
pub fn run_vtest(inst: &VTestInstance, assert_internal: bool) -> Result<VTestReport> {
    let ev = VEval::new(inst)?;
    let mut report = VTestReport {
        verdict: Verdict::Holds,
        counterexample: None,
        pairs_checked: 0,
        orbits_skipped: 0,
        internal: assert_internal.then(InternalChecks::default),
    };

    if inst.variant == VTestVariant::Wbig && !inst.t.is_integer() {
        // Targeted family first: x = 1/max(B,C), N = q^f. (The proof
        // normalizes m so that the first block is the larger one.)
        let big = inst.b.max(inst.c);
        let x = QmodZ::new(1, big);
        let mut n_coef = 1i64;
        for _ in 0..inst.m.max(inst.n - inst.m) {
            if margin(inst, &ev, n_coef, x) < Ratio::from_integer(0) {
                report.verdict = Verdict::Fails;
                report.counterexample = Some(Witness { n_coef, x });
                report.pairs_checked = 1;
                return Ok(report);
            }
            n_coef *= inst.q as i64;
        }
    }

    let zero = Ratio::from_integer(0);
    let xs = x_scan_order(inst.modulus);
    match inst.variant {
        VTestVariant::TauTrivial => {
            for &x in &xs {
                if x.is_integer() {
                    continue;
                }
                if !is_canonical_x(inst.p, x) {
                    report.orbits_skipped += 1;
                    continue;
                }
                report.pairs_checked += 1;
                if margin(inst, &ev, 1, x) < zero {
                    report.verdict = Verdict::Fails;
                    report.counterexample = Some(Witness { n_coef: 1, x });
                    return Ok(report);
                }
            }
        }
        _ => {
            // With trivial t the inequality does not depend on N.
            let ns = if inst.t.is_integer() { vec![1] } else { units(inst.modulus) };
            for &n_coef in &ns {
                if let Some(stats) = report.internal.as_mut() {
                    internal_identities(inst, &ev, n_coef, stats);
                }
                for &x in &xs {
                    let canonical = if inst.t.is_integer() {
                        is_canonical_x(inst.p, x)
                    } else {
                        is_canonical(inst.p, inst.modulus, n_coef, x)
                    };
                    if !canonical {
                        report.orbits_skipped += 1;
                        continue;
                    }
                    report.pairs_checked += 1;
                    if margin(inst, &ev, n_coef, x) < zero {
                        report.verdict = Verdict::Fails;
                        report.counterexample = Some(Witness { n_coef, x });
                        return Ok(report);
                    }
                }
            }
        }
    }

    if let Some(stats) = report.internal {
        // The identities are consequences of a fully-holding inequality; a
        // failure there on a HOLDS run would be a real contradiction.
        if report.verdict == Verdict::Holds {
            assert_eq!(stats.checked, stats.holds, "internal identity failed on a HOLDS run");
        }
    }
    Ok(report)
}

/// Convenience wrappers matching the four variants.
pub fn vtest_w1(
    q: u32,
    n: u32,
    t: QmodZ,
    s: i64,
    modulus: i64,
    reduced: bool,
    assert_internal: bool,
) -> Result<VTestReport> {
    let inst = if reduced {
        VTestInstance::w1_reduced(q, n, t, s, modulus)?
    } else {
        VTestInstance::w1(q, n, t, s, modulus)?
    };
    run_vtest(&inst, assert_internal)
}

pub fn vtest_wbig(q: u32, n: u32, m: u32, t: QmodZ, modulus: i64) -> Result<VTestReport> {
    run_vtest(&VTestInstance::wbig(q, n, m, t, modulus)?, false)
}

pub fn vtest_tau_trivial(q: u32, n: u32, m: u32, modulus: i64) -> Result<VTestReport> {
    run_vtest(&VTestInstance::tau_trivial(q, n, m, modulus)?, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: u32, num: i64, den: i64) -> Ratio<i64> {
        kubert_v(p, QmodZ::new(num, den)).unwrap()
    }

    #[test]
    fn v_basic_values() {
        assert_eq!(v(2, 0, 1), Ratio::from_integer(0));
        assert_eq!(v(2, 1, 15), Ratio::new(1, 4));
        assert_eq!(v(2, 1, 7), Ratio::new(1, 3));
        assert_eq!(v(2, 6, 7), Ratio::new(2, 3));
        assert_eq!(v(2, 1, 3), Ratio::new(1, 2));
        assert_eq!(v(3, 1, 2), Ratio::new(1, 2));
        assert!(kubert_v(2, QmodZ::new(1, 6)).is_err());
        // V(1/A) = 1/n for A = (q^n-1)/(q-1)
        for (q, n) in [(2u32, 3u32), (2, 4), (3, 3), (3, 4), (4, 3), (4, 4)] {
            let (p, _) = prime_power(q).unwrap();
            let a = ((q as i64).pow(n) - 1) / (q as i64 - 1);
            assert_eq!(v(p, 1, a), Ratio::new(1, n as i64), "q={q} n={n}");
        }
    }

    #[test]
    fn v_properties_small_range() {
        for p in [2u32, 3, 5] {
            for den in 2..200i64 {
                if den % p as i64 == 0 {
                    continue;
                }
                let table = v_table(p, den).unwrap();
                for num in 1..den {
                    let x = QmodZ::new(num, den);
                    let vx = table[num as usize];
                    assert_eq!(vx, kubert_v(p, x).unwrap());
                    assert_eq!(vx + table[(den - num) as usize], Ratio::from_integer(1));
                    assert_eq!(table[(num * p as i64 % den) as usize], vx);
                    assert!(vx > Ratio::from_integer(0));
                }
            }
        }
    }

    #[test]
    fn tau_trivial_holds_with_frozen_counts() {
        let r = vtest_tau_trivial(2, 3, 1, 7).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        let r = vtest_tau_trivial(2, 3, 1, 21).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!((r.pairs_checked, r.orbits_skipped), (5, 15));
        let r = vtest_tau_trivial(3, 3, 1, 104).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!((r.pairs_checked, r.orbits_skipped), (24, 79));
        // stability under doubling the modulus
        assert_eq!(vtest_tau_trivial(2, 3, 1, 63).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn tau_trivial_term_values_at_one_seventh() {
        // q=2, n=3, m=1 at x = 1/7: 0 + 2/3 + 1/3 = 1
        assert_eq!(v(2, 7, 7), Ratio::from_integer(0));
        assert_eq!(v(2, -1, 7), Ratio::new(2, 3));
        assert_eq!(v(2, -3, 7), Ratio::new(1, 3));
    }

    #[test]
    fn tau_trivial_fails_for_non_coprime_blocks() {
        // gcd(m, n) > 1 admits x with Ax, Bx, Cx all integral
        let r = vtest_tau_trivial(2, 4, 2, 15).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.counterexample.unwrap().x, QmodZ::new(1, 3));
        let r = vtest_tau_trivial(3, 4, 2, 80).unwrap();
        assert_eq!(r.counterexample.unwrap().x, QmodZ::new(1, 2));
    }

    #[test]
    fn minimal_levels() {
        assert_eq!(VTestInstance::minimal_tau_level(2, 3, 1), 21);
        assert_eq!(VTestInstance::minimal_tau_level(3, 3, 1), 104);
        assert_eq!(VTestInstance::minimal_tau_level(2, 4, 1), 105);
        assert_eq!(VTestInstance::minimal_tau_level(4, 4, 1), 5355);
    }

    #[test]
    fn w1_first_witnesses() {
        // q=2, n=4, modulus 105: first witness in scan order
        let r = vtest_w1(2, 4, QmodZ::new(1, 7), 5, 105, false, false).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.counterexample.unwrap(), Witness { n_coef: 1, x: QmodZ::new(1, 3) });
        let r = vtest_w1(2, 4, QmodZ::new(3, 7), 5, 105, false, false).unwrap();
        assert_eq!(r.counterexample.unwrap(), Witness { n_coef: 1, x: QmodZ::new(1, 5) });
        let r = vtest_w1(2, 4, QmodZ::new(1, 7), 10, 105, false, false).unwrap();
        assert_eq!(r.counterexample.unwrap(), Witness { n_coef: 1, x: QmodZ::new(2, 3) });
    }

    #[test]
    fn w1_margin_at_named_witness() {
        // (N,x) = (1, 1/15) at t=1/7, s=5: LHS = 11/6, full RHS = 59/28,
        // reduced RHS = 25/12; both margins negative
        let inst = VTestInstance::w1(2, 4, QmodZ::new(1, 7), 5, 105).unwrap();
        let ev = VEval::new(&inst).unwrap();
        let x = QmodZ::new(1, 15);
        assert_eq!(margin(&inst, &ev, 1, x), Ratio::new(11, 6) - Ratio::new(59, 28));
        let inst = VTestInstance::w1_reduced(2, 4, QmodZ::new(1, 7), 5, 105).unwrap();
        let ev = VEval::new(&inst).unwrap();
        assert_eq!(margin(&inst, &ev, 1, x), Ratio::new(11, 6) - Ratio::new(25, 12));
    }

    #[test]
    fn w1_rejects_bad_params() {
        assert!(VTestInstance::w1(2, 4, QmodZ::ZERO, 5, 105).is_err());
        assert!(VTestInstance::w1(2, 4, QmodZ::new(1, 5), 5, 105).is_err());
        assert!(VTestInstance::w1(2, 4, QmodZ::new(1, 7), 0, 105).is_err());
        assert!(VTestInstance::w1(2, 4, QmodZ::new(1, 7), 15, 105).is_err());
        assert!(VTestInstance::w1(2, 4, QmodZ::new(1, 7), 5, 35).is_err());
    }

    #[test]
    fn wbig_witnesses() {
        // q=2, n=5, m=2: the targeted family hits at N=1, x=1/7
        for j in [1i64, 2, 7, 11] {
            let r = vtest_wbig(2, 5, 2, QmodZ::new(j, 15), 105).unwrap();
            assert_eq!(r.verdict, Verdict::Fails);
            assert_eq!(r.counterexample.unwrap(), Witness { n_coef: 1, x: QmodZ::new(1, 7) });
        }
        // q=3, n=4, m=2 with B=C=4: targeted x = 1/4
        let r = vtest_wbig(3, 4, 2, QmodZ::new(1, 13), 52).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(r.counterexample.unwrap().x, QmodZ::new(1, 4));
        // trivial t holds
        let r = vtest_wbig(2, 5, 2, QmodZ::ZERO, 21).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn internal_identities_counted() {
        let r = vtest_w1(2, 4, QmodZ::new(1, 7), 5, 105, false, true).unwrap();
        let stats = r.internal.unwrap();
        assert!(stats.checked > 0);
        // FAILS run: the identities are merely reported
        assert_eq!(r.verdict, Verdict::Fails);
    }
}
