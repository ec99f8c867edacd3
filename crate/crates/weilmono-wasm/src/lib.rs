//! Browser bindings for three interactive operations: Kubert V evaluation,
//! Singer-power Weil spectra, and the trivial-tau V-test. Each function
//! takes plain integers and returns a JSON string, so the page needs no
//! serializer glue. Off wasm32 this builds as an ordinary rlib and the same
//! functions are unit-tested natively.

use serde_json::json;

use weilmono::kubert::{kubert_v, run_vtest, VTestInstance, Verdict};
use weilmono::weil::{singer_element, weil_spectrum, weil_trace};
use weilmono::QmodZ;

#[cfg(target_arch = "wasm32")]
use wasm_bindgen::prelude::wasm_bindgen;

fn err(msg: impl ToString) -> String {
    json!({ "ok": false, "error": msg.to_string() }).to_string()
}

/// Interactive evaluation stays responsive in the browser tab.
const SPECTRUM_CAP: i64 = 1 << 12;
const LEVEL_CAP: i64 = 50_000;

/// V(num/den) at the prime p, as an exact fraction, together with the
/// p-orbit of the argument that the average runs over.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn kubert_v_json(p: u32, num: i64, den: i64) -> String {
    if den == 0 {
        return err("denominator must be nonzero");
    }
    if den.abs() > LEVEL_CAP {
        return err(format!("denominator capped at {LEVEL_CAP} for the demo"));
    }
    let x = QmodZ::new(num, den);
    let v = match kubert_v(p, x) {
        Ok(v) => v,
        Err(e) => return err(e),
    };
    let mut orbit = Vec::new();
    let mut y = x;
    loop {
        orbit.push(y.to_string());
        y = y.mul_int(p as i64);
        if y == x || orbit.len() > 64 {
            break;
        }
    }
    json!({
        "ok": true,
        "p": p,
        "x": x.to_string(),
        "value": format!("{}/{}", v.numer(), v.denom()),
        "orbit": orbit,
    })
    .to_string()
}

/// Spectrum of the a-th Singer power on the j-th Weil summand: sorted
/// exponent/multiplicity pairs plus the exact trace.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn singer_spectrum_json(n: u32, q: u32, a: i64, j: u32) -> String {
    if n == 0 || n > 8 {
        return err("rank must be between 1 and 8");
    }
    match (q as i64).checked_pow(n) {
        Some(size) if size <= SPECTRUM_CAP => {}
        _ => return err(format!("q^n capped at {SPECTRUM_CAP} for the demo")),
    }
    let g = match singer_element(n, q, a) {
        Ok(g) => g,
        Err(e) => return err(e),
    };
    let spectrum = match weil_spectrum(&g, j) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let trace = match weil_trace(&g, j) {
        Ok(t) => t,
        Err(e) => return err(e),
    };
    let entries: Vec<_> = spectrum
        .entries()
        .map(|(exp, mult)| json!({ "exponent": exp.to_string(), "multiplicity": mult }))
        .collect();
    json!({
        "ok": true,
        "n": n,
        "q": q,
        "a": a,
        "j": j,
        "entries": entries,
        "total": spectrum.total(),
        "max_multiplicity": spectrum.max_multiplicity(),
        "trace": trace.to_string(),
    })
    .to_string()
}

/// The trivial-tau inequality scan at the minimal level for the block shape
/// (q, n, m): verdict, witness if any, and the scan size.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn tau_trivial_json(q: u32, n: u32, m: u32) -> String {
    if n < 2 || m == 0 || m >= n {
        return err("need 1 <= m <= n-1 and n >= 2");
    }
    if (q as i64).checked_pow(n).is_none_or(|s| s > SPECTRUM_CAP) {
        return err(format!("q^n capped at {SPECTRUM_CAP} for the demo"));
    }
    let level = VTestInstance::minimal_tau_level(q, n, m);
    if level > LEVEL_CAP {
        return err(format!("minimal level {level} over the demo cap {LEVEL_CAP}"));
    }
    let inst = match VTestInstance::tau_trivial(q, n, m, level) {
        Ok(i) => i,
        Err(e) => return err(e),
    };
    let report = match run_vtest(&inst, false) {
        Ok(r) => r,
        Err(e) => return err(e),
    };
    let witness = report
        .counterexample
        .map(|w| json!({ "N": w.n_coef, "x": w.x.to_string() }));
    json!({
        "ok": true,
        "q": q,
        "n": n,
        "m": m,
        "level": level,
        "verdict": if report.verdict == Verdict::Holds { "HOLDS" } else { "FAILS" },
        "witness": witness,
        "pairs_checked": report.pairs_checked,
        "orbits_skipped": report.orbits_skipped,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn v_value_and_orbit() {
        let v = parse(&kubert_v_json(2, 1, 15));
        assert_eq!(v["ok"], true);
        assert_eq!(v["value"], "1/4");
        assert_eq!(v["orbit"].as_array().unwrap().len(), 4);
        let bad = parse(&kubert_v_json(2, 1, 6));
        assert_eq!(bad["ok"], false);
    }

    #[test]
    fn singer_spectrum_shape() {
        let v = parse(&singer_spectrum_json(3, 2, 1, 0));
        assert_eq!(v["ok"], true);
        assert_eq!(v["entries"].as_array().unwrap().len(), 7);
        assert_eq!(v["max_multiplicity"], 1);
        assert_eq!(v["trace"], "0");
        let capped = parse(&singer_spectrum_json(8, 5, 1, 0));
        assert_eq!(capped["ok"], false);
    }

    #[test]
    fn tau_trivial_verdicts() {
        let holds = parse(&tau_trivial_json(2, 3, 1));
        assert_eq!(holds["verdict"], "HOLDS");
        assert_eq!(holds["level"], 21);
        assert!(holds["witness"].is_null());
        let fails = parse(&tau_trivial_json(2, 4, 2));
        assert_eq!(fails["verdict"], "FAILS");
        assert_eq!(fails["witness"]["x"], "1/3");
    }
}
