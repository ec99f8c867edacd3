use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::cycint::{cyc_sum, CycInt};
use crate::field::{EmbeddingMap, FieldTable, FqElem};
use crate::kubert::prime_power;
use crate::qmodz::QmodZ;
use crate::{Error, Result};

/// Enumeration budget: brute-force class enumeration loops over all q^(n^2)
/// candidate matrices, so both the module size and the search space are
/// capped.
pub(crate) const MODULE_BUDGET: u64 = 243;
pub(crate) const ENUM_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct GLElement {
    field: FieldTable,
    n: usize,
    /// Row-major; acts on column vectors.
    entries: Vec<FqElem>,
}

fn det_of(field: &FieldTable, n: usize, entries: &[FqElem]) -> FqElem {
    let mut m = entries.to_vec();
    let mut det = FqElem::ONE;
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r * n + col].is_zero()) {
            Some(r) => r,
            None => return FqElem::Zero,
        };
        if pivot != col {
            for j in 0..n {
                m.swap(pivot * n + j, col * n + j);
            }
            det = field.neg(det);
        }
        let p = m[col * n + col];
        det = field.mul(det, p);
        let pinv = field.inv(p).unwrap();
        for r in col + 1..n {
            let factor = field.mul(m[r * n + col], pinv);
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let sub = field.mul(factor, m[col * n + j]);
                m[r * n + j] = field.sub(m[r * n + j], sub);
            }
        }
    }
    det
}

/// Characteristic polynomial, monic, ascending coefficients, length n+1.
/// Permutation expansion of det(xI - M); n stays tiny here.
fn charpoly_of(field: &FieldTable, n: usize, entries: &[FqElem]) -> Vec<FqElem> {
    let mut result = vec![FqElem::Zero; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        // constant factors -m[i][perm[i]] off the diagonal, (x - m[i][i]) on it
        let mut constant = FqElem::ONE;
        let mut diag = Vec::new();
        for i in 0..n {
            if perm[i] == i {
                diag.push(entries[i * n + i]);
            } else {
                constant = field.mul(constant, field.neg(entries[i * n + perm[i]]));
            }
        }
        if inversions % 2 == 1 {
            constant = field.neg(constant);
        }
        if !constant.is_zero() {
            let mut poly = vec![constant];
            for d in diag {
                // multiply by (x - d)
                let mut next = vec![FqElem::Zero; poly.len() + 1];
                for (k, &c) in poly.iter().enumerate() {
                    next[k + 1] = field.add(next[k + 1], c);
                    next[k] = field.sub(next[k], field.mul(c, d));
                }
                poly = next;
            }
            for (k, &c) in poly.iter().enumerate() {
                result[k] = field.add(result[k], c);
            }
        }
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    result
}

impl GLElement {
    pub fn new(field: FieldTable, n: usize, entries: Vec<FqElem>) -> Result<GLElement> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::BadParams(format!(
                "expected {n}x{n} entries, got {}",
                entries.len()
            )));
        }
        if det_of(&field, n, &entries).is_zero() {
            return Err(Error::BadParams("singular matrix".into()));
        }
        Ok(GLElement { field, n, entries })
    }

    pub fn identity(field: FieldTable, n: usize) -> GLElement {
        let mut entries = vec![FqElem::Zero; n * n];
        for i in 0..n {
            entries[i * n + i] = FqElem::ONE;
        }
        GLElement { field, n, entries }
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> FqElem {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[FqElem] {
        &self.entries
    }

    pub fn mul(&self, other: &GLElement) -> GLElement {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let f = &self.field;
        let mut entries = vec![FqElem::Zero; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = f.mul(a, other.entries[k * n + j]);
                    entries[i * n + j] = f.add(entries[i * n + j], prod);
                }
            }
        }
        GLElement { field: self.field.clone(), n, entries }
    }

    pub fn apply(&self, v: &[FqElem]) -> Vec<FqElem> {
        let n = self.n;
        let f = &self.field;
        (0..n)
            .map(|i| {
                let mut acc = FqElem::Zero;
                for j in 0..n {
                    acc = f.add(acc, f.mul(self.entries[i * n + j], v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u64) -> GLElement {
        let mut acc = GLElement::identity(self.field.clone(), self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(idx, &e)| e == if idx % (self.n + 1) == 0 { FqElem::ONE } else { FqElem::Zero })
    }

    pub fn order(&self) -> u64 {
        let mut g = self.clone();
        for k in 1..=10_000_000u64 {
            if g.is_identity() {
                return k;
            }
            g = g.mul(self);
        }
        panic!("order exceeds cap");
    }

    pub fn det(&self) -> FqElem {
        det_of(&self.field, self.n, &self.entries)
    }

    pub fn charpoly(&self) -> Vec<FqElem> {
        charpoly_of(&self.field, self.n, &self.entries)
    }
}

fn vec_code(field: &FieldTable, v: &[FqElem]) -> u32 {
    v.iter().fold(0, |acc, &x| acc * field.order() + field.code(x))
}

fn vec_decode(field: &FieldTable, n: usize, code: u32) -> Vec<FqElem> {
    let q = field.order();
    let mut v = vec![FqElem::Zero; n];
    let mut c = code;
    for i in (0..n).rev() {
        v[i] = field.from_code(c % q);
        c /= q;
    }
    v
}

/// Per-line bookkeeping: each nonzero vector is alpha^k times the
/// lexicographically smallest vector on its line.
struct LineTable {
    /// nonzero vector code -> index of its line representative in `reps`
    line_of: Vec<u32>,
    /// nonzero vector code -> k with v = alpha^k * rep
    alpha_log: Vec<u32>,
    /// representative codes, ascending
    reps: Vec<u32>,
}

impl LineTable {
    fn new(field: &FieldTable, n: usize) -> LineTable {
        let q = field.order() as u64;
        let total = q.pow(n as u32) as usize;
        let mut line_of = vec![u32::MAX; total];
        let mut alpha_log = vec![0u32; total];
        let mut reps = Vec::new();
        let alpha = field.generator();
        for code in 1..total as u32 {
            if line_of[code as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(code);
            let mut v = vec_decode(field, n, code);
            for k in 0..field.units() {
                let c = vec_code(field, &v);
                line_of[c as usize] = idx;
                alpha_log[c as usize] = k;
                for e in v.iter_mut() {
                    *e = field.mul(*e, alpha);
                }
            }
        }
        LineTable { line_of, alpha_log, reps }
    }

    fn decompose(&self, code: u32) -> (usize, u32) {
        (self.line_of[code as usize] as usize, self.alpha_log[code as usize])
    }
}

#[derive(Clone, Debug)]
pub struct OrbitData {
    pub rep: Vec<FqElem>,
    pub s: u64,
    pub t: u32,
    pub members: u64,
}

pub(crate) fn check_budget(q: u32, n: usize, cap: u64) -> Result<()> {
    let total = (q as u64).checked_pow(n as u32);
    match total {
        Some(t) if t <= cap => Ok(()),
        _ => Err(Error::BadParams(format!(
            "q^n = {q}^{n} exceeds the enumeration budget"
        ))),
    }
}

/// Partition the nonzero vectors into classes v ~ alpha^i g^l v. For each
/// class: s is minimal with g^s v scalar to v, t the scalar's alpha-log.
pub fn orbit_decompose(g: &GLElement) -> Result<Vec<OrbitData>> {
    let field = g.field();
    let n = g.n();
    check_budget(field.order(), n, 1 << 20)?;
    let lines = LineTable::new(field, n);
    let mut seen = vec![false; lines.reps.len()];
    let mut orbits = Vec::new();
    for (idx, &rep_code) in lines.reps.iter().enumerate() {
        if seen[idx] {
            continue;
        }
        let rep = vec_decode(field, n, rep_code);
        let mut v = rep.clone();
        let mut s = 0u64;
        let t;
        loop {
            v = g.apply(&v);
            s += 1;
            let (li, k) = lines.decompose(vec_code(field, &v));
            seen[li] = true;
            if li == idx {
                t = k;
                break;
            }
        }
        orbits.push(OrbitData { rep, s, t, members: s * field.units() as u64 });
    }
    Ok(orbits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumMultiset {
    entries: BTreeMap<QmodZ, u32>,
}

impl SpectrumMultiset {
    pub fn entries(&self) -> impl Iterator<Item = (QmodZ, u32)> + '_ {
        self.entries.iter().map(|(&e, &m)| (e, m))
    }

    pub fn multiplicity(&self, e: QmodZ) -> u32 {
        self.entries.get(&e).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().map(|&m| m as u64).sum()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.entries.values().copied().max().unwrap_or(0)
    }

    pub fn exponents(&self) -> Vec<QmodZ> {
        self.entries.keys().copied().collect()
    }
}

impl Serialize for SpectrumMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            exp: QmodZ,
            mult: u32,
        }
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (&exp, &mult) in &self.entries {
            seq.serialize_element(&Entry { exp, mult })?;
        }
        seq.end()
    }
}

/// Eigenvalue exponents on the j-th summand: each class contributes the
/// s-th roots of lambda^(t*j), i.e. exponents (tj/(q-1) + k)/s.
pub fn weil_spectrum(g: &GLElement, j: u32) -> Result<SpectrumMultiset> {
    let units = g.field().units();
    if j >= units {
        return Err(Error::BadParams(format!("j={j} out of range mod {units}")));
    }
    let mut entries = BTreeMap::new();
    for orbit in orbit_decompose(g)? {
        let base = QmodZ::new((orbit.t * j) as i64, units as i64);
        for k in 0..orbit.s {
            *entries.entry(base.shift_div(k as i64, orbit.s as i64)).or_insert(0) += 1;
        }
    }
    Ok(SpectrumMultiset { entries })
}

/// Trace on the j-th summand. Only classes with s = 1 contribute: the s-th
/// roots of any unit root sum to zero for s > 1.
pub fn weil_trace(g: &GLElement, j: u32) -> Result<CycInt> {
    let units = g.field().units();
    if j >= units {
        return Err(Error::BadParams(format!("j={j} out of range mod {units}")));
    }
    let exps: Vec<QmodZ> = orbit_decompose(g)?
        .iter()
        .filter(|o| o.s == 1)
        .map(|o| QmodZ::new((o.t * j) as i64, units as i64))
        .collect();
    Ok(cyc_sum(&exps))
}

/// Number of lines fixed by g (= trace on the full j=0 summand); the value
/// on its nontrivial complement is this minus one.
pub fn fixed_line_count(g: &GLElement) -> Result<u64> {
    Ok(orbit_decompose(g)?.iter().filter(|o| o.s == 1).count() as u64)
}

/// Number of vectors fixed by g, the zero vector included.
pub fn fixed_vector_count(g: &GLElement) -> Result<u64> {
    let field = g.field();
    let n = g.n();
    check_budget(field.order(), n, 1 << 20)?;
    let q = field.order() as u64;
    let mut count = 0;
    for code in 0..q.pow(n as u32) as u32 {
        let v = vec_decode(field, n, code);
        if g.apply(&v) == v {
            count += 1;
        }
    }
    Ok(count)
}

/// Generator of the cyclic subgroup: the a-th power of the multiplication
/// action of the canonical generator of F_{q^n} on itself, written in the
/// power basis over F_q.
pub fn singer_element(n: u32, q: u32, a: i64) -> Result<GLElement> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::BadParams(format!("q={q} is not a prime power")))?;
    let fq = FieldTable::new(p, e)?;
    let big = FieldTable::new(p, e * n)?;
    let n = n as usize;
    // minimal polynomial over F_q of the big field's generator
    let minpoly: Vec<FqElem> = if e == 1 {
        big.modulus().iter().map(|&c| fq.from_int(c as i64)).collect()
    } else {
        let gamma = big.generator();
        let mut poly = vec![FqElem::ONE];
        let mut root = gamma;
        for _ in 0..n {
            // multiply by (X - root)
            let mut next = vec![FqElem::Zero; poly.len() + 1];
            for (k, &c) in poly.iter().enumerate() {
                next[k + 1] = big.add(next[k + 1], c);
                next[k] = big.sub(next[k], big.mul(c, root));
            }
            poly = next;
            root = big.pow(root, q as i64);
        }
        debug_assert_eq!(root, gamma);
        let emb = crate::field::embed(&fq, &big)?;
        poly.iter().map(|&c| pull_back(&fq, &emb, c)).collect::<Result<_>>()?
    };
    let mut entries = vec![FqElem::Zero; n * n];
    for i in 1..n {
        entries[i * n + (i - 1)] = FqElem::ONE;
    }
    for i in 0..n {
        entries[i * n + (n - 1)] = fq.neg(minpoly[i]);
    }
    let c = GLElement { field: fq, n, entries };
    Ok(c.pow(a.rem_euclid(big.units() as i64) as u64))
}

fn pull_back(sub: &FieldTable, emb: &EmbeddingMap, x: FqElem) -> Result<FqElem> {
    match x.log() {
        None => Ok(FqElem::Zero),
        Some(l) => {
            let stride = emb.stride();
            if l % stride != 0 {
                return Err(Error::BadParams("coefficient outside the subfield".into()));
            }
            Ok(sub.exp((l / stride) as i64))
        }
    }
}

/// Block-diagonal sum of two cyclic generators acting on F_{q^m} + F_{q^(n-m)}.
pub fn block_element(q: u32, n: u32, m: u32, b: i64, c: i64) -> Result<GLElement> {
    if m < 1 || m >= n {
        return Err(Error::BadParams(format!("need 1 <= m < n, got m={m} n={n}")));
    }
    let top = singer_element(m, q, b)?;
    let bottom = singer_element(n - m, q, c)?;
    let n = n as usize;
    let m = m as usize;
    let mut entries = vec![FqElem::Zero; n * n];
    for i in 0..m {
        for j in 0..m {
            entries[i * n + j] = top.entry(i, j);
        }
    }
    for i in 0..n - m {
        for j in 0..n - m {
            entries[(m + i) * n + (m + j)] = bottom.entry(i, j);
        }
    }
    Ok(GLElement { field: top.field.clone(), n, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum M2Type {
    #[serde(rename = "a")]
    SingerPower,
    #[serde(rename = "b")]
    SingerPowerSquare,
    #[serde(rename = "c")]
    BlockSum,
    #[serde(rename = "UNEXPECTED")]
    Unexpected,
}

#[derive(Clone, Debug)]
pub struct ClassifiedClass {
    pub rep: GLElement,
    pub order: u64,
    pub label: M2Type,
}

fn charpoly_key(field: &FieldTable, poly: &[FqElem]) -> Vec<u32> {
    poly.iter().map(|&c| field.code(c)).collect()
}

/// Expected charpolys, labeled. Insertion order encodes the tie-breaking
/// priority between overlapping types.
fn expected_types(n: u32, q: u32) -> Result<HashMap<Vec<u32>, M2Type>> {
    let qn = (q as i64).pow(n);
    let a_dim = (qn - 1) / (q as i64 - 1);
    let mut map = HashMap::new();
    let base = singer_element(n, q, 1)?;
    let fq = base.field().clone();
    let mut power = base.clone();
    let mut powers = vec![GLElement::identity(fq.clone(), n as usize)];
    for _ in 1..qn {
        powers.push(power.clone());
        power = power.mul(&base);
    }
    for a in 1..qn {
        if a.gcd(&a_dim) == 1 {
            let key = charpoly_key(&fq, &powers[a as usize].charpoly());
            map.entry(key).or_insert(M2Type::SingerPower);
        }
    }
    if a_dim % 2 == 0 {
        for a in 1..qn {
            if a.gcd(&a_dim) == 1 {
                let key = charpoly_key(&fq, &powers[(2 * a % qn) as usize].charpoly());
                map.entry(key).or_insert(M2Type::SingerPowerSquare);
            }
        }
    }
    for m in 1..n {
        if m.gcd(&n) != 1 {
            continue;
        }
        let bm = ((q as i64).pow(m) - 1) / (q as i64 - 1);
        let cm = ((q as i64).pow(n - m) - 1) / (q as i64 - 1);
        for b in 0..(q as i64).pow(m) - 1 {
            if b.gcd(&bm) != 1 {
                continue;
            }
            for c in 0..(q as i64).pow(n - m) - 1 {
                if c.gcd(&cm) != 1 {
                    continue;
                }
                let side = b * (n - m) as i64 - c * m as i64;
                if side.gcd(&(q as i64 - 1)) != 1 {
                    continue;
                }
                let g = block_element(q, n, m, b, c)?;
                let key = charpoly_key(&fq, &g.charpoly());
                map.entry(key).or_insert(M2Type::BlockSum);
            }
        }
    }
    Ok(map)
}

/// All classes of elements of order prime to p whose spectrum on the j-th
/// summand has no eigenvalue of multiplicity above 2, labeled by expected
/// type. Classes of such elements are determined by the characteristic
/// polynomial, so enumeration deduplicates on it.
pub fn classify_m2(n: u32, q: u32, j: u32) -> Result<Vec<ClassifiedClass>> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::BadParams(format!("q={q} is not a prime power")))?;
    if n < 3 {
        return Err(Error::BadParams(format!("need n >= 3, got {n}")));
    }
    check_budget(q, n as usize, MODULE_BUDGET)?;
    let cells = (n * n) as u64;
    if (q as u64).checked_pow(cells as u32).map_or(true, |t| t > ENUM_BUDGET) {
        return Err(Error::BadParams(format!(
            "q^(n^2) = {q}^{cells} exceeds the enumeration budget"
        )));
    }
    let field = FieldTable::new(p, e)?;
    let nu = n as usize;
    if j >= field.units() {
        return Err(Error::BadParams(format!("j={j} out of range mod {}", field.units())));
    }
    let labels = expected_types(n, q)?;
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    let mut out = Vec::new();
    let total = (q as u64).pow(cells as u32);
    let q64 = q as u64;
    for code in 0..total {
        let mut entries = vec![FqElem::Zero; nu * nu];
        let mut cc = code;
        for slot in (0..nu * nu).rev() {
            entries[slot] = field.from_code((cc % q64) as u32);
            cc /= q64;
        }
        if det_of(&field, nu, &entries).is_zero() {
            continue;
        }
        let key = charpoly_key(&field, &charpoly_of(&field, nu, &entries));
        if seen.contains_key(&key) {
            continue;
        }
        let g = GLElement { field: field.clone(), n: nu, entries };
        let order = g.order();
        if order % p as u64 == 0 {
            // p-singular elements share charpolys with p-regular ones;
            // keep looking for a p-regular representative
            continue;
        }
        seen.insert(key.clone(), ());
        let mut spectrum = weil_spectrum(&g, j)?;
        if j == 0 {
            // the j=0 module contains the trivial summand once; the
            // multiplicity condition applies to its complement
            let zero = QmodZ::ZERO;
            if let Some(m) = spectrum.entries.get_mut(&zero) {
                if *m == 1 {
                    spectrum.entries.remove(&zero);
                } else {
                    *m -= 1;
                }
            }
        }
        if spectrum.max_multiplicity() <= 2 {
            let label = labels.get(&key).copied().unwrap_or(M2Type::Unexpected);
            out.push(ClassifiedClass { rep: g, order, label });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleReport {
    pub span_count: u64,
    pub expected_count: u64,
    pub cycle_lengths: Vec<u64>,
    pub single_cycle: bool,
}

/// F_q-coordinates of a small extension field in the power basis of its
/// generator, found by enumerating all linear combinations.
struct SubfieldCoords {
    dim: usize,
    /// element code -> coordinate codes over F_q
    coords: Vec<Vec<u32>>,
}

impl SubfieldCoords {
    fn new(fq: &FieldTable, ext: &FieldTable) -> Result<SubfieldCoords> {
        let dim = (ext.e() / fq.e()) as usize;
        let emb = crate::field::embed(fq, ext)?;
        let q = fq.order();
        let total = ext.order() as u64;
        let mut coords = vec![Vec::new(); total as usize];
        let gamma = ext.generator();
        let mut combo = vec![0u32; dim];
        loop {
            let mut acc = FqElem::Zero;
            let mut basis = FqElem::ONE;
            for &a in combo.iter() {
                let scalar = emb.apply(fq.from_code(a));
                acc = ext.add(acc, ext.mul(scalar, basis));
                basis = ext.mul(basis, gamma);
            }
            let code = ext.code(acc);
            if !coords[code as usize].is_empty() && code != 0 {
                return Err(Error::BadParams("power basis is degenerate".into()));
            }
            coords[code as usize] = combo.clone();
            // odometer
            let mut i = 0;
            loop {
                if i == dim {
                    let table = SubfieldCoords { dim, coords };
                    return table.validated();
                }
                combo[i] += 1;
                if combo[i] < q {
                    break;
                }
                combo[i] = 0;
                i += 1;
            }
        }
    }

    fn validated(self) -> Result<SubfieldCoords> {
        if self.coords.iter().any(|c| c.len() != self.dim) {
            return Err(Error::BadParams("power basis is degenerate".into()));
        }
        Ok(self)
    }

    fn of(&self, x: FqElem, ext: &FieldTable) -> &[u32] {
        &self.coords[ext.code(x) as usize]
    }
}

/// Verify that the distinguished spanning vectors of the wild subspace are
/// cyclically permuted by the block element. The vectors are indexed by a
/// nontrivial additive character of F_{q^m} and a nonzero y in F_{q^(n-m)};
/// their coefficient vectors over the standard line basis are computed
/// exactly, the block element is applied as a matrix on the j-th summand,
/// and the induced permutation of one-dimensional spans is reported.
pub fn cycle_check(q: u32, n: u32, m: u32, b: i64, c: i64, j: u32) -> Result<CycleReport> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::BadParams(format!("q={q} is not a prime power")))?;
    check_budget(q, n as usize, MODULE_BUDGET)?;
    if m < 1 || m >= n || m.gcd(&n) != 1 {
        return Err(Error::BadParams(format!("need 1 <= m < n coprime to n, got m={m} n={n}")));
    }
    let q64 = q as i64;
    let bm = (q64.pow(m) - 1) / (q64 - 1);
    let cm = (q64.pow(n - m) - 1) / (q64 - 1);
    if b.gcd(&bm) != 1 || c.gcd(&cm) != 1 {
        return Err(Error::BadParams("block exponents not coprime to block dimensions".into()));
    }
    if (b * (n - m) as i64 - c * m as i64).gcd(&(q64 - 1)) != 1 {
        return Err(Error::BadParams("determinant side condition fails".into()));
    }
    let fq = FieldTable::new(p, e)?;
    if j >= fq.units() {
        return Err(Error::BadParams(format!("j={j} out of range mod {}", fq.units())));
    }
    let km = FieldTable::new(p, e * m)?;
    let kc = FieldTable::new(p, e * (n - m))?;
    let km_coords = SubfieldCoords::new(&fq, &km)?;
    let kc_coords = SubfieldCoords::new(&fq, &kc)?;
    let h = block_element(q, n, m, b, c)?;
    let lines = LineTable::new(&fq, n as usize);
    let a_dim = lines.reps.len();
    let units = fq.units() as i64;

    // coefficient vector of the (u, y) spanning vector on the j-th summand
    let build = |u: FqElem, y: FqElem| -> Vec<CycInt> {
        let mut coeffs = vec![CycInt::zero(1); a_dim];
        let y_part: Vec<FqElem> =
            kc_coords.of(y, &kc).iter().map(|&cc| fq.from_code(cc)).collect();
        for xcode in 0..km.order() {
            let x = km.from_code(xcode);
            let mut v: Vec<FqElem> =
                km_coords.of(x, &km).iter().map(|&cc| fq.from_code(cc)).collect();
            v.extend_from_slice(&y_part);
            let (idx, k) = lines.decompose(vec_code(&fq, &v));
            let character = QmodZ::new(km.abs_trace(km.mul(u, x)) as i64, p as i64);
            let twist = QmodZ::new(k as i64 * j as i64, units);
            coeffs[idx] = coeffs[idx].add(&CycInt::root(character.add(twist)));
        }
        coeffs
    };

    let apply_h = |coeffs: &[CycInt]| -> Vec<CycInt> {
        let mut out = vec![CycInt::zero(1); a_dim];
        for (idx, &rep_code) in lines.reps.iter().enumerate() {
            if coeffs[idx].is_zero() {
                continue;
            }
            let w = h.apply(&vec_decode(&fq, n as usize, rep_code));
            let (idx2, k) = lines.decompose(vec_code(&fq, &w));
            let twist = CycInt::root(QmodZ::new(k as i64 * j as i64, units));
            out[idx2] = out[idx2].add(&coeffs[idx].mul(&twist));
        }
        out
    };

    let proportional = |a: &[CycInt], b: &[CycInt]| -> bool {
        let Some(pivot) = a.iter().position(|x| !x.is_zero()) else {
            return b.iter().all(|x| x.is_zero());
        };
        if b[pivot].is_zero() {
            return false;
        }
        (0..a_dim).all(|i| a[pivot].mul(&b[i]) == b[pivot].mul(&a[i]))
    };

    let mut vectors = Vec::new();
    for ucode in 1..km.order() {
        for ycode in 1..kc.order() {
            vectors.push(build(km.from_code(ucode), kc.from_code(ycode)));
        }
    }
    // group into one-dimensional spans
    let mut span_of = vec![usize::MAX; vectors.len()];
    let mut span_reps: Vec<usize> = Vec::new();
    for i in 0..vectors.len() {
        if span_of[i] != usize::MAX {
            continue;
        }
        let span = span_reps.len();
        span_reps.push(i);
        span_of[i] = span;
        for k in i + 1..vectors.len() {
            if span_of[k] == usize::MAX && proportional(&vectors[i], &vectors[k]) {
                span_of[k] = span;
            }
        }
    }
    let span_count = span_reps.len() as u64;
    let expected_count = ((q64.pow(m) - 1) * (q64.pow(n - m) - 1) / (q64 - 1)) as u64;

    // induced permutation of spans
    let mut perm = vec![usize::MAX; span_reps.len()];
    for (span, &vi) in span_reps.iter().enumerate() {
        let image = apply_h(&vectors[vi]);
        let target = span_reps
            .iter()
            .position(|&wi| proportional(&image, &vectors[wi]))
            .ok_or_else(|| Error::BadParams("image leaves the span set".into()))?;
        perm[span] = target;
    }
    let mut cycle_lengths = Vec::new();
    let mut visited = vec![false; perm.len()];
    for start in 0..perm.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0u64;
        let mut at = start;
        while !visited[at] {
            visited[at] = true;
            len += 1;
            at = perm[at];
        }
        cycle_lengths.push(len);
    }
    cycle_lengths.sort_unstable_by(|a, b| b.cmp(a));
    let single_cycle = cycle_lengths == [expected_count] && span_count == expected_count;
    Ok(CycleReport { span_count, expected_count, cycle_lengths, single_cycle })
}
