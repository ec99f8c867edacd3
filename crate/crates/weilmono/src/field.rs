use std::fmt;

use crate::qmodz::QmodZ;
use crate::{Error, Result};

/// Default cap on p^e. All acceptance-scale computations stay below 2^18;
/// the CLI can override via WEILMONO_CEILING.
pub const DEFAULT_CEILING: u64 = 1 << 24;

/// An element of F_{p^e}: zero, or the i-th power of the fixed generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FqElem {
    Zero,
    Unit(u32),
}

impl FqElem {
    pub const ONE: FqElem = FqElem::Unit(0);

    pub fn is_zero(&self) -> bool {
        matches!(self, FqElem::Zero)
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self) -> Option<u32> {
        match self {
            FqElem::Zero => None,
            FqElem::Unit(i) => Some(*i),
        }
    }
}

/// F_{p^e} as exp/log lookup tables over a fixed primitive modulus.
///
/// The generator g is the class of x; `exp[i]` is the packed base-p digit
/// code of g^i (digit k = coefficient of x^k), `log` inverts it. The modulus
/// is the lexicographically smallest primitive monic polynomial of degree e
/// (coefficients compared from the highest power down), so tables are
/// reproducible across runs and implementations.
#[derive(Clone)]
pub struct FieldTable {
    p: u32,
    e: u32,
    order: u32,
    /// Monic; modulus[k] = coefficient of x^k, length e+1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    /// Packed code -> exponent; entry for 0 is a sentinel.
    log: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldTable {
    pub fn new(p: u32, e: u32) -> Result<FieldTable> {
        FieldTable::with_ceiling(p, e, DEFAULT_CEILING)
    }

    pub fn with_ceiling(p: u32, e: u32, ceiling: u64) -> Result<FieldTable> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e < 1 {
            return Err(Error::BadDegree);
        }
        let order = (p as u64).checked_pow(e).filter(|&o| o <= ceiling).ok_or(
            Error::FieldTooLarge {
                p: p as u64,
                e,
                order: (p as u64).checked_pow(e).unwrap_or(u64::MAX),
                ceiling,
            },
        )?;
        let order = order as u32;

        // Candidate moduli in ascending packed-code order = lex order on
        // (c_{e-1}, ..., c_0). The generator walk doubles as the
        // primitivity test: x is primitive mod an irreducible modulus iff
        // its powers hit all order-1 nonzero codes before returning to 1.
        let units = (order - 1) as usize;
        for cand in 0..order {
            let mut modulus: Vec<u32> = (0..e).map(|k| digit(cand, p, k)).collect();
            modulus.push(1);
            if modulus[0] == 0 {
                continue; // x would not be a unit
            }
            if let Some((exp, log)) = generator_walk(p, e, order, &modulus) {
                debug_assert_eq!(exp.len(), units);
                return Ok(FieldTable { p, e, order, modulus, exp, log });
            }
        }
        unreachable!("a primitive polynomial of degree {e} exists over F_{p}");
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of units, p^e - 1.
    pub fn units(&self) -> u32 {
        self.order - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed multiplicative generator (the class of x).
    pub fn generator(&self) -> FqElem {
        if self.order == 2 {
            FqElem::ONE
        } else {
            FqElem::Unit(1)
        }
    }

    /// Packed digit code of an element (0 is zero).
    pub fn code(&self, a: FqElem) -> u32 {
        match a {
            FqElem::Zero => 0,
            FqElem::Unit(i) => self.exp[i as usize],
        }
    }

    /// Element from a packed digit code.
    pub fn from_code(&self, code: u32) -> FqElem {
        if code == 0 {
            FqElem::Zero
        } else {
            FqElem::Unit(self.log[code as usize])
        }
    }

    /// Element from a prime-field residue.
    pub fn from_int(&self, k: i64) -> FqElem {
        let r = k.rem_euclid(self.p as i64) as u32;
        self.from_code(r)
    }

    pub fn exp(&self, i: i64) -> FqElem {
        FqElem::Unit(i.rem_euclid(self.units() as i64) as u32)
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        match (a, b) {
            (FqElem::Unit(i), FqElem::Unit(j)) => {
                FqElem::Unit((i + j) % self.units())
            }
            _ => FqElem::Zero,
        }
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        match a {
            FqElem::Zero => Err(Error::ZeroArgument),
            FqElem::Unit(i) => Ok(self.exp(-(i as i64))),
        }
    }

    pub fn pow(&self, a: FqElem, k: i64) -> FqElem {
        match a {
            FqElem::Zero => {
                assert!(k > 0, "0^k undefined for k <= 0");
                FqElem::Zero
            }
            FqElem::Unit(i) => self.exp(i as i64 * k),
        }
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let code = self.code_add(self.code(a), self.code(b));
        self.from_code(code)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.p == 2 {
            return a;
        }
        match a {
            FqElem::Zero => FqElem::Zero,
            _ => {
                // -1 = g^((order-1)/2) in odd characteristic
                self.mul(a, FqElem::Unit(self.units() / 2))
            }
        }
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    /// Digitwise sum of packed codes (no carries across digits).
    fn code_add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        while a != 0 || b != 0 {
            out += ((a + b) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    /// Absolute trace to the prime field, as a residue in [0, p).
    pub fn abs_trace(&self, a: FqElem) -> u32 {
        let mut acc = FqElem::Zero;
        let mut cur = a;
        for _ in 0..self.e {
            acc = self.add(acc, cur);
            cur = match cur {
                FqElem::Zero => FqElem::Zero,
                _ => self.pow(cur, self.p as i64),
            };
        }
        let code = self.code(acc);
        debug_assert!(code < self.p);
        code
    }
}

fn digit(code: u32, p: u32, k: u32) -> u32 {
    (code / p.pow(k)) % p
}

/// Walk powers of x mod the candidate modulus, building exp/log on the fly.
/// Returns None unless the walk visits all order-1 nonzero codes and then
/// returns to 1 (which certifies both irreducibility and primitivity).
fn generator_walk(p: u32, e: u32, order: u32, modulus: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let units = (order - 1) as usize;
    let mut exp = Vec::with_capacity(units);
    let mut log = vec![u32::MAX; order as usize];
    // Polynomial residues as digit vectors of length e.
    let mut cur: Vec<u32> = vec![0; e as usize];
    cur[0] = 1;
    for i in 0..units {
        let code: u32 = cur
            .iter()
            .enumerate()
            .map(|(k, &c)| c * p.pow(k as u32))
            .sum();
        if code == 0 || log[code as usize] != u32::MAX {
            return None; // zero divisor or premature cycle
        }
        log[code as usize] = i as u32;
        exp.push(code);
        // cur *= x, then reduce by the monic modulus
        let lead = *cur.last().unwrap();
        for k in (1..e as usize).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if lead != 0 {
            for k in 0..e as usize {
                // subtract lead * modulus[k]
                let sub = (lead * modulus[k]) % p;
                cur[k] = (cur[k] + p - sub) % p;
            }
        }
    }
    // closure: x^(order-1) must be 1
    if cur.iter().enumerate().all(|(k, &c)| c == u32::from(k == 0)) {
        Some((exp, log))
    } else {
        None
    }
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTable(F_{}^{})", self.p, self.e)
    }
}

/// Ring embedding of a subfield: the sub-generator maps to the
/// sup-generator raised to (p^E - 1)/(p^e - 1).
pub struct EmbeddingMap {
    stride: u32,
    sup_units: u32,
}

impl EmbeddingMap {
    pub fn stride(&self) -> u32 {
        self.stride
    }

    pub fn apply(&self, a: FqElem) -> FqElem {
        match a {
            FqElem::Zero => FqElem::Zero,
            FqElem::Unit(i) => {
                FqElem::Unit(((i as u64 * self.stride as u64) % self.sup_units as u64) as u32)
            }
        }
    }
}

/// Canonical embedding of `sub` into `sup`.
///
/// Fails when the fields are not in a tower relation, and also when the
/// lex-minimal moduli of the two fields are tower-incompatible (the stride
/// map is multiplicative but not additive; e.g. F_8 into F_64). Every prime
/// subfield and every F_4-base tower is compatible.
pub fn embed(sub: &FieldTable, sup: &FieldTable) -> Result<EmbeddingMap> {
    if sub.p != sup.p || sup.e % sub.e != 0 {
        return Err(Error::NotASubfield {
            sub_p: sub.p as u64,
            sub_e: sub.e,
            sup_p: sup.p as u64,
            sup_e: sup.e,
        });
    }
    let stride = sup.units() / sub.units();
    let map = EmbeddingMap { stride, sup_units: sup.units() };
    // The map is a ring embedding iff the sub modulus annihilates the image
    // of the sub generator.
    let img = map.apply(sub.generator());
    let mut acc = FqElem::Zero;
    for &c in sub.modulus.iter().rev() {
        acc = sup.mul(acc, img);
        acc = sup.add(acc, sup.from_int(c as i64));
    }
    if !acc.is_zero() {
        return Err(Error::NoCanonicalEmbedding { p: sub.p as u64, sub_e: sub.e, sup_e: sup.e });
    }
    Ok(map)
}

/// Norm from K down to the base field: x ↦ x^((#K-1)/(q-1)).
pub fn norm(k: &FieldTable, base: &FieldTable, x: FqElem) -> Result<FqElem> {
    let emb = embed(base, k)?;
    match x {
        FqElem::Zero => Ok(FqElem::Zero),
        FqElem::Unit(i) => {
            let stride = emb.stride();
            debug_assert_eq!(i % 1, 0);
            let pow = k.pow(FqElem::Unit(i), stride as i64);
            // the result lies in the embedded subfield; pull it back
            let j = pow.log().unwrap();
            debug_assert_eq!(j % stride, 0);
            Ok(FqElem::Unit(j / stride))
        }
    }
}

/// Value of the multiplicative character with exponent `char_exp` (a
/// fraction with denominator dividing #K - 1) at a nonzero element, as a
/// root-of-unity exponent: exp_table(i) ↦ char_exp · i.
pub fn mult_char_value(k: &FieldTable, char_exp: QmodZ, x: FqElem) -> Result<QmodZ> {
    let units = k.units() as i64;
    if units % char_exp.den() != 0 {
        return Err(Error::BadCharacterOrder { den: char_exp.den(), units: units as u64 });
    }
    match x {
        FqElem::Zero => Err(Error::ZeroArgument),
        FqElem::Unit(i) => Ok(char_exp.mul_int(i as i64)),
    }
}
