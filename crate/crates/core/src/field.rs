//! Arithmetic in GF(p^n) with an explicit modulus.
//!
//! Elements are `u32` encodings: the base-`p` little-endian digits of the
//! encoding are the polynomial coefficients, so `sum c_i p^i` stands for
//! `sum c_i x^i`. Encoding 0 is the additive identity and 1 the
//! multiplicative identity. Multiplication goes through log/antilog tables
//! built once per field from its smallest primitive element.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted unless a caller raises the cap.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 16;

/// Addition tables are materialized up to this order.
const ADD_TABLE_MAX: u32 = 256;

// Little-endian, monic.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
];

/// A finite field GF(p^n). Cheap to clone; the tables are shared.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

struct Tables {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[k] = g^k` for `k < 2(q-1)` so products need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

impl Field {
    /// Builds GF(p^n). When `modulus` is omitted and `n > 1`, a default
    /// modulus is used (see [`Field::default_modulus`]). The modulus is
    /// ignored for prime fields.
    pub fn new(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_cap(p, n, modulus, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(p: u32, n: u32, modulus: Option<&[u32]>, cap: u64) -> Result<Self> {
        if !is_prime(u64::from(p)) {
            return Err(Error::NonPrimeCharacteristic(u64::from(p)));
        }
        if n == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        let order = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(u64::from(p)));
        let order = match order {
            Some(q) if q <= cap && q <= u64::from(u32::MAX) => q as u32,
            Some(q) => return Err(Error::UnsupportedSize { order: q, cap }),
            None => return Err(Error::UnsupportedSize { order: u64::MAX, cap }),
        };

        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            match modulus {
                Some(m) => {
                    if m.len() != n as usize + 1 {
                        return Err(Error::BadModulus(format!(
                            "expected {} coefficients for degree {n}, got {}",
                            n + 1,
                            m.len()
                        )));
                    }
                    if m[n as usize] != 1 {
                        return Err(Error::BadModulus("modulus must be monic".into()));
                    }
                    if let Some(&c) = m.iter().find(|&&c| c >= p) {
                        return Err(Error::BadModulus(format!("coefficient {c} not reduced mod {p}")));
                    }
                    if !is_irreducible(p, m) {
                        return Err(Error::ReducibleModulus(m.to_vec()));
                    }
                    m.to_vec()
                }
                None => Self::default_modulus(p, n),
            }
        };

        Ok(Field { inner: Arc::new(Tables::build(p, n, order, modulus)) })
    }

    /// Builds the field of order `q` with the default modulus.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::BadOrder(q))?;
        Self::new(p, n, None)
    }

    /// The built-in modulus for GF(4), GF(8), GF(9), GF(16) and GF(32);
    /// otherwise the irreducible monic polynomial of degree `n` whose
    /// lower coefficients have the smallest base-`p` encoding.
    pub fn default_modulus(p: u32, n: u32) -> Vec<u32> {
        if n == 1 {
            return vec![0, 1];
        }
        if let Some((_, _, m)) = DEFAULT_MODULI.iter().find(|(dp, dn, _)| *dp == p && *dn == n) {
            return m.to_vec();
        }
        let lower = u64::from(p).pow(n);
        (0..lower)
            .map(|code| {
                let mut m = digits_of(code, p, n as usize);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(p, m))
            .expect("an irreducible polynomial exists in every degree")
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.n
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, little-endian, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.inner.q
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.inner.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        self.check(value)?;
        Ok(FieldElement { field: self.clone(), value })
    }

    pub(crate) fn check(&self, value: u32) -> Result<()> {
        if self.contains(value) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { value: u64::from(value), order: self.inner.q })
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let t = &self.inner;
        if t.p == 2 {
            return a ^ b;
        }
        match &t.add {
            Some(table) => u32::from(table[(a * t.q + b) as usize]),
            None => add_digits(t.p, a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.inner;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &self.inner;
        let m = t.q - 1;
        Ok(t.exp[((m - t.log[a as usize]) % m) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents need a nonzero base.
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(Error::DivisionByZero),
            };
        }
        let t = &self.inner;
        let m = i64::from(t.q - 1);
        let k = (i64::from(t.log[a as usize]) * e.rem_euclid(m)).rem_euclid(m);
        Ok(t.exp[k as usize])
    }

    /// The nonzero element of smallest encoding with multiplicative order q-1.
    pub fn primitive_element(&self) -> u32 {
        self.inner.generator
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let m = self.inner.q - 1;
        Ok(m / gcd(self.inner.log[a as usize], m))
    }

    /// The unique `d` in `[0, q-1)` with `alpha^d = x`.
    pub fn discrete_log(&self, alpha: u32, x: u32) -> Result<u32> {
        if x == 0 {
            return Err(Error::LogOfZero);
        }
        self.check(x)?;
        self.check(alpha)?;
        if alpha == 0 || self.multiplicative_order(alpha)? != self.inner.q - 1 {
            return Err(Error::NonPrimitiveBase(alpha));
        }
        let m = u64::from(self.inner.q - 1);
        let la = u64::from(self.inner.log[alpha as usize]);
        let lx = u64::from(self.inner.log[x as usize]);
        let la_inv = mod_inverse(la, m).expect("primitive base has a log coprime to q-1");
        Ok(((lx * la_inv) % m) as u32)
    }

    /// Renders an encoding as a polynomial in `x`, e.g. `2x+1`.
    pub fn format_element(&self, a: u32) -> String {
        let t = &self.inner;
        if t.n == 1 {
            return a.to_string();
        }
        let coeffs = digits_of(u64::from(a), t.p, t.n as usize);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.n == other.inner.n
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.inner.p)
            .field("n", &self.inner.n)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

impl Tables {
    fn build(p: u32, n: u32, q: u32, modulus: Vec<u32>) -> Self {
        let slow = SlowArith { p, n: n as usize, modulus: &modulus };
        let generator = (1..q)
            .find(|&g| slow.order(g, q) == q - 1)
            .expect("the multiplicative group of a field is cyclic");

        let m = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * m.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..m {
            exp[k] = x;
            exp[k + m] = x;
            log[x as usize] = k as u32;
            x = slow.mul(x, generator);
        }

        let neg = (0..q).map(|a| neg_digits(p, a)).collect();
        let add = (p != 2 && q <= ADD_TABLE_MAX).then(|| {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = add_digits(p, a, b) as u16;
                }
            }
            table
        });

        Tables { p, n, q, modulus, generator, exp, log, neg, add }
    }
}

/// Polynomial arithmetic used only while building tables.
struct SlowArith<'a> {
    p: u32,
    n: usize,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = u64::from(self.p);
        let da = digits_of(u64::from(a), self.p, self.n);
        let db = digits_of(u64::from(b), self.p, self.n);
        let mut prod = vec![0u64; 2 * self.n];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % p;
            }
        }
        for i in (self.n..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for (j, &mj) in self.modulus.iter().enumerate() {
                let k = i - self.n + j;
                prod[k] = (prod[k] + (p - c) * u64::from(mj)) % p;
            }
        }
        pack_digits(prod[..self.n].iter().map(|&d| d as u32), self.p)
    }

    fn order(&self, g: u32, q: u32) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            if k >= q || x == 0 {
                return 0;
            }
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
}

fn digits_of(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let p = u64::from(p);
    (0..len)
        .map(|_| {
            let d = (code % p) as u32;
            code /= p;
            d
        })
        .collect()
}

fn pack_digits(digits: impl DoubleEndedIterator<Item = u32>, p: u32) -> u32 {
    digits.rev().fold(0, |acc, d| acc * p + d)
}

fn add_digits(p: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn neg_digits(p: u32, mut a: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `b` over Z_p.
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - c) * bj % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree up to `deg / 2`.
fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..u64::from(p).pow(d as u32) {
            let mut divisor = digits_of(code, p, d);
            divisor.push(1);
            if poly_rem(p, modulus, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
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

/// Splits `q = p^n` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut n = 0;
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p as u32, n))
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i64) as u64)
}

/// A field element bound to its field, with checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn with(&self, value: u32) -> Self {
        FieldElement { field: self.field.clone(), value }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        Ok(self.with(self.field.pow(self.value, e)?))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_element(self.value))
    }
}
