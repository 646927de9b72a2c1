//! Arithmetic in small finite fields `F_q`, `q = p^m <= 1024`.
//!
//! An element is an integer in `[0, q)`. Its base-`p` digits `d_0..d_{m-1}`
//! are the coefficients of `d_0 + d_1 a + ... + d_{m-1} a^{m-1}` in
//! `F_p[a] / (modulus)`. With the default `F_4` modulus `x^2 + x + 1` the
//! generator `a` (usually written omega) is the integer 2 and `a^2` is 3.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Raw field element value. Always `< q` for the field it is used with.
pub type Symbol = u16;

pub const MAX_ORDER: u64 = 1024;

// Tables are built up to this order; larger fields multiply on the fly.
const TABLE_ORDER: u32 = 256;

/// Default moduli, ascending coefficients `c_0..c_m`.
fn default_modulus(p: u32, m: u32) -> Option<&'static [u32]> {
    match (p, m) {
        (2, 2) => Some(&[1, 1, 1]),
        (2, 3) => Some(&[1, 1, 0, 1]),
        (3, 2) => Some(&[1, 0, 1]),
        (2, 4) => Some(&[1, 1, 0, 0, 1]),
        _ => None,
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    add_table: Option<Vec<Symbol>>,
    mul_table: Option<Vec<Symbol>>,
    inv_table: Vec<Symbol>,
}

/// A validated finite field. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.modulus {
            None => write!(f, "F_{}", self.inner.q),
            Some(md) => write!(f, "F_{}[{:?}]", self.inner.q, md),
        }
    }
}

impl Field {
    /// Builds `F_{p^m}`. `modulus` lists ascending coefficients `c_0..c_m`
    /// of a monic irreducible polynomial; it may be omitted for the
    /// built-in defaults (`F_4`, `F_8`, `F_9`, `F_16`) and must be omitted
    /// or trivial for prime fields.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge((p as u64).saturating_pow(m))),
        };
        let modulus = if m == 1 {
            if let Some(md) = modulus {
                if md.len() != 2 || md[1] != 1 || md[0] >= p {
                    return Err(Error::InvalidModulus(format!(
                        "prime field takes no modulus, got {md:?}"
                    )));
                }
            }
            None
        } else {
            let md: Vec<u32> = match modulus {
                Some(md) => md.to_vec(),
                None => default_modulus(p, m)
                    .ok_or(Error::MissingModulus { p, m })?
                    .to_vec(),
            };
            if md.len() != m as usize + 1 {
                return Err(Error::InvalidModulus(format!(
                    "expected {} coefficients, got {}",
                    m + 1,
                    md.len()
                )));
            }
            if md.iter().any(|&c| c >= p) {
                return Err(Error::InvalidModulus(format!("coefficient out of range in {md:?}")));
            }
            if md[m as usize] != 1 {
                return Err(Error::InvalidModulus(format!("{md:?} is not monic")));
            }
            if !is_irreducible(p, &md) {
                return Err(Error::ReducibleModulus(md, p));
            }
            Some(md)
        };

        let mut inner = Inner { p, m, q, modulus, add_table: None, mul_table: None, inv_table: Vec::new() };
        if q <= TABLE_ORDER {
            let qs = q as usize;
            let mut add = vec![0; qs * qs];
            let mut mul = vec![0; qs * qs];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * qs + b as usize] = raw_add(&inner, a, b);
                    mul[a as usize * qs + b as usize] = raw_mul(&inner, a, b);
                }
            }
            inner.add_table = Some(add);
            inner.mul_table = Some(mul);
        }
        let field = Field { inner: Arc::new(inner) };
        // a^(q-2) is the inverse in the multiplicative group of order q-1.
        let inv_table: Vec<Symbol> = (0..q)
            .map(|a| if a == 0 { 0 } else { field.pow(a as Symbol, (q - 2) as u64) })
            .collect();
        let mut inner = Arc::try_unwrap(field.inner).ok().expect("sole owner");
        inner.inv_table = inv_table;
        Ok(Field { inner: Arc::new(inner) })
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Field of order `q` with the default modulus.
    pub fn with_order(q: u32) -> Result<Field> {
        let p = (2..=q).find(|d| q % d == 0).ok_or_else(|| {
            Error::InvalidParameter(format!("{q} is not a prime power"))
        })?;
        let mut m = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            m += 1;
        }
        if r != 1 {
            return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
        }
        Field::new(p, m, None)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Ascending coefficients of the modulus, absent for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.inner.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if !self.contains(value) {
            return Err(Error::ElementOutOfRange { value, q: self.q() });
        }
        Ok(FieldElement { field: self.clone(), value: value as Symbol })
    }

    pub fn elements(&self) -> impl Iterator<Item = Symbol> {
        0..self.inner.q as Symbol
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        let inner = &*self.inner;
        match &inner.add_table {
            Some(t) => t[a as usize * inner.q as usize + b as usize],
            None => raw_add(inner, a as u32, b as u32),
        }
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        let inner = &*self.inner;
        match &inner.mul_table {
            Some(t) => t[a as usize * inner.q as usize + b as usize],
            None => raw_mul(inner, a as u32, b as u32),
        }
    }

    pub fn neg(&self, a: Symbol) -> Symbol {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        map_digits(p, self.inner.m, a as u32, 0, |x, _| (p - x) % p)
    }

    pub fn sub(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Symbol) -> Result<Symbol> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inner.inv_table[a as usize])
    }

    pub fn div(&self, a: Symbol, b: Symbol) -> Result<Symbol> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Symbol, mut e: u64) -> Symbol {
        let mut base = a;
        let mut acc: Symbol = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `sum_i a_i * b_i`.
    pub fn dot(&self, a: &[Symbol], b: &[Symbol]) -> Symbol {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Image of the integer `c` under the prime-subfield embedding.
    pub fn from_int(&self, c: i64) -> Symbol {
        c.rem_euclid(self.inner.p as i64) as Symbol
    }
}

fn map_digits(p: u32, m: u32, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> Symbol {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..m {
        out += f(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out as Symbol
}

fn raw_add(inner: &Inner, a: u32, b: u32) -> Symbol {
    match (inner.p, inner.m) {
        (2, _) => (a ^ b) as Symbol,
        (p, 1) => ((a + b) % p) as Symbol,
        (p, m) => map_digits(p, m, a, b, |x, y| (x + y) % p),
    }
}

fn to_digits(p: u32, m: u32, mut a: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn from_digits(p: u32, digits: &[u32]) -> Symbol {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d) as Symbol
}

fn raw_mul(inner: &Inner, a: u32, b: u32) -> Symbol {
    let p = inner.p;
    let Some(md) = &inner.modulus else {
        return ((a * b) % p) as Symbol;
    };
    let m = inner.m as usize;
    let da = to_digits(p, inner.m, a);
    let db = to_digits(p, inner.m, b);
    let mut prod = vec![0u32; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce from the top using the monic modulus.
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &mc) in md.iter().enumerate() {
            let idx = deg - m + i;
            prod[idx] = (prod[idx] + (p - c) * mc) % p;
        }
    }
    from_digits(p, &prod[..m])
}

/// Remainder of `num` by monic `den` over `F_p`, ascending coefficients.
fn poly_rem_prime(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if c != 0 {
            for (i, &x) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * x) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = to_digits(p, d as u32, idx as u32);
            div.push(1);
            if poly_rem_prime(p, poly, &div).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// An element bound to its field; the checked counterpart of [`Symbol`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Symbol,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.value, self.field)
    }
}

impl FieldElement {
    pub fn value(&self) -> Symbol {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(FieldElement { field: self.field.clone(), value: self.field.add(self.value, other.value) })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(FieldElement { field: self.field.clone(), value: self.field.mul(self.value, other.value) })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { field: self.field.clone(), value: self.field.neg(self.value) }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement { field: self.field.clone(), value: self.field.inv(self.value)? })
    }
}
