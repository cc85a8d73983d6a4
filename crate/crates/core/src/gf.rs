//! Exact arithmetic in GF(p^m).
//!
//! A field is described by a [`FieldSpec`]: the prime `p`, the degree `m`
//! and a monic irreducible modulus of degree `m` over GF(p). The modulus is
//! the first irreducible polynomial in the canonical order: the coefficient
//! vector `(c_{m-1}, ..., c_1, c_0)` read as a base-`p` integer, ascending.
//!
//! Elements are [`Elem`] values holding the canonical index
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`, so the natural integer order of
//! the index is the canonical element order. Fields up to
//! [`DEFAULT_TABLE_LIMIT`] elements carry exponent, logarithm and Zech
//! logarithm tables; larger fields fall back to digit-vector arithmetic.
//!
//! [`ExtensionPair`] couples GF(q) with GF(q^2) through a verified
//! embedding, and [`UnitySubgroup`] lists the (q+1)-th roots of unity inside
//! GF(q^2).

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{internal, invalid, Error, Result};
use crate::poly::Poly;

/// Largest field order for which log/Zech tables are built.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 23;

const MAX_DIGITS: usize = 32;
const NO_LOG: u32 = u32::MAX;

/// A field element, stored as its canonical base-`p` index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The canonical index of this element.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Field = Arc<FieldSpec>;

struct LogTables {
    /// `exp[i] = g^i`, stored twice over so that sums of two logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[d] = log(1 + g^d)`, or `NO_LOG` when `1 + g^d = 0`.
    zech: Vec<u32>,
}

/// GF(p^m) with its canonical modulus.
pub struct FieldSpec {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    order: u32,
    primitive: Elem,
    tables: Option<LogTables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^m` into `(p, m)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut m = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        m += 1;
    }
    Some((p as u32, m))
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), Field>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

type ModulusCache = Mutex<HashMap<(u32, u32), Vec<u32>>>;

fn modulus_cache() -> &'static ModulusCache {
    static CACHE: OnceLock<ModulusCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_params(p: u32, m: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(invalid!("{p} is not prime"));
    }
    if m == 0 {
        return Err(invalid!("extension degree must be at least 1"));
    }
    let order = (p as u64)
        .checked_pow(m)
        .filter(|&o| o <= u32::MAX as u64)
        .ok_or_else(|| invalid!("GF({p}^{m}) is too large"))?;
    if m as usize > MAX_DIGITS {
        return Err(invalid!("extension degree {m} too large"));
    }
    Ok(order as u32)
}

/// Builds GF(p^m) with the canonically first irreducible modulus.
///
/// Results are memoized per `(p, m)`, so repeated calls return the same
/// shared instance.
pub fn field_build(p: u32, m: u32) -> Result<Field> {
    check_params(p, m)?;
    if let Some(f) = registry().lock().unwrap().get(&(p, m)) {
        return Ok(f.clone());
    }
    let cached = modulus_cache().lock().unwrap().get(&(p, m)).cloned();
    let modulus = match cached {
        Some(md) => md,
        None => canonical_modulus(p, m)?,
    };
    let field = Arc::new(FieldSpec::with_modulus(p, m, modulus, DEFAULT_TABLE_LIMIT)?);
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry((p, m)).or_insert(field).clone())
}

/// Searches monic degree-`m` polynomials over GF(p) in canonical order and
/// returns the first irreducible one (constant term first).
pub fn canonical_modulus(p: u32, m: u32) -> Result<Vec<u32>> {
    check_params(p, m)?;
    if m == 1 {
        return Ok(vec![0, 1]);
    }
    let prime = field_build(p, 1)?;
    let count = (p as u64).pow(m);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(m as usize + 1);
        let mut r = idx;
        for _ in 0..m {
            coeffs.push(Elem((r % p as u64) as u32));
            r /= p as u64;
        }
        coeffs.push(Elem::ONE);
        let f = Poly::new(prime.clone(), coeffs);
        if f.is_irreducible() {
            return Ok(f.coeffs().iter().map(|c| c.0).collect());
        }
    }
    Err(internal!("no irreducible polynomial of degree {m} over GF({p})"))
}

impl FieldSpec {
    /// Builds a field from an explicit modulus, which must be monic,
    /// of degree `m` and irreducible. Tables are built when the field has at
    /// most `table_limit` elements.
    pub fn with_modulus(p: u32, m: u32, modulus: Vec<u32>, table_limit: u64) -> Result<FieldSpec> {
        let order = check_params(p, m)?;
        if modulus.len() != m as usize + 1 || *modulus.last().unwrap() != 1 {
            return Err(invalid!("modulus must be monic of degree {m}"));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(invalid!("modulus coefficients must lie in [0, {p})"));
        }
        if m > 1 {
            let prime = field_build(p, 1)?;
            let f = Poly::new(prime, modulus.iter().map(|&c| Elem(c)).collect());
            if !f.is_irreducible() {
                return Err(invalid!("modulus {modulus:?} is reducible over GF({p})"));
            }
        }
        let mut spec = FieldSpec { p, m, modulus, order, primitive: Elem::ZERO, tables: None };
        spec.primitive = spec.search_primitive();
        if order as u64 <= table_limit {
            spec.tables = Some(spec.build_tables());
        }
        Ok(spec)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements, `p^m`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The element with canonical index `idx`.
    pub fn element(&self, idx: u32) -> Result<Elem> {
        if idx >= self.order {
            return Err(invalid!("index {idx} out of range for GF({})", self.order));
        }
        Ok(Elem(idx))
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p as i64) as u32)
    }

    /// Builds an element from its coefficient vector (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(invalid!("coefficients {coeffs:?} do not describe an element of GF({})", self.order));
        }
        let mut d = [0u32; MAX_DIGITS];
        d[..coeffs.len()].copy_from_slice(coeffs);
        Ok(self.elem_from_digits(&d))
    }

    /// Coefficient vector of `a`, constant term first, length `m`.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        self.digits(a)[..self.m as usize].to_vec()
    }

    #[inline]
    fn digits(&self, a: Elem) -> [u32; MAX_DIGITS] {
        let mut d = [0u32; MAX_DIGITS];
        let mut r = a.0;
        for slot in d.iter_mut().take(self.m as usize) {
            *slot = r % self.p;
            r /= self.p;
        }
        d
    }

    #[inline]
    fn elem_from_digits(&self, d: &[u32; MAX_DIGITS]) -> Elem {
        let mut v: u32 = 0;
        for i in (0..self.m as usize).rev() {
            v = v * self.p + d[i];
        }
        Elem(v)
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut d = [0u32; MAX_DIGITS];
        for i in 0..self.m as usize {
            d[i] = ((da[i] as u64 + db[i] as u64) % self.p as u64) as u32;
        }
        self.elem_from_digits(&d)
    }

    fn neg_slow(&self, a: Elem) -> Elem {
        let da = self.digits(a);
        let mut d = [0u32; MAX_DIGITS];
        for i in 0..self.m as usize {
            d[i] = (self.p - da[i]) % self.p;
        }
        self.elem_from_digits(&d)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let m = self.m as usize;
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DIGITS];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        // x^m = -(c_0 + ... + c_{m-1} x^{m-1})
        for i in (m..2 * m - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let neg = (p - self.modulus[j] as u64) % p;
                prod[i - m + j] = (prod[i - m + j] + c * neg) % p;
            }
            prod[i] = 0;
        }
        let mut d = [0u32; MAX_DIGITS];
        for i in 0..m {
            d[i] = prod[i] as u32;
        }
        self.elem_from_digits(&d)
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn search_primitive(&self) -> Elem {
        let group = self.order as u64 - 1;
        if group == 1 {
            return Elem::ONE;
        }
        let factors = prime_factors(group);
        (1..self.order)
            .map(Elem)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, group / r) != Elem::ONE))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let n = self.order as usize - 1;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NO_LOG; self.order as usize];
        let mut x = Elem::ONE;
        for i in 0..n {
            exp[i] = x.0;
            exp[i + n] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, self.primitive);
        }
        let zech = (0..n).map(|d| log[self.add_slow(Elem::ONE, Elem(exp[d])).0 as usize]).collect();
        LogTables { exp, log, zech }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let n = self.order - 1;
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = t.zech[d as usize];
                if z == NO_LOG {
                    Elem::ZERO
                } else {
                    Elem(t.exp[(la + z) as usize])
                }
            }
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if a.is_zero() || self.p == 2 {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let half = (self.order - 1) / 2;
                Elem(t.exp[(t.log[a.0 as usize] + half) as usize])
            }
            None => self.neg_slow(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let n = self.order - 1;
                let la = t.log[a.0 as usize];
                Elem(t.exp[((n - la) % n) as usize])
            }
            None => self.pow_slow(a, self.order as u64 - 2),
        })
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = (self.order - 1) as u64;
                let l = t.log[a.0 as usize] as u64;
                Elem(t.exp[((l * (e % n)) % n) as usize])
            }
            None => self.pow_slow(a, e),
        }
    }

    /// `a^e` for any integer exponent; `None` for zero raised to a negative power.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Option<Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(ai, e.unsigned_abs()))
        }
    }

    /// Discrete logarithm to the base of [`primitive_element`](Self::primitive_element),
    /// available only for table-backed fields.
    pub fn log(&self, a: Elem) -> Option<u32> {
        let t = self.tables.as_ref()?;
        match t.log[a.0 as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    /// First element in canonical order whose multiplicative order is `p^m - 1`.
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut ord = self.order as u64 - 1;
        for r in prime_factors(ord) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == Elem::ONE {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// `a^q`; for `a` in GF(q^2) this is the conjugation fixing GF(q).
    pub fn frobenius(&self, a: Elem, q: u64) -> Elem {
        self.pow(a, q)
    }

    /// Polynomial rendering of an element, e.g. `x^2 + 2`.
    pub fn format_elem(&self, a: Elem) -> String {
        format_coeffs(&self.coeffs(a), "x")
    }
}

/// Renders a coefficient vector (constant term first) as a polynomial.
pub fn format_coeffs(coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// An element bundled with its field, with checked arithmetic.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Result<FieldElement> {
        field.element(value.index())?;
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(invalid!("operands belong to different fields"))
        }
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(self.wrap(self.field.add(self.value, o.value)))
    }

    pub fn sub(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(self.wrap(self.field.sub(self.value, o.value)))
    }

    pub fn mul(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(self.wrap(self.field.mul(self.value, o.value)))
    }

    pub fn div(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        let v = self.field.div(self.value, o.value).ok_or_else(|| Error::Domain("division by zero".into()))?;
        Ok(self.wrap(v))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let v = self.field.inv(self.value).ok_or_else(|| Error::Domain("inverse of zero".into()))?;
        Ok(self.wrap(v))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let v = self
            .field
            .pow_signed(self.value, e)
            .ok_or_else(|| Error::Domain("zero raised to a negative power".into()))?;
        Ok(self.wrap(v))
    }
}

/// GF(q) together with GF(q^2) and an embedding of the former into the latter.
#[derive(Debug)]
pub struct ExtensionPair {
    base: Field,
    ext: Field,
    embed_table: Vec<Elem>,
    project_map: HashMap<Elem, Elem>,
}

/// Builds GF(q^2) for `base = GF(q)` and embeds `base` into it.
///
/// The generator `x` of `base` is sent to the first root of the base modulus
/// among the powers of `g^(q+1)` (`g` primitive in GF(q^2)); that root has
/// multiplicative order dividing `q - 1` and the map is extended linearly.
/// Homomorphism and Frobenius-fixedness are verified exhaustively.
pub fn extension_build(base: &Field) -> Result<ExtensionPair> {
    let ext = field_build(base.p, 2 * base.m)?;
    let q = base.order as u64;
    let sub_gen = ext.pow(ext.primitive_element(), q + 1);

    let eval = |x: Elem| {
        base.modulus.iter().rev().fold(Elem::ZERO, |acc, &c| ext.add(ext.mul(acc, x), ext.from_int(c as i64)))
    };
    let root = if base.modulus[0] == 0 {
        Elem::ZERO
    } else {
        let mut cand = Elem::ONE;
        let mut found = None;
        for _ in 0..q - 1 {
            if eval(cand).is_zero() {
                found = Some(cand);
                break;
            }
            cand = ext.mul(cand, sub_gen);
        }
        found.ok_or_else(|| internal!("base modulus has no root in GF({}^2)", q))?
    };

    let mut embed_table = Vec::with_capacity(base.order as usize);
    for a in base.elements() {
        let mut acc = Elem::ZERO;
        let mut power = Elem::ONE;
        for c in base.coeffs(a) {
            acc = ext.add(acc, ext.mul(ext.from_int(c as i64), power));
            power = ext.mul(power, root);
        }
        embed_table.push(acc);
    }

    let gen_base = base.from_coeffs(&[0, 1]).unwrap_or(Elem::ONE);
    let x_img = embed_table[gen_base.index() as usize];
    let mut project_map = HashMap::with_capacity(embed_table.len());
    for a in base.elements() {
        let e = embed_table[a.index() as usize];
        if ext.frobenius(e, q) != e {
            return Err(internal!("embedded element {e:?} is not fixed by Frobenius"));
        }
        let prod = base.mul(gen_base, a);
        if ext.mul(x_img, e) != embed_table[prod.index() as usize] {
            return Err(internal!("embedding is not multiplicative at {a:?}"));
        }
        if project_map.insert(e, a).is_some() {
            return Err(internal!("embedding is not injective"));
        }
    }
    if embed_table[1] != Elem::ONE {
        return Err(internal!("embedding does not preserve 1"));
    }
    Ok(ExtensionPair { base: base.clone(), ext, embed_table, project_map })
}

impl ExtensionPair {
    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    /// `q`, the order of the base field.
    pub fn q(&self) -> u64 {
        self.base.order as u64
    }

    #[inline]
    pub fn embed(&self, a: Elem) -> Elem {
        self.embed_table[a.index() as usize]
    }

    /// Preimage of an extension element, if it lies in the embedded copy of GF(q).
    pub fn project(&self, e: Elem) -> Option<Elem> {
        self.project_map.get(&e).copied()
    }
}

/// The cyclic group of (q+1)-th roots of unity in GF(q^2).
#[derive(Debug)]
pub struct UnitySubgroup {
    pair: Arc<ExtensionPair>,
    beta: Elem,
    elements: Vec<Elem>,
    exponents: HashMap<Elem, u32>,
}

/// Builds `U_{q+1}` with generator `beta = gamma^(q-1)`, `gamma` the
/// primitive element of GF(q^2).
pub fn unity_subgroup(pair: Arc<ExtensionPair>) -> Result<UnitySubgroup> {
    let ext = pair.ext().clone();
    let q = pair.q();
    let beta = ext.pow(ext.primitive_element(), q - 1);
    if ext.multiplicative_order(beta) != Some(q + 1) {
        return Err(internal!("beta does not have order {}", q + 1));
    }
    let mut elements = Vec::with_capacity(q as usize + 1);
    let mut exponents = HashMap::with_capacity(q as usize + 1);
    let mut u = Elem::ONE;
    for j in 0..=q {
        if exponents.insert(u, j as u32).is_some() {
            return Err(internal!("powers of beta repeat before q+1"));
        }
        elements.push(u);
        u = ext.mul(u, beta);
    }
    if u != Elem::ONE {
        return Err(internal!("beta^(q+1) != 1"));
    }
    Ok(UnitySubgroup { pair, beta, elements, exponents })
}

/// GF(p^m), GF(p^2m) and `U_{q+1}` in one call.
pub fn unity_tower(p: u32, m: u32) -> Result<Arc<UnitySubgroup>> {
    let base = field_build(p, m)?;
    let pair = Arc::new(extension_build(&base)?);
    Ok(Arc::new(unity_subgroup(pair)?))
}

impl UnitySubgroup {
    pub fn pair(&self) -> &Arc<ExtensionPair> {
        &self.pair
    }

    pub fn ext(&self) -> &Field {
        self.pair.ext()
    }

    pub fn base(&self) -> &Field {
        self.pair.base()
    }

    pub fn q(&self) -> u64 {
        self.pair.q()
    }

    pub fn beta(&self) -> Elem {
        self.beta
    }

    /// `beta^0, ..., beta^q` in exponent order.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `beta^j` for any integer `j`.
    pub fn power(&self, j: i64) -> Elem {
        self.elements[j.rem_euclid(self.elements.len() as i64) as usize]
    }

    /// The exponent `j` in `0..=q` with `beta^j = u`.
    pub fn exponent_of(&self, u: Elem) -> Option<u32> {
        self.exponents.get(&u).copied()
    }

    /// Membership by the defining equation `u^(q+1) = 1`.
    pub fn contains(&self, u: Elem) -> bool {
        !u.is_zero() && self.ext().pow(u, self.q() + 1) == Elem::ONE
    }
}

/// Reads a field cache file (`p m c0 c1 ... cm` per line) and registers its
/// moduli for subsequent [`field_build`] calls. Each entry is validated.
pub fn load_field_cache(path: &Path) -> Result<usize> {
    let text = fs::read_to_string(path)?;
    let mut loaded = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| invalid!("field cache line {}: {e}", lineno + 1))?;
        if nums.len() < 3 {
            return Err(invalid!("field cache line {}: too few entries", lineno + 1));
        }
        let (p, m) = (nums[0], nums[1]);
        let modulus = nums[2..].to_vec();
        check_params(p, m)?;
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(invalid!("field cache line {}: bad modulus", lineno + 1));
        }
        if m > 1 {
            let f = Poly::new(field_build(p, 1)?, modulus.iter().map(|&c| Elem(c)).collect());
            if !f.is_irreducible() {
                return Err(invalid!("field cache line {}: modulus is reducible", lineno + 1));
            }
        }
        modulus_cache().lock().unwrap().insert((p, m), modulus);
        loaded += 1;
    }
    Ok(loaded)
}

/// Cache file contents for every field built so far, sorted by `(p, m)`.
pub fn field_cache_text() -> String {
    let reg = registry().lock().unwrap();
    let mut keys: Vec<_> = reg.keys().copied().collect();
    keys.sort_unstable();
    let mut out = String::new();
    for k in keys {
        let f = &reg[&k];
        let coeffs: Vec<String> = f.modulus.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("{} {} {}\n", f.p, f.m, coeffs.join(" ")));
    }
    out
}

pub fn write_field_cache(path: &Path) -> Result<()> {
    fs::write(path, field_cache_text())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = field_build(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 3);
        assert_eq!(f.mul(Elem(2), Elem(2)), Elem(1));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(field_build(4, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(field_build(3, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(field_build(1, 2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn gf27_reduces_x_cubed() {
        let f = field_build(3, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 2, 0, 1]);
        let x = f.from_coeffs(&[0, 1]).unwrap();
        let x2 = f.from_coeffs(&[0, 0, 1]).unwrap();
        assert_eq!(f.coeffs(f.mul(x, x2)), vec![2, 1, 0]);
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = field_build(3, 3).unwrap();
        assert!(f.has_tables());
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add_slow(a, b));
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
            assert_eq!(f.neg(a), f.neg_slow(a));
        }
        let big = FieldSpec::with_modulus(3, 3, f.modulus().to_vec(), 0).unwrap();
        assert!(!big.has_tables());
        for a in f.elements() {
            assert_eq!(f.inv(a), big.inv(a));
            assert_eq!(f.pow(a, 11), big.pow(a, 11));
        }
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(field_build(3, 1).unwrap().primitive_element(), Elem(2));
        let f = field_build(3, 3).unwrap();
        let g = f.primitive_element();
        assert_ne!(f.pow(g, 13), Elem::ONE);
        assert_ne!(f.pow(g, 2), Elem::ONE);
        assert_eq!(f.pow(g, 26), Elem::ONE);
        // every earlier nonzero element has smaller order
        for a in 1..g.index() {
            assert!(f.multiplicative_order(Elem(a)).unwrap() < 26);
        }
    }

    #[test]
    fn checked_elements_reject_mixed_fields() {
        let f3 = field_build(3, 1).unwrap();
        let f9 = field_build(3, 2).unwrap();
        let a = FieldElement::new(&f3, Elem(1)).unwrap();
        let b = FieldElement::new(&f9, Elem(1)).unwrap();
        assert!(matches!(a.add(&b), Err(Error::InvalidArgument(_))));
        let z = FieldElement::new(&f3, Elem(0)).unwrap();
        assert!(matches!(a.div(&z), Err(Error::Domain(_))));
        assert!(matches!(z.inv(), Err(Error::Domain(_))));
        assert!(matches!(z.pow(-1), Err(Error::Domain(_))));
        let two = FieldElement::new(&f3, Elem(2)).unwrap();
        assert_eq!(two.pow(-1).unwrap().value(), Elem(2));
    }

    #[test]
    fn embedding_into_gf9() {
        let base = field_build(3, 1).unwrap();
        let pair = extension_build(&base).unwrap();
        let e2 = pair.embed(Elem(2));
        assert_eq!(pair.ext().mul(e2, e2), Elem::ONE);
        assert_eq!(pair.project(e2), Some(Elem(2)));
    }

    #[test]
    fn unity_subgroup_q3() {
        let u = unity_tower(3, 1).unwrap();
        assert_eq!(u.len(), 4);
        for &x in u.elements() {
            assert!(u.contains(x));
        }
    }
}
