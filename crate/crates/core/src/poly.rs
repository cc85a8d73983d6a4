//! Univariate polynomials over a finite field, cyclotomic cosets and the
//! minimal polynomials of roots of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::error::{internal, invalid, Error, Result};
use crate::gf::{Elem, Field, UnitySubgroup};

/// A polynomial with coefficients in `field`, constant term first, no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.field == *other.field
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if self.field.degree() == 1 {
                c.to_string()
            } else {
                format!("({})", crate::gf::format_coeffs(&self.field.coeffs(*c), "a"))
            };
            match i {
                0 => write!(f, "{coef}")?,
                _ => {
                    if *c != Elem::ONE {
                        write!(f, "{coef}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?
                    } else {
                        write!(f, "x^{i}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(field: &Field, c: Elem, deg: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::new(field.clone(), coeffs)
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Elem::ONE, 1)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(field: &Field, n: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[0] = field.neg(Elem::ONE);
        coeffs[n] = Elem::ONE;
        Poly::new(field.clone(), coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    fn check_same(&self, other: &Poly) {
        assert!(*self.field == *other.field, "polynomial operands belong to different fields");
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Scales to leading coefficient one; the zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(li) => self.scale(li),
            None => self.clone(),
        }
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Reverses the coefficient order: `x^deg * f(1/x)`.
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(self.field.clone(), c)
    }

    /// Quotient and remainder with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(divisor);
        let f = &self.field;
        let dd = divisor.degree().ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[i - dd] = t;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(t, dc));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(invalid!("{divisor} does not divide {self}"));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check_same(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common multiple; zero if either input is zero.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        (self * other).exact_div(&g).expect("gcd divides the product").monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus)?;
            }
            base = (&base * &base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Irreducibility over the coefficient field.
    ///
    /// Degree-one polynomials are irreducible and constants are not. Otherwise
    /// `f` of degree `d` is irreducible iff `gcd(x^(q^i) - x, f) = 1` for
    /// `1 <= i <= d/2`, `q` the coefficient field order.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let f = self.monic();
        let q = self.field.order() as u64;
        let x = Poly::x(&self.field);
        let mut h = x.clone();
        for _ in 1..=d / 2 {
            h = h.pow_mod(q, &f).expect("f is nonzero");
            let g = (&h - &x).gcd(&f);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f.clone(), (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f.clone(), (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f.clone(), out)
    }
}

/// The orbit of a residue under multiplication by `q` modulo `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCoset {
    representative: u64,
    members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn new(i: u64, n: u64, q: u64) -> Result<CyclotomicCoset> {
        if n == 0 || i >= n {
            return Err(invalid!("residue {i} out of range for modulus {n}"));
        }
        if n.gcd(&q) != 1 {
            return Err(invalid!("gcd({n}, {q}) != 1"));
        }
        let mut members = vec![i];
        let mut j = (i as u128 * q as u128 % n as u128) as u64;
        while j != i {
            members.push(j);
            j = (j as u128 * q as u128 % n as u128) as u64;
        }
        members.sort_unstable();
        Ok(CyclotomicCoset { representative: members[0], members })
    }

    /// Smallest member.
    pub fn representative(&self) -> u64 {
        self.representative
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: u64) -> bool {
        self.members.binary_search(&j).is_ok()
    }
}

/// Minimal polynomial of `beta^i` over GF(q), where `beta` generates
/// `U_{q+1}` and `n = q + 1`.
///
/// The product of `x - beta^j` over the coset of `i` is formed in GF(q^2)
/// and each coefficient is projected back to GF(q); a coefficient outside
/// GF(q) is an arithmetic bug and reported as an internal error.
pub fn minimal_poly(unity: &UnitySubgroup, i: i64) -> Result<Poly> {
    let ext = unity.ext();
    let pair = unity.pair();
    let n = unity.len() as u64;
    let coset = CyclotomicCoset::new(i.rem_euclid(n as i64) as u64, n, unity.q())?;
    let mut prod = Poly::one(ext);
    for &j in coset.members() {
        let root = unity.power(j as i64);
        let lin = Poly::new(ext.clone(), vec![ext.neg(root), Elem::ONE]);
        prod = &prod * &lin;
    }
    let mut coeffs = Vec::with_capacity(prod.coeffs().len());
    for &c in prod.coeffs() {
        if ext.frobenius(c, unity.q()) != c {
            return Err(internal!("minimal polynomial coefficient {c:?} is not fixed by Frobenius"));
        }
        coeffs.push(pair.project(c).ok_or_else(|| internal!("coefficient {c:?} outside the embedded base field"))?);
    }
    let m = Poly::new(unity.base().clone(), coeffs);
    let check = Poly::new(ext.clone(), m.coeffs().iter().map(|&c| pair.embed(c)).collect());
    if !check.eval(unity.power(i)).is_zero() {
        return Err(internal!("minimal polynomial does not vanish at beta^{i}"));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{field_build, unity_tower};

    fn p(field: &Field, c: &[u32]) -> Poly {
        Poly::new(field.clone(), c.iter().map(|&v| field.element(v).unwrap()).collect())
    }

    #[test]
    fn gcd_with_zero_is_monic_input() {
        let f = field_build(3, 1).unwrap();
        let a = p(&f, &[1, 0, 2]);
        assert_eq!(a.gcd(&Poly::zero(&f)), a.monic());
    }

    #[test]
    fn freshmans_dream_in_char_three() {
        let f = field_build(3, 1).unwrap();
        let xp1 = p(&f, &[1, 1]);
        let cube = &(&xp1 * &xp1) * &xp1;
        assert_eq!(cube, p(&f, &[1, 0, 0, 1]));
    }

    #[test]
    fn irreducibility_examples() {
        let f = field_build(3, 1).unwrap();
        assert!(p(&f, &[1, 2, 0, 1]).is_irreducible());
        assert!(!p(&f, &[1, 0, 0, 1]).is_irreducible());
        assert!(p(&f, &[2, 1]).is_irreducible());
        assert!(!p(&f, &[2]).is_irreducible());
    }

    #[test]
    fn divmod_by_zero_is_domain_error() {
        let f = field_build(3, 1).unwrap();
        assert!(matches!(p(&f, &[1, 1]).divmod(&Poly::zero(&f)), Err(Error::Domain(_))));
    }

    #[test]
    fn cosets_mod_28() {
        assert_eq!(CyclotomicCoset::new(0, 28, 27).unwrap().members(), &[0]);
        assert_eq!(CyclotomicCoset::new(4, 28, 27).unwrap().members(), &[4, 24]);
        assert_eq!(CyclotomicCoset::new(14, 28, 27).unwrap().members(), &[14]);
        assert!(CyclotomicCoset::new(1, 27, 3).is_err());
    }

    #[test]
    fn small_minimal_polys() {
        let u = unity_tower(3, 3).unwrap();
        let base = u.base().clone();
        let m0 = minimal_poly(&u, 0).unwrap();
        assert_eq!(m0, p(&base, &[2, 1]));
        let m14 = minimal_poly(&u, 14).unwrap();
        assert_eq!(m14, p(&base, &[1, 1]));
        let m4 = minimal_poly(&u, 4).unwrap();
        assert_eq!(m4.degree(), Some(2));
        assert_eq!(m4.coeff(0), Elem::ONE);
        assert!(m4.is_irreducible());
    }
}
