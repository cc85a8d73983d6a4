//! Cyclic and BCH codes of length `q + 1`, their generator and parity-check
//! matrices, duals, and the two-row parity check over GF(q^2).

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{internal, invalid, Error, Result};
use crate::gf::{field_build, prime_power, unity_tower, Elem, Field, UnitySubgroup};
use crate::linalg::{restricted_rank, Matrix};
use crate::poly::{minimal_poly, Poly};

/// Parameters `(q, n, delta, h)` of a BCH code: the code generated by the
/// lcm of the minimal polynomials of `beta^h, ..., beta^(h + delta - 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BchSpec {
    pub q: u64,
    pub n: u64,
    pub delta: u64,
    pub h: u64,
}

impl BchSpec {
    pub fn new(q: u64, n: u64, delta: u64, h: u64) -> BchSpec {
        BchSpec { q, n, delta, h }
    }

    /// `(q, q + 1, 3, 4)`, the almost-MDS family studied throughout the crate.
    pub fn amds(q: u64) -> BchSpec {
        BchSpec { q, n: q + 1, delta: 3, h: 4 }
    }

    pub fn validate(&self) -> Result<(u32, u32)> {
        let (p, m) = prime_power(self.q).ok_or_else(|| invalid!("q = {} is not a prime power", self.q))?;
        if self.n < 2 {
            return Err(invalid!("length {} is too small", self.n));
        }
        if self.h >= self.n {
            return Err(invalid!("starting exponent {} must be below n = {}", self.h, self.n));
        }
        if self.delta < 2 || self.delta > self.n {
            return Err(invalid!("designed distance {} must lie in [2, {}]", self.delta, self.n));
        }
        if self.n.gcd(&self.q) != 1 {
            return Err(invalid!("gcd(n, q) = gcd({}, {}) != 1", self.n, self.q));
        }
        Ok((p, m))
    }
}

impl fmt::Display for BchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({}, {}, {}, {})", self.q, self.n, self.delta, self.h)
    }
}

/// A cyclic code of length `n` over GF(q), given by its monic generator
/// polynomial.
pub struct CyclicCode {
    field: Field,
    n: usize,
    g: Poly,
    h: Poly,
    k: usize,
    bch: Option<BchSpec>,
    unity: Option<Arc<UnitySubgroup>>,
    d: OnceLock<usize>,
    generator: OnceLock<Matrix>,
    parity: OnceLock<Matrix>,
}

impl fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CyclicCode")
            .field("q", &self.q())
            .field("n", &self.n)
            .field("k", &self.k)
            .field("g", &self.g)
            .field("bch", &self.bch)
            .field("d", &self.d.get())
            .finish()
    }
}

impl Clone for CyclicCode {
    fn clone(&self) -> Self {
        CyclicCode {
            field: self.field.clone(),
            n: self.n,
            g: self.g.clone(),
            h: self.h.clone(),
            k: self.k,
            bch: self.bch,
            unity: self.unity.clone(),
            d: self.d.clone(),
            generator: self.generator.clone(),
            parity: self.parity.clone(),
        }
    }
}

/// Builds the BCH code described by `spec`.
///
/// Only lengths `n = q + 1` are supported, so every root lies in the
/// subgroup of `(q + 1)`-th roots of unity of GF(q^2).
pub fn bch_build(spec: &BchSpec) -> Result<CyclicCode> {
    let (p, m) = spec.validate()?;
    if spec.n != spec.q + 1 {
        return Err(Error::Unsupported(format!(
            "only n = q + 1 is supported (splitting field GF(q^2)); got n = {}, q = {}",
            spec.n, spec.q
        )));
    }
    let unity = unity_tower(p, m)?;
    let mut g = Poly::one(unity.base());
    for j in 0..spec.delta - 1 {
        let i = ((spec.h + j) % spec.n) as i64;
        g = g.lcm(&minimal_poly(&unity, i)?);
    }
    let mut code = CyclicCode::new(g, spec.n as usize)?;
    code.bch = Some(*spec);
    code.unity = Some(unity);
    Ok(code)
}

impl CyclicCode {
    /// The cyclic code generated by `g`, which must be monic and divide
    /// `x^n - 1`.
    pub fn new(g: Poly, n: usize) -> Result<CyclicCode> {
        let field = g.field().clone();
        if n == 0 {
            return Err(invalid!("length must be positive"));
        }
        if (n as u64).gcd(&(field.characteristic() as u64)) != 1 {
            return Err(invalid!("gcd(n, q) = gcd({n}, {}) != 1", field.order()));
        }
        if !g.is_monic() {
            return Err(invalid!("generator polynomial must be monic"));
        }
        let xn1 = Poly::x_n_minus_one(&field, n);
        let (h, r) = xn1.divmod(&g)?;
        if !r.is_zero() {
            return Err(invalid!("generator polynomial does not divide x^{n} - 1"));
        }
        if &g * &h != xn1 {
            return Err(internal!("g * h != x^n - 1"));
        }
        let k = h.degree().expect("quotient of x^n - 1 is nonzero");
        Ok(CyclicCode {
            field,
            n,
            g,
            h,
            k,
            bch: None,
            unity: None,
            d: OnceLock::new(),
            generator: OnceLock::new(),
            parity: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The minimum distance, if it has been computed.
    pub fn d(&self) -> Option<usize> {
        self.d.get().copied()
    }

    pub(crate) fn cache_d(&self, d: usize) {
        let _ = self.d.set(d);
    }

    pub fn generator_poly(&self) -> &Poly {
        &self.g
    }

    /// `h(x) = (x^n - 1) / g(x)`.
    pub fn check_poly(&self) -> &Poly {
        &self.h
    }

    pub fn bch_spec(&self) -> Option<&BchSpec> {
        self.bch.as_ref()
    }

    /// The roots of unity used to build the code, when it came from
    /// [`bch_build`].
    pub fn unity(&self) -> Option<&Arc<UnitySubgroup>> {
        self.unity.as_ref()
    }

    /// The `k x n` matrix whose row `i` holds the coefficients of `x^i g(x)`.
    pub fn generator_matrix(&self) -> &Matrix {
        self.generator.get_or_init(|| {
            let mut m = Matrix::zeros(&self.field, self.k, self.n);
            for i in 0..self.k {
                for (j, &c) in self.g.coeffs().iter().enumerate() {
                    m[(i, i + j)] = c;
                }
            }
            m
        })
    }

    /// An `(n - k) x n` parity-check matrix: a basis of the nullspace of the
    /// generator matrix, stacked as rows.
    ///
    /// # Panics
    ///
    /// Panics if the computed matrix fails its rank or orthogonality checks,
    /// which would indicate an arithmetic bug.
    pub fn parity_check_matrix(&self) -> &Matrix {
        self.parity.get_or_init(|| {
            let g = self.generator_matrix();
            let basis = g.nullspace();
            let h = Matrix::from_rows(&self.field, &basis, self.n).expect("nullspace rows have length n");
            assert_eq!(g.rank(), self.k, "generator matrix is not of full rank");
            assert_eq!(h.rank(), self.n - self.k, "parity-check matrix is not of full rank");
            assert!(g.mul(&h.transpose()).expect("shapes agree").is_zero(), "G * H^T != 0");
            h
        })
    }

    /// The dual code, generated by the monic reciprocal of `h(x)`.
    pub fn dual(&self) -> Result<CyclicCode> {
        let g = self.h.reciprocal().monic();
        CyclicCode::new(g, self.n)
    }

    /// `msg * G`, computed as the coefficients of `msg(x) g(x)`.
    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        if msg.len() != self.k {
            return Err(invalid!("message has length {}, expected {}", msg.len(), self.k));
        }
        self.check_elems(msg)?;
        let prod = &Poly::new(self.field.clone(), msg.to_vec()) * &self.g;
        let mut word = prod.coeffs().to_vec();
        word.resize(self.n, Elem::ZERO);
        Ok(word)
    }

    /// Whether `word` is a codeword, i.e. `g(x)` divides `word(x)`.
    pub fn contains(&self, word: &[Elem]) -> Result<bool> {
        if word.len() != self.n {
            return Err(invalid!("word has length {}, expected {}", word.len(), self.n));
        }
        self.check_elems(word)?;
        Ok(Poly::new(self.field.clone(), word.to_vec()).rem(&self.g)?.is_zero())
    }

    fn check_elems(&self, v: &[Elem]) -> Result<()> {
        let order = self.field.order();
        match v.iter().find(|e| e.index() >= order) {
            Some(e) => Err(invalid!("{e:?} is not an element of GF({order})")),
            None => Ok(()),
        }
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord {
            p: self.field.characteristic(),
            m: self.field.degree(),
            n: self.n,
            delta: self.bch.map(|b| b.delta),
            h: self.bch.map(|b| b.h),
            generator: self.g.coeffs().iter().map(|c| c.index()).collect(),
            k: self.k,
            d: self.d(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_record())?)
    }

    pub fn from_json(text: &str) -> Result<CyclicCode> {
        let rec: CodeRecord = serde_json::from_str(text)?;
        CyclicCode::from_record(&rec)
    }

    /// Rebuilds a code from its serialized form. When `delta` and `h` are
    /// present the code is rebuilt as a BCH code and the stored generator must
    /// match. A stored `d` is not trusted and is not cached.
    pub fn from_record(rec: &CodeRecord) -> Result<CyclicCode> {
        let field = field_build(rec.p, rec.m)?;
        let coeffs = rec.generator.iter().map(|&c| field.element(c)).collect::<Result<Vec<_>>>()?;
        let g = Poly::new(field.clone(), coeffs);
        let code = match (rec.delta, rec.h) {
            (Some(delta), Some(h)) => {
                let spec = BchSpec::new(field.order() as u64, rec.n as u64, delta, h);
                let code = bch_build(&spec)?;
                if code.g != g {
                    return Err(invalid!("generator does not match {spec}"));
                }
                code
            }
            (None, None) => CyclicCode::new(g, rec.n)?,
            _ => return Err(invalid!("delta and h must be given together")),
        };
        if code.k != rec.k {
            return Err(invalid!("stored dimension {} disagrees with the generator ({})", rec.k, code.k));
        }
        Ok(code)
    }
}

/// Serialized form of a cyclic code. Generator coefficients are field
/// element indices, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub p: u32,
    pub m: u32,
    pub n: usize,
    pub delta: Option<u64>,
    pub h: Option<u64>,
    pub generator: Vec<u32>,
    pub k: usize,
    pub d: Option<usize>,
}

/// The `2 x (q + 1)` matrix over GF(q^2) whose column `j` (zero-based) is
/// `(beta^(4(j+1)), beta^(5(j+1)))`. It annihilates exactly the codewords of
/// `C(q, q + 1, 3, 4)`; the last column is `(1, 1)`.
#[derive(Clone, Debug)]
pub struct UnityParityCheck {
    unity: Arc<UnitySubgroup>,
    matrix: Matrix,
    descent: Matrix,
}

/// Exponents of the two rows.
pub const UNITY_ROW_EXPONENTS: [i64; 2] = [4, 5];

/// Exponents of the rows together with their Frobenius conjugates.
pub const DESCENT_ROW_EXPONENTS: [i64; 4] = [4, 5, -5, -4];

pub fn unity_parity_check(q: u64) -> Result<UnityParityCheck> {
    let (p, m) = prime_power(q).ok_or_else(|| invalid!("q = {q} is not a prime power"))?;
    if p != 3 || m < 2 {
        return Err(Error::Unsupported(format!("the two-row parity check needs q = 3^m with m >= 2, got {q}")));
    }
    let unity = unity_tower(p, m)?;
    Ok(UnityParityCheck::from_unity(unity))
}

impl UnityParityCheck {
    pub fn from_unity(unity: Arc<UnitySubgroup>) -> UnityParityCheck {
        let build = |exponents: &[i64]| {
            let n = unity.len();
            let mut m = Matrix::zeros(unity.ext(), exponents.len(), n);
            for j in 0..n {
                for (r, &e) in exponents.iter().enumerate() {
                    m[(r, j)] = unity.power(e * (j as i64 + 1));
                }
            }
            m
        };
        let matrix = build(&UNITY_ROW_EXPONENTS);
        let descent = build(&DESCENT_ROW_EXPONENTS);
        UnityParityCheck { unity, matrix, descent }
    }

    pub fn unity(&self) -> &Arc<UnitySubgroup> {
        &self.unity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// The two rows followed by their entrywise Frobenius images. A word over
    /// GF(q) is annihilated by the two rows exactly when it is annihilated by
    /// all four, and the kernel of the four rows is Frobenius-stable, so
    /// its dimension over GF(q^2) equals the GF(q)-dimension of the code's
    /// restriction.
    pub fn descent_matrix(&self) -> &Matrix {
        &self.descent
    }

    /// Dimension over GF(q) of the subcode supported inside `cols` (zero-based).
    pub fn restricted_dim(&self, cols: &[usize]) -> usize {
        cols.len() - restricted_rank(&self.descent, cols)
    }

    /// A GF(q)-basis of the subcode supported inside `cols` (zero-based),
    /// as words of length `n`.
    ///
    /// The canonical nullspace basis of a Frobenius-stable space is fixed by
    /// Frobenius, so each basis vector projects to GF(q).
    pub fn restricted_subcode(&self, cols: &[usize]) -> Result<Vec<Vec<Elem>>> {
        let n = self.n();
        if let Some(&c) = cols.iter().find(|&&c| c >= n) {
            return Err(invalid!("column {c} out of range"));
        }
        let pair = self.unity.pair();
        let mut out = Vec::new();
        for v in self.descent.select_columns(cols).nullspace() {
            let mut word = vec![Elem::ZERO; n];
            for (&c, &e) in cols.iter().zip(&v) {
                word[c] = pair.project(e).ok_or_else(|| internal!("kernel vector is not GF(q)-rational"))?;
            }
            out.push(word);
        }
        Ok(out)
    }

    /// Whether `H c^T = 0` for a word `c` over GF(q), embedded into GF(q^2).
    pub fn annihilates(&self, word: &[Elem]) -> Result<bool> {
        if word.len() != self.n() {
            return Err(invalid!("word has length {}, expected {}", word.len(), self.n()));
        }
        let pair = self.unity.pair();
        let order = pair.base().order();
        if let Some(e) = word.iter().find(|e| e.index() >= order) {
            return Err(invalid!("{e:?} is not an element of GF({order})"));
        }
        let embedded: Vec<Elem> = word.iter().map(|&c| pair.embed(c)).collect();
        Ok(self.matrix.mul_vec(&embedded)?.iter().all(|e| e.is_zero()))
    }
}
