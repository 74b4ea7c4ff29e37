//! Multivariate Laurent polynomials over the rationals.
//!
//! Exponent vectors are `Vec<i64>` of a fixed length per polynomial; terms are
//! kept in a sorted map so all operations are deterministic. This one type
//! carries both the defining polynomials of integration problems (in the
//! torus variables) and the numerators of normalized rational functions (in
//! the `q`/`t` variables).

use crate::numeric::{int, Int, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    pub nvars: usize,
    /// exponent vector -> nonzero coefficient
    pub terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, &vec![0; nvars], Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, &vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exp: &[i64], c: Rat) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp.to_vec(), c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0i64; nvars];
        e[i] = 1;
        Self::monomial(nvars, &e, Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A polynomial with exactly one term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn add_term(&mut self, exp: &[i64], c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp.to_vec()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(&e, &(c1 * c2));
            }
        }
        out
    }

    /// Multiply by the monomial `c * x^exp`.
    pub fn mul_monomial(&self, exp: &[i64], c: &Rat) -> Self {
        assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    (
                        e.iter().zip(exp).map(|(a, b)| a + b).collect(),
                        k * c,
                    )
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact evaluation at a rational point (all coordinates nonzero when
    /// negative exponents occur).
    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                m *= crate::numeric::rat_pow(xi, ei);
            }
            acc += m;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(&e2, &(c * Rat::from_integer(int(e[i]))));
            }
        }
        out
    }

    /// Apply the exponent substitution `x^alpha -> y^(alpha A)` for an integer
    /// matrix `A` given by rows; `y` has `A[0].len()` variables.
    pub fn substitute_exponents(&self, rows: &[Vec<i64>]) -> Self {
        assert_eq!(rows.len(), self.nvars);
        let m = if rows.is_empty() { 0 } else { rows[0].len() };
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let mut img = vec![0i64; m];
            for (ei, row) in e.iter().zip(rows) {
                for (j, a) in row.iter().enumerate() {
                    img[j] += ei * a;
                }
            }
            out.add_term(&img, c);
        }
        out
    }

    /// Test divisibility by `x^v - 1` (v != 0) and return the exact quotient
    /// when divisible. Exponents are grouped into residue classes modulo `v`;
    /// divisibility is equivalent to every class summing to zero.
    pub fn div_binomial(&self, v: &[i64]) -> Option<Self> {
        assert_eq!(v.len(), self.nvars);
        assert!(v.iter().any(|&x| x != 0));
        // Pivot on the first nonzero entry of v to slice classes into chains.
        let piv = v.iter().position(|&x| x != 0).unwrap();
        // key = exponent minus (e[piv]/v[piv]) * v, grouping e and e+kv together
        // only when the pivot offset is an exact multiple.
        let mut classes: BTreeMap<Vec<i64>, Vec<(i64, Rat)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[piv].div_euclid(v[piv]);
            let base: Vec<i64> = e.iter().zip(v).map(|(a, b)| a - k * b).collect();
            classes.entry(base).or_default().push((k, c.clone()));
        }
        let mut out = Self::zero(self.nvars);
        for (base, mut chain) in classes {
            chain.sort_by_key(|(k, _)| *k);
            // f_class = sum c_k x^(base + k v); quotient by (x^v - 1) exists iff
            // sum c_k = 0, and then equals sum_k (sum_{j>k} c_j) x^(base + k v).
            let total: Rat = chain.iter().map(|(_, c)| c.clone()).sum();
            if !total.is_zero() {
                return None;
            }
            // With g * (x^v - 1) = f_class and f_class = sum c_k x^(base + kv),
            // the quotient coefficients are d_k = sum_{j > k} c_j, supported on
            // k in [lo, hi).
            let lo = chain.first().unwrap().0;
            let hi = chain.last().unwrap().0;
            let coeffs: BTreeMap<i64, Rat> = chain.into_iter().collect();
            let mut suffix = Rat::zero();
            for k in (lo..hi).rev() {
                if let Some(c) = coeffs.get(&(k + 1)) {
                    suffix += c;
                }
                if !suffix.is_zero() {
                    let e: Vec<i64> = base.iter().zip(v).map(|(a, b)| a + k * b).collect();
                    out.add_term(&e, &suffix);
                }
            }
        }
        Some(out)
    }

    /// Content (gcd of coefficient numerators over lcm of denominators is not
    /// needed; we take the positive rational c such that self/c has coprime
    /// integer coefficients with positive leading coefficient).
    pub fn rational_content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut num_gcd = Int::zero();
        let mut den_lcm = Int::one();
        for c in self.terms.values() {
            num_gcd = num::integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        // sign of the leading (lexicographically largest) term
        if self.terms.iter().next_back().unwrap().1.is_negative() {
            content = -content;
        }
        content
    }

    /// Minimum exponent per variable (for pulling out a common monomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (mi, &ei) in m.iter_mut().zip(e) {
                *mi = (*mi).min(ei);
            }
        }
        if self.is_zero() {
            m = vec![0; self.nvars];
        }
        m
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, k)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("{}", c)
                } else if c.is_one() {
                    vars.join("*")
                } else {
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
