//! Sums of terms `c * (x0-1)^e * x^a / prod_j (1 - x^(u_j))` in variables
//! `x0, ..., xm`, the computational form of every local zeta function here,
//! together with normalization to a single fraction, monomial substitution,
//! numeric evaluation, power series extraction, and the formal reduction
//! modulo `x0 - 1` that produces topological zeta functions.
//!
//! Two readings of the variables coexist. Cone generating functions use
//! `x = (xi_0, ..., xi_m)` with no `(x0-1)` powers. Zeta assembly substitutes
//! `xi_0 = q^(-1)` (flipping the sign of the first exponent) and carries
//! explicit powers of `q - 1`, after which `x0 = q` and `x_j = t_j`.

mod top;

pub use top::{
    hurwitz_stable, roots_real_parts_in, sturm_roots_in_interval, LinForm, TopNormal, TopRatFun,
    TopTerm,
};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::numeric::{rat_pow, Int, Rat};
use num::{One, Zero};
use std::collections::BTreeMap;

/// Checked narrowing for exponent arithmetic; geometry data is far below the
/// limit, and a loud panic beats silent wraparound.
pub fn to_i64(x: &Int) -> i64 {
    i64::try_from(x).expect("exponent exceeds i64; input far outside supported scale")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rat,
    /// power of (x0 - 1) carried by the term
    pub qone_pow: i64,
    /// exponent vector of the numerator monomial
    pub num: Vec<i64>,
    /// denominator factors (1 - x^u), each u nonzero; sorted
    pub den: Vec<Vec<i64>>,
}

impl Term {
    fn normalize(mut self) -> Self {
        self.den.sort();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSum {
    pub nvars: usize,
    pub terms: Vec<Term>,
}

impl TermSum {
    pub fn zero(nvars: usize) -> Self {
        TermSum {
            nvars,
            terms: vec![],
        }
    }

    pub fn one(nvars: usize) -> Self {
        TermSum {
            nvars,
            terms: vec![Term {
                coeff: Rat::one(),
                qone_pow: 0,
                num: vec![0; nvars],
                den: vec![],
            }],
        }
    }

    pub fn push(&mut self, t: Term) {
        assert_eq!(t.num.len(), self.nvars);
        for u in &t.den {
            assert_eq!(u.len(), self.nvars);
            assert!(u.iter().any(|&x| x != 0), "denominator factor (1 - x^0)");
        }
        if !t.coeff.is_zero() {
            self.terms.push(t.normalize());
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        TermSum {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Multiply every term by `c * (x0-1)^e * x^exp`.
    pub fn mul_prefactor(&self, c: &Rat, e: i64, exp: &[i64]) -> Self {
        assert_eq!(exp.len(), self.nvars);
        TermSum {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|t| !(&t.coeff * c).is_zero())
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    qone_pow: t.qone_pow + e,
                    num: t.num.iter().zip(exp).map(|(a, b)| a + b).collect(),
                    den: t.den.clone(),
                })
                .collect(),
        }
    }

    /// Append a denominator factor `1/(1 - x^u)` to every term.
    pub fn div_binomial_factor(&self, u: &[i64]) -> Self {
        assert!(u.iter().any(|&x| x != 0));
        TermSum {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let mut den = t.den.clone();
                    den.push(u.to_vec());
                    Term {
                        den,
                        ..t.clone()
                    }
                    .normalize()
                })
                .collect(),
        }
    }

    /// Formal linear combination; no cancellation attempted.
    pub fn combine(ws: &[(Rat, TermSum)]) -> TermSum {
        assert!(!ws.is_empty());
        let nvars = ws[0].1.nvars;
        let mut out = TermSum::zero(nvars);
        for (c, w) in ws {
            assert_eq!(w.nvars, nvars, "variable count mismatch");
            for t in &w.scale(c).terms {
                out.terms.push(t.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &TermSum) -> TermSum {
        TermSum::combine(&[(Rat::one(), self.clone()), (Rat::one(), other.clone())])
    }

    /// Reinterpret the first variable as its reciprocal: exponents of `x0`
    /// change sign. This is the passage from `xi_0` to `q` via `xi_0 = q^(-1)`.
    pub fn flip_var0(&self) -> TermSum {
        let flip = |v: &Vec<i64>| -> Vec<i64> {
            let mut w = v.clone();
            w[0] = -w[0];
            w
        };
        TermSum {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    Term {
                        coeff: t.coeff.clone(),
                        qone_pow: t.qone_pow,
                        num: flip(&t.num),
                        den: t.den.iter().map(flip).collect(),
                    }
                    .normalize()
                })
                .collect(),
        }
    }

    /// Monomial substitution `x_j -> x0^(c_j) * y^(A_j)` for `j = 1..m`, with
    /// `x0` fixed, producing a sum in variables `x0, y_1, ..., y_r`. Fails
    /// with `SpecializationCollapse` when a denominator factor maps to
    /// `1 - x0^0 y^0`.
    pub fn substitute_monomial_affine(&self, c: &[Int], a: &[Vec<Int>]) -> Result<TermSum> {
        let m = self.nvars - 1;
        assert_eq!(c.len(), m);
        assert_eq!(a.len(), m);
        let r = if m == 0 { 0 } else { a[0].len() };
        let map = |v: &[i64]| -> Vec<i64> {
            let mut w = vec![0i64; 1 + r];
            w[0] = v[0];
            for j in 0..m {
                w[0] += v[1 + j] * to_i64(&c[j]);
                for k in 0..r {
                    w[1 + k] += v[1 + j] * to_i64(&a[j][k]);
                }
            }
            w
        };
        let mut out = TermSum::zero(1 + r);
        for t in &self.terms {
            let mut den = Vec::with_capacity(t.den.len());
            for u in &t.den {
                let img = map(u);
                if img.iter().all(|&x| x == 0) {
                    return Err(Error::SpecializationCollapse(format!("{:?}", u)));
                }
                den.push(img);
            }
            out.push(Term {
                coeff: t.coeff.clone(),
                qone_pow: t.qone_pow,
                num: map(&t.num),
                den,
            });
        }
        Ok(out)
    }

    /// Exact value at a rational point (coordinates of `x`), or `PoleHit`.
    pub fn evaluate_numeric(&self, x: &[Rat]) -> Result<Rat> {
        assert_eq!(x.len(), self.nvars);
        let mono = |v: &[i64]| -> Rat {
            v.iter()
                .zip(x)
                .map(|(&e, xi)| rat_pow(xi, e))
                .product()
        };
        let mut acc = Rat::zero();
        for t in &self.terms {
            let mut val = &t.coeff * rat_pow(&(x[0].clone() - Rat::one()), t.qone_pow);
            val *= mono(&t.num);
            for u in &t.den {
                let d = Rat::one() - mono(u);
                if d.is_zero() {
                    return Err(Error::PoleHit(format!("1 - x^{:?}", u)));
                }
                val /= d;
            }
            acc += val;
        }
        Ok(acc)
    }

    /// Number of terms, a cheap size probe for reports.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Single-fraction normal form.
    pub fn normalize_fraction(&self) -> NormalForm {
        let nvars = self.nvars;
        // canonical orientation for each factor: keep u if u > 0
        // lexicographically, else replace (1 - x^u) = -x^u (1 - x^(-u))
        #[derive(Clone)]
        struct Oriented {
            factors: BTreeMap<Vec<i64>, u32>,
            unit_exp: Vec<i64>,
            sign: i32,
        }
        let orient = |den: &[Vec<i64>]| -> Oriented {
            let mut o = Oriented {
                factors: BTreeMap::new(),
                unit_exp: vec![0; nvars],
                sign: 1,
            };
            for u in den {
                let pos = u.iter().find(|&&x| x != 0).map(|&x| x > 0).unwrap();
                if pos {
                    *o.factors.entry(u.clone()).or_insert(0) += 1;
                } else {
                    // 1/(1 - x^u) = -x^(-u) / (1 - x^(-u))
                    let nu: Vec<i64> = u.iter().map(|&x| -x).collect();
                    for (a, b) in o.unit_exp.iter_mut().zip(&nu) {
                        *a += b;
                    }
                    o.sign = -o.sign;
                    *o.factors.entry(nu).or_insert(0) += 1;
                }
            }
            o
        };

        // negative (q-1) powers become denominator factors (1 - q) with a sign
        let mut oriented: Vec<Oriented> = self.terms.iter().map(|t| orient(&t.den)).collect();
        for (t, o) in self.terms.iter().zip(oriented.iter_mut()) {
            if t.qone_pow < 0 {
                let k = (-t.qone_pow) as u32;
                *o.factors.entry(unit_exp0(nvars)).or_insert(0) += k;
                if k % 2 == 1 {
                    o.sign = -o.sign;
                }
            }
        }
        let mut common: BTreeMap<Vec<i64>, u32> = BTreeMap::new();
        for o in &oriented {
            for (u, &m) in &o.factors {
                let e = common.entry(u.clone()).or_insert(0);
                *e = (*e).max(m);
            }
        }

        let qone = LaurentPoly::monomial(nvars, &unit_exp0(nvars), Rat::one())
            .add(&LaurentPoly::constant(nvars, -Rat::one()));
        let mut num = LaurentPoly::zero(nvars);
        for (t, o) in self.terms.iter().zip(&oriented) {
            let mut part = LaurentPoly::monomial(
                nvars,
                &t.num,
                &t.coeff * Rat::from_integer(Int::from(o.sign)),
            );
            part = part.mul_monomial(&o.unit_exp, &Rat::one());
            if t.qone_pow > 0 {
                part = part.mul(&qone.pow(t.qone_pow as u32));
            }
            for (u, &mc) in &common {
                let have = o.factors.get(u).copied().unwrap_or(0);
                for _ in have..mc {
                    part = part.mul(&binomial_poly(nvars, u));
                }
            }
            num = num.add(&part);
        }

        // cancel denominator factors dividing the numerator
        let mut den: Vec<(Vec<i64>, u32)> = common.into_iter().collect();
        if num.is_zero() {
            den.clear();
        } else {
            for (u, mult) in den.iter_mut() {
                while *mult > 0 {
                    // 1 - x^u = -(x^u - 1)
                    match num.div_binomial(u) {
                        Some(q) => {
                            num = q.neg();
                            *mult -= 1;
                        }
                        None => break,
                    }
                }
            }
            den.retain(|(_, m)| *m > 0);
        }
        NormalForm {
            nvars,
            num,
            den,
        }
    }

    /// Exact equality as rational functions (cross-multiplied comparison of
    /// normal forms).
    pub fn equals(&self, other: &TermSum) -> bool {
        assert_eq!(self.nvars, other.nvars);
        self.normalize_fraction().equals(&other.normalize_fraction())
    }

    /// Equality as rational functions of the remaining variables after fixing
    /// the first variable to an exact rational value; this is the comparison
    /// for local zeta functions whose point counts were evaluated at one `q`.
    pub fn equals_at_var0(&self, other: &TermSum, q0: &Rat) -> bool {
        assert_eq!(self.nvars, other.nvars);
        let (n1, d1) = self.normalize_fraction().eval_var0(q0);
        let (n2, d2) = other.normalize_fraction().eval_var0(q0);
        n1.mul(&d2) == n2.mul(&d1)
    }

    /// Coefficientwise expansion as a formal series, truncated at
    /// `x0`-exponent `bound`. Requires every denominator factor to have
    /// positive `x0`-exponent and every term to carry no `(x0-1)` powers;
    /// this is the shape produced by cone generating functions.
    pub fn expand_series_var0(&self, bound: i64) -> BTreeMap<Vec<i64>, Rat> {
        let mut acc: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for t in &self.terms {
            assert_eq!(t.qone_pow, 0, "series expansion with (x0-1) powers");
            if t.num[0] > bound {
                continue;
            }
            let mut part: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
            part.insert(t.num.clone(), t.coeff.clone());
            for u in &t.den {
                assert!(u[0] > 0, "denominator factor without x0 grading");
                let mut next: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
                for (e, c) in &part {
                    let mut k = 0i64;
                    loop {
                        let shift = e[0] + k * u[0];
                        if shift > bound {
                            break;
                        }
                        let exp: Vec<i64> =
                            e.iter().zip(u).map(|(a, b)| a + k * b).collect();
                        *next.entry(exp).or_insert_with(Rat::zero) += c;
                        k += 1;
                    }
                }
                part = next;
            }
            for (e, c) in part {
                *acc.entry(e).or_insert_with(Rat::zero) += c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    }

    /// Taylor coefficients in `x1` to order `bound`, with `x0` fixed to the
    /// rational `q0`; the sum must be bivariate.
    pub fn power_series_coeffs(&self, q0: &Rat, bound: usize) -> Result<Vec<Rat>> {
        assert_eq!(self.nvars, 2, "series extraction needs variables (q, T)");
        let mut acc = vec![Rat::zero(); bound + 1];
        for t in &self.terms {
            let mut scalar = &t.coeff * rat_pow(&(q0.clone() - Rat::one()), t.qone_pow);
            scalar *= rat_pow(q0, t.num[0]);
            if t.num[1] < 0 {
                return Err(Error::Invalid(
                    "negative T-exponent in series extraction".into(),
                ));
            }
            let mut series = vec![Rat::zero(); bound + 1];
            let shift = t.num[1] as usize;
            if shift <= bound {
                series[shift] = scalar;
            } else {
                continue;
            }
            for u in &t.den {
                let (a, b) = (u[0], u[1]);
                if b < 0 {
                    return Err(Error::Invalid(
                        "denominator factor with negative T-degree".into(),
                    ));
                }
                if b == 0 {
                    let d = Rat::one() - rat_pow(q0, a);
                    if d.is_zero() {
                        return Err(Error::PoleHit(format!("1 - q^{} at q = {}", a, q0)));
                    }
                    for x in series.iter_mut() {
                        *x /= d.clone();
                    }
                } else {
                    // multiply by sum_k (q0^a T^b)^k
                    let step = rat_pow(q0, a);
                    let mut next = vec![Rat::zero(); bound + 1];
                    for (i, x) in series.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        let mut factor = Rat::one();
                        let mut j = i;
                        loop {
                            next[j] += x * &factor;
                            j += b as usize;
                            if j > bound {
                                break;
                            }
                            factor *= &step;
                        }
                    }
                    series = next;
                }
            }
            for (x, s) in acc.iter_mut().zip(series) {
                *x += s;
            }
        }
        Ok(acc)
    }

    /// Formal reduction modulo `q - 1` (the first variable is `q`). A term
    /// with `(q-1)`-power `e` and `d` denominator factors maps to `0` when
    /// `e > d` and to `coeff * prod_j 1/(<b_j, s> - a_j)` when `e = d`, where
    /// `(a_j, b_j)` are the factor exponents. Terms with `e < d` lie outside
    /// the reduction ring.
    pub fn reduce_mod_qminus1(&self) -> Result<TopRatFun> {
        let m = self.nvars - 1;
        let mut out = TopRatFun::zero(m);
        for t in &self.terms {
            let d = t.den.len();
            if t.qone_pow < d as i64 {
                return Err(Error::NotInRingM {
                    got: t.qone_pow,
                    need: d,
                });
            }
            if t.qone_pow > d as i64 {
                continue;
            }
            let mut forms = Vec::with_capacity(d);
            for u in &t.den {
                // 1/(1 - q^a t^b) contributes (q-1)/(q^a t^b - 1) -> 1/(a - <b,s>)
                // after accounting for the sign flip; assembled below as
                // coeff * prod 1/(<b,s> - a).
                let c0 = Int::from(-u[0]);
                let cs: Vec<Int> = u[1..].iter().map(|&x| Int::from(x)).collect();
                forms.push(LinForm { c0, cs });
            }
            out.push(TopTerm {
                coeff: t.coeff.clone(),
                den: forms,
            });
        }
        Ok(out)
    }
}

fn unit_exp0(nvars: usize) -> Vec<i64> {
    let mut e = vec![0; nvars];
    e[0] = 1;
    e
}

fn binomial_poly(nvars: usize, u: &[i64]) -> LaurentPoly {
    LaurentPoly::constant(nvars, Rat::one())
        .add(&LaurentPoly::monomial(nvars, u, -Rat::one()))
}

/// Exact single-fraction form: `num / prod (1 - x^u)^mult` with canonically
/// oriented factors.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub nvars: usize,
    pub num: LaurentPoly,
    pub den: Vec<(Vec<i64>, u32)>,
}

impl NormalForm {
    pub fn den_expanded(&self) -> LaurentPoly {
        let mut d = LaurentPoly::one(self.nvars);
        for (u, m) in &self.den {
            for _ in 0..*m {
                d = d.mul(&binomial_poly(self.nvars, u));
            }
        }
        d
    }

    /// Equality as rational functions via cross multiplication.
    pub fn equals(&self, other: &NormalForm) -> bool {
        assert_eq!(self.nvars, other.nvars);
        self.num.mul(&other.den_expanded()) == other.num.mul(&self.den_expanded())
    }

    /// Substitute an exact rational value for `x0`, producing a pair
    /// (numerator, denominator) of polynomials in the remaining variables.
    pub fn eval_var0(&self, q0: &Rat) -> (LaurentPoly, LaurentPoly) {
        let subst = |p: &LaurentPoly| -> LaurentPoly {
            let mut out = LaurentPoly::zero(self.nvars - 1);
            for (e, c) in &p.terms {
                let scalar = rat_pow(q0, e[0]);
                out.add_term(&e[1..].to_vec(), &(c * scalar));
            }
            out
        };
        (subst(&self.num), subst(&self.den_expanded()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat, ratio};

    fn geom(nvars: usize, u: &[i64]) -> TermSum {
        // 1/(1 - x^u)
        let mut w = TermSum::zero(nvars);
        w.push(Term {
            coeff: Rat::one(),
            qone_pow: 0,
            num: vec![0; nvars],
            den: vec![u.to_vec()],
        });
        w
    }

    #[test]
    fn combine_identity() {
        let w = geom(1, &[1]);
        let sum = TermSum::combine(&[(rat(1), w.clone()), (rat(0), TermSum::one(1))]);
        assert!(sum.equals(&w));
        let double_minus = TermSum::combine(&[(rat(2), w.clone()), (rat(-1), w.clone())]);
        assert!(double_minus.equals(&w));
    }

    #[test]
    fn associativity_after_normalization() {
        let w1 = geom(2, &[1, 0]);
        let w2 = geom(2, &[1, 1]);
        let w3 = geom(2, &[2, 1]);
        let left = w1.add(&w2).add(&w3);
        let right = w1.add(&w2.add(&w3));
        assert!(left.equals(&right));
    }

    #[test]
    fn normalize_collapses_shifted_geometric() {
        // x/(1-x) + 1 = 1/(1-x)
        let mut w = TermSum::zero(1);
        w.push(Term {
            coeff: rat(1),
            qone_pow: 0,
            num: vec![1],
            den: vec![vec![1]],
        });
        w = w.add(&TermSum::one(1));
        assert!(w.equals(&geom(1, &[1])));
    }

    #[test]
    fn normalize_idempotent() {
        let w = geom(2, &[1, 2]).add(&geom(2, &[1, 0]).scale(&ratio(-3, 7)));
        let n1 = w.normalize_fraction();
        // reconstruct a TermSum from the normal form and normalize again
        let mut w2 = TermSum::zero(2);
        for (e, c) in &n1.num.terms {
            let mut t = Term {
                coeff: c.clone(),
                qone_pow: 0,
                num: e.clone(),
                den: vec![],
            };
            for (u, m) in &n1.den {
                for _ in 0..*m {
                    t.den.push(u.clone());
                }
            }
            w2.push(t);
        }
        let n2 = w2.normalize_fraction();
        assert!(n1.equals(&n2));
    }

    #[test]
    fn evaluate_simple_pole_free() {
        // 1/(1 - q^-1 T) at q=3, T=1/9 -> 27/26
        let w = geom(2, &[-1, 1]);
        let v = w.evaluate_numeric(&[rat(3), ratio(1, 9)]).unwrap();
        assert_eq!(v, ratio(27, 26));
        // at a pole
        let err = w.evaluate_numeric(&[rat(2), rat(2)]).unwrap_err();
        assert!(matches!(err, Error::PoleHit(_)));
    }

    #[test]
    fn series_geometric() {
        // 1/(1 - q T) at q=3 -> 1, 3, 9, 27
        let w = geom(2, &[1, 1]);
        let c = w.power_series_coeffs(&rat(3), 3).unwrap();
        assert_eq!(c, vec![rat(1), rat(3), rat(9), rat(27)]);
    }

    #[test]
    fn series_two_factor() {
        // 1/((1-T)(1-pT)): coefficient of T^k is sum_{i<=k} p^i
        let w = geom(2, &[0, 1]).div_binomial_factor(&[1, 1]);
        let p = rat(5);
        let c = w.power_series_coeffs(&p, 3).unwrap();
        assert_eq!(c[0], rat(1));
        assert_eq!(c[1], rat(6));
        assert_eq!(c[2], rat(31));
        assert_eq!(c[3], rat(156));
    }

    #[test]
    fn reduction_rules() {
        // red((q-1)/(q^a t^b - 1)) = 1/(a - <b, s>):
        // term -(q-1)/(1 - q^a t^b) since (q^a t^b - 1) = -(1 - q^a t^b)
        let mut w = TermSum::zero(2);
        w.push(Term {
            coeff: rat(-1),
            qone_pow: 1,
            num: vec![0, 0],
            den: vec![vec![2, 3]],
        });
        let top = w.reduce_mod_qminus1().unwrap();
        // expect 1/(2 - 3 s)
        let expected = TopRatFun {
            m: 1,
            terms: vec![TopTerm {
                coeff: rat(1),
                den: vec![LinForm {
                    c0: int(2),
                    cs: vec![int(-3)],
                }],
            }],
        };
        assert!(top.equals(&expected));

        // red(q^{±1} t^{±1}) = 1 and (q-1) * monomial -> 0
        let mut w = TermSum::zero(2);
        w.push(Term {
            coeff: rat(1),
            qone_pow: 0,
            num: vec![-1, 2],
            den: vec![],
        });
        let top = w.reduce_mod_qminus1().unwrap();
        assert!(top.equals(&TopRatFun::constant(1, rat(1))));

        let mut w = TermSum::zero(2);
        w.push(Term {
            coeff: rat(7),
            qone_pow: 2,
            num: vec![3, 0],
            den: vec![],
        });
        assert!(w.reduce_mod_qminus1().unwrap().equals(&TopRatFun::zero(1)));

        // e < d is outside the ring
        let mut w = TermSum::zero(2);
        w.push(Term {
            coeff: rat(1),
            qone_pow: 0,
            num: vec![0, 0],
            den: vec![vec![1, 1]],
        });
        assert!(matches!(
            w.reduce_mod_qminus1(),
            Err(Error::NotInRingM { .. })
        ));
    }

    #[test]
    fn reduction_is_linear() {
        let mk = |c: Rat, e: i64, den: Vec<Vec<i64>>| {
            let mut w = TermSum::zero(2);
            w.push(Term {
                coeff: c,
                qone_pow: e,
                num: vec![1, -1],
                den,
            });
            w
        };
        let w1 = mk(rat(3), 1, vec![vec![1, 2]]);
        let w2 = mk(ratio(-1, 2), 2, vec![vec![1, 0], vec![0, 1]]);
        let lhs = TermSum::combine(&[(rat(5), w1.clone()), (rat(-7), w2.clone())])
            .reduce_mod_qminus1()
            .unwrap();
        let rhs = TopRatFun::combine(&[
            (rat(5), w1.reduce_mod_qminus1().unwrap()),
            (rat(-7), w2.reduce_mod_qminus1().unwrap()),
        ]);
        assert!(lhs.equals(&rhs));
    }

    #[test]
    fn substitution_identity_and_collapse() {
        let w = geom(2, &[1, 1]);
        // identity substitution: c = 0, A = [1]
        let id = w
            .substitute_monomial_affine(&[int(0)], &[vec![int(1)]])
            .unwrap();
        assert!(id.equals(&w));
        // t -> q^-1 collapses (1 - q t)
        let err = w
            .substitute_monomial_affine(&[int(-1)], &[vec![]])
            .unwrap_err();
        assert!(matches!(err, Error::SpecializationCollapse(_)));
    }

    #[test]
    fn series_expansion_matches_geometric_square() {
        // 1/(1-x0)^2 expanded: coefficient of x0^k is k+1
        let w = geom(1, &[1]).div_binomial_factor(&[1]);
        let exp = w.expand_series_var0(4);
        for k in 0..=4i64 {
            assert_eq!(exp[&vec![k]], rat(k + 1));
        }
    }

    #[test]
    fn flip_var0_roundtrip() {
        let w = geom(2, &[1, 1]).add(&geom(2, &[2, -1]).scale(&rat(4)));
        assert!(w.flip_var0().flip_var0().equals(&w));
        // value agreement: W(x) = flip(W)(1/x)
        let v1 = w.evaluate_numeric(&[ratio(1, 3), rat(2)]).unwrap();
        let v2 = w.flip_var0().evaluate_numeric(&[rat(3), rat(2)]).unwrap();
        assert_eq!(v1, v2);
    }

    #[test]
    fn normal_form_matches_evaluation() {
        let w = geom(2, &[1, 1])
            .add(&geom(2, &[1, 0]).scale(&ratio(2, 3)))
            .add(&geom(2, &[2, 1]).scale(&rat(-1)));
        let nf = w.normalize_fraction();
        for (q, t) in [(rat(2), rat(3)), (ratio(1, 5), rat(7)), (rat(4), ratio(-2, 3))] {
            let direct = w.evaluate_numeric(&[q.clone(), t.clone()]).unwrap();
            let num = nf.num.eval(&[q.clone(), t.clone()]);
            let den = nf.den_expanded().eval(&[q, t]);
            assert_eq!(direct * den, num);
        }
    }
}
