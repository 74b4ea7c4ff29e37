//! Rational functions in the `s`-variables written as sums of constants over
//! products of linear forms, with a normalized single-fraction form and exact
//! pole/zero analysis for the univariate case.

use crate::laurent::LaurentPoly;
use crate::numeric::{primitivize, Int, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Integer linear form `c0 + c1 s_1 + ... + cm s_m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinForm {
    pub c0: Int,
    pub cs: Vec<Int>,
}

impl LinForm {
    pub fn is_constant(&self) -> bool {
        self.cs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, s: &[Rat]) -> Rat {
        let mut v = Rat::from_integer(self.c0.clone());
        for (c, x) in self.cs.iter().zip(s) {
            v += Rat::from_integer(c.clone()) * x;
        }
        v
    }

    /// Divide out the content; returns the content (a positive rational of
    /// shape k or 1/1 times sign) such that `self = content * primitive`.
    fn make_primitive(&mut self) -> Rat {
        let mut all: Vec<Int> = vec![self.c0.clone()];
        all.extend(self.cs.iter().cloned());
        let prim = primitivize(&all);
        if prim == all {
            return Rat::one();
        }
        // content = old / new on the first nonzero coordinate
        let idx = all.iter().position(|x| !x.is_zero()).unwrap();
        let content = Rat::new(all[idx].clone(), prim[idx].clone());
        self.c0 = prim[0].clone();
        self.cs = prim[1..].to_vec();
        content
    }

    pub fn as_poly(&self, m: usize) -> LaurentPoly {
        let mut p = LaurentPoly::constant(m, Rat::from_integer(self.c0.clone()));
        for (j, c) in self.cs.iter().enumerate() {
            let mut e = vec![0i64; m];
            e[j] = 1;
            p.add_term(&e, &Rat::from_integer(c.clone()));
        }
        p
    }
}

/// One term `coeff / prod(linear forms)`.
#[derive(Clone, Debug)]
pub struct TopTerm {
    pub coeff: Rat,
    pub den: Vec<LinForm>,
}

/// Sum of [`TopTerm`]s in `m` variables `s_1, ..., s_m`.
#[derive(Clone, Debug)]
pub struct TopRatFun {
    pub m: usize,
    pub terms: Vec<TopTerm>,
}

impl TopRatFun {
    pub fn zero(m: usize) -> Self {
        TopRatFun { m, terms: vec![] }
    }

    pub fn constant(m: usize, c: Rat) -> Self {
        let mut f = Self::zero(m);
        f.push(TopTerm {
            coeff: c,
            den: vec![],
        });
        f
    }

    /// Push a term, normalizing each linear form to primitive integer
    /// coefficients with positive leading `s`-coefficient (constant forms are
    /// folded into the coefficient).
    pub fn push(&mut self, t: TopTerm) {
        if t.coeff.is_zero() {
            return;
        }
        let mut coeff = t.coeff;
        let mut den = Vec::with_capacity(t.den.len());
        for mut f in t.den {
            assert_eq!(f.cs.len(), self.m);
            if f.is_constant() {
                assert!(!f.c0.is_zero(), "zero linear form in denominator");
                coeff /= Rat::from_integer(f.c0.clone());
                continue;
            }
            let content = f.make_primitive();
            coeff /= content;
            // sign: first nonzero s-coefficient positive
            if f.cs.iter().find(|c| !c.is_zero()).unwrap().is_negative() {
                f.c0 = -f.c0;
                for c in f.cs.iter_mut() {
                    *c = -c.clone();
                }
                coeff = -coeff;
            }
            den.push(f);
        }
        den.sort();
        self.terms.push(TopTerm { coeff, den });
    }

    pub fn combine(ws: &[(Rat, TopRatFun)]) -> TopRatFun {
        assert!(!ws.is_empty());
        let m = ws[0].1.m;
        let mut out = TopRatFun::zero(m);
        for (c, w) in ws {
            assert_eq!(w.m, m);
            for t in &w.terms {
                out.push(TopTerm {
                    coeff: c * &t.coeff,
                    den: t.den.clone(),
                });
            }
        }
        out
    }

    pub fn add(&self, other: &TopRatFun) -> TopRatFun {
        TopRatFun::combine(&[(Rat::one(), self.clone()), (Rat::one(), other.clone())])
    }

    pub fn scale(&self, c: &Rat) -> TopRatFun {
        TopRatFun::combine(&[(c.clone(), self.clone())])
    }

    /// Affine substitution `s_j -> <A_j, s~> - c_j`, the shadow of the
    /// monomial substitution `t_j -> q^(c_j) t~^(A_j)` on the local side.
    pub fn substitute_affine(&self, c: &[Int], a: &[Vec<Int>]) -> TopRatFun {
        assert_eq!(c.len(), self.m);
        assert_eq!(a.len(), self.m);
        let r = if self.m == 0 { 0 } else { a[0].len() };
        let mut out = TopRatFun::zero(r);
        for t in &self.terms {
            let den = t
                .den
                .iter()
                .map(|f| {
                    // c0 + sum_j cs_j s_j with s_j = <A_j, s~> - c_j
                    let mut c0 = f.c0.clone();
                    let mut cs = vec![Int::zero(); r];
                    for (j, fc) in f.cs.iter().enumerate() {
                        c0 -= fc * &c[j];
                        for k in 0..r {
                            cs[k] += fc * &a[j][k];
                        }
                    }
                    LinForm { c0, cs }
                })
                .collect();
            out.push(TopTerm {
                coeff: t.coeff.clone(),
                den,
            });
        }
        out
    }

    pub fn evaluate(&self, s: &[Rat]) -> Option<Rat> {
        let mut acc = Rat::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for f in &t.den {
                let d = f.eval(s);
                if d.is_zero() {
                    return None;
                }
                v /= d;
            }
            acc += v;
        }
        Some(acc)
    }

    /// Normalized single fraction `scalar * num / prod(form^mult)` with a
    /// primitive integer numerator and maximally cancelled linear factors.
    pub fn normalize(&self) -> TopNormal {
        let mut common: BTreeMap<LinForm, u32> = BTreeMap::new();
        for t in &self.terms {
            let mut counts: BTreeMap<&LinForm, u32> = BTreeMap::new();
            for f in &t.den {
                *counts.entry(f).or_insert(0) += 1;
            }
            for (f, c) in counts {
                let e = common.entry(f.clone()).or_insert(0);
                *e = (*e).max(c);
            }
        }
        let mut num = LaurentPoly::zero(self.m);
        for t in &self.terms {
            let mut counts: BTreeMap<&LinForm, u32> = BTreeMap::new();
            for f in &t.den {
                *counts.entry(f).or_insert(0) += 1;
            }
            let mut part = LaurentPoly::constant(self.m, t.coeff.clone());
            for (f, &mc) in &common {
                let have = counts.get(f).copied().unwrap_or(0);
                for _ in have..mc {
                    part = part.mul(&f.as_poly(self.m));
                }
            }
            num = num.add(&part);
        }
        let mut den: Vec<(LinForm, u32)> = common.into_iter().collect();
        if num.is_zero() {
            return TopNormal {
                m: self.m,
                scalar: Rat::zero(),
                num: LaurentPoly::zero(self.m),
                den: vec![],
            };
        }
        for (f, mult) in den.iter_mut() {
            while *mult > 0 {
                match div_by_linear(&num, f) {
                    Some(q) => {
                        num = q;
                        *mult -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|(_, m)| *m > 0);
        let scalar = num.rational_content();
        let num = num.scale(&scalar.clone().recip());
        TopNormal {
            m: self.m,
            scalar,
            num,
            den,
        }
    }

    pub fn equals(&self, other: &TopRatFun) -> bool {
        assert_eq!(self.m, other.m);
        let a = self.normalize();
        let b = other.normalize();
        a.num
            .scale(&a.scalar)
            .mul(&b.den_expanded())
            == b.num.scale(&b.scalar).mul(&a.den_expanded())
    }

    pub fn is_zero_fun(&self) -> bool {
        self.normalize().scalar.is_zero()
    }
}

/// Normalized fraction for a [`TopRatFun`].
#[derive(Clone, Debug)]
pub struct TopNormal {
    pub m: usize,
    pub scalar: Rat,
    /// primitive integer-coefficient numerator with positive leading term
    pub num: LaurentPoly,
    /// distinct primitive linear forms with multiplicities, sorted
    pub den: Vec<(LinForm, u32)>,
}

impl TopNormal {
    pub fn den_expanded(&self) -> LaurentPoly {
        let mut d = LaurentPoly::one(self.m);
        for (f, mult) in &self.den {
            for _ in 0..*mult {
                d = d.mul(&f.as_poly(self.m));
            }
        }
        d
    }

    /// Total degree in `s` (numerator degree minus denominator degree);
    /// univariate only.
    pub fn degree(&self) -> i64 {
        assert_eq!(self.m, 1);
        let nd = self.num.terms.keys().map(|e| e[0]).max().unwrap_or(0);
        let dd: i64 = self.den.iter().map(|(_, m)| *m as i64).sum();
        nd - dd
    }

    /// Pole locations with orders (univariate).
    pub fn poles(&self) -> Vec<(Rat, u32)> {
        assert_eq!(self.m, 1);
        self.den
            .iter()
            .map(|(f, m)| {
                (
                    -Rat::new(f.c0.clone(), f.cs[0].clone()),
                    *m,
                )
            })
            .collect()
    }

    /// Exact residue at a simple pole `s0` (univariate): multiply by the
    /// vanishing factor and evaluate.
    pub fn residue_at_simple_pole(&self, s0: &Rat) -> Option<Rat> {
        assert_eq!(self.m, 1);
        let mut vanishing: Option<&LinForm> = None;
        for (f, mult) in &self.den {
            if f.eval(std::slice::from_ref(s0)).is_zero() {
                if *mult != 1 || vanishing.is_some() {
                    return None; // not a simple pole
                }
                vanishing = Some(f);
            }
        }
        let f0 = vanishing?;
        let mut v = &self.scalar * self.num.eval(std::slice::from_ref(s0));
        for (f, mult) in &self.den {
            if f == f0 {
                continue;
            }
            let d = f.eval(std::slice::from_ref(s0));
            for _ in 0..*mult {
                v /= d.clone();
            }
        }
        // (s - s0) / (c0 + c1 s) = 1/c1
        v /= Rat::from_integer(f0.cs[0].clone());
        Some(v)
    }

    /// Rational zeros of the numerator (univariate), by the rational root
    /// theorem on the primitive integer polynomial.
    pub fn rational_zeros(&self) -> Vec<Rat> {
        assert_eq!(self.m, 1);
        rational_roots_univariate(&self.num)
    }
}

fn div_by_linear(f: &LaurentPoly, ell: &LinForm) -> Option<LaurentPoly> {
    if f.is_zero() {
        return Some(f.clone());
    }
    let m = f.nvars;
    let j = ell.cs.iter().position(|c| !c.is_zero())?;
    let lc = Rat::from_integer(ell.cs[j].clone());
    // long division with respect to s_j
    let maxdeg = f.terms.keys().map(|e| e[j]).max().unwrap_or(0);
    let mut rem = f.clone();
    let mut quot = LaurentPoly::zero(m);
    for k in (1..=maxdeg).rev() {
        // slice of remainder with s_j-degree exactly k
        let slice: Vec<(Vec<i64>, Rat)> = rem
            .terms
            .iter()
            .filter(|(e, _)| e[j] == k)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        for (e, c) in slice {
            let mut qe = e.clone();
            qe[j] -= 1;
            let qc = &c / &lc;
            quot.add_term(&qe, &qc);
            // rem -= qc * s^qe * ell
            let ell_poly = ell.as_poly(m);
            let sub = ell_poly.mul_monomial(&qe, &qc);
            rem = rem.sub(&sub);
        }
    }
    if rem.is_zero() {
        Some(quot)
    } else {
        None
    }
}

fn rational_roots_univariate(p: &LaurentPoly) -> Vec<Rat> {
    assert_eq!(p.nvars, 1);
    if p.is_zero() {
        return vec![];
    }
    let lead = p.terms.keys().map(|e| e[0]).max().unwrap();
    let trail = p.terms.keys().map(|e| e[0]).min().unwrap();
    if lead == trail {
        return vec![]; // monomial
    }
    // integer coefficients (content-free assumed)
    let lc = p.terms[&vec![lead]].numer().clone();
    let tc = p.terms[&vec![trail]].numer().clone();
    let mut roots = Vec::new();
    for dn in divisors(&tc.abs()) {
        for dl in divisors(&lc.abs()) {
            for sign in [1i64, -1] {
                let cand = Rat::new(&dn * Int::from(sign), dl.clone());
                if p.eval(std::slice::from_ref(&cand)).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &Int) -> Vec<Int> {
    assert!(!n.is_zero());
    let mut out = Vec::new();
    let mut d = Int::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Univariate polynomial as dense rational coefficient vector (low to high).
fn dense_coeffs(p: &LaurentPoly) -> Vec<Rat> {
    assert_eq!(p.nvars, 1);
    let deg = p.terms.keys().map(|e| e[0]).max().unwrap_or(0);
    assert!(p.terms.keys().all(|e| e[0] >= 0));
    let mut c = vec![Rat::zero(); (deg + 1) as usize];
    for (e, v) in &p.terms {
        c[e[0] as usize] = v.clone();
    }
    c
}

/// Number of distinct real roots of `p` in the open interval `(a, b)` by a
/// Sturm chain; endpoints must not be roots.
pub fn sturm_roots_in_interval(p: &LaurentPoly, a: &Rat, b: &Rat) -> usize {
    let coeffs = dense_coeffs(p);
    if coeffs.len() <= 1 {
        return 0;
    }
    assert!(
        !eval_dense(&coeffs, a).is_zero() && !eval_dense(&coeffs, b).is_zero(),
        "interval endpoint is a root"
    );
    // square-free part
    let deriv = derivative_dense(&coeffs);
    let g = gcd_dense(&coeffs, &deriv);
    let sf = div_dense(&coeffs, &g);
    let mut chain = vec![sf.clone(), derivative_dense(&sf)];
    loop {
        let last = &chain[chain.len() - 1];
        if last.iter().all(|c| c.is_zero()) {
            chain.pop();
            break;
        }
        if last.len() <= 1 {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let rem = rem_dense(prev, last);
        if rem.iter().all(|c| c.is_zero()) {
            break;
        }
        chain.push(rem.iter().map(|c| -c.clone()).collect());
    }
    let variations = |x: &Rat| -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|p| {
                let v = eval_dense(p, x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    variations(a) - variations(b)
}

fn eval_dense(c: &[Rat], x: &Rat) -> Rat {
    let mut v = Rat::zero();
    for k in c.iter().rev() {
        v = v * x + k;
    }
    v
}

fn derivative_dense(c: &[Rat]) -> Vec<Rat> {
    if c.len() <= 1 {
        return vec![Rat::zero()];
    }
    (1..c.len())
        .map(|k| &c[k] * Rat::from_integer(Int::from(k as i64)))
        .collect()
}

fn trim(mut c: Vec<Rat>) -> Vec<Rat> {
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
    c
}

fn rem_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let f = r.last().unwrap() / &lb;
        for i in 0..=db {
            let idx = dr - db + i;
            let delta = &f * &b[i];
            r[idx] = &r[idx] - &delta;
        }
        r = trim(r);
        if dr == db {
            break;
        }
    }
    r
}

fn div_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    if r.len() <= db {
        return vec![Rat::zero()];
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let f = r.last().unwrap() / &lb;
        q[dr - db] = f.clone();
        for i in 0..=db {
            let idx = dr - db + i;
            let delta = &f * &b[i];
            r[idx] = &r[idx] - &delta;
        }
        r = trim(r);
        if dr == db {
            break;
        }
    }
    q
}

fn gcd_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = rem_dense(&x, &y);
        x = y;
        y = trim(r);
    }
    // make monic
    let lead = x.last().unwrap().clone();
    if !lead.is_zero() {
        for c in x.iter_mut() {
            *c /= lead.clone();
        }
    }
    x
}

/// Routh-Hurwitz certificate that every root of `p` (univariate, integer or
/// rational coefficients) has negative real part. `Some(true)`: certified
/// stable; `Some(false)`: certified a root with nonnegative real part exists;
/// `None`: degenerate array, no certificate.
pub fn hurwitz_stable(p: &LaurentPoly) -> Option<bool> {
    let c = dense_coeffs(p);
    let n = c.len() - 1;
    if n == 0 {
        return Some(true);
    }
    if c.iter().any(|x| x.is_zero()) && n >= 1 {
        // a zero coefficient already rules out strict Hurwitz stability for
        // real polynomials of degree >= 2 with positive leading coefficient,
        // but handle it through the array for uniformity below
    }
    // build rows high to low: row0 = a_n, a_{n-2}, ...; row1 = a_{n-1}, ...
    let cols = n / 2 + 1;
    let take = |start: i64| -> Vec<Rat> {
        (0..cols)
            .map(|k| {
                let idx = start - 2 * k as i64;
                if idx >= 0 {
                    c[idx as usize].clone()
                } else {
                    Rat::zero()
                }
            })
            .collect()
    };
    let mut rows = vec![take(n as i64), take(n as i64 - 1)];
    if rows[1].iter().all(|x| x.is_zero()) {
        return if n == 1 { Some(true) } else { None };
    }
    for _ in 2..=n {
        let prev = rows[rows.len() - 1].clone();
        let prev2 = rows[rows.len() - 2].clone();
        if prev[0].is_zero() {
            return None; // degenerate pivot
        }
        let row: Vec<Rat> = (0..cols)
            .map(|k| {
                let a = prev2.get(k + 1).cloned().unwrap_or_else(Rat::zero);
                let b = prev.get(k + 1).cloned().unwrap_or_else(Rat::zero);
                (&prev[0] * &a - &prev2[0] * &b) / &prev[0]
            })
            .collect();
        if row.iter().all(|x| x.is_zero()) {
            return None; // symmetric root pattern (imaginary-axis roots)
        }
        rows.push(row);
    }
    let mut signs = Vec::new();
    for r in &rows {
        let v = &r[0];
        if v.is_zero() {
            return None;
        }
        signs.push(v.is_positive());
    }
    Some(signs.windows(2).all(|w| w[0] == w[1]))
}

/// Certificate that every root (real or complex) of `p` has real part in the
/// open interval `(lo, hi)`.
pub fn roots_real_parts_in(p: &LaurentPoly, lo: &Rat, hi: &Rat) -> Option<bool> {
    assert_eq!(p.nvars, 1);
    let deg = p.terms.keys().map(|e| e[0]).max().unwrap_or(0);
    if deg == 0 {
        return Some(true);
    }
    // roots of p have Re > lo  iff  s -> p(lo - s) is Hurwitz stable
    // (w root of shifted poly iff lo - w root of p iff Re(root) = lo - Re(w))
    let shift_reflect = |a: &Rat, reflect: bool| -> LaurentPoly {
        // compute p(a + (reflect ? -1 : 1) * s) by binomial expansion
        let mut out = LaurentPoly::zero(1);
        for (e, c) in &p.terms {
            let k = e[0] as u32;
            // (a ± s)^k
            let mut pw = LaurentPoly::constant(1, Rat::one());
            let lin = {
                let mut l = LaurentPoly::constant(1, a.clone());
                l.add_term(
                    &[1],
                    &if reflect { -Rat::one() } else { Rat::one() },
                );
                l
            };
            for _ in 0..k {
                pw = pw.mul(&lin);
            }
            out = out.add(&pw.scale(c));
        }
        out
    };
    let left = hurwitz_stable(&shift_reflect(lo, true))?; // p(lo - s) stable <=> all Re > lo
    let right = hurwitz_stable(&shift_reflect(hi, false))?; // p(hi + s) stable <=> all Re < hi
    Some(left && right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat, ratio};

    fn upoly(coeffs: &[i64]) -> LaurentPoly {
        // coeffs low -> high
        let mut p = LaurentPoly::zero(1);
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(&[k as i64], &rat(c));
        }
        p
    }

    fn lf(c0: i64, c1: i64) -> LinForm {
        LinForm {
            c0: int(c0),
            cs: vec![int(c1)],
        }
    }

    #[test]
    fn normalize_single_fraction() {
        // 1/(s(s-1)) = 1/(s-1) - 1/s as a term sum
        let mut f = TopRatFun::zero(1);
        f.push(TopTerm {
            coeff: rat(1),
            den: vec![lf(-1, 1)],
        });
        f.push(TopTerm {
            coeff: rat(-1),
            den: vec![lf(0, 1)],
        });
        let mut g = TopRatFun::zero(1);
        g.push(TopTerm {
            coeff: rat(1),
            den: vec![lf(0, 1), lf(-1, 1)],
        });
        assert!(f.equals(&g));
        let n = g.normalize();
        assert_eq!(n.scalar, rat(1));
        assert_eq!(n.den.len(), 2);
    }

    #[test]
    fn cancellation_in_normalize() {
        // (s - 1)/( (s-1) s ) collapses to 1/s
        let mut f = TopRatFun::zero(1);
        // write as (1/s) + (-1/(s(s-1))) + (1/(s-1)) ... simpler: build the
        // sum s/(s(s-1)) - 1/(s(s-1)) which is (s-1)/(s(s-1)) = 1/s.
        f.push(TopTerm {
            coeff: rat(1),
            den: vec![lf(-1, 1)],
        }); // 1/(s-1)
        f.push(TopTerm {
            coeff: rat(-1),
            den: vec![lf(0, 1), lf(-1, 1)],
        }); // -1/(s(s-1))
        let n = f.normalize();
        // expect 1/s
        assert_eq!(n.den.len(), 1);
        assert_eq!(n.den[0].0, lf(0, 1));
        assert!(n.num.eval(&[rat(7)]).is_one());
    }

    #[test]
    fn affine_substitution_shifts() {
        // F = 1/s1 with s1 -> s - 2 gives 1/(s - 2)
        let mut f = TopRatFun::zero(1);
        f.push(TopTerm {
            coeff: rat(1),
            den: vec![lf(0, 1)],
        });
        let g = f.substitute_affine(&[int(2)], &[vec![int(1)]]);
        let got = g.evaluate(&[rat(5)]).unwrap();
        assert_eq!(got, ratio(1, 3));
    }

    #[test]
    fn degree_poles_residue() {
        // H = 3/(2 (2s-3)(s-1)s): degree -3, simple pole at 0, residue 1/2
        let mut f = TopRatFun::zero(1);
        f.push(TopTerm {
            coeff: ratio(3, 2),
            den: vec![lf(-3, 2), lf(-1, 1), lf(0, 1)],
        });
        let n = f.normalize();
        assert_eq!(n.degree(), -3);
        let poles = n.poles();
        assert!(poles.contains(&(rat(0), 1)));
        assert!(poles.contains(&(rat(1), 1)));
        assert!(poles.contains(&(ratio(3, 2), 1)));
        let r = n.residue_at_simple_pole(&rat(0)).unwrap();
        // 3/(2 * (-3) * (-1)) = 1/2
        assert_eq!(r, ratio(1, 2));
    }

    #[test]
    fn zd_style_poles() {
        // 1/(s(s-1)(s-2)): poles exactly {0,1,2}, all simple
        let mut f = TopRatFun::zero(1);
        f.push(TopTerm {
            coeff: rat(1),
            den: vec![lf(0, 1), lf(-1, 1), lf(-2, 1)],
        });
        let n = f.normalize();
        let mut poles = n.poles();
        poles.sort();
        assert_eq!(poles, vec![(rat(0), 1), (rat(1), 1), (rat(2), 1)]);
        assert_eq!(n.degree(), -3);
    }

    #[test]
    fn sturm_counts() {
        // (s-1)(s-2)(s+3) = s^3 - 7s + 6
        let p = upoly(&[6, -7, 0, 1]);
        assert_eq!(sturm_roots_in_interval(&p, &rat(0), &ratio(5, 2)), 2);
        assert_eq!(sturm_roots_in_interval(&p, &rat(-4), &rat(3)), 3);
        assert_eq!(sturm_roots_in_interval(&p, &ratio(3, 2), &rat(3)), 1);
    }

    #[test]
    fn sturm_with_repeated_roots() {
        // (s-1)^2 (s+1): square-free part handles multiplicity
        let p = upoly(&[1, -1, -1, 1]);
        assert_eq!(sturm_roots_in_interval(&p, &rat(0), &rat(2)), 1);
        assert_eq!(sturm_roots_in_interval(&p, &rat(-2), &rat(2)), 2);
    }

    #[test]
    fn hurwitz_basic() {
        // (s+1)(s+2) stable
        assert_eq!(hurwitz_stable(&upoly(&[2, 3, 1])), Some(true));
        // (s-1)(s+2) unstable
        assert_eq!(hurwitz_stable(&upoly(&[-2, 1, 1])), Some(false));
        // s^2 + 1: imaginary-axis roots -> degenerate
        assert_eq!(hurwitz_stable(&upoly(&[1, 0, 1])), None);
        // complex pair with negative real part: s^2 + 2s + 5
        assert_eq!(hurwitz_stable(&upoly(&[5, 2, 1])), Some(true));
    }

    #[test]
    fn real_part_window() {
        // 3s - 1: root 1/3 in (0, 2)
        assert_eq!(roots_real_parts_in(&upoly(&[-1, 3]), &rat(0), &rat(2)), Some(true));
        assert_eq!(roots_real_parts_in(&upoly(&[-1, 3]), &ratio(1, 2), &rat(2)), Some(false));
        // complex pair 1 ± 2i: s^2 - 2s + 5, window (0, 3)
        assert_eq!(roots_real_parts_in(&upoly(&[5, -2, 1]), &rat(0), &rat(3)), Some(true));
        assert_eq!(roots_real_parts_in(&upoly(&[5, -2, 1]), &rat(2), &rat(3)), Some(false));
        // constant numerator: vacuous
        assert_eq!(roots_real_parts_in(&upoly(&[14]), &rat(0), &rat(1)), Some(true));
    }

    #[test]
    fn rational_zero_extraction() {
        let mut f = TopRatFun::zero(1);
        // (3s-1)/(s(s-1)): zero at 1/3
        f.push(TopTerm {
            coeff: rat(3),
            den: vec![lf(0, 1)],
        });
        f.push(TopTerm {
            coeff: rat(2),
            den: vec![lf(0, 1), lf(-1, 1)],
        });
        // 3/s + 2/(s(s-1)) = (3(s-1) + 2)/(s(s-1)) = (3s-1)/(s(s-1))
        let n = f.normalize();
        assert_eq!(n.rational_zeros(), vec![ratio(1, 3)]);
    }
}
