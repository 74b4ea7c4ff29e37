//! Independent brute-force verifiers: sublattice and subalgebra counting by
//! canonical-form enumeration, congruence solution counting, and direct
//! lattice summation. These are the ground-truth side of the acceptance
//! tests; they must be exact or refuse (no sampling, no approximation).

use crate::algebra::AlgebraPresentation;
use crate::conegen::SubstitutionMatrix;
use crate::error::{Error, Result};
use crate::exactlinalg::{solve_rational, IntMatrix};
use crate::laurent::LaurentPoly;
use crate::numeric::{rat_pow, Int, Rat};
use crate::polyhedra::{closure_rays, HalfOpenCone};
use num::{One, Signed, Zero};
use serde::Serialize;

/// Counts `a_(p^k)` of the defining objects up to index `p^kmax`.
#[derive(Clone, Debug, Serialize)]
pub struct CountTable {
    pub mode: String,
    pub p: u64,
    /// `counts[k]` = number of objects of index `p^k`; `counts[0] = 1`
    pub counts: Vec<String>,
}

/// Enumerate all sublattices of `Z^d` of index `p^k` (`k <= kmax`) through
/// their canonical triangular bases and count those closed under the
/// presentation's operations (products, module generators, or ambient
/// multiplications depending on the mode).
pub fn sublattice_counts(
    pres: &AlgebraPresentation,
    p: u64,
    kmax: u32,
) -> Result<(CountTable, Vec<Int>)> {
    if !crate::newton::is_prime(p) {
        return Err(Error::Invalid(format!("{} is not prime", p)));
    }
    let d = pres.rank;
    // denominators of all constants must be units at p
    let pi = Int::from(p);
    for c in pres.all_constants() {
        if (c.denom() % &pi).is_zero() {
            return Err(Error::BadPrime(p));
        }
    }
    // size guard: count canonical forms first
    let mut total_forms = Int::zero();
    for k in 0..=kmax {
        total_forms += count_hermite_forms(d, p, k);
    }
    if total_forms > Int::from(10_000_000u64) {
        return Err(Error::TooLarge(format!(
            "{} canonical forms of index up to {}^{}",
            total_forms, p, kmax
        )));
    }

    let closure_products = pres.closure_products();
    let mut counts = Vec::with_capacity(kmax as usize + 1);
    for k in 0..=kmax {
        let mut tally = Int::zero();
        enumerate_hermite(d, p, k, &mut |h: &IntMatrix| {
            if lattice_closed(h, &closure_products, p) {
                tally += 1;
            }
        });
        counts.push(tally);
    }
    assert!(counts[0].is_one(), "the full lattice must always be closed");
    let table = CountTable {
        mode: format!("{:?}", pres.mode),
        p,
        counts: counts.iter().map(|c| c.to_string()).collect(),
    };
    Ok((table, counts))
}

fn count_hermite_forms(d: usize, p: u64, k: u32) -> Int {
    // sum over diagonal exponent tuples of prod_j (p^(a_j))^(d - 1 - j):
    // entries below the diagonal in column j range over [0, p^(a_j))
    let mut total = Int::zero();
    compositions_upto(d, k, &mut |a: &[u32]| {
        let mut forms = Int::one();
        for (j, &aj) in a.iter().enumerate() {
            let below = (d - 1 - j) as u32;
            forms *= Int::from(p).pow(aj * below);
        }
        total += forms;
    });
    total
}

fn compositions_upto(parts: usize, total: u32, f: &mut impl FnMut(&[u32])) {
    fn rec(parts: usize, left: u32, acc: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if acc.len() == parts {
            if left == 0 {
                f(acc);
            }
            return;
        }
        for v in 0..=left {
            acc.push(v);
            rec(parts, left - v, acc, f);
            acc.pop();
        }
    }
    rec(parts, total, &mut Vec::new(), f);
}

/// Enumerate lower-triangular canonical bases of index p^k: positive diagonal
/// powers of p, subdiagonal entries reduced modulo the diagonal entry of
/// their column.
fn enumerate_hermite(d: usize, p: u64, k: u32, visit: &mut impl FnMut(&IntMatrix)) {
    compositions_upto(d, k, &mut |a: &[u32]| {
        let diag: Vec<Int> = a.iter().map(|&x| Int::from(p).pow(x)).collect();
        // positions (i, j) with i > j; entry in [0, diag[j])
        let positions: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .collect();
        let mut h = IntMatrix::zero(d, d);
        for i in 0..d {
            h[(i, i)] = diag[i].clone();
        }
        fn fill(
            pos: &[(usize, usize)],
            idx: usize,
            h: &mut IntMatrix,
            diag: &[Int],
            visit: &mut impl FnMut(&IntMatrix),
        ) {
            if idx == pos.len() {
                visit(h);
                return;
            }
            let (i, j) = pos[idx];
            let mut v = Int::zero();
            while v < diag[j] {
                h[(i, j)] = v.clone();
                fill(pos, idx + 1, h, diag, visit);
                v += 1;
            }
            h[(i, j)] = Int::zero();
        }
        fill(&positions, 0, &mut h, &diag, visit);
    });
}

/// Is the row lattice of `h` closed under every product map? Products are
/// given as bilinear/linear images of the lattice basis rows; membership is
/// `p`-local (coordinates of the solution must have denominators prime to p).
fn lattice_closed(h: &IntMatrix, products: &ClosureProducts, p: u64) -> bool {
    let d = h.rows;
    let pi = Int::from(p);
    let ht = h.transpose();
    let member = |v: &[Rat]| -> bool {
        let sol = solve_rational(&ht, v).expect("full-rank lattice basis");
        sol.iter().all(|x| !(x.denom() % &pi).is_zero())
    };
    let row = |i: usize| -> Vec<Rat> {
        (0..d).map(|j| Rat::from_integer(h[(i, j)].clone())).collect()
    };
    match products {
        ClosureProducts::Pairs(c) => {
            for i in 0..d {
                for j in 0..d {
                    let prod = bilinear(c, &row(i), &row(j));
                    if !member(&prod) {
                        return false;
                    }
                }
            }
            true
        }
        ClosureProducts::Linear(mats) => {
            for m in mats {
                for i in 0..d {
                    let img = apply(m, &row(i));
                    if !member(&img) {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// The closure conditions of a presentation, in a directly testable form.
pub enum ClosureProducts {
    /// subalgebra mode: all pairwise products of lattice rows
    Pairs(Vec<Vec<Vec<Rat>>>),
    /// module/ideal mode: images of lattice rows under fixed matrices
    Linear(Vec<Vec<Vec<Rat>>>),
}

fn bilinear(c: &[Vec<Vec<Rat>>], u: &[Rat], v: &[Rat]) -> Vec<Rat> {
    let d = u.len();
    let mut out = vec![Rat::zero(); d];
    for i in 0..d {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..d {
            if v[j].is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o += &u[i] * &v[j] * &c[i][j][k];
            }
        }
    }
    out
}

fn apply(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    let d = v.len();
    (0..d)
        .map(|k| (0..d).map(|i| &v[i] * &m[i][k]).sum())
        .collect()
}

/// Solution counts of `f = 0` modulo `p^k` for `k <= kmax`, by direct
/// enumeration. The polynomial must have nonnegative exponents and
/// `p`-integral coefficients.
pub fn congruence_counts(f: &LaurentPoly, p: u64, kmax: u32) -> Result<(CountTable, Vec<Int>)> {
    if !crate::newton::is_prime(p) {
        return Err(Error::Invalid(format!("{} is not prime", p)));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
        return Err(Error::Invalid(
            "congruence counting needs nonnegative exponents".into(),
        ));
    }
    let n = f.nvars;
    let pi = Int::from(p);
    for c in f.terms.values() {
        if (c.denom() % &pi).is_zero() {
            return Err(Error::BadPrime(p));
        }
    }
    let size = Int::from(p).pow(kmax * n as u32);
    if size > Int::from(100_000_000u64) {
        return Err(Error::TooLarge(format!("p^(k*n) = {}", size)));
    }
    let mut counts = vec![Int::one()]; // N_0 = 1 (empty congruence)
    for k in 1..=kmax {
        let modulus = Int::from(p).pow(k);
        let m = u64::try_from(&modulus).map_err(|_| Error::TooLarge("modulus".into()))?;
        // coefficients mod p^k
        let coeffs: Vec<(Vec<i64>, u64)> = f
            .terms
            .iter()
            .map(|(e, c)| {
                let num = num::Integer::mod_floor(&(c.numer() % &modulus), &modulus);
                let den = num::Integer::mod_floor(&(c.denom() % &modulus), &modulus);
                let dinv = mod_inverse(u64::try_from(&den).unwrap(), m)
                    .expect("denominator is a unit");
                let cm = u64::try_from(&num).unwrap() as u128 * dinv as u128 % m as u128;
                (e.clone(), cm as u64)
            })
            .collect();
        let mut count = Int::zero();
        let mut x = vec![0u64; n];
        loop {
            let mut acc: u128 = 0;
            for (e, c) in &coeffs {
                let mut term = *c as u128;
                for (xi, &ei) in x.iter().zip(e) {
                    term = term * pow_mod(*xi, ei as u64, m) as u128 % m as u128;
                }
                acc = (acc + term) % m as u128;
            }
            if acc == 0 {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    counts.push(count.clone());
                    break;
                }
                x[i] += 1;
                if x[i] < m {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    let table = CountTable {
        mode: "congruence".into(),
        p,
        counts: counts.iter().map(|c| c.to_string()).collect(),
    };
    Ok((table, counts))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut bb = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % m as u128;
        }
        bb = bb * bb % m as u128;
        e >>= 1;
    }
    b = acc as u64;
    b
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    // extended Euclid
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Verify the congruence identity relating solution counts to the one-variable
/// local zeta function: with `Z(T)` the zeta function of `f` at `q = p` and
/// `N_k` the counts, the series `(1 - T Z(T))/(1 - T)` must agree with
/// `sum_k N_k p^(-n k) T^k` through order `kmax`.
pub fn congruence_identity_check(
    zeta: &crate::ratfun::TermSum,
    p: u64,
    n: usize,
    counts: &[Int],
) -> Result<bool> {
    let kmax = counts.len() - 1;
    let q = Rat::from_integer(Int::from(p));
    let z = zeta.power_series_coeffs(&q, kmax)?;
    // lhs_k = coefficient of T^k in (1 - T Z)/(1 - T) = 1 - sum_(i<k) z_i + ...:
    // (1 - T Z(T)) * (1 + T + T^2 + ...) => lhs_k = 1 - sum_(i <= k-1) z_i
    let mut lhs = Vec::with_capacity(kmax + 1);
    let mut partial = Rat::zero();
    for k in 0..=kmax {
        lhs.push(Rat::one() - partial.clone());
        if k < kmax {
            partial += &z[k];
        }
    }
    for (k, nk) in counts.iter().enumerate() {
        let rhs = Rat::from_integer(nk.clone()) * rat_pow(&q, -((n * k) as i64));
        if lhs[k] != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finite truncation of the substituted lattice-point sum of a cone: sum of
/// `point^(omega A)` over `omega` in the cone with `<1, omega> <= bound`.
/// The closure must lie in the nonnegative orthant, which makes the
/// enumeration complete.
pub fn cone_partial_sum(
    c0: &HalfOpenCone,
    a: &SubstitutionMatrix,
    bound: i64,
    point: &[Rat],
) -> Result<Rat> {
    assert_eq!(point.len(), a.ncols);
    if c0.witness().is_none() {
        return Ok(Rat::zero());
    }
    let (rays, _) = closure_rays(c0)?;
    for r in &rays {
        if r.iter().any(|x| x.is_negative()) {
            return Err(Error::Invalid(
                "partial sums need a cone inside the nonnegative orthant".into(),
            ));
        }
    }
    let n = c0.ambient_dim;
    let mut acc = Rat::zero();
    let mut idx = vec![0i64; n];
    loop {
        if idx.iter().sum::<i64>() <= bound {
            let x: Vec<Int> = idx.iter().map(|&v| Int::from(v)).collect();
            if c0.contains(&x) {
                let img = a.apply(&x);
                let mut term = Rat::one();
                for (p, e) in point.iter().zip(&img) {
                    term *= rat_pow(p, crate::ratfun::to_i64(e));
                }
                acc += term;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(acc);
            }
            idx[i] += 1;
            if idx[i] <= bound {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
