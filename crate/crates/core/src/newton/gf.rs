//! Small finite fields `F_(p^e)` for torus point counting: prime fields
//! directly, prime powers through a fixed table of irreducible polynomials
//! (the lexicographically smallest monic irreducible per `(p, e)`).

use crate::error::{Error, Result};

/// Table rows: (p, e, modulus coefficients low -> high, monic of degree e).
const IRREDUCIBLES: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 0, 1, 1]),
    (2, 4, &[1, 0, 0, 1, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 0, 2, 1]),
    (3, 4, &[1, 0, 1, 1, 1]),
    (5, 2, &[1, 1, 1]),
    (5, 3, &[1, 0, 1, 1]),
    (5, 4, &[1, 0, 1, 1, 1]),
    (7, 2, &[1, 0, 1]),
    (7, 3, &[1, 0, 1, 1]),
    (7, 4, &[1, 0, 0, 1, 1]),
    (11, 2, &[1, 0, 1]),
    (11, 3, &[1, 0, 4, 1]),
    (11, 4, &[1, 0, 0, 4, 1]),
    (13, 2, &[1, 3, 1]),
    (13, 3, &[1, 0, 4, 1]),
    (13, 4, &[1, 0, 0, 1, 1]),
];

/// A finite field `F_(p^e)`; elements are coefficient vectors of length `e`.
#[derive(Clone, Debug)]
pub struct Gf {
    pub p: u64,
    pub e: u32,
    modulus: Vec<u64>,
}

pub type GfElem = Vec<u64>;

impl Gf {
    pub fn new(p: u64, e: u32) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{} is not prime", p)));
        }
        if e == 1 {
            return Ok(Gf {
                p,
                e,
                modulus: vec![0, 1],
            });
        }
        let row = IRREDUCIBLES
            .iter()
            .find(|(tp, te, _)| *tp == p && *te == e)
            .ok_or(Error::FieldUnavailable { p, e })?;
        Ok(Gf {
            p,
            e,
            modulus: row.2.to_vec(),
        })
    }

    /// Field size `p^e`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.e)
    }

    pub fn zero(&self) -> GfElem {
        vec![0; self.e as usize]
    }

    pub fn one(&self) -> GfElem {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn from_u64(&self, x: u64) -> GfElem {
        let mut v = self.zero();
        v[0] = x % self.p;
        v
    }

    /// Integer `num/den` embedded into the field; `den` must be a unit.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<GfElem> {
        let p = self.p as i64;
        let d = den.rem_euclid(p) as u64;
        if d == 0 {
            return Err(Error::BadPrime(self.p));
        }
        let n = num.rem_euclid(p) as u64;
        let dinv = mod_inv(d, self.p);
        Ok(self.from_u64(n * dinv % self.p))
    }

    pub fn is_zero(&self, a: &GfElem) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + self.p - y % self.p) % self.p)
            .collect()
    }

    pub fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce modulo the monic modulus
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            let shift = k - e;
            for (j, &m) in self.modulus.iter().take(e).enumerate() {
                let sub = c * m % self.p;
                prod[shift + j] = (prod[shift + j] + self.p - sub) % self.p;
            }
        }
        prod.truncate(e);
        prod
    }

    pub fn pow(&self, a: &GfElem, mut n: u64) -> GfElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &GfElem) -> GfElem {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order() - 2)
    }

    /// `a^n` for signed exponents (negative through the inverse).
    pub fn pow_i64(&self, a: &GfElem, n: i64) -> GfElem {
        if n >= 0 {
            self.pow(a, n as u64)
        } else {
            self.pow(&self.inv(a), (-n) as u64)
        }
    }

    /// All nonzero field elements, in a deterministic order.
    pub fn units(&self) -> Vec<GfElem> {
        let e = self.e as usize;
        let mut out = Vec::with_capacity((self.order() - 1) as usize);
        let mut v = vec![0u64; e];
        loop {
            if !self.is_zero(&v) {
                out.push(v.clone());
            }
            let mut i = 0;
            loop {
                if i == e {
                    return out;
                }
                v[i] += 1;
                if v[i] < self.p {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }

    /// A generator of the multiplicative group, by exhaustive order check.
    pub fn multiplicative_generator(&self) -> GfElem {
        let qm1 = self.order() - 1;
        let divisors: Vec<u64> = (1..qm1).filter(|d| qm1 % d == 0).collect();
        'outer: for u in self.units() {
            for &d in &divisors {
                if self.pow(&u, d) == self.one() {
                    continue 'outer;
                }
            }
            return u;
        }
        unreachable!("the unit group of a finite field is cyclic");
    }

    /// Table of powers `g^0, ..., g^(q-2)` of the generator, plus the
    /// discrete logarithm of every unit (indexed by its position in a
    /// deterministic dense encoding).
    pub fn dlog_tables(&self) -> (Vec<GfElem>, std::collections::BTreeMap<GfElem, u64>) {
        let g = self.multiplicative_generator();
        let qm1 = self.order() - 1;
        let mut powers = Vec::with_capacity(qm1 as usize);
        let mut dlog = std::collections::BTreeMap::new();
        let mut acc = self.one();
        for k in 0..qm1 {
            powers.push(acc.clone());
            dlog.insert(acc.clone(), k);
            acc = self.mul(&acc, &g);
        }
        (powers, dlog)
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat
    let mut acc = 1u64;
    let mut base = a % p;
    let mut n = p - 2;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        n >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
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

/// Factor a prime power `q = p^e`; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            return if m == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force irreducibility over F_p for degrees up to 4: no roots, and
    /// for degree 4 additionally no irreducible quadratic factor.
    fn check_irreducible(p: u64, coeffs: &[u64]) {
        let deg = coeffs.len() - 1;
        let eval = |x: u64| -> u64 {
            let mut v = 0u64;
            for &c in coeffs.iter().rev() {
                v = (v * x + c) % p;
            }
            v
        };
        for x in 0..p {
            assert_ne!(eval(x), 0, "root {} mod {}", x, p);
        }
        if deg == 4 {
            for b in 0..p {
                for c in 0..p {
                    // divide coeffs by x^2 + bx + c
                    let mut rem = coeffs.to_vec();
                    for i in (2..rem.len()).rev() {
                        let f = rem[i];
                        if f == 0 {
                            continue;
                        }
                        rem[i] = 0;
                        rem[i - 1] = (rem[i - 1] + p * p - f * b % (p * p)) % p;
                        rem[i - 2] = (rem[i - 2] + p * p - f * c % (p * p)) % p;
                    }
                    if rem[0] == 0 && rem[1] == 0 {
                        // divisor found; it must be reducible itself
                        let has_root = (0..p).any(|x| (x * x + b * x + c) % p == 0);
                        assert!(
                            has_root,
                            "irreducible quadratic factor x^2+{}x+{} mod {}",
                            b, c, p
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn table_entries_are_irreducible() {
        for (p, _e, coeffs) in IRREDUCIBLES {
            check_irreducible(*p, coeffs);
        }
    }

    #[test]
    fn field_axioms_f9() {
        let f = Gf::new(3, 2).unwrap();
        let units = f.units();
        assert_eq!(units.len(), 8);
        for a in &units {
            let inv = f.inv(a);
            assert_eq!(f.mul(a, &inv), f.one());
            // multiplicative order divides 8
            assert_eq!(f.pow(a, 8), f.one());
        }
    }

    #[test]
    fn field_axioms_f125() {
        let f = Gf::new(5, 3).unwrap();
        assert_eq!(f.units().len(), 124);
        let a = f.from_u64(2);
        let b = {
            let mut v = f.zero();
            v[1] = 1; // the generator x
            v
        };
        let ab = f.mul(&a, &b);
        assert_eq!(f.mul(&ab, &f.inv(&b)), a);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(121), Some((11, 2)));
    }
}
