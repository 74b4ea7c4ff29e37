//! Arbitrary-precision scalar types and small helpers shared across modules.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational.
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Int], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| Rat::from_integer(x.clone()) * y)
        .sum()
}

pub fn add_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_vec(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

pub fn gcd_int(a: &Int, b: &Int) -> Int {
    num::integer::gcd(a.clone(), b.clone())
}

/// Greatest common divisor of all entries; 0 for an all-zero slice.
pub fn content(v: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in v {
        g = gcd_int(&g, x);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divide out the content and flip signs so the first nonzero entry is positive.
/// The zero vector is returned unchanged.
pub fn primitivize(v: &[Int]) -> Vec<Int> {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    let mut w: Vec<Int> = v.iter().map(|x| x / &g).collect();
    if let Some(first) = w.iter().find(|x| !x.is_zero()) {
        if first.sign() == Sign::Minus {
            for x in w.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    w
}

/// Clear denominators of a rational vector, returning a primitive integer vector
/// with the same direction.
pub fn primitive_direction(v: &[Rat]) -> Vec<Int> {
    primitivize(&scale_to_int(v))
}

/// Divide an integer vector by its content, keeping the orientation. Rays of
/// cones go through here: flipping signs would leave the cone.
pub fn primitive_ray(v: &[Int]) -> Vec<Int> {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Positive scaling of a rational vector to a primitive integer vector.
pub fn primitive_ray_rat(v: &[Rat]) -> Vec<Int> {
    primitive_ray(&scale_to_int(v))
}

fn scale_to_int(v: &[Rat]) -> Vec<Int> {
    let mut l = Int::one();
    for x in v {
        l = num::integer::lcm(l, x.denom().clone());
    }
    v.iter().map(|x| x.numer() * &l / x.denom()).collect()
}

/// Exact integer power of a rational (negative exponents allowed away from 0).
pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let p = x.pow(e.unsigned_abs() as i32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn factorial(n: u64) -> Int {
    let mut f = Int::one();
    for k in 2..=n {
        f *= Int::from(k);
    }
    f
}

/// Prime factors of |n| (n must be nonzero), without multiplicity.
pub fn prime_factors(n: &Int) -> Vec<Int> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "prime_factors of zero");
    let mut out = Vec::new();
    let mut p = Int::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n = &n / &p;
            }
        }
        p += 1;
    }
    if n > Int::one() {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitivize_basics() {
        assert_eq!(primitivize(&[int(2), int(4)]), vec![int(1), int(2)]);
        assert_eq!(primitivize(&[int(-3), int(6)]), vec![int(1), int(-2)]);
        assert_eq!(primitivize(&[int(0), int(0)]), vec![int(0), int(0)]);
    }

    #[test]
    fn prime_factor_small() {
        assert_eq!(prime_factors(&int(12)), vec![int(2), int(3)]);
        assert_eq!(prime_factors(&int(-7)), vec![int(7)]);
    }
}
