//! Double description: extreme rays of a pointed rational cone given by
//! homogeneous inequalities.

use crate::error::{Error, Result};
use crate::exactlinalg::IntMatrix;
use crate::numeric::{dot, primitive_ray, primitive_ray_rat, Int, Rat};
use num::{Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
struct ZeroSet {
    words: Vec<u64>,
}

impl ZeroSet {
    fn new(len: usize) -> Self {
        ZeroSet {
            words: vec![0; len.div_ceil(64)],
        }
    }
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn intersect(&self, other: &Self) -> Self {
        ZeroSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }
    fn is_subset_of(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<Int>,
    zeros: ZeroSet,
}

/// Extreme rays of `{ y : <h, y> >= 0 for h in ineqs }`, which must be a
/// pointed cone. Rays are primitive integer vectors, sorted lexicographically.
/// Inequalities that are identically zero are ignored; an empty result means
/// the cone is `{0}`.
pub fn extreme_rays(dim: usize, ineqs: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
    let ineqs: Vec<Vec<Int>> = ineqs
        .iter()
        .filter(|h| h.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if dim == 0 {
        return Ok(vec![]);
    }
    let m = IntMatrix::from_rows(&ineqs);
    if ineqs.is_empty() || m.rank() < dim {
        return Err(Error::NotPointed);
    }

    // initial simplicial cone from dim independent normals; reorder so the
    // basis inequalities are processed first (the adjacency test below needs
    // the zero sets to describe the current cone completely)
    let basis_idx = independent_rows(&m, dim);
    let ineqs: Vec<Vec<Int>> = {
        let mut reordered: Vec<Vec<Int>> =
            basis_idx.iter().map(|&i| ineqs[i].clone()).collect();
        for (i, h) in ineqs.iter().enumerate() {
            if !basis_idx.contains(&i) {
                reordered.push(h.clone());
            }
        }
        reordered
    };
    let basis_idx: Vec<usize> = (0..dim).collect();
    let basis = IntMatrix::from_rows(&basis_idx.iter().map(|&i| ineqs[i].clone()).collect::<Vec<_>>());
    let inv = rational_inverse(&basis);
    // columns of inv are rays of the simplicial cone {basis * y >= 0}
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col: Vec<Rat> = (0..dim).map(|i| inv[i][j].clone()).collect();
            primitive_ray_rat(&col)
        })
        .map(|v| Ray {
            v,
            zeros: ZeroSet::new(ineqs.len()),
        })
        .collect();

    // process every inequality (including the basis ones, to fill zero-sets
    // and cut correctly since the simplicial start may be larger than C)
    for (k, h) in ineqs.iter().enumerate() {
        let vals: Vec<Int> = rays.iter().map(|r| dot(h, &r.v)).collect();
        let mut keep: Vec<Ray> = Vec::new();
        let mut new_rays: Vec<(Vec<Int>, usize, usize)> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                continue;
            }
            for (j, r2) in rays.iter().enumerate() {
                if !vals[j].is_positive() {
                    continue;
                }
                // adjacency: no third ray's zero set contains zeros(i) & zeros(j)
                let common = r.zeros.intersect(&r2.zeros);
                let adjacent = rays.iter().enumerate().all(|(l, r3)| {
                    l == i || l == j || !common.is_subset_of(&r3.zeros)
                });
                if adjacent {
                    // positive combination vanishing on h
                    let a = vals[j].clone(); // > 0, coefficient for ray i
                    let b = -vals[i].clone(); // > 0, coefficient for ray j
                    let v: Vec<Int> = r
                        .v
                        .iter()
                        .zip(&r2.v)
                        .map(|(x, y)| &a * x + &b * y)
                        .collect();
                    new_rays.push((primitive_ray(&v), i, j));
                }
            }
        }
        for (i, mut r) in rays.drain(..).enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.set(k);
            }
            keep.push(r);
        }
        for (v, i, j) in new_rays {
            // zero set known only for processed constraints; recompute lazily
            let mut zeros = ZeroSet::new(ineqs.len());
            for (l, hl) in ineqs.iter().enumerate().take(k + 1) {
                if dot(hl, &v).is_zero() {
                    zeros.set(l);
                }
            }
            let _ = (i, j);
            keep.push(Ray { v, zeros });
        }
        rays = keep;
    }

    let mut out: Vec<Vec<Int>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn independent_rows(m: &IntMatrix, target: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..m.rows {
        if chosen.len() == target {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(i);
        let sub = IntMatrix::from_rows(&trial.iter().map(|&r| m.row(r)).collect::<Vec<_>>());
        if sub.rank() == trial.len() {
            chosen = trial;
        }
    }
    assert_eq!(chosen.len(), target, "rank precondition violated");
    chosen
}

fn rational_inverse(m: &IntMatrix) -> Vec<Vec<Rat>> {
    let n = m.rows;
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rat::from_integer(m[(i, j)].clone()))
                .chain((0..n).map(|j| {
                    if i == j {
                        num::One::one()
                    } else {
                        Rat::zero()
                    }
                }))
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).expect("singular");
        a.swap(k, p);
        let inv = a[k][k].clone().recip();
        for j in 0..2 * n {
            let s = &a[k][j] * &inv;
            a[k][j] = s;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let d = &f * &a[k][j];
                    a[i][j] = &a[i][j] - &d;
                }
            }
        }
    }
    (0..n)
        .map(|i| (0..n).map(|j| a[i][n + j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn orthant_rays() {
        let rays = extreme_rays(3, &[iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])]).unwrap();
        assert_eq!(rays.len(), 3);
        assert!(rays.contains(&iv(&[1, 0, 0])));
        assert!(rays.contains(&iv(&[0, 1, 0])));
        assert!(rays.contains(&iv(&[0, 0, 1])));
    }

    #[test]
    fn sliced_quadrant() {
        // {x >= 0, y >= 0, x - y >= 0} has rays (1,0) and (1,1)
        let rays = extreme_rays(2, &[iv(&[1, 0]), iv(&[0, 1]), iv(&[1, -1])]).unwrap();
        assert_eq!(rays, vec![iv(&[1, 0]), iv(&[1, 1])]);
    }

    #[test]
    fn halfplane_not_pointed() {
        assert_eq!(extreme_rays(2, &[iv(&[1, 0])]), Err(Error::NotPointed));
    }

    #[test]
    fn redundant_inequalities_ok() {
        let rays = extreme_rays(
            2,
            &[iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1]), iv(&[2, 0])],
        )
        .unwrap();
        assert_eq!(rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn cone_cut_to_origin() {
        // x >= 0, -x >= 0, y >= 0, -y >= 0 -> {0}, no rays
        let rays = extreme_rays(
            2,
            &[iv(&[1, 0]), iv(&[-1, 0]), iv(&[0, 1]), iv(&[0, -1])],
        )
        .unwrap();
        assert!(rays.is_empty());
    }

    #[test]
    fn square_pyramid_cone() {
        // cone over unit square at height 1: rays (±? ...) use H-rep
        // {z - x >= 0? } take cone spanned by (1,0,1),(0,1,1),(-1,0,1),(0,-1,1):
        // H-rep: z + x >= 0, z - x >= 0, z + y >= 0, z - y >= 0
        let rays = extreme_rays(
            3,
            &[iv(&[1, 0, 1]), iv(&[-1, 0, 1]), iv(&[0, 1, 1]), iv(&[0, -1, 1])],
        )
        .unwrap();
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert_eq!(r[2], int(1));
            assert_eq!(r[0].abs(), int(1));
            assert_eq!(r[1].abs(), int(1));
        }
    }
}
