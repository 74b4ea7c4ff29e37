//! Lattice-normalized volumes, mixed volumes, and the alternating
//! mixed-volume sums that compute Euler characteristics of non-degenerate
//! torus varieties and their Boolean combinations.

use crate::error::{Error, Result};
use crate::exactlinalg::{saturate_and_complete, solve_rational, IntMatrix, LatticeBasis};
use crate::numeric::{factorial, sub_vec, Int, Rat};
use crate::polyhedra::{convex_hull, LatticePolytope};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A rational subspace of R^n together with the saturated basis of its
/// integer points; volumes below are normalized to this lattice.
#[derive(Clone, Debug)]
pub struct LatticeSubspace {
    pub ambient_dim: usize,
    pub basis: LatticeBasis,
}

impl LatticeSubspace {
    pub fn from_vectors(vectors: &[Vec<Int>], ambient_dim: usize) -> Self {
        let (basis, _) = saturate_and_complete(vectors, ambient_dim);
        LatticeSubspace {
            ambient_dim,
            basis,
        }
    }

    /// Span of the translated polytopes `P_i - x_i` for lattice points
    /// `x_i` (the lexicographically smallest vertex of each).
    pub fn spanned_by_polytopes(ps: &[&LatticePolytope], ambient_dim: usize) -> Self {
        let mut vectors = Vec::new();
        for p in ps {
            let x = &p.vertices[0];
            for v in &p.vertices {
                vectors.push(sub_vec(v, x));
            }
        }
        Self::from_vectors(&vectors, ambient_dim)
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    /// Coordinates of a vector in the subspace basis; `None` outside.
    fn coords(&self, v: &[Int]) -> Option<Vec<Int>> {
        if self.dim() == 0 {
            return if v.iter().all(|x| x.is_zero()) {
                Some(vec![])
            } else {
                None
            };
        }
        let bt = IntMatrix::from_rows(&self.basis.basis_vectors).transpose();
        let rhs: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let y = solve_rational(&bt, &rhs)?;
        // verify exactly (solve returns some solution only if consistent in
        // the spanned columns; check reconstruction)
        let mut recon = vec![Rat::zero(); v.len()];
        for (c, b) in y.iter().zip(&self.basis.basis_vectors) {
            for (r, bi) in recon.iter_mut().zip(b) {
                *r += c * Rat::from_integer(bi.clone());
            }
        }
        if recon != rhs {
            return None;
        }
        Some(
            y.iter()
                .map(|x| {
                    assert!(x.is_integer(), "saturated basis gives integer coordinates");
                    x.to_integer()
                })
                .collect(),
        )
    }
}

/// Vertices of `P` translated by its first vertex, in subspace coordinates.
fn reduced_vertices(p: &LatticePolytope, u: &LatticeSubspace) -> Result<Vec<Vec<Int>>> {
    let x = &p.vertices[0];
    p.vertices
        .iter()
        .map(|v| u.coords(&sub_vec(v, x)).ok_or(Error::NotInSubspace))
        .collect()
}

/// Volume of a polytope relative to the lattice of `U` (the polytope must
/// translate into `U`); lower-dimensional polytopes have volume zero, and the
/// zero-dimensional volume of a point is 1.
pub fn lattice_volume(p: &LatticePolytope, u: &LatticeSubspace) -> Result<Rat> {
    let verts = reduced_vertices(p, u)?;
    Ok(volume_of_points(&verts, u.dim()))
}

fn volume_of_points(points: &[Vec<Int>], d: usize) -> Rat {
    if d == 0 {
        return Rat::one();
    }
    let hull = convex_hull(points).expect("nonempty vertex set");
    if hull.dim < d {
        return Rat::zero();
    }
    let simplices = triangulate_full_dim(&hull);
    let mut vol = Rat::zero();
    for s in &simplices {
        let rows: Vec<Vec<Int>> = s[1..].iter().map(|v| sub_vec(v, &s[0])).collect();
        let det = IntMatrix::from_rows(&rows).det();
        vol += Rat::from_integer(det.abs());
    }
    vol / Rat::from_integer(factorial(d as u64))
}

/// Triangulation of a full-dimensional polytope into simplices (each a list
/// of `dim + 1` vertices): cone the lexicographically smallest vertex over
/// recursive triangulations of the facets avoiding it.
fn triangulate_full_dim(p: &LatticePolytope) -> Vec<Vec<Vec<Int>>> {
    if p.dim == 0 {
        return vec![vec![p.vertices[0].clone()]];
    }
    let v0 = &p.vertices[0]; // vertices are sorted
    let mut out = Vec::new();
    for facet in &p.facets {
        let contains_v0 = facet.vertex_set.iter().any(|&i| &p.vertices[i] == v0);
        if contains_v0 {
            continue;
        }
        let pts: Vec<Vec<Int>> = facet.vertex_set.iter().map(|&i| p.vertices[i].clone()).collect();
        let sub = convex_hull(&pts).expect("facet nonempty");
        for mut simplex in triangulate_full_dim(&sub) {
            simplex.push(v0.clone());
            out.push(simplex);
        }
    }
    out
}

/// Normalized mixed volume of `dim(U)` polytopes in `U`:
/// `MV(Q,...,Q) = Vol(Q)`, symmetric, multilinear under Minkowski sum.
pub fn mixed_volume(qs: &[&LatticePolytope], u: &LatticeSubspace) -> Result<Rat> {
    let d = u.dim();
    if qs.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: qs.len(),
            dim: d,
        });
    }
    let reduced: Vec<Vec<Vec<Int>>> = qs
        .iter()
        .map(|q| reduced_vertices(q, u))
        .collect::<Result<_>>()?;
    Ok(mixed_volume_reduced(&reduced, d))
}

fn mixed_volume_reduced(reduced: &[Vec<Vec<Int>>], d: usize) -> Rat {
    if d == 0 {
        return Rat::one();
    }
    let mut acc = Rat::zero();
    for mask in 1u32..(1 << d) {
        // Minkowski sum of the selected slots
        let mut pts: Vec<Vec<Int>> = vec![vec![Int::zero(); reduced[0][0].len()]];
        for (i, verts) in reduced.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(pts.len() * verts.len());
            for a in &pts {
                for b in verts {
                    next.push(crate::numeric::add_vec(a, b));
                }
            }
            pts = next;
            pts.sort();
            pts.dedup();
        }
        let vol = volume_of_points(&pts, d);
        let sign = if (mask.count_ones() as usize + d) % 2 == 0 {
            1
        } else {
            -1
        };
        acc += vol * Rat::from_integer(Int::from(sign));
    }
    acc / Rat::from_integer(factorial(d as u64))
}

/// The alternating mixed-volume sum over compositions: for `r` polytopes in a
/// `d`-dimensional subspace,
/// `X = (-1)^(d+r) d! sum_(c_1+...+c_r = d, c_i >= 1) MV(P_1^(c_1), ...)`.
/// Special cases: `r = 0` gives 1 when `d = 0` and 0 otherwise; `r > d`
/// gives 0.
pub fn khovanskii(ps: &[&LatticePolytope], u: &LatticeSubspace) -> Result<Rat> {
    let reduced: Vec<Vec<Vec<Int>>> = ps
        .iter()
        .map(|p| reduced_vertices(p, u))
        .collect::<Result<_>>()?;
    let mut memo = BTreeMap::new();
    Ok(khovanskii_reduced(&reduced, u.dim(), &mut memo))
}

fn khovanskii_reduced(
    reduced: &[Vec<Vec<Int>>],
    d: usize,
    memo: &mut BTreeMap<Vec<usize>, Rat>,
) -> Rat {
    let r = reduced.len();
    if r == 0 {
        return if d == 0 { Rat::one() } else { Rat::zero() };
    }
    if r > d {
        return Rat::zero();
    }
    let mut acc = Rat::zero();
    for comp in compositions(d, r) {
        // multiset of slot indices for the memo key
        let mut slots = Vec::with_capacity(d);
        for (i, &c) in comp.iter().enumerate() {
            for _ in 0..c {
                slots.push(i);
            }
        }
        let mv = match memo.get(&slots) {
            Some(v) => v.clone(),
            None => {
                let args: Vec<Vec<Vec<Int>>> = slots.iter().map(|&i| reduced[i].clone()).collect();
                let v = mixed_volume_reduced(&args, d);
                memo.insert(slots.clone(), v.clone());
                v
            }
        };
        acc += mv;
    }
    let sign = if (d + r) % 2 == 0 { 1 } else { -1 };
    acc * Rat::from_integer(Int::from(sign) * factorial(d as u64))
}

/// Compositions of `d` into exactly `r` positive parts, in colex order.
fn compositions(d: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![1usize; r];
    if d < r {
        return out;
    }
    cur[r - 1] = d - (r - 1);
    loop {
        out.push(cur.clone());
        // next composition: move one unit left-to-right odometer style
        let mut i = 0;
        loop {
            if i + 1 == r {
                return out;
            }
            if cur[r - 1] > 1 {
                // standard enumeration: increment cur[i], decrement the tail
                cur[i] += 1;
                let used: usize = cur[..=i].iter().sum::<usize>() + (r - i - 2);
                if used < d {
                    for x in cur.iter_mut().take(r - 1).skip(i + 1) {
                        *x = 1;
                    }
                    let head: usize = cur[..r - 1].iter().sum();
                    cur[r - 1] = d - head;
                    break;
                }
                // reset and carry
                cur[i] = 1;
                i += 1;
            } else {
                cur[i] = 1;
                i += 1;
                if i + 1 == r {
                    return out;
                }
                // try increment at the new position
                cur[i] += 1;
                let head_ok: usize = cur[..r - 1].iter().sum::<usize>();
                if head_ok + 1 <= d {
                    for x in cur.iter_mut().take(r - 1).skip(i + 1) {
                        *x = 1;
                    }
                    let head: usize = cur[..r - 1].iter().sum();
                    if head + 1 > d {
                        return out;
                    }
                    cur[r - 1] = d - head;
                    break;
                }
                return out;
            }
        }
    }
}

/// The relative invariant: for a family of polytopes indexed by `0..k` and a
/// subset `J`, the alternating sum over supersets `T` of `J` of the
/// [`khovanskii`] invariant of the translated polytopes of `T`, computed in
/// the subspace spanned jointly by the whole family.
pub fn relative_khovanskii(ps: &[&LatticePolytope], j: &[usize]) -> Result<Rat> {
    let k = ps.len();
    assert!(j.iter().all(|&x| x < k));
    if k == 0 {
        return Ok(Rat::one());
    }
    let ambient = ps[0].ambient_dim;
    let u = LatticeSubspace::spanned_by_polytopes(ps, ambient);
    let d = u.dim();
    let reduced: Vec<Vec<Vec<Int>>> = ps
        .iter()
        .map(|p| reduced_vertices(p, &u))
        .collect::<Result<_>>()?;
    let mut acc = Rat::zero();
    let jmask: u32 = j.iter().map(|&x| 1u32 << x).sum();
    for t in 0u32..(1 << k) {
        if t & jmask != jmask {
            continue;
        }
        let args: Vec<Vec<Vec<Int>>> = (0..k)
            .filter(|&i| t & (1 << i) != 0)
            .map(|i| reduced[i].clone())
            .collect();
        let mut memo = BTreeMap::new();
        let chi = khovanskii_reduced(&args, d, &mut memo);
        let sign = if (t.count_ones() as usize + j.len()) % 2 == 0 {
            1
        } else {
            -1
        };
        acc += chi * Rat::from_integer(Int::from(sign));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat, ratio};

    fn pts(ps: &[&[i64]]) -> Vec<Vec<Int>> {
        ps.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    fn hull(ps: &[&[i64]]) -> LatticePolytope {
        convex_hull(&pts(ps)).unwrap()
    }

    fn full(n: usize) -> LatticeSubspace {
        let vs: Vec<Vec<Int>> = (0..n)
            .map(|i| {
                let mut e = vec![int(0); n];
                e[i] = int(1);
                e
            })
            .collect();
        LatticeSubspace::from_vectors(&vs, n)
    }

    #[test]
    fn unit_cube_volume() {
        for d in 1..=3usize {
            let mut corners = Vec::new();
            for mask in 0..(1u32 << d) {
                corners.push((0..d).map(|i| ((mask >> i) & 1) as i64).collect::<Vec<_>>());
            }
            let refs: Vec<&[i64]> = corners.iter().map(|v| v.as_slice()).collect();
            let p = hull(&refs);
            assert_eq!(lattice_volume(&p, &full(d)).unwrap(), rat(1));
        }
    }

    #[test]
    fn standard_triangle_volume() {
        let p = hull(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(lattice_volume(&p, &full(2)).unwrap(), ratio(1, 2));
    }

    #[test]
    fn segment_in_own_line() {
        let p = hull(&[&[0, 0], &[2, 4]]);
        let u = LatticeSubspace::from_vectors(&pts(&[&[1, 2]]), 2);
        assert_eq!(lattice_volume(&p, &u).unwrap(), rat(2));
    }

    #[test]
    fn not_in_subspace_rejected() {
        let p = hull(&[&[0, 0], &[1, 1]]);
        let u = LatticeSubspace::from_vectors(&pts(&[&[1, 0]]), 2);
        assert!(matches!(lattice_volume(&p, &u), Err(Error::NotInSubspace)));
    }

    #[test]
    fn mixed_volume_square() {
        let sq = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(mixed_volume(&[&sq, &sq], &full(2)).unwrap(), rat(1));
    }

    #[test]
    fn mixed_volume_orthogonal_segments() {
        let s1 = hull(&[&[0, 0], &[1, 0]]);
        let s2 = hull(&[&[0, 0], &[0, 1]]);
        assert_eq!(mixed_volume(&[&s1, &s2], &full(2)).unwrap(), ratio(1, 2));
    }

    #[test]
    fn mixed_volume_point_slot_vanishes() {
        let pt = hull(&[&[5, -3]]);
        let sq = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(mixed_volume(&[&pt, &sq], &full(2)).unwrap(), rat(0));
    }

    #[test]
    fn mixed_volume_symmetry_and_multilinearity() {
        let a = hull(&[&[0, 0], &[2, 0], &[1, 2]]);
        let b = hull(&[&[0, 0], &[0, 1], &[3, 1]]);
        let c = hull(&[&[0, 0], &[1, 1]]);
        let u = full(2);
        assert_eq!(
            mixed_volume(&[&a, &b], &u).unwrap(),
            mixed_volume(&[&b, &a], &u).unwrap()
        );
        // MV(a + c, b) = MV(a, b) + MV(c, b)
        let mut sum_pts = Vec::new();
        for x in &a.vertices {
            for y in &c.vertices {
                sum_pts.push(crate::numeric::add_vec(x, y));
            }
        }
        let ac = convex_hull(&sum_pts).unwrap();
        let lhs = mixed_volume(&[&ac, &b], &u).unwrap();
        let rhs = mixed_volume(&[&a, &b], &u).unwrap() + mixed_volume(&[&c, &b], &u).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn volume_polynomiality_oracle() {
        // Vol(l1 Q1 + l2 Q2) interpolates a polynomial whose mixed coefficient
        // is 2 MV(Q1, Q2) in dimension 2
        let q1 = hull(&[&[0, 0], &[2, 0], &[1, 2]]);
        let q2 = hull(&[&[0, 0], &[0, 1], &[3, 1]]);
        let u = full(2);
        let scale = |p: &LatticePolytope, k: i64| -> Vec<Vec<Int>> {
            p.vertices
                .iter()
                .map(|v| v.iter().map(|x| x * int(k)).collect())
                .collect()
        };
        let mut vols = BTreeMap::new();
        for l1 in 0..=3i64 {
            for l2 in 0..=3i64 {
                let mut ps = Vec::new();
                for a in scale(&q1, l1) {
                    for b in scale(&q2, l2) {
                        ps.push(crate::numeric::add_vec(&a, &b));
                    }
                }
                ps.sort();
                ps.dedup();
                vols.insert((l1, l2), volume_of_points(&ps, 2));
            }
        }
        // mixed coefficient of l1 l2 via finite differences:
        // f(1,1) - f(1,0) - f(0,1) + f(0,0)
        let mixed = vols[&(1, 1)].clone() - &vols[&(1, 0)] - &vols[&(0, 1)] + &vols[&(0, 0)];
        let mv = mixed_volume(&[&q1, &q2], &u).unwrap();
        assert_eq!(mixed, rat(2) * mv);
    }

    #[test]
    fn khovanskii_examples() {
        let tri = hull(&[&[0, 0], &[1, 0], &[0, 1]]);
        let u = full(2);
        // one slot in dimension 2: -2! MV(T,T) = -2 * 1/2 = -1
        assert_eq!(khovanskii(&[&tri], &u).unwrap(), rat(-1));
        // empty family in dimension 0
        let zero_space = LatticeSubspace::from_vectors(&[], 2);
        assert_eq!(khovanskii(&[], &zero_space).unwrap(), rat(1));
        // empty family in positive dimension
        assert_eq!(khovanskii(&[], &full(1)).unwrap(), rat(0));
        // more polytopes than dimensions
        let seg = hull(&[&[0], &[1]]);
        let u1 = full(1);
        assert_eq!(khovanskii(&[&seg, &seg], &u1).unwrap(), rat(0));
    }

    #[test]
    fn khovanskii_matches_binomial_solution_count() {
        // x^2 y = 1, y = 1 has 2 torus solutions over C (and over F_p, p odd);
        // the invariant computes the Euler characteristic = point count
        let n1 = hull(&[&[2, 1], &[0, 0]]);
        let n2 = hull(&[&[0, 1], &[0, 0]]);
        let u = full(2);
        assert_eq!(khovanskii(&[&n1, &n2], &u).unwrap(), rat(2));
        // cross-check over two finite fields
        let f1 = {
            let mut f = crate::laurent::LaurentPoly::zero(2);
            f.add_term(&[2, 1], &rat(1));
            f.add_term(&[0, 0], &rat(-1));
            f
        };
        let f2 = {
            let mut f = crate::laurent::LaurentPoly::zero(2);
            f.add_term(&[0, 1], &rat(1));
            f.add_term(&[0, 0], &rat(-1));
            f
        };
        for q in [5u64, 7] {
            assert_eq!(
                crate::newton::torus_count(&[f1.clone(), f2.clone()], &[], q, 2).unwrap(),
                int(2)
            );
        }
    }

    #[test]
    fn relative_khovanskii_segment() {
        // single member with Newton segment conv{(1,0),(0,1)}
        let seg = hull(&[&[1, 0], &[0, 1]]);
        assert_eq!(relative_khovanskii(&[&seg], &[0]).unwrap(), rat(1));
        assert_eq!(relative_khovanskii(&[&seg], &[]).unwrap(), rat(-1));
    }

    #[test]
    fn relative_khovanskii_point() {
        let pt = hull(&[&[4, 7]]);
        assert_eq!(relative_khovanskii(&[&pt], &[]).unwrap(), rat(1));
        assert_eq!(relative_khovanskii(&[&pt], &[0]).unwrap(), rat(0));
    }

    #[test]
    fn relative_khovanskii_subset_sum_law() {
        // sum over J of the relative invariant is 1 when dim L = 0, else 0
        let families: Vec<Vec<LatticePolytope>> = vec![
            vec![hull(&[&[1, 0], &[0, 1]]), hull(&[&[0, 0], &[1, 1]])],
            vec![hull(&[&[2, 1]]), hull(&[&[0, 3]])],
            vec![
                hull(&[&[0, 0], &[2, 0], &[0, 2]]),
                hull(&[&[0, 0], &[1, 0]]),
            ],
        ];
        for fam in &families {
            let refs: Vec<&LatticePolytope> = fam.iter().collect();
            let u = LatticeSubspace::spanned_by_polytopes(&refs, 2);
            let mut total = Rat::zero();
            for mask in 0u32..(1 << fam.len()) {
                let j: Vec<usize> = (0..fam.len()).filter(|&i| mask & (1 << i) != 0).collect();
                total += relative_khovanskii(&refs, &j).unwrap();
            }
            let expect = if u.dim() == 0 { rat(1) } else { rat(0) };
            assert_eq!(total, expect, "family dim {}", u.dim());
        }
    }

    #[test]
    fn relative_khovanskii_translation_invariance() {
        let a = hull(&[&[1, 0], &[0, 1]]);
        let b = hull(&[&[0, 0], &[1, 1], &[2, 0]]);
        // translate members by lattice vectors; the invariant must not move
        let shift = |p: &LatticePolytope, dx: i64, dy: i64| -> LatticePolytope {
            convex_hull(
                &p.vertices
                    .iter()
                    .map(|v| vec![&v[0] + int(dx), &v[1] + int(dy)])
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        };
        let a2 = shift(&a, 5, -3);
        let b2 = shift(&b, -1, 2);
        for jmask in 0u32..4 {
            let j: Vec<usize> = (0..2).filter(|&i| jmask & (1 << i) != 0).collect();
            assert_eq!(
                relative_khovanskii(&[&a, &b], &j).unwrap(),
                relative_khovanskii(&[&a2, &b2], &j).unwrap()
            );
        }
    }
}
