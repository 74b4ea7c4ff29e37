//! Generating functions of pointed half-open rational cones, computed
//! directly in substituted variables.
//!
//! The lattice-point generating function of a half-open cone `C` is obtained
//! by (1) turning strict constraints into an inclusion-exclusion over closed
//! cones with extra equations, (2) triangulating each closed cone into
//! simplicial cones made half-open so they partition it exactly, and
//! (3) summing, per simplicial piece, the monomials of the fundamental
//! parallelepiped over the product of `1/(1 - x^g)` for its generators.
//! Substitution through an integer matrix `A` happens at the exponent level:
//! generators and parallelepiped points are mapped through `A` before any
//! rational function is materialized.

use crate::error::{Error, Result};
use crate::exactlinalg::{smith_normal_form, solve_rational, IntMatrix};
use crate::numeric::{dot, primitive_ray, Int, Rat};
use crate::polyhedra::{closure_rays, extreme_rays, HalfOpenCone, LatticePolytope};
use crate::ratfun::{to_i64, Term, TermSum};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Simplicial half-open cone: independent primitive generators; excluded
/// facet `i` means the facet spanned by the generators other than `i` is
/// removed, i.e. the `i`-th barycentric coordinate must be positive.
#[derive(Clone, Debug)]
pub struct SimplicialHalfOpenCone {
    pub generators: Vec<Vec<Int>>,
    pub excluded_facets: BTreeSet<usize>,
}

/// Exponent substitution data: an integer matrix acting on row vectors,
/// `omega -> omega * A`, taking ambient exponents to `ncols` output
/// variables.
#[derive(Clone, Debug)]
pub struct SubstitutionMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<Int>>,
}

impl SubstitutionMatrix {
    pub fn new(rows: Vec<Vec<Int>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::with_shape(rows, ncols)
    }

    /// Constructor that keeps the column count through empty row lists.
    pub fn with_shape(rows: Vec<Vec<Int>>, ncols: usize) -> Self {
        let nrows = rows.len();
        for r in &rows {
            assert_eq!(r.len(), ncols);
        }
        SubstitutionMatrix { nrows, ncols, rows }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut e = vec![Int::zero(); n];
                e[i] = Int::one();
                e
            })
            .collect();
        SubstitutionMatrix::new(rows)
    }

    /// Image of a row vector: `v * A`.
    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.nrows);
        (0..self.ncols)
            .map(|j| v.iter().zip(&self.rows).map(|(x, row)| x * &row[j]).sum())
            .collect()
    }

    fn apply_i64(&self, v: &[Int]) -> Vec<i64> {
        self.apply(v).iter().map(to_i64).collect()
    }

    /// The matrix `A(v) = [1^T, v_1^T, ..., v_m^T]` used for cone-and-polytope
    /// zeta functions: first output variable tracks `<1, omega>`, the others
    /// `<v_j, omega>`.
    pub fn for_vertices(n: usize, vertex_parts: &[Vec<Int>]) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut row = Vec::with_capacity(1 + vertex_parts.len());
                row.push(Int::one());
                for v in vertex_parts {
                    assert_eq!(v.len(), n);
                    row.push(v[i].clone());
                }
                row
            })
            .collect();
        SubstitutionMatrix::new(rows)
    }
}

/// Signed decomposition of a half-open cone into half-open simplicial pieces:
/// the signed indicator functions sum to the indicator of `C`. The empty cone
/// yields an empty list; the cone `{0}` yields one zero-dimensional piece.
pub fn triangulate_halfopen(c: &HalfOpenCone) -> Result<Vec<(i8, SimplicialHalfOpenCone)>> {
    if c.witness().is_none() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();

    // deduplicate strict constraints and split off those whose hyperplane
    // misses the closure (they hold automatically)
    let closure = c.closure();
    let mut strict: Vec<Vec<Int>> = c
        .strict_ineqs
        .iter()
        .map(|v| primitive_ray(v))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    strict.retain(|a| {
        let mut probe = closure.clone();
        probe.equations.push(a.clone());
        !probe.is_empty()
    });

    // inclusion-exclusion over subsets of the surviving strict constraints
    // turned into equations: indicator(C) = sum (-1)^|T| indicator(closure_T)
    let k = strict.len();
    assert!(k < 24, "too many independent strict constraints");
    for mask in 0u32..(1 << k) {
        let mut cone = closure.clone();
        for (i, a) in strict.iter().enumerate() {
            if mask & (1 << i) != 0 {
                cone.equations.push(a.clone());
            }
        }
        if cone.witness().is_none() {
            continue;
        }
        let sign: i8 = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        for piece in triangulate_closed(&cone)? {
            out.push((sign, piece));
        }
    }
    Ok(out)
}

/// Exact partition of a closed cone into half-open simplicial pieces of full
/// dimension within the cone's span.
fn triangulate_closed(cone: &HalfOpenCone) -> Result<Vec<SimplicialHalfOpenCone>> {
    let (rays, span) = closure_rays(cone)?;
    if rays.is_empty() {
        return Ok(vec![SimplicialHalfOpenCone {
            generators: vec![],
            excluded_facets: BTreeSet::new(),
        }]);
    }
    let d = span.len();
    // ray coordinates on the span
    let span_t = IntMatrix::from_rows(&span).transpose();
    let rays_reduced: Vec<Vec<Int>> = rays
        .iter()
        .map(|r| {
            let rhs: Vec<Rat> = r.iter().map(|x| Rat::from_integer(x.clone())).collect();
            let y = solve_rational(&span_t, &rhs).expect("ray lies in the span");
            y.iter()
                .map(|x| {
                    assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect();

    let simplices = pulling_triangulation(&rays_reduced, d);

    // generic interior point for the half-open partition
    let w = generic_point(&rays_reduced, &simplices);

    let mut pieces = Vec::with_capacity(simplices.len());
    for simplex in &simplices {
        let gmat = IntMatrix::from_rows(
            &simplex.iter().map(|&i| rays_reduced[i].clone()).collect::<Vec<_>>(),
        );
        // barycentric coordinates of w: lambda with lambda * G = w
        let rhs: Vec<Rat> = w.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let lambda = solve_rational(&gmat.transpose(), &rhs).expect("simplex spans");
        let mut excluded = BTreeSet::new();
        for (i, l) in lambda.iter().enumerate() {
            assert!(!l.is_zero(), "generic point degenerate on a wall");
            if l.is_negative() {
                excluded.insert(i);
            }
        }
        pieces.push(SimplicialHalfOpenCone {
            generators: simplex.iter().map(|&i| rays[i].clone()).collect(),
            excluded_facets: excluded,
        });
    }
    Ok(pieces)
}

/// Deterministic triangulation of `cone(rays)` (full-dimensional in `dim`):
/// recursively cone the lexicographically smallest ray over the facet
/// triangulations. Returns simplices as sorted index sets.
fn pulling_triangulation(rays: &[Vec<Int>], dim: usize) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..rays.len()).collect();
    let mut memo: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    pulling_rec(rays, &all, dim, &mut memo)
}

fn pulling_rec(
    rays: &[Vec<Int>],
    subset: &[usize],
    dim: usize,
    memo: &mut BTreeMap<Vec<usize>, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(cached) = memo.get(subset) {
        return cached.clone();
    }
    let result = if subset.len() == dim {
        vec![subset.to_vec()]
    } else {
        // anchor at the lexicographically smallest generator vector
        let anchor = *subset
            .iter()
            .min_by_key(|&&i| &rays[i])
            .expect("nonempty subset");
        let mut simplices = Vec::new();
        for facet in facets_of_ray_cone(rays, subset, dim) {
            if facet.contains(&anchor) {
                continue;
            }
            for sub in pulling_rec(rays, &facet, dim - 1, memo) {
                let mut s = sub.clone();
                s.push(anchor);
                s.sort();
                simplices.push(s);
            }
        }
        simplices.sort();
        simplices.dedup();
        simplices
    };
    memo.insert(subset.to_vec(), result.clone());
    result
}

/// Facets of the cone spanned by the given rays (of dimension `dim` within
/// their span), as subsets of the ray indices.
fn facets_of_ray_cone(rays: &[Vec<Int>], subset: &[usize], dim: usize) -> Vec<Vec<usize>> {
    // reduce to the span of this subset
    let vecs: Vec<Vec<Int>> = subset.iter().map(|&i| rays[i].clone()).collect();
    let (lat, _) = crate::exactlinalg::saturate_and_complete(&vecs, vecs[0].len());
    assert_eq!(lat.rank(), dim, "subset does not span the stated dimension");
    let bt = IntMatrix::from_rows(&lat.basis_vectors).transpose();
    let reduced: Vec<Vec<Int>> = vecs
        .iter()
        .map(|v| {
            let rhs: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
            solve_rational(&bt, &rhs)
                .expect("in span")
                .iter()
                .map(|x| {
                    assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    // facet normals = extreme rays of the dual cone {h : <h, r> >= 0}
    let normals = extreme_rays(dim, &reduced).expect("span-reduced cone is pointed");
    let mut facets = Vec::new();
    for h in &normals {
        let tight: Vec<usize> = subset
            .iter()
            .enumerate()
            .filter(|(k, _)| dot(h, &reduced[*k]).is_zero())
            .map(|(_, &i)| i)
            .collect();
        if !tight.is_empty() {
            facets.push(tight);
        }
    }
    facets.sort();
    facets.dedup();
    facets
}

/// A point interior to the cone and off every hyperplane spanned by the
/// facets of the triangulation's simplices, found by trying weighted ray sums
/// deterministically.
fn generic_point(rays: &[Vec<Int>], simplices: &[Vec<usize>]) -> Vec<Int> {
    let n = rays[0].len();
    'outer: for m in 1..10_000u64 {
        let mut w = vec![Int::zero(); n];
        let mut scale = Int::one();
        for r in rays {
            for (wi, ri) in w.iter_mut().zip(r) {
                *wi += &scale * ri;
            }
            scale *= Int::from(m + 1);
        }
        for simplex in simplices {
            let gmat = IntMatrix::from_rows(
                &simplex.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>(),
            );
            let rhs: Vec<Rat> = w.iter().map(|x| Rat::from_integer(x.clone())).collect();
            match solve_rational(&gmat.transpose(), &rhs) {
                Some(lambda) => {
                    if lambda.iter().any(|l| l.is_zero()) {
                        continue 'outer;
                    }
                }
                None => continue 'outer,
            }
        }
        return w;
    }
    panic!("no generic point found; degenerate ray configuration");
}

/// Lattice points of the half-open fundamental parallelepiped of a simplicial
/// cone: `sum lambda_i g_i` with `lambda_i` in `[0,1)` for kept facets and
/// `(0,1]` for excluded ones.
pub fn parallelepiped_points(piece: &SimplicialHalfOpenCone) -> Vec<Vec<Int>> {
    let d = piece.generators.len();
    if d == 0 {
        return vec![vec![]];
    }
    let n = piece.generators[0].len();
    let (lat, _) = crate::exactlinalg::saturate_and_complete(&piece.generators, n);
    assert_eq!(lat.rank(), d, "generators not independent");
    let bt = IntMatrix::from_rows(&lat.basis_vectors).transpose();
    // generator coordinates on the span: rows of H
    let h = IntMatrix::from_rows(
        &piece
            .generators
            .iter()
            .map(|g| {
                let rhs: Vec<Rat> = g.iter().map(|x| Rat::from_integer(x.clone())).collect();
                solve_rational(&bt, &rhs)
                    .expect("generator in span")
                    .iter()
                    .map(|x| {
                        assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect::<Vec<Int>>()
            })
            .collect::<Vec<_>>(),
    );
    let (s, _u, v) = smith_normal_form(&h);
    let vinv = v.inverse_unimodular();
    let diag: Vec<Int> = (0..d).map(|i| s[(i, i)].clone()).collect();
    assert!(diag.iter().all(|x| !x.is_zero()), "degenerate parallelepiped");

    // coset representatives y = r * V^{-1} for r in prod [0, s_i)
    let mut points = Vec::new();
    let mut r = vec![Int::zero(); d];
    loop {
        let y = vinv.vec_mul(&r);
        // lambda with lambda * H = y
        let rhs: Vec<Rat> = y.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let mut lambda = solve_rational(&h.transpose(), &rhs).expect("full rank");
        for (i, l) in lambda.iter_mut().enumerate() {
            let fl = l.floor();
            *l -= fl;
            if piece.excluded_facets.contains(&i) && l.is_zero() {
                *l = Rat::one();
            }
        }
        // point in span coordinates: lambda * H, integral by construction
        let mut coords = vec![Rat::zero(); d];
        for (i, l) in lambda.iter().enumerate() {
            for (j, c) in coords.iter_mut().enumerate() {
                *c += l * Rat::from_integer(h[(i, j)].clone());
            }
        }
        let coords_int: Vec<Int> = coords
            .iter()
            .map(|x| {
                assert!(x.is_integer(), "parallelepiped point not integral");
                x.to_integer()
            })
            .collect();
        // ambient point
        let mut amb = vec![Int::zero(); n];
        for (ci, b) in coords_int.iter().zip(&lat.basis_vectors) {
            for (a, bi) in amb.iter_mut().zip(b) {
                *a += ci * bi;
            }
        }
        points.push(amb);

        // advance odometer over coset representatives
        let mut i = 0;
        loop {
            if i == d {
                points.sort();
                return points;
            }
            r[i] += 1;
            if r[i] < diag[i] {
                break;
            }
            r[i] = Int::zero();
            i += 1;
        }
    }
}

/// Split off coordinates that appear in no constraint except their own sign
/// condition: the cone factors as (rest) x R_(>=0) or x R_(>0) per such
/// coordinate, and the generating function picks up one geometric factor per
/// coordinate. Returns (restricted cone, kept coordinates, split factors);
/// each factor is (ambient coordinate index, strict?).
fn split_pure_coordinates(c: &HalfOpenCone) -> (HalfOpenCone, Vec<usize>, Vec<(usize, bool)>) {
    let n = c.ambient_dim;
    let is_unit = |v: &[Int]| -> Option<usize> {
        let mut idx = None;
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                if idx.is_some() || x.is_negative() {
                    return None;
                }
                idx = Some(i);
            }
        }
        idx
    };
    let mut touched = vec![false; n];
    let mut has_closed_unit = vec![false; n];
    let mut has_strict_unit = vec![false; n];
    for v in &c.closed_ineqs {
        match is_unit(v) {
            Some(i) => has_closed_unit[i] = true,
            None => {
                for (i, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        touched[i] = true;
                    }
                }
            }
        }
    }
    for v in &c.strict_ineqs {
        match is_unit(v) {
            Some(i) => has_strict_unit[i] = true,
            None => {
                for (i, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        touched[i] = true;
                    }
                }
            }
        }
    }
    for v in &c.equations {
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                touched[i] = true;
            }
        }
    }
    let mut split = Vec::new();
    let mut kept = Vec::new();
    for i in 0..n {
        if !touched[i] && (has_closed_unit[i] || has_strict_unit[i]) {
            split.push((i, has_strict_unit[i]));
        } else {
            kept.push(i);
        }
    }
    if split.is_empty() {
        return (c.clone(), kept, split);
    }
    let project = |v: &Vec<Int>| -> Vec<Int> { kept.iter().map(|&i| v[i].clone()).collect() };
    let keep_vec = |v: &Vec<Int>| -> bool {
        match is_unit(v) {
            Some(i) => !split.iter().any(|&(j, _)| j == i),
            None => true,
        }
    };
    let restricted = HalfOpenCone {
        ambient_dim: kept.len(),
        closed_ineqs: c
            .closed_ineqs
            .iter()
            .filter(|v| keep_vec(v))
            .map(project)
            .collect(),
        strict_ineqs: c
            .strict_ineqs
            .iter()
            .filter(|v| keep_vec(v))
            .map(project)
            .collect(),
        equations: c.equations.iter().map(project).collect(),
    };
    (restricted, kept, split)
}

/// Generating function of the lattice points of `C` under the exponent
/// substitution `A`: a sum of terms `x^(pA) / prod(1 - x^(gA))` over the
/// signed simplicial pieces, with `p` ranging over fundamental parallelepiped
/// points and `g` over generators.
pub fn genfun_substituted(c: &HalfOpenCone, a: &SubstitutionMatrix) -> Result<TermSum> {
    assert_eq!(c.ambient_dim, a.nrows, "substitution shape mismatch");
    let nvars = a.ncols;
    if c.witness().is_none() {
        return Ok(TermSum::zero(nvars));
    }
    // kernel condition: closure(C) meets Ker(A) only at 0
    let mut kernel_probe = c.closure();
    for j in 0..a.ncols {
        kernel_probe
            .equations
            .push(a.rows.iter().map(|r| r[j].clone()).collect());
    }
    if crate::polyhedra::cone_dim(&kernel_probe) > 0 {
        return Err(Error::KernelMeetsCone);
    }

    // factor out pure coordinates
    let (restricted, kept, split) = split_pure_coordinates(c);
    let mut geometric_factors: Vec<Vec<i64>> = Vec::new(); // closed: 1/(1-x^u)
    let mut shifted_factors: Vec<Vec<i64>> = Vec::new(); // strict: x^u/(1-x^u)
    for &(i, strict) in &split {
        let mut e = vec![Int::zero(); c.ambient_dim];
        e[i] = Int::one();
        let u = a.apply_i64(&e);
        assert!(u.iter().any(|&x| x != 0), "kernel check missed a unit");
        if strict {
            shifted_factors.push(u);
        } else {
            geometric_factors.push(u);
        }
    }
    // substitution restricted to the kept coordinates
    let a_restricted = SubstitutionMatrix::with_shape(
        kept.iter().map(|&i| a.rows[i].clone()).collect(),
        a.ncols,
    );

    let pieces = triangulate_halfopen(&restricted)?;
    let mut out = TermSum::zero(nvars);
    for (sign, piece) in &pieces {
        let den_core: Vec<Vec<i64>> = piece
            .generators
            .iter()
            .map(|g| {
                let u = a_restricted.apply_i64(g);
                assert!(u.iter().any(|&x| x != 0), "kernel check missed a generator");
                u
            })
            .collect();
        let points = if piece.generators.is_empty() {
            vec![vec![Int::zero(); a_restricted.nrows]]
        } else {
            parallelepiped_points(piece)
        };
        for p in points {
            let mut num = a_restricted.apply_i64(&p);
            let mut den = den_core.clone();
            for u in &geometric_factors {
                den.push(u.clone());
            }
            for u in &shifted_factors {
                den.push(u.clone());
                for (x, y) in num.iter_mut().zip(u) {
                    *x += y;
                }
            }
            out.push(Term {
                coeff: Rat::from_integer(Int::from(*sign)),
                qone_pow: 0,
                num,
                den,
            });
        }
    }
    Ok(out)
}

/// For the reduction modulo `q - 1` only the full-dimensional closed pieces
/// matter: return, for each simplex of a triangulation of the closure, its
/// lattice index (parallelepiped point count) and substituted generators.
/// The half-open corrections and strict-constraint inclusion-exclusion terms
/// all live in lower dimension and reduce to zero.
pub fn closure_simplex_data(
    c: &HalfOpenCone,
    a: &SubstitutionMatrix,
) -> Result<Vec<(Int, Vec<Vec<i64>>)>> {
    if c.witness().is_none() {
        return Ok(vec![]);
    }
    let (restricted, kept, split) = split_pure_coordinates(c);
    let extra: Vec<Vec<i64>> = split
        .iter()
        .map(|&(i, _)| {
            let mut e = vec![Int::zero(); c.ambient_dim];
            e[i] = Int::one();
            a.apply_i64(&e)
        })
        .collect();
    let a_restricted = SubstitutionMatrix::with_shape(
        kept.iter().map(|&i| a.rows[i].clone()).collect(),
        a.ncols,
    );
    let pieces = triangulate_closed(&restricted.closure())?;
    let mut out = Vec::with_capacity(pieces.len());
    for piece in &pieces {
        let mut dens: Vec<Vec<i64>> = piece
            .generators
            .iter()
            .map(|g| a_restricted.apply_i64(g))
            .collect();
        dens.extend(extra.iter().cloned());
        out.push((lattice_index(&piece.generators), dens));
    }
    Ok(out)
}

/// Index of the generator lattice inside the integer points of its span.
fn lattice_index(gens: &[Vec<Int>]) -> Int {
    if gens.is_empty() {
        return Int::one();
    }
    let n = gens[0].len();
    let (lat, _) = crate::exactlinalg::saturate_and_complete(gens, n);
    let bt = IntMatrix::from_rows(&lat.basis_vectors).transpose();
    let h = IntMatrix::from_rows(
        &gens
            .iter()
            .map(|g| {
                let rhs: Vec<Rat> = g.iter().map(|x| Rat::from_integer(x.clone())).collect();
                solve_rational(&bt, &rhs)
                    .expect("generator in span")
                    .iter()
                    .map(|x| x.to_integer())
                    .collect::<Vec<Int>>()
            })
            .collect::<Vec<_>>(),
    );
    h.det().abs()
}

/// The cone-and-polytopes zeta function: for each `c0`-visible face `tau` of
/// the Minkowski sum of the polytopes, the generating function of the cell
/// `c0` meet `N_tau` substituted through `A(v)` built from a vertex
/// decomposition `v = v_1 + ... + v_m` of a vertex of `tau`; summed over the
/// visible faces. Output variables: `xi_0` (tracking `<1, omega>`) and one
/// `xi_j` per polytope (tracking `min <P_j, omega>`).
pub fn zed_cone_polytopes(c0: &HalfOpenCone, polytopes: &[LatticePolytope]) -> Result<TermSum> {
    let n = c0.ambient_dim;
    let nvars = 1 + polytopes.len();
    if c0.witness().is_none() {
        return Ok(TermSum::zero(nvars));
    }
    let ms = crate::polyhedra::minkowski_sum(polytopes)?;
    let sum_faces = crate::polyhedra::face_lattice(&ms.sum);
    let mut out = TermSum::zero(nvars);
    for vf in crate::polyhedra::visible_faces(c0, &ms.sum) {
        // lexicographically smallest vertex of the face, with its unique
        // decomposition into summand vertices
        let v_idx = *vf
            .face
            .vertex_subset
            .iter()
            .min_by_key(|&&i| &ms.sum.vertices[i])
            .unwrap();
        let vertex_cone = &sum_faces
            .iter()
            .find(|f| f.vertex_subset == vec![v_idx])
            .expect("vertex face exists")
            .normal_cone;
        let w = vertex_cone.witness().expect("vertex normal cone nonempty");
        let parts: Vec<Vec<Int>> = polytopes
            .iter()
            .map(|p| {
                let f = p.face_in_direction(&w);
                assert_eq!(f.len(), 1, "vertex decomposition not unique");
                p.vertices[f[0]].clone()
            })
            .collect();
        let a = SubstitutionMatrix::for_vertices(n, &parts);
        let contribution = genfun_substituted(&vf.cell, &a)?;
        out = out.add(&contribution);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use crate::polyhedra::convex_hull;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn cone2(closed: &[&[i64]], strict: &[&[i64]]) -> HalfOpenCone {
        HalfOpenCone {
            ambient_dim: closed.first().or(strict.first()).map_or(0, |v| v.len()),
            closed_ineqs: closed.iter().map(|v| iv(v)).collect(),
            strict_ineqs: strict.iter().map(|v| iv(v)).collect(),
            equations: vec![],
        }
    }

    /// Compare the signed pieces against direct membership on a grid.
    fn check_decomposition(c: &HalfOpenCone, bound: i64) {
        let pieces = triangulate_halfopen(c).unwrap();
        let n = c.ambient_dim;
        let mut idx = vec![0i64; n];
        loop {
            let x: Vec<Int> = idx.iter().map(|&v| Int::from(v)).collect();
            if idx.iter().sum::<i64>() <= bound {
                let direct = i64::from(c.contains(&x));
                let mut signed = 0i64;
                for (sign, p) in &pieces {
                    if simplicial_contains(p, &x) {
                        signed += *sign as i64;
                    }
                }
                assert_eq!(signed, direct, "mismatch at {:?}", idx);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return;
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

    fn simplicial_contains(p: &SimplicialHalfOpenCone, x: &[Int]) -> bool {
        if p.generators.is_empty() {
            return x.iter().all(|v| v.is_zero());
        }
        let g = IntMatrix::from_rows(&p.generators);
        let rhs: Vec<Rat> = x.iter().map(|v| Rat::from_integer(v.clone())).collect();
        match solve_rational(&g.transpose(), &rhs) {
            None => false,
            Some(lambda) => {
                let mut recon = vec![Rat::zero(); x.len()];
                for (l, row) in lambda.iter().zip(&p.generators) {
                    for (r, v) in recon.iter_mut().zip(row) {
                        *r += l * Rat::from_integer(v.clone());
                    }
                }
                if recon != rhs {
                    return false;
                }
                lambda.iter().enumerate().all(|(i, l)| {
                    if p.excluded_facets.contains(&i) {
                        l.is_positive()
                    } else {
                        !l.is_negative()
                    }
                })
            }
        }
    }

    #[test]
    fn simplicial_closed_cone_is_itself() {
        let c = cone2(&[&[1, 0], &[0, 1]], &[]);
        let pieces = triangulate_halfopen(&c).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].0, 1);
        assert!(pieces[0].1.excluded_facets.is_empty());
        check_decomposition(&c, 5);
    }

    #[test]
    fn non_simplicial_cone_decomposes_exactly() {
        // cone((1,0),(1,1),(1,2)): x >= 0, 2x - y >= 0, y >= 0
        let c = cone2(&[&[1, 0], &[2, -1], &[0, 1]], &[]);
        check_decomposition(&c, 6);
    }

    #[test]
    fn empty_halfopen_cone() {
        let c = cone2(&[&[1]], &[&[-1]]);
        assert!(triangulate_halfopen(&c).unwrap().is_empty());
    }

    #[test]
    fn halfopen_quadrant_decompositions() {
        let c = cone2(&[], &[&[1, 0], &[0, 1]]);
        check_decomposition(&c, 5);
        let c = cone2(&[&[1, 0]], &[&[0, 1]]);
        check_decomposition(&c, 5);
        let c = cone2(&[&[1, 0], &[2, -1]], &[&[0, 1]]);
        check_decomposition(&c, 6);
    }

    #[test]
    fn geometric_series() {
        // C = [0, inf), A = [1] -> 1/(1 - x)
        let c = cone2(&[&[1]], &[]);
        let w = genfun_substituted(&c, &SubstitutionMatrix::identity(1)).unwrap();
        let mut expect = TermSum::zero(1);
        expect.push(Term {
            coeff: rat(1),
            qone_pow: 0,
            num: vec![0],
            den: vec![vec![1]],
        });
        assert!(w.equals(&expect));
    }

    #[test]
    fn open_quadrant_collapsed() {
        // C = (0,inf)^2, A = [[1],[1]] -> x^2/(1-x)^2
        let c = cone2(&[], &[&[1, 0], &[0, 1]]);
        let a = SubstitutionMatrix::new(vec![vec![int(1)], vec![int(1)]]);
        let w = genfun_substituted(&c, &a).unwrap();
        let mut expect = TermSum::zero(1);
        expect.push(Term {
            coeff: rat(1),
            qone_pow: 0,
            num: vec![2],
            den: vec![vec![1], vec![1]],
        });
        assert!(w.equals(&expect));
    }

    #[test]
    fn index_two_cone_parallelepiped() {
        // C = cone((1,0),(1,2)), A = id -> (1 + x1 x2)/((1-x1)(1-x1 x2^2))
        let c = cone2(&[&[0, 1], &[2, -1]], &[]);
        let w = genfun_substituted(&c, &SubstitutionMatrix::identity(2)).unwrap();
        let mut expect = TermSum::zero(2);
        expect.push(Term {
            coeff: rat(1),
            qone_pow: 0,
            num: vec![0, 0],
            den: vec![vec![1, 0], vec![1, 2]],
        });
        expect.push(Term {
            coeff: rat(1),
            qone_pow: 0,
            num: vec![1, 1],
            den: vec![vec![1, 0], vec![1, 2]],
        });
        assert!(w.equals(&expect));
        // direct lattice sum check to x-bound 8
        let series = w.expand_series_var0(8);
        let mut direct: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for x in 0..=8i64 {
            for y in 0..=2 * x {
                direct.insert(vec![x, y], rat(1));
            }
        }
        assert_eq!(series, direct);
    }

    #[test]
    fn halfopen_inclusion_exclusion_identity() {
        // genfun(C with a strict) = genfun(relaxed) - genfun(a as equation)
        let c_strict = cone2(&[&[1, 0], &[0, 1]], &[&[1, -1]]);
        let c_relaxed = cone2(&[&[1, 0], &[0, 1], &[1, -1]], &[]);
        let mut c_eq = cone2(&[&[1, 0], &[0, 1]], &[]);
        c_eq.equations.push(iv(&[1, -1]));
        let a = SubstitutionMatrix::identity(2);
        let w_strict = genfun_substituted(&c_strict, &a).unwrap();
        let w_relaxed = genfun_substituted(&c_relaxed, &a).unwrap();
        let w_eq = genfun_substituted(&c_eq, &a).unwrap();
        let diff = TermSum::combine(&[(rat(1), w_relaxed), (rat(-1), w_eq)]);
        assert!(w_strict.equals(&diff));
    }

    #[test]
    fn kernel_meets_cone_detected() {
        let c = cone2(&[&[1, 0], &[0, 1]], &[]);
        let a = SubstitutionMatrix::new(vec![vec![int(1)], vec![int(0)]]);
        // kernel of A is the y-axis, inside the quadrant
        assert!(matches!(
            genfun_substituted(&c, &a),
            Err(Error::KernelMeetsCone)
        ));
    }

    #[test]
    fn not_pointed_detected() {
        let c = cone2(&[&[1, 0]], &[]);
        let a = SubstitutionMatrix::identity(2);
        assert!(matches!(genfun_substituted(&c, &a), Err(Error::NotPointed)));
    }

    #[test]
    fn zed_single_point_polytope() {
        // n = 1, C0 = [0,inf), P1 = {1} -> 1/(1 - xi0 xi1)
        let c0 = HalfOpenCone::nonneg_orthant(1);
        let p = convex_hull(&[iv(&[1])]).unwrap();
        let w = zed_cone_polytopes(&c0, &[p]).unwrap();
        let mut expect = TermSum::zero(2);
        expect.push(Term {
            coeff: rat(1),
            qone_pow: 0,
            num: vec![0, 0],
            den: vec![vec![1, 1]],
        });
        assert!(w.equals(&expect));
    }

    #[test]
    fn zed_segment_min_zero() {
        // n = 1, C0 = [0,inf), P1 = conv{0,1} -> 1/(1 - xi0)
        let c0 = HalfOpenCone::nonneg_orthant(1);
        let p = convex_hull(&[iv(&[0]), iv(&[1])]).unwrap();
        let w = zed_cone_polytopes(&c0, &[p]).unwrap();
        let mut expect = TermSum::zero(2);
        expect.push(Term {
            coeff: rat(1),
            qone_pow: 0,
            num: vec![0, 0],
            den: vec![vec![1, 0]],
        });
        assert!(w.equals(&expect));
    }

    #[test]
    fn zed_matches_direct_sum() {
        let c0 = HalfOpenCone {
            ambient_dim: 2,
            closed_ineqs: vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[1, -1])],
            strict_ineqs: vec![],
            equations: vec![],
        };
        let p1 = convex_hull(&[iv(&[1, 0]), iv(&[0, 2]), iv(&[2, 2])]).unwrap();
        let p2 = convex_hull(&[iv(&[0, 0]), iv(&[1, 1])]).unwrap();
        let w = zed_cone_polytopes(&c0, &[p1.clone(), p2.clone()]).unwrap();
        let series = w.expand_series_var0(5);
        let mut direct: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for x in 0..=5i64 {
            for y in 0..=x {
                if x + y > 5 {
                    continue;
                }
                let w_vec = iv(&[x, y]);
                let m1 = p1
                    .vertices
                    .iter()
                    .map(|v| to_i64(&dot(v, &w_vec)))
                    .min()
                    .unwrap();
                let m2 = p2
                    .vertices
                    .iter()
                    .map(|v| to_i64(&dot(v, &w_vec)))
                    .min()
                    .unwrap();
                *direct.entry(vec![x + y, m1, m2]).or_insert_with(Rat::zero) += rat(1);
            }
        }
        assert_eq!(series, direct);
    }

    #[test]
    fn zed_disjoint_visibility_partition() {
        // summing genfun over the cells of C0 cut by the normal fan equals
        // genfun of C0 itself
        let c0 = HalfOpenCone::nonneg_orthant(2);
        let p = convex_hull(&[iv(&[2, 0]), iv(&[0, 3])]).unwrap();
        let a = SubstitutionMatrix::identity(2);
        let total = genfun_substituted(&c0, &a).unwrap();
        let mut sum = TermSum::zero(2);
        for vf in crate::polyhedra::visible_faces(&c0, &p) {
            sum = sum.add(&genfun_substituted(&vf.cell, &a).unwrap());
        }
        assert!(sum.equals(&total));
    }

    #[test]
    fn vertex_choice_independence() {
        let c0 = HalfOpenCone::nonneg_orthant(2);
        let p1 = convex_hull(&[iv(&[1, 0]), iv(&[0, 1])]).unwrap();
        let p2 = convex_hull(&[iv(&[0, 0]), iv(&[2, 1])]).unwrap();
        let w = zed_cone_polytopes(&c0, &[p1.clone(), p2.clone()]).unwrap();
        // manual assembly choosing the lexicographically largest vertex
        let ms = crate::polyhedra::minkowski_sum(&[p1.clone(), p2.clone()]).unwrap();
        let sum_faces = crate::polyhedra::face_lattice(&ms.sum);
        let mut manual = TermSum::zero(3);
        for vf in crate::polyhedra::visible_faces(&c0, &ms.sum) {
            let v_idx = *vf
                .face
                .vertex_subset
                .iter()
                .max_by_key(|&&i| &ms.sum.vertices[i])
                .unwrap();
            let vertex_cone = &sum_faces
                .iter()
                .find(|f| f.vertex_subset == vec![v_idx])
                .unwrap()
                .normal_cone;
            let wdir = vertex_cone.witness().unwrap();
            let parts: Vec<Vec<Int>> = [&p1, &p2]
                .iter()
                .map(|p| {
                    let f = p.face_in_direction(&wdir);
                    p.vertices[f[0]].clone()
                })
                .collect();
            let a = SubstitutionMatrix::for_vertices(2, &parts);
            manual = manual.add(&genfun_substituted(&vf.cell, &a).unwrap());
        }
        assert!(w.equals(&manual));
    }

    #[test]
    fn closure_simplex_data_matches_full_dimension() {
        let c = cone2(&[&[0, 1], &[2, -1]], &[]);
        let data = closure_simplex_data(&c, &SubstitutionMatrix::identity(2)).unwrap();
        assert_eq!(data.len(), 1);
        assert_eq!(data[0].0, int(2));
        assert_eq!(data[0].1.len(), 2);
    }

    #[test]
    fn pure_coordinate_split_matches_unsplit() {
        // 3-dim: coordinate z pure; compare against a formulation where the
        // split cannot trigger (z tied by a redundant constraint)
        let c = cone2(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0]], &[]);
        let mut c_nosplit = c.clone();
        c_nosplit.closed_ineqs.push(iv(&[1, 0, 1])); // redundant, ties z
        let a = SubstitutionMatrix::identity(3);
        let w1 = genfun_substituted(&c, &a).unwrap();
        let w2 = genfun_substituted(&c_nosplit, &a).unwrap();
        assert!(w1.equals(&w2));
    }
}
