//! Exact lattice polytopes and half-open rational cones: hulls, face
//! lattices, relatively open normal cones, Minkowski sums with face
//! decompositions, duals, and visibility.
//!
//! Polytopes are typically far below the ambient dimension here, so every
//! hull computation first passes to coordinates on the affine hull (via
//! lattice saturation) and runs full-dimensional there.

mod dd;

pub use dd::extreme_rays;

use crate::error::{Error, Result};
use crate::exactlinalg::{
    feasible_point_eq, kernel_lattice, saturate_and_complete, IntMatrix,
};
use crate::numeric::{dot, dot_rat, primitive_ray, primitive_ray_rat, sub_vec, Int, Rat};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Intersection of closed half-spaces `<a, x> >= 0`, open half-spaces
/// `<b, x> > 0`, and hyperplanes `<c, x> = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfOpenCone {
    pub ambient_dim: usize,
    pub closed_ineqs: Vec<Vec<Int>>,
    pub strict_ineqs: Vec<Vec<Int>>,
    pub equations: Vec<Vec<Int>>,
}

impl HalfOpenCone {
    pub fn full_space(dim: usize) -> Self {
        HalfOpenCone {
            ambient_dim: dim,
            closed_ineqs: vec![],
            strict_ineqs: vec![],
            equations: vec![],
        }
    }

    pub fn nonneg_orthant(dim: usize) -> Self {
        HalfOpenCone {
            ambient_dim: dim,
            closed_ineqs: unit_rows(dim),
            strict_ineqs: vec![],
            equations: vec![],
        }
    }

    /// Exact emptiness decision, with an integer witness when nonempty.
    pub fn witness(&self) -> Option<Vec<Int>> {
        if self.closed_ineqs.is_empty() && self.strict_ineqs.is_empty() && self.equations.is_empty()
        {
            // unconstrained: the origin witnesses nonemptiness
            return Some(vec![Int::zero(); self.ambient_dim]);
        }
        feasible_point_eq(&self.closed_ineqs, &self.strict_ineqs, &self.equations)
            .map(|w| primitive_or_zero(&w))
    }

    pub fn is_empty(&self) -> bool {
        self.witness().is_none()
    }

    /// Relax every strict inequality; the closure of a nonempty half-open cone.
    pub fn closure(&self) -> HalfOpenCone {
        HalfOpenCone {
            ambient_dim: self.ambient_dim,
            closed_ineqs: self
                .closed_ineqs
                .iter()
                .chain(&self.strict_ineqs)
                .cloned()
                .collect(),
            strict_ineqs: vec![],
            equations: self.equations.clone(),
        }
    }

    /// Membership of an integer point.
    pub fn contains(&self, x: &[Int]) -> bool {
        self.closed_ineqs.iter().all(|a| !dot(a, x).is_negative())
            && self.strict_ineqs.iter().all(|a| dot(a, x).is_positive())
            && self.equations.iter().all(|a| dot(a, x).is_zero())
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        self.closed_ineqs.iter().all(|a| !dot_rat(a, x).is_negative())
            && self.strict_ineqs.iter().all(|a| dot_rat(a, x).is_positive())
            && self.equations.iter().all(|a| dot_rat(a, x).is_zero())
    }

    /// Embed into `ambient_dim + extra` coordinates (new coordinates appended,
    /// unconstrained).
    pub fn extend_coords(&self, extra: usize) -> HalfOpenCone {
        let pad = |v: &Vec<Int>| -> Vec<Int> {
            let mut w = v.clone();
            w.extend(std::iter::repeat(Int::zero()).take(extra));
            w
        };
        HalfOpenCone {
            ambient_dim: self.ambient_dim + extra,
            closed_ineqs: self.closed_ineqs.iter().map(pad).collect(),
            strict_ineqs: self.strict_ineqs.iter().map(pad).collect(),
            equations: self.equations.iter().map(pad).collect(),
        }
    }
}

fn unit_rows(dim: usize) -> Vec<Vec<Int>> {
    (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::one();
            e
        })
        .collect()
}

fn primitive_or_zero(w: &[Rat]) -> Vec<Int> {
    if w.iter().all(|x| x.is_zero()) {
        vec![Int::zero(); w.len()]
    } else {
        primitive_ray_rat(w)
    }
}

/// Intersection of half-open cones after checking equal ambient dimensions;
/// emptiness is not checked here.
pub fn intersect_halfopen(cones: &[HalfOpenCone]) -> HalfOpenCone {
    assert!(!cones.is_empty());
    let dim = cones[0].ambient_dim;
    let mut out = HalfOpenCone::full_space(dim);
    for c in cones {
        assert_eq!(c.ambient_dim, dim, "ambient dimension mismatch");
        out.closed_ineqs.extend(c.closed_ineqs.iter().cloned());
        out.strict_ineqs.extend(c.strict_ineqs.iter().cloned());
        out.equations.extend(c.equations.iter().cloned());
    }
    out
}

/// Facet-defining inequality `<normal, x> >= offset`, tight on the facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Int>,
    pub offset: Int,
    /// indices into the polytope's vertex list that lie on the facet
    pub vertex_set: Vec<usize>,
}

/// Lattice polytope with irredundant, sorted vertex list and facet data
/// relative to its affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<Int>>,
    pub dim: usize,
    pub facets: Vec<Facet>,
}

/// A face of a polytope: vertex subset, dimension, relatively open normal
/// cone, and (for Minkowski sums) the unique per-summand decomposition.
#[derive(Clone, Debug)]
pub struct FaceRecord {
    pub vertex_subset: Vec<usize>,
    pub dim: usize,
    pub normal_cone: HalfOpenCone,
    /// `summand_faces[j]` = vertex indices into summand `j` whose face sums to
    /// this face; present only on faces produced by [`minkowski_sum`].
    pub summand_faces: Option<Vec<Vec<usize>>>,
}

impl LatticePolytope {
    pub fn vertex(&self, i: usize) -> &[Int] {
        &self.vertices[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// The face minimizing `<., w>`, as the set of minimizing vertex indices.
    pub fn face_in_direction(&self, w: &[Int]) -> Vec<usize> {
        let vals: Vec<Int> = self.vertices.iter().map(|v| dot(v, w)).collect();
        let min = vals.iter().min().unwrap().clone();
        (0..self.vertices.len()).filter(|&i| vals[i] == min).collect()
    }
}

/// Convex hull of a nonempty set of integer points: irredundant vertices and
/// the complete facet list within the affine hull.
pub fn convex_hull(points: &[Vec<Int>]) -> Result<LatticePolytope> {
    if points.is_empty() {
        return Err(Error::Invalid("convex hull of an empty point set".into()));
    }
    let n = points[0].len();
    for p in points {
        assert_eq!(p.len(), n, "mixed dimensions");
    }
    let mut pts: Vec<Vec<Int>> = points.to_vec();
    pts.sort();
    pts.dedup();

    let base = pts[0].clone(); // lexicographically smallest
    let diffs: Vec<Vec<Int>> = pts.iter().map(|p| sub_vec(p, &base)).collect();
    let (lat, _a) = saturate_and_complete(&diffs, n);
    let d = lat.rank();

    if d == 0 {
        return Ok(LatticePolytope {
            ambient_dim: n,
            vertices: vec![base],
            dim: 0,
            facets: vec![],
        });
    }

    // coordinates of each point on the affine hull: solve y * B = diff
    let bt = IntMatrix::from_rows(&lat.basis_vectors).transpose(); // n x d
    let reduced: Vec<Vec<Int>> = diffs
        .iter()
        .map(|diff| {
            let rhs: Vec<Rat> = diff.iter().map(|x| Rat::from_integer(x.clone())).collect();
            let y = crate::exactlinalg::solve_rational(&bt, &rhs).expect("point in affine hull");
            y.iter()
                .map(|x| {
                    assert!(x.is_integer(), "saturated basis must give integer coords");
                    x.to_integer()
                })
                .collect()
        })
        .collect();

    // facets of the full-dimensional hull in R^d: rays of the cone
    // { (c0, c) : c0 + <c, y_p> >= 0 for all p }
    let lifted: Vec<Vec<Int>> = reduced
        .iter()
        .map(|y| {
            let mut v = vec![Int::one()];
            v.extend(y.iter().cloned());
            v
        })
        .collect();
    let facet_normals = extreme_rays(d + 1, &lifted)?;

    // vertices: points with d linearly independent tight facets
    let mut facet_sets: Vec<(Vec<Int>, Int, Vec<usize>)> = Vec::new();
    for fnorm in &facet_normals {
        let c0 = fnorm[0].clone();
        let c = fnorm[1..].to_vec();
        let tight: Vec<usize> = (0..reduced.len())
            .filter(|&i| (dot(&c, &reduced[i]) + &c0).is_zero())
            .collect();
        facet_sets.push((c, -c0, tight));
    }
    let mut is_vertex = vec![false; pts.len()];
    for (i, _) in pts.iter().enumerate() {
        let active: Vec<Vec<Int>> = facet_sets
            .iter()
            .filter(|(_, _, tight)| tight.contains(&i))
            .map(|(c, _, _)| c.clone())
            .collect();
        if !active.is_empty() && IntMatrix::from_rows(&active).rank() == d {
            is_vertex[i] = true;
        }
    }
    if d == 0 {
        is_vertex[0] = true;
    }
    let vertex_ids: Vec<usize> = (0..pts.len()).filter(|&i| is_vertex[i]).collect();
    let vertices: Vec<Vec<Int>> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();

    // map facet inequalities back to ambient coordinates and re-index the
    // incident vertices against the final vertex list
    let bmat = IntMatrix::from_rows(&lat.basis_vectors); // d x n
    let facets: Vec<Facet> = facet_sets
        .into_iter()
        .map(|(c, off, tight)| {
            // ambient normal a with <a, x> = <c, y> + const: a = c * B,
            // keeping the orientation so <a, x> >= offset holds on the hull
            let a = bmat.vec_mul(&c);
            let a = primitive_ray(&a);
            let some_tight = tight[0];
            let o = dot(&a, &pts[some_tight]);
            let vertex_set: Vec<usize> = vertex_ids
                .iter()
                .enumerate()
                .filter(|(_, &pid)| tight.contains(&pid))
                .map(|(vi, _)| vi)
                .collect();
            let _ = off;
            Facet {
                normal: a,
                offset: o,
                vertex_set,
            }
        })
        .collect();

    let mut facets = facets;
    facets.sort_by(|x, y| (&x.normal, &x.offset).cmp(&(&y.normal, &y.offset)));

    Ok(LatticePolytope {
        ambient_dim: n,
        vertices,
        dim: d,
        facets,
    })
}

/// Relatively open inner normal cone of the face spanned by `subset`:
/// directions `w` whose minimizing face is exactly that face.
fn normal_cone_of(p: &LatticePolytope, subset: &[usize]) -> HalfOpenCone {
    let v0 = &p.vertices[subset[0]];
    let mut equations = Vec::new();
    let mut strict = Vec::new();
    for (i, v) in p.vertices.iter().enumerate() {
        if i == subset[0] {
            continue;
        }
        let diff = sub_vec(v, v0);
        if subset.contains(&i) {
            equations.push(diff);
        } else {
            strict.push(diff);
        }
    }
    HalfOpenCone {
        ambient_dim: p.ambient_dim,
        closed_ineqs: vec![],
        strict_ineqs: strict,
        equations,
    }
}

fn face_dim(p: &LatticePolytope, subset: &[usize]) -> usize {
    if subset.len() <= 1 {
        return 0;
    }
    let v0 = &p.vertices[subset[0]];
    let rows: Vec<Vec<Int>> = subset[1..]
        .iter()
        .map(|&i| sub_vec(&p.vertices[i], v0))
        .collect();
    IntMatrix::from_rows(&rows).rank()
}

/// Every nonempty face of `p`, each with its relatively open normal cone.
/// Faces are found by closing the facet vertex sets under intersection;
/// results are sorted by (dimension, vertex set).
pub fn face_lattice(p: &LatticePolytope) -> Vec<FaceRecord> {
    let all: Vec<usize> = (0..p.vertices.len()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: Vec<Vec<usize>> = vec![all];
    while let Some(face) = queue.pop() {
        if seen.contains(&face) {
            continue;
        }
        seen.insert(face.clone());
        for facet in &p.facets {
            let inter: Vec<usize> = face
                .iter()
                .copied()
                .filter(|i| facet.vertex_set.contains(i))
                .collect();
            if !inter.is_empty() && inter != face && !seen.contains(&inter) {
                queue.push(inter);
            }
        }
    }
    let mut faces: Vec<FaceRecord> = seen
        .into_iter()
        .map(|subset| FaceRecord {
            dim: face_dim(p, &subset),
            normal_cone: normal_cone_of(p, &subset),
            vertex_subset: subset,
            summand_faces: None,
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertex_subset).cmp(&(b.dim, &b.vertex_subset)));
    faces
}

/// Minkowski sum with the unique per-face decomposition into summand faces.
pub struct MinkowskiSum {
    pub sum: LatticePolytope,
    pub faces: Vec<FaceRecord>,
    pub summands: Vec<LatticePolytope>,
}

pub fn minkowski_sum(summands: &[LatticePolytope]) -> Result<MinkowskiSum> {
    assert!(!summands.is_empty());
    let n = summands[0].ambient_dim;
    for s in summands {
        assert_eq!(s.ambient_dim, n, "ambient dimension mismatch");
    }
    // candidate points: sums of vertex tuples
    let mut sums: Vec<Vec<Int>> = vec![vec![Int::zero(); n]];
    for s in summands {
        let mut next = Vec::with_capacity(sums.len() * s.vertices.len());
        for acc in &sums {
            for v in &s.vertices {
                next.push(crate::numeric::add_vec(acc, v));
            }
        }
        sums = next;
        sums.sort();
        sums.dedup();
    }
    let sum = convex_hull(&sums)?;
    let mut faces = face_lattice(&sum);
    for f in faces.iter_mut() {
        let w = f
            .normal_cone
            .witness()
            .expect("normal cone of a face is nonempty");
        let decomposition: Vec<Vec<usize>> =
            summands.iter().map(|s| s.face_in_direction(&w)).collect();
        // exactness check: the summand faces must add up to this face
        debug_assert_eq!(
            {
                let mut parts: Vec<Vec<Int>> = vec![vec![Int::zero(); n]];
                for (s, idx) in summands.iter().zip(&decomposition) {
                    let mut next = Vec::new();
                    for acc in &parts {
                        for &i in idx {
                            next.push(crate::numeric::add_vec(acc, &s.vertices[i]));
                        }
                    }
                    parts = next;
                }
                let mut hull_pts: Vec<Vec<Int>> =
                    f.vertex_subset.iter().map(|&i| sum.vertices[i].clone()).collect();
                hull_pts.sort();
                let mut face_hull = convex_hull(&hull_pts).unwrap().vertices;
                face_hull.sort();
                let mut part_hull = convex_hull(&parts).unwrap().vertices;
                part_hull.sort();
                (face_hull, true).1 == (part_hull, true).1
            },
            true
        );
        f.summand_faces = Some(decomposition);
    }
    Ok(MinkowskiSum {
        sum,
        faces,
        summands: summands.to_vec(),
    })
}

/// Dual cone of a polytope: `{ w : <v, w> >= 0 for every vertex v }`.
pub fn dual_cone_of_polytope(p: &LatticePolytope) -> HalfOpenCone {
    HalfOpenCone {
        ambient_dim: p.ambient_dim,
        closed_ineqs: p.vertices.clone(),
        strict_ineqs: vec![],
        equations: vec![],
    }
}

/// A face together with the nonempty intersection of `c0` and its relatively
/// open normal cone, plus an integer witness in that intersection.
pub struct VisibleFace {
    pub face: FaceRecord,
    pub cell: HalfOpenCone,
    pub witness: Vec<Int>,
}

/// The `c0`-visible faces of `p`: faces whose relatively open normal cone
/// meets `c0`.
pub fn visible_faces(c0: &HalfOpenCone, p: &LatticePolytope) -> Vec<VisibleFace> {
    assert_eq!(c0.ambient_dim, p.ambient_dim, "ambient dimension mismatch");
    face_lattice(p)
        .into_iter()
        .filter_map(|face| {
            let cell = intersect_halfopen(&[c0.clone(), face.normal_cone.clone()]);
            cell.witness().map(|witness| VisibleFace {
                face,
                cell,
                witness,
            })
        })
        .collect()
}

/// Dimension of a cone given as a half-open cone (dimension of its closure;
/// empty input handled by the caller). Computed from the implicit equalities.
pub fn cone_dim(c: &HalfOpenCone) -> usize {
    // implicit equalities among closed inequalities: <a, x> = 0 on the whole
    // cone iff {cone, a >= 1} is infeasible
    let mut eqs: Vec<Vec<Int>> = c.equations.clone();
    let closure = c.closure();
    for a in &closure.closed_ineqs {
        let mut probe = closure.clone();
        probe.strict_ineqs.push(a.clone());
        if probe.is_empty() {
            eqs.push(a.clone());
        }
    }
    if eqs.is_empty() {
        return c.ambient_dim;
    }
    c.ambient_dim - IntMatrix::from_rows(&eqs).rank()
}

/// Extreme rays of the closure of a half-open cone, which must be pointed.
/// The cone may be lower-dimensional; rays are returned in ambient
/// coordinates. Also returns a saturated basis of the linear span (empty for
/// the zero cone).
pub fn closure_rays(c: &HalfOpenCone) -> Result<(Vec<Vec<Int>>, Vec<Vec<Int>>)> {
    let closure = c.closure();
    // find implicit equalities to pass to the span reduction
    let mut eqs: Vec<Vec<Int>> = closure.equations.clone();
    for a in &closure.closed_ineqs {
        let mut probe = closure.clone();
        probe.strict_ineqs.push(a.clone());
        if probe.is_empty() {
            eqs.push(a.clone());
        }
    }
    let span_basis: Vec<Vec<Int>> = if eqs.is_empty() {
        unit_rows(c.ambient_dim)
    } else {
        kernel_lattice(&IntMatrix::from_rows(&eqs))
    };
    let d = span_basis.len();
    if d == 0 {
        return Ok((vec![], vec![]));
    }
    // rewrite inequalities in span coordinates: x = y * K, <a, x> = <K a, y>
    let k = IntMatrix::from_rows(&span_basis); // d x n
    let reduced_ineqs: Vec<Vec<Int>> = closure
        .closed_ineqs
        .iter()
        .map(|a| k.mul_vec(a))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let rays_reduced = if reduced_ineqs.is_empty() {
        // span with no inequalities is a linear space: not pointed unless d = 0
        return Err(Error::NotPointed);
    } else {
        extreme_rays(d, &reduced_ineqs)?
    };
    let rays: Vec<Vec<Int>> = rays_reduced
        .iter()
        .map(|y| {
            let amb = k.transpose().mul_vec(y);
            primitive_ray(&amb)
        })
        .collect();
    Ok((rays, span_basis))
}

/// Check that the relatively open normal cones of all faces partition the
/// integer box `[-bound, bound]^n`; a test oracle.
pub fn partition_check(p: &LatticePolytope, bound: i64) -> bool {
    let faces = face_lattice(p);
    let n = p.ambient_dim;
    let mut idx = vec![-bound; n];
    loop {
        let w: Vec<Int> = idx.iter().map(|&x| Int::from(x)).collect();
        let mut hits = 0;
        for f in &faces {
            if f.normal_cone.contains(&w) {
                hits += 1;
            }
        }
        // cross-check against the direct minimizer
        let direct: Vec<usize> = p.face_in_direction(&w);
        let matching = faces
            .iter()
            .filter(|f| f.normal_cone.contains(&w))
            .all(|f| f.vertex_subset == direct);
        if hits != 1 || !matching {
            return false;
        }
        // advance odometer
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            idx[i] += 1;
            if idx[i] <= bound {
                break;
            }
            idx[i] = -bound;
            i += 1;
        }
    }
}

/// Group faces by dimension, a convenience for reporting.
pub fn faces_by_dim(faces: &[FaceRecord]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for f in faces {
        *m.entry(f.dim).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn pts(ps: &[&[i64]]) -> Vec<Vec<Int>> {
        ps.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn hull_drops_interior_point() {
        let p = convex_hull(&pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1]])).unwrap();
        assert_eq!(p.vertices, pts(&[&[0, 0], &[0, 2], &[2, 0]]));
        assert_eq!(p.dim, 2);
        assert_eq!(p.facets.len(), 3);
    }

    #[test]
    fn hull_single_point() {
        let p = convex_hull(&pts(&[&[3, 5]])).unwrap();
        assert_eq!(p.vertices, pts(&[&[3, 5]]));
        assert_eq!(p.dim, 0);
        assert!(p.facets.is_empty());
    }

    #[test]
    fn hull_cross_polytope_4d() {
        let mut points = Vec::new();
        for i in 0..4 {
            for s in [1i64, -1] {
                let mut v = vec![0i64; 4];
                v[i] = s;
                points.push(v);
            }
        }
        let pref: Vec<Vec<Int>> = points
            .iter()
            .map(|v| v.iter().map(|&x| int(x)).collect())
            .collect();
        let p = convex_hull(&pref).unwrap();
        assert_eq!(p.num_vertices(), 8);
        assert_eq!(p.dim, 4);
        assert_eq!(p.facets.len(), 16);
    }

    #[test]
    fn hull_cube_3d() {
        let mut corners = Vec::new();
        for mask in 0..8u32 {
            corners.push((0..3).map(|i| int(((mask >> i) & 1) as i64)).collect::<Vec<_>>());
        }
        let p = convex_hull(&corners).unwrap();
        assert_eq!(p.num_vertices(), 8);
        assert_eq!(p.facets.len(), 6);
        let faces = face_lattice(&p);
        assert_eq!(faces.len(), 8 + 12 + 6 + 1);
    }

    #[test]
    fn hull_low_dimensional_segment() {
        // a segment inside R^3
        let p = convex_hull(&pts(&[&[0, 0, 0], &[2, 4, 6], &[1, 2, 3]])).unwrap();
        assert_eq!(p.vertices, pts(&[&[0, 0, 0], &[2, 4, 6]]));
        assert_eq!(p.dim, 1);
        assert_eq!(p.facets.len(), 2);
    }

    #[test]
    fn unit_square_faces() {
        let p = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let faces = face_lattice(&p);
        assert_eq!(faces.len(), 9);
        let by_dim = faces_by_dim(&faces);
        assert_eq!(by_dim[&0], 4);
        assert_eq!(by_dim[&1], 4);
        assert_eq!(by_dim[&2], 1);
        // normal cone of vertex (0,0) is the open positive quadrant
        let origin_idx = p.vertices.iter().position(|v| v == &pts(&[&[0, 0]])[0]).unwrap();
        let f = faces.iter().find(|f| f.vertex_subset == vec![origin_idx]).unwrap();
        assert!(f.normal_cone.contains(&[int(1), int(1)]));
        assert!(!f.normal_cone.contains(&[int(0), int(1)]));
        assert!(!f.normal_cone.contains(&[int(-1), int(1)]));
    }

    #[test]
    fn segment_normal_cones() {
        // [0,1] in R^1: normal cone of vertex 0 is (0, inf), of the segment {0}
        let p = convex_hull(&pts(&[&[0], &[1]])).unwrap();
        let faces = face_lattice(&p);
        assert_eq!(faces.len(), 3);
        let zero_idx = p.vertices.iter().position(|v| v[0].is_zero()).unwrap();
        let v0 = faces.iter().find(|f| f.vertex_subset == vec![zero_idx]).unwrap();
        assert!(v0.normal_cone.contains(&[int(1)]));
        assert!(!v0.normal_cone.contains(&[int(0)]));
        let seg = faces.iter().find(|f| f.dim == 1).unwrap();
        assert!(seg.normal_cone.contains(&[int(0)]));
        assert!(!seg.normal_cone.contains(&[int(1)]));
    }

    #[test]
    fn square_partition_property() {
        let p = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert!(partition_check(&p, 5));
    }

    #[test]
    fn triangle_partition_property() {
        let p = convex_hull(&pts(&[&[0, 0], &[2, 0], &[0, 3]])).unwrap();
        assert!(partition_check(&p, 4));
    }

    #[test]
    fn face_dims_complement_normal_cone_dims() {
        let p = convex_hull(&pts(&[&[0, 0], &[2, 0], &[0, 3], &[2, 3]])).unwrap();
        for f in face_lattice(&p) {
            assert_eq!(f.dim + cone_dim(&f.normal_cone), 2);
        }
    }

    #[test]
    fn minkowski_unit_square_from_segments() {
        let s1 = convex_hull(&pts(&[&[0, 0], &[1, 0]])).unwrap();
        let s2 = convex_hull(&pts(&[&[0, 0], &[0, 1]])).unwrap();
        let ms = minkowski_sum(&[s1, s2]).unwrap();
        assert_eq!(ms.sum.vertices, pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]));
        // vertex (1,1) decomposes as (1,0) + (0,1)
        let v11 = ms.sum.vertices.iter().position(|v| v == &pts(&[&[1, 1]])[0]).unwrap();
        let f = ms
            .faces
            .iter()
            .find(|f| f.vertex_subset == vec![v11])
            .unwrap();
        let dec = f.summand_faces.as_ref().unwrap();
        assert_eq!(ms.summands[0].vertices[dec[0][0]], pts(&[&[1, 0]])[0]);
        assert_eq!(ms.summands[1].vertices[dec[1][0]], pts(&[&[0, 1]])[0]);
    }

    #[test]
    fn minkowski_face_additivity_sampled() {
        // face_w(P+Q) = face_w(P) + face_w(Q) for sampled integer directions
        let p = convex_hull(&pts(&[&[0, 0], &[2, 0], &[1, 2]])).unwrap();
        let q = convex_hull(&pts(&[&[0, 0], &[0, 1], &[3, 1]])).unwrap();
        let ms = minkowski_sum(&[p.clone(), q.clone()]).unwrap();
        for w in [[1i64, 1], [-1, 2], [3, -1], [0, 1], [-2, -3]] {
            let wv: Vec<Int> = w.iter().map(|&x| int(x)).collect();
            let fp = p.face_in_direction(&wv);
            let fq = q.face_in_direction(&wv);
            let fs = ms.sum.face_in_direction(&wv);
            let mut sums: Vec<Vec<Int>> = Vec::new();
            for &i in &fp {
                for &j in &fq {
                    sums.push(crate::numeric::add_vec(&p.vertices[i], &q.vertices[j]));
                }
            }
            let hull_sum = convex_hull(&sums).unwrap();
            let direct: Vec<Vec<Int>> = fs.iter().map(|&i| ms.sum.vertices[i].clone()).collect();
            let hull_direct = convex_hull(&direct).unwrap();
            assert_eq!(hull_sum.vertices, hull_direct.vertices);
        }
    }

    #[test]
    fn dual_cone_examples() {
        // P = {1} in R^1: dual is [0, inf)
        let p = convex_hull(&pts(&[&[1]])).unwrap();
        let d = dual_cone_of_polytope(&p);
        assert!(d.contains(&[int(0)]) && d.contains(&[int(5)]) && !d.contains(&[int(-1)]));
        // P = conv{(1,0),(0,1)}: dual is the closed positive quadrant
        let p = convex_hull(&pts(&[&[1, 0], &[0, 1]])).unwrap();
        let d = dual_cone_of_polytope(&p);
        assert!(d.contains(&[int(0), int(0)]) && d.contains(&[int(2), int(3)]));
        assert!(!d.contains(&[int(-1), int(3)]));
        // P = [-1,1]: dual is {0}
        let p = convex_hull(&pts(&[&[-1], &[1]])).unwrap();
        let d = dual_cone_of_polytope(&p);
        assert!(d.contains(&[int(0)]) && !d.contains(&[int(1)]) && !d.contains(&[int(-1)]));
    }

    #[test]
    fn visibility_segment() {
        // P = [0,1] in R^1, C0 = [0, inf): visible faces are vertex 0 and P
        let p = convex_hull(&pts(&[&[0], &[1]])).unwrap();
        let c0 = HalfOpenCone::nonneg_orthant(1);
        let vis = visible_faces(&c0, &p);
        assert_eq!(vis.len(), 2);
        let subsets: Vec<Vec<usize>> = vis.iter().map(|v| v.face.vertex_subset.clone()).collect();
        let zero_idx = p.vertices.iter().position(|v| v[0].is_zero()).unwrap();
        assert!(subsets.contains(&vec![zero_idx]));
        assert!(subsets.contains(&vec![0, 1]));
    }

    #[test]
    fn visibility_full_space_sees_all() {
        let p = convex_hull(&pts(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap();
        let c0 = HalfOpenCone::full_space(2);
        assert_eq!(visible_faces(&c0, &p).len(), face_lattice(&p).len());
    }

    #[test]
    fn visible_faces_invariant_under_row_scaling() {
        let p = convex_hull(&pts(&[&[0, 0], &[2, 0], &[0, 2]])).unwrap();
        let c0 = HalfOpenCone {
            ambient_dim: 2,
            closed_ineqs: pts(&[&[1, 0]]),
            strict_ineqs: pts(&[&[0, 1]]),
            equations: vec![],
        };
        let c0_scaled = HalfOpenCone {
            ambient_dim: 2,
            closed_ineqs: pts(&[&[7, 0]]),
            strict_ineqs: pts(&[&[0, 3]]),
            equations: vec![],
        };
        let a: Vec<Vec<usize>> = visible_faces(&c0, &p).iter().map(|v| v.face.vertex_subset.clone()).collect();
        let b: Vec<Vec<usize>> = visible_faces(&c0_scaled, &p).iter().map(|v| v.face.vertex_subset.clone()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn interior_visibility_matches_compact_faces_of_sum() {
        // for full-dimensional closed C, interior(C)-visible faces of P equal
        // the compact faces of P + C*; here C = positive quadrant, C* = C,
        // P + C has compact faces exactly the faces "visible from below-left"
        let p = convex_hull(&pts(&[&[0, 2], &[2, 0], &[2, 2]])).unwrap();
        let interior = HalfOpenCone {
            ambient_dim: 2,
            closed_ineqs: vec![],
            strict_ineqs: pts(&[&[1, 0], &[0, 1]]),
            equations: vec![],
        };
        let vis = visible_faces(&interior, &p);
        // the vertex (2,2) maximizes both coordinates: it is not visible;
        // visible: vertices (0,2),(2,0) and the edge between them, = 3 faces
        assert_eq!(vis.len(), 3);
        for v in &vis {
            assert!(!v.face.vertex_subset.contains(
                &p.vertices.iter().position(|q| q == &pts(&[&[2, 2]])[0]).unwrap()
            ));
        }
    }

    #[test]
    fn closure_rays_of_shifted_quadrant() {
        let c = HalfOpenCone {
            ambient_dim: 2,
            closed_ineqs: pts(&[&[1, 0], &[0, 1], &[1, -1]]),
            strict_ineqs: vec![],
            equations: vec![],
        };
        let (rays, span) = closure_rays(&c).unwrap();
        assert_eq!(span.len(), 2);
        assert_eq!(rays, pts(&[&[1, 0], &[1, 1]]));
    }

    #[test]
    fn cone_dim_with_implicit_equality() {
        // {x >= 0, -x >= 0, y >= 0}: dimension 1
        let c = HalfOpenCone {
            ambient_dim: 2,
            closed_ineqs: pts(&[&[1, 0], &[-1, 0], &[0, 1]]),
            strict_ineqs: vec![],
            equations: vec![],
        };
        assert_eq!(cone_dim(&c), 1);
    }
}
