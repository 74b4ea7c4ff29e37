//! Assembly of local and topological zeta functions: monomial integrals, the
//! face-and-vanishing-pattern decomposition of the general integral, and the
//! Euler-characteristic-weighted reduction that produces topological zeta
//! functions. Every output is a sum over pairs (visible face tau of the joint
//! Newton polytope, subset g of the defining polynomials), with the pair's
//! contribution given by a cone generating function weighted either by a
//! torus point count (local case) or by an Euler characteristic (topological
//! case).

use crate::conegen::{closure_simplex_data, zed_cone_polytopes, SubstitutionMatrix};
use crate::error::{Error, Result};
use crate::euler::relative_khovanskii;
use crate::laurent::LaurentPoly;
use crate::newton::{
    face_initials, newton_polytope, nondegeneracy_check, torus_count, NondegPolicy, NondegVerdict,
};
use crate::numeric::{Int, Rat};
use crate::polyhedra::{
    cone_dim, minkowski_sum, visible_faces, HalfOpenCone, LatticePolytope,
};
use crate::ratfun::{LinForm, TermSum, TopRatFun, TopTerm};
use num::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use crate::newton::PolyFamily;

/// A zeta integration problem: an ambient half-open cone inside the
/// nonnegative orthant, the defining polynomial family, and an optional
/// affine specialization of the integrand exponents applied by the drivers.
#[derive(Clone, Debug)]
pub struct IntegralData {
    pub n: usize,
    pub c0: HalfOpenCone,
    pub family: PolyFamily,
    /// `(c, A)`: apply `t_j -> q^(c_j) * t~^(A_j)` on local zeta functions and
    /// `s_j -> <A_j, s~> - c_j` on topological ones.
    pub integrand_spec: Option<(Vec<Int>, Vec<Vec<Int>>)>,
    /// primes excluded by the construction (coefficient denominators etc.)
    pub bad_primes: Vec<u64>,
}

impl IntegralData {
    /// Intersect the given cone with the nonnegative orthant (the integral is
    /// only defined there) and validate the family.
    pub fn new(
        n: usize,
        extra_cone: HalfOpenCone,
        family: PolyFamily,
        integrand_spec: Option<(Vec<Int>, Vec<Vec<Int>>)>,
    ) -> Result<IntegralData> {
        assert_eq!(extra_cone.ambient_dim, n);
        assert_eq!(family.n, n);
        let mut c0 = HalfOpenCone::nonneg_orthant(n);
        c0.closed_ineqs.extend(extra_cone.closed_ineqs);
        c0.strict_ineqs.extend(extra_cone.strict_ineqs);
        c0.equations.extend(extra_cone.equations);
        let mut bad_primes = Vec::new();
        for f in family
            .constraint_group
            .iter()
            .chain(family.integrand_groups.iter().flatten())
        {
            for c in f.terms.values() {
                for p in crate::numeric::prime_factors(c.denom()) {
                    let p = u64::try_from(&p).unwrap_or(u64::MAX);
                    if !bad_primes.contains(&p) {
                        bad_primes.push(p);
                    }
                }
            }
        }
        bad_primes.sort_unstable();
        Ok(IntegralData {
            n,
            c0,
            family,
            integrand_spec,
            bad_primes,
        })
    }

    pub fn m(&self) -> usize {
        self.family.integrand_groups.len()
    }
}

/// One (face, subset) contribution in a report.
#[derive(Clone, Debug, Serialize)]
pub struct ContributionRecord {
    /// vertex subset of the joint Newton polytope
    pub face: Vec<usize>,
    pub face_dim: usize,
    /// member indices of the vanishing subset
    pub subset: Vec<usize>,
    /// torus point count (local case)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<String>,
    /// Euler characteristic weight (topological case)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<String>,
    /// number of elementary terms contributed
    pub terms: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaReport {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub verdict: String,
    pub verdict_flagged: bool,
    pub bad_primes: Vec<u64>,
    pub num_members: usize,
    pub num_visible_faces: usize,
    pub contributions: Vec<ContributionRecord>,
    pub formula: String,
    pub timing_ms: u128,
}

/// Options governing the non-degeneracy gate.
#[derive(Clone, Debug)]
pub struct ZetaOptions {
    pub policy: NondegPolicy,
    /// accept a `LikelyYes` verdict (flagged in the report)
    pub allow_likely: bool,
    /// proceed even on a degeneracy witness (for experiments; off by default)
    pub force_degenerate: bool,
}

impl Default for ZetaOptions {
    fn default() -> Self {
        ZetaOptions {
            policy: NondegPolicy::default(),
            allow_likely: true,
            force_degenerate: false,
        }
    }
}

/// The integral of `prod_j ||P_j(x)||^(s_j)` over `{x : v(x) in C0}`: equals
/// `(q-1)^n q^(-n)` times the cone-and-polytopes generating function with
/// `xi_0 = q^(-1)`, `xi_j = t_j`.
pub fn monomial_integral(c0: &HalfOpenCone, ps: &[LatticePolytope]) -> Result<TermSum> {
    let n = c0.ambient_dim;
    for p in ps {
        if p.vertices.iter().any(|v| v.iter().any(|x| x.is_negative())) {
            return Err(Error::Invalid(
                "monomial integral polytopes must lie in the nonnegative orthant".into(),
            ));
        }
    }
    let zed = zed_cone_polytopes(c0, ps)?;
    let mut prefix_exp = vec![0i64; 1 + ps.len()];
    prefix_exp[0] = -(n as i64);
    Ok(zed
        .flip_var0()
        .mul_prefactor(&Rat::one(), n as i64, &prefix_exp))
}

/// Data shared by the local and topological assemblies for one visible face.
struct FaceJob {
    face_id: Vec<usize>,
    face_dim: usize,
    /// intersection of `c0` with the relatively open normal cone of the face
    cell: HalfOpenCone,
    /// member initial forms at this face
    initials: Vec<LaurentPoly>,
    /// chosen vertex of each member's face of its Newton polytope
    lambda: Vec<Vec<Int>>,
}

fn face_jobs(data: &IntegralData, members: &[LaurentPoly]) -> Result<Vec<FaceJob>> {
    let newtons: Vec<LatticePolytope> = members
        .iter()
        .map(newton_polytope)
        .collect::<Result<_>>()?;
    let joint = minkowski_sum(&newtons)?;
    let mut jobs = Vec::new();
    for vf in visible_faces(&data.c0, &joint.sum) {
        let initials = face_initials(members, &vf.witness)?;
        // the chosen vertex of each member's face: lexicographically smallest
        // vertex of the member's piece of the decomposition
        let lambda: Vec<Vec<Int>> = newtons
            .iter()
            .map(|np| {
                let idx = np.face_in_direction(&vf.witness);
                idx.iter().map(|&i| np.vertices[i].clone()).min().unwrap()
            })
            .collect();
        jobs.push(FaceJob {
            face_id: vf.face.vertex_subset.clone(),
            face_dim: vf.face.dim,
            cell: vf.cell,
            initials,
            lambda,
        });
    }
    Ok(jobs)
}

/// The extended cone `C0^tau(g)` and polytopes `P_j^tau(g)` from a face job
/// and a subset; coordinates are the `n` ambient ones followed by one per
/// member of `g` in increasing member order.
fn extended_data(
    data: &IntegralData,
    groups: &[Vec<usize>],
    job: &FaceJob,
    subset: &[usize],
) -> (HalfOpenCone, Vec<LatticePolytope>) {
    let n = data.n;
    let e = subset.len();
    let ext_vertex = |member: usize| -> Vec<Int> {
        let mut v = job.lambda[member].clone();
        v.extend(vec![Int::zero(); e]);
        if let Some(pos) = subset.iter().position(|&s| s == member) {
            v[n + pos] = Int::one();
        }
        v
    };
    // extended cone: cell x R_(>0)^g intersected with the dual of P_0
    let mut cone = job.cell.extend_coords(e);
    for k in 0..e {
        let mut u = vec![Int::zero(); n + e];
        u[n + k] = Int::one();
        cone.strict_ineqs.push(u);
    }
    for &member in &groups[0] {
        cone.closed_ineqs.push(ext_vertex(member));
    }
    // integrand polytopes
    let polytopes: Vec<LatticePolytope> = groups[1..]
        .iter()
        .map(|group| {
            let pts: Vec<Vec<Int>> = group.iter().map(|&f| ext_vertex(f)).collect();
            crate::polyhedra::convex_hull(&pts).expect("nonempty group")
        })
        .collect();
    (cone, polytopes)
}

fn run_nondeg_gate(
    data: &IntegralData,
    members: &[LaurentPoly],
    opts: &ZetaOptions,
    global: bool,
) -> Result<(NondegVerdict, bool)> {
    let region = if global {
        HalfOpenCone::full_space(data.n)
    } else {
        data.c0.clone()
    };
    let verdict = nondegeneracy_check(members, data.n, &region, &opts.policy)?;
    let flagged = match &verdict {
        NondegVerdict::CertifiedYes => false,
        NondegVerdict::LikelyYes { .. } => {
            if !opts.allow_likely {
                return Err(Error::Invalid(
                    "non-degeneracy could not be certified and likely-yes verdicts are not accepted".into(),
                ));
            }
            true
        }
        NondegVerdict::WitnessNo(w) => {
            if !opts.force_degenerate {
                return Err(Error::DegenerateFamily {
                    face: w.face.clone(),
                    subset: w.subset.clone(),
                    q: w.p.pow(w.e),
                });
            }
            true
        }
    };
    Ok((verdict, flagged))
}

fn verdict_string(v: &NondegVerdict) -> String {
    match v {
        NondegVerdict::CertifiedYes => "certified-nondegenerate".into(),
        NondegVerdict::LikelyYes {
            primes,
            max_degree,
        } => format!(
            "likely-nondegenerate (searched p in {:?}, extension degrees <= {})",
            primes, max_degree
        ),
        NondegVerdict::WitnessNo(w) => format!(
            "degenerate (witness on face {:?}, subset {:?}, over F_{})",
            w.face,
            w.subset,
            w.p.pow(w.e)
        ),
    }
}

/// The local zeta function at residue field size `q`: a sum over visible
/// faces and vanishing patterns of `count * (q-1)^(|g|) q^(-n)` times the
/// cone-and-polytopes generating function of the extended data, with `q`
/// symbolic in the result and the counts evaluated at the given `q`.
pub fn padic_zeta(data: &IntegralData, q: u64, opts: &ZetaOptions) -> Result<(TermSum, ZetaReport)> {
    let start = std::time::Instant::now();
    let (p, _) = crate::newton::prime_power(q)
        .ok_or_else(|| Error::Invalid(format!("{} is not a prime power", q)))?;
    if data.bad_primes.contains(&p) {
        return Err(Error::BadPrime(p));
    }
    let (members, groups) = data.family.members();
    let (verdict, flagged) = run_nondeg_gate(data, &members, opts, false)?;
    let jobs = face_jobs(data, &members)?;
    let m = data.m();
    let n = data.n;

    // enumerate (face, subset) pairs; members with monomial initial form at a
    // face never vanish on the torus and are pruned from the subsets
    let mut pairs: Vec<(usize, Vec<usize>)> = Vec::new();
    for (j, job) in jobs.iter().enumerate() {
        let nonmono: Vec<usize> = (0..members.len())
            .filter(|&i| job.initials[i].num_terms() > 1)
            .collect();
        for mask in 0u32..(1 << nonmono.len()) {
            let subset: Vec<usize> = nonmono
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &i)| i)
                .collect();
            pairs.push((j, subset));
        }
    }

    let results: Vec<Result<(usize, Vec<usize>, usize, Int, TermSum)>> = pairs
        .par_iter()
        .map(|(jid, subset)| {
            let job = &jobs[*jid];
            let keep: Vec<LaurentPoly> =
                subset.iter().map(|&i| job.initials[i].clone()).collect();
            let avoid: Vec<LaurentPoly> = (0..members.len())
                .filter(|i| !subset.contains(i))
                .map(|i| job.initials[i].clone())
                .collect();
            let count = torus_count(&keep, &avoid, q, n)?;
            if count.is_zero() {
                return Ok((*jid, subset.clone(), 0, count, TermSum::zero(1 + m)));
            }
            let (cone, polytopes) = extended_data(data, &groups, job, subset);
            let zed = zed_cone_polytopes(&cone, &polytopes)?;
            let mut prefix = vec![0i64; 1 + m];
            prefix[0] = -(n as i64);
            let w = zed.flip_var0().mul_prefactor(
                &Rat::from_integer(count.clone()),
                subset.len() as i64,
                &prefix,
            );
            Ok((*jid, subset.clone(), w.len(), count, w))
        })
        .collect();

    let mut total = TermSum::zero(1 + m);
    let mut contributions = Vec::new();
    for r in results {
        let (jid, subset, terms, count, w) = r?;
        total = total.add(&w);
        contributions.push(ContributionRecord {
            face: jobs[jid].face_id.clone(),
            face_dim: jobs[jid].face_dim,
            subset,
            count: Some(count.to_string()),
            chi: None,
            terms,
        });
    }
    contributions.sort_by(|a, b| (&a.face, &a.subset).cmp(&(&b.face, &b.subset)));

    let report = ZetaReport {
        kind: "padic".into(),
        q: Some(q),
        verdict: verdict_string(&verdict),
        verdict_flagged: flagged,
        bad_primes: data.bad_primes.clone(),
        num_members: members.len(),
        num_visible_faces: jobs.len(),
        contributions,
        formula: String::new(),
        timing_ms: start.elapsed().as_millis(),
    };
    Ok((total, report))
}

/// The topological zeta function: the reduction modulo `q - 1` of the local
/// assembly, with torus counts replaced by Euler characteristics of the
/// initial-form varieties (computed as alternating mixed-volume sums). Only
/// cone pieces of the maximal dimension `n - dim(tau) + |g|` survive the
/// reduction, so the assembly works directly with closed-cone triangulations.
pub fn topological_zeta(
    data: &IntegralData,
    opts: &ZetaOptions,
) -> Result<(TopRatFun, ZetaReport)> {
    let start = std::time::Instant::now();
    let (members, groups) = data.family.members();
    let (verdict, flagged) = run_nondeg_gate(data, &members, opts, true)?;
    let jobs = face_jobs(data, &members)?;
    let m = data.m();
    let n = data.n;

    let mut pairs: Vec<(usize, Vec<usize>, Rat)> = Vec::new();
    for (j, job) in jobs.iter().enumerate() {
        let nonmono: Vec<usize> = (0..members.len())
            .filter(|&i| job.initials[i].num_terms() > 1)
            .collect();
        let initial_newtons: Vec<LatticePolytope> = job
            .initials
            .iter()
            .map(newton_polytope)
            .collect::<Result<_>>()?;
        let refs: Vec<&LatticePolytope> = initial_newtons.iter().collect();
        for mask in 0u32..(1 << nonmono.len()) {
            let subset: Vec<usize> = nonmono
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &i)| i)
                .collect();
            let chi = relative_khovanskii(&refs, &subset)?;
            if !chi.is_zero() {
                pairs.push((j, subset, chi));
            }
        }
    }

    let results: Vec<Result<(usize, Vec<usize>, Rat, TopRatFun)>> = pairs
        .par_iter()
        .map(|(jid, subset, chi)| {
            let job = &jobs[*jid];
            let expected_dim = n - job.face_dim + subset.len();
            let (cone, polytopes) = extended_data(data, &groups, job, subset);
            if cone.witness().is_none() || cone_dim(&cone) < expected_dim {
                return Ok((*jid, subset.clone(), chi.clone(), TopRatFun::zero(m)));
            }
            let contribution = reduced_zed(&cone, &polytopes, expected_dim)?;
            Ok((*jid, subset.clone(), chi.clone(), contribution.scale(chi)))
        })
        .collect();

    let mut total = TopRatFun::zero(m);
    let mut contributions = Vec::new();
    for r in results {
        let (jid, subset, chi, f) = r?;
        contributions.push(ContributionRecord {
            face: jobs[jid].face_id.clone(),
            face_dim: jobs[jid].face_dim,
            subset,
            count: None,
            chi: Some(chi.to_string()),
            terms: f.terms.len(),
        });
        total = total.add(&f);
    }
    contributions.sort_by(|a, b| (&a.face, &a.subset).cmp(&(&b.face, &b.subset)));

    let report = ZetaReport {
        kind: "topological".into(),
        q: None,
        verdict: verdict_string(&verdict),
        verdict_flagged: flagged,
        bad_primes: data.bad_primes.clone(),
        num_members: members.len(),
        num_visible_faces: jobs.len(),
        contributions,
        formula: String::new(),
        timing_ms: start.elapsed().as_millis(),
    };
    Ok((total, report))
}

/// Reduction modulo `q - 1` of `q^(-n) (q-1)^e Z(q^(-1), t)` for the given
/// extended cone and polytopes, assembled directly: every full-dimensional
/// simplex of a triangulation of a visible cell contributes its lattice index
/// over the product of linear forms `<1, g> + sum_j <v_j, g> s_j`.
fn reduced_zed(
    c0: &HalfOpenCone,
    polytopes: &[LatticePolytope],
    expected_dim: usize,
) -> Result<TopRatFun> {
    let m = polytopes.len();
    let n = c0.ambient_dim;
    let mut out = TopRatFun::zero(m);
    if c0.witness().is_none() {
        return Ok(out);
    }
    let ms = minkowski_sum(polytopes)?;
    let sum_faces = crate::polyhedra::face_lattice(&ms.sum);
    for vf in visible_faces(c0, &ms.sum) {
        if cone_dim(&vf.cell) < expected_dim {
            continue;
        }
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
                p.vertices[f[0]].clone()
            })
            .collect();
        let a = SubstitutionMatrix::for_vertices(n, &parts);
        for (mult, dens) in closure_simplex_data(&vf.cell, &a)? {
            if dens.len() != expected_dim {
                assert!(
                    dens.len() < expected_dim,
                    "cone dimension beyond the membership bound"
                );
                continue;
            }
            let forms: Vec<LinForm> = dens
                .iter()
                .map(|u| LinForm {
                    c0: Int::from(u[0]),
                    cs: u[1..].iter().map(|&x| Int::from(x)).collect(),
                })
                .collect();
            out.push(TopTerm {
                coeff: Rat::from_integer(mult),
                den: forms,
            });
        }
    }
    Ok(out)
}

/// Apply the integrand specialization attached to the data (identity if none)
/// to a local zeta function.
pub fn specialize_integrand_local(data: &IntegralData, w: &TermSum) -> Result<TermSum> {
    match &data.integrand_spec {
        None => Ok(w.clone()),
        Some((c, a)) => w.substitute_monomial_affine(c, a),
    }
}

/// Same on the topological side: `s_j -> <A_j, s~> - c_j`.
pub fn specialize_integrand_top(data: &IntegralData, f: &TopRatFun) -> TopRatFun {
    match &data.integrand_spec {
        None => f.clone(),
        Some((c, a)) => f.substitute_affine(c, a),
    }
}

/// Result bundle of the one-polynomial-family front end.
pub struct IgusaOutput {
    pub padic: Option<(TermSum, ZetaReport)>,
    pub topological: Option<(TopRatFun, ZetaReport)>,
    pub data: IntegralData,
}

/// Igusa-style front end: polynomials `f_1, ..., f_m` with multiplicities
/// `e_j` over the full nonnegative orthant, constraint group empty, and the
/// diagonal specialization `s_j = e_j s`.
pub fn igusa_front(
    fs: &[LaurentPoly],
    multiplicities: &[u32],
    q: Option<u64>,
    topological: bool,
    opts: &ZetaOptions,
) -> Result<IgusaOutput> {
    assert_eq!(fs.len(), multiplicities.len());
    let n = fs.first().map(|f| f.nvars).unwrap_or(0);
    let family = PolyFamily::new(n, vec![], fs.iter().map(|f| vec![f.clone()]).collect())?;
    let spec_c = vec![Int::zero(); fs.len()];
    let spec_a: Vec<Vec<Int>> = multiplicities
        .iter()
        .map(|&e| vec![Int::from(e)])
        .collect();
    let data = IntegralData::new(
        n,
        HalfOpenCone::full_space(n),
        family,
        Some((spec_c, spec_a)),
    )?;
    let padic = match q {
        Some(q) => {
            let (w, mut report) = padic_zeta(&data, q, opts)?;
            let w = specialize_integrand_local(&data, &w)?;
            report.formula = crate::render::termsum_text(&w.normalize_fraction());
            Some((w, report))
        }
        None => None,
    };
    let topological = if topological {
        let (f, mut report) = topological_zeta(&data, opts)?;
        let f = specialize_integrand_top(&data, &f);
        report.formula = crate::render::top_text(&f.normalize());
        Some((f, report))
    } else {
        None
    };
    Ok(IgusaOutput {
        padic,
        topological,
        data,
    })
}

/// Interpolate per-(face, subset) torus counts from several primes into
/// polynomials in `q` and assemble a uniform-in-`q` local zeta function.
/// Heuristic: the interpolation is verified at two held-out primes but the
/// result is only known to be correct at the sampled primes.
pub fn padic_zeta_interpolated(
    data: &IntegralData,
    sample_qs: &[u64],
    opts: &ZetaOptions,
) -> Result<(TermSum, ZetaReport)> {
    if sample_qs.len() < 7 {
        return Err(Error::Invalid(
            "interpolation needs at least 5 sample primes plus 2 holdouts".into(),
        ));
    }
    let (fit, holdout) = sample_qs.split_at(sample_qs.len() - 2);
    let (members, groups) = data.family.members();
    let (verdict, flagged) = run_nondeg_gate(data, &members, opts, false)?;
    let jobs = face_jobs(data, &members)?;
    let m = data.m();
    let n = data.n;
    let start = std::time::Instant::now();

    let mut total = TermSum::zero(1 + m);
    let mut contributions = Vec::new();
    for (jid, job) in jobs.iter().enumerate() {
        let nonmono: Vec<usize> = (0..members.len())
            .filter(|&i| job.initials[i].num_terms() > 1)
            .collect();
        for mask in 0u32..(1 << nonmono.len()) {
            let subset: Vec<usize> = nonmono
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &i)| i)
                .collect();
            let keep: Vec<LaurentPoly> =
                subset.iter().map(|&i| job.initials[i].clone()).collect();
            let avoid: Vec<LaurentPoly> = (0..members.len())
                .filter(|i| !subset.contains(i))
                .map(|i| job.initials[i].clone())
                .collect();
            let counts: Vec<(u64, Int)> = fit
                .iter()
                .map(|&q| torus_count(&keep, &avoid, q, n).map(|c| (q, c)))
                .collect::<Result<_>>()?;
            let poly = lagrange_fit(&counts)?;
            for &q in holdout {
                let direct = torus_count(&keep, &avoid, q, n)?;
                let predicted = eval_int_poly(&poly, q);
                if predicted != Rat::from_integer(direct) {
                    return Err(Error::Invalid(format!(
                        "count interpolation fails verification at q = {}",
                        q
                    )));
                }
            }
            if poly.iter().all(|c| c.is_zero()) {
                continue;
            }
            let (cone, polytopes) = extended_data(data, &groups, job, &subset);
            let zed = zed_cone_polytopes(&cone, &polytopes)?;
            let mut prefix = vec![0i64; 1 + m];
            prefix[0] = -(n as i64);
            let base = zed.flip_var0();
            // multiply by the count polynomial in q: sum_k c_k q^k
            let mut w = TermSum::zero(1 + m);
            for (k, c) in poly.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut shift = prefix.clone();
                shift[0] += k as i64;
                w = w.add(&base.mul_prefactor(c, subset.len() as i64, &shift));
            }
            contributions.push(ContributionRecord {
                face: job.face_id.clone(),
                face_dim: job.face_dim,
                subset,
                count: Some(format!("poly(q) deg {}", poly.len().saturating_sub(1))),
                chi: None,
                terms: w.len(),
            });
            total = total.add(&w);
        }
        let _ = jid;
    }
    contributions.sort_by(|a, b| (&a.face, &a.subset).cmp(&(&b.face, &b.subset)));
    let report = ZetaReport {
        kind: "padic-interpolated(heuristic)".into(),
        q: None,
        verdict: verdict_string(&verdict),
        verdict_flagged: flagged,
        bad_primes: data.bad_primes.clone(),
        num_members: members.len(),
        num_visible_faces: jobs.len(),
        contributions,
        formula: String::new(),
        timing_ms: start.elapsed().as_millis(),
    };
    Ok((total, report))
}

/// Coefficients (low to high) of the interpolating polynomial through the
/// sample points, which must have integer values; fails on non-polynomial
/// behaviour only through the holdout check above.
fn lagrange_fit(points: &[(u64, Int)]) -> Result<Vec<Rat>> {
    let k = points.len();
    let mut coeffs = vec![Rat::zero(); k];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_(j != i) (x - x_j)/(x_i - x_j)
        let mut basis = vec![Rat::zero(); k];
        basis[0] = Rat::one();
        let mut deg = 0;
        let mut denom = Rat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            // multiply basis by (x - x_j)
            let mut next = vec![Rat::zero(); k];
            for t in 0..=deg {
                let c = basis[t].clone();
                next[t + 1] += &c;
                next[t] -= c * Rat::from_integer(Int::from(*xj));
            }
            basis = next;
            deg += 1;
            denom *= Rat::from_integer(Int::from(*xi) - Int::from(*xj));
        }
        let scale = Rat::from_integer(yi.clone()) / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
        coeffs.pop();
    }
    Ok(coeffs)
}

fn eval_int_poly(coeffs: &[Rat], x: u64) -> Rat {
    let mut v = Rat::zero();
    for c in coeffs.iter().rev() {
        v = v * Rat::from_integer(Int::from(x)) + c;
    }
    v
}

/// Specialization `t_j -> q^j T` (equivalently `s_j -> s - j`): the passage
/// from the multivariate integral to the one-variable zeta function of an
/// algebra of rank `d`.
pub fn diagonal_shift_spec(d: usize) -> (Vec<Int>, Vec<Vec<Int>>) {
    (
        (1..=d as i64).map(Int::from).collect(),
        vec![vec![Int::one()]; d],
    )
}

/// Divide a local zeta function by `(1 - q^(-1))^d`, the normalization
/// between the integral over the triangular-matrix domain and the Dirichlet
/// series it represents.
pub fn strip_unit_measure(w: &TermSum, d: usize) -> TermSum {
    let mut exp = vec![0i64; w.nvars];
    exp[0] = d as i64;
    w.mul_prefactor(&Rat::one(), -(d as i64), &exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat, ratio};
    use crate::ratfun::Term;

    fn ts(nvars: usize, terms: Vec<Term>) -> TermSum {
        let mut w = TermSum::zero(nvars);
        for t in terms {
            w.push(t);
        }
        w
    }

    #[test]
    fn monomial_integral_single_variable() {
        // integral of |x|^s over the valuation ring: (1-q^-1)/(1-q^-1 t)
        let c0 = HalfOpenCone::nonneg_orthant(1);
        let p = crate::polyhedra::convex_hull(&[vec![int(1)]]).unwrap();
        let w = monomial_integral(&c0, &[p]).unwrap();
        let expect = ts(
            2,
            vec![
                Term {
                    coeff: rat(1),
                    qone_pow: 1,
                    num: vec![-1, 0],
                    den: vec![vec![-1, 1]],
                },
            ],
        );
        assert!(w.equals(&expect));
        // value check at q = 3, t = 1/9: (1 - 1/3)/(1 - 1/27) = (2/3)/(26/27) = 9/13
        let v = w.evaluate_numeric(&[rat(3), ratio(1, 9)]).unwrap();
        assert_eq!(v, ratio(9, 13));
    }

    #[test]
    fn monomial_integral_empty_cone() {
        let c0 = HalfOpenCone {
            ambient_dim: 1,
            closed_ineqs: vec![vec![int(1)]],
            strict_ineqs: vec![vec![int(-1)]],
            equations: vec![],
        };
        let p = crate::polyhedra::convex_hull(&[vec![int(1)]]).unwrap();
        let w = monomial_integral(&c0, &[p]).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn monomial_integral_series_matches_direct_sum() {
        // n=2, P = conv{(2,0),(0,3)}: series vs direct summation at q=3, t=3^-2
        let c0 = HalfOpenCone::nonneg_orthant(2);
        let p = crate::polyhedra::convex_hull(&[vec![int(2), int(0)], vec![int(0), int(3)]])
            .unwrap();
        let w = monomial_integral(&c0, &[p]).unwrap();
        let q = rat(3);
        let t = ratio(1, 9);
        let val = w.evaluate_numeric(&[q.clone(), t.clone()]).unwrap();
        // direct: (1-q^-1)^2 sum over omega >= 0 of q^(-|omega|) t^min(2w1,3w2),
        // truncated far enough to agree within the check's precision; compare
        // the exact value against the partial sum plus a tail bound instead:
        // here simply check agreement of the series coefficients.
        let mut partial = Rat::zero();
        let bound = 60i64;
        for w1 in 0..=bound {
            for w2 in 0..=bound - w1 {
                let min = (2 * w1).min(3 * w2);
                partial += crate::numeric::rat_pow(&q, -(w1 + w2))
                    * crate::numeric::rat_pow(&t, min);
            }
        }
        partial *= (Rat::one() - q.clone().recip()) * (Rat::one() - q.recip());
        // the tail is positive and tiny; check |val - partial| < 3^-40
        let diff = (val - partial).abs();
        assert!(diff < crate::numeric::rat_pow(&rat(3), -40));
    }

    /// rank-d zero algebra: family = integrand monomials only, C0 = orthant.
    fn zero_algebra_data(d: usize) -> IntegralData {
        let n = d * (d + 1) / 2;
        // diagonal coordinate of row i in the flattened upper-triangular order
        let mut idx = 0usize;
        let mut diagonals = Vec::new();
        for i in 0..d {
            diagonals.push(idx);
            idx += d - i;
        }
        let groups: Vec<Vec<LaurentPoly>> = diagonals
            .iter()
            .map(|&k| {
                let mut e = vec![0i64; n];
                e[k] = 1;
                vec![LaurentPoly::monomial(n, &e, rat(1))]
            })
            .collect();
        let family = PolyFamily::new(n, vec![], groups).unwrap();
        IntegralData::new(n, HalfOpenCone::full_space(n), family, Some(diagonal_shift_spec(d)))
            .unwrap()
    }

    #[test]
    fn zero_algebra_rank2_padic() {
        // expect zeta = 1/((1-T)(1-qT)) after specialization and stripping
        let data = zero_algebra_data(2);
        let (w, _report) = padic_zeta(&data, 3, &ZetaOptions::default()).unwrap();
        let w = specialize_integrand_local(&data, &w).unwrap();
        let zeta = strip_unit_measure(&w, 2);
        let expect = ts(
            2,
            vec![Term {
                coeff: rat(1),
                qone_pow: 0,
                num: vec![0, 0],
                den: vec![vec![0, 1], vec![1, 1]],
            }],
        );
        // counts were evaluated at q = 3, so compare there
        assert!(zeta.equals_at_var0(&expect, &rat(3)));
    }

    #[test]
    fn zero_algebra_rank3_series_is_sublattice_count() {
        let data = zero_algebra_data(3);
        let (w, _report) = padic_zeta(&data, 3, &ZetaOptions::default()).unwrap();
        let w = specialize_integrand_local(&data, &w).unwrap();
        let zeta = strip_unit_measure(&w, 3);
        let coeffs = zeta.power_series_coeffs(&rat(3), 2).unwrap();
        // numbers of sublattices of Z^3 of index 3^k: 1, 13, 130
        assert_eq!(coeffs[0], rat(1));
        assert_eq!(coeffs[1], rat(13));
        assert_eq!(coeffs[2], rat(130));
    }

    #[test]
    fn zero_algebra_topological() {
        for d in 1..=3usize {
            let data = zero_algebra_data(d);
            let (f, _report) = topological_zeta(&data, &ZetaOptions::default()).unwrap();
            let f = specialize_integrand_top(&data, &f);
            // expect 1/(s (s-1) ... (s-(d-1)))
            let mut expect = TopRatFun::zero(1);
            expect.push(TopTerm {
                coeff: rat(1),
                den: (0..d as i64)
                    .map(|k| LinForm {
                        c0: int(-k),
                        cs: vec![int(1)],
                    })
                    .collect(),
            });
            assert!(f.equals(&expect), "rank {}", d);
        }
    }

    #[test]
    fn igusa_single_variable() {
        // f = X: local (1-p^-1)/(1-p^-1 t) and topological 1/(s+1)
        let f = LaurentPoly::monomial(1, &[1], rat(1));
        let out = igusa_front(&[f], &[1], Some(3), true, &ZetaOptions::default()).unwrap();
        let (w, _) = out.padic.unwrap();
        let expect = ts(
            2,
            vec![Term {
                coeff: rat(1),
                qone_pow: 1,
                num: vec![-1, 0],
                den: vec![vec![-1, 1]],
            }],
        );
        assert!(w.equals_at_var0(&expect, &rat(3)));
        let (t, _) = out.topological.unwrap();
        let mut expect_top = TopRatFun::zero(1);
        expect_top.push(TopTerm {
            coeff: rat(1),
            den: vec![LinForm {
                c0: int(1),
                cs: vec![int(1)],
            }],
        });
        assert!(t.equals(&expect_top));
    }

    #[test]
    fn igusa_power_topological() {
        // f = X^e: topological 1/(es + 1)
        for e in 2..=4u32 {
            let f = LaurentPoly::monomial(1, &[1], rat(1));
            let out = igusa_front(&[f], &[e], None, true, &ZetaOptions::default()).unwrap();
            let (t, _) = out.topological.unwrap();
            let mut expect = TopRatFun::zero(1);
            expect.push(TopTerm {
                coeff: rat(1),
                den: vec![LinForm {
                    c0: int(1),
                    cs: vec![int(e as i64)],
                }],
            });
            assert!(t.equals(&expect), "e = {}", e);
        }
    }

    #[test]
    fn empty_cell_pairs_do_not_matter() {
        // dropping pairs with empty extended cones never changes the total:
        // this is implicit in the assembly; verify a case where some cells
        // are empty by checking against the direct Dirichlet coefficients
        let data = zero_algebra_data(2);
        let (w, _r) = padic_zeta(&data, 5, &ZetaOptions::default()).unwrap();
        let w = specialize_integrand_local(&data, &w).unwrap();
        let zeta = strip_unit_measure(&w, 2);
        let coeffs = zeta.power_series_coeffs(&rat(5), 3).unwrap();
        // sublattice counts of Z^2 at p=5: 1, 6, 31, 156
        assert_eq!(coeffs, vec![rat(1), rat(6), rat(31), rat(156)]);
    }
}
