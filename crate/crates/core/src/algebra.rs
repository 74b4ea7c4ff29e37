//! From structure constants to an integration problem: the cone-integral
//! construction for subalgebra, ideal, and submodule zeta functions.
//!
//! A rank-`d` presentation is turned into polynomials in the entries of a
//! symbolic upper-triangular matrix `C` whose rows span a candidate
//! sublattice: closure of the lattice under the relevant operations is
//! equivalent to integrality of the entries of `(row product) * C^(-1)`.
//! Entries that are single monomials become inequalities on the valuation
//! cone; the rest form the constraint group of the integral, whose integrand
//! is `|x_11|^(s-1) ... |x_dd|^(s-d)` over the diagonal variables.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::numeric::{Int, Rat};
use crate::polyhedra::HalfOpenCone;
use crate::zeta::{diagonal_shift_spec, IntegralData, PolyFamily};
use num::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    General,
    Lie,
    Associative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraMode {
    Subalgebra,
    Ideal,
    Module,
}

/// Structure constants `e_i e_j = sum_k c[i][j][k] e_k` (or, in module mode,
/// a list of matrices acting on row vectors) defining the counting problem.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub rank: usize,
    pub kind: AlgebraKind,
    pub mode: AlgebraMode,
    pub structure_constants: Vec<Vec<Vec<Rat>>>,
    /// generator matrices for module mode, acting by `v -> v * G`
    pub generators: Vec<Vec<Vec<Rat>>>,
    pub name: String,
}

impl AlgebraPresentation {
    pub fn new_algebra(
        rank: usize,
        kind: AlgebraKind,
        mode: AlgebraMode,
        structure_constants: Vec<Vec<Vec<Rat>>>,
        name: &str,
    ) -> Result<Self> {
        assert_ne!(mode, AlgebraMode::Module, "module mode takes generators");
        let c = &structure_constants;
        if c.len() != rank || c.iter().any(|x| x.len() != rank || x.iter().any(|y| y.len() != rank))
        {
            return Err(Error::Invalid("structure constant shape mismatch".into()));
        }
        if kind == AlgebraKind::Lie {
            for i in 0..rank {
                for k in 0..rank {
                    if !c[i][i][k].is_zero() {
                        return Err(Error::Invalid(format!(
                            "Lie kind needs e_{0} e_{0} = 0",
                            i + 1
                        )));
                    }
                    for j in 0..rank {
                        if c[i][j][k] != -c[j][i][k].clone() {
                            return Err(Error::Invalid(
                                "Lie kind needs antisymmetric constants".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(AlgebraPresentation {
            rank,
            kind,
            mode,
            structure_constants,
            generators: vec![],
            name: name.into(),
        })
    }

    pub fn new_module(rank: usize, generators: Vec<Vec<Vec<Rat>>>, name: &str) -> Result<Self> {
        for g in &generators {
            if g.len() != rank || g.iter().any(|row| row.len() != rank) {
                return Err(Error::Invalid("generator shape mismatch".into()));
            }
        }
        Ok(AlgebraPresentation {
            rank,
            kind: AlgebraKind::Associative,
            mode: AlgebraMode::Module,
            structure_constants: vec![],
            generators,
            name: name.into(),
        })
    }

    pub fn all_constants(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = self
            .structure_constants
            .iter()
            .flatten()
            .flatten()
            .cloned()
            .collect();
        out.extend(self.generators.iter().flatten().flatten().cloned());
        out
    }

    /// The maps whose closure defines the counting problem, used by the
    /// brute-force oracle.
    pub fn closure_products(&self) -> crate::oracle::ClosureProducts {
        match self.mode {
            AlgebraMode::Subalgebra => {
                crate::oracle::ClosureProducts::Pairs(self.structure_constants.clone())
            }
            AlgebraMode::Module => crate::oracle::ClosureProducts::Linear(self.generators.clone()),
            AlgebraMode::Ideal => {
                crate::oracle::ClosureProducts::Linear(self.multiplication_operators())
            }
        }
    }

    /// Left (and, for non-Lie kinds, right) multiplication operators by the
    /// ambient basis, acting on row vectors: the ideal condition is stability
    /// of the lattice under all of them.
    pub fn multiplication_operators(&self) -> Vec<Vec<Vec<Rat>>> {
        let d = self.rank;
        let c = &self.structure_constants;
        let mut mats = Vec::new();
        for a in 0..d {
            // left multiplication by e_a: (v M)_k = sum_j v_j c[a][j][k]
            let left: Vec<Vec<Rat>> = (0..d)
                .map(|j| (0..d).map(|k| c[a][j][k].clone()).collect())
                .collect();
            mats.push(left);
            if self.kind != AlgebraKind::Lie {
                let right: Vec<Vec<Rat>> = (0..d)
                    .map(|j| (0..d).map(|k| c[j][a][k].clone()).collect())
                    .collect();
                mats.push(right);
            }
        }
        mats
    }

    /// Change of basis `e'_i = sum_j U[i][j] e_j` by a unimodular matrix.
    pub fn change_basis(&self, u: &crate::exactlinalg::IntMatrix) -> Result<AlgebraPresentation> {
        let d = self.rank;
        if !u.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let uinv = u.inverse_unimodular();
        let mut out = self.clone();
        match self.mode {
            AlgebraMode::Module => {
                // vectors in new coordinates: v = v' U, action v -> v G:
                // G' = U G U^(-1)
                out.generators = self
                    .generators
                    .iter()
                    .map(|g| {
                        let mut m = vec![vec![Rat::zero(); d]; d];
                        for (i, row) in m.iter_mut().enumerate() {
                            for (k, entry) in row.iter_mut().enumerate() {
                                let mut acc = Rat::zero();
                                for a in 0..d {
                                    for b in 0..d {
                                        acc += Rat::from_integer(u[(i, a)].clone())
                                            * &g[a][b]
                                            * Rat::from_integer(uinv[(b, k)].clone());
                                    }
                                }
                                *entry = acc;
                            }
                        }
                        m
                    })
                    .collect();
            }
            _ => {
                let c = &self.structure_constants;
                let mut cc = vec![vec![vec![Rat::zero(); d]; d]; d];
                for i in 0..d {
                    for j in 0..d {
                        for k in 0..d {
                            let mut acc = Rat::zero();
                            for a in 0..d {
                                for b in 0..d {
                                    for t in 0..d {
                                        acc += Rat::from_integer(u[(i, a)].clone())
                                            * Rat::from_integer(u[(j, b)].clone())
                                            * &c[a][b][t]
                                            * Rat::from_integer(uinv[(t, k)].clone());
                                    }
                                }
                            }
                            cc[i][j][k] = acc;
                        }
                    }
                }
                out.structure_constants = cc;
            }
        }
        out.name = format!("{}+basis-change", self.name);
        Ok(out)
    }
}

/// Index of the upper-triangular coordinate `(i, j)` (`i <= j`, zero-based)
/// in the flattened order `x_11, x_12, ..., x_1d, x_22, ..., x_dd`.
pub fn triangular_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < d);
    // rows 0..i contribute d - r entries each
    (0..i).map(|r| d - r).sum::<usize>() + (j - i)
}

/// The diagonal coordinate indices, whose variables carry the integrand.
pub fn diagonal_indices(d: usize) -> Vec<usize> {
    (0..d).map(|i| triangular_index(d, i, i)).collect()
}

/// Build the integration problem of a presentation: symbolic conditions
/// `(C_m op C_n) C^(-1)` integral, with monomial conditions absorbed into the
/// ambient cone, the ultrametric simplifications applied, and the diagonal
/// integrand attached.
pub fn cone_integral_data(pres: &AlgebraPresentation) -> Result<IntegralData> {
    let d = pres.rank;
    let n = d * (d + 1) / 2;
    // symbolic upper-triangular matrix and its inverse over the Laurent ring
    let var = |i: usize, j: usize| -> LaurentPoly {
        LaurentPoly::var(n, triangular_index(d, i, j))
    };
    let mut c_inv: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::zero(n); d]; d];
    for i in (0..d).rev() {
        // 1/x_ii as a Laurent monomial
        let mut inv_exp = vec![0i64; n];
        inv_exp[triangular_index(d, i, i)] = -1;
        let diag_inv = LaurentPoly::monomial(n, &inv_exp, Rat::one());
        c_inv[i][i] = diag_inv.clone();
        for j in i + 1..d {
            // (C^-1)_(ij) = -x_ii^(-1) sum_(k=i+1..=j) C_(ik) (C^-1)_(kj)
            let mut acc = LaurentPoly::zero(n);
            for k in i + 1..=j {
                acc = acc.add(&var(i, k).mul(&c_inv[k][j]));
            }
            c_inv[i][j] = acc.mul(&diag_inv).neg();
        }
    }
    let row = |m: usize| -> Vec<LaurentPoly> {
        (0..d)
            .map(|j| if j < m { LaurentPoly::zero(n) } else { var(m, j) })
            .collect()
    };

    // the products whose membership defines closure
    let mut product_vectors: Vec<Vec<LaurentPoly>> = Vec::new();
    match pres.mode {
        AlgebraMode::Subalgebra => {
            let c = &pres.structure_constants;
            for m in 0..d {
                let np_range: Vec<usize> = match pres.kind {
                    AlgebraKind::Lie => (m + 1..d).collect(),
                    _ => (0..d).collect(),
                };
                for nn in np_range {
                    let u = row(m);
                    let v = row(nn);
                    let mut prod = vec![LaurentPoly::zero(n); d];
                    for (i, ui) in u.iter().enumerate() {
                        if ui.is_zero() {
                            continue;
                        }
                        for (j, vj) in v.iter().enumerate() {
                            if vj.is_zero() {
                                continue;
                            }
                            for (k, p) in prod.iter_mut().enumerate() {
                                if !c[i][j][k].is_zero() {
                                    *p = p.add(&ui.mul(vj).scale(&c[i][j][k]));
                                }
                            }
                        }
                    }
                    product_vectors.push(prod);
                }
            }
        }
        AlgebraMode::Module | AlgebraMode::Ideal => {
            let mats = if pres.mode == AlgebraMode::Module {
                pres.generators.clone()
            } else {
                pres.multiplication_operators()
            };
            for g in &mats {
                for m in 0..d {
                    let u = row(m);
                    let mut img = vec![LaurentPoly::zero(n); d];
                    for (i, ui) in u.iter().enumerate() {
                        if ui.is_zero() {
                            continue;
                        }
                        for (k, o) in img.iter_mut().enumerate() {
                            if !g[i][k].is_zero() {
                                *o = o.add(&ui.scale(&g[i][k]));
                            }
                        }
                    }
                    product_vectors.push(img);
                }
            }
        }
    }

    // entries of (product) * C^(-1)
    let mut entries: Vec<LaurentPoly> = Vec::new();
    for w in &product_vectors {
        for j in 0..d {
            let mut entry = LaurentPoly::zero(n);
            for (k, wk) in w.iter().enumerate() {
                if !wk.is_zero() && !c_inv[k][j].is_zero() {
                    entry = entry.add(&wk.mul(&c_inv[k][j]));
                }
            }
            if !entry.is_zero() {
                entries.push(entry);
            }
        }
    }

    // simplification pipeline
    let mut bad_primes: Vec<u64> = Vec::new();
    let mut record_rat = |r: &Rat, bp: &mut Vec<u64>| {
        for part in [r.numer().clone(), r.denom().clone()] {
            if part.abs().is_one() || part.is_zero() {
                continue;
            }
            for p in crate::numeric::prime_factors(&part) {
                let p = u64::try_from(&p).unwrap_or(u64::MAX);
                if !bp.contains(&p) {
                    bp.push(p);
                }
            }
        }
    };
    // content-normalize entries, record content primes, dedupe
    let mut fs: Vec<LaurentPoly> = Vec::new();
    for e in entries {
        let content = e.rational_content();
        record_rat(&content, &mut bad_primes);
        let norm = e.scale(&content.recip());
        if !fs.contains(&norm) {
            fs.push(norm);
        }
    }

    let mut c0_extra: Vec<Vec<Int>> = Vec::new();
    let cone_with = |extra: &Vec<Vec<Int>>| -> HalfOpenCone {
        let mut c = HalfOpenCone::nonneg_orthant(n);
        c.closed_ineqs.extend(extra.iter().cloned());
        c
    };
    let in_dual = |gamma: &[i64], extra: &Vec<Vec<Int>>| -> bool {
        // min <gamma, w> >= 0 over the cone <=> {cone, <gamma, w> <= -1} empty
        let mut probe = cone_with(extra);
        probe
            .strict_ineqs
            .push(gamma.iter().map(|&x| Int::from(-x)).collect());
        probe.is_empty()
    };

    loop {
        let mut changed = false;
        // drop terms whose monomial has nonnegative valuation on the cone
        let mut next: Vec<LaurentPoly> = Vec::new();
        for f in &fs {
            let mut g = f.clone();
            for (e, c) in f.terms.iter() {
                if in_dual(e, &c0_extra) {
                    record_rat(c, &mut bad_primes);
                    g.add_term(e, &-c.clone());
                    changed = true;
                }
            }
            if g.is_zero() {
                // condition became vacuous
                continue;
            }
            let content = g.rational_content();
            record_rat(&content, &mut bad_primes);
            let g = g.scale(&content.recip());
            if g.is_monomial() {
                // absorb into the cone
                let (e, c) = g.terms.iter().next().unwrap();
                record_rat(c, &mut bad_primes);
                let gamma: Vec<Int> = e.iter().map(|&x| Int::from(x)).collect();
                if !c0_extra.contains(&gamma) {
                    c0_extra.push(gamma);
                    changed = true;
                }
                continue;
            }
            next.push(g);
        }
        next.dedup();
        // domination drop: f = monomial * f2 with f2 present and the monomial
        // nonnegative on the cone
        let mut kept: Vec<LaurentPoly> = Vec::new();
        for (i, f) in next.iter().enumerate() {
            let mut dominated = false;
            for (j, g) in next.iter().enumerate() {
                if i == j || f.num_terms() != g.num_terms() {
                    continue;
                }
                if let Some(shift) = monomial_quotient(f, g) {
                    if shift.iter().any(|&x| x != 0) && in_dual(&shift, &c0_extra) {
                        dominated = true;
                        changed = true;
                        break;
                    }
                    // exact duplicate handled by dedup; identical shift 0 skip
                    if shift.iter().all(|&x| x == 0) && j < i {
                        dominated = true;
                        break;
                    }
                }
            }
            if !dominated && !kept.contains(f) {
                kept.push(f.clone());
            }
        }
        fs = kept;
        if !changed {
            break;
        }
    }
    fs.sort_by(|a, b| format!("{:?}", a).cmp(&format!("{:?}", b)));

    // integrand groups: the diagonal variables x_11, ..., x_dd
    let groups: Vec<Vec<LaurentPoly>> = diagonal_indices(d)
        .into_iter()
        .map(|idx| {
            let mut e = vec![0i64; n];
            e[idx] = 1;
            vec![LaurentPoly::monomial(n, &e, Rat::one())]
        })
        .collect();
    let family = PolyFamily::new(n, fs, groups)?;
    let extra_cone = HalfOpenCone {
        ambient_dim: n,
        closed_ineqs: c0_extra,
        strict_ineqs: vec![],
        equations: vec![],
    };
    let mut data = IntegralData::new(n, extra_cone, family, Some(diagonal_shift_spec(d)))?;
    bad_primes.sort_unstable();
    for p in bad_primes {
        if !data.bad_primes.contains(&p) {
            data.bad_primes.push(p);
        }
    }
    data.bad_primes.sort_unstable();
    Ok(data)
}

/// If `f = x^shift * g` exactly, return the shift.
fn monomial_quotient(f: &LaurentPoly, g: &LaurentPoly) -> Option<Vec<i64>> {
    let (ef, cf) = f.terms.iter().next()?;
    let (eg, cg) = g.terms.iter().next()?;
    if cf != cg {
        return None;
    }
    let shift: Vec<i64> = ef.iter().zip(eg).map(|(a, b)| a - b).collect();
    for (e, c) in &f.terms {
        let back: Vec<i64> = e.iter().zip(&shift).map(|(a, b)| a - b).collect();
        match g.terms.get(&back) {
            Some(cg) if cg == c => {}
            _ => return None,
        }
    }
    Some(shift)
}

/// Ready-made presentations exercised by the test suite and examples.
pub mod presets {
    use super::*;
    use crate::numeric::{rat, ratio};

    fn lie_from_brackets(d: usize, brackets: &[(usize, usize, usize, i64)], name: &str) -> AlgebraPresentation {
        let mut c = vec![vec![vec![Rat::zero(); d]; d]; d];
        for &(i, j, k, v) in brackets {
            c[i][j][k] = rat(v);
            c[j][i][k] = rat(-v);
        }
        AlgebraPresentation::new_algebra(d, AlgebraKind::Lie, AlgebraMode::Subalgebra, c, name)
            .expect("valid Lie constants")
    }

    /// `Z^d` with zero multiplication.
    pub fn zero_algebra(d: usize) -> AlgebraPresentation {
        let c = vec![vec![vec![Rat::zero(); d]; d]; d];
        AlgebraPresentation::new_algebra(
            d,
            AlgebraKind::General,
            AlgebraMode::Subalgebra,
            c,
            &format!("zero-algebra-rank-{}", d),
        )
        .unwrap()
    }

    /// Traceless 2x2 matrices with basis (lower unit, upper unit, diagonal).
    pub fn sl2() -> AlgebraPresentation {
        lie_from_brackets(
            3,
            &[(0, 1, 2, -1), (0, 2, 0, 2), (1, 2, 1, -2)],
            "sl2",
        )
    }

    /// 2x2 matrices: basis (E11, E12, E21, E22).
    pub fn gl2() -> AlgebraPresentation {
        lie_from_brackets(
            4,
            &[
                (0, 1, 1, 1),
                (0, 2, 2, -1),
                (1, 2, 0, 1),
                (1, 2, 3, -1),
                (1, 3, 1, 1),
                (2, 3, 2, -1),
            ],
            "gl2",
        )
    }

    /// Strictly upper triangular 3x3 matrices: [e1, e2] = e3.
    pub fn heisenberg() -> AlgebraPresentation {
        lie_from_brackets(3, &[(0, 1, 2, 1)], "heisenberg")
    }

    /// Central product of two copies of the Heisenberg ring:
    /// [e1, e3] = [e2, e4] = e5.
    pub fn heisenberg_pair() -> AlgebraPresentation {
        lie_from_brackets(5, &[(0, 2, 4, 1), (1, 3, 4, 1)], "hxh")
    }

    /// Filiform nilpotent Lie ring of rank 5:
    /// [e1,e2]=e3, [e1,e3]=e4, [e1,e4]=e5, [e2,e3]=e5.
    pub fn filiform4() -> AlgebraPresentation {
        lie_from_brackets(
            5,
            &[(0, 1, 2, 1), (0, 2, 3, 1), (0, 3, 4, 1), (1, 2, 4, 1)],
            "fil4",
        )
    }

    /// Commutative algebra on a bilinear form: `M + Z v` with
    /// `e_i e_j = gamma[i][j] v`.
    pub fn bilinear_algebra(gamma: &[Vec<Rat>], name: &str) -> AlgebraPresentation {
        let m = gamma.len();
        let d = m + 1;
        let mut c = vec![vec![vec![Rat::zero(); d]; d]; d];
        for (i, row) in gamma.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                c[i][j][m] = v.clone();
            }
        }
        AlgebraPresentation::new_algebra(d, AlgebraKind::General, AlgebraMode::Subalgebra, c, name)
            .unwrap()
    }

    /// Standard inner product form: `e_i^2 = v`.
    pub fn ch(d: usize) -> AlgebraPresentation {
        let gamma: Vec<Vec<Rat>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
            .collect();
        bilinear_algebra(&gamma, &format!("ch{}", d))
    }

    /// The form `x1 x2 - x3^2`, equivalent to the rank-3 inner product away
    /// from the bad primes.
    pub fn b_gamma3() -> AlgebraPresentation {
        let gamma = vec![
            vec![rat(0), ratio(1, 2), rat(0)],
            vec![ratio(1, 2), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(-1)],
        ];
        bilinear_algebra(&gamma, "b-gamma3")
    }

    /// The hyperbolic-plane sum `x1 x2 + x3 x4`, equivalent to the rank-4
    /// inner product away from the bad primes.
    pub fn b_gamma4() -> AlgebraPresentation {
        let h = ratio(1, 2);
        let z = rat(0);
        let gamma = vec![
            vec![z.clone(), h.clone(), z.clone(), z.clone()],
            vec![h.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), h.clone()],
            vec![z.clone(), z.clone(), h.clone(), z.clone()],
        ];
        bilinear_algebra(&gamma, "b-gamma4")
    }

    fn unit_matrix_entry(d: usize, i: usize, j: usize) -> Vec<Vec<Rat>> {
        let mut m = vec![vec![rat(0); d]; d];
        m[i][j] = rat(1);
        m
    }

    /// Submodule problem for the algebra generated by the unipotent upper
    /// triangular group: superdiagonal unit matrices as generators.
    pub fn unipotent_module(d: usize) -> AlgebraPresentation {
        let generators: Vec<Vec<Vec<Rat>>> =
            (0..d - 1).map(|i| unit_matrix_entry(d, i, i + 1)).collect();
        AlgebraPresentation::new_module(d, generators, &format!("u{}", d)).unwrap()
    }

    /// Full matrix algebra acting naturally.
    pub fn full_matrix_module(d: usize) -> AlgebraPresentation {
        let mut generators = Vec::new();
        for i in 0..d {
            for j in 0..d {
                generators.push(unit_matrix_entry(d, i, j));
            }
        }
        AlgebraPresentation::new_module(d, generators, &format!("mat{}", d)).unwrap()
    }
}
