use polyzeta::algebra::{cone_integral_data, presets};
use polyzeta::newton::{newton_polytope, nondegeneracy_check, NondegPolicy};
use polyzeta::polyhedra::*;
use std::time::Instant;

fn main() {
    let pres = presets::b_gamma4();
    let t0 = Instant::now();
    let data = cone_integral_data(&pres).unwrap();
    println!(
        "construction: {:?}; |f0| = {}, extra ineqs = {}",
        t0.elapsed(),
        data.family.constraint_group.len(),
        data.c0.closed_ineqs.len() - data.n
    );
    for f in &data.family.constraint_group {
        println!("  member with {} terms: {:?}", f.num_terms(), f);
    }
    let (members, _groups) = data.family.members();
    let t0 = Instant::now();
    let v = nondegeneracy_check(
        &members,
        data.n,
        &HalfOpenCone::full_space(data.n),
        &NondegPolicy::default(),
    )
    .unwrap();
    println!(
        "nondeg gate: {:?} witness_no={}",
        t0.elapsed(),
        v.is_witness_no()
    );
    let t0 = Instant::now();
    let newtons: Vec<LatticePolytope> = members
        .iter()
        .map(|f| newton_polytope(f).unwrap())
        .collect();
    let joint = minkowski_sum(&newtons).unwrap();
    println!(
        "joint newton: {:?}; dim {} verts {} faces {}",
        t0.elapsed(),
        joint.sum.dim,
        joint.sum.num_vertices(),
        face_lattice(&joint.sum).len()
    );
    let t0 = Instant::now();
    let vis = visible_faces(&data.c0, &joint.sum);
    println!("visible: {:?} -> {} faces", t0.elapsed(), vis.len());
    for vf in vis.iter() {
        let t1 = Instant::now();
        let d = cone_dim(&vf.cell);
        let (rays, span) = closure_rays(&vf.cell).unwrap();
        println!(
            "  face dim {}: cell dim {} rays {} span {} [{:?}]",
            vf.face.dim,
            d,
            rays.len(),
            span.len(),
            t1.elapsed()
        );
    }
}
