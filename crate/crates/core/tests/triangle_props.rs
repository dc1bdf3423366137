use cxta::cyclotomic::{apply_galois, subfield_degree, GaloisAut, Stabilizer};
use cxta::hermitian::{Angle, Mat3, TriangleShape};
use cxta::triangle::{
    e_triangle_generators_at, field_e_bounds, preserves_form, reflection_matrix, trace_field_generators,
    CandidateGroup,
};
use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

mod common;
use common::*;

fn generators(c: &CandidateGroup) -> Vec<Mat3> {
    (0..3).map(|j| reflection_matrix(c, j).unwrap().matrix().clone()).collect()
}

#[test]
fn short_words_preserve_the_form() {
    let mut rng = StdRng::seed_from_u64(0x3c0);
    for _ in 0..12 {
        let c = small_hyperbolic_candidate(&mut rng, 240);
        let h = c.gram_form();
        let gens = generators(&c);
        let mut words = vec![Mat3::identity(c.level()).unwrap()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &words {
                for g in &gens {
                    next.push(w.mul(g).unwrap());
                }
            }
            for w in &next {
                assert!(preserves_form(w, &h), "{}", c.shape());
            }
            words = next;
        }
        assert_eq!(words.len(), 81);
    }
}

#[test]
fn product_trace_lies_in_trace_field() {
    let mut rng = StdRng::seed_from_u64(0x7ace);
    for _ in 0..60 {
        let c = small_hyperbolic_candidate(&mut rng, 240);
        let g = generators(&c);
        let trace = g[0].mul(&g[1]).unwrap().mul(&g[2]).unwrap().trace();
        let stab = Stabilizer::of(c.level(), &trace_field_generators(&c).unwrap()).unwrap();
        for m in stab.elements() {
            let sigma = GaloisAut::new(c.level(), m as i64).unwrap();
            assert_eq!(apply_galois(&sigma, &trace).unwrap(), trace, "{} moved by σ_{m}", c.shape());
        }
    }
}

#[test]
fn lower_bound_divides_triangle_field_with_factors() {
    let mut rng = StdRng::seed_from_u64(0xd1f);
    for _ in 0..60 {
        let c = small_hyperbolic_candidate(&mut rng, 240);
        let level = c.level();
        let (lower, _) = field_e_bounds(&c).unwrap();
        let mut tri = e_triangle_generators_at(c.shape(), level).unwrap();
        let lower_deg = subfield_degree(&lower).unwrap();
        tri.extend(c.etas(level).unwrap());
        assert_eq!(subfield_degree(&tri).unwrap() % lower_deg, 0, "{}", c.shape());
    }
}

/// With involutions the factors are rational and E_△ itself contains the lower bound.
#[test]
fn lower_bound_divides_triangle_field_for_involutions() {
    let mut rng = StdRng::seed_from_u64(0x1a5);
    let mut seen = 0;
    while seen < 80 {
        let b = [rng.gen_range(2..=12i64), rng.gen_range(2..=12i64), rng.gen_range(2..=12i64)];
        let t = rng.gen_range(1..=12i64);
        let shape = TriangleShape::new(b.map(|x| Angle::pi_over(x).unwrap()), Ratio::new(rng.gen_range(0..2 * t), t));
        if shape.level() > 240 || !cxta::hermitian::triangle_exists(&shape) {
            continue;
        }
        let c = CandidateGroup::new(shape, [2, 2, 2]).unwrap();
        let (lower, _) = field_e_bounds(&c).unwrap();
        let tri = e_triangle_generators_at(c.shape(), c.level()).unwrap();
        assert_eq!(subfield_degree(&tri).unwrap() % subfield_degree(&lower).unwrap(), 0, "{}", c.shape());
        seen += 1;
    }
}
