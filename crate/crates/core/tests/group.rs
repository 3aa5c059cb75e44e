mod common;

use std::sync::Arc;

use common::*;
use modinv::gf::{FieldCtx, FieldElement};
use modinv::group::{
    dual_matrix, is_pseudo_reflection, is_transvection, span_dim, GroupError, PGroup, SquareMatrix,
};
use modinv::linalg::{rank, Row};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit(ctx: &FieldCtx, n: usize, i: usize) -> Row {
    let mut r = vec![ctx.zero(); n];
    r[i] = ctx.one();
    r
}

fn in_span(ctx: &FieldCtx, span: &[Row], v: &Row) -> bool {
    let mut all = span.to_vec();
    all.push(v.clone());
    rank(ctx, &all, v.len()) == rank(ctx, span, v.len())
}

// basis v, w3, w2, w1
const V: usize = 0;
const W3: usize = 1;
const W2: usize = 2;
const W1: usize = 3;

#[test]
fn enumerate_examples() {
    let s = ex21(2);
    let g = s.group().unwrap();
    assert_eq!(g.order(), 8);
    let id = PGroup::new(&s.ctx, 4, vec![SquareMatrix::identity(4)]).unwrap();
    assert_eq!(id.order(), 1);
    let sub = PGroup::new(&s.ctx, 4, vec![gen(&s, "sigma"), gen(&s, "tau2")]).unwrap();
    assert_eq!(sub.order(), 4);
    let s3 = ex21(3);
    assert_eq!(s3.group().unwrap().order(), 27);
}

#[test]
fn enumerate_errors() {
    let s = ex21(2);
    assert!(matches!(
        PGroup::enumerate(&s.ctx, 4, s.gens.clone(), 5),
        Err(GroupError::CapExceeded(5))
    ));
    let f3 = prime_ctx(3);
    let swap = matrix(&f3, &[&[2, 0], &[0, 1]]);
    assert!(matches!(
        PGroup::new(&f3, 2, vec![swap]),
        Err(GroupError::NotPGroup(2))
    ));
    let singular = matrix(&f3, &[&[1, 1], &[1, 1]]);
    assert!(matches!(
        PGroup::new(&f3, 2, vec![singular]),
        Err(GroupError::SingularGenerator(0))
    ));
}

#[test]
fn reflection_predicates() {
    let s = ex21(2);
    let sigma = gen(&s, "sigma");
    assert!(is_transvection(&s.ctx, &sigma));
    assert!(is_pseudo_reflection(&s.ctx, &sigma));
    let id = SquareMatrix::identity(4);
    assert!(!is_transvection(&s.ctx, &id));
    assert!(!is_pseudo_reflection(&s.ctx, &id));
    let f3 = prime_ctx(3);
    let diag = matrix(
        &f3,
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 2]],
    );
    assert!(is_pseudo_reflection(&f3, &diag));
    assert!(!is_transvection(&f3, &diag));
}

#[test]
fn transvection_generation_examples() {
    assert!(ex21(2).group().unwrap().generated_by_transvections());
    assert!(PGroup::trivial(&prime_ctx(2), 3).generated_by_transvections());
    let f3 = prime_ctx(3);
    let jordan = matrix(&f3, &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
    let g = PGroup::new(&f3, 3, vec![jordan]).unwrap();
    assert_eq!(g.order(), 3);
    assert!(g.transvections().is_empty());
    assert!(!g.generated_by_transvections());
}

#[test]
fn fixed_space_examples() {
    let s = ex21(2);
    let ctx = &s.ctx;
    let fixed = s.group().unwrap().fixed_space();
    assert_eq!(span_dim(ctx, &fixed, 4), 2);
    assert!(fixed
        .iter()
        .all(|r| in_span(ctx, &[unit(ctx, 4, W2), unit(ctx, 4, W1)], r)));

    assert_eq!(PGroup::trivial(ctx, 4).fixed_space().len(), 4);

    let sigma = PGroup::new(ctx, 4, vec![gen(&s, "sigma")]).unwrap();
    let fs = sigma.fixed_space();
    assert_eq!(fs.len(), 3);
    let expected = [unit(ctx, 4, W3), unit(ctx, 4, W2), unit(ctx, 4, W1)];
    assert!(fs.iter().all(|r| in_span(ctx, &expected, r)));
}

#[test]
fn triangulating_basis_examples() {
    let s = ex21(2);
    let ctx = &s.ctx;
    let g = s.group().unwrap();
    let flag = g.triangulating_basis();
    assert!(in_span(
        ctx,
        &[unit(ctx, 4, W2), unit(ctx, 4, W1)],
        &flag.vectors()[0]
    ));
    assert!(g.elements().iter().all(|e| flag.triangulates(ctx, e)));

    let trivial = PGroup::trivial(ctx, 3);
    let std: Vec<Row> = (0..3).map(|i| unit(ctx, 3, i)).collect();
    assert_eq!(trivial.triangulating_basis().vectors(), &std[..]);

    let tau1 = PGroup::new(ctx, 4, vec![gen(&s, "tau1")]).unwrap();
    let first = tau1.triangulating_basis().vectors()[0].clone();
    let mut v_minus_w3 = unit(ctx, 4, V);
    v_minus_w3[W3] = ctx.neg(ctx.one());
    assert!(in_span(
        ctx,
        &[v_minus_w3, unit(ctx, 4, W2), unit(ctx, 4, W1)],
        &first
    ));
}

#[test]
fn triangulating_basis_holds_for_every_element() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [2u64, 3] {
        let ctx = prime_ctx(p);
        for _ in 0..20 {
            let gens: Vec<SquareMatrix> = (0..2)
                .map(|_| random_unitriangular(&ctx, 4, &mut rng))
                .collect();
            // conjugate away from the standard flag
            let j = matrix(
                &ctx,
                &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]],
            );
            let l = matrix(
                &ctx,
                &[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 1, 1, 0], &[1, 0, 1, 1]],
            );
            let b = j.mul(&ctx, &l);
            let bi = b.inverse(&ctx).unwrap();
            let gens = gens.iter().map(|g| bi.mul(&ctx, g).mul(&ctx, &b)).collect();
            let g = PGroup::new(&ctx, 4, gens).unwrap();
            let flag = g.triangulating_basis();
            assert!(g.elements().iter().all(|e| flag.triangulates(&ctx, e)));
            let fixed = g.fixed_space();
            assert!(in_span(&ctx, &fixed, &flag.vectors()[0]));
        }
    }
}

#[test]
fn pointwise_stabilizer_examples() {
    let s = ex21(2);
    let ctx = &s.ctx;
    let g = s.group().unwrap();
    let w = [unit(ctx, 4, W2), unit(ctx, 4, W1)];
    assert_eq!(g.pointwise_stabilizer(&w).order(), g.order());
    let all: Vec<Row> = (0..4).map(|i| unit(ctx, 4, i)).collect();
    assert_eq!(g.pointwise_stabilizer(&all).order(), g.order());
    assert_eq!(g.pointwise_stabilizer(&[]).order(), 1);
}

#[test]
fn stabilizer_orders_divide_the_group_order() {
    let ctx = prime_ctx(2);
    let u4 = unitriangular(&ctx, 4);
    for i in 0..4 {
        for j in i..4 {
            let w = [unit(&ctx, 4, i), unit(&ctx, 4, j)];
            let st = u4.pointwise_stabilizer(&w);
            assert_eq!(u4.order() % st.order(), 0);
        }
    }
}

/// The dual matrices as displayed for the dual basis `g, f3, f2, f1`.
fn displayed_dual(s: &modinv::cli::GroupSpec) -> Vec<SquareMatrix> {
    let ctx = &s.ctx;
    let m1 = ctx.neg(ctx.one());
    let mxi = ctx.neg(ctx.parse("t").unwrap());
    let (o, z) = (ctx.one(), ctx.zero());
    let rows = |r: [[FieldElement; 4]; 4]| {
        SquareMatrix::from_rows(r.iter().map(|x| x.to_vec()).collect()).unwrap()
    };
    vec![
        rows([[o, z, z, z], [z, o, z, m1], [z, z, o, z], [z, z, z, o]]),
        rows([[o, z, m1, m1], [z, o, z, z], [z, z, o, z], [z, z, z, o]]),
        rows([[o, z, mxi, z], [z, o, z, z], [z, z, o, z], [z, z, z, o]]),
    ]
}

#[test]
fn dual_group_examples() {
    for p in [2, 3] {
        let s = ex21(p);
        let ctx = &s.ctx;
        let duals: Vec<SquareMatrix> = s.gens.iter().map(|g| dual_matrix(ctx, g)).collect();
        assert_eq!(duals, displayed_dual(&s));
        let g = s.group().unwrap();
        let d = g.dual_group();
        assert_eq!(d.order(), g.order());
        assert_eq!(d.transvections().len(), g.transvections().len());
        let dd = d.dual_group();
        let mut a: Vec<_> = g.elements().to_vec();
        let mut b: Vec<_> = dd.elements().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
    let ctx = prime_ctx(3);
    assert_eq!(PGroup::trivial(&ctx, 3).dual_group().order(), 1);
}

#[test]
fn quotient_action_examples() {
    let s = ex21(2);
    let ctx = &s.ctx;
    let g = s.group().unwrap();
    let qa = g.quotient_action_kernel(&unit(ctx, 4, W1)).unwrap();
    assert_eq!(qa.kernel.order() * qa.quotient.order(), 8);
    let filtered = g
        .elements()
        .iter()
        .filter(|e| {
            let d = e.minus_identity(ctx);
            (0..4).all(|i| (0..3).all(|j| d.get(i, j).is_zero()))
        })
        .count();
    assert_eq!(qa.kernel.order(), filtered);

    let trivial = PGroup::trivial(ctx, 3);
    let qt = trivial.quotient_action_kernel(&unit(ctx, 3, 2)).unwrap();
    assert_eq!((qt.kernel.order(), qt.quotient.order()), (1, 1));

    let f3 = prime_ctx(3);
    let eps = elementary(3, 0, 2, f3.one());
    let ge = PGroup::new(&f3, 3, vec![eps]).unwrap();
    let qe = ge.quotient_action_kernel(&unit(&f3, 3, 2)).unwrap();
    assert_eq!((qe.kernel.order(), qe.quotient.order()), (3, 1));

    assert!(matches!(
        g.quotient_action_kernel(&unit(ctx, 4, V)),
        Err(GroupError::NotFixedVector)
    ));
    assert!(matches!(
        g.quotient_action_kernel(&[ctx.zero(); 4]),
        Err(GroupError::NotFixedVector)
    ));
}

#[test]
fn quotient_map_is_a_homomorphism_with_the_right_kernel() {
    let ctx = prime_ctx(2);
    let u4 = unitriangular(&ctx, 4);
    let v = unit(&ctx, 4, 3);
    let qa = u4.quotient_action_kernel(&v).unwrap();
    let els = u4.elements();
    let q = qa.quotient.elements();
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate() {
            let k = u4.index_of(&a.mul(&ctx, b)).unwrap();
            assert_eq!(
                q[qa.image_of[k]],
                q[qa.image_of[i]].mul(&ctx, &q[qa.image_of[j]])
            );
        }
        let in_kernel = q[qa.image_of[i]].is_identity();
        assert_eq!(in_kernel, qa.kernel.contains(a));
    }
    assert_eq!(qa.kernel.order() * qa.quotient.order(), 64);
}

#[test]
fn commutator_examples() {
    let ctx: Arc<FieldCtx> = Arc::new(FieldCtx::new(3, Some(&[1, 0, 1])).unwrap());
    let s = ctx.parse("t").unwrap();
    let c = ctx.parse("2*t+1").unwrap();
    // in coordinates (w1, w2, v): sigma moves v by s w2, tau moves w2 by c w1
    let sigma = elementary(3, 2, 1, s);
    let tau = elementary(3, 1, 0, c);
    let g = PGroup::new(&ctx, 3, vec![sigma, tau]).unwrap();
    let comms = g.commutator_generators();
    assert!(comms.contains(&elementary(3, 2, 0, ctx.mul(s, c))));
    assert!(comms.iter().all(
        |m| (0..3).all(|i| (0..3).all(|j| i == j || (i, j) == (2, 0) || m.get(i, j).is_zero()))
    ));

    let ab = PGroup::new(&ctx, 3, vec![elementary(3, 0, 2, s)]).unwrap();
    assert_eq!(ab.commutator_generators(), vec![SquareMatrix::identity(3)]);
    assert_eq!(
        ex21(2).group().unwrap().commutator_generators(),
        vec![SquareMatrix::identity(4)]
    );
    assert!(ex21(2).group().unwrap().is_elementary_abelian());
}
