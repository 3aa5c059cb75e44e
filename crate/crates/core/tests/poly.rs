mod common;

use std::sync::Arc;

use common::*;
use modinv::gf::FieldCtx;
use modinv::group::SquareMatrix;
use modinv::poly::{graded_piece, jacobian_det, piece_dim, Monomial, Poly, PolyError};
use proptest::prelude::*;

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[test]
fn arithmetic_examples() {
    let f2 = prime_ctx(2);
    let xy = names(&["x", "y"]);
    let s = Poly::parse(&f2, &xy, "x + y").unwrap();
    assert_eq!(s.pow(2).unwrap().format(&xy), "x^2 + y^2");
    let zero = Poly::zero(&f2, 2);
    assert!(Poly::var(&f2, 2, 0).checked_mul(&zero).unwrap().is_zero());

    let f3 = prime_ctx(3);
    let vw = names(&["v", "w"]);
    let a = Poly::parse(&f3, &vw, "v + w").unwrap();
    let b = Poly::parse(&f3, &vw, "v - w").unwrap();
    assert_eq!(
        a.checked_mul(&b).unwrap(),
        Poly::parse(&f3, &vw, "v^2 + 2*w^2").unwrap()
    );

    let other = Poly::var(&f3, 3, 0);
    assert!(matches!(
        a.checked_add(&other),
        Err(PolyError::RingMismatch)
    ));
}

#[test]
fn apply_matrix_examples() {
    let s = ex21(2);
    let v = var(&s, "v");
    let sigma = gen(&s, "sigma");
    let tau1 = gen(&s, "tau1");
    assert_eq!(v.apply_matrix(&sigma).unwrap(), parse(&s, "v + w2"));
    let f = parse(&s, "v*w3 + w1^3 + t*w2*w3");
    assert_eq!(f.apply_matrix(&SquareMatrix::identity(4)).unwrap(), f);
    let vw3 = parse(&s, "v*w3");
    let expected = parse(&s, "v + w1")
        .checked_mul(&parse(&s, "w3 + w1"))
        .unwrap();
    assert_eq!(vw3.apply_matrix(&tau1).unwrap(), expected);
    let wrong = SquareMatrix::identity(3);
    assert!(matches!(
        v.apply_matrix(&wrong),
        Err(PolyError::RingMismatch)
    ));
}

#[test]
fn delta_examples() {
    let s = ex21(2);
    let v = var(&s, "v");
    let f = parse(&s, "v^2*w3 + t*w1");
    assert!(f.delta(&SquareMatrix::identity(4)).unwrap().is_zero());
    assert_eq!(v.delta(&gen(&s, "tau1")).unwrap(), var(&s, "w1"));
    assert_eq!(
        v.pow(2).unwrap().delta(&gen(&s, "sigma")).unwrap(),
        parse(&s, "w2^2")
    );
}

#[test]
fn jacobian_examples() {
    let f3 = prime_ctx(3);
    let vars: Vec<Poly> = (0..3).map(|i| Poly::var(&f3, 3, i)).collect();
    assert_eq!(jacobian_det(&vars).unwrap(), Poly::one(&f3, 3));
    let xy = vec![Poly::var(&f3, 2, 0).pow(3).unwrap(), Poly::var(&f3, 2, 1)];
    assert!(jacobian_det(&xy).unwrap().is_zero());
    let s = ex22(2);
    let gens = ex22_reference_generators(&s);
    assert!(!jacobian_det(&gens).unwrap().is_zero());
}

#[test]
fn graded_piece_examples() {
    let xy = names(&["x", "y"]);
    let f2 = prime_ctx(2);
    let piece: Vec<String> = graded_piece(2, 2)
        .into_iter()
        .map(|m| Poly::term(&f2, m, f2.one()).format(&xy))
        .collect();
    assert_eq!(piece, vec!["x^2", "x*y", "y^2"]);
    assert_eq!(graded_piece(4, 0), vec![Monomial::one(4)]);
    assert_eq!(graded_piece(3, 3).len(), 10);
    assert_eq!(piece_dim(3, 3), 10);
    assert_eq!(piece_dim(4, 9), 220);
}

#[test]
fn quotient_mod_variable_examples() {
    let f3 = prime_ctx(3);
    let n = names(&["v1", "w"]);
    let f = Poly::parse(&f3, &n, "v1*w + w^2").unwrap();
    assert_eq!(
        f.quotient_mod_variable(0),
        Poly::parse(&f3, &names(&["w"]), "w^2").unwrap()
    );
    assert!(Poly::var(&f3, 2, 0).quotient_mod_variable(0).is_zero());
    let n3 = names(&["v", "w2"]);
    let g = Poly::parse(&f3, &n3, "v^2 + w2*v").unwrap();
    assert_eq!(
        g.quotient_mod_variable(1),
        Poly::parse(&f3, &names(&["v"]), "v^2").unwrap()
    );
}

/// Right action pinned: applying `h` then `g` is applying `h g`.
#[test]
fn composition_convention() {
    let s = ex21(3);
    let ctx = &s.ctx;
    let f = parse(&s, "v^2*w3 + t*w2*w1 + 2*v*w1^2");
    let sigma = gen(&s, "sigma");
    let tau1 = gen(&s, "tau1");
    let tau2 = gen(&s, "tau2");
    for (g, h) in [(&sigma, &tau1), (&tau1, &tau2), (&tau2, &sigma)] {
        let twice = f.apply_matrix(h).unwrap().apply_matrix(g).unwrap();
        assert_eq!(twice, f.apply_matrix(&h.mul(ctx, g)).unwrap());
    }
    // the other order differs on a non-commuting pair
    let a = matrix(ctx, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    let b = matrix(ctx, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
    let x = Poly::var(ctx, 3, 0);
    let twice = x.apply_matrix(&a).unwrap().apply_matrix(&b).unwrap();
    assert_eq!(twice, x.apply_matrix(&a.mul(ctx, &b)).unwrap());
    assert_ne!(twice, x.apply_matrix(&b.mul(ctx, &a)).unwrap());
}

#[test]
fn text_round_trip_examples() {
    let s = ex21(3);
    for text in [
        "v^2 + w2*v",
        "2*t*v*w3^4 + (t+1)*w1",
        "0",
        "w1^9 + 2*w2^3*w1^6",
    ] {
        let f = parse(&s, text);
        assert_eq!(parse(&s, &f.format(&s.names)), f);
    }
    assert!(Poly::parse(&s.ctx, &s.names, "v + u").is_err());
}

#[test]
fn degree_cap_is_guarded() {
    let f2 = prime_ctx(2);
    let x = Poly::var(&f2, 1, 0);
    assert!(matches!(x.pow(1 << 21), Err(PolyError::DegreeOverflow)));
}

fn field(which: u8) -> Arc<FieldCtx> {
    match which {
        0 => prime_ctx(2),
        1 => prime_ctx(3),
        _ => Arc::new(FieldCtx::new(2, Some(&[1, 1, 1])).unwrap()),
    }
}

prop_compose! {
    fn arb_poly(ctx: Arc<FieldCtx>, n: usize)(terms in prop::collection::vec((prop::collection::vec(0u32..3, n), 1u64..9), 0..6)) -> Poly {
        let mut f = Poly::zero(&ctx, n);
        for (e, c) in terms {
            let c = ctx.elements().nth((c % ctx.order()) as usize).unwrap();
            f.add_term(Monomial::new(&e), c);
        }
        f
    }
}

prop_compose! {
    fn arb_unipotent(ctx: Arc<FieldCtx>, n: usize)(entries in prop::collection::vec(0u64..9, n * n)) -> SquareMatrix {
        let mut m = SquareMatrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, ctx.elements().nth((entries[i * n + j] % ctx.order()) as usize).unwrap());
            }
        }
        m
    }
}

fn setup() -> impl Strategy<Value = (Arc<FieldCtx>, Poly, Poly, SquareMatrix, SquareMatrix)> {
    (0u8..3, 2usize..5).prop_flat_map(|(w, n)| {
        let ctx = field(w);
        (
            Just(ctx.clone()),
            arb_poly(ctx.clone(), n),
            arb_poly(ctx.clone(), n),
            arb_unipotent(ctx.clone(), n),
            arb_unipotent(ctx, n),
        )
    })
}

proptest! {
    #[test]
    fn action_composes_on_the_right((ctx, f, _g, a, b) in setup()) {
        let twice = f.apply_matrix(&a).unwrap().apply_matrix(&b).unwrap();
        prop_assert_eq!(twice, f.apply_matrix(&a.mul(&ctx, &b)).unwrap());
    }

    #[test]
    fn action_is_a_ring_homomorphism((_ctx, f, g, a, _b) in setup()) {
        let sum = f.checked_add(&g).unwrap().apply_matrix(&a).unwrap();
        prop_assert_eq!(sum, f.apply_matrix(&a).unwrap().checked_add(&g.apply_matrix(&a).unwrap()).unwrap());
        let prod = f.checked_mul(&g).unwrap().apply_matrix(&a).unwrap();
        prop_assert_eq!(prod, f.apply_matrix(&a).unwrap().checked_mul(&g.apply_matrix(&a).unwrap()).unwrap());
    }

    #[test]
    fn action_preserves_homogeneous_degree((ctx, _f, _g, a, _b) in setup(), d in 0u32..5, picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5)) {
        let n = a.dim();
        let piece = graded_piece(n, d);
        let mut f = Poly::zero(&ctx, n);
        for ix in picks {
            f.add_term(piece[ix.index(piece.len())].clone(), ctx.one());
        }
        let image = f.apply_matrix(&a).unwrap();
        prop_assert_eq!(image.homogeneous_degree(), f.homogeneous_degree());
    }

    #[test]
    fn unipotent_change_of_variables_has_jacobian_one((ctx, _f, _g, a, _b) in setup()) {
        let n = a.dim();
        let images: Vec<Poly> = (0..n).map(|i| Poly::var(&ctx, n, i).apply_matrix(&a).unwrap()).collect();
        prop_assert_eq!(jacobian_det(&images).unwrap(), Poly::one(&ctx, n));
    }

    #[test]
    fn format_then_parse_is_identity((ctx, f, _g, _a, _b) in setup()) {
        let names = modinv::poly::default_names(f.nvars());
        prop_assert_eq!(Poly::parse(&ctx, &names, &f.format(&names)).unwrap(), f);
    }

    #[test]
    fn pow_matches_repeated_multiplication((ctx, f, _g, _a, _b) in setup(), e in 0u64..6) {
        let mut acc = Poly::one(&ctx, f.nvars());
        for _ in 0..e {
            acc = acc.checked_mul(&f).unwrap();
        }
        prop_assert_eq!(f.pow(e).unwrap(), acc);
    }
}
