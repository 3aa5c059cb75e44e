#![allow(dead_code)]

use std::sync::Arc;

use modinv::cli::GroupSpec;
use modinv::gf::{FieldCtx, FieldElement};
use modinv::group::{PGroup, SquareMatrix};
use modinv::poly::{Monomial, Poly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const EX21_P2: &str = include_str!("../data/ex21_p2.spec");
pub const EX21_P3: &str = include_str!("../data/ex21_p3.spec");
pub const EX22_P2: &str = include_str!("../data/ex22_p2.spec");
pub const EX22_P3: &str = include_str!("../data/ex22_p3.spec");
pub const TRIVIAL2: &str = include_str!("../data/trivial2.spec");

pub fn spec(text: &str) -> GroupSpec {
    GroupSpec::parse(text).expect("spec parses")
}

/// The three-transvection group on `v, w3, w2, w1` over F_4 or F_9.
pub fn ex21(p: u32) -> GroupSpec {
    spec(if p == 2 { EX21_P2 } else { EX21_P3 })
}

/// Its dual, basis `w1*, w2*, w3*, v*`.
pub fn ex22(p: u32) -> GroupSpec {
    spec(if p == 2 { EX22_P2 } else { EX22_P3 })
}

pub fn prime_ctx(p: u64) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::prime(p).unwrap())
}

pub fn var(s: &GroupSpec, name: &str) -> Poly {
    let i = s
        .names
        .iter()
        .position(|n| n == name)
        .expect("known variable");
    Poly::var(&s.ctx, s.dim, i)
}

pub fn parse(s: &GroupSpec, text: &str) -> Poly {
    Poly::parse(&s.ctx, &s.names, text).expect("polynomial parses")
}

pub fn gen(s: &GroupSpec, name: &str) -> SquareMatrix {
    let i = s
        .gen_names
        .iter()
        .position(|n| n == name)
        .expect("known generator");
    s.gens[i].clone()
}

pub fn matrix(ctx: &FieldCtx, rows: &[&[i64]]) -> SquareMatrix {
    SquareMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| ctx.from_int(x)).collect())
            .collect(),
    )
    .unwrap()
}

/// Identity plus `c` at `(i, j)`.
pub fn elementary(n: usize, i: usize, j: usize, c: FieldElement) -> SquareMatrix {
    let mut m = SquareMatrix::identity(n);
    m.set(i, j, c);
    m
}

/// Upper unitriangular group of `GL_n(F)`.
pub fn unitriangular(ctx: &Arc<FieldCtx>, n: usize) -> PGroup {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut basis = vec![ctx.one()];
            if let Some(t) = ctx.generator() {
                basis = (0..ctx.degree()).map(|e| ctx.pow(t, e as u64)).collect();
            }
            for c in basis {
                gens.push(elementary(n, i, j, c));
            }
        }
    }
    PGroup::new(ctx, n, gens).unwrap()
}

pub fn random_element(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElement {
    let q = ctx.order();
    ctx.elements().nth(rng.gen_range(0..q) as usize).unwrap()
}

/// A random nonidentity transvection of `U_3` fixing the last variable:
/// either `x0 -> x0 + a x1 + b x2`, or `x0, x1` moved along `x2`.
pub fn random_flag_transvection(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> SquareMatrix {
    loop {
        let a = random_element(ctx, rng);
        let b = random_element(ctx, rng);
        let mut m = SquareMatrix::identity(3);
        match rng.gen_range(0..3) {
            0 => {
                m.set(0, 1, a);
                m.set(0, 2, b);
            }
            1 => {
                m.set(0, 2, b);
                m.set(1, 2, a);
            }
            _ => m.set(0, 2, b),
        }
        if !m.is_identity() {
            return m;
        }
    }
}

pub fn random_unitriangular(ctx: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> SquareMatrix {
    let mut m = SquareMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, random_element(ctx, rng));
        }
    }
    m
}

/// Generators of the invariant ring of the dual group as printed in the
/// source: `f1, f2, f3^p - (-f1)^{p-1} f3, a` with `a` the two-step chain on
/// `g`. In the dual spec `g, f3, f2, f1` are `w1_dual, w2_dual, w3_dual,
/// v_dual`.
pub fn ex22_reference_generators(s: &GroupSpec) -> Vec<Poly> {
    let ctx = &s.ctx;
    let p = ctx.characteristic() as u64;
    let g = var(s, "w1_dual");
    let f3 = var(s, "w2_dual");
    let f2 = var(s, "w3_dual");
    let f1 = var(s, "v_dual");
    let xi = ctx.parse("t").unwrap();
    let minus = |f: &Poly| f.neg();
    // a1 = g^p - (-f2 - f1)^{p-1} g
    let d1 = minus(&f2).checked_sub(&f1).unwrap();
    let a1 = g
        .pow(p)
        .unwrap()
        .checked_sub(&d1.pow(p - 1).unwrap().checked_mul(&g).unwrap())
        .unwrap();
    // a = a1^p - [(-xi f2)^p - (-f2 - f1)^{p-1}(-xi f2)]^{p-1} a1
    let xf2 = f2.scale(ctx.neg(xi));
    let inner = xf2
        .pow(p)
        .unwrap()
        .checked_sub(&d1.pow(p - 1).unwrap().checked_mul(&xf2).unwrap())
        .unwrap();
    let a = a1
        .pow(p)
        .unwrap()
        .checked_sub(&inner.pow(p - 1).unwrap().checked_mul(&a1).unwrap())
        .unwrap();
    let y = f3
        .pow(p)
        .unwrap()
        .checked_sub(&minus(&f1).pow(p - 1).unwrap().checked_mul(&f3).unwrap())
        .unwrap();
    vec![f1, f2, y, a]
}

/// Every exponent of variable `i` in `f` is a power of `p`, and the top one
/// appears only in the monomial `x_i^top` with coefficient 1.
pub fn is_monic_p_polynomial(f: &Poly, i: usize, top: u32) -> bool {
    let p = f.ctx().characteristic();
    let n = f.nvars();
    let mut seen_top = false;
    for (m, c) in f.terms() {
        let e = m.exps()[i];
        if e == 0 {
            return false;
        }
        let mut q = 1;
        while q < e {
            q *= p;
        }
        if q != e {
            return false;
        }
        if e == top {
            if *m != Monomial::var(n, i).scale_exps(top) || !c.is_one() {
                return false;
            }
            seen_top = true;
        } else if e > top {
            return false;
        }
    }
    seen_top
}
