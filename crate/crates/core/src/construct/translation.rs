//! Generators for groups acting on a polynomial subring by adding multiples
//! of a power of one fixed linear form, their Frobenius twists, and the
//! re-triangulation of generators of a stable subring.

use std::sync::Arc;

use crate::gf::{FieldCtx, FieldElement};
use crate::group::{PGroup, SquareMatrix};
use crate::linalg::Row;
use crate::oracle::{express_in_subalgebra, sop_check};
use crate::poly::{default_names, Monomial, Poly};

use super::{p_log, scalar_multiple, var_pow, ConstructError};

fn fixes_var(g: &SquareMatrix, i: usize) -> bool {
    (0..g.dim()).all(|j| {
        if j == i {
            g.get(i, j).is_one()
        } else {
            g.get(i, j).is_zero()
        }
    })
}

/// Given `v` fixed by every generator and homogeneous `m_i` of degree
/// `p^{e_i}` with `δ(g, m_i) = a · v^{p^{e_i}}`, returns `[v, y_2, .., y_n]`
/// generating `F[v, m_2, .., m_n]^G`, the `y`'s sorted by degree.
pub fn translation_generators(
    v: usize,
    ms: &[Poly],
    gens: &[SquareMatrix],
) -> Result<Vec<Poly>, ConstructError> {
    let Some(first) = ms.first() else {
        return Err(ConstructError::hypothesis(0, "no polynomials given"));
    };
    let ctx = first.ctx().clone();
    let n = first.nvars();
    let p = ctx.characteristic();
    let names = default_names(n);
    let vpoly = Poly::var(&ctx, n, v);
    for (k, g) in gens.iter().enumerate() {
        if !fixes_var(g, v) {
            return Err(ConstructError::hypothesis(
                k,
                format!("does not fix {}", names[v]),
            ));
        }
    }
    let mut cur: Vec<(Poly, u32)> = Vec::with_capacity(ms.len());
    for (i, m) in ms.iter().enumerate() {
        let e = m
            .homogeneous_degree()
            .and_then(|d| p_log(d, p))
            .ok_or_else(|| {
                ConstructError::hypothesis(
                    0,
                    format!("polynomial {} is not homogeneous of p-power degree", i + 1),
                )
            })?;
        cur.push((m.clone(), e));
    }
    if ms.len() + 1 == n {
        let mut all = vec![vpoly.clone()];
        all.extend(ms.iter().cloned());
        if !sop_check(&all)?.is_sop {
            return Err(ConstructError::hypothesis(
                0,
                "polynomials are not algebraically independent",
            ));
        }
    }
    cur.sort_by_key(|(_, e)| *e);

    for (k, g) in gens.iter().enumerate() {
        let mut coeffs = Vec::with_capacity(cur.len());
        for (m, e) in &cur {
            let d = m.delta(g)?;
            let target = Monomial::var(n, v).scale_exps(p.pow(*e));
            let a = scalar_multiple(&d, &target).ok_or_else(|| {
                ConstructError::hypothesis(
                    k,
                    format!(
                        "delta = {} is not a multiple of {}^{}",
                        d.format(&names),
                        names[v],
                        p.pow(*e)
                    ),
                )
            })?;
            coeffs.push(a);
        }
        let Some(r) = coeffs.iter().position(|a| !a.is_zero()) else {
            continue;
        };
        let (mr, er) = cur[r].clone();
        let ar = coeffs[r];
        let mut next = Vec::with_capacity(cur.len());
        for (j, (m, e)) in cur.iter().enumerate() {
            if j == r {
                // y = m_r^p - (a v^{p^e})^{p-1} m_r
                let lead = Poly::term(&ctx, Monomial::var(n, v).scale_exps(p.pow(er)), ar);
                let y = mr
                    .frobenius_power(1)?
                    .checked_sub(&lead.pow(p as u64 - 1)?.checked_mul(&mr)?)?;
                next.push((y, er + 1));
            } else if coeffs[j].is_zero() {
                next.push((m.clone(), *e));
            } else {
                // e_j >= e_r since r is the first moved index in degree order.
                let c = ctx.div(coeffs[j], ar).expect("nonzero pivot");
                let shift = p.pow(*e) - p.pow(er);
                let corr = var_pow(&ctx, n, v, shift).scale(c).checked_mul(&mr)?;
                next.push((m.checked_sub(&corr)?, *e));
            }
        }
        next.sort_by_key(|(_, e)| *e);
        cur = next;
    }
    let mut out = vec![vpoly];
    out.extend(cur.into_iter().map(|(m, _)| m));
    Ok(out)
}

/// Generators of `F[v^{p^{e_1}}, v_2^{p^{e_2}}, ..]^G` for a group with
/// `g(v) = v` and `δ(g, v_i) ∈ F v`: the untwisted ring
/// `F[v, v_i^{p^{e_i - e_1}}]` is handled by [`translation_generators`] and every
/// output is raised to the `p^{e_1}`.
pub fn twisted_translation_generators(
    ctx: &Arc<FieldCtx>,
    v: usize,
    vs: &[usize],
    exps: &[u32],
    gens: &[SquareMatrix],
) -> Result<Vec<Poly>, ConstructError> {
    if exps.len() != vs.len() + 1 || exps.windows(2).any(|w| w[0] > w[1]) {
        return Err(ConstructError::hypothesis(
            0,
            "exponents must be non-decreasing, one per variable",
        ));
    }
    let n = vs.len() + 1;
    let names = default_names(n);
    for (k, g) in gens.iter().enumerate() {
        if g.dim() != n {
            return Err(ConstructError::hypothesis(k, "wrong dimension"));
        }
        for &i in vs {
            let moved =
                (0..n).any(|j| j != i && j != v && !g.get(i, j).is_zero()) || !g.get(i, i).is_one();
            if moved {
                return Err(ConstructError::hypothesis(
                    k,
                    format!(
                        "image of {} is not in {} + F{}",
                        names[i], names[i], names[v]
                    ),
                ));
            }
        }
    }
    let p = ctx.characteristic();
    let e1 = exps[0];
    let ms: Vec<Poly> = vs
        .iter()
        .zip(&exps[1..])
        .map(|(&i, &e)| var_pow(ctx, n, i, p.pow(e - e1)))
        .collect();
    let ys = translation_generators(v, &ms, gens)?;
    Ok(ys
        .iter()
        .map(|y| y.frobenius_power(e1))
        .collect::<Result<_, _>>()?)
}

/// Re-triangulates generators of a `G`-stable subring
/// `A = F[v^{p^{e_1}}, x_2, .., x_n]` (with `x_i ≡ v_i^{p^{e_i}}` modulo
/// `v^{p^{e_1}}`) so that `(g-1) y_i` lies in the subring generated by
/// `v^{p^{e_1}}` and the earlier `y`'s. Returns the new generators and
/// linear forms `u_i` with `y_i ≡ u_i^{p^{e_i}}` modulo `v` (with
/// `v`-coordinate zero).
pub fn retriangulate(
    v: usize,
    e1: u32,
    xs: &[Poly],
    group: &PGroup,
) -> Result<(Vec<Poly>, Vec<Row>), ConstructError> {
    let ctx = group.ctx();
    let n = group.dim();
    let p = ctx.characteristic();
    let names = default_names(n);
    for (k, g) in group.gens().iter().enumerate() {
        if !fixes_var(g, v) {
            return Err(ConstructError::hypothesis(
                k,
                format!("does not fix {}", names[v]),
            ));
        }
    }
    let mut exps = Vec::with_capacity(xs.len());
    let mut linear = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let e = x
            .homogeneous_degree()
            .and_then(|d| p_log(d, p))
            .ok_or_else(|| {
                ConstructError::hypothesis(
                    0,
                    format!("x{} is not homogeneous of p-power degree", i + 2),
                )
            })?;
        if e < e1 || exps.last().is_some_and(|&last| last > e) {
            return Err(ConstructError::hypothesis(
                0,
                "exponents must be non-decreasing and at least e1",
            ));
        }
        let reduced = x.quotient_mod_variable(v);
        let root = reduced
            .frobenius_root(e)
            .filter(|r| r.homogeneous_degree() == Some(1))
            .ok_or_else(|| {
                ConstructError::hypothesis(
                    0,
                    format!(
                        "x{} is not a p-power of a linear form modulo {}",
                        i + 2,
                        names[v]
                    ),
                )
            })?;
        let lin = root.insert_variable(v);
        let rest = x.checked_sub(&lin.frobenius_power(e)?)?;
        let vpow = p.pow(e1);
        if rest.terms().any(|(m, _)| m.exps()[v] < vpow) {
            return Err(ConstructError::hypothesis(
                0,
                format!(
                    "x{} - v{}^{} is not divisible by {}^{}",
                    i + 2,
                    i + 2,
                    p.pow(e),
                    names[v],
                    vpow
                ),
            ));
        }
        exps.push(e);
        let mut row: Row = (0..n).map(|j| lin.coeff(&Monomial::var(n, j))).collect();
        row[v] = FieldElement::ZERO;
        linear.push(row);
    }

    let base = var_pow(ctx, n, v, p.pow(e1));
    let mut ys: Vec<Poly> = Vec::with_capacity(xs.len());
    let mut us: Vec<Row> = Vec::with_capacity(xs.len());
    let mut s = 0;
    while s < xs.len() {
        let e = exps[s];
        let t = (s..xs.len()).find(|&j| exps[j] != e).unwrap_or(xs.len());
        let block = &xs[s..t];
        let width = t - s;
        let mut subalgebra = vec![base.clone()];
        subalgebra.extend(ys.iter().cloned());
        let offset = subalgebra.len();
        subalgebra.extend(block.iter().cloned());
        let kvars = subalgebra.len();

        let mut mats = Vec::with_capacity(group.gens().len());
        for (k, g) in group.gens().iter().enumerate() {
            let mut m = SquareMatrix::identity(width);
            for (i, x) in block.iter().enumerate() {
                let d = x.delta(g)?;
                let expr = express_in_subalgebra(&subalgebra, &d)?.ok_or_else(|| {
                    ConstructError::SubringNotStable {
                        generator: k,
                        detail: format!("image of x{} is outside the subring", s + i + 2),
                    }
                })?;
                for j in 0..width {
                    let b = expr.coeff(&Monomial::var(kvars, offset + j));
                    m.set(i, j, ctx.add(m.get(i, j), b));
                }
            }
            mats.push(m);
        }
        let sub = PGroup::new(ctx, width, mats)?;
        let flag = sub.triangulating_basis();
        for lambda in flag.vectors() {
            let mut y = Poly::zero(ctx, n);
            let mut u = vec![FieldElement::ZERO; n];
            for (j, &c) in lambda.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                y = y.checked_add(&block[j].scale(c))?;
                let root = ctx.pth_root_iter(c, e);
                ctx.axpy(&mut u, root, &linear[s + j]);
            }
            ys.push(y);
            us.push(u);
        }
        s = t;
    }
    Ok((ys, us))
}
