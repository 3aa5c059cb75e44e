//! Nakajima steps and chains: monic p-polynomials killing one generator at
//! a time.

use crate::group::{PGroup, SquareMatrix};
use crate::poly::{default_names, Poly};

use super::ConstructError;

/// `x^p - δ(g,x)^{p-1} x`.
pub fn nakajima_step(x: &Poly, g: &SquareMatrix) -> Result<Poly, ConstructError> {
    let p = x.ctx().characteristic() as u64;
    let d = x.delta(g)?;
    let xp = x.frobenius_power(1)?;
    if d.is_zero() {
        return Ok(xp);
    }
    Ok(xp.checked_sub(&d.pow(p - 1)?.checked_mul(x)?)?)
}

fn fixes_var(g: &SquareMatrix, i: usize) -> bool {
    (0..g.dim()).all(|j| {
        if j == i {
            g.get(i, j).is_one()
        } else {
            g.get(i, j).is_zero()
        }
    })
}

/// Applies [`nakajima_step`] for each generator in turn, skipping those that
/// already fix the current element. Every `δ` must be a polynomial in the
/// fixed variables of positive degree.
pub fn nakajima_chain(
    fixed_vars: &[usize],
    x: &Poly,
    gens: &[SquareMatrix],
) -> Result<Poly, ConstructError> {
    let names = default_names(x.nvars());
    if !x.is_homogeneous() || x.is_zero() {
        return Err(ConstructError::hypothesis(0, "input is not homogeneous"));
    }
    let mut cur = x.clone();
    for (k, g) in gens.iter().enumerate() {
        if let Some(&i) = fixed_vars.iter().find(|&&i| !fixes_var(g, i)) {
            return Err(ConstructError::hypothesis(
                k,
                format!("moves fixed variable {}", names[i]),
            ));
        }
        let d = cur.delta(g)?;
        if d.is_zero() {
            continue;
        }
        let outside = (0..cur.nvars())
            .filter(|i| !fixed_vars.contains(i))
            .any(|i| d.involves(i));
        if outside {
            return Err(ConstructError::hypothesis(
                k,
                format!("delta = {} leaves the fixed subring", d.format(&names)),
            ));
        }
        cur = nakajima_step(&cur, g)?;
    }
    Ok(cur)
}

/// Chain generators for a triangulating basis: the `i`-th basis vector is
/// chained over the elements fixing all earlier basis vectors. Returned in
/// the original coordinates. These generate the invariant ring exactly when
/// their degrees multiply to the group order.
pub fn nakajima_flag_generators(group: &PGroup) -> Result<Vec<Poly>, ConstructError> {
    let ctx = group.ctx();
    let n = group.dim();
    let flag = group.triangulating_basis();
    let conj: Vec<SquareMatrix> = group
        .elements()
        .iter()
        .map(|g| flag.conjugate(ctx, g))
        .collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let fixed: Vec<usize> = (0..i).collect();
        let stab: Vec<SquareMatrix> = conj
            .iter()
            .filter(|g| fixed.iter().all(|&j| fixes_var(g, j)))
            .cloned()
            .collect();
        let sub = PGroup::from_elements(ctx, n, &stab);
        let f = nakajima_chain(&fixed, &Poly::var(ctx, n, i), sub.gens())?;
        out.push(flag.to_original(&f)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;
    use std::sync::Arc;

    #[test]
    fn step_examples() {
        let ctx = Arc::new(FieldCtx::prime(2).unwrap());
        let names: Vec<String> = vec!["v".into(), "w".into()];
        let g = SquareMatrix::from_rows(vec![
            vec![ctx.one(), ctx.one()],
            vec![ctx.zero(), ctx.one()],
        ])
        .unwrap();
        let v = Poly::var(&ctx, 2, 0);
        let y = nakajima_step(&v, &g).unwrap();
        assert_eq!(y.format(&names), "v^2 + v*w");
        assert!(y.delta(&g).unwrap().is_zero());
        let id = SquareMatrix::identity(2);
        assert_eq!(nakajima_step(&v, &id).unwrap(), v.pow(2).unwrap());
    }

    #[test]
    fn chain_rejects_moving_delta() {
        let ctx = Arc::new(FieldCtx::prime(3).unwrap());
        let o = ctx.one();
        let z = ctx.zero();
        // x2 -> x2 + x1, x1 -> x1 + x0: delta of x2 is outside F[x0]
        let g = SquareMatrix::from_rows(vec![vec![o, z, z], vec![o, o, z], vec![z, o, o]]).unwrap();
        let x = Poly::var(&ctx, 3, 2);
        assert!(matches!(
            nakajima_chain(&[0], &x, &[g]),
            Err(ConstructError::HypothesisViolated { generator: 0, .. })
        ));
    }
}
