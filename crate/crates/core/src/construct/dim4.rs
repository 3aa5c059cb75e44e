//! Dimension 4 by a hypersurface section: invariants of the kernel `H1` of
//! the action on `V/Fv1`, re-triangulated, reduced modulo `v1`, the
//! quotient group handled as a 3-dimensional problem, and each quotient
//! generator lifted back to a `G`-invariant.

use crate::group::{FlagBasis, PGroup};
use crate::linalg::Row;
use crate::oracle::{lift_invariant, OracleError};
use crate::poly::Poly;

use super::{
    dim3_generators, nakajima_chain, p_log, retriangulate, translation_generators,
    twisted_translation_generators, var_pow, ConstructError, Presentation,
};

/// Shape of the quotient group in the basis `(w2, w3, w4)` of `V/Fv1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientCase {
    /// `(g-1) w3` and `(g-1) w4` lie in `F w2`.
    One,
    /// `g` fixes `w2` and `w3`.
    Two,
    /// Neither.
    Three,
}

/// Intermediate data of one pipeline run.
#[derive(Clone, Debug)]
pub struct Dim4Trace {
    pub kernel_order: usize,
    pub quotient_order: usize,
    /// `deg x_i = p^{f_i}` for the kernel invariants, non-decreasing.
    pub exponents: Vec<u32>,
    pub case: QuotientCase,
    pub lift_degrees: Vec<u32>,
}

fn dispatch_err(msg: impl Into<String>) -> ConstructError {
    ConstructError::CaseDispatchFailed(msg.into())
}

pub fn dim4_pipeline(group: &PGroup) -> Result<(Presentation, Dim4Trace), ConstructError> {
    let ctx = group.ctx();
    if group.dim() != 4 {
        return Err(ConstructError::NotDimension4(group.dim()));
    }
    if !group.generated_by_transvections() {
        return Err(ConstructError::NotTransvectionGenerated);
    }
    let p = ctx.characteristic();
    let flag = group.triangulating_basis();
    let gf = group.conjugate(flag.change_of_basis());

    let mut e0 = vec![ctx.zero(); 4];
    e0[0] = ctx.one();
    let qa = gf.quotient_action_kernel(&e0)?;
    let (h1, g2) = (&qa.kernel, &qa.quotient);
    if h1.order() * g2.order() != group.order() {
        return Err(dispatch_err(
            "kernel and quotient orders do not multiply to the group order",
        ));
    }

    let ms: Vec<Poly> = (1..4).map(|i| Poly::var(ctx, 4, i)).collect();
    let mut xs = translation_generators(0, &ms, h1.gens())?;
    xs.remove(0);
    let exponents: Vec<u32> = xs
        .iter()
        .map(|x| p_log(x.degree().expect("nonzero"), p).expect("p-power degree"))
        .collect();

    let (_, us) = retriangulate(0, 0, &xs, &gf)?;
    let ubar: Vec<Row> = us.iter().map(|u| u[1..].to_vec()).collect();
    if crate::group::span_dim(ctx, &ubar, 3) != 3 {
        return Err(dispatch_err(
            "reduced linear forms are not a basis of the quotient",
        ));
    }
    let ubasis = FlagBasis::new(ctx, ubar);
    if let Some(k) = g2.gens().iter().position(|g| !ubasis.triangulates(ctx, g)) {
        return Err(dispatch_err(format!(
            "reduced forms do not triangulate quotient generator {k}"
        )));
    }
    let g2u = g2.conjugate(ubasis.change_of_basis());
    let case = if g2u.gens().iter().all(|g| g.get(2, 1).is_zero()) {
        QuotientCase::One
    } else if g2u.gens().iter().all(|g| g.get(1, 0).is_zero()) {
        QuotientCase::Two
    } else {
        QuotientCase::Three
    };
    let (f2, f3, f4) = (exponents[0], exponents[1], exponents[2]);
    let targets: Vec<Poly> = match case {
        QuotientCase::One => {
            twisted_translation_generators(ctx, 0, &[1, 2], &exponents, g2u.gens())?
        }
        QuotientCase::Two => {
            let a = nakajima_chain(&[0, 1], &Poly::var(ctx, 3, 2), g2u.gens())?;
            vec![
                var_pow(ctx, 3, 0, p.pow(f2)),
                var_pow(ctx, 3, 1, p.pow(f3)),
                a.frobenius_power(f4)?,
            ]
        }
        QuotientCase::Three => {
            let g = dim3_generators(&g2u, &FlagBasis::standard(3))?;
            vec![
                g[0].frobenius_power(f2)?,
                g[1].frobenius_power(f3)?,
                g[2].frobenius_power(f4)?,
            ]
        }
    };

    let mut flagged = vec![Poly::var(ctx, 4, 0)];
    let mut lift_degrees = Vec::with_capacity(3);
    for t in &targets {
        let t = ubasis.to_original(t)?;
        let d = t
            .homogeneous_degree()
            .ok_or_else(|| dispatch_err("quotient generator is not homogeneous"))?;
        let lifted = lift_invariant(&gf, &t, 0, d).map_err(|e| match e {
            OracleError::LiftFailed { degree } => ConstructError::LiftFailed { degree },
            other => other.into(),
        })?;
        lift_degrees.push(d);
        flagged.push(lifted);
    }
    let gens: Vec<Poly> = flagged
        .iter()
        .map(|f| flag.to_original(f))
        .collect::<Result<_, _>>()?;
    let pres = Presentation::certify(group, gens, "dim4")?;
    if !pres.certificate.polynomial {
        return Err(ConstructError::CertificateFailed(format!(
            "degrees {:?} (product {}) for a group of order {}",
            pres.degrees,
            pres.certificate.degree_product,
            group.order()
        )));
    }
    let trace = Dim4Trace {
        kernel_order: h1.order(),
        quotient_order: g2.order(),
        exponents,
        case,
        lift_degrees,
    };
    Ok((pres, trace))
}
