//! Transvection groups in dimension 3.
//!
//! Work happens in flag coordinates `(w1, w2, v)`: variable 0 is fixed,
//! variable 1 moves by multiples of `w1`, variable 2 by `w1` and `w2`.
//! Every transvection then moves `w2` (a tau), or moves `v` by a nonzero
//! multiple of `w2` (a sigma), or only moves `v` by a multiple of `w1` (an
//! epsilon).

use crate::gf::{FieldCtx, FieldElement};
use crate::group::{is_transvection, FlagBasis, PGroup, SquareMatrix};
use crate::linalg::Echelon;
use crate::poly::{Monomial, Poly};

use super::{
    nakajima_chain, nakajima_step, p_log, scalar_multiple, translation_generators, var_pow,
    ConstructError, Presentation,
};

#[derive(Clone, Debug)]
pub struct Dim3Normalization {
    pub flag: FlagBasis,
    /// Generators in flag coordinates, by type.
    pub taus: Vec<SquareMatrix>,
    pub sigmas: Vec<SquareMatrix>,
    pub epsilons: Vec<SquareMatrix>,
    /// The entries whose independence over the prime field makes each list
    /// a minimal generating set: `w2 -> w2 + c w1` for taus, the `w2`
    /// coefficient of the image of `v` for sigmas, and the `w1` coefficient
    /// of the image of `v` for epsilons.
    pub tau_entries: Vec<FieldElement>,
    pub sigma_entries: Vec<FieldElement>,
    pub epsilon_entries: Vec<FieldElement>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Tau,
    Sigma,
    Epsilon,
}

fn tau_entry(c: &SquareMatrix) -> FieldElement {
    c.get(1, 0)
}

fn sigma_entry(c: &SquareMatrix) -> FieldElement {
    c.get(2, 1)
}

fn epsilon_entry(c: &SquareMatrix) -> FieldElement {
    c.get(2, 0)
}

fn classify(c: &SquareMatrix) -> Option<Kind> {
    match (
        tau_entry(c).is_zero(),
        sigma_entry(c).is_zero(),
        epsilon_entry(c).is_zero(),
    ) {
        (false, true, _) => Some(Kind::Tau),
        (true, false, _) => Some(Kind::Sigma),
        (true, true, false) => Some(Kind::Epsilon),
        _ => None,
    }
}

/// Splits `mats` into a prime-field-independent part (by `entry`) and, for
/// each dependent matrix, the product `m · Π kept_j^{t_j}` that kills its
/// entry.
fn fold_dependent(
    ctx: &FieldCtx,
    mats: &[SquareMatrix],
    entry: fn(&SquareMatrix) -> FieldElement,
) -> (Vec<SquareMatrix>, Vec<SquareMatrix>) {
    let fp = FieldCtx::prime(ctx.characteristic() as u64).expect("prime");
    let width = ctx.degree() as usize;
    let mut ech = Echelon::new(&fp, width);
    let mut kept = Vec::new();
    let mut folded = Vec::new();
    for (i, m) in mats.iter().enumerate() {
        let coords = ctx
            .coeffs(entry(m))
            .iter()
            .map(|&c| fp.from_int(c as i64))
            .collect();
        let mut tag = vec![FieldElement::ZERO; mats.len()];
        tag[i] = FieldElement::ONE;
        match ech.insert_tagged(coords, tag) {
            None => kept.push(m.clone()),
            Some(t) => {
                let mut prod = SquareMatrix::identity(m.dim());
                for (j, &tj) in t.iter().enumerate() {
                    if !tj.is_zero() {
                        // t_i = 1 picks up the matrix itself.
                        prod = prod.mul(ctx, &mats[j].pow(ctx, tj.index()));
                    }
                }
                if !prod.is_identity() {
                    folded.push(prod);
                }
            }
        }
    }
    (kept, folded)
}

/// Classifies the generators of `T` in the coordinates of `flag` and
/// rearranges them into independent taus, sigmas and epsilons whose
/// commutators lie among the epsilons.
pub fn dim3_normalize(
    group: &PGroup,
    flag: &FlagBasis,
) -> Result<Dim3Normalization, ConstructError> {
    let ctx = group.ctx();
    if group.dim() != 3 {
        return Err(ConstructError::NotDimension3(group.dim()));
    }
    let gens: Vec<SquareMatrix> = if group.gens().iter().all(|g| is_transvection(ctx, g)) {
        group.gens().to_vec()
    } else {
        group
            .transvection_generators()
            .ok_or(ConstructError::NotTransvectionGenerated)?
    };
    let (mut taus, mut sigmas, mut eps) = (Vec::new(), Vec::new(), Vec::new());
    for (k, g) in gens.iter().enumerate() {
        if !flag.triangulates(ctx, g) {
            return Err(ConstructError::NormalizationFailed(format!(
                "flag does not triangulate generator {k}"
            )));
        }
        let c = flag.conjugate(ctx, g);
        match classify(&c) {
            Some(Kind::Tau) => taus.push(c),
            Some(Kind::Sigma) => sigmas.push(c),
            Some(Kind::Epsilon) => eps.push(c),
            None => {
                return Err(ConstructError::NormalizationFailed(format!(
                    "generator {k} is not a transvection in flag form"
                )))
            }
        }
    }
    let (taus, tau_extra) = fold_dependent(ctx, &taus, tau_entry);
    let (sigmas, sigma_extra) = fold_dependent(ctx, &sigmas, sigma_entry);
    eps.extend(tau_extra);
    eps.extend(sigma_extra);
    for s in &sigmas {
        let si = s.inverse(ctx).expect("invertible");
        for t in &taus {
            let ti = t.inverse(ctx).expect("invertible");
            let comm = s.mul(ctx, t).mul(ctx, &si).mul(ctx, &ti);
            if !comm.is_identity() {
                eps.push(comm);
            }
        }
    }
    if let Some(bad) = eps.iter().find(|e| classify(e) != Some(Kind::Epsilon)) {
        return Err(ConstructError::NormalizationFailed(format!(
            "expected an epsilon, got {}",
            bad.format(ctx)
        )));
    }
    let (epsilons, _) = fold_dependent(ctx, &eps, epsilon_entry);
    Ok(Dim3Normalization {
        flag: flag.clone(),
        tau_entries: taus.iter().map(tau_entry).collect(),
        sigma_entries: sigmas.iter().map(sigma_entry).collect(),
        epsilon_entries: epsilons.iter().map(epsilon_entry).collect(),
        taus,
        sigmas,
        epsilons,
    })
}

/// The coefficient `c` in `δ(g, f) = c · w1^e`.
fn w1_multiple(
    f: &Poly,
    g: &SquareMatrix,
    e: u32,
    what: &str,
) -> Result<FieldElement, ConstructError> {
    let d = f.delta(g)?;
    scalar_multiple(&d, &Monomial::var(3, 0).scale_exps(e)).ok_or_else(|| {
        ConstructError::NormalizationFailed(format!("{what}: delta is not a multiple of w1^{e}"))
    })
}

/// Generators `[w1, y, X]` of `S(V)^T` in original coordinates, in the
/// order built (not sorted by degree).
pub fn dim3_generators(group: &PGroup, flag: &FlagBasis) -> Result<Vec<Poly>, ConstructError> {
    let norm = dim3_normalize(group, flag)?;
    let ctx = group.ctx();
    let p = ctx.characteristic();
    let w1 = Poly::var(ctx, 3, 0);
    let w2 = Poly::var(ctx, 3, 1);
    let v = Poly::var(ctx, 3, 2);
    let Dim3Normalization {
        taus,
        sigmas,
        epsilons,
        ..
    } = &norm;

    let flagged: Vec<Poly> = if sigmas.is_empty() {
        let mut gens = taus.clone();
        gens.extend(epsilons.iter().cloned());
        translation_generators(0, &[w2, v], &gens)?
    } else if taus.is_empty() {
        let mut gens = epsilons.clone();
        gens.extend(sigmas.iter().cloned());
        let x = nakajima_chain(&[0, 1], &v, &gens)?;
        vec![w1, w2, x]
    } else {
        let z = nakajima_chain(&[0, 1], &v, epsilons)?;
        let n = p_log(z.degree().expect("nonzero"), p).expect("p-power degree");
        let s = z.delta(&sigmas[0])?;
        let a = nakajima_step(&z, &sigmas[0])?;
        let s_pow = s.pow(p as u64 - 1)?;

        let mut ys = vec![w2];
        for t in taus {
            let next = nakajima_step(ys.last().expect("nonempty"), t)?;
            ys.push(next);
        }
        let (mut xis, mut etas) = (Vec::<FieldElement>::new(), Vec::<FieldElement>::new());
        let mut x = a;
        for (i, t) in taus.iter().enumerate() {
            if i as u32 > n {
                return Err(ConstructError::NormalizationFailed(format!(
                    "more taus than epsilons allow ({} > {n})",
                    i
                )));
            }
            let alpha = w1_multiple(&z, t, p.pow(n), "tau on z")?;
            let theta: Vec<FieldElement> = (0..=i)
                .map(|j| w1_multiple(&ys[j], t, p.pow(j as u32), "tau on y"))
                .collect::<Result<_, _>>()?;
            let pivot = theta[i];
            if pivot.is_zero() {
                return Err(ConstructError::ZeroThetaPivot { index: i + 1 });
            }
            let mut sx = ctx.frobenius(alpha);
            let mut se = alpha;
            for j in 0..i {
                sx = ctx.sub(sx, ctx.mul(xis[j], theta[j]));
                se = ctx.sub(se, ctx.mul(etas[j], theta[j]));
            }
            let xi = ctx.div(sx, pivot).expect("nonzero");
            let eta = ctx.div(se, pivot).expect("nonzero");
            xis.push(xi);
            etas.push(eta);
            let pi = p.pow(i as u32);
            let first = var_pow(ctx, 3, 0, p.pow(n + 1) - pi)
                .checked_mul(&ys[i])?
                .scale(xi);
            let second = s_pow
                .checked_mul(&ys[i])?
                .checked_mul(&var_pow(ctx, 3, 0, p.pow(n) - pi))?
                .scale(eta);
            x = x.checked_sub(&first.checked_sub(&second)?)?;
        }
        for sg in &sigmas[1..] {
            if !x.delta(sg)?.is_zero() {
                x = nakajima_step(&x, sg)?;
            }
        }
        vec![w1, ys.pop().expect("nonempty"), x]
    };
    flagged
        .iter()
        .map(|f| norm.flag.to_original(f).map_err(ConstructError::from))
        .collect()
}

/// Certified presentation of `S(V)^T` for a 3-dimensional transvection group.
pub fn dim3_invariants(group: &PGroup, flag: &FlagBasis) -> Result<Presentation, ConstructError> {
    let gens = dim3_generators(group, flag)?;
    Presentation::certify(group, gens, "dim3")
}
