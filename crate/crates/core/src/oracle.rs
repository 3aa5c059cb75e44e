//! Construction-independent verification by graded linear algebra.
//!
//! Everything here works degree by degree on dense coefficient vectors over
//! the monomial basis of a graded piece.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf::{FieldCtx, FieldElement};
use crate::group::{PGroup, SquareMatrix};
use crate::linalg::{left_kernel, rref, solve_left, Echelon, Row};
use crate::poly::{graded_piece, jacobian_det, piece_dim, Monomial, Poly, PolyError};

/// Largest graded piece (number of monomials) the oracle will eliminate over.
pub const MAX_PIECE_DIM: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("generator {0} is not homogeneous of positive degree")]
    NotHomogeneous(usize),
    #[error("expected {expected} polynomials, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("no invariant of degree {degree} reduces to the requested target")]
    LiftFailed { degree: u32 },
    #[error("graded piece of degree {degree} has {size} monomials (limit {MAX_PIECE_DIM})")]
    PieceTooLarge { degree: u32, size: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Monomial basis of one graded piece, in descending graded-lex order.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub nvars: usize,
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

impl GradedPiece {
    pub fn new(nvars: usize, degree: u32) -> Result<GradedPiece, OracleError> {
        let size = piece_dim(nvars, degree);
        if size > MAX_PIECE_DIM {
            return Err(OracleError::PieceTooLarge { degree, size });
        }
        let monomials = graded_piece(nvars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(GradedPiece {
            nvars,
            degree,
            monomials,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Dense coefficients of a homogeneous polynomial of this degree.
    pub fn dense(&self, f: &Poly) -> Row {
        f.dense(&self.index, self.len())
            .expect("polynomial has a term outside this graded piece")
    }

    pub fn poly(&self, ctx: &Arc<FieldCtx>, v: &[FieldElement]) -> Poly {
        Poly::from_dense(ctx, self.nvars, &self.monomials, v)
    }
}

/// Images of every monomial of degree `d` under `g`, as dense rows, built
/// one degree at a time by multiplying with images of variables.
fn monomial_images(ctx: &FieldCtx, g: &SquareMatrix, pieces: &[GradedPiece]) -> Vec<Row> {
    let n = g.dim();
    let mut prev: Vec<Row> = vec![vec![FieldElement::ONE]];
    for k in 1..pieces.len() {
        let (lower, cur) = (&pieces[k - 1], &pieces[k]);
        let mut rows = Vec::with_capacity(cur.len());
        for m in &cur.monomials {
            let j = (0..n)
                .rev()
                .find(|&j| m.exps()[j] > 0)
                .expect("positive degree");
            let mut pe = m.exps().to_vec();
            pe[j] -= 1;
            let parent = lower.index[&Monomial::new(&pe)];
            let src = &prev[parent];
            let mut out = vec![FieldElement::ZERO; cur.len()];
            for (pi, &c) in src.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let base = &lower.monomials[pi];
                for l in 0..n {
                    let a = g.get(j, l);
                    if a.is_zero() {
                        continue;
                    }
                    let idx = cur.index[&base.mul_var(l)];
                    out[idx] = ctx.add(out[idx], ctx.mul(c, a));
                }
            }
            rows.push(out);
        }
        prev = rows;
    }
    prev
}

fn pieces_up_to(n: usize, d: u32) -> Result<Vec<GradedPiece>, OracleError> {
    (0..=d).map(|k| GradedPiece::new(n, k)).collect()
}

/// Coefficient vectors (reduced echelon form) of a basis of `S(V)^G_d`.
pub fn invariant_space_rows(
    group: &PGroup,
    d: u32,
) -> Result<(GradedPiece, Vec<Row>), OracleError> {
    let ctx = group.ctx();
    let pieces = pieces_up_to(group.dim(), d)?;
    let piece = pieces.last().expect("degree 0 piece").clone();
    let size = piece.len();
    // Current basis of the common kernel, refined one generator at a time.
    let mut basis: Vec<Row> = SquareMatrix::identity(size).rows();
    for g in group.gens() {
        if basis.is_empty() {
            break;
        }
        let images = monomial_images(ctx, g, &pieces);
        // rows: (basis vector) · (image - identity)
        let rows: Vec<Row> = basis
            .iter()
            .map(|b| {
                let mut out: Row = b.iter().map(|&c| ctx.neg(c)).collect();
                for (i, &c) in b.iter().enumerate() {
                    if !c.is_zero() {
                        ctx.axpy(&mut out, c, &images[i]);
                    }
                }
                out
            })
            .collect();
        let combos = left_kernel(ctx, &rows, size);
        basis = combos
            .iter()
            .map(|c| {
                let mut out = vec![FieldElement::ZERO; size];
                for (j, &x) in c.iter().enumerate() {
                    if !x.is_zero() {
                        ctx.axpy(&mut out, x, &basis[j]);
                    }
                }
                out
            })
            .collect();
    }
    let basis = rref(ctx, &basis, size);
    Ok((piece, basis))
}

/// A basis of the degree-`d` invariants, in reduced echelon form with
/// respect to the descending monomial order.
pub fn invariant_space_basis(group: &PGroup, d: u32) -> Result<Vec<Poly>, OracleError> {
    let (piece, rows) = invariant_space_rows(group, d)?;
    Ok(rows.iter().map(|r| piece.poly(group.ctx(), r)).collect())
}

pub fn invariant_dim(group: &PGroup, d: u32) -> Result<usize, OracleError> {
    Ok(invariant_space_rows(group, d)?.1.len())
}

/// `δ(g, f) = 0` for every generator.
pub fn is_invariant(f: &Poly, group: &PGroup) -> bool {
    group
        .gens()
        .iter()
        .all(|g| f.delta(g).map(|d| d.is_zero()).unwrap_or(false))
}

/// `δ(g, f) = 0` for every element of the group.
pub fn is_invariant_exhaustive(f: &Poly, group: &PGroup) -> bool {
    group
        .elements()
        .par_iter()
        .all(|g| f.delta(g).map(|d| d.is_zero()).unwrap_or(false))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SopResult {
    pub is_sop: bool,
    /// Smallest degree at which the ideal contains the whole graded piece.
    pub witness_degree: Option<u32>,
    /// `Σ (deg f_i - 1) + 1`.
    pub bound: u32,
}

fn check_homogeneous(fs: &[Poly], n: usize) -> Result<Vec<u32>, OracleError> {
    if fs.len() != n {
        return Err(OracleError::WrongCount {
            expected: n,
            got: fs.len(),
        });
    }
    fs.iter()
        .enumerate()
        .map(|(i, f)| match f.homogeneous_degree() {
            Some(d) if d > 0 && f.nvars() == n => Ok(d),
            _ => Err(OracleError::NotHomogeneous(i)),
        })
        .collect()
}

type Reduced = (Vec<Poly>, Vec<u32>);

/// Repeatedly solves a linear member for its last variable and substitutes
/// into the rest. `None` when a linear form collapses to zero.
fn eliminate_linear(fs: &[Poly], degrees: &[u32]) -> Result<Option<Reduced>, OracleError> {
    let mut fs = fs.to_vec();
    let mut degrees = degrees.to_vec();
    while let Some(k) = degrees.iter().position(|&d| d == 1) {
        let l = fs.remove(k);
        degrees.remove(k);
        if l.is_zero() {
            return Ok(None);
        }
        let ctx = l.ctx().clone();
        let n = l.nvars();
        let coeffs: Vec<FieldElement> = (0..n).map(|i| l.coeff(&Monomial::var(n, i))).collect();
        let j = (0..n)
            .rev()
            .find(|&i| !coeffs[i].is_zero())
            .expect("nonzero linear form");
        let inv = ctx.inv(coeffs[j]).expect("nonzero");
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            if i == j {
                let mut sol = vec![FieldElement::ZERO; n - 1];
                for (t, &c) in coeffs.iter().enumerate().filter(|&(t, _)| t != j) {
                    sol[if t < j { t } else { t - 1 }] = ctx.neg(ctx.mul(c, inv));
                }
                images.push(Poly::linear(&ctx, &sol));
            } else {
                images.push(Poly::var(&ctx, n - 1, if i < j { i } else { i - 1 }));
            }
        }
        for f in fs.iter_mut() {
            *f = f.substitute(&images)?;
        }
        // a vanishing higher-degree member also rules out a system of parameters
        if fs.iter().any(|f| f.is_zero()) {
            return Ok(None);
        }
    }
    Ok(Some((fs, degrees)))
}

/// Whether the ideal generated by `fs` contains every monomial of degree `d`.
fn ideal_saturates(fs: &[Poly], degrees: &[u32], d: u32) -> Result<bool, OracleError> {
    let n = fs[0].nvars();
    let ctx = fs[0].ctx();
    let piece = GradedPiece::new(n, d)?;
    let mut ech = Echelon::new(ctx, piece.len());
    for (f, &df) in fs.iter().zip(degrees) {
        if df > d {
            continue;
        }
        for m in graded_piece(n, d - df) {
            let mut row = vec![FieldElement::ZERO; piece.len()];
            for (t, &c) in f.terms() {
                row[piece.index[&t.mul(&m)]] = c;
            }
            ech.insert(row);
            if ech.rank() == piece.len() {
                return Ok(true);
            }
        }
    }
    Ok(ech.rank() == piece.len())
}

/// Decides whether `n` homogeneous polynomials in `n` variables form a
/// system of parameters, by checking whether their ideal contains the full
/// graded piece at degree `Σ (deg f_i - 1) + 1`.
pub fn sop_check(fs: &[Poly]) -> Result<SopResult, OracleError> {
    let n = fs.first().map_or(0, |f| f.nvars());
    let degrees = check_homogeneous(fs, n)?;
    let bound = degrees.iter().map(|d| d - 1).sum::<u32>() + 1;
    if n == 0 {
        return Ok(SopResult {
            is_sop: true,
            witness_degree: Some(0),
            bound: 0,
        });
    }
    // Saturation degrees of (l, f_2, ..) and of (f_2, ..) mod l agree, so
    // linear forms are eliminated first to shrink the graded pieces.
    let Some((fs, degrees)) = eliminate_linear(fs, &degrees)? else {
        return Ok(SopResult {
            is_sop: false,
            witness_degree: None,
            bound,
        });
    };
    if fs.is_empty() {
        return Ok(SopResult {
            is_sop: true,
            witness_degree: Some(1),
            bound,
        });
    }
    let fs = &fs[..];
    if !ideal_saturates(fs, &degrees, bound)? {
        return Ok(SopResult {
            is_sop: false,
            witness_degree: None,
            bound,
        });
    }
    let mut witness = bound;
    while witness > 1 && ideal_saturates(fs, &degrees, witness - 1)? {
        witness -= 1;
    }
    Ok(SopResult {
        is_sop: true,
        witness_degree: Some(witness),
        bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolynomialVia {
    Jacobian,
    Sop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KemperReason {
    Polynomial(PolynomialVia),
    WrongCount { expected: usize, got: usize },
    NotHomogeneous(usize),
    NotInvariant(usize),
    DegreeProduct { product: u128, order: usize },
    NotSop,
}

impl fmt::Display for KemperReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KemperReason::Polynomial(PolynomialVia::Jacobian) => {
                write!(f, "polynomial (nonzero Jacobian)")
            }
            KemperReason::Polynomial(PolynomialVia::Sop) => {
                write!(f, "polynomial (system of parameters)")
            }
            KemperReason::WrongCount { expected, got } => {
                write!(f, "WrongCount: expected {expected}, got {got}")
            }
            KemperReason::NotHomogeneous(i) => write!(f, "NotHomogeneous: generator {}", i + 1),
            KemperReason::NotInvariant(i) => write!(f, "NotInvariant: generator {}", i + 1),
            KemperReason::DegreeProduct { product, order } => {
                write!(
                    f,
                    "DegreeProduct: product of degrees {product} differs from group order {order}"
                )
            }
            KemperReason::NotSop => write!(f, "NotSop: not a system of parameters"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JacobianStatus {
    Nonzero,
    Zero,
    Skipped,
}

impl fmt::Display for JacobianStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JacobianStatus::Nonzero => "true",
            JacobianStatus::Zero => "false",
            JacobianStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug)]
pub struct KemperReport {
    pub polynomial: bool,
    pub reason: KemperReason,
    pub jacobian: JacobianStatus,
    pub sop: Option<SopResult>,
}

/// Skip the Jacobian when the expanded determinant could get large.
const JACOBIAN_TERM_BUDGET: usize = 4096;

pub fn jacobian_status(fs: &[Poly]) -> Result<JacobianStatus, OracleError> {
    let budget: usize = fs
        .iter()
        .map(|f| f.num_terms().max(1))
        .try_fold(1usize, |acc, t| acc.checked_mul(t))
        .unwrap_or(usize::MAX);
    if budget > JACOBIAN_TERM_BUDGET {
        return Ok(JacobianStatus::Skipped);
    }
    Ok(if jacobian_det(fs)?.is_zero() {
        JacobianStatus::Zero
    } else {
        JacobianStatus::Nonzero
    })
}

/// `fs` generate `S(V)^G` as a polynomial ring iff they are invariant,
/// their degrees multiply to `|G|`, and they are algebraically independent.
/// A nonzero Jacobian settles independence at once; otherwise the
/// system-of-parameters check decides.
pub fn kemper_criterion(group: &PGroup, fs: &[Poly]) -> Result<KemperReport, OracleError> {
    let fail = |reason| {
        Ok(KemperReport {
            polynomial: false,
            reason,
            jacobian: JacobianStatus::Skipped,
            sop: None,
        })
    };
    let n = group.dim();
    if fs.len() != n {
        return fail(KemperReason::WrongCount {
            expected: n,
            got: fs.len(),
        });
    }
    let mut degrees = Vec::with_capacity(n);
    for (i, f) in fs.iter().enumerate() {
        match f.homogeneous_degree() {
            Some(d) if d > 0 && f.nvars() == n => degrees.push(d),
            _ => return fail(KemperReason::NotHomogeneous(i)),
        }
    }
    for (i, f) in fs.iter().enumerate() {
        if !is_invariant(f, group) {
            return fail(KemperReason::NotInvariant(i));
        }
    }
    let product: u128 = degrees.iter().map(|&d| d as u128).product();
    if product != group.order() as u128 {
        return fail(KemperReason::DegreeProduct {
            product,
            order: group.order(),
        });
    }
    let jacobian = jacobian_status(fs)?;
    if jacobian == JacobianStatus::Nonzero {
        return Ok(KemperReport {
            polynomial: true,
            reason: KemperReason::Polynomial(PolynomialVia::Jacobian),
            jacobian,
            sop: None,
        });
    }
    let sop = sop_check(fs)?;
    let (polynomial, reason) = if sop.is_sop {
        (true, KemperReason::Polynomial(PolynomialVia::Sop))
    } else {
        (false, KemperReason::NotSop)
    };
    Ok(KemperReport {
        polynomial,
        reason,
        jacobian,
        sop: Some(sop),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRow {
    pub degree: u32,
    pub dim: usize,
    pub new_generators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedReport {
    pub rows: Vec<GradedRow>,
}

impl GradedReport {
    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dim).collect()
    }

    pub fn mingen_counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.new_generators).collect()
    }
}

impl fmt::Display for GradedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>6}  {:>8}  {:>14}", "degree", "dim", "new_generators")?;
        for r in &self.rows {
            writeln!(f, "{:>6}  {:>8}  {:>14}", r.degree, r.dim, r.new_generators)?;
        }
        Ok(())
    }
}

/// Graded dimensions of `S(V)^G` up to degree `max_degree`, and how many
/// minimal algebra generators each degree needs: the invariants not in the
/// span of products of lower-degree invariants.
pub fn minimal_generator_report(
    group: &PGroup,
    max_degree: u32,
) -> Result<GradedReport, OracleError> {
    let ctx = group.ctx();
    let bases: Vec<(GradedPiece, Vec<Row>)> = (0..=max_degree)
        .into_par_iter()
        .map(|d| invariant_space_rows(group, d))
        .collect::<Result<_, _>>()?;
    let polys: Vec<Vec<Poly>> = bases
        .iter()
        .map(|(piece, rows)| rows.iter().map(|r| piece.poly(ctx, r)).collect())
        .collect();
    let rows = (0..=max_degree)
        .into_par_iter()
        .map(|d| {
            let (piece, basis) = &bases[d as usize];
            let dim = basis.len();
            if d == 0 {
                return GradedRow {
                    degree: 0,
                    dim,
                    new_generators: 0,
                };
            }
            let mut ech = Echelon::new(ctx, piece.len());
            'outer: for e in 1..=d / 2 {
                for a in &polys[e as usize] {
                    for b in &polys[(d - e) as usize] {
                        ech.insert(piece.dense(&(a * b)));
                        if ech.rank() == dim {
                            break 'outer;
                        }
                    }
                }
            }
            GradedRow {
                degree: d,
                dim,
                new_generators: dim - ech.rank(),
            }
        })
        .collect();
    Ok(GradedReport { rows })
}

/// A homogeneous invariant of degree `d` whose image modulo variable
/// `v_index` is `target` (a polynomial in the remaining variables).
pub fn lift_invariant(
    group: &PGroup,
    target: &Poly,
    v_index: usize,
    d: u32,
) -> Result<Poly, OracleError> {
    let ctx = group.ctx();
    let n = group.dim();
    if target.is_zero() {
        return Ok(Poly::zero(ctx, n));
    }
    if target.homogeneous_degree() != Some(d) || target.nvars() + 1 != n {
        return Err(OracleError::LiftFailed { degree: d });
    }
    let basis = invariant_space_basis(group, d)?;
    let small = GradedPiece::new(n - 1, d)?;
    let rows: Vec<Row> = basis
        .iter()
        .map(|b| small.dense(&b.quotient_mod_variable(v_index)))
        .collect();
    let coeffs = solve_left(ctx, &rows, &small.dense(target))
        .ok_or(OracleError::LiftFailed { degree: d })?;
    let mut out = Poly::zero(ctx, n);
    for (c, b) in coeffs.iter().zip(&basis) {
        if !c.is_zero() {
            out = &out + &b.scale(*c);
        }
    }
    Ok(out)
}

/// Coefficients of `Π 1/(1 - t^{d_i})` up to `t^max_degree`.
pub fn free_series(degrees: &[u32], max_degree: u32) -> Vec<u128> {
    let mut coeffs = vec![0u128; max_degree as usize + 1];
    coeffs[0] = 1;
    for &d in degrees {
        let d = d as usize;
        if d == 0 {
            continue;
        }
        for k in d..coeffs.len() {
            coeffs[k] += coeffs[k - d];
        }
    }
    coeffs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertReport {
    pub agrees: bool,
    pub expected: Vec<u128>,
    pub actual: Vec<usize>,
    /// First degree where the series and the invariant dimensions differ.
    pub first_mismatch: Option<u32>,
}

/// Compares the Hilbert series of a free algebra on generators of the given
/// degrees with the dimensions of `S(V)^G_d` for `d ≤ max_degree`.
pub fn hilbert_check(
    group: &PGroup,
    degrees: &[u32],
    max_degree: u32,
) -> Result<HilbertReport, OracleError> {
    let expected = free_series(degrees, max_degree);
    let actual: Vec<usize> = (0..=max_degree)
        .into_par_iter()
        .map(|d| invariant_dim(group, d))
        .collect::<Result<_, _>>()?;
    let first_mismatch =
        (0..=max_degree).find(|&d| expected[d as usize] != actual[d as usize] as u128);
    Ok(HilbertReport {
        agrees: first_mismatch.is_none(),
        expected,
        actual,
        first_mismatch,
    })
}

/// Writes `target` as a polynomial in `gens` (homogeneous, positive degree),
/// returning `P` with `P(gens) = target`, or `None` if `target` is not in
/// the subalgebra they generate.
pub fn express_in_subalgebra(gens: &[Poly], target: &Poly) -> Result<Option<Poly>, OracleError> {
    let ctx = target.ctx().clone();
    let k = gens.len();
    let degrees = check_homogeneous_any(gens)?;
    if target.is_zero() {
        return Ok(Some(Poly::zero(&ctx, k)));
    }
    let Some(d) = target.homogeneous_degree() else {
        // Split into homogeneous components.
        let mut out = Poly::zero(&ctx, k);
        let mut parts: HashMap<u32, Poly> = HashMap::new();
        for (m, &c) in target.terms() {
            parts
                .entry(m.degree())
                .or_insert_with(|| Poly::zero(&ctx, target.nvars()))
                .add_term(m.clone(), c);
        }
        let mut keys: Vec<u32> = parts.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            match express_in_subalgebra(gens, &parts[&key])? {
                Some(p) => out = &out + &p,
                None => return Ok(None),
            }
        }
        return Ok(Some(out));
    };
    if d == 0 {
        let c = target.coeff(&Monomial::one(target.nvars()));
        return Ok(Some(Poly::constant(&ctx, k, c)));
    }
    let exps = weighted_exponents(&degrees, d);
    if exps.is_empty() {
        return Ok(None);
    }
    let piece = GradedPiece::new(target.nvars(), d)?;
    let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
    let mut rows = Vec::with_capacity(exps.len());
    for e in &exps {
        let mut prod = Poly::one(&ctx, target.nvars());
        for (i, &ei) in e.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = powers.entry((i, ei)) {
                e.insert(gens[i].pow(ei as u64)?);
            }
            prod = &prod * &powers[&(i, ei)];
        }
        rows.push(piece.dense(&prod));
    }
    let Some(coeffs) = solve_left(&ctx, &rows, &piece.dense(target)) else {
        return Ok(None);
    };
    let mut out = Poly::zero(&ctx, k);
    for (e, c) in exps.iter().zip(coeffs) {
        out.add_term(Monomial::new(e), c);
    }
    Ok(Some(out))
}

fn check_homogeneous_any(gens: &[Poly]) -> Result<Vec<u32>, OracleError> {
    gens.iter()
        .enumerate()
        .map(|(i, f)| match f.homogeneous_degree() {
            Some(d) if d > 0 => Ok(d),
            _ => Err(OracleError::NotHomogeneous(i)),
        })
        .collect()
}

/// All exponent vectors `a` with `Σ a_i w_i = d`.
fn weighted_exponents(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn rec(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in (0..=left / w[i]).rev() {
            cur[i] = a;
            rec(w, i + 1, left - a * w[i], cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(weights, 0, d, &mut vec![0; weights.len()], &mut out);
    out
}

/// Whether `target` lies in the subalgebra generated by `gens`.
pub fn in_subalgebra(gens: &[Poly], target: &Poly) -> Result<bool, OracleError> {
    Ok(express_in_subalgebra(gens, target)?.is_some())
}
