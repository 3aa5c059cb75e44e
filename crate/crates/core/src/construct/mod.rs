//! Constructions of generators for invariant rings of p-groups, and the
//! dispatcher that picks one by dimension and matrix shape.

mod dim3;
mod dim4;
mod nakajima;
mod translation;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::FieldCtx;
use crate::group::{GroupError, PGroup};
use crate::oracle::{self, JacobianStatus, OracleError};
use crate::poly::{Monomial, Poly, PolyError};

pub use dim3::{dim3_generators, dim3_invariants, dim3_normalize, Dim3Normalization};
pub use dim4::{dim4_pipeline, Dim4Trace, QuotientCase};
pub use nakajima::{nakajima_chain, nakajima_flag_generators, nakajima_step};
pub use translation::{retriangulate, translation_generators, twisted_translation_generators};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("hypothesis violated by generator {generator}: {detail}")]
    HypothesisViolated { generator: usize, detail: String },
    #[error("subring is not stable under generator {generator}: {detail}")]
    SubringNotStable { generator: usize, detail: String },
    #[error("group is not generated by transvections")]
    NotTransvectionGenerated,
    #[error("expected a 3-dimensional group, got dimension {0}")]
    NotDimension3(usize),
    #[error("expected a 4-dimensional group, got dimension {0}")]
    NotDimension4(usize),
    #[error("normalization failed: {0}")]
    NormalizationFailed(String),
    #[error("zero pivot while correcting against tau generator {index}")]
    ZeroThetaPivot { index: usize },
    #[error("no invariant of degree {degree} lifts the quotient generator")]
    LiftFailed { degree: u32 },
    #[error("case dispatch failed: {0}")]
    CaseDispatchFailed(String),
    #[error("dimension {dim} is not supported")]
    Unsupported { dim: usize },
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl ConstructError {
    fn hypothesis(generator: usize, detail: impl Into<String>) -> ConstructError {
        ConstructError::HypothesisViolated {
            generator,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub degree_product: u128,
    pub jacobian: JacobianStatus,
    pub sop_witness_degree: Option<u32>,
    pub invariance_checked: bool,
    /// Invariant, degree product equal to the group order, and a system of
    /// parameters.
    pub polynomial: bool,
}

/// Homogeneous generators of `S(V)^G` as a polynomial ring, sorted by degree.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub ring_dim: usize,
    pub gens: Vec<Poly>,
    pub degrees: Vec<u32>,
    pub group_order: usize,
    pub method: String,
    pub certificate: Certificate,
}

impl Presentation {
    /// Sorts `gens` by degree and fills the certificate by brute force.
    pub fn certify(
        group: &PGroup,
        mut gens: Vec<Poly>,
        method: &str,
    ) -> Result<Presentation, ConstructError> {
        let mut degrees = Vec::with_capacity(gens.len());
        for (i, f) in gens.iter().enumerate() {
            degrees.push(
                f.homogeneous_degree()
                    .filter(|&d| d > 0)
                    .ok_or(ConstructError::NotHomogeneous(i))?,
            );
        }
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.sort_by_key(|&i| degrees[i]);
        gens = order.iter().map(|&i| gens[i].clone()).collect();
        degrees = order.iter().map(|&i| degrees[i]).collect();

        let degree_product: u128 = degrees.iter().map(|&d| d as u128).product();
        let invariance_checked = gens.iter().all(|f| oracle::is_invariant(f, group));
        let jacobian = oracle::jacobian_status(&gens)?;
        let sop = oracle::sop_check(&gens)?;
        let polynomial =
            invariance_checked && degree_product == group.order() as u128 && sop.is_sop;
        Ok(Presentation {
            ring_dim: group.dim(),
            gens,
            degrees,
            group_order: group.order(),
            method: method.to_string(),
            certificate: Certificate {
                degree_product,
                jacobian,
                sop_witness_degree: sop.witness_degree,
                invariance_checked,
                polynomial,
            },
        })
    }

    /// Deterministic text form, generators written in the given variable names.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut s = String::new();
        s.push_str(&format!("ring_dim: {}\n", self.ring_dim));
        s.push_str(&format!("group_order: {}\n", self.group_order));
        s.push_str(&format!("method: {}\n", self.method));
        s.push_str("generators:\n");
        for (i, f) in self.gens.iter().enumerate() {
            s.push_str(&format!("  f{} = {}\n", i + 1, f.format(names)));
        }
        let degs: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        s.push_str(&format!("degrees: {}\n", degs.join(" ")));
        let c = &self.certificate;
        s.push_str("certificate:\n");
        s.push_str(&format!("  degree_product: {}\n", c.degree_product));
        s.push_str(&format!("  jacobian_nonzero: {}\n", c.jacobian));
        match c.sop_witness_degree {
            Some(d) => s.push_str(&format!("  sop_witness_degree: {d}\n")),
            None => s.push_str("  sop_witness_degree: absent\n"),
        }
        s.push_str(&format!("  invariance_checked: {}\n", c.invariance_checked));
        s.push_str(&format!("  polynomial: {}\n", c.polynomial));
        s
    }

    /// Just the generators, one per line, in a form `verify` reads back.
    pub fn generators_text(&self, names: &[String]) -> String {
        self.gens
            .iter()
            .map(|f| format!("{}\n", f.format(names)))
            .collect()
    }
}

/// Why a construction did not produce a polynomial presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnosis {
    pub stage: String,
    pub reason: String,
    /// The failure proves the invariant ring is not polynomial (rather than
    /// only showing that this construction did not reach one).
    pub definitive: bool,
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "result: NotPolynomial")?;
        writeln!(f, "stage: {}", self.stage)?;
        writeln!(f, "reason: {}", self.reason)?;
        writeln!(f, "definitive: {}", self.definitive)
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Polynomial(Presentation),
    NotPolynomial(Diagnosis),
}

impl Outcome {
    pub fn is_polynomial(&self) -> bool {
        matches!(self, Outcome::Polynomial(_))
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match self {
            Outcome::Polynomial(p) => Some(p),
            Outcome::NotPolynomial(_) => None,
        }
    }
}

fn not_polynomial(stage: &str, reason: impl Into<String>, definitive: bool) -> Outcome {
    Outcome::NotPolynomial(Diagnosis {
        stage: stage.to_string(),
        reason: reason.into(),
        definitive,
    })
}

/// Picks a construction for `group` and certifies the result.
///
/// Order of attempts: trivial group; a Nakajima basis (any dimension);
/// then, for transvection-generated groups, the dimension-3 construction or
/// the dimension-4 pipeline.
pub fn construct(group: &PGroup) -> Result<Outcome, ConstructError> {
    let ctx = group.ctx();
    let n = group.dim();
    if group.is_trivial() {
        let vars = (0..n).map(|i| Poly::var(ctx, n, i)).collect();
        return Ok(Outcome::Polynomial(Presentation::certify(
            group,
            vars,
            "variables",
        )?));
    }
    let gens = nakajima_flag_generators(group)?;
    let pres = Presentation::certify(group, gens, "nakajima")?;
    if pres.certificate.polynomial {
        return Ok(Outcome::Polynomial(pres));
    }
    if n >= 5 {
        return Err(ConstructError::Unsupported { dim: n });
    }
    if !group.generated_by_transvections() {
        return Ok(not_polynomial(
            "transvection check",
            "the group is not generated by transvections, which every p-group with a polynomial invariant ring is",
            true,
        ));
    }
    let attempt = match n {
        3 => dim3_invariants(group, &group.triangulating_basis()).map(|p| ("dim3", p)),
        4 => dim4_pipeline(group).map(|(p, _)| ("dim4", p)),
        _ => {
            return Ok(not_polynomial(
                "nakajima",
                format!(
                    "degree product {} differs from group order {}",
                    pres.certificate.degree_product,
                    group.order()
                ),
                false,
            ))
        }
    };
    match attempt {
        Ok((_, p)) if p.certificate.polynomial => Ok(Outcome::Polynomial(p)),
        Ok((stage, p)) => Ok(not_polynomial(
            stage,
            format!("certificate rejected: degrees {:?}", p.degrees),
            false,
        )),
        Err(e @ (ConstructError::Unsupported { .. } | ConstructError::Group(_))) => Err(e),
        Err(e) => Ok(not_polynomial(
            if n == 3 { "dim3" } else { "dim4" },
            e.to_string(),
            false,
        )),
    }
}

/// `x_i^e` in `n` variables.
pub(crate) fn var_pow(ctx: &Arc<FieldCtx>, n: usize, i: usize, e: u32) -> Poly {
    let mut exps = vec![0u32; n];
    exps[i] = e;
    Poly::term(ctx, Monomial::new(&exps), crate::gf::FieldElement::ONE)
}

/// `Some(k)` when `d = p^k`.
pub(crate) fn p_log(d: u32, p: u32) -> Option<u32> {
    let mut k = 0;
    let mut x = d;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        k += 1;
    }
    (x == 1).then_some(k)
}

/// If `f = c * m` for a scalar `c` (possibly zero), returns `c`.
pub(crate) fn scalar_multiple(f: &Poly, m: &Monomial) -> Option<crate::gf::FieldElement> {
    match f.num_terms() {
        0 => Some(crate::gf::FieldElement::ZERO),
        1 => {
            let (t, &c) = f.terms().next().expect("one term");
            (t == m).then_some(c)
        }
        _ => None,
    }
}
