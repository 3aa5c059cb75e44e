//! Finite p-subgroups of `GL(V)`, always fully enumerated.
//!
//! Matrices act on row vectors from the right: row `i` of `g` is the image
//! of the `i`-th basis vector.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{FieldCtx, FieldElement};
use crate::linalg::{left_kernel, rank, right_kernel, Echelon, Row};
use crate::poly::{Poly, PolyError};

pub use crate::linalg::SquareMatrix;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group has more than {0} elements")]
    CapExceeded(usize),
    #[error("group order {0} is not a power of the characteristic")]
    NotPGroup(usize),
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("generator {0} has the wrong dimension")]
    DimensionMismatch(usize),
    #[error("vector is zero or not fixed by the group")]
    NotFixedVector,
}

#[derive(Clone, Debug)]
pub struct PGroup {
    ctx: Arc<FieldCtx>,
    dim: usize,
    gens: Vec<SquareMatrix>,
    elements: Vec<SquareMatrix>,
    index: HashMap<SquareMatrix, usize>,
}

impl PGroup {
    /// Breadth-first closure of `gens` under right multiplication.
    pub fn enumerate(
        ctx: &Arc<FieldCtx>,
        dim: usize,
        gens: Vec<SquareMatrix>,
        cap: usize,
    ) -> Result<PGroup, GroupError> {
        for (i, g) in gens.iter().enumerate() {
            if g.dim() != dim {
                return Err(GroupError::DimensionMismatch(i));
            }
            if g.determinant(ctx).is_zero() {
                return Err(GroupError::SingularGenerator(i));
            }
        }
        let id = SquareMatrix::identity(dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let y = elements[i].mul(ctx, g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let order = elements.len();
        if !is_power_of(order as u64, ctx.characteristic() as u64) {
            return Err(GroupError::NotPGroup(order));
        }
        Ok(PGroup {
            ctx: ctx.clone(),
            dim,
            gens,
            elements,
            index,
        })
    }

    pub fn new(
        ctx: &Arc<FieldCtx>,
        dim: usize,
        gens: Vec<SquareMatrix>,
    ) -> Result<PGroup, GroupError> {
        PGroup::enumerate(ctx, dim, gens, DEFAULT_CAP)
    }

    pub fn trivial(ctx: &Arc<FieldCtx>, dim: usize) -> PGroup {
        PGroup::new(ctx, dim, Vec::new()).expect("trivial group")
    }

    /// The subgroup with the given (closed) element set, with generators
    /// chosen greedily in the given order.
    pub fn from_elements(ctx: &Arc<FieldCtx>, dim: usize, elements: &[SquareMatrix]) -> PGroup {
        let mut group = PGroup::trivial(ctx, dim);
        for g in elements {
            if !group.contains(g) {
                let mut gens = group.gens.clone();
                gens.push(g.clone());
                group = PGroup::new(ctx, dim, gens).expect("subgroup of a p-group");
            }
        }
        group
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[SquareMatrix] {
        &self.gens
    }

    /// All elements; the identity comes first.
    pub fn elements(&self) -> &[SquareMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &SquareMatrix) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &SquareMatrix) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        let ctx = &self.ctx;
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens[i + 1..]
                .iter()
                .all(|b| a.mul(ctx, b) == b.mul(ctx, a))
        })
    }

    pub fn is_elementary_abelian(&self) -> bool {
        let p = self.ctx.characteristic() as u64;
        self.is_abelian() && self.gens.iter().all(|g| g.pow(&self.ctx, p).is_identity())
    }

    pub fn transvections(&self) -> Vec<SquareMatrix> {
        self.elements
            .iter()
            .filter(|g| is_transvection(&self.ctx, g))
            .cloned()
            .collect()
    }

    /// The subgroup generated by all transvections in the group.
    pub fn transvection_subgroup(&self) -> PGroup {
        PGroup::from_elements(&self.ctx, self.dim, &self.transvections())
    }

    pub fn generated_by_transvections(&self) -> bool {
        self.transvection_subgroup().order() == self.order()
    }

    /// A generating set made of transvections, chosen greedily, if one exists.
    pub fn transvection_generators(&self) -> Option<Vec<SquareMatrix>> {
        let sub = self.transvection_subgroup();
        (sub.order() == self.order()).then(|| sub.gens.clone())
    }

    /// Basis of `V^G` in reduced echelon form.
    pub fn fixed_space(&self) -> Vec<Row> {
        let n = self.dim;
        let mats: Vec<SquareMatrix> = self
            .gens
            .iter()
            .map(|g| g.minus_identity(&self.ctx))
            .collect();
        let rows: Vec<Row> = (0..n)
            .map(|i| mats.iter().flat_map(|m| m.row(i).to_vec()).collect())
            .collect();
        left_kernel(&self.ctx, &rows, n * mats.len())
    }

    /// An ordered basis `b_1, ..., b_n` with `(g-1) b_i ∈ span(b_1..b_{i-1})`.
    ///
    /// Each step takes the common fixed vectors of the action on `V/U`
    /// (with `U` the span so far) and keeps the first echelon basis vector
    /// outside `U`.
    pub fn triangulating_basis(&self) -> FlagBasis {
        let ctx = &self.ctx;
        let n = self.dim;
        let mats: Vec<SquareMatrix> = self.gens.iter().map(|g| g.minus_identity(ctx)).collect();
        let mut chosen: Vec<Row> = Vec::new();
        while chosen.len() < n {
            // Columns spanning the annihilator of U.
            let ann = if chosen.is_empty() {
                identity_rows(n)
            } else {
                right_kernel(ctx, &chosen, n)
            };
            let width = mats.len() * ann.len();
            let rows: Vec<Row> = (0..n)
                .map(|i| {
                    let mut r = Vec::with_capacity(width);
                    for m in &mats {
                        for q in &ann {
                            let mut s = FieldElement::ZERO;
                            for (k, &qk) in q.iter().enumerate() {
                                s = ctx.add(s, ctx.mul(m.get(i, k), qk));
                            }
                            r.push(s);
                        }
                    }
                    r
                })
                .collect();
            let kernel = left_kernel(ctx, &rows, width);
            let mut span = Echelon::new(ctx, n);
            for c in &chosen {
                span.insert(c.clone());
            }
            let next = kernel
                .into_iter()
                .find(|k| !span.contains(k))
                .expect("p-groups in characteristic p fix a vector of every quotient");
            chosen.push(next);
        }
        FlagBasis::new(ctx, chosen)
    }

    /// `{g : every row of (g-1) lies in W}`.
    pub fn pointwise_stabilizer(&self, w: &[Row]) -> PGroup {
        let ctx = &self.ctx;
        let mut span = Echelon::new(ctx, self.dim);
        for r in w {
            span.insert(r.clone());
        }
        let elems: Vec<SquareMatrix> = self
            .elements
            .iter()
            .filter(|g| {
                let d = g.minus_identity(ctx);
                (0..self.dim).all(|i| span.contains(d.row(i)))
            })
            .cloned()
            .collect();
        PGroup::from_elements(ctx, self.dim, &elems)
    }

    /// The group acting on `V*` in the reversed dual basis: if `e_1..e_n` is
    /// the basis of `V`, the dual basis is ordered `e_n*, ..., e_1*`.
    pub fn dual_group(&self) -> PGroup {
        let gens = self
            .gens
            .iter()
            .map(|g| dual_matrix(&self.ctx, g))
            .collect();
        PGroup::new(&self.ctx, self.dim, gens).expect("dual of a p-group")
    }

    /// The kernel `H` of the action on `V/Fv` and the induced faithful group
    /// on the quotient.
    pub fn quotient_action_kernel(&self, v: &[FieldElement]) -> Result<QuotientAction, GroupError> {
        let ctx = &self.ctx;
        let pivot = v
            .iter()
            .position(|x| !x.is_zero())
            .ok_or(GroupError::NotFixedVector)?;
        if self.gens.iter().any(|g| g.apply_row(ctx, v) != v) {
            return Err(GroupError::NotFixedVector);
        }
        let induced: Vec<SquareMatrix> = self
            .elements
            .iter()
            .map(|g| induced_matrix(ctx, g, v, pivot))
            .collect();
        let quot_gens = self
            .gens
            .iter()
            .map(|g| induced_matrix(ctx, g, v, pivot))
            .collect();
        let quotient = PGroup::new(ctx, self.dim - 1, quot_gens).expect("quotient of a p-group");
        let image_of = induced
            .iter()
            .map(|m| quotient.index_of(m).expect("induced element"))
            .collect();
        let kernel_elems: Vec<SquareMatrix> = self
            .elements
            .iter()
            .zip(&induced)
            .filter(|(_, m)| m.is_identity())
            .map(|(g, _)| g.clone())
            .collect();
        let kernel = PGroup::from_elements(ctx, self.dim, &kernel_elems);
        Ok(QuotientAction {
            kernel,
            quotient,
            image_of,
            pivot,
        })
    }

    /// All commutators `a b a⁻¹ b⁻¹` of elements, sorted and deduplicated.
    pub fn commutator_generators(&self) -> Vec<SquareMatrix> {
        let ctx = &self.ctx;
        let inverses: Vec<SquareMatrix> = self
            .elements
            .iter()
            .map(|g| g.inverse(ctx).expect("group element"))
            .collect();
        let mut out: Vec<SquareMatrix> = Vec::new();
        for (a, ai) in self.elements.iter().zip(&inverses) {
            for (b, bi) in self.elements.iter().zip(&inverses) {
                out.push(a.mul(ctx, b).mul(ctx, ai).mul(ctx, bi));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Conjugate group `B g B⁻¹` (the action written in the basis given by
    /// the rows of `B`).
    pub fn conjugate(&self, b: &SquareMatrix) -> PGroup {
        let ctx = &self.ctx;
        let binv = b.inverse(ctx).expect("invertible change of basis");
        let gens = self
            .gens
            .iter()
            .map(|g| b.mul(ctx, g).mul(ctx, &binv))
            .collect();
        PGroup::new(ctx, self.dim, gens).expect("conjugate of a p-group")
    }
}

#[derive(Clone, Debug)]
pub struct QuotientAction {
    /// Elements acting trivially on `V/Fv`.
    pub kernel: PGroup,
    /// The induced group on `V/Fv`, in the basis of standard vectors other
    /// than `pivot`.
    pub quotient: PGroup,
    /// `image_of[i]` is the index in `quotient` of the image of element `i`.
    pub image_of: Vec<usize>,
    /// First nonzero coordinate of `v`; that basis vector is dropped.
    pub pivot: usize,
}

/// Matrix of `g` on `V/Fv` using the standard basis vectors other than `pivot`.
pub fn induced_matrix(
    ctx: &FieldCtx,
    g: &SquareMatrix,
    v: &[FieldElement],
    pivot: usize,
) -> SquareMatrix {
    let n = g.dim();
    let inv = ctx.inv(v[pivot]).expect("pivot is nonzero");
    let keep: Vec<usize> = (0..n).filter(|&j| j != pivot).collect();
    let rows = keep
        .iter()
        .map(|&j| {
            let gp = ctx.mul(g.get(j, pivot), inv);
            keep.iter()
                .map(|&k| ctx.sub(g.get(j, k), ctx.mul(gp, v[k])))
                .collect()
        })
        .collect();
    SquareMatrix::from_rows(rows).expect("square")
}

/// `J (g⁻¹)ᵀ J` with `J` the order-reversing permutation.
pub fn dual_matrix(ctx: &FieldCtx, g: &SquareMatrix) -> SquareMatrix {
    let n = g.dim();
    let inv_t = g.inverse(ctx).expect("invertible").transpose();
    let mut out = SquareMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, inv_t.get(n - 1 - i, n - 1 - j));
        }
    }
    out
}

pub fn is_pseudo_reflection(ctx: &FieldCtx, g: &SquareMatrix) -> bool {
    g.minus_identity(ctx).rank(ctx) == 1
}

pub fn is_transvection(ctx: &FieldCtx, g: &SquareMatrix) -> bool {
    let d = g.minus_identity(ctx);
    d.rank(ctx) == 1 && d.mul(ctx, &d).is_zero()
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn identity_rows(n: usize) -> Vec<Row> {
    SquareMatrix::identity(n).rows()
}

/// An ordered basis triangulating a group action. The change-of-basis
/// matrix has the basis vectors as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagBasis {
    vectors: Vec<Row>,
    matrix: SquareMatrix,
    inverse: SquareMatrix,
}

impl FlagBasis {
    pub fn new(ctx: &FieldCtx, vectors: Vec<Row>) -> FlagBasis {
        let matrix = SquareMatrix::from_rows(vectors.clone()).expect("square basis");
        let inverse = matrix.inverse(ctx).expect("basis vectors are independent");
        FlagBasis {
            vectors,
            matrix,
            inverse,
        }
    }

    pub fn standard(n: usize) -> FlagBasis {
        let id = SquareMatrix::identity(n);
        FlagBasis {
            vectors: id.rows(),
            matrix: id.clone(),
            inverse: id,
        }
    }

    pub fn vectors(&self) -> &[Row] {
        &self.vectors
    }

    /// Rows are the basis vectors in old coordinates.
    pub fn change_of_basis(&self) -> &SquareMatrix {
        &self.matrix
    }

    /// `g` written in this basis: `B g B⁻¹`.
    pub fn conjugate(&self, ctx: &FieldCtx, g: &SquareMatrix) -> SquareMatrix {
        self.matrix.mul(ctx, g).mul(ctx, &self.inverse)
    }

    /// Whether `(g-1) b_i ∈ span(b_1..b_{i-1})` for the given matrix.
    pub fn triangulates(&self, ctx: &FieldCtx, g: &SquareMatrix) -> bool {
        let c = self.conjugate(ctx, g);
        let n = c.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let x = c.get(i, j);
                if i == j {
                    x.is_one()
                } else if j > i {
                    x.is_zero()
                } else {
                    true
                }
            })
        })
    }

    /// Rewrites a polynomial in basis coordinates as one in the original
    /// coordinates (variable `i` becomes the linear form `b_i`).
    pub fn to_original(&self, f: &Poly) -> Result<Poly, PolyError> {
        f.apply_matrix(&self.matrix)
    }

    /// Inverse of [`to_original`](Self::to_original).
    pub fn from_original(&self, f: &Poly) -> Result<Poly, PolyError> {
        f.apply_matrix(&self.inverse)
    }
}

/// Rank of the span of a list of vectors.
pub fn span_dim(ctx: &FieldCtx, vectors: &[Row], n: usize) -> usize {
    rank(ctx, vectors, n)
}
