//! Dense exact linear algebra over a [`FieldCtx`]: square matrices acting on
//! row vectors, and an incremental echelon form used for kernels and solves.

use crate::gf::{FieldCtx, FieldElement};

pub type Row = Vec<FieldElement>;

/// An `n × n` matrix stored row-major. Row `i` is the image of the `i`-th
/// basis vector; matrices act on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<FieldElement>,
}

impl SquareMatrix {
    pub fn identity(n: usize) -> SquareMatrix {
        let mut data = vec![FieldElement::ZERO; n * n];
        for i in 0..n {
            data[i * n + i] = FieldElement::ONE;
        }
        SquareMatrix { n, data }
    }

    pub fn zero(n: usize) -> SquareMatrix {
        SquareMatrix {
            n,
            data: vec![FieldElement::ZERO; n * n],
        }
    }

    /// Returns `None` unless every row has length `rows.len()`.
    pub fn from_rows(rows: Vec<Row>) -> Option<SquareMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(SquareMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.n + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Row> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                self.get(i, j)
                    == if i == j {
                        FieldElement::ONE
                    } else {
                        FieldElement::ZERO
                    }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = SquareMatrix::zero(n);
        for i in 0..n {
            let dst = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                ctx.axpy(dst, a, &other.data[k * n..(k + 1) * n]);
            }
        }
        out
    }

    pub fn add(&self, ctx: &FieldCtx, other: &SquareMatrix) -> SquareMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ctx.add(a, b))
            .collect();
        SquareMatrix { n: self.n, data }
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &SquareMatrix) -> SquareMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ctx.sub(a, b))
            .collect();
        SquareMatrix { n: self.n, data }
    }

    /// `self - 1`.
    pub fn minus_identity(&self, ctx: &FieldCtx) -> SquareMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            let d = out.get(i, i);
            out.set(i, i, ctx.sub(d, FieldElement::ONE));
        }
        out
    }

    pub fn transpose(&self) -> SquareMatrix {
        let n = self.n;
        let mut out = SquareMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(FieldElement) -> FieldElement) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn pow(&self, ctx: &FieldCtx, mut e: u64) -> SquareMatrix {
        let mut base = self.clone();
        let mut acc = SquareMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            base = base.mul(ctx, &base);
            e >>= 1;
        }
        acc
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        rank(ctx, &self.rows(), self.n)
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Option<SquareMatrix> {
        let n = self.n;
        // Row-reduce [A | I].
        let mut rows: Vec<Row> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        FieldElement::ONE
                    } else {
                        FieldElement::ZERO
                    }
                }));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, piv);
            let inv = ctx.inv(rows[col][col]).ok()?;
            ctx.scale(&mut rows[col], inv);
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let c = ctx.neg(row[col]);
                    ctx.axpy(row, c, &pivot_row);
                }
            }
        }
        let data = rows.into_iter().flat_map(|r| r[n..].to_vec()).collect();
        Some(SquareMatrix { n, data })
    }

    pub fn determinant(&self, ctx: &FieldCtx) -> FieldElement {
        let n = self.n;
        let mut rows = self.rows();
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return FieldElement::ZERO;
            };
            if piv != col {
                rows.swap(col, piv);
                det = ctx.neg(det);
            }
            let d = rows[col][col];
            det = ctx.mul(det, d);
            let inv = ctx.inv(d).expect("nonzero pivot");
            let pivot_row = rows[col].clone();
            for row in rows.iter_mut().skip(col + 1) {
                if !row[col].is_zero() {
                    let c = ctx.neg(ctx.mul(row[col], inv));
                    ctx.axpy(row, c, &pivot_row);
                }
            }
        }
        det
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, ctx: &FieldCtx, v: &[FieldElement]) -> Row {
        let mut out = vec![FieldElement::ZERO; self.n];
        for (i, &c) in v.iter().enumerate() {
            ctx.axpy(&mut out, c, self.row(i));
        }
        out
    }

    /// `[[a,b],[c,d]]` with entries in field syntax.
    pub fn format(&self, ctx: &FieldCtx) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let entries: Vec<String> = self.row(i).iter().map(|&x| ctx.format(x)).collect();
                format!("[{}]", entries.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Incremental semi-echelon form. Each stored row has a distinct pivot
/// column, normalized to 1, and is zero at the pivots of earlier rows.
/// Optional tags record every stored row as a combination of the inputs.
pub struct Echelon<'a> {
    ctx: &'a FieldCtx,
    width: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
    tags: Vec<Row>,
}

impl<'a> Echelon<'a> {
    pub fn new(ctx: &'a FieldCtx, width: usize) -> Echelon<'a> {
        Echelon {
            ctx,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            tags: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place against the stored rows.
    pub fn reduce(&self, v: &mut [FieldElement]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                self.ctx.axpy(&mut v[p..], self.ctx.neg(c), &row[p..]);
            }
        }
    }

    /// Like [`reduce`](Self::reduce), also applying the same operations to
    /// `tag` using the stored tags.
    pub fn reduce_tagged(&self, v: &mut [FieldElement], tag: &mut [FieldElement]) {
        for ((row, &p), t) in self.rows.iter().zip(&self.pivots).zip(&self.tags) {
            let c = v[p];
            if !c.is_zero() {
                let nc = self.ctx.neg(c);
                self.ctx.axpy(&mut v[p..], nc, &row[p..]);
                self.ctx.axpy(tag, nc, t);
            }
        }
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    fn push(&mut self, mut v: Row, mut tag: Option<Row>) -> bool {
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = self.ctx.inv(v[p]).expect("nonzero pivot");
        self.ctx.scale(&mut v[p..], inv);
        if let Some(t) = tag.as_mut() {
            self.ctx.scale(t, inv);
        }
        self.rows.push(v);
        self.pivots.push(p);
        if let Some(t) = tag {
            self.tags.push(t);
        }
        true
    }

    /// Adds `v` if it is independent of the stored rows.
    pub fn insert(&mut self, mut v: Row) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        self.push(v, None)
    }

    /// Adds `v` with its tag. If `v` is dependent, returns the reduced tag,
    /// a combination of inputs that vanishes.
    pub fn insert_tagged(&mut self, mut v: Row, mut tag: Row) -> Option<Row> {
        self.reduce_tagged(&mut v, &mut tag);
        if v.iter().all(|x| x.is_zero()) {
            Some(tag)
        } else {
            self.push(v, Some(tag));
            None
        }
    }

    /// Reduced row echelon form of the stored rows, ordered by pivot.
    pub fn into_rref(self) -> Vec<Row> {
        let ctx = self.ctx;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        let mut rows: Vec<Row> = {
            let mut taken: Vec<Option<Row>> = self.rows.into_iter().map(Some).collect();
            order.iter().map(|&i| taken[i].take().unwrap()).collect()
        };
        for i in (0..rows.len()).rev() {
            let p = pivots[i];
            let (before, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in before.iter_mut() {
                let c = row[p];
                if !c.is_zero() {
                    ctx.axpy(&mut row[p..], ctx.neg(c), &pivot_row[p..]);
                }
            }
        }
        rows
    }
}

pub fn rank(ctx: &FieldCtx, rows: &[Row], width: usize) -> usize {
    let mut e = Echelon::new(ctx, width);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

/// Reduced row echelon form of the span of `rows`, zero rows dropped.
pub fn rref(ctx: &FieldCtx, rows: &[Row], width: usize) -> Vec<Row> {
    let mut e = Echelon::new(ctx, width);
    for r in rows {
        e.insert(r.clone());
    }
    e.into_rref()
}

fn unit(len: usize, i: usize) -> Row {
    let mut t = vec![FieldElement::ZERO; len];
    t[i] = FieldElement::ONE;
    t
}

/// Basis (in reduced echelon form) of `{x : x · A = 0}` where `A` has the
/// given rows.
pub fn left_kernel(ctx: &FieldCtx, rows: &[Row], width: usize) -> Vec<Row> {
    let m = rows.len();
    let mut e = Echelon::new(ctx, width);
    let mut kernel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if let Some(k) = e.insert_tagged(r.clone(), unit(m, i)) {
            kernel.push(k);
        }
    }
    rref(ctx, &kernel, m)
}

/// Basis (in reduced echelon form) of `{y : A · yᵀ = 0}`.
pub fn right_kernel(ctx: &FieldCtx, rows: &[Row], width: usize) -> Vec<Row> {
    let cols: Vec<Row> = (0..width)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect();
    left_kernel(ctx, &cols, rows.len())
}

/// Some `x` with `x · A = target`, or `None` if `target` is not in the row space.
pub fn solve_left(ctx: &FieldCtx, rows: &[Row], target: &[FieldElement]) -> Option<Row> {
    let m = rows.len();
    let mut e = Echelon::new(ctx, target.len());
    for (i, r) in rows.iter().enumerate() {
        e.insert_tagged(r.clone(), unit(m, i));
    }
    let mut v = target.to_vec();
    let mut x = vec![FieldElement::ZERO; m];
    e.reduce_tagged(&mut v, &mut x);
    if v.iter().any(|c| !c.is_zero()) {
        return None;
    }
    // v = target - x·A = 0
    Some(x.into_iter().map(|c| ctx.neg(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldCtx {
        FieldCtx::prime(3).unwrap()
    }

    fn m(ctx: &FieldCtx, rows: &[&[i64]]) -> SquareMatrix {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ctx.from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn inverse_and_determinant() {
        let ctx = f3();
        let a = m(&ctx, &[&[1, 2, 0], &[0, 1, 1], &[2, 0, 1]]);
        let inv = a.inverse(&ctx).unwrap();
        assert!(a.mul(&ctx, &inv).is_identity());
        assert!(inv.mul(&ctx, &a).is_identity());
        // det by cofactor expansion: 1*(1-0) - 2*(0-2) + 0 = 5 = 2 mod 3
        assert_eq!(a.determinant(&ctx), ctx.from_int(2));
        let sing = m(&ctx, &[&[1, 2], &[2, 1]]);
        assert!(sing.inverse(&ctx).is_none());
        assert!(sing.determinant(&ctx).is_zero());
        assert_eq!(sing.rank(&ctx), 1);
    }

    #[test]
    fn kernel_and_solve() {
        let ctx = f3();
        let rows: Vec<Row> = vec![
            vec![ctx.from_int(1), ctx.from_int(0), ctx.from_int(1)],
            vec![ctx.from_int(0), ctx.from_int(1), ctx.from_int(1)],
            vec![ctx.from_int(1), ctx.from_int(1), ctx.from_int(2)],
        ];
        let k = left_kernel(&ctx, &rows, 3);
        assert_eq!(k.len(), 1);
        // row0 + row1 - row2 = 0
        assert_eq!(
            k[0],
            vec![ctx.from_int(1), ctx.from_int(1), ctx.from_int(2)]
        );
        let target = vec![ctx.from_int(2), ctx.from_int(1), ctx.from_int(0)];
        let x = solve_left(&ctx, &rows, &target).unwrap();
        let mut acc = vec![FieldElement::ZERO; 3];
        for (c, r) in x.iter().zip(&rows) {
            ctx.axpy(&mut acc, *c, r);
        }
        assert_eq!(acc, target);
        assert!(solve_left(
            &ctx,
            &rows,
            &[ctx.from_int(1), ctx.from_int(0), ctx.from_int(0)]
        )
        .is_none());
    }

    #[test]
    fn rref_is_canonical() {
        let ctx = f3();
        let a: Vec<Row> = vec![
            vec![ctx.from_int(2), ctx.from_int(1)],
            vec![ctx.from_int(1), ctx.from_int(1)],
        ];
        let r = rref(&ctx, &a, 2);
        assert_eq!(
            r,
            vec![vec![ctx.one(), ctx.zero()], vec![ctx.zero(), ctx.one()]]
        );
    }
}
