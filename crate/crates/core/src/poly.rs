//! Sparse multivariate polynomials over a finite field.
//!
//! Terms are kept in a sorted map under the graded-lex order: higher total
//! degree is larger, and within a degree the exponent vectors compare
//! lexicographically with variable 0 most significant.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;
use thiserror::Error;

use crate::gf::{FieldCtx, FieldElement};
use crate::linalg::SquareMatrix;

/// Largest total degree a polynomial may reach.
pub const MAX_DEGREE: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("degree exceeds the cap of {MAX_DEGREE}")]
    DegreeOverflow,
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

pub type Exps = SmallVec<[u32; 6]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Monomial {
        let degree = exps.iter().sum();
        Monomial {
            exps: exps.iter().copied().collect(),
            degree,
        }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    pub fn scale_exps(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
            degree: self.degree * k,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// All monomials of degree `d` in `n` variables, in descending graded-lex
/// order (so `[x², xy, y²]` for `n = 2, d = 2`).
pub fn graded_piece(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::new(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

/// Number of monomials of degree `d` in `n` variables.
pub fn piece_dim(n: usize, d: u32) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    // C(d + n - 1, n - 1)
    let k = (n - 1) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (d as u128 + k - i) / (i + 1);
    }
    acc as usize
}

#[derive(Clone)]
pub struct Poly {
    ctx: Arc<FieldCtx>,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && *self.ctx == *other.ctx && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format(&default_names(self.nvars)))
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

impl Poly {
    pub fn zero(ctx: &Arc<FieldCtx>, nvars: usize) -> Poly {
        Poly {
            ctx: ctx.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<FieldCtx>, nvars: usize, c: FieldElement) -> Poly {
        let mut p = Poly::zero(ctx, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(ctx: &Arc<FieldCtx>, nvars: usize) -> Poly {
        Poly::constant(ctx, nvars, FieldElement::ONE)
    }

    pub fn var(ctx: &Arc<FieldCtx>, nvars: usize, i: usize) -> Poly {
        Poly::term(ctx, Monomial::var(nvars, i), FieldElement::ONE)
    }

    pub fn term(ctx: &Arc<FieldCtx>, m: Monomial, c: FieldElement) -> Poly {
        let mut p = Poly::zero(ctx, m.nvars());
        p.add_term(m, c);
        p
    }

    /// The linear form `Σ coeffs[i] x_i`.
    pub fn linear(ctx: &Arc<FieldCtx>, coeffs: &[FieldElement]) -> Poly {
        let n = coeffs.len();
        let mut p = Poly::zero(ctx, n);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c);
        }
        p
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// The common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let lo = self.terms.keys().next()?.degree;
        let hi = self.terms.keys().next_back()?.degree;
        (lo == hi).then_some(lo)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.ctx.add(*e.get(), c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if self.nvars != other.nvars
            || (!Arc::ptr_eq(&self.ctx, &other.ctx) && *self.ctx != *other.ctx)
        {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), self.ctx.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(other)?;
        let (Some(a), Some(b)) = (self.degree(), other.degree()) else {
            return Ok(Poly::zero(&self.ctx, self.nvars));
        };
        if a as u64 + b as u64 > MAX_DEGREE {
            return Err(PolyError::DegreeOverflow);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let ctx = &self.ctx;
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Monomial, FieldElement> =
            HashMap::with_capacity(small.terms.len() * big.terms.len());
        for (m1, &c1) in &small.terms {
            for (m2, &c2) in &big.terms {
                let e = acc.entry(m1.mul(m2)).or_insert(FieldElement::ZERO);
                *e = ctx.add(*e, ctx.mul(c1, c2));
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Poly {
            ctx: ctx.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, &x)| (m.clone(), self.ctx.mul(x, c)))
            .collect();
        Poly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, &x)| (m.clone(), self.ctx.neg(x)))
            .collect();
        Poly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    /// `f^{p^e}`, computed termwise (the Frobenius is a ring endomorphism).
    pub fn frobenius_power(&self, e: u32) -> Result<Poly, PolyError> {
        let p = self.ctx.characteristic() as u64;
        let k = p
            .checked_pow(e)
            .filter(|&k| k <= MAX_DEGREE)
            .ok_or(PolyError::DegreeOverflow)?;
        if let Some(d) = self.degree() {
            if d as u64 * k > MAX_DEGREE {
                return Err(PolyError::DegreeOverflow);
            }
        }
        let steps = e % self.ctx.degree();
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let c = (0..steps).fold(c, |x, _| self.ctx.frobenius(x));
                (m.scale_exps(k as u32), c)
            })
            .collect();
        Ok(Poly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms,
        })
    }

    /// The `u` with `u^{p^e} = self`, if it exists: every exponent must be
    /// divisible by `p^e`.
    pub fn frobenius_root(&self, e: u32) -> Option<Poly> {
        let p = self.ctx.characteristic() as u64;
        let k = p.checked_pow(e)?;
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            if m.exps.iter().any(|&x| !(x as u64).is_multiple_of(k)) {
                return None;
            }
            let exps: Exps = m.exps.iter().map(|&x| (x as u64 / k) as u32).collect();
            terms.insert(
                Monomial {
                    degree: exps.iter().sum(),
                    exps,
                },
                self.ctx.pth_root_iter(c, e),
            );
        }
        Some(Poly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms,
        })
    }

    /// `f^e` by base-`p` digits: `f^e = Π (f^{p^i})^{d_i}`.
    pub fn pow(&self, e: u64) -> Result<Poly, PolyError> {
        if e == 0 {
            return Ok(Poly::one(&self.ctx, self.nvars));
        }
        let Some(d) = self.degree() else {
            return Ok(self.clone());
        };
        if (d as u64).checked_mul(e).is_none_or(|x| x > MAX_DEGREE) {
            return Err(PolyError::DegreeOverflow);
        }
        let p = self.ctx.characteristic() as u64;
        let mut acc = Poly::one(&self.ctx, self.nvars);
        let mut frob = self.clone();
        let mut rest = e;
        let mut first = true;
        while rest > 0 {
            if !first {
                frob = frob.frobenius_power(1)?;
            }
            first = false;
            let digit = rest % p;
            rest /= p;
            for _ in 0..digit {
                acc = acc.mul_unchecked(&frob);
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.ctx, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let factor = self.ctx.from_int(e as i64);
            if factor.is_zero() {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.add_term(
                Monomial {
                    exps,
                    degree: m.degree - 1,
                },
                self.ctx.mul(c, factor),
            );
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`. The images may live in a
    /// ring with a different number of variables.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::RingMismatch);
        }
        let target_n = images.first().map_or(0, |p| p.nvars);
        for img in images {
            if img.nvars != target_n || *img.ctx != *self.ctx {
                return Err(PolyError::RingMismatch);
            }
        }
        if let Some(d) = self.degree() {
            let max_img = images.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
            if d as u64 * max_img as u64 > MAX_DEGREE {
                return Err(PolyError::DegreeOverflow);
            }
        }
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(&self.ctx, target_n);
        for (m, &c) in &self.terms {
            let mut acc = Poly::constant(&self.ctx, target_n, c);
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 || acc.is_zero() {
                    continue;
                }
                let power = match cache.get(&(i, e)) {
                    Some(p) => p,
                    None => {
                        let p = images[i].pow(e as u64)?;
                        cache.entry((i, e)).or_insert(p)
                    }
                };
                acc = acc.mul_unchecked(power);
            }
            for (m2, c2) in acc.terms {
                out.add_term(m2, c2);
            }
        }
        Ok(out)
    }

    /// Image of `self` under the substitution `x_i ↦ Σ_j g_ij x_j`.
    ///
    /// With this convention `f.apply_matrix(h).apply_matrix(g) == f.apply_matrix(h·g)`.
    pub fn apply_matrix(&self, g: &SquareMatrix) -> Result<Poly, PolyError> {
        if g.dim() != self.nvars {
            return Err(PolyError::RingMismatch);
        }
        let images: Vec<Poly> = (0..self.nvars)
            .map(|i| Poly::linear(&self.ctx, g.row(i)))
            .collect();
        self.substitute(&images)
    }

    /// `g(f) - f`.
    pub fn delta(&self, g: &SquareMatrix) -> Result<Poly, PolyError> {
        self.apply_matrix(g)?.checked_sub(self)
    }

    /// Sets variable `i` to zero and drops it from the ring.
    pub fn quotient_mod_variable(&self, i: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            if m.exps[i] == 0 {
                let mut exps = m.exps.clone();
                exps.remove(i);
                terms.insert(
                    Monomial {
                        exps,
                        degree: m.degree,
                    },
                    c,
                );
            }
        }
        Poly {
            ctx: self.ctx.clone(),
            nvars: self.nvars - 1,
            terms,
        }
    }

    /// Inverse of [`quotient_mod_variable`](Self::quotient_mod_variable) on
    /// polynomials not involving the variable: inserts a new variable at index `i`.
    pub fn insert_variable(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut exps = m.exps.clone();
                exps.insert(i, 0);
                (
                    Monomial {
                        exps,
                        degree: m.degree,
                    },
                    c,
                )
            })
            .collect();
        Poly {
            ctx: self.ctx.clone(),
            nvars: self.nvars + 1,
            terms,
        }
    }

    /// Whether the polynomial involves variable `i`.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exps[i] > 0)
    }

    /// Whether every term is divisible by variable `i`.
    pub fn divisible_by_variable(&self, i: usize) -> bool {
        self.terms.keys().all(|m| m.exps[i] > 0)
    }

    /// Coefficient vector over a list of monomials (missing terms are zero).
    pub fn dense(&self, index: &HashMap<Monomial, usize>, len: usize) -> Option<Vec<FieldElement>> {
        let mut v = vec![FieldElement::ZERO; len];
        for (m, &c) in &self.terms {
            v[*index.get(m)?] = c;
        }
        Some(v)
    }

    pub fn from_dense(
        ctx: &Arc<FieldCtx>,
        nvars: usize,
        monomials: &[Monomial],
        v: &[FieldElement],
    ) -> Poly {
        let mut p = Poly::zero(ctx, nvars);
        for (m, &c) in monomials.iter().zip(v) {
            if !c.is_zero() {
                p.terms.insert(m.clone(), c);
            }
        }
        p
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            Some((_, &c)) => self.scale(self.ctx.inv(c).expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Text form using the given variable names, terms in descending order.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, &c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            let cs = self.ctx.format(c);
            let coeff = if cs.contains('+') {
                format!("({cs})")
            } else {
                cs
            };
            let s = if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", coeff, mono.join("*"))
            };
            parts.push(s);
        }
        parts.join(" + ")
    }

    /// Parses the text form: `+`/`-` separated terms, `*` products, `^`
    /// powers, parentheses, integer coefficients, `t` for the generator of
    /// an extension field (unless `t` is a variable name).
    pub fn parse(ctx: &Arc<FieldCtx>, names: &[String], input: &str) -> Result<Poly, PolyError> {
        let tokens = tokenize(input).map_err(|reason| PolyError::Parse {
            input: input.into(),
            reason,
        })?;
        let mut parser = Parser {
            ctx,
            names,
            tokens,
            pos: 0,
        };
        let p = parser.expr().map_err(|reason| PolyError::Parse {
            input: input.into(),
            reason,
        })?;
        if parser.pos != parser.tokens.len() {
            return Err(PolyError::Parse {
                input: input.into(),
                reason: "unexpected trailing input".into(),
            });
        }
        Ok(p)
    }
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("ring mismatch or degree overflow")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

/// Determinant of the Jacobian matrix `∂f_i/∂x_j`.
pub fn jacobian_det(fs: &[Poly]) -> Result<Poly, PolyError> {
    let Some(first) = fs.first() else {
        return Err(PolyError::RingMismatch);
    };
    let n = first.nvars;
    if fs.len() != n || fs.iter().any(|f| f.nvars != n || *f.ctx != *first.ctx) {
        return Err(PolyError::RingMismatch);
    }
    let jac: Vec<Vec<Poly>> = fs
        .iter()
        .map(|f| (0..n).map(|j| f.derivative(j)).collect())
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(det_rec(&jac, 0, &cols, first))
}

fn det_rec(m: &[Vec<Poly>], row: usize, cols: &[usize], proto: &Poly) -> Poly {
    if cols.is_empty() {
        return Poly::one(&proto.ctx, proto.nvars);
    }
    let mut acc = Poly::zero(&proto.ctx, proto.nvars);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, row + 1, &rest, proto);
        let term = m[row][c].mul_unchecked(&minor);
        acc = if k % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u128),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(
                    text.parse()
                        .map_err(|_| format!("number too large: {text}"))?,
                ));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Arc<FieldCtx>,
    names: &'a [String],
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly, String> {
        let n = self.names.len();
        let mut acc = Poly::zero(self.ctx, n);
        let mut sign_neg = false;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign_neg = !sign_neg;
                }
                _ => {}
            }
            let t = self.term()?;
            acc = if sign_neg { &acc - &t } else { &acc + &t };
            sign_neg = false;
            match self.peek() {
                Some(Tok::Plus) | Some(Tok::Minus) => continue,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.checked_mul(&f).map_err(|e| e.to_string())?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, String> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Tok::Num(e)) => {
                    let e = *e;
                    self.pos += 1;
                    if e > MAX_DEGREE as u128 {
                        return Err("exponent too large".into());
                    }
                    return base.pow(e as u64).map_err(|e| e.to_string());
                }
                _ => return Err("expected exponent after `^`".into()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, String> {
        let n = self.names.len();
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(x)) => {
                self.pos += 1;
                let p = self.ctx.characteristic() as u128;
                Ok(Poly::constant(
                    self.ctx,
                    n,
                    self.ctx.from_int((x % p) as i64),
                ))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.names.iter().position(|x| *x == name) {
                    Ok(Poly::var(self.ctx, n, i))
                } else if name == "t" {
                    let t = self
                        .ctx
                        .generator()
                        .ok_or("`t` is not defined over a prime field")?;
                    Ok(Poly::constant(self.ctx, n, t))
                } else {
                    Err(format!("unknown variable `{name}`"))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err("missing `)`".into());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}
