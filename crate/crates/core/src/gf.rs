//! Exact arithmetic in prime fields `F_p` and their extensions `F_{p^k}`.
//!
//! An element is stored as its coordinate vector in the power basis
//! `1, t, ..., t^{k-1}` of the defining modulus, packed base `p` into a
//! single machine word. Elements carry no reference to their field; every
//! operation goes through a [`FieldCtx`].

use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

/// Largest characteristic supported; keeps `Z/p` products inside `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 16;

/// Extensions up to this order get log/exp tables.
const TABLE_LIMIT: u64 = 1 << 16;
/// Extensions up to this order additionally get a full addition table.
const ADD_TABLE_LIMIT: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic {0} is too large (must be below 65536)")]
    CharacteristicTooLarge(u64),
    #[error("modulus must be monic of degree at least 2")]
    BadModulus,
    #[error("modulus {0} is reducible over F_{1}")]
    ReducibleModulus(String, u32),
    #[error("F_{p}^{k} does not fit in a 64-bit word")]
    TooLarge { p: u32, k: u32 },
    #[error("division by zero")]
    DivideByZero,
    #[error("element does not belong to this field")]
    ContextMismatch,
    #[error("cannot parse field element `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// An element of `F_{p^k}`: its coordinates in the power basis, packed base `p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    /// Index of the element in `0..q`; the base-`p` digits are the coordinates.
    #[inline]
    pub fn index(self) -> u64 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug)]
struct Tables {
    /// `exp[i] = g^i`, stored twice over so that `log a + log b` never wraps.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// A finite field `F_p` or `F_p[t]/(modulus)`.
#[derive(Debug)]
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u64,
    /// Low-to-high coefficients, monic, length `k + 1`. Empty for prime fields.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

type Digits = SmallVec<[u32; 8]>;

impl FieldCtx {
    /// Builds `F_p` (no modulus) or `F_p[t]/(modulus)`. The modulus is given
    /// low-to-high and must be monic and irreducible.
    pub fn new(p: u64, modulus: Option<&[u64]>) -> Result<FieldCtx, FieldError> {
        if p >= MAX_CHARACTERISTIC {
            return Err(FieldError::CharacteristicTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        let p32 = p as u32;
        let Some(modulus) = modulus else {
            return Ok(FieldCtx {
                p: p32,
                k: 1,
                q: p,
                modulus: Vec::new(),
                tables: None,
            });
        };
        let m: Vec<u32> = modulus.iter().map(|&c| (c % p) as u32).collect();
        let mut m = m;
        while m.len() > 1 && *m.last().unwrap() == 0 {
            m.pop();
        }
        if m.len() < 3 || *m.last().unwrap() != 1 {
            return Err(FieldError::BadModulus);
        }
        let k = (m.len() - 1) as u32;
        let q = p.checked_pow(k).ok_or(FieldError::TooLarge { p: p32, k })?;
        if !upoly::is_irreducible(&m, p32) {
            return Err(FieldError::ReducibleModulus(format_t_poly(&m), p32));
        }
        let mut ctx = FieldCtx {
            p: p32,
            k,
            q,
            modulus: m,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    /// Convenience constructor for prime fields.
    pub fn prime(p: u64) -> Result<FieldCtx, FieldError> {
        FieldCtx::new(p, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    /// Monic modulus, low-to-high; `None` for a prime field.
    pub fn modulus(&self) -> Option<&[u32]> {
        (self.k > 1).then_some(&self.modulus[..])
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of `t` in an extension field.
    pub fn generator(&self) -> Option<FieldElement> {
        (self.k > 1).then_some(FieldElement(self.p as u64))
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u64)
    }

    /// Builds an element from power-basis coordinates, validating them.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::ContextMismatch);
        }
        Ok(self.pack(coeffs))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut d = self.unpack(a);
        d.resize(self.k as usize, 0);
        d.into_vec()
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.q
    }

    /// Whether `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: FieldElement) -> bool {
        a.0 < self.p as u64
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    fn unpack(&self, a: FieldElement) -> Digits {
        let mut out = Digits::new();
        let mut x = a.0;
        let p = self.p as u64;
        while x > 0 {
            out.push((x % p) as u32);
            x /= p;
        }
        out
    }

    #[inline]
    fn pack(&self, digits: &[u32]) -> FieldElement {
        let p = self.p as u64;
        FieldElement(digits.iter().rev().fold(0u64, |acc, &d| acc * p + d as u64))
    }

    /// Checked binary operation; validates both operands belong to this field.
    pub fn arith(
        &self,
        a: FieldElement,
        b: FieldElement,
        op: ArithOp,
    ) -> Result<FieldElement, FieldError> {
        if !self.contains(a) || !self.contains(b) {
            return Err(FieldError::ContextMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            let s = a.0 + b.0;
            let p = self.p as u64;
            FieldElement(if s >= p { s - p } else { s })
        } else if self.p == 2 {
            FieldElement(a.0 ^ b.0)
        } else if let Some(add) = self.tables.as_ref().and_then(|t| t.add.as_ref()) {
            FieldElement(add[(a.0 * self.q + b.0) as usize] as u64)
        } else {
            self.add_digits(a, b)
        }
    }

    fn add_digits(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut scale = 1u64;
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * scale;
            x /= p;
            y /= p;
            scale = scale.wrapping_mul(p);
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 || self.p == 2 {
            a
        } else if self.k == 1 {
            FieldElement(self.p as u64 - a.0)
        } else if let Some(t) = &self.tables {
            FieldElement(t.neg[a.0 as usize] as u64)
        } else {
            let d: Digits = self
                .unpack(a)
                .iter()
                .map(|&c| (self.p - c) % self.p)
                .collect();
            self.pack(&d)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            FieldElement(a.0 * b.0 % self.p as u64)
        } else if a.0 == 0 || b.0 == 0 {
            FieldElement::ZERO
        } else if let Some(t) = &self.tables {
            FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize] as u64)
        } else {
            self.mul_digits(a, b)
        }
    }

    /// Schoolbook product of the coordinate polynomials reduced by the modulus.
    fn mul_digits(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        let da = self.unpack(a);
        let db = self.unpack(b);
        let mut prod = vec![0u64; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let k = self.k as usize;
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        prod.truncate(k);
        let d: Digits = prod.iter().map(|&c| c as u32).collect();
        self.pack(&d)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivideByZero);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64;
            let order = self.q - 1;
            return Ok(FieldElement(t.exp[((order - l) % order) as usize] as u64));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a ↦ a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// The unique `b` with `b^p = a`, computed as `a^{p^{k-1}}`.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        (1..self.k).fold(a, |x, _| self.frobenius(x))
    }

    /// The unique `b` with `b^{p^e} = a`.
    pub fn pth_root_iter(&self, a: FieldElement, e: u32) -> FieldElement {
        // Frobenius has order k on F_{p^k}.
        let steps = e % self.k;
        (0..steps).fold(a, |x, _| self.pth_root(x))
    }

    /// `dst += a * src`, elementwise.
    pub fn axpy(&self, dst: &mut [FieldElement], a: FieldElement, src: &[FieldElement]) {
        debug_assert_eq!(dst.len(), src.len());
        if a.is_zero() {
            return;
        }
        if self.k == 1 {
            let p = self.p as u64;
            if p == 2 {
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 ^= s.0;
                }
            } else {
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 = (d.0 + a.0 * s.0) % p;
                }
            }
        } else if let Some(t) = &self.tables {
            let la = t.log[a.0 as usize] as usize;
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    let prod = FieldElement(t.exp[la + t.log[s.0 as usize] as usize] as u64);
                    *d = self.add(*d, prod);
                }
            }
        } else {
            for (d, s) in dst.iter_mut().zip(src) {
                *d = self.add(*d, self.mul(a, *s));
            }
        }
    }

    pub fn scale(&self, row: &mut [FieldElement], a: FieldElement) {
        for x in row.iter_mut() {
            *x = self.mul(*x, a);
        }
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let order = self.q - 1;
        let factors = prime_factors(order);
        let gen = (2..self.q)
            .map(FieldElement)
            .find(|&c| {
                factors
                    .iter()
                    .all(|&r| self.slow_pow(c, order / r) != FieldElement::ONE)
            })
            .unwrap_or(FieldElement::ONE);
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; q];
        let mut x = FieldElement::ONE;
        for i in 0..order {
            exp.push(x.0 as u32);
            log[x.0 as usize] = i as u32;
            x = self.mul_digits(x, gen);
        }
        exp.extend_from_within(..);
        let neg = (0..self.q)
            .map(|a| {
                let d: Digits = self
                    .unpack(FieldElement(a))
                    .iter()
                    .map(|&c| (self.p - c) % self.p)
                    .collect();
                self.pack(&d).0 as u32
            })
            .collect();
        let add = (self.q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; q * q];
            for a in 0..self.q {
                for b in 0..self.q {
                    t[(a * self.q + b) as usize] =
                        self.add_digits(FieldElement(a), FieldElement(b)).0 as u32;
                }
            }
            t
        });
        Tables { exp, log, neg, add }
    }

    fn slow_pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_digits(acc, base);
            }
            base = self.mul_digits(base, base);
            e >>= 1;
        }
        acc
    }

    /// Canonical text form: `0`, `2`, `t+1`, `2*t^2+t`.
    pub fn format(&self, a: FieldElement) -> String {
        let d = self.unpack(a);
        if d.is_empty() {
            return "0".to_string();
        }
        format_t_poly(&d)
    }

    /// Parses an element written as a polynomial in `t` with integer
    /// coefficients, e.g. `2*t+2`, `-t`, `t^2+1`. Powers of `t` are reduced
    /// by the modulus.
    pub fn parse(&self, input: &str) -> Result<FieldElement, FieldError> {
        let err = |reason: &str| FieldError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        while s.starts_with('(') && s.ends_with(')') && balanced(&s[1..s.len() - 1]) {
            s = s[1..s.len() - 1].to_string();
        }
        if s.is_empty() {
            return Err(err("empty"));
        }
        let p = self.p as u64;
        // Coefficients of the integer polynomial in t, reduced mod p.
        let mut poly: Vec<u64> = Vec::new();
        for (sign, term) in split_signed_terms(&s).map_err(|r| err(&r))? {
            let mut coeff: u64 = 1;
            let mut power: u64 = 0;
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix('t') {
                    if self.k == 1 {
                        return Err(err("`t` is not defined over a prime field"));
                    }
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|x| x.parse::<u64>().ok())
                            .ok_or_else(|| err("bad exponent"))?
                    };
                    power += e;
                } else {
                    let n: u128 = factor.parse().map_err(|_| err("expected integer or `t`"))?;
                    coeff = coeff * (n % p as u128) as u64 % p;
                }
            }
            if power > 4096 {
                return Err(err("exponent too large"));
            }
            let power = power as usize;
            if poly.len() <= power {
                poly.resize(power + 1, 0);
            }
            let c = if sign < 0 { (p - coeff) % p } else { coeff };
            poly[power] = (poly[power] + c) % p;
        }
        // Evaluate at t by Horner in the field.
        let t = self.generator().unwrap_or(FieldElement::ZERO);
        let mut acc = FieldElement::ZERO;
        for &c in poly.iter().rev() {
            acc = self.add(self.mul(acc, t), FieldElement(c));
        }
        Ok(acc)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}[t]/({})", self.p, format_t_poly(&self.modulus))
        }
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

/// Splits `a-b+c` into signed terms at top-level `+`/`-`.
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(i32, &str)>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut sign = 1i32;
    let bytes = s.as_bytes();
    let mut prev: Option<u8> = None;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && prev != Some(b'^') => {
                let term = &s[start..i];
                if term.is_empty() {
                    if i != 0 && !matches!(prev, Some(b'+') | Some(b'-')) {
                        return Err("dangling operator".into());
                    }
                    if b == b'-' {
                        sign = -sign;
                    }
                } else {
                    out.push((sign, term));
                    sign = if b == b'-' { -1 } else { 1 };
                }
                start = i + 1;
            }
            _ => {}
        }
        prev = Some(b);
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    let last = &s[start..];
    if last.is_empty() {
        return Err("trailing operator".into());
    }
    out.push((sign, last));
    Ok(out)
}

fn format_t_poly(digits: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &d) in digits.iter().enumerate().rev() {
        if d == 0 {
            continue;
        }
        let s = match (i, d) {
            (0, _) => d.to_string(),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{d}*t"),
            (_, 1) => format!("t^{i}"),
            _ => format!("{d}*t^{i}"),
        };
        parts.push(s);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense univariate polynomials over `Z/p`, low-to-high, used for the
/// irreducibility test of the modulus.
mod upoly {
    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while r.len() > df {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            for (i, &fi) in f.iter().enumerate() {
                let idx = top - df + i;
                r[idx] = (r[idx] + (p - c) * fi) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, f, p)
    }

    fn powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's test: `f` of degree `k` is irreducible iff `t^{p^k} ≡ t` and
    /// `gcd(t^{p^{k/r}} - t, f) = 1` for every prime `r | k`.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let p = p as u64;
        let f: Vec<u64> = f.iter().map(|&c| c as u64).collect();
        let k = f.len() - 1;
        let x = vec![0u64, 1];
        // frob[i] = t^{p^i} mod f
        let mut frob = vec![rem(&x, &f, p)];
        for i in 1..=k {
            let next = powmod(&frob[i - 1], p, &f, p);
            frob.push(next);
        }
        let sub_x = |a: &[u64]| {
            let mut d = a.to_vec();
            if d.len() < 2 {
                d.resize(2, 0);
            }
            d[1] = (d[1] + p - 1) % p;
            trim(&mut d);
            d
        };
        if !sub_x(&frob[k]).is_empty() {
            return false;
        }
        let mut r = 2;
        let mut kk = k;
        while kk > 1 {
            if kk.is_multiple_of(r) {
                let g = gcd(&sub_x(&frob[k / r]), &f, p);
                if g.len() != 1 {
                    return false;
                }
                while kk.is_multiple_of(r) {
                    kk /= r;
                }
            }
            r += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldCtx {
        FieldCtx::new(2, Some(&[1, 1, 1])).unwrap()
    }

    fn small_fields() -> Vec<FieldCtx> {
        vec![
            FieldCtx::prime(2).unwrap(),
            FieldCtx::prime(3).unwrap(),
            f4(),
            FieldCtx::new(3, Some(&[1, 0, 1])).unwrap(),
            FieldCtx::new(2, Some(&[1, 1, 0, 1])).unwrap(),
        ]
    }

    #[test]
    fn construction_examples() {
        let f = f4();
        assert_eq!(f.order(), 4);
        assert_eq!(FieldCtx::prime(3).unwrap().order(), 3);
        assert!(matches!(
            FieldCtx::new(2, Some(&[0, 0, 1])),
            Err(FieldError::ReducibleModulus(..))
        ));
        assert!(matches!(FieldCtx::prime(4), Err(FieldError::NonPrime(4))));
        assert!(matches!(
            FieldCtx::new(3, Some(&[2, 0, 1])),
            Err(FieldError::ReducibleModulus(..))
        ));
        assert!(matches!(
            FieldCtx::new(3, Some(&[1, 2])),
            Err(FieldError::BadModulus)
        ));
        assert!(matches!(
            FieldCtx::prime(65537),
            Err(FieldError::CharacteristicTooLarge(_))
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let f = f4();
        let t = f.generator().unwrap();
        let t1 = f.add(t, f.one());
        assert_eq!(f.mul(t, t), t1);
        assert_eq!(f.mul(t1, t), f.one());
        assert_eq!(f.div(f.one(), t).unwrap(), t1);
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(f3.add(f3.from_int(2), f3.from_int(2)), f3.from_int(1));
        assert_eq!(f.div(t, f.zero()), Err(FieldError::DivideByZero));
        assert_eq!(
            f.arith(FieldElement(7), t, ArithOp::Add),
            Err(FieldError::ContextMismatch)
        );
    }

    #[test]
    fn pth_root_examples() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(f2.pth_root(f2.one()), f2.one());
        let f = f4();
        let t = f.generator().unwrap();
        // Oracle: square every element and invert the table.
        let root = f.elements().find(|&b| f.mul(b, b) == t).unwrap();
        assert_eq!(f.pth_root(t), root);
        assert_eq!(f.format(root), "t+1");
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(f3.pth_root(f3.from_int(2)), f3.from_int(2));
    }

    #[test]
    fn exhaustive_field_laws() {
        for f in small_fields() {
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                let r = f.pth_root(a);
                assert_eq!(f.pow(r, f.characteristic() as u64), a, "{f}");
                for &b in &els {
                    assert_eq!(
                        f.frobenius(f.add(a, b)),
                        f.add(f.frobenius(a), f.frobenius(b))
                    );
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    if !a.is_zero() {
                        assert_eq!(f.div(f.mul(a, b), a).unwrap(), b);
                    }
                }
            }
        }
    }

    #[test]
    fn table_and_schoolbook_agree() {
        // F_{3^3} has tables; compare with the digit-level product.
        let f = FieldCtx::new(3, Some(&[1, 2, 0, 1])).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_digits(a, b));
                assert_eq!(f.add(a, b), f.add_digits(a, b));
            }
        }
    }

    #[test]
    fn large_extension_without_tables() {
        // F_{p^4} with p = 257 exceeds the table limit.
        let f = FieldCtx::new(257, Some(&[3, 0, 0, 0, 1])).unwrap();
        assert!(f.tables.is_none());
        let a = f.element(&[5, 7, 0, 11]).unwrap();
        let b = f.element(&[1, 0, 200, 3]).unwrap();
        assert_eq!(f.div(f.mul(a, b), a).unwrap(), b);
        assert_eq!(f.pow(f.pth_root(a), 257), a);
    }

    #[test]
    fn parse_and_format() {
        let f = f4();
        for a in f.elements() {
            assert_eq!(f.parse(&f.format(a)).unwrap(), a);
        }
        let t = f.generator().unwrap();
        assert_eq!(f.parse("t^2").unwrap(), f.add(t, f.one()));
        assert_eq!(f.parse("-t").unwrap(), t);
        let f9 = FieldCtx::new(3, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.format(f9.parse("-1").unwrap()), "2");
        assert_eq!(f9.format(f9.parse("2*t+2").unwrap()), "2*t+2");
        assert_eq!(f9.format(f9.parse("-t+4").unwrap()), "2*t+1");
        assert_eq!(f9.format(f9.parse("(t+1)").unwrap()), "t+1");
        assert!(FieldCtx::prime(3).unwrap().parse("t").is_err());
        assert!(f9.parse("2*").is_err());
        assert!(f9.parse("").is_err());
    }
}
