use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::exactla::Fp;

/// Upper bound on the number of variables; exponents are packed per slot.
pub const MAX_VARS: usize = 8;

/// A monomial in at most [`MAX_VARS`] variables.
///
/// `Ord` is degrevlex: higher total degree is larger, ties are broken by the
/// last variable, where the smaller exponent wins.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
    };

    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent overflow");
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        m
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps) {
            *a = a.checked_sub(b)?;
        }
        Some(m)
    }

    /// All monomials of degree `d` in `n` variables, largest first.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = [0u32; MAX_VARS];
        fill(n, 0, d, &mut exps, &mut out);
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn display(&self, vars: &[String]) -> String {
        let mut s = String::new();
        for (i, v) in vars.iter().enumerate() {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(v);
            if e > 1 {
                s.push('^');
                s.push_str(&e.to_string());
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

fn fill(n: usize, i: usize, left: u32, exps: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
    if n == 0 {
        if left == 0 {
            out.push(Monomial::ONE);
        }
        return;
    }
    if i == n - 1 {
        exps[i] = left;
        out.push(Monomial::new(&exps[..n]));
        exps[i] = 0;
        return;
    }
    for e in 0..=left {
        exps[i] = e;
        fill(n, i + 1, left - e, exps, out);
    }
    exps[i] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:?}", self.exps)
    }
}

/// A sparse polynomial: terms sorted by decreasing monomial, no zero
/// coefficients. Arithmetic takes the field explicitly.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: u32) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly {
                terms: alloc::vec![(m, c)],
            }
        }
    }

    /// Wraps terms already sorted largest first with nonzero coefficients.
    pub fn from_sorted_terms(terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Poly { terms }
    }

    /// Builds from unsorted terms, combining duplicates.
    pub fn from_terms(field: Fp, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c % field.p());
        }
        let terms = acc.into_iter().rev().filter(|&(_, c)| c != 0).collect();
        Poly { terms }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Common degree of all terms, `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if *m == Monomial::ONE => *c,
            _ => 0,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Poly, field: Fp) -> Poly {
        self.add_scaled(other, 1, field)
    }

    pub fn sub(&self, other: &Poly, field: Fp) -> Poly {
        self.add_scaled(other, field.p() - 1, field)
    }

    pub fn neg(&self, field: Fp) -> Poly {
        Poly {
            terms: self.terms.iter().map(|&(m, c)| (m, field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: u32, field: Fp) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|&(m, a)| (m, field.mul(a, c)))
                .collect(),
        }
    }

    /// `self + c * other`, by merging the sorted term lists.
    pub fn add_scaled(&self, other: &Poly, c: u32, field: Fp) -> Poly {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, field.mul(b[j].1, c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = field.mul_add(b[j].1, c, a[i].1);
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn add_assign_scaled(&mut self, other: &Poly, c: u32, field: Fp) {
        if c == 0 || other.is_zero() {
            return;
        }
        *self = self.add_scaled(other, c, field);
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32, field: Fp) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        // multiplication by a monomial preserves degrevlex order
        Poly {
            terms: self
                .terms
                .iter()
                .map(|&(t, a)| (t.mul(m), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly, field: Fp) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = other.terms[0];
            return self.mul_monomial(&m, c, field);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms[0];
            return other.mul_monomial(&m, c, field);
        }
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for &(m1, c1) in &self.terms {
            for &(m2, c2) in &other.terms {
                let e = acc.entry(m1.mul(&m2)).or_insert(0);
                *e = field.mul_add(c1, c2, *e);
            }
        }
        Poly {
            terms: acc.into_iter().rev().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn pow(&self, e: u32, field: Fp) -> Poly {
        let mut r = Poly::constant(1);
        for _ in 0..e {
            r = r.mul(self, field);
        }
        r
    }

    pub fn display(&self, vars: &[String], field: Fp) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let sc = field.to_signed(*c);
            if k > 0 {
                s.push_str(if sc < 0 { "-" } else { "+" });
            } else if sc < 0 {
                s.push('-');
            }
            let abs = sc.unsigned_abs();
            let mono = m.display(vars);
            if *m == Monomial::ONE {
                s.push_str(&abs.to_string());
            } else if abs == 1 {
                s.push_str(&mono);
            } else {
                s.push_str(&abs.to_string());
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

/// A parse failure with its byte offset.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected {found} at position {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("number too large at position {pos}")]
    Overflow { pos: usize },
}

/// Parses signed integer coefficients, `*`, `^`, `+`, `-` and variable names.
/// Whitespace is ignored.
pub fn parse_poly(text: &str, vars: &[String], field: Fp) -> Result<Poly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        field,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected());
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
    field: Fp,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        let found = match self.src.get(self.pos) {
            Some(&b) => alloc::format!("`{}`", b as char),
            None => "end of input".to_string(),
        };
        ParseError::Unexpected {
            pos: self.pos,
            found,
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let f = self.field;
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    f.p() - 1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = acc.add_scaled(&t, sign, f);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let fac = self.factor()?;
            acc = acc.mul(&fac, self.field);
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or(ParseError::Overflow { pos: start })?;
            self.pos += 1;
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let f = self.field;
        let base = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let v = self.number()?;
                Poly::constant(f.from_i64((v % f.p() as u64) as i64))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while let Some(&c) = self.src.get(self.pos) {
                    if c.is_ascii_alphanumeric() || c == b'_' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                let i = self.vars.iter().position(|v| v == name).ok_or_else(|| {
                    ParseError::UnknownVariable {
                        pos: start,
                        name: name.to_string(),
                    }
                })?;
                Poly::monomial(Monomial::var(i), 1)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.unexpected()),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            if !matches!(self.src.get(self.pos), Some(b) if b.is_ascii_digit()) {
                return Err(self.unexpected());
            }
            let start = self.pos;
            let e = self.number()?;
            let e = u32::try_from(e)
                .ok()
                .filter(|&e| e < 256)
                .ok_or(ParseError::Overflow { pos: start })?;
            return Ok(base.pow(e, f));
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn xyz() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn degrevlex_order() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let z = Monomial::var(2);
        assert!(x > y && y > z);
        let xz = x.mul(&z);
        let yy = y.mul(&y);
        assert!(yy > xz);
        assert!(x.mul(&x) > x.mul(&y));
        let all = Monomial::all_of_degree(3, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], x.mul(&x));
        assert_eq!(all[5], z.mul(&z));
    }

    #[test]
    fn parse_single_power() {
        let f = Fp::new(32003);
        let p = parse_poly("x^2", &xyz(), f).unwrap();
        assert_eq!(p.terms(), &[(Monomial::new(&[2, 0, 0]), 1)]);
    }

    #[test]
    fn parse_two_terms() {
        let f = Fp::new(32003);
        let p = parse_poly("x*y+z^2", &xyz(), f).unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.homogeneous_degree(), Some(2));
    }

    #[test]
    fn parse_negative_over_f7() {
        let f = Fp::new(7);
        let p = parse_poly("-y*z", &xyz(), f).unwrap();
        assert_eq!(p.terms(), &[(Monomial::new(&[0, 1, 1]), 6)]);
    }

    #[test]
    fn parse_errors() {
        let f = Fp::new(7);
        assert!(matches!(
            parse_poly("x+w", &xyz(), f),
            Err(ParseError::UnknownVariable { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x+*y", &xyz(), f),
            Err(ParseError::Unexpected { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x^", &xyz(), f),
            Err(ParseError::Unexpected { .. })
        ));
    }

    #[test]
    fn display_roundtrip() {
        let f = Fp::new(101);
        let p = parse_poly("3*x^2*y - y*z + 5", &xyz(), f).unwrap();
        let s = p.display(&xyz(), f);
        assert_eq!(parse_poly(&s, &xyz(), f).unwrap(), p);
    }
}
