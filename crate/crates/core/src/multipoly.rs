//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Every polynomial carries a shared [`VariableContext`], the ordered list of
//! variable names its exponent vectors refer to. Terms are kept in a
//! `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded lexicographic
//! (total degree first, then `x1 < x2 < ... < y1 < ...`), so iteration order
//! is canonical and identical across runs.
//!
//! Exponents are signed so the Ω module can carry Laurent monomials in its
//! elimination variables; everywhere else they stay nonnegative.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Shared handle to a variable context.
pub type Ctx = Arc<VariableContext>;

/// Ordered, duplicate-free list of variable names.
///
/// Contexts whose names are exactly `x1..xk, y1..yk` print their monomials in
/// the interleaved order `x1, y1, x2, y2, ...`; all other contexts print in
/// storage order. The print order is a function of the names, so two
/// contexts are equal iff their names are.
#[derive(Debug, Clone)]
pub struct VariableContext {
    names: Vec<String>,
    display: Vec<usize>,
}

impl PartialEq for VariableContext {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VariableContext {}

impl VariableContext {
    pub fn new<I, S>(names: I) -> Result<Ctx>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        let display = interleaved_display(&names).unwrap_or_else(|| (0..names.len()).collect());
        Ok(Arc::new(VariableContext { names, display }))
    }

    /// The `2k`-variable context `x1, ..., xk, y1, ..., yk`.
    pub fn plane_partition(k: usize) -> Ctx {
        let names = (1..=k)
            .map(|i| format!("x{i}"))
            .chain((1..=k).map(|i| format!("y{i}")));
        Self::new(names).expect("generated names are unique")
    }

    /// The `k+1`-variable context `x1, ..., xk, y`.
    pub fn single_y(k: usize) -> Ctx {
        let names = (1..=k)
            .map(|i| format!("x{i}"))
            .chain(std::iter::once("y".to_string()));
        Self::new(names).expect("generated names are unique")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Variable indices in print order.
    pub fn display_order(&self) -> &[usize] {
        &self.display
    }

    /// Monomial consisting of the single variable `name`.
    pub fn var(&self, name: &str) -> Result<Monomial> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
        Ok(Monomial::var(self.arity(), i))
    }
}

fn interleaved_display(names: &[String]) -> Option<Vec<usize>> {
    if names.is_empty() || !names.len().is_multiple_of(2) {
        return None;
    }
    let k = names.len() / 2;
    let matches =
        (0..k).all(|i| names[i] == format!("x{}", i + 1) && names[k + i] == format!("y{}", i + 1));
    matches.then(|| (0..k).flat_map(|i| [i, k + i]).collect())
}

fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector over a context. Entries are signed; see the module docs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[i32; 12]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut m = Self::one(arity);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exps: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, n: i32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * n).collect())
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// `self / other` if the quotient has no negative exponents.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let q: SmallVec<[i32; 12]> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        q.iter().all(|&e| e >= 0).then_some(Monomial(q))
    }

    fn set(&mut self, i: usize, e: i32) {
        self.0[i] = e;
    }

    pub fn with_exponent(&self, i: usize, e: i32) -> Monomial {
        let mut m = self.clone();
        m.set(i, e);
        m
    }

    /// Renders the monomial with the context's names; `1` for the unit.
    pub fn to_text(&self, ctx: &VariableContext) -> String {
        let parts: Vec<String> = ctx
            .display_order()
            .iter()
            .filter(|&&i| self.0[i] != 0)
            .map(|&i| match self.0[i] {
                1 => ctx.names[i].clone(),
                e => format!("{}^{}", ctx.names[i], e),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Index<usize> for Monomial {
    type Output = i32;
    fn index(&self, i: usize) -> &i32 {
        &self.0[i]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Print order: descending total degree, ties by degree-reverse-lexicographic
/// order over the context's display order.
fn display_cmp(order: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    b.degree().cmp(&a.degree()).then_with(|| {
        for &i in order.iter().rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Homomorphism sending each source variable to a monomial of the target context.
#[derive(Debug, Clone)]
pub struct Substitution {
    source: Ctx,
    target: Ctx,
    images: Vec<Monomial>,
}

impl Substitution {
    /// Builds the map from explicit images; unmapped source variables go to the
    /// target variable of the same name.
    pub fn new(source: &Ctx, target: &Ctx, map: &[(&str, Monomial)]) -> Result<Self> {
        let mut images: Vec<Option<Monomial>> = vec![None; source.arity()];
        for (name, image) in map {
            let i = source
                .index_of(name)
                .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
            if image.arity() != target.arity() {
                return Err(Error::ArityMismatch {
                    expected: target.arity(),
                    found: image.arity(),
                });
            }
            images[i] = Some(image.clone());
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| match img {
                Some(m) => Ok(m),
                None => target.var(&source.names[i]),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn from_images(source: &Ctx, target: &Ctx, images: Vec<Monomial>) -> Result<Self> {
        if images.len() != source.arity() {
            return Err(Error::ArityMismatch {
                expected: source.arity(),
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|m| m.arity() != target.arity()) {
            return Err(Error::ArityMismatch {
                expected: target.arity(),
                found: bad.arity(),
            });
        }
        Ok(Substitution {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(ctx: &Ctx) -> Self {
        let images = (0..ctx.arity())
            .map(|i| Monomial::var(ctx.arity(), i))
            .collect();
        Substitution {
            source: ctx.clone(),
            target: ctx.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Ctx {
        &self.source
    }

    pub fn target(&self) -> &Ctx {
        &self.target
    }

    pub fn images(&self) -> &[Monomial] {
        &self.images
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Monomial {
        let mut out = Monomial::one(self.target.arity());
        for (img, &e) in self.images.iter().zip(m.exponents()) {
            if e != 0 {
                for (o, &x) in out.0.iter_mut().zip(img.exponents()) {
                    *o += x * e;
                }
            }
        }
        out
    }
}

/// Polynomial over `Z` in a fixed variable context.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    ctx: Ctx,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, BigInt::one())
    }

    pub fn constant(ctx: &Ctx, c: impl Into<BigInt>) -> Self {
        Self::term(ctx, Monomial::one(ctx.arity()), c)
    }

    pub fn term(ctx: &Ctx, m: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(
            m.arity(),
            ctx.arity(),
            "monomial arity does not match context"
        );
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn monomial(ctx: &Ctx, m: Monomial) -> Self {
        Self::term(ctx, m, 1)
    }

    /// `1 - m`.
    pub fn one_minus(ctx: &Ctx, m: &Monomial) -> Self {
        Self::one(ctx) - Self::monomial(ctx, m.clone())
    }

    pub fn variable(ctx: &Ctx, name: &str) -> Result<Self> {
        Ok(Self::monomial(ctx, ctx.var(name)?))
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms<I>(ctx: &Ctx, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            if m.arity() != ctx.arity() {
                return Err(Error::ArityMismatch {
                    expected: ctx.arity(),
                    found: m.arity(),
                });
            }
            *acc.entry(m).or_default() += c;
        }
        Ok(Self::from_map(ctx, acc))
    }

    fn from_map(ctx: &Ctx, acc: HashMap<Monomial, BigInt>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m, c);
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ctx));
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.len().saturating_mul(other.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Ok(Self::from_map(&self.ctx, acc))
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.mul(m), c.clone()))
                .collect(),
        }
    }

    /// `self * (1 - m)`.
    pub fn mul_one_minus(&self, m: &Monomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (x, c) in &self.terms {
            add_term(&mut terms, &x.mul(m), &-c);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.ctx);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `q` with `q * divisor == self`, found by repeatedly
    /// cancelling the leading term.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(divisor)?;
        let (lead_m, lead_c) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back() {
            let qm = m.checked_div(&lead_m).ok_or(Error::NotDivisible)?;
            if !(c % &lead_c).is_zero() {
                return Err(Error::NotDivisible);
            }
            let qc = c / &lead_c;
            for (dm, dc) in &divisor.terms {
                add_term(&mut rem, &dm.mul(&qm), &-(&qc * dc));
            }
            quot.insert(qm, qc);
        }
        Ok(Polynomial {
            ctx: self.ctx.clone(),
            terms: quot,
        })
    }

    /// Reduction modulo `1 - m`: every monomial `x^e` becomes `x^(e - t m)`
    /// with `t` maximal. Returns the normal form and the count `t` per term.
    fn reduce_mod_one_minus(
        &self,
        m: &Monomial,
    ) -> (HashMap<Monomial, BigInt>, Vec<(Monomial, u32)>) {
        let support: Vec<(usize, i32)> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| (i, a))
            .collect();
        let mut nf: HashMap<Monomial, BigInt> = HashMap::new();
        let mut counts = Vec::with_capacity(self.len());
        for (e, c) in &self.terms {
            let t = support
                .iter()
                .map(|&(i, a)| if e[i] < 0 { 0 } else { e[i] / a })
                .min()
                .unwrap_or(0)
                .max(0);
            let r = if t == 0 { e.clone() } else { e.mul(&m.pow(-t)) };
            *nf.entry(r.clone()).or_default() += c;
            counts.push((r, t as u32));
        }
        nf.retain(|_, c| !c.is_zero());
        (nf, counts)
    }

    /// Whether `1 - m` divides `self` (for a nonconstant, nonnegative `m`).
    pub fn divisible_by_one_minus(&self, m: &Monomial) -> bool {
        !m.is_one() && m.is_nonnegative() && self.reduce_mod_one_minus(m).0.is_empty()
    }

    /// Exact division by the binomial `1 - m`.
    pub fn div_one_minus(&self, m: &Monomial) -> Result<Polynomial> {
        if m.is_one() {
            return Err(Error::DivisionByZero);
        }
        if !m.is_nonnegative() {
            return self.exact_div(&Polynomial::one_minus(&self.ctx, m));
        }
        let (nf, counts) = self.reduce_mod_one_minus(m);
        if !nf.is_empty() {
            return Err(Error::NotDivisible);
        }
        // c x^(r + t m) = c x^r - (1 - m) * c x^r (1 + m + ... + m^(t-1))
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for ((r, t), c) in counts.into_iter().zip(self.terms.values()) {
            let mut x = r;
            for _ in 0..t {
                *acc.entry(x.clone()).or_default() -= c;
                x = x.mul(m);
            }
        }
        Ok(Self::from_map(&self.ctx, acc))
    }

    pub fn substitute(&self, map: &Substitution) -> Result<Polynomial> {
        if !same_ctx(&self.ctx, &map.source) {
            return Err(Error::ContextMismatch);
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            *acc.entry(map.apply_monomial(m)).or_default() += c;
        }
        Ok(Self::from_map(&map.target, acc))
    }

    /// Terms of total degree at most `max_degree`.
    pub fn truncate(&self, max_degree: i64) -> Polynomial {
        self.filter_terms(|m| m.degree() <= max_degree)
    }

    /// Terms whose weighted degree is at most `bound`.
    pub fn truncate_weighted(&self, weights: &[i64], bound: i64) -> Polynomial {
        self.filter_terms(|m| m.weighted_degree(weights) <= bound)
    }

    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `self / (1 - m)` as a power series, keeping weighted degree `<= bound`.
    /// `m` must have positive weighted degree.
    pub fn mul_geometric(&self, m: &Monomial, weights: &[i64], bound: i64) -> Result<Polynomial> {
        if m.weighted_degree(weights) <= 0 {
            return Err(Error::ZeroDegreeFactor);
        }
        let mut out = self.truncate_weighted(weights, bound);
        let mut shifted = out.clone();
        loop {
            shifted = shifted.mul_monomial(m).truncate_weighted(weights, bound);
            if shifted.is_zero() {
                break;
            }
            for (x, c) in &shifted.terms {
                add_term(&mut out.terms, x, c);
            }
        }
        Ok(out)
    }

    /// Same exponent vectors, reinterpreted in another context of equal arity.
    pub fn rename(&self, ctx: &Ctx) -> Result<Polynomial> {
        if ctx.arity() != self.ctx.arity() {
            return Err(Error::ArityMismatch {
                expected: ctx.arity(),
                found: self.ctx.arity(),
            });
        }
        Ok(Polynomial {
            ctx: ctx.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Evaluates every variable at an integer (monomials must be nonnegative).
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| {
                        acc * num_traits::pow(x.clone(), e as usize)
                    })
            })
            .sum()
    }

    /// Text form: terms by descending degree, degree-reverse-lexicographic
    /// among equal degrees, e.g. `-x1^2*y1*x2 + 1`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let order = self.ctx.display_order();
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| display_cmp(order, a.0, b.0));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&m.to_text(&self.ctx));
            }
        }
        out
    }

    /// Parses the text form (any term order, whitespace ignored).
    pub fn parse(ctx: &Ctx, text: &str) -> Result<Polynomial> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&s[start..i]);
                start = i;
            }
        }
        pieces.push(&s[start..]);
        let mut terms = Vec::with_capacity(pieces.len());
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-1, &piece[1..]),
                b'+' => (1, &piece[1..]),
                _ => (1, piece),
            };
            let mut coeff = BigInt::from(sign);
            let mut mono = Monomial::one(ctx.arity());
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{piece}`")));
                }
                if factor.bytes().all(|b| b.is_ascii_digit()) {
                    coeff *= factor
                        .parse::<BigInt>()
                        .map_err(|e| Error::Parse(e.to_string()))?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<i32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let i = ctx
                    .index_of(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                mono.0[i] += exp;
            }
            terms.push((mono, coeff));
        }
        Polynomial::from_terms(ctx, terms)
    }

    pub fn to_json_value(&self) -> PolynomialJson {
        PolynomialJson {
            vars: self.ctx.names.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    c: c.to_string(),
                    e: m.exponents().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_json_value(json: &PolynomialJson) -> Result<Polynomial> {
        let ctx = VariableContext::new(json.vars.iter().cloned())?;
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let c =
                    t.c.parse::<BigInt>()
                        .map_err(|e| Error::Json(format!("bad coefficient `{}`: {e}", t.c)))?;
                Ok((Monomial::from_exponents(&t.e), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(&ctx, terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value())
            .expect("polynomial json is always serializable")
    }

    pub fn from_json(s: &str) -> Result<Polynomial> {
        let v: PolynomialJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, BigInt>, m: &Monomial, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(m) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                terms.remove(m);
            }
        }
        None => {
            terms.insert(m.clone(), c.clone());
        }
    }
}

/// Wire form of a polynomial: `{"vars": [...], "terms": [{"c": "..", "e": [..]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<i32>,
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// Operator impls panic on a context mismatch; use the `try_*` methods when
// the operands may come from different contexts.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial context mismatch")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial context mismatch")
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial context mismatch")
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
