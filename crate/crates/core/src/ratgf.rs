//! Rational generating functions `num / Π (1 - m)` with the denominator kept
//! as a multiset of monomials and never expanded unless asked for.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multipoly::{Ctx, Monomial, Polynomial, PolynomialJson, Substitution, VariableContext};

/// Multiset of monomials `m`, each standing for a factor `(1 - m)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredDenominator {
    ctx: Ctx,
    factors: BTreeMap<Monomial, u32>,
}

impl FactoredDenominator {
    pub fn empty(ctx: &Ctx) -> Self {
        FactoredDenominator {
            ctx: ctx.clone(),
            factors: BTreeMap::new(),
        }
    }

    pub fn from_factors<I>(ctx: &Ctx, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut den = Self::empty(ctx);
        for m in factors {
            den.push(m)?;
        }
        Ok(den)
    }

    pub fn push(&mut self, m: Monomial) -> Result<()> {
        if m.arity() != self.ctx.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ctx.arity(),
                found: m.arity(),
            });
        }
        if m.is_one() || !m.is_nonnegative() {
            return Err(Error::InvalidFactor(m.to_text(&self.ctx)));
        }
        *self.factors.entry(m).or_insert(0) += 1;
        Ok(())
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// Number of factors counted with multiplicity.
    pub fn len(&self) -> usize {
        self.factors.values().map(|&n| n as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn distinct(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.factors.iter().map(|(m, &n)| (m, n))
    }

    /// Factors with repetition, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.factors
            .iter()
            .flat_map(|(m, &n)| std::iter::repeat_n(m, n as usize))
    }

    pub fn multiplicity(&self, m: &Monomial) -> u32 {
        self.factors.get(m).copied().unwrap_or(0)
    }

    pub fn is_subset_of(&self, other: &FactoredDenominator) -> bool {
        self.factors
            .iter()
            .all(|(m, &n)| other.multiplicity(m) >= n)
    }

    /// Each distinct factor with the larger of its two multiplicities.
    pub fn union_max(&self, other: &FactoredDenominator) -> FactoredDenominator {
        let mut factors = self.factors.clone();
        for (m, &n) in &other.factors {
            let e = factors.entry(m.clone()).or_insert(0);
            *e = (*e).max(n);
        }
        FactoredDenominator {
            ctx: self.ctx.clone(),
            factors,
        }
    }

    /// Multiset sum.
    pub fn merged(&self, other: &FactoredDenominator) -> FactoredDenominator {
        let mut factors = self.factors.clone();
        for (m, &n) in &other.factors {
            *factors.entry(m.clone()).or_insert(0) += n;
        }
        FactoredDenominator {
            ctx: self.ctx.clone(),
            factors,
        }
    }

    /// `self ∖ other`, or `None` if `other` is not contained in `self`.
    pub fn difference(&self, other: &FactoredDenominator) -> Option<FactoredDenominator> {
        let mut factors = self.factors.clone();
        for (m, &n) in &other.factors {
            let e = factors.get_mut(m)?;
            if *e < n {
                return None;
            }
            *e -= n;
            if *e == 0 {
                factors.remove(m);
            }
        }
        Some(FactoredDenominator {
            ctx: self.ctx.clone(),
            factors,
        })
    }

    fn remove_one(&mut self, m: &Monomial) {
        if let Some(n) = self.factors.get_mut(m) {
            *n -= 1;
            if *n == 0 {
                self.factors.remove(m);
            }
        }
    }

    /// `p * Π (1 - m)` over this multiset.
    pub fn multiply_into(&self, p: &Polynomial) -> Polynomial {
        self.iter().fold(p.clone(), |acc, m| acc.mul_one_minus(m))
    }

    pub fn expand(&self) -> Polynomial {
        self.multiply_into(&Polynomial::one(&self.ctx))
    }

    pub fn substitute(&self, map: &Substitution) -> Result<FactoredDenominator> {
        let mut out = Self::empty(map.target());
        for m in self.iter() {
            out.push(map.apply_monomial(m))?;
        }
        Ok(out)
    }

    pub fn rename(&self, ctx: &Ctx) -> Result<FactoredDenominator> {
        if ctx.arity() != self.ctx.arity() {
            return Err(Error::ArityMismatch {
                expected: ctx.arity(),
                found: self.ctx.arity(),
            });
        }
        Ok(FactoredDenominator {
            ctx: ctx.clone(),
            factors: self.factors.clone(),
        })
    }

    /// Whether every factor is a staircase monomial `x1..xa * y1..yc` with
    /// `k >= a >= max(c, 1)`.
    pub fn all_staircase(&self, k: usize) -> bool {
        self.factors.keys().all(|m| staircase_shape(m, k).is_some())
    }

    pub fn to_text(&self) -> String {
        self.iter()
            .map(|m| format!("(1 - {})", m.to_text(&self.ctx)))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// `(a, c)` when `m` has exponent vector `(1^a 0^(k-a) | 1^c 0^(k-c))` with
/// `k >= a >= max(c, 1)`.
pub fn staircase_shape(m: &Monomial, k: usize) -> Option<(usize, usize)> {
    let e = m.exponents();
    if e.len() != 2 * k {
        return None;
    }
    let run = |half: &[i32]| -> Option<usize> {
        let a = half.iter().take_while(|&&x| x == 1).count();
        half[a..].iter().all(|&x| x == 0).then_some(a)
    };
    let a = run(&e[..k])?;
    let c = run(&e[k..])?;
    (a >= 1 && a >= c).then_some((a, c))
}

/// A rational function `num / Π (1 - m)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredGF {
    num: Polynomial,
    den: FactoredDenominator,
}

impl FactoredGF {
    pub fn new(num: Polynomial, den: FactoredDenominator) -> Result<Self> {
        if num.ctx() != den.ctx() {
            return Err(Error::ContextMismatch);
        }
        Ok(FactoredGF { num, den })
    }

    pub fn from_polynomial(num: Polynomial) -> Self {
        let den = FactoredDenominator::empty(num.ctx());
        FactoredGF { num, den }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::from_polynomial(Polynomial::one(ctx))
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::from_polynomial(Polynomial::zero(ctx))
    }

    /// `num / Π (1 - m)` for the given factor monomials.
    pub fn with_factors<I>(num: Polynomial, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let den = FactoredDenominator::from_factors(num.ctx(), factors)?;
        Ok(FactoredGF { num, den })
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &FactoredDenominator {
        &self.den
    }

    pub fn ctx(&self) -> &Ctx {
        self.num.ctx()
    }

    /// Sum over the max-multiplicity union of the two denominators.
    pub fn add(&self, other: &FactoredGF) -> Result<FactoredGF> {
        if self.ctx() != other.ctx() {
            return Err(Error::ContextMismatch);
        }
        if other.num.is_zero() {
            return Ok(self.clone());
        }
        if self.num.is_zero() {
            return Ok(other.clone());
        }
        let den = self.den.union_max(&other.den);
        let lift = |g: &FactoredGF| {
            let extra = den.difference(&g.den).expect("union contains each operand");
            extra.multiply_into(&g.num)
        };
        let num = lift(self) + lift(other);
        Ok(FactoredGF { num, den })
    }

    pub fn neg(&self) -> FactoredGF {
        FactoredGF {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &FactoredGF) -> Result<FactoredGF> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FactoredGF) -> Result<FactoredGF> {
        let num = self.num.try_mul(&other.num)?;
        Ok(FactoredGF {
            num,
            den: self.den.merged(&other.den),
        })
    }

    pub fn substitute(&self, map: &Substitution) -> Result<FactoredGF> {
        Ok(FactoredGF {
            num: self.num.substitute(map)?,
            den: self.den.substitute(map)?,
        })
    }

    pub fn rename(&self, ctx: &Ctx) -> Result<FactoredGF> {
        Ok(FactoredGF {
            num: self.num.rename(ctx)?,
            den: self.den.rename(ctx)?,
        })
    }

    /// Cancels every factor `(1 - m)` that divides the numerator, trying
    /// low-degree factors first. Idempotent.
    pub fn reduce(&self) -> FactoredGF {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if num.is_zero() {
            return FactoredGF::zero(self.ctx());
        }
        loop {
            let mut changed = false;
            let candidates: Vec<Monomial> = den.factors.keys().cloned().collect();
            for m in candidates {
                while den.multiplicity(&m) > 0 && num.divisible_by_one_minus(&m) {
                    num = num.div_one_minus(&m).expect("divisibility was checked");
                    den.remove_one(&m);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        FactoredGF { num, den }
    }

    /// Power series truncated at total degree `max_degree`.
    pub fn series(&self, max_degree: i64) -> Result<Polynomial> {
        let weights = vec![1; self.ctx().arity()];
        self.series_weighted(&weights, max_degree)
    }

    /// Power series keeping the terms whose weighted degree is `<= bound`.
    /// Every factor must have positive weighted degree.
    pub fn series_weighted(&self, weights: &[i64], bound: i64) -> Result<Polynomial> {
        if self.den.iter().any(|m| m.weighted_degree(weights) <= 0) {
            return Err(Error::ZeroDegreeFactor);
        }
        let mut out = self.num.truncate_weighted(weights, bound);
        for m in self.den.iter() {
            out = out.mul_geometric(m, weights, bound)?;
        }
        Ok(out)
    }

    /// The numerator over `target`: `num * Π (target ∖ den)` after reduction.
    pub fn clear_to(&self, target: &FactoredDenominator) -> Result<Polynomial> {
        if self.ctx() != target.ctx() {
            return Err(Error::ContextMismatch);
        }
        let reduced = self.reduce();
        let extra = target.difference(&reduced.den).ok_or(Error::NotContained)?;
        Ok(extra.multiply_into(&reduced.num))
    }

    pub fn to_text(&self) -> String {
        if self.den.is_empty() {
            self.num.to_text()
        } else {
            format!("({}) / ({})", self.num.to_text(), self.den.to_text())
        }
    }

    pub fn to_json_value(&self) -> FactoredGfJson {
        FactoredGfJson {
            num: self.num.to_json_value(),
            den: self
                .den
                .distinct()
                .map(|(m, mult)| FactorJson {
                    e: m.exponents().to_vec(),
                    mult,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("gf json is always serializable")
    }

    pub fn from_json_value(json: &FactoredGfJson) -> Result<FactoredGF> {
        let num = Polynomial::from_json_value(&json.num)?;
        let mut den = FactoredDenominator::empty(num.ctx());
        for f in &json.den {
            for _ in 0..f.mult {
                den.push(Monomial::from_exponents(&f.e))?;
            }
        }
        Ok(FactoredGF { num, den })
    }

    pub fn from_json(s: &str) -> Result<FactoredGF> {
        let v: FactoredGfJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

impl fmt::Display for FactoredDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for FactoredGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Wire form: `{"num": <polynomial>, "den": [{"e": [..], "mult": n}, ..]}`,
/// factors in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredGfJson {
    pub num: PolynomialJson,
    pub den: Vec<FactorJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub e: Vec<i32>,
    pub mult: u32,
}

/// Convenience for tests and examples: the plane-partition context of width `k`.
pub fn pp_ctx(k: usize) -> Ctx {
    VariableContext::plane_partition(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx1() -> Ctx {
        pp_ctx(1)
    }

    fn poly(c: &Ctx, s: &str) -> Polynomial {
        Polynomial::parse(c, s).unwrap()
    }

    fn mono(c: &Ctx, s: &str) -> Monomial {
        let p = poly(c, s);
        let m = p.terms().next().unwrap().0.clone();
        m
    }

    fn gf(c: &Ctx, num: &str, den: &[&str]) -> FactoredGF {
        FactoredGF::with_factors(poly(c, num), den.iter().map(|d| mono(c, d))).unwrap()
    }

    #[test]
    fn add_examples() {
        let c = ctx1();
        let s = gf(&c, "1", &["x1"]).add(&gf(&c, "-x1", &["x1"])).unwrap();
        assert_eq!(s, gf(&c, "1 - x1", &["x1"]));
        assert_eq!(s.reduce(), FactoredGF::one(&c));
        let a = gf(&c, "x1 + y1", &["x1*y1"]);
        assert_eq!(a.add(&FactoredGF::zero(&c)).unwrap(), a);
        let t = gf(&c, "1", &["x1"]).add(&gf(&c, "1", &["y1"])).unwrap();
        assert_eq!(t, gf(&c, "2 - x1 - y1", &["x1", "y1"]));
    }

    #[test]
    fn add_uses_max_multiplicity() {
        let c = ctx1();
        let a = gf(&c, "1", &["x1", "x1"]);
        let b = gf(&c, "1", &["x1", "y1"]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.den().multiplicity(&mono(&c, "x1")), 2);
        assert_eq!(s.den().len(), 3);
    }

    #[test]
    fn mul_examples() {
        let c = ctx1();
        let a = gf(&c, "1", &["x1"]).mul(&gf(&c, "1 - x1", &[])).unwrap();
        assert_eq!(a, gf(&c, "1 - x1", &["x1"]));
        let b = gf(&c, "x1", &["x1"]);
        assert_eq!(b.mul(&FactoredGF::one(&c)).unwrap(), b);
        let p = gf(&c, "x1", &["x1"])
            .mul(&gf(&c, "y1", &["x1*y1"]))
            .unwrap();
        assert_eq!(p, gf(&c, "x1*y1", &["x1", "x1*y1"]));
    }

    #[test]
    fn substitute_q1_denominator() {
        let src = ctx1();
        let dst = pp_ctx(2);
        let q1 = gf(&src, "x1 + x1*y1 - x1^2*y1", &["x1", "x1*y1"]);
        let map = Substitution::new(
            &src,
            &dst,
            &[("x1", mono(&dst, "x1*x2*y1")), ("y1", mono(&dst, "y2"))],
        )
        .unwrap();
        let img = q1.substitute(&map).unwrap();
        let expected = FactoredDenominator::from_factors(
            &dst,
            [mono(&dst, "x1*x2*y1"), mono(&dst, "x1*x2*y1*y2")],
        )
        .unwrap();
        assert_eq!(img.den(), &expected);
        assert_eq!(
            img.num(),
            &poly(&dst, "x1*x2*y1 + x1*x2*y1*y2 - x1^2*x2^2*y1^2*y2")
        );
        assert_eq!(q1.substitute(&Substitution::identity(&src)).unwrap(), q1);
        let k = gf(&src, "7", &[]);
        assert_eq!(k.substitute(&Substitution::identity(&src)).unwrap(), k);
    }

    #[test]
    fn reduce_examples() {
        let c = ctx1();
        assert_eq!(gf(&c, "1 - x1", &["x1"]).reduce(), FactoredGF::one(&c));
        let r = gf(&c, "x1 + x1*y1 - x1^2*y1", &["x1", "x1*y1"]);
        assert_eq!(r.reduce(), r);
        let twice = gf(&c, "1 - x1", &["x1", "x1"]).reduce();
        assert_eq!(twice, gf(&c, "1", &["x1"]));
        assert_eq!(twice.reduce(), twice);
    }

    #[test]
    fn series_examples() {
        let c = ctx1();
        assert_eq!(
            gf(&c, "1", &["x1"]).series(3).unwrap(),
            poly(&c, "1 + x1 + x1^2 + x1^3")
        );
        let q1 = gf(&c, "x1 + x1*y1 - x1^2*y1", &["x1", "x1*y1"]);
        assert_eq!(q1.series(2).unwrap(), poly(&c, "x1 + x1^2 + x1*y1"));
        let bad = FactoredGF {
            num: Polynomial::one(&c),
            den: FactoredDenominator {
                ctx: c.clone(),
                factors: [(Monomial::one(2), 1)].into_iter().collect(),
            },
        };
        assert_eq!(bad.series(3), Err(Error::ZeroDegreeFactor));
    }

    #[test]
    fn clear_to_examples() {
        let c = ctx1();
        let d1 =
            FactoredDenominator::from_factors(&c, [mono(&c, "x1"), mono(&c, "x1*y1")]).unwrap();
        let q1 = gf(&c, "x1", &["x1"])
            .add(&gf(&c, "x1*y1", &["x1", "x1*y1"]))
            .unwrap();
        assert_eq!(q1.clear_to(&d1).unwrap(), poly(&c, "x1 + x1*y1 - x1^2*y1"));
        let p = gf(&c, "3*y1", &[]);
        assert_eq!(
            p.clear_to(&FactoredDenominator::empty(&c)).unwrap(),
            poly(&c, "3*y1")
        );
        let other = gf(&c, "1", &["y1"]);
        assert_eq!(other.clear_to(&d1), Err(Error::NotContained));
    }

    #[test]
    fn invalid_factors_rejected() {
        let c = ctx1();
        assert!(FactoredDenominator::from_factors(&c, [Monomial::one(2)]).is_err());
        assert!(
            FactoredDenominator::from_factors(&c, [Monomial::from_exponents(&[1, -1])]).is_err()
        );
    }

    #[test]
    fn staircase_shapes() {
        let c = pp_ctx(3);
        assert_eq!(staircase_shape(&mono(&c, "x1*x2*y1"), 3), Some((2, 1)));
        assert_eq!(staircase_shape(&mono(&c, "x1"), 3), Some((1, 0)));
        assert_eq!(staircase_shape(&mono(&c, "x2"), 3), None);
        assert_eq!(staircase_shape(&mono(&c, "x1*y1*y2"), 3), None);
        assert_eq!(staircase_shape(&mono(&c, "x1^2"), 3), None);
    }

    #[test]
    fn json_round_trip() {
        let c = pp_ctx(2);
        let g = gf(&c, "1 - x1^2*x2*y1", &["x1", "x1*y1", "x1*y1"]);
        let back = FactoredGF::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(g.to_json().contains(r#""mult":2"#));
    }
}
