//! MacMahon's `Ω≥` operator on crude generating functions whose elimination
//! variables occur in denominator factors with exponent `-1`, `0` or `+1`.
//!
//! A [`CrudeForm`] is a sum of terms `num / Π (1 - m_i)`. The numerator may
//! be a Laurent polynomial in the elimination variables; the factors must
//! have positive degree in the base variables so that everything expands as
//! a power series in the base variables. `Ω≥` over `v` keeps the part of that
//! series with nonnegative `v`-exponent and then sets `v = 1`.
//!
//! Elimination splits each term with the identity
//!
//! ```text
//! 1 / ((1 - A v)(1 - B/v)) = 1/(1 - AB) * (1/(1 - A v) + 1/(1 - B/v) - 1)
//! ```
//!
//! until no term has both a `v`-positive and a `v`-negative factor, then
//! applies the one-sided rules with the numerator's `v`-exponent `s`:
//!
//! ```text
//! Ω≥ v^s / Π (1 - A_i v) = 1/Π(1 - A_i) - Σ_{|n| < -s} A^n
//! Ω≥ v^s / Π (1 - B_j/v) = Σ_{|n| <= s} B^n
//! ```

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::multipoly::{Ctx, Monomial, Polynomial, Substitution, VariableContext};
use crate::ratgf::FactoredGF;

/// One summand `num / Π (1 - m)` of a crude form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrudeTerm {
    pub num: Polynomial,
    /// Sorted.
    pub factors: Vec<Monomial>,
}

/// Sum of crude terms over base variables plus elimination variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrudeForm {
    ctx: Ctx,
    elimination: Vec<bool>,
    pending: Vec<bool>,
    terms: Vec<CrudeTerm>,
}

impl CrudeForm {
    /// Empty form over `ctx`, with the named variables marked for elimination.
    pub fn new(ctx: &Ctx, elimination: &[&str]) -> Result<Self> {
        let mut mask = vec![false; ctx.arity()];
        for name in elimination {
            let i = ctx
                .index_of(name)
                .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
            mask[i] = true;
        }
        Ok(CrudeForm {
            ctx: ctx.clone(),
            pending: mask.clone(),
            elimination: mask,
            terms: Vec::new(),
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &[CrudeTerm] {
        &self.terms
    }

    pub fn is_elimination(&self, i: usize) -> bool {
        self.elimination[i]
    }

    /// Weights counting base-variable degree only.
    pub fn base_weights(&self) -> Vec<i64> {
        self.elimination.iter().map(|&e| i64::from(!e)).collect()
    }

    pub fn push_term(&mut self, num: Polynomial, factors: Vec<Monomial>) -> Result<()> {
        if num.ctx() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let weights = self.base_weights();
        for m in &factors {
            if m.arity() != self.ctx.arity() {
                return Err(Error::ArityMismatch {
                    expected: self.ctx.arity(),
                    found: m.arity(),
                });
            }
            let base_ok = m
                .exponents()
                .iter()
                .zip(&self.elimination)
                .all(|(&e, &elim)| elim || e >= 0);
            if !base_ok || m.weighted_degree(&weights) <= 0 {
                return Err(Error::InvalidFactor(m.to_text(&self.ctx)));
            }
        }
        let mut factors = factors;
        factors.sort();
        self.terms.push(CrudeTerm { num, factors });
        Ok(())
    }

    /// Elimination variables that still occur somewhere.
    pub fn live_elimination_vars(&self) -> Vec<String> {
        (0..self.ctx.arity())
            .filter(|&i| self.elimination[i])
            .filter(|&i| {
                self.terms.iter().any(|t| {
                    t.factors.iter().any(|m| m[i] != 0) || t.num.terms().any(|(m, _)| m[i] != 0)
                })
            })
            .map(|i| self.ctx.names()[i].clone())
            .collect()
    }

    /// `Ω≥` over the elimination variable `var`.
    pub fn eliminate(&self, var: &str) -> Result<CrudeForm> {
        let v = self
            .ctx
            .index_of(var)
            .filter(|&i| self.pending[i])
            .ok_or_else(|| Error::NotEliminationVariable(var.to_string()))?;
        let mut acc: BTreeMap<Vec<Monomial>, Polynomial> = BTreeMap::new();
        for term in &self.terms {
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            let mut free = Vec::new();
            for m in &term.factors {
                match m[v] {
                    0 => free.push(m.clone()),
                    1 => pos.push(m.clone()),
                    -1 => neg.push(m.clone()),
                    e => {
                        return Err(Error::BadEliminationExponent {
                            var: var.to_string(),
                            exponent: e,
                        })
                    }
                }
            }
            let mut stack = vec![Split {
                num: term.num.clone(),
                pos,
                neg,
                free,
            }];
            while let Some(w) = stack.pop() {
                if w.pos.is_empty() || w.neg.is_empty() {
                    self.resolve_one_sided(v, w, &mut acc);
                    continue;
                }
                let ab = w.pos[0].mul(&w.neg[0]);
                let mut free = w.free.clone();
                free.push(ab);
                stack.push(Split {
                    num: w.num.clone(),
                    pos: w.pos.clone(),
                    neg: w.neg[1..].to_vec(),
                    free: free.clone(),
                });
                stack.push(Split {
                    num: w.num.clone(),
                    pos: w.pos[1..].to_vec(),
                    neg: w.neg.clone(),
                    free: free.clone(),
                });
                stack.push(Split {
                    num: -&w.num,
                    pos: w.pos[1..].to_vec(),
                    neg: w.neg[1..].to_vec(),
                    free,
                });
            }
        }
        let mut pending = self.pending.clone();
        pending[v] = false;
        Ok(CrudeForm {
            ctx: self.ctx.clone(),
            elimination: self.elimination.clone(),
            pending,
            terms: acc
                .into_iter()
                .filter(|(_, num)| !num.is_zero())
                .map(|(factors, num)| CrudeTerm { num, factors })
                .collect(),
        })
    }

    fn resolve_one_sided(&self, v: usize, w: Split, acc: &mut BTreeMap<Vec<Monomial>, Polynomial>) {
        let strip = |m: &Monomial| m.with_exponent(v, 0);
        let mut by_power: HashMap<i32, Vec<(Monomial, BigInt)>> = HashMap::new();
        for (m, c) in w.num.terms() {
            by_power
                .entry(m[v])
                .or_default()
                .push((strip(m), c.clone()));
        }
        let emit = |acc: &mut BTreeMap<Vec<Monomial>, Polynomial>,
                    num: Polynomial,
                    mut factors: Vec<Monomial>| {
            if num.is_zero() {
                return;
            }
            factors.sort();
            match acc.get_mut(&factors) {
                Some(p) => *p = &*p + &num,
                None => {
                    acc.insert(factors, num);
                }
            }
        };
        let mut powers: Vec<i32> = by_power.keys().copied().collect();
        powers.sort_unstable();
        for s in powers {
            let num =
                Polynomial::from_terms(&self.ctx, by_power[&s].clone()).expect("same context");
            if !w.pos.is_empty() {
                let stripped: Vec<Monomial> = w.pos.iter().map(strip).collect();
                let mut factors = w.free.clone();
                factors.extend(stripped.iter().cloned());
                emit(acc, num.clone(), factors);
                if s < 0 {
                    let low = bounded_power_sum(&self.ctx, &stripped, (-s - 1) as u32);
                    emit(acc, -(&num * &low), w.free.clone());
                }
            } else if !w.neg.is_empty() {
                if s >= 0 {
                    let stripped: Vec<Monomial> = w.neg.iter().map(strip).collect();
                    let sum = bounded_power_sum(&self.ctx, &stripped, s as u32);
                    emit(acc, &num * &sum, w.free.clone());
                }
            } else if s >= 0 {
                emit(acc, num, w.free.clone());
            }
        }
    }

    /// Applies `eliminate` for each variable in turn.
    pub fn eliminate_all(&self, order: &[&str]) -> Result<CrudeForm> {
        order.iter().try_fold(self.clone(), |f, v| f.eliminate(v))
    }

    /// Power series keeping base degree `<= max_degree`; elimination
    /// variables ride along as Laurent exponents.
    pub fn series(&self, max_degree: i64) -> Result<Polynomial> {
        let weights = self.base_weights();
        let mut out = Polynomial::zero(&self.ctx);
        for t in &self.terms {
            let mut s = t.num.truncate_weighted(&weights, max_degree);
            for m in &t.factors {
                s = s.mul_geometric(m, &weights, max_degree)?;
            }
            out = &out + &s;
        }
        Ok(out)
    }

    /// Drops every elimination variable, which must no longer occur, and
    /// sums the terms into one reduced generating function over `base`.
    pub fn to_gf(&self, base: &Ctx) -> Result<FactoredGF> {
        if let Some(v) = self.live_elimination_vars().first() {
            return Err(Error::OutOfRange(format!("`{v}` has not been eliminated")));
        }
        let images = self
            .ctx
            .names()
            .iter()
            .map(|n| match base.index_of(n) {
                Some(i) => Ok(Monomial::var(base.arity(), i)),
                None if self.ctx.index_of(n).is_some_and(|i| self.elimination[i]) => {
                    Ok(Monomial::one(base.arity()))
                }
                None => Err(Error::MissingVariable(n.clone())),
            })
            .collect::<Result<Vec<_>>>()?;
        let map = Substitution::from_images(&self.ctx, base, images)?;
        let mut acc = FactoredGF::zero(base);
        for t in &self.terms {
            let g = FactoredGF::with_factors(t.num.clone(), t.factors.iter().cloned())?
                .substitute(&map)?;
            acc = acc.add(&g)?;
        }
        Ok(acc.reduce())
    }
}

struct Split {
    num: Polynomial,
    pos: Vec<Monomial>,
    neg: Vec<Monomial>,
    free: Vec<Monomial>,
}

/// `Σ_{|n| <= max_total} Π m_i^(n_i)`.
fn bounded_power_sum(ctx: &Ctx, monos: &[Monomial], max_total: u32) -> Polynomial {
    fn go(monos: &[Monomial], budget: u32, acc: Monomial, out: &mut Vec<(Monomial, BigInt)>) {
        match monos.split_first() {
            None => out.push((acc, BigInt::from(1))),
            Some((m, rest)) => {
                let mut cur = acc;
                for used in 0..=budget {
                    go(rest, budget - used, cur.clone(), out);
                    cur = cur.mul(m);
                }
            }
        }
    }
    let mut out = Vec::new();
    go(monos, max_total, Monomial::one(ctx.arity()), &mut out);
    Polynomial::from_terms(ctx, out).expect("same context")
}

/// Keeps the terms with nonnegative exponent of variable `v`, then sets `v = 1`.
pub fn nonnegative_part(p: &Polynomial, v: usize) -> Polynomial {
    let terms = p
        .terms()
        .filter(|(m, _)| m[v] >= 0)
        .map(|(m, c)| (m.with_exponent(v, 0), c.clone()));
    Polynomial::from_terms(p.ctx(), terms).expect("same context")
}

/// Checks `Ω≥` against its definition: the nonnegative part of the input
/// series at `v = 1` must equal the output series, to base degree `max_degree`.
pub fn series_semantics_hold(input: &CrudeForm, var: &str, max_degree: i64) -> Result<bool> {
    let v = input
        .ctx
        .index_of(var)
        .ok_or_else(|| Error::MissingVariable(var.to_string()))?;
    let output = input.eliminate(var)?;
    let lhs = nonnegative_part(&input.series(max_degree)?, v);
    let rhs = output.series(max_degree)?;
    Ok(lhs == rhs)
}

/// Generating function `p_{2,n}` of `2 x n` plane partitions over
/// `x11..x1n, x21..x2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxGF {
    pub n: usize,
    pub value: FactoredGF,
}

/// The context `x11, ..., x1n, x21, ..., x2n`.
pub fn box_context(n: usize) -> Ctx {
    let names = (1..=2).flat_map(|i| (1..=n).map(move |j| format!("x{i}{j}")));
    VariableContext::new(names).expect("generated names are unique")
}

impl BoxGF {
    /// Same exponent vectors read in `x1..xn, y1..yn`.
    pub fn to_plane_partition(&self) -> FactoredGF {
        self.value
            .rename(&VariableContext::plane_partition(self.n))
            .expect("equal arity")
    }

    pub fn from_plane_partition(g: &FactoredGF) -> Result<BoxGF> {
        let n = g.ctx().arity() / 2;
        Ok(BoxGF {
            n,
            value: g.rename(&box_context(n))?,
        })
    }

    /// `p_{2,1} = 1 / ((1 - x11)(1 - x11 x21))`.
    pub fn p21() -> BoxGF {
        let ctx = box_context(1);
        let value = FactoredGF::with_factors(
            Polynomial::one(&ctx),
            [
                Monomial::from_exponents(&[1, 0]),
                Monomial::from_exponents(&[1, 1]),
            ],
        )
        .expect("valid factors");
        BoxGF { n: 1, value }
    }
}

const P22_VARS: [&str; 8] = ["mu11", "mu12", "l11", "l21", "x11", "x12", "x21", "x22"];

/// The crude form for `2 x 2` plane partitions before any elimination.
pub fn p22_setup() -> CrudeForm {
    let ctx = VariableContext::new(P22_VARS).expect("distinct names");
    let mono = |e: [i32; 8]| Monomial::from_exponents(&e);
    //                         mu11 mu12 l11 l21 x11 x12 x21 x22
    let factors = vec![
        mono([1, 0, 1, 0, 1, 0, 0, 0]),
        mono([-1, 0, 0, 1, 0, 0, 1, 0]),
        mono([0, 1, -1, 0, 0, 1, 0, 0]),
        mono([0, -1, 0, -1, 0, 0, 0, 1]),
    ];
    let mut form = CrudeForm::new(&ctx, &P22_VARS[..4]).expect("names exist");
    form.push_term(Polynomial::one(&ctx), factors)
        .expect("valid factors");
    form
}

/// The setup form followed by the result of each elimination, in the order
/// `mu11, mu12, l11, l21`.
pub fn p22_stages() -> Result<Vec<CrudeForm>> {
    let mut stages = vec![p22_setup()];
    for v in &P22_VARS[..4] {
        let next = stages.last().expect("nonempty").eliminate(v)?;
        stages.push(next);
    }
    Ok(stages)
}

/// `p_{2,2}` by eliminating `mu11, mu12, l11, l21` from [`p22_setup`].
pub fn p22_via_omega() -> Result<BoxGF> {
    p22_via_omega_with_order(&P22_VARS[..4])
}

pub fn p22_via_omega_with_order(order: &[&str]) -> Result<BoxGF> {
    let value = p22_setup().eliminate_all(order)?.to_gf(&box_context(2))?;
    Ok(BoxGF { n: 2, value })
}

/// Builds the crude form for adding column `n + 1` to `p_{2,n}`: marks the
/// last column with `l0` (top) and `l1` (bottom) and attaches the new
/// column `(b + c | b)` as `1 / ((1 - x1' / l0)(1 - x1' x2' / (l0 l1)))`.
pub fn ap_step_setup(p: &BoxGF) -> Result<CrudeForm> {
    let n = p.n;
    let big_names: Vec<String> = box_context(n + 1)
        .names()
        .iter()
        .cloned()
        .chain(["l0".to_string(), "l1".to_string()])
        .collect();
    let ctx = VariableContext::new(big_names)?;
    let arity = ctx.arity();
    let idx = |name: &str| ctx.index_of(name).expect("generated name");
    let (l0, l1) = (idx("l0"), idx("l1"));
    let src = p.value.ctx();
    let images = src
        .names()
        .iter()
        .map(|name| {
            let mut m = Monomial::var(arity, idx(name));
            if *name == format!("x1{n}") {
                m = m.with_exponent(l0, 1);
            } else if *name == format!("x2{n}") {
                m = m.with_exponent(l1, 1);
            }
            m
        })
        .collect();
    let map = Substitution::from_images(src, &ctx, images)?;
    let lifted = p.value.substitute(&map)?;
    let top = idx(&format!("x1{}", n + 1));
    let bottom = idx(&format!("x2{}", n + 1));
    let new_top = Monomial::var(arity, top).with_exponent(l0, -1);
    let new_both = Monomial::var(arity, top)
        .with_exponent(bottom, 1)
        .with_exponent(l0, -1)
        .with_exponent(l1, -1);
    let mut factors: Vec<Monomial> = lifted.den().iter().cloned().collect();
    factors.push(new_top);
    factors.push(new_both);
    let mut form = CrudeForm::new(&ctx, &["l0", "l1"])?;
    form.push_term(lifted.num().clone(), factors)?;
    Ok(form)
}

/// `p_{2,n+1}` from `p_{2,n}` by eliminating `l0` then `l1`.
pub fn ap_step(p: &BoxGF) -> Result<BoxGF> {
    let value = ap_step_setup(p)?
        .eliminate_all(&["l0", "l1"])?
        .to_gf(&box_context(p.n + 1))?;
    Ok(BoxGF { n: p.n + 1, value })
}

/// `p_{2,n}` by iterating [`ap_step`] from `p_{2,1}`.
pub fn box_gf(n: usize) -> Result<BoxGF> {
    if n == 0 {
        return Err(Error::OutOfRange("box width must be at least 1".into()));
    }
    (1..n).try_fold(BoxGF::p21(), |p, _| ap_step(&p))
}

/// `1 / (1 - x_{1,n+1} x_{2,n+1} Π_{i, j<=n} x_{ij})` over `box_context(n + 1)`.
pub fn column_prefactor(n: usize) -> FactoredGF {
    let ctx = box_context(n + 1);
    let all = Monomial::from_exponents(&vec![1; 2 * (n + 1)]);
    FactoredGF::with_factors(Polynomial::one(&ctx), [all]).expect("valid factor")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_xyv() -> Ctx {
        VariableContext::new(["x", "y", "v"]).unwrap()
    }

    fn form(ctx: &Ctx, num: &str, factors: &[&[i32]]) -> CrudeForm {
        let mut f = CrudeForm::new(ctx, &["v"]).unwrap();
        f.push_term(
            Polynomial::parse(ctx, num).unwrap(),
            factors
                .iter()
                .map(|e| Monomial::from_exponents(e))
                .collect(),
        )
        .unwrap();
        f
    }

    #[test]
    fn elliott_base_case() {
        let c = ctx_xyv();
        let f = form(&c, "1", &[&[1, 0, 1], &[0, 1, -1]]);
        let out = f.eliminate("v").unwrap();
        let g = out
            .to_gf(&VariableContext::new(["x", "y"]).unwrap())
            .unwrap();
        assert!(g.num().is_one());
        assert_eq!(g.den().to_text(), "(1 - x)*(1 - x*y)");
        assert!(series_semantics_hold(&f, "v", 8).unwrap());
    }

    #[test]
    fn negative_numerator_power() {
        let c = ctx_xyv();
        let f = form(&c, "v^-1", &[&[1, 0, 1]]);
        let g = f
            .eliminate("v")
            .unwrap()
            .to_gf(&VariableContext::new(["x", "y"]).unwrap())
            .unwrap();
        assert_eq!(g.num().to_text(), "x");
        assert_eq!(g.den().to_text(), "(1 - x)");
        assert!(series_semantics_hold(&f, "v", 8).unwrap());
    }

    #[test]
    fn v_free_form_is_unchanged() {
        let c = ctx_xyv();
        let f = form(&c, "x - 2*y", &[&[1, 1, 0]]);
        let out = f.eliminate("v").unwrap();
        assert_eq!(out.terms(), f.terms());
    }

    #[test]
    fn rejects_large_exponents() {
        let c = ctx_xyv();
        let f = form(&c, "1", &[&[1, 0, 2]]);
        assert_eq!(
            f.eliminate("v").unwrap_err(),
            Error::BadEliminationExponent {
                var: "v".into(),
                exponent: 2
            }
        );
        assert!(matches!(
            f.eliminate("x"),
            Err(Error::NotEliminationVariable(_))
        ));
    }

    #[test]
    fn p22_matches_printed_output() {
        let p = p22_via_omega().unwrap();
        assert_eq!(p.value.num().to_text(), "-x11^2*x12*x21 + 1");
        let c = box_context(2);
        let mut den: Vec<String> = p.value.den().iter().map(|m| m.to_text(&c)).collect();
        den.sort();
        let mut expected = vec![
            "x11",
            "x11*x12",
            "x11*x12*x21*x22",
            "x11*x21",
            "x11*x12*x21",
        ];
        expected.sort();
        assert_eq!(den, expected);
    }

    #[test]
    fn to_gf_requires_full_elimination() {
        let f = p22_setup();
        assert!(f.to_gf(&box_context(2)).is_err());
    }
}
