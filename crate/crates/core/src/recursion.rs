//! The multigraded rational recursion for `Q_k` and its running sums `Q~_k`.
//!
//! `Q_k` enumerates pairs `mu <= lambda` where `lambda` has exactly `k` parts,
//! weighted `x^lambda y^mu`; `Q~_k` drops the "exactly" and so enumerates
//! plane partitions with two rows and at most `k` columns. With
//! `p_a = x1..xa` and `q_c = y1..yc`,
//!
//! ```text
//! Q_0 = 1
//! Q_k = x_k Q_{k-1} / (1 - p_k)
//!     + Σ_{0 <= i < r <= k} p_k q_r / ((1 - p_k)(1 - p_r q_r)) * Q_i * Q_{k-r}(Z_{r,k})
//! ```
//!
//! where `Z_{r,k}` sends `x^1 -> p_{r+1} q_r`, `x^j -> x_{r+j}` (`j >= 2`) and
//! `y^j -> y_{r+j}`. Each canonical `Q_j` lives in its own `2j`-variable
//! context and is memoized once; values of lower width are lifted into wider
//! contexts by the prefix embedding `x^i -> x_i`, `y^i -> y_i`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::multipoly::{Ctx, Monomial, Polynomial, Substitution, VariableContext};
use crate::ratgf::{FactoredDenominator, FactoredGF};

/// Which generating function: `Q_k` (exactly `k` columns) or `Q~_k` (at most `k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Exact,
    Tilde,
}

/// A staircase pair `p_a q_c` of width `k`: `1 <= a <= k`, `0 <= c <= a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StaircasePair {
    pub a: usize,
    pub c: usize,
    pub k: usize,
}

impl StaircasePair {
    pub fn new(a: usize, c: usize, k: usize) -> Result<Self> {
        if a < 1 || a > k || c > a {
            return Err(Error::OutOfRange(format!(
                "staircase pair needs 1 <= a <= k and c <= a, got a={a} c={c} k={k}"
            )));
        }
        Ok(StaircasePair { a, c, k })
    }

    pub fn monomial(&self) -> Monomial {
        let mut e = vec![0; 2 * self.k];
        e[..self.a].fill(1);
        e[self.k..self.k + self.c].fill(1);
        Monomial::from_exponents(&e)
    }

    /// All pairs of width `k` in lexicographic `(a, c)` order.
    pub fn all(k: usize) -> impl Iterator<Item = StaircasePair> {
        (1..=k).flat_map(move |a| (0..=a).map(move |c| StaircasePair { a, c, k }))
    }
}

/// `x1..xa * y1..yc` in the width-`k` context.
pub fn staircase_monomial(a: usize, c: usize, k: usize) -> Result<Monomial> {
    Ok(StaircasePair::new(a, c, k)?.monomial())
}

/// `p_a q_c` without the `a >= 1` requirement, for `q_r` and friends.
fn product_monomial(a: usize, c: usize, k: usize) -> Monomial {
    let mut e = vec![0; 2 * k];
    e[..a].fill(1);
    e[k..k + c].fill(1);
    Monomial::from_exponents(&e)
}

/// `D_k`: one factor `(1 - p_a q_c)` per staircase pair of width `k`.
pub fn denominator_dk(k: usize) -> Result<FactoredDenominator> {
    if k == 0 {
        return Err(Error::OutOfRange("D_k needs k >= 1".into()));
    }
    let ctx = VariableContext::plane_partition(k);
    FactoredDenominator::from_factors(&ctx, StaircasePair::all(k).map(|p| p.monomial()))
}

/// The substitution `Z_{r,k}` from the width-`(k-r)` context into width `k`.
#[derive(Debug, Clone)]
pub struct SubstitutionPlan {
    pub r: usize,
    pub k: usize,
    pub map: Substitution,
}

impl SubstitutionPlan {
    pub fn new(r: usize, k: usize) -> Result<Self> {
        if r >= k {
            return Err(Error::OutOfRange(format!(
                "Z_(r,k) needs r < k, got r={r} k={k}"
            )));
        }
        let w = k - r;
        let source = VariableContext::plane_partition(w);
        let target = VariableContext::plane_partition(k);
        let mut images = Vec::with_capacity(2 * w);
        images.push(product_monomial(r + 1, r, k));
        for j in 2..=w {
            images.push(Monomial::var(2 * k, r + j - 1));
        }
        for j in 1..=w {
            images.push(Monomial::var(2 * k, k + r + j - 1));
        }
        let map = Substitution::from_images(&source, &target, images)?;
        Ok(SubstitutionPlan { r, k, map })
    }
}

/// Prefix embedding of a width-`j` value into width `k >= j`.
pub fn embed(g: &FactoredGF, k: usize) -> Result<FactoredGF> {
    let j = g.ctx().arity() / 2;
    if j > k {
        return Err(Error::OutOfRange(format!(
            "cannot embed width {j} into width {k}"
        )));
    }
    if j == k {
        return Ok(g.clone());
    }
    let images = (0..j)
        .map(|i| Monomial::var(2 * k, i))
        .chain((0..j).map(|i| Monomial::var(2 * k, k + i)))
        .collect();
    let map = Substitution::from_images(g.ctx(), &VariableContext::plane_partition(k), images)?;
    g.substitute(&map)
}

/// Write-once memo of canonical `Q_j`, safe to share between threads.
#[derive(Default)]
pub struct Recursion {
    memo: Mutex<HashMap<usize, Arc<OnceLock<Arc<FactoredGF>>>>>,
}

impl Recursion {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide instance used by the free functions of this module.
    pub fn shared() -> &'static Recursion {
        static SHARED: OnceLock<Recursion> = OnceLock::new();
        SHARED.get_or_init(Recursion::new)
    }

    /// Canonical (reduced) `Q_k` in the width-`k` context.
    pub fn q(&self, k: usize) -> Arc<FactoredGF> {
        let cell = {
            let mut memo = self.memo.lock().expect("memo lock poisoned");
            memo.entry(k).or_default().clone()
        };
        cell.get_or_init(|| Arc::new(self.compute_q(k))).clone()
    }

    fn compute_q(&self, k: usize) -> FactoredGF {
        let ctx = VariableContext::plane_partition(k);
        if k == 0 {
            return FactoredGF::one(&ctx);
        }
        let p_k = product_monomial(k, 0, k);
        let x_k = Monomial::var(2 * k, k - 1);

        let prev = embed(&self.q(k - 1), k).expect("k-1 < k");
        let lead = FactoredGF::with_factors(Polynomial::monomial(&ctx, x_k), [p_k.clone()])
            .expect("p_k is a valid factor");
        let mut acc = lead.mul(&prev).expect("same context").reduce();

        for r in 1..=k {
            let q_r = product_monomial(0, r, k);
            let prefactor = FactoredGF::with_factors(
                Polynomial::monomial(&ctx, p_k.mul(&q_r)),
                [p_k.clone(), product_monomial(r, r, k)],
            )
            .expect("staircase factors");
            let tail = if r == k {
                FactoredGF::one(&ctx)
            } else {
                let plan = SubstitutionPlan::new(r, k).expect("r < k");
                self.q(k - r)
                    .substitute(&plan.map)
                    .expect("plan matches the width-(k-r) context")
            };
            let shared = prefactor.mul(&tail).expect("same context");
            for i in 0..r {
                let term = shared
                    .mul(&embed(&self.q(i), k).expect("i < k"))
                    .expect("same context");
                acc = acc.add(&term).expect("same context").reduce();
            }
        }
        acc
    }

    /// Canonical `Q~_k = Σ_{j<=k} Q_j` in the width-`k` context.
    pub fn q_tilde(&self, k: usize) -> FactoredGF {
        let mut acc = FactoredGF::one(&VariableContext::plane_partition(k));
        for j in 1..=k {
            let term = embed(&self.q(j), k).expect("j <= k");
            acc = acc.add(&term).expect("same context").reduce();
        }
        acc
    }
}

/// `Q_k`, memoized process-wide.
pub fn compute_q(k: usize) -> FactoredGF {
    Recursion::shared().q(k).as_ref().clone()
}

/// `Q~_k`.
pub fn compute_q_tilde(k: usize) -> FactoredGF {
    Recursion::shared().q_tilde(k)
}

pub fn compute(k: usize, variant: Variant) -> FactoredGF {
    match variant {
        Variant::Exact => compute_q(k),
        Variant::Tilde => compute_q_tilde(k),
    }
}

/// Image under `y_i -> y` in the context `x1, ..., xk, y`.
pub fn specialize_single_y(g: &FactoredGF, k: usize) -> Result<FactoredGF> {
    let source = g.ctx();
    if source.arity() != 2 * k {
        return Err(Error::ArityMismatch {
            expected: 2 * k,
            found: source.arity(),
        });
    }
    g.substitute(&single_y_map(source, k)?)
}

/// Same substitution, applied to a bare polynomial.
pub fn specialize_polynomial(p: &Polynomial, k: usize) -> Result<Polynomial> {
    p.substitute(&single_y_map(p.ctx(), k)?)
}

pub fn specialize_denominator(d: &FactoredDenominator, k: usize) -> Result<FactoredDenominator> {
    d.substitute(&single_y_map(d.ctx(), k)?)
}

fn single_y_map(source: &Ctx, k: usize) -> Result<Substitution> {
    let target = VariableContext::single_y(k);
    let images = (0..k)
        .map(|i| Monomial::var(k + 1, i))
        .chain((0..k).map(|_| Monomial::var(k + 1, k)))
        .collect();
    Substitution::from_images(source, &target, images)
}

/// Canonical numerator of `Q_k` or `Q~_k` over `D_k`.
pub fn numerator(k: usize, variant: Variant) -> Result<Polynomial> {
    let dk = denominator_dk(k)?;
    compute(k, variant).clear_to(&dk)
}
