//! Brute-force enumeration of plane partitions with two rows, used as the
//! ground truth that every symbolic route is checked against.

use std::cmp::Reverse;
use std::fmt;

use num_bigint::BigInt;

use crate::multipoly::{Monomial, Polynomial, VariableContext};

/// A pair `(lambda | mu)` of weakly decreasing rows with `lambda >= mu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePartition2xK {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
}

impl PlanePartition2xK {
    pub fn new(lambda: Vec<u32>, mu: Vec<u32>) -> Option<Self> {
        let pp = PlanePartition2xK { lambda, mu };
        pp.is_valid().then_some(pp)
    }

    pub fn is_valid(&self) -> bool {
        self.lambda.len() == self.mu.len()
            && self.lambda.windows(2).all(|w| w[0] >= w[1])
            && self.mu.windows(2).all(|w| w[0] >= w[1])
            && self.lambda.iter().zip(&self.mu).all(|(l, m)| l >= m)
    }

    pub fn width(&self) -> usize {
        self.lambda.len()
    }

    pub fn size(&self) -> u32 {
        self.lambda.iter().chain(&self.mu).sum()
    }

    pub fn top_size(&self) -> u32 {
        self.lambda.iter().sum()
    }

    /// `x^lambda y^mu`.
    pub fn monomial(&self) -> Monomial {
        let e: Vec<i32> = self
            .lambda
            .iter()
            .chain(&self.mu)
            .map(|&v| v as i32)
            .collect();
        Monomial::from_exponents(&e)
    }
}

impl fmt::Display for PlanePartition2xK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[u32]| r.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", row(&self.lambda), row(&self.mu))
    }
}

#[derive(Clone, Copy)]
enum Bound {
    Total(u32),
    Top(u32),
}

/// All plane partitions of width `k` with `|lambda| + |mu| <= max_size`;
/// with `strict_last`, only those with `lambda_k >= 1`. Ordered by size,
/// then descending `(lambda, mu)`.
pub fn enumerate_pp(k: usize, max_size: u32, strict_last: bool) -> Vec<PlanePartition2xK> {
    enumerate_bounded(k, Bound::Total(max_size), strict_last)
}

/// Same, but bounding only the top row: `|lambda| <= max_top`.
pub fn enumerate_pp_top_row(k: usize, max_top: u32, strict_last: bool) -> Vec<PlanePartition2xK> {
    enumerate_bounded(k, Bound::Top(max_top), strict_last)
}

fn enumerate_bounded(k: usize, bound: Bound, strict_last: bool) -> Vec<PlanePartition2xK> {
    let limit = match bound {
        Bound::Total(n) | Bound::Top(n) => n,
    };
    let mut out = Vec::new();
    let mut lambda = vec![0u32; k];
    let mut mu = vec![0u32; k];
    fill_lambda(
        0,
        limit,
        limit,
        strict_last,
        bound,
        &mut lambda,
        &mut mu,
        &mut out,
    );
    out.sort_by_key(|p| (p.size(), Reverse(p.clone())));
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_lambda(
    i: usize,
    cap: u32,
    budget: u32,
    strict_last: bool,
    bound: Bound,
    lambda: &mut Vec<u32>,
    mu: &mut Vec<u32>,
    out: &mut Vec<PlanePartition2xK>,
) {
    let k = lambda.len();
    if i == k {
        if strict_last && k > 0 && lambda[k - 1] == 0 {
            return;
        }
        let mu_budget = match bound {
            Bound::Total(n) => n - lambda.iter().sum::<u32>(),
            Bound::Top(_) => u32::MAX,
        };
        fill_mu(0, u32::MAX, mu_budget, lambda, mu, out);
        return;
    }
    for v in (0..=cap.min(budget)).rev() {
        lambda[i] = v;
        fill_lambda(i + 1, v, budget - v, strict_last, bound, lambda, mu, out);
    }
}

fn fill_mu(
    i: usize,
    cap: u32,
    budget: u32,
    lambda: &[u32],
    mu: &mut Vec<u32>,
    out: &mut Vec<PlanePartition2xK>,
) {
    if i == lambda.len() {
        out.push(PlanePartition2xK {
            lambda: lambda.to_vec(),
            mu: mu.clone(),
        });
        return;
    }
    for v in (0..=cap.min(lambda[i]).min(budget)).rev() {
        mu[i] = v;
        fill_mu(i + 1, v, budget - v, lambda, mu, out);
    }
}

/// `Σ x^lambda y^mu` over [`enumerate_pp`].
pub fn oracle_series(k: usize, max_size: u32, strict_last: bool) -> Polynomial {
    series_of(k, &enumerate_pp(k, max_size, strict_last))
}

/// `Σ x^lambda y^mu` over [`enumerate_pp_top_row`].
pub fn oracle_series_top_row(k: usize, max_top: u32, strict_last: bool) -> Polynomial {
    series_of(k, &enumerate_pp_top_row(k, max_top, strict_last))
}

fn series_of(k: usize, pps: &[PlanePartition2xK]) -> Polynomial {
    let ctx = VariableContext::plane_partition(k);
    Polynomial::from_terms(&ctx, pps.iter().map(|p| (p.monomial(), BigInt::from(1))))
        .expect("monomials have width 2k")
}
