//! The cone of plane partitions with two rows and `k` columns.
//!
//! Coordinates are `(lambda_1..lambda_k, mu_1..mu_k)`. The cone is the order
//! cone of the `2 x k` grid poset whose cells are those coordinates, with
//! `lambda_i` above `lambda_{i+1}`, `mu_i` above `mu_{i+1}` and `lambda_i`
//! above `mu_i`. Its Hilbert basis is the set of nonzero 0/1 members, the
//! staircase vectors `(1^a 0^(k-a) | 1^c 0^(k-c))` with `a >= max(c, 1)`.
//!
//! Every linear extension of the grid poset (a top-to-bottom listing of the
//! cells) gives a unimodular simplicial cone spanned by the indicator
//! vectors of its prefixes. These cones triangulate the order cone. Cells
//! are labelled by coordinate index (`lambda` row first), which is a natural
//! labelling, so marking the prefix rays that end in a descent turns the
//! triangulation into a disjoint half-open decomposition.

use std::fmt;

use crate::error::{Error, Result};
use crate::multipoly::{Monomial, Polynomial, VariableContext};
use crate::ratgf::FactoredGF;

/// A 0/1 generator of the cone, stored as its staircase shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    pub k: usize,
    pub a: usize,
    pub c: usize,
}

impl Ray {
    pub fn new(k: usize, a: usize, c: usize) -> Result<Self> {
        if a < 1 || a > k || c > a {
            return Err(Error::OutOfRange(format!(
                "no ray with a={a} c={c} at k={k}"
            )));
        }
        Ok(Ray { k, a, c })
    }

    /// The ray whose coordinates are the indicator of `cells`, if that
    /// indicator is a nonzero up-set.
    pub fn from_indicator(v: &[i64]) -> Option<Ray> {
        let k = v.len() / 2;
        if v.len() != 2 * k || k == 0 {
            return None;
        }
        let run = |half: &[i64]| {
            let a = half.iter().take_while(|&&x| x == 1).count();
            half[a..].iter().all(|&x| x == 0).then_some(a)
        };
        let a = run(&v[..k])?;
        let c = run(&v[k..])?;
        Ray::new(k, a, c).ok()
    }

    pub fn vector(&self) -> Vec<i64> {
        let mut v = vec![0; 2 * self.k];
        v[..self.a].fill(1);
        v[self.k..self.k + self.c].fill(1);
        v
    }

    /// `(x y)^r` in the plane-partition context.
    pub fn monomial(&self) -> Monomial {
        let e: Vec<i32> = self.vector().iter().map(|&x| x as i32).collect();
        Monomial::from_exponents(&e)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vector().iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Integer point `(lambda | mu)` of the ambient lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn k(&self) -> usize {
        self.0.len() / 2
    }
}

/// Hilbert basis of the cone: all `(a, c)` with `1 <= a <= k`, `0 <= c <= a`,
/// in lexicographic order.
pub fn rays_uk(k: usize) -> Vec<Ray> {
    (1..=k)
        .flat_map(|a| (0..=a).map(move |c| Ray { k, a, c }))
        .collect()
}

/// Membership in the cone: both rows weakly decreasing and nonnegative,
/// `lambda >= mu` componentwise.
pub fn is_member(p: &LatticePoint, k: usize) -> bool {
    let v = &p.0;
    if v.len() != 2 * k {
        return false;
    }
    let (lam, mu) = v.split_at(k);
    lam.iter().chain(mu).all(|&x| x >= 0)
        && lam.windows(2).all(|w| w[0] >= w[1])
        && mu.windows(2).all(|w| w[0] >= w[1])
        && lam.iter().zip(mu).all(|(l, m)| l >= m)
}

/// Whether a member is a nonzero point with no splitting `p = u + v` into
/// two nonzero members. Searches every member `u` dominated by `p`.
pub fn is_irreducible(p: &LatticePoint, k: usize) -> Result<bool> {
    if !is_member(p, k) {
        return Err(Error::NonMember);
    }
    if p.0.iter().all(|&x| x == 0) {
        return Ok(false);
    }
    Ok(find_split(p, k).is_none())
}

/// A nonzero member `u != p` with `p - u` a member, if one exists.
pub fn find_split(p: &LatticePoint, k: usize) -> Option<LatticePoint> {
    let n = p.0.len();
    let mut u = vec![0i64; n];
    loop {
        // odometer over 0 <= u <= p
        let mut i = 0;
        while i < n {
            if u[i] < p.0[i] {
                u[i] += 1;
                break;
            }
            u[i] = 0;
            i += 1;
        }
        if i == n {
            return None;
        }
        if u == p.0 {
            continue;
        }
        let cand = LatticePoint(u.clone());
        let rest = LatticePoint(p.0.iter().zip(&u).map(|(a, b)| a - b).collect());
        if is_member(&cand, k) && is_member(&rest, k) {
            return Some(cand);
        }
    }
}

/// Writes a member as a sum of Hilbert basis elements by repeatedly
/// peeling off its support.
pub fn decompose(p: &LatticePoint, k: usize) -> Result<Vec<Ray>> {
    if !is_member(p, k) {
        return Err(Error::NonMember);
    }
    let mut rest = p.0.clone();
    let mut out = Vec::new();
    while rest.iter().any(|&x| x != 0) {
        let support: Vec<i64> = rest.iter().map(|&x| i64::from(x > 0)).collect();
        let ray = Ray::from_indicator(&support).ok_or(Error::NonMember)?;
        for (r, s) in rest.iter_mut().zip(&support) {
            *r -= s;
        }
        out.push(ray);
    }
    Ok(out)
}

/// Upper covers of a cell in the `2 x k` grid poset.
fn upper_covers(cell: usize, k: usize) -> impl Iterator<Item = usize> {
    let (row, col) = (cell / k, cell % k);
    let left = (col > 0).then(|| cell - 1);
    let above = (row == 1).then_some(col);
    left.into_iter().chain(above)
}

/// Top-to-bottom listing of the `2k` cells; every prefix is an up-set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearExtension {
    pub k: usize,
    pub order: Vec<usize>,
}

impl LinearExtension {
    pub fn is_valid(&self) -> bool {
        let n = 2 * self.k;
        if self.order.len() != n {
            return false;
        }
        let mut placed = vec![false; n];
        for &cell in &self.order {
            if cell >= n || placed[cell] || upper_covers(cell, self.k).any(|u| !placed[u]) {
                return false;
            }
            placed[cell] = true;
        }
        true
    }

    /// Positions `i` (0-based, `i < 2k - 1`) with `order[i] > order[i + 1]`.
    pub fn descents(&self) -> Vec<usize> {
        self.order
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i)
            .collect()
    }

    /// Indicator rays of the nonempty prefixes.
    pub fn prefix_rays(&self) -> Vec<Ray> {
        let mut v = vec![0i64; 2 * self.k];
        self.order
            .iter()
            .map(|&cell| {
                v[cell] = 1;
                Ray::from_indicator(&v).expect("prefixes of a linear extension are up-sets")
            })
            .collect()
    }
}

fn extend(
    k: usize,
    placed: &mut Vec<bool>,
    order: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if order.len() == 2 * k {
        visit(order);
        return;
    }
    for cell in 0..2 * k {
        if !placed[cell] && upper_covers(cell, k).all(|u| placed[u]) {
            placed[cell] = true;
            order.push(cell);
            extend(k, placed, order, visit);
            order.pop();
            placed[cell] = false;
        }
    }
}

fn for_each_extension(k: usize, visit: &mut dyn FnMut(&[usize])) {
    let mut placed = vec![false; 2 * k];
    let mut order = Vec::with_capacity(2 * k);
    extend(k, &mut placed, &mut order, visit);
}

/// All linear extensions of the grid poset, in lexicographic order of the
/// cell sequence.
pub fn linear_extensions(k: usize) -> Vec<LinearExtension> {
    let mut out = Vec::new();
    for_each_extension(k, &mut |o| {
        out.push(LinearExtension {
            k,
            order: o.to_vec(),
        })
    });
    out
}

/// Number of linear extensions, by the same backtracking without storing them.
pub fn count_linear_extensions(k: usize) -> u64 {
    let mut n = 0u64;
    for_each_extension(k, &mut |_| n += 1);
    n
}

/// A simplicial cone of the triangulation with its half-open marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCone {
    pub rays: Vec<Ray>,
    /// Indices into `rays` whose coefficient must be at least 1.
    pub halfopen_marks: Vec<usize>,
}

impl SimplicialCone {
    pub fn from_extension(ext: &LinearExtension) -> Self {
        SimplicialCone {
            rays: ext.prefix_rays(),
            halfopen_marks: ext.descents(),
        }
    }

    /// Determinant of the matrix whose rows are the ray vectors.
    pub fn determinant(&self) -> i128 {
        let rows: Vec<Vec<i128>> = self
            .rays
            .iter()
            .map(|r| r.vector().into_iter().map(i128::from).collect())
            .collect();
        bareiss_determinant(rows)
    }

    /// Coordinates of `p` in the ray basis. The rays are nested prefix
    /// indicators, so the coordinate of ray `i` is the difference of `p` at
    /// the cells added at steps `i` and `i + 1`.
    pub fn coordinates(&self, p: &LatticePoint) -> Vec<i64> {
        let cells = self.cell_order();
        (0..cells.len())
            .map(|i| {
                let next = cells.get(i + 1).map_or(0, |&c| p.0[c]);
                p.0[cells[i]] - next
            })
            .collect()
    }

    fn cell_order(&self) -> Vec<usize> {
        let mut prev = vec![0i64; self.rays.first().map_or(0, |r| 2 * r.k)];
        self.rays
            .iter()
            .map(|r| {
                let v = r.vector();
                let cell = v
                    .iter()
                    .zip(&prev)
                    .position(|(a, b)| a != b)
                    .expect("consecutive rays differ in one cell");
                prev = v;
                cell
            })
            .collect()
    }

    /// Whether `p` lies in the half-open cone (marked coordinates `>= 1`).
    pub fn contains_halfopen(&self, p: &LatticePoint) -> bool {
        let coords = self.coordinates(p);
        coords.iter().all(|&c| c >= 0) && self.halfopen_marks.iter().all(|&i| coords[i] >= 1)
    }

    /// `Π_marked (xy)^r / Π_all (1 - (xy)^r)`.
    pub fn generating_function(&self) -> FactoredGF {
        let k = self.rays[0].k;
        let ctx = VariableContext::plane_partition(k);
        let num = self
            .halfopen_marks
            .iter()
            .fold(Monomial::one(2 * k), |m, &i| {
                m.mul(&self.rays[i].monomial())
            });
        FactoredGF::with_factors(
            Polynomial::monomial(&ctx, num),
            self.rays.iter().map(Ray::monomial),
        )
        .expect("rays are nonzero 0/1 vectors")
    }
}

fn bareiss_determinant(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..n {
        if a[i][i] == 0 {
            match (i + 1..n).find(|&r| a[r][i] != 0) {
                Some(r) => {
                    a.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..n {
            for c in i + 1..n {
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev;
            }
            a[r][i] = 0;
        }
        prev = a[i][i];
    }
    sign * a[n - 1][n - 1]
}

/// One simplicial cone per linear extension.
pub fn triangulation(k: usize) -> Vec<SimplicialCone> {
    linear_extensions(k)
        .iter()
        .map(SimplicialCone::from_extension)
        .collect()
}

/// `Q~_k` as the sum of the half-open cone generating functions, reduced.
pub fn gf_via_triangulation(k: usize) -> FactoredGF {
    let ctx = VariableContext::plane_partition(k);
    triangulation(k)
        .iter()
        .fold(FactoredGF::zero(&ctx), |acc, cone| {
            acc.add(&cone.generating_function()).expect("same context")
        })
        .reduce()
}

/// The numerator over all five rays of the width-2 cone obtained from the
/// two-cone triangulation `{r0,r1,r2,r4}`, `{r1,r2,r3,r4}` by
/// inclusion-exclusion over their common face `{r1,r2,r4}`.
pub fn inclusion_exclusion_k2() -> Polynomial {
    let ctx = VariableContext::plane_partition(2);
    let r = rays_uk(2);
    let missing = |absent: &[usize]| {
        absent.iter().fold(Polynomial::one(&ctx), |acc, &i| {
            acc.mul_one_minus(&r[i].monomial())
        })
    };
    // each cone contributes the product of (1 - (xy)^r) over the rays it lacks
    &(&missing(&[3]) + &missing(&[0])) - &missing(&[0, 3])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_rays() {
        let v: Vec<Vec<i64>> = rays_uk(2).iter().map(Ray::vector).collect();
        assert_eq!(
            v,
            vec![
                vec![1, 0, 0, 0],
                vec![1, 0, 1, 0],
                vec![1, 1, 0, 0],
                vec![1, 1, 1, 0],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(rays_uk(12).len(), 90);
    }

    #[test]
    fn membership() {
        assert!(is_member(&LatticePoint(vec![2, 1, 1, 0]), 2));
        assert!(!is_member(&LatticePoint(vec![1, 2, 0, 0]), 2));
        assert!(!is_member(&LatticePoint(vec![1, 0, 1, 1]), 2));
        assert!(!is_member(&LatticePoint(vec![1, 0, 0]), 2));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&LatticePoint(vec![1, 1, 1, 0]), 2).unwrap());
        let p = LatticePoint(vec![2, 1, 1, 0]);
        assert!(!is_irreducible(&p, 2).unwrap());
        let u = find_split(&p, 2).unwrap();
        assert!(is_member(&u, 2));
        assert!(!is_irreducible(&LatticePoint(vec![0, 0, 0, 0]), 2).unwrap());
        assert_eq!(
            is_irreducible(&LatticePoint(vec![0, 1, 0, 0]), 2),
            Err(Error::NonMember)
        );
    }

    #[test]
    fn extension_counts() {
        assert_eq!(linear_extensions(2).len(), 2);
        assert_eq!(linear_extensions(3).len(), 5);
        assert_eq!(count_linear_extensions(4), 14);
        assert!(linear_extensions(4).iter().all(LinearExtension::is_valid));
    }

    #[test]
    fn k1_triangulation_is_the_cone() {
        let g = gf_via_triangulation(1);
        let c = VariableContext::plane_partition(1);
        assert!(g.num().is_one());
        let f: Vec<String> = g.den().iter().map(|m| m.to_text(&c)).collect();
        assert_eq!(f, ["x1", "x1*y1"]);
    }

    #[test]
    fn k3_cones_are_unimodular() {
        for cone in triangulation(3) {
            assert_eq!(cone.determinant().abs(), 1);
            assert_eq!(cone.rays.len(), 6);
        }
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(bareiss_determinant(vec![vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(bareiss_determinant(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(bareiss_determinant(vec![vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn inclusion_exclusion_value() {
        assert_eq!(inclusion_exclusion_k2().to_text(), "-x1^2*y1*x2 + 1");
    }

    #[test]
    fn decompose_recovers_point() {
        let p = LatticePoint(vec![3, 2, 1, 2, 1, 0]);
        let parts = decompose(&p, 3).unwrap();
        let mut sum = vec![0; 6];
        for r in &parts {
            for (s, x) in sum.iter_mut().zip(r.vector()) {
                *s += x;
            }
        }
        assert_eq!(sum, p.0);
        assert_eq!(parts.len(), 3);
    }
}
