//! Composite Gauss-Legendre quadrature with panel doubling.
//!
//! Fixed-order panels over a finite interval; the panel count doubles until
//! two successive composite estimates agree to a relative tolerance. Node
//! positions never include interval endpoints, which the callers rely on
//! (integrands may be singular or undefined at zero gain).

// Interval guards are written as negations so NaN bounds fall into the
// empty-interval branch instead of iterating.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;

/// Per-axis node budget exhausted before two levels agreed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct NonConvergence;

pub(crate) struct GaussRule {
    /// Nodes on [-1, 1], ascending.
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// (P_n(x), P_{n-1}(x)) by the three-term recurrence; n >= 1.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    for k in 2..=n {
        let next = ((2 * k - 1) as f64 * x * cur - (k - 1) as f64 * prev) / k as f64;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

impl GaussRule {
    /// Builds the rule by Newton iteration on the Legendre recurrence.
    pub(crate) fn with_order(order: usize) -> Self {
        assert!(order >= 2);
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            for _ in 0..100 {
                let (pn, pn_prev) = legendre_pair(order, x);
                let dp = n * (x * pn - pn_prev) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() <= 1e-15 {
                    break;
                }
            }
            let (pn, pn_prev) = legendre_pair(order, x);
            let dp = n * (x * pn - pn_prev) / (x * x - 1.0);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub(crate) fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Composite estimate of the integral over [a, b] with `panels` equal
    /// panels; 0 when the interval is empty.
    pub(crate) fn composite_1d(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        f: &mut dyn FnMut(f64) -> f64,
    ) -> f64 {
        if !(b > a) {
            return 0.0;
        }
        let h = (b - a) / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            let mid = a + h * (p as f64 + 0.5);
            let mut acc = 0.0;
            for (t, w) in self.nodes.iter().zip(&self.weights) {
                acc += w * f(mid + 0.5 * h * t);
            }
            total += acc;
        }
        total * 0.5 * h
    }

    /// Tensor-product composite estimate over [ax, bx] x [ay, by] with the
    /// same panel count on both axes.
    fn composite_2d(
        &self,
        ax: f64,
        bx: f64,
        ay: f64,
        by: f64,
        panels: usize,
        f: &mut dyn FnMut(f64, f64) -> f64,
    ) -> f64 {
        if !(bx > ax) || !(by > ay) {
            return 0.0;
        }
        let hx = (bx - ax) / panels as f64;
        let hy = (by - ay) / panels as f64;
        let mut total = 0.0;
        for px in 0..panels {
            let mx = ax + hx * (px as f64 + 0.5);
            for (tx, wx) in self.nodes.iter().zip(&self.weights) {
                let x = mx + 0.5 * hx * tx;
                let mut row = 0.0;
                for py in 0..panels {
                    let my = ay + hy * (py as f64 + 0.5);
                    for (ty, wy) in self.nodes.iter().zip(&self.weights) {
                        row += wy * f(x, my + 0.5 * hy * ty);
                    }
                }
                total += wx * row;
            }
        }
        total * 0.25 * hx * hy
    }
}

fn agreed(prev: f64, cur: f64, rel_tol: f64) -> bool {
    (cur - prev).abs() <= rel_tol * cur.abs().max(prev.abs()).max(f64::MIN_POSITIVE)
}

/// Doubles the panel count until two successive estimates agree to
/// rel_tol; errors once the per-axis node count would exceed max_nodes.
pub(crate) fn converge_1d(
    rule: &GaussRule,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_nodes: usize,
    f: &mut dyn FnMut(f64) -> f64,
) -> Result<f64, NonConvergence> {
    if !(b > a) {
        return Ok(0.0);
    }
    let mut panels = 1;
    let mut prev = rule.composite_1d(a, b, panels, f);
    loop {
        panels *= 2;
        if panels * rule.order() > max_nodes {
            return Err(NonConvergence);
        }
        let cur = rule.composite_1d(a, b, panels, f);
        if agreed(prev, cur, rel_tol) {
            return Ok(cur);
        }
        prev = cur;
    }
}

/// 2-D analogue of `converge_1d` over [ax, bx] x [ay, by].
#[allow(clippy::too_many_arguments)]
pub(crate) fn converge_2d(
    rule: &GaussRule,
    ax: f64,
    bx: f64,
    ay: f64,
    by: f64,
    rel_tol: f64,
    max_nodes: usize,
    f: &mut dyn FnMut(f64, f64) -> f64,
) -> Result<f64, NonConvergence> {
    if !(bx > ax) || !(by > ay) {
        return Ok(0.0);
    }
    let mut panels = 1;
    let mut prev = rule.composite_2d(ax, bx, ay, by, panels, f);
    loop {
        panels *= 2;
        if panels * rule.order() > max_nodes {
            return Err(NonConvergence);
        }
        let cur = rule.composite_2d(ax, bx, ay, by, panels, f);
        if agreed(prev, cur, rel_tol) {
            return Ok(cur);
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_measure() {
        for order in [2, 8, 16, 17] {
            let rule = GaussRule::with_order(order);
            let sum: f64 = rule.weights.iter().sum();
            assert!((sum - 2.0).abs() < 1e-13, "order {order}: {sum}");
        }
    }

    #[test]
    fn nodes_sorted_and_interior() {
        let rule = GaussRule::with_order(16);
        for pair in rule.nodes.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        assert!(rule.nodes[0] > -1.0 && rule.nodes[15] < 1.0);
    }

    #[test]
    fn exact_on_low_degree_polynomials() {
        let rule = GaussRule::with_order(8);
        // One 8-point panel integrates degree <= 15 exactly.
        let got = rule.composite_1d(0.0, 2.0, 1, &mut |x| x.powi(15));
        let want = 2.0f64.powi(16) / 16.0;
        assert!((got - want).abs() < 1e-10 * want);
    }

    #[test]
    fn converges_on_exponential_tail() {
        let rule = GaussRule::with_order(16);
        let upper = 27.631021115928547; // ln(1e12)
        let got = converge_1d(&rule, 0.0, upper, 1e-10, 512, &mut |x| (-x).exp()).unwrap();
        assert!((got - 1.0).abs() < 1e-10);
    }

    #[test]
    fn converges_on_product_density() {
        let rule = GaussRule::with_order(16);
        let upper = 27.631021115928547;
        let got = converge_2d(&rule, 0.0, upper, 0.0, upper, 1e-9, 512, &mut |x, y| {
            (-x - y).exp()
        })
        .unwrap();
        assert!((got - 1.0).abs() < 1e-8);
    }

    #[test]
    fn empty_interval_is_zero() {
        let rule = GaussRule::with_order(16);
        assert_eq!(
            converge_1d(&rule, 3.0, 3.0, 1e-6, 512, &mut |_| 1.0).unwrap(),
            0.0
        );
        assert_eq!(
            converge_1d(&rule, 5.0, 3.0, 1e-6, 512, &mut |_| 1.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn reports_non_convergence_on_tiny_budget() {
        let rule = GaussRule::with_order(16);
        let r = converge_1d(&rule, 0.0, 1.0, 1e-12, 32, &mut |x| (40.0 * x).sin().abs());
        assert_eq!(r, Err(NonConvergence));
    }
}
