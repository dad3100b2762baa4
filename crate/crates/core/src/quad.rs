//! Quadrature toolkit: Gauss-Legendre panels, compensated accumulation and
//! an adaptive bisection scheme for pairs of integrands.
//!
//! The engine always integrates the free energy and the pressure integrand
//! together, so the adaptive driver works on `[f64; 2]` values and refines a
//! panel until both components settle. Panels are split in two until the
//! halved estimate agrees with the whole-panel estimate within an absolute
//! threshold fixed once per integral (`rel_tol` times the initial composite
//! estimate). The threshold is deliberately not halved along with the
//! panels: the exponential substitutions used by the engine leave integrable
//! logarithmic endpoint behaviour, and a budget that shrinks with the panel
//! would chase that singularity forever, while a fixed threshold terminates
//! the refinement chain geometrically with total error of the order of the
//! threshold itself.
//!
//! Traversal is strictly left to right and accumulation compensated, so a
//! given integrand always produces the same bits.

/// Compensated (Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    /// Fresh accumulator at zero.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one term, carrying the rounding remainder forward.
    pub fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    /// Current value of the sum.
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Builds the n-point rule by Newton iteration on the Legendre
    /// polynomial, from the Chebyshev angle starting guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "GaussRule: need at least 2 points, got {n}");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-15 {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        nodes.reverse();
        weights.reverse();
        Self { nodes, weights }
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True for an empty rule (cannot be constructed).
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to [a, b], ascending in the node.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (c + h * x, h * w))
    }

    /// Integral of a pair-valued function over [a, b] with this rule.
    pub fn integrate_pair<F: FnMut(f64) -> [f64; 2]>(&self, f: &mut F, a: f64, b: f64) -> [f64; 2] {
        let mut acc = [KahanSum::new(), KahanSum::new()];
        for (x, w) in self.mapped(a, b) {
            let v = f(x);
            acc[0].add(w * v[0]);
            acc[1].add(w * v[1]);
        }
        [acc[0].value(), acc[1].value()]
    }
}

/// Legendre polynomial P_n and its derivative at x, by upward recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveResult {
    /// The two integral components.
    pub value: [f64; 2],
    /// False if any panel hit the depth limit before settling.
    pub converged: bool,
}

/// Number of uniform seed panels used for the initial scale estimate.
const SEED_PANELS: usize = 8;

/// Hard refinement limit; 2^-48 of the interval is far below any structure
/// the mapped integrands can carry.
const MAX_DEPTH: u32 = 48;

/// Adaptively integrates a pair-valued function over [a, b] to a relative
/// tolerance, by panel bisection against an absolute threshold derived from
/// an initial composite estimate.
pub fn integrate_adaptive_pair<F: FnMut(f64) -> [f64; 2]>(
    f: &mut F,
    a: f64,
    b: f64,
    rel_tol: f64,
    rule: &GaussRule,
) -> AdaptiveResult {
    let mut seed = Vec::with_capacity(SEED_PANELS);
    let mut scale = [KahanSum::new(), KahanSum::new()];
    for i in 0..SEED_PANELS {
        let lo = a + (b - a) * i as f64 / SEED_PANELS as f64;
        let hi = a + (b - a) * (i + 1) as f64 / SEED_PANELS as f64;
        let v = rule.integrate_pair(f, lo, hi);
        scale[0].add(v[0]);
        scale[1].add(v[1]);
        seed.push((lo, hi, v));
    }
    let floor = f64::MIN_POSITIVE;
    let eps = [
        rel_tol * scale[0].value().abs() + floor,
        rel_tol * scale[1].value().abs() + floor,
    ];

    let mut acc = [KahanSum::new(), KahanSum::new()];
    let mut converged = true;
    for (lo, hi, whole) in seed {
        refine(f, lo, hi, whole, &eps, rule, 0, &mut acc, &mut converged);
    }
    AdaptiveResult {
        value: [acc[0].value(), acc[1].value()],
        converged,
    }
}

#[allow(clippy::too_many_arguments)]
fn refine<F: FnMut(f64) -> [f64; 2]>(
    f: &mut F,
    a: f64,
    b: f64,
    whole: [f64; 2],
    eps: &[f64; 2],
    rule: &GaussRule,
    depth: u32,
    acc: &mut [KahanSum; 2],
    converged: &mut bool,
) {
    let mid = 0.5 * (a + b);
    let left = rule.integrate_pair(f, a, mid);
    let right = rule.integrate_pair(f, mid, b);
    let halved = [left[0] + right[0], left[1] + right[1]];
    let settled = (halved[0] - whole[0]).abs() <= eps[0] && (halved[1] - whole[1]).abs() <= eps[1];
    if settled || depth >= MAX_DEPTH || mid <= a || mid >= b {
        if !settled {
            *converged = false;
        }
        acc[0].add(left[0]);
        acc[1].add(left[1]);
        acc[0].add(right[0]);
        acc[1].add(right[1]);
        return;
    }
    refine(f, a, mid, left, eps, rule, depth + 1, acc, converged);
    refine(f, mid, b, right, eps, rule, depth + 1, acc, converged);
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn five_point_nodes_match_reference() {
        let rule = GaussRule::new(5);
        let want_nodes = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683,
            0.0,
            0.538_469_310_105_683,
            0.906_179_845_938_664,
        ];
        let want_weights = [
            0.236_926_885_056_189,
            0.478_628_670_499_366,
            0.568_888_888_888_889,
            0.478_628_670_499_366,
            0.236_926_885_056_189,
        ];
        for (i, (x, w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
            assert_relative_eq!(*x, want_nodes[i], epsilon = 1e-14);
            assert_relative_eq!(*w, want_weights[i], epsilon = 1e-14);
        }
    }

    #[test]
    fn degree_nine_polynomial_is_exact_with_five_points() {
        let rule = GaussRule::new(5);
        let mut f = |x: f64| [x.powi(9), x.powi(8)];
        let got = rule.integrate_pair(&mut f, 0.0, 1.0);
        assert_relative_eq!(got[0], 0.1, max_relative = 1e-14);
        assert_relative_eq!(got[1], 1.0 / 9.0, max_relative = 1e-14);
    }

    #[test]
    fn adaptive_handles_log_endpoint_singularity() {
        // Int_0^1 -ln(u) du = 1: the exact shape the exponential mapping
        // produces at the far tail.
        let rule = GaussRule::new(40);
        let mut f = |u: f64| [-u.ln(), 1.0];
        let got = integrate_adaptive_pair(&mut f, 0.0, 1.0, 1e-9, &rule);
        assert!(got.converged);
        assert_relative_eq!(got.value[0], 1.0, max_relative = 1e-9);
        assert_relative_eq!(got.value[1], 1.0, max_relative = 1e-12);
    }

    #[test]
    fn adaptive_smooth_pair() {
        let rule = GaussRule::new(20);
        let mut f = |x: f64| [x.exp(), x.cos()];
        let got = integrate_adaptive_pair(&mut f, 0.0, 1.0, 1e-10, &rule);
        assert!(got.converged);
        assert_relative_eq!(got.value[0], std::f64::consts::E - 1.0, max_relative = 1e-12);
        assert_relative_eq!(got.value[1], 1f64.sin(), max_relative = 1e-12);
    }

    #[test]
    fn adaptive_zero_integrand_converges_immediately() {
        let rule = GaussRule::new(10);
        let mut f = |_x: f64| [0.0, 0.0];
        let got = integrate_adaptive_pair(&mut f, 0.0, 1.0, 1e-9, &rule);
        assert!(got.converged);
        assert_eq!(got.value, [0.0, 0.0]);
    }

    #[test]
    fn kahan_beats_naive_summation() {
        let mut kahan = KahanSum::new();
        let mut naive = 0.0f64;
        kahan.add(1.0);
        naive += 1.0;
        for _ in 0..1_000_000 {
            kahan.add(1e-16);
            naive += 1e-16;
        }
        assert_relative_eq!(kahan.value(), 1.0 + 1e-10, max_relative = 1e-15);
        assert!((naive - (1.0 + 1e-10)).abs() > (kahan.value() - (1.0 + 1e-10)).abs());
    }
}
