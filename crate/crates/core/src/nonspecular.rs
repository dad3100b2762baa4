//! Scattering formula over an explicit mode basis.
//!
//! For mirrors that scatter between transverse modes the round trip is an
//! operator, not a number, and the free energy reads
//!
//! ```text
//! F = kB T Sum'_m Tr ln D(i xi_m),   D = I - R1 e^{-KL} R2 e^{-KL}
//! ```
//!
//! with K diagonal in the plane-wave basis, `K_jj = kappa_j`. This module
//! evaluates that trace over a finite basis of (k, polarization) nodes
//! carrying quadrature weights, normalized so the trace measure is
//! `d^2k / (2pi)^2` per unit mirror area; results are energies for 1 m^2.
//!
//! Two discretization conventions coexist, fixed by the operator form:
//! diagonal operators (specular mirrors) keep the weights outside the
//! logs, `Tr ln D = Sum_j w_j ln d_j`, which is the exact per-mode
//! correspondence with the specular engine; dense operators are treated
//! as smooth kernels sampled on the nodes and are symmetrically folded,
//! `R -> W^{1/2} R W^{1/2}`, after which `Tr ln D = ln det(I - ...)` with
//! no further weighting. The two agree on one-node bases of unit weight
//! and serve different inputs otherwise.

use crate::engine::{round_trip_log, Amp, KappaRule, NumericTolerances};
use crate::error::{CasimirError, Result};
use crate::materials::Material;
use crate::quad::KahanSum;
use crate::reflection::Polarization;
use crate::constants::{BOLTZMANN, SPEED_OF_LIGHT};
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

/// One transverse mode: wave vector, polarization and quadrature weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisNode {
    /// x component of the transverse wave vector (rad/m).
    pub kx: f64,
    /// y component of the transverse wave vector (rad/m).
    pub ky: f64,
    pub polarization: Polarization,
    /// Quadrature weight (m^-2, includes the 1/(2pi)^2 mode density).
    pub weight: f64,
}

impl BasisNode {
    fn k(&self) -> f64 {
        f64::hypot(self.kx, self.ky)
    }
}

/// An ordered, validated list of basis nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBasis {
    nodes: Vec<BasisNode>,
}

impl ModeBasis {
    /// Validates and wraps a node list: at least one node, positive finite
    /// weights, finite wave vectors, no duplicate (kx, ky, polarization).
    pub fn new(nodes: Vec<BasisNode>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(CasimirError::Basis("basis must hold at least one node".into()));
        }
        for (j, node) in nodes.iter().enumerate() {
            if !(node.kx.is_finite() && node.ky.is_finite()) {
                return Err(CasimirError::Basis(format!(
                    "node {j} has a non-finite wave vector"
                )));
            }
            if !(node.weight.is_finite() && node.weight > 0.0) {
                return Err(CasimirError::Basis(format!(
                    "node {j} has weight {}, expected > 0",
                    node.weight
                )));
            }
        }
        let mut keys: Vec<(u64, u64, bool, usize)> = nodes
            .iter()
            .enumerate()
            .map(|(j, n)| {
                (
                    n.kx.to_bits(),
                    n.ky.to_bits(),
                    n.polarization == Polarization::TM,
                    j,
                )
            })
            .collect();
        keys.sort_unstable();
        for pair in keys.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 && pair[0].2 == pair[1].2 {
                return Err(CasimirError::Basis(format!(
                    "nodes {} and {} coincide",
                    pair[0].3, pair[1].3
                )));
            }
        }
        Ok(Self { nodes })
    }

    /// Both polarizations on the nodes of a kappa quadrature rule: the TE
    /// block then the TM block, each ascending in kappa, with weights
    /// `v_j kappa_j / (2 pi)` so that summed per-mode logs reproduce the
    /// specular `(1/2pi) Int kappa ln d  d kappa` per polarization.
    pub fn from_kappa_rule(rule: &KappaRule) -> Result<Self> {
        let a = rule.xi / SPEED_OF_LIGHT;
        let mut nodes = Vec::with_capacity(2 * rule.nodes.len());
        for &pol in &Polarization::BOTH {
            for &(kap, v) in &rule.nodes {
                let k = ((kap - a).max(0.0) * (kap + a)).sqrt();
                nodes.push(BasisNode {
                    kx: k,
                    ky: 0.0,
                    polarization: pol,
                    weight: v * kap / (2.0 * PI),
                });
            }
        }
        Self::new(nodes)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[BasisNode] {
        &self.nodes
    }

    /// kappa_j = sqrt(k_j^2 + xi^2/c^2) for every node.
    fn kappas(&self, xi: f64) -> Vec<f64> {
        let a = xi / SPEED_OF_LIGHT;
        self.nodes.iter().map(|n| f64::hypot(n.k(), a)).collect()
    }
}

/// What an operator stands for in the round trip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorRole {
    Reflection1,
    Reflection2,
    Propagation,
}

#[derive(Debug, Clone, PartialEq)]
enum OperatorForm {
    Diagonal(Vec<f64>),
    Dense(DMatrix<f64>),
}

/// A real operator on the mode basis at one imaginary frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator {
    role: OperatorRole,
    form: OperatorForm,
}

impl ModeOperator {
    /// Specular mirror: diagonal Fresnel amplitudes of `material` at
    /// frequency `xi`, one entry per basis node.
    pub fn diagonal_fresnel(
        basis: &ModeBasis,
        xi: f64,
        material: &Material,
        role: OperatorRole,
    ) -> Result<Self> {
        reflection_role(role)?;
        if !(xi.is_finite() && xi >= 0.0) {
            return Err(CasimirError::Domain(format!(
                "frequency must be >= 0, got {xi}"
            )));
        }
        material.validate()?;
        let amp_te = Amp::build(material, xi, Polarization::TE)?;
        let amp_tm = Amp::build(material, xi, Polarization::TM)?;
        let a = xi / SPEED_OF_LIGHT;
        let entries = basis
            .nodes()
            .iter()
            .map(|node| {
                let kap = f64::hypot(node.k(), a);
                match node.polarization {
                    Polarization::TE => amp_te.eval(Polarization::TE, kap),
                    Polarization::TM => amp_tm.eval(Polarization::TM, kap),
                }
            })
            .collect();
        Ok(Self {
            role,
            form: OperatorForm::Diagonal(entries),
        })
    }

    /// Diagonal operator from raw per-mode amplitudes.
    pub fn diagonal(role: OperatorRole, entries: Vec<f64>) -> Result<Self> {
        reflection_role(role)?;
        if entries.is_empty() {
            return Err(CasimirError::Basis("operator must have dimension >= 1".into()));
        }
        if entries.iter().any(|r| !r.is_finite()) {
            return Err(CasimirError::Domain("operator entries must be finite".into()));
        }
        Ok(Self {
            role,
            form: OperatorForm::Diagonal(entries),
        })
    }

    /// Dense operator from a full matrix, interpreted as a smooth kernel
    /// sampled on the basis nodes (see the module notes on weighting).
    pub fn from_matrix(role: OperatorRole, matrix: DMatrix<f64>) -> Result<Self> {
        reflection_role(role)?;
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(CasimirError::Basis(format!(
                "operator matrix must be square and non-empty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|r| !r.is_finite()) {
            return Err(CasimirError::Domain("operator entries must be finite".into()));
        }
        Ok(Self {
            role,
            form: OperatorForm::Dense(matrix),
        })
    }

    /// One-way propagation across the cavity, `diag(e^{-kappa_j L})`.
    pub fn propagation(basis: &ModeBasis, xi: f64, separation: f64) -> Result<Self> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(CasimirError::Domain(format!(
                "separation must be positive, got {separation}"
            )));
        }
        if !(xi.is_finite() && xi >= 0.0) {
            return Err(CasimirError::Domain(format!(
                "frequency must be >= 0, got {xi}"
            )));
        }
        let entries = basis
            .kappas(xi)
            .iter()
            .map(|kap| (-kap * separation).exp())
            .collect();
        Ok(Self {
            role: OperatorRole::Propagation,
            form: OperatorForm::Diagonal(entries),
        })
    }

    pub fn role(&self) -> OperatorRole {
        self.role
    }

    pub fn dim(&self) -> usize {
        match &self.form {
            OperatorForm::Diagonal(d) => d.len(),
            OperatorForm::Dense(m) => m.nrows(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.form, OperatorForm::Diagonal(_))
    }

    /// Entry (j, j) of the diagonal form.
    pub fn diagonal_entry(&self, j: usize) -> Option<f64> {
        match &self.form {
            OperatorForm::Diagonal(d) => d.get(j).copied(),
            OperatorForm::Dense(_) => None,
        }
    }
}

fn reflection_role(role: OperatorRole) -> Result<()> {
    if role == OperatorRole::Propagation {
        return Err(CasimirError::Domain(
            "reflection constructor called with the Propagation role".into(),
        ));
    }
    Ok(())
}

fn check_reflection_pair(r1: &ModeOperator, r2: &ModeOperator, basis: &ModeBasis) -> Result<()> {
    for (name, op) in [("first", r1), ("second", r2)] {
        if op.role() == OperatorRole::Propagation {
            return Err(CasimirError::Domain(format!(
                "{name} operator has the Propagation role; the propagation factors are built internally"
            )));
        }
        if op.dim() != basis.len() {
            return Err(CasimirError::Basis(format!(
                "{name} operator has dimension {}, basis has {}",
                op.dim(),
                basis.len()
            )));
        }
    }
    Ok(())
}

/// `Tr ln D = ln det(I - R1 e^{-KL} R2 e^{-KL})` at one frequency.
///
/// Diagonal pair: the trace is the weighted per-mode sum
/// `Sum_j w_j ln(1 - r1_j r2_j e^{-2 kappa_j L})`, identical term by term
/// to the specular engine on the same nodes. Any dense operator switches
/// to the folded-kernel determinant, evaluated by pivoted LU with sign
/// tracking. A round trip with spectral radius at or above one, a
/// non-positive determinant or a breakdown of the factorization reports
/// [`CasimirError::UnstableRoundTrip`].
pub fn trace_ln_d(
    r1: &ModeOperator,
    r2: &ModeOperator,
    separation: f64,
    xi: f64,
    basis: &ModeBasis,
) -> Result<f64> {
    if !(separation.is_finite() && separation > 0.0) {
        return Err(CasimirError::Domain(format!(
            "separation must be positive, got {separation}"
        )));
    }
    if !(xi.is_finite() && xi >= 0.0) {
        return Err(CasimirError::Domain(format!(
            "frequency must be >= 0, got {xi}"
        )));
    }
    check_reflection_pair(r1, r2, basis)?;
    let kappas = basis.kappas(xi);
    match (&r1.form, &r2.form) {
        (OperatorForm::Diagonal(d1), OperatorForm::Diagonal(d2)) => {
            let mut acc = KahanSum::new();
            for (j, node) in basis.nodes().iter().enumerate() {
                let rr = d1[j] * d2[j];
                let w2 = (-2.0 * kappas[j] * separation).exp();
                if rr * w2 >= 1.0 {
                    return Err(CasimirError::UnstableRoundTrip(format!(
                        "mode {j}: round trip factor {} >= 1",
                        rr * w2
                    )));
                }
                acc.add(node.weight * round_trip_log(rr, w2));
            }
            Ok(acc.value())
        }
        _ => {
            let m = round_trip_matrix(r1, r2, &kappas, separation, basis);
            if spectral_radius_estimate(&m) >= 1.0 {
                return Err(CasimirError::UnstableRoundTrip(
                    "round trip operator has spectral radius >= 1".into(),
                ));
            }
            ln_det_i_minus(&m)
        }
    }
}

/// Eigenvalue evaluation of the same trace, restricted to N <= 64; the
/// cross-check oracle for the factorization path. Diagonal pairs take the
/// same per-mode route as [`trace_ln_d`] (the diagonal is its own
/// spectrum), dense ones sum `ln|1 - lambda|` over complex eigenvalues.
pub fn trace_ln_d_eigen(
    r1: &ModeOperator,
    r2: &ModeOperator,
    separation: f64,
    xi: f64,
    basis: &ModeBasis,
) -> Result<f64> {
    if basis.len() > 64 {
        return Err(CasimirError::Domain(format!(
            "eigenvalue route is limited to 64 modes, basis has {}",
            basis.len()
        )));
    }
    if r1.is_diagonal() && r2.is_diagonal() {
        return trace_ln_d(r1, r2, separation, xi, basis);
    }
    check_reflection_pair(r1, r2, basis)?;
    let kappas = basis.kappas(xi);
    let m = round_trip_matrix(r1, r2, &kappas, separation, basis);
    let mut acc = KahanSum::new();
    for lambda in m.complex_eigenvalues().iter() {
        if lambda.norm() >= 1.0 {
            return Err(CasimirError::UnstableRoundTrip(format!(
                "round trip eigenvalue with modulus {} >= 1",
                lambda.norm()
            )));
        }
        let one_minus = nalgebra::Complex::new(1.0 - lambda.re, -lambda.im);
        acc.add(one_minus.norm().ln());
    }
    Ok(acc.value())
}

/// Builds the discretized round trip `R1' E R2' E` with `E = diag(e^{-kappa L})`
/// and each dense reflection folded as `W^{1/2} R W^{1/2}`; diagonal
/// reflections enter unweighted (their kernel carries the mode delta).
fn round_trip_matrix(
    r1: &ModeOperator,
    r2: &ModeOperator,
    kappas: &[f64],
    separation: f64,
    basis: &ModeBasis,
) -> DMatrix<f64> {
    let n = basis.len();
    let e: Vec<f64> = kappas.iter().map(|kap| (-kap * separation).exp()).collect();
    let sqrt_w: Vec<f64> = basis.nodes().iter().map(|nd| nd.weight.sqrt()).collect();
    let densify = |op: &ModeOperator| -> DMatrix<f64> {
        match &op.form {
            OperatorForm::Diagonal(d) => DMatrix::from_fn(n, n, |i, j| if i == j { d[i] } else { 0.0 }),
            OperatorForm::Dense(m) => {
                DMatrix::from_fn(n, n, |i, j| sqrt_w[i] * m[(i, j)] * sqrt_w[j])
            }
        }
    };
    let mut a = densify(r1);
    for j in 0..n {
        for i in 0..n {
            a[(i, j)] *= e[j];
        }
    }
    let mut b = densify(r2);
    for j in 0..n {
        for i in 0..n {
            b[(i, j)] *= e[j];
        }
    }
    a * b
}

/// Upper bound first (row norm), power iteration if that is inconclusive.
fn spectral_radius_estimate(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let row_norm = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    if row_norm < 1.0 {
        return row_norm;
    }
    let mut v = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut estimate = row_norm;
    for _ in 0..96 {
        let w = m * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        estimate = norm / v.norm();
        v = w / norm;
    }
    estimate
}

/// `ln det(I - M)` by partial-pivoting LU; the permutation parity and the
/// pivot signs must multiply to a positive determinant.
fn ln_det_i_minus(m: &DMatrix<f64>) -> Result<f64> {
    let n = m.nrows();
    let d = DMatrix::identity(n, n) - m;
    let lu = d.lu();
    let mut sign = if lu.p().len().is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut acc = KahanSum::new();
    for i in 0..n {
        let pivot = lu.u()[(i, i)];
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(CasimirError::UnstableRoundTrip(format!(
                "factorization breakdown at pivot {i}"
            )));
        }
        sign *= pivot.signum();
        acc.add(pivot.abs().ln());
    }
    if sign <= 0.0 {
        return Err(CasimirError::UnstableRoundTrip(
            "round trip determinant is not positive".into(),
        ));
    }
    Ok(acc.value())
}

/// Result of a Matsubara-summed mode-basis evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonspecularResult {
    /// Free energy for one square meter of mirror (J).
    pub free_energy: f64,
    pub matsubara_terms: usize,
    /// False if the sum hit `max_matsubara` before the truncation rule.
    pub converged: bool,
}

/// `F = kB T Sum'_m Tr ln D(i xi_m)` over a fixed basis, with operators
/// rebuilt per frequency by the two closures. Truncation follows the
/// specular engine: stop after three consecutive terms below `rel_tol`
/// of the running sum, report `converged = false` if `max_matsubara`
/// arrives first.
pub fn free_energy_nonspecular<F1, F2>(
    r1_builder: F1,
    r2_builder: F2,
    separation: f64,
    temperature: f64,
    basis: &ModeBasis,
    tolerances: &NumericTolerances,
) -> Result<NonspecularResult>
where
    F1: Fn(f64, &ModeBasis) -> Result<ModeOperator>,
    F2: Fn(f64, &ModeBasis) -> Result<ModeOperator>,
{
    if !(separation.is_finite() && separation > 0.0) {
        return Err(CasimirError::Domain(format!(
            "separation must be positive, got {separation}"
        )));
    }
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(CasimirError::Domain(format!(
            "nonspecular sum requires T > 0, got {temperature}"
        )));
    }
    tolerances.validate()?;
    let kbt = BOLTZMANN * temperature;
    let term = |m: usize| -> Result<f64> {
        let xi = crate::engine::matsubara_xi(temperature, m);
        let r1 = r1_builder(xi, basis)?;
        let r2 = r2_builder(xi, basis)?;
        let weight = if m == 0 { 0.5 } else { 1.0 };
        Ok(weight * kbt * trace_ln_d(&r1, &r2, separation, xi, basis)?)
    };
    let mut acc = KahanSum::new();
    acc.add(term(0)?);
    let mut terms = 1;
    let mut below = 0;
    let mut converged = false;
    for m in 1..=tolerances.max_matsubara {
        let t = term(m)?;
        acc.add(t);
        terms += 1;
        if t.abs() <= tolerances.rel_tol * acc.value().abs() {
            below += 1;
            if below == 3 {
                converged = true;
                break;
            }
        } else {
            below = 0;
        }
    }
    Ok(NonspecularResult {
        free_energy: acc.value(),
        matsubara_terms: terms,
        converged,
    })
}
