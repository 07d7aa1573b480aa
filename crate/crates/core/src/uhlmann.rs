//! Uhlmann connection and holonomy for mixed states of the driven pair.
//!
//! The connection of a density matrix with spectral decomposition
//! `rho = sum_j p_j |psi_j><psi_j|` is
//!
//! ```text
//! A = sum_{i != j} (sqrt(p_j) - sqrt(p_i))^2 / (p_j + p_i)
//!       <psi_i | d/dphi psi_j>  |psi_i><psi_j|  dphi
//! ```
//!
//! For the driven pair all azimuth dependence comes from the rotation
//! `U(phi)`, so `A(phi) = U(phi) A(0) U(phi)^H` and the one-cycle holonomy
//! has the closed form `V = exp(-2 pi i (-G + K))` with `G` the rotation
//! generator and `K = i A(0)` Hermitian. A fixed-step fourth-order
//! Runge-Kutta integration of `dV = A(phi) V` provides the independent
//! numerical route to the same holonomy.

use num_complex::Complex64 as C64;

use crate::error::Error;
use crate::linalg::{exp_i_hermitian, polar_unitary, principal_arg, unitarity_defect};
use crate::spinmodel::{self, ModelParams, ROTATION_GENERATOR_DIAG};
use crate::thermal::{self, GibbsEnsemble};
use crate::{Matrix4C, MatrixC, Result};

/// `Arg Tr[rho V]` is considered ill-conditioned when `|Tr[rho V]|` falls
/// below this threshold (a transition point).
pub const TRACE_NEAR_ZERO_TOL: f64 = 1e-9;

/// Population pairs summing below this threshold get a zero connection
/// coefficient and are reported in
/// [`ConnectionField::degenerate_pairs`].
pub const DEGENERATE_PAIR_TOL: f64 = 1e-15;

/// Default step count for the path-ordered integration.
pub const DEFAULT_ODE_STEPS: usize = 2048;

/// Uhlmann connection evaluated at one point of the cycle.
///
/// `coefficients[(i, j)]` multiplies `|psi_i><psi_j|`; the diagonal is zero
/// and the matrix it generates on the state space is anti-Hermitian.
#[derive(Debug, Clone)]
pub struct ConnectionField {
    pub coefficients: MatrixC,
    /// Column `j` holds `|psi_j>` at the evaluation azimuth.
    pub basis: MatrixC,
    /// State-space dimension (2 for a reduced spin, 4 for the pair).
    pub dimension: usize,
    /// Azimuth the field was evaluated at.
    pub phi0: f64,
    /// Pairs whose joint population was numerically zero.
    pub degenerate_pairs: Vec<(usize, usize)>,
}

impl ConnectionField {
    /// The connection as a matrix on the state space,
    /// `A(phi0) = B C B^H`.
    pub fn matrix(&self) -> MatrixC {
        &self.basis * &self.coefficients * self.basis.adjoint()
    }
}

/// Generic spectral-data construction of the connection.
///
/// `basis` holds the eigenvectors of `rho` as columns and
/// `overlaps[(i, j)] = <psi_i | d/dphi psi_j>`. Serves the 2x2 reduced
/// states and the 4x4 pair uniformly.
pub fn connection_generic(
    populations: &[f64],
    basis: &MatrixC,
    overlaps: &MatrixC,
    phi0: f64,
) -> ConnectionField {
    let n = populations.len();
    let mut coefficients = MatrixC::zeros(n, n);
    let mut degenerate_pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let denom = populations[i] + populations[j];
            if denom < DEGENERATE_PAIR_TOL {
                if i < j {
                    degenerate_pairs.push((i, j));
                }
                continue;
            }
            let w = (populations[j].sqrt() - populations[i].sqrt()).powi(2) / denom;
            coefficients[(i, j)] = overlaps[(i, j)] * C64::new(w, 0.0);
        }
    }
    ConnectionField {
        coefficients,
        basis: basis.clone(),
        dimension: n,
        phi0,
        degenerate_pairs,
    }
}

/// Connection of the thermal pair from an already-built Gibbs ensemble
/// (works on the dense-fallback eigenbasis as well).
pub fn connection_composite_from(ens: &GibbsEnsemble) -> ConnectionField {
    let es = &ens.eigensystem;
    let phi0 = ens.params.phi0;
    let mut basis = MatrixC::zeros(4, 4);
    let mut overlaps = MatrixC::zeros(4, 4);
    for j in 0..4 {
        basis.set_column(
            j,
            &MatrixC::from_column_slice(4, 1, es.ket_at(j, phi0).as_slice()).column(0),
        );
        for i in 0..4 {
            overlaps[(i, j)] = es.azimuthal_overlap(i, j);
        }
    }
    connection_generic(&ens.populations, &basis, &overlaps, phi0)
}

/// Connection of the thermal pair from the closed-form spectrum.
///
/// Propagates [`Error::SingularEigenvector`] where the closed forms fail;
/// [`uhlmann_phase_composite`] switches to the dense eigenbasis instead.
pub fn connection_composite(p: &ModelParams, temperature: f64) -> Result<ConnectionField> {
    spinmodel::spectrum(p)?; // surface singular inputs
    let ens = thermal::gibbs_state(p, temperature)?;
    Ok(connection_composite_from(&ens))
}

/// `E(dphi) A E(dphi)^H` with `E = exp(-i dphi diag(frame))`: the rotating
/// frame that carries a connection evaluated at one azimuth to another.
pub fn frame_rotated(a0: &MatrixC, frame: &[f64], dphi: f64) -> MatrixC {
    let n = a0.nrows();
    let mut out = a0.clone();
    for m in 0..n {
        for k in 0..n {
            out[(m, k)] *= C64::from_polar(1.0, -dphi * (frame[m] - frame[k]));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HolonomyMethod {
    ClosedForm,
    PathOrderedOde,
}

/// Unitary transport over one closed azimuth cycle.
#[derive(Debug, Clone)]
pub struct Holonomy {
    pub v: MatrixC,
    /// Hermitian generator `K = i A(phi0)` (closed form only).
    pub k: Option<MatrixC>,
    pub method: HolonomyMethod,
}

/// One-cycle holonomy in closed form: `V = exp(-2 pi i (-diag(frame) + K))`
/// with `K = i A(phi0)`.
///
/// Valid whenever the frame diagonal has integer spectrum, which holds for
/// both the pair (`frame = [0, 1, -1, 0]`) and a reduced spin
/// (`frame = [1, 0]`).
pub fn holonomy_cycle_closed(a0: &MatrixC, frame: &[f64]) -> Holonomy {
    let n = a0.nrows();
    let k = a0 * C64::new(0.0, 1.0);
    let mut exponent = k.clone();
    for m in 0..n {
        exponent[(m, m)] -= C64::new(frame[m], 0.0);
    }
    let v = exp_i_hermitian(&exponent, -2.0 * std::f64::consts::PI);
    Holonomy {
        v,
        k: Some(k),
        method: HolonomyMethod::ClosedForm,
    }
}

/// Closed-form holonomy of the thermal pair. Propagates
/// [`Error::SingularEigenvector`] like [`connection_composite`].
pub fn holonomy_closed_form(p: &ModelParams, temperature: f64) -> Result<Holonomy> {
    let field = connection_composite(p, temperature)?;
    Ok(holonomy_cycle_closed(
        &field.matrix(),
        &ROTATION_GENERATOR_DIAG,
    ))
}

/// Path-ordered holonomy: fourth-order Runge-Kutta integration of
/// `dV/dphi = A(phi) V` over one cycle starting at `phi0`, with
/// `V(phi0) = 1`. Unitarity is restored by polar projection at the endpoint
/// if the accumulated drift exceeds `1e-12`.
pub fn holonomy_ode(
    field: impl Fn(f64) -> MatrixC,
    dimension: usize,
    phi0: f64,
    steps: usize,
) -> Result<Holonomy> {
    if steps < 16 {
        return Err(Error::StepCountTooSmall(steps));
    }
    let h = 2.0 * std::f64::consts::PI / steps as f64;
    let hc = C64::new(h, 0.0);
    let mut v = MatrixC::identity(dimension, dimension);
    let mut a_lo = field(phi0);
    for k in 0..steps {
        let phi = phi0 + k as f64 * h;
        let a_mid = field(phi + 0.5 * h);
        let a_hi = field(phi + h);
        let half = hc * C64::new(0.5, 0.0);
        let k1 = &a_lo * &v;
        let k2 = &a_mid * (&v + &k1 * half);
        let k3 = &a_mid * (&v + &k2 * half);
        let k4 = &a_hi * (&v + &k3 * hc);
        let two = C64::new(2.0, 0.0);
        v += (k1 + k2 * two + k3 * two + k4) * (hc / C64::new(6.0, 0.0));
        a_lo = a_hi;
    }
    if unitarity_defect(&v) > 1e-12 {
        v = polar_unitary(&v);
    }
    Ok(Holonomy {
        v,
        k: None,
        method: HolonomyMethod::PathOrderedOde,
    })
}

/// Thermal geometric phase `Arg Tr[rho V]` and its ingredients.
#[derive(Debug, Clone, Copy)]
pub struct PhaseResult {
    /// Principal value in `(-pi, pi]`.
    pub phase: f64,
    /// `z = Tr[rho_{phi0} V]`, kept for winding analysis.
    pub trace_value: C64,
    pub modulus: f64,
    /// `|z|` fell below [`TRACE_NEAR_ZERO_TOL`]: the phase is
    /// ill-conditioned (a transition point).
    pub trace_near_zero: bool,
}

pub fn phase_from_trace(z: C64) -> PhaseResult {
    let modulus = z.norm();
    PhaseResult {
        phase: principal_arg(z),
        trace_value: z,
        modulus,
        trace_near_zero: modulus < TRACE_NEAR_ZERO_TOL,
    }
}

pub(crate) fn trace_rho_v(rho: &Matrix4C, v: &MatrixC) -> C64 {
    let mut z = C64::new(0.0, 0.0);
    for a in 0..4 {
        for b in 0..4 {
            z += rho[(a, b)] * v[(b, a)];
        }
    }
    z
}

/// Thermal Uhlmann phase of the pair over one azimuth cycle, by the
/// closed-form holonomy. Uses the dense eigenbasis where the closed-form
/// spectrum is singular, so the full `(g, theta)` plane is covered.
pub fn uhlmann_phase_composite(p: &ModelParams, temperature: f64) -> Result<PhaseResult> {
    let ens = thermal::gibbs_state(p, temperature)?;
    let field = connection_composite_from(&ens);
    let hol = holonomy_cycle_closed(&field.matrix(), &ROTATION_GENERATOR_DIAG);
    Ok(phase_from_trace(trace_rho_v(&ens.rho, &hol.v)))
}

/// Same phase through the path-ordered route, as a cross-check.
pub fn uhlmann_phase_composite_ode(
    p: &ModelParams,
    temperature: f64,
    steps: usize,
) -> Result<PhaseResult> {
    let ens = thermal::gibbs_state(p, temperature)?;
    let field = connection_composite_from(&ens);
    let a0 = field.matrix();
    let hol = holonomy_ode(
        |phi| frame_rotated(&a0, &ROTATION_GENERATOR_DIAG, phi - field.phi0),
        4,
        field.phi0,
        steps,
    )?;
    Ok(phase_from_trace(trace_rho_v(&ens.rho, &hol.v)))
}
