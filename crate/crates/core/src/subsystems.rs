//! Reduced single-spin states of the thermal pair, their Bloch geometry and
//! analytic Uhlmann phases.
//!
//! Both reduced density matrices take the form
//!
//! ```text
//! rho^s = [ a_s              c_s e^{-i phi} ]
//!         [ c_s e^{+i phi}   1 - a_s        ]
//! ```
//!
//! with real, azimuth-independent coefficients `a_s`, `c_s`. For the driven
//! spin (A) this is the partial trace itself; for the undriven spin (B),
//! which rotates the opposite way, it is the partial trace conjugated by
//! `sigma_x` (a fixed basis flip that leaves the phase and the Bloch radius
//! untouched). The eigenvectors are `(beta_l e^{-i phi}, 1)/sqrt(N_l)` with
//! `beta_l = c_s / (p_l - a_s)`, which makes the whole cycle a rigid
//! rotation and yields the phase in closed form.

use num_complex::Complex64 as C64;

use crate::linalg::principal_arg;
use crate::spinmodel::{berry_phase_of, ModelParams};
use crate::thermal::{self, GibbsEnsemble};
use crate::uhlmann::{
    connection_generic, frame_rotated, holonomy_ode, phase_from_trace, ConnectionField, PhaseResult,
};
use crate::{Matrix2C, Matrix4C, MatrixC, Result};

/// Rotation-generator diagonal of the reduced cycle: the eigenvectors pick
/// up `e^{-i phi}` on their first component only.
pub const QUBIT_FRAME: [f64; 2] = [1.0, 0.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    /// The driven spin (carries the rotating field).
    A,
    /// The undriven spin (coupled only through the exchange term).
    B,
}

impl std::fmt::Display for Subsystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Subsystem::A => write!(f, "A"),
            Subsystem::B => write!(f, "B"),
        }
    }
}

/// Reduced 2x2 state in the `(a_s, c_s)` parametrization, with its
/// eigensystem and the derived connection ingredients.
///
/// At `c_s = 0` the eigenvector parameters `betas`, `norms` and `delta`
/// diverge (the reduced state is diagonal and the cycle is trivial); they
/// are stored as IEEE infinities and every phase quantity is evaluated
/// through its finite limit.
#[derive(Debug, Clone)]
pub struct QubitReduced {
    pub which: Subsystem,
    pub a: f64,
    pub c: f64,
    /// Eigenvalues `p_1 <= p_2` of the reduced state.
    pub populations: [f64; 2],
    /// `beta_l = c / (p_l - a)`.
    pub betas: [f64; 2],
    /// `N_l = beta_l^2 + 1`.
    pub norms: [f64; 2],
    /// `delta = (2a - 1) / (2c)`.
    pub delta: f64,
    /// `(1 - 2 sqrt(det rho)) / (N_1 N_2)`, the connection strength.
    pub delta_p: f64,
    /// Azimuth of the parent ensemble.
    pub phi0: f64,
}

impl QubitReduced {
    /// `det rho^s = a(1-a) - c^2 = p_1 p_2`.
    pub fn det(&self) -> f64 {
        (self.a * (1.0 - self.a) - self.c * self.c).max(0.0)
    }

    /// The reduced density matrix at azimuth `phi`.
    pub fn matrix(&self, phi: f64) -> Matrix2C {
        let off = C64::from_polar(1.0, -phi) * self.c;
        Matrix2C::new(
            C64::new(self.a, 0.0),
            off,
            off.conj(),
            C64::new(1.0 - self.a, 0.0),
        )
    }

    /// Eigenvector `l` at azimuth `phi`, `(beta_l e^{-i phi}, 1)/sqrt(N_l)`,
    /// with the diagonal limit at `c = 0`.
    pub fn eigenvector(&self, l: usize, phi: f64) -> [C64; 2] {
        let beta = self.betas[l];
        if beta.is_infinite() || beta.is_nan() {
            [C64::from_polar(1.0, -phi), C64::new(0.0, 0.0)]
        } else {
            let n = self.norms[l].sqrt();
            [
                C64::from_polar(1.0, -phi) * (beta / n),
                C64::new(1.0 / n, 0.0),
            ]
        }
    }
}

/// Raw partial trace of a pair state over the complementary spin, in the
/// lab basis. This is the contraction oracle for [`reduce`]; note the
/// basis-flip convention for spin B described at the module level.
pub fn partial_trace(rho: &Matrix4C, which: Subsystem) -> Matrix2C {
    let mut out = Matrix2C::zeros();
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..2 {
                acc += match which {
                    Subsystem::A => rho[(2 * a + k, 2 * b + k)],
                    Subsystem::B => rho[(2 * k + a, 2 * k + b)],
                };
            }
            out[(a, b)] = acc;
        }
    }
    out
}

impl QubitReduced {
    /// Build a reduced state and all derived quantities from its two
    /// defining coefficients.
    pub fn from_coefficients(which: Subsystem, a: f64, c: f64, phi0: f64) -> Self {
        let q = 1.0 - 2.0 * a;
        let w2 = q * q + 4.0 * c * c;
        let w = w2.sqrt();
        let populations = [0.5 * (1.0 - w), 0.5 * (1.0 + w)];
        let betas = [c / (populations[0] - a), c / (populations[1] - a)];
        let norms = [betas[0] * betas[0] + 1.0, betas[1] * betas[1] + 1.0];
        let det = (a * (1.0 - a) - c * c).max(0.0);
        let delta_p = if w2 > 0.0 {
            (1.0 - 2.0 * det.sqrt()) * (c * c) / w2
        } else {
            0.0
        };
        QubitReduced {
            which,
            a,
            c,
            populations,
            betas,
            norms,
            delta: (2.0 * a - 1.0) / (2.0 * c),
            delta_p,
            phi0,
        }
    }
}

/// Reduced state of one spin, from the population-weighted eigenvector
/// component sums.
pub fn reduce(ens: &GibbsEnsemble, which: Subsystem) -> QubitReduced {
    let es = &ens.eigensystem;
    let mut a = 0.0;
    let mut c = 0.0;
    for j in 0..4 {
        let u = &es.components[j];
        let w = ens.populations[j] / es.norms[j];
        match which {
            Subsystem::A => {
                a += w * (u[0] * u[0] + u[1] * u[1]);
                c += w * (u[0] * u[2] + u[1] * u[3]);
            }
            Subsystem::B => {
                a += w * (u[0] * u[0] + u[2] * u[2]);
                c += w * (u[0] * u[1] + u[2] * u[3]);
            }
        }
    }
    QubitReduced::from_coefficients(which, a, c, ens.params.phi0)
}

/// Bloch representation `rho^s = (1 + n.sigma)/2`.
#[derive(Debug, Clone, Copy)]
pub struct BlochState {
    pub vector: [f64; 3],
    /// Radius `|2 c_s|` of the circle traced in the equatorial plane.
    pub equatorial_radius: f64,
}

pub fn bloch(q: &QubitReduced, phi: f64) -> BlochState {
    BlochState {
        vector: [
            2.0 * q.c * phi.cos(),
            2.0 * q.c * phi.sin(),
            2.0 * q.a - 1.0,
        ],
        equatorial_radius: 2.0 * q.c.abs(),
    }
}

/// Analytic Uhlmann phase of a reduced spin and its ingredients.
#[derive(Debug, Clone, Copy)]
pub struct SubsystemPhase {
    /// Principal value in `(-pi, pi]`.
    pub phase: f64,
    /// `r^2 = 1 - g1 g2 (1 - 4 det rho) / pi^2`, kept squared so the
    /// formula stays single-valued if rounding pushes it negative.
    pub r_squared: f64,
    /// Cycle Berry phases `(g1, g2)` of the two eigenstates,
    /// `2 pi beta_l^2 / N_l`.
    pub berry_pair: [f64; 2],
    /// Population-weighted Berry phase `p_1 g1 + p_2 g2`.
    pub composed: f64,
    /// `Tr[rho V]` of the cycle, for Argand analysis.
    pub trace_value: C64,
}

fn cos_pi_r(r2: f64) -> f64 {
    if r2 >= 0.0 {
        (std::f64::consts::PI * r2.sqrt()).cos()
    } else {
        (std::f64::consts::PI * (-r2).sqrt()).cosh()
    }
}

fn sinc_pi_r(r2: f64) -> f64 {
    if r2 == 0.0 {
        1.0
    } else if r2 > 0.0 {
        let x = std::f64::consts::PI * r2.sqrt();
        x.sin() / x
    } else {
        let x = std::f64::consts::PI * (-r2).sqrt();
        x.sinh() / x
    }
}

/// Closed-form thermal Uhlmann phase of a reduced spin:
/// `Arg{ -cos(pi r) - i (composed - pi) sin(pi r)/(pi r) }`.
///
/// The eigenstate Berry phases are evaluated as
/// `g_{1,2} = pi (1 +- q/w)` with `q = 1 - 2a`, `w = sqrt(q^2 + 4c^2)`,
/// which equals `2 pi beta_l^2 / N_l` and stays finite at `c = 0`, where
/// the pair degenerates to `{0, 2 pi}` (or `{pi, pi}` in the maximally
/// mixed case) and the phase is 0.
pub fn subsystem_phase_analytic(q: &QubitReduced) -> SubsystemPhase {
    let pi = std::f64::consts::PI;
    let qz = 1.0 - 2.0 * q.a;
    let w = (qz * qz + 4.0 * q.c * q.c).sqrt();
    let ratio = if w > 0.0 { qz / w } else { 0.0 };
    let g1 = pi * (1.0 + ratio);
    let g2 = pi * (1.0 - ratio);
    let composed = q.populations[0] * g1 + q.populations[1] * g2;
    let r_squared = 1.0 - g1 * g2 * (1.0 - 4.0 * q.det()) / (pi * pi);
    let trace_value = C64::new(
        -cos_pi_r(r_squared),
        -(composed - pi) * sinc_pi_r(r_squared),
    );
    SubsystemPhase {
        phase: principal_arg(trace_value),
        r_squared,
        berry_pair: [g1, g2],
        composed,
        trace_value,
    }
}

/// Connection of the reduced cycle built through the generic spectral
/// construction (zero for a diagonal reduced state).
pub fn subsystem_connection(q: &QubitReduced) -> ConnectionField {
    let mut basis = MatrixC::zeros(2, 2);
    for l in 0..2 {
        let v = q.eigenvector(l, q.phi0);
        basis[(0, l)] = v[0];
        basis[(1, l)] = v[1];
    }
    let mut overlaps = MatrixC::zeros(2, 2);
    if q.c != 0.0 {
        for l in 0..2 {
            for m in 0..2 {
                // <v_l | d/dphi v_m> = -i beta_l beta_m / sqrt(N_l N_m)
                overlaps[(l, m)] = C64::new(
                    0.0,
                    -q.betas[l] * q.betas[m] / (q.norms[l] * q.norms[m]).sqrt(),
                );
            }
        }
    }
    connection_generic(&q.populations, &basis, &overlaps, q.phi0)
}

/// The connection in its printed compact form,
/// `-2 i delta_p (n_delta . sigma)` with
/// `n_delta = (-delta cos phi, -delta sin phi, 1)`.
pub fn subsystem_connection_printed(q: &QubitReduced, phi: f64) -> Matrix2C {
    let delta = if q.c == 0.0 { 0.0 } else { q.delta };
    let off = C64::from_polar(1.0, -phi) * C64::new(-delta, 0.0);
    let n_sigma = Matrix2C::new(C64::new(1.0, 0.0), off, off.conj(), C64::new(-1.0, 0.0));
    n_sigma * C64::new(0.0, -2.0 * q.delta_p)
}

/// Path-ordered oracle for the reduced-cycle phase: integrates the generic
/// connection around the loop and evaluates `Arg Tr[rho V]` directly.
pub fn subsystem_phase_ode(q: &QubitReduced, steps: usize) -> Result<PhaseResult> {
    let field = subsystem_connection(q);
    let a0 = field.matrix();
    let hol = holonomy_ode(
        |phi| frame_rotated(&a0, &QUBIT_FRAME, phi - q.phi0),
        2,
        q.phi0,
        steps,
    )?;
    let rho = q.matrix(q.phi0);
    let mut z = C64::new(0.0, 0.0);
    for a in 0..2 {
        for b in 0..2 {
            z += rho[(a, b)] * hol.v[(b, a)];
        }
    }
    Ok(phase_from_trace(z))
}

/// Residual of the composed-phase identity
/// `|gbar_A + gbar_B - 2 pi - sum_j p_j gamma_j|`, with the pair Berry
/// phases taken in their line-integral branches.
pub fn composed_phase_identity_check(p: &ModelParams, temperature: f64) -> Result<f64> {
    let ens = thermal::gibbs_state(p, temperature)?;
    let ga = subsystem_phase_analytic(&reduce(&ens, Subsystem::A)).composed;
    let gb = subsystem_phase_analytic(&reduce(&ens, Subsystem::B)).composed;
    let gab: f64 = (0..4)
        .map(|j| ens.populations[j] * berry_phase_of(&ens.eigensystem, j))
        .sum();
    Ok((ga + gb - 2.0 * std::f64::consts::PI - gab).abs())
}
