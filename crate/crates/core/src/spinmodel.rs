//! Driven two-spin model: Hamiltonian, exact spectrum, eigenvectors and
//! Berry phases.
//!
//! The rescaled Hamiltonian is
//!
//! ```text
//! H(phi) = n(phi).sigma (x) 1  +  (g/2) (sigma_x (x) sigma_x - sigma_y (x) sigma_y)
//! ```
//!
//! with field direction `n = (sin th cos phi, sin th sin phi, cos th)`. The
//! azimuth only enters through the rotation `U(phi)` of [`rotation_unitary`],
//! which turns the first spin by `phi` about z and the second spin by `-phi`,
//! so the spectrum is azimuth-independent and all eigenvectors are generated
//! from the real eigenvectors of `H(0)`.
//!
//! Eigenvector components are stored in the four-entry form
//! `(u1, u2, u3, u4)` with
//!
//! ```text
//! u1 = sin th                 u2 = g (cos^2 th - E^2) / (1 - E^2)
//! u3 = E - cos th             u4 = g sin th (cos th - E) / (1 - E^2)
//! ```
//!
//! which map onto product-basis amplitudes as `(u2, u1, u4, u3)`, i.e. `u2`
//! multiplies up-up, `u1` up-down, `u4` down-up and `u3` down-down. The
//! closed forms are singular where some `E_j^2 = 1` (for instance at
//! `sin th = 0`, or at `g = 0` where `E_3 = 1`); [`spectrum_dense`] covers
//! those inputs by diagonalizing `H(0)` directly.

use nalgebra::SymmetricEigen;
use num_complex::Complex64 as C64;

use crate::error::Error;
use crate::{Matrix2C, Matrix4C, Result, Vector4C};

/// Closed-form eigenvector components are rejected when `|1 - E_j^2|` falls
/// below this tolerance.
pub const SINGULAR_EIGENVECTOR_TOL: f64 = 1e-9;

/// Index of the ground state (energy `E_2 = -E_1`) in the state ordering
/// `[E1, E2, E3, E4]` used throughout.
pub const GROUND_STATE: usize = 1;

/// Physical inputs of the model. Energies are rescaled by half the field
/// magnitude, so `g = 2J/B0` is the only coupling parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Dimensionless exchange coupling, `g >= 0`.
    pub g: f64,
    /// Polar angle of the field in `[0, pi]`.
    pub theta: f64,
    /// Initial azimuth of the rotation cycle.
    pub phi0: f64,
}

impl ModelParams {
    pub fn new(g: f64, theta: f64) -> Result<Self> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidParams(format!(
                "coupling g must be finite and non-negative, got {g}"
            )));
        }
        if !theta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidParams(format!(
                "polar angle theta must lie in [0, pi], got {theta}"
            )));
        }
        Ok(Self {
            g,
            theta,
            phi0: 0.0,
        })
    }

    pub fn with_phi0(mut self, phi0: f64) -> Result<Self> {
        if !phi0.is_finite() {
            return Err(Error::InvalidParams(format!(
                "phi0 must be finite, got {phi0}"
            )));
        }
        self.phi0 = phi0;
        Ok(self)
    }
}

/// The Pauli matrices and the 2x2 identity.
#[derive(Debug, Clone)]
pub struct PauliAlgebra {
    pub sigma_x: Matrix2C,
    pub sigma_y: Matrix2C,
    pub sigma_z: Matrix2C,
    pub identity2: Matrix2C,
}

impl PauliAlgebra {
    pub fn new() -> Self {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        Self {
            sigma_x: Matrix2C::new(o, l, l, o),
            sigma_y: Matrix2C::new(o, -i, i, o),
            sigma_z: Matrix2C::new(l, o, o, -l),
            identity2: Matrix2C::identity(),
        }
    }
}

impl Default for PauliAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

/// `H(phi)` in the product basis. Hermitian by construction.
pub fn hamiltonian(p: &ModelParams, phi: f64) -> Matrix4C {
    let pauli = PauliAlgebra::new();
    let (st, ct) = p.theta.sin_cos();
    let n_dot_sigma = pauli.sigma_x * C64::new(st * phi.cos(), 0.0)
        + pauli.sigma_y * C64::new(st * phi.sin(), 0.0)
        + pauli.sigma_z * C64::new(ct, 0.0);
    let field = n_dot_sigma.kronecker(&pauli.identity2);
    let exchange =
        pauli.sigma_x.kronecker(&pauli.sigma_x) - pauli.sigma_y.kronecker(&pauli.sigma_y);
    field + exchange * C64::new(0.5 * p.g, 0.0)
}

/// `U(phi) = exp(-i (phi/2)(sigma_z (x) 1 - 1 (x) sigma_z))`: diagonal with
/// entries `(1, e^{-i phi}, e^{i phi}, 1)`.
pub fn rotation_unitary(phi: f64) -> Matrix4C {
    let mut u = Matrix4C::zeros();
    u[(0, 0)] = C64::new(1.0, 0.0);
    u[(1, 1)] = C64::from_polar(1.0, -phi);
    u[(2, 2)] = C64::from_polar(1.0, phi);
    u[(3, 3)] = C64::new(1.0, 0.0);
    u
}

/// Diagonal of the rotation generator `(sigma_z (x) 1 - 1 (x) sigma_z)/2`.
pub const ROTATION_GENERATOR_DIAG: [f64; 4] = [0.0, 1.0, -1.0, 0.0];

/// Closed-form energies `[E1, E2, E3, E4]` with `E1 = -E2 >= E3 = -E4 >= 0`.
pub fn energies(p: &ModelParams) -> [f64; 4] {
    let s2 = p.theta.sin().powi(2);
    let root = (p.g * p.g + 4.0 * s2).sqrt();
    let e1 = (1.0 + 0.5 * p.g * p.g + 0.5 * p.g * root).sqrt();
    // the argument is a perfect square up to rounding; clamp stray negatives
    let e3 = (1.0 + 0.5 * p.g * p.g - 0.5 * p.g * root).max(0.0).sqrt();
    [e1, -e1, e3, -e3]
}

/// Unnormalized closed-form eigenvector components `(u1, u2, u3, u4)` of the
/// state with energy `e`. Undefined (division by zero) when `e^2 = 1`.
pub fn closed_form_components(p: &ModelParams, e: f64) -> [f64; 4] {
    let (st, ct) = p.theta.sin_cos();
    let denom = 1.0 - e * e;
    [
        st,
        p.g * (ct * ct - e * e) / denom,
        e - ct,
        p.g * st * (ct - e) / denom,
    ]
}

/// Exact eigensystem of `H(0)`: energies, component table and norms.
///
/// Row `j` of `components` holds `(u1, u2, u3, u4)` for the state ordering
/// `[E1, E2, E3, E4]`; `norms[j]` is the squared length of that row. Rows
/// produced by [`spectrum_dense`] are already normalized (`norms = 1`).
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub energies: [f64; 4],
    pub components: [[f64; 4]; 4],
    pub norms: [f64; 4],
}

impl Eigensystem {
    /// Normalized eigenvector of state `j` in the product basis at `phi = 0`.
    pub fn ket(&self, j: usize) -> Vector4C {
        let u = &self.components[j];
        let n = self.norms[j].sqrt();
        Vector4C::new(
            C64::new(u[1] / n, 0.0),
            C64::new(u[0] / n, 0.0),
            C64::new(u[3] / n, 0.0),
            C64::new(u[2] / n, 0.0),
        )
    }

    /// Normalized eigenvector of state `j` at azimuth `phi`,
    /// `U(phi) |u_j(0)>`.
    pub fn ket_at(&self, j: usize, phi: f64) -> Vector4C {
        let mut v = self.ket(j);
        v[1] *= C64::from_polar(1.0, -phi);
        v[2] *= C64::from_polar(1.0, phi);
        v
    }

    /// `<u_i(phi)| d/dphi |u_j(phi)>`, azimuth-independent:
    /// `i (u_i4 u_j4 - u_i1 u_j1) / sqrt(N_i N_j)`.
    pub fn azimuthal_overlap(&self, i: usize, j: usize) -> C64 {
        let ui = &self.components[i];
        let uj = &self.components[j];
        let scale = (self.norms[i] * self.norms[j]).sqrt();
        C64::new(0.0, (ui[3] * uj[3] - ui[0] * uj[0]) / scale)
    }
}

/// Closed-form spectrum and eigenvectors.
///
/// Fails with [`Error::SingularEigenvector`] when any `|1 - E_j^2|` drops
/// below [`SINGULAR_EIGENVECTOR_TOL`]; callers that need those inputs fall
/// back to [`spectrum_dense`] (or use [`spectrum_robust`]).
pub fn spectrum(p: &ModelParams) -> Result<Eigensystem> {
    let energies = energies(p);
    for (j, &e) in energies.iter().enumerate() {
        let defect = (1.0 - e * e).abs();
        if defect < SINGULAR_EIGENVECTOR_TOL {
            return Err(Error::SingularEigenvector { state: j, defect });
        }
    }
    let mut components = [[0.0; 4]; 4];
    let mut norms = [0.0; 4];
    for j in 0..4 {
        let u = closed_form_components(p, energies[j]);
        norms[j] = u.iter().map(|x| x * x).sum();
        components[j] = u;
    }
    Ok(Eigensystem {
        energies,
        components,
        norms,
    })
}

/// Dense diagonalization of the real symmetric `H(0)`, for inputs where the
/// closed forms are singular.
///
/// States are ordered by energy descending and mapped onto the labels
/// `[E1, E3, E4, E2]`; exact ties (e.g. `g = 0`) are broken by lexicographic
/// comparison of the component rows. Each eigenvector has its first
/// non-negligible component made positive, so the output is deterministic.
pub fn spectrum_dense(p: &ModelParams) -> Eigensystem {
    let h = hamiltonian(p, 0.0).map(|z| z.re);
    let se = SymmetricEigen::new(h);

    let mut states: Vec<(f64, [f64; 4])> = (0..4)
        .map(|k| {
            let col = se.eigenvectors.column(k);
            let mut v = [col[0], col[1], col[2], col[3]];
            if let Some(lead) = v.iter().find(|x| x.abs() > 1e-12) {
                if *lead < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            }
            (se.eigenvalues[k], v)
        })
        .collect();
    states.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap()
            .then_with(|| lex_cmp(&b.1, &a.1))
    });

    // descending energies occupy the labels in the order (E1, E3, E4, E2)
    let rows = [0usize, 2, 3, 1]; // output row for each sorted index
    let mut energies = [0.0; 4];
    let mut components = [[0.0; 4]; 4];
    for (sorted, &row) in rows.iter().enumerate() {
        let (e, v) = &states[sorted];
        energies[row] = *e;
        // product amplitudes (v0, v1, v2, v3) -> components (u1..u4)
        components[row] = [v[1], v[0], v[3], v[2]];
    }
    Eigensystem {
        energies,
        components,
        norms: [1.0; 4],
    }
}

fn lex_cmp(a: &[f64; 4], b: &[f64; 4]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y).unwrap() {
            std::cmp::Ordering::Equal => continue,
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// Closed-form spectrum where defined, dense diagonalization otherwise.
pub fn spectrum_robust(p: &ModelParams) -> Eigensystem {
    spectrum(p).unwrap_or_else(|_| spectrum_dense(p))
}

/// Geometric phase of eigenstate `j` over one azimuth cycle,
/// `2 pi (u_j1^2 - u_j4^2) / N_j`.
///
/// The value lies in `(-2 pi, 2 pi)` and equals the line integral
/// `int_0^{2 pi} <u_j| i d/dphi |u_j> dphi`; reduce mod `2 pi` for a
/// principal representative.
pub fn berry_phase(j: usize, p: &ModelParams) -> Result<f64> {
    Ok(berry_phase_of(&spectrum(p)?, j))
}

/// Berry phase from an already-built eigensystem (dense fallback included).
pub fn berry_phase_of(es: &Eigensystem, j: usize) -> f64 {
    let u = &es.components[j];
    2.0 * std::f64::consts::PI * (u[0] * u[0] - u[3] * u[3]) / es.norms[j]
}
