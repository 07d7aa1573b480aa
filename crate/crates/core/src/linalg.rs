//! Small dense linear-algebra helpers shared across the crate.

use nalgebra::SymmetricEigen;
use num_complex::Complex64 as C64;

use crate::MatrixC;

/// Principal argument in `(-pi, pi]`. `atan2` returns `-pi` for negative real
/// values approached from below; that endpoint is folded onto `+pi` so the
/// topological 0-vs-pi classification is deterministic on the branch cut.
pub(crate) fn principal_arg(z: C64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        a
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues and a unitary
/// matrix of column eigenvectors.
pub(crate) fn hermitian_eigen(m: &MatrixC) -> (Vec<f64>, MatrixC) {
    let se = SymmetricEigen::new(m.clone());
    (se.eigenvalues.as_slice().to_vec(), se.eigenvectors)
}

/// `exp(i s H)` for Hermitian `H`, via eigendecomposition.
pub(crate) fn exp_i_hermitian(h: &MatrixC, s: f64) -> MatrixC {
    let (vals, vecs) = hermitian_eigen(h);
    let n = h.nrows();
    let mut out = MatrixC::zeros(n, n);
    for (k, &lambda) in vals.iter().enumerate() {
        let phase = C64::from_polar(1.0, s * lambda);
        let v = vecs.column(k);
        out += (v * v.adjoint()) * phase;
    }
    out
}

pub(crate) fn unitarity_defect(v: &MatrixC) -> f64 {
    let n = v.nrows();
    (v.adjoint() * v - MatrixC::identity(n, n)).norm()
}

/// Nearest unitary in Frobenius norm: `V (V^H V)^{-1/2}`.
pub(crate) fn polar_unitary(v: &MatrixC) -> MatrixC {
    let gram = v.adjoint() * v;
    let (vals, vecs) = hermitian_eigen(&gram);
    let n = v.nrows();
    let mut inv_sqrt = MatrixC::zeros(n, n);
    for (k, &lambda) in vals.iter().enumerate() {
        let w = C64::new(1.0 / lambda.max(f64::MIN_POSITIVE).sqrt(), 0.0);
        let col = vecs.column(k);
        inv_sqrt += (col * col.adjoint()) * w;
    }
    v * inv_sqrt
}
