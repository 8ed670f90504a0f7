//! Dense operators over the centered position basis `|X;j⟩`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::ring::{Dim, ModInt};

pub type Ket = DVector<C64>;
pub type Operator = DMatrix<C64>;

const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/* Helpers *******************************************************************/

pub fn identity(d: Dim) -> Operator {
    Operator::identity(d.size(), d.size())
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &Operator, b: &Operator) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn ket_max_abs_diff(a: &Ket, b: &Ket) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `‖U†U − 1‖_max`.
pub fn unitarity_deviation(u: &Operator) -> f64 {
    let n = u.nrows();
    max_abs_diff(&(u.adjoint() * u), &Operator::identity(n, n))
}

/// `‖H − H†‖_max`.
pub fn hermiticity_deviation(h: &Operator) -> f64 {
    max_abs_diff(h, &h.adjoint())
}

pub fn matrix_pow(m: &Operator, n: u32) -> Operator {
    let mut out = Operator::identity(m.nrows(), m.ncols());
    for _ in 0..n {
        out = &out * m;
    }
    out
}

/// `Tr[AB]` without forming the product.
pub fn trace_product(a: &Operator, b: &Operator) -> C64 {
    let mut acc = ZERO;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Projector `|v⟩⟨v|`.
pub fn projector(v: &Ket) -> Operator {
    v * v.adjoint()
}

/// Normalize a ket; errors on the zero vector.
pub fn normalized(v: &Ket) -> Result<Ket> {
    let n = v.norm();
    if n == 0.0 || !n.is_finite() {
        return Err(Error::NotNormalized { norm_sqr: n * n });
    }
    Ok(v.unscale(n))
}

/// Build a ket from `(re, im)` pairs.
pub fn ket_from(entries: &[(f64, f64)]) -> Ket {
    Ket::from_iterator(entries.len(), entries.iter().map(|&(r, i)| C64::new(r, i)))
}

/* Basis states **************************************************************/

/// `|X;j⟩`.
pub fn position_ket(j: ModInt) -> Ket {
    let d = j.dim();
    let mut v = Ket::zeros(d.size());
    v[d.index_of(j)] = ONE;
    v
}

/// `|P;j⟩ = F|X;j⟩`.
pub fn momentum_ket(j: ModInt) -> Ket {
    let d = j.dim();
    let norm = (d.size() as f64).sqrt().recip();
    Ket::from_iterator(d.size(), d.centered_residues().map(|k| (k * j).omega() * norm))
}

/* Factories *****************************************************************/

/// `F_{jk} = ω(jk)/√d`.
pub fn fourier(d: Dim) -> Operator {
    let norm = (d.size() as f64).sqrt().recip();
    Operator::from_fn(d.size(), d.size(), |r, c| {
        (d.residue_at(r) * d.residue_at(c)).omega() * norm
    })
}

/// `Z^α = Σ_j ω(αj)|X;j⟩⟨X;j|`.
pub fn clock_z(alpha: ModInt) -> Operator {
    let d = alpha.dim();
    Operator::from_diagonal(&Ket::from_iterator(
        d.size(),
        d.centered_residues().map(|j| (alpha * j).omega()),
    ))
}

/// `X^β|X;j⟩ = |X;j+β⟩`.
pub fn shift_x(beta: ModInt) -> Operator {
    let d = beta.dim();
    let mut m = Operator::zeros(d.size(), d.size());
    for j in d.centered_residues() {
        m[(d.index_of(j + beta), d.index_of(j))] = ONE;
    }
    m
}

/// `x̂ = Σ j|X;j⟩⟨X;j|` over centered residues.
pub fn position_op(d: Dim) -> Operator {
    Operator::from_diagonal(&Ket::from_iterator(
        d.size(),
        d.centered_residues().map(|j| C64::new(j.centered() as f64, 0.0)),
    ))
}

/// `p̂ = F x̂ F†`.
pub fn momentum_op(d: Dim) -> Operator {
    let f = fourier(d);
    &f * position_op(d) * f.adjoint()
}

/// `𝔓 = F²`, the parity `|X;j⟩ ↦ |X;−j⟩`.
pub fn parity(d: Dim) -> Operator {
    let mut m = Operator::zeros(d.size(), d.size());
    for j in d.centered_residues() {
        m[(d.index_of(-j), d.index_of(j))] = ONE;
    }
    m
}

/// Projectors `(ϖ₀, ϖ₁) = ((1 + 𝔓)/2, (1 − 𝔓)/2)`.
pub fn parity_projectors(d: Dim) -> (Operator, Operator) {
    let p = parity(d);
    let one = identity(d);
    ((&one + &p).scale(0.5), (&one - &p).scale(0.5))
}

/// `Tr(𝔓ρ)` for a density matrix ρ.
pub fn parity_expectation(rho: &Operator) -> Result<f64> {
    let n = rho.nrows();
    let d = Dim::new(n as u32)?;
    check_density(rho, 1e-10)?;
    Ok((parity(d) * rho).trace().re)
}

/// Checks Hermiticity, unit trace and positivity within `tol`.
pub fn check_density(rho: &Operator, tol: f64) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::NotDensityMatrix("not square".into()));
    }
    let herm = hermiticity_deviation(rho);
    if herm > tol {
        return Err(Error::NotDensityMatrix(format!("not Hermitian (deviation {herm:.3e})")));
    }
    let tr = rho.trace();
    if (tr - ONE).norm() > tol {
        return Err(Error::NotDensityMatrix(format!("trace {tr} != 1")));
    }
    let min = SymmetricEigen::new(rho.clone()).eigenvalues.min();
    if min < -tol {
        return Err(Error::NotDensityMatrix(format!("negative eigenvalue {min:.3e}")));
    }
    Ok(())
}

/// `D(α,β,γ) = Z^α X^β ω(γ − 2⁻¹αβ)`.
pub fn displacement(alpha: ModInt, beta: ModInt, gamma: ModInt) -> Operator {
    dp_operator(alpha, beta, gamma, 0)
}

/// `𝔓(α,β) = D(2α,2β,0)𝔓`.
pub fn displaced_parity(alpha: ModInt, beta: ModInt) -> Operator {
    dp_operator(alpha.scale(2), beta.scale(2), alpha.dim().zero(), 1)
}

/// Closed-form action of `𝔇(α,β,γ,ν)` on `|X;j⟩`:
/// `ω[2⁻¹αβ + (−1)^ν αj + γ] |X;(−1)^ν j + β⟩`.
pub fn dp_action_position(alpha: ModInt, beta: ModInt, gamma: ModInt, nu: u8, j: ModInt) -> (ModInt, ModInt) {
    let d = alpha.dim();
    let sj = j.signed(nu);
    (d.inv2() * alpha * beta + alpha * sj + gamma, sj + beta)
}

/// Closed-form action of `𝔇(α,β,γ,ν)` on `|P;j⟩`:
/// `ω[−2⁻¹αβ − (−1)^ν βj + γ] |P;(−1)^ν j + α⟩`.
pub fn dp_action_momentum(alpha: ModInt, beta: ModInt, gamma: ModInt, nu: u8, j: ModInt) -> (ModInt, ModInt) {
    let d = alpha.dim();
    let sj = j.signed(nu);
    (-(d.inv2() * alpha * beta) - beta * sj + gamma, sj + alpha)
}

/// `𝔇(α,β,γ,ν) = D(α,β,γ)𝔓^ν`, assembled column by column.
pub fn dp_operator(alpha: ModInt, beta: ModInt, gamma: ModInt, nu: u8) -> Operator {
    let d = alpha.dim();
    let mut m = Operator::zeros(d.size(), d.size());
    for j in d.centered_residues() {
        let (phase, out) = dp_action_position(alpha, beta, gamma, nu, j);
        m[(d.index_of(out), d.index_of(j))] = phase.omega();
    }
    m
}

/// `𝔇(α,β,γ,ν)` as the literal product `Z^α X^β ω(γ − 2⁻¹αβ) 𝔓^ν`.
pub fn dp_operator_by_factors(alpha: ModInt, beta: ModInt, gamma: ModInt, nu: u8) -> Operator {
    let d = alpha.dim();
    let phase = (gamma - d.inv2() * alpha * beta).omega();
    let mut m = clock_z(alpha) * shift_x(beta) * phase;
    if nu & 1 == 1 {
        m = m * fourier(d) * fourier(d);
    }
    m
}

/* Hamiltonians **************************************************************/

/// `h = (d/2πi) log U` with eigenphases in `(−π, π]`.
pub fn principal_log_hamiltonian(u: &Operator) -> Result<Operator> {
    let n = u.nrows();
    if !u.is_square() || n == 0 {
        return Err(Error::Shape {
            expected: u.nrows(),
            found: u.ncols(),
        });
    }
    let dev = unitarity_deviation(u);
    if dev > 1e-10 {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let schur = Schur::try_new(u.clone(), 1e-15, 100_000).ok_or(Error::NotUnitary { deviation: dev })?;
    let (q, t) = schur.unpack();
    let scale = n as f64 / (2.0 * PI);
    let phases = Ket::from_iterator(
        n,
        t.diagonal().iter().map(|z| {
            let mut theta = z.arg();
            if theta <= -PI {
                theta = PI;
            }
            C64::new(theta * scale, 0.0)
        }),
    );
    let h = &q * Operator::from_diagonal(&phases) * q.adjoint();
    Ok((&h + h.adjoint()).scale(0.5))
}

/// `exp(i h t)` for Hermitian `h`.
pub fn exp_i(h: &Operator, t: f64) -> Operator {
    let eig = SymmetricEigen::new(h.clone());
    let v = &eig.eigenvectors;
    let diag = Ket::from_iterator(h.nrows(), eig.eigenvalues.iter().map(|&l| C64::from_polar(1.0, l * t)));
    v * Operator::from_diagonal(&diag) * v.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u32) -> Dim {
        Dim::new(d).unwrap()
    }

    #[test]
    fn factories_agree_with_factor_products() {
        for d in [3, 5, 7] {
            let dd = dim(d);
            for a in dd.residues() {
                for b in dd.residues() {
                    for nu in 0..2 {
                        let g = dd.elem(a.value() as i64 + 2 * b.value() as i64);
                        let x = dp_operator(a, b, g, nu);
                        let y = dp_operator_by_factors(a, b, g, nu);
                        assert!(max_abs_diff(&x, &y) < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn parity_is_fourier_squared() {
        for d in [3, 5, 7, 9] {
            let dd = dim(d);
            let f = fourier(dd);
            assert!(max_abs_diff(&(&f * &f), &parity(dd)) < 1e-12);
        }
    }

    #[test]
    fn parity_expectation_examples() {
        let d = dim(3);
        let x0 = projector(&position_ket(d.zero()));
        assert!((parity_expectation(&x0).unwrap() - 1.0).abs() < 1e-12);
        let mixed = identity(d).scale(1.0 / 3.0);
        assert!((parity_expectation(&mixed).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        let odd = (position_ket(d.one()) - position_ket(-d.one())).scale(0.5f64.sqrt());
        assert!((parity_expectation(&projector(&odd)).unwrap() + 1.0).abs() < 1e-12);
        assert!(parity_expectation(&identity(d)).is_err());
    }

    #[test]
    fn log_of_identity_is_zero() {
        let h = principal_log_hamiltonian(&identity(dim(5))).unwrap();
        assert!(h.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn log_rejects_non_unitary() {
        let m = identity(dim(3)).scale(2.0);
        assert!(matches!(principal_log_hamiltonian(&m), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn log_handles_branch_point() {
        let d = dim(3);
        let u = identity(d).scale(-1.0);
        let h = principal_log_hamiltonian(&u).unwrap();
        for i in 0..3 {
            assert!((h[(i, i)].re - 1.5).abs() < 1e-12);
        }
    }
}
