//! Phase-space points `(α, β, ν)` and their storage order.

use std::ops::{Add, Mul};

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::ring::{Dim, ModInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhasePoint {
    pub nu: u8,
    pub alpha: ModInt,
    pub beta: ModInt,
}

impl PhasePoint {
    pub fn new(alpha: ModInt, beta: ModInt, nu: u8) -> Self {
        Self {
            alpha,
            beta,
            nu: nu & 1,
        }
    }

    pub fn from_ints(d: Dim, alpha: i64, beta: i64, nu: u8) -> Self {
        Self::new(d.elem(alpha), d.elem(beta), nu)
    }
}

/// Row of a serialized table, with centered labels.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PointLabel {
    pub nu: u8,
    pub alpha: i64,
    pub beta: i64,
}

impl From<PhasePoint> for PointLabel {
    fn from(p: PhasePoint) -> Self {
        Self {
            nu: p.nu,
            alpha: p.alpha.centered(),
            beta: p.beta.centered(),
        }
    }
}

/// Storage slot: ν-major, then α, then β, both in centered order.
pub fn slot(d: Dim, p: PhasePoint) -> usize {
    (p.nu as usize * d.size() + d.index_of(p.alpha)) * d.size() + d.index_of(p.beta)
}

/// All points with `ν < n_nu`, in storage order.
pub fn points(d: Dim, n_nu: u8) -> Vec<PhasePoint> {
    let mut out = Vec::with_capacity(n_nu as usize * d.size() * d.size());
    for nu in 0..n_nu {
        for a in d.centered_residues() {
            for b in d.centered_residues() {
                out.push(PhasePoint::new(a, b, nu));
            }
        }
    }
    out
}

/// Symplectic Fourier transform of one ν-slice:
/// `out(γ,δ) = (1/d) Σ_{α,β} ω(s·2⁻¹(βγ − αδ)) in(α,β)`, with `s = ±1`.
/// Slices are indexed by [`slot`] with `ν = 0`.
pub fn symplectic_fourier<T>(d: Dim, input: &[T], sign: i64) -> Vec<T>
where
    T: Clone + Add<Output = T> + Mul<C64, Output = T>,
{
    let n = d.size();
    assert_eq!(input.len(), n * n);
    let scale = C64::new(1.0 / n as f64, 0.0);
    let mut out = Vec::with_capacity(n * n);
    for g in d.centered_residues() {
        for dl in d.centered_residues() {
            let mut acc: Option<T> = None;
            for (ia, a) in d.centered_residues().enumerate() {
                for (ib, b) in d.centered_residues().enumerate() {
                    let ph = (d.inv2() * (b * g - a * dl)).scale(sign).omega();
                    let term = input[ia * n + ib].clone() * ph;
                    acc = Some(match acc {
                        None => term,
                        Some(x) => x + term,
                    });
                }
            }
            out.push(acc.expect("nonempty grid") * scale);
        }
    }
    out
}
