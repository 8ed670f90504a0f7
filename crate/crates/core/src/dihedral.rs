//! Operator representations Δ_d(Z) and Δ_d(X) of the dihedral group.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::group::DihedralElement;
use crate::operators::{dp_operator, fourier, trace_product, Operator};
use crate::ring::{Dim, ModInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Z,
    X,
}

/// `𝔷(a,ν) = Z^a 𝔓^ν` on the Z axis, `𝔛(b,ν) = X^b 𝔓^ν` on the X axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DihedralRep {
    pub axis: Axis,
    pub d: Dim,
}

impl DihedralRep {
    pub fn new(axis: Axis, d: Dim) -> Self {
        Self { axis, d }
    }

    pub fn rep_element(&self, a: ModInt, nu: u8) -> Operator {
        let zero = self.d.zero();
        let z = dp_operator(a, zero, zero, nu);
        match self.axis {
            Axis::Z => z,
            Axis::X => {
                let f = fourier(self.d);
                f.adjoint() * z * f
            }
        }
    }

    pub fn rep(&self, e: &DihedralElement) -> Operator {
        self.rep_element(e.a, e.nu)
    }

    /// `(1/d) Σ_a rep(a, ν)`.
    pub fn marginal_rep(&self, nu: u8) -> Operator {
        let mut acc = Operator::zeros(self.d.size(), self.d.size());
        for a in self.d.residues() {
            acc += self.rep_element(a, nu);
        }
        acc.unscale(self.d.size() as f64)
    }

    /// `Tr[Θ rep(a, ν)]`.
    pub fn ww_function(&self, theta: &Operator, a: ModInt, nu: u8) -> C64 {
        trace_product(theta, &self.rep_element(a, nu))
    }
}

/// `𝔚_Z(Θ; a, ν) = Tr[Θ 𝔷(a,ν)]`.
pub fn wz_function(theta: &Operator, a: ModInt, nu: u8) -> C64 {
    DihedralRep::new(Axis::Z, a.dim()).ww_function(theta, a, nu)
}

/// `𝔚_X(Θ; b, ν) = Tr[Θ 𝔛(b,ν)]`.
pub fn wx_function(theta: &Operator, b: ModInt, nu: u8) -> C64 {
    DihedralRep::new(Axis::X, b.dim()).ww_function(theta, b, nu)
}

pub fn marginal_rep(rep: &DihedralRep, nu: u8) -> Operator {
    rep.marginal_rep(nu)
}
