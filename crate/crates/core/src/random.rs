//! Seeded random kets, operators and group elements for property checks.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::frames::{validate_fiducial, Fiducial};
use crate::group::HWPElement;
use crate::operators::{Ket, Operator};
use crate::ring::Dim;

pub fn complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Unit ket with Gaussian amplitudes.
pub fn ket<R: Rng>(d: Dim, rng: &mut R) -> Ket {
    let v = Ket::from_fn(d.size(), |_, _| complex(rng));
    let n = v.norm();
    v.unscale(n)
}

pub fn operator<R: Rng>(d: Dim, rng: &mut R) -> Operator {
    Operator::from_fn(d.size(), d.size(), |_, _| complex(rng))
}

pub fn hermitian<R: Rng>(d: Dim, rng: &mut R) -> Operator {
    let a = operator(d, rng);
    (&a + a.adjoint()).scale(0.5)
}

/// Random density matrix of full rank.
pub fn density<R: Rng>(d: Dim, rng: &mut R) -> Operator {
    let a = operator(d, rng);
    let rho = &a * a.adjoint();
    let t = rho.trace();
    rho / t
}

pub fn hwp_element<R: Rng>(d: Dim, rng: &mut R) -> HWPElement {
    let n = d.get() as i64;
    HWPElement::from_ints(
        d,
        rng.random_range(0..n),
        rng.random_range(0..n),
        rng.random_range(0..n),
        rng.random_range(0..2),
    )
}

/// A random fiducial that passes validation.
pub fn fiducial<R: Rng>(d: Dim, rng: &mut R) -> Fiducial {
    loop {
        if let Ok(f) = validate_fiducial(&ket(d, rng)) {
            return f;
        }
    }
}
