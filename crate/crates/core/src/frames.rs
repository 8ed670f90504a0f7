//! Coherent-state frames over HW(d) (d² states) and HWP(d) (2d² states).

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{points, slot, symplectic_fourier, PhasePoint};
use crate::group::{GroupElement, HWPElement};
use crate::operators::{
    dp_operator, fourier, identity, ket_max_abs_diff, max_abs_diff, parity_projectors, projector, Ket, Operator,
};
use crate::ring::{Dim, Phase};

/// Tolerance for the fiducial genericity conditions.
pub const GENERICITY_EPS: f64 = 1e-6;

/// How far a fiducial sits from the degenerate cases.
#[derive(Clone, Debug, Serialize)]
pub struct GenericityReport {
    pub max_position_overlap: f64,
    pub max_momentum_overlap: f64,
    pub even_weight: f64,
    pub odd_weight: f64,
}

/// A unit-norm, generic fiducial vector.
#[derive(Clone, Debug)]
pub struct Fiducial {
    state: Ket,
    input_norm_sqr: f64,
    report: GenericityReport,
}

impl Fiducial {
    pub fn state(&self) -> &Ket {
        &self.state
    }

    pub fn dim(&self) -> Dim {
        Dim::new(self.state.len() as u32).expect("validated")
    }

    /// `‖s‖²` of the vector as supplied, before normalization.
    pub fn input_norm_sqr(&self) -> f64 {
        self.input_norm_sqr
    }

    pub fn report(&self) -> &GenericityReport {
        &self.report
    }
}

/// Normalizes `s` and rejects position-like, momentum-like and parity-eigenstate vectors.
pub fn validate_fiducial(s: &Ket) -> Result<Fiducial> {
    let d = Dim::new(s.len() as u32)?;
    let norm_sqr = s.norm_squared();
    if norm_sqr.is_nan() || norm_sqr <= 0.0 || !norm_sqr.is_finite() {
        return Err(Error::FiducialRejected("zero or non-finite vector".into()));
    }
    let state = s.unscale(norm_sqr.sqrt());
    let max_position_overlap = state.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let max_momentum_overlap = (fourier(d).adjoint() * &state)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let (p0, p1) = parity_projectors(d);
    let even_weight = (p0 * &state).norm();
    let odd_weight = (p1 * &state).norm();
    if max_position_overlap > 1.0 - GENERICITY_EPS {
        return Err(Error::FiducialRejected(
            "position-like (close to a position eigenstate)".into(),
        ));
    }
    if max_momentum_overlap > 1.0 - GENERICITY_EPS {
        return Err(Error::FiducialRejected(
            "momentum-like (close to a momentum eigenstate)".into(),
        ));
    }
    if even_weight < GENERICITY_EPS || odd_weight < GENERICITY_EPS {
        return Err(Error::FiducialRejected("parity eigenstate".into()));
    }
    Ok(Fiducial {
        state,
        input_norm_sqr: norm_sqr,
        report: GenericityReport {
            max_position_overlap,
            max_momentum_overlap,
            even_weight,
            odd_weight,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrameKind {
    /// d² states `D(α,β,0)|s⟩`.
    Hw,
    /// 2d² states `𝔇(α,β,0,ν)|s⟩`.
    Hwp,
}

impl FrameKind {
    pub fn n_nu(self) -> u8 {
        match self {
            FrameKind::Hw => 1,
            FrameKind::Hwp => 2,
        }
    }

    /// `1/d` or `1/(2d)`.
    pub fn weight(self, d: Dim) -> f64 {
        1.0 / (self.n_nu() as f64 * d.size() as f64)
    }

    /// Common value of all distinct-pair overlaps, were they equal.
    pub fn sic_target(self, d: Dim) -> f64 {
        let n = d.size() as f64;
        match self {
            FrameKind::Hw => 1.0 / (n + 1.0),
            FrameKind::Hwp => (2.0 * n - 1.0) / (2.0 * n * n - 1.0),
        }
    }
}

/// `|C;α,β,ν⟩ = 𝔇(α,β,0,ν)|s⟩`.
pub fn coherent_state(s: &Ket, p: PhasePoint) -> Ket {
    let d = p.alpha.dim();
    dp_operator(p.alpha, p.beta, d.zero(), p.nu) * s
}

#[derive(Clone, Debug)]
pub struct CoherentFrame {
    kind: FrameKind,
    fiducial: Fiducial,
    points: Vec<PhasePoint>,
    states: Vec<Ket>,
}

pub fn build_frame(kind: FrameKind, fiducial: &Fiducial) -> CoherentFrame {
    let d = fiducial.dim();
    let points = points(d, kind.n_nu());
    let states = points.iter().map(|&p| coherent_state(fiducial.state(), p)).collect();
    CoherentFrame {
        kind,
        fiducial: fiducial.clone(),
        points,
        states,
    }
}

impl CoherentFrame {
    pub fn kind(&self) -> FrameKind {
        self.kind
    }

    pub fn dim(&self) -> Dim {
        self.fiducial.dim()
    }

    pub fn fiducial(&self) -> &Fiducial {
        &self.fiducial
    }

    pub fn points(&self) -> &[PhasePoint] {
        &self.points
    }

    pub fn states(&self) -> &[Ket] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, p: PhasePoint) -> &Ket {
        assert!(p.nu < self.kind.n_nu(), "ν = 1 point in an HW frame");
        &self.states[slot(self.dim(), p)]
    }

    /// `w Σ |C⟩⟨C|`, which should be the identity.
    pub fn frame_operator(&self) -> Operator {
        let d = self.dim();
        let mut acc = Operator::zeros(d.size(), d.size());
        for c in &self.states {
            acc += projector(c);
        }
        acc * C64::new(self.kind.weight(d), 0.0)
    }

    pub fn resolution_deviation(&self) -> f64 {
        max_abs_diff(&self.frame_operator(), &identity(self.dim()))
    }
}

/* Displacement closure ******************************************************/

/// `𝔇(g)|C;α,β,ν⟩ = ω(Γ)|C;A,B,ν₁+ν⟩`.
pub fn closure_action(g: &HWPElement, p: PhasePoint) -> (Phase, PhasePoint) {
    let d = g.dim();
    let prod = g.mul(&HWPElement::new(p.alpha, p.beta, d.zero(), p.nu));
    (Phase::new(prod.gamma), PhasePoint::new(prod.alpha, prod.beta, prod.nu))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub element: String,
    pub max_deviation: f64,
}

/// Compares the closed-form image of every frame state with the matrix action.
pub fn displacement_closure_check(frame: &CoherentFrame, g: &HWPElement) -> ClosureReport {
    let m = g.matrix();
    let s = frame.fiducial.state();
    let mut max_deviation: f64 = 0.0;
    for (&p, c) in frame.points.iter().zip(&frame.states) {
        let (phase, q) = closure_action(g, p);
        let expected = coherent_state(s, q) * phase.to_complex();
        max_deviation = max_deviation.max(ket_max_abs_diff(&(&m * c), &expected));
    }
    ClosureReport {
        element: g.to_string(),
        max_deviation,
    }
}

/* Bargmann coefficients *****************************************************/

/// Coefficients `F(α,β,ν) = ⟨C;α,β,ν|f⟩` in frame order.
#[derive(Clone, Debug, PartialEq)]
pub struct BargmannTable {
    pub kind: FrameKind,
    pub d: Dim,
    pub values: Vec<C64>,
}

impl BargmannTable {
    pub fn zeros(kind: FrameKind, d: Dim) -> Self {
        Self {
            kind,
            d,
            values: vec![C64::new(0.0, 0.0); kind.n_nu() as usize * d.size() * d.size()],
        }
    }

    pub fn get(&self, p: PhasePoint) -> C64 {
        self.values[slot(self.d, p)]
    }

    pub fn points(&self) -> Vec<PhasePoint> {
        points(self.d, self.kind.n_nu())
    }

    /// `w Σ |F|²`, equal to `⟨f|f⟩`.
    pub fn norm_identity(&self) -> f64 {
        self.kind.weight(self.d) * self.values.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// The ν = 0 half as an HW table.
    pub fn hw_half(&self) -> BargmannTable {
        let n = self.d.size() * self.d.size();
        BargmannTable {
            kind: FrameKind::Hw,
            d: self.d,
            values: self.values[..n].to_vec(),
        }
    }
}

pub fn bargmann(frame: &CoherentFrame, f: &Ket) -> BargmannTable {
    BargmannTable {
        kind: frame.kind,
        d: frame.dim(),
        values: frame.states.iter().map(|c| c.dotc(f)).collect(),
    }
}

/// `|f⟩ = w Σ F |C⟩`.
pub fn reconstruct(frame: &CoherentFrame, table: &BargmannTable) -> Result<Ket> {
    if table.kind != frame.kind {
        return Err(Error::KindMismatch);
    }
    if table.values.len() != frame.len() {
        return Err(Error::Shape {
            expected: frame.len(),
            found: table.values.len(),
        });
    }
    let d = frame.dim();
    let mut acc = Ket::zeros(d.size());
    for (c, &z) in frame.states.iter().zip(&table.values) {
        acc += c * z;
    }
    Ok(acc * C64::new(frame.kind.weight(d), 0.0))
}

/// `⟨g|f⟩ = w Σ G* F`.
pub fn scalar_product(table_g: &BargmannTable, table_f: &BargmannTable) -> Result<C64> {
    if table_g.kind != table_f.kind || table_g.d != table_f.d {
        return Err(Error::KindMismatch);
    }
    let s: C64 = table_g
        .values
        .iter()
        .zip(&table_f.values)
        .map(|(g, f)| g.conj() * f)
        .sum();
    Ok(s * table_g.kind.weight(table_g.d))
}

/// `Q = |F|²`.
pub fn q_function(table: &BargmannTable) -> Vec<f64> {
    table.values.iter().map(|z| z.norm_sqr()).collect()
}

/* Overlaps ******************************************************************/

/// `|⟨C₁|C₂⟩|²` from the fiducial amplitudes alone:
/// `|Σ_m ω[((−1)^{ν₂+1}α₁ + (−1)^{ν₂}α₂) m] s*_k s_m|²`
/// with `k = (−1)^{ν₁+ν₂} m + (−1)^{ν₁+1} β₁ + (−1)^{ν₁} β₂`.
pub fn overlap_closed_form(s: &Ket, p1: PhasePoint, p2: PhasePoint) -> f64 {
    let d = p1.alpha.dim();
    let rate = p1.alpha.signed(p2.nu + 1) + p2.alpha.signed(p2.nu);
    let shift = p1.beta.signed(p1.nu + 1) + p2.beta.signed(p1.nu);
    let mut acc = C64::new(0.0, 0.0);
    for m in d.centered_residues() {
        let k = m.signed(p1.nu + p2.nu) + shift;
        acc += (rate * m).omega() * s[d.index_of(k)].conj() * s[d.index_of(m)];
    }
    acc.norm_sqr()
}

pub fn overlap_direct(s: &Ket, p1: PhasePoint, p2: PhasePoint) -> f64 {
    coherent_state(s, p1).dotc(&coherent_state(s, p2)).norm_sqr()
}

pub fn overlap(frame: &CoherentFrame, p1: PhasePoint, p2: PhasePoint) -> f64 {
    overlap_closed_form(frame.fiducial.state(), p1, p2)
}

/* Fourier duality between the ν halves **************************************/

#[derive(Clone, Debug, Serialize)]
pub struct FrameFourierReport {
    /// `(1/d) Σ ω(2⁻¹(βγ − αδ))|C;α,β,ν⟩` vs `|C;γ,δ,ν+1⟩`.
    pub state_deviation: f64,
    /// The conjugate relation on Bargmann coefficients.
    pub coefficient_deviation: f64,
    /// Applying the transform at ν and then at ν+1.
    pub involution_deviation: f64,
}

impl FrameFourierReport {
    pub fn max_deviation(&self) -> f64 {
        self.state_deviation
            .max(self.coefficient_deviation)
            .max(self.involution_deviation)
    }
}

/// Checks the Fourier relation between the two halves of an HWP frame.
/// `kernel_sign = 1` is the true relation; `-1` flips the kernel.
pub fn frame_fourier_check_with(frame: &CoherentFrame, f: &Ket, kernel_sign: i64) -> Result<FrameFourierReport> {
    if frame.kind != FrameKind::Hwp {
        return Err(Error::KindMismatch);
    }
    let d = frame.dim();
    let n = d.size() * d.size();
    let table = bargmann(frame, f);
    let mut state_deviation: f64 = 0.0;
    let mut coefficient_deviation: f64 = 0.0;
    let mut involution_deviation: f64 = 0.0;
    for nu in 0..2usize {
        let other = 1 - nu;
        let half = &frame.states[nu * n..(nu + 1) * n];
        let moved = symplectic_fourier(d, half, kernel_sign);
        for (a, b) in moved.iter().zip(&frame.states[other * n..(other + 1) * n]) {
            state_deviation = state_deviation.max(ket_max_abs_diff(a, b));
        }
        let back = symplectic_fourier(d, &moved, kernel_sign);
        for (a, b) in back.iter().zip(half) {
            involution_deviation = involution_deviation.max(ket_max_abs_diff(a, b));
        }
        let coeffs = symplectic_fourier(d, &table.values[nu * n..(nu + 1) * n], -kernel_sign);
        for (a, b) in coeffs.iter().zip(&table.values[other * n..(other + 1) * n]) {
            coefficient_deviation = coefficient_deviation.max((a - b).norm());
        }
    }
    Ok(FrameFourierReport {
        state_deviation,
        coefficient_deviation,
        involution_deviation,
    })
}

pub fn frame_fourier_check(frame: &CoherentFrame, f: &Ket) -> Result<FrameFourierReport> {
    frame_fourier_check_with(frame, f, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{ket_from, position_ket};

    fn d3_fiducial() -> Ket {
        ket_from(&[(0.5, 0.0), (0.0, 0.4), (0.77, 0.0)])
    }

    #[test]
    fn fiducial_rejections() {
        let d = Dim::new(3).unwrap();
        assert!(validate_fiducial(&d3_fiducial()).is_ok());
        let err = validate_fiducial(&position_ket(d.zero())).unwrap_err().to_string();
        assert!(err.contains("position-like"), "{err}");
        let even = ket_from(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let err = validate_fiducial(&even).unwrap_err().to_string();
        assert!(err.contains("parity"), "{err}");
        let mom = crate::operators::momentum_ket(d.one());
        let err = validate_fiducial(&mom).unwrap_err().to_string();
        assert!(err.contains("momentum-like"), "{err}");
    }

    #[test]
    fn fiducial_records_input_norm() {
        let f = validate_fiducial(&d3_fiducial()).unwrap();
        assert!((f.input_norm_sqr() - 1.0029).abs() < 1e-12);
        assert!((f.state().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn first_state_is_fiducial() {
        let fid = validate_fiducial(&d3_fiducial()).unwrap();
        let frame = build_frame(FrameKind::Hwp, &fid);
        let d = fid.dim();
        assert_eq!(frame.len(), 18);
        assert!(ket_max_abs_diff(frame.state(PhasePoint::from_ints(d, 0, 0, 0)), fid.state()) < 1e-15);
    }

    #[test]
    fn zero_table_reconstructs_zero() {
        let fid = validate_fiducial(&d3_fiducial()).unwrap();
        let frame = build_frame(FrameKind::Hw, &fid);
        let z = reconstruct(&frame, &BargmannTable::zeros(FrameKind::Hw, fid.dim())).unwrap();
        assert!(z.iter().all(|c| c.norm() == 0.0));
        assert!(reconstruct(&frame, &BargmannTable::zeros(FrameKind::Hwp, fid.dim())).is_err());
    }

    #[test]
    fn sic_targets() {
        let d = Dim::new(3).unwrap();
        assert!((FrameKind::Hw.sic_target(d) - 0.25).abs() < 1e-15);
        assert!((FrameKind::Hwp.sic_target(d) - 5.0 / 17.0).abs() < 1e-15);
    }
}
