//! Named identity suites with deviations, a manifest and fault injection.

use std::fmt;
use std::str::FromStr;

use nalgebra::SymmetricEigen;
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dihedral::{Axis, DihedralRep};
use crate::error::{Error, Result};
use crate::frames::{
    bargmann, build_frame, displacement_closure_check, frame_fourier_check, overlap_closed_form, overlap_direct,
    q_function, reconstruct, scalar_product, FrameKind,
};
use crate::grid::PhasePoint;
use crate::group::{
    self, commutator2_hwp, commutator_dihedral, commutator_hw, commutator_hwp, DihedralElement, GroupElement,
    HWPElement,
};
use crate::operators::{
    clock_z, dp_action_momentum, dp_action_position, dp_operator, dp_operator_by_factors, exp_i, fourier,
    hermiticity_deviation, identity, ket_max_abs_diff, matrix_pow, max_abs_diff, momentum_ket, momentum_op, parity,
    parity_projectors, position_ket, position_op, principal_log_hamiltonian, shift_x, trace_product,
    unitarity_deviation, Operator,
};
use crate::random;
use crate::ring::Dim;
use crate::wigner::{
    expand_displacements, expand_parities, expand_unified, marginals, moyal_star, restriction_deviation,
    synthesize_displacements, synthesize_parities, unified_product, unified_ww, weyl_convolution, weyl_table,
    wigner_table, ww_fourier, ww_fourier_with,
};

/// Default tolerance for exact identities evaluated in floating point.
pub const TOL: f64 = 1e-10;
/// Tolerance for convolution-type products.
pub const TOL_PRODUCT: f64 = 1e-9;
/// Tolerance for `exp(i h t) = U`.
pub const TOL_STROBOSCOPIC: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Operators,
    Group,
    Frames,
    Ww,
}

impl Suite {
    fn includes(self, s: Suite) -> bool {
        self == Suite::All || self == s
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "operators" => Ok(Suite::Operators),
            "group" => Ok(Suite::Group),
            "frames" => Ok(Suite::Frames),
            "ww" => Ok(Suite::Ww),
            _ => Err(Error::Parse(format!("unknown suite '{s}'"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::All => "all",
            Suite::Operators => "operators",
            Suite::Group => "group",
            Suite::Frames => "frames",
            Suite::Ww => "ww",
        };
        f.write_str(s)
    }
}

/// Deliberate corruptions used to show that the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Fault {
    /// Negates the kernel of the unified Fourier relation.
    UnifiedFourierSign,
    /// Flips ν in products of a reflection with a nontrivial HW element.
    CorruptMultiplication,
}

impl FromStr for Fault {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unified-fourier-sign" => Ok(Fault::UnifiedFourierSign),
            "corrupt-multiplication" => Ok(Fault::CorruptMultiplication),
            _ => Err(Error::Parse(format!("unknown fault '{s}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub dims: Vec<Dim>,
    pub group_dims: Vec<Dim>,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        let d = |n| Dim::new(n).expect("odd");
        Self {
            dims: vec![d(3), d(5), d(7)],
            group_dims: vec![d(3), d(5)],
            seed: 7,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub d: u32,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesSummary {
    pub group: &'static str,
    pub d: u32,
    pub order: usize,
    pub derived_series_sizes: Vec<usize>,
    pub lower_central_sizes: Vec<usize>,
    pub nilpotent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifestEntry {
    pub name: &'static str,
    pub suite: Suite,
    pub identity: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub dims: Vec<u32>,
    pub group_dims: Vec<u32>,
    pub passed: bool,
    pub failures: Vec<String>,
    pub manifest: Vec<ManifestEntry>,
    pub series: Vec<SeriesSummary>,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn check(&self, name: &str, d: u32) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name && c.d == d)
    }

    pub fn series_for(&self, group: &str, d: u32) -> Option<&SeriesSummary> {
        self.series.iter().find(|s| s.group == group && s.d == d)
    }
}

macro_rules! manifest {
    ($($suite:ident $name:literal => $desc:literal;)*) => {
        const MANIFEST: &[(Suite, &str, &str)] = &[$((Suite::$suite, $name, $desc)),*];
    };
}

manifest! {
    Operators "fourier-unitary" => "F F† = 1";
    Operators "fourier-fourth-power" => "F⁴ = 1";
    Operators "clock-shift-period" => "Z^d = X^d = 1";
    Operators "weyl-commutation" => "X^β Z^α = ω(−αβ) Z^α X^β (exact exponent and matrices)";
    Operators "fourier-intertwining" => "Z^α = F X^α F†";
    Operators "position-momentum" => "p̂ = F x̂ F†, equal spectra, Tr x̂ = 0";
    Operators "displacement-factor-form" => "column-built 𝔇(α,β,γ,ν) equals Z^α X^β ω(γ − 2⁻¹αβ) 𝔓^ν";
    Operators "displacement-unitary-period" => "D unitary, D^d = 1, D† = D(−α,−β,−γ)";
    Operators "displacement-conjugation" => "D Z D† = ω(−β)Z and D X D† = ω(α)X, i.e. x̂ ↦ x̂ − β, p̂ ↦ p̂ − α mod d";
    Operators "parity-structure" => "𝔓 = F², 𝔓² = 1, 𝔓 = 𝔓†, ϖ₀ ± ϖ₁, ranks and eigenvalue multiplicities";
    Operators "parity-conjugation" => "𝔓^ν D(α,β,γ) 𝔓^ν = D((−1)^ν α, (−1)^ν β, γ)";
    Operators "displaced-parity" => "𝔓(α,β) = D(2α,2β,0)𝔓 = 𝔓D(−2α,−2β,0) = D(α,β,0)𝔓D(α,β,0)†, involutive";
    Operators "dp-alternate-form" => "D(α,β,γ)𝔓^ν = 𝔓^ν D((−1)^ν α, (−1)^ν β, γ)";
    Operators "dp-trace" => "Tr 𝔇(α,β,0,1) = 1, Tr 𝔇(α,β,0,0) = d δ(α,0) δ(β,0)";
    Operators "dp-period" => "𝔇(α,β,γ,0)^d = 𝔇(α,β,0,1)² = 𝔇^{2d} = 1";
    Operators "dp-inverse" => "𝔇⁻¹ = 𝔇† = 𝔇((−1)^{ν+1}α, (−1)^{ν+1}β, −γ, ν)";
    Operators "dp-position-action" => "closed-form action on |X;j⟩ equals the matrix action";
    Operators "dp-momentum-action" => "closed-form action on |P;j⟩ equals the matrix action";
    Operators "dp-homomorphism" => "matrix of the abstract product equals product of matrices (200 random pairs)";
    Operators "hamiltonian-stroboscopic" => "h = (d/2πi) log U is Hermitian and exp(i h 2π/d) = U";
    Operators "parity-symmetric-evolution" => "[𝔓,h] = 0 keeps ⟨𝔓⟩ constant in time";
    Operators "dihedral-homomorphism" => "rep(e₁)rep(e₂) = rep(e₁e₂) on both axes, exhaustive";
    Operators "dihedral-structure" => "orders d, 2, 2d; inverse formula; 𝔷 = F𝔛F†; 𝔛 = X^b𝔓^ν";
    Operators "dihedral-momentum-action" => "𝔷(a,1)|P;j⟩ = |P;−j+a⟩";
    Group "hwp-closure" => "generated HWP(d) is closed under products and inverses, order 2d³";
    Group "hwp-derived-series" => "HWP(d) ▷ HW(d) ▷ centre ▷ {1}, sizes 2d³, d³, d, 1";
    Group "hw-derived-series" => "HW(d) ▷ centre ▷ {1}, sizes d³, d, 1";
    Group "dihedral-derived-series" => "Δ_d ▷ Z(d) ▷ {1}, sizes 2d, d, 1";
    Group "quotient-orders" => "successive quotients of orders 2, d², d (HWP) and 2, d (Δ_d)";
    Group "hw-nilpotent" => "lower central series of HW(d) reaches {1}";
    Group "hwp-not-nilpotent" => "lower central series of HWP(d) stabilizes at HW(d)";
    Group "semidirect-hwp" => "HW(d) normal, {1,𝔓} subgroup, unique factorization, trivial intersection";
    Group "semidirect-dihedral" => "Z(d) normal in Δ_d, {1,𝔓} subgroup, unique factorization, trivial intersection";
    Group "commutator-identities" => "[g,h]⁻¹ = [h,g], [g,h]hg = gh, [f,gh][g,hf][h,fg] = 1";
    Group "commutator-closed-forms" => "closed forms for HW, dihedral and HWP commutators equal literal commutators";
    Group "commutator-matrix-oracle" => "HWP commutator matrix equals the four-matrix product";
    Group "commutator-bilinearity" => "HW commutator phase is additive in its first argument";
    Group "commutator-dihedral-embedding" => "HWP commutator on (α,0,γ,ν) equals the embedded dihedral commutator";
    Group "double-commutator" => "commutator of commutators equals ω(Φ)·1 against the 16-factor matrix product";
    Group "hw-loop-unit-modulus" => "|⟨f|ℒ₁|f⟩| = 1";
    Group "inverse-and-order" => "g g⁻¹ = 1 and the order of g divides 2d";
    Frames "resolution-hw" => "(1/d) Σ |C;α,β⟩⟨C;α,β| = 1 for random fiducials";
    Frames "resolution-hwp" => "(1/2d) Σ |C;α,β,ν⟩⟨C;α,β,ν| = 1 for random fiducials";
    Frames "resolution-operator" => "(1/2d) Σ 𝔇Θ𝔇† = Tr(Θ) 1";
    Frames "hw-subframe" => "the ν = 0 half of the HWP frame is the HW frame";
    Frames "displacement-closure" => "𝔇(g)|C;α,β,ν⟩ = ω(Γ)|C;A,B,ν₁+ν⟩";
    Frames "bargmann-norm" => "w Σ |F|² = ⟨f|f⟩, and F(α,β,0) equals the HW coefficients";
    Frames "reconstruction" => "w Σ F |C⟩ = |f⟩ for both frames";
    Frames "scalar-product" => "w Σ G* F = ⟨g|f⟩";
    Frames "q-normalization" => "w Σ Q = 1 for unit f";
    Frames "overlap-closed-form" => "closed-form |⟨C₁|C₂⟩|² equals the direct inner product";
    Frames "frame-fourier" => "Fourier relation between the ν halves of the frame and of the coefficients";
    Ww "unified-restrictions" => "𝔚 restricts to W, W̃, 𝔚_Z and 𝔚_X";
    Ww "unified-fourier" => "(1/d) Σ ω(2⁻¹(βγ − αδ)) 𝔇(α,β,0,ν) = 𝔇(γ,δ,0,ν+1) and the same for 𝔚";
    Ww "unified-fourier-involution" => "the ν → ν+1 → ν transform returns the original table";
    Ww "orthogonality" => "(1/2d) Σ 𝔇_ij((−1)^{ν+1}α,(−1)^{ν+1}β,0,ν) 𝔇_kl(α,β,0,ν) = δ_il δ_jk";
    Ww "expansion-displacements" => "Θ = (1/d) Σ W̃(Θ;−α,−β) D(α,β,0)";
    Ww "expansion-parities" => "Θ = (1/d) Σ W(Θ;α,β) 𝔓(α,β)";
    Ww "expansion-unified" => "λ-weighted redundant expansion reconstructs Θ for λ ∈ {0, 0.3, 0.5, 0.7, 1}";
    Ww "weyl-convolution" => "Weyl table of Θ₁Θ₂ from the twisted convolution";
    Ww "moyal-star" => "Wigner table of Θ₁Θ₂ from the Moyal star product";
    Ww "unified-product" => "unified table of Θ₁Θ₂ from the (α,β,ν) convolution";
    Ww "wigner-real" => "Hermitian Θ has a real Wigner slice";
    Ww "marginal-ww-momentum-line" => "(1/d) Σ_β 𝔚 = ⟨P;2⁻¹α|𝔓^{ν+1}Θ|P;2⁻¹α⟩";
    Ww "marginal-ww-position-line" => "(1/d) Σ_α 𝔚 = ⟨X;2⁻¹β|𝔓^{ν+1}Θ|X;2⁻¹β⟩";
    Ww "marginal-ww-total" => "(1/d) Σ_{α,β} 𝔚 = Tr(Θ𝔓^{ν+1})";
    Ww "marginal-ww-parity-sectors" => "(1/2d) Σ 𝔚 = Tr(Θϖ₀), (1/2d) Σ (−1)^{ν+1} 𝔚 = Tr(Θϖ₁)";
    Ww "marginal-operator-momentum-line" => "(1/d) Σ_β 𝔇(α,β,0,ν) = |P;2⁻¹α⟩⟨P;2⁻¹α|𝔓^{ν+1}";
    Ww "marginal-operator-position-line" => "(1/d) Σ_α 𝔇(α,β,0,ν) = |X;2⁻¹β⟩⟨X;2⁻¹β|𝔓^{ν+1}";
    Ww "marginal-operator-total" => "(1/d) Σ_{α,β} 𝔇(α,β,0,ν) = 𝔓^{ν+1}";
    Ww "marginal-operator-parity-sectors" => "(1/2d) Σ 𝔇 = ϖ₀, (1/2d) Σ (−1)^{ν+1} 𝔇 = ϖ₁";
    Ww "marginal-wigner-lines" => "Wigner line sums give position and momentum probabilities";
    Ww "marginal-weyl-lines" => "Weyl line sums give ⟨P;2⁻¹α|𝔓Θ|P;2⁻¹α⟩ and ⟨X;2⁻¹β|𝔓Θ|X;2⁻¹β⟩";
    Ww "marginal-wz-marginal" => "(1/d) Σ_a 𝔚_Z(Θ;a,ν) = ⟨X;0|Θ|X;0⟩";
    Ww "marginal-rep-marginal" => "(1/d) Σ_a 𝔷(a,ν) = |X;0⟩⟨X;0|";
}

/// The full list of named identities.
pub fn manifest() -> Vec<ManifestEntry> {
    MANIFEST
        .iter()
        .map(|&(suite, name, identity)| ManifestEntry { name, suite, identity })
        .collect()
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn dev(&mut self, name: &'static str, d: Dim, max_deviation: f64, tolerance: f64) {
        debug_assert!(MANIFEST.iter().any(|m| m.1 == name), "{name} missing from manifest");
        let passed = max_deviation.is_finite() && max_deviation <= tolerance;
        self.checks.push(Check {
            name,
            d: d.get(),
            max_deviation,
            tolerance,
            passed,
        });
    }

    fn flag(&mut self, name: &'static str, d: Dim, ok: bool) {
        self.dev(name, d, if ok { 0.0 } else { 1.0 }, 0.0);
    }
}

fn rng_for(seed: u64, d: Dim, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((d.get() as u64) << 8) | salt);
    rng
}

/// Runs the requested suite.
pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut rec = Recorder { checks: vec![] };
    let mut series = vec![];
    if suite.includes(Suite::Operators) {
        for &d in &opts.dims {
            operators_suite(&mut rec, d, &mut rng_for(opts.seed, d, 1))?;
        }
    }
    if suite.includes(Suite::Group) {
        for &d in &opts.group_dims {
            series.extend(group_series_suite(&mut rec, d, opts.fault)?);
        }
        for &d in &opts.dims {
            group_algebra_suite(&mut rec, d, &mut rng_for(opts.seed, d, 2));
        }
    }
    if suite.includes(Suite::Frames) {
        for &d in &opts.dims {
            frames_suite(&mut rec, d, &mut rng_for(opts.seed, d, 3))?;
        }
    }
    if suite.includes(Suite::Ww) {
        for &d in &opts.dims {
            ww_suite(&mut rec, d, &mut rng_for(opts.seed, d, 4), opts.fault)?;
        }
    }
    let mut failures: Vec<String> = vec![];
    for c in rec.checks.iter().filter(|c| !c.passed) {
        if !failures.iter().any(|f| f == c.name) {
            failures.push(c.name.to_string());
        }
    }
    Ok(VerifyReport {
        suite,
        dims: opts.dims.iter().map(|d| d.get()).collect(),
        group_dims: opts.group_dims.iter().map(|d| d.get()).collect(),
        passed: failures.is_empty(),
        failures,
        manifest: manifest().into_iter().filter(|m| suite.includes(m.suite)).collect(),
        series,
        checks: rec.checks,
    })
}

/* Operators *****************************************************************/

fn operators_suite(rec: &mut Recorder, d: Dim, rng: &mut ChaCha8Rng) -> Result<()> {
    let n = d.size();
    let one = identity(d);
    let f = fourier(d);
    let p = parity(d);
    let zero = d.zero();

    rec.dev("fourier-unitary", d, max_abs_diff(&(&f * f.adjoint()), &one), TOL);
    rec.dev("fourier-fourth-power", d, max_abs_diff(&matrix_pow(&f, 4), &one), TOL);
    let zd = matrix_pow(&clock_z(d.one()), d.get());
    let xd = matrix_pow(&shift_x(d.one()), d.get());
    rec.dev(
        "clock-shift-period",
        d,
        max_abs_diff(&zd, &one).max(max_abs_diff(&xd, &one)),
        TOL,
    );

    let mut weyl_dev: f64 = 0.0;
    let mut exact = true;
    let mut inter: f64 = 0.0;
    for a in d.residues() {
        for b in d.residues() {
            let lhs = shift_x(b) * clock_z(a);
            let rhs = clock_z(a) * shift_x(b) * (-(a * b)).omega();
            weyl_dev = weyl_dev.max(max_abs_diff(&lhs, &rhs));
            let xz = HWPElement::new(zero, b, zero, 0).mul(&HWPElement::new(a, zero, zero, 0));
            let zx = HWPElement::new(a, zero, zero, 0).mul(&HWPElement::new(zero, b, zero, 0));
            exact &= xz.gamma - zx.gamma == -(a * b) && (xz.alpha, xz.beta) == (zx.alpha, zx.beta);
        }
        inter = inter.max(max_abs_diff(&clock_z(a), &(&f * shift_x(a) * f.adjoint())));
    }
    rec.dev("weyl-commutation", d, if exact { weyl_dev } else { f64::INFINITY }, TOL);
    rec.dev("fourier-intertwining", d, inter, TOL);

    let x = position_op(d);
    let pm = momentum_op(d);
    let mut ex = SymmetricEigen::new(x.clone()).eigenvalues.as_slice().to_vec();
    let mut ep = SymmetricEigen::new(pm.clone()).eigenvalues.as_slice().to_vec();
    ex.sort_by(f64::total_cmp);
    ep.sort_by(f64::total_cmp);
    let spectra = ex.iter().zip(&ep).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let pm_def = max_abs_diff(&pm, &(&f * &x * f.adjoint()));
    rec.dev("position-momentum", d, spectra.max(pm_def).max(x.trace().norm()), TOL);

    let mut factor: f64 = 0.0;
    let mut unit: f64 = 0.0;
    let mut conj: f64 = 0.0;
    let mut pconj: f64 = 0.0;
    let mut alt: f64 = 0.0;
    let mut trace: f64 = 0.0;
    let mut period: f64 = 0.0;
    let mut inverse: f64 = 0.0;
    let mut pos_action: f64 = 0.0;
    let mut mom_action: f64 = 0.0;
    let z1 = clock_z(d.one());
    let x1 = shift_x(d.one());
    for a in d.residues() {
        for b in d.residues() {
            for g in [zero, d.one(), d.elem(2)] {
                let dm = dp_operator(a, b, g, 0);
                unit = unit.max(unitarity_deviation(&dm));
                unit = unit.max(max_abs_diff(&matrix_pow(&dm, d.get()), &one));
                unit = unit.max(max_abs_diff(&dm.adjoint(), &dp_operator(-a, -b, -g, 0)));
                let c1 = &dm * &z1 * dm.adjoint();
                let c2 = &dm * &x1 * dm.adjoint();
                conj = conj.max(max_abs_diff(&c1, &(&z1 * (-b).omega())));
                conj = conj.max(max_abs_diff(&c2, &(&x1 * a.omega())));
                pconj = pconj.max(max_abs_diff(&(&p * &dm * &p), &dp_operator(-a, -b, g, 0)));
                for nu in 0..2u8 {
                    let m = dp_operator(a, b, g, nu);
                    factor = factor.max(max_abs_diff(&m, &dp_operator_by_factors(a, b, g, nu)));
                    let pn = if nu == 1 { p.clone() } else { one.clone() };
                    alt = alt.max(max_abs_diff(&m, &(&pn * dp_operator(a.signed(nu), b.signed(nu), g, 0))));
                    if nu == 0 || g.is_zero() {
                        let k = if nu == 0 { d.get() } else { 2 };
                        period = period.max(max_abs_diff(&matrix_pow(&m, k), &one));
                    }
                    period = period.max(max_abs_diff(&matrix_pow(&m, 2 * d.get()), &one));
                    let inv_closed = HWPElement::new(a, b, g, nu).inv().matrix();
                    inverse = inverse.max(max_abs_diff(&m.adjoint(), &inv_closed));
                    inverse = inverse.max(max_abs_diff(&(&m * &inv_closed), &one));
                    for j in d.residues() {
                        let (ph, k) = dp_action_position(a, b, g, nu, j);
                        let lhs = &m * position_ket(j);
                        pos_action = pos_action.max(ket_max_abs_diff(&lhs, &(position_ket(k) * ph.omega())));
                        let (ph, k) = dp_action_momentum(a, b, g, nu, j);
                        let lhs = &m * momentum_ket(j);
                        mom_action = mom_action.max(ket_max_abs_diff(&lhs, &(momentum_ket(k) * ph.omega())));
                    }
                }
            }
            for nu in 0..2u8 {
                let t = dp_operator(a, b, zero, nu).trace();
                let expected = if nu == 1 {
                    1.0
                } else if a.is_zero() && b.is_zero() {
                    n as f64
                } else {
                    0.0
                };
                trace = trace.max((t - C64::new(expected, 0.0)).norm());
            }
        }
    }
    rec.dev("displacement-factor-form", d, factor, TOL);
    rec.dev("displacement-unitary-period", d, unit, TOL);
    rec.dev("displacement-conjugation", d, conj, TOL);
    let (p0, p1) = parity_projectors(d);
    let eig = SymmetricEigen::new(p.clone()).eigenvalues;
    let plus = eig.iter().filter(|&&l| (l - 1.0).abs() < 1e-8).count();
    let minus = eig.iter().filter(|&&l| (l + 1.0).abs() < 1e-8).count();
    let mut par = max_abs_diff(&(&f * &f), &p)
        .max(max_abs_diff(&(&p * &p), &one))
        .max(hermiticity_deviation(&p))
        .max(max_abs_diff(&(&p0 - &p1), &p))
        .max(max_abs_diff(&(&p0 + &p1), &one))
        .max((p0.trace().re - (n as f64 + 1.0) / 2.0).abs())
        .max((p1.trace().re - (n as f64 - 1.0) / 2.0).abs())
        .max(max_abs_diff(&(&p0 * &p), &p0));
    if plus != n.div_ceil(2) || minus != (n - 1) / 2 {
        par = f64::INFINITY;
    }
    rec.dev("parity-structure", d, par, TOL);
    pconj = pconj
        .max(max_abs_diff(&(&p * &x1 * &p), &shift_x(-d.one())))
        .max(max_abs_diff(&(&p * &z1 * &p), &clock_z(-d.one())));
    rec.dev("parity-conjugation", d, pconj, TOL);

    let mut dpar: f64 = 0.0;
    for a in d.residues() {
        for b in d.residues() {
            let m = crate::operators::displaced_parity(a, b);
            let da = dp_operator(a, b, zero, 0);
            dpar = dpar
                .max(max_abs_diff(&m, &(dp_operator(a.scale(2), b.scale(2), zero, 0) * &p)))
                .max(max_abs_diff(&m, &(&p * dp_operator(a.scale(-2), b.scale(-2), zero, 0))))
                .max(max_abs_diff(&m, &(&da * &p * da.adjoint())))
                .max(max_abs_diff(&(&m * &m), &one));
        }
    }
    rec.dev("displaced-parity", d, dpar, TOL);
    rec.dev("dp-alternate-form", d, alt, TOL);
    rec.dev("dp-trace", d, trace, TOL);
    rec.dev("dp-period", d, period, TOL);
    rec.dev("dp-inverse", d, inverse, TOL);
    rec.dev("dp-position-action", d, pos_action, TOL);
    rec.dev("dp-momentum-action", d, mom_action, TOL);

    let mut hom: f64 = 0.0;
    for _ in 0..200 {
        let g1 = random::hwp_element(d, rng);
        let g2 = random::hwp_element(d, rng);
        hom = hom.max(max_abs_diff(&g1.mul(&g2).matrix(), &(g1.matrix() * g2.matrix())));
    }
    rec.dev("dp-homomorphism", d, hom, TOL);

    let t = std::f64::consts::TAU / n as f64;
    let mut strob: f64 = 0.0;
    let mut us = vec![
        dp_operator(d.one(), d.one(), zero, 0),
        dp_operator(d.one(), d.elem(2), zero, 0),
        p.clone(),
    ];
    let zr = DihedralRep::new(Axis::Z, d);
    let xr = DihedralRep::new(Axis::X, d);
    for a in d.residues() {
        for nu in 0..2u8 {
            us.push(zr.rep_element(a, nu));
            us.push(xr.rep_element(a, nu));
        }
    }
    for _ in 0..10 {
        us.push(random::hwp_element(d, rng).matrix());
    }
    for u in &us {
        let h = principal_log_hamiltonian(u)?;
        strob = strob.max(max_abs_diff(&exp_i(&h, t), u)).max(hermiticity_deviation(&h));
    }
    rec.dev("hamiltonian-stroboscopic", d, strob, TOL_STROBOSCOPIC);

    let hraw = random::hermitian(d, rng);
    let h = (&hraw + &p * &hraw * &p).scale(0.5);
    let rho = random::density(d, rng);
    let p_rho0 = trace_product(&p, &rho);
    let mut drift = max_abs_diff(&(&p * &h), &(&h * &p));
    for &tt in &[0.3, 1.1, 2.7, 10.0] {
        let u = exp_i(&h, tt);
        let rt = &u * &rho * u.adjoint();
        drift = drift.max((trace_product(&p, &rt) - p_rho0).norm());
    }
    rec.dev("parity-symmetric-evolution", d, drift, TOL);

    if d.get() <= group::MAX_EXHAUSTIVE_D {
        let els: Vec<DihedralElement> = group::dihedral_group(d)?.elements().copied().collect();
        let mut hom: f64 = 0.0;
        for rep in [zr, xr] {
            let mats: Vec<Operator> = els.iter().map(|e| rep.rep(e)).collect();
            for (i, e1) in els.iter().enumerate() {
                for (j, e2) in els.iter().enumerate() {
                    let k = els.binary_search(&e1.mul(e2)).expect("closed");
                    hom = hom.max(max_abs_diff(&(&mats[i] * &mats[j]), &mats[k]));
                }
            }
        }
        rec.dev("dihedral-homomorphism", d, hom, TOL);
    }

    let mut ds: f64 = 0.0;
    let mut mom: f64 = 0.0;
    for a in d.residues() {
        for nu in 0..2u8 {
            let z = zr.rep_element(a, nu);
            let xm = xr.rep_element(a, nu);
            let k = if nu == 0 { d.get() } else { 2 };
            ds = ds
                .max(max_abs_diff(&matrix_pow(&z, k), &one))
                .max(max_abs_diff(&matrix_pow(&z, 2 * d.get()), &one))
                .max(max_abs_diff(&(&z * zr.rep_element(a.signed(nu + 1), nu)), &one))
                .max(max_abs_diff(&z, &(&f * &xm * f.adjoint())))
                .max(max_abs_diff(
                    &xm,
                    &(shift_x(a) * if nu == 1 { p.clone() } else { one.clone() }),
                ));
        }
        for j in d.residues() {
            let lhs = zr.rep_element(a, 1) * momentum_ket(j);
            mom = mom.max(ket_max_abs_diff(&lhs, &momentum_ket(a - j)));
        }
    }
    rec.dev("dihedral-structure", d, ds, TOL);
    rec.dev("dihedral-momentum-action", d, mom, TOL);
    Ok(())
}

/* Group structure ***********************************************************/

fn corrupt_mul(a: &HWPElement, b: &HWPElement) -> HWPElement {
    let mut p = a.mul(b);
    if a.nu == 1 && b.nu == 0 && !b.is_identity() {
        p.nu ^= 1;
    }
    p
}

fn group_series_suite(rec: &mut Recorder, d: Dim, fault: Option<Fault>) -> Result<Vec<SeriesSummary>> {
    let n = d.size();
    let mut hwp = group::hwp_group(d)?;
    let hw = group::hw_group(d)?;
    let dih = group::dihedral_group(d)?;
    let closed = hwp.clone().verify_closure();
    rec.flag("hwp-closure", d, closed && hwp.len() == 2 * n * n * n);
    hwp.verify_closure();

    let s_hwp = group::derived_series(&hwp)?;
    let s_hw = group::derived_series(&hw)?;
    let s_dih = group::derived_series(&dih)?;
    let (l_hwp, nil_hwp) = group::lower_central_series(&hwp)?;
    let (l_hw, nil_hw) = group::lower_central_series(&hw)?;
    let (l_dih, nil_dih) = group::lower_central_series(&dih)?;
    let sz_hwp = group::sizes(&s_hwp);
    let sz_hw = group::sizes(&s_hw);
    let sz_dih = group::sizes(&s_dih);
    rec.flag(
        "hwp-derived-series",
        d,
        sz_hwp == vec![2 * n * n * n, n * n * n, n, 1] && s_hwp[1] == hw,
    );
    rec.flag("hw-derived-series", d, sz_hw == vec![n * n * n, n, 1]);
    rec.flag("dihedral-derived-series", d, sz_dih == vec![2 * n, n, 1]);
    let ratios = |s: &[usize]| s.windows(2).map(|w| w[0] / w[1]).collect::<Vec<_>>();
    let centre_ok = s_hwp[2] == group::phase_group(d)?;
    rec.flag(
        "quotient-orders",
        d,
        ratios(&sz_hwp) == vec![2, n * n, n] && ratios(&sz_dih) == vec![2, n] && centre_ok,
    );
    rec.flag("hw-nilpotent", d, nil_hw);
    let lc = group::sizes(&l_hwp);
    rec.flag(
        "hwp-not-nilpotent",
        d,
        !nil_hwp && *lc.last().unwrap() == n * n * n && l_hwp.last() == Some(&hw),
    );

    let report = match fault {
        Some(Fault::CorruptMultiplication) => group::semidirect_checks_using(d, &corrupt_mul)?,
        _ => group::semidirect_checks(d)?,
    };
    rec.flag("semidirect-hwp", d, report.hwp.passed());
    rec.flag("semidirect-dihedral", d, report.dihedral.passed());

    let summary = |group, order, s: Vec<usize>, l: &[group::GroupClosure<_>], nilpotent| SeriesSummary {
        group,
        d: d.get(),
        order,
        derived_series_sizes: s,
        lower_central_sizes: group::sizes(l),
        nilpotent,
    };
    Ok(vec![
        summary("HWP", hwp.len(), sz_hwp, &l_hwp, nil_hwp),
        summary("HW", hw.len(), sz_hw, &l_hw, nil_hw),
        SeriesSummary {
            group: "dihedral",
            d: d.get(),
            order: dih.len(),
            derived_series_sizes: sz_dih,
            lower_central_sizes: group::sizes(&l_dih),
            nilpotent: nil_dih,
        },
    ])
}

fn tyu_holds<E: GroupElement>(f: &E, g: &E, h: &E) -> bool {
    let c = |x: &E, y: &E| x.commutator(y);
    c(g, h).inv() == c(h, g)
        && c(g, h).mul(h).mul(g) == g.mul(h)
        && c(f, &g.mul(h))
            .mul(&c(g, &h.mul(f)))
            .mul(&c(h, &f.mul(g)))
            .is_identity()
}

fn group_algebra_suite(rec: &mut Recorder, d: Dim, rng: &mut ChaCha8Rng) {
    let zero = d.zero();
    let dih: Vec<DihedralElement> = d
        .residues()
        .flat_map(|a| [DihedralElement::new(a, 0), DihedralElement::new(a, 1)])
        .collect();
    let mut tyu = true;
    for f in &dih {
        for g in &dih {
            for h in &dih {
                tyu &= tyu_holds(f, g, h);
            }
        }
    }
    for _ in 0..500 {
        let (f, g, h) = (
            random::hwp_element(d, rng),
            random::hwp_element(d, rng),
            random::hwp_element(d, rng),
        );
        tyu &= tyu_holds(&f, &g, &h);
    }
    rec.flag("commutator-identities", d, tyu);

    let mut closed = true;
    let mut embed = true;
    for e1 in &dih {
        for e2 in &dih {
            closed &= commutator_dihedral(e1, e2) == e1.commutator(e2);
            let g1 = HWPElement::new(e1.a, zero, d.elem(3), e1.nu);
            let g2 = HWPElement::new(e2.a, zero, d.one(), e2.nu);
            embed &= commutator_hwp(&g1, &g2) == commutator_dihedral(e1, e2).embed_z();
        }
    }
    for _ in 0..1000 {
        let (g1, g2) = (random::hwp_element(d, rng), random::hwp_element(d, rng));
        closed &= commutator_hwp(&g1, &g2) == g1.commutator(&g2);
        let (h1, h2) = (HWPElement { nu: 0, ..g1 }, HWPElement { nu: 0, ..g2 });
        closed &= commutator_hw(&h1, &h2) == h1.commutator(&h2) && commutator_hwp(&h1, &h2) == commutator_hw(&h1, &h2);
    }
    rec.flag("commutator-closed-forms", d, closed);
    rec.flag("commutator-dihedral-embedding", d, embed);

    let mut oracle: f64 = 0.0;
    for _ in 0..100 {
        let (g1, g2) = (random::hwp_element(d, rng), random::hwp_element(d, rng));
        let (m1, m2) = (g1.matrix(), g2.matrix());
        let lit = &m1 * &m2 * m1.adjoint() * m2.adjoint();
        oracle = oracle.max(max_abs_diff(&lit, &commutator_hwp(&g1, &g2).matrix()));
    }
    rec.dev("commutator-matrix-oracle", d, oracle, TOL);

    let mut bilinear = true;
    if d.get() <= 5 {
        for a1 in d.residues() {
            for b1 in d.residues() {
                for a2 in d.residues() {
                    for b2 in d.residues() {
                        let g2 = HWPElement::new(a2, b2, zero, 0);
                        let g1 = HWPElement::new(a1, b1, zero, 0);
                        for (a3, b3) in [(d.one(), zero), (zero, d.one()), (d.elem(2), d.elem(-1))] {
                            let g3 = HWPElement::new(a3, b3, zero, 0);
                            let sum = HWPElement::new(a1 + a3, b1 + b3, zero, 0);
                            let lhs = commutator_hw(&sum, &g2).gamma;
                            bilinear &= lhs == commutator_hw(&g1, &g2).gamma + commutator_hw(&g3, &g2).gamma;
                        }
                    }
                }
            }
        }
    }
    rec.flag("commutator-bilinearity", d, bilinear);

    let mut dc: f64 = 0.0;
    let one = identity(d);
    for _ in 0..100 {
        let g: Vec<HWPElement> = (0..4).map(|_| random::hwp_element(d, rng)).collect();
        let m: Vec<Operator> = g.iter().map(HWPElement::matrix).collect();
        let l12 = &m[0] * &m[1] * m[0].adjoint() * m[1].adjoint();
        let l34 = &m[2] * &m[3] * m[2].adjoint() * m[3].adjoint();
        let lit = &l12 * &l34 * l12.adjoint() * l34.adjoint();
        let phase = commutator2_hwp(&g[0], &g[1], &g[2], &g[3]).to_complex();
        dc = dc.max(max_abs_diff(&lit, &(&one * phase)));
    }
    rec.dev("double-commutator", d, dc, TOL);

    let mut unimod: f64 = 0.0;
    for _ in 0..50 {
        let f = random::ket(d, rng);
        let g1 = HWPElement {
            nu: 0,
            ..random::hwp_element(d, rng)
        };
        let g2 = HWPElement {
            nu: 0,
            ..random::hwp_element(d, rng)
        };
        let v = group::loop_overlap(&f, &g1, &g2).unwrap_or(f64::NAN);
        unimod = unimod.max((v - 1.0).abs());
    }
    rec.dev("hw-loop-unit-modulus", d, unimod, TOL);

    let mut ok = true;
    for _ in 0..200 {
        let g = random::hwp_element(d, rng);
        ok &= g.mul(&g.inv()).is_identity() && (2 * d.get()).is_multiple_of(g.order());
        if g.nu == 0 {
            ok &= d.get().is_multiple_of(g.order());
        } else if g.gamma.is_zero() {
            ok &= g.order() == 2;
        }
    }
    rec.flag("inverse-and-order", d, ok);
}

/* Frames ********************************************************************/

fn frames_suite(rec: &mut Recorder, d: Dim, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut res_hw: f64 = 0.0;
    let mut res_hwp: f64 = 0.0;
    for _ in 0..20 {
        let fid = random::fiducial(d, rng);
        res_hw = res_hw.max(build_frame(FrameKind::Hw, &fid).resolution_deviation());
        res_hwp = res_hwp.max(build_frame(FrameKind::Hwp, &fid).resolution_deviation());
    }
    rec.dev("resolution-hw", d, res_hw, TOL);
    rec.dev("resolution-hwp", d, res_hwp, TOL);

    let mut res_op: f64 = 0.0;
    for _ in 0..5 {
        let theta = random::operator(d, rng);
        let mut acc = Operator::zeros(d.size(), d.size());
        for p in crate::grid::points(d, 2) {
            let m = dp_operator(p.alpha, p.beta, d.zero(), p.nu);
            acc += &m * &theta * m.adjoint();
        }
        let lhs = acc.unscale(2.0 * d.size() as f64);
        res_op = res_op.max(max_abs_diff(&lhs, &(identity(d) * theta.trace())));
    }
    rec.dev("resolution-operator", d, res_op, TOL);

    let fid = random::fiducial(d, rng);
    let hw = build_frame(FrameKind::Hw, &fid);
    let hwp = build_frame(FrameKind::Hwp, &fid);
    let sub = hw
        .states()
        .iter()
        .zip(hwp.states())
        .map(|(a, b)| ket_max_abs_diff(a, b))
        .fold(0.0, f64::max);
    rec.dev("hw-subframe", d, sub, 0.0);

    let mut clo: f64 = 0.0;
    for _ in 0..20 {
        let g = random::hwp_element(d, rng);
        clo = clo.max(displacement_closure_check(&hwp, &g).max_deviation);
        clo = clo.max(displacement_closure_check(&hw, &g).max_deviation);
    }
    rec.dev("displacement-closure", d, clo, TOL);

    let mut norm: f64 = 0.0;
    let mut recon: f64 = 0.0;
    let mut sp: f64 = 0.0;
    let mut qn: f64 = 0.0;
    for _ in 0..10 {
        let f = random::ket(d, rng).scale(1.7);
        let g = random::ket(d, rng);
        for frame in [&hw, &hwp] {
            let tf = bargmann(frame, &f);
            let tg = bargmann(frame, &g);
            norm = norm.max((tf.norm_identity() - f.norm_squared()).abs());
            recon = recon.max(ket_max_abs_diff(&reconstruct(frame, &tf)?, &f));
            sp = sp.max((scalar_product(&tg, &tf)? - g.dotc(&f)).norm());
            let w = frame.kind().weight(d);
            qn = qn.max((w * q_function(&tg).iter().sum::<f64>() - 1.0).abs());
        }
        let full = bargmann(&hwp, &f);
        let half = bargmann(&hw, &f);
        norm = norm.max(
            full.hw_half()
                .values
                .iter()
                .zip(&half.values)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        );
    }
    rec.dev("bargmann-norm", d, norm, TOL);
    rec.dev("reconstruction", d, recon, TOL);
    rec.dev("scalar-product", d, sp, TOL);
    rec.dev("q-normalization", d, qn, TOL);

    let mut ov: f64 = 0.0;
    let n = d.get() as i64;
    for _ in 0..100 {
        let mut pt = || {
            use rand::Rng;
            PhasePoint::from_ints(
                d,
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..2),
            )
        };
        let (p1, p2) = (pt(), pt());
        let s = fid.state();
        ov = ov.max((overlap_closed_form(s, p1, p2) - overlap_direct(s, p1, p2)).abs());
    }
    rec.dev("overlap-closed-form", d, ov, TOL);

    let f = random::ket(d, rng);
    rec.dev("frame-fourier", d, frame_fourier_check(&hwp, &f)?.max_deviation(), TOL);
    Ok(())
}

/* Wigner-Weyl ***************************************************************/

fn ww_suite(rec: &mut Recorder, d: Dim, rng: &mut ChaCha8Rng, fault: Option<Fault>) -> Result<()> {
    let n = d.size();
    let nf = n as f64;
    let zero = d.zero();
    let theta = random::operator(d, rng);
    rec.dev("unified-restrictions", d, restriction_deviation(&theta)?, TOL);

    let sign = if fault == Some(Fault::UnifiedFourierSign) {
        -1
    } else {
        1
    };
    let table = unified_ww(&theta)?;
    let moved = ww_fourier_with(&table, sign);
    let mut uf = moved.max_abs_diff(&table);
    let mats: Vec<Operator> = crate::grid::points(d, 2)
        .into_iter()
        .map(|p| dp_operator(p.alpha, p.beta, zero, p.nu))
        .collect();
    for nu in 0..2usize {
        let half = &mats[nu * n * n..(nu + 1) * n * n];
        let out = crate::grid::symplectic_fourier(d, half, sign);
        let other = &mats[(1 - nu) * n * n..(2 - nu) * n * n];
        for (a, b) in out.iter().zip(other) {
            uf = uf.max(max_abs_diff(a, b));
        }
    }
    rec.dev("unified-fourier", d, uf, TOL);
    rec.dev(
        "unified-fourier-involution",
        d,
        ww_fourier(&ww_fourier(&table)).max_abs_diff(&table),
        TOL,
    );

    let mut orth: f64 = 0.0;
    let inv_mats: Vec<Operator> = crate::grid::points(d, 2)
        .into_iter()
        .map(|p| dp_operator(p.alpha.signed(p.nu + 1), p.beta.signed(p.nu + 1), zero, p.nu))
        .collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let s: C64 = inv_mats.iter().zip(&mats).map(|(a, b)| a[(i, j)] * b[(k, l)]).sum();
                    let expected = if i == l && j == k { 1.0 } else { 0.0 };
                    orth = orth.max((s / (2.0 * nf) - expected).norm());
                }
            }
        }
    }
    rec.dev("orthogonality", d, orth, TOL);

    let herm = random::hermitian(d, rng);
    let exp_d = max_abs_diff(&synthesize_displacements(d, &expand_displacements(&theta)?), &theta);
    let exp_p = max_abs_diff(&synthesize_parities(d, &expand_parities(&herm)?), &herm)
        .max(max_abs_diff(&synthesize_parities(d, &expand_parities(&theta)?), &theta));
    rec.dev("expansion-displacements", d, exp_d, TOL);
    rec.dev("expansion-parities", d, exp_p, TOL);
    let mut eu: f64 = 0.0;
    for lambda in [0.0, 0.3, 0.5, 0.7, 1.0] {
        eu = eu.max(max_abs_diff(&expand_unified(&theta, lambda)?.synthesize(), &theta));
    }
    rec.dev("expansion-unified", d, eu, TOL);

    let theta2 = random::operator(d, rng);
    let prod = &theta * &theta2;
    let wc = weyl_convolution(d, &weyl_table(&theta)?, &weyl_table(&theta2)?);
    let wc_dev = wc
        .iter()
        .zip(&weyl_table(&prod)?)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    rec.dev("weyl-convolution", d, wc_dev, TOL_PRODUCT);
    let ms = moyal_star(d, &wigner_table(&theta)?, &wigner_table(&theta2)?);
    let ms_dev = ms
        .iter()
        .zip(&wigner_table(&prod)?)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    rec.dev("moyal-star", d, ms_dev, TOL_PRODUCT);
    let up = unified_product(&table, &unified_ww(&theta2)?)?;
    rec.dev("unified-product", d, up.max_abs_diff(&unified_ww(&prod)?), TOL_PRODUCT);

    let wt = unified_ww(&herm)?;
    let imag = wt.slice(1).iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    rec.dev("wigner-real", d, imag, TOL);

    let report = marginals(&theta)?;
    let density = random::density(d, rng);
    let report2 = marginals(&density)?;
    for e in &report.entries {
        let name = MANIFEST
            .iter()
            .find(|m| m.1.strip_prefix("marginal-") == Some(e.name))
            .map(|m| m.1)
            .expect("marginal listed in manifest");
        let dev = e.max_deviation.max(report2.get(e.name).unwrap_or(f64::INFINITY));
        rec.dev(name, d, dev, TOL);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_names_are_unique() {
        let m = manifest();
        for (i, a) in m.iter().enumerate() {
            assert!(m[i + 1..].iter().all(|b| b.name != a.name), "{}", a.name);
        }
    }

    #[test]
    fn suite_parsing() {
        assert_eq!("ww".parse::<Suite>().unwrap(), Suite::Ww);
        assert!("bogus".parse::<Suite>().is_err());
        assert_eq!(
            "unified-fourier-sign".parse::<Fault>().unwrap(),
            Fault::UnifiedFourierSign
        );
    }
}
