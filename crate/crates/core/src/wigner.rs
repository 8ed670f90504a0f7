//! Wigner, Weyl and unified Wigner-Weyl functions, expansions and products.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::dihedral::{wz_function, Axis, DihedralRep};
use crate::error::{Error, Result};
use crate::grid::{points, slot, symplectic_fourier, PhasePoint};
use crate::operators::{
    dp_action_position, dp_operator, identity, max_abs_diff, momentum_ket, parity, parity_projectors, position_ket,
    projector, trace_product, Operator,
};
use crate::ring::{Dim, ModInt};

const ZERO: C64 = C64::new(0.0, 0.0);

/// `Tr[Θ 𝔇(α,β,0,ν)]` in O(d) using the closed-form action.
pub fn ww_value(theta: &Operator, alpha: ModInt, beta: ModInt, nu: u8) -> C64 {
    let d = alpha.dim();
    let mut acc = ZERO;
    for j in d.centered_residues() {
        let (phase, k) = dp_action_position(alpha, beta, d.zero(), nu, j);
        acc += theta[(d.index_of(j), d.index_of(k))] * phase.omega();
    }
    acc
}

/// `W(Θ;α,β) = Tr[Θ 𝔓(α,β)]`.
pub fn wigner(theta: &Operator, alpha: ModInt, beta: ModInt) -> C64 {
    ww_value(theta, alpha.scale(2), beta.scale(2), 1)
}

/// `W̃(Θ;α,β) = Tr[Θ D(α,β,0)]`.
pub fn weyl(theta: &Operator, alpha: ModInt, beta: ModInt) -> C64 {
    ww_value(theta, alpha, beta, 0)
}

/// Table of a function on the d×d grid, centered order, `α`-major.
pub fn grid_table(d: Dim, f: impl Fn(ModInt, ModInt) -> C64) -> Vec<C64> {
    let mut out = Vec::with_capacity(d.size() * d.size());
    for a in d.centered_residues() {
        for b in d.centered_residues() {
            out.push(f(a, b));
        }
    }
    out
}

fn at(d: Dim, table: &[C64], a: ModInt, b: ModInt) -> C64 {
    table[d.index_of(a) * d.size() + d.index_of(b)]
}

pub fn wigner_table(theta: &Operator) -> Result<Vec<C64>> {
    let d = dim_of(theta)?;
    Ok(grid_table(d, |a, b| wigner(theta, a, b)))
}

pub fn weyl_table(theta: &Operator) -> Result<Vec<C64>> {
    let d = dim_of(theta)?;
    Ok(grid_table(d, |a, b| weyl(theta, a, b)))
}

fn dim_of(theta: &Operator) -> Result<Dim> {
    if !theta.is_square() {
        return Err(Error::Shape {
            expected: theta.nrows(),
            found: theta.ncols(),
        });
    }
    Dim::new(theta.nrows() as u32)
}

/* Unified tables ************************************************************/

/// `𝔚(Θ;α,β,ν)` over the full `(α,β,ν)` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct WWTable {
    pub d: Dim,
    pub values: Vec<C64>,
    pub source: String,
}

impl WWTable {
    pub fn get(&self, p: PhasePoint) -> C64 {
        self.values[slot(self.d, p)]
    }

    pub fn slice(&self, nu: u8) -> &[C64] {
        let n = self.d.size() * self.d.size();
        &self.values[nu as usize * n..(nu as usize + 1) * n]
    }

    pub fn points(&self) -> Vec<PhasePoint> {
        points(self.d, 2)
    }

    pub fn max_abs_diff(&self, other: &WWTable) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub fn unified_ww(theta: &Operator) -> Result<WWTable> {
    unified_ww_named(theta, "operator")
}

pub fn unified_ww_named(theta: &Operator, source: &str) -> Result<WWTable> {
    let d = dim_of(theta)?;
    let values = points(d, 2)
        .into_iter()
        .map(|p| ww_value(theta, p.alpha, p.beta, p.nu))
        .collect();
    Ok(WWTable {
        d,
        values,
        source: source.to_string(),
    })
}

/// Maps each ν-slice to the ν+1 slice:
/// `𝔚(γ,δ,ν+1) = (1/d) Σ ω(2⁻¹(βγ − αδ)) 𝔚(α,β,ν)`.
/// The kernel carries no `(−1)^ν`; the same transform serves both directions.
pub fn ww_fourier(table: &WWTable) -> WWTable {
    ww_fourier_with(table, 1)
}

/// As [`ww_fourier`] with an explicit kernel sign.
pub fn ww_fourier_with(table: &WWTable, kernel_sign: i64) -> WWTable {
    let mut values = symplectic_fourier(table.d, table.slice(1), kernel_sign);
    values.extend(symplectic_fourier(table.d, table.slice(0), kernel_sign));
    WWTable {
        d: table.d,
        values,
        source: format!("fourier({})", table.source),
    }
}

/* Expansions ****************************************************************/

/// Coefficients `c(α,β) = W̃(Θ;−α,−β)` with `Θ = (1/d) Σ c D(α,β,0)`.
pub fn expand_displacements(theta: &Operator) -> Result<Vec<C64>> {
    let d = dim_of(theta)?;
    Ok(grid_table(d, |a, b| weyl(theta, -a, -b)))
}

pub fn synthesize_displacements(d: Dim, coeffs: &[C64]) -> Operator {
    let mut acc = Operator::zeros(d.size(), d.size());
    for a in d.centered_residues() {
        for b in d.centered_residues() {
            acc += dp_operator(a, b, d.zero(), 0) * at(d, coeffs, a, b);
        }
    }
    acc.unscale(d.size() as f64)
}

/// Coefficients `c(α,β) = W(Θ;α,β)` with `Θ = (1/d) Σ c 𝔓(α,β)`.
pub fn expand_parities(theta: &Operator) -> Result<Vec<C64>> {
    let d = dim_of(theta)?;
    Ok(grid_table(d, |a, b| wigner(theta, a, b)))
}

pub fn synthesize_parities(d: Dim, coeffs: &[C64]) -> Operator {
    let mut acc = Operator::zeros(d.size(), d.size());
    for a in d.centered_residues() {
        for b in d.centered_residues() {
            acc += dp_operator(a.scale(2), b.scale(2), d.zero(), 1) * at(d, coeffs, a, b);
        }
    }
    acc.unscale(d.size() as f64)
}

/// Redundant expansion `Θ = (1/d) Σ_ν λ_ν Σ 𝔚(Θ;(−1)^{ν+1}α,(−1)^{ν+1}β,ν) 𝔇(α,β,0,ν)`,
/// with `λ₀ = λ` and `λ₁ = 1 − λ`.
#[derive(Clone, Debug)]
pub struct UnifiedExpansion {
    pub d: Dim,
    pub lambda: f64,
    pub coeffs: Vec<C64>,
}

pub fn expand_unified(theta: &Operator, lambda: f64) -> Result<UnifiedExpansion> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let d = dim_of(theta)?;
    let coeffs = points(d, 2)
        .into_iter()
        .map(|p| {
            let w = if p.nu == 0 { lambda } else { 1.0 - lambda };
            ww_value(theta, p.alpha.signed(p.nu + 1), p.beta.signed(p.nu + 1), p.nu) * w
        })
        .collect();
    Ok(UnifiedExpansion { d, lambda, coeffs })
}

impl UnifiedExpansion {
    pub fn synthesize(&self) -> Operator {
        let d = self.d;
        let mut acc = Operator::zeros(d.size(), d.size());
        for p in points(d, 2) {
            let c = self.coeffs[slot(d, p)];
            if c != ZERO {
                acc += dp_operator(p.alpha, p.beta, d.zero(), p.nu) * c;
            }
        }
        acc.unscale(d.size() as f64)
    }
}

/* Products ******************************************************************/

/// Weyl table of `Θ₁Θ₂` from the Weyl tables of the factors:
/// `W̃(Θ₁Θ₂;−α,−β) = (1/d) Σ ω(2⁻¹αβ₂ − 2⁻¹α₂β) W̃₁(α₂−α,β₂−β) W̃₂(−α₂,−β₂)`.
pub fn weyl_convolution(d: Dim, w1: &[C64], w2: &[C64]) -> Vec<C64> {
    let h = d.inv2();
    grid_table(d, |x, y| {
        let (a, b) = (-x, -y);
        let mut acc = ZERO;
        for a2 in d.residues() {
            for b2 in d.residues() {
                let ph = (h * (a * b2 - a2 * b)).omega();
                acc += ph * at(d, w1, a2 - a, b2 - b) * at(d, w2, -a2, -b2);
            }
        }
        acc.unscale(d.size() as f64)
    })
}

/// Moyal star product of Wigner tables:
/// `W(Θ₁Θ₂;α,β) = (1/d²) Σ ω(2α₂β₁ − 2α₁β₂) W₁(α+α₁,β+β₁) W₂(α+α₂,β+β₂)`.
pub fn moyal_star(d: Dim, w1: &[C64], w2: &[C64]) -> Vec<C64> {
    let n2 = (d.size() * d.size()) as f64;
    grid_table(d, |a, b| {
        let mut acc = ZERO;
        for a1 in d.residues() {
            for b1 in d.residues() {
                let x = at(d, w1, a + a1, b + b1);
                for a2 in d.residues() {
                    for b2 in d.residues() {
                        let ph = (a2 * b1 - a1 * b2).scale(2).omega();
                        acc += ph * x * at(d, w2, a + a2, b + b2);
                    }
                }
            }
        }
        acc.unscale(n2)
    })
}

/// Unified table of `Θ₁Θ₂` from the unified tables of the factors.
///
/// With `s_ν = (−1)^{ν+1}` and `c_ν(x,y) = 𝔚(Θ; s_ν x, s_ν y, ν)`, for each target
/// `ν` the sum runs over `ν₂`, with `ν₁ = ν − ν₂ (mod 2)` and `e = (−1)^{ν₁}`:
///
/// `𝔚(Θ₁Θ₂; s_ν A, s_ν B, ν) = (1/2d) Σ_{ν₂,α₂,β₂} c¹_{ν₁}(A − eα₂, B − eβ₂) c²_{ν₂}(α₂, β₂) ω(2⁻¹ e (Aβ₂ − α₂B))`.
pub fn unified_product(t1: &WWTable, t2: &WWTable) -> Result<WWTable> {
    if t1.d != t2.d {
        return Err(Error::DimMismatch {
            left: t1.d.get(),
            right: t2.d.get(),
        });
    }
    let d = t1.d;
    let h = d.inv2();
    let c = |t: &WWTable, x: ModInt, y: ModInt, nu: u8| t.get(PhasePoint::new(x.signed(nu + 1), y.signed(nu + 1), nu));
    let mut values = vec![ZERO; 2 * d.size() * d.size()];
    for p in points(d, 2) {
        let (big_a, big_b, nu) = (p.alpha, p.beta, p.nu);
        let mut acc = ZERO;
        for nu2 in 0..2u8 {
            let nu1 = (nu + nu2) & 1;
            for a2 in d.residues() {
                for b2 in d.residues() {
                    let (ea2, eb2) = (a2.signed(nu1), b2.signed(nu1));
                    let ph = (h * (big_a * b2 - a2 * big_b)).signed(nu1).omega();
                    acc += c(t1, big_a - ea2, big_b - eb2, nu1) * c(t2, a2, b2, nu2) * ph;
                }
            }
        }
        let target = PhasePoint::new(big_a.signed(nu + 1), big_b.signed(nu + 1), nu);
        values[slot(d, target)] = acc.unscale(2.0 * d.size() as f64);
    }
    Ok(WWTable {
        d,
        values,
        source: format!("{}*{}", t1.source, t2.source),
    })
}

/* Marginals *****************************************************************/

#[derive(Clone, Debug, Serialize)]
pub struct MarginalEntry {
    pub name: &'static str,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MarginalReport {
    pub entries: Vec<MarginalEntry>,
}

impl MarginalReport {
    pub fn max_deviation(&self) -> f64 {
        self.entries.iter().map(|e| e.max_deviation).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.max_deviation)
    }
}

fn parity_power(d: Dim, k: u8) -> Operator {
    if k & 1 == 1 {
        parity(d)
    } else {
        identity(d)
    }
}

/// Every marginal identity of `Θ`, table- and operator-level.
///
/// Line sums land on `⟨P;2⁻¹α|𝔓^{ν+1}Θ|P;2⁻¹α⟩` and `⟨X;2⁻¹β|𝔓^{ν+1}Θ|X;2⁻¹β⟩`,
/// with the parity power acting first on the bra.
pub fn marginals(theta: &Operator) -> Result<MarginalReport> {
    let d = dim_of(theta)?;
    let table = unified_ww(theta)?;
    let n = d.size() as f64;
    let h = d.inv2();
    let (p0, p1) = parity_projectors(d);
    let mut momentum_line: f64 = 0.0;
    let mut position_line: f64 = 0.0;
    let mut total: f64 = 0.0;
    let mut op_momentum: f64 = 0.0;
    let mut op_position: f64 = 0.0;
    let mut op_total: f64 = 0.0;
    for nu in 0..2u8 {
        let pp = parity_power(d, nu + 1);
        let lhs_theta = &pp * theta;
        let mut sum_all = ZERO;
        let mut op_all = Operator::zeros(d.size(), d.size());
        for a in d.residues() {
            let line: C64 = d.residues().map(|b| table.get(PhasePoint::new(a, b, nu))).sum::<C64>() / n;
            let v = momentum_ket(h * a);
            momentum_line = momentum_line.max((line - v.dotc(&(&lhs_theta * &v))).norm());
            let mut op_line = Operator::zeros(d.size(), d.size());
            for b in d.residues() {
                op_line += dp_operator(a, b, d.zero(), nu);
            }
            op_all += &op_line;
            let expected = projector(&v) * &pp;
            op_momentum = op_momentum.max(max_abs_diff(&op_line.unscale(n), &expected));
        }
        for b in d.residues() {
            let line: C64 = d.residues().map(|a| table.get(PhasePoint::new(a, b, nu))).sum::<C64>() / n;
            let v = position_ket(h * b);
            position_line = position_line.max((line - v.dotc(&(&lhs_theta * &v))).norm());
            let mut op_line = Operator::zeros(d.size(), d.size());
            for a in d.residues() {
                op_line += dp_operator(a, b, d.zero(), nu);
            }
            op_position = op_position.max(max_abs_diff(&op_line.unscale(n), &(projector(&v) * &pp)));
        }
        for &z in table.slice(nu) {
            sum_all += z;
        }
        total = total.max((sum_all / n - trace_product(theta, &pp)).norm());
        op_total = op_total.max(max_abs_diff(&op_all.unscale(n), &pp));
    }
    let even: C64 = table.values.iter().sum::<C64>() / (2.0 * n);
    let odd: C64 = table
        .points()
        .iter()
        .zip(&table.values)
        .map(|(p, &z)| if p.nu == 1 { z } else { -z })
        .sum::<C64>()
        / (2.0 * n);
    let sector_even = (even - trace_product(theta, &p0)).norm();
    let sector_odd = (odd - trace_product(theta, &p1)).norm();

    let mut op_even = Operator::zeros(d.size(), d.size());
    let mut op_odd = Operator::zeros(d.size(), d.size());
    for p in points(d, 2) {
        let m = dp_operator(p.alpha, p.beta, d.zero(), p.nu);
        op_even += &m;
        if p.nu == 1 {
            op_odd += m;
        } else {
            op_odd -= m;
        }
    }
    let op_sectors = max_abs_diff(&op_even.unscale(2.0 * n), &p0).max(max_abs_diff(&op_odd.unscale(2.0 * n), &p1));

    // Wigner and Weyl line sums through the standalone functions.
    let mut wigner_lines: f64 = 0.0;
    let mut weyl_lines: f64 = 0.0;
    let pmat = parity(d);
    let p_theta = &pmat * theta;
    for a in d.residues() {
        let wl: C64 = d.residues().map(|b| wigner(theta, a, b)).sum::<C64>() / n;
        let v = momentum_ket(a);
        wigner_lines = wigner_lines.max((wl - v.dotc(&(theta * &v))).norm());
        let xl: C64 = d.residues().map(|b| wigner(theta, b, a)).sum::<C64>() / n;
        let x = position_ket(a);
        wigner_lines = wigner_lines.max((xl - x.dotc(&(theta * &x))).norm());
        let vl: C64 = d.residues().map(|b| weyl(theta, a, b)).sum::<C64>() / n;
        let v2 = momentum_ket(h * a);
        weyl_lines = weyl_lines.max((vl - v2.dotc(&(&p_theta * &v2))).norm());
        let yl: C64 = d.residues().map(|b| weyl(theta, b, a)).sum::<C64>() / n;
        let x2 = position_ket(h * a);
        weyl_lines = weyl_lines.max((yl - x2.dotc(&(&p_theta * &x2))).norm());
    }

    // Dihedral restrictions.
    let x0 = position_ket(d.zero());
    let diag0 = x0.dotc(&(theta * &x0));
    let mut wz_marginal: f64 = 0.0;
    let mut rep_marginal: f64 = 0.0;
    let rep = DihedralRep::new(Axis::Z, d);
    for nu in 0..2u8 {
        let s: C64 = d.residues().map(|a| wz_function(theta, a, nu)).sum::<C64>() / n;
        wz_marginal = wz_marginal.max((s - diag0).norm());
        rep_marginal = rep_marginal.max(max_abs_diff(&rep.marginal_rep(nu), &projector(&x0)));
    }

    Ok(MarginalReport {
        entries: vec![
            MarginalEntry {
                name: "ww-momentum-line",
                max_deviation: momentum_line,
            },
            MarginalEntry {
                name: "ww-position-line",
                max_deviation: position_line,
            },
            MarginalEntry {
                name: "ww-total",
                max_deviation: total,
            },
            MarginalEntry {
                name: "ww-parity-sectors",
                max_deviation: sector_even.max(sector_odd),
            },
            MarginalEntry {
                name: "operator-momentum-line",
                max_deviation: op_momentum,
            },
            MarginalEntry {
                name: "operator-position-line",
                max_deviation: op_position,
            },
            MarginalEntry {
                name: "operator-total",
                max_deviation: op_total,
            },
            MarginalEntry {
                name: "operator-parity-sectors",
                max_deviation: op_sectors,
            },
            MarginalEntry {
                name: "wigner-lines",
                max_deviation: wigner_lines,
            },
            MarginalEntry {
                name: "weyl-lines",
                max_deviation: weyl_lines,
            },
            MarginalEntry {
                name: "wz-marginal",
                max_deviation: wz_marginal,
            },
            MarginalEntry {
                name: "rep-marginal",
                max_deviation: rep_marginal,
            },
        ],
    })
}

/// `𝔚(Θ;α,0,ν) = 𝔚_Z(Θ;α,ν)` and `𝔚(Θ;0,β,ν) = 𝔚_X(Θ;β,ν)`.
pub fn restriction_deviation(theta: &Operator) -> Result<f64> {
    let d = dim_of(theta)?;
    let table = unified_ww(theta)?;
    let zr = DihedralRep::new(Axis::Z, d);
    let xr = DihedralRep::new(Axis::X, d);
    let mut dev: f64 = 0.0;
    for nu in 0..2u8 {
        for a in d.residues() {
            let z = table.get(PhasePoint::new(a, d.zero(), nu));
            dev = dev.max((z - zr.ww_function(theta, a, nu)).norm());
            let x = table.get(PhasePoint::new(d.zero(), a, nu));
            dev = dev.max((x - xr.ww_function(theta, a, nu)).norm());
            // W and W̃ restrictions
            dev = dev.max((table.get(PhasePoint::new(a, a, 0)) - weyl(theta, a, a)).norm());
            let w = wigner(theta, d.inv2() * a, d.inv2() * a);
            dev = dev.max((table.get(PhasePoint::new(a, a, 1)) - w).norm());
        }
    }
    Ok(dev)
}
