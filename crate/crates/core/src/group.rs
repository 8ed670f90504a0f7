//! Matrix-free algebra of HW(d), HWP(d) and the dihedral group Δ_d.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{dp_operator, Ket, Operator};
use crate::ring::{Dim, ModInt, Phase};

/// Largest dimension for exhaustive enumeration.
pub const MAX_EXHAUSTIVE_D: u32 = 9;

pub trait GroupElement: Copy + Ord + fmt::Debug {
    fn identity(d: Dim) -> Self;
    fn dim(&self) -> Dim;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;

    fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    /// `g h g⁻¹ h⁻¹`.
    fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inv()).mul(&other.inv())
    }
}

/* HWP elements **************************************************************/

/// `(α, β, γ, ν)`, standing for `𝔇(α,β,γ,ν) = D(α,β,γ)𝔓^ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HWPElement {
    pub nu: u8,
    pub alpha: ModInt,
    pub beta: ModInt,
    pub gamma: ModInt,
}

impl HWPElement {
    pub fn new(alpha: ModInt, beta: ModInt, gamma: ModInt, nu: u8) -> Self {
        assert!(
            alpha.dim() == beta.dim() && beta.dim() == gamma.dim(),
            "modulus mismatch"
        );
        Self {
            alpha,
            beta,
            gamma,
            nu: nu & 1,
        }
    }

    pub fn from_ints(d: Dim, alpha: i64, beta: i64, gamma: i64, nu: u8) -> Self {
        Self::new(d.elem(alpha), d.elem(beta), d.elem(gamma), nu)
    }

    /// Parity `𝔓 = (0,0,0,1)`.
    pub fn parity(d: Dim) -> Self {
        Self::from_ints(d, 0, 0, 0, 1)
    }

    /// Whether the element lies in HW(d).
    pub fn is_hw(&self) -> bool {
        self.nu == 0
    }

    pub fn matrix(&self) -> Operator {
        dp_operator(self.alpha, self.beta, self.gamma, self.nu)
    }

    /// Smallest `n >= 1` with `gⁿ = 1`.
    pub fn order(&self) -> u32 {
        let mut p = *self;
        let mut n = 1;
        while !p.is_identity() {
            p = p.mul(self);
            n += 1;
        }
        n
    }
}

impl fmt::Display for HWPElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.alpha, self.beta, self.gamma, self.nu)
    }
}

impl GroupElement for HWPElement {
    fn identity(d: Dim) -> Self {
        Self::from_ints(d, 0, 0, 0, 0)
    }

    fn dim(&self) -> Dim {
        self.alpha.dim()
    }

    fn mul(&self, other: &Self) -> Self {
        hwp_mul(self, other).expect("modulus mismatch")
    }

    fn inv(&self) -> Self {
        hwp_inv(self)
    }
}

/// Product `(α₁ + (−1)^ν₁ α₂, β₁ + (−1)^ν₁ β₂, γ₁ + γ₂ + 2⁻¹(−1)^ν₁(α₁β₂ − α₂β₁), ν₁ + ν₂)`.
pub fn hwp_mul(g1: &HWPElement, g2: &HWPElement) -> Result<HWPElement> {
    let (d1, d2) = (g1.dim(), g2.dim());
    if d1 != d2 {
        return Err(Error::DimMismatch {
            left: d1.get(),
            right: d2.get(),
        });
    }
    let area = g1.alpha * g2.beta - g2.alpha * g1.beta;
    Ok(HWPElement {
        alpha: g1.alpha + g2.alpha.signed(g1.nu),
        beta: g1.beta + g2.beta.signed(g1.nu),
        gamma: g1.gamma + g2.gamma + (d1.inv2() * area).signed(g1.nu),
        nu: (g1.nu + g2.nu) & 1,
    })
}

/// `((−1)^{ν+1}α, (−1)^{ν+1}β, −γ, ν)`.
pub fn hwp_inv(g: &HWPElement) -> HWPElement {
    HWPElement {
        alpha: g.alpha.signed(g.nu + 1),
        beta: g.beta.signed(g.nu + 1),
        gamma: -g.gamma,
        nu: g.nu,
    }
}

/// `𝒜(x₁,ν₁|x₂,ν₂) = x₁ν₂ − x₂ν₁`.
pub fn area(x1: ModInt, nu1: u8, x2: ModInt, nu2: u8) -> ModInt {
    x1.scale(nu2 as i64) - x2.scale(nu1 as i64)
}

/// Loop data of the commutator of two HWP elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoopArea {
    pub a: ModInt,
    pub b: ModInt,
    pub gamma: ModInt,
    pub lambda: i8,
}

impl LoopArea {
    pub fn new(g1: &HWPElement, g2: &HWPElement) -> Self {
        let lambda = if g1.nu == 0 && g2.nu == 0 { 1 } else { -1 };
        let sym = g1.alpha * g2.beta - g2.alpha * g1.beta;
        Self {
            a: area(g1.alpha, g1.nu, g2.alpha, g2.nu).scale(2),
            b: area(g1.beta, g1.nu, g2.beta, g2.nu).scale(2),
            gamma: sym.scale(lambda as i64),
            lambda,
        }
    }

    pub fn element(&self) -> HWPElement {
        HWPElement::new(self.a, self.b, self.gamma, 0)
    }
}

/// ℒ₁ for two HW elements: `(0, 0, α₁β₂ − α₂β₁, 0)`.
pub fn commutator_hw(g1: &HWPElement, g2: &HWPElement) -> HWPElement {
    debug_assert!(g1.is_hw() && g2.is_hw());
    let d = g1.dim();
    HWPElement::new(d.zero(), d.zero(), g1.alpha * g2.beta - g2.alpha * g1.beta, 0)
}

/// ℒ₃⁽¹⁾: the commutator `D(A, B, Γ)` of two HWP elements.
pub fn commutator_hwp(g1: &HWPElement, g2: &HWPElement) -> HWPElement {
    LoopArea::new(g1, g2).element()
}

/// ℒ₃⁽²⁾: commutator of `ℒ₃⁽¹⁾(g₁|g₂)` and `ℒ₃⁽¹⁾(g₃|g₄)`, a multiple of the identity.
pub fn commutator2_hwp(g1: &HWPElement, g2: &HWPElement, g3: &HWPElement, g4: &HWPElement) -> Phase {
    let a12 = area(g1.alpha, g1.nu, g2.alpha, g2.nu);
    let b12 = area(g1.beta, g1.nu, g2.beta, g2.nu);
    let a34 = area(g3.alpha, g3.nu, g4.alpha, g4.nu);
    let b34 = area(g3.beta, g3.nu, g4.beta, g4.nu);
    Phase::new((a12 * b34 - a34 * b12).scale(4))
}

/// `|⟨f|ℒ₃⁽¹⁾(g₁|g₂)|f⟩|` for a unit-norm `f`.
pub fn loop_overlap(f: &Ket, g1: &HWPElement, g2: &HWPElement) -> Result<f64> {
    let n2 = f.norm_squared();
    if (n2 - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm_sqr: n2 });
    }
    if f.len() != g1.dim().size() {
        return Err(Error::Shape {
            expected: g1.dim().size(),
            found: f.len(),
        });
    }
    let m = commutator_hwp(g1, g2).matrix();
    Ok(f.dotc(&(m * f)).norm())
}

/* Dihedral elements *********************************************************/

/// `R(a, ν)`, represented by `Z^a 𝔓^ν` or `X^a 𝔓^ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub nu: u8,
    pub a: ModInt,
}

impl DihedralElement {
    pub fn new(a: ModInt, nu: u8) -> Self {
        Self { a, nu: nu & 1 }
    }

    pub fn from_ints(d: Dim, a: i64, nu: u8) -> Self {
        Self::new(d.elem(a), nu)
    }

    /// The image `(a, 0, 0, ν)` in HWP(d).
    pub fn embed_z(&self) -> HWPElement {
        let d = self.a.dim();
        HWPElement::new(self.a, d.zero(), d.zero(), self.nu)
    }
}

impl GroupElement for DihedralElement {
    fn identity(d: Dim) -> Self {
        Self::from_ints(d, 0, 0)
    }

    fn dim(&self) -> Dim {
        self.a.dim()
    }

    fn mul(&self, other: &Self) -> Self {
        Self::new(self.a + other.a.signed(self.nu), self.nu ^ other.nu)
    }

    fn inv(&self) -> Self {
        Self::new(self.a.signed(self.nu + 1), self.nu)
    }
}

/// ℒ₂: `Z^{2(a₁ν₂ − a₂ν₁)}`.
pub fn commutator_dihedral(e1: &DihedralElement, e2: &DihedralElement) -> DihedralElement {
    DihedralElement::new(area(e1.a, e1.nu, e2.a, e2.nu).scale(2), 0)
}

/* Closures and series *******************************************************/

/// A finite subgroup, stored as a sorted element set.
#[derive(Clone, Debug)]
pub struct GroupClosure<E: GroupElement> {
    elements: BTreeSet<E>,
    generators: Vec<E>,
    closed: bool,
}

impl<E: GroupElement> GroupClosure<E> {
    /// Breadth-first closure of `generators` under right multiplication.
    pub fn generate(d: Dim, generators: Vec<E>) -> Self {
        let mut elements = BTreeSet::new();
        let id = E::identity(d);
        elements.insert(id);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.mul(g);
                if elements.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Self {
            elements,
            generators,
            closed: true,
        }
    }

    /// Wraps an arbitrary element set without asserting closure.
    pub fn from_elements(elements: impl IntoIterator<Item = E>) -> Self {
        let elements: BTreeSet<E> = elements.into_iter().collect();
        let generators = elements.iter().copied().collect();
        Self {
            elements,
            generators,
            closed: false,
        }
    }

    /// Exhaustively checks closure under products and inverses and sets the flag.
    pub fn verify_closure(&mut self) -> bool {
        let ok = self.elements.iter().all(|x| {
            self.elements.contains(&x.inv()) && self.elements.iter().all(|y| self.elements.contains(&x.mul(y)))
        });
        self.closed = ok;
        ok
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.elements.contains(e)
    }

    pub fn elements(&self) -> impl Iterator<Item = &E> {
        self.elements.iter()
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    fn dim(&self) -> Dim {
        self.elements.iter().next().expect("nonempty group").dim()
    }

    fn require_closed(&self) -> Result<()> {
        if self.closed {
            Ok(())
        } else {
            Err(Error::ClosureNotEstablished(format!("set of {} elements", self.len())))
        }
    }
}

impl<E: GroupElement> PartialEq for GroupClosure<E> {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

fn check_exhaustive(d: Dim) -> Result<()> {
    if d.get() > MAX_EXHAUSTIVE_D {
        return Err(Error::TooLarge {
            d: d.get(),
            max: MAX_EXHAUSTIVE_D,
        });
    }
    Ok(())
}

/// HWP(d), generated by `Z`, `X` and `𝔓`.
pub fn hwp_group(d: Dim) -> Result<GroupClosure<HWPElement>> {
    check_exhaustive(d)?;
    Ok(GroupClosure::generate(
        d,
        vec![
            HWPElement::from_ints(d, 1, 0, 0, 0),
            HWPElement::from_ints(d, 0, 1, 0, 0),
            HWPElement::parity(d),
        ],
    ))
}

/// HW(d), generated by `Z` and `X`.
pub fn hw_group(d: Dim) -> Result<GroupClosure<HWPElement>> {
    check_exhaustive(d)?;
    Ok(GroupClosure::generate(
        d,
        vec![
            HWPElement::from_ints(d, 1, 0, 0, 0),
            HWPElement::from_ints(d, 0, 1, 0, 0),
        ],
    ))
}

/// The centre `{ω(γ)·1}` of HW(d).
pub fn phase_group(d: Dim) -> Result<GroupClosure<HWPElement>> {
    check_exhaustive(d)?;
    Ok(GroupClosure::generate(d, vec![HWPElement::from_ints(d, 0, 0, 1, 0)]))
}

/// Δ_d, generated by the rotation `(1,0)` and the reflection `(0,1)`.
pub fn dihedral_group(d: Dim) -> Result<GroupClosure<DihedralElement>> {
    check_exhaustive(d)?;
    Ok(GroupClosure::generate(
        d,
        vec![DihedralElement::from_ints(d, 1, 0), DihedralElement::from_ints(d, 0, 1)],
    ))
}

/// The subgroup generated by all `[h, k]` with `h ∈ H`, `k ∈ K`.
pub fn commutator_subgroup<E: GroupElement>(h: &GroupClosure<E>, k: &GroupClosure<E>) -> GroupClosure<E> {
    let gens: BTreeSet<E> = h
        .elements()
        .flat_map(|x| k.elements().map(move |y| x.commutator(y)))
        .collect();
    GroupClosure::generate(h.dim(), gens.into_iter().filter(|g| !g.is_identity()).collect())
}

/// `G ▷ [G,G] ▷ …`, stopping at `{1}` or when the chain stabilizes.
pub fn derived_series<E: GroupElement>(g: &GroupClosure<E>) -> Result<Vec<GroupClosure<E>>> {
    g.require_closed()?;
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        if last.len() == 1 {
            break;
        }
        let next = commutator_subgroup(last, last);
        if &next == last {
            break;
        }
        series.push(next);
    }
    Ok(series)
}

/// Lower central series and whether it reaches `{1}`.
pub fn lower_central_series<E: GroupElement>(g: &GroupClosure<E>) -> Result<(Vec<GroupClosure<E>>, bool)> {
    g.require_closed()?;
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        if last.len() == 1 {
            return Ok((series, true));
        }
        let next = commutator_subgroup(g, last);
        if &next == last {
            return Ok((series, false));
        }
        series.push(next);
    }
}

pub fn sizes<E: GroupElement>(series: &[GroupClosure<E>]) -> Vec<usize> {
    series.iter().map(GroupClosure::len).collect()
}

/* Semidirect structure ******************************************************/

/// Outcome of the checks `G = N ⋊ K`.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SemidirectChecks {
    pub normal: bool,
    pub complement_subgroup: bool,
    pub unique_factorization: bool,
    pub trivial_intersection: bool,
}

impl SemidirectChecks {
    pub fn passed(&self) -> bool {
        self.normal && self.complement_subgroup && self.unique_factorization && self.trivial_intersection
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = vec![];
        if !self.normal {
            out.push("normality");
        }
        if !self.complement_subgroup {
            out.push("complement subgroup");
        }
        if !self.unique_factorization {
            out.push("unique factorization");
        }
        if !self.trivial_intersection {
            out.push("trivial intersection");
        }
        out
    }
}

/// Checks `G = N ⋊ K` against a supplied multiplication.
pub fn semidirect_checks_with<E: GroupElement>(
    group: &[E],
    normal: &[E],
    complement: &[E],
    mul: &dyn Fn(&E, &E) -> E,
) -> SemidirectChecks {
    let n_set: BTreeSet<E> = normal.iter().copied().collect();
    let k_set: BTreeSet<E> = complement.iter().copied().collect();
    let g_set: BTreeSet<E> = group.iter().copied().collect();
    let normal_ok = group
        .iter()
        .all(|g| normal.iter().all(|n| n_set.contains(&mul(&mul(g, n), &g.inv()))));
    let complement_ok = complement
        .iter()
        .all(|a| complement.iter().all(|b| k_set.contains(&mul(a, b))));
    let factor_ok = g_set.len() == n_set.len() * k_set.len() && {
        let mut seen = BTreeSet::new();
        normal.iter().all(|n| complement.iter().all(|k| seen.insert(mul(n, k)))) && seen == g_set
    };
    let inter = n_set.intersection(&k_set).count() == 1 && n_set.iter().any(|e| e.is_identity() && k_set.contains(e));
    SemidirectChecks {
        normal: normal_ok,
        complement_subgroup: complement_ok,
        unique_factorization: factor_ok,
        trivial_intersection: inter,
    }
}

/// Semidirect reports for `HWP(d) = HW(d) ⋊ Z(2)` and `Δ_d = Z(d) ⋊ Z(2)`.
#[derive(Clone, Debug, Serialize)]
pub struct SemidirectReport {
    pub hwp: SemidirectChecks,
    pub dihedral: SemidirectChecks,
}

impl SemidirectReport {
    pub fn passed(&self) -> bool {
        self.hwp.passed() && self.dihedral.passed()
    }
}

pub fn semidirect_checks(d: Dim) -> Result<SemidirectReport> {
    semidirect_checks_using(d, &|a: &HWPElement, b: &HWPElement| a.mul(b))
}

/// As [`semidirect_checks`] with a caller-supplied HWP multiplication.
pub fn semidirect_checks_using(
    d: Dim,
    mul: &dyn Fn(&HWPElement, &HWPElement) -> HWPElement,
) -> Result<SemidirectReport> {
    let g: Vec<_> = hwp_group(d)?.elements().copied().collect();
    let n: Vec<_> = hw_group(d)?.elements().copied().collect();
    let k = vec![HWPElement::identity(d), HWPElement::parity(d)];
    let hwp = semidirect_checks_with(&g, &n, &k, mul);

    let dg: Vec<_> = dihedral_group(d)?.elements().copied().collect();
    let dn: Vec<_> = d.residues().map(|a| DihedralElement::new(a, 0)).collect();
    let dk = vec![DihedralElement::identity(d), DihedralElement::from_ints(d, 0, 1)];
    let dihedral = semidirect_checks_with(&dg, &dn, &dk, &|a, b| a.mul(b));
    Ok(SemidirectReport { hwp, dihedral })
}
