//! Acceptance criteria 1-8. Prints one line per criterion and exits nonzero on any failure.

use std::time::{Duration, Instant};

use hwpkit::frames::{bargmann, build_frame, overlap_closed_form, overlap_direct, validate_fiducial, FrameKind};
use hwpkit::grid::{slot, symplectic_fourier, PhasePoint};
use hwpkit::group::{self, commutator2_hwp, commutator_hwp, loop_overlap, GroupElement, HWPElement};
use hwpkit::noise::{run_experiment, NoiseConfig};
use hwpkit::operators::{
    clock_z, dp_action_momentum, dp_action_position, dp_operator, exp_i, fourier, ket_max_abs_diff, max_abs_diff,
    momentum_ket, parity, position_ket, principal_log_hamiltonian, projector, shift_x, Operator,
};
use hwpkit::presets;
use hwpkit::verify::{self, Suite, VerifyOptions};
use hwpkit::wigner::unified_ww;
use hwpkit::{Dim, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL_EXACT: f64 = 1e-10;
const TOL_PRINTED: f64 = 0.01 + 1e-9;
const TOL_STROBOSCOPIC: f64 = 1e-8;
const LOOP_TARGET: f64 = 0.184;
const LOOP_TOL: f64 = 0.005;
const NOISE_TRIALS: usize = 10_000;
const NOISE_AMPLITUDE: f64 = 0.1;
const NOISE_BAND_D3: (f64, f64) = (0.015, 0.045);
const NOISE_BAND_D5: (f64, f64) = (0.008, 0.028);
const ZERO_NOISE_AMPLITUDE: f64 = 1e-8;
const ZERO_NOISE_LIMIT: f64 = 1e-7;

struct Outcome {
    passed: bool,
    detail: String,
}

fn dim(n: u32) -> Dim {
    Dim::new(n).unwrap()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn mat(rows: &[[C64; 3]]) -> Operator {
    Operator::from_fn(3, 3, |i, j| rows[i][j])
}

fn criterion_1() -> Outcome {
    let d = dim(3);
    let w = c(-0.5, 3f64.sqrt() / 2.0);
    let wb = w.conj();
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    let r = 1.0 / 3f64.sqrt();
    let z = mat(&[[wb, o, o], [o, l, o], [o, o, w]]);
    let x = mat(&[[o, o, l], [l, o, o], [o, l, o]]);
    let f = mat(&[[w * r, l * r, wb * r], [l * r, l * r, l * r], [wb * r, l * r, w * r]]);
    let p = mat(&[[o, o, l], [o, l, o], [l, o, o]]);
    let dev = max_abs_diff(&clock_z(d.one()), &z)
        .max(max_abs_diff(&shift_x(d.one()), &x))
        .max(max_abs_diff(&fourier(d), &f))
        .max(max_abs_diff(&parity(d), &p));
    Outcome {
        passed: dev <= TOL_EXACT,
        detail: format!("max deviation {dev:.2e} (tol {TOL_EXACT:.0e})"),
    }
}

/// Printed coefficient table for d = 3: (ν, α, β, F, Q, 𝔚).
/// Row (1,−1,1) carries the corrected sign of Re F; row (0,1,1) reads −0.27 for Re 𝔚.
type Row = (u8, i64, i64, (f64, f64), f64, (f64, f64));

const TABLE1: [Row; 18] = [
    (0, -1, -1, (0.06, 0.04), 0.00, (-0.27, 0.71)),
    (0, -1, 0, (0.05, 0.13), 0.02, (-0.35, 0.06)),
    (0, -1, 1, (-0.29, 0.79), 0.72, (0.08, -0.38)),
    (0, 0, -1, (0.83, 0.0), 0.69, (0.19, 0.23)),
    (0, 0, 0, (0.49, 0.23), 0.29, (0.98, 0.0)),
    (0, 0, 1, (0.15, 0.28), 0.10, (0.19, -0.23)),
    (0, 1, -1, (0.06, -0.04), 0.01, (0.08, 0.38)),
    (0, 1, 0, (-0.54, -0.72), 0.82, (-0.35, -0.06)),
    (0, 1, 1, (0.14, 0.53), 0.31, (-0.27, -0.71)),
    (1, -1, -1, (0.27, 0.11), 0.08, (0.04, 0.0)),
    (1, -1, 0, (0.30, -0.11), 0.10, (0.86, 0.0)),
    (1, -1, 1, (-0.34, 0.68), 0.57, (0.29, 0.0)),
    (1, 0, -1, (0.92, 0.0), 0.85, (0.41, 0.0)),
    (1, 0, 0, (0.32, 0.41), 0.27, (0.10, 0.0)),
    (1, 0, 1, (0.23, 0.09), 0.06, (0.87, 0.0)),
    (1, 1, -1, (0.27, -0.11), 0.09, (0.77, 0.0)),
    (1, 1, 0, (-0.62, -0.66), 0.83, (-0.68, 0.0)),
    (1, 1, 1, (0.10, 0.27), 0.09, (0.29, 0.0)),
];

/// Printed values carry two decimals per real number, so each component is compared separately.
fn component_dev(a: C64, b: C64) -> f64 {
    (a.re - b.re).abs().max((a.im - b.im).abs())
}

fn criterion_2() -> Outcome {
    let d = dim(3);
    let fid = validate_fiducial(&presets::d3_fiducial()).unwrap();
    let frame = build_frame(FrameKind::Hwp, &fid);
    let f = presets::d3_state();
    let coeffs = bargmann(&frame, &f);
    let ww = unified_ww(&projector(&f)).unwrap();
    let mut dev: f64 = 0.0;
    for &(nu, a, b, fv, q, wv) in &TABLE1 {
        let p = PhasePoint::from_ints(d, a, b, nu);
        let fz = coeffs.get(p);
        dev = dev.max(component_dev(fz, c(fv.0, fv.1))).max((fz.norm_sqr() - q).abs());
        dev = dev.max(component_dev(ww.get(p), c(wv.0, wv.1)));
    }
    // The printed ν = 0 column alone fixes the ν = 1 column through the Fourier relation.
    let nu0: Vec<C64> = TABLE1[..9].iter().map(|r| c(r.3 .0, r.3 .1)).collect();
    let moved = symplectic_fourier(d, &nu0, -1);
    let cross = moved[slot(d, PhasePoint::from_ints(d, -1, 1, 0))];
    let cross_dev = component_dev(cross, c(-0.34, 0.68));
    let passed = dev <= TOL_PRINTED && cross_dev <= TOL_PRINTED;
    Outcome {
        passed,
        detail: format!(
            "18 rows, max deviation {dev:.4} (tol {TOL_PRINTED:.2}); printed ν=0 column predicts F(-1,1,1) = {:.3}{:+.3}i",
            cross.re, cross.im
        ),
    }
}

fn printed_d120() -> Operator {
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    mat(&[[o, c(-0.50, 0.86), o], [o, o, c(-0.5, -0.86)], [l, o, o]])
}

fn criterion_3() -> Outcome {
    let d3 = dim(3);
    let d5 = dim(5);
    let g = |d, a, b, nu| HWPElement::from_ints(d, a, b, 0, nu);
    let l3 = commutator_hwp(&g(d3, 2, 1, 1), &g(d3, 1, 2, 0));
    let ok3 = l3 == HWPElement::from_ints(d3, 1, 2, 0, 0);
    let mdev = max_abs_diff(&l3.matrix(), &printed_d120());
    let l5 = commutator_hwp(&g(d5, 2, 3, 1), &g(d5, 1, 4, 0));
    let ok5 = l5 == HWPElement::from_ints(d5, 3, 2, 0, 0);
    let p3 = commutator2_hwp(&g(d3, 2, 1, 1), &g(d3, 1, 2, 0), &g(d3, 1, 0, 1), &g(d3, 2, 2, 0));
    let p5 = commutator2_hwp(&g(d5, 2, 3, 1), &g(d5, 1, 2, 0), &g(d5, 1, 0, 1), &g(d5, 3, 3, 0));
    let okp = p3.exponent == d3.elem(-2) && p5.exponent == d5.elem(3);
    let lo = loop_overlap(
        &hwpkit::operators::normalized(&presets::d3_loop_state()).unwrap(),
        &g(d3, 2, 1, 1),
        &g(d3, 1, 2, 0),
    )
    .unwrap();
    let passed = ok3 && ok5 && okp && mdev <= TOL_PRINTED && (lo - LOOP_TARGET).abs() <= LOOP_TOL;
    Outcome {
        passed,
        detail: format!(
            "L(2,1,1|1,2,0)={l3} (printed matrix dev {mdev:.4}); L(2,3,1|1,4,0)={l5}; double commutators ω({})·1, ω({})·1; loop overlap {lo:.5}",
            p3.exponent.centered(),
            p5.exponent.value()
        ),
    }
}

fn criterion_4() -> Outcome {
    let d = dim(3);
    let (o, i) = (c(0.0, 0.0), |re: f64, im: f64| c(re, im));
    let h_printed = mat(&[
        [o, i(0.50, -0.28), i(0.0, -0.57)],
        [i(0.50, 0.28), o, i(-0.50, -0.28)],
        [i(0.0, 0.57), i(-0.50, 0.28), o],
    ]);
    let psi_printed = mat(&[
        [o, i(0.50, 0.28), i(0.0, 0.57)],
        [i(0.50, -0.28), o, i(-0.50, 0.28)],
        [i(0.0, -0.57), i(-0.50, -0.28), o],
    ]);
    let u1 = dp_operator(d.one(), d.one(), d.zero(), 0);
    let loop_el = commutator_hwp(
        &HWPElement::from_ints(d, 2, 1, 0, 1),
        &HWPElement::from_ints(d, 1, 2, 0, 0),
    );
    let u2 = loop_el.matrix();
    let h1 = principal_log_hamiltonian(&u1).unwrap();
    let h2 = principal_log_hamiltonian(&u2).unwrap();
    let t = std::f64::consts::TAU / 3.0;
    let printed = max_abs_diff(&h1, &h_printed).max(max_abs_diff(&h2, &psi_printed));
    let strob = max_abs_diff(&exp_i(&h1, t), &u1).max(max_abs_diff(&exp_i(&h2, t), &u2));
    Outcome {
        passed: printed <= TOL_PRINTED && strob <= TOL_STROBOSCOPIC,
        detail: format!(
            "printed-matrix deviation {printed:.4} (tol 0.01); exp(i h 2π/d) deviation {strob:.2e} (tol 1e-8)"
        ),
    }
}

fn criterion_5() -> (Outcome, Duration) {
    let start = Instant::now();
    let opts = VerifyOptions {
        dims: vec![],
        group_dims: vec![dim(3), dim(5)],
        ..Default::default()
    };
    let report = verify::run(Suite::Group, &opts).unwrap();
    let elapsed = start.elapsed();
    let mut ok = true;
    let mut sizes = vec![];
    for n in [3usize, 5] {
        let s = |g| report.series_for(g, n as u32).unwrap();
        ok &= s("HWP").derived_series_sizes == vec![2 * n * n * n, n * n * n, n, 1] && !s("HWP").nilpotent;
        ok &= *s("HWP").lower_central_sizes.last().unwrap() == n * n * n;
        ok &= s("HW").derived_series_sizes == vec![n * n * n, n, 1] && s("HW").nilpotent;
        ok &= s("dihedral").derived_series_sizes == vec![2 * n, n, 1];
        sizes.push(format!("d={n} HWP {:?}", s("HWP").derived_series_sizes));
    }
    let checks = report.checks.len();
    (
        Outcome {
            passed: ok && report.passed,
            detail: format!(
                "{}; {checks} structural checks, failures {:?}",
                sizes.join(", "),
                report.failures
            ),
        },
        elapsed,
    )
}

const BATTERY: &[&str] = &[
    "resolution-hw",
    "resolution-hwp",
    "unified-fourier",
    "frame-fourier",
    "orthogonality",
    "marginal-ww-momentum-line",
    "marginal-ww-position-line",
    "marginal-ww-total",
    "marginal-ww-parity-sectors",
    "marginal-operator-momentum-line",
    "marginal-operator-position-line",
    "marginal-operator-total",
    "marginal-operator-parity-sectors",
    "marginal-wigner-lines",
    "marginal-weyl-lines",
    "marginal-wz-marginal",
    "marginal-rep-marginal",
    "expansion-displacements",
    "expansion-parities",
    "expansion-unified",
    "moyal-star",
    "weyl-convolution",
    "unified-product",
    "dp-homomorphism",
];

fn criterion_6() -> Outcome {
    let mut worst = (0.0f64, "");
    let mut ok = true;
    let mut count = 0;
    for suite in [Suite::Operators, Suite::Frames, Suite::Ww] {
        let report = verify::run(suite, &VerifyOptions::default()).unwrap();
        for c in report.checks.iter().filter(|c| BATTERY.contains(&c.name)) {
            count += 1;
            ok &= c.passed;
            if c.max_deviation > worst.0 {
                worst = (c.max_deviation, c.name);
            }
        }
        ok &= report.passed;
    }
    ok &= count == BATTERY.len() * 3;
    Outcome {
        passed: ok,
        detail: format!(
            "{count} identity checks over d=3,5,7; worst {:.2e} ({})",
            worst.0, worst.1
        ),
    }
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut parts = vec![];
    for (d, band) in [(3u32, NOISE_BAND_D3), (5, NOISE_BAND_D5)] {
        let (f, s) = presets::vectors_for(d).unwrap();
        let cfg = NoiseConfig {
            amplitude: NOISE_AMPLITUDE,
            trials: NOISE_TRIALS,
            seed: 1,
            ..Default::default()
        };
        let r = run_experiment(&f, &s, &cfg).unwrap();
        ok &= r.hw.mean >= band.0 && r.hw.mean <= band.1 && r.e2_lt_e1();
        let z = NoiseConfig {
            amplitude: ZERO_NOISE_AMPLITUDE,
            trials: 200,
            ..cfg
        };
        let rz = run_experiment(&f, &s, &z).unwrap();
        ok &= rz.hw.mean < ZERO_NOISE_LIMIT && rz.hwp.mean < ZERO_NOISE_LIMIT;
        parts.push(format!(
            "d={d}: E1={:.4} E2={:.4} (band [{}, {}]); zero-noise {:.1e}/{:.1e}",
            r.hw.mean, r.hwp.mean, band.0, band.1, rz.hw.mean, rz.hwp.mean
        ));
    }
    Outcome {
        passed: ok,
        detail: parts.join("; "),
    }
}

fn tyu<E: GroupElement>(f: &E, g: &E, h: &E) -> bool {
    g.commutator(h).inv() == h.commutator(g)
        && g.commutator(h).mul(h).mul(g) == g.mul(h)
        && f.commutator(&g.mul(h))
            .mul(&g.commutator(&h.mul(f)))
            .mul(&h.commutator(&f.mul(g)))
            .is_identity()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let d3 = dim(3);
    let d5 = dim(5);
    let mut ok = true;

    let dih: Vec<_> = group::dihedral_group(d3).unwrap().elements().copied().collect();
    let hwp3: Vec<_> = group::hwp_group(d3).unwrap().elements().copied().collect();
    for f in &dih {
        for g in &dih {
            for h in &dih {
                ok &= tyu(f, g, h);
            }
        }
    }
    for f in hwp3.iter().step_by(5) {
        for g in &hwp3 {
            for h in hwp3.iter().step_by(7) {
                ok &= tyu(f, g, h);
            }
        }
    }
    for _ in 0..2000 {
        let r = |rng: &mut ChaCha8Rng| hwpkit::random::hwp_element(d5, rng);
        let (f, g, h) = (r(&mut rng), r(&mut rng), r(&mut rng));
        ok &= tyu(&f, &g, &h);
    }
    let tyu_ok = ok;

    let mut action: f64 = 0.0;
    for d in [dim(3), dim(5), dim(7)] {
        for a in d.residues() {
            for b in d.residues() {
                for g in d.residues() {
                    for nu in 0..2u8 {
                        let m = dp_operator(a, b, g, nu);
                        for j in d.residues() {
                            let (ph, k) = dp_action_position(a, b, g, nu, j);
                            action = action.max(ket_max_abs_diff(
                                &(&m * position_ket(j)),
                                &(position_ket(k) * ph.omega()),
                            ));
                            let (ph, k) = dp_action_momentum(a, b, g, nu, j);
                            action = action.max(ket_max_abs_diff(
                                &(&m * momentum_ket(j)),
                                &(momentum_ket(k) * ph.omega()),
                            ));
                        }
                    }
                }
            }
        }
    }

    let mut double: f64 = 0.0;
    for d in [d3, d5] {
        let one = hwpkit::operators::identity(d);
        for _ in 0..100 {
            let g: Vec<HWPElement> = (0..4).map(|_| hwpkit::random::hwp_element(d, &mut rng)).collect();
            let m: Vec<Operator> = g.iter().map(|e| e.matrix()).collect();
            let comm = |a: &Operator, b: &Operator| {
                a * b * a.clone().try_inverse().unwrap() * b.clone().try_inverse().unwrap()
            };
            let lit = comm(&comm(&m[0], &m[1]), &comm(&m[2], &m[3]));
            let phase = commutator2_hwp(&g[0], &g[1], &g[2], &g[3]).to_complex();
            double = double.max(max_abs_diff(&lit, &(&one * phase)));
        }
    }

    let mut overlap: f64 = 0.0;
    for d in [d3, d5, dim(7)] {
        let fid = hwpkit::random::fiducial(d, &mut rng);
        let n = d.get() as i64;
        for _ in 0..100 {
            let mut pt = || {
                PhasePoint::from_ints(
                    d,
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..2),
                )
            };
            let (p1, p2) = (pt(), pt());
            overlap =
                overlap.max((overlap_closed_form(fid.state(), p1, p2) - overlap_direct(fid.state(), p1, p2)).abs());
        }
    }
    let passed = tyu_ok && action <= TOL_EXACT && double <= TOL_EXACT && overlap <= TOL_EXACT;
    Outcome {
        passed,
        detail: format!(
            "commutator identities {}; basis action {action:.1e}; double commutator {double:.1e}; overlaps {overlap:.1e}",
            if tyu_ok { "hold" } else { "FAIL" }
        ),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration, Option<Duration>) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed(), limit)
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let mut results = vec![
        timed(secs(1), criterion_1),
        timed(secs(1), criterion_2),
        timed(None, criterion_3),
        timed(None, criterion_4),
    ];
    let (c5, t5) = criterion_5();
    results.push((c5, t5, secs(30)));
    results.push(timed(None, criterion_6));
    results.push(timed(secs(60), criterion_7));
    results.push(timed(None, criterion_8));

    let mut failed = 0;
    for (i, (out, elapsed, limit)) in results.iter().enumerate() {
        let in_time = limit.is_none_or(|l| *elapsed <= l);
        let ok = out.passed && in_time;
        if !ok {
            failed += 1;
        }
        let budget = limit.map(|l| format!(" / {}s", l.as_secs())).unwrap_or_default();
        println!(
            "criterion {}: {} {} [{:.2}s{budget}]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
