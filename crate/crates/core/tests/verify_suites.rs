use hwpkit::verify::{run, Fault, Suite, VerifyOptions};

fn print_failures(r: &hwpkit::verify::VerifyReport) {
    for c in r.checks.iter().filter(|c| !c.passed) {
        eprintln!(
            "FAIL {} d={} dev={:e} tol={:e}",
            c.name, c.d, c.max_deviation, c.tolerance
        );
    }
}

#[test]
fn all_suites_pass() {
    let r = run(Suite::All, &VerifyOptions::default()).unwrap();
    print_failures(&r);
    assert!(r.passed, "{:?}", r.failures);
    for m in &r.manifest {
        assert!(r.checks.iter().any(|c| c.name == m.name), "{} never evaluated", m.name);
    }
}

#[test]
fn series_sizes_reported() {
    let opts = VerifyOptions::default();
    let r = run(Suite::Group, &opts).unwrap();
    for d in [3usize, 5] {
        let hwp = r.series_for("HWP", d as u32).unwrap();
        assert_eq!(hwp.derived_series_sizes, vec![2 * d * d * d, d * d * d, d, 1]);
        assert!(!hwp.nilpotent);
        assert!(r.series_for("HW", d as u32).unwrap().nilpotent);
        assert_eq!(
            r.series_for("dihedral", d as u32).unwrap().derived_series_sizes,
            vec![2 * d, d, 1]
        );
    }
}

#[test]
fn fourier_sign_fault_is_detected_by_name() {
    let opts = VerifyOptions {
        fault: Some(Fault::UnifiedFourierSign),
        ..Default::default()
    };
    let r = run(Suite::Ww, &opts).unwrap();
    assert!(!r.passed);
    assert_eq!(r.failures, vec!["unified-fourier".to_string()]);
}

#[test]
fn corrupt_multiplication_breaks_semidirect_checks() {
    let opts = VerifyOptions {
        fault: Some(Fault::CorruptMultiplication),
        ..Default::default()
    };
    let r = run(Suite::Group, &opts).unwrap();
    assert!(r.failures.contains(&"semidirect-hwp".to_string()));
}
