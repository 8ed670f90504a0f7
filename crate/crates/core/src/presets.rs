//! Reference vectors for the worked d = 3 and d = 5 examples.

use crate::operators::{ket_from, Ket};

/// Fiducial for the d = 3 frames (norm² 1.0029 as written).
pub fn d3_fiducial() -> Ket {
    ket_from(&[(0.5, 0.0), (0.0, 0.4), (0.77, 0.0)])
}

/// Expanded state for d = 3 (norm² 0.9896 as written).
pub fn d3_state() -> Ket {
    ket_from(&[(0.0, 0.7), (0.3, 0.0), (0.64, 0.0)])
}

/// Alternative d = 3 fiducials.
pub fn d3_alt_fiducials() -> [Ket; 2] {
    [
        ket_from(&[(0.6, 0.0), (-0.5, 0.0), (0.66, 0.0)]),
        ket_from(&[(0.1, 0.0), (-0.5, 0.0), (0.86, 0.0)]),
    ]
}

/// State used for the d = 3 loop overlap (norm² 1.0069 as written).
pub fn d3_loop_state() -> Ket {
    ket_from(&[(0.3, 0.0), (0.0, 0.4), (0.87, 0.0)])
}

/// Fiducial for the d = 5 frames.
pub fn d5_fiducial() -> Ket {
    ket_from(&[(0.5, 0.0), (0.4, 0.0), (0.0, 0.3), (0.6, 0.0), (0.37, 0.0)])
}

/// Expanded state for d = 5.
pub fn d5_state() -> Ket {
    ket_from(&[(0.65, 0.0), (0.3, 0.0), (-0.3, 0.0), (0.5, 0.0), (0.0, 0.38)])
}

/// `(f, s)` for `d ∈ {3, 5}`.
pub fn vectors_for(d: u32) -> Option<(Ket, Ket)> {
    match d {
        3 => Some((d3_state(), d3_fiducial())),
        5 => Some((d5_state(), d5_fiducial())),
        _ => None,
    }
}
