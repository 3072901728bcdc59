//! Degree quasi-polynomials: fitting, and the predicted degrees of Mazur doubles.
mod predict;
mod quasi;
mod verify;

pub use predict::{predict_max, predict_min, Branch, MinConstants, MinDegreeAuxiliary, MinOptions, Prediction};
pub use quasi::{fit_quasi, fit_quasi_auto, mirror_profile, QuasiQuadratic, Scalar};
pub use verify::{
    fit_knot_degrees, mazur_degrees, predict_side, slope_inclusion, verify, KnotDegrees, SlopeCheck, Verdict,
    VerifyReport, VerifyRow, FIT_COLORS,
};
