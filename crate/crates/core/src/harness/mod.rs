//! Evaluates both sides of the weighted inequalities on concrete pairs,
//! generates the standard test families, runs parameter sweeps with
//! log-log fits and hosts the acceptance suite.

mod families;
mod ratios;
mod sharpness;
pub mod suite;
mod sweep;

pub use families::{family_check, family_generate, BaseProfile, FamilyKind, FamilySpec};
pub use ratios::{
    biparameter_ratio, commutator_ratio, kp_ratio, kp_ratio_with, mixed_ratio, Exponents,
    GridMeta, InequalityReport, MixedExponents, TheoremId,
};
pub use sharpness::{sharpness_classify, Regime};
pub use sweep::{sweep, SweepFit, SweepResult, SweepSpec};
