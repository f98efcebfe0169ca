//! Decision procedures and witness certificates for hyperrigidity of tensor
//! algebras of graph correspondences, in exact Gaussian-rational arithmetic.

pub mod algebra;
pub mod corpus;
pub mod correspondence;
pub mod error;
pub mod fock;
pub mod format;
pub mod fuzz;
pub mod interval;
pub mod linalg;
pub mod scalar;
pub mod topograph;

pub use algebra::{AlgebraElement, Atom, AtomSet, Cardinal, EvaluationRep, IdealSpec};
pub use correspondence::{Correspondence, EdgeClass, EdgeCopy, ModuleElement, PathVector, Submodule, Theta};
pub use error::{Error, Result};
pub use fock::{
    build_fock, verify_certificate, witness_for, FockConfig, TruncatedFock, VerifyOutcome, WitnessCertificate,
};
pub use format::{parse_instance, InstanceFile};
pub use interval::{Endpoint, Interval, IntervalSet, PiecewiseAffineMap};
pub use scalar::{Rational, Scalar};
pub use topograph::{
    decide_hyperrigid, Certificate, DiscreteGraphPresentation, GraphPresentation, IntervalGraphPresentation, Routes,
    Verdict, WitnessHandle,
};
