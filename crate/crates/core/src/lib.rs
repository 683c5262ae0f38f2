//! Homogeneous border bases on infinite order ideals.
//!
//! An order ideal is given as the complement of a monomial ideal. On top of
//! it the crate builds border reduction structures, reduces polynomials
//! against a border prebasis, assembles graded formal multiplication
//! matrices and decides basis-ness with a Gotzmann-bounded window. Bases can
//! also be synthesized from ideal generators and extended degree by degree.

pub mod error;
pub mod exactmath;
pub mod io;
pub mod monomial;
pub mod multmatrix;
pub mod orderideal;
pub mod polynomial;
pub mod prebasis;
pub mod redstruct;
pub mod synthesis;

pub use error::{Error, Result};
pub use exactmath::{ExactMatrix, ParamPoly, ParamSpace, Ring, RowSpace, Scalar, Solution};
pub use io::{ElementDoc, FieldDoc, PolynomialDoc, TieBreakDoc, WorkspaceDoc};
pub use monomial::{enumerate_degree, Term};
pub use multmatrix::{
    build_matrices, check_basis, check_basis_with_cap, commutator, multiplication_matrix, parametric_conditions,
    parametric_conditions_with_cap, BasisCertificate, MatrixFamily, Verdict, Witness,
};
pub use orderideal::{macaulay_representation, macaulay_transform, OrderIdeal, Slice, DEFAULT_GOTZMANN_CAP};
pub use polynomial::Polynomial;
pub use prebasis::{CriterionReport, Prebasis, PrebasisBuilder, ReductionStep, ReductionTrace};
pub use redstruct::{ConeRecord, ReductionStructure, TieBreak};
pub use synthesis::{
    basis_from_ideal, basis_from_ideal_with, extend, k_sequence, verify_eq_identity, Defect, DegreeDims,
    IdealPresentation, PivotOrder, SynthesisFailure, SynthesisReport, EQ_IDENTITY_CAP,
};
