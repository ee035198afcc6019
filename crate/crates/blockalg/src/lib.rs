//! Exact symbolic computation for the Block-type Lie superalgebras S(q),
//! their polynomial module families, and machine-checkable verification of
//! the structural identities they satisfy.
//!
//! The crate is organized around six layers:
//!
//! - [`scalar`]: the exact coefficient field Q(sqrt2) over big rationals
//! - [`poly`]: dense univariate polynomials with affine substitution
//! - [`algebra`]: the superalgebras S(q), their bracket, the graded Jacobi
//!   defect, the sector-doubling embedding and rescaled generators
//! - [`modules`]: the four module families (RB, NSB, Witt,
//!   Heisenberg-Virasoro), module-axiom defects, the intertwiner between
//!   the sectors, and operator-identity checks
//! - [`analysis`]: certified row reduction, truncated submodule closure,
//!   the simplicity probe, invariant extraction and the rank-2 base-point
//!   solver with its brute-force oracle
//! - [`parser`]: the wire grammar for scalars, elements, polynomials and
//!   vectors
//!
//! Everything is exact: all checks are equalities in Q(sqrt2), with no
//! floating point anywhere.

pub mod algebra;
pub mod analysis;
pub mod check;
pub mod embeddings;
pub mod error;
pub mod modules;
pub mod parser;
pub mod poly;
pub mod scalar;
pub mod suites;

pub use algebra::{
    bracket, bracket_basis, odd_generates_even_witness, super_jacobi_defect, svir_rescale,
    tau_embed, tau_embed_key, window_keys, AlgebraElement, BasisKey, Parity, Sector,
    StructureParams,
};
pub use analysis::{
    closure, default_probe_seeds, extract_invariants_from_actions, extract_invariants_l,
    extract_invariants_r, invariants_match, predicted_simple, rank2_bruteforce_check, rank2_solve,
    rank2_verify, simplicity_probe, spans_all_monomials, Certificate, ClosureOutcome,
    DegreeWindow, ExtractedInvariants, ModuleVector, OperatorWord, ProbeOutcome, ProbeVerdict,
    Rank2Case, Rank2Solution, SubspaceBasis,
};
pub use check::{CheckReport, Defect, SuiteOutcome, SuiteRecord};
pub use embeddings::{
    check_hv_embedding, check_svir_relations, check_tau_preserves_brackets, svir_structure_table,
};
pub use error::{AlgebraError, ArithmeticError, ParseError};
pub use modules::{
    act_h, act_l, act_l_basis, act_r, act_r_basis, act_w, check_lemma32_identity,
    check_lemma52_basepoints, check_phi_degree_bijective, check_phi_intertwines, phi_image_params,
    phi_map, phi_map_vector, HvGen, ModuleParams, PolyVector, SuperVectorL, SuperVectorR,
};
pub use parser::{
    format_element, format_poly, format_vector, parse_element, parse_poly, parse_scalar,
    parse_vector,
};
pub use poly::Poly;
pub use scalar::{Rational, Scalar};
