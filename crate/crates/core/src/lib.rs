//! Exact-arithmetic engine for Cartan schemes, Weyl groupoids, the right
//! Duflo order, and the census of graded right coideal subalgebras of
//! diagonal Nichols algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`gcm`] - integer lattice primitives: root vectors, generalized Cartan
//!   matrices, reflection matrices and word actions on `Z^theta`.
//! * [`scalar`] - exact scalar domains for diagonal braidings (roots of
//!   unity, formal powers of a generic `q`, rationals).
//! * [`braiding`] - braiding matrices, Cartan entries of a diagonal
//!   braiding and the reflection operation on braidings.
//! * [`scheme`] - Cartan schemes: construction from explicit data or by
//!   closing a braiding matrix under reflections, plus the axiom checker.
//! * [`groupoid`] - Weyl groupoid enumeration, real roots, root-system and
//!   Coxeter-relation checkers, finiteness detection.
//! * [`duflo`] - the Lambda_+ calculus and the right Duflo order, with
//!   poset construction and DOT output.
//! * [`census`] - PBW degree sequences, factored Hilbert series and the
//!   coideal census indexed by groupoid morphisms.
//! * [`oracle`] - a brute-force realization of diagonal Nichols algebras in
//!   the quantum shuffle picture, used to cross-validate everything above
//!   at small degree.
//! * [`io`] - input documents (JSON/TOML), scalar literals, root notation
//!   and machine-readable reports.

pub mod braiding;
pub mod census;
pub mod duflo;
pub mod gcm;
pub mod groupoid;
pub mod io;
pub mod oracle;
pub mod scalar;
pub mod scheme;

pub use braiding::{diagonal_cartan_entry, reflect_braiding, BraidingMatrix, TwistKey};
pub use census::{hilbert_series, kharchenko_count, CensusError, CoidealRecord};
pub use duflo::{build_poset, lambda_plus, leq_duflo, DufloError, DufloPoset, LambdaSet};
pub use gcm::{
    apply_word, reflection_matrix, validate_gcm, GcmError, GeneralizedCartanMatrix, LatticeMap,
    RootVector,
};
pub use groupoid::{
    check_coxeter_relations, check_root_system, enumerate_groupoid, is_finite, real_roots,
    GroupoidError, Morphism,
};
pub use oracle::{
    cartan_entry_via_adjoint, commutator_check, enumerate_coideals_small, verify_coideal,
    NicholsOracle, OracleConfig, OracleError,
};
pub use scalar::{ScalarMode, ScalarValue};
pub use scheme::{build_from_braiding, build_from_matrices, check_axioms, CartanScheme, SchemeError};
