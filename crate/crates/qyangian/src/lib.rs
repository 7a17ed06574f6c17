//! Exact symbolic machinery for the twisted q-Yangian of type AI.
//!
//! The algebra is constructed from its reflection-equation presentation: a
//! trigonometric R-matrix, a quadratic exchange relation on a matrix of
//! generating series, and zero-mode constraints.  Everything downstream is
//! derived mechanically over the exact field Q(q):
//!
//! * [`scalars`] — arbitrary-precision rationals, Laurent polynomials in q,
//!   and the rational-function field Q(q) in canonical form.
//! * [`ncalg`] — free associative algebra on indexed generators, PBW-style
//!   monomial orders, and a graded rewrite engine.
//! * [`rmat`] — the R-matrix, its transpose/inverse variants, and the exact
//!   matrix identities they satisfy (Yang-Baxter, unitarity, crossing).
//! * [`presentations`] — extraction of defining relations as coefficient
//!   identities and synthesis of rewrite rules by exact linear solving.
//! * [`gauss`] — truncated generating series with exactness windows, Gauss
//!   decomposition of the generator matrix, and the current generators.
//! * [`drinfeld`] — coefficient-by-coefficient verification of the current
//!   (Drinfeld-type) relations in rank 1, rank 2, and coefficient form.
//! * [`classical`] — the q -> 1 specialization onto a twisted loop algebra
//!   and linear-independence certificates for PBW-type monomial families.
//! * [`center`] — the central determinant series built from the diagonal
//!   Gauss factors.
//! * [`maps`] — rank-shift, gauge, and mirror maps with their invariants.
//! * [`report`] — machine-readable run reports shared by the CLI and tests.

pub mod center;
pub mod classical;
pub mod drinfeld;
pub mod gauss;
pub mod maps;
pub mod ncalg;
pub mod presentations;
pub mod report;
pub mod rmat;
pub mod scalars;
pub mod suites;
