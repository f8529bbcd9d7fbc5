//! Exact inversion of matrices over `Z[x_1, ..., x_m]` by fraction-free
//! Strassen recursion, with content removal on intermediate Schur
//! complements and instrumentation of the resulting degree growth.
//!
//! ```
//! use polyfrac::{ff_invert_v2, InvertConfig, PolyMatrix, Ring};
//!
//! let r = Ring::new(&["x", "y"]).unwrap();
//! let a = PolyMatrix::parse(&r, &[&["x", "y"], &["1", "x"]]).unwrap();
//! let res = ff_invert_v2(&a, &r.one(), &InvertConfig::default()).unwrap();
//! assert_eq!(res.det.to_string(), "x^2 - y");
//! assert_eq!(res.adj_scaled.get(0, 1).to_string(), "-y");
//! ```

pub mod cli;
pub mod content;
pub mod error;
pub mod fastmul;
pub mod inversion;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod profile;

pub use content::{extract_content, gcd_budget, ContentPrediction, Op, OpPath};
pub use error::{Error, Result};
pub use fastmul::{MulConfig, MulCounter, MulVariant};
pub use inversion::{
    det_only, det_only_with, ff_invert_v1, ff_invert_v2, schur_delta, Algorithm, CancelPolicy,
    FFResult, InvertConfig,
};
pub use matrix::{pad, trim_adjugate, PadMode, PolyMatrix, ScaledMatrix};
pub use poly::{Degree, Monomial, Poly, Ring};
pub use profile::{DegreeProfile, NodeKind, NodeRecord, ProfileReport};
