//! Normal elements of GF(2^n) over GF(2) with a prescribed trace
//! self-orthogonal vector `a_i = Tr(alpha * alpha^(2^i))`.
//!
//! * [`poly2`]: GF(2)[x] and the cyclic ring GF(2)[x]/(x^n - 1).
//! * [`field`]: GF(2^n) arithmetic, Frobenius, traces, subfields.
//! * [`normal`]: corresponding vectors, normality, basis change.
//! * [`factor`]: solving `h = g * g^*` in the cyclic ring.
//! * [`construct`]: validation and the end-to-end constructions.
//! * [`oracle`]: exhaustive ground truth for small `n`.

pub mod construct;
pub mod error;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod normal;
pub mod oracle;
pub mod poly2;

pub use construct::{
    compose, necessary_conditions, prescribe, prescribe_in_subfield, prescribe_with,
    prescribe_with_beta, validate_vector, weight3, Composition, Prescription, Status, Verdict,
    Weight3,
};
pub use error::{Error, Result, NO_SUCH_ELEMENT};
pub use field::{FieldElem, FieldSpec};
pub use normal::{Strategy, TraceVector};
pub use poly2::{CyclicPoly, Poly};
