//! Exact arithmetic: number fields, polynomials, linear algebra and root finding.

pub mod bipoly;
pub mod field;
pub mod linalg;
mod modular;
pub mod poly;
pub mod roots;

pub use bipoly::BiPoly;
pub use field::{cyclotomic_polynomial, field_make, Fe, Field, FieldSpec, Q};
pub use poly::Poly;
pub use roots::roots_in_field;
