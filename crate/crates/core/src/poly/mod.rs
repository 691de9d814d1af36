//! Polynomials over Z, Q and F_p; factorization; multivariate forms.

pub mod factor;
pub mod int;
pub mod modp;
pub mod multi;
pub mod rat;
pub mod roots;

pub use factor::{factor, irreducible_factors, is_irreducible, Factorization};
pub use int::{resultant, IntPolynomial};
pub use multi::{det_multi, MultiPoly};
pub use rat::RatPolynomial;
pub use roots::{box_inside, isolate_roots, isolate_with_hints, sort_roots, sort_tagged};
