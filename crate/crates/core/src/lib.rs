//! Group-invariant CR maps between hyperquadrics for cyclic diagonal groups.
//!
//! The group `Γ` of order `p` generated by `diag(ω^q1, ω^q2)` acts on `C^2`
//! preserving either the sphere (`U(2)`) or the hyperquadric `Q(1,1)`
//! (`U(1,1)`). The invariant polynomial `Φ = 1 - Π_γ (1 - ⟨γz, z⟩)` is a
//! polynomial in `x = |z1|^2` and `y = |z2|^2`; its coefficient signs give the
//! signature pair `(N+, N-)` of the target hyperquadric.
//!
//! - [`signature`]: support, sign law and signature pairs in `O(p)`.
//! - [`expand`] / [`modular`]: exact expansion, two independent backends.
//! - [`oracle`]: circulant determinants and stepped-permutation classes.
//! - [`asymptotics`]: weight counts and limiting positivity ratios.
//! - [`verify`]: the cross-checking suite behind `quadrisig verify`.

pub mod arith;
pub mod asymptotics;
pub mod cyclotomic;
pub mod error;
pub mod expand;
pub mod modular;
pub mod oracle;
pub mod params;
pub mod poly;
pub mod signature;
pub mod verify;

pub use arith::Rational;
pub use error::{Error, Result};
pub use expand::{cr_map, expand, CrComponent, CrMap};
pub use modular::{expand_modular, expand_modular_with, ModularConfig};
pub use params::{canonicalize, Form, GroupParams};
pub use poly::SparseExactPolynomial;
pub use signature::{
    classify_sign, positivity_ratio, signature, su11_signature, support, Sign, SignaturePair, SupportEntry,
};
