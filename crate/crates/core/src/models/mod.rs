//! Category geometries, one module per model family.

pub mod art1;
pub mod bayes;
pub mod dvfa;
pub mod ellipsoid;
pub mod fuzzy;
pub mod gaussian;
pub mod hypersphere;

pub use art1::{Art1, Art1Category, Art1Params};
pub use bayes::{BayesCategory, BayesParams, BayesianArt};
pub use dvfa::{Dvfa, DvfaParams};
pub use ellipsoid::{DirectionAnchor, EllipsoidArt, EllipsoidCategory, EllipsoidParams};
pub use fuzzy::{FuzzyArt, FuzzyCategory, FuzzyParams};
pub use gaussian::{GaussCategory, GaussParams, GaussianArt};
pub use hypersphere::{HypersphereArt, SphereCategory, SphereParams};
