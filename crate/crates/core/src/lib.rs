//! Adaptive resonance theory clustering and classification.
//!
//! Unsupervised models share one presentation engine ([`engine::ArtNetwork`])
//! parameterized by a category geometry from [`models`]. TopoART lives in
//! [`topology`], the ARTMAP classifier in [`supervised`].

pub mod any;
pub mod engine;
pub mod error;
pub mod metrics;
pub mod models;
mod numeric;
pub mod persist;
pub mod preprocess;
pub mod supervised;
pub mod topology;

pub use any::{build_network, build_sfam, AnyNetwork, AnySfam, HyperParams, ModelSummary};
pub use engine::{
    check_convergence, fit, ArtNetwork, CategoryModel, FitReport, Learner, ModelKind, Policy, PresentOutcome,
};
pub use error::{ArtError, Result};
pub use supervised::{fit_supervised, MatchTracking, Sfam};
pub use topology::{TopoArt, TopoParams};
