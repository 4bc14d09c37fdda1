//! Bounds and configurations for spherical codes and kissing problems.

pub mod configs;
pub mod delsarte;
pub mod error;
pub mod geom_bounds;
pub mod polybasis;
pub mod refdata;
pub mod rigidity;
pub mod simplex;
pub mod twodist;

pub use error::{Error, Result};
