pub mod bhk;
pub mod error;
pub mod linalg;
pub mod polytope;
pub mod toric;
pub mod goodpair;
pub mod hodge;
pub mod hypersurface;
pub mod io;
pub mod survey;

pub use error::{Error, GoodPairFailure, Result};
