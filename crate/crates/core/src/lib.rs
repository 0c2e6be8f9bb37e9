pub mod algebraic;
pub mod algext;
pub mod error;
pub mod mpoly;
pub mod oracle;
pub mod ore;
pub mod ratfunc;
pub mod reduction;
pub mod separable;
pub mod upoly;
pub mod valdis;
pub mod vars;

pub use error::{Error, Result};
pub use mpoly::{MPoly, Monomial, Rat};
pub use ratfunc::RatFunc;
pub use vars::{VarUniverse, T_VAR};
