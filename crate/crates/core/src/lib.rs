//! Double categories of discrete spans and matrices over a finite base
//! category, the transport functors between them, a bounded extensivity
//! decision procedure, and the correspondence between monads in either
//! double category and finite categories.

#[macro_use]
mod macros;

pub mod category;
pub mod copower;
pub mod double;
pub mod error;
pub mod finset;
pub mod index;
pub mod kernel;
pub mod matrix;
pub mod monad;
pub mod mutants;
pub mod span;
pub mod transport;
pub mod verdict;

pub use copower::{check_adjoint_equivalence, check_extensive, Copower, ExtensivityMode, ExtensivityReport, SliceObject};
pub use error::{Error, Result};
pub use finset::{FinMap, FinPointedSet, FinSet, FinSetObj, PointedMap, PointedObj};
pub use index::{IndexMap, IndexSet};
pub use kernel::{validate_instance, BaseCategory, ValidationReport, DEFAULT_ENUMERATION_CAP};
pub use verdict::{Verdict, Witness};
pub use category::{find_isomorphism, enumerate_functors, Arrow, CategoryData, FiniteCategory, Functor};
pub use monad::{check_monad_laws, decode, encode, morphism_correspondence, transport_monad, Along, DoubleMonad, Host, Monad};
