//! Executable calculus for free bimonoidal categories, with a matrix-model
//! oracle, a truncated stabilization rig and generalized morphisms.

pub mod decide;
pub mod endo;
pub mod formal;
pub mod gm;
pub mod homotopy;
pub mod leafmap;
pub mod model;
pub mod mor;
pub mod obj;
pub mod random;
pub mod rig;
pub mod stable;
pub mod strictify;

pub use decide::{decide_equal, normalize_monoidal, quotient_equal, Congruence, QuotientVerdict, Verdict};
pub use leafmap::{leaf_map, LeafMap};
pub use mor::{BrMor, Dir, Kind, MorError, MorTerm, TypedMor};
pub use obj::{BrObj, Generator, ObjTerm, Poly, Word};
