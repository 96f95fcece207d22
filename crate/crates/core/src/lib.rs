//! Hall π-subgroups of finite permutation groups and the properties
//! E_π, C_π and D_π, with checks of the reduction from C_π to induced
//! Hall classes in normal subgroups.

pub mod constructors;
pub mod error;
pub mod group;
pub mod hall;
pub mod hom;
pub mod limits;
pub mod perm;
pub(crate) mod pisub;
pub mod search;
pub mod subgroup;
pub mod verify;
pub mod cli;
pub(crate) mod table;

pub use constructors::{parse_group_spec, GroupSpec};
pub use error::{Error, Result};
pub use group::Group;
pub use hall::{classify_properties, hall_classes, HallMode, PrimeSet, PropertyReport, SubgroupClass, Tri};
pub use limits::Limits;
pub use perm::Permutation;
pub use subgroup::Subgroup;
