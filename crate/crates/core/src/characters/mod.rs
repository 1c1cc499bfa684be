//! The unit group `(Z/n)^×`, its Dirichlet characters, and functions on
//! `G` and its quotients.

mod dirichlet;
mod group;
mod unit_group;

use std::sync::Arc;

pub use dirichlet::{characters_of, CharacterFilter, DirichletCharacter, Parity};
pub use group::{GaloisGroup, GroupFunction};
pub use unit_group::{euler_phi, factorize, CyclicComponent, UnitGroup, UnitGroupTable};

use crate::error::Result;

pub fn unit_group(n: u64) -> Result<UnitGroup> {
    UnitGroup::new(n)
}

/// Characters mod `n` passing `filter`, in index order (index 0 is the
/// principal character).
pub fn characters(n: u64, filter: CharacterFilter) -> Result<Vec<DirichletCharacter>> {
    let g = Arc::new(UnitGroup::new(n)?);
    Ok(characters_of(&g, filter))
}
