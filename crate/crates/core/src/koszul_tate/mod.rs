//! Koszul complexes, free dg algebras and Tate resolvents.

mod dg;
mod koszul;
mod resolvent;
mod window;

pub use dg::{DgAlgebra, DgElement, DgMonomial, TateVariable};
pub(crate) use koszul::homology_generators;
pub use koszul::{koszul_algebra, koszul_complex, koszul_homology_algebra, KoszulHomology};
pub use resolvent::{
    acyclic_closure, minimal_resolvent, minimal_resolvent_with_cap, ResolventKind, TateResolvent,
};
pub(crate) use window::Window;
