//! Exact computation of the commutativity degree and the exterior degree of
//! finite groups, and of their limits along towers of finite p-groups.

pub mod corpus;
pub mod degrees;
pub mod error;
pub mod family;
pub mod fp;
pub mod group;
pub mod io;
pub mod perm;
pub mod rational;
pub mod snf;
pub mod suite;
pub mod tensor;
pub mod tower;

pub use error::{Error, Result};
pub use group::{
    direct_product, AbelianInvariants, ConjClasses, Elem, FiniteGroup, GroupHom, Subgroup,
};
pub use rational::Rational;
