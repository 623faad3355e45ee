//! A∞-algebras, morphisms, modules, bimodules and bimorphisms.

mod algebra;
mod bimodule;
mod bimorphism;
mod check;
mod hom;
mod module;
mod morphism;
mod op;
pub mod sign;

pub use algebra::{AInftyAlgebra, OppositeConvention};
pub use bimodule::AInftyBimodule;
pub use bimorphism::{
    bimodule_from_bimorphism, bimorphism_from_bimodule, bimorphism_sign, Bimorphism, EndomorphismAlgebra,
};
pub use check::{CheckItem, CheckReport, Witness};
pub use hom::{
    bimodule_from_module_and_morphism, bounded_words, complete_length, module_and_morphism_from_bimodule, Cochain,
    HomComplex,
};
pub use module::AInftyModule;
pub use morphism::AInftyMorphism;
pub use op::MultiOp;
pub use sign::sign_l;
