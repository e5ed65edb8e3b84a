//! Kernel, elaborator and finite preorder model for a dual-context directed
//! type theory with neutral and polar variables.

pub mod checker;
pub mod derived;
pub mod equality;
pub mod frontend;
pub mod signature;
pub mod syntax;
pub mod model;
