//! Exact finite-field computations connecting finite Galois categories
//! (finite G-sets) with finite Tannakian data (representations, comodules,
//! separable Frobenius monoids, constant Hopf algebras).

pub mod algebra;
pub mod csep;
pub mod error;
pub mod field;
pub mod group;
pub mod gset;
pub mod hopf;
pub mod matrix;
pub mod pierce;
pub mod poly;
pub mod rep;
pub mod suite;

pub use algebra::{Algebra, AlgebraElement, AlgebraMorphism, Subalgebra};
pub use error::{Error, Result};
pub use field::{Elem, Embedding, Field, FieldDescriptor};
pub use group::FiniteGroup;
pub use hopf::{HopfAlgebra, HopfMorphism};
pub use matrix::Matrix;
pub use poly::{Factorization, Poly};
