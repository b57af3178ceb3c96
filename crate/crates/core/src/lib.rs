//! Exact computations for quadri-algebras: the quadri, dendriform and
//! diassociative operads, the Hopf algebras of permutations and packed
//! words, rewriting systems on tree monomials and combinatorial models.

pub mod checks;
pub mod exactlin;
pub mod fqsym;
pub mod models;
pub mod operad;
pub mod quadri;
pub mod rewrite;
pub mod series;
pub mod words;
pub mod wqsym;
