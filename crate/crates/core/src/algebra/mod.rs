//! Symbolic side: letters, expressions, relations and normal ordering.

pub mod catalog;
pub mod expr;
pub mod parse;
pub mod rewrite;
pub mod roots;
pub mod symbol;

pub use catalog::{relation_catalog, serre_relations, unit_alphabet, RewriteRule};
pub use expr::Expression;
pub use parse::parse;
pub use rewrite::{bold_to_shifted, normal_order, Rewriter, Strategy};
pub use roots::{derived_root, Root, RootSystem, Simple};
pub use symbol::{Letter, Word};
