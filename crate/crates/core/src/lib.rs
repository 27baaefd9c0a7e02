pub mod algebra;
pub mod error;
pub mod ext;
pub mod field;
pub mod identities;
pub mod linalg;
pub mod maxsubfield;
pub mod poly;
pub mod rational;
pub mod rewrite;
pub mod subfield;
pub mod words;
