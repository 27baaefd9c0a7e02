//! Runs every Rust snippet of the guide in `book/src` as a doc-test.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub struct $name;
    };
}

chapter!(Introduction, "introduction.md");
chapter!(Fields, "fields.md");
chapter!(Matrices, "matrices.md");
chapter!(Algebras, "algebras.md");
chapter!(Subfields, "subfields.md");
chapter!(Identities, "identities.md");
chapter!(Commutators, "commutators.md");
chapter!(Words, "words.md");
chapter!(Rewriting, "rewriting.md");
chapter!(Cli, "cli.md");

#[doc = include_str!("../../../README.md")]
pub struct Readme;
