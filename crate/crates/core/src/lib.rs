//! Palindromic analysis of substitutive words.
//!
//! The crate covers four layers:
//!
//! - [`words`]: alphabets, finite words, occurrence counting;
//! - [`palindromes`]: the palindromic tree, defect and richness checks;
//! - [`morphisms`]: morphism algebra, conjugacy with witnesses, and
//!   classification into the palindromic classes P, extended P, P_ret, P';
//! - [`derived`] and [`decompose`]: return words, iterated derived words
//!   over lazily generated morphic words, and the decomposition `y = g(x)`
//!   of a rich (or finite-defect) primitive morphic word into the fixed
//!   point of a P' substitution and a P' factoring morphism, with
//!   certificates that re-verify from scratch.
//!
//! Infinite words appear only as prefixes of [`derived::MorphicWordSpec`]
//! values, and every claim about one is bounded: richness is certified "up
//! to length n", repetitions of derived words are certified at a comparison
//! length, and bounded classification searches answer "no up to bound"
//! rather than "no".
//!
//! ```
//! use palword::{decompose_rich, verify_certificate, MorphicWordSpec, Morphism};
//!
//! let f = Morphism::parse("a->ac;b->acab;c->ab")?;
//! let y = MorphicWordSpec::pure(f, 0)?;
//! assert_eq!(y.generate_prefix(12).to_string(), "acabacacabac");
//!
//! let cert = decompose_rich(&y, 12, 2048)?;
//! assert_eq!(cert.chain[0].to_string(), "0->ac;1->ab");
//! assert!(verify_certificate(&cert, 4096).all_passed);
//! # Ok::<(), palword::Error>(())
//! ```

pub mod cli;
pub mod corpus;
pub mod decompose;
pub mod derived;
pub mod error;
pub mod morphisms;
pub mod palindromes;
pub mod words;

pub use decompose::{
    decompose_finite_defect, decompose_rich, find_repetition, verify_certificate,
    DecompositionCertificate, VerifyReport,
};
pub use derived::{derived_word, first_returns, iterate_derived, MorphicWordSpec, ReturnStructure};
pub use error::{Error, Result};
pub use morphisms::{are_conjugate, ClassificationResult, ConjugacyWitness, Morphism, Side};
pub use palindromes::{
    defect, defect_of_prefix, eertree_count, palindromic_factors_naive, palindromic_prefixes,
    richness_check_returns, richness_check_word, Eertree, RichnessReport, RichnessVerdict,
};
pub use words::{Alphabet, Letter, Word};
