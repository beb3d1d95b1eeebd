//! The free magma algebra over the rationals: words, polynomials and their text form.

mod enumerate;
mod poly;
mod text;
mod word;

pub use enumerate::{catalan, enumerate_contexts, enumerate_words, word_count};
pub(crate) use enumerate::sub_vectors;
pub use poly::{associator, commutator, derived_product, jordan, MultiPoly, ProductKind};
pub use text::{format_rational, parse_context, parse_poly, parse_rational, parse_word};
pub use word::{Context, MagmaWord, Multidegree, VarId};

/// The multidegree of a word.
pub fn multidegree_of(w: &MagmaWord) -> Multidegree {
    w.multidegree()
}
