//! Words, elements, coordinate vectors and the built-in presentations.

mod combo;
mod element;
mod spec;
mod word;

pub use combo::BasisCombo;
pub use element::Element;
pub use spec::{
    load_group_spec, parse_word, CenterStrategy, Elimination, Generator, GroupName, GroupSpec,
};
pub use word::{GenId, Letter, Syllable, Word, Z};
