//! Regular languages over an infinite alphabet of names.
//!
//! Bar strings extend plain data words with bound letters `|a`, read as
//! "a name bound here". Regular bar expressions and bar NFAs describe sets
//! of bar strings up to α-equivalence; two data-word semantics arise from
//! them: global freshness (bound names are never-seen names) and local
//! freshness (bound names only avoid names still needed later).
//!
//! The crate provides
//!
//! * [`nominal`]: names, swaps, injective renamings,
//! * [`barstring`]: bar strings, free names, canonical α-representatives,
//! * [`barnfa`]: regular bar expressions, bar NFAs, free-name supports,
//! * [`rnna`]: the symbolic name-dropping nominal automaton of a bar NFA and
//!   membership under literal, bar, global and local semantics,
//! * [`inclusion`]: inclusion and equivalence with counterexamples,
//! * [`models`]: FSUBAs and forgetful register automata, with translation to
//!   bar NFAs,
//! * [`oracle`]: brute-force reference semantics used for cross-checking.
//!
//! ```
//! use barlang::{barnfa::{compile, Rbe}, rnna::SymbolicRnna, barstring::DataWord};
//!
//! let nfa = compile(&Rbe::parse("|a*").unwrap());
//! let rnna = SymbolicRnna::new(nfa);
//! assert!(rnna.accepts_global(&DataWord::parse("a b c").unwrap()));
//! assert!(!rnna.accepts_global(&DataWord::parse("a b a").unwrap()));
//! ```

pub mod barnfa;
pub mod barstring;
pub mod error;
pub mod inclusion;
pub mod models;
pub mod nominal;
pub mod oracle;
pub mod rnna;

pub use barnfa::{compile, BarNfa, Rbe};
pub use barstring::{BarLetter, BarString, DataWord};
pub use error::{Error, Result};
pub use inclusion::{equivalence, inclusion, inclusion_bar, inclusion_local, InclusionOptions, InclusionSemantics, Witness};
pub use models::{ForgetfulRa, Fsuba};
pub use nominal::{Name, PartialRenaming, Transposition};
pub use rnna::{Semantics, SymbolicRnna};
