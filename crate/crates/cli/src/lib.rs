//! Text format and command-line front end for `nilcx`.

pub mod nla;
pub mod run;

pub use nla::{parse_nla, print_nla, NlaDocument, ParseError, ParseErrorKind};
