//! Text formats: games in, reports out.

pub mod format;
pub mod report;

pub use format::{parse_game, serialize_game, ParseError, ParseErrorKind};
