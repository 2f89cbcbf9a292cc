//! Diagnostics shared by every stage of the pipeline.

use std::fmt;

/// A line/column location in source text, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

impl Pos {
    pub fn new(line: u32, column: u32) -> Self {
        Pos { line, column }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

macro_rules! error_kinds {
    ($($(#[$doc:meta])* $name:ident),* $(,)?) => {
        /// Every diagnostic carries one of these codes. The code's name is
        /// what golden files spell after `ERROR`.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum ErrorKind {
            $($(#[$doc])* $name,)*
        }

        impl ErrorKind {
            pub fn code(self) -> &'static str {
                match self {
                    $(ErrorKind::$name => stringify!($name),)*
                }
            }

            pub fn from_code(code: &str) -> Option<ErrorKind> {
                match code {
                    $(stringify!($name) => Some(ErrorKind::$name),)*
                    _ => None,
                }
            }
        }
    };
}

error_kinds! {
    // reader
    UnterminatedString,
    BadCharLiteral,
    IllegalCodepoint,
    UnbalancedDelimiter,
    MismatchedDelimiter,
    DanglingRerank,
    // desugar
    RaggedLiteral,
    BadFrameArity,
    MalformedBox,
    MalformedForm,
    // frame/cell model
    RankTooLow,
    CellShapeMismatch,
    EmptyFrameUnknownCell,
    // evaluation
    UnboundVariable,
    NonScalarCondition,
    TypedFormInDynamicCode,
    FrameDisagreement,
    NotAFunction,
    ArityMismatch,
    HeterogeneousFunctionArray,
    // builtins
    DivisionByZero,
    NegativeSqrt,
    ArithmeticOverflow,
    TypeMismatchAtom,
    RankZeroAppend,
    TrailingShapeMismatch,
    RankZeroLength,
    NegativeDimension,
    RotationArity,
    EmptyDataSource,
    CountOutOfRange,
    IndexOutOfBounds,
    IndexTooLong,
    RankZeroSource,
    RegionOutOfBounds,
    SelectorLengthMismatch,
    RankZeroData,
    NegativeCount,
    EmptyReduce,
    // type checking
    UnboundName,
    KindError,
    SortError,
    NotPolymorphic,
    NotIndexed,
    BranchTypeMismatch,
    ArgumentTypeMismatch,
    CellSuffixMismatch,
    UnderdeterminedFactoring,
    FrameCellMismatch,
    WitnessArity,
    ClauseTypeMismatch,
    EscapingIndexVariable,
    NotABox,
    // drivers
    MissingExpectation,
    Io,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("error[{kind}]{}: {message}", at_suffix(.pos))]
pub struct Error {
    pub kind: ErrorKind,
    pub message: String,
    pub pos: Option<Pos>,
}

impl Error {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        Error { kind, message: message.into(), pos: None }
    }

    pub fn at(kind: ErrorKind, pos: Pos, message: impl Into<String>) -> Self {
        Error { kind, message: message.into(), pos: Some(pos) }
    }

    /// Attach a position unless a more precise one is already recorded.
    pub fn or_at(mut self, pos: Pos) -> Self {
        if self.pos.is_none() {
            self.pos = Some(pos);
        }
        self
    }
}

fn at_suffix(pos: &Option<Pos>) -> String {
    pos.map(|p| format!(" at {p}")).unwrap_or_default()
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Shorthand for `Err(Error::new(kind, format!(...)))`.
macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::new($crate::error::ErrorKind::$kind, format!($($arg)*)))
    };
}

pub(crate) use bail;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip() {
        for kind in [ErrorKind::RaggedLiteral, ErrorKind::EmptyReduce, ErrorKind::Io] {
            assert_eq!(ErrorKind::from_code(kind.code()), Some(kind));
        }
        assert_eq!(ErrorKind::from_code("NoSuchThing"), None);
    }

    #[test]
    fn display_includes_position() {
        let e = Error::at(ErrorKind::UnboundVariable, Pos::new(3, 7), "x");
        assert_eq!(e.to_string(), "error[UnboundVariable] at 3:7: x");
    }
}
