use std::fmt;
use std::path::PathBuf;

use feqlab_core::wire::LoadError;
use feqlab_core::{Error, ErrorClass};

pub const CHECK_FAILED: u8 = 1;
pub const STRUCTURAL: u8 = 2;
pub const PARSE: u8 = 3;
pub const IO: u8 = 3;
pub const HYPOTHESIS: u8 = 4;
pub const USAGE: u8 = 64;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io { path: PathBuf, source: std::io::Error },
    Load { path: PathBuf, source: LoadError },
    Lib(Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => USAGE,
            Failure::Io { .. } => IO,
            Failure::Load { source: LoadError::Parse(_), .. } => PARSE,
            Failure::Load { source: LoadError::Invalid(e), .. } | Failure::Lib(e) => class_code(e),
        }
    }
}

pub fn class_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Structural => STRUCTURAL,
        ErrorClass::Hypothesis => HYPOTHESIS,
        ErrorClass::Usage => USAGE,
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Failure::Load { path, source } => write!(f, "{}: {source}", path.display()),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}
