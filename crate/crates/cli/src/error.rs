use monomorph::bichain::BichainError;
use monomorph::canon::CanonError;
use monomorph::decomp::DecompError;
use monomorph::permgrp::PermError;
use monomorph::relcore::RelError;
use monomorph::symchain::SymError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource bound: {0}")]
    Bound(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Bound(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<RelError> for CliError {
    fn from(e: RelError) -> Self {
        match e {
            RelError::BoundExceeded { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::OrderBound { .. } | PermError::DegreeTooLarge(_) => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CanonError> for CliError {
    fn from(e: CanonError) -> Self {
        match e {
            CanonError::Rel(inner) => inner.into(),
            CanonError::Perm(inner) => inner.into(),
            CanonError::NotIndependent { .. } => CliError::Invariant(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<DecompError> for CliError {
    fn from(e: DecompError) -> Self {
        match e {
            DecompError::Rel(inner) => inner.into(),
            DecompError::NotTransitive { .. } => CliError::Invariant(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<BichainError> for CliError {
    fn from(e: BichainError) -> Self {
        match e {
            BichainError::Perm(inner) => inner.into(),
            BichainError::TooLarge(_) => CliError::Bound(e.to_string()),
            BichainError::Invariant(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SymError> for CliError {
    fn from(e: SymError) -> Self {
        CliError::Input(e.to_string())
    }
}
