//! File formats, augmentation, result tables and the batch driver around
//! `qapbound-core`.

pub mod augment;
pub mod batch;
pub mod dd;
pub mod error;
pub mod input;
pub mod lapfile;
pub mod qaplib;
pub mod report;

pub use error::{InputError, ParseError};
