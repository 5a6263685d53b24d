//! Reading instances from disk.

use std::path::Path;

use qapbound_core::IqapInstance;
use serde::Deserialize;

use crate::augment::augment_instance;
use crate::dd::parse_dd;
use crate::error::{read, InputError};
use crate::qaplib::{parse_qaplib, Shift};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// `.dat` means QAPLIB, anything else `.dd`.
    #[default]
    Auto,
    Dd,
    Qaplib,
}

impl Format {
    pub fn resolve(self, path: &Path) -> Format {
        match self {
            Format::Auto if path.extension().is_some_and(|e| e == "dat") => Format::Qaplib,
            Format::Auto => Format::Dd,
            f => f,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoadOptions {
    pub format: Format,
    pub dummy_cost: f64,
    pub augment: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { format: Format::Auto, dummy_cost: 0.0, augment: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Loaded {
    pub instance: IqapInstance,
    /// Constant separating IQAP bounds from QAP bounds (QAPLIB only).
    pub offset: Option<f64>,
}

pub fn load_instance(path: &Path, opts: LoadOptions) -> Result<Loaded, InputError> {
    let text = read(path)?;
    let mut loaded = match opts.format.resolve(path) {
        Format::Qaplib => {
            let q = parse_qaplib(&text).map_err(|e| InputError::parse(path, e))?;
            let c = q.to_iqap(Shift::Auto);
            Loaded { instance: c.instance, offset: Some(c.offset) }
        }
        _ => Loaded {
            instance: parse_dd(&text, opts.dummy_cost).map_err(|e| InputError::parse(path, e))?,
            offset: None,
        },
    };
    if opts.augment {
        loaded.instance = augment_instance(&loaded.instance);
    }
    Ok(loaded)
}
