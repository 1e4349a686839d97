//! Unit conventions, fundamental constants and the particle catalog.
//!
//! All masses are stored as rest energies in MeV, so `m` and `m c^2` are
//! numerically identical and the level formulas contain only mass ratios and
//! the dimensionless coupling. Lengths, where they appear at all, are in fm
//! via `hbar_c`.
//!
//! Constants and particle masses are configuration shipped as data files
//! ([`PhysicalConstants::builtin`], [`Catalog::builtin`]), not hard-coded
//! truths; callers may load their own files in the same format.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};

/// Embedded copy of `data/constants.conf`.
const BUILTIN_CONSTANTS: &str = include_str!("../data/constants.conf");

/// Embedded copy of `data/particles.catalog`.
const BUILTIN_CATALOG: &str = include_str!("../data/particles.catalog");

/// Fundamental constants in the MeV/fm convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Fine-structure constant, dimensionless.
    pub alpha: f64,
    /// hbar * c in MeV*fm.
    pub hbar_c: f64,
}

impl PhysicalConstants {
    pub fn new(alpha: f64, hbar_c: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 0.01) {
            return Err(Error::InvalidConstants {
                message: format!("alpha = {alpha} outside sanity range (0, 0.01)"),
            });
        }
        if !(hbar_c > 0.0) {
            return Err(Error::InvalidConstants {
                message: format!("hbar_c = {hbar_c} must be positive"),
            });
        }
        Ok(Self { alpha, hbar_c })
    }

    /// Parse a `key=value` constants file.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut alpha = None;
        let mut hbar_c = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::InvalidConstants {
                message: format!("line {}: expected key=value, got {line:?}", idx + 1),
            })?;
            let value: f64 = value.trim().parse().map_err(|_| Error::InvalidConstants {
                message: format!("line {}: cannot parse {:?} as a number", idx + 1, value.trim()),
            })?;
            match key.trim() {
                "alpha" => alpha = Some(value),
                "hbar_c" => hbar_c = Some(value),
                other => {
                    return Err(Error::InvalidConstants {
                        message: format!("line {}: unknown key {other:?}", idx + 1),
                    })
                }
            }
        }
        let alpha = alpha.ok_or_else(|| Error::InvalidConstants {
            message: "missing key 'alpha'".into(),
        })?;
        let hbar_c = hbar_c.ok_or_else(|| Error::InvalidConstants {
            message: "missing key 'hbar_c'".into(),
        })?;
        Self::new(alpha, hbar_c)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_str(&text)
    }

    /// Constants from the shipped `constants.conf`.
    pub fn builtin() -> Self {
        Self::parse_str(BUILTIN_CONSTANTS).expect("shipped constants file must parse")
    }
}

/// Particle spin in units of hbar, stored as twice its value so that
/// half-integer spins round-trip exactly through the text format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    pub fn from_twice(twice: u32) -> Self {
        Self { twice }
    }

    pub fn twice(&self) -> u32 {
        self.twice
    }

    fn parse(text: &str) -> Option<Self> {
        if let Some((num, den)) = text.split_once('/') {
            let num: u32 = num.trim().parse().ok()?;
            let den: u32 = den.trim().parse().ok()?;
            if den == 2 {
                return Some(Self { twice: num });
            }
            if den == 1 {
                return Some(Self { twice: num * 2 });
            }
            return None;
        }
        let whole: u32 = text.trim().parse().ok()?;
        Some(Self { twice: whole * 2 })
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// One catalog entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleSpec {
    pub name: String,
    /// Rest energy in MeV.
    pub rest_energy: f64,
    /// Charge as an integer multiple of e.
    pub charge: i32,
    /// Spin, informational only.
    pub spin: Spin,
}

/// An ordered collection of particle species with unique names.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Catalog {
    entries: Vec<ParticleSpec>,
}

impl Catalog {
    /// Parse the line-oriented catalog format: `name rest_energy charge spin`.
    pub fn parse_str(text: &str) -> Result<Self> {
        Self::parse_named(text, Path::new("<string>"))
    }

    fn parse_named(text: &str, path: &Path) -> Result<Self> {
        let mut entries: Vec<ParticleSpec> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::CatalogParse {
                path: path.to_path_buf(),
                line: idx + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(parse_err(format!(
                    "expected 4 fields (name rest_energy charge spin), got {}",
                    fields.len()
                )));
            }
            let name = fields[0].to_string();
            let rest_energy: f64 = fields[1]
                .parse()
                .map_err(|_| parse_err(format!("cannot parse rest energy {:?}", fields[1])))?;
            let charge: i32 = fields[2]
                .parse()
                .map_err(|_| parse_err(format!("cannot parse charge {:?}", fields[2])))?;
            let spin = Spin::parse(fields[3])
                .ok_or_else(|| parse_err(format!("cannot parse spin {:?}", fields[3])))?;
            if !(rest_energy > 0.0) {
                return Err(Error::NonPositiveRestEnergy { name, rest_energy });
            }
            if entries.iter().any(|e| e.name == name) {
                return Err(Error::DuplicateParticle { name });
            }
            entries.push(ParticleSpec {
                name,
                rest_energy,
                charge,
                spin,
            });
        }
        Ok(Self { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_named(&text, path)
    }

    /// Catalog from the shipped `particles.catalog`.
    pub fn builtin() -> Self {
        Self::parse_str(BUILTIN_CATALOG).expect("shipped catalog must parse")
    }

    /// Exact-name lookup.
    pub fn lookup(&self, name: &str) -> Result<&ParticleSpec> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::ParticleNotFound { name: name.into() })
    }

    pub fn iter(&self) -> impl Iterator<Item = &ParticleSpec> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Serialize back to the catalog text format. `Display` of `f64` is the
    /// shortest representation that round-trips, so write-then-load
    /// reproduces every field bit-exactly.
    pub fn to_catalog_string(&self) -> String {
        let mut out = String::from("# name rest_energy_MeV charge spin\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{} {} {} {}\n",
                e.name, e.rest_energy, e.charge, e.spin
            ));
        }
        out
    }
}
