//! Medium and particle definitions loaded from TOML data files.
//!
//! # File format
//!
//! A data file is a TOML document holding any number of `[[medium]]` and
//! `[[particle]]` tables. Every field is required and units are fixed by
//! the field name (SI only):
//!
//! ```toml
//! [[medium]]
//! id = "water"              # [a-z0-9_]+, unique across all loaded files
//! display_name = "Water"
//! eps_inf = 3.48
//! eps_1 = 78.36
//! eps_2 = 4.93
//! tau_1_s = 8.24e-12
//! tau_2_s = 1.8e-13
//! f_min_hz = 1e11
//! f_max_hz = 1e12
//! provenance = "source of the numbers"
//!
//! [[particle]]
//! id = "rbc"
//! radius_m = 4e-6
//! volume_fraction = 0.45
//! sigma_abs_m2 = 0.0
//! size_class = "small"      # small | large
//! ```
//!
//! Records are validated when loaded. [`MediumDatabase::to_canonical_string`]
//! writes the canonical form: media then particles, each sorted by id, fields
//! in the order above, numbers in shortest round-trip decimal.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dielectrics::{DebyeParameters, FrequencyBand, Medium};
use crate::error::{Error, Result};
use crate::pathloss::{ParticlePopulation, SizeClass};

const BUNDLED_MEDIA: &str = include_str!("../data/media.toml");
const BUNDLED_PARTICLES: &str = include_str!("../data/particles.toml");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MediumRecord {
    pub id: String,
    pub display_name: String,
    pub medium: Medium<f64>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParticleRecord {
    pub id: String,
    pub population: ParticlePopulation<f64>,
}

/// Immutable collection of validated records.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MediumDatabase {
    media: BTreeMap<String, MediumRecord>,
    particles: BTreeMap<String, ParticleRecord>,
    origins: BTreeMap<String, String>,
    source_paths: Vec<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    medium: Vec<RawMedium>,
    #[serde(default)]
    particle: Vec<RawParticle>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMedium {
    id: String,
    display_name: String,
    eps_inf: f64,
    eps_1: f64,
    eps_2: f64,
    tau_1_s: f64,
    tau_2_s: f64,
    f_min_hz: f64,
    f_max_hz: f64,
    provenance: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParticle {
    id: String,
    radius_m: f64,
    volume_fraction: f64,
    sigma_abs_m2: f64,
    size_class: SizeClass,
}

impl Error {
    /// Re-labels a constructor precondition failure as a record violation.
    fn into_record_error(self, fail: &dyn Fn(&str) -> Error) -> Error {
        match self {
            Error::InvalidInput { reason, .. } => fail(&reason),
            other => other,
        }
    }
}

fn check_id(id: &str) -> std::result::Result<(), &'static str> {
    if !id.is_empty() && id.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_') {
        Ok(())
    } else {
        Err("id matches [a-z0-9_]+")
    }
}

impl RawMedium {
    fn validate(self, origin: &str) -> Result<MediumRecord> {
        let fail = |rule: &str| Error::InvalidRecord {
            origin: origin.to_string(),
            id: self.id.clone(),
            rule: rule.to_string(),
        };
        check_id(&self.id).map_err(fail)?;
        if self.display_name.trim().is_empty() {
            return Err(fail("display_name nonempty"));
        }
        if self.provenance.trim().is_empty() {
            return Err(fail("provenance nonempty"));
        }
        let debye = DebyeParameters::new(self.eps_inf, self.eps_1, self.eps_2, self.tau_1_s, self.tau_2_s)
            .map_err(|e| e.into_record_error(&fail))?;
        let band = FrequencyBand::new(self.f_min_hz, self.f_max_hz).map_err(|e| e.into_record_error(&fail))?;
        Ok(MediumRecord {
            id: self.id,
            display_name: self.display_name,
            medium: Medium { debye, band },
            provenance: self.provenance,
        })
    }
}

impl RawParticle {
    fn validate(self, origin: &str) -> Result<ParticleRecord> {
        let fail = |rule: &str| Error::InvalidRecord {
            origin: origin.to_string(),
            id: self.id.clone(),
            rule: rule.to_string(),
        };
        check_id(&self.id).map_err(fail)?;
        let population = ParticlePopulation::new(self.radius_m, self.volume_fraction, self.sigma_abs_m2, self.size_class)
            .map_err(|e| e.into_record_error(&fail))?;
        Ok(ParticleRecord { id: self.id, population })
    }
}

impl MediumDatabase {
    /// The media and particle populations shipped with the crate.
    pub fn bundled() -> Self {
        let mut db = MediumDatabase::default();
        db.merge_str(BUNDLED_MEDIA, "<bundled>/media.toml")
            .expect("bundled media file is valid");
        db.merge_str(BUNDLED_PARTICLES, "<bundled>/particles.toml")
            .expect("bundled particle file is valid");
        db
    }

    /// Parses one document into a database. `origin` labels errors.
    pub fn from_toml_str(text: &str, origin: &str) -> Result<Self> {
        let mut db = MediumDatabase::default();
        db.merge_str(text, origin)?;
        Ok(db)
    }

    fn merge_str(&mut self, text: &str, origin: &str) -> Result<()> {
        let raw: RawFile = toml::from_str(text).map_err(|e| Error::Parse {
            origin: origin.to_string(),
            message: e.to_string().trim_end().to_string(),
        })?;
        for m in raw.medium {
            let rec = m.validate(origin)?;
            self.claim(&rec.id, origin)?;
            self.media.insert(rec.id.clone(), rec);
        }
        for p in raw.particle {
            let rec = p.validate(origin)?;
            self.claim(&rec.id, origin)?;
            self.particles.insert(rec.id.clone(), rec);
        }
        Ok(())
    }

    /// Ids share one namespace across media and particles.
    fn claim(&mut self, id: &str, origin: &str) -> Result<()> {
        if let Some(first) = self.origins.get(id) {
            return Err(Error::DuplicateId {
                id: id.to_string(),
                first: first.clone(),
                second: origin.to_string(),
            });
        }
        self.origins.insert(id.to_string(), origin.to_string());
        Ok(())
    }

    pub fn media(&self) -> impl Iterator<Item = &MediumRecord> {
        self.media.values()
    }

    pub fn particles(&self) -> impl Iterator<Item = &ParticleRecord> {
        self.particles.values()
    }

    pub fn medium_ids(&self) -> Vec<String> {
        self.media.keys().cloned().collect()
    }

    pub fn particle_ids(&self) -> Vec<String> {
        self.particles.keys().cloned().collect()
    }

    pub fn source_paths(&self) -> &[PathBuf] {
        &self.source_paths
    }

    pub fn is_empty(&self) -> bool {
        self.media.is_empty() && self.particles.is_empty()
    }

    /// Looks up a medium. Ids are case-sensitive.
    pub fn get_medium(&self, id: &str) -> Result<&MediumRecord> {
        self.media.get(id).ok_or_else(|| Error::UnknownMedium {
            id: id.to_string(),
            available: self.medium_ids(),
        })
    }

    pub fn get_particle(&self, id: &str) -> Result<&ParticleRecord> {
        self.particles.get(id).ok_or_else(|| Error::UnknownParticle {
            id: id.to_string(),
            available: self.particle_ids(),
        })
    }

    /// Canonical text form; loading it back yields an equal set of records.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        for rec in self.media.values() {
            let d = &rec.medium.debye;
            let b = &rec.medium.band;
            out.push_str("[[medium]]\n");
            let _ = writeln!(out, "id = {}", toml_string(&rec.id));
            let _ = writeln!(out, "display_name = {}", toml_string(&rec.display_name));
            let _ = writeln!(out, "eps_inf = {}", canonical_number(d.eps_inf()));
            let _ = writeln!(out, "eps_1 = {}", canonical_number(d.eps_1()));
            let _ = writeln!(out, "eps_2 = {}", canonical_number(d.eps_2()));
            let _ = writeln!(out, "tau_1_s = {}", canonical_number(d.tau_1()));
            let _ = writeln!(out, "tau_2_s = {}", canonical_number(d.tau_2()));
            let _ = writeln!(out, "f_min_hz = {}", canonical_number(b.min_hz));
            let _ = writeln!(out, "f_max_hz = {}", canonical_number(b.max_hz));
            let _ = writeln!(out, "provenance = {}", toml_string(&rec.provenance));
            out.push('\n');
        }
        for rec in self.particles.values() {
            let p = &rec.population;
            out.push_str("[[particle]]\n");
            let _ = writeln!(out, "id = {}", toml_string(&rec.id));
            let _ = writeln!(out, "radius_m = {}", canonical_number(p.radius()));
            let _ = writeln!(out, "volume_fraction = {}", canonical_number(p.volume_fraction()));
            let _ = writeln!(out, "sigma_abs_m2 = {}", canonical_number(p.sigma_abs()));
            let class = match p.size_class() {
                SizeClass::Small => "small",
                SizeClass::Large => "large",
            };
            let _ = writeln!(out, "size_class = {}", toml_string(class));
            out.push('\n');
        }
        out
    }
}

/// Loads and merges data files. An empty list yields an empty database.
pub fn load_database<P: AsRef<Path>>(paths: &[P]) -> Result<MediumDatabase> {
    let mut db = MediumDatabase::default();
    for path in paths {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        db.merge_str(&text, &path.display().to_string())?;
        db.source_paths.push(path.to_path_buf());
    }
    Ok(db)
}

/// Shortest round-trip decimal that TOML reads back as a float.
pub fn canonical_number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        return "0.0".to_string();
    }
    if (1e-3..1e6).contains(&a) {
        let s = format!("{x}");
        if s.contains('.') {
            s
        } else {
            format!("{s}.0")
        }
    } else {
        format!("{x:e}")
    }
}

fn toml_string(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}
