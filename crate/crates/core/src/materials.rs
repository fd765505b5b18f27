//! Frequency-sampled constitutive parameters.
//!
//! A material file is a JSON array:
//!
//! ```json
//! [
//!   {"name": "plaster", "mu_r": 1.0,
//!    "samples": [{"freq_hz": 1e11, "eps_r": 4.0, "sigma": 0.1},
//!                {"freq_hz": 3e11, "eps_r": 6.0, "sigma": 0.3}]}
//! ]
//! ```
//!
//! `eps_r` and `sigma` are interpolated linearly in frequency between
//! samples; queries outside the sampled range are rejected. Names are
//! case-insensitive. User records replace built-ins of the same name.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constants::AIR_EPS_R;
use crate::propagation::ConstitutiveParams;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSample {
    pub freq_hz: f64,
    pub eps_r: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialRecord {
    pub name: String,
    #[serde(default = "unit_mu_r")]
    pub mu_r: f64,
    pub samples: Vec<MaterialSample>,
}

fn unit_mu_r() -> f64 {
    1.0
}

impl MaterialRecord {
    /// A frequency-independent record.
    pub fn constant(name: &str, mu_r: f64, eps_r: f64, sigma: f64) -> Self {
        Self {
            name: name.to_owned(),
            mu_r,
            samples: vec![MaterialSample {
                freq_hz: 1.0,
                eps_r,
                sigma,
            }],
        }
    }

    pub fn is_constant(&self) -> bool {
        self.samples.len() == 1
    }

    /// Sampled frequency range, or `None` for a constant record.
    pub fn freq_range(&self) -> Option<(f64, f64)> {
        if self.is_constant() {
            None
        } else {
            Some((self.samples[0].freq_hz, self.samples[self.samples.len() - 1].freq_hz))
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| {
            Err(Error::InvalidMaterial {
                name: self.name.clone(),
                reason,
            })
        };
        if self.name.trim().is_empty() {
            return fail("name must not be empty".into());
        }
        if !(self.mu_r.is_finite() && self.mu_r > 0.0) {
            return fail(format!("mu_r must be finite and > 0, got {}", self.mu_r));
        }
        if self.samples.is_empty() {
            return fail("at least one sample is required".into());
        }
        for (i, s) in self.samples.iter().enumerate() {
            if !(s.freq_hz.is_finite() && s.freq_hz > 0.0) {
                return fail(format!("sample {i}: freq_hz must be finite and > 0, got {}", s.freq_hz));
            }
            if !(s.eps_r.is_finite() && s.eps_r > 0.0) {
                return fail(format!("sample {i}: eps_r must be finite and > 0, got {}", s.eps_r));
            }
            if !(s.sigma.is_finite() && s.sigma >= 0.0) {
                return fail(format!("sample {i}: sigma must be finite and >= 0, got {}", s.sigma));
            }
        }
        if let Some(i) = self
            .samples
            .windows(2)
            .position(|w| w[1].freq_hz <= w[0].freq_hz)
        {
            return fail(format!(
                "frequencies must be strictly increasing (sample {} at {} Hz follows {} Hz)",
                i + 1,
                self.samples[i + 1].freq_hz,
                self.samples[i].freq_hz
            ));
        }
        Ok(())
    }

    /// Constitutive parameters at `freq_hz`.
    pub fn params_at(&self, freq_hz: f64) -> Result<ConstitutiveParams> {
        let (eps_r, sigma) = self.interpolate(freq_hz)?;
        ConstitutiveParams::from_relative(self.mu_r, eps_r, sigma)
    }

    fn interpolate(&self, freq_hz: f64) -> Result<(f64, f64)> {
        let s = &self.samples;
        if s.len() == 1 {
            return Ok((s[0].eps_r, s[0].sigma));
        }
        let (lo, hi) = (s[0].freq_hz, s[s.len() - 1].freq_hz);
        if !(freq_hz >= lo && freq_hz <= hi) {
            return Err(Error::FrequencyOutOfRange {
                name: self.name.clone(),
                freq_hz,
                min_hz: lo,
                max_hz: hi,
            });
        }
        match s.binary_search_by(|p| p.freq_hz.total_cmp(&freq_hz)) {
            Ok(i) => Ok((s[i].eps_r, s[i].sigma)),
            Err(i) => {
                let (a, b) = (&s[i - 1], &s[i]);
                let t = (freq_hz - a.freq_hz) / (b.freq_hz - a.freq_hz);
                Ok((
                    a.eps_r + t * (b.eps_r - a.eps_r),
                    a.sigma + t * (b.sigma - a.sigma),
                ))
            }
        }
    }
}

/// Name-indexed, immutable collection of material records.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialDb {
    records: BTreeMap<String, MaterialRecord>,
}

impl Default for MaterialDb {
    fn default() -> Self {
        Self::builtin()
    }
}

impl MaterialDb {
    /// Vacuum, air (εr = 1.0006) and the near-perfect conductor `pec1e9`
    /// (σ = 10⁹ S/m).
    pub fn builtin() -> Self {
        let mut records = BTreeMap::new();
        for r in [
            MaterialRecord::constant("vacuum", 1.0, 1.0, 0.0),
            MaterialRecord::constant("air", 1.0, AIR_EPS_R, 0.0),
            MaterialRecord::constant("pec1e9", 1.0, 1.0, 1e9),
        ] {
            records.insert(r.name.to_lowercase(), r);
        }
        Self { records }
    }

    /// Built-ins plus the records of a JSON material document. Blank input
    /// yields the built-ins only.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let mut db = Self::builtin();
        if text.trim().is_empty() {
            return Ok(db);
        }
        let user: Vec<MaterialRecord> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut seen = BTreeMap::new();
        for r in user {
            r.validate()?;
            let key = r.name.to_lowercase();
            if seen.insert(key.clone(), ()).is_some() {
                return Err(Error::DuplicateMaterial(r.name));
            }
            db.records.insert(key, r);
        }
        Ok(db)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn get(&self, name: &str) -> Result<&MaterialRecord> {
        self.records
            .get(&name.to_lowercase())
            .ok_or_else(|| Error::UnknownMaterial(name.to_owned()))
    }

    pub fn params_at(&self, name: &str, freq_hz: f64) -> Result<ConstitutiveParams> {
        self.get(name)?.params_at(freq_hz)
    }

    /// Records in case-insensitive name order.
    pub fn iter(&self) -> impl Iterator<Item = &MaterialRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{EPS_0, MU_0};

    const TWO_SAMPLE: &str = r#"[{"name": "Slab", "samples": [
        {"freq_hz": 1e11, "eps_r": 4.0, "sigma": 0.1},
        {"freq_hz": 3e11, "eps_r": 6.0, "sigma": 0.3}]}]"#;

    fn names(db: &MaterialDb) -> Vec<&str> {
        db.iter().map(|r| r.name.as_str()).collect()
    }

    #[test]
    fn empty_source_gives_builtins() {
        for text in ["", "  \n", "[]"] {
            let db = MaterialDb::from_json_str(text).unwrap();
            assert_eq!(names(&db), ["air", "pec1e9", "vacuum"]);
        }
    }

    #[test]
    fn air_matches_reference_permittivity() {
        let db = MaterialDb::builtin();
        for f in [1e9, 293.089e9, 1e13] {
            let p = db.params_at("air", f).unwrap();
            assert_eq!(p.eps(), 1.0006 * EPS_0);
            assert_eq!(p.sigma(), 0.0);
        }
    }

    #[test]
    fn vacuum_everywhere() {
        let db = MaterialDb::builtin();
        for f in [1.0, 1e12, 1e18] {
            let p = db.params_at("VACUUM", f).unwrap();
            assert_eq!((p.mu(), p.eps(), p.sigma()), (MU_0, EPS_0, 0.0));
        }
    }

    #[test]
    fn decreasing_frequencies_are_rejected() {
        let text = r#"[{"name": "bad", "samples": [
            {"freq_hz": 3e11, "eps_r": 4.0, "sigma": 0.0},
            {"freq_hz": 1e11, "eps_r": 4.0, "sigma": 0.0}]}]"#;
        match MaterialDb::from_json_str(text) {
            Err(Error::InvalidMaterial { name, reason }) => {
                assert_eq!(name, "bad");
                assert!(reason.contains("strictly increasing"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn user_entry_overrides_builtin() {
        let text = r#"[{"name": "Air", "samples": [{"freq_hz": 1e9, "eps_r": 1.0, "sigma": 0.0}]}]"#;
        let db = MaterialDb::from_json_str(text).unwrap();
        assert_eq!(db.len(), 3);
        assert_eq!(db.params_at("air", 5e11).unwrap().eps(), EPS_0);
    }

    #[test]
    fn duplicate_user_names_are_rejected() {
        let text = r#"[{"name": "x", "samples": [{"freq_hz": 1e9, "eps_r": 1.0, "sigma": 0.0}]},
                       {"name": "X", "samples": [{"freq_hz": 1e9, "eps_r": 2.0, "sigma": 0.0}]}]"#;
        assert!(matches!(MaterialDb::from_json_str(text), Err(Error::DuplicateMaterial(_))));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = MaterialDb::from_json_str("[{\"name\": \"a\",\n \"sample\": []}]").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        let err = MaterialDb::from_json_str(r#"[{"name": "a"}]"#).unwrap_err();
        assert!(err.to_string().contains("samples"));
    }

    #[test]
    fn linear_interpolation_midpoint() {
        let db = MaterialDb::from_json_str(TWO_SAMPLE).unwrap();
        let p = db.params_at("slab", 2e11).unwrap();
        assert!((p.eps_r() - 5.0).abs() < 1e-14);
        assert!((p.sigma() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn sample_points_are_bit_exact() {
        let db = MaterialDb::from_json_str(TWO_SAMPLE).unwrap();
        let rec = db.get("slab").unwrap();
        for s in &rec.samples {
            let p = rec.params_at(s.freq_hz).unwrap();
            assert_eq!(p.eps(), s.eps_r * EPS_0);
            assert_eq!(p.sigma(), s.sigma);
        }
    }

    #[test]
    fn out_of_range_and_unknown() {
        let db = MaterialDb::from_json_str(TWO_SAMPLE).unwrap();
        let err = db.params_at("slab", 5e11).unwrap_err();
        assert!(matches!(err, Error::FrequencyOutOfRange { min_hz, max_hz, .. } if min_hz == 1e11 && max_hz == 3e11));
        assert!(db.params_at("slab", 0.99e11).is_err());
        let err = db.params_at("concrete", 1e11).unwrap_err();
        assert!(err.to_string().contains("unknown material"));
    }

    #[test]
    fn interpolation_is_continuous_at_samples() {
        let text = r#"[{"name": "m", "samples": [
            {"freq_hz": 1e11, "eps_r": 4.0, "sigma": 0.1},
            {"freq_hz": 2e11, "eps_r": 7.5, "sigma": 0.05},
            {"freq_hz": 4e11, "eps_r": 3.0, "sigma": 2.0}]}]"#;
        let db = MaterialDb::from_json_str(text).unwrap();
        let rec = db.get("m").unwrap();
        for s in &rec.samples[1..2] {
            let f = s.freq_hz;
            let left = rec.params_at(f * (1.0 - 1e-15)).unwrap();
            let right = rec.params_at(f * (1.0 + 1e-15)).unwrap();
            let at = rec.params_at(f).unwrap();
            assert!((left.eps() - at.eps()).abs() <= 1e-13 * at.eps());
            assert!((right.eps() - at.eps()).abs() <= 1e-13 * at.eps());
            assert!((left.sigma() - at.sigma()).abs() <= 1e-13);
            assert!((right.sigma() - at.sigma()).abs() <= 1e-13);
        }
    }

    #[test]
    fn invalid_values_name_the_record() {
        for body in [
            r#"{"name": "z", "samples": []}"#,
            r#"{"name": "z", "mu_r": 0, "samples": [{"freq_hz": 1, "eps_r": 1, "sigma": 0}]}"#,
            r#"{"name": "z", "samples": [{"freq_hz": 1, "eps_r": -1, "sigma": 0}]}"#,
            r#"{"name": "z", "samples": [{"freq_hz": 1, "eps_r": 1, "sigma": -2}]}"#,
        ] {
            let err = MaterialDb::from_json_str(&format!("[{body}]")).unwrap_err();
            assert!(matches!(err, Error::InvalidMaterial { ref name, .. } if name == "z"), "{err:?}");
        }
    }
}
