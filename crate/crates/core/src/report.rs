//! Structured results of a verification campaign.

use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize};

use crate::params::{GaugeChoice, PhysicalParams};
use crate::quadrature::Scheme;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub m: f64,
    pub q: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub hbar: f64,
    pub omega_c: f64,
    pub s: f64,
}

impl From<&PhysicalParams> for ParamsRecord {
    fn from(p: &PhysicalParams) -> Self {
        Self {
            m: p.mass(),
            q: p.charge(),
            b: p.field(),
            hbar: p.hbar(),
            omega_c: p.omega_c(),
            s: p.sign(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaugeRecord {
    pub alpha: f64,
    pub phi: String,
    pub x0: [f64; 2],
}

impl From<&GaugeChoice> for GaugeRecord {
    fn from(g: &GaugeChoice) -> Self {
        Self {
            alpha: g.alpha(),
            phi: g.phi().to_string(),
            x0: g.x0(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub nmax: Option<usize>,
    pub margin: Option<usize>,
    pub grid: Option<usize>,
    pub scheme: Option<Scheme>,
    pub seed: Option<u64>,
}

/// Infinite or NaN deviations serialise as `null` and read back as `+inf`.
fn deviation_or_inf<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    #[serde(deserialize_with = "deviation_or_inf")]
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes when `deviation` is finite and below `tolerance`.
    pub fn new(id: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            id: id.into(),
            deviation,
            tolerance,
            pass: deviation.is_finite() && deviation < tolerance,
            note: None,
        }
    }

    /// A check that could not be evaluated.
    pub fn failed(id: impl Into<String>, tolerance: f64, reason: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            deviation: f64::INFINITY,
            tolerance,
            pass: false,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub params: ParamsRecord,
    pub gauges: Vec<GaugeRecord>,
    pub settings: Settings,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl VerificationReport {
    pub fn new(campaign: &str, params: &PhysicalParams, gauges: &[GaugeChoice], settings: Settings) -> Self {
        Self {
            campaign: campaign.to_string(),
            params: params.into(),
            gauges: gauges.iter().map(GaugeRecord::from).collect(),
            settings,
            checks: Vec::new(),
            pass: false,
            timestamp: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.update();
    }

    pub fn extend<I: IntoIterator<Item = Check>>(&mut self, checks: I) {
        self.checks.extend(checks);
        self.update();
    }

    fn update(&mut self) {
        self.pass = !self.checks.is_empty() && self.checks.iter().all(|c| c.pass);
    }

    /// Stamps the report with the current Unix time in seconds.
    pub fn stamp(&mut self) {
        self.timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_pass_flag() {
        let p = PhysicalParams::natural();
        let mut r = VerificationReport::new("demo", &p, &[GaugeChoice::symmetric([0.0, 1.0])], Settings::default());
        assert!(!r.pass);
        r.push(Check::new("a", 1e-15, 1e-12));
        assert!(r.pass);
        r.push(Check::failed("b", 1e-12, "margin too small"));
        assert!(!r.pass);
        let text = r.to_json().unwrap();
        assert!(text.contains("\"deviation\": null"));
        let back = VerificationReport::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert!(!text.contains("timestamp"));
    }

    #[test]
    fn nan_deviation_fails() {
        assert!(!Check::new("x", f64::NAN, 1.0).pass);
    }
}
