//! JSON input formats for reduction data.
//!
//! Two shapes are accepted.  A full profile spells out the jump spectrum
//! and any divisor data the trace formula cannot derive:
//!
//! ```json
//! {
//!   "g": 2,
//!   "p": 1,
//!   "jumps": [{"j": "1/2", "m": 1}, {"j": "0"}],
//!   "profile": {
//!     "1": {"t": 1, "a": 0, "phi": 3},
//!     "2": {"t": 1, "a": 1, "phi": 6, "class": "E"}
//!   }
//! }
//! ```
//!
//! A Kodaira shorthand names an elliptic reduction type instead:
//!
//! ```json
//! {"kodaira": "II", "p": 5}
//! ```

use std::collections::BTreeMap;

use motzeta::elliptic::KodairaType;
use motzeta::gring::AbelianClassSymbol;
use motzeta::jumps::{DivisorData, JumpSpectrum, ReductionProfile};
use motzeta::Frac;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumInput {
    pub g: u32,
    #[serde(default = "default_p")]
    pub p: u64,
    pub jumps: Vec<JumpEntry>,
    #[serde(default)]
    pub profile: BTreeMap<String, DivisorEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JumpEntry {
    /// Jump as a fraction in `[0, 1)`, e.g. `"1/6"` or `"0"`.
    pub j: String,
    #[serde(default = "default_multiplicity")]
    pub m: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorEntry {
    /// Toric rank after base change by this divisor.
    pub t: u32,
    /// Abelian rank after base change by this divisor.
    pub a: u32,
    /// Number of components of the Néron special fibre.
    pub phi: u64,
    /// Name of the abelian quotient class; defaults to a point when
    /// `a = 0` and to `B<divisor>` otherwise.
    #[serde(default)]
    pub class: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KodairaInput {
    pub kodaira: String,
    #[serde(default = "default_p")]
    pub p: u64,
}

fn default_p() -> u64 {
    1
}

fn default_multiplicity() -> u32 {
    1
}

#[derive(Debug)]
pub enum Input {
    Kodaira { ty: KodairaType, p: u64 },
    Spectrum(SpectrumInput),
}

/// Parses either input shape, keyed on the presence of `"kodaira"`.
pub fn parse(text: &str) -> Result<Input, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    if value.get("kodaira").is_some() {
        let k: KodairaInput =
            serde_json::from_value(value).map_err(|e| format!("invalid input: {e}"))?;
        let ty: KodairaType = k.kodaira.parse().map_err(|e| format!("{e}"))?;
        Ok(Input::Kodaira { ty, p: k.p })
    } else {
        let s: SpectrumInput =
            serde_json::from_value(value).map_err(|e| format!("invalid input: {e}"))?;
        Ok(Input::Spectrum(s))
    }
}

pub fn parse_frac(text: &str) -> Result<Frac, String> {
    let bad = || format!("invalid fraction {text:?} (expected \"a/b\" or an integer)");
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(format!("invalid fraction {text:?}: zero denominator"));
    }
    Ok(Frac::new(num, den))
}

/// Converts a parsed spectrum input into a validated reduction profile,
/// returning trace-formula warnings in lenient mode.
pub fn build_profile(
    input: &SpectrumInput,
    lenient: bool,
) -> Result<(ReductionProfile, Vec<String>), String> {
    let jumps = input
        .jumps
        .iter()
        .map(|entry| parse_frac(&entry.j).map(|j| (j, entry.m)))
        .collect::<Result<Vec<_>, _>>()?;
    let spectrum = JumpSpectrum::new(input.g, input.p, jumps).map_err(|e| e.to_string())?;
    let mut supplied = BTreeMap::new();
    for (key, entry) in &input.profile {
        let alpha: u64 = key
            .parse()
            .map_err(|_| format!("profile key {key:?} is not a base-change degree"))?;
        let class = match (&entry.class, entry.a) {
            (Some(id), a) => AbelianClassSymbol::new(id.clone(), a),
            (None, 0) => AbelianClassSymbol::point(),
            (None, a) => AbelianClassSymbol::new(format!("B{alpha}"), a),
        };
        supplied.insert(
            alpha,
            DivisorData {
                toric_rank: entry.t,
                abelian_rank: entry.a,
                components: entry.phi,
                abelian_class: class,
            },
        );
    }
    if lenient {
        ReductionProfile::new_lenient(spectrum, supplied).map_err(|e| e.to_string())
    } else {
        ReductionProfile::new(spectrum, supplied)
            .map(|p| (p, Vec::new()))
            .map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use motzeta::frac;

    #[test]
    fn fractions_parse() {
        assert_eq!(parse_frac("1/6").unwrap(), frac(1, 6));
        assert_eq!(parse_frac(" 3 / 4 ").unwrap(), frac(3, 4));
        assert_eq!(parse_frac("0").unwrap(), frac(0, 1));
        assert_eq!(parse_frac("2/4").unwrap(), frac(1, 2));
        assert!(parse_frac("1/0").is_err());
        assert!(parse_frac("x").is_err());
        assert!(parse_frac("1/6/2").is_err());
    }

    #[test]
    fn kodaira_shorthand_parses() {
        match parse(r#"{"kodaira": "IV*", "p": 5}"#).unwrap() {
            Input::Kodaira { ty, p } => {
                assert_eq!(ty, KodairaType::IVStar);
                assert_eq!(p, 5);
            }
            other => panic!("wrong variant: {other:?}"),
        }
        // p defaults to 1
        match parse(r#"{"kodaira": "I3"}"#).unwrap() {
            Input::Kodaira { ty, p } => {
                assert_eq!(ty, KodairaType::I(3));
                assert_eq!(p, 1);
            }
            other => panic!("wrong variant: {other:?}"),
        }
    }

    #[test]
    fn spectrum_input_builds_profile() {
        let text = r#"{
            "g": 1,
            "p": 5,
            "jumps": [{"j": "1/6"}],
            "profile": {"6": {"t": 0, "a": 1, "phi": 1, "class": "E"}}
        }"#;
        let input = match parse(text).unwrap() {
            Input::Spectrum(s) => s,
            other => panic!("wrong variant: {other:?}"),
        };
        let (profile, warnings) = build_profile(&input, false).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(profile.spectrum().semiabelian_degree(), 6);
        assert_eq!(profile.spectrum().conductor(), frac(1, 6));
        // derived additive data
        assert_eq!(profile.divisor_data(2).unwrap().components, 3);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(parse(r#"{"kodaira": "II", "q": 3}"#).is_err());
        let text = r#"{"g": 1, "jumps": [{"j": "0", "mult": 2}]}"#;
        assert!(parse(text).is_err());
    }

    #[test]
    fn bad_profile_data_is_rejected() {
        // strict mode: component count violating the trace formula
        let text = r#"{
            "g": 1,
            "jumps": [{"j": "1/6"}],
            "profile": {
                "2": {"t": 0, "a": 0, "phi": 7},
                "6": {"t": 0, "a": 1, "phi": 1, "class": "E"}
            }
        }"#;
        let input = match parse(text).unwrap() {
            Input::Spectrum(s) => s,
            other => panic!("wrong variant: {other:?}"),
        };
        assert!(build_profile(&input, false).is_err());
        let (_, warnings) = build_profile(&input, true).unwrap();
        assert_eq!(warnings.len(), 1);
    }
}
