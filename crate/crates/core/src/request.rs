//! Construction requests: which scheme, which construction, which ring
//! entries. Shared by the command line flags and the JSON request file.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::assoc_schemes::{
    cayley_36_14_4_6, chang_graph, complement, cyclic_latin_square_graph, gq24_collinearity_graph,
    gq33_collinearity_graph, gq42_collinearity_graph, lattice_graph, load_scheme_file, paley_graph,
    paley_tournament, pg32_skew_lines_graph, triangular_graph, SchemeFormat, SchemeKind, SchemeMatrix,
};
use crate::constructions::{cm_code, cm_is_degenerate, CaseLabel, SchemeCodeSpec, Variant};
use crate::error::{Error, Result};
use crate::reproduce::{analyze_code, scheme_report, AnalyzeOptions, ReportRecord, SchemeSource};
use crate::ring_e::RingElement;
use crate::search::SearchConfig;

/// Pure, bordered, or the two-block `(xI | yA)` code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RequestVariant {
    #[default]
    Pure,
    Bordered,
    Cm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructRequest {
    /// A built-in name such as `paley-tournament-11`, a manifest entry name,
    /// or a path to a graph6 or matrix file.
    pub scheme: String,
    /// Kind of a matrix file; graph6 files are always SRGs.
    #[serde(default)]
    pub kind: Option<SchemeKind>,
    #[serde(default)]
    pub variant: RequestVariant,
    /// `i`, `ii` or `iii`.
    #[serde(default)]
    pub case: Option<String>,
    /// `r s t` as three characters over `0abc`, instead of a case.
    #[serde(default)]
    pub rst: Option<String>,
    /// Entries of `(xI | yA)` for the `cm` variant.
    #[serde(default)]
    pub x: Option<String>,
    #[serde(default)]
    pub y: Option<String>,
    #[serde(default)]
    pub enumerate: bool,
}

fn element(field: &str, s: &str) -> Result<RingElement> {
    let mut chars = s.chars();
    match (chars.next().and_then(RingElement::from_char), chars.next()) {
        (Some(e), None) => Ok(e),
        _ => Err(Error::Unsupported(format!("{field}: expected one of 0, a, b, c, got {s:?}"))),
    }
}

/// Schemes available by name without any files.
pub fn builtin_by_name(name: &str) -> Option<Result<SchemeMatrix>> {
    let num = |prefix: &str| name.strip_prefix(prefix).and_then(|rest| rest.parse::<usize>().ok());
    if let Some(q) = num("paley-graph-") {
        return Some(paley_graph(q));
    }
    if let Some(q) = num("paley-tournament-") {
        return Some(paley_tournament(q));
    }
    if let Some(m) = num("lattice-") {
        return Some(lattice_graph(m));
    }
    if let Some(m) = num("triangular-complement-") {
        return Some(triangular_graph(m).and_then(|t| complement(&t)));
    }
    if let Some(m) = num("triangular-") {
        return Some(triangular_graph(m));
    }
    if let Some(k) = num("chang-") {
        return Some(chang_graph(k));
    }
    if let Some(m) = num("latin-cyclic-") {
        return Some(cyclic_latin_square_graph(m));
    }
    Some(match name {
        "pentagon" => paley_graph(5),
        "gq24" => gq24_collinearity_graph(),
        "gq33" => gq33_collinearity_graph(),
        "gq42" => gq42_collinearity_graph(),
        "pg32-skew-lines" => pg32_skew_lines_graph(),
        "cayley-36-14-4-6" => cayley_36_14_4_6(),
        _ => return None,
    })
}

/// Names accepted by [`builtin_by_name`], for help text.
pub const BUILTIN_NAMES: &str = "paley-graph-Q, paley-tournament-Q, lattice-M, triangular-M, \
triangular-complement-M, chang-1..3, latin-cyclic-M, pentagon, gq24, gq33, gq42, pg32-skew-lines, \
cayley-36-14-4-6";

/// A code ready to analyse.
#[derive(Clone, Debug)]
pub enum Construction {
    Scheme(SchemeCodeSpec),
    Cm {
        x: RingElement,
        y: RingElement,
        scheme: SchemeMatrix,
    },
}

impl ConstructRequest {
    pub fn parse(text: &str) -> Result<ConstructRequest> {
        let req: ConstructRequest = serde_json::from_str(text)?;
        req.validate()?;
        Ok(req)
    }

    /// Checks field combinations without touching the file system.
    pub fn validate(&self) -> Result<()> {
        match self.variant {
            RequestVariant::Cm => {
                if self.case.is_some() || self.rst.is_some() {
                    return Err(Error::Unsupported("cm takes x and y, not case or rst".into()));
                }
                element("x", self.x.as_deref().unwrap_or(""))?;
                element("y", self.y.as_deref().unwrap_or(""))?;
            }
            _ => {
                if self.x.is_some() || self.y.is_some() {
                    return Err(Error::Unsupported("x and y only apply to the cm variant".into()));
                }
                self.rst_triple()?;
            }
        }
        Ok(())
    }

    fn rst_triple(&self) -> Result<(RingElement, RingElement, RingElement)> {
        match (&self.case, &self.rst) {
            (Some(c), None) => CaseLabel::parse(c)
                .map(CaseLabel::rst)
                .ok_or_else(|| Error::Unsupported(format!("case must be i, ii or iii, got {c:?}"))),
            (None, Some(s)) => {
                let e: Vec<char> = s.chars().collect();
                if e.len() != 3 {
                    return Err(Error::Unsupported(format!("rst must be three characters, got {s:?}")));
                }
                Ok((
                    element("r", &e[0].to_string())?,
                    element("s", &e[1].to_string())?,
                    element("t", &e[2].to_string())?,
                ))
            }
            (None, None) => Err(Error::Unsupported("one of case or rst is required".into())),
            (Some(_), Some(_)) => Err(Error::Unsupported("give case or rst, not both".into())),
        }
    }

    /// Loads the scheme: built-in name, then manifest entry, then file.
    pub fn resolve_scheme(&self, source: &SchemeSource) -> Result<(SchemeMatrix, String)> {
        if let Some(s) = builtin_by_name(&self.scheme) {
            return Ok((s?, format!("built-in {}", self.scheme)));
        }
        if let Some(found) = source.by_name(&self.scheme)? {
            return Ok(found);
        }
        let path = Path::new(&self.scheme);
        if !path.exists() {
            return Err(Error::Unsupported(format!(
                "unknown scheme {:?}: not a built-in ({BUILTIN_NAMES}), manifest entry or file",
                self.scheme
            )));
        }
        let graph6 = path.extension().is_some_and(|e| e == "g6" || e == "graph6");
        let (kind, format) = if graph6 {
            if self.kind == Some(SchemeKind::Drt) {
                return Err(Error::Unsupported("graph6 files hold undirected graphs only".into()));
            }
            (SchemeKind::Srg, SchemeFormat::Graph6)
        } else {
            (self.kind.unwrap_or(SchemeKind::Srg), SchemeFormat::Matrix)
        };
        Ok((load_scheme_file(path, kind, format)?, format!("file {}", path.display())))
    }

    pub fn build(&self, source: &SchemeSource) -> Result<(Construction, String)> {
        self.validate()?;
        let (scheme, origin) = self.resolve_scheme(source)?;
        let c = match self.variant {
            RequestVariant::Cm => Construction::Cm {
                x: element("x", self.x.as_deref().unwrap_or(""))?,
                y: element("y", self.y.as_deref().unwrap_or(""))?,
                scheme,
            },
            v => {
                let variant = if v == RequestVariant::Pure { Variant::Pure } else { Variant::Bordered };
                Construction::Scheme(SchemeCodeSpec::custom(scheme, variant, self.rst_triple()?))
            }
        };
        Ok((c, origin))
    }

    pub fn report(&self, source: &SchemeSource, config: &SearchConfig) -> Result<ReportRecord> {
        let (c, origin) = self.build(source)?;
        construction_report(&c, &origin, config, AnalyzeOptions { enumerate: self.enumerate })
    }
}

impl Construction {
    pub fn code(&self) -> Result<crate::ECode> {
        match self {
            Construction::Scheme(spec) => Ok(spec.code()),
            Construction::Cm { x, y, scheme } => cm_code(*x, *y, scheme.adjacency()),
        }
    }
}

pub fn construction_report(c: &Construction, origin: &str, config: &SearchConfig, opts: AnalyzeOptions) -> Result<ReportRecord> {
    match c {
        Construction::Scheme(spec) => scheme_report(spec, origin, config, opts),
        Construction::Cm { x, y, scheme } => {
            let code = cm_code(*x, *y, scheme.adjacency())?;
            let mut rec = analyze_code(&format!("cm({x},{y})"), &code, config, opts)?;
            rec.scheme = Some(crate::reproduce::SchemeSummary {
                kind: scheme.kind(),
                params: scheme.params(),
                origin: origin.to_string(),
            });
            if cm_is_degenerate(*x, *y) {
                rec.warnings
                    .push("degenerate: x or y equals c, the code is linear over F2 and d may collapse".into());
            }
            Ok(rec)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(text: &str) -> Result<ConstructRequest> {
        ConstructRequest::parse(text)
    }

    #[test]
    fn parses_and_reports() {
        let r = req(r#"{"scheme": "paley-tournament-7", "variant": "pure", "case": "i"}"#).unwrap();
        let rec = r.report(&SchemeSource::builtin(), &SearchConfig::default()).unwrap();
        assert_eq!(rec.length, 14);
        let r = req(r#"{"scheme": "pentagon", "variant": "cm", "x": "a", "y": "c"}"#).unwrap();
        let rec = r.report(&SchemeSource::builtin(), &SearchConfig::default()).unwrap();
        assert!(rec.warnings.iter().any(|w| w.starts_with("degenerate")));
        let r = req(r#"{"scheme": "lattice-4", "variant": "bordered", "rst": "aab"}"#).unwrap();
        assert_eq!(r.report(&SchemeSource::builtin(), &SearchConfig::default()).unwrap().length, 34);
    }

    #[test]
    fn rejects_bad_requests() {
        for bad in [
            r#"{"scheme": "pentagon"}"#,
            r#"{"scheme": "pentagon", "case": "iv"}"#,
            r#"{"scheme": "pentagon", "case": "i", "rst": "0a0"}"#,
            r#"{"scheme": "pentagon", "rst": "0a"}"#,
            r#"{"scheme": "pentagon", "rst": "0ax"}"#,
            r#"{"scheme": "pentagon", "variant": "cm", "x": "a"}"#,
            r#"{"scheme": "pentagon", "variant": "cm", "x": "a", "y": "a", "case": "i"}"#,
            r#"{"scheme": "pentagon", "case": "i", "x": "a"}"#,
            r#"{"scheme": "pentagon", "case": "i", "colour": "red"}"#,
            r#"{"scheme": 5}"#,
            "not json",
        ] {
            assert!(req(bad).is_err(), "{bad}");
        }
        let r = req(r#"{"scheme": "no-such-scheme", "case": "i"}"#).unwrap();
        assert!(r.build(&SchemeSource::builtin()).is_err());
    }

    #[test]
    fn builtin_names_resolve() {
        for name in ["paley-graph-13", "paley-tournament-19", "lattice-4", "triangular-8", "triangular-complement-6", "chang-2", "latin-cyclic-6", "pentagon", "gq24", "gq33", "gq42", "pg32-skew-lines", "cayley-36-14-4-6"] {
            assert!(builtin_by_name(name).unwrap().is_ok(), "{name}");
        }
        assert!(builtin_by_name("paley-graph-7").unwrap().is_err());
        assert!(builtin_by_name("petersen").is_none());
    }
}
