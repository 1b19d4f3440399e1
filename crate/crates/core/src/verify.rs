//! Self-check suites behind `nonunital verify`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assoc_schemes::{
    complement, lattice_graph, mod2_params, paley_graph, paley_tournament, SchemeMatrix, SchemeParams,
};
use crate::constructions::{
    fit_lambda_mu_nu, lemma8_check, lemma9_equality_check, table23_conditions, thm10_11_distance_check,
    CaseLabel, LambdaMuNu, SchemeCodeSpec, Variant,
};
use crate::error::Result;
use crate::ring_e::{alpha, phi, RingElement};
use crate::search::SearchConfig;
use crate::theorem_sweep::{sweep, RuleTally};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ring,
    Schemes,
    Theorems,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "ring" => Some(Suite::Ring),
            "schemes" => Some(Suite::Schemes),
            "theorems" => Some(Suite::Theorems),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    fn push(&mut self, suite: &str, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(Check {
            suite: suite.to_string(),
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Options for [`run`].
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Largest order in the `C(M)` sweep.
    pub sweep_max_n: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { sweep_max_n: 6 }
    }
}

pub fn run(suite: Suite, config: &SearchConfig, opts: VerifyOptions) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    if matches!(suite, Suite::Ring | Suite::All) {
        ring(&mut report);
    }
    if matches!(suite, Suite::Schemes | Suite::All) {
        schemes(&mut report)?;
    }
    if matches!(suite, Suite::Theorems | Suite::All) {
        theorems(&mut report, config, opts)?;
    }
    Ok(report)
}

fn ring(report: &mut VerifyReport) {
    const S: &str = "ring";
    // rows x, columns y, both in the order 0 a b c
    let table = ["0000", "0aa0", "0bb0", "0cc0"];
    let sums = ["0abc", "a0cb", "bc0a", "cba0"];
    let e = RingElement::ALL;
    let mut bad = 0;
    for (i, &x) in e.iter().enumerate() {
        for (j, &y) in e.iter().enumerate() {
            bad += usize::from((x * y).as_char() != table[i].as_bytes()[j] as char);
            bad += usize::from((x + y).as_char() != sums[i].as_bytes()[j] as char);
        }
    }
    report.push(S, "multiplication and addition tables", bad == 0, format!("32 entries, {bad} wrong"));
    let mut assoc = 0;
    let mut dist = 0;
    for &x in &e {
        for &y in &e {
            for &z in &e {
                assoc += usize::from((x * y) * z != x * (y * z) || (x + y) + z != x + (y + z));
                dist += usize::from(x * (y + z) != x * y + x * z || (x + y) * z != x * z + y * z);
            }
        }
    }
    report.push(S, "associativity", assoc == 0, format!("64 triples, {assoc} violations"));
    report.push(S, "two-sided distributivity", dist == 0, format!("64 triples, {dist} violations"));
    let morph = e.iter().all(|&x| {
        e.iter().all(|&y| alpha(x + y) == alpha(x) + alpha(y) && alpha(x * y) == alpha(x) * alpha(y) && phi(x + y) == phi(x) + phi(y))
    });
    report.push(S, "α is a ring map and φ is additive", morph, "16 pairs");
    let noncomm = e.iter().any(|&x| e.iter().any(|&y| x * y != y * x));
    let no_unit = !e.iter().any(|&u| e.iter().all(|&x| u * x == x && x * u == x));
    report.push(S, "non-commutative and non-unital", noncomm && no_unit, "a·c = 0, c·a = c; no two-sided identity");
}

fn scheme_check(report: &mut VerifyReport, name: &str, built: Result<SchemeMatrix>, want: (usize, usize, usize, usize)) {
    const S: &str = "schemes";
    match built {
        Ok(s) => {
            let got = s.params().as_tuple();
            let m2 = mod2_params(&s);
            let fits = fit_lambda_mu_nu(s.adjacency());
            let m2_ok = m2.as_ref().is_ok_and(|p| fits.contains(&LambdaMuNu::new(p.lambda, p.mu, p.nu)));
            let back = complement(&s).and_then(|c| complement(&c)).is_ok_and(|c| c.adjacency() == s.adjacency());
            report.push(
                S,
                name,
                got == want && m2_ok && back,
                format!(
                    "parameters {}, mod-2 reduction {}, complement involution {}",
                    SchemeParams::new(got.0, got.1, got.2, got.3),
                    if m2_ok { "consistent" } else { "inconsistent" },
                    if back { "ok" } else { "broken" }
                ),
            );
        }
        Err(e) => report.push(S, name, false, e.to_string()),
    }
}

fn schemes(report: &mut VerifyReport) -> Result<()> {
    for q in [5, 13, 17] {
        scheme_check(report, &format!("Paley graph {q}"), paley_graph(q), (q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4));
    }
    for q in [3, 7, 11, 19] {
        scheme_check(
            report,
            &format!("Paley tournament {q}"),
            paley_tournament(q),
            (q, (q - 1) / 2, (q - 3) / 4, (q + 1) / 4),
        );
    }
    scheme_check(report, "lattice graph L2(4)", lattice_graph(4), (16, 6, 2, 2));
    let rejects = paley_graph(7).is_err() && paley_tournament(13).is_err();
    report.push("schemes", "bad orders rejected", rejects, "Paley graph 7, Paley tournament 13");
    Ok(())
}

fn tally(report: &mut VerifyReport, name: &str, t: &RuleTally) {
    let example = t
        .examples
        .first()
        .map(|e| format!("; e.g. x={} y={} M={} predicted {} actual {}", e.x, e.y, e.matrix.join("/"), e.predicted, e.actual))
        .unwrap_or_default();
    report.push(
        "theorems",
        name,
        t.passed(),
        format!("{} of {} cases disagree{example}", t.mismatches, t.cases),
    );
}

fn theorems(report: &mut VerifyReport, config: &SearchConfig, opts: VerifyOptions) -> Result<()> {
    const S: &str = "theorems";
    let sw = sweep(opts.sweep_max_n);
    let scope = format!("n <= {}, {} matrices", opts.sweep_max_n, sw.matrices);
    tally(report, &format!("C(M) self-orthogonality table ({scope})"), &sw.thm5);
    tally(report, &format!("C(M) QSD rule ({scope})"), &sw.thm6);
    tally(report, &format!("C(M) Type IV rule ({scope})"), &sw.thm7);
    tally(report, &format!("C(M) rule α(x)I + α(y)MMᵀ = 0 ({scope})"), &sw.exact_self_orthogonality);

    let named: Vec<(&str, SchemeMatrix)> = vec![
        ("pentagon", paley_graph(5)?),
        ("L2(4)", lattice_graph(4)?),
        ("Paley tournament 11", paley_tournament(11)?),
        ("Paley tournament 19", paley_tournament(19)?),
    ];
    for (name, s) in &named {
        let mut bad = 0;
        for r in RingElement::ALL {
            for x in RingElement::ALL {
                for t in RingElement::ALL {
                    bad += usize::from(lemma8_check(r, x, t, s).is_err());
                }
            }
        }
        report.push(S, format!("Gram coefficients of Q_E on {name}"), bad == 0, format!("64 triples, {bad} wrong"));
    }

    let wide = SearchConfig {
        max_ecode_log2: config.max_ecode_log2.max(24),
        ..*config
    };
    for (name, s) in [
        ("Paley tournament 3", paley_tournament(3)?),
        ("pentagon", paley_graph(5)?),
        ("Paley tournament 11", paley_tournament(11)?),
    ] {
        let o = lemma9_equality_check(&s, &wide)?;
        report.push(
            S,
            format!("cases (i) and (iii) give equal codes on {name}"),
            o.pure && o.bordered,
            format!("pure {}, bordered {}", o.pure, o.bordered),
        );
    }

    let mut classes: Vec<(String, SchemeMatrix)> = Vec::new();
    for q in [5, 13, 17] {
        classes.push((format!("Paley graph {q}"), paley_graph(q)?));
    }
    for q in [7, 11, 19] {
        classes.push((format!("Paley tournament {q}"), paley_tournament(q)?));
    }
    for (name, s) in &classes {
        let mut bad = Vec::new();
        for r in RingElement::ALL {
            for x in [RingElement::A, RingElement::B] {
                for t in [RingElement::A, RingElement::B] {
                    let c = thm10_11_distance_check(s, r, x, t, config)?;
                    if !c.matches {
                        bad.push(format!("r={r} s={x} t={t}: d={} vs {}", c.computed, c.predicted));
                    }
                }
            }
        }
        report.push(
            S,
            format!("pure-code distance classes on {name}"),
            bad.is_empty(),
            if bad.is_empty() { "16 codes".to_string() } else { bad.join("; ") },
        );
    }

    let mut parity: Vec<(String, SchemeMatrix)> = vec![("L2(4)".into(), lattice_graph(4)?)];
    for q in [5, 13] {
        parity.push((format!("Paley graph {q}"), paley_graph(q)?));
    }
    for q in [3, 7, 11, 19] {
        parity.push((format!("Paley tournament {q}"), paley_tournament(q)?));
    }
    let mut bad = Vec::new();
    for (name, s) in &parity {
        for variant in [Variant::Pure, Variant::Bordered] {
            for case in [CaseLabel::I, CaseLabel::Ii, CaseLabel::Iii] {
                let code = SchemeCodeSpec::new(s.clone(), variant, case).code();
                let t = table23_conditions(s.kind(), variant, case, s.params());
                if t.qsd != code.is_qsd() || (t.qsd && !code.is_typeiv(config)?) {
                    bad.push(format!("{name} {variant} {case}"));
                }
            }
        }
    }
    report.push(
        S,
        "QSD and Type IV parity rules against the codes",
        bad.is_empty(),
        format!("{} codes, {} disagree {}", parity.len() * 6, bad.len(), bad.join(", ")),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_and_schemes_pass() {
        let r = run(Suite::Ring, &SearchConfig::default(), VerifyOptions::default()).unwrap();
        assert!(r.ok() && r.passed == 5, "{:?}", r.checks);
        let s = run(Suite::Schemes, &SearchConfig::default(), VerifyOptions::default()).unwrap();
        assert!(s.ok(), "{:?}", s.checks);
    }

    #[test]
    fn small_theorem_suite_reports_the_table_failure() {
        let r = run(Suite::Theorems, &SearchConfig::default(), VerifyOptions { sweep_max_n: 3 }).unwrap();
        let failing: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        assert_eq!(failing.len(), 2, "{failing:?}");
        assert!(failing[0].starts_with("C(M) self-orthogonality table"));
        assert_eq!(failing[1], "pure-code distance classes on Paley graph 5");
    }
}
