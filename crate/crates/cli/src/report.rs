//! JSON and plain-text renderings of series, coloring data and obstruction reports.

use std::fmt::Write as _;

use burnside_core::obstruction::{
    Mode, ObstructionReport, Overall, Precondition, Verdict, Witness,
};
use burnside_core::{ColoringRank, TruncatedSeries};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub indices: Vec<u32>,
    pub coeff: u32,
}

/// Series as a term list; the constant term has empty `indices`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub p: u32,
    pub degree: usize,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
}

impl SeriesJson {
    pub fn new(series: &TruncatedSeries) -> Self {
        let constant = (series.constant() != 0).then(|| TermJson {
            indices: Vec::new(),
            coeff: series.constant(),
        });
        let terms = constant
            .into_iter()
            .chain(series.terms().map(|(m, c)| TermJson {
                indices: m.indices().to_vec(),
                coeff: c,
            }))
            .collect();
        Self {
            p: series.modulus(),
            degree: series.trunc(),
            terms,
            oracle_agrees: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub monomial: Vec<u32>,
    pub coeff: u32,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        Self {
            monomial: w.monomial.indices().to_vec(),
            coeff: w.coefficient,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VerdictWitnessJson {
    Term(WitnessJson),
    Pair {
        first: WitnessJson,
        second: WitnessJson,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorJson {
    pub index: usize,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<VerdictWitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub screened_degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreconditionFailureJson {
    pub relator: usize,
    pub exponent_sums: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub p: u32,
    pub mode: String,
    pub degree: usize,
    pub precondition: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precondition_failure: Option<PreconditionFailureJson>,
    pub relators: Vec<RelatorJson>,
    pub overall: String,
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::PMove { .. } => "p-move",
        Mode::FourMove => "4-move",
    }
}

impl ReportJson {
    pub fn new(report: &ObstructionReport) -> Self {
        let (precondition, precondition_failure) = match &report.precondition {
            Precondition::Holds => ("holds", None),
            Precondition::NotRequired => ("not_required", None),
            Precondition::Fails {
                relator,
                exponent_sums,
            } => (
                "fails",
                Some(PreconditionFailureJson {
                    relator: *relator,
                    exponent_sums: exponent_sums.clone(),
                }),
            ),
        };
        let relators = report
            .verdicts
            .iter()
            .map(|v| {
                let (witness, screened_degree) = match &v.verdict {
                    Verdict::Pass => (None, None),
                    Verdict::LowDegree(w) => (Some(VerdictWitnessJson::Term(w.into())), None),
                    Verdict::Asymmetry { first, second } => (
                        Some(VerdictWitnessJson::Pair {
                            first: first.into(),
                            second: second.into(),
                        }),
                        None,
                    ),
                    Verdict::Screened { degree } => (None, Some(*degree)),
                };
                RelatorJson {
                    index: v.index,
                    status: v.verdict.status().to_owned(),
                    witness,
                    screened_degree,
                }
            })
            .collect();
        Self {
            p: report.mode.modulus(),
            mode: mode_name(report.mode).to_owned(),
            degree: report.mode.degree(),
            precondition: precondition.to_owned(),
            precondition_failure,
            relators,
            overall: report.overall.as_str().to_owned(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

fn witness_text(w: &Witness) -> String {
    format!("{} -> {}", w.monomial, w.coefficient)
}

fn move_name(mode: Mode) -> String {
    match mode {
        Mode::PMove { p } => format!("{p}-move"),
        Mode::FourMove => "4-move".to_owned(),
    }
}

pub fn render_report(report: &ObstructionReport, generators: usize) -> String {
    let mode = report.mode;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} check: coefficients mod {}, symmetric degree {}",
        move_name(mode),
        mode.modulus(),
        mode.degree()
    );
    let _ = match &report.precondition {
        Precondition::Holds => writeln!(
            out,
            "precondition: holds (coloring group order {}^{generators})",
            mode.modulus()
        ),
        Precondition::NotRequired => {
            writeln!(
                out,
                "precondition: not_required (one generator per component assumed)"
            )
        }
        Precondition::Fails {
            relator,
            exponent_sums,
        } => {
            let sums: Vec<String> = exponent_sums.iter().map(u32::to_string).collect();
            writeln!(
                out,
                "precondition: fails (r{relator} has exponent sums ({}) mod {})",
                sums.join(", "),
                mode.modulus()
            )
        }
    };
    for v in &report.verdicts {
        let detail = match &v.verdict {
            Verdict::Pass => String::new(),
            Verdict::LowDegree(w) => format!("  {}", witness_text(w)),
            Verdict::Asymmetry { first, second } => {
                format!("  {}, {}", witness_text(first), witness_text(second))
            }
            Verdict::Screened { degree } => format!("  (degrees 1..={degree} vanish)"),
        };
        let _ = writeln!(out, "r{}: {}{detail}", v.index, v.verdict.status());
    }
    let gloss = match report.overall {
        Overall::Obstructed => format!("not {} equivalent to a trivial link", move_name(mode)),
        Overall::NoObstruction => "inconclusive".to_owned(),
        Overall::Inapplicable => "the coloring hypothesis fails".to_owned(),
    };
    let _ = writeln!(out, "overall: {} ({gloss})", report.overall.as_str());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub p: u32,
    pub generators: usize,
    pub rank: usize,
    pub order_exponent: usize,
    /// `p^order_exponent` when it fits in 64 bits.
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumerated: Option<u64>,
}

impl ColoringJson {
    pub fn new(p: u32, generators: usize, rank: ColoringRank) -> Self {
        let order = u32::try_from(rank.order_exponent)
            .ok()
            .and_then(|e| u64::from(p).checked_pow(e));
        Self {
            p,
            generators,
            rank: rank.rank,
            order_exponent: rank.order_exponent,
            order,
            enumerated: None,
        }
    }

    pub fn render(&self) -> String {
        match self.order {
            Some(order) => format!("{}^{} = {order}\n", self.p, self.order_exponent),
            None => format!("{}^{}\n", self.p, self.order_exponent),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use burnside_core::{obstruct_p, BraidWord};

    #[test]
    fn hopf_report_json() {
        let pr = BraidWord::parse("1 1", 2).unwrap().closure_presentation();
        let json = ReportJson::new(&obstruct_p(&pr, 3).unwrap());
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            r#"{"p":3,"mode":"p-move","degree":3,"precondition":"fails","precondition_failure":{"relator":1,"exponent_sums":[2,1]},"relators":[],"overall":"inapplicable"}"#
        );
    }

    #[test]
    fn trefoil_report_text() {
        let pr = BraidWord::parse("1 1 1", 2).unwrap().closure_presentation();
        let text = render_report(&obstruct_p(&pr, 3).unwrap(), pr.generators());
        assert_eq!(
            text,
            "3-move check: coefficients mod 3, symmetric degree 3\n\
             precondition: holds (coloring group order 3^2)\n\
             r1: pass\n\
             r2: pass\n\
             overall: no_obstruction (inconclusive)\n"
        );
    }

    #[test]
    fn coloring_rendering() {
        let c = ColoringJson::new(
            3,
            2,
            ColoringRank {
                rank: 0,
                order_exponent: 2,
            },
        );
        assert_eq!(c.render(), "3^2 = 9\n");
        let huge = ColoringJson::new(
            7,
            40,
            ColoringRank {
                rank: 0,
                order_exponent: 40,
            },
        );
        assert_eq!(huge.render(), "7^40\n");
    }
}
