//! Falsifiable checks of the transfer theorems over enumerated objects.

mod report;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

pub use report::{
    CapsHeader, CheckResult, Counterexample, ReportBuilder, ReportDocument, ReportHeader, Status,
    Summary, Timing, VerificationReport, WitnessSubset, SCALE_NOTE,
};
pub(crate) use suites::bijection_check;
pub use suites::{
    principal_ideal, verify_lemmas_3_11_3_12, verify_prop_3_4, verify_semifield_transfer,
    verify_theorem_3_15, verify_theorem_3_17, verify_theorem_3_18, verify_theorem_3_8,
};

use crate::config::RunConfig;
use crate::error::Result;
use crate::fuzzy::IdealKind;
use crate::matrix::{check_operator_matrix_iso, matrix_build_report, verify_theorem_3_19};
use crate::operators::{build_operator_semiring, Side};
use crate::par;
use crate::structure::GammaSemiring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Prop34,
    Th38,
    Lemmas,
    Th315,
    Th317,
    Th318,
    TransferSemifield,
    Matrix,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Prop34,
        Suite::Th38,
        Suite::Lemmas,
        Suite::Th315,
        Suite::Th317,
        Suite::Th318,
        Suite::TransferSemifield,
        Suite::Matrix,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop34 => "prop3.4",
            Suite::Th38 => "th3.8",
            Suite::Lemmas => "lemmas",
            Suite::Th315 => "th3.15",
            Suite::Th317 => "th3.17",
            Suite::Th318 => "th3.18",
            Suite::TransferSemifield => "transfer-semifield",
            Suite::Matrix => "matrix",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

// One unit of work in a run; expands `Suite` into individually reported steps.
#[derive(Debug, Clone, Copy)]
enum Step {
    Prop34,
    Th38,
    Lemmas,
    Th315,
    Th317,
    Th318,
    TransferSemifield,
    MatrixBuild,
    MatrixIso(Side),
    Th319,
}

impl Step {
    fn name(self) -> String {
        match self {
            Step::Prop34 => "prop3.4".into(),
            Step::Th38 => "th3.8".into(),
            Step::Lemmas => "lemmas".into(),
            Step::Th315 => "th3.15".into(),
            Step::Th317 => "th3.17".into(),
            Step::Th318 => "th3.18".into(),
            Step::TransferSemifield => "transfer-semifield".into(),
            Step::MatrixBuild => "matrix.build".into(),
            Step::MatrixIso(side) => format!("matrix.iso.{side}"),
            Step::Th319 => "th3.19".into(),
        }
    }

    fn expand(suite: Suite) -> Vec<Step> {
        let matrix = [Step::MatrixBuild, Step::MatrixIso(Side::Left), Step::MatrixIso(Side::Right), Step::Th319];
        match suite {
            Suite::Prop34 => vec![Step::Prop34],
            Suite::Th38 => vec![Step::Th38],
            Suite::Lemmas => vec![Step::Lemmas],
            Suite::Th315 => vec![Step::Th315],
            Suite::Th317 => vec![Step::Th317],
            Suite::Th318 => vec![Step::Th318],
            Suite::TransferSemifield => vec![Step::TransferSemifield],
            Suite::Matrix => matrix.to_vec(),
            Suite::All => {
                let mut v = vec![
                    Step::Prop34,
                    Step::Th38,
                    Step::Lemmas,
                    Step::Th315,
                    Step::Th317,
                    Step::Th318,
                    Step::TransferSemifield,
                ];
                v.extend(matrix);
                v
            }
        }
    }

    fn run(self, g: &GammaSemiring, cfg: &RunConfig, kind: IdealKind) -> Result<VerificationReport> {
        let (chain, caps) = (&cfg.chain, &cfg.caps);
        match self {
            Step::Prop34 => verify_prop_3_4(g, chain, caps),
            Step::Th38 => verify_theorem_3_8(g, chain, kind, caps),
            Step::Lemmas => verify_lemmas_3_11_3_12(g, caps),
            Step::Th315 => verify_theorem_3_15(g, kind, caps),
            Step::Th317 => {
                let l = build_operator_semiring(g, Side::Left, caps)?;
                verify_theorem_3_17(l.semiring(), chain, caps)
            }
            Step::Th318 => verify_theorem_3_18(g, chain, caps),
            Step::TransferSemifield => verify_semifield_transfer(g, chain, caps),
            Step::MatrixBuild => matrix_build_report(g, cfg.n, caps),
            Step::MatrixIso(side) => check_operator_matrix_iso(g, cfg.n, side, caps),
            Step::Th319 => verify_theorem_3_19(g, cfg.n, chain, caps),
        }
    }
}

/// Runs the steps of `suite` in parallel, reporting in a fixed order. A step
/// that errors (for instance on a cap) becomes a precondition-unmet report
/// carrying the error.
pub fn run_suite(g: &GammaSemiring, suite: Suite, cfg: &RunConfig, kind: IdealKind) -> Vec<VerificationReport> {
    let steps = Step::expand(suite);
    par::map_slice(&steps, |&step| {
        let started = Instant::now();
        let mut rep = step.run(g, cfg, kind).unwrap_or_else(|e| {
            let mut rep = ReportBuilder::new(step.name(), g.name(), Some(&cfg.chain));
            rep.note(format!("error: {e}"));
            rep.finish()
        });
        rep.elapsed = started.elapsed();
        rep
    })
}

/// Every suite, two-sided ideals, at the configured chain and matrix size.
pub fn run_all(g: &GammaSemiring, cfg: &RunConfig) -> Vec<VerificationReport> {
    run_suite(g, Suite::All, cfg, IdealKind::TwoSided)
}
