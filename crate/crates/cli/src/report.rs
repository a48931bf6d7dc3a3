//! Machine-readable result document, human summary and plot table.

use std::fmt::Write as _;

use fls_core::{
    residual, ClassificationReport, FuzzySystem, RGrid, ResidualReport, RhsEntry,
    SolutionCandidate, Verdict, Violation, RESIDUAL_TOL,
};
use serde::Serialize;

/// Exit status for each verdict; input errors use 1.
pub fn exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Strong => 0,
        Verdict::Weak => 2,
        Verdict::Singular => 3,
    }
}

pub fn variable_name(i: usize) -> String {
    format!("x{}", i + 1)
}

#[derive(Serialize)]
pub struct ResultDocument {
    pub verdict: Verdict,
    pub n: usize,
    pub grid_points: usize,
    pub nonsingularity: NonsingularityDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomial_case: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fuzzy_solution: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<VariableDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<ConditionDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_variables: Option<Vec<ViolatingDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_violations: Option<Vec<ProfileDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<ResidualDoc>,
}

#[derive(Serialize)]
pub struct NonsingularityDoc {
    pub a: bool,
    pub b_plus_c: bool,
    pub s: bool,
}

#[derive(Serialize)]
pub struct VariableDoc {
    pub variable: String,
    pub profile: RhsEntry,
}

#[derive(Serialize)]
pub struct ConditionDoc {
    pub holds: bool,
    pub max_component: f64,
    pub min_component: f64,
}

#[derive(Serialize)]
pub struct ViolatingDoc {
    pub variable: String,
    pub r: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Serialize)]
pub struct ProfileDoc {
    pub variable: String,
    pub violations: Vec<Violation>,
}

#[derive(Serialize)]
pub struct ResidualDoc {
    pub max: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl From<&ResidualReport> for ResidualDoc {
    fn from(r: &ResidualReport) -> Self {
        Self {
            max: r.max_residual,
            threshold: r.threshold,
            pass: r.pass,
        }
    }
}

/// Everything a command needs to print or write.
pub struct Outcome {
    pub report: ClassificationReport,
    pub residual: Option<ResidualReport>,
    pub grid: RGrid,
}

impl Outcome {
    pub fn compute(sys: &FuzzySystem, grid: RGrid) -> Self {
        let cfg = fls_core::LinSolveConfig::default();
        let report = fls_core::classify(sys, &grid, &cfg);
        let residual = report
            .analysis
            .as_ref()
            .map(|a| residual(sys, &a.candidate, &grid, RESIDUAL_TOL))
            .transpose()
            .expect("candidate length matches the system");
        Self {
            report,
            residual,
            grid,
        }
    }

    pub fn candidate(&self) -> Option<&SolutionCandidate> {
        self.report.analysis.as_ref().map(|a| &a.candidate)
    }

    pub fn singular_message(&self) -> Option<String> {
        self.report
            .singular_role()
            .map(|role| format!("{role} is singular, so the embedded matrix S is singular"))
    }

    pub fn document(&self, n: usize) -> ResultDocument {
        let ns = &self.report.nonsingularity;
        let analysis = self.report.analysis.as_ref();
        ResultDocument {
            verdict: self.report.verdict,
            n,
            grid_points: self.grid.len(),
            nonsingularity: NonsingularityDoc {
                a: ns.a_ok,
                b_plus_c: ns.b_plus_c_ok,
                s: ns.s_ok,
            },
            message: self.singular_message(),
            monomial_case: analysis.map(|a| a.monomial.flag),
            fuzzy_solution: analysis.map(|_| self.report.is_fuzzy_solution()),
            solution: analysis.map(|a| {
                a.candidate
                    .components()
                    .iter()
                    .enumerate()
                    .map(|(i, x)| VariableDoc {
                        variable: variable_name(i),
                        profile: RhsEntry::from_fuzzy(x),
                    })
                    .collect()
            }),
            condition: analysis.map(|a| ConditionDoc {
                holds: a.condition.holds,
                max_component: a.condition.max_component(),
                min_component: a.condition.min_component(),
            }),
            violating_variables: analysis.map(|a| {
                a.violating_variables
                    .iter()
                    .map(|v| ViolatingDoc {
                        variable: variable_name(v.index),
                        r: v.r,
                        lower: v.lower,
                        upper: v.upper,
                    })
                    .collect()
            }),
            profile_violations: analysis.map(|a| {
                a.profile_violations
                    .iter()
                    .map(|(i, v)| ProfileDoc {
                        variable: variable_name(*i),
                        violations: v.clone(),
                    })
                    .collect()
            }),
            residual: self.residual.as_ref().map(ResidualDoc::from),
        }
    }

    /// Human-readable summary for stdout.
    pub fn summary(&self, with_solution: bool) -> String {
        let mut out = String::new();
        let rep = &self.report;
        writeln!(out, "verdict: {}", rep.verdict.as_str()).unwrap();
        let Some(analysis) = rep.analysis.as_ref() else {
            let ns = &rep.nonsingularity;
            writeln!(
                out,
                "{}",
                self.singular_message()
                    .unwrap_or_else(|| "S is singular".into())
            )
            .unwrap();
            writeln!(
                out,
                "nonsingular: A={} B+C={} S={}",
                ns.a_ok, ns.b_plus_c_ok, ns.s_ok
            )
            .unwrap();
            return out;
        };
        writeln!(out, "monomial_case={}", analysis.monomial.flag).unwrap();
        if with_solution {
            for (i, x) in analysis.candidate.components().iter().enumerate() {
                let text = match RhsEntry::from_fuzzy(x) {
                    RhsEntry::Triangular { a, c, b } => format!("({a:.10}, {c:.10}, {b:.10})"),
                    RhsEntry::Crisp { a } => format!("{a:.10}"),
                    RhsEntry::Sampled { grid, .. } => {
                        let (l0, u0) = x.eval(0.0).expect("r = 0 is valid");
                        let (l1, u1) = x.eval(1.0).expect("r = 1 is valid");
                        format!(
                            "sampled on {} points; r=0: [{l0:.10}, {u0:.10}], r=1: [{l1:.10}, {u1:.10}]",
                            grid.len()
                        )
                    }
                };
                writeln!(out, "{} = {text}", variable_name(i)).unwrap();
            }
        }
        writeln!(
            out,
            "condition vector: max component {:.3e} ({})",
            analysis.condition.max_component(),
            if analysis.condition.holds {
                "nonpositive"
            } else {
                "positive entries"
            }
        )
        .unwrap();
        for v in &analysis.violating_variables {
            writeln!(
                out,
                "{} has lower > upper at r = {} (lower = {:.10}, upper = {:.10})",
                variable_name(v.index),
                v.r,
                v.lower,
                v.upper
            )
            .unwrap();
        }
        for (i, vs) in &analysis.profile_violations {
            for v in vs {
                writeln!(out, "{} is not monotone: {v}", variable_name(*i)).unwrap();
            }
        }
        if let Some(res) = &self.residual {
            writeln!(
                out,
                "residual: {:.3e} (threshold {:.3e}) {}",
                res.max_residual,
                res.threshold,
                if res.pass { "pass" } else { "FAIL" }
            )
            .unwrap();
        }
        out
    }
}

fn fixed(v: f64) -> String {
    let s = format!("{v:.10}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Comma-separated table: `r, x1_lower, x1_upper, ...`, 10 decimals.
pub fn plot_table(candidate: &SolutionCandidate, grid: &RGrid) -> String {
    let n = candidate.n();
    let mut out = String::from("r");
    for i in 0..n {
        let name = variable_name(i);
        write!(out, ",{name}_lower,{name}_upper").unwrap();
    }
    out.push('\n');
    for &r in grid.points() {
        out.push_str(&fixed(r));
        for i in 0..n {
            let (lo, up) = candidate.eval(i, r).expect("grid points lie in [0, 1]");
            write!(out, ",{},{}", fixed(lo), fixed(up)).unwrap();
        }
        out.push('\n');
    }
    out
}
