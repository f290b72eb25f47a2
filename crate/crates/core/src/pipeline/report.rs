use std::fmt::Write as _;

use serde::Serialize;

use super::input::InputDoc;
use crate::algebra::{EmptinessCertificate, Outcome, Unresolved};
use crate::construct::LogFVerdict;
use crate::poly::Chart;
use crate::scalar::Rational;
use crate::QPolynomial;

pub const SCHEMA_VERSION: u32 = 1;

/// Ideal generators rendered in ascending degrevlex order of leading terms.
pub fn render_ideal(chart: &Chart, ideal: &[QPolynomial]) -> Vec<String> {
    let mut sorted: Vec<&QPolynomial> = ideal.iter().collect();
    sorted.sort_by(|a, b| a.leading_term().map(|t| t.0).cmp(&b.leading_term().map(|t| t.0)));
    sorted.into_iter().map(|p| chart.render(p)).collect()
}

pub fn render_point(x: &[Rational]) -> Vec<String> {
    x.iter().map(|c| c.to_string()).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct UnresolvedReport {
    pub reason: String,
    pub ideal: Vec<String>,
}

impl UnresolvedReport {
    pub fn new(chart: &Chart, u: &Unresolved) -> Self {
        UnresolvedReport {
            reason: u.reason.clone(),
            ideal: render_ideal(chart, &u.ideal),
        }
    }
}

pub fn render_certificate(chart: &Chart, c: &EmptinessCertificate) -> String {
    match c {
        EmptinessCertificate::UnitIdeal => "unit ideal".into(),
        EmptinessCertificate::Positive(p) => format!("positive element {}", chart.render(p)),
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct OptionsEcho {
    pub max_degree: u32,
    pub samples: usize,
    pub seed: u64,
    pub skip_jacobi: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IsotropyReport {
    pub generators: Vec<String>,
    pub generic_dim: usize,
    /// Ideal of points where the isotropy dimension exceeds the generic one.
    pub jump_ideal: Vec<String>,
    pub dim_at_origin: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AlmostRegularReport {
    pub outcome: Outcome,
    pub certificate: Option<String>,
    pub distribution_rank: Option<usize>,
    pub distribution: Vec<String>,
    pub distribution_source: Option<String>,
    pub witness: Option<Vec<String>>,
    pub witness_rank: Option<usize>,
    pub generic_rank: Option<usize>,
    pub unresolved: Option<UnresolvedReport>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DistributionCheckReport {
    /// `constructed` or `declared`.
    pub subject: String,
    pub involutive: Outcome,
    pub poisson_leaves: Outcome,
    pub constant_rank: Outcome,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LogFReport {
    pub verdict: LogFVerdict,
    pub g: Option<String>,
    pub s: Option<String>,
    pub z_ideal: Vec<String>,
    pub z_sing_ideal: Vec<String>,
    pub transversality: Option<Outcome>,
    pub z_sing_empty: Option<Outcome>,
    pub unresolved: Option<UnresolvedReport>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TraceReport {
    pub x0: Vec<f64>,
    pub steps: usize,
    pub dt: f64,
    pub final_point: Vec<f64>,
    pub initial_dimension: usize,
    pub dimension: usize,
    pub length: f64,
    /// Largest relative drift of each reported Casimir, in order.
    pub casimir_drift: Vec<f64>,
}

/// Everything one analysis produced. Deterministic for fixed options.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: InputDoc,
    pub options: OptionsEcho,
    /// `verified` or `skipped`.
    pub jacobi: String,
    pub bivector: String,
    pub k: usize,
    pub top_power: String,
    pub regular_ideal: Vec<String>,
    pub isotropy: IsotropyReport,
    pub almost_regular: AlmostRegularReport,
    pub distribution_check: Option<DistributionCheckReport>,
    pub logf: LogFReport,
    pub casimirs: Vec<String>,
    pub trace: Option<TraceReport>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    /// `2` when a decision stayed open, else `0`.
    pub fn exit_code(&self) -> i32 {
        let open = self.almost_regular.outcome == Outcome::Inconclusive
            || self.logf.verdict == LogFVerdict::Inconclusive
            || self.distribution_check.as_ref().is_some_and(|d| {
                [d.involutive, d.poisson_leaves, d.constant_rank].contains(&Outcome::Inconclusive)
            });
        if open {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let list = |v: &[String]| format!("[{}]", v.join(", "));
        let outcome = |o: Outcome| serde_json::to_value(o).unwrap().as_str().unwrap().to_string();
        let _ = writeln!(s, "coordinates: {}", list(&self.input.coordinates));
        let _ = writeln!(s, "bivector: {}", self.bivector);
        let _ = writeln!(s, "jacobi: {}", self.jacobi);
        let _ = writeln!(s, "k: {}", self.k);
        let _ = writeln!(s, "top power: {}", self.top_power);
        let _ = writeln!(s, "regular-locus ideal: {}", list(&self.regular_ideal));
        let iso = &self.isotropy;
        let _ = writeln!(s, "isotropy kernel: {}", list(&iso.generators));
        let _ = writeln!(
            s,
            "isotropy dimension: generic {}, at origin {}, jump-locus ideal {}",
            iso.generic_dim,
            iso.dim_at_origin,
            list(&iso.jump_ideal)
        );
        let ar = &self.almost_regular;
        let _ = writeln!(s, "almost regular: {}", outcome(ar.outcome));
        if let Some(c) = &ar.certificate {
            let _ = writeln!(s, "  certificate: {c}");
        }
        if let Some(r) = ar.distribution_rank {
            let _ = writeln!(s, "  D (rank {r}): {}", list(&ar.distribution));
        }
        if let Some(src) = &ar.distribution_source {
            let _ = writeln!(s, "  D source: {src}");
        }
        if let Some(w) = &ar.witness {
            let _ = writeln!(
                s,
                "  witness: ({}) with isotropy rank {} against generic {}",
                w.join(", "),
                ar.witness_rank.unwrap_or(0),
                ar.generic_rank.unwrap_or(0)
            );
        }
        if let Some(u) = &ar.unresolved {
            let _ = writeln!(s, "  unresolved: {} on {}", u.reason, list(&u.ideal));
        }
        if let Some(d) = &self.distribution_check {
            let _ = writeln!(
                s,
                "distribution check ({}): involutive {}, Poisson leaves {}, constant rank {}",
                d.subject,
                outcome(d.involutive),
                outcome(d.poisson_leaves),
                outcome(d.constant_rank)
            );
            for line in &d.details {
                let _ = writeln!(s, "  {line}");
            }
        }
        let lf = &self.logf;
        let verdict = serde_json::to_value(lf.verdict).unwrap().as_str().unwrap().to_string();
        let _ = writeln!(s, "log-f classification: {verdict}");
        if let Some(g) = &lf.g {
            let _ = writeln!(s, "  g: {g}");
        }
        if let Some(v) = &lf.s {
            let _ = writeln!(s, "  s: {v}");
        }
        if lf.g.is_some() {
            let _ = writeln!(s, "  Z ideal: {}", list(&lf.z_ideal));
            let _ = writeln!(s, "  Z_sing ideal: {}", list(&lf.z_sing_ideal));
        }
        if let Some(t) = lf.transversality {
            let _ = writeln!(s, "  transversality (Z ∩ {{dg = 0}} empty): {}", outcome(t));
        }
        if let Some(z) = lf.z_sing_empty {
            let _ = writeln!(s, "  Z_sing empty: {}", outcome(z));
        }
        if let Some(u) = &lf.unresolved {
            let _ = writeln!(s, "  unresolved: {} on {}", u.reason, list(&u.ideal));
        }
        let _ = writeln!(s, "nonconstant casimirs up to degree {}: {}", self.options.max_degree, list(&self.casimirs));
        if let Some(t) = &self.trace {
            let _ = writeln!(
                s,
                "trace: {} steps of {} from {:?} to {:?}, length {:.6e}, leaf dimension {} (initial {})",
                t.steps, t.dt, t.x0, t.final_point, t.length, t.dimension, t.initial_dimension
            );
            for (c, d) in self.casimirs.iter().zip(&t.casimir_drift) {
                let _ = writeln!(s, "  drift of {c}: {d:.3e}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}
