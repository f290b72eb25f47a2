use num_traits::Zero;

use super::input::InputDoc;
use super::report::*;
use crate::algebra::{Submodule, Verdict, WitnessSearch};
use crate::construct::logf_classify;
use crate::error::Result;
use crate::poisson::{DistributionPresentation, DistributionSource, PoissonStructure, TopPower};
use crate::scalar::Rational;
use crate::trace::trace_leaf;

/// Pipeline options.
#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub max_degree: u32,
    pub search: WitnessSearch,
    pub skip_jacobi: bool,
    pub trace: Option<TraceRequest>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_degree: 4,
            search: WitnessSearch::default(),
            skip_jacobi: false,
            trace: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRequest {
    pub x0: Vec<f64>,
    pub steps: usize,
    pub dt: f64,
}

const POLYNOMIAL_KERNEL_NOTE: &str = "isotropy and D are computed from polynomial 1-forms and vector fields on this chart; \
     smooth germs could in principle enlarge the kernel where the polynomial module does not see it";

/// Runs Jacobi check, top power, germinal isotropy, almost-regularity,
/// distribution verification, log-f classification and the Casimir search.
pub fn analyze(doc: &InputDoc, opts: &Options) -> Result<AnalysisReport> {
    let input = doc.canonical()?;
    let bivector = doc.bivector()?;
    let pi = if opts.skip_jacobi {
        PoissonStructure::unchecked(bivector)?
    } else {
        PoissonStructure::new(bivector)?
    };
    let chart = pi.chart().clone();
    let n = pi.dim();
    let search = &opts.search;

    let top_power = match pi.top_power() {
        Ok(t) => t.power.display(),
        Err(_) => "0".into(),
    };

    let iso = pi.germinal_isotropy();
    let isotropy = IsotropyReport {
        generators: iso.generators().iter().map(|g| g.display()).collect(),
        generic_dim: iso.generic_dim(),
        jump_ideal: render_ideal(&chart, iso.drop_ideal()),
        dim_at_origin: iso.dim_at(&vec![Rational::zero(); n]),
    };

    let decision = pi.almost_regular_decide(search);
    let mut almost_regular = AlmostRegularReport {
        outcome: decision.outcome(),
        certificate: None,
        distribution_rank: None,
        distribution: Vec::new(),
        distribution_source: None,
        witness: None,
        witness_rank: None,
        generic_rank: None,
        unresolved: None,
    };
    let mut constructed = None;
    match &decision {
        Verdict::Yes(ar) => {
            let d = &ar.distribution;
            almost_regular.certificate = Some(render_certificate(&chart, &ar.certificate));
            almost_regular.distribution_rank = Some(d.rank());
            almost_regular.distribution = d.generators().iter().map(|v| v.display()).collect();
            almost_regular.distribution_source = Some(match d.source() {
                DistributionSource::Constructed {
                    saturation_exponent,
                    constructions_agree,
                } => format!(
                    "annihilator of the isotropy kernel; saturation of the Hamiltonian module by the regular-locus ideal {} after {} step(s)",
                    if *constructions_agree { "agrees" } else { "DISAGREES" },
                    saturation_exponent
                ),
                DistributionSource::Zero => "zero bivector".into(),
                DistributionSource::Declared => "declared".into(),
            });
            constructed = Some(d.clone());
        }
        Verdict::No(jump) => {
            almost_regular.witness = Some(render_point(&jump.point));
            almost_regular.witness_rank = Some(jump.rank);
            almost_regular.generic_rank = Some(jump.generic_rank);
        }
        Verdict::Inconclusive(u) => almost_regular.unresolved = Some(UnresolvedReport::new(&chart, u)),
    }

    let declared = doc
        .declared()?
        .map(|(rank, gens)| DistributionPresentation::declared(&chart, rank, gens));
    let subject = match (&declared, &constructed) {
        (Some(d), _) => Some(("declared", d)),
        (None, Some(d)) => Some(("constructed", d)),
        _ => None,
    };
    let distribution_check = subject.map(|(name, d)| {
        let check = pi.verify_distribution(d, search);
        let mut details = Vec::new();
        match &check.involutive {
            Verdict::No(ni) => details.push(format!(
                "bracket of generators {} and {} leaves D: {}",
                ni.pair.0,
                ni.pair.1,
                ni.bracket.display()
            )),
            Verdict::Inconclusive(u) => details.push(format!("involutivity: {}", u.reason)),
            Verdict::Yes(()) => {}
        }
        match &check.poisson_leaves {
            Verdict::No(nt) => details.push(format!(
                "Hamiltonian field of {} is not in D (normal form [{}])",
                chart.names()[nt.column],
                nt.normal_form.iter().map(|p| chart.render(p)).collect::<Vec<_>>().join(", ")
            )),
            Verdict::Inconclusive(u) => details.push(format!("tangency: {}", u.reason)),
            Verdict::Yes(_) => {}
        }
        match &check.constant_rank {
            Verdict::No(j) => details.push(format!(
                "rank {} at ({}) against {}",
                j.rank,
                render_point(&j.point).join(", "),
                j.generic_rank
            )),
            Verdict::Inconclusive(u) => details.push(format!(
                "constant rank: {} on [{}]",
                u.reason,
                render_ideal(&chart, &u.ideal).join(", ")
            )),
            Verdict::Yes(_) => {}
        }
        DistributionCheckReport {
            subject: name.into(),
            involutive: check.involutive.outcome(),
            poisson_leaves: check.poisson_leaves.outcome(),
            constant_rank: check.constant_rank.outcome(),
            details,
        }
    });

    let lf = logf_classify(&pi, search);
    let logf = LogFReport {
        verdict: lf.verdict,
        g: lf.g.as_ref().map(|g| chart.render(g)),
        s: lf.s.as_ref().map(|s| s.display()),
        z_ideal: render_ideal(&chart, &lf.z_ideal),
        z_sing_ideal: render_ideal(&chart, &lf.z_sing_ideal),
        transversality: lf.transversality.as_ref().map(|v| v.outcome()),
        z_sing_empty: lf.z_sing_empty.as_ref().map(|v| v.outcome()),
        unresolved: lf.unresolved.as_ref().map(|u| UnresolvedReport::new(&chart, u)),
    };

    let casimir_polys = pi.casimirs(opts.max_degree);
    let casimir_polys: Vec<_> = casimir_polys.into_iter().filter(|c| !c.is_constant()).collect();
    let casimirs = casimir_polys.iter().map(|c| chart.render(c)).collect();

    let trace = match &opts.trace {
        Some(req) => {
            let tr = trace_leaf(&pi, &req.x0, &[], req.steps, req.dt)?;
            Some(TraceReport {
                x0: req.x0.clone(),
                steps: req.steps,
                dt: req.dt,
                final_point: tr.points.last().cloned().unwrap_or_default(),
                initial_dimension: tr.initial_dimension,
                dimension: tr.dimension,
                length: tr.length,
                casimir_drift: casimir_polys.iter().map(|c| tr.max_relative_drift(c)).collect(),
            })
        }
        None => None,
    };

    let mut notes = vec![
        POLYNOMIAL_KERNEL_NOTE.to_string(),
        format!("the regular locus is dense: {}", TopPower::DENSITY_RATIONALE),
        format!(
            "real zero sets are shown nonempty only by exact rational witnesses ({} samples, seed {})",
            search.samples, search.seed
        ),
    ];
    if opts.skip_jacobi {
        notes.push("the Jacobi identity was not checked; results assume it holds".into());
    }

    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        input,
        options: OptionsEcho {
            max_degree: opts.max_degree,
            samples: search.samples,
            seed: search.seed,
            skip_jacobi: opts.skip_jacobi,
        },
        jacobi: if pi.jacobi_verified() { "verified" } else { "skipped" }.into(),
        bivector: pi.bivector().display(),
        k: pi.k(),
        top_power,
        regular_ideal: render_ideal(&chart, &reduced(n, pi.regular_ideal())),
        isotropy,
        almost_regular,
        distribution_check,
        logf,
        casimirs,
        trace,
        notes,
    })
}

fn reduced(n: usize, gens: &[crate::QPolynomial]) -> Vec<crate::QPolynomial> {
    Submodule::ideal(n, gens.iter().cloned())
        .groebner_basis()
        .iter()
        .map(|v| v[0].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Outcome;
    use crate::construct::LogFVerdict;
    use crate::pipeline::parse_input;

    #[test]
    fn symplectic_plane_is_regular() {
        let doc = parse_input(r#"{"coordinates": ["x","y"], "bivector": [{"i":0,"j":1,"coeff":"1"}]}"#).unwrap();
        let r = analyze(&doc, &Options::default()).unwrap();
        assert_eq!(r.k, 1);
        assert_eq!(r.almost_regular.outcome, Outcome::Yes);
        assert_eq!(r.logf.verdict, LogFVerdict::Regular);
        assert_eq!(r.logf.z_ideal, vec!["1"]);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn jacobi_failure_is_an_error() {
        let doc = parse_input(
            r#"{"coordinates": ["x","y","z"], "bivector": [{"i":0,"j":1,"coeff":"y"},{"i":1,"j":2,"coeff":"x"}]}"#,
        )
        .unwrap();
        let err = analyze(&doc, &Options::default()).unwrap_err();
        assert!(matches!(err, crate::Error::NotPoisson { .. }), "{err}");
        let skipped = analyze(
            &doc,
            &Options {
                skip_jacobi: true,
                ..Options::default()
            },
        )
        .unwrap();
        assert_eq!(skipped.jacobi, "skipped");
    }
}
