//! Census orchestration: run the colouring pipelines and optional exact
//! oracles over a stream of instances, re-validate every output with the
//! independent validators, and emit line-delimited self-describing
//! records plus a summary.
//!
//! Reports are deterministic: instances are processed in input order,
//! parallel workers only speed up the middle, and wall times are opt-in
//! because they would break byte-identical re-runs.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::codec::emit_digraph6;
use crate::dipath::two_dipath_seven_colouring;
use crate::eight::oriented_eight_colouring;
use crate::error::{Error, Result};
use crate::gen::{all_orientations, bundled_cubic_catalogue, random_cubic_orientation};
use crate::graph::{
    structural_profile, validate_oriented_colouring, validate_two_dipath_colouring, OrientedGraph,
};
use crate::oracle::{
    exact_oriented_chromatic, exact_two_dipath_chromatic, max_clique, OracleConfig,
};

pub const REPORT_SCHEMA: u32 = 1;

/// Where census instances come from.
#[derive(Debug, Clone)]
pub enum InstanceSource {
    /// digraph6 strings, one instance each.
    Explicit(Vec<String>),
    /// Every orientation of every bundled connected cubic graph of the
    /// listed orders.
    Exhaustive { orders: Vec<usize> },
    /// Seeded random cubic orientations; instance i uses seed + i.
    Random { n: usize, count: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub source: InstanceSource,
    pub run_oriented8: bool,
    pub run_dipath7: bool,
    /// Run the exact oracles on instances with at most this many
    /// vertices; None disables them.
    pub oracle_cap: Option<usize>,
    /// Worker threads; 1 means sequential.
    pub jobs: usize,
    /// Include wall-clock fields (breaks byte-identical re-runs).
    pub timings: bool,
}

impl CensusConfig {
    pub fn new(source: InstanceSource) -> Self {
        CensusConfig {
            source,
            run_oriented8: true,
            run_dipath7: true,
            oracle_cap: None,
            jobs: 1,
            timings: false,
        }
    }

    fn validate(&self) -> Result<()> {
        match &self.source {
            InstanceSource::Exhaustive { orders } => {
                for &n in orders {
                    if n < 4 || n % 2 != 0 {
                        return Err(Error::BadOrder(n));
                    }
                }
            }
            InstanceSource::Random { n, .. } => {
                if *n < 4 || *n % 2 != 0 {
                    return Err(Error::BadOrder(*n));
                }
            }
            InstanceSource::Explicit(_) => {}
        }
        if self.jobs == 0 {
            return Err(Error::precondition("jobs must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileSummary {
    pub n: usize,
    pub arcs: usize,
    pub connected: bool,
    pub cubic: bool,
    pub properly_subcubic: bool,
    pub sources: usize,
    pub sinks: usize,
    pub triangles: usize,
    pub cut_arcs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub palette: usize,
    pub case: String,
    /// Verdict of the independent validator, not the pipeline's own.
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_micros: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub chi_o: usize,
    pub chi_2d: usize,
    pub omega_square: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub record: &'static str,
    pub schema: u32,
    pub id: usize,
    pub digraph6: String,
    pub profile: ProfileSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oriented8: Option<PipelineReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dipath7: Option<PipelineReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusSummary {
    pub record: &'static str,
    pub schema: u32,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oriented8_max_palette: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oriented8_argmax: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dipath7_max_palette: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dipath7_argmax: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_chi_o: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_chi_o_argmax: Option<usize>,
    pub validator_failures: usize,
    pub invariant_violations: usize,
}

#[derive(Debug)]
pub struct CensusRun {
    pub reports: Vec<InstanceReport>,
    pub summary: CensusSummary,
}

impl CensusRun {
    pub fn clean(&self) -> bool {
        self.summary.validator_failures == 0 && self.summary.invariant_violations == 0
    }
}

fn collect_instances(source: &InstanceSource) -> Result<Vec<OrientedGraph>> {
    match source {
        InstanceSource::Explicit(lines) => lines
            .iter()
            .map(|l| crate::codec::parse_digraph6(l))
            .collect(),
        InstanceSource::Exhaustive { orders } => {
            let mut out = Vec::new();
            for &n in orders {
                for sq in bundled_cubic_catalogue(n)? {
                    out.extend(all_orientations(&sq));
                }
            }
            Ok(out)
        }
        InstanceSource::Random { n, count, seed } => (0..*count)
            .map(|i| random_cubic_orientation(*n, seed.wrapping_add(i as u64)))
            .collect(),
    }
}

fn process_instance(id: usize, g: &OrientedGraph, cfg: &CensusConfig) -> InstanceReport {
    let profile = structural_profile(g);
    let summary = ProfileSummary {
        n: g.vertex_count(),
        arcs: g.arc_count(),
        connected: profile.connected,
        cubic: g.is_cubic(),
        properly_subcubic: profile.properly_subcubic,
        sources: profile.sources.len(),
        sinks: profile.sinks.len(),
        triangles: profile.triangles.len(),
        cut_arcs: profile.cut_arcs.len(),
    };
    let mut violations = Vec::new();

    let oriented8 = if cfg.run_oriented8 {
        let start = Instant::now();
        match oriented_eight_colouring(g) {
            Ok((col, cert)) => {
                let valid = validate_oriented_colouring(g, &col)
                    .map(|r| r.is_valid())
                    .unwrap_or(false);
                if !valid {
                    violations.push("oriented8: validator rejected the colouring".to_string());
                }
                Some(PipelineReport {
                    palette: col.palette_size(),
                    case: cert.case.tag().to_string(),
                    valid,
                    wall_micros: cfg.timings.then(|| start.elapsed().as_micros() as u64),
                })
            }
            Err(e) => {
                violations.push(format!("oriented8: {e}"));
                None
            }
        }
    } else {
        None
    };

    let dipath7 = if cfg.run_dipath7 {
        let start = Instant::now();
        match two_dipath_seven_colouring(g) {
            Ok((col, cert)) => {
                let valid = validate_two_dipath_colouring(g, &col)
                    .map(|r| r.is_valid())
                    .unwrap_or(false);
                if !valid {
                    violations.push("dipath7: validator rejected the colouring".to_string());
                }
                let case = cert
                    .components
                    .iter()
                    .map(|c| c.tag())
                    .collect::<Vec<_>>()
                    .join("+");
                Some(PipelineReport {
                    palette: col.palette_size(),
                    case,
                    valid,
                    wall_micros: cfg.timings.then(|| start.elapsed().as_micros() as u64),
                })
            }
            Err(e) => {
                violations.push(format!("dipath7: {e}"));
                None
            }
        }
    } else {
        None
    };

    let oracle = match cfg.oracle_cap {
        Some(cap) if g.vertex_count() <= cap => {
            let ocfg = OracleConfig::with_limit(cap);
            let chi_o = exact_oriented_chromatic(g, &ocfg);
            let chi_2d = exact_two_dipath_chromatic(g, &ocfg);
            let omega = max_clique(&crate::dipath::build_square(g), &ocfg);
            match (chi_o, chi_2d, omega) {
                (Ok(a), Ok(b), Ok(c)) => {
                    if a.value < b.value {
                        violations.push(format!(
                            "oracle: chi_o {} below chi_2d {}",
                            a.value, b.value
                        ));
                    }
                    if c.size > b.value {
                        violations.push(format!(
                            "oracle: omega(square) {} above chi_2d {}",
                            c.size, b.value
                        ));
                    }
                    if let Some(p) = &oriented8 {
                        if p.palette < a.value {
                            violations.push(format!(
                                "oracle: oriented8 palette {} below exact chi_o {}",
                                p.palette, a.value
                            ));
                        }
                    }
                    if let Some(p) = &dipath7 {
                        if p.palette < b.value {
                            violations.push(format!(
                                "oracle: dipath7 palette {} below exact chi_2d {}",
                                p.palette, b.value
                            ));
                        }
                    }
                    Some(OracleReport {
                        chi_o: a.value,
                        chi_2d: b.value,
                        omega_square: c.size,
                    })
                }
                (a, b, c) => {
                    for e in [a.err(), b.err(), c.err()].into_iter().flatten() {
                        violations.push(format!("oracle: {e}"));
                    }
                    None
                }
            }
        }
        _ => None,
    };

    InstanceReport {
        record: "instance",
        schema: REPORT_SCHEMA,
        id,
        digraph6: emit_digraph6(g),
        profile: summary,
        oriented8,
        dipath7,
        oracle,
        violations,
    }
}

fn summarize(reports: &[InstanceReport]) -> CensusSummary {
    let mut summary = CensusSummary {
        record: "summary",
        schema: REPORT_SCHEMA,
        instances: reports.len(),
        oriented8_max_palette: None,
        oriented8_argmax: None,
        dipath7_max_palette: None,
        dipath7_argmax: None,
        max_chi_o: None,
        max_chi_o_argmax: None,
        validator_failures: 0,
        invariant_violations: 0,
    };
    for r in reports {
        if let Some(p) = &r.oriented8 {
            if !p.valid {
                summary.validator_failures += 1;
            }
            if summary.oriented8_max_palette.is_none_or(|m| p.palette > m) {
                summary.oriented8_max_palette = Some(p.palette);
                summary.oriented8_argmax = Some(r.id);
            }
        }
        if let Some(p) = &r.dipath7 {
            if !p.valid {
                summary.validator_failures += 1;
            }
            if summary.dipath7_max_palette.is_none_or(|m| p.palette > m) {
                summary.dipath7_max_palette = Some(p.palette);
                summary.dipath7_argmax = Some(r.id);
            }
        }
        if let Some(o) = &r.oracle {
            if summary.max_chi_o.is_none_or(|m| o.chi_o > m) {
                summary.max_chi_o = Some(o.chi_o);
                summary.max_chi_o_argmax = Some(r.id);
            }
        }
        summary.invariant_violations += r.violations.len();
    }
    summary
}

/// Runs a census. Reports come back in input order regardless of the
/// worker count, so identical configurations serialize identically.
pub fn run_census(cfg: &CensusConfig) -> Result<CensusRun> {
    cfg.validate()?;
    let instances = collect_instances(&cfg.source)?;
    let reports: Vec<InstanceReport> = if cfg.jobs <= 1 {
        instances
            .iter()
            .enumerate()
            .map(|(id, g)| process_instance(id, g, cfg))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::precondition(format!("worker pool: {e}")))?;
        pool.install(|| {
            instances
                .par_iter()
                .enumerate()
                .map(|(id, g)| process_instance(id, g, cfg))
                .collect()
        })
    };
    let summary = summarize(&reports);
    Ok(CensusRun { reports, summary })
}

/// Line-delimited JSON: one instance record per line, then the summary.
pub fn write_ndjson(run: &CensusRun, out: &mut impl Write) -> Result<()> {
    for report in &run.reports {
        serde_json::to_writer(&mut *out, report)
            .map_err(|e| Error::MalformedInput(format!("serialize: {e}")))?;
        out.write_all(b"\n")?;
    }
    serde_json::to_writer(&mut *out, &run.summary)
        .map_err(|e| Error::MalformedInput(format!("serialize: {e}")))?;
    out.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_k4_census_is_clean() {
        let cfg = CensusConfig::new(InstanceSource::Exhaustive { orders: vec![4] });
        let run = run_census(&cfg).unwrap();
        assert_eq!(run.reports.len(), 64);
        assert!(run.clean());
        assert!(run.summary.oriented8_max_palette.unwrap() <= 8);
        assert!(run.summary.dipath7_max_palette.unwrap() <= 7);
    }

    #[test]
    fn empty_source_yields_empty_run() {
        let cfg = CensusConfig::new(InstanceSource::Explicit(vec![]));
        let run = run_census(&cfg).unwrap();
        assert!(run.reports.is_empty());
        assert_eq!(run.summary.instances, 0);
        assert!(run.clean());
    }

    #[test]
    fn census_rejects_odd_orders() {
        let cfg = CensusConfig::new(InstanceSource::Exhaustive { orders: vec![5] });
        assert!(matches!(run_census(&cfg), Err(Error::BadOrder(5))));
    }

    #[test]
    fn reruns_are_byte_identical_across_job_counts() {
        let mut cfg = CensusConfig::new(InstanceSource::Random {
            n: 6,
            count: 8,
            seed: 11,
        });
        cfg.oracle_cap = Some(6);
        let mut first = Vec::new();
        write_ndjson(&run_census(&cfg).unwrap(), &mut first).unwrap();
        let mut second = Vec::new();
        write_ndjson(&run_census(&cfg).unwrap(), &mut second).unwrap();
        assert_eq!(first, second);
        cfg.jobs = 4;
        let mut parallel = Vec::new();
        write_ndjson(&run_census(&cfg).unwrap(), &mut parallel).unwrap();
        assert_eq!(first, parallel);
    }

    #[test]
    fn oracle_cap_populates_oracle_fields() {
        let cfg = {
            let mut c = CensusConfig::new(InstanceSource::Exhaustive { orders: vec![4] });
            c.oracle_cap = Some(8);
            c
        };
        let run = run_census(&cfg).unwrap();
        assert!(run.reports.iter().all(|r| r.oracle.is_some()));
        assert!(run.summary.max_chi_o.unwrap() <= 7);
        assert!(run.clean());
    }
}
