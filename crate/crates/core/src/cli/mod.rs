//! Command-line driver: configuration, orchestration of the constructions and
//! report emission.

mod config;
mod report;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{AiCase, FieldCtx, FiniteActionGroup};
use crate::cog::{
    build_chamber_scwol, first_betti_number, presentation_over_cone, CoveringCertificate, Presentation, Scwol,
    TargetComplex,
};
use crate::constructions::{
    bourdon_hypotheses, build_bourdon_surface, build_fp, build_ra_chamber_transitive, build_ra_two_orbit,
    fp_hypotheses, ra_chamber_transitive_hypotheses, ra_two_orbit_hypotheses, surface_subgroup_hypothesis, Bourdon,
    ConstructionKind, FpOutcome, RaChamberTransitive, RaTwoOrbit, SurfaceSubgroupReport,
};
use crate::coxeter::{spherical_subsets, subset_elements, subset_label, Subset};
use crate::error::{Error, Result};
use crate::residues::residue_type_name;

pub use config::{format_partition, parse_partition, RunConfig};
pub use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Hypotheses only.
    Check,
    /// Construction and statistics, without the certificate.
    Build,
    /// Construction, statistics and certificate.
    Verify,
    ExportDot,
    PrintPresentation,
}

/// Outcome taxonomy; each maps to one exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// Only counts are available (no residue geometry for some factor).
    CountingOnly,
    Fail,
    HypothesisRejected,
    BudgetExhausted,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::CountingOnly => "counting_only",
            Status::Fail => "fail",
            Status::HypothesisRejected => "hypothesis_rejected",
            Status::BudgetExhausted => "budget_exhausted",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::CountingOnly => 0,
            Status::Error => 1,
            Status::Fail => 2,
            Status::HypothesisRejected => 3,
            Status::BudgetExhausted => 4,
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::Hypothesis(_) => Status::HypothesisRejected,
            Error::BudgetExhausted(_) | Error::CapExceeded { .. } => Status::BudgetExhausted,
            _ => Status::Error,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub status: Status,
    /// `(file name, contents)` of DOT exports.
    pub dot: Vec<(String, String)>,
}

enum Built {
    Ra1(RaChamberTransitive),
    Ra2(RaTwoOrbit),
    Bourdon(Box<Bourdon>),
    Fp(FpOutcome),
    Surface(SurfaceSubgroupReport),
}

fn kv(k: impl Into<String>, v: impl ToString) -> (String, String) {
    (k.into(), v.to_string())
}

fn one_based_list(v: &[usize]) -> String {
    v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn hypotheses(cfg: &RunConfig, field: &FieldCtx) -> (Vec<(String, String)>, Result<()>) {
    let a = &cfg.cartan;
    let m = a.coxeter_matrix();
    let km = a.km_condition();
    let mut out = vec![
        kv("rank", a.n()),
        kv("q", field.q()),
        kv("finite_group_case", AiCase::for_field(field).name()),
        kv("cartan_condition", if km.holds { "holds" } else { "fails" }),
        kv("right_angled", m.is_right_angled()),
        kv("weyl_group_infinite", m.is_weyl_infinite()),
        kv("spherical_subsets", spherical_subsets(&m).len()),
    ];
    let verdict = match cfg.construction {
        ConstructionKind::RaChamberTransitive => ra_chamber_transitive_hypotheses(a, field).map(|_| ()),
        ConstructionKind::RaTwoOrbit => ra_two_orbit_hypotheses(a, field),
        ConstructionKind::BourdonSurface => bourdon_hypotheses(a, field, cfg.faces, cfg.genus).map(|(f, g)| {
            out.push(kv("F", f));
            out.push(kv("genus", g));
        }),
        ConstructionKind::FpFree => fp_hypotheses(a, cfg.partition.as_deref()).map(|comps| {
            out.push(kv("components", comps.len()));
            for (k, &c) in comps.iter().enumerate() {
                out.push(kv(
                    format!("component.{}", k + 1),
                    format!("{} {}", subset_label(c), residue_type_name(&m, c)),
                ));
            }
        }),
        ConstructionKind::SurfaceSubgroup => {
            if m.is_right_angled() {
                Ok(())
            } else {
                Err(Error::Hypothesis("Weyl group is not right-angled".into()))
            }
        }
    };
    match &verdict {
        Ok(()) => out.push(kv("status", "ok")),
        Err(e) => {
            out.push(kv("status", "rejected"));
            out.push(kv("reason", e));
        }
    }
    (out, verdict)
}

fn build(cfg: &RunConfig, field: Arc<FieldCtx>) -> Result<Built> {
    let a = &cfg.cartan;
    Ok(match cfg.construction {
        ConstructionKind::RaChamberTransitive => Built::Ra1(build_ra_chamber_transitive(a, field, cfg.cap)?),
        ConstructionKind::RaTwoOrbit => Built::Ra2(build_ra_two_orbit(a, field, cfg.cap)?),
        ConstructionKind::BourdonSurface => {
            Built::Bourdon(Box::new(build_bourdon_surface(a, field, cfg.faces, cfg.genus, cfg.budget, cfg.cap)?))
        }
        ConstructionKind::FpFree => Built::Fp(build_fp(a, field, cfg.partition.as_deref(), cfg.cap)?),
        ConstructionKind::SurfaceSubgroup => {
            let orders = (field.p() == 2).then(|| vec![field.q() as usize + 1; a.n()]);
            Built::Surface(surface_subgroup_hypothesis(a, orders.as_deref(), cfg.budget)?)
        }
    })
}

fn orbit_sizes(g: &FiniteActionGroup, points: usize) -> String {
    let mut sizes: Vec<usize> = g.orbits_on(&(0..points).collect::<Vec<_>>()).iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn group_stats(out: &mut Vec<(String, String)>, groups: &[(Subset, &FiniteActionGroup)]) {
    for &(ty, g) in groups {
        out.push(kv(format!("order.A{}", subset_label(ty)), g.order()));
    }
}

fn statistics(built: &Built) -> Vec<(String, String)> {
    let mut out = Vec::new();
    match built {
        Built::Ra1(r) => {
            let s = r.target.scwol();
            out.push(kv("case", r.case.name()));
            let groups: Vec<(Subset, &FiniteActionGroup)> =
                (0..s.vertex_count()).map(|v| (s.vertex_type(v), r.complex.group(v))).collect();
            group_stats(&mut out, &groups);
            for v in 0..s.vertex_count() {
                let t = s.vertex_type(v);
                if t.count_ones() == 1 {
                    let model = r.target.model(v);
                    out.push(kv(
                        format!("orbits.A{}", subset_label(t)),
                        orbit_sizes(r.complex.group(v), model.chamber_count()),
                    ));
                }
            }
            for c in &r.conditions {
                out.push(kv(format!("condition.{}", c.name.replace(' ', "_")), format!("{}/{}", c.actual, c.expected)));
            }
            out.push(kv("conditions", if r.conditions_hold() { "hold" } else { "fail" }));
            out.push(kv("covolume", r.complex.covolume()));
        }
        Built::Ra2(r) => {
            let s = r.complex.scwol();
            out.push(kv("vertices", s.vertex_count()));
            out.push(kv("edges", s.edge_count()));
            for v in 0..s.vertex_count() {
                let t = s.vertex_type(v);
                if t != 0 {
                    let g = r.complex.group(v);
                    out.push(kv(format!("order.A{}", subset_label(t)), g.order()));
                    out.push(kv(
                        format!("orbits.A{}", subset_label(t)),
                        orbit_sizes(g, r.target.model(r.morphism.vertex_map[v]).chamber_count()),
                    ));
                }
            }
            for (i, g) in r.g.iter().enumerate() {
                let m = g.mats[0];
                out.push(kv(format!("g.{}", i + 1), format!("[{} {}; {} {}]", m.a, m.b, m.c, m.d)));
            }
            out.push(kv("covolume", r.complex.covolume()));
        }
        Built::Bourdon(b) => {
            let s = &b.surface;
            out.push(kv("F", b.faces));
            out.push(kv("genus", b.genus));
            out.push(kv("surface_vertices", s.vertex_count()));
            out.push(kv("surface_edges", s.edge_count()));
            out.push(kv("surface_faces", s.face_count()));
            out.push(kv("euler_characteristic", s.euler_characteristic()));
            out.push(kv("geodesics", s.geodesics().len()));
            out.push(kv("geodesic_types", one_based_list(&s.geodesics().iter().map(|g| g.ty).collect::<Vec<_>>())));
            out.push(kv(
                "orientation",
                b.orientation.iter().map(|e| if *e > 0 { "+" } else { "-" }).collect::<Vec<_>>().join(" "),
            ));
            out.push(kv("homology", "sum of oriented geodesics bounds"));
            out.push(kv("search_nodes", b.nodes));
            out.push(kv("rejected_tessellations", b.rejected));
            let ys = b.complex.scwol();
            let mut by_type = std::collections::BTreeMap::new();
            for v in 0..ys.vertex_count() {
                let t = ys.vertex_type(v);
                by_type.entry((t.count_ones(), subset_elements(t))).or_insert((t, b.complex.group(v)));
            }
            let groups: Vec<(Subset, &FiniteActionGroup)> = by_type.into_values().collect();
            group_stats(&mut out, &groups);
            for (i, g) in b.g.iter().enumerate() {
                let m = g.mats[0];
                out.push(kv(format!("g.{}", i + 1), format!("[{} {}; {} {}]", m.a, m.b, m.c, m.d)));
            }
            out.push(kv("complex_vertices", ys.vertex_count()));
            out.push(kv("complex_edges", ys.edge_count()));
            out.push(kv("covolume", b.complex.covolume()));
        }
        Built::Fp(o) => {
            out.push(kv("mode", if o.is_geometric() { "geometric" } else { "counting_only" }));
            for (k, &c) in o.components.iter().enumerate() {
                out.push(kv(
                    format!("factor.{}", k + 1),
                    format!("{} {} {}", subset_label(c), o.residue_types[k], o.residue_kinds[k].name()),
                ));
            }
            out.push(kv("m", o.m.iter().map(u128::to_string).collect::<Vec<_>>().join(" ")));
            out.push(kv("M", o.chambers));
            out.push(kv("M_k", o.copies.iter().map(u128::to_string).collect::<Vec<_>>().join(" ")));
            out.push(kv("free_rank_formula", o.formula_rank));
            if let Some(g) = &o.geometry {
                out.push(kv("free_rank", g.free_rank));
                out.push(kv("free_rank_agrees", g.free_rank as i128 == o.formula_rank));
                out.push(kv("complex_vertices", g.scwol.vertex_count()));
                out.push(kv("complex_edges", g.scwol.edge_count()));
            }
            out.push(kv("covolume", o.chambers));
        }
        Built::Surface(r) => {
            out.push(kv("cycle", r.cycle.as_ref().map_or("none".to_string(), |c| one_based_list(c))));
            out.push(kv("exhaustive", r.exhaustive));
            out.push(kv("search_nodes", r.nodes));
        }
    }
    out
}

fn certificate_entries(c: &CoveringCertificate, src: &Scwol, dst: &Scwol) -> Vec<(String, String)> {
    let mut out = vec![
        kv("verdict", c.verdict.as_str()),
        kv("checks", c.tallies.len()),
        kv("bijective_checks", c.tallies.iter().filter(|t| t.bijective).count()),
        kv("witnesses", c.witnesses.len()),
    ];
    for (k, t) in c.tallies.iter().enumerate() {
        let (i, j) = dst.edge(t.b);
        out.push(kv(
            format!("check.{}", k + 1),
            format!(
                "{} {}->{} fibres={} domain={} image={} index={} {}",
                src.name(t.sigma),
                dst.name(i),
                dst.name(j),
                t.fibres,
                t.domain,
                t.image,
                t.target_index,
                if t.bijective { "bijective" } else { "not_bijective" }
            ),
        ));
    }
    for (k, w) in c.witnesses.iter().enumerate() {
        out.push(kv(format!("witness.{}", k + 1), w.describe(src, dst)));
    }
    out
}

fn certificate_of(built: &Built) -> Option<(&CoveringCertificate, &Scwol, &Scwol)> {
    match built {
        Built::Ra1(r) => Some((&r.certificate, r.complex.scwol(), r.target.scwol())),
        Built::Ra2(r) => Some((&r.certificate, r.complex.scwol(), r.target.scwol())),
        Built::Bourdon(b) => Some((&b.certificate, b.complex.scwol(), b.target.scwol())),
        Built::Fp(o) => o.geometry.as_ref().map(|g| (&g.certificate, &g.scwol, &g.target)),
        Built::Surface(_) => None,
    }
}

fn source_scwol(built: &Built) -> Option<&Scwol> {
    match built {
        Built::Ra1(r) => Some(r.complex.scwol()),
        Built::Ra2(r) => Some(r.complex.scwol()),
        Built::Bourdon(b) => Some(b.complex.scwol()),
        Built::Fp(o) => o.geometry.as_ref().map(|g| &g.scwol),
        Built::Surface(_) => None,
    }
}

fn letters(n: usize) -> Vec<String> {
    (0..n).map(|i| if n <= 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{}", i + 1) }).collect()
}

/// Presentation of the fundamental group, where one is available.
fn presentation(built: &Built) -> Result<String> {
    match built {
        Built::Ra1(r) => Ok(presentation_over_cone(&r.complex)?.to_string()),
        Built::Ra2(r) => {
            // a graph of groups with trivial edge groups: the free product of
            // the vertex groups and a free group of rank b_1(Y)
            let s = r.complex.scwol();
            let mirrors: Vec<usize> = (0..s.vertex_count()).filter(|&v| s.vertex_type(v) != 0).collect();
            let mut generators = letters(mirrors.len());
            let mut relators = Vec::new();
            for (k, &v) in mirrors.iter().enumerate() {
                let g = r.complex.group(v);
                if !g.is_cyclic() {
                    return Err(Error::Unsupported("non-cyclic vertex group".into()));
                }
                relators.push(vec![(k, g.order() as i64)]);
            }
            for t in 0..first_betti_number(s)? {
                generators.push(format!("t{}", t + 1));
            }
            Ok(Presentation { generators, relators }.to_string())
        }
        Built::Fp(o) => {
            let rank = match &o.geometry {
                Some(g) => g.free_rank,
                None => usize::try_from(o.formula_rank).map_err(|_| Error::Overflow)?,
            };
            Ok(Presentation { generators: (1..=rank).map(|i| format!("x{i}")).collect(), relators: Vec::new() }
                .to_string())
        }
        Built::Surface(r) => {
            r.presentation.clone().ok_or_else(|| Error::Unsupported("no induced cycle of length at least 5".into()))
        }
        Built::Bourdon(_) => Err(Error::Unsupported("no presentation is emitted for the surface construction".into())),
    }
}

/// Runs one command on a configuration. Never panics on bad input; every
/// failure is reported with its status.
pub fn execute(cmd: Command, cfg: &RunConfig) -> Outcome {
    let mut report = Report::default();
    report.section("config", cfg.entries());
    let mut dot = Vec::new();
    let finish = |mut report: Report, status: Status, message: Option<String>, dot| {
        let mut o = vec![kv("status", status.name()), kv("exit_code", status.exit_code())];
        if let Some(m) = message {
            o.push(kv("message", m));
        }
        report.section("outcome", o);
        Outcome { report, status, dot }
    };
    let field = match FieldCtx::new(cfg.p, cfg.h) {
        Ok(f) => Arc::new(f),
        Err(e) => return finish(report, Status::Error, Some(e.to_string()), dot),
    };
    if cmd == Command::ExportDot {
        let k = build_chamber_scwol(&spherical_subsets(&cfg.cartan.coxeter_matrix()));
        dot.push(("chamber.dot".to_string(), k.to_dot("chamber")));
    }
    let (hyp, verdict) = hypotheses(cfg, &field);
    report.section("hypotheses", hyp);
    if let Err(e) = verdict {
        return finish(report, Status::of_error(&e), Some(e.to_string()), dot);
    }
    if cmd == Command::Check {
        return finish(report, Status::Pass, None, dot);
    }
    let built = match build(cfg, field) {
        Ok(b) => b,
        Err(e) => return finish(report, Status::of_error(&e), Some(e.to_string()), dot),
    };
    report.section("statistics", statistics(&built));
    if cmd == Command::ExportDot {
        if let Some(s) = source_scwol(&built) {
            dot.push(("complex.dot".to_string(), s.to_dot("complex")));
        }
    }
    let mut status = match &built {
        Built::Fp(o) if !o.is_geometric() => Status::CountingOnly,
        _ => Status::Pass,
    };
    match cmd {
        Command::Verify => {
            if let Some((c, src, dst)) = certificate_of(&built) {
                report.section("certificate", certificate_entries(c, src, dst));
                if !c.passed() {
                    status = Status::Fail;
                }
            }
        }
        Command::PrintPresentation => match presentation(&built) {
            Ok(p) => report.section("presentation", vec![kv("presentation", p)]),
            Err(e) => return finish(report, Status::of_error(&e), Some(e.to_string()), dot),
        },
        _ => {}
    }
    finish(report, status, None, dot)
}

#[derive(Debug, Parser)]
#[command(
    name = "kmlattice",
    version,
    about = "Build and certify cocompact lattices in Kac-Moody groups over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Check the hypotheses of the configured construction
    Check(Common),
    /// Build the construction and report statistics
    Build(Common),
    /// Build and certify the covering
    Verify(Common),
    /// Write the chamber scwol and the quotient scwol as DOT
    ExportDot(Common),
    /// Print a presentation of the lattice
    PrintPresentation(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Configuration file (`key = value` lines, or a previous report)
    #[arg(long)]
    config: PathBuf,
    /// Directory for report.txt, timing.txt and DOT files
    #[arg(long)]
    out: Option<PathBuf>,
    /// Search budget in backtracking nodes (overrides the config)
    #[arg(long)]
    budget: Option<u64>,
    /// Group order cap (overrides the config)
    #[arg(long)]
    cap: Option<usize>,
    /// Also write DOT files for verify and build
    #[arg(long)]
    dot: bool,
    /// Refuse nondeterministic fallbacks (all code paths are deterministic)
    #[arg(long)]
    seedless: bool,
}

/// Entry point of the binary; returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let (cmd, common) = match cli.command {
        Sub::Check(c) => (Command::Check, c),
        Sub::Build(c) => (Command::Build, c),
        Sub::Verify(c) => (Command::Verify, c),
        Sub::ExportDot(c) => (Command::ExportDot, c),
        Sub::PrintPresentation(c) => (Command::PrintPresentation, c),
    };
    let _ = common.seedless;
    let text = match fs::read_to_string(&common.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", common.config.display());
            return 1;
        }
    };
    let mut cfg = match RunConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", common.config.display());
            return 1;
        }
    };
    if let Some(b) = common.budget {
        cfg.budget = b;
    }
    if let Some(c) = common.cap {
        cfg.cap = c;
    }
    let start = Instant::now();
    let mut outcome = execute(cmd, &cfg);
    let elapsed = start.elapsed();
    if common.dot && outcome.dot.is_empty() && matches!(cmd, Command::Build | Command::Verify) {
        outcome.dot = execute(Command::ExportDot, &cfg).dot;
    }
    let text = outcome.report.to_string();
    print!("{text}");
    if let Some(dir) = &common.out {
        let written = fs::create_dir_all(dir)
            .and_then(|_| fs::write(dir.join("report.txt"), &text))
            .and_then(|_| fs::write(dir.join("timing.txt"), format!("elapsed_ms = {}\n", elapsed.as_millis())))
            .and_then(|_| outcome.dot.iter().try_for_each(|(name, body)| fs::write(dir.join(name), body)));
        if let Err(e) = written {
            eprintln!("error: cannot write to {}: {e}", dir.display());
            return 1;
        }
    } else if !outcome.dot.is_empty() {
        for (name, body) in &outcome.dot {
            println!("# {name}");
            print!("{body}");
        }
    }
    outcome.status.exit_code()
}
