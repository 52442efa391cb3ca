mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use quillen_core::complex::SimplicialComplex;
use quillen_core::constructions::{build, catalog_names, GroupSpec};
use quillen_core::group::{prime_factors, Group, Perm, Subgroup, DEFAULT_MAX_ORDER};
use quillen_core::homology::{is_cohen_macaulay, poset_cohen_macaulay, reduced_homology};
use quillen_core::poset::{brown_poset, quillen_poset, quillen_poset_of, SubgroupPoset};
use quillen_core::structure::{
    check_structure, classify, main_theorem_check, omega1_center, p_length_bound_check,
    upper_interval_check, verify_pulkus_welker,
};
use quillen_core::suite::{build_instance, builtin_manifest, run_check, Manifest};
use quillen_core::Error;

use report::{
    AnalysisReport, GroupStats, InstanceResult, Labeled, NodeInfo, PosetSummary, StageTiming,
    SuiteSummary, SylowStats,
};

/// Quillen complexes of finite groups: homology, Cohen-Macaulay checks and
/// structure verdicts.
#[derive(Parser)]
#[command(name = "quillen", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest group order to enumerate.
    #[arg(long, global = true, env = "QUILLEN_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (0 picks one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Target {
    /// GroupSpec JSON file, `-` for standard input, or a catalog name.
    spec: String,

    #[arg(long)]
    prime: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Build A_p(G) and compute the reduced homology of its order complex.
    Quillen {
        #[command(flatten)]
        target: Target,
        /// List every node with generators.
        #[arg(long)]
        nodes: bool,
        /// Also compute the Brown complex.
        #[arg(long)]
        brown: bool,
    },
    /// Cohen-Macaulay test of the Quillen complex, plus the structural
    /// prediction when the Sylow hypotheses hold.
    CmCheck {
        #[command(flatten)]
        target: Target,
        /// Sweep every simplex link directly instead of the interval route.
        #[arg(long)]
        links: bool,
    },
    /// Structure of Omega_1 of a Sylow p-subgroup.
    Decompose {
        #[command(flatten)]
        target: Target,
    },
    /// Homology of A_p(P)_{>X} against its prediction.
    UpperInterval {
        #[command(flatten)]
        target: Target,
        /// `zc` for Omega_1(Z(P)), `node:K` for node K of A_p(P),
        /// `gens:<cycles>;<cycles>` for the subgroup those permutations
        /// generate, or `elements:i,j` for element ids.
        #[arg(long)]
        select: String,
        /// Take intervals in A_p(G) instead of A_p(P) for a Sylow P.
        #[arg(long)]
        in_group: bool,
    },
    /// Compare A_p(G) with the wedge decomposition over O_p'(G).
    PwVerify {
        #[command(flatten)]
        target: Target,
    },
    /// p-length and its bound.
    Plength {
        #[command(flatten)]
        target: Target,
    },
    /// Run the pinned acceptance manifest.
    Suite {
        /// Manifest JSON; the bundled one by default.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Reduced homology of a simplex-list text file (`-` for standard input).
    ComplexHomology { file: String },
    /// Write the order complex of A_p(G) (or S_p(G)) as a simplex list.
    ExportComplex {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        brown: bool,
    },
}

/// Input problems exit with 1, disagreeing verdicts with 2.
enum Outcome {
    Report(Box<AnalysisReport>),
    Raw(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(hint) = e.downcast_ref::<Error>().and_then(hint) {
                eprintln!("hint: {hint}");
            }
            return ExitCode::from(1);
        }
    };
    let (text, disagrees) = match outcome {
        Outcome::Raw(s) => (s, false),
        Outcome::Report(r) => {
            let text = match cli.format {
                Format::Json => r.to_json(),
                Format::Text => r.to_text(),
            };
            (text, r.disagrees())
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if disagrees {
        eprintln!("a verdict disagrees with its prediction");
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn hint(e: &Error) -> Option<String> {
    match e {
        Error::GroupTooLarge { cap } => Some(format!(
            "the cap is {cap}; raise it with --max-order N or the QUILLEN_MAX_ORDER environment variable"
        )),
        Error::UnknownName(_) => Some(format!("catalog names: {}", catalog_names().join(", "))),
        Error::InvalidSpec(_) => Some("see the GroupSpec section of the README for the JSON schema".into()),
        _ => None,
    }
}

struct Timer(Vec<StageTiming>);

impl Timer {
    fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let v = f();
        self.0.push(StageTiming {
            stage: name.into(),
            seconds: start.elapsed().as_secs_f64(),
        });
        v
    }
}

fn load_spec(arg: &str) -> anyhow::Result<GroupSpec> {
    let text = if arg == "-" {
        Some(std::io::read_to_string(std::io::stdin()).context("reading standard input")?)
    } else if Path::new(arg).is_file() {
        Some(std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?)
    } else {
        None
    };
    match text {
        Some(t) => serde_json::from_str(&t).map_err(|e| anyhow!(Error::InvalidSpec(e.to_string()))),
        None => {
            quillen_core::constructions::catalog(arg)?;
            Ok(GroupSpec::Named {
                name: arg.to_string(),
            })
        }
    }
}

fn group_stats(g: &Group) -> GroupStats {
    GroupStats {
        order: g.order(),
        degree: g.degree(),
        representation: g.representation().to_string(),
        solvable: g.is_solvable(),
        sylow: prime_factors(g.order() as u64)
            .into_iter()
            .map(|p| SylowStats {
                prime: p,
                order: g.sylow_subgroup(p).order(),
            })
            .collect(),
    }
}

/// Builds the group and fills the report header.
fn prepare(
    cli: &Cli,
    t: &Target,
    command: &str,
    timer: &mut Timer,
) -> anyhow::Result<(Group, AnalysisReport)> {
    if t.prime < 2 || prime_factors(t.prime) != [t.prime] {
        bail!("--prime {} is not a prime", t.prime);
    }
    let spec = load_spec(&t.spec)?;
    let g = timer.stage("build group", || build(&spec, cli.max_order))?;
    let mut r = AnalysisReport::new(command);
    r.group = Some(timer.stage("group statistics", || group_stats(&g)));
    r.spec = Some(spec);
    r.prime = Some(t.prime);
    if !(g.order() as u64).is_multiple_of(t.prime) {
        r.notes.push(format!(
            "{} does not divide |G| = {}; the poset is empty",
            t.prime,
            g.order()
        ));
    }
    Ok((g, r))
}

fn poset_summary(
    name: &str,
    a: &SubgroupPoset<'_>,
    dim: i64,
    f_vector: Vec<usize>,
    listing: bool,
) -> PosetSummary {
    let mut by_order: Vec<(usize, usize)> = Vec::new();
    for x in a.nodes() {
        match by_order.iter_mut().find(|(o, _)| *o == x.order()) {
            Some(e) => e.1 += 1,
            None => by_order.push((x.order(), 1)),
        }
    }
    by_order.sort();
    let g = a.group();
    PosetSummary {
        name: name.to_string(),
        nodes: a.len(),
        nodes_by_order: by_order,
        f_vector,
        dimension: dim,
        listing: if listing {
            a.nodes()
                .iter()
                .enumerate()
                .map(|(index, x)| NodeInfo {
                    index,
                    order: x.order(),
                    generators: x
                        .generators()
                        .iter()
                        .map(|&e| g.perm(e).to_string())
                        .collect(),
                })
                .collect()
        } else {
            Vec::new()
        },
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let mut timer = Timer(Vec::new());
    let mut report = match &cli.command {
        Command::Quillen {
            target,
            nodes,
            brown,
        } => {
            let (g, mut r) = prepare(cli, target, "quillen", &mut timer)?;
            let p = target.prime;
            r.analyses.push("quillen complex homology".into());
            let a = timer.stage("build poset", || quillen_poset(&g, p));
            let c = timer.stage("order complex", || a.order_complex());
            let h = timer.stage("homology", || reduced_homology(&c));
            r.poset = Some(poset_summary("A_p(G)", &a, c.dim(), c.f_vector(), *nodes));
            r.homology.push(Labeled {
                label: "A_p(G)".into(),
                value: h.clone(),
            });
            if *brown {
                r.analyses.push("brown complex homology".into());
                let b = timer.stage("brown poset", || brown_poset(&g, p, false));
                let hb = timer.stage("brown homology", || reduced_homology(&b.order_complex()));
                r.notes.push(format!(
                    "S_p(G) has {} nodes; its homology {} that of A_p(G)",
                    b.len(),
                    if hb.same_homology(&h) {
                        "equals"
                    } else {
                        "differs from"
                    }
                ));
                r.homology.push(Labeled {
                    label: "S_p(G)".into(),
                    value: hb,
                });
            }
            r
        }
        Command::CmCheck { target, links } => {
            let (g, mut r) = prepare(cli, target, "cm-check", &mut timer)?;
            let p = target.prime;
            r.analyses.push("cohen-macaulay".into());
            let a = timer.stage("build poset", || quillen_poset(&g, p));
            let c = timer.stage("order complex", || a.order_complex());
            let v = if *links {
                timer.stage("link sweep", || is_cohen_macaulay(&c))
            } else {
                timer.stage("interval sweep", || poset_cohen_macaulay(a.relation()))
            };
            r.poset = Some(poset_summary("A_p(G)", &a, c.dim(), c.f_vector(), false));
            r.sphericity.push(Labeled {
                label: format!("A_p(G), dimension {}", c.dim()),
                value: v,
            });
            match timer.stage("structural prediction", || main_theorem_check(&g, p)) {
                Ok(v) => {
                    r.analyses.push("structural prediction".into());
                    r.verdicts.push(v);
                }
                Err(e) => r.notes.push(format!("no structural prediction: {e}")),
            }
            r
        }
        Command::Decompose { target } => {
            let (g, mut r) = prepare(cli, target, "decompose", &mut timer)?;
            let p = target.prime;
            r.analyses.push("structure".into());
            let syl = g.sylow_subgroup(p);
            let omega = g.omega1(&syl, p)?;
            let s = timer.stage("classify", || classify(&g, &omega, p))?;
            let violated = check_structure(&g, &omega, &s);
            if !violated.is_empty() {
                bail!("decomposition violates: {}", violated.join("; "));
            }
            r.structure.push(s);
            r
        }
        Command::UpperInterval {
            target,
            select,
            in_group,
        } => {
            let (g, mut r) = prepare(cli, target, "upper-interval", &mut timer)?;
            let p = target.prime;
            r.analyses.push("upper interval".into());
            let within = if *in_group {
                g.whole()
            } else {
                g.omega1(&g.sylow_subgroup(p), p)?
            };
            let x = select_node(&g, &within, p, select)?;
            r.notes.push(format!(
                "X has order {} and generators {}",
                x.order(),
                cycles(&g, &x)
            ));
            match timer.stage("interval check", || {
                upper_interval_check(&g, &within, p, &x)
            }) {
                Ok(v) => r.verdicts.push(v),
                Err(Error::NoApplicablePrediction { reason, computed }) => {
                    r.notes.push(format!("no applicable prediction: {reason}"));
                    r.homology.push(Labeled {
                        label: "upper interval".into(),
                        value: *computed,
                    });
                }
                Err(e) => return Err(e.into()),
            }
            r
        }
        Command::PwVerify { target } => {
            let (g, mut r) = prepare(cli, target, "pw-verify", &mut timer)?;
            r.analyses.push("wedge formula".into());
            r.verdicts
                .push(timer.stage("wedge formula", || verify_pulkus_welker(&g, target.prime))?);
            r
        }
        Command::Plength { target } => {
            let (g, mut r) = prepare(cli, target, "plength", &mut timer)?;
            r.analyses.push("p-length".into());
            r.verdicts
                .push(timer.stage("p-length", || p_length_bound_check(&g, target.prime))?);
            r
        }
        Command::Suite { manifest } => {
            let m: Manifest = match manifest {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    serde_json::from_str(&text)
                        .map_err(|e| anyhow!(Error::InvalidSpec(e.to_string())))?
                }
                None => builtin_manifest(),
            };
            let mut r = AnalysisReport::new("suite");
            r.analyses.push("acceptance manifest".into());
            r.suite = Some(timer.stage("suite", || run_suite(&m)));
            r
        }
        Command::ComplexHomology { file } => {
            let text = if file == "-" {
                std::io::read_to_string(std::io::stdin()).context("reading standard input")?
            } else {
                std::fs::read_to_string(file).with_context(|| format!("reading {file}"))?
            };
            let c = SimplicialComplex::from_text(&text)?;
            let mut r = AnalysisReport::new("complex-homology");
            r.analyses.push("homology".into());
            let h = timer.stage("homology", || reduced_homology(&c));
            r.notes.push(format!(
                "f-vector {:?}, dimension {}",
                c.f_vector(),
                c.dim()
            ));
            r.homology.push(Labeled {
                label: file.clone(),
                value: h,
            });
            r
        }
        Command::ExportComplex { target, brown } => {
            let (g, _) = prepare(cli, target, "export-complex", &mut timer)?;
            let a = if *brown {
                brown_poset(&g, target.prime, false)
            } else {
                quillen_poset(&g, target.prime)
            };
            return Ok(Outcome::Raw(a.order_complex().to_text()));
        }
    };
    report.timing = timer.0;
    Ok(Outcome::Report(Box::new(report)))
}

fn cycles(g: &Group, x: &Subgroup) -> String {
    let gens: Vec<String> = x
        .generators()
        .iter()
        .map(|&e| g.perm(e).to_string())
        .collect();
    format!("<{}>", gens.join(", "))
}

fn select_node(g: &Group, within: &Subgroup, p: u64, sel: &str) -> anyhow::Result<Subgroup> {
    let a = quillen_poset_of(g, within, p);
    let x = if sel == "zc" {
        let syl = if g.is_p_group(within, p) {
            within.clone()
        } else {
            g.sylow_subgroup(p)
        };
        omega1_center(g, &syl, p)
    } else if let Some(k) = sel.strip_prefix("node:") {
        let k: usize = k
            .trim()
            .parse()
            .with_context(|| format!("bad node index `{k}`"))?;
        if k >= a.len() {
            bail!(Error::InvalidSpec(format!(
                "node {k} does not exist; the poset has {} nodes",
                a.len()
            )));
        }
        a.node(k).clone()
    } else if let Some(list) = sel.strip_prefix("gens:") {
        let mut seeds = Vec::new();
        for text in list.split(';').filter(|t| !t.trim().is_empty()) {
            let perm = Perm::parse(g.degree(), text)?;
            seeds.push(
                g.id_of(&perm)
                    .ok_or_else(|| anyhow!("{text} is not an element of the group"))?,
            );
        }
        g.subgroup_generated(&seeds)
    } else if let Some(list) = sel.strip_prefix("elements:") {
        let mut seeds = Vec::new();
        for t in list.split(',') {
            let e: u32 = t
                .trim()
                .parse()
                .with_context(|| format!("bad element id `{t}`"))?;
            if e as usize >= g.order() {
                bail!(
                    "element id {e} is out of range for a group of order {}",
                    g.order()
                );
            }
            seeds.push(e);
        }
        g.subgroup_generated(&seeds)
    } else {
        bail!(Error::InvalidSpec(format!(
            "unknown selector `{sel}`; use zc, node:K, gens:... or elements:..."
        )));
    };
    if a.index_of(&x).is_err() {
        bail!(Error::InvalidSpec(format!(
            "the selected subgroup (order {}) is not a nontrivial elementary abelian {p}-subgroup of the ambient group",
            x.order()
        )));
    }
    Ok(x)
}

/// Instances run in parallel; results keep manifest order.
fn run_suite(m: &Manifest) -> SuiteSummary {
    let instances: Vec<InstanceResult> = m
        .instances
        .par_iter()
        .map(|inst| match build_instance(m, inst) {
            Ok(g) => InstanceResult {
                group: inst.group.clone(),
                prime: inst.prime,
                order: Some(g.order()),
                error: None,
                outcomes: inst
                    .checks
                    .par_iter()
                    .map(|&c| run_check(&g, inst.prime, c))
                    .collect(),
            },
            Err(e) => InstanceResult {
                group: inst.group.clone(),
                prime: inst.prime,
                order: None,
                error: Some(e.to_string()),
                outcomes: Vec::new(),
            },
        })
        .collect();
    let mut disagreements = Vec::new();
    let (mut run, mut skipped) = (0, 0);
    for inst in &instances {
        if let Some(e) = &inst.error {
            disagreements.push(format!("{} at p={}: {e}", inst.group, inst.prime));
        }
        for o in &inst.outcomes {
            if o.is_skipped() {
                skipped += 1;
            } else {
                run += 1;
            }
            if !o.agrees {
                disagreements.push(format!("{} at p={} {:?}", inst.group, inst.prime, o.check));
            }
        }
    }
    SuiteSummary {
        manifest_version: m.version.clone(),
        max_order: m.max_order,
        instances,
        checks_run: run,
        checks_skipped: skipped,
        disagreements,
    }
}
