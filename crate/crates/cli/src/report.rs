use std::fmt::Write;

use serde::{Deserialize, Serialize};

use quillen_core::constructions::GroupSpec;
use quillen_core::homology::{HomologyProfile, SphericityVerdict};
use quillen_core::structure::{StructureReport, TheoremVerdict};
use quillen_core::suite::CheckOutcome;

pub const CAVEAT: &str = "Homology-level proxy: `spherical` and `Cohen-Macaulay` mean that reduced integral homology \
is free and concentrated in the expected degree (for the complex and every link). Acyclic means all reduced \
homology vanishes; it does not certify contractibility, simple connectivity, or an actual wedge decomposition.";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<GroupSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupStats>,
    pub analyses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub homology: Vec<Labeled<HomologyProfile>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sphericity: Vec<Labeled<SphericityVerdict>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structure: Vec<StructureReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<TheoremVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub caveat: String,
    /// Excluded from reproducibility comparisons.
    pub timing: Vec<StageTiming>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStats {
    pub order: usize,
    pub degree: usize,
    pub representation: String,
    pub solvable: bool,
    pub sylow: Vec<SylowStats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowStats {
    pub prime: u64,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSummary {
    pub name: String,
    pub nodes: usize,
    /// Node counts by subgroup order, ascending.
    pub nodes_by_order: Vec<(usize, usize)>,
    pub f_vector: Vec<usize>,
    pub dimension: i64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub listing: Vec<NodeInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeInfo {
    pub index: usize,
    pub order: usize,
    /// Generators in cycle notation.
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeled<T> {
    pub label: String,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub manifest_version: String,
    pub max_order: usize,
    pub instances: Vec<InstanceResult>,
    pub checks_run: usize,
    pub checks_skipped: usize,
    pub disagreements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub group: String,
    pub prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub outcomes: Vec<CheckOutcome>,
}

impl AnalysisReport {
    pub fn new(command: &str) -> Self {
        AnalysisReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            spec: None,
            prime: None,
            group: None,
            analyses: Vec::new(),
            poset: None,
            homology: Vec::new(),
            sphericity: Vec::new(),
            structure: Vec::new(),
            verdicts: Vec::new(),
            suite: None,
            notes: Vec::new(),
            caveat: CAVEAT.to_string(),
            timing: Vec::new(),
        }
    }

    /// Any verdict or suite check that disagrees with its prediction.
    pub fn disagrees(&self) -> bool {
        self.verdicts.iter().any(|v| !v.agrees)
            || self
                .suite
                .as_ref()
                .is_some_and(|s| !s.disagreements.is_empty())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "quillen {} {}", self.tool_version, self.command);
        if let Some(g) = &self.group {
            let sylow: Vec<String> = g
                .sylow
                .iter()
                .map(|s| format!("{}: {}", s.prime, s.order))
                .collect();
            let _ = writeln!(
                out,
                "group: order {}, degree {} ({}), {}; Sylow orders {}",
                g.order,
                g.degree,
                g.representation,
                if g.solvable {
                    "solvable"
                } else {
                    "not solvable"
                },
                sylow.join(", ")
            );
        }
        if let Some(p) = self.prime {
            let _ = writeln!(out, "prime: {p}");
        }
        if let Some(ps) = &self.poset {
            let by_order: Vec<String> = ps
                .nodes_by_order
                .iter()
                .map(|(o, n)| format!("{n} of order {o}"))
                .collect();
            let _ = writeln!(
                out,
                "{}: {} nodes ({})",
                ps.name,
                ps.nodes,
                by_order.join(", ")
            );
            let _ = writeln!(
                out,
                "  f-vector {:?}, dimension {}",
                ps.f_vector, ps.dimension
            );
            for n in &ps.listing {
                let _ = writeln!(
                    out,
                    "  node {:>4}: order {:>5}  <{}>",
                    n.index,
                    n.order,
                    n.generators.join(", ")
                );
            }
        }
        for h in &self.homology {
            let _ = writeln!(out, "homology of {}: {}", h.label, profile_text(&h.value));
        }
        for s in &self.sphericity {
            let v = &s.value;
            let _ = write!(
                out,
                "sphericity of {}: weakly spherical in {:?}, homology spherical {}, Cohen-Macaulay {}",
                s.label, v.weakly_spherical_in, v.homology_spherical, v.cohen_macaulay
            );
            if let Some(w) = &v.witness {
                let _ = write!(
                    out,
                    "; witness simplex {:?} has homology in degree {} (expected {})",
                    w.simplex, w.degree, w.expected_degree
                );
            }
            out.push('\n');
        }
        for r in &self.structure {
            let _ = writeln!(
                out,
                "structure: case {:?}, |P| = {}, |P'| = {}",
                r.case, r.order, r.derived_order
            );
            let part = |name: &str, s: &Option<quillen_core::group::Subgroup>| {
                s.as_ref()
                    .map(|s| format!("  {name}: order {}\n", s.order()))
                    .unwrap_or_default()
            };
            out.push_str(&part("T", &r.t));
            if let Some(k) = r.t_kind {
                let _ = writeln!(out, "  T kind: {k:?}");
            }
            out.push_str(&part("D", &r.d));
            out.push_str(&part("E", &r.e));
            out.push_str(&part("A", &r.elementary_part));
            let _ = writeln!(out, "  Omega_1(Z(P)): order {}", r.z.order());
            for n in &r.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        for v in &self.verdicts {
            verdict_text(&mut out, v, "");
        }
        if let Some(s) = &self.suite {
            let _ = writeln!(
                out,
                "suite manifest {} (cap {}): {} checks run, {} skipped, {} disagreements",
                s.manifest_version,
                s.max_order,
                s.checks_run,
                s.checks_skipped,
                s.disagreements.len()
            );
            for inst in &s.instances {
                if let Some(e) = &inst.error {
                    let _ = writeln!(out, "  {} at p={}: error: {e}", inst.group, inst.prime);
                }
                for o in &inst.outcomes {
                    let status = if o.is_skipped() {
                        "skipped"
                    } else if o.agrees {
                        "agrees"
                    } else {
                        "DISAGREES"
                    };
                    let _ = writeln!(
                        out,
                        "  {} at p={} {:?}: {status}",
                        inst.group, inst.prime, o.check
                    );
                }
            }
            for d in &s.disagreements {
                let _ = writeln!(out, "disagreement: {d}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "caveat: {}", self.caveat);
        for t in &self.timing {
            let _ = writeln!(out, "time {}: {:.3} s", t.stage, t.seconds);
        }
        out
    }
}

fn verdict_text(out: &mut String, v: &TheoremVerdict, indent: &str) {
    let _ = writeln!(
        out,
        "{indent}verdict {}: {} (predicted {:?})",
        v.claim,
        if v.agrees { "agrees" } else { "DISAGREES" },
        short_prediction(&v.predicted)
    );
    if let Some(h) = &v.computed.homology {
        let _ = writeln!(out, "{indent}  computed homology: {}", profile_text(h));
    }
    if let Some(l) = v.computed.p_length {
        let _ = writeln!(out, "{indent}  computed p-length: {l}");
    }
    for n in &v.notes {
        let _ = writeln!(out, "{indent}  note: {n}");
    }
}

fn short_prediction(p: &quillen_core::structure::Prediction) -> String {
    use quillen_core::structure::Prediction::*;
    match p {
        SameHomology { expected } => format!("same homology as {}", profile_text(expected)),
        other => format!("{other:?}"),
    }
}

/// `H~_q` for the nonzero degrees, or `acyclic`.
pub fn profile_text(h: &HomologyProfile) -> String {
    let parts: Vec<String> = h
        .degrees
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| {
            let mut terms = Vec::new();
            if d.betti > 0 {
                terms.push(if d.betti == 1 {
                    "Z".to_string()
                } else {
                    format!("Z^{}", d.betti)
                });
            }
            terms.extend(d.torsion.iter().map(|t| format!("Z/{t}")));
            format!("H{} = {}", d.degree, terms.join(" + "))
        })
        .collect();
    if parts.is_empty() {
        "acyclic".into()
    } else {
        parts.join(", ")
    }
}
