//! Pinned catalog of (group, prime, checks) triples and the dispatcher that
//! runs one check. The manifest is versioned so that runs stay comparable
//! as the catalog grows.

use serde::{Deserialize, Serialize};

use crate::constructions::{build, catalog};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::homology::reduced_homology;
use crate::poset::{brown_poset, quillen_poset, quillen_poset_of, SubgroupPoset};
use crate::structure::{
    check_structure, classify, main_theorem_check, p_length_bound_check, split_torus_check,
    upper_interval_check, verify_pulkus_welker, Computed, Prediction, StructureReport,
    TheoremVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub max_order: usize,
    pub instances: Vec<Instance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    /// Catalog name.
    pub group: String,
    pub prime: u64,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Brown and Quillen complexes have the same homology.
    BrownQuillen,
    /// Sphericity of the whole Quillen complex.
    MainTheorem,
    WedgeFormula,
    PLength,
    /// `O_p'(G)` extended by an elementary abelian Sylow is Cohen-Macaulay.
    SplitTorus,
    /// `O_p(G) != 1` exactly when the Quillen complex is acyclic.
    Acyclicity,
    /// Decomposition of `Omega_1` of a Sylow subgroup, with invariants.
    Structure,
    /// Every upper interval of `A_p(P)` for a Sylow `P`.
    UpperIntervals,
    /// Intervals with a conjunctive element have no homology.
    Conjunctive,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::BrownQuillen,
        Check::MainTheorem,
        Check::WedgeFormula,
        Check::PLength,
        Check::SplitTorus,
        Check::Acyclicity,
        Check::Structure,
        Check::UpperIntervals,
        Check::Conjunctive,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: Check,
    /// False on any disagreeing verdict or error; skipped checks agree.
    pub agrees: bool,
    pub verdicts: Vec<TheoremVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureReport>,
    /// Why the check (or part of it) did not apply.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckOutcome {
    fn new(check: Check) -> Self {
        CheckOutcome {
            check,
            agrees: true,
            verdicts: Vec::new(),
            structure: None,
            skipped: Vec::new(),
            error: None,
        }
    }

    fn push(&mut self, v: TheoremVerdict) {
        self.agrees &= v.agrees;
        self.verdicts.push(v);
    }

    /// Not-applicable errors become skips, anything else fails the check.
    fn absorb(&mut self, e: Error) {
        match e {
            Error::HypothesisViolated(m) | Error::PreconditionFailed(m) => self.skipped.push(m),
            Error::NoApplicablePrediction { reason, .. } => self.skipped.push(reason),
            other => {
                self.agrees = false;
                self.error = Some(other.to_string());
            }
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.verdicts.is_empty() && self.structure.is_none() && self.error.is_none()
    }
}

pub fn builtin_manifest() -> Manifest {
    serde_json::from_str(include_str!("../data/suite.json")).expect("bundled manifest parses")
}

pub fn build_instance(m: &Manifest, inst: &Instance) -> Result<Group> {
    build(&catalog(&inst.group)?, m.max_order)
}

pub fn run_check(g: &Group, p: u64, check: Check) -> CheckOutcome {
    let mut out = CheckOutcome::new(check);
    let result = match check {
        Check::BrownQuillen => Ok(brown_quillen(g, p)),
        Check::MainTheorem => main_theorem_check(g, p),
        Check::WedgeFormula => verify_pulkus_welker(g, p),
        Check::PLength => p_length_bound_check(g, p),
        Check::SplitTorus => split_torus_check(g, p),
        Check::Acyclicity => acyclicity(g, p),
        Check::Conjunctive => Ok(conjunctive(g, p)),
        Check::Structure => {
            if let Err(e) = structure(g, p, &mut out) {
                out.absorb(e);
            }
            return out;
        }
        Check::UpperIntervals => {
            if let Err(e) = upper_intervals(g, p, &mut out) {
                out.absorb(e);
            }
            return out;
        }
    };
    match result {
        Ok(v) => out.push(v),
        Err(e) => out.absorb(e),
    }
    out
}

fn brown_quillen(g: &Group, p: u64) -> TheoremVerdict {
    let brown = brown_poset(g, p, false);
    let expected = reduced_homology(&brown.order_complex());
    let quillen = quillen_poset(g, p);
    let h = reduced_homology(&quillen.order_complex());
    let agrees = h.same_homology(&expected);
    TheoremVerdict {
        claim: "brown-quillen".into(),
        predicted: Prediction::SameHomology { expected },
        computed: Computed {
            homology: Some(h),
            ..Computed::default()
        },
        agrees,
        notes: vec![format!(
            "{} Brown nodes, {} Quillen nodes",
            brown.len(),
            quillen.len()
        )],
    }
}

fn acyclicity(g: &Group, p: u64) -> Result<TheoremVerdict> {
    if !g.is_solvable() {
        return Err(Error::HypothesisViolated("G is not solvable".into()));
    }
    let op = g.o_p(p);
    let predicted = if op.is_trivial() {
        Prediction::NotAcyclic
    } else {
        Prediction::Acyclic
    };
    let h = reduced_homology(&quillen_poset(g, p).order_complex());
    let agrees = h.is_acyclic() == !op.is_trivial();
    Ok(TheoremVerdict {
        claim: "normal-p-subgroup-acyclicity".into(),
        predicted,
        computed: Computed {
            homology: Some(h),
            ..Computed::default()
        },
        agrees,
        notes: vec![format!("|O_p(G)| = {}", op.order())],
    })
}

fn structure(g: &Group, p: u64, out: &mut CheckOutcome) -> Result<()> {
    if !(g.order() as u64).is_multiple_of(p) {
        return Err(Error::HypothesisViolated(format!(
            "{p} does not divide |G|"
        )));
    }
    let syl = g.sylow_subgroup(p);
    let omega = g.omega1(&syl, p)?;
    let report = match classify(g, &omega, p) {
        Ok(r) => r,
        Err(Error::DecompositionNotFound(m)) => {
            out.agrees = false;
            out.error = Some(m);
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let violated = check_structure(g, &omega, &report);
    if !violated.is_empty() {
        out.agrees = false;
        out.error = Some(format!("violated: {}", violated.join("; ")));
    }
    out.structure = Some(report);
    Ok(())
}

fn upper_intervals(g: &Group, p: u64, out: &mut CheckOutcome) -> Result<()> {
    if !(g.order() as u64).is_multiple_of(p) {
        return Err(Error::HypothesisViolated(format!(
            "{p} does not divide |G|"
        )));
    }
    let omega = g.omega1(&g.sylow_subgroup(p), p)?;
    for x in quillen_poset_of(g, &omega, p).nodes() {
        match upper_interval_check(g, &omega, p, x) {
            Ok(v) => out.push(v),
            Err(e) => out.absorb(e),
        }
    }
    Ok(())
}

/// Every upper and lower interval of `A_p(G)`, and the whole poset, that has
/// a conjunctive element must be acyclic.
fn conjunctive(g: &Group, p: u64) -> TheoremVerdict {
    let a = quillen_poset(g, p);
    let mut certified = 0usize;
    let mut failures = Vec::new();
    let mut test = |label: String, sub: &SubgroupPoset<'_>| {
        if sub.find_conjunctive_element().is_some() {
            certified += 1;
            let h = reduced_homology(&sub.order_complex());
            if !h.is_acyclic() {
                failures.push(format!(
                    "{label}: nonzero degrees {:?}",
                    h.nonzero_degrees()
                ));
            }
        }
    };
    test("A_p(G)".into(), &a);
    for (i, x) in a.nodes().iter().enumerate() {
        test(
            format!("interval above node {i}"),
            &a.upper_interval(x).expect("node"),
        );
        test(
            format!("interval below node {i}"),
            &a.lower_interval(x).expect("node"),
        );
    }
    let mut notes = vec![format!(
        "{certified} of {} intervals carry a conjunctive element",
        2 * a.len() + 1
    )];
    let agrees = failures.is_empty();
    notes.extend(failures);
    TheoremVerdict {
        claim: "conjunctive-certificate".into(),
        predicted: Prediction::Acyclic,
        computed: Computed::default(),
        agrees,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(name: &str) -> Group {
        build(&catalog(name).unwrap(), 4096).unwrap()
    }

    #[test]
    fn bundled_manifest_covers_the_catalog() {
        let m = builtin_manifest();
        assert_eq!(m.version, "1");
        for e in crate::constructions::CATALOG {
            assert!(
                m.instances.iter().any(|i| i.group == e.name),
                "{} missing",
                e.name
            );
        }
        let brown = m
            .instances
            .iter()
            .filter(|i| i.checks.contains(&Check::BrownQuillen))
            .count();
        assert!(brown >= 12);
    }

    #[test]
    fn skips_are_not_failures() {
        let o = run_check(&named("S4"), 2, Check::WedgeFormula);
        assert!(o.agrees && o.is_skipped());
        assert_eq!(o.skipped, ["O_p'(G) is trivial"]);
        let o = run_check(&named("A5"), 2, Check::Acyclicity);
        assert!(o.agrees && o.is_skipped());
    }

    #[test]
    fn outcomes_follow_verdicts() {
        let o = run_check(&named("S3"), 2, Check::BrownQuillen);
        assert!(o.agrees && o.verdicts.len() == 1);
        let o = run_check(&named("SD16∘C4"), 2, Check::MainTheorem);
        assert!(!o.agrees);
        assert_eq!(o.verdicts[0].claim, "semidihedral-branch");
        let o = run_check(&named("D16×C2"), 2, Check::Structure);
        assert!(o.agrees);
        assert!(o.structure.is_some());
    }

    #[test]
    fn acyclicity_both_directions() {
        let o = run_check(&named("S4"), 2, Check::Acyclicity);
        assert_eq!(o.verdicts[0].predicted, Prediction::Acyclic);
        assert!(o.agrees);
        let o = run_check(&named("A5"), 5, Check::Conjunctive);
        assert!(o.agrees);
        let o = run_check(&named("S3"), 3, Check::Acyclicity);
        assert_eq!(o.verdicts[0].predicted, Prediction::Acyclic);
        let o = run_check(&named("S4"), 3, Check::Acyclicity);
        assert_eq!(o.verdicts[0].predicted, Prediction::NotAcyclic);
        assert!(o.agrees);
    }
}
