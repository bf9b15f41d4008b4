use std::collections::BTreeMap;

use serde::Serialize;

use crate::digraph::{canonical_key, CanonicalKey, Digraph};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::fixtures::{self, Fixture};
use crate::realization::{RealizationWitness, SearchOptions};
use crate::stability::symbolic_refutations;
use crate::symbolic::minor_sign_feasible;

use super::analysis::{analyze_digraph, pattern_rows, refutation_record, AnalyzeOptions, RefutationRecord, Verdict, VariantOutcome};
use super::enumerate::{enumerate_candidates, EnumOptions};
use super::CandidateFilterReport;

fn verify_fixture(f: &Fixture, exec: Exec) -> Result<CandidateFilterReport> {
    let opts = AnalyzeOptions { search: None, exec };
    let mut report = analyze_digraph(&f.digraph(), opts)?;
    report.item = Some(f.index);
    report.variants = f
        .variants()
        .iter()
        .map(|p| {
            Ok(VariantOutcome {
                pattern: pattern_rows(p),
                feasible: minor_sign_feasible(p),
                fired: symbolic_refutations(p)?.iter().map(RefutationRecord::from).collect(),
            })
        })
        .collect::<Result<_>>()?;
    report.refutation = refutation_record(&f.pattern())?;
    if report.verdict != Verdict::Eliminated || report.variants.iter().any(|v| v.fired.is_empty()) {
        return Err(Error::FixtureSurvived(f.index));
    }
    Ok(report)
}

/// Runs every filter on the fifteen fixtures. Each sign class with feasible
/// minors must be refuted symbolically; a survivor is an error.
pub fn verify_fifteen(exec: Exec) -> Result<Vec<CandidateFilterReport>> {
    exec::map(exec, fixtures::all(), |f| verify_fixture(f, exec))
        .into_iter()
        .collect()
}

/// Outcome of matching enumerated candidates against a reference list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub n: usize,
    pub m: usize,
    pub candidates: usize,
    /// For each reference digraph, whether the enumeration produced it.
    pub found: Vec<bool>,
    /// Candidates isomorphic to no reference digraph (0-based edge lists).
    pub unmatched: Vec<Vec<[usize; 2]>>,
    pub nodes: usize,
    pub truncated: bool,
}

impl ClosureReport {
    /// Every reference found, nothing else enumerated, and no truncation.
    pub fn holds(&self) -> bool {
        !self.truncated && self.unmatched.is_empty() && self.found.iter().all(|&b| b)
    }
}

/// When two digraphs count as the same candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivalence {
    Isomorphism,
    /// Isomorphism, or isomorphism after reversing every edge (transposition).
    IsomorphismOrReversal,
}

/// Compares `enumerate_candidates(n, m)` with `reference` under `eq`.
pub fn closure_check(n: usize, m: usize, reference: &[Digraph], eq: Equivalence, opts: EnumOptions) -> Result<ClosureReport> {
    let e = enumerate_candidates(n, m, opts)?;
    let refs: Vec<CanonicalKey> = reference.iter().map(canonical_key).collect();
    let mut accepted = refs.clone();
    if eq == Equivalence::IsomorphismOrReversal {
        accepted.extend(reference.iter().map(|g| canonical_key(&g.reverse())));
    }
    let found = refs
        .iter()
        .zip(reference)
        .map(|(k, g)| e.keys.contains(k) || (eq == Equivalence::IsomorphismOrReversal && e.keys.contains(&canonical_key(&g.reverse()))))
        .collect();
    let unmatched = e
        .keys
        .iter()
        .zip(&e.digraphs)
        .filter(|(k, _)| !accepted.contains(k))
        .map(|(_, g)| g.edges().into_iter().map(|(u, v)| [u, v]).collect())
        .collect();
    Ok(ClosureReport {
        n,
        m,
        candidates: e.digraphs.len(),
        found,
        unmatched,
        nodes: e.nodes,
        truncated: e.truncated,
    })
}

/// Every 7-vertex, 10-edge candidate against the fifteen fixtures, up to
/// isomorphism and transposition.
pub fn candidate_closure_check(opts: EnumOptions) -> Result<ClosureReport> {
    let reference: Vec<Digraph> = fixtures::all().iter().map(Fixture::digraph).collect();
    closure_check(7, 10, &reference, Equivalence::IsomorphismOrReversal, opts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub m: usize,
    pub digraphs: usize,
    pub eliminated: usize,
    pub potentially_stable: usize,
    pub inconclusive: usize,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableWitness {
    pub pattern: Vec<String>,
    pub witness: RealizationWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinEntriesReport {
    pub n: usize,
    /// Smallest nonzero count with a certified stable irreducible pattern.
    pub minimum: Option<usize>,
    pub levels: Vec<LevelSummary>,
    /// First certified witness at the minimum, in canonical order.
    pub witness: Option<StableWitness>,
    /// Patterns below the minimum that were neither refuted nor realized.
    pub inconclusive_below: Vec<Vec<String>>,
}

impl MinEntriesReport {
    /// A minimum was found and every pattern with fewer nonzeros was eliminated.
    pub fn verified(&self) -> bool {
        self.minimum.is_some()
            && self.inconclusive_below.is_empty()
            && self.levels.iter().all(|l| !l.truncated)
    }
}

pub const MAX_MIN_ENTRIES_N: usize = 5;

/// Smallest number of nonzeros of a potentially stable irreducible `n x n`
/// pattern, checking every level from `n` upwards exhaustively.
pub fn verify_min_entries(n: usize, search: SearchOptions, exec: Exec) -> Result<MinEntriesReport> {
    if n == 0 || n > MAX_MIN_ENTRIES_N {
        return Err(Error::Unsupported(format!("minimum entries needs 1 <= n <= {MAX_MIN_ENTRIES_N}, got {n}")));
    }
    let mut report = MinEntriesReport {
        n,
        minimum: None,
        levels: Vec::new(),
        witness: None,
        inconclusive_below: Vec::new(),
    };
    let enum_opts = EnumOptions {
        require_full_support: false,
        budget: None,
        exec,
    };
    let analyze_opts = AnalyzeOptions { search: Some(search), exec };
    for m in n..=n * n {
        let e = enumerate_candidates(n, m, enum_opts)?;
        let reports: Vec<CandidateFilterReport> = exec::map(exec, &e.digraphs, |g| analyze_digraph(g, analyze_opts))
            .into_iter()
            .collect::<Result<_>>()?;
        let tally = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
        report.levels.push(LevelSummary {
            m,
            digraphs: reports.len(),
            eliminated: tally(Verdict::Eliminated),
            potentially_stable: tally(Verdict::PotentiallyStable),
            inconclusive: tally(Verdict::Inconclusive),
            truncated: e.truncated,
        });
        if let Some((pattern, witness)) = reports.iter().find_map(|r| r.witness()) {
            report.minimum = Some(m);
            report.witness = Some(StableWitness {
                pattern: pattern.to_vec(),
                witness: witness.clone(),
            });
            break;
        }
        report
            .inconclusive_below
            .extend(reports.iter().flat_map(|r| r.inconclusive_patterns()).map(<[String]>::to_vec));
    }
    Ok(report)
}

/// Reference classes for [`closure_check`]: brute force over every edge subset.
pub fn brute_force_candidates(n: usize, m: usize, require_full_support: bool) -> Vec<Digraph> {
    let slots = n * n;
    let mut found: BTreeMap<CanonicalKey, Digraph> = BTreeMap::new();
    for mask in 0u64..1 << slots {
        if mask.count_ones() as usize != m {
            continue;
        }
        let edges = (0..slots).filter(|&b| mask >> b & 1 == 1).map(|b| (b / n, b % n));
        let g = Digraph::from_edges(n, edges).expect("distinct in-range edges");
        if !g.is_strongly_connected() {
            continue;
        }
        if require_full_support && !crate::minors::has_full_minor_support(&g) {
            continue;
        }
        found.entry(canonical_key(&g)).or_insert(g);
    }
    found.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_are_refuted() {
        let reports = verify_fifteen(Exec::Parallel).unwrap();
        assert_eq!(reports.len(), 15);
        for r in &reports {
            assert_eq!(r.verdict, Verdict::Eliminated);
            assert!(r.refutation.is_some());
        }
        assert_eq!(reports[0].refutation.as_ref().unwrap().difference, "- a45*a56*a64");
    }

    #[test]
    fn small_closure_matches_brute_force() {
        for (n, m) in [(2, 3), (3, 5), (4, 5), (4, 6)] {
            let reference = brute_force_candidates(n, m, true);
            let c = closure_check(n, m, &reference, Equivalence::Isomorphism, EnumOptions::default()).unwrap();
            assert!(c.holds(), "({n}, {m}): {c:?}");
        }
    }

    #[test]
    fn fixtures_close_under_transposition() {
        let c = candidate_closure_check(EnumOptions::default()).unwrap();
        assert!(c.holds());
        assert_eq!(c.candidates, 28);
    }

    #[test]
    fn minimum_for_two() {
        let r = verify_min_entries(2, SearchOptions::default(), Exec::Parallel).unwrap();
        assert_eq!(r.minimum, Some(3));
        assert!(r.verified());
    }
}
