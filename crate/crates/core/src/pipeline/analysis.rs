use serde::Serialize;

use crate::digraph::{circumference, Digraph};
use crate::error::Result;
use crate::exec::{self, Exec};
use crate::minors::achievable_minor_sizes;
use crate::pattern::SignPattern;
use crate::realization::{search_stable_realization, RealizationWitness, SearchOptions};
use crate::signs::{sign_classes, SignClass};
use crate::stability::{hurwitz_refutation, preferred_refutation, refutations_from, Refutation};
use crate::symbolic::{char_coefficients, first_infeasible_minor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Some filter failed for the digraph or for every sign class.
    Eliminated,
    /// A certified stable realization exists.
    PotentiallyStable,
    /// Neither refuted nor realized within budget.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterOutcome {
    pub filter: String,
    pub passed: bool,
    pub detail: String,
}

impl FilterOutcome {
    fn new(filter: &str, passed: bool, detail: String) -> Self {
        FilterOutcome {
            filter: filter.to_owned(),
            passed,
            detail,
        }
    }
}

/// A necessary inequality that fails identically, rendered for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationRecord {
    pub inequality: u8,
    pub difference: String,
}

impl From<&Refutation> for RefutationRecord {
    fn from(r: &Refutation) -> Self {
        RefutationRecord {
            inequality: r.inequality,
            difference: r.difference.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClassOutcome {
    /// `c_k` has no positive monomial, so `E_k` never has sign `(-1)^k`.
    InfeasibleMinor { k: usize },
    /// Every necessary inequality that fails identically (7x7 only).
    Refuted { fired: Vec<RefutationRecord> },
    /// Hurwitz determinant `Δ_k` has no positive monomial.
    HurwitzRefuted { k: usize, determinant: String },
    Witness { witness: RealizationWitness },
    Inconclusive,
}

impl ClassOutcome {
    pub fn is_eliminated(&self) -> bool {
        matches!(
            self,
            ClassOutcome::InfeasibleMinor { .. } | ClassOutcome::Refuted { .. } | ClassOutcome::HurwitzRefuted { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignClassOutcome {
    pub mask: u64,
    pub orbit_size: usize,
    pub pattern: Vec<String>,
    pub outcome: ClassOutcome,
}

/// A fixture pattern with a free entry resolved one way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariantOutcome {
    pub pattern: Vec<String>,
    pub feasible: bool,
    pub fired: Vec<RefutationRecord>,
}

/// Everything the filters found out about one candidate digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateFilterReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub item: Option<usize>,
    pub n: usize,
    /// 0-based `[u, v]` pairs in row-major order.
    pub digraph: Vec<[usize; 2]>,
    pub filters: Vec<FilterOutcome>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sign_classes: Vec<SignClassOutcome>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub variants: Vec<VariantOutcome>,
    pub refutation: Option<RefutationRecord>,
    pub verdict: Verdict,
}

impl CandidateFilterReport {
    pub fn witness(&self) -> Option<(&[String], &RealizationWitness)> {
        self.sign_classes.iter().find_map(|c| match &c.outcome {
            ClassOutcome::Witness { witness } => Some((c.pattern.as_slice(), witness)),
            _ => None,
        })
    }

    pub fn inconclusive_patterns(&self) -> Vec<&[String]> {
        self.sign_classes
            .iter()
            .filter(|c| c.outcome == ClassOutcome::Inconclusive)
            .map(|c| c.pattern.as_slice())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Realization search for classes that survive every filter; `None` skips it.
    pub search: Option<SearchOptions>,
    pub exec: Exec,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            search: Some(SearchOptions::default()),
            exec: Exec::Parallel,
        }
    }
}

pub(crate) fn pattern_rows(p: &SignPattern) -> Vec<String> {
    p.to_string().lines().map(str::to_owned).collect()
}

/// Runs the filters on one sign pattern, cheapest first.
pub fn classify_pattern(p: &SignPattern, search: Option<SearchOptions>) -> Result<ClassOutcome> {
    let coeffs = char_coefficients(p);
    if let Some(k) = first_infeasible_minor(&coeffs) {
        return Ok(ClassOutcome::InfeasibleMinor { k });
    }
    if p.n() == 7 {
        let fired = refutations_from(&coeffs);
        if !fired.is_empty() {
            return Ok(ClassOutcome::Refuted {
                fired: fired.iter().map(RefutationRecord::from).collect(),
            });
        }
    }
    if let Some((k, d)) = hurwitz_refutation(&coeffs) {
        return Ok(ClassOutcome::HurwitzRefuted {
            k,
            determinant: d.to_string(),
        });
    }
    if let Some(opts) = search {
        if let Some(witness) = search_stable_realization(p, opts)? {
            return Ok(ClassOutcome::Witness { witness });
        }
    }
    Ok(ClassOutcome::Inconclusive)
}

fn classify_class(c: &SignClass, search: Option<SearchOptions>) -> Result<SignClassOutcome> {
    Ok(SignClassOutcome {
        mask: c.representative_mask,
        orbit_size: c.orbit_size,
        pattern: pattern_rows(&c.representative),
        outcome: classify_pattern(&c.representative, search)?,
    })
}

/// Filters a candidate digraph: strong connectivity, circumference, minor
/// support, then every sign class on its support.
pub fn analyze_digraph(g: &Digraph, opts: AnalyzeOptions) -> Result<CandidateFilterReport> {
    let n = g.n();
    let mut report = CandidateFilterReport {
        item: None,
        n,
        digraph: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        filters: Vec::new(),
        sign_classes: Vec::new(),
        variants: Vec::new(),
        refutation: None,
        verdict: Verdict::Eliminated,
    };
    if !g.is_strongly_connected() {
        let unreachable = (0..n).find(|&v| g.reachable_from(0) >> v & 1 == 0 || g.reverse().reachable_from(0) >> v & 1 == 0);
        report.filters.push(FilterOutcome::new(
            "strongly-connected",
            false,
            format!("vertex {} and vertex 0 are not mutually reachable", unreachable.unwrap_or(0)),
        ));
        return Ok(report);
    }
    report
        .filters
        .push(FilterOutcome::new("strongly-connected", true, "yes".into()));
    report
        .filters
        .push(FilterOutcome::new("circumference", true, circumference(g).to_string()));
    let support = achievable_minor_sizes(g);
    if !support.is_full() {
        let missing = support.missing();
        report.filters.push(FilterOutcome::new(
            "minor-support",
            false,
            format!("no disjoint cycle family covers {missing:?} vertices"),
        ));
        return Ok(report);
    }
    report
        .filters
        .push(FilterOutcome::new("minor-support", true, format!("all sizes 1..={n}")));

    let classes = sign_classes(g)?;
    let outcomes: Result<Vec<SignClassOutcome>> = exec::map(opts.exec, &classes, |c| classify_class(c, opts.search))
        .into_iter()
        .collect();
    report.sign_classes = outcomes?;

    let count = |f: fn(&ClassOutcome) -> bool| report.sign_classes.iter().filter(|c| f(&c.outcome)).count();
    let infeasible = count(|o| matches!(o, ClassOutcome::InfeasibleMinor { .. }));
    let refuted = count(|o| matches!(o, ClassOutcome::Refuted { .. } | ClassOutcome::HurwitzRefuted { .. }));
    let witnesses = count(|o| matches!(o, ClassOutcome::Witness { .. }));
    let inconclusive = count(|o| matches!(o, ClassOutcome::Inconclusive));
    report.verdict = if witnesses > 0 {
        Verdict::PotentiallyStable
    } else if inconclusive > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Eliminated
    };
    report.filters.push(FilterOutcome::new(
        "sign-classes",
        report.verdict != Verdict::Eliminated,
        format!(
            "{} classes: {infeasible} infeasible minors, {refuted} refuted, {witnesses} stable, {inconclusive} inconclusive",
            classes.len()
        ),
    ));
    report.refutation = report.sign_classes.iter().find_map(|c| match &c.outcome {
        ClassOutcome::Refuted { fired } => preferred_record(fired).cloned(),
        _ => None,
    });
    Ok(report)
}

/// First nonzero difference, else the first one.
pub(crate) fn preferred_record(fired: &[RefutationRecord]) -> Option<&RefutationRecord> {
    fired.iter().find(|r| r.difference != "0").or_else(|| fired.first())
}

/// The preferred refutation of a 7x7 pattern as a report record.
pub fn refutation_record(p: &SignPattern) -> Result<Option<RefutationRecord>> {
    let all = crate::stability::symbolic_refutations(p)?;
    Ok(preferred_refutation(&all).map(RefutationRecord::from))
}

/// How [`analyze_pattern`] ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatternVerdict {
    NotPotentiallyStable,
    PotentiallyStable,
    Inconclusive,
}

/// Filter trace for a single sign pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternAnalysis {
    pub n: usize,
    pub steps: Vec<FilterOutcome>,
    pub warnings: Vec<String>,
    pub verdict: PatternVerdict,
    pub message: String,
    pub refutation: Option<RefutationRecord>,
    pub witness: Option<RealizationWitness>,
}

pub const MAX_ANALYZE_N: usize = 7;

/// Runs irreducibility, circumference, minor support, minor signs, the
/// symbolic inequalities (7x7), Hurwitz determinants and finally the
/// realization search, stopping at the first decisive step.
pub fn analyze_pattern(p: &SignPattern, search: Option<SearchOptions>) -> Result<PatternAnalysis> {
    let n = p.n();
    if n > MAX_ANALYZE_N {
        return Err(crate::error::Error::Unsupported(format!(
            "symbolic refutation supports patterns up to {MAX_ANALYZE_N}x{MAX_ANALYZE_N}, got {n}x{n}"
        )));
    }
    let g = p.support_digraph();
    let mut a = PatternAnalysis {
        n,
        steps: Vec::new(),
        warnings: Vec::new(),
        verdict: PatternVerdict::Inconclusive,
        message: String::new(),
        refutation: None,
        witness: None,
    };
    let irreducible = p.is_irreducible();
    a.steps.push(FilterOutcome::new("irreducible", irreducible, irreducible.to_string()));
    if !irreducible {
        a.warnings.push("pattern is reducible; its spectrum splits into diagonal blocks".into());
    }
    a.steps
        .push(FilterOutcome::new("circumference", true, circumference(&g).to_string()));
    let not_ps = |mut a: PatternAnalysis, message: String| {
        a.verdict = PatternVerdict::NotPotentiallyStable;
        a.message = message;
        Ok(a)
    };

    let support = achievable_minor_sizes(&g);
    let missing = support.missing();
    a.steps.push(FilterOutcome::new(
        "minor-support",
        missing.is_empty(),
        if missing.is_empty() { format!("all sizes 1..={n}") } else { format!("missing sizes {missing:?}") },
    ));
    if let Some(&k) = missing.first() {
        return not_ps(a, format!("not PS: E_{k} \u{2261} 0"));
    }

    let coeffs = char_coefficients(p);
    let infeasible = first_infeasible_minor(&coeffs);
    a.steps.push(FilterOutcome::new(
        "minor-signs",
        infeasible.is_none(),
        match infeasible {
            Some(k) => format!("c_{k} has no positive monomial"),
            None => "every c_k has a positive monomial".into(),
        },
    ));
    if let Some(k) = infeasible {
        return not_ps(a, format!("not PS: E_{k} never has sign (-1)^{k}"));
    }

    if n == 7 {
        let fired = refutations_from(&coeffs);
        a.steps.push(FilterOutcome::new(
            "necessary-inequalities",
            fired.is_empty(),
            if fired.is_empty() {
                "no inequality fails identically".into()
            } else {
                fired.iter().map(|r| format!("#{}: {}", r.inequality, r.difference)).collect::<Vec<_>>().join("; ")
            },
        ));
        if let Some(r) = preferred_refutation(&fired) {
            let record = RefutationRecord::from(r);
            let message = format!("not potentially stable (Lemma ineq #{})", record.inequality);
            a.refutation = Some(record);
            return not_ps(a, message);
        }
    }

    let hurwitz = hurwitz_refutation(&coeffs);
    a.steps.push(FilterOutcome::new(
        "hurwitz-determinants",
        hurwitz.is_none(),
        match &hurwitz {
            Some((k, _)) => format!("Delta_{k} has no positive monomial"),
            None => "every Delta_k has a positive monomial".into(),
        },
    ));
    if let Some((k, _)) = hurwitz {
        return not_ps(a, format!("not PS: Hurwitz determinant Delta_{k} <= 0"));
    }

    match search {
        None => {
            a.steps.push(FilterOutcome::new("realization", false, "skipped".into()));
            a.message = "inconclusive (realization search skipped)".into();
        }
        Some(opts) => match search_stable_realization(p, opts)? {
            Some(w) => {
                a.steps.push(FilterOutcome::new("realization", true, "certified stable".into()));
                a.verdict = PatternVerdict::PotentiallyStable;
                a.message = "stable witness found".into();
                a.witness = Some(w);
            }
            None => {
                a.steps.push(FilterOutcome::new(
                    "realization",
                    false,
                    format!("no witness within budget {} (seed {})", opts.budget, opts.seed),
                ));
                a.message = "inconclusive (no witness within budget)".into();
            }
        },
    }
    Ok(a)
}
