//! The fifteen 7-vertex, 10-edge candidate sign patterns.
//!
//! Rows are transcribed from the signed matrices; `*` marks an entry whose sign
//! is free (both signs give feasible minors). Vertex labels are 1-based in the
//! rendered variable names (`a45` is row 4, column 5).
//!
//! Two printed signs are corrected so that every pattern has feasible minors:
//! item 1 uses `-a71` (the printed `+a71` makes the 7-cycle force `c7 < 0`) and
//! item 13 uses `+a27` (the printed `-a27, -a72` force `c2 < 0`). Neither entry
//! appears in the refuting difference.

use crate::digraph::Digraph;
use crate::pattern::{Sign, SignPattern};

/// One candidate: signed matrix, free-sign entries and the inequality whose
/// difference the worked computation exhibits.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub index: usize,
    rows: [&'static str; 7],
    /// Index (1..=4) of the necessary inequality used to refute this item.
    pub expected_inequality: u8,
    /// Exact rendered difference, where the worked computation states one.
    pub expected_difference: Option<&'static str>,
}

impl Fixture {
    /// The pattern with every free entry set to `+`.
    pub fn pattern(&self) -> SignPattern {
        self.pattern_with(Sign::Plus)
    }

    /// The pattern with every free entry set to `free`.
    pub fn pattern_with(&self, free: Sign) -> SignPattern {
        let rows: Vec<Vec<Sign>> = self
            .rows
            .iter()
            .map(|r| {
                r.split(' ')
                    .map(|t| match t {
                        "*" => free,
                        t => Sign::from_symbol(t.chars().next().unwrap()).unwrap(),
                    })
                    .collect()
            })
            .collect();
        SignPattern::from_rows(&rows).expect("fixture rows are 7x7")
    }

    /// Every concrete pattern: one, or two when an entry is free.
    pub fn variants(&self) -> Vec<SignPattern> {
        if self.free_entries().is_empty() {
            vec![self.pattern()]
        } else {
            vec![self.pattern_with(Sign::Plus), self.pattern_with(Sign::Minus)]
        }
    }

    pub fn free_entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (j, t) in r.split(' ').enumerate() {
                if t == "*" {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn digraph(&self) -> Digraph {
        self.pattern().support_digraph()
    }
}

const FIXTURES: [Fixture; 15] = [
    Fixture {
        index: 1,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 0",
            "0 - 0 + 0 0 0",
            "0 0 0 0 + 0 0",
            "0 0 0 0 0 + 0",
            "0 0 0 - 0 0 +",
            "- 0 0 0 0 0 0",
        ],
        expected_inequality: 2,
        expected_difference: Some("- a45*a56*a64"),
    },
    Fixture {
        index: 2,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 0",
            "0 - 0 + 0 0 0",
            "0 0 0 0 + 0 0",
            "0 0 0 0 0 + 0",
            "0 0 0 0 0 0 +",
            "- 0 0 0 - 0 0",
        ],
        expected_inequality: 2,
        expected_difference: Some("- a56*a67*a75"),
    },
    Fixture {
        index: 3,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 0",
            "0 - 0 + 0 0 0",
            "0 0 0 0 + 0 0",
            "0 0 0 0 0 + 0",
            "0 0 0 0 0 0 +",
            "* 0 0 - 0 0 0",
        ],
        expected_inequality: 1,
        expected_difference: Some("0"),
    },
    Fixture {
        index: 4,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 0",
            "0 0 0 + 0 0 0",
            "0 0 - 0 + 0 0",
            "0 0 0 0 0 + 0",
            "0 0 0 0 0 0 +",
            "- 0 0 0 - 0 0",
        ],
        expected_inequality: 2,
        expected_difference: Some("- a56*a67*a75"),
    },
    Fixture {
        index: 5,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 0",
            "0 0 0 + 0 0 +",
            "0 0 0 0 + 0 0",
            "0 0 0 0 0 + 0",
            "0 0 0 0 0 0 +",
            "- 0 - 0 0 0 0",
        ],
        expected_inequality: 2,
        expected_difference: Some("0"),
    },
    Fixture {
        index: 6,
        rows: [
            "- + 0 0 0 0 0",
            "- 0 + 0 0 0 0",
            "0 0 0 + 0 0 0",
            "0 0 0 0 + 0 0",
            "0 0 - 0 0 + 0",
            "0 0 0 0 0 0 +",
            "0 - 0 0 0 0 0",
        ],
        expected_inequality: 3,
        expected_difference: Some("0"),
    },
    Fixture {
        index: 7,
        rows: [
            "- + 0 0 0 0 0",
            "- 0 + 0 0 0 0",
            "0 0 0 + 0 0 0",
            "0 0 0 0 + 0 0",
            "0 0 0 0 0 + 0",
            "0 0 0 - 0 0 +",
            "0 - 0 0 0 0 0",
        ],
        expected_inequality: 3,
        expected_difference: Some("0"),
    },
    Fixture {
        index: 8,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 0",
            "0 0 0 + 0 0 0",
            "0 0 0 0 + 0 0",
            "0 - 0 0 0 + 0",
            "- 0 0 0 0 0 +",
            "0 0 0 0 0 - 0",
        ],
        expected_inequality: 1,
        expected_difference: None,
    },
    Fixture {
        index: 9,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 0",
            "0 - 0 + 0 0 0",
            "0 0 0 0 + 0 0",
            "0 0 0 0 0 + 0",
            "* 0 0 0 0 0 +",
            "0 0 0 - 0 0 0",
        ],
        expected_inequality: 4,
        expected_difference: Some("0"),
    },
    Fixture {
        index: 10,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 0",
            "0 0 0 + 0 0 0",
            "0 0 0 0 + 0 +",
            "* 0 0 0 0 + 0",
            "0 0 0 0 - 0 0",
            "0 - 0 0 0 0 0",
        ],
        expected_inequality: 1,
        expected_difference: Some("0"),
    },
    Fixture {
        index: 11,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 0",
            "0 - 0 + 0 0 0",
            "0 0 0 0 + 0 0",
            "* 0 0 0 0 + 0",
            "0 0 0 0 0 0 +",
            "0 0 0 - 0 0 0",
        ],
        expected_inequality: 1,
        expected_difference: Some("0"),
    },
    Fixture {
        index: 12,
        rows: [
            "- + 0 0 0 0 0",
            "- 0 + 0 0 0 0",
            "0 0 0 + 0 0 0",
            "0 - 0 0 + 0 0",
            "0 0 0 0 0 + 0",
            "0 0 0 0 0 0 +",
            "0 0 - 0 0 0 0",
        ],
        expected_inequality: 4,
        expected_difference: Some("0"),
    },
    Fixture {
        index: 13,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 +",
            "* 0 0 + 0 0 0",
            "0 0 0 0 + 0 0",
            "0 0 0 0 0 + 0",
            "0 0 - 0 0 0 0",
            "0 - 0 0 0 0 0",
        ],
        expected_inequality: 1,
        expected_difference: Some("0"),
    },
    Fixture {
        index: 14,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 0 0 0",
            "0 0 0 + 0 + 0",
            "* 0 0 0 + 0 0",
            "0 0 0 - 0 0 0",
            "0 0 0 0 0 0 +",
            "0 - 0 0 0 0 0",
        ],
        expected_inequality: 4,
        expected_difference: Some("0"),
    },
    Fixture {
        index: 15,
        rows: [
            "- + 0 0 0 0 0",
            "0 0 + 0 + 0 0",
            "0 0 0 + 0 0 0",
            "* 0 - 0 0 0 0",
            "0 0 0 0 0 + 0",
            "0 0 0 0 0 0 +",
            "0 - 0 0 0 0 0",
        ],
        expected_inequality: 4,
        expected_difference: Some("0"),
    },
];

/// All fifteen fixtures in order.
pub fn all() -> &'static [Fixture] {
    &FIXTURES
}

/// Fixture by 1-based index.
pub fn item(index: usize) -> &'static Fixture {
    &FIXTURES[index - 1]
}
