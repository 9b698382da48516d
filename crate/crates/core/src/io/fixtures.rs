//! Bundled example problems with pinned expected outcomes. Every
//! fixture's expectation is re-verified against the live computation in
//! the test suite.

use crate::cm::Verdict;

/// Expected outcome fragment for one bundled fixture.
#[derive(Debug, Clone)]
pub struct Expected {
    /// The command whose verdict is pinned: `check-cm` for non-positive
    /// models, `check-cm-nonneg` for non-negative ones.
    pub command: &'static str,
    pub verdict: Verdict,
    /// Model amplitude, when pinned.
    pub amp: Option<i64>,
    /// Sequential depth, when pinned (non-positive models only).
    pub seq_depth: Option<i64>,
    /// Per-prime verdicts, keyed by the rendered prime.
    pub at_primes: &'static [(&'static str, Verdict)],
    /// The stratified global verdict, when pinned.
    pub global: Option<Verdict>,
}

/// One bundled example: name, human description, raw problem text, and
/// the pinned expectation.
#[derive(Debug, Clone)]
pub struct BundledExample {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
    pub expected: Expected,
}

/// All bundled examples, in a fixed order.
pub fn bundled_examples() -> Vec<BundledExample> {
    vec![
        BundledExample {
            name: "reg-not-par",
            description: "k[x,y]/(xy) extended by (R/x)[1]: y is regular but not a parameter",
            text: include_str!("../../fixtures/reg-not-par.dgcm"),
            expected: Expected {
                command: "check-cm",
                verdict: Verdict::Cm,
                amp: Some(1),
                seq_depth: Some(1),
                at_primes: &[],
                global: Some(Verdict::Cm),
            },
        },
        BundledExample {
            name: "localiz-counterexample",
            description:
                "k[x,y,z]/(y^2z,xyz) extended by (A/zA)[2]: Cohen-Macaulay at the irrelevant \
                 ideal, not at (x,y)",
            text: include_str!("../../fixtures/localiz-counterexample.dgcm"),
            expected: Expected {
                command: "check-cm",
                verdict: Verdict::Cm,
                amp: Some(2),
                seq_depth: Some(2),
                at_primes: &[("(x, y)", Verdict::NotCm)],
                global: Some(Verdict::NotCm),
            },
        },
        BundledExample {
            name: "nonneg-counterexample",
            description: "k[x] extended by k in degree +1: torsion amplitude 0 below amplitude 1",
            text: include_str!("../../fixtures/nonneg-counterexample.dgcm"),
            expected: Expected {
                command: "check-cm-nonneg",
                verdict: Verdict::NotCm,
                amp: Some(1),
                seq_depth: None,
                at_primes: &[],
                global: None,
            },
        },
        BundledExample {
            name: "gorenstein-kx",
            description: "k[x] extended by its dualizing module in degree -1",
            text: include_str!("../../fixtures/gorenstein-kx.dgcm"),
            expected: Expected {
                command: "check-cm",
                verdict: Verdict::Cm,
                amp: Some(1),
                seq_depth: Some(1),
                at_primes: &[],
                global: Some(Verdict::Cm),
            },
        },
        BundledExample {
            name: "gorenstein-hypersurface",
            description: "k[x,y]/(xy) extended by its dualizing module in degree -1",
            text: include_str!("../../fixtures/gorenstein-hypersurface.dgcm"),
            expected: Expected {
                command: "check-cm",
                verdict: Verdict::Cm,
                amp: Some(1),
                seq_depth: Some(1),
                at_primes: &[],
                global: Some(Verdict::Cm),
            },
        },
        BundledExample {
            name: "gorenstein-y2",
            description: "k[x,y]/(y^2) extended by its dualizing module in degree -1",
            text: include_str!("../../fixtures/gorenstein-y2.dgcm"),
            expected: Expected {
                command: "check-cm",
                verdict: Verdict::Cm,
                amp: Some(1),
                seq_depth: Some(1),
                at_primes: &[],
                global: Some(Verdict::Cm),
            },
        },
        BundledExample {
            name: "zero-dim-koszul",
            description: "Koszul model on x over k[x]/(x^2): zero dimensional, hence Cohen-Macaulay",
            text: include_str!("../../fixtures/zero-dim-koszul.dgcm"),
            expected: Expected {
                command: "check-cm",
                verdict: Verdict::Cm,
                amp: Some(1),
                seq_depth: Some(0),
                at_primes: &[],
                global: Some(Verdict::Cm),
            },
        },
        BundledExample {
            name: "derived-fiber",
            description: "derived fiber of k[x,y]/(x^2) at the closed point: zero dimensional",
            text: include_str!("../../fixtures/derived-fiber.dgcm"),
            expected: Expected {
                command: "check-cm",
                verdict: Verdict::Cm,
                amp: Some(1),
                seq_depth: Some(0),
                at_primes: &[],
                global: Some(Verdict::Cm),
            },
        },
        BundledExample {
            name: "non-cm-witness",
            description: "k[x,y] extended by the irrelevant ideal in degree -2: not Cohen-Macaulay",
            text: include_str!("../../fixtures/non-cm-witness.dgcm"),
            expected: Expected {
                command: "check-cm",
                verdict: Verdict::NotCm,
                amp: Some(2),
                seq_depth: Some(1),
                at_primes: &[],
                global: Some(Verdict::NotCm),
            },
        },
    ]
}

/// Looks up a bundled example by name.
pub fn bundled_example(name: &str) -> Option<BundledExample> {
    bundled_examples().into_iter().find(|e| e.name == name)
}
