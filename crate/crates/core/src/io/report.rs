//! Machine- and human-readable reports. The JSON form is versioned with
//! a top-level `"schema": 1` field and is byte-deterministic for a fixed
//! problem and seed, except for the trailing `timing_ms` field, which is
//! excluded from the determinism canon.

use serde::Serialize;

use crate::cm::{
    CmVerdict, DualizingReport, GlobalCmReport, PrimeCheck, RegSeqCertificate, TheoremSuite,
    TrivExtReport, Verdict,
};
use crate::dg::DgRing;
use crate::invariants::{DegreeDim, InvariantBundle};

/// One line of the cohomology table.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologyRow {
    pub degree: i64,
    pub generators: usize,
    pub dim: i64,
}

/// Echo of the model a command ran on.
#[derive(Debug, Clone, Serialize)]
pub struct ModelSection {
    pub field_char: u64,
    pub variables: Vec<String>,
    pub ideal: Vec<String>,
    pub construction: String,
    pub nonnegative: bool,
    pub sup: i64,
    pub inf: i64,
    pub amp: i64,
    pub dim_h0: i64,
    pub cohomology: Vec<CohomologyRow>,
}

impl ModelSection {
    pub fn from_model(a: &DgRing) -> ModelSection {
        let ring = a.ring();
        ModelSection {
            field_char: ring.field().characteristic(),
            variables: (0..ring.nvars()).map(|i| ring.render(&ring.var(i))).collect(),
            ideal: a
                .h0_ideal()
                .gens()
                .iter()
                .map(|g| ring.render(g))
                .collect(),
            construction: a.kind().render(ring),
            nonnegative: a.is_nonnegative(),
            sup: a.sup(),
            inf: a.inf(),
            amp: a.amplitude(),
            dim_h0: a.h0_dim(),
            cohomology: a
                .cohomology()
                .iter()
                .map(|e| CohomologyRow {
                    degree: e.degree,
                    generators: e.module.ngens(),
                    dim: e.dim,
                })
                .collect(),
        }
    }
}

/// The dualizing model's normalization data and structure facts.
#[derive(Debug, Clone, Serialize)]
pub struct DualizingSection {
    pub shift: i64,
    pub cohomology: Vec<DegreeDim>,
    pub structure: DualizingReport,
}

/// Invariants (and optionally the torsion oracle) of one named module.
#[derive(Debug, Clone, Serialize)]
pub struct ModuleSection {
    pub name: String,
    pub invariants: InvariantBundle,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colimit_oracle: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_contained_in_profile: Option<bool>,
}

/// The complete output of one command run.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub model: ModelSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantBundle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local_cm: Option<CmVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonneg_cm: Option<CmVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_prime: Option<PrimeCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global_cm: Option<GlobalCmReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triv_ext: Option<TrivExtReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dualizing: Option<DualizingSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regseq: Option<RegSeqCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_suite: Option<TheoremSuite>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str, model: &DgRing) -> Report {
        Report {
            schema: 1,
            command: command.to_string(),
            model: ModelSection::from_model(model),
            invariants: None,
            local_cm: None,
            nonneg_cm: None,
            at_prime: None,
            global_cm: None,
            triv_ext: None,
            dualizing: None,
            regseq: None,
            theorem_suite: None,
            modules: Vec::new(),
            notes: Vec::new(),
            timing_ms: 0,
        }
    }

    /// Every verdict present anywhere in the report. Used by the
    /// `--assert` exit-code policy.
    pub fn verdicts(&self) -> Vec<Verdict> {
        let mut out = Vec::new();
        if let Some(v) = &self.local_cm {
            out.push(v.verdict);
        }
        if let Some(v) = &self.nonneg_cm {
            out.push(v.verdict);
        }
        if let Some(v) = &self.at_prime {
            out.push(v.verdict);
        }
        if let Some(v) = &self.global_cm {
            out.push(v.verdict);
        }
        if let Some(v) = &self.triv_ext {
            out.push(v.verdict);
        }
        if let Some(v) = &self.dualizing {
            out.push(v.structure.verdict);
        }
        if let Some(t) = &self.theorem_suite {
            if !t.all_hold {
                out.push(Verdict::Unknown);
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let m = &self.model;
        let quotient = if m.ideal.is_empty() {
            String::new()
        } else {
            format!(" / ({})", m.ideal.join(", "))
        };
        out.push_str(&format!(
            "model: {} over F_{}[{}]{}\n",
            m.construction,
            m.field_char,
            m.variables.join(", "),
            quotient
        ));
        out.push_str(&format!(
            "degrees: sup {}  inf {}  amp {}  dim_h0 {}\n",
            m.sup, m.inf, m.amp, m.dim_h0
        ));
        out.push_str("cohomology:\n");
        for row in &m.cohomology {
            out.push_str(&format!(
                "  degree {:>3}: {} generator(s), dim {}\n",
                row.degree, row.generators, row.dim
            ));
        }
        if let Some(b) = &self.invariants {
            out.push_str("invariants:\n");
            out.push_str(&format!(
                "  lc_dim {}  depth {}  seq_depth {}\n",
                b.lc_dim, b.depth, b.seq_depth
            ));
            let profile: Vec<String> = b
                .rgamma
                .iter()
                .map(|e| format!("{}:{}", e.degree, e.dim))
                .collect();
            out.push_str(&format!(
                "  torsion profile [degree:dim]: {}  (sup {}, inf {}, amp {})\n",
                profile.join(" "),
                b.rgamma_sup,
                b.rgamma_inf,
                b.rgamma_amp
            ));
        }
        if let Some(v) = &self.local_cm {
            render_verdict_text(&mut out, "local verdict", v);
        }
        if let Some(v) = &self.nonneg_cm {
            render_verdict_text(&mut out, "non-negative verdict", v);
        }
        if let Some(c) = &self.at_prime {
            out.push_str(&format!(
                "at prime {}: {}  (model amp {}, dualizing amp {}{})\n",
                c.prime,
                c.verdict,
                c.amp_model,
                c.amp_dualizing,
                if c.trusted_prime { "" } else { "; primality assumed" }
            ));
            for n in &c.notes {
                out.push_str(&format!("  note: {}\n", n));
            }
        }
        if let Some(g) = &self.global_cm {
            out.push_str(&format!("global verdict: {}\n", g.verdict));
            for c in &g.checks {
                out.push_str(&format!(
                    "  at {}: {}  (model amp {}, dualizing amp {})\n",
                    c.prime, c.verdict, c.amp_model, c.amp_dualizing
                ));
            }
            for u in &g.uncovered {
                out.push_str(&format!("  uncovered stratum: {}\n", u));
            }
            for n in &g.notes {
                out.push_str(&format!("  note: {}\n", n));
            }
        }
        if let Some(t) = &self.triv_ext {
            out.push_str(&format!(
                "extension structure: verdict {}  (hypotheses {}; base dim {} depth {}; module dim {} depth {}; shift {})\n",
                t.verdict,
                if t.hypotheses_met { "hold" } else { "fail" },
                t.dim_base,
                t.depth_base,
                t.dim_module,
                t.depth_module,
                t.shift
            ));
            for n in &t.notes {
                out.push_str(&format!("  note: {}\n", n));
            }
        }
        if let Some(d) = &self.dualizing {
            out.push_str(&format!("dualizing model (shift {}):\n", d.shift));
            for e in &d.cohomology {
                out.push_str(&format!("  degree {:>3}: dim {}\n", e.degree, e.dim));
            }
            out.push_str(&format!(
                "  bottom full: {}  support bound: {}  top full: {}  verdict: {}\n",
                d.structure.bottom_dim_full,
                d.structure.support_bound_holds,
                d.structure.top_dim_full,
                d.structure.verdict
            ));
        }
        if let Some(r) = &self.regseq {
            out.push_str(&format!(
                "regular sequence [{}] of length {} (target {}){}\n",
                r.elements.join(", "),
                r.elements.len(),
                r.target_length,
                if r.is_system_of_parameters {
                    "; system of parameters"
                } else {
                    ""
                }
            ));
            for s in &r.steps {
                out.push_str(&format!(
                    "  step {}: dim_h0 {} -> {}, amp {} -> {}\n",
                    s.element, s.h0_dim_before, s.h0_dim_after, s.amp_before, s.amp_after
                ));
            }
        }
        if let Some(t) = &self.theorem_suite {
            out.push_str(&format!(
                "theorem suite: {} of {} checks hold\n",
                t.checks.iter().filter(|c| c.holds).count(),
                t.checks.len()
            ));
            for c in &t.checks {
                out.push_str(&format!(
                    "  [{}] {}: {}\n",
                    if c.holds { "ok" } else { "FAIL" },
                    c.name,
                    c.details
                ));
            }
        }
        for s in &self.modules {
            out.push_str(&format!(
                "module {}: lc_dim {}  depth {}  sup {}  inf {}\n",
                s.name, s.invariants.lc_dim, s.invariants.depth, s.invariants.sup, s.invariants.inf
            ));
            if let Some(o) = &s.colimit_oracle {
                let degrees: Vec<String> = o.iter().map(|d| d.to_string()).collect();
                out.push_str(&format!(
                    "  torsion oracle degrees: [{}]{}\n",
                    degrees.join(", "),
                    match s.oracle_contained_in_profile {
                        Some(true) => "  (contained in the torsion profile)",
                        Some(false) => "  (NOT contained in the torsion profile)",
                        None => "",
                    }
                ));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {}\n", n));
        }
        out.push_str(&format!("timing_ms: {}\n", self.timing_ms));
        out
    }
}

fn render_verdict_text(out: &mut String, label: &str, v: &CmVerdict) {
    out.push_str(&format!("{}: {}\n", label, v.verdict));
    out.push_str(&format!("  route: {}\n", v.route));
    let quantities: Vec<String> = v
        .certificate
        .iter()
        .map(|q| format!("{} {}", q.name, q.value))
        .collect();
    out.push_str(&format!("  certificate: {}\n", quantities.join("  ")));
    for n in &v.notes {
        out.push_str(&format!("  note: {}\n", n));
    }
}

/// Strips the timing line from a rendered report, for determinism
/// comparisons in either format.
pub fn strip_timing(rendered: &str) -> String {
    rendered
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"timing_ms\"") && !l.starts_with("timing_ms:"))
        .collect::<Vec<_>>()
        .join("\n")
}
