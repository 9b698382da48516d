//! Cohen–Macaulay analysis for differential graded models.
//!
//! Local criteria (torsion amplitude and sequential depth), duality-based
//! criteria through a normalized dualizing model, regularity of elements
//! and regular-sequence search with step-by-step certificates, a
//! stratified global check over candidate primes derived from cohomology
//! annihilators, a structure-based shortcut for trivial extensions, the
//! criterion for non-negative models, and a theorem suite that cross
//! checks every route on a given model.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::ideal::monomial_minimal_primes;
use crate::algebra::{Ideal, Monomial, Polynomial};
use crate::dg::{CohomologyEntry, DgKind, DgModule, DgRing};
use crate::error::KernelError;
use crate::KResult;
use crate::homalg::resolve::minimalize_free_complex;
use crate::homalg::modvec::kernel_of_columns;
use crate::homalg::resolve::resolve_complex;
use crate::homalg::{Complex, PresentedModule};
use crate::invariants::{depth_via_koszul, invariants_of_ring, rgamma_profile, DegreeDim, ExtInt};

/// Outcome of a Cohen–Macaulay test. `Unknown` is reserved for the
/// stratified global check when some candidate stratum cannot be reduced
/// to monomial primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "CM")]
    Cm,
    #[serde(rename = "NOT_CM")]
    NotCm,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Cm => "CM",
            Verdict::NotCm => "NOT_CM",
            Verdict::Unknown => "UNKNOWN",
        };
        write!(f, "{}", s)
    }
}

/// A named numeric quantity in a certificate, e.g. `amp` or `seq_depth`.
#[derive(Debug, Clone, Serialize)]
pub struct NamedQuantity {
    pub name: String,
    pub value: ExtInt,
}

fn nq(name: &str, value: ExtInt) -> NamedQuantity {
    NamedQuantity {
        name: name.to_string(),
        value,
    }
}

fn nqi(name: &str, value: i64) -> NamedQuantity {
    nq(name, ExtInt::Finite(value))
}

/// A verdict together with the route that produced it and the numeric
/// certificate backing it.
#[derive(Debug, Clone, Serialize)]
pub struct CmVerdict {
    pub verdict: Verdict,
    pub route: String,
    pub certificate: Vec<NamedQuantity>,
    pub notes: Vec<String>,
}

/// Local Cohen–Macaulay test for a non-positive model: the torsion
/// profile of the model must span exactly the amplitude of the model,
/// equivalently the sequential depth must equal the dimension of the
/// degree-zero cohomology. Both routes are computed and must agree; a
/// disagreement indicates an internal inconsistency and is an error.
pub fn check_local_cm(a: &DgRing) -> KResult<CmVerdict> {
    if a.is_nonnegative() {
        return Err(KernelError::unsupported(
            "the local criterion applies to non-positive models; use the non-negative check",
        ));
    }
    let bundle = invariants_of_ring(a)?;
    let amp = ExtInt::Finite(a.amplitude());
    let d = a.h0_dim();
    let torsion_route = bundle.rgamma_amp == amp;
    let depth_route = bundle.seq_depth == ExtInt::Finite(d);
    if torsion_route != depth_route {
        return Err(KernelError::structural(format!(
            "torsion-amplitude and depth criteria disagree (amp={} rgamma_amp={} seq_depth={} dim_h0={}); \
             this indicates a kernel inconsistency",
            amp, bundle.rgamma_amp, bundle.seq_depth, d
        )));
    }
    let verdict = if torsion_route { Verdict::Cm } else { Verdict::NotCm };
    Ok(CmVerdict {
        verdict,
        route: "torsion amplitude equals model amplitude; sequential depth equals degree-zero dimension"
            .to_string(),
        certificate: vec![
            nq("amp", amp),
            nq("rgamma_amp", bundle.rgamma_amp),
            nq("depth", bundle.depth),
            nq("seq_depth", bundle.seq_depth),
            nqi("dim_h0", d),
            nq("lc_dim", bundle.lc_dim),
        ],
        notes: Vec::new(),
    })
}

/// Cohen–Macaulay test for a module over a non-positive model: the
/// module amplitude, the model amplitude, and the torsion amplitude of
/// the module must all coincide. The zero module is excluded from the
/// definition and is rejected.
pub fn check_cm_module(a: &DgRing, m: &DgModule) -> KResult<CmVerdict> {
    if a.is_nonnegative() {
        return Err(KernelError::unsupported(
            "module-level Cohen–Macaulay tests apply over non-positive models",
        ));
    }
    if m.is_zero() {
        return Err(KernelError::degenerate(
            "the zero module is excluded from the Cohen–Macaulay definition",
        ));
    }
    let amp_model = a.amplitude();
    let amp_module = m
        .amplitude()
        .expect("nonzero module has finite amplitude");
    let profile = rgamma_profile(m.complex())?;
    let rg_amp = profile.amp();
    let verdict = if amp_module == amp_model && rg_amp == ExtInt::Finite(amp_model) {
        Verdict::Cm
    } else {
        Verdict::NotCm
    };
    Ok(CmVerdict {
        verdict,
        route: "module amplitude, model amplitude, and torsion amplitude all coincide".to_string(),
        certificate: vec![
            nqi("amp_model", amp_model),
            nqi("amp_module", amp_module),
            nq("rgamma_amp", rg_amp),
        ],
        notes: Vec::new(),
    })
}

/// Maximal Cohen–Macaulay test: for a module already passing the
/// Cohen–Macaulay test, its support dimension must attain the maximum
/// `sup + dim H^0(model)`. Modules failing the Cohen–Macaulay test are
/// rejected, since maximality is only defined for them.
pub fn check_mcm_module(a: &DgRing, m: &DgModule) -> KResult<CmVerdict> {
    let cm = check_cm_module(a, m)?;
    if cm.verdict != Verdict::Cm {
        return Err(KernelError::unsupported(
            "maximality is defined for modules that pass the Cohen–Macaulay test",
        ));
    }
    let bundle = crate::invariants::invariants_of_module(m)?;
    let sup = m.sup().expect("nonzero module has a top degree");
    let d = a.h0_dim();
    let target = ExtInt::Finite(sup + d);
    let verdict = if bundle.lc_dim == target {
        Verdict::Cm
    } else {
        Verdict::NotCm
    };
    Ok(CmVerdict {
        verdict,
        route: "support dimension attains its maximal value sup + dim_h0".to_string(),
        certificate: vec![
            nq("lc_dim", bundle.lc_dim),
            nqi("sup", sup),
            nqi("dim_h0", d),
        ],
        notes: cm.notes,
    })
}

/// A dualizing model for a non-positive model, normalized so that its
/// bottom cohomology sits in degree `-dim H^0(model)`.
#[derive(Debug, Clone)]
pub struct DualizingModel {
    /// The normalized complex (free terms; dual of a minimal resolution).
    pub complex: Complex,
    /// The shift applied during normalization: cohomology in normalized
    /// degree `i` is the dual-side cohomology in degree `i + shift`.
    pub shift: i64,
    /// Nonzero cohomology of the normalized complex, ascending by degree.
    pub cohomology: Vec<CohomologyEntry>,
}

impl DualizingModel {
    pub fn sup(&self) -> i64 {
        self.cohomology.last().expect("dualizing model is nonzero").degree
    }

    pub fn inf(&self) -> i64 {
        self.cohomology.first().expect("dualizing model is nonzero").degree
    }

    pub fn amplitude(&self) -> i64 {
        self.sup() - self.inf()
    }

    pub fn entry_at(&self, degree: i64) -> Option<&CohomologyEntry> {
        self.cohomology.iter().find(|e| e.degree == degree)
    }

    pub fn degree_dims(&self) -> Vec<DegreeDim> {
        self.cohomology
            .iter()
            .map(|e| DegreeDim {
                degree: e.degree,
                dim: e.dim,
            })
            .collect()
    }

    /// Support dimension `max(dim H^i + i)` of the normalized model.
    pub fn lc_dim(&self) -> i64 {
        self.cohomology
            .iter()
            .map(|e| e.dim + e.degree)
            .max()
            .expect("dualizing model is nonzero")
    }
}

/// Builds the normalized dualizing model of a non-positive model: dual
/// of a minimal free resolution of the model's complex, shifted so that
/// the bottom nonzero cohomology sits in degree `-dim H^0(model)`. The
/// amplitude of the result is checked to dominate the model amplitude.
pub fn dualizing_dg(a: &DgRing) -> KResult<DualizingModel> {
    if a.is_nonnegative() {
        return Err(KernelError::unsupported(
            "dualizing models are constructed for non-positive models only",
        ));
    }
    let (resolution, _aug) = resolve_complex(a.complex())?;
    let minimal = minimalize_free_complex(&resolution)?;
    let dual = minimal.dual()?;
    let raw = dual.cohomology_modules();
    if raw.is_empty() {
        return Err(KernelError::structural(
            "dual of a minimal resolution has no cohomology; the model should prevent this",
        ));
    }
    let d = a.h0_dim();
    let bottom_degree = raw.first().expect("nonempty").0;
    let shift = bottom_degree + d;
    let complex = dual.shift(shift);
    let mut cohomology = Vec::with_capacity(raw.len());
    for (j, module) in raw {
        let m = module.minimalize();
        let dim = m.krull_dim();
        cohomology.push(CohomologyEntry {
            degree: j - shift,
            module: m,
            dim,
        });
    }
    let model = DualizingModel {
        complex,
        shift,
        cohomology,
    };
    if model.amplitude() < a.amplitude() {
        return Err(KernelError::structural(format!(
            "dualizing amplitude {} is below the model amplitude {}",
            model.amplitude(),
            a.amplitude()
        )));
    }
    Ok(model)
}

/// Structure facts about the normalized dualizing model, together with
/// the verdict its top cohomology dimension yields.
#[derive(Debug, Clone, Serialize)]
pub struct DualizingReport {
    /// Shift applied during normalization.
    pub shift: i64,
    /// (degree, support dimension) of each nonzero cohomology.
    pub degrees: Vec<DegreeDim>,
    /// Bottom cohomology sits in degree `-dim H^0` and has dimension
    /// exactly `dim H^0`.
    pub bottom_dim_full: bool,
    /// Every cohomology satisfies `dim + degree <= amp(model)`.
    pub support_bound_holds: bool,
    /// Top cohomology has dimension exactly `dim H^0`.
    pub top_dim_full: bool,
    /// The support dimension of the dualizing model attains
    /// `sup + dim H^0`; formally equivalent to `top_dim_full`.
    pub maximal_support: bool,
    /// Verdict derived from `top_dim_full`.
    pub verdict: Verdict,
}

/// Computes the dualizing model of a non-positive model and reports the
/// structure facts that its cohomology dimensions must satisfy, plus the
/// Cohen–Macaulay verdict read off from the top dimension.
pub fn dualizing_structure_report(a: &DgRing) -> KResult<DualizingReport> {
    let model = dualizing_dg(a)?;
    let d = a.h0_dim();
    let amp = a.amplitude();
    let bottom = model.cohomology.first().expect("nonzero");
    let bottom_dim_full = bottom.degree == -d && bottom.dim == d;
    let support_bound_holds = model.cohomology.iter().all(|e| e.dim + e.degree <= amp);
    let top = model.cohomology.last().expect("nonzero");
    let top_dim_full = top.dim == d;
    let maximal_support = model.lc_dim() == model.sup() + d;
    if top_dim_full != maximal_support {
        return Err(KernelError::structural(
            "top-dimension and maximal-support forms of the duality criterion disagree; \
             this indicates a kernel inconsistency",
        ));
    }
    Ok(DualizingReport {
        shift: model.shift,
        degrees: model.degree_dims(),
        bottom_dim_full,
        support_bound_holds,
        top_dim_full,
        maximal_support,
        verdict: if top_dim_full { Verdict::Cm } else { Verdict::NotCm },
    })
}

/// True when multiplication by `x` has trivial kernel on the presented
/// module `m`. `x` must be homogeneous of positive degree. The kernel is
/// computed as the syzygies of the columns `[x·e_i | relations]`, read in
/// the generator block and tested for membership in the relation span.
fn multiplication_kernel_is_trivial(m: &PresentedModule, x: &Polynomial) -> KResult<bool> {
    match x.homogeneous_degree() {
        Some(deg) if deg > 0 => {}
        _ => {
            return Err(KernelError::unsupported(
                "regularity candidates must be homogeneous of positive degree",
            ));
        }
    }
    if m.is_zero_module() {
        return Ok(true);
    }
    let ring = m.ctx().poly().clone();
    let g = m.ngens();
    let mut cols: Vec<Vec<Polynomial>> = Vec::with_capacity(g + m.relations().len());
    for i in 0..g {
        let mut col = vec![ring.zero(); g];
        col[i] = x.clone();
        cols.push(col);
    }
    for rel in m.relations() {
        cols.push(rel.clone());
    }
    let kernel = kernel_of_columns(&ring, g, &cols);
    for v in kernel {
        let element: Vec<Polynomial> = v[..g].to_vec();
        if !m.element_is_zero(&element) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when `x` acts injectively on the bottom cohomology of the model,
/// i.e. `x` is regular for the quotient construction. `x` must be
/// homogeneous of positive degree.
pub fn is_regular_element(a: &DgRing, x: &Polynomial) -> KResult<bool> {
    multiplication_kernel_is_trivial(&a.bottom().module, x)
}

/// One accepted step of a regular-sequence search.
#[derive(Debug, Clone, Serialize)]
pub struct RegSeqStep {
    /// Rendered linear form used in this step.
    pub element: String,
    pub h0_dim_before: i64,
    pub h0_dim_after: i64,
    pub amp_before: i64,
    pub amp_after: i64,
}

/// Certificate of a completed regular-sequence search: the elements in
/// order, per-step dimension and amplitude bookkeeping, and whether each
/// step also dropped the degree-zero dimension (a system of parameters).
#[derive(Debug, Clone, Serialize)]
pub struct RegSeqCertificate {
    pub elements: Vec<String>,
    pub steps: Vec<RegSeqStep>,
    /// The sequential depth of the input, which is the maximal possible
    /// length; a completed search always attains it.
    pub target_length: i64,
    pub is_system_of_parameters: bool,
}

fn render_partial(steps: &[RegSeqStep], target: i64) -> String {
    let elems: Vec<&str> = steps.iter().map(|s| s.element.as_str()).collect();
    format!(
        "partial sequence [{}] of length {} toward target {}",
        elems.join(", "),
        steps.len(),
        target
    )
}

/// Searches for a maximal regular sequence of linear forms on a
/// non-positive model. Candidates are the variables in order, then up to
/// `max_tries` random linear forms drawn from a deterministic generator
/// seeded by `seed`. A candidate is accepted when it acts injectively on
/// the bottom cohomology and, if `want_sop` is set, also drops the
/// degree-zero dimension by exactly one. Each accepted step is checked
/// to preserve the amplitude and drop the sequential depth by exactly
/// one; the search completes when the sequence length reaches the
/// sequential depth of the input.
pub fn find_regular_sequence(
    a: &DgRing,
    want_sop: bool,
    seed: u64,
    max_tries: u32,
) -> KResult<RegSeqCertificate> {
    if a.is_nonnegative() {
        return Err(KernelError::unsupported(
            "regular-sequence search applies to non-positive models",
        ));
    }
    let start = invariants_of_ring(a)?;
    let target = match start.seq_depth.as_finite() {
        Some(t) => t,
        None => {
            return Err(KernelError::structural(
                "a model has finite sequential depth; the constructor should prevent this",
            ));
        }
    };
    let ring = a.ring().clone();
    let n = ring.nvars();
    let p = ring.field().characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps: Vec<RegSeqStep> = Vec::new();
    let mut current: DgRing = a.clone();
    let mut seq_depth_left = target;
    while (steps.len() as i64) < target {
        let mut accepted: Option<(DgRing, RegSeqStep)> = None;
        let mut tries: usize = 0;
        let budget = n + max_tries as usize;
        while tries < budget {
            let candidate = if tries < n {
                ring.var(tries)
            } else {
                let mut f = ring.zero();
                for i in 0..n {
                    let c = rng.gen_range(0..p);
                    if c != 0 {
                        f = ring.add(&f, &ring.mul_term(&ring.var(i), &Monomial::one(n), c));
                    }
                }
                if f.is_zero() {
                    tries += 1;
                    continue;
                }
                f
            };
            tries += 1;
            if !is_regular_element(&current, &candidate)? {
                continue;
            }
            let next = current.dg_quotient(&candidate)?;
            let h0_before = current.h0_dim();
            let h0_after = next.h0_dim();
            if want_sop && h0_after != h0_before - 1 {
                continue;
            }
            if next.amplitude() != current.amplitude() {
                return Err(KernelError::structural(format!(
                    "a regular step changed the amplitude from {} to {}",
                    current.amplitude(),
                    next.amplitude()
                )));
            }
            let next_bundle = invariants_of_ring(&next)?;
            if next_bundle.seq_depth != ExtInt::Finite(seq_depth_left - 1) {
                return Err(KernelError::structural(format!(
                    "a regular step moved the sequential depth from {} to {}, expected a drop by one",
                    seq_depth_left, next_bundle.seq_depth
                )));
            }
            accepted = Some((
                next,
                RegSeqStep {
                    element: ring.render(&candidate),
                    h0_dim_before: h0_before,
                    h0_dim_after: h0_after,
                    amp_before: current.amplitude(),
                    amp_after: current.amplitude(),
                },
            ));
            break;
        }
        match accepted {
            Some((next, step)) => {
                steps.push(step);
                current = next;
                seq_depth_left -= 1;
            }
            None => {
                return Err(KernelError::IncompleteSearch {
                    tries,
                    msg: render_partial(&steps, target),
                });
            }
        }
    }
    let is_sop = !steps.is_empty() && steps.iter().all(|s| s.h0_dim_after == s.h0_dim_before - 1)
        || (steps.is_empty() && a.h0_dim() == 0);
    Ok(RegSeqCertificate {
        elements: steps.iter().map(|s| s.element.clone()).collect(),
        steps,
        target_length: target,
        is_system_of_parameters: is_sop,
    })
}

/// True when the homogeneous proper ideal `p` contains the annihilator
/// of `m`, i.e. `p` lies in the support of `m`.
pub fn supp_contains(m: &PresentedModule, p: &Ideal) -> KResult<bool> {
    if p.is_unit() {
        return Err(KernelError::degenerate(
            "support queries require a proper ideal",
        ));
    }
    if !p.is_homogeneous() {
        return Err(KernelError::unsupported(
            "support queries require a homogeneous ideal",
        ));
    }
    Ok(p.contains_ideal(&m.annihilator()))
}

/// Result of a Cohen–Macaulay test at one candidate prime.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeCheck {
    /// Rendered generators of the candidate prime.
    pub prime: String,
    pub verdict: Verdict,
    /// Span of the model cohomology degrees surviving at the prime.
    pub amp_model: i64,
    /// Span of the dualizing cohomology degrees surviving at the prime.
    pub amp_dualizing: i64,
    /// True when every generator is a single variable, so primality is
    /// verified rather than assumed.
    pub trusted_prime: bool,
    pub notes: Vec<String>,
}

fn is_single_variable(f: &Polynomial) -> bool {
    if !f.is_term() {
        return false;
    }
    f.homogeneous_degree() == Some(1)
}

fn kind_involves_explicit(kind: &DgKind) -> bool {
    match kind {
        DgKind::Explicit => true,
        DgKind::Quotient { base, .. } => kind_involves_explicit(base),
        _ => false,
    }
}

fn surviving_span(entries: &[CohomologyEntry], p: &Ideal) -> Option<(i64, i64)> {
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    for e in entries {
        if p.contains_ideal(&e.module.annihilator()) {
            lo = Some(lo.map_or(e.degree, |v: i64| v.min(e.degree)));
            hi = Some(hi.map_or(e.degree, |v: i64| v.max(e.degree)));
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => Some((l, h)),
        _ => None,
    }
}

/// Cohen–Macaulay test at a single homogeneous candidate prime `p`
/// containing the degree-zero ideal: the degrees of model cohomology
/// supported at `p` and the degrees of dualizing cohomology supported at
/// `p` must span intervals of equal length. Candidate primes whose
/// generators are not all single variables are processed with a note
/// that their primality is assumed.
pub fn check_cm_at_prime(a: &DgRing, p: &Ideal) -> KResult<PrimeCheck> {
    if a.is_nonnegative() {
        return Err(KernelError::unsupported(
            "the stratified criterion applies to non-positive models",
        ));
    }
    if p.is_unit() {
        return Err(KernelError::degenerate(
            "candidate primes must be proper ideals",
        ));
    }
    if !p.is_homogeneous() {
        return Err(KernelError::unsupported(
            "candidate primes must be homogeneous",
        ));
    }
    if !p.contains_ideal(a.h0_ideal()) {
        return Err(KernelError::NotInSpectrum(format!(
            "{} does not contain the degree-zero ideal {}",
            p.render(),
            a.h0_ideal().render()
        )));
    }
    let mut notes = Vec::new();
    let trusted = p.gens().iter().all(is_single_variable) && !p.gens().is_empty()
        || p.is_zero_ideal();
    if !trusted {
        notes.push(format!(
            "primality of {} is assumed, not verified",
            p.render()
        ));
    }
    if kind_involves_explicit(a.kind()) {
        notes.push(
            "explicit models are analyzed as given; the degree-zero ideal is trusted".to_string(),
        );
    }
    let (mlo, mhi) = surviving_span(a.cohomology(), p)
        .expect("degree-zero cohomology survives at every prime containing its annihilator");
    let dualizing = dualizing_dg(a)?;
    let (dlo, dhi) = match surviving_span(&dualizing.cohomology, p) {
        Some(span) => span,
        None => {
            return Err(KernelError::structural(
                "no dualizing cohomology survives at a prime in the support; \
                 this indicates a kernel inconsistency",
            ));
        }
    };
    let amp_model = mhi - mlo;
    let amp_dualizing = dhi - dlo;
    Ok(PrimeCheck {
        prime: p.render(),
        verdict: if amp_model == amp_dualizing {
            Verdict::Cm
        } else {
            Verdict::NotCm
        },
        amp_model,
        amp_dualizing,
        trusted_prime: trusted,
        notes,
    })
}

/// Result of the stratified global Cohen–Macaulay check.
#[derive(Debug, Clone, Serialize)]
pub struct GlobalCmReport {
    pub verdict: Verdict,
    pub checks: Vec<PrimeCheck>,
    /// Rendered candidate strata that could not be reduced to monomial
    /// primes; nonempty `uncovered` forces `Unknown` unless some checked
    /// stratum is already `NOT_CM`.
    pub uncovered: Vec<String>,
    pub notes: Vec<String>,
}

/// Stratified global Cohen–Macaulay check. Candidate primes are the
/// monomial minimal primes of every nonempty sum of annihilators of
/// model and dualizing cohomologies, plus the irrelevant ideal and any
/// user-supplied primes. A `NOT_CM` stratum is conclusive; otherwise
/// non-monomial candidate sums leave the verdict `UNKNOWN`.
pub fn check_cm_global(a: &DgRing, user_primes: &[Ideal]) -> KResult<GlobalCmReport> {
    if a.is_nonnegative() {
        return Err(KernelError::unsupported(
            "the stratified criterion applies to non-positive models",
        ));
    }
    let ring = a.ring().clone();
    let dualizing = dualizing_dg(a)?;
    let mut annihilators: Vec<Ideal> = Vec::new();
    for e in a.cohomology() {
        annihilators.push(e.module.annihilator());
    }
    for e in &dualizing.cohomology {
        annihilators.push(e.module.annihilator());
    }
    let k = annihilators.len();
    if k > 16 {
        return Err(KernelError::unsupported(
            "too many cohomology strata for the subset-sum enumeration",
        ));
    }
    let mut uncovered: Vec<String> = Vec::new();
    let mut seen_sums: Vec<Ideal> = Vec::new();
    let mut candidate_primes: Vec<Ideal> = Vec::new();
    for mask in 1u32..(1u32 << k) {
        let mut sum: Option<Ideal> = None;
        for (i, ann) in annihilators.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = Some(match sum {
                    None => ann.clone(),
                    Some(s) => s.sum(ann),
                });
            }
        }
        let sum = sum.expect("mask is nonzero");
        if sum.is_unit() {
            continue;
        }
        if seen_sums.iter().any(|s| s.equals(&sum)) {
            continue;
        }
        seen_sums.push(sum.clone());
        if sum.is_monomial() {
            let gb_elems = sum.groebner().elements.clone();
            let primes = monomial_minimal_primes(&ring, &gb_elems)?;
            for vars in primes {
                let gens: Vec<Polynomial> = vars.iter().map(|&i| ring.var(i)).collect();
                let prime = if gens.is_empty() {
                    Ideal::zero(ring.clone())
                } else {
                    Ideal::new(ring.clone(), gens)?
                };
                candidate_primes.push(prime);
            }
        } else {
            uncovered.push(sum.render());
        }
    }
    candidate_primes.push(Ideal::irrelevant(ring.clone()));
    let mut notes: Vec<String> = Vec::new();
    for p in user_primes {
        if p.is_unit() || !p.is_homogeneous() {
            return Err(KernelError::unsupported(
                "user-supplied primes must be proper homogeneous ideals",
            ));
        }
        if !p.contains_ideal(a.h0_ideal()) {
            notes.push(format!(
                "skipped {}: not in the spectrum of the degree-zero cohomology",
                p.render()
            ));
            continue;
        }
        candidate_primes.push(p.clone());
    }
    let mut unique: Vec<Ideal> = Vec::new();
    for p in candidate_primes {
        if !unique.iter().any(|q| q.equals(&p)) {
            unique.push(p);
        }
    }
    unique.sort_by_key(|p| p.render());
    let mut checks: Vec<PrimeCheck> = Vec::new();
    for p in &unique {
        checks.push(check_cm_at_prime(a, p)?);
    }
    uncovered.sort();
    uncovered.dedup();
    let any_not_cm = checks.iter().any(|c| c.verdict == Verdict::NotCm);
    let verdict = if any_not_cm {
        Verdict::NotCm
    } else if !uncovered.is_empty() {
        Verdict::Unknown
    } else {
        Verdict::Cm
    };
    if !uncovered.is_empty() {
        notes.push(format!(
            "{} candidate stratum/strata could not be reduced to monomial primes",
            uncovered.len()
        ));
    }
    Ok(GlobalCmReport {
        verdict,
        checks,
        uncovered,
        notes,
    })
}

/// Report of the structure-based shortcut for trivial extensions.
#[derive(Debug, Clone, Serialize)]
pub struct TrivExtReport {
    /// The degree shift of the attached module (it sits in degree `-shift`).
    pub shift: i64,
    pub dim_base: i64,
    pub depth_base: ExtInt,
    pub dim_module: i64,
    pub depth_module: ExtInt,
    /// The structural hypotheses: the attached module has full dimension
    /// and `dim - shift <= depth` of the base.
    pub hypotheses_met: bool,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Structure-based Cohen–Macaulay test for trivial-extension models:
/// when the attached module has the same dimension as the base ring and
/// `dim - shift` is at most the depth of the base, the model is
/// Cohen–Macaulay exactly when the attached module is a Cohen–Macaulay
/// module of full dimension. When the hypotheses hold, the structural
/// verdict is cross-checked against the direct criterion; when they
/// fail, the direct criterion supplies the verdict with a note.
pub fn check_triv_ext_cm(a: &DgRing) -> KResult<TrivExtReport> {
    let shift = match a.kind() {
        DgKind::TrivialExtension { shift } => *shift,
        _ => {
            return Err(KernelError::unsupported(
                "the structure-based shortcut applies to trivial-extension models",
            ));
        }
    };
    let base_entry = a
        .cohomology_at(0)
        .expect("trivial extensions have degree-zero cohomology");
    let module_entry = a
        .cohomology_at(-shift)
        .expect("trivial extensions carry their module in degree -shift");
    let dim_base = base_entry.dim;
    let dim_module = module_entry.dim;
    let depth_base = depth_via_koszul(&base_entry.module)?;
    let depth_module = depth_via_koszul(&module_entry.module)?;
    let hyp_full_dim = dim_module == dim_base;
    let hyp_depth = match depth_base.as_finite() {
        Some(t) => dim_module - shift <= t,
        None => false,
    };
    let hypotheses_met = hyp_full_dim && hyp_depth;
    let direct = check_local_cm(a)?;
    let mut notes = Vec::new();
    let verdict;
    if hypotheses_met {
        let structural_cm = depth_module == ExtInt::Finite(dim_module);
        let structural_verdict = if structural_cm { Verdict::Cm } else { Verdict::NotCm };
        if structural_verdict != direct.verdict {
            return Err(KernelError::structural(format!(
                "structure-based verdict {} disagrees with the direct criterion {}; \
                 this indicates a kernel inconsistency",
                structural_verdict, direct.verdict
            )));
        }
        verdict = structural_verdict;
        notes.push("structural hypotheses hold; verdict cross-checked against the direct criterion".to_string());
    } else {
        verdict = direct.verdict;
        notes.push("structural hypotheses not met; verdict from the direct criterion".to_string());
    }
    Ok(TrivExtReport {
        shift,
        dim_base,
        depth_base,
        dim_module,
        depth_module,
        hypotheses_met,
        verdict,
        notes,
    })
}

/// Cohen–Macaulay test for non-negative models: the top cohomology must
/// have the same support dimension as the degree-zero cohomology, and
/// the torsion amplitude must equal the model amplitude. Both conditions
/// are required.
pub fn check_cm_nonneg(a: &DgRing) -> KResult<CmVerdict> {
    if !a.is_nonnegative() {
        return Err(KernelError::unsupported(
            "this criterion applies to non-negative models; use the local check",
        ));
    }
    let d = a.h0_dim();
    let top = a
        .cohomology_at(a.sup())
        .expect("the top entry of the cohomology table is nonzero");
    let dim_top = top.dim;
    let profile = rgamma_profile(a.complex())?;
    let rg_amp = profile.amp();
    let cond_top = dim_top == d;
    let cond_amp = rg_amp == ExtInt::Finite(a.amplitude());
    let verdict = if cond_top && cond_amp {
        Verdict::Cm
    } else {
        Verdict::NotCm
    };
    let mut notes = Vec::new();
    if !cond_top {
        notes.push(format!(
            "top cohomology has dimension {} but the degree-zero dimension is {}",
            dim_top, d
        ));
    }
    if !cond_amp {
        notes.push(format!(
            "torsion amplitude {} differs from the model amplitude {}",
            rg_amp,
            a.amplitude()
        ));
    }
    Ok(CmVerdict {
        verdict,
        route: "top cohomology has full dimension and torsion amplitude equals model amplitude"
            .to_string(),
        certificate: vec![
            nqi("dim_top", dim_top),
            nqi("dim_h0", d),
            nq("rgamma_amp", rg_amp),
            nqi("amp", a.amplitude()),
        ],
        notes,
    })
}

/// One named cross-check in the theorem suite.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremCheck {
    pub name: String,
    pub holds: bool,
    pub details: String,
}

/// Result of running every applicable cross-check on one model.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremSuite {
    pub checks: Vec<TheoremCheck>,
    pub all_hold: bool,
}

fn push_check(checks: &mut Vec<TheoremCheck>, name: &str, holds: bool, details: String) {
    checks.push(TheoremCheck {
        name: name.to_string(),
        holds,
        details,
    });
}

/// Runs every cross-check valid for the given model: amplitude and depth
/// inequalities, the support-dimension identities, the dualizing
/// structure facts, agreement of the duality verdict with the direct
/// criterion, the zero-dimensional shortcut, and agreement of the
/// irrelevant-ideal stratum with the local verdict. Non-negative models
/// run only the generally valid subset.
pub fn verify_theorem_suite(a: &DgRing) -> KResult<TheoremSuite> {
    let bundle = invariants_of_ring(a)?;
    let mut checks: Vec<TheoremCheck> = Vec::new();
    let amp = a.amplitude();
    let d = a.h0_dim();
    push_check(
        &mut checks,
        "torsion profile is nonempty",
        !bundle.rgamma.is_empty(),
        format!("{} profile degrees", bundle.rgamma.len()),
    );
    push_check(
        &mut checks,
        "depth at least the bottom degree",
        bundle.depth >= bundle.inf,
        format!("depth={} inf={}", bundle.depth, bundle.inf),
    );
    push_check(
        &mut checks,
        "support dimension at least the top degree",
        bundle.lc_dim >= bundle.sup,
        format!("lc_dim={} sup={}", bundle.lc_dim, bundle.sup),
    );
    if a.is_nonnegative() {
        let all_hold = checks.iter().all(|c| c.holds);
        return Ok(TheoremSuite { checks, all_hold });
    }
    push_check(
        &mut checks,
        "amplitude sandwich for the torsion profile",
        bundle.rgamma_amp >= ExtInt::Finite(amp) && bundle.rgamma_amp <= ExtInt::Finite(amp + d),
        format!("amp={} rgamma_amp={} dim_h0={}", amp, bundle.rgamma_amp, d),
    );
    push_check(
        &mut checks,
        "support dimension equals the top torsion degree",
        bundle.lc_dim == bundle.rgamma_sup,
        format!("lc_dim={} rgamma_sup={}", bundle.lc_dim, bundle.rgamma_sup),
    );
    push_check(
        &mut checks,
        "support dimension equals the degree-zero dimension",
        bundle.lc_dim == ExtInt::Finite(d),
        format!("lc_dim={} dim_h0={}", bundle.lc_dim, d),
    );
    push_check(
        &mut checks,
        "sequential depth bounded by the degree-zero dimension",
        bundle.seq_depth <= ExtInt::Finite(d),
        format!("seq_depth={} dim_h0={}", bundle.seq_depth, d),
    );
    let local = check_local_cm(a)?;
    let dualizing = dualizing_dg(a)?;
    push_check(
        &mut checks,
        "dualizing model is normalized at minus the degree-zero dimension",
        dualizing.inf() == -d,
        format!("inf={} dim_h0={}", dualizing.inf(), d),
    );
    let bottom = dualizing.cohomology.first().expect("nonzero");
    push_check(
        &mut checks,
        "bottom dualizing cohomology has full dimension",
        bottom.dim == d,
        format!("dim={} dim_h0={}", bottom.dim, d),
    );
    push_check(
        &mut checks,
        "dualizing support dimensions bounded by the amplitude",
        dualizing.cohomology.iter().all(|e| e.dim + e.degree <= amp),
        format!(
            "entries {:?}",
            dualizing
                .cohomology
                .iter()
                .map(|e| (e.degree, e.dim))
                .collect::<Vec<_>>()
        ),
    );
    push_check(
        &mut checks,
        "dualizing amplitude sandwich",
        dualizing.amplitude() >= amp && dualizing.amplitude() <= amp + d,
        format!("amp={} dualizing_amp={} dim_h0={}", amp, dualizing.amplitude(), d),
    );
    push_check(
        &mut checks,
        "dualizing amplitude equality matches the torsion criterion",
        (dualizing.amplitude() == amp) == (local.verdict == Verdict::Cm),
        format!(
            "amp={} dualizing_amp={} local={}",
            amp,
            dualizing.amplitude(),
            local.verdict
        ),
    );
    let top = dualizing.cohomology.last().expect("nonzero");
    push_check(
        &mut checks,
        "dualizing top criterion matches the torsion criterion",
        (top.dim == d) == (local.verdict == Verdict::Cm),
        format!("top_dim={} dim_h0={} local={}", top.dim, d, local.verdict),
    );
    push_check(
        &mut checks,
        "dualizing maximal-support criterion matches the torsion criterion",
        (dualizing.lc_dim() == dualizing.sup() + d) == (local.verdict == Verdict::Cm),
        format!(
            "lc_dim={} sup={} dim_h0={} local={}",
            dualizing.lc_dim(),
            dualizing.sup(),
            d,
            local.verdict
        ),
    );
    if d == 0 {
        let profile_degrees: Vec<i64> = bundle.rgamma.iter().map(|e| e.degree).collect();
        let h_degrees: Vec<i64> = bundle.h_dims.iter().map(|e| e.degree).collect();
        push_check(
            &mut checks,
            "zero-dimensional models are Cohen–Macaulay with torsion equal to cohomology",
            local.verdict == Verdict::Cm && profile_degrees == h_degrees,
            format!("local={} profile={:?} degrees={:?}", local.verdict, profile_degrees, h_degrees),
        );
    }
    let at_irrelevant = check_cm_at_prime(a, &Ideal::irrelevant(a.ring().clone()))?;
    push_check(
        &mut checks,
        "irrelevant-ideal stratum matches the local verdict",
        at_irrelevant.verdict == local.verdict,
        format!("stratum={} local={}", at_irrelevant.verdict, local.verdict),
    );
    let all_hold = checks.iter().all(|c| c.holds);
    Ok(TheoremSuite { checks, all_hold })
}
