//! Problem files: a single JSON document describing the coefficient
//! field, the polynomial ring, the model construction, optional named
//! modules, optional candidate primes, and search options. Polynomials
//! are strings in the kernel's grammar; relation matrices are lists of
//! columns, each column a list of polynomial strings with one entry per
//! generator.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::field::{PrimeField, DEFAULT_CHAR};
use crate::algebra::parse::parse_homogeneous;
use crate::algebra::{Ideal, PolyRing, Polynomial};
use crate::dg::DgRing;
use crate::error::KernelError;
use crate::homalg::{Complex, PresentedModule, RingCtx};
use crate::KResult;

/// A module presentation: generator degrees plus a relation matrix given
/// column by column. Quotient relations of the ambient ring are implied
/// and appended automatically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleDesc {
    #[serde(default)]
    pub generator_degrees: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

/// One term of an explicit complex; unlike [`ModuleDesc`], the relations
/// are taken literally (the degree-zero ideal of an explicit model is
/// declared separately).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDesc {
    #[serde(default)]
    pub generator_degrees: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

/// How to build the model from the ring data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum ConstructionDesc {
    /// Koszul model on the listed elements; an empty list is the ring
    /// itself placed in degree zero.
    #[serde(rename = "koszul")]
    Koszul {
        #[serde(default)]
        elements: Vec<String>,
    },
    /// The ring extended by a module placed in degree `-shift`.
    #[serde(rename = "trivial_extension")]
    TrivialExtension { module: ModuleDesc, shift: i64 },
    /// The ring extended by a module placed in degree `+shift`.
    #[serde(rename = "nonneg_trivial_extension")]
    NonNegTrivialExtension { module: ModuleDesc, shift: i64 },
    /// Koszul model on all the variables: the derived fiber at the
    /// closed point of the coordinate ring.
    #[serde(rename = "derived_fiber")]
    DerivedFiber,
    /// An explicit complex: terms and differentials keyed by the
    /// (stringified) cohomological degree, and the degree-zero ideal.
    #[serde(rename = "complex")]
    Complex {
        terms: BTreeMap<String, TermDesc>,
        #[serde(default)]
        differentials: BTreeMap<String, Vec<Vec<String>>>,
        h0_ideal: Vec<String>,
    },
}

/// Search options; absent fields fall back to command-line flags, then
/// to the built-in defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OptionsDesc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_tries: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<u32>,
}

/// The parsed form of a problem file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_char: Option<u64>,
    pub variables: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    pub construction: ConstructionDesc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleDesc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "OptionsDesc::is_default")]
    pub options: OptionsDesc,
}

impl OptionsDesc {
    fn is_default(&self) -> bool {
        self.seed.is_none() && self.max_tries.is_none() && self.t_max.is_none()
    }
}

/// Parses a problem file, reporting the line and column of the first
/// syntax error.
pub fn parse_problem(text: &str) -> KResult<ProblemFile> {
    serde_json::from_str(text).map_err(|e| KernelError::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })
}

/// Serializes a problem file back to its canonical JSON text.
pub fn serialize_problem(p: &ProblemFile) -> String {
    serde_json::to_string_pretty(p).expect("problem files serialize")
}

/// Everything a command needs besides the model itself: named modules,
/// candidate primes, and effective options.
#[derive(Debug)]
pub struct BuiltProblem {
    pub model: DgRing,
    pub modules: BTreeMap<String, PresentedModule>,
    pub primes: Vec<Ideal>,
    pub options: OptionsDesc,
}

fn parse_polys(ring: &Arc<PolyRing>, texts: &[String]) -> KResult<Vec<Polynomial>> {
    texts.iter().map(|s| parse_homogeneous(ring, s)).collect()
}

fn parse_matrix(
    ring: &Arc<PolyRing>,
    nrows: usize,
    cols: &[Vec<String>],
) -> KResult<Vec<Vec<Polynomial>>> {
    let mut out = Vec::with_capacity(cols.len());
    for (j, col) in cols.iter().enumerate() {
        if col.len() != nrows {
            return Err(KernelError::structural(format!(
                "matrix column {} has {} entries, expected {}",
                j,
                col.len(),
                nrows
            )));
        }
        let mut parsed = Vec::with_capacity(nrows);
        for s in col {
            // Entries of a graded matrix may individually be in mixed
            // degrees only when zero; each nonzero entry must be
            // homogeneous, which parse_homogeneous enforces.
            parsed.push(parse_homogeneous(ring, s)?);
        }
        out.push(parsed);
    }
    Ok(out)
}

fn build_module(ctx: &Arc<RingCtx>, desc: &ModuleDesc) -> KResult<PresentedModule> {
    let degs = if desc.generator_degrees.is_empty() && !desc.relations.is_empty() {
        let nrows = desc.relations[0].len();
        vec![0; nrows]
    } else if desc.generator_degrees.is_empty() {
        vec![0]
    } else {
        desc.generator_degrees.clone()
    };
    let cols = parse_matrix(ctx.poly(), degs.len(), &desc.relations)?;
    PresentedModule::over_ring(ctx.clone(), degs, cols)
}

fn build_explicit(
    ctx: &Arc<RingCtx>,
    terms: &BTreeMap<String, TermDesc>,
    differentials: &BTreeMap<String, Vec<Vec<String>>>,
    h0_ideal: &[String],
) -> KResult<DgRing> {
    if terms.is_empty() {
        return Err(KernelError::degenerate(
            "an explicit model needs at least one term",
        ));
    }
    let mut keyed: Vec<(i64, &TermDesc)> = Vec::with_capacity(terms.len());
    for (k, t) in terms {
        let deg: i64 = k.parse().map_err(|_| {
            KernelError::structural(format!("term key '{}' is not an integer degree", k))
        })?;
        keyed.push((deg, t));
    }
    keyed.sort_by_key(|(d, _)| *d);
    let lo = keyed.first().expect("nonempty").0;
    let hi = keyed.last().expect("nonempty").0;
    let mut built: Vec<PresentedModule> = Vec::with_capacity((hi - lo + 1) as usize);
    for d in lo..=hi {
        match keyed.iter().find(|(k, _)| *k == d) {
            Some((_, t)) => {
                let cols = parse_matrix(ctx.poly(), t.generator_degrees.len(), &t.relations)?;
                built.push(PresentedModule::from_parts(
                    ctx.clone(),
                    t.generator_degrees.clone(),
                    cols,
                )?);
            }
            None => built.push(PresentedModule::zero(ctx.clone())),
        }
    }
    let mut diffs: Vec<Vec<Vec<Polynomial>>> = Vec::new();
    for d in lo..hi {
        let src_gens = built[(d - lo) as usize].ngens();
        let tgt_gens = built[(d - lo + 1) as usize].ngens();
        match differentials.get(&d.to_string()) {
            Some(cols) => {
                if cols.len() != src_gens {
                    return Err(KernelError::structural(format!(
                        "differential at degree {} has {} columns, expected {}",
                        d,
                        cols.len(),
                        src_gens
                    )));
                }
                diffs.push(parse_matrix(ctx.poly(), tgt_gens, cols)?);
            }
            None => diffs.push(vec![vec![ctx.poly().zero(); tgt_gens]; src_gens]),
        }
    }
    for k in differentials.keys() {
        let deg: i64 = k.parse().map_err(|_| {
            KernelError::structural(format!("differential key '{}' is not an integer degree", k))
        })?;
        if deg < lo || deg >= hi {
            return Err(KernelError::structural(format!(
                "differential at degree {} has no source and target terms",
                deg
            )));
        }
    }
    let complex = Complex::new(ctx.clone(), lo, built, diffs)?;
    let gens = parse_polys(ctx.poly(), &h0_ideal.to_vec())?;
    let ideal = if gens.is_empty() {
        Ideal::zero(ctx.poly().clone())
    } else {
        Ideal::new(ctx.poly().clone(), gens)?
    };
    DgRing::explicit(ctx.clone(), complex, ideal)
}

/// Builds the model, named modules, and candidate primes from a parsed
/// problem file. `field_char_override` (from the command line) wins over
/// the file's `field_char`; both default to the kernel's standard prime.
pub fn build_problem(p: &ProblemFile, field_char_override: Option<u64>) -> KResult<BuiltProblem> {
    let characteristic = field_char_override
        .or(p.field_char)
        .unwrap_or(DEFAULT_CHAR);
    let field = PrimeField::new(characteristic)?;
    if p.variables.is_empty() {
        return Err(KernelError::unsupported(
            "problem files need at least one variable",
        ));
    }
    let ring = PolyRing::new(field, p.variables.clone())?;
    let ideal_gens = parse_polys(&ring, &p.ideal)?;
    let ctx = if ideal_gens.is_empty() {
        RingCtx::polynomial_only(ring.clone())
    } else {
        RingCtx::new(ring.clone(), Ideal::new(ring.clone(), ideal_gens)?)?
    };
    let model = match &p.construction {
        ConstructionDesc::Koszul { elements } => {
            let elems = parse_polys(&ring, elements)?;
            DgRing::koszul(ctx.clone(), elems)?
        }
        ConstructionDesc::TrivialExtension { module, shift } => {
            let m = build_module(&ctx, module)?;
            DgRing::trivial_extension(ctx.clone(), m, *shift)?
        }
        ConstructionDesc::NonNegTrivialExtension { module, shift } => {
            let m = build_module(&ctx, module)?;
            DgRing::nonneg_trivial_extension(ctx.clone(), m, *shift)?
        }
        ConstructionDesc::DerivedFiber => DgRing::derived_fiber(ctx.clone())?,
        ConstructionDesc::Complex {
            terms,
            differentials,
            h0_ideal,
        } => build_explicit(&ctx, terms, differentials, h0_ideal)?,
    };
    let mut modules = BTreeMap::new();
    for (name, desc) in &p.modules {
        modules.insert(name.clone(), build_module(model.ctx(), desc)?);
    }
    let mut primes = Vec::with_capacity(p.primes.len());
    for gens in &p.primes {
        let parsed = parse_polys(&ring, gens)?;
        let ideal = if parsed.is_empty() {
            Ideal::zero(ring.clone())
        } else {
            Ideal::new(ring.clone(), parsed)?
        };
        primes.push(ideal);
    }
    Ok(BuiltProblem {
        model,
        modules,
        primes,
        options: p.options.clone(),
    })
}
