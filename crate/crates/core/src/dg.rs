//! Graded models of differential graded rings and their modules.
//!
//! A model is a bounded complex over P together with the ideal J defining
//! its degree-zero cohomology P/J. Built-in constructions: Koszul models
//! on homogeneous elements, trivial extensions by a shifted module (in
//! both the non-positive and the non-negative orientation), the derived
//! fiber (Koszul on all variables over the base ring), explicit
//! user-supplied complexes, and quotients by a degree-zero class, formed
//! as the cone of the multiplication map.
//!
//! Every construction validates that each cohomology module is killed by
//! J, so the cohomologies really are modules over the degree-zero ring.

use std::fmt;
use std::sync::Arc;

use crate::algebra::ideal::Ideal;
use crate::algebra::poly::{PolyRing, Polynomial};
use crate::homalg::complex::{cone, ChainMap, Complex};
use crate::homalg::module::{PresentedModule, RingCtx};
use crate::{KResult, KernelError};

/// How a model was constructed, for reporting and for extending Koszul
/// element lists under quotients.
#[derive(Debug, Clone)]
pub enum DgKind {
    /// Koszul model on homogeneous elements over R; an empty list is the
    /// ring itself.
    Koszul { elements: Vec<Polynomial> },
    /// R (+) M[shift] with zero differential, shift >= 1.
    TrivialExtension { shift: i64 },
    /// Non-negative orientation: R in degree 0, M in degree shift >= 1.
    NonNegTrivialExtension { shift: i64 },
    /// Koszul on all the variables over R: the derived fiber at the
    /// irrelevant maximal ideal.
    DerivedFiber,
    /// User-supplied complex.
    Explicit,
    /// Cone over multiplication by a degree-zero class.
    Quotient {
        base: Box<DgKind>,
        element: Polynomial,
    },
}

impl DgKind {
    pub fn render(&self, ring: &PolyRing) -> String {
        match self {
            DgKind::Koszul { elements } => {
                if elements.is_empty() {
                    "ring".to_string()
                } else {
                    let es: Vec<String> = elements.iter().map(|e| ring.render(e)).collect();
                    format!("koszul({})", es.join(", "))
                }
            }
            DgKind::TrivialExtension { shift } => format!("trivial_extension(shift {shift})"),
            DgKind::NonNegTrivialExtension { shift } => {
                format!("nonneg_trivial_extension(shift {shift})")
            }
            DgKind::DerivedFiber => "derived_fiber".to_string(),
            DgKind::Explicit => "explicit".to_string(),
            DgKind::Quotient { base, element } => {
                format!("quotient({}, {})", base.render(ring), ring.render(element))
            }
        }
    }
}

impl fmt::Display for DgKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DgKind::Koszul { elements } if elements.is_empty() => write!(f, "ring"),
            DgKind::Koszul { .. } => write!(f, "koszul"),
            DgKind::TrivialExtension { .. } => write!(f, "trivial_extension"),
            DgKind::NonNegTrivialExtension { .. } => write!(f, "nonneg_trivial_extension"),
            DgKind::DerivedFiber => write!(f, "derived_fiber"),
            DgKind::Explicit => write!(f, "explicit"),
            DgKind::Quotient { .. } => write!(f, "quotient"),
        }
    }
}

/// One nonzero cohomology of a model: its degree, a minimal presentation,
/// and its Krull dimension.
#[derive(Debug, Clone)]
pub struct CohomologyEntry {
    pub degree: i64,
    pub module: PresentedModule,
    pub dim: i64,
}

/// Koszul-type complex on homogeneous elements over R = P/I, built as an
/// iterated cone of multiplication maps on the rank-one free module.
pub fn koszul_complex(ctx: &Arc<RingCtx>, elements: &[Polynomial]) -> KResult<Complex> {
    for f in elements {
        if f.is_zero() {
            return Err(KernelError::degenerate("Koszul element is zero"));
        }
        match f.homogeneous_degree() {
            None => {
                return Err(KernelError::unsupported(
                    "Koszul elements must be homogeneous",
                ))
            }
            Some(d) if d <= 0 => {
                return Err(KernelError::degenerate(
                    "Koszul elements must have positive degree",
                ))
            }
            _ => {}
        }
    }
    let base = PresentedModule::over_ring(ctx.clone(), vec![0], Vec::new())?;
    let mut c = Complex::from_module(base, 0);
    for f in elements {
        let (src, map) = ChainMap::multiplication(&c, f)?;
        c = cone(&src, &c, &map)?;
    }
    Ok(c)
}

#[derive(Debug, Clone)]
pub struct DgRing {
    ctx: Arc<RingCtx>,
    complex: Complex,
    h0_ideal: Ideal,
    kind: DgKind,
    nonnegative: bool,
    cohomology: Vec<CohomologyEntry>,
}

impl DgRing {
    /// Shared tail of every constructor: computes the cohomology table and
    /// checks the model is sane (nonzero, J kills every cohomology, and
    /// the degree-zero cohomology is P/J itself).
    fn finish(
        ctx: Arc<RingCtx>,
        complex: Complex,
        h0_ideal: Ideal,
        kind: DgKind,
        nonnegative: bool,
    ) -> KResult<DgRing> {
        if h0_ideal.is_unit() {
            return Err(KernelError::degenerate(
                "the degree-zero cohomology would be the zero ring",
            ));
        }
        if !h0_ideal.contains_ideal(ctx.quotient()) {
            return Err(KernelError::structural(
                "the degree-zero ideal must contain the base quotient ideal",
            ));
        }
        let cohomology = cohomology_entries(&complex, &h0_ideal)?;
        let h0 = cohomology.iter().find(|e| e.degree == 0).ok_or_else(|| {
            KernelError::degenerate("model has no cohomology in degree zero")
        })?;
        // H^0 must be the cyclic module P/J: one generator in degree 0
        // whose annihilator is exactly J
        if h0.module.minimal_gen_degrees() != vec![0] {
            return Err(KernelError::structural(
                "degree-zero cohomology is not cyclic in degree zero",
            ));
        }
        if !h0.module.annihilator().equals(&h0_ideal) {
            return Err(KernelError::structural(
                "degree-zero cohomology does not match the declared ideal",
            ));
        }
        if let Some(top) = cohomology.last() {
            if !nonnegative && top.degree > 0 {
                return Err(KernelError::structural(
                    "non-positive model has cohomology in positive degrees",
                ));
            }
        }
        if let Some(bottom) = cohomology.first() {
            if nonnegative && bottom.degree < 0 {
                return Err(KernelError::structural(
                    "non-negative model has cohomology in negative degrees",
                ));
            }
        }
        Ok(DgRing {
            ctx,
            complex,
            h0_ideal,
            kind,
            nonnegative,
            cohomology,
        })
    }

    /// The base ring R = P/I itself, as a model concentrated in degree 0.
    pub fn plain_ring(ctx: Arc<RingCtx>) -> KResult<DgRing> {
        DgRing::koszul(ctx, Vec::new())
    }

    /// Koszul model on homogeneous positive-degree elements over R.
    pub fn koszul(ctx: Arc<RingCtx>, elements: Vec<Polynomial>) -> KResult<DgRing> {
        let complex = koszul_complex(&ctx, &elements)?;
        let mut gens = ctx.quotient().gens().to_vec();
        gens.extend(elements.iter().cloned());
        let j = Ideal::new(ctx.poly().clone(), gens)?;
        DgRing::finish(ctx, complex, j, DgKind::Koszul { elements }, false)
    }

    /// Trivial extension R (+) M[shift]: zero differential, M placed at
    /// degree -shift, shift >= 1. M must be a nonzero module over R.
    pub fn trivial_extension(
        ctx: Arc<RingCtx>,
        module: PresentedModule,
        shift: i64,
    ) -> KResult<DgRing> {
        if shift < 1 {
            return Err(KernelError::unsupported(
                "trivial extension shift must be at least 1",
            ));
        }
        if !module.ctx().same_ctx(&ctx) {
            return Err(KernelError::structural(
                "trivial extension module lives over a different ring",
            ));
        }
        if module.is_zero_module() {
            return Err(KernelError::degenerate(
                "trivial extension by the zero module",
            ));
        }
        let ring = ctx.poly().clone();
        let r = PresentedModule::over_ring(ctx.clone(), vec![0], Vec::new())?;
        let mut terms: Vec<PresentedModule> = vec![module.minimalize()];
        for _ in 0..shift - 1 {
            terms.push(PresentedModule::zero(ctx.clone()));
        }
        terms.push(r);
        let mut diffs: Vec<Vec<crate::homalg::modvec::ModVec>> = Vec::new();
        for k in 0..terms.len() - 1 {
            let src = &terms[k];
            let tgt = &terms[k + 1];
            diffs.push(
                (0..src.ngens())
                    .map(|_| vec![ring.zero(); tgt.ngens()])
                    .collect(),
            );
        }
        let complex = Complex::new(ctx.clone(), -shift, terms, diffs)?;
        let j = ctx.quotient().clone();
        DgRing::finish(ctx, complex, j, DgKind::TrivialExtension { shift }, false)
    }

    /// Non-negative trivial extension: R in degree 0, M in degree shift
    /// with shift >= 1 and zero differential.
    pub fn nonneg_trivial_extension(
        ctx: Arc<RingCtx>,
        module: PresentedModule,
        shift: i64,
    ) -> KResult<DgRing> {
        if shift < 1 {
            return Err(KernelError::unsupported(
                "non-negative trivial extension shift must be at least 1",
            ));
        }
        if !module.ctx().same_ctx(&ctx) {
            return Err(KernelError::structural(
                "trivial extension module lives over a different ring",
            ));
        }
        if module.is_zero_module() {
            return Err(KernelError::degenerate(
                "trivial extension by the zero module",
            ));
        }
        let ring = ctx.poly().clone();
        let r = PresentedModule::over_ring(ctx.clone(), vec![0], Vec::new())?;
        let mut terms: Vec<PresentedModule> = vec![r];
        for _ in 0..shift - 1 {
            terms.push(PresentedModule::zero(ctx.clone()));
        }
        terms.push(module.minimalize());
        let mut diffs: Vec<Vec<crate::homalg::modvec::ModVec>> = Vec::new();
        for k in 0..terms.len() - 1 {
            let src = &terms[k];
            let tgt = &terms[k + 1];
            diffs.push(
                (0..src.ngens())
                    .map(|_| vec![ring.zero(); tgt.ngens()])
                    .collect(),
            );
        }
        let complex = Complex::new(ctx.clone(), 0, terms, diffs)?;
        let j = ctx.quotient().clone();
        DgRing::finish(
            ctx,
            complex,
            j,
            DgKind::NonNegTrivialExtension { shift },
            true,
        )
    }

    /// Derived fiber of P -> R at the irrelevant maximal ideal: the Koszul
    /// model on all variables over R.
    pub fn derived_fiber(ctx: Arc<RingCtx>) -> KResult<DgRing> {
        let vars: Vec<Polynomial> =
            (0..ctx.poly().nvars()).map(|i| ctx.poly().var(i)).collect();
        let complex = koszul_complex(&ctx, &vars)?;
        let j = Ideal::irrelevant(ctx.poly().clone());
        DgRing::finish(ctx, complex, j, DgKind::DerivedFiber, false)
    }

    /// A user-supplied complex with a declared degree-zero ideal. The
    /// complex must be non-positive; all sanity checks run.
    pub fn explicit(ctx: Arc<RingCtx>, complex: Complex, h0_ideal: Ideal) -> KResult<DgRing> {
        let trimmed = complex.trim();
        if !trimmed.is_empty() && trimmed.hi() > 0 {
            return Err(KernelError::unsupported(
                "explicit models must be concentrated in non-positive degrees",
            ));
        }
        DgRing::finish(ctx, trimmed, h0_ideal, DgKind::Explicit, false)
    }

    /// Quotient by a homogeneous positive-degree class: the cone of
    /// multiplication. The degree-zero ideal gains the element.
    pub fn dg_quotient(&self, element: &Polynomial) -> KResult<DgRing> {
        if element.is_zero() {
            return Err(KernelError::degenerate("quotient by zero"));
        }
        match element.homogeneous_degree() {
            None => {
                return Err(KernelError::unsupported(
                    "quotient elements must be homogeneous",
                ))
            }
            Some(d) if d <= 0 => {
                return Err(KernelError::degenerate(
                    "quotient elements must have positive degree",
                ))
            }
            _ => {}
        }
        if self.nonnegative {
            return Err(KernelError::unsupported(
                "quotients are implemented for non-positive models only",
            ));
        }
        let (src, map) = ChainMap::multiplication(&self.complex, element)?;
        let complex = cone(&src, &self.complex, &map)?;
        let j = self.h0_ideal.sum(&Ideal::new(
            self.ctx.poly().clone(),
            vec![element.clone()],
        )?);
        let kind = match &self.kind {
            DgKind::Koszul { elements } => {
                let mut es = elements.clone();
                es.push(element.clone());
                DgKind::Koszul { elements: es }
            }
            other => DgKind::Quotient {
                base: Box::new(other.clone()),
                element: element.clone(),
            },
        };
        DgRing::finish(self.ctx.clone(), complex, j, kind, false)
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ctx.poly()
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn h0_ideal(&self) -> &Ideal {
        &self.h0_ideal
    }

    pub fn kind(&self) -> &DgKind {
        &self.kind
    }

    pub fn is_nonnegative(&self) -> bool {
        self.nonnegative
    }

    /// Nonzero cohomologies in ascending degree.
    pub fn cohomology(&self) -> &[CohomologyEntry] {
        &self.cohomology
    }

    pub fn sup(&self) -> i64 {
        self.cohomology.last().expect("nonzero model").degree
    }

    pub fn inf(&self) -> i64 {
        self.cohomology.first().expect("nonzero model").degree
    }

    pub fn amplitude(&self) -> i64 {
        self.sup() - self.inf()
    }

    /// Krull dimension of the degree-zero cohomology P/J.
    pub fn h0_dim(&self) -> i64 {
        self.h0_ideal.dimension()
    }

    pub fn cohomology_at(&self, degree: i64) -> Option<&CohomologyEntry> {
        self.cohomology.iter().find(|e| e.degree == degree)
    }

    /// The bottom cohomology H^{inf}.
    pub fn bottom(&self) -> &CohomologyEntry {
        self.cohomology.first().expect("nonzero model")
    }
}

/// Computes the nonzero cohomologies of a complex and checks each one is
/// killed by the given ideal.
fn cohomology_entries(complex: &Complex, j: &Ideal) -> KResult<Vec<CohomologyEntry>> {
    let mut out = Vec::new();
    for (degree, module) in complex.cohomology_modules() {
        for q in j.gens() {
            for i in 0..module.ngens() {
                let mut v = vec![complex.ring().zero(); module.ngens()];
                v[i] = q.clone();
                if !module.element_is_zero(&v) {
                    return Err(KernelError::structural(format!(
                        "cohomology at degree {degree} is not a module over the \
                         degree-zero ring: {} does not act as zero",
                        complex.ring().render(q)
                    )));
                }
            }
        }
        let dim = module.krull_dim();
        out.push(CohomologyEntry {
            degree,
            module,
            dim,
        });
    }
    Ok(out)
}

/// A DG-module over a model: a bounded complex whose cohomology is
/// checked to be killed by the model's degree-zero ideal.
#[derive(Debug, Clone)]
pub struct DgModule {
    complex: Complex,
    cohomology: Vec<CohomologyEntry>,
}

impl DgModule {
    pub fn from_complex(dg: &DgRing, complex: Complex) -> KResult<DgModule> {
        if !complex.ctx().same_ctx(dg.ctx()) {
            return Err(KernelError::structural(
                "module complex lives over a different ring",
            ));
        }
        let cohomology = cohomology_entries(&complex, dg.h0_ideal())?;
        Ok(DgModule {
            complex,
            cohomology,
        })
    }

    /// A single module placed at a cohomological degree.
    pub fn from_module_at(
        dg: &DgRing,
        module: PresentedModule,
        at: i64,
    ) -> KResult<DgModule> {
        DgModule::from_complex(dg, Complex::from_module(module.minimalize(), at))
    }

    /// The model as a module over itself.
    pub fn from_ring(dg: &DgRing) -> DgModule {
        DgModule {
            complex: dg.complex().clone(),
            cohomology: dg.cohomology().to_vec(),
        }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn cohomology(&self) -> &[CohomologyEntry] {
        &self.cohomology
    }

    pub fn is_zero(&self) -> bool {
        self.cohomology.is_empty()
    }

    pub fn sup(&self) -> Option<i64> {
        self.cohomology.last().map(|e| e.degree)
    }

    pub fn inf(&self) -> Option<i64> {
        self.cohomology.first().map(|e| e.degree)
    }

    pub fn amplitude(&self) -> Option<i64> {
        match (self.sup(), self.inf()) {
            (Some(s), Some(i)) => Some(s - i),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use crate::algebra::parse::parse_polynomial;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            PrimeField::new(32003).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn pp(r: &PolyRing, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn koszul_on_regular_element_is_concentrated() {
        // Kos(P; x) over P = k[x,y]: H^0 = P/(x) only
        let r = ring(&["x", "y"]);
        let ctx = RingCtx::polynomial_only(r.clone());
        let a = DgRing::koszul(ctx, vec![pp(&r, "x")]).unwrap();
        assert_eq!(a.sup(), 0);
        assert_eq!(a.inf(), 0);
        assert_eq!(a.amplitude(), 0);
        assert_eq!(a.h0_dim(), 1);
        assert_eq!(a.cohomology().len(), 1);
    }

    #[test]
    fn koszul_on_zero_divisor_has_negative_cohomology() {
        // A = Kos(R; x) over R = k[x]/(x^2): H^0 = k, H^{-1} = (x) != 0
        let r = ring(&["x"]);
        let i = Ideal::new(r.clone(), vec![pp(&r, "x^2")]).unwrap();
        let ctx = RingCtx::new(r.clone(), i).unwrap();
        let a = DgRing::koszul(ctx, vec![pp(&r, "x")]).unwrap();
        assert_eq!(a.sup(), 0);
        assert_eq!(a.inf(), -1);
        assert_eq!(a.amplitude(), 1);
        assert_eq!(a.h0_dim(), 0);
        // H^{-1} = ann_R(x) = (x), one dimensional over k
        let bottom = a.bottom();
        assert_eq!(bottom.dim, 0);
        assert_eq!(bottom.module.graded_dim(2), 1);
        assert_eq!(bottom.module.graded_dim(3), 0);
    }

    #[test]
    fn derived_fiber_of_plane_curve() {
        // R = k[x,y]/(xy): derived fiber has H^0 = k and torsion below
        let r = ring(&["x", "y"]);
        let i = Ideal::new(r.clone(), vec![pp(&r, "x*y")]).unwrap();
        let ctx = RingCtx::new(r.clone(), i).unwrap();
        let a = DgRing::derived_fiber(ctx).unwrap();
        assert_eq!(a.sup(), 0);
        assert!(a.inf() < 0);
        assert_eq!(a.h0_dim(), 0);
        for e in a.cohomology() {
            assert_eq!(e.dim, 0, "derived fiber cohomology is finite length");
        }
    }

    #[test]
    fn trivial_extension_profile() {
        // R (+) M[1] over R = k[x,y]/(xy) with M = R/(x): cohomology at
        // -1 and 0
        let r = ring(&["x", "y"]);
        let i = Ideal::new(r.clone(), vec![pp(&r, "x*y")]).unwrap();
        let ctx = RingCtx::new(r.clone(), i).unwrap();
        let m = PresentedModule::cyclic_quotient(ctx.clone(), &[pp(&r, "x")]).unwrap();
        let b = DgRing::trivial_extension(ctx, m, 1).unwrap();
        assert_eq!(b.inf(), -1);
        assert_eq!(b.sup(), 0);
        assert_eq!(b.h0_dim(), 1);
        assert_eq!(b.cohomology_at(-1).unwrap().dim, 1);
        // zero module rejected
        let r2 = ring(&["x", "y"]);
        let ctx2 = RingCtx::polynomial_only(r2.clone());
        let z = PresentedModule::from_parts(ctx2.clone(), vec![0], vec![vec![r2.one()]])
            .unwrap();
        assert!(DgRing::trivial_extension(ctx2, z, 1).is_err());
    }

    #[test]
    fn nonneg_trivial_extension_is_nonnegative() {
        // k[x] (+) k in degree +1
        let r = ring(&["x"]);
        let ctx = RingCtx::polynomial_only(r.clone());
        let k = PresentedModule::from_parts(ctx.clone(), vec![0], vec![vec![pp(&r, "x")]])
            .unwrap();
        let a = DgRing::nonneg_trivial_extension(ctx, k, 1).unwrap();
        assert!(a.is_nonnegative());
        assert_eq!(a.inf(), 0);
        assert_eq!(a.sup(), 1);
        assert_eq!(a.h0_dim(), 1);
    }

    #[test]
    fn quotient_extends_koszul_model() {
        // A = k[x,y], quotient by x then by y = Kos(P; x, y)
        let r = ring(&["x", "y"]);
        let ctx = RingCtx::polynomial_only(r.clone());
        let a = DgRing::plain_ring(ctx).unwrap();
        let ax = a.dg_quotient(&pp(&r, "x")).unwrap();
        assert!(matches!(ax.kind(), DgKind::Koszul { elements } if elements.len() == 1));
        let axy = ax.dg_quotient(&pp(&r, "y")).unwrap();
        assert_eq!(axy.amplitude(), 0);
        assert_eq!(axy.h0_dim(), 0);
        assert!(axy.h0_ideal().contains(&pp(&r, "x")));
        assert!(axy.h0_ideal().contains(&pp(&r, "y")));
        // quotient by a zero divisor creates negative cohomology
        let rr = ring(&["x"]);
        let ii = Ideal::new(rr.clone(), vec![pp(&rr, "x^2")]).unwrap();
        let cc = RingCtx::new(rr.clone(), ii).unwrap();
        let b = DgRing::plain_ring(cc).unwrap();
        let bx = b.dg_quotient(&pp(&rr, "x")).unwrap();
        assert_eq!(bx.amplitude(), 1);
    }

    #[test]
    fn explicit_models_are_validated() {
        let r = ring(&["x", "y"]);
        let ctx = RingCtx::polynomial_only(r.clone());
        // valid: the Koszul complex on x with J = (x)
        let c = koszul_complex(&ctx, &[pp(&r, "x")]).unwrap();
        let j = Ideal::new(r.clone(), vec![pp(&r, "x")]).unwrap();
        let a = DgRing::explicit(ctx.clone(), c.clone(), j).unwrap();
        assert_eq!(a.amplitude(), 0);
        // wrong ideal: J = (y) does not annihilate H^0 = P/(x)
        let jbad = Ideal::new(r.clone(), vec![pp(&r, "y")]).unwrap();
        assert!(DgRing::explicit(ctx.clone(), c, jbad).is_err());
        // positive-degree complex rejected
        let free = PresentedModule::from_parts(ctx.clone(), vec![0], Vec::new()).unwrap();
        let pos = Complex::from_module(free, 1);
        let j2 = Ideal::zero(r.clone());
        assert!(DgRing::explicit(ctx, pos, j2).is_err());
    }

    #[test]
    fn dg_module_validation() {
        // over A = Kos(P; x), a module must be killed by (x) in cohomology
        let r = ring(&["x", "y"]);
        let ctx = RingCtx::polynomial_only(r.clone());
        let a = DgRing::koszul(ctx.clone(), vec![pp(&r, "x")]).unwrap();
        let good = PresentedModule::cyclic_quotient(ctx.clone(), &[pp(&r, "x")]).unwrap();
        assert!(DgModule::from_module_at(&a, good, 0).is_ok());
        let bad = PresentedModule::cyclic_quotient(ctx.clone(), &[pp(&r, "y")]).unwrap();
        assert!(DgModule::from_module_at(&a, bad, 0).is_err());
        // the ring is always a module over itself
        let m = DgModule::from_ring(&a);
        assert_eq!(m.sup(), Some(0));
        assert_eq!(m.amplitude(), Some(0));
    }
}
