//! Numerical invariants of models and complexes: amplitude, depth,
//! sequential depth, the support-dimension of cohomology, and the
//! degreewise nonvanishing profile of derived torsion at the irrelevant
//! maximal ideal.
//!
//! The torsion profile is computed through graded duality over the
//! polynomial ring P: for a bounded complex C with finitely generated
//! cohomology, torsion cohomology at degree i is nonzero exactly when
//! Ext^{n-i}_P(C, P) is nonzero, where n is the number of variables.
//! The Ext modules double as witnesses.
//!
//! Two independent cross-check routes are provided: depth of a module via
//! Hom of the minimal resolution of the residue field, and a partial
//! torsion profile via classes that survive one step of the directed
//! system of Koszul complexes on rising powers of the variables.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::{PolyRing, Polynomial};
use crate::dg::{CohomologyEntry, DgModule, DgRing};
use crate::homalg::complex::{apply_matrix, cone, ChainMap, Complex};
use crate::homalg::module::PresentedModule;
use crate::homalg::modvec::{module_gb, normal_form_vec, vec_is_zero, vec_mul_poly};
use crate::homalg::resolve::{ext_modules, free_resolution, hyper_ext};
use crate::{KResult, KernelError};

/// An integer extended with a minus-infinity sentinel, used for
/// invariants of the zero module. Serializes as a plain number or the
/// string "-inf".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
}

impl ExtInt {
    pub fn finite(v: i64) -> ExtInt {
        ExtInt::Finite(v)
    }

    pub fn from_opt(v: Option<i64>) -> ExtInt {
        match v {
            Some(v) => ExtInt::Finite(v),
            None => ExtInt::NegInf,
        }
    }

    pub fn as_finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            ExtInt::NegInf => None,
        }
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, ExtInt::NegInf)
    }

    /// Adds a finite offset; minus infinity absorbs.
    pub fn plus(self, k: i64) -> ExtInt {
        match self {
            ExtInt::Finite(v) => ExtInt::Finite(v + k),
            ExtInt::NegInf => ExtInt::NegInf,
        }
    }

    /// self - other when both are finite; minus infinity otherwise.
    pub fn minus(self, other: ExtInt) -> ExtInt {
        match (self, other) {
            (ExtInt::Finite(a), ExtInt::Finite(b)) => ExtInt::Finite(a - b),
            _ => ExtInt::NegInf,
        }
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (ExtInt::NegInf, ExtInt::NegInf) => Ordering::Equal,
            (ExtInt::NegInf, _) => Ordering::Less,
            (_, ExtInt::NegInf) => Ordering::Greater,
            (ExtInt::Finite(a), ExtInt::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::NegInf => s.serialize_str("-inf"),
            ExtInt::Finite(v) => s.serialize_i64(*v),
        }
    }
}

struct ExtIntVisitor;

impl<'de> Visitor<'de> for ExtIntVisitor {
    type Value = ExtInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or the string \"-inf\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtInt, E> {
        Ok(ExtInt::Finite(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtInt, E> {
        i64::try_from(v)
            .map(ExtInt::Finite)
            .map_err(|_| E::custom("integer out of range"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtInt, E> {
        if v == "-inf" {
            Ok(ExtInt::NegInf)
        } else {
            Err(E::custom("expected \"-inf\""))
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<ExtInt, D::Error> {
        d.deserialize_any(ExtIntVisitor)
    }
}

/// A cohomological degree paired with a Krull dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDim {
    pub degree: i64,
    pub dim: i64,
}

/// One nonzero degree of the torsion profile, with the Ext module over P
/// certifying it.
#[derive(Debug, Clone)]
pub struct RGammaEntry {
    pub degree: i64,
    pub witness: PresentedModule,
}

/// The set of degrees where derived torsion at the irrelevant maximal
/// ideal is nonzero, each certified by the dual Ext module.
#[derive(Debug, Clone, Default)]
pub struct RGammaProfile {
    pub entries: Vec<RGammaEntry>,
}

impl RGammaProfile {
    pub fn degrees(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.degree).collect()
    }

    pub fn contains(&self, degree: i64) -> bool {
        self.entries.iter().any(|e| e.degree == degree)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sup(&self) -> ExtInt {
        ExtInt::from_opt(self.entries.last().map(|e| e.degree))
    }

    pub fn inf(&self) -> ExtInt {
        ExtInt::from_opt(self.entries.first().map(|e| e.degree))
    }

    pub fn amp(&self) -> ExtInt {
        self.sup().minus(self.inf())
    }

    /// Degrees with the Krull dimensions of their witnesses.
    pub fn degree_dims(&self) -> Vec<DegreeDim> {
        self.entries
            .iter()
            .map(|e| DegreeDim {
                degree: e.degree,
                dim: e.witness.krull_dim(),
            })
            .collect()
    }
}

/// Torsion profile of a bounded complex, via duality over P. Uses the
/// per-term shortcut when every differential is zero (the profile of a
/// direct sum of shifted modules is the union of shifted profiles);
/// everything else goes through a free resolution of the complex.
pub fn rgamma_profile(c: &Complex) -> KResult<RGammaProfile> {
    let t = c.trim();
    if t.is_empty() {
        return Ok(RGammaProfile::default());
    }
    let all_zero = t
        .diffs()
        .iter()
        .flatten()
        .all(|col| vec_is_zero(col));
    if all_zero {
        let n = t.ring().nvars() as i64;
        let mut by_degree: BTreeMap<i64, Vec<PresentedModule>> = BTreeMap::new();
        for (offset, term) in t.terms().iter().enumerate() {
            let a = t.lo() + offset as i64;
            for (j, e) in ext_modules(term)? {
                by_degree.entry(a + n - j).or_default().push(e);
            }
        }
        let mut entries = Vec::new();
        for (degree, parts) in by_degree {
            let witness = if parts.len() == 1 {
                parts.into_iter().next().expect("one part")
            } else {
                let refs: Vec<&PresentedModule> = parts.iter().collect();
                PresentedModule::direct_sum(&refs)?
            };
            entries.push(RGammaEntry { degree, witness });
        }
        return Ok(RGammaProfile { entries });
    }
    rgamma_profile_via_resolution(&t)
}

/// Torsion profile computed through a free resolution of the complex,
/// with no shortcut. Exposed so the two routes can be compared on
/// zero-differential inputs.
pub fn rgamma_profile_via_resolution(c: &Complex) -> KResult<RGammaProfile> {
    let n = c.ring().nvars() as i64;
    let mut entries: Vec<RGammaEntry> = hyper_ext(c)?
        .into_iter()
        .map(|(j, witness)| RGammaEntry {
            degree: n - j,
            witness,
        })
        .collect();
    entries.reverse();
    Ok(RGammaProfile { entries })
}

/// The serializable invariant summary of one model, module, or complex.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantBundle {
    pub sup: ExtInt,
    pub inf: ExtInt,
    pub amp: ExtInt,
    /// Nonzero cohomologies: degree and Krull dimension.
    pub h_dims: Vec<DegreeDim>,
    /// max over nonzero cohomologies of (dimension + degree).
    pub lc_dim: ExtInt,
    /// Torsion profile: nonzero degrees with witness dimensions.
    pub rgamma: Vec<DegreeDim>,
    pub rgamma_sup: ExtInt,
    pub rgamma_inf: ExtInt,
    pub rgamma_amp: ExtInt,
    /// min of the torsion profile.
    pub depth: ExtInt,
    /// depth - inf.
    pub seq_depth: ExtInt,
    /// max of the torsion profile; equals lc_dim when the nonvanishing
    /// theorem holds (compared, not assumed, so disagreement is visible).
    pub lc_dim_via_duality: ExtInt,
}

fn bundle_from_parts(c: &Complex, h: &[DegreeDim]) -> KResult<InvariantBundle> {
    let sup = ExtInt::from_opt(h.last().map(|e| e.degree));
    let inf = ExtInt::from_opt(h.first().map(|e| e.degree));
    let amp = sup.minus(inf);
    let lc_dim = ExtInt::from_opt(h.iter().map(|e| e.dim + e.degree).max());
    let profile = rgamma_profile(c)?;
    if profile.is_empty() != h.is_empty() {
        return Err(KernelError::structural(
            "torsion profile and cohomology disagree about vanishing",
        ));
    }
    let depth = profile.inf();
    if let (ExtInt::Finite(d), ExtInt::Finite(i)) = (depth, inf) {
        let dim_bottom = h.first().expect("nonzero input").dim;
        if d < i {
            return Err(KernelError::structural(format!(
                "depth {d} fell below the bottom cohomological degree {i}"
            )));
        }
        if d > dim_bottom + i {
            return Err(KernelError::structural(format!(
                "depth {d} exceeded dim of bottom cohomology plus degree {}",
                dim_bottom + i
            )));
        }
    }
    if let (ExtInt::Finite(l), ExtInt::Finite(s)) = (lc_dim, sup) {
        if l < s {
            return Err(KernelError::structural(format!(
                "support dimension {l} fell below the top degree {s}"
            )));
        }
    }
    Ok(InvariantBundle {
        sup,
        inf,
        amp,
        h_dims: h.to_vec(),
        lc_dim,
        rgamma: profile.degree_dims(),
        rgamma_sup: profile.sup(),
        rgamma_inf: profile.inf(),
        rgamma_amp: profile.amp(),
        depth,
        seq_depth: depth.minus(inf),
        lc_dim_via_duality: profile.sup(),
    })
}

fn degree_dims(entries: &[CohomologyEntry]) -> Vec<DegreeDim> {
    entries
        .iter()
        .map(|e| DegreeDim {
            degree: e.degree,
            dim: e.dim,
        })
        .collect()
}

pub fn invariants_of_ring(a: &DgRing) -> KResult<InvariantBundle> {
    bundle_from_parts(a.complex(), &degree_dims(a.cohomology()))
}

pub fn invariants_of_module(m: &DgModule) -> KResult<InvariantBundle> {
    bundle_from_parts(m.complex(), &degree_dims(m.cohomology()))
}

/// Invariants of a bare complex: cohomology is computed on the spot.
pub fn invariants_of_complex(c: &Complex) -> KResult<InvariantBundle> {
    let h: Vec<DegreeDim> = c
        .cohomology_modules()
        .into_iter()
        .map(|(degree, m)| DegreeDim {
            degree,
            dim: m.krull_dim(),
        })
        .collect();
    bundle_from_parts(c, &h)
}

/// x_i^t as a polynomial.
fn var_power(ring: &PolyRing, i: usize, t: u32) -> Polynomial {
    let mut m = Monomial::one(ring.nvars());
    let v = Monomial::var(ring.nvars(), i);
    for _ in 0..t {
        m = m.mul(&v);
    }
    ring.monomial(m, 1)
}

/// Checks that a complex is degreewise free over its coefficient ring:
/// every relation column must be a quotient-ideal multiple of a single
/// generator.
fn check_ring_free(k: &Complex) -> KResult<()> {
    let q = k.ctx().quotient();
    for term in k.terms() {
        for col in term.relations() {
            let nonzero: Vec<&Polynomial> = col.iter().filter(|p| !p.is_zero()).collect();
            if nonzero.len() != 1 || !q.contains(nonzero[0]) {
                return Err(KernelError::unsupported(
                    "Hom source must be a degreewise free complex",
                ));
            }
        }
    }
    Ok(())
}

/// Hom from a degreewise free complex K into a module M, as a complex in
/// degrees [-hi(K), -lo(K)]: the term at i is a direct sum of copies of M
/// twisted against the generator degrees of K at -i, and the differential
/// is composition with the differential of K (written without signs,
/// which changes nothing up to isomorphism).
pub fn hom_free_into_module(k: &Complex, m: &PresentedModule) -> KResult<Complex> {
    if !k.ring().same_ring(m.ring()) {
        return Err(KernelError::structural(
            "Hom arguments live over different rings",
        ));
    }
    check_ring_free(k)?;
    let kt = k.trim();
    if kt.is_empty() {
        return Err(KernelError::degenerate("Hom out of an empty complex"));
    }
    let ring = m.ring().clone();
    let mg = m.ngens();
    let lo = -kt.hi();
    let hi = -kt.lo();
    let mut terms = Vec::new();
    for i in lo..=hi {
        let offsets: Vec<i64> = kt.gen_degrees_at(-i).iter().map(|a| -a).collect();
        terms.push(m.power_with_offsets(&offsets));
    }
    let mut diffs = Vec::new();
    for i in lo..hi {
        // composition with d_K : K^{-i-1} -> K^{-i}
        let d = kt.diff_cols(-i - 1);
        let src_copies = kt.ngens_at(-i);
        let tgt_copies = kt.ngens_at(-i - 1);
        let mut cols = Vec::with_capacity(src_copies * mg);
        for q in 0..src_copies {
            for j in 0..mg {
                let mut col = vec![ring.zero(); tgt_copies * mg];
                for (w, dcol) in d.iter().enumerate() {
                    if !dcol[q].is_zero() {
                        col[w * mg + j] = dcol[q].clone();
                    }
                }
                cols.push(col);
            }
        }
        diffs.push(cols);
    }
    Complex::new(m.ctx().clone(), lo, terms, diffs)
}

/// Depth of a module through the resolution of the residue field:
/// smallest i with Ext^i(k, M) nonzero, where k is resolved over the
/// polynomial ring. Independent cross-check of the duality route.
pub fn depth_via_koszul(m: &PresentedModule) -> KResult<ExtInt> {
    if m.is_zero_module() {
        return Ok(ExtInt::NegInf);
    }
    let ring = m.ring().clone();
    let pctx = crate::homalg::module::RingCtx::polynomial_only(ring.clone());
    let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
    let k = PresentedModule::cyclic_quotient(pctx, &vars)?;
    let res = free_resolution(&k)?;
    let hom = hom_free_into_module(&res.complex, m)?;
    let profile = hom.cohomology_modules();
    match profile.first() {
        Some((i, _)) => Ok(ExtInt::Finite(*i)),
        None => Err(KernelError::structural(
            "nonzero module with no Ext against the residue field",
        )),
    }
}

/// Builds the Koszul-type complexes on elements f_i and f_i * m_i over the
/// same ring, together with the comparison map sending a generator indexed
/// by a subset S to the product of the multipliers over S times the same
/// generator. The comparison is validated as a chain map at every stage.
fn koszul_transition(
    ctx: &std::sync::Arc<crate::homalg::module::RingCtx>,
    steps: &[(Polynomial, Polynomial)],
) -> KResult<(Complex, Complex, ChainMap)> {
    let ring = ctx.poly().clone();
    let base = PresentedModule::over_ring(ctx.clone(), vec![0], Vec::new())?;
    let mut k1 = Complex::from_module(base.clone(), 0);
    let mut k2 = Complex::from_module(base, 0);
    let mut kappa = ChainMap::new(&k2, &k1, vec![vec![vec![ring.one()]]])?;
    for (f, mu) in steps {
        let fm = ring.mul(f, mu);
        let (s2, m2) = ChainMap::multiplication(&k2, &fm)?;
        let k2n = cone(&s2, &k2, &m2)?;
        let (s1, m1) = ChainMap::multiplication(&k1, f)?;
        let k1n = cone(&s1, &k1, &m1)?;
        let mut comps = Vec::new();
        for i in k2n.lo()..=k2n.hi() {
            let xg2 = k2.ngens_at(i + 1);
            let yg2 = k2.ngens_at(i);
            let xg1 = k1.ngens_at(i + 1);
            let yg1 = k1.ngens_at(i);
            let mut cols = Vec::with_capacity(xg2 + yg2);
            // twisted block: multiplier times the old comparison one
            // degree up
            for q in 0..xg2 {
                let old = kappa
                    .comp_at(i + 1)
                    .expect("comparison component in range");
                let mut col = vec_mul_poly(&ring, &old[q], mu);
                debug_assert_eq!(col.len(), xg1);
                col.extend(std::iter::repeat_with(|| ring.zero()).take(yg1));
                cols.push(col);
            }
            // untouched block: the old comparison at this degree
            for q in 0..yg2 {
                let old = kappa.comp_at(i).expect("comparison component in range");
                let mut col = vec![ring.zero(); xg1];
                col.extend(old[q].iter().cloned());
                cols.push(col);
            }
            comps.push(cols);
        }
        kappa = ChainMap::new(&k2n, &k1n, comps)?;
        k1 = k1n;
        k2 = k2n;
    }
    Ok((k1, k2, kappa))
}

/// Partial torsion profile through the directed system of Koszul
/// complexes: the degrees where a class of Hom(Kos(x^t), M) has nonzero
/// image in Hom(Kos(x^{2t}), M) under the transition map. Advisory
/// one-sided check against the duality route; never used to decide.
pub fn koszul_colimit_profile_oracle(m: &PresentedModule, t: u32) -> KResult<Vec<i64>> {
    if t == 0 {
        return Err(KernelError::unsupported(
            "the Koszul stage parameter must be positive",
        ));
    }
    if m.is_zero_module() {
        return Ok(Vec::new());
    }
    let ctx = m.ctx().clone();
    let ring = ctx.poly().clone();
    let steps: Vec<(Polynomial, Polynomial)> = (0..ring.nvars())
        .map(|i| {
            let p = var_power(&ring, i, t);
            (p.clone(), p)
        })
        .collect();
    let (k1, k2, kappa) = koszul_transition(&ctx, &steps)?;
    let h1 = hom_free_into_module(&k1, m)?;
    let h2 = hom_free_into_module(&k2, m)?;
    let mg = m.ngens();
    // the transition on Hom complexes: precomposition with the comparison
    let mut tcomps = Vec::new();
    for i in h1.lo()..=h1.hi() {
        let g1 = k1.ngens_at(-i);
        let g2 = k2.ngens_at(-i);
        let kc = kappa.comp_at(-i).expect("comparison component in range");
        let mut cols = Vec::with_capacity(g1 * mg);
        for q1 in 0..g1 {
            for j in 0..mg {
                let mut col = vec![ring.zero(); g2 * mg];
                for (q2, kcol) in kc.iter().enumerate() {
                    if !kcol[q1].is_zero() {
                        col[q2 * mg + j] = kcol[q1].clone();
                    }
                }
                cols.push(col);
            }
        }
        tcomps.push(cols);
    }
    let transition = ChainMap::new(&h1, &h2, tcomps)?;
    let mut survivors = Vec::new();
    for i in h1.lo()..=h1.hi() {
        let cocycles = h1.cocycles_at(i);
        if cocycles.is_empty() {
            continue;
        }
        let tgt_len = h2.ngens_at(i);
        let gb = module_gb(&ring, tgt_len, &h2.boundaries_at(i));
        let cols = transition.comp_at(i).expect("transition component");
        let survived = cocycles.iter().any(|z| {
            let image = apply_matrix(&ring, cols, tgt_len, z);
            !vec_is_zero(&normal_form_vec(&ring, &gb, &image))
        });
        if survived {
            survivors.push(i);
        }
    }
    Ok(survivors)
}
