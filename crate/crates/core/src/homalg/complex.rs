//! Bounded cochain complexes of finitely presented graded modules.
//!
//! Terms sit at consecutive cohomological degrees; differentials are
//! matrices stored column-per-source-generator and are validated to be
//! degree zero, well defined on relations, and square to zero. Cones,
//! shifts, internal twists, duals of free complexes, and cohomology as a
//! presented module are provided.

use std::sync::Arc;

use crate::algebra::poly::{PolyRing, Polynomial};
use crate::homalg::module::{PresentedModule, RingCtx};
use crate::homalg::modvec::{
    self, kernel_of_columns, vec_degree, vec_is_zero, ModVec,
};
use crate::{KResult, KernelError};

/// Image of `v` (coordinates over the matrix columns) under the matrix.
pub fn apply_matrix(
    ring: &PolyRing,
    cols: &[ModVec],
    tgt_len: usize,
    v: &[Polynomial],
) -> ModVec {
    let mut out = vec![ring.zero(); tgt_len];
    for (j, vj) in v.iter().enumerate() {
        if vj.is_zero() {
            continue;
        }
        let add = modvec::vec_mul_poly(ring, &cols[j], vj);
        for (o, a) in out.iter_mut().zip(add) {
            *o = ring.add(o, &a);
        }
    }
    out
}

/// Matrix product second ∘ first, columns over the source of `first`.
pub fn compose_matrices(
    ring: &PolyRing,
    second: &[ModVec],
    second_tgt_len: usize,
    first: &[ModVec],
) -> Vec<ModVec> {
    first
        .iter()
        .map(|col| apply_matrix(ring, second, second_tgt_len, col))
        .collect()
}

fn negate_matrix(ring: &PolyRing, cols: &[ModVec]) -> Vec<ModVec> {
    cols.iter()
        .map(|c| c.iter().map(|p| ring.neg(p)).collect())
        .collect()
}

/// Transpose: input columns over `nrows` rows; output has `nrows` columns.
fn transpose_matrix(_ring: &PolyRing, cols: &[ModVec], nrows: usize) -> Vec<ModVec> {
    (0..nrows)
        .map(|r| cols.iter().map(|col| col[r].clone()).collect())
        .collect()
}

#[derive(Debug, Clone)]
pub struct Complex {
    ctx: Arc<RingCtx>,
    lo: i64,
    terms: Vec<PresentedModule>,
    /// diffs[k]: matrix C^{lo+k} -> C^{lo+k+1}; length terms.len()-1.
    diffs: Vec<Vec<ModVec>>,
}

impl Complex {
    pub fn new(
        ctx: Arc<RingCtx>,
        lo: i64,
        terms: Vec<PresentedModule>,
        diffs: Vec<Vec<ModVec>>,
    ) -> KResult<Complex> {
        if terms.is_empty() {
            if !diffs.is_empty() {
                return Err(KernelError::structural("differentials without terms"));
            }
            return Ok(Complex { ctx, lo, terms, diffs });
        }
        if diffs.len() + 1 != terms.len() {
            return Err(KernelError::structural(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        for t in &terms {
            if !t.ctx().same_ctx(&ctx) {
                return Err(KernelError::structural(
                    "complex terms live over different rings",
                ));
            }
        }
        let ring = ctx.poly().clone();
        for k in 0..diffs.len() {
            let src = &terms[k];
            let tgt = &terms[k + 1];
            let d = &diffs[k];
            if d.len() != src.ngens() {
                return Err(KernelError::structural(format!(
                    "differential at degree {} has {} columns for {} generators",
                    lo + k as i64,
                    d.len(),
                    src.ngens()
                )));
            }
            for (j, col) in d.iter().enumerate() {
                if col.len() != tgt.ngens() {
                    return Err(KernelError::structural(
                        "differential column length mismatch",
                    ));
                }
                match vec_degree(col, tgt.gen_degrees())? {
                    None => {}
                    Some(deg) => {
                        if deg != src.gen_degrees()[j] {
                            return Err(KernelError::structural(format!(
                                "differential at degree {} is not degree zero on generator {}",
                                lo + k as i64,
                                j
                            )));
                        }
                    }
                }
            }
            for rel in src.relations() {
                let img = apply_matrix(&ring, d, tgt.ngens(), rel);
                if !tgt.element_is_zero(&img) {
                    return Err(KernelError::structural(format!(
                        "differential at degree {} is not well defined on relations",
                        lo + k as i64
                    )));
                }
            }
            if k + 1 < diffs.len() {
                let tgt2 = &terms[k + 2];
                for col in d {
                    let dd = apply_matrix(&ring, &diffs[k + 1], tgt2.ngens(), col);
                    if !tgt2.element_is_zero(&dd) {
                        return Err(KernelError::structural(format!(
                            "differential does not square to zero at degree {}",
                            lo + k as i64
                        )));
                    }
                }
            }
        }
        Ok(Complex { ctx, lo, terms, diffs })
    }

    /// One module placed at cohomological degree `at`.
    pub fn from_module(m: PresentedModule, at: i64) -> Complex {
        Complex {
            ctx: m.ctx().clone(),
            lo: at,
            terms: vec![m],
            diffs: Vec::new(),
        }
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ctx.poly()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn terms(&self) -> &[PresentedModule] {
        &self.terms
    }

    pub fn diffs(&self) -> &[Vec<ModVec>] {
        &self.diffs
    }

    pub fn term_at(&self, i: i64) -> Option<&PresentedModule> {
        if self.terms.is_empty() || i < self.lo || i > self.hi() {
            None
        } else {
            Some(&self.terms[(i - self.lo) as usize])
        }
    }

    pub fn ngens_at(&self, i: i64) -> usize {
        self.term_at(i).map(|m| m.ngens()).unwrap_or(0)
    }

    pub fn gen_degrees_at(&self, i: i64) -> Vec<i64> {
        self.term_at(i)
            .map(|m| m.gen_degrees().to_vec())
            .unwrap_or_default()
    }

    /// Differential matrix out of degree i, if both ends are in range.
    pub fn diff_at(&self, i: i64) -> Option<&Vec<ModVec>> {
        if i < self.lo || i + 1 > self.hi() {
            None
        } else {
            Some(&self.diffs[(i - self.lo) as usize])
        }
    }

    /// Columns of the differential out of degree i, materialized with the
    /// correct shapes even at the boundary.
    pub fn diff_cols(&self, i: i64) -> Vec<ModVec> {
        let src = self.ngens_at(i);
        let tgt = self.ngens_at(i + 1);
        match self.diff_at(i) {
            Some(d) => d.clone(),
            None => (0..src).map(|_| vec![self.ring().zero(); tgt]).collect(),
        }
    }

    /// Drops zero-rank terms at both ends.
    pub fn trim(&self) -> Complex {
        let mut lo_idx = 0usize;
        let mut hi_idx = self.terms.len();
        while lo_idx < hi_idx && self.terms[lo_idx].ngens() == 0 {
            lo_idx += 1;
        }
        while hi_idx > lo_idx && self.terms[hi_idx - 1].ngens() == 0 {
            hi_idx -= 1;
        }
        let terms: Vec<PresentedModule> = self.terms[lo_idx..hi_idx].to_vec();
        let diffs: Vec<Vec<ModVec>> = if terms.len() <= 1 {
            Vec::new()
        } else {
            self.diffs[lo_idx..hi_idx - 1].to_vec()
        };
        Complex {
            ctx: self.ctx.clone(),
            lo: self.lo + lo_idx as i64,
            terms,
            diffs,
        }
    }

    /// Cohomological shift: (C[k])^i = C^{i+k}; odd shifts negate the
    /// differentials. Internal grading is untouched.
    pub fn shift(&self, k: i64) -> Complex {
        let ring = self.ring().clone();
        let diffs = if k.rem_euclid(2) == 1 {
            self.diffs.iter().map(|d| negate_matrix(&ring, d)).collect()
        } else {
            self.diffs.clone()
        };
        Complex {
            ctx: self.ctx.clone(),
            lo: self.lo - k,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Internal-degree twist: every generator degree increases by e.
    pub fn internal_twist(&self, e: i64) -> Complex {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let degs: Vec<i64> = t.gen_degrees().iter().map(|d| d + e).collect();
                PresentedModule::from_parts(self.ctx.clone(), degs, t.relations().to_vec())
                    .expect("twist preserves homogeneity")
            })
            .collect();
        Complex {
            ctx: self.ctx.clone(),
            lo: self.lo,
            terms,
            diffs: self.diffs.clone(),
        }
    }

    pub fn is_free(&self) -> bool {
        self.terms.iter().all(|t| t.relations().is_empty())
    }

    /// Dual of a complex of free modules: (dual C)^i = Hom(C^{-i}, P) with
    /// generator degrees negated and d_dual^i = (-1)^{i+1} transpose of
    /// d_C^{-i-1}.
    pub fn dual(&self) -> KResult<Complex> {
        if !self.is_free() {
            return Err(KernelError::unsupported(
                "duals are implemented for free complexes only",
            ));
        }
        if self.terms.is_empty() {
            return Ok(self.clone());
        }
        let ring = self.ring().clone();
        let lo = -self.hi();
        let len = self.terms.len();
        let mut terms = Vec::with_capacity(len);
        for k in 0..len {
            let i = lo + k as i64; // dual degree
            let orig = self.term_at(-i).expect("in range");
            let degs: Vec<i64> = orig.gen_degrees().iter().map(|d| -d).collect();
            terms.push(
                PresentedModule::from_parts(self.ctx.clone(), degs, Vec::new())
                    .expect("free module"),
            );
        }
        let mut diffs = Vec::with_capacity(len.saturating_sub(1));
        for k in 0..len.saturating_sub(1) {
            let i = lo + k as i64;
            let d_orig = self.diff_at(-i - 1).expect("in range");
            let nrows = self.ngens_at(-i);
            let mut t = transpose_matrix(&ring, d_orig, nrows);
            if (i + 1).rem_euclid(2) == 1 {
                t = negate_matrix(&ring, &t);
            }
            diffs.push(t);
        }
        Complex::new(self.ctx.clone(), lo, terms, diffs)
    }

    /// Generators of the cocycle submodule Z^i inside the free cover of
    /// the term at degree i: vectors whose image under the differential
    /// lies in the relation span of the next term.
    pub fn cocycles_at(&self, i: i64) -> Vec<ModVec> {
        let ring = self.ring().clone();
        let Some(term) = self.term_at(i) else {
            return Vec::new();
        };
        let g = term.ngens();
        if g == 0 {
            return Vec::new();
        }
        match self.diff_at(i) {
            None => (0..g).map(|j| term.unit_vector(j)).collect(),
            Some(d) => {
                let tgt = self.term_at(i + 1).expect("diff has a target");
                if tgt.ngens() == 0 {
                    (0..g).map(|j| term.unit_vector(j)).collect()
                } else {
                    let mut cols: Vec<ModVec> = d.clone();
                    cols.extend(tgt.relations().iter().cloned());
                    let ker = kernel_of_columns(&ring, tgt.ngens(), &cols);
                    // kernel coordinates are indexed by [gens | relations];
                    // project onto the generator block. The kernel output
                    // is canonical and deterministic; the projection
                    // preserves that order, and duplicates are harmless.
                    ker.into_iter()
                        .map(|k| k[..g].to_vec())
                        .filter(|v| !vec_is_zero(v))
                        .collect()
                }
            }
        }
    }

    /// Boundary columns at degree i together with the term's own
    /// relations: the denominator of H^i.
    pub fn boundaries_at(&self, i: i64) -> Vec<ModVec> {
        let Some(term) = self.term_at(i) else {
            return Vec::new();
        };
        let mut b: Vec<ModVec> = Vec::new();
        if i > self.lo {
            if let Some(d_in) = self.diff_at(i - 1) {
                b.extend(d_in.iter().cloned());
            }
        }
        b.extend(term.relations().iter().cloned());
        b
    }

    /// Cohomology at degree i as a minimal presented module.
    pub fn cohomology_at(&self, i: i64) -> PresentedModule {
        let ring = self.ring().clone();
        let Some(term) = self.term_at(i) else {
            return PresentedModule::zero(self.ctx.clone());
        };
        let g = term.ngens();
        if g == 0 {
            return PresentedModule::zero(self.ctx.clone());
        }
        let cocycles = self.cocycles_at(i);
        if cocycles.is_empty() {
            return PresentedModule::zero(self.ctx.clone());
        }
        let b = self.boundaries_at(i);
        let gen_degrees: Vec<i64> = cocycles
            .iter()
            .map(|v| {
                vec_degree(v, term.gen_degrees())
                    .expect("homogeneous cocycle")
                    .expect("nonzero cocycle")
            })
            .collect();
        // relations among the chosen cocycle generators: syzygies of
        // [cocycles | boundaries] restricted to the cocycle block
        let mut cols: Vec<ModVec> = cocycles.clone();
        cols.extend(b.iter().cloned());
        let ker = kernel_of_columns(&ring, g, &cols);
        let rels: Vec<ModVec> = ker
            .into_iter()
            .map(|k| k[..cocycles.len()].to_vec())
            .filter(|v| !vec_is_zero(v))
            .collect();
        let h = PresentedModule::from_parts(self.ctx.clone(), gen_degrees, rels)
            .expect("cohomology presentation is well formed");
        h.minimalize()
    }

    /// (degree, cohomology) for all degrees with nonzero cohomology.
    pub fn cohomology_modules(&self) -> Vec<(i64, PresentedModule)> {
        let mut out = Vec::new();
        if self.terms.is_empty() {
            return out;
        }
        for i in self.lo..=self.hi() {
            let h = self.cohomology_at(i);
            if h.ngens() > 0 && !h.is_zero_module() {
                out.push((i, h));
            }
        }
        out
    }
}

/// A degree-by-degree map of complexes, validated to be degree zero, well
/// defined, and to commute with the differentials. Components are indexed
/// by the source complex's range.
#[derive(Debug, Clone)]
pub struct ChainMap {
    lo: i64,
    comps: Vec<Vec<ModVec>>,
}

impl ChainMap {
    pub fn new(src: &Complex, tgt: &Complex, comps: Vec<Vec<ModVec>>) -> KResult<ChainMap> {
        if !src.ctx().same_ctx(tgt.ctx()) {
            return Err(KernelError::structural("chain map across different rings"));
        }
        let ring = src.ring().clone();
        if src.is_empty() {
            if comps.is_empty() {
                return Ok(ChainMap { lo: src.lo(), comps });
            }
            return Err(KernelError::structural("components without source terms"));
        }
        if comps.len() != src.terms().len() {
            return Err(KernelError::structural(format!(
                "chain map needs {} components, got {}",
                src.terms().len(),
                comps.len()
            )));
        }
        for (k, comp) in comps.iter().enumerate() {
            let i = src.lo() + k as i64;
            let sg = src.ngens_at(i);
            let tg = tgt.ngens_at(i);
            if comp.len() != sg {
                return Err(KernelError::structural(format!(
                    "component at degree {i} has {} columns for {} generators",
                    comp.len(),
                    sg
                )));
            }
            let tdegs = tgt.gen_degrees_at(i);
            for (j, col) in comp.iter().enumerate() {
                if col.len() != tg {
                    return Err(KernelError::structural(format!(
                        "component at degree {i} has a column of wrong length"
                    )));
                }
                match vec_degree(col, &tdegs)? {
                    None => {}
                    Some(d) => {
                        if d != src.term_at(i).unwrap().gen_degrees()[j] {
                            return Err(KernelError::structural(format!(
                                "chain map component at degree {i} is not degree zero"
                            )));
                        }
                    }
                }
            }
            if let Some(t) = tgt.term_at(i) {
                for rel in src.term_at(i).unwrap().relations() {
                    let img = apply_matrix(&ring, comp, tg, rel);
                    if !t.element_is_zero(&img) {
                        return Err(KernelError::structural(format!(
                            "chain map component at degree {i} is not well defined"
                        )));
                    }
                }
            } else {
                // no target term: all columns must be (length-0) zero
                // vectors, which they are by the length check above
            }
            // commuting square into degree i+1
            let sg_next = src.ngens_at(i + 1);
            let tg_next = tgt.ngens_at(i + 1);
            if tg_next == 0 {
                continue;
            }
            let next_comp: &[ModVec] = if k + 1 < comps.len() {
                &comps[k + 1]
            } else {
                &[]
            };
            let d_src = src.diff_cols(i);
            let d_tgt = tgt.diff_cols(i);
            let Some(t_next) = tgt.term_at(i + 1) else {
                continue;
            };
            for j in 0..sg {
                // f^{i+1}(d_src e_j)
                let via_src = if sg_next == 0 {
                    vec![ring.zero(); tg_next]
                } else {
                    apply_matrix(&ring, next_comp, tg_next, &d_src[j])
                };
                // d_tgt(f^i e_j)
                let via_tgt = apply_matrix(&ring, &d_tgt, tg_next, &comp[j]);
                let diff = modvec::vec_sub(&ring, &via_src, &via_tgt);
                if !t_next.element_is_zero(&diff) {
                    return Err(KernelError::structural(format!(
                        "chain map square at degree {i} does not commute"
                    )));
                }
            }
        }
        Ok(ChainMap { lo: src.lo(), comps })
    }

    /// Multiplication by a homogeneous polynomial as a chain map from the
    /// internally twisted complex to the complex itself.
    pub fn multiplication(c: &Complex, f: &Polynomial) -> KResult<(Complex, ChainMap)> {
        let e = f
            .homogeneous_degree()
            .ok_or_else(|| KernelError::unsupported("multiplication by inhomogeneous element"))?;
        let src = c.internal_twist(e);
        let ring = c.ring().clone();
        let comps: Vec<Vec<ModVec>> = c
            .terms()
            .iter()
            .map(|t| {
                (0..t.ngens())
                    .map(|j| {
                        let mut col = vec![ring.zero(); t.ngens()];
                        col[j] = f.clone();
                        col
                    })
                    .collect()
            })
            .collect();
        let map = ChainMap::new(&src, c, comps)?;
        Ok((src, map))
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn comp_at(&self, i: i64) -> Option<&Vec<ModVec>> {
        if i < self.lo || (i - self.lo) as usize >= self.comps.len() {
            None
        } else {
            Some(&self.comps[(i - self.lo) as usize])
        }
    }
}

/// Mapping cone of f: X -> Y: cone^i = X^{i+1} (+) Y^i with differential
/// (x, y) |-> (-d_X x, f x + d_Y y).
pub fn cone(x: &Complex, y: &Complex, f: &ChainMap) -> KResult<Complex> {
    if !x.ctx().same_ctx(y.ctx()) {
        return Err(KernelError::structural("cone across different rings"));
    }
    let ctx = y.ctx().clone();
    let ring = y.ring().clone();
    if x.is_empty() && y.is_empty() {
        return Ok(Complex {
            ctx,
            lo: y.lo(),
            terms: Vec::new(),
            diffs: Vec::new(),
        });
    }
    let lo = if x.is_empty() {
        y.lo()
    } else if y.is_empty() {
        x.lo() - 1
    } else {
        (x.lo() - 1).min(y.lo())
    };
    let hi = if x.is_empty() {
        y.hi()
    } else if y.is_empty() {
        x.hi() - 1
    } else {
        (x.hi() - 1).max(y.hi())
    };
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for i in lo..=hi {
        let xdegs = x.gen_degrees_at(i + 1);
        let ydegs = y.gen_degrees_at(i);
        let xg = xdegs.len();
        let yg = ydegs.len();
        let total = xg + yg;
        let mut degs = xdegs;
        degs.extend(ydegs);
        // block-diagonal relations
        let mut rels: Vec<ModVec> = Vec::new();
        if let Some(xt) = x.term_at(i + 1) {
            for col in xt.relations() {
                let mut c = vec![ring.zero(); total];
                c[..xg].clone_from_slice(col);
                rels.push(c);
            }
        }
        if let Some(yt) = y.term_at(i) {
            for col in yt.relations() {
                let mut c = vec![ring.zero(); total];
                c[xg..].clone_from_slice(col);
                rels.push(c);
            }
        }
        terms.push(PresentedModule::from_parts(ctx.clone(), degs, rels)?);
        if i == hi {
            break;
        }
        // differential into degree i+1: target blocks X^{i+2}, Y^{i+1}
        let xg2 = x.ngens_at(i + 2);
        let yg2 = y.ngens_at(i + 1);
        let ttotal = xg2 + yg2;
        let dx = x.diff_cols(i + 1);
        let dy = y.diff_cols(i);
        let fc = f.comp_at(i + 1);
        let mut cols: Vec<ModVec> = Vec::with_capacity(total);
        for j in 0..xg {
            let mut col = vec![ring.zero(); ttotal];
            for (r, entry) in dx[j].iter().enumerate() {
                col[r] = ring.neg(entry);
            }
            if yg2 > 0 {
                if let Some(fcols) = fc {
                    for (r, entry) in fcols[j].iter().enumerate() {
                        col[xg2 + r] = entry.clone();
                    }
                }
            }
            cols.push(col);
        }
        for j in 0..yg {
            let mut col = vec![ring.zero(); ttotal];
            for (r, entry) in dy[j].iter().enumerate() {
                col[xg2 + r] = entry.clone();
            }
            cols.push(col);
        }
        diffs.push(cols);
    }
    Complex::new(ctx, lo, terms, diffs)
}
