//! Finitely presented graded modules.
//!
//! A module is coker of a graded matrix over P. Modules "over R = P/I"
//! are presented over P with the columns I*e_i appended, so every
//! computation (normal forms, kernels, annihilators) runs over the
//! polynomial ring. Generator degrees make everything graded; all
//! relation columns must be homogeneous.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::ideal::Ideal;
use crate::algebra::monomial::{monomials_of_degree, Monomial};
use crate::algebra::poly::{PolyRing, Polynomial};
use crate::homalg::linalg;
use crate::homalg::modvec::{
    self, kernel_of_columns, module_gb, vec_degree, vec_is_zero, ModVec,
};
use crate::{KResult, KernelError};

/// Base context R = P/I. The quotient ideal may be zero (R = P); it must
/// be homogeneous and proper.
#[derive(Debug, Clone)]
pub struct RingCtx {
    poly: Arc<PolyRing>,
    quotient: Ideal,
}

impl RingCtx {
    pub fn new(poly: Arc<PolyRing>, quotient: Ideal) -> KResult<Arc<Self>> {
        if !std::ptr::eq(quotient.ring().as_ref(), poly.as_ref())
            && !quotient.ring().same_ring(&poly)
        {
            return Err(KernelError::structural(
                "quotient ideal lives in a different ring",
            ));
        }
        if !quotient.is_homogeneous() {
            return Err(KernelError::unsupported(
                "quotient ideal must be homogeneous",
            ));
        }
        if quotient.is_unit() {
            return Err(KernelError::degenerate(
                "quotient ideal is the unit ideal; the base ring would be zero",
            ));
        }
        Ok(Arc::new(RingCtx { poly, quotient }))
    }

    pub fn polynomial_only(poly: Arc<PolyRing>) -> Arc<Self> {
        let q = Ideal::zero(poly.clone());
        Arc::new(RingCtx { poly, quotient: q })
    }

    pub fn poly(&self) -> &Arc<PolyRing> {
        &self.poly
    }

    pub fn quotient(&self) -> &Ideal {
        &self.quotient
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn same_ctx(&self, other: &RingCtx) -> bool {
        self.poly.same_ring(&other.poly) && self.quotient.equals(&other.quotient)
    }
}

#[derive(Debug, Clone)]
pub struct PresentedModule {
    ctx: Arc<RingCtx>,
    gen_degrees: Vec<i64>,
    relations: Vec<ModVec>,
    rel_degrees: Vec<i64>,
    gb: OnceLock<Arc<Vec<ModVec>>>,
}

impl PresentedModule {
    /// Builds a module from explicit parts, without adding quotient
    /// relations. Zero columns are dropped; inhomogeneous columns are
    /// rejected.
    pub fn from_parts(
        ctx: Arc<RingCtx>,
        gen_degrees: Vec<i64>,
        relations: Vec<ModVec>,
    ) -> KResult<Self> {
        let g = gen_degrees.len();
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for col in relations {
            if col.len() != g {
                return Err(KernelError::structural(format!(
                    "relation column has {} entries for {} generators",
                    col.len(),
                    g
                )));
            }
            match vec_degree(&col, &gen_degrees)? {
                None => continue,
                Some(d) => {
                    degs.push(d);
                    cols.push(col);
                }
            }
        }
        Ok(PresentedModule {
            ctx,
            gen_degrees,
            relations: cols,
            rel_degrees: degs,
            gb: OnceLock::new(),
        })
    }

    /// Module declared over R = P/I: quotient relations are materialized
    /// for every generator.
    pub fn over_ring(
        ctx: Arc<RingCtx>,
        gen_degrees: Vec<i64>,
        mut relations: Vec<ModVec>,
    ) -> KResult<Self> {
        let g = gen_degrees.len();
        let ring = ctx.poly().clone();
        for i in 0..g {
            for q in ctx.quotient().gens() {
                let mut col = vec![ring.zero(); g];
                col[i] = q.clone();
                relations.push(col);
            }
        }
        PresentedModule::from_parts(ctx, gen_degrees, relations)
    }

    /// Free module of rank 1 over R with generator in degree `deg`.
    pub fn cyclic_free(ctx: Arc<RingCtx>, deg: i64) -> Self {
        PresentedModule::over_ring(ctx, vec![deg], Vec::new())
            .expect("cyclic free module is well formed")
    }

    /// R/(extra) as a cyclic module over R.
    pub fn cyclic_quotient(ctx: Arc<RingCtx>, extra: &[Polynomial]) -> KResult<Self> {
        let rels: Vec<ModVec> = extra.iter().map(|f| vec![f.clone()]).collect();
        PresentedModule::over_ring(ctx, vec![0], rels)
    }

    pub fn zero(ctx: Arc<RingCtx>) -> Self {
        PresentedModule {
            ctx,
            gen_degrees: Vec::new(),
            relations: Vec::new(),
            rel_degrees: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ctx.poly()
    }

    pub fn ngens(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.gen_degrees
    }

    pub fn relations(&self) -> &[ModVec] {
        &self.relations
    }

    pub fn rel_degrees(&self) -> &[i64] {
        &self.rel_degrees
    }

    pub fn rel_gb(&self) -> &[ModVec] {
        self.gb
            .get_or_init(|| {
                Arc::new(module_gb(self.ring(), self.ngens(), &self.relations))
            })
            .as_ref()
    }

    pub fn unit_vector(&self, i: usize) -> ModVec {
        let ring = self.ring();
        let mut v = vec![ring.zero(); self.ngens()];
        v[i] = ring.one();
        v
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> ModVec {
        modvec::normal_form_vec(self.ring(), self.rel_gb(), v)
    }

    pub fn element_is_zero(&self, v: &[Polynomial]) -> bool {
        vec_is_zero(&self.normal_form(v))
    }

    pub fn is_zero_module(&self) -> bool {
        (0..self.ngens()).all(|i| self.element_is_zero(&self.unit_vector(i)))
    }

    /// Strips generators that occur in a relation with a unit coefficient.
    /// The result presents an isomorphic module; for homogeneous data this
    /// yields a minimal presentation.
    pub fn minimalize(&self) -> PresentedModule {
        let ring = self.ring().clone();
        let mut gen_degrees = self.gen_degrees.clone();
        let mut cols: Vec<ModVec> = self.relations.clone();
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            'scan: for (j, col) in cols.iter().enumerate() {
                for (i, entry) in col.iter().enumerate() {
                    if entry.is_constant() {
                        pivot = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((i, j)) = pivot else { break };
            let pivot_col = cols[j].clone();
            let c = pivot_col[i].leading().unwrap().1;
            let cinv = ring.field().inv(c);
            for (l, col) in cols.iter_mut().enumerate() {
                if l == j || col[i].is_zero() {
                    continue;
                }
                let f = ring.scale(cinv, &col[i]);
                let sub = modvec::vec_mul_poly(&ring, &pivot_col, &f);
                *col = modvec::vec_sub(&ring, col, &sub);
            }
            cols.remove(j);
            for col in cols.iter_mut() {
                col.remove(i);
            }
            gen_degrees.remove(i);
            cols.retain(|c| !vec_is_zero(c));
        }
        PresentedModule::from_parts(self.ctx.clone(), gen_degrees, cols)
            .expect("minimalization preserves well-formedness")
    }

    /// Ideal of elements of P acting as zero. Quotient relations are part
    /// of the presentation, so for modules over R the annihilator always
    /// contains I.
    pub fn annihilator(&self) -> Ideal {
        let ring = self.ring().clone();
        let g = self.ngens();
        if g == 0 {
            return Ideal::new(ring, vec![self.ring().one()]).expect("unit ideal");
        }
        let mut acc: Option<Vec<Polynomial>> = None;
        for i in 0..g {
            let coli = colon_into(&ring, g, &self.relations, &self.unit_vector(i));
            acc = Some(match acc {
                None => coli,
                Some(prev) => intersect_ideal_gens(&ring, &prev, &coli),
            });
            if let Some(gens) = &acc {
                if gens.is_empty() {
                    break; // annihilator is zero; intersections stay zero
                }
            }
        }
        let gens = acc.unwrap_or_default();
        Ideal::new(ring, gens).expect("colon generators are nonzero")
    }

    /// Krull dimension of the module (dimension of P/ann); -1 for zero.
    pub fn krull_dim(&self) -> i64 {
        self.annihilator().dimension()
    }

    /// Dimension over F_p of the degree-d graded piece, by linear algebra
    /// on monomial bases. Independent of the Groebner machinery.
    pub fn graded_dim(&self, d: i64) -> usize {
        let ring = self.ring();
        let field = *ring.field();
        let n = ring.nvars();
        // basis of the free part in degree d
        let mut basis: Vec<(usize, Monomial)> = Vec::new();
        for (i, &a) in self.gen_degrees.iter().enumerate() {
            for m in monomials_of_degree(n, d - a) {
                basis.push((i, m));
            }
        }
        if basis.is_empty() {
            return 0;
        }
        let index_of = |i: usize, m: &Monomial, basis: &[(usize, Monomial)]| -> usize {
            basis
                .iter()
                .position(|(bi, bm)| *bi == i && bm == m)
                .expect("monomial in basis")
        };
        // span of relation multiples in degree d
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (col, &cd) in self.relations.iter().zip(&self.rel_degrees) {
            for m in monomials_of_degree(n, d - cd) {
                let mut row = vec![0u64; basis.len()];
                for (i, entry) in col.iter().enumerate() {
                    for (em, ec) in entry.terms() {
                        let mono = em.mul(&m);
                        row[index_of(i, &mono, &basis)] = *ec;
                    }
                }
                rows.push(row);
            }
        }
        let rank = linalg::rank(&field, &rows);
        basis.len() - rank
    }

    /// Block direct sum.
    pub fn direct_sum(parts: &[&PresentedModule]) -> KResult<PresentedModule> {
        let ctx = parts
            .first()
            .map(|m| m.ctx.clone())
            .ok_or_else(|| KernelError::degenerate("empty direct sum"))?;
        let ring = ctx.poly().clone();
        let mut degrees = Vec::new();
        let mut offsets = Vec::new();
        for m in parts {
            if !m.ctx.same_ctx(&ctx) {
                return Err(KernelError::structural("direct sum across different rings"));
            }
            offsets.push(degrees.len());
            degrees.extend_from_slice(&m.gen_degrees);
        }
        let total = degrees.len();
        let mut cols = Vec::new();
        for (m, off) in parts.iter().zip(&offsets) {
            for col in &m.relations {
                let mut c = vec![ring.zero(); total];
                for (i, entry) in col.iter().enumerate() {
                    c[off + i] = entry.clone();
                }
                cols.push(c);
            }
        }
        PresentedModule::from_parts(ctx, degrees, cols)
    }

    /// Copies of the module with generator-degree offsets, as one module:
    /// used for Hom(free complex, module) terms. `offsets[k]` shifts every
    /// generator degree of copy k.
    pub fn power_with_offsets(&self, offsets: &[i64]) -> PresentedModule {
        let ring = self.ring().clone();
        let g = self.ngens();
        let total = g * offsets.len();
        let mut degrees = Vec::with_capacity(total);
        for &o in offsets {
            for &a in &self.gen_degrees {
                degrees.push(a + o);
            }
        }
        let mut cols = Vec::new();
        for (k, _) in offsets.iter().enumerate() {
            for col in &self.relations {
                let mut c = vec![ring.zero(); total];
                for (i, entry) in col.iter().enumerate() {
                    c[k * g + i] = entry.clone();
                }
                cols.push(c);
            }
        }
        PresentedModule::from_parts(self.ctx.clone(), degrees, cols)
            .expect("power module is well formed")
    }

    /// Sorted generator degrees of a minimal presentation; an isomorphism
    /// invariant for graded modules.
    pub fn minimal_gen_degrees(&self) -> Vec<i64> {
        let mut d = self.minimalize().gen_degrees;
        d.sort();
        d
    }

    pub fn render(&self) -> String {
        let ring = self.ring();
        let gens: Vec<String> = self.gen_degrees.iter().map(|d| format!("e({d})")).collect();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|col| {
                let entries: Vec<String> = col.iter().map(|p| ring.render(p)).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        format!("gens [{}], relations {{{}}}", gens.join(", "), rels.join(", "))
    }
}

/// Generators of the colon ideal (Rel : v) = {f : f v in Rel}, computed
/// from the kernel of [v | Rel].
pub fn colon_into(
    ring: &PolyRing,
    nrows: usize,
    rel_cols: &[ModVec],
    v: &ModVec,
) -> Vec<Polynomial> {
    let mut cols = Vec::with_capacity(1 + rel_cols.len());
    cols.push(v.clone());
    cols.extend(rel_cols.iter().cloned());
    let ker = kernel_of_columns(ring, nrows, &cols);
    let mut out: Vec<Polynomial> = ker
        .into_iter()
        .map(|k| k[0].clone())
        .filter(|f| !f.is_zero())
        .collect();
    out.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .cmp_grevlex(b.leading_monomial().unwrap())
    });
    out.dedup();
    out
}

/// Generators of the intersection of two ideals given by generator lists,
/// via syzygies of the concatenated list.
pub fn intersect_ideal_gens(
    ring: &PolyRing,
    a: &[Polynomial],
    b: &[Polynomial],
) -> Vec<Polynomial> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<ModVec> = Vec::new();
    for f in a {
        cols.push(vec![f.clone()]);
    }
    for g in b {
        cols.push(vec![g.clone()]);
    }
    let ker = kernel_of_columns(ring, 1, &cols);
    let mut out = Vec::new();
    for k in ker {
        let mut elem = ring.zero();
        for (kj, f) in k.iter().take(a.len()).zip(a) {
            elem = ring.add(&elem, &ring.mul(kj, f));
        }
        if !elem.is_zero() {
            out.push(ring.monic(&elem));
        }
    }
    out.sort_by(|x, y| {
        x.leading_monomial()
            .unwrap()
            .cmp_grevlex(y.leading_monomial().unwrap())
    });
    out.dedup();
    out
}

/// The space of degree-0 homomorphisms M -> N as matrices over P: a basis
/// of candidate matrices (columns indexed by M generators, each column a
/// vector over N generators).
fn hom_space_basis(m: &PresentedModule, n: &PresentedModule) -> Vec<Vec<ModVec>> {
    let ring = m.ring().clone();
    let field = *ring.field();
    let nv = ring.nvars();
    // unknowns: (target gen i, source gen j, monomial of degree a_j - b_i)
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for (j, &aj) in m.gen_degrees().iter().enumerate() {
        for (i, &bi) in n.gen_degrees().iter().enumerate() {
            for mono in monomials_of_degree(nv, aj - bi) {
                unknowns.push((i, j, mono));
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    // constraints: for every relation column of M, the image must reduce
    // to zero against N's relations. Normal form is linear over F_p.
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for rel in m.relations() {
        // for each unknown, the reduced contribution vector over N
        let mut contribs: Vec<ModVec> = Vec::with_capacity(unknowns.len());
        for (i, j, mono) in &unknowns {
            let mut w = vec![ring.zero(); n.ngens()];
            if !rel[*j].is_zero() {
                w[*i] = ring.mul_term(&rel[*j], mono, 1);
            }
            contribs.push(n.normal_form(&w));
        }
        // collect every (component, monomial) slot appearing
        let mut slots: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
        for c in &contribs {
            for (comp, p) in c.iter().enumerate() {
                for (mo, _) in p.terms() {
                    slots.insert((comp, mo.exps().to_vec()));
                }
            }
        }
        for (comp, exps) in slots {
            let target = Monomial::from_exps(exps);
            let mut row = vec![0u64; unknowns.len()];
            for (u, c) in contribs.iter().enumerate() {
                for (mo, co) in c[comp].terms() {
                    if *mo == target {
                        row[u] = *co;
                    }
                }
            }
            rows.push(row);
        }
    }
    let null = if rows.is_empty() {
        // no constraints: all unknowns free
        (0..unknowns.len())
            .map(|k| {
                let mut v = vec![0u64; unknowns.len()];
                v[k] = 1;
                v
            })
            .collect()
    } else {
        linalg::nullspace(&field, &rows, unknowns.len())
    };
    // materialize basis matrices
    null.into_iter()
        .map(|coeffs| {
            let mut cols: Vec<ModVec> = (0..m.ngens())
                .map(|_| vec![ring.zero(); n.ngens()])
                .collect();
            for (k, (i, j, mono)) in unknowns.iter().enumerate() {
                if coeffs[k] != 0 {
                    let t = ring.monomial(mono.clone(), coeffs[k]);
                    cols[*j][*i] = ring.add(&cols[*j][*i], &t);
                }
            }
            cols
        })
        .collect()
}

fn matrix_is_surjective(
    ring: &PolyRing,
    cols: &[ModVec],
    n: &PresentedModule,
) -> bool {
    let mut all_cols: Vec<ModVec> = cols.to_vec();
    all_cols.extend(n.relations().iter().cloned());
    let gb = module_gb(ring, n.ngens(), &all_cols);
    (0..n.ngens()).all(|i| {
        let e = n.unit_vector(i);
        vec_is_zero(&modvec::normal_form_vec(ring, &gb, &e))
    })
}

/// Searches for a surjective degree-0 map M -> N: basis elements first,
/// then seeded random combinations of the Hom-space basis.
pub fn find_surjection(
    m: &PresentedModule,
    n: &PresentedModule,
    seed: u64,
    tries: usize,
) -> Option<Vec<ModVec>> {
    let ring = m.ring().clone();
    if n.is_zero_module() {
        return Some((0..m.ngens()).map(|_| vec![ring.zero(); n.ngens()]).collect());
    }
    let basis = hom_space_basis(m, n);
    if basis.is_empty() {
        return None;
    }
    for cand in &basis {
        if matrix_is_surjective(&ring, cand, n) {
            return Some(cand.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ring.field().characteristic();
    for _ in 0..tries {
        let mut cols: Vec<ModVec> = (0..m.ngens())
            .map(|_| vec![ring.zero(); n.ngens()])
            .collect();
        for b in &basis {
            let c: u64 = rng.gen_range(0..p);
            if c == 0 {
                continue;
            }
            for (j, col) in b.iter().enumerate() {
                for (i, e) in col.iter().enumerate() {
                    cols[j][i] = ring.add(&cols[j][i], &ring.scale(c, e));
                }
            }
        }
        if matrix_is_surjective(&ring, &cols, n) {
            return Some(cols);
        }
    }
    None
}

/// Isomorphism test by mutual surjections (surjective endomorphisms of
/// noetherian modules are bijective, so mutual surjections force an
/// isomorphism). Best effort: the search is randomized and a `false` on
/// wildly non-minimal presentations can be a false negative; tests use
/// small minimalized instances.
pub fn modules_isomorphic(
    a: &PresentedModule,
    b: &PresentedModule,
    seed: u64,
) -> bool {
    let am = a.minimalize();
    let bm = b.minimalize();
    if am.is_zero_module() || bm.is_zero_module() {
        return am.is_zero_module() && bm.is_zero_module();
    }
    let da = {
        let mut d = am.gen_degrees().to_vec();
        d.sort();
        d
    };
    let db = {
        let mut d = bm.gen_degrees().to_vec();
        d.sort();
        d
    };
    if da != db {
        return false;
    }
    let lo = *da.first().unwrap();
    for d in lo..=lo + 6 {
        if am.graded_dim(d) != bm.graded_dim(d) {
            return false;
        }
    }
    find_surjection(&am, &bm, seed, 24).is_some()
        && find_surjection(&bm, &am, seed.wrapping_add(1), 24).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;
    use crate::algebra::parse::parse_polynomial;

    fn ring3() -> Arc<PolyRing> {
        PolyRing::new(
            PrimeField::new(32003).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        )
        .unwrap()
    }

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(PrimeField::new(32003).unwrap(), vec!["x".into(), "y".into()]).unwrap()
    }

    fn pp(r: &PolyRing, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn annihilator_of_cyclic_quotient() {
        // R = P/(xy); the ideal (y)R presented as cyclic with relation x
        let r = ring2();
        let i = Ideal::new(r.clone(), vec![pp(&r, "x*y")]).unwrap();
        let ctx = RingCtx::new(r.clone(), i).unwrap();
        let m = PresentedModule::over_ring(ctx, vec![1], vec![vec![pp(&r, "x")]]).unwrap();
        let ann = m.annihilator();
        // ann = (x) since (x) + (xy) = (x)
        assert!(ann.contains(&pp(&r, "x")));
        assert!(!ann.contains(&pp(&r, "y")));
        assert_eq!(m.krull_dim(), 1);
    }

    #[test]
    fn annihilator_of_free_module_is_quotient() {
        let r = ring2();
        let i = Ideal::new(r.clone(), vec![pp(&r, "x*y")]).unwrap();
        let ctx = RingCtx::new(r.clone(), i.clone()).unwrap();
        let m = PresentedModule::cyclic_free(ctx, 0);
        let ann = m.annihilator();
        assert!(ann.equals(&i));
        assert_eq!(m.krull_dim(), 1);
    }

    #[test]
    fn zero_module_edge_cases() {
        let r = ring2();
        let ctx = RingCtx::polynomial_only(r.clone());
        let z = PresentedModule::zero(ctx.clone());
        assert!(z.is_zero_module());
        assert_eq!(z.krull_dim(), -1);
        // P/(1)-style zero module with a generator
        let m = PresentedModule::from_parts(ctx, vec![0], vec![vec![r.one()]]).unwrap();
        assert!(m.is_zero_module());
        assert_eq!(m.krull_dim(), -1);
        let min = m.minimalize();
        assert_eq!(min.ngens(), 0);
    }

    #[test]
    fn krull_dims_of_standard_examples() {
        let r = ring3();
        let ctx = RingCtx::polynomial_only(r.clone());
        // P/(xy, xz): dimension 2
        let m = PresentedModule::from_parts(
            ctx.clone(),
            vec![0],
            vec![vec![pp(&r, "x*y")], vec![pp(&r, "x*z")]],
        )
        .unwrap();
        assert_eq!(m.krull_dim(), 2);
        // residue field k: dimension 0
        let k = PresentedModule::from_parts(
            ctx,
            vec![0],
            vec![vec![pp(&r, "x")], vec![pp(&r, "y")], vec![pp(&r, "z")]],
        )
        .unwrap();
        assert_eq!(k.krull_dim(), 0);
    }

    #[test]
    fn graded_dims_match_hand_counts() {
        let r = ring2();
        let ctx = RingCtx::polynomial_only(r.clone());
        // P itself
        let p = PresentedModule::cyclic_free(ctx.clone(), 0);
        assert_eq!(p.graded_dim(0), 1);
        assert_eq!(p.graded_dim(3), 4);
        // P/(xy): dims 1, 2, 2, 2, ...
        let m = PresentedModule::from_parts(ctx.clone(), vec![0], vec![vec![pp(&r, "x*y")]])
            .unwrap();
        assert_eq!(m.graded_dim(0), 1);
        assert_eq!(m.graded_dim(1), 2);
        assert_eq!(m.graded_dim(2), 2);
        assert_eq!(m.graded_dim(5), 2);
        // ideal (x, y) with generators in degree 1 and syzygy (y, -x)
        let i = PresentedModule::from_parts(
            ctx,
            vec![1, 1],
            vec![vec![pp(&r, "y"), pp(&r, "-x")]],
        )
        .unwrap();
        assert_eq!(i.graded_dim(0), 0);
        assert_eq!(i.graded_dim(1), 2);
        assert_eq!(i.graded_dim(2), 3);
    }

    #[test]
    fn minimalize_strips_unit_relations() {
        let r = ring2();
        let ctx = RingCtx::polynomial_only(r.clone());
        // two generators with e1 = x e0 forced by a unit entry
        let m = PresentedModule::from_parts(
            ctx,
            vec![0, 1],
            vec![vec![pp(&r, "x"), r.constant(-1)], vec![pp(&r, "x*y"), r.zero()]],
        )
        .unwrap();
        let min = m.minimalize();
        assert_eq!(min.ngens(), 1);
        assert_eq!(min.gen_degrees(), &[0]);
        // the surviving relation is x*y - y*x = 0 after substitution...
        // substitution gives column [xy] only if independent; check module
        // is P via graded dims? Here e1 = x e0, relation xy e0 remains.
        assert_eq!(min.graded_dim(2), m.graded_dim(2));
        assert_eq!(min.graded_dim(3), m.graded_dim(3));
    }

    #[test]
    fn intersection_and_colon() {
        let r = ring2();
        let a = vec![pp(&r, "x")];
        let b = vec![pp(&r, "y")];
        let meet = intersect_ideal_gens(&r, &a, &b);
        assert_eq!(meet, vec![pp(&r, "x*y")]);
    }

    #[test]
    fn iso_test_distinguishes_twists() {
        let r = ring2();
        let ctx = RingCtx::polynomial_only(r.clone());
        let p0 = PresentedModule::cyclic_free(ctx.clone(), 0);
        let p1 = PresentedModule::cyclic_free(ctx.clone(), 1);
        assert!(modules_isomorphic(&p0, &p0, 1));
        assert!(!modules_isomorphic(&p0, &p1, 1));
        // P/(x) vs P/(y): isomorphic as modules? No: different annihilators
        // but both cyclic with a degree-1 relation; they are NOT isomorphic
        // as graded P-modules since no unit of P maps one to the other...
        // they actually are non-isomorphic; the Hom space solve sees it.
        let mx = PresentedModule::from_parts(ctx.clone(), vec![0], vec![vec![pp(&r, "x")]])
            .unwrap();
        let my = PresentedModule::from_parts(ctx, vec![0], vec![vec![pp(&r, "y")]]).unwrap();
        assert!(modules_isomorphic(&mx, &mx, 1));
        assert!(!modules_isomorphic(&mx, &my, 1));
    }
}
