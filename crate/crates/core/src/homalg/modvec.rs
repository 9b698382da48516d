//! Groebner machinery for submodules of free modules P^c: module normal
//! forms, syzygies via elimination orders, and division with certificates.
//!
//! A vector is a `Vec<Polynomial>` of fixed length (one entry per free
//! component). The module order is term-over-position grevlex, optionally
//! split into an elimination block: components below the split dominate
//! all components above it, which is what kernel computations use.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::{PolyRing, Polynomial};
use crate::{KResult, KernelError};

pub type ModVec = Vec<Polynomial>;

#[derive(Debug, Clone, Copy, Default)]
pub struct ModOrder {
    /// Components `< elim_split` form the dominant block.
    pub elim_split: Option<usize>,
}

impl ModOrder {
    fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        if let Some(s) = self.elim_split {
            let ba = (a.0 >= s) as u8;
            let bb = (b.0 >= s) as u8;
            if ba != bb {
                // block 0 dominates
                return bb.cmp(&ba);
            }
        }
        match a.1.cmp_grevlex(b.1) {
            Ordering::Equal => b.0.cmp(&a.0),
            ord => ord,
        }
    }
}

pub fn vec_is_zero(v: &[Polynomial]) -> bool {
    v.iter().all(|p| p.is_zero())
}

pub fn vec_add(ring: &PolyRing, a: &[Polynomial], b: &[Polynomial]) -> ModVec {
    a.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect()
}

pub fn vec_sub(ring: &PolyRing, a: &[Polynomial], b: &[Polynomial]) -> ModVec {
    a.iter().zip(b).map(|(x, y)| ring.sub(x, y)).collect()
}

pub fn vec_scale(ring: &PolyRing, c: u64, a: &[Polynomial]) -> ModVec {
    a.iter().map(|x| ring.scale(c, x)).collect()
}

pub fn vec_mul_term(ring: &PolyRing, a: &[Polynomial], m: &Monomial, c: u64) -> ModVec {
    a.iter().map(|x| ring.mul_term(x, m, c)).collect()
}

pub fn vec_mul_poly(ring: &PolyRing, a: &[Polynomial], f: &Polynomial) -> ModVec {
    a.iter().map(|x| ring.mul(x, f)).collect()
}

/// Leading term of a vector under the order: (component, monomial, coeff).
pub fn leading_term<'a>(
    order: &ModOrder,
    v: &'a [Polynomial],
) -> Option<(usize, &'a Monomial, u64)> {
    let mut best: Option<(usize, &Monomial, u64)> = None;
    for (c, p) in v.iter().enumerate() {
        if let Some((m, coef)) = p.leading() {
            best = match best {
                None => Some((c, m, coef)),
                Some(cur) => {
                    if order.cmp((c, m), (cur.0, cur.1)) == Ordering::Greater {
                        Some((c, m, coef))
                    } else {
                        Some(cur)
                    }
                }
            };
        }
    }
    best
}

/// Scales a vector so its first nonzero coordinate is monic. Canonical
/// representative used for deterministic output; the scaling is by a unit
/// so the generated module is unchanged.
pub fn vec_canonical(ring: &PolyRing, v: &[Polynomial]) -> ModVec {
    for p in v {
        if let Some((_, c)) = p.leading() {
            return vec_scale(ring, ring.field().inv(c), v);
        }
    }
    v.to_vec()
}

/// Internal degree of a homogeneous vector relative to component degrees:
/// entry `r` must be homogeneous of `deg - comp_degrees[r]`. Returns
/// `None` for the zero vector; errors on inhomogeneous data.
pub fn vec_degree(
    v: &[Polynomial],
    comp_degrees: &[i64],
) -> KResult<Option<i64>> {
    let mut deg: Option<i64> = None;
    for (r, p) in v.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let d = p.homogeneous_degree().ok_or_else(|| {
            KernelError::unsupported("inhomogeneous entry in graded vector")
        })?;
        let total = d + comp_degrees[r];
        match deg {
            None => deg = Some(total),
            Some(t) if t == total => {}
            Some(t) => {
                return Err(KernelError::unsupported(format!(
                    "vector mixes degrees {t} and {total}"
                )))
            }
        }
    }
    Ok(deg)
}

struct TrackedElem {
    v: ModVec,
    /// expression of `v` in the original generators
    expr: Vec<Polynomial>,
}

/// A module Groebner basis that remembers how each basis element is
/// expressed in the input generators; supports membership with
/// certificates (`express`).
pub struct TrackedGb {
    ring_nvars: usize,
    order: ModOrder,
    pub ncomp: usize,
    pub elems: Vec<ModVec>,
    exprs: Vec<Vec<Polynomial>>,
}

/// Divides `v` by `basis` under `order`. Returns the normal form and, when
/// `quotients` is given, accumulates the quotient against each basis
/// element so that `v = sum_i q_i basis_i + nf`.
fn reduce_vec(
    ring: &PolyRing,
    order: &ModOrder,
    v: &[Polynomial],
    basis: &[ModVec],
    mut quotients: Option<&mut Vec<Polynomial>>,
) -> ModVec {
    let ncomp = v.len();
    let mut rest = v.to_vec();
    let mut nf = vec![ring.zero(); ncomp];
    'outer: while let Some((c, m, coef)) = leading_term(order, &rest).map(|(c, m, k)| (c, m.clone(), k)) {
        for (gi, g) in basis.iter().enumerate() {
            if let Some((gc, gm, gcoef)) = leading_term(order, g) {
                if gc == c && gm.divides(&m) {
                    let q = gm.quotient_into(&m);
                    let k = ring.field().div(coef, gcoef);
                    rest = vec_sub(ring, &rest, &vec_mul_term(ring, g, &q, k));
                    if let Some(qs) = quotients.as_deref_mut() {
                        qs[gi] = ring.add(&qs[gi], &ring.monomial(q, k));
                    }
                    continue 'outer;
                }
            }
        }
        // irreducible leading term: shift it into the normal form
        let t = ring.monomial(m, coef);
        nf[c] = ring.add(&nf[c], &t);
        rest[c] = ring.sub(&rest[c], &t);
    }
    nf
}

/// Buchberger for submodules of P^ncomp. S-pairs are formed only between
/// elements with the same leading component; the chain criterion applies
/// as in the ring case, while the coprime criterion is sound only for
/// ncomp == 1 and is restricted accordingly.
fn buchberger_module(
    ring: &PolyRing,
    order: ModOrder,
    ncomp: usize,
    gens: &[ModVec],
    track: bool,
) -> (Vec<ModVec>, Vec<Vec<Polynomial>>) {
    let ngens = gens.len();
    let mut basis: Vec<TrackedElem> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        debug_assert_eq!(g.len(), ncomp);
        if vec_is_zero(g) {
            continue;
        }
        let (_, _, c) = leading_term(&order, g).unwrap();
        let inv = ring.field().inv(c);
        let mut expr = Vec::new();
        if track {
            expr = vec![ring.zero(); ngens];
            expr[i] = ring.constant(inv as i64);
        }
        basis.push(TrackedElem {
            v: vec_scale(ring, inv, g),
            expr,
        });
    }

    let lead = |e: &TrackedElem| -> (usize, Monomial) {
        let (c, m, _) = leading_term(&order, &e.v).unwrap();
        (c, m.clone())
    };
    let pair_key = |basis: &[TrackedElem], i: usize, j: usize| -> (i64, usize, usize) {
        let (_, mi) = lead(&basis[i]);
        let (_, mj) = lead(&basis[j]);
        (mi.lcm(&mj).degree(), i, j)
    };

    let mut pending: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
    let push_pairs = |basis: &[TrackedElem], pending: &mut BTreeSet<(i64, usize, usize)>, n: usize| {
        let (cn, _) = lead(&basis[n]);
        for t in 0..n {
            let (ct, _) = lead(&basis[t]);
            if ct == cn {
                pending.insert(pair_key(basis, t, n));
            }
        }
    };
    for n in 0..basis.len() {
        push_pairs(&basis, &mut pending, n);
    }

    while let Some(&(_, i, j)) = pending.iter().next() {
        pending.remove(&pair_key(&basis, i, j));
        let (ci, mi) = lead(&basis[i]);
        let (cj, mj) = lead(&basis[j]);
        debug_assert_eq!(ci, cj);
        if ncomp == 1 && order.elim_split.is_none() && mi.coprime(&mj) {
            continue;
        }
        let lij = mi.lcm(&mj);
        let mut chained = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            let (ck, mk) = lead(&basis[k]);
            if ck == ci && mk.divides(&lij) {
                let pik = pair_key(&basis, i.min(k), i.max(k));
                let pjk = pair_key(&basis, j.min(k), j.max(k));
                if !pending.contains(&pik) && !pending.contains(&pjk) {
                    chained = true;
                    break;
                }
            }
        }
        if chained {
            continue;
        }
        // both elements are monic
        let ui = mi.quotient_into(&lij);
        let uj = mj.quotient_into(&lij);
        let s = vec_sub(
            ring,
            &vec_mul_term(ring, &basis[i].v, &ui, 1),
            &vec_mul_term(ring, &basis[j].v, &uj, 1),
        );
        let bvecs: Vec<ModVec> = basis.iter().map(|e| e.v.clone()).collect();
        let mut q = vec![ring.zero(); bvecs.len()];
        let nf = reduce_vec(ring, &order, &s, &bvecs, if track { Some(&mut q) } else { None });
        if vec_is_zero(&nf) {
            continue;
        }
        let (_, _, lc) = leading_term(&order, &nf).unwrap();
        let inv = ring.field().inv(lc);
        let expr = if track {
            // s = ui*b_i - uj*b_j ; nf = s - sum q_k b_k
            let mut e = vec_sub(
                ring,
                &vec_mul_term(ring, &basis[i].expr, &ui, 1),
                &vec_mul_term(ring, &basis[j].expr, &uj, 1),
            );
            for (k, qk) in q.iter().enumerate() {
                if !qk.is_zero() {
                    e = vec_sub(ring, &e, &vec_mul_poly(ring, &basis[k].expr, qk));
                }
            }
            vec_scale(ring, inv, &e)
        } else {
            Vec::new()
        };
        basis.push(TrackedElem {
            v: vec_scale(ring, inv, &nf),
            expr,
        });
        let n = basis.len() - 1;
        push_pairs(&basis, &mut pending, n);
    }

    // minimalize: drop elements whose leading term is divisible by another
    let leads: Vec<(usize, Monomial)> = basis.iter().map(&lead).collect();
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            if leads[j].0 == leads[i].0
                && leads[j].1.divides(&leads[i].1)
                && (leads[i].1 != leads[j].1 || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let mut kept: Vec<TrackedElem> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(e, _)| e)
        .collect();

    // tail-reduce each element against the others, updating expressions
    for i in 0..kept.len() {
        let others: Vec<ModVec> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, e)| e.v.clone())
            .collect();
        let mut q = vec![ring.zero(); others.len()];
        let nf = reduce_vec(
            ring,
            &order,
            &kept[i].v.clone(),
            &others,
            if track { Some(&mut q) } else { None },
        );
        if track {
            let mut e = kept[i].expr.clone();
            let mut oi = 0;
            for j in 0..kept.len() {
                if j == i {
                    continue;
                }
                if !q[oi].is_zero() {
                    let sub = vec_mul_poly(ring, &kept[j].expr, &q[oi]);
                    e = vec_sub(ring, &e, &sub);
                }
                oi += 1;
            }
            kept[i].expr = e;
        }
        kept[i].v = nf;
    }
    kept.retain(|e| !vec_is_zero(&e.v));
    // canonical order: ascending by leading term
    kept.sort_by(|a, b| {
        let (ca, ma, _) = leading_term(&order, &a.v).unwrap();
        let (cb, mb, _) = leading_term(&order, &b.v).unwrap();
        order.cmp((ca, &ma), (cb, &mb))
    });
    let exprs = kept.iter().map(|e| e.expr.clone()).collect();
    let elems = kept.into_iter().map(|e| e.v).collect();
    (elems, exprs)
}

/// Groebner basis of the submodule of P^ncomp generated by `gens`.
pub fn module_gb(ring: &PolyRing, ncomp: usize, gens: &[ModVec]) -> Vec<ModVec> {
    let order = ModOrder::default();
    buchberger_module(ring, order, ncomp, gens, false).0
}

/// Tracked variant for membership certificates and lifting.
pub fn module_gb_tracked(ring: &PolyRing, ncomp: usize, gens: &[ModVec]) -> TrackedGb {
    let order = ModOrder::default();
    let (elems, exprs) = buchberger_module(ring, order, ncomp, gens, true);
    TrackedGb {
        ring_nvars: ring.nvars(),
        order,
        ncomp,
        elems,
        exprs,
    }
}

/// Normal form of `v` against a precomputed module Groebner basis.
pub fn normal_form_vec(ring: &PolyRing, gb: &[ModVec], v: &[Polynomial]) -> ModVec {
    reduce_vec(ring, &ModOrder::default(), v, gb, None)
}

impl TrackedGb {
    pub fn normal_form(&self, ring: &PolyRing, v: &[Polynomial]) -> ModVec {
        debug_assert_eq!(ring.nvars(), self.ring_nvars);
        reduce_vec(ring, &self.order, v, &self.elems, None)
    }

    pub fn contains(&self, ring: &PolyRing, v: &[Polynomial]) -> bool {
        vec_is_zero(&self.normal_form(ring, v))
    }

    /// Writes `v` as a combination of the ORIGINAL generators, if it lies
    /// in the submodule. The certificate `x` satisfies
    /// `v = sum_j x_j gen_j`.
    pub fn express(&self, ring: &PolyRing, v: &[Polynomial]) -> Option<Vec<Polynomial>> {
        let mut q = vec![ring.zero(); self.elems.len()];
        let nf = reduce_vec(ring, &self.order, v, &self.elems, Some(&mut q));
        if !vec_is_zero(&nf) {
            return None;
        }
        let ngens = self.exprs.first().map(|e| e.len()).unwrap_or(0);
        let mut x = vec![ring.zero(); ngens];
        for (qi, expr) in q.iter().zip(&self.exprs) {
            if qi.is_zero() {
                continue;
            }
            for (j, ej) in expr.iter().enumerate() {
                if !ej.is_zero() {
                    x[j] = ring.add(&x[j], &ring.mul(qi, ej));
                }
            }
        }
        Some(x)
    }
}

/// Kernel of the map P^ncols -> P^nrows given by `cols` (column j = image
/// of the j-th source generator). Returns generating syzygies, each of
/// length ncols, canonicalized.
///
/// Computed by a Groebner basis of the graph module
/// {(M v, v)} in P^(nrows+ncols) under an elimination order in which the
/// first block dominates; basis elements supported entirely in the
/// certificate block are exactly the kernel generators.
pub fn kernel_of_columns(
    ring: &PolyRing,
    nrows: usize,
    cols: &[ModVec],
) -> Vec<ModVec> {
    if cols.is_empty() {
        return Vec::new();
    }
    let ncols = cols.len();
    let mut aug: Vec<ModVec> = Vec::with_capacity(ncols);
    for (j, col) in cols.iter().enumerate() {
        debug_assert_eq!(col.len(), nrows);
        let mut v = vec![ring.zero(); nrows + ncols];
        v[..nrows].clone_from_slice(col);
        v[nrows + j] = ring.one();
        aug.push(v);
    }
    let order = ModOrder {
        elim_split: Some(nrows),
    };
    let (gb, _) = buchberger_module(ring, order, nrows + ncols, &aug, false);
    let mut out: Vec<ModVec> = gb
        .into_iter()
        .filter(|v| v[..nrows].iter().all(|p| p.is_zero()))
        .map(|v| vec_canonical(ring, &v[nrows..]))
        .collect();
    out.sort_by(|a, b| {
        let order = ModOrder::default();
        let la = leading_term(&order, a).map(|(c, m, _)| (c, m.clone()));
        let lb = leading_term(&order, b).map(|(c, m, _)| (c, m.clone()));
        match (la, lb) {
            (Some((ca, ma)), Some((cb, mb))) => order.cmp((ca, &ma), (cb, &mb)),
            _ => Ordering::Equal,
        }
    });
    out
}

/// Solves `sum_j cols_j x_j = target` over P. Returns one solution or
/// `None` when the target is outside the column span.
pub fn lift_through(
    ring: &PolyRing,
    nrows: usize,
    cols: &[ModVec],
    target: &[Polynomial],
) -> Option<Vec<Polynomial>> {
    debug_assert_eq!(target.len(), nrows);
    if vec_is_zero(target) {
        return Some(vec![ring.zero(); cols.len()]);
    }
    let gb = module_gb_tracked(ring, nrows, cols);
    gb.express(ring, target)
}
