//! Syzygy complexes: `Σ(G) = cone(φ)[-2]` with `φ = s m_2^G` on
//! `Ā[1] ⊗ G_0`, its induced A∞-module structure, and iteration.
//!
//! In degree `j` the complex is `(A_j ⊗ G_0) ⊕ G_{j+1}`, the first summand
//! listed first and absent for `j = 0`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ainf::tensor::{apply_alg, apply_mod, keys_of, single, Key};
use crate::ainf::{verify_ainf_module, AInfAlg, AInfMod, Pair, VerifyReport};
use crate::exactla::KMatrix;
use crate::gradedring::{GradedFree, GradedMap, Poly, PolyMatrix, RingCtx, RingMode};
use crate::resolve::{GradedComplex, Presentation};
use crate::Error;

/// Where the entries of a structure block come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Only from the `m_n` of `A`.
    AlgebraDerived,
    /// Only from the module structure at the bottom of the iteration.
    ModuleDerived,
    Mixed,
}

/// A syzygy complex with its structure.
#[derive(Clone, Debug)]
pub struct SyzygyData {
    /// Number of syzygy steps taken from the original `G`.
    pub level: usize,
    pub structure: AInfMod,
    /// Entries of the structure that trace back to the original `m^G`.
    pub module_part: BTreeMap<(Vec<usize>, usize), PolyMatrix>,
    pub provenance: BTreeMap<(Vec<usize>, usize), Provenance>,
    /// `G_0` of every stage before this one, starting with the original.
    pub bases: Vec<GradedFree>,
    /// Identity checks of the intermediate stages.
    pub stage_reports: Vec<VerifyReport>,
}

impl SyzygyData {
    pub fn complex(&self) -> &GradedComplex {
        self.structure.complex()
    }

    /// True when every stored `n >= 2` block is algebra-derived.
    pub fn all_algebra_derived(&self) -> bool {
        self.provenance
            .values()
            .all(|p| *p == Provenance::AlgebraDerived)
    }
}

fn layout(a: &GradedComplex, g: &GradedComplex, j: usize) -> (usize, usize) {
    let apart = if j == 0 { 0 } else { a.rank(j) * g.rank(0) };
    (apart, g.rank(j + 1))
}

fn syzygy_free(a: &GradedComplex, g: &GradedComplex, j: usize) -> GradedFree {
    let mut degs = Vec::new();
    if j >= 1 {
        for &da in a.module(j).degrees() {
            for &dg in g.module(0).degrees() {
                degs.push(da + dg);
            }
        }
    }
    degs.extend_from_slice(g.module(j + 1).degrees());
    GradedFree::new(degs)
}

fn words_bounded(n: usize, max: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(n: usize, max: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 1..=max.min(left) {
            cur.push(i);
            rec(n, max, left - i, cur, out);
            cur.pop();
        }
    }
    rec(n, max, bound, &mut Vec::new(), &mut out);
    out
}

/// The block `m^syz_n` on `w ⊗ S_g`, `n = w.len() + 1`. With
/// `with_algebra` unset only the module rows are produced.
fn structure_block(
    ctx: &RingCtx,
    alg: &AInfAlg,
    prev: &AInfMod,
    s: &GradedComplex,
    w: &[usize],
    g: usize,
    with_algebra: bool,
) -> PolyMatrix {
    let f = ctx.field();
    let a = alg.complex();
    let gc = prev.complex();
    let pair = Pair { alg, module: prev };
    let n = w.len() + 1;
    let j = w.iter().sum::<usize>() + g + n - 2;
    let shifted: usize = w.iter().map(|i| i + 1).sum();
    let odd = shifted % 2 == 1;
    let (apart_j, _) = layout(a, gc, j);
    let g0 = gc.rank(0);
    let (apart_g, gpart_g) = layout(a, gc, g);
    let tuples = keys_of(a, w, None);
    let mut m = PolyMatrix::zeros(s.rank(j), tuples.len() * (apart_g + gpart_g));
    let sign = |p: &Poly, negate: bool| if negate ^ odd { p.neg(f) } else { p.clone() };
    for (ti, t) in tuples.iter().enumerate() {
        for b in 0..apart_g + gpart_g {
            let col = ti * (apart_g + gpart_g) + b;
            if b < apart_g {
                let (ai, gi) = (b / g0, b % g0);
                let mut slots = t.alg.clone();
                slots.push((g, ai));
                if with_algebra {
                    let key = Key {
                        alg: slots.clone(),
                        module: None,
                    };
                    for (k, p) in apply_alg(&pair, ctx, &single(key), 0, n) {
                        let (jj, r) = k.alg[0];
                        debug_assert_eq!(jj, j);
                        m.add_to(r * g0 + gi, col, &sign(&p, true), ctx);
                    }
                }
                let key = Key {
                    alg: slots,
                    module: Some((0, gi)),
                };
                for (k, p) in apply_mod(&pair, ctx, &single(key), 0) {
                    let (_, r) = k.module.expect("module slot");
                    m.add_to(apart_j + r, col, &sign(&p, false), ctx);
                }
            } else {
                let h = b - apart_g;
                // Boundary term x ⊗ h ↦ x ⊗ d(h) for h in degree 0, from
                // cancelling the unit summand 1 ⊗ G_0 against G_0.
                if with_algebra && n == 2 && g == 0 {
                    let (_, ai) = t.alg[0];
                    for (gi, p) in gc.d(1).map(|d| d.matrix.column(h)).unwrap_or(&[]) {
                        m.add_to(ai * g0 + gi, col, p, ctx);
                    }
                }
                let key = Key {
                    alg: t.alg.clone(),
                    module: Some((g + 1, h)),
                };
                for (k, p) in apply_mod(&pair, ctx, &single(key), 0) {
                    let (_, r) = k.module.expect("module slot");
                    m.add_to(apart_j + r, col, &sign(&p, true), ctx);
                }
            }
        }
    }
    m
}

fn syzygy_step(
    alg: &AInfAlg,
    prev: &AInfMod,
    prev_module_part: &BTreeMap<(Vec<usize>, usize), PolyMatrix>,
) -> Result<(AInfMod, BTreeMap<(Vec<usize>, usize), PolyMatrix>), Error> {
    let ctx = alg.ctx().clone();
    let f = ctx.field();
    let a = alg.complex();
    let gc = prev.complex();
    let len = a.length().max(gc.length().saturating_sub(1));
    let frees: Vec<GradedFree> = (0..=len).map(|j| syzygy_free(a, gc, j)).collect();
    let mut diffs = Vec::new();
    for j in 1..=len {
        let (aj, _) = layout(a, gc, j);
        let (ajm, _) = layout(a, gc, j - 1);
        let g0 = gc.rank(0);
        let mut m = PolyMatrix::zeros(frees[j - 1].rank(), frees[j].rank());
        // -m_1 ⊗ 1 = d ⊗ 1 on A_j ⊗ G_0, j >= 2
        if j >= 2 {
            if let Some(d) = a.d(j) {
                for (r, c, p) in d.matrix.entries() {
                    for gi in 0..g0 {
                        m.set(r * g0 + gi, c * g0 + gi, p.clone());
                    }
                }
            }
        }
        // m_2^G on A_j ⊗ G_0 -> G_j
        if let Some(block) = prev.component(&[j], 0) {
            for (r, c, p) in block.entries() {
                m.set(ajm + r, c, p.clone());
            }
        }
        // -m_1^G on G_{j+1}
        if let Some(d) = gc.d(j + 1) {
            for (r, c, p) in d.matrix.entries() {
                m.set(ajm + r, aj + c, p.neg(f));
            }
        }
        diffs.push(GradedMap::new(frees[j].clone(), frees[j - 1].clone(), m)?);
    }
    let s = GradedComplex::new(frees[0].clone(), diffs, RingMode::Q)?;
    for i in 1..s.length() {
        let dd = s
            .d(i)
            .unwrap()
            .matrix
            .mul(&s.d(i + 1).unwrap().matrix, &ctx);
        if !dd.is_zero() {
            return Err(Error::Internal(format!(
                "φ is not a chain map: d_{i} d_{} != 0 on the cone",
                i + 1
            )));
        }
    }

    let prev_mod_only = AInfMod::from_components(&ctx, gc.clone(), prev_module_part.clone());
    let slen = s.length();
    let mut comps = BTreeMap::new();
    let mut module_part = BTreeMap::new();
    for n in 2..=(slen + 3) / 2 + 1 {
        for g in 0..=slen {
            let Some(bound) = (slen + 2).checked_sub(g + n) else {
                continue;
            };
            for w in words_bounded(n - 1, a.length(), bound) {
                let full = structure_block(&ctx, alg, prev, &s, &w, g, true);
                if !full.is_zero() {
                    comps.insert((w.clone(), g), full);
                }
                let modp = structure_block(&ctx, alg, &prev_mod_only, &s, &w, g, false);
                if !modp.is_zero() {
                    module_part.insert((w, g), modp);
                }
            }
        }
    }
    Ok((AInfMod::from_components(&ctx, s, comps), module_part))
}

fn provenance(
    comps: &BTreeMap<(Vec<usize>, usize), PolyMatrix>,
    module_part: &BTreeMap<(Vec<usize>, usize), PolyMatrix>,
) -> BTreeMap<(Vec<usize>, usize), Provenance> {
    comps
        .iter()
        .map(|(k, m)| {
            let tag = match module_part.get(k) {
                None => Provenance::AlgebraDerived,
                Some(mp) if mp == m => Provenance::ModuleDerived,
                Some(_) => Provenance::Mixed,
            };
            (k.clone(), tag)
        })
        .collect()
}

/// The first syzygy complex with its structure.
pub fn syzygy_data(alg: &AInfAlg, module: &AInfMod) -> Result<SyzygyData, Error> {
    iterate_syzygy(alg, module, 1)
}

/// `Σ^n(G)`, reverifying the structure at every stage.
pub fn iterate_syzygy(alg: &AInfAlg, module: &AInfMod, n: usize) -> Result<SyzygyData, Error> {
    if n == 0 {
        return Err(Error::Internal(String::from(
            "syzygy level must be at least 1",
        )));
    }
    let mut cur = module.clone();
    let mut part = module.components().clone();
    let mut bases = Vec::new();
    let mut reports = Vec::new();
    for _ in 0..n {
        bases.push(cur.complex().module(0));
        let (next, next_part) = syzygy_step(alg, &cur, &part)?;
        reports.push(verify_ainf_module(alg, &next));
        cur = next;
        part = next_part;
    }
    let provenance = provenance(cur.components(), &part);
    Ok(SyzygyData {
        level: n,
        structure: cur,
        module_part: part,
        provenance,
        bases,
        stage_reports: reports,
    })
}

/// Outcome of [`verify_syzygy`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyReport {
    pub d_squared_failure: Option<usize>,
    /// `(d, dim H_0, expected)`.
    pub h0_failure: Option<(u32, usize, usize)>,
    pub exactness_failure: Option<(usize, u32)>,
    pub structure: VerifyReport,
    pub failed_stage: Option<usize>,
    pub stage_failure: Option<String>,
}

impl SyzygyReport {
    pub fn passed(&self) -> bool {
        self.d_squared_failure.is_none()
            && self.h0_failure.is_none()
            && self.exactness_failure.is_none()
            && self.structure.passed()
            && self.failed_stage.is_none()
    }

    pub fn describe(&self) -> String {
        if let Some(i) = self.d_squared_failure {
            return format!("d_{i} d_{} != 0", i + 1);
        }
        if let Some((d, h, e)) = self.h0_failure {
            return format!("H_0 has dimension {h} in degree {d}, the syzygy has {e}");
        }
        if let Some((i, d)) = self.exactness_failure {
            return format!("H_{i} is nonzero in internal degree {d}");
        }
        if let Some(s) = self.failed_stage {
            return format!(
                "stage {s} structure fails: {}",
                self.stage_failure.clone().unwrap_or_default()
            );
        }
        self.structure.describe()
    }
}

/// `dim_k` of the `level`-th syzygy of `M` in degree `d`, computed directly
/// from `dim M_d` and the ranks of the intermediate `G_0`'s.
pub fn syzygy_dimension(
    ctx: &RingCtx,
    module: &Presentation,
    bases: &[GradedFree],
    d: u32,
) -> usize {
    let r = ctx.r();
    let mut h = module.hilbert(ctx, d) as i64;
    for b in bases {
        h = b.dim(&r, d) as i64 - h;
    }
    h.max(0) as usize
}

/// Checks that `complex` is a complex, exact in positive degrees and with
/// `H_0` of the dimensions given by `expected_h0`, through `int_cap`.
pub fn check_resolution_of(
    ctx: &RingCtx,
    c: &GradedComplex,
    int_cap: u32,
    expected_h0: impl Fn(u32) -> usize,
) -> (
    Option<usize>,
    Option<(u32, usize, usize)>,
    Option<(usize, u32)>,
) {
    let q = ctx.q();
    let mut dsq = None;
    for i in 1..c.length() {
        if !c
            .d(i)
            .unwrap()
            .matrix
            .mul(&c.d(i + 1).unwrap().matrix, &q)
            .is_zero()
        {
            dsq = Some(i);
            break;
        }
    }
    let mut h0f = None;
    let mut exf = None;
    for d in 0..=int_cap {
        let ranks: Vec<usize> = (0..=c.length() + 1)
            .map(|i| c.d(i).map_or(0, |m| m.component_matrix(&q, d).rank()))
            .collect();
        let h0 = c.module(0).dim(&q, d) - ranks[1];
        let e = expected_h0(d);
        if h0 != e && h0f.is_none() {
            h0f = Some((d, h0, e));
        }
        for i in 1..=c.length() {
            if c.module(i).dim(&q, d) - ranks[i] != ranks[i + 1] && exf.is_none() {
                exf = Some((i, d));
            }
        }
    }
    (dsq, h0f, exf)
}

pub fn verify_syzygy(
    alg: &AInfAlg,
    s: &SyzygyData,
    module: &Presentation,
    int_cap: u32,
) -> SyzygyReport {
    let ctx = alg.ctx();
    let (dsq, h0f, exf) = check_resolution_of(ctx, s.complex(), int_cap, |d| {
        syzygy_dimension(ctx, module, &s.bases, d)
    });
    SyzygyReport {
        d_squared_failure: dsq,
        h0_failure: h0f,
        exactness_failure: exf,
        structure: verify_ainf_module(alg, &s.structure),
        failed_stage: s
            .stage_reports
            .iter()
            .position(|r| !r.passed())
            .map(|i| i + 1),
        stage_failure: s
            .stage_reports
            .iter()
            .find(|r| !r.passed())
            .map(|r| r.describe()),
    }
}

/// The constant part of a block, for minimality checks.
pub fn constant_block(ctx: &RingCtx, m: &PolyMatrix) -> KMatrix {
    m.constant_part(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{build_ainf_algebra, build_ainf_module, module_minimality_witness};
    use crate::exactla::Fp;
    use crate::fixtures::pfaffian;
    use crate::resolve::minimal_resolution;
    use alloc::vec;

    #[test]
    fn pfaffian_shape() {
        let fx = pfaffian(32003).unwrap();
        let s = syzygy_data(&fx.alg, &fx.module).unwrap();
        let c = s.complex();
        // K_1 <- A_1 ⊗ K_0 ⊕ K_2 <- A_2 ⊗ K_0 ⊕ K_3 <- A_3 ⊗ K_0
        let ranks: Vec<usize> = (0..=c.length()).map(|i| c.rank(i)).collect();
        assert_eq!(ranks, vec![3, 8, 6, 1]);
        let rep = verify_syzygy(&fx.alg, &s, &Presentation::residue_field(&fx.ctx), 9);
        assert!(rep.passed(), "{}", rep.describe());
    }

    #[test]
    fn pfaffian_iterates_to_algebra_derived() {
        let fx = pfaffian(32003).unwrap();
        let s = iterate_syzygy(&fx.alg, &fx.module, 4).unwrap();
        let rep = verify_syzygy(&fx.alg, &s, &Presentation::residue_field(&fx.ctx), 10);
        assert!(rep.passed(), "{}", rep.describe());
        assert!(s.all_algebra_derived());
        let s1 = syzygy_data(&fx.alg, &fx.module).unwrap();
        assert!(!s1.all_algebra_derived());
    }

    #[test]
    fn hypersurface_blocks_are_module_derived() {
        let ctx = RingCtx::parse(Fp::new(101), &["x", "y"], &["x^2+y^2"]).unwrap();
        let a = minimal_resolution(&ctx.q(), &Presentation::ring(), 5, 8)
            .unwrap()
            .complex;
        let k = minimal_resolution(&ctx.q(), &Presentation::residue_field(&ctx), 5, 8)
            .unwrap()
            .complex;
        let alg = build_ainf_algebra(&ctx, &a).unwrap();
        let m = build_ainf_module(&alg, &k).unwrap();
        for level in 1..=2 {
            let s = iterate_syzygy(&alg, &m, level).unwrap();
            let rep = verify_syzygy(&alg, &s, &Presentation::residue_field(&ctx), 8);
            assert!(rep.passed(), "level {level}: {}", rep.describe());
            // m_n of A vanishes, so only the degree-0 boundary term of m_2
            // is not module-derived
            for ((w, g), p) in &s.provenance {
                let boundary = (w.as_slice(), *g) == (&[1][..], 0);
                assert_eq!(*p == Provenance::ModuleDerived, !boundary, "{w:?} {g}");
            }
            assert!(module_minimality_witness(&s.structure).is_none());
        }
    }

    #[test]
    fn unshifted_cone_fails_h0() {
        let fx = pfaffian(32003).unwrap();
        let s = syzygy_data(&fx.alg, &fx.module).unwrap();
        let c = s.complex();
        let zero = GradedFree::zero();
        let mut diffs = vec![
            GradedMap::zero(zero.clone(), zero.clone()),
            GradedMap::zero(c.module(0), zero),
        ];
        diffs.extend(c.diffs().iter().cloned());
        let shifted = GradedComplex::new(GradedFree::zero(), diffs, RingMode::Q).unwrap();
        let (_, h0, _) = check_resolution_of(&fx.ctx, &shifted, 6, |d| {
            syzygy_dimension(&fx.ctx, &Presentation::residue_field(&fx.ctx), &s.bases, d)
        });
        assert!(h0.is_some());
    }
}
