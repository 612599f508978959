//! A∞-algebra structures on a resolution `A` of `R` and A∞ `A`-module
//! structures on a resolution `G` of `M`, all over `Q`.
//!
//! Everything is stored in the shifted convention: an element of `A_i` has
//! degree `i + 1` in `Ā[1]`, every `m_n` has degree `-1`, and `m_n` on the
//! word `(i_1, ..., i_n)` lands in `A_J` with `J = Σ i_t + n - 2`. On a
//! module word `(i_1, ..., i_{n-1}; g)` the target is
//! `G_J`, `J = Σ i_t + g + n - 2`.
//!
//! The curvature is built from `d_1` viewed as the degree `-2` piece of the
//! shifted differential `d^{A[1]} = -d^A`; so on `A_1 ⊗ A_1` the right-hand
//! side of the second identity is `x ⊗ y ↦ -d_1(x) y + x d_1(y)`, and for
//! modules `x ⊗ g ↦ -d_1(x) g`.

pub mod tensor;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactla::KMatrix;
use crate::gradedring::{GradedFree, Poly, PolyMatrix, RingCtx};
use crate::resolve::GradedComplex;
use crate::Error;
use tensor::{
    add_elem, add_term, alg_target, apply_alg, apply_mod, keys_of, mod_target, single,
    tensor_differential, Elem, Key, StructureMaps,
};

/// An A∞-algebra structure on `A`.
#[derive(Clone, Debug)]
pub struct AInfAlg {
    ctx: RingCtx,
    a: GradedComplex,
    /// `m_1 = -d_i` on `A_i`, `i >= 2`.
    m1: BTreeMap<usize, PolyMatrix>,
    comps: BTreeMap<Vec<usize>, PolyMatrix>,
}

/// An A∞ `A`-module structure on `G`.
#[derive(Clone, Debug)]
pub struct AInfMod {
    g: GradedComplex,
    /// `m_1^G = d_g` on `G_g`, `g >= 1`.
    m1: BTreeMap<usize, PolyMatrix>,
    comps: BTreeMap<(Vec<usize>, usize), PolyMatrix>,
}

/// Algebra and module together, for evaluating mixed expressions.
#[derive(Clone, Copy)]
pub struct Pair<'a> {
    pub alg: &'a AInfAlg,
    pub module: &'a AInfMod,
}

impl StructureMaps for AInfAlg {
    fn a(&self) -> &GradedComplex {
        &self.a
    }
    fn g(&self) -> Option<&GradedComplex> {
        None
    }
    fn alg_block(&self, word: &[usize]) -> Option<&PolyMatrix> {
        if word.len() == 1 {
            self.m1.get(&word[0])
        } else {
            self.comps.get(word)
        }
    }
    fn mod_block(&self, _: &[usize], _: usize) -> Option<&PolyMatrix> {
        None
    }
}

impl StructureMaps for Pair<'_> {
    fn a(&self) -> &GradedComplex {
        &self.alg.a
    }
    fn g(&self) -> Option<&GradedComplex> {
        Some(&self.module.g)
    }
    fn alg_block(&self, word: &[usize]) -> Option<&PolyMatrix> {
        self.alg.alg_block(word)
    }
    fn mod_block(&self, word: &[usize], g: usize) -> Option<&PolyMatrix> {
        if word.is_empty() {
            self.module.m1.get(&g)
        } else {
            self.module.comps.get(&(word.to_vec(), g))
        }
    }
}

fn neg_d(ctx: &RingCtx, c: &GradedComplex, from: usize) -> BTreeMap<usize, PolyMatrix> {
    (from..=c.length())
        .filter_map(|i| Some((i, c.d(i)?.matrix.scale(ctx.field().p() - 1, ctx))))
        .collect()
}

fn pos_d(c: &GradedComplex) -> BTreeMap<usize, PolyMatrix> {
    (1..=c.length())
        .filter_map(|i| Some((i, c.d(i)?.matrix.clone())))
        .collect()
}

/// All words `(i_1..i_n)` with `1 <= i_t <= max` and `Σ i_t <= bound`.
fn words(n: usize, max: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
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
    rec(n, max, bound, &mut cur, &mut out);
    out
}

/// Solves `m_1 y = b` for `y ∈ T_j` in internal degree `e`, where `m_1` is
/// `d` (modules) or `-d` (the algebra).
struct Lifter<'a> {
    ctx: &'a RingCtx,
    target: &'a GradedComplex,
    negate: bool,
    cache: BTreeMap<(usize, u32), KMatrix>,
}

impl Lifter<'_> {
    fn lift(&mut self, j: usize, e: u32, b: &[Poly]) -> Option<Vec<Poly>> {
        let ctx = self.ctx;
        if b.iter().all(|p| p.is_zero()) {
            return Some(vec![Poly::zero(); self.target.rank(j)]);
        }
        if j > self.target.length() || j == 0 {
            return None;
        }
        let lower = self.target.module(j - 1);
        let rhs = lower.to_coords(ctx, b, e);
        let target = self.target;
        let negate = self.negate;
        let m = self.cache.entry((j, e)).or_insert_with(|| {
            let mut m = target.d(j).expect("differential").component_matrix(ctx, e);
            if negate {
                let f = ctx.field();
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        let v = m.get(r, c);
                        m.set(r, c, f.neg(v));
                    }
                }
            }
            m
        });
        let y = m.solve_particular(&rhs)?;
        Some(target.module(j).from_coords(ctx, &y, e))
    }
}

/// Collapses a single-slot element onto the generators of `T_j`.
fn as_vector(e: &Elem, j: usize, rank: usize, module: bool) -> Result<Vec<Poly>, Error> {
    let mut v = vec![Poly::zero(); rank];
    for (k, p) in e {
        let slot = if module {
            k.module.filter(|_| k.alg.is_empty())
        } else {
            (k.alg.len() == 1 && k.module.is_none()).then(|| k.alg[0])
        };
        match slot {
            Some((jj, r)) if jj == j => v[r] = p.clone(),
            _ => {
                return Err(Error::Internal(format!(
                    "unexpected term {k:?} in degree {j}"
                )))
            }
        }
    }
    Ok(v)
}

/// Solves `d^Hom(u) = m_1 u + u δ = rhs` for `u` on the given source keys,
/// block by block in increasing shifted degree with free variables zero.
///
/// `blocks` receives the solution, keyed by `word_of(key)`. `delta` is the
/// tensor differential of the source; it may reference keys of lower
/// shifted degree only. Keys whose target degree exceeds the length of
/// `target` must have zero right-hand side.
#[allow(clippy::too_many_arguments)]
pub fn homotopy_solve<W: Ord + Clone + core::fmt::Debug>(
    ctx: &RingCtx,
    target: &GradedComplex,
    negate: bool,
    module: bool,
    sources: &[(W, usize, Vec<Key>)],
    internal_degree: impl Fn(&Key) -> u32,
    delta: impl Fn(&Key) -> Elem,
    rhs: impl Fn(&Key) -> Elem,
) -> Result<BTreeMap<W, PolyMatrix>, Error> {
    let f = ctx.field();
    let mut lifter = Lifter {
        ctx,
        target,
        negate,
        cache: BTreeMap::new(),
    };
    let mut blocks: BTreeMap<W, PolyMatrix> = BTreeMap::new();
    let mut index: BTreeMap<Key, (W, usize)> = BTreeMap::new();
    for (w, _, keys) in sources {
        for (c, k) in keys.iter().enumerate() {
            index.insert(k.clone(), (w.clone(), c));
        }
    }
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (s, (_, _, keys)) in sources.iter().enumerate() {
        if let Some(k) = keys.first() {
            order.push((k.shifted_degree(), s));
        }
    }
    order.sort();
    for (_, s) in order {
        let (w, j, keys) = &sources[s];
        let j = *j;
        let rank_j = target.rank(j);
        let mut cols = Vec::with_capacity(keys.len());
        for x in keys {
            let mut b = rhs(x);
            // subtract u(δ x) using blocks already solved
            for (k, p) in delta(x) {
                let Some((w2, c)) = index.get(&k) else {
                    continue;
                };
                let Some(block) = blocks.get(w2) else {
                    continue;
                };
                let j2 = sources
                    .iter()
                    .find(|s| &s.0 == w2)
                    .map(|s| s.1)
                    .unwrap_or(j);
                for (r, q) in block.column(*c) {
                    let key = if module {
                        Key {
                            alg: Vec::new(),
                            module: Some((j2, *r)),
                        }
                    } else {
                        Key {
                            alg: vec![(j2, *r)],
                            module: None,
                        }
                    };
                    add_term(&mut b, key, p.mul(q, f).neg(f), ctx);
                }
            }
            let bj = j
                .checked_sub(1)
                .ok_or_else(|| Error::Internal(String::from("target degree 0")))?;
            let bv = as_vector(&b, bj, target.rank(bj), module)?;
            let e = internal_degree(x);
            match lifter.lift(j, e, &bv) {
                Some(y) => cols.push(y),
                None => {
                    return Err(Error::Unsolvable(format!(
                        "word {w:?}, basis tensor {:?}, internal degree {e}",
                        x
                    )))
                }
            }
        }
        if j <= target.length() && cols.iter().any(|c| c.iter().any(|p| !p.is_zero())) {
            blocks.insert(w.clone(), PolyMatrix::from_columns(rank_j, cols));
        }
    }
    Ok(blocks)
}

impl AInfAlg {
    /// Wraps explicit components (`n >= 2`), e.g. a fixture.
    pub fn from_components(
        ctx: &RingCtx,
        a: GradedComplex,
        comps: BTreeMap<Vec<usize>, PolyMatrix>,
    ) -> Self {
        let ctx = ctx.q();
        let m1 = neg_d(&ctx, &a, 2);
        let comps = comps.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        AInfAlg { ctx, a, m1, comps }
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.a
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn length(&self) -> usize {
        self.a.length()
    }

    /// Largest `n` for which `m_n` can be nonzero.
    pub fn max_n(&self) -> usize {
        (self.length() + 2) / 2
    }

    pub fn component(&self, word: &[usize]) -> Option<&PolyMatrix> {
        self.comps.get(word)
    }

    /// Nonzero components with `n >= 2`.
    pub fn components(&self) -> &BTreeMap<Vec<usize>, PolyMatrix> {
        &self.comps
    }

    pub fn components_mut(&mut self) -> &mut BTreeMap<Vec<usize>, PolyMatrix> {
        &mut self.comps
    }

    /// True when some `m_n` with `n = word.len()` is nonzero.
    pub fn has_nonzero(&self, n: usize) -> bool {
        self.comps.keys().any(|w| w.len() == n)
    }

    fn internal_degree(&self, k: &Key) -> u32 {
        k.internal_degree(&self.a, None)
    }

    /// `-d_1(x) y + x d_1(y)` on `A_1`-slots of a two-slot key.
    fn curvature(&self, x: &Key) -> Elem {
        let f = self.ctx.field();
        let mut out = Elem::new();
        let (Some(&(i1, g1)), Some(&(i2, g2))) = (x.alg.first(), x.alg.get(1)) else {
            return out;
        };
        let d1 = self.a.d(1);
        if let (1, Some(d1)) = (i1, d1) {
            let c = d1.matrix.get(0, g1).neg(f);
            add_term(
                &mut out,
                Key {
                    alg: vec![(i2, g2)],
                    module: None,
                },
                c,
                &self.ctx,
            );
        }
        if let (1, Some(d1)) = (i2, d1) {
            let c = d1.matrix.get(0, g2);
            add_term(
                &mut out,
                Key {
                    alg: vec![(i1, g1)],
                    module: None,
                },
                c,
                &self.ctx,
            );
        }
        out
    }

    /// `Σ_{i=lo}^{hi} Σ_j m_{n-i+1}(1^j ⊗ m_i ⊗ 1)` applied to `x`.
    fn stasheff_terms(&self, x: &Key, lo: usize, hi: usize) -> Elem {
        let ctx = &self.ctx;
        let n = x.alg.len();
        let e = single(x.clone());
        let mut out = Elem::new();
        for i in lo..=hi {
            for j in 0..=n - i {
                let inner = apply_alg(self, ctx, &e, j, i);
                if inner.is_empty() {
                    continue;
                }
                let outer = apply_alg(self, ctx, &inner, 0, n - i + 1);
                add_elem(&mut out, &outer, 1, ctx);
            }
        }
        out
    }
}

/// Builds an A∞-algebra structure on the resolution `a` of `R` over `Q`.
pub fn build_ainf_algebra(ctx: &RingCtx, a: &GradedComplex) -> Result<AInfAlg, Error> {
    let mut alg = AInfAlg::from_components(ctx, a.clone(), BTreeMap::new());
    let ctx = alg.ctx.clone();
    let len = a.length();
    for n in 2..=alg.max_n() {
        // words whose rhs lands in A_{J-1} with J - 1 <= len
        let bound = (len + 3).saturating_sub(n);
        let sources: Vec<(Vec<usize>, usize, Vec<Key>)> = words(n, len, bound)
            .into_iter()
            .map(|w| {
                let j = alg_target(&w);
                let keys = keys_of(a, &w, None);
                (w, j, keys)
            })
            .collect();
        let blocks = {
            let alg_ref = &alg;
            homotopy_solve(
                &ctx,
                a,
                true,
                false,
                &sources,
                |k| alg_ref.internal_degree(k),
                |k| tensor_differential(alg_ref, &ctx, &single(k.clone())),
                |k| {
                    if n == 2 {
                        alg_ref.curvature(k)
                    } else {
                        let mut r = Elem::new();
                        add_elem(
                            &mut r,
                            &alg_ref.stasheff_terms(k, 2, n - 1),
                            ctx.field().p() - 1,
                            &ctx,
                        );
                        r
                    }
                },
            )?
        };
        alg.comps.extend(blocks);
    }
    Ok(alg)
}

impl AInfMod {
    pub fn from_components(
        ctx: &RingCtx,
        g: GradedComplex,
        comps: BTreeMap<(Vec<usize>, usize), PolyMatrix>,
    ) -> Self {
        let _ = ctx;
        let m1 = pos_d(&g);
        let comps = comps.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        AInfMod { g, m1, comps }
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.g
    }

    pub fn length(&self) -> usize {
        self.g.length()
    }

    /// Largest `n` for which `m_n^G` can be nonzero.
    pub fn max_n(&self) -> usize {
        (self.length() + 3) / 2
    }

    pub fn component(&self, word: &[usize], g: usize) -> Option<&PolyMatrix> {
        self.comps.get(&(word.to_vec(), g))
    }

    pub fn components(&self) -> &BTreeMap<(Vec<usize>, usize), PolyMatrix> {
        &self.comps
    }

    pub fn components_mut(&mut self) -> &mut BTreeMap<(Vec<usize>, usize), PolyMatrix> {
        &mut self.comps
    }

    pub fn has_nonzero(&self, n: usize) -> bool {
        self.comps.keys().any(|(w, _)| w.len() + 1 == n)
    }
}

fn module_curvature(alg: &AInfAlg, x: &Key) -> Elem {
    let f = alg.ctx.field();
    let mut out = Elem::new();
    if let ([(1, g1)], Some(m), Some(d1)) = (x.alg.as_slice(), x.module, alg.a.d(1)) {
        let c = d1.matrix.get(0, *g1).neg(f);
        add_term(
            &mut out,
            Key {
                alg: Vec::new(),
                module: Some(m),
            },
            c,
            &alg.ctx,
        );
    }
    out
}

/// `Σ_{i=lo}^{hi} Σ_j m^G_{n-i+1}(1^j ⊗ m_i ⊗ 1)` on a module key, with
/// the inner map `m_i^G` when it reaches the module slot.
fn module_stasheff_terms(p: Pair<'_>, ctx: &RingCtx, x: &Key, lo: usize, hi: usize) -> Elem {
    let n = x.alg.len() + 1;
    let e = single(x.clone());
    let mut out = Elem::new();
    for i in lo..=hi {
        for j in 0..=n - i {
            let inner = if j + i < n {
                apply_alg(&p, ctx, &e, j, i)
            } else {
                apply_mod(&p, ctx, &e, j)
            };
            if inner.is_empty() {
                continue;
            }
            let outer = apply_mod(&p, ctx, &inner, 0);
            add_elem(&mut out, &outer, 1, ctx);
        }
    }
    out
}

/// Builds an A∞ `A`-module structure on the resolution `g` of `M` over `Q`.
pub fn build_ainf_module(alg: &AInfAlg, g: &GradedComplex) -> Result<AInfMod, Error> {
    let ctx = alg.ctx.clone();
    let mut module = AInfMod::from_components(&ctx, g.clone(), BTreeMap::new());
    let len = g.length();
    for n in 2..=module.max_n() {
        let mut sources = Vec::new();
        for gdeg in 0..=len {
            // rhs lands in G_{J-1}, J = Σ + gdeg + n - 2
            let Some(bound) = (len + 3).checked_sub(gdeg + n) else {
                continue;
            };
            for w in words(n - 1, alg.length(), bound) {
                let j = mod_target(&w, gdeg);
                let keys = keys_of(&alg.a, &w, Some((g, gdeg)));
                sources.push(((w, gdeg), j, keys));
            }
        }
        let blocks = {
            let pair = Pair {
                alg,
                module: &module,
            };
            homotopy_solve(
                &ctx,
                g,
                false,
                true,
                &sources,
                |k| k.internal_degree(&alg.a, Some(g)),
                |k| tensor_differential(&pair, &ctx, &single(k.clone())),
                |k| {
                    if n == 2 {
                        module_curvature(alg, k)
                    } else {
                        let mut r = Elem::new();
                        add_elem(
                            &mut r,
                            &module_stasheff_terms(pair, &ctx, k, 2, n - 1),
                            ctx.field().p() - 1,
                            &ctx,
                        );
                        r
                    }
                },
            )?
        };
        module.comps.extend(blocks);
    }
    Ok(module)
}

/// Where an identity first failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub n: usize,
    pub word: Vec<usize>,
    pub module_degree: Option<usize>,
    pub key: Key,
    pub internal_degree: u32,
}

/// Outcome of a structure verification.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked_tensors: usize,
    pub checked_levels: Vec<usize>,
    pub failure: Option<IdentityFailure>,
    /// A stored component outside the range allowed by degrees.
    pub out_of_range: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.out_of_range.is_none()
    }

    pub fn describe(&self) -> String {
        if let Some(f) = &self.failure {
            return format!(
                "identity n = {} fails on word {:?}{} at {:?} (internal degree {})",
                f.n,
                f.word,
                f.module_degree
                    .map(|g| format!(" ⊗ G_{g}"))
                    .unwrap_or_default(),
                f.key,
                f.internal_degree
            );
        }
        if let Some(s) = &self.out_of_range {
            return s.clone();
        }
        format!(
            "ok ({} tensors, levels {:?})",
            self.checked_tensors, self.checked_levels
        )
    }
}

/// Checks `m_1 = d^{A[1]}`, the curvature identity and the Stasheff
/// identities for every `n` at which a term can be nonzero.
pub fn verify_ainf_algebra(alg: &AInfAlg) -> VerifyReport {
    let ctx = &alg.ctx;
    let len = alg.length();
    let mut rep = VerifyReport::default();
    for w in alg.comps.keys() {
        if alg_target(w) > len || w.len() < 2 {
            rep.out_of_range = Some(format!("component on word {w:?} is out of range"));
            return rep;
        }
    }
    // m_1 m_1 = 0 is d^2 = 0 on A_{>=1}
    let top = (len + 3) / 2;
    for n in 1..=top.max(2) {
        let bound = (len + 3).saturating_sub(n);
        for w in words(n, len, bound) {
            for x in keys_of(&alg.a, &w, None) {
                let mut lhs = alg.stasheff_terms(&x, 1, n);
                if n == 2 {
                    add_elem(&mut lhs, &alg.curvature(&x), ctx.field().p() - 1, ctx);
                }
                rep.checked_tensors += 1;
                if !lhs.is_empty() {
                    rep.failure = Some(IdentityFailure {
                        n,
                        word: w.clone(),
                        module_degree: None,
                        internal_degree: alg.internal_degree(&x),
                        key: x,
                    });
                    return rep;
                }
            }
        }
        rep.checked_levels.push(n);
    }
    rep
}

/// Module analogue of [`verify_ainf_algebra`].
pub fn verify_ainf_module(alg: &AInfAlg, module: &AInfMod) -> VerifyReport {
    let ctx = &alg.ctx;
    let g = &module.g;
    let len = g.length();
    let mut rep = VerifyReport::default();
    for (w, gd) in module.comps.keys() {
        if mod_target(w, *gd) > len || w.is_empty() {
            rep.out_of_range = Some(format!(
                "module component on {w:?} ⊗ G_{gd} is out of range"
            ));
            return rep;
        }
    }
    let pair = Pair { alg, module };
    let top = (len + 4) / 2;
    for n in 1..=top.max(2) {
        for gdeg in 0..=len {
            let Some(bound) = (len + 3).checked_sub(gdeg + n) else {
                continue;
            };
            for w in words(n - 1, alg.length(), bound) {
                for x in keys_of(&alg.a, &w, Some((g, gdeg))) {
                    let mut lhs = module_stasheff_terms(pair, ctx, &x, 1, n);
                    if n == 2 {
                        add_elem(
                            &mut lhs,
                            &module_curvature(alg, &x),
                            ctx.field().p() - 1,
                            ctx,
                        );
                    }
                    rep.checked_tensors += 1;
                    if !lhs.is_empty() {
                        rep.failure = Some(IdentityFailure {
                            n,
                            word: w.clone(),
                            module_degree: Some(gdeg),
                            internal_degree: x.internal_degree(&alg.a, Some(g)),
                            key: x,
                        });
                        return rep;
                    }
                }
            }
        }
        rep.checked_levels.push(n);
    }
    rep
}

/// First component entry with a nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityWitness {
    pub n: usize,
    pub word: Vec<usize>,
    pub module_degree: Option<usize>,
    pub row: usize,
    pub col: usize,
    pub constant: u32,
}

/// `None` when every `m_n`, `n >= 2`, has entries in the maximal ideal.
pub fn algebra_minimality_witness(alg: &AInfAlg) -> Option<MinimalityWitness> {
    alg.comps.iter().find_map(|(w, m)| {
        m.first_unit().map(|(row, col)| MinimalityWitness {
            n: w.len(),
            word: w.clone(),
            module_degree: None,
            row,
            col,
            constant: m.get(row, col).constant_term(),
        })
    })
}

pub fn module_minimality_witness(module: &AInfMod) -> Option<MinimalityWitness> {
    module.comps.iter().find_map(|((w, g), m)| {
        m.first_unit().map(|(row, col)| MinimalityWitness {
            n: w.len() + 1,
            word: w.clone(),
            module_degree: Some(*g),
            row,
            col,
            constant: m.get(row, col).constant_term(),
        })
    })
}

/// The graded algebra `Ā = A ⊗ k` with the product induced by `m_2`.
#[derive(Clone, Debug)]
pub struct TorAlgebra {
    /// Internal degrees of the generators of `Ā_i`, `i >= 1`.
    pub gens: Vec<GradedFree>,
    /// Product `Ā_i ⊗ Ā_j -> Ā_{i+j}` on tuple bases, keyed by `(i, j)`.
    pub products: BTreeMap<(usize, usize), KMatrix>,
}

/// The graded `Ā`-module `Ḡ = G ⊗ k`.
#[derive(Clone, Debug)]
pub struct TorModule {
    pub gens: Vec<GradedFree>,
    /// Action `Ā_i ⊗ Ḡ_g -> Ḡ_{i+g}`, keyed by `(i, g)`.
    pub products: BTreeMap<(usize, usize), KMatrix>,
}

impl TorAlgebra {
    pub fn is_trivial(&self) -> bool {
        self.products.values().all(|m| m.is_zero())
    }
}

/// Constant parts of `m_2` and `m_2^G`, unshifted: `ab = (-1)^{|a|+1} m_2`
/// and `a·g = -m_2^G`.
pub fn induced_tor_structures(
    alg: &AInfAlg,
    module: &AInfMod,
) -> Result<(TorAlgebra, TorModule), Error> {
    if !alg.a.minimal || !module.g.minimal {
        return Err(Error::NotMinimal(String::from(
            "Tor structures need minimal resolutions",
        )));
    }
    let ctx = &alg.ctx;
    let f = ctx.field();
    let a = &alg.a;
    let g = &module.g;
    let mut products = BTreeMap::new();
    for i in 1..=a.length() {
        for j in 1..=a.length() {
            let rows = a.rank(i + j);
            let mut m = KMatrix::zeros(f, rows, a.rank(i) * a.rank(j));
            if let Some(block) = alg.comps.get(&vec![i, j]) {
                let c = block.constant_part(ctx);
                let sign = f.sign(i % 2 == 0);
                for r in 0..c.rows() {
                    for col in 0..c.cols() {
                        m.set(r, col, f.mul(sign, c.get(r, col)));
                    }
                }
            }
            products.insert((i, j), m);
        }
    }
    let mut mprod = BTreeMap::new();
    for i in 1..=a.length() {
        for gd in 0..=g.length() {
            let rows = g.rank(i + gd);
            let mut m = KMatrix::zeros(f, rows, a.rank(i) * g.rank(gd));
            if let Some(block) = module.comps.get(&(vec![i], gd)) {
                let c = block.constant_part(ctx);
                for r in 0..c.rows() {
                    for col in 0..c.cols() {
                        m.set(r, col, f.neg(c.get(r, col)));
                    }
                }
            }
            mprod.insert((i, gd), m);
        }
    }
    let agens = (0..=a.length())
        .map(|i| {
            if i == 0 {
                GradedFree::zero()
            } else {
                a.module(i)
            }
        })
        .collect();
    let ggens = (0..=g.length()).map(|i| g.module(i)).collect();
    Ok((
        TorAlgebra {
            gens: agens,
            products,
        },
        TorModule {
            gens: ggens,
            products: mprod,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::resolve::{minimal_resolution, Presentation};

    fn setup(vars: &[&str], ideal: &[&str]) -> (RingCtx, GradedComplex, GradedComplex) {
        let ctx = RingCtx::parse(Fp::new(32003), vars, ideal).unwrap();
        let a = minimal_resolution(&ctx.q(), &Presentation::ring(), 8, 12)
            .unwrap()
            .complex;
        let k = minimal_resolution(&ctx.q(), &Presentation::residue_field(&ctx), 8, 12)
            .unwrap()
            .complex;
        (ctx, a, k)
    }

    #[test]
    fn hypersurface_structure_vanishes() {
        let (ctx, a, k) = setup(&["x"], &["x^2"]);
        let alg = build_ainf_algebra(&ctx, &a).unwrap();
        assert!(alg.components().is_empty());
        let m = build_ainf_module(&alg, &k).unwrap();
        assert!(verify_ainf_module(&alg, &m).passed());
        assert!(algebra_minimality_witness(&alg).is_none());
    }

    #[test]
    fn pfaffian_round_trip() {
        let (ctx, a, k) = setup(&["x", "y", "z"], &["x^2", "-y*z", "x*y+z^2", "-x*z", "y^2"]);
        let alg = build_ainf_algebra(&ctx, &a).unwrap();
        let rep = verify_ainf_algebra(&alg);
        assert!(rep.passed(), "{}", rep.describe());
        assert!(!alg.has_nonzero(3));
        let m = build_ainf_module(&alg, &k).unwrap();
        let rep = verify_ainf_module(&alg, &m);
        assert!(rep.passed(), "{}", rep.describe());
        assert!(algebra_minimality_witness(&alg).is_some());
    }

    #[test]
    fn flipped_sign_fails() {
        let (ctx, a, _) = setup(&["x", "y", "z"], &["x^2", "-y*z", "x*y+z^2", "-x*z", "y^2"]);
        let mut alg = build_ainf_algebra(&ctx, &a).unwrap();
        let (w, m) = alg
            .components()
            .iter()
            .next()
            .map(|(w, m)| (w.clone(), m.clone()))
            .unwrap();
        let (r, c, p) = m
            .entries()
            .next()
            .map(|(r, c, p)| (r, c, p.clone()))
            .unwrap();
        let mut m2 = m.clone();
        m2.set(r, c, p.neg(ctx.field()));
        alg.components_mut().insert(w, m2);
        assert!(!verify_ainf_algebra(&alg).passed());
    }

    #[test]
    fn four_variable_example_needs_m3() {
        let (ctx, a, _) = setup(&["x", "y", "z", "w"], &["x^2", "x*y", "y*z", "z*w", "w^2"]);
        assert_eq!(a.length(), 4);
        let alg = build_ainf_algebra(&ctx, &a).unwrap();
        let rep = verify_ainf_algebra(&alg);
        assert!(rep.passed(), "{}", rep.describe());
        assert!(alg.has_nonzero(3));
    }
}
