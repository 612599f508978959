//! Minimal graded free resolutions over `Q` (finite) and over `R`
//! (truncated), Betti tables and Poincaré series.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactla::{Echelon, KMatrix};
use crate::gradedring::{GradedFree, GradedMap, Monomial, Poly, PolyMatrix, RingCtx, RingMode};
use crate::series::PowerSeries;
use crate::Error;

/// A chain complex `F_0 <- F_1 <- ... <- F_l` of graded free modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    modules: Vec<GradedFree>,
    /// `diffs[i]` is `d_{i+1}: F_{i+1} -> F_i`.
    diffs: Vec<GradedMap>,
    pub mode: RingMode,
    pub minimal: bool,
}

impl GradedComplex {
    /// Builds from `d_1, d_2, ...`; checks that consecutive maps compose.
    pub fn new(f0: GradedFree, diffs: Vec<GradedMap>, mode: RingMode) -> Result<Self, Error> {
        let mut modules = vec![f0];
        for (i, d) in diffs.iter().enumerate() {
            if d.tgt != modules[i] {
                return Err(Error::Shape {
                    expected: (modules[i].rank(), d.src.rank()),
                    found: (d.tgt.rank(), d.src.rank()),
                });
            }
            modules.push(d.src.clone());
        }
        // trailing zero modules carry no information
        let mut c = GradedComplex {
            modules,
            diffs,
            mode,
            minimal: false,
        };
        while c.modules.len() > 1 && c.modules.last().is_some_and(|m| m.rank() == 0) {
            c.modules.pop();
            c.diffs.pop();
        }
        c.minimal = c.diffs.iter().all(|d| d.matrix.first_unit().is_none());
        Ok(c)
    }

    /// Index of the last module.
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, i: usize) -> GradedFree {
        self.modules.get(i).cloned().unwrap_or_default()
    }

    pub fn modules(&self) -> &[GradedFree] {
        &self.modules
    }

    pub fn rank(&self, i: usize) -> usize {
        self.modules.get(i).map_or(0, |m| m.rank())
    }

    /// `d_i: F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn d(&self, i: usize) -> Option<&GradedMap> {
        if i == 0 {
            None
        } else {
            self.diffs.get(i - 1)
        }
    }

    /// `d_i`, or the zero map when out of range.
    pub fn d_or_zero(&self, i: usize) -> GradedMap {
        match self.d(i) {
            Some(d) => d.clone(),
            None => GradedMap::zero(self.module(i), self.module(i.wrapping_sub(1))),
        }
    }

    pub fn diffs(&self) -> &[GradedMap] {
        &self.diffs
    }

    /// Internal degree of the top generator in any module.
    pub fn max_generator_degree(&self) -> u32 {
        self.modules
            .iter()
            .filter_map(|m| m.max_degree())
            .max()
            .unwrap_or(0)
    }
}

/// A graded module `coker(F_1 -> F_0)` given by generator degrees and
/// relation columns. With `base = R` the relations are read in `R`; with
/// `base = Q` they must already contain `I * F_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gens: GradedFree,
    pub relations: Vec<Vec<Poly>>,
    pub base: RingMode,
}

impl Presentation {
    /// `k = R/(x_1, ..., x_n)`.
    pub fn residue_field(ctx: &RingCtx) -> Self {
        let rels = (0..ctx.nvars())
            .map(|j| vec![Poly::monomial(Monomial::var(j), 1)])
            .collect();
        Presentation {
            gens: GradedFree::new(vec![0]),
            relations: rels,
            base: RingMode::R,
        }
    }

    /// `R/(f_1, ..., f_m)`.
    pub fn quotient_by(elems: Vec<Poly>) -> Self {
        let rels = elems.into_iter().map(|f| vec![f]).collect();
        Presentation {
            gens: GradedFree::new(vec![0]),
            relations: rels,
            base: RingMode::R,
        }
    }

    /// `R` itself.
    pub fn ring() -> Self {
        Self::quotient_by(Vec::new())
    }

    /// Degree of a relation column, `None` for a zero column.
    fn relation_degree(&self, col: &[Poly]) -> Option<u32> {
        col.iter()
            .enumerate()
            .find_map(|(r, p)| p.homogeneous_degree().map(|d| d + self.gens.degree(r)))
    }

    /// Checks homogeneity and shape, and that no generator is redundant.
    pub fn validate(&self, ctx: &RingCtx) -> Result<(), Error> {
        for (k, col) in self.relations.iter().enumerate() {
            if col.len() != self.gens.rank() {
                return Err(Error::Shape {
                    expected: (self.gens.rank(), 1),
                    found: (col.len(), 1),
                });
            }
            let Some(deg) = self.relation_degree(col) else {
                continue;
            };
            for (r, p) in col.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                if p.homogeneous_degree().map(|d| d + self.gens.degree(r)) != Some(deg) {
                    return Err(Error::Inhomogeneous {
                        what: format!("relation {k}"),
                    });
                }
                if p.constant_term() != 0 {
                    return Err(Error::NonMinimalPresentation { generator: r });
                }
            }
        }
        if self.base == RingMode::Q {
            self.check_annihilated(ctx)?;
        }
        Ok(())
    }

    /// With `base = Q`: verifies `I * F_0` lies in the relation span.
    fn check_annihilated(&self, ctx: &RingCtx) -> Result<(), Error> {
        let q = ctx.q();
        for (gi, g) in ctx.ideal().iter().enumerate() {
            let gd = g.homogeneous_degree().unwrap_or(0);
            for e in 0..self.gens.rank() {
                let d = gd + self.gens.degree(e);
                let span = self.span_in_degree(&q, d, false);
                let mut elem = vec![Poly::zero(); self.gens.rank()];
                elem[e] = g.clone();
                if !span.contains(&self.gens.to_coords(&q, &elem, d)) {
                    return Err(Error::NotAnRModule {
                        generator: e,
                        ideal_generator: gi,
                    });
                }
            }
        }
        Ok(())
    }

    /// Relation columns interpreted in `ctx`, including `I * F_0` over `Q`
    /// when the presentation is over `R`.
    pub fn columns(&self, ctx: &RingCtx) -> Vec<(u32, Vec<Poly>)> {
        let mut out: Vec<(u32, Vec<Poly>)> = self
            .relations
            .iter()
            .filter_map(|c| Some((self.relation_degree(c)?, c.clone())))
            .collect();
        if ctx.mode() == RingMode::Q && self.base == RingMode::R {
            for g in ctx.ideal() {
                let gd = g.homogeneous_degree().unwrap_or(0);
                for e in 0..self.gens.rank() {
                    let mut col = vec![Poly::zero(); self.gens.rank()];
                    col[e] = g.clone();
                    out.push((gd + self.gens.degree(e), col));
                }
            }
        }
        out
    }

    /// The degree-`d` piece of the relation submodule of `F_0`.
    fn span_in_degree(&self, ctx: &RingCtx, d: u32, with_ideal: bool) -> Echelon {
        let dim = self.gens.dim(ctx, d);
        let mut span = Echelon::new(ctx.field(), dim);
        let cols = if with_ideal {
            self.columns(ctx)
        } else {
            self.relations
                .iter()
                .filter_map(|c| Some((self.relation_degree(c)?, c.clone())))
                .collect()
        };
        for (rd, col) in cols {
            if rd > d {
                continue;
            }
            for mu in ctx.basis(d - rd).to_vec() {
                let elem: Vec<Poly> = col
                    .iter()
                    .map(|p| p.mul_monomial(&mu, 1, ctx.field()))
                    .collect();
                span.insert(&self.gens.to_coords(ctx, &elem, d));
            }
        }
        span
    }

    /// `dim_k M_d`.
    pub fn hilbert(&self, ctx: &RingCtx, d: u32) -> usize {
        let r = ctx.r();
        let span = self.span_in_degree(&r, d, false);
        self.gens.dim(&r, d) - span.rank()
    }

    /// Whether `M` is presented as `Q/J` with `J` generated by monomials.
    fn monomial_lcm_degree(&self, ctx: &RingCtx) -> Option<u32> {
        if self.gens.degrees() != [0] {
            return None;
        }
        let mut lcm = [0u32; crate::gradedring::MAX_VARS];
        for (_, col) in self.columns(&ctx.q()) {
            let [p] = col.as_slice() else { return None };
            let [(m, _)] = p.terms() else { return None };
            for (j, e) in lcm.iter_mut().enumerate() {
                *e = (*e).max(m.exponent(j));
            }
        }
        Some(lcm.iter().sum())
    }
}

/// How the generator list of one homological step was certified complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// A degree bound valid for this input was inspected.
    Proven,
    /// At least one degree beyond every generator found was inspected.
    Heuristic,
    /// A generator appeared at the internal-degree cap.
    Uncertain,
}

/// A minimal resolution together with its truncation data.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: GradedComplex,
    pub presentation: Presentation,
    pub hom_cap: usize,
    pub int_cap: u32,
    /// Certificate for the generators of `F_i`, indexed by `i` (`F_0` is given).
    pub certificates: Vec<Certificate>,
    /// Over `Q`: the kernel at the last step vanished.
    pub terminated: bool,
}

impl Resolution {
    pub fn is_certified(&self) -> bool {
        self.certificates
            .iter()
            .all(|c| *c != Certificate::Uncertain)
    }

    pub fn betti_table(&self) -> BettiTable {
        betti_table(&self.complex)
    }

    pub fn poincare_series(&self, cap: usize) -> Result<PowerSeries, Error> {
        poincare_series(&self.complex, cap, self.computed_range())
    }

    /// Highest homological degree whose rank is known.
    pub fn computed_range(&self) -> usize {
        if self.terminated {
            usize::MAX
        } else {
            self.hom_cap
        }
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.terminated.then(|| self.complex.length())
    }
}

/// Graded Betti numbers `β(i, j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries
            .range((i, 0)..=(i, u32::MAX))
            .map(|(_, v)| v)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `β(i, j)` = number of generators of `F_i` in degree `j`.
pub fn betti_table(c: &GradedComplex) -> BettiTable {
    let mut t = BettiTable::default();
    for (i, m) in c.modules().iter().enumerate() {
        for &j in m.degrees() {
            *t.entries.entry((i, j)).or_insert(0) += 1;
        }
    }
    t
}

/// Total ranks through `cap`; `known` is the highest reliable index.
pub fn poincare_series(c: &GradedComplex, cap: usize, known: usize) -> Result<PowerSeries, Error> {
    if cap > known {
        return Err(Error::CapExceeded {
            requested: cap,
            available: known,
        });
    }
    Ok(PowerSeries::new(
        (0..=cap).map(|i| c.rank(i) as i64).collect(),
    ))
}

/// Computes a minimal graded free resolution of the module presented by
/// `pres`, over `Q` or `R` according to `ctx.mode()`.
///
/// Over `R` homological steps stop at `hom_cap`; over `Q` they continue
/// until the kernel vanishes. Kernels are explored up to internal degree
/// `int_cap`.
pub fn minimal_resolution(
    ctx: &RingCtx,
    pres: &Presentation,
    hom_cap: usize,
    int_cap: u32,
) -> Result<Resolution, Error> {
    pres.validate(ctx)?;
    let f0 = pres.gens.clone();
    let mode = ctx.mode();

    // degree bound for generators of F_i, when one is available
    let top = ctx.r().top_degree(int_cap.max(4) + 1);
    let artinian_bound = |i: usize, prev: &GradedFree| -> Option<u32> {
        let t = top?;
        match mode {
            RingMode::R => Some(prev.max_degree().unwrap_or(0) + t),
            RingMode::Q => Some(i as u32 + f0.max_degree().unwrap_or(0) + t),
        }
    };
    let monomial_bound = if mode == RingMode::Q {
        pres.monomial_lcm_degree(ctx)
    } else {
        None
    };

    let mut certs = vec![Certificate::Proven];
    let mut diffs: Vec<GradedMap> = Vec::new();

    // step 1: minimal generators of the relation submodule
    let cols = pres.columns(ctx);
    let rel_max = cols.iter().map(|c| c.0).max();
    let lo = f0.min_degree().unwrap_or(0);
    let found = minimal_generators(ctx, &f0, lo, int_cap, |d| {
        cols.iter()
            .filter(|c| c.0 == d)
            .map(|(_, col)| f0.to_coords(ctx, col, d))
            .collect()
    });
    certs.push(match rel_max {
        Some(m) if m > int_cap => Certificate::Uncertain,
        _ => Certificate::Proven,
    });
    let d1 = assemble(ctx, &f0, &found);
    let mut current = d1.src.clone();
    let mut terminated = current.rank() == 0;
    diffs.push(d1);

    let mut i = 1;
    while !terminated && (mode == RingMode::Q || i < hom_cap) {
        if mode == RingMode::Q && i > ctx.nvars() {
            return Err(Error::Internal(format!(
                "resolution over Q did not terminate by homological degree {}",
                ctx.nvars()
            )));
        }
        let d = diffs.last().expect("at least one step").clone();
        let lo = current.min_degree().unwrap_or(0);
        let found = minimal_generators(ctx, &current, lo, int_cap, |deg| {
            let m = d.component_matrix(ctx, deg);
            let k = m.kernel_basis();
            (0..k.cols()).map(|c| k.col(c)).collect()
        });
        let max_new = found.iter().map(|g| g.0).max();
        let bound = artinian_bound(i + 1, &current).or(monomial_bound);
        certs.push(match (bound, max_new) {
            (Some(b), _) if b <= int_cap => Certificate::Proven,
            (_, Some(m)) if m >= int_cap => Certificate::Uncertain,
            _ => Certificate::Heuristic,
        });
        let next = assemble(ctx, &current, &found);
        current = next.src.clone();
        terminated = current.rank() == 0;
        diffs.push(next);
        i += 1;
    }
    let complex = GradedComplex::new(f0, diffs, mode)?;
    certs.truncate(complex.length() + 1);
    Ok(Resolution {
        complex,
        presentation: pres.clone(),
        hom_cap,
        int_cap,
        certificates: certs,
        terminated: terminated && mode == RingMode::Q,
    })
}

/// Walks internal degrees `lo..=hi`; in each, the submodule's degree-`d`
/// piece is spanned by `R_1` times the previous piece plus `span_at(d)`.
/// Vectors of `span_at(d)` outside the part generated from below become
/// new minimal generators.
fn minimal_generators(
    ctx: &RingCtx,
    f: &GradedFree,
    lo: u32,
    hi: u32,
    mut span_at: impl FnMut(u32) -> Vec<Vec<u32>>,
) -> Vec<(u32, Vec<u32>)> {
    let mut out = Vec::new();
    let mut prev: Option<Echelon> = None;
    for d in lo..=hi {
        let mut gen = Echelon::new(ctx.field(), f.dim(ctx, d));
        if let Some(p) = &prev {
            for row in p.basis() {
                for j in 0..ctx.nvars() {
                    gen.insert(&f.mul_var(ctx, d - 1, j, row));
                }
            }
        }
        for v in span_at(d) {
            if gen.insert(&v).is_some() {
                out.push((d, v));
            }
        }
        prev = Some(gen);
    }
    out
}

/// The map from new generators (degree, coordinates in `tgt`) onto `tgt`.
fn assemble(ctx: &RingCtx, tgt: &GradedFree, gens: &[(u32, Vec<u32>)]) -> GradedMap {
    let src = GradedFree::new(gens.iter().map(|g| g.0).collect());
    let cols = gens
        .iter()
        .map(|(d, v)| tgt.from_coords(ctx, v, *d))
        .collect();
    let matrix = PolyMatrix::from_columns(tgt.rank(), cols);
    GradedMap {
        src,
        tgt: tgt.clone(),
        matrix,
    }
}

/// The Koszul complex on `elems`, with basis of `K_i` the `i`-subsets in
/// lexicographic order.
pub fn koszul_complex(ctx: &RingCtx, elems: &[Poly]) -> Result<GradedComplex, Error> {
    let n = elems.len();
    let mut degs = Vec::new();
    for (k, f) in elems.iter().enumerate() {
        degs.push(f.homogeneous_degree().ok_or_else(|| Error::Inhomogeneous {
            what: format!("Koszul element {k}"),
        })?);
    }
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| subsets_of(n, i)).collect();
    let module = |i: usize| {
        GradedFree::new(
            subsets[i]
                .iter()
                .map(|s| s.iter().map(|&k| degs[k]).sum())
                .collect(),
        )
    };
    let mut diffs = Vec::new();
    for i in 1..=n {
        let mut m = PolyMatrix::zeros(subsets[i - 1].len(), subsets[i].len());
        for (c, s) in subsets[i].iter().enumerate() {
            for (pos, &k) in s.iter().enumerate() {
                let mut t = s.clone();
                t.remove(pos);
                let r = subsets[i - 1].iter().position(|u| *u == t).expect("face");
                let sign = ctx.field().sign(pos % 2 == 1);
                m.set(r, c, elems[k].scale(sign, ctx.field()));
            }
        }
        diffs.push(GradedMap {
            src: module(i),
            tgt: module(i - 1),
            matrix: m,
        });
    }
    GradedComplex::new(module(0), diffs, ctx.mode())
}

pub(crate) fn subsets_of(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Outcome of [`verify_resolution`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResolutionReport {
    /// `(i, row, col)` of the first nonzero entry of some `d_{i} d_{i+1}`.
    pub d_squared_failure: Option<(usize, usize, usize)>,
    /// `(d, dim H_0, dim M)` at the first mismatching degree.
    pub h0_failure: Option<(u32, usize, usize)>,
    /// `(i, d)` where `H_i` is nonzero.
    pub exactness_failure: Option<(usize, u32)>,
    pub minimality_flag_ok: bool,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.d_squared_failure.is_none()
            && self.h0_failure.is_none()
            && self.exactness_failure.is_none()
            && self.minimality_flag_ok
    }

    pub fn describe(&self) -> String {
        if let Some((i, r, c)) = self.d_squared_failure {
            return format!("d_{i} d_{} != 0 at entry ({r}, {c})", i + 1);
        }
        if let Some((d, h, m)) = self.h0_failure {
            return format!("H_0 has dimension {h} in degree {d}, module has {m}");
        }
        if let Some((i, d)) = self.exactness_failure {
            return format!("H_{i} is nonzero in internal degree {d}");
        }
        if !self.minimality_flag_ok {
            return String::from("minimality flag is wrong");
        }
        String::from("ok")
    }
}

/// Checks `d² = 0`, `H_0 ≅ M` and `H_i = 0` degree by degree through
/// `int_cap`. Homology at the last module is only checked when `exact_top`
/// is set (finite resolutions).
pub fn verify_resolution(
    ctx: &RingCtx,
    c: &GradedComplex,
    pres: &Presentation,
    int_cap: u32,
    exact_top: bool,
) -> ResolutionReport {
    let mut rep = ResolutionReport {
        minimality_flag_ok: true,
        ..Default::default()
    };
    let ctx = &ctx.with_mode(c.mode);
    for i in 1..c.length() {
        let dd = c.d(i).unwrap().matrix.mul(&c.d(i + 1).unwrap().matrix, ctx);
        let first = dd.entries().next().map(|(r, col, _)| (r, col));
        if let Some((r, col)) = first {
            rep.d_squared_failure = Some((i, r, col));
            break;
        }
    }
    let actually_minimal = c.diffs().iter().all(|d| d.matrix.first_unit().is_none());
    rep.minimality_flag_ok = !c.minimal || actually_minimal;

    let top = if exact_top {
        c.length()
    } else {
        c.length().saturating_sub(1)
    };
    'deg: for d in 0..=int_cap {
        let ranks: Vec<usize> = (0..=c.length() + 1)
            .map(|i| component_rank(ctx, c, i, d))
            .collect();
        let h0 = c.module(0).dim(ctx, d) - ranks[1];
        let m = pres.hilbert(ctx, d);
        if h0 != m && rep.h0_failure.is_none() {
            rep.h0_failure = Some((d, h0, m));
        }
        for i in 1..=top {
            let ker = c.module(i).dim(ctx, d) - ranks[i];
            if ker != ranks[i + 1] {
                rep.exactness_failure = Some((i, d));
                break 'deg;
            }
        }
    }
    rep
}

fn component_rank(ctx: &RingCtx, c: &GradedComplex, i: usize, d: u32) -> usize {
    match c.d(i) {
        Some(m) => m.component_matrix(ctx, d).rank(),
        None => 0,
    }
}

/// Component matrices of every differential in internal degree `d`.
pub fn component_matrices(ctx: &RingCtx, c: &GradedComplex, d: u32) -> Vec<KMatrix> {
    c.diffs()
        .iter()
        .map(|m| m.component_matrix(ctx, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;

    fn pfaffian() -> RingCtx {
        RingCtx::parse(
            Fp::new(32003),
            &["x", "y", "z"],
            &["x^2", "-y*z", "x*y+z^2", "-x*z", "y^2"],
        )
        .unwrap()
    }

    fn ranks(r: &Resolution) -> Vec<usize> {
        (0..=r.complex.length())
            .map(|i| r.complex.rank(i))
            .collect()
    }

    #[test]
    fn pfaffian_over_q() {
        let ctx = pfaffian();
        let res = minimal_resolution(&ctx.q(), &Presentation::ring(), 10, 10).unwrap();
        assert_eq!(ranks(&res), vec![1, 5, 5, 1]);
        let b = res.betti_table();
        assert_eq!(
            (b.get(0, 0), b.get(1, 2), b.get(2, 3), b.get(3, 5)),
            (1, 5, 5, 1)
        );
        assert!(res.terminated);
        assert!(res.is_certified());
        let rep = verify_resolution(&ctx, &res.complex, &Presentation::ring(), 10, true);
        assert!(rep.passed(), "{}", rep.describe());
    }

    #[test]
    fn principal_ideal() {
        let ctx = RingCtx::parse(Fp::new(7), &["x"], &[]).unwrap();
        let res = minimal_resolution(&ctx.q(), &Presentation::residue_field(&ctx), 5, 6).unwrap();
        assert_eq!(ranks(&res), vec![1, 1]);
        assert_eq!(res.complex.module(1).degrees(), &[1]);
    }

    #[test]
    fn four_variable_monomial_ideal() {
        let ctx = RingCtx::parse(
            Fp::new(32003),
            &["x", "y", "z", "w"],
            &["x^2", "x*y", "y*z", "z*w", "w^2"],
        )
        .unwrap();
        let res = minimal_resolution(&ctx.q(), &Presentation::ring(), 10, 10).unwrap();
        assert_eq!(res.projective_dimension(), Some(4));
        assert!(res.is_certified());
    }

    #[test]
    fn pfaffian_residue_field_over_r() {
        let ctx = pfaffian();
        let k = Presentation::residue_field(&ctx);
        let res = minimal_resolution(&ctx, &k, 4, 8).unwrap();
        assert_eq!(res.poincare_series(4).unwrap().coeffs(), &[1, 3, 8, 21, 55]);
        assert!(res.certificates.iter().all(|c| *c == Certificate::Proven));
        let rep = verify_resolution(&ctx, &res.complex, &k, 8, false);
        assert!(rep.passed(), "{}", rep.describe());
    }

    #[test]
    fn koszul_betti() {
        let ctx = RingCtx::parse(Fp::new(101), &["x", "y", "z"], &[])
            .unwrap()
            .q();
        let vars: Vec<Poly> = ["x", "y", "z"]
            .iter()
            .map(|s| ctx.parse_poly(s).unwrap())
            .collect();
        let k = koszul_complex(&ctx, &vars).unwrap();
        let b = betti_table(&k);
        for (i, n) in [1, 3, 3, 1].into_iter().enumerate() {
            assert_eq!(b.get(i, i as u32), n);
        }
        let rep = verify_resolution(&ctx, &k, &Presentation::residue_field(&ctx), 6, true);
        assert!(rep.passed(), "{}", rep.describe());
        assert_eq!(poincare_series(&k, 3, 3).unwrap().coeffs(), &[1, 3, 3, 1]);
    }

    #[test]
    fn corrupted_complex_fails() {
        let ctx = RingCtx::parse(Fp::new(101), &["x", "y", "z"], &[])
            .unwrap()
            .q();
        let vars: Vec<Poly> = ["x", "y", "z"]
            .iter()
            .map(|s| ctx.parse_poly(s).unwrap())
            .collect();
        let k = koszul_complex(&ctx, &vars).unwrap();
        let mut diffs = k.diffs().to_vec();
        let e = diffs[1].matrix.get(0, 0);
        diffs[1].matrix.set(0, 0, e.neg(ctx.field()));
        let bad = GradedComplex::new(k.module(0), diffs, RingMode::Q).unwrap();
        let rep = verify_resolution(&ctx, &bad, &Presentation::residue_field(&ctx), 4, true);
        assert_eq!(rep.d_squared_failure.map(|f| f.0), Some(1));
    }

    #[test]
    fn zero_module_empty_table() {
        let ctx = RingCtx::parse(Fp::new(101), &["x"], &[]).unwrap();
        let zero = Presentation {
            gens: GradedFree::zero(),
            relations: vec![],
            base: RingMode::R,
        };
        let res = minimal_resolution(&ctx.q(), &zero, 3, 3).unwrap();
        assert!(res.betti_table().is_empty());
    }

    #[test]
    fn non_r_module_rejected() {
        let ctx = RingCtx::parse(Fp::new(101), &["x", "y"], &["x^2"]).unwrap();
        let p = Presentation {
            base: RingMode::Q,
            ..Presentation::quotient_by(vec![ctx.parse_poly("y").unwrap()])
        };
        assert!(matches!(p.validate(&ctx), Err(Error::NotAnRModule { .. })));
    }

    #[test]
    fn deterministic() {
        let ctx = pfaffian();
        let a = minimal_resolution(&ctx, &Presentation::residue_field(&ctx), 3, 6).unwrap();
        let b = minimal_resolution(&ctx, &Presentation::residue_field(&ctx), 3, 6).unwrap();
        assert_eq!(a.complex, b.complex);
    }
}
