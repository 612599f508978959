//! The bar resolution `R ⊗ B̄A ⊗ G` of `M` over `R`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ainf::tensor::{add_elem, apply_alg, apply_mod, single, Elem, Key};
use crate::ainf::{AInfAlg, AInfMod, Pair};
use crate::gradedring::{GradedFree, GradedMap, PolyMatrix, RingCtx, RingMode};
use crate::resolve::{verify_resolution, GradedComplex, Presentation, ResolutionReport};
use crate::series::PowerSeries;
use crate::Error;

/// The bar complex through homological degree `hom_cap`.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub ctx: RingCtx,
    pub hom_cap: usize,
    /// Basis words of each degree, in the order used by the matrices.
    pub words: Vec<Vec<Key>>,
    /// The complex over `R`; its `d_p` has columns `words[p]`.
    pub complex: GradedComplex,
}

/// Algebra words `(i_1..i_m)` with `Σ (i_t + 1) = s`, longest first, then
/// descending lexicographically.
fn algebra_words(a: &GradedComplex, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(a: &GradedComplex, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in (1..=a.length()).rev() {
            if i < left && a.rank(i) > 0 {
                cur.push(i);
                rec(a, left - i - 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(a, total, &mut Vec::new(), &mut out);
    out
}

/// Words of bar degree `p`: by number of algebra slots descending, then
/// algebra slots descending lexicographically.
pub fn bar_words(a: &GradedComplex, g: &GradedComplex, p: usize) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    for s in 0..=p {
        let gd = p - s;
        if gd > g.length() || g.rank(gd) == 0 {
            continue;
        }
        for w in algebra_words(a, s) {
            out.push((w, gd));
        }
    }
    out.sort_by(|x, y| y.0.len().cmp(&x.0.len()).then_with(|| y.0.cmp(&x.0)));
    out
}

/// Sum of `m_i` at every legal position and of `m_i^G` on every tail.
pub fn bar_differential(p: Pair<'_>, ctx: &RingCtx, x: &Key) -> Elem {
    let e = single(x.clone());
    let n = x.alg.len();
    let mut out = Elem::new();
    for len in 1..=n {
        for pos in 0..=n - len {
            add_elem(&mut out, &apply_alg(&p, ctx, &e, pos, len), 1, ctx);
        }
    }
    for pos in 0..=n {
        add_elem(&mut out, &apply_mod(&p, ctx, &e, pos), 1, ctx);
    }
    out
}

pub fn build_bar_complex(
    alg: &AInfAlg,
    module: &AInfMod,
    hom_cap: usize,
) -> Result<BarComplex, Error> {
    let a = alg.complex();
    let g = module.complex();
    let r = alg.ctx().r();
    let q = alg.ctx().q();
    let pair = Pair { alg, module };
    let mut words: Vec<Vec<Key>> = Vec::new();
    let mut frees = Vec::new();
    for p in 0..=hom_cap {
        let mut keys = Vec::new();
        for (w, gd) in bar_words(a, g, p) {
            keys.extend(crate::ainf::tensor::keys_of(a, &w, Some((g, gd))));
        }
        frees.push(GradedFree::new(
            keys.iter().map(|k| k.internal_degree(a, Some(g))).collect(),
        ));
        words.push(keys);
    }
    let mut diffs = Vec::new();
    for p in 1..=hom_cap {
        let index: BTreeMap<&Key, usize> = words[p - 1]
            .iter()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let mut m = PolyMatrix::zeros(words[p - 1].len(), words[p].len());
        for (c, x) in words[p].iter().enumerate() {
            for (k, poly) in bar_differential(pair, &q, x) {
                let poly = r.reduce(&poly);
                if poly.is_zero() {
                    continue;
                }
                let row = *index.get(&k).ok_or_else(|| {
                    Error::Internal(format!(
                        "bar differential of {x:?} leaves the basis at {k:?}"
                    ))
                })?;
                m.set(row, c, poly);
            }
        }
        diffs.push(GradedMap::new(frees[p].clone(), frees[p - 1].clone(), m)?);
    }
    let complex = GradedComplex::new(frees[0].clone(), diffs, RingMode::R)?;
    Ok(BarComplex {
        ctx: r,
        hom_cap,
        words,
        complex,
    })
}

impl BarComplex {
    pub fn rank(&self, p: usize) -> usize {
        self.words.get(p).map_or(0, |w| w.len())
    }

    pub fn rank_series(&self) -> PowerSeries {
        PowerSeries::new((0..=self.hom_cap).map(|p| self.rank(p) as i64).collect())
    }

    /// Contiguous column ranges of `words[p]` sharing a word shape.
    pub fn word_blocks(&self, p: usize) -> Vec<((Vec<usize>, usize), core::ops::Range<usize>)> {
        let mut out: Vec<((Vec<usize>, usize), core::ops::Range<usize>)> = Vec::new();
        for (i, k) in self.words[p].iter().enumerate() {
            let shape = (k.word(), k.module.map_or(0, |m| m.0));
            match out.last_mut() {
                Some((s, r)) if *s == shape => r.end = i + 1,
                _ => out.push((shape, i..i + 1)),
            }
        }
        out
    }

    /// Which blocks of `d_p` (target word by source word) are nonzero.
    pub fn block_pattern(&self, p: usize) -> Vec<Vec<bool>> {
        let d = self.d(p);
        let rows = self.word_blocks(p - 1);
        let cols = self.word_blocks(p);
        rows.iter()
            .map(|(_, rr)| {
                cols.iter()
                    .map(|(_, cr)| {
                        cr.clone()
                            .any(|c| d.column(c).iter().any(|(r, _)| rr.contains(r)))
                    })
                    .collect()
            })
            .collect()
    }

    /// Degree-`p` differential, zero when the complex was trimmed.
    pub fn d(&self, p: usize) -> PolyMatrix {
        self.complex
            .d(p)
            .map(|m| m.matrix.clone())
            .unwrap_or_else(|| PolyMatrix::zeros(self.rank(p - 1), self.rank(p)))
    }
}

/// Outcome of [`verify_bar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarReport {
    /// `(p, target word, source word)` of the first nonzero entry of
    /// `d_{p} d_{p+1}`.
    pub d_squared_failure: Option<(usize, Key, Key)>,
    pub resolution: ResolutionReport,
}

impl BarReport {
    pub fn passed(&self) -> bool {
        self.d_squared_failure.is_none() && self.resolution.passed()
    }

    pub fn describe(&self) -> String {
        match &self.d_squared_failure {
            Some((p, r, c)) => format!("d_{p} d_{} != 0 from {c:?} to {r:?}", p + 1),
            None => self.resolution.describe(),
        }
    }
}

/// `d² = 0` after normal form, `H_0 ≅ M` and `H_i = 0` for `0 < i < hom_cap`
/// in internal degrees up to `int_cap`.
pub fn verify_bar(bar: &BarComplex, module: &Presentation, int_cap: u32) -> BarReport {
    let mut failure = None;
    for p in 1..bar.hom_cap {
        let dd = bar.d(p).mul(&bar.d(p + 1), &bar.ctx);
        let first = dd.entries().next().map(|(r, c, _)| (r, c));
        if let Some((r, c)) = first {
            failure = Some((p, bar.words[p - 1][r].clone(), bar.words[p + 1][c].clone()));
            break;
        }
    }
    let resolution = verify_resolution(&bar.ctx, &bar.complex, module, int_cap, false);
    BarReport {
        d_squared_failure: failure,
        resolution,
    }
}

/// Rank of `d_p ⊗ k` for `p = 1..=hom_cap`.
pub fn bar_minimality_profile(bar: &BarComplex) -> Vec<usize> {
    (1..=bar.hom_cap)
        .map(|p| bar.d(p).constant_part(&bar.ctx).rank())
        .collect()
}

/// `P^Q_M / (1 - t (P^Q_R - 1))` through `cap`.
pub fn golod_bound_series(pqm: &PowerSeries, pqr: &PowerSeries, cap: usize) -> Option<PowerSeries> {
    let one = PowerSeries::one(cap);
    let den = one.sub(&pqr.truncate(cap).sub(&one).shift());
    pqm.truncate(cap).div(&den)
}

/// Betti numbers of the minimal resolution obtained by splitting off the
/// unit parts of the bar differential.
pub fn split_betti(bar: &BarComplex) -> Vec<i64> {
    let prof = bar_minimality_profile(bar);
    (0..bar.hom_cap)
        .map(|i| {
            let before = if i == 0 { 0 } else { prof[i - 1] };
            bar.rank(i) as i64 - before as i64 - prof[i] as i64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{build_ainf_algebra, build_ainf_module};
    use crate::exactla::Fp;
    use crate::fixtures::pfaffian;
    use crate::resolve::{minimal_resolution, poincare_series};

    #[test]
    fn pfaffian_word_order() {
        let fx = pfaffian(32003).unwrap();
        let src: Vec<_> = bar_words(&fx.a, &fx.k, 5);
        let expect: Vec<(Vec<usize>, usize)> = alloc::vec![
            (alloc::vec![2, 1], 0),
            (alloc::vec![1, 2], 0),
            (alloc::vec![1, 1], 1),
            (alloc::vec![3], 1),
            (alloc::vec![2], 2),
            (alloc::vec![1], 3)
        ];
        assert_eq!(src, expect);
        let tgt = bar_words(&fx.a, &fx.k, 4);
        let expect: Vec<(Vec<usize>, usize)> = alloc::vec![
            (alloc::vec![1, 1], 0),
            (alloc::vec![3], 0),
            (alloc::vec![2], 1),
            (alloc::vec![1], 2)
        ];
        assert_eq!(tgt, expect);
    }

    #[test]
    fn pfaffian_profile() {
        let fx = pfaffian(32003).unwrap();
        let bar = build_bar_complex(&fx.alg, &fx.module, 5).unwrap();
        let rep = verify_bar(&bar, &Presentation::residue_field(&fx.ctx), 9);
        assert!(rep.passed(), "{}", rep.describe());
        assert_eq!(bar_minimality_profile(&bar), alloc::vec![0, 0, 0, 0, 1]);
        assert_eq!(&bar.rank_series().coeffs()[..5], &[1, 3, 8, 21, 56]);
    }

    #[test]
    fn pfaffian_block_patterns() {
        let fx = pfaffian(32003).unwrap();
        let bar = build_bar_complex(&fx.alg, &fx.module, 5).unwrap();
        let (t, f) = (true, false);
        assert_eq!(
            bar.block_pattern(3),
            alloc::vec![alloc::vec![t, t, f], alloc::vec![t, t, t]]
        );
        // m_1 ⊗ 1 out of A_3 has entries generating I, so it vanishes over R
        assert_eq!(
            bar.block_pattern(4),
            alloc::vec![
                alloc::vec![t, f, t, f],
                alloc::vec![t, f, t, t],
                alloc::vec![t, t, t, t]
            ]
        );
        assert_eq!(
            bar.block_pattern(5),
            alloc::vec![
                alloc::vec![t, t, t, f, f, f],
                alloc::vec![t, t, f, t, f, f],
                alloc::vec![t, f, t, f, t, f],
                alloc::vec![f, t, t, f, t, t],
            ]
        );
    }

    #[test]
    fn word_count_identity() {
        let fx = pfaffian(32003).unwrap();
        let bar = build_bar_complex(&fx.alg, &fx.module, 6).unwrap();
        let pqm = poincare_series(&fx.k, 6, 6).unwrap();
        let pqr = poincare_series(&fx.a, 6, 6).unwrap();
        assert_eq!(
            golod_bound_series(&pqm, &pqr, 6).unwrap(),
            bar.rank_series()
        );
    }

    #[test]
    fn hypersurface_bar_is_minimal() {
        let ctx = RingCtx::parse(Fp::new(101), &["x", "y"], &["x^2+y^2"]).unwrap();
        let a = minimal_resolution(&ctx.q(), &Presentation::ring(), 5, 8)
            .unwrap()
            .complex;
        let k = minimal_resolution(&ctx.q(), &Presentation::residue_field(&ctx), 5, 8)
            .unwrap()
            .complex;
        let alg = build_ainf_algebra(&ctx, &a).unwrap();
        let m = build_ainf_module(&alg, &k).unwrap();
        let bar = build_bar_complex(&alg, &m, 5).unwrap();
        let rep = verify_bar(&bar, &Presentation::residue_field(&ctx), 8);
        assert!(rep.passed(), "{}", rep.describe());
        assert!(bar_minimality_profile(&bar).iter().all(|&r| r == 0));
    }

    #[test]
    fn corrupted_m3_breaks_d_squared() {
        let mut fx = pfaffian(32003).unwrap();
        fx.module.components_mut().remove(&(alloc::vec![1, 1], 0));
        let bar = build_bar_complex(&fx.alg, &fx.module, 5).unwrap();
        let rep = verify_bar(&bar, &Presentation::residue_field(&fx.ctx), 8);
        assert!(rep.d_squared_failure.is_some());
    }
}
