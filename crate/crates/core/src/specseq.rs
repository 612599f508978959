//! Spectral sequences of filtered complexes over `k`, the bar filtration
//! of `k ⊗ R ⊗ B̄A ⊗ G`, edge maps, and `Tor` over the `Tor`-algebra.
//!
//! Pages follow the `Z^r / B^r` recipe: `Z^r_p = F_p ∩ d^{-1} F_{p-r}`,
//! `B^r_p = d Z^r_{p+r}`, `E^r_p = Z^r_p / (Z^{r-1}_{p-1} + B^{r-1}_p)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::ainf::{TorAlgebra, TorModule};
use crate::barres::BarComplex;
use crate::exactla::{Echelon, Fp, KMatrix};
use crate::Error;

/// A finite complex of `k`-vector spaces with a weight filtration and an
/// internal grading that the differential preserves.
#[derive(Clone, Debug)]
pub struct FilteredKComplex {
    pub field: Fp,
    /// Filtration weight of every basis vector, per homological degree.
    pub weights: Vec<Vec<usize>>,
    pub internal: Vec<Vec<u32>>,
    /// `d[n]: X_n -> X_{n-1}`; `d[0]` has no rows.
    pub d: Vec<KMatrix>,
}

impl FilteredKComplex {
    /// Checks `d² = 0`, that `d` raises no weight and keeps the internal
    /// degree, and that weights in degree `n` are at most `n`.
    pub fn validate(&self) -> Result<(), Error> {
        for (n, w) in self.weights.iter().enumerate() {
            if w.iter().any(|&p| p > n) {
                return Err(Error::Internal(alloc::format!("weight above degree {n}")));
            }
        }
        for n in 1..self.d.len() {
            let m = &self.d[n];
            for c in 0..m.cols() {
                for r in 0..m.rows() {
                    if m.get(r, c) == 0 {
                        continue;
                    }
                    if self.weights[n - 1][r] > self.weights[n][c]
                        || self.internal[n - 1][r] != self.internal[n][c]
                    {
                        return Err(Error::Internal(alloc::format!(
                            "differential breaks the filtration at degree {n}"
                        )));
                    }
                }
            }
            if n >= 2 && !self.d[n - 1].mul(m).is_zero() {
                return Err(Error::Internal(alloc::format!("d_{} d_{n} != 0", n - 1)));
            }
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.d.len() - 1
    }

    fn dim(&self, n: usize) -> usize {
        self.weights.get(n).map_or(0, |w| w.len())
    }

    fn internal_degrees(&self) -> Vec<u32> {
        let mut e: Vec<u32> = self.internal.iter().flatten().copied().collect();
        e.sort_unstable();
        e.dedup();
        e
    }
}

/// One internal-degree slice with subspace helpers.
struct Slice<'a> {
    x: &'a FilteredKComplex,
    /// Selected basis indices per degree.
    idx: Vec<Vec<usize>>,
}

impl Slice<'_> {
    fn dim(&self, n: usize) -> usize {
        self.idx.get(n).map_or(0, |v| v.len())
    }

    fn weight(&self, n: usize, i: usize) -> usize {
        self.x.weights[n][self.idx[n][i]]
    }

    /// `d` applied to a vector of `X_n`.
    fn apply(&self, n: usize, v: &[u32]) -> Vec<u32> {
        let f = self.x.field;
        let mut out = vec![0; self.dim(n.wrapping_sub(1))];
        if n == 0 {
            return out;
        }
        let m = &self.x.d[n];
        for (c, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let col = self.idx[n][c];
            for (r, o) in out.iter_mut().enumerate() {
                let e = m.get(self.idx[n - 1][r], col);
                if e != 0 {
                    *o = f.mul_add(a, e, *o);
                }
            }
        }
        out
    }

    /// `Z^r_p` in degree `n`; `r = -1` is encoded as `None` (all of `F_p`).
    fn z(&self, n: usize, p: i64, r: Option<usize>) -> Vec<Vec<u32>> {
        let f = self.x.field;
        let dim = self.dim(n);
        if p < 0 || dim == 0 {
            return Vec::new();
        }
        let cols: Vec<usize> = (0..dim)
            .filter(|&i| self.weight(n, i) as i64 <= p)
            .collect();
        let Some(r) = r else {
            return cols.iter().map(|&c| unit(dim, c)).collect();
        };
        let bound = p - r as i64;
        let rows: Vec<usize> = if n == 0 {
            Vec::new()
        } else {
            (0..self.dim(n - 1))
                .filter(|&i| self.weight(n - 1, i) as i64 > bound)
                .collect()
        };
        let mut m = KMatrix::zeros(f, rows.len(), cols.len());
        for (cj, &c) in cols.iter().enumerate() {
            let img = self.apply(n, &unit(dim, c));
            for (ri, &r) in rows.iter().enumerate() {
                m.set(ri, cj, img[r]);
            }
        }
        let k = m.kernel_basis();
        (0..k.cols())
            .map(|j| {
                let mut v = vec![0; dim];
                for (ci, &c) in cols.iter().enumerate() {
                    v[c] = k.get(ci, j);
                }
                v
            })
            .collect()
    }

    /// `Z^{r-1}_{p-1} + B^{r-1}_p` in degree `n`, as an echelon space.
    fn denominator(&self, n: usize, p: i64, r: usize) -> Echelon {
        let prev = r.checked_sub(1);
        let mut e = Echelon::new(self.x.field, self.dim(n));
        for v in self.z(n, p - 1, prev) {
            e.insert(&v);
        }
        for v in self.z(n + 1, p + r as i64 - 1, prev) {
            e.insert(&self.apply(n + 1, &v));
        }
        e
    }
}

fn unit(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Ranks of one page and of its differential.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SSPage {
    pub r: usize,
    /// `dim E^r_{p,q}` keyed by `(p, q)`; zero entries omitted.
    pub ranks: BTreeMap<(usize, usize), usize>,
    /// Rank of `d^r: E^r_{p,q} -> E^r_{p-r,q+r-1}` keyed by the source.
    pub diff_ranks: BTreeMap<(usize, usize), usize>,
}

impl SSPage {
    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.ranks.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn diff_rank(&self, p: usize, q: usize) -> usize {
        self.diff_ranks.get(&(p, q)).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=n} dim E^r_{p,q}`.
    pub fn total(&self, n: usize) -> usize {
        self.ranks
            .iter()
            .filter(|((p, q), _)| p + q == n)
            .map(|(_, v)| v)
            .sum()
    }
}

/// Pages `E^0 .. E^{r_max}` for total degrees `0 .. top - 1` (degree `top`
/// lacks the boundaries from `top + 1`).
pub fn ss_pages(x: &FilteredKComplex, r_max: usize) -> Vec<SSPage> {
    let mut pages: Vec<SSPage> = (0..=r_max)
        .map(|r| SSPage {
            r,
            ..Default::default()
        })
        .collect();
    let top = x.top();
    for e in x.internal_degrees() {
        let idx: Vec<Vec<usize>> = (0..=top)
            .map(|n| (0..x.dim(n)).filter(|&i| x.internal[n][i] == e).collect())
            .collect();
        let s = Slice { x, idx };
        for n in 0..top {
            let pmax = (0..s.dim(n)).map(|i| s.weight(n, i)).max();
            let Some(pmax) = pmax else { continue };
            for p in 0..=pmax {
                for (r, page) in pages.iter_mut().enumerate() {
                    let z = s.z(n, p as i64, Some(r));
                    let den = s.denominator(n, p as i64, r);
                    let mut num = den.clone();
                    for v in &z {
                        num.insert(v);
                    }
                    let dim = num.rank() - den.rank();
                    let q = n - p;
                    if dim > 0 {
                        *page.ranks.entry((p, q)).or_default() += dim;
                    }
                    // d^r lands in column p - r, degree n - 1
                    if n >= 1 && p >= r && dim > 0 {
                        let tden = s.denominator(n - 1, (p - r) as i64, r);
                        let mut img = tden.clone();
                        for v in &z {
                            img.insert(&s.apply(n, v));
                        }
                        let rk = img.rank() - tden.rank();
                        if rk > 0 {
                            *page.diff_ranks.entry((p, q)).or_default() += rk;
                        }
                    }
                }
            }
        }
    }
    pages
}

/// `X = k ⊗_R (R ⊗ B̄A ⊗ G)` filtered by the number of algebra slots.
pub fn avramov_filtered_complex(bar: &BarComplex) -> Result<FilteredKComplex, Error> {
    let ctx = &bar.ctx;
    let top = bar.hom_cap;
    let weights = (0..=top)
        .map(|p| bar.words[p].iter().map(|k| k.alg.len()).collect())
        .collect();
    let internal = (0..=top)
        .map(|p| bar.complex.module(p).degrees().to_vec())
        .collect();
    let mut d = vec![KMatrix::zeros(ctx.field(), 0, bar.rank(0))];
    for p in 1..=top {
        d.push(bar.d(p).constant_part(ctx));
    }
    let x = FilteredKComplex {
        field: ctx.field(),
        weights,
        internal,
        d,
    };
    x.validate()?;
    Ok(x)
}

/// What happens to column 0 in total degree `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub q: usize,
    pub injective: bool,
    pub e2_rank: usize,
    /// Ranks of `d^r` into `E^r_{0,q}`, for `r = 1..`.
    pub incoming: Vec<usize>,
}

/// Needs `r_max >= floor((q+1)/2)` for every reported `q`.
pub fn edge_report(pages: &[SSPage], q_max: usize) -> Result<Vec<EdgeRecord>, Error> {
    let r_max = pages.len().saturating_sub(1);
    let need = q_max.div_ceil(2);
    if r_max < need {
        return Err(Error::CapExceeded {
            requested: need,
            available: r_max,
        });
    }
    Ok((0..=q_max)
        .map(|q| {
            let incoming: Vec<usize> = (1..=r_max)
                .map(|r| {
                    if q + 1 >= r {
                        pages[r].diff_rank(r, q + 1 - r)
                    } else {
                        0
                    }
                })
                .collect();
            EdgeRecord {
                q,
                injective: incoming.iter().all(|&x| x == 0),
                e2_rank: pages.get(2).map_or(0, |p| p.rank(0, q)),
                incoming,
            }
        })
        .collect())
}

/// Ranks of `Tor^{Ā}_p(Ḡ, k)_q` from the classical bar complex
/// `B̄(Ā) ⊗ Ḡ`, keyed by `(p, q)`, for `p <= p_cap` and `q <= q_cap`.
pub fn tor_over_tor_ranks(
    alg: &TorAlgebra,
    module: &TorModule,
    field: Fp,
    p_cap: usize,
    q_cap: usize,
) -> Result<BTreeMap<(usize, usize), usize>, Error> {
    let la = alg.gens.len().saturating_sub(1);
    let lg = module.gens.len().saturating_sub(1);
    let arank = |i: usize| alg.gens.get(i).map_or(0, |g| g.rank());
    let grank = |i: usize| module.gens.get(i).map_or(0, |g| g.rank());
    // a basis element: (slot degrees, slot generators, module degree, module generator)
    type Elem = (Vec<(usize, usize)>, (usize, usize));
    let elems = |p: usize, q: usize| -> Vec<Elem> {
        let mut out = Vec::new();
        fn rec(
            p: usize,
            left: usize,
            la: usize,
            arank: &dyn Fn(usize) -> usize,
            cur: &mut Vec<(usize, usize)>,
            out: &mut Vec<(Vec<(usize, usize)>, usize)>,
        ) {
            if cur.len() == p {
                out.push((cur.clone(), left));
                return;
            }
            for i in 1..=la.min(left) {
                for g in 0..arank(i) {
                    cur.push((i, g));
                    rec(p, left - i, la, arank, cur, out);
                    cur.pop();
                }
            }
        }
        let mut words = Vec::new();
        rec(p, q, la, &arank, &mut Vec::new(), &mut words);
        for (w, gdeg) in words {
            if gdeg <= lg {
                for g in 0..grank(gdeg) {
                    out.push((w.clone(), (gdeg, g)));
                }
            }
        }
        out
    };
    // internal degrees are carried implicitly: products preserve them
    let diff = |p: usize, q: usize| -> KMatrix {
        let src = elems(p, q);
        let tgt = elems(p - 1, q);
        let index: BTreeMap<&Elem, usize> = tgt.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut m = KMatrix::zeros(field, tgt.len(), src.len());
        for (c, (w, (gd, gg))) in src.iter().enumerate() {
            let mut sign_odd = false;
            for j in 0..p {
                // bars passed so far carry degree |a_t| + 1
                let (i, a) = w[j];
                let last = j + 1 == p;
                let coef_col: Vec<(usize, u32)> = if last {
                    let Some(block) = module.products.get(&(i, *gd)) else {
                        sign_odd ^= (i + 1) % 2 == 1;
                        continue;
                    };
                    let col = a * grank(*gd) + gg;
                    (0..block.rows())
                        .map(|r| (r, block.get(r, col)))
                        .filter(|x| x.1 != 0)
                        .collect()
                } else {
                    let (i2, b) = w[j + 1];
                    let Some(block) = alg.products.get(&(i, i2)) else {
                        sign_odd ^= (i + 1) % 2 == 1;
                        continue;
                    };
                    let col = a * arank(i2) + b;
                    (0..block.rows())
                        .map(|r| (r, block.get(r, col)))
                        .filter(|x| x.1 != 0)
                        .collect()
                };
                // sign (-1)^{Σ_{t<j}(|a_t|+1)} · (-1)^{|a_j|}
                let neg = sign_odd ^ (i % 2 == 1);
                for (r, v) in coef_col {
                    let key = if last {
                        (w[..j].to_vec(), (i + gd, r))
                    } else {
                        let mut nw = w[..j].to_vec();
                        nw.push((i + w[j + 1].0, r));
                        nw.extend_from_slice(&w[j + 2..]);
                        (nw, (*gd, *gg))
                    };
                    let row = index[&key];
                    let v = if neg { field.neg(v) } else { v };
                    m.set(row, c, field.add(m.get(row, c), v));
                }
                sign_odd ^= (i + 1) % 2 == 1;
            }
        }
        m
    };
    let mut out = BTreeMap::new();
    for q in 0..=q_cap {
        for p in 0..=p_cap.min(q) {
            let dim = elems(p, q).len();
            if dim == 0 {
                continue;
            }
            let rk_out = if p >= 1 { diff(p, q).rank() } else { 0 };
            let d_in = diff(p + 1, q);
            if p >= 1 && !diff(p, q).mul(&d_in).is_zero() {
                return Err(Error::Internal(alloc::format!(
                    "bar complex over Tor: d² != 0 at ({p}, {q})"
                )));
            }
            let h = dim - rk_out - d_in.rank();
            if h > 0 {
                out.insert((p, q), h);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{build_ainf_algebra, build_ainf_module, induced_tor_structures};
    use crate::barres::{bar_minimality_profile, build_bar_complex};
    use crate::fixtures::pfaffian;
    use crate::gradedring::RingCtx;
    use crate::resolve::{minimal_resolution, Presentation};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_filtered(seed: u64) -> FilteredKComplex {
        // X = cone of a random map between two-term complexes, weights random
        let f = Fp::new(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = [3usize, 4, 3];
        let weights: Vec<Vec<usize>> = dims
            .iter()
            .enumerate()
            .map(|(deg, &n)| (0..n).map(|_| rng.gen_range(0..=deg)).collect())
            .collect();
        let internal = dims.iter().map(|&n| vec![0; n]).collect();
        // d_2 = B, d_1 = A with A B = 0: choose B then A from the left kernel
        let mut d = vec![KMatrix::zeros(f, 0, 3)];
        let mut a = KMatrix::zeros(f, 3, 4);
        let mut b = KMatrix::zeros(f, 4, 3);
        for r in 0..4 {
            for c in 0..3 {
                if weights[1][r] <= weights[2][c] {
                    b.set(r, c, rng.gen_range(0..5));
                }
            }
        }
        let bt = b.transpose();
        let k = bt.kernel_basis();
        for r in 0..3 {
            for c in 0..4 {
                if weights[0][r] > weights[1][c] {
                    continue;
                }
                let mut v = 0;
                for j in 0..k.cols() {
                    v = f.add(v, f.mul(k.get(c, j), rng.gen_range(0..5)));
                }
                a.set(r, c, v);
            }
        }
        // keep only filtration-respecting combos: zero columns that break it
        let ab = a.mul(&b);
        if !ab.is_zero() {
            a = KMatrix::zeros(f, 3, 4);
        }
        d.push(a);
        d.push(b);
        d.push(KMatrix::zeros(f, 3, 0));
        let mut weights = weights;
        weights.push(Vec::new());
        let mut internal: Vec<Vec<u32>> = internal;
        internal.push(Vec::new());
        FilteredKComplex {
            field: f,
            weights,
            internal,
            d,
        }
    }

    #[test]
    fn zero_differential_pages_agree() {
        let f = Fp::new(7);
        let x = FilteredKComplex {
            field: f,
            weights: vec![vec![0, 0], vec![1, 0], vec![]],
            internal: vec![vec![0, 0], vec![0, 0], vec![]],
            d: vec![
                KMatrix::zeros(f, 0, 2),
                KMatrix::zeros(f, 2, 2),
                KMatrix::zeros(f, 2, 0),
            ],
        };
        let pages = ss_pages(&x, 3);
        for p in &pages {
            assert_eq!(p.ranks, pages[0].ranks);
        }
    }

    #[test]
    fn acyclic_column_collapses() {
        // X_1 -> X_0 an isomorphism within weight 0
        let f = Fp::new(7);
        let x = FilteredKComplex {
            field: f,
            weights: vec![vec![0], vec![0], vec![]],
            internal: vec![vec![0], vec![0], vec![]],
            d: vec![
                KMatrix::zeros(f, 0, 1),
                KMatrix::identity(f, 1),
                KMatrix::zeros(f, 1, 0),
            ],
        };
        let pages = ss_pages(&x, 2);
        assert!(pages[1].ranks.is_empty());
    }

    #[test]
    fn convergence_on_random_complexes() {
        for seed in 0..30 {
            let x = random_filtered(seed);
            x.validate().unwrap();
            let pages = ss_pages(&x, 4);
            // direct homology in degree 1
            let h1 = x.weights[1].len() - x.d[1].rank() - x.d[2].rank();
            assert_eq!(pages[4].total(1), h1, "seed {seed}");
            let h0 = x.weights[0].len() - x.d[1].rank();
            assert_eq!(pages[4].total(0), h0, "seed {seed}");
            for r in 0..4 {
                for (&(p, q), &dim) in &pages[r].ranks {
                    let out = pages[r].diff_rank(p, q);
                    let inc = if q + 1 >= r {
                        pages[r].diff_rank(p + r, q + 1 - r)
                    } else {
                        0
                    };
                    assert_eq!(
                        pages[r + 1].rank(p, q),
                        dim - out - inc,
                        "seed {seed} r {r} ({p},{q})"
                    );
                }
            }
        }
    }

    #[test]
    fn pfaffian_pages() {
        let fx = pfaffian(32003).unwrap();
        let bar = build_bar_complex(&fx.alg, &fx.module, 6).unwrap();
        let x = avramov_filtered_complex(&bar).unwrap();
        let pages = ss_pages(&x, 4);
        let res =
            minimal_resolution(&bar.ctx, &Presentation::residue_field(&bar.ctx), 5, 10).unwrap();
        for n in 0..=5 {
            assert_eq!(pages[4].total(n), res.complex.rank(n), "total degree {n}");
        }
        let (ta, tm) = induced_tor_structures(&fx.alg, &fx.module).unwrap();
        let tor = tor_over_tor_ranks(&ta, &tm, fx.ctx.field(), 5, 5).unwrap();
        for (&(p, q), &v) in &pages[2].ranks {
            if p + q <= 5 {
                assert_eq!(tor.get(&(p, q)).copied().unwrap_or(0), v, "({p},{q})");
            }
        }
        for (&(p, q), &v) in &tor {
            if p + q <= 5 {
                assert_eq!(pages[2].rank(p, q), v, "({p},{q})");
            }
        }
        assert_eq!(bar_minimality_profile(&bar)[4], 1);
        // k: edge maps into Tor^R(k, k) are injective
        let er = edge_report(&pages, 4).unwrap();
        assert!(er.iter().all(|e| e.injective), "{er:?}");
        assert!(edge_report(&pages[..2], 4).is_err());
    }

    #[test]
    fn ring_as_module_has_a_non_injective_edge() {
        // M = R: Tor^Q_1(R, k) = I/mI but Tor^R_1(R, k) = 0
        let ctx = RingCtx::parse(Fp::new(101), &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let a = minimal_resolution(&ctx.q(), &Presentation::ring(), 4, 8)
            .unwrap()
            .complex;
        let alg = build_ainf_algebra(&ctx, &a).unwrap();
        let m = build_ainf_module(&alg, &a).unwrap();
        let bar = build_bar_complex(&alg, &m, 4).unwrap();
        let pages = ss_pages(&avramov_filtered_complex(&bar).unwrap(), 2);
        let er = edge_report(&pages, 2).unwrap();
        assert!(er[0].injective);
        assert!(!er[1].injective);
        assert_eq!(er[1].incoming[0], 3);
        // R is free over itself: everything dies except degree 0
        assert_eq!(pages[2].total(0), 1);
        assert_eq!(pages[2].total(1) + pages[2].total(2), 0);
    }
}
