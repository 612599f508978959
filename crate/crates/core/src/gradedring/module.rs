use alloc::vec;
use alloc::vec::Vec;

use super::poly::Poly;
use super::ring::RingCtx;
use crate::exactla::KMatrix;
use crate::Error;

/// A graded free module `⊕ S(-a_i)`, recorded by its generator degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedFree {
    degrees: Vec<u32>,
}

/// Coordinates of the degree-`d` piece of a graded free module:
/// generator-major, each block in the ring's monomial basis.
#[derive(Clone, Debug)]
pub struct Layout {
    pub d: u32,
    pub offsets: Vec<usize>,
    pub dims: Vec<usize>,
    pub total: usize,
}

impl Layout {
    pub fn block(&self, g: usize) -> core::ops::Range<usize> {
        self.offsets[g]..self.offsets[g] + self.dims[g]
    }
}

impl GradedFree {
    pub fn new(degrees: Vec<u32>) -> Self {
        GradedFree { degrees }
    }

    pub fn zero() -> Self {
        GradedFree::default()
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    #[inline]
    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.degrees.iter().copied().max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.degrees.iter().copied().min()
    }

    pub fn direct_sum(&self, other: &GradedFree) -> GradedFree {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        GradedFree { degrees }
    }

    pub fn layout(&self, ctx: &RingCtx, d: u32) -> Layout {
        let mut offsets = Vec::with_capacity(self.rank());
        let mut dims = Vec::with_capacity(self.rank());
        let mut total = 0;
        for &a in &self.degrees {
            offsets.push(total);
            let n = if a <= d { ctx.dim(d - a) } else { 0 };
            dims.push(n);
            total += n;
        }
        Layout {
            d,
            offsets,
            dims,
            total,
        }
    }

    pub fn dim(&self, ctx: &RingCtx, d: u32) -> usize {
        self.degrees
            .iter()
            .filter(|&&a| a <= d)
            .map(|&a| ctx.dim(d - a))
            .sum()
    }

    /// Coordinates of a homogeneous element of degree `d`.
    pub fn to_coords(&self, ctx: &RingCtx, elem: &[Poly], d: u32) -> Vec<u32> {
        let lay = self.layout(ctx, d);
        let mut v = vec![0; lay.total];
        for (g, p) in elem.iter().enumerate() {
            if p.is_zero() || self.degrees[g] > d {
                continue;
            }
            let c = ctx.coords(p, d - self.degrees[g]);
            v[lay.block(g)].copy_from_slice(&c);
        }
        v
    }

    pub fn from_coords(&self, ctx: &RingCtx, v: &[u32], d: u32) -> Vec<Poly> {
        let lay = self.layout(ctx, d);
        (0..self.rank())
            .map(|g| {
                if lay.dims[g] == 0 {
                    Poly::zero()
                } else {
                    ctx.from_coords(&v[lay.block(g)], d - self.degrees[g])
                }
            })
            .collect()
    }

    /// Multiplies a degree-`d` coordinate vector by `x_j`.
    pub fn mul_var(&self, ctx: &RingCtx, d: u32, j: usize, v: &[u32]) -> Vec<u32> {
        let lo = self.layout(ctx, d);
        let hi = self.layout(ctx, d + 1);
        let mut out = vec![0; hi.total];
        for g in 0..self.rank() {
            if lo.dims[g] == 0 {
                continue;
            }
            let e = d - self.degrees[g];
            ctx.mul_var_into(e, j, &v[lo.block(g)], 1, &mut out[hi.block(g)]);
        }
        out
    }
}

/// A sparse matrix of polynomials, stored by column with increasing rows.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Poly)>>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![Vec::new(); cols],
        }
    }

    /// From row-major dense entries.
    pub fn from_rows(rows: Vec<Vec<Poly>>, cols: usize) -> Self {
        let mut m = PolyMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, p) in row.into_iter().enumerate() {
                if !p.is_zero() {
                    m.data[c].push((r, p));
                }
            }
        }
        m
    }

    /// From columns given as dense polynomial vectors.
    pub fn from_columns(rows: usize, cols: Vec<Vec<Poly>>) -> Self {
        let data = cols
            .into_iter()
            .map(|col| {
                assert_eq!(col.len(), rows);
                col.into_iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .collect()
            })
            .collect::<Vec<_>>();
        PolyMatrix {
            rows,
            cols: data.len(),
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, Poly)] {
        &self.data[c]
    }

    pub fn dense_column(&self, c: usize) -> Vec<Poly> {
        let mut v = vec![Poly::zero(); self.rows];
        for (r, p) in &self.data[c] {
            v[*r] = p.clone();
        }
        v
    }

    pub fn get(&self, r: usize, c: usize) -> Poly {
        match self.data[c].binary_search_by_key(&r, |e| e.0) {
            Ok(i) => self.data[c][i].1.clone(),
            Err(_) => Poly::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        assert!(r < self.rows && c < self.cols);
        let col = &mut self.data[c];
        match col.binary_search_by_key(&r, |e| e.0) {
            Ok(i) if p.is_zero() => {
                col.remove(i);
            }
            Ok(i) => col[i].1 = p,
            Err(_) if p.is_zero() => {}
            Err(i) => col.insert(i, (r, p)),
        }
    }

    /// Adds `p` to entry `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, p: &Poly, ctx: &RingCtx) {
        if p.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, cur.add(p, ctx.field()));
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, p)| (*r, c, p)))
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for (r, c, p) in self.entries() {
            t.data[r].push((c, p.clone()));
        }
        t
    }

    pub fn map_entries(&self, mut f: impl FnMut(&Poly) -> Poly) -> PolyMatrix {
        let data = self
            .data
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(r, p)| {
                        let q = f(p);
                        (!q.is_zero()).then_some((*r, q))
                    })
                    .collect()
            })
            .collect();
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: u32, ctx: &RingCtx) -> PolyMatrix {
        self.map_entries(|p| p.scale(c, ctx.field()))
    }

    /// Entries reduced in the ring of `ctx`.
    pub fn reduced(&self, ctx: &RingCtx) -> PolyMatrix {
        self.map_entries(|p| ctx.reduce(p))
    }

    pub fn add(&self, other: &PolyMatrix, ctx: &RingCtx) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, c, p) in other.entries() {
            out.add_to(r, c, p, ctx);
        }
        out
    }

    /// `self * other`, reduced in `ctx`.
    pub fn mul(&self, other: &PolyMatrix, ctx: &RingCtx) -> PolyMatrix {
        assert_eq!(self.cols, other.rows);
        let f = ctx.field();
        let mut data = Vec::with_capacity(other.cols);
        for col in &other.data {
            let mut acc = vec![Poly::zero(); self.rows];
            for (k, q) in col {
                for (r, p) in &self.data[*k] {
                    acc[*r] = acc[*r].add(&p.mul(q, f), f);
                }
            }
            data.push(
                acc.into_iter()
                    .enumerate()
                    .filter_map(|(r, p)| {
                        let p = ctx.reduce(&p);
                        (!p.is_zero()).then_some((r, p))
                    })
                    .collect(),
            );
        }
        PolyMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn apply(&self, v: &[Poly], ctx: &RingCtx) -> Vec<Poly> {
        assert_eq!(v.len(), self.cols);
        let f = ctx.field();
        let mut out = vec![Poly::zero(); self.rows];
        for (c, q) in v.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (r, p) in &self.data[c] {
                out[*r] = out[*r].add(&p.mul(q, f), f);
            }
        }
        out.into_iter().map(|p| ctx.reduce(&p)).collect()
    }

    /// The matrix of constant terms.
    pub fn constant_part(&self, ctx: &RingCtx) -> KMatrix {
        let mut m = KMatrix::zeros(ctx.field(), self.rows, self.cols);
        for (r, c, p) in self.entries() {
            m.set(r, c, p.constant_term());
        }
        m
    }

    /// First entry with a nonzero constant term.
    pub fn first_unit(&self) -> Option<(usize, usize)> {
        self.entries()
            .find(|(_, _, p)| p.constant_term() != 0)
            .map(|(r, c, _)| (r, c))
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, below.cols);
        let mut out = self.clone();
        out.rows += below.rows;
        for (c, col) in below.data.iter().enumerate() {
            out.data[c].extend(col.iter().map(|(r, p)| (r + self.rows, p.clone())));
        }
        out
    }

    /// Horizontal concatenation.
    pub fn augment(&self, right: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.rows, right.rows);
        let mut out = self.clone();
        out.cols += right.cols;
        out.data.extend(right.data.iter().cloned());
        out
    }
}

/// A homogeneous map of graded free modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub src: GradedFree,
    pub tgt: GradedFree,
    pub matrix: PolyMatrix,
}

impl GradedMap {
    /// Checks shapes and that entry `(r, c)` is homogeneous of degree
    /// `src(c) - tgt(r)`.
    pub fn new(src: GradedFree, tgt: GradedFree, matrix: PolyMatrix) -> Result<Self, Error> {
        if matrix.rows() != tgt.rank() || matrix.cols() != src.rank() {
            return Err(Error::Shape {
                expected: (tgt.rank(), src.rank()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        for (r, c, p) in matrix.entries() {
            let want = src.degree(c) as i64 - tgt.degree(r) as i64;
            if p.homogeneous_degree().map(|d| d as i64) != Some(want) {
                return Err(Error::Inhomogeneous {
                    what: alloc::format!("map entry ({r}, {c})"),
                });
            }
        }
        Ok(GradedMap { src, tgt, matrix })
    }

    pub fn zero(src: GradedFree, tgt: GradedFree) -> Self {
        let matrix = PolyMatrix::zeros(tgt.rank(), src.rank());
        GradedMap { src, tgt, matrix }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap, ctx: &RingCtx) -> GradedMap {
        assert_eq!(self.src, other.tgt);
        GradedMap {
            src: other.src.clone(),
            tgt: self.tgt.clone(),
            matrix: self.matrix.mul(&other.matrix, ctx),
        }
    }

    pub fn component_matrix(&self, ctx: &RingCtx, d: u32) -> KMatrix {
        graded_component_matrix(self, d, ctx)
    }
}

/// The `k`-linear map between degree-`d` pieces induced by `f`.
///
/// Bases are generator-major: for each generator in order, the ring's
/// degree-`(d - deg g)` monomial basis, largest first. Over `R` the images
/// are normal forms.
pub fn graded_component_matrix(f: &GradedMap, d: u32, ctx: &RingCtx) -> KMatrix {
    let fp = ctx.field();
    let src = f.src.layout(ctx, d);
    let tgt = f.tgt.layout(ctx, d);
    let mut m = KMatrix::zeros(fp, tgt.total, src.total);
    for c in 0..f.src.rank() {
        if src.dims[c] == 0 {
            continue;
        }
        let e = d - f.src.degree(c);
        let basis = ctx.basis(e).to_vec();
        for (k, mu) in basis.iter().enumerate() {
            let col = src.offsets[c] + k;
            for (r, p) in f.matrix.column(c) {
                let t = f.tgt.degree(*r);
                if t > d || tgt.dims[*r] == 0 {
                    continue;
                }
                let img = p.mul_monomial(mu, 1, fp);
                let coords = ctx.coords(&img, d - t);
                for (i, v) in coords.into_iter().enumerate() {
                    if v != 0 {
                        m.set(tgt.offsets[*r] + i, col, v);
                    }
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;

    fn xyz(ideal: &[&str]) -> RingCtx {
        RingCtx::parse(Fp::new(32003), &["x", "y", "z"], ideal).unwrap()
    }

    fn row_map(ctx: &RingCtx, entries: &[&str], src_deg: u32) -> GradedMap {
        let row: Vec<Poly> = entries.iter().map(|s| ctx.parse_poly(s).unwrap()).collect();
        let n = row.len();
        GradedMap::new(
            GradedFree::new(vec![src_deg; n]),
            GradedFree::new(vec![0]),
            PolyMatrix::from_rows(vec![row], n),
        )
        .unwrap()
    }

    #[test]
    fn zero_map_component() {
        let ctx = xyz(&[]).q();
        let f = GradedMap::zero(GradedFree::new(vec![1, 1]), GradedFree::new(vec![0]));
        let m = graded_component_matrix(&f, 2, &ctx);
        assert_eq!((m.rows(), m.cols()), (6, 6));
        assert!(m.is_zero());
    }

    #[test]
    fn variables_give_identity_in_degree_one() {
        let ctx = xyz(&[]).q();
        let f = row_map(&ctx, &["x", "y", "z"], 1);
        let m = graded_component_matrix(&f, 1, &ctx);
        assert_eq!(m, KMatrix::identity(ctx.field(), 3));
    }

    #[test]
    fn koszul_d1_degree_two_rank() {
        let ctx = xyz(&[]).q();
        let f = row_map(&ctx, &["x", "y", "z"], 1);
        let m = graded_component_matrix(&f, 2, &ctx);
        assert_eq!((m.rows(), m.cols()), (6, 9));
        assert_eq!(m.rank(), 6);
    }

    #[test]
    fn composite_component_is_product() {
        let ctx = xyz(&["x^2", "-y*z", "x*y+z^2", "-x*z", "y^2"]);
        let p = |s: &str| ctx.parse_poly(s).unwrap();
        let g = GradedMap::new(
            GradedFree::new(vec![2, 3]),
            GradedFree::new(vec![1, 1]),
            PolyMatrix::from_rows(vec![vec![p("x"), p("y^2")], vec![p("z"), p("x*y-z^2")]], 2),
        )
        .unwrap();
        let f = row_map(&ctx, &["x", "y+z"], 1);
        let fg = f.compose(&g, &ctx.q());
        for d in 0..6 {
            for c in [ctx.q(), ctx.r()] {
                let lhs = graded_component_matrix(&fg, d, &c);
                let rhs =
                    graded_component_matrix(&f, d, &c).mul(&graded_component_matrix(&g, d, &c));
                assert_eq!(lhs, rhs, "degree {d}");
            }
        }
    }

    #[test]
    fn coords_roundtrip() {
        let ctx = xyz(&["x^2", "y^2"]);
        let m = GradedFree::new(vec![0, 1]);
        let e = vec![
            ctx.parse_poly("x*y*z").unwrap(),
            ctx.parse_poly("z^2+x*y").unwrap(),
        ];
        let v = m.to_coords(&ctx, &e, 3);
        assert_eq!(m.from_coords(&ctx, &v, 3), e);
    }
}
