use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use super::poly::{parse_poly, Monomial, ParseError, Poly, MAX_VARS};
use crate::exactla::{Echelon, Fp};
use crate::Error;

/// Internal degrees at or above this are outside the per-degree caches.
pub const MAX_DEGREE: usize = 96;

/// Whether arithmetic happens in `Q = k[vars]` or in `R = Q/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingMode {
    Q,
    R,
}

struct MonoTable {
    monos: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

struct QuotDegree {
    /// `I_d` in the monomial coordinates of `Q_d`.
    ideal: Echelon,
    /// Position in `Q_d` of each standard monomial.
    standard: Vec<usize>,
    /// Inverse of `standard`.
    std_pos: Vec<Option<usize>>,
    basis: Vec<Monomial>,
}

/// Multiplication by `x_j` from degree `d` to `d + 1`, as sparse columns.
type UpTable = Vec<Vec<Vec<(usize, u32)>>>;

struct Cache {
    monos: Vec<OnceBox<MonoTable>>,
    quot: Vec<OnceBox<QuotDegree>>,
    up_q: Vec<OnceBox<UpTable>>,
    up_r: Vec<OnceBox<UpTable>>,
}

impl Cache {
    fn new() -> Self {
        fn mk<T>() -> Vec<OnceBox<T>> {
            (0..MAX_DEGREE).map(|_| OnceBox::new()).collect()
        }
        Cache {
            monos: mk(),
            quot: mk(),
            up_q: mk(),
            up_r: mk(),
        }
    }
}

/// A standard graded polynomial ring, optionally modulo a homogeneous ideal.
///
/// Immutable after construction. Per-degree data (monomial tables, the
/// quotient model, multiplication tables) is computed on first use and
/// shared between clones and between the `Q` and `R` views of one ring.
#[derive(Clone)]
pub struct RingCtx {
    field: Fp,
    vars: Arc<Vec<String>>,
    ideal: Arc<Vec<Poly>>,
    mode: RingMode,
    cache: Arc<Cache>,
}

impl core::fmt::Debug for RingCtx {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("RingCtx")
            .field("p", &self.field.p())
            .field("vars", &self.vars)
            .field("ideal", &self.ideal)
            .field("mode", &self.mode)
            .finish()
    }
}

impl RingCtx {
    /// The quotient ring `k[vars]/(ideal)`, in `R` mode.
    pub fn new(field: Fp, vars: Vec<String>, ideal: Vec<Poly>) -> Result<Self, Error> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        let mut gens = Vec::new();
        for (i, g) in ideal.into_iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous {
                    what: alloc::format!("ideal generator {i}"),
                });
            }
            gens.push(g);
        }
        Ok(RingCtx {
            field,
            vars: Arc::new(vars),
            ideal: Arc::new(gens),
            mode: RingMode::R,
            cache: Arc::new(Cache::new()),
        })
    }

    /// Parses ideal generators written in the polynomial grammar.
    pub fn parse(field: Fp, vars: &[&str], ideal: &[&str]) -> Result<Self, Error> {
        let names: Vec<String> = vars.iter().map(|s| String::from(*s)).collect();
        let gens = ideal
            .iter()
            .map(|t| parse_poly(t, &names, field))
            .collect::<Result<Vec<_>, ParseError>>()?;
        Self::new(field, names, gens)
    }

    pub fn with_mode(&self, mode: RingMode) -> RingCtx {
        RingCtx {
            mode,
            ..self.clone()
        }
    }

    /// The ambient polynomial ring `Q` (sharing caches).
    pub fn q(&self) -> RingCtx {
        self.with_mode(RingMode::Q)
    }

    /// The quotient `R` (sharing caches).
    pub fn r(&self) -> RingCtx {
        self.with_mode(RingMode::R)
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn mode(&self) -> RingMode {
        self.mode
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn ideal(&self) -> &[Poly] {
        &self.ideal
    }

    pub fn parse_poly(&self, text: &str) -> Result<Poly, ParseError> {
        parse_poly(text, &self.vars, self.field)
    }

    pub fn display(&self, f: &Poly) -> String {
        f.display(&self.vars, self.field)
    }

    /// True when every ideal generator lies in the square of the irrelevant ideal.
    pub fn ideal_in_square_of_max(&self) -> bool {
        self.ideal
            .iter()
            .all(|g| g.homogeneous_degree().is_some_and(|d| d >= 2))
    }

    fn mono_table(&self, d: u32) -> &MonoTable {
        let slot = &self.cache.monos[check_degree(d)];
        slot.get_or_init(|| {
            let monos = Monomial::all_of_degree(self.nvars(), d);
            let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            Box::new(MonoTable { monos, index })
        })
    }

    fn quot(&self, d: u32) -> &QuotDegree {
        let slot = &self.cache.quot[check_degree(d)];
        if let Some(q) = slot.get() {
            return q;
        }
        // build lower degrees first so the recursion stays shallow
        for e in 0..d {
            self.quot(e);
        }
        slot.get_or_init(|| Box::new(self.build_quot(d)))
    }

    fn build_quot(&self, d: u32) -> QuotDegree {
        let f = self.field;
        let table = self.mono_table(d);
        let dim = table.monos.len();
        let mut ideal = Echelon::new(f, dim);
        if d > 0 {
            let below = self.quot(d - 1);
            let lower = self.mono_table(d - 1);
            for row in below.ideal.basis() {
                for j in 0..self.nvars() {
                    let xj = Monomial::var(j);
                    let mut v = alloc::vec![0u32; dim];
                    for (k, &c) in row.iter().enumerate() {
                        if c != 0 {
                            v[table.index[&lower.monos[k].mul(&xj)]] = c;
                        }
                    }
                    ideal.insert(&v);
                }
            }
        }
        for g in self.ideal.iter() {
            if g.homogeneous_degree() == Some(d) {
                let mut v = alloc::vec![0u32; dim];
                for (m, c) in g.terms() {
                    v[table.index[m]] = *c;
                }
                ideal.insert(&v);
            }
        }
        let mut is_pivot = alloc::vec![false; dim];
        for &p in ideal.pivots() {
            is_pivot[p] = true;
        }
        let standard: Vec<usize> = (0..dim).filter(|&i| !is_pivot[i]).collect();
        let mut std_pos = alloc::vec![None; dim];
        for (k, &i) in standard.iter().enumerate() {
            std_pos[i] = Some(k);
        }
        let basis = standard.iter().map(|&i| table.monos[i]).collect();
        QuotDegree {
            ideal,
            standard,
            std_pos,
            basis,
        }
    }

    /// Basis monomials of the degree-`d` piece: all monomials over `Q`, the
    /// standard monomials over `R`. Largest first.
    pub fn basis(&self, d: u32) -> &[Monomial] {
        match self.mode {
            RingMode::Q => &self.mono_table(d).monos,
            RingMode::R => &self.quot(d).basis,
        }
    }

    /// Standard monomials of `R_d` regardless of mode.
    pub fn quotient_basis(&self, d: u32) -> &[Monomial] {
        &self.quot(d).basis
    }

    pub fn dim(&self, d: u32) -> usize {
        self.basis(d).len()
    }

    /// Dimension of `I_d`.
    pub fn ideal_dim(&self, d: u32) -> usize {
        self.quot(d).ideal.rank()
    }

    /// Largest degree with `R_d != 0` if `R` is Artinian and this is visible
    /// by degree `search`.
    pub fn top_degree(&self, search: u32) -> Option<u32> {
        (0..=search)
            .find(|&d| self.quot(d).basis.is_empty())
            .map(|d| d.saturating_sub(1))
    }

    /// Coordinates of the degree-`d` part of `f` in the current mode (the
    /// normal form over `R`). Terms of other degrees are ignored.
    pub fn coords(&self, f: &Poly, d: u32) -> Vec<u32> {
        let table = self.mono_table(d);
        let mut v = alloc::vec![0u32; table.monos.len()];
        for (m, c) in f.terms() {
            if m.degree() == d {
                v[table.index[m]] = *c;
            }
        }
        match self.mode {
            RingMode::Q => v,
            RingMode::R => self.reduce_q_coords(&v, d),
        }
    }

    fn reduce_q_coords(&self, v: &[u32], d: u32) -> Vec<u32> {
        let q = self.quot(d);
        let w = q.ideal.reduce(v);
        q.standard.iter().map(|&i| w[i]).collect()
    }

    /// Coordinates of `f` over the standard monomials of `R_d`.
    pub fn normal_form(&self, f: &Poly, d: u32) -> Vec<u32> {
        self.r().coords(f, d)
    }

    pub fn from_coords(&self, v: &[u32], d: u32) -> Poly {
        let basis = self.basis(d);
        debug_assert_eq!(basis.len(), v.len());
        // bases are sorted largest first, so the terms come out normalized
        let mut terms = Vec::new();
        for (m, &c) in basis.iter().zip(v) {
            if c != 0 {
                terms.push((*m, c));
            }
        }
        Poly::from_sorted_terms(terms)
    }

    /// Reduces `f` in the current mode, degree by degree.
    pub fn reduce(&self, f: &Poly) -> Poly {
        if self.mode == RingMode::Q || self.ideal.is_empty() || f.is_zero() {
            return f.clone();
        }
        let mut degs: Vec<u32> = f.terms().iter().map(|(m, _)| m.degree()).collect();
        degs.dedup();
        let mut out = Poly::zero();
        for d in degs {
            let part = self.from_coords(&self.coords(f, d), d);
            out = out.add(&part, self.field);
        }
        out
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(b, self.field))
    }

    /// Whether `f` is zero in the current mode.
    pub fn is_zero(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    fn up_table(&self, d: u32) -> &UpTable {
        let slots = match self.mode {
            RingMode::Q => &self.cache.up_q,
            RingMode::R => &self.cache.up_r,
        };
        slots[check_degree(d)].get_or_init(|| {
            let basis = self.basis(d).to_vec();
            let table = (0..self.nvars())
                .map(|j| {
                    let xj = Monomial::var(j);
                    basis
                        .iter()
                        .map(|m| {
                            let img = Poly::monomial(m.mul(&xj), 1);
                            self.coords(&img, d + 1)
                                .into_iter()
                                .enumerate()
                                .filter(|&(_, c)| c != 0)
                                .collect()
                        })
                        .collect()
                })
                .collect();
            Box::new(table)
        })
    }

    /// Multiplies a degree-`d` coordinate vector by `x_j`, accumulating
    /// `c * x_j * v` into the degree-`d + 1` vector `out`.
    pub fn mul_var_into(&self, d: u32, j: usize, v: &[u32], c: u32, out: &mut [u32]) {
        let f = self.field;
        let table = &self.up_table(d)[j];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let ac = f.mul(a, c);
            for &(t, b) in &table[k] {
                out[t] = f.mul_add(ac, b, out[t]);
            }
        }
    }

    /// Index of a standard monomial in `R_d`, if it is one.
    pub fn standard_index(&self, m: &Monomial) -> Option<usize> {
        let d = m.degree();
        let i = self.mono_table(d).index.get(m)?;
        self.quot(d).std_pos[*i]
    }
}

fn check_degree(d: u32) -> usize {
    let d = d as usize;
    assert!(
        d < MAX_DEGREE,
        "internal degree {d} exceeds the supported range"
    );
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pfaffian() -> RingCtx {
        RingCtx::parse(
            Fp::new(32003),
            &["x", "y", "z"],
            &["x^2", "-y*z", "x*y+z^2", "-x*z", "y^2"],
        )
        .unwrap()
    }

    #[test]
    fn quotient_basis_degree_zero() {
        assert_eq!(pfaffian().quotient_basis(0), &[Monomial::ONE]);
    }

    #[test]
    fn quotient_basis_fat_point() {
        let ctx = RingCtx::parse(Fp::new(7), &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        assert!(ctx.quotient_basis(2).is_empty());
        assert_eq!(ctx.quotient_basis(1).len(), 2);
    }

    #[test]
    fn pfaffian_hilbert_function() {
        let ctx = pfaffian();
        let dims: Vec<usize> = (0..5).map(|d| ctx.quotient_basis(d).len()).collect();
        assert_eq!(dims, vec![1, 3, 1, 0, 0]);
        assert_eq!(ctx.top_degree(6), Some(2));
    }

    #[test]
    fn normal_form_examples() {
        let ctx = RingCtx::parse(Fp::new(101), &["x", "y"], &["x^2"]).unwrap();
        let f = ctx.parse_poly("x^2+x*y").unwrap();
        let nf = ctx.normal_form(&f, 2);
        let basis = ctx.quotient_basis(2);
        assert_eq!(basis.len(), 2);
        let xy = Monomial::new(&[1, 1]);
        for (m, c) in basis.iter().zip(&nf) {
            assert_eq!(*c, if *m == xy { 1 } else { 0 });
        }
        let g = ctx.parse_poly("3*x^2").unwrap();
        assert!(ctx.normal_form(&g, 2).iter().all(|&c| c == 0));
        assert_eq!(ctx.normal_form(&Poly::constant(1), 0), vec![1]);
    }

    #[test]
    fn mul_var_matches_poly_product() {
        let ctx = pfaffian();
        let f = ctx.parse_poly("x+2*y-z").unwrap();
        let v = ctx.coords(&f, 1);
        let mut out = vec![0; ctx.dim(2)];
        ctx.mul_var_into(1, 1, &v, 1, &mut out);
        let direct = ctx.coords(&f.mul(&ctx.parse_poly("y").unwrap(), ctx.field()), 2);
        assert_eq!(out, direct);
    }
}
