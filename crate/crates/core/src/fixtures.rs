//! Hand-entered worked examples: the Pfaffian ring with its dg-algebra
//! table and the Koszul module structure, the Shamash scaling, and a few
//! small rings used throughout the tests.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::ainf::{AInfAlg, AInfMod};
use crate::exactla::Fp;
use crate::gradedring::{GradedFree, GradedMap, Poly, PolyMatrix, RingCtx, RingMode};
use crate::resolve::{koszul_complex, subsets_of, GradedComplex};
use crate::Error;

/// Which module a named example resolves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    ResidueField,
    /// `R/(elements)`.
    Quotient(&'static [&'static str]),
}

/// A ring `k[vars]/(ideal)` together with a module.
#[derive(Clone, Copy, Debug)]
pub struct NamedExample {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub ideal: &'static [&'static str],
    pub module: ModuleKind,
}

pub const PFAFFIAN_IDEAL: [&str; 5] = ["x^2", "-y*z", "x*y+z^2", "-x*z", "y^2"];

pub const EXAMPLES: [NamedExample; 5] = [
    NamedExample {
        name: "codim3",
        vars: &["x", "y", "z"],
        ideal: &PFAFFIAN_IDEAL,
        module: ModuleKind::ResidueField,
    },
    NamedExample {
        name: "hhs4",
        vars: &["x", "y", "z", "w"],
        ideal: &["x^2", "x*y", "y*z", "z*w", "w^2"],
        module: ModuleKind::ResidueField,
    },
    NamedExample {
        name: "hyper",
        vars: &["x"],
        ideal: &["x^2"],
        module: ModuleKind::ResidueField,
    },
    NamedExample {
        name: "fatpoint",
        vars: &["x", "y"],
        ideal: &["x^2", "x*y", "y^2"],
        module: ModuleKind::ResidueField,
    },
    NamedExample {
        name: "shamash",
        vars: &["x", "y"],
        ideal: &["x^2", "x*y"],
        module: ModuleKind::ResidueField,
    },
];

pub fn example(name: &str) -> Option<NamedExample> {
    EXAMPLES.iter().copied().find(|e| e.name == name)
}

impl NamedExample {
    pub fn ctx(&self, p: u32) -> Result<RingCtx, Error> {
        RingCtx::parse(
            Fp::try_new(p).ok_or_else(|| Error::Internal(alloc::format!("{p} is not prime")))?,
            self.vars,
            self.ideal,
        )
    }
}

fn polys(ctx: &RingCtx, rows: &[&[&str]]) -> Result<PolyMatrix, Error> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for r in rows {
        out.push(
            r.iter()
                .map(|s| ctx.parse_poly(s))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(PolyMatrix::from_rows(out, cols))
}

/// `e_S ∧ e_T` in the exterior algebra on subsets: `None` if they overlap.
fn wedge(s: &[usize], t: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0;
    for &a in s {
        for &b in t {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
    u.sort_unstable();
    Some((u, inversions % 2 == 1))
}

/// The Pfaffian example: `A` from the printed `φ`, its dg-algebra table,
/// the Koszul complex `K` on the variables and the module structure built
/// from the comparison maps `α_i` and the printed `m_3^K`.
#[derive(Clone, Debug)]
pub struct PfaffianFixture {
    pub ctx: RingCtx,
    pub a: GradedComplex,
    pub k: GradedComplex,
    pub alg: AInfAlg,
    pub module: AInfMod,
    /// `α_i: A_i -> K_i`, `i = 1, 2, 3`.
    pub alpha: Vec<PolyMatrix>,
}

/// `a_i a_j` for `i < j`, as coefficients on `b_1..b_5`.
const TABLE: [((usize, usize), [&str; 5]); 10] = [
    ((1, 2), ["0", "0", "x", "0", "y"]),
    ((1, 3), ["0", "-x", "0", "0", "-z"]),
    ((1, 4), ["0", "0", "0", "0", "x"]),
    ((1, 5), ["0", "-y", "z", "-x", "0"]),
    ((2, 3), ["x", "0", "0", "-z", "0"]),
    ((2, 4), ["0", "0", "z", "0", "0"]),
    ((2, 5), ["y", "0", "0", "0", "0"]),
    ((3, 4), ["0", "-z", "0", "0", "y"]),
    ((3, 5), ["-z", "0", "0", "-y", "0"]),
    ((4, 5), ["x", "0", "y", "0", "0"]),
];

pub fn pfaffian(p: u32) -> Result<PfaffianFixture, Error> {
    let ctx = example("codim3").expect("shipped").ctx(p)?.q();
    let f = ctx.field();
    let d1 = polys(&ctx, &[&PFAFFIAN_IDEAL])?;
    let phi = polys(
        &ctx,
        &[
            &["0", "y", "0", "0", "z"],
            &["-y", "0", "x", "z", "0"],
            &["0", "-x", "0", "y", "0"],
            &["0", "-z", "-y", "0", "x"],
            &["-z", "0", "0", "-x", "0"],
        ],
    )?;
    let d3 = d1.transpose();
    let a0 = GradedFree::new(vec![0]);
    let a1 = GradedFree::new(vec![2; 5]);
    let a2 = GradedFree::new(vec![3; 5]);
    let a3 = GradedFree::new(vec![5]);
    let a = GradedComplex::new(
        a0.clone(),
        vec![
            GradedMap::new(a1.clone(), a0, d1)?,
            GradedMap::new(a2.clone(), a1, phi)?,
            GradedMap::new(a3, a2, d3)?,
        ],
        RingMode::Q,
    )?;

    // shifted m_2(a ⊗ b) = (-1)^{|a|+1} ab
    let mut m11 = PolyMatrix::zeros(5, 25);
    for ((i, j), row) in TABLE {
        for (r, s) in row.iter().enumerate() {
            let c = ctx.parse_poly(s)?;
            m11.set(r, (i - 1) * 5 + (j - 1), c.clone());
            m11.set(r, (j - 1) * 5 + (i - 1), c.neg(f));
        }
    }
    let mut m12 = PolyMatrix::zeros(1, 25);
    let mut m21 = PolyMatrix::zeros(1, 25);
    for i in 0..5 {
        m12.set(0, i * 5 + i, Poly::constant(1));
        m21.set(0, i * 5 + i, Poly::constant(f.neg(1)));
    }
    let mut comps = BTreeMap::new();
    comps.insert(vec![1, 1], m11);
    comps.insert(vec![1, 2], m12);
    comps.insert(vec![2, 1], m21);
    let alg = AInfAlg::from_components(&ctx, a.clone(), comps);

    let xyz: Vec<Poly> = ["x", "y", "z"]
        .iter()
        .map(|v| ctx.parse_poly(v))
        .collect::<Result<_, _>>()?;
    let k = koszul_complex(&ctx, &xyz)?;
    let alpha = vec![
        polys(
            &ctx,
            &[
                &["x", "0", "0", "0", "0"],
                &["0", "0", "x", "0", "y"],
                &["0", "-y", "z", "-x", "0"],
            ],
        )?,
        polys(
            &ctx,
            &[
                &["0", "-x", "0", "0", "0"],
                &["0", "0", "0", "0", "-x"],
                &["y", "0", "0", "0", "0"],
            ],
        )?,
        polys(&ctx, &[&["x*y"]])?,
    ];
    let subsets: Vec<Vec<Vec<usize>>> = (0..=3).map(|i| subsets_of(3, i)).collect();
    let mut mcomps = BTreeMap::new();
    // m_2^K(a ⊗ g) = -α(a) g
    for i in 1..=3 {
        for g in 0..=3 - i {
            let mut block = PolyMatrix::zeros(subsets[i + g].len(), a.rank(i) * subsets[g].len());
            for col_a in 0..a.rank(i) {
                for (gi, t) in subsets[g].iter().enumerate() {
                    for (si, s) in subsets[i].iter().enumerate() {
                        let coef = alpha[i - 1].get(si, col_a);
                        let Some((u, odd)) = wedge(s, t) else {
                            continue;
                        };
                        if coef.is_zero() {
                            continue;
                        }
                        let r = subsets[i + g].iter().position(|v| *v == u).expect("subset");
                        let c = col_a * subsets[g].len() + gi;
                        let val = if odd { coef } else { coef.neg(f) };
                        block.add_to(r, c, &val, &ctx);
                    }
                }
            }
            mcomps.insert((vec![i], g), block);
        }
    }
    let mut m3 = PolyMatrix::zeros(1, 25);
    m3.set(0, 2 * 5 + 3, ctx.parse_poly("x")?);
    m3.set(0, 3 * 5 + 2, ctx.parse_poly("-x")?);
    mcomps.insert((vec![1, 1], 0), m3);
    let module = AInfMod::from_components(&ctx, k.clone(), mcomps);
    Ok(PfaffianFixture {
        ctx,
        a,
        k,
        alg,
        module,
        alpha,
    })
}

/// `R = Q/(f J)` resolved by rescaling a dg-algebra resolution `B` of
/// `Q/J`: `d_1^A = f d_1^B` and `m_n^A = f^{n-1} m_n^B`. Here `B` is the
/// Koszul complex on `J`, a regular sequence of linear forms.
#[derive(Clone, Debug)]
pub struct ShamashFixture {
    pub ctx: RingCtx,
    pub alg: AInfAlg,
}

pub fn shamash(p: u32, vars: &[&str], f: &str, j: &[&str]) -> Result<ShamashFixture, Error> {
    let base = RingCtx::parse(
        Fp::try_new(p).ok_or_else(|| Error::Internal(String::from("not prime")))?,
        vars,
        &[],
    )?;
    let fp = base.parse_poly(f)?;
    let jp: Vec<Poly> = j
        .iter()
        .map(|s| base.parse_poly(s))
        .collect::<Result<_, _>>()?;
    let ideal: Vec<Poly> = jp.iter().map(|g| fp.mul(g, base.field())).collect();
    let ctx = RingCtx::new(
        base.field(),
        vars.iter().map(|s| String::from(*s)).collect(),
        ideal,
    )?
    .q();
    let fld = ctx.field();
    let b = koszul_complex(&ctx, &jp)?;
    let fdeg = fp
        .homogeneous_degree()
        .ok_or_else(|| Error::Inhomogeneous {
            what: String::from("f"),
        })?;
    // A_i = B_i(-deg f) for i >= 1
    let n = jp.len();
    let shift = |m: &GradedFree| GradedFree::new(m.degrees().iter().map(|d| d + fdeg).collect());
    let mut diffs = Vec::new();
    for i in 1..=b.length() {
        let d = b.d(i).expect("differential");
        let tgt = if i == 1 { d.tgt.clone() } else { shift(&d.tgt) };
        let m = if i == 1 {
            d.matrix.map_entries(|e| e.mul(&fp, fld))
        } else {
            d.matrix.clone()
        };
        diffs.push(GradedMap::new(shift(&d.src), tgt, m)?);
    }
    let a = GradedComplex::new(GradedFree::new(vec![0]), diffs, RingMode::Q)?;
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| subsets_of(n, i)).collect();
    let mut comps = BTreeMap::new();
    for i in 1..=n {
        for jdeg in 1..=n - i {
            let mut block = PolyMatrix::zeros(
                subsets[i + jdeg].len(),
                subsets[i].len() * subsets[jdeg].len(),
            );
            for (si, s) in subsets[i].iter().enumerate() {
                for (ti, t) in subsets[jdeg].iter().enumerate() {
                    let Some((u, odd)) = wedge(s, t) else {
                        continue;
                    };
                    let r = subsets[i + jdeg]
                        .iter()
                        .position(|v| *v == u)
                        .expect("subset");
                    // (-1)^{|a|+1} a∧b, scaled by f
                    let neg = odd ^ (i % 2 == 0);
                    let val = if neg { fp.neg(fld) } else { fp.clone() };
                    block.set(r, si * subsets[jdeg].len() + ti, val);
                }
            }
            comps.insert(vec![i, jdeg], block);
        }
    }
    let alg = AInfAlg::from_components(&ctx, a, comps);
    Ok(ShamashFixture { ctx, alg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainf::{algebra_minimality_witness, verify_ainf_algebra, verify_ainf_module};
    use crate::resolve::{verify_resolution, Presentation};

    #[test]
    fn pfaffian_complex_resolves() {
        let fx = pfaffian(32003).unwrap();
        let rep = verify_resolution(&fx.ctx, &fx.a, &Presentation::ring(), 8, true);
        assert!(rep.passed(), "{}", rep.describe());
    }

    #[test]
    fn pfaffian_table_verifies() {
        let fx = pfaffian(32003).unwrap();
        let rep = verify_ainf_algebra(&fx.alg);
        assert!(rep.passed(), "{}", rep.describe());
        let w = algebra_minimality_witness(&fx.alg).unwrap();
        assert_eq!(w.n, 2);
    }

    #[test]
    fn pfaffian_koszul_module_verifies() {
        let fx = pfaffian(32003).unwrap();
        let rep = verify_ainf_module(&fx.alg, &fx.module);
        assert!(rep.passed(), "{}", rep.describe());
    }

    #[test]
    fn zeroed_m3_fails_at_three() {
        let mut fx = pfaffian(32003).unwrap();
        fx.module.components_mut().remove(&(vec![1, 1], 0));
        let rep = verify_ainf_module(&fx.alg, &fx.module);
        assert_eq!(rep.failure.unwrap().n, 3);
    }

    #[test]
    fn alpha_is_a_chain_map() {
        let fx = pfaffian(32003).unwrap();
        for i in 1..=3 {
            let lhs = fx.k.d(i).unwrap().matrix.mul(&fx.alpha[i - 1], &fx.ctx);
            let rhs = if i == 1 {
                fx.a.d(1).unwrap().matrix.clone()
            } else {
                fx.alpha[i - 2].mul(&fx.a.d(i).unwrap().matrix, &fx.ctx)
            };
            assert_eq!(lhs, rhs, "degree {i}");
        }
    }

    #[test]
    fn shamash_structure_is_minimal() {
        let fx = shamash(32003, &["x", "y"], "x", &["x", "y"]).unwrap();
        let rep = verify_ainf_algebra(&fx.alg);
        assert!(rep.passed(), "{}", rep.describe());
        assert!(algebra_minimality_witness(&fx.alg).is_none());
    }
}
