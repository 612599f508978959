//! Golod verdicts for modules and rings.
//!
//! Three deciders run independently: equality with the Golod bound through
//! `t^{c+1}` (A), minimality of the computed A∞-structures (B), and
//! collapse of the bar-filtration spectral sequence at `E^1` (C). Only A
//! produces a certificate for "not Golod"; B and C are cross-checks.

use alloc::string::String;
use alloc::vec::Vec;

use crate::ainf::{
    algebra_minimality_witness, build_ainf_algebra, build_ainf_module, module_minimality_witness,
    AInfAlg, AInfMod, MinimalityWitness,
};
use crate::barres::{bar_minimality_profile, build_bar_complex, golod_bound_series};
use crate::gradedring::RingCtx;
use crate::resolve::{minimal_resolution, Presentation, Resolution};
use crate::series::PowerSeries;
use crate::specseq::{avramov_filtered_complex, ss_pages};
use crate::syzygy::iterate_syzygy;
use crate::Error;

/// Caps for a verdict. `int_cap = None` picks a cap from the ideal degrees.
#[derive(Clone, Copy, Debug, Default)]
pub struct GolodOptions {
    pub int_cap: Option<u32>,
    /// Skip decider C (the spectral sequence is the most expensive part).
    pub skip_spectral: bool,
}

/// Everything built from the ring and the module: both `Q`-resolutions and
/// their A∞-structures.
#[derive(Clone, Debug)]
pub struct Setup {
    pub ctx: RingCtx,
    pub module: Presentation,
    pub int_cap: u32,
    pub ring_res: Resolution,
    pub module_res: Resolution,
    pub alg: AInfAlg,
    pub gmod: AInfMod,
}

impl Setup {
    pub fn pd_ring(&self) -> usize {
        self.ring_res.complex.length()
    }

    pub fn pd_module(&self) -> usize {
        self.module_res.complex.length()
    }

    /// `max{pd_Q R, pd_Q M - 1}`.
    pub fn c(&self) -> usize {
        self.pd_ring().max(self.pd_module().saturating_sub(1))
    }
}

fn default_int_cap(ctx: &RingCtx, range: usize) -> u32 {
    let top = ctx
        .ideal()
        .iter()
        .filter_map(|g| g.homogeneous_degree())
        .max()
        .unwrap_or(2);
    (range as u32 + 2) * top
}

pub fn setup(ctx: &RingCtx, module: &Presentation, int_cap: Option<u32>) -> Result<Setup, Error> {
    let n = ctx.nvars();
    let int_cap = int_cap.unwrap_or_else(|| default_int_cap(ctx, n + 2));
    let q = ctx.q();
    let ring_res = minimal_resolution(&q, &Presentation::ring(), n + 1, int_cap)?;
    let module_res = minimal_resolution(&q, module, n + 1, int_cap)?;
    if !ring_res.terminated || !module_res.terminated {
        return Err(Error::CapExceeded {
            requested: n + 1,
            available: n,
        });
    }
    let alg = build_ainf_algebra(ctx, &ring_res.complex)?;
    let gmod = build_ainf_module(&alg, &module_res.complex)?;
    Ok(Setup {
        ctx: ctx.r(),
        module: module.clone(),
        int_cap,
        ring_res,
        module_res,
        alg,
        gmod,
    })
}

/// First nonzero spectral-sequence differential: `(r, p, q, rank)`.
pub type DifferentialWitness = (usize, usize, usize, usize);

#[derive(Clone, Debug)]
pub struct GolodReport {
    pub c: usize,
    /// Decider A compares coefficients through `t^range`.
    pub range: usize,
    pub bound: PowerSeries,
    pub actual: PowerSeries,
    pub first_discrepancy: Option<usize>,
    /// Decider A.
    pub bound_equality: bool,
    /// Decider B, with the first unit entry when non-minimal.
    pub structure_minimality: bool,
    pub minimality_witness: Option<MinimalityWitness>,
    /// Decider C, `None` when skipped.
    pub e1_collapse: Option<bool>,
    pub first_differential: Option<DifferentialWitness>,
    /// Ranks of `d_p ⊗ k` of the bar resolution, when decider C ran.
    pub bar_profile: Vec<usize>,
    /// Ring verdicts only: the algebra structure alone is minimal.
    pub algebra_minimal: Option<bool>,
}

impl GolodReport {
    /// Decider A is the certificate.
    pub fn is_golod(&self) -> bool {
        self.bound_equality
    }

    pub fn verdicts(&self) -> [Option<bool>; 3] {
        [
            Some(self.bound_equality),
            Some(self.structure_minimality),
            self.e1_collapse,
        ]
    }

    /// `agreement[i][j]` is `None` when either decider did not run.
    pub fn agreement_matrix(&self) -> [[Option<bool>; 3]; 3] {
        let v = self.verdicts();
        let mut out = [[None; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                if let (Some(a), Some(b)) = (v[i], v[j]) {
                    out[i][j] = Some(a == b);
                }
            }
        }
        out
    }

    pub fn deciders_agree(&self) -> bool {
        self.agreement_matrix()
            .iter()
            .flatten()
            .all(|x| *x != Some(false))
            && self
                .algebra_minimal
                .is_none_or(|m| m == self.bound_equality)
    }

    pub fn describe(&self) -> String {
        let verdict = if self.is_golod() {
            "Golod"
        } else {
            "not Golod"
        };
        let mut s = alloc::format!(
            "{verdict} (c = {}, compared through t^{})",
            self.c,
            self.range
        );
        if let Some(d) = self.first_discrepancy {
            s += &alloc::format!(
                "; first discrepancy at t^{d}: {} < {}",
                self.actual.coeff(d),
                self.bound.coeff(d)
            );
        }
        if !self.deciders_agree() {
            s += "; DECIDERS DISAGREE";
        }
        s
    }
}

fn decide(setup: &Setup, range: usize, opts: &GolodOptions) -> Result<GolodReport, Error> {
    let ctx = &setup.ctx;
    let pqr = setup.ring_res.poincare_series(range)?;
    let pqm = setup.module_res.poincare_series(range)?;
    let bound = golod_bound_series(&pqm, &pqr, range)
        .ok_or_else(|| Error::Internal(String::from("P^Q_R has no constant term 1")))?;

    // A: the minimal R-resolution against the bound
    let rres = minimal_resolution(ctx, &setup.module, range, setup.int_cap)?;
    let actual = rres.poincare_series(range)?;
    if let Some(i) = actual.first_excess_over(&bound) {
        return Err(Error::Internal(alloc::format!(
            "β^R_{i} exceeds the Golod bound"
        )));
    }
    let first_discrepancy = actual.first_difference(&bound);

    // B: unit entries anywhere in the structures
    let minimality_witness =
        algebra_minimality_witness(&setup.alg).or_else(|| module_minimality_witness(&setup.gmod));

    // C: a nonzero d^r, r >= 1, with target in total degree <= range
    let (e1_collapse, first_differential, bar_profile) = if opts.skip_spectral {
        (None, None, Vec::new())
    } else {
        let bar = build_bar_complex(&setup.alg, &setup.gmod, range + 2)?;
        let pages = ss_pages(&avramov_filtered_complex(&bar)?, range / 2 + 2);
        let first = pages
            .iter()
            .skip(1)
            .flat_map(|pg| {
                pg.diff_ranks
                    .iter()
                    .map(move |(&(p, q), &rk)| (pg.r, p, q, rk))
            })
            .filter(|&(_, p, q, _)| p + q <= range + 1)
            .min_by_key(|&(r, p, q, _)| (p + q, r, p));
        (Some(first.is_none()), first, bar_minimality_profile(&bar))
    };

    Ok(GolodReport {
        c: setup.c(),
        range,
        bound,
        actual,
        first_discrepancy,
        bound_equality: first_discrepancy.is_none(),
        structure_minimality: minimality_witness.is_none(),
        minimality_witness,
        e1_collapse,
        first_differential,
        bar_profile,
        algebra_minimal: None,
    })
}

fn check_square(ctx: &RingCtx) -> Result<(), Error> {
    match ctx
        .ideal()
        .iter()
        .position(|g| g.homogeneous_degree().is_none_or(|d| d < 2))
    {
        Some(i) => Err(Error::IdealNotInSquare { generator: i }),
        None => Ok(()),
    }
}

/// Whether `M` is Golod relative to `Q -> R`.
pub fn golod_verdict_module(
    ctx: &RingCtx,
    module: &Presentation,
    opts: &GolodOptions,
) -> Result<GolodReport, Error> {
    check_square(ctx)?;
    let s = setup(ctx, module, opts.int_cap)?;
    let c = s.c();
    decide(&s, c + 1, opts)
}

/// Whether `R` is a Golod ring: `M = k`, compared through `t^{e+1}` with
/// `e` the number of variables, plus minimality of the algebra alone.
pub fn golod_verdict_ring(ctx: &RingCtx, opts: &GolodOptions) -> Result<GolodReport, Error> {
    check_square(ctx)?;
    let s = setup(ctx, &Presentation::residue_field(ctx), opts.int_cap)?;
    let mut rep = decide(&s, ctx.nvars() + 1, opts)?;
    rep.algebra_minimal = Some(algebra_minimality_witness(&s.alg).is_none());
    Ok(rep)
}

/// What Golodness predicts for syzygies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyGolodReport {
    pub ring_golod: bool,
    pub module_golod: bool,
    /// For a Golod module: the structure on the first syzygy complex is minimal.
    pub first_syzygy_minimal: Option<bool>,
    /// For a Golod ring: `pd_Q M + 1`.
    pub high_level: Option<usize>,
    /// Golod verdict of the syzygy module at `high_level`.
    pub high_syzygy_golod: Option<bool>,
    /// Whether the iterated cone structure at `high_level` is literally
    /// minimal. Informational: the cone is not a minimal complex, and its
    /// `m_2` carries `m_1` of the previous stage.
    pub high_cone_minimal: Option<bool>,
}

impl SyzygyGolodReport {
    /// False when neither the ring nor the module is Golod.
    pub fn applicable(&self) -> bool {
        self.first_syzygy_minimal.is_some() || self.high_syzygy_golod.is_some()
    }

    pub fn passed(&self) -> bool {
        self.first_syzygy_minimal != Some(false) && self.high_syzygy_golod != Some(false)
    }
}

/// `Syz^n_R M` presented by `F_n` modulo the columns of `d_{n+1}` of the
/// minimal `R`-resolution.
pub fn syzygy_presentation(
    ctx: &RingCtx,
    module: &Presentation,
    n: usize,
    int_cap: u32,
) -> Result<Presentation, Error> {
    let res = minimal_resolution(&ctx.r(), module, n + 1, int_cap)?;
    let c = &res.complex;
    let relations = match c.d(n + 1) {
        Some(d) => (0..d.matrix.cols())
            .map(|j| d.matrix.dense_column(j))
            .collect(),
        None => Vec::new(),
    };
    Ok(Presentation {
        gens: c.module(n),
        relations,
        base: crate::gradedring::RingMode::R,
    })
}

fn structure_minimal(alg: &AInfAlg, module: &AInfMod) -> bool {
    algebra_minimality_witness(alg).is_none() && module_minimality_witness(module).is_none()
}

/// Over a Golod ring the syzygy at level `pd_Q M + 1` is Golod; over any
/// ring the first syzygy complex of a Golod module has a minimal structure.
pub fn golod_syzygy_check(
    ctx: &RingCtx,
    module: &Presentation,
    opts: &GolodOptions,
) -> Result<SyzygyGolodReport, Error> {
    let fast = GolodOptions {
        skip_spectral: true,
        ..*opts
    };
    let ring_golod = golod_verdict_ring(ctx, &fast)?.is_golod();
    let module_golod = golod_verdict_module(ctx, module, &fast)?.is_golod();
    let s = setup(ctx, module, opts.int_cap)?;
    let mut rep = SyzygyGolodReport {
        ring_golod,
        module_golod,
        first_syzygy_minimal: None,
        high_level: None,
        high_syzygy_golod: None,
        high_cone_minimal: None,
    };
    if module_golod {
        let data = iterate_syzygy(&s.alg, &s.gmod, 1)?;
        rep.first_syzygy_minimal = Some(structure_minimal(&s.alg, &data.structure));
    }
    if ring_golod {
        let level = s.pd_module() + 1;
        let data = iterate_syzygy(&s.alg, &s.gmod, level)?;
        rep.high_level = Some(level);
        rep.high_cone_minimal = Some(structure_minimal(&s.alg, &data.structure));
        let syz = syzygy_presentation(ctx, module, level, s.int_cap)?;
        rep.high_syzygy_golod = Some(golod_verdict_module(ctx, &syz, opts)?.is_golod());
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::fixtures::PFAFFIAN_IDEAL;

    fn ring(vars: &[&str], ideal: &[&str]) -> RingCtx {
        RingCtx::parse(Fp::new(101), vars, ideal).unwrap()
    }

    #[test]
    fn pfaffian_k_is_not_golod() {
        let ctx = ring(&["x", "y", "z"], &PFAFFIAN_IDEAL);
        let rep = golod_verdict_module(
            &ctx,
            &Presentation::residue_field(&ctx),
            &GolodOptions::default(),
        )
        .unwrap();
        assert_eq!(rep.c, 3);
        assert_eq!(rep.actual.coeffs(), &[1, 3, 8, 21, 55]);
        assert_eq!(rep.bound.coeffs(), &[1, 3, 8, 21, 56]);
        assert_eq!(rep.first_discrepancy, Some(4));
        assert!(!rep.is_golod());
        assert!(rep.deciders_agree(), "{:?}", rep.verdicts());
        assert_eq!(rep.first_differential, Some((1, 2, 3, 1)));
    }

    #[test]
    fn hypersurface_and_fat_point_are_golod() {
        for (vars, ideal) in [
            (&["x"][..], &["x^2"][..]),
            (&["x", "y"][..], &["x^2", "x*y", "y^2"][..]),
            (&["x", "y"][..], &["x^2", "x*y"][..]),
        ] {
            let ctx = ring(vars, ideal);
            let rep = golod_verdict_ring(&ctx, &GolodOptions::default()).unwrap();
            assert!(rep.is_golod(), "{ideal:?}: {}", rep.describe());
            assert!(rep.deciders_agree());
            assert_eq!(rep.algebra_minimal, Some(true));
            assert!(rep.bar_profile.iter().all(|&r| r == 0));
        }
    }

    #[test]
    fn linear_generator_is_rejected() {
        let ctx = ring(&["x", "y"], &["x", "y^2"]);
        assert_eq!(
            golod_verdict_ring(&ctx, &GolodOptions::default()).unwrap_err(),
            Error::IdealNotInSquare { generator: 0 }
        );
    }

    #[test]
    fn ring_as_module_is_not_golod() {
        // M = R over a non-regular ring: Tor^Q_1(R, k) dies in Tor^R_1(R, k)
        let ctx = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let rep =
            golod_verdict_module(&ctx, &Presentation::ring(), &GolodOptions::default()).unwrap();
        assert!(!rep.is_golod());
        assert!(rep.deciders_agree());
    }

    #[test]
    fn syzygies_over_golod_ring() {
        let ctx = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let m = Presentation::quotient_by(alloc::vec![ctx.parse_poly("x").unwrap()]);
        let rep = golod_syzygy_check(&ctx, &m, &GolodOptions::default()).unwrap();
        assert!(rep.ring_golod);
        assert!(rep.applicable() && rep.passed(), "{rep:?}");
        assert_eq!(rep.high_level, Some(3));
        // the cone at level 3 carries d_1 of a non-minimal cone inside m_2
        assert_eq!(rep.high_cone_minimal, Some(false));

        let ctx = ring(&["x"], &["x^2"]);
        let rep = golod_syzygy_check(
            &ctx,
            &Presentation::residue_field(&ctx),
            &GolodOptions::default(),
        )
        .unwrap();
        assert!(rep.module_golod);
        assert_eq!(rep.first_syzygy_minimal, Some(true));
        assert!(rep.passed());
    }

    #[test]
    fn pfaffian_syzygy_check_is_inapplicable() {
        let ctx = ring(&["x", "y", "z"], &PFAFFIAN_IDEAL);
        let opts = GolodOptions {
            skip_spectral: true,
            ..Default::default()
        };
        let rep = golod_syzygy_check(&ctx, &Presentation::residue_field(&ctx), &opts).unwrap();
        assert!(!rep.applicable());
    }
}
