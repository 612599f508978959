//! One function per subcommand. Each returns a JSON report, a short text
//! summary and whether every consistency check passed.

use ainfty_core::ainf::induced_tor_structures;
use ainfty_core::ainf::{
    algebra_minimality_witness, module_minimality_witness, verify_ainf_algebra, verify_ainf_module,
    AInfAlg, AInfMod, MinimalityWitness, VerifyReport,
};
use ainfty_core::barres::{
    bar_minimality_profile, build_bar_complex, golod_bound_series, split_betti, verify_bar,
};
use ainfty_core::fixtures::{pfaffian, shamash};
use ainfty_core::golod::{
    golod_verdict_module, golod_verdict_ring, setup, GolodOptions, GolodReport, Setup,
};
use ainfty_core::resolve::{verify_resolution, GradedComplex};
use ainfty_core::specseq::{avramov_filtered_complex, edge_report, ss_pages, tor_over_tor_ranks};
use ainfty_core::syzygy::{iterate_syzygy, verify_syzygy, Provenance};
use ainfty_core::{minimal_resolution, PowerSeries, RingCtx};
use serde_json::{json, Value};

use crate::problem::ProblemSpec;
use crate::CliError;

pub struct Report {
    pub json: Value,
    pub summary: String,
    /// False when a consistency check failed (exit code 2).
    pub consistent: bool,
}

fn ring_json(spec: &ProblemSpec) -> Value {
    json!({ "p": spec.p, "vars": spec.vars, "ideal": spec.ideal, "module": spec.module })
}

fn series(s: &PowerSeries) -> Value {
    json!(s.coeffs())
}

fn ranks(c: &GradedComplex) -> Vec<usize> {
    (0..=c.length()).map(|i| c.rank(i)).collect()
}

fn witness(w: &Option<MinimalityWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "n": w.n, "word": w.word, "module_degree": w.module_degree,
            "row": w.row, "col": w.col, "constant": w.constant,
        }),
    }
}

fn verify_json(r: &VerifyReport) -> Value {
    json!({ "passed": r.passed(), "detail": r.describe(), "checked_tensors": r.checked_tensors })
}

fn matrix_strings(ctx: &RingCtx, c: &GradedComplex, i: usize) -> Vec<Vec<String>> {
    let Some(d) = c.d(i) else { return Vec::new() };
    (0..d.matrix.rows())
        .map(|r| {
            (0..d.matrix.cols())
                .map(|col| ctx.display(&d.matrix.get(r, col)))
                .collect()
        })
        .collect()
}

fn nonzero_levels(max_n: usize, has: impl Fn(usize) -> bool) -> Vec<usize> {
    (2..=max_n).filter(|&n| has(n)).collect()
}

fn build(spec: &ProblemSpec) -> Result<(RingCtx, Setup), CliError> {
    let ctx = spec.ring()?;
    let pres = spec.presentation(&ctx)?;
    let s = setup(&ctx, &pres, Some(spec.caps.int_cap))?;
    Ok((ctx, s))
}

pub fn resolve(spec: &ProblemSpec, over_q: bool) -> Result<Report, CliError> {
    let ctx = spec.ring()?;
    let pres = spec.presentation(&ctx)?;
    let mode_ctx = if over_q { ctx.q() } else { ctx.r() };
    let res = minimal_resolution(&mode_ctx, &pres, spec.caps.hom_cap, spec.caps.int_cap)?;
    let c = &res.complex;
    let check = verify_resolution(&mode_ctx, c, &pres, spec.caps.int_cap, res.terminated);
    let betti: Vec<Value> = res
        .betti_table()
        .entries
        .iter()
        .map(|(&(i, j), &b)| json!({ "i": i, "j": j, "beta": b }))
        .collect();
    let diffs: Vec<Value> = (1..=c.length())
        .map(|i| json!(matrix_strings(&mode_ctx, c, i)))
        .collect();
    let json = json!({
        "command": "resolve",
        "problem": ring_json(spec),
        "over": if over_q { "Q" } else { "R" },
        "ranks": ranks(c),
        "degrees": (0..=c.length()).map(|i| c.module(i).degrees().to_vec()).collect::<Vec<_>>(),
        "betti": betti,
        "terminated": res.terminated,
        "projective_dimension": res.projective_dimension(),
        "certificates": res.certificates.iter().map(|c| format!("{c:?}").to_lowercase()).collect::<Vec<_>>(),
        "differentials": diffs,
        "verification": { "passed": check.passed(), "detail": check.describe() },
    });
    let summary = format!(
        "resolution over {}: ranks {:?}{}; verification {}",
        if over_q { "Q" } else { "R" },
        ranks(c),
        if res.terminated {
            format!(", pd = {}", c.length())
        } else {
            String::from(" (truncated)")
        },
        if check.passed() { "passed" } else { "FAILED" }
    );
    Ok(Report {
        json,
        summary,
        consistent: check.passed(),
    })
}

fn structure_json(alg: &AInfAlg, module: &AInfMod) -> (Value, bool, String) {
    let va = verify_ainf_algebra(alg);
    let vm = verify_ainf_module(alg, module);
    let aw = algebra_minimality_witness(alg);
    let mw = module_minimality_witness(module);
    let alg_levels = nonzero_levels(alg.max_n(), |n| alg.has_nonzero(n));
    let mod_levels = nonzero_levels(module.max_n(), |n| module.has_nonzero(n));
    let json = json!({
        "algebra": {
            "ranks": ranks(alg.complex()),
            "nonzero_m": alg_levels,
            "minimal": aw.is_none(),
            "witness": witness(&aw),
            "verification": verify_json(&va),
        },
        "module": {
            "ranks": ranks(module.complex()),
            "nonzero_m": mod_levels,
            "minimal": mw.is_none(),
            "witness": witness(&mw),
            "verification": verify_json(&vm),
        },
    });
    let ok = va.passed() && vm.passed();
    let summary = format!(
        "algebra m_n nonzero for n in {alg_levels:?}, minimal: {}, identities {}\nmodule m_n nonzero for n in {mod_levels:?}, minimal: {}, identities {}",
        aw.is_none(),
        if va.passed() { "hold" } else { "FAIL" },
        mw.is_none(),
        if vm.passed() { "hold" } else { "FAIL" },
    );
    (json, ok, summary)
}

pub fn ainf(spec: &ProblemSpec) -> Result<Report, CliError> {
    let (_, s) = build(spec)?;
    let (mut json, ok, body) = structure_json(&s.alg, &s.gmod);
    json["command"] = json!("ainf");
    json["problem"] = ring_json(spec);
    json["pd_ring"] = json!(s.pd_ring());
    json["pd_module"] = json!(s.pd_module());
    let summary = format!(
        "pd_Q R = {}, pd_Q M = {}\n{body}",
        s.pd_ring(),
        s.pd_module()
    );
    Ok(Report {
        json,
        summary,
        consistent: ok,
    })
}

pub fn bar(spec: &ProblemSpec) -> Result<Report, CliError> {
    let (_, s) = build(spec)?;
    let cap = spec.caps.hom_cap;
    let bar = build_bar_complex(&s.alg, &s.gmod, cap)?;
    let check = verify_bar(&bar, &s.module, spec.caps.int_cap);
    let profile = bar_minimality_profile(&bar);
    let bound = golod_bound_series(
        &s.module_res.poincare_series(cap)?,
        &s.ring_res.poincare_series(cap)?,
        cap,
    );
    let rank_series = bar.rank_series();
    let json = json!({
        "command": "bar",
        "problem": ring_json(spec),
        "hom_cap": cap,
        "ranks": rank_series.coeffs(),
        "bound_series": bound.as_ref().map(series),
        "ranks_equal_bound": bound.as_ref().map(|b| b.coeffs() == rank_series.coeffs()),
        "minimality_profile": profile,
        "split_betti": split_betti(&bar),
        "verification": { "passed": check.passed(), "detail": check.describe() },
    });
    let summary = format!(
        "bar resolution through degree {cap}: ranks {:?}, rank(d_p ⊗ k) = {profile:?}; verification {}",
        rank_series.coeffs(),
        if check.passed() { "passed" } else { "FAILED" }
    );
    Ok(Report {
        json,
        summary,
        consistent: check.passed(),
    })
}

pub fn syzygy(spec: &ProblemSpec, level: usize) -> Result<Report, CliError> {
    let (_, s) = build(spec)?;
    let data = iterate_syzygy(&s.alg, &s.gmod, level)?;
    let check = verify_syzygy(&s.alg, &data, &s.module, spec.caps.int_cap);
    let count = |p: Provenance| data.provenance.values().filter(|&&x| x == p).count();
    let mw = module_minimality_witness(&data.structure);
    let json = json!({
        "command": "syzygy",
        "problem": ring_json(spec),
        "level": level,
        "ranks": ranks(data.complex()),
        "provenance": {
            "algebra_derived": count(Provenance::AlgebraDerived),
            "module_derived": count(Provenance::ModuleDerived),
            "mixed": count(Provenance::Mixed),
            "all_algebra_derived": data.all_algebra_derived(),
        },
        "structure_minimal": mw.is_none(),
        "verification": { "passed": check.passed(), "detail": check.describe() },
    });
    let summary = format!(
        "syzygy level {level}: ranks {:?}, all blocks algebra-derived: {}; verification {}",
        ranks(data.complex()),
        data.all_algebra_derived(),
        if check.passed() { "passed" } else { "FAILED" }
    );
    Ok(Report {
        json,
        summary,
        consistent: check.passed(),
    })
}

pub fn ss(spec: &ProblemSpec, r_max: usize) -> Result<Report, CliError> {
    let (ctx, s) = build(spec)?;
    let cap = spec.caps.hom_cap;
    let bar = build_bar_complex(&s.alg, &s.gmod, cap)?;
    let x = avramov_filtered_complex(&bar)?;
    let pages = ss_pages(&x, r_max);
    let q_max = cap.saturating_sub(2).min((2 * r_max).saturating_sub(1));
    let edges = edge_report(&pages, q_max)?;
    let mut consistent = true;
    let mut e2_check = Value::Null;
    if r_max >= 2 {
        let (ta, tm) = induced_tor_structures(&s.alg, &s.gmod)?;
        let n_max = cap - 1;
        let tor = tor_over_tor_ranks(&ta, &tm, ctx.field(), n_max, n_max)?;
        let agree = (0..=n_max)
            .flat_map(|n| (0..=n).map(move |p| (p, n - p)))
            .all(|(p, q)| pages[2].rank(p, q) == tor.get(&(p, q)).copied().unwrap_or(0));
        consistent &= agree;
        e2_check = json!({ "equals_tor_over_tor": agree });
    }
    let page_json: Vec<Value> = pages
        .iter()
        .map(|pg| {
            json!({
                "r": pg.r,
                "ranks": pg.ranks.iter().map(|(&(p, q), &d)| json!([p, q, d])).collect::<Vec<_>>(),
                "differentials": pg.diff_ranks.iter().map(|(&(p, q), &d)| json!([p, q, d])).collect::<Vec<_>>(),
            })
        })
        .collect();
    let edge_json: Vec<Value> = edges
        .iter()
        .map(|e| json!({ "q": e.q, "injective": e.injective, "e2_rank": e.e2_rank, "incoming": e.incoming }))
        .collect();
    let failing: Vec<usize> = edges.iter().filter(|e| !e.injective).map(|e| e.q).collect();
    let json = json!({
        "command": "ss",
        "problem": ring_json(spec),
        "hom_cap": cap,
        "r_max": r_max,
        "valid_total_degrees": cap - 1,
        "pages": page_json,
        "edge_maps": edge_json,
        "e2": e2_check,
    });
    let last = pages.last().expect("at least E^0");
    let totals: Vec<usize> = (0..cap).map(|n| last.total(n)).collect();
    let summary = format!(
        "E^{r_max} totals by degree {totals:?}; edge maps non-injective at q in {failing:?} (checked q <= {q_max})"
    );
    Ok(Report {
        json,
        summary,
        consistent,
    })
}

fn golod_json(r: &GolodReport) -> Value {
    json!({
        "golod": r.is_golod(),
        "c": r.c,
        "compared_through": r.range,
        "bound": series(&r.bound),
        "actual": series(&r.actual),
        "first_discrepancy_degree": r.first_discrepancy,
        "verdicts": {
            "bound_equality": r.bound_equality,
            "structure_minimality": r.structure_minimality,
            "e1_collapse": r.e1_collapse,
        },
        "agreement": r.agreement_matrix(),
        "deciders_agree": r.deciders_agree(),
        "witnesses": {
            "minimality": witness(&r.minimality_witness),
            "first_differential": r.first_differential.map(|(r, p, q, rk)| json!({ "r": r, "p": p, "q": q, "rank": rk })),
        },
        "bar_profile": r.bar_profile,
        "algebra_minimal": r.algebra_minimal,
    })
}

pub fn golod(spec: &ProblemSpec) -> Result<Report, CliError> {
    let ctx = spec.ring()?;
    let pres = spec.presentation(&ctx)?;
    let opts = GolodOptions {
        int_cap: Some(spec.caps.int_cap),
        skip_spectral: false,
    };
    let module = golod_verdict_module(&ctx, &pres, &opts)?;
    let ring = golod_verdict_ring(&ctx, &opts)?;
    let json = json!({
        "command": "golod",
        "problem": ring_json(spec),
        "module": golod_json(&module),
        "ring": golod_json(&ring),
    });
    let summary = format!("module: {}\nring: {}", module.describe(), ring.describe());
    Ok(Report {
        json,
        summary,
        consistent: module.deciders_agree() && ring.deciders_agree(),
    })
}

struct Checks(Vec<(String, bool, String)>);

impl Checks {
    fn add(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.0.push((name.to_string(), ok, detail.into()));
    }
}

pub fn verify_fixture(name: &str, p: u32) -> Result<Report, CliError> {
    let spec = crate::problem::fixture_text(name)
        .map(ProblemSpec::parse)
        .transpose()?
        .ok_or_else(|| CliError::Input(format!("unknown fixture {name}")))?;
    let mut spec = spec;
    spec.p = p;
    let mut c = Checks(Vec::new());
    match spec.name.as_deref() {
        Some("codim3") => {
            let fx = pfaffian(p)?;
            let res_check =
                verify_resolution(&fx.ctx, &fx.a, &ainfty_core::Presentation::ring(), 10, true);
            c.add(
                "printed φ resolves R",
                res_check.passed(),
                res_check.describe(),
            );
            let va = verify_ainf_algebra(&fx.alg);
            c.add("printed multiplication table", va.passed(), va.describe());
            let vm = verify_ainf_module(&fx.alg, &fx.module);
            c.add("α₁, α₂, α₃ and m₃ᴷ", vm.passed(), vm.describe());
            let bar = build_bar_complex(&fx.alg, &fx.module, 5)?;
            let prof = bar_minimality_profile(&bar);
            c.add(
                "bar profile [0, 0, 0, 0, 1]",
                prof == [0, 0, 0, 0, 1],
                format!("{prof:?}"),
            );
        }
        Some("hhs4") => {
            let (_, s) = build(&spec)?;
            c.add("pd_Q R = 4", s.pd_ring() == 4, format!("{}", s.pd_ring()));
            c.add("m₃ ≠ 0", s.alg.has_nonzero(3), "");
            let va = verify_ainf_algebra(&s.alg);
            c.add("algebra identities", va.passed(), va.describe());
        }
        Some(other) => {
            let (ctx, s) = build(&spec)?;
            let va = verify_ainf_algebra(&s.alg);
            c.add("algebra identities", va.passed(), va.describe());
            let vm = verify_ainf_module(&s.alg, &s.gmod);
            c.add("module identities", vm.passed(), vm.describe());
            let opts = GolodOptions {
                int_cap: Some(spec.caps.int_cap),
                skip_spectral: false,
            };
            let ring = golod_verdict_ring(&ctx, &opts)?;
            c.add(
                "Golod ring, deciders agree",
                ring.is_golod() && ring.deciders_agree(),
                ring.describe(),
            );
            if other == "shamash" {
                let sh = shamash(p, &["x", "y"], "x", &["x", "y"])?;
                let v = verify_ainf_algebra(&sh.alg);
                c.add("Shamash-scaled structure", v.passed(), v.describe());
                c.add(
                    "Shamash-scaled structure is minimal",
                    algebra_minimality_witness(&sh.alg).is_none(),
                    "",
                );
            }
        }
        None => return Err(CliError::Input(String::from("fixture without a name"))),
    }
    let ok = c.0.iter().all(|(_, ok, _)| *ok);
    let json = json!({
        "command": "verify-fixture",
        "fixture": name,
        "p": p,
        "passed": ok,
        "checks": c.0.iter().map(|(n, ok, d)| json!({ "check": n, "passed": ok, "detail": d })).collect::<Vec<_>>(),
    });
    let summary =
        c.0.iter()
            .map(|(n, ok, d)| {
                format!(
                    "[{}] {n}{}",
                    if *ok { "pass" } else { "FAIL" },
                    if d.is_empty() {
                        String::new()
                    } else {
                        format!(": {d}")
                    }
                )
            })
            .collect::<Vec<_>>()
            .join("\n");
    Ok(Report {
        json,
        summary,
        consistent: ok,
    })
}
