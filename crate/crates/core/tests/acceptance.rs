//! Acceptance gate: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the report is printed even when
//! everything passes.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use critnorm::lab::checks::divergence_free_htheta;
use critnorm::lab::{self, suite, LabConfig};
use critnorm::lp::blocks::{reconstruct, without_zero_radius, BlockMode};
use critnorm::lp::cutoff::{chi, phi, CutoffPair};
use critnorm::lp::norms::{aniso_sobolev_sq, FieldNorms};
use critnorm::monitors::{MonitorKind, MonitorOutput, MonitorSet, MonitorSpec};
use critnorm::solver::config::{taylor_green, InitialData, SolverConfig};
use critnorm::solver::dynamics::tendency;
use critnorm::solver::reform::{f_terms, htheta_energy_rate, q_terms, tilde_ns_residual_with_viscosity};
use critnorm::solver::run;
use critnorm::spectral::random::{random_solenoidal, Band};
use critnorm::spectral::{Grid, SpectralField, VelocityState};
use critnorm::vorticity::{compute_vorticity, horizontal_split, velocity_from_vorticity};
use critnorm::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel_diff(a: &SpectralField, b: &SpectralField) -> f64 {
    let scale = a.max_coeff().max(b.max_coeff());
    if scale == 0.0 {
        0.0
    } else {
        a.max_diff(b) / scale
    }
}

fn white_noise(grid: Grid, rng: &mut ChaCha8Rng) -> SpectralField {
    let values: Vec<f64> = (0..grid.size()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    SpectralField::transform(&values, grid).unwrap()
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

fn partition_of_unity() -> Result<Outcome> {
    let c = CutoffPair;
    let uniform = (0..10_000).map(|i| 1e3 * (i as f64 + 0.5) / 1e4);
    let geometric = (0..10_000).map(|i| 1e-6 * 1e9f64.powf(i as f64 / 9_999.0));
    let mut worst = 0.0_f64;
    let mut support_ok = true;
    for tau in uniform.chain(geometric) {
        worst = worst.max((c.inhomogeneous_sum(tau) - 1.0).abs());
        let (_, chi_hi) = c.chi_support();
        let (phi_lo, phi_hi) = c.phi_support();
        support_ok &= tau < chi_hi || chi(tau) == 0.0;
        support_ok &= tau > 0.75 || chi(tau) == 1.0;
        support_ok &= (phi_lo..=phi_hi).contains(&tau) || phi(tau) == 0.0;
    }
    Ok(outcome(
        worst <= 1e-12 && support_ok,
        format!("max |sum - 1| = {worst:.2e} over 2e4 samples, supports exact: {support_ok}"),
    ))
}

fn reconstruction() -> Result<Outcome> {
    let g = Grid::cubic(32)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = [0.0_f64; 3];
    for _ in 0..50 {
        let f = white_noise(g, &mut rng);
        for (w, mode) in worst.iter_mut().zip(BlockMode::ALL) {
            // modes with zero radius (the mean, or k_h = 0 / k3 = 0) lie in no block
            let target = without_zero_radius(&f, mode);
            *w = w.max(rel_diff(&reconstruct(&f, mode), &target));
        }
    }
    Ok(outcome(
        worst.iter().all(|&w| w <= 1e-10),
        format!("max relative error iso/h/v = {:.2e}/{:.2e}/{:.2e}", worst[0], worst[1], worst[2]),
    ))
}

fn biot_savart() -> Result<Outcome> {
    let g = Grid::cubic(32)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut round, mut back, mut split_err) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..50 {
        let v = random_solenoidal(g, &Band::isotropic(10.0, 1.0), 1.0, &mut rng)?;
        // zero horizontal mean: drop the k_h = 0 modes, which keeps the field solenoidal
        let c = v.components().clone().map(|c| c.map_real_symbol(|_, k| if k[0] == 0.0 && k[1] == 0.0 { 0.0 } else { 1.0 }));
        let v = VelocityState::new(c, 0.0)?;
        let w = compute_vorticity(&v);
        let v2 = velocity_from_vorticity(&w.omega)?;
        for i in 0..3 {
            round = round.max(rel_diff(v2.component(i), v.component(i)));
        }
        let w2 = compute_vorticity(&v2);
        for i in 0..3 {
            back = back.max(rel_diff(&w2.omega[i], &w.omega[i]));
        }
        let s = horizontal_split(&v);
        for i in 0..2 {
            split_err = split_err.max(rel_diff(&(&s.curl[i] + &s.div[i]), v.component(i)));
        }
    }
    Ok(outcome(
        round < 1e-10 && back < 1e-10 && split_err < 1e-10,
        format!("v->w->v {round:.2e}, w->v->w {back:.2e}, curl+div split {split_err:.2e} (50 samples)"),
    ))
}

/// Taylor-Green at 64^3, streamed through the balance monitors.
fn balance_run() -> Result<(MonitorOutput, f64)> {
    let g = Grid::cubic(64)?;
    let mut cfg = SolverConfig::new(1e-3, 0.5);
    cfg.nu = 1.0;
    cfg.snapshot_every = 5;
    let mut set = MonitorSet::new(
        vec![MonitorSpec::new(MonitorKind::EnergyBalance), MonitorSpec::new(MonitorKind::KlipsBalance)],
        cfg.nu,
    )?;
    let v0 = taylor_green(g, 1.0)?;
    let start = Instant::now();
    pool(1).install(|| run(&v0, &cfg, |_| Ok(()), |v| set.observe(v)))?;
    Ok((set.finish(), start.elapsed().as_secs_f64()))
}

fn worst_value(out: &MonitorOutput, kind: MonitorKind) -> f64 {
    out.series_of(kind).unwrap().values.iter().copied().fold(0.0, f64::max)
}

fn energy_identity(out: &MonitorOutput, secs: f64) -> Outcome {
    let r = worst_value(out, MonitorKind::EnergyBalance);
    outcome(
        r < 1e-6 && secs <= 600.0,
        format!("max relative residual {r:.2e}, 500 steps in {secs:.0} s on one thread"),
    )
}

fn l32_identity(out: &MonitorOutput) -> Outcome {
    let r = worst_value(out, MonitorKind::KlipsBalance);
    outcome(r < 1e-3, format!("max relative residual {r:.2e}"))
}

fn reformulation() -> Result<Outcome> {
    let g = Grid::cubic(32)?;
    let nu = 1.0;
    let mut cfg = SolverConfig::new(1e-3, 0.05);
    cfg.nu = nu;
    cfg.snapshot_every = 10;
    let v0 = InitialData::PerturbedTaylorGreen {
        seed: 6,
        amplitude: 1.0,
        perturbation: 0.3,
        kmax: 6.0,
    }
    .build(g)?;
    let theta = 0.125;
    let (mut tilde, mut f_cons, mut q_cons, mut count) = (0.0_f64, 0.0_f64, 0.0_f64, 0);
    run(&v0, &cfg, |_| Ok(()), |v| {
        let dvdt = tendency(v, nu)?;
        tilde = tilde.max(tilde_ns_residual_with_viscosity(v, &dvdt, nu).relative());
        f_cons = f_cons.max(f_terms(v)?.consistency());
        let rate = htheta_energy_rate(v, &dvdt, theta, nu);
        let q = q_terms(v, theta);
        let scale = [rate, q.q1, q.q2, q.q3].iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        q_cons = q_cons.max((rate + q.sum()).abs() / scale);
        count += 1;
        Ok(())
    })?;
    Ok(outcome(
        tilde < 1e-8 && f_cons < 1e-6 && q_cons < 1e-4,
        format!("{count} snapshots: residual {tilde:.2e}, F-sum {f_cons:.2e}, Q-sum {q_cons:.2e}"),
    ))
}

fn scaling_monitors() -> Vec<MonitorSpec> {
    let mut theta = MonitorSpec::new(MonitorKind::HThetaEnergy);
    theta.theta = 0.125;
    vec![
        MonitorSpec::new(MonitorKind::CriterionIntegral),
        MonitorSpec::new(MonitorKind::VorticityL32),
        theta,
        MonitorSpec::new(MonitorKind::EndpointBp),
    ]
}

fn monitored(v0: &VelocityState, cfg: &SolverConfig) -> Result<MonitorOutput> {
    let mut set = MonitorSet::new(scaling_monitors(), cfg.nu)?;
    run(v0, cfg, |_| Ok(()), |v| set.observe(v))?;
    Ok(set.finish())
}

fn scaling() -> Result<Outcome> {
    let lambda = 2.0;
    let g = Grid::cubic(32)?;
    let v0 = InitialData::PerturbedTaylorGreen {
        seed: 7,
        amplitude: 1.0,
        perturbation: 0.3,
        kmax: 6.0,
    }
    .build(g)?;
    let mut cfg = SolverConfig::new(2e-3, 0.1);
    cfg.nu = 1.0;
    cfg.snapshot_every = 5;
    let a = monitored(&v0, &cfg)?;
    let b = monitored(&v0.rescaled(lambda)?, &cfg.rescaled(lambda))?;
    let mut worst = Vec::new();
    for (sa, sb) in a.series.iter().zip(&b.series) {
        // integrands scale like 1/t, so only their time integrals are invariant
        let integrated = matches!(sa.spec.kind, MonitorKind::CriterionIntegral | MonitorKind::EndpointBp);
        let (xa, xb) = if integrated {
            (sa.running_integral.as_slice(), sb.running_integral.as_slice())
        } else {
            (sa.values.as_slice(), sb.values.as_slice())
        };
        let change = xa
            .iter()
            .zip(xb)
            .filter(|(x, _)| **x != 0.0)
            .map(|(x, y)| ((y - x) / x).abs())
            .fold(0.0_f64, f64::max);
        worst.push((sa.spec.kind.name(), change));
    }
    let pass = worst.iter().all(|&(_, c)| c < 0.02);
    let detail = worst
        .iter()
        .map(|(n, c)| format!("{n} {c:.1e}"))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(outcome(pass, format!("lambda = 2, max relative change: {detail}")))
}

fn inequality_suites() -> Result<Outcome> {
    let cfg = LabConfig::default();
    let start = Instant::now();
    let reports = pool(4).install(|| lab::run_all(&cfg))?;
    let secs = start.elapsed().as_secs_f64();
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.lemma_id.as_str()).collect();
    let hard: usize = reports.iter().map(|r| r.hard_violations).sum();
    // re-run the cheapest suites at full size and compare the serialized reports
    let mut deterministic = true;
    for id in ["lemma4.4-isoaniso", "eq-isoanisoinclud"] {
        let first = reports.iter().find(|r| r.lemma_id == id).expect("suite in registry");
        let again = lab::run(id, &cfg)?;
        deterministic &= serde_json::to_string(first).unwrap() == serde_json::to_string(&again).unwrap();
    }
    Ok(outcome(
        failed.is_empty() && hard == 0 && deterministic && secs <= 900.0,
        format!(
            "{} suites, failed {:?}, hard violations {hard}, deterministic {deterministic}, {secs:.0} s",
            reports.len(),
            failed
        ),
    ))
}

fn divergence_free_bound() -> Result<Outcome> {
    let cfg = LabConfig::default();
    let s = suite("prop2.1-biotsavart-aniso")?;
    let coarse = Grid::cubic(cfg.n)?;
    let fine = Grid::cubic(cfg.refine_n)?;
    let mut lines = Vec::new();
    let mut pass = true;
    for theta in lab::suites::DIV_FREE_THETA {
        let (mut sup_c, mut sup_f) = (0.0_f64, 0.0_f64);
        for i in 0..200 {
            let w = &s.sample(coarse, cfg.seed, i)?.vectors[0];
            let (l, r) = divergence_free_htheta(w, theta)?;
            sup_c = sup_c.max(l / r);
            let (l, r) = divergence_free_htheta(&w.zero_padded(fine)?, theta)?;
            sup_f = sup_f.max(l / r);
        }
        let change = (sup_f - sup_c).abs() / sup_c;
        pass &= sup_c.is_finite() && sup_f.is_finite() && change <= 0.10;
        lines.push(format!("theta={theta}: {sup_c:.4} -> {sup_f:.4}"));
    }
    Ok(outcome(pass, format!("200 samples, sup ratio {}->{}: {}", cfg.n, cfg.refine_n, lines.join("; "))))
}

fn critnorm(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_critnorm"))
        .args(args)
        .env_remove("CRITNORM_THREADS")
        .output()
        .expect("binary runs")
}

fn tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let Ok(entries) = std::fs::read_dir(dir) else {
        return Vec::new();
    };
    let mut out: Vec<(String, Vec<u8>)> = entries
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

fn determinism() -> Result<Outcome> {
    let tmp = tempfile::tempdir()?;
    let cfg = tmp.path().join("run.toml");
    let run_dir = tmp.path().join("run");
    std::fs::write(
        &cfg,
        format!(
            "[grid]\nn = 16\n[initial]\nkind = \"perturbed-taylor-green\"\nseed = 4\n\
             [solver]\ndt = 0.01\nt_end = 0.05\n\
             [[monitors]]\nkind = \"criterion-integral\"\n[[monitors]]\nkind = \"energy-balance\"\n\
             [output]\ndir = \"{}\"\n",
            run_dir.display()
        ),
    )?;
    let reports = tmp.path().join("reports");
    let cfg_s = cfg.to_str().unwrap();
    let commands: Vec<Vec<String>> = vec![
        vec!["simulate".into(), "--config".into(), cfg_s.into(), "--seed".into(), "9".into()],
        vec![
            "verify".into(),
            "lemma4.4-isoaniso".into(),
            "--count".into(),
            "8".into(),
            "--n".into(),
            "16".into(),
            "--refine-count".into(),
            "2".into(),
            "--refine-n".into(),
            "32".into(),
            "--out".into(),
            reports.to_str().unwrap().into(),
        ],
    ];
    let mut same = true;
    for args in &commands {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let dir = if args[0] == "simulate" { &run_dir } else { &reports };
        let a = critnorm(&args);
        let first = tree(dir);
        if dir.exists() {
            std::fs::remove_dir_all(dir)?;
        }
        let b = critnorm(&args);
        same &= a.status.success() && a.status.code() == b.status.code() && a.stdout == b.stdout && first == tree(dir);
    }
    let snap = run_dir.join("snap-000005.cnf");
    let norms = ["norms", snap.to_str().unwrap(), "--spec", "htheta:theta=0.125", "--spec", "heat:p=5"];
    let (a, b) = (critnorm(&norms), critnorm(&norms));
    same &= a.status.success() && a.stdout == b.stdout;
    let monitor = ["monitor", run_dir.to_str().unwrap(), "--config", cfg_s, "--out"];
    let m1 = tmp.path().join("m1");
    let m2 = tmp.path().join("m2");
    let mut args1 = monitor.to_vec();
    args1.push(m1.to_str().unwrap());
    let mut args2 = monitor.to_vec();
    args2.push(m2.to_str().unwrap());
    same &= critnorm(&args1).status.success() && critnorm(&args2).status.success() && tree(&m1) == tree(&m2);
    Ok(outcome(same, "simulate, verify, norms and monitor repeated with identical inputs".into()))
}

/// Not a numbered criterion: the block-sum form of `H^{s,s'}` against the
/// spectral weight. The two are equivalent norms, not equal ones, because
/// the squared partition weights do not sum to one.
fn sobolev_besov_gap() -> Result<f64> {
    let g = Grid::cubic(32)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let f = white_noise(g, &mut rng).map_real_symbol(|_, k| if k[0] == 0.0 && k[1] == 0.0 || k[2] == 0.0 { 0.0 } else { 1.0 });
        for (s, sp) in [(0.0, 0.0), (0.5, 0.25), (-0.375, 0.125)] {
            let spectral = aniso_sobolev_sq(&f, s, sp).sqrt();
            let blocks = FieldNorms::new(&f).aniso_besov(s, 2.0, 2.0, sp, 2.0)?;
            worst = worst.max((blocks - spectral).abs() / spectral);
        }
    }
    Ok(worst)
}

fn report(index: usize, name: &str, o: Result<Outcome>) -> bool {
    let o = o.unwrap_or_else(|e| outcome(false, format!("error: {e}")));
    println!("criterion {index:>2} {name:<30} {}  {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    o.pass
}

fn main() {
    let started = Instant::now();
    let mut all = true;
    all &= report(1, "partition of unity", partition_of_unity());
    all &= report(2, "block reconstruction", reconstruction());
    all &= report(3, "Biot-Savart roundtrips", biot_savart());
    match balance_run() {
        Ok((balance, secs)) => {
            all &= report(4, "energy identity", Ok(energy_identity(&balance, secs)));
            all &= report(5, "L^{3/2} identity", Ok(l32_identity(&balance)));
        }
        Err(e) => {
            all &= report(4, "energy identity", Err(e));
            all &= report(5, "L^{3/2} identity", Ok(outcome(false, "balance run failed".into())));
        }
    }
    all &= report(6, "vorticity reformulation", reformulation());
    all &= report(7, "scaling invariance", scaling());
    all &= report(8, "inequality suites", inequality_suites());
    all &= report(9, "divergence-free H_theta bound", divergence_free_bound());
    all &= report(10, "determinism", determinism());
    match sobolev_besov_gap() {
        Ok(gap) => println!(
            "note: H^{{s,s'}} vs aniso Besov p=q1=q2=2 max relative gap {gap:.3e} (equality to 1e-6: {})",
            if gap <= 1e-6 { "PASS" } else { "FAIL, equivalent norms only" }
        ),
        Err(e) => println!("note: H^{{s,s'}} gap not computed: {e}"),
    }
    println!("acceptance total {:.0} s", started.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
