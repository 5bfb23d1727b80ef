use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use kamcap::contfrac::{diophantine_gamma, noble_mediant};
use kamcap::estimator::{cross_validate, hypothesis_of, prove, Certificate, EstimatorConfig};
use kamcap::formats::{read_freq, read_state, write_freq, write_state, FreqFile};
use kamcap::freqmap::{
    build_fam, detect_plateaus, gnuplot_script, mark_plateaus, regular_branch, to_csv, FamConfig, Observable, OrbitConfig,
};
use kamcap::model::{build_h0, ModelConfig, NewtonConfig};
use kamcap::normalizer::{normalize as run_normalizer, NormalizerConfig};
use kamcap::pipeline::{self, PipelineConfig};
use kamcap::{Error, ExplicitLedger, Interval, RationalPair};

use crate::{
    CliError, EstimateArgs, EstimateOpts, FamArgs, ModelArgs, ModelSpec, NobleArgs, NormalizeArgs, NormalizeOpts,
    ObservableArg, Outcome, RunArgs,
};

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| Error::Io { path: path.display().to_string(), source }.into()
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(io_err(path))
}

fn decimal(flag: &str, text: &str) -> Result<Interval, CliError> {
    Interval::from_decimal(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn model_config(spec: &ModelSpec) -> Result<(ModelConfig, Option<RationalPair>), CliError> {
    let eps = decimal("eps", &spec.eps)?;
    let psi = decimal("psi", &spec.psi)?;
    let noble = spec.noble.as_ref().map(|v| RationalPair::new(v[0], v[1]));
    let omega = match (&spec.omega, noble) {
        (_, Some(p)) => p.noble_enclosure(),
        (Some(w), None) => decimal("omega", w)?,
        (None, None) => return Err(CliError::Usage("one of --omega or --noble is required".into())),
    };
    Ok((ModelConfig::new(eps, psi, omega, spec.r_i), noble))
}

fn normalizer_config(o: &NormalizeOpts) -> NormalizerConfig {
    NormalizerConfig { min_divisor: o.min_divisor, trunc: o.trunc }
}

fn estimator_config(o: &EstimateOpts) -> EstimatorConfig {
    EstimatorConfig { r_ii: o.r_ii, a_floor: o.a_floor }
}

fn verdict(cert: &Certificate) -> Outcome {
    if cert.verdict.is_proved() {
        Outcome::Done
    } else {
        Outcome::NotProved
    }
}

pub fn model(a: &ModelArgs) -> Result<Outcome, CliError> {
    let (cfg, noble) = model_config(&a.spec)?;
    let (h0, newton) = build_h0(&cfg, &NewtonConfig::default())?;
    write_state(&a.out, &h0)?;
    write_freq(&a.freq_out, &FreqFile { omega: cfg.omega_target, second: Interval::ONE, noble })?;
    println!("xi_init {:e} after {} Newton steps (residual {:e})", newton.xi, newton.iterations, newton.residual);
    println!("wrote {} and {}", a.out.display(), a.freq_out.display());
    Ok(Outcome::Done)
}

pub fn normalize(a: &NormalizeArgs) -> Result<Outcome, CliError> {
    let freq = read_freq(&a.freq)?;
    let h0 = read_state(&a.tfh, freq.omega)?;
    let mut log = match &a.log {
        Some(p) => Some(BufWriter::new(File::create(p).map_err(io_err(p))?)),
        None => None,
    };
    let result = run_normalizer(&h0, &normalizer_config(&a.opts), log.as_mut().map(|w| w as &mut dyn Write));
    if let (Some(w), Some(p)) = (log.as_mut(), &a.log) {
        w.flush().map_err(io_err(p))?;
    }
    match result {
        Ok(n) => {
            n.ledger.write(&a.ledger)?;
            write_state(&a.snapshot, &n.state)?;
            println!("{} steps, m = {}", h0.r_i, n.ledger.m);
            println!("wrote {} and {}", a.ledger.display(), a.snapshot.display());
            Ok(Outcome::Done)
        }
        Err(e) => {
            let h = hypothesis_of(e)?;
            println!("NOT-PROVED: {h}");
            Ok(Outcome::NotProved)
        }
    }
}

pub fn estimate(a: &EstimateArgs) -> Result<Outcome, CliError> {
    let led = ExplicitLedger::read(&a.ledger)?;
    let gamma = match &a.gamma {
        Some(g) => decimal("gamma", g)?,
        None => {
            let pair = read_freq(&a.freq)?.noble.ok_or_else(|| {
                CliError::Usage(format!("{}: no noble pair to derive γ from; pass --gamma", a.freq.display()))
            })?;
            diophantine_gamma(pair.noble_surd())?
        }
    };
    if a.cross_check {
        let check = cross_validate(&led)?;
        println!("domination: {} norms compared, {} violations", check.compared, check.violations.len());
        if let Some(v) = check.violations.first() {
            return Err(CliError::Usage(format!("majorant below explicit norm: {v:?}")));
        }
    }
    let cert = prove(&led, &estimator_config(&a.opts), gamma)?;
    write_text(&a.certificate, &cert.to_text())?;
    print!("{}", cert.to_text());
    Ok(verdict(&cert))
}

pub fn run(a: &RunArgs) -> Result<Outcome, CliError> {
    let (model, noble) = model_config(&a.spec)?;
    let noble = noble.ok_or_else(|| CliError::Usage("run needs --noble to derive γ".into()))?;
    let cfg = PipelineConfig {
        model,
        noble,
        newton: NewtonConfig::default(),
        normalizer: normalizer_config(&a.normalize),
        estimator: estimator_config(&a.estimate),
    };
    let out = pipeline::run(&cfg)?;
    std::fs::create_dir_all(&a.dir).map_err(io_err(&a.dir))?;
    let freq = FreqFile { omega: cfg.model.omega_target, second: Interval::ONE, noble: Some(noble) };
    write_freq(&a.dir.join("omega.freq"), &freq)?;
    if let Some(n) = &out.normalization {
        n.ledger.write(&a.dir.join("ledger.txt"))?;
        write_state(&a.dir.join("hri.tfh"), &n.state)?;
    }
    write_text(&a.dir.join("certificate.txt"), &out.certificate.to_text())?;
    print!("{}", out.certificate.to_text());
    Ok(verdict(&out.certificate))
}

pub fn fam(a: &FamArgs) -> Result<Outcome, CliError> {
    if a.n == 0 || a.periods == 0 || a.substeps == 0 {
        return Err(CliError::Usage("--n, --periods and --substeps must be positive".into()));
    }
    let cfg = FamConfig {
        orbit: OrbitConfig {
            eps: a.eps,
            with_control: !a.no_control,
            psi_control: a.psi_control,
            periods: a.periods,
            substeps: a.substeps,
            observable: match a.observable {
                ObservableArg::Phase => Observable::Phase,
                ObservableArg::Action => Observable::Action,
            },
        },
        from: a.from,
        to: a.to,
        count: a.n,
        drift_tol: a.drift_tol,
    };
    let mut samples = build_fam(&cfg)?;
    let plateaus = detect_plateaus(&samples, a.plateau_tol);
    mark_plateaus(&mut samples, &plateaus);
    write_text(&a.out, &to_csv(&samples))?;
    if let Some(p) = &a.plot {
        let png = a.out.with_extension("png");
        let title = format!("eps = {}", a.eps);
        write_text(p, &gnuplot_script(&a.out.display().to_string(), &png.display().to_string(), &title))?;
    }
    for p in &plateaus {
        let w = samples[p.first].omega;
        println!("plateau {} omega {w:.10} psi0 [{}, {}] ({} orbits)", p.ratio, p.psi_from, p.psi_to, p.last + 1 - p.first);
    }
    match regular_branch(&samples, &plateaus, a.branch_len) {
        Some((i, j)) => {
            println!("regular branch psi0 [{}, {}] ({} orbits)", samples[i].psi0, samples[j].psi0, j + 1 - i)
        }
        None => println!("regular branch none"),
    }
    println!("wrote {}", a.out.display());
    Ok(Outcome::Done)
}

pub fn noble(a: &NobleArgs) -> Result<Outcome, CliError> {
    let pair = RationalPair::new(a.first, a.second);
    if !pair.is_adjacent() {
        eprintln!("warning: {} and {} are not Farey neighbours", a.first, a.second);
    }
    println!("{:.*}", a.digits, noble_mediant(pair));
    Ok(Outcome::Done)
}
