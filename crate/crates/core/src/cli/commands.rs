use serde_json::Value;

use super::record::{
    bound_record, compress_ranges, num, to_csv, to_json, to_text, to_text_table, OutputRecord,
};
use super::reproduce::reference_table;
use super::{
    BoundArgs, ClassArg, CliError, EntropyArg, Format, InputsArg, InstanceArgs, Outcome,
    ReproduceArgs, SweepArgs, VerifyArgs, EXIT_NOT_SIGNIFICANT, EXIT_OK,
};
use crate::bounds::{Alpha, BoundInput, BoundKind, DBar, Level, Theorem};
use crate::complexity::{ComplexitySpec, LevelEntropy};
use crate::error::BoundError;
use crate::montecarlo::{self, DataModel, HypothesisClass, InputLaw, Target, VerifyConfig};
use crate::optimizer::{optimize_k, sweep as run_sweep, Spacing, SweepParameter, SweepSpec};

type CliResult<T> = Result<T, CliError>;

/// Largest `N (k+1) trials` accepted by `verify` without `--force`.
const VERIFY_SCALE_LIMIT: f64 = 1e9;

enum KChoice {
    Fixed(u64),
    Auto,
}

fn parse_theorem(tag: &str) -> CliResult<Theorem> {
    tag.parse().map_err(|_| {
        let known: Vec<&str> = Theorem::ALL.iter().map(|t| t.tag()).collect();
        CliError::flag(
            "theorem",
            format!(
                "unknown tag `{tag}` (expected one of: {})",
                known.join(", ")
            ),
        )
    })
}

fn parse_k(s: &str) -> CliResult<KChoice> {
    if s == "auto" {
        return Ok(KChoice::Auto);
    }
    match s.parse::<u64>() {
        Ok(k) if k >= 1 => Ok(KChoice::Fixed(k)),
        _ => Err(CliError::flag(
            "k",
            format!("expected a positive integer or `auto`, got `{s}`"),
        )),
    }
}

fn parse_alpha(s: &str) -> CliResult<Alpha> {
    match s {
        "auto" => Ok(Alpha::Auto),
        "inv-sqrt-d" => Ok(Alpha::InvSqrtD),
        _ => match s.parse::<f64>() {
            Ok(a) if a > 0.0 && a.is_finite() => Ok(Alpha::Value(a)),
            _ => Err(CliError::flag(
                "alpha",
                format!("expected a positive real, `auto` or `inv-sqrt-d`, got `{s}`"),
            )),
        },
    }
}

fn parse_level(s: &str) -> CliResult<Level> {
    if s == "auto" {
        return Ok(Level::Auto);
    }
    match s.parse::<u32>() {
        Ok(j) if j >= 1 => Ok(Level::Fixed(j)),
        _ => Err(CliError::flag(
            "j",
            format!("expected a positive integer or `auto`, got `{s}`"),
        )),
    }
}

fn parse_dbar(s: &str) -> CliResult<DBar> {
    if s == "dstar" {
        return Ok(DBar::DStar);
    }
    match s.parse::<f64>() {
        Ok(d) if d > 0.0 && d.is_finite() => Ok(DBar::Value(d)),
        _ => Err(CliError::flag(
            "dbar",
            format!("expected a positive real or `dstar`, got `{s}`"),
        )),
    }
}

fn not_for(flag: &str, theorem: Theorem) -> CliError {
    CliError::flag(flag, format!("not a parameter of {theorem}"))
}

/// Bound kind and instance described by the shared flags; `k` is 1 when
/// it is to be searched.
fn build(inst: &InstanceArgs) -> CliResult<(BoundKind, BoundInput, KChoice)> {
    let theorem = parse_theorem(&inst.theorem)?;
    let mut kind = BoundKind::default_for(theorem);
    if let Some(a) = &inst.alpha {
        kind = kind.with_alpha(parse_alpha(a)?)?;
    }
    if let Some(z) = inst.zeta {
        match kind {
            BoundKind::PreviousPac { .. } => kind = BoundKind::PreviousPac { zeta: z },
            _ => return Err(not_for("zeta", theorem)),
        }
    }
    if let Some(d) = &inst.dbar {
        let dbar = parse_dbar(d)?;
        kind = match kind {
            BoundKind::InductiveNearOptimalLambda { .. } => {
                BoundKind::InductiveNearOptimalLambda { dbar }
            }
            BoundKind::InductiveExchangeableLambda { .. } => {
                BoundKind::InductiveExchangeableLambda { dbar }
            }
            _ => return Err(not_for("dbar", theorem)),
        };
    }
    if inst.weakened {
        match kind {
            BoundKind::InductiveExchangeableK1 { alpha, .. } => {
                kind = BoundKind::InductiveExchangeableK1 {
                    alpha,
                    weakened: true,
                }
            }
            _ => return Err(not_for("weakened", theorem)),
        }
    }
    if let Some(j) = &inst.j {
        if theorem != Theorem::RelativeChained {
            return Err(not_for("j", theorem));
        }
        kind = kind.with_level(parse_level(j)?);
    }
    if let Some(e) = inst.level_entropy {
        let entropy = match e {
            EntropyArg::LevelCount => LevelEntropy::LevelCount,
            EntropyArg::RealLog => LevelEntropy::RealLog,
        };
        match kind {
            BoundKind::RelativeChained { level, .. } => {
                kind = BoundKind::RelativeChained { level, entropy }
            }
            _ => return Err(not_for("level-entropy", theorem)),
        }
    }
    let complexity = match (inst.h, inst.log_class_size, inst.d) {
        (Some(h), _, _) => ComplexitySpec::VcDim(h),
        (_, Some(l), _) => ComplexitySpec::LogClassSize(l),
        (_, _, Some(d)) => ComplexitySpec::ExplicitD(d),
        _ => {
            return Err(CliError(
                "one of --h, --log-class-size or --d is required".into(),
            ))
        }
    };
    let k = parse_k(&inst.k)?;
    let fixed = match k {
        KChoice::Fixed(k) => k,
        KChoice::Auto => 1,
    };
    let input = BoundInput::new(inst.n, fixed, inst.epsilon, inst.r1, complexity);
    input.validate()?;
    Ok((kind, input, k))
}

fn render_one(format: Format, rec: OutputRecord) -> String {
    match format {
        Format::Json => to_json(&rec),
        Format::Csv => to_csv(&[rec]),
        Format::Text => to_text(&rec),
    }
}

fn render_many(format: Format, recs: Vec<OutputRecord>) -> String {
    match format {
        Format::Json => to_json(&recs),
        Format::Csv => to_csv(&recs),
        Format::Text => to_text_table(&recs),
    }
}

fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> CliResult<R> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::flag("threads", "must be >= 1")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::flag("threads", e)),
    }
}

pub(super) fn bound(args: &BoundArgs) -> CliResult<Outcome> {
    let (kind, input, k) = build(&args.instance)?;
    let (input, search) = match k {
        KChoice::Fixed(_) => (input, None),
        KChoice::Auto => {
            let opt = optimize_k(&kind, &input, args.instance.k_max)?;
            (input.with_k(opt.argmin), Some(opt))
        }
    };
    let res = match kind.evaluate(&input) {
        Ok(r) => r,
        Err(e @ BoundError::NoCertifiedLevel { .. }) => {
            return Ok(Outcome {
                code: EXIT_NOT_SIGNIFICANT,
                stdout: String::new(),
                stderr: format!("{e}\n"),
            })
        }
        Err(e) => return Err(e.into()),
    };
    let mut rec = bound_record(&input, &res);
    if let Some(opt) = search {
        rec.insert("k_search_max".into(), Value::from(args.instance.k_max));
        rec.insert(
            "k_plateau".into(),
            Value::from(compress_ranges(&opt.plateau)),
        );
        rec.insert(
            "k_plateau_printed".into(),
            Value::from(compress_ranges(&opt.printed_plateau(4))),
        );
    }
    let code = if res.significant && res.valid {
        EXIT_OK
    } else {
        EXIT_NOT_SIGNIFICANT
    };
    Ok(Outcome::ok(render_one(args.format, rec), code))
}

pub(super) fn reproduce(args: &ReproduceArgs) -> CliResult<Outcome> {
    if !(args.tolerance >= 0.0 && args.tolerance.is_finite()) {
        return Err(CliError::flag("tolerance", "must be finite and >= 0"));
    }
    let rows = reference_table(args.tolerance)?;
    let passed = rows.iter().filter(|r| r.pass).count();
    let code = if passed == rows.len() {
        EXIT_OK
    } else {
        EXIT_NOT_SIGNIFICANT
    };
    let recs: Vec<OutputRecord> = rows.iter().map(|r| r.record()).collect();
    let mut out = render_many(args.format, recs);
    if args.format == Format::Text {
        out.push_str(&format!("{passed}/{} rows pass\n", rows.len()));
    }
    Ok(Outcome::ok(out, code))
}

pub(super) fn sweep(args: &SweepArgs) -> CliResult<Outcome> {
    let parameter: SweepParameter = args.vary.parse()?;
    if args.instance.k == "auto" {
        return Err(CliError::flag(
            "k",
            "`auto` cannot be combined with a sweep",
        ));
    }
    let (kind, input, _) = build(&args.instance)?;
    let spacing = match (args.step, args.points) {
        (Some(s), _) => Spacing::Step(s),
        (None, Some(c)) => Spacing::Count(c),
        (None, None) if matches!(parameter, SweepParameter::K | SweepParameter::J) => {
            Spacing::Step(1.0)
        }
        (None, None) => return Err(CliError::flag("step", "required unless --points is given")),
    };
    let spec = SweepSpec {
        parameter,
        from: args.from,
        to: args.to,
        spacing,
        bound: kind,
    };
    let points = with_threads(args.threads, || run_sweep(&spec, &input))??;
    let mut recs = Vec::with_capacity(points.len());
    let mut failures = 0;
    for p in points {
        let mut rec = OutputRecord::new();
        rec.insert("vary".into(), Value::from(args.vary.as_str()));
        let point = match parameter {
            SweepParameter::K | SweepParameter::J => Value::from(p.parameter as u64),
            _ => num(p.parameter),
        };
        rec.insert("point".into(), point);
        match p.result {
            Ok(res) => rec.extend(bound_record(&p.input, &res)),
            Err(e) => {
                failures += 1;
                rec.insert("theorem".into(), Value::from(kind.theorem().tag()));
                rec.insert("error".into(), Value::from(e.to_string()));
            }
        }
        recs.push(rec);
    }
    if failures == recs.len() {
        return Err(CliError(format!(
            "the bound failed at every point of the sweep ({})",
            recs[0]["error"].as_str().unwrap_or("")
        )));
    }
    Ok(Outcome::ok(render_many(args.format, recs), EXIT_OK))
}

pub(super) fn verify(args: &VerifyArgs) -> CliResult<Outcome> {
    let theorem = parse_theorem(&args.theorem)?;
    let scale = args.n as f64 * (args.k as f64 + 1.0) * args.trials as f64;
    if scale > VERIFY_SCALE_LIMIT && !args.force {
        return Err(CliError::flag(
            "force",
            format!("N (k+1) trials = {scale:e} exceeds {VERIFY_SCALE_LIMIT:e}; pass --force to run anyway"),
        ));
    }
    if args.grid < 2 {
        return Err(CliError::flag("grid", "must be >= 2"));
    }
    let inputs = match args.inputs {
        InputsArg::Uniform => InputLaw::Uniform,
        InputsArg::Staggered => InputLaw::staggered(),
    };
    let model = DataModel::new(inputs, Target::Threshold { t: args.target }, args.noise);
    let class = match args.class {
        ClassArg::Thresholds => HypothesisClass::thresholds(args.grid),
        ClassArg::Intervals => HypothesisClass::intervals(args.grid),
    };
    let cfg = VerifyConfig {
        n: args.n,
        k: args.k,
        epsilon: args.epsilon,
        trials: args.trials,
        seed: args.seed,
    };
    let kind = BoundKind::default_for(theorem);
    let report = with_threads(args.threads, || {
        montecarlo::verify(&kind, &model, &class, &cfg)
    })??;
    let code = if report.pass {
        EXIT_OK
    } else {
        EXIT_NOT_SIGNIFICANT
    };
    let out = match args.format {
        Format::Json => to_json(&report),
        other => {
            let rec: OutputRecord =
                serde_json::from_value(serde_json::to_value(&report).expect("serialisable"))
                    .expect("report is a flat object");
            render_one(other, rec)
        }
    };
    Ok(Outcome::ok(out, code))
}
