//! Command implementations. Each returns a structured report; the binary
//! serializes it and maps outcomes to exit codes (0 answered/passed,
//! 1 invariant violation, 2 usage, 3 cap or timeout).

use std::time::Instant;

use serde_json::{json, Value};

use transversal_core::embedding::validate_embedding;
use transversal_core::generate::{generate_collection, GenModel};
use transversal_core::hpartition::{
    good_h_partition, robust_h_partition, validate_good_h_partition, validate_h_partition,
    BoundaryFractions,
};
use transversal_core::oracle::brute_force_oracle;
use transversal_core::order::{
    check_interval_properties, forward_arcs, median_order_exact, median_order_local,
};
use transversal_core::pattern::{do_decompose, validate_do, OrientationPattern, OscillationClass};
use transversal_core::solver::{
    find_transversal_cycle, find_transversal_path, sweep_orientations, Pruning, SearchOptions,
    SearchOutcome, SweepKind,
};

use transversal_core::Ratio;

use crate::format::{serialize_instance, InstanceFile};
use crate::report::{RunReport, VerdictDoc};
use crate::suites;

/// Failure classes carrying their process exit code.
#[derive(Debug)]
pub enum CommandError {
    /// Bad arguments or malformed inputs (exit 2).
    Usage(String),
    /// An invariant check failed (exit 1).
    Violation(String),
    /// A size cap was exceeded or the time budget ran out (exit 3).
    Cap(String),
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CommandError::Usage(m) => write!(f, "usage error: {m}"),
            CommandError::Violation(m) => write!(f, "invariant violation: {m}"),
            CommandError::Cap(m) => write!(f, "cap/timeout: {m}"),
        }
    }
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) => 2,
            CommandError::Violation(_) => 1,
            CommandError::Cap(_) => 3,
        }
    }
}

fn map_core(e: transversal_core::Error) -> CommandError {
    match e {
        transversal_core::Error::Size { .. } => CommandError::Cap(e.to_string()),
        _ => CommandError::Usage(e.to_string()),
    }
}

pub type CmdResult = Result<RunReport, CommandError>;

pub fn parse_ratio(text: &str) -> Result<Ratio, CommandError> {
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a, b),
        None => (text, "1"),
    };
    let num: u64 = num
        .trim()
        .parse()
        .map_err(|_| CommandError::Usage(format!("bad ratio '{text}'")))?;
    let den: u64 = den
        .trim()
        .parse()
        .map_err(|_| CommandError::Usage(format!("bad ratio '{text}'")))?;
    Ratio::new(num, den).map_err(|e| CommandError::Usage(e.to_string()))
}

pub fn parse_pattern(text: &str) -> Result<OrientationPattern, CommandError> {
    text.parse()
        .map_err(|e: transversal_core::Error| CommandError::Usage(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Uniform,
    Transitive,
    Qr,
    CustomBias,
}

impl Model {
    pub fn parse(text: &str) -> Result<Self, CommandError> {
        match text {
            "uniform" => Ok(Model::Uniform),
            "transitive" => Ok(Model::Transitive),
            "qr" => Ok(Model::Qr),
            "custom-bias" => Ok(Model::CustomBias),
            other => Err(CommandError::Usage(format!("unknown model '{other}'"))),
        }
    }
}

pub fn cmd_gen(
    n: usize,
    m: usize,
    seed: u64,
    model: Model,
    bias_bp: Option<u32>,
) -> Result<(RunReport, String), CommandError> {
    let start = Instant::now();
    if n == 0 || m == 0 {
        return Err(CommandError::Usage("n and m must be positive".into()));
    }
    let gen_model = match model {
        Model::Uniform => GenModel::Uniform,
        Model::Transitive => GenModel::Transitive,
        Model::Qr => GenModel::QuadraticResidue,
        Model::CustomBias => GenModel::Bias {
            forward_bp: bias_bp
                .ok_or_else(|| CommandError::Usage("custom-bias needs --bias-bp".into()))?,
        },
    };
    let collection = generate_collection(n, m, seed, gen_model).map_err(map_core)?;
    let text = serialize_instance(&InstanceFile {
        collection,
        vertex_labels: None,
        color_labels: None,
    });
    let report = RunReport {
        command: "gen".into(),
        seed: Some(seed),
        options: json!({ "n": n, "m": m, "model": format!("{model:?}"), "bias_bp": bias_bp }),
        payload: json!({ "bytes": text.len() }),
        validations: 0,
        wall_ms: start.elapsed().as_millis(),
    };
    Ok((report, text))
}

pub struct SolveArgs {
    pub pattern: String,
    pub cycle: Option<bool>,
    pub cap: usize,
    pub time_budget_ms: Option<u64>,
    pub pruning: Pruning,
    pub anchor: Option<usize>,
}

fn resolve_kind(pattern: &OrientationPattern, cycle: Option<bool>) -> Result<bool, CommandError> {
    match cycle {
        Some(want) if want != pattern.is_cyclic() => Err(CommandError::Usage(
            "--kind disagrees with the pattern's '@' suffix".into(),
        )),
        Some(want) => Ok(want),
        None => Ok(pattern.is_cyclic()),
    }
}

pub fn cmd_solve(instance: &InstanceFile, args: &SolveArgs) -> CmdResult {
    let start = Instant::now();
    let pattern = parse_pattern(&args.pattern)?;
    let cyclic = resolve_kind(&pattern, args.cycle)?;
    let coll = &instance.collection;

    let deadline = args
        .time_budget_ms
        .map(|ms| Instant::now() + std::time::Duration::from_millis(ms));
    let stop = move || deadline.is_some_and(|d| Instant::now() >= d);
    let opts = SearchOptions {
        vertex_cap: args.cap,
        pruning: args.pruning,
        anchor: args.anchor,
        stop: if args.time_budget_ms.is_some() {
            Some(&stop)
        } else {
            None
        },
    };

    let outcome = if cyclic {
        find_transversal_cycle(coll, &pattern, &opts)
    } else {
        find_transversal_path(coll, &pattern, &opts)
    }
    .map_err(map_core)?;

    let mut validations = 0u64;
    if let SearchOutcome::Found(emb) = &outcome {
        validations += 1;
        if !validate_embedding(coll, &pattern, emb).is_ok() {
            return Err(CommandError::Violation(
                "solver emitted an invalid embedding".into(),
            ));
        }
    }
    // negatives re-verify against the oracle at oracle scale
    let mut oracle_checked = false;
    if outcome == SearchOutcome::None && coll.vertex_count() <= transversal_core::oracle::ORACLE_CAP
    {
        validations += 1;
        oracle_checked = true;
        let oracle = brute_force_oracle(coll, &pattern).map_err(map_core)?;
        if oracle.is_found() {
            return Err(CommandError::Violation(
                "solver reported none but the oracle found a copy".into(),
            ));
        }
    }
    Ok(RunReport {
        command: "solve".into(),
        seed: None,
        options: json!({
            "pattern": pattern.to_string(),
            "kind": if cyclic { "cycle" } else { "path" },
            "cap": args.cap,
            "pruning": format!("{:?}", args.pruning),
            "anchor": args.anchor,
        }),
        payload: json!({
            "verdict": VerdictDoc::from(&outcome),
            "oracle_checked": oracle_checked,
        }),
        validations,
        wall_ms: start.elapsed().as_millis(),
    })
}

pub fn cmd_sweep(instance: &InstanceFile, cycle: bool, dedupe: bool, cap: usize) -> CmdResult {
    let start = Instant::now();
    let coll = &instance.collection;
    let kind = if cycle {
        SweepKind::Cycle
    } else {
        SweepKind::Path
    };
    let opts = SearchOptions {
        vertex_cap: cap,
        ..SearchOptions::default()
    };
    let report = sweep_orientations(coll, kind, dedupe, &opts).map_err(map_core)?;
    let mut validations = 0u64;
    let oracle_scale = coll.vertex_count() <= transversal_core::oracle::ORACLE_CAP;
    for v in &report.verdicts {
        match &v.outcome {
            SearchOutcome::Found(emb) => {
                validations += 1;
                if !validate_embedding(coll, &v.pattern, emb).is_ok() {
                    return Err(CommandError::Violation(format!(
                        "invalid embedding for {}",
                        v.pattern
                    )));
                }
            }
            SearchOutcome::None if oracle_scale => {
                validations += 1;
                if brute_force_oracle(coll, &v.pattern)
                    .map_err(map_core)?
                    .is_found()
                {
                    return Err(CommandError::Violation(format!(
                        "sweep reported none but the oracle found {}",
                        v.pattern
                    )));
                }
            }
            _ => {}
        }
    }
    let verdicts: Vec<Value> = report
        .verdicts
        .iter()
        .map(|v| {
            json!({
                "pattern": v.pattern.to_string(),
                "verdict": VerdictDoc::from(&v.outcome),
            })
        })
        .collect();
    Ok(RunReport {
        command: "sweep".into(),
        seed: None,
        options: json!({
            "kind": if cycle { "cycle" } else { "path" },
            "dedupe": dedupe,
            "cap": cap,
        }),
        payload: json!({
            "verdicts": verdicts,
            "found": report.found,
            "none": report.none,
            "timeout": report.timeout,
            "exceptions": report
                .exceptions()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>(),
        }),
        validations,
        wall_ms: start.elapsed().as_millis(),
    })
}

pub struct VerifyScope {
    pub trials: u64,
    pub seed: u64,
    pub n_max: usize,
    pub max_len: usize,
    pub exhaustive: bool,
}

pub fn cmd_verify(suite: &str, scope: &VerifyScope) -> CmdResult {
    let start = Instant::now();
    let report = match suite {
        "props" => suites::props_suite(),
        "patterns" => suites::patterns_suite(scope.max_len),
        "hpartition" => {
            let mut r = suites::balanced_vertex_suite(&[10, 25, 60], scope.trials / 3, scope.seed);
            let h = suites::hpartition_suite(scope.trials, scope.n_max.max(20), scope.seed);
            r.suite = "hpartition".into();
            r.checks += h.checks;
            r.violations += h.violations;
            r.notes.extend(h.notes);
            r
        }
        "brooms" => {
            let mut r = suites::brooms_suite(scope.trials.min(200), scope.seed);
            let s = suites::short_paths_suite(scope.exhaustive, scope.trials, scope.seed);
            r.checks += s.checks;
            r.violations += s.violations;
            r.notes.extend(s.notes);
            r
        }
        "solver-oracle" => suites::solver_oracle_suite(scope.trials, scope.n_max, scope.seed),
        other => return Err(CommandError::Usage(format!("unknown suite '{other}'"))),
    };
    let passed = report.passed();
    let run = RunReport {
        command: "verify".into(),
        seed: Some(scope.seed),
        options: json!({
            "suite": suite,
            "trials": scope.trials,
            "n_max": scope.n_max,
            "max_len": scope.max_len,
            "exhaustive": scope.exhaustive,
        }),
        payload: serde_json::to_value(&report).unwrap(),
        validations: report.checks,
        wall_ms: start.elapsed().as_millis(),
    };
    if passed {
        Ok(run)
    } else {
        Err(CommandError::Violation(format!(
            "suite '{}' reported {} violations in {} checks: {}",
            suite,
            report.violations,
            report.checks,
            report.notes.join("; ")
        )))
    }
}

/// Samples seeded collections and logs every (instance, pattern) whose
/// verdict is a certified none, each re-verified by the oracle. For cycles
/// the consistently oriented patterns are tallied separately: their absence
/// is the known exception, not a finding.
pub fn cmd_hunt(n: usize, trials: u64, seed: u64, cycle: bool) -> CmdResult {
    let start = Instant::now();
    if !(2..=transversal_core::oracle::ORACLE_CAP).contains(&n) {
        return Err(CommandError::Cap(format!(
            "hunt is capped at n <= {}",
            transversal_core::oracle::ORACLE_CAP
        )));
    }
    if cycle && n < 3 {
        return Err(CommandError::Usage("cycle hunts need n >= 3".into()));
    }
    let m = if cycle { n } else { n - 1 };
    let kind = if cycle {
        SweepKind::Cycle
    } else {
        SweepKind::Path
    };
    let mut rng = transversal_core::generate::SplitMix64::new(seed);
    let mut hits: Vec<Value> = Vec::new();
    let mut directed_exceptions = 0u64;
    let mut validations = 0u64;
    for trial in 0..trials {
        let instance_seed = rng.next_u64();
        let coll = generate_collection(n, m, instance_seed, GenModel::Uniform).unwrap();
        let sweep =
            sweep_orientations(&coll, kind, true, &SearchOptions::default()).map_err(map_core)?;
        for v in &sweep.verdicts {
            if v.outcome != SearchOutcome::None {
                continue;
            }
            let directed = v.pattern.is_directed();
            if cycle && directed {
                directed_exceptions += 1;
                continue;
            }
            // re-verify the miss before logging it
            validations += 1;
            let oracle = brute_force_oracle(&coll, &v.pattern).map_err(map_core)?;
            if oracle.is_found() {
                return Err(CommandError::Violation(format!(
                    "sweep reported none but the oracle found {} (trial {trial})",
                    v.pattern
                )));
            }
            let text = serialize_instance(&InstanceFile {
                collection: coll.clone(),
                vertex_labels: None,
                color_labels: None,
            });
            hits.push(json!({
                "trial": trial,
                "instance_seed": instance_seed,
                "pattern": v.pattern.to_string(),
                "instance": text,
            }));
        }
    }
    Ok(RunReport {
        command: "hunt".into(),
        seed: Some(seed),
        options: json!({
            "n": n,
            "m": m,
            "trials": trials,
            "kind": if cycle { "cycle" } else { "path" },
        }),
        payload: json!({
            "hits": hits,
            "directed_cycle_exceptions": directed_exceptions,
        }),
        validations,
        wall_ms: start.elapsed().as_millis(),
    })
}

pub fn cmd_decompose(pattern_text: &str) -> CmdResult {
    let start = Instant::now();
    let pattern = parse_pattern(pattern_text)?;
    if pattern.is_cyclic() {
        return Err(CommandError::Usage(
            "decomposition applies to path patterns".into(),
        ));
    }
    let blocks: Vec<Value> = pattern
        .blocks()
        .iter()
        .map(|(o, len)| json!({ "orientation": o.as_char().to_string(), "length": len }))
        .collect();
    let class = match pattern.classify_oscillating() {
        OscillationClass::NotOscillating => "not-oscillating",
        OscillationClass::Oscillating => "oscillating",
        OscillationClass::GoodOscillating => "good-oscillating",
    };
    let decomposition = do_decompose(&pattern).map_err(map_core)?;
    if validate_do(&pattern, &decomposition).is_err() {
        return Err(CommandError::Violation(
            "decomposition failed its validator".into(),
        ));
    }
    let pieces: Vec<Value> = (0..decomposition.piece_pairs())
        .map(|i| {
            json!({
                "directed": pattern.slice(decomposition.directed[i].clone()).to_string(),
                "oscillating": pattern.slice(decomposition.oscillating[i].clone()).to_string(),
            })
        })
        .collect();
    Ok(RunReport {
        command: "decompose".into(),
        seed: None,
        options: json!({ "pattern": pattern.to_string() }),
        payload: json!({
            "blocks": blocks,
            "block_count": pattern.block_count(),
            "class": class,
            "shift": if pattern.is_empty() { Value::Null } else { Value::from(pattern.shift().unwrap().to_string()) },
            "pieces": pieces,
        }),
        validations: 1,
        wall_ms: start.elapsed().as_millis(),
    })
}

pub fn cmd_median(instance: &InstanceFile, color: usize, exact: bool) -> CmdResult {
    let start = Instant::now();
    let coll = &instance.collection;
    if color >= coll.color_count() {
        return Err(CommandError::Usage("color out of range".into()));
    }
    let t = coll.member(color);
    let order = if exact {
        median_order_exact(t).map_err(map_core)?
    } else {
        median_order_local(t)
    };
    let interval = check_interval_properties(t, &order.order);
    Ok(RunReport {
        command: "median".into(),
        seed: None,
        options: json!({ "color": color, "mode": if exact { "exact" } else { "local" } }),
        payload: json!({
            "order": order.order,
            "forward_arcs": order.forward_arcs,
            "exact": order.exact,
            "recount": forward_arcs(t, &order.order),
            "interval_properties": match interval {
                Ok(()) => Value::from("ok"),
                Err(v) => Value::from(v.to_string()),
            },
        }),
        validations: 1,
        wall_ms: start.elapsed().as_millis(),
    })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_hpartition(
    instance: &InstanceFile,
    color: usize,
    ell: usize,
    gamma: Ratio,
    good: bool,
    head: Ratio,
    tail: Ratio,
) -> CmdResult {
    let start = Instant::now();
    let coll = &instance.collection;
    if color >= coll.color_count() {
        return Err(CommandError::Usage("color out of range".into()));
    }
    let t = coll.member(color);
    let payload = if good {
        let fractions = BoundaryFractions { head, tail };
        match good_h_partition(t, ell, gamma, fractions) {
            Ok(partition) => {
                if validate_good_h_partition(t, &partition).is_err() {
                    return Err(CommandError::Violation(
                        "good partition failed its validator".into(),
                    ));
                }
                json!({
                    "kind": "good",
                    "blocks": partition.blocks,
                    "separators": partition.separators,
                    "valid": true,
                })
            }
            Err(failure) => json!({
                "kind": "good",
                "failure": failure.to_string(),
            }),
        }
    } else {
        let partition = robust_h_partition(t, ell, gamma).map_err(map_core)?;
        if validate_h_partition(t, &partition, true).is_err() {
            return Err(CommandError::Violation(
                "robust partition failed its validator".into(),
            ));
        }
        json!({
            "kind": "robust",
            "blocks": partition.blocks,
            "separators": partition.separators,
            "valid": true,
        })
    };
    Ok(RunReport {
        command: "hpartition".into(),
        seed: None,
        options: json!({
            "color": color,
            "ell": ell,
            "gamma": gamma.to_string(),
            "good": good,
            "head": head.to_string(),
            "tail": tail.to_string(),
        }),
        payload,
        validations: 1,
        wall_ms: start.elapsed().as_millis(),
    })
}

pub fn cmd_broom(
    instance: &InstanceFile,
    color: usize,
    ell: usize,
    s1: usize,
    s2: usize,
) -> CmdResult {
    let start = Instant::now();
    let coll = &instance.collection;
    if color >= coll.color_count() {
        return Err(CommandError::Usage("color out of range".into()));
    }
    let t = coll.member(color);
    let broom = transversal_core::broom::directed_broom(t, ell, s1, s2).map_err(map_core)?;
    if broom.validate_structure(t).is_err() {
        return Err(CommandError::Violation(
            "broom failed structural validation".into(),
        ));
    }
    Ok(RunReport {
        command: "broom".into(),
        seed: None,
        options: json!({ "color": color, "ell": ell, "s1": s1, "s2": s2 }),
        payload: json!({
            "start_tips": broom.start_tips,
            "internal": broom.internal,
            "end_tips": broom.end_tips,
            "pattern": broom.pattern.to_string(),
        }),
        validations: 1,
        wall_ms: start.elapsed().as_millis(),
    })
}
