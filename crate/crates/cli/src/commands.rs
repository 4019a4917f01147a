use std::fs;
use std::path::Path;

use tdpp::network::{
    load_topology, sample_edge_attributes, validate_flow_constraints, NetworkGraph, SdPair,
};
use tdpp::numfmt::sig6;
use tdpp::quantum::pump_until_threshold;
use tdpp::routing::{
    baseline_route, format_decision_log, parse_decision_log, tdpp_route, RoutingOutcome,
};
use tdpp::sim::{
    effective_threshold, parse_pair_list, run_experiment, to_csv, Algorithm, ExperimentConfig,
    TopologySource,
};
use tdpp::FIG3_TOPOLOGY;

use crate::args::{
    ConfigFlags, DemoFig3Args, DemoPumpArgs, ExperimentArgs, RouteArgs, ValidateArgs,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_ROUTING: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;

type CmdResult = Result<u8, String>;

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(topology: &str) -> Result<NetworkGraph, String> {
    let source: TopologySource = topology.parse().map_err(|e| format!("{e}"))?;
    source.load().map_err(|e| format!("{topology}: {e}"))
}

fn build_config(flags: &ConfigFlags, algorithm: Option<&str>) -> Result<ExperimentConfig, String> {
    let mut cfg = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            ExperimentConfig::from_document(&text)
                .map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => ExperimentConfig::default(),
    };
    let seed = flags.seed.map(|s| s.to_string());
    let overrides = [
        ("rng_seed", seed.as_deref()),
        ("trials", flags.trials.as_deref()),
        ("capacity_range", flags.capacity.as_deref()),
        ("alpha", flags.alpha.as_deref()),
        ("beta", flags.beta.as_deref()),
        ("fidelity_threshold", flags.threshold.as_deref()),
        ("k_paths", flags.k.as_deref()),
        ("threads", flags.threads.as_deref()),
        ("algorithm", algorithm),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, v).map_err(|e| e.to_string())?;
        }
    }
    for kv in &flags.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| format!("--set expects KEY=VALUE, got `{kv}`"))?;
        cfg.set(k.trim(), v.trim()).map_err(|e| e.to_string())?;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

pub fn route(args: &RouteArgs) -> CmdResult {
    let algorithm: Algorithm = args.algorithm.parse().map_err(|e| format!("{e}"))?;
    let cfg = build_config(&args.flags, None)?;
    let mut graph = load_graph(&args.topology)?;
    if args.flags.capacity.is_some() {
        match cfg.capacity_range.as_slice() {
            [c] => graph.set_uniform_capacity(*c),
            _ => return Err("route takes a single --capacity value".into()),
        }
    }
    let mut graph =
        sample_edge_attributes(&graph, cfg.mean_fidelity, cfg.fidelity_std, cfg.rng_seed)
            .map_err(|e| e.to_string())?;
    let pairs: Vec<SdPair> = args
        .pairs
        .iter()
        .map(|p| parse_pair_list(p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?
        .into_iter()
        .flatten()
        .collect();
    let outcomes: Vec<RoutingOutcome> = match algorithm.baseline_kind() {
        None => {
            let threshold = effective_threshold(&cfg).map_err(|e| e.to_string())?;
            tdpp_route(&mut graph, &pairs, cfg.k_paths, threshold)
        }
        Some(kind) => baseline_route(&mut graph, &pairs, kind),
    }
    .map_err(|e| e.to_string())?;
    emit(args.out.as_deref(), &format_decision_log(&outcomes))?;
    Ok(if outcomes.iter().all(|o| o.success) {
        EXIT_OK
    } else {
        EXIT_ROUTING
    })
}

pub fn experiment(args: &ExperimentArgs) -> CmdResult {
    let cfg = build_config(&args.flags, args.algorithm.as_deref())?;
    let records = run_experiment(&cfg).map_err(|e| e.to_string())?;
    emit(args.out.as_deref(), &to_csv(&records))?;
    Ok(EXIT_OK)
}

pub fn validate(args: &ValidateArgs) -> CmdResult {
    let graph = load_graph(&args.topology)?;
    let text = fs::read_to_string(&args.log)
        .map_err(|e| format!("cannot read {}: {e}", args.log.display()))?;
    let outcomes =
        parse_decision_log(&text, &graph).map_err(|e| format!("{}: {e}", args.log.display()))?;
    let report = validate_flow_constraints(&graph, &outcomes);
    emit(args.out.as_deref(), &report.render())?;
    Ok(if report.is_empty() {
        EXIT_OK
    } else {
        EXIT_VALIDATION
    })
}

const REFERENCE_TOL: f64 = 0.01;

fn check_line(out: &mut String, name: &str, got: f64, reference: f64, tol: f64) -> bool {
    let ok = (got - reference).abs() <= tol;
    out.push_str(&format!(
        "{name:<14} {:>10}  reference {:>8}  {}\n",
        sig6(got),
        sig6(reference),
        if ok { "ok" } else { "DEVIATION" }
    ));
    ok
}

pub fn demo_fig3(args: &DemoFig3Args) -> CmdResult {
    let mut graph = load_topology(FIG3_TOPOLOGY).map_err(|e| e.to_string())?;
    let outcomes =
        tdpp_route(&mut graph, &[SdPair::new("s", "d")], 2, 0.5).map_err(|e| e.to_string())?;
    let o = &outcomes[0];
    let mut text = format_decision_log(&outcomes);
    let path = o.path.as_ref().map_or("-".to_string(), |p| p.render());
    let path_ok = path == "s>r2>r3>d";
    text.push_str(&format!(
        "{:<14} {:>10}  reference {:>8}  {}\n",
        "path",
        path,
        "s>r2>r3>d",
        if path_ok { "ok" } else { "DEVIATION" }
    ));
    let mut ok = path_ok && o.success;
    match &o.decision {
        Some(d) => {
            ok &= check_line(&mut text, "d_max", d.d_max, 0.67, 1e-12);
            ok &= check_line(&mut text, "f_sel_edge", d.f_sel_edge, 0.86, 1e-12);
            ok &= check_line(&mut text, "f_purified", d.f_purified, 0.92, REFERENCE_TOL);
            ok &= d.triggered && d.edge.to_string() == "r2-r3";
        }
        None => ok = false,
    }
    text.push_str(if ok {
        "walkthrough reproduced\n"
    } else {
        "walkthrough DEVIATES from reference\n"
    });
    emit(args.out.as_deref(), &text)?;
    Ok(if ok { EXIT_OK } else { EXIT_VALIDATION })
}

/// Published trajectory for pumping 0.528 with base pairs of 0.548.
const PUMP_REFERENCE: [f64; 3] = [0.731, 0.793, 0.809];

/// Fixed point of `f ↦ (√f + √b)/2`.
fn pump_fixed_point(b: f64) -> f64 {
    let y = (1.0 + (1.0 + 8.0 * b.sqrt()).sqrt()) / 4.0;
    y * y
}

pub fn demo_pump(args: &DemoPumpArgs) -> CmdResult {
    let outcome = pump_until_threshold(args.a, args.b, args.threshold, args.max_rounds)
        .map_err(|e| e.to_string())?;
    let reference: &[f64] = if (args.a, args.b) == (0.528, 0.548) {
        &PUMP_REFERENCE
    } else {
        &[]
    };
    let mut text = format!(
        "pumping a={} with base b={} to threshold {}\n",
        args.a, args.b, args.threshold
    );
    let mut deviations = 0;
    for (i, f) in outcome.trajectory.iter().enumerate() {
        text.push_str(&format!("round {:>3}  fidelity {:>9}", i + 1, sig6(*f)));
        if let Some(r) = reference.get(i) {
            let dev = (f - r).abs();
            let flag = if dev > REFERENCE_TOL {
                deviations += 1;
                "  DEVIATION"
            } else {
                ""
            };
            text.push_str(&format!("  reference {r:.3}  deviation {dev:.4}{flag}"));
        }
        text.push('\n');
    }
    if outcome.converged {
        text.push_str(&format!(
            "converged after {} rounds at {}\n",
            outcome.rounds,
            sig6(outcome.final_fidelity)
        ));
    } else {
        text.push_str(&format!(
            "did not converge within {} rounds: final {}, fixed point {}\n",
            outcome.rounds,
            sig6(outcome.final_fidelity),
            sig6(pump_fixed_point(args.b))
        ));
    }
    if !reference.is_empty() && outcome.rounds != reference.len() {
        deviations += 1;
        text.push_str(&format!(
            "round count {} differs from reference {}\n",
            outcome.rounds,
            reference.len()
        ));
    }
    emit(args.out.as_deref(), &text)?;
    Ok(if deviations == 0 {
        EXIT_OK
    } else {
        EXIT_VALIDATION
    })
}
