//! `move-graph`: chain move graphs per interval with connectivity and
//! vertex-connectivity verification, DOT export, and star-path replay.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use biplab_core::moves::{
    apply_move, count_maximal_chains, detect_moves, move_graph, star_path, vertex_connectivity,
    MoveError, MoveGraph,
};
use biplab_core::SkeletonPoset;

use crate::report::{CheckRecord, Report};
use crate::{config_json, resolve_subjects, CliError, MoveGraphArgs, ScopeArgs, Subject};

pub fn run(args: &MoveGraphArgs) -> Result<Report, CliError> {
    let scope = match args.permutahedron {
        Some(n) => {
            if n == 0 || n > 8 {
                return Err(CliError::Usage("--permutahedron must be 1..=8".into()));
            }
            ScopeArgs {
                n: None,
                w: vec![biplab_core::Permutation::longest(n).to_string()],
                vertices: None,
                cost: None,
            }
        }
        None => args.scope.clone(),
    };
    if args.max_chains == 0 {
        return Err(CliError::Usage("--max-chains must be positive".into()));
    }
    let subjects = resolve_subjects(&scope)?;
    if (args.dot.is_some() || args.export_graph.is_some()) && subjects.len() != 1 {
        return Err(CliError::Usage(
            "--dot/--export-graph need exactly one subject".into(),
        ));
    }
    let single = match (&args.u, &args.v) {
        (Some(u), Some(v)) => Some((u.clone(), v.clone())),
        _ => None,
    };
    let checks: Vec<CheckRecord> = subjects
        .par_iter()
        .map(|subject| check_subject(subject, args, single.as_ref()))
        .collect::<Result<Vec<_>, CliError>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(Report::new("move-graph", config_json(args), checks))
}

fn histogram_string(graph: &MoveGraph) -> String {
    let parts: Vec<String> = graph
        .polygon_histogram()
        .iter()
        .map(|(size, count)| format!("{size}-gon x{count}"))
        .collect();
    if parts.is_empty() {
        "none".to_string()
    } else {
        parts.join(", ")
    }
}

fn check_subject(
    subject: &Subject,
    args: &MoveGraphArgs,
    single: Option<&(String, String)>,
) -> Result<Vec<CheckRecord>, CliError> {
    let poset = &subject.poset;
    let s = &subject.name;
    let mut recs = Vec::new();
    let intervals: Vec<(usize, usize)> = match single {
        Some((u, v)) => {
            let u = poset
                .element(u)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let v = poset
                .element(v)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            if !poset.leq(u, v) {
                return Err(CliError::Usage(format!(
                    "not an interval: {} -> {}",
                    poset.label(u),
                    poset.label(v)
                )));
            }
            vec![(u, v)]
        }
        None if poset.len() == 1 => vec![(poset.source(), poset.sink())],
        None => poset.strict_intervals(),
    };
    for &(u, v) in &intervals {
        let name = format!("interval:{}->{}", poset.label(u), poset.label(v));
        match count_maximal_chains(poset, u, v).map_err(|e| CliError::Usage(e.to_string()))? {
            Some(count) if count <= args.max_chains as u128 => {}
            count => {
                recs.push(CheckRecord::skip(
                    s,
                    &name,
                    format!(
                        "{} maximal chains exceed the cap {}",
                        count
                            .map(|c| c.to_string())
                            .unwrap_or_else(|| "over u128".to_string()),
                        args.max_chains
                    ),
                ));
                continue;
            }
        }
        match move_graph(poset, u, v, args.max_chains) {
            Ok(graph) => {
                let atoms = poset.atoms(u, v).expect("comparable");
                let a = atoms.len();
                let connected = graph.is_connected();
                let kappa = if graph.len() >= 2 {
                    match vertex_connectivity(&graph) {
                        Ok(k) => Some(k),
                        Err(MoveError::ConnectivityUndefined) => None,
                        Err(e) => {
                            recs.push(CheckRecord::fail(
                                s,
                                &name,
                                e.to_string(),
                                json!({"error": e.to_string()}),
                            ));
                            continue;
                        }
                    }
                } else {
                    None
                };
                let kappa_ok = match (a >= 2 && graph.len() >= 2, kappa) {
                    (true, Some(k)) => k >= a - 1,
                    _ => true,
                };
                let mut detail = format!(
                    "chains={} edges={} connected={} atoms={} kappa={} polygons=[{}]",
                    graph.len(),
                    graph.edges().len(),
                    connected,
                    a,
                    kappa.map(|k| k.to_string()).unwrap_or_else(|| "-".into()),
                    histogram_string(&graph),
                );
                if graph.partial_entries > 0 {
                    // 2-faces entered at their source but left before the
                    // sink admit no move; counted for diagnostics only.
                    detail.push_str(&format!(" partial-entries={}", graph.partial_entries));
                }
                if connected && kappa_ok {
                    recs.push(CheckRecord::pass(s, &name, Some(detail)));
                } else {
                    recs.push(CheckRecord::fail(
                        s,
                        &name,
                        detail,
                        json!({
                            "interval": [poset.label(u), poset.label(v)],
                            "connected": connected,
                            "kappa": kappa,
                            "atoms": a,
                        }),
                    ));
                }
                if args.star_replay {
                    recs.push(star_replay(poset, s, &name, &graph, args));
                }
                if single.is_some() || (u, v) == (poset.source(), poset.sink()) {
                    if let Some(path) = &args.dot {
                        let dot = crate::export::move_graph_dot(poset, &graph);
                        std::fs::write(path, dot)
                            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    }
                    if let Some(path) = &args.export_graph {
                        let js = crate::export::move_graph_json(poset, &graph);
                        std::fs::write(path, serde_json::to_string_pretty(&js).unwrap())
                            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    }
                }
            }
            Err(e) => recs.push(CheckRecord::fail(
                s,
                &name,
                e.to_string(),
                json!({"error": e.to_string()}),
            )),
        }
    }
    Ok(recs)
}

/// Replays star paths between sampled ordered chain pairs: consecutive
/// chains must differ by a detected move and every shared vertex of the
/// endpoints must persist along the way.
fn star_replay(
    poset: &SkeletonPoset,
    subject: &str,
    interval: &str,
    graph: &MoveGraph,
    args: &MoveGraphArgs,
) -> CheckRecord {
    let name = format!("star-replay:{}", &interval["interval:".len()..]);
    let n = graph.len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if n * n <= args.star_samples {
        for i in 0..n {
            for j in 0..n {
                pairs.push((i, j));
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
        let mut picks: Vec<usize> = sample(&mut rng, n * n, args.star_samples).into_vec();
        picks.sort_unstable();
        pairs.extend(picks.into_iter().map(|k| (k / n, k % n)));
    }
    for &(i, j) in &pairs {
        let c1 = &graph.chains()[i];
        let c2 = &graph.chains()[j];
        let path = match star_path(poset, c1, c2) {
            Ok(p) => p,
            Err(e) => {
                return CheckRecord::fail(
                    subject,
                    &name,
                    e.to_string(),
                    json!({
                        "from": c1.labels(poset),
                        "to": c2.labels(poset),
                    }),
                )
            }
        };
        let shared: Vec<usize> = c1
            .nodes()
            .iter()
            .copied()
            .filter(|&z| c2.contains(z))
            .collect();
        let mut ok = path.first() == Some(c1) && path.last() == Some(c2);
        for step in path.windows(2) {
            let moves = detect_moves(poset, &step[0]).unwrap_or_default();
            ok &= moves
                .iter()
                .any(|m| apply_move(&step[0], m).map(|c| c == step[1]).unwrap_or(false));
            ok &= shared.iter().all(|&z| step[1].contains(z));
        }
        if !ok {
            return CheckRecord::fail(
                subject,
                &name,
                "star path does not replay as moves".into(),
                json!({
                    "from": c1.labels(poset),
                    "to": c2.labels(poset),
                }),
            );
        }
    }
    CheckRecord::pass(
        subject,
        &name,
        Some(format!("{} chain pairs replayed", pairs.len())),
    )
}
