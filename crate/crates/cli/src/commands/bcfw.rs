//! `bcfw`: bridge-decomposition verification for Grassmannian
//! permutations.

use rayon::prelude::*;
use serde_json::json;

use biplab_core::bcfw::{
    bridge_sequence, plabic_from_bridges, verify_corollary_bcfw, BcfwError, Color,
};
use biplab_core::moves::maximal_chains;
use biplab_core::symgroup::{all_permutations, Permutation};

use crate::report::{CheckRecord, Report};
use crate::{config_json, BcfwArgs, CliError};

pub fn run(args: &BcfwArgs) -> Result<Report, CliError> {
    let mut perms: Vec<Permutation> = Vec::new();
    if args.all_grassmannian {
        let n = args
            .n
            .ok_or_else(|| CliError::Usage("--all-grassmannian requires --n".into()))?;
        if n == 0 || n > 8 {
            return Err(CliError::Usage("--n must be between 1 and 8".into()));
        }
        perms.extend(all_permutations(n).into_iter().filter(|w| w.is_grassmannian()));
    }
    for w in &args.w {
        let w: Permutation = w
            .parse()
            .map_err(|e| CliError::Usage(format!("bad permutation {w:?}: {e}")))?;
        if !w.is_grassmannian() {
            return Err(CliError::Usage(format!(
                "{w} is not Grassmannian (it has more than one descent)"
            )));
        }
        perms.push(w);
    }
    if perms.is_empty() {
        return Err(CliError::Usage(
            "nothing to verify: pass --w or --all-grassmannian --n".into(),
        ));
    }
    perms.sort();
    perms.dedup();
    let checks: Vec<CheckRecord> = perms
        .par_iter()
        .map(|w| check_w(w, args))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(Report::new("bcfw", config_json(args), checks))
}

fn check_w(w: &Permutation, args: &BcfwArgs) -> Vec<CheckRecord> {
    let subject = format!("w={w}");
    let mut recs = Vec::new();
    match verify_corollary_bcfw(w, args.max_chains) {
        Ok(report) => {
            let detail = format!(
                "chains={} atoms={} support={:?} trips_ok={} connected={} kappa={}",
                report.chain_count,
                report.atom_count,
                report.support,
                report.trips_ok,
                report.connected,
                report
                    .vertex_connectivity
                    .map(|k| k.to_string())
                    .unwrap_or_else(|| "-".into()),
            );
            let witness = emit_witness(w, args);
            if report.pass() {
                recs.push(CheckRecord {
                    subject: subject.clone(),
                    check: "bridge-decomposition".into(),
                    status: crate::report::Status::Pass,
                    detail: Some(detail),
                    witness,
                });
            } else {
                recs.push(CheckRecord::fail(
                    &subject,
                    "bridge-decomposition",
                    detail,
                    json!({
                        "atoms_equal_support": report.atoms_equal_support,
                        "trips_ok": report.trips_ok,
                        "connected": report.connected,
                        "kappa": report.vertex_connectivity,
                    }),
                ));
            }
        }
        Err(BcfwError::Move(e)) => {
            recs.push(CheckRecord::skip(&subject, "bridge-decomposition", e.to_string()))
        }
        Err(e) => recs.push(CheckRecord::fail(
            &subject,
            "bridge-decomposition",
            e.to_string(),
            json!({"error": e.to_string()}),
        )),
    }
    recs
}

/// Optional payloads: per-chain bridge sequences as [i, j] pairs and the
/// plabic rotation system of the lexicographically first chain.
fn emit_witness(w: &Permutation, args: &BcfwArgs) -> Option<serde_json::Value> {
    if !args.emit_bridges && !args.emit_plabic {
        return None;
    }
    let poset = biplab_core::build_bip_poset(w).ok()?;
    let chains = maximal_chains(&poset, poset.source(), poset.sink(), args.max_chains).ok()?;
    let mut out = serde_json::Map::new();
    if args.emit_bridges {
        let bridges: Vec<Vec<[usize; 2]>> = chains
            .iter()
            .map(|c| {
                bridge_sequence(&poset, c)
                    .map(|seq| seq.bridges().iter().map(|t| [t.i, t.j]).collect())
                    .unwrap_or_default()
            })
            .collect();
        out.insert("bridges".into(), json!(bridges));
    }
    if args.emit_plabic {
        if let Some(chain) = chains.first() {
            if let Ok(seq) = bridge_sequence(&poset, chain) {
                if let Ok(graph) = plabic_from_bridges(&seq) {
                    let rotation: Vec<serde_json::Value> = graph
                        .rotation_system()
                        .into_iter()
                        .map(|(color, neighbors)| {
                            json!({
                                "color": color.map(|c| match c {
                                    Color::White => "white",
                                    Color::Black => "black",
                                }),
                                "ccw_neighbors": neighbors,
                            })
                        })
                        .collect();
                    out.insert("plabic".into(), json!({
                        "n": graph.n(),
                        "chain": chain.labels(&poset),
                        "rotation_system": rotation,
                        "genus": graph.genus(),
                    }));
                }
            }
        }
    }
    Some(serde_json::Value::Object(out))
}
