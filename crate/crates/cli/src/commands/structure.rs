//! `verify-structure`: per-subject structural checks.

use rayon::prelude::*;
use serde_json::json;

use biplab_core::skeleton::DirSimplicity;

use crate::report::{CheckRecord, Report};
use crate::{config_json, resolve_subjects, CliError, StructureArgs, Subject};

pub fn run(args: &StructureArgs) -> Result<Report, CliError> {
    let subjects = resolve_subjects(&args.scope)?;
    if let Some(path) = &args.export_poset {
        if subjects.len() != 1 {
            return Err(CliError::Usage(
                "--export-poset needs exactly one subject".into(),
            ));
        }
        let js = crate::export::poset_json(&subjects[0].poset, args.export_tables);
        std::fs::write(path, serde_json::to_string_pretty(&js).unwrap())
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let checks: Vec<CheckRecord> = subjects
        .par_iter()
        .flat_map(check_subject)
        .collect();
    Ok(Report::new("verify-structure", config_json(args), checks))
}

pub fn check_subject(subject: &Subject) -> Vec<CheckRecord> {
    let poset = &subject.poset;
    let s = &subject.name;
    let mut recs = Vec::new();

    match poset.find_hasse_violation() {
        None => recs.push(CheckRecord::pass(s, "hasse", None)),
        Some((a, b)) => recs.push(CheckRecord::fail(
            s,
            "hasse",
            "an oriented edge is implied by a longer directed path".into(),
            json!({"edge": [poset.label(a), poset.label(b)]}),
        )),
    }

    if poset.is_bruhat_interval() {
        let violations = poset.edge_length_violations();
        if violations.is_empty() {
            recs.push(CheckRecord::pass(s, "edge-length", None));
        } else {
            let (a, b) = violations[0];
            recs.push(CheckRecord::fail(
                s,
                "edge-length",
                format!("{} geometric edges are not length-1 covers", violations.len()),
                json!({"edge": [poset.label(a), poset.label(b)]}),
            ));
        }
        let directions = poset.edge_direction_violations();
        if directions.is_empty() {
            recs.push(CheckRecord::pass(s, "edge-directions", None));
        } else {
            let (a, b) = directions[0];
            recs.push(CheckRecord::fail(
                s,
                "edge-directions",
                "edge direction is not a difference of two coordinates".into(),
                json!({"edge": [poset.label(a), poset.label(b)]}),
            ));
        }
    }

    match poset.find_lattice_violation() {
        None => recs.push(CheckRecord::pass(s, "lattice", None)),
        Some(err) => recs.push(CheckRecord::fail(
            s,
            "lattice",
            err.to_string(),
            json!({ "violation": err.to_string() }),
        )),
    }

    let faces = match poset.check_directionally_simple() {
        Ok(DirSimplicity::Ok(faces)) => {
            recs.push(CheckRecord::pass(
                s,
                "directional-simplicity",
                Some(format!("{} spanned faces", faces.len())),
            ));
            Some(faces)
        }
        Ok(DirSimplicity::Violation {
            vertex,
            subset,
            reason,
        }) => {
            recs.push(CheckRecord::fail(
                s,
                "directional-simplicity",
                reason,
                json!({"vertex": vertex, "subset": subset}),
            ));
            None
        }
        Err(e) => {
            recs.push(CheckRecord::fail(
                s,
                "directional-simplicity",
                e.to_string(),
                json!({"error": e.to_string()}),
            ));
            None
        }
    };

    match poset.find_join_pseudojoin_disagreement() {
        Ok(None) => recs.push(CheckRecord::pass(s, "join-equals-pseudojoin", None)),
        Ok(Some((u, subset, join, psj))) => recs.push(CheckRecord::fail(
            s,
            "join-equals-pseudojoin",
            format!("join {join} != pseudojoin {psj}"),
            json!({"vertex": u, "covers": subset, "join": join, "pseudojoin": psj}),
        )),
        Err(e) => recs.push(CheckRecord::fail(
            s,
            "join-equals-pseudojoin",
            e.to_string(),
            json!({"error": e.to_string()}),
        )),
    }

    // Interval-level checks over every comparable pair.
    let mut distinct_ok = true;
    let mut atom_map_ok = true;
    let mut witness = None;
    for (u, v) in poset.strict_intervals() {
        match poset.check_distinct_joins(u, v) {
            Ok(true) => {}
            _ => {
                distinct_ok = false;
                witness = Some(json!({"interval": [poset.label(u), poset.label(v)]}));
                break;
            }
        }
        match poset.check_surjective_atom_map(u, v) {
            Ok(true) => {}
            _ => {
                atom_map_ok = false;
                witness = Some(json!({"interval": [poset.label(u), poset.label(v)]}));
                break;
            }
        }
    }
    if distinct_ok {
        recs.push(CheckRecord::pass(s, "distinct-joins", None));
    } else {
        recs.push(CheckRecord::fail(
            s,
            "distinct-joins",
            "two atom subsets share a join".into(),
            witness.clone().unwrap_or(json!({})),
        ));
    }
    if atom_map_ok {
        recs.push(CheckRecord::pass(s, "surjective-atom-map", None));
    } else {
        recs.push(CheckRecord::fail(
            s,
            "surjective-atom-map",
            "atom map is not onto the power set".into(),
            witness.unwrap_or(json!({})),
        ));
    }

    match faces {
        Some(faces) => {
            let mut bad = None;
            for f in &faces {
                if let Some((x, y, z)) = poset.find_revisit(&f.face) {
                    bad = Some(json!({
                        "face": f.face.iter().map(|&i| poset.label(i)).collect::<Vec<_>>(),
                        "pair": [poset.label(x), poset.label(y)],
                        "outside": poset.label(z),
                    }));
                    break;
                }
            }
            match bad {
                None => recs.push(CheckRecord::pass(
                    s,
                    "non-revisiting",
                    Some(format!("{} faces checked", faces.len())),
                )),
                Some(w) => recs.push(CheckRecord::fail(
                    s,
                    "non-revisiting",
                    "a directed path leaves and re-enters a face".into(),
                    w,
                )),
            }
        }
        None => recs.push(CheckRecord::skip(
            s,
            "non-revisiting",
            "skipped: directional simplicity failed".into(),
        )),
    }

    recs
}
