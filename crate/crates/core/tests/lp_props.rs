//! Property tests for the exact simplex against an independent
//! vertex-enumeration oracle.

mod common;

use biplab_core::exactgeom::{lp_solve, rat, Constraint, LpVerdict, Rat, Relation};
use common::solve_unique;
use proptest::prelude::*;

/// Brute-force LP oracle for maximization over a bounded feasible region:
/// enumerate all candidate vertices (solutions of n-subsets of the
/// constraint rows as equalities), keep the feasible ones, and take the
/// best objective value. Sound whenever the region is a bounded polytope.
fn oracle_max(objective: &[Rat], constraints: &[Constraint]) -> Option<Rat> {
    let nvars = objective.len();
    let rows: Vec<(Vec<Rat>, Rat)> = constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    let feasible = |x: &[Rat]| {
        constraints.iter().all(|c| {
            let lhs: Rat = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            match c.rel {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        })
    };
    let mut best: Option<Rat> = None;
    let m = rows.len();
    let mut pick = vec![0usize; nvars];
    fn subsets(m: usize, k: usize, start: usize, pick: &mut [usize], level: usize, out: &mut Vec<Vec<usize>>) {
        if level == k {
            out.push(pick[..k].to_vec());
            return;
        }
        for i in start..m {
            pick[level] = i;
            subsets(m, k, i + 1, pick, level + 1, out);
        }
    }
    let mut chosen = Vec::new();
    subsets(m, nvars, 0, &mut pick, 0, &mut chosen);
    for subset in chosen {
        let a: Vec<Vec<Rat>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<Rat> = subset.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve_unique(&a, &b) {
            if feasible(&x) {
                let value: Rat = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
                best = Some(match best {
                    None => value,
                    Some(b) if value > b => value,
                    Some(b) => b,
                });
            }
        }
    }
    best
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-5i64..=5).prop_map(rat)
}

prop_compose! {
    fn bounded_lp(nvars: usize)(
        objective in prop::collection::vec(small_rat(), nvars),
        raw in prop::collection::vec(
            (prop::collection::vec(small_rat(), nvars), -8i64..=8),
            2..6,
        ),
    ) -> (Vec<Rat>, Vec<Constraint>) {
        let mut constraints: Vec<Constraint> = raw
            .into_iter()
            .map(|(coeffs, rhs)| Constraint::new(coeffs, Relation::Le, rat(rhs)))
            .collect();
        // Bounding box keeps the region a polytope so the oracle is sound.
        for v in 0..nvars {
            let mut e = vec![rat(0); nvars];
            e[v] = rat(1);
            constraints.push(Constraint::new(e.clone(), Relation::Le, rat(10)));
            constraints.push(Constraint::new(e, Relation::Ge, rat(-10)));
        }
        (objective, constraints)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplex_matches_enumeration_2d((objective, constraints) in bounded_lp(2)) {
        let verdict = lp_solve(&objective, &constraints).unwrap();
        let oracle = oracle_max(&objective, &constraints);
        match (verdict, oracle) {
            (LpVerdict::Optimal { value, point }, Some(best)) => {
                prop_assert_eq!(&value, &best);
                let reached: Rat = objective.iter().zip(&point).map(|(c, v)| c * v).sum();
                prop_assert_eq!(reached, value);
            }
            (LpVerdict::Infeasible, None) => {}
            (v, o) => prop_assert!(false, "simplex {v:?} vs oracle {o:?}"),
        }
    }

    #[test]
    fn simplex_matches_enumeration_3d((objective, constraints) in bounded_lp(3)) {
        let verdict = lp_solve(&objective, &constraints).unwrap();
        let oracle = oracle_max(&objective, &constraints);
        match (verdict, oracle) {
            (LpVerdict::Optimal { value, .. }, Some(best)) => prop_assert_eq!(value, best),
            (LpVerdict::Infeasible, None) => {}
            (v, o) => prop_assert!(false, "simplex {v:?} vs oracle {o:?}"),
        }
    }

    #[test]
    fn simplex_is_deterministic((objective, constraints) in bounded_lp(2)) {
        let first = lp_solve(&objective, &constraints).unwrap();
        let second = lp_solve(&objective, &constraints).unwrap();
        prop_assert_eq!(first, second);
    }
}
