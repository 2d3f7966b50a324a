use domlab::bounds::g_plus;
use domlab::graph::{domination_number_oracle, Graph};
use domlab_web::{bound_curves, feps_profile, solve_sample};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn solve_sample_matches_oracle() {
    let v = parse(solve_sample(12, 0.3, 4));
    let edges: Vec<(usize, usize)> = v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e[0].as_u64().unwrap() as usize,
                e[1].as_u64().unwrap() as usize,
            )
        })
        .collect();
    let g = Graph::from_edges(12, &edges).unwrap();
    let (gamma, _) = domination_number_oracle(&g).unwrap();
    for key in ["bb", "bb_rand", "exhaustive"] {
        assert_eq!(v[key]["opt_size"].as_u64(), Some(gamma as u64), "{key}");
        let set: Vec<usize> = v[key]["opt_set"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap() as usize)
            .collect();
        assert!(g.is_dominating(&domlab::VertexSet::from_indices(12, set).unwrap()));
    }
    assert_eq!(v["exhaustive"]["expansions"].as_u64(), Some(1 << 12));
    assert!(v["exhaustive"]["dominating_sets"].as_u64().unwrap() > 0);
}

#[test]
fn solve_sample_skips_exhaustive_and_reports_errors() {
    let v = parse(solve_sample(30, 0.5, 1));
    assert!(v["exhaustive"].is_null());
    assert!(v["bb"]["opt_size"].is_u64());
    assert!(parse(solve_sample(200, 0.5, 1))["error"].is_string());
    assert!(parse(solve_sample(10, 1.5, 1))["error"].is_string());
}

#[test]
fn bound_curves_shape() {
    let v = parse(bound_curves(4.0, 8));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0]["j"].as_f64(), Some(0.5));
    assert!(rows[0]["exhaustive_base"].is_null());
    assert!(rows[7]["exhaustive_base"].as_f64().unwrap() >= 1.99);
    for r in rows {
        let j = r["j"].as_f64().unwrap();
        assert!((r["g_plus"].as_f64().unwrap() - g_plus(j).unwrap()).abs() < 1e-15);
        assert!(r["tnp_grid_max"].as_f64().unwrap() >= 1.0);
    }
    assert!(parse(bound_curves(-1.0, 8))["error"].is_string());
    assert!(parse(bound_curves(1.0, 0))["error"].is_string());
}

#[test]
fn feps_profile_shape() {
    let v = parse(feps_profile(20.0, 101));
    let curve = v["curve"].as_array().unwrap();
    assert_eq!(curve.len(), 101);
    assert_eq!(curve[0][1].as_f64(), Some(1.0));
    assert_eq!(curve[100][0].as_f64(), Some(0.5));
    let rows = v["intervals"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r["pass"] == Value::Bool(true)));
    assert!(parse(feps_profile(-2.0, 10))["error"].is_string());
}
