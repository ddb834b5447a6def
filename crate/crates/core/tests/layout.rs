use graphnav_core::graph::{DynamicGraph, EdgeRecord, FrameSet, NodeRecord};
use graphnav_core::layout::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(n: usize, edges: &[(usize, usize)]) -> DynamicGraph {
    let nodes = (0..n).map(|i| NodeRecord::new(format!("v{i}"), FrameSet::all(1))).collect();
    let edges = edges
        .iter()
        .map(|&(s, t)| EdgeRecord::new(s, t, false, FrameSet::all(1)))
        .collect();
    DynamicGraph::new(1, false, nodes, edges).unwrap()
}

fn cube_points(n: usize, seed: u64) -> Vec<Vec3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Vec3::new(rng.random(), rng.random(), rng.random()) * 100.0)
        .collect()
}

fn rep() -> Repulsion {
    Repulsion {
        weight: -30.0,
        distance_min2: 1.0,
        seed: 0,
    }
}

fn rms_relative(approx: &[Vec3], exact: &[Vec3]) -> f64 {
    let sum: f64 = approx
        .iter()
        .zip(exact)
        .map(|(a, e)| (a - e).norm_squared() / e.norm_squared())
        .sum();
    (sum / exact.len() as f64).sqrt()
}

fn bh(points: &[Vec3], theta: f64) -> (Vec<Vec3>, u64) {
    let tree = Octree::build(points);
    let mut out = Vec::new();
    let count = repulsion_bh(points, &tree, theta, &rep(), &mut out);
    (out, count)
}

#[test]
fn single_node_feels_no_force() {
    let g = graph(1, &[]);
    let state = init_layout(&g, 0).unwrap();
    assert_eq!(compute_forces_brute(&state), vec![Vec3::zeros()]);
}

#[test]
fn symmetric_pair_forces_are_opposite_and_collinear() {
    let g = graph(2, &[]);
    let mut state = init_layout(&g, 0).unwrap();
    state.positions = vec![Vec3::new(3.0, -1.0, 2.0), Vec3::new(-3.0, 1.0, -2.0)];
    let f = compute_forces_brute(&state);
    assert!((f[0] + f[1]).norm() < 1e-15);
    let axis = (state.positions[0] - state.positions[1]).normalize();
    assert!(f[0].normalize().dot(&axis) > 1.0 - 1e-12, "pushed away from partner");
}

#[test]
fn link_at_rest_length_is_neutral() {
    let g = graph(2, &[(0, 1)]);
    let mut state = init_layout(&g, 0).unwrap();
    state.positions = vec![Vec3::new(-15.0, 0.0, 0.0), Vec3::new(15.0, 0.0, 0.0)];
    let mut springs = vec![Vec3::zeros(); 2];
    link_forces(&state, &mut springs);
    assert!(springs.iter().all(|f| f.norm() < 1e-12));
}

#[test]
fn bh_with_vanishing_theta_is_exact() {
    let pts = cube_points(50, 7);
    let exact = repulsion_brute(&pts, &rep());
    let (approx, _) = bh(&pts, 1e-12);
    for (a, e) in approx.iter().zip(&exact) {
        assert!((a - e).norm() <= 1e-12 * e.norm().max(1.0));
    }
}

#[test]
fn bh_error_within_one_percent_at_half_theta() {
    let pts = cube_points(200, 42);
    let exact = repulsion_brute(&pts, &rep());
    let (approx, _) = bh(&pts, 0.5);
    assert!(rms_relative(&approx, &exact) < 0.01);
}

#[test]
fn bh_error_monotone_in_theta() {
    for seed in 0..5 {
        let pts = cube_points(200, seed);
        let exact = repulsion_brute(&pts, &rep());
        let e3 = rms_relative(&bh(&pts, 0.3).0, &exact);
        let e9 = rms_relative(&bh(&pts, 0.9).0, &exact);
        assert!(e3 <= e9, "seed {seed}: {e3} > {e9}");
    }
}

#[test]
fn bh_touches_small_fraction_of_pairs() {
    let pts = cube_points(2000, 3);
    let (_, interactions) = bh(&pts, LayoutParams::default().theta);
    let fraction = interactions as f64 / (2000.0 * 2000.0);
    assert!(fraction < 0.15, "fraction {fraction}");
}

#[test]
fn brute_repulsion_obeys_third_law() {
    let pts = cube_points(300, 5);
    let f = repulsion_brute(&pts, &rep());
    let total: Vec3 = f.iter().sum();
    let magnitude: f64 = f.iter().map(|v| v.norm()).sum();
    assert!(total.norm() <= 1e-9 * magnitude);
}

#[test]
fn alpha_follows_closed_form() {
    let g = graph(5, &[(0, 1), (1, 2)]);
    let mut state = init_layout(&g, 1).unwrap();
    let decay = state.params.alpha_decay;
    for k in 1..=300 {
        state.tick(&g).unwrap();
        let expected = (1.0 - decay).powi(k);
        assert!((state.alpha - expected).abs() <= 1e-12 * expected);
    }
    assert!(state.alpha < state.params.alpha_min);
    assert_eq!(state.tick_count, 300);
}

#[test]
fn symmetric_pair_centroid_stays_at_origin() {
    let g = graph(2, &[(0, 1)]);
    let mut state = init_layout(&g, 0).unwrap();
    state.positions = vec![Vec3::new(-10.0, 0.0, 0.0), Vec3::new(10.0, 0.0, 0.0)];
    state.tick(&g).unwrap();
    let centroid = (state.positions[0] + state.positions[1]) / 2.0;
    assert!(centroid.norm() < 1e-12);
}

#[test]
fn single_node_converges_at_origin() {
    let g = graph(1, &[]);
    let mut state = init_layout(&g, 4).unwrap();
    let positions = state.run_to_convergence(&g).unwrap().to_vec();
    assert_eq!(positions, vec![Vec3::zeros()]);
    assert_eq!(state.tick_count, 0);
}

/// End node of a symmetric path a-b-c sits where the spring share
/// (1 - bias) * (l - d) balances repulsion from both other nodes:
/// (2/3)(l - d) = |s| (1/l + 1/(2l)).
fn path_equilibrium(params: &LayoutParams) -> f64 {
    let d = params.link_distance;
    let c = params.repulsion_strength.abs() * 1.5 * 1.5;
    d / 2.0 + (d * d / 4.0 + c).sqrt()
}

#[test]
fn path_graph_settles_at_force_balance() {
    let g = graph(3, &[(0, 1), (1, 2)]);
    let expected = path_equilibrium(&LayoutParams::default());
    for seed in 0..3 {
        let mut state = init_layout(&g, seed).unwrap();
        let p = state.run_to_convergence(&g).unwrap().to_vec();
        for (i, j) in [(0, 1), (1, 2)] {
            let l = (p[i] - p[j]).norm();
            assert!((l - expected).abs() < 0.01 * expected, "seed {seed}: {l} vs {expected}");
        }
    }
}

#[test]
fn converged_layout_is_reproducible() {
    let g = graph(60, &(1..60).map(|i| (i / 2, i)).collect::<Vec<_>>());
    let run = |seed| {
        let mut s = init_layout(&g, seed).unwrap();
        s.run_to_convergence(&g).unwrap().to_vec()
    };
    assert_eq!(run(8), run(8));
}

#[test]
fn bounding_sphere_contains_every_node() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let pts = cube_points(100, 17);
    let radii: Vec<f64> = (0..100).map(|_| rng.random_range(0.0..3.0)).collect();
    let (center, radius) = bounding_sphere(&pts, &radii).unwrap();
    for (p, r) in pts.iter().zip(&radii) {
        assert!((p - center).norm() + r <= radius + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ticks_are_deterministic(seed in 0u64..1000, n in 2usize..40) {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let g = graph(n, &edges);
        let mut a = init_layout(&g, seed).unwrap();
        let mut b = a.clone();
        for _ in 0..10 {
            a.tick(&g).unwrap();
            b.tick(&g).unwrap();
            prop_assert_eq!(&a.positions, &b.positions);
        }
    }

    #[test]
    fn centroid_pinned_after_every_tick(seed in 0u64..1000, n in 2usize..60) {
        let edges: Vec<_> = (1..n).map(|i| (i / 2, i)).collect();
        let g = graph(n, &edges);
        let mut s = init_layout(&g, seed).unwrap();
        for _ in 0..5 {
            s.tick(&g).unwrap();
            let centroid = s.positions.iter().sum::<Vec3>() / n as f64;
            let (_, radius) = bounding_sphere(&s.positions, &[]).unwrap();
            prop_assert!(centroid.norm() < 1e-6 * radius);
        }
    }
}
