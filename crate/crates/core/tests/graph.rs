use std::collections::BTreeSet;

use graphnav_core::graph::{load_graph, DynamicGraph, EdgeRecord, FrameSet, GraphError, NodeRecord};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIXTURE: &str = include_str!("fixtures/mednet_f4_surrogate.json");

#[test]
fn fixture_shape() {
    let g = load_graph(FIXTURE).unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (199, 593));
    assert_eq!(g.frame_count(), 4);
    let k29 = g.node_index("K29").unwrap();
    assert_eq!(g.node(k29).label, "K29");
    // extra fields survive as attributes
    assert!(g.nodes().iter().any(|n| n.attributes.contains_key("ward")));
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize, frames: u32, directed: bool) -> DynamicGraph {
    let nodes = (0..n)
        .map(|i| {
            let mut fs: Vec<u32> = (0..frames).filter(|_| rng.random_bool(0.7)).collect();
            if fs.is_empty() {
                fs.push(rng.random_range(0..frames));
            }
            NodeRecord::new(format!("v{i}"), FrameSet::from_frames(fs))
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    while edges.len() < m {
        let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
        if s == t || !seen.insert((s, t)) || (!directed && !seen.insert((t, s))) {
            continue;
        }
        let fs: Vec<u32> = (0..frames).filter(|_| rng.random_bool(0.6)).collect();
        let fs = if fs.is_empty() { vec![0] } else { fs };
        edges.push(EdgeRecord::new(s, t, directed, FrameSet::from_frames(fs)));
    }
    DynamicGraph::new(frames, directed, nodes, edges).unwrap()
}

#[test]
fn neighborhood_matches_edge_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let g = random_graph(&mut rng, 50, 140, 1, false);
    for v in 0..g.node_count() {
        let mut nodes = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for (ei, e) in g.edges().iter().enumerate() {
            if e.source == v || e.target == v {
                edges.insert(ei);
                let other = if e.source == v { e.target } else { e.source };
                if other != v {
                    nodes.insert(other);
                }
            }
        }
        let hood = g.neighborhood(&g.node(v).id).unwrap();
        assert_eq!(hood.nodes, nodes, "node {v}");
        assert_eq!(hood.edges, edges, "node {v}");
    }
}

#[test]
fn frame_presence_matches_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let g = random_graph(&mut rng, 20, 45, 3, true);
    for f in 0..3 {
        let p = g.frame_presence(f).unwrap();
        for (i, n) in g.nodes().iter().enumerate() {
            assert_eq!(p.nodes[i], n.frames.as_slice().contains(&f));
        }
        for (i, e) in g.edges().iter().enumerate() {
            let both = g.node(e.source).frames.as_slice().contains(&f)
                && g.node(e.target).frames.as_slice().contains(&f);
            assert_eq!(p.edges[i], e.frames.as_slice().contains(&f) && both);
        }
    }
    assert!(matches!(g.frame_presence(3), Err(GraphError::FrameIndex { .. })));
}

#[test]
fn rejects_bad_input() {
    let cases = [
        r#"{"frame_count":0,"nodes":[]}"#,
        r#"{"frame_count":1,"nodes":[{"id":"a"},{"id":"a"}]}"#,
        r#"{"frame_count":1,"nodes":[{"id":"a","value":-1}]}"#,
        r#"{"frame_count":1,"nodes":[{"id":"a"}],"links":[{"source":"a","target":"b"}]}"#,
        r#"{"frame_count":2,"nodes":[{"id":"a","frames":[2]}]}"#,
        r#"{"frame_count":2,"nodes":[{"id":"a","frames":[]}]}"#,
        r#"{"frame_count":1,"nodes":[{"id":"a"},{"id":"b"}],"links":[{"source":"a","target":"b","weight":-2}]}"#,
        r#"{"frame_count":1,"nodes":"#,
    ];
    for c in cases {
        assert!(load_graph(c).is_err(), "{c}");
    }
}

proptest! {
    #[test]
    fn serialization_idempotent(seed in any::<u64>(), n in 1usize..25, directed in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(0..=n * (n - 1) / 4);
        let g = random_graph(&mut rng, n, m, 3, directed);
        let once = g.to_json();
        let again = load_graph(&once).unwrap();
        prop_assert_eq!(&once, &again.to_json());
        prop_assert_eq!(again.node_count(), n);
        prop_assert_eq!(again.edge_count(), m);
    }

    #[test]
    fn neighborhood_symmetric(seed in any::<u64>(), n in 2usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(0..=n * (n - 1) / 4);
        let g = random_graph(&mut rng, n, m, 1, false);
        for u in 0..n {
            for &v in &g.neighborhood_of(u).nodes {
                prop_assert!(g.neighborhood_of(v).nodes.contains(&u));
            }
        }
    }
}
