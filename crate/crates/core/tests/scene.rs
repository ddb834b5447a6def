use std::sync::Arc;

use graphnav_core::bench::generate_er;
use graphnav_core::graph::{load_graph, DynamicGraph, EdgeRecord};
use graphnav_core::layout::Vec3;
use graphnav_core::navigation::{NavConfig, NavigationState, Quat};
use graphnav_core::picking::{hover_update, Entity, HighlightPolicy, HighlightState, Visibility};
use graphnav_core::scene::*;
use graphnav_core::session::{ExplorerSession, SessionConfig};
use graphnav_core::temporal::Opacities;

const FIXTURE: &str = include_str!("fixtures/mednet_f4_surrogate.json");

struct Fixed {
    graph: DynamicGraph,
    positions: Vec<Vec3>,
    radii: Vec<f64>,
    girths: Vec<f64>,
    opacity: Opacities,
    highlight: HighlightState,
    nav: NavigationState,
    style: SceneStyle,
}

impl Fixed {
    fn new(graph: DynamicGraph, positions: Vec<Vec3>) -> Self {
        let n = graph.node_count();
        let m = graph.edge_count();
        Fixed {
            radii: vec![0.5; n],
            girths: vec![0.1; m],
            opacity: Opacities::opaque(&graph),
            highlight: HighlightState::none(&graph),
            nav: NavigationState::new((Vec3::zeros(), 5.0), -Vec3::z(), 1.6, NavConfig::default()),
            style: SceneStyle::default(),
            graph,
            positions,
        }
    }

    fn run(&self) -> InstanceBuffers {
        synthesize(&SceneInputs {
            graph: &self.graph,
            positions: &self.positions,
            radii: &self.radii,
            girths: &self.girths,
            opacity: &self.opacity,
            highlight: &self.highlight,
            nav: &self.nav,
            head: None,
            style: &self.style,
        })
        .unwrap()
    }
}

fn directed_pair() -> Fixed {
    let g = load_graph(
        r#"{"directed":true,"frame_count":1,"nodes":[{"id":"a"},{"id":"b"}],"links":[{"source":"a","target":"b"}]}"#,
    )
    .unwrap();
    Fixed::new(g, vec![Vec3::new(1.0, 2.0, 3.0), Vec3::new(4.0, 6.0, 3.0)])
}

fn rotate(q: [f32; 4], v: Vec3) -> Vec3 {
    let q = Quat::from_quaternion(nalgebra::Quaternion::new(q[3] as f64, q[0] as f64, q[1] as f64, q[2] as f64));
    q * v
}

#[test]
fn directed_pair_layout() {
    let f = directed_pair();
    let b = f.run();
    assert_eq!(b.counts(), (2, 1, 1));
    assert_eq!((b.nodes.len(), b.edges.len(), b.arrows.len()), (16, 13, 13));
    assert_eq!(&b.node(1)[..4], &[4.0, 6.0, 3.0, 0.5]);

    let e = b.edge(0);
    assert_eq!(&e[..3], &[2.5, 4.0, 3.0]);
    assert_eq!(e[7], 5.0);
    assert_eq!(e[8], 0.1f32);
    let axis = rotate([e[3], e[4], e[5], e[6]], Vec3::z());
    assert!((axis - Vec3::new(0.6, 0.8, 0.0)).norm() < 1e-6);

    // arrow at 85% from the source, same orientation
    let a = b.arrow(0);
    let at = Vec3::new(1.0, 2.0, 3.0) + Vec3::new(3.0, 4.0, 0.0) * 0.85;
    assert!((Vec3::new(a[0] as f64, a[1] as f64, a[2] as f64) - at).norm() < 1e-5);
    assert_eq!(&a[3..7], &e[3..7]);
}

#[test]
fn byte_layout_is_little_endian_f32() {
    let b = directed_pair().run();
    let bytes = InstanceBuffers::to_le_bytes(&b.nodes);
    assert_eq!(bytes.len(), 2 * NODE_STRIDE * 4);
    let third = f32::from_le_bytes(bytes[8..12].try_into().unwrap());
    assert_eq!(third, 3.0);
}

#[test]
fn empty_graph_has_no_batches() {
    let f = Fixed::new(DynamicGraph::empty(), vec![]);
    let b = f.run();
    assert_eq!(b.counts(), (0, 0, 0));
    assert_eq!(b.batch_count(), 0);
}

#[test]
fn lowlight_and_highlight_colors() {
    let g = load_graph(
        r#"{"frame_count":1,"nodes":[{"id":"a"},{"id":"b"},{"id":"c"}],"links":[{"source":"a","target":"b"}]}"#,
    )
    .unwrap();
    let mut f = Fixed::new(g, vec![Vec3::zeros(), Vec3::x(), Vec3::y() * 5.0]);
    f.highlight = hover_update(&f.graph, Some(Entity::Node(0)), &Visibility::all(&f.graph), HighlightPolicy::AllIncident)
        .unwrap();
    let b = f.run();
    assert_eq!(&b.node(1)[4..], &[1.0, 0.0, 0.0, 1.0]);
    assert_eq!(&b.edge(0)[9..], &[1.0, 0.0, 0.0, 1.0]);
    let low = b.node(2);
    assert_eq!(low[7], 0.15);
    assert_eq!(&low[4..7], &f.style.dark_hue);
}

#[test]
fn synthesis_is_pure() {
    let g = generate_er(150, 450, 3).unwrap();
    let session = ExplorerSession::new(Arc::new(g), SessionConfig::default()).unwrap();
    assert_eq!(session.frame().unwrap(), session.frame().unwrap());
}

#[test]
fn batches_bounded_by_three() {
    for (n, m) in [(1, 0), (10, 20), (300, 900), (1000, 3000)] {
        let er = generate_er(n, m, 1).unwrap();
        let edges = er
            .edges()
            .iter()
            .map(|e| EdgeRecord::new(e.source, e.target, true, e.frames.clone()))
            .collect();
        let g = DynamicGraph::new(1, true, er.nodes().to_vec(), edges).unwrap();
        let positions = (0..n).map(|i| Vec3::new(i as f64, (i * 7 % 13) as f64, 0.0)).collect();
        let b = Fixed::new(g, positions).run();
        assert!(b.batch_count() <= 3);
        assert_eq!(b.counts(), (n, m, m));
    }
}

#[test]
fn rotation_is_baked_into_positions() {
    let mut f = directed_pair();
    f.nav.graph_rotation = Quat::from_axis_angle(&Vec3::y_axis(), std::f64::consts::FRAC_PI_2);
    let b = f.run();
    let p = f.nav.to_world(&f.positions[0]);
    assert!((Vec3::new(b.node(0)[0] as f64, b.node(0)[1] as f64, b.node(0)[2] as f64) - p).norm() < 1e-5);
}

#[test]
fn hover_label_for_k29() {
    let g = load_graph(FIXTURE).unwrap();
    let k29 = g.node_index("K29").unwrap();
    let label = label_payload(&g, Some(Entity::Node(k29))).unwrap().unwrap();
    assert_eq!(label.text, "K29");
    assert!(label.screen_center);
    assert_eq!(label_payload(&g, None).unwrap(), None);
    let edge = label_payload(&g, Some(Entity::Edge(0))).unwrap().unwrap();
    assert_eq!(edge.text, format_sig3(g.edge(0).weight));
}

#[test]
fn props_follow_perspective() {
    let g = load_graph(FIXTURE).unwrap();
    let mut s = ExplorerSession::new(Arc::new(g), SessionConfig::default()).unwrap();
    let overview = s.frame().unwrap();
    assert!(overview.props.camera_prop.is_some() && overview.props.indicator.is_none());
    let (p, r) = (s.node_world(5), s.radii()[5]);
    s.nav.selection = Some(5);
    s.nav.teleport_to_node(p, r).unwrap();
    let detail = s.frame().unwrap();
    assert!(detail.props.camera_prop.is_none());
    let d = detail.props.indicator.unwrap();
    assert!(((d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt() - 1.0).abs() < 1e-5);
}
