use graphnav_web::Explorer;

const FIXTURE: &str = include_str!("../../core/tests/fixtures/mednet_f4_surrogate.json");

fn node_xyz(buf: &[f32], k: usize) -> [f64; 3] {
    [buf[k * 8] as f64, buf[k * 8 + 1] as f64, buf[k * 8 + 2] as f64]
}

#[test]
fn hover_label_then_teleport_and_back() {
    let mut ex = Explorer::new(FIXTURE, 1).unwrap();
    assert_eq!((ex.node_count(), ex.edge_count(), ex.frame_count()), (199, 593, 4));
    assert!(ex.advance(0.0).unwrap() <= 3);

    // aim from the eye at the first drawn node
    let cam = ex.camera();
    let target = node_xyz(&ex.nodes(), 0);
    let label = ex
        .point(cam[0], cam[1], cam[2], target[0] - cam[0], target[1] - cam[1], target[2] - cam[2])
        .unwrap();
    assert!(label.is_some_and(|l| l.starts_with('K')));
    let overlay: serde_json::Value = serde_json::from_str(&ex.overlay()).unwrap();
    assert_eq!(overlay["perspective"], "overview");
    assert_eq!(overlay["label"]["screen_center"], true);

    assert!(ex.trigger().unwrap().contains("Selected"));
    assert!(ex.trigger().unwrap().contains("Teleported"));
    ex.advance(0.016).unwrap();
    let overlay: serde_json::Value = serde_json::from_str(&ex.overlay()).unwrap();
    assert_eq!(overlay["perspective"], "detail");
    assert!(overlay["indicator"].is_array());
    assert!(ex.back_to_overview().unwrap().contains("ReturnedToOverview"));
}

#[test]
fn shift_arrow_scrubs_time() {
    let mut ex = Explorer::new(FIXTURE, 1).unwrap();
    ex.set_modifier(true).unwrap();
    ex.set_dpad(1.0, 0.0).unwrap();
    ex.advance(0.1).unwrap();
    let bar: serde_json::Value = serde_json::from_str(&ex.overlay()).unwrap();
    assert_eq!(bar["time_bar"]["target"], 1);
    ex.set_dpad(0.0, 0.0).unwrap();
    ex.advance(1.0).unwrap();
    let bar: serde_json::Value = serde_json::from_str(&ex.overlay()).unwrap();
    assert_eq!(bar["time_bar"]["current"], 1);
}

#[test]
fn arrows_rotate_overview() {
    let mut ex = Explorer::new(FIXTURE, 1).unwrap();
    let before = ex.nodes();
    ex.set_dpad(1.0, 0.0).unwrap();
    ex.advance(0.5).unwrap();
    assert_ne!(before, ex.nodes());
    assert_eq!(before.len(), ex.nodes().len());
}

#[test]
fn bad_graph_is_an_error() {
    assert!(Explorer::new("{", 0).is_err());
}
