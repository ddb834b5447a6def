use graphnav_core::layout::Vec3;
use graphnav_core::navigation::*;
use proptest::prelude::*;

fn quat() -> impl Strategy<Value = Quat> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("non-degenerate", |(w, x, y, z)| w * w + x * x + y * y + z * z > 1e-3)
        .prop_map(|(w, x, y, z)| Quat::from_quaternion(nalgebra::Quaternion::new(w, x, y, z)))
}

fn vec3(scale: f64) -> impl Strategy<Value = Vec3> {
    (-scale..scale, -scale..scale, -scale..scale).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn overview() -> NavigationState {
    NavigationState::new((Vec3::new(1.0, 2.0, 3.0), 10.0), -Vec3::z(), 1.6, NavConfig::default())
}

#[test]
fn fit_distance_reference() {
    let d = NavConfig::default().fit_distance(10.0);
    // 10 / tan(30°) * 1.2
    assert!((d - 20.7846).abs() < 1e-4, "{d}");
}

#[test]
fn ease_out_values() {
    assert_eq!(ease_out(0.0), 0.0);
    assert_eq!(ease_out(0.5), 0.875);
    assert_eq!(ease_out(1.0), 1.0);
}

#[test]
fn overview_places_center_ahead_at_eye_level() {
    let nav = overview();
    let eye = nav.eye_position();
    let d = NavConfig::default().fit_distance(10.0);
    assert!((eye - Vec3::new(1.0, 2.0, 3.0 + d)).norm() < 1e-12);
    assert!((nav.active.orientation * -Vec3::z() - -Vec3::z()).norm() < 1e-12);
}

#[test]
fn rotation_keeps_graph_fitted() {
    let mut nav = overview();
    let center = Vec3::new(1.0, 2.0, 3.0);
    for _ in 0..120 {
        nav.apply_overview_rotation((0.7, -0.4), 1.0 / 60.0, (center, 10.0)).unwrap();
        let d = (nav.eye_position() - center).norm();
        assert!((d - nav.config.fit_distance(10.0)).abs() < 1e-9);
    }
    // the graph center is a fixed point of the graph transform
    assert!((nav.to_world(&center) - center).norm() < 1e-12);
}

#[test]
fn yaw_rate_matches_config() {
    let mut nav = overview();
    nav.apply_overview_rotation((1.0, 0.0), 2.0, (Vec3::new(1.0, 2.0, 3.0), 10.0)).unwrap();
    assert!((nav.graph_rotation.angle().to_degrees() - 90.0).abs() < 1e-9);
}

#[test]
fn flight_duration_and_arrival() {
    let mut nav = overview();
    nav.selection = Some(0);
    nav.teleport_to_node(Vec3::zeros(), 1.0).unwrap();
    let target = nav.eye_position() + Vec3::new(0.0, 0.0, -30.0);
    nav.start_auto_flight(target, 2.0).unwrap();
    let flight = nav.flight.unwrap();
    // 30 units minus 1.5 * 2 standoff at 9 units/s
    assert!((flight.duration() - 3.0).abs() < 1e-12);
    let mut t = 0.0;
    while nav.update_auto_flight(0.1) {
        t += 0.1;
        assert!(t < 3.2);
    }
    assert_eq!(nav.active.position, flight.target);
    assert!(((nav.eye_position() - target).norm() - 3.0).abs() < 1e-9);
}

#[test]
fn wrong_perspective_rejected() {
    let mut nav = overview();
    assert_eq!(
        nav.apply_free_flight((1.0, 0.0), &Quat::identity(), 0.1),
        Err(NavError::WrongPerspective {
            expected: Perspective::Detail
        })
    );
    assert_eq!(nav.teleport_to_node(Vec3::zeros(), 1.0), Err(NavError::NoSelection));
}

proptest! {
    #[test]
    fn swap_is_involution(a in quat(), b in quat(), pa in vec3(50.0), pb in vec3(50.0)) {
        let mut nav = overview();
        nav.active = RigPose::new(pa, a);
        nav.passive = RigPose::new(pb, b);
        let before = nav.clone();
        nav.swap_rigs();
        prop_assert_eq!(nav.active, before.passive);
        nav.swap_rigs();
        prop_assert_eq!(nav, before);
    }

    #[test]
    fn teleport_keeps_orientation_bits(q in quat(), node in vec3(40.0), r in 0.1f64..3.0) {
        let mut nav = overview();
        nav.active.orientation = q;
        nav.selection = Some(4);
        nav.teleport_to_node(node, r).unwrap();
        let (a, b) = (nav.active.orientation.coords, q.coords);
        for k in 0..4 {
            prop_assert_eq!(a[k].to_bits(), b[k].to_bits());
        }
        prop_assert_eq!(nav.perspective, Perspective::Detail);
        prop_assert!(((nav.eye_position() - node).norm() - 1.5 * r).abs() < 1e-9);
    }

    #[test]
    fn flight_endpoints_exact(start in vec3(100.0), target in vec3(100.0)) {
        let mut f = AutoFlight { start, target, progress: 0.0, speed: 9.0 };
        prop_assert_eq!(f.position(), start);
        f.progress = 1.0;
        prop_assert_eq!(f.position(), target);
    }

    #[test]
    fn indicator_points_at_overview(head in quat(), offset in vec3(20.0)) {
        let mut nav = overview();
        nav.selection = Some(0);
        nav.teleport_to_node(Vec3::new(4.0, -3.0, 1.0), 1.0).unwrap();
        let head_pos = nav.eye_position() + offset;
        let local = nav.indicator_direction(head_pos, &head).unwrap();
        let want = (nav.passive.position + Vec3::new(0.0, nav.eye_height, 0.0) - head_pos).normalize();
        prop_assert!((local.norm() - 1.0).abs() < 1e-9);
        prop_assert!((head * local - want).norm() < 1e-9);
    }

    #[test]
    fn return_faces_head_direction(head in quat()) {
        let mut nav = overview();
        nav.selection = Some(0);
        nav.teleport_to_node(Vec3::new(-8.0, 0.0, 2.0), 1.0).unwrap();
        let forward = head * -Vec3::z();
        prop_assume!(forward.x.hypot(forward.z) > 1e-3);
        let center = Vec3::new(1.0, 2.0, 3.0);
        nav.return_to_overview((center, 10.0), &head, 1.6).unwrap();
        let to_center = center - nav.eye_position();
        let horizontal = Vec3::new(forward.x, 0.0, forward.z).normalize();
        prop_assert!(to_center.y.abs() < 1e-9);
        prop_assert!((to_center.normalize() - horizontal).norm() < 1e-9);
        prop_assert!((to_center.norm() - nav.config.fit_distance(10.0)).abs() < 1e-9);
    }

    #[test]
    fn free_flight_moves_at_speed(head in quat(), x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let mut nav = overview();
        nav.selection = Some(0);
        nav.teleport_to_node(Vec3::zeros(), 1.0).unwrap();
        let before = nav.active.position;
        nav.apply_free_flight((x, y), &head, 0.5).unwrap();
        let moved = nav.active.position - before;
        prop_assert!((moved.norm() - 1.5 * x.hypot(y)).abs() < 1e-9);
    }
}
