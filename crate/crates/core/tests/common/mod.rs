#![allow(dead_code)]

use graphnav_core::graph::DynamicGraph;
use graphnav_core::layout::{init_layout, Vec3};
use graphnav_core::picking::{Entity, PickHit, Visibility};

/// Pairwise inverse-distance repulsion written out term by term.
pub fn pairwise_repulsion(points: &[Vec3], weight: f64, distance_min: f64) -> Vec<Vec3> {
    let dmin2 = distance_min * distance_min;
    let mut out = vec![Vec3::zeros(); points.len()];
    for i in 0..points.len() {
        for j in 0..points.len() {
            if i == j {
                continue;
            }
            let d = points[j] - points[i];
            let mut l2 = d.x * d.x + d.y * d.y + d.z * d.z;
            if l2 < dmin2 {
                l2 = (dmin2 * l2).sqrt();
            }
            out[i] += d * (weight / l2);
        }
    }
    out
}

/// Root-mean-square of per-node relative errors.
pub fn rms_relative(approx: &[Vec3], exact: &[Vec3]) -> f64 {
    let sum: f64 = approx
        .iter()
        .zip(exact)
        .map(|(a, e)| ((a - e).norm() / e.norm()).powi(2))
        .sum();
    (sum / exact.len() as f64).sqrt()
}

pub fn settled(graph: &DynamicGraph, seed: u64) -> Vec<Vec3> {
    let mut state = init_layout(graph, seed).unwrap();
    state.run_to_convergence(graph).unwrap();
    state.positions
}

/// Entry distance of a unit-direction ray into a sphere; 0 from inside.
pub fn sphere_hit(o: Vec3, d: Vec3, c: Vec3, r: f64) -> Option<f64> {
    let oc = o - c;
    if oc.norm() <= r {
        return Some(0.0);
    }
    let b = oc.dot(&d);
    let h = b * b - (oc.dot(&oc) - r * r);
    if h < 0.0 {
        return None;
    }
    let t = -b - h.sqrt();
    (t >= 0.0).then_some(t)
}

fn segment_distance(p: Vec3, a: Vec3, b: Vec3) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(&ab);
    let t = if len2 > 0.0 { ((p - a).dot(&ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
    (p - (a + ab * t)).norm()
}

/// Ray-capsule entry distance after Inigo Quilez's closed form; 0 from inside.
pub fn capsule_hit(o: Vec3, d: Vec3, a: Vec3, b: Vec3, r: f64) -> Option<f64> {
    if segment_distance(o, a, b) <= r {
        return Some(0.0);
    }
    let ba = b - a;
    let oa = o - a;
    let baba = ba.dot(&ba);
    if baba == 0.0 {
        return sphere_hit(o, d, a, r);
    }
    let bard = ba.dot(&d);
    let baoa = ba.dot(&oa);
    let rdoa = d.dot(&oa);
    let oaoa = oa.dot(&oa);
    let qa = baba - bard * bard;
    let qb = baba * rdoa - baoa * bard;
    let qc = baba * oaoa - baoa * baoa - r * r * baba;
    let h = qb * qb - qa * qc;
    if h < 0.0 {
        return None;
    }
    let t = (-qb - h.sqrt()) / qa;
    let y = baoa + t * bard;
    if qa > 0.0 && y > 0.0 && y < baba {
        return (t >= 0.0).then_some(t);
    }
    let caps = [sphere_hit(o, d, a, r), sphere_hit(o, d, b, r)];
    caps.into_iter().flatten().reduce(f64::min)
}

/// Nearest visible hit by exhaustive scan. Ties go to nodes, then to the
/// lower index.
#[allow(clippy::too_many_arguments)]
pub fn pick_linear(
    graph: &DynamicGraph,
    positions: &[Vec3],
    radii: &[f64],
    girths: &[f64],
    min_edge_radius: f64,
    origin: Vec3,
    dir: Vec3,
    visible: &Visibility,
) -> Option<PickHit> {
    let d = dir.normalize();
    let mut hits: Vec<(f64, u8, usize)> = Vec::new();
    for i in 0..graph.node_count() {
        if !visible.nodes[i] {
            continue;
        }
        if let Some(t) = sphere_hit(origin, d, positions[i], radii[i]) {
            hits.push((t, 0, i));
        }
    }
    for (k, e) in graph.edges().iter().enumerate() {
        if !visible.edges[k] || e.source == e.target {
            continue;
        }
        let (ps, pt) = (positions[e.source], positions[e.target]);
        let len = (pt - ps).norm();
        if len == 0.0 {
            continue;
        }
        let u = (pt - ps) / len;
        let (mut a, mut b) = (ps + u * radii[e.source], pt - u * radii[e.target]);
        if (b - a).dot(&u) < 0.0 {
            a = (a + b) * 0.5;
            b = a;
        }
        if let Some(t) = capsule_hit(origin, d, a, b, girths[k].max(min_edge_radius)) {
            hits.push((t, 1, k));
        }
    }
    hits.into_iter()
        .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)))
        .map(|(t, kind, i)| PickHit {
            entity: if kind == 0 { Entity::Node(i) } else { Entity::Edge(i) },
            distance: t,
        })
}
