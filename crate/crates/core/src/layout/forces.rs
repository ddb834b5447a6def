//! Many-body repulsion (exact and Barnes-Hut) and link springs.
//!
//! Forces are expressed as velocity increments for one tick, already scaled
//! by the current `alpha`.

use super::octree::Octree;
use super::{LayoutState, Link, Vec3};

const JIGGLE: f64 = 1e-6;

/// Deterministic displacement for a coincident pair, antisymmetric in the
/// pair order so that the two nodes are pushed apart.
pub(crate) fn jiggle(seed: u64, i: usize, j: usize) -> Vec3 {
    let (lo, hi, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
    let mut h = seed ^ (lo as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (hi as u64).rotate_left(32);
    let mut component = || {
        h = splitmix64(h);
        (h >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let mut v = Vec3::new(component(), component(), component());
    if v.norm_squared() < 1e-12 {
        v = Vec3::x();
    }
    v.normalize() * (JIGGLE * sign)
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Repulsion parameters shared by both evaluation routes.
#[derive(Clone, Copy, Debug)]
pub struct Repulsion {
    /// `repulsion_strength * alpha`; negative pushes apart.
    pub weight: f64,
    pub distance_min2: f64,
    pub seed: u64,
}

impl Repulsion {
    pub fn for_state(state: &LayoutState) -> Self {
        Repulsion {
            weight: state.params.repulsion_strength * state.alpha,
            distance_min2: state.params.distance_min * state.params.distance_min,
            seed: state.seed,
        }
    }

    /// Increment on a node from mass `count` located at `toward - node`.
    #[inline]
    fn kernel(&self, mut delta: Vec3, count: f64, i: usize, j: usize) -> Vec3 {
        let mut l = delta.norm_squared();
        if l == 0.0 {
            delta = jiggle(self.seed, i, j);
            l = delta.norm_squared();
        }
        if l < self.distance_min2 {
            l = (self.distance_min2 * l).sqrt();
        }
        delta * (self.weight * count / l)
    }
}

/// Exact O(n^2) repulsion.
pub fn repulsion_brute(positions: &[Vec3], rep: &Repulsion) -> Vec<Vec3> {
    let n = positions.len();
    let mut out = vec![Vec3::zeros(); n];
    for i in 0..n {
        let mut acc = Vec3::zeros();
        for j in 0..n {
            if i != j {
                acc += rep.kernel(positions[j] - positions[i], 1.0, i, j);
            }
        }
        out[i] = acc;
    }
    out
}

/// Barnes-Hut repulsion. A cell is replaced by its aggregate when
/// `width / distance < theta` and the node is not inside it. Returns the
/// number of node-node and node-cell interactions evaluated.
pub fn repulsion_bh(
    positions: &[Vec3],
    tree: &Octree,
    theta: f64,
    rep: &Repulsion,
    out: &mut Vec<Vec3>,
) -> u64 {
    out.clear();
    out.resize(positions.len(), Vec3::zeros());
    let Some(_) = tree.root() else {
        return 0;
    };
    let theta2 = theta * theta;
    let mut interactions = 0u64;
    let mut stack: Vec<usize> = Vec::with_capacity(64);
    for (i, p) in positions.iter().enumerate() {
        let mut acc = Vec3::zeros();
        stack.clear();
        stack.push(0);
        while let Some(id) = stack.pop() {
            let cell = tree.cell(id);
            if cell.is_leaf() {
                for &j in tree.leaf_items(cell) {
                    if j != i {
                        acc += rep.kernel(positions[j] - p, 1.0, i, j);
                        interactions += 1;
                    }
                }
                continue;
            }
            let delta = cell.center_of_mass - p;
            let l = delta.norm_squared();
            let w = cell.width();
            if w * w < theta2 * l && !cell.contains(p) {
                acc += rep.kernel(delta, cell.count as f64, i, usize::MAX);
                interactions += 1;
            } else {
                stack.extend(cell.children());
            }
        }
        out[i] = acc;
    }
    interactions
}

/// Springs toward `link_distance`, evaluated against positions advanced by
/// the current velocities. Increments are split between endpoints by degree.
pub fn link_forces(state: &LayoutState, out: &mut [Vec3]) {
    let alpha = state.alpha;
    let distance = state.params.link_distance;
    for link in state.links.iter() {
        let Link {
            source,
            target,
            strength,
            bias,
        } = *link;
        let mut x = state.positions[target] + state.velocities[target]
            - state.positions[source]
            - state.velocities[source];
        let mut l = x.norm();
        if l == 0.0 {
            x = jiggle(state.seed, source, target);
            l = x.norm();
        }
        let k = (l - distance) / l * alpha * strength;
        let x = x * k;
        out[target] -= x * bias;
        out[source] += x * (1.0 - bias);
    }
}

/// Exact repulsion plus link springs.
pub fn compute_forces_brute(state: &LayoutState) -> Vec<Vec3> {
    let mut out = repulsion_brute(&state.positions, &Repulsion::for_state(state));
    link_forces(state, &mut out);
    out
}

/// Barnes-Hut repulsion plus exact link springs.
pub fn compute_forces_bh(state: &LayoutState, tree: &Octree) -> Vec<Vec3> {
    let mut out = Vec::new();
    repulsion_bh(
        &state.positions,
        tree,
        state.params.theta,
        &Repulsion::for_state(state),
        &mut out,
    );
    link_forces(state, &mut out);
    out
}
