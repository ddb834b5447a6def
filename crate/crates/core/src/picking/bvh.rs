use super::geometry::{Aabb, Primitive, Ray};

const LEAF_SIZE: usize = 4;

#[derive(Clone, Debug)]
struct Node {
    bounds: Aabb,
    /// Leaf: `start..start + count` into `order`. Inner: `start` is the
    /// right child, the left child follows this node.
    start: u32,
    count: u32,
}

/// Median-split bounding volume hierarchy over primitive bounds.
#[derive(Clone, Debug, Default)]
pub struct Bvh {
    nodes: Vec<Node>,
    order: Vec<u32>,
}

impl Bvh {
    pub fn build(prims: &[Primitive]) -> Bvh {
        let mut bvh = Bvh {
            nodes: Vec::with_capacity(prims.len() * 2 / LEAF_SIZE + 1),
            order: (0..prims.len() as u32).collect(),
        };
        if prims.is_empty() {
            return bvh;
        }
        let bounds: Vec<Aabb> = prims.iter().map(Primitive::bounds).collect();
        let centers: Vec<_> = bounds.iter().map(Aabb::center).collect();
        let mut order = std::mem::take(&mut bvh.order);
        bvh.split(&bounds, &centers, &mut order, 0);
        bvh.order = order;
        bvh
    }

    fn split(&mut self, bounds: &[Aabb], centers: &[crate::layout::Vec3], order: &mut [u32], offset: usize) {
        let id = self.nodes.len();
        let node_bounds = order
            .iter()
            .fold(Aabb::empty(), |acc, &i| acc.union(&bounds[i as usize]));
        self.nodes.push(Node {
            bounds: node_bounds,
            start: offset as u32,
            count: order.len() as u32,
        });
        if order.len() <= LEAF_SIZE {
            return;
        }
        let mut spread = Aabb::empty();
        for &i in order.iter() {
            spread.grow(&centers[i as usize]);
        }
        let extent = spread.max - spread.min;
        let axis = extent.imax();
        let mid = order.len() / 2;
        order.select_nth_unstable_by(mid, |&a, &b| {
            centers[a as usize][axis].total_cmp(&centers[b as usize][axis])
        });
        let (left, right) = order.split_at_mut(mid);
        self.split(bounds, centers, left, offset);
        let right_id = self.nodes.len();
        self.split(bounds, centers, right, offset + mid);
        self.nodes[id].start = right_id as u32;
        self.nodes[id].count = 0;
    }

    /// Visits every primitive whose bounds the ray enters before `bound()`.
    /// `visit` receives the primitive index and returns nothing; the current
    /// bound is re-read after each visit so traversal tightens as hits land.
    pub fn traverse(&self, ray: &Ray, mut bound: impl FnMut() -> f64, mut visit: impl FnMut(usize)) {
        if self.nodes.is_empty() {
            return;
        }
        let inv = ray.direction().map(|c| 1.0 / c);
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            let Some(_) = node.bounds.hit(ray, &inv, bound()) else {
                continue;
            };
            if node.count > 0 {
                let start = node.start as usize;
                for &p in &self.order[start..start + node.count as usize] {
                    visit(p as usize);
                }
            } else {
                stack.push(node.start as usize);
                stack.push(id + 1);
            }
        }
    }
}
