//! Cubic octree over node positions with per-cell center of mass.

use super::Vec3;

const NO_CHILD: u32 = u32::MAX;
const MAX_DEPTH: u32 = 40;

#[derive(Clone, Debug)]
pub struct Cell {
    /// Geometric center of the cube.
    pub center: Vec3,
    pub half_width: f64,
    pub center_of_mass: Vec3,
    /// Number of nodes below this cell.
    pub count: u32,
    children: [u32; 8],
    /// Range into `Octree::items` when this cell is a leaf.
    items: (u32, u32),
}

impl Cell {
    pub fn is_leaf(&self) -> bool {
        self.children.iter().all(|&c| c == NO_CHILD)
    }

    pub fn width(&self) -> f64 {
        2.0 * self.half_width
    }

    pub fn children(&self) -> impl Iterator<Item = usize> + '_ {
        self.children
            .iter()
            .filter(|&&c| c != NO_CHILD)
            .map(|&c| c as usize)
    }

    /// Half-open containment matching the octant split rule.
    pub fn contains(&self, p: &Vec3) -> bool {
        (0..3).all(|k| {
            let lo = self.center[k] - self.half_width;
            let hi = self.center[k] + self.half_width;
            p[k] >= lo && p[k] <= hi
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Octree {
    cells: Vec<Cell>,
    items: Vec<usize>,
}

impl Octree {
    /// Builds the tree over all positions. Leaves hold one node, or several
    /// nodes that cannot be separated (coincident points or depth limit).
    pub fn build(positions: &[Vec3]) -> Octree {
        let mut tree = Octree {
            cells: Vec::with_capacity(positions.len() * 2),
            items: Vec::with_capacity(positions.len()),
        };
        if positions.is_empty() {
            return tree;
        }
        let mut lo = positions[0];
        let mut hi = positions[0];
        for p in positions {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        let center = (lo + hi) * 0.5;
        let half = ((hi - lo).max() * 0.5).max(1e-9) * (1.0 + 1e-9);
        let mut indices: Vec<usize> = (0..positions.len()).collect();
        let mut scratch = vec![0usize; positions.len()];
        tree.build_cell(positions, &mut indices, &mut scratch, center, half, 0);
        tree
    }

    fn build_cell(
        &mut self,
        positions: &[Vec3],
        indices: &mut [usize],
        scratch: &mut [usize],
        center: Vec3,
        half: f64,
        depth: u32,
    ) -> u32 {
        let id = self.cells.len();
        let com = indices.iter().map(|&i| positions[i]).sum::<Vec3>() / indices.len() as f64;
        self.cells.push(Cell {
            center,
            half_width: half,
            center_of_mass: com,
            count: indices.len() as u32,
            children: [NO_CHILD; 8],
            items: (0, 0),
        });

        let first = positions[indices[0]];
        let separable = indices.len() > 1
            && depth < MAX_DEPTH
            && indices.iter().any(|&i| positions[i] != first);
        if !separable {
            let start = self.items.len() as u32;
            self.items.extend_from_slice(indices);
            self.cells[id].items = (start, self.items.len() as u32);
            return id as u32;
        }

        // Counting sort by octant.
        let octant = |p: &Vec3| -> usize {
            (p.x >= center.x) as usize | ((p.y >= center.y) as usize) << 1 | ((p.z >= center.z) as usize) << 2
        };
        let mut counts = [0usize; 8];
        for &i in indices.iter() {
            counts[octant(&positions[i])] += 1;
        }
        let mut offsets = [0usize; 8];
        for o in 1..8 {
            offsets[o] = offsets[o - 1] + counts[o - 1];
        }
        let starts = offsets;
        let n = indices.len();
        for &i in indices.iter() {
            let o = octant(&positions[i]);
            scratch[offsets[o]] = i;
            offsets[o] += 1;
        }
        indices.copy_from_slice(&scratch[..n]);

        let child_half = half * 0.5;
        for o in 0..8 {
            if counts[o] == 0 {
                continue;
            }
            let offset = Vec3::new(
                if o & 1 != 0 { child_half } else { -child_half },
                if o & 2 != 0 { child_half } else { -child_half },
                if o & 4 != 0 { child_half } else { -child_half },
            );
            let range = starts[o]..starts[o] + counts[o];
            let child = self.build_cell(
                positions,
                &mut indices[range.clone()],
                &mut scratch[range],
                center + offset,
                child_half,
                depth + 1,
            );
            self.cells[id].children[o] = child;
        }
        id as u32
    }

    pub fn root(&self) -> Option<&Cell> {
        self.cells.first()
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Node indices held by a leaf cell.
    pub fn leaf_items(&self, cell: &Cell) -> &[usize] {
        &self.items[cell.items.0 as usize..cell.items.1 as usize]
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.is_leaf())
    }
}
