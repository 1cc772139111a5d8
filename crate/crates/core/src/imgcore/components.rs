//! Two-pass 8-connected component labeling with a union-find equivalence table.

use serde::{Deserialize, Serialize};

use super::raster::{BinaryMask, Rect};

/// One connected foreground region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// 1-based, in order of first encounter during a row-major scan.
    pub label: u32,
    pub x_min: usize,
    pub y_min: usize,
    /// Inclusive.
    pub x_max: usize,
    /// Inclusive.
    pub y_max: usize,
    pub pixel_count: usize,
}

impl Component {
    pub fn height(&self) -> usize {
        self.y_max - self.y_min + 1
    }

    pub fn width(&self) -> usize {
        self.x_max - self.x_min + 1
    }

    pub fn bbox(&self) -> Rect {
        Rect::new(self.x_min, self.y_min, self.width(), self.height())
    }
}

struct DisjointSet {
    parent: Vec<u32>,
}

impl DisjointSet {
    fn new() -> Self {
        // slot 0 is the background label
        Self { parent: vec![0] }
    }

    fn make(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut a: u32) -> u32 {
        while self.parent[a as usize] != a {
            let grand = self.parent[self.parent[a as usize] as usize];
            self.parent[a as usize] = grand;
            a = grand;
        }
        a
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller label as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Labels the foreground of `mask` under 8-connectivity.
///
/// Returns the label raster (0 = background) and one [`Component`] per label.
pub fn label_components(mask: &BinaryMask) -> (Vec<u32>, Vec<Component>) {
    let (w, h) = mask.dims();
    let mut labels = vec![0u32; w * h];
    let mut sets = DisjointSet::new();

    for y in 0..h {
        for x in 0..w {
            if !mask.get(x, y) {
                continue;
            }
            let mut current = 0u32;
            // already-visited neighbours: W, NW, N, NE
            let mut visit = |nx: usize, ny: usize, current: &mut u32| {
                let l = labels[ny * w + nx];
                if l != 0 {
                    if *current == 0 {
                        *current = l;
                    } else {
                        sets.union(*current, l);
                    }
                }
            };
            if x > 0 {
                visit(x - 1, y, &mut current);
            }
            if y > 0 {
                if x > 0 {
                    visit(x - 1, y - 1, &mut current);
                }
                visit(x, y - 1, &mut current);
                if x + 1 < w {
                    visit(x + 1, y - 1, &mut current);
                }
            }
            if current == 0 {
                current = sets.make();
            }
            labels[y * w + x] = current;
        }
    }

    // Second pass: resolve roots and renumber by first encounter.
    let mut final_label = vec![0u32; sets.parent.len()];
    let mut components: Vec<Component> = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let idx = y * w + x;
            if labels[idx] == 0 {
                continue;
            }
            let root = sets.find(labels[idx]) as usize;
            if final_label[root] == 0 {
                components.push(Component {
                    label: components.len() as u32 + 1,
                    x_min: x,
                    y_min: y,
                    x_max: x,
                    y_max: y,
                    pixel_count: 0,
                });
                final_label[root] = components.len() as u32;
            }
            let label = final_label[root];
            labels[idx] = label;
            let c = &mut components[label as usize - 1];
            c.x_min = c.x_min.min(x);
            c.x_max = c.x_max.max(x);
            c.y_max = y;
            c.pixel_count += 1;
        }
    }
    (labels, components)
}

pub fn connected_components(mask: &BinaryMask) -> Vec<Component> {
    label_components(mask).1
}
