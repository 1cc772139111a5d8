//! Zhang-Suen iterative thinning.
//!
//! Each iteration runs two sub-passes over the 8-neighbourhood
//! `P2..P9 = N, NE, E, SE, S, SW, W, NW`. A foreground pixel is deleted when it
//! has between 2 and 6 foreground neighbours, exactly one 0->1 transition in
//! the cyclic sequence `P2..P9, P2`, and
//!
//! * pass 1: `P2*P4*P6 == 0` and `P4*P6*P8 == 0`
//! * pass 2: `P2*P4*P8 == 0` and `P2*P6*P8 == 0`
//!
//! Deletions within a pass are applied simultaneously. Pixels outside the image
//! are background. Iteration stops when a full iteration deletes nothing.

use crate::imgcore::BinaryMask;

const OFFSETS: [(i64, i64); 8] = [(0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1)];

fn neighbours(data: &[bool], w: usize, h: usize, x: usize, y: usize) -> [bool; 8] {
    let mut n = [false; 8];
    for (slot, (dx, dy)) in n.iter_mut().zip(OFFSETS) {
        let (nx, ny) = (x as i64 + dx, y as i64 + dy);
        *slot = nx >= 0 && ny >= 0 && nx < w as i64 && ny < h as i64 && data[ny as usize * w + nx as usize];
    }
    n
}

fn deletable(p: &[bool; 8], first_pass: bool) -> bool {
    let b = p.iter().filter(|&&v| v).count();
    if !(2..=6).contains(&b) {
        return false;
    }
    let a = (0..8).filter(|&i| !p[i] && p[(i + 1) % 8]).count();
    if a != 1 {
        return false;
    }
    let [p2, _, p4, _, p6, _, p8, _] = *p;
    if first_pass {
        !(p2 && p4 && p6) && !(p4 && p6 && p8)
    } else {
        !(p2 && p4 && p8) && !(p2 && p6 && p8)
    }
}

pub fn skeletonize(mask: &BinaryMask) -> BinaryMask {
    let (w, h) = mask.dims();
    let mut data = mask.data().to_vec();
    let mut marked = Vec::new();
    loop {
        let mut changed = false;
        for first_pass in [true, false] {
            marked.clear();
            for y in 0..h {
                for x in 0..w {
                    if data[y * w + x] && deletable(&neighbours(&data, w, h, x, y), first_pass) {
                        marked.push(y * w + x);
                    }
                }
            }
            changed |= !marked.is_empty();
            for &i in &marked {
                data[i] = false;
            }
        }
        if !changed {
            break;
        }
    }
    BinaryMask::new(w, h, data).expect("dims preserved")
}
