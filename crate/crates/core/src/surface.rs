//! The fixed one-vertex cell structure of a closed orientable surface.
//!
//! A genus-g surface (g >= 2) is the 4g-gon with boundary word
//! a0 b0 a0' b0' a1 b1 a1' b1' ... and all corners identified to a single
//! vertex. The cell structure has one vertex, 2g edge classes and one face,
//! so its Euler characteristic is 2 - 2g. Curves are drawn as chord systems
//! inside the polygon; the 1-skeleton they are measured against is the wedge
//! of the 2g edge loops.

use serde::{Deserialize, Serialize};

use crate::{usage, Result};

/// A closed orientable surface of genus >= 2 with its fixed cell structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSpec {
    genus: usize,
}

impl SurfaceSpec {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(usage(format!("genus must be >= 2, got {genus}")));
        }
        Ok(SurfaceSpec { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of polygon sides (4g).
    pub fn sides(&self) -> usize {
        4 * self.genus
    }

    /// Number of edge classes of the cell structure (2g).
    pub fn edge_classes(&self) -> usize {
        2 * self.genus
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    /// The edge class crossed by polygon side `s`, together with the
    /// representative index: 0 if `s` is the primary side of the class,
    /// 1 if it is the partner side.
    pub fn edge_of_side(&self, s: usize) -> (usize, u8) {
        debug_assert!(s < self.sides());
        let h = s / 4;
        match s % 4 {
            0 => (2 * h, 0),
            1 => (2 * h + 1, 0),
            2 => (2 * h, 1),
            _ => (2 * h + 1, 1),
        }
    }

    /// Inverse of [`edge_of_side`](Self::edge_of_side).
    pub fn side_of_edge(&self, edge: usize, rep: u8) -> usize {
        debug_assert!(edge < self.edge_classes());
        let h = edge / 2;
        match (edge % 2, rep) {
            (0, 0) => 4 * h,
            (0, _) => 4 * h + 2,
            (_, 0) => 4 * h + 1,
            (_, _) => 4 * h + 3,
        }
    }

    /// Signed letter contributed by crossing `edge` in direction `dir`
    /// (`+1` = exiting through the primary side). Letters are 1-based so the
    /// sign survives: edge class k becomes +-(k+1).
    pub fn letter(&self, edge: usize, dir: i8) -> i32 {
        let l = (edge + 1) as i32;
        if dir >= 0 {
            l
        } else {
            -l
        }
    }

    /// The boundary word of the polygon read counterclockwise; this is the
    /// defining relator of the surface group in the edge-class letters.
    pub fn relator(&self) -> Vec<i32> {
        let mut r = Vec::with_capacity(self.sides());
        for h in 0..self.genus {
            let a = (2 * h + 1) as i32;
            let b = (2 * h + 2) as i32;
            r.extend_from_slice(&[a, b, -a, -b]);
        }
        r
    }
}
