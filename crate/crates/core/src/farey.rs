//! Slopes and exact distances in the Farey graph, the model of the
//! arc-and-curve complex of a once-punctured torus.
//!
//! Vertices are primitive slopes p/q (with 1/0 allowed); edges join slopes
//! with |ps - qr| = 1. Arcs are the slopes themselves; a curve of slope u is
//! a leaf attached to the arc of slope u, so mixed distances follow from the
//! pure arc distance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{usage, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FareySlope {
    p: i64,
    q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl FareySlope {
    pub fn new(p: i64, q: i64) -> Result<FareySlope> {
        if p == 0 && q == 0 {
            return Err(usage("slope 0/0"));
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(FareySlope { p, q })
    }

    pub fn infinity() -> FareySlope {
        FareySlope { p: 1, q: 0 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn det(a: FareySlope, b: FareySlope) -> i64 {
        a.p * b.q - a.q * b.p
    }

    pub fn adjacent(a: FareySlope, b: FareySlope) -> bool {
        FareySlope::det(a, b).abs() == 1
    }
}

impl std::fmt::Display for FareySlope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Distance from infinity by parent descent: every slope a/b with b >= 2 is
/// the mediant of its two Stern-Brocot parents, and some geodesic to
/// infinity leaves through a parent.
fn distance_to_infinity(s: FareySlope, memo: &mut BTreeMap<FareySlope, u64>) -> u64 {
    if s.q == 0 {
        return 0;
    }
    if s.q == 1 {
        return 1;
    }
    if let Some(&d) = memo.get(&s) {
        return d;
    }
    let (p1, p2) = parents(s);
    let d = 1 + distance_to_infinity(p1, memo).min(distance_to_infinity(p2, memo));
    memo.insert(s, d);
    d
}

/// The two neighbors of a/b with strictly smaller denominator.
fn parents(s: FareySlope) -> (FareySlope, FareySlope) {
    debug_assert!(s.q >= 2);
    // Solve p*y - q*x = 1 with 0 < y < q.
    let (mut x, mut y) = (0i64, 0i64);
    for cand_y in 1..s.q {
        let num = s.p * cand_y - 1;
        if num % s.q == 0 {
            x = num / s.q;
            y = cand_y;
            break;
        }
    }
    debug_assert_eq!(s.p * y - s.q * x, 1);
    let a = FareySlope::new(x, y).unwrap();
    let b = FareySlope::new(s.p - x, s.q - y).unwrap();
    (a, b)
}

/// Exact Farey-graph distance via a slope change moving `v` to infinity,
/// then parent descent.
pub fn farey_distance(u: FareySlope, v: FareySlope) -> u64 {
    if u == v {
        return 0;
    }
    // M = [[s', -r'], [-s, r]] with r s' - s r' = 1 sends v = r/s to 1/0.
    let (r, s) = (v.p, v.q);
    let (rp, sp) = bezout(r, s);
    let m = [[sp, -rp], [-s, r]];
    let w = apply(m, u);
    let mut memo = BTreeMap::new();
    distance_to_infinity(w, &mut memo)
}

fn bezout(r: i64, s: i64) -> (i64, i64) {
    // Find (r', s') with r*s' - s*r' = 1.
    let (mut old_r, mut rr) = (r, s);
    let (mut old_s, mut ss) = (1i64, 0i64);
    let (mut old_t, mut tt) = (0i64, 1i64);
    while rr != 0 {
        let q = old_r / rr;
        (old_r, rr) = (rr, old_r - q * rr);
        (old_s, ss) = (ss, old_s - q * ss);
        (old_t, tt) = (tt, old_t - q * tt);
    }
    // old_r = gcd = +-1; r*old_s + s*old_t = old_r.
    let (mut a, mut b) = (old_s, old_t);
    if old_r < 0 {
        a = -a;
        b = -b;
    }
    // r*a + s*b = 1  =>  r*(b') - s*(-a')... rearrange to r s' - s r' = 1.
    (-b, a)
}

fn apply(m: [[i64; 2]; 2], s: FareySlope) -> FareySlope {
    FareySlope::new(
        m[0][0] * s.p + m[0][1] * s.q,
        m[1][0] * s.p + m[1][1] * s.q,
    )
    .expect("unimodular image")
}

/// A vertex of the arc-and-curve complex of a once-punctured torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AcVertex {
    Arc(FareySlope),
    Curve(FareySlope),
}

impl AcVertex {
    pub fn slope(&self) -> FareySlope {
        match self {
            AcVertex::Arc(s) | AcVertex::Curve(s) => *s,
        }
    }
}

/// Exact distance in the arc-and-curve complex of a once-punctured torus.
/// Arcs form the Farey graph; the curve of slope u is adjacent exactly to
/// the arc of slope u.
pub fn ac_distance(a: AcVertex, b: AcVertex) -> u64 {
    use AcVertex::*;
    match (a, b) {
        (Arc(u), Arc(v)) => farey_distance(u, v),
        (Arc(u), Curve(v)) | (Curve(v), Arc(u)) => {
            if u == v {
                1
            } else {
                1 + farey_distance(u, v)
            }
        }
        (Curve(u), Curve(v)) => {
            if u == v {
                0
            } else {
                2 + farey_distance(u, v)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(p: i64, q: i64) -> FareySlope {
        FareySlope::new(p, q).unwrap()
    }

    #[test]
    fn adjacency_and_identity() {
        assert_eq!(farey_distance(sl(0, 1), FareySlope::infinity()), 1);
        assert_eq!(farey_distance(sl(0, 1), sl(0, 1)), 0);
        assert_eq!(farey_distance(sl(1, 2), sl(0, 1)), 1);
    }

    #[test]
    fn small_known_distances() {
        assert_eq!(farey_distance(sl(0, 1), sl(1, 1)), 1);
        // 0/1 - 1/2 - 2/5 is geodesic; no common neighbor joins 0/1 to 5/2.
        assert_eq!(farey_distance(sl(0, 1), sl(2, 5)), 2);
        assert_eq!(farey_distance(FareySlope::infinity(), sl(2, 5)), 3);
        assert_eq!(farey_distance(sl(0, 1), sl(5, 2)), 3);
    }

    #[test]
    fn symmetric() {
        let pts = [sl(0, 1), sl(1, 1), sl(3, 5), sl(7, 3), FareySlope::infinity()];
        for &a in &pts {
            for &b in &pts {
                assert_eq!(farey_distance(a, b), farey_distance(b, a));
            }
        }
    }

    #[test]
    fn curve_vertices_hang_off_their_arcs() {
        let u = sl(0, 1);
        let v = FareySlope::infinity();
        assert_eq!(ac_distance(AcVertex::Curve(u), AcVertex::Arc(u)), 1);
        assert_eq!(ac_distance(AcVertex::Curve(u), AcVertex::Curve(v)), 3);
        assert_eq!(ac_distance(AcVertex::Arc(u), AcVertex::Arc(v)), 1);
    }
}
