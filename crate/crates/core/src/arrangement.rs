//! Planar arrangement of a joint drawing and the region census.
//!
//! The polygon is realized with its boundary points in convex position
//! (integer points on a parabola), so chords are straight segments, two
//! chords cross exactly when their endpoints interleave, and every cell of
//! the subdivision is convex. Cells glued across the side identifications
//! give the complement regions of any chosen set of "wall" curves; the
//! census (Euler characteristic, boundary cycles, corner counts) drives
//! bigon detection, minimal position, cutting and witness construction.

use std::collections::BTreeMap;

use crate::drawing::{Drawing, EventId, RepRef, Tag};

type V2 = (i128, i128);

fn sub(a: V2, b: V2) -> V2 {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: V2, b: V2) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// Strict ccw pseudo-angle order on nonzero direction vectors.
fn angle_less(a: V2, b: V2) -> bool {
    let upper = |d: V2| d.1 > 0 || (d.1 == 0 && d.0 > 0);
    match (upper(a), upper(b)) {
        (true, false) => true,
        (false, true) => false,
        _ => cross(a, b) > 0,
    }
}

/// Exact comparison of fractions n1/d1 and n2/d2 (denominators nonzero).
fn frac_cmp(n1: i128, d1: i128, n2: i128, d2: i128) -> std::cmp::Ordering {
    let (n1, d1) = if d1 < 0 { (-n1, -d1) } else { (n1, d1) };
    let (n2, d2) = if d2 < 0 { (-n2, -d2) } else { (n2, d2) };
    (n1 * d2).cmp(&(n2 * d1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VertexKind {
    Corner(usize),
    Rep(EventId, u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EdgeKind {
    /// Boundary interval i: boundary_seq[i] -> boundary_seq[i+1].
    Interval(usize),
    /// Chord segment: (chord, slot) with slot 0..=crossing count.
    Segment(usize, usize),
}

#[derive(Clone, Copy, Debug)]
pub struct Chord {
    /// Host traversal order: ends.0 is the exit representative of its event,
    /// ends.1 the entry representative of the next one.
    pub ends: (RepRef, RepRef),
    pub tag: Tag,
}

/// One transverse intersection of two chords.
#[derive(Clone, Copy, Debug)]
pub struct Crossing {
    pub chords: (usize, usize),
}

pub struct Arrangement<'a> {
    pub dr: &'a Drawing,
    /// Boundary vertices in ccw order (corners and representatives).
    boundary_seq: Vec<VertexKind>,
    coords: Vec<V2>,
    rep_vertex: BTreeMap<RepRef, usize>,
    pub chords: Vec<Chord>,
    chord_of_rep: BTreeMap<RepRef, usize>,
    pub crossings: Vec<Crossing>,
    /// Crossings along each chord, sorted from ends.0 toward ends.1.
    pub along: Vec<Vec<usize>>,
    /// Host passage direction of each event.
    dir_of: BTreeMap<EventId, i8>,
    edges: Vec<(usize, usize, EdgeKind)>, // tail, head, kind
    next_out: Vec<usize>,                 // ccw successor among outgoing at same vertex
    face_of: Vec<usize>,
    n_faces: usize,
    outer_face: usize,
    /// For interval halfedges: the glued partner halfedge.
    interval_partner: Vec<Option<usize>>,
    /// First segment-edge index of each chord.
    chord_edge0: Vec<usize>,
    /// Boundary-sequence index of each polygon corner.
    side_offsets: Vec<usize>,
    corner_cell: usize,
}

fn he(edge: usize, rev: bool) -> usize {
    2 * edge + rev as usize
}

impl<'a> Arrangement<'a> {
    pub fn build(dr: &'a Drawing) -> Arrangement<'a> {
        for attempt in 0..64 {
            if let Some(a) = Self::try_build(dr, attempt) {
                return a;
            }
        }
        panic!("arrangement build failed: persistent concurrent chords");
    }

    fn try_build(dr: &'a Drawing, attempt: u64) -> Option<Arrangement<'a>> {
        let surface = dr.surface();
        // Boundary sequence: corner, then the side's points, for each side.
        let mut boundary_seq = Vec::new();
        let mut rep_vertex = BTreeMap::new();
        for s in 0..surface.sides() {
            boundary_seq.push(VertexKind::Corner(s));
            let (edge, rep) = surface.edge_of_side(s);
            let order = dr.edge_order(edge);
            let idxs: Vec<usize> = if rep == 0 {
                (0..order.len()).collect()
            } else {
                (0..order.len()).rev().collect()
            };
            for i in idxs {
                boundary_seq.push(VertexKind::Rep(order[i], rep));
            }
        }
        let b = boundary_seq.len();
        let mut coords = Vec::with_capacity(b);
        for (i, kind) in boundary_seq.iter().enumerate() {
            // Deterministic jitter per attempt; preserves the boundary order
            // while breaking chord concurrences.
            let h = splitmix(attempt.wrapping_mul(0x9e37).wrapping_add(i as u64)) % 61;
            let x = (i as i128) * 64 + h as i128;
            coords.push((x, x * x));
            if let VertexKind::Rep(e, r) = kind {
                rep_vertex.insert((*e, *r), i);
            }
        }

        // Host passage directions.
        let mut dir_of = BTreeMap::new();
        for comp in dr.components() {
            for p in comp {
                dir_of.insert(p.event, p.dir);
            }
        }

        // Chords with host orientation.
        let mut chords = Vec::new();
        let mut chord_of_rep = BTreeMap::new();
        for (a, bb) in dr.chords() {
            let exit_rep_of = |r: RepRef| -> bool {
                let d = dir_of[&r.0];
                (d > 0 && r.1 == 1) || (d < 0 && r.1 == 0)
            };
            let (exit, entry) = if exit_rep_of(a) { (a, bb) } else { (bb, a) };
            let id = chords.len();
            chord_of_rep.insert(exit, id);
            chord_of_rep.insert(entry, id);
            chords.push(Chord {
                ends: (exit, entry),
                tag: dr.tag_of(exit.0),
            });
        }

        // Crossings by endpoint interleaving.
        let vx = |c: &Chord| -> (usize, usize) { (rep_vertex[&c.ends.0], rep_vertex[&c.ends.1]) };
        let mut crossings: Vec<Crossing> = Vec::new();
        let mut along: Vec<Vec<usize>> = vec![Vec::new(); chords.len()];
        for i in 0..chords.len() {
            for j in i + 1..chords.len() {
                let (p, q) = vx(&chords[i]);
                let (r, s) = vx(&chords[j]);
                let (lo, hi) = if p < q { (p, q) } else { (q, p) };
                let inside = |x: usize| x > lo && x < hi;
                if inside(r) != inside(s) {
                    let id = crossings.len();
                    crossings.push(Crossing { chords: (i, j) });
                    along[i].push(id);
                    along[j].push(id);
                }
            }
        }
        // Sort crossings along each chord by exact intersection parameter.
        let param = |chord: usize, x: &Crossing| -> (i128, i128) {
            let other = if x.chords.0 == chord {
                x.chords.1
            } else {
                x.chords.0
            };
            let (p, q) = vx(&chords[chord]);
            let (r, s) = vx(&chords[other]);
            let d1 = sub(coords[q], coords[p]);
            let d2 = sub(coords[s], coords[r]);
            let e = sub(coords[r], coords[p]);
            (cross(e, d2), cross(d1, d2))
        };
        let mut degenerate = false;
        for c in 0..chords.len() {
            let mut keyed: Vec<((i128, i128), usize)> = along[c]
                .iter()
                .map(|&x| (param(c, &crossings[x]), x))
                .collect();
            keyed.sort_by(|a, b| frac_cmp(a.0 .0, a.0 .1, b.0 .0, b.0 .1));
            for w in keyed.windows(2) {
                if frac_cmp(w[0].0 .0, w[0].0 .1, w[1].0 .0, w[1].0 .1).is_eq() {
                    degenerate = true;
                }
            }
            along[c] = keyed.into_iter().map(|(_, x)| x).collect();
        }
        if degenerate {
            return None;
        }

        // Vertices: boundary (0..b) then crossings (b..).
        let n_vertices = b + crossings.len();
        let xvert = |x: usize| b + x;

        // Edges.
        let mut edges: Vec<(usize, usize, EdgeKind)> = Vec::new();
        for i in 0..b {
            edges.push((i, (i + 1) % b, EdgeKind::Interval(i)));
        }
        let mut chord_edge0 = Vec::with_capacity(chords.len());
        for (c, chord) in chords.iter().enumerate() {
            let (p, q) = vx(chord);
            chord_edge0.push(edges.len());
            let mut stations = vec![p];
            stations.extend(along[c].iter().map(|&x| xvert(x)));
            stations.push(q);
            for (slot, w) in stations.windows(2).enumerate() {
                edges.push((w[0], w[1], EdgeKind::Segment(c, slot)));
            }
        }

        // Direction vectors for rotation sorting.
        let chord_dir: Vec<V2> = chords
            .iter()
            .map(|ch| {
                let (p, q) = vx(ch);
                sub(coords[q], coords[p])
            })
            .collect();
        let tail_of = |h: usize, edges: &Vec<(usize, usize, EdgeKind)>| -> usize {
            let (t, hd, _) = edges[h / 2];
            if h % 2 == 0 {
                t
            } else {
                hd
            }
        };
        let he_dir = |h: usize, edges: &Vec<(usize, usize, EdgeKind)>| -> V2 {
            let (t, hd, kind) = edges[h / 2];
            let d = match kind {
                EdgeKind::Interval(_) => sub(coords[hd], coords[t]),
                EdgeKind::Segment(c, _) => chord_dir[c],
            };
            if h % 2 == 0 {
                d
            } else {
                (-d.0, -d.1)
            }
        };

        // Rotation system.
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
        for e in 0..edges.len() {
            out[tail_of(he(e, false), &edges)].push(he(e, false));
            out[tail_of(he(e, true), &edges)].push(he(e, true));
        }
        for v in 0..n_vertices {
            out[v].sort_by(|&a, &b| {
                if angle_less(he_dir(a, &edges), he_dir(b, &edges)) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            });
        }
        // The face to the LEFT of h continues with the clockwise-next
        // outgoing halfedge after twin(h) at head(h).
        let mut next_out = vec![0usize; 2 * edges.len()];
        for v in 0..n_vertices {
            let k = out[v].len();
            for (i, &h) in out[v].iter().enumerate() {
                next_out[h] = out[v][(i + k - 1) % k];
            }
        }

        // Faces: orbits of h -> cw-next outgoing after twin(h).
        let mut face_of = vec![usize::MAX; 2 * edges.len()];
        let mut n_faces = 0;
        for h0 in 0..2 * edges.len() {
            if face_of[h0] != usize::MAX {
                continue;
            }
            let f = n_faces;
            n_faces += 1;
            let mut h = h0;
            loop {
                face_of[h] = f;
                h = next_out[h ^ 1];
                if h == h0 {
                    break;
                }
            }
        }
        // Outer face: left of the clockwise halfedge of interval 0.
        let outer_face = face_of[he(0, true)];

        // Interval gluing: pair halfedges across the side identification.
        let mut side_offsets = vec![0usize; surface.sides()];
        {
            let mut pos = 0;
            for s in 0..surface.sides() {
                side_offsets[s] = pos;
                let (edge, _) = surface.edge_of_side(s);
                pos += 1 + dr.edge_order(edge).len();
            }
        }
        let mut interval_partner: Vec<Option<usize>> = vec![None; 2 * edges.len()];
        for s in 0..surface.sides() {
            let (edge, rep) = surface.edge_of_side(s);
            if rep != 0 {
                continue;
            }
            let partner_side = surface.side_of_edge(edge, 1);
            let n = dr.edge_order(edge).len();
            for j in 0..=n {
                let ia = side_offsets[s] + j; // interval edge index on side s
                let ib = side_offsets[partner_side] + (n - j);
                // ccw halfedge of a pairs with cw halfedge of b (the gluing
                // reverses the boundary direction).
                interval_partner[he(ia, false)] = Some(he(ib, true));
                interval_partner[he(ia, true)] = Some(he(ib, false));
                interval_partner[he(ib, false)] = Some(he(ia, true));
                interval_partner[he(ib, true)] = Some(he(ia, false));
            }
        }

        // The cell at the surface vertex: left of the ccw interval halfedge
        // out of corner 0.
        let corner_cell = face_of[he(0, false)];

        Some(Arrangement {
            dr,
            boundary_seq,
            coords,
            rep_vertex,
            chords,
            chord_of_rep,
            crossings,
            along,
            dir_of,
            edges,
            next_out,
            face_of,
            n_faces,
            outer_face,
            interval_partner,
            chord_edge0,
            side_offsets,
            corner_cell,
        })
    }

    pub fn host_dir(&self, e: EventId) -> i8 {
        self.dir_of[&e]
    }

    pub fn chord_of(&self, r: RepRef) -> usize {
        self.chord_of_rep[&r]
    }

    fn next_in_face(&self, h: usize) -> usize {
        self.next_out[h ^ 1]
    }

    fn he_tail(&self, h: usize) -> usize {
        let (t, hd, _) = self.edges[h / 2];
        if h % 2 == 0 {
            t
        } else {
            hd
        }
    }

    fn he_head(&self, h: usize) -> usize {
        self.he_tail(h ^ 1)
    }

    fn kind(&self, h: usize) -> EdgeKind {
        self.edges[h / 2].2
    }

    fn he_of_chord_start(&self, chord: usize) -> usize {
        he(self.chord_edge0[chord], false)
    }

    /// Number of transverse intersections between two tags.
    pub fn crossing_count(&self, a: Tag, b: Tag) -> usize {
        self.crossings
            .iter()
            .filter(|x| {
                let (ca, cb) = (self.chords[x.chords.0].tag, self.chords[x.chords.1].tag);
                (ca == a && cb == b) || (ca == b && cb == a)
            })
            .count()
    }

    /// Algebraic intersection number of `a` with `b` under host orientations
    /// and the polygon's counterclockwise orientation.
    pub fn signed_crossing_sum(&self, a: Tag, b: Tag) -> i64 {
        let vx = |c: &Chord| (self.rep_vertex[&c.ends.0], self.rep_vertex[&c.ends.1]);
        let mut sum = 0i64;
        for x in &self.crossings {
            let (ci, cj) = x.chords;
            let (ti, tj) = (self.chords[ci].tag, self.chords[cj].tag);
            let (ca, cb) = if ti == a && tj == b {
                (ci, cj)
            } else if ti == b && tj == a {
                (cj, ci)
            } else {
                continue;
            };
            let (p, q) = vx(&self.chords[ca]);
            let (r, s) = vx(&self.chords[cb]);
            let da = sub(self.coords[q], self.coords[p]);
            let db = sub(self.coords[s], self.coords[r]);
            sum += cross(da, db).signum() as i64;
        }
        sum
    }

    /// Sign of cross(direction of chord `ca`, direction of chord `cb`).
    pub fn pair_cross_sign(&self, ca: usize, cb: usize) -> i64 {
        let vx = |c: usize| {
            (
                self.rep_vertex[&self.chords[c].ends.0],
                self.rep_vertex[&self.chords[c].ends.1],
            )
        };
        let (p, q) = vx(ca);
        let (r, s) = vx(cb);
        let da = sub(self.coords[q], self.coords[p]);
        let db = sub(self.coords[s], self.coords[r]);
        cross(da, db).signum() as i64
    }

    /// Complement regions of the curves whose tags satisfy `is_wall`.
    pub fn regions(&self, is_wall: &dyn Fn(Tag) -> bool) -> RegionSet<'_, 'a> {
        let mut uf = UnionFind::new(self.n_faces);
        let mut portal = vec![false; 2 * self.edges.len()];
        for h in (0..2 * self.edges.len()).step_by(2) {
            match self.kind(h) {
                EdgeKind::Interval(_) => {
                    portal[h] = true;
                    portal[h ^ 1] = true;
                    let p = self.interval_partner[h].expect("interval paired");
                    // Merge the two interior cells across the gluing.
                    let (fa, fb) = (self.face_of[h], self.face_of[p]);
                    let a = if fa != self.outer_face {
                        fa
                    } else {
                        self.face_of[h ^ 1]
                    };
                    let bb = if fb != self.outer_face {
                        fb
                    } else {
                        self.face_of[p ^ 1]
                    };
                    uf.union(a, bb);
                }
                EdgeKind::Segment(c, _) => {
                    if !is_wall(self.chords[c].tag) {
                        portal[h] = true;
                        portal[h ^ 1] = true;
                        uf.union(self.face_of[h], self.face_of[h ^ 1]);
                    }
                }
            }
        }
        RegionSet::new(self, uf, portal)
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A maximal boundary stretch along one host curve.
#[derive(Clone, Debug)]
pub struct Run {
    pub tag: Tag,
    /// Wall halfedges in boundary-walk order (region on the left).
    pub halfedges: Vec<usize>,
    /// Events passed within the run, with the direction the walk crosses
    /// them (+1 = primary to partner side).
    pub events: Vec<(EventId, i8)>,
    /// Crossing vertices at the run's ends (None for a closed run).
    pub start_vertex: Option<usize>,
    pub end_vertex: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct BoundaryCycle {
    pub runs: Vec<Run>,
    pub corners: usize,
}

#[derive(Clone, Debug)]
pub struct RegionInfo {
    pub id: usize,
    pub cells: usize,
    pub chi: i64,
    pub boundary: Vec<BoundaryCycle>,
    pub contains_vertex: bool,
}

impl RegionInfo {
    pub fn genus(&self) -> i64 {
        (2 - self.chi - self.boundary.len() as i64) / 2
    }
    pub fn is_disk(&self) -> bool {
        self.chi == 1 && self.boundary.len() == 1
    }
    pub fn is_annulus(&self) -> bool {
        self.chi == 0 && self.boundary.len() == 2
    }
}

pub struct RegionSet<'r, 'a> {
    pub arr: &'r Arrangement<'a>,
    region_of_face: Vec<usize>,
    pub regions: Vec<RegionInfo>,
    portal: Vec<bool>,
}

impl<'r, 'a> RegionSet<'r, 'a> {
    fn new(arr: &'r Arrangement<'a>, mut uf: UnionFind, portal: Vec<bool>) -> Self {
        let mut region_of_face = vec![usize::MAX; arr.n_faces];
        let mut ids = BTreeMap::new();
        for f in 0..arr.n_faces {
            if f == arr.outer_face {
                continue;
            }
            let root = uf.find(f);
            let next = ids.len();
            let id = *ids.entry(root).or_insert(next);
            region_of_face[f] = id;
        }
        let n_regions = ids.len();

        // Euler characteristic via open pieces: chi = V_int - E_int + F.
        let mut cells = vec![0usize; n_regions];
        let mut chi = vec![0i64; n_regions];
        for f in 0..arr.n_faces {
            if f != arr.outer_face {
                cells[region_of_face[f]] += 1;
                chi[region_of_face[f]] += 1;
            }
        }
        let interior_face = |h: usize| -> usize {
            let f = arr.face_of[h];
            if f != arr.outer_face {
                f
            } else {
                arr.face_of[h ^ 1]
            }
        };
        for e in 0..arr.edges.len() {
            let h = he(e, false);
            if !portal[h] {
                continue;
            }
            match arr.kind(h) {
                EdgeKind::Interval(_) => {
                    // Each glued interval pair is one internal edge; count it
                    // once (at the smaller edge index of the pair).
                    let p = arr.interval_partner[h].expect("paired");
                    if e < p / 2 {
                        chi[region_of_face[interior_face(h)]] -= 1;
                    }
                }
                EdgeKind::Segment(_, _) => {
                    chi[region_of_face[arr.face_of[h]]] -= 1;
                }
            }
        }
        // Internal vertices: the surface vertex, non-wall event points, and
        // crossings of two non-wall chords.
        let vregion = region_of_face[arr.corner_cell];
        chi[vregion] += 1;
        let chord_is_portal =
            |c: usize| -> bool { portal[arr.he_of_chord_start(c)] };
        let mut seen_events: Vec<EventId> = Vec::new();
        for (&(e, r), _) in arr.rep_vertex.iter() {
            if r != 0 {
                continue;
            }
            let c = arr.chord_of((e, 0));
            if chord_is_portal(c) {
                seen_events.push(e);
                let h = arr.he_of_chord_start(c);
                chi[region_of_face[interior_face(h)]] += 1;
            }
        }
        let _ = seen_events;
        for x in &arr.crossings {
            let (c1, c2) = x.chords;
            if chord_is_portal(c1) && chord_is_portal(c2) {
                let h = arr.he_of_chord_start(c1);
                chi[region_of_face[interior_face(h)]] += 1;
            }
        }

        let mut rs = RegionSet {
            arr,
            region_of_face,
            regions: Vec::new(),
            portal,
        };
        let boundary = rs.trace_boundaries(n_regions);
        let vreg = rs.region_of_face[arr.corner_cell];
        rs.regions = (0..n_regions)
            .map(|id| RegionInfo {
                id,
                cells: cells[id],
                chi: chi[id],
                boundary: boundary[id].clone(),
                contains_vertex: id == vreg,
            })
            .collect();
        rs
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    /// Region containing the surface vertex.
    pub fn vertex_region(&self) -> usize {
        self.region_of_face[self.arr.corner_cell]
    }

    /// A face belonging to the given region.
    pub fn sample_face(&self, region: usize) -> Option<usize> {
        self.region_of_face.iter().position(|&r| r == region)
    }

    /// The region of this set containing a whole region of a finer set
    /// (computed over the same arrangement).
    pub fn region_of_all_region(&self, finer: &RegionSet, finer_region: usize) -> Option<usize> {
        let f = finer.sample_face(finer_region)?;
        let r = self.region_of_face[f];
        if r == usize::MAX {
            None
        } else {
            Some(r)
        }
    }

    /// Region a non-wall chord's interior lies in.
    pub fn region_of_chord(&self, chord: usize) -> usize {
        let h = self.arr.he_of_chord_start(chord);
        let f = self.arr.face_of[h];
        if f != self.arr.outer_face {
            self.region_of_face[f]
        } else {
            self.region_of_face[self.arr.face_of[h ^ 1]]
        }
    }

    /// Region on the left of a wall halfedge.
    pub fn region_left_of_chord(&self, chord: usize, forward: bool) -> usize {
        let h0 = self.arr.he_of_chord_start(chord);
        let h = if forward { h0 } else { h0 ^ 1 };
        self.region_of_face[self.arr.face_of[h]]
    }

    /// Region containing the open segment of `chord` in the given slot
    /// (slot i lies between the i-th and (i+1)-th crossings along it). Only
    /// meaningful when the chord is not a wall of this region set.
    pub fn region_of_segment(&self, chord: usize, slot: usize) -> usize {
        let e = self.arr.chord_edge0[chord] + slot;
        let h = he(e, false);
        let f = self.arr.face_of[h];
        let f = if f != self.arr.outer_face {
            f
        } else {
            self.arr.face_of[h ^ 1]
        };
        self.region_of_face[f]
    }

    /// Whether a crossing's ambient point lies in the given region (only
    /// meaningful when both chords are portals of this region set).
    pub fn region_of_crossing(&self, crossing: usize) -> usize {
        let (c1, _) = self.arr.crossings[crossing].chords;
        self.region_of_chord(c1)
    }

    /// Walk successor along the region boundary, jumping through portals.
    /// An erased edge is skipped in the merged rotation at its tail point;
    /// for a glued interval the rotation continues from the partner side's
    /// outgoing representative of the same surface point.
    fn succ(&self, h: usize) -> usize {
        let mut m = self.arr.next_in_face(h);
        loop {
            if !self.portal[m] {
                return m;
            }
            m = match self.arr.kind(m) {
                EdgeKind::Interval(_) => {
                    let partner = self.arr.interval_partner[m].expect("paired");
                    self.arr.next_in_face(partner ^ 1)
                }
                EdgeKind::Segment(_, _) => self.arr.next_in_face(m ^ 1),
            };
        }
    }

    fn trace_boundaries(&self, n_regions: usize) -> Vec<Vec<BoundaryCycle>> {
        let arr = self.arr;
        let mut out = vec![Vec::new(); n_regions];
        let mut visited = vec![false; 2 * arr.edges.len()];
        for h0 in 0..2 * arr.edges.len() {
            if visited[h0] || self.portal[h0] {
                continue;
            }
            if !matches!(arr.kind(h0), EdgeKind::Segment(_, _)) {
                continue;
            }
            if arr.face_of[h0] == arr.outer_face {
                continue;
            }
            let region = self.region_of_face[arr.face_of[h0]];
            let mut cycle = Vec::new();
            let mut h = h0;
            loop {
                visited[h] = true;
                cycle.push(h);
                h = self.succ(h);
                if h == h0 {
                    break;
                }
            }
            out[region].push(self.split_runs(cycle));
        }
        out
    }

    fn chord_of_he(&self, h: usize) -> usize {
        match self.arr.kind(h) {
            EdgeKind::Segment(c, _) => c,
            _ => unreachable!("walls are segments"),
        }
    }

    /// Split a wall cycle into maximal runs along one host strand; corners
    /// are crossing-vertex turns between different chords.
    fn split_runs(&self, cycle: Vec<usize>) -> BoundaryCycle {
        let arr = self.arr;
        let n = cycle.len();
        let mut corner_after = vec![false; n];
        for i in 0..n {
            let h1 = cycle[i];
            let h2 = cycle[(i + 1) % n];
            let v = arr.he_head(h1);
            let is_crossing = v >= arr.boundary_seq.len();
            corner_after[i] = is_crossing && self.chord_of_he(h1) != self.chord_of_he(h2);
        }
        let corners = corner_after.iter().filter(|&&c| c).count();
        let mut runs = Vec::new();
        if corners == 0 {
            runs.push(self.make_run(&cycle, None, None));
        } else {
            let first_corner = corner_after.iter().position(|&c| c).unwrap();
            let mut i = (first_corner + 1) % n;
            let mut current = Vec::new();
            let mut start_v = Some(arr.he_head(cycle[first_corner]));
            loop {
                current.push(cycle[i]);
                if corner_after[i] {
                    let end_v = Some(arr.he_head(cycle[i]));
                    runs.push(self.make_run(&current, start_v, end_v));
                    current = Vec::new();
                    start_v = end_v;
                }
                if i == first_corner {
                    break;
                }
                i = (i + 1) % n;
            }
        }
        BoundaryCycle { runs, corners }
    }

    fn make_run(
        &self,
        halfedges: &[usize],
        start_vertex: Option<usize>,
        end_vertex: Option<usize>,
    ) -> Run {
        let arr = self.arr;
        let tag = arr.chords[self.chord_of_he(halfedges[0])].tag;
        let mut events = Vec::new();
        let n = halfedges.len();
        let upto = if end_vertex.is_none() { n } else { n - 1 };
        for &h in halfedges.iter().take(upto) {
            let v = arr.he_head(h);
            if v < arr.boundary_seq.len() {
                if let VertexKind::Rep(e, r) = arr.boundary_seq[v] {
                    // The walk crosses from rep r to rep 1-r.
                    let dir = if r == 0 { 1 } else { -1 };
                    events.push((e, dir));
                }
            }
        }
        Run {
            tag,
            halfedges: halfedges.to_vec(),
            events,
            start_vertex,
            end_vertex,
        }
    }

    /// Find a removable bigon between `mover` and a tag accepted by `target`.
    pub fn find_bigon(
        &self,
        mover: Tag,
        target: &dyn Fn(Tag) -> bool,
        avoid_vertex: bool,
    ) -> Option<Bigon> {
        for reg in &self.regions {
            if !reg.is_disk() || reg.boundary[0].corners != 2 {
                continue;
            }
            if avoid_vertex && reg.contains_vertex {
                continue;
            }
            let runs = &reg.boundary[0].runs;
            if runs.len() != 2 {
                continue;
            }
            let (r0, r1) = (&runs[0], &runs[1]);
            let pick = if r0.tag == mover && r1.tag != mover && target(r1.tag) {
                Some((0, 1))
            } else if r1.tag == mover && r0.tag != mover && target(r0.tag) {
                Some((1, 0))
            } else {
                None
            };
            if let Some((m, o)) = pick {
                return Some(Bigon {
                    mover_run: runs[m].clone(),
                    other_run: runs[o].clone(),
                });
            }
        }
        None
    }
}

/// A removable bigon between two curves.
#[derive(Clone, Debug)]
pub struct Bigon {
    pub mover_run: Run,
    pub other_run: Run,
}

/// An owned plan for a bigon move, independent of the arrangement borrow.
#[derive(Clone, Debug)]
pub struct BigonMove {
    mover_tag: Tag,
    dead: Vec<EventId>,
    /// Other-run events in the mover's direction, with walk direction and
    /// parallel-strand direction.
    lay: Vec<(EventId, i8, i8)>,
    prev_end: RepRef,
    next_end: RepRef,
    closed: bool,
}

/// Plan a bigon move: isotope the mover across the bigon so it runs parallel
/// to the other side.
pub fn plan_bigon(arr: &Arrangement, bigon: &Bigon) -> BigonMove {
    let m = &bigon.mover_run;
    let o = &bigon.other_run;

    let chord_at = |run: &Run, first: bool| -> usize {
        let h = if first {
            run.halfedges[0]
        } else {
            *run.halfedges.last().unwrap()
        };
        match arr.kind(h) {
            EdgeKind::Segment(c, _) => c,
            _ => unreachable!(),
        }
    };
    let entry_chord = chord_at(m, true);
    let exit_chord = chord_at(m, false);

    // Does the boundary walk traverse the mover run along its host
    // orientation? (A single segment's forward halfedge runs from exit to
    // entry representative, i.e. along the host direction.)
    let walk_matches_host = if let Some(&(e, wd)) = m.events.first() {
        arr.host_dir(e) == wd
    } else {
        m.halfedges[0] % 2 == 0
    };

    let dead: Vec<EventId> = m.events.iter().map(|&(e, _)| e).collect();

    let (ec, xc) = if walk_matches_host {
        (entry_chord, exit_chord)
    } else {
        (exit_chord, entry_chord)
    };
    let prev_end = arr.chords[ec].ends.0;
    let next_end = arr.chords[xc].ends.1;
    let closed = dead.contains(&prev_end.0);

    // The other run, reordered to the mover's direction; the two runs
    // traverse the cycle in opposite senses as seen from the mover.
    let mut others: Vec<(EventId, i8)> = o.events.clone();
    let mut par_flip = false;
    if walk_matches_host {
        others.reverse();
        par_flip = true;
    }
    let lay = others
        .into_iter()
        .map(|(f, wd)| (f, wd, if par_flip { -wd } else { wd }))
        .collect();

    BigonMove {
        mover_tag: m.tag,
        dead,
        lay,
        prev_end,
        next_end,
        closed,
    }
}

/// Execute a planned bigon move. Returns false when the mover collapses to a
/// trivial loop (it bounded the bigon with no other crossings).
pub fn apply_bigon(dr: &mut Drawing, mv: &BigonMove) -> bool {
    // Parallel events, inserted away from the region (the region is left of
    // the walk direction, so away = right of the walk direction).
    let mut new_events: Vec<(EventId, i8)> = Vec::new();
    for &(f, walk_dir, par_dir) in &mv.lay {
        let ne = dr.insert_adjacent(f, walk_dir, false, mv.mover_tag);
        new_events.push((ne, par_dir));
    }
    for &e in &mv.dead {
        dr.remove_event_public(e);
    }
    let reps: Vec<(RepRef, RepRef)> = new_events
        .iter()
        .map(|&(e, d)| {
            let entry = if d > 0 { (e, 0u8) } else { (e, 1u8) };
            let exit = if d > 0 { (e, 1u8) } else { (e, 0u8) };
            (entry, exit)
        })
        .collect();
    if mv.closed {
        if reps.is_empty() {
            dr.mark_vanished(mv.mover_tag);
            return false;
        }
        for i in 0..reps.len() {
            let a = reps[i].1;
            let b = reps[(i + 1) % reps.len()].0;
            dr.set_chord(a, b);
        }
        return true;
    }
    let mut cur = mv.prev_end;
    for &(entry, exit) in &reps {
        dr.set_chord(cur, entry);
        cur = exit;
    }
    dr.set_chord(cur, mv.next_end);
    true
}

/// A parallel copy of a region boundary cycle, pushed into the region.
#[derive(Clone, Debug)]
pub struct PushOffPlan {
    /// Host events with the walk direction through each.
    pub steps: Vec<(EventId, i8)>,
}

pub fn push_off_plan(cycle: &BoundaryCycle) -> PushOffPlan {
    let mut steps = Vec::new();
    for run in &cycle.runs {
        steps.extend(run.events.iter().copied());
    }
    PushOffPlan { steps }
}

/// Lay the push-off into the drawing under `tag`. Returns false when the
/// cycle crosses no edges (the push-off is a trivial loop inside one cell).
pub fn apply_push_off(dr: &mut Drawing, plan: &PushOffPlan, tag: Tag) -> bool {
    if plan.steps.is_empty() {
        return false;
    }
    let mut new_events = Vec::with_capacity(plan.steps.len());
    for &(host, wd) in &plan.steps {
        // The region is left of the walk; push into the region.
        let ne = dr.insert_adjacent(host, wd, true, tag);
        new_events.push((ne, wd));
    }
    let k = new_events.len();
    for i in 0..k {
        let (e1, d1) = new_events[i];
        let (e2, d2) = new_events[(i + 1) % k];
        let exit = (e1, if d1 > 0 { 1u8 } else { 0u8 });
        let entry = (e2, if d2 > 0 { 0u8 } else { 1u8 });
        dr.set_chord(exit, entry);
    }
    true
}

/// A closed curve inside one region, crossing the skeleton through a chosen
/// sequence of gaps; realized with one straight chord per cell.
#[derive(Clone, Debug)]
pub struct WitnessPlan {
    /// (edge class, insertion index = gap on the primary side, passage dir).
    pub steps: Vec<(usize, usize, i8)>,
}

pub fn apply_witness(dr: &mut Drawing, plan: &WitnessPlan, tag: Tag) -> bool {
    if plan.steps.is_empty() {
        return false;
    }
    // Insert per edge from the highest gap down so earlier insertions do not
    // shift later ones.
    let mut order: Vec<usize> = (0..plan.steps.len()).collect();
    order.sort_by_key(|&i| (plan.steps[i].0, std::cmp::Reverse(plan.steps[i].1)));
    let mut ids = vec![0usize; plan.steps.len()];
    for &i in &order {
        let (edge, gap, _) = plan.steps[i];
        ids[i] = dr.add_event(edge, gap, tag);
    }
    let k = plan.steps.len();
    for i in 0..k {
        let (_, _, d1) = plan.steps[i];
        let (_, _, d2) = plan.steps[(i + 1) % k];
        let exit = (ids[i], if d1 > 0 { 1u8 } else { 0u8 });
        let entry = (ids[(i + 1) % k], if d2 > 0 { 0u8 } else { 1u8 });
        dr.set_chord(exit, entry);
    }
    true
}

impl<'r, 'a> RegionSet<'r, 'a> {
    /// Generators of the region's fundamental group as witness plans: one
    /// closed curve per fundamental cycle of the cell-adjacency graph over
    /// the glued skeleton gaps. Every essential curve the region supports is
    /// a product of conjugates of these, so if the region supports any
    /// essential curve of the ambient surface, one of the plans yields one.
    pub fn witness_plans(&self, region: usize) -> Vec<WitnessPlan> {
        let arr = self.arr;
        // Portals of this region, recorded via their primary-side interval:
        // (edge class, gap, face at the primary side, face at the partner).
        struct Portal {
            edge: usize,
            gap: usize,
            fp: usize,
            fq: usize,
        }
        let mut portals: Vec<Portal> = Vec::new();
        for s in 0..arr.dr.surface().sides() {
            let (edge, rep) = arr.dr.surface().edge_of_side(s);
            if rep != 0 {
                continue;
            }
            let n = arr.dr.edge_order(edge).len();
            for j in 0..=n {
                let ia = arr.side_offsets[s] + j;
                let h = he(ia, false);
                let fp = arr.face_of[h];
                let partner = arr.interval_partner[h].expect("paired");
                let fq = arr.face_of[partner ^ 1];
                if self.region_of_face[fp] == region {
                    portals.push(Portal {
                        edge,
                        gap: j,
                        fp,
                        fq,
                    });
                }
            }
        }
        // Spanning tree by BFS over faces of the region.
        let faces: Vec<usize> = (0..arr.n_faces)
            .filter(|&f| f != arr.outer_face && self.region_of_face[f] == region)
            .collect();
        if faces.is_empty() {
            return Vec::new();
        }
        let mut parent: BTreeMap<usize, Option<(usize, bool)>> = BTreeMap::new();
        parent.insert(faces[0], None);
        let mut queue = std::collections::VecDeque::from([faces[0]]);
        let mut tree_edges: Vec<bool> = vec![false; portals.len()];
        while let Some(f) = queue.pop_front() {
            for (pi, p) in portals.iter().enumerate() {
                if tree_edges[pi] {
                    continue;
                }
                let next = if p.fp == f && !parent.contains_key(&p.fq) {
                    Some((p.fq, true))
                } else if p.fq == f && !parent.contains_key(&p.fp) {
                    Some((p.fp, false))
                } else {
                    None
                };
                if let Some((nf, forward)) = next {
                    tree_edges[pi] = true;
                    parent.insert(nf, Some((pi, forward)));
                    queue.push_back(nf);
                }
            }
        }
        // Chain from a face to the root: visited faces and the steps taken.
        let chain = |start: usize| -> (Vec<usize>, Vec<(usize, bool)>) {
            let mut f = start;
            let mut faces = vec![f];
            let mut steps = Vec::new();
            while let Some(&Some((pi, forward))) = parent.get(&f) {
                steps.push((pi, !forward));
                f = if forward { portals[pi].fp } else { portals[pi].fq };
                faces.push(f);
            }
            (faces, steps)
        };
        let mut plans = Vec::new();
        for (pi, p) in portals.iter().enumerate() {
            if tree_edges[pi] {
                continue;
            }
            // Fundamental cycle through the least common ancestor so that
            // every face is visited once and the realization stays embedded.
            let (fa, sa) = chain(p.fp);
            let (fb, sb) = chain(p.fq);
            let mut m = 0;
            while m < fa.len() && m < fb.len() && fa[fa.len() - 1 - m] == fb[fb.len() - 1 - m]
            {
                m += 1;
            }
            let ka = fa.len() - m; // steps from fp up to the LCA
            let kb = fb.len() - m;
            // Cycle: cross the extra portal fp -> fq, climb fq -> LCA,
            // descend LCA -> fp.
            let mut steps_raw: Vec<(usize, bool)> = vec![(pi, true)];
            steps_raw.extend(sb[..kb].iter().copied());
            for &(q, back) in sa[..ka].iter().rev() {
                steps_raw.push((q, !back));
            }
            let steps = steps_raw
                .into_iter()
                .map(|(q, forward)| {
                    let pt = &portals[q];
                    (pt.edge, pt.gap, if forward { 1i8 } else { -1i8 })
                })
                .collect();
            plans.push(WitnessPlan { steps });
        }
        plans
    }
}

/// Reduce `mover` against every tag accepted by `target` until no bigon
/// remains; returns the number of moves. With `avoid_vertex`, bigons
/// containing the surface vertex stay (isotopy in the punctured surface).
pub fn reduce_against(
    dr: &mut Drawing,
    mover: Tag,
    target: &dyn Fn(Tag) -> bool,
    avoid_vertex: bool,
) -> usize {
    let mut moves = 0;
    loop {
        dr.reduce_slides();
        if dr.vanished().contains(&mover) {
            return moves;
        }
        let plan = {
            let arr = Arrangement::build(dr);
            let regions = arr.regions(&|_| true);
            let Some(bigon) = regions.find_bigon(mover, target, avoid_vertex) else {
                return moves;
            };
            plan_bigon(&arr, &bigon)
        };
        let survived = apply_bigon(dr, &plan);
        moves += 1;
        if !survived {
            return moves;
        }
    }
}

#[cfg(test)]
mod tests {

    use super::*;
    use crate::drawing::Drawing;
    use crate::surface::SurfaceSpec;

    fn s2() -> SurfaceSpec {
        SurfaceSpec::new(2).unwrap()
    }

    fn one_crossing(dr: &mut Drawing, edge: usize, tag: Tag) {
        let e = dr.add_event(edge, dr.edge_order(edge).len(), tag);
        dr.set_chord((e, 0), (e, 1));
    }

    #[test]
    fn empty_surface_census() {
        let dr = Drawing::new(s2());
        let arr = Arrangement::build(&dr);
        let rs = arr.regions(&|_| true);
        assert_eq!(rs.region_count(), 1);
        assert_eq!(rs.regions[0].chi, -2);
        assert_eq!(rs.regions[0].boundary.len(), 0);
        assert_eq!(rs.regions[0].genus(), 2);
        assert!(rs.regions[0].contains_vertex);
    }

    #[test]
    fn nonseparating_curve_complement() {
        let mut dr = Drawing::new(s2());
        one_crossing(&mut dr, 0, 0);
        let arr = Arrangement::build(&dr);
        let rs = arr.regions(&|_| true);
        assert_eq!(rs.region_count(), 1);
        let r = &rs.regions[0];
        assert_eq!(r.boundary.len(), 2, "two boundary circles");
        assert_eq!(r.chi, -2);
        assert_eq!(r.genus(), 1, "genus drops by one");
    }

    #[test]
    fn dual_pair_crosses_once() {
        let mut dr = Drawing::new(s2());
        one_crossing(&mut dr, 0, 0);
        one_crossing(&mut dr, 1, 1);
        let arr = Arrangement::build(&dr);
        assert_eq!(arr.crossing_count(0, 1), 1);
        assert_eq!(arr.signed_crossing_sum(0, 1).abs(), 1);
        let rs = arr.regions(&|_| true);
        // Sum of open-region Euler characteristics: chi(Sigma) minus the
        // crossing vertex plus the doubled segments: -2 - 1 + 2... global
        // bookkeeping: total cells - internal edges + internal vertices over
        // all regions equals chi(Sigma) - (crossing V) + (extra segment E):
        let total: i64 = rs.regions.iter().map(|r| r.chi).sum();
        assert_eq!(total, -2 - 1 + 2);
    }

    #[test]
    fn disjoint_handles_do_not_cross() {
        let mut dr = Drawing::new(s2());
        one_crossing(&mut dr, 0, 0);
        one_crossing(&mut dr, 2, 1);
        let arr = Arrangement::build(&dr);
        assert_eq!(arr.crossing_count(0, 1), 0);
    }
}

