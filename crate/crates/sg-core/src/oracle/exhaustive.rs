//! Brute-force enumeration of spanning trees and rooted spanning forests by
//! edge-subset search with an undoable union-find and early cycle pruning.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::gasket::{build_graph, Coord};
use crate::oracle::DegreeProfile;
use crate::{Error, Result};

/// Union-find with union by rank and an undo trail (no path compression, so
/// parents can be restored exactly).
struct UndoDsu {
    parent: Vec<u32>,
    rank: Vec<u8>,
    trail: Vec<(u32, bool)>,
}

impl UndoDsu {
    fn new(n: usize) -> Self {
        UndoDsu {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            trail: Vec::with_capacity(n),
        }
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Join the components of `a` and `b`; false (and no trail entry) when
    /// they already touch, i.e. the edge would close a cycle.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (child, parent) = if self.rank[ra as usize] < self.rank[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        let bumped = self.rank[child as usize] == self.rank[parent as usize];
        if bumped {
            self.rank[parent as usize] += 1;
        }
        self.parent[child as usize] = parent;
        self.trail.push((child, bumped));
        true
    }

    fn undo(&mut self) {
        let (child, bumped) = self.trail.pop().expect("undo without union");
        let parent = self.parent[child as usize];
        if bumped {
            self.rank[parent as usize] -= 1;
        }
        self.parent[child as usize] = child;
    }
}

/// Per-worker accumulator: ensemble size plus a degree histogram per vertex
/// (degree 0..=4; forests can leave prescribed roots isolated).
#[derive(Clone)]
struct Tally {
    subgraphs: u64,
    hist: Vec<[u64; 5]>,
}

impl Tally {
    fn new(v: usize) -> Self {
        Tally { subgraphs: 0, hist: vec![[0; 5]; v] }
    }

    fn absorb(&mut self, other: &Tally) {
        self.subgraphs += other.subgraphs;
        for (a, b) in self.hist.iter_mut().zip(&other.hist) {
            for j in 0..5 {
                a[j] += b[j];
            }
        }
    }
}

/// Which forests count, decided at each complete subset.
#[derive(Clone, Copy)]
enum Ensemble {
    /// All spanning trees (`v-1` acyclic edges).
    Trees,
    /// 2-forests with `b` alone and `{o, a}` joint.
    TwoForest { o: u32, a: u32, b: u32 },
    /// 3-forests separating `o`, `a`, `b` pairwise.
    ThreeForest { o: u32, a: u32, b: u32 },
}

impl Ensemble {
    fn admits(&self, dsu: &UndoDsu) -> bool {
        match *self {
            Ensemble::Trees => true,
            Ensemble::TwoForest { o, a, b } => {
                dsu.find(o) == dsu.find(a) && dsu.find(b) != dsu.find(o)
            }
            Ensemble::ThreeForest { o, a, b } => {
                let (ro, ra, rb) = (dsu.find(o), dsu.find(a), dsu.find(b));
                ro != ra && ro != rb && ra != rb
            }
        }
    }
}

fn search(
    edges: &[(u32, u32)],
    idx: usize,
    remaining: usize,
    dsu: &mut UndoDsu,
    degrees: &mut [u8],
    ensemble: Ensemble,
    tally: &mut Tally,
) {
    if remaining == 0 {
        if ensemble.admits(dsu) {
            tally.subgraphs += 1;
            for (v, &d) in degrees.iter().enumerate() {
                tally.hist[v][d as usize] += 1;
            }
        }
        return;
    }
    if edges.len() - idx < remaining {
        return;
    }
    let (u, v) = edges[idx];
    if dsu.union(u, v) {
        degrees[u as usize] += 1;
        degrees[v as usize] += 1;
        search(edges, idx + 1, remaining - 1, dsu, degrees, ensemble, tally);
        degrees[u as usize] -= 1;
        degrees[v as usize] -= 1;
        dsu.undo();
    }
    search(edges, idx + 1, remaining, dsu, degrees, ensemble, tally);
}

/// Enumerate one ensemble, partitioned over the smallest chosen edge index;
/// partial tallies merge in index order, so the result is independent of the
/// worker count.
fn enumerate(edges: &[(u32, u32)], nv: usize, size: usize, ensemble: Ensemble) -> Tally {
    if size == 0 {
        // only the empty subgraph; SG(0)'s 3-forest ensemble lands here
        let mut dsu = UndoDsu::new(nv);
        let mut degrees = vec![0u8; nv];
        let mut tally = Tally::new(nv);
        search(edges, 0, 0, &mut dsu, &mut degrees, ensemble, &mut tally);
        return tally;
    }
    let parts: Vec<Tally> = (0..=edges.len() - size)
        .into_par_iter()
        .map(|first| {
            let mut dsu = UndoDsu::new(nv);
            let mut degrees = vec![0u8; nv];
            let mut tally = Tally::new(nv);
            let (u, v) = edges[first];
            assert!(dsu.union(u, v));
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
            search(edges, first + 1, size - 1, &mut dsu, &mut degrees, ensemble, &mut tally);
            tally
        })
        .collect();
    let mut total = Tally::new(nv);
    for p in &parts {
        total.absorb(p);
    }
    total
}

/// Full exhaustive census of `SG(n)`, `n <= 2`.
#[derive(Clone, Debug)]
pub struct ExhaustiveResult {
    pub f: BigInt,
    pub g: BigInt,
    pub h: BigInt,
    /// Spanning-tree degree profile per vertex.
    pub profiles: BTreeMap<Coord, DegreeProfile>,
    /// Degree histograms (index 0..=4) over the 2-forest ensemble.
    pub g_histograms: BTreeMap<Coord, [u64; 5]>,
    /// Degree histograms over the 3-forest ensemble.
    pub h_histograms: BTreeMap<Coord, [u64; 5]>,
}

/// Enumerate every spanning tree, admissible 2-forest and admissible
/// 3-forest of `SG(n)` by subset search over the edge list.
pub fn exhaustive_profiles(n: u32) -> Result<ExhaustiveResult> {
    if n > 2 {
        return Err(Error::OracleBound {
            reason: format!("exhaustive enumeration is bounded at stage 2, got {n}"),
        });
    }
    let graph = build_graph(n)?;
    let nv = graph.vertex_count();
    let edges: Vec<(u32, u32)> =
        graph.edges().iter().map(|&(a, b)| (a as u32, b as u32)).collect();
    let (o, a, b) = graph.corners();
    let (o, a, b) = (o as u32, a as u32, b as u32);

    let trees = enumerate(&edges, nv, nv - 1, Ensemble::Trees);
    let two = enumerate(&edges, nv, nv - 2, Ensemble::TwoForest { o, a, b });
    let three = enumerate(&edges, nv, nv - 3, Ensemble::ThreeForest { o, a, b });

    let coord = |v: usize| graph.vertices()[v];
    let profiles = trees
        .hist
        .iter()
        .enumerate()
        .map(|(v, h)| {
            debug_assert_eq!(h[0], 0, "spanning trees have no isolated vertex");
            let counts = [h[1].into(), h[2].into(), h[3].into(), h[4].into()];
            (coord(v), DegreeProfile::new(coord(v), counts))
        })
        .collect();
    let histmap = |t: &Tally| {
        t.hist.iter().enumerate().map(|(v, h)| (coord(v), *h)).collect::<BTreeMap<_, _>>()
    };
    Ok(ExhaustiveResult {
        f: trees.subgraphs.into(),
        g: two.subgraphs.into(),
        h: three.subgraphs.into(),
        profiles,
        g_histograms: histmap(&two),
        h_histograms: histmap(&three),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gasket::Coord;

    #[test]
    fn triangle_census() {
        let r = exhaustive_profiles(0).unwrap();
        assert_eq!((r.f.clone(), r.g.clone(), r.h.clone()), (3.into(), 1.into(), 1.into()));
        let o = &r.profiles[&Coord::new(0, 0)];
        assert_eq!(o.counts, [2.into(), 1.into(), 0.into(), 0.into()]);
        assert_eq!(o.total, 3.into());
    }

    #[test]
    fn first_stage_counts_and_profiles() {
        let r = exhaustive_profiles(1).unwrap();
        assert_eq!(r.f, 54.into());
        assert_eq!(r.g, 30.into());
        assert_eq!(r.h, 50.into());
        let o = &r.profiles[&Coord::new(0, 0)];
        assert_eq!(o.counts, [42.into(), 12.into(), 0.into(), 0.into()]);
        // ensemble histograms feed the boundary-matrix cross-checks
        let a0 = Coord::new(1, 0);
        let b0 = Coord::new(0, 1);
        assert_eq!(r.g_histograms[&a0][1], 4); // G_1(1,a_0) = 4/30 = 2/15
        assert_eq!(r.g_histograms[&b0][1], 16); // G_1(1,b_0) = 16/30 = 8/15
        assert_eq!(r.h_histograms[&a0][1], 32); // H_1(1,a_0) = 32/50 = 16/25
    }

    #[test]
    fn bound() {
        assert!(exhaustive_profiles(3).is_err());
    }

    #[test]
    fn tree_degree_sums_match_handshake() {
        let r = exhaustive_profiles(1).unwrap();
        // sum over vertices of sum_j j*f_j = f * 2(v-1)
        let mut acc = BigInt::from(0);
        for p in r.profiles.values() {
            for (j, c) in p.counts.iter().enumerate() {
                acc += c * (j as i64 + 1);
            }
        }
        assert_eq!(acc, BigInt::from(54 * 2 * 5));
    }
}
