//! Determinant-based exact counting: spanning trees via the reduced
//! Laplacian, rooted forests via all-minors determinants, and per-vertex
//! degree counts via weighted determinants recovered by integer Lagrange
//! interpolation.
//!
//! Weighting every edge at a vertex `x` by `y` makes the weighted tree count
//! a polynomial `P(y) = sum_j f_j(n,x) y^j` of degree at most 4; evaluating
//! it at `y = 1..5` pins the coefficients exactly. The five evaluations
//! share all elimination work outside the rows/columns of `x` and its
//! neighbours: the prefix of the elimination is run once on entries that are
//! affine in `y`, and only the trailing block is finished per `y`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::gasket::{build_graph, Coord, GasketGraph};
use crate::oracle::DegreeProfile;
use crate::ratmat::Rat;
use crate::{Error, Result};

fn oracle_bound(n: u32, max: u32, what: &str) -> Result<()> {
    if n > max {
        return Err(Error::OracleBound {
            reason: format!("{what} is bounded at stage {max}, got {n}"),
        });
    }
    Ok(())
}

/// Number of spanning trees of `SG(n)` as a reduced-Laplacian determinant.
pub fn mtt_count(n: u32) -> Result<BigInt> {
    oracle_bound(n, 6, "matrix-tree counting")?;
    let graph = build_graph(n)?;
    Ok(graph.laplacian(None)?.minor(&[0]).det_fraction_free())
}

/// `(g(n), h(n))` via all-minors determinants.
///
/// `h` is direct: dropping the rows/columns of the three outmost vertices
/// counts 3-forests separating them. For `g`, dropping `{o, b}` counts
/// 2-forests separating `o` from `b` regardless of where `a` lands, and
/// dropping `{o, a}` counts those separating `o` from `a`; by the `o <-> a`
/// reflection the latter is twice the count with `{a, b}` joint, so
/// `g = det(L \ {o,b}) - det(L \ {o,a}) / 2`.
pub fn mtt_forest_counts(n: u32) -> Result<(BigInt, BigInt)> {
    oracle_bound(n, 5, "all-minors forest counting")?;
    let graph = build_graph(n)?;
    let lap = graph.laplacian(None)?;
    let (o, a, b) = graph.corners();
    let h = lap.minor(&[o, a, b]).det_fraction_free();
    let ob = lap.minor(&[o, b]).det_fraction_free();
    let oa = lap.minor(&[o, a]).det_fraction_free();
    let twice_g: BigInt = 2 * ob - oa;
    assert!(twice_g.is_even(), "o<->a symmetry forces an even count");
    Ok((twice_g / 2, h))
}

/// `a + b*y` with exact integer coefficients.
#[derive(Clone)]
struct Affine {
    a: BigInt,
    b: BigInt,
}

impl Affine {
    fn int(a: i64) -> Self {
        Affine { a: a.into(), b: BigInt::zero() }
    }

    /// Product, defined only while one factor is constant in `y`.
    fn mul(&self, other: &Affine) -> Affine {
        if other.b.is_zero() {
            Affine { a: &self.a * &other.a, b: &self.b * &other.a }
        } else {
            assert!(self.b.is_zero(), "affine elimination would leave the affine class");
            Affine { a: &self.a * &other.a, b: &self.a * &other.b }
        }
    }

    fn sub(&self, other: &Affine) -> Affine {
        Affine { a: &self.a - &other.a, b: &self.b - &other.b }
    }

    /// Exact division by a constant pivot.
    fn div_exact(&self, d: &BigInt) -> Affine {
        Affine { a: &self.a / d, b: &self.b / d }
    }

    fn eval(&self, y: i64) -> BigInt {
        &self.a + &self.b * y
    }
}

/// Weighted-determinant evaluations `P(y)` for `y = 1..=5` with the
/// elimination prefix shared across `y`.
fn weighted_determinants(graph: &GasketGraph, x: usize) -> [BigInt; 5] {
    let nv = graph.vertex_count();
    // order: plain vertices, then the neighbours of x, then x; drop one
    // plain vertex to reduce the Laplacian.
    let mut tail: Vec<usize> = graph.neighbors(x).to_vec();
    tail.push(x);
    let mut order: Vec<usize> =
        (0..nv).filter(|v| *v != x && !graph.neighbors(x).contains(v)).collect();
    if order.is_empty() {
        // stage 0: everything is adjacent to x, no shared prefix to exploit
        return std::array::from_fn(|yi| {
            let lap = graph.laplacian(Some((graph.vertices()[x], yi as u64 + 1))).unwrap();
            lap.minor(&[usize::from(x == 0)]).det_fraction_free()
        });
    }
    let dropped = order.remove(0);
    debug_assert!(!tail.contains(&dropped));
    order.extend(&tail);
    let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = order.len(); // nv - 1
    let t = tail.len();
    let split = k - t;

    let mut m: Vec<Affine> = vec![Affine::int(0); k * k];
    let idx = |i: usize, j: usize| i * k + j;
    for &(u, v) in graph.edges() {
        let (wa, wb): (i64, i64) = if u == x || v == x { (0, 1) } else { (1, 0) };
        if u != dropped && v != dropped {
            let (pu, pv) = (pos[&u], pos[&v]);
            for cell in [idx(pu, pv), idx(pv, pu)] {
                m[cell].a -= wa;
                m[cell].b -= wb;
            }
        }
        for d in [u, v] {
            if d != dropped {
                let pi = pos[&d];
                m[idx(pi, pi)].a += wa;
                m[idx(pi, pi)].b += wb;
            }
        }
    }

    // fraction-free elimination of the leading block; pivots stay constant
    // in y and positive (reduced Laplacians are positive definite).
    let mut prev = BigInt::one();
    for col in 0..split {
        let pivot = m[idx(col, col)].clone();
        assert!(pivot.b.is_zero() && pivot.a.is_positive(), "prefix pivot must be a positive constant");
        for i in col + 1..k {
            let head = m[idx(i, col)].clone();
            for j in col + 1..k {
                let v = m[idx(i, j)]
                    .mul(&pivot)
                    .sub(&head.mul(&m[idx(col, j)]))
                    .div_exact(&prev);
                m[idx(i, j)] = v;
            }
            m[idx(i, col)] = Affine::int(0);
        }
        prev = pivot.a;
    }

    // finish per weight on the trailing t x t block
    std::array::from_fn(|yi| {
        let y = yi as i64 + 1;
        let mut block: Vec<BigInt> = Vec::with_capacity(t * t);
        for i in split..k {
            for j in split..k {
                block.push(m[idx(i, j)].eval(y));
            }
        }
        let mut p = prev.clone();
        for col in 0..t - 1 {
            let pivot = block[col * t + col].clone();
            assert!(!pivot.is_zero());
            for i in col + 1..t {
                let head = block[i * t + col].clone();
                for j in col + 1..t {
                    block[i * t + j] =
                        (&block[i * t + j] * &pivot - &head * &block[col * t + j]) / &p;
                }
                block[i * t + col] = BigInt::zero();
            }
            p = pivot;
        }
        block[t * t - 1].clone()
    })
}

/// Exact `f_j(n, x)` for one vertex by interpolation of the weighted tree
/// count; the recovered coefficients must be non-negative integers with a
/// vanishing constant term.
pub fn mtt_degree_profile(n: u32, x: Coord) -> Result<DegreeProfile> {
    oracle_bound(n, 5, "degree interpolation")?;
    let graph = build_graph(n)?;
    let xi = graph.index_of(x)?;
    let values = weighted_determinants(&graph, xi);
    Ok(interpolate_profile(x, &values))
}

fn interpolate_profile(x: Coord, values: &[BigInt; 5]) -> DegreeProfile {
    let ys: [i64; 5] = [1, 2, 3, 4, 5];
    // Lagrange over exact rationals
    let mut coeffs = vec![Rat::zero(); 5];
    for (i, val) in values.iter().enumerate() {
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, &yj) in ys.iter().enumerate() {
            if j == i {
                continue;
            }
            // basis *= (t - yj)
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * Rat::from_integer(yj.into());
            }
            basis = next;
            denom *= Rat::from_integer((ys[i] - yj).into());
        }
        let scale = Rat::from_integer(val.clone()) / denom;
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    assert!(coeffs[0].is_zero(), "weighted count has no constant term");
    let counts: [BigInt; 4] = std::array::from_fn(|j| {
        let c = &coeffs[j + 1];
        assert!(c.is_integer() && !c.is_negative(), "degree counts are non-negative integers");
        c.to_integer()
    });
    DegreeProfile::new(x, counts)
}

/// Degree profiles of every vertex of `SG(n)`; the per-vertex determinant
/// work is independent, so the sweep parallelises over vertices.
pub fn mtt_full_profiles(n: u32) -> Result<BTreeMap<Coord, DegreeProfile>> {
    oracle_bound(n, 4, "full-table degree interpolation")?;
    let graph = build_graph(n)?;
    let profiles: Vec<DegreeProfile> = (0..graph.vertex_count())
        .into_par_iter()
        .map(|v| {
            let values = weighted_determinants(&graph, v);
            interpolate_profile(graph.vertices()[v], &values)
        })
        .collect();
    Ok(profiles.into_iter().map(|p| (p.vertex, p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn tree_counts_match_the_recursion() {
        assert_eq!(mtt_count(1).unwrap(), BigInt::from(54));
        assert_eq!(mtt_count(2).unwrap(), BigInt::from(524_880));
        let f3 = BigInt::from(2).pow(13u32) * BigInt::from(3).pow(22u32) * BigInt::from(5).pow(5u32);
        assert_eq!(mtt_count(3).unwrap(), f3);
    }

    #[test]
    fn forest_counts_match_the_recursion() {
        assert_eq!(mtt_forest_counts(0).unwrap(), (1.into(), 1.into()));
        assert_eq!(mtt_forest_counts(1).unwrap(), (30.into(), 50.into()));
        assert_eq!(mtt_forest_counts(2).unwrap(), (486_000.into(), 1_350_000.into()));
    }

    #[test]
    fn degree_profile_at_origin() {
        let p = mtt_degree_profile(1, Coord::new(0, 0)).unwrap();
        assert_eq!(p.counts, [42.into(), 12.into(), 0.into(), 0.into()]);
        assert_eq!(p.total, BigInt::from(54));
    }

    #[test]
    fn profile_totals_are_the_tree_count() {
        let f2 = mtt_count(2).unwrap();
        for (_, p) in mtt_full_profiles(2).unwrap() {
            assert_eq!(p.total, f2);
        }
    }

    #[test]
    fn shared_prefix_matches_plain_determinants() {
        let graph = build_graph(1).unwrap();
        for x in 0..graph.vertex_count() {
            let values = weighted_determinants(&graph, x);
            for (yi, got) in values.iter().enumerate() {
                let y = yi as u64 + 1;
                let lap = graph.laplacian(Some((graph.vertices()[x], y))).unwrap();
                let drop = usize::from(x == 0);
                let expect = lap.minor(&[drop]).det_fraction_free();
                assert_eq!(*got, expect, "x={x} y={y}");
            }
        }
    }

    #[test]
    fn rejects_out_of_bound_stage() {
        assert!(mtt_count(7).is_err());
        assert!(mtt_degree_profile(6, Coord::new(0, 0)).is_err());
        assert!(mtt_degree_profile(1, Coord::new(9, 9)).is_err());
    }
}
