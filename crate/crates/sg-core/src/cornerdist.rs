//! Degree probabilities at the outmost vertex `o`, the auxiliary boundary
//! quantities at `b_n`, the stage-boundary matrices `B_j(m, m-1)`, and the
//! corner-vertex distributions `F_j(n+m+1, x_n)`.
//!
//! Closed forms are carried as [`GeomPoly`]s and are asserted against the
//! defining matrix recursions on every call, so a drift in either
//! representation cannot go unnoticed.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::gasket::Letter;
use crate::ratmat::{rat, GeomPoly, Rat, RatMatrix};
use crate::vertexdist::transfer_matrices;
use crate::Result;

/// Degree probabilities at `o`: only j = 1, 2 occur (deg(o) = 2).
#[derive(Clone, Debug)]
pub struct CornerProbs {
    pub f: [GeomPoly; 2],
    pub g: [GeomPoly; 2],
}

/// The six boundary quantities of the auxiliary forest ensembles.
#[derive(Clone, Debug)]
pub struct LemmaProbs {
    pub g0_b: GeomPoly,
    pub h0_o: GeomPoly,
    pub g1_b: GeomPoly,
    pub g2_b: GeomPoly,
    pub h1_o: GeomPoly,
    pub h2_o: GeomPoly,
}

/// Closed forms for `F_j(n,o)` and `G_j(n,o)`.
pub fn corner_poly() -> &'static CornerProbs {
    static CELL: OnceLock<CornerProbs> = OnceLock::new();
    CELL.get_or_init(|| CornerProbs {
        f: [
            GeomPoly::from_terms(&[(11, 14, 1, 1), (-5, 42, 1, 15)]),
            GeomPoly::from_terms(&[(3, 14, 1, 1), (5, 42, 1, 15)]),
        ],
        g: [
            GeomPoly::from_terms(&[(11, 14, 1, 1), (3, 14, 1, 15)]),
            GeomPoly::from_terms(&[(3, 14, 1, 1), (-3, 14, 1, 15)]),
        ],
    })
}

/// Closed forms for the boundary ensemble probabilities.
pub fn lemma_poly() -> &'static LemmaProbs {
    static CELL: OnceLock<LemmaProbs> = OnceLock::new();
    CELL.get_or_init(|| LemmaProbs {
        g0_b: GeomPoly::from_terms(&[(33, 28, 3, 5), (-5, 28, 1, 25)]),
        h0_o: GeomPoly::from_terms(&[(11, 14, 3, 5), (3, 14, 1, 25)]),
        g1_b: GeomPoly::from_terms(&[(11, 14, 1, 1), (-2, 7, 1, 15), (-6, 7, 3, 5), (5, 14, 1, 25)]),
        g2_b: GeomPoly::from_terms(&[(3, 14, 1, 1), (2, 7, 1, 15), (-9, 28, 3, 5), (-5, 28, 1, 25)]),
        h1_o: GeomPoly::from_terms(&[(11, 14, 1, 1), (3, 14, 1, 15), (-4, 7, 3, 5), (-3, 7, 1, 25)]),
        h2_o: GeomPoly::from_terms(&[(3, 14, 1, 1), (-3, 14, 1, 15), (-3, 14, 3, 5), (3, 14, 1, 25)]),
    })
}

/// `(F_j(n,o), G_j(n,o))` for j in {1,2}: closed form, cross-checked against
/// the 2x2 matrix recursion `V_j(n) = A^n V_j(0)`.
pub fn corner_probs_o(n: u32, j: usize) -> (Rat, Rat) {
    assert!((1..=2).contains(&j), "o has degree 2; j must be 1 or 2");
    let cp = corner_poly();
    let f = cp.f[j - 1].eval(n);
    let g = cp.g[j - 1].eval(n);
    let a = RatMatrix::from_frac(&[&[(2, 3), (1, 3)], &[(3, 5), (2, 5)]]);
    let v0 = if j == 1 {
        RatMatrix::from_frac(&[&[(2, 3)], &[(1, 1)]])
    } else {
        RatMatrix::from_frac(&[&[(1, 3)], &[(0, 1)]])
    };
    let v = a.pow(n).unwrap().mul(&v0).unwrap();
    assert_eq!((v.at(0, 0), v.at(1, 0)), (&f, &g), "closed form vs recursion at n={n}");
    (f, g)
}

/// All six boundary quantities at stage `n`, recursion-checked.
pub fn lemma_probs(n: u32) -> LemmaValues {
    let lp = lemma_poly();
    let vals = LemmaValues {
        g0_b: lp.g0_b.eval(n),
        h0_o: lp.h0_o.eval(n),
        g_b: [lp.g1_b.eval(n), lp.g2_b.eval(n)],
        h_o: [lp.h1_o.eval(n), lp.h2_o.eval(n)],
    };
    // recursion from the stage-0 ensemble values
    let mut g0 = Rat::one();
    let mut h0 = Rat::one();
    let mut gb = [Rat::zero(), Rat::zero()];
    let mut ho = [Rat::zero(), Rat::zero()];
    for k in 0..n {
        let (f1, g1) = corner_probs_o(k, 1);
        let (f2, g2) = corner_probs_o(k, 2);
        let fo = [f1, f2];
        let go = [g1, g2];
        let mut ngb = [Rat::zero(), Rat::zero()];
        let mut nho = [Rat::zero(), Rat::zero()];
        for j in 0..2 {
            ngb[j] = rat(2, 5) * &gb[j]
                + rat(3, 10) * &ho[j]
                + rat(1, 10) * &fo[j]
                + rat(1, 5) * &go[j];
            nho[j] = rat(6, 25) * (&gb[j] + &ho[j] + &fo[j]) + rat(7, 25) * &go[j];
        }
        let ng0 = rat(2, 5) * &g0 + rat(3, 10) * &h0;
        let nh0 = rat(6, 25) * (&g0 + &h0);
        g0 = ng0;
        h0 = nh0;
        gb = ngb;
        ho = nho;
    }
    assert_eq!(g0, vals.g0_b, "G0 closed form vs recursion at n={n}");
    assert_eq!(h0, vals.h0_o);
    assert_eq!(gb[0], vals.g_b[0]);
    assert_eq!(gb[1], vals.g_b[1]);
    assert_eq!(ho[0], vals.h_o[0]);
    assert_eq!(ho[1], vals.h_o[1]);
    vals
}

/// [`lemma_probs`] evaluated at a stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaValues {
    pub g0_b: Rat,
    pub h0_o: Rat,
    pub g_b: [Rat; 2],
    pub h_o: [Rat; 2],
}

/// The four stage-boundary entry families of `B_j(n+1, n)` as polynomials in
/// `n`: `F_j(n+1,a_n)`, `G_j(n+1,a_n)`, `G_j(n+1,b_n)`, `H_j(n+1,a_n)`.
#[derive(Clone, Debug)]
pub struct BoundaryPolys {
    pub f: GeomPoly,
    pub g_a: GeomPoly,
    pub g_b: GeomPoly,
    pub h: GeomPoly,
}

/// Stage-boundary entries for degree `j`, built once by expanding the
/// initialization products of the closed forms above.
pub fn boundary_polys(j: usize) -> &'static BoundaryPolys {
    static CELL: OnceLock<[BoundaryPolys; 4]> = OnceLock::new();
    &CELL.get_or_init(build_boundary_polys)[j - 1]
}

fn build_boundary_polys() -> [BoundaryPolys; 4] {
    let cp = corner_poly();
    let lp = lemma_poly();
    let f1 = &cp.f[0];
    let f2 = &cp.f[1];
    let g1 = &cp.g[0];
    let g2 = &cp.g[1];
    let g0b = &lp.g0_b;
    let g1b = &lp.g1_b;
    let g2b = &lp.g2_b;
    let h0 = &lp.h0_o;
    let h1 = &lp.h1_o;
    let h2 = &lp.h2_o;
    let s = |p: &GeomPoly, n: i64, d: i64| p.scale(&rat(n, d));

    let f = [
        s(&f1.mul(g0b), 1, 3),
        s(&f2.mul(g0b).add(&f1.mul(f1)).add(&f1.mul(&g1.add(g1b))), 1, 3),
        s(
            &f2.mul(&g1.add(g1b))
                .add(&s(&f1.mul(f2), 2, 1))
                .add(&f1.mul(&g2.add(g2b))),
            1,
            3,
        ),
        s(&f2.mul(&g2.add(g2b)).add(&f2.mul(f2)), 1, 3),
    ];
    let g_a = [
        s(&f1.mul(g0b), 1, 5),
        s(&f1.mul(f1), 3, 10)
            .add(&s(&f1.mul(&s(g1, 2, 1).add(g1b)), 1, 5))
            .add(&s(&f2.mul(g0b), 1, 5))
            .add(&s(&g1.mul(g1), 1, 10)),
        s(&f2.mul(f1), 3, 5)
            .add(&s(&f2.mul(&s(g1, 2, 1).add(g1b)), 1, 5))
            .add(&s(&g2.mul(g1), 1, 5))
            .add(&s(&f1.mul(&s(g2, 2, 1).add(g2b)), 1, 5)),
        s(&f2.mul(f2), 3, 10)
            .add(&s(&f2.mul(&s(g2, 2, 1).add(g2b)), 1, 5))
            .add(&s(&g2.mul(g2), 1, 10)),
    ];
    let g_b = [
        s(&f1.mul(h0), 3, 10).add(&s(&f1.add(g1).mul(g0b), 1, 5)),
        s(&f2.mul(h0).add(&f1.mul(h1)), 3, 10)
            .add(&s(&g1.mul(g1), 1, 10))
            .add(&s(&f1.mul(&g1.add(g1b)), 1, 5))
            .add(&s(&f2.mul(g0b), 1, 5))
            .add(&s(&g0b.mul(g2).add(&g1.mul(g1b)), 1, 5)),
        s(&f2.mul(h1).add(&f1.mul(h2)), 3, 10)
            .add(&s(&g1b.add(g1).mul(g2).add(&g1.mul(g2b)), 1, 5))
            .add(&s(&f1.mul(&g2.add(g2b)), 1, 5))
            .add(&s(&f2.mul(&g1.add(g1b)), 1, 5)),
        s(&f2.mul(h2), 3, 10)
            .add(&s(&f2.mul(&g2.add(g2b)).add(&g2.mul(g2b)), 1, 5))
            .add(&s(&g2.mul(g2), 1, 10)),
    ];
    let h = [
        s(&f1.mul(&s(h0, 2, 1).add(g0b)), 3, 25)
            .add(&s(&g1.mul(h0), 6, 25))
            .add(&s(&g1.mul(g0b), 4, 25)),
        s(&f2.mul(h0).add(&f1.mul(h1)), 6, 25)
            .add(&s(&f1.mul(&g1.add(g1b)), 3, 25))
            .add(&s(&f2.mul(g0b), 3, 25))
            .add(&s(&g2.mul(g0b).add(&g1.mul(g1b)), 4, 25))
            .add(&s(&g1.mul(g1), 3, 25))
            .add(&s(&h0.mul(g2).add(&h1.mul(g1)), 6, 25)),
        s(&f2.mul(h1).add(&f1.mul(h2)), 6, 25)
            .add(&s(&f2.mul(&g1.add(g1b)), 3, 25))
            .add(&s(&f1.mul(&g2.add(g2b)), 3, 25))
            .add(&s(&g2.mul(h1).add(&g1.mul(h2)), 6, 25))
            .add(&s(&s(g1b, 4, 1).add(&s(g1, 6, 1)).mul(g2), 1, 25))
            .add(&s(&g1.mul(g2b), 4, 25)),
        s(&f2.mul(h2), 6, 25)
            .add(&s(&f2.mul(&g2.add(g2b)), 3, 25))
            .add(&s(&g2.mul(h2), 6, 25))
            .add(&s(&g2.mul(g2b), 4, 25))
            .add(&s(&g2.mul(g2), 3, 25)),
    ];
    let mut it = f.into_iter().zip(g_a).zip(g_b).zip(h);
    std::array::from_fn(|_| {
        let (((f, g_a), g_b), h) = it.next().unwrap();
        BoundaryPolys { f, g_a, g_b, h }
    })
}

/// The 3x5 boundary matrix `B_j(stage, stage-1)`; rows `a`, `b`, `c` and
/// columns `(F, G, G-tilde, G-hat, H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BMatrix {
    pub stage: u32,
    pub tag: Vec<u32>,
    rows: [[Rat; 5]; 3],
}

impl BMatrix {
    pub fn row(&self, letter: Letter) -> &[Rat; 5] {
        &self.rows[letter.index()]
    }

    pub fn to_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.rows.iter().map(|r| r.to_vec()).collect())
    }

    /// The `(F, G, G-tilde)` restriction driving corner propagation.
    pub fn to_matrix_3(&self) -> RatMatrix {
        RatMatrix::from_rows(self.rows.iter().map(|r| r[..3].to_vec()).collect())
    }
}

/// `B_j(m, m-1)` for `m >= 1`.
///
/// Row `a` comes from the initialization products; rows `b` and `c` follow
/// from the boundary symmetries (`F` and `H` letter-independent,
/// `G(c) = G(b)`), the tilde column from the corner reflections
/// `(a,b,c) -> (b,a,c)` and the hat column from `(a,b,c) -> (c,b,a)`.
pub fn b_init(m: u32, j: usize) -> BMatrix {
    assert!(m >= 1, "boundary matrices start at stage 1");
    assert!((1..=4).contains(&j));
    let bp = boundary_polys(j);
    let n = m - 1;
    let f = bp.f.eval(n);
    let ga = bp.g_a.eval(n);
    let gb = bp.g_b.eval(n);
    let h = bp.h.eval(n);
    let rows = [
        [f.clone(), ga.clone(), gb.clone(), gb.clone(), h.clone()],
        [f.clone(), gb.clone(), ga.clone(), gb.clone(), h.clone()],
        [f, gb.clone(), gb, ga, h],
    ];
    debug_assert!(rows.iter().flatten().all(|v| *v >= Rat::zero() && *v <= Rat::one()));
    BMatrix { stage: m, tag: vec![m - 1], rows }
}

/// `F_j(n+m+1, x_n)` for the three letters `(a, b, c)`, by exact propagation
/// of the `(F, G, G-tilde)` block through `L'^m`; the closed-form tables
/// below are asserted for letters `a` and `c` (`b` equals `a` by reflection).
pub fn corner_dist(n: u32, m: u32, j: usize) -> Result<[Rat; 3]> {
    let base = b_init(n + 1, j).to_matrix_3();
    let lp = &transfer_matrices().lp;
    let col = base.mul(&lp.pow(m)?)?;
    let vals = [col.at(0, 0).clone(), col.at(1, 0).clone(), col.at(2, 0).clone()];
    assert_eq!(vals[0], vals[1], "a/b reflection symmetry");
    let (pa, qa) = theorem2_closed(j, Letter::A);
    let (pc, qc) = theorem2_closed(j, Letter::C);
    let t_m = rat(1, 15).pow(m as i32);
    assert_eq!(vals[0], pa.eval(n) + &t_m * qa.eval(n), "closed form (a) at n={n}, m={m}");
    assert_eq!(vals[2], pc.eval(n) + &t_m * qc.eval(n), "closed form (c) at n={n}, m={m}");
    Ok(vals)
}

/// Limits of `F_j(n+m+1, x_n)` as both indices grow.
pub fn corner_limits() -> [Rat; 4] {
    [Rat::zero(), rat(121, 196), rat(33, 98), rat(9, 196)]
}

/// Closed form of `F_j(n+m+1, x_n)` as `P(n) + (1/15)^m * Q(n)`.
///
/// Coefficient tables for letters `a` and `c`; bases are powers in `n`.
pub fn theorem2_closed(j: usize, letter: Letter) -> (&'static GeomPoly, &'static GeomPoly) {
    type Terms = &'static [(i64, i64, i64, i64)];
    static CELL: OnceLock<Vec<(GeomPoly, GeomPoly)>> = OnceLock::new();
    let tables = CELL.get_or_init(|| {
        // (j, letter) -> (P terms, Q terms); bases 1, 3/5, 1/25, 1/375, 1/15, 1/225
        let specs: [(Terms, Terms); 8] = [
            // letter a, j = 1..4
            (
                &[(1815, 5488, 3, 5), (-99, 1372, 1, 25), (55, 16464, 1, 375)],
                &[(-121, 5488, 3, 5), (-22, 1029, 1, 25), (185, 49392, 1, 375)],
            ),
            (
                &[
                    (121, 196, 1, 1),
                    (-825, 5488, 3, 5),
                    (171, 1372, 1, 25),
                    (-55, 5488, 1, 375),
                    (-121, 1176, 1, 15),
                    (1, 294, 1, 225),
                ],
                &[
                    (55, 5488, 3, 5),
                    (38, 1029, 1, 25),
                    (-185, 16464, 1, 375),
                    (-143, 3528, 1, 15),
                    (11, 2646, 1, 225),
                ],
            ),
            (
                &[
                    (33, 98, 1, 1),
                    (-855, 5488, 3, 5),
                    (-45, 1372, 1, 25),
                    (55, 5488, 1, 375),
                    (11, 147, 1, 15),
                    (-1, 147, 1, 225),
                ],
                &[
                    (57, 5488, 3, 5),
                    (-10, 1029, 1, 25),
                    (185, 16464, 1, 375),
                    (13, 441, 1, 15),
                    (-11, 1323, 1, 225),
                ],
            ),
            (
                &[
                    (9, 196, 1, 1),
                    (-135, 5488, 3, 5),
                    (-27, 1372, 1, 25),
                    (-55, 16464, 1, 375),
                    (11, 392, 1, 15),
                    (1, 294, 1, 225),
                ],
                &[
                    (9, 5488, 3, 5),
                    (-2, 343, 1, 25),
                    (-185, 49392, 1, 375),
                    (13, 1176, 1, 15),
                    (11, 2646, 1, 225),
                ],
            ),
            // letter c, j = 1..4
            (
                &[(1089, 2744, 3, 5), (-22, 343, 1, 25), (5, 8232, 1, 375)],
                &[(-121, 1372, 3, 5), (-121, 4116, 1, 25), (20, 3087, 1, 375)],
            ),
            (
                &[
                    (121, 196, 1, 1),
                    (-495, 2744, 3, 5),
                    (38, 343, 1, 25),
                    (-5, 2744, 1, 375),
                    (-55, 588, 1, 15),
                ],
                &[
                    (55, 1372, 3, 5),
                    (209, 4116, 1, 25),
                    (-20, 1029, 1, 375),
                    (-22, 441, 1, 15),
                    (10, 1323, 1, 225),
                ],
            ),
            (
                &[
                    (33, 98, 1, 1),
                    (-513, 2744, 3, 5),
                    (-10, 343, 1, 25),
                    (5, 2744, 1, 375),
                    (10, 147, 1, 15),
                ],
                &[
                    (57, 1372, 3, 5),
                    (-55, 4116, 1, 25),
                    (20, 1029, 1, 375),
                    (16, 441, 1, 15),
                    (-20, 1323, 1, 225),
                ],
            ),
            (
                &[
                    (9, 196, 1, 1),
                    (-81, 2744, 3, 5),
                    (-6, 343, 1, 25),
                    (-5, 8232, 1, 375),
                    (5, 196, 1, 15),
                ],
                &[
                    (9, 1372, 3, 5),
                    (-11, 1372, 1, 25),
                    (-20, 3087, 1, 375),
                    (2, 147, 1, 15),
                    (10, 1323, 1, 225),
                ],
            ),
        ];
        specs
            .iter()
            .map(|(p, q)| (GeomPoly::from_terms(p), GeomPoly::from_terms(q)))
            .collect()
    });
    let idx = match letter {
        Letter::A | Letter::B => j - 1,
        Letter::C => 4 + j - 1,
    };
    let (p, q) = &tables[idx];
    (p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::rint;
    use num_traits::Signed;

    #[test]
    fn theorem1_values() {
        assert_eq!(corner_probs_o(0, 1), (rat(2, 3), rint(1)));
        assert_eq!(corner_probs_o(1, 1), (rat(7, 9), rat(4, 5)));
        assert_eq!(corner_probs_o(0, 2), (rat(1, 3), rint(0)));
        for n in 0..=12 {
            let (f1, g1) = corner_probs_o(n, 1);
            let (f2, g2) = corner_probs_o(n, 2);
            assert_eq!(&f1 + f2, rint(1));
            assert_eq!(&g1 + g2, rint(1));
            // approach to the limit is exactly (5/42)(1/15)^n
            assert_eq!((f1 - rat(11, 14)).abs(), rat(5, 42) * rat(1, 15).pow(n as i32));
        }
    }

    #[test]
    fn lemma_values() {
        let l0 = lemma_probs(0);
        assert_eq!(l0.g0_b, rint(1));
        assert_eq!(l0.h0_o, rint(1));
        assert_eq!(l0.g_b, [rint(0), rint(0)]);
        assert_eq!(l0.h_o, [rint(0), rint(0)]);
        let l1 = lemma_probs(1);
        assert_eq!(l1.h0_o, rat(12, 25));
        assert_eq!(l1.g0_b, rat(7, 10));
        for n in 0..=12 {
            let l = lemma_probs(n);
            assert_eq!(&l.g0_b + &l.g_b[0] + &l.g_b[1], rint(1));
            assert_eq!(&l.h0_o + &l.h_o[0] + &l.h_o[1], rint(1));
        }
    }

    #[test]
    fn boundary_matrix_stage_one() {
        let b = b_init(1, 1);
        assert_eq!(b.row(Letter::A)[0], rat(2, 9));
        assert_eq!(b.row(Letter::A)[1], rat(2, 15));
        assert_eq!(b.row(Letter::A)[2], rat(8, 15));
        // H_1(1, a_0): 16/25 = 32 of the 50 three-tree forests
        // (cross-checked against exhaustive enumeration in the oracle tests)
        assert_eq!(b.row(Letter::A)[4], rat(16, 25));
        let total: Rat = (1..=4).map(|j| b_init(1, j).row(Letter::A)[0].clone()).sum();
        assert_eq!(total, rint(1));
    }

    #[test]
    fn boundary_matrix_symmetries() {
        for m in 1..=5 {
            for j in 1..=4 {
                let b = b_init(m, j);
                let (a, bb, c) = (b.row(Letter::A), b.row(Letter::B), b.row(Letter::C));
                assert_eq!(a[0], bb[0]);
                assert_eq!(a[0], c[0]);
                assert_eq!(a[4], bb[4]);
                assert_eq!(a[4], c[4]);
                assert_eq!(bb[1], c[1]); // G(b) = G(c)
                assert_eq!(a[2], bb[3]); // tilde/hat column structure
                assert_eq!(bb[2], a[1]);
                assert_eq!(c[3], a[1]);
            }
        }
    }

    #[test]
    fn corner_dist_examples() {
        let d = corner_dist(0, 0, 1).unwrap();
        assert_eq!(d, [rat(2, 9), rat(2, 9), rat(2, 9)]);
        let d = corner_dist(0, 1, 1).unwrap();
        assert_eq!(d[0], rat(7, 27));
        // normalization across j at every corner vertex with n + m <= 6
        for n in 0..=6u32 {
            for m in 0..=(6 - n) {
                for letter in 0..3 {
                    let total: Rat =
                        (1..=4).map(|j| corner_dist(n, m, j).unwrap()[letter].clone()).sum();
                    assert_eq!(total, rint(1), "n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn corner_limits_approached_within_envelope() {
        let lims = corner_limits();
        for j in 1..=4 {
            for n in 0..=4u32 {
                for m in 0..=4u32 {
                    let d = corner_dist(n, m, j).unwrap();
                    let envelope = rat(3, 5).pow(n.min(m) as i32);
                    for v in &d {
                        assert!((v - &lims[j - 1]).abs() <= envelope, "j={j} n={n} m={m}");
                    }
                }
            }
        }
    }
}
