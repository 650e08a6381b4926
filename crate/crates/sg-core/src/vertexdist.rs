//! `F_j(n, x)` for every canonical vertex address, by compiling the address
//! into a word of exact transfer matrices applied to a stage-boundary matrix.
//!
//! A word address `(g1, 1, g3, ..., gs)` descends one sub-triangle per
//! trailing digit. Each descent step contributes a factor `E_{g3} * R` on the
//! right, rewrites the remaining digits, and permutes the tracked letter; the
//! innermost step is the boundary case `B_j(g1', g1'-1) * R`. Trailing `L`
//! factors lift the native stage of the address to the requested one.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::cornerdist::{b_init, corner_dist, corner_probs_o};
use crate::gasket::{enumerate_addresses, Letter, VertexAddress};
use crate::ratmat::{Rat, RatMatrix};
use crate::{check_stage, max_table_stage, Error, Result};

/// The exact 5x5/3x3 propagation constants.
pub struct TransferMatrices {
    pub r: RatMatrix,
    pub l: RatMatrix,
    pub lp: RatMatrix,
    pub e0: RatMatrix,
    pub e1: RatMatrix,
    pub e2: RatMatrix,
    pub e: RatMatrix,
}

/// Build (once) and self-check the transfer matrices.
pub fn transfer_matrices() -> &'static TransferMatrices {
    static CELL: OnceLock<TransferMatrices> = OnceLock::new();
    CELL.get_or_init(|| {
        let r = RatMatrix::from_frac(&[
            &[(2, 3), (3, 5), (1, 10), (3, 5), (6, 25)],
            &[(1, 6), (3, 10), (1, 10), (1, 10), (7, 50)],
            &[(0, 1), (0, 1), (2, 5), (0, 1), (6, 25)],
            &[(1, 6), (1, 10), (1, 10), (3, 10), (7, 50)],
            &[(0, 1), (0, 1), (3, 10), (0, 1), (6, 25)],
        ]);
        let l = RatMatrix::from_frac(&[
            &[(2, 3), (3, 5), (3, 5), (3, 5), (6, 25)],
            &[(1, 6), (3, 10), (1, 10), (0, 1), (7, 50)],
            &[(1, 6), (1, 10), (3, 10), (1, 10), (7, 50)],
            &[(0, 1), (0, 1), (0, 1), (3, 10), (6, 25)],
            &[(0, 1), (0, 1), (0, 1), (0, 1), (6, 25)],
        ]);
        let lp = RatMatrix::from_frac(&[
            &[(2, 3), (3, 5), (3, 5)],
            &[(1, 6), (3, 10), (1, 10)],
            &[(1, 6), (1, 10), (3, 10)],
        ]);
        // E0 swaps the G-tilde/G-hat columns, E2 swaps G/G-tilde.
        let mut e0 = RatMatrix::identity(5);
        e0.set(2, 2, Rat::zero());
        e0.set(3, 3, Rat::zero());
        e0.set(2, 3, Rat::one());
        e0.set(3, 2, Rat::one());
        let e1 = RatMatrix::identity(5);
        let mut e2 = RatMatrix::identity(5);
        e2.set(1, 1, Rat::zero());
        e2.set(2, 2, Rat::zero());
        e2.set(1, 2, Rat::one());
        e2.set(2, 1, Rat::one());
        let e = e0.add(&e1).unwrap().add(&e2).unwrap();
        // self-checks: L' is the (F, G, G-tilde) sub-block of L, and the
        // hat/H rows of L feed nothing back into that block.
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.at(i, j), lp.at(i, j));
            }
        }
        for i in 3..5 {
            for j in 0..3 {
                assert!(l.at(i, j).is_zero());
            }
        }
        TransferMatrices { r, l, lp, e0, e1, e2, e }
    })
}

fn e_matrix(digit: u32) -> &'static RatMatrix {
    let tm = transfer_matrices();
    match digit {
        0 => &tm.e0,
        1 => &tm.e1,
        _ => &tm.e2,
    }
}

/// Letter rewriting under sub-triangle descent.
fn permute_letter(digit: u32, x: Letter) -> Letter {
    match (digit, x) {
        (0, Letter::B) => Letter::C,
        (0, Letter::C) => Letter::B,
        (2, Letter::A) => Letter::B,
        (2, Letter::B) => Letter::A,
        _ => x,
    }
}

/// Digit rewriting for the residual word under descent.
fn permute_digit(digit: u32, d: u32) -> u32 {
    match (digit, d) {
        (0, 0) => 1,
        (0, 1) => 0,
        (2, 1) => 2,
        (2, 2) => 1,
        _ => d,
    }
}

/// A compiled address: apply `factors` then `l_power` copies of `L` to the
/// stage-boundary matrix `B_j(base_stage, base_stage - 1)` and read the
/// first column.
#[derive(Clone, Debug)]
pub struct MatrixWord {
    pub base_stage: u32,
    pub factors: Vec<WordFactor>,
    pub l_power: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordFactor {
    /// The boundary descent step.
    R,
    /// A sub-triangle descent step `E_digit * R`.
    Er(u32),
}

impl MatrixWord {
    /// Number of 5x5 factors including the trailing `L`s.
    pub fn len(&self) -> usize {
        self.factors.len() + self.l_power as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The product of all factors as one 5x5 matrix.
    pub fn product(&self) -> RatMatrix {
        let tm = transfer_matrices();
        let mut acc = RatMatrix::identity(5);
        for f in &self.factors {
            acc = match f {
                WordFactor::R => acc.mul(&tm.r).unwrap(),
                WordFactor::Er(d) => acc.mul(&e_matrix(*d).mul(&tm.r).unwrap()).unwrap(),
            };
        }
        acc.mul(&tm.l.pow(self.l_power).unwrap()).unwrap()
    }
}

/// Compile a word address at stage `n` into its base letter and matrix word.
///
/// Word length: `(s-2)` descent factors, one boundary `R`, and
/// `n - g1 - 1` trailing `L`s.
pub fn compile_word(addr: &VertexAddress, n: u32) -> Result<(Letter, MatrixWord)> {
    let VertexAddress::Word { letter, digits, .. } = addr.canonical_at(n)? else {
        return Err(Error::AddressInvalid {
            stage: n,
            reason: format!("{addr} is a corner-type address; use the corner path"),
        });
    };
    let g1 = digits[0];
    let mut tracked = letter;
    let mut rest: Vec<u32> = digits[2..].to_vec();
    let mut descent = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let g3 = rest.remove(0);
        descent.push(WordFactor::Er(g3));
        tracked = permute_letter(g3, tracked);
        for d in rest.iter_mut() {
            *d = permute_digit(g3, *d);
        }
    }
    descent.reverse();
    let mut factors = vec![WordFactor::R];
    factors.extend(descent);
    let base_stage = g1 - (digits.len() as u32 - 2);
    Ok((tracked, MatrixWord { base_stage, factors, l_power: n - g1 - 1 }))
}

/// `(F_1, F_2, F_3, F_4)` at a canonical address of `SG(n)`.
pub fn vertex_distribution(n: u32, addr: &VertexAddress) -> Result<[Rat; 4]> {
    let canon = addr.canonical_at(n)?;
    let dist = match &canon {
        VertexAddress::Origin | VertexAddress::CornerA(_) | VertexAddress::CornerB(_) => {
            let (f1, _) = corner_probs_o(n, 1);
            let (f2, _) = corner_probs_o(n, 2);
            [f1, f2, Rat::zero(), Rat::zero()]
        }
        VertexAddress::Single(x, m) => {
            let mut out = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = corner_dist(*m, n - m - 1, j + 1)?[x.index()].clone();
            }
            out
        }
        VertexAddress::Word { .. } => {
            let (letter, word) = compile_word(&canon, n)?;
            let product = word.product();
            let mut out = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
            for (j, slot) in out.iter_mut().enumerate() {
                let base = b_init(word.base_stage, j + 1).to_matrix();
                let full = base.mul(&product)?;
                *slot = full.at(letter.index(), 0).clone();
            }
            out
        }
    };
    debug_assert_eq!(dist.iter().sum::<Rat>(), Rat::one());
    Ok(dist)
}

/// Whole-gasket table: one exact distribution per canonical address.
///
/// Boundary matrices and sub-triangle words are shared across addresses, so
/// the sweep stays linear in the vertex count.
pub fn full_table(n: u32) -> Result<Vec<(VertexAddress, [Rat; 4])>> {
    check_stage(n, max_table_stage())?;
    let tm = transfer_matrices();
    // memo: (j, digits) -> 3x5 matrix at the word's native stage g1+1
    let mut memo: HashMap<(usize, Vec<u32>), RatMatrix> = HashMap::new();
    let mut out = Vec::new();
    for addr in enumerate_addresses(n) {
        let dist = match &addr {
            VertexAddress::Word { letter, digits, .. } => {
                let g1 = digits[0];
                let mut dist = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
                for (j, slot) in dist.iter_mut().enumerate() {
                    let base = word_matrix(j + 1, digits, &mut memo, tm);
                    let lifted = base.mul(&tm.l.pow(n - g1 - 1)?)?;
                    *slot = lifted.at(letter.index(), 0).clone();
                }
                dist
            }
            _ => vertex_distribution(n, &addr)?,
        };
        out.push((addr, dist));
    }
    Ok(out)
}

/// `B_j(g1+1, digits)` with memoization over shared suffix words.
fn word_matrix(
    j: usize,
    digits: &[u32],
    memo: &mut HashMap<(usize, Vec<u32>), RatMatrix>,
    tm: &TransferMatrices,
) -> RatMatrix {
    if let Some(m) = memo.get(&(j, digits.to_vec())) {
        return m.clone();
    }
    let g1 = digits[0];
    let result = if digits.len() == 2 {
        b_init(g1, j).to_matrix().mul(&tm.r).unwrap()
    } else {
        let g3 = digits[2];
        let mut child: Vec<u32> = Vec::with_capacity(digits.len() - 1);
        child.push(g1 - 1);
        child.push(1);
        child.extend(digits[3..].iter().map(|&d| permute_digit(g3, d)));
        let base = word_matrix(j, &child, memo, tm);
        let stepped = base.mul(&e_matrix(g3).mul(&tm.r).unwrap()).unwrap();
        // permute rows: new row x reads old row permute_letter(g3, x)
        RatMatrix::from_rows(
            Letter::ALL
                .iter()
                .map(|&x| stepped.row(permute_letter(g3, x).index()).to_vec())
                .collect(),
        )
    };
    memo.insert((j, digits.to_vec()), result.clone());
    result
}
