//! Arbitrary-precision rationals, small dense exact matrices, and the
//! exponential-polynomial algebra `sum_b c_b * b^m` that carries the closed
//! forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar. `num_rational` keeps it reduced with a positive
/// denominator, which is exactly the representation contract here.
pub type Rat = num_rational::BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact base-10 rendering of a rational with `sig` significant digits,
/// round-half-even. Matches the precision used for printed tables.
pub fn decimal_string(r: &Rat, sig: usize) -> String {
    assert!(sig > 0);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    // exponent e: smallest with |r| < 10^e, i.e. leading digit at position e-1
    let mut e: i64 = 0;
    let ten = BigInt::from(10);
    let mut lo = num.clone();
    let mut hi = den.clone();
    while lo < hi {
        lo *= &ten;
        e -= 1;
    }
    while lo >= &hi * &ten {
        hi *= &ten;
        e += 1;
    }
    // now 10^e <= |r| < 10^(e+1); we want sig digits: scaled = |r| * 10^(sig-1-e)
    let shift = sig as i64 - 1 - e;
    let (mut sn, mut sd) = (num, den);
    if shift >= 0 {
        sn *= ten.pow(shift as u32);
    } else {
        sd *= ten.pow((-shift) as u32);
    }
    let (q, rem) = num_integer::Integer::div_rem(&sn, &sd);
    let mut digits = q.clone();
    let twice = &rem * 2;
    if twice > sd || (twice == sd && num_integer::Integer::is_odd(&q)) {
        digits += 1;
    }
    let mut ds = digits.to_string();
    // rounding may carry into one extra digit (e.g. 999.9 -> 1000)
    let mut exp = e;
    if ds.len() > sig {
        ds.truncate(sig);
        exp += 1;
    }
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    let mut suffix = String::new();
    if exp >= 0 && (exp as usize) < sig {
        let point = exp as usize + 1;
        out.push_str(&ds[..point]);
        if point < ds.len() {
            out.push('.');
            out.push_str(&ds[point..]);
        }
    } else if (-4..0).contains(&exp) {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(&ds);
    } else {
        out.push_str(&ds[..1]);
        if ds.len() > 1 {
            out.push('.');
            out.push_str(&ds[1..]);
        }
        suffix = format!("e{exp}");
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out + &suffix
}

/// Render as "num/den" (or plain integer when den = 1).
pub fn fraction_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// RatMatrix
// ---------------------------------------------------------------------------

/// Dense exact rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Constant matrix from (numerator, denominator) pairs.
    pub fn from_frac(table: &[&[(i64, i64)]]) -> Self {
        Self::from_rows(
            table
                .iter()
                .map(|row| row.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn dims(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.dims(), right: other.dims() });
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { left: self.dims(), right: other.dims() });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    /// Exact `k`-th power by repeated squaring; `pow(m, 0)` is the identity.
    pub fn pow(&self, k: u32) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { left: self.dims(), right: self.dims() });
        }
        let mut acc = RatMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { left: self.dims(), right: self.dims() });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(Error::SingularMatrix { column: col })?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let p = a.at(col, col).clone();
            for j in 0..n {
                let v = a.at(col, j) / &p;
                a.set(col, j, v);
                let v = inv.at(col, j) / &p;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let v = a.at(r, j) - &f * a.at(col, j);
                    a.set(r, j, v);
                    let v = inv.at(r, j) - &f * inv.at(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fraction_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// IntMatrix + fraction-free determinant
// ---------------------------------------------------------------------------

/// Dense arbitrary-precision integer matrix (Laplacians, oracle work).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    /// Principal submatrix keeping rows/cols outside `drop` (sorted or not).
    pub fn minor(&self, drop: &[usize]) -> IntMatrix {
        let keep: Vec<usize> =
            (0..self.rows).filter(|i| !drop.contains(i)).collect();
        let mut out = IntMatrix::zeros(keep.len(), keep.len());
        for (ii, &i) in keep.iter().enumerate() {
            for (jj, &j) in keep.iter().enumerate() {
                out.set(ii, jj, self.at(i, j).clone());
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Integer-preserving throughout: every intermediate entry is a minor of
    /// the input, and every division is exact. The empty matrix has
    /// determinant 1.
    pub fn det_fraction_free(mut self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if self.at(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !self.at(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    self.data.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            let pivot = self.at(k, k).clone();
            for i in k + 1..n {
                let head = self.at(i, k).clone();
                for j in k + 1..n {
                    let v = (self.at(i, j) * &pivot - &head * self.at(k, j)) / &prev;
                    self.set(i, j, v);
                }
                self.set(i, k, BigInt::zero());
            }
            prev = pivot;
        }
        self.at(n - 1, n - 1) * sign
    }
}

// ---------------------------------------------------------------------------
// GeomPoly
// ---------------------------------------------------------------------------

/// Exact linear combination `sum_b c_b * b^m` over rational bases
/// `0 < b <= 1`; the carrier for every n-indexed closed form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GeomPoly {
    terms: BTreeMap<Rat, Rat>,
}

impl GeomPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Rat::one(), c)
    }

    /// Single term `coeff * base^m`.
    pub fn term(base: Rat, coeff: Rat) -> Self {
        assert!(base > Rat::zero() && base <= Rat::one(), "base out of (0,1]");
        let mut p = Self::new();
        if !coeff.is_zero() {
            p.terms.insert(base, coeff);
        }
        p
    }

    /// Build from (coeff_num, coeff_den, base_num, base_den) tuples.
    pub fn from_terms(terms: &[(i64, i64, i64, i64)]) -> Self {
        let mut p = Self::new();
        for &(cn, cd, bn, bd) in terms {
            p = p.add(&Self::term(rat(bn, bd), rat(cn, cd)));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, base: &Rat) -> Rat {
        self.terms.get(base).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &GeomPoly) -> GeomPoly {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            let v = out.coeff(b) + c;
            if v.is_zero() {
                out.terms.remove(b);
            } else {
                out.terms.insert(b.clone(), v);
            }
        }
        out
    }

    pub fn sub(&self, other: &GeomPoly) -> GeomPoly {
        self.add(&other.scale(&rint(-1)))
    }

    pub fn scale(&self, k: &Rat) -> GeomPoly {
        if k.is_zero() {
            return GeomPoly::new();
        }
        GeomPoly { terms: self.terms.iter().map(|(b, c)| (b.clone(), c * k)).collect() }
    }

    /// Product: bases multiply pairwise, like bases merge, zeros drop.
    pub fn mul(&self, other: &GeomPoly) -> GeomPoly {
        let mut out = GeomPoly::new();
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                out = out.add(&GeomPoly::term(b1 * b2, c1 * c2));
            }
        }
        out
    }

    /// Exact evaluation at integer exponent `m`.
    pub fn eval(&self, m: u32) -> Rat {
        let mut acc = Rat::zero();
        for (b, c) in &self.terms {
            acc += c * b.pow(m as i32);
        }
        acc
    }

    /// Reindex `n = m - 1`: a term `c * b^n` becomes `(c/b) * b^m`.
    pub fn shift_up(&self) -> GeomPoly {
        GeomPoly { terms: self.terms.iter().map(|(b, c)| (b.clone(), c / b)).collect() }
    }

    /// `sum_{m>=1} ratio^m * p(m)`, exactly: each base contributes
    /// `c * (ratio*b) / (1 - ratio*b)`. Errors when any `|ratio*b| >= 1`.
    pub fn tail_sum(&self, ratio: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (b, c) in &self.terms {
            let rb = ratio * b;
            if rb.abs() >= Rat::one() {
                return Err(Error::DivergentSeries { base: fraction_string(b) });
            }
            acc += c * &rb / (Rat::one() - &rb);
        }
        Ok(acc)
    }
}

impl fmt::Debug for GeomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(b, c)| format!("{}*({})^m", fraction_string(c), fraction_string(b)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theorem1_f1() -> GeomPoly {
        GeomPoly::from_terms(&[(11, 14, 1, 1), (-5, 42, 1, 15)])
    }

    #[test]
    fn identity_times_matrix_is_matrix() {
        let m = RatMatrix::from_frac(&[&[(2, 3), (1, 3)], &[(3, 5), (2, 5)]]);
        let i = RatMatrix::identity(2);
        assert_eq!(i.mul(&m).unwrap(), m);
    }

    #[test]
    fn square_of_degree_recursion_matrix() {
        // hand multiplication of A = [[2/3,1/3],[3/5,2/5]]
        let a = RatMatrix::from_frac(&[&[(2, 3), (1, 3)], &[(3, 5), (2, 5)]]);
        let sq = a.mul(&a).unwrap();
        let expect =
            RatMatrix::from_frac(&[&[(29, 45), (16, 45)], &[(16, 25), (9, 25)]]);
        assert_eq!(sq, expect);
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = RatMatrix::zeros(2, 3);
        let b = RatMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn pow_zero_is_identity() {
        let a = RatMatrix::from_frac(&[&[(2, 3), (1, 3)], &[(3, 5), (2, 5)]]);
        assert_eq!(a.pow(0).unwrap(), RatMatrix::identity(2));
        assert_eq!(a.pow(1).unwrap(), a);
    }

    #[test]
    fn pow_matches_spectral_closed_form() {
        // A^n = [[9/14+5/14 t, 5/14-5/14 t], [9/14-9/14 t, 5/14+9/14 t]], t=(1/15)^n
        let a = RatMatrix::from_frac(&[&[(2, 3), (1, 3)], &[(3, 5), (2, 5)]]);
        for n in 0..=6u32 {
            let t = rat(1, 15).pow(n as i32);
            let p = a.pow(n).unwrap();
            assert_eq!(*p.at(0, 0), rat(9, 14) + rat(5, 14) * &t);
            assert_eq!(*p.at(0, 1), rat(5, 14) - rat(5, 14) * &t);
            assert_eq!(*p.at(1, 0), rat(9, 14) - rat(9, 14) * &t);
            assert_eq!(*p.at(1, 1), rat(5, 14) + rat(9, 14) * &t);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_frac(&[&[(2, 3), (1, 3)], &[(3, 5), (2, 5)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert_eq!(RatMatrix::identity(5).inverse().unwrap(), RatMatrix::identity(5));
    }

    #[test]
    fn singular_matrix_reports_pivot_column() {
        let m = RatMatrix::from_frac(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
        match m.inverse() {
            Err(Error::SingularMatrix { column }) => assert_eq!(column, 1),
            other => panic!("expected singular error, got {other:?}"),
        }
    }

    #[test]
    fn bareiss_one_by_one() {
        let m = IntMatrix::from_rows(vec![vec![BigInt::from(7)]]);
        assert_eq!(m.det_fraction_free(), BigInt::from(7));
    }

    #[test]
    fn bareiss_pivoting_and_singularity() {
        let m = IntMatrix::from_rows(vec![
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(1)],
        ]);
        assert_eq!(m.det_fraction_free(), BigInt::from(-6));
        let z = IntMatrix::from_rows(vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ]);
        assert_eq!(z.det_fraction_free(), BigInt::zero());
    }

    #[test]
    fn geom_eval_examples() {
        let f1 = theorem1_f1();
        assert_eq!(f1.eval(0), rat(2, 3));
        assert_eq!(f1.eval(1), rat(7, 9));
        let g0 = GeomPoly::from_terms(&[(33, 28, 3, 5), (-5, 28, 1, 25)]);
        assert_eq!(g0.eval(0), rint(1));
    }

    #[test]
    fn geom_mul_merges_bases() {
        // [11/14 - 5/42 t] * [33/28 u - 5/28 w] with t*u = w, t*w = (1/375)^n
        let f1 = theorem1_f1();
        let g0 = GeomPoly::from_terms(&[(33, 28, 3, 5), (-5, 28, 1, 25)]);
        let p = f1.mul(&g0);
        assert_eq!(p.coeff(&rat(3, 5)), rat(363, 392));
        assert_eq!(p.coeff(&rat(1, 25)), rat(-330, 1176));
        assert_eq!(p.coeff(&rat(1, 375)), rat(25, 1176));
        assert!(p.coeff(&rat(1, 15)).is_zero());
    }

    #[test]
    fn geom_add_cancellation() {
        let p = theorem1_f1();
        assert!(p.sub(&p).is_zero());
        let c = GeomPoly::constant(rat(3, 4));
        assert_eq!(c.mul(&GeomPoly::constant(rat(2, 3))), GeomPoly::constant(rat(1, 2)));
    }

    #[test]
    fn tail_sum_closed_forms() {
        let third = rat(1, 3);
        assert_eq!(GeomPoly::constant(rint(1)).tail_sum(&third).unwrap(), rat(1, 2));
        assert_eq!(GeomPoly::term(rat(3, 5), rint(1)).tail_sum(&third).unwrap(), rat(1, 4));
        assert_eq!(GeomPoly::term(rat(1, 225), rint(1)).tail_sum(&third).unwrap(), rat(1, 674));
        assert!(GeomPoly::constant(rint(1)).tail_sum(&rint(1)).is_err());
    }

    #[test]
    fn tail_sum_matches_partial_sums_monotonically() {
        let p = GeomPoly::from_terms(&[(11, 14, 1, 1), (-5, 42, 1, 15), (2, 7, 3, 5)]);
        let ratio = rat(1, 3);
        let closed = p.tail_sum(&ratio).unwrap();
        let mut partial = Rat::zero();
        let mut last_gap: Option<Rat> = None;
        for m in 1..=40u32 {
            partial += ratio.pow(m as i32) * p.eval(m);
            let gap = (&closed - &partial).abs();
            if let Some(prev) = last_gap {
                assert!(gap <= prev);
            }
            last_gap = Some(gap);
        }
        assert!(last_gap.unwrap() < rat(1, 1_000_000_000));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(10957, 40464), 12), "0.270783906682");
        assert_eq!(decimal_string(&rat(124895, 4545456), 12), "0.0274768912074");
        assert_eq!(decimal_string(&rat(1, 2), 12), "0.5");
        assert_eq!(decimal_string(&rint(54), 12), "54");
        assert_eq!(decimal_string(&rat(-7, 9), 5), "-0.77778");
        assert_eq!(decimal_string(&rint(0), 12), "0");
        assert_eq!(decimal_string(&rat(1, 100000), 3), "1e-5");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rat> {
            (-6i64..=6, 1i64..=6).prop_map(|(n, d)| rat(n, d))
        }

        fn small_matrix() -> impl Strategy<Value = RatMatrix> {
            proptest::collection::vec(small_rat(), 9)
                .prop_map(|v| RatMatrix::from_rows(v.chunks(3).map(|c| c.to_vec()).collect()))
        }

        proptest! {
            #[test]
            fn pow_is_additive(m in small_matrix(), a in 0u32..5, b in 0u32..5) {
                let lhs = m.pow(a + b).unwrap();
                let rhs = m.pow(a).unwrap().mul(&m.pow(b).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn geom_mul_eval_commute(
                c1 in small_rat(), c2 in small_rat(), m in 0u32..8,
            ) {
                let p = GeomPoly::term(rat(3, 5), c1).add(&GeomPoly::constant(rat(1, 2)));
                let q = GeomPoly::term(rat(1, 15), c2).add(&GeomPoly::constant(rat(1, 3)));
                prop_assert_eq!(p.mul(&q).eval(m), p.eval(m) * q.eval(m));
            }

            #[test]
            fn rationals_stay_reduced(n in -1000i64..1000, d in 1i64..1000) {
                let r = rat(n, d);
                prop_assert!(r.denom() > &BigInt::from(0));
                prop_assert_eq!(
                    num_integer::Integer::gcd(r.numer(), r.denom()),
                    BigInt::one()
                );
            }
        }
    }
}
