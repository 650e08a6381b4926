//! Exact spanning-tree and spanning-forest counts `f(n)`, `g(n)`, `h(n)`.

use num_bigint::BigInt;

use crate::{check_stage, max_stage, Result};

/// `f`: spanning trees; `g`: 2-tree forests separating `b_n` from `{o, a_n}`;
/// `h`: 3-tree forests separating the three outmost vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FghTriple {
    pub f: BigInt,
    pub g: BigInt,
    pub h: BigInt,
}

/// Iterates `f <- 6 f^2 g`, `g <- 10 f g^2`, `h <- 50 g^3` from `(3, 1, 1)`,
/// checking the invariant `3 g^2 = f h` at every stage.
pub fn fgh(n: u32) -> Result<FghTriple> {
    check_stage(n, max_stage())?;
    let mut t = FghTriple { f: BigInt::from(3), g: BigInt::from(1), h: BigInt::from(1) };
    for _ in 0..n {
        let f2 = &t.f * &t.f;
        let g2 = &t.g * &t.g;
        t = FghTriple {
            f: 6 * &f2 * &t.g,
            g: 10 * &t.f * &g2,
            h: 50 * &g2 * &t.g,
        };
        assert_eq!(3 * &t.g * &t.g, &t.f * &t.h, "3g^2 = fh violated");
    }
    Ok(t)
}

/// Exponents `(alpha, beta, gamma)` with `f(n) = 2^alpha 3^beta 5^gamma`:
/// `alpha = (3^n - 1)/2`, `beta = (3^(n+1) + 2n + 1)/4`,
/// `gamma = (3^n - 2n - 1)/4`.
pub fn f_factored(n: u32) -> Result<(u64, u64, u64)> {
    check_stage(n, max_stage())?;
    let p = 3u64.pow(n);
    let nn = n as u64;
    Ok(((p - 1) / 2, (3 * p + 2 * nn + 1) / 4, (p - 2 * nn - 1) / 4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn initial_values() {
        let t = fgh(0).unwrap();
        assert_eq!(t, FghTriple { f: 3.into(), g: 1.into(), h: 1.into() });
    }

    #[test]
    fn first_steps() {
        let t1 = fgh(1).unwrap();
        assert_eq!((t1.f, t1.g, t1.h), (54.into(), 30.into(), 50.into()));
        let t2 = fgh(2).unwrap();
        assert_eq!(t2.f, BigInt::from(524_880));
        assert_eq!(t2.g, BigInt::from(486_000));
        assert_eq!(t2.h, BigInt::from(1_350_000));
    }

    #[test]
    fn forest_identity_holds() {
        for n in 0..=8 {
            let t = fgh(n).unwrap();
            assert_eq!(3 * &t.g * &t.g, &t.f * &t.h, "n={n}");
        }
    }

    #[test]
    fn factored_exponents() {
        assert_eq!(f_factored(0).unwrap(), (0, 1, 0));
        assert_eq!(f_factored(1).unwrap(), (1, 3, 0));
        assert_eq!(f_factored(2).unwrap(), (4, 8, 1));
        assert_eq!(f_factored(3).unwrap(), (13, 22, 5));
        for n in 0..=8 {
            let (a, b, c) = f_factored(n).unwrap();
            let val = BigInt::from(2).pow(a) * BigInt::from(3).pow(b) * BigInt::from(5).pow(c);
            assert_eq!(val, fgh(n).unwrap().f, "n={n}");
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(fgh(99).is_err());
        assert!(f_factored(99).is_err());
    }
}
