//! Y-analogs of integers, factorials, binomial and multinomial coefficients.

use super::poly::LaurentPoly;
use super::var::VarId;
use crate::error::{Error, Result};

/// `[n]_Y = 1 + Y + ... + Y^(n-1)`.
pub fn y_integer(n: u32, v: VarId) -> LaurentPoly {
    (0..n as i32).map(|e| LaurentPoly::var_pow(v, e)).sum()
}

/// `[n]_Y! = [1]_Y [2]_Y ... [n]_Y`.
pub fn y_factorial(n: u32, v: VarId) -> LaurentPoly {
    (1..=n).map(|i| y_integer(i, v)).product()
}

/// Gaussian binomial coefficient, computed with the product formula
/// `prod_{i=1..k} (1 - Y^(n-k+i)) / (1 - Y^i)`. After step `i` the partial
/// product is `binom(n-k+i, i)_Y`, so each division is exact.
pub fn y_binomial(n: i64, k: i64, v: VarId) -> Result<LaurentPoly> {
    if k < 0 || k > n {
        return Err(Error::invalid(format!("binomial({n}, {k}) needs 0 <= k <= n")));
    }
    let k = k.min(n - k);
    let mut acc = LaurentPoly::one();
    for i in 1..=k {
        let num = LaurentPoly::one_minus(v, (n - k + i) as i32);
        acc = (&acc * &num).div_exact(&LaurentPoly::one_minus(v, i as i32))?;
    }
    Ok(acc)
}

/// `binom(n, k)_Y`, or zero when `k` lies outside `0..=n`.
pub fn y_binomial_or_zero(n: i64, k: i64, v: VarId) -> LaurentPoly {
    y_binomial(n, k, v).unwrap_or_default()
}

/// Y-multinomial coefficient `prod_i binom(e_{i+1}, e_i)_Y` for the sorted
/// multiset `e_1 <= ... <= e_l` with `e_{l+1} = n`.
pub fn y_multinomial(n: u32, multiset: &[u32], v: VarId) -> Result<LaurentPoly> {
    if let Some(bad) = multiset.iter().find(|&&e| e < 1 || e > n) {
        return Err(Error::invalid(format!("multinomial entry {bad} outside [1, {n}]")));
    }
    let mut e = multiset.to_vec();
    e.sort_unstable();
    e.push(n);
    let mut acc = LaurentPoly::one();
    for w in e.windows(2) {
        acc = &acc * &y_binomial(w[1] as i64, w[0] as i64, v)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::Monomial;
    use num_bigint::BigInt;
    use std::collections::BTreeSet;

    const Y: VarId = VarId(0);

    fn dense(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (Monomial::var(Y, e as i32), BigInt::from(c))))
    }

    fn int_binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_values() {
        assert_eq!(y_integer(3, Y), dense(&[1, 1, 1]));
        assert_eq!(y_integer(0, Y), LaurentPoly::zero());
        assert_eq!(y_binomial(4, 2, Y).unwrap(), dense(&[1, 1, 2, 1, 1]));
        assert_eq!(y_binomial(7, 0, Y).unwrap(), LaurentPoly::one());
        assert_eq!(y_factorial(3, Y), dense(&[1, 2, 2, 1]));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(y_binomial(2, 3, Y).is_err());
        assert!(y_binomial(2, -1, Y).is_err());
        assert!(y_multinomial(3, &[4], Y).is_err());
        assert!(y_multinomial(3, &[0], Y).is_err());
        assert!(y_binomial_or_zero(1, 2, Y).is_zero());
    }

    #[test]
    fn factorial_quotient_matches_product_formula() {
        for n in 0..=6u32 {
            for k in 0..=n {
                let lhs = &y_binomial(n as i64, k as i64, Y).unwrap() * &(&y_factorial(k, Y) * &y_factorial(n - k, Y));
                assert_eq!(lhs, y_factorial(n, Y), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn pascal_symmetry_and_specialization() {
        let ys: BTreeSet<_> = [Y].into();
        for n in 1..=8i64 {
            for k in 0..=n {
                let b = y_binomial(n, k, Y).unwrap();
                assert_eq!(b, y_binomial(n, n - k, Y).unwrap());
                if 0 < k && k < n {
                    let rec = &y_binomial(n - 1, k - 1, Y).unwrap()
                        + &(&LaurentPoly::var_pow(Y, k as i32) * &y_binomial(n - 1, k, Y).unwrap());
                    assert_eq!(b, rec, "q-Pascal n={n} k={k}");
                }
            }
        }
        for n in 0..=10u64 {
            for k in 0..=n {
                let at_one = y_binomial(n as i64, k as i64, Y).unwrap().eval_at_one(&ys);
                assert_eq!(at_one, LaurentPoly::constant(int_binomial(n, k) as i64));
            }
        }
    }

    #[test]
    fn multinomial_depends_only_on_underlying_set() {
        let a = y_multinomial(5, &[1, 3, 3, 3], Y).unwrap();
        let b = y_multinomial(5, &[1, 3], Y).unwrap();
        assert_eq!(a, b);
        let expect = &y_binomial(3, 1, Y).unwrap() * &y_binomial(5, 3, Y).unwrap();
        assert_eq!(b, expect);
        assert_eq!(y_multinomial(4, &[], Y).unwrap(), LaurentPoly::one());
    }
}
