//! Exact binomial coefficients.
//!
//! [`binom`] works on arbitrary signed arguments and returns `C(m, b)` as a
//! `u128`, reporting overflow instead of wrapping. [`layer_size`] is the
//! infallible fast path for ground sets of at most 64 elements, where every
//! coefficient fits in a `u64`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest ground set supported by the bitmask subset encoding.
pub const MAX_N: u32 = 64;

const TABLE_DIM: usize = MAX_N as usize + 1;

fn pascal() -> &'static [[u64; TABLE_DIM]; TABLE_DIM] {
    static TABLE: OnceLock<Box<[[u64; TABLE_DIM]; TABLE_DIM]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; TABLE_DIM]; TABLE_DIM]);
        for m in 0..TABLE_DIM {
            t[m][0] = 1;
            for b in 1..=m {
                t[m][b] = t[m - 1][b - 1] + t[m - 1][b];
            }
        }
        t
    })
}

/// `C(n, k)` for `n <= 64`; zero when `k > n`.
///
/// Panics if `n > 64`.
#[inline]
pub fn layer_size(n: u32, k: u32) -> u64 {
    assert!(n <= MAX_N, "layer_size supports n <= {MAX_N}, got {n}");
    if k > n {
        0
    } else {
        pascal()[n as usize][k as usize]
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Exact `C(m, b)`, zero whenever `b < 0`, `m < 0` or `b > m`.
pub fn binom(m: i64, b: i64) -> Result<u128> {
    if m < 0 || b < 0 || b > m {
        return Ok(0);
    }
    if m <= MAX_N as i64 {
        return Ok(layer_size(m as u32, b as u32) as u128);
    }
    let b = b.min(m - b) as u128;
    let m = m as u128;
    // result_i = C(m - b + i, i); den divides result * num, so after
    // dividing out gcd(result, den) the remaining den' divides num.
    let mut result: u128 = 1;
    for i in 1..=b {
        let num = m - b + i;
        let g = gcd(result, i);
        let den = i / g;
        result = (result / g)
            .checked_mul(num / den)
            .ok_or(Error::Overflow("binomial coefficient"))?;
    }
    Ok(result)
}

/// Checked product of two exact quantities.
pub(crate) fn mul(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

pub(crate) fn add(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

pub(crate) fn sub(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_sub(b).ok_or(Error::Overflow(what))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binom(5, 2).unwrap(), 10);
        assert_eq!(binom(4, 0).unwrap(), 1);
        assert_eq!(binom(2, 3).unwrap(), 0);
        assert_eq!(binom(0, 0).unwrap(), 1);
        assert_eq!(binom(-1, 0).unwrap(), 0);
        assert_eq!(binom(3, -1).unwrap(), 0);
    }

    #[test]
    fn table_and_general_path_agree() {
        // C(64, 32) computed both ways
        let via_table = binom(64, 32).unwrap();
        let mut r: u128 = 1;
        for i in 1..=32u128 {
            r = r * (32 + i) / i;
        }
        assert_eq!(via_table, r);
        assert_eq!(binom(100, 3).unwrap(), 161_700);
        assert_eq!(binom(100, 97).unwrap(), 161_700);
        assert_eq!(binom(130, 65).unwrap(), 95_067_625_827_960_698_145_584_333_020_095_113_100);
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(binom(200, 100), Err(Error::Overflow("binomial coefficient")));
        assert!(mul(u128::MAX, 2, "x").is_err());
        assert!(sub(1, 2, "x").is_err());
    }

    #[test]
    fn pascal_rule_exhaustive() {
        for m in 1..=40i64 {
            for b in 1..=m {
                let lhs = binom(m, b).unwrap();
                let rhs = binom(m - 1, b - 1).unwrap() + binom(m - 1, b).unwrap();
                assert_eq!(lhs, rhs, "m={m} b={b}");
            }
        }
    }

    #[test]
    fn log_concave_in_upper_argument() {
        for m in 2..=41i64 {
            for b in 1..m {
                let mid = binom(m, b).unwrap();
                let lo = binom(m - 1, b).unwrap();
                let hi = binom(m + 1, b).unwrap();
                assert!(mid * mid >= lo * hi, "m={m} b={b}");
            }
        }
    }
}
