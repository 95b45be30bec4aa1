//! Fibonacci numbers for any integer index, `F_{-n} = (-1)^{n+1} F_n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `F_n` by fast doubling: `F_{2k} = F_k (2F_{k+1} - F_k)`,
/// `F_{2k+1} = F_k^2 + F_{k+1}^2`.
pub fn fib(n: i64) -> BigInt {
    let m = n.unsigned_abs();
    let f = fib_pair(m).0;
    if n < 0 && m % 2 == 0 {
        -f
    } else {
        f
    }
}

/// `(F_n, F_{n+1})` for n >= 0.
pub fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * ((&b << 1) - &a);
    let d = &a * &a + &b * &b;
    if n % 2 == 0 {
        (c, d)
    } else {
        (d.clone(), c + d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        // the small-index table, negative side included
        let expect: [(i64, i64); 12] = [
            (-6, -8),
            (-5, 5),
            (-4, -3),
            (-3, 2),
            (-2, -1),
            (-1, 1),
            (0, 0),
            (1, 1),
            (2, 1),
            (3, 2),
            (7, 13),
            (12, 144),
        ];
        for (n, f) in expect {
            assert_eq!(fib(n), BigInt::from(f), "F_{n}");
        }
    }

    #[test]
    fn recurrence_holds_across_zero() {
        for n in -30i64..30 {
            assert_eq!(fib(n), fib(n - 1) + fib(n - 2));
        }
    }

    #[test]
    fn cassini() {
        for n in 1i64..40 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(fib(n + 1) * fib(n - 1) - fib(n) * fib(n), BigInt::from(sign));
        }
    }
}
