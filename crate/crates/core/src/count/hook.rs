//! Two-dimensional counts: hook lengths, the hook-length formula,
//! k-dimensional Catalan numbers and involution numbers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::shape::Partition;

/// Hook length of every box of a partition, row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookMatrix {
    rows: Vec<Vec<u32>>,
}

impl HookMatrix {
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn product(&self) -> BigUint {
        self.rows
            .iter()
            .flatten()
            .fold(BigUint::one(), |acc, &h| acc * h)
    }
}

impl std::fmt::Display for HookMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|h| h.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `h(i,j) = arm + leg + 1`.
pub fn hook_lengths(lambda: &Partition) -> HookMatrix {
    let parts = lambda.parts();
    let rows = parts
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            (1..=len)
                .map(|j| {
                    let arm = len - j;
                    // rows at or below this one reaching column j, the box itself included
                    let leg_and_self = parts[i..].iter().take_while(|&&p| p >= j).count() as u32;
                    arm + leg_and_self
                })
                .collect()
        })
        .collect::<Vec<Vec<u32>>>();
    HookMatrix { rows }
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Number of standard Young tableaux of shape `lambda`, `n! / Π h_b`.
///
/// Panics if the division leaves a remainder, which can only mean a bug.
pub fn hook_count(lambda: &Partition) -> BigUint {
    let numerator = factorial(lambda.weight());
    let denominator = hook_lengths(lambda).product();
    let (q, r) = numerator.div_rem(&denominator);
    assert!(
        r.is_zero(),
        "hook-length division is not exact for {lambda}"
    );
    q
}

/// The k-dimensional Catalan number
/// `0! 1! ⋯ (k-1)! · (nk)! / (n! (n+1)! ⋯ (n+k-1)!)`.
/// The leading product equals `(k-1)!` only for `k ≤ 3`.
pub fn k_catalan(k: u32, n: u32) -> BigUint {
    assert!(k >= 1, "k-dimensional Catalan numbers need k >= 1");
    let (k, n) = (k as u64, n as u64);
    let superfactorial = (0..k).fold(BigUint::one(), |acc, i| acc * factorial(i));
    let numerator = superfactorial * factorial(n * k);
    let denominator = (0..k).fold(BigUint::one(), |acc, i| acc * factorial(n + i));
    let (q, r) = numerator.div_rem(&denominator);
    assert!(
        r.is_zero(),
        "k-Catalan division is not exact for k={k}, n={n}"
    );
    q
}

/// `ω_1 … ω_K` from `ω_n = ω_{n-1} + (n-1) ω_{n-2}`, `ω_0 = ω_1 = 1`.
pub fn involutions(k: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(k);
    let (mut prev, mut cur) = (BigUint::one(), BigUint::one());
    for n in 1..=k {
        if n > 1 {
            let next = &cur + &prev * (n as u64 - 1);
            prev = std::mem::replace(&mut cur, next);
        }
        out.push(cur.clone());
    }
    out
}

/// All partitions of `n`, lexicographically decreasing.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(cur.clone()).expect("generated partition"));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn hooks_of_3221() {
        let h = hook_lengths(&part(&[3, 2, 2, 1]));
        assert_eq!(h.rows(), &[vec![6, 4, 1], vec![4, 2], vec![3, 1], vec![1]]);
        assert_eq!(h.to_string(), "[[6,4,1],[4,2],[3,1],[1]]");
        assert_eq!(hook_lengths(&part(&[1])).rows(), &[vec![1]]);
        assert_eq!(
            hook_lengths(&part(&[2, 2])).rows(),
            &[vec![3, 2], vec![2, 1]]
        );
    }

    #[test]
    fn hook_counts() {
        assert_eq!(hook_count(&part(&[3, 2, 2, 1])), BigUint::from(70u32));
        assert_eq!(hook_count(&part(&[7])), BigUint::one());
        assert_eq!(hook_count(&part(&[2, 2])), BigUint::from(2u32));
        assert_eq!(hook_count(&Partition::empty()), BigUint::one());
    }

    #[test]
    fn catalan_values() {
        assert_eq!(k_catalan(2, 3), BigUint::from(5u32));
        assert_eq!(k_catalan(3, 2), BigUint::from(5u32));
        assert_eq!(k_catalan(4, 2), BigUint::from(14u32));
        assert_eq!(k_catalan(4, 3), BigUint::from(462u32));
        for n in 0..8 {
            assert_eq!(k_catalan(1, n), BigUint::one());
        }
        // (2n)!/(n!(n+1)!)
        for n in 0..10u64 {
            let direct = factorial(2 * n) / (factorial(n) * factorial(n + 1));
            assert_eq!(k_catalan(2, n as u32), direct);
        }
    }

    #[test]
    fn involution_prefix() {
        let w = involutions(4);
        let w: Vec<u32> = w.iter().map(|v| v.try_into().unwrap()).collect();
        assert_eq!(w, vec![1, 2, 4, 10]);
        assert!(involutions(0).is_empty());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(
            partitions(3),
            vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]
        );
    }
}
