//! Exact integer linear algebra for recurrence fitting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Divides a row by the gcd of its entries.
fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Integer-preserving Gauss–Jordan elimination. Every row operation is
/// `row_i ← a·row_i − b·row_p` with `a, b` the cofactors of the two entries'
/// gcd, followed by removal of the row's content, so entries stay integral
/// and no fractions ever appear. Returns the pivot columns; row `r` holds the
/// pivot for `pivots[r]` and every other row is zero in that column.
pub fn reduce(m: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].bits())
        else {
            continue;
        };
        m.swap(r, p);
        make_primitive(&mut m[r]);
        if m[r][c].is_negative() {
            m[r].iter_mut().for_each(|x| *x = -&*x);
        }
        let (before, rest) = m.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let a = &pivot_row[c] / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = &a * &*x - &b * y;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of the integer nullspace, one primitive vector per free column.
/// The basis depends only on the row space (it is read off the reduced
/// echelon form), not on the order in which rows were supplied.
pub fn nullspace(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let pivots = reduce(&mut m, ncols);
    let lcm = pivots
        .iter()
        .enumerate()
        .fold(BigInt::one(), |l, (r, &c)| l.lcm(&m[r][c]));
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigInt::zero(); ncols];
        v[free] = lcm.clone();
        for (r, &c) in pivots.iter().enumerate() {
            if !m[r][free].is_zero() {
                v[c] = -(&m[r][free] * (&lcm / &m[r][c]));
            }
        }
        make_primitive(&mut v);
        basis.push(v);
    }
    basis
}

/// Primes below 2^64, tried in order for the modular rank certificate.
pub const RANK_PRIMES: [u64; 3] = [
    (1 << 61) - 1,
    (1 << 62) - 57,
    u64::MAX - 58, // 2^64 - 59
];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn to_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    u64::try_from(&r).expect("residue fits in u64")
}

/// Rank of a matrix over `Z/p`. Since every minor that is nonzero mod `p` is
/// nonzero over the integers, a full column rank here proves the integer
/// matrix has a trivial nullspace.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, ncols: usize, p: u64) -> usize {
    let nrows = m.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = pow_mod(m[r][c], p - 2, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let factor = mul_mod(row[c], inv, p);
            for (x, &y) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                let sub = mul_mod(factor, y, p);
                *x = if *x >= sub { *x - sub } else { *x + (p - sub) };
            }
        }
        r += 1;
    }
    r
}
