//! Bijections between the naturals and the building blocks of the element
//! grammars: pairs, tuples, integers, rationals and finite sets.
//!
//! Ranks are [`BigUint`] because elements built during long runs (large
//! sets, products of many primes) have indices far beyond `u64`. Unranking
//! takes `u64`, which is all a run ever enumerates.

use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// Cantor pairing `(x+y)(x+y+1)/2 + y`.
pub fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

pub fn pair_u64(x: u64, y: u64) -> BigUint {
    pair(&BigUint::from(x), &BigUint::from(y))
}

pub fn unpair(n: u64) -> (u64, u64) {
    let n = n as u128;
    let mut w = ((8 * n + 1).sqrt() - 1) / 2;
    while w * (w + 1) / 2 > n {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= n {
        w += 1;
    }
    let y = n - w * (w + 1) / 2;
    ((w - y) as u64, y as u64)
}

/// Rank of a tuple of fixed length `k` by iterated pairing: `[x]` ranks as
/// `x`, `[x, rest..]` as `pair(x, rank(rest))`.
pub fn rank_tuple(values: &[u64]) -> BigUint {
    match values.split_first() {
        None => BigUint::zero(),
        Some((&x, [])) => BigUint::from(x),
        Some((&x, rest)) => pair(&BigUint::from(x), &rank_tuple(rest)),
    }
}

pub fn unrank_tuple(n: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut rest = n;
    for i in 0..k {
        if i + 1 == k {
            out.push(rest);
        } else {
            let (x, r) = unpair(rest);
            out.push(x);
            rest = r;
        }
    }
    out
}

/// `0, 1, -1, 2, -2, ...`
pub fn zigzag(n: u64) -> i64 {
    if n == 0 {
        0
    } else if n % 2 == 1 {
        n.div_ceil(2) as i64
    } else {
        -((n / 2) as i64)
    }
}

pub fn zigzag_index(z: i64) -> u64 {
    match z {
        0 => 0,
        z if z > 0 => 2 * z as u64 - 1,
        z => 2 * z.unsigned_abs(),
    }
}

/// The `k`-th term (from 1) of the Calkin-Wilf sequence `1, 1/2, 2, 1/3, ...`.
pub fn calkin_wilf(k: u64) -> Rational64 {
    assert!(k >= 1);
    let (mut a, mut b) = (1i64, 1i64);
    let bits = 63 - k.leading_zeros();
    for i in (0..bits).rev() {
        if (k >> i) & 1 == 0 {
            b += a;
        } else {
            a += b;
        }
    }
    Rational64::new(a, b)
}

/// Inverse of [`calkin_wilf`] for positive rationals. Runs of equal path
/// bits are taken a quotient at a time.
pub fn calkin_wilf_index(r: &Rational64) -> BigUint {
    let (mut a, mut b) = (*r.numer() as u64, *r.denom() as u64);
    assert!(a > 0 && b > 0);
    let mut runs: Vec<(bool, u64)> = Vec::new();
    while a != b {
        if a < b {
            let q = (b - 1) / a;
            runs.push((false, q));
            b -= q * a;
        } else {
            let q = (a - 1) / b;
            runs.push((true, q));
            a -= q * b;
        }
    }
    let mut k = BigUint::one();
    for &(bit, len) in runs.iter().rev() {
        k <<= len as usize;
        if bit {
            k += (BigUint::one() << len as usize) - 1u32;
        }
    }
    k
}

/// `0, cw(1), -cw(1), cw(2), -cw(2), ...`
pub fn rational(n: u64) -> Rational64 {
    if n == 0 {
        return Rational64::zero();
    }
    let k = n.div_ceil(2);
    let r = calkin_wilf(k);
    if n % 2 == 1 {
        r
    } else {
        -r
    }
}

pub fn rational_index(r: &Rational64) -> BigUint {
    if r.is_zero() {
        return BigUint::zero();
    }
    let k = calkin_wilf_index(&r.abs());
    if *r.numer() > 0 {
        k * 2u32 - 1u32
    } else {
        k * 2u32
    }
}

pub fn set_from_bits(n: u64) -> Vec<u64> {
    (0..64).filter(|i| (n >> i) & 1 == 1).collect()
}

pub fn set_index(set: &[u64]) -> BigUint {
    let mut n = BigUint::zero();
    for &x in set {
        n.set_bit(x, true);
    }
    n
}

/// Index of `(m,n)` in the square-shell enumeration of the integer plane:
/// shell `s = max(|m|,|n|)` starts at `(2s-1)^2`, points inside a shell in
/// lexicographic order.
pub fn shell_index(m: i64, n: i64) -> BigUint {
    let s = m.unsigned_abs().max(n.unsigned_abs()) as u128;
    if s == 0 {
        return BigUint::zero();
    }
    let base = (2 * s - 1) * (2 * s - 1);
    let (mi, ni) = (m as i128, n as i128);
    let si = s as i128;
    let offset = if mi == -si {
        ni + si
    } else if mi == si {
        (2 * si + 1) + 2 * (2 * si - 1) + (ni + si)
    } else {
        (2 * si + 1) + 2 * (mi + si - 1) + i128::from(ni == si)
    };
    BigUint::from(base + offset as u128)
}

pub fn shell_point(idx: u64) -> (i64, i64) {
    if idx == 0 {
        return (0, 0);
    }
    let r = idx.sqrt();
    let s = (r + 1) / 2;
    let base = (2 * s - 1) * (2 * s - 1);
    let off = (idx - base) as i64;
    let s = s as i64;
    let side = 2 * s + 1;
    if off < side {
        (-s, off - s)
    } else if off < side + 2 * (2 * s - 1) {
        let o = off - side;
        (o / 2 - s + 1, if o % 2 == 0 { -s } else { s })
    } else {
        (s, off - side - 2 * (2 * s - 1) - s)
    }
}

/// Number of subsets `T` of `b` free positions with `j + |T|` accepted by
/// `allowed`.
pub fn count_completions(b: u64, j: u64, allowed: &dyn Fn(u64) -> bool) -> BigUint {
    let mut total = BigUint::zero();
    let mut binom = BigUint::one();
    for s in 0..=b {
        if allowed(j + s) {
            total += &binom;
        }
        binom = binom * (b - s) / (s + 1);
    }
    total
}

/// Rank of a set among the sets whose size is accepted by `allowed`,
/// ordered by bitmask value.
pub fn restricted_set_index(set: &[u64], allowed: &dyn Fn(u64) -> bool) -> BigUint {
    let mut rank = BigUint::zero();
    for (pos, &b) in set.iter().enumerate().rev() {
        let j = (set.len() - 1 - pos) as u64;
        rank += count_completions(b, j, allowed);
    }
    rank
}

pub fn restricted_set_from_index(n: u64, allowed: &dyn Fn(u64) -> bool) -> Vec<u64> {
    let target = BigUint::from(n);
    let mut width = 0u64;
    while count_completions(width, 0, allowed) <= target {
        width += 1;
    }
    let mut rest = target;
    let mut chosen = Vec::new();
    for b in (0..width).rev() {
        let j = chosen.len() as u64;
        let below = count_completions(b, j, allowed);
        if rest >= below {
            rest -= below;
            chosen.push(b);
        }
    }
    chosen.reverse();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_round_trips() {
        for n in 0..2000u64 {
            let (x, y) = unpair(n);
            assert_eq!(pair_u64(x, y), BigUint::from(n));
        }
        let (x, y) = unpair(u64::MAX);
        assert_eq!(pair_u64(x, y), BigUint::from(u64::MAX));
    }

    #[test]
    fn tuples_round_trip() {
        for k in 1..5 {
            for n in 0..500u64 {
                assert_eq!(rank_tuple(&unrank_tuple(n, k)), BigUint::from(n));
            }
        }
    }

    #[test]
    fn zigzag_starts_at_zero() {
        let firsts: Vec<i64> = (0..5).map(zigzag).collect();
        assert_eq!(firsts, vec![0, 1, -1, 2, -2]);
        for n in 0..1000 {
            assert_eq!(zigzag_index(zigzag(n)), n);
        }
    }

    #[test]
    fn calkin_wilf_prefix() {
        let got: Vec<Rational64> = (1..8).map(calkin_wilf).collect();
        let want = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 2), (2, 3), (3, 1)]
            .map(|(a, b)| Rational64::new(a, b));
        assert_eq!(got, want);
        for k in 1..5000u64 {
            assert_eq!(calkin_wilf_index(&calkin_wilf(k)), BigUint::from(k));
        }
    }

    #[test]
    fn rationals_round_trip() {
        assert_eq!(rational(0), Rational64::zero());
        assert_eq!(rational(2), Rational64::from_integer(-1));
        for n in 0..3000u64 {
            assert_eq!(rational_index(&rational(n)), BigUint::from(n));
        }
    }

    #[test]
    fn shells_round_trip_and_cover() {
        assert_eq!(shell_point(0), (0, 0));
        assert_eq!(shell_point(1), (-1, -1));
        assert_eq!(shell_point(8), (1, 1));
        let mut seen = std::collections::HashSet::new();
        for n in 0..(11 * 11) {
            let (m, k) = shell_point(n);
            assert!(m.abs() <= 5 && k.abs() <= 5);
            assert!(seen.insert((m, k)));
            assert_eq!(shell_index(m, k), BigUint::from(n));
        }
    }

    #[test]
    fn restricted_sets_follow_bitmask_order() {
        let even = |s: u64| s % 2 == 0;
        let brute: Vec<Vec<u64>> = (0u64..1024)
            .map(set_from_bits)
            .filter(|s| s.len() % 2 == 0)
            .collect();
        for (i, s) in brute.iter().enumerate() {
            assert_eq!(restricted_set_from_index(i as u64, &even), *s);
            assert_eq!(restricted_set_index(s, &even), BigUint::from(i));
        }
    }
}
