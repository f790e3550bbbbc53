//! Integer helpers: gcd/lcm, modular arithmetic on `u128`, primality and
//! factorization of group orders.
//!
//! Group orders here are at most a few powers of a field size that itself
//! fits in 64 bits, so `u128` is enough. Factorization is trial division up
//! to a small bound followed by Brent's variant of Pollard rho.

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple. Panics on overflow, which would mean a period
/// beyond anything representable anyway.
pub fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).checked_mul(b).expect("lcm overflow")
}

pub fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(m > 0);
    if m <= u64::MAX as u128 {
        return ((a % m) * (b % m)) % m;
    }
    // double-and-add; only reached for moduli above 2^64
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    // extended Euclid on signed values; inputs stay below 2^127 in practice
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u128)
}

const SMALL_PRIMES: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin. Deterministic below 3.3e24 with these bases, which covers
/// every order this crate produces in practice.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let m = 128u64;
    for c in 1u128.. {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut y, mut r, mut q) = (2u128, 1u64, 1u128);
        let (x, ys, mut g) = loop {
            let x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            let (ys, g) = loop {
                let ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                let g = gcd(q, n);
                k += m;
                if k >= r || g != 1 {
                    break (ys, g);
                }
            };
            r *= 2;
            if g != 1 {
                break (x, ys, g);
            }
        };
        if g == n {
            let mut ys = ys;
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Prime factorization as `(prime, exponent)` pairs sorted by prime.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut d = 2u128;
    while d <= 1000 && d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![];
    if n > 1 {
        stack.push(n);
    }
    let mut primes = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let f = pollard_brent(m);
        stack.push(f);
        stack.push(m / f);
    }
    primes.sort_unstable();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out.sort_unstable();
    out
}

/// Merge two factorizations (multiplication of the underlying integers).
pub fn merge_factors(a: &[(u128, u32)], b: &[(u128, u32)]) -> Vec<(u128, u32)> {
    let mut out = a.to_vec();
    for &(p, e) in b {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, f)) => *f += e,
            None => out.push((p, e)),
        }
    }
    out.sort_unstable();
    out
}

/// All positive divisors in ascending order.
pub fn divisors(n: u128) -> Vec<u128> {
    let mut divs = vec![1u128];
    for (p, e) in factorize(n) {
        let current = divs.clone();
        let mut pk = 1u128;
        for _ in 0..e {
            pk *= p;
            divs.extend(current.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// Smallest `t >= 0` with `p^t >= j`.
pub fn ceil_log(p: u128, j: u128) -> u32 {
    let mut t = 0;
    let mut pt = 1u128;
    while pt < j {
        pt *= p;
        t += 1;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_factor(mut n: u128) -> Vec<(u128, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factorization_matches_trial_division() {
        for n in 1..3000u128 {
            assert_eq!(factorize(n), brute_factor(n), "n = {n}");
        }
        // 5^18 - 1 and 2^64 - 1
        let n = 5u128.pow(18) - 1;
        let f = factorize(n);
        assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u128>(), n);
        assert!(f.iter().all(|&(p, _)| is_prime(p)));
        assert_eq!(
            factorize((1u128 << 64) - 1),
            vec![(3, 1), (5, 1), (17, 1), (257, 1), (641, 1), (65537, 1), (6700417, 1)]
        );
    }

    #[test]
    fn large_semiprime_splits() {
        let (a, b) = (1_000_000_007u128, 998_244_353u128);
        assert_eq!(factorize(a * b), vec![(b, 1), (a, 1)]);
        let big = 18446744073709551557u128; // largest prime below 2^64
        assert!(is_prime(big));
        assert_eq!(factorize(big * 3), vec![(3, 1), (big, 1)]);
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(pow_mod(2, 10, 1000), 24);
        let m = (1u128 << 100) + 277;
        assert_eq!(mul_mod(m - 1, m - 1, m), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 3), 2);
        assert_eq!(ceil_log(5, 5), 1);
        assert_eq!(lcm(4, 6), 12);
    }
}
