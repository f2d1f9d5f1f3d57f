//! Small-integer number theory shared across the crate: modular arithmetic on
//! `u64`, trial-division primality, Kronecker symbols and square roots mod p.
//!
//! Everything here targets desk-scale moduli (p well below 2^40); products are
//! widened through `u128` so no intermediate overflows.

/// `a * b mod m` without overflow.
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a + b mod m`.
pub fn addmod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

/// `a - b mod m`.
pub fn submod(a: u64, b: u64, m: u64) -> u64 {
    let (a, b) = (a % m, b % m);
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

/// `a^e mod m` by square-and-multiply.
pub fn powmod(a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = a % m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Euclidean gcd.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Extended gcd over i128: returns (g, x, y) with a*x + b*y = g, g >= 0.
pub fn extgcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` mod `m` (m > 1), or None if gcd(a, m) != 1.
pub fn invmod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = extgcd((a % m) as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

/// Trial-division primality. Intended for desk-scale inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Odd primes in `[3, bound]`, ascending.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 3u64;
    while p <= bound {
        if is_prime(p) {
            out.push(p);
        }
        p += 2;
    }
    out
}

/// Prime factorization by trial division: list of (prime, exponent).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Legendre symbol (a | p) for odd prime p: returns 1, -1 or 0.
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let e = powmod(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Square root of `a` mod odd prime `p` by Tonelli-Shanks, if one exists.
///
/// The quadratic non-residue search scans 2, 3, 4, ... so the result is fully
/// deterministic.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if legendre(a as i64, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(a, (p + 1) / 4, p));
    }
    // p = q * 2^s + 1 with q odd
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while legendre(z as i64, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = powmod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// CRT for a pair of coprime moduli: x = r1 (mod m1), x = r2 (mod m2).
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    if m1 == 1 {
        return r2 % m2.max(1);
    }
    if m2 == 1 {
        return r1 % m1;
    }
    let inv = invmod(m1 % m2, m2).expect("crt moduli must be coprime");
    let diff = submod(r2 % m2, r1 % m2, m2);
    let k = mulmod(diff, inv, m2);
    r1 + m1 * k
}

/// Subexponential budget function exp(c * sqrt(ln N * ln ln N)) with the
/// o(1) term taken as zero. N must be at least 3.
pub fn l_function(n: f64, c: f64) -> f64 {
    assert!(n >= 3.0, "L(N, c) needs N >= 3");
    let ln = n.ln();
    (c * (ln * ln.ln()).sqrt()).exp()
}
