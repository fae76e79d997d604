//! Dense polynomials over `F_p`, lowest coefficient first.

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod_prime(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `b`.
pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lead_inv = inv_mod_prime(b[db], p);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut quot = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        quot[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            let t = mulmod(c, bi, p);
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// The inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
    trim(&mut r0);
    while !r1.is_empty() {
        let (qt, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&qt, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod_prime(r0[0], p);
    let mut out: Vec<u64> = s0.iter().map(|&x| mulmod(x, c, p)).collect();
    trim(&mut out);
    Some(rem(&out, m, p))
}

pub(crate) fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test for a monic polynomial `f` of degree `r` over `F_p`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let r = f.len() - 1;
    if r == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^{p^i} mod f for i = 0..=r.
    let mut frob = vec![rem(&x, f, p)];
    for _ in 0..r {
        let prev = frob.last().unwrap();
        frob.push(powmod_poly(prev, p, f, p));
    }
    if !sub(&frob[r], &x, p).is_empty() {
        return false;
    }
    for q in prime_factors(r as u64) {
        let h = sub(&frob[r / q as usize], &x, p);
        if gcd(&h, f, p).len() != 1 {
            return false;
        }
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_matches_trial_division() {
        // All monic polynomials of degree <= 4 over F_2 and F_3, against a
        // brute-force root / factor search.
        for p in [2u64, 3] {
            for r in 1..=4usize {
                let total = p.pow(r as u32);
                for n in 0..total {
                    let mut f: Vec<u64> = (0..r).map(|i| (n / p.pow(i as u32)) % p).collect();
                    f.push(1);
                    let brute = (1..=r / 2).all(|d| {
                        (0..p.pow(d as u32)).all(|g| {
                            let mut h: Vec<u64> = (0..d).map(|i| (g / p.pow(i as u32)) % p).collect();
                            h.push(1);
                            !rem(&f, &h, p).is_empty()
                        })
                    });
                    assert_eq!(is_irreducible(&f, p), brute, "p={p} f={f:?}");
                }
            }
        }
    }

    #[test]
    fn inverse_mod_field() {
        let f = vec![1, 1, 1];
        let a = vec![0, 1];
        let inv = inverse_mod(&a, &f, 2).unwrap();
        assert_eq!(rem(&mul(&a, &inv, 2), &f, 2), vec![1]);
    }
}
