//! Scalar arithmetic in prime fields of size at most 251.

/// Returns true when `p` is a prime in `2..=251`.
pub fn is_supported_prime(p: u8) -> bool {
    if !(2..=251).contains(&p) {
        return false;
    }
    let p = p as u32;
    (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `a + b mod p`.
#[inline]
pub fn add(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 + b as u16) % p as u16) as u8
}

/// `a - b mod p`.
#[inline]
pub fn sub(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 + p as u16 - b as u16) % p as u16) as u8
}

/// `-a mod p`.
#[inline]
pub fn neg(a: u8, p: u8) -> u8 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// `a * b mod p`.
#[inline]
pub fn mul(a: u8, b: u8, p: u8) -> u8 {
    ((a as u16 * b as u16) % p as u16) as u8
}

/// Multiplicative inverse of a nonzero residue.
pub fn inv(a: u8, p: u8) -> u8 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow(a, (p - 2) as u64, p)
}

/// `a^e mod p`.
pub fn pow(a: u8, mut e: u64, p: u8) -> u8 {
    let mut base = (a % p) as u32;
    let mut acc = 1u32 % p as u32;
    let m = p as u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u8
}

/// Reduces a signed integer into `[0, p)`.
#[inline]
pub fn from_i64(v: i64, p: u8) -> u8 {
    v.rem_euclid(p as i64) as u8
}

/// Lookup table of `c * x mod p` for all `x < p`.
pub(crate) fn mul_table(c: u8, p: u8) -> [u8; 256] {
    let mut t = [0u8; 256];
    for (x, slot) in t.iter_mut().enumerate().take(p as usize) {
        *slot = mul(c, x as u8, p);
    }
    t
}
