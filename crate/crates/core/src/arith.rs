//! Small integer helpers shared by the exact linear algebra and degree code.

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g and g = gcd(a, b) >= 0.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Coefficients c with sum(c[i] * d[i]) = gcd(d). Returns (gcd, coefficients).
/// The gcd of an all-zero vector is 0.
pub fn egcd_vec(d: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coeffs: Vec<i64> = Vec::with_capacity(d.len());
    for &v in d {
        let (g2, x, y) = egcd(g, v);
        for c in coeffs.iter_mut() {
            *c *= x;
        }
        coeffs.push(y);
        g = g2;
    }
    (g, coeffs)
}

/// Modular inverse of a mod n, if gcd(a, n) = 1.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (g, x, _) = egcd((a % n) as i64, n as i64);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(n as i64) as u64)
}
