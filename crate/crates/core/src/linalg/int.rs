use num_traits::Signed;

/// Arbitrary-precision integer. Small values are stored inline.
pub type Int = dashu_int::IBig;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Remainder in `[0, |m|)`.
pub(crate) fn rem_floor(a: &Int, m: &Int) -> Int {
    let m = m.abs();
    let r = a % &m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

pub(crate) fn div_floor(a: &Int, m: &Int) -> Int {
    let q = a / m;
    let r = a - &q * m;
    if !r.is_zero() && (r.is_negative() != m.is_negative()) {
        q - Int::ONE
    } else {
        q
    }
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    let (mut x, mut y) = (a.abs(), b.abs());
    while !y.is_zero() {
        let r = &x % &y;
        x = std::mem::replace(&mut y, r);
    }
    x
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn xgcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Int::ONE, Int::ZERO);
    let (mut t0, mut t1) = (Int::ZERO, Int::ONE);
    while !r1.is_zero() {
        let q = div_floor(&r0, &r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// For `0 <= g < n`, a unit `u` of `Z/n` with `u*g = gcd(g, n) (mod n)`.
pub fn mod_inverse_unit(g: &Int, n: &Int) -> Int {
    let d = gcd(g, n);
    if d.is_zero() {
        return Int::ONE;
    }
    let g1 = g / &d;
    let n1 = n / &d;
    let base = if n1.is_one() {
        Int::ZERO
    } else {
        let (_, s, _) = xgcd(&g1, &n1);
        rem_floor(&s, &n1)
    };
    // base + k*n1 is coprime to n for some k < n
    let mut u = base;
    loop {
        if gcd(&u, n).is_one() {
            return rem_floor(&u, n);
        }
        u += &n1;
    }
}
