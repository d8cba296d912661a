//! Factorization of integer polynomials into irreducibles over ℚ.
//!
//! Zassenhaus: factor modulo a small prime (distinct-degree, then
//! Cantor–Zassenhaus equal-degree splitting), Hensel-lift the modular
//! factors, recombine subsets by trial division over ℤ.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::ZPoly;

type MPoly = Vec<BigInt>;

fn trim(v: &mut MPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn modp(v: &BigInt, m: &BigInt) -> BigInt {
    v.mod_floor(m)
}

fn reduce(a: &[BigInt], m: &BigInt) -> MPoly {
    let mut out: MPoly = a.iter().map(|c| modp(c, m)).collect();
    trim(&mut out);
    out
}

fn padd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> MPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let out: MPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    reduce(&out, m)
}

fn psub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> MPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let out: MPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    reduce(&out, m)
}

fn pmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> MPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    modp(&e.x, m)
}

/// Division with remainder; the divisor's leading coefficient must be a
/// unit modulo `m`.
fn pdivrem(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (MPoly, MPoly) {
    let db = b.len() - 1;
    let inv = inv_mod(b.last().unwrap(), m);
    let mut r = reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = modp(&(r.last().unwrap() * &inv), m);
        for (j, y) in b.iter().enumerate() {
            r[k + j] = modp(&(&r[k + j] - &c * y), m);
        }
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn pmonic(a: &[BigInt], m: &BigInt) -> MPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let inv = inv_mod(a.last().unwrap(), m);
    reduce(&a.iter().map(|c| c * &inv).collect::<Vec<_>>(), m)
}

fn pgcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> MPoly {
    let mut x = reduce(a, p);
    let mut y = reduce(b, p);
    while !y.is_empty() {
        let r = pdivrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    pmonic(&x, p)
}

/// `(s, t)` with `s*a + t*b = 1 (mod p)` for coprime `a`, `b`.
fn pbezout(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (MPoly, MPoly) {
    let (mut r0, mut r1) = (reduce(a, p), reduce(b, p));
    let (mut s0, mut s1): (MPoly, MPoly) = (vec![BigInt::one()], Vec::new());
    let (mut t0, mut t1): (MPoly, MPoly) = (Vec::new(), vec![BigInt::one()]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let s2 = psub(&s0, &pmul(&q, &s1, p), p);
        let t2 = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(r0.len(), 1, "factors are not coprime");
    let inv = inv_mod(&r0[0], p);
    let k = [inv];
    (pmul(&s0, &k, p), pmul(&t0, &k, p))
}

fn ppowmod(base: &[BigInt], e: &BigUint, f: &[BigInt], p: &BigInt) -> MPoly {
    let mut result: MPoly = vec![BigInt::one()];
    let mut b = pdivrem(base, f, p).1;
    for i in 0..e.bits() {
        if e.bit(i) {
            result = pdivrem(&pmul(&result, &b, p), f, p).1;
        }
        b = pdivrem(&pmul(&b, &b, p), f, p).1;
    }
    result
}

fn deriv(a: &[BigInt], m: &BigInt) -> MPoly {
    let out: MPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    reduce(&out, m)
}

/// Distinct-degree factorization of a monic squarefree `f` over F_p.
fn ddf(f: &[BigInt], p: &BigInt) -> Vec<(MPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: MPoly = vec![BigInt::zero(), BigInt::one()];
    let pu = p.to_biguint().unwrap();
    let mut h = x.clone();
    let mut d = 1;
    while f.len() > 2 * d {
        h = ppowmod(&h, &pu, &f, p);
        let g = pgcd(&psub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = pdivrem(&f, &g, p).0;
            h = pdivrem(&h, &f, p).1;
            out.push((g, d));
        }
        d += 1;
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
fn edf(f: &[BigInt], d: usize, p: &BigInt, rng: &mut ChaCha8Rng) -> Vec<MPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let pu = p.to_biguint().unwrap();
    let e = (pu.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: MPoly = {
            let mut v: MPoly = (0..n)
                .map(|_| BigInt::from(rng.gen_range(0..u64::MAX)) % p)
                .collect();
            trim(&mut v);
            v
        };
        if a.len() < 2 {
            continue;
        }
        let b = psub(&ppowmod(&a, &e, f, p), &[BigInt::one()], p);
        let g = pgcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = pdivrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&pmonic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|n| (3..).step_by(2).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

/// One Hensel step pair: lifts `g*h = f (mod p^j)` to modulus `p^(j+1)`.
fn hensel_pair(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    p: &BigInt,
    pj: &BigInt,
) -> (MPoly, MPoly) {
    let m = pj * p;
    let gh = pmul(g, h, &m);
    let diff = psub(&reduce(f, &m), &gh, &m);
    let e: MPoly = diff.iter().map(|c| c / pj).collect();
    let e = reduce(&e, p);
    let (q, r) = pdivrem(&pmul(&e, t, p), g, p);
    let dh = padd(&pmul(&e, s, p), &pmul(&q, h, p), p);
    let scale = [pj.clone()];
    let g2 = padd(g, &pmul(&r, &scale, &m), &m);
    let h2 = padd(h, &pmul(&dh, &scale, &m), &m);
    (g2, h2)
}

/// Lifts monic modular factors of `f` (monic modulo p) to modulus `p^k`.
fn hensel_lift(f: &[BigInt], factors: &[MPoly], p: &BigInt, k: u32) -> Vec<MPoly> {
    if factors.len() == 1 {
        let m = p.pow(k);
        return vec![pmonic(f, &m)];
    }
    let g0 = factors[0].clone();
    let h0 = factors[1..]
        .iter()
        .fold(vec![BigInt::one()], |acc, x| pmul(&acc, x, p));
    let (s, t) = pbezout(&g0, &h0, p);
    let (mut g, mut h) = (g0, h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let (g2, h2) = hensel_pair(f, &g, &h, &s, &t, p, &pj);
        g = g2;
        h = h2;
        pj *= p;
    }
    let mut out = vec![g];
    out.extend(hensel_lift(&h, &factors[1..], p, k));
    out
}

fn symmetric(v: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ZPoly::new(
        v.iter()
            .map(|c| {
                let c = modp(c, m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Factors a primitive squarefree polynomial of degree ≥ 2 with nonzero
/// constant term.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.degree().unwrap();
    let lead = f.lead();
    let fc: MPoly = f.coeffs().to_vec();
    let p = small_primes()
        .map(BigInt::from)
        .find(|p| {
            if (&lead % p).is_zero() {
                return false;
            }
            let fp = reduce(&fc, p);
            pgcd(&fp, &deriv(&fp, p), p).len() == 1
        })
        .unwrap();
    let fm = pmonic(&fc, &p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut modular = Vec::new();
    for (g, d) in ddf(&fm, &p) {
        modular.extend(edf(&g, d, &p, &mut rng));
    }
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let bound = BigInt::from(2) * lead.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * f.max_norm();
    let mut k = 1u32;
    while p.pow(k) <= bound {
        k += 1;
    }
    let m = p.pow(k);
    // f * lead^{-1} modulo p^k is monic and is what the factors lift against.
    let f_monic = pmonic(&fc, &m);
    let mut lifted = hensel_lift(&f_monic, &modular, &p, k);

    let mut result = Vec::new();
    let mut current = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for combo in combinations(lifted.len(), size) {
            let lc = [current.lead()];
            let prod = combo.iter().fold(lc.to_vec(), |acc, &i| pmul(&acc, &lifted[i], &m));
            let cand = symmetric(&prod, &m).primitive_part();
            if let Some(q) = current.exact_div(&cand) {
                result.push(cand);
                current = q.primitive_part();
                let keep: Vec<MPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, x)| x.clone())
                    .collect();
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if current.degree().unwrap_or(0) > 0 {
        result.push(current);
    }
    result
}

/// Distinct irreducible factors over ℚ of a nonzero integer polynomial, each
/// primitive with positive leading coefficient, sorted.
pub fn irreducible_factors(f: &ZPoly) -> Vec<ZPoly> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut f = f.primitive_part();
    let mut out = Vec::new();
    // Strip the factor x.
    let zeros = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(ZPoly::from_i64s(&[0, 1]));
        f = ZPoly::new(f.coeffs()[zeros..].to_vec());
    }
    if f.degree().unwrap_or(0) == 0 {
        out.sort();
        return out;
    }
    let fq = f.to_q();
    let g = fq.gcd(&fq.derivative());
    let sqf = fq.divrem(&g).0.to_primitive_z();
    if sqf.degree() == Some(1) {
        out.push(sqf);
    } else {
        out.extend(zassenhaus(&sqf));
    }
    let mut out: Vec<ZPoly> = out.into_iter().map(|p| p.primitive_part()).collect();
    out.sort();
    out.dedup();
    out
}
