//! Factorization over the rationals: squarefree decomposition, reduction
//! to a monic integer polynomial, factorization modulo a good prime,
//! quadratic Hensel lifting along a factor tree, and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{Field, UniPoly};

use super::finite;

/// Factor a monic squarefree polynomial over ℚ into monic irreducibles.
pub fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let field = f.field.clone();
    if f.deg() == 1 {
        return vec![f.monic()];
    }
    // clear denominators: g = c f with integer coefficients
    let mut den = BigInt::one();
    for c in &f.coeffs {
        den = den.lcm(c.as_rational().unwrap().denom());
    }
    let g: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.numer() * (&den / r.denom())
        })
        .collect();
    // monicize: F(y) = L^{n-1} g(y/L), L = lc(g)
    let n = g.len() - 1;
    let lc = g[n].clone();
    let mut fint = vec![BigInt::zero(); n + 1];
    // coefficient of y^i: g_i * L^{n-1-i}
    for i in 0..=n {
        fint[i] = &g[i] * lc.pow((n - 1 - i.min(n - 1)) as u32);
    }
    // the leading coefficient works out to L^{n-1} * lc / L^{n-1} = ... force monic:
    fint[n] = BigInt::one();
    let monic_factors = zassenhaus_monic(&fint);
    // map back: h(x) = H(L x) / L^{deg H}, monic over ℚ
    let mut out = Vec::new();
    for h in monic_factors {
        let d = h.len() - 1;
        let coeffs: Vec<BigRational> = h
            .iter()
            .enumerate()
            .map(|(i, c)| {
                // coefficient of x^i: c * L^i / L^d
                BigRational::new(c * lc.pow(i as u32), lc.pow(d as u32))
            })
            .collect();
        let poly = UniPoly::new(
            field.clone(),
            coeffs
                .into_iter()
                .map(|r| {
                    field
                        .from_bigint(r.numer())
                        .div(&field.from_bigint(r.denom()))
                })
                .collect(),
        );
        out.push(poly.monic());
    }
    out
}

pub(crate) fn zp_deg(a: &[BigInt]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn zp_trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
    a
}

pub(crate) fn zp_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (&out[i + j] + x * y).mod_floor(m);
        }
    }
    zp_trim(out)
}

fn zp_add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&z);
        let y = b.get(i).unwrap_or(&z);
        out.push((x + y).mod_floor(m));
    }
    zp_trim(out)
}

fn zp_sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&z);
        let y = b.get(i).unwrap_or(&z);
        out.push((x - y).mod_floor(m));
    }
    zp_trim(out)
}

/// Division with remainder by a monic polynomial, coefficients mod m.
pub(crate) fn zp_divrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = zp_deg(b).expect("monic divisor");
    debug_assert!(b[db].is_one());
    let mut rem: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    rem = zp_trim(rem);
    let mut quo = vec![BigInt::zero(); rem.len().saturating_sub(db)];
    while let Some(dr) = zp_deg(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr].clone();
        quo[dr - db] = c.clone();
        for j in 0..=db {
            rem[dr - db + j] = (&rem[dr - db + j] - &c * &b[j]).mod_floor(m);
        }
        rem = zp_trim(rem);
    }
    (zp_trim(quo), rem)
}

fn zp_center(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

/// Exact division in ℤ[x] by a monic divisor; None if not divisible.
fn zp_exact_div_z(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = zp_deg(b)?;
    let mut rem = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len().saturating_sub(db)];
    while let Some(dr) = zp_deg(&rem) {
        if dr < db {
            return None;
        }
        let c = rem[dr].clone();
        quo[dr - db] = c.clone();
        for j in 0..=db {
            rem[dr - db + j] = &rem[dr - db + j] - &c * &b[j];
        }
        rem = zp_trim(rem);
    }
    Some(zp_trim(quo))
}

fn to_fp(a: &[BigInt], field: &Field) -> UniPoly {
    UniPoly::new(field.clone(), a.iter().map(|c| field.from_bigint(c)).collect())
}

fn from_fp(f: &UniPoly) -> Vec<BigInt> {
    f.coeffs.iter().map(|c| BigInt::from(c.as_mod().unwrap())).collect()
}

/// Factor a monic squarefree integer polynomial into monic integer
/// irreducibles (Zassenhaus).
fn zassenhaus_monic(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = zp_deg(f).expect("nonzero");
    if n == 1 {
        return vec![f.to_vec()];
    }
    // choose a prime keeping f squarefree mod p; prefer few modular factors
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let mut best: Option<(u64, Vec<UniPoly>)> = None;
    let mut tried = 0;
    for &p in &primes {
        let fp_field = Field::prime(p);
        let fp = to_fp(f, &fp_field);
        if fp.degree() != Some(n) {
            continue;
        }
        if !fp.gcd(&fp.derivative()).is_constant() {
            continue;
        }
        let parts = finite::factor_squarefree(&fp.monic());
        tried += 1;
        match &best {
            None => best = Some((p, parts)),
            Some((_, b)) if parts.len() < b.len() => best = Some((p, parts)),
            _ => {}
        }
        if tried >= 3 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, parts) = best.expect("a good prime exists for squarefree input");
    if parts.len() == 1 {
        return vec![f.to_vec()];
    }
    // Landau-Mignotte bound for factor coefficients
    let height = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = isqrt_big(&BigInt::from(n as u64 + 1)) * (BigInt::one() << n) * height;
    let p_big = BigInt::from(p);
    let mut modulus = p_big.clone();
    let mut k = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &p_big;
        k += 1;
    }
    let _ = k;
    let factors_p: Vec<Vec<BigInt>> = parts.iter().map(from_fp).collect();
    let lifted = hensel_tree(f, &factors_p, &p_big, &modulus);
    // subset recombination
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        for subset in super::subsets_of_size(remaining.len(), size) {
            let mut cand = vec![BigInt::one()];
            for &i in &subset {
                cand = zp_mul_mod(&cand, &remaining[i], &modulus);
            }
            let cand = zp_center(&cand, &modulus);
            if let Some(q) = zp_exact_div_z(&rest, &cand) {
                out.push(cand);
                rest = q;
                let mut keep = Vec::new();
                for (i, fac) in remaining.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(fac);
                    }
                }
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if zp_deg(&rest).map_or(false, |d| d > 0) {
        out.push(rest);
    }
    out
}

fn isqrt_big(n: &BigInt) -> BigInt {
    n.sqrt() + 1
}

/// Lift a modular factorization of a monic integer polynomial from mod p to
/// mod `target` along a balanced factor tree with quadratic steps.
pub(crate) fn hensel_tree(
    f: &[BigInt],
    factors_p: &[Vec<BigInt>],
    p: &BigInt,
    target: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors_p.len() == 1 {
        let mut v: Vec<BigInt> = f.iter().map(|c| c.mod_floor(target)).collect();
        v = zp_trim(v);
        return vec![v];
    }
    let mid = factors_p.len() / 2;
    let (left, right) = factors_p.split_at(mid);
    let mut g0 = vec![BigInt::one()];
    for h in left {
        g0 = zp_mul_mod(&g0, h, p);
    }
    let mut h0 = vec![BigInt::one()];
    for h in right {
        h0 = zp_mul_mod(&h0, h, p);
    }
    // Bezout over F_p
    let fp_field = Field::prime(u64::try_from(p).expect("small prime"));
    let gp = to_fp(&g0, &fp_field);
    let hp = to_fp(&h0, &fp_field);
    let (one, s, t) = gp.extended_gcd(&hp);
    assert!(one.is_one(), "modular factors must be coprime");
    let (g, h, _, _) = hensel2(f, &g0, &h0, &from_fp(&s), &from_fp(&t), p, target);
    let mut out = hensel_tree(&g, left, p, target);
    out.extend(hensel_tree(&h, right, p, target));
    out
}

/// One-pair quadratic Hensel lifting: from f ≡ g h (mod p) with
/// s g + t h ≡ 1 to the same data mod at least `target`.
fn hensel2(
    f: &[BigInt],
    g0: &[BigInt],
    h0: &[BigInt],
    s0: &[BigInt],
    t0: &[BigInt],
    p: &BigInt,
    target: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let mut m = p.clone();
    let mut g = g0.to_vec();
    let mut h = h0.to_vec();
    let mut s = s0.to_vec();
    let mut t = t0.to_vec();
    while &m < target {
        let m2 = &m * &m;
        // e = f - g h mod m2
        let gh = zp_mul_mod(&g, &h, &m2);
        let e = zp_sub_mod(f, &gh, &m2);
        // (q, r) = divrem(s e, h)
        let se = zp_mul_mod(&s, &e, &m2);
        let (q, r) = zp_divrem_monic_mod(&se, &h, &m2);
        // g* = g + t e + q g ; h* = h + r
        let te = zp_mul_mod(&t, &e, &m2);
        let qg = zp_mul_mod(&q, &g, &m2);
        g = zp_add_mod(&zp_add_mod(&g, &te, &m2), &qg, &m2);
        h = zp_add_mod(&h, &r, &m2);
        // refresh Bezout: b = s g + t h - 1
        let sg = zp_mul_mod(&s, &g, &m2);
        let th = zp_mul_mod(&t, &h, &m2);
        let b = zp_sub_mod(&zp_add_mod(&sg, &th, &m2), &[BigInt::one()], &m2);
        let sb = zp_mul_mod(&s, &b, &m2);
        let (c, d) = zp_divrem_monic_mod(&sb, &h, &m2);
        s = zp_sub_mod(&s, &d, &m2);
        let tb = zp_mul_mod(&t, &b, &m2);
        let cg = zp_mul_mod(&c, &g, &m2);
        t = zp_sub_mod(&zp_sub_mod(&t, &tb, &m2), &cg, &m2);
        m = m2;
    }
    (g, h, s, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn simple_split() {
        // x^2 - 1 = (x-1)(x+1)
        let f = UniPoly::from_ints(&q(), &[-1, 0, 1]);
        let mut parts = factor_squarefree(&f);
        parts.sort_by_key(|p| p.coeff(0).to_string());
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], UniPoly::from_ints(&q(), &[-1, 1]));
        assert_eq!(parts[1], UniPoly::from_ints(&q(), &[1, 1]));
    }

    #[test]
    fn irreducible_sextic() {
        // z^6 - z^2 + 1 is irreducible over ℚ
        let f = UniPoly::from_ints(&q(), &[1, 0, -1, 0, 0, 0, 1]);
        let parts = factor_squarefree(&f);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0], f);
    }

    #[test]
    fn cyclotomic_like_products() {
        // z^6 - 1 = (z-1)(z+1)(z^2+z+1)(z^2-z+1)
        let f = UniPoly::from_ints(&q(), &[-1, 0, 0, 0, 0, 0, 1]);
        let parts = factor_squarefree(&f);
        assert_eq!(parts.len(), 4);
        let mut prod = UniPoly::one(&q());
        for p in &parts {
            prod = prod.mul(p);
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn nonmonic_leading_rational() {
        // monic with fractions: x^2 - 1/4 = (x-1/2)(x+1/2)
        let field = q();
        let f = UniPoly::new(
            field.clone(),
            vec![field.from_rational(-1, 4), field.zero(), field.one()],
        );
        let parts = factor_squarefree(&f);
        assert_eq!(parts.len(), 2);
        let mut prod = UniPoly::one(&field);
        for p in &parts {
            prod = prod.mul(p);
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn needs_recombination() {
        // (x^2+1)(x^2+3): mod many primes splits differently; tests subsets
        let a = UniPoly::from_ints(&q(), &[1, 0, 1]);
        let b = UniPoly::from_ints(&q(), &[3, 0, 1]);
        let f = a.mul(&b);
        let mut parts = factor_squarefree(&f);
        parts.sort_by_key(|p| p.coeff(0).to_string());
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], a);
        assert_eq!(parts[1], b);
    }
}
