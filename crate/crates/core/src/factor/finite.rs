//! Univariate factorization over finite fields (prime fields and towers):
//! distinct-degree splitting followed by Cantor-Zassenhaus equal-degree
//! splitting, with the trace construction in characteristic 2.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::arith::UniPoly;

use super::SplitMix;

/// Factor a monic squarefree polynomial over a finite field into monic
/// irreducible factors (unsorted).
pub fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let field = f.field.clone();
    let q = field.order().expect("finite field");
    if f.deg() == 0 {
        return Vec::new();
    }
    if f.deg() == 1 {
        return vec![f.monic()];
    }
    let x = UniPoly::x(&field);
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.deg() >= 1 {
        d += 1;
        if rest.deg() < 2 * d {
            out.push(rest.monic());
            break;
        }
        h = h.pow_mod(&q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_constant() {
            let parts = equal_degree(&g, d, &q);
            out.extend(parts);
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
        }
    }
    out
}

fn equal_degree(g: &UniPoly, d: usize, q: &BigInt) -> Vec<UniPoly> {
    let k = g.deg() / d;
    if k == 1 {
        return vec![g.monic()];
    }
    let field = g.field.clone();
    let p = field.characteristic();
    let mut rng = SplitMix::from_poly(g);
    let qe = field.order().unwrap().to_u64().unwrap_or(u64::MAX);
    loop {
        // random polynomial of degree < deg g
        let coeffs: Vec<_> = (0..g.deg())
            .map(|_| field.element_by_index(rng.next() % qe.max(2)))
            .collect();
        let r = UniPoly::new(field.clone(), coeffs);
        if r.is_constant() {
            continue;
        }
        let shared = r.gcd(g);
        if !shared.is_constant() && shared.deg() < g.deg() {
            let mut out = equal_degree(&shared, d, q);
            out.extend(equal_degree(&g.exact_div(&shared), d, q));
            return out;
        }
        let s = if p == 2 {
            // trace map: sum of r^(2^i) for i < m*d where q = 2^m
            let m = q.bits() - 1;
            let mut acc = UniPoly::zero(&field);
            let mut t = r.rem(g);
            for _ in 0..(m as usize * d) {
                acc = acc.add(&t).rem(g);
                t = t.mul(&t).rem(g);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigInt::one()) / BigInt::from(2);
            r.pow_mod(&e, g)
        };
        let h = s.sub(&UniPoly::one(&field)).gcd(g);
        if !h.is_constant() && h.deg() < g.deg() {
            let mut out = equal_degree(&h, d, q);
            out.extend(equal_degree(&g.exact_div(&h), d, q));
            return out;
        }
    }
}

/// Irreducibility test over a finite field.
pub fn is_irreducible(f: &UniPoly) -> bool {
    if f.is_constant() {
        return false;
    }
    if f.deg() == 1 {
        return true;
    }
    let field = f.field.clone();
    let q = field.order().expect("finite field");
    let e = f.deg();
    let x = UniPoly::x(&field);
    let mut xq = x.clone();
    for _ in 0..e {
        xq = xq.pow_mod(&q, f);
    }
    if !xq.sub(&x).rem(f).is_zero() {
        return false;
    }
    let mut primes = Vec::new();
    let mut k = e;
    let mut d = 2;
    while d * d <= k {
        if k % d == 0 {
            primes.push(d);
            while k % d == 0 {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        primes.push(k);
    }
    for ell in primes {
        let mut xp = x.clone();
        for _ in 0..(e / ell) {
            xp = xp.pow_mod(&q, f);
        }
        if !xp.sub(&x).gcd(f).is_constant() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    #[test]
    fn splits_linear_product() {
        let f7 = Field::prime(7);
        // x^3 - 1 = (x-1)(x-2)(x-4) over F7
        let f = UniPoly::from_ints(&f7, &[-1, 0, 0, 1]);
        let mut parts = factor_squarefree(&f);
        parts.sort_by_key(|p| p.coeff(0).as_mod().unwrap());
        assert_eq!(parts.len(), 3);
        let mut prod = UniPoly::one(&f7);
        for p in &parts {
            assert_eq!(p.deg(), 1);
            prod = prod.mul(p);
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn mixed_degrees() {
        let f5 = Field::prime(5);
        // (x^2+2)(x+1): x^2+2 irreducible over F5 (squares are 0,1,4)
        let a = UniPoly::from_ints(&f5, &[2, 0, 1]);
        let b = UniPoly::from_ints(&f5, &[1, 1]);
        let f = a.mul(&b);
        let mut parts = factor_squarefree(&f);
        parts.sort_by_key(|p| p.deg());
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], b);
        assert_eq!(parts[1], a);
        assert!(is_irreducible(&a));
        assert!(!is_irreducible(&f));
    }

    #[test]
    fn char_two_tower() {
        let f4 = Field::gf(2, 2).unwrap();
        // x^2 + x + g factors over GF(4)? g generator: try x^3 - 1 which
        // splits completely over GF(4)
        let f = UniPoly::from_ints(&f4, &[-1, 0, 0, 1]);
        let parts = factor_squarefree(&f);
        assert_eq!(parts.len(), 3);
        let mut prod = UniPoly::one(&f4);
        for p in &parts {
            assert_eq!(p.deg(), 1);
            prod = prod.mul(p);
        }
        assert_eq!(prod, f.monic());
    }

    #[test]
    fn big_irreducible_stays() {
        let f2 = Field::prime(2);
        // x^4 + x + 1 irreducible over F2
        let f = UniPoly::from_ints(&f2, &[1, 1, 0, 0, 1]);
        let parts = factor_squarefree(&f);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0], f);
    }
}
