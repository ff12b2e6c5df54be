//! Coprime bases by trial division (integers) and gcd refinement.
//!
//! Only pairwise coprimality is needed downstream, so unfactored composite
//! cofactors are legitimate basis elements.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Scalar;
use crate::error::Error;
use crate::poly::Poly;
use crate::Result;

/// Trial-division bound used before gcd refinement.
const TRIAL_BOUND: u64 = 10_000;

pub struct IntCoprimeBasis {
    pub basis: Vec<BigInt>,
    /// sign of each input
    pub signs: Vec<i8>,
    /// exponents\[i\]\[j\] = multiplicity of basis\[j\] in |input i|
    pub exponents: Vec<Vec<u32>>,
}

/// Coprime basis of nonzero integers: every input is ± a product of powers
/// of the returned pairwise coprime elements, none of which is a unit.
pub fn coprime_basis_int(elems: &[BigInt]) -> Result<IntCoprimeBasis> {
    if let Some(_) = elems.iter().find(|x| x.is_zero()) {
        return Err(Error::domain("coprime basis of zero"));
    }
    let mut parts: Vec<BigInt> = Vec::new();
    for x in elems {
        let mut n = x.abs();
        let mut d = BigInt::from(2u32);
        let bound = BigInt::from(TRIAL_BOUND);
        while &d * &d <= n && d <= bound {
            if (&n % &d).is_zero() {
                parts.push(d.clone());
                while (&n % &d).is_zero() {
                    n /= &d;
                }
            }
            d += 1;
        }
        if !n.is_one() {
            parts.push(n);
        }
    }
    let basis = refine(
        parts,
        |x| x.is_one(),
        |a, b| a.gcd(b),
        |a, b| a / b,
    );
    let mut signs = Vec::with_capacity(elems.len());
    let mut exponents = Vec::with_capacity(elems.len());
    for x in elems {
        signs.push(if x.is_negative() { -1 } else { 1 });
        let mut n = x.abs();
        let mut exps = vec![0u32; basis.len()];
        for (j, b) in basis.iter().enumerate() {
            while (&n % b).is_zero() {
                n /= b;
                exps[j] += 1;
            }
        }
        if !n.is_one() {
            return Err(Error::internal("coprime basis does not generate input"));
        }
        exponents.push(exps);
    }
    Ok(IntCoprimeBasis { basis, signs, exponents })
}

pub struct PolyCoprimeBasis {
    /// pairwise coprime, non-constant, monic w.r.t. degrevlex
    pub basis: Vec<Poly>,
    /// constant unit with input = unit · ∏ basis^e
    pub units: Vec<Scalar>,
    pub exponents: Vec<Vec<u32>>,
}

/// Coprime basis of nonzero (multivariate) polynomials over a field.
pub fn coprime_basis_poly(elems: &[Poly]) -> Result<PolyCoprimeBasis> {
    use crate::poly::TermOrder;
    if elems.iter().any(|p| p.is_zero()) {
        return Err(Error::domain("coprime basis of zero polynomial"));
    }
    let parts: Vec<Poly> = elems
        .iter()
        .filter(|p| !p.is_constant())
        .map(|p| p.monic(&TermOrder::DegRevLex))
        .collect();
    let basis = refine(
        parts,
        |p: &Poly| p.is_constant(),
        |a, b| a.gcd(b),
        |a, b| a.exact_div(b).expect("gcd divides").monic(&TermOrder::DegRevLex),
    );
    let basis: Vec<Poly> = basis.into_iter().map(|p| p.monic(&TermOrder::DegRevLex)).collect();
    let mut units = Vec::with_capacity(elems.len());
    let mut exponents = Vec::with_capacity(elems.len());
    for x in elems {
        let mut n = x.clone();
        let mut exps = vec![0u32; basis.len()];
        for (j, b) in basis.iter().enumerate() {
            loop {
                match n.exact_div(b) {
                    Some(q) => {
                        n = q;
                        exps[j] += 1;
                    }
                    None => break,
                }
            }
        }
        match n.as_constant() {
            Some(c) => units.push(c),
            None => return Err(Error::internal("poly coprime basis does not generate input")),
        }
        exponents.push(exps);
    }
    Ok(PolyCoprimeBasis { basis, units, exponents })
}

fn refine<T: Clone>(
    items: Vec<T>,
    is_unit: impl Fn(&T) -> bool,
    gcd: impl Fn(&T, &T) -> T,
    div: impl Fn(&T, &T) -> T,
) -> Vec<T> {
    let mut work: Vec<T> = items;
    let mut out: Vec<T> = Vec::new();
    while let Some(x) = work.pop() {
        if is_unit(&x) {
            continue;
        }
        let mut placed = true;
        for i in 0..out.len() {
            let g = gcd(&x, &out[i]);
            if !is_unit(&g) {
                let b = out.remove(i);
                work.push(div(&b, &g));
                work.push(div(&x, &g));
                work.push(g);
                placed = false;
                break;
            }
        }
        if placed {
            // drop exact duplicates
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::poly::PolyRing;

    #[test]
    fn ints_12_18() {
        let r = coprime_basis_int(&[BigInt::from(12), BigInt::from(18)]).unwrap();
        let mut basis = r.basis.clone();
        basis.sort();
        assert_eq!(basis, vec![BigInt::from(2), BigInt::from(3)]);
        // reconstruct 12 and 18
        for (i, n) in [12i64, 18].iter().enumerate() {
            let mut prod = BigInt::one();
            for (j, b) in r.basis.iter().enumerate() {
                prod *= b.pow(r.exponents[i][j]);
            }
            assert_eq!(prod, BigInt::from(*n));
        }
    }

    #[test]
    fn single_nonunit() {
        let r = coprime_basis_int(&[BigInt::from(5)]).unwrap();
        assert_eq!(r.basis, vec![BigInt::from(5)]);
        assert_eq!(r.exponents, vec![vec![1]]);
    }

    #[test]
    fn zero_rejected() {
        assert!(coprime_basis_int(&[BigInt::zero()]).is_err());
    }

    #[test]
    fn large_composite_cofactors() {
        // two numbers sharing a large prime-ish cofactor
        let a = BigInt::from(10007u64 * 10009);
        let b = BigInt::from(10007u64 * 4);
        let r = coprime_basis_int(&[a.clone(), b.clone()]).unwrap();
        for (i, n) in [a, b].iter().enumerate() {
            let mut prod = BigInt::one();
            for (j, base) in r.basis.iter().enumerate() {
                prod *= base.pow(r.exponents[i][j]);
            }
            assert_eq!(&prod, n);
        }
        // pairwise coprime
        for i in 0..r.basis.len() {
            for j in 0..i {
                assert!(r.basis[i].gcd(&r.basis[j]).is_one());
            }
        }
    }

    #[test]
    fn polys_x2_minus_1() {
        let q = Field::rationals();
        let ring = PolyRing::new(q, vec!["x".into()]);
        let x = ring.var(0);
        let f1 = x.pow(2).sub(&ring.one()); // x^2-1
        let f2 = x.sub(&ring.one()); // x-1
        let r = coprime_basis_poly(&[f1.clone(), f2.clone()]).unwrap();
        let mut names: Vec<String> = r.basis.iter().map(|b| b.to_string()).collect();
        names.sort();
        assert_eq!(names, vec!["x + 1".to_string(), "x - 1".to_string()]);
        // reconstruct
        for (i, f) in [f1, f2].iter().enumerate() {
            let mut prod = ring.from_scalar(r.units[i].clone());
            for (j, b) in r.basis.iter().enumerate() {
                prod = prod.mul(&b.pow(r.exponents[i][j]));
            }
            assert_eq!(&prod, f);
        }
    }
}
