//! Exponent lattices in finite fields via discrete logarithms
//! (baby-step giant-step with a deterministic generator search).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{Field, Scalar};
use crate::error::Error;
use crate::intlattice::{kernel_int, IntMat, Lattice};
use crate::Result;

/// Exponent lattice of nonzero elements of a finite field.
pub fn exponent_lattice_finite(elems: &[Scalar]) -> Result<Lattice> {
    let k = elems.len();
    if k == 0 {
        return Ok(Lattice::zero(0));
    }
    let field = elems[0].field().clone();
    let q = field
        .order()
        .and_then(|q| q.to_u64())
        .ok_or_else(|| Error::unsupported("finite-field lattice needs a small finite field"))?;
    for e in elems {
        if e.is_zero() {
            return Err(Error::domain("exponent lattice of zero"));
        }
    }
    let n = q - 1;
    if n == 1 {
        return Ok(Lattice::full(k));
    }
    let g = generator(&field, q)?;
    let logs: Vec<u64> = elems.iter().map(|e| bsgs(&g, e, n).expect("element in group")).collect();
    // kernel of  e_1 y_1 + ... + e_k y_k + (q-1) y_{k+1} = 0
    let mut row: Vec<BigInt> = logs.iter().map(|&e| BigInt::from(e)).collect();
    row.push(BigInt::from(n));
    let m = IntMat::from_rows(vec![row], k + 1);
    let ker = kernel_int(&m);
    Ok(ker.project(&(0..k).collect::<Vec<_>>()))
}

/// Deterministic generator: smallest enumeration index passing the order test.
pub(crate) fn generator(field: &Field, q: u64) -> Result<Scalar> {
    let mut prime_divs = Vec::new();
    let mut m = q - 1;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            prime_divs.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    for idx in 1..q {
        let g = field.element_by_index(idx);
        if g.is_zero() {
            continue;
        }
        if prime_divs.iter().all(|&p| !g.pow_bigint(&BigInt::from((q - 1) / p)).is_one()) {
            return Ok(g);
        }
    }
    Err(Error::internal("no generator found"))
}

/// Baby-step giant-step discrete logarithm in the cyclic group of order n.
pub(crate) fn bsgs(g: &Scalar, h: &Scalar, n: u64) -> Option<u64> {
    let m = (n as f64).sqrt().ceil() as u64 + 1;
    let mut table: HashMap<Scalar, u64> = HashMap::with_capacity(m as usize);
    let mut e = g.field().one();
    for j in 0..m {
        table.entry(e.clone()).or_insert(j);
        e = e.mul(g);
    }
    // giant step: g^{-m}
    let gm_inv = g.pow_bigint(&BigInt::from(m)).inv()?;
    let mut gamma = h.clone();
    for i in 0..=m {
        if let Some(&j) = table.get(&gamma) {
            return Some((i * m + j) % n);
        }
        gamma = gamma.mul(&gm_inv);
    }
    None
}
