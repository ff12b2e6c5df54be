//! Exponent lattices in rational function fields K(U): split each element
//! into a constant times a monic numerator/denominator, take the exponent
//! lattice of the constants in K, and intersect with the kernel of the
//! multiplicity matrix over a coprime basis of the monic parts.

use num_bigint::BigInt;

use crate::arith::coprime::coprime_basis_poly;
use crate::arith::{FieldKind, Scalar};
use crate::error::Error;
use crate::intlattice::{kernel_int, IntMat, Lattice};
use crate::poly::{Poly, TermOrder};
use crate::Result;

pub fn exponent_lattice_function_field(elems: &[Scalar]) -> Result<Lattice> {
    let k = elems.len();
    if k == 0 {
        return Ok(Lattice::zero(0));
    }
    let field = elems[0].field().clone();
    let base = match field.kind() {
        FieldKind::Func { base, .. } => base.clone(),
        _ => return Err(Error::domain("function-field scalar expected")),
    };
    let mut constants = Vec::with_capacity(k);
    let mut monic_parts: Vec<(Poly, Poly)> = Vec::with_capacity(k);
    for e in elems {
        if e.is_zero() {
            return Err(Error::domain("exponent lattice of zero"));
        }
        let (num, den) = e.as_fraction().unwrap();
        let lc = num.leading_coeff(&TermOrder::DegRevLex).unwrap().clone();
        let g = num.mul_scalar(&lc.inv().unwrap());
        constants.push(lc);
        monic_parts.push((g, den.clone()));
    }
    let lambda = super::exponent_lattice(&constants)?;
    // multiplicity matrix over a coprime basis of all monic parts
    let mut polys = Vec::with_capacity(2 * k);
    for (g, h) in &monic_parts {
        polys.push(g.clone());
        polys.push(h.clone());
    }
    let cb = coprime_basis_poly(&polys)?;
    let _ = base;
    let nb = cb.basis.len();
    let mut rows = Vec::with_capacity(nb);
    for j in 0..nb {
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            let e_num = cb.exponents[2 * i][j] as i64;
            let e_den = cb.exponents[2 * i + 1][j] as i64;
            row.push(BigInt::from(e_num - e_den));
        }
        rows.push(row);
    }
    let m = if rows.is_empty() {
        Lattice::full(k)
    } else {
        kernel_int(&IntMat::from_rows(rows, k))
    };
    lambda.intersect(&m)
}
