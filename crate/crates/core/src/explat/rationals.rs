//! Exponent lattices in ℚ: the kernel of the multiplicity matrix over a
//! coprime basis of all numerators and denominators, intersected with the
//! sign-relation lattice.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::coprime::coprime_basis_int;
use crate::arith::Scalar;
use crate::error::Error;
use crate::intlattice::{kernel_int, IntMat, Lattice};
use crate::Result;

pub fn exponent_lattice_rationals(elems: &[Scalar]) -> Result<Lattice> {
    let k = elems.len();
    let mut nums = Vec::with_capacity(k);
    let mut dens = Vec::with_capacity(k);
    let mut signs = Vec::with_capacity(k);
    for e in elems {
        let r = e.as_rational().ok_or_else(|| Error::domain("rational scalar expected"))?;
        if r.is_zero() {
            return Err(Error::domain("exponent lattice of zero"));
        }
        signs.push(r.is_negative());
        nums.push(r.numer().abs());
        dens.push(r.denom().abs());
    }
    use num_traits::Zero;
    let all: Vec<BigInt> = nums.iter().chain(dens.iter()).cloned().collect();
    let cb = coprime_basis_int(&all)?;
    let nb = cb.basis.len();
    // multiplicity rows: one per basis element; entry = mult in num - mult in den
    let mut rows = Vec::with_capacity(nb);
    for j in 0..nb {
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            let e_num = cb.exponents[i][j] as i64;
            let e_den = cb.exponents[k + i][j] as i64;
            row.push(BigInt::from(e_num - e_den));
        }
        rows.push(row);
    }
    let mult_lattice = if rows.is_empty() {
        Lattice::full(k)
    } else {
        kernel_int(&IntMat::from_rows(rows, k))
    };
    // sign relations: sum of a_i over negative elements must be even
    let mut srow: Vec<BigInt> = signs
        .iter()
        .map(|&s| if s { BigInt::one() } else { BigInt::zero() })
        .collect();
    srow.push(BigInt::from(2));
    let sk = kernel_int(&IntMat::from_rows(vec![srow], k + 1));
    let sign_lattice = sk.project(&(0..k).collect::<Vec<_>>());
    mult_lattice.intersect(&sign_lattice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;
    use crate::intlattice::IntVec;

    #[test]
    fn two_three_six() {
        let q = Field::rationals();
        let l = exponent_lattice_rationals(&[q.from_int(2), q.from_int(3), q.from_int(6)])
            .unwrap();
        assert_eq!(l, Lattice::from_i64(3, &[&[1, 1, -1]]));
        // brute force box radius 4
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                for c in -4i64..=4 {
                    let v = q
                        .from_int(2)
                        .pow_i64(a)
                        .mul(&q.from_int(3).pow_i64(b))
                        .mul(&q.from_int(6).pow_i64(c));
                    assert_eq!(v.is_one(), l.contains(&IntVec::from_i64(&[a, b, c])));
                }
            }
        }
    }

    #[test]
    fn sign_relation_only() {
        let q = Field::rationals();
        let l = exponent_lattice_rationals(&[q.from_int(-1), q.from_int(2)]).unwrap();
        assert_eq!(l, Lattice::from_i64(2, &[&[2, 0]]));
    }

    #[test]
    fn single_one() {
        let q = Field::rationals();
        let l = exponent_lattice_rationals(&[q.one()]).unwrap();
        assert_eq!(l, Lattice::full(1));
    }

    #[test]
    fn fractions() {
        let q = Field::rationals();
        let l = exponent_lattice_rationals(&[q.from_int(2), q.from_rational(1, 2)]).unwrap();
        assert_eq!(l, Lattice::from_i64(2, &[&[1, 1]]));
    }
}
