//! Factorization over simple algebraic extensions via Trager's norm method:
//! shift by multiples of the generator until the norm is squarefree, factor
//! the norm over the base field, and pull factors back with gcds.

use crate::arith::{Field, FieldKind, Scalar, UniPoly};
use crate::error::Error;
use crate::Result;

use super::field_points;

/// Factor a monic squarefree polynomial over base[w]/(M) into monic
/// irreducibles.
pub fn factor_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>> {
    let kfield = f.field.clone();
    let (base, modulus) = match kfield.kind() {
        FieldKind::Ext { base, modulus, .. } => (base.clone(), modulus.clone()),
        _ => unreachable!("trager factorizer needs an extension field"),
    };
    if f.deg() == 1 {
        return Ok(vec![f.monic()]);
    }
    let w = kfield.ext_generator();
    for shift_idx in 0..32u64 {
        // s = 0, 1, -1, 2, -2, ...
        let s: i64 = if shift_idx % 2 == 0 {
            (shift_idx / 2) as i64
        } else {
            -((shift_idx / 2 + 1) as i64)
        };
        let sw = w.mul(&kfield.from_int(s));
        let g = f.shift(&sw.neg()); // g(z) = f(z - s·w)
        let norm = norm_poly(&g, &base, &modulus)?;
        if !norm.gcd(&norm.derivative()).is_constant() {
            continue;
        }
        let parts = super::factor_squarefree_monic(&norm)?;
        if parts.len() == 1 {
            return Ok(vec![f.monic()]);
        }
        let mut out = Vec::new();
        let mut rest = f.monic();
        for nj in &parts {
            // lift N_j to K and shift back: N_j(z + s·w)
            let lifted = UniPoly::new(
                kfield.clone(),
                nj.coeffs.iter().map(|c| c.embed_into(&kfield)).collect::<Result<Vec<_>>>()?,
            );
            let shifted = lifted.shift(&sw);
            let h = rest.gcd(&shifted);
            if h.is_constant() {
                continue;
            }
            rest = rest.exact_div(&h);
            out.push(h.monic());
        }
        if !rest.is_constant() {
            out.push(rest.monic());
        }
        let mut prod = UniPoly::one(&kfield);
        for h in &out {
            prod = prod.mul(h);
        }
        if prod == f.monic() {
            return Ok(out);
        }
        // norm factorisation did not separate f (conjugate factor collision)
    }
    Err(Error::unsupported(format!(
        "Trager factorization found no squarefree norm over {}",
        kfield.describe()
    )))
}

/// Norm of g w.r.t. the extension: Res_w(M(w), G(w, z)) ∈ base[z], computed
/// by evaluation at deg(M)·deg(g)+1 points and Lagrange interpolation.
fn norm_poly(g: &UniPoly, base: &Field, modulus: &UniPoly) -> Result<UniPoly> {
    let d = modulus.deg() * g.deg();
    let mut points = Vec::with_capacity(d + 1);
    let mut values = Vec::with_capacity(d + 1);
    for a in field_points(base) {
        if points.len() > d {
            break;
        }
        // G(w, a) as a polynomial in w over base
        let mut gw = UniPoly::zero(base);
        let mut apow = base.one();
        for c in &g.coeffs {
            let cw = c.as_ext_poly().expect("extension scalar");
            gw = gw.add(&cw.mul_scalar(&apow));
            apow = apow.mul(&a);
        }
        let val = modulus.resultant(&gw);
        points.push(a);
        values.push(val);
    }
    if points.len() <= d {
        return Err(Error::unsupported(
            "not enough evaluation points for the norm computation",
        ));
    }
    Ok(lagrange_interpolate(base, &points, &values))
}

fn lagrange_interpolate(field: &Field, xs: &[Scalar], ys: &[Scalar]) -> UniPoly {
    let mut acc = UniPoly::zero(field);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut term = UniPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi.sub(xj);
            let li = UniPoly::new(
                field.clone(),
                vec![xj.neg().div(&denom), field.one().div(&denom)],
            );
            term = term.mul(&li);
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> Field {
        let q = Field::rationals();
        let m = UniPoly::from_ints(&q, &[1, 0, 1]); // w^2 + 1
        Field::extension_unchecked(q, "i", m)
    }

    #[test]
    fn splits_over_gaussian() {
        // z^2 + 1 = (z - i)(z + i) over Q(i)
        let k = gaussian();
        let f = UniPoly::from_ints(&k, &[1, 0, 1]);
        let parts = factor_squarefree(&f).unwrap();
        assert_eq!(parts.len(), 2);
        let prod = parts[0].mul(&parts[1]);
        assert_eq!(prod, f);
        for p in &parts {
            assert_eq!(p.deg(), 1);
        }
    }

    #[test]
    fn stays_irreducible() {
        // z^2 - 2 over Q(i) is irreducible
        let k = gaussian();
        let f = UniPoly::from_ints(&k, &[-2, 0, 1]);
        let parts = factor_squarefree(&f).unwrap();
        assert_eq!(parts.len(), 1);
    }

    #[test]
    fn cyclotomic_over_sqrt2() {
        let q = Field::rationals();
        let m = UniPoly::from_ints(&q, &[-2, 0, 1]); // w^2 - 2
        let k = Field::extension_unchecked(q, "s", m);
        // z^4 - 4 = (z^2-2)(z^2+2) = (z-s)(z+s)(z^2+2)
        let f = UniPoly::from_ints(&k, &[-4, 0, 0, 0, 1]);
        let mut parts = factor_squarefree(&f).unwrap();
        parts.sort_by_key(|p| p.deg());
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0].deg(), 1);
        assert_eq!(parts[1].deg(), 1);
        assert_eq!(parts[2].deg(), 2);
    }
}
