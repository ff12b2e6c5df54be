//! Univariate factorization over rational function fields K(U): clear
//! denominators, pick a parameter u, factor the evaluation at u = a over
//! the smaller field, lift (u-a)-adically, and recombine. Parameter-free
//! inputs short-circuit to the base field (a polynomial irreducible over K
//! stays irreducible over the purely transcendental extension K(U)).

use crate::arith::{Field, FieldKind, Scalar, UniPoly};
use crate::error::Error;
use crate::poly::{Poly, PolyRing};
use crate::Result;

use super::{field_points, subsets_of_size};

/// Factor a monic squarefree polynomial over a function field into monic
/// irreducibles.
pub fn factor_squarefree(f: &UniPoly) -> Result<Vec<UniPoly>> {
    let kfield = f.field.clone();
    let (base, params) = match kfield.kind() {
        FieldKind::Func { base, params } => (base.clone(), params.clone()),
        _ => unreachable!("function-field factorizer"),
    };
    if f.deg() == 1 {
        return Ok(vec![f.monic()]);
    }
    // coefficients constant in the parameters: factor over the base field
    let mut all_const = true;
    let mut base_coeffs = Vec::new();
    for c in &f.coeffs {
        match c.constant_value() {
            Some(v) => base_coeffs.push(v),
            None => {
                all_const = false;
                break;
            }
        }
    }
    if all_const {
        let fb = UniPoly::new(base.clone(), base_coeffs);
        let parts = super::factor_squarefree_monic(&fb)?;
        return parts
            .into_iter()
            .map(|g| {
                Ok(UniPoly::new(
                    kfield.clone(),
                    g.coeffs
                        .iter()
                        .map(|c| c.embed_into(&kfield))
                        .collect::<Result<Vec<_>>>()?,
                ))
            })
            .collect();
    }
    // try each parameter as the Hensel variable
    let mut last_err = None;
    for u_idx in 0..params.len() {
        match factor_with_param(f, &base, &params, u_idx) {
            Ok(parts) => return Ok(parts),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::unsupported("function-field factorization failed")))
}

fn other_field(base: &Field, params: &[String], u_idx: usize) -> Field {
    let others: Vec<String> =
        params.iter().enumerate().filter(|(i, _)| *i != u_idx).map(|(_, s)| s.clone()).collect();
    if others.is_empty() {
        base.clone()
    } else {
        Field::function_field(base.clone(), others)
    }
}

/// A polynomial in t whose coefficients are polynomials in u over L,
/// represented as t-coefficients each a UniPoly in u.
type TU = Vec<UniPoly>;

fn tu_deg_u(g: &TU) -> usize {
    g.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
}

fn factor_with_param(
    f: &UniPoly,
    base: &Field,
    params: &[String],
    u_idx: usize,
) -> Result<Vec<UniPoly>> {
    let kfield = f.field.clone();
    let lfield = other_field(base, params, u_idx);
    let pring = kfield.param_ring();
    // clear denominators across all coefficients
    let mut den = pring.one();
    for c in &f.coeffs {
        let (_, d) = c.as_fraction().unwrap();
        let g = den.gcd(d);
        den = den.mul(&d.exact_div(&g).unwrap());
    }
    let cleared: Vec<Poly> = f
        .coeffs
        .iter()
        .map(|c| {
            let (n, d) = c.as_fraction().unwrap();
            n.mul(&den.exact_div(d).unwrap())
        })
        .collect();
    // view each coefficient as a UniPoly in u over L
    let to_l = |p: &Poly| -> Result<UniPoly> {
        let parts = p.to_univar(u_idx);
        let coeffs = parts
            .iter()
            .map(|q| poly_to_scalar(q, &lfield))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::new(lfield.clone(), coeffs))
    };
    let mut g: TU = cleared.iter().map(|p| to_l(p)).collect::<Result<Vec<_>>>()?;
    // primitive part w.r.t. t (content is a unit of the field K(U))
    let mut cont = UniPoly::zero(&lfield);
    for c in &g {
        if c.is_zero() {
            continue;
        }
        cont = if cont.is_zero() { c.clone() } else { cont.gcd(c) };
        if cont.is_constant() {
            break;
        }
    }
    if !cont.is_constant() && !cont.is_zero() {
        g = g.iter().map(|c| if c.is_zero() { c.clone() } else { c.exact_div(&cont) }).collect();
    }
    let dt = g.len() - 1;
    let lc = g[dt].clone();
    // monicize in t: G*_i = G_i · lc^(dt-1-i) for i < dt
    let mut gm: TU = Vec::with_capacity(dt + 1);
    for i in 0..dt {
        gm.push(g[i].mul(&lc.pow((dt - 1 - i) as u64)));
    }
    gm.push(UniPoly::one(&lfield));
    let prec = tu_deg_u(&gm) + 2;

    // evaluation loop
    let mut tried = 0usize;
    for a in field_points(&lfield) {
        tried += 1;
        if tried > 64 {
            break;
        }
        if lc.eval(&a).is_zero() {
            continue;
        }
        let eval: UniPoly =
            UniPoly::new(lfield.clone(), gm.iter().map(|c| c.eval(&a)).collect());
        if !eval.gcd(&eval.derivative()).is_constant() {
            continue;
        }
        let parts0 = super::factor_squarefree_monic(&eval)?;
        if parts0.len() == 1 {
            return Ok(vec![f.monic()]);
        }
        // shift u -> v + a and lift v-adically
        let shifted: TU = gm.iter().map(|c| c.shift(&a)).collect();
        let lifted = hensel_series(&shifted, &parts0, prec)?;
        // recombination, testing exact division over the field K(U)
        let unshift = |h: &TU| -> TU { h.iter().map(|c| c.shift(&a.neg())).collect() };
        let to_field_poly = |h: &TU| -> Result<UniPoly> {
            let coeffs = h
                .iter()
                .map(|c| u_series_to_scalar(c, u_idx, &kfield))
                .collect::<Result<Vec<_>>>()?;
            Ok(UniPoly::new(kfield.clone(), coeffs))
        };
        let gm_field = to_field_poly(&unshift(&shifted))?;
        let mut rest = gm_field.clone();
        let mut remaining = lifted;
        let mut found: Vec<UniPoly> = Vec::new();
        let mut size = 1usize;
        'outer: while 2 * size <= remaining.len() {
            for subset in subsets_of_size(remaining.len(), size) {
                // multiply the candidate series mod v^prec
                let mut cand: TU = vec![UniPoly::one(&lfield)];
                for &i in &subset {
                    cand = tu_mul_trunc(&cand, &remaining[i], prec);
                }
                let cand_poly = to_field_poly(&unshift(&cand))?;
                let (q, r) = rest.divrem(&cand_poly);
                if r.is_zero() {
                    found.push(cand_poly);
                    rest = q;
                    let mut keep = Vec::new();
                    for (i, h) in remaining.into_iter().enumerate() {
                        if !subset.contains(&i) {
                            keep.push(h);
                        }
                    }
                    remaining = keep;
                    continue 'outer;
                }
            }
            size += 1;
        }
        if rest.degree().map_or(false, |d| d > 0) {
            found.push(rest);
        }
        // undo the monicization: roots of gm are lc * roots of f
        let lc_scalar = u_series_to_scalar(&lc, u_idx, &kfield)?;
        let out = found
            .iter()
            .map(|h| {
                let d = h.deg();
                let coeffs: Vec<Scalar> = h
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.mul(&lc_scalar.pow_i64(i as i64 - d as i64)))
                    .collect();
                UniPoly::new(kfield.clone(), coeffs).monic()
            })
            .collect();
        return Ok(out);
    }
    Err(Error::unsupported(format!(
        "no good evaluation point for factorization over {}",
        kfield.describe()
    )))
}

/// Convert a polynomial in the parameter ring, constant in u, to a scalar
/// of the smaller function field L.
fn poly_to_scalar(p: &Poly, lfield: &Field) -> Result<Scalar> {
    match lfield.kind() {
        FieldKind::Func { .. } => {
            let ring = lfield.param_ring();
            let num = p.map_ring(&ring)?;
            Ok(lfield.from_fraction(num, ring.one()))
        }
        _ => p
            .as_constant()
            .map(Ok)
            .unwrap_or_else(|| Err(Error::internal("coefficient not constant in u")))
            .map(|c| c),
    }
}

/// Convert a polynomial in u with L-coefficients back to a K(U) scalar.
fn u_series_to_scalar(c: &UniPoly, u_idx: usize, kfield: &Field) -> Result<Scalar> {
    let ring = kfield.param_ring();
    let u = ring.var(u_idx);
    let mut num = ring.zero();
    let mut den = ring.one();
    for (i, coeff) in c.coeffs.iter().enumerate() {
        let (n, d) = scalar_to_fraction(coeff, &ring)?;
        // num/den + n/d * u^i
        let ui = u.pow(i as u32);
        num = num.mul(&d).add(&n.mul(&ui).mul(&den));
        den = den.mul(&d);
    }
    Ok(kfield.from_fraction(num, den))
}

fn scalar_to_fraction(s: &Scalar, target_ring: &PolyRing) -> Result<(Poly, Poly)> {
    match s.as_fraction() {
        Some((n, d)) => Ok((n.map_ring(target_ring)?, d.map_ring(target_ring)?)),
        None => Ok((target_ring.from_scalar(s.embed_into(target_ring.field())?), target_ring.one())),
    }
}

fn tu_trunc(mut a: TU, prec: usize) -> TU {
    for c in a.iter_mut() {
        if c.degree().map_or(false, |d| d >= prec) {
            *c = UniPoly::new(c.field.clone(), c.coeffs[..prec].to_vec());
        }
    }
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
    a
}

fn tu_mul_trunc(a: &TU, b: &TU, prec: usize) -> TU {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let lf = a
        .iter()
        .chain(b.iter())
        .find(|c| !c.is_zero())
        .map(|c| c.field.clone())
        .expect("nonzero");
    let mut out = vec![UniPoly::zero(&lf); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    tu_trunc(out, prec)
}

fn tu_add(a: &TU, b: &TU, lf: &Field) -> TU {
    let n = a.len().max(b.len());
    let zero = UniPoly::zero(lf);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.add(y));
    }
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn tu_sub(a: &TU, b: &TU, lf: &Field) -> TU {
    let nb: TU = b.iter().map(|c| c.neg()).collect();
    tu_add(a, &nb, lf)
}

fn tu_deg_t(a: &TU) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

/// Division with remainder in t by a divisor monic in t, truncating u-series.
fn tu_divrem_monic(a: &TU, b: &TU, prec: usize, lf: &Field) -> (TU, TU) {
    let db = tu_deg_t(b).expect("monic divisor");
    let mut rem: TU = tu_trunc(a.to_vec(), prec);
    let mut quo: TU = vec![UniPoly::zero(lf); rem.len().saturating_sub(db)];
    while let Some(dr) = tu_deg_t(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr].clone();
        quo[dr - db] = quo[dr - db].add(&c);
        for j in 0..=db {
            let t = c.mul(&b[j]);
            rem[dr - db + j] = rem[dr - db + j].sub(&t);
        }
        rem = tu_trunc(rem, prec);
    }
    (tu_trunc(quo, prec), rem)
}

/// Quadratic Hensel lifting of a split factorization along a factor tree,
/// in the power-series ring L[[v]][t] truncated at v^prec.
fn hensel_series(f: &TU, factors0: &[UniPoly], prec: usize) -> Result<Vec<TU>> {
    let lf = factors0[0].field.clone();
    if factors0.len() == 1 {
        return Ok(vec![tu_trunc(f.to_vec(), prec)]);
    }
    let mid = factors0.len() / 2;
    let (l, r) = factors0.split_at(mid);
    let mut g0 = UniPoly::one(&lf);
    for h in l {
        g0 = g0.mul(h);
    }
    let mut h0 = UniPoly::one(&lf);
    for h in r {
        h0 = h0.mul(h);
    }
    let (one, s0, t0) = g0.extended_gcd(&h0);
    if !one.is_one() {
        return Err(Error::internal("evaluation factors not coprime"));
    }
    let up = |p: &UniPoly| -> TU { p.coeffs.iter().map(|c| UniPoly::constant(c.clone())).collect() };
    let (g, h) = hensel2_series(f, &up(&g0), &up(&h0), &up(&s0), &up(&t0), prec, &lf);
    let mut out = hensel_series(&g, l, prec)?;
    out.extend(hensel_series(&h, r, prec)?);
    Ok(out)
}

fn hensel2_series(
    f: &TU,
    g0: &TU,
    h0: &TU,
    s0: &TU,
    t0: &TU,
    prec: usize,
    lf: &Field,
) -> (TU, TU) {
    let mut m = 1usize; // current precision: congruence mod v^m
    let mut g = g0.to_vec();
    let mut h = h0.to_vec();
    let mut s = s0.to_vec();
    let mut t = t0.to_vec();
    while m < prec {
        let m2 = (2 * m).min(prec);
        let e = tu_sub(&tu_trunc(f.to_vec(), m2), &tu_mul_trunc(&g, &h, m2), lf);
        let se = tu_mul_trunc(&s, &e, m2);
        let (q, r) = tu_divrem_monic(&se, &h, m2, lf);
        let te = tu_mul_trunc(&t, &e, m2);
        let qg = tu_mul_trunc(&q, &g, m2);
        g = tu_trunc(tu_add(&tu_add(&g, &te, lf), &qg, lf), m2);
        h = tu_trunc(tu_add(&h, &r, lf), m2);
        let sg = tu_mul_trunc(&s, &g, m2);
        let th = tu_mul_trunc(&t, &h, m2);
        let mut b = tu_add(&sg, &th, lf);
        if b.is_empty() {
            b = vec![UniPoly::zero(lf)];
        }
        b[0] = b[0].sub(&UniPoly::one(lf));
        let b = tu_trunc(b, m2);
        let sb = tu_mul_trunc(&s, &b, m2);
        let (c, d) = tu_divrem_monic(&sb, &h, m2, lf);
        s = tu_trunc(tu_sub(&s, &d, lf), m2);
        let tb = tu_mul_trunc(&t, &b, m2);
        let cg = tu_mul_trunc(&c, &g, m2);
        t = tu_trunc(tu_sub(&tu_sub(&t, &tb, lf), &cg, lf), m2);
        m = m2;
    }
    (g, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qu() -> (Field, PolyRing) {
        let k = Field::function_field(Field::rationals(), vec!["u".into()]);
        let r = k.param_ring();
        (k, r)
    }

    #[test]
    fn splits_difference_of_squares() {
        // t^2 - u^2 = (t-u)(t+u) over Q(u)
        let (k, r) = qu();
        let u = k.from_fraction(r.var(0), r.one());
        let f = UniPoly::new(k.clone(), vec![u.mul(&u).neg(), k.zero(), k.one()]);
        let mut parts = factor_squarefree(&f).unwrap();
        parts.sort_by_key(|p| p.coeff(0).to_string());
        assert_eq!(parts.len(), 2);
        let prod = parts[0].mul(&parts[1]);
        assert_eq!(prod, f);
    }

    #[test]
    fn quadratic_irreducible_over_qu() {
        // t^2 - u is irreducible over Q(u)
        let (k, r) = qu();
        let u = k.from_fraction(r.var(0), r.one());
        let f = UniPoly::new(k.clone(), vec![u.neg(), k.zero(), k.one()]);
        let parts = factor_squarefree(&f).unwrap();
        assert_eq!(parts.len(), 1);
    }

    #[test]
    fn parameter_free_coefficients() {
        // t^2 + 1 stays irreducible over Q(u)
        let (k, _) = qu();
        let f = UniPoly::from_ints(&k, &[1, 0, 1]);
        let parts = factor_squarefree(&f).unwrap();
        assert_eq!(parts.len(), 1);
        // t^2 - 1 splits
        let g = UniPoly::from_ints(&k, &[-1, 0, 1]);
        assert_eq!(factor_squarefree(&g).unwrap().len(), 2);
    }

    #[test]
    fn paper_style_square() {
        // (t - z)^2 squarefree part handled upstream; here (t-z)(t-2z)
        let (k, r) = qu();
        let z = k.from_fraction(r.var(0), r.one());
        let a = UniPoly::new(k.clone(), vec![z.neg(), k.one()]);
        let b = UniPoly::new(k.clone(), vec![z.mul(&k.from_int(2)).neg(), k.one()]);
        let f = a.mul(&b);
        let mut parts = factor_squarefree(&f).unwrap();
        parts.sort_by_key(|p| p.coeff(0).to_string());
        assert_eq!(parts.len(), 2);
        assert!(parts.contains(&a));
        assert!(parts.contains(&b));
    }

    #[test]
    fn two_parameters() {
        // t^2 - u^2 v^2 factors over Q(u,v)
        let k = Field::function_field(Field::rationals(), vec!["u".into(), "v".into()]);
        let r = k.param_ring();
        let uv = k.from_fraction(r.var(0).mul(&r.var(1)), r.one());
        let f = UniPoly::new(k.clone(), vec![uv.mul(&uv).neg(), k.zero(), k.one()]);
        let parts = factor_squarefree(&f).unwrap();
        assert_eq!(parts.len(), 2);
        // t^3 - u t - v stays irreducible (linear in v)
        let u = k.from_fraction(r.var(0), r.one());
        let v = k.from_fraction(r.var(1), r.one());
        let g = UniPoly::new(k.clone(), vec![v.neg(), u.neg(), k.zero(), k.one()]);
        assert_eq!(factor_squarefree(&g).unwrap().len(), 1);
    }

    #[test]
    fn finite_base_function_field() {
        // t^2 - u^2 over F5(u)
        let k = Field::function_field(Field::prime(5), vec!["u".into()]);
        let r = k.param_ring();
        let u = k.from_fraction(r.var(0), r.one());
        let f = UniPoly::new(k.clone(), vec![u.mul(&u).neg(), k.zero(), k.one()]);
        let parts = factor_squarefree(&f).unwrap();
        assert_eq!(parts.len(), 2);
    }
}
