//! Univariate factorization over the coefficient-field tower, with the
//! derived utilities the pipeline needs: irreducibility, field roots, and
//! roots-of-unity generators.

pub mod finite;
pub mod rationals;
pub mod funcfield;
pub mod trager;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{Field, FieldKind, Scalar, UniPoly};
use crate::error::Error;
use crate::Result;

/// Deterministic PRNG for splitting decisions (splitmix64).
pub(crate) struct SplitMix(u64);

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix(seed ^ 0x9e3779b97f4a7c15)
    }

    pub fn from_poly(f: &UniPoly) -> Self {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        f.hash(&mut h);
        SplitMix::new(h.finish())
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

pub(crate) fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

/// An unbounded supply of distinct field elements for evaluation and
/// interpolation: integers for characteristic 0, all field elements and
/// then parameter polynomials for the rest.
pub(crate) fn field_points(field: &Field) -> impl Iterator<Item = Scalar> + '_ {
    let field = field.clone();
    (0u64..).map_while(move |k| match field.kind() {
        FieldKind::Rationals => {
            let s = if k % 2 == 0 { (k / 2) as i64 } else { -((k / 2 + 1) as i64) };
            Some(field.from_int(s))
        }
        FieldKind::Prime { .. } => {
            let q = field.order().unwrap();
            if BigInt::from(k) < q {
                Some(field.element_by_index(k))
            } else {
                None
            }
        }
        FieldKind::Ext { .. } if field.is_finite() => {
            let q = field.order().unwrap();
            if BigInt::from(k) < q {
                Some(field.element_by_index(k))
            } else {
                None
            }
        }
        FieldKind::Ext { .. } => {
            // number field: integers, then integer combinations with the generator
            let g = field.ext_generator();
            let a = (k / 4) as i64;
            match k % 4 {
                0 => Some(field.from_int(a)),
                1 => Some(field.from_int(-a - 1)),
                2 => Some(g.mul(&field.from_int(a + 1))),
                _ => Some(g.add(&field.from_int(a + 1))),
            }
        }
        FieldKind::Func { base, .. } => {
            // constants first, then polynomials in the first parameter
            let ring = field.param_ring();
            let u = ring.var(0);
            if let Some(q) = base.order() {
                let q = q.to_u64().unwrap_or(u64::MAX);
                let digit = k % q;
                let shift = k / q;
                let c = base.element_by_index(digit);
                let num = if shift == 0 {
                    ring.from_scalar(c)
                } else {
                    // c + u^shift
                    ring.from_scalar(c).add(&u.pow(shift as u32))
                };
                Some(field.from_fraction(num, ring.one()))
            } else {
                let s = if k % 2 == 0 { (k / 2) as i64 } else { -((k / 2 + 1) as i64) };
                Some(field.from_fraction(ring.from_int(s), ring.one()))
            }
        }
    })
}

/// Factor a monic squarefree polynomial into monic irreducibles.
pub fn factor_squarefree_monic(f: &UniPoly) -> Result<Vec<UniPoly>> {
    assert!(f.is_monic(), "factorization needs monic input");
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    match f.field.kind() {
        FieldKind::Rationals => Ok(rationals::factor_squarefree(f)),
        FieldKind::Prime { .. } => Ok(finite::factor_squarefree(f)),
        FieldKind::Ext { .. } => {
            if f.field.is_finite() {
                Ok(finite::factor_squarefree(f))
            } else {
                trager::factor_squarefree(f)
            }
        }
        FieldKind::Func { .. } => funcfield::factor_squarefree(f),
    }
}

/// Full factorization of a monic nonconstant polynomial into monic
/// irreducibles with multiplicities. The product of the factors with their
/// multiplicities reproduces the input exactly.
pub fn factor_monic(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if f.is_constant() {
        return Err(Error::domain("factorization of a constant"));
    }
    let f = f.monic();
    match f.squarefree_decomposition() {
        Some(parts) => {
            let mut out: Vec<(UniPoly, usize)> = Vec::new();
            for (g, m) in parts {
                if g.is_constant() {
                    continue;
                }
                for h in factor_squarefree_monic(&g)? {
                    out.push((h, m));
                }
            }
            sort_factors(&mut out);
            Ok(out)
        }
        None => {
            // characteristic p with a missing coefficient p-th root
            factor_inseparable(&f)
        }
    }
}

/// Handle f with zero derivative whose coefficients are not all p-th
/// powers: f = g(x^p). The cases needed in practice are t^p - c (irreducible
/// when c is not a p-th power) and recursion through the decimation.
fn factor_inseparable(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let p = f.field.characteristic();
    if p == 0 || !f.derivative().is_zero() {
        return Err(Error::internal("inseparable fallback on separable input"));
    }
    let pu = p as usize;
    let deg = f.deg();
    if deg == pu && f.coeffs.iter().enumerate().all(|(i, c)| i == 0 || i == pu || c.is_zero()) {
        // t^p - c with c not a p-th power: irreducible
        return Ok(vec![(f.clone(), 1)]);
    }
    // decimate and factor g, then recurse into g_j(t^p)
    let mut coeffs = Vec::with_capacity(deg / pu + 1);
    for i in 0..=(deg / pu) {
        coeffs.push(f.coeff(i * pu));
    }
    let g = UniPoly::new(f.field.clone(), coeffs);
    if g.deg() * pu != deg {
        return Err(Error::unsupported(
            "inseparable polynomial beyond the supported patterns",
        ));
    }
    let inner = factor_monic(&g)?;
    let mut out = Vec::new();
    for (gj, m) in inner {
        // h(t) = g_j(t^p)
        let mut hc = vec![f.field.zero(); gj.deg() * pu + 1];
        for (i, c) in gj.coeffs.iter().enumerate() {
            hc[i * pu] = c.clone();
        }
        let h = UniPoly::new(f.field.clone(), hc);
        if h == *f {
            return Err(Error::unsupported(
                "irreducibility of composed inseparable polynomial undecided",
            ));
        }
        for (hf, hm) in factor_monic(&h)? {
            out.push((hf, hm * m));
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

fn sort_factors(out: &mut [(UniPoly, usize)]) {
    out.sort_by_key(|(g, m)| (g.deg(), format!("{g}"), *m));
}

pub fn is_irreducible(f: &UniPoly) -> Result<bool> {
    if f.is_constant() {
        return Ok(false);
    }
    if f.deg() == 1 {
        return Ok(true);
    }
    if f.field.is_finite() {
        return Ok(finite::is_irreducible(&f.monic()));
    }
    let parts = factor_monic(&f.monic())?;
    Ok(parts.len() == 1 && parts[0].1 == 1)
}

/// Roots of f lying in its coefficient field (with multiplicity dropped).
pub fn roots_in_field(f: &UniPoly) -> Result<Vec<Scalar>> {
    let parts = factor_monic(&f.monic())?;
    let mut out = Vec::new();
    for (g, _) in parts {
        if g.deg() == 1 {
            out.push(g.coeff(0).neg());
        }
    }
    Ok(out)
}

/// Checked extension constructor: verifies the modulus is irreducible.
pub fn extension_field(base: Field, var: &str, modulus: UniPoly) -> Result<Field> {
    if !is_irreducible(&modulus)? {
        return Err(Error::domain(format!(
            "extension modulus {} is reducible",
            modulus.display_with(var)
        )));
    }
    Ok(Field::extension_unchecked(base, var, modulus))
}

/// Generator ζ of the cyclic group of ℓ-th roots of unity contained in K,
/// together with its order r = #{a ∈ K : a^ℓ = 1}.
pub fn roots_of_unity_generator(ell: u64, field: &Field) -> Result<(Scalar, u64)> {
    assert!(ell >= 1);
    match field.kind() {
        FieldKind::Rationals => {
            if ell % 2 == 0 {
                Ok((field.from_int(-1), 2))
            } else {
                Ok((field.one(), 1))
            }
        }
        _ if field.is_finite() => {
            let q = field.order().unwrap().to_u64().ok_or_else(|| {
                Error::unsupported("finite field too large for root-of-unity search")
            })?;
            let p = field.characteristic();
            // strip the p-part of ℓ: x^ℓ - 1 = (x^(ℓ') - 1)^(p^v)
            let mut lp = ell;
            while lp % p == 0 {
                lp /= p;
            }
            let r = gcd_u64(lp, q - 1);
            if r == 1 {
                return Ok((field.one(), 1));
            }
            let g = multiplicative_generator(field, q)?;
            Ok((g.pow_bigint(&BigInt::from((q - 1) / r)), r))
        }
        FieldKind::Func { base, .. } => {
            // torsion of K(U)^× lies in the constant field
            let (z, r) = roots_of_unity_generator(ell, base)?;
            Ok((z.embed_into(field)?, r))
        }
        FieldKind::Ext { .. } => {
            // number field (or tower): factor x^ℓ - 1 and take the root of
            // largest multiplicative order among the linear factors
            let mut coeffs = vec![field.from_int(-1)];
            coeffs.extend((1..ell).map(|_| field.zero()));
            coeffs.push(field.one());
            let f = UniPoly::new(field.clone(), coeffs);
            let roots = roots_in_field(&f)?;
            let mut best: Option<(Scalar, u64)> = None;
            for root in roots {
                let mut ord = 1u64;
                let mut acc = root.clone();
                while !acc.is_one() {
                    acc = acc.mul(&root);
                    ord += 1;
                    if ord > ell {
                        return Err(Error::internal("root of unity order overflow"));
                    }
                }
                match &best {
                    None => best = Some((root, ord)),
                    Some((b, bo)) => {
                        if ord > *bo || (ord == *bo && root.to_string() < b.to_string()) {
                            best = Some((root, ord));
                        }
                    }
                }
            }
            Ok(best.unwrap_or((field.one(), 1)))
        }
        FieldKind::Prime { .. } => unreachable!("prime fields are finite"),
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Smallest-index generator of the multiplicative group of a finite field.
fn multiplicative_generator(field: &Field, q: u64) -> Result<Scalar> {
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
        let ok = prime_divs
            .iter()
            .all(|&ell| !g.pow_bigint(&BigInt::from((q - 1) / ell)).is_one());
        if ok {
            return Ok(g);
        }
    }
    Err(Error::internal("no multiplicative generator found"))
}
