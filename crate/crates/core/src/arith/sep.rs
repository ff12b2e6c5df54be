//! Separable parts of univariate polynomials, extending the coefficient
//! field when necessary.
//!
//! In characteristic zero and over perfect fields no extension is needed.
//! Over 𝔽_q(U) a purely inseparable extension is realized by
//! reparametrization: adjoining u^{1/p^k} is modeled as a fresh parameter v
//! with the embedding u ↦ v^{p^k}, so every field in the tower stays a
//! rational function field over a finite field.

use super::{Field, FieldKind, Scalar, UniPoly};
use crate::error::Error;
use crate::Result;

/// Embedding K → L along a reparametrization u_i ↦ v_i^{param_pow}.
/// `param_pow == 1` is the identity embedding.
#[derive(Debug, Clone)]
pub struct FieldEmbed {
    pub from: Field,
    pub to: Field,
    pub param_pow: u64,
}

impl FieldEmbed {
    pub fn identity(field: &Field) -> Self {
        FieldEmbed { from: field.clone(), to: field.clone(), param_pow: 1 }
    }

    pub fn is_identity(&self) -> bool {
        self.param_pow == 1 && self.from == self.to
    }

    pub fn compose(&self, next: &FieldEmbed) -> FieldEmbed {
        assert!(self.to == next.from, "embeddings do not compose");
        FieldEmbed {
            from: self.from.clone(),
            to: next.to.clone(),
            param_pow: self.param_pow * next.param_pow,
        }
    }

    pub fn embed_scalar(&self, s: &Scalar) -> Scalar {
        assert!(*s.field() == self.from, "embed_scalar: wrong source field");
        if self.is_identity() {
            return s.clone();
        }
        let (num, den) = s.as_fraction().expect("reparametrization of a function field");
        let ring = self.to.param_ring();
        let map = |p: &crate::poly::Poly| -> crate::poly::Poly {
            let mut out = ring.zero();
            for (e, c) in p.terms() {
                let e2: Vec<u32> = e.iter().map(|&x| x * self.param_pow as u32).collect();
                out = out.add(&ring.monomial(e2, c.clone()));
            }
            out
        };
        self.to.from_fraction(map(num), map(den))
    }

    pub fn embed_unipoly(&self, f: &UniPoly) -> UniPoly {
        if self.is_identity() {
            return f.clone();
        }
        UniPoly::new(self.to.clone(), f.coeffs.iter().map(|c| self.embed_scalar(c)).collect())
    }
}

/// Fresh parameter names for a reparametrized function field.
fn reparametrize(field: &Field, p: u64) -> (Field, FieldEmbed) {
    match field.kind() {
        FieldKind::Func { base, params } => {
            let new_params: Vec<String> = params.iter().map(|s| format!("{s}'")).collect();
            let to = Field::function_field(base.clone(), new_params);
            let embed = FieldEmbed { from: field.clone(), to: to.clone(), param_pow: p };
            (to, embed)
        }
        _ => panic!("reparametrize needs a function field"),
    }
}

pub struct SepResult {
    /// Extension field L (equal to the input field when no extension was needed).
    pub field: Field,
    /// Monic separable polynomial over L with the same roots as the input.
    pub sep: UniPoly,
    /// Embedding of the input field into L.
    pub embed: FieldEmbed,
}

/// Separable part of a monic nonconstant univariate polynomial: a separable
/// polynomial (gcd(sep, sep′) = 1) over an extension with the same roots.
pub fn separable_part(f: &UniPoly) -> Result<SepResult> {
    if f.is_constant() {
        return Err(Error::domain("separable part of a constant"));
    }
    let f = f.monic();
    let field = f.field.clone();
    if field.characteristic() == 0 {
        let sep = f.exact_div(&f.gcd(&f.derivative()));
        return Ok(SepResult { field: field.clone(), sep, embed: FieldEmbed::identity(&field) });
    }
    let (embed, sep) = work(&f)?;
    Ok(SepResult { field: embed.to.clone(), sep, embed })
}

fn work(f: &UniPoly) -> Result<(FieldEmbed, UniPoly)> {
    let field = f.field.clone();
    let p = field.characteristic();
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p): the roots of f are the p-th roots of the roots of g
        let g = decimate(f, p as usize);
        let (embed, s) = work(&g)?;
        return pth_root_of_roots(&embed, &s, p);
    }
    let g = f.gcd(&d);
    if g.is_constant() {
        return Ok((FieldEmbed::identity(&field), f.clone()));
    }
    let w = f.exact_div(&g);
    // strip the factors shared with w; what remains has zero derivative
    let mut g1 = g;
    loop {
        let sh = g1.gcd(&w);
        if sh.is_constant() {
            break;
        }
        g1 = g1.exact_div(&sh);
    }
    if g1.is_constant() {
        return Ok((FieldEmbed::identity(&field), w));
    }
    debug_assert!(g1.derivative().is_zero());
    let (embed, s2) = work(&g1)?;
    let w2 = embed.embed_unipoly(&w);
    let shared = w2.gcd(&s2);
    Ok((embed, w2.mul(&s2.exact_div(&shared))))
}

/// Coefficients at exponents divisible by p: g with g(x^p) = f.
fn decimate(f: &UniPoly, p: usize) -> UniPoly {
    let deg = f.deg();
    let mut coeffs = Vec::with_capacity(deg / p + 1);
    for i in 0..=(deg / p) {
        coeffs.push(f.coeff(i * p));
    }
    UniPoly::new(f.field.clone(), coeffs)
}

/// Given separable s over embed.to, produce the polynomial whose roots are
/// the p-th roots of the roots of s (coefficient-wise p-th root, extending
/// the field by reparametrization when a coefficient is not a p-th power).
fn pth_root_of_roots(embed: &FieldEmbed, s: &UniPoly, p: u64) -> Result<(FieldEmbed, UniPoly)> {
    let mut coeffs = Vec::with_capacity(s.coeffs.len());
    let mut ok = true;
    for c in &s.coeffs {
        match c.pth_root() {
            Some(r) => coeffs.push(r),
            None => {
                ok = false;
                break;
            }
        }
    }
    if ok {
        return Ok((embed.clone(), UniPoly::new(s.field.clone(), coeffs)));
    }
    // extend by u ↦ v^p and retry (guaranteed to succeed over 𝔽_q(U))
    match s.field.kind() {
        FieldKind::Func { .. } => {}
        _ => {
            return Err(Error::unsupported(format!(
                "p-th roots unavailable in {}",
                s.field.describe()
            )))
        }
    }
    let (_, re) = reparametrize(&s.field, p);
    let s2 = re.embed_unipoly(s);
    let mut coeffs = Vec::with_capacity(s2.coeffs.len());
    for c in &s2.coeffs {
        match c.pth_root() {
            Some(r) => coeffs.push(r),
            None => {
                return Err(Error::unsupported(format!(
                    "coefficient has no p-th root after reparametrization in {}",
                    s2.field.describe()
                )))
            }
        }
    }
    Ok((embed.compose(&re), UniPoly::new(s2.field.clone(), coeffs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_zero_squarefree() {
        let q = Field::rationals();
        // (x-1)^2
        let f = UniPoly::from_ints(&q, &[-1, 1]).pow(2);
        let r = separable_part(&f).unwrap();
        assert_eq!(r.sep, UniPoly::from_ints(&q, &[-1, 1]));
        assert!(r.embed.is_identity());
    }

    #[test]
    fn perfect_char_p() {
        let f5 = Field::prime(5);
        // x^2 - x - 1 = (x+2)^2 over F5
        let f = UniPoly::from_ints(&f5, &[-1, -1, 1]);
        let r = separable_part(&f).unwrap();
        assert_eq!(r.sep, UniPoly::from_ints(&f5, &[2, 1]));
        // gcd(sep, sep') = 1
        assert!(r.sep.gcd(&r.sep.derivative()).is_one());
    }

    #[test]
    fn inseparable_needs_reparametrization() {
        // x^2 - u over F2(u) -> x - v with u = v^2
        let k = Field::function_field(Field::prime(2), vec!["u".into()]);
        let ring = k.param_ring();
        let u = k.from_fraction(ring.var(0), ring.one());
        let f = UniPoly::new(k.clone(), vec![u.neg(), k.zero(), k.one()]);
        let r = separable_part(&f).unwrap();
        assert_eq!(r.embed.param_pow, 2);
        assert_eq!(r.sep.deg(), 1);
        // sep = x - v: check (sep)^2 = embedded f, i.e. same roots
        let emb_f = r.embed.embed_unipoly(&f);
        let sq = r.sep.pow(2);
        assert_eq!(sq, emb_f);
        // embedding maps u to v^2
        let u_emb = r.embed.embed_scalar(&u);
        let ring2 = r.field.param_ring();
        let v = r.field.from_fraction(ring2.var(0), ring2.one());
        assert_eq!(u_emb, v.mul(&v));
    }

    #[test]
    fn mixed_product_char_p() {
        // (x^2 + u)(x + 1) over F2(u): sep = (x + v)(x + 1)
        let k = Field::function_field(Field::prime(2), vec!["u".into()]);
        let ring = k.param_ring();
        let u = k.from_fraction(ring.var(0), ring.one());
        let f1 = UniPoly::new(k.clone(), vec![u.clone(), k.zero(), k.one()]);
        let f2 = UniPoly::from_ints(&k, &[1, 1]);
        let f = f1.mul(&f2);
        let r = separable_part(&f).unwrap();
        assert_eq!(r.sep.deg(), 2);
        assert!(r.sep.gcd(&r.sep.derivative()).is_one());
        // f divides sep^(deg f) over L (same root sets)
        let emb_f = r.embed.embed_unipoly(&f);
        let power = r.sep.pow(f.deg() as u64);
        assert!(emb_f.divides(&power));
    }
}
