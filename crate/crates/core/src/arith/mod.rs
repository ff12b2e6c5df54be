//! The coefficient-field tower: ℚ, prime fields, finite extensions given by
//! a monic irreducible modulus, and rational function fields K(U). Every
//! element has exactly one canonical representation, so `==` is field
//! equality.

pub mod unipoly;
pub mod coprime;
pub mod sep;

pub use unipoly::UniPoly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::poly::{Poly, PolyRing, TermOrder};
use crate::Result;

#[derive(Debug)]
pub enum FieldKind {
    /// ℚ with reduced fractions, positive denominators.
    Rationals,
    /// 𝔽_p, least non-negative residues.
    Prime { p: u64 },
    /// base[var]/(modulus): covers 𝔽_{p^e} and simple algebraic extensions.
    Ext { base: Field, var: String, modulus: UniPoly },
    /// base(params): rational function field; numerator/denominator pairs
    /// with gcd 1 and monic (degrevlex) denominator.
    Func { base: Field, params: Vec<String> },
}

#[derive(Debug, Clone)]
pub struct Field(Arc<FieldKind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (FieldKind::Rationals, FieldKind::Rationals) => true,
            (FieldKind::Prime { p: a }, FieldKind::Prime { p: b }) => a == b,
            (
                FieldKind::Ext { base: b1, var: v1, modulus: m1 },
                FieldKind::Ext { base: b2, var: v2, modulus: m2 },
            ) => v1 == v2 && b1 == b2 && m1.coeffs == m2.coeffs,
            (
                FieldKind::Func { base: b1, params: p1 },
                FieldKind::Func { base: b2, params: p2 },
            ) => p1 == p2 && b1 == b2,
            _ => false,
        }
    }
}
impl Eq for Field {}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    /// 𝔽_p for a prime p.
    pub fn prime(p: u64) -> Field {
        assert!(p >= 2 && is_prime_u64(p), "field characteristic must be prime, got {p}");
        Field(Arc::new(FieldKind::Prime { p }))
    }

    /// Simple extension; the modulus must be monic over `base`.
    /// Irreducibility is the caller's responsibility (checked constructors
    /// live where factorization is available).
    pub fn extension_unchecked(base: Field, var: &str, modulus: UniPoly) -> Field {
        assert!(modulus.is_monic(), "extension modulus must be monic");
        assert!(modulus.deg() >= 1, "extension modulus must be nonconstant");
        assert!(modulus.field == base, "modulus must live over the base field");
        Field(Arc::new(FieldKind::Ext { base, var: var.to_string(), modulus }))
    }

    /// 𝔽_{p^e} presented as 𝔽_p[g]/(m) with a deterministically chosen
    /// irreducible m of degree e.
    pub fn gf(p: u64, e: u32) -> Result<Field> {
        let fp = Field::prime(p);
        if e == 1 {
            return Ok(fp);
        }
        // search monic polys x^e + c_{e-1} x^{e-1} + ... + c_0 in counting order
        let mut idx: u64 = 0;
        loop {
            idx += 1;
            if idx > p.saturating_pow(e).max(1 << 20) {
                return Err(Error::internal("no irreducible polynomial found"));
            }
            let mut coeffs = Vec::with_capacity(e as usize + 1);
            let mut k = idx;
            for _ in 0..e {
                coeffs.push(fp.from_int((k % p) as i64));
                k /= p;
            }
            coeffs.push(fp.one());
            let m = UniPoly::new(fp.clone(), coeffs);
            if m.deg() == e as usize && is_irreducible_mod_p(&m) {
                return Ok(Field::extension_unchecked(fp, "g", m));
            }
        }
    }

    /// Rational function field base(params). The base must not itself be a
    /// function field; merge parameter lists instead.
    pub fn function_field(base: Field, params: Vec<String>) -> Field {
        assert!(
            !matches!(&*base.0, FieldKind::Func { .. }),
            "nest parameters into a single function field"
        );
        assert!(!params.is_empty());
        let mut seen = std::collections::BTreeSet::new();
        for p in &params {
            assert!(seen.insert(p.clone()), "duplicate parameter {p}");
        }
        Field(Arc::new(FieldKind::Func { base, params }))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime { p } => *p,
            FieldKind::Ext { base, .. } | FieldKind::Func { base, .. } => base.characteristic(),
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<BigInt> {
        match &*self.0 {
            FieldKind::Rationals | FieldKind::Func { .. } => None,
            FieldKind::Prime { p } => Some(BigInt::from(*p)),
            FieldKind::Ext { base, modulus, .. } => {
                base.order().map(|q| q.pow(modulus.deg() as u32))
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn zero(&self) -> Scalar {
        let repr = match &*self.0 {
            FieldKind::Rationals => Repr::Rat(BigRational::zero()),
            FieldKind::Prime { .. } => Repr::Mod(0),
            FieldKind::Ext { base, .. } => Repr::Ext(UniPoly::zero(base)),
            FieldKind::Func { .. } => {
                let ring = self.param_ring();
                Repr::Func { num: ring.zero(), den: ring.one() }
            }
        };
        Scalar { field: self.clone(), repr }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        let repr = match &*self.0 {
            FieldKind::Rationals => Repr::Rat(BigRational::from(n.clone())),
            FieldKind::Prime { p } => {
                let m = n.mod_floor_u64(*p);
                Repr::Mod(m)
            }
            FieldKind::Ext { base, .. } => Repr::Ext(UniPoly::constant(base.from_bigint(n))),
            FieldKind::Func { base, .. } => {
                let ring = self.param_ring();
                Repr::Func { num: ring.from_scalar(base.from_bigint(n)), den: ring.one() }
            }
        };
        Scalar { field: self.clone(), repr }
    }

    pub fn from_rational(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0);
        let n = self.from_int(num);
        let d = self.from_int(den);
        n.div(&d)
    }

    /// The adjoined generator of an extension field.
    pub fn ext_generator(&self) -> Scalar {
        match &*self.0 {
            FieldKind::Ext { base, .. } => {
                Scalar { field: self.clone(), repr: Repr::Ext(UniPoly::x(base)) }
            }
            _ => panic!("ext_generator on non-extension field"),
        }
    }

    /// Polynomial ring holding numerators/denominators of a function field.
    pub fn param_ring(&self) -> PolyRing {
        match &*self.0 {
            FieldKind::Func { base, params } => PolyRing::new(base.clone(), params.clone()),
            _ => panic!("param_ring on non-function field"),
        }
    }

    /// The k-th field element under a fixed enumeration (finite fields).
    pub fn element_by_index(&self, k: u64) -> Scalar {
        match &*self.0 {
            FieldKind::Prime { p } => Scalar { field: self.clone(), repr: Repr::Mod(k % p) },
            FieldKind::Ext { base, modulus, .. } => {
                let q = base
                    .order()
                    .expect("finite base")
                    .to_u64()
                    .expect("desk-scale field");
                let mut coeffs = Vec::new();
                let mut k = k;
                for _ in 0..modulus.deg() {
                    coeffs.push(base.element_by_index(k % q));
                    k /= q;
                }
                Scalar { field: self.clone(), repr: Repr::Ext(UniPoly::new(base.clone(), coeffs)) }
            }
            _ => panic!("element enumeration needs a finite field"),
        }
    }

    /// For function fields: the element given by a fraction of parameter
    /// polynomials (normalized here).
    pub fn from_fraction(&self, num: Poly, den: Poly) -> Scalar {
        match &*self.0 {
            FieldKind::Func { .. } => {
                let repr = normalize_func(num, den);
                Scalar { field: self.clone(), repr }
            }
            _ => panic!("from_fraction on non-function field"),
        }
    }

    /// Build an element of an extension field from a coefficient polynomial
    /// over the base (reduced modulo the modulus here).
    pub fn from_unipoly(&self, f: UniPoly) -> Scalar {
        match &*self.0 {
            FieldKind::Ext { modulus, .. } => {
                Scalar { field: self.clone(), repr: Repr::Ext(f.rem(modulus)) }
            }
            _ => panic!("from_unipoly on non-extension field"),
        }
    }

    pub fn describe(&self) -> String {
        match &*self.0 {
            FieldKind::Rationals => "QQ".to_string(),
            FieldKind::Prime { p } => format!("GF({p})"),
            FieldKind::Ext { base, var, modulus } => {
                format!("{}[{}]/({})", base.describe(), var, modulus.display_with(var))
            }
            FieldKind::Func { base, params } => {
                format!("{}({})", base.describe(), params.join(","))
            }
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}
impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = self.mod_floor(&BigInt::from(p));
        m.to_u64().expect("residue fits")
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == d {
            return true;
        }
        if n % d == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Irreducibility over 𝔽_p via x^{p^e} ≡ x and gcd checks on proper prime
/// divisors of e. Used only to build GF(p^e) presentations.
fn is_irreducible_mod_p(m: &UniPoly) -> bool {
    let p = m.field.characteristic();
    let e = m.deg();
    let x = UniPoly::x(&m.field);
    // x^{p^e} mod m
    let mut xp = x.clone();
    for _ in 0..e {
        xp = xp.pow_mod(&BigInt::from(p), m);
    }
    if !xp.sub(&x).rem(m).is_zero() {
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
        let mut xq = x.clone();
        for _ in 0..(e / ell) {
            xq = xq.pow_mod(&BigInt::from(p), m);
        }
        let g = xq.sub(&x).gcd(m);
        if !g.is_constant() {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Rat(BigRational),
    Mod(u64),
    Ext(UniPoly),
    Func { num: Poly, den: Poly },
}

impl Eq for Repr {}

impl std::hash::Hash for Repr {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Repr::Rat(x) => {
                0u8.hash(state);
                x.hash(state);
            }
            Repr::Mod(x) => {
                1u8.hash(state);
                x.hash(state);
            }
            Repr::Ext(f) => {
                2u8.hash(state);
                f.hash(state);
            }
            Repr::Func { num, den } => {
                3u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
        }
    }
}

fn normalize_func(num: Poly, den: Poly) -> Repr {
    assert!(!den.is_zero(), "zero denominator");
    let ring = num.ring().clone();
    if num.is_zero() {
        return Repr::Func { num: ring.zero(), den: ring.one() };
    }
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.is_one() {
        (num, den)
    } else {
        (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
    };
    let lc = den.leading_coeff(&TermOrder::DegRevLex).expect("nonzero").clone();
    if !lc.is_one() {
        let inv = lc.inv().expect("field coefficient");
        num = num.mul_scalar(&inv);
        den = den.mul_scalar(&inv);
    }
    Repr::Func { num, den }
}

/// An element of a `Field`, always in canonical form.
#[derive(Debug, Clone)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field == other.field
    }
}
impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

macro_rules! binop {
    ($name:ident, $ratop:expr, $modop:expr) => {
        pub fn $name(&self, other: &Scalar) -> Scalar {
            assert!(self.field == other.field, "field mismatch in scalar op");
            let repr = match (&self.repr, &other.repr) {
                (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat($ratop(a, b)),
                (Repr::Mod(a), Repr::Mod(b)) => {
                    let p = match &*self.field.0 {
                        FieldKind::Prime { p } => *p,
                        _ => unreachable!(),
                    };
                    Repr::Mod($modop(*a, *b, p))
                }
                _ => return self.generic_binop(other, stringify!($name)),
            };
            Scalar { field: self.field.clone(), repr }
        }
    };
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(x) => x.is_zero(),
            Repr::Mod(x) => *x == 0,
            Repr::Ext(f) => f.is_zero(),
            Repr::Func { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(x) => x.is_one(),
            Repr::Mod(x) => *x == 1,
            Repr::Ext(f) => f.is_one(),
            Repr::Func { num, den } => num.is_one() && den.is_one(),
        }
    }

    binop!(add, |a: &BigRational, b: &BigRational| a + b, |a: u64, b: u64, p: u64| {
        let s = (a as u128 + b as u128) % p as u128;
        s as u64
    });
    binop!(mul, |a: &BigRational, b: &BigRational| a * b, |a: u64, b: u64, p: u64| {
        let s = (a as u128 * b as u128) % p as u128;
        s as u64
    });

    fn generic_binop(&self, other: &Scalar, op: &str) -> Scalar {
        match (&self.repr, &other.repr) {
            (Repr::Ext(a), Repr::Ext(b)) => {
                let modulus = match &*self.field.0 {
                    FieldKind::Ext { modulus, .. } => modulus,
                    _ => unreachable!(),
                };
                let f = match op {
                    "add" => a.add(b),
                    "mul" => a.mul(b).rem(modulus),
                    _ => unreachable!(),
                };
                Scalar { field: self.field.clone(), repr: Repr::Ext(f) }
            }
            (Repr::Func { num: n1, den: d1 }, Repr::Func { num: n2, den: d2 }) => {
                let repr = match op {
                    "add" => {
                        let num = n1.mul(d2).add(&n2.mul(d1));
                        let den = d1.mul(d2);
                        normalize_func(num, den)
                    }
                    "mul" => normalize_func(n1.mul(n2), d1.mul(d2)),
                    _ => unreachable!(),
                };
                Scalar { field: self.field.clone(), repr }
            }
            _ => panic!("inconsistent scalar representations"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Rat(x) => Repr::Rat(-x.clone()),
            Repr::Mod(x) => {
                let p = match &*self.field.0 {
                    FieldKind::Prime { p } => *p,
                    _ => unreachable!(),
                };
                Repr::Mod(if *x == 0 { 0 } else { p - x })
            }
            Repr::Ext(f) => Repr::Ext(f.neg()),
            Repr::Func { num, den } => Repr::Func { num: num.neg(), den: den.clone() },
        };
        Scalar { field: self.field.clone(), repr }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let repr = match &self.repr {
            Repr::Rat(x) => Repr::Rat(x.recip()),
            Repr::Mod(x) => {
                let p = match &*self.field.0 {
                    FieldKind::Prime { p } => *p,
                    _ => unreachable!(),
                };
                Repr::Mod(mod_inv(*x, p))
            }
            Repr::Ext(f) => {
                let modulus = match &*self.field.0 {
                    FieldKind::Ext { modulus, .. } => modulus,
                    _ => unreachable!(),
                };
                let (g, s, _) = f.extended_gcd(modulus);
                assert!(
                    g.is_one(),
                    "extension modulus must be irreducible; zero divisor found"
                );
                Repr::Ext(s.rem(modulus))
            }
            Repr::Func { num, den } => normalize_func(den.clone(), num.clone()),
        };
        Some(Scalar { field: self.field.clone(), repr })
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero"))
    }

    pub fn pow_i64(&self, e: i64) -> Scalar {
        self.pow_bigint(&BigInt::from(e))
    }

    pub fn pow_bigint(&self, e: &BigInt) -> Scalar {
        if e.is_negative() {
            return self.inv().expect("negative power of zero").pow_bigint(&-e);
        }
        let mut base = self.clone();
        let mut acc = self.field.one();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base);
            }
            if i + 1 < bits {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// p-th root in characteristic p, when one exists in the field.
    pub fn pth_root(&self) -> Option<Scalar> {
        let p = self.field.characteristic();
        if p == 0 {
            return None;
        }
        match &self.repr {
            Repr::Mod(_) => Some(self.clone()), // Frobenius is the identity on 𝔽_p
            Repr::Ext(_) => {
                // a^{q/p} in a finite field of order q
                let q = self.field.order()?;
                let e = q / BigInt::from(p);
                Some(self.pow_bigint(&e))
            }
            Repr::Func { num, den } => {
                let n = poly_pth_root(num, p)?;
                let d = poly_pth_root(den, p)?;
                Some(Scalar { field: self.field.clone(), repr: normalize_func(n, d) })
            }
            Repr::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_mod(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod(x) => Some(*x),
            _ => None,
        }
    }

    /// Coefficient polynomial of an extension-field element.
    pub fn as_ext_poly(&self) -> Option<&UniPoly> {
        match &self.repr {
            Repr::Ext(f) => Some(f),
            _ => None,
        }
    }

    /// Numerator/denominator of a function-field element.
    pub fn as_fraction(&self) -> Option<(&Poly, &Poly)> {
        match &self.repr {
            Repr::Func { num, den } => Some((num, den)),
            _ => None,
        }
    }

    /// For a function-field element that is a constant: the base-field value.
    pub fn constant_value(&self) -> Option<Scalar> {
        match &self.repr {
            Repr::Func { num, den } => {
                if den.is_one() {
                    num.as_constant()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Embed into a larger field of the tower.
    pub fn embed_into(&self, to: &Field) -> Result<Scalar> {
        if self.field == *to {
            return Ok(self.clone());
        }
        match &*to.0 {
            FieldKind::Ext { base, .. } => {
                let inner = self.embed_into(base)?;
                Ok(Scalar { field: to.clone(), repr: Repr::Ext(UniPoly::constant(inner)) })
            }
            FieldKind::Func { base, .. } => {
                if let Repr::Func { num, den } = &self.repr {
                    // map parameters by name into the larger parameter ring
                    let ring = to.param_ring();
                    let num = num.map_ring(&ring)?;
                    let den = den.map_ring(&ring)?;
                    return Ok(Scalar { field: to.clone(), repr: normalize_func(num, den) });
                }
                let inner = self.embed_into(base)?;
                let ring = to.param_ring();
                Ok(Scalar {
                    field: to.clone(),
                    repr: Repr::Func { num: ring.from_scalar(inner), den: ring.one() },
                })
            }
            _ => Err(Error::RingMismatch(format!(
                "cannot embed {} into {}",
                self.field.describe(),
                to.describe()
            ))),
        }
    }
}

fn poly_pth_root(f: &Poly, p: u64) -> Option<Poly> {
    let ring = f.ring().clone();
    let mut out = ring.zero();
    for (e, c) in f.terms() {
        let mut e2 = Vec::with_capacity(e.len());
        for &x in e {
            if x % (p as u32) != 0 {
                return None;
            }
            e2.push(x / p as u32);
        }
        let c2 = c.pth_root()?;
        out = out.add(&ring.monomial(e2, c2));
    }
    Some(out)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended euclid on i128
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "not invertible");
    (t.rem_euclid(p as i128)) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Repr::Mod(x) => write!(f, "{x}"),
            Repr::Ext(p) => {
                let var = match &*self.field.0 {
                    FieldKind::Ext { var, .. } => var.clone(),
                    _ => unreachable!(),
                };
                if p.is_constant() {
                    write!(f, "{}", p.coeff(0))
                } else {
                    p.fmt_with_var(f, &var)
                }
            }
            Repr::Func { num, den } => {
                if den.is_one() {
                    if num.nterms() > 1 {
                        write!(f, "({num})")
                    } else {
                        write!(f, "{num}")
                    }
                } else {
                    let ns = num.to_string();
                    let ds = den.to_string();
                    let np = if num.nterms() > 1 { format!("({ns})") } else { ns };
                    let dp = if den.nterms() > 1 { format!("({ds})") } else { ds };
                    write!(f, "{np}/{dp}")
                }
            }
        }
    }
}
