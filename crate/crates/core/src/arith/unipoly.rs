//! Dense univariate polynomials over a Scalar field: division, gcd,
//! squarefree decomposition, resultants. The coefficient field is carried
//! explicitly so the zero polynomial knows where it lives.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Field, Scalar};

#[derive(Debug, Clone)]
pub struct UniPoly {
    pub field: Field,
    /// coeffs[i] is the coefficient of x^i; no trailing zeros.
    pub coeffs: Vec<Scalar>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for UniPoly {}

impl std::hash::Hash for UniPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        UniPoly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field().clone();
        UniPoly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Self {
        UniPoly::new(field.clone(), vec![field.zero(), field.one()])
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        UniPoly::new(field.clone(), coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn monomial(field: &Field, deg: usize, c: Scalar) -> Self {
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(field.clone(), coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lc(&self) -> &Scalar {
        self.coeffs.last().expect("lc of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("field");
        self.mul_scalar(&inv)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i).add(&other.coeff(i)));
        }
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = a.mul(b);
                coeffs[i + j] = coeffs[i + j].add(&t);
            }
        }
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn mul_scalar(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.field.clone(), self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn pow(&self, mut n: u64) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one(&self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Division with remainder; the divisor must be nonzero.
    pub fn divrem(&self, g: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!g.is_zero(), "division by zero");
        let dg = g.deg();
        let lc_inv = g.lc().inv().expect("field");
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.field.zero(); self.coeffs.len().saturating_sub(dg)];
        while rem.len() >= dg + 1 {
            let dr = rem.len() - 1;
            let c = rem[dr].mul(&lc_inv);
            if !c.is_zero() {
                quo[dr - dg] = c.clone();
                for j in 0..=dg {
                    let t = g.coeffs[j].mul(&c);
                    rem[dr - dg + j] = rem[dr - dg + j].sub(&t);
                }
            }
            rem.pop();
            while rem.last().map_or(false, |x| x.is_zero()) {
                rem.pop();
            }
            if rem.len() < dg + 1 {
                break;
            }
        }
        (UniPoly::new(self.field.clone(), quo), UniPoly::new(self.field.clone(), rem))
    }

    pub fn rem(&self, g: &UniPoly) -> UniPoly {
        self.divrem(g).1
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    pub fn exact_div(&self, g: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(g);
        assert!(r.is_zero(), "exact division has remainder");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) monic with s·self + t·other = g.
    pub fn extended_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::one(&self.field);
        let mut s1 = UniPoly::zero(&self.field);
        let mut t0 = UniPoly::zero(&self.field);
        let mut t1 = UniPoly::one(&self.field);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc_inv = r0.lc().inv().expect("field");
        (r0.mul_scalar(&lc_inv), s0.mul_scalar(&lc_inv), t0.mul_scalar(&lc_inv))
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_int(i as i64)))
            .collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// f(x + c)
    pub fn shift(&self, c: &Scalar) -> UniPoly {
        let lin = UniPoly::new(self.field.clone(), vec![c.clone(), self.field.one()]);
        self.compose(&lin)
    }

    /// f(g(x))
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// self^e mod m, with a big-integer exponent.
    pub fn pow_mod(&self, e: &BigInt, m: &UniPoly) -> UniPoly {
        assert!(!e.is_negative());
        let mut base = self.rem(m);
        let mut acc = UniPoly::one(&self.field);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Resultant of two polynomials over a field.
    pub fn resultant(&self, other: &UniPoly) -> Scalar {
        let f = self;
        let g = other;
        if f.is_zero() || g.is_zero() {
            return self.field.zero();
        }
        fn res(f: &UniPoly, g: &UniPoly) -> Scalar {
            let field = f.field.clone();
            let df = f.deg();
            if g.is_constant() {
                return g.coeff(0).pow_i64(df as i64);
            }
            let dg = g.deg();
            if df < dg {
                let sign = if (df * dg) % 2 == 1 { field.from_int(-1) } else { field.one() };
                return sign.mul(&res(g, f));
            }
            let r = f.rem(g);
            if r.is_zero() {
                return field.zero();
            }
            let dr = r.degree().map_or(0, |d| d);
            let sign = if (df * dg) % 2 == 1 { field.from_int(-1) } else { field.one() };
            sign.mul(&g.lc().pow_i64((df - dr) as i64)).mul(&res(g, &r))
        }
        res(f, g)
    }

    /// Squarefree part: the product of the distinct irreducible factors,
    /// each taken once. In characteristic p the residual with zero
    /// derivative descends through x ↦ x^p when the coefficients admit
    /// p-th roots; otherwise None (the caller must extend the field first,
    /// see the separable-part machinery).
    pub fn squarefree_part(&self) -> Option<UniPoly> {
        let parts = self.squarefree_decomposition()?;
        let mut acc = UniPoly::one(&self.field);
        for (g, _) in parts {
            acc = acc.mul(&g);
        }
        Some(acc)
    }

    /// When f(x) = g(x^p), recover g by taking p-th roots of coefficients.
    /// None if the characteristic is zero, the exponents don't line up, or
    /// some coefficient is not a p-th power in the field.
    pub fn pth_root_substitution(&self) -> Option<UniPoly> {
        let p = self.field.characteristic();
        if p == 0 {
            return None;
        }
        let p = p as usize;
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i % p != 0 {
                return None;
            }
        }
        let deg = self.degree()?;
        for i in 0..=(deg / p) {
            let c = self.coeff(i * p);
            if c.is_zero() {
                coeffs.push(c);
            } else {
                coeffs.push(c.pth_root()?);
            }
        }
        Some(UniPoly::new(self.field.clone(), coeffs))
    }

    /// Squarefree decomposition: pairwise coprime squarefree gᵢ with
    /// f = lc · ∏ gᵢ^{mᵢ}. Characteristic p descends through x ↦ x^p;
    /// None when a coefficient p-th root is missing.
    pub fn squarefree_decomposition(&self) -> Option<Vec<(UniPoly, usize)>> {
        let f = self.monic();
        if f.is_constant() {
            return Some(Vec::new());
        }
        let fp = f.derivative();
        if fp.is_zero() {
            let p = self.field.characteristic() as usize;
            let g = f.pth_root_substitution()?;
            let inner = g.squarefree_decomposition()?;
            return Some(inner.into_iter().map(|(h, m)| (h, m * p)).collect());
        }
        let mut out: Vec<(UniPoly, usize)> = Vec::new();
        let mut c = f.gcd(&fp);
        let mut w = f.exact_div(&c);
        let mut i = 1usize;
        // gcd chain peels factors of multiplicity exactly i (p ∤ i)
        while !w.is_constant() {
            let y = w.gcd(&c);
            let z = w.exact_div(&y);
            if !z.is_constant() {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.exact_div(&w);
        }
        // the leftover collects factors whose multiplicity is divisible by p
        if !c.is_constant() {
            let p = self.field.characteristic() as usize;
            let g = c.pth_root_substitution()?;
            let inner = g.squarefree_decomposition()?;
            out.extend(inner.into_iter().map(|(h, m)| (h, m * p)));
        }
        Some(out)
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.fmt_with_var(f, "z")
    }
}

impl UniPoly {
    pub fn fmt_with_var(&self, f: &mut std::fmt::Formatter<'_>, var: &str) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let neg = cs.starts_with('-') && !cs[1..].contains(['+', '-']);
            let mag = if neg { cs[1..].to_string() } else { cs };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var_part = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if var_part.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag == "1" {
                write!(f, "{}", var_part)?;
            } else if mag.contains(['+', ' ']) {
                write!(f, "({})*{}", mag, var_part)?;
            } else {
                write!(f, "{}*{}", mag, var_part)?;
            }
        }
        Ok(())
    }

    pub fn display_with(&self, var: &str) -> String {
        struct D<'a>(&'a UniPoly, &'a str);
        impl std::fmt::Display for D<'_> {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                self.0.fmt_with_var(f, self.1)
            }
        }
        D(self, var).to_string()
    }
}

/// Least non-negative representative helper for BigInt exponents.
pub fn bigint_to_u64(x: &BigInt) -> Option<u64> {
    u64::try_from(x).ok()
}

pub fn one_bigint() -> BigInt {
    BigInt::one()
}

pub fn zero_bigint() -> BigInt {
    BigInt::zero()
}
