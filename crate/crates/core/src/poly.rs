//! Sparse multivariate polynomials over an exact coefficient field, with
//! term orders (lex, degrevlex, block elimination orders).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{Field, Scalar};

pub type Exp = Vec<u32>;

pub fn exp_add(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_sub(a: &[u32], b: &[u32]) -> Option<Exp> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

pub fn exp_lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn exp_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn exp_deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// A term order on power products. The elimination order is block
/// degrevlex-within-blocks with the eliminated variables forming the
/// heavier block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermOrder {
    Lex,
    DegRevLex,
    /// Eliminates the named variable indices (they dominate all others).
    Elim(Vec<usize>),
}

impl TermOrder {
    pub fn elim(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        TermOrder::Elim(v)
    }

    pub fn cmp_exp(&self, a: &[u32], b: &[u32]) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::DegRevLex => cmp_degrevlex(a, b),
            TermOrder::Elim(block) => {
                let da: u32 = block.iter().map(|&i| a[i]).sum();
                let db: u32 = block.iter().map(|&i| b[i]).sum();
                match da.cmp(&db) {
                    Equal => {}
                    o => return o,
                }
                for &i in block.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Equal => {}
                        Less => return Greater,
                        Greater => return Less,
                    }
                }
                let rest: Vec<usize> = (0..a.len()).filter(|i| !block.contains(i)).collect();
                let da: u32 = rest.iter().map(|&i| a[i]).sum();
                let db: u32 = rest.iter().map(|&i| b[i]).sum();
                match da.cmp(&db) {
                    Equal => {}
                    o => return o,
                }
                for &i in rest.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Equal => {}
                        Less => return Greater,
                        Greater => return Less,
                    }
                }
                Equal
            }
        }
    }
}

pub fn cmp_degrevlex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    match exp_deg(a).cmp(&exp_deg(b)) {
        Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Equal => {}
            Less => return Greater,
            Greater => return Less,
        }
    }
    Equal
}

#[derive(Debug)]
pub struct RingData {
    pub field: Field,
    pub vars: Vec<String>,
}

/// A polynomial ring K[x₁,…,x_n]; cheap to clone.
#[derive(Debug, Clone)]
pub struct PolyRing(Arc<RingData>);

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>) -> Self {
        PolyRing(Arc::new(RingData { field, vars }))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Poly {
        Poly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Poly {
        self.from_scalar(self.field().one())
    }

    pub fn from_scalar(&self, c: Scalar) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; self.nvars()], c);
        }
        Poly { ring: self.clone(), terms }
    }

    pub fn from_int(&self, n: i64) -> Poly {
        self.from_scalar(self.field().from_int(n))
    }

    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.nvars());
        let mut exp = vec![0; self.nvars()];
        exp[i] = 1;
        self.monomial(exp, self.field().one())
    }

    pub fn monomial(&self, exp: Exp, c: Scalar) -> Poly {
        assert_eq!(exp.len(), self.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { ring: self.clone(), terms }
    }

    pub fn term(&self, exp: Exp) -> Poly {
        self.monomial(exp, self.field().one())
    }
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.vars == other.0.vars)
    }
}
impl Eq for PolyRing {}

/// Sparse polynomial; the term map never stores zero coefficients.
#[derive(Debug, Clone)]
pub struct Poly {
    ring: PolyRing,
    terms: BTreeMap<Exp, Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (e, c) in &self.terms {
            e.hash(state);
            c.hash(state);
        }
    }
}

impl Poly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exp, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff_of(&self, exp: &[u32]) -> Scalar {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.field().zero())
    }

    /// Some(c) when the polynomial is the constant c (including 0).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field().zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if exp_deg(e) == 0 {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// A *term* in the paper's sense: single monomial with coefficient 1.
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().is_one()
    }

    pub fn is_single_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_binomial(&self) -> bool {
        self.terms.len() == 2
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| exp_deg(e)).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn occurring_vars(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    fn insert_add(terms: &mut BTreeMap<Exp, Scalar>, exp: Exp, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.ring == other.ring, "ring mismatch in add");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, e.clone(), c.clone());
        }
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.ring == other.ring, "ring mismatch in mul");
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                Self::insert_add(&mut terms, exp_add(e1, e2), c1.mul(c2));
            }
        }
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &[u32], c: &Scalar) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, x)| (exp_add(e, exp), x.mul(c))).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
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

    /// Leading exponent under the given order.
    pub fn leading_exp(&self, order: &TermOrder) -> Option<&Exp> {
        self.terms.keys().max_by(|a, b| order.cmp_exp(a, b))
    }

    pub fn leading_coeff(&self, order: &TermOrder) -> Option<&Scalar> {
        self.leading_exp(order).map(|e| &self.terms[e])
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self, order: &TermOrder) -> Poly {
        match self.leading_coeff(order) {
            None => self.clone(),
            Some(lc) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    self.mul_scalar(&lc.inv().expect("leading coefficient invertible"))
                }
            }
        }
    }

    /// Substitute a polynomial for one variable (same ring).
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        let mut by_pow: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[var];
            let mut e2 = e.clone();
            e2[var] = 0;
            let m = self.ring.monomial(e2, c.clone());
            match by_pow.entry(k) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(m);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get().add(&m);
                    *o.get_mut() = s;
                }
            }
        }
        let mut acc = self.ring.zero();
        let mut prev: Option<u32> = None;
        for (k, part) in by_pow.into_iter().rev() {
            if let Some(pk) = prev {
                acc = acc.mul(&value.pow(pk - k));
            }
            acc = acc.add(&part);
            prev = Some(k);
        }
        if let Some(pk) = prev {
            acc = acc.mul(&value.pow(pk));
        }
        acc
    }

    /// Map this polynomial into another ring by variable-name matching;
    /// only variables that actually occur must exist in the target.
    /// Coefficients are embedded via `Scalar::embed_into`.
    pub fn map_ring(&self, target: &PolyRing) -> crate::Result<Poly> {
        let mut var_map: Vec<Option<usize>> = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            var_map.push(target.var_index(v));
        }
        let mut out = target.zero();
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; target.nvars()];
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match var_map[i] {
                    Some(j) => e2[j] = x,
                    None => {
                        return Err(crate::Error::RingMismatch(format!(
                            "variable {} missing in target ring",
                            self.ring.vars()[i]
                        )))
                    }
                }
            }
            let c2 = c.embed_into(target.field())?;
            out = out.add(&target.monomial(e2, c2));
        }
        Ok(out)
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let k = self.field().from_int(e[var] as i64);
            let c2 = c.mul(&k);
            if c2.is_zero() {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            Self::insert_add(&mut terms, e2, c2);
        }
        Poly { ring: self.ring.clone(), terms }
    }

    /// Exact division; None when not divisible.
    pub fn exact_div(&self, g: &Poly) -> Option<Poly> {
        assert!(self.ring == g.ring);
        assert!(!g.is_zero(), "division by zero polynomial");
        let order = TermOrder::DegRevLex;
        let glt = g.leading_exp(&order).unwrap().clone();
        let glc_inv = g.terms[&glt].inv().expect("field coefficient");
        let mut rest = self.clone();
        let mut quo = self.ring.zero();
        while !rest.is_zero() {
            let rlt = rest.leading_exp(&order).unwrap().clone();
            let Some(d) = exp_sub(&rlt, &glt) else { return None };
            let c = rest.terms[&rlt].mul(&glc_inv);
            let m = self.ring.monomial(d, c);
            quo = quo.add(&m);
            rest = rest.sub(&m.mul(g));
        }
        Some(quo)
    }

    /// Quotient of division by a single term; None when some term of self
    /// is not divisible by it.
    pub fn div_by_term(&self, exp: &[u32]) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = exp_sub(e, exp)?;
            terms.insert(d, c.clone());
        }
        Some(Poly { ring: self.ring.clone(), terms })
    }

    /// Largest term dividing every term of the polynomial.
    pub fn common_term_factor(&self) -> Option<Exp> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Multivariate gcd, normalized so the degrevlex-leading coefficient
    /// is 1. Primitive PRS in the highest occurring variable.
    pub fn gcd(&self, other: &Poly) -> Poly {
        assert!(self.ring == other.ring);
        let g = gcd_rec(self, other);
        g.monic(&TermOrder::DegRevLex)
    }

    /// View as a dense univariate polynomial in `var` with Poly coefficients.
    pub fn to_univar(&self, var: usize) -> Vec<Poly> {
        let d = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut coeffs = vec![self.ring.zero(); d as usize + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            coeffs[k] = coeffs[k].add(&self.ring.monomial(e2, c.clone()));
        }
        coeffs
    }

    pub fn from_univar(ring: &PolyRing, var: usize, coeffs: &[Poly]) -> Poly {
        let mut acc = ring.zero();
        for (k, c) in coeffs.iter().enumerate() {
            let mut xk = vec![0; ring.nvars()];
            xk[var] = k as u32;
            acc = acc.add(&c.mul_monomial(&xk, &ring.field().one()));
        }
        acc
    }
}

fn univar_deg(c: &[Poly]) -> Option<usize> {
    c.iter().rposition(|p| !p.is_zero())
}

fn univar_trim(mut c: Vec<Poly>) -> Vec<Poly> {
    while c.last().map_or(false, |p| p.is_zero()) {
        c.pop();
    }
    c
}

/// Pseudo-remainder of dense univariate polys with Poly coefficients.
fn pseudo_rem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let dg = univar_deg(g).expect("nonzero divisor");
    let lc_g = g[dg].clone();
    let mut r: Vec<Poly> = f.to_vec();
    loop {
        let dr = match univar_deg(&r) {
            None => break,
            Some(d) => d,
        };
        if dr < dg {
            break;
        }
        let lead = r[dr].clone();
        // r := lc_g·r − lead·x^(dr−dg)·g
        for c in r.iter_mut() {
            *c = c.mul(&lc_g);
        }
        for j in 0..=dg {
            let idx = dr - dg + j;
            let t = lead.mul(&g[j]);
            r[idx] = r[idx].sub(&t);
        }
        r = univar_trim(r);
    }
    r
}

fn content_of_coeffs(coeffs: &[Poly]) -> Poly {
    let ring = coeffs.iter().find(|c| !c.is_zero()).expect("nonzero").ring().clone();
    let mut acc = ring.zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { c.clone() } else { gcd_rec(&acc, c) };
        if acc.as_constant().is_some() {
            return ring.one();
        }
    }
    acc
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    let ring = a.ring().clone();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return ring.one();
    }
    let va = a.occurring_vars();
    let vb = b.occurring_vars();
    let var = *va.iter().chain(vb.iter()).max().unwrap();
    let fa = a.to_univar(var);
    let fb = b.to_univar(var);
    if fa.len() == 1 || fb.len() == 1 {
        // one of them does not involve `var`
        let (small, big) = if fa.len() == 1 { (a, &fb) } else { (b, &fa) };
        let cont = content_of_coeffs(big);
        return gcd_rec(small, &cont);
    }
    let cont_a = content_of_coeffs(&fa);
    let cont_b = content_of_coeffs(&fb);
    let cont = gcd_rec(&cont_a, &cont_b);
    let prim = |f: &[Poly], c: &Poly| -> Vec<Poly> {
        f.iter()
            .map(|x| if x.is_zero() { x.clone() } else { x.exact_div(c).expect("content divides") })
            .collect()
    };
    let mut f = prim(&fa, &cont_a);
    let mut g = prim(&fb, &cont_b);
    if univar_deg(&f) < univar_deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g);
        if univar_deg(&r).is_none() {
            let cg = content_of_coeffs(&g);
            let gp = prim(&g, &cg);
            let gu = Poly::from_univar(&ring, var, &gp);
            return cont.mul(&gu);
        }
        if univar_deg(&r).unwrap() == 0 {
            return cont;
        }
        let r = {
            let cr = content_of_coeffs(&r);
            prim(&r, &cr)
        };
        f = g;
        g = r;
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut exps: Vec<&Exp> = self.terms.keys().collect();
        exps.sort_by(|a, b| cmp_degrevlex(b, a));
        let mut first = true;
        for e in exps {
            let c = &self.terms[e];
            let cs = c.to_string();
            let simple_neg = cs.starts_with('-') && !cs[1..].contains(['+', '-', '/']) ||
                (cs.starts_with('-') && cs[1..].chars().all(|ch| ch.is_ascii_digit() || ch == '/'));
            let (neg, mag) = if simple_neg {
                (true, cs[1..].to_string())
            } else {
                (false, cs)
            };
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
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.ring.vars()[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars()[i], k)
                    }
                })
                .collect();
            let coeff_needed = vars.is_empty() || mag != "1";
            let coeff_str = if mag.contains(['+', ' ']) && !vars.is_empty() {
                format!("({})", mag)
            } else {
                mag
            };
            if vars.is_empty() {
                write!(f, "{}", coeff_str)?;
            } else if coeff_needed {
                write!(f, "{}*{}", coeff_str, vars.join("*"))?;
            } else {
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
