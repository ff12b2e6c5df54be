//! Buchberger's algorithm for ideals and submodules of free modules of
//! small rank, with normal forms and quotient certificates.
//!
//! Module terms are (component, power product) pairs ordered either
//! term-over-position (TOP, used for module elimination) or
//! position-over-term (POT, used to read off syzygies).

use std::collections::BTreeMap;

use crate::arith::{FieldKind, Scalar};
use crate::poly::{exp_divides, exp_lcm, exp_sub, Exp, Poly, PolyRing, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModOrder {
    /// Compare power products first, tie-break on component (lower index wins).
    Top(TermOrder),
    /// Compare components first (lower index wins), then power products.
    Pot(TermOrder),
}

impl ModOrder {
    fn cmp(&self, a: &(u32, Exp), b: &(u32, Exp)) -> std::cmp::Ordering {
        match self {
            ModOrder::Top(o) => o.cmp_exp(&a.1, &b.1).then_with(|| b.0.cmp(&a.0)),
            ModOrder::Pot(o) => b.0.cmp(&a.0).then_with(|| o.cmp_exp(&a.1, &b.1)),
        }
    }
}

/// Sparse module element: (component, exponent) -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModElem {
    ring: PolyRing,
    rank: usize,
    terms: BTreeMap<(u32, Exp), Scalar>,
}

impl ModElem {
    pub fn zero(ring: &PolyRing, rank: usize) -> Self {
        ModElem { ring: ring.clone(), rank, terms: BTreeMap::new() }
    }

    pub fn from_vec(parts: &[Poly]) -> Self {
        let ring = parts[0].ring().clone();
        let mut terms = BTreeMap::new();
        for (c, p) in parts.iter().enumerate() {
            assert!(*p.ring() == ring);
            for (e, s) in p.terms() {
                terms.insert((c as u32, e.clone()), s.clone());
            }
        }
        ModElem { ring, rank: parts.len(), terms }
    }

    pub fn to_vec(&self) -> Vec<Poly> {
        let mut out = vec![self.ring.zero(); self.rank];
        for ((c, e), s) in &self.terms {
            out[*c as usize] =
                out[*c as usize].add(&self.ring.monomial(e.clone(), s.clone()));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self, order: &ModOrder) -> Option<(&(u32, Exp), &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    fn add_term(&mut self, key: (u32, Exp), c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    /// self -= c * x^shift * g
    fn sub_mul(&mut self, g: &ModElem, shift: &[u32], c: &Scalar) {
        for ((comp, e), s) in &g.terms {
            let key = (*comp, crate::poly::exp_add(e, shift));
            self.add_term(key, s.mul(c).neg());
        }
    }

    fn scale(&mut self, c: &Scalar) {
        for v in self.terms.values_mut() {
            *v = v.mul(c);
        }
    }

    /// Clear denominators and remove content so coefficients stay small.
    /// Over finite fields this just makes the element monic.
    fn normalize(&mut self, order: &ModOrder) {
        if self.is_zero() {
            return;
        }
        let field = self.ring.field().clone();
        match field.kind() {
            FieldKind::Rationals => {
                use num_bigint::BigInt;
                use num_integer::Integer;
                use num_traits::{One, Signed, Zero};
                let mut den = BigInt::one();
                for v in self.terms.values() {
                    let r = v.as_rational().unwrap();
                    den = den.lcm(r.denom());
                }
                let mut num = BigInt::zero();
                for v in self.terms.values() {
                    let r = v.as_rational().unwrap();
                    num = num.gcd(&(r.numer() * (&den / r.denom())));
                }
                if num.is_zero() {
                    num = BigInt::one();
                }
                let lt = self.leading(order).unwrap().1.as_rational().unwrap();
                if lt.is_negative() {
                    num = -num;
                }
                let factor = field.from_bigint(&den).div(&field.from_bigint(&num));
                self.scale(&factor);
            }
            FieldKind::Func { .. } => {
                let ring = field.param_ring();
                // lcm of denominators
                let mut den = ring.one();
                for v in self.terms.values() {
                    let (_, d) = v.as_fraction().unwrap();
                    let g = den.gcd(d);
                    den = den.mul(&d.exact_div(&g).unwrap());
                }
                let den_s = field.from_fraction(den, ring.one());
                self.scale(&den_s);
                // now all coefficients are polynomials; divide by their gcd
                let mut cont = ring.zero();
                for v in self.terms.values() {
                    let (n, d) = v.as_fraction().unwrap();
                    debug_assert!(d.is_one());
                    cont = if cont.is_zero() { n.clone() } else { cont.gcd(n) };
                    if cont.is_constant() {
                        break;
                    }
                }
                if !cont.is_constant() && !cont.is_zero() {
                    let inv = field.from_fraction(ring.one(), cont);
                    self.scale(&inv);
                }
                let lc = self.leading(order).unwrap().1.clone();
                if let Some(c) = lc.constant_value() {
                    if !c.is_one() {
                        let ci = c.inv().expect("nonzero leading coefficient");
                        self.scale(&field.from_fraction(ring.from_scalar(ci), ring.one()));
                    }
                }
            }
            _ => {
                let lc = self.leading(order).unwrap().1.clone();
                if !lc.is_one() {
                    self.scale(&lc.inv().expect("field"));
                }
            }
        }
    }
}

/// Full normal form of `f` against `basis`; every term of the result is
/// irreducible. Quotients are returned when requested: f = sum q_i g_i + r.
fn reduce_full(
    f: &ModElem,
    basis: &[ModElem],
    order: &ModOrder,
    want_quotients: bool,
) -> (ModElem, Option<Vec<ModElem>>) {
    let ring = f.ring.clone();
    let lead: Vec<((u32, Exp), Scalar)> = basis
        .iter()
        .map(|g| {
            let (k, c) = g.leading(order).expect("basis elements nonzero");
            (k.clone(), c.clone())
        })
        .collect();
    let mut p = f.clone();
    let mut r = ModElem::zero(&ring, f.rank);
    let mut quots = if want_quotients {
        Some(vec![ModElem::zero(&ring, 1); basis.len()])
    } else {
        None
    };
    while let Some((lt, lc)) = p.leading(order).map(|(k, c)| (k.clone(), c.clone())) {
        let mut reduced = false;
        for (i, ((gc, ge), glc)) in lead.iter().enumerate() {
            if *gc == lt.0 && exp_divides(ge, &lt.1) {
                let shift = exp_sub(&lt.1, ge).unwrap();
                let c = lc.div(glc);
                p.sub_mul(&basis[i], &shift, &c);
                if let Some(q) = quots.as_mut() {
                    q[i].add_term((0, shift), c);
                }
                reduced = true;
                break;
            }
        }
        if !reduced {
            r.add_term(lt.clone(), lc.clone());
            p.terms.remove(&lt);
        }
    }
    (r, quots)
}

fn s_elem(f: &ModElem, g: &ModElem, order: &ModOrder) -> Option<ModElem> {
    let (fk, fc) = f.leading(order)?;
    let (gk, gc) = g.leading(order)?;
    if fk.0 != gk.0 {
        return None;
    }
    let comp = fk.0;
    let l = exp_lcm(&fk.1, &gk.1);
    let sf = exp_sub(&l, &fk.1).unwrap();
    let sg = exp_sub(&l, &gk.1).unwrap();
    let cf = fc.inv().expect("field");
    let cg = gc.inv().expect("field");
    let _ = comp;
    let mut out = ModElem::zero(&f.ring, f.rank);
    out.sub_mul(f, &sf, &cf.neg()); // += (1/lc_f) x^sf f
    out.sub_mul(g, &sg, &cg); // -= (1/lc_g) x^sg g
    Some(out)
}

/// Buchberger with the coprimality criterion (rank 1 only) and the chain
/// criterion; returns the unique reduced basis.
fn buchberger(gens: Vec<ModElem>, order: &ModOrder) -> Vec<ModElem> {
    let mut basis: Vec<ModElem> = Vec::new();
    for mut g in gens {
        if g.is_zero() {
            continue;
        }
        g.normalize(order);
        basis.push(g);
    }
    if basis.is_empty() {
        return basis;
    }
    let rank = basis[0].rank;
    let lead_of = |g: &ModElem| -> (u32, Exp) { g.leading(order).unwrap().0.clone() };

    let mut pending: std::collections::BTreeSet<(u32, usize, usize)> = std::collections::BTreeSet::new();
    let mut live: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let pair_lcm = |basis: &[ModElem], i: usize, j: usize| -> Option<(u32, Exp)> {
        let a = basis[i].leading(order).unwrap().0;
        let b = basis[j].leading(order).unwrap().0;
        if a.0 != b.0 {
            None
        } else {
            Some((a.0, exp_lcm(&a.1, &b.1)))
        }
    };
    let mut push_pair = |basis: &[ModElem],
                         pending: &mut std::collections::BTreeSet<(u32, usize, usize)>,
                         live: &mut std::collections::HashSet<(usize, usize)>,
                         i: usize,
                         j: usize| {
        let d = match pair_lcm(basis, i, j) {
            None => 0,
            Some((_, l)) => crate::poly::exp_deg(&l),
        };
        pending.insert((d, i, j));
        live.insert((i, j));
    };
    for i in 0..basis.len() {
        for j in 0..i {
            push_pair(&basis, &mut pending, &mut live, j, i);
        }
    }
    while let Some(&(d, i, j)) = pending.iter().next() {
        pending.remove(&(d, i, j));
        live.remove(&(i, j));
        let Some((comp, l)) = pair_lcm(&basis, i, j) else { continue };
        let ei = lead_of(&basis[i]);
        let ej = lead_of(&basis[j]);
        // coprimality criterion (valid for the ideal case)
        if rank == 1 && crate::poly::exp_add(&ei.1, &ej.1) == l {
            continue;
        }
        // chain criterion
        let mut skip = false;
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let (kc, ke) = lead_of(g);
            if kc == comp
                && exp_divides(&ke, &l)
                && !live.contains(&(i.min(k), i.max(k)))
                && !live.contains(&(j.min(k), j.max(k)))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }
        let Some(s) = s_elem(&basis[i], &basis[j], order) else { continue };
        let (mut r, _) = reduce_full(&s, &basis, order, false);
        if r.is_zero() {
            continue;
        }
        r.normalize(order);
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            push_pair(&basis, &mut pending, &mut live, k, n);
        }
    }
    // inter-reduce: drop elements whose LT is divisible by another LT
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (ic, ie) = lead_of(&basis[i]);
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (jc, je) = lead_of(&basis[j]);
            if ic == jc && exp_divides(&je, &ie) && (je != ie || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let kept: Vec<ModElem> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();
    // tail-reduce each against the others
    let mut out = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<ModElem> =
            kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let (mut r, _) = if others.is_empty() {
            (kept[i].clone(), None)
        } else {
            reduce_full(&kept[i], &others, order, false)
        };
        if !r.is_zero() {
            r.normalize(order);
            out.push(r);
        }
    }
    // deterministic output order: descending leading terms
    out.sort_by(|a, b| {
        let la = a.leading(order).unwrap().0.clone();
        let lb = b.leading(order).unwrap().0.clone();
        order.cmp(&lb, &la)
    });
    out
}

/// Reduced Groebner basis of an ideal.
pub fn groebner_basis(gens: &[Poly], order: &TermOrder) -> Vec<Poly> {
    let nonzero: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let elems: Vec<ModElem> =
        nonzero.iter().map(|g| ModElem::from_vec(std::slice::from_ref(*g))).collect();
    let gb = buchberger(elems, &ModOrder::Top(order.clone()));
    gb.into_iter().map(|e| e.to_vec().pop().unwrap()).collect()
}

/// Normal form against a Groebner basis.
pub fn normal_form(f: &Poly, gb: &[Poly], order: &TermOrder) -> Poly {
    if gb.is_empty() || f.is_zero() {
        return f.clone();
    }
    let fe = ModElem::from_vec(std::slice::from_ref(f));
    let be: Vec<ModElem> = gb.iter().map(|g| ModElem::from_vec(std::slice::from_ref(g))).collect();
    let (r, _) = reduce_full(&fe, &be, &ModOrder::Top(order.clone()), false);
    r.to_vec().pop().unwrap()
}

/// Normal form plus quotients: f = sum q_i g_i + r.
pub fn normal_form_with_quotients(
    f: &Poly,
    gb: &[Poly],
    order: &TermOrder,
) -> (Poly, Vec<Poly>) {
    if gb.is_empty() {
        return (f.clone(), Vec::new());
    }
    let fe = ModElem::from_vec(std::slice::from_ref(f));
    let be: Vec<ModElem> = gb.iter().map(|g| ModElem::from_vec(std::slice::from_ref(g))).collect();
    let (r, q) = reduce_full(&fe, &be, &ModOrder::Top(order.clone()), true);
    let quots = q.unwrap().into_iter().map(|e| e.to_vec().pop().unwrap()).collect();
    (r.to_vec().pop().unwrap(), quots)
}

/// Reduced Groebner basis of a submodule of R^rank.
pub fn groebner_module(gens: &[Vec<Poly>], order: &ModOrder) -> Vec<Vec<Poly>> {
    let elems: Vec<ModElem> = gens
        .iter()
        .filter(|g| g.iter().any(|p| !p.is_zero()))
        .map(|g| ModElem::from_vec(g))
        .collect();
    buchberger(elems, order).into_iter().map(|e| e.to_vec()).collect()
}

/// Module normal form.
pub fn normal_form_module(f: &[Poly], gb: &[Vec<Poly>], order: &ModOrder) -> Vec<Poly> {
    if gb.is_empty() {
        return f.to_vec();
    }
    let fe = ModElem::from_vec(f);
    let be: Vec<ModElem> = gb.iter().map(|g| ModElem::from_vec(g)).collect();
    let (r, _) = reduce_full(&fe, &be, order, false);
    r.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    fn ring3() -> PolyRing {
        PolyRing::new(Field::rationals(), vec!["x".into(), "y".into(), "z".into()])
    }

    #[test]
    fn principal_ideal() {
        let r = ring3();
        let x = r.var(0);
        let y = r.var(1);
        let gb = groebner_basis(&[x.sub(&y)], &TermOrder::Lex);
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0], x.sub(&y));
    }

    #[test]
    fn already_reduced_monomials() {
        let r = ring3();
        let x = r.var(0);
        let y = r.var(1);
        let gb = groebner_basis(&[x.pow(2), x.mul(&y)], &TermOrder::Lex);
        assert_eq!(gb.len(), 2);
    }

    #[test]
    fn paper_example_membership() {
        // NF(x^3 - y z^2) = 0 modulo <(x-z)^2, 3x - y - 2z>
        let r = ring3();
        let x = r.var(0);
        let y = r.var(1);
        let z = r.var(2);
        let f1 = x.sub(&z).pow(2);
        let f2 = x
            .mul_scalar(&r.field().from_int(3))
            .sub(&y)
            .sub(&z.mul_scalar(&r.field().from_int(2)));
        let gb = groebner_basis(&[f1, f2], &TermOrder::DegRevLex);
        let probe = x.pow(3).sub(&y.mul(&z.pow(2)));
        let nf = normal_form(&probe, &gb, &TermOrder::DegRevLex);
        assert!(nf.is_zero(), "x^3 - y z^2 must reduce to zero, got {nf}");
        assert!(!normal_form(&r.one(), &gb, &TermOrder::DegRevLex).is_zero());
    }

    #[test]
    fn s_poly_reduction_property() {
        let r = ring3();
        let x = r.var(0);
        let y = r.var(1);
        let z = r.var(2);
        let gens = vec![
            x.pow(2).add(&y.mul(&z)),
            y.pow(2).sub(&z.pow(2)),
            x.mul(&y).sub(&z.pow(2)),
        ];
        let order = TermOrder::DegRevLex;
        let gb = groebner_basis(&gens, &order);
        for i in 0..gb.len() {
            for j in 0..i {
                let a = ModElem::from_vec(std::slice::from_ref(&gb[i]));
                let b = ModElem::from_vec(std::slice::from_ref(&gb[j]));
                let mo = ModOrder::Top(order.clone());
                if let Some(s) = s_elem(&a, &b, &mo) {
                    let sp = s.to_vec().pop().unwrap();
                    assert!(normal_form(&sp, &gb, &order).is_zero());
                }
            }
        }
        for g in &gens {
            assert!(normal_form(g, &gb, &order).is_zero());
        }
    }

    #[test]
    fn reduced_basis_is_unique_per_run() {
        let r = ring3();
        let x = r.var(0);
        let y = r.var(1);
        let z = r.var(2);
        let gens = vec![x.sub(&z).pow(2), x.mul(&y).sub(&z.pow(2))];
        let a = groebner_basis(&gens, &TermOrder::DegRevLex);
        let b = groebner_basis(&a, &TermOrder::DegRevLex);
        assert_eq!(a, b, "recomputing a reduced basis reproduces it");
    }

    #[test]
    fn quotient_certificate() {
        let r = ring3();
        let x = r.var(0);
        let y = r.var(1);
        let gens = vec![x.pow(2).sub(&y), y.pow(2).sub(&r.one())];
        let order = TermOrder::DegRevLex;
        let gb = groebner_basis(&gens, &order);
        let f = x.pow(4).sub(&r.one());
        let (nf, quots) = normal_form_with_quotients(&f, &gb, &order);
        let mut recon = nf.clone();
        for (q, g) in quots.iter().zip(&gb) {
            recon = recon.add(&q.mul(g));
        }
        assert_eq!(recon, f);
        assert!(nf.is_zero());
    }

    #[test]
    fn module_syzygy_basics() {
        // Syzygies of (x, y) in Q[x,y]^1: graph rows (x | 1 0), (y | 0 1)
        let r = PolyRing::new(Field::rationals(), vec!["x".into(), "y".into()]);
        let x = r.var(0);
        let y = r.var(1);
        let g1 = vec![x.clone(), r.one(), r.zero()];
        let g2 = vec![y.clone(), r.zero(), r.one()];
        let order = ModOrder::Pot(TermOrder::DegRevLex);
        let gb = groebner_module(&[g1, g2], &order);
        let syz: Vec<&Vec<Poly>> = gb.iter().filter(|e| e[0].is_zero()).collect();
        assert_eq!(syz.len(), 1);
        let s = syz[0];
        let prod = s[1].mul(&x).add(&s[2].mul(&y));
        assert!(prod.is_zero());
        assert!(!s[1].is_zero());
    }

    #[test]
    fn finite_field_groebner() {
        let r = PolyRing::new(Field::prime(5), vec!["x".into(), "y".into()]);
        let x = r.var(0);
        let y = r.var(1);
        let gens = vec![x.pow(2).sub(&x).sub(&r.one()), y.sub(&x).sub(&r.one()).neg()];
        let gb = groebner_basis(&gens, &TermOrder::DegRevLex);
        for g in &gens {
            assert!(normal_form(g, &gb, &TermOrder::DegRevLex).is_zero());
        }
    }

    #[test]
    fn function_field_coefficients() {
        // Groebner basis over Q(z): <3x - y - 2z, y^2 - 2zy + z^2> as a
        // 0-dimensional ideal in x, y
        let k = Field::function_field(Field::rationals(), vec!["z".into()]);
        let pring = k.param_ring();
        let zc = k.from_fraction(pring.var(0), pring.one());
        let r = PolyRing::new(k.clone(), vec!["x".into(), "y".into()]);
        let x = r.var(0);
        let y = r.var(1);
        let z = r.from_scalar(zc);
        let f1 = x.mul_scalar(&k.from_int(3)).sub(&y).sub(&z.mul_scalar(&k.from_int(2)));
        let f2 = y.pow(2).sub(&y.mul(&z).mul_scalar(&k.from_int(2))).add(&z.pow(2));
        let gb = groebner_basis(&[f1.clone(), f2.clone()], &TermOrder::DegRevLex);
        for g in [&f1, &f2] {
            assert!(normal_form(g, &gb, &TermOrder::DegRevLex).is_zero());
        }
        // dimension as Q(z)-vector space should be 2: standard monomials 1, y
        let order = TermOrder::DegRevLex;
        let lts: Vec<Exp> = gb.iter().map(|g| g.leading_exp(&order).unwrap().clone()).collect();
        let mut count = 0;
        for a in 0..4u32 {
            for b in 0..4u32 {
                let e = vec![a, b];
                if !lts.iter().any(|lt| exp_divides(lt, &e)) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 2);
    }
}
