//! Unit lattices with associated characters, lattice ideals, and the
//! binomial part of ideals saturated with respect to the indeterminates.
//!
//! The determinant normalization reduces unit lattices w.r.t. K^× to
//! exponent lattices: here the function-field lattice N of the monic
//! determinant parts is computed first, so that the remaining exponent
//! lattice only involves elements whose multiplication determinant is a
//! constant, keeping root adjunctions inside the ground field.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{Field, FieldKind, Scalar};
use crate::error::Error;
use crate::explat;
use crate::factor;
use crate::ideal::Ideal;
use crate::intlattice::{IntVec, Lattice};
use crate::poly::{Poly, PolyRing, TermOrder};
use crate::zerodim::{self, ZeroDimAlgebra};
use crate::Result;

/// A lattice in ℤ^k together with its character values on the HNF basis.
#[derive(Debug, Clone)]
pub struct CharLattice {
    pub lattice: Lattice,
    /// ρ(bᵢ) for each HNF basis row, values in the ground field K
    pub values: Vec<Scalar>,
}

impl CharLattice {
    pub fn trivial_full(k: usize, field: &Field) -> Self {
        CharLattice { lattice: Lattice::full(k), values: vec![field.one(); k] }
    }

    /// ρ(a) for a lattice member, multiplicatively extended from the basis.
    pub fn char_value(&self, a: &IntVec) -> Result<Scalar> {
        let coords = self
            .lattice
            .coordinates(a)
            .ok_or_else(|| Error::domain("vector outside the character lattice"))?;
        let field = self
            .values
            .first()
            .map(|v| v.field().clone())
            .ok_or_else(|| Error::domain("empty character lattice"))?;
        let mut acc = field.one();
        for (c, v) in coords.iter().zip(&self.values) {
            acc = acc.mul(&v.pow_bigint(c));
        }
        Ok(acc)
    }
}

/// {v ∈ Λ ∩ M : ρ(v) = τ(v)} with ρ restricted to it.
pub fn intersect_char_lattices(a: &CharLattice, b: &CharLattice) -> Result<CharLattice> {
    let inter = a.lattice.intersect(&b.lattice)?;
    if inter.rank() == 0 {
        return Ok(CharLattice { lattice: inter, values: Vec::new() });
    }
    let ratios: Vec<Scalar> = inter
        .basis()
        .iter()
        .map(|row| {
            let v = IntVec(row.clone());
            let ra = a.char_value(&v)?;
            let rb = b.char_value(&v)?;
            Ok(ra.mul(&rb.inv().expect("character values nonzero")))
        })
        .collect::<Result<Vec<_>>>()?;
    let e = explat::exponent_lattice(&ratios)?;
    let k = a.lattice.ambient_rank();
    let rows: Vec<Vec<BigInt>> = e
        .basis()
        .iter()
        .map(|c| {
            let mut v = vec![BigInt::zero(); k];
            for (ci, brow) in c.iter().zip(inter.basis()) {
                for (vi, bi) in v.iter_mut().zip(brow) {
                    *vi += ci * bi;
                }
            }
            v
        })
        .collect();
    let lattice = Lattice::from_rows(k, rows);
    let values = lattice
        .basis()
        .iter()
        .map(|row| a.char_value(&IntVec(row.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(CharLattice { lattice, values })
}

/// The lattice ideal I_{Λ,ρ} = ⟨X^{b⁺} − ρ(b) X^{b⁻}⟩ : (x₁⋯x_n)^∞.
pub fn lattice_ideal(cl: &CharLattice, ring: &PolyRing) -> Ideal {
    let n = ring.nvars();
    assert_eq!(cl.lattice.ambient_rank(), n, "lattice rank must match ring");
    if cl.lattice.rank() == 0 {
        return Ideal::zero(ring);
    }
    let mut gens = Vec::new();
    for (row, val) in cl.lattice.basis().iter().zip(&cl.values) {
        let v = IntVec(row.clone());
        let plus = v.plus_part();
        let minus = v.minus_part();
        let to_exp = |iv: &IntVec| -> Vec<u32> {
            iv.0.iter().map(|x| u32::try_from(x).expect("small exponent")).collect()
        };
        let t1 = ring.term(to_exp(&plus));
        let t2 = ring.monomial(to_exp(&minus), val.clone());
        gens.push(t1.sub(&t2));
    }
    let pre = Ideal::new(ring, gens);
    let mut prod = ring.one();
    for i in 0..n {
        prod = prod.mul(&ring.var(i));
    }
    pre.saturate_elem(&prod).0
}

/// Presentation data shared by the unit-lattice algorithms.
struct ZeroDimSetup {
    alg: ZeroDimAlgebra,
    /// ground field K of the original polynomial ring
    ground: Field,
    /// names of the independent variables adjoined to the base field
    u_names: Vec<String>,
    /// images of the F-tuple inside the algebra
    felems: Vec<Poly>,
}

fn setup_zero_dim(ideal: &Ideal, u_set: &[usize], fpolys: &[Poly]) -> Result<ZeroDimSetup> {
    let ring = ideal.ring().clone();
    let ground = ring.field().clone();
    let alg = zerodim::present_algebra(ideal, u_set)?;
    let (_, mapper) = zerodim::algebra_ring(&ring, u_set)?;
    let felems: Vec<Poly> = fpolys.iter().map(|f| mapper(f)).collect::<Result<Vec<_>>>()?;
    let u_names = u_set.iter().map(|&i| ring.vars()[i].clone()).collect();
    Ok(ZeroDimSetup { alg, ground, u_names, felems })
}

/// Convert a constant of the algebra base field K(U) back into the ground
/// field K (the character values must land there).
fn ground_value(c: &Scalar, ground: &Field) -> Result<Scalar> {
    if c.field() == ground {
        return Ok(c.clone());
    }
    match (c.field().kind(), ground.kind()) {
        (FieldKind::Func { .. }, FieldKind::Func { .. }) => {
            let (n, d) = c.as_fraction().unwrap();
            let gring = ground.param_ring();
            let n2 = n.map_ring(&gring)?;
            let d2 = d.map_ring(&gring)?;
            Ok(ground.from_fraction(n2, d2))
        }
        (FieldKind::Func { .. }, _) => c
            .constant_value()
            .ok_or_else(|| Error::internal("character value does not lie in the ground field")),
        _ => Err(Error::internal("unexpected field relation for character value")),
    }
}

/// Split a determinant d ∈ K(U)^× as g·p with g the leading constant and p
/// monic with respect to the U-parameters.
fn split_const_monic(d: &Scalar, u_names: &[String]) -> (Scalar, Scalar) {
    let field = d.field().clone();
    match field.kind() {
        FieldKind::Func { .. } => {
            let (num, den) = d.as_fraction().unwrap();
            let ring = field.param_ring();
            let u_idx: Vec<usize> =
                u_names.iter().filter_map(|n| ring.var_index(n)).collect();
            // leading coefficient w.r.t. the U-block (degrevlex on U-part)
            let lc_of = |p: &Poly| -> Scalar {
                let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
                for (e, _) in p.terms() {
                    let ue: Vec<u32> = u_idx.iter().map(|&i| e[i]).collect();
                    match &best {
                        None => best = Some((ue, e.clone())),
                        Some((bu, _)) => {
                            if crate::poly::cmp_degrevlex(&ue, bu) == std::cmp::Ordering::Greater {
                                best = Some((ue, e.clone()));
                            }
                        }
                    }
                }
                let (_, e) = best.expect("nonzero");
                // the coefficient together with the non-U part of the monomial
                let mut rest = e.clone();
                for &i in &u_idx {
                    rest[i] = 0;
                }
                field.from_fraction(ring.monomial(rest, p.coeff_of(&e)), ring.one())
            };
            // denominator is already monic in the canonical form; its
            // U-leading coefficient may still involve base parameters
            let gn = lc_of(num);
            let gd = lc_of(den);
            let g = gn.div(&gd);
            let p = d.div(&g);
            (g, p)
        }
        _ => (d.clone(), field.one()),
    }
}

/// ℓ-th power part of a ground-field constant: c = γ^ℓ · c̃ with c̃ as small
/// as possible (c̃ = 1 exactly when c is an ℓ-th power in K).
fn lth_power_split(c: &Scalar, ell: u64) -> (Scalar, Scalar) {
    let field = c.field().clone();
    match field.kind() {
        FieldKind::Rationals => {
            let r = c.as_rational().unwrap();
            let gamma_num = int_lth_power_part(&r.numer().abs(), ell);
            let gamma_den = int_lth_power_part(&r.denom().abs(), ell);
            let mut gamma = field
                .from_bigint(&gamma_num)
                .div(&field.from_bigint(&gamma_den));
            if r.is_negative() && ell % 2 == 1 {
                gamma = gamma.neg();
            }
            let rest = c.div(&gamma.pow_i64(ell as i64));
            (gamma, rest)
        }
        _ if field.is_finite() => {
            use num_traits::ToPrimitive;
            let q = field.order().unwrap().to_u64().unwrap_or(0);
            if q == 0 || q > 1_000_000 {
                return (field.one(), c.clone());
            }
            // discrete log approach: c = g^e, solve ℓ x ≡ e (mod q-1)
            let g = match crate::explat::finite::generator(&field, q) {
                Ok(g) => g,
                Err(_) => return (field.one(), c.clone()),
            };
            let e = match crate::explat::finite::bsgs(&g, c, q - 1) {
                Some(e) => e,
                None => return (field.one(), c.clone()),
            };
            let n = q - 1;
            let d = gcd_u64(ell % n.max(1), n);
            if e % d != 0 {
                return (field.one(), c.clone());
            }
            // x = (e/d) * inv(ell/d) mod n/d
            let li = mod_inv_u64((ell % n) / d, n / d);
            let x = ((e / d) % (n / d)) * li % (n / d);
            let gamma = g.pow_bigint(&BigInt::from(x));
            let rest = c.div(&gamma.pow_i64(ell as i64));
            (gamma, rest)
        }
        _ => (field.one(), c.clone()),
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

fn mod_inv_u64(a: u64, m: u64) -> u64 {
    if m <= 1 {
        return 0;
    }
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (m as i128, (a % m) as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    t.rem_euclid(m as i128) as u64
}

fn int_lth_power_part(n: &BigInt, ell: u64) -> BigInt {
    // largest γ with γ^ℓ | n, via the ℓ-divisibility of small prime parts
    let mut gamma = BigInt::one();
    let mut rest = n.clone();
    let mut p = BigInt::from(2u32);
    let lim = BigInt::from(100_000u64);
    while &p * &p <= rest && p <= lim {
        if (&rest % &p).is_zero() {
            let mut e = 0u64;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            gamma *= p.pow((e / ell) as u32);
        }
        p += 1u32;
    }
    // remaining cofactor: try an exact ℓ-th root
    if !rest.is_one() {
        let root = rest.nth_root(ell as u32);
        if root.pow(ell as u32) == rest {
            gamma *= root;
        }
    }
    gamma
}

/// Unit lattice of F modulo I·K(U)[X∖U] ∩ K[X] w.r.t. K^×, with character.
pub fn unit_lattice_zerodim(ideal: &Ideal, u_set: &[usize], fpolys: &[Poly]) -> Result<CharLattice> {
    let k = fpolys.len();
    let setup = setup_zero_dim(ideal, u_set, fpolys)?;
    let alg = &setup.alg;
    for f in &setup.felems {
        if !alg.is_invertible(f) {
            return Err(Error::domain("unit lattice of a zero divisor"));
        }
    }
    let ell = alg.dim() as u64;
    // determinants and their const·monic splits
    let dets: Vec<Scalar> = setup.felems.iter().map(|f| alg.det_of_mul(f)).collect();
    let splits: Vec<(Scalar, Scalar)> =
        dets.iter().map(|d| split_const_monic(d, &setup.u_names)).collect();
    // N: exponent lattice of the monic parts raised to ℓ
    let n_lattice = if setup.u_names.is_empty() {
        Lattice::full(k)
    } else {
        let parts: Vec<Scalar> = splits.iter().map(|(_, p)| p.pow_i64(ell as i64)).collect();
        explat::exponent_lattice(&parts)?
    };
    if n_lattice.rank() == 0 {
        return Ok(CharLattice { lattice: Lattice::zero(k), values: Vec::new() });
    }
    // units with constant determinants: G_j = F^{n_j}
    let gs: Vec<Poly> = n_lattice
        .basis()
        .iter()
        .map(|row| {
            let mut acc = alg.one();
            for (f, e) in setup.felems.iter().zip(row) {
                acc = alg.nf(&acc.mul(&alg.pow_elem(f, e)?));
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let gdets: Vec<Scalar> = n_lattice
        .basis()
        .iter()
        .map(|row| {
            let mut acc = alg.field().one();
            for (d, e) in dets.iter().zip(row) {
                acc = acc.mul(&d.pow_bigint(e));
            }
            acc
        })
        .collect();
    // ℓ-th roots of the constant determinants, adjoining w-generators for
    // the non-power parts
    let ground_dets: Vec<Scalar> = gdets
        .iter()
        .map(|d| ground_value(d, &setup.ground))
        .collect::<Result<Vec<_>>>()?;
    let root_splits: Vec<(Scalar, Scalar)> =
        ground_dets.iter().map(|c| lth_power_split(c, ell)).collect();
    let (zeta_k, _r) = factor::roots_of_unity_generator(ell, &setup.ground)?;
    // Adjoin one ℓ-th root per multiplicatively independent residual: a
    // residual expressible as an ℓ-th power times a product of already
    // adjoined values reuses those roots, so equal or dependent
    // determinants share consistent root choices.
    let bfield = alg.field().clone();
    struct RootExpr {
        gamma: Scalar,        // ground-field factor
        exps: Vec<u32>,       // exponents on the adjoined roots
    }
    let mut adjoined_values: Vec<Scalar> = Vec::new(); // residual per new root
    let mut exprs: Vec<RootExpr> = Vec::with_capacity(root_splits.len());
    for (gamma, rest) in &root_splits {
        if rest.is_one() {
            exprs.push(RootExpr { gamma: gamma.clone(), exps: vec![0; adjoined_values.len()] });
            continue;
        }
        // search small exponent tuples over the existing roots
        let t = adjoined_values.len();
        let mut found: Option<(Scalar, Vec<u32>)> = None;
        if t > 0 && (ell as u128).pow(t as u32) <= 4096 {
            let mut tuple = vec![0u32; t];
            'search: loop {
                if tuple.iter().any(|&e| e > 0) {
                    let mut denom = setup.ground.one();
                    for (v, &e) in adjoined_values.iter().zip(&tuple) {
                        denom = denom.mul(&v.pow_i64(e as i64));
                    }
                    let cand = rest.div(&denom);
                    let (g2, r2) = lth_power_split(&cand, ell);
                    if r2.is_one() {
                        found = Some((gamma.mul(&g2), tuple.clone()));
                        break 'search;
                    }
                }
                let mut i = 0;
                loop {
                    if i == t {
                        break 'search;
                    }
                    tuple[i] += 1;
                    if tuple[i] < ell as u32 {
                        break;
                    }
                    tuple[i] = 0;
                    i += 1;
                }
            }
        }
        match found {
            Some((g, tuple)) => {
                let mut exps = tuple;
                exps.resize(adjoined_values.len(), 0);
                exprs.push(RootExpr { gamma: g, exps });
            }
            None => {
                adjoined_values.push(rest.clone());
                let mut exps = vec![0; adjoined_values.len()];
                *exps.last_mut().unwrap() = 1;
                exprs.push(RootExpr { gamma: gamma.clone(), exps });
            }
        }
    }
    for e in exprs.iter_mut() {
        e.exps.resize(adjoined_values.len(), 0);
    }
    // build the extended algebra with w_t^ℓ = residual_t
    let mut ext_vars: Vec<String> = alg.ring.vars().to_vec();
    let mut w_names = Vec::with_capacity(adjoined_values.len());
    for t in 0..adjoined_values.len() {
        let mut name = format!("w{t}");
        while ext_vars.contains(&name) {
            name.push('#');
        }
        w_names.push(name.clone());
        ext_vars.push(name);
    }
    let (t_alg, q_elems, zeta_elem) = if adjoined_values.is_empty() {
        let zeta_b = zeta_k.embed_into(&bfield)?;
        let q_elems: Vec<Poly> = gs
            .iter()
            .zip(&exprs)
            .map(|(g, ex)| {
                let gi = ex.gamma.embed_into(&bfield)?.inv().expect("nonzero root part");
                Ok(alg.nf(&g.mul_scalar(&gi)))
            })
            .collect::<Result<Vec<_>>>()?;
        (alg.clone(), q_elems, alg.ring.from_scalar(zeta_b))
    } else {
        let ext_ring = PolyRing::new(bfield.clone(), ext_vars.clone());
        let mut gens: Vec<Poly> = alg
            .ideal
            .gens()
            .iter()
            .map(|g| g.map_ring(&ext_ring))
            .collect::<Result<Vec<_>>>()?;
        let base_n = alg.ring.nvars();
        for (t, val) in adjoined_values.iter().enumerate() {
            let w = ext_ring.var(base_n + t);
            let val_b = val.embed_into(&bfield)?;
            gens.push(w.pow(ell as u32).sub(&ext_ring.from_scalar(val_b)));
        }
        let t_ideal = Ideal::new(&ext_ring, gens);
        let t_alg = ZeroDimAlgebra::new(t_ideal)?;
        let zeta_b = zeta_k.embed_into(&bfield)?;
        let zeta_elem = ext_ring.from_scalar(zeta_b);
        let mut q_elems = Vec::with_capacity(gs.len());
        for (g, ex) in gs.iter().zip(&exprs) {
            let ge = g.map_ring(&ext_ring)?;
            let gi = ex.gamma.embed_into(&bfield)?.inv().expect("nonzero root part");
            let mut q = ge.mul_scalar(&gi);
            for (t, &e) in ex.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let w = ext_ring.var(base_n + t);
                let winv = t_alg
                    .inverse(&w)
                    .ok_or_else(|| Error::internal("adjoined root not invertible"))?;
                for _ in 0..e {
                    q = t_alg.nf(&q.mul(&winv));
                }
            }
            q_elems.push(t_alg.nf(&q));
        }
        (t_alg, q_elems, zeta_elem)
    };
    // exponent lattice of (q_1, ..., q_r, ζ) in the extended algebra
    let mut tuple = q_elems.clone();
    tuple.push(t_alg.nf(&zeta_elem));
    let char_p = t_alg.field().characteristic();
    let mprime = if char_p == 0 {
        zerodim::exponent_lattice_zerodim_char0(&t_alg, &tuple)?
    } else {
        zerodim::exponent_lattice_zerodim_charp(&t_alg, &tuple)?
    };
    let r = gs.len();
    let m_c = mprime.project(&(0..r).collect::<Vec<_>>());
    // back to the original coordinates: Λ = { Σ c_j n_j }
    let rows: Vec<Vec<BigInt>> = m_c
        .basis()
        .iter()
        .map(|c| {
            let mut v = vec![BigInt::zero(); k];
            for (cj, nrow) in c.iter().zip(n_lattice.basis()) {
                for (vi, ni) in v.iter_mut().zip(nrow) {
                    *vi += cj * ni;
                }
            }
            v
        })
        .collect();
    let lattice = Lattice::from_rows(k, rows);
    // character values: normal forms of F^{b} must be ground-field constants
    let values = lattice
        .basis()
        .iter()
        .map(|b| {
            let mut acc = alg.one();
            for (f, e) in setup.felems.iter().zip(b) {
                acc = alg.nf(&acc.mul(&alg.pow_elem(f, e)?));
            }
            let c = acc
                .as_constant()
                .ok_or_else(|| Error::internal("unit-lattice value is not constant"))?;
            ground_value(&c, &setup.ground)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharLattice { lattice, values })
}

/// Unit lattice and character of F modulo I w.r.t. K^× (the general
/// recursion over maximal independent sets).
pub fn unit_lattice(ideal: &Ideal, fpolys: &[Poly]) -> Result<CharLattice> {
    let ring = ideal.ring().clone();
    let mut fprod = ring.one();
    for f in fpolys {
        fprod = fprod.mul(f);
    }
    if fprod.is_zero() {
        return Err(Error::domain("unit lattice of a tuple containing zero"));
    }
    let (sat, _) = ideal.saturate_elem(&fprod);
    if !sat.eq_ideal(ideal) {
        return Err(Error::NotSaturated(
            "unit_lattice needs I : ⟨f₁⋯f_k⟩^∞ = I".into(),
        ));
    }
    unit_lattice_rec(ideal, fpolys, &fprod, 0)
}

fn unit_lattice_rec(
    ideal: &Ideal,
    fpolys: &[Poly],
    fprod: &Poly,
    depth: usize,
) -> Result<CharLattice> {
    if depth > 16 {
        return Err(Error::internal("unit-lattice recursion did not terminate"));
    }
    let ring = ideal.ring().clone();
    let u_set = ideal.max_independent_set()?;
    let cl = unit_lattice_zerodim(ideal, &u_set, fpolys)?;
    if u_set.is_empty() {
        // already zero-dimensional: contraction changes nothing
        return Ok(cl);
    }
    // h = lcm of the leading coefficients of the elimination basis viewed
    // over K(U)
    let elim_vars: Vec<usize> = (0..ring.nvars()).filter(|i| !u_set.contains(i)).collect();
    let order = TermOrder::elim(elim_vars.iter().copied());
    let gb = ideal.groebner_basis(&order);
    let mut h = ring.one();
    for g in gb.iter() {
        let lc = leading_coeff_over_u(g, &elim_vars, &order);
        let gcd = h.gcd(&lc);
        h = h.mul(&lc.exact_div(&gcd).expect("gcd divides"));
    }
    if h.is_constant() {
        return Ok(cl);
    }
    let (sat_h, m) = ideal.saturate_elem(&h);
    let with_hm = ideal.plus_elem(&h.pow(m as u32));
    let (j, _) = with_hm.saturate_elem(fprod);
    if j.is_unit() || j.contains_ideal(&sat_h) {
        return Ok(cl);
    }
    let other = unit_lattice_rec(&j, fpolys, fprod, depth + 1)?;
    intersect_char_lattices(&cl, &other)
}

/// Leading coefficient of g as an element of K(U)[X∖U]: the sub-polynomial
/// in the U-variables attached to the leading X∖U-monomial.
fn leading_coeff_over_u(g: &Poly, elim_vars: &[usize], order: &TermOrder) -> Poly {
    let ring = g.ring().clone();
    let lead = g.leading_exp(order).expect("nonzero");
    let key: Vec<u32> = elim_vars.iter().map(|&i| lead[i]).collect();
    let mut lc = ring.zero();
    for (e, c) in g.terms() {
        let ekey: Vec<u32> = elim_vars.iter().map(|&i| e[i]).collect();
        if ekey == key {
            let mut rest = e.clone();
            for &i in elim_vars {
                rest[i] = 0;
            }
            lc = lc.add(&ring.monomial(rest, c.clone()));
        }
    }
    lc
}

/// Check a character lattice against its defining ideal: every basis row b
/// with value g must satisfy NF(F^{b⁺} − g·F^{b⁻}) = 0.
pub fn verify_char_lattice(ideal: &Ideal, fpolys: &[Poly], cl: &CharLattice) -> bool {
    let ring = ideal.ring().clone();
    for (row, val) in cl.lattice.basis().iter().zip(&cl.values) {
        let v = IntVec(row.clone());
        let plus = v.plus_part();
        let minus = v.minus_part();
        let mut lhs = ring.one();
        let mut rhs = ring.from_scalar(val.clone());
        for ((f, p), q) in fpolys.iter().zip(&plus.0).zip(&minus.0) {
            let pu = u32::try_from(p).expect("small exponent");
            let qu = u32::try_from(q).expect("small exponent");
            lhs = lhs.mul(&f.pow(pu));
            rhs = rhs.mul(&f.pow(qu));
        }
        if !ideal.contains(&lhs.sub(&rhs)) {
            return false;
        }
    }
    true
}

/// Bin(I) for an ideal saturated w.r.t. the product of all indeterminates.
pub fn binomial_part_saturated(ideal: &Ideal) -> Result<Ideal> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let mut prod = ring.one();
    for i in 0..n {
        prod = prod.mul(&ring.var(i));
    }
    let q = ideal.quotient_elem(&prod);
    if !q.eq_ideal(ideal) {
        return Err(Error::NotSaturated(
            "binomial_part_saturated needs I : ⟨x₁⋯x_n⟩ = I; use the cellular pipeline".into(),
        ));
    }
    if ideal.is_zero() {
        return Ok(Ideal::zero(&ring));
    }
    let fpolys: Vec<Poly> = (0..n).map(|i| ring.var(i)).collect();
    let cl = unit_lattice(ideal, &fpolys)?;
    Ok(lattice_ideal(&cl, &ring))
}

/// Exponent lattice with trivial character: the unitary binomial part data.
pub fn unitary_lattice_ideal(ideal: &Ideal) -> Result<Ideal> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let alg = ZeroDimAlgebra::new(ideal.clone())?;
    let elems: Vec<Poly> = (0..n).map(|i| ring.var(i)).collect();
    let lat = if ring.field().characteristic() == 0 {
        zerodim::exponent_lattice_zerodim_char0(&alg, &elems)?
    } else {
        zerodim::exponent_lattice_zerodim_charp(&alg, &elems)?
    };
    let values = vec![ring.field().one(); lat.rank()];
    Ok(lattice_ideal(&CharLattice { lattice: lat, values }, &ring))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring(vars: &[&str]) -> PolyRing {
        PolyRing::new(Field::rationals(), vars.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn char_value_examples() {
        let q = Field::rationals();
        // basis (2) with value 2: ρ((4)) = 4
        let cl = CharLattice {
            lattice: Lattice::from_i64(1, &[&[2]]),
            values: vec![q.from_int(2)],
        };
        assert_eq!(cl.char_value(&IntVec::from_i64(&[4])).unwrap(), q.from_int(4));
        assert!(cl.char_value(&IntVec::from_i64(&[3])).is_err());
        // paper example basis {(6,1) ↦ 1, (0,16) ↦ 1}: ρ((6,17)) = 1
        let cl2 = CharLattice {
            lattice: Lattice::from_i64(2, &[&[6, 1], &[0, 16]]),
            values: vec![q.one(), q.one()],
        };
        assert!(cl2.char_value(&IntVec::from_i64(&[6, 17])).unwrap().is_one());
    }

    #[test]
    fn intersect_with_characters() {
        // A = ℤ² with ρ(a,b) = 2^a, B = ℤ² with τ(a,b) = 2^b → ⟨(1,1)⟩
        let q = Field::rationals();
        let a = CharLattice {
            lattice: Lattice::full(2),
            values: vec![q.from_int(2), q.one()],
        };
        let b = CharLattice {
            lattice: Lattice::full(2),
            values: vec![q.one(), q.from_int(2)],
        };
        let c = intersect_char_lattices(&a, &b).unwrap();
        assert_eq!(c.lattice, Lattice::from_i64(2, &[&[1, 1]]));
        assert_eq!(c.values[0], q.from_int(2));
        // identical characters: full intersection
        let d = intersect_char_lattices(&a, &a).unwrap();
        assert_eq!(d.lattice, Lattice::full(2));
    }

    #[test]
    fn lattice_ideal_examples() {
        let ring = qring(&["x", "y"]);
        let q = ring.field().clone();
        // Λ = ⟨(1,−1)⟩, ρ = 1 → ⟨x−y⟩
        let cl = CharLattice {
            lattice: Lattice::from_i64(2, &[&[1, -1]]),
            values: vec![q.one()],
        };
        let i = lattice_ideal(&cl, &ring);
        let x = ring.var(0);
        let y = ring.var(1);
        assert!(i.eq_ideal(&Ideal::new(&ring, vec![x.sub(&y)])));
        // Λ = ⟨(2,0)⟩, ρ = 4 → ⟨x²−4⟩
        let cl2 = CharLattice {
            lattice: Lattice::from_i64(2, &[&[2, 0]]),
            values: vec![q.from_int(4)],
        };
        let i2 = lattice_ideal(&cl2, &ring);
        assert!(i2.eq_ideal(&Ideal::new(&ring, vec![x.pow(2).sub(&ring.from_int(4))])));
        // saturation: result is already saturated
        let mut prod = ring.one();
        for i in 0..2 {
            prod = prod.mul(&ring.var(i));
        }
        let (sat, _) = i2.saturate_elem(&prod);
        assert!(sat.eq_ideal(&i2));
    }

    #[test]
    fn lattice_ideal_paper_n3() {
        let ring = qring(&["x", "y", "z"]);
        let q = ring.field().clone();
        let cl = CharLattice {
            lattice: Lattice::from_i64(3, &[&[3, -1, -2]]),
            values: vec![q.one()],
        };
        let i = lattice_ideal(&cl, &ring);
        let x = ring.var(0);
        let y = ring.var(1);
        let z = ring.var(2);
        let expect = Ideal::new(&ring, vec![x.pow(3).sub(&y.mul(&z.pow(2)))]);
        assert!(i.eq_ideal(&expect));
    }

    #[test]
    fn zero_dim_sqrt2() {
        // I = <x^2-2> in Q[x], F = (x): Λ = <(2)> with ρ(2) = 2
        let ring = qring(&["x"]);
        let x = ring.var(0);
        let i = Ideal::new(&ring, vec![x.pow(2).sub(&ring.from_int(2))]);
        let cl = unit_lattice_zerodim(&i, &[], &[x.clone()]).unwrap();
        assert_eq!(cl.lattice, Lattice::from_i64(1, &[&[2]]));
        assert_eq!(cl.values[0], ring.field().from_int(2));
    }

    #[test]
    fn trivial_units() {
        let ring = qring(&["x"]);
        let i = Ideal::new(&ring, vec![ring.var(0).pow(2).sub(&ring.from_int(2))]);
        let ones = vec![ring.one(), ring.one()];
        let cl = unit_lattice_zerodim(&i, &[], &ones).unwrap();
        assert_eq!(cl.lattice, Lattice::full(2));
        assert!(cl.values.iter().all(|v| v.is_one()));
    }

    #[test]
    fn unit_lattice_xy_minus_one() {
        let ring = qring(&["x", "y"]);
        let x = ring.var(0);
        let y = ring.var(1);
        let i = Ideal::new(&ring, vec![x.mul(&y).sub(&ring.one())]);
        let cl = unit_lattice(&i, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(cl.lattice, Lattice::from_i64(2, &[&[1, 1]]));
        assert!(cl.values[0].is_one());
    }

    #[test]
    fn unit_lattice_paper_example() {
        // I = <(x-z)^2, 3x - y - 2z>, F = (x, y, z): Λ = <(3,-1,-2)>, ρ = 1
        let ring = qring(&["x", "y", "z"]);
        let q = ring.field().clone();
        let x = ring.var(0);
        let y = ring.var(1);
        let z = ring.var(2);
        let i = Ideal::new(
            &ring,
            vec![
                x.sub(&z).pow(2),
                x.mul_scalar(&q.from_int(3)).sub(&y).sub(&z.mul_scalar(&q.from_int(2))),
            ],
        );
        let cl = unit_lattice(&i, &[x.clone(), y.clone(), z.clone()]).unwrap();
        assert_eq!(cl.lattice, Lattice::from_i64(3, &[&[3, -1, -2]]));
        assert!(cl.values[0].is_one());
        // soundness: NF(F^{b+} - ρ(b) F^{b-}) = 0
        let probe = x.pow(3).sub(&y.mul(&z.pow(2)));
        assert!(i.contains(&probe));
    }

    #[test]
    fn binomial_part_saturated_examples() {
        let ring = qring(&["x", "y", "z"]);
        let q = ring.field().clone();
        let x = ring.var(0);
        let y = ring.var(1);
        let z = ring.var(2);
        let i = Ideal::new(
            &ring,
            vec![
                x.sub(&z).pow(2),
                x.mul_scalar(&q.from_int(3)).sub(&y).sub(&z.mul_scalar(&q.from_int(2))),
            ],
        );
        let bin = binomial_part_saturated(&i).unwrap();
        let expect = Ideal::new(&ring, vec![x.pow(3).sub(&y.mul(&z.pow(2)))]);
        assert!(bin.eq_ideal(&expect));
        // a lattice ideal maps to itself
        let j = Ideal::new(&ring, vec![x.sub(&y)]);
        assert!(binomial_part_saturated(&j).unwrap().eq_ideal(&j));
    }

    #[test]
    fn localization_stability() {
        // unit lattice unchanged after adjoining the Rabinowitsch inverse
        let ring = qring(&["x", "y"]);
        let x = ring.var(0);
        let y = ring.var(1);
        let i = Ideal::new(&ring, vec![x.mul(&y).sub(&ring.one())]);
        let cl = unit_lattice(&i, &[x.clone(), y.clone()]).unwrap();
        let (ext, tag) = crate::ideal::extended_ring(&ring, "t");
        let mut prod = ext.one();
        for v in 0..2 {
            prod = prod.mul(&ext.var(v));
        }
        let rab = prod.mul(&ext.var(tag)).sub(&ext.one());
        let ie = i.extend_ring(&ext).unwrap().plus_elem(&rab);
        let fe: Vec<Poly> = vec![ext.var(0), ext.var(1)];
        let cl2 = unit_lattice(&ie, &fe).unwrap();
        assert_eq!(cl.lattice, cl2.lattice);
    }
}
