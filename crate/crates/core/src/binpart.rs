//! The binomial-part pipeline: cellular decomposition, (s,t)-binomial
//! parts, the master algorithm over intersections of cellular variable
//! sets, the restricted vector-space scan, the radical-ideal shortcut, and
//! a brute-force degree-bounded oracle for differential testing.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Scalar;
use crate::error::Error;
use crate::ideal::{lift_combination, syzygy_pair_mod, Ideal};
use crate::intlattice::{solve_inhomogeneous, IntMat, IntVec, Lattice};
use crate::linalg::Mat;
use crate::poly::{exp_deg, exp_divides, Exp, Poly, PolyRing, TermOrder};
use crate::unitchar::{self, CharLattice};
use crate::zerodim::{maximal_ideals, ZeroDimAlgebra};
use crate::Result;

/// A Y-cellular component: saturated w.r.t. the Y variables, all others
/// nilpotent with recorded exponents.
#[derive(Debug, Clone)]
pub struct CellularComponent {
    pub ideal: Ideal,
    pub y_set: Vec<usize>,
    /// least d with x^d ∈ ideal, for every variable outside Y
    pub nilpotency: BTreeMap<usize, usize>,
}

/// Decompose I into cellular components whose intersection is I.
/// Redundant components are dropped (the remaining intersection is kept
/// equal to I), matching the published minimal decompositions.
pub fn cellular_decomposition(ideal: &Ideal) -> Result<Vec<CellularComponent>> {
    if ideal.is_unit() {
        return Err(Error::domain("cellular decomposition of the unit ideal"));
    }
    let mut raw: Vec<Ideal> = Vec::new();
    decompose_rec(ideal.clone(), &mut raw, 0)?;
    // dedupe
    let mut uniq: Vec<Ideal> = Vec::new();
    for c in raw {
        if !uniq.iter().any(|u| u.eq_ideal(&c)) {
            uniq.push(c);
        }
    }
    // minimalize greedily
    let mut keep: Vec<bool> = vec![true; uniq.len()];
    for i in (0..uniq.len()).rev() {
        if uniq.iter().zip(&keep).filter(|(_, &k)| k).count() == 1 {
            break;
        }
        keep[i] = false;
        let rest: Vec<Ideal> = uniq
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(c, _)| c.clone())
            .collect();
        let inter = Ideal::intersect_many(&rest);
        if !inter.eq_ideal(ideal) {
            keep[i] = true;
        }
    }
    let mut out = Vec::new();
    for (c, k) in uniq.into_iter().zip(keep) {
        if k {
            out.push(make_component(c)?);
        }
    }
    Ok(out)
}

fn decompose_rec(ideal: Ideal, out: &mut Vec<Ideal>, depth: usize) -> Result<()> {
    if depth > 64 {
        return Err(Error::internal("cellular recursion runaway"));
    }
    if ideal.is_unit() {
        return Ok(());
    }
    let ring = ideal.ring().clone();
    for v in 0..ring.nvars() {
        let x = ring.var(v);
        let (sat, m) = ideal.saturate_elem(&x);
        if !sat.is_unit() && !sat.eq_ideal(&ideal) {
            decompose_rec(sat, out, depth + 1)?;
            decompose_rec(ideal.plus_elem(&x.pow(m as u32)), out, depth + 1)?;
            return Ok(());
        }
    }
    out.push(ideal);
    Ok(())
}

fn make_component(ideal: Ideal) -> Result<CellularComponent> {
    let ring = ideal.ring().clone();
    let mut y_set = Vec::new();
    let mut nilpotency = BTreeMap::new();
    for v in 0..ring.nvars() {
        let x = ring.var(v);
        let q = ideal.quotient_elem(&x);
        if q.eq_ideal(&ideal) {
            y_set.push(v);
        } else {
            match ideal.nilpotency_bound(v) {
                Some(d) => {
                    nilpotency.insert(v, d);
                }
                None => {
                    return Err(Error::internal(
                        "component neither saturated nor nilpotent in a variable",
                    ))
                }
            }
        }
    }
    Ok(CellularComponent { ideal, y_set, nilpotency })
}

/// Bin_{s,t}(I): the ideal of binomials s·u − a·v·t with u, v terms in the
/// Y variables. I must be saturated w.r.t. the Y variables and s, t terms
/// in the complementary variables with s, t ∉ I.
pub fn st_binomial_part(ideal: &Ideal, y_set: &[usize], s: &Poly, t: &Poly) -> Result<Ideal> {
    let ring = ideal.ring().clone();
    if !s.is_term() || !t.is_term() {
        return Err(Error::domain("st_binomial_part needs terms"));
    }
    if ideal.contains(s) || ideal.contains(t) {
        return Err(Error::domain("st_binomial_part needs s, t outside the ideal"));
    }
    let syz = syzygy_pair_mod(s, t, ideal, y_set)?;
    // Step 3: do the first components generate the unit ideal in K[Y]_Y?
    let ext = syz.ring.clone();
    let rab = {
        let mut prod = ext.one();
        for &y in &syz.yvars {
            prod = prod.mul(&ext.var(y));
        }
        prod.mul(&ext.var(syz.zvar)).sub(&ext.one())
    };
    let mut unit_gens: Vec<Poly> = syz.pairs.iter().map(|(f, _)| f.clone()).collect();
    unit_gens.push(rab.clone());
    let one = ext.one();
    let combo = lift_combination(&unit_gens, &one);
    let Some(combo) = combo else {
        return Ok(Ideal::zero(&ring));
    };
    // h = Σ cᵢ gᵢ over the second components (the Rabinowitsch term
    // contributes nothing)
    let mut h = ext.zero();
    for (c, (_, g)) in combo.iter().zip(&syz.pairs) {
        h = h.add(&c.mul(g));
    }
    // E_t = (J : t) with J the saturated ideal in K[X, z]
    let t_ext = t.map_ring(&ext)?;
    let et_full = syz.ideal.quotient_elem(&t_ext);
    // h must be a unit modulo E_t
    let h_unit = lift_combination(
        &et_full
            .gens()
            .iter()
            .cloned()
            .chain(std::iter::once(h.clone()))
            .collect::<Vec<_>>(),
        &one,
    );
    if h_unit.is_none() {
        return Ok(Ideal::zero(&ring));
    }
    // restrict E_t to K[Y, z]
    let other: Vec<usize> = (0..ext.nvars())
        .filter(|i| !syz.yvars.contains(i) && *i != syz.zvar)
        .collect();
    let et_sub = et_full.eliminate(&other);
    // unit lattice of (y₁, …, y_m, −h) modulo E_t in K[Y, z]
    let m = y_set.len();
    let mut fpolys: Vec<Poly> = syz.yvars.iter().map(|&y| ext.var(y)).collect();
    let h_red = et_sub.normal_form(&h, &TermOrder::DegRevLex);
    fpolys.push(h_red.neg());
    let cl = unitchar::unit_lattice(&et_sub, &fpolys)?;
    if cl.lattice.rank() == 0 {
        return Ok(Ideal::zero(&ring));
    }
    // Step 5: integer solutions of Σ zᵢ v_{i, m+1} = 1
    let last: Vec<BigInt> = cl.lattice.basis().iter().map(|row| row[m].clone()).collect();
    let a = IntMat::from_rows(vec![last], cl.lattice.rank());
    let Some((particular, kernel)) = solve_inhomogeneous(&a, &IntVec(vec![BigInt::from(1)]))
    else {
        return Ok(Ideal::zero(&ring));
    };
    // Step 6: generators s·Y^{Mv} − ρ(v)·t for v = u₁ and u₁ + uⱼ
    let mut vs: Vec<Vec<BigInt>> = vec![particular.0.clone()];
    for krow in kernel.basis() {
        let sum: Vec<BigInt> =
            particular.0.iter().zip(krow).map(|(a, b)| a + b).collect();
        vs.push(sum);
    }
    let mut gens = Vec::new();
    for v in vs {
        // full lattice vector V = Σ vⱼ·basisⱼ ∈ ℤ^{m+1}
        let mut fullv = vec![BigInt::zero(); m + 1];
        for (c, row) in v.iter().zip(cl.lattice.basis()) {
            for (fi, ri) in fullv.iter_mut().zip(row) {
                *fi += c * ri;
            }
        }
        let val = cl.char_value(&IntVec(fullv.clone()))?;
        // exponent vector on the Y variables
        let ypart = IntVec(fullv[..m].to_vec());
        let plus = ypart.plus_part();
        let minus = ypart.minus_part();
        let mut eplus = vec![0u32; ring.nvars()];
        let mut eminus = vec![0u32; ring.nvars()];
        for ((&y, p), q) in y_set.iter().zip(&plus.0).zip(&minus.0) {
            eplus[y] = u32::try_from(p).map_err(|_| Error::internal("exponent overflow"))?;
            eminus[y] = u32::try_from(q).map_err(|_| Error::internal("exponent overflow"))?;
        }
        let lhs = s.mul(&ring.term(eplus));
        let rhs = t.mul(&ring.monomial(eminus, val));
        gens.push(lhs.sub(&rhs));
    }
    // contract to K[X]: saturate w.r.t. the product of the Y variables
    let pre = Ideal::new(&ring, gens);
    let mut yprod = ring.one();
    for &y in y_set {
        yprod = yprod.mul(&ring.var(y));
    }
    Ok(pre.saturate_elem(&yprod).0)
}

#[derive(Debug, Clone, Default)]
pub struct BinOptions {
    /// restrict the computation to binomials of total degree ≤ bound
    pub degree_bound: Option<u32>,
    /// use the radical-ideal shortcut (prime decomposition)
    pub radical: bool,
}

/// Generators of Bin(I) with the pipeline stage that produced each one.
#[derive(Debug, Clone)]
pub struct BinResult {
    pub ideal: Ideal,
    pub generators: Vec<Poly>,
    pub provenance: Vec<(Poly, String)>,
}

impl BinResult {
    fn from_tagged(ring: &PolyRing, tagged: Vec<(Poly, String)>) -> BinResult {
        let mut gens = Vec::new();
        let mut prov = Vec::new();
        for (g, tag) in tagged {
            if g.is_zero() {
                continue;
            }
            let order = TermOrder::DegRevLex;
            let g = g.monic(&order);
            if gens.contains(&g) {
                continue;
            }
            gens.push(g.clone());
            prov.push((g, tag));
        }
        // deterministic order: ascending degrevlex leading terms
        let order = TermOrder::DegRevLex;
        prov.sort_by(|(a, _), (b, _)| {
            order.cmp_exp(
                a.leading_exp(&order).unwrap(),
                b.leading_exp(&order).unwrap(),
            )
        });
        let gens: Vec<Poly> = prov.iter().map(|(g, _)| g.clone()).collect();
        BinResult { ideal: Ideal::new(ring, gens.clone()), generators: gens, provenance: prov }
    }
}

/// Bin(I) for an arbitrary proper ideal.
pub fn binomial_part(ideal: &Ideal, opts: &BinOptions) -> Result<BinResult> {
    let ring = ideal.ring().clone();
    if ideal.is_unit() {
        return Err(Error::domain("binomial part of the unit ideal"));
    }
    if let Some(delta) = opts.degree_bound {
        let b = restricted_by_degree(ideal, delta)?;
        let tagged = b
            .gens()
            .iter()
            .map(|g| (g.clone(), format!("restricted-scan(degree<={delta})")))
            .collect();
        return Ok(BinResult::from_tagged(&ring, tagged));
    }
    if opts.radical {
        let b = binomial_part_radical(ideal, None)?;
        let tagged = b
            .gens()
            .iter()
            .map(|g| (g.clone(), "radical-path".to_string()))
            .collect();
        return Ok(BinResult::from_tagged(&ring, tagged));
    }
    let comps = cellular_decomposition(ideal)?;
    let n = ring.nvars();
    // δ bounds for the variables outside the intersection of all Y's
    let mut y_min: Vec<usize> = (0..n).collect();
    for c in &comps {
        y_min.retain(|v| c.y_set.contains(v));
    }
    let mut delta: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        if y_min.contains(&v) {
            continue;
        }
        let d = comps
            .iter()
            .filter(|c| !c.y_set.contains(&v))
            .map(|c| *c.nilpotency.get(&v).expect("nilpotent variable bound"))
            .max()
            .expect("variable outside the intersection is nilpotent somewhere");
        delta.insert(v, d);
    }
    // distinct intersections of subsets of {Y_i}, including X (empty subset)
    let mut ys: Vec<Vec<usize>> = vec![(0..n).collect()];
    let ncomp = comps.len();
    for mask in 1u32..(1 << ncomp) {
        let mut inter: Vec<usize> = (0..n).collect();
        for (i, c) in comps.iter().enumerate() {
            if mask & (1 << i) != 0 {
                inter.retain(|v| c.y_set.contains(v));
            }
        }
        if !ys.contains(&inter) {
            ys.push(inter);
        }
    }
    let mut tagged: Vec<(Poly, String)> = Vec::new();
    for y in ys {
        let j_parts: Vec<Ideal> = comps
            .iter()
            .filter(|c| y.iter().all(|v| c.y_set.contains(v)))
            .map(|c| c.ideal.clone())
            .collect();
        let j_y = if j_parts.is_empty() {
            Ideal::unit(&ring)
        } else {
            Ideal::intersect_many(&j_parts)
        };
        let m_parts: Vec<Ideal> = comps
            .iter()
            .filter(|c| !y.iter().all(|v| c.y_set.contains(v)))
            .map(|c| c.ideal.monomial_part())
            .collect();
        let m_y = if m_parts.is_empty() {
            Ideal::unit(&ring)
        } else {
            Ideal::intersect_many(&m_parts)
        };
        let yname = format!(
            "Y={{{}}}",
            y.iter().map(|&v| ring.vars()[v].clone()).collect::<Vec<_>>().join(",")
        );
        if y.len() == n {
            // S = ∅: the contribution is M_X ∩ Bin(J_X)
            let b = if j_y.is_unit() {
                Ideal::unit(&ring)
            } else {
                unitchar::binomial_part_saturated(&j_y)?
            };
            let contrib = m_y.intersect(&b);
            for g in contrib.gens() {
                tagged.push((g.clone(), format!("saturated-lattice({yname})")));
            }
            continue;
        }
        if y.is_empty() {
            // restricted scan over the box of δ bounds (Y_min = ∅ here)
            let dsum: u32 = delta.values().map(|&d| d as u32 - 1).sum();
            let b = restricted_by_degree(ideal, dsum)?;
            for g in b.gens() {
                tagged.push((g.clone(), "restricted-scan(Y={})".to_string()));
            }
            continue;
        }
        // pair loop over the box of terms in the complementary variables
        let outside: Vec<usize> = (0..n).filter(|v| !y.contains(v)).collect();
        let box_terms = enumerate_box(&outside, &delta, n);
        let mut sum_gens: Vec<Poly> = Vec::new();
        let mut memo: BTreeMap<(Exp, Exp, Exp), Ideal> = BTreeMap::new();
        let mut sat_memo: BTreeMap<Exp, Ideal> = BTreeMap::new();
        let mut yprod = ring.one();
        for &v in &y {
            yprod = yprod.mul(&ring.var(v));
        }
        for (si, sexp) in box_terms.iter().enumerate() {
            for texp in box_terms.iter().skip(si) {
                let spoly = ring.term(sexp.clone());
                let tpoly = ring.term(texp.clone());
                let s_in = j_y.contains(&spoly);
                let t_in = j_y.contains(&tpoly);
                if s_in {
                    sum_gens.push(spoly.clone());
                }
                if t_in {
                    sum_gens.push(tpoly.clone());
                }
                if s_in || t_in {
                    continue;
                }
                // strip the common factor
                let w: Exp = sexp.iter().zip(texp).map(|(a, b)| *a.min(b)).collect();
                let s2: Exp = sexp.iter().zip(&w).map(|(a, b)| a - b).collect();
                let t2: Exp = texp.iter().zip(&w).map(|(a, b)| a - b).collect();
                let key = (s2.clone(), t2.clone(), w.clone());
                let part = if let Some(cached) = memo.get(&key) {
                    cached.clone()
                } else {
                    let jw = if exp_deg(&w) == 0 {
                        j_y.clone()
                    } else {
                        j_y.quotient_elem(&ring.term(w.clone()))
                    };
                    let s2p = ring.term(s2.clone());
                    let t2p = ring.term(t2.clone());
                    let res = if jw.contains(&s2p) || jw.contains(&t2p) {
                        // the common-factor quotient may absorb s or t
                        let mut g = Vec::new();
                        if jw.contains(&s2p) {
                            g.push(s2p.clone());
                        }
                        if jw.contains(&t2p) {
                            g.push(t2p.clone());
                        }
                        Ideal::new(&ring, g)
                    } else {
                        // cheap necessary test before the full machinery
                        let sat_t = sat_memo.entry(t2.clone()).or_insert_with(|| {
                            jw.plus_elem(&t2p).saturate_elem(&yprod).0
                        });
                        if !sat_t.contains(&s2p) {
                            Ideal::zero(&ring)
                        } else {
                            st_binomial_part(&jw, &y, &s2p, &t2p)?
                        }
                    };
                    memo.insert(key.clone(), res.clone());
                    res
                };
                if !part.is_zero() {
                    let wpoly = ring.term(w);
                    for g in part.gens() {
                        sum_gens.push(g.mul(&wpoly));
                    }
                }
            }
        }
        let sum_ideal = Ideal::new(&ring, sum_gens);
        if sum_ideal.is_zero() {
            continue;
        }
        let contrib = m_y.intersect(&sum_ideal);
        for g in contrib.gens() {
            tagged.push((g.clone(), format!("(s,t)-part({yname})")));
        }
    }
    let mut res = BinResult::from_tagged(&ring, tagged);
    // soundness filter: every generator is a monomial or binomial inside I
    res.provenance.retain(|(g, _)| g.nterms() <= 2 && ideal.contains(g));
    res.generators = res.provenance.iter().map(|(g, _)| g.clone()).collect();
    res.ideal = Ideal::new(&ring, res.generators.clone());
    Ok(res)
}

fn enumerate_box(vars: &[usize], delta: &BTreeMap<usize, usize>, n: usize) -> Vec<Exp> {
    let mut out = vec![vec![0u32; n]];
    for &v in vars {
        let d = *delta.get(&v).expect("delta bound") as u32;
        let mut next = Vec::with_capacity(out.len() * d as usize);
        for e in &out {
            for k in 0..d {
                let mut e2 = e.clone();
                e2[v] = k;
                next.push(e2);
            }
        }
        out = next;
    }
    // deterministic order: ascending degrevlex
    out.sort_by(|a, b| crate::poly::cmp_degrevlex(a, b));
    out
}

/// Binomial part of a vector subspace: spanning set of the subspace of
/// vectors with at most two nonzero coordinates.
pub fn binomial_part_subspace(field: &crate::arith::Field, rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mat = Mat::from_rows(field, rows.to_vec());
    let (r, pivots) = mat.rref();
    let nrows = pivots.len();
    let ncols = mat.cols;
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    let support = |v: &[Scalar]| -> Vec<usize> {
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
    };
    let rowvec = |i: usize| -> Vec<Scalar> { r.row(i).to_vec() };
    for i in 0..nrows {
        if support(&rowvec(i)).len() <= 2 {
            out.push(rowvec(i));
        }
    }
    for i in 0..nrows {
        for j in 0..nrows {
            if i == j {
                continue;
            }
            let ri = rowvec(i);
            let rj = rowvec(j);
            // candidates c from shared support columns
            let shared: Vec<usize> = support(&ri)
                .into_iter()
                .filter(|c| !rj[*c].is_zero())
                .collect();
            for &col in &shared {
                let c = ri[col].div(&rj[col]);
                let combo: Vec<Scalar> =
                    ri.iter().zip(&rj).map(|(a, b)| a.sub(&b.mul(&c))).collect();
                let s = support(&combo);
                if !s.is_empty() && s.len() <= 2 && !out.contains(&combo) {
                    out.push(combo);
                }
            }
        }
    }
    let _ = ncols;
    out
}

/// The binomial part restricted to a finite degrevlex-closed set of terms:
/// the ideal generated by all binomials of I with support in T.
pub fn restricted_binomial_part(ideal: &Ideal, terms: &[Exp]) -> Result<Ideal> {
    let ring = ideal.ring().clone();
    let order = TermOrder::DegRevLex;
    // verify σ-closedness: T must be an initial segment of the degrevlex
    // enumeration
    let mut sorted = terms.to_vec();
    sorted.sort_by(|a, b| order.cmp_exp(a, b));
    sorted.dedup();
    let enumerated = enumerate_terms_up_to(&ring, sorted.len());
    if enumerated.len() < sorted.len() || enumerated[..sorted.len()] != sorted[..] {
        return Err(Error::domain("term set is not closed under the term order"));
    }
    let gb = ideal.groebner_basis(&order);
    // Step 3/4: collect Groebner multiples filling T
    let mut rows: Vec<Poly> = Vec::new();
    let mut have_lt: Vec<Exp> = Vec::new();
    for g in gb.iter() {
        let lt = g.leading_exp(&order).unwrap();
        if g.terms().all(|(e, _)| sorted.binary_search_by(|p| order.cmp_exp(p, e)).is_ok()) {
            rows.push(g.clone());
            have_lt.push(lt.clone());
        }
    }
    for t in &sorted {
        if have_lt.contains(t) {
            continue;
        }
        // find h ∈ S (equivalently g ∈ GB with support staying in T after
        // shifting) with LT(s·h) = t
        for g in gb.iter() {
            let lt = g.leading_exp(&order).unwrap();
            if !exp_divides(lt, t) {
                continue;
            }
            let shift: Exp = t.iter().zip(lt).map(|(a, b)| a - b).collect();
            let sh = g.mul(&ring.term(shift));
            if sh
                .terms()
                .all(|(e, _)| sorted.binary_search_by(|p| order.cmp_exp(p, e)).is_ok())
            {
                rows.push(sh.clone());
                have_lt.push(t.clone());
                break;
            }
        }
    }
    if rows.is_empty() {
        return Ok(Ideal::zero(&ring));
    }
    // coordinates w.r.t. T (columns sorted descending so RREF pivots on
    // leading terms)
    let mut cols = sorted.clone();
    cols.reverse();
    let col_of: BTreeMap<Exp, usize> =
        cols.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let field = ring.field().clone();
    let vecs: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|p| {
            let mut v = vec![field.zero(); cols.len()];
            for (e, c) in p.terms() {
                v[col_of[e]] = c.clone();
            }
            v
        })
        .collect();
    let bins = binomial_part_subspace(&field, &vecs);
    let gens: Vec<Poly> = bins
        .iter()
        .map(|v| {
            let mut acc = ring.zero();
            for (c, e) in v.iter().zip(&cols) {
                if !c.is_zero() {
                    acc = acc.add(&ring.monomial(e.clone(), c.clone()));
                }
            }
            acc
        })
        .collect();
    Ok(Ideal::new(&ring, gens))
}

/// All terms of the ring enumerated ascending in degrevlex, at least
/// `count` of them.
fn enumerate_terms_up_to(ring: &PolyRing, count: usize) -> Vec<Exp> {
    let n = ring.nvars();
    let mut out = Vec::with_capacity(count);
    let mut deg = 0u32;
    while out.len() < count {
        let mut level = terms_of_degree(n, deg);
        level.sort_by(|a, b| crate::poly::cmp_degrevlex(a, b));
        out.extend(level);
        deg += 1;
        if deg > 80 {
            break;
        }
    }
    out
}

fn terms_of_degree(n: usize, d: u32) -> Vec<Exp> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(pos: usize, left: u32, cur: &mut Exp, out: &mut Vec<Exp>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[pos] = k;
            rec(pos + 1, left - k, cur, out);
        }
        cur[pos] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Binomial part restricted to all terms of total degree ≤ δ.
pub fn restricted_by_degree(ideal: &Ideal, delta: u32) -> Result<Ideal> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let mut terms = Vec::new();
    for d in 0..=delta {
        terms.extend(terms_of_degree(n, d));
    }
    restricted_binomial_part(ideal, &terms)
}

/// Binomial part of a radical ideal via its prime decomposition. Primes
/// must be supplied unless the ideal is zero-dimensional (then the maximal
/// ideals are computed here).
pub fn binomial_part_radical(ideal: &Ideal, primes: Option<Vec<Ideal>>) -> Result<Ideal> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let primes = match primes {
        Some(p) => p,
        None => {
            if !ideal.is_zero_dimensional() {
                return Err(Error::PrimeDecompositionRequired);
            }
            let alg = ZeroDimAlgebra::new(ideal.clone())?;
            maximal_ideals(&alg)?
        }
    };
    // per prime: Y_i and the lattice data of Bin(p_i ∩ K[Y_i])
    struct MesoPrime {
        y_set: Vec<usize>,
        char_lattice: CharLattice,
    }
    let mut mesos = Vec::with_capacity(primes.len());
    for p in &primes {
        let y_set: Vec<usize> = (0..n)
            .filter(|&v| {
                let q = p.quotient_elem(&ring.var(v));
                q.eq_ideal(p)
            })
            .collect();
        if y_set.is_empty() {
            mesos.push(MesoPrime {
                y_set,
                char_lattice: CharLattice {
                    lattice: Lattice::zero(n),
                    values: Vec::new(),
                },
            });
            continue;
        }
        let (subring, sub) = p.contract_to_subring(&y_set)?;
        let fpolys: Vec<Poly> = (0..subring.nvars()).map(|i| subring.var(i)).collect();
        let cl = unitchar::unit_lattice(&sub, &fpolys)?;
        // extend the lattice to ℤ^n on the Y coordinates
        let rows: Vec<Vec<BigInt>> = cl
            .lattice
            .basis()
            .iter()
            .map(|r| {
                let mut v = vec![BigInt::zero(); n];
                for (&y, c) in y_set.iter().zip(r) {
                    v[y] = c.clone();
                }
                v
            })
            .collect();
        let lattice = Lattice::from_rows(n, rows);
        let values = lattice
            .basis()
            .iter()
            .map(|r| {
                let short: Vec<BigInt> = y_set.iter().map(|&y| r[y].clone()).collect();
                cl.char_value(&IntVec(short))
            })
            .collect::<Result<Vec<_>>>()?;
        mesos.push(MesoPrime { y_set, char_lattice: CharLattice { lattice, values } });
    }
    // sum over subsets S of the mesoprime data
    let k = mesos.len();
    let mut total: Vec<Poly> = Vec::new();
    for mask in 0u32..(1 << k) {
        // J_S: character intersection over i ∈ S
        let mut j_s: Option<CharLattice> = None;
        let mut ok = true;
        for (i, m) in mesos.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            if m.char_lattice.lattice.rank() == 0 && m.y_set.is_empty() {
                // Bin(p) has no lattice part
            }
            j_s = Some(match j_s {
                None => m.char_lattice.clone(),
                Some(prev) => unitchar::intersect_char_lattices(&prev, &m.char_lattice)?,
            });
            if j_s.as_ref().unwrap().lattice.rank() == 0 && mask.count_ones() > 0 {
                // empty lattice still contributes nothing beyond monomials
            }
        }
        let j_ideal = match &j_s {
            None => Ideal::unit(&ring), // S = ∅
            Some(cl) => {
                if cl.lattice.rank() == 0 {
                    Ideal::zero(&ring)
                } else {
                    unitchar::lattice_ideal(cl, &ring)
                }
            }
        };
        if j_ideal.is_zero() {
            continue;
        }
        // M: ⋂_{j ∉ S} ⟨X ∖ Y_j⟩
        let mut m_ideal = Ideal::unit(&ring);
        for (i, m) in mesos.iter().enumerate() {
            if mask & (1 << i) != 0 {
                continue;
            }
            let gens: Vec<Poly> = (0..n)
                .filter(|v| !m.y_set.contains(v))
                .map(|v| ring.var(v))
                .collect();
            // ⟨X∖Y_j⟩ generated by no variables is the zero ideal
            let mono = Ideal::new(&ring, gens);
            m_ideal = m_ideal.intersect(&mono);
        }
        let contrib = m_ideal.intersect(&j_ideal);
        total.extend(contrib.gens().iter().cloned());
        let _ = ok;
        ok = true;
        let _ = ok;
    }
    Ok(Ideal::new(&ring, total))
}

/// Brute-force oracle: every monomial and binomial of total degree ≤ δ in
/// I, found by scanning normal forms of all terms for proportionality.
/// Independent of the Groebner-multiples path above.
pub fn oracle_degree_bounded(ideal: &Ideal, delta: u32) -> Vec<Poly> {
    let ring = ideal.ring().clone();
    let order = TermOrder::DegRevLex;
    let n = ring.nvars();
    let mut terms = Vec::new();
    for d in 0..=delta {
        terms.extend(terms_of_degree(n, d));
    }
    let mut monomials = Vec::new();
    let mut groups: BTreeMap<String, Vec<(Exp, Scalar)>> = BTreeMap::new();
    for e in terms {
        let t = ring.term(e.clone());
        let nf = ideal.normal_form(&t, &order);
        if nf.is_zero() {
            if exp_deg(&e) > 0 || ideal.contains(&ring.one()) {
                monomials.push(t);
            }
            continue;
        }
        let lc = nf.leading_coeff(&order).unwrap().clone();
        let monic = nf.mul_scalar(&lc.inv().unwrap());
        groups.entry(monic.to_string()).or_default().push((e, lc));
    }
    let mut out = monomials;
    for (_, members) in groups {
        for i in 0..members.len() {
            for j in 0..i {
                let (ei, ci) = &members[i];
                let (ej, cj) = &members[j];
                // cᵢ⁻¹·tᵢ − cⱼ⁻¹·tⱼ ∈ I; normalize monic
                let lambda = ci.div(cj);
                let bin = ring.term(ei.clone()).sub(&ring.monomial(ej.clone(), lambda));
                out.push(bin);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    fn qring(vars: &[&str]) -> PolyRing {
        PolyRing::new(Field::rationals(), vars.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn cellular_x2y() {
        let ring = qring(&["x", "y"]);
        let x = ring.var(0);
        let y = ring.var(1);
        let i = Ideal::new(&ring, vec![x.pow(2).mul(&y)]);
        let comps = cellular_decomposition(&i).unwrap();
        assert_eq!(comps.len(), 2);
        let inter = Ideal::intersect_many(&comps.iter().map(|c| c.ideal.clone()).collect::<Vec<_>>());
        assert!(inter.eq_ideal(&i));
        for c in &comps {
            if c.y_set == vec![0] {
                assert!(c.ideal.eq_ideal(&Ideal::new(&ring, vec![y.clone()])));
                assert_eq!(c.nilpotency[&1], 1);
            } else {
                assert_eq!(c.y_set, vec![1]);
                assert!(c.ideal.eq_ideal(&Ideal::new(&ring, vec![x.pow(2)])));
                assert_eq!(c.nilpotency[&0], 2);
            }
        }
    }

    #[test]
    fn cellular_saturated_is_identity() {
        let ring = qring(&["x", "y"]);
        let x = ring.var(0);
        let y = ring.var(1);
        let i = Ideal::new(&ring, vec![x.mul(&y).sub(&ring.one())]);
        let comps = cellular_decomposition(&i).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].y_set, vec![0, 1]);
    }

    #[test]
    fn st_simple() {
        // I = <x - y>, Y = {z}, s = x, t = y: result <x - y>
        let ring = qring(&["x", "y", "z"]);
        let x = ring.var(0);
        let y = ring.var(1);
        let i = Ideal::new(&ring, vec![x.sub(&y)]);
        let b = st_binomial_part(&i, &[2], &x, &y).unwrap();
        assert!(b.eq_ideal(&Ideal::new(&ring, vec![x.sub(&y)])));
    }

    #[test]
    fn binomial_part_simple_binomial_ideal() {
        let ring = qring(&["x", "y"]);
        let x = ring.var(0);
        let y = ring.var(1);
        let i = Ideal::new(&ring, vec![x.sub(&y)]);
        let b = binomial_part(&i, &BinOptions::default()).unwrap();
        assert!(b.ideal.eq_ideal(&i));
        // monomial ideal
        let j = Ideal::new(&ring, vec![x.pow(2).mul(&y)]);
        let bj = binomial_part(&j, &BinOptions::default()).unwrap();
        assert!(bj.ideal.eq_ideal(&j));
    }

    #[test]
    fn binomial_part_paper_n() {
        // Bin(<(x-z)^2, n x - y - (n-1) z>) = <x^n - y z^{n-1}> for n = 2, 3
        let ring = qring(&["x", "y", "z"]);
        let q = ring.field().clone();
        let x = ring.var(0);
        let y = ring.var(1);
        let z = ring.var(2);
        for n in 2..=3i64 {
            let i = Ideal::new(
                &ring,
                vec![
                    x.sub(&z).pow(2),
                    x.mul_scalar(&q.from_int(n))
                        .sub(&y)
                        .sub(&z.mul_scalar(&q.from_int(n - 1))),
                ],
            );
            let b = binomial_part(&i, &BinOptions::default()).unwrap();
            let expect = Ideal::new(
                &ring,
                vec![x.pow(n as u32).sub(&y.mul(&z.pow(n as u32 - 1)))],
            );
            assert!(b.ideal.eq_ideal(&expect), "n = {n}");
        }
    }

    #[test]
    fn subspace_binomials() {
        let q = Field::rationals();
        let rows = vec![
            vec![q.one(), q.one(), q.zero()],
            vec![q.zero(), q.one(), q.one()],
        ];
        let bins = binomial_part_subspace(&q, &rows);
        // RREF rows (1,0,-1), (0,1,1) both have ≤ 2 nonzeros; the spanning
        // set may carry extra ≤2-support combinations, but its span must be
        // the whole 2-dimensional space
        assert!(bins.iter().all(|v| v.iter().filter(|c| !c.is_zero()).count() <= 2));
        let m = Mat::from_rows(&q, bins.clone());
        assert_eq!(m.rank(), 2);
        // single row with one nonzero
        let rows2 = vec![vec![q.one(), q.zero()]];
        assert_eq!(binomial_part_subspace(&q, &rows2).len(), 1);
        // a full row with three nonzeros yields nothing
        let rows3 = vec![vec![q.one(), q.one(), q.one()]];
        assert!(binomial_part_subspace(&q, &rows3).is_empty());
    }

    #[test]
    fn restricted_scan_paper() {
        // <(x-z)^2, 3x - y - 2z> restricted to degree ≤ 3 finds x^3 - y z^2
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
        let b = restricted_by_degree(&i, 3).unwrap();
        let expect = Ideal::new(&ring, vec![x.pow(3).sub(&y.mul(&z.pow(2)))]);
        assert!(b.eq_ideal(&expect));
        // degree 2 finds nothing
        assert!(restricted_by_degree(&i, 2).unwrap().is_zero());
        // T = {1}: nothing for proper ideals
        let only_one = vec![vec![0u32; 3]];
        assert!(restricted_binomial_part(&i, &only_one).unwrap().is_zero());
    }

    #[test]
    fn oracle_examples() {
        let ring = qring(&["x", "y"]);
        let x = ring.var(0);
        let y = ring.var(1);
        let i = Ideal::new(&ring, vec![x.sub(&y)]);
        let o = oracle_degree_bounded(&i, 1);
        assert_eq!(o.len(), 1);
        assert_eq!(o[0], x.sub(&y));
        let j = Ideal::new(&ring, vec![x.add(&y).add(&ring.one())]);
        assert!(oracle_degree_bounded(&j, 2).is_empty());
    }

    #[test]
    fn radical_path_examples() {
        let ring = qring(&["x", "y"]);
        let x = ring.var(0);
        let y = ring.var(1);
        // <x-y> ∩ <x, y> = <x-y> (the second prime contains the first
        // generator); the radical path must reproduce it
        let p1 = Ideal::new(&ring, vec![x.sub(&y)]);
        let p2 = Ideal::new(&ring, vec![x.clone(), y.clone()]);
        let i = p1.intersect(&p2);
        assert!(i.eq_ideal(&p1));
        let b = binomial_part_radical(&i, Some(vec![p1.clone(), p2])).unwrap();
        assert!(b.eq_ideal(&p1), "got {:?}", b.groebner_basis(&TermOrder::DegRevLex));
        // a binomial-generated ideal equals its own binomial part on the
        // general path
        let prod = Ideal::new(&ring, vec![x.pow(2).sub(&x.mul(&y)), x.mul(&y).sub(&y.pow(2))]);
        let bp = binomial_part(&prod, &BinOptions::default()).unwrap();
        assert!(bp.ideal.eq_ideal(&prod));
        // zero-dimensional radical: <x^2-1, y-x>: xy - 1 ∈ Bin
        let zd = Ideal::new(&ring, vec![x.pow(2).sub(&ring.one()), y.sub(&x)]);
        let b2 = binomial_part_radical(&zd, None).unwrap();
        assert!(b2.contains(&x.mul(&y).sub(&ring.one())));
        // agreement with the general pipeline
        let b3 = binomial_part(&zd, &BinOptions::default()).unwrap();
        assert!(b2.eq_ideal(&b3.ideal));
    }
}
