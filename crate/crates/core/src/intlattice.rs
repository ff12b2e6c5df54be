//! Integer linear algebra: Hermite and Smith normal forms, integer kernels,
//! inhomogeneous systems, lattice intersection and projection.
//!
//! Lattices are stored as row-style HNF bases: pivot entries positive,
//! entries above a pivot reduced to the least non-negative residue, zero
//! rows dropped. The HNF is unique, so lattice equality is matrix equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Integer vector with the canonical split a = a⁺ − a⁻ into non-negative parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntVec(pub Vec<BigInt>);

impl IntVec {
    pub fn from_i64(v: &[i64]) -> Self {
        IntVec(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Entrywise max(a, 0).
    pub fn plus_part(&self) -> IntVec {
        IntVec(
            self.0
                .iter()
                .map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() })
                .collect(),
        )
    }

    /// Entrywise −min(a, 0), so that a = a⁺ − a⁻ with both parts ≥ 0.
    pub fn minus_part(&self) -> IntVec {
        IntVec(
            self.0
                .iter()
                .map(|x| if x.is_negative() { -x.clone() } else { BigInt::zero() })
                .collect(),
        )
    }
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        let n = rows.len();
        IntMat { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMat::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            cols,
        )
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> IntVec {
        IntVec(self.row(i).to_vec())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// row_i += q * row_j
    fn add_mul_row(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = &self.data[j * self.cols + c] * q;
            self.data[i * self.cols + c] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            let v = -std::mem::take(&mut self.data[idx]);
            self.data[idx] = v;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// col_i += q * col_j
    fn add_mul_col(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let t = &self.data[r * self.cols + j] * q;
            self.data[r * self.cols + i] += t;
        }
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-style Hermite normal form. Returns (H, T) with T·M = H and det T = ±1.
///
/// Pivots are positive, entries above each pivot are reduced to the least
/// non-negative residue, zero rows sink to the bottom.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut t = IntMat::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // gcd-eliminate below pivot_row in this column
        loop {
            // find row with smallest nonzero |entry| at or below pivot_row
            let mut best: Option<usize> = None;
            for r in pivot_row..h.rows {
                if !h[(r, col)].is_zero() {
                    match best {
                        None => best = Some(r),
                        Some(b) => {
                            if h[(r, col)].abs() < h[(b, col)].abs() {
                                best = Some(r)
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            t.swap_rows(pivot_row, b);
            let mut done = true;
            let p = h[(pivot_row, col)].clone();
            for r in (pivot_row + 1)..h.rows {
                if !h[(r, col)].is_zero() {
                    let q = -(&h[(r, col)] / &p);
                    h.add_mul_row(r, pivot_row, &q);
                    t.add_mul_row(r, pivot_row, &q);
                    if !h[(r, col)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            t.negate_row(pivot_row);
        }
        // reduce entries above the pivot to least non-negative residues
        let p = h[(pivot_row, col)].clone();
        for r in 0..pivot_row {
            let e = &h[(r, col)];
            if !e.is_zero() {
                let q = -e.div_floor(&p);
                h.add_mul_row(r, pivot_row, &q);
                t.add_mul_row(r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, t)
}

/// A lattice in ℤ^k stored via its unique row-HNF basis (zero rows dropped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// Lattice spanned by the given vectors.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<BigInt>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ambient, "row length must match ambient rank");
        }
        let m = IntMat::from_rows(rows, ambient);
        let (h, _) = hnf(&m);
        let basis = (0..h.rows)
            .map(|i| h.row(i).to_vec())
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        Lattice { ambient, basis }
    }

    pub fn from_i64(ambient: usize, rows: &[&[i64]]) -> Self {
        Lattice::from_rows(
            ambient,
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut r = vec![BigInt::zero(); ambient];
                r[i] = BigInt::one();
                r
            })
            .collect();
        Lattice { ambient, basis: rows }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect())
            .collect()
    }

    /// Coordinates of v in terms of the HNF basis, if v lies in the lattice.
    pub fn coordinates(&self, v: &IntVec) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let mut rest = v.0.clone();
        let mut coords = vec![BigInt::zero(); self.basis.len()];
        for (i, row) in self.basis.iter().enumerate() {
            let pivot_col = row.iter().position(|x| !x.is_zero()).expect("no zero basis rows");
            if rest[pivot_col].is_zero() {
                continue;
            }
            let (q, r) = rest[pivot_col].div_rem(&row[pivot_col]);
            if !r.is_zero() {
                return None;
            }
            for c in 0..self.ambient {
                let t = &row[c] * &q;
                rest[c] -= t;
            }
            coords[i] = q;
        }
        if rest.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &IntVec) -> bool {
        self.coordinates(v).is_some()
    }

    /// Lattice intersection via the integer kernel of the stacked bases.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient != other.ambient {
            return Err(Error::domain("lattice intersection needs equal ambient ranks"));
        }
        if self.rank() == 0 || other.rank() == 0 {
            return Ok(Lattice::zero(self.ambient));
        }
        // solve a·B1 - b·B2 = 0 over ℤ; columns of the kernel problem are
        // the coefficients (a, b).
        let r1 = self.rank();
        let r2 = other.rank();
        let mut m = IntMat::zero(self.ambient, r1 + r2);
        for (j, row) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, j)] = row[i].clone();
            }
        }
        for (j, row) in other.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, r1 + j)] = -row[i].clone();
            }
        }
        let ker = kernel_int(&m);
        let rows = ker
            .basis()
            .iter()
            .map(|k| {
                let mut v = vec![BigInt::zero(); self.ambient];
                for (j, row) in self.basis.iter().enumerate() {
                    for i in 0..self.ambient {
                        let t = &row[i] * &k[j];
                        v[i] += t;
                    }
                }
                v
            })
            .collect();
        Ok(Lattice::from_rows(self.ambient, rows))
    }

    /// Image of the lattice under projection onto the given coordinates.
    pub fn project(&self, coords: &[usize]) -> Lattice {
        for &c in coords {
            assert!(c < self.ambient, "projection coordinate out of range");
        }
        let rows = self
            .basis
            .iter()
            .map(|r| coords.iter().map(|&c| r[c].clone()).collect())
            .collect();
        Lattice::from_rows(coords.len(), rows)
    }
}

/// Integer kernel {v : M·v = 0} ⊆ ℤ^cols.
pub fn kernel_int(m: &IntMat) -> Lattice {
    // T · Mᵀ = H; rows of T matching zero rows of H are kernel vectors.
    let mt = m.transpose();
    let (h, t) = hnf(&mt);
    let mut rows = Vec::new();
    for i in 0..h.rows {
        if h.row(i).iter().all(|x| x.is_zero()) {
            rows.push(t.row(i).to_vec());
        }
    }
    Lattice::from_rows(m.cols, rows)
}

/// Smith normal form: returns (S, U, V) with U·M·V = S, S diagonal with
/// d₁ | d₂ | ⋯ and U, V unimodular.
pub fn snf(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let mut s = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut v = IntMat::identity(m.cols);
    let n = m.rows.min(m.cols);
    let mut k = 0;
    while k < n {
        // find a nonzero pivot with minimal |value| in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in k..s.rows {
            for j in k..s.cols {
                if !s[(i, j)].is_zero() {
                    match best {
                        None => best = Some((i, j)),
                        Some(b) => {
                            if s[(i, j)].abs() < s[b].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap_rows(k, bi);
        u.swap_rows(k, bi);
        s.swap_cols(k, bj);
        v.swap_cols(k, bj);

        let mut clean = true;
        for i in (k + 1)..s.rows {
            if !s[(i, k)].is_zero() {
                let q = -(&s[(i, k)] / &s[(k, k)]);
                s.add_mul_row(i, k, &q);
                u.add_mul_row(i, k, &q);
                if !s[(i, k)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in (k + 1)..s.cols {
            if !s[(k, j)].is_zero() {
                let q = -(&s[(k, j)] / &s[(k, k)]);
                s.add_mul_col(j, k, &q);
                v.add_mul_col(j, k, &q);
                if !s[(k, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // divisibility fix-up: pivot must divide every remaining entry
        let mut fixed = true;
        'outer: for i in (k + 1)..s.rows {
            for j in (k + 1)..s.cols {
                if !(&s[(i, j)] % &s[(k, k)]).is_zero() {
                    // add row i to row k to pull the entry into the pivot row
                    s.add_mul_row(k, i, &BigInt::one());
                    u.add_mul_row(k, i, &BigInt::one());
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if s[(k, k)].is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    (s, u, v)
}

/// All integer solutions of A·x = b: a particular solution plus the kernel
/// lattice, or None when unsolvable over ℤ.
pub fn solve_inhomogeneous(a: &IntMat, b: &IntVec) -> Option<(IntVec, Lattice)> {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let (s, u, v) = snf(a);
    let ub = u.mul_vec(&b.0);
    let mut y = vec![BigInt::zero(); a.cols];
    let n = a.rows.min(a.cols);
    for i in 0..n {
        if s[(i, i)].is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(&s[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    for i in n..a.rows {
        if !ub[i].is_zero() {
            return None;
        }
    }
    let x = v.mul_vec(&y);
    Some((IntVec(x), kernel_int(a)))
}

/// Textbook LLL reduction (δ = 0.99) on the rows of an integer matrix.
/// Zero rows are dropped first; the rows must not be required independent.
pub fn lll_reduce(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    use num_rational::BigRational;
    let mut b: Vec<Vec<BigInt>> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    if b.is_empty() {
        return b;
    }
    let n = b.len();
    let dim = b[0].len();
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));

    let dot = |x: &[BigInt], y: &[BigInt]| -> BigRational {
        let s: BigInt = x.iter().zip(y).map(|(a, b)| a * b).sum();
        BigRational::from(s)
    };

    // Gram-Schmidt data recomputed on demand; desk-scale sizes only.
    let gso = |b: &[Vec<BigInt>]| -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>, Vec<BigRational>) {
        let k = b.len();
        let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(k);
        let mut mu = vec![vec![BigRational::from(BigInt::zero()); k]; k];
        let mut norms = Vec::with_capacity(k);
        for i in 0..k {
            let mut v: Vec<BigRational> =
                b[i].iter().map(|x| BigRational::from(x.clone())).collect();
            for j in 0..i {
                if norms[j] == BigRational::from(BigInt::zero()) {
                    continue;
                }
                let num: BigRational = (0..dim)
                    .map(|c| BigRational::from(b[i][c].clone()) * &star[j][c])
                    .sum();
                let m = num / &norms[j];
                for c in 0..dim {
                    let t = &m * &star[j][c];
                    v[c] -= t;
                }
                mu[i][j] = m;
            }
            let nrm: BigRational = v.iter().map(|x| x * x).sum();
            norms.push(nrm);
            star.push(v);
        }
        (star, mu, norms)
    };

    let _ = dot;
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        if guard > 100_000 {
            break; // safety valve; callers verify candidates exactly anyway
        }
        let (_, mu, norms) = gso(&b);
        // size reduction
        for j in (0..k).rev() {
            let m = &mu[k][j];
            let half = BigRational::new(BigInt::from(1), BigInt::from(2));
            if m.abs() > half {
                let q = m.round().to_integer();
                for c in 0..dim {
                    let t = &b[j][c] * &q;
                    b[k][c] -= t;
                }
            }
        }
        let (_, mu, norms2) = gso(&b);
        let _ = norms;
        // Lovász condition
        let lhs = norms2[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms2[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = k.max(2) - 1;
            if k == 0 {
                k = 1;
            }
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn hnf_identity_fixed() {
        let m = IntMat::identity(3);
        let (h, t) = hnf(&m);
        assert_eq!(h, m);
        assert_eq!(t, IntMat::identity(3));
    }

    #[test]
    fn hnf_example_rows() {
        // {(2,0),(1,1)} -> {(1,1),(0,2)}
        let m = IntMat::from_i64(&[&[2, 0], &[1, 1]]);
        let (h, t) = hnf(&m);
        assert_eq!(h, IntMat::from_i64(&[&[1, 1], &[0, 2]]));
        assert_eq!(t.mul(&m), h);
    }

    #[test]
    fn hnf_zero() {
        let m = IntMat::zero(2, 3);
        let (h, _) = hnf(&m);
        assert!(h.is_zero());
    }

    #[test]
    fn hnf_idempotent() {
        let m = IntMat::from_i64(&[&[4, 7, 2], &[6, 3, 9], &[0, 5, 5]]);
        let (h, _) = hnf(&m);
        let (h2, _) = hnf(&h);
        assert_eq!(h, h2);
    }

    #[test]
    fn kernel_single_row() {
        let m = IntMat::from_i64(&[&[2, 4, 6]]);
        let k = kernel_int(&m);
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&IntVec::from_i64(&[1, 1, -1])));
        assert!(k.contains(&IntVec::from_i64(&[3, 0, -1])));
        // every basis vector really is in the kernel
        for row in k.basis() {
            let s: BigInt = m.row(0).iter().zip(row).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn kernel_zero_and_identity() {
        let z = IntMat::zero(1, 4);
        assert_eq!(kernel_int(&z), Lattice::full(4));
        let id = IntMat::identity(3);
        assert_eq!(kernel_int(&id), Lattice::zero(3));
    }

    #[test]
    fn snf_diag_example() {
        let m = IntMat::from_i64(&[&[2, 0], &[0, 3]]);
        let (s, u, v) = snf(&m);
        assert_eq!(s, IntMat::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&m).mul(&v), s);
    }

    #[test]
    fn snf_divisibility_chain_random() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 41) as i64 - 20
        };
        for _ in 0..50 {
            let rows: Vec<Vec<BigInt>> =
                (0..4).map(|_| (0..4).map(|_| bi(rnd())).collect()).collect();
            let m = IntMat::from_rows(rows, 4);
            let (s, u, v) = snf(&m);
            assert_eq!(u.mul(&m).mul(&v), s);
            for i in 0..3 {
                if !s[(i + 1, i + 1)].is_zero() {
                    assert!(
                        (&s[(i + 1, i + 1)] % &s[(i, i)]).is_zero(),
                        "divisibility chain broken"
                    );
                }
            }
        }
    }

    #[test]
    fn solve_examples() {
        // 1·x = 1
        let a = IntMat::from_i64(&[&[1]]);
        let (p, k) = solve_inhomogeneous(&a, &IntVec::from_i64(&[1])).unwrap();
        assert_eq!(p, IntVec::from_i64(&[1]));
        assert_eq!(k.rank(), 0);
        // 2x + 3y = 1
        let a = IntMat::from_i64(&[&[2, 3]]);
        let (p, k) = solve_inhomogeneous(&a, &IntVec::from_i64(&[1])).unwrap();
        let check: BigInt = bi(2) * &p.0[0] + bi(3) * &p.0[1];
        assert_eq!(check, bi(1));
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&IntVec::from_i64(&[3, -2])));
        // 2x = 1 unsolvable
        let a = IntMat::from_i64(&[&[2]]);
        assert!(solve_inhomogeneous(&a, &IntVec::from_i64(&[1])).is_none());
    }

    #[test]
    fn intersect_paper_example() {
        // Λ = ⟨(0,1,−1),(1,0,−1)⟩ ∩ M = ⟨(−3,1,0),(0,0,1)⟩ = ⟨(3,−1,−2)⟩
        let l = Lattice::from_i64(3, &[&[0, 1, -1], &[1, 0, -1]]);
        let m = Lattice::from_i64(3, &[&[-3, 1, 0], &[0, 0, 1]]);
        let i = l.intersect(&m).unwrap();
        assert_eq!(i, Lattice::from_i64(3, &[&[3, -1, -2]]));
    }

    #[test]
    fn intersect_trivial_cases() {
        let full = Lattice::full(2);
        assert_eq!(full.intersect(&full).unwrap(), full);
        let a = Lattice::from_i64(2, &[&[2, 0]]);
        let b = Lattice::from_i64(2, &[&[0, 2]]);
        assert_eq!(a.intersect(&b).unwrap(), Lattice::zero(2));
    }

    #[test]
    fn intersect_brute_force_boxes() {
        // compare against brute force on a small box
        let a = Lattice::from_i64(3, &[&[1, 2, 0], &[0, 3, 1]]);
        let b = Lattice::from_i64(3, &[&[1, 0, 1], &[0, 2, 0]]);
        let i = a.intersect(&b).unwrap();
        for x in -5i64..=5 {
            for y in -5i64..=5 {
                for z in -5i64..=5 {
                    let v = IntVec::from_i64(&[x, y, z]);
                    let both = a.contains(&v) && b.contains(&v);
                    assert_eq!(both, i.contains(&v), "mismatch at {:?}", (x, y, z));
                }
            }
        }
    }

    #[test]
    fn project_examples() {
        let l = Lattice::from_i64(3, &[&[1, 1, -1], &[3, 0, -1]]);
        let p = l.project(&[0, 1]);
        assert_eq!(p, Lattice::from_i64(2, &[&[1, 1], &[3, 0]]));
        assert_eq!(Lattice::full(2).project(&[0]), Lattice::full(1));
        assert_eq!(Lattice::zero(3).project(&[0, 2]), Lattice::zero(2));
        // nested projections compose
        let q = l.project(&[0, 1]).project(&[1]);
        assert_eq!(q, l.project(&[1]));
    }

    #[test]
    fn membership_and_coordinates() {
        let l = Lattice::from_i64(2, &[&[6, 1], &[0, 16]]);
        assert!(l.contains(&IntVec::from_i64(&[6, 17])));
        assert!(!l.contains(&IntVec::from_i64(&[3, 0])));
        let c = l.coordinates(&IntVec::from_i64(&[6, 17])).unwrap();
        assert_eq!(c, vec![bi(1), bi(1)]);
    }
}
