//! Ground truth for tiny cases: count codimension-n ideals of
//! F_q[x, y, x^-1, y^-1] by direct enumeration. An ideal of codimension n
//! corresponds to an n-dimensional cyclic module over the ring, i.e. to a
//! triple (A, B, v) with A, B commuting invertible n x n matrices over F_q
//! and v a cyclic vector, taken up to the (free) simultaneous GL_n action;
//! so the count is |{(A, B, v)}| / |GL_n(F_q)| and the division is exact.
//!
//! Everything here is exhaustive enumeration over small prime fields —
//! deliberately naive, so that agreement with the formula routes is
//! evidence, not circularity. The only concession is enumerating B inside
//! the centralizer of A (the solution space of AX = XA) instead of all of
//! GL_n, which the commutation constraint forces anyway.

use rayon::prelude::*;
use thiserror::Error;

/// Default ceiling on q^(n^2), the number of outer matrices scanned.
/// (3, 3) costs 19683 and stays allowed; (3, 5) needs an explicit raise.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

const MAX_N: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("brute force supports n in 1..=3 and prime q in {{2, 3, 5}}, got n = {n}, q = {q}")]
    UnsupportedParameters { n: u32, q: u32 },
    #[error("enumeration scans q^(n^2) = {required} matrices, above the budget of {budget}; raise --budget to run anyway")]
    BudgetExceeded { required: u128, budget: u64 },
}

/// Result of one brute-force count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOutcome {
    pub n: u32,
    pub q: u32,
    /// Cyclic commuting triples (A, B, v), before dividing out GL_n.
    pub cyclic_triples: u64,
    pub gl_order: u64,
    /// cyclic_triples / gl_order, exactly.
    pub ideal_count: u64,
}

/// Row-major n x n matrix over F_q, entries reduced mod q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Mat {
    n: usize,
    e: [u8; MAX_N * MAX_N],
}

impl Mat {
    fn zero(n: usize) -> Self {
        Mat { n, e: [0; MAX_N * MAX_N] }
    }

    fn get(&self, r: usize, c: usize) -> u8 {
        self.e[r * self.n + c]
    }

    fn set(&mut self, r: usize, c: usize, v: u8) {
        self.e[r * self.n + c] = v;
    }

    /// Matrix with the base-q digits of `index` as entries; ranges over all
    /// n x n matrices as index ranges over 0..q^(n^2).
    fn decode(index: u64, n: usize, q: u8) -> Self {
        let mut m = Mat::zero(n);
        let mut rest = index;
        for i in 0..n * n {
            m.e[i] = (rest % q as u64) as u8;
            rest /= q as u64;
        }
        m
    }

    fn mul_vec(&self, v: [u8; MAX_N], q: u8) -> [u8; MAX_N] {
        let mut out = [0u8; MAX_N];
        for r in 0..self.n {
            let mut acc = 0u32;
            for c in 0..self.n {
                acc += self.get(r, c) as u32 * v[c] as u32;
            }
            out[r] = (acc % q as u32) as u8;
        }
        out
    }

    /// Inverse mod q by Gauss-Jordan; None when singular.
    fn inverse(&self, q: u8) -> Option<Mat> {
        let n = self.n;
        let mut a = *self;
        let mut inv = Mat::zero(n);
        for i in 0..n {
            inv.set(i, i, 1);
        }
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| a.get(r, col) != 0)?;
            if pivot_row != col {
                for c in 0..n {
                    let (x, y) = (a.get(col, c), a.get(pivot_row, c));
                    a.set(col, c, y);
                    a.set(pivot_row, c, x);
                    let (x, y) = (inv.get(col, c), inv.get(pivot_row, c));
                    inv.set(col, c, y);
                    inv.set(pivot_row, c, x);
                }
            }
            let scale = mod_inverse(a.get(col, col), q);
            for c in 0..n {
                a.set(col, c, mod_mul(a.get(col, c), scale, q));
                inv.set(col, c, mod_mul(inv.get(col, c), scale, q));
            }
            for r in 0..n {
                if r != col && a.get(r, col) != 0 {
                    let f = a.get(r, col);
                    for c in 0..n {
                        let av = mod_sub(a.get(r, c), mod_mul(f, a.get(col, c), q), q);
                        a.set(r, c, av);
                        let iv = mod_sub(inv.get(r, c), mod_mul(f, inv.get(col, c), q), q);
                        inv.set(r, c, iv);
                    }
                }
            }
        }
        Some(inv)
    }
}

fn mod_mul(a: u8, b: u8, q: u8) -> u8 {
    ((a as u32 * b as u32) % q as u32) as u8
}

fn mod_sub(a: u8, b: u8, q: u8) -> u8 {
    ((a as u32 + q as u32 - b as u32) % q as u32) as u8
}

/// a^(-1) mod prime q for a != 0, by Fermat.
fn mod_inverse(a: u8, q: u8) -> u8 {
    let mut acc = 1u8;
    for _ in 0..q - 2 {
        acc = mod_mul(acc, a, q);
    }
    acc
}

/// Basis of the solution space of AX = XA, a linear system in the n^2
/// entries of X: the (r,c) equation reads
/// sum_k A[r][k] X[k][c] - X[r][k] A[k][c] = 0.
fn centralizer_basis(a: &Mat, q: u8) -> Vec<Mat> {
    let n = a.n;
    let dim = n * n;
    // rows[eq][var], var index = k * n + l for X[k][l].
    let mut rows = vec![[0u8; MAX_N * MAX_N]; dim];
    for r in 0..n {
        for c in 0..n {
            let eq = &mut rows[r * n + c];
            for k in 0..n {
                // + A[r][k] X[k][c]
                let var = k * n + c;
                eq[var] = ((eq[var] as u32 + a.get(r, k) as u32) % q as u32) as u8;
                // - X[r][k] A[k][c]
                let var = r * n + k;
                eq[var] = mod_sub(eq[var], a.get(k, c), q);
            }
        }
    }
    // Gauss-Jordan to reduced row echelon form.
    let mut pivot_of_col = [usize::MAX; MAX_N * MAX_N];
    let mut rank = 0usize;
    for col in 0..dim {
        let Some(pr) = (rank..dim).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let scale = mod_inverse(rows[rank][col], q);
        for v in rows[rank].iter_mut() {
            *v = mod_mul(*v, scale, q);
        }
        for r in 0..dim {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for v in 0..dim {
                    rows[r][v] = mod_sub(rows[r][v], mod_mul(f, rows[rank][v], q), q);
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    // One basis vector per free column.
    let mut basis = Vec::with_capacity(dim - rank);
    for free in 0..dim {
        if pivot_of_col[free] != usize::MAX {
            continue;
        }
        let mut x = Mat::zero(n);
        x.e[free] = 1;
        for col in 0..dim {
            let pr = pivot_of_col[col];
            if pr != usize::MAX {
                // x[col] = -rows[pr][free] (pivot column entry solves to
                // minus the free column's coefficient).
                x.e[col] = mod_sub(0, rows[pr][free], q);
            }
        }
        basis.push(x);
    }
    basis
}

/// Dimension of the smallest subspace containing v and stable under all
/// four generators, by breadth-first closure with incremental row echelon.
fn orbit_dimension(v: [u8; MAX_N], gens: &[Mat; 4], n: usize, q: u8) -> usize {
    let mut echelon: Vec<[u8; MAX_N]> = Vec::with_capacity(n);
    let mut queue: Vec<[u8; MAX_N]> = Vec::with_capacity(4 * n);
    let insert = |w: [u8; MAX_N], echelon: &mut Vec<[u8; MAX_N]>| -> bool {
        let mut w = w;
        for row in echelon.iter() {
            let lead = (0..n).find(|&i| row[i] != 0).unwrap();
            if w[lead] != 0 {
                let f = mod_mul(w[lead], mod_inverse(row[lead], q), q);
                for i in 0..n {
                    w[i] = mod_sub(w[i], mod_mul(f, row[i], q), q);
                }
            }
        }
        if w.iter().take(n).all(|&x| x == 0) {
            return false;
        }
        echelon.push(w);
        true
    };
    if insert(v, &mut echelon) {
        queue.push(v);
    }
    while let Some(w) = queue.pop() {
        if echelon.len() == n {
            break;
        }
        for g in gens {
            let img = g.mul_vec(w, q);
            if insert(img, &mut echelon) {
                queue.push(img);
            }
        }
    }
    echelon.len()
}

/// |GL_n(F_q)| = prod_{j=0..n-1} (q^n - q^j).
fn gl_order(n: u32, q: u32) -> u64 {
    let qn = (q as u64).pow(n);
    (0..n).map(|j| qn - (q as u64).pow(j)).product()
}

/// Cyclic commuting triples with outer matrix A, summed over the
/// centralizer of A and all vectors.
fn triples_for_outer(a_index: u64, n: usize, q: u8) -> u64 {
    let a = Mat::decode(a_index, n, q);
    let Some(a_inv) = a.inverse(q) else {
        return 0;
    };
    let basis = centralizer_basis(&a, q);
    let dim = basis.len();
    let combos = (q as u64).pow(dim as u32);
    let vec_count = (q as u64).pow(n as u32);
    let mut total = 0u64;
    for combo in 0..combos {
        // B = sum of digit-weighted basis elements.
        let mut b = Mat::zero(n);
        let mut rest = combo;
        for basis_mat in basis.iter() {
            let w = (rest % q as u64) as u8;
            rest /= q as u64;
            if w != 0 {
                for i in 0..n * n {
                    b.e[i] = ((b.e[i] as u32 + w as u32 * basis_mat.e[i] as u32) % q as u32) as u8;
                }
            }
        }
        let Some(b_inv) = b.inverse(q) else {
            continue;
        };
        let gens = [a, b, a_inv, b_inv];
        for vi in 1..vec_count {
            let mut v = [0u8; MAX_N];
            let mut rest = vi;
            for entry in v.iter_mut().take(n) {
                *entry = (rest % q as u64) as u8;
                rest /= q as u64;
            }
            if orbit_dimension(v, &gens, n, q) == n {
                total += 1;
            }
        }
    }
    total
}

/// The codimension-n ideal count of F_q[x, y, x^-1, y^-1] by exhaustive
/// enumeration; must equal C_n(q). Budget is compared against q^(n^2).
pub fn count_ideals_bruteforce(n: u32, q: u32, budget: u64) -> Result<OracleOutcome, OracleError> {
    if !(1..=MAX_N as u32).contains(&n) || ![2u32, 3, 5].contains(&q) {
        return Err(OracleError::UnsupportedParameters { n, q });
    }
    let required = (q as u128).pow(n * n);
    if required > budget as u128 {
        return Err(OracleError::BudgetExceeded { required, budget });
    }
    let total: u64 = (0..required as u64)
        .into_par_iter()
        .map(|a_index| triples_for_outer(a_index, n as usize, q as u8))
        .sum();
    let gl = gl_order(n, q);
    assert_eq!(total % gl, 0, "GL_n acts freely on cyclic triples");
    Ok(OracleOutcome {
        n,
        q,
        cyclic_triples: total,
        gl_order: gl,
        ideal_count: total / gl,
    })
}
