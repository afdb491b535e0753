//! Exact dense linear algebra over rational scalars: incremental row
//! echelon spans, solving, and nullspaces. Pivoting is deterministic
//! (first nonzero column in index order), which keeps every downstream
//! basis and report reproducible across runs.

use crate::algebra_base::Scalar;

/// A growing row-echelon basis of a subspace of ℚ^n. Rows are kept fully
/// reduced (each pivot column is zero in all other rows, pivot entry 1).
#[derive(Clone, Debug)]
pub struct RowSpace {
    n: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(n: usize) -> Self {
        RowSpace { n, rows: vec![], pivots: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains(&col)
    }

    /// Reduces `v` against the current rows, zeroing its pivot columns.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row.iter()) {
                *x -= f.clone() * r.clone();
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<Scalar>) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Inserts `v` into the span. Returns true if it was independent
    /// (the rank grew).
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for c in v.iter_mut() {
            *c = c.clone() * inv.clone();
        }
        // Back-substitute into existing rows so the basis stays reduced.
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(v.iter()) {
                *x -= f.clone() * r.clone();
            }
        }
        // Keep rows ordered by pivot column.
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }
}

/// Solves A·x = b for dense rational A (rows of length n). Returns one
/// solution, or None if inconsistent.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.len(), b.len());
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    // Augmented echelon.
    let mut span = RowSpace::new(n + 1);
    for (row, rhs) in a.iter().zip(b.iter()) {
        let mut v = row.clone();
        v.push(rhs.clone());
        span.insert(v);
    }
    // Inconsistent iff some pivot sits in the augmented column.
    if span.is_pivot(n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (row, &p) in span.rows().iter().zip(span.pivots().iter()) {
        // Row reads x_p + Σ c_j x_j = rhs with the free x_j set to zero.
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Basis of the right nullspace {x : A·x = 0}.
pub fn nullspace(a: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let m = a.len();
    if m == 0 {
        return vec![];
    }
    let n = a[0].len();
    let mut span = RowSpace::new(n);
    for row in a {
        span.insert(row.clone());
    }
    let mut basis = vec![];
    for free in 0..n {
        if span.is_pivot(free) {
            continue;
        }
        let mut x = vec![Scalar::zero(); n];
        x[free] = Scalar::one();
        for (row, &p) in span.rows().iter().zip(span.pivots().iter()) {
            x[p] = -row[free].clone();
        }
        basis.push(x);
    }
    basis
}
