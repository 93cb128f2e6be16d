//! Dense exact linear algebra over Q, plus determinants over commutative
//! integral domains (Bareiss fraction-free elimination).

use num_traits::{One, Zero};

use crate::poly::{RingElem, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ScalarMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// Outcome of an affine solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    Solved {
        particular: Vec<Scalar>,
        kernel: Vec<Vec<Scalar>>,
    },
    NoSolution,
}

impl AffineSolution {
    pub fn particular(&self) -> Option<&[Scalar]> {
        match self {
            AffineSolution::Solved { particular, .. } => Some(particular),
            AffineSolution::NoSolution => None,
        }
    }
}

/// Reduced row echelon form of the augmented matrix `[A | b]`.
/// Returns the pivot columns and the reduced rows.
fn rref(a: &ScalarMatrix, b: &[Scalar]) -> (Vec<usize>, Vec<Vec<Scalar>>) {
    let cols = a.cols();
    let mut rows: Vec<Vec<Scalar>> = (0..a.rows())
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].recip();
        for x in rows[next].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    (pivots, rows)
}

/// Solve `A x = b` exactly. The particular solution sets every free
/// variable to zero; kernel vectors have exactly one nonzero free entry.
pub fn solve_affine(a: &ScalarMatrix, b: &[Scalar]) -> AffineSolution {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let cols = a.cols();
    let (pivots, rows) = rref(a, b);
    if rows[pivots.len()..].iter().any(|row| !row[cols].is_zero()) {
        return AffineSolution::NoSolution;
    }
    let mut particular = vec![Scalar::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = rows[r][cols].clone();
    }
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let kernel = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][free].clone();
            }
            v
        })
        .collect();
    AffineSolution::Solved { particular, kernel }
}

/// Basis of the null space of `A`.
pub fn kernel(a: &ScalarMatrix) -> Vec<Vec<Scalar>> {
    let zeros = vec![Scalar::zero(); a.rows()];
    match solve_affine(a, &zeros) {
        AffineSolution::Solved { kernel, .. } => kernel,
        AffineSolution::NoSolution => unreachable!("homogeneous systems are consistent"),
    }
}

/// Fully reduced echelon basis of the span of `vectors`, pivoting on the
/// last nonzero coordinate. Each entry is `(pivot, vector)` with a 1 at the
/// pivot and 0 at every other pivot; sorted by pivot.
pub fn echelon_from_top(vectors: &[Vec<Scalar>]) -> Vec<(usize, Vec<Scalar>)> {
    let mut basis: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for v in vectors {
        let mut v = reduce_modulo(v, &basis);
        let Some(p) = v.iter().rposition(|x| !x.is_zero()) else {
            continue;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, b) in basis.iter_mut() {
            if !b[p].is_zero() {
                let f = b[p].clone();
                for (x, y) in b.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        basis.push((p, v));
    }
    basis.sort_by_key(|(p, _)| *p);
    basis
}

/// Clear the pivot coordinates of `v` using an echelon basis.
pub fn reduce_modulo(v: &[Scalar], basis: &[(usize, Vec<Scalar>)]) -> Vec<Scalar> {
    let mut v = v.to_vec();
    for (p, b) in basis {
        if !v[*p].is_zero() {
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &f * y;
            }
        }
    }
    v
}

/// Rank of `A`.
pub fn rank(a: &ScalarMatrix) -> usize {
    let zeros = vec![Scalar::zero(); a.rows()];
    rref(a, &zeros).0.len()
}

/// Determinant of a square matrix over an integral domain by Bareiss
/// fraction-free elimination with row pivoting.
pub fn det_over_ring<T: RingElem>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    assert!(n > 0, "empty matrix has no ambient ring");
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut prev = a[0][0].one_like();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero_elem()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return a[0][0].zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v
                    .div_exact(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant by Laplace expansion along the first column.
pub fn det_cofactor<T: RingElem>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(n > 0, "empty matrix has no ambient ring");
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = m[0][0].zero_like();
    for r in 0..n {
        if m[r][0].is_zero_elem() {
            continue;
        }
        let minor: Vec<Vec<T>> = m
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let term = m[r][0].clone() * det_cofactor(&minor);
        acc = if r % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, Polynomial};

    fn mat(rows: &[&[i64]]) -> ScalarMatrix {
        ScalarMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn identity_system() {
        let sol = solve_affine(&ScalarMatrix::identity(2), &[int(1), int(2)]);
        assert_eq!(
            sol,
            AffineSolution::Solved {
                particular: vec![int(1), int(2)],
                kernel: vec![]
            }
        );
    }

    #[test]
    fn single_equation_kernel() {
        let sol = solve_affine(&mat(&[&[1, 1]]), &[int(0)]);
        assert_eq!(
            sol,
            AffineSolution::Solved {
                particular: vec![int(0), int(0)],
                kernel: vec![vec![int(-1), int(1)]]
            }
        );
    }

    #[test]
    fn inconsistent_row() {
        assert_eq!(solve_affine(&mat(&[&[1, 0], &[0, 0]]), &[int(0), int(1)]), AffineSolution::NoSolution);
    }

    #[test]
    fn echelon_from_top_reduces() {
        let v = |xs: &[i64]| xs.iter().map(|&x| int(x)).collect::<Vec<_>>();
        let basis = echelon_from_top(&[v(&[1, 1, 0]), v(&[2, 0, 1]), v(&[3, 1, 1])]);
        assert_eq!(basis, vec![(1, v(&[1, 1, 0])), (2, v(&[2, 0, 1]))]);
        assert_eq!(reduce_modulo(&v(&[0, 2, 3]), &basis), v(&[-8, 0, 0]));
        let halves = echelon_from_top(&[v(&[0, 2])]);
        assert_eq!(halves, vec![(1, v(&[0, 1]))]);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&ScalarMatrix::identity(2)).is_empty());
        assert_eq!(kernel(&ScalarMatrix::zeros(2, 2)), vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        let k = kernel(&mat(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * int(-1), &k[0][1] * int(2));
    }

    #[test]
    fn ring_determinants() {
        let n = 2;
        let c = |x: i64| Polynomial::constant(n, int(x));
        assert_eq!(det_over_ring(&[vec![c(2), c(0)], vec![c(0), c(1)]]), c(2));
        assert_eq!(det_over_ring(&[vec![c(1), c(1)], vec![c(0), c(1)]]), c(1));
        let (z1, z2) = (Polynomial::var(n, 0), Polynomial::var(n, 1));
        let m = vec![vec![z1.clone(), z2.clone()], vec![z2.clone(), z1.clone()]];
        assert_eq!(det_over_ring(&m), &z1.pow(2) - &z2.pow(2));
        assert_eq!(det_cofactor(&m), &z1.pow(2) - &z2.pow(2));
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = vec![vec![int(0), int(1), int(2)], vec![int(1), int(0), int(3)], vec![int(4), int(-3), int(8)]];
        assert_eq!(det_over_ring(&m), det_cofactor(&m));
        let singular = vec![vec![int(0), int(1)], vec![int(0), int(3)]];
        assert_eq!(det_over_ring(&singular), int(0));
    }
}
