//! Small dense exact linear algebra.

use crate::field::ExactField;

/// Square matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SquareMatrix<F> {
    size: usize,
    data: Vec<F>,
}

impl<F: ExactField> SquareMatrix<F> {
    pub fn identity(size: usize) -> Self {
        let mut data = vec![F::zero(); size * size];
        for i in 0..size {
            data[i * size + i] = F::one();
        }
        SquareMatrix { size, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "matrix must be square");
        SquareMatrix {
            size,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.size + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                data.push(self.get(i, j).clone());
            }
        }
        SquareMatrix { size: n, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size;
        assert_eq!(n, other.size);
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = F::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * other.get(k, j);
                }
                data.push(acc);
            }
        }
        SquareMatrix { size: n, data }
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.size);
        (0..self.size)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        let n = self.size;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }
}

/// Euclidean dot product.
pub fn dot<F: ExactField>(a: &[F], b: &[F]) -> F {
    let mut acc = F::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc + x.clone() * y;
    }
    acc
}

/// Reduces `rows` in place to row echelon form; returns pivot columns.
fn echelon<F: ExactField>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * &inv;
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..ncols {
                if rows[r][j].is_zero() {
                    continue;
                }
                let t = f.clone() * &rows[r][j];
                rows[i][j] = rows[i][j].clone() - t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: ExactField>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m).len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace<F: ExactField>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); ncols];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b` for square invertible `A`.
pub fn solve<F: ExactField>(a: &SquareMatrix<F>, b: &[F]) -> Option<Vec<F>> {
    let n = a.size();
    let mut aug: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = echelon(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}
