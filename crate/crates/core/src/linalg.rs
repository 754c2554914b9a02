//! Fraction-free exact rank over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    /// Bareiss elimination; every division is exact.
    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    m.swap(p * cols + j, r * cols + j);
                }
            }
            let pivot = m[r * cols + c].clone();
            for i in r + 1..rows {
                let factor = m[i * cols + c].clone();
                for j in c + 1..cols {
                    let v = &pivot * &m[i * cols + j] - &factor * &m[r * cols + j];
                    m[i * cols + j] = v / &prev;
                }
                m[i * cols + c] = BigInt::zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from(rows: &[&[i64]]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), rows[0].len());
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    #[test]
    fn ranks() {
        assert_eq!(from(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(from(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(from(&[&[0, 1, 2], &[1, 0, 3], &[1, 1, 5]]).rank(), 2);
        assert_eq!(from(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]]).rank(), 3);
        assert_eq!(from(&[&[0, 0, 1], &[0, 0, 2], &[3, 0, 0]]).rank(), 2);
    }
}
