//! Smith normal form over the integers.
//!
//! Elimination always pivots on the entry of smallest magnitude, which keeps
//! entry growth small. The fast path runs on `i64` with checked arithmetic;
//! if any operation would overflow, the whole computation is redone with
//! `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

use super::IntegerMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r` of a matrix, with `r` its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one, i.e. the torsion coefficients of the cokernel.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().filter(|d| **d > BigInt::from(1))
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let factors = match eliminate(m.rows(), m.cols(), m.entries().to_vec()) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => {
            let big = m.entries().iter().map(|&x| BigInt::from(x)).collect();
            eliminate(m.rows(), m.cols(), big).expect("bigint arithmetic cannot overflow")
        }
    };
    SmithForm { factors }
}

trait Entry: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {}
impl<T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul> Entry for T {}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Entry> Work<T> {
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        if r != s {
            for j in 0..self.cols {
                self.a.swap(r * self.cols + j, s * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, c: usize, d: usize) {
        if c != d {
            for i in 0..self.rows {
                self.a.swap(i * self.cols + c, i * self.cols + d);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Option<()> {
        for j in from..self.cols {
            let s = self.at(src, j).clone();
            if s.is_zero() {
                continue;
            }
            let d = &self.a[dst * self.cols + j];
            let new = d.checked_sub(&q.checked_mul(&s)?)?;
            self.a[dst * self.cols + j] = new;
        }
        Some(())
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Option<()> {
        for i in from..self.rows {
            let s = self.at(i, src).clone();
            if s.is_zero() {
                continue;
            }
            let d = &self.a[i * self.cols + dst];
            let new = d.checked_sub(&q.checked_mul(&s)?)?;
            self.a[i * self.cols + dst] = new;
        }
        Some(())
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.at(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.at(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

fn eliminate<T: Entry>(rows: usize, cols: usize, a: Vec<T>) -> Option<Vec<T>> {
    let mut w = Work { rows, cols, a };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.smallest_in_block(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.at(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !w.at(i, t).is_zero() {
                    let q = w.at(i, t).div_floor(&p);
                    w.row_axpy(i, t, &q, t)?;
                    clean &= w.at(i, t).is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.at(t, j).is_zero() {
                    let q = w.at(t, j).div_floor(&p);
                    w.col_axpy(j, t, &q, t)?;
                    clean &= w.at(t, j).is_zero();
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived; promote it.
                let mut best: Option<(usize, usize)> = None;
                let mut best_abs = p.abs();
                for i in t + 1..rows {
                    let x = w.at(i, t);
                    if !x.is_zero() && x.abs() < best_abs {
                        best_abs = x.abs();
                        best = Some((i, t));
                    }
                }
                for j in t + 1..cols {
                    let x = w.at(t, j);
                    if !x.is_zero() && x.abs() < best_abs {
                        best_abs = x.abs();
                        best = Some((t, j));
                    }
                }
                if let Some((i, j)) = best {
                    w.swap_rows(t, i);
                    w.swap_cols(t, j);
                }
                continue;
            }
            // Pivot row and column are clear; the pivot must divide the rest.
            let bad_row = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.at(i, j).is_multiple_of(&p)));
            match bad_row {
                Some(i) => {
                    let minus_one = T::zero() - T::one();
                    w.row_axpy(t, i, &minus_one, t)?;
                }
                None => break,
            }
        }
        diag.push(w.at(t, t).abs());
    }
    Some(diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: usize, cols: usize, e: &[i64]) -> Vec<i64> {
        let m = IntegerMatrix::from_entries(rows, cols, e.to_vec());
        smith_normal_form(&m)
            .factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(factors(2, 2, &[2, 0, 0, 4]), vec![2, 4]);
        assert_eq!(factors(2, 3, &[0; 6]), Vec::<i64>::new());
        assert_eq!(factors(2, 2, &[1, 1, 1, 1]), vec![1]);
    }

    #[test]
    fn divisibility_is_restored() {
        // diag(4, 6) ~ diag(2, 12)
        assert_eq!(factors(2, 2, &[4, 0, 0, 6]), vec![2, 12]);
        assert_eq!(factors(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 5]), vec![1, 1, 30]);
    }

    #[test]
    fn empty_shapes() {
        assert!(factors(0, 3, &[]).is_empty());
        assert!(factors(3, 0, &[]).is_empty());
    }

    #[test]
    fn falls_back_to_bigint() {
        let big = i64::MAX / 2;
        // Entries this large overflow the i64 path; the result must stay exact.
        let f = smith_normal_form(&IntegerMatrix::from_entries(2, 2, vec![big, big - 1, big - 3, big]));
        let det = BigInt::from(big) * BigInt::from(big) - BigInt::from(big - 1) * BigInt::from(big - 3);
        let prod: BigInt = f.factors.iter().product();
        assert_eq!(prod, det.abs());
    }

    #[test]
    fn product_of_factors_is_abs_determinant() {
        // Small exhaustive-ish check against a cofactor determinant.
        let mats: [[i64; 9]; 4] = [
            [1, 2, 3, 4, 5, 6, 7, 8, 10],
            [2, 4, 6, 1, 3, 5, 0, 0, 7],
            [3, -1, 2, 0, 4, 4, 6, -2, 4],
            [6, 0, 0, 0, 10, 0, 0, 0, 15],
        ];
        for e in mats {
            let det = e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6])
                + e[2] * (e[3] * e[7] - e[4] * e[6]);
            let f = factors(3, 3, &e);
            if det != 0 {
                assert_eq!(f.iter().product::<i64>(), det.abs());
                assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
            }
        }
    }
}
