//! Compensated (Neumaier) accumulators.
//!
//! Per-sample objective and gradient terms are summed with error-free
//! transformations so that re-partitioning a dataset across workers leaves
//! the totals equal to ~1e-15 relative, which is what makes shard count
//! immaterial for the synchronous trajectories.

use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone)]
pub struct KahanVec {
    sum: DVector<f64>,
    comp: DVector<f64>,
}

impl KahanVec {
    pub fn zeros(n: usize) -> Self {
        Self {
            sum: DVector::zeros(n),
            comp: DVector::zeros(n),
        }
    }

    pub fn add(&mut self, i: usize, x: f64) {
        let s = self.sum[i];
        let t = s + x;
        if s.abs() >= x.abs() {
            self.comp[i] += (s - t) + x;
        } else {
            self.comp[i] += (x - t) + s;
        }
        self.sum[i] = t;
    }

    pub fn value(&self) -> DVector<f64> {
        &self.sum + &self.comp
    }
}

#[derive(Debug, Clone)]
pub struct KahanMat {
    sum: DMatrix<f64>,
    comp: DMatrix<f64>,
}

impl KahanMat {
    pub fn zeros(r: usize, c: usize) -> Self {
        Self {
            sum: DMatrix::zeros(r, c),
            comp: DMatrix::zeros(r, c),
        }
    }

    pub fn add(&mut self, i: usize, j: usize, x: f64) {
        let s = self.sum[(i, j)];
        let t = s + x;
        if s.abs() >= x.abs() {
            self.comp[(i, j)] += (s - t) + x;
        } else {
            self.comp[(i, j)] += (x - t) + s;
        }
        self.sum[(i, j)] = t;
    }

    pub fn value(&self) -> DMatrix<f64> {
        &self.sum + &self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation() {
        let mut k = Kahan::default();
        k.add(1.0);
        k.add(1e100);
        k.add(1.0);
        k.add(-1e100);
        assert_eq!(k.value(), 2.0);
    }

    #[test]
    fn vector_accumulation_matches_scalar() {
        let mut kv = KahanVec::zeros(2);
        let mut k = Kahan::default();
        for i in 0..1000 {
            let x = (i as f64 * 0.1).sin() * 1e-3;
            kv.add(0, x);
            k.add(x);
        }
        assert_eq!(kv.value()[0], k.value());
        assert_eq!(kv.value()[1], 0.0);
    }
}
