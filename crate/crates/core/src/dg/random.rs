//! Seeded random complexes, graded maps and lalis with small integer
//! entries.

use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::Rng;

use super::{q, Complex, GradedMap, HomologicalLali, Matrix};

fn small<R: Rng>(rng: &mut R) -> i64 {
    rng.gen_range(-2..=2)
}

/// `L·U` with unit diagonals, hence invertible.
pub fn invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, q(small(rng)));
            u.set(j, i, q(small(rng)));
        }
    }
    &l * &u
}

/// A random invertible matrix preserving the degrees of `x`.
pub fn automorphism<R: Rng>(rng: &mut R, x: &Complex) -> Matrix {
    let mut p = Matrix::zeros(x.dim(), x.dim());
    for k in x.support().into_keys() {
        let idx = x.indices(k);
        let block = invertible(rng, idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                p.set(i, j, block.get(a, b).clone());
            }
        }
    }
    p
}

/// Spheres and disks in `degrees`, at most `max` summands of each kind per
/// degree, mixed by a random automorphism.
pub fn complex<R: Rng>(rng: &mut R, degrees: RangeInclusive<i32>, max: usize) -> Complex {
    let mut c = Complex::zero();
    let lo = *degrees.start();
    for k in degrees {
        for _ in 0..rng.gen_range(0..=max) {
            c = c.direct_sum(&Complex::sphere(k));
        }
        if k > lo {
            for _ in 0..rng.gen_range(0..=max.min(1)) {
                c = c.direct_sum(&Complex::disk(k));
            }
        }
    }
    let p = automorphism(rng, &c);
    c.conjugate(&p).expect("automorphisms are invertible")
}

pub fn graded_map<R: Rng>(rng: &mut R, x: &Arc<Complex>, y: &Arc<Complex>, degree: i32) -> GradedMap {
    let mut m = Matrix::zeros(y.dim(), x.dim());
    for i in 0..y.dim() {
        for j in 0..x.dim() {
            if y.degrees()[i] == x.degrees()[j] + degree {
                m.set(i, j, q(small(rng)));
            }
        }
    }
    GradedMap::new(x, y, degree, m).expect("entries respect degrees")
}

/// A lali `A → b` where `A` is `b` plus contractible disks in `degrees`,
/// transported along random automorphisms.
pub fn lali_onto<R: Rng>(rng: &mut R, b: &Arc<Complex>, degrees: RangeInclusive<i32>) -> HomologicalLali {
    let lo = *degrees.start();
    let mut disks = Complex::zero();
    for k in degrees {
        if k > lo {
            for _ in 0..rng.gen_range(0..=1) {
                disks = disks.direct_sum(&Complex::disk(k));
            }
        }
    }
    let (n, m) = (b.dim(), disks.dim());
    let a0 = b.direct_sum(&disks);
    // The disk contraction sends each bottom generator to its top.
    let mut h = Matrix::zeros(m, m);
    for t in (0..m).step_by(2) {
        h.set(t, t + 1, q(1));
    }
    let mut g0 = Matrix::zeros(n, n + m);
    g0.add_block(0, 0, &Matrix::identity(n));
    let q0 = g0.transpose();
    let xi0 = Matrix::block_diagonal(&[&Matrix::zeros(n, n), &h]);
    let p = automorphism(rng, &a0);
    let pinv = p.inverse().expect("automorphisms are invertible");
    let a = Arc::new(a0.conjugate(&p).expect("automorphisms are invertible"));
    let g = GradedMap::new(&a, b, 0, &g0 * &pinv).expect("degree 0");
    let qm = GradedMap::new(b, &a, 0, &p * &q0).expect("degree 0");
    let xi = GradedMap::new(&a, &a, 1, &(&p * &xi0) * &pinv).expect("degree 1");
    HomologicalLali::new(g, qm, xi)
}
