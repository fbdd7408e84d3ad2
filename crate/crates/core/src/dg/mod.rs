//! Chain complexes of finite-dimensional rational vector spaces.
//!
//! A complex is stored as one basis with a degree per basis vector and a
//! single boundary matrix of degree `-1`; a graded map of degree `i` is a
//! matrix whose `(y, x)` entry vanishes unless `deg y = deg x + i`. Tensor
//! products use the Kronecker basis `x ⊗ y`, ordered by `x` then `y`.
//!
//! Sign conventions:
//! - `∂f = ∂_Y·f − (−1)^{deg f} f·∂_X`;
//! - `∂(x ⊗ y) = ∂x ⊗ y + (−1)^{|x|} x ⊗ ∂y`;
//! - `(f ⊗ g)(x ⊗ y) = (−1)^{|g||x|} fx ⊗ gy`;
//! - the symmetry is `x ⊗ y ↦ (−1)^{|x||y|} y ⊗ x`.

mod lali;
mod matrix;
pub mod random;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

pub use lali::{is_lali_morphism, HomologicalLali};
pub use matrix::{q, Matrix, Q};

use crate::{Error, Result};

pub fn sign(k: i64) -> Q {
    if k.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Complex {
    deg: Vec<i32>,
    d: Matrix,
}

impl Complex {
    /// Checks the shape, that `d` has degree `-1`, and `d·d = 0`.
    pub fn new(deg: Vec<i32>, d: Matrix) -> Result<Self> {
        let n = deg.len();
        if d.rows() != n || d.cols() != n {
            return Err(Error::Shape(format!("boundary is {}x{} on a basis of {n}", d.rows(), d.cols())));
        }
        for i in 0..n {
            for j in 0..n {
                if !d.get(i, j).is_zero() && deg[i] != deg[j] - 1 {
                    return Err(Error::Shape(format!(
                        "boundary entry ({i},{j}) maps degree {} to degree {}",
                        deg[j], deg[i]
                    )));
                }
            }
        }
        if !(&d * &d).is_zero() {
            return Err(Error::Law(format!("boundary does not square to zero: {}", &d * &d)));
        }
        Ok(Complex { deg, d })
    }

    /// From per-degree dimensions and boundaries `∂_k : X_k → X_{k-1}`; the
    /// basis is ordered by degree.
    pub fn from_pieces(dims: &BTreeMap<i32, usize>, boundary: &BTreeMap<i32, Matrix>) -> Result<Self> {
        let deg: Vec<i32> = dims.iter().flat_map(|(&k, &n)| std::iter::repeat(k).take(n)).collect();
        let mut start = BTreeMap::new();
        let mut at = 0;
        for (&k, &n) in dims {
            start.insert(k, at);
            at += n;
        }
        let mut d = Matrix::zeros(deg.len(), deg.len());
        for (&k, m) in boundary {
            let src = dims.get(&k).copied().unwrap_or(0);
            let tgt = dims.get(&(k - 1)).copied().unwrap_or(0);
            if m.cols() != src || m.rows() != tgt {
                return Err(Error::Shape(format!(
                    "boundary in degree {k} is {}x{}, expected {tgt}x{src}",
                    m.rows(),
                    m.cols()
                )));
            }
            if src > 0 && tgt > 0 {
                d.add_block(start[&(k - 1)], start[&k], m);
            }
        }
        Complex::new(deg, d)
    }

    pub fn zero() -> Self {
        Complex {
            deg: Vec::new(),
            d: Matrix::zeros(0, 0),
        }
    }

    /// `R` in degree 0.
    pub fn unit() -> Self {
        Self::sphere(0)
    }

    pub fn sphere(k: i32) -> Self {
        Complex {
            deg: vec![k],
            d: Matrix::zeros(1, 1),
        }
    }

    /// `R` in degrees `k` and `k-1` with the identity boundary.
    pub fn disk(k: i32) -> Self {
        Complex {
            deg: vec![k, k - 1],
            d: Matrix::from_ints(2, 2, &[0, 0, 1, 0]),
        }
    }

    pub fn dim(&self) -> usize {
        self.deg.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.deg
    }

    pub fn boundary(&self) -> &Matrix {
        &self.d
    }

    /// Basis indices of degree `k`.
    pub fn indices(&self, k: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.deg[i] == k).collect()
    }

    pub fn support(&self) -> BTreeMap<i32, usize> {
        let mut s = BTreeMap::new();
        for &k in &self.deg {
            *s.entry(k).or_insert(0) += 1;
        }
        s
    }

    /// `∂_k : X_k → X_{k-1}`.
    pub fn boundary_in(&self, k: i32) -> Matrix {
        self.d.select(&self.indices(k - 1), &self.indices(k))
    }

    /// `dim X_k − rank ∂_k − rank ∂_{k+1}` for each degree in `degrees`.
    pub fn homology_ranks(&self, degrees: impl IntoIterator<Item = i32>) -> BTreeMap<i32, usize> {
        degrees
            .into_iter()
            .map(|k| {
                let n = self.indices(k).len();
                (k, n - self.boundary_in(k).rank() - self.boundary_in(k + 1).rank())
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        Complex {
            deg: self.deg.iter().chain(&other.deg).copied().collect(),
            d: Matrix::block_diagonal(&[&self.d, &other.d]),
        }
    }

    /// `diag((−1)^{k·|x|})` on this basis.
    pub fn koszul(&self, k: i32) -> Matrix {
        Matrix::diagonal(&self.deg.iter().map(|&p| sign(i64::from(k) * i64::from(p))).collect::<Vec<_>>())
    }

    pub fn tensor(&self, other: &Complex) -> Complex {
        let deg = self
            .deg
            .iter()
            .flat_map(|&p| other.deg.iter().map(move |&q| p + q))
            .collect();
        let left = self.d.kron(&Matrix::identity(other.dim()));
        let right = &self.koszul(1).kron(&Matrix::identity(other.dim())) * &Matrix::identity(self.dim()).kron(&other.d);
        Complex { deg, d: &left + &right }
    }

    /// Conjugates the boundary by a degree-preserving automorphism `p`,
    /// returning the new complex; `p` becomes a chain isomorphism from
    /// `self`.
    pub fn conjugate(&self, p: &Matrix) -> Result<Complex> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Invalid("conjugating matrix is singular".into()))?;
        Complex::new(self.deg.clone(), &(p * &self.d) * &inv)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degrees {:?}, d = {}", self.deg, self.d)
    }
}

/// A graded map `X → Y` of some degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMap {
    src: Arc<Complex>,
    tgt: Arc<Complex>,
    degree: i32,
    m: Matrix,
}

impl GradedMap {
    pub fn new(src: &Arc<Complex>, tgt: &Arc<Complex>, degree: i32, m: Matrix) -> Result<Self> {
        if m.rows() != tgt.dim() || m.cols() != src.dim() {
            return Err(Error::Shape(format!(
                "matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                tgt.dim(),
                src.dim()
            )));
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m.get(i, j).is_zero() && tgt.deg[i] != src.deg[j] + degree {
                    return Err(Error::Shape(format!(
                        "entry ({i},{j}) maps degree {} to degree {}, not by {degree}",
                        src.deg[j], tgt.deg[i]
                    )));
                }
            }
        }
        Ok(GradedMap {
            src: src.clone(),
            tgt: tgt.clone(),
            degree,
            m,
        })
    }

    /// Keeps only the entries of the right degree.
    pub fn truncating(src: &Arc<Complex>, tgt: &Arc<Complex>, degree: i32, mut m: Matrix) -> Self {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if tgt.deg[i] != src.deg[j] + degree {
                    m.set(i, j, Q::zero());
                }
            }
        }
        GradedMap {
            src: src.clone(),
            tgt: tgt.clone(),
            degree,
            m,
        }
    }

    pub fn zero(src: &Arc<Complex>, tgt: &Arc<Complex>, degree: i32) -> Self {
        GradedMap {
            src: src.clone(),
            tgt: tgt.clone(),
            degree,
            m: Matrix::zeros(tgt.dim(), src.dim()),
        }
    }

    pub fn identity(x: &Arc<Complex>) -> Self {
        GradedMap {
            src: x.clone(),
            tgt: x.clone(),
            degree: 0,
            m: Matrix::identity(x.dim()),
        }
    }

    /// The boundary of `x` as a degree `-1` map.
    pub fn boundary_of(x: &Arc<Complex>) -> Self {
        GradedMap {
            src: x.clone(),
            tgt: x.clone(),
            degree: -1,
            m: x.d.clone(),
        }
    }

    pub fn src(&self) -> &Arc<Complex> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<Complex> {
        &self.tgt
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    /// `self · f`; degrees add.
    pub fn after(&self, f: &GradedMap) -> Result<GradedMap> {
        if f.tgt != self.src {
            return Err(Error::NotComposable(format!(
                "graded maps: target {} is not source {}",
                f.tgt, self.src
            )));
        }
        Ok(GradedMap {
            src: f.src.clone(),
            tgt: self.tgt.clone(),
            degree: self.degree + f.degree,
            m: &self.m * &f.m,
        })
    }

    fn check_parallel(&self, o: &GradedMap) -> Result<()> {
        if self.src != o.src || self.tgt != o.tgt || self.degree != o.degree {
            return Err(Error::Shape(format!(
                "graded maps of degrees {} and {} are not parallel",
                self.degree, o.degree
            )));
        }
        Ok(())
    }

    pub fn plus(&self, o: &GradedMap) -> Result<GradedMap> {
        self.check_parallel(o)?;
        Ok(GradedMap {
            m: &self.m + &o.m,
            ..self.clone()
        })
    }

    pub fn minus(&self, o: &GradedMap) -> Result<GradedMap> {
        self.check_parallel(o)?;
        Ok(GradedMap {
            m: &self.m - &o.m,
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Q) -> GradedMap {
        GradedMap {
            m: self.m.scale(s),
            ..self.clone()
        }
    }

    /// `∂f = ∂_Y·f − (−1)^{deg f} f·∂_X`, of degree `deg f − 1`.
    pub fn differential(&self) -> GradedMap {
        let lhs = &self.tgt.d * &self.m;
        let rhs = (&self.m * &self.src.d).scale(&sign(i64::from(self.degree)));
        GradedMap {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            degree: self.degree - 1,
            m: &lhs - &rhs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_chain_map(&self) -> bool {
        self.degree == 0 && self.differential().is_zero()
    }

    /// `(f ⊗ g)(x ⊗ y) = (−1)^{|g||x|} fx ⊗ gy`.
    pub fn tensor(&self, g: &GradedMap) -> GradedMap {
        let src = Arc::new(self.src.tensor(&g.src));
        let tgt = Arc::new(self.tgt.tensor(&g.tgt));
        let signs = self.src.koszul(g.degree).kron(&Matrix::identity(g.src.dim()));
        GradedMap {
            src,
            tgt,
            degree: self.degree + g.degree,
            m: &self.m.kron(&g.m) * &signs,
        }
    }

    /// The same matrix between other complexes with identical bases.
    pub fn retype(&self, src: &Arc<Complex>, tgt: &Arc<Complex>) -> Result<GradedMap> {
        if src.deg != self.src.deg || tgt.deg != self.tgt.deg {
            return Err(Error::Shape("retyped complexes have different bases".into()));
        }
        GradedMap::new(src, tgt, self.degree, self.m.clone())
    }
}

impl fmt::Display for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

/// `x ⊗ y ↦ (−1)^{|x||y|} y ⊗ x`.
pub fn symmetry(x: &Arc<Complex>, y: &Arc<Complex>) -> GradedMap {
    let src = Arc::new(x.tensor(y));
    let tgt = Arc::new(y.tensor(x));
    let (n, k) = (x.dim(), y.dim());
    let mut m = Matrix::zeros(n * k, n * k);
    for i in 0..n {
        for j in 0..k {
            let s = sign(i64::from(x.deg[i]) * i64::from(y.deg[j]));
            m.set(j * n + i, i * k + j, s);
        }
    }
    GradedMap {
        src,
        tgt,
        degree: 0,
        m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn arc(c: Complex) -> Arc<Complex> {
        Arc::new(c)
    }

    #[test]
    fn acyclic_and_zero_differential() {
        let disk = Complex::disk(1);
        assert_eq!(disk.homology_ranks(0..=1), BTreeMap::from([(0, 0), (1, 0)]));
        let flat = Complex::sphere(0).direct_sum(&Complex::sphere(0)).direct_sum(&Complex::sphere(2));
        assert_eq!(flat.homology_ranks(0..=2), BTreeMap::from([(0, 2), (1, 0), (2, 1)]));
    }

    #[test]
    fn rejects_bad_boundaries() {
        assert!(Complex::new(vec![0, 0], Matrix::from_ints(2, 2, &[0, 1, 0, 0])).is_err());
        let dims = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let bd = BTreeMap::from([(1, Matrix::from_ints(1, 1, &[1])), (2, Matrix::from_ints(1, 1, &[1]))]);
        assert!(matches!(Complex::from_pieces(&dims, &bd), Err(Error::Law(_))));
        let bd = BTreeMap::from([(1, Matrix::from_ints(1, 2, &[1, 0]))]);
        assert!(matches!(Complex::from_pieces(&dims, &bd), Err(Error::Shape(_))));
    }

    #[test]
    fn identity_and_degrees() {
        let x = arc(Complex::disk(1).direct_sum(&Complex::sphere(1)));
        let one = GradedMap::identity(&x);
        assert!(one.differential().is_zero());
        let d = GradedMap::boundary_of(&x);
        assert_eq!(one.after(&d).unwrap(), d);
        let mut m = Matrix::zeros(3, 3);
        m.set(0, 1, q(1));
        let h = GradedMap::new(&x, &x, 1, m).unwrap();
        assert_eq!(h.after(&h).unwrap().degree(), 2);
    }

    #[test]
    fn leibniz_on_small_complexes() {
        let x = arc(Complex::disk(1));
        let y = arc(Complex::disk(1).direct_sum(&Complex::sphere(0)));
        let f = GradedMap::new(&x, &y, 0, Matrix::from_ints(3, 2, &[1, 0, 0, 1, 0, 2])).unwrap();
        let g = GradedMap::new(&y, &x, 1, Matrix::from_ints(2, 3, &[0, 1, 3, 0, 0, 0])).unwrap();
        let lhs = g.after(&f).unwrap().differential();
        let rhs = g.differential().after(&f).unwrap().plus(&g.after(&f.differential()).unwrap().scale(&q(-1))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_and_dimensions() {
        let x = Complex::disk(2);
        assert_eq!(x.tensor(&Complex::unit()), x);
        let a = Complex::sphere(0).direct_sum(&Complex::sphere(0));
        let t = a.tensor(&Complex::sphere(1));
        assert_eq!(t.support(), BTreeMap::from([(1, 2)]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn differential_squares_to_zero(seed in any::<u64>(), deg in -1i32..=2) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = arc(random::complex(&mut rng, 0..=2, 3));
            let y = arc(random::complex(&mut rng, 0..=2, 3));
            let f = random::graded_map(&mut rng, &x, &y, deg);
            prop_assert!(f.differential().differential().is_zero());
        }

        #[test]
        fn leibniz(seed in any::<u64>(), i in -1i32..=1, j in -1i32..=1) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = arc(random::complex(&mut rng, 0..=2, 2));
            let y = arc(random::complex(&mut rng, 0..=2, 2));
            let z = arc(random::complex(&mut rng, 0..=2, 2));
            let f = random::graded_map(&mut rng, &x, &y, i);
            let g = random::graded_map(&mut rng, &y, &z, j);
            let lhs = g.after(&f).unwrap().differential();
            let rhs = g.differential().after(&f).unwrap()
                .plus(&g.after(&f.differential()).unwrap().scale(&sign(i64::from(j)))).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tensor_is_a_complex(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random::complex(&mut rng, 0..=2, 2);
            let y = random::complex(&mut rng, 0..=2, 2);
            let t = x.tensor(&y);
            prop_assert!((t.boundary() * t.boundary()).is_zero());
            prop_assert_eq!(t.dim(), x.dim() * y.dim());
        }

        #[test]
        fn tensor_of_maps_is_functorial(seed in any::<u64>(), i in -1i32..=1, j in -1i32..=1) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xs: Vec<Arc<Complex>> = (0..4).map(|_| arc(random::complex(&mut rng, 0..=1, 2))).collect();
            let f = random::graded_map(&mut rng, &xs[0], &xs[1], i);
            let g = random::graded_map(&mut rng, &xs[2], &xs[3], j);
            // ∂(f ⊗ g) = ∂f ⊗ g + (−1)^{|f|} f ⊗ ∂g
            let lhs = f.tensor(&g).differential();
            let rhs = f.differential().tensor(&g).plus(&f.tensor(&g.differential()).scale(&sign(i64::from(i)))).unwrap();
            prop_assert_eq!(lhs, rhs);
            // (f' ⊗ g')(f ⊗ g) = (−1)^{|g'||f|} f'f ⊗ g'g
            let f2 = random::graded_map(&mut rng, &xs[1], &xs[0], j);
            let g2 = random::graded_map(&mut rng, &xs[3], &xs[2], i);
            let lhs = f2.tensor(&g2).after(&f.tensor(&g)).unwrap();
            let rhs = f2.after(&f).unwrap().tensor(&g2.after(&g).unwrap()).scale(&sign(i64::from(i * i)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn symmetry_is_an_involutive_chain_map(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = arc(random::complex(&mut rng, 0..=2, 2));
            let y = arc(random::complex(&mut rng, -1..=1, 2));
            let s = symmetry(&x, &y);
            prop_assert!(s.is_chain_map());
            let back = symmetry(&y, &x).after(&s).unwrap();
            prop_assert_eq!(back, GradedMap::identity(s.src()));
        }
    }
}
