//! The bar resolution `X_n = T^{n+1} M` as an augmented simplicial object
//! with extra degeneracy `s_{-1}`.

use std::sync::Arc;

use crate::dg::{Complex, GradedMap, Matrix};
use crate::report::Report;
use crate::Result;

use super::{DgAlgebra, DgModule};

pub struct BarComplex {
    top: usize,
    x: Vec<Arc<Complex>>,
    faces: Vec<Vec<GradedMap>>,
    degens: Vec<Vec<GradedMap>>,
}

fn idx(n: i64) -> usize {
    usize::try_from(n + 1).expect("level is at least -1")
}

impl BarComplex {
    /// Levels `X_{-1} = M, …, X_top`.
    pub fn new(alg: &DgAlgebra, module: &DgModule, top: usize) -> Result<Self> {
        let mut x = vec![module.m.clone()];
        for _ in 0..=top {
            let next = alg.t_obj(x.last().expect("nonempty"));
            x.push(next);
        }
        let lvl = |n: i64| x[idx(n)].clone();
        let mut faces = Vec::new();
        for n in 0..=top as i64 {
            let mut row = Vec::new();
            for j in 0..n {
                let f = alg.t_pow_map(j as usize, &alg.mu(&lvl(n - j - 2)));
                row.push(f.retype(&lvl(n), &lvl(n - 1))?);
            }
            row.push(alg.t_pow_map(n as usize, &module.action).retype(&lvl(n), &lvl(n - 1))?);
            faces.push(row);
        }
        let mut degens = Vec::new();
        for n in -1..top as i64 {
            let mut row = Vec::new();
            for j in -1..=n {
                let s = alg.t_pow_map((j + 1) as usize, &alg.eta(&lvl(n - j - 1)));
                row.push(s.retype(&lvl(n), &lvl(n + 1))?);
            }
            degens.push(row);
        }
        Ok(BarComplex { top, x, faces, degens })
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `X_n` for `-1 ≤ n ≤ top`.
    pub fn x(&self, n: i64) -> &Arc<Complex> {
        &self.x[idx(n)]
    }

    /// `d_j : X_n → X_{n-1}` for `0 ≤ j ≤ n ≤ top`.
    pub fn d(&self, n: i64, j: i64) -> &GradedMap {
        &self.faces[n as usize][j as usize]
    }

    /// `s_j : X_n → X_{n+1}` for `-1 ≤ j ≤ n < top`.
    pub fn s(&self, n: i64, j: i64) -> &GradedMap {
        &self.degens[idx(n)][idx(j)]
    }

    /// Simplicial identities, the augmentation, the extra degeneracy, and
    /// `T d_j = d_{j+1}`, `T s_j = s_{j+1}`.
    pub fn check(&self, alg: &DgAlgebra) -> Result<Report> {
        let mut r = Report::new();
        let top = self.top as i64;
        let mut family = |name: &str, n: i64, pairs: Vec<(GradedMap, GradedMap)>| {
            let bad = pairs.iter().find(|(a, b)| a != b);
            r.holds(name, &format!("X_{n}"), bad.is_none(), || {
                let (a, b) = bad.expect("failing pair");
                (a.to_string(), b.to_string())
            });
        };
        for n in 1..=top {
            let mut pairs = Vec::new();
            for j in 0..=n {
                for i in 0..j {
                    pairs.push((self.d(n - 1, i).after(self.d(n, j))?, self.d(n - 1, j - 1).after(self.d(n, i))?));
                }
            }
            family(if n == 1 { "augmentation" } else { "face-face" }, n, pairs);
        }
        for n in -1..=top - 2 {
            let mut pairs = Vec::new();
            for j in -1..=n {
                for i in -1..=j {
                    pairs.push((self.s(n + 1, i).after(self.s(n, j))?, self.s(n + 1, j + 1).after(self.s(n, i))?));
                }
            }
            family("degeneracy-degeneracy", n, pairs);
        }
        for n in -1..top {
            let mut pairs = Vec::new();
            for j in -1..=n {
                for i in 0..=n + 1 {
                    let lhs = self.d(n + 1, i).after(self.s(n, j))?;
                    let rhs = if i < j {
                        self.s(n - 1, j - 1).after(self.d(n, i))?
                    } else if i == j || i == j + 1 {
                        GradedMap::identity(self.x(n))
                    } else {
                        self.s(n - 1, j).after(self.d(n, i - 1))?
                    };
                    pairs.push((lhs, rhs));
                }
            }
            family("face-degeneracy", n, pairs);
        }
        for n in 0..top {
            let mut pairs = Vec::new();
            for j in 0..=n {
                pairs.push((alg.t_map(self.d(n, j)).retype(self.x(n + 1), self.x(n))?, self.d(n + 1, j + 1).clone()));
            }
            for j in -1..n {
                pairs.push((alg.t_map(self.s(n - 1, j)).retype(self.x(n), self.x(n + 1))?, self.s(n, j + 1).clone()));
            }
            family("shift", n, pairs);
        }
        Ok(r)
    }

    /// `dim X_n − dim Σ_{0≤j<n} im s_j` for `0 ≤ n ≤ top`.
    pub fn normalized_dims(&self) -> Vec<usize> {
        (0..=self.top as i64)
            .map(|n| {
                let dim = self.x(n).dim();
                if n == 0 {
                    return dim;
                }
                let mut images = Matrix::zeros(dim, 0);
                for j in 0..n {
                    let s = self.s(n - 1, j).matrix();
                    let mut wide = Matrix::zeros(dim, images.cols() + s.cols());
                    wide.add_block(0, 0, &images);
                    wide.add_block(0, images.cols(), s);
                    images = wide;
                }
                dim - images.rank()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::DgModule;

    #[test]
    fn identities_hold() {
        for alg in [DgAlgebra::dual_numbers(), DgAlgebra::exterior(1), DgAlgebra::rationals()] {
            let m = DgModule::regular(&alg);
            let bar = BarComplex::new(&alg, &m, 3).unwrap();
            let r = bar.check(&alg).unwrap();
            assert!(r.all_passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn normalized_dimensions() {
        let alg = DgAlgebra::dual_numbers();
        let m = DgModule::regular(&alg);
        let bar = BarComplex::new(&alg, &m, 4).unwrap();
        assert_eq!(bar.normalized_dims(), vec![4; 5]);
    }

    #[test]
    fn a_wrong_action_breaks_the_augmentation() {
        let alg = DgAlgebra::dual_numbers();
        let m = DgModule::regular(&alg);
        // x acting by the identity is not associative: x·(x·m) ≠ (x·x)·m.
        let bad = DgModule {
            action: GradedMap::new(m.action.src(), &m.m, 0, Matrix::from_ints(2, 4, &[1, 0, 1, 0, 0, 1, 0, 1])).unwrap(),
            ..m
        };
        let r = BarComplex::new(&alg, &bad, 2).unwrap().check(&alg).unwrap();
        assert!(r.failures().any(|c| c.name == "augmentation"));
    }
}
