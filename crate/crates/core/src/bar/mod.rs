//! The dg monad `T = A ⊗ (-)` for a unital dg-algebra `A`, its bar
//! resolution, and homotopy-coherent maps of `A`-modules.
//!
//! `Ā` is a complement of the unit in `A`, taken among basis vectors; `π` and
//! `incl` are the projection along the unit and the inclusion. Normalised
//! pieces `A ⊗ Ā^{⊗n} ⊗ M` and `Ā^{⊗n} ⊗ M` are right-nested tensor
//! products, so their Kronecker bases agree with those of `T^{n+1} M`.

mod codescent;
pub mod random;
mod simplicial;
mod weak;

use std::sync::Arc;

use num_traits::Zero;

use crate::dg::{q, Complex, GradedMap, Matrix};
use crate::report::Report;
use crate::{Error, Result};

pub use codescent::Codescent;
pub use simplicial::BarComplex;
pub use weak::{
    free_ulali_factor, lift_ulali, strict_to_weak, strictification, weak_laws, weak_to_strict, Factorisation, WeakHom, WeakLali,
};

#[derive(Clone, Debug, PartialEq)]
pub struct DgAlgebra {
    pub name: String,
    pub a: Arc<Complex>,
    /// `u : I → A`.
    pub unit: GradedMap,
    /// `m : A ⊗ A → A`.
    pub mult: GradedMap,
    pub abar: Arc<Complex>,
    pub incl: GradedMap,
    pub proj: GradedMap,
}

fn arc(c: Complex) -> Arc<Complex> {
    Arc::new(c)
}

impl DgAlgebra {
    /// Validates the unit and associativity laws and splits off the unit.
    pub fn new(name: &str, a: Complex, unit: Matrix, mult: Matrix) -> Result<Self> {
        let a = arc(a);
        let i = arc(Complex::unit());
        let unit = GradedMap::new(&i, &a, 0, unit)?;
        let aa = arc(a.tensor(&a));
        let mult = GradedMap::new(&aa, &a, 0, mult)?;
        let law = |what: &str, ok: bool| if ok { Ok(()) } else { Err(Error::Law(format!("algebra {name}: {what}"))) };
        law("unit is not a chain map", unit.is_chain_map())?;
        law("multiplication is not a chain map", mult.is_chain_map())?;
        let one = GradedMap::identity(&a);
        let left = mult.after(&unit.tensor(&one).retype(&a, &aa)?)?;
        let right = mult.after(&one.tensor(&unit).retype(&a, &aa)?)?;
        law("left unit law fails", left == one)?;
        law("right unit law fails", right == one)?;
        let aaa = arc(a.tensor(&aa));
        let assoc_l = mult.after(&mult.tensor(&one).retype(&aaa, &aa)?)?;
        let assoc_r = mult.after(&one.tensor(&mult))?;
        law("associativity fails", assoc_l == assoc_r)?;

        // A = span(u) ⊕ span(e_j : j ∉ pivot of u).
        let u = unit.matrix().clone();
        let comp = u.transpose().complement_basis();
        let n = a.dim();
        let mut basis = Matrix::zeros(n, n);
        basis.add_block(0, 0, &u);
        for (k, &j) in comp.iter().enumerate() {
            basis.set(j, k + 1, q(1));
        }
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::Law(format!("algebra {name}: unit is zero")))?;
        let all: Vec<usize> = (0..n).collect();
        let rest: Vec<usize> = (1..n).collect();
        let proj_m = inv.select(&rest, &all);
        let incl_m = Matrix::identity(n).select(&all, &comp);
        let deg: Vec<i32> = comp.iter().map(|&j| a.degrees()[j]).collect();
        let bar_d = &(&proj_m * a.boundary()) * &incl_m;
        let abar = arc(Complex::new(deg, bar_d)?);
        let proj = GradedMap::new(&a, &abar, 0, proj_m)?;
        let incl = GradedMap::new(&abar, &a, 0, incl_m)?;
        law("unit is not a cycle", proj.is_chain_map())?;
        Ok(DgAlgebra {
            name: name.to_string(),
            a,
            unit,
            mult,
            abar,
            incl,
            proj,
        })
    }

    /// `Q`.
    pub fn rationals() -> Self {
        Self::new("rationals", Complex::unit(), Matrix::from_ints(1, 1, &[1]), Matrix::from_ints(1, 1, &[1]))
            .expect("Q is an algebra")
    }

    /// `Q[x]/(x²)` with `x` in degree 0, basis `{1, x}`.
    pub fn dual_numbers() -> Self {
        Self::exterior_like("dual_numbers", 0)
    }

    /// The exterior algebra on one generator `e` of the given degree, basis
    /// `{1, e}`.
    pub fn exterior(gen_degree: i32) -> Self {
        Self::exterior_like(&format!("exterior(deg {gen_degree})"), gen_degree)
    }

    fn exterior_like(name: &str, d: i32) -> Self {
        let a = Complex::sphere(0).direct_sum(&Complex::sphere(d));
        // 1·1 = 1, 1·e = e, e·1 = e, e·e = 0.
        let mult = Matrix::from_ints(2, 4, &[1, 0, 0, 0, 0, 1, 1, 0]);
        Self::new(name, a, Matrix::from_ints(2, 1, &[1, 0]), mult).expect("square-zero extensions are algebras")
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn t_obj(&self, x: &Arc<Complex>) -> Arc<Complex> {
        arc(self.a.tensor(x))
    }

    /// `Tf = 1_A ⊗ f`.
    pub fn t_map(&self, f: &GradedMap) -> GradedMap {
        GradedMap::identity(&self.a).tensor(f)
    }

    pub fn t_pow_map(&self, k: usize, f: &GradedMap) -> GradedMap {
        (0..k).fold(f.clone(), |g, _| self.t_map(&g))
    }

    /// `η_X = u ⊗ 1 : X → A ⊗ X`.
    pub fn eta(&self, x: &Arc<Complex>) -> GradedMap {
        let m = self.unit.tensor(&GradedMap::identity(x));
        GradedMap::new(x, &self.t_obj(x), 0, m.matrix().clone()).expect("unit has degree 0")
    }

    /// `μ_X = m ⊗ 1 : A ⊗ A ⊗ X → A ⊗ X`.
    pub fn mu(&self, x: &Arc<Complex>) -> GradedMap {
        let m = self.mult.tensor(&GradedMap::identity(x));
        let src = self.t_obj(&self.t_obj(x));
        GradedMap::new(&src, &self.t_obj(x), 0, m.matrix().clone()).expect("multiplication has degree 0")
    }

    /// `π · m · (incl ⊗ incl) : Ā ⊗ Ā → Ā`.
    pub fn mu_bar(&self) -> GradedMap {
        let ii = self.incl.tensor(&self.incl);
        self.proj.after(&self.mult.after(&ii).expect("typed")).expect("typed")
    }

    /// `Ā ⊗ X`.
    pub fn bar_obj(&self, x: &Arc<Complex>) -> Arc<Complex> {
        arc(self.abar.tensor(x))
    }

    /// `Ā^{⊗n} ⊗ x`, right-nested.
    pub fn bar_pow(&self, n: usize, x: &Arc<Complex>) -> Arc<Complex> {
        (0..n).fold(x.clone(), |y, _| self.bar_obj(&y))
    }

    /// `A → Q` sending the unit to 1 and `Ā` to 0, when that is a map of
    /// dg-algebras.
    pub fn augmentation(&self) -> Result<GradedMap> {
        let n = self.dim();
        let i = arc(Complex::unit());
        let row = {
            let mut m = Matrix::zeros(1, n);
            // The unit coordinate is what π discards.
            let rest = &Matrix::identity(n) - &(self.incl.matrix() * self.proj.matrix());
            let piv = (0..n).find(|&j| !self.unit.matrix().get(j, 0).is_zero()).expect("unit is non-zero");
            for j in 0..n {
                m.set(0, j, rest.get(piv, j) / self.unit.matrix().get(piv, 0));
            }
            m
        };
        let eps = GradedMap::new(&self.a, &i, 0, row)
            .map_err(|_| Error::Law(format!("algebra {}: augmentation is not homogeneous", self.name)))?;
        let lhs = eps.after(&self.mult)?;
        if !eps.is_chain_map() || lhs.matrix() != eps.tensor(&eps).matrix() {
            return Err(Error::Law(format!("algebra {} has no augmentation killing Ā", self.name)));
        }
        Ok(eps)
    }
}

/// A left dg-module `(M, a : A ⊗ M → M)`, that is, a `T`-algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct DgModule {
    pub m: Arc<Complex>,
    pub action: GradedMap,
}

impl DgModule {
    pub fn new(alg: &DgAlgebra, m: Arc<Complex>, action: Matrix) -> Result<Self> {
        let action = GradedMap::new(&alg.t_obj(&m), &m, 0, action)?;
        let module = DgModule { m, action };
        let r = module.laws(alg)?;
        if let Some(c) = r.failures().next() {
            return Err(Error::Law(format!("module over {}: {} fails", alg.name, c.name)));
        }
        Ok(module)
    }

    pub fn laws(&self, alg: &DgAlgebra) -> Result<Report> {
        let mut r = Report::new();
        let at = format!("module of dim {}", self.m.dim());
        let a = &self.action;
        r.holds("action-chain-map", &at, a.is_chain_map(), || (a.differential().to_string(), "0".into()));
        r.equal("action-unit", &at, &a.after(&alg.eta(&self.m))?, &GradedMap::identity(&self.m));
        let lhs = a.after(&alg.mu(&self.m))?;
        let rhs = a.after(&alg.t_map(a))?;
        r.equal("action-associative", &at, &lhs, &rhs);
        Ok(r)
    }

    /// `A ⊗ V` with action `m ⊗ 1`.
    pub fn free(alg: &DgAlgebra, v: &Complex) -> Self {
        let v = arc(v.clone());
        DgModule {
            m: alg.t_obj(&v),
            action: alg.mu(&v),
        }
    }

    /// `A` acting on itself.
    pub fn regular(alg: &DgAlgebra) -> Self {
        let free = Self::free(alg, &Complex::unit());
        let m = alg.a.clone();
        let action = GradedMap::new(&alg.t_obj(&m), &m, 0, free.action.matrix().clone()).expect("A ⊗ I is A");
        DgModule { m, action }
    }

    /// `V` with `A` acting through the augmentation.
    pub fn trivial(alg: &DgAlgebra, v: &Complex) -> Result<Self> {
        let eps = alg.augmentation()?;
        let v = arc(v.clone());
        let act = eps.tensor(&GradedMap::identity(&v));
        Ok(DgModule {
            action: GradedMap::new(&alg.t_obj(&v), &v, 0, act.matrix().clone())?,
            m: v,
        })
    }

    pub fn direct_sum(&self, alg: &DgAlgebra, other: &DgModule) -> Self {
        let m = arc(self.m.direct_sum(&other.m));
        let (k, l) = (self.m.dim(), other.m.dim());
        let n = alg.dim();
        let mut act = Matrix::zeros(k + l, n * (k + l));
        for i in 0..n {
            for x in 0..k {
                for y in 0..k {
                    act.set(y, i * (k + l) + x, self.action.matrix().get(y, i * k + x).clone());
                }
            }
            for x in 0..l {
                for y in 0..l {
                    act.set(k + y, i * (k + l) + k + x, other.action.matrix().get(y, i * l + x).clone());
                }
            }
        }
        DgModule {
            action: GradedMap::new(&alg.t_obj(&m), &m, 0, act).expect("blockwise action"),
            m,
        }
    }

    /// The module transported along the degree-preserving isomorphism `p`.
    pub fn conjugate(&self, alg: &DgAlgebra, p: &Matrix) -> Result<Self> {
        let inv = p.inverse().ok_or_else(|| Error::Invalid("singular conjugation".into()))?;
        let m = arc(self.m.conjugate(p)?);
        let act = &(p * self.action.matrix()) * &Matrix::identity(alg.dim()).kron(&inv);
        Ok(DgModule {
            action: GradedMap::new(&alg.t_obj(&m), &m, 0, act)?,
            m,
        })
    }

    /// `a · (incl ⊗ 1) : Ā ⊗ M → M`.
    pub fn act_bar(&self, alg: &DgAlgebra) -> GradedMap {
        let lhs = alg.incl.tensor(&GradedMap::identity(&self.m));
        let lhs = GradedMap::new(&alg.bar_obj(&self.m), &alg.t_obj(&self.m), 0, lhs.matrix().clone()).expect("typed");
        self.action.after(&lhs).expect("typed")
    }

    /// Is `f : M → N` a strict module map: `f · a = b · Tf`?
    pub fn is_strict(alg: &DgAlgebra, src: &DgModule, tgt: &DgModule, f: &GradedMap) -> Result<bool> {
        Ok(f.after(&src.action)? == tgt.action.after(&alg.t_map(f))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_algebras() {
        for alg in [DgAlgebra::rationals(), DgAlgebra::dual_numbers(), DgAlgebra::exterior(1), DgAlgebra::exterior(2)] {
            assert_eq!(alg.abar.dim(), alg.dim() - 1);
            assert!(alg.augmentation().is_ok());
            assert!(DgModule::regular(&alg).laws(&alg).unwrap().all_passed());
            let v = Complex::disk(1).direct_sum(&Complex::sphere(0));
            assert!(DgModule::free(&alg, &v).laws(&alg).unwrap().all_passed());
            assert!(DgModule::trivial(&alg, &v).unwrap().laws(&alg).unwrap().all_passed());
        }
    }

    #[test]
    fn rejects_non_associative() {
        // x·x = x on {1, x} but x·1 = 0.
        let a = Complex::sphere(0).direct_sum(&Complex::sphere(0));
        let mult = Matrix::from_ints(2, 4, &[1, 0, 0, 0, 0, 1, 0, 1]);
        assert!(matches!(DgAlgebra::new("bad", a, Matrix::from_ints(2, 1, &[1, 0]), mult), Err(Error::Law(_))));
    }

    #[test]
    fn direct_sum_and_conjugate_are_modules() {
        let alg = DgAlgebra::exterior(1);
        let m = DgModule::regular(&alg).direct_sum(&alg, &DgModule::trivial(&alg, &Complex::sphere(1)).unwrap());
        assert!(m.laws(&alg).unwrap().all_passed());
        let p = Matrix::from_ints(3, 3, &[1, 0, 0, 0, 1, 2, 0, 0, 1]);
        let c = m.conjugate(&alg, &p).unwrap();
        assert!(c.laws(&alg).unwrap().all_passed());
    }

    #[test]
    fn dual_number_products() {
        let alg = DgAlgebra::dual_numbers();
        assert_eq!(alg.mu_bar().matrix(), &Matrix::zeros(1, 1));
        let act = DgModule::regular(&alg).act_bar(&alg);
        assert_eq!(act.matrix(), &Matrix::from_ints(2, 2, &[0, 0, 1, 0]));
    }
}
