//! The codescent object `QM = |X|` of the bar resolution, truncated at a
//! level `L`, built from normalised pieces `N_n = A ⊗ Ā^{⊗n} ⊗ M` placed in
//! total degree `+n`.

use std::sync::Arc;

use crate::dg::{sign, Complex, GradedMap, HomologicalLali, Matrix};
use crate::report::Report;
use crate::{Error, Result};

use super::{BarComplex, DgAlgebra, DgModule};

#[derive(Clone, Debug)]
pub struct Codescent {
    level: usize,
    base: DgModule,
    doms: Vec<Arc<Complex>>,
    pieces: Vec<Arc<Complex>>,
    offsets: Vec<usize>,
    /// `QM` with its free `A`-action `ā`.
    pub module: DgModule,
    pub p: GradedMap,
    pub q: GradedMap,
    pub xi: GradedMap,
}

fn pow(k: usize, e: usize) -> usize {
    k.pow(u32::try_from(e).expect("small exponent"))
}

/// `ι_{n-1} d_j` restricted to `N_n`.
fn face(alg: &DgAlgebra, m: &DgModule, n: usize, j: usize) -> Matrix {
    let (a, b, dm) = (alg.dim(), alg.abar.dim(), m.m.dim());
    if j == 0 {
        let inc = GradedMap::identity(&alg.a).tensor(&alg.incl);
        let local = alg.mult.matrix() * inc.matrix();
        local.kron(&Matrix::identity(pow(b, n - 1) * dm))
    } else if j < n {
        Matrix::identity(a * pow(b, j - 1))
            .kron(alg.mu_bar().matrix())
            .kron(&Matrix::identity(pow(b, n - j - 1) * dm))
    } else {
        Matrix::identity(a * pow(b, n - 1)).kron(m.act_bar(alg).matrix())
    }
}

impl Codescent {
    pub fn new(alg: &DgAlgebra, m: &DgModule, level: usize) -> Result<Self> {
        let doms: Vec<_> = (0..=level).map(|n| alg.bar_pow(n, &m.m)).collect();
        let pieces: Vec<_> = doms.iter().map(|d| alg.t_obj(d)).collect();
        let mut offsets = vec![0];
        for p in &pieces {
            offsets.push(offsets.last().expect("nonempty") + p.dim());
        }
        let total_dim = offsets[level + 1];
        let mut deg = Vec::with_capacity(total_dim);
        for (n, p) in pieces.iter().enumerate() {
            deg.extend(p.degrees().iter().map(|&k| k + n as i32));
        }
        let mut d = Matrix::zeros(total_dim, total_dim);
        for n in 0..=level {
            d.add_block(offsets[n], offsets[n], &pieces[n].boundary().scale(&sign(n as i64)));
            for j in (0..=n).filter(|_| n > 0) {
                d.add_block(offsets[n - 1], offsets[n], &face(alg, m, n, j).scale(&sign(j as i64)));
            }
        }
        let total = Arc::new(Complex::new(deg, d).map_err(|e| Error::Law(format!("codescent boundary: {e}")))?);

        let mut p = Matrix::zeros(m.m.dim(), total_dim);
        p.add_block(0, 0, m.action.matrix());
        let p = GradedMap::new(&total, &m.m, 0, p)?;
        let mut q = Matrix::zeros(total_dim, m.m.dim());
        q.add_block(0, 0, alg.eta(&m.m).matrix());
        let q = GradedMap::new(&m.m, &total, 0, q)?;
        let mut xi = Matrix::zeros(total_dim, total_dim);
        let shift = alg.unit.matrix().kron(alg.proj.matrix());
        for n in 0..level {
            xi.add_block(offsets[n + 1], offsets[n], &shift.kron(&Matrix::identity(doms[n].dim())));
        }
        let xi = GradedMap::new(&total, &total, 1, xi)?;

        let mut cod = Codescent {
            level,
            base: m.clone(),
            doms,
            pieces,
            offsets,
            module: DgModule {
                m: total.clone(),
                action: GradedMap::zero(&alg.t_obj(&total), &total, 0),
            },
            p,
            q,
            xi,
        };
        // ā · T ι_n = ι_n d_0.
        let mut act = cod.module.action.clone();
        for n in 0..=level {
            let term = cod.embed(n).after(&alg.mu(&cod.doms[n]).after(&alg.t_map(&cod.sect(n)))?)?;
            act = act.plus(&term)?;
        }
        cod.module.action = act;
        Ok(cod)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn total(&self) -> &Arc<Complex> {
        &self.module.m
    }

    pub fn base(&self) -> &DgModule {
        &self.base
    }

    /// `Ā^{⊗n} ⊗ M`, the generators of level `n`.
    pub fn generators(&self, n: usize) -> &Arc<Complex> {
        &self.doms[n]
    }

    /// `N_n = A ⊗ Ā^{⊗n} ⊗ M`.
    pub fn piece(&self, n: usize) -> &Arc<Complex> {
        &self.pieces[n]
    }

    /// Basis indices of level `n`.
    pub fn range(&self, n: usize) -> std::ops::Range<usize> {
        self.offsets[n]..self.offsets[n + 1]
    }

    /// The inclusion of `N_n`, of degree `n`.
    pub fn embed(&self, n: usize) -> GradedMap {
        let mut m = Matrix::zeros(self.total().dim(), self.pieces[n].dim());
        m.add_block(self.offsets[n], 0, &Matrix::identity(self.pieces[n].dim()));
        GradedMap::new(&self.pieces[n], self.total(), n as i32, m).expect("level shift")
    }

    /// The projection onto `N_n`, of degree `-n`.
    pub fn sect(&self, n: usize) -> GradedMap {
        let mut m = Matrix::zeros(self.pieces[n].dim(), self.total().dim());
        m.add_block(0, self.offsets[n], &Matrix::identity(self.pieces[n].dim()));
        GradedMap::new(self.total(), &self.pieces[n], -(n as i32), m).expect("level shift")
    }

    /// `ι_n : X_n → QM`, the projection `1 ⊗ π^{⊗n} ⊗ 1` followed by the
    /// inclusion of level `n`.
    pub fn iota(&self, alg: &DgAlgebra, n: usize) -> GradedMap {
        let mut proj = GradedMap::identity(&self.base.m);
        for _ in 0..n {
            proj = alg.proj.tensor(&proj);
        }
        self.embed(n).after(&alg.t_map(&proj)).expect("typed")
    }

    /// `(p, q, ξ)`; `ξ` vanishes on level `L`, where the contraction is
    /// exempt.
    pub fn lali(&self) -> HomologicalLali {
        HomologicalLali {
            g: self.p.clone(),
            q: self.q.clone(),
            xi: self.xi.clone(),
            exempt: self.range(self.level).collect(),
        }
    }

    /// `Q(φ)` for a strict module map `φ : M → M′`, levelwise `1 ⊗ 1 ⊗ φ`.
    pub fn map(&self, alg: &DgAlgebra, other: &Codescent, phi: &GradedMap) -> Result<GradedMap> {
        let mut m = Matrix::zeros(other.total().dim(), self.total().dim());
        for n in 0..=self.level.min(other.level) {
            let block = Matrix::identity(alg.dim() * pow(alg.abar.dim(), n)).kron(phi.matrix());
            m.add_block(other.offsets[n], self.offsets[n], &block);
        }
        GradedMap::new(self.total(), other.total(), 0, m)
    }

    /// Homology ranks of `QM` in the given degrees.
    pub fn homology_ranks(&self, degrees: impl IntoIterator<Item = i32>) -> Vec<usize> {
        self.total().homology_ranks(degrees).into_values().collect()
    }

    /// The defining equations of `ι_n`, `p`, `q`, `ξ` and `ā` against the full
    /// bar complex, and the module laws of `QM`.
    pub fn check(&self, alg: &DgAlgebra, bar: &BarComplex) -> Result<Report> {
        if bar.top() < self.level + 1 {
            return Err(Error::Invalid(format!("bar complex stops at level {}", bar.top())));
        }
        let mut r = Report::new();
        let total = self.total();
        let action = &self.module.action;
        for n in 0..=self.level {
            let at = format!("ι_{n}");
            let iota = self.iota(alg, n);
            let ni = n as i64;
            let mut degenerate = true;
            for j in 0..ni {
                degenerate &= iota.after(bar.s(ni - 1, j))?.is_zero();
            }
            r.holds("iota-kills-degeneracies", &at, degenerate, || ("ι_n s_j ≠ 0".into(), "0".into()));
            let rhs = if n == 0 {
                GradedMap::zero(bar.x(0), total, -1)
            } else {
                let prev = self.iota(alg, n - 1);
                let mut alt = GradedMap::zero(bar.x(ni), bar.x(ni - 1), 0);
                for j in 0..=ni {
                    alt = alt.plus(&bar.d(ni, j).scale(&sign(j)))?;
                }
                prev.after(&alt)?
            };
            r.equal("iota-boundary", &at, &iota.differential(), &rhs);
            let p_rhs = if n == 0 { bar.d(0, 0).clone() } else { GradedMap::zero(bar.x(ni), &self.base.m, ni as i32) };
            r.equal("p-iota", &at, &self.p.after(&iota)?, &p_rhs);
            if n < self.level {
                let rhs = self.iota(alg, n + 1).after(bar.s(ni, -1))?;
                r.equal("xi-iota", &at, &self.xi.after(&iota)?, &rhs);
            } else {
                r.exempt("xi-iota", &at);
            }
            let lhs = action.after(&alg.t_map(&iota))?;
            r.equal("action-iota", &at, &lhs, &iota.after(bar.d(ni + 1, 0))?);
        }
        r.equal("q-iota", "M", &self.q, &self.iota(alg, 0).after(bar.s(-1, -1))?);
        r.extend(self.module.laws(alg)?);
        let lhs = self.p.after(action)?;
        r.equal("p-strict", "QM", &lhs, &self.base.action.after(&alg.t_map(&self.p))?);
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::{is_lali_morphism, Complex};

    #[test]
    fn against_the_full_bar_complex() {
        for alg in [DgAlgebra::dual_numbers(), DgAlgebra::exterior(1), DgAlgebra::rationals()] {
            let m = DgModule::regular(&alg).direct_sum(&alg, &DgModule::trivial(&alg, &Complex::disk(1)).unwrap());
            let cod = Codescent::new(&alg, &m, 3).unwrap();
            let bar = BarComplex::new(&alg, &m, 4).unwrap();
            let r = cod.check(&alg, &bar).unwrap();
            assert!(r.all_passed(), "{}\n{}", alg.name, r.to_text());
            let l = cod.lali().validate("bar").unwrap();
            assert!(l.all_passed(), "{}", l.to_text());
        }
    }

    #[test]
    fn resolution_of_the_trivial_module() {
        let alg = DgAlgebra::dual_numbers();
        let m = DgModule::trivial(&alg, &Complex::unit()).unwrap();
        let cod = Codescent::new(&alg, &m, 5).unwrap();
        assert_eq!(cod.homology_ranks(0..=4), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn functorial_in_strict_maps() {
        let alg = DgAlgebra::exterior(1);
        let m = DgModule::regular(&alg);
        let n = DgModule::trivial(&alg, &Complex::unit()).unwrap();
        let eps = alg.augmentation().unwrap();
        let phi = GradedMap::new(&m.m, &n.m, 0, eps.matrix().clone()).unwrap();
        assert!(DgModule::is_strict(&alg, &m, &n, &phi).unwrap());
        let (qm, qn) = (Codescent::new(&alg, &m, 3).unwrap(), Codescent::new(&alg, &n, 3).unwrap());
        let u = qm.map(&alg, &qn, &phi).unwrap();
        let r = is_lali_morphism(&qm.lali(), &qn.lali(), &u, &phi, "Q(ε)").unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert!(DgModule::is_strict(&alg, &qm.module, &qn.module, &u).unwrap());
        assert!(u.is_chain_map());
    }
}
