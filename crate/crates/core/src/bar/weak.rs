//! Weak maps `f : M ⇝_i N`: families `f_n : T^n M → N` of degree `n + i`
//! vanishing on the degenerate part, stored on the generators
//! `Ā^{⊗n} ⊗ M`.

use std::fmt;
use std::sync::Arc;

use crate::dg::{q, sign, Complex, GradedMap, HomologicalLali, Matrix};
use crate::report::Report;
use crate::{Error, Result};

use super::{Codescent, DgAlgebra, DgModule};

#[derive(Clone, Debug, PartialEq)]
pub struct WeakHom {
    pub src: DgModule,
    pub tgt: DgModule,
    pub degree: i32,
    /// `f_n : Ā^{⊗n} ⊗ M → N` of degree `n + degree`, for `n ≤ L`.
    pub comps: Vec<GradedMap>,
}

impl fmt::Display for WeakHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weak(deg {})[", self.degree)?;
        for (n, c) in self.comps.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "f_{n} = {c}")?;
        }
        write!(f, "]")
    }
}

fn bar_identity(alg: &DgAlgebra, p: usize) -> GradedMap {
    GradedMap::identity(&alg.bar_pow(p, &Arc::new(Complex::unit())))
}

fn same_module(a: &DgModule, b: &DgModule, what: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::NotComposable(format!("weak maps: {what}")))
    }
}

impl WeakHom {
    pub fn new(alg: &DgAlgebra, src: &DgModule, tgt: &DgModule, degree: i32, comps: Vec<GradedMap>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::Invalid("a weak map needs a component in level 0".into()));
        }
        for (n, c) in comps.iter().enumerate() {
            if **c.src() != *alg.bar_pow(n, &src.m) || c.tgt() != &tgt.m || c.degree() != n as i32 + degree {
                return Err(Error::Shape(format!("component {n} has the wrong type")));
            }
        }
        Ok(WeakHom {
            src: src.clone(),
            tgt: tgt.clone(),
            degree,
            comps,
        })
    }

    pub fn zero(alg: &DgAlgebra, src: &DgModule, tgt: &DgModule, degree: i32, level: usize) -> Self {
        let comps = (0..=level)
            .map(|n| GradedMap::zero(&alg.bar_pow(n, &src.m), &tgt.m, n as i32 + degree))
            .collect();
        WeakHom {
            src: src.clone(),
            tgt: tgt.clone(),
            degree,
            comps,
        }
    }

    /// `J f = (f, 0, 0, …)`.
    pub fn strict(alg: &DgAlgebra, src: &DgModule, tgt: &DgModule, f: &GradedMap, level: usize) -> Result<Self> {
        let mut w = Self::zero(alg, src, tgt, f.degree(), level);
        w.comps[0] = f.retype(&src.m, &tgt.m)?;
        Ok(w)
    }

    pub fn identity(alg: &DgAlgebra, m: &DgModule, level: usize) -> Self {
        Self::strict(alg, m, m, &GradedMap::identity(&m.m), level).expect("identity is typed")
    }

    pub fn level(&self) -> usize {
        self.comps.len() - 1
    }

    /// `U f = f_0`.
    pub fn forget(&self) -> &GradedMap {
        &self.comps[0]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(GradedMap::is_zero)
    }

    fn zip(&self, o: &WeakHom, op: impl Fn(&GradedMap, &GradedMap) -> Result<GradedMap>) -> Result<WeakHom> {
        if self.level() != o.level() || self.degree != o.degree {
            return Err(Error::Shape("weak maps are not parallel".into()));
        }
        same_module(&self.src, &o.src, "sources differ")?;
        same_module(&self.tgt, &o.tgt, "targets differ")?;
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| op(a, b)).collect::<Result<_>>()?;
        Ok(WeakHom { comps, ..self.clone() })
    }

    pub fn plus(&self, o: &WeakHom) -> Result<WeakHom> {
        self.zip(o, GradedMap::plus)
    }

    pub fn minus(&self, o: &WeakHom) -> Result<WeakHom> {
        self.zip(o, GradedMap::minus)
    }

    pub fn scale(&self, s: &crate::dg::Q) -> WeakHom {
        WeakHom {
            comps: self.comps.iter().map(|c| c.scale(s)).collect(),
            ..self.clone()
        }
    }

    /// `(g f)_n = Σ_{p+q=n} (−1)^{p·|f|} g_p · T^p f_q`.
    pub fn compose(alg: &DgAlgebra, g: &WeakHom, f: &WeakHom) -> Result<WeakHom> {
        same_module(&f.tgt, &g.src, "target is not source")?;
        let level = f.level().min(g.level());
        let mut comps = Vec::with_capacity(level + 1);
        for n in 0..=level {
            let mut c = GradedMap::zero(&alg.bar_pow(n, &f.src.m), &g.tgt.m, n as i32 + f.degree + g.degree);
            for p in 0..=n {
                let shifted = bar_identity(alg, p).tensor(&f.comps[n - p]);
                let term = g.comps[p].after(&shifted)?.scale(&sign(p as i64 * i64::from(f.degree)));
                c = c.plus(&GradedMap::new(c.src(), c.tgt(), c.degree(), term.matrix().clone())?)?;
            }
            comps.push(c);
        }
        Ok(WeakHom {
            src: f.src.clone(),
            tgt: g.tgt.clone(),
            degree: f.degree + g.degree,
            comps,
        })
    }

    /// `(∂f)_n = ∂(f_n) − (−1)^i [b·T f_{n−1} + f_{n−1} Σ_{j=1}^{n−1} (−1)^j T^{j−1} μ
    /// + (−1)^n f_{n−1} · T^{n−1} a]`.
    pub fn differential(&self, alg: &DgAlgebra) -> Result<WeakHom> {
        let (i, src, tgt) = (self.degree, &self.src, &self.tgt);
        let b_bar = tgt.act_bar(alg);
        let a_bar = src.act_bar(alg);
        let mu_bar = alg.mu_bar();
        let (nb, dm) = (alg.abar.dim(), src.m.dim());
        let mut comps = vec![self.comps[0].differential()];
        for n in 1..=self.level() {
            let dom = alg.bar_pow(n, &src.m);
            let prev = &self.comps[n - 1];
            let deg = prev.degree();
            let mut inner = b_bar.after(&GradedMap::identity(&alg.abar).tensor(prev))?.matrix().clone();
            for j in 1..n {
                let face = Matrix::identity(nb.pow(j as u32 - 1))
                    .kron(mu_bar.matrix())
                    .kron(&Matrix::identity(nb.pow((n - j - 1) as u32) * dm));
                inner = &inner + &(prev.matrix() * &face).scale(&sign(j as i64));
            }
            let last = Matrix::identity(nb.pow(n as u32 - 1)).kron(a_bar.matrix());
            inner = &inner + &(prev.matrix() * &last).scale(&sign(n as i64));
            let inner = GradedMap::new(&dom, &tgt.m, deg, inner)?;
            let own = self.comps[n].differential();
            comps.push(own.minus(&inner.scale(&sign(i64::from(i))))?);
        }
        Ok(WeakHom {
            src: src.clone(),
            tgt: tgt.clone(),
            degree: i - 1,
            comps,
        })
    }
}

/// The weak dg-category laws on a composable triple `f, g, h`.
pub fn weak_laws(alg: &DgAlgebra, f: &WeakHom, g: &WeakHom, h: &WeakHom, at: &str) -> Result<Report> {
    let mut r = Report::new();
    for (name, w) in [("f", f), ("g", g), ("h", h)] {
        let dd = w.differential(alg)?.differential(alg)?;
        r.holds("weak-d-squared", format!("{at} {name}"), dd.is_zero(), || (dd.to_string(), "0".into()));
    }
    for (name, (y, x)) in [("gf", (g, f)), ("hg", (h, g))] {
        let lhs = WeakHom::compose(alg, y, x)?.differential(alg)?;
        let rhs = WeakHom::compose(alg, &y.differential(alg)?, x)?
            .plus(&WeakHom::compose(alg, y, &x.differential(alg)?)?.scale(&sign(i64::from(y.degree))))?;
        r.equal("weak-leibniz", format!("{at} {name}"), &lhs, &rhs);
        let u = WeakHom::compose(alg, y, x)?;
        r.equal("forget-composition", format!("{at} {name}"), u.forget(), &y.forget().after(x.forget())?);
    }
    let lhs = WeakHom::compose(alg, &WeakHom::compose(alg, h, g)?, f)?;
    let rhs = WeakHom::compose(alg, h, &WeakHom::compose(alg, g, f)?)?;
    r.equal("weak-associative", at, &lhs, &rhs);
    let level = f.level();
    let left = WeakHom::compose(alg, &WeakHom::identity(alg, &f.tgt, level), f)?;
    let right = WeakHom::compose(alg, f, &WeakHom::identity(alg, &f.src, level))?;
    r.equal("weak-left-unital", at, &left, f);
    r.equal("weak-right-unital", at, &right, f);
    r.equal("forget-differential", at, f.differential(alg)?.forget(), &f.forget().differential());
    Ok(r)
}

/// A weak lali lifted from a lali of underlying complexes.
#[derive(Clone, Debug)]
pub struct WeakLali {
    pub g: WeakHom,
    pub f: WeakHom,
    pub eps: WeakHom,
    pub report: Report,
}

/// Lifts a lali `(g, f₀, ε₀) : N → M` whose `g` is a strict module map to a
/// lali of weak maps, with `f_n = ε₀ b T f_{n−1}` and
/// `ε_n = −ε₀ b T ε_{n−1}`.
pub fn lift_ulali(alg: &DgAlgebra, m: &DgModule, n: &DgModule, ulali: &HomologicalLali, level: usize) -> Result<WeakLali> {
    let v = ulali.validate("input")?;
    if let Some(c) = v.failures().next() {
        return Err(Error::Law(format!("input lali: {} fails", c.name)));
    }
    let g = ulali.g.retype(&n.m, &m.m)?;
    if !DgModule::is_strict(alg, n, m, &g)? {
        return Err(Error::Law("input lali: g is not a strict module map".into()));
    }
    let (f0, e0) = (ulali.q.retype(&m.m, &n.m)?, ulali.xi.retype(&n.m, &n.m)?);
    let b_bar = n.act_bar(alg);
    let one = GradedMap::identity(&alg.abar);
    let mut fs = vec![f0.clone()];
    let mut es = vec![e0.clone()];
    for k in 1..=level {
        let fk = e0.after(&b_bar.after(&one.tensor(&fs[k - 1]))?)?;
        let ek = e0.after(&b_bar.after(&one.tensor(&es[k - 1]))?)?.scale(&q(-1));
        fs.push(GradedMap::new(&alg.bar_pow(k, &m.m), &n.m, fk.degree(), fk.matrix().clone())?);
        es.push(GradedMap::new(&alg.bar_pow(k, &n.m), &n.m, ek.degree(), ek.matrix().clone())?);
    }
    let f = WeakHom::new(alg, m, n, 0, fs)?;
    let eps = WeakHom::new(alg, n, n, 1, es)?;
    let gw = WeakHom::strict(alg, n, m, &g, level)?;

    let mut r = Report::new();
    let at = format!("{} L={level}", alg.name);
    r.equal("lift-forget-f", &at, f.forget(), &f0);
    r.equal("lift-forget-eps", &at, eps.forget(), &e0);
    r.equal("lift-section", &at, &WeakHom::compose(alg, &gw, &f)?, &WeakHom::identity(alg, m, level));
    let rhs = WeakHom::identity(alg, n, level).minus(&WeakHom::compose(alg, &f, &gw)?)?;
    r.equal("lift-contraction", &at, &eps.differential(alg)?, &rhs);
    for (name, w) in [
        ("lift-g-eps", WeakHom::compose(alg, &gw, &eps)?),
        ("lift-eps-f", WeakHom::compose(alg, &eps, &f)?),
        ("lift-eps-eps", WeakHom::compose(alg, &eps, &eps)?),
    ] {
        r.holds(name, &at, w.is_zero(), || (w.to_string(), "0".into()));
    }
    let side = (0..=level).all(|k| {
        e0.after(&f.comps[k]).map(|x| x.is_zero()).unwrap_or(false)
            && e0.after(&eps.comps[k]).map(|x| x.is_zero()).unwrap_or(false)
    });
    r.holds("lift-side-conditions", &at, side, || ("ε₀ f_k or ε₀ ε_k ≠ 0".into(), "0".into()));
    Ok(WeakLali { g: gw, f, eps, report: r })
}

/// The strict module map `h : QM → N` out of the free lali, with its checks.
#[derive(Clone, Debug)]
pub struct Factorisation {
    pub h: GradedMap,
    pub report: Report,
}

/// Given a lali `(g, f, ε) : N → M` of underlying complexes with `g` a
/// strict module map, the strict map `h : QM → N` with `h_0 = b·Tf` and
/// `h_{n+1} = b·T(ε h_n)`.
pub fn free_ulali_factor(alg: &DgAlgebra, cod: &Codescent, n: &DgModule, ulali: &HomologicalLali) -> Result<Factorisation> {
    let m = cod.base();
    let g = ulali.g.retype(&n.m, &m.m)?;
    let f = ulali.q.retype(&m.m, &n.m)?;
    let eps = ulali.xi.retype(&n.m, &n.m)?;
    let v = ulali.validate("input")?;
    if let Some(c) = v.failures().next() {
        return Err(Error::Law(format!("input lali: {} fails", c.name)));
    }
    if !DgModule::is_strict(alg, n, m, &g)? {
        return Err(Error::Law("input lali: g is not a strict module map".into()));
    }
    let level = cod.level();
    let b = &n.action;
    let restrict = |k: usize| alg.incl.tensor(&GradedMap::identity(cod.generators(k)));
    let mut blocks = vec![b.after(&alg.t_map(&f))?];
    for k in 0..level {
        let gen = eps.after(&blocks[k].after(&restrict(k))?)?;
        blocks.push(b.after(&alg.t_map(&gen))?);
    }
    let total = cod.total();
    let mut h = GradedMap::zero(total, &n.m, 0);
    for (k, blk) in blocks.iter().enumerate() {
        let term = blk.after(&cod.sect(k))?;
        h = h.plus(&GradedMap::new(total, &n.m, 0, term.matrix().clone())?)?;
    }

    let mut r = Report::new();
    let at = format!("{} L={level}", alg.name);
    r.holds("factor-chain-map", &at, h.is_chain_map(), || (h.differential().to_string(), "0".into()));
    r.equal("factor-strict", &at, &h.after(&cod.module.action)?, &b.after(&alg.t_map(&h))?);
    r.equal("factor-g", &at, &g.after(&h)?, &cod.p);
    r.equal("factor-f", &at, &h.after(&cod.q)?, &f);
    let keep: Vec<usize> = (0..total.dim()).filter(|j| !cod.range(level).contains(j)).collect();
    let rows: Vec<usize> = (0..n.m.dim()).collect();
    let lhs = eps.after(&h)?.matrix().select(&rows, &keep);
    let rhs = h.after(&cod.xi)?.matrix().select(&rows, &keep);
    r.equal("factor-eps", &at, &lhs, &rhs);
    r.exempt("factor-eps", format!("{at} level {level}"));
    // A strict map out of a free module is fixed by its values on η, and
    // those are forced level by level.
    for k in 0..=level {
        let on_eta = h.after(&cod.embed(k))?.after(&alg.eta(cod.generators(k)))?;
        let forced = if k == 0 {
            f.clone()
        } else {
            eps.after(&h.after(&cod.embed(k - 1))?.after(&restrict(k - 1))?)?
        };
        let forced = GradedMap::new(on_eta.src(), &n.m, on_eta.degree(), forced.matrix().clone())?;
        let rederived = b.after(&alg.t_map(&forced))?;
        let actual = h.after(&cod.embed(k))?;
        let ok = on_eta == forced && rederived.matrix() == actual.matrix();
        r.holds("factor-unique", format!("{at} level {k}"), ok, || (actual.to_string(), rederived.to_string()));
    }
    Ok(Factorisation { h, report: r })
}

/// `f̄ : QM → N` with `f̄ ι_n = b · T g_n`.
pub fn weak_to_strict(alg: &DgAlgebra, cod: &Codescent, g: &WeakHom) -> Result<GradedMap> {
    same_module(&g.src, cod.base(), "source is not the resolved module")?;
    if g.level() < cod.level() {
        return Err(Error::Invalid(format!("weak map stops at level {}", g.level())));
    }
    let total = cod.total();
    let mut f = GradedMap::zero(total, &g.tgt.m, g.degree);
    for n in 0..=cod.level() {
        let term = g.tgt.action.after(&alg.t_map(&g.comps[n]))?.after(&cod.sect(n))?;
        f = f.plus(&GradedMap::new(total, &g.tgt.m, g.degree, term.matrix().clone())?)?;
    }
    Ok(f)
}

/// `f ∘ q̄` with `q̄_n = ι_n η`.
pub fn strict_to_weak(alg: &DgAlgebra, cod: &Codescent, f: &GradedMap, tgt: &DgModule) -> Result<WeakHom> {
    let comps = (0..=cod.level())
        .map(|n| {
            let c = f.after(&cod.embed(n))?.after(&alg.eta(cod.generators(n)))?;
            GradedMap::new(cod.generators(n), &tgt.m, c.degree(), c.matrix().clone())
        })
        .collect::<Result<_>>()?;
    WeakHom::new(alg, cod.base(), tgt, f.degree(), comps)
}

/// Both round trips of the strictification bijection and its compatibility
/// with differentials.
pub fn strictification(alg: &DgAlgebra, cod: &Codescent, g: &WeakHom, f: &GradedMap, at: &str) -> Result<Report> {
    let mut r = Report::new();
    let n = &g.tgt;
    let gbar = weak_to_strict(alg, cod, g)?;
    r.holds("weak-to-strict-is-strict", at, DgModule::is_strict(alg, &cod.module, n, &gbar)?, || {
        (gbar.to_string(), "a module map".into())
    });
    r.equal("weak-strict-weak", at, &strict_to_weak(alg, cod, &gbar, n)?, g);
    r.equal("strict-weak-strict", at, &weak_to_strict(alg, cod, &strict_to_weak(alg, cod, f, n)?)?, f);
    r.equal("strictify-differential", at, &gbar.differential(), &weak_to_strict(alg, cod, &g.differential(alg)?)?);
    let qbar = strict_to_weak(alg, cod, &GradedMap::identity(cod.total()), &cod.module)?;
    let dq = qbar.differential(alg)?;
    r.holds("qbar-closed", at, dq.is_zero(), || (dq.to_string(), "0".into()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::random;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn algebra(k: u8) -> DgAlgebra {
        match k % 3 {
            0 => DgAlgebra::rationals(),
            1 => DgAlgebra::dual_numbers(),
            _ => DgAlgebra::exterior(1),
        }
    }

    #[test]
    fn strict_maps_are_closed_exactly_when_strict() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let alg = DgAlgebra::dual_numbers();
        let m = DgModule::regular(&alg);
        let f = random::module_map(&mut rng, &alg, &m, &m, 0);
        assert!(DgModule::is_strict(&alg, &m, &m, &f).unwrap());
        let jf = WeakHom::strict(&alg, &m, &m, &f, 3).unwrap();
        let expected = WeakHom::strict(&alg, &m, &m, &f.differential(), 3).unwrap();
        assert_eq!(jf.differential(&alg).unwrap(), expected);
        // x ↦ 1, 1 ↦ 0 is a chain map but not A-linear.
        let g = GradedMap::new(&m.m, &m.m, 0, Matrix::from_ints(2, 2, &[0, 1, 0, 0])).unwrap();
        let jg = WeakHom::strict(&alg, &m, &m, &g, 2).unwrap();
        assert!(!jg.differential(&alg).unwrap().is_zero());
    }

    #[test]
    fn the_free_lali_factors_through_itself() {
        let alg = DgAlgebra::exterior(1);
        let m = DgModule::regular(&alg);
        let cod = Codescent::new(&alg, &m, 3).unwrap();
        let fac = free_ulali_factor(&alg, &cod, &cod.module, &cod.lali()).unwrap();
        assert_eq!(fac.h, GradedMap::identity(cod.total()));
        assert!(fac.report.all_passed(), "{}", fac.report.to_text());
    }

    #[test]
    fn lifting_and_factoring_random_lalis() {
        let mut higher = 0;
        for (k, seed) in [(1u8, 3u64), (2, 4), (1, 5), (2, 6)] {
            let alg = algebra(k);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random::module(&mut rng, &alg, 3);
            let (n, l) = random::ulali(&mut rng, &alg, &m);
            let lifted = lift_ulali(&alg, &m, &n, &l, 3).unwrap();
            assert!(lifted.report.all_passed(), "{}", lifted.report.to_text());
            higher += usize::from(!lifted.f.comps[1].is_zero());
            let cod = Codescent::new(&alg, &m, 3).unwrap();
            let fac = free_ulali_factor(&alg, &cod, &n, &l).unwrap();
            assert!(fac.report.all_passed(), "{}", fac.report.to_text());
        }
        assert!(higher >= 2, "only {higher} lifts have a non-zero f_1");
    }

    #[test]
    fn lift_rejects_non_strict_projection() {
        let alg = DgAlgebra::dual_numbers();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = DgModule::regular(&alg);
        let (n, mut l) = random::ulali(&mut rng, &alg, &m);
        let twist = GradedMap::new(&m.m, &m.m, 0, Matrix::from_ints(2, 2, &[1, 1, 0, 1])).unwrap();
        l.g = twist.after(&l.g).unwrap();
        l.q = l.q.after(&GradedMap::new(&m.m, &m.m, 0, Matrix::from_ints(2, 2, &[1, -1, 0, 1])).unwrap()).unwrap();
        assert!(matches!(lift_ulali(&alg, &m, &n, &l, 2), Err(Error::Law(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn weak_maps_form_a_dg_category(seed in any::<u64>(), k in 0u8..3, i in -1i32..=1, j in -1i32..=1) {
            let alg = algebra(k);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ms: Vec<_> = (0..4).map(|_| random::module(&mut rng, &alg, 3)).collect();
            let f = random::weak(&mut rng, &alg, &ms[0], &ms[1], i, 3);
            let g = random::weak(&mut rng, &alg, &ms[1], &ms[2], j, 3);
            let h = random::weak(&mut rng, &alg, &ms[2], &ms[3], 0, 3);
            let r = weak_laws(&alg, &f, &g, &h, "random").unwrap();
            prop_assert!(r.all_passed(), "{}", r.to_text());
        }

        #[test]
        fn strictification_is_bijective(seed in any::<u64>(), k in 0u8..3, i in -1i32..=1) {
            let alg = algebra(k);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random::module(&mut rng, &alg, 2);
            let n = random::module(&mut rng, &alg, 3);
            let cod = Codescent::new(&alg, &m, 3).unwrap();
            let g = random::weak(&mut rng, &alg, &m, &n, i, 3);
            let f = random::module_map(&mut rng, &alg, &cod.module, &n, i);
            let r = strictification(&alg, &cod, &g, &f, "random").unwrap();
            prop_assert!(r.all_passed(), "{}", r.to_text());
        }
    }
}
