//! `T`-split monos over finite sets, and sketches.

use super::{canonical_filler, Algebra, Awfs, Coalgebra, Factorisation, Square};
use crate::fincat::{Category, FinSet, FinSetCategory, Func, Monad};
use crate::report::Report;
use crate::{Error, Result};

/// `Ef = B × TA`, `λf = ⟨f, η_A⟩`, `ρf = π₁`, `E(h, k) = k × Th`.
#[derive(Debug, Clone)]
pub struct TSplitMonoAwfs<T> {
    pub t: T,
}

impl<T: Monad<FinSetCategory>> TSplitMonoAwfs<T> {
    pub fn new(t: T) -> Self {
        TSplitMonoAwfs { t }
    }
}

impl<T: Monad<FinSetCategory>> Awfs for TSplitMonoAwfs<T> {
    type C = FinSetCategory;

    fn category(&self) -> &FinSetCategory {
        &FinSetCategory
    }

    fn factor(&self, f: &Func) -> Result<Factorisation<FinSet, Func>> {
        let c = FinSetCategory;
        let ta = self.t.obj(&c, f.dom())?;
        let (mid, p1, _) = c.product(f.cod(), &ta);
        Ok(Factorisation {
            mid,
            left: c.pair(f, &self.t.unit(&c, f.dom())?)?,
            right: p1,
        })
    }

    fn e_map(&self, sq: &Square<Func>) -> Result<Func> {
        FinSetCategory.product_map(&sq.bottom, &self.t.arr(&FinSetCategory, &sq.top)?)
    }

    /// `⟨1, π₂⟩ : B × TA → (B × TA) × TA`.
    fn comult(&self, f: &Func) -> Result<Func> {
        let c = FinSetCategory;
        let ta = self.t.obj(&c, f.dom())?;
        let (ef, _, p2) = c.product(f.cod(), &ta);
        c.pair(&Func::identity(&ef), &p2)
    }

    /// `1 × (μ_A · Tπ₂) : B × T(B × TA) → B × TA`.
    fn mult(&self, f: &Func) -> Result<Func> {
        let c = FinSetCategory;
        let ta = self.t.obj(&c, f.dom())?;
        let (_, _, p2) = c.product(f.cod(), &ta);
        let inner = c.compose(&self.t.mult(&c, f.dom())?, &self.t.arr(&c, &p2)?)?;
        c.product_map(&Func::identity(f.cod()), &inner)
    }
}

/// `j : c → d` with a co-Kleisli retraction `k : d → Tc`, `k·j = η_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitMono {
    pub j: Func,
    pub k: Func,
}

impl SplitMono {
    pub fn check<T: Monad<FinSetCategory> + ?Sized>(&self, t: &T) -> Result<()> {
        let c = FinSetCategory;
        let eta = t.unit(&c, self.j.dom())?;
        if self.k.dom() != self.j.cod() || self.k.after(&self.j)? != eta {
            return Err(Error::Invalid(format!(
                "({}, {}) is not a split mono",
                self.j, self.k
            )));
        }
        Ok(())
    }

    /// The coalgebra `⟨1, k⟩ : d → d × Tc`.
    pub fn coalgebra(&self) -> Result<Coalgebra<Func>> {
        Ok(Coalgebra {
            arrow: self.j.clone(),
            s: FinSetCategory.pair(&Func::identity(self.j.cod()), &self.k)?,
        })
    }

    /// Every retraction `k` making `(j, k)` a split mono.
    pub fn all_on<T: Monad<FinSetCategory> + ?Sized>(t: &T, j: &Func) -> Result<Vec<SplitMono>> {
        let c = FinSetCategory;
        let tc = t.obj(&c, j.dom())?;
        let eta = t.unit(&c, j.dom())?;
        let mut out = Vec::new();
        for k in Func::all(j.cod(), &tc) {
            if k.after(j)? == eta {
                out.push(SplitMono { j: j.clone(), k });
            }
        }
        Ok(out)
    }
}

/// Every Eilenberg–Moore structure `a : TA → A`.
pub fn em_algebras<T: Monad<FinSetCategory> + ?Sized>(t: &T, a: &FinSet) -> Result<Vec<Func>> {
    let c = FinSetCategory;
    let ta = t.obj(&c, a)?;
    let eta = t.unit(&c, a)?;
    let mu = t.mult(&c, a)?;
    let mut out = Vec::new();
    for alg in Func::all(&ta, a) {
        if alg.after(&eta)? == Func::identity(a)
            && alg.after(&mu)? == alg.after(&t.arr(&c, &alg)?)?
        {
            out.push(alg);
        }
    }
    Ok(out)
}

/// `h̄ = a · Th · k`, checked to satisfy `h̄·j = h`.
pub fn sketch_canonical_lift<T: Monad<FinSetCategory> + ?Sized>(
    t: &T,
    mono: &SplitMono,
    a: &Func,
    h: &Func,
) -> Result<Func> {
    mono.check(t)?;
    let th = t.arr(&FinSetCategory, h)?;
    let lift = a.after(&th)?.after(&mono.k)?;
    if lift.after(&mono.j)? != *h {
        return Err(Error::Law(format!("{lift} does not extend {h}")));
    }
    Ok(lift)
}

/// A triangle `ψ = φ · j` of a sketch on `X`, with `φ : d → X`.
#[derive(Debug, Clone, PartialEq)]
pub struct SketchTriangle {
    pub mono: SplitMono,
    pub phi: Func,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sketch {
    pub x: FinSet,
    pub triangles: Vec<SketchTriangle>,
}

/// `f · φ_i = a · T(f·φ_i·j_i) · k_i` for every triangle.
pub fn model_by_squares<T: Monad<FinSetCategory> + ?Sized>(
    t: &T,
    sketch: &Sketch,
    a: &Func,
    f: &Func,
) -> Result<bool> {
    let c = FinSetCategory;
    for tri in &sketch.triangles {
        let fphi = f.after(&tri.phi)?;
        let rhs = c.comp(&[a, &t.arr(&c, &fphi.after(&tri.mono.j)?)?, &tri.mono.k])?;
        if fphi != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every triangle composed with `f` is the canonical lifting triangle of
/// the coalgebra `(j, ⟨1, k⟩)` against the algebra `(!_A, a·π₂)`.
pub fn model_by_lifts<T: Monad<FinSetCategory>>(
    w: &TSplitMonoAwfs<T>,
    sketch: &Sketch,
    a: &Func,
    f: &Func,
) -> Result<bool> {
    let c = FinSetCategory;
    let target = f.cod();
    let bang = c.terminal_arrow(target);
    let (_, _, p2) = c.product(&c.terminal(), &w.t.obj(&c, target)?);
    let alg = Algebra {
        arrow: bang.clone(),
        p: a.after(&p2)?,
    };
    for tri in &sketch.triangles {
        let co = tri.mono.coalgebra()?;
        let h = f.after(&tri.phi)?.after(&tri.mono.j)?;
        let v = c.terminal_arrow(tri.mono.j.cod());
        let lift = canonical_filler(w, &co, &alg, &h, &v)?;
        if lift != f.after(&tri.phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that `θ_A = π₂ : 1 × TA → TA` is a natural isomorphism of monads
/// from the fibrant replacement `RA = E(!_A)` to `T`.
pub fn check_fibrant_replacement<T: Monad<FinSetCategory>>(
    w: &TSplitMonoAwfs<T>,
    objects: &[FinSet],
) -> Result<Report> {
    let c = FinSetCategory;
    let t = &w.t;
    let one = c.terminal();
    let theta = |a: &FinSet| -> Result<Func> { Ok(c.product(&one, &t.obj(&c, a)?).2) };
    let mut r = Report::new();
    for a in objects {
        let at = a.to_string();
        let bang = c.terminal_arrow(a);
        let fac = w.factor(&bang)?;
        let ta = t.obj(&c, a)?;
        let th = theta(a)?;
        let inv = c.pair(&c.terminal_arrow(&ta), &Func::identity(&ta))?;
        r.equal("theta-inverse-left", &at, &th.after(&inv)?, &Func::identity(&ta));
        r.equal("theta-inverse-right", &at, &inv.after(&th)?, &Func::identity(&fac.mid));
        r.equal("theta-unit", &at, &th.after(&fac.left)?, &t.unit(&c, a)?);
        r.equal("rho-terminal", &at, &fac.right, &c.terminal_arrow(&fac.mid));
        let lhs = th.after(&w.mult(&bang)?)?;
        let rhs = c.comp(&[&t.mult(&c, a)?, &t.arr(&c, &th)?, &theta(&fac.mid)?])?;
        r.equal("theta-mult", &at, &lhs, &rhs);
        for b in objects {
            for h in Func::all(a, b) {
                let rh = w.e(&bang, &c.terminal_arrow(b), &h, &Func::identity(&one))?;
                let lhs = theta(b)?.after(&rh)?;
                let rhs = t.arr(&c, &h)?.after(&th)?;
                r.equal("theta-natural", h.to_string(), &lhs, &rhs);
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::awfs::{coalgebra_laws, finset_arrows, validate_awfs};
    use crate::fincat::{Exception, IdentityMonad};

    fn set(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().copied()).unwrap()
    }

    fn exception() -> Exception {
        Exception::new(set(&["e"]))
    }

    #[test]
    fn t_split_mono_laws() {
        let w = TSplitMonoAwfs::new(exception());
        let r = validate_awfs(&w, &finset_arrows(1), &finset_arrows(1)).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn fibrant_replacement_is_t() {
        let w = TSplitMonoAwfs::new(exception());
        let objs: Vec<FinSet> = (0..=3).map(FinSet::standard).collect();
        let r = check_fibrant_replacement(&w, &objs).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn lift_along_unit_is_h() {
        let t = exception();
        let c = FinSetCategory;
        let cset = set(&["c"]);
        let mono = SplitMono {
            j: Func::identity(&cset),
            k: t.unit(&c, &cset).unwrap(),
        };
        let a = FinSet::standard(2);
        for alg in em_algebras(&t, &a).unwrap() {
            for h in Func::all(&cset, &a) {
                assert_eq!(sketch_canonical_lift(&t, &mono, &alg, &h).unwrap(), h);
            }
        }
    }

    #[test]
    fn lift_sends_d_to_the_exception_point() {
        let t = exception();
        let cset = set(&["c"]);
        let dset = set(&["c", "d"]);
        let j = Func::from_pairs(&cset, &dset, &[("c", "c")]).unwrap();
        let tc = t.obj(&FinSetCategory, &cset).unwrap();
        let k = Func::from_pairs(&dset, &tc, &[("c", "L:c"), ("d", "R:e")]).unwrap();
        let mono = SplitMono { j, k };
        let a = set(&["p", "q"]);
        let ta = t.obj(&FinSetCategory, &a).unwrap();
        // a sends the exception to q.
        let alg = Func::from_pairs(&ta, &a, &[("L:p", "p"), ("L:q", "q"), ("R:e", "q")]).unwrap();
        let h = Func::from_pairs(&cset, &a, &[("c", "p")]).unwrap();
        let lift = sketch_canonical_lift(&t, &mono, &alg, &h).unwrap();
        assert_eq!(lift.apply_label("c"), Some("p"));
        assert_eq!(lift.apply_label("d"), Some("q"));
    }

    #[test]
    fn split_monos_are_coalgebras() {
        let t = exception();
        let w = TSplitMonoAwfs::new(t.clone());
        for j in finset_arrows(2) {
            for mono in SplitMono::all_on(&t, &j).unwrap() {
                let co = mono.coalgebra().unwrap();
                assert!(coalgebra_laws(&w, &co).unwrap().all_passed());
            }
        }
    }

    #[test]
    fn bad_split_mono_is_rejected() {
        let t = IdentityMonad;
        let two = FinSet::standard(2);
        let mono = SplitMono {
            j: Func::identity(&two),
            k: Func::constant(&two, &two, 0).unwrap(),
        };
        assert!(sketch_canonical_lift(&t, &mono, &Func::identity(&two), &Func::identity(&two))
            .is_err());
    }

    #[test]
    fn em_algebras_of_exception_pick_the_exception_value() {
        let t = exception();
        assert_eq!(em_algebras(&t, &FinSet::standard(3)).unwrap().len(), 3);
        assert!(em_algebras(&t, &FinSet::empty()).unwrap().is_empty());
    }
}
