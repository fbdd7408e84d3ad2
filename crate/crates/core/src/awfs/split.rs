use super::{Arr, Awfs, Factorisation, Obj, Square};
use crate::fincat::{Comonad, Coproducts};
use crate::Result;

/// Split epis: `Ef = A + B`, `λf = ι_A`, `ρf = ⟨f, 1⟩`.
#[derive(Debug, Clone)]
pub struct SplitEpiAwfs<C> {
    pub c: C,
}

impl<C> SplitEpiAwfs<C> {
    pub fn new(c: C) -> Self {
        SplitEpiAwfs { c }
    }
}

impl<C: Coproducts + Sync> Awfs for SplitEpiAwfs<C> {
    type C = C;

    fn category(&self) -> &C {
        &self.c
    }

    fn factor(&self, f: &C::Arr) -> Result<Factorisation<C::Obj, C::Arr>> {
        let c = &self.c;
        let b = c.cod(f);
        let cp = c.coproduct(&c.dom(f), &b)?;
        Ok(Factorisation {
            mid: cp.object,
            left: cp.inl,
            right: c.copair(f, &c.id(&b))?,
        })
    }

    fn e_map(&self, sq: &Square<C::Arr>) -> Result<C::Arr> {
        self.c.sum_map(&sq.top, &sq.bottom)
    }

    /// `1_A + ι_B : A + B → A + (A + B)`.
    fn comult(&self, f: &C::Arr) -> Result<C::Arr> {
        let c = &self.c;
        let a = c.dom(f);
        let inr = c.coproduct(&a, &c.cod(f))?.inr;
        c.sum_map(&c.id(&a), &inr)
    }

    /// `⟨1, ι_B⟩ : (A + B) + B → A + B`.
    fn mult(&self, f: &C::Arr) -> Result<C::Arr> {
        let c = &self.c;
        let cp = c.coproduct(&c.dom(f), &c.cod(f))?;
        c.copair(&c.id(&cp.object), &cp.inr)
    }
}

/// `P`-split epis for a comonad `P`: `Ef = A + PB`, `λf = ι_A`,
/// `ρf = ⟨f, ε_B⟩`.
#[derive(Debug, Clone)]
pub struct PSplitEpiAwfs<C, P> {
    pub c: C,
    pub p: P,
}

impl<C, P> PSplitEpiAwfs<C, P> {
    pub fn new(c: C, p: P) -> Self {
        PSplitEpiAwfs { c, p }
    }
}

impl<C: Coproducts + Sync, P: Comonad<C>> PSplitEpiAwfs<C, P> {
    /// The free section `ι_{PB} : PB → A + PB` of `ρf`.
    pub fn free_section(&self, f: &C::Arr) -> Result<C::Arr> {
        let c = &self.c;
        let pb = self.p.obj(c, &c.cod(f))?;
        Ok(c.coproduct(&c.dom(f), &pb)?.inr)
    }
}

impl<C: Coproducts + Sync, P: Comonad<C>> Awfs for PSplitEpiAwfs<C, P> {
    type C = C;

    fn category(&self) -> &C {
        &self.c
    }

    fn factor(&self, f: &Arr<Self>) -> Result<Factorisation<Obj<Self>, Arr<Self>>> {
        let c = &self.c;
        let b = c.cod(f);
        let pb = self.p.obj(c, &b)?;
        let cp = c.coproduct(&c.dom(f), &pb)?;
        Ok(Factorisation {
            mid: cp.object,
            left: cp.inl,
            right: c.copair(f, &self.p.counit(c, &b)?)?,
        })
    }

    /// `h + Pk`.
    fn e_map(&self, sq: &Square<C::Arr>) -> Result<C::Arr> {
        self.c.sum_map(&sq.top, &self.p.arr(&self.c, &sq.bottom)?)
    }

    /// `(1 + Pι_{PB}) · (1 + Δ_B)`.
    fn comult(&self, f: &C::Arr) -> Result<C::Arr> {
        let c = &self.c;
        let p = &self.p;
        let one = c.id(&c.dom(f));
        let inr = self.free_section(f)?;
        let first = c.sum_map(&one, &p.comult(c, &c.cod(f))?)?;
        let second = c.sum_map(&one, &p.arr(c, &inr)?)?;
        c.compose(&second, &first)
    }

    /// `⟨1, ι_{PB}⟩ : (A + PB) + PB → A + PB`.
    fn mult(&self, f: &C::Arr) -> Result<C::Arr> {
        let c = &self.c;
        let inr = self.free_section(f)?;
        c.copair(&c.id(&c.cod(&inr)), &inr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::awfs::{finset_arrows, validate_awfs};
    use crate::fincat::{Coreader, FinSet, FinSetCategory, Func, IdentityComonad};

    fn set(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn identity_factors_through_codiagonal() {
        let w = SplitEpiAwfs::new(FinSetCategory);
        let a = set(&["a", "b"]);
        let fac = w.factor(&Func::identity(&a)).unwrap();
        assert_eq!(fac.mid.len(), 4);
        assert_eq!(fac.right.map(), &[0, 1, 0, 1]);
        assert_eq!(fac.left.map(), &[0, 1]);
    }

    #[test]
    fn split_epi_on_point() {
        let w = SplitEpiAwfs::new(FinSetCategory);
        let f = Func::from_pairs(&set(&["a"]), &set(&["x", "y"]), &[("a", "x")]).unwrap();
        let rho = w.right(&f).unwrap();
        assert_eq!(rho.dom().len(), 3);
        assert_eq!(rho.apply_label("L:a"), Some("x"));
        assert_eq!(rho.apply_label("R:x"), Some("x"));
        assert_eq!(rho.apply_label("R:y"), Some("y"));
    }

    #[test]
    fn p_identity_agrees_with_split_epi() {
        let s = SplitEpiAwfs::new(FinSetCategory);
        let p = PSplitEpiAwfs::new(FinSetCategory, IdentityComonad);
        for f in finset_arrows(2) {
            assert_eq!(s.factor(&f).unwrap(), p.factor(&f).unwrap());
            assert_eq!(s.comult(&f).unwrap(), p.comult(&f).unwrap());
            assert_eq!(s.mult(&f).unwrap(), p.mult(&f).unwrap());
        }
    }

    #[test]
    fn coreader_factorisation() {
        let s = set(&["s", "t"]);
        let w = PSplitEpiAwfs::new(FinSetCategory, Coreader::new(s));
        let f = Func::from_pairs(&set(&["a"]), &set(&["x"]), &[("a", "x")]).unwrap();
        let fac = w.factor(&f).unwrap();
        assert_eq!(fac.mid.len(), 3);
        assert_eq!(fac.right.apply_label("R:(x,s)"), Some("x"));
        assert_eq!(fac.right.apply_label("R:(x,t)"), Some("x"));
    }

    #[test]
    fn split_epi_laws_small() {
        let w = SplitEpiAwfs::new(FinSetCategory);
        let r = validate_awfs(&w, &finset_arrows(2), &finset_arrows(1)).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert!(validate_awfs(&w, &[], &[]).unwrap().checks.is_empty());
    }

    #[test]
    fn p_split_epi_laws_small() {
        let w = PSplitEpiAwfs::new(FinSetCategory, Coreader::new(FinSet::standard(2)));
        let r = validate_awfs(&w, &finset_arrows(1), &finset_arrows(1)).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    /// Drops the `1 + Pι_{PB}` factor from the comultiplication.
    struct Truncated(PSplitEpiAwfs<FinSetCategory, Coreader>);

    impl Awfs for Truncated {
        type C = FinSetCategory;
        fn category(&self) -> &FinSetCategory {
            &self.0.c
        }
        fn factor(&self, f: &Func) -> Result<Factorisation<FinSet, Func>> {
            self.0.factor(f)
        }
        fn e_map(&self, sq: &Square<Func>) -> Result<Func> {
            self.0.e_map(sq)
        }
        fn comult(&self, f: &Func) -> Result<Func> {
            let c = &self.0.c;
            let p = &self.0.p;
            c.sum_map(&Func::identity(f.dom()), &p.comult(c, f.cod())?)
        }
        fn mult(&self, f: &Func) -> Result<Func> {
            self.0.mult(f)
        }
    }

    #[test]
    fn dropped_factor_breaks_coassociativity() {
        let w = Truncated(PSplitEpiAwfs::new(FinSetCategory, Coreader::new(FinSet::standard(2))));
        let f = Func::identity(&FinSet::standard(1));
        let r = validate_awfs(&w, &[f], &[]).unwrap();
        assert!(r.failures().any(|c| c.name == "comonad-coassociativity"), "{}", r.to_text());
    }
}
