use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Category, Coproducts, FinSet, FinSetCategory, Func, TableCategory};
use crate::report::Report;
use crate::{Error, Result};

pub trait Comonad<C: Category>: Send + Sync {
    fn obj(&self, c: &C, a: &C::Obj) -> Result<C::Obj>;
    fn arr(&self, c: &C, f: &C::Arr) -> Result<C::Arr>;
    /// `ε_A : PA → A`.
    fn counit(&self, c: &C, a: &C::Obj) -> Result<C::Arr>;
    /// `Δ_A : PA → PPA`.
    fn comult(&self, c: &C, a: &C::Obj) -> Result<C::Arr>;
}

pub trait Monad<C: Category>: Send + Sync {
    fn obj(&self, c: &C, a: &C::Obj) -> Result<C::Obj>;
    fn arr(&self, c: &C, f: &C::Arr) -> Result<C::Arr>;
    /// `η_A : A → TA`.
    fn unit(&self, c: &C, a: &C::Obj) -> Result<C::Arr>;
    /// `μ_A : TTA → TA`.
    fn mult(&self, c: &C, a: &C::Obj) -> Result<C::Arr>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityComonad;

impl<C: Category> Comonad<C> for IdentityComonad {
    fn obj(&self, _: &C, a: &C::Obj) -> Result<C::Obj> {
        Ok(a.clone())
    }
    fn arr(&self, _: &C, f: &C::Arr) -> Result<C::Arr> {
        Ok(f.clone())
    }
    fn counit(&self, c: &C, a: &C::Obj) -> Result<C::Arr> {
        Ok(c.id(a))
    }
    fn comult(&self, c: &C, a: &C::Obj) -> Result<C::Arr> {
        Ok(c.id(a))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityMonad;

impl<C: Category> Monad<C> for IdentityMonad {
    fn obj(&self, _: &C, a: &C::Obj) -> Result<C::Obj> {
        Ok(a.clone())
    }
    fn arr(&self, _: &C, f: &C::Arr) -> Result<C::Arr> {
        Ok(f.clone())
    }
    fn unit(&self, c: &C, a: &C::Obj) -> Result<C::Arr> {
        Ok(c.id(a))
    }
    fn mult(&self, c: &C, a: &C::Obj) -> Result<C::Arr> {
        Ok(c.id(a))
    }
}

/// `PX = X × S` with `ε(x,s) = x` and `Δ(x,s) = ((x,s),s)`.
#[derive(Debug, Clone)]
pub struct Coreader {
    pub s: FinSet,
}

impl Coreader {
    pub fn new(s: FinSet) -> Self {
        Coreader { s }
    }
}

impl Comonad<FinSetCategory> for Coreader {
    fn obj(&self, _: &FinSetCategory, a: &FinSet) -> Result<FinSet> {
        Ok(a.product(&self.s))
    }
    fn arr(&self, c: &FinSetCategory, f: &Func) -> Result<Func> {
        c.product_map(f, &Func::identity(&self.s))
    }
    fn counit(&self, c: &FinSetCategory, a: &FinSet) -> Result<Func> {
        Ok(c.product(a, &self.s).1)
    }
    fn comult(&self, _: &FinSetCategory, a: &FinSet) -> Result<Func> {
        let pa = a.product(&self.s);
        let ppa = pa.product(&self.s);
        let m = self.s.len();
        Func::from_fn(&pa, &ppa, |i| i * m + i % m)
    }
}

/// `TX = X + E` with `η = inl` and `μ = ⟨1, inr⟩`.
#[derive(Debug, Clone)]
pub struct Exception {
    pub e: FinSet,
}

impl Exception {
    pub fn new(e: FinSet) -> Self {
        Exception { e }
    }
}

impl Monad<FinSetCategory> for Exception {
    fn obj(&self, _: &FinSetCategory, a: &FinSet) -> Result<FinSet> {
        Ok(a.sum(&self.e))
    }
    fn arr(&self, c: &FinSetCategory, f: &Func) -> Result<Func> {
        c.sum_map(f, &Func::identity(&self.e))
    }
    fn unit(&self, c: &FinSetCategory, a: &FinSet) -> Result<Func> {
        Ok(c.coproduct(a, &self.e)?.inl)
    }
    fn mult(&self, c: &FinSetCategory, a: &FinSet) -> Result<Func> {
        let ta = a.sum(&self.e);
        let inr = c.coproduct(a, &self.e)?.inr;
        c.copair(&Func::identity(&ta), &inr)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorSpec {
    pub obj_map: BTreeMap<String, String>,
    pub arr_map: BTreeMap<String, String>,
}

/// A comonad on a table category, given componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableComonad {
    pub functor: FunctorSpec,
    pub counit: BTreeMap<String, String>,
    pub comult: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMonad {
    pub functor: FunctorSpec,
    pub unit: BTreeMap<String, String>,
    pub mult: BTreeMap<String, String>,
}

fn lookup(map: &BTreeMap<String, String>, key: &str, what: &str) -> Result<String> {
    map.get(key)
        .cloned()
        .ok_or_else(|| Error::Missing(format!("{what} at `{key}`")))
}

impl FunctorSpec {
    fn obj(&self, a: &str) -> Result<String> {
        lookup(&self.obj_map, a, "object map")
    }
    fn arr(&self, f: &str) -> Result<String> {
        lookup(&self.arr_map, f, "arrow map")
    }
}

impl Comonad<TableCategory> for TableComonad {
    fn obj(&self, _: &TableCategory, a: &String) -> Result<String> {
        self.functor.obj(a)
    }
    fn arr(&self, _: &TableCategory, f: &String) -> Result<String> {
        self.functor.arr(f)
    }
    fn counit(&self, _: &TableCategory, a: &String) -> Result<String> {
        lookup(&self.counit, a, "counit")
    }
    fn comult(&self, _: &TableCategory, a: &String) -> Result<String> {
        lookup(&self.comult, a, "comultiplication")
    }
}

impl Monad<TableCategory> for TableMonad {
    fn obj(&self, _: &TableCategory, a: &String) -> Result<String> {
        self.functor.obj(a)
    }
    fn arr(&self, _: &TableCategory, f: &String) -> Result<String> {
        self.functor.arr(f)
    }
    fn unit(&self, _: &TableCategory, a: &String) -> Result<String> {
        lookup(&self.unit, a, "unit")
    }
    fn mult(&self, _: &TableCategory, a: &String) -> Result<String> {
        lookup(&self.mult, a, "multiplication")
    }
}

fn fragment_arrows<C: Category>(c: &C, fragment: &[C::Obj]) -> Result<Vec<Vec<Vec<C::Arr>>>> {
    for a in fragment {
        if !c.has_object(a) {
            return Err(Error::UnknownObject(a.to_string()));
        }
    }
    fragment
        .iter()
        .map(|a| fragment.iter().map(|b| c.hom(a, b)).collect())
        .collect()
}

/// Functor laws on the fragment, shared by both validators.
fn functor_laws<C: Category>(
    c: &C,
    report: &mut Report,
    fragment: &[C::Obj],
    homs: &[Vec<Vec<C::Arr>>],
    obj: impl Fn(&C::Obj) -> Result<C::Obj>,
    arr: impl Fn(&C::Arr) -> Result<C::Arr>,
) -> Result<()> {
    for a in fragment {
        let fa = obj(a)?;
        report.equal("functor-identity", a.to_string(), &arr(&c.id(a))?, &c.id(&fa));
    }
    let n = fragment.len();
    let mut clean = true;
    for i in 0..n {
        for j in 0..n {
            for f in &homs[i][j] {
                let ff = arr(f)?;
                if c.dom(&ff) != obj(&fragment[i])? || c.cod(&ff) != obj(&fragment[j])? {
                    report.fail("functor-typing", f.to_string(), &ff, "wrong endpoints");
                    clean = false;
                    continue;
                }
                for k in 0..n {
                    for g in &homs[j][k] {
                        let lhs = arr(&c.compose(g, f)?)?;
                        let rhs = c.compose(&arr(g)?, &ff)?;
                        if lhs != rhs {
                            report.fail("functor-composition", format!("({g}, {f})"), &lhs, &rhs);
                            clean = false;
                        }
                    }
                }
            }
        }
    }
    if clean {
        report.pass("functor-composition", format!("{n} objects"));
    }
    Ok(())
}

/// Functor laws, naturality of `ε` and `Δ`, both counit laws and
/// coassociativity on the fragment.
pub fn validate_comonad<C: Category, P: Comonad<C> + ?Sized>(
    c: &C,
    p: &P,
    fragment: &[C::Obj],
) -> Result<Report> {
    let homs = fragment_arrows(c, fragment)?;
    let mut report = Report::new();
    functor_laws(c, &mut report, fragment, &homs, |a| p.obj(c, a), |f| p.arr(c, f))?;
    for a in fragment {
        let at = a.to_string();
        let pa = p.obj(c, a)?;
        let delta = p.comult(c, a)?;
        let id = c.id(&pa);
        let left = c.compose(&p.counit(c, &pa)?, &delta)?;
        report.equal("counit-left", &at, &left, &id);
        let right = c.compose(&p.arr(c, &p.counit(c, a)?)?, &delta)?;
        report.equal("counit-right", &at, &right, &id);
        let lhs = c.compose(&p.comult(c, &pa)?, &delta)?;
        let rhs = c.compose(&p.arr(c, &delta)?, &delta)?;
        report.equal("coassociativity", &at, &lhs, &rhs);
    }
    for (i, row) in homs.iter().enumerate() {
        for (j, fs) in row.iter().enumerate() {
            let (a, b) = (&fragment[i], &fragment[j]);
            for f in fs {
                let at = f.to_string();
                let pf = p.arr(c, f)?;
                let lhs = c.compose(&p.counit(c, b)?, &pf)?;
                let rhs = c.compose(f, &p.counit(c, a)?)?;
                report.equal("counit-natural", &at, &lhs, &rhs);
                let lhs = c.compose(&p.comult(c, b)?, &pf)?;
                let rhs = c.compose(&p.arr(c, &pf)?, &p.comult(c, a)?)?;
                report.equal("comult-natural", &at, &lhs, &rhs);
            }
        }
    }
    Ok(report)
}

/// The dual of [`validate_comonad`].
pub fn validate_monad<C: Category, T: Monad<C> + ?Sized>(
    c: &C,
    t: &T,
    fragment: &[C::Obj],
) -> Result<Report> {
    let homs = fragment_arrows(c, fragment)?;
    let mut report = Report::new();
    functor_laws(c, &mut report, fragment, &homs, |a| t.obj(c, a), |f| t.arr(c, f))?;
    for a in fragment {
        let at = a.to_string();
        let ta = t.obj(c, a)?;
        let mu = t.mult(c, a)?;
        let id = c.id(&ta);
        let left = c.compose(&mu, &t.unit(c, &ta)?)?;
        report.equal("unit-left", &at, &left, &id);
        let right = c.compose(&mu, &t.arr(c, &t.unit(c, a)?)?)?;
        report.equal("unit-right", &at, &right, &id);
        let lhs = c.compose(&mu, &t.mult(c, &ta)?)?;
        let rhs = c.compose(&mu, &t.arr(c, &mu)?)?;
        report.equal("associativity", &at, &lhs, &rhs);
    }
    for (i, row) in homs.iter().enumerate() {
        for (j, fs) in row.iter().enumerate() {
            let (a, b) = (&fragment[i], &fragment[j]);
            for f in fs {
                let at = f.to_string();
                let tf = t.arr(c, f)?;
                let lhs = c.compose(&tf, &t.unit(c, a)?)?;
                let rhs = c.compose(&t.unit(c, b)?, f)?;
                report.equal("unit-natural", &at, &lhs, &rhs);
                let lhs = c.compose(&tf, &t.mult(c, a)?)?;
                let rhs = c.compose(&t.mult(c, b)?, &t.arr(c, &tf)?)?;
                report.equal("mult-natural", &at, &lhs, &rhs);
            }
        }
    }
    Ok(report)
}

/// An arrow `A ⇝ B` of the co-Kleisli category: an arrow `PA → B`.
#[derive(Clone, PartialEq)]
pub struct KlArrow<O, A> {
    pub src: O,
    pub tgt: O,
    pub arr: A,
}

impl<O: fmt::Display, A: fmt::Display> fmt::Display for KlArrow<O, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.arr)
    }
}

impl<O: fmt::Display, A: fmt::Display> fmt::Debug for KlArrow<O, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~> {} : {}", self.src, self.tgt, self.arr)
    }
}

pub struct CoKleisli<'a, C, P: ?Sized> {
    pub base: &'a C,
    pub comonad: &'a P,
}

pub fn co_kleisli<'a, C: Category, P: Comonad<C> + ?Sized>(
    c: &'a C,
    p: &'a P,
) -> CoKleisli<'a, C, P> {
    CoKleisli {
        base: c,
        comonad: p,
    }
}

impl<C: Category, P: Comonad<C> + ?Sized> CoKleisli<'_, C, P> {
    pub fn lift(&self, a: &C::Obj, b: &C::Obj, arr: C::Arr) -> KlArrow<C::Obj, C::Arr> {
        KlArrow {
            src: a.clone(),
            tgt: b.clone(),
            arr,
        }
    }
}

impl<C: Category, P: Comonad<C> + ?Sized> Category for CoKleisli<'_, C, P> {
    type Obj = C::Obj;
    type Arr = KlArrow<C::Obj, C::Arr>;

    fn dom(&self, f: &Self::Arr) -> C::Obj {
        f.src.clone()
    }

    fn cod(&self, f: &Self::Arr) -> C::Obj {
        f.tgt.clone()
    }

    fn id(&self, a: &C::Obj) -> Self::Arr {
        let arr = self
            .comonad
            .counit(self.base, a)
            .expect("counit defined on every object");
        self.lift(a, a, arr)
    }

    /// `g · Pf · Δ_A`.
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Result<Self::Arr> {
        if f.tgt != g.src {
            return Err(Error::NotComposable(format!("{g} . {f}")));
        }
        let c = self.base;
        let delta = self.comonad.comult(c, &f.src)?;
        let pf = self.comonad.arr(c, &f.arr)?;
        let arr = c.comp(&[&g.arr, &pf, &delta])?;
        Ok(self.lift(&f.src, &g.tgt, arr))
    }

    fn hom(&self, a: &C::Obj, b: &C::Obj) -> Result<Vec<Self::Arr>> {
        let pa = self.comonad.obj(self.base, a)?;
        Ok(self
            .base
            .hom(&pa, b)?
            .into_iter()
            .map(|arr| self.lift(a, b, arr))
            .collect())
    }

    fn has_object(&self, a: &C::Obj) -> bool {
        self.base.has_object(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;

    /// `Δ(x,s) = ((x,σs),s)` for the swap `σ`.
    struct TwistedCoreader(Coreader);

    impl Comonad<FinSetCategory> for TwistedCoreader {
        fn obj(&self, c: &FinSetCategory, a: &FinSet) -> Result<FinSet> {
            self.0.obj(c, a)
        }
        fn arr(&self, c: &FinSetCategory, f: &Func) -> Result<Func> {
            self.0.arr(c, f)
        }
        fn counit(&self, c: &FinSetCategory, a: &FinSet) -> Result<Func> {
            self.0.counit(c, a)
        }
        fn comult(&self, _: &FinSetCategory, a: &FinSet) -> Result<Func> {
            let pa = a.product(&self.0.s);
            let ppa = pa.product(&self.0.s);
            Func::from_fn(&pa, &ppa, |i| {
                let (x, s) = (i / 2, i % 2);
                (x * 2 + (1 - s)) * 2 + s
            })
        }
    }

    fn sizes(n: usize) -> Vec<FinSet> {
        (0..=n).map(FinSet::standard).collect()
    }

    fn two() -> FinSet {
        FinSet::new(["s", "t"]).unwrap()
    }

    #[test]
    fn identity_comonad_and_monad() {
        let c = FinSetCategory;
        assert!(validate_comonad(&c, &IdentityComonad, &sizes(2)).unwrap().all_passed());
        assert!(validate_monad(&c, &IdentityMonad, &sizes(2)).unwrap().all_passed());
    }

    #[test]
    fn coreader_passes() {
        let r = validate_comonad(&FinSetCategory, &Coreader::new(two()), &sizes(3)).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn twisted_comult_breaks_coassociativity() {
        let p = TwistedCoreader(Coreader::new(two()));
        let r = validate_comonad(&FinSetCategory, &p, &sizes(1)).unwrap();
        assert!(r
            .failures()
            .any(|x| x.name == "coassociativity" && x.at == "{0}"));
        // Pointwise: ΔP·Δ(0,s) = (((0,t),t),s) but PΔ·Δ(0,s) = (((0,s),t),s).
        let c = FinSetCategory;
        let a = FinSet::standard(1);
        let pa = p.obj(&c, &a).unwrap();
        let d = p.comult(&c, &a).unwrap();
        let lhs = p.comult(&c, &pa).unwrap().after(&d).unwrap();
        let rhs = p.arr(&c, &d).unwrap().after(&d).unwrap();
        assert_eq!(lhs.apply_label("(0,s)"), Some("(((0,t),t),s)"));
        assert_eq!(rhs.apply_label("(0,s)"), Some("(((0,s),t),s)"));
    }

    #[test]
    fn exception_monad_passes() {
        let r = validate_monad(&FinSetCategory, &Exception::new(FinSet::standard(1)), &sizes(3))
            .unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn co_kleisli_hom_count() {
        let p = Coreader::new(two());
        let k = co_kleisli(&FinSetCategory, &p);
        let x = FinSet::new(["x"]).unwrap();
        let uv = FinSet::new(["u", "v"]).unwrap();
        assert_eq!(k.hom(&x, &uv).unwrap().len(), 4);
    }

    #[test]
    fn co_kleisli_is_a_category() {
        let p = Coreader::new(two());
        let k = co_kleisli(&FinSetCategory, &p);
        let r = validate_category(&k, &sizes(2)).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn co_kleisli_of_identity_is_the_base() {
        let c = FinSetCategory;
        let k = co_kleisli(&c, &IdentityComonad);
        let objs = sizes(2);
        for a in &objs {
            for b in &objs {
                let kh = k.hom(a, b).unwrap();
                assert_eq!(kh.iter().map(|f| f.arr.clone()).collect::<Vec<_>>(), c.hom(a, b).unwrap());
                for cc in &objs {
                    for f in &kh {
                        for g in &k.hom(b, cc).unwrap() {
                            assert_eq!(k.compose(g, f).unwrap().arr, g.arr.after(&f.arr).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn table_comonad_missing_data_is_an_error() {
        let c = TableCategory::from_json(
            r#"{"objects":["A"],"arrows":[{"id":"1","dom":"A","cod":"A"}],"identities":{"A":"1"}}"#,
        )
        .unwrap();
        let p = TableComonad {
            functor: FunctorSpec {
                obj_map: [("A".into(), "A".into())].into(),
                arr_map: [("1".into(), "1".into())].into(),
            },
            counit: [("A".into(), "1".into())].into(),
            comult: BTreeMap::new(),
        };
        assert!(matches!(
            validate_comonad(&c, &p, &["A".to_string()]),
            Err(Error::Missing(_))
        ));
    }
}
