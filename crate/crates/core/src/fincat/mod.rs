//! Computable categories.
//!
//! A [`Category`] has enumerable finite hom-sets and decidable arrow
//! equality. Chosen colimits and limits are separate traits so that the
//! table backend only offers what its file declares.

mod comonad;
mod finset;
mod table;

use std::fmt::{Debug, Display};

pub use comonad::{
    co_kleisli, validate_comonad, validate_monad, CoKleisli, Comonad, Coreader, Exception,
    IdentityComonad, IdentityMonad, KlArrow, Monad, TableComonad, TableMonad,
};
pub use finset::{FinSet, FinSetCategory, Func};
pub use table::{TableCategory, TableSpec};

use crate::report::Report;
use crate::{Error, Result};

pub trait Category {
    type Obj: Clone + PartialEq + Debug + Display + Send + Sync;
    type Arr: Clone + PartialEq + Debug + Display + Send + Sync;

    fn dom(&self, f: &Self::Arr) -> Self::Obj;
    fn cod(&self, f: &Self::Arr) -> Self::Obj;
    fn id(&self, a: &Self::Obj) -> Self::Arr;
    /// `g · f`, defined when `cod f = dom g`.
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Result<Self::Arr>;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Arr>>;
    fn has_object(&self, a: &Self::Obj) -> bool;

    /// Composes right to left: `comp(&[h, g, f]) = h · g · f`.
    fn comp(&self, arrows: &[&Self::Arr]) -> Result<Self::Arr> {
        let (last, rest) = arrows
            .split_last()
            .ok_or_else(|| Error::Invalid("empty composite".into()))?;
        let mut acc = (*last).clone();
        for g in rest.iter().rev() {
            acc = self.compose(g, &acc)?;
        }
        Ok(acc)
    }
}

/// Chosen binary coproduct `A + B` with its injections.
#[derive(Debug, Clone, PartialEq)]
pub struct Coproduct<O, A> {
    pub object: O,
    pub inl: A,
    pub inr: A,
}

pub trait Coproducts: Category {
    fn coproduct(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Coproduct<Self::Obj, Self::Arr>>;

    /// The copairing `⟨f, g⟩ : A + B → C`.
    fn copair(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr>;

    /// `h + k : A + B → A' + B'`.
    fn sum_map(&self, h: &Self::Arr, k: &Self::Arr) -> Result<Self::Arr> {
        let target = self.coproduct(&self.cod(h), &self.cod(k))?;
        let l = self.compose(&target.inl, h)?;
        let r = self.compose(&target.inr, k)?;
        self.copair(&l, &r)
    }
}

pub trait Initial: Category {
    fn initial(&self) -> Result<Self::Obj>;
    fn initial_arrow(&self, b: &Self::Obj) -> Result<Self::Arr>;
}

/// Chosen pullback of a cospan `A -f-> C <-g- B`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pullback<O, A> {
    pub object: O,
    pub p1: A,
    pub p2: A,
}

pub trait Pullbacks: Category {
    fn pullback(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Pullback<Self::Obj, Self::Arr>>;

    /// The unique `m` with `p1·m = x1`, `p2·m = x2`; errors when the cone does
    /// not commute.
    fn mediate(
        &self,
        f: &Self::Arr,
        g: &Self::Arr,
        x1: &Self::Arr,
        x2: &Self::Arr,
    ) -> Result<Self::Arr>;
}

/// Every violated unit and associativity equation on the full subcategory
/// spanned by `fragment`.
pub fn validate_category<C: Category>(c: &C, fragment: &[C::Obj]) -> Result<Report> {
    for a in fragment {
        if !c.has_object(a) {
            return Err(Error::UnknownObject(a.to_string()));
        }
    }
    let mut report = Report::new();
    let homs: Vec<Vec<Vec<C::Arr>>> = fragment
        .iter()
        .map(|a| fragment.iter().map(|b| c.hom(a, b)).collect())
        .collect::<Result<_>>()?;
    let n = fragment.len();
    for i in 0..n {
        for j in 0..n {
            for f in &homs[i][j] {
                let at = f.to_string();
                let left = c.compose(&c.id(&fragment[j]), f)?;
                report.equal("left-unit", &at, &left, f);
                let right = c.compose(f, &c.id(&fragment[i]))?;
                report.equal("right-unit", &at, &right, f);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for f in &homs[i][j] {
                        for g in &homs[j][k] {
                            let gf = c.compose(g, f)?;
                            for h in &homs[k][l] {
                                let lhs = c.compose(h, &gf)?;
                                let rhs = c.compose(&c.compose(h, g)?, f)?;
                                if lhs != rhs {
                                    report.fail(
                                        "associativity",
                                        format!("({h}, {g}, {f})"),
                                        &lhs,
                                        &rhs,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    if report.all_passed() {
        report.pass("associativity", format!("{n} objects"));
    }
    Ok(report)
}

/// Checks a chosen coproduct's universal property against every pair of
/// arrows into each test object.
pub fn validate_coproduct<C: Coproducts>(
    c: &C,
    a: &C::Obj,
    b: &C::Obj,
    test_objects: &[C::Obj],
) -> Result<Report> {
    let mut report = Report::new();
    let cp = c.coproduct(a, b)?;
    let at = format!("{a} + {b}");
    for x in test_objects {
        let all = c.hom(&cp.object, x)?;
        for f in c.hom(a, x)? {
            for g in c.hom(b, x)? {
                let mut matches = 0usize;
                for u in &all {
                    if c.compose(u, &cp.inl)? == f && c.compose(u, &cp.inr)? == g {
                        matches += 1;
                    }
                }
                report.holds(
                    "coproduct-universal",
                    format!("{at} -> {x} ({f}, {g})"),
                    matches == 1,
                    || (format!("{matches} mediating arrows"), "1".into()),
                );
                let cop = c.copair(&f, &g)?;
                let l = c.compose(&cop, &cp.inl)?;
                let r = c.compose(&cop, &cp.inr)?;
                report.equal("copair-inl", format!("{at} ({f}, {g})"), &l, &f);
                report.equal("copair-inr", format!("{at} ({f}, {g})"), &r, &g);
            }
        }
    }
    Ok(report)
}

/// Checks commutativity and the universal property (existence and
/// uniqueness of mediating arrows) of a chosen pullback.
pub fn validate_pullback<C: Pullbacks>(
    c: &C,
    f: &C::Arr,
    g: &C::Arr,
    test_objects: &[C::Obj],
) -> Result<Report> {
    let mut report = Report::new();
    let pb = c.pullback(f, g)?;
    let at = format!("{f} x {g}");
    let fp = c.compose(f, &pb.p1)?;
    let gq = c.compose(g, &pb.p2)?;
    report.equal("pullback-commutes", &at, &fp, &gq);
    for x in test_objects {
        let into = c.hom(x, &pb.object)?;
        for x1 in c.hom(x, &c.dom(f))? {
            for x2 in c.hom(x, &c.dom(g))? {
                if c.compose(f, &x1)? != c.compose(g, &x2)? {
                    continue;
                }
                let mut matches = 0usize;
                for m in &into {
                    if c.compose(&pb.p1, m)? == x1 && c.compose(&pb.p2, m)? == x2 {
                        matches += 1;
                    }
                }
                report.holds(
                    "pullback-universal",
                    format!("{at} <- {x} ({x1}, {x2})"),
                    matches == 1,
                    || (format!("{matches} mediating arrows"), "1".into()),
                );
                let m = c.mediate(f, g, &x1, &x2)?;
                let ok = c.compose(&pb.p1, &m)? == x1 && c.compose(&pb.p2, &m)? == x2;
                report.holds("mediate-solves", format!("{at} <- {x}"), ok, || {
                    (m.to_string(), format!("({x1}, {x2})"))
                });
            }
        }
    }
    Ok(report)
}

/// Checks that the chosen initial object has exactly one arrow to each test
/// object.
pub fn validate_initial<C: Initial>(c: &C, test_objects: &[C::Obj]) -> Result<Report> {
    let mut report = Report::new();
    let zero = c.initial()?;
    for x in test_objects {
        let n = c.hom(&zero, x)?.len();
        report.holds("initial-unique", format!("{zero} -> {x}"), n == 1, || {
            (format!("{n} arrows"), "1".into())
        });
    }
    Ok(report)
}
