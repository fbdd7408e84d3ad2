//! Algebraic weak factorisation systems.
//!
//! An [`Awfs`] factors each arrow `f: A → B` as `ρf · λf` through a middle
//! object `Ef`, acts on commuting squares, and carries the comultiplication
//! `Δ_f: Ef → E(λf)` and multiplication `μ_f: E(ρf) → Ef`. [`validate_awfs`]
//! instantiates every comonad, monad, naturality and distributivity equation
//! at each arrow of a fragment.
//!
//! The distributivity equation checked is, for each `f`,
//!
//! ```text
//! Δ_f · μ_f = μ_{λf} · E(Δ_f, μ_f) · Δ_{ρf}     : E(ρf) → E(λf)
//! ```
//!
//! where `(Δ_f, μ_f)` is the square `λ(ρf) → ρ(λf)`.

mod algebra;
mod replace;
mod sketch;
mod split;
pub mod suite;

use std::fmt;

use rayon::prelude::*;

pub use algebra::{
    algebra_laws, algebras_on, canonical_filler, cartesian_lift, coalgebra_laws, coalgebras_on,
    cofree_coalgebra, free_algebra, is_split_square, r_algebra_compose, split_sections,
    Algebra, Coalgebra, SplitAlgebra,
};
pub use replace::{check_replacement_iso, QComonad};
pub use sketch::{
    check_fibrant_replacement, em_algebras, model_by_lifts, model_by_squares,
    sketch_canonical_lift, Sketch, SketchTriangle, SplitMono, TSplitMonoAwfs,
};
pub use split::{PSplitEpiAwfs, SplitEpiAwfs};

use crate::fincat::{Category, FinSet, Func};
use crate::report::Report;
use crate::{Error, Result};

pub type Obj<W> = <<W as Awfs>::C as Category>::Obj;
pub type Arr<W> = <<W as Awfs>::C as Category>::Arr;

/// `f = right · left` through `mid`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorisation<O, A> {
    pub mid: O,
    pub left: A,
    pub right: A,
}

/// A morphism `(top, bottom): src → tgt` of the arrow category, with
/// `tgt · top = bottom · src`.
#[derive(Debug, Clone, PartialEq)]
pub struct Square<A> {
    pub src: A,
    pub tgt: A,
    pub top: A,
    pub bottom: A,
}

impl<A: fmt::Display> fmt::Display for Square<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}): {} => {}", self.top, self.bottom, self.src, self.tgt)
    }
}

impl<A: Clone> Square<A> {
    pub fn new(src: &A, tgt: &A, top: &A, bottom: &A) -> Self {
        Square {
            src: src.clone(),
            tgt: tgt.clone(),
            top: top.clone(),
            bottom: bottom.clone(),
        }
    }
}

pub fn square_commutes<C: Category>(c: &C, sq: &Square<C::Arr>) -> Result<bool> {
    Ok(c.compose(&sq.tgt, &sq.top)? == c.compose(&sq.bottom, &sq.src)?)
}

/// All squares `f → g` in lexicographic order of `(top, bottom)`.
pub fn squares<C: Category>(c: &C, f: &C::Arr, g: &C::Arr) -> Result<Vec<Square<C::Arr>>> {
    let bottoms = c.hom(&c.cod(f), &c.cod(g))?;
    let kf: Vec<C::Arr> = bottoms
        .iter()
        .map(|k| c.compose(k, f))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for h in c.hom(&c.dom(f), &c.dom(g))? {
        let gh = c.compose(g, &h)?;
        for (k, kf) in bottoms.iter().zip(&kf) {
            if *kf == gh {
                out.push(Square::new(f, g, &h, k));
            }
        }
    }
    Ok(out)
}

pub trait Awfs: Sync + Sized {
    type C: Category + Sync;

    fn category(&self) -> &Self::C;
    fn factor(&self, f: &Arr<Self>) -> Result<Factorisation<Obj<Self>, Arr<Self>>>;
    /// `E(h, k): Ef → Eg` for a square `(h, k): f → g`.
    fn e_map(&self, sq: &Square<Arr<Self>>) -> Result<Arr<Self>>;
    /// `Δ_f: Ef → E(λf)`.
    fn comult(&self, f: &Arr<Self>) -> Result<Arr<Self>>;
    /// `μ_f: E(ρf) → Ef`.
    fn mult(&self, f: &Arr<Self>) -> Result<Arr<Self>>;

    fn left(&self, f: &Arr<Self>) -> Result<Arr<Self>> {
        Ok(self.factor(f)?.left)
    }

    fn right(&self, f: &Arr<Self>) -> Result<Arr<Self>> {
        Ok(self.factor(f)?.right)
    }

    fn middle(&self, f: &Arr<Self>) -> Result<Obj<Self>> {
        Ok(self.factor(f)?.mid)
    }

    /// `E` of the square `(top, bottom): src → tgt`.
    fn e(
        &self,
        src: &Arr<Self>,
        tgt: &Arr<Self>,
        top: &Arr<Self>,
        bottom: &Arr<Self>,
    ) -> Result<Arr<Self>> {
        self.e_map(&Square::new(src, tgt, top, bottom))
    }
}

/// Every arrow between the standard sets of size `0..=max`, grouped by
/// domain then codomain.
pub fn finset_arrows(max: usize) -> Vec<Func> {
    let objs: Vec<FinSet> = (0..=max).map(FinSet::standard).collect();
    let mut out = Vec::new();
    for a in &objs {
        for b in &objs {
            out.extend(Func::all(a, b));
        }
    }
    out
}

/// Records `lhs == rhs`, or the evaluation error as a failure.
fn record<T: PartialEq + fmt::Display>(
    report: &mut Report,
    name: &str,
    at: &str,
    sides: Result<(T, T)>,
) -> bool {
    match sides {
        Ok((lhs, rhs)) => report.equal(name, at, &lhs, &rhs),
        Err(e) => {
            report.error(name, at, &e);
            false
        }
    }
}

/// First failure of a family of equations indexed by squares.
struct Witness<A> {
    name: &'static str,
    checked: usize,
    failure: Option<(String, A, A)>,
    error: Option<(String, Error)>,
}

impl<A: PartialEq + fmt::Display> Witness<A> {
    fn new(name: &'static str) -> Self {
        Witness {
            name,
            checked: 0,
            failure: None,
            error: None,
        }
    }

    fn add(&mut self, at: impl FnOnce() -> String, sides: Result<(A, A)>) {
        self.checked += 1;
        if self.failure.is_some() || self.error.is_some() {
            return;
        }
        match sides {
            Ok((l, r)) if l != r => self.failure = Some((at(), l, r)),
            Ok(_) => {}
            Err(e) => self.error = Some((at(), e)),
        }
    }

    fn finish(self, report: &mut Report, at: &str) {
        match (self.failure, self.error) {
            (Some((sq, l, r)), _) => {
                report.fail(self.name, format!("{at} [{sq}]"), l, r);
            }
            (None, Some((sq, e))) => report.error(self.name, format!("{at} [{sq}]"), &e),
            (None, None) => report.pass(self.name, format!("{at} ({} squares)", self.checked)),
        }
    }
}

fn per_arrow<W: Awfs>(w: &W, f: &Arr<W>) -> Report {
    let c = w.category();
    let at = f.to_string();
    let mut r = Report::new();
    let fac = match w.factor(f) {
        Ok(fac) => fac,
        Err(e) => {
            r.error("factorisation", &at, &e);
            return r;
        }
    };
    let (l, rho) = (&fac.left, &fac.right);
    let shape = c.dom(l) == c.dom(f)
        && c.cod(l) == fac.mid
        && c.dom(rho) == fac.mid
        && c.cod(rho) == c.cod(f);
    r.holds("factorisation-shape", &at, shape, || {
        (format!("{l} ; {rho}"), format!("{} -> {}", c.dom(f), c.cod(f)))
    });
    if !shape {
        return r;
    }
    record(&mut r, "factorisation", &at, c.compose(rho, l).map(|x| (x, f.clone())));
    let one_e = c.id(&fac.mid);
    let one_a = c.id(&c.dom(f));
    let one_b = c.id(&c.cod(f));

    // L is a comonad on the arrow category, R a monad.
    let delta = w.comult(f);
    let mu = w.mult(f);
    record(&mut r, "counit-shape", &at, c.compose(f, &one_a).and_then(|x| Ok((x, c.compose(rho, l)?))));
    record(&mut r, "unit-shape", &at, c.compose(&one_b, f).and_then(|x| Ok((x, c.compose(rho, l)?))));
    record(&mut r, "comult-square", &at, (|| {
        let d = delta.clone()?;
        Ok((c.compose(&d, l)?, w.left(l)?))
    })());
    record(&mut r, "comonad-counit-left", &at, (|| {
        let d = delta.clone()?;
        Ok((c.compose(&w.right(l)?, &d)?, one_e.clone()))
    })());
    record(&mut r, "comonad-counit-right", &at, (|| {
        let d = delta.clone()?;
        let e1 = w.e(l, f, &one_a, rho)?;
        Ok((c.compose(&e1, &d)?, one_e.clone()))
    })());
    record(&mut r, "comonad-coassociativity", &at, (|| {
        let d = delta.clone()?;
        let ll = w.left(l)?;
        let lhs = c.compose(&w.comult(l)?, &d)?;
        let rhs = c.compose(&w.e(l, &ll, &one_a, &d)?, &d)?;
        Ok((lhs, rhs))
    })());
    record(&mut r, "mult-square", &at, (|| {
        let m = mu.clone()?;
        Ok((c.compose(rho, &m)?, w.right(rho)?))
    })());
    record(&mut r, "monad-unit-left", &at, (|| {
        let m = mu.clone()?;
        Ok((c.compose(&m, &w.left(rho)?)?, one_e.clone()))
    })());
    record(&mut r, "monad-unit-right", &at, (|| {
        let m = mu.clone()?;
        let e1 = w.e(f, rho, l, &one_b)?;
        Ok((c.compose(&m, &e1)?, one_e.clone()))
    })());
    record(&mut r, "monad-associativity", &at, (|| {
        let m = mu.clone()?;
        let rr = w.right(rho)?;
        let lhs = c.compose(&m, &w.mult(rho)?)?;
        let rhs = c.compose(&m, &w.e(&rr, rho, &m, &one_b)?)?;
        Ok((lhs, rhs))
    })());
    record(&mut r, "distributivity", &at, (|| {
        let d = delta.clone()?;
        let m = mu.clone()?;
        let lr = w.left(rho)?;
        let rl = w.right(l)?;
        let lhs = c.compose(&d, &m)?;
        let rhs = c.comp(&[&w.mult(l)?, &w.e(&lr, &rl, &d, &m)?, &w.comult(rho)?])?;
        Ok((lhs, rhs))
    })());
    record(&mut r, "E-identity", &at, w.e(f, f, &one_a, &one_b).map(|x| (x, one_e.clone())));
    r
}

fn naturality<W: Awfs>(w: &W, f: &Arr<W>, arrows: &[Arr<W>]) -> Result<Report> {
    let c = w.category();
    let at = f.to_string();
    let mut lam = Witness::new("lambda-natural");
    let mut rho = Witness::new("rho-natural");
    let mut del = Witness::new("comult-natural");
    let mut mu = Witness::new("mult-natural");
    let ff = w.factor(f)?;
    let df = w.comult(f)?;
    let mf = w.mult(f)?;
    for g in arrows {
        let sqs = squares(c, f, g)?;
        if sqs.is_empty() {
            continue;
        }
        let fg = w.factor(g)?;
        let dg = w.comult(g)?;
        let mg = w.mult(g)?;
        for sq in &sqs {
            let label = || format!("{g} via ({}, {})", sq.top, sq.bottom);
            let ehk = match w.e_map(sq) {
                Ok(x) => x,
                Err(e) => {
                    lam.add(label, Err(e));
                    continue;
                }
            };
            lam.add(label, (|| {
                Ok((c.compose(&ehk, &ff.left)?, c.compose(&fg.left, &sq.top)?))
            })());
            rho.add(label, (|| {
                Ok((c.compose(&fg.right, &ehk)?, c.compose(&sq.bottom, &ff.right)?))
            })());
            del.add(label, (|| {
                let lhs = c.compose(&dg, &ehk)?;
                let rhs = c.compose(&w.e(&ff.left, &fg.left, &sq.top, &ehk)?, &df)?;
                Ok((lhs, rhs))
            })());
            mu.add(label, (|| {
                let lhs = c.compose(&mg, &w.e(&ff.right, &fg.right, &ehk, &sq.bottom)?)?;
                let rhs = c.compose(&ehk, &mf)?;
                Ok((lhs, rhs))
            })());
        }
    }
    let mut r = Report::new();
    lam.finish(&mut r, &at);
    rho.finish(&mut r, &at);
    del.finish(&mut r, &at);
    mu.finish(&mut r, &at);
    Ok(r)
}

/// `E(s₂ ∘ s₁) = E(s₂) · E(s₁)` for composable squares among `arrows`.
fn e_composition<W: Awfs>(w: &W, f: &Arr<W>, arrows: &[Arr<W>]) -> Result<Report> {
    let c = w.category();
    let mut wit = Witness::new("E-composition");
    for g in arrows {
        let first = squares(c, f, g)?;
        if first.is_empty() {
            continue;
        }
        for h in arrows {
            let second = squares(c, g, h)?;
            for s1 in &first {
                let e1 = w.e_map(s1)?;
                for s2 in &second {
                    let label = || format!("{s1} ; {s2}");
                    wit.add(label, (|| {
                        let top = c.compose(&s2.top, &s1.top)?;
                        let bottom = c.compose(&s2.bottom, &s1.bottom)?;
                        let lhs = w.e(f, h, &top, &bottom)?;
                        Ok((lhs, c.compose(&w.e_map(s2)?, &e1)?))
                    })());
                }
            }
        }
    }
    let mut r = Report::new();
    wit.finish(&mut r, &f.to_string());
    Ok(r)
}

/// Checks every law at each arrow of `arrows`, naturality over all squares
/// between them, and functoriality of `E` over composable squares between
/// arrows of `pasting`.
pub fn validate_awfs<W: Awfs>(w: &W, arrows: &[Arr<W>], pasting: &[Arr<W>]) -> Result<Report> {
    let parts: Vec<Result<Report>> = arrows
        .par_iter()
        .map(|f| {
            let mut r = per_arrow(w, f);
            if r.all_passed() {
                r.extend(naturality(w, f, arrows)?);
            }
            Ok(r)
        })
        .collect();
    let pasted: Vec<Result<Report>> = pasting
        .par_iter()
        .map(|f| e_composition(w, f, pasting))
        .collect();
    let mut report = Report::new();
    for part in parts.into_iter().chain(pasted) {
        report.extend(part?);
    }
    Ok(report)
}
