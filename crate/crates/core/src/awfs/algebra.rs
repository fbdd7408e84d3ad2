//! Coalgebras, algebras, canonical fillers, and the `P`-split-epi double
//! category of algebras with its cartesian lifts.

use super::{square_commutes, Arr, Awfs, Square};
use crate::fincat::{Category, Comonad, Coproducts, FinSetCategory, Func, Pullbacks};
use crate::report::Report;
use crate::{Error, Result};

/// An `L`-coalgebra: `s : B → Ef` on `f : A → B`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coalgebra<A> {
    pub arrow: A,
    pub s: A,
}

/// An `R`-algebra: `p : Eg → C` on `g : C → D`.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra<A> {
    pub arrow: A,
    pub p: A,
}

pub fn cofree_coalgebra<W: Awfs>(w: &W, f: &Arr<W>) -> Result<Coalgebra<Arr<W>>> {
    Ok(Coalgebra {
        arrow: w.left(f)?,
        s: w.comult(f)?,
    })
}

pub fn free_algebra<W: Awfs>(w: &W, f: &Arr<W>) -> Result<Algebra<Arr<W>>> {
    Ok(Algebra {
        arrow: w.right(f)?,
        p: w.mult(f)?,
    })
}

/// `s·f = λf`, `ρf·s = 1`, `Δ_f·s = E(1, s)·s`.
pub fn coalgebra_laws<W: Awfs>(w: &W, co: &Coalgebra<Arr<W>>) -> Result<Report> {
    let c = w.category();
    let (f, s) = (&co.arrow, &co.s);
    let at = format!("{f} with {s}");
    let fac = w.factor(f)?;
    let mut r = Report::new();
    if c.dom(s) != c.cod(f) || c.cod(s) != fac.mid {
        r.fail("coalgebra-shape", &at, s, format!("{} -> {}", c.cod(f), fac.mid));
        return Ok(r);
    }
    r.equal("coalgebra-left", &at, &c.compose(s, f)?, &fac.left);
    r.equal("coalgebra-counit", &at, &c.compose(&fac.right, s)?, &c.id(&c.cod(f)));
    let lhs = c.compose(&w.comult(f)?, s)?;
    let rhs = c.compose(&w.e(f, &fac.left, &c.id(&c.dom(f)), s)?, s)?;
    r.equal("coalgebra-coassociativity", &at, &lhs, &rhs);
    Ok(r)
}

/// `g·p = ρg`, `p·λg = 1`, `p·μ_g = p·E(p, 1)`.
pub fn algebra_laws<W: Awfs>(w: &W, alg: &Algebra<Arr<W>>) -> Result<Report> {
    let c = w.category();
    let (g, p) = (&alg.arrow, &alg.p);
    let at = format!("{g} with {p}");
    let fac = w.factor(g)?;
    let mut r = Report::new();
    if c.dom(p) != fac.mid || c.cod(p) != c.dom(g) {
        r.fail("algebra-shape", &at, p, format!("{} -> {}", fac.mid, c.dom(g)));
        return Ok(r);
    }
    r.equal("algebra-right", &at, &c.compose(g, p)?, &fac.right);
    r.equal("algebra-unit", &at, &c.compose(p, &fac.left)?, &c.id(&c.dom(g)));
    let rr = w.right(&fac.right)?;
    let lhs = c.compose(p, &w.mult(g)?)?;
    let rhs = c.compose(p, &w.e(&rr, g, p, &c.id(&c.cod(g)))?)?;
    r.equal("algebra-associativity", &at, &lhs, &rhs);
    Ok(r)
}

/// Every coalgebra structure on `f`, by exhausting `hom(B, Ef)`.
pub fn coalgebras_on<W: Awfs>(w: &W, f: &Arr<W>) -> Result<Vec<Coalgebra<Arr<W>>>> {
    let c = w.category();
    let mut out = Vec::new();
    for s in c.hom(&c.cod(f), &w.middle(f)?)? {
        let co = Coalgebra {
            arrow: f.clone(),
            s,
        };
        if coalgebra_laws(w, &co)?.all_passed() {
            out.push(co);
        }
    }
    Ok(out)
}

/// Every algebra structure on `g`, by exhausting `hom(Eg, C)`.
pub fn algebras_on<W: Awfs>(w: &W, g: &Arr<W>) -> Result<Vec<Algebra<Arr<W>>>> {
    let c = w.category();
    let mut out = Vec::new();
    for p in c.hom(&w.middle(g)?, &c.dom(g))? {
        let alg = Algebra {
            arrow: g.clone(),
            p,
        };
        if algebra_laws(w, &alg)?.all_passed() {
            out.push(alg);
        }
    }
    Ok(out)
}

/// `j = p · E(u, v) · s` for a square `(u, v) : f → g`, with both triangles
/// `j·f = u` and `g·j = v` verified.
pub fn canonical_filler<W: Awfs>(
    w: &W,
    co: &Coalgebra<Arr<W>>,
    alg: &Algebra<Arr<W>>,
    u: &Arr<W>,
    v: &Arr<W>,
) -> Result<Arr<W>> {
    let c = w.category();
    let sq = Square::new(&co.arrow, &alg.arrow, u, v);
    if !square_commutes(c, &sq)? {
        return Err(Error::Invalid(format!("square {sq} does not commute")));
    }
    let j = c.comp(&[&alg.p, &w.e_map(&sq)?, &co.s])?;
    if c.compose(&j, &co.arrow)? != *u || c.compose(&alg.arrow, &j)? != *v {
        return Err(Error::Law(format!("filler {j} of {sq} is not a diagonal")));
    }
    Ok(j)
}

/// An arrow `f : A → B` with a co-Kleisli section `σ : PB → A`,
/// `f·σ = ε_B`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitAlgebra<A> {
    pub arrow: A,
    pub section: A,
}

impl<A: Clone> SplitAlgebra<A> {
    pub fn new(arrow: &A, section: &A) -> Self {
        SplitAlgebra {
            arrow: arrow.clone(),
            section: section.clone(),
        }
    }
}

impl<A: Clone + PartialEq> SplitAlgebra<A> {
    pub fn is_valid<C, P>(&self, c: &C, p: &P) -> Result<bool>
    where
        C: Category<Arr = A>,
        P: Comonad<C> + ?Sized,
    {
        let b = c.cod(&self.arrow);
        Ok(c.dom(&self.section) == p.obj(c, &b)?
            && c.cod(&self.section) == c.dom(&self.arrow)
            && c.compose(&self.arrow, &self.section)? == p.counit(c, &b)?)
    }

    /// The identity arrow with section `ε_B`.
    pub fn identity<C, P>(c: &C, p: &P, b: &C::Obj) -> Result<Self>
    where
        C: Category<Arr = A>,
        P: Comonad<C> + ?Sized,
    {
        Ok(SplitAlgebra {
            arrow: c.id(b),
            section: p.counit(c, b)?,
        })
    }

    /// The structure `⟨1_A, σ⟩ : A + PB → A` for the `P`-split-epi AWFS.
    pub fn to_algebra<C>(&self, c: &C) -> Result<Algebra<A>>
    where
        C: Coproducts<Arr = A>,
    {
        Ok(Algebra {
            arrow: self.arrow.clone(),
            p: c.copair(&c.id(&c.dom(&self.arrow)), &self.section)?,
        })
    }
}

/// Every section making `f` a `P`-split epi.
pub fn split_sections<C, P>(c: &C, p: &P, f: &C::Arr) -> Result<Vec<SplitAlgebra<C::Arr>>>
where
    C: Category,
    P: Comonad<C> + ?Sized,
{
    let b = c.cod(f);
    let eps = p.counit(c, &b)?;
    let mut out = Vec::new();
    for s in c.hom(&p.obj(c, &b)?, &c.dom(f))? {
        if c.compose(f, &s)? == eps {
            out.push(SplitAlgebra::new(f, &s));
        }
    }
    Ok(out)
}

/// `h · g` with section `σ_g · Pσ_h · Δ_D`, the co-Kleisli composite of the
/// sections.
pub fn r_algebra_compose<C, P>(
    c: &C,
    p: &P,
    g: &SplitAlgebra<C::Arr>,
    h: &SplitAlgebra<C::Arr>,
) -> Result<SplitAlgebra<C::Arr>>
where
    C: Category,
    P: Comonad<C> + ?Sized,
{
    if c.cod(&g.arrow) != c.dom(&h.arrow) {
        return Err(Error::NotComposable(format!("{} then {}", g.arrow, h.arrow)));
    }
    let d = c.cod(&h.arrow);
    let section = c.comp(&[&g.section, &p.arr(c, &h.section)?, &p.comult(c, &d)?])?;
    Ok(SplitAlgebra {
        arrow: c.compose(&h.arrow, &g.arrow)?,
        section,
    })
}

/// Is `(u, v) : a → b` a square of algebras: `b·u = v·a` and
/// `u·σ_a = σ_b·Pv`?
pub fn is_split_square<C, P>(
    c: &C,
    p: &P,
    a: &SplitAlgebra<C::Arr>,
    b: &SplitAlgebra<C::Arr>,
    u: &C::Arr,
    v: &C::Arr,
) -> Result<bool>
where
    C: Category,
    P: Comonad<C> + ?Sized,
{
    if c.compose(&b.arrow, u)? != c.compose(v, &a.arrow)? {
        return Ok(false);
    }
    Ok(c.compose(u, &a.section)? == c.compose(&b.section, &p.arr(c, v)?)?)
}

/// The structure on `f` induced by pulling `g` back along the pullback
/// square `(u, v) : f → g`: the section is the mediating arrow of the cone
/// `(ε_B, σ_g · Pv)`.
pub fn cartesian_lift<P>(
    p: &P,
    g: &SplitAlgebra<Func>,
    f: &Func,
    u: &Func,
    v: &Func,
) -> Result<SplitAlgebra<Func>>
where
    P: Comonad<FinSetCategory> + ?Sized,
{
    let c = FinSetCategory;
    if !c.is_pullback_square(f, &g.arrow, u, v)? {
        return Err(Error::Invalid(format!(
            "({u}, {v}) : {f} => {} is not a pullback square",
            g.arrow
        )));
    }
    let b = f.cod();
    let x1 = p.counit(&c, b)?;
    let x2 = c.compose(&g.section, &p.arr(&c, v)?)?;
    let into_chosen = c.mediate(v, &g.arrow, &x1, &x2)?;
    let comparison = c.mediate(v, &g.arrow, f, u)?;
    let section = c.compose(&comparison.inverse()?, &into_chosen)?;
    Ok(SplitAlgebra::new(f, &section))
}
