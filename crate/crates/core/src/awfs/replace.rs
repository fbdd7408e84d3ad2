//! The cofibrant replacement comonad `QB = E(!_B)`.

use super::{Awfs, Square};
use crate::fincat::{Category, Comonad, Coproducts, Initial};
use crate::report::Report;
use crate::{Error, Result};

/// `QB = E(!_B)`, `ε_B = ρ(!_B)`, `Qk = E(1_0, k)`, `Δ_B = Δ_{!_B}`.
///
/// `Δ_{!_B}` lands in `E(λ(!_B))`, which is `QQB` because `λ(!_B)` is the
/// chosen initial arrow into `QB`; [`QComonad::comult`] checks this.
pub struct QComonad<'a, W> {
    pub awfs: &'a W,
}

impl<'a, W: Awfs> QComonad<'a, W>
where
    W::C: Initial,
{
    pub fn new(awfs: &'a W) -> Self {
        QComonad { awfs }
    }

    fn bang(&self, b: &<W::C as Category>::Obj) -> Result<<W::C as Category>::Arr> {
        self.awfs.category().initial_arrow(b)
    }
}

impl<W: Awfs> Comonad<W::C> for QComonad<'_, W>
where
    W::C: Initial,
{
    fn obj(&self, _: &W::C, b: &<W::C as Category>::Obj) -> Result<<W::C as Category>::Obj> {
        self.awfs.middle(&self.bang(b)?)
    }

    fn arr(&self, c: &W::C, k: &<W::C as Category>::Arr) -> Result<<W::C as Category>::Arr> {
        let src = self.bang(&c.dom(k))?;
        let tgt = self.bang(&c.cod(k))?;
        let zero = c.id(&c.initial()?);
        self.awfs.e_map(&Square::new(&src, &tgt, &zero, k))
    }

    fn counit(&self, _: &W::C, b: &<W::C as Category>::Obj) -> Result<<W::C as Category>::Arr> {
        self.awfs.right(&self.bang(b)?)
    }

    fn comult(&self, c: &W::C, b: &<W::C as Category>::Obj) -> Result<<W::C as Category>::Arr> {
        let bang = self.bang(b)?;
        let fac = self.awfs.factor(&bang)?;
        if fac.left != c.initial_arrow(&fac.mid)? {
            return Err(Error::Law(format!(
                "λ(!_{b}) = {} is not the initial arrow into {}",
                fac.left, fac.mid
            )));
        }
        self.awfs.comult(&bang)
    }
}

/// Checks that `θ_B = ⟨!_{PB}, 1_{PB}⟩ : 0 + PB → PB` is a natural
/// isomorphism `Q ≅ P` of comonads, where `Q` is the cofibrant replacement
/// of `w` and `QB` is the chosen coproduct `0 + PB`.
pub fn check_replacement_iso<W, P>(
    w: &W,
    p: &P,
    objects: &[<W::C as Category>::Obj],
) -> Result<Report>
where
    W: Awfs,
    W::C: Initial + Coproducts,
    P: Comonad<W::C> + ?Sized,
{
    let c = w.category();
    let q = QComonad::new(w);
    let zero = c.initial()?;
    let theta = |b: &<W::C as Category>::Obj| -> Result<_> {
        let pb = p.obj(c, b)?;
        c.copair(&c.initial_arrow(&pb)?, &c.id(&pb))
    };
    let mut r = Report::new();
    for b in objects {
        let at = b.to_string();
        let bang = c.initial_arrow(b)?;
        let fac = w.factor(&bang)?;
        r.equal("lambda-initial", &at, &fac.left, &c.initial_arrow(&fac.mid)?);
        let pb = p.obj(c, b)?;
        let cp = c.coproduct(&zero, &pb)?;
        r.equal("replacement-object", &at, &q.obj(c, b)?, &cp.object);
        let th = theta(b)?;
        let inv = cp.inr;
        r.equal("theta-inverse-left", &at, &c.compose(&th, &inv)?, &c.id(&pb));
        r.equal("theta-inverse-right", &at, &c.compose(&inv, &th)?, &c.id(&cp.object));
        let lhs = c.compose(&p.counit(c, b)?, &th)?;
        r.equal("theta-counit", &at, &lhs, &q.counit(c, b)?);
        let qb = q.obj(c, b)?;
        let lhs = c.compose(&p.comult(c, b)?, &th)?;
        let rhs = c.comp(&[&p.arr(c, &th)?, &theta(&qb)?, &q.comult(c, b)?])?;
        r.equal("theta-comult", &at, &lhs, &rhs);
        for b2 in objects {
            for k in c.hom(b, b2)? {
                let lhs = c.compose(&p.arr(c, &k)?, &th)?;
                let rhs = c.compose(&theta(b2)?, &q.arr(c, &k)?)?;
                r.equal("theta-natural", k.to_string(), &lhs, &rhs);
            }
        }
    }
    Ok(r)
}
