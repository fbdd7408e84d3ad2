//! Exhaustive batteries over the standard finite sets `0, 1, ..., max`.

use rayon::prelude::*;

use super::{
    algebras_on, canonical_filler, cartesian_lift, check_fibrant_replacement,
    check_replacement_iso, coalgebras_on, em_algebras, finset_arrows, is_split_square,
    model_by_lifts, model_by_squares, r_algebra_compose, sketch_canonical_lift, split_sections,
    squares, validate_awfs, Awfs, PSplitEpiAwfs, QComonad, Sketch, SketchTriangle, SplitAlgebra,
    SplitEpiAwfs, SplitMono, TSplitMonoAwfs,
};
use crate::fincat::{
    validate_comonad, Comonad, Coreader, Exception, FinSet, FinSetCategory, Func,
    IdentityComonad, Pullbacks,
};
use crate::report::Report;
use crate::Result;

/// Counts checks of one named property and keeps the first failure.
struct Tally {
    name: &'static str,
    at: String,
    checked: usize,
    failure: Option<(String, String, String)>,
}

impl Tally {
    fn new(name: &'static str, at: impl Into<String>) -> Self {
        Tally {
            name,
            at: at.into(),
            checked: 0,
            failure: None,
        }
    }

    fn add(&mut self, ok: bool, detail: impl FnOnce() -> (String, String, String)) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }

    fn finish(self, r: &mut Report) {
        match self.failure {
            Some((w, l, rhs)) => r.fail(self.name, format!("{} [{w}]", self.at), l, rhs),
            None => r.pass(self.name, format!("{} ({} cases)", self.at, self.checked)),
        }
    }
}

fn objects(max: usize) -> Vec<FinSet> {
    (0..=max).map(FinSet::standard).collect()
}

pub fn coreader(s: usize) -> Coreader {
    Coreader::new(FinSet::standard(s))
}

pub fn exception(e: usize) -> Exception {
    Exception::new(FinSet::standard(e))
}

/// Every AWFS law on arrows between sets of size `≤ max`, with functoriality
/// of `E` pasted over sets of size `≤ min(max, 2)`.
pub fn awfs_laws<W: Awfs<C = FinSetCategory>>(w: &W, max: usize) -> Result<Report> {
    validate_awfs(w, &finset_arrows(max), &finset_arrows(max.min(2)))
}

/// The replacement comonad of the `P`-split-epi AWFS passes the comonad
/// laws and is isomorphic to `P`.
pub fn replacement<P: Comonad<FinSetCategory> + Clone>(p: &P, max: usize) -> Result<Report> {
    let w = PSplitEpiAwfs::new(FinSetCategory, p.clone());
    let q = QComonad::new(&w);
    let objs = objects(max);
    let mut r = validate_comonad(&FinSetCategory, &q, &objs)?;
    r.extend(check_replacement_iso(&w, p, &objs)?);
    Ok(r)
}

/// The split-epi replacement is isomorphic to the identity.
pub fn split_replacement(max: usize) -> Result<Report> {
    let w = SplitEpiAwfs::new(FinSetCategory);
    let objs = objects(max);
    let mut r = validate_comonad(&FinSetCategory, &QComonad::new(&w), &objs)?;
    r.extend(check_replacement_iso(&w, &IdentityComonad, &objs)?);
    Ok(r)
}

pub fn fibrant_replacement(e: usize, max: usize) -> Result<Report> {
    check_fibrant_replacement(&TSplitMonoAwfs::new(exception(e)), &objects(max))
}

/// Canonical fillers of every coalgebra on `f` against every algebra on `g`
/// over every square `f → g`, one line per `f`.
pub fn fillers<W: Awfs<C = FinSetCategory>>(w: &W, max: usize) -> Result<Report> {
    let arrows = finset_arrows(max);
    let algebras: Vec<_> = arrows
        .iter()
        .map(|g| algebras_on(w, g))
        .collect::<Result<_>>()?;
    let parts: Vec<Result<Tally>> = arrows
        .par_iter()
        .map(|f| {
            let mut t = Tally::new("canonical-filler", f.to_string());
            for co in coalgebras_on(w, f)? {
                for (g, algs) in arrows.iter().zip(&algebras) {
                    if algs.is_empty() {
                        continue;
                    }
                    for sq in squares(&FinSetCategory, f, g)? {
                        for alg in algs {
                            let res = canonical_filler(w, &co, alg, &sq.top, &sq.bottom);
                            t.add(res.is_ok(), || {
                                (format!("{} / {} / {sq}", co.s, alg.p), format!("{res:?}"), "diagonal".into())
                            });
                        }
                    }
                }
            }
            Ok(t)
        })
        .collect();
    let mut r = Report::new();
    for t in parts {
        t?.finish(&mut r);
    }
    Ok(r)
}

fn all_split<P: Comonad<FinSetCategory>>(p: &P, max: usize) -> Result<Vec<SplitAlgebra<Func>>> {
    let mut out = Vec::new();
    for f in finset_arrows(max) {
        out.extend(split_sections(&FinSetCategory, p, &f)?);
    }
    Ok(out)
}

/// Composition of `P`-split epis: validity, unitality, associativity, the
/// sequential-lifting characterisation and vertical pasting of squares.
pub fn composition<P: Comonad<FinSetCategory> + Clone>(p: &P, max: usize) -> Result<Report> {
    let c = FinSetCategory;
    let w = PSplitEpiAwfs::new(c, p.clone());
    let algs = all_split(p, max)?;
    let composable = |g: &SplitAlgebra<Func>, h: &SplitAlgebra<Func>| g.arrow.cod() == h.arrow.dom();
    let mut valid = Tally::new("compose-section", "all composable pairs");
    let mut unital = Tally::new("compose-unital", "all algebras");
    let mut assoc = Tally::new("compose-associative", "all composable triples");
    for g in &algs {
        let left = r_algebra_compose(&c, p, &SplitAlgebra::identity(&c, p, g.arrow.dom())?, g)?;
        let right = r_algebra_compose(&c, p, g, &SplitAlgebra::identity(&c, p, g.arrow.cod())?)?;
        unital.add(left == *g && right == *g, || {
            (g.section.to_string(), left.section.to_string(), right.section.to_string())
        });
        for h in algs.iter().filter(|h| composable(g, h)) {
            let gh = r_algebra_compose(&c, p, g, h)?;
            valid.add(gh.is_valid(&c, p)?, || {
                (format!("{} then {}", g.arrow, h.arrow), gh.section.to_string(), "a section".into())
            });
            for k in algs.iter().filter(|k| composable(h, k)) {
                let l = r_algebra_compose(&c, p, &gh, k)?;
                let rr = r_algebra_compose(&c, p, g, &r_algebra_compose(&c, p, h, k)?)?;
                assoc.add(l == rr, || (k.arrow.to_string(), l.section.to_string(), rr.section.to_string()));
            }
        }
    }
    let mut r = Report::new();
    valid.finish(&mut r);
    unital.finish(&mut r);
    assoc.finish(&mut r);

    // Lifting against h·g equals lifting against h and then against g.
    let arrows = finset_arrows(max);
    let coalgebras: Vec<_> = arrows
        .iter()
        .map(|f| coalgebras_on(&w, f))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let pairs: Vec<(&SplitAlgebra<Func>, &SplitAlgebra<Func>)> = algs
        .iter()
        .flat_map(|g| algs.iter().filter(move |h| composable(g, h)).map(move |h| (g, h)))
        .collect();
    let parts: Vec<Result<Tally>> = pairs
        .par_iter()
        .map(|(g, h)| {
            let mut t = Tally::new("compose-lifts", "");
            let gh = r_algebra_compose(&c, p, g, h)?;
            let (ag, ah, agh) = (g.to_algebra(&c)?, h.to_algebra(&c)?, gh.to_algebra(&c)?);
            for co in &coalgebras {
                for sq in squares(&c, &co.arrow, &gh.arrow)? {
                    let (u, v) = (&sq.top, &sq.bottom);
                    let direct = canonical_filler(&w, co, &agh, u, v)?;
                    let first = canonical_filler(&w, co, &ah, &g.arrow.after(u)?, v)?;
                    let second = canonical_filler(&w, co, &ag, u, &first)?;
                    t.add(direct == second, || (sq.to_string(), direct.to_string(), second.to_string()));
                }
            }
            Ok(t)
        })
        .collect();
    let mut lifts = Tally::new("compose-lifts", "all composable pairs and coalgebras");
    for t in parts {
        lifts.merge(t?);
    }
    lifts.finish(&mut r);

    // Squares compose vertically and horizontally; identities are squares.
    let mut ident = Tally::new("square-identity", "all algebras");
    for a in &algs {
        let ok = is_split_square(&c, p, a, a, &Func::identity(a.arrow.dom()), &Func::identity(a.arrow.cod()))?;
        ident.add(ok, || (a.section.to_string(), "not a square".into(), "square".into()));
    }
    ident.finish(&mut r);
    let parts: Vec<Result<(Tally, Tally)>> = pairs
        .par_iter()
        .map(|(g, h)| {
            let mut vert = Tally::new("square-vertical", "");
            let mut horiz = Tally::new("square-horizontal", "");
            let gh = r_algebra_compose(&c, p, g, h)?;
            for (g2, h2) in &pairs {
                let gh2 = r_algebra_compose(&c, p, g2, h2)?;
                for u in Func::all(g.arrow.dom(), g2.arrow.dom()) {
                    for v in Func::all(g.arrow.cod(), g2.arrow.cod()) {
                        if !is_split_square(&c, p, g, g2, &u, &v)? {
                            continue;
                        }
                        for x in Func::all(h.arrow.cod(), h2.arrow.cod()) {
                            if !is_split_square(&c, p, h, h2, &v, &x)? {
                                continue;
                            }
                            let ok = is_split_square(&c, p, &gh, &gh2, &u, &x)?;
                            vert.add(ok, || (format!("{u} / {v} / {x}"), "not a square".into(), "square".into()));
                        }
                    }
                }
            }
            // Horizontal: (u, v): g → h-shaped targets are pasted along g.
            for g2 in algs.iter().filter(|g2| g2.arrow.dom().len() <= 2) {
                for u in Func::all(g.arrow.dom(), g2.arrow.dom()) {
                    for v in Func::all(g.arrow.cod(), g2.arrow.cod()) {
                        if !is_split_square(&c, p, g, g2, &u, &v)? {
                            continue;
                        }
                        for g3 in [h, g] {
                            if g3.arrow.dom().len() > 2 {
                                continue;
                            }
                            for u2 in Func::all(g2.arrow.dom(), g3.arrow.dom()) {
                                for v2 in Func::all(g2.arrow.cod(), g3.arrow.cod()) {
                                    if !is_split_square(&c, p, g2, g3, &u2, &v2)? {
                                        continue;
                                    }
                                    let ok = is_split_square(&c, p, g, g3, &u2.after(&u)?, &v2.after(&v)?)?;
                                    horiz.add(ok, || (format!("{u} / {u2}"), "not a square".into(), "square".into()));
                                }
                            }
                        }
                    }
                }
            }
            Ok((vert, horiz))
        })
        .collect();
    let mut vert = Tally::new("square-vertical", "all composable pairs");
    let mut horiz = Tally::new("square-horizontal", "all algebras");
    for part in parts {
        let (v, h) = part?;
        vert.merge(v);
        horiz.merge(h);
    }
    vert.finish(&mut r);
    horiz.finish(&mut r);
    Ok(r)
}

/// Cartesian lifts along chosen pullbacks: validity, uniqueness, and the
/// detection property against every algebra and candidate square.
pub fn cartesian<P: Comonad<FinSetCategory>>(p: &P, max: usize) -> Result<Report> {
    let c = FinSetCategory;
    let algs = all_split(p, max)?;
    let objs = objects(max);
    let cases: Vec<(&SplitAlgebra<Func>, Func)> = algs
        .iter()
        .flat_map(|g| {
            objs.iter()
                .flat_map(move |b| Func::all(b, g.arrow.cod()).into_iter().map(move |v| (g, v)))
        })
        .collect();
    let parts: Vec<Result<[Tally; 3]>> = cases
        .par_iter()
        .map(|(g, v)| {
            let mut lifted_ok = Tally::new("cartesian-lift", "");
            let mut unique = Tally::new("cartesian-unique", "");
            let mut detect = Tally::new("cartesian-detection", "");
            let pb = c.pullback(v, &g.arrow)?;
            let (f, u) = (&pb.p1, &pb.p2);
            let lifted = cartesian_lift(p, g, f, u, v)?;
            let ok = lifted.is_valid(&c, p)? && is_split_square(&c, p, &lifted, g, u, v)?;
            lifted_ok.add(ok, || (format!("{} along {v}", g.arrow), lifted.section.to_string(), "square".into()));
            let mut n = 0;
            for cand in split_sections(&c, p, f)? {
                if is_split_square(&c, p, &cand, g, u, v)? {
                    n += 1;
                }
            }
            unique.add(n == 1, || (format!("{} along {v}", g.arrow), format!("{n} structures"), "1".into()));
            for e in &algs {
                for x in Func::all(e.arrow.dom(), f.dom()) {
                    for y in Func::all(e.arrow.cod(), f.cod()) {
                        if f.after(&x)? != y.after(&e.arrow)? {
                            continue;
                        }
                        let into_f = is_split_square(&c, p, e, &lifted, &x, &y)?;
                        let into_g = is_split_square(&c, p, e, g, &u.after(&x)?, &v.after(&y)?)?;
                        detect.add(into_f == into_g, || {
                            (format!("{} via ({x}, {y})", e.arrow), into_f.to_string(), into_g.to_string())
                        });
                    }
                }
            }
            Ok([lifted_ok, unique, detect])
        })
        .collect();
    let mut totals = [
        Tally::new("cartesian-lift", "all algebras and base changes"),
        Tally::new("cartesian-unique", "all algebras and base changes"),
        Tally::new("cartesian-detection", "all algebras and base changes"),
    ];
    for part in parts {
        for (t, x) in totals.iter_mut().zip(part?) {
            t.merge(x);
        }
    }
    let mut r = Report::new();
    for t in totals {
        t.finish(&mut r);
    }
    Ok(r)
}

/// `(f, 1_B) : 𝕗 → 𝟙_B` is a square for every algebra, and the identity
/// structure is the only algebra structure on an identity.
pub fn right_connected<P: Comonad<FinSetCategory> + Clone>(p: &P, max: usize) -> Result<Report> {
    let c = FinSetCategory;
    let w = PSplitEpiAwfs::new(c, p.clone());
    let mut conn = Tally::new("right-connected", "all algebras");
    for f in all_split(p, max)? {
        let b = f.arrow.cod();
        let one = SplitAlgebra::identity(&c, p, b)?;
        let ok = is_split_square(&c, p, &f, &one, &f.arrow, &Func::identity(b))?;
        conn.add(ok, || (f.section.to_string(), "not a square".into(), "square".into()));
    }
    let mut r = Report::new();
    conn.finish(&mut r);
    for b in objects(max) {
        let id = Func::identity(&b);
        let structures = algebras_on(&w, &id)?;
        let expected = SplitAlgebra::identity(&c, p, &b)?.to_algebra(&c)?;
        r.holds(
            "identity-algebra-unique",
            b.to_string(),
            structures.len() == 1 && structures[0] == expected,
            || (format!("{} structures", structures.len()), "1".into()),
        );
    }
    Ok(r)
}

/// Canonical lifts for `T`-split monos and the agreement of the two model
/// predicates, over the exception monad `(-) + E`.
pub fn sketches(e: usize, max: usize) -> Result<Report> {
    let t = exception(e);
    let w = TSplitMonoAwfs::new(t.clone());
    let objs = objects(max);
    let monos: Vec<SplitMono> = finset_arrows(max)
        .iter()
        .map(|j| SplitMono::all_on(&t, j))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let algebras: Vec<(FinSet, Vec<Func>)> = objs
        .iter()
        .map(|a| Ok((a.clone(), em_algebras(&t, a)?)))
        .collect::<Result<_>>()?;
    let mut lift = Tally::new("sketch-lift", "all split monos, algebras and maps");
    let mut filler = Tally::new("sketch-lift-is-filler", "all split monos, algebras and maps");
    for mono in &monos {
        let co = mono.coalgebra()?;
        for (a, structures) in &algebras {
            for alg in structures {
                let bang = FinSetCategory.terminal_arrow(a);
                let p2 = FinSetCategory.product(&FinSetCategory.terminal(), &w.t_obj(a)?).2;
                let ralg = super::Algebra {
                    arrow: bang,
                    p: alg.after(&p2)?,
                };
                for h in Func::all(mono.j.dom(), a) {
                    let hbar = sketch_canonical_lift(&t, mono, alg, &h)?;
                    lift.add(hbar.after(&mono.j)? == h, || (h.to_string(), hbar.to_string(), "extends h".into()));
                    let v = FinSetCategory.terminal_arrow(mono.j.cod());
                    let j = canonical_filler(&w, &co, &ralg, &h, &v)?;
                    filler.add(j == hbar, || (h.to_string(), j.to_string(), hbar.to_string()));
                }
            }
        }
    }
    let mut r = Report::new();
    lift.finish(&mut r);
    filler.finish(&mut r);

    let mut sketches = Vec::new();
    for x in &objs {
        let triangles: Vec<SketchTriangle> = monos
            .iter()
            .flat_map(|m| {
                Func::all(m.j.cod(), x).into_iter().map(move |phi| SketchTriangle {
                    mono: m.clone(),
                    phi,
                })
            })
            .collect();
        for (i, t1) in triangles.iter().enumerate() {
            sketches.push(Sketch {
                x: x.clone(),
                triangles: vec![t1.clone()],
            });
            if x.len() <= 1 {
                for t2 in &triangles[i + 1..] {
                    sketches.push(Sketch {
                        x: x.clone(),
                        triangles: vec![t1.clone(), t2.clone()],
                    });
                }
            }
        }
    }
    let parts: Vec<Result<(Tally, usize)>> = sketches
        .par_iter()
        .map(|s| {
            let mut agree = Tally::new("sketch-model-predicates", "");
            let mut models = 0;
            for (a, structures) in &algebras {
                for alg in structures {
                    for f in Func::all(&s.x, a) {
                        let by_squares = model_by_squares(&t, s, alg, &f)?;
                        let by_lifts = model_by_lifts(&w, s, alg, &f)?;
                        models += usize::from(by_squares);
                        agree.add(by_squares == by_lifts, || {
                            (format!("{f} into {alg}"), by_squares.to_string(), by_lifts.to_string())
                        });
                    }
                }
            }
            Ok((agree, models))
        })
        .collect();
    let mut agree = Tally::new("sketch-model-predicates", format!("{} sketches", sketches.len()));
    let mut models = 0;
    for part in parts {
        let (t, m) = part?;
        agree.merge(t);
        models += m;
    }
    agree.finish(&mut r);
    r.holds("sketch-models-exist", "all sketches", models > 0, || ("0 models".into(), "> 0".into()));
    Ok(r)
}

impl<T: crate::fincat::Monad<FinSetCategory>> TSplitMonoAwfs<T> {
    fn t_obj(&self, a: &FinSet) -> Result<FinSet> {
        self.t.obj(&FinSetCategory, a)
    }
}

/// The full battery for one built-in family.
pub fn full(builtin: &str, max: usize, param: usize) -> Result<Report> {
    let c = FinSetCategory;
    let mut r = Report::new();
    match builtin {
        "splitepi" => {
            let w = SplitEpiAwfs::new(c);
            r.extend(awfs_laws(&w, max)?);
            r.extend(split_replacement(max)?);
            r.extend(fillers(&w, max.min(2))?);
            r.extend(composition(&IdentityComonad, max.min(2))?);
            r.extend(cartesian(&IdentityComonad, max.min(2))?);
            r.extend(right_connected(&IdentityComonad, max.min(2))?);
        }
        "psplitepi" => {
            let p = coreader(param);
            let w = PSplitEpiAwfs::new(c, p.clone());
            r.extend(awfs_laws(&w, max)?);
            r.extend(replacement(&p, max.max(1).min(3))?);
            r.extend(fillers(&w, max.min(2))?);
            r.extend(composition(&p, max.min(2))?);
            r.extend(cartesian(&p, max.min(2))?);
            r.extend(right_connected(&p, max.min(2))?);
        }
        "tsplitmono" => {
            let w = TSplitMonoAwfs::new(exception(param));
            r.extend(awfs_laws(&w, max)?);
            r.extend(fibrant_replacement(param, max)?);
            r.extend(fillers(&w, max.min(2))?);
            r.extend(sketches(param, max.min(2))?);
        }
        other => {
            return Err(crate::Error::Invalid(format!(
                "unknown AWFS `{other}` (expected splitepi, psplitepi or tsplitmono)"
            )))
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Initial;

    #[test]
    fn fillers_small() {
        let r = fillers(&SplitEpiAwfs::new(FinSetCategory), 1).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn composition_small() {
        let r = composition(&coreader(2), 1).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn cartesian_small() {
        let r = cartesian(&coreader(2), 1).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn right_connected_small() {
        let r = right_connected(&coreader(2), 2).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn sketches_small() {
        let r = sketches(1, 1).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn free_split_epi_pulled_back_along_a_point() {
        let c = FinSetCategory;
        let p = coreader(2);
        let w = PSplitEpiAwfs::new(c, p.clone());
        let pt = FinSet::standard(1);
        let bang = c.initial_arrow(&pt).unwrap();
        let rho = w.right(&bang).unwrap();
        let free = SplitAlgebra::new(&rho, &w.free_section(&bang).unwrap());
        assert!(free.is_valid(&c, &p).unwrap());
        let v = Func::identity(&pt);
        let pb = c.pullback(&v, &rho).unwrap();
        let lifted = cartesian_lift(&p, &free, &pb.p1, &pb.p2, &v).unwrap();
        assert!(lifted.is_valid(&c, &p).unwrap());
        assert!(is_split_square(&c, &p, &lifted, &free, &pb.p2, &v).unwrap());
    }

    #[test]
    fn unknown_builtin() {
        assert!(full("nope", 1, 1).is_err());
    }
}
