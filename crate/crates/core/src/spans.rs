//! Left weak maps over finite sets for the `P`-split-epi AWFS, presented two
//! ways: co-Kleisli arrows `QA → B` of the cofibrant replacement, and spans
//! `A ← X → B` whose left leg is a split algebra, taken up to zigzags of span
//! maps.
//!
//! A span map `r : (𝕒, f) → (𝕓, g)` is an arrow of apexes with `b·r = a`,
//! `g·r = f` and `r·σ_a = σ_b`. Every span map factors as a surjective span
//! map followed by an injective one, which is how the bounded search
//! generates neighbours.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::awfs::{
    canonical_filler, cartesian_lift, cofree_coalgebra, r_algebra_compose, split_sections, Awfs,
    PSplitEpiAwfs, QComonad, SplitAlgebra,
};
use crate::fincat::{
    co_kleisli, validate_category, Category, Comonad, Coproducts, FinSet, FinSetCategory, Func,
    Initial, KlArrow, Pullbacks,
};
use crate::report::{Report, Table};
use crate::{Error, Result};

const C: FinSetCategory = FinSetCategory;

/// An arrow `A ⇝ B` of weak maps: an arrow `QA → B`.
pub type WeakMap = KlArrow<FinSet, Func>;

/// A span `A ← X → B` whose left leg carries a section `σ : PA → X`.
#[derive(Debug, Clone, PartialEq)]
pub struct ASpan {
    pub left: SplitAlgebra<Func>,
    pub right: Func,
}

impl ASpan {
    pub fn new(left: SplitAlgebra<Func>, right: Func) -> Result<Self> {
        if left.arrow.dom() != right.dom() {
            return Err(Error::Shape(format!(
                "span legs {} and {} do not share an apex",
                left.arrow, right
            )));
        }
        Ok(ASpan { left, right })
    }

    pub fn apex(&self) -> &FinSet {
        self.left.arrow.dom()
    }

    pub fn source(&self) -> &FinSet {
        self.left.arrow.cod()
    }

    pub fn target(&self) -> &FinSet {
        self.right.cod()
    }
}

impl fmt::Display for ASpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} | σ={} ; {})",
            self.left.arrow, self.left.section, self.right
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub apex: usize,
    pub depth: usize,
}

/// One leg of a zigzag between `spans[i]` and `spans[i + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub map: Func,
    /// `map : spans[i] → spans[i+1]` when set, else `spans[i+1] → spans[i]`.
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Zigzag {
    pub spans: Vec<ASpan>,
    pub steps: Vec<Step>,
}

impl Zigzag {
    fn single(s: &ASpan) -> Self {
        Zigzag {
            spans: vec![s.clone()],
            steps: Vec::new(),
        }
    }

    fn push(&mut self, span: ASpan, map: Func, forward: bool) {
        self.spans.push(span);
        self.steps.push(Step { map, forward });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Equivalence {
    Equivalent(Zigzag),
    NotFoundWithinBounds { explored: usize },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }
}

/// A span on the standard apex `{0..n-1}` as raw index vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Raw {
    a: Vec<u32>,
    f: Vec<u32>,
    s: Vec<u32>,
}

impl Raw {
    fn of(s: &ASpan) -> Raw {
        Raw {
            a: s.left.arrow.map().to_vec(),
            f: s.right.map().to_vec(),
            s: s.left.section.map().to_vec(),
        }
    }

    fn len(&self) -> usize {
        self.a.len()
    }

    /// The canonical relabelling and the position of each old element in it.
    fn normalize(&self) -> (Raw, Vec<u32>) {
        let n = self.len();
        let mut pre = vec![Vec::new(); n];
        for (q, &x) in self.s.iter().enumerate() {
            pre[x as usize].push(q as u32);
        }
        let sig = |i: usize| (self.a[i], self.f[i], &pre[i]);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| sig(i).cmp(&sig(j)));
        let mut pos = vec![0u32; n];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k as u32;
        }
        let raw = Raw {
            a: order.iter().map(|&i| self.a[i]).collect(),
            f: order.iter().map(|&i| self.f[i]).collect(),
            s: self.s.iter().map(|&x| pos[x as usize]).collect(),
        };
        (raw, pos)
    }

    /// Image of `self` under the surjection `block : X → Y`.
    fn quotient(&self, block: &[u32], k: usize) -> Raw {
        let mut a = vec![0; k];
        let mut f = vec![0; k];
        for (i, &b) in block.iter().enumerate() {
            a[b as usize] = self.a[i];
            f[b as usize] = self.f[i];
        }
        Raw {
            a,
            f,
            s: self.s.iter().map(|&x| block[x as usize]).collect(),
        }
    }

    fn extend(&self, extra: &[(u32, u32)]) -> Raw {
        let mut r = self.clone();
        for &(a, f) in extra {
            r.a.push(a);
            r.f.push(f);
        }
        r
    }
}

/// Set partitions of `0..n` (as restricted-growth block labels) whose blocks
/// only join elements with equal `key`.
fn partitions<K: PartialEq>(keys: &[K]) -> Vec<(Vec<u32>, usize)> {
    fn go<K: PartialEq>(
        keys: &[K],
        cur: &mut Vec<u32>,
        reps: &mut Vec<usize>,
        out: &mut Vec<(Vec<u32>, usize)>,
    ) {
        let i = cur.len();
        if i == keys.len() {
            out.push((cur.clone(), reps.len()));
            return;
        }
        for b in 0..reps.len() {
            if keys[reps[b]] == keys[i] {
                cur.push(b as u32);
                go(keys, cur, reps, out);
                cur.pop();
            }
        }
        reps.push(i);
        cur.push((reps.len() - 1) as u32);
        go(keys, cur, reps, out);
        cur.pop();
        reps.pop();
    }
    let mut out = Vec::new();
    go(keys, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Non-decreasing sequences of length `m` over `0..t`.
fn multisets(t: usize, m: usize) -> Vec<Vec<u32>> {
    fn go(t: u32, m: usize, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in lo..t {
            cur.push(x);
            go(t, m, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(t as u32, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Weak maps for the `P`-split-epi AWFS on finite sets.
pub struct WeakMaps<P> {
    awfs: PSplitEpiAwfs<FinSetCategory, P>,
}

impl<P: Comonad<FinSetCategory> + Send + Sync> WeakMaps<P> {
    pub fn new(p: P) -> Self {
        WeakMaps {
            awfs: PSplitEpiAwfs::new(C, p),
        }
    }

    pub fn awfs(&self) -> &PSplitEpiAwfs<FinSetCategory, P> {
        &self.awfs
    }

    pub fn comonad(&self) -> &P {
        &self.awfs.p
    }

    fn q(&self) -> QComonad<'_, PSplitEpiAwfs<FinSetCategory, P>> {
        QComonad::new(&self.awfs)
    }

    pub fn replacement(&self, a: &FinSet) -> Result<FinSet> {
        self.q().obj(&C, a)
    }

    pub fn hom(&self, a: &FinSet, b: &FinSet) -> Result<Vec<WeakMap>> {
        co_kleisli(&C, &self.q()).hom(a, b)
    }

    pub fn identity(&self, a: &FinSet) -> Result<WeakMap> {
        Ok(co_kleisli(&C, &self.q()).lift(a, a, self.q().counit(&C, a)?))
    }

    /// `g ∘ f = g · Qf · Δ_A`.
    pub fn compose(&self, g: &WeakMap, f: &WeakMap) -> Result<WeakMap> {
        co_kleisli(&C, &self.q()).compose(g, f)
    }

    /// `Jf = f · ε_A`.
    pub fn cofree(&self, f: &Func) -> Result<WeakMap> {
        let arr = f.after(&self.q().counit(&C, f.dom())?)?;
        Ok(co_kleisli(&C, &self.q()).lift(f.dom(), f.cod(), arr))
    }

    /// `θ_A = ⟨!, 1⟩ : QA = 0 + PA → PA`.
    pub fn theta(&self, a: &FinSet) -> Result<Func> {
        let pa = self.comonad().obj(&C, a)?;
        C.copair(&C.initial_arrow(&pa)?, &Func::identity(&pa))
    }

    /// The splitting `σ · θ_B : B ⇝ X` of an algebra `𝕒 : X → B`.
    pub fn star(&self, alg: &SplitAlgebra<Func>) -> Result<WeakMap> {
        let b = alg.arrow.cod();
        let arr = alg.section.after(&self.theta(b)?)?;
        Ok(co_kleisli(&C, &self.q()).lift(b, alg.arrow.dom(), arr))
    }

    /// `φ : QB → X`, the canonical filler of the free coalgebra on `!_B`
    /// against `𝕒` over the square `(!_X, ε_B)`.
    pub fn phi(&self, alg: &SplitAlgebra<Func>) -> Result<Func> {
        let b = alg.arrow.cod();
        let bang = C.initial_arrow(b)?;
        let co = cofree_coalgebra(&self.awfs, &bang)?;
        let u = C.initial_arrow(alg.arrow.dom())?;
        let v = self.awfs.right(&bang)?;
        canonical_filler(&self.awfs, &co, &alg.to_algebra(&C)?, &u, &v)
    }

    /// Category laws of the weak maps, the functor `J`, and the splittings
    /// `φ`, on the full subcategory spanned by `objects`.
    pub fn validate(&self, objects: &[FinSet]) -> Result<Report> {
        let q = self.q();
        let kl = co_kleisli(&C, &q);
        let mut r = validate_category(&kl, objects)?;
        for a in objects {
            let at = a.to_string();
            r.equal("cofree-identity", &at, &self.cofree(&Func::identity(a))?, &kl.id(a));
            let eps = q.counit(&C, a)?;
            r.holds("counit-split-epi", &at, eps.is_surjective(), || {
                (eps.to_string(), "surjective".into())
            });
            for b in objects {
                let homs = Func::all(a, b);
                let images: BTreeSet<Vec<u32>> = homs
                    .iter()
                    .map(|f| Ok(self.cofree(f)?.arr.map().to_vec()))
                    .collect::<Result<_>>()?;
                if eps.is_surjective() {
                    r.holds("cofree-faithful", format!("{a} -> {b}"), images.len() == homs.len(), || {
                        (format!("{} images", images.len()), format!("{} arrows", homs.len()))
                    });
                }
                for c in objects {
                    for f in &homs {
                        for g in Func::all(b, c) {
                            let lhs = self.cofree(&g.after(f)?)?;
                            let rhs = self.compose(&self.cofree(&g)?, &self.cofree(f)?)?;
                            if lhs != rhs {
                                r.equal("cofree-composition", format!("{g} . {f}"), &lhs, &rhs);
                            }
                        }
                    }
                }
                for f in &homs {
                    for alg in split_sections(&C, self.comonad(), f)? {
                        let at = format!("{} with σ={}", f, alg.section);
                        let phi = self.phi(&alg)?;
                        r.equal("phi-splits", &at, &f.after(&phi)?, &eps_of(&q, b)?);
                        r.equal("phi-is-star", &at, &phi, &self.star(&alg)?.arr);
                    }
                }
            }
            let one = SplitAlgebra::identity(&C, self.comonad(), a)?;
            let phi = self.phi(&one)?;
            r.equal("phi-identity", &at, &phi, &eps);
        }
        Ok(r)
    }

    /// `(fr !_A, k)` with apex `QA`.
    pub fn kleisli_to_span(&self, k: &WeakMap) -> Result<ASpan> {
        let bang = C.initial_arrow(&k.src)?;
        let left = SplitAlgebra::new(&self.awfs.right(&bang)?, &self.awfs.free_section(&bang)?);
        ASpan::new(left, k.arr.clone())
    }

    /// `f · σ · θ_A`.
    pub fn span_to_kleisli(&self, s: &ASpan) -> Result<WeakMap> {
        let arr = s.right.after(&s.left.section)?.after(&self.theta(s.source())?)?;
        Ok(co_kleisli(&C, &self.q()).lift(s.source(), s.target(), arr))
    }

    /// `(𝟙_A, f)`.
    pub fn embed(&self, f: &Func) -> Result<ASpan> {
        ASpan::new(SplitAlgebra::identity(&C, self.comonad(), f.dom())?, f.clone())
    }

    /// `(𝕒 · 𝕡, g · q)` where `𝕡` is `𝕓` pulled back along `f`.
    pub fn compose_spans(&self, s1: &ASpan, s2: &ASpan) -> Result<ASpan> {
        if s1.target() != s2.source() {
            return Err(Error::NotComposable(format!("{s2} . {s1}")));
        }
        let pb = C.pullback(&s1.right, &s2.left.arrow)?;
        let lifted = cartesian_lift(self.comonad(), &s2.left, &pb.p1, &pb.p2, &s1.right)?;
        let left = r_algebra_compose(&C, self.comonad(), &lifted, &s1.left)?;
        ASpan::new(left, s2.right.after(&pb.p2)?)
    }

    pub fn is_valid(&self, s: &ASpan) -> Result<bool> {
        s.left.is_valid(&C, self.comonad())
    }

    pub fn is_span_map(&self, s: &ASpan, t: &ASpan, r: &Func) -> Result<bool> {
        Ok(r.dom() == s.apex()
            && r.cod() == t.apex()
            && s.source() == t.source()
            && s.target() == t.target()
            && t.left.arrow.after(r)? == s.left.arrow
            && t.right.after(r)? == s.right
            && r.after(&s.left.section)? == t.left.section)
    }

    /// For each apex element of `s`, the admissible images in `t`; `None`
    /// when there is no span map.
    fn candidates(&self, s: &ASpan, t: &ASpan) -> Option<Vec<Vec<u32>>> {
        if s.source() != t.source() || s.target() != t.target() {
            return None;
        }
        let n = s.apex().len();
        let mut forced: Vec<Option<u32>> = vec![None; n];
        for (q, &x) in s.left.section.map().iter().enumerate() {
            let y = t.left.section.map()[q];
            match forced[x as usize] {
                Some(z) if z != y => return None,
                _ => forced[x as usize] = Some(y),
            }
        }
        let fits = |x: usize, y: u32| {
            t.left.arrow.apply(y as usize) == s.left.arrow.apply(x)
                && t.right.apply(y as usize) == s.right.apply(x)
        };
        let mut out = Vec::with_capacity(n);
        for (x, f) in forced.iter().enumerate() {
            let opts: Vec<u32> = match f {
                Some(y) => vec![*y],
                None => (0..t.apex().len() as u32).collect(),
            };
            let opts: Vec<u32> = opts.into_iter().filter(|&y| fits(x, y)).collect();
            if opts.is_empty() {
                return None;
            }
            out.push(opts);
        }
        Some(out)
    }

    pub fn first_span_map(&self, s: &ASpan, t: &ASpan) -> Result<Option<Func>> {
        match self.candidates(s, t) {
            None => Ok(None),
            Some(c) => Ok(Some(Func::new(
                s.apex().clone(),
                t.apex().clone(),
                c.iter().map(|o| o[0]).collect(),
            )?)),
        }
    }

    /// Every span map `s → t`, lexicographically.
    pub fn span_maps(&self, s: &ASpan, t: &ASpan) -> Result<Vec<Func>> {
        let Some(c) = self.candidates(s, t) else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        let mut idx = vec![0usize; c.len()];
        loop {
            let map = idx.iter().zip(&c).map(|(&i, o)| o[i]).collect();
            out.push(Func::new(s.apex().clone(), t.apex().clone(), map)?);
            let mut k = c.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < c[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    pub fn verify_zigzag(&self, z: &Zigzag, s1: &ASpan, s2: &ASpan) -> Result<bool> {
        if z.spans.first() != Some(s1) || z.spans.last() != Some(s2) {
            return Ok(false);
        }
        if z.spans.len() != z.steps.len() + 1 {
            return Ok(false);
        }
        for (i, step) in z.steps.iter().enumerate() {
            let (s, t) = if step.forward {
                (&z.spans[i], &z.spans[i + 1])
            } else {
                (&z.spans[i + 1], &z.spans[i])
            };
            if !self.is_span_map(s, t, &step.map)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn from_raw(&self, a: &FinSet, b: &FinSet, raw: &Raw) -> Result<ASpan> {
        let x = FinSet::standard(raw.len());
        let pa = self.comonad().obj(&C, a)?;
        let left = SplitAlgebra::new(
            &Func::new(x.clone(), a.clone(), raw.a.clone())?,
            &Func::new(pa, x.clone(), raw.s.clone())?,
        );
        ASpan::new(left, Func::new(x, b.clone(), raw.f.clone())?)
    }

    /// `s` relabelled canonically, with the isomorphism from `s`.
    pub fn normalize(&self, s: &ASpan) -> Result<(ASpan, Func)> {
        let (raw, pos) = Raw::of(s).normalize();
        let t = self.from_raw(s.source(), s.target(), &raw)?;
        let iso = Func::new(s.apex().clone(), t.apex().clone(), pos)?;
        Ok((t, iso))
    }

    /// Zigzag-connects `s1` and `s2`: equality, then a single span map, then
    /// the canonical span of a shared image mapping into both, then a
    /// breadth-first search over normalised spans of apex `≤ bounds.apex`
    /// using at most `bounds.depth` span maps.
    pub fn span_equiv(&self, s1: &ASpan, s2: &ASpan, bounds: Bounds) -> Result<Equivalence> {
        if s1.source() != s2.source() || s1.target() != s2.target() {
            return Err(Error::Shape(format!("spans {s1} and {s2} have different boundaries")));
        }
        let mut z = Zigzag::single(s1);
        if s1 == s2 {
            return Ok(Equivalence::Equivalent(z));
        }
        if let Some(r) = self.first_span_map(s1, s2)? {
            z.push(s2.clone(), r, true);
            return Ok(Equivalence::Equivalent(z));
        }
        if let Some(r) = self.first_span_map(s2, s1)? {
            z.push(s2.clone(), r, false);
            return Ok(Equivalence::Equivalent(z));
        }
        let k = self.span_to_kleisli(s1)?;
        if k == self.span_to_kleisli(s2)? && bounds.depth >= 2 {
            let top = self.kleisli_to_span(&k)?;
            if top.apex().len() <= bounds.apex {
                if let (Some(r1), Some(r2)) =
                    (self.first_span_map(&top, s1)?, self.first_span_map(&top, s2)?)
                {
                    z.push(top, r1, false);
                    z.push(s2.clone(), r2, true);
                    return Ok(Equivalence::Equivalent(z));
                }
            }
        }
        self.search(s1, s2, bounds)
    }

    fn search(&self, s1: &ASpan, s2: &ASpan, bounds: Bounds) -> Result<Equivalence> {
        let (a, b) = (s1.source(), s1.target());
        let (start, _) = Raw::of(s1).normalize();
        let (goal, _) = Raw::of(s2).normalize();
        let mut parent: HashMap<Raw, Option<(Raw, Vec<u32>, bool)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([(start.clone(), 0usize)]);
        let mut found = start == goal;
        while let Some((node, d)) = queue.pop_front() {
            if found || d >= bounds.depth {
                continue;
            }
            for (next, map, forward) in self.neighbours(a, b, &node, bounds.apex)? {
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some((node.clone(), map, forward)));
                if next == goal {
                    found = true;
                    break;
                }
                queue.push_back((next, d + 1));
            }
        }
        if !found {
            return Ok(Equivalence::NotFoundWithinBounds {
                explored: parent.len(),
            });
        }
        let mut chain = vec![(goal.clone(), None)];
        let mut cur = goal;
        while let Some(Some((prev, map, forward))) = parent.get(&cur) {
            chain.push((prev.clone(), Some((map.clone(), *forward))));
            cur = prev.clone();
        }
        chain.reverse();
        // chain[i] carries the step from chain[i] to chain[i+1] in slot i+1.
        let (n1, iso1) = self.normalize(s1)?;
        let mut z = Zigzag::single(s1);
        if n1 != *s1 {
            z.push(n1, iso1, true);
        }
        for i in 1..chain.len() {
            let (node, step) = &chain[i];
            let (map, forward) = step.clone().expect("non-root nodes have a parent");
            let span = self.from_raw(a, b, node)?;
            let prev = z.spans.last().expect("zigzag is non-empty").apex().clone();
            let map = if forward {
                Func::new(prev, span.apex().clone(), map)?
            } else {
                Func::new(span.apex().clone(), prev, map)?
            };
            z.push(span, map, forward);
        }
        let (n2, iso2) = self.normalize(s2)?;
        if n2 != *s2 {
            z.push(s2.clone(), iso2.inverse()?, true);
        }
        Ok(Equivalence::Equivalent(z))
    }

    /// Normalised spans joined to `s` by one span map, each with the map
    /// expressed on normalised apexes and its direction.
    fn neighbours(&self, a: &FinSet, b: &FinSet, s: &Raw, max: usize) -> Result<Vec<(Raw, Vec<u32>, bool)>> {
        let labels = (a.len() * b.len()) as u32;
        let kinds = |k: u32| (k / b.len() as u32, k % b.len() as u32);
        let n = s.len();
        let mut seen = BTreeMap::new();
        // Outgoing: a quotient followed by adjoining fresh elements.
        let keys: Vec<(u32, u32)> = (0..n).map(|i| (s.a[i], s.f[i])).collect();
        for (block, k) in partitions(&keys) {
            let quotient = s.quotient(&block, k);
            for m in 0..=max.saturating_sub(k) {
                for extra in multisets(labels as usize, m) {
                    let extra: Vec<(u32, u32)> = extra.into_iter().map(kinds).collect();
                    let t = quotient.extend(&extra);
                    let (t, pos) = t.normalize();
                    let map: Vec<u32> = block.iter().map(|&y| pos[y as usize]).collect();
                    if t != *s || map.iter().enumerate().any(|(i, &y)| i as u32 != y) {
                        seen.entry((t, true)).or_insert(map);
                    }
                }
            }
        }
        // Incoming: a surjective cover of a sub-span containing the image of σ.
        let hit: BTreeSet<u32> = s.s.iter().copied().collect();
        let free: Vec<u32> = (0..n as u32).filter(|x| !hit.contains(x)).collect();
        for mask in 0u32..(1 << free.len()) {
            let keep: Vec<u32> = (0..n as u32)
                .filter(|x| hit.contains(x) || free.iter().position(|y| y == x).is_some_and(|i| mask & (1 << i) != 0))
                .collect();
            let k = keep.len();
            for m in k..=max {
                for (t, map) in covers(s, &keep, m) {
                    let (t, pos) = t.normalize();
                    let mut inv = vec![0u32; m];
                    for (old, &new) in pos.iter().enumerate() {
                        inv[new as usize] = map[old];
                    }
                    seen.entry((t, false)).or_insert(inv);
                }
            }
        }
        Ok(seen.into_iter().map(|((t, fwd), map)| (t, map, fwd)).collect())
    }

    /// All normalised spans `A → B` with apex of size `≤ max`, sorted.
    pub fn spans(&self, a: &FinSet, b: &FinSet, max: usize) -> Result<Vec<ASpan>> {
        let eps = self.comonad().counit(&C, a)?;
        let keys: Vec<u32> = eps.map().to_vec();
        let mut all = BTreeSet::new();
        for (block, k) in partitions(&keys) {
            if k > max {
                continue;
            }
            let mut block_a = vec![0u32; k];
            for (q, &bl) in block.iter().enumerate() {
                block_a[bl as usize] = keys[q];
            }
            for fb in Func::all(&FinSet::standard(k), b) {
                for m in 0..=max - k {
                    for extra in multisets(a.len() * b.len(), m) {
                        let mut raw = Raw {
                            a: block_a.clone(),
                            f: fb.map().to_vec(),
                            s: block.clone(),
                        };
                        for e in extra {
                            raw.a.push(e / b.len() as u32);
                            raw.f.push(e % b.len() as u32);
                        }
                        all.insert(raw.normalize().0);
                    }
                }
            }
        }
        all.iter().map(|raw| self.from_raw(a, b, raw)).collect()
    }

    /// Compares the two presentations of weak maps `A ⇝ B`: exact round trip,
    /// invariance of `span_to_kleisli` under span maps between spans of apex
    /// `≤ min(bounds.apex, 4)`, and a verified zigzag from every span of apex
    /// `≤ bounds.apex` to the canonical span of its image.
    pub fn compare_hom(&self, a: &FinSet, b: &FinSet, bounds: Bounds) -> Result<Report> {
        let at = format!("{a} -> {b}");
        let mut r = Report::new();
        let homs = self.hom(a, b)?;
        let mut trip = None;
        for k in &homs {
            let s = self.kleisli_to_span(k)?;
            let back = self.span_to_kleisli(&s)?;
            if !self.is_valid(&s)? || back != *k {
                trip.get_or_insert((k.to_string(), back.to_string()));
            }
        }
        let roundtrip = trip.is_none();
        r.holds("roundtrip", &at, roundtrip, || trip.expect("failure recorded"));

        let spans = self.spans(a, b, bounds.apex)?;
        let images: Vec<WeakMap> = spans.iter().map(|s| self.span_to_kleisli(s)).collect::<Result<_>>()?;
        let small: Vec<usize> = (0..spans.len()).filter(|&i| spans[i].apex().len() <= bounds.apex.min(4)).collect();
        let bad: Vec<Option<String>> = small
            .par_iter()
            .map(|&i| {
                for &j in &small {
                    for m in self.span_maps(&spans[i], &spans[j])? {
                        if images[i] != images[j] {
                            return Ok(Some(format!("{} --{m}--> {}", spans[i], spans[j])));
                        }
                    }
                }
                Ok(None)
            })
            .collect::<Result<_>>()?;
        let bad = bad.into_iter().flatten().next();
        let invariance = bad.is_none();
        r.holds("span-map-invariance", format!("{at} ({} spans)", small.len()), invariance, || {
            (bad.expect("failure recorded"), "equal images".into())
        });

        let outcomes: Vec<Result<Option<(String, String)>>> = spans
            .par_iter()
            .zip(&images)
            .map(|(s, k)| {
                let canon = self.kleisli_to_span(k)?;
                Ok(match self.span_equiv(s, &canon, bounds)? {
                    Equivalence::Equivalent(z) if self.verify_zigzag(&z, s, &canon)? => None,
                    Equivalence::Equivalent(_) => Some((s.to_string(), "invalid witness".into())),
                    Equivalence::NotFoundWithinBounds { explored } => {
                        Some((s.to_string(), format!("inconclusive after {explored} spans")))
                    }
                })
            })
            .collect();
        let mut unreached = None;
        for o in outcomes {
            if let Some(x) = o? {
                unreached.get_or_insert(x);
            }
        }
        r.holds("reaches-canonical", format!("{at} ({} spans)", spans.len()), unreached.is_none(), || {
            unreached.expect("failure recorded")
        });

        let classes: BTreeSet<Vec<u32>> = images.iter().map(|k| k.arr.map().to_vec()).collect();
        r.holds("class-count", &at, classes.len() == homs.len(), || {
            (classes.len().to_string(), homs.len().to_string())
        });
        let ok = |b: bool| if b { "OK" } else { "FAIL" }.to_string();
        r.table(Table {
            name: "weak-maps".into(),
            columns: ["A", "B", "kleisli_count", "bounded_span_class_count", "roundtrip", "invariance"]
                .map(String::from)
                .to_vec(),
            rows: vec![vec![
                a.to_string(),
                b.to_string(),
                homs.len().to_string(),
                classes.len().to_string(),
                ok(roundtrip),
                ok(invariance),
            ]],
        });
        Ok(r)
    }

    /// `span_to_kleisli` sends composites of spans to composites of weak maps.
    pub fn check_functoriality(&self, a: &FinSet, b: &FinSet, c: &FinSet, max: usize) -> Result<Report> {
        let left = self.spans(a, b, max)?;
        let right = self.spans(b, c, max)?;
        let mut bad = None;
        let mut count = 0;
        for s1 in &left {
            for s2 in &right {
                let comp = self.compose_spans(s1, s2)?;
                let lhs = self.span_to_kleisli(&comp)?;
                let rhs = self.compose(&self.span_to_kleisli(s2)?, &self.span_to_kleisli(s1)?)?;
                count += 1;
                if lhs != rhs || !self.is_valid(&comp)? {
                    bad.get_or_insert((format!("{s2} . {s1}: {lhs}"), rhs.to_string()));
                }
            }
        }
        let mut r = Report::new();
        r.holds("span-functoriality", format!("{a} -> {b} -> {c} ({count} pairs)"), bad.is_none(), || {
            bad.expect("failure recorded")
        });
        Ok(r)
    }

    /// `a : (𝕒, a) → (𝟙_A, 1_A)` is a span map for every algebra `𝕒`.
    pub fn check_right_connected(&self, objects: &[FinSet]) -> Result<Report> {
        let mut r = Report::new();
        for x in objects {
            for a in objects {
                for f in Func::all(x, a) {
                    for alg in split_sections(&C, self.comonad(), &f)? {
                        let s = ASpan::new(alg.clone(), f.clone())?;
                        let t = self.embed(&Func::identity(a))?;
                        let ok = self.is_span_map(&s, &t, &f)?;
                        r.holds("right-connected-span-map", format!("{f} with σ={}", alg.section), ok, || {
                            (s.to_string(), t.to_string())
                        });
                    }
                }
            }
        }
        Ok(r)
    }
}

fn eps_of<W: Awfs<C = FinSetCategory>>(q: &QComonad<'_, W>, b: &FinSet) -> Result<Func> {
    q.counit(&C, b)
}

/// Spans `t` on `m` elements with a surjection `t → s|keep` that is a span
/// map, each with that surjection written into `s`'s apex.
fn covers(s: &Raw, keep: &[u32], m: usize) -> Vec<(Raw, Vec<u32>)> {
    let k = keep.len();
    let mut out = Vec::new();
    let local = |x: u32| keep.iter().position(|&y| y == x).expect("σ lands in kept elements");
    for sizes in compositions(m, k) {
        let mut a = Vec::with_capacity(m);
        let mut f = Vec::with_capacity(m);
        let mut map = Vec::with_capacity(m);
        let mut start = Vec::with_capacity(k);
        for (i, &x) in keep.iter().enumerate() {
            start.push(a.len());
            for _ in 0..sizes[i] {
                a.push(s.a[x as usize]);
                f.push(s.f[x as usize]);
                map.push(x);
            }
        }
        // Every lift of σ through the cover.
        let fibres: Vec<usize> = s.s.iter().map(|&x| sizes[local(x)]).collect();
        for pick in products(&fibres) {
            let sec = s
                .s
                .iter()
                .zip(&pick)
                .map(|(&x, &i)| (start[local(x)] + i) as u32)
                .collect();
            out.push((
                Raw {
                    a: a.clone(),
                    f: f.clone(),
                    s: sec,
                },
                map.clone(),
            ));
        }
    }
    out
}

/// Compositions of `m` into `k` positive parts.
fn compositions(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=m.saturating_sub(k - 1) {
        for mut rest in compositions(m - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every index vector `i` with `i[j] < sizes[j]`, lexicographically.
fn products(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..n).map(move |i| {
                    let mut w = v.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{Coreader, IdentityComonad};

    fn coreader() -> WeakMaps<Coreader> {
        WeakMaps::new(Coreader::new(FinSet::new(["s", "t"]).unwrap()))
    }

    fn set(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().copied()).unwrap()
    }

    const BOUNDS: Bounds = Bounds { apex: 4, depth: 4 };

    #[test]
    fn weak_maps_from_point_to_pair() {
        let w = coreader();
        assert_eq!(w.hom(&set(&["x"]), &set(&["u", "v"])).unwrap().len(), 4);
    }

    #[test]
    fn weak_map_category_laws() {
        let objs: Vec<FinSet> = (0..=2).map(FinSet::standard).collect();
        let r = coreader().validate(&objs).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        let r = WeakMaps::new(IdentityComonad).validate(&objs).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn identity_span_goes_to_identity() {
        let w = coreader();
        let a = set(&["x", "y"]);
        let s = w.embed(&Func::identity(&a)).unwrap();
        assert_eq!(w.span_to_kleisli(&s).unwrap(), w.identity(&a).unwrap());
        let canon = w.kleisli_to_span(&w.identity(&a).unwrap()).unwrap();
        assert_eq!(canon.apex().len(), 4);
        assert!(w.span_equiv(&s, &canon, BOUNDS).unwrap().is_equivalent());
    }

    #[test]
    fn canonical_span_of_constant() {
        let w = coreader();
        let (x, uv) = (set(&["x"]), set(&["u", "v"]));
        let qa = w.replacement(&x).unwrap();
        let k = w.hom(&x, &uv).unwrap()[0].clone();
        assert_eq!(k.arr, Func::constant(&qa, &uv, 0).unwrap());
        let s = w.kleisli_to_span(&k).unwrap();
        assert_eq!(s.apex(), &qa);
        assert_eq!(s.left.arrow, w.awfs().right(&C.initial_arrow(&x).unwrap()).unwrap());
        assert!(w.is_valid(&s).unwrap());
        assert_eq!(w.span_to_kleisli(&s).unwrap(), k);
    }

    #[test]
    fn composing_with_identity() {
        let w = coreader();
        let (a, b) = (FinSet::standard(1), FinSet::standard(2));
        for s in w.spans(&a, &b, 3).unwrap() {
            let left = w.compose_spans(&w.embed(&Func::identity(&a)).unwrap(), &s).unwrap();
            let right = w.compose_spans(&s, &w.embed(&Func::identity(&b)).unwrap()).unwrap();
            for t in [left, right] {
                let e = w.span_equiv(&t, &s, BOUNDS).unwrap();
                let Equivalence::Equivalent(z) = e else { panic!("{t} vs {s}") };
                assert!(w.verify_zigzag(&z, &t, &s).unwrap());
            }
        }
    }

    #[test]
    fn pullback_apex_of_point_spans() {
        let w = coreader();
        let pt = FinSet::standard(1);
        let k = w.hom(&pt, &pt).unwrap().remove(0);
        let s = w.kleisli_to_span(&k).unwrap();
        let comp = w.compose_spans(&s, &s).unwrap();
        assert_eq!(comp.apex().len(), C.pullback(&s.right, &s.left.arrow).unwrap().object.len());
        assert_eq!(comp.apex().len(), 4);
    }

    #[test]
    fn composition_associative_up_to_span_map() {
        let w = coreader();
        let pt = FinSet::standard(1);
        let two = FinSet::standard(2);
        let s1 = w.kleisli_to_span(&w.hom(&pt, &two).unwrap()[1]).unwrap();
        let s2 = w.kleisli_to_span(&w.hom(&two, &pt).unwrap()[0]).unwrap();
        let s3 = w.kleisli_to_span(&w.hom(&pt, &two).unwrap()[2]).unwrap();
        let l = w.compose_spans(&w.compose_spans(&s1, &s2).unwrap(), &s3).unwrap();
        let r = w.compose_spans(&s1, &w.compose_spans(&s2, &s3).unwrap()).unwrap();
        assert_eq!(l.apex().len(), r.apex().len());
        let maps = w.span_maps(&l, &r).unwrap();
        assert!(maps.iter().any(Func::is_bijective));
    }

    #[test]
    fn equal_spans_need_no_steps() {
        let w = coreader();
        let s = w.spans(&FinSet::standard(1), &FinSet::standard(2), 2).unwrap().remove(3);
        let Equivalence::Equivalent(z) = w.span_equiv(&s, &s, BOUNDS).unwrap() else { panic!() };
        assert!(z.is_empty());
    }

    #[test]
    fn precomposite_is_one_step() {
        let w = coreader();
        let (a, b) = (FinSet::standard(1), FinSet::standard(2));
        let spans = w.spans(&a, &b, 3).unwrap();
        let mut checked = 0;
        for s in &spans {
            for t in &spans {
                if let Some(r) = w.first_span_map(s, t).unwrap() {
                    if s == t {
                        continue;
                    }
                    assert!(w.is_span_map(s, t, &r).unwrap());
                    let Equivalence::Equivalent(z) = w.span_equiv(s, t, BOUNDS).unwrap() else { panic!() };
                    assert_eq!(z.len(), 1);
                    checked += 1;
                }
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn distinct_canonical_spans_are_not_connected() {
        let w = coreader();
        let (a, b) = (FinSet::standard(1), FinSet::standard(2));
        let homs = w.hom(&a, &b).unwrap();
        let s1 = w.kleisli_to_span(&homs[0]).unwrap();
        let s2 = w.kleisli_to_span(&homs[1]).unwrap();
        let e = w.span_equiv(&s1, &s2, BOUNDS).unwrap();
        assert!(matches!(e, Equivalence::NotFoundWithinBounds { explored } if explored > 1));
        assert_ne!(w.span_to_kleisli(&s1).unwrap(), w.span_to_kleisli(&s2).unwrap());
    }

    #[test]
    fn search_finds_longer_zigzags() {
        let w = coreader();
        let (a, b) = (FinSet::standard(1), FinSet::standard(2));
        let spans = w.spans(&a, &b, 3).unwrap();
        let canon = w.kleisli_to_span(&w.span_to_kleisli(&spans[5]).unwrap()).unwrap();
        let e = w.search(&spans[5], &canon, BOUNDS).unwrap();
        let Equivalence::Equivalent(z) = e else { panic!() };
        assert!(w.verify_zigzag(&z, &spans[5], &canon).unwrap());
    }

    #[test]
    fn compare_point_to_pair() {
        let w = coreader();
        let bounds = Bounds { apex: 6, depth: 4 };
        let r = w.compare_hom(&FinSet::standard(1), &FinSet::standard(2), bounds).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert_eq!(r.tables[0].rows[0][2..4], ["4".to_string(), "4".to_string()]);
        let r = w.compare_hom(&FinSet::standard(1), &FinSet::standard(1), bounds).unwrap();
        assert_eq!(r.tables[0].rows[0][2..4], ["1".to_string(), "1".to_string()]);
    }

    #[test]
    fn compare_split_epi() {
        let w = WeakMaps::new(IdentityComonad);
        for (a, b) in [(1, 2), (2, 2), (0, 1)] {
            let (a, b) = (FinSet::standard(a), FinSet::standard(b));
            let bounds = Bounds { apex: a.len() + 2, depth: 4 };
            let r = w.compare_hom(&a, &b, bounds).unwrap();
            assert!(r.all_passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn functoriality_and_right_connectedness() {
        let w = coreader();
        let (one, two) = (FinSet::standard(1), FinSet::standard(2));
        let r = w.check_functoriality(&one, &two, &one, 3).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        let r = w.check_right_connected(&[one, two]).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn partitions_and_multisets() {
        assert_eq!(partitions(&[0, 0, 0]).len(), 5);
        assert_eq!(partitions(&[0, 1, 0]).len(), 2);
        assert_eq!(multisets(4, 2).len(), 10);
        assert_eq!(multisets(0, 0).len(), 1);
    }

    #[test]
    fn covers_count() {
        let s = Raw {
            a: vec![0, 0],
            f: vec![0, 1],
            s: vec![0, 0],
        };
        // Fibre sizes (1,2), (2,1): the section picks one of the fibre over 0.
        let cs = covers(&s, &[0, 1], 3);
        assert_eq!(cs.len(), 1 * 1 + 2 * 2);
    }
}
