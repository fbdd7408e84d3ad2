use std::fmt;
use std::sync::Arc;

use super::{Category, Coproduct, Coproducts, Initial, Pullback, Pullbacks};
use crate::{Error, Result};

/// A finite set of string labels, ordered.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSet(Arc<Vec<String>>);

impl FinSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate element `{l}`")));
            }
        }
        Ok(FinSet(Arc::new(labels)))
    }

    /// `{0, 1, ..., n-1}`.
    pub fn standard(n: usize) -> Self {
        FinSet(Arc::new((0..n).map(|i| i.to_string()).collect()))
    }

    pub fn empty() -> Self {
        FinSet(Arc::new(Vec::new()))
    }

    pub fn point() -> Self {
        FinSet(Arc::new(vec!["*".to_string()]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }

    /// `A × B` with elements `(a,b)` in lexicographic order.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        for a in self.labels() {
            for b in other.labels() {
                labels.push(format!("({a},{b})"));
            }
        }
        FinSet(Arc::new(labels))
    }

    /// `A + B` tagged with `L:` and `R:`.
    pub fn sum(&self, other: &FinSet) -> FinSet {
        let labels = self
            .labels()
            .iter()
            .map(|a| format!("L:{a}"))
            .chain(other.labels().iter().map(|b| format!("R:{b}")))
            .collect();
        FinSet(Arc::new(labels))
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A total function between finite sets; equality is graph equality with
/// domain and codomain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Func {
    dom: FinSet,
    cod: FinSet,
    map: Vec<u32>,
}

impl Func {
    pub fn new(dom: FinSet, cod: FinSet, map: Vec<u32>) -> Result<Self> {
        if map.len() != dom.len() || map.iter().any(|&y| y as usize >= cod.len()) {
            return Err(Error::Invalid(format!(
                "{map:?} is not a function {dom} -> {cod}"
            )));
        }
        Ok(Func { dom, cod, map })
    }

    pub fn from_fn(dom: &FinSet, cod: &FinSet, f: impl Fn(usize) -> usize) -> Result<Self> {
        Func::new(
            dom.clone(),
            cod.clone(),
            (0..dom.len()).map(|i| f(i) as u32).collect(),
        )
    }

    /// Builds a function from `(element, image)` label pairs.
    pub fn from_pairs(dom: &FinSet, cod: &FinSet, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut map = vec![u32::MAX; dom.len()];
        for (x, y) in pairs {
            let i = dom
                .index_of(x)
                .ok_or_else(|| Error::UnknownObject(x.to_string()))?;
            let j = cod
                .index_of(y)
                .ok_or_else(|| Error::UnknownObject(y.to_string()))?;
            map[i] = j as u32;
        }
        Func::new(dom.clone(), cod.clone(), map)
    }

    pub fn identity(a: &FinSet) -> Self {
        Func {
            dom: a.clone(),
            cod: a.clone(),
            map: (0..a.len() as u32).collect(),
        }
    }

    pub fn constant(dom: &FinSet, cod: &FinSet, y: usize) -> Result<Self> {
        Func::from_fn(dom, cod, |_| y)
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    pub fn apply_label(&self, x: &str) -> Option<&str> {
        self.dom.index_of(x).map(|i| self.cod.label(self.apply(i)))
    }

    /// `self · f`.
    pub fn after(&self, f: &Func) -> Result<Func> {
        if f.cod != self.dom {
            return Err(Error::NotComposable(format!("{self} after {f}")));
        }
        Ok(Func {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            map: f.map.iter().map(|&i| self.map[i as usize]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &y in &self.map {
            seen[y as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Result<Func> {
        if !self.is_bijective() {
            return Err(Error::Invalid(format!("{self} is not invertible")));
        }
        let mut map = vec![0u32; self.dom.len()];
        for (i, &y) in self.map.iter().enumerate() {
            map[y as usize] = i as u32;
        }
        Func::new(self.cod.clone(), self.dom.clone(), map)
    }

    /// All functions `a → b`, lexicographic in their graphs.
    pub fn all(a: &FinSet, b: &FinSet) -> Vec<Func> {
        let n = a.len();
        let m = b.len() as u32;
        if n == 0 {
            return vec![Func::new(a.clone(), b.clone(), Vec::new()).unwrap()];
        }
        if m == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            out.push(Func {
                dom: a.clone(),
                cod: b.clone(),
                map: cur.clone(),
            });
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < m {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &y) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}->{}", self.dom.label(i), self.cod.label(y as usize))?;
        }
        write!(f, "]:{}->{}", self.dom, self.cod)
    }
}

impl fmt::Debug for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The category of finite sets; objects exist on demand.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FinSetCategory;

impl FinSetCategory {
    pub fn terminal(&self) -> FinSet {
        FinSet::point()
    }

    pub fn terminal_arrow(&self, a: &FinSet) -> Func {
        Func::from_fn(a, &FinSet::point(), |_| 0).unwrap()
    }

    pub fn product(&self, a: &FinSet, b: &FinSet) -> (FinSet, Func, Func) {
        let p = a.product(b);
        let m = b.len().max(1);
        let p1 = Func::from_fn(&p, a, |i| i / m).unwrap();
        let p2 = Func::from_fn(&p, b, |i| i % m).unwrap();
        (p, p1, p2)
    }

    /// `⟨f, g⟩ : X → A × B`.
    pub fn pair(&self, f: &Func, g: &Func) -> Result<Func> {
        if f.dom() != g.dom() {
            return Err(Error::NotComposable(format!("pair of {f} and {g}")));
        }
        let p = f.cod().product(g.cod());
        let m = g.cod().len();
        Func::from_fn(f.dom(), &p, |i| f.apply(i) * m + g.apply(i))
    }

    /// `h × k`.
    pub fn product_map(&self, h: &Func, k: &Func) -> Result<Func> {
        let (_, p1, p2) = self.product(h.dom(), k.dom());
        self.pair(&h.after(&p1)?, &k.after(&p2)?)
    }

    /// Is the square `g·u = v·f` (with `f: A→B`, `g: C→D`) a pullback?
    pub fn is_pullback_square(&self, f: &Func, g: &Func, u: &Func, v: &Func) -> Result<bool> {
        if g.after(u)? != v.after(f)? {
            return Ok(false);
        }
        Ok(self.mediate(v, g, f, u)?.is_bijective())
    }
}

impl Category for FinSetCategory {
    type Obj = FinSet;
    type Arr = Func;

    fn dom(&self, f: &Func) -> FinSet {
        f.dom.clone()
    }

    fn cod(&self, f: &Func) -> FinSet {
        f.cod.clone()
    }

    fn id(&self, a: &FinSet) -> Func {
        Func::identity(a)
    }

    fn compose(&self, g: &Func, f: &Func) -> Result<Func> {
        g.after(f)
    }

    fn hom(&self, a: &FinSet, b: &FinSet) -> Result<Vec<Func>> {
        Ok(Func::all(a, b))
    }

    fn has_object(&self, _a: &FinSet) -> bool {
        true
    }
}

impl Coproducts for FinSetCategory {
    fn coproduct(&self, a: &FinSet, b: &FinSet) -> Result<Coproduct<FinSet, Func>> {
        let object = a.sum(b);
        let inl = Func::from_fn(a, &object, |i| i)?;
        let inr = Func::from_fn(b, &object, |i| a.len() + i)?;
        Ok(Coproduct { object, inl, inr })
    }

    fn copair(&self, f: &Func, g: &Func) -> Result<Func> {
        if f.cod() != g.cod() {
            return Err(Error::NotComposable(format!("copair of {f} and {g}")));
        }
        let object = f.dom().sum(g.dom());
        let n = f.dom().len();
        Func::from_fn(&object, f.cod(), |i| {
            if i < n {
                f.apply(i)
            } else {
                g.apply(i - n)
            }
        })
    }

    fn sum_map(&self, h: &Func, k: &Func) -> Result<Func> {
        let dom = h.dom().sum(k.dom());
        let cod = h.cod().sum(k.cod());
        let n = h.dom().len();
        let m = h.cod().len();
        Func::from_fn(&dom, &cod, |i| {
            if i < n {
                h.apply(i)
            } else {
                m + k.apply(i - n)
            }
        })
    }
}

impl Initial for FinSetCategory {
    fn initial(&self) -> Result<FinSet> {
        Ok(FinSet::empty())
    }

    fn initial_arrow(&self, b: &FinSet) -> Result<Func> {
        Func::new(FinSet::empty(), b.clone(), Vec::new())
    }
}

impl Pullbacks for FinSetCategory {
    /// `{(a,b) | f(a) = g(b)} ⊆ A × B`, lexicographically ordered.
    fn pullback(&self, f: &Func, g: &Func) -> Result<Pullback<FinSet, Func>> {
        if f.cod() != g.cod() {
            return Err(Error::NotComposable(format!("pullback of {f} and {g}")));
        }
        let mut pairs = Vec::new();
        for a in 0..f.dom().len() {
            for b in 0..g.dom().len() {
                if f.apply(a) == g.apply(b) {
                    pairs.push((a, b));
                }
            }
        }
        let object = FinSet::new(
            pairs
                .iter()
                .map(|&(a, b)| format!("({},{})", f.dom().label(a), g.dom().label(b))),
        )?;
        let p1 = Func::from_fn(&object, f.dom(), |i| pairs[i].0)?;
        let p2 = Func::from_fn(&object, g.dom(), |i| pairs[i].1)?;
        Ok(Pullback { object, p1, p2 })
    }

    fn mediate(&self, f: &Func, g: &Func, x1: &Func, x2: &Func) -> Result<Func> {
        if x1.dom() != x2.dom() || f.after(x1)? != g.after(x2)? {
            return Err(Error::Invalid(format!(
                "cone ({x1}, {x2}) does not commute over ({f}, {g})"
            )));
        }
        let pb = self.pullback(f, g)?;
        // Sorted because pullback elements are ordered by (a, b).
        let index: Vec<(usize, usize)> = (0..pb.object.len())
            .map(|i| (pb.p1.apply(i), pb.p2.apply(i)))
            .collect();
        Func::from_fn(x1.dom(), &pb.object, |i| {
            let key = (x1.apply(i), x2.apply(i));
            index.binary_search(&key).expect("commuting cone lands in pullback")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{validate_category, validate_coproduct, validate_initial, validate_pullback};

    fn set(labels: &[&str]) -> FinSet {
        FinSet::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn small_fragment_is_a_category() {
        let c = FinSetCategory;
        let frag = vec![FinSet::empty(), set(&["a"]), set(&["x", "y"])];
        let r = validate_category(&c, &frag).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert!(validate_category(&c, &[]).unwrap().all_passed());
    }

    #[test]
    fn hom_is_lexicographic() {
        let homs = Func::all(&FinSet::standard(2), &FinSet::standard(2));
        let maps: Vec<_> = homs.iter().map(|f| f.map().to_vec()).collect();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(Func::all(&FinSet::empty(), &FinSet::empty()).len(), 1);
        assert!(Func::all(&FinSet::standard(1), &FinSet::empty()).is_empty());
    }

    #[test]
    fn coproduct_examples() {
        let c = FinSetCategory;
        let a = set(&["a"]);
        let b = set(&["x", "y"]);
        let cp = c.coproduct(&a, &b).unwrap();
        assert_eq!(cp.object.len(), 3);
        let e = c.coproduct(&FinSet::empty(), &b).unwrap();
        let iso = c.copair(&c.initial_arrow(&b).unwrap(), &Func::identity(&b)).unwrap();
        assert!(iso.is_bijective());
        assert_eq!(iso.dom(), &e.object);
        let f = Func::from_pairs(&a, &b, &[("a", "x")]).unwrap();
        let cop = c.copair(&f, &Func::identity(&b)).unwrap();
        assert_eq!(cop.apply_label("L:a"), Some("x"));
        assert_eq!(cop.apply_label("R:x"), Some("x"));
        assert_eq!(cop.apply_label("R:y"), Some("y"));
        let r = validate_coproduct(&c, &a, &b, &[FinSet::empty(), set(&["p", "q"])]).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn pullback_examples() {
        let c = FinSetCategory;
        let b = set(&["x", "y"]);
        let id = Func::identity(&b);
        let pb = c.pullback(&id, &id).unwrap();
        assert_eq!(pb.object.len(), 2);
        let bang = c.terminal_arrow(&b);
        let pb2 = c.pullback(&bang, &bang).unwrap();
        assert_eq!(pb2.object.len(), 4);
        let m = c.mediate(&bang, &bang, &pb2.p1, &pb2.p2).unwrap();
        assert_eq!(m, Func::identity(&pb2.object));
        let r = validate_pullback(&c, &bang, &bang, &[FinSet::standard(1), FinSet::standard(2)])
            .unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }

    #[test]
    fn non_commuting_cone_has_no_mediator() {
        let c = FinSetCategory;
        let b = set(&["x", "y"]);
        let id = Func::identity(&b);
        let swap = Func::from_pairs(&b, &b, &[("x", "y"), ("y", "x")]).unwrap();
        assert!(c.mediate(&id, &id, &id, &swap).is_err());
    }

    #[test]
    fn empty_set_is_initial() {
        let c = FinSetCategory;
        let r = validate_initial(&c, &[FinSet::empty(), FinSet::standard(3)]).unwrap();
        assert!(r.all_passed());
    }
}
