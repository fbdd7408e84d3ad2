//! Homological lalis: chain maps `g : A → B`, `q : B → A` and a degree-1
//! map `ξ : A → A` with `gq = 1`, `∂ξ = 1 − qg` and `gξ = ξq = ξξ = 0`.

use super::{GradedMap, Matrix};
use crate::report::Report;
use crate::Result;

#[derive(Clone, PartialEq, Debug)]
pub struct HomologicalLali {
    pub g: GradedMap,
    pub q: GradedMap,
    pub xi: GradedMap,
    /// Basis vectors of `A` on which `∂ξ = 1 − qg` would need data past a
    /// truncation level.
    pub exempt: Vec<usize>,
}

impl HomologicalLali {
    pub fn new(g: GradedMap, q: GradedMap, xi: GradedMap) -> Self {
        HomologicalLali {
            g,
            q,
            xi,
            exempt: Vec::new(),
        }
    }

    pub fn identity(x: &std::sync::Arc<super::Complex>) -> Self {
        Self::new(
            GradedMap::identity(x),
            GradedMap::identity(x),
            GradedMap::zero(x, x, 1),
        )
    }

    pub fn validate(&self, at: &str) -> Result<Report> {
        let mut r = Report::new();
        let (g, q, xi) = (&self.g, &self.q, &self.xi);
        r.holds("lali-g-chain-map", at, g.is_chain_map(), || (g.differential().to_string(), "0".into()));
        r.holds("lali-q-chain-map", at, q.is_chain_map(), || (q.differential().to_string(), "0".into()));
        r.holds("lali-xi-degree", at, xi.degree() == 1, || (xi.degree().to_string(), "1".into()));
        r.equal("lali-section", at, &g.after(q)?, &GradedMap::identity(q.src()));
        let lhs = xi.differential();
        let rhs = GradedMap::identity(g.src()).minus(&q.after(g)?)?;
        let n = g.src().dim();
        let keep: Vec<usize> = (0..n).filter(|j| !self.exempt.contains(j)).collect();
        let rows: Vec<usize> = (0..n).collect();
        r.equal(
            "lali-contraction",
            at,
            &lhs.matrix().select(&rows, &keep),
            &rhs.matrix().select(&rows, &keep),
        );
        if !self.exempt.is_empty() {
            r.exempt("lali-contraction", format!("{at} (truncation level)"));
        }
        r.holds("lali-g-xi", at, g.after(xi)?.is_zero(), || (g.after(xi).map(|m| m.to_string()).unwrap_or_default(), "0".into()));
        r.holds("lali-xi-q", at, xi.after(q)?.is_zero(), || (xi.after(q).map(|m| m.to_string()).unwrap_or_default(), "0".into()));
        r.holds("lali-xi-xi", at, xi.after(xi)?.is_zero(), || (xi.after(xi).map(|m| m.to_string()).unwrap_or_default(), "0".into()));
        Ok(r)
    }

    /// `(g g′, q′ q, ξ′ + q′ ξ g′)` for `inner : A → B` and `outer : B → C`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        let g = outer.g.after(&inner.g)?;
        let q = inner.q.after(&outer.q)?;
        let xi = inner.xi.plus(&inner.q.after(&outer.xi)?.after(&inner.g)?)?;
        let gm: &Matrix = inner.g.matrix();
        let mut exempt = inner.exempt.clone();
        for j in 0..gm.cols() {
            if !exempt.contains(&j) && outer.exempt.iter().any(|&i| !num_traits::Zero::is_zero(gm.get(i, j))) {
                exempt.push(j);
            }
        }
        exempt.sort_unstable();
        Ok(HomologicalLali { g, q, xi, exempt })
    }
}

/// `(u, v) : l → l′` with `g′u = vg`, `uq = q′v` and `uξ = ξ′u`.
pub fn is_lali_morphism(
    l: &HomologicalLali,
    l2: &HomologicalLali,
    u: &GradedMap,
    v: &GradedMap,
    at: &str,
) -> Result<Report> {
    let mut r = Report::new();
    r.equal("lali-morphism-g", at, &l2.g.after(u)?, &v.after(&l.g)?);
    r.equal("lali-morphism-q", at, &u.after(&l.q)?, &l2.q.after(v)?);
    r.equal("lali-morphism-xi", at, &u.after(&l.xi)?, &l2.xi.after(u)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dg::{random, Complex};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn identity_lali() {
        let x = Arc::new(Complex::disk(1).direct_sum(&Complex::sphere(0)));
        let one = HomologicalLali::identity(&x);
        assert!(one.validate("id").unwrap().all_passed());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = random::lali_onto(&mut rng, &x, 0..=2);
        assert_eq!(HomologicalLali::compose(&one, &l).unwrap(), l);
        let l2 = HomologicalLali::compose(&l, &HomologicalLali::identity(l.g.src())).unwrap();
        assert_eq!(l2, l);
    }

    #[test]
    fn broken_lali_is_reported() {
        let x = Arc::new(Complex::sphere(0));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut l = random::lali_onto(&mut rng, &x, 0..=1);
        l.xi = l.xi.scale(&crate::dg::q(2));
        let r = l.validate("x").unwrap();
        if l.xi.is_zero() {
            assert!(r.all_passed());
        } else {
            assert!(r.failures().any(|c| c.name == "lali-contraction"), "{}", r.to_text());
        }
    }

    #[test]
    fn morphism_of_identity_lalis() {
        let x = Arc::new(Complex::disk(2));
        let one = HomologicalLali::identity(&x);
        let u = GradedMap::identity(&x);
        assert!(is_lali_morphism(&one, &one, &u, &u, "id").unwrap().all_passed());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn composites_of_lalis_are_lalis(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = Arc::new(random::complex(&mut rng, 0..=2, 2));
            let outer = random::lali_onto(&mut rng, &c, 0..=2);
            let inner = random::lali_onto(&mut rng, outer.g.src(), 0..=2);
            prop_assert!(outer.validate("outer").unwrap().all_passed());
            prop_assert!(inner.validate("inner").unwrap().all_passed());
            let comp = HomologicalLali::compose(&outer, &inner).unwrap();
            let r = comp.validate("composite").unwrap();
            prop_assert!(r.all_passed(), "{}", r.to_text());
        }
    }
}
