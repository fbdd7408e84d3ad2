//! Seeded random modules, weak maps, strict module maps and lalis.

use std::sync::Arc;

use rand::Rng;

use crate::dg::{q, random as dgr, sign, Complex, GradedMap, HomologicalLali, Matrix};

use super::{DgAlgebra, DgModule, WeakHom};

/// A free part `A ⊗ S^k` and a trivial part of spheres and disks, of total
/// dimension between 1 and `max`, mixed by a random automorphism.
pub fn module<R: Rng>(rng: &mut R, alg: &DgAlgebra, max: usize) -> DgModule {
    let free = alg.dim() <= max && rng.gen_bool(0.5);
    let mut m = if free {
        DgModule::free(alg, &Complex::sphere(rng.gen_range(0..=1)))
    } else {
        DgModule::trivial(alg, &Complex::zero()).expect("builtin algebras are augmented")
    };
    let lo = usize::from(!free);
    let mut rest = rng.gen_range(lo..=max - m.m.dim());
    let mut triv = Complex::zero();
    while rest > 0 {
        if rest >= 2 && rng.gen_bool(0.3) {
            triv = triv.direct_sum(&Complex::disk(rng.gen_range(1..=2)));
            rest -= 2;
        } else {
            triv = triv.direct_sum(&Complex::sphere(rng.gen_range(0..=1)));
            rest -= 1;
        }
    }
    let t = DgModule::trivial(alg, &triv).expect("builtin algebras are augmented");
    m = m.direct_sum(alg, &t);
    let p = dgr::automorphism(rng, &m.m);
    m.conjugate(alg, &p).expect("automorphisms are invertible")
}

pub fn weak<R: Rng>(rng: &mut R, alg: &DgAlgebra, src: &DgModule, tgt: &DgModule, degree: i32, level: usize) -> WeakHom {
    let comps = (0..=level)
        .map(|n| dgr::graded_map(rng, &alg.bar_pow(n, &src.m), &tgt.m, n as i32 + degree))
        .collect();
    WeakHom::new(alg, src, tgt, degree, comps).expect("typed components")
}

/// A random combination of a basis of the strict module maps `src → tgt`
/// of the given degree, found by solving `F·a = b·(1 ⊗ F)`.
pub fn module_map<R: Rng>(rng: &mut R, alg: &DgAlgebra, src: &DgModule, tgt: &DgModule, degree: i32) -> GradedMap {
    let (x, y) = (&src.m, &tgt.m);
    let (na, nx, ny) = (alg.dim(), x.dim(), y.dim());
    let vars: Vec<(usize, usize)> = (0..ny)
        .flat_map(|i| (0..nx).map(move |j| (i, j)))
        .filter(|&(i, j)| y.degrees()[i] == x.degrees()[j] + degree)
        .collect();
    let mut eqs = Matrix::zeros(ny * na * nx, vars.len());
    let (a, b) = (src.action.matrix(), tgt.action.matrix());
    for (v, &(yi, xj)) in vars.iter().enumerate() {
        for s in 0..na {
            let koszul = sign(i64::from(degree) * i64::from(alg.a.degrees()[s]));
            for xk in 0..nx {
                let col = s * nx + xk;
                // (E·a)[·, (s, xk)] has row yi with entry a[xj, (s, xk)].
                let e = eqs.get(yi * na * nx + col, v) + a.get(xj, col);
                eqs.set(yi * na * nx + col, v, e);
                if xk == xj {
                    for yr in 0..ny {
                        let e = eqs.get(yr * na * nx + col, v) - &(b.get(yr, s * ny + yi) * &koszul);
                        eqs.set(yr * na * nx + col, v, e);
                    }
                }
            }
        }
    }
    let basis = eqs.nullspace();
    let mut m = Matrix::zeros(ny, nx);
    for k in 0..basis.cols() {
        let c = q(rng.gen_range(-2..=2));
        for (v, &(i, j)) in vars.iter().enumerate() {
            let e = m.get(i, j) + &(basis.get(v, k) * &c);
            m.set(i, j, e);
        }
    }
    GradedMap::new(x, y, degree, m).expect("entries respect degrees")
}

/// `N = M ⊕ A ⊗ D` for a disk `D`, with the projection `g`, and `f₀`, `ε₀`
/// the inclusion and the disk contraction transported along
/// `φ = 1 + ∂ζ` for a random `ζ : M → A ⊗ D`; `f₀` is then not a module map.
pub fn ulali<R: Rng>(rng: &mut R, alg: &DgAlgebra, m: &DgModule) -> (DgModule, HomologicalLali) {
    let disk = Complex::disk(rng.gen_range(1..=2));
    let free = DgModule::free(alg, &disk);
    let n = m.direct_sum(alg, &free);
    let (k, l) = (m.m.dim(), free.m.dim());
    let mut g = Matrix::zeros(k, k + l);
    g.add_block(0, 0, &Matrix::identity(k));
    let g = GradedMap::new(&n.m, &m.m, 0, g).expect("projection");
    let incl = GradedMap::new(&m.m, &n.m, 0, g.matrix().transpose()).expect("inclusion");
    let dk = Arc::new(disk);
    let mut h = Matrix::zeros(2, 2);
    h.set(0, 1, q(1));
    let h = alg.t_map(&GradedMap::new(&dk, &dk, 1, h).expect("contraction"));
    let e0 = Matrix::block_diagonal(&[&Matrix::zeros(k, k), h.matrix()]);
    let mut zeta = Matrix::zeros(k + l, k + l);
    for i in k..k + l {
        for j in 0..k {
            zeta.set(i, j, q(rng.gen_range(-2..=2)));
        }
    }
    let zeta = GradedMap::truncating(&n.m, &n.m, 1, zeta);
    let dz = zeta.differential();
    let one = GradedMap::identity(&n.m);
    let phi = one.plus(&dz).expect("parallel");
    let phi_inv = one.minus(&dz).expect("parallel");
    let e0 = GradedMap::new(&n.m, &n.m, 1, e0).expect("degree 1");
    let f0 = phi.after(&incl).expect("typed");
    let e0 = phi.after(&e0).and_then(|x| x.after(&phi_inv)).expect("typed");
    (n, HomologicalLali::new(g, f0, e0))
}
