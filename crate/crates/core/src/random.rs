//! Seeded generators of random polynomial data for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Blade, Graded, Kind};
use crate::lie::{Action, LieAlgebra, WedgePower};
use crate::poly::{int, rat, Monomial, Polynomial, Rational};
use crate::{Form, MultiVec};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounds on the size of generated elements.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_coeff_degree: u32,
    pub max_terms: usize,
    pub max_comps: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_coeff_degree: 3,
            max_terms: 3,
            max_comps: 3,
        }
    }
}

pub fn small_rational(r: &mut Rng8) -> Rational {
    let num = loop {
        let n = r.gen_range(-3i64..=3);
        if n != 0 {
            break n;
        }
    };
    let den = *[1i64, 1, 1, 2, 3].choose(r).expect("nonempty");
    rat(num, den)
}

pub fn monomial(r: &mut Rng8, dim: usize, max_degree: u32) -> Monomial {
    let d = r.gen_range(0..=max_degree);
    let pairs: Vec<(usize, u32)> = (0..d).map(|_| (r.gen_range(0..dim), 1)).collect();
    Monomial::from_pairs(&pairs)
}

pub fn polynomial(r: &mut Rng8, dim: usize, shape: Shape) -> Polynomial {
    let n = r.gen_range(1..=shape.max_terms.max(1));
    let mut p = Polynomial::zero();
    for _ in 0..n {
        p.add_term(monomial(r, dim, shape.max_coeff_degree), small_rational(r));
    }
    p
}

pub fn graded<K: Kind>(r: &mut Rng8, dim: usize, degree: usize, shape: Shape) -> Graded<K> {
    let blades = Blade::all(dim, degree);
    let mut out = Graded::zero(dim, degree);
    if blades.is_empty() {
        return out;
    }
    let n = r.gen_range(1..=shape.max_comps.max(1));
    for _ in 0..n {
        let b = *blades.choose(r).expect("nonempty");
        out.add_comp(b, polynomial(r, dim, shape));
    }
    out
}

pub fn form(r: &mut Rng8, dim: usize, degree: usize, shape: Shape) -> Form {
    graded(r, dim, degree, shape)
}

pub fn multivec(r: &mut Rng8, dim: usize, degree: usize, shape: Shape) -> MultiVec {
    graded(r, dim, degree, shape)
}

pub fn constant_form(r: &mut Rng8, dim: usize, degree: usize, comps: usize) -> Form {
    let shape = Shape {
        max_coeff_degree: 0,
        max_terms: 1,
        max_comps: comps,
    };
    graded(r, dim, degree, shape)
}

pub fn point(r: &mut Rng8, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| rat(r.gen_range(-7i64..=7), r.gen_range(1i64..=4))).collect()
}

/// so(3) acting on the first three coordinates by `V_i = ε_{ijk} x^j ∂_k`.
pub fn rotation_action(dim: usize) -> Action {
    assert!(dim >= 3);
    let x = |i| Polynomial::var(i);
    let field = |a: usize, b: usize| {
        // x^a ∂_b − x^b ∂_a
        &MultiVec::monomial(dim, &[b], x(a)) - &MultiVec::monomial(dim, &[a], x(b))
    };
    Action::new(LieAlgebra::so3(), dim, vec![field(1, 2), field(2, 0), field(0, 1)]).expect("rotations")
}

/// Translations along the given coordinates.
pub fn translation_action(dim: usize, coords: &[usize]) -> Action {
    let gens = coords.iter().map(|&i| MultiVec::partial(dim, i)).collect();
    Action::new(LieAlgebra::abelian(coords.len()), dim, gens).expect("translations")
}

/// The affine group of the line acting on coordinate 0 by `x∂_x` and `∂_x`.
pub fn affine_action(dim: usize) -> Action {
    let gens = vec![MultiVec::monomial(dim, &[0], Polynomial::var(0)), MultiVec::partial(dim, 0)];
    Action::new(LieAlgebra::affine_line(), dim, gens).expect("affine action")
}

/// One of the sample actions, chosen at random.
pub fn action(r: &mut Rng8, dim: usize) -> Action {
    match r.gen_range(0..3) {
        0 if dim >= 3 => rotation_action(dim),
        1 => affine_action(dim),
        _ => {
            let mut coords: Vec<usize> = (0..dim).collect();
            coords.shuffle(r);
            let n = r.gen_range(1..=dim.min(3));
            coords.truncate(n);
            translation_action(dim, &coords)
        }
    }
}

pub fn basis_wedge(r: &mut Rng8, g: &LieAlgebra, degree: usize) -> WedgePower {
    let blades = Blade::all(g.dim(), degree);
    WedgePower::basis_blade(g.dim(), *blades.choose(r).expect("degree within algebra"))
}

pub fn wedge_power(r: &mut Rng8, g: &LieAlgebra, degree: usize) -> WedgePower {
    let blades = Blade::all(g.dim(), degree);
    let mut w = WedgePower::zero(g.dim(), degree);
    for _ in 0..r.gen_range(1..=2) {
        w.add(*blades.choose(r).expect("nonempty"), small_rational(r));
    }
    w
}

pub fn nonzero_int(r: &mut Rng8, bound: i64) -> Rational {
    loop {
        let n = r.gen_range(-bound..=bound);
        if n != 0 {
            return int(n);
        }
    }
}
