#![allow(dead_code)]

use cmc_core::curve::{elliptic, hyperbola, CurvePoint, PlaneCurve};
use cmc_core::funcfield::{DualBasis, FunctionField, IdealLattice};
use cmc_core::kernel::{q, qi, BivarPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn bp(s: &str) -> BivarPoly {
    BivarPoly::parse(s).unwrap()
}

pub fn c1() -> PlaneCurve {
    hyperbola()
}

pub fn c2() -> PlaneCurve {
    elliptic()
}

pub fn c1_golden_points() -> Vec<CurvePoint> {
    let c = c1();
    vec![
        c.point(q(3, 4), q(5, 4)).unwrap(),
        c.point(q(4, 3), q(5, 3)).unwrap(),
    ]
}

/// All affine rational points of `y^2 = x^3 + 1`.
pub fn c2_points() -> Vec<CurvePoint> {
    let c = c2();
    [(-1, 0), (0, 1), (0, -1), (2, 3), (2, -3)]
        .iter()
        .map(|&(x, y)| c.point(qi(x), qi(y)).unwrap())
        .collect()
}

pub fn ideal(ff: &FunctionField, gens: &[&str]) -> IdealLattice {
    let gens: Vec<_> = gens.iter().map(|g| ff.from_bivar(&bp(g))).collect();
    ff.ideal_from_generators(&gens).unwrap()
}

/// `(x + 1, y)` on the elliptic curve and its dual basis.
pub fn twisted_bundle(ff: &FunctionField) -> (IdealLattice, DualBasis) {
    let i = ideal(ff, &["x + 1", "y"]);
    let db = ff.dual_basis(&i).unwrap();
    (i, db)
}

/// `(y, x^2 - x + 1) = (y / (x + 1)) (x + 1, y)`, isomorphic to
/// [`twisted_bundle`] but not vanishing at `(-1, 0)`.
pub fn twisted_bundle_shifted(ff: &FunctionField) -> (IdealLattice, DualBasis) {
    let i = ideal(ff, &["y", "x^2 - x + 1"]);
    let db = ff.dual_basis(&i).unwrap();
    (i, db)
}
