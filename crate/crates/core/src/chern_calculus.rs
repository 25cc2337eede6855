//! Closed-form Chern-class evaluators for projective bundles, blowups along
//! curves and conic bundles, plus builders for the intersection forms of
//! projective bundles over a surface with Picard rank 2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::picard_lattice::{monomials, DivisorClass, TrilinearForm};

/// Intersection numbers of a bundle `E` on a smooth projective surface `Y`.
///
/// The last four fields only enter the rank-3 divisor formula and default to 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceBundleData {
    /// `c1(E)^2`.
    pub c1_sq: i64,
    /// `c2(E)`.
    pub c2: i64,
    /// `K_Y^2`.
    pub ky_sq: i64,
    /// `c1(E) . K_Y`.
    pub c1_dot_ky: i64,
    /// `c1(E) . c1(F)`.
    pub c1_dot_f: i64,
    /// `c1(F) . K_Y`.
    pub f_dot_ky: i64,
    /// `c1(F)^2`.
    pub f_sq: i64,
}

impl SurfaceBundleData {
    /// Data for a rank-2 bundle.
    pub fn rank2(c1_sq: i64, c2: i64, ky_sq: i64) -> Self {
        Self { c1_sq, c2, ky_sq, ..Self::default() }
    }

    /// Data for a divisor in the projectivization of a rank-3 bundle, in the
    /// order `(c1_sq, c2, c1_dot_f, c1_dot_ky, f_dot_ky, ky_sq, f_sq)`.
    pub fn rank3(fields: [i64; 7]) -> Self {
        let [c1_sq, c2, c1_dot_f, c1_dot_ky, f_dot_ky, ky_sq, f_sq] = fields;
        Self { c1_sq, c2, ky_sq, c1_dot_ky, c1_dot_f, f_dot_ky, f_sq }
    }
}

/// Numerical data of a blowup of a threefold `Y` along a smooth curve `C`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupData {
    /// `(-K_Y)^3`.
    pub ky3: i64,
    /// `-K_Y . C`.
    pub ky_dot_c: i64,
    /// `g(C)`.
    pub genus: i64,
    /// Degree of the conormal bundle of `C` in `Y`.
    pub deg_conormal: i64,
}

impl BlowupData {
    /// Checks `genus >= 0`.
    pub fn validate(&self) -> Result<()> {
        if self.genus < 0 {
            return Err(Error::Constraint(format!("negative genus {}", self.genus)));
        }
        Ok(())
    }
}

/// `(-K_X)^3` for a `P^1`-bundle `X = P(E)` over a surface.
pub fn antican_cube_p1_bundle_over_surface(d: &SurfaceBundleData) -> i64 {
    2 * d.c1_sq - 8 * d.c2 + 6 * d.ky_sq
}

/// `c1(O(1))^2` for a `P^1`-bundle over a curve.
pub fn xi_square_on_curve(deg_e: i64) -> i64 {
    deg_e
}

/// `(-K_X)^3` for `X` in `|O(2) (x) pi^* F|` on a `P^2`-bundle `P(E)` over a surface.
pub fn antican_cube_divisor_in_p2_bundle(d: &SurfaceBundleData) -> i64 {
    2 * d.c1_sq - 2 * d.c2 + 4 * d.c1_dot_f + 6 * d.c1_dot_ky + 9 * d.f_dot_ky + 6 * d.ky_sq + 3 * d.f_sq
}

/// `D^3` for the exceptional divisor `D` of a blowup along a curve.
pub fn blowup_exceptional_cube(d: &BlowupData) -> i64 {
    d.deg_conormal
}

/// `(-K_X)^2 . D` for the exceptional divisor `D` of a blowup along a curve.
pub fn antican_sq_dot_exceptional(d: &BlowupData) -> i64 {
    d.ky_dot_c + 2 - 2 * d.genus
}

/// `K_X^2 . f^* D` for a conic bundle `f: X -> S` and a divisor `D` on `S`.
pub fn conic_bundle_ksq_dot_pullback(ks_dot_d: i64, delta_dot_d: i64) -> i64 {
    -4 * ks_dot_d - delta_dot_d
}

/// `(-K_Y)^3 = r^3 L^3` for a Fano threefold `Y` of index `r` in `{2, 3, 4}`.
pub fn ky3(r: i64, l3: i64) -> Result<i64> {
    match r {
        2..=4 => Ok(r * r * r * l3),
        other => Err(Error::UnsupportedIndex(other)),
    }
}

/// Genus of the blown-up curve `B` from `(-K_X)^3`, `(-K_Y)^3`, the index and
/// `deg B`.
pub fn genus_from_blowup(kx3: i64, ky3: i64, r: i64, deg_b: i64) -> Result<i64> {
    for (name, v) in [("(-K_X)^3", kx3), ("(-K_Y)^3", ky3)] {
        if v % 2 != 0 {
            return Err(Error::Parity(format!("{name} = {v} is odd")));
        }
    }
    let g = kx3 / 2 - ky3 / 2 + r * deg_b + 1;
    if g < 0 {
        return Err(Error::Constraint(format!("negative genus {g}")));
    }
    Ok(g)
}

/// Symmetric intersection matrix of a rank-2 Picard lattice of a surface.
pub type SurfaceLattice = [[i64; 2]; 2];

/// `P^1 x P^1` with the two rulings as basis.
pub const P1_X_P1: SurfaceLattice = [[0, 1], [1, 0]];

fn dot(base: &SurfaceLattice, a: [i64; 2], b: [i64; 2]) -> i64 {
    let mut s = 0;
    for i in 0..2 {
        for j in 0..2 {
            s += a[i] * base[i][j] * b[j];
        }
    }
    s
}

/// A class on `P(E)` written as `pi^* base + xi * tautological`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct BundleClass {
    base: [i64; 2],
    xi: i64,
}

impl BundleClass {
    fn from_coords(c: &[i64]) -> Self {
        Self { base: [c[0], c[1]], xi: c[2] }
    }
}

/// Top intersection of `rank + 1` classes on `P(E)` for a bundle of the given
/// rank over a surface, using `xi^rank = c1 xi^(rank-1) - c2 xi^(rank-2)`.
fn bundle_intersection(base: &SurfaceLattice, c1: [i64; 2], c2: i64, classes: &[BundleClass]) -> i64 {
    fn go(base: &SurfaceLattice, c1: [i64; 2], c2: i64, rest: &[BundleClass], coef: i64, picked: &mut Vec<[i64; 2]>) -> i64 {
        match rest.split_first() {
            None => {
                let value = match picked.as_slice() {
                    [a, b] => dot(base, *a, *b),
                    [a] => dot(base, c1, *a),
                    [] => dot(base, c1, c1) - c2,
                    _ => 0,
                };
                coef * value
            }
            Some((head, tail)) => {
                let mut total = 0;
                if head.xi != 0 {
                    total += go(base, c1, c2, tail, coef * head.xi, picked);
                }
                if head.base != [0, 0] && picked.len() < 2 {
                    picked.push(head.base);
                    total += go(base, c1, c2, tail, coef, picked);
                    picked.pop();
                }
                total
            }
        }
    }
    go(base, c1, c2, classes, 1, &mut Vec::new())
}

/// Intersection form of the `P^1`-bundle `P(E)` over a surface, in the basis
/// `(pi^* B1, pi^* B2, xi)`.
pub fn p1_bundle_form(base: &SurfaceLattice, c1: [i64; 2], c2: i64) -> TrilinearForm {
    let basis = |i: usize| {
        let mut c = [0i64; 3];
        c[i - 1] = 1;
        BundleClass::from_coords(&c)
    };
    let entries = monomials(3)
        .into_iter()
        .map(|m| (m, bundle_intersection(base, c1, c2, &[basis(m[0]), basis(m[1]), basis(m[2])])));
    TrilinearForm::from_entries(3, entries).expect("all rank-3 monomials are generated")
}

/// `-K` of `P(E)` for a rank-2 bundle, given `-K_Y` of the base.
pub fn p1_bundle_anticanonical(minus_ky: [i64; 2], c1: [i64; 2]) -> DivisorClass {
    DivisorClass::new(vec![minus_ky[0] - c1[0], minus_ky[1] - c1[1], 2]).expect("rank 3")
}

/// Intersection form of a divisor `X` in `|O(a) (x) pi^* F|` on the `P^2`-bundle
/// `P(E)` over a surface, in the basis `(pi^* B1, pi^* B2, xi)` restricted to `X`.
pub fn p2_bundle_divisor_form(base: &SurfaceLattice, c1: [i64; 2], c2: i64, a: i64, f: [i64; 2]) -> TrilinearForm {
    let x = BundleClass { base: f, xi: a };
    let basis = |i: usize| {
        let mut c = [0i64; 3];
        c[i - 1] = 1;
        BundleClass::from_coords(&c)
    };
    let entries = monomials(3)
        .into_iter()
        .map(|m| (m, bundle_intersection(base, c1, c2, &[basis(m[0]), basis(m[1]), basis(m[2]), x])));
    TrilinearForm::from_entries(3, entries).expect("all rank-3 monomials are generated")
}

/// `-K_X` of a divisor `X` in `|O(a) (x) pi^* F|` on a `P^2`-bundle, by adjunction.
pub fn p2_bundle_divisor_anticanonical(minus_ky: [i64; 2], c1: [i64; 2], a: i64, f: [i64; 2]) -> DivisorClass {
    DivisorClass::new(vec![minus_ky[0] - c1[0] - f[0], minus_ky[1] - c1[1] - f[1], 3 - a]).expect("rank 3")
}

/// The surface data `(c1^2, c2, c1.F, c1.K_Y, F.K_Y, K_Y^2, F^2)` entering
/// [`antican_cube_divisor_in_p2_bundle`].
pub fn surface_bundle_data(base: &SurfaceLattice, minus_ky: [i64; 2], c1: [i64; 2], c2: i64, f: [i64; 2]) -> SurfaceBundleData {
    let ky = [-minus_ky[0], -minus_ky[1]];
    SurfaceBundleData::rank3([
        dot(base, c1, c1),
        c2,
        dot(base, c1, f),
        dot(base, c1, ky),
        dot(base, f, ky),
        dot(base, ky, ky),
        dot(base, f, f),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard_lattice::cube;

    #[test]
    fn p1_bundle_examples() {
        assert_eq!(antican_cube_p1_bundle_over_surface(&SurfaceBundleData::rank2(2, 0, 8)), 52);
        assert_eq!(antican_cube_p1_bundle_over_surface(&SurfaceBundleData::rank2(1, 0, 9)), 56);
        assert_eq!(antican_cube_p1_bundle_over_surface(&SurfaceBundleData::rank2(4, 0, 9)), 62);
    }

    #[test]
    fn p2_bundle_examples() {
        assert_eq!(antican_cube_divisor_in_p2_bundle(&SurfaceBundleData::rank3([8, 2, -10, 8, -10, 8, 12])), 14);
        assert_eq!(antican_cube_divisor_in_p2_bundle(&SurfaceBundleData::rank3([9, 2, 0, -9, 0, 9, 0])), 14);
        assert_eq!(antican_cube_divisor_in_p2_bundle(&SurfaceBundleData::rank3([0; 7])), 0);
    }

    #[test]
    fn identity_evaluators() {
        assert_eq!(xi_square_on_curve(2), 2);
        assert_eq!(xi_square_on_curve(0), 0);
        assert_eq!(xi_square_on_curve(-3), -3);
        let b = |deg_conormal| BlowupData { deg_conormal, ..BlowupData::default() };
        assert_eq!(blowup_exceptional_cube(&b(2)), 2);
        assert_eq!(blowup_exceptional_cube(&b(0)), 0);
        assert_eq!(blowup_exceptional_cube(&b(-4)), -4);
    }

    #[test]
    fn exceptional_degree_examples() {
        let b = |ky_dot_c, genus| BlowupData { ky_dot_c, genus, ..BlowupData::default() };
        assert_eq!(antican_sq_dot_exceptional(&b(36, 10)), 18);
        assert_eq!(antican_sq_dot_exceptional(&b(0, 1)), 0);
        assert_eq!(antican_sq_dot_exceptional(&b(2, 0)), 4);
        assert!(b(0, -1).validate().is_err());
    }

    #[test]
    fn conic_bundle_examples() {
        for deg_delta in 0..=12 {
            assert_eq!(conic_bundle_ksq_dot_pullback(-3, deg_delta), 12 - deg_delta);
        }
        assert_eq!(conic_bundle_ksq_dot_pullback(-2, 4), 4);
        assert_eq!(conic_bundle_ksq_dot_pullback(0, 0), 0);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_from_blowup(16, 64, 4, 7), Ok(5));
        assert_eq!(genus_from_blowup(20, 54, 3, 6), Ok(2));
        assert_eq!(genus_from_blowup(40, 64, 4, 3), Ok(1));
        assert!(matches!(genus_from_blowup(15, 64, 4, 3), Err(Error::Parity(_))));
        assert!(matches!(genus_from_blowup(4, 64, 4, 1), Err(Error::Constraint(_))));
    }

    #[test]
    fn del_pezzo_base_genus_is_one() {
        for l3 in 1..=5 {
            assert_eq!(genus_from_blowup(4 * l3, ky3(2, l3).unwrap(), 2, l3), Ok(1));
        }
    }

    #[test]
    fn ky3_by_index() {
        assert_eq!(ky3(4, 1), Ok(64));
        assert_eq!(ky3(3, 2), Ok(54));
        assert_eq!(ky3(2, 5), Ok(40));
        assert_eq!(ky3(1, 5), Err(Error::UnsupportedIndex(1)));
    }

    #[test]
    fn bundle_forms_match_closed_forms() {
        let minus_ky = [2, 2];
        let c1 = [1, 1];
        let form = p1_bundle_form(&P1_X_P1, c1, 0);
        let k = p1_bundle_anticanonical(minus_ky, c1);
        assert_eq!(cube(&form, &k).unwrap(), 52);

        let c1 = [-2, -2];
        let f = [2, 3];
        let form = p2_bundle_divisor_form(&P1_X_P1, c1, 2, 2, f);
        let k = p2_bundle_divisor_anticanonical(minus_ky, c1, 2, f);
        assert_eq!(cube(&form, &k).unwrap(), 14);
        let data = surface_bundle_data(&P1_X_P1, minus_ky, c1, 2, f);
        assert_eq!(data, SurfaceBundleData::rank3([8, 2, -10, 8, -10, 8, 12]));
        assert_eq!(antican_cube_divisor_in_p2_bundle(&data), 14);
    }
}
