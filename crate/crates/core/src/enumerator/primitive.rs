//! Families without an `E1` ray whose first ray is a conic bundle `f1: X -> P^2`.
//!
//! For a conic bundle `H1^3 = 0` and `H1^2 H2 = 2 / mu1`, and
//! `deg Delta = 12 - (-K)^2 . H1`.

use std::collections::BTreeMap;

use num_rational::Rational64;

use super::{d2_domain, describe, SolutionRecord};
use crate::chern_calculus::{antican_cube_p1_bundle_over_surface, SurfaceBundleData};
use crate::error::{Error, Result};
use crate::picard_lattice::{anticanonical_class, triple_product, DivisorClass, TrilinearForm};
use crate::ray_constraints::{balance_check, c2_dot_h, mu_of, RaySpec, RayType};

const CONIC_TYPES: [RayType; 2] = [RayType::C1, RayType::C2];

/// Admissible discriminant degrees of a conic bundle of the given type.
fn deg_delta_admissible(t: RayType, deg_delta: i64) -> bool {
    match t {
        RayType::C1 => (1..=11).contains(&deg_delta),
        _ => deg_delta == 0,
    }
}

/// `(-K)^2 . H_i` for the basis element `i` (1-based).
fn antican_sq_dot(form: &TrilinearForm, k: &DivisorClass, i: usize) -> Result<i64> {
    triple_product(form, k, k, &DivisorClass::basis(form.rho(), i)?)
}

fn exact(q: Rational64) -> Option<i64> {
    q.is_integer().then(|| q.to_integer())
}

/// Two conic bundles over `P^2`: `X -> P^2 x P^2` has degree `m` onto a divisor
/// of bidegree `b` with `m b = (2/mu2, 2/mu1)`.
pub fn solve_c_c() -> Result<Vec<SolutionRecord>> {
    let mut unique = BTreeMap::new();
    for t1 in CONIC_TYPES {
        for t2 in CONIC_TYPES {
            if let Some(record) = conic_pair(t1, t2)? {
                unique.entry(record.ray_types()).or_insert(record);
            }
        }
    }
    Ok(unique.into_values().collect())
}

fn conic_pair(t1: RayType, t2: RayType) -> Result<Option<SolutionRecord>> {
    let (mu1, mu2) = (mu_of(t1), mu_of(t2));
    let form = TrilinearForm::rank2(0, 2 / mu1, 2 / mu2, 0);
    let k = anticanonical_class(mu1, mu2, 2)?;
    let deltas = [12 - antican_sq_dot(&form, &k, 1)?, 12 - antican_sq_dot(&form, &k, 2)?];
    if !deg_delta_admissible(t1, deltas[0]) || !deg_delta_admissible(t2, deltas[1]) {
        return Ok(None);
    }
    let rays = [RaySpec::conic(t1, deltas[0]), RaySpec::conic(t2, deltas[1])];
    if !balance_check(mu1, mu2, c2_dot_h(&rays[0])?, c2_dot_h(&rays[1])?) {
        return Ok(None);
    }
    let mut record = SolutionRecord::rank2(rays, form, Vec::new())?;
    let (m1, m2) = (record.rays[0].mu, record.rays[1].mu);
    let target = [2 / m2, 2 / m1];
    record.descriptions = (1..=2)
        .filter(|m| target.iter().all(|b| b % m == 0))
        .map(|m| describe::conic_pair(m, [target[0] / m, target[1] / m]))
        .collect();
    if (m1, m2) == (1, 2) {
        record.char_note = Some("wild conic bundle possible only in characteristic 2".into());
    }
    Ok(Some(record))
}

/// A conic bundle over `P^2` and a del Pezzo fibration over `P^1`:
/// `H1 H2^2 = H2^3 = 0` and `(-K)^2 . H2 = 2 mu_D^2 / mu_C`.
pub fn solve_c_d() -> Result<Vec<SolutionRecord>> {
    let mut out = Vec::new();
    for c in CONIC_TYPES {
        for d in [RayType::D1, RayType::D2, RayType::D3] {
            let (mu1, mu2) = (mu_of(c), mu_of(d));
            let form = TrilinearForm::rank2(0, 2 / mu1, 0, 0);
            let k = anticanonical_class(mu1, mu2, 2)?;
            let deg_delta = 12 - antican_sq_dot(&form, &k, 1)?;
            let d2 = antican_sq_dot(&form, &k, 2)?;
            if !deg_delta_admissible(c, deg_delta) || !d2_domain(d).contains(&d2) {
                continue;
            }
            let rays = [RaySpec::conic(c, deg_delta), RaySpec::del_pezzo(d, d2)];
            if !balance_check(mu1, mu2, c2_dot_h(&rays[0])?, c2_dot_h(&rays[1])?) {
                continue;
            }
            // X -> P^2 x P^1 has degree H1^2 H2; -K = f^*(O(3,2) - L) on a double cover.
            let map_degree = form.entry(1, 1, 2)?;
            let branch = [3 - mu2, 2 - mu1];
            let description = describe::over_p2_x_p1(map_degree, branch);
            out.push(SolutionRecord::rank2(rays, form, vec![description])?);
        }
    }
    Ok(out)
}

/// `(a, epsilon, D^3)` with `-K = (r/epsilon) H - a D` for a contraction of a
/// divisor `D` to a point.
fn point_contraction_data(t: RayType) -> Option<(Rational64, i64, i64)> {
    match t {
        RayType::E2 => Some((Rational64::from_integer(2), 1, 1)),
        RayType::E34 => Some((Rational64::from_integer(1), 1, 2)),
        RayType::E5 => Some((Rational64::new(1, 2), 2, 4)),
        _ => None,
    }
}

/// Divisors `r` of the numerator of `c2 . H` for a point contraction.
fn target_indices(t: RayType) -> Vec<i64> {
    let n = if t == RayType::E5 { 45 } else { 24 };
    (1..=n).filter(|r| n % r == 0).collect()
}

/// Whether a conic bundle of type `c` can pair with a point contraction of type `e`.
///
/// For `C1` the restriction of `f1` to the exceptional divisor has even degree
/// `(-K)^2 . D / mu2^2`; for `C2` the `c2` balance needs an integral index.
pub fn ce_pairing_admissible(c: RayType, e: RayType) -> bool {
    let Some((a, _, d3)) = point_contraction_data(e) else {
        return false;
    };
    let (mu1, mu2) = (mu_of(c), mu_of(e));
    match c {
        RayType::C1 => {
            let degree = a * a * d3 / (mu2 * mu2);
            degree.is_integer() && degree.to_integer() % 2 == 0
        }
        RayType::C2 => target_indices(e).into_iter().any(|r| {
            let ray = RaySpec { r: Some(r), ..RaySpec::new(e) };
            c2_dot_h(&ray).is_ok_and(|v| balance_check(mu1, mu2, 6, v))
        }),
        _ => false,
    }
}

/// A conic bundle over `P^2` and a contraction of a divisor to a point.
///
/// Writing `mu2 H1 = s H2 - a D` with `s = r2/epsilon - mu1` and `H2 . D = 0`
/// numerically, `H1^2 H2 = s^2 L2^3 / mu2^2`, `H1 H2^2 = s L2^3 / mu2` and
/// `H1^3 = (s^3 L2^3 - a^3 D^3) / mu2^3`.
pub fn solve_c_e_primitive() -> Result<Vec<SolutionRecord>> {
    let mut out = Vec::new();
    for c in CONIC_TYPES {
        for e in [RayType::E2, RayType::E34, RayType::E5] {
            if !ce_pairing_admissible(c, e) {
                continue;
            }
            let (a, eps, d3) = point_contraction_data(e).expect("point contraction type");
            let (mu1, mu2) = (mu_of(c), mu_of(e));
            for r2 in target_indices(e) {
                let s = Rational64::new(r2, eps) - mu1;
                for l2 in 1..=24 {
                    let h112 = s * s * l2 / (mu2 * mu2);
                    let h122 = s * l2 / mu2;
                    let h111 = (s * s * s * l2 - a * a * a * d3) / (mu2 * mu2 * mu2);
                    if h111 != Rational64::from_integer(0) || h112 != Rational64::new(2, mu1) {
                        continue;
                    }
                    let (Some(h112), Some(h122)) = (exact(h112), exact(h122)) else {
                        continue;
                    };
                    if let Some(record) = conic_point_record(c, e, r2, l2, TrilinearForm::rank2(0, h112, h122, l2))? {
                        out.push(record);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn conic_point_record(c: RayType, e: RayType, r2: i64, l2: i64, form: TrilinearForm) -> Result<Option<SolutionRecord>> {
    let (mu1, mu2) = (mu_of(c), mu_of(e));
    let k = anticanonical_class(mu1, mu2, 2)?;
    let deg_delta = 12 - antican_sq_dot(&form, &k, 1)?;
    if !deg_delta_admissible(c, deg_delta) {
        return Ok(None);
    }
    let conic = RaySpec::conic(c, deg_delta);
    let mut second = RaySpec::point_contraction(e, r2, l2);
    if !balance_check(mu1, mu2, c2_dot_h(&conic)?, c2_dot_h(&second)?) {
        return Ok(None);
    }
    let kx3 = crate::picard_lattice::cube(&form, &k)?;
    let description = if c == RayType::C1 {
        describe::double_cover_of_v7()
    } else {
        // X = P(O + O(e)) over P^2 with (-K)^3 = 2 e^2 + 54.
        let e_sq = (kx3 - 54) / 2;
        let twist = (1..=e_sq).find(|t| t * t == e_sq).ok_or_else(|| {
            Error::Inconsistency(format!("(-K)^3 = {kx3} is not 2e^2 + 54"))
        })?;
        if antican_cube_p1_bundle_over_surface(&SurfaceBundleData::rank2(e_sq, 0, 9)) != kx3 {
            return Err(Error::Inconsistency("P^1-bundle degree disagrees with the form".into()));
        }
        second.e = Some(twist);
        describe::p1_bundle_over_p2(twist)
    };
    let record = SolutionRecord::rank2([conic, second], form, vec![description])?;
    Ok(Some(record))
}
