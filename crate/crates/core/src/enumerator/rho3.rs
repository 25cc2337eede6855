//! Primitive families of Picard rank 3.

use super::{describe, SolutionRecord};
use crate::chern_calculus::{
    antican_cube_divisor_in_p2_bundle, antican_cube_p1_bundle_over_surface, p1_bundle_anticanonical, p1_bundle_form,
    p2_bundle_divisor_anticanonical, p2_bundle_divisor_form, surface_bundle_data, SurfaceBundleData, P1_X_P1,
};
use crate::error::{Error, Result};
use crate::picard_lattice::{anticanonical_class, cube, monomials, triple_product, DivisorClass, TrilinearForm};
use crate::ray_constraints::{RaySpec, RayType};

/// `-K` of `P^1 x P^1`.
const MINUS_K_QUADRIC: [i64; 2] = [2, 2];

/// Three conic bundles `X -> P^1 x P^1`: the product map `X -> (P^1)^3` has
/// degree `d = H1 H2 H3` with `d^2 (g - 1) = 24` and `-d K = 2 (H1 + H2 + H3)`.
pub fn solve_rho3_ccc() -> Result<Vec<SolutionRecord>> {
    let mut out = Vec::new();
    for d in 1..=24 {
        if 24 % (d * d) != 0 || 2 % d != 0 {
            continue;
        }
        let entries = monomials(3).into_iter().map(|m| (m, if m == [1, 2, 3] { d } else { 0 }));
        let form = TrilinearForm::from_entries(3, entries)?;
        let anticanonical = anticanonical_class(d, 0, 3)?;
        let kx3 = cube(&form, &anticanonical)?;
        if kx3 != 2 * (24 / (d * d)) {
            return Err(Error::Inconsistency(format!("(-K)^3 = {kx3} for d = {d}")));
        }
        let ray_type = RayType::conic_of_length(2 / d)?;
        let mut rays = Vec::with_capacity(3);
        for i in 1..=3 {
            let others: Vec<usize> = (1..=3).filter(|&j| j != i).collect();
            let mut bidegree = [0; 2];
            for (slot, &j) in others.iter().enumerate() {
                let h = DivisorClass::basis(3, j)?;
                bidegree[slot] = 8 - triple_product(&form, &anticanonical, &anticanonical, &h)?;
            }
            rays.push(RaySpec { delta_bidegree: Some(bidegree), ..RaySpec::new(ray_type) });
        }
        // -K = f^*(O(2,2,2) - L) for the double cover branched along 2L.
        let branch = [2 - 2 / d; 3];
        let record = SolutionRecord {
            rho: 3,
            rays,
            kx3,
            anticanonical,
            form,
            table_id: String::new(),
            descriptions: vec![describe::over_p1_cubed(d, branch)],
            char_note: None,
            primitive: true,
        };
        record.validate()?;
        out.push(record);
    }
    Ok(out)
}

/// A conic bundle over `P^1 x P^1` paired with an `E1` ray.
pub fn solve_rho3_ce() -> Result<Vec<SolutionRecord>> {
    Ok(vec![p1_bundle_over_quadric()?, divisor_in_p2_bundle()?])
}

fn p1_bundle_over_quadric() -> Result<SolutionRecord> {
    let c1 = [1, 1];
    let form = p1_bundle_form(&P1_X_P1, c1, 0);
    let anticanonical = p1_bundle_anticanonical(MINUS_K_QUADRIC, c1);
    let kx3 = cube(&form, &anticanonical)?;
    let closed = antican_cube_p1_bundle_over_surface(&SurfaceBundleData::rank2(2, 0, 8));
    if kx3 != closed {
        return Err(Error::Inconsistency(format!("P^1-bundle: form gives {kx3}, closed form {closed}")));
    }
    rank3_record(RayType::C2, form, anticanonical, kx3, describe::p1_bundle_over_quadric(c1))
}

fn divisor_in_p2_bundle() -> Result<SolutionRecord> {
    let (twist, a, f) = ([-1, -1], 2, [2, 3]);
    let c1 = [2 * twist[0], 2 * twist[1]];
    let c2 = 2 * twist[0] * twist[1];
    let form = p2_bundle_divisor_form(&P1_X_P1, c1, c2, a, f);
    let anticanonical = p2_bundle_divisor_anticanonical(MINUS_K_QUADRIC, c1, a, f);
    let kx3 = cube(&form, &anticanonical)?;
    let closed = antican_cube_divisor_in_p2_bundle(&surface_bundle_data(&P1_X_P1, MINUS_K_QUADRIC, c1, c2, f));
    if kx3 != closed {
        return Err(Error::Inconsistency(format!("P^2-bundle divisor: form gives {kx3}, closed form {closed}")));
    }
    rank3_record(RayType::C1, form, anticanonical, kx3, describe::divisor_in_p2_bundle(a, f, twist))
}

fn rank3_record(conic: RayType, form: TrilinearForm, anticanonical: DivisorClass, kx3: i64, description: String) -> Result<SolutionRecord> {
    let record = SolutionRecord {
        rho: 3,
        rays: vec![RaySpec::new(conic), RaySpec::new(RayType::E1)],
        kx3,
        anticanonical,
        form,
        table_id: String::new(),
        descriptions: vec![description],
        char_note: None,
        primitive: true,
    };
    record.validate()?;
    Ok(record)
}
