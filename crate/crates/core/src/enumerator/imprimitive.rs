//! Families with an `E1` ray: the blowup `f1: X -> Y1` of a Fano threefold of
//! Picard rank 1 along a smooth curve `B1`, paired with a second ray.
//!
//! With `H1 = f1^* L1` and `-K = mu2 H1 + H2`, each pairing is a system of
//! three equations in `(r1, L1^3, deg B1)` and the second-ray data: the `c2`
//! balance and the two expressions for `H1^2 H2` and `H1 H2^2`.

use std::ops::RangeInclusive;

use num_rational::Rational64;

use super::{admissible_genus, describe, SolutionRecord};
use crate::error::{Error, Result};
use crate::picard_lattice::{anticanonical_class, cube, TrilinearForm};
use crate::ray_constraints::{balance_check, c2_dot_h, l3_range, mu_of, RaySpec, RayType};

/// Bounded search domain of the imprimitive solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    /// Index `r1` of the blown-up threefold.
    pub indices: Vec<i64>,
    pub deg_b: RangeInclusive<i64>,
    pub deg_delta: RangeInclusive<i64>,
    /// `L2^3` of the target of a second E-type ray.
    pub second_l3: RangeInclusive<i64>,
}

impl Default for Domain {
    fn default() -> Self {
        Self { indices: vec![2, 3, 4], deg_b: 1..=24, deg_delta: 0..=12, second_l3: 1..=24 }
    }
}

impl Domain {
    /// `(r, L^3, deg B)` for every admissible blown-up threefold and centre degree.
    fn blowups(&self) -> Result<Vec<(i64, i64, i64)>> {
        let mut out = Vec::new();
        for &r in &self.indices {
            for l3 in l3_range(r)? {
                out.extend(self.deg_b.clone().map(|deg_b| (r, l3, deg_b)));
            }
        }
        Ok(out)
    }

    fn deg_delta_for(&self, t: RayType) -> RangeInclusive<i64> {
        match t {
            RayType::C1 => (*self.deg_delta.start()).max(1)..=*self.deg_delta.end(),
            _ => 0..=0,
        }
    }
}

/// `(-K)^2` on a fibre of a del Pezzo fibration of the given type.
pub fn d2_domain(t: RayType) -> RangeInclusive<i64> {
    match t {
        RayType::D1 => 1..=7,
        RayType::D2 => 8..=8,
        RayType::D3 => 9..=9,
        _ => RangeInclusive::new(1, 0),
    }
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn q(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Finishes an `E1` record: computes `(-K)^3` and the genus of every `E1`
/// centre, pruning inadmissible data.
fn e1_record((r, l3, deg_b): (i64, i64, i64), mu2: i64, second: RaySpec, form: TrilinearForm) -> Result<Option<SolutionRecord>> {
    let kx3 = cube(&form, &anticanonical_class(1, mu2, 2)?)?;
    if kx3 <= 0 || kx3 % 2 != 0 {
        return Ok(None);
    }
    let Some(genus) = admissible_genus(kx3, r, l3, deg_b)? else {
        return Ok(None);
    };
    let mut second = second;
    if let (RayType::E1, Some(r2), Some(l2), Some(b2)) = (second.ray_type, second.r, second.l3, second.deg_b) {
        let Some(g2) = admissible_genus(kx3, r2, l2, b2)? else {
            return Ok(None);
        };
        second.genus = Some(g2);
    }
    let mut record = SolutionRecord::rank2([RaySpec::blowup(r, l3, deg_b, genus), second], form, Vec::new())?;
    record.descriptions = record
        .rays
        .iter()
        .filter_map(|ray| match (ray.ray_type, ray.r, ray.l3, ray.deg_b, ray.genus) {
            (RayType::E1, Some(r), Some(l3), Some(deg_b), Some(g)) => Some(describe::blowup(r, l3, deg_b, g)),
            _ => None,
        })
        .collect();
    Ok(Some(record))
}

fn balanced(e1: (i64, i64, i64), mu2: i64, second: &RaySpec) -> Result<bool> {
    let (r, _, deg_b) = e1;
    let first = RaySpec { r: Some(r), deg_b: Some(deg_b), ..RaySpec::new(RayType::E1) };
    Ok(balance_check(1, mu2, c2_dot_h(&first)?, c2_dot_h(second)?))
}

/// `E1` paired with a conic bundle over `P^2`.
pub fn solve_e1_c(sub: RayType) -> Result<Vec<SolutionRecord>> {
    solve_e1_c_in(sub, &Domain::default())
}

/// [`solve_e1_c`] over an explicit domain.
pub fn solve_e1_c_in(sub: RayType, domain: &Domain) -> Result<Vec<SolutionRecord>> {
    if !sub.is_c() {
        return Err(Error::Constraint(format!("{sub} is not a conic bundle type")));
    }
    let mu2 = mu_of(sub);
    let mut out = Vec::new();
    for e1 in domain.blowups()? {
        let (r, l3, deg_b) = e1;
        for deg_delta in domain.deg_delta_for(sub) {
            let second = RaySpec::conic(sub, deg_delta);
            if !balanced(e1, mu2, &second)? {
                continue;
            }
            let h112 = (r - mu2) * l3;
            let h122 = (r - mu2) * (r - mu2) * l3 - deg_b;
            if q(h112) != Rational64::new(8 - deg_delta, mu2 * mu2) || q(h122) != Rational64::new(2, mu2) {
                continue;
            }
            let form = TrilinearForm::rank2(l3, h112, h122, 0);
            out.extend(e1_record(e1, mu2, second, form)?);
        }
    }
    Ok(out)
}

/// `E1` paired with a del Pezzo fibration over `P^1`.
pub fn solve_e1_d(sub: RayType) -> Result<Vec<SolutionRecord>> {
    solve_e1_d_in(sub, &Domain::default())
}

/// [`solve_e1_d`] over an explicit domain.
pub fn solve_e1_d_in(sub: RayType, domain: &Domain) -> Result<Vec<SolutionRecord>> {
    if !sub.is_d() {
        return Err(Error::Constraint(format!("{sub} is not a del Pezzo fibration type")));
    }
    let mu2 = mu_of(sub);
    let mut out = Vec::new();
    for e1 in domain.blowups()? {
        let (r, l3, deg_b) = e1;
        for d2 in d2_domain(sub) {
            let second = RaySpec::del_pezzo(sub, d2);
            if !balanced(e1, mu2, &second)? {
                continue;
            }
            let h112 = (r - mu2) * l3;
            let h122 = (r - mu2) * (r - mu2) * l3 - deg_b;
            if q(h112) != Rational64::new(d2, mu2 * mu2) || h122 != 0 {
                continue;
            }
            let form = TrilinearForm::rank2(l3, h112, 0, 0);
            out.extend(e1_record(e1, mu2, second, form)?);
        }
    }
    Ok(out)
}

/// `E1` paired with a divisorial contraction.
pub fn solve_e1_e(sub: RayType) -> Result<Vec<SolutionRecord>> {
    solve_e1_e_in(sub, &Domain::default())
}

/// [`solve_e1_e`] over an explicit domain.
pub fn solve_e1_e_in(sub: RayType, domain: &Domain) -> Result<Vec<SolutionRecord>> {
    match sub {
        RayType::E1 => solve_e1_e1(domain),
        RayType::E2 | RayType::E34 => solve_e1_point(sub, domain, 24, |r2, mu2| Rational64::new(r2 - 1, mu2)),
        RayType::E5 => solve_e1_point(sub, domain, 45, |r2, _| Rational64::new(r2, 2) - 1),
        other => Err(Error::Constraint(format!("{other} is not a divisorial type"))),
    }
}

/// Second ray contracting a divisor to a point, with `mu2 H1 = s H2 - a D2`
/// and `s = step(r2, mu2)`, so that `H1^2 H2 = s^2 L2^3` and `H1 H2^2 = s L2^3`.
fn solve_e1_point(
    sub: RayType,
    domain: &Domain,
    c2_numerator: i64,
    step: impl Fn(i64, i64) -> Rational64,
) -> Result<Vec<SolutionRecord>> {
    let mu2 = mu_of(sub);
    let mut out = Vec::new();
    for e1 in domain.blowups()? {
        let (r, l3, deg_b) = e1;
        let h112 = (r - mu2) * l3;
        let h122 = (r - mu2) * (r - mu2) * l3 - deg_b;
        for r2 in divisors(c2_numerator) {
            let s = step(r2, mu2);
            for l2 in domain.second_l3.clone() {
                let second = RaySpec::point_contraction(sub, r2, l2);
                if !balanced(e1, mu2, &second)? {
                    continue;
                }
                if s * s * l2 != q(h112) || s * l2 != q(h122) {
                    continue;
                }
                let form = TrilinearForm::rank2(l3, h112, h122, l2);
                out.extend(e1_record(e1, mu2, second, form)?);
            }
        }
    }
    Ok(out)
}

/// Two `E1` rays; each unordered pair is emitted once with `(r1, deg B1) >= (r2, deg B2)`.
fn solve_e1_e1(domain: &Domain) -> Result<Vec<SolutionRecord>> {
    let blowups = domain.blowups()?;
    let mut out = Vec::new();
    for &first in &blowups {
        let (r1, l1, b1) = first;
        for &(r2, l2, b2) in &blowups {
            if (r1, b1) < (r2, b2) {
                continue;
            }
            let second = RaySpec { r: Some(r2), l3: Some(l2), deg_b: Some(b2), ..RaySpec::new(RayType::E1) };
            if !balanced(first, 1, &second)? {
                continue;
            }
            if (r1 - 1) * l1 != (r2 - 1) * (r2 - 1) * l2 - b2 || (r2 - 1) * l2 != (r1 - 1) * (r1 - 1) * l1 - b1 {
                continue;
            }
            let form = TrilinearForm::rank2(l1, (r1 - 1) * l1, (r2 - 1) * l2, l2);
            out.extend(e1_record(first, 1, second, form)?);
        }
    }
    Ok(out)
}
