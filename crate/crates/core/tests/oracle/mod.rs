//! Independent brute-force oracles for the case systems.
//!
//! The oracles never call the case solvers or the library's intersection
//! arithmetic. Blowups are parametrized by `(r, L^3, deg B, g)` and intersected
//! in the basis `(H, D)` of the pulled-back generator and the exceptional
//! divisor; primitive pairs sweep raw form entries. Each second ray is
//! recognised from its defining intersection numbers.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fano_core::enumerator::{
    canonical_ray_order, solve_c_c, solve_c_d, solve_c_e_primitive, solve_e1_c_in, solve_e1_d_in, solve_e1_e_in,
    solve_rho3_ccc, Domain, SolutionRecord,
};
use fano_core::{RaySpec, RayType};

/// `((-K)^3, rays in canonical order)`.
pub type Key = (i64, Vec<RaySpec>);

pub const DEG_B: std::ops::RangeInclusive<i64> = 1..=24;
pub const GENUS: std::ops::RangeInclusive<i64> = 0..=60;
pub const DEG_DELTA: std::ops::RangeInclusive<i64> = 0..=12;
pub const D2: std::ops::RangeInclusive<i64> = 1..=9;
pub const SECOND_L3: std::ops::RangeInclusive<i64> = 1..=24;
pub const FORM_ENTRY: std::ops::RangeInclusive<i64> = 0..=24;

/// Rank-1 Fano threefolds of index `r >= 2`: `r = 4` is `P^3`, `r = 3` the
/// quadric, `r = 2` the del Pezzo threefolds of degree 1 to 5.
fn l3_values(r: i64) -> Vec<i64> {
    match r {
        4 => vec![1],
        3 => vec![2],
        2 => (1..=5).collect(),
        _ => Vec::new(),
    }
}

fn length(t: RayType) -> i64 {
    match t {
        RayType::C2 | RayType::D2 | RayType::E2 => 2,
        RayType::D3 => 3,
        _ => 1,
    }
}

/// Symmetric trilinear form on a rank-2 lattice given by
/// `[e1^3, e1^2 e2, e1 e2^2, e2^3]`.
#[derive(Clone, Copy)]
struct Form([i64; 4]);

impl Form {
    fn product(&self, x: [i64; 2], y: [i64; 2], z: [i64; 2]) -> i64 {
        let mut total = 0;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                for (k, zk) in z.iter().enumerate() {
                    total += xi * yj * zk * self.0[i + j + k];
                }
            }
        }
        total
    }

    fn cube(&self, x: [i64; 2]) -> i64 {
        self.product(x, x, x)
    }
}

fn scale(c: i64, x: [i64; 2]) -> [i64; 2] {
    [c * x[0], c * x[1]]
}

fn sub(x: [i64; 2], y: [i64; 2]) -> [i64; 2] {
    [x[0] - y[0], x[1] - y[1]]
}

fn canonical(kx3: i64, mut rays: Vec<RaySpec>) -> Key {
    rays.sort_by(canonical_ray_order);
    (kx3, rays)
}

/// `c2 . H` per type, from the Riemann-Roch table.
fn c2_dot(t: RayType, ray: &RaySpec) -> Option<i64> {
    let q = |n: i64, r: Option<i64>| r.filter(|r| n % r == 0).map(|r| n / r);
    match t {
        RayType::C1 | RayType::C2 => ray.deg_delta.map(|d| 6 + d),
        RayType::D1 | RayType::D2 | RayType::D3 => ray.d2.map(|d| 12 - d),
        RayType::E1 => Some(q(24, ray.r)? + ray.deg_b?),
        RayType::E2 | RayType::E34 => q(24, ray.r),
        RayType::E5 => q(45, ray.r),
    }
}

fn balanced(a: &RaySpec, b: &RaySpec) -> bool {
    match (c2_dot(a.ray_type, a), c2_dot(b.ray_type, b)) {
        (Some(ca), Some(cb)) => length(b.ray_type) * ca + length(a.ray_type) * cb == 24,
        _ => false,
    }
}

/// Discriminant degrees admissible for a conic bundle of type `t`.
fn conic_type_allows(t: RayType, deg_delta: i64) -> bool {
    match t {
        RayType::C1 => (1..=11).contains(&deg_delta),
        RayType::C2 => deg_delta == 0,
        _ => false,
    }
}

/// Fibre degrees admissible for a del Pezzo fibration of type `t`.
fn del_pezzo_type_allows(t: RayType, d2: i64) -> bool {
    match t {
        RayType::D1 => (1..=7).contains(&d2),
        RayType::D2 => d2 == 8,
        RayType::D3 => d2 == 9,
        _ => false,
    }
}

/// `(discrepancy multiplier m, D^3)` with `m D = r2 H2 - k (-K)`, encoded as
/// `(m, k, D^3)`.
fn point_data(t: RayType) -> Option<(i64, i64, i64)> {
    match t {
        RayType::E2 => Some((2, 1, 1)),
        RayType::E34 => Some((1, 1, 2)),
        RayType::E5 => Some((1, 2, 4)),
        _ => None,
    }
}

fn target_indices(t: RayType) -> Vec<i64> {
    let n = if t == RayType::E5 { 45 } else { 24 };
    (1..=n).filter(|r| n % r == 0).collect()
}

/// Second-ray recognisers: given the form, `-K`, the pullback `h2` and the
/// first ray, return every matching descriptor of type `t`.
fn second_rays(t: RayType, form: &Form, mk: [i64; 2], h1: [i64; 2], h2: [i64; 2]) -> Vec<RaySpec> {
    let mut out = Vec::new();
    match t {
        RayType::C1 | RayType::C2 => {
            if form.cube(h2) != 0 || form.product(mk, h2, h2) != 2 {
                return out;
            }
            let deg_delta = 12 - form.product(mk, mk, h2);
            if DEG_DELTA.contains(&deg_delta) && conic_type_allows(t, deg_delta) {
                out.push(RaySpec::conic(t, deg_delta));
            }
        }
        RayType::D1 | RayType::D2 | RayType::D3 => {
            if form.cube(h2) != 0 || form.product(h1, h2, h2) != 0 {
                return out;
            }
            let d2 = form.product(mk, mk, h2);
            if D2.contains(&d2) && del_pezzo_type_allows(t, d2) {
                out.push(RaySpec::del_pezzo(t, d2));
            }
        }
        RayType::E2 | RayType::E34 | RayType::E5 => {
            let l2 = form.cube(h2);
            if !SECOND_L3.contains(&l2) {
                return out;
            }
            let (m, k, d3) = point_data(t).expect("point contraction");
            for r2 in target_indices(t) {
                let md = sub(scale(r2, h2), scale(k, mk));
                if md[0] % m != 0 || md[1] % m != 0 {
                    continue;
                }
                let d = [md[0] / m, md[1] / m];
                if form.product(h2, h2, d) == 0 && form.product(h2, d, d) == 0 && form.cube(d) == d3 {
                    out.push(RaySpec::point_contraction(t, r2, l2));
                }
            }
        }
        RayType::E1 => {
            let l2 = form.cube(h2);
            for r2 in 2..=4 {
                if !l3_values(r2).contains(&l2) {
                    continue;
                }
                let d = sub(scale(r2, h2), mk);
                if form.product(h2, h2, d) != 0 {
                    continue;
                }
                let deg_b = -form.product(h2, d, d);
                // D^3 = -(r2 deg B + 2g - 2).
                let two_g = -form.cube(d) - r2 * deg_b + 2;
                if DEG_B.contains(&deg_b) && two_g >= 0 && two_g % 2 == 0 {
                    out.push(RaySpec::blowup(r2, l2, deg_b, two_g / 2));
                }
            }
        }
    }
    out
}

/// Blowup of a rank-1 Fano threefold of index `r` along a curve of degree `b`
/// and genus `g`, in the basis `(H, D)`:
/// `H^3 = L^3`, `H^2 D = 0`, `H D^2 = -b`, `D^3 = -(r b + 2g - 2)`.
fn blowup_form(r: i64, l3: i64, b: i64, g: i64) -> Form {
    Form([l3, 0, -b, -(r * b + 2 * g - 2)])
}

/// Brute force for an `E1` ray paired with a second ray of type `sub`,
/// restricted to the given blown-up indices.
pub fn e1_system_with(sub_type: RayType, indices: &[i64]) -> BTreeSet<Key> {
    let mut out = BTreeSet::new();
    let mu2 = length(sub_type);
    for &r in indices {
        for l3 in l3_values(r) {
            for b in DEG_B {
                for g in GENUS {
                    let form = blowup_form(r, l3, b, g);
                    let h = [1, 0];
                    let mk = [r, -1];
                    let kx3 = form.cube(mk);
                    if kx3 <= 0 || kx3 % 2 != 0 {
                        continue;
                    }
                    let h2 = sub(mk, scale(mu2, h));
                    let first = RaySpec::blowup(r, l3, b, g);
                    for second in second_rays(sub_type, &form, mk, h, h2) {
                        if balanced(&first, &second) {
                            out.insert(canonical(kx3, vec![first.clone(), second]));
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn e1_system(sub_type: RayType) -> BTreeSet<Key> {
    e1_system_with(sub_type, &[2, 3, 4])
}

/// Brute force over pairs led by a conic bundle over `P^2` with no `E1` ray:
/// every form `(H1^3, H1^2 H2, H1 H2^2, H2^3)` with entries in [`FORM_ENTRY`].
pub fn primitive_system() -> BTreeSet<Key> {
    let seconds = [
        RayType::C1,
        RayType::C2,
        RayType::D1,
        RayType::D2,
        RayType::D3,
        RayType::E2,
        RayType::E34,
        RayType::E5,
    ];
    let mut out = BTreeSet::new();
    for t1 in [RayType::C1, RayType::C2] {
        for t2 in seconds {
            let mk = [length(t2), length(t1)];
            for a in FORM_ENTRY {
                for b in FORM_ENTRY {
                    for c in FORM_ENTRY {
                        for d in FORM_ENTRY {
                            let form = Form([a, b, c, d]);
                            let (h1, h2) = ([1, 0], [0, 1]);
                            let kx3 = form.cube(mk);
                            if kx3 <= 0 || kx3 % 2 != 0 {
                                continue;
                            }
                            let firsts = second_rays(t1, &form, mk, h2, h1);
                            if firsts.is_empty() {
                                continue;
                            }
                            for first in &firsts {
                                for mut second in second_rays(t2, &form, mk, h1, h2) {
                                    if !balanced(first, &second) {
                                        continue;
                                    }
                                    if t1 == RayType::C2 && point_data(t2).is_some() {
                                        // The contracted divisor is the negative section of
                                        // P(O + O(e)) over P^2, with D^3 = e^2.
                                        let (_, _, d3) = point_data(t2).expect("point contraction");
                                        second.e = (1..=d3).find(|e| e * e == d3);
                                    }
                                    out.insert(canonical(kx3, vec![first.clone(), second]));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// `(d, (-K)^3)` for three conic bundles over `P^1 x P^1` whose product map
/// has degree `d = H1 H2 H3`, `-K = c (H1 + H2 + H3)` and every fibre
/// `Hi Hj` meeting `-K` in degree 2.
pub fn rho3_ccc_system() -> BTreeSet<(i64, i64)> {
    let mut out = BTreeSet::new();
    for d in FORM_ENTRY.filter(|d| *d > 0) {
        for c in 1..=24 {
            if c * d != 2 {
                continue;
            }
            let kx3 = 6 * c * c * c * d;
            if kx3 % 2 == 0 && kx3 > 0 {
                out.insert((d, kx3));
            }
        }
    }
    out
}

pub fn keys(records: &[SolutionRecord]) -> BTreeSet<Key> {
    records.iter().map(|r| (r.kx3, r.rays.clone())).collect()
}

/// A case system: its name, the solver output and the oracle output.
pub struct System {
    pub name: &'static str,
    pub solver: fn() -> BTreeSet<Key>,
    pub oracle: fn() -> BTreeSet<Key>,
}

fn solved(records: fano_core::Result<Vec<SolutionRecord>>) -> BTreeSet<Key> {
    keys(&records.expect("solver succeeds"))
}

/// The ten case systems of Picard rank 2.
pub fn systems() -> Vec<System> {
    vec![
        System { name: "E1-C1", solver: || solved(solve_e1_c_in(RayType::C1, &Domain::default())), oracle: || e1_system(RayType::C1) },
        System { name: "E1-C2", solver: || solved(solve_e1_c_in(RayType::C2, &Domain::default())), oracle: || e1_system(RayType::C2) },
        System { name: "E1-D1", solver: || solved(solve_e1_d_in(RayType::D1, &Domain::default())), oracle: || e1_system(RayType::D1) },
        System { name: "E1-D2", solver: || solved(solve_e1_d_in(RayType::D2, &Domain::default())), oracle: || e1_system(RayType::D2) },
        System { name: "E1-D3", solver: || solved(solve_e1_d_in(RayType::D3, &Domain::default())), oracle: || e1_system(RayType::D3) },
        System { name: "E1-E1", solver: || solved(solve_e1_e_in(RayType::E1, &Domain::default())), oracle: || e1_system(RayType::E1) },
        System { name: "E1-E2", solver: || solved(solve_e1_e_in(RayType::E2, &Domain::default())), oracle: || e1_system(RayType::E2) },
        System { name: "E1-E3E4", solver: || solved(solve_e1_e_in(RayType::E34, &Domain::default())), oracle: || e1_system(RayType::E34) },
        System { name: "E1-E5", solver: || solved(solve_e1_e_in(RayType::E5, &Domain::default())), oracle: || e1_system(RayType::E5) },
        System {
            name: "C-led primitive",
            solver: || {
                let mut all = solved(solve_c_c());
                all.extend(solved(solve_c_d()));
                all.extend(solved(solve_c_e_primitive()));
                all
            },
            oracle: primitive_system,
        },
    ]
}

/// `(d, (-K)^3)` pairs produced by the rank-3 three-conic solver.
pub fn rho3_ccc_solver() -> BTreeSet<(i64, i64)> {
    solve_rho3_ccc()
        .expect("solver succeeds")
        .iter()
        .map(|r| (r.form.entry(1, 2, 3).expect("rank-3 form"), r.kx3))
        .collect()
}
