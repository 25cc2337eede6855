//! Case solvers producing one [`SolutionRecord`] per numerically admissible
//! family, and the dispatcher that merges them into a labelled table.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chern_calculus::{genus_from_blowup, ky3};
use crate::error::{Error, Result};
use crate::picard_lattice::{anticanonical_class, cube, DivisorClass, TrilinearForm};
use crate::ray_constraints::{balance_check, c2_dot_h, RaySpec, RayType};
use crate::table_oracle::{self, TableRow};

pub mod describe;
mod imprimitive;
mod primitive;
mod rho3;

pub use imprimitive::{d2_domain, solve_e1_c, solve_e1_c_in, solve_e1_d, solve_e1_d_in, solve_e1_e, solve_e1_e_in, Domain};
pub use primitive::{ce_pairing_admissible, solve_c_c, solve_c_d, solve_c_e_primitive};
pub use rho3::{solve_rho3_ccc, solve_rho3_ce};

/// One classified family with every solved invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub rho: usize,
    /// Rays in canonical type order.
    pub rays: Vec<RaySpec>,
    /// `(-K_X)^3`.
    pub kx3: i64,
    /// `-K_X` in the basis of `form`.
    pub anticanonical: DivisorClass,
    /// Intersection form on the basis of ray pullbacks.
    pub form: TrilinearForm,
    /// Row label, empty until matched against a table.
    pub table_id: String,
    pub descriptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_note: Option<String>,
    /// Not a blowup of another Fano threefold along a curve.
    pub primitive: bool,
}

impl SolutionRecord {
    /// Builds a rank-2 record with `-K = mu2 H1 + mu1 H2` and canonical ray order.
    pub(crate) fn rank2(rays: [RaySpec; 2], form: TrilinearForm, descriptions: Vec<String>) -> Result<Self> {
        let anticanonical = anticanonical_class(rays[0].mu, rays[1].mu, 2)?;
        let kx3 = cube(&form, &anticanonical)?;
        check_kx3(kx3)?;
        let primitive = !rays.iter().any(|r| r.ray_type == RayType::E1);
        let record = Self {
            rho: 2,
            rays: rays.to_vec(),
            kx3,
            anticanonical,
            form,
            table_id: String::new(),
            descriptions,
            char_note: None,
            primitive,
        };
        record.canonical()
    }

    /// Ray types in record order.
    pub fn ray_types(&self) -> Vec<RayType> {
        self.rays.iter().map(|r| r.ray_type).collect()
    }

    /// `g(B)` of the first `E1` ray carrying a genus.
    pub fn genus(&self) -> Option<i64> {
        self.rays.iter().find(|r| r.ray_type == RayType::E1).and_then(|r| r.genus)
    }

    /// `c2 . H_i` for both rays of a rank-2 record.
    pub fn c2_values(&self) -> Result<[i64; 2]> {
        match self.rays.as_slice() {
            [a, b] if self.rho == 2 => Ok([c2_dot_h(a)?, c2_dot_h(b)?]),
            _ => Err(Error::Scope("c2 balance is defined for Picard rank 2".into())),
        }
    }

    /// `24 = mu2 (c2 . H1) + mu1 (c2 . H2)` for a rank-2 record.
    pub fn balance_holds(&self) -> Result<bool> {
        let [c1, c2] = self.c2_values()?;
        Ok(balance_check(self.rays[0].mu, self.rays[1].mu, c1, c2))
    }

    /// Reorders the two rays of a rank-2 record by [`canonical_ray_order`],
    /// relabelling the basis.
    pub fn canonical(mut self) -> Result<Self> {
        if self.rho == 2 && self.rays.len() == 2 && canonical_ray_order(&self.rays[0], &self.rays[1]) == Ordering::Greater {
            self.rays.swap(0, 1);
            self.form = self.form.permuted(&[1, 0])?;
            self.anticanonical = self.anticanonical.permuted(&[1, 0])?;
        }
        Ok(self)
    }

    /// Presentation with the two rays swapped; the inverse of [`Self::canonical`].
    pub fn swapped(&self) -> Result<Self> {
        let mut out = self.clone();
        if out.rays.len() == 2 && out.rho == 2 {
            out.rays.swap(0, 1);
            out.form = out.form.permuted(&[1, 0])?;
            out.anticanonical = out.anticanonical.permuted(&[1, 0])?;
        }
        Ok(out)
    }

    /// Checks the record invariants: even positive degree within range, the
    /// degree equal to the cube of the stored class, genus formula and, in
    /// rank 2, the anticanonical class and the `c2` balance.
    pub fn validate(&self) -> Result<()> {
        check_kx3(self.kx3)?;
        let k = cube(&self.form, &self.anticanonical)?;
        if k != self.kx3 {
            return Err(Error::Inconsistency(format!("(-K)^3 = {k} but record stores {}", self.kx3)));
        }
        for ray in &self.rays {
            ray.validate()?;
            if let (RayType::E1, Some(r), Some(l3), Some(deg_b), Some(g)) = (ray.ray_type, ray.r, ray.l3, ray.deg_b, ray.genus) {
                let expected = genus_from_blowup(self.kx3, ky3(r, l3)?, r, deg_b)?;
                if expected != g {
                    return Err(Error::Inconsistency(format!("genus {g} differs from {expected}")));
                }
            }
        }
        if self.rho == 2 {
            let k = anticanonical_class(self.rays[0].mu, self.rays[1].mu, 2)?;
            if k != self.anticanonical {
                return Err(Error::Inconsistency(format!("-K = {} but lengths give {k}", self.anticanonical)));
            }
            if !self.balance_holds()? {
                return Err(Error::Inconsistency("c2 balance fails".into()));
            }
        }
        Ok(())
    }
}

/// Rays sort by type; rays of equal type put the larger `(r, deg B)` first.
pub fn canonical_ray_order(a: &RaySpec, b: &RaySpec) -> Ordering {
    a.ray_type.cmp(&b.ray_type).then_with(|| (b.r, b.deg_b).cmp(&(a.r, a.deg_b)))
}

fn check_kx3(kx3: i64) -> Result<()> {
    if kx3 % 2 != 0 {
        return Err(Error::Parity(format!("(-K)^3 = {kx3} is odd")));
    }
    if !(1..=72).contains(&kx3) {
        return Err(Error::Constraint(format!("(-K)^3 = {kx3} outside 1..=72")));
    }
    Ok(())
}

/// A named case solver.
#[derive(Clone, Copy)]
pub struct CaseSolver {
    pub name: &'static str,
    pub run: fn() -> Result<Vec<SolutionRecord>>,
}

/// Every case solver for the given Picard rank.
pub fn case_solvers(rho: usize) -> Result<Vec<CaseSolver>> {
    let s = |name: &'static str, run: fn() -> Result<Vec<SolutionRecord>>| CaseSolver { name, run };
    match rho {
        2 => Ok(vec![
            s("E1-C1", || solve_e1_c(RayType::C1)),
            s("E1-C2", || solve_e1_c(RayType::C2)),
            s("E1-D1", || solve_e1_d(RayType::D1)),
            s("E1-D2", || solve_e1_d(RayType::D2)),
            s("E1-D3", || solve_e1_d(RayType::D3)),
            s("E1-E1", || solve_e1_e(RayType::E1)),
            s("E1-E2", || solve_e1_e(RayType::E2)),
            s("E1-E3E4", || solve_e1_e(RayType::E34)),
            s("E1-E5", || solve_e1_e(RayType::E5)),
            s("C-C", solve_c_c),
            s("C-D", solve_c_d),
            s("C-E", solve_c_e_primitive),
        ]),
        3 => Ok(vec![s("C-C-C", solve_rho3_ccc), s("C-E", solve_rho3_ce)]),
        other => Err(Error::Scope(format!("Picard rank {other} is not classified"))),
    }
}

/// Execution strategy for running the case solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Data-parallel over solvers; sequential when built without `parallel`.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Runs every solver and concatenates the results in solver order.
pub fn run_solvers(solvers: &[CaseSolver], strategy: Strategy) -> Result<Vec<SolutionRecord>> {
    let batches: Vec<Vec<SolutionRecord>> = match strategy {
        Strategy::Sequential => solvers.iter().map(|s| (s.run)()).collect::<Result<_>>()?,
        Strategy::Parallel => run_parallel(solvers)?,
    };
    Ok(batches.into_iter().flatten().collect())
}

#[cfg(feature = "parallel")]
fn run_parallel(solvers: &[CaseSolver]) -> Result<Vec<Vec<SolutionRecord>>> {
    use rayon::prelude::*;
    solvers.par_iter().map(|s| (s.run)()).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(solvers: &[CaseSolver]) -> Result<Vec<Vec<SolutionRecord>>> {
    solvers.iter().map(|s| (s.run)()).collect()
}

/// All families of Picard rank `rho`, labelled against the embedded table.
pub fn enumerate_all(rho: usize, primitive_only: bool) -> Result<Vec<SolutionRecord>> {
    let truth = table_oracle::ground_truth(rho, false)?;
    enumerate_all_with(rho, primitive_only, Strategy::default(), &truth)
}

/// All families of Picard rank `rho`, labelled against `truth`.
///
/// Records are deduplicated by ray types and degree, then sorted by degree and
/// table id.
pub fn enumerate_all_with(rho: usize, primitive_only: bool, strategy: Strategy, truth: &[TableRow]) -> Result<Vec<SolutionRecord>> {
    if rho == 3 && !primitive_only {
        return Err(Error::Scope("only primitive families of Picard rank 3 are classified".into()));
    }
    let solvers = case_solvers(rho)?;
    let mut unique: BTreeMap<(Vec<RayType>, i64), SolutionRecord> = BTreeMap::new();
    for record in run_solvers(&solvers, strategy)? {
        unique.entry((record.ray_types(), record.kx3)).or_insert(record);
    }
    let mut records: Vec<SolutionRecord> = unique.into_values().collect();
    table_oracle::assign_table_ids(&mut records, truth)?;
    if primitive_only {
        records.retain(|r| r.primitive);
    }
    records.sort_by_key(|r| (r.kx3, table_oracle::table_id_key(&r.table_id)));
    Ok(records)
}

/// Genus of an `E1` centre, or `None` when the blowup data are inadmissible.
pub(crate) fn admissible_genus(kx3: i64, r: i64, l3: i64, deg_b: i64) -> Result<Option<i64>> {
    match genus_from_blowup(kx3, ky3(r, l3)?, r, deg_b) {
        Ok(g) => Ok(Some(g)),
        Err(Error::Constraint(_) | Error::Parity(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
