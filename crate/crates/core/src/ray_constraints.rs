//! Extremal-ray descriptors, the `c2 . H` table, the balance identity and the
//! lattice-index elimination.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Extremal ray type. `E34` stands for a ray of type `E3` or `E4`.
///
/// The derived order `C1 < C2 < D1 < D2 < D3 < E1 < E2 < E34 < E5` is the
/// canonical order of rays inside a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RayType {
    C1,
    C2,
    D1,
    D2,
    D3,
    E1,
    E2,
    E34,
    E5,
}

impl RayType {
    pub const ALL: [RayType; 9] = [
        RayType::C1,
        RayType::C2,
        RayType::D1,
        RayType::D2,
        RayType::D3,
        RayType::E1,
        RayType::E2,
        RayType::E34,
        RayType::E5,
    ];

    /// Conic bundle over a surface.
    pub fn is_c(self) -> bool {
        matches!(self, RayType::C1 | RayType::C2)
    }

    /// Del Pezzo fibration over a curve.
    pub fn is_d(self) -> bool {
        matches!(self, RayType::D1 | RayType::D2 | RayType::D3)
    }

    /// Divisorial contraction.
    pub fn is_e(self) -> bool {
        !self.is_c() && !self.is_d()
    }

    /// Conic-bundle type of the given length.
    pub fn conic_of_length(mu: i64) -> Result<RayType> {
        match mu {
            1 => Ok(RayType::C1),
            2 => Ok(RayType::C2),
            other => Err(Error::Constraint(format!("no conic bundle of length {other}"))),
        }
    }
}

impl fmt::Display for RayType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RayType::C1 => "C1",
            RayType::C2 => "C2",
            RayType::D1 => "D1",
            RayType::D2 => "D2",
            RayType::D3 => "D3",
            RayType::E1 => "E1",
            RayType::E2 => "E2",
            RayType::E34 => "E3E4",
            RayType::E5 => "E5",
        };
        f.write_str(s)
    }
}

impl FromStr for RayType {
    type Err = Error;

    /// Case-insensitive; `E34` accepts `E3E4`, `E34`, `E3` and `E4`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        let ty = match t.as_str() {
            "C1" => RayType::C1,
            "C2" => RayType::C2,
            "D1" => RayType::D1,
            "D2" => RayType::D2,
            "D3" => RayType::D3,
            "E1" => RayType::E1,
            "E2" => RayType::E2,
            "E3E4" | "E34" | "E3" | "E4" => RayType::E34,
            "E5" => RayType::E5,
            _ => return Err(Error::UnknownRayType(s.to_string())),
        };
        Ok(ty)
    }
}

/// Length `mu_R` of a ray of the given type.
pub fn mu_of(t: RayType) -> i64 {
    match t {
        RayType::C1 | RayType::D1 | RayType::E1 | RayType::E34 | RayType::E5 => 1,
        RayType::C2 | RayType::D2 | RayType::E2 => 2,
        RayType::D3 => 3,
    }
}

/// Extremal-ray descriptor with the invariants relevant to its type.
///
/// `r` and `l3` are the index and `L^3` of the target of an E-type
/// contraction. `genus` is `g(B)` of the blown-up curve of an `E1` ray. `d2`
/// is `(-K_X)^2` on a fibre of a D-type ray. `e` is the twist of the
/// tautological bundle when an `E2`/`E5` ray sits on a `P^1`-bundle over `P^2`.
/// `delta_bidegree` is the discriminant bidegree of a conic bundle over
/// `P^1 x P^1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RaySpec {
    #[serde(rename = "type")]
    pub ray_type: RayType,
    pub mu: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l3: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_b: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_delta: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_bidegree: Option<[i64; 2]>,
}

impl RaySpec {
    /// A bare descriptor with `mu` filled in from the type.
    pub fn new(ray_type: RayType) -> Self {
        Self {
            ray_type,
            mu: mu_of(ray_type),
            r: None,
            l3: None,
            deg_b: None,
            genus: None,
            deg_delta: None,
            d2: None,
            e: None,
            delta_bidegree: None,
        }
    }

    /// Conic-bundle ray with discriminant degree.
    pub fn conic(ray_type: RayType, deg_delta: i64) -> Self {
        Self { deg_delta: Some(deg_delta), ..Self::new(ray_type) }
    }

    /// Del Pezzo fibration ray with fibre degree.
    pub fn del_pezzo(ray_type: RayType, d2: i64) -> Self {
        Self { d2: Some(d2), ..Self::new(ray_type) }
    }

    /// `E1` ray blowing up a curve of degree `deg_b` and genus `genus` on a
    /// Fano threefold of index `r`.
    pub fn blowup(r: i64, l3: i64, deg_b: i64, genus: i64) -> Self {
        Self { r: Some(r), l3: Some(l3), deg_b: Some(deg_b), genus: Some(genus), ..Self::new(RayType::E1) }
    }

    /// E-type ray contracting a divisor to a point on a target of index `r`.
    pub fn point_contraction(ray_type: RayType, r: i64, l3: i64) -> Self {
        Self { r: Some(r), l3: Some(l3), ..Self::new(ray_type) }
    }

    /// Checks the type invariants.
    pub fn validate(&self) -> Result<()> {
        if self.mu != mu_of(self.ray_type) {
            return Err(Error::Constraint(format!("{} has length {}, not {}", self.ray_type, mu_of(self.ray_type), self.mu)));
        }
        if self.ray_type == RayType::E1 && self.r.is_some_and(|r| r < 2) {
            return Err(Error::Constraint("E1 target index must be at least 2".into()));
        }
        if self.ray_type == RayType::C1 && self.deg_delta.is_some_and(|d| d < 1) {
            return Err(Error::Constraint("C1 discriminant degree must be positive".into()));
        }
        Ok(())
    }

    fn require(&self, v: Option<i64>, field: &'static str) -> Result<i64> {
        v.ok_or(Error::IncompleteSpec { ray_type: self.ray_type, field })
    }
}

fn exact_div(num: i64, den: i64) -> Result<i64> {
    if den == 0 {
        return Err(Error::Division("c2 . H"));
    }
    if num % den != 0 {
        return Err(Error::Constraint(format!("{den} does not divide {num}")));
    }
    Ok(num / den)
}

/// `c2(X) . H` for the pullback `H` of the ample generator along the ray.
pub fn c2_dot_h(s: &RaySpec) -> Result<i64> {
    match s.ray_type {
        RayType::C1 => Ok(6 + s.require(s.deg_delta, "deg_delta")?),
        RayType::C2 => Ok(6),
        RayType::D1 => Ok(12 - s.require(s.d2, "d2")?),
        RayType::D2 => Ok(4),
        RayType::D3 => Ok(3),
        RayType::E1 => Ok(exact_div(24, s.require(s.r, "r")?)? + s.require(s.deg_b, "deg_b")?),
        RayType::E2 | RayType::E34 => exact_div(24, s.require(s.r, "r")?),
        RayType::E5 => exact_div(45, s.require(s.r, "r")?),
    }
}

/// `24 = mu2 (c2 . H1) + mu1 (c2 . H2)`.
pub fn balance_check(mu1: i64, mu2: i64, c2h1: i64, c2h2: i64) -> bool {
    mu2 * c2h1 + mu1 * c2h2 == 24
}

/// Admissible `L^3` for a Fano threefold of Picard rank 1 and index `r`.
pub fn l3_range(r: i64) -> Result<BTreeSet<i64>> {
    match r {
        4 => Ok(BTreeSet::from([1])),
        3 => Ok(BTreeSet::from([2])),
        2 => Ok((1..=5).collect()),
        other => Err(Error::UnsupportedIndex(other)),
    }
}

/// `(r1 - mu2 / a)^2 L1^3`, the upper bound for the degree of an `E1` centre.
pub fn deg_b_upper_bound(r1: i64, mu2: i64, a: i64, l1_cubed: i64) -> Result<Rational64> {
    if a == 0 {
        return Err(Error::Division("deg B upper bound"));
    }
    let t = Rational64::from_integer(r1) - Rational64::new(mu2, a);
    Ok(t * t * l1_cubed)
}

/// Largest value of `c2 . H` over all ray types.
const C2_DOT_H_MAX: i64 = 45;

/// Possible values of `c2 . H` for a ray of type `t` when the lattice index is
/// `a` and the other ray has length `mu_other`.
fn c2_values(t: RayType, a: i64, mu_other: i64) -> Result<BTreeSet<i64>> {
    let quotients = |num: i64| -> BTreeSet<i64> {
        (1..=num).filter(|r| num % r == 0).map(|r| num / r).filter(|v| *v <= 24 || *v == 45).collect()
    };
    let values = match t {
        RayType::C1 => (7..=17).collect(),
        RayType::C2 => BTreeSet::from([6]),
        RayType::D1 => (1..=7).map(|d2| 12 - d2).collect(),
        RayType::D2 => BTreeSet::from([4]),
        RayType::D3 => BTreeSet::from([3]),
        RayType::E2 | RayType::E34 => quotients(24),
        RayType::E5 => quotients(45),
        RayType::E1 => {
            let mut out = BTreeSet::new();
            for r in 2..=4 {
                for l3 in l3_range(r)? {
                    let bound = deg_b_upper_bound(r, mu_other, a, l3)?.floor().to_integer();
                    out.extend((1..=bound).map(|deg_b| 24 / r + deg_b));
                }
            }
            out
        }
    };
    Ok(values)
}

fn prime_factors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `-aK = mu2 H1 + mu1 H2` with both `H_i` primitive: a prime dividing `a` and
/// exactly one of the lengths would make the other `H_i` divisible.
fn primitive_compatible(a: i64, mu1: i64, mu2: i64) -> bool {
    prime_factors(a).into_iter().all(|p| (mu1 % p == 0) == (mu2 % p == 0))
}

/// For a conic bundle paired with a del Pezzo fibration, `a^2 (-K)^3 = 6 mu_D^2`
/// and `(-K)^3` is even.
fn conic_del_pezzo_compatible(a: i64, t1: RayType, t2: RayType) -> bool {
    let mu_d = if t1.is_c() && t2.is_d() {
        mu_of(t2)
    } else if t2.is_c() && t1.is_d() {
        mu_of(t1)
    } else {
        return true;
    };
    let num = 6 * mu_d * mu_d;
    num % (a * a) == 0 && (num / (a * a)) % 2 == 0
}

/// Lattice indices `a = [Pic X : Z H1 + Z H2]` compatible with the `c2 . H`
/// table, its bounds, primitivity of `H1` and `H2` and the `deg B` bound.
///
/// An empty result means the pair admits no index at all and is reported as
/// an inconsistency.
pub fn lattice_index_candidates(mu1: i64, mu2: i64, type1: RayType, type2: RayType) -> Result<BTreeSet<i64>> {
    if mu_of(type1) != mu1 || mu_of(type2) != mu2 {
        return Err(Error::Constraint(format!(
            "lengths ({mu1}, {mu2}) do not match ray types ({type1}, {type2})"
        )));
    }
    let a_max = (mu1 + mu2) * C2_DOT_H_MAX / 24;
    let mut out = BTreeSet::new();
    for a in 1..=a_max {
        if !primitive_compatible(a, mu1, mu2) || !conic_del_pezzo_compatible(a, type1, type2) {
            continue;
        }
        let v1 = c2_values(type1, a, mu2)?;
        let v2 = c2_values(type2, a, mu1)?;
        let hit = v1.iter().any(|c1| {
            let rest = 24 * a - mu2 * c1;
            rest > 0 && rest % mu1 == 0 && v2.contains(&(rest / mu1))
        });
        if hit {
            out.insert(a);
        }
    }
    if out.is_empty() {
        return Err(Error::Inconsistency(format!("no lattice index for ({type1}, {type2})")));
    }
    Ok(out)
}
