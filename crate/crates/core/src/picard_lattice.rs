//! Divisor classes and symmetric trilinear intersection forms on Picard
//! lattices of rank 2 or 3.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_rank(rho: usize) -> Result<()> {
    match rho {
        2 | 3 => Ok(()),
        other => Err(Error::UnsupportedRank(other)),
    }
}

/// Integer coordinates of a divisor class in the basis `H_1, ..., H_rho`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DivisorClass {
    coords: Vec<i64>,
}

impl DivisorClass {
    /// Builds a class from its coordinates; the rank is the coordinate count.
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        check_rank(coords.len())?;
        Ok(Self { coords })
    }

    /// The zero class of rank `rho`.
    pub fn zero(rho: usize) -> Result<Self> {
        Self::new(vec![0; rho])
    }

    /// The basis element `H_i` (1-based) of rank `rho`.
    pub fn basis(rho: usize, i: usize) -> Result<Self> {
        let mut c = Self::zero(rho)?;
        if i == 0 || i > rho {
            return Err(Error::Dimension { expected: rho, found: i });
        }
        c.coords[i - 1] = 1;
        Ok(c)
    }

    pub fn rho(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Coordinate-wise sum.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_rank(self.rho(), other.rho())?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("class addition")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coords })
    }

    /// Multiplication by an integer.
    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow("class scaling")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coords })
    }

    /// Reorders coordinates so that new coordinate `i` is old coordinate `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(self.rho(), perm)?;
        Ok(Self { coords: perm.iter().map(|&p| self.coords[p]).collect() })
    }
}

impl TryFrom<Vec<i64>> for DivisorClass {
    type Error = Error;
    fn try_from(coords: Vec<i64>) -> Result<Self> {
        Self::new(coords)
    }
}

impl From<DivisorClass> for Vec<i64> {
    fn from(c: DivisorClass) -> Self {
        c.coords
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn same_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

fn check_permutation(rho: usize, perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; rho];
    if perm.len() != rho {
        return Err(Error::Dimension { expected: rho, found: perm.len() });
    }
    for &p in perm {
        if p >= rho || seen[p] {
            return Err(Error::Constraint(format!("{perm:?} is not a permutation of 0..{rho}")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// A monomial `H_i H_j H_k` stored with 1-based, non-decreasing indices.
pub type Monomial = [usize; 3];

fn sorted(mut m: Monomial) -> Monomial {
    m.sort_unstable();
    m
}

/// All monomials over `{1..rho}` in lexicographic order.
pub fn monomials(rho: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 1..=rho {
        for j in i..=rho {
            for k in j..=rho {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Symmetric trilinear intersection form, one integer per monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormRepr", into = "FormRepr")]
pub struct TrilinearForm {
    rho: usize,
    entries: BTreeMap<Monomial, i64>,
}

impl TrilinearForm {
    /// Builds a form from `(monomial, value)` pairs. Index order inside a
    /// monomial is irrelevant; every monomial over `{1..rho}` must appear once.
    pub fn from_entries(rho: usize, entries: impl IntoIterator<Item = (Monomial, i64)>) -> Result<Self> {
        check_rank(rho)?;
        let mut map = BTreeMap::new();
        for (m, v) in entries {
            if m.iter().any(|&i| i == 0 || i > rho) {
                return Err(Error::Dimension { expected: rho, found: *m.iter().max().unwrap_or(&0) });
            }
            if map.insert(sorted(m), v).is_some() {
                return Err(Error::Constraint(format!("duplicate monomial {m:?}")));
            }
        }
        let missing: Vec<Monomial> = monomials(rho).into_iter().filter(|m| !map.contains_key(m)).collect();
        if !missing.is_empty() {
            return Err(Error::Constraint(format!("missing monomials {missing:?}")));
        }
        Ok(Self { rho, entries: map })
    }

    /// Rank-2 form from `H1^3, H1^2 H2, H1 H2^2, H2^3`.
    pub fn rank2(h111: i64, h112: i64, h122: i64, h222: i64) -> Self {
        let entries = [([1, 1, 1], h111), ([1, 1, 2], h112), ([1, 2, 2], h122), ([2, 2, 2], h222)];
        Self { rho: 2, entries: entries.into_iter().collect() }
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    /// Value on `H_i H_j H_k` (1-based, any order).
    pub fn entry(&self, i: usize, j: usize, k: usize) -> Result<i64> {
        self.entries
            .get(&sorted([i, j, k]))
            .copied()
            .ok_or(Error::Dimension { expected: self.rho, found: i.max(j).max(k) })
    }

    /// Entries in lexicographic monomial order.
    pub fn entries(&self) -> impl Iterator<Item = (Monomial, i64)> + '_ {
        self.entries.iter().map(|(m, v)| (*m, *v))
    }

    /// Entry values in lexicographic monomial order.
    pub fn values(&self) -> Vec<i64> {
        self.entries.values().copied().collect()
    }

    /// Relabels the basis so that new `H_{i+1}` is old `H_{perm[i]+1}`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(self.rho, perm)?;
        let entries = monomials(self.rho).into_iter().map(|m| {
            let old = [perm[m[0] - 1] + 1, perm[m[1] - 1] + 1, perm[m[2] - 1] + 1];
            (m, self.entries[&sorted(old)])
        });
        Self::from_entries(self.rho, entries)
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    rho: usize,
    entries: BTreeMap<String, i64>,
}

impl From<TrilinearForm> for FormRepr {
    fn from(f: TrilinearForm) -> Self {
        let entries = f
            .entries
            .iter()
            .map(|(m, v)| (format!("{}{}{}", m[0], m[1], m[2]), *v))
            .collect();
        Self { rho: f.rho, entries }
    }
}

impl TryFrom<FormRepr> for TrilinearForm {
    type Error = Error;
    fn try_from(r: FormRepr) -> Result<Self> {
        let entries = r
            .entries
            .into_iter()
            .map(|(key, v)| {
                let digits: Vec<usize> = key.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect();
                match digits.as_slice() {
                    [i, j, k] if key.len() == 3 => Ok(([*i, *j, *k], v)),
                    _ => Err(Error::Constraint(format!("bad monomial key `{key}`"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(r.rho, entries)
    }
}

/// Full multilinear evaluation `sum x_i y_j z_k (H_i H_j H_k)` over ordered
/// index triples.
pub fn triple_product(form: &TrilinearForm, x: &DivisorClass, y: &DivisorClass, z: &DivisorClass) -> Result<i64> {
    let rho = form.rho();
    for c in [x, y, z] {
        same_rank(rho, c.rho())?;
    }
    let mut acc: i128 = 0;
    for i in 0..rho {
        for j in 0..rho {
            for k in 0..rho {
                let v = form.entries[&sorted([i + 1, j + 1, k + 1])];
                acc = i128::from(x.coords[i])
                    .checked_mul(i128::from(y.coords[j]))
                    .and_then(|t| t.checked_mul(i128::from(z.coords[k])))
                    .and_then(|t| t.checked_mul(i128::from(v)))
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow("triple product"))?;
            }
        }
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("triple product"))
}

/// `D^3` for a class `D`.
pub fn cube(form: &TrilinearForm, d: &DivisorClass) -> Result<i64> {
    triple_product(form, d, d, d)
}

/// Anticanonical class in the basis of the ray pullbacks.
///
/// For `rho = 2` this is `mu2 H1 + mu1 H2`. For `rho = 3` the degree `d` of
/// the product map is passed in `mu1`, `mu2` is ignored, and the class is
/// `(2/d)(H1 + H2 + H3)`.
pub fn anticanonical_class(mu1: i64, mu2: i64, rho: usize) -> Result<DivisorClass> {
    match rho {
        2 => {
            for mu in [mu1, mu2] {
                if !(1..=3).contains(&mu) {
                    return Err(Error::Constraint(format!("ray length {mu} outside 1..=3")));
                }
            }
            DivisorClass::new(vec![mu2, mu1])
        }
        3 => {
            let d = mu1;
            if d < 1 || 2 % d != 0 {
                return Err(Error::Constraint(format!("2/{d} is not a positive integer")));
            }
            DivisorClass::new(vec![2 / d; 3])
        }
        other => Err(Error::UnsupportedRank(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(c: &[i64]) -> DivisorClass {
        DivisorClass::new(c.to_vec()).unwrap()
    }

    #[test]
    fn conic_pair_form_gives_twelve() {
        let f = TrilinearForm::rank2(0, 2, 2, 0);
        let k = class(&[1, 1]);
        assert_eq!(triple_product(&f, &k, &k, &k).unwrap(), 12);
    }

    #[test]
    fn zero_class_vanishes() {
        let f = TrilinearForm::rank2(5, -3, 7, 11);
        let z = class(&[0, 0]);
        let k = class(&[2, 1]);
        assert_eq!(triple_product(&f, &z, &k, &k).unwrap(), 0);
    }

    #[test]
    fn blowup_form_gives_sixteen() {
        let f = TrilinearForm::rank2(1, 3, 2, 0);
        let k = class(&[1, 1]);
        assert_eq!(triple_product(&f, &k, &k, &k).unwrap(), 16);
    }

    #[test]
    fn rank_mismatch_is_dimension_error() {
        let f = TrilinearForm::rank2(1, 0, 0, 1);
        let err = triple_product(&f, &class(&[1, 0, 0]), &class(&[1, 0]), &class(&[1, 0])).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 2, found: 3 });
    }

    #[test]
    fn anticanonical_examples() {
        assert_eq!(anticanonical_class(1, 2, 2).unwrap(), class(&[2, 1]));
        assert_eq!(anticanonical_class(2, 2, 2).unwrap(), class(&[2, 2]));
        assert_eq!(anticanonical_class(2, 0, 3).unwrap(), class(&[1, 1, 1]));
        assert_eq!(anticanonical_class(1, 0, 3).unwrap(), class(&[2, 2, 2]));
        assert!(matches!(anticanonical_class(3, 0, 3), Err(Error::Constraint(_))));
        assert!(matches!(anticanonical_class(1, 1, 4), Err(Error::UnsupportedRank(4))));
    }

    #[test]
    fn incomplete_form_is_rejected() {
        let err = TrilinearForm::from_entries(2, [([1, 1, 1], 1), ([1, 1, 2], 1)]).unwrap_err();
        assert!(matches!(err, Error::Constraint(_)));
    }

    #[test]
    fn permutation_swaps_roles() {
        let f = TrilinearForm::rank2(1, 3, 6, 12);
        let g = f.permuted(&[1, 0]).unwrap();
        assert_eq!(g, TrilinearForm::rank2(12, 6, 3, 1));
        let k = class(&[1, 1]);
        assert_eq!(cube(&f, &k).unwrap(), cube(&g, &k).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let f = TrilinearForm::rank2(1, 3, 6, 12);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"rho":2,"entries":{"111":1,"112":3,"122":6,"222":12}}"#);
        assert_eq!(serde_json::from_str::<TrilinearForm>(&s).unwrap(), f);
    }
}
