//! Family descriptions derived from solved invariants.

/// Name of a Fano threefold of Picard rank 1 with index `r` in `{2, 3, 4}`.
pub fn target_name(r: i64, l3: i64) -> String {
    match r {
        4 => "P^3".to_string(),
        3 => "Q".to_string(),
        _ => format!("V_{l3}"),
    }
}

/// Name of a smooth curve of the given degree and genus.
pub fn curve_name(degree: i64, genus: i64) -> String {
    match (genus, degree) {
        (0, 1) => "a line".to_string(),
        (0, 2) => "a conic".to_string(),
        (0, 3) => "a cubic rational curve".to_string(),
        (0, d) => format!("a rational curve of degree {d}"),
        (1, d) => format!("an elliptic curve of degree {d}"),
        (g, d) => format!("a curve of genus {g} and degree {d}"),
    }
}

/// Blowup of a rank-1 Fano threefold along a curve.
pub fn blowup(r: i64, l3: i64, deg_b: i64, genus: i64) -> String {
    format!("blowup of {} along {}", target_name(r, l3), curve_name(deg_b, genus))
}

/// Image of `X` in `P^2 x P^2` for two conic bundles over `P^2`.
pub fn conic_pair(map_degree: i64, bidegree: [i64; 2]) -> String {
    match (map_degree, bidegree) {
        (1, [1, 1]) => "W".to_string(),
        (1, [b1, b2]) => format!("a smooth divisor on P^2 x P^2 of bidegree ({b1},{b2})"),
        (2, [1, 1]) => "a split double cover of W with L^2 = omega_W^-1".to_string(),
        (d, [b1, b2]) => format!("a degree {d} cover of a divisor on P^2 x P^2 of bidegree ({b1},{b2})"),
    }
}

/// `X` over `P^2 x P^1` for a conic bundle paired with a del Pezzo fibration.
pub fn over_p2_x_p1(map_degree: i64, branch: [i64; 2]) -> String {
    match map_degree {
        1 => "P^2 x P^1".to_string(),
        _ => format!("a split double cover of P^2 x P^1 with L = O({},{})", branch[0], branch[1]),
    }
}

/// `P(O + O(e))` over `P^2`.
pub fn p1_bundle_over_p2(e: i64) -> String {
    if e == 1 {
        "V_7 = P(O_P^2 + O_P^2(1))".to_string()
    } else {
        format!("P(O_P^2 + O_P^2({e}))")
    }
}

/// Double cover of `V_7` branched along a member of `|-2K|`.
pub fn double_cover_of_v7() -> String {
    format!("a split double cover of {} with L^2 = omega_V_7^-1", p1_bundle_over_p2(1))
}

/// `X` over `P^1 x P^1 x P^1` for three conic bundles.
pub fn over_p1_cubed(map_degree: i64, branch: [i64; 3]) -> String {
    match map_degree {
        1 => "P^1 x P^1 x P^1".to_string(),
        _ => format!(
            "a split double cover of P^1 x P^1 x P^1 with L = O({},{},{})",
            branch[0], branch[1], branch[2]
        ),
    }
}

/// `P(O + O(c1))` over `P^1 x P^1`.
pub fn p1_bundle_over_quadric(c1: [i64; 2]) -> String {
    format!("P(O + O({},{})) over P^1 x P^1", c1[0], c1[1])
}

/// Member of `|O_P(a) (x) pi^* O(f)|` on `P = P(O + O(t)^2)` over `P^1 x P^1`.
pub fn divisor_in_p2_bundle(a: i64, f: [i64; 2], twist: [i64; 2]) -> String {
    format!(
        "a smooth member of |O_P({a}) x pi^*O({},{})| on P = P(O + O({},{})^2) over P^1 x P^1",
        f[0], f[1], twist[0], twist[1]
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_names() {
        assert_eq!(blowup(2, 3, 1, 0), "blowup of V_3 along a line");
        assert_eq!(blowup(3, 2, 3, 0), "blowup of Q along a cubic rational curve");
        assert_eq!(blowup(4, 1, 9, 10), "blowup of P^3 along a curve of genus 10 and degree 9");
        assert_eq!(blowup(4, 1, 5, 1), "blowup of P^3 along an elliptic curve of degree 5");
        assert_eq!(blowup(3, 2, 4, 0), "blowup of Q along a rational curve of degree 4");
    }

    #[test]
    fn primitive_names() {
        assert_eq!(conic_pair(1, [1, 1]), "W");
        assert_eq!(conic_pair(1, [2, 2]), "a smooth divisor on P^2 x P^2 of bidegree (2,2)");
        assert_eq!(over_p2_x_p1(2, [2, 1]), "a split double cover of P^2 x P^1 with L = O(2,1)");
        assert_eq!(p1_bundle_over_p2(2), "P(O_P^2 + O_P^2(2))");
    }
}
