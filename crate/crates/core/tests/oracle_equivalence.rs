mod oracle;

use fano_core::enumerator::{solve_e1_c_in, Domain};
use fano_core::RayType;

fn describe_difference(name: &str, solver: &std::collections::BTreeSet<oracle::Key>, brute: &std::collections::BTreeSet<oracle::Key>) -> String {
    let missing: Vec<_> = brute.difference(solver).collect();
    let extra: Vec<_> = solver.difference(brute).collect();
    format!("{name}: solver misses {missing:?}; solver adds {extra:?}")
}

#[test]
fn every_system_matches_its_oracle() {
    for system in oracle::systems() {
        let solver = (system.solver)();
        let brute = (system.oracle)();
        assert!(!brute.is_empty(), "{}: empty oracle", system.name);
        assert_eq!(solver, brute, "{}", describe_difference(system.name, &solver, &brute));
    }
}

#[test]
fn e1_c2_with_index_two_only_is_empty_in_both() {
    let domain = Domain { indices: vec![2], ..Domain::default() };
    let solver = oracle::keys(&solve_e1_c_in(RayType::C2, &domain).unwrap());
    assert!(solver.is_empty());
    assert!(oracle::e1_system_with(RayType::C2, &[2]).is_empty());
}

#[test]
fn restricted_index_domains_agree() {
    for indices in [vec![3], vec![4], vec![2, 4]] {
        let domain = Domain { indices: indices.clone(), ..Domain::default() };
        for sub in [RayType::C1, RayType::C2] {
            let solver = oracle::keys(&solve_e1_c_in(sub, &domain).unwrap());
            assert_eq!(solver, oracle::e1_system_with(sub, &indices), "{sub} over {indices:?}");
        }
    }
}

#[test]
fn rho3_three_conic_bundles_match() {
    assert_eq!(oracle::rho3_ccc_solver(), oracle::rho3_ccc_system());
}
