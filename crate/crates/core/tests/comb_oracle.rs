mod common;

use common::{brute_force_subset_action, partitions, permutation};
use num_bigint::BigUint;
use num_rational::BigRational;
use transbound::permcomb::{
    binomial, index_upper_bound, induced_cycle_count, induced_index, pi_k, CycleType,
};

#[test]
fn pi_k_and_cycle_counts_match_enumeration_up_to_degree_12() {
    let mut checked = 0;
    for n in 2..=12 {
        for parts in partitions(n) {
            let ct = CycleType::new(parts.iter().copied()).unwrap();
            assert_eq!(ct.degree(), n);
            let perm = permutation(&parts);
            for k in 1..n {
                let (fixed, cycles) = brute_force_subset_action(&perm, k);
                assert_eq!(pi_k(&ct, k).unwrap(), BigUint::from(fixed), "pi_{k} of {ct}");
                assert_eq!(
                    induced_cycle_count(&ct, k).unwrap(),
                    BigUint::from(cycles),
                    "cycles of {ct} on {k}-subsets"
                );
                let index = binomial(n, k) - BigUint::from(cycles);
                assert_eq!(induced_index(&ct, k).unwrap(), index);
                let bound = index_upper_bound(&ct, k).unwrap();
                assert!(
                    BigRational::from_integer(index.into()) <= bound,
                    "index bound of {ct}, k = {k}"
                );
                checked += 1;
            }
        }
    }
    // Σ_{n=2}^{12} p(n)·(n−1)
    assert_eq!(checked, 2375);
}
