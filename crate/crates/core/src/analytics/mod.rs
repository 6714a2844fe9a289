//! Closed forms, bounds and exact oracles for the reach size.

mod bounds;
mod distribution;
mod divisors;
mod index_moments;

pub use bounds::{
    expected_reach_upper, reach_prob_upper, reach_prob_upper_exp, theoretical_fraction,
};
pub use distribution::{
    enumerate_exact, exact_reach_marginals, exact_size_distribution, SizeDistribution,
    MAX_ENUMERATION_N,
};
pub use divisors::{
    divisor_count_bounded, divisor_sum_bounded, DivisorSumResult, DIRICHLET_CONSTANT,
};
pub use index_moments::{
    expected_xt_approx, expected_xt_exact, expected_xt_series, variance_xt_bound,
    variance_xt_exact, variance_xt_summed_form,
};
