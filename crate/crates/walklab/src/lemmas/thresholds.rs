//! Every numeric bound the verifiers and probes depend on, evaluated with
//! exact integer arithmetic. No floating point touches any ceiling.

use serde::{Deserialize, Serialize};

/// `ceil(log2(x))` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u64 {
    debug_assert!(x >= 1);
    u64::from(x.next_power_of_two().trailing_zeros())
}

/// Least integer `a` with `a >= sqrt(2t + 9/4) + 1/2`, computed as the least
/// `a` with `(2a - 1)^2 >= 8t + 9`. Clearing denominators keeps the boundary
/// cases (e.g. `t = 2`, where the square root lands on 2.5) exact.
pub fn sqrt_ceiling_term(t: u64) -> u64 {
    let x = 8 * u128::from(t) + 9;
    let c = x.isqrt();
    let c = if c * c < x { c + 1 } else { c };
    let mut a = ((c + 2) / 2) as u64;
    debug_assert!(a >= 1);
    while a > 1 && square(2 * (a - 1) - 1) >= x {
        a -= 1;
    }
    debug_assert!(square(2 * a - 1) >= x);
    a
}

fn square(v: u64) -> u128 {
    u128::from(v) * u128::from(v)
}

/// The bound package for one value of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub t: u64,
    /// New upper bound on z(t): `max{2t+1, 2a+3}`.
    pub z_new: u64,
    /// Previous upper bound on z(t): `6t+1`.
    pub z_old: u64,
    /// Exact value of z(t) where known (`z(1) = 4`).
    pub z_exact: Option<u64>,
    /// `a = ceil(sqrt(2t + 9/4) + 1/2)`.
    pub a: u64,
    /// Minimum tournament order in the cycle-tournament configuration: `2a+1`.
    pub lemma13_size: u64,
    /// Walk length for the cycle-tournament check:
    /// `max{t+1, 3 ceil(log2(t+1))}`.
    pub lemma13_k: u64,
    /// Walk length above which degrees of free digraphs are bounded by the
    /// order: `2 ceil(log2(t+1))`.
    pub lemma5_k: u64,
}

impl Thresholds {
    /// Walk-length threshold for joint cycles: `L * ceil(log2(t+1))`.
    pub fn lemma12_k(&self, l: u64) -> u64 {
        l * ceil_log2(self.t + 1)
    }

    /// Walk-length threshold for linked cycles: `t*L + 1`.
    pub fn lemma1_k(&self, l: u64) -> u64 {
        self.t * l + 1
    }

    /// Number of equal-length segments in the joint-cycles walk family:
    /// `ceil(log2(t+1))`.
    pub fn segment_count(&self) -> u64 {
        ceil_log2(self.t + 1)
    }
}

/// Evaluates the bound package for `t >= 1`.
pub fn eval_thresholds(t: u64) -> Thresholds {
    assert!(t >= 1, "thresholds defined for t >= 1");
    let a = sqrt_ceiling_term(t);
    let s = ceil_log2(t + 1);
    Thresholds {
        t,
        z_new: (2 * t + 1).max(2 * a + 3),
        z_old: 6 * t + 1,
        z_exact: (t == 1).then_some(4),
        a,
        lemma13_size: 2 * a + 1,
        lemma13_k: (t + 1).max(3 * s),
        lemma5_k: 2 * s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::FromPrimitive;

    #[test]
    fn t1_values() {
        let th = eval_thresholds(1);
        assert_eq!(th.z_new, 9);
        assert_eq!(th.z_old, 7);
        assert_eq!(th.z_exact, Some(4));
        assert_eq!(th.a, 3);
        assert_eq!(th.lemma13_size, 7);
        assert_eq!(th.lemma13_k, 3);
        assert_eq!(th.lemma5_k, 2);
        assert_eq!(th.lemma12_k(2), 2);
        assert_eq!(th.lemma1_k(1), 2);
    }

    #[test]
    fn t2_values() {
        // sqrt(2*2 + 9/4) = 2.5 exactly: the ceiling of 3.0 must stay 3.
        let th = eval_thresholds(2);
        assert_eq!(th.a, 3);
        assert_eq!(th.z_new, 9);
        assert_eq!(th.z_exact, None);
        assert_eq!(th.lemma13_size, 7);
        assert_eq!(th.lemma1_k(6), 13);
    }

    #[test]
    fn ceil_log2_small_values() {
        let expect = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4)];
        for (x, v) in expect {
            assert_eq!(ceil_log2(x), v, "x = {x}");
        }
    }

    /// Rational oracle: least integer a with (a - 1/2)^2 >= 2t + 9/4, decided
    /// entirely in exact rational arithmetic.
    struct RationalOracle {
        candidate: u64,
    }

    impl RationalOracle {
        fn new() -> Self {
            RationalOracle { candidate: 1 }
        }

        fn a(&mut self, t: u64) -> u64 {
            let q = BigRational::from_u64(2 * t).unwrap()
                + BigRational::new(9.into(), 4.into());
            let sat = |a: u64| {
                let lhs = BigRational::from_u64(a).unwrap()
                    - BigRational::new(1.into(), 2.into());
                &lhs * &lhs >= q
            };
            // a(t) is monotone in t, so the candidate only ever moves up.
            while !sat(self.candidate) {
                self.candidate += 1;
            }
            assert!(self.candidate == 1 || !sat(self.candidate - 1));
            self.candidate
        }
    }

    #[test]
    fn sqrt_term_matches_rational_oracle_to_1e6() {
        let mut oracle = RationalOracle::new();
        for t in 1..=1_000_000u64 {
            assert_eq!(sqrt_ceiling_term(t), oracle.a(t), "t = {t}");
        }
    }

    #[test]
    fn new_bound_dominates_old_from_t3() {
        for t in 3..=1000 {
            let th = eval_thresholds(t);
            assert!(th.z_new <= th.z_old, "t = {t}");
        }
    }

    #[test]
    fn linear_term_dominates_from_t13() {
        for t in 13..=1000 {
            let th = eval_thresholds(t);
            assert_eq!(th.z_new, 2 * t + 1, "t = {t}");
        }
    }
}
