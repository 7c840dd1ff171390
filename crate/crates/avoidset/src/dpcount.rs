//! Exact disjoint-pair counting, by a quadratic scan and by a subset-sum
//! (zeta) transform over the bit dimensions. The two routes are
//! cross-validated in tests; the transform is the fast path for inner
//! search loops.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::setcore::{Family, SetMask};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// Default cap on the transform table dimension (2^n u64 cells).
pub const DEFAULT_TRANSFORM_CAP: u32 = 28;

/// Transform cap, overridable through `AVOIDSET_MAX_N`.
pub fn transform_cap() -> u32 {
    std::env::var("AVOIDSET_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_TRANSFORM_CAP)
}

/// `|{(a,b) ∈ A×B : a ∩ b = ∅}|` by direct enumeration.
pub fn count_disjoint_ordered(a: &Family, b: &Family) -> Result<BigCount> {
    if a.n() != b.n() {
        return Err(Error::UniverseMismatch(a.n(), b.n()));
    }
    let mut total: u128 = 0;
    for x in a.iter() {
        for y in b.iter() {
            if x.0 & y.0 == 0 {
                total += 1;
            }
        }
    }
    Ok(BigCount::from(total))
}

/// Precomputed table mapping each mask `m` to `|{b ∈ B : b ⊆ m}|`.
///
/// Built once per B with the in-place subset-sum transform; a disjoint-pair
/// count against any A is then one table lookup per member.
pub struct DisjointTable {
    n: u32,
    table: Vec<u64>,
}

impl DisjointTable {
    pub fn build(b: &Family) -> Result<DisjointTable> {
        let n = b.n();
        let cap = transform_cap();
        if n > cap {
            return Err(Error::Capacity(format!(
                "transform needs a 2^{n}-entry table (cap n ≤ {cap}); use the naive count"
            )));
        }
        let mut table = vec![0u64; 1usize << n];
        for m in b.iter() {
            table[m.0 as usize] += 1;
        }
        // zeta transform: after dimension i, table[m] sums over subsets
        // varying in the already-processed bits
        for i in 0..n {
            let bit = 1usize << i;
            for m in 0..table.len() {
                if m & bit != 0 {
                    table[m] += table[m ^ bit];
                }
            }
        }
        Ok(DisjointTable { n, table })
    }

    /// Number of members of B disjoint from `a`.
    pub fn disjoint_with(&self, a: SetMask) -> u64 {
        self.table[(a.complement(self.n)).0 as usize]
    }

    pub fn count_family(&self, a: &Family) -> Result<BigCount> {
        if a.n() != self.n {
            return Err(Error::UniverseMismatch(a.n(), self.n));
        }
        let mut total: u128 = 0;
        for x in a.iter() {
            total += self.disjoint_with(x) as u128;
        }
        Ok(BigCount::from(total))
    }
}

/// Transform-based count; identical value to [`count_disjoint_ordered`].
pub fn count_disjoint_fast(a: &Family, b: &Family) -> Result<BigCount> {
    if a.n() != b.n() {
        return Err(Error::UniverseMismatch(a.n(), b.n()));
    }
    DisjointTable::build(b)?.count_family(a)
}

/// Unordered disjoint pairs of distinct members:
/// `½ (d(F,F) - [∅ ∈ F])`.
pub fn count_disjoint_unordered(f: &Family) -> Result<BigCount> {
    let ordered = count_disjoint_ordered(f, f)?;
    let self_pair = if f.contains(SetMask::EMPTY) { 1u32 } else { 0 };
    Ok((ordered - BigCount::from(self_pair)) / BigCount::from(2u32))
}

/// Transform-backed unordered count for large families.
pub fn count_disjoint_unordered_fast(f: &Family) -> Result<BigCount> {
    let ordered = DisjointTable::build(f)?.count_family(f)?;
    let self_pair = if f.contains(SetMask::EMPTY) { 1u32 } else { 0 };
    Ok((ordered - BigCount::from(self_pair)) / BigCount::from(2u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fam(n: u32, sets: &[&[u64]]) -> Family {
        Family::from_sets(n, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn empty_set_is_disjoint_from_everything() {
        let a = fam(2, &[&[]]);
        let b = Family::power_set(2);
        assert_eq!(count_disjoint_ordered(&a, &b).unwrap(), BigCount::from(4u32));
    }

    #[test]
    fn powerset_pair_attains_two_to_the_n() {
        let a = fam(2, &[&[], &[1]]);
        let b = fam(2, &[&[], &[2]]);
        assert_eq!(count_disjoint_ordered(&a, &b).unwrap(), BigCount::from(4u32));
    }

    #[test]
    fn full_powerset_self_count() {
        let p2 = Family::power_set(2);
        assert_eq!(count_disjoint_ordered(&p2, &p2).unwrap(), BigCount::from(9u32));
        assert_eq!(count_disjoint_unordered(&p2).unwrap(), BigCount::from(4u32));
    }

    #[test]
    fn fast_single_member_example() {
        let a = fam(2, &[&[1]]);
        let b = Family::power_set(2);
        assert_eq!(count_disjoint_fast(&a, &b).unwrap(), BigCount::from(2u32));
    }

    #[test]
    fn singletons_give_n_times_n_minus_one() {
        let f = Family::all_r_sets(5, 1);
        assert_eq!(count_disjoint_ordered(&f, &f).unwrap(), BigCount::from(20u32));
        assert_eq!(count_disjoint_fast(&f, &f).unwrap(), BigCount::from(20u32));
    }

    #[test]
    fn unordered_examples() {
        let f = fam(2, &[&[], &[1], &[2]]);
        assert_eq!(count_disjoint_unordered(&f).unwrap(), BigCount::from(3u32));
        let g = fam(3, &[&[1], &[2, 3]]);
        assert_eq!(count_disjoint_unordered(&g).unwrap(), BigCount::from(1u32));
    }

    #[test]
    fn universe_mismatch_is_an_error() {
        let a = fam(2, &[&[1]]);
        let b = fam(3, &[&[1]]);
        assert!(count_disjoint_ordered(&a, &b).is_err());
        assert!(count_disjoint_fast(&a, &b).is_err());
    }

    #[test]
    fn over_cap_directs_to_naive() {
        std::env::set_var("AVOIDSET_MAX_N", "6");
        let f = fam(7, &[&[7]]);
        let err = count_disjoint_fast(&f, &f).unwrap_err();
        std::env::remove_var("AVOIDSET_MAX_N");
        assert!(matches!(err, Error::Capacity(_)));
    }

    fn arb_family(n: u32) -> impl Strategy<Value = Family> {
        prop::collection::vec(0u64..(1u64 << n), 0..40)
            .prop_map(move |masks| Family::new(n, masks.into_iter().map(SetMask).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn fast_matches_naive(n in 2u32..10, seed_a in 0u64..u64::MAX, seed_b in 0u64..u64::MAX) {
            use rand::{Rng, SeedableRng};
            let mut ra = rand_chacha::ChaCha8Rng::seed_from_u64(seed_a);
            let mut rb = rand_chacha::ChaCha8Rng::seed_from_u64(seed_b);
            let a = Family::new(n, (0..ra.gen_range(0..40)).map(|_| SetMask(ra.gen_range(0..1u64 << n))).collect()).unwrap();
            let b = Family::new(n, (0..rb.gen_range(0..40)).map(|_| SetMask(rb.gen_range(0..1u64 << n))).collect()).unwrap();
            prop_assert_eq!(count_disjoint_fast(&a, &b).unwrap(), count_disjoint_ordered(&a, &b).unwrap());
        }

        #[test]
        fn symmetry_monotonicity_and_product_bound(a in arb_family(6), b in arb_family(6)) {
            let dab = count_disjoint_ordered(&a, &b).unwrap();
            let dba = count_disjoint_ordered(&b, &a).unwrap();
            prop_assert_eq!(&dab, &dba);
            prop_assert!(dab <= BigCount::from((a.len() * b.len()) as u64));
            // adding a member to B never decreases the count
            let extended = b.union(&Family::new(6, vec![SetMask(0)]).unwrap()).unwrap();
            prop_assert!(count_disjoint_ordered(&a, &extended).unwrap() >= dab);
        }

        #[test]
        fn unordered_integrality(f in arb_family(6)) {
            let ordered = count_disjoint_ordered(&f, &f).unwrap();
            let unordered = count_disjoint_unordered(&f).unwrap();
            let self_pair = BigCount::from(if f.contains(SetMask::EMPTY) { 1u32 } else { 0 });
            prop_assert_eq!(unordered * BigCount::from(2u32) + self_pair, ordered);
        }
    }
}
