//! Generators for the named families: level families, the threshold
//! (Katona-type) family, its t-avoiding extension, r-uniform star
//! families, and the powerset pair.

use crate::bounds::binom;
use crate::dpcount::BigCount;
use crate::error::{Error, Result};
use crate::setcore::{satisfies_cross, Family, IntersectionConstraint, SetMask};

/// `[n]^{(≤ smax)}`: all subsets of size at most smax.
pub fn level_family(n: u32, smax: u32) -> Result<Family> {
    if smax > n {
        return Err(Error::Range(format!("level_family needs smax ≤ n, got n={n}, smax={smax}")));
    }
    let mut members = Vec::new();
    for r in 0..=smax {
        members.extend(Family::all_r_sets(n, r).iter());
    }
    Family::new(n, members)
}

/// Threshold family plus a degeneracy flag for the even case with an
/// unsatisfiable threshold.
#[derive(Clone, Debug)]
pub struct KatonaFamily {
    pub family: Family,
    pub degenerate: bool,
}

/// F(n,t): `{A : |A| ≥ (n+t+1)/2}` when n+t is odd, else
/// `{A : |A ∩ ([n] \ {1})| ≥ (n+t)/2}` with ground element 1 deleted.
pub fn katona_family(n: u32, t: u32) -> Result<KatonaFamily> {
    if t > n {
        return Err(Error::Range(format!("katona_family needs t ≤ n, got n={n}, t={t}")));
    }
    if n > 24 {
        return Err(Error::Capacity(format!("katona_family enumerates P[{n}]; capped at n ≤ 24")));
    }
    let all = Family::power_set(n);
    if (n + t) % 2 == 1 {
        let thr = (n + t + 1) / 2;
        Ok(KatonaFamily { family: all.filtered(|m| m.len() >= thr), degenerate: false })
    } else {
        let thr = (n + t) / 2;
        let reduced = SetMask::full(n).minus(SetMask(1));
        let family = all.filtered(|m| m.inter(reduced).len() >= thr);
        let degenerate = family.is_empty();
        Ok(KatonaFamily { family, degenerate })
    }
}

/// F*(n,t) = F(n,t) ∪ [n]^{(≤ t-1)}.
pub fn frankl_furedi_family(n: u32, t: u32) -> Result<Family> {
    if t < 1 || t > n {
        return Err(Error::Range(format!("needs 1 ≤ t ≤ n, got n={n}, t={t}")));
    }
    katona_family(n, t)?.family.union(&level_family(n, t - 1)?)
}

/// Star family with a flag for the nonstandard choices X = ∅ or X = [n],
/// which are accepted for optimizer sweeps.
#[derive(Clone, Debug)]
pub struct StarFamily {
    pub family: Family,
    pub nonstandard_x: bool,
}

/// `F_{X,s} = {F ∈ [n]^{(r)} : |F ∩ X| ≥ r - s}`.
pub fn star_family(n: u32, r: u32, x: SetMask, s: u32) -> Result<StarFamily> {
    if r < 1 || r > n {
        return Err(Error::Range(format!("star_family needs 1 ≤ r ≤ n, got n={n}, r={r}")));
    }
    if !x.is_subset_of(SetMask::full(n)) {
        return Err(Error::Range(format!("X = {x} is not a subset of [{n}]")));
    }
    let nonstandard_x = x.is_empty() || x == SetMask::full(n);
    let want = r.saturating_sub(s);
    let members = crate::setcore::r_subsets_of(SetMask::full(n), r)
        .into_iter()
        .filter(|m| m.inter(x).len() >= want)
        .collect();
    Ok(StarFamily { family: Family::new(n, members)?, nonstandard_x })
}

/// Closed-form size `Σ_{j=r-s}^{r} C(|X|, j) C(n-|X|, r-j)`.
pub fn star_family_size(n: u32, r: u32, x_size: u32, s: u32) -> BigCount {
    let lo = r.saturating_sub(s);
    let mut total = BigCount::from(0u32);
    for j in lo..=r {
        total += binom(x_size as u64, j as u64) * binom((n - x_size) as u64, (r - j) as u64);
    }
    total
}

/// `(F_{X,a}, F_{X^c,b})` with a+b ≤ t-1, guaranteed
/// `{0,…,t-1}`-cross-intersecting (checked before returning).
pub fn cross_avoiding_star_pair(
    n: u32,
    r: u32,
    t: u32,
    x: SetMask,
    a: u32,
    b: u32,
) -> Result<(Family, Family)> {
    if t < 1 || t > r {
        return Err(Error::Range(format!("needs 1 ≤ t ≤ r, got t={t}, r={r}")));
    }
    if a + b > t - 1 {
        return Err(Error::Precondition(format!("needs a + b ≤ t - 1, got a={a}, b={b}, t={t}")));
    }
    let fa = star_family(n, r, x, a)?.family;
    let fb = star_family(n, r, x.complement(n), b)?.family;
    debug_assert!(satisfies_cross(&fa, &fb, IntersectionConstraint::allowed_below(t))?);
    Ok((fa, fb))
}

/// `(P(S), P([n] \ S))`, the equality pair for forbidden cross-intersection 1.
pub fn powerset_pair(n: u32, s: SetMask) -> Result<(Family, Family)> {
    if !s.is_subset_of(SetMask::full(n)) {
        return Err(Error::Range(format!("S = {s} is not a subset of [{n}]")));
    }
    let a = Family::new(n, s.submasks().collect())?;
    let b = Family::new(n, s.complement(n).submasks().collect())?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dpcount::count_disjoint_ordered;
    use crate::setcore::{satisfies_single, Convention};

    #[test]
    fn level_family_examples() {
        assert_eq!(level_family(3, 0).unwrap().len(), 1);
        assert_eq!(level_family(3, 1).unwrap().len(), 4);
        assert_eq!(level_family(4, 4).unwrap(), Family::power_set(4));
        assert!(level_family(3, 4).is_err());
    }

    #[test]
    fn katona_family_examples() {
        // n+t = 5 odd, threshold 3: C(4,3)+C(4,4) = 5 members
        let k = katona_family(4, 1).unwrap();
        assert!(!k.degenerate);
        assert_eq!(k.family.len(), 5);
        assert!(k.family.iter().all(|m| m.len() >= 3));

        // n+t = 6 even: |A ∩ {2,3,4}| ≥ 3
        let k = katona_family(4, 2).unwrap();
        assert_eq!(
            k.family,
            Family::from_sets(4, &[vec![2, 3, 4], vec![1, 2, 3, 4]]).unwrap()
        );

        // n = t = 1 is the unsatisfiable even case
        let k = katona_family(1, 1).unwrap();
        assert!(k.degenerate);
        assert!(k.family.is_empty());
    }

    #[test]
    fn frankl_furedi_examples() {
        let f = frankl_furedi_family(4, 2).unwrap();
        assert_eq!(f.len(), 7);
        let f21 = frankl_furedi_family(2, 1).unwrap();
        assert_eq!(f21, Family::from_sets(2, &[vec![], vec![1, 2]]).unwrap());
    }

    #[test]
    fn frankl_furedi_is_t_avoiding() {
        for n in 1..=9u32 {
            for t in 1..=n {
                let f = frankl_furedi_family(n, t).unwrap();
                assert!(
                    satisfies_single(&f, IntersectionConstraint::AvoidOne(t), Convention::DistinctPairs),
                    "F*({n},{t}) is not {t}-avoiding"
                );
            }
        }
    }

    #[test]
    fn star_family_examples() {
        let x = SetMask::from_elems(4, &[1, 2]).unwrap();
        assert_eq!(star_family(4, 2, x, 0).unwrap().family.len(), 1);
        assert_eq!(star_family(4, 2, x, 1).unwrap().family.len(), 5);
        assert_eq!(star_family(4, 2, x, 2).unwrap().family.len(), 6);
        assert!(star_family(4, 5, x, 0).is_err());
        assert!(star_family(4, 2, SetMask::EMPTY, 1).unwrap().nonstandard_x);
    }

    #[test]
    fn star_family_size_matches_closed_form() {
        for n in 2..=8u32 {
            for r in 1..=n.min(4) {
                for xs in 0..=n {
                    let x = SetMask::full(xs);
                    for s in 0..=r {
                        let fam = star_family(n, r, x, s).unwrap().family;
                        assert_eq!(
                            BigCount::from(fam.len() as u64),
                            star_family_size(n, r, xs, s),
                            "n={n} r={r} |X|={xs} s={s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn star_pair_examples() {
        let x = SetMask::from_elems(6, &[1, 2, 3]).unwrap();
        let (a, b) = cross_avoiding_star_pair(6, 2, 1, x, 0, 0).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(b.len(), 3);
        assert!(satisfies_cross(&a, &b, IntersectionConstraint::allowed_from_sizes(&[0])).unwrap());

        let (a, b) = cross_avoiding_star_pair(6, 3, 2, x, 1, 0).unwrap();
        assert!(satisfies_cross(&a, &b, IntersectionConstraint::allowed_below(2)).unwrap());
        assert!(satisfies_cross(&a, &b, IntersectionConstraint::AvoidOne(2)).unwrap());

        assert!(cross_avoiding_star_pair(6, 3, 2, x, 1, 1).is_err());
    }

    #[test]
    fn star_pairs_are_cross_avoiding_at_desk_scale() {
        for n in 2..=8u32 {
            for r in 1..=n.min(3) {
                for t in 1..=r {
                    for a in 0..t {
                        let b = t - 1 - a;
                        for xs in 1..n {
                            let x = SetMask::full(xs);
                            let (fa, fb) = cross_avoiding_star_pair(n, r, t, x, a, b).unwrap();
                            assert!(satisfies_cross(&fa, &fb, IntersectionConstraint::AvoidOne(t)).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn powerset_pair_examples() {
        let s = SetMask::from_elems(2, &[1]).unwrap();
        let (a, b) = powerset_pair(2, s).unwrap();
        assert_eq!(a, Family::from_sets(2, &[vec![], vec![1]]).unwrap());
        assert_eq!(b, Family::from_sets(2, &[vec![], vec![2]]).unwrap());

        let (a, b) = powerset_pair(4, SetMask::EMPTY).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(b.len(), 16);

        // d(P(S), P(S^c)) = 2^n always
        for n in 1..=6u32 {
            for s_bits in 0..1u64 << n {
                let (a, b) = powerset_pair(n, SetMask(s_bits)).unwrap();
                assert_eq!(count_disjoint_ordered(&a, &b).unwrap(), BigCount::from(1u64) << n as usize);
                assert!(satisfies_cross(&a, &b, IntersectionConstraint::AvoidOne(1)).unwrap());
            }
        }
    }
}
