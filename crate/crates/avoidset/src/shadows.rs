//! Lower/upper shadow operators for uniform families and the
//! lower-upper-shadow inequality checker, including the exhaustive scans
//! over all 3-uniform families at n = 5 and n = 6.

use rayon::prelude::*;

use crate::bounds::binom;
use crate::dpcount::BigCount;
use crate::error::{Error, Result};
use crate::setcore::{r_subsets_of, Family, SetMask};

/// ∂F: all (r-1)-sets contained in some member of the r-uniform F.
pub fn lower_shadow(f: &Family, r: u32) -> Result<Family> {
    if r < 1 {
        return Err(Error::Range("lower_shadow needs r ≥ 1".into()));
    }
    if !f.is_uniform(r) {
        return Err(Error::NotUniform(r));
    }
    let mut members = Vec::new();
    for m in f.iter() {
        members.extend(r_subsets_of(m, r - 1));
    }
    Family::new(f.n(), members)
}

/// ∂⁺F: all (r+1)-sets of [n] containing some member of the r-uniform F.
pub fn upper_shadow(f: &Family, r: u32) -> Result<Family> {
    let n = f.n();
    if r >= n {
        return Err(Error::Range(format!("upper_shadow needs r < n, got r={r}, n={n}")));
    }
    if !f.is_uniform(r) {
        return Err(Error::NotUniform(r));
    }
    let full = SetMask::full(n);
    let mut members = Vec::new();
    for m in f.iter() {
        let mut rest = full.minus(m).0;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            members.push(SetMask(m.0 | bit));
            rest ^= bit;
        }
    }
    Family::new(n, members)
}

/// ∂⁺∂A for 3-uniform A.
pub fn lower_upper_shadow(a: &Family) -> Result<Family> {
    upper_shadow(&lower_shadow(a, 3)?, 2)
}

fn real_binom3(x: f64) -> f64 {
    x * (x - 1.0) * (x - 2.0) / 6.0
}

fn real_binom2(x: f64) -> f64 {
    x * (x - 1.0) / 2.0
}

/// The real x ≥ 3 with C(x,3) = size, by bisection on [3, n+1].
fn solve_x(size: u64, n: u32) -> f64 {
    let target = size as f64;
    let mut lo = 3.0f64;
    let mut hi = (n + 1) as f64;
    while hi - lo > 1e-12 {
        let mid = (lo + hi) / 2.0;
        if real_binom3(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / 2.0
}

/// One evaluation of the lower-upper-shadow inequality
/// |∂⁺∂A| ≥ C(x,3) + C(x,2)(n-x), where C(x,3) = |A| defines the real x.
#[derive(Clone, Debug)]
pub struct ShadowCheck {
    pub lhs: BigCount,
    pub rhs: f64,
    pub x: f64,
    pub ok: bool,
}

const SLACK: f64 = 1e-9;

pub fn question_4_3_check(a: &Family) -> Result<ShadowCheck> {
    if a.is_empty() {
        return Err(Error::Range("shadow inequality check needs |A| ≥ 1".into()));
    }
    let n = a.n();
    let lhs_fam = lower_upper_shadow(a)?;
    let lhs = BigCount::from(lhs_fam.len() as u64);
    let x = solve_x(a.len() as u64, n);
    let rhs = real_binom3(x) + real_binom2(x) * (n as f64 - x);
    let ok = lhs_fam.len() as f64 >= rhs - SLACK;
    Ok(ShadowCheck { lhs, rhs, x, ok })
}

/// Exact capacity left for a partner family outside ∂⁺∂A, alongside the
/// conjectured real-valued cap C(n-x,3) + C(n-x,2)·x.
#[derive(Clone, Debug)]
pub struct ShadowProductBound {
    pub b_cap: BigCount,
    pub formula_cap: f64,
    pub x: f64,
}

pub fn shadow_product_bound(a: &Family) -> Result<ShadowProductBound> {
    if a.is_empty() {
        return Err(Error::Range("shadow product bound needs |A| ≥ 1".into()));
    }
    let n = a.n();
    let shadow = lower_upper_shadow(a)?;
    let b_cap = binom(n as u64, 3) - BigCount::from(shadow.len() as u64);
    let x = solve_x(a.len() as u64, n);
    let nx = n as f64 - x;
    let formula_cap = real_binom3(nx) + real_binom2(nx) * x;
    Ok(ShadowProductBound { b_cap, formula_cap, x })
}

/// Result of scanning every nonempty A ⊆ [n]^{(3)}.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub n: u32,
    pub families_checked: u64,
    pub all_ok: bool,
    /// The seed-order-first violating family, if any.
    pub counterexample: Option<Family>,
}

/// Exhaustive parallel scan of the inequality over all nonempty 3-uniform
/// families on [n]; exact shadow sizes via precomputed incidence masks.
pub fn scan_question_4_3(n: u32) -> Result<ScanReport> {
    if !(4..=6).contains(&n) {
        return Err(Error::Capacity(format!(
            "exhaustive shadow scan enumerates 2^C({n},3) families; supported for 4 ≤ n ≤ 6"
        )));
    }
    let triples = r_subsets_of(SetMask::full(n), 3);
    let pairs = r_subsets_of(SetMask::full(n), 2);
    let k = triples.len();
    // triple index -> mask of its 2-subsets; pair index -> mask of its supersets
    let down: Vec<u64> = triples
        .iter()
        .map(|&t| {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &p)| p.is_subset_of(t))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let up: Vec<u64> = pairs
        .iter()
        .map(|&p| {
            triples
                .iter()
                .enumerate()
                .filter(|(_, &t)| p.is_subset_of(t))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    // rhs depends only on |A|
    let rhs_by_size: Vec<f64> = (0..=k as u64)
        .map(|s| {
            if s == 0 {
                0.0
            } else {
                let x = solve_x(s, n);
                real_binom3(x) + real_binom2(x) * (n as f64 - x)
            }
        })
        .collect();
    let total = 1u64 << k;
    // deterministic reduction: the minimum violating seed, independent of
    // chunk scheduling
    let first_bad: Option<u64> = (1..total)
        .into_par_iter()
        .filter(|&seed| {
            let mut pair_mask = 0u64;
            let mut s = seed;
            while s != 0 {
                let i = s.trailing_zeros() as usize;
                pair_mask |= down[i];
                s &= s - 1;
            }
            let mut triple_mask = 0u64;
            let mut p = pair_mask;
            while p != 0 {
                let i = p.trailing_zeros() as usize;
                triple_mask |= up[i];
                p &= p - 1;
            }
            let lhs = triple_mask.count_ones() as f64;
            lhs < rhs_by_size[seed.count_ones() as usize] - SLACK
        })
        .min();
    let counterexample = first_bad.map(|seed| {
        let members: Vec<SetMask> =
            (0..k).filter(|i| (seed >> i) & 1 == 1).map(|i| triples[i]).collect();
        Family::new(n, members).unwrap()
    });
    Ok(ScanReport { n, families_checked: total - 1, all_ok: counterexample.is_none(), counterexample })
}
