//! Closed-form bound formulas and the two numeric optimizations: the
//! cross-avoiding pair bound f(n,t) and its recurrence, the single-family
//! bound, the size bound from the restricted-intersection theorem, the
//! classification inequality, and the constants γ_r and M_{r,s,p}.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;

use crate::dpcount::BigCount;
use crate::error::{Error, Result};

/// `C(n, k)` as an exact big integer; 0 when k > n.
pub fn binom(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::from(0u32);
    }
    binomial(BigUint::from(n), BigUint::from(k))
}

fn pow2(e: u64) -> BigCount {
    BigCount::one() << e as usize
}

/// `f(n, t) = Σ_{k=0}^{t-1} C(n,k) 2^{n-k}`, the cross-avoiding pair bound.
pub fn f_bound(n: u64, t: u64) -> Result<BigCount> {
    if n < 1 || t > n {
        return Err(Error::Range(format!("f_bound needs 1 ≤ t ≤ n, got n={n}, t={t}")));
    }
    Ok(f_bound_unchecked(n, t))
}

/// Same sum with t = 0 allowed (empty sum), for recurrence sweeps.
pub fn f_bound_unchecked(n: u64, t: u64) -> BigCount {
    let mut total = BigCount::from(0u32);
    for k in 0..t {
        total += binom(n, k) * pow2(n - k);
    }
    total
}

/// Check `f(n,t) = 2 f(n-1,t) + f(n-1,t-1)` for all 2 ≤ n ≤ nmax, 1 ≤ t < n,
/// with the empty-sum base at t = 0.
pub fn f_recurrence_check(nmax: u64) -> bool {
    if nmax < 2 {
        return false;
    }
    for n in 2..=nmax {
        for t in 1..n {
            let lhs = f_bound_unchecked(n, t);
            let rhs = f_bound_unchecked(n - 1, t) * BigCount::from(2u32)
                + f_bound_unchecked(n - 1, t - 1);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `½ (f(n,t) - 1)`, the single-family disjoint-pair bound, as an exact
/// rational.
pub fn single_family_bound(n: u64, t: u64) -> Result<BigRational> {
    let f = f_bound(n, t)?;
    Ok(BigRational::new(BigInt::from(f) - BigInt::one(), BigInt::from(2)))
}

/// `Σ_{k=0}^{s} C(n,k)`, the size bound for a family with s allowed
/// intersection sizes.
pub fn frankl_wilson_size_bound(n: u64, s: u64) -> Result<BigCount> {
    if s > n {
        return Err(Error::Range(format!("size bound needs 0 ≤ s ≤ n, got n={n}, s={s}")));
    }
    let mut total = BigCount::from(0u32);
    for k in 0..=s {
        total += binom(n, k);
    }
    Ok(total)
}

/// Strict inequality
/// `(n-1+l) 2^{n-2} + (l+1) 2^{n-1-l} + (n-1-l) 2^{n-2-l} < n 2^{n-1}`,
/// evaluated exactly by scaling both sides by 2^l. The coefficient
/// `n-1-l` vanishes at l = n-1, so its power is never taken at a
/// negative exponent.
pub fn check_inequality_2_1(n: u64, l: u64) -> Result<bool> {
    if n < 3 || l < 1 || l > n - 1 {
        return Err(Error::Range(format!("inequality (2.1) needs n ≥ 3, 1 ≤ l ≤ n-1, got n={n}, l={l}")));
    }
    // scaled by 2^l: lhs = (n-1+l) 2^{n-2+l} + (l+1) 2^{n-1} + (n-1-l) 2^{n-2}
    let mut lhs = BigCount::from(n - 1 + l) * pow2(n - 2 + l) + BigCount::from(l + 1) * pow2(n - 1);
    if n - 1 > l {
        lhs += BigCount::from(n - 1 - l) * pow2(n - 2);
    }
    let rhs = BigCount::from(n) * pow2(n - 1 + l);
    Ok(lhs < rhs)
}

/// Result of the γ_r optimization.
#[derive(Clone, Copy, Debug)]
pub struct GammaResult {
    pub r: u32,
    pub alpha_star: f64,
    pub gamma: f64,
    pub tolerance: f64,
}

/// `α^r (1-α)^r + r α^{r+1} (1-α)^{r-1}`.
pub fn gamma_objective(r: u32, alpha: f64) -> f64 {
    let a = alpha;
    let b = 1.0 - alpha;
    a.powi(r as i32) * b.powi(r as i32) + r as f64 * a.powi(r as i32 + 1) * b.powi(r as i32 - 1)
}

/// Golden-section maximization of a unimodal function on [lo, hi].
fn golden_max(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    (lo + hi) / 2.0
}

/// Grid scan plus golden-section refinement of a function on [0,1].
fn maximize_on_unit(tol: f64, f: impl Fn(f64) -> f64 + Copy) -> (f64, f64) {
    let steps = 10_000usize;
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=steps {
        let x = i as f64 / steps as f64;
        let v = f(x);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = (best_i.saturating_sub(1)) as f64 / steps as f64;
    let hi = ((best_i + 1).min(steps)) as f64 / steps as f64;
    let x = golden_max(lo, hi, tol, f);
    (x, f(x))
}

/// `γ_r = max_{α∈[0,1]} { α^r(1-α)^r + r α^{r+1}(1-α)^{r-1} }`.
pub fn gamma_r(r: u32, tol: f64) -> Result<GammaResult> {
    if r < 3 || tol <= 0.0 {
        return Err(Error::Range(format!("gamma_r needs r ≥ 3 and tol > 0, got r={r}, tol={tol}")));
    }
    let obj = move |a: f64| gamma_objective(r, a);
    let (alpha_star, gamma) = maximize_on_unit(tol, obj);
    Ok(GammaResult { r, alpha_star, gamma, tolerance: tol })
}

/// `M_{r,s,p}` where q is the unique root of `q^r + r q^{r-1}(1-q) = p`
/// in [0,1]. The root map `q ↦ r q^{r-1} - (r-1) q^r` is strictly
/// increasing there, so a fixed 200-step bisection is bit-stable.
pub fn m_rsp(r: u32, s: u32, p: f64) -> Result<f64> {
    if r < 2 || s < 2 {
        return Err(Error::Range(format!("m_rsp needs r, s ≥ 2, got r={r}, s={s}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Range(format!("m_rsp needs p in [0,1], got {p}")));
    }
    let g = |q: f64| r as f64 * q.powi(r as i32 - 1) - (r as f64 - 1.0) * q.powi(r as i32);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if g(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let q = (lo + hi) / 2.0;
    let root = p.powf(1.0 / r as f64);
    let first = (1.0 - root).powi(s as i32) + s as f64 * root * (1.0 - root).powi(s as i32 - 1);
    let second = (1.0 - q).powi(s as i32);
    Ok(first.max(second))
}

/// `max_α α^r M_{r,r,α^r}`; agrees with [`gamma_r`] by the closed-form
/// identity behind the γ_r constant.
pub fn gamma_via_m(r: u32) -> Result<f64> {
    if r < 3 {
        return Err(Error::Range(format!("gamma_via_m needs r ≥ 3, got {r}")));
    }
    let obj = move |a: f64| a.powi(r as i32) * m_rsp(r, r, a.powi(r as i32)).unwrap();
    let (_, v) = maximize_on_unit(1e-9, obj);
    Ok(v)
}
