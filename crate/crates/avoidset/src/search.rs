//! Exact maximization of disjoint-pair counts and products over
//! constrained pairs of set systems: seed-plus-closure scans for the
//! non-uniform problems, branch-and-bound for the uniform ones, the
//! element-exchange improvement step, and the construction sweep for the
//! star-pair conjecture.
//!
//! The seed-plus-closure scan is exact because the closure of A is the
//! unique maximal compatible partner and both objectives are monotone in
//! the partner family: for an optimal pair (A*, B*) we have B* ⊆
//! closure(A*), so scanning (A, closure(A)) over all seeds A covers the
//! optimum.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::bounds::{binom, single_family_bound};
use crate::constructions::{frankl_furedi_family, star_family, star_family_size};
use crate::dpcount::{count_disjoint_ordered, count_disjoint_unordered, BigCount};
use crate::error::{Error, Result};
use crate::setcore::{
    intersection_size, r_subsets_of, satisfies_cross, Convention, Family, IntersectionConstraint,
    SetMask,
};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Objective {
    DisjointPairs,
    Product,
}

impl Objective {
    fn evaluate(self, a: &[SetMask], b: &[SetMask]) -> u128 {
        match self {
            Objective::Product => a.len() as u128 * b.len() as u128,
            Objective::DisjointPairs => {
                let mut total = 0u128;
                for x in a {
                    for y in b {
                        if x.0 & y.0 == 0 {
                            total += 1;
                        }
                    }
                }
                total
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::DisjointPairs => "disjoint_pairs",
            Objective::Product => "product",
        }
    }
}

/// Exact optimum with witnesses and an exhaustiveness certificate.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub objective: Objective,
    pub value: BigCount,
    /// All optimal pairs (unordered, deduplicated) when there are at most
    /// 64 of them, otherwise just the lexicographically least.
    pub witnesses: Vec<(Family, Family)>,
    pub nodes_explored: u64,
    pub exhaustive: bool,
    pub symmetry_reduced: bool,
}

impl SearchOutcome {
    pub fn witness_a(&self) -> &Family {
        &self.witnesses[0].0
    }

    pub fn witness_b(&self) -> &Family {
        &self.witnesses[0].1
    }

    /// Recompute the objective on the first witness; must reproduce `value`.
    pub fn revalidates(&self) -> bool {
        self.witnesses.iter().all(|(a, b)| {
            BigCount::from(self.objective.evaluate(a.members(), b.members())) == self.value
        })
    }
}

/// The unique maximal B compatible with every member of A under the
/// constraint, within the full powerset or the r-uniform layer.
pub fn closure(a: &Family, c: IntersectionConstraint, uniform: Option<u32>) -> Family {
    let n = a.n();
    let members: Vec<SetMask> = match uniform {
        Some(r) => r_subsets_of(SetMask::full(n), r),
        None => (0..1u64 << n).map(SetMask).collect(),
    };
    let kept = members
        .into_iter()
        .filter(|&b| a.iter().all(|x| c.allows(intersection_size(x, b))))
        .collect();
    Family::new(n, kept).expect("closure members are valid")
}

/// Witness accumulator: keeps every optimum as an unordered pair up to the
/// reporting cap, then falls back to the lexicographically least.
struct WitnessSet {
    n: u32,
    pairs: BTreeSet<(Vec<u64>, Vec<u64>)>,
    overflowed: bool,
}

const WITNESS_CAP: usize = 64;

impl WitnessSet {
    fn new(n: u32) -> WitnessSet {
        WitnessSet { n, pairs: BTreeSet::new(), overflowed: false }
    }

    fn clear(&mut self) {
        self.pairs.clear();
        self.overflowed = false;
    }

    fn push(&mut self, a: &[SetMask], b: &[SetMask]) {
        let ka: Vec<u64> = a.iter().map(|m| m.0).collect();
        let kb: Vec<u64> = b.iter().map(|m| m.0).collect();
        let key = if ka <= kb { (ka, kb) } else { (kb, ka) };
        self.pairs.insert(key);
        if self.pairs.len() > WITNESS_CAP {
            self.overflowed = true;
            let first = self.pairs.iter().next().cloned().unwrap();
            self.pairs = BTreeSet::from([first]);
        }
    }

    fn into_families(self) -> Vec<(Family, Family)> {
        self.pairs
            .into_iter()
            .map(|(ka, kb)| {
                (
                    Family::new(self.n, ka.into_iter().map(SetMask).collect()).unwrap(),
                    Family::new(self.n, kb.into_iter().map(SetMask).collect()).unwrap(),
                )
            })
            .collect()
    }
}

/// Exact maximum of the objective over t-cross-avoiding pairs in
/// `P[n] × P[n]`, by scanning every seed A ⊆ P[n] against its closure.
pub fn max_pair_nonuniform(n: u32, t: u32, objective: Objective) -> Result<SearchOutcome> {
    if t < 1 || t > n {
        return Err(Error::Range(format!("needs 1 ≤ t ≤ n, got n={n}, t={t}")));
    }
    if n > 4 {
        return Err(Error::Capacity(format!(
            "exhaustive nonuniform scan enumerates 2^(2^{n}) seeds; capped at n ≤ 4"
        )));
    }
    let universe: Vec<SetMask> = (0..1u64 << n).map(SetMask).collect();
    let c = IntersectionConstraint::AvoidOne(t);
    let mut best: u128 = 0;
    let mut witnesses = WitnessSet::new(n);
    let total_seeds = 1u64 << universe.len();
    let mut a_buf: Vec<SetMask> = Vec::with_capacity(universe.len());
    let mut b_buf: Vec<SetMask> = Vec::with_capacity(universe.len());
    for seed in 0..total_seeds {
        a_buf.clear();
        for (i, &m) in universe.iter().enumerate() {
            if (seed >> i) & 1 == 1 {
                a_buf.push(m);
            }
        }
        b_buf.clear();
        b_buf.extend(
            universe
                .iter()
                .copied()
                .filter(|&b| a_buf.iter().all(|&x| c.allows(intersection_size(x, b)))),
        );
        let v = objective.evaluate(&a_buf, &b_buf);
        if v > best {
            best = v;
            witnesses.clear();
        }
        if v == best {
            witnesses.push(&a_buf, &b_buf);
        }
    }
    Ok(SearchOutcome {
        objective,
        value: BigCount::from(best),
        witnesses: witnesses.into_families(),
        nodes_explored: total_seeds,
        exhaustive: true,
        symmetry_reduced: false,
    })
}

/// Exhaustive single-family maximum with the bound comparisons attached.
#[derive(Clone, Debug)]
pub struct SingleSearchOutcome {
    pub value: BigCount,
    pub witnesses: Vec<Family>,
    pub nodes_explored: u64,
    pub exhaustive: bool,
    /// ½(f(n,t) - 1).
    pub bound: BigRational,
    /// value ≤ floor(bound)?
    pub within_bound: bool,
    /// d(F*(n,t)), the conjectured optimum.
    pub fstar_value: BigCount,
    pub attains_fstar: bool,
}

/// Exact maximum of d(F) over t-avoiding F ⊆ P[n], under either pair
/// convention, by enumerating all 2^(2^n) families.
pub fn max_single_nonuniform(n: u32, t: u32, conv: Convention) -> Result<SingleSearchOutcome> {
    if t < 1 || t > n {
        return Err(Error::Range(format!("needs 1 ≤ t ≤ n, got n={n}, t={t}")));
    }
    if n > 4 {
        return Err(Error::Capacity(format!(
            "exhaustive single-family scan enumerates 2^(2^{n}) families; capped at n ≤ 4"
        )));
    }
    let universe: Vec<SetMask> = (0..1u64 << n).map(SetMask).collect();
    // precompute which unordered pairs (and self-pairs) break the constraint
    let m = universe.len();
    let mut bad = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            bad[i * m + j] = intersection_size(universe[i], universe[j]) == t;
        }
    }
    let mut best: u128 = 0;
    let mut witnesses: Vec<Family> = Vec::new();
    let total_seeds = 1u64 << m;
    let mut members: Vec<usize> = Vec::with_capacity(m);
    for seed in 0..total_seeds {
        members.clear();
        members.extend((0..m).filter(|i| (seed >> i) & 1 == 1));
        let ok = match conv {
            Convention::AllPairs => {
                members.iter().all(|&i| members.iter().all(|&j| !bad[i * m + j]))
            }
            Convention::DistinctPairs => members
                .iter()
                .enumerate()
                .all(|(k, &i)| members[k + 1..].iter().all(|&j| !bad[i * m + j])),
        };
        if !ok {
            continue;
        }
        // unordered disjoint pairs among distinct members
        let mut v: u128 = 0;
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                if universe[i].0 & universe[j].0 == 0 {
                    v += 1;
                }
            }
        }
        if v > best {
            best = v;
            witnesses.clear();
        }
        if v == best && witnesses.len() <= WITNESS_CAP {
            witnesses
                .push(Family::new(n, members.iter().map(|&i| universe[i]).collect()).unwrap());
        }
    }
    let bound = single_family_bound(n as u64, t as u64)?;
    let floor = bound.floor().to_integer();
    let within_bound = num_bigint::BigInt::from(best) <= floor;
    let fstar_value = count_disjoint_unordered(&frankl_furedi_family(n, t)?)?;
    let value = BigCount::from(best);
    let attains_fstar = value == fstar_value;
    Ok(SingleSearchOutcome {
        value,
        witnesses,
        nodes_explored: total_seeds,
        exhaustive: true,
        bound,
        within_bound,
        fstar_value,
        attains_fstar,
    })
}

/// Which cross constraint the uniform search enforces.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum PairConstraint {
    /// t-cross-avoiding (the functions d(n,r,t), p(n,r,t)).
    AvoidT,
    /// {0,…,t-1}-cross-intersecting (the function p*(n,r,t)).
    AllowedBelowT,
}

impl PairConstraint {
    pub fn to_constraint(self, t: u32) -> IntersectionConstraint {
        match self {
            PairConstraint::AvoidT => IntersectionConstraint::AvoidOne(t),
            PairConstraint::AllowedBelowT => IntersectionConstraint::allowed_below(t),
        }
    }
}

pub struct UniformSearchOptions {
    /// Lexicographic-minimal-image seed canonization under coordinate
    /// permutations; exact only for n ≤ 8, off by default.
    pub symmetry: bool,
    /// Node budget for instances over the exhaustive cap; results are
    /// marked non-exhaustive.
    pub budget: Option<u64>,
}

impl Default for UniformSearchOptions {
    fn default() -> Self {
        UniformSearchOptions { symmetry: false, budget: None }
    }
}

struct UniformSearch {
    candidates: Vec<SetMask>,
    constraint: IntersectionConstraint,
    objective: Objective,
    best: u128,
    witnesses: WitnessSet,
    nodes: u64,
    budget: Option<u64>,
    truncated: bool,
}

impl UniformSearch {
    /// Branch on candidate `i`; `a` is the chosen seed so far, `compatible`
    /// the closure of `a` within the uniform layer.
    fn run(&mut self, i: usize, a: &mut Vec<SetMask>, compatible: &[SetMask]) {
        self.nodes += 1;
        if let Some(budget) = self.budget {
            if self.nodes > budget {
                self.truncated = true;
                return;
            }
        }
        if i == self.candidates.len() {
            let v = self.objective.evaluate(a, compatible);
            if v > self.best {
                self.best = v;
                self.witnesses.clear();
            }
            if v == self.best {
                self.witnesses.push(a, compatible);
            }
            return;
        }
        // optimistic bound: every undecided candidate joins A, the closure
        // never grows when A does
        let undecided = &self.candidates[i..];
        let bound = match self.objective {
            Objective::Product => (a.len() + undecided.len()) as u128 * compatible.len() as u128,
            Objective::DisjointPairs => {
                let mut v = self.objective.evaluate(a, compatible);
                v += self.objective.evaluate(undecided, compatible);
                v
            }
        };
        if bound < self.best {
            return;
        }
        // include candidate i
        let x = self.candidates[i];
        let narrowed: Vec<SetMask> = compatible
            .iter()
            .copied()
            .filter(|&b| self.constraint.allows(intersection_size(x, b)))
            .collect();
        a.push(x);
        self.run(i + 1, a, &narrowed);
        a.pop();
        // exclude candidate i
        self.run(i + 1, a, compatible);
    }
}

/// Exact maximum over r-uniform constrained pairs by branch-and-bound on
/// the seed family with closure as the partner.
pub fn max_pair_uniform(
    n: u32,
    r: u32,
    t: u32,
    objective: Objective,
    constraint: PairConstraint,
    opts: UniformSearchOptions,
) -> Result<SearchOutcome> {
    if r < 1 || r > n || t < 1 || t > r {
        return Err(Error::Range(format!("needs 1 ≤ t ≤ r ≤ n, got n={n}, r={r}, t={t}")));
    }
    let candidates = r_subsets_of(SetMask::full(n), r);
    if candidates.len() > 24 && opts.budget.is_none() {
        return Err(Error::Capacity(format!(
            "seed space has 2^{} families; pass a node budget for non-exhaustive search",
            candidates.len()
        )));
    }
    let c = constraint.to_constraint(t);
    if opts.symmetry {
        return max_pair_uniform_symmetry(n, r, objective, c, candidates);
    }
    let mut search = UniformSearch {
        candidates,
        constraint: c,
        objective,
        best: 0,
        witnesses: WitnessSet::new(n),
        nodes: 0,
        budget: opts.budget,
        truncated: false,
    };
    let initial: Vec<SetMask> = search.candidates.clone();
    let mut a = Vec::new();
    search.run(0, &mut a, &initial);
    Ok(SearchOutcome {
        objective,
        value: BigCount::from(search.best),
        witnesses: search.witnesses.into_families(),
        nodes_explored: search.nodes,
        exhaustive: !search.truncated,
        symmetry_reduced: false,
    })
}

/// Plain scan with exact orbit canonization: a seed is expanded only if it
/// is the lexicographically least among its images under coordinate
/// permutations.
fn max_pair_uniform_symmetry(
    n: u32,
    r: u32,
    objective: Objective,
    c: IntersectionConstraint,
    candidates: Vec<SetMask>,
) -> Result<SearchOutcome> {
    if n > 8 {
        return Err(Error::Capacity("exact canonization scans all n! permutations; capped at n ≤ 8".into()));
    }
    if candidates.len() > 20 {
        return Err(Error::Capacity("symmetry scan capped at 2^20 seeds".into()));
    }
    let perms = permutations(n);
    // image of candidate index under each permutation
    let index_of = |m: SetMask| candidates.binary_search(&m).unwrap();
    let perm_maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| candidates.iter().map(|&m| index_of(apply_perm(m, p))).collect())
        .collect();
    let k = candidates.len();
    let mut best: u128 = 0;
    let mut witnesses = WitnessSet::new(n);
    let mut nodes = 0u64;
    let mut a_buf = Vec::with_capacity(k);
    let mut b_buf = Vec::with_capacity(k);
    'seed: for seed in 0u64..1u64 << k {
        for map in &perm_maps {
            let mut image = 0u64;
            for i in 0..k {
                if (seed >> i) & 1 == 1 {
                    image |= 1 << map[i];
                }
            }
            if image < seed {
                continue 'seed;
            }
        }
        nodes += 1;
        a_buf.clear();
        a_buf.extend((0..k).filter(|i| (seed >> i) & 1 == 1).map(|i| candidates[i]));
        b_buf.clear();
        b_buf.extend(
            candidates
                .iter()
                .copied()
                .filter(|&b| a_buf.iter().all(|&x| c.allows(intersection_size(x, b)))),
        );
        let v = objective.evaluate(&a_buf, &b_buf);
        if v > best {
            best = v;
            witnesses.clear();
        }
        if v == best {
            witnesses.push(&a_buf, &b_buf);
        }
    }
    let _ = r;
    Ok(SearchOutcome {
        objective,
        value: BigCount::from(best),
        witnesses: witnesses.into_families(),
        nodes_explored: nodes,
        exhaustive: true,
        symmetry_reduced: true,
    })
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut items: Vec<u32> = (0..n).collect();
    heap_permute(&mut items, n as usize, &mut out);
    out
}

fn heap_permute(items: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

fn apply_perm(m: SetMask, perm: &[u32]) -> SetMask {
    let mut out = 0u64;
    for (from, &to) in perm.iter().enumerate() {
        if (m.0 >> from) & 1 == 1 {
            out |= 1u64 << to;
        }
    }
    SetMask(out)
}

/// One pass of the element-exchange step: drop all of A through a point x,
/// refill B with r-sets through x inside B's support, keep the exchange
/// only when the product strictly improves; iterate to a fixed point.
pub fn exchange_improve(a: &Family, b: &Family, t: u32, r: u32) -> Result<(Family, Family)> {
    if !a.is_uniform(r) || !b.is_uniform(r) {
        return Err(Error::NotUniform(r));
    }
    let c = IntersectionConstraint::AvoidOne(t);
    if !satisfies_cross(a, b, c)? {
        return Err(Error::Precondition(format!("input pair is not {t}-cross-avoiding")));
    }
    let n = a.n();
    let mut cur_a = a.clone();
    let mut cur_b = b.clone();
    loop {
        let mut improved = false;
        for x in 1..=n {
            let xmask = SetMask::from_elems(n, &[x as u64])?;
            let through_x = cur_a.subfamily_containing(xmask);
            if through_x.is_empty() {
                continue;
            }
            let a_prime = cur_a.difference(&through_x);
            let support: SetMask = cur_b.iter().fold(SetMask::EMPTY, SetMask::union);
            let mut additions = Vec::new();
            for w in r_subsets_of(support.minus(xmask), r - 1) {
                let s = w.union(xmask);
                if cur_b.contains(s) {
                    continue;
                }
                if a_prime.iter().all(|m| c.allows(intersection_size(m, s))) {
                    additions.push(s);
                }
            }
            let b_prime = cur_b.union(&Family::new(n, additions)?)?;
            let old = cur_a.len() as u128 * cur_b.len() as u128;
            let new = a_prime.len() as u128 * b_prime.len() as u128;
            if new > old {
                debug_assert!(satisfies_cross(&a_prime, &b_prime, c)?);
                cur_a = a_prime;
                cur_b = b_prime;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    Ok((cur_a, cur_b))
}

/// Exhaustive maximum of d(F) over L-intersecting families versus the
/// level-family bound.
#[derive(Clone, Debug)]
pub struct LBoundReport {
    pub max_found: BigCount,
    pub bound: BigCount,
    pub ok: bool,
}

pub fn verify_thm_1_1(n: u32, l_sizes: &[u32]) -> Result<LBoundReport> {
    if n > 4 {
        return Err(Error::Capacity("exhaustive L-intersecting scan capped at n ≤ 4".into()));
    }
    let s = l_sizes.len() as u32;
    let allowed = IntersectionConstraint::allowed_from_sizes(l_sizes);
    let universe: Vec<SetMask> = (0..1u64 << n).map(SetMask).collect();
    let m = universe.len();
    let mut bad = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            bad[i * m + j] = !allowed.allows(intersection_size(universe[i], universe[j]));
        }
    }
    let mut best: u128 = 0;
    for seed in 0..1u64 << m {
        let members: Vec<usize> = (0..m).filter(|i| (seed >> i) & 1 == 1).collect();
        let ok = members
            .iter()
            .enumerate()
            .all(|(k, &i)| members[k + 1..].iter().all(|&j| !bad[i * m + j]));
        if !ok {
            continue;
        }
        let mut v = 0u128;
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                if universe[i].0 & universe[j].0 == 0 {
                    v += 1;
                }
            }
        }
        best = best.max(v);
    }
    let level = crate::constructions::level_family(n, s.min(n))?;
    let bound = count_disjoint_unordered(&level)?;
    let max_found = BigCount::from(best);
    let ok = max_found <= bound;
    Ok(LBoundReport { max_found, bound, ok })
}

/// Exhaustive maximum of d(A,B) over L-cross-intersecting pairs versus
/// `Σ_{k<s} C(n,k) 2^{n-k}`, with the equality predicate.
#[derive(Clone, Debug)]
pub struct CorollaryReport {
    pub max_found: BigCount,
    pub bound: BigCount,
    pub equality: bool,
    /// The paper's predicate for equality: L = {0,…,s-1}.
    pub expected_equality: bool,
}

pub fn verify_cor_1_8(n: u32, l_sizes: &[u32]) -> Result<CorollaryReport> {
    if n > 3 {
        return Err(Error::Capacity("exhaustive pair scan capped at n ≤ 3".into()));
    }
    let s = l_sizes.len() as u32;
    let c = IntersectionConstraint::allowed_from_sizes(l_sizes);
    let universe: Vec<SetMask> = (0..1u64 << n).map(SetMask).collect();
    let m = universe.len();
    let mut best: u128 = 0;
    for seed in 0..1u64 << m {
        let a: Vec<SetMask> =
            (0..m).filter(|i| (seed >> i) & 1 == 1).map(|i| universe[i]).collect();
        let b: Vec<SetMask> = universe
            .iter()
            .copied()
            .filter(|&y| a.iter().all(|&x| c.allows(intersection_size(x, y))))
            .collect();
        best = best.max(Objective::DisjointPairs.evaluate(&a, &b));
    }
    // Σ_{k < s, k ≤ n} C(n,k) 2^{n-k}; at s = n+1 this is 3^n, the total
    // ordered disjoint-pair count of P[n] × P[n]
    let mut bound = BigCount::from(0u32);
    for k in 0..s.min(n + 1) as u64 {
        bound += binom(n as u64, k) << (n as u64 - k) as usize;
    }
    let max_found = BigCount::from(best);
    let equality = max_found == bound;
    let mut sorted = l_sizes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let expected_equality = sorted.iter().copied().eq(0..s);
    Ok(CorollaryReport { max_found, bound, equality, expected_equality })
}

/// One sweep point of the star-pair construction.
#[derive(Clone, Debug)]
pub struct SweepEntry {
    pub x_size: u32,
    pub a: u32,
    pub b: u32,
    pub size_a: BigCount,
    pub size_b: BigCount,
    pub product: BigCount,
    pub disjoint_pairs: Option<BigCount>,
}

#[derive(Clone, Debug)]
pub struct Conjecture42Report {
    pub n: u32,
    pub r: u32,
    pub t: u32,
    pub entries: Vec<SweepEntry>,
    /// Index of the best-product entry.
    pub best: usize,
    /// Exact p(n,r,t) when the instance is small enough to search.
    pub exact_optimum: Option<BigCount>,
}

/// Sweep all |X| and all a+b ≤ t-1 over the star-pair construction,
/// reporting exact sizes, products, and (at desk scale) disjoint-pair
/// counts; compare against the exact search optimum when feasible.
pub fn explore_conjecture_4_2(n: u32, r: u32, t: u32) -> Result<Conjecture42Report> {
    if r < 1 || r > n || t < 1 || t > r {
        return Err(Error::Range(format!("needs 1 ≤ t ≤ r ≤ n, got n={n}, r={r}, t={t}")));
    }
    let mut entries = Vec::new();
    let count_pairs = binom(n as u64, r as u64).to_u128().map_or(false, |c| c * c <= 100_000_000);
    for x_size in 1..n {
        let x = SetMask::full(x_size);
        for a in 0..t {
            let b = t - 1 - a;
            let size_a = star_family_size(n, r, x_size, a);
            let size_b = star_family_size(n, r, n - x_size, b);
            let product = &size_a * &size_b;
            let disjoint_pairs = if count_pairs {
                let fa = star_family(n, r, x, a)?.family;
                let fb = star_family(n, r, x.complement(n), b)?.family;
                Some(count_disjoint_ordered(&fa, &fb)?)
            } else {
                None
            };
            entries.push(SweepEntry { x_size, a, b, size_a, size_b, product, disjoint_pairs });
        }
    }
    let best = entries
        .iter()
        .enumerate()
        .max_by(|(_, u), (_, v)| u.product.cmp(&v.product))
        .map(|(i, _)| i)
        .unwrap();
    let exact_optimum = if binom(n as u64, r as u64) <= BigCount::from(16u32) {
        Some(
            max_pair_uniform(
                n,
                r,
                t,
                Objective::Product,
                PairConstraint::AvoidT,
                UniformSearchOptions::default(),
            )?
            .value,
        )
    } else {
        None
    };
    Ok(Conjecture42Report { n, r, t, entries, best, exact_optimum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::f_bound;

    fn fam(n: u32, sets: &[&[u64]]) -> Family {
        Family::from_sets(n, &sets.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let a = fam(4, &[&[1, 2], &[3, 4]]);
        let cl = closure(&a, IntersectionConstraint::AvoidOne(1), Some(2));
        assert_eq!(cl, fam(4, &[&[1, 2], &[3, 4]]));

        let empty = Family::empty(2);
        assert_eq!(closure(&empty, IntersectionConstraint::AvoidOne(1), None).len(), 4);

        let just_empty = fam(2, &[&[]]);
        assert_eq!(closure(&just_empty, IntersectionConstraint::AvoidOne(1), None), Family::power_set(2));
    }

    #[test]
    fn closure_is_antitone() {
        let c = IntersectionConstraint::AvoidOne(1);
        let small = fam(4, &[&[1, 2]]);
        let large = fam(4, &[&[1, 2], &[2, 3]]);
        let cl_small = closure(&small, c, None);
        let cl_large = closure(&large, c, None);
        assert!(cl_large.iter().all(|m| cl_small.contains(m)));
    }

    #[test]
    fn nonuniform_pair_search_small_cases() {
        let out = max_pair_nonuniform(2, 1, Objective::DisjointPairs).unwrap();
        assert_eq!(out.value, BigCount::from(4u32));
        assert!(out.exhaustive);
        assert!(out.revalidates());

        let out = max_pair_nonuniform(3, 1, Objective::DisjointPairs).unwrap();
        assert_eq!(out.value, f_bound(3, 1).unwrap());

        let out = max_pair_nonuniform(3, 2, Objective::DisjointPairs).unwrap();
        assert_eq!(out.value, f_bound(3, 2).unwrap());

        assert!(max_pair_nonuniform(5, 1, Objective::DisjointPairs).is_err());
    }

    #[test]
    fn nonuniform_witnesses_match_classification() {
        // t=1: witnesses are exactly the powerset pairs
        let out = max_pair_nonuniform(3, 1, Objective::DisjointPairs).unwrap();
        let mut expected = BTreeSet::new();
        for s_bits in 0..8u64 {
            let (a, b) = crate::constructions::powerset_pair(3, SetMask(s_bits)).unwrap();
            let ka: Vec<u64> = a.iter().map(|m| m.0).collect();
            let kb: Vec<u64> = b.iter().map(|m| m.0).collect();
            expected.insert(if ka <= kb { (ka, kb) } else { (kb, ka) });
        }
        let got: BTreeSet<_> = out
            .witnesses
            .iter()
            .map(|(a, b)| {
                let ka: Vec<u64> = a.iter().map(|m| m.0).collect();
                let kb: Vec<u64> = b.iter().map(|m| m.0).collect();
                if ka <= kb { (ka, kb) } else { (kb, ka) }
            })
            .collect();
        assert_eq!(got, expected);

        // t=2: the unique witness is ([3]^{(≤1)}, P[3]) up to swap
        let out = max_pair_nonuniform(3, 2, Objective::DisjointPairs).unwrap();
        assert_eq!(out.witnesses.len(), 1);
        let (a, b) = &out.witnesses[0];
        let level1 = crate::constructions::level_family(3, 1).unwrap();
        let p3 = Family::power_set(3);
        assert!((a == &level1 && b == &p3) || (a == &p3 && b == &level1));
    }

    #[test]
    fn single_family_search_documents_the_convention_gap() {
        let strict = max_single_nonuniform(2, 1, Convention::AllPairs).unwrap();
        assert!(strict.within_bound);
        assert!(strict.value <= BigCount::from(1u32));

        let loose = max_single_nonuniform(2, 1, Convention::DistinctPairs).unwrap();
        assert_eq!(loose.value, BigCount::from(3u32));
        assert!(!loose.within_bound);
        assert!(loose.witnesses.contains(&fam(2, &[&[], &[1], &[2]])));
    }

    #[test]
    fn uniform_search_p421() {
        let out = max_pair_uniform(
            4,
            2,
            1,
            Objective::Product,
            PairConstraint::AvoidT,
            UniformSearchOptions::default(),
        )
        .unwrap();
        assert_eq!(out.value, BigCount::from(4u32));
        assert!(out.exhaustive);
        let perfect = fam(4, &[&[1, 2], &[3, 4]]);
        assert!(out
            .witnesses
            .iter()
            .any(|(a, b)| a == &perfect && b == &perfect));
    }

    #[test]
    fn uniform_search_symmetry_agrees() {
        for (objective, constraint) in [
            (Objective::Product, PairConstraint::AvoidT),
            (Objective::DisjointPairs, PairConstraint::AvoidT),
            (Objective::Product, PairConstraint::AllowedBelowT),
        ] {
            let plain = max_pair_uniform(4, 2, 1, objective, constraint, UniformSearchOptions::default())
                .unwrap();
            let sym = max_pair_uniform(
                4,
                2,
                1,
                objective,
                constraint,
                UniformSearchOptions { symmetry: true, budget: None },
            )
            .unwrap();
            assert_eq!(plain.value, sym.value);
            assert!(sym.symmetry_reduced);
            assert!(sym.nodes_explored < plain.nodes_explored);
        }
    }

    #[test]
    fn uniform_search_budget_marks_nonexhaustive() {
        let out = max_pair_uniform(
            5,
            2,
            1,
            Objective::Product,
            PairConstraint::AvoidT,
            UniformSearchOptions { symmetry: false, budget: Some(100) },
        )
        .unwrap();
        assert!(!out.exhaustive);
    }

    #[test]
    fn pstar_less_than_p() {
        let p = max_pair_uniform(5, 2, 2, Objective::Product, PairConstraint::AvoidT, Default::default())
            .unwrap();
        let pstar =
            max_pair_uniform(5, 2, 2, Objective::Product, PairConstraint::AllowedBelowT, Default::default())
                .unwrap();
        assert!(pstar.value <= p.value);
    }

    #[test]
    fn exchange_fixed_point_at_the_construction_optimum() {
        let x = SetMask::full(4);
        let (a, b) = crate::constructions::cross_avoiding_star_pair(8, 2, 1, x, 0, 0).unwrap();
        let (a2, b2) = exchange_improve(&a, &b, 1, 2).unwrap();
        assert_eq!(a2, a);
        assert_eq!(b2, b);
    }

    #[test]
    fn exchange_fires_on_a_lopsided_pair() {
        // dropping the lone edge {4,5} frees vertex 4 for three new B edges:
        // 3·3 = 9 improves to 2·6 = 12
        let a = fam(8, &[&[1, 2], &[1, 3], &[4, 5]]);
        let b = fam(8, &[&[6, 7], &[6, 8], &[7, 8]]);
        let before = a.len() * b.len();
        let (a2, b2) = exchange_improve(&a, &b, 1, 2).unwrap();
        assert!(a2.len() * b2.len() > before);
        assert!(satisfies_cross(&a2, &b2, IntersectionConstraint::AvoidOne(1)).unwrap());
    }

    #[test]
    fn exchange_empty_input_unchanged() {
        let a = Family::empty(4);
        let b = fam(4, &[&[1, 2]]);
        let (a2, b2) = exchange_improve(&a, &b, 1, 2).unwrap();
        assert_eq!(a2, a);
        assert_eq!(b2, b);
    }

    #[test]
    fn thm_1_1_small_cases() {
        let r = verify_thm_1_1(3, &[0]).unwrap();
        assert_eq!(r.bound, BigCount::from(6u32));
        assert!(r.ok);

        let r = verify_thm_1_1(3, &[0, 1]).unwrap();
        assert!(r.ok);

        let r = verify_thm_1_1(3, &[]).unwrap();
        assert_eq!(r.max_found, BigCount::from(0u32));
        assert!(r.ok);
    }

    #[test]
    fn cor_1_8_small_cases() {
        let r = verify_cor_1_8(2, &[0]).unwrap();
        assert_eq!(r.max_found, BigCount::from(4u32));
        assert!(r.equality && r.expected_equality);

        let r = verify_cor_1_8(3, &[1]).unwrap();
        assert!(!r.equality && !r.expected_equality);
        assert!(r.max_found < r.bound);

        let r = verify_cor_1_8(3, &[0, 1]).unwrap();
        assert_eq!(r.bound, BigCount::from(20u32));
        assert!(r.equality && r.expected_equality);
    }

    #[test]
    fn conjecture_4_2_sweep_at_n6() {
        let rep = explore_conjecture_4_2(6, 2, 1).unwrap();
        let best = &rep.entries[rep.best];
        assert_eq!(best.x_size, 3);
        assert_eq!(best.product, BigCount::from(9u32));
        // t=1 products are unimodal in |X| with the peak at n/2
        let products: Vec<&BigCount> = rep.entries.iter().map(|e| &e.product).collect();
        for i in 1..products.len() {
            if rep.entries[i].x_size <= 3 {
                assert!(products[i] >= products[i - 1]);
            } else {
                assert!(products[i] <= products[i - 1]);
            }
        }
    }
}
