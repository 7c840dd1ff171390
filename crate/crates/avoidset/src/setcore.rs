//! Sets and set systems over `[n]` as machine-word bitmasks.
//!
//! Elements are 1-based externally; bit `i-1` of the mask encodes element
//! `i`. The universe size `n` is carried by [`Family`], not by each mask.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported universe. A mask must fit one `u64` with spare bits.
pub const MAX_N: u32 = 62;

/// One subset of the universe `[n]`, as a bitmask.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SetMask(pub u64);

impl SetMask {
    pub const EMPTY: SetMask = SetMask(0);

    /// The whole universe `[n]`.
    pub fn full(n: u32) -> SetMask {
        debug_assert!(n <= MAX_N);
        SetMask(if n == 0 { 0 } else { (1u64 << n) - 1 })
    }

    /// Build a mask from 1-based elements, validating against `n`.
    pub fn from_elems(n: u32, elems: &[u64]) -> Result<SetMask> {
        let mut bits = 0u64;
        for &e in elems {
            if e < 1 || e > n as u64 {
                return Err(Error::ElementOutOfRange { index: 0, element: e, n });
            }
            bits |= 1u64 << (e - 1);
        }
        Ok(SetMask(bits))
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership of the 1-based element `e`.
    pub fn contains(self, e: u32) -> bool {
        e >= 1 && e <= 64 && (self.0 >> (e - 1)) & 1 == 1
    }

    pub fn is_subset_of(self, other: SetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn inter(self, other: SetMask) -> SetMask {
        SetMask(self.0 & other.0)
    }

    pub fn union(self, other: SetMask) -> SetMask {
        SetMask(self.0 | other.0)
    }

    pub fn minus(self, other: SetMask) -> SetMask {
        SetMask(self.0 & !other.0)
    }

    /// `[n] \ self`.
    pub fn complement(self, n: u32) -> SetMask {
        SetMask(!self.0 & SetMask::full(n).0)
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() + 1;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// All subsets of this mask, in increasing numeric order.
    pub fn submasks(self) -> impl Iterator<Item = SetMask> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(SetMask(cur))
        })
    }
}

/// `|a ∩ b|`.
pub fn intersection_size(a: SetMask, b: SetMask) -> u32 {
    (a.0 & b.0).count_ones()
}

impl fmt::Debug for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Either "no intersection of size exactly t" or "all sizes lie in L".
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum IntersectionConstraint {
    AvoidOne(u32),
    /// Bit `k` set means intersection size `k` is allowed.
    AllowedSet(u64),
}

impl IntersectionConstraint {
    /// `{0, …, t-1}`-intersecting.
    pub fn allowed_below(t: u32) -> IntersectionConstraint {
        IntersectionConstraint::AllowedSet(if t == 0 { 0 } else { (1u64 << t) - 1 })
    }

    pub fn allowed_from_sizes(sizes: &[u32]) -> IntersectionConstraint {
        let mut bits = 0u64;
        for &s in sizes {
            bits |= 1u64 << s;
        }
        IntersectionConstraint::AllowedSet(bits)
    }

    pub fn allows(self, size: u32) -> bool {
        match self {
            IntersectionConstraint::AvoidOne(t) => size != t,
            IntersectionConstraint::AllowedSet(bits) => (bits >> size) & 1 == 1,
        }
    }
}

/// Which pairs a single-family intersection condition quantifies over.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Convention {
    /// Unordered pairs of distinct members only (the usual definition).
    DistinctPairs,
    /// All of `F × F`, so `|F ∩ F| = |F|` is constrained too.
    AllPairs,
}

/// A deduplicated set system over a fixed universe, members in increasing
/// numeric mask order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Family {
    n: u32,
    members: Vec<SetMask>,
}

impl Family {
    pub fn new(n: u32, mut members: Vec<SetMask>) -> Result<Family> {
        if n < 1 || n > MAX_N {
            return Err(Error::UniverseRange(n as u64));
        }
        let full = SetMask::full(n);
        for m in &members {
            if !m.is_subset_of(full) {
                return Err(Error::ElementOutOfRange {
                    index: 0,
                    element: (64 - m.0.leading_zeros()) as u64,
                    n,
                });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family { n, members })
    }

    /// Canonical family from element lists (the `make_family` entry point).
    pub fn from_sets(n: u32, sets: &[Vec<u64>]) -> Result<Family> {
        if n < 1 || n as u64 > MAX_N as u64 {
            return Err(Error::UniverseRange(n as u64));
        }
        let mut members = Vec::with_capacity(sets.len());
        for (index, set) in sets.iter().enumerate() {
            let mut bits = 0u64;
            for &e in set {
                if e < 1 || e > n as u64 {
                    return Err(Error::ElementOutOfRange { index, element: e, n });
                }
                bits |= 1u64 << (e - 1);
            }
            members.push(SetMask(bits));
        }
        Family::new(n, members)
    }

    pub fn empty(n: u32) -> Family {
        Family { n, members: Vec::new() }
    }

    /// `P[n]`. Only sensible for small n.
    pub fn power_set(n: u32) -> Family {
        assert!(n <= 24, "power_set is for desk-scale universes");
        Family { n, members: (0..1u64 << n).map(SetMask).collect() }
    }

    /// `[n]^{(r)}`, all r-subsets of the universe.
    pub fn all_r_sets(n: u32, r: u32) -> Family {
        Family { n, members: r_subsets_of(SetMask::full(n), r) }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SetMask] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = SetMask> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, m: SetMask) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    pub fn is_uniform(&self, r: u32) -> bool {
        self.members.iter().all(|m| m.len() == r)
    }

    /// The common size when all members have one, if any.
    pub fn uniformity(&self) -> Option<u32> {
        let r = self.members.first()?.len();
        self.is_uniform(r).then_some(r)
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        if self.n != other.n {
            return Err(Error::UniverseMismatch(self.n, other.n));
        }
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        Family::new(self.n, members)
    }

    pub fn difference(&self, other: &Family) -> Family {
        let members = self.members.iter().copied().filter(|m| !other.contains(*m)).collect();
        Family { n: self.n, members }
    }

    /// Keep only members satisfying the predicate.
    pub fn filtered(&self, mut pred: impl FnMut(SetMask) -> bool) -> Family {
        Family { n: self.n, members: self.members.iter().copied().filter(|&m| pred(m)).collect() }
    }

    /// `{f ∈ F : T ⊆ f}`.
    pub fn subfamily_containing(&self, t: SetMask) -> Family {
        self.filtered(|m| t.is_subset_of(m))
    }

    /// `a ∨ F = {a ∪ f : f ∈ F}`, canonicalized.
    pub fn join(&self, a: SetMask) -> Family {
        Family::new(self.n, self.members.iter().map(|&m| m.union(a)).collect())
            .expect("join stays inside the universe")
    }

    /// Delete the top universe element from every member, dropping to
    /// universe n-1 (the operator D of the induction step).
    pub fn drop_top_element(&self) -> Family {
        assert!(self.n >= 2);
        let keep = SetMask::full(self.n - 1);
        Family::new(self.n - 1, self.members.iter().map(|&m| m.inter(keep)).collect())
            .expect("deletion stays inside the smaller universe")
    }
}

/// All r-subsets of `ground`, in increasing numeric mask order.
pub fn r_subsets_of(ground: SetMask, r: u32) -> Vec<SetMask> {
    let elems: Vec<u32> = ground.elements().collect();
    let k = r as usize;
    let mut out = Vec::new();
    if k > elems.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut bits = 0u64;
        for &i in &idx {
            bits |= 1u64 << (elems[i] - 1);
        }
        out.push(SetMask(bits));
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                out.sort_unstable();
                return out;
            }
            i -= 1;
            if idx[i] != i + elems.len() - k {
                break;
            }
            if i == 0 {
                out.sort_unstable();
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// True iff every ordered pair in `A × B` satisfies the constraint.
pub fn satisfies_cross(a: &Family, b: &Family, c: IntersectionConstraint) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::UniverseMismatch(a.n(), b.n()));
    }
    Ok(a.iter().all(|x| b.iter().all(|y| c.allows(intersection_size(x, y)))))
}

/// Single-family version, under the chosen pair convention.
pub fn satisfies_single(f: &Family, c: IntersectionConstraint, conv: Convention) -> bool {
    match conv {
        Convention::AllPairs => {
            f.iter().all(|x| f.iter().all(|y| c.allows(intersection_size(x, y))))
        }
        Convention::DistinctPairs => {
            let ms = f.members();
            for i in 0..ms.len() {
                for j in i + 1..ms.len() {
                    if !c.allows(intersection_size(ms[i], ms[j])) {
                        return false;
                    }
                }
            }
            true
        }
    }
}

// ---------- family text format ----------
//
//   n=<int>
//   1,2,5        one set per line, 1-based increasing elements
//   -            the empty set
//   # comment

impl Family {
    pub fn parse(text: &str) -> Result<Family> {
        let mut lines = text.lines().enumerate();
        let (mut lineno, mut header) = loop {
            match lines.next() {
                None => {
                    return Err(Error::Parse { line: 1, msg: "missing `n=<int>` header".into() })
                }
                Some((i, l)) => {
                    let l = l.trim();
                    if l.is_empty() || l.starts_with('#') {
                        continue;
                    }
                    break (i + 1, l);
                }
            }
        };
        header = header.trim();
        let n: u32 = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse { line: lineno, msg: format!("expected `n=<int>`, got `{header}`") })?;
        let mut sets: Vec<Vec<u64>> = Vec::new();
        for (i, line) in lines {
            lineno = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == "-" {
                sets.push(Vec::new());
                continue;
            }
            let mut set = Vec::new();
            for tok in line.split(',') {
                let e: u64 = tok.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad element `{tok}`"),
                })?;
                set.push(e);
            }
            sets.push(set);
        }
        Family::from_sets(n, &sets)
    }

    /// Canonical text form: members in numeric mask order, elements increasing.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for m in &self.members {
            if m.is_empty() {
                out.push('-');
            } else {
                let elems: Vec<String> = m.elements().map(|e| e.to_string()).collect();
                out.push_str(&elems.join(","));
            }
            out.push('\n');
        }
        out
    }
}
