//! Exact computation of the Davenport constant and eta by pruned multiset
//! DFS, plus witness-producing zero-sum finders used as oracles by the other
//! modules.
//!
//! ## Search scheme
//!
//! Both constants equal `1 +` the maximum length of a sequence avoiding the
//! respective pattern (a non-empty zero-sum subsequence; for eta, one of
//! length at most `exp(G)`). The search walks multisets in canonical order
//! (non-decreasing linear element index), so each multiset is visited exactly
//! once, and maintains an incremental reachability state:
//!
//! - [`SubsetSumState`]: one bit per group element marking the sums of
//!   non-empty subsequences of the current stack. Pushing `g` unions the
//!   translate of the set by `g` plus the singleton `{g}`; the stack is
//!   zero-sum free iff the identity bit stays clear.
//! - [`ShortSumState`]: per group element, a bitmask over subsequence lengths
//!   `1..=exp(G)` that reach it; the identity mask staying empty is the
//!   short-zero-sum-free predicate.
//!
//! Backtracking restores state through an undo log of flipped bits rather
//! than snapshots.
//!
//! ## Pruning
//!
//! For a zero-sum-free stack, every push strictly enlarges the sum set (if it
//! did not, translating by `g` would fix the set and `ord(g) * g = 0` would
//! become reachable), so a branch dies once `depth + |G| - 1 - |sums|` cannot
//! beat the incumbent. This is sharpened by confining future sums to cosets
//! of the subgroup generated by the elements still allowed under the
//! canonical order, and by the multiplicity bound `mult(g) < ord(g)`.
//!
//! ## Parallelism
//!
//! The forest splits at the root (first-element choice) over a worker pool.
//! Workers share only a monotone best-length hint used to prune strictly
//! shorter branches; per-worker incumbents are merged after the join by
//! maximum length with lexicographic tie-break, so value and witness are
//! scheduling-independent. Node counts in [`SearchStats`] are not.

use std::sync::atomic::{AtomicU64, AtomicU8, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupSequence};

/// Default group-order cap for Davenport searches.
pub const DEFAULT_DAVENPORT_CAP: u64 = 64;
/// Default group-order cap for eta searches (the per-length state is heavier).
pub const DEFAULT_ETA_CAP: u64 = 32;
/// Default group-order cap for the polynomial DP finders.
pub const DEFAULT_FINDER_CAP: u64 = 1 << 16;
/// Caps beyond this require an explicit acknowledgment.
pub const CAP_ACK_THRESHOLD: u64 = 256;

/// Subgroup/coset tables power the sharpened pruning bound; above this order
/// they are skipped and the basic bound is used.
const SUBGROUP_TABLE_LIMIT: u64 = 2048;

/// Resource limits for a search.
#[derive(Debug, Clone, Default)]
pub struct Budget {
    /// Group-order cap; `None` means the per-operation default.
    pub cap: Option<u64>,
    /// Required to raise the cap beyond [`CAP_ACK_THRESHOLD`].
    pub acknowledge_large: bool,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Worker threads for the root split; 0 is treated as 1.
    pub workers: usize,
}

impl Budget {
    fn resolve_cap(&self, default_cap: u64, order: u64) -> Result<u64> {
        let cap = self.cap.unwrap_or(default_cap);
        if cap > CAP_ACK_THRESHOLD && !self.acknowledge_large {
            return Err(Error::CapNeedsAck { cap });
        }
        if order > cap {
            return Err(Error::OrderAboveCap { order, cap });
        }
        Ok(cap)
    }

    fn resolve_finder_cap(&self, order: u64) -> Result<()> {
        let cap = self.cap.unwrap_or(DEFAULT_FINDER_CAP);
        if order > cap {
            return Err(Error::OrderAboveCap { order, cap });
        }
        Ok(())
    }

    fn workers(&self) -> usize {
        self.workers.max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// The search space was exhausted; the value is exact.
    Exact,
    /// The wall-clock limit fired; the value is only a lower bound.
    Timeout,
    /// The node limit fired; the value is only a lower bound.
    NodeCapped,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Exact => "exact",
            SearchStatus::Timeout => "timeout",
            SearchStatus::NodeCapped => "node-capped",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, SearchStatus::Exact)
    }
}

/// Nodes visited and wall time. With more than one worker the node total
/// depends on scheduling; value, witness and status never do.
#[derive(Debug, Clone, Copy)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Result of an exact search: the constant, an extremal witness of length
/// `value - 1`, and bookkeeping.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub value: u64,
    pub witness: GroupSequence,
    pub stats: SearchStats,
    pub status: SearchStatus,
}

// ---------------------------------------------------------------------------
// Dense per-group tables
// ---------------------------------------------------------------------------

struct SubgroupInfo {
    size: u64,
    /// coset id of each element w.r.t. the subgroup generated by elements
    /// with index >= e
    coset_of: Vec<u32>,
}

struct GroupTables {
    n: usize,
    words: usize,
    /// add[e * n + x] = x + e
    add: Vec<u32>,
    neg: Vec<u32>,
    /// suffix_cap[e] = sum over x >= e, x != 0 of (ord(x) - 1); index n holds 0
    suffix_cap: Vec<u64>,
    subgroups: Option<Vec<SubgroupInfo>>,
    exponent: u64,
}

impl GroupTables {
    fn new(group: &AbelianGroup) -> Result<Self> {
        let n64 = group.order();
        let n = n64 as usize;
        let words = n.div_ceil(64).max(1);
        let residues: Vec<Vec<u64>> = (0..n64)
            .map(|i| group.element_from_index(i).map(|e| e.residues().to_vec()))
            .collect::<Result<_>>()?;
        let factors = group.invariant_factors().to_vec();
        let mut add = vec![0u32; n * n];
        for e in 0..n {
            let row = &mut add[e * n..(e + 1) * n];
            for (x, slot) in row.iter_mut().enumerate() {
                let mut idx = 0u64;
                let mut stride = 1u64;
                for (k, &f) in factors.iter().enumerate() {
                    idx += ((residues[x][k] + residues[e][k]) % f) * stride;
                    stride *= f;
                }
                *slot = idx as u32;
            }
        }
        let mut neg = vec![0u32; n];
        let mut ord = vec![1u64; n];
        for x in 0..n64 {
            let el = group.element_from_index(x)?;
            neg[x as usize] = el.neg()?.linear_index() as u32;
            ord[x as usize] = el.order();
        }
        let mut suffix_cap = vec![0u64; n + 1];
        for e in (0..n).rev() {
            let own = if e == 0 { 0 } else { ord[e] - 1 };
            suffix_cap[e] = suffix_cap[e + 1] + own;
        }
        let subgroups = if n64 <= SUBGROUP_TABLE_LIMIT {
            Some(Self::build_subgroups(n, &add, &ord))
        } else {
            None
        };
        Ok(Self {
            n,
            words,
            add,
            neg,
            suffix_cap,
            subgroups,
            exponent: group.exponent(),
        })
    }

    /// For each start index e, the subgroup generated by `{x : x >= e}` as
    /// its size plus the coset id of every element. Built by absorbing one
    /// generator at a time while e walks down.
    fn build_subgroups(n: usize, add: &[u32], ord: &[u64]) -> Vec<SubgroupInfo> {
        let words = n.div_ceil(64).max(1);
        let mut out: Vec<SubgroupInfo> = Vec::with_capacity(n);
        let mut sub = vec![0u64; words];
        set_bit(&mut sub, 0);
        let mut members: Vec<u32> = vec![0];
        for e in (0..n).rev() {
            if !bit(&sub, e) {
                // union of translates of the current subgroup by k*e
                let mut added: Vec<u32> = Vec::new();
                let mut shift = e as u32;
                for _ in 1..=ord[e] {
                    for &m in &members {
                        let y = add[shift as usize * n + m as usize];
                        if !bit(&sub, y as usize) {
                            set_bit(&mut sub, y as usize);
                            added.push(y);
                        }
                    }
                    shift = add[e * n + shift as usize];
                }
                members.extend_from_slice(&added);
            }
            let mut coset_of = vec![u32::MAX; n];
            let mut n_cosets = 0u32;
            for x in 0..n {
                if coset_of[x] == u32::MAX {
                    let id = n_cosets;
                    n_cosets += 1;
                    for &m in &members {
                        coset_of[add[m as usize * n + x] as usize] = id;
                    }
                }
            }
            out.push(SubgroupInfo {
                size: members.len() as u64,
                coset_of,
            });
        }
        out.reverse();
        out
    }

    fn subgroup(&self, e: usize) -> Option<&SubgroupInfo> {
        self.subgroups
            .as_ref()
            .map(|v| &v[e.min(self.n.saturating_sub(1))])
    }
}

#[inline]
fn bit(words: &[u64], i: usize) -> bool {
    words[i >> 6] >> (i & 63) & 1 != 0
}

#[inline]
fn set_bit(words: &mut [u64], i: usize) {
    words[i >> 6] |= 1 << (i & 63);
}

// ---------------------------------------------------------------------------
// Single-word fast kernel (|G| <= 64)
//
// The whole reachable set is one u64, translation by a fixed element is a
// fixed bit permutation evaluated as eight byte-table lookups, and the set of
// blocked next elements (those whose negative is already a sum) is maintained
// incrementally, so candidate enumeration is plain bit iteration.
// ---------------------------------------------------------------------------

struct FastTables {
    n: u32,
    full_mask: u64,
    /// trans[(e * 8 + byte) * 256 + value] = image of the byte under x -> x+e
    trans: Vec<u64>,
    /// negation as a bit permutation, same byte-table layout
    neg_trans: Vec<u64>,
    ord_minus_1: Vec<u64>,
    suffix_cap: Vec<u64>,
    /// per start element: (subgroup size, coset id of every element)
    subgroups: Vec<(u64, Vec<u32>)>,
    /// sampled non-identity automorphisms as index permutations, used for
    /// symmetry reduction: a stack whose image sorts lexicographically
    /// smaller cannot be a canonical orbit representative
    autos: Vec<Vec<u32>>,
}

impl FastTables {
    fn new(t: &GroupTables) -> Self {
        let n = t.n;
        let n_bytes = n.div_ceil(8);
        let perm_table = |map: &dyn Fn(usize) -> u32| -> Vec<u64> {
            let mut out = vec![0u64; n_bytes * 256];
            for byte in 0..n_bytes {
                for value in 0..256usize {
                    let mut img = 0u64;
                    for j in 0..8 {
                        let x = byte * 8 + j;
                        if x < n && value >> j & 1 == 1 {
                            img |= 1 << map(x);
                        }
                    }
                    out[byte * 256 + value] = img;
                }
            }
            out
        };
        let mut trans = vec![0u64; n * 8 * 256];
        for e in 0..n {
            let row = perm_table(&|x| t.add[e * n + x]);
            trans[e * 8 * 256..e * 8 * 256 + row.len()].copy_from_slice(&row);
        }
        let neg_trans = {
            let mut padded = vec![0u64; 8 * 256];
            let row = perm_table(&|x| t.neg[x]);
            padded[..row.len()].copy_from_slice(&row);
            padded
        };
        let subgroups = t
            .subgroups
            .as_ref()
            .expect("subgroup tables always built at this size")
            .iter()
            .map(|s| (s.size, s.coset_of.clone()))
            .collect();
        Self {
            n: n as u32,
            full_mask: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            trans,
            neg_trans,
            ord_minus_1: t.suffix_cap.windows(2).map(|w| w[0] - w[1]).collect(),
            suffix_cap: t.suffix_cap.clone(),
            subgroups,
            autos: sample_automorphisms(t, 64),
        }
    }

    #[inline]
    fn translate(&self, bits: u64, e: u32) -> u64 {
        let base = e as usize * 8 * 256;
        let t = &self.trans[base..base + 8 * 256];
        let mut out = 0u64;
        let mut rest = bits;
        let mut byte = 0usize;
        while rest != 0 {
            let v = rest as u8;
            if v != 0 {
                out |= t[byte * 256 + v as usize];
            }
            rest >>= 8;
            byte += 1;
        }
        out
    }

    #[inline]
    fn negate_set(&self, bits: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = bits;
        let mut byte = 0usize;
        while rest != 0 {
            let v = rest as u8;
            if v != 0 {
                out |= self.neg_trans[byte * 256 + v as usize];
            }
            rest >>= 8;
            byte += 1;
        }
        out
    }
}

/// Sample up to `limit` distinct non-identity automorphisms of the group
/// described by `t`, deterministically.
///
/// An endomorphism is fixed by the images of the canonical generators; any
/// image tuple with compatible orders gives a well-defined endomorphism,
/// which is an automorphism iff the induced index map is a bijection. The
/// acceptance rate is high for the small groups the fast kernel handles, so
/// plain rejection sampling with a fixed-seed generator suffices.
fn sample_automorphisms(t: &GroupTables, limit: usize) -> Vec<Vec<u32>> {
    let n = t.n;
    if n <= 2 {
        return Vec::new();
    }
    // element orders by repeated addition (n is tiny here)
    let mut ord = vec![1u64; n];
    for e in 1..n {
        let mut x = e;
        let mut k = 1u64;
        while x != 0 {
            x = t.add[e * n + x] as usize;
            k += 1;
        }
        ord[e] = k;
    }
    // invariant factors: the basis element at each stride has the factor as
    // its order
    let mut factors: Vec<u64> = Vec::new();
    let mut stride = 1usize;
    while stride < n {
        let f = ord[stride];
        factors.push(f);
        stride *= f as usize;
    }
    let rank = factors.len();
    // legal generator images: any element whose order divides the factor
    let candidates: Vec<Vec<u32>> = factors
        .iter()
        .map(|&f| {
            (1..n as u32)
                .filter(|&x| f % ord[x as usize] == 0)
                .collect()
        })
        .collect();
    let mut rng_state: u64 = 0x9E3779B97F4A7C15 ^ (n as u64);
    let mut next = move || {
        // splitmix64
        rng_state = rng_state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = rng_state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    };
    let mut seen: std::collections::HashSet<Vec<u32>> = Default::default();
    let mut out = Vec::new();
    let mut img = vec![0u32; rank];
    let mut perm = vec![0u32; n];
    let mut hit = vec![false; n];
    'tries: for _ in 0..20_000 {
        if out.len() >= limit {
            break;
        }
        for (i, c) in candidates.iter().enumerate() {
            img[i] = c[(next() % c.len() as u64) as usize];
        }
        // build the induced index map coordinate by coordinate
        perm[0] = 0;
        let mut block = 1usize;
        for (i, &f) in factors.iter().enumerate() {
            for d in 1..f as usize {
                for y in 0..block {
                    let prev = perm[(d - 1) * block + y] as usize;
                    perm[d * block + y] = t.add[img[i] as usize * n + prev];
                }
            }
            block *= f as usize;
        }
        hit.fill(false);
        for &p in &perm {
            if hit[p as usize] {
                continue 'tries;
            }
            hit[p as usize] = true;
        }
        let is_identity = perm.iter().enumerate().all(|(i, &p)| p as usize == i);
        if !is_identity && seen.insert(perm.clone()) {
            out.push(perm.clone());
        }
    }
    out
}

struct FastDriver<'a> {
    t: &'a FastTables,
    shared: &'a SearchShared,
    reach: u64,
    /// negatives of reached sums: exactly the elements that would close a
    /// zero-sum if pushed
    blocked: u64,
    undo: Vec<(u64, u64)>,
    stack: Vec<u32>,
    best_len: u64,
    best_witness: Vec<u32>,
    nodes_local: u64,
    truncated: bool,
    coset_marks: Vec<bool>,
    touched: Vec<u32>,
    image: Vec<u32>,
}

/// Symmetry reduction is checked on stacks up to this depth; duplicates
/// deeper down are cheaper to revisit than to test.
const SYMMETRY_CHECK_DEPTH: usize = 9;

impl<'a> FastDriver<'a> {
    fn new(t: &'a FastTables, shared: &'a SearchShared) -> Self {
        Self {
            t,
            shared,
            reach: 0,
            blocked: 0,
            undo: Vec::new(),
            stack: Vec::new(),
            best_len: 0,
            best_witness: Vec::new(),
            nodes_local: 0,
            truncated: false,
            coset_marks: vec![false; t.n as usize],
            touched: Vec::new(),
            image: Vec::new(),
        }
    }

    /// True when some automorphic image of the (sorted) stack is
    /// lexicographically smaller. Such a stack cannot be a prefix of the
    /// lexicographically least member of its orbit, and every orbit's least
    /// member survives this test at every prefix, so pruning here keeps both
    /// the value and the canonical witness reachable.
    fn dominated_by_symmetry(&mut self) -> bool {
        let stack = &self.stack;
        let first = stack[0];
        'autos: for auto_map in &self.t.autos {
            // cheap filter: compare the minimum image element first
            let mut min_img = u32::MAX;
            for &e in stack.iter() {
                min_img = min_img.min(auto_map[e as usize]);
            }
            match min_img.cmp(&first) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => continue 'autos,
                std::cmp::Ordering::Equal => {}
            }
            // tie on the minimum: sort the full image and compare
            let image = &mut self.image;
            image.clear();
            for &e in stack.iter() {
                let m = auto_map[e as usize];
                let mut pos = image.len();
                image.push(m);
                while pos > 0 && image[pos - 1] > m {
                    image.swap(pos - 1, pos);
                    pos -= 1;
                }
            }
            for (a, b) in image.iter().zip(stack.iter()) {
                match a.cmp(b) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => continue 'autos,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        false
    }

    #[inline]
    fn check_limits(&mut self) -> bool {
        self.nodes_local += 1;
        if self.nodes_local % 4096 == 0 {
            let total = self.shared.nodes.fetch_add(4096, Ordering::Relaxed) + 4096;
            if total >= self.shared.node_limit {
                self.shared.stop.store(STOP_NODES, Ordering::Relaxed);
            }
            if let Some(d) = self.shared.deadline {
                if Instant::now() >= d {
                    self.shared.stop.store(STOP_TIME, Ordering::Relaxed);
                }
            }
            if self.shared.stop.load(Ordering::Relaxed) != STOP_NONE {
                self.truncated = true;
                return false;
            }
        }
        true
    }

    /// Descend only if this subtree can beat the local incumbent and at
    /// least tie the global one; bounds are tried cheapest first.
    fn should_descend(&mut self, e: u32) -> bool {
        let depth = self.stack.len() as u64;
        let count = self.reach.count_ones() as u64;
        let threshold = (self.best_len + 1).max(self.shared.global_best.load(Ordering::Relaxed));
        if depth + (self.t.n as u64 - 1 - count) < threshold {
            return false;
        }
        if depth + self.t.suffix_cap[e as usize] < threshold {
            return false;
        }
        // Capacity of the still-pushable elements, multiplicity-bounded.
        // x and -x can never both be pushed (they would close a zero-sum),
        // so a pair contained in the viable set contributes only once.
        let viable = self.viable_from(e);
        let paired = viable & self.t.negate_set(viable);
        let mut capacity = 0u64;
        let mut bits = viable & !paired;
        while bits != 0 {
            capacity += self.t.ord_minus_1[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        let mut pair_capacity = 0u64;
        let mut bits = paired;
        while bits != 0 {
            let x = bits.trailing_zeros();
            // an involution is its own negative and is not halved
            pair_capacity += if self.t.ord_minus_1[x as usize] == 1 {
                2
            } else {
                self.t.ord_minus_1[x as usize]
            };
            bits &= bits - 1;
        }
        capacity += pair_capacity / 2;
        if depth + capacity < threshold {
            return false;
        }
        // future sums stay in (reach + {0}) + subgroup generated by allowed
        // elements: count the cosets that set touches
        let (size, coset_of) = &self.t.subgroups[e as usize];
        if *size == self.t.n as u64 {
            return true; // single coset, no sharper than the basic bound
        }
        self.touched.clear();
        let id0 = coset_of[0];
        self.coset_marks[id0 as usize] = true;
        self.touched.push(id0);
        let mut bits = self.reach;
        while bits != 0 {
            let id = coset_of[bits.trailing_zeros() as usize];
            if !self.coset_marks[id as usize] {
                self.coset_marks[id as usize] = true;
                self.touched.push(id);
            }
            bits &= bits - 1;
        }
        let k = self.touched.len() as u64;
        for &id in &self.touched {
            self.coset_marks[id as usize] = false;
        }
        depth + (k * size).saturating_sub(1 + count) >= threshold
    }

    #[inline]
    fn viable_from(&self, e: u32) -> u64 {
        self.t.full_mask & (u64::MAX << e) & !self.blocked
    }

    fn record(&mut self) {
        let depth = self.stack.len() as u64;
        if depth > self.best_len {
            self.best_len = depth;
            self.best_witness = self.stack.clone();
            self.shared.global_best.fetch_max(depth, Ordering::Relaxed);
        }
    }

    fn visit(&mut self, e: u32) {
        let new = (self.t.translate(self.reach, e) | 1 << e) & !self.reach;
        let blocked_new = self.t.negate_set(new) & !self.blocked;
        self.undo.push((new, blocked_new));
        self.reach |= new;
        self.blocked |= blocked_new;
        debug_assert_eq!(self.reach & 1, 0);
        if !self.check_limits() {
            self.undo_one();
            return;
        }
        self.stack.push(e);
        if self.stack.len() <= SYMMETRY_CHECK_DEPTH && self.dominated_by_symmetry() {
            self.stack.pop();
            self.undo_one();
            return;
        }
        self.record();
        if self.should_descend(e) {
            let mut bits = self.viable_from(e);
            while bits != 0 {
                self.visit(bits.trailing_zeros());
                if self.truncated {
                    break;
                }
                bits &= bits - 1;
            }
        }
        self.stack.pop();
        self.undo_one();
    }

    #[inline]
    fn undo_one(&mut self) {
        let (new, blocked_new) = self.undo.pop().expect("undo entry per push");
        self.reach &= !new;
        self.blocked &= !blocked_new;
    }
}

// ---------------------------------------------------------------------------
// Search states
// ---------------------------------------------------------------------------

trait PatternFreeState {
    /// Push element `e` if the stack stays pattern-free; report success.
    fn try_push(&mut self, e: u32) -> bool;
    fn pop(&mut self);
    /// Upper bound on the total length reachable from here when all further
    /// elements have index >= `min_next`; `depth` is the current stack depth.
    fn max_total_len(&mut self, depth: u64, min_next: u32) -> u64;
}

/// Bitset over group elements marking sums of non-empty subsequences of the
/// current stack; zero-sum free iff the identity bit is clear.
struct SubsetSumState<'a> {
    t: &'a GroupTables,
    reach: Vec<u64>,
    count: u64,
    scratch: Vec<u64>,
    /// (word index, flipped bits) entries; frames mark push boundaries
    undo: Vec<(u32, u64)>,
    frames: Vec<u32>,
    coset_marks: Vec<bool>,
    touched: Vec<u32>,
}

impl<'a> SubsetSumState<'a> {
    fn new(t: &'a GroupTables) -> Self {
        Self {
            t,
            reach: vec![0; t.words],
            count: 0,
            scratch: vec![0; t.words],
            undo: Vec::new(),
            frames: Vec::new(),
            coset_marks: vec![false; t.n],
            touched: Vec::new(),
        }
    }

    fn contains(&self, x: u32) -> bool {
        bit(&self.reach, x as usize)
    }

    #[cfg(test)]
    fn for_each_member(&self, mut f: impl FnMut(u32)) {
        for (w, &word) in self.reach.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros();
                f((w as u32) << 6 | b);
                bits &= bits - 1;
            }
        }
    }
}

impl PatternFreeState for SubsetSumState<'_> {
    fn try_push(&mut self, e: u32) -> bool {
        if e == 0 || self.contains(self.t.neg[e as usize]) {
            return false;
        }
        self.scratch.fill(0);
        let row = &self.t.add[e as usize * self.t.n..(e as usize + 1) * self.t.n];
        for (w, &word) in self.reach.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros();
                let x = (w << 6) | b as usize;
                set_bit(&mut self.scratch, row[x] as usize);
                bits &= bits - 1;
            }
        }
        set_bit(&mut self.scratch, e as usize);
        self.frames.push(self.undo.len() as u32);
        for w in 0..self.t.words {
            let new = self.scratch[w] & !self.reach[w];
            if new != 0 {
                self.undo.push((w as u32, new));
                self.reach[w] |= new;
                self.count += new.count_ones() as u64;
            }
        }
        debug_assert!(!bit(&self.reach, 0));
        true
    }

    fn pop(&mut self) {
        let frame = self.frames.pop().expect("pop without push") as usize;
        while self.undo.len() > frame {
            let (w, bits) = self.undo.pop().expect("frame bounded");
            self.reach[w as usize] &= !bits;
            self.count -= bits.count_ones() as u64;
        }
    }

    fn max_total_len(&mut self, depth: u64, min_next: u32) -> u64 {
        let basic = depth + (self.t.n as u64 - 1 - self.count);
        let by_mult = depth + self.t.suffix_cap[min_next as usize];
        let mut best = basic.min(by_mult);
        if let Some(info) = self.t.subgroup(min_next as usize) {
            // Future sums stay inside (reach + {0}) translated by the
            // subgroup generated by the still-allowed elements; count the
            // cosets that set touches.
            let marks = &mut self.coset_marks;
            let touched = &mut self.touched;
            touched.clear();
            let id0 = info.coset_of[0];
            marks[id0 as usize] = true;
            touched.push(id0);
            for (w, &word) in self.reach.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let b = bits.trailing_zeros();
                    let x = (w << 6) | b as usize;
                    let id = info.coset_of[x];
                    if !marks[id as usize] {
                        marks[id as usize] = true;
                        touched.push(id);
                    }
                    bits &= bits - 1;
                }
            }
            let k = touched.len() as u64;
            for &id in touched.iter() {
                marks[id as usize] = false;
            }
            let refined = depth + (k * info.size).saturating_sub(1 + self.count);
            best = best.min(refined);
        }
        best
    }
}

/// Per-element bitmask over subsequence lengths `1..=max_len` (bit `L-1` set
/// when a length-`L` subsequence sums there); short-zero-sum free iff the
/// identity mask stays empty.
struct ShortSumState<'a> {
    t: &'a GroupTables,
    masks: Vec<u64>,
    len_mask: u64,
    scratch: Vec<u64>,
    /// (element, previous mask) entries; frames mark push boundaries
    undo: Vec<(u32, u64)>,
    frames: Vec<u32>,
}

impl<'a> ShortSumState<'a> {
    fn new(t: &'a GroupTables, max_len: u64) -> Self {
        assert!((1..=64).contains(&max_len));
        let len_mask = if max_len == 64 {
            u64::MAX
        } else {
            (1u64 << max_len) - 1
        };
        Self {
            t,
            masks: vec![0; t.n],
            len_mask,
            scratch: vec![0; t.n],
            undo: Vec::new(),
            frames: Vec::new(),
        }
    }
}

impl PatternFreeState for ShortSumState<'_> {
    fn try_push(&mut self, e: u32) -> bool {
        let neg = self.t.neg[e as usize] as usize;
        if e == 0 || (self.masks[neg] << 1) & self.len_mask != 0 {
            return false;
        }
        let n = self.t.n;
        // x - e = x + (-e)
        let row = &self.t.add[neg * n..(neg + 1) * n];
        for x in 0..n {
            self.scratch[x] = (self.masks[row[x] as usize] << 1) & self.len_mask;
        }
        self.scratch[e as usize] |= 1;
        self.frames.push(self.undo.len() as u32);
        for x in 0..n {
            let new = self.scratch[x] & !self.masks[x];
            if new != 0 {
                self.undo.push((x as u32, self.masks[x]));
                self.masks[x] |= new;
            }
        }
        debug_assert_eq!(self.masks[0], 0);
        true
    }

    fn pop(&mut self) {
        let frame = self.frames.pop().expect("pop without push") as usize;
        while self.undo.len() > frame {
            let (x, old) = self.undo.pop().expect("frame bounded");
            self.masks[x as usize] = old;
        }
    }

    fn max_total_len(&mut self, depth: u64, min_next: u32) -> u64 {
        depth + self.t.suffix_cap[min_next as usize]
    }
}

// ---------------------------------------------------------------------------
// DFS driver and the worker pool
// ---------------------------------------------------------------------------

const STOP_NONE: u8 = 0;
const STOP_TIME: u8 = 1;
const STOP_NODES: u8 = 2;

struct SearchShared {
    global_best: AtomicU64,
    next_root: AtomicUsize,
    nodes: AtomicU64,
    stop: AtomicU8,
    node_limit: u64,
    deadline: Option<Instant>,
}

struct Driver<'a, S: PatternFreeState> {
    state: S,
    shared: &'a SearchShared,
    stack: Vec<u32>,
    best_len: u64,
    best_witness: Vec<u32>,
    nodes_local: u64,
    truncated: bool,
}

impl<'a, S: PatternFreeState> Driver<'a, S> {
    fn new(state: S, shared: &'a SearchShared) -> Self {
        Self {
            state,
            shared,
            stack: Vec::new(),
            best_len: 0,
            best_witness: Vec::new(),
            nodes_local: 0,
            truncated: false,
        }
    }

    #[inline]
    fn check_limits(&mut self) -> bool {
        self.nodes_local += 1;
        if self.nodes_local % 64 == 0 {
            let total = self.shared.nodes.fetch_add(64, Ordering::Relaxed) + 64;
            if total >= self.shared.node_limit {
                self.shared.stop.store(STOP_NODES, Ordering::Relaxed);
            }
            if let Some(d) = self.shared.deadline {
                if Instant::now() >= d {
                    self.shared.stop.store(STOP_TIME, Ordering::Relaxed);
                }
            }
            if self.shared.stop.load(Ordering::Relaxed) != STOP_NONE {
                self.truncated = true;
                return false;
            }
        }
        true
    }

    /// Record the current stack if it is a new local maximum. DFS visits
    /// multisets in lexicographic order, so the first record at the final
    /// length is the lexicographically least maximal sequence.
    fn record(&mut self) {
        let depth = self.stack.len() as u64;
        if depth > self.best_len {
            self.best_len = depth;
            self.best_witness = self.stack.clone();
            self.shared.global_best.fetch_max(depth, Ordering::Relaxed);
        }
    }

    /// Explore one element choice: push, record, decide whether the subtree
    /// can still matter, recurse.
    fn visit(&mut self, e: u32, n: u32) {
        if !self.state.try_push(e) {
            return;
        }
        if !self.check_limits() {
            self.state.pop();
            return;
        }
        self.stack.push(e);
        self.record();
        let depth = self.stack.len() as u64;
        let cap = self.state.max_total_len(depth, e);
        let gbest = self.shared.global_best.load(Ordering::Relaxed);
        // A subtree must be able to beat the local incumbent and to at least
        // tie the global one (earlier roots win ties at the merge).
        if cap > self.best_len && cap >= gbest {
            for next in e..n {
                self.visit(next, n);
                if self.truncated {
                    break;
                }
            }
        }
        self.stack.pop();
        self.state.pop();
    }
}

/// Run the root-splitting pool; `worker` drains roots from `shared` and
/// returns its local incumbent (length, witness stack).
fn run_pool<W>(group: &AbelianGroup, budget: &Budget, worker: W) -> Result<SearchOutcome>
where
    W: Fn(&SearchShared) -> (u64, Vec<u32>) + Sync,
{
    let start = Instant::now();
    let n = group.order() as u32;
    let shared = SearchShared {
        global_best: AtomicU64::new(0),
        next_root: AtomicUsize::new(1),
        nodes: AtomicU64::new(0),
        stop: AtomicU8::new(STOP_NONE),
        node_limit: budget.node_limit.unwrap_or(u64::MAX),
        deadline: budget.time_limit.map(|d| start + d),
    };
    let workers = budget.workers().min(n.saturating_sub(1).max(1) as usize);
    let results: Mutex<Vec<(u64, Vec<u32>)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let incumbent = worker(&shared);
                results.lock().expect("result collection").push(incumbent);
            });
        }
    });

    let collected = results.into_inner().expect("workers joined");
    let mut best_len = 0u64;
    let mut best_witness: Option<Vec<u32>> = None;
    for (len, witness) in collected {
        let better = match len.cmp(&best_len) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Equal => {
                best_witness.as_ref().map(|w| witness < *w).unwrap_or(true)
            }
            std::cmp::Ordering::Less => false,
        };
        if better {
            best_len = len;
            best_witness = Some(witness);
        }
    }
    let mut witness_seq = GroupSequence::new(group);
    for e in best_witness.unwrap_or_default() {
        witness_seq.push_index(e as u64, 1)?;
    }
    let status = match shared.stop.load(Ordering::Relaxed) {
        STOP_TIME => SearchStatus::Timeout,
        STOP_NODES => SearchStatus::NodeCapped,
        _ => SearchStatus::Exact,
    };
    Ok(SearchOutcome {
        value: best_len + 1,
        witness: witness_seq,
        stats: SearchStats {
            nodes: shared.nodes.load(Ordering::Relaxed),
            elapsed: start.elapsed(),
        },
        status,
    })
}

fn run_search<S, F>(group: &AbelianGroup, budget: &Budget, make_state: F) -> Result<SearchOutcome>
where
    S: PatternFreeState,
    F: Fn() -> S + Sync,
{
    let n = group.order() as u32;
    run_pool(group, budget, |shared| {
        let mut driver = Driver::new(make_state(), shared);
        loop {
            if shared.stop.load(Ordering::Relaxed) != STOP_NONE {
                driver.truncated = true;
                break;
            }
            let root = shared.next_root.fetch_add(1, Ordering::Relaxed);
            if root >= n as usize {
                break;
            }
            driver.visit(root as u32, n);
            if driver.truncated {
                break;
            }
        }
        shared
            .nodes
            .fetch_add(driver.nodes_local % 64, Ordering::Relaxed);
        (driver.best_len, driver.best_witness)
    })
}

fn run_search_fast(
    group: &AbelianGroup,
    budget: &Budget,
    tables: &FastTables,
) -> Result<SearchOutcome> {
    let n = tables.n;
    run_pool(group, budget, |shared| {
        let mut driver = FastDriver::new(tables, shared);
        loop {
            if shared.stop.load(Ordering::Relaxed) != STOP_NONE {
                driver.truncated = true;
                break;
            }
            let root = shared.next_root.fetch_add(1, Ordering::Relaxed);
            if root >= n as usize {
                break;
            }
            driver.visit(root as u32);
            if driver.truncated {
                break;
            }
        }
        shared
            .nodes
            .fetch_add(driver.nodes_local % 4096, Ordering::Relaxed);
        (driver.best_len, driver.best_witness)
    })
}

/// Exact Davenport constant `D(G)`: one more than the maximum length of a
/// zero-sum-free sequence over `G`. On budget exhaustion the value is only a
/// lower bound and the status says so. The witness is the lexicographically
/// least maximal sequence in canonical order.
pub fn davenport_exact(group: &AbelianGroup, budget: &Budget) -> Result<SearchOutcome> {
    budget.resolve_cap(DEFAULT_DAVENPORT_CAP, group.order())?;
    let tables = GroupTables::new(group)?;
    if group.order() <= 64 {
        let fast = FastTables::new(&tables);
        return run_search_fast(group, budget, &fast);
    }
    run_search(group, budget, || SubsetSumState::new(&tables))
}

/// Exact `eta(G)`: one more than the maximum length of a sequence with no
/// non-empty zero-sum subsequence of length at most `exp(G)`. Same budget and
/// witness conventions as [`davenport_exact`].
pub fn eta_exact(group: &AbelianGroup, budget: &Budget) -> Result<SearchOutcome> {
    budget.resolve_cap(DEFAULT_ETA_CAP, group.order())?;
    if group.exponent() > 64 {
        return Err(Error::ExponentTooLarge {
            exponent: group.exponent(),
            max: 64,
        });
    }
    let tables = GroupTables::new(group)?;
    let max_len = tables.exponent.max(1);
    run_search(group, budget, || ShortSumState::new(&tables, max_len))
}

// ---------------------------------------------------------------------------
// DP zero-sum finders (complete, witness-producing)
// ---------------------------------------------------------------------------

const PRED_START: u32 = u32::MAX;

/// Find a non-empty zero-sum sub-multiset of `S`, or `None` when none exists.
///
/// Dynamic programming over (distinct elements of `S`) x (achievable sums)
/// with back-pointers; the table width is the group order, not the sequence
/// length, so high multiplicities only add passes, not width.
pub fn find_zero_sum_subsequence(
    s: &GroupSequence,
    budget: &Budget,
) -> Result<Option<GroupSequence>> {
    let group = s.group();
    budget.resolve_finder_cap(group.order())?;
    let n = group.order() as usize;
    let mut reached = vec![false; n];
    let mut pred_elem = vec![0u32; n];
    let mut pred_sum = vec![0u32; n];
    let mut frontier: Vec<u32> = Vec::new();
    for (e, mult) in s.index_counts() {
        let elem = group.element_from_index(e)?;
        for _ in 0..mult {
            frontier.clear();
            frontier.extend((0..n as u32).filter(|&x| reached[x as usize]));
            let mut any_new = false;
            if !reached[e as usize] {
                reached[e as usize] = true;
                pred_elem[e as usize] = e as u32;
                pred_sum[e as usize] = PRED_START;
                any_new = true;
            }
            for &x in &frontier {
                let y = group
                    .element_from_index(x as u64)?
                    .add(&elem)?
                    .linear_index() as usize;
                if !reached[y] {
                    reached[y] = true;
                    pred_elem[y] = e as u32;
                    pred_sum[y] = x;
                    any_new = true;
                }
            }
            if reached[0] {
                let mut witness = GroupSequence::new(group);
                let mut at = 0u32;
                loop {
                    witness.push_index(pred_elem[at as usize] as u64, 1)?;
                    if pred_sum[at as usize] == PRED_START {
                        break;
                    }
                    at = pred_sum[at as usize];
                }
                debug_assert!(witness.sum().is_identity());
                debug_assert!(witness.is_sub_multiset_of(s));
                return Ok(Some(witness));
            }
            // a stalled pass means further copies of e change nothing
            if !any_new {
                break;
            }
        }
    }
    Ok(None)
}

/// Find a non-empty zero-sum sub-multiset of `S` of size at most `max_len`,
/// or `None` when none exists. DP over (sum, length) with back-pointers.
pub fn find_short_zero_sum(
    s: &GroupSequence,
    max_len: u64,
    budget: &Budget,
) -> Result<Option<GroupSequence>> {
    let group = s.group();
    budget.resolve_finder_cap(group.order())?;
    let n = group.order() as usize;
    let l = max_len.min(s.len()) as usize;
    if l == 0 {
        return Ok(None);
    }
    let cell = |x: usize, len: usize| -> usize { x * l + (len - 1) };
    let mut reached = vec![false; n * l];
    let mut pred_elem = vec![0u32; n * l];
    let mut pred_cell = vec![0u32; n * l];
    let mut frontier: Vec<(u32, u32)> = Vec::new();
    for (e, mult) in s.index_counts() {
        let elem = group.element_from_index(e)?;
        for _ in 0..mult {
            frontier.clear();
            for x in 0..n {
                for len in 1..=l {
                    if reached[cell(x, len)] {
                        frontier.push((x as u32, len as u32));
                    }
                }
            }
            let mut any_new = false;
            {
                let c = cell(e as usize, 1);
                if !reached[c] {
                    reached[c] = true;
                    pred_elem[c] = e as u32;
                    pred_cell[c] = PRED_START;
                    any_new = true;
                }
            }
            for &(x, len) in &frontier {
                if (len as usize) < l {
                    let y = group
                        .element_from_index(x as u64)?
                        .add(&elem)?
                        .linear_index() as usize;
                    let c = cell(y, len as usize + 1);
                    if !reached[c] {
                        reached[c] = true;
                        pred_elem[c] = e as u32;
                        pred_cell[c] = cell(x as usize, len as usize) as u32;
                        any_new = true;
                    }
                }
            }
            for len in 1..=l {
                if reached[cell(0, len)] {
                    let mut witness = GroupSequence::new(group);
                    let mut at = cell(0, len) as u32;
                    loop {
                        witness.push_index(pred_elem[at as usize] as u64, 1)?;
                        if pred_cell[at as usize] == PRED_START {
                            break;
                        }
                        at = pred_cell[at as usize];
                    }
                    debug_assert!(witness.sum().is_identity());
                    debug_assert!(witness.len() <= max_len);
                    debug_assert!(witness.is_sub_multiset_of(s));
                    return Ok(Some(witness));
                }
            }
            if !any_new {
                break;
            }
        }
    }
    Ok(None)
}

/// True iff `S` contains no non-empty zero-sum subsequence. Doubles as the
/// validator for the extremal constructions.
pub fn verify_zero_sum_free(s: &GroupSequence, budget: &Budget) -> Result<bool> {
    Ok(find_zero_sum_subsequence(s, budget)?.is_none())
}

/// True iff `S` contains no non-empty zero-sum subsequence of length at most
/// `max_len`.
pub fn verify_short_zero_sum_free(
    s: &GroupSequence,
    max_len: u64,
    budget: &Budget,
) -> Result<bool> {
    Ok(find_short_zero_sum(s, max_len, budget)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn g(moduli: &[u64]) -> AbelianGroup {
        AbelianGroup::new(moduli).unwrap()
    }

    fn seq(group: &AbelianGroup, idx: &[u64]) -> GroupSequence {
        let mut s = GroupSequence::new(group);
        for &i in idx {
            s.push_index(i, 1).unwrap();
        }
        s
    }

    /// All sums of non-empty sub-multisets, by exhaustive enumeration.
    fn brute_subset_sums(s: &GroupSequence) -> Vec<u64> {
        let elems: Vec<GroupElement> = s.expanded();
        let group = s.group();
        let mut sums: std::collections::BTreeSet<u64> = Default::default();
        for mask in 1u64..(1 << elems.len()) {
            let mut acc = group.identity();
            for (i, e) in elems.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.add(e).unwrap();
                }
            }
            sums.insert(acc.linear_index());
        }
        sums.into_iter().collect()
    }

    /// Shortest zero-sum sub-multiset length, by exhaustive enumeration.
    fn brute_shortest_zero_sum(s: &GroupSequence) -> Option<u64> {
        let elems: Vec<GroupElement> = s.expanded();
        let group = s.group();
        let mut best: Option<u64> = None;
        for mask in 1u64..(1 << elems.len()) {
            let mut acc = group.identity();
            for (i, e) in elems.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.add(e).unwrap();
                }
            }
            if acc.is_identity() {
                let k = mask.count_ones() as u64;
                best = Some(best.map_or(k, |b: u64| b.min(k)));
            }
        }
        best
    }

    /// Independent maximal zero-sum-free length: plain recursion with
    /// per-node exhaustive subset-sum checks, no shared incremental state.
    fn brute_max_zsf_len(group: &AbelianGroup) -> u64 {
        fn rec(group: &AbelianGroup, stack: &mut Vec<u64>, min: u64, best: &mut u64) {
            if !stack.is_empty() {
                let mut s = GroupSequence::new(group);
                for &i in stack.iter() {
                    s.push_index(i, 1).unwrap();
                }
                if brute_subset_sums(&s).contains(&0) {
                    return;
                }
            }
            *best = (*best).max(stack.len() as u64);
            for e in min..group.order() {
                stack.push(e);
                rec(group, stack, e, best);
                stack.pop();
            }
        }
        let mut best = 0;
        rec(group, &mut Vec::new(), 1, &mut best);
        best
    }

    fn brute_max_short_free_len(group: &AbelianGroup) -> u64 {
        fn rec(group: &AbelianGroup, stack: &mut Vec<u64>, min: u64, best: &mut u64) {
            if !stack.is_empty() {
                let mut s = GroupSequence::new(group);
                for &i in stack.iter() {
                    s.push_index(i, 1).unwrap();
                }
                if let Some(k) = brute_shortest_zero_sum(&s) {
                    if k <= group.exponent() {
                        return;
                    }
                }
            }
            *best = (*best).max(stack.len() as u64);
            for e in min..group.order() {
                stack.push(e);
                rec(group, stack, e, best);
                stack.pop();
            }
        }
        let mut best = 0;
        rec(group, &mut Vec::new(), 1, &mut best);
        best
    }

    #[test]
    fn finder_examples() {
        let c2 = g(&[2]);
        let w = find_zero_sum_subsequence(&seq(&c2, &[1, 1]), &Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.multiplicity(1), 2);
        assert_eq!(w.len(), 2);

        let c3 = g(&[3]);
        let w = find_zero_sum_subsequence(&seq(&c3, &[1, 2]), &Budget::default())
            .unwrap()
            .unwrap();
        assert!(w.sum().is_identity());
        assert_eq!(w.len(), 2);

        assert!(
            find_zero_sum_subsequence(&seq(&c3, &[1, 1]), &Budget::default())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn short_finder_examples() {
        let c3 = g(&[3]);
        let w = find_short_zero_sum(&seq(&c3, &[1, 1, 1]), 3, &Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.len(), 3);

        let c4 = g(&[4]);
        let w = find_short_zero_sum(&seq(&c4, &[1, 1, 2, 2]), 2, &Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.multiplicity(2), 2);

        // (1,1,1) over C4 only has the length-4 zero-sum, which is too long
        assert!(
            find_short_zero_sum(&seq(&c4, &[1, 1, 1]), 2, &Budget::default())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn finders_match_brute_force_on_random_sequences() {
        let groups = [g(&[6]), g(&[2, 4]), g(&[3, 3]), g(&[12]), g(&[2, 2, 2])];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let group = &groups[rng.random_range(0..groups.len())];
            let len = rng.random_range(1..=10u64);
            let mut s = GroupSequence::new(group);
            for _ in 0..len {
                s.push_index(rng.random_range(0..group.order()), 1).unwrap();
            }
            let brute = brute_shortest_zero_sum(&s);
            let dp = find_zero_sum_subsequence(&s, &Budget::default()).unwrap();
            assert_eq!(dp.is_some(), brute.is_some(), "{s:?}");
            if let Some(w) = &dp {
                assert!(w.sum().is_identity());
                assert!(!w.is_empty());
                assert!(w.is_sub_multiset_of(&s));
            }
            let max_len = rng.random_range(1..=6u64);
            let dp_short = find_short_zero_sum(&s, max_len, &Budget::default()).unwrap();
            let brute_short = brute.map(|k| k <= max_len).unwrap_or(false);
            assert_eq!(dp_short.is_some(), brute_short, "{s:?} maxlen {max_len}");
            if let Some(w) = &dp_short {
                assert!(w.sum().is_identity());
                assert!(w.len() <= max_len);
                assert!(w.is_sub_multiset_of(&s));
            }
        }
    }

    #[test]
    fn subset_sum_state_matches_brute_force() {
        let groups = [g(&[6]), g(&[2, 4]), g(&[3, 3]), g(&[6, 6]), g(&[2, 2, 2])];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let group = &groups[rng.random_range(0..groups.len())];
            let tables = GroupTables::new(group).unwrap();
            let mut state = SubsetSumState::new(&tables);
            let mut s = GroupSequence::new(group);
            for _ in 0..rng.random_range(1..=15u64) {
                let e = rng.random_range(1..group.order());
                if state.try_push(e as u32) {
                    s.push_index(e, 1).unwrap();
                }
            }
            if s.is_empty() {
                continue;
            }
            let mut got: Vec<u64> = Vec::new();
            state.for_each_member(|x| got.push(x as u64));
            got.sort_unstable();
            assert_eq!(got, brute_subset_sums(&s), "{s:?}");
            assert!(!got.contains(&0));
        }
    }

    #[test]
    fn subset_sum_state_restores_on_pop() {
        let group = g(&[6, 6]);
        let tables = GroupTables::new(&group).unwrap();
        let mut state = SubsetSumState::new(&tables);
        assert!(state.try_push(1));
        let before: Vec<u64> = state.reach.clone();
        let count = state.count;
        assert!(state.try_push(7));
        assert!(state.try_push(13));
        state.pop();
        state.pop();
        assert_eq!(state.reach, before);
        assert_eq!(state.count, count);
    }

    #[test]
    fn davenport_examples() {
        let b = Budget::default();
        assert_eq!(davenport_exact(&g(&[2, 2, 2]), &b).unwrap().value, 4);
        assert_eq!(davenport_exact(&g(&[6, 6]), &b).unwrap().value, 11);
        assert_eq!(
            davenport_exact(&AbelianGroup::trivial(), &b).unwrap().value,
            1
        );
    }

    #[test]
    fn davenport_matches_independent_recursion() {
        for group in [g(&[5]), g(&[8]), g(&[2, 4]), g(&[3, 3]), g(&[2, 2])] {
            let expect = brute_max_zsf_len(&group) + 1;
            let got = davenport_exact(&group, &Budget::default()).unwrap();
            assert_eq!(got.value, expect, "{group}");
            assert_eq!(got.witness.len(), got.value - 1);
        }
    }

    #[test]
    fn eta_examples() {
        let b = Budget::default();
        assert_eq!(eta_exact(&g(&[2, 2]), &b).unwrap().value, 4);
        assert_eq!(eta_exact(&g(&[2, 2, 2]), &b).unwrap().value, 8);
        assert_eq!(eta_exact(&g(&[3, 3]), &b).unwrap().value, 7);
    }

    #[test]
    fn eta_matches_independent_recursion() {
        for group in [g(&[5]), g(&[2, 4]), g(&[3, 3]), g(&[2, 2]), g(&[8])] {
            let expect = brute_max_short_free_len(&group) + 1;
            let got = eta_exact(&group, &Budget::default()).unwrap();
            assert_eq!(got.value, expect, "{group}");
        }
    }

    #[test]
    fn witnesses_verify() {
        let b = Budget::default();
        for group in [g(&[6, 6]), g(&[9]), g(&[2, 4]), g(&[3, 9])] {
            let out = davenport_exact(&group, &b).unwrap();
            assert_eq!(out.witness.len(), out.value - 1);
            assert!(verify_zero_sum_free(&out.witness, &b).unwrap(), "{group}");
        }
        for group in [g(&[3, 3]), g(&[2, 2, 2]), g(&[7])] {
            let out = eta_exact(&group, &b).unwrap();
            assert!(
                verify_short_zero_sum_free(&out.witness, group.exponent(), &b).unwrap(),
                "{group}"
            );
        }
    }

    #[test]
    fn results_are_worker_count_independent() {
        for group in [g(&[6, 6]), g(&[3, 9]), g(&[2, 2, 4])] {
            let one = davenport_exact(&group, &Budget { workers: 1, ..Default::default() }).unwrap();
            let four = davenport_exact(&group, &Budget { workers: 4, ..Default::default() }).unwrap();
            assert_eq!(one.value, four.value);
            assert_eq!(one.witness, four.witness);
            assert_eq!(one.status, four.status);
        }
        let one = eta_exact(&g(&[4, 4]), &Budget { workers: 1, ..Default::default() }).unwrap();
        let four = eta_exact(&g(&[4, 4]), &Budget { workers: 4, ..Default::default() }).unwrap();
        assert_eq!(one.value, four.value);
        assert_eq!(one.witness, four.witness);
    }

    #[test]
    fn davenport_not_above_eta() {
        let b = Budget::default();
        for group in [g(&[4]), g(&[2, 2]), g(&[3, 3]), g(&[2, 4]), g(&[2, 2, 2])] {
            let d = davenport_exact(&group, &b).unwrap().value;
            let e = eta_exact(&group, &b).unwrap().value;
            assert!(d <= e, "{group}: D={d} eta={e}");
        }
    }

    #[test]
    fn budget_exhaustion_reports_lower_bound() {
        let out = davenport_exact(
            &g(&[6, 6]),
            &Budget {
                node_limit: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(out.status, SearchStatus::NodeCapped);
        assert!(out.value <= 11);

        let out = davenport_exact(
            &g(&[6, 6]),
            &Budget {
                time_limit: Some(Duration::ZERO),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(out.status, SearchStatus::Timeout);
    }

    #[test]
    fn caps_are_enforced() {
        let big = g(&[100]);
        assert!(matches!(
            davenport_exact(&big, &Budget::default()),
            Err(Error::OrderAboveCap { .. })
        ));
        assert!(matches!(
            davenport_exact(&big, &Budget { cap: Some(500), ..Default::default() }),
            Err(Error::CapNeedsAck { .. })
        ));
        assert!(davenport_exact(&big, &Budget { cap: Some(128), ..Default::default() }).is_ok());
        assert!(matches!(
            eta_exact(&g(&[33]), &Budget::default()),
            Err(Error::OrderAboveCap { .. })
        ));
    }
}
