//! Finite Abelian groups in invariant-factor form, their elements, and
//! multiset sequences over them.
//!
//! A group is stored as its canonical chain of invariant factors
//! `n_1 | n_2 | ... | n_r` with every factor at least 2; the trivial group is
//! the empty chain (rank 0, exponent 1). Elements are residue tuples with one
//! coordinate per factor, addressable by a dense mixed-radix index in
//! `[0, |G|)` so that solver bitsets over group elements are flat arrays of
//! `|G|` bits.
//!
//! All values here are immutable after construction and cheap to clone
//! (groups share their representation behind an `Arc`), so they can be moved
//! freely between solver workers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::arith;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct GroupRepr {
    factors: Vec<u64>,
    /// strides[i] = product of factors[..i]; the mixed-radix place values.
    strides: Vec<u64>,
    order: u64,
    exponent: u64,
}

/// A finite Abelian group `C_{n_1} + ... + C_{n_r}` with `n_1 | ... | n_r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    inner: Arc<GroupRepr>,
}

/// Reduce an arbitrary list of moduli to the invariant-factor chain of the
/// direct sum of the corresponding cyclic groups.
///
/// Ones are dropped, then any pair `(a, b)` violating divisibility is
/// replaced by `(gcd(a, b), lcm(a, b))` until the chain condition holds.
/// This is the diagonal special case of Smith normal form and is exact for
/// the small moduli this crate works with.
fn canonical_factors(moduli: &[u64]) -> Result<Vec<u64>> {
    if moduli.iter().any(|&m| m == 0) {
        return Err(Error::ZeroModulus);
    }
    let mut xs: Vec<u64> = moduli.iter().copied().filter(|&m| m > 1).collect();
    loop {
        xs.sort_unstable();
        let mut changed = false;
        'scan: for i in 0..xs.len() {
            for j in (i + 1)..xs.len() {
                if xs[j] % xs[i] != 0 {
                    let g = xs[i].gcd(&xs[j]);
                    let l = (xs[i] / g)
                        .checked_mul(xs[j])
                        .ok_or(Error::GroupTooLarge)?;
                    xs[i] = g;
                    xs[j] = l;
                    changed = true;
                    break 'scan;
                }
            }
        }
        if !changed {
            break;
        }
        xs.retain(|&x| x > 1);
    }
    xs.retain(|&x| x > 1);
    Ok(xs)
}

impl AbelianGroup {
    /// Build the group `C_{m_1} + ... + C_{m_k}` in canonical form.
    ///
    /// Any list of moduli `>= 1` is accepted; the result carries the unique
    /// invariant-factor chain of the direct sum.
    pub fn new(moduli: &[u64]) -> Result<Self> {
        let factors = canonical_factors(moduli)?;
        let mut strides = Vec::with_capacity(factors.len());
        let mut order: u64 = 1;
        for &f in &factors {
            strides.push(order);
            order = order.checked_mul(f).ok_or(Error::GroupTooLarge)?;
        }
        let exponent = factors.last().copied().unwrap_or(1);
        Ok(Self {
            inner: Arc::new(GroupRepr {
                factors,
                strides,
                order,
                exponent,
            }),
        })
    }

    /// The trivial group: empty factor list, order 1, exponent 1.
    pub fn trivial() -> Self {
        Self::new(&[]).expect("trivial group always constructible")
    }

    /// The homocyclic group `C_n^r`.
    pub fn homocyclic(n: u64, r: usize) -> Result<Self> {
        Self::new(&vec![n; r])
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.inner.factors
    }

    pub fn rank(&self) -> usize {
        self.inner.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn exponent(&self) -> u64 {
        self.inner.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.factors.is_empty()
    }

    /// True when |G| is 1 or a prime power.
    pub fn is_p_group(&self) -> bool {
        arith::is_prime_power_or_one(self.order())
    }

    /// Parse a group spec string: comma-separated moduli with optional `^k`
    /// repetition, e.g. `6^2` is `6,6`. The result is canonicalized.
    pub fn parse_spec(s: &str) -> Result<Self> {
        let mut moduli = Vec::new();
        for (pos, tok) in s.split(',').enumerate() {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(Error::Parse {
                    line: 1,
                    detail: format!("empty modulus at position {}", pos + 1),
                });
            }
            let (base, reps) = match tok.split_once('^') {
                Some((b, k)) => {
                    let reps: usize = k.trim().parse().map_err(|_| Error::Parse {
                        line: 1,
                        detail: format!("bad repetition count {k:?}"),
                    })?;
                    (b.trim(), reps)
                }
                None => (tok, 1),
            };
            if reps == 0 {
                return Err(Error::Parse {
                    line: 1,
                    detail: "repetition count must be >= 1".into(),
                });
            }
            let m: u64 = base.parse().map_err(|_| Error::Parse {
                line: 1,
                detail: format!("bad modulus {base:?}"),
            })?;
            if m == 0 {
                return Err(Error::ZeroModulus);
            }
            moduli.extend(std::iter::repeat(m).take(reps));
        }
        Self::new(&moduli)
    }

    /// Canonical spec string with `^k` runs, e.g. `2,2,12` prints as `2^2,12`.
    /// The trivial group prints as `1`.
    pub fn spec_string(&self) -> String {
        if self.is_trivial() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        let fs = &self.inner.factors;
        while i < fs.len() {
            let mut j = i;
            while j < fs.len() && fs[j] == fs[i] {
                j += 1;
            }
            if !out.is_empty() {
                out.push(',');
            }
            if j - i > 1 {
                out.push_str(&format!("{}^{}", fs[i], j - i));
            } else {
                out.push_str(&fs[i].to_string());
            }
            i = j;
        }
        out
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            residues: vec![0; self.rank()],
            index: 0,
        }
    }

    /// Element from a residue tuple; each residue must be below its factor.
    pub fn element(&self, residues: &[u64]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::InvalidElement {
                group: self.spec_string(),
                detail: format!(
                    "expected {} coordinates, got {}",
                    self.rank(),
                    residues.len()
                ),
            });
        }
        for (i, (&r, &f)) in residues.iter().zip(&self.inner.factors).enumerate() {
            if r >= f {
                return Err(Error::InvalidElement {
                    group: self.spec_string(),
                    detail: format!("coordinate {i} is {r}, must be < {f}"),
                });
            }
        }
        let index = residues
            .iter()
            .zip(&self.inner.strides)
            .map(|(&r, &s)| r * s)
            .sum();
        Ok(GroupElement {
            group: self.clone(),
            residues: residues.to_vec(),
            index,
        })
    }

    /// Element from its mixed-radix linear index in `[0, |G|)`.
    pub fn element_from_index(&self, index: u64) -> Result<GroupElement> {
        if index >= self.order() {
            return Err(Error::InvalidElement {
                group: self.spec_string(),
                detail: format!("index {index} out of range 0..{}", self.order()),
            });
        }
        let mut residues = Vec::with_capacity(self.rank());
        let mut rest = index;
        for &f in &self.inner.factors {
            residues.push(rest % f);
            rest /= f;
        }
        Ok(GroupElement {
            group: self.clone(),
            residues,
            index,
        })
    }

    /// Parse an element literal `(a,b,...)` in canonical coordinates.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                line: 1,
                detail: format!("element literal must be parenthesized: {t:?}"),
            })?;
        let mut residues = Vec::new();
        if !inner.trim().is_empty() {
            for part in inner.split(',') {
                let r: u64 = part.trim().parse().map_err(|_| Error::Parse {
                    line: 1,
                    detail: format!("bad coordinate {part:?}"),
                })?;
                residues.push(r);
            }
        }
        self.element(&residues)
    }

    fn check_member(&self, a: &GroupElement) -> Result<()> {
        if a.group != *self {
            return Err(Error::MismatchedGroups {
                left: self.spec_string(),
                right: a.group.spec_string(),
            });
        }
        Ok(())
    }

    /// Componentwise sum mod `n_i`.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        let residues: Vec<u64> = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.inner.factors)
            .map(|((&x, &y), &f)| (x + y) % f)
            .collect();
        self.element(&residues)
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_member(a)?;
        let residues: Vec<u64> = a
            .residues
            .iter()
            .zip(&self.inner.factors)
            .map(|(&x, &f)| if x == 0 { 0 } else { f - x })
            .collect();
        self.element(&residues)
    }

    /// Least `k >= 1` with `k * a = 0`: the lcm over coordinates of
    /// `n_i / gcd(a_i, n_i)`.
    pub fn order_of(&self, a: &GroupElement) -> Result<u64> {
        self.check_member(a)?;
        let mut ord: u64 = 1;
        for (&r, &f) in a.residues.iter().zip(&self.inner.factors) {
            ord = ord.lcm(&(f / r.gcd(&f)));
        }
        Ok(ord)
    }

    /// The subgroup `G_d` of elements of order dividing `d`, for `d | exp(G)`,
    /// together with its embedding into `G`.
    pub fn torsion_subgroup(&self, d: u64) -> Result<TorsionSubgroup> {
        if d == 0 || self.exponent() % d != 0 {
            return Err(Error::InvalidTorsionDivisor {
                d,
                exponent: self.exponent(),
            });
        }
        let mut sub_factors = Vec::new();
        let mut coords = Vec::new();
        let mut multipliers = Vec::new();
        for (i, &f) in self.inner.factors.iter().enumerate() {
            let t = f.gcd(&d);
            if t > 1 {
                sub_factors.push(t);
                coords.push(i);
                multipliers.push(f / t);
            }
        }
        // gcds of a divisibility chain are again a chain, so this does not
        // reorder and the coordinate maps stay aligned.
        let group = AbelianGroup::new(&sub_factors)?;
        debug_assert_eq!(group.invariant_factors(), sub_factors.as_slice());
        Ok(TorsionSubgroup {
            parent: self.clone(),
            divisor: d,
            group,
            coords,
            multipliers,
        })
    }

    /// The quotient `G / G_P` for `P = P(exp(G))` the greatest prime power of
    /// the exponent, with the coordinatewise reduction map.
    pub fn quotient_by_sylow(&self, p_power: u64) -> Result<SylowQuotient> {
        let expected = arith::greatest_prime_power(self.exponent())?;
        if p_power != expected {
            return Err(Error::NotGreatestPrimePower {
                given: p_power,
                expected,
            });
        }
        let mut q_factors = Vec::new();
        let mut coords = Vec::new();
        let mut moduli = Vec::new();
        for (i, &f) in self.inner.factors.iter().enumerate() {
            let m = f / f.gcd(&p_power);
            if m > 1 {
                q_factors.push(m);
                coords.push(i);
                moduli.push(m);
            }
        }
        let group = AbelianGroup::new(&q_factors)?;
        debug_assert_eq!(group.invariant_factors(), q_factors.as_slice());
        Ok(SylowQuotient {
            parent: self.clone(),
            p_power,
            group,
            coords,
            moduli,
        })
    }

    /// All elements in linear-index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element_from_index(i).expect("index in range"))
    }

    /// Every isomorphism class of Abelian group of order exactly `n`,
    /// in a deterministic order.
    pub fn enumerate_order(n: u64) -> Result<Vec<AbelianGroup>> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        let fact = arith::factorize(n)?;
        // One partition choice per prime: p^a splits as p^{a_1} + ... with
        // a_1 >= a_2 >= ...; groups of order n are products of these.
        let mut per_prime: Vec<Vec<Vec<u32>>> = Vec::new();
        for pp in fact.prime_powers() {
            per_prime.push(partitions(pp.alpha));
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; per_prime.len()];
        loop {
            let mut moduli = Vec::new();
            for (k, pp) in fact.prime_powers().iter().enumerate() {
                for &e in &per_prime[k][choice[k]] {
                    moduli.push(pp.prime.pow(e));
                }
            }
            out.push(AbelianGroup::new(&moduli)?);
            // odometer over partition choices
            let mut k = 0;
            loop {
                if k == per_prime.len() {
                    out.sort_by(|a, b| a.invariant_factors().cmp(b.invariant_factors()));
                    out.dedup();
                    return Ok(out);
                }
                choice[k] += 1;
                if choice[k] < per_prime[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    /// Every isomorphism class with order in `[1, max_order]`.
    pub fn enumerate_up_to(max_order: u64) -> Result<Vec<AbelianGroup>> {
        let mut out = Vec::new();
        for n in 1..=max_order {
            out.extend(Self::enumerate_order(n)?);
        }
        Ok(out)
    }
}

/// All partitions of `a` into non-increasing positive parts.
fn partitions(a: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(a, a, &mut Vec::new(), &mut out);
    out
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianGroup({})", self.spec_string())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

/// An element of an [`AbelianGroup`]: a residue tuple plus its cached
/// mixed-radix linear index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: AbelianGroup,
    residues: Vec<u64>,
    index: u64,
}

impl GroupElement {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn linear_index(&self) -> u64 {
        self.index
    }

    pub fn is_identity(&self) -> bool {
        self.index == 0
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.group.add(self, other)
    }

    pub fn neg(&self) -> Result<GroupElement> {
        self.group.neg(self)
    }

    pub fn order(&self) -> u64 {
        self.group.order_of(self).expect("element belongs to its group")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// The subgroup `G_d` of elements of order dividing `d`, presented abstractly
/// with the embedding that sends its `i`-th generator to
/// `(n_i / gcd(n_i, d)) * e_i` in the parent.
#[derive(Debug, Clone)]
pub struct TorsionSubgroup {
    parent: AbelianGroup,
    divisor: u64,
    group: AbelianGroup,
    coords: Vec<usize>,
    multipliers: Vec<u64>,
}

impl TorsionSubgroup {
    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn divisor(&self) -> u64 {
        self.divisor
    }

    /// The abstract group `+ C_{gcd(n_i, d)}`.
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Map an element of the abstract subgroup to its image in the parent.
    pub fn embed(&self, a: &GroupElement) -> Result<GroupElement> {
        if a.group() != &self.group {
            return Err(Error::MismatchedGroups {
                left: self.group.spec_string(),
                right: a.group().spec_string(),
            });
        }
        let mut residues = vec![0u64; self.parent.rank()];
        for ((&coord, &mult), &r) in self.coords.iter().zip(&self.multipliers).zip(a.residues()) {
            residues[coord] = r * mult;
        }
        self.parent.element(&residues)
    }

    /// Membership in the image: `a` lies in `G_d` iff `ord(a) | d`.
    pub fn contains(&self, a: &GroupElement) -> Result<bool> {
        self.parent.check_member(a)?;
        Ok(self.divisor % self.parent.order_of(a)? == 0)
    }
}

/// The quotient `G / G_P` with its coordinatewise reduction map; the kernel
/// of [`SylowQuotient::project`] is exactly `G_P`.
#[derive(Debug, Clone)]
pub struct SylowQuotient {
    parent: AbelianGroup,
    p_power: u64,
    group: AbelianGroup,
    coords: Vec<usize>,
    moduli: Vec<u64>,
}

impl SylowQuotient {
    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn p_power(&self) -> u64 {
        self.p_power
    }

    /// The abstract quotient `+ C_{n_i / gcd(n_i, P)}`.
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn project(&self, a: &GroupElement) -> Result<GroupElement> {
        self.parent.check_member(a)?;
        let residues: Vec<u64> = self
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| a.residues()[c] % m)
            .collect();
        self.group.element(&residues)
    }
}

/// A finite multiset of elements of one group, stored as
/// `linear index -> multiplicity` with a running length and sum.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupSequence {
    group: AbelianGroup,
    counts: BTreeMap<u64, u64>,
    len: u64,
    sum_residues: Vec<u64>,
}

impl GroupSequence {
    pub fn new(group: &AbelianGroup) -> Self {
        Self {
            group: group.clone(),
            counts: BTreeMap::new(),
            len: 0,
            sum_residues: vec![0; group.rank()],
        }
    }

    pub fn from_elements<'a, I>(group: &AbelianGroup, elems: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let mut s = Self::new(group);
        for e in elems {
            s.push(e, 1)?;
        }
        Ok(s)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn push(&mut self, elem: &GroupElement, multiplicity: u64) -> Result<()> {
        self.group.check_member(elem)?;
        self.push_index(elem.linear_index(), multiplicity)
    }

    pub fn push_index(&mut self, index: u64, multiplicity: u64) -> Result<()> {
        if index >= self.group.order() {
            return Err(Error::InvalidElement {
                group: self.group.spec_string(),
                detail: format!("index {index} out of range"),
            });
        }
        if multiplicity == 0 {
            return Ok(());
        }
        let elem = self.group.element_from_index(index)?;
        for ((s, &r), &f) in self
            .sum_residues
            .iter_mut()
            .zip(elem.residues())
            .zip(self.group.invariant_factors())
        {
            *s = (*s + (r % f) * (multiplicity % f)) % f;
        }
        *self.counts.entry(index).or_insert(0) += multiplicity;
        self.len += multiplicity;
        Ok(())
    }

    /// Remove `multiplicity` copies; errors if fewer are present.
    pub fn remove_index(&mut self, index: u64, multiplicity: u64) -> Result<()> {
        if multiplicity == 0 {
            return Ok(());
        }
        let have = self.counts.get(&index).copied().unwrap_or(0);
        if have < multiplicity {
            return Err(Error::InvalidElement {
                group: self.group.spec_string(),
                detail: format!(
                    "cannot remove {multiplicity} copies of index {index}; only {have} present"
                ),
            });
        }
        let elem = self.group.element_from_index(index)?;
        for ((s, &r), &f) in self
            .sum_residues
            .iter_mut()
            .zip(elem.residues())
            .zip(self.group.invariant_factors())
        {
            let sub = ((r % f) * (multiplicity % f)) % f;
            *s = (*s + f - sub) % f;
        }
        if have == multiplicity {
            self.counts.remove(&index);
        } else {
            self.counts.insert(index, have - multiplicity);
        }
        self.len -= multiplicity;
        Ok(())
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn distinct_len(&self) -> usize {
        self.counts.len()
    }

    pub fn multiplicity(&self, index: u64) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    /// `sigma(S)`: the sum of all members with multiplicity; the identity for
    /// the empty sequence.
    pub fn sum(&self) -> GroupElement {
        self.group
            .element(&self.sum_residues)
            .expect("running sum stays reduced")
    }

    /// `(index, multiplicity)` pairs in increasing index order.
    pub fn index_counts(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&i, &m)| (i, m))
    }

    /// `(element, multiplicity)` pairs in canonical (index) order.
    pub fn iter_elements(&self) -> impl Iterator<Item = (GroupElement, u64)> + '_ {
        self.counts.iter().map(move |(&i, &m)| {
            (
                self.group.element_from_index(i).expect("stored index valid"),
                m,
            )
        })
    }

    /// Expand to individual elements in canonical order (with repetition).
    pub fn expanded(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.len as usize);
        for (e, m) in self.iter_elements() {
            for _ in 0..m {
                out.push(e.clone());
            }
        }
        out
    }

    pub fn is_sub_multiset_of(&self, other: &GroupSequence) -> bool {
        self.group == other.group
            && self
                .counts
                .iter()
                .all(|(&i, &m)| other.multiplicity(i) >= m)
    }

    /// Union of multisets (adds multiplicities).
    pub fn union(&self, other: &GroupSequence) -> Result<GroupSequence> {
        if self.group != other.group {
            return Err(Error::MismatchedGroups {
                left: self.group.spec_string(),
                right: other.group.spec_string(),
            });
        }
        let mut out = self.clone();
        for (i, m) in other.index_counts() {
            out.push_index(i, m)?;
        }
        Ok(out)
    }
}

impl fmt::Debug for GroupSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSequence[{}; ", self.group.spec_string())?;
        for (k, (e, m)) in self.iter_elements().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}x{m}")?;
        }
        write!(f, "]")
    }
}
