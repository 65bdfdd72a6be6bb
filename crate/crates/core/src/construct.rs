//! The two explicit extremal sequences.
//!
//! Both constructions witness the corresponding lower bounds: the basis
//! sequence has no non-empty zero-sum subsequence, and the subset-sum
//! sequence over `C_n^r` has none of length at most `n`.

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupSequence};

/// Maximum rank accepted by [`eta_extremal`]; the construction enumerates
/// all 2^r - 1 non-empty subsets.
pub const ETA_EXTREMAL_MAX_RANK: u32 = 20;

/// `n_i - 1` copies of each basis element `e_i`: a zero-sum-free sequence of
/// length `sum(n_i - 1)`, one short of the Davenport lower bound.
pub fn davenport_extremal(group: &AbelianGroup) -> GroupSequence {
    let mut s = GroupSequence::new(group);
    let mut residues = vec![0u64; group.rank()];
    for (i, &f) in group.invariant_factors().iter().enumerate() {
        residues[i] = 1;
        let e = group.element(&residues).expect("basis element valid");
        residues[i] = 0;
        s.push(&e, f - 1).expect("basis element belongs to group");
    }
    s
}

/// `n - 1` copies of `sum(e_i, i in I)` for each non-empty subset `I` of the
/// coordinates of `C_n^r`: a sequence of length `(2^r - 1)(n - 1)` with no
/// non-empty zero-sum subsequence of length at most `n`.
///
/// Subsets are enumerated in binary-counter order then stored as a multiset,
/// so the result is deterministic.
pub fn eta_extremal(r: u32, n: u64) -> Result<GroupSequence> {
    if r == 0 || n < 2 {
        return Err(Error::ZeroArgument);
    }
    if r > ETA_EXTREMAL_MAX_RANK {
        return Err(Error::RankTooLarge {
            group: format!("{n}^{r}"),
            rank: r as usize,
            max: ETA_EXTREMAL_MAX_RANK as usize,
        });
    }
    let group = AbelianGroup::homocyclic(n, r as usize)?;
    let mut s = GroupSequence::new(&group);
    let mut residues = vec![0u64; r as usize];
    for mask in 1u64..(1 << r) {
        for (i, slot) in residues.iter_mut().enumerate() {
            *slot = (mask >> i) & 1;
        }
        let e = group.element(&residues)?;
        s.push(&e, n - 1)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{verify_short_zero_sum_free, verify_zero_sum_free, Budget};

    fn g(moduli: &[u64]) -> AbelianGroup {
        AbelianGroup::new(moduli).unwrap()
    }

    #[test]
    fn davenport_extremal_examples() {
        let c6sq = g(&[6, 6]);
        let s = davenport_extremal(&c6sq);
        assert_eq!(s.len(), 10);
        assert_eq!(s.multiplicity(c6sq.element(&[1, 0]).unwrap().linear_index()), 5);
        assert_eq!(s.multiplicity(c6sq.element(&[0, 1]).unwrap().linear_index()), 5);

        assert!(davenport_extremal(&AbelianGroup::trivial()).is_empty());

        let s = davenport_extremal(&g(&[2, 2, 2]));
        assert_eq!(s.len(), 3);
        assert_eq!(s.distinct_len(), 3);
    }

    #[test]
    fn davenport_extremal_length_formula() {
        for group in [g(&[4]), g(&[2, 12]), g(&[3, 3, 9]), g(&[2, 2, 4, 4])] {
            let expect: u64 = group.invariant_factors().iter().map(|f| f - 1).sum();
            assert_eq!(davenport_extremal(&group).len(), expect);
        }
    }

    #[test]
    fn eta_extremal_examples() {
        let s = eta_extremal(2, 3).unwrap();
        assert_eq!(s.len(), 6);
        let group = s.group().clone();
        for residues in [[1u64, 0], [0, 1], [1, 1]] {
            let idx = group.element(&residues).unwrap().linear_index();
            assert_eq!(s.multiplicity(idx), 2);
        }

        let s = eta_extremal(1, 7).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.distinct_len(), 1);

        let s = eta_extremal(3, 2).unwrap();
        assert_eq!(s.len(), 7);
        assert_eq!(s.distinct_len(), 7);
        assert!(s.iter_elements().all(|(_, m)| m == 1));
    }

    #[test]
    fn eta_extremal_length_formula() {
        for (r, n) in [(1u32, 5u64), (2, 4), (3, 3), (4, 2)] {
            let s = eta_extremal(r, n).unwrap();
            assert_eq!(s.len(), ((1u64 << r) - 1) * (n - 1));
        }
    }

    #[test]
    fn eta_extremal_rejects_bad_input() {
        assert!(eta_extremal(0, 3).is_err());
        assert!(eta_extremal(2, 1).is_err());
        assert!(matches!(
            eta_extremal(21, 2),
            Err(Error::RankTooLarge { .. })
        ));
    }

    #[test]
    fn constructions_are_pattern_free_at_desk_scale() {
        let budget = Budget::default();
        for group in AbelianGroup::enumerate_up_to(36).unwrap() {
            let s = davenport_extremal(&group);
            assert!(verify_zero_sum_free(&s, &budget).unwrap(), "{group}");
        }
        for (r, n) in [(1u32, 6u64), (2, 3), (2, 4), (3, 2), (3, 3)] {
            let s = eta_extremal(r, n).unwrap();
            assert!(
                verify_short_zero_sum_free(&s, n, &budget).unwrap(),
                "r={r} n={n}"
            );
        }
    }
}
