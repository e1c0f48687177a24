//! Permissible-set combinatorics.
//!
//! A finite set A of positive integers is permissible when
//! 2 <= |A| <= min A + 1; it is permissible-maximal when |A| = min A + 1.

use crate::error::{Error, Result};
use crate::sparse::IndexSet;

pub fn is_permissible(a: &IndexSet) -> Result<bool> {
    let Some(min) = a.min() else {
        return Err(Error::invalid("empty set has no permissibility status"));
    };
    Ok(a.len() >= 2 && a.len() <= min + 1)
}

pub fn is_permissible_maximal(a: &IndexSet) -> Result<bool> {
    let Some(min) = a.min() else {
        return Err(Error::invalid("empty set has no permissibility status"));
    };
    Ok(a.len() >= 2 && a.len() == min + 1)
}

/// All permissible (resp. permissible-maximal) subsets of [1, bound],
/// in lexicographic order on element lists.
pub fn enumerate_permissible(bound: usize, maximal_only: bool) -> Result<Vec<IndexSet>> {
    if bound < 2 {
        return Err(Error::invalid(format!(
            "enumeration bound must be at least 2, got {bound}"
        )));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    for first in 1..=bound {
        prefix.push(first);
        extend(&mut prefix, bound, first + 1, maximal_only, &mut out);
        prefix.pop();
    }
    Ok(out)
}

// Preorder DFS over increasing extensions emits sets in lexicographic order.
fn extend(
    prefix: &mut Vec<usize>,
    bound: usize,
    from: usize,
    maximal_only: bool,
    out: &mut Vec<IndexSet>,
) {
    let min = prefix[0];
    if prefix.len() >= 2 && (!maximal_only || prefix.len() == min + 1) {
        out.push(IndexSet::new(prefix.clone()).expect("prefix is strictly increasing"));
    }
    if prefix.len() == min + 1 {
        return;
    }
    for next in from..=bound {
        prefix.push(next);
        extend(prefix, bound, next + 1, maximal_only, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn permissibility_examples() {
        assert!(is_permissible(&set(&[1, 2])).unwrap());
        assert!(!is_permissible(&set(&[1, 2, 3])).unwrap());
        assert!(is_permissible(&set(&[3, 5, 9, 11])).unwrap());
        assert!(is_permissible(&IndexSet::new(vec![]).unwrap()).is_err());
    }

    #[test]
    fn maximality_boundary() {
        assert!(is_permissible_maximal(&set(&[1, 2])).unwrap());
        assert!(is_permissible_maximal(&set(&[2, 4, 7])).unwrap());
        // |A| = min A exactly: permissible but not maximal.
        assert!(!is_permissible_maximal(&set(&[3, 5, 9])).unwrap());
        assert!(is_permissible(&set(&[3, 5, 9])).unwrap());
        // |A| = min A + 1 exactly: maximal.
        assert!(is_permissible_maximal(&set(&[3, 5, 9, 11])).unwrap());
        assert!(is_permissible_maximal(&IndexSet::new(vec![]).unwrap()).is_err());
    }

    #[test]
    fn enumeration_small_bounds() {
        assert_eq!(enumerate_permissible(2, false).unwrap(), vec![set(&[1, 2])]);
        assert_eq!(
            enumerate_permissible(3, false).unwrap(),
            vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]
        );
        assert_eq!(
            enumerate_permissible(4, true).unwrap(),
            vec![set(&[1, 2]), set(&[1, 3]), set(&[1, 4]), set(&[2, 3, 4])]
        );
        assert!(enumerate_permissible(1, false).is_err());
    }

    #[test]
    fn enumeration_matches_exhaustive_subset_scan() {
        for bound in 2..=8usize {
            for maximal in [false, true] {
                let fast = enumerate_permissible(bound, maximal).unwrap();
                let mut slow = Vec::new();
                for mask in 1u32..(1 << bound) {
                    let elems: Vec<usize> = (1..=bound).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                    let s = IndexSet::new(elems).unwrap();
                    let keep = if maximal {
                        is_permissible_maximal(&s).unwrap()
                    } else {
                        is_permissible(&s).unwrap()
                    };
                    if keep {
                        slow.push(s);
                    }
                }
                slow.sort_by(|a, b| a.elems().cmp(b.elems()));
                let mut fast_sorted = fast.clone();
                fast_sorted.sort_by(|a, b| a.elems().cmp(b.elems()));
                assert_eq!(fast_sorted, slow, "bound={bound} maximal={maximal}");
                // lexicographic emission order
                let mut lex = fast.clone();
                lex.sort_by(|a, b| a.elems().cmp(b.elems()));
                assert_eq!(fast, lex);
            }
        }
    }

    #[test]
    fn maximal_sets_admit_no_one_element_extension() {
        let bound = 7;
        for a in enumerate_permissible(bound, true).unwrap() {
            for extra in 1..=bound + 1 {
                if a.contains(extra) {
                    continue;
                }
                let mut elems = a.elems().to_vec();
                elems.push(extra);
                elems.sort();
                let bigger = IndexSet::new(elems).unwrap();
                if bigger.min() == a.min() {
                    assert!(
                        !is_permissible(&bigger).unwrap(),
                        "{a} extended by {extra} stayed permissible"
                    );
                }
            }
        }
    }

    #[test]
    fn count_monotone_in_bound() {
        let mut prev = 0;
        for bound in 2..=10 {
            let n = enumerate_permissible(bound, false).unwrap().len();
            assert!(n >= prev);
            prev = n;
        }
    }
}
