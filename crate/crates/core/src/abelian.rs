//! Enumeration of abelian Borel-stable subspaces of `p`.
//!
//! Candidate subspaces are spanned by nonzero-weight vectors of `p`
//! (each such weight space is one-dimensional for the supported
//! involutions, which is asserted at pair construction). Stability is
//! checked through the structure constants, not through weight
//! combinatorics alone: raising a subspace member into the zero weight
//! space of `p` — possible in the switch case, where `[e_beta, p_{-beta}]`
//! is a Cartan direction — must fail the check, and does.
//!
//! Enumeration is a DFS in decreasing weight height, so every raising
//! target of a weight has already been decided when the weight itself is
//! considered; subtrees that lose abelianity or stability are pruned.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::json;

use crate::pair::{Origin, SymmetricPair};
use crate::rat::{fmt_rat, is_zero_vec, Rat, RatVector};

/// Outcome of raising one `p` weight vector by one positive root of `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Raise {
    /// The bracket vanishes identically.
    Zero,
    /// The bracket is a multiple of the `p` basis vector with this index.
    To(usize),
    /// The bracket lands in the zero weight space of `p`.
    ToZeroWeight,
}

/// The nonzero-weight skeleton of `p`, with the raising graph.
#[derive(Debug, Clone)]
pub struct WeightPoset {
    /// `p`-basis indices of the nonzero weights, in decreasing height.
    pub order: Vec<usize>,
    /// `raises[i][b]`: effect of the `b`-th positive root of `k` on
    /// `order[i]`.
    raises: Vec<Vec<Raise>>,
}

/// An enumerated abelian Borel-stable subspace. The `p` basis indices
/// double as the wedge monomial generating it in exterior degree `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianSubspace {
    /// Ascending `p`-basis indices of the spanning weight vectors.
    pub p_indices: Vec<usize>,
}

impl AbelianSubspace {
    pub fn dim(&self) -> usize {
        self.p_indices.len()
    }

    pub fn weights<'a>(&self, sp: &'a SymmetricPair) -> Vec<&'a RatVector> {
        self.p_indices.iter().map(|&i| &sp.p_weights[i]).collect()
    }

    /// The sum of the weights: the finite part of the matched affine
    /// weight.
    pub fn mu(&self, sp: &SymmetricPair) -> RatVector {
        let mut mu = vec![Rat::zero(); sp.rank_k()];
        for &i in &self.p_indices {
            for (slot, v) in sp.p_weights[i].iter().enumerate() {
                mu[slot] += v;
            }
        }
        mu
    }
}

fn signed_height(sp: &SymmetricPair, origin: Origin) -> i64 {
    match origin {
        Origin::Root {
            pos_index,
            positive,
        } => {
            let h: i64 = sp.g.rs.positive_roots[pos_index].iter().sum();
            if positive {
                h
            } else {
                -h
            }
        }
        Origin::Cartan(_) => 0,
    }
}

pub fn weight_poset(sp: &SymmetricPair) -> WeightPoset {
    let mut order: Vec<usize> = (0..sp.dim_p())
        .filter(|&i| !is_zero_vec(&sp.p_weights[i]))
        .collect();
    order.sort_by_key(|&i| (-signed_height(sp, sp.p_origin[i]), i));
    let weight_index: BTreeMap<RatVector, usize> = order
        .iter()
        .map(|&i| (sp.p_weights[i].clone(), i))
        .collect();
    let raises = order
        .iter()
        .map(|&alpha| {
            sp.delta0_pos
                .iter()
                .map(|&beta| {
                    let br = sp.bracket_kp(beta, alpha);
                    if br.is_empty() {
                        return Raise::Zero;
                    }
                    let mut target = sp.k_weights[beta].clone();
                    for (slot, v) in sp.p_weights[alpha].iter().enumerate() {
                        target[slot] += v;
                    }
                    if is_zero_vec(&target) {
                        Raise::ToZeroWeight
                    } else {
                        Raise::To(*weight_index.get(&target).expect("raising target weight"))
                    }
                })
                .collect()
        })
        .collect();
    WeightPoset { order, raises }
}

/// `[p_alpha, p_beta] = 0` for all pairs from the subset (indices into
/// the `p` basis).
pub fn is_abelian(sp: &SymmetricPair, subset: &[usize]) -> bool {
    subset.iter().all(|&a| {
        subset
            .iter()
            .all(|&b| sp.bracket_pp(a, b).is_empty() || a == b)
    })
}

/// Stability of the span under the Borel of `k`: every nonvanishing
/// raising of a member must land on a member. Raising into the zero
/// weight space can never land in the span.
pub fn is_b0_stable(sp: &SymmetricPair, subset: &[usize]) -> bool {
    let poset = weight_poset(sp);
    subset.iter().all(|&alpha| {
        let pos = poset
            .order
            .iter()
            .position(|&i| i == alpha)
            .expect("subset must consist of nonzero weights");
        poset.raises[pos].iter().all(|r| match r {
            Raise::Zero => true,
            Raise::ToZeroWeight => false,
            Raise::To(t) => subset.contains(t),
        })
    })
}

/// Exhaustive list of abelian Borel-stable subspaces, every dimension,
/// ordered by dimension then lexicographically on the index sets.
pub fn enumerate_abelian_bstable(sp: &SymmetricPair) -> Vec<AbelianSubspace> {
    let poset = weight_poset(sp);
    let mut results: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();

    fn dfs(
        sp: &SymmetricPair,
        poset: &WeightPoset,
        step: usize,
        current: &mut Vec<usize>,
        results: &mut Vec<Vec<usize>>,
    ) {
        if step == poset.order.len() {
            results.push(current.clone());
            return;
        }
        let candidate = poset.order[step];
        // include iff stability and abelianity survive; targets of every
        // raising have strictly larger height, hence were decided earlier
        let stable = poset.raises[step].iter().all(|r| match r {
            Raise::Zero => true,
            Raise::ToZeroWeight => false,
            Raise::To(t) => current.contains(t),
        });
        let abelian = current
            .iter()
            .all(|&b| sp.bracket_pp(candidate, b).is_empty())
            && sp.bracket_pp(candidate, candidate).is_empty();
        if stable && abelian {
            current.push(candidate);
            dfs(sp, poset, step + 1, current, results);
            current.pop();
        }
        dfs(sp, poset, step + 1, current, results);
    }
    dfs(sp, &poset, 0, &mut current, &mut results);

    let mut out: Vec<AbelianSubspace> = results
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            AbelianSubspace { p_indices: v }
        })
        .collect();
    out.sort_by(|a, b| {
        a.dim()
            .cmp(&b.dim())
            .then_with(|| a.p_indices.cmp(&b.p_indices))
    });
    out
}

/// Does an abelian (Borel-stable) subspace of dimension `p` exist?
/// Existence of any abelian subspace of that dimension is equivalent by
/// the verified eigenvalue/Weyl correspondence, so the enumerated
/// Borel-stable ones witness it.
pub fn max_abelian_dimension(sp: &SymmetricPair, p: usize) -> bool {
    enumerate_abelian_bstable(sp).iter().any(|a| a.dim() == p)
}

/// JSON array of the enumerated subspaces: dimension, weights and the
/// weight sum `mu`.
pub fn abelian_json(sp: &SymmetricPair, list: &[AbelianSubspace]) -> serde_json::Value {
    serde_json::Value::Array(
        list.iter()
            .map(|a| {
                let weights: Vec<serde_json::Value> = a
                    .weights(sp)
                    .iter()
                    .map(|w| {
                        serde_json::Value::Array(w.iter().map(|x| fmt_rat(x).into()).collect())
                    })
                    .collect();
                let mu: Vec<serde_json::Value> =
                    a.mu(sp).iter().map(|x| fmt_rat(x).into()).collect();
                json!({
                    "dim": a.dim(),
                    "weights": weights,
                    "mu": mu,
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::ExtComplex;
    use crate::pair::{build_pair, PairSpec};

    fn pair(s: &str) -> SymmetricPair {
        build_pair(&PairSpec::parse(s).unwrap()).unwrap()
    }

    /// index of the p-basis vector with the given signed ambient root
    fn p_index_of_root(sp: &SymmetricPair, pos_index: usize, positive: bool) -> usize {
        (0..sp.dim_p())
            .find(|&i| {
                sp.p_origin[i]
                    == Origin::Root {
                        pos_index,
                        positive,
                    }
            })
            .unwrap()
    }

    fn highest_first_factor_root(sp: &SymmetricPair) -> usize {
        let rs = &sp.g.rs;
        let n = sp.spec.base.rank();
        (0..rs.num_positive())
            .filter(|&i| rs.positive_roots[i][..n].iter().any(|&c| c != 0))
            .max_by_key(|&i| rs.positive_roots[i].iter().sum::<i64>())
            .unwrap()
    }

    fn first_factor_simple_root(sp: &SymmetricPair) -> usize {
        let rs = &sp.g.rs;
        let n = sp.spec.base.rank();
        (0..rs.num_positive())
            .find(|&i| {
                rs.positive_roots[i][..n].iter().sum::<i64>() == 1
                    && rs.positive_roots[i].iter().sum::<i64>() == 1
            })
            .unwrap()
    }

    #[test]
    fn empty_subset_is_abelian_and_stable() {
        let sp = pair("A1:switch");
        assert!(is_abelian(&sp, &[]));
        assert!(is_b0_stable(&sp, &[]));
    }

    #[test]
    fn inner_a1_opposite_roots_not_abelian() {
        let sp = pair("A1:signs=-");
        // p = span{e, f}: [e, f] = h != 0
        assert!(!is_abelian(&sp, &[0, 1]));
        assert!(is_abelian(&sp, &[0]));
        assert!(is_abelian(&sp, &[1]));
        // Delta_0^+ is empty: everything is stable
        assert!(is_b0_stable(&sp, &[0, 1]));
    }

    #[test]
    fn switch_a2_stability_examples() {
        let sp = pair("A2:switch");
        let theta = p_index_of_root(&sp, highest_first_factor_root(&sp), true);
        assert!(is_b0_stable(&sp, &[theta]));
        // a simple root alone escapes upward
        let simple = p_index_of_root(&sp, first_factor_simple_root(&sp), true);
        assert!(!is_b0_stable(&sp, &[simple]));
    }

    #[test]
    fn switch_a1_enumeration_is_peterson() {
        let sp = pair("A1:switch");
        let list = enumerate_abelian_bstable(&sp);
        assert_eq!(list.len(), 2); // 2^1
        assert_eq!(list[0].dim(), 0);
        assert_eq!(list[1].dim(), 1);
        // the nontrivial one is the positive root space, not the negative
        let idx = list[1].p_indices[0];
        assert!(matches!(
            sp.p_origin[idx],
            Origin::Root { positive: true, .. }
        ));
    }

    #[test]
    fn switch_a2_count_is_four() {
        let sp = pair("A2:switch");
        let list = enumerate_abelian_bstable(&sp);
        assert_eq!(list.len(), 4); // 2^2
        let dims: Vec<usize> = list.iter().map(|a| a.dim()).collect();
        assert_eq!(dims, vec![0, 1, 2, 2]);
    }

    #[test]
    fn inner_a1_count_is_three() {
        // brute force over all 4 subsets: {}, {e}, {f} pass; {e,f} fails
        let sp = pair("A1:signs=-");
        let list = enumerate_abelian_bstable(&sp);
        assert_eq!(list.len(), 3);
    }

    #[test]
    fn enumerated_subspaces_recheck_independently() {
        for s in ["A1:switch", "A2:switch", "A1:signs=-", "B2:signs=--"] {
            let sp = pair(s);
            for a in enumerate_abelian_bstable(&sp) {
                assert!(is_abelian(&sp, &a.p_indices), "{s}");
                assert!(is_b0_stable(&sp, &a.p_indices), "{s}");
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force_over_basis_subsets() {
        // independent oracle, including subsets with Cartan directions:
        // a subset of p-basis vectors spans an abelian b0-stable space
        // iff all pairwise brackets vanish and every bracket with a
        // Borel root vector stays supported inside the subset
        for s in ["A1:switch", "A1:signs=-", "A2:switch"] {
            let sp = pair(s);
            let dim_p = sp.dim_p();
            let mut count = 0usize;
            for mask in 0u32..(1 << dim_p) {
                let subset: Vec<usize> = (0..dim_p).filter(|&i| mask & (1 << i) != 0).collect();
                let abelian = subset
                    .iter()
                    .all(|&a| subset.iter().all(|&b| sp.bracket_pp(a, b).is_empty()));
                let stable = subset.iter().all(|&a| {
                    sp.delta0_pos.iter().all(|&beta| {
                        sp.bracket_kp(beta, a)
                            .iter()
                            .all(|(t, _)| subset.contains(t))
                    })
                });
                if abelian && stable {
                    count += 1;
                }
            }
            let enumerated = enumerate_abelian_bstable(&sp).len();
            assert_eq!(count, enumerated, "{s}");
        }
    }

    #[test]
    fn monotonicity_of_enumeration() {
        // adding any weight and closing upward either breaks abelianity
        // or produces another enumerated subspace
        let sp = pair("A2:switch");
        let poset = weight_poset(&sp);
        let list = enumerate_abelian_bstable(&sp);
        let sets: Vec<Vec<usize>> = list.iter().map(|a| a.p_indices.clone()).collect();
        for a in &list {
            for &extra in &poset.order {
                if a.p_indices.contains(&extra) {
                    continue;
                }
                let mut closure: Vec<usize> = a.p_indices.clone();
                closure.push(extra);
                loop {
                    let mut grew = false;
                    for pos in 0..poset.order.len() {
                        let idx = poset.order[pos];
                        if !closure.contains(&idx) {
                            continue;
                        }
                        for r in &poset.raises[pos] {
                            if let Raise::To(t) = r {
                                if !closure.contains(t) {
                                    closure.push(*t);
                                    grew = true;
                                }
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                closure.sort_unstable();
                if is_abelian(&sp, &closure) && is_b0_stable(&sp, &closure) {
                    assert!(sets.contains(&closure));
                }
            }
        }
    }

    #[test]
    fn boundary_kills_enumerated_generators() {
        // d_p(v with every factor at energy -1/2) = 0 for every
        // enumerated subspace
        for s in ["A1:switch", "A2:switch", "A1:signs=-"] {
            let sp = pair(s);
            let mut cx = ExtComplex::new(&sp);
            for a in enumerate_abelian_bstable(&sp) {
                let p = a.dim();
                if p == 0 {
                    continue;
                }
                let space = cx.space(p, p as i64);
                let mono = crate::ext::ExtMonomial(
                    a.p_indices
                        .iter()
                        .map(|&i| crate::ext::LoopVector::new(-1, crate::ext::Space::P, i))
                        .collect(),
                );
                let col = space.index_of(&mono).unwrap();
                let d = cx.boundary(p, p as i64);
                assert!(d.column(col).iter().all(|x| x.is_zero()), "{s}");
            }
        }
    }

    #[test]
    fn max_abelian_dimension_examples() {
        let sp = pair("A1:switch");
        assert!(max_abelian_dimension(&sp, 0));
        assert!(max_abelian_dimension(&sp, 1));
        assert!(!max_abelian_dimension(&sp, 2));
        let sp = pair("A2:switch");
        assert!(max_abelian_dimension(&sp, 2));
        assert!(!max_abelian_dimension(&sp, 3));
    }

    #[test]
    fn json_shape() {
        let sp = pair("A1:switch");
        let list = enumerate_abelian_bstable(&sp);
        let v = abelian_json(&sp, &list);
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr[1]["dim"], 1);
        assert_eq!(arr[1]["mu"].as_array().unwrap()[0], "2");
    }
}
