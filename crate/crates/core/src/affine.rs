//! The affine root system and Weyl group of the twisted loop algebra.
//!
//! Weights live in coordinates `(finite part on h0*, delta coefficient,
//! Lambda0 coefficient)` with the pairing
//! `(m + a d + b L, m' + a' d + b' L) = (m, m')_0 + a b' + a' b`,
//! the finite form being induced by the ambient Killing form. Real roots
//! are `s d + w` with `w` a nonzero `k`-weight for integer `s` (positive
//! roots of `k` at `s = 0`) and a nonzero `p`-weight for half-odd `s`;
//! imaginary roots `s d` exist at every nonzero integer `s` and, when
//! `p` has a zero weight space (the switch case), at half-odd `s` too.
//!
//! Simple roots are computed as the indecomposable positive roots, not
//! transcribed from tables; the count `n + 1` is asserted.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::abelian::AbelianSubspace;
use crate::pair::SymmetricPair;
use crate::rat::{is_zero_vec, rat, rat_int, Rat, RatVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AffineError {
    #[error("reflection in an isotropic root")]
    IsotropicRoot,
    #[error("word is not reduced")]
    NonReducedWord,
    #[error("inversion-set peeling stalled")]
    PeelingStalled,
    #[error("root beyond the configured d-bound")]
    BeyondBound,
}

/// An element of the dual of the affine Cartan, in
/// `(finite, delta, Lambda0)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffineWeight {
    pub finite: RatVector,
    pub delta: Rat,
    pub lambda0: Rat,
}

impl AffineWeight {
    pub fn zero(rank: usize) -> Self {
        Self {
            finite: vec![Rat::zero(); rank],
            delta: Rat::zero(),
            lambda0: Rat::zero(),
        }
    }

    pub fn finite_root(finite: RatVector) -> Self {
        Self {
            finite,
            delta: Rat::zero(),
            lambda0: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.finite) && self.delta.is_zero() && self.lambda0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            finite: self
                .finite
                .iter()
                .zip(&other.finite)
                .map(|(a, b)| a + b)
                .collect(),
            delta: &self.delta + &other.delta,
            lambda0: &self.lambda0 + &other.lambda0,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            finite: self
                .finite
                .iter()
                .zip(&other.finite)
                .map(|(a, b)| a - b)
                .collect(),
            delta: &self.delta - &other.delta,
            lambda0: &self.lambda0 - &other.lambda0,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            finite: self.finite.iter().map(|a| a * c).collect(),
            delta: &self.delta * c,
            lambda0: &self.lambda0 * c,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }
}

/// A word in the simple reflections of the affine Weyl group; letters
/// index into [`AffineRoots::simple`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The affine root data of a pair, up to a `d`-value bound.
#[derive(Debug, Clone)]
pub struct AffineRoots<'a> {
    pub sp: &'a SymmetricPair,
    pub twice_d_bound: i64,
    /// Positive real roots with `0 <= s <= bound`.
    pub positive_real: Vec<AffineWeight>,
    /// Positive imaginary roots `s d` (with multiplicity) up to the bound.
    pub positive_imaginary: Vec<(AffineWeight, usize)>,
    /// The simple roots, sorted by `(delta, finite)`.
    pub simple: Vec<AffineWeight>,
    k_weight_set: Vec<RatVector>,
    k_pos_set: Vec<RatVector>,
    p_weight_set: Vec<RatVector>,
}

pub fn build_affine_roots(sp: &SymmetricPair, twice_d_bound: i64) -> AffineRoots<'_> {
    assert!(twice_d_bound >= 2, "d-bound must be at least 1");
    let rank = sp.rank_k();
    let k_pos_set: Vec<RatVector> = sp
        .delta0_pos
        .iter()
        .map(|&i| sp.k_weights[i].clone())
        .collect();
    let mut k_weight_set: Vec<RatVector> = sp
        .k_weights
        .iter()
        .filter(|w| !is_zero_vec(w))
        .cloned()
        .collect();
    k_weight_set.sort();
    k_weight_set.dedup();
    let mut p_weight_set: Vec<RatVector> = sp
        .p_weights
        .iter()
        .filter(|w| !is_zero_vec(w))
        .cloned()
        .collect();
    p_weight_set.sort();
    p_weight_set.dedup();
    let p_zero_mult = sp.p_weights.iter().filter(|w| is_zero_vec(w)).count();
    let k_zero_mult = rank; // the Cartan of k

    let mut positive_real: Vec<AffineWeight> = Vec::new();
    for w in &k_pos_set {
        positive_real.push(AffineWeight::finite_root(w.clone()));
    }
    for ts in 1..=twice_d_bound {
        let s = rat(ts, 2);
        let source = if ts % 2 == 0 {
            &k_weight_set
        } else {
            &p_weight_set
        };
        for w in source {
            positive_real.push(AffineWeight {
                finite: w.clone(),
                delta: s.clone(),
                lambda0: Rat::zero(),
            });
        }
    }
    positive_real.sort();

    let mut positive_imaginary: Vec<(AffineWeight, usize)> = Vec::new();
    for ts in 1..=twice_d_bound {
        let mult = if ts % 2 == 0 {
            k_zero_mult
        } else {
            p_zero_mult
        };
        if mult > 0 {
            positive_imaginary.push((
                AffineWeight {
                    finite: vec![Rat::zero(); rank],
                    delta: rat(ts, 2),
                    lambda0: Rat::zero(),
                },
                mult,
            ));
        }
    }

    // indecomposables among all positive roots (imaginary ones included
    // as potential summands)
    let mut all_positive: Vec<AffineWeight> = positive_real.clone();
    all_positive.extend(positive_imaginary.iter().map(|(w, _)| w.clone()));
    let member: BTreeMap<AffineWeight, ()> =
        all_positive.iter().cloned().map(|w| (w, ())).collect();
    let mut simple: Vec<AffineWeight> = Vec::new();
    for gamma in &positive_real {
        let decomposable = all_positive.iter().any(|x| {
            if x == gamma {
                return false;
            }
            let y = gamma.sub(x);
            !y.is_zero() && member.contains_key(&y)
        });
        if !decomposable {
            simple.push(gamma.clone());
        }
    }
    // imaginary roots must all decompose for the supported pairs
    for (im, _) in &positive_imaginary {
        let decomposable = all_positive.iter().any(|x| {
            if x == im {
                return false;
            }
            let y = im.sub(x);
            !y.is_zero() && member.contains_key(&y)
        });
        assert!(decomposable, "imaginary root is indecomposable");
    }
    simple.sort_by(|a, b| a.delta.cmp(&b.delta).then_with(|| a.finite.cmp(&b.finite)));
    assert_eq!(
        simple.len(),
        rank + 1,
        "expected n+1 simple roots, found {}",
        simple.len()
    );

    AffineRoots {
        sp,
        twice_d_bound,
        positive_real,
        positive_imaginary,
        simple,
        k_weight_set,
        k_pos_set,
        p_weight_set,
    }
}

impl<'a> AffineRoots<'a> {
    /// The invariant pairing on affine weights.
    pub fn form(&self, a: &AffineWeight, b: &AffineWeight) -> Rat {
        self.sp.weight_form(&a.finite, &b.finite) + &a.delta * &b.lambda0 + &b.delta * &a.lambda0
    }

    /// `lambda(alpha^vee) = 2 (lambda, alpha) / (alpha, alpha)`.
    pub fn coroot_pairing(&self, lambda: &AffineWeight, alpha: &AffineWeight) -> Rat {
        let norm = self.form(alpha, alpha);
        assert!(!norm.is_zero(), "coroot of isotropic root");
        rat_int(2) * self.form(lambda, alpha) / norm
    }

    /// `rho = Lambda0/2 + rho0`, the affine Weyl vector.
    pub fn rho(&self) -> AffineWeight {
        AffineWeight {
            finite: self.sp.rho0.clone(),
            delta: Rat::zero(),
            lambda0: rat(1, 2),
        }
    }

    /// Is this a real root (of either sign)?
    pub fn is_real_root(&self, w: &AffineWeight) -> bool {
        if !w.lambda0.is_zero() {
            return false;
        }
        let twice_s = &w.delta * rat_int(2);
        if !twice_s.denom().is_one() {
            return false;
        }
        let parity_even = (twice_s.numer() % 2i32).is_zero();
        let finite = &w.finite;
        if is_zero_vec(finite) {
            return false;
        }
        if parity_even {
            self.k_weight_set.binary_search(finite).is_ok()
        } else {
            self.p_weight_set.binary_search(finite).is_ok()
        }
    }

    /// Positivity of a real root: `s > 0`, or `s = 0` with the finite
    /// part in the positive system of `k`.
    pub fn is_positive_real(&self, w: &AffineWeight) -> bool {
        if !self.is_real_root(w) {
            return false;
        }
        if w.delta.is_positive() {
            true
        } else if w.delta.is_zero() {
            self.k_pos_set.contains(&w.finite)
        } else {
            false
        }
    }

    fn check_bound(&self, w: &AffineWeight) -> Result<(), AffineError> {
        if (&w.delta * rat_int(2)).numer().magnitude() > &self.twice_d_bound.unsigned_abs().into() {
            Err(AffineError::BeyondBound)
        } else {
            Ok(())
        }
    }

    /// Reflection `s_alpha(lambda) = lambda - lambda(alpha^vee) alpha`
    /// in a real root.
    pub fn reflect(
        &self,
        lambda: &AffineWeight,
        alpha: &AffineWeight,
    ) -> Result<AffineWeight, AffineError> {
        let norm = self.form(alpha, alpha);
        if norm.is_zero() {
            return Err(AffineError::IsotropicRoot);
        }
        let c = rat_int(2) * self.form(lambda, alpha) / norm;
        Ok(lambda.sub(&alpha.scale(&c)))
    }

    /// `w(lambda)` for `w = s_{i_1} ... s_{i_k}` acting on the left.
    pub fn apply_word(
        &self,
        word: &WeylWord,
        lambda: &AffineWeight,
    ) -> Result<AffineWeight, AffineError> {
        let mut v = lambda.clone();
        for &i in word.0.iter().rev() {
            v = self.reflect(&v, &self.simple[i])?;
        }
        Ok(v)
    }

    /// `w^{-1}(lambda)`.
    pub fn apply_word_inverse(
        &self,
        word: &WeylWord,
        lambda: &AffineWeight,
    ) -> Result<AffineWeight, AffineError> {
        let mut v = lambda.clone();
        for &i in &word.0 {
            v = self.reflect(&v, &self.simple[i])?;
        }
        Ok(v)
    }

    /// Inversion set `N(w)`, computed incrementally as
    /// `{a_{i_1}, s_{i_1} a_{i_2}, ...}`; a repeated or non-positive
    /// entry means the word is not reduced. Returned sorted.
    pub fn inversion_set(&self, word: &WeylWord) -> Result<Vec<AffineWeight>, AffineError> {
        let mut prefix: Vec<usize> = Vec::new();
        let mut out: Vec<AffineWeight> = Vec::new();
        for &i in &word.0 {
            let mut beta = self.simple[i].clone();
            for &j in prefix.iter().rev() {
                beta = self.reflect(&beta, &self.simple[j])?;
            }
            self.check_bound(&beta)?;
            if !self.is_positive_real(&beta) || out.contains(&beta) {
                return Err(AffineError::NonReducedWord);
            }
            out.push(beta);
            prefix.push(i);
        }
        out.sort();
        Ok(out)
    }

    /// The target inversion set of an abelian subspace:
    /// `{delta/2 - alpha : alpha weight of the subspace}`.
    pub fn phi_hat(&self, subspace: &AbelianSubspace) -> Vec<AffineWeight> {
        let mut out: Vec<AffineWeight> = subspace
            .p_indices
            .iter()
            .map(|&i| AffineWeight {
                finite: self.sp.p_weights[i].iter().map(|x| -x).collect(),
                delta: rat(1, 2),
                lambda0: Rat::zero(),
            })
            .collect();
        out.sort();
        out
    }

    /// Finds `w` with `N(w)` equal to the given set of positive real
    /// roots by peeling simple roots: some simple root must lie in the
    /// set, and removing it and reflecting the rest recurses on a
    /// one-shorter set.
    pub fn word_with_inversion_set(
        &self,
        target: &[AffineWeight],
    ) -> Result<WeylWord, AffineError> {
        let mut current: Vec<AffineWeight> = target.to_vec();
        let mut letters: Vec<usize> = Vec::new();
        while !current.is_empty() {
            let pick = self
                .simple
                .iter()
                .position(|s| current.contains(s))
                .ok_or(AffineError::PeelingStalled)?;
            let simple = self.simple[pick].clone();
            let mut next: Vec<AffineWeight> = Vec::with_capacity(current.len() - 1);
            for w in current.into_iter().filter(|w| *w != simple) {
                let r = self.reflect(&w, &simple)?;
                self.check_bound(&r)?;
                if !self.is_positive_real(&r) {
                    return Err(AffineError::PeelingStalled);
                }
                next.push(r);
            }
            letters.push(pick);
            current = next;
        }
        let word = WeylWord(letters);
        // round trip certifies the answer
        let mut check = self.inversion_set(&word)?;
        check.sort();
        let mut sorted_target = target.to_vec();
        sorted_target.sort();
        if check != sorted_target {
            return Err(AffineError::PeelingStalled);
        }
        Ok(word)
    }

    pub fn find_w_for_subspace(&self, subspace: &AbelianSubspace) -> Result<WeylWord, AffineError> {
        self.word_with_inversion_set(&self.phi_hat(subspace))
    }

    /// `w(rho) - rho`, evaluated both by the action and as
    /// `-sum_{beta in N(w)} beta`; the two must agree exactly.
    pub fn w_rho_minus_rho(&self, word: &WeylWord) -> Result<AffineWeight, AffineError> {
        let rho = self.rho();
        let direct = self.apply_word(word, &rho)?.sub(&rho);
        let mut by_sum = AffineWeight::zero(self.sp.rank_k());
        for beta in self.inversion_set(word)? {
            by_sum = by_sum.sub(&beta);
        }
        assert_eq!(direct, by_sum, "the two evaluations of w(rho)-rho disagree");
        Ok(direct)
    }

    /// Membership in the minimal-coset-representative set:
    /// `w^{-1}(Delta_0^+)` stays positive.
    pub fn in_w_prime(&self, word: &WeylWord) -> Result<bool, AffineError> {
        for beta in &self.k_pos_set {
            let b = AffineWeight::finite_root(beta.clone());
            let image = self.apply_word_inverse(word, &b)?;
            if !self.is_positive_real(&image) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All reduced words up to the given length, one per group element
    /// (elements are identified by their action on the regular weight
    /// `rho`). Returned with their inversion sets.
    pub fn reduced_words_up_to(
        &self,
        max_len: usize,
    ) -> Result<Vec<(WeylWord, Vec<AffineWeight>)>, AffineError> {
        let rho = self.rho();
        let mut seen: BTreeMap<AffineWeight, WeylWord> = BTreeMap::new();
        seen.insert(rho.clone(), WeylWord(Vec::new()));
        let mut frontier: Vec<(WeylWord, AffineWeight)> = vec![(WeylWord(Vec::new()), rho.clone())];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (word, image) in &frontier {
                for i in 0..self.simple.len() {
                    // left extension: w' = s_i w, acting on rho
                    let new_image = self.reflect(image, &self.simple[i])?;
                    if seen.contains_key(&new_image) {
                        continue;
                    }
                    let mut letters = vec![i];
                    letters.extend(&word.0);
                    let w = WeylWord(letters);
                    seen.insert(new_image.clone(), w.clone());
                    next.push((w, new_image));
                }
            }
            frontier = next;
        }
        let mut out = Vec::new();
        for (_, word) in seen {
            let inv = self.inversion_set(&word)?;
            out.push((word, inv));
        }
        out.sort_by_key(|(w, _)| (w.len(), w.0.clone()));
        Ok(out)
    }
}
