//! Symmetric pairs `g = k ⊕ p` from involutions.
//!
//! Two kinds of involution are supported: the switch on `s ⊕ s` (the
//! adjoint case) and inner involutions acting by `±1` signs on the simple
//! Chevalley generators. Everything downstream works with the eigenbasis
//! of the involution; brackets between eigenvectors are precomputed once
//! into `k/k`, `k/p` and `p/p` tables, and every grading relation is
//! checked during construction rather than assumed.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lie::{
    build_chevalley_basis, build_root_system, killing_form, CartanSpec, ChevalleyBasis,
    KillingForm, Label, LieError,
};
use crate::linalg::SparseRatMatrix;
use crate::rat::{is_zero_vec, rat, zero_vec, Rat, RatVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("involution is not involutive")]
    NotInvolutive,
    #[error("Killing form restricted to k is degenerate")]
    DegenerateRestriction,
    #[error("weight is not dominant for the positive system of k")]
    NonDominant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Involution {
    /// `sigma(x, y) = (y, x)` on `s ⊕ s`.
    Switch,
    /// Signs on the simple Chevalley generators, extended
    /// multiplicatively over root spaces; fixes the Cartan pointwise.
    InnerSigns(Vec<i8>),
}

/// A parsed pair spec such as `A2:switch` or `B2:signs=+-`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSpec {
    pub base: CartanSpec,
    pub involution: Involution,
}

impl PairSpec {
    pub fn parse(s: &str) -> Result<Self, PairError> {
        let (left, right) = s.split_once(':').ok_or_else(|| PairError::Parse {
            pos: s.len(),
            msg: "expected `<type>:<involution>`, e.g. `A2:switch`".into(),
        })?;
        let base = CartanSpec::parse(left)?;
        let inv_pos = left.len() + 1;
        let involution = if right.eq_ignore_ascii_case("switch") {
            if base.factors.len() != 1 {
                return Err(PairError::Parse {
                    pos: 0,
                    msg: "switch requires a single simple factor".into(),
                });
            }
            Involution::Switch
        } else if let Some(signs) = right
            .strip_prefix("signs=")
            .or_else(|| right.strip_prefix("SIGNS="))
        {
            // a product base would make the loop algebra decompose into
            // several affine components, breaking the single-delta root
            // bookkeeping (n+1 simple roots, one scaling element)
            if base.factors.len() != 1 {
                return Err(PairError::Parse {
                    pos: 0,
                    msg: "inner-sign involutions require a single simple factor".into(),
                });
            }
            let mut v = Vec::new();
            for (i, c) in signs.chars().enumerate() {
                match c {
                    '+' => v.push(1i8),
                    '-' => v.push(-1i8),
                    _ => {
                        return Err(PairError::Parse {
                            pos: inv_pos + 6 + i,
                            msg: format!("expected '+' or '-', found {c:?}"),
                        })
                    }
                }
            }
            if v.len() != base.rank() {
                return Err(PairError::Parse {
                    pos: inv_pos,
                    msg: format!(
                        "sign vector has length {}, expected rank {}",
                        v.len(),
                        base.rank()
                    ),
                });
            }
            Involution::InnerSigns(v)
        } else {
            return Err(PairError::Parse {
                pos: inv_pos,
                msg: format!("unknown involution {right:?}"),
            });
        };
        Ok(Self { base, involution })
    }

    pub fn canonical_name(&self) -> String {
        match &self.involution {
            Involution::Switch => format!("{}:switch", self.base.to_string_spec()),
            Involution::InnerSigns(v) => format!(
                "{}:signs={}",
                self.base.to_string_spec(),
                v.iter()
                    .map(|&s| if s > 0 { '+' } else { '-' })
                    .collect::<String>()
            ),
        }
    }
}

/// Where an eigenbasis vector came from, for weight positivity and
/// height bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// Built from the root space of the (ambient, first-factor for the
    /// switch) signed root with this positive index.
    Root {
        pos_index: usize,
        positive: bool,
    },
    Cartan(usize),
}

type SparseVec = Vec<(usize, Rat)>;

/// The decomposition `g = k ⊕ p` with all derived data used downstream.
#[derive(Debug, Clone)]
pub struct SymmetricPair {
    pub spec: PairSpec,
    pub g: ChevalleyBasis,
    pub kf: KillingForm,
    /// The involution on the ambient basis.
    pub sigma: SparseRatMatrix,
    pub k_basis: Vec<RatVector>,
    pub p_basis: Vec<RatVector>,
    pub k_origin: Vec<Origin>,
    pub p_origin: Vec<Origin>,
    /// Indices into `k_basis` forming the Cartan `h0` of `k`.
    pub h0: Vec<usize>,
    /// Weight of each basis vector: values on the `h0` elements, in order.
    pub k_weights: Vec<RatVector>,
    pub p_weights: Vec<RatVector>,
    /// `k_basis` indices carrying the positive roots of `k`.
    pub delta0_pos: Vec<usize>,
    /// Subset of `delta0_pos` whose weights are indecomposable.
    pub delta0_simple: Vec<usize>,
    pub rho0: RatVector,
    /// Ambient Killing form on the `h0` basis and its inverse.
    pub h0_gram: SparseRatMatrix,
    pub h0_gram_inv: SparseRatMatrix,
    pub gram_k: SparseRatMatrix,
    pub gram_p: SparseRatMatrix,
    /// Dual basis of `k` with respect to `gram_k`, in `k` coordinates:
    /// column `j` pairs to `delta_{ij}` against `k_basis[i]`.
    pub dual_k: SparseRatMatrix,
    /// Contravariant finite grams `C[i][j] = kappa(v_i, tau(v_j))` where
    /// `tau` is the transpose anti-involution (`e <-> f`, fixed on `h`).
    pub contra_k: SparseRatMatrix,
    pub contra_p: SparseRatMatrix,
    /// `tau` restricted to each eigenspace, in eigen coordinates.
    pub tau_k: SparseRatMatrix,
    pub tau_p: SparseRatMatrix,
    kk: Vec<Vec<SparseVec>>,
    kp: Vec<Vec<SparseVec>>,
    pp: Vec<Vec<SparseVec>>,
}

pub fn build_pair(spec: &PairSpec) -> Result<SymmetricPair, PairError> {
    let (ambient_spec, sigma_kind) = match &spec.involution {
        Involution::Switch => (spec.base.doubled(), None),
        Involution::InnerSigns(signs) => (spec.base.clone(), Some(signs.clone())),
    };
    let rs = build_root_system(&ambient_spec);
    let g = build_chevalley_basis(&rs);
    let kf = killing_form(&g);
    let dim = g.dim;
    let npos = g.num_positive();

    // the involution as a matrix on the ambient basis
    let mut sigma = SparseRatMatrix::zero(dim, dim);
    match &sigma_kind {
        None => {
            // switch: factor-2 copies of roots/coroots are the factor-1
            // coordinates shifted by the base rank
            let n = spec.base.rank();
            let mate_root = |idx: usize| -> usize {
                let coords = &rs.positive_roots[idx];
                let shifted: Vec<i64> = (0..rs.rank).map(|j| coords[(j + n) % rs.rank]).collect();
                rs.signed_root_of(&shifted).expect("switch mate root").0
            };
            for gidx in 0..npos {
                let m = mate_root(gidx);
                sigma.set(
                    g.index_of(Label::E(m)),
                    g.index_of(Label::E(gidx)),
                    Rat::one(),
                );
                sigma.set(
                    g.index_of(Label::F(m)),
                    g.index_of(Label::F(gidx)),
                    Rat::one(),
                );
            }
            for i in 0..rs.rank {
                let m = (i + n) % rs.rank;
                sigma.set(g.index_of(Label::H(m)), g.index_of(Label::H(i)), Rat::one());
            }
        }
        Some(signs) => {
            for gidx in 0..npos {
                let coords = &rs.positive_roots[gidx];
                let mut s = 1i64;
                for (i, &c) in coords.iter().enumerate() {
                    if signs[i] < 0 && c % 2 != 0 {
                        s = -s;
                    }
                }
                let v = Rat::from_integer(s.into());
                sigma.set(
                    g.index_of(Label::E(gidx)),
                    g.index_of(Label::E(gidx)),
                    v.clone(),
                );
                sigma.set(g.index_of(Label::F(gidx)), g.index_of(Label::F(gidx)), v);
            }
            for i in 0..rs.rank {
                sigma.set(g.index_of(Label::H(i)), g.index_of(Label::H(i)), Rat::one());
            }
        }
    }

    if sigma.matmul(&sigma) != SparseRatMatrix::identity(dim) {
        return Err(PairError::NotInvolutive);
    }
    // sigma is an automorphism and preserves the Killing form
    for i in 0..dim {
        let si = sigma.column(i);
        for j in 0..dim {
            let sj = sigma.column(j);
            let lhs = g.bracket_vec(&si, &sj);
            let rhs_raw = g.bracket_idx(i, j);
            let mut rhs = zero_vec(dim);
            for (kidx, c) in rhs_raw {
                let col = sigma.column(kidx);
                for (t, v) in col.iter().enumerate() {
                    rhs[t] += &c * v;
                }
            }
            assert_eq!(lhs, rhs, "sigma is not an automorphism at ({i},{j})");
            assert_eq!(
                kf.pair(&si, &sj),
                kf.pair(&basis_vec(dim, i), &basis_vec(dim, j)),
                "sigma does not preserve the Killing form"
            );
        }
    }

    // eigenbases with provenance
    let mut k_basis = Vec::new();
    let mut p_basis = Vec::new();
    let mut k_origin = Vec::new();
    let mut p_origin = Vec::new();
    match &sigma_kind {
        None => {
            let n = spec.base.rank();
            let mate_root = |idx: usize| -> usize {
                let coords = &rs.positive_roots[idx];
                let shifted: Vec<i64> = (0..rs.rank).map(|j| coords[(j + n) % rs.rank]).collect();
                rs.signed_root_of(&shifted).expect("switch mate root").0
            };
            // first-factor positive roots, in root order
            let first: Vec<usize> = (0..npos)
                .filter(|&i| rs.positive_roots[i][..n].iter().any(|&c| c != 0))
                .collect();
            assert_eq!(first.len(), npos / 2);
            for plus in [true, false] {
                for &g1 in &first {
                    let g2 = mate_root(g1);
                    let lab = |idx| if plus { Label::E(idx) } else { Label::F(idx) };
                    let mut vk = zero_vec(dim);
                    vk[g.index_of(lab(g1))] = Rat::one();
                    vk[g.index_of(lab(g2))] = Rat::one();
                    let mut vp = zero_vec(dim);
                    vp[g.index_of(lab(g1))] = Rat::one();
                    vp[g.index_of(lab(g2))] = -Rat::one();
                    k_basis.push(vk);
                    p_basis.push(vp);
                    k_origin.push(Origin::Root {
                        pos_index: g1,
                        positive: plus,
                    });
                    p_origin.push(Origin::Root {
                        pos_index: g1,
                        positive: plus,
                    });
                }
            }
            for i in 0..n {
                let mut vk = zero_vec(dim);
                vk[g.index_of(Label::H(i))] = Rat::one();
                vk[g.index_of(Label::H(i + n))] = Rat::one();
                let mut vp = zero_vec(dim);
                vp[g.index_of(Label::H(i))] = Rat::one();
                vp[g.index_of(Label::H(i + n))] = -Rat::one();
                k_basis.push(vk);
                p_basis.push(vp);
                k_origin.push(Origin::Cartan(i));
                p_origin.push(Origin::Cartan(i));
            }
        }
        Some(_) => {
            for plus in [true, false] {
                for gidx in 0..npos {
                    let lab = if plus { Label::E(gidx) } else { Label::F(gidx) };
                    let fixed = sigma.get(g.index_of(lab), g.index_of(lab)).is_one();
                    let mut v = zero_vec(dim);
                    v[g.index_of(lab)] = Rat::one();
                    if fixed {
                        k_basis.push(v);
                        k_origin.push(Origin::Root {
                            pos_index: gidx,
                            positive: plus,
                        });
                    } else {
                        p_basis.push(v);
                        p_origin.push(Origin::Root {
                            pos_index: gidx,
                            positive: plus,
                        });
                    }
                }
            }
            for i in 0..rs.rank {
                let mut v = zero_vec(dim);
                v[g.index_of(Label::H(i))] = Rat::one();
                k_basis.push(v);
                k_origin.push(Origin::Cartan(i));
            }
        }
    }
    assert_eq!(k_basis.len() + p_basis.len(), dim);
    for v in &k_basis {
        assert_eq!(sigma.mul_vec(v), *v, "k vector not fixed by sigma");
    }
    for v in &p_basis {
        let neg: RatVector = v.iter().map(|x| -x).collect();
        assert_eq!(sigma.mul_vec(v), neg, "p vector not antifixed by sigma");
    }

    // change of basis: ambient -> (k | p) coordinates
    let cols: Vec<RatVector> = k_basis.iter().chain(&p_basis).cloned().collect();
    let eigen_to_ambient = SparseRatMatrix::from_columns(&cols, dim);
    let ambient_to_eigen = eigen_to_ambient.invert().expect("eigenbasis is a basis");
    let dim_k = k_basis.len();
    let dim_p = p_basis.len();
    let to_k = |v: &RatVector| -> SparseVec {
        let coords = ambient_to_eigen.mul_vec(v);
        assert!(
            coords[dim_k..].iter().all(|x| x.is_zero()),
            "grading violated: bracket leaks into p"
        );
        coords[..dim_k]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect()
    };
    let to_p = |v: &RatVector| -> SparseVec {
        let coords = ambient_to_eigen.mul_vec(v);
        assert!(
            coords[..dim_k].iter().all(|x| x.is_zero()),
            "grading violated: bracket leaks into k"
        );
        coords[dim_k..]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect()
    };

    let kk: Vec<Vec<SparseVec>> = k_basis
        .iter()
        .map(|a| k_basis.iter().map(|b| to_k(&g.bracket_vec(a, b))).collect())
        .collect();
    let kp: Vec<Vec<SparseVec>> = k_basis
        .iter()
        .map(|a| p_basis.iter().map(|b| to_p(&g.bracket_vec(a, b))).collect())
        .collect();
    let pp: Vec<Vec<SparseVec>> = p_basis
        .iter()
        .map(|a| p_basis.iter().map(|b| to_k(&g.bracket_vec(a, b))).collect())
        .collect();

    // Cartan of k and weights
    let h0: Vec<usize> = k_origin
        .iter()
        .enumerate()
        .filter(|(_, o)| matches!(o, Origin::Cartan(_)))
        .map(|(i, _)| i)
        .collect();
    let n0 = h0.len();
    let weight_of = |table_row: &dyn Fn(usize) -> SparseVec, self_idx: usize| -> RatVector {
        let mut w = zero_vec(n0);
        for (slot, &hidx) in h0.iter().enumerate() {
            let br = table_row(hidx);
            // [h, v] must be an exact multiple of v
            match br.as_slice() {
                [] => {}
                [(j, c)] if *j == self_idx => w[slot] = c.clone(),
                other => panic!("not a weight vector: [h, v] = {other:?}"),
            }
        }
        w
    };
    let k_weights: Vec<RatVector> = (0..dim_k)
        .map(|j| weight_of(&|h| kk[h][j].clone(), j))
        .collect();
    let p_weights: Vec<RatVector> = (0..dim_p)
        .map(|j| weight_of(&|h| kp[h][j].clone(), j))
        .collect();

    // positive roots of k: root vectors with positive origin
    let delta0_pos: Vec<usize> = (0..dim_k)
        .filter(|&i| matches!(k_origin[i], Origin::Root { positive: true, .. }))
        .collect();
    for &i in &delta0_pos {
        assert!(
            !is_zero_vec(&k_weights[i]),
            "k root vector with zero weight"
        );
    }
    let mut rho0 = zero_vec(n0);
    for &i in &delta0_pos {
        for (slot, v) in k_weights[i].iter().enumerate() {
            rho0[slot] += v;
        }
    }
    for v in rho0.iter_mut() {
        *v *= rat(1, 2);
    }
    // simple = indecomposable within the positive weights
    let pos_weights: Vec<&RatVector> = delta0_pos.iter().map(|&i| &k_weights[i]).collect();
    let delta0_simple: Vec<usize> = delta0_pos
        .iter()
        .copied()
        .filter(|&i| {
            let target = &k_weights[i];
            !pos_weights.iter().any(|a| {
                pos_weights
                    .iter()
                    .any(|b| (0..n0).all(|t| &a[t] + &b[t] == target[t]))
            })
        })
        .collect();

    // restricted Killing forms
    let mut gram_k = SparseRatMatrix::zero(dim_k, dim_k);
    for i in 0..dim_k {
        for j in 0..dim_k {
            gram_k.set(i, j, kf.pair(&k_basis[i], &k_basis[j]));
        }
    }
    let mut gram_p = SparseRatMatrix::zero(dim_p, dim_p);
    for i in 0..dim_p {
        for j in 0..dim_p {
            gram_p.set(i, j, kf.pair(&p_basis[i], &p_basis[j]));
        }
    }
    for i in 0..dim_k {
        for j in 0..dim_p {
            assert!(
                kf.pair(&k_basis[i], &p_basis[j]).is_zero(),
                "k and p are not Killing-orthogonal"
            );
        }
    }
    let mut h0_gram = SparseRatMatrix::zero(n0, n0);
    for (a, &i) in h0.iter().enumerate() {
        for (b, &j) in h0.iter().enumerate() {
            h0_gram.set(a, b, gram_k.get(i, j));
        }
    }
    let h0_gram_inv = h0_gram
        .invert()
        .map_err(|_| PairError::DegenerateRestriction)?;
    let dual_k = gram_k
        .invert()
        .map_err(|_| PairError::DegenerateRestriction)?;

    // transpose anti-involution tau: e <-> f on the ambient basis
    let mut tau = SparseRatMatrix::zero(dim, dim);
    for gidx in 0..npos {
        tau.set(
            g.index_of(Label::F(gidx)),
            g.index_of(Label::E(gidx)),
            Rat::one(),
        );
        tau.set(
            g.index_of(Label::E(gidx)),
            g.index_of(Label::F(gidx)),
            Rat::one(),
        );
    }
    for i in 0..rs.rank {
        tau.set(g.index_of(Label::H(i)), g.index_of(Label::H(i)), Rat::one());
    }
    // tau preserves the eigenspaces; record it in eigen coordinates
    // together with the contravariant grams
    let mut contra_k = SparseRatMatrix::zero(dim_k, dim_k);
    let mut tau_k = SparseRatMatrix::zero(dim_k, dim_k);
    for j in 0..dim_k {
        let tj = tau.mul_vec(&k_basis[j]);
        for i in 0..dim_k {
            contra_k.set(i, j, kf.pair(&k_basis[i], &tj));
        }
        let coords = ambient_to_eigen.mul_vec(&tj);
        assert!(
            coords[dim_k..].iter().all(|x| x.is_zero()),
            "tau does not preserve k"
        );
        for (i, c) in coords[..dim_k].iter().enumerate() {
            tau_k.set(i, j, c.clone());
        }
    }
    let mut contra_p = SparseRatMatrix::zero(dim_p, dim_p);
    let mut tau_p = SparseRatMatrix::zero(dim_p, dim_p);
    for j in 0..dim_p {
        let tj = tau.mul_vec(&p_basis[j]);
        for i in 0..dim_p {
            contra_p.set(i, j, kf.pair(&p_basis[i], &tj));
        }
        let coords = ambient_to_eigen.mul_vec(&tj);
        assert!(
            coords[..dim_k].iter().all(|x| x.is_zero()),
            "tau does not preserve p"
        );
        for (i, c) in coords[dim_k..].iter().enumerate() {
            tau_p.set(i, j, c.clone());
        }
    }

    // nonzero p-weights occur with multiplicity one for supported kinds
    {
        let mut seen: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
        for w in p_weights.iter().filter(|w| !is_zero_vec(w)) {
            *seen.entry(w.clone()).or_insert(0) += 1;
        }
        assert!(
            seen.values().all(|&m| m == 1),
            "nonzero p-weight with multiplicity > 1"
        );
    }

    Ok(SymmetricPair {
        spec: spec.clone(),
        g,
        kf,
        sigma,
        k_basis,
        p_basis,
        k_origin,
        p_origin,
        h0,
        k_weights,
        p_weights,
        delta0_pos,
        delta0_simple,
        rho0,
        h0_gram,
        h0_gram_inv,
        gram_k,
        gram_p,
        dual_k,
        contra_k,
        contra_p,
        tau_k,
        tau_p,
        kk,
        kp,
        pp,
    })
}

fn basis_vec(dim: usize, i: usize) -> RatVector {
    let mut v = zero_vec(dim);
    v[i] = Rat::one();
    v
}

impl SymmetricPair {
    pub fn dim_g(&self) -> usize {
        self.g.dim
    }

    pub fn dim_k(&self) -> usize {
        self.k_basis.len()
    }

    pub fn dim_p(&self) -> usize {
        self.p_basis.len()
    }

    pub fn rank_k(&self) -> usize {
        self.h0.len()
    }

    pub fn name(&self) -> String {
        self.spec.canonical_name()
    }

    pub fn bracket_kk(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.kk[i][j]
    }

    pub fn bracket_kp(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.kp[i][j]
    }

    pub fn bracket_pp(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.pp[i][j]
    }

    /// Form on `h0*` induced by the ambient Killing form; weights are
    /// given by their values on the `h0` basis.
    pub fn weight_form(&self, mu: &[Rat], eta: &[Rat]) -> Rat {
        let tmp = self.h0_gram_inv.mul_vec(eta);
        mu.iter().zip(&tmp).map(|(a, b)| a * b).sum()
    }

    /// `2 (xi, beta) / (beta, beta)` for a nonzero weight `beta`.
    pub fn coroot_pairing(&self, xi: &[Rat], beta: &[Rat]) -> Rat {
        let num = self.weight_form(xi, beta);
        let den = self.weight_form(beta, beta);
        assert!(!den.is_zero(), "coroot pairing with isotropic weight");
        Rat::from_integer(2.into()) * num / den
    }

    pub fn is_dominant(&self, xi: &[Rat]) -> bool {
        self.delta0_simple.iter().all(|&i| {
            let c = self.coroot_pairing(xi, &self.k_weights[i]);
            !c.is_negative() && c.denom().is_one()
        })
    }

    /// Casimir eigenvalue `(xi, xi + 2 rho0)` on the irreducible with
    /// dominant highest weight `xi`.
    pub fn casimir_scalar(&self, xi: &[Rat]) -> Result<Rat, PairError> {
        if !self.is_dominant(xi) {
            return Err(PairError::NonDominant);
        }
        let mut shifted = xi.to_vec();
        for (s, r) in shifted.iter_mut().zip(&self.rho0) {
            *s += r + r;
        }
        Ok(self.weight_form(xi, &shifted))
    }

    /// Dual-basis pairs realizing the Casimir element: the standard
    /// basis of `k` together with the columns of `gram_k^{-1}`.
    pub fn casimir_pairs(&self) -> Vec<(RatVector, RatVector)> {
        (0..self.dim_k())
            .map(|j| (basis_vec(self.dim_k(), j), self.dual_k.column(j)))
            .collect()
    }

    /// Action matrix on `p` of an element of `k` given in `k` coordinates.
    pub fn k_action_on_p(&self, coeffs: &[Rat]) -> SparseRatMatrix {
        let dim_p = self.dim_p();
        let mut m = SparseRatMatrix::zero(dim_p, dim_p);
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..dim_p {
                for (t, v) in &self.kp[i][j] {
                    m.add_to(*t, j, &(c * v));
                }
            }
        }
        m
    }

    /// Matrix of the Casimir operator acting on `p`.
    pub fn casimir_on_p(&self) -> SparseRatMatrix {
        let dim_p = self.dim_p();
        let mut total = SparseRatMatrix::zero(dim_p, dim_p);
        for (b, b_dual) in self.casimir_pairs() {
            let m1 = self.k_action_on_p(&b);
            let m2 = self.k_action_on_p(&b_dual);
            total = total.add(&m1.matmul(&m2));
        }
        total
    }

    /// Test hook: perturbs one `[p,p]` structure constant so that the
    /// verification suite must detect the inconsistency.
    pub fn corrupt_structure_constant(&mut self) {
        'outer: for i in 0..self.dim_p() {
            for j in 0..self.dim_p() {
                if let Some((_, c)) = self.pp[i][j].first_mut() {
                    *c += Rat::one();
                    if c.is_zero() {
                        *c += Rat::one();
                    }
                    break 'outer;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn pair(s: &str) -> SymmetricPair {
        build_pair(&PairSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn parse_pair_specs() {
        assert!(PairSpec::parse("A2:switch").is_ok());
        assert!(PairSpec::parse("a1:SWITCH".to_lowercase().as_str()).is_ok());
        assert!(PairSpec::parse("B2:signs=+-").is_ok());
        assert!(PairSpec::parse("B2:signs=+").is_err());
        assert!(PairSpec::parse("Z9:switch").is_err());
        assert!(PairSpec::parse("A2").is_err());
        assert!(PairSpec::parse("A1xA1:switch").is_err());
        assert!(PairSpec::parse("A1xA1:signs=--").is_err());
    }

    #[test]
    fn switch_a1_shapes() {
        let sp = pair("A1:switch");
        assert_eq!(sp.dim_g(), 6);
        assert_eq!(sp.dim_k(), 3);
        assert_eq!(sp.dim_p(), 3);
        assert_eq!(sp.rank_k(), 1);
        assert_eq!(sp.delta0_pos.len(), 1);
        // p-weights: {alpha, -alpha, 0} with zero multiplicity 1
        let mut zero_count = 0;
        for w in &sp.p_weights {
            if is_zero_vec(w) {
                zero_count += 1;
            }
        }
        assert_eq!(zero_count, 1);
    }

    #[test]
    fn inner_signs_a1_shapes() {
        let sp = pair("A1:signs=-");
        assert_eq!(sp.dim_k(), 1);
        assert_eq!(sp.dim_p(), 2);
        assert!(sp.delta0_pos.is_empty());
        assert!(sp.rho0.iter().all(|x| x.is_zero()));
        // weights of p are {alpha, -alpha}
        assert_eq!(sp.p_weights[0], vec![rat_int(2)]);
        assert_eq!(sp.p_weights[1], vec![rat_int(-2)]);
    }

    #[test]
    fn switch_a2_shapes() {
        let sp = pair("A2:switch");
        assert_eq!(sp.dim_k(), 8);
        assert_eq!(sp.dim_p(), 8);
        assert_eq!(sp.delta0_pos.len(), 3);
        assert_eq!(sp.delta0_simple.len(), 2);
    }

    #[test]
    fn grading_relations_hold() {
        // construction already asserts [k,k] in k, [k,p] in p, [p,p] in k;
        // re-exercise on several pairs
        for s in ["A1:switch", "A1:signs=-", "A2:switch", "B2:signs=--"] {
            let sp = pair(s);
            assert_eq!(sp.dim_k() + sp.dim_p(), sp.dim_g());
        }
    }

    #[test]
    fn casimir_duality_residual_zero() {
        let sp = pair("A1:switch");
        for (i, (b, _)) in sp.casimir_pairs().iter().enumerate() {
            for (j, (_, bd)) in sp.casimir_pairs().iter().enumerate() {
                let v = sp.gram_k.mul_vec(bd);
                let pairing: Rat = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                assert_eq!(pairing, if i == j { rat_int(1) } else { rat_int(0) });
            }
        }
    }

    #[test]
    fn switch_restriction_is_twice_killing() {
        let sp = pair("A1:switch");
        // k = diagonal sl2; restricted form = 2 * kappa_sl2, so the
        // Cartan entry is 2 * 8 = 16
        let h_slot = sp.h0[0];
        assert_eq!(sp.gram_k.get(h_slot, h_slot), rat_int(16));
    }

    #[test]
    fn inner_a1_dual_pair_is_h_over_8() {
        let sp = pair("A1:signs=-");
        assert_eq!(sp.dim_k(), 1);
        assert_eq!(sp.dual_k.get(0, 0), rat(1, 8));
    }

    #[test]
    fn casimir_scalar_examples() {
        // switch A1, xi = alpha: 1/4 + 1/4 = 1/2
        let sp = pair("A1:switch");
        let alpha = sp.k_weights[sp.delta0_pos[0]].clone();
        assert_eq!(sp.casimir_scalar(&alpha).unwrap(), rat(1, 2));
        assert_eq!(sp.weight_form(&alpha, &alpha), rat(1, 4));
        // trivial weight
        assert_eq!(sp.casimir_scalar(&vec![rat_int(0)]).unwrap(), rat_int(0));
        // inner-signs A1, xi = alpha: (alpha, alpha) = 1/2, rho0 = 0
        let sp = pair("A1:signs=-");
        let alpha = sp.p_weights[0].clone();
        assert_eq!(sp.casimir_scalar(&alpha).unwrap(), rat(1, 2));
        // non-dominant weight is rejected
        let sp = pair("A1:switch");
        let neg = vec![rat_int(-2)];
        assert_eq!(sp.casimir_scalar(&neg), Err(PairError::NonDominant));
    }

    #[test]
    fn casimir_commutes_with_k_action_on_p() {
        for s in ["A1:switch", "A2:switch", "B2:signs=--"] {
            let sp = pair(s);
            let omega = sp.casimir_on_p();
            for &b in &sp.delta0_pos {
                let act = sp.k_action_on_p(&basis_vec(sp.dim_k(), b));
                assert!(
                    omega.matmul(&act).sub(&act.matmul(&omega)).is_zero(),
                    "Casimir does not commute with the k-action on {s}"
                );
            }
        }
    }

    #[test]
    fn weights_act_exactly() {
        let sp = pair("B2:signs=--");
        // [h, v] = mu(h) v is asserted during construction; spot-check the
        // weight values against the coroot pairings of the ambient system
        for (j, w) in sp.p_weights.iter().enumerate() {
            if let Origin::Root {
                pos_index,
                positive,
            } = sp.p_origin[j]
            {
                let coords = &sp.g.rs.positive_roots[pos_index];
                let sgn = if positive { 1 } else { -1 };
                for (slot, &h_idx) in sp.h0.iter().enumerate() {
                    if let Origin::Cartan(i) = sp.k_origin[h_idx] {
                        let expect = rat_int(sgn * sp.g.rs.coroot_pairing(coords, i));
                        assert_eq!(w[slot], expect);
                    }
                }
            }
        }
    }

    #[test]
    fn casimir_scalar_positive_on_dominant_nonzero() {
        let sp = pair("A2:switch");
        // all nonzero dominant p-weights have positive casimir scalar
        for w in &sp.p_weights {
            if !is_zero_vec(w) && sp.is_dominant(w) {
                assert!(sp.casimir_scalar(w).unwrap().is_positive());
            }
        }
    }
}
