//! Finite semisimple Lie algebras in a Chevalley basis.
//!
//! A [`RootSystem`] is built by the closure algorithm from the Cartan
//! matrix of each simple factor; simple roots are realized in Euclidean
//! coordinates (Bourbaki tables) so the Cartan integers and the
//! normalized invariant form are *computed*, never transcribed.
//!
//! Structure constants use the extraspecial-pair sign convention: the
//! sign of `N` is fixed to `+` on the extraspecial pair of each positive
//! root (the decomposition with the smallest first summand in the fixed
//! root order) and every other constant is derived from the Jacobi
//! relations. The resulting basis admits the Chevalley involution, so
//! `N(-a,-b) = -N(a,b)` throughout.
//!
//! The [`KillingForm`] is the genuine Killing form `tr(ad x ∘ ad y)` —
//! downstream Casimir eigenvalue statements depend on this exact
//! normalization, so it is never rescaled.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::SparseRatMatrix;
use crate::rat::{rat, rat_int, Rat, RatVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid rank {rank} for type {letter}")]
    InvalidRank { letter: char, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLetter {
    pub fn as_char(self) -> char {
        match self {
            TypeLetter::A => 'A',
            TypeLetter::B => 'B',
            TypeLetter::C => 'C',
            TypeLetter::D => 'D',
            TypeLetter::E => 'E',
            TypeLetter::F => 'F',
            TypeLetter::G => 'G',
        }
    }

    fn rank_ok(self, n: usize) -> bool {
        match self {
            TypeLetter::A => n >= 1,
            TypeLetter::B | TypeLetter::C => n >= 2,
            TypeLetter::D => n >= 3,
            TypeLetter::E => (6..=8).contains(&n),
            TypeLetter::F => n == 4,
            TypeLetter::G => n == 2,
        }
    }
}

/// A product of simple Cartan types, e.g. `A2` or `A1xA1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanSpec {
    pub factors: Vec<(TypeLetter, usize)>,
}

impl CartanSpec {
    pub fn new(factors: Vec<(TypeLetter, usize)>) -> Result<Self, LieError> {
        for &(letter, rank) in &factors {
            if !letter.rank_ok(rank) {
                return Err(LieError::InvalidRank {
                    letter: letter.as_char(),
                    rank,
                });
            }
        }
        Ok(Self { factors })
    }

    /// Parses `"A2"`, `"a1xa1"`, `"B2xG2"`; case-insensitive, `x` separates
    /// factors.
    pub fn parse(s: &str) -> Result<Self, LieError> {
        let mut factors = Vec::new();
        let mut pos = 0usize;
        for part in s.split(['x', 'X']) {
            if part.is_empty() {
                return Err(LieError::Parse {
                    pos,
                    msg: "empty factor".into(),
                });
            }
            let letter = match part.chars().next().unwrap().to_ascii_uppercase() {
                'A' => TypeLetter::A,
                'B' => TypeLetter::B,
                'C' => TypeLetter::C,
                'D' => TypeLetter::D,
                'E' => TypeLetter::E,
                'F' => TypeLetter::F,
                'G' => TypeLetter::G,
                c => {
                    return Err(LieError::Parse {
                        pos,
                        msg: format!("unknown type letter {c:?}"),
                    })
                }
            };
            let rank: usize = part[1..].parse().map_err(|_| LieError::Parse {
                pos: pos + 1,
                msg: format!("bad rank in {part:?}"),
            })?;
            if !letter.rank_ok(rank) {
                return Err(LieError::Parse {
                    pos,
                    msg: format!("invalid rank {rank} for type {}", letter.as_char()),
                });
            }
            factors.push((letter, rank));
            pos += part.len() + 1;
        }
        Self::new(factors)
    }

    /// Doubles the spec: `s` becomes `s x s` (ambient algebra of the
    /// switch involution).
    pub fn doubled(&self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(self.factors.clone());
        Self { factors }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|&(_, n)| n).sum()
    }

    pub fn to_string_spec(&self) -> String {
        self.factors
            .iter()
            .map(|&(l, n)| format!("{}{}", l.as_char(), n))
            .collect::<Vec<_>>()
            .join("x")
    }
}

/// Euclidean realization of the simple roots of one simple factor
/// (Bourbaki plates). Used only to derive Cartan integers and the
/// normalized invariant form.
fn simple_root_realization(letter: TypeLetter, n: usize) -> Vec<RatVector> {
    let e = |m: usize, i: usize| -> RatVector {
        let mut v = vec![Rat::zero(); m];
        v[i] = Rat::one();
        v
    };
    let sub = |a: &RatVector, b: &RatVector| -> RatVector {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    };
    match letter {
        TypeLetter::A => {
            let m = n + 1;
            (0..n).map(|i| sub(&e(m, i), &e(m, i + 1))).collect()
        }
        TypeLetter::B => {
            let m = n;
            let mut v: Vec<RatVector> = (0..n - 1).map(|i| sub(&e(m, i), &e(m, i + 1))).collect();
            v.push(e(m, n - 1));
            v
        }
        TypeLetter::C => {
            let m = n;
            let mut v: Vec<RatVector> = (0..n - 1).map(|i| sub(&e(m, i), &e(m, i + 1))).collect();
            let mut last = e(m, n - 1);
            last[n - 1] = rat_int(2);
            v.push(last);
            v
        }
        TypeLetter::D => {
            let m = n;
            let mut v: Vec<RatVector> = (0..n - 1).map(|i| sub(&e(m, i), &e(m, i + 1))).collect();
            let mut last = e(m, n - 2);
            last[n - 1] = Rat::one();
            v.push(last);
            v
        }
        TypeLetter::G => {
            let m = 3;
            let a1 = sub(&e(m, 0), &e(m, 1));
            let mut a2 = vec![rat_int(-2), rat_int(1), rat_int(1)];
            a2.truncate(m);
            vec![a1, a2]
        }
        TypeLetter::F => {
            let m = 4;
            let a1 = sub(&e(m, 1), &e(m, 2));
            let a2 = sub(&e(m, 2), &e(m, 3));
            let a3 = e(m, 3);
            let a4 = vec![rat(1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2)];
            vec![a1, a2, a3, a4]
        }
        TypeLetter::E => {
            let m = 8;
            let mut v = Vec::new();
            let mut a1 = vec![rat(-1, 2); 8];
            a1[0] = rat(1, 2);
            a1[7] = rat(1, 2);
            v.push(a1);
            let mut a2 = vec![Rat::zero(); 8];
            a2[0] = Rat::one();
            a2[1] = Rat::one();
            v.push(a2);
            v.push(sub(&e(m, 1), &e(m, 0)));
            for i in 2..n - 1 {
                v.push(sub(&e(m, i), &e(m, i - 1)));
            }
            v.truncate(n);
            v
        }
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A finite root system with a fixed total order on positive roots
/// (height, then lexicographic in simple-root coordinates).
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub spec: CartanSpec,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`: row `i` lists the values
    /// of the coroot `h_i` on all simple roots.
    pub cartan: Vec<Vec<i64>>,
    /// Normalized invariant form on the simple roots (block diagonal
    /// over factors). Only ratios of root norms are ever used.
    simple_gram: Vec<Vec<Rat>>,
    /// Positive roots in simple-root coordinates, sorted by (height, lex).
    pub positive_roots: Vec<Vec<i64>>,
    root_index: BTreeMap<Vec<i64>, usize>,
}

/// A root with a sign: `(index, true)` is the positive root
/// `positive_roots[index]`, `(index, false)` its negative.
pub type SignedRoot = (usize, bool);

pub fn build_root_system(spec: &CartanSpec) -> RootSystem {
    let rank = spec.rank();
    let mut cartan = vec![vec![0i64; rank]; rank];
    let mut simple_gram = vec![vec![Rat::zero(); rank]; rank];
    let mut positive_roots: Vec<Vec<i64>> = Vec::new();

    let mut offset = 0usize;
    for &(letter, n) in &spec.factors {
        let realization = simple_root_realization(letter, n);
        for i in 0..n {
            for j in 0..n {
                let g = dot(&realization[i], &realization[j]);
                simple_gram[offset + i][offset + j] = g.clone();
                if i == j {
                    cartan[offset + i][offset + j] = 2;
                } else {
                    let norm_i = dot(&realization[i], &realization[i]);
                    let c = rat_int(2) * &g / norm_i;
                    assert!(c.denom().is_one(), "Cartan integer not integral");
                    let c: i64 = c.numer().try_into().expect("Cartan integer overflow");
                    cartan[offset + i][offset + j] = c;
                }
            }
        }
        // closure algorithm within this factor, embedded at `offset`
        let embed = |local: &[i64]| -> Vec<i64> {
            let mut v = vec![0i64; rank];
            v[offset..offset + n].copy_from_slice(local);
            v
        };
        let mut found: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut member: BTreeMap<Vec<i64>, ()> = found.iter().cloned().map(|v| (v, ())).collect();
        let is_root_local = |coords: &[i64], member: &BTreeMap<Vec<i64>, ()>| -> bool {
            if coords.iter().all(|&c| c >= 0) && member.contains_key(coords) {
                return true;
            }
            if coords.iter().all(|&c| c <= 0) {
                let neg: Vec<i64> = coords.iter().map(|&c| -c).collect();
                return member.contains_key(&neg);
            }
            false
        };
        let mut frontier = found.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..n {
                    // p = depth of the downward alpha_i-string through beta
                    let mut p = 0i64;
                    loop {
                        let down: Vec<i64> = beta
                            .iter()
                            .enumerate()
                            .map(|(j, &c)| if j == i { c - (p + 1) } else { c })
                            .collect();
                        if is_root_local(&down, &member) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n)
                        .map(|j| beta[j] * cartan[offset + i][offset + j])
                        .sum();
                    if p - pairing >= 1 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !member.contains_key(&up) {
                            member.insert(up.clone(), ());
                            found.push(up.clone());
                            next.push(up);
                        }
                    }
                }
            }
            frontier = next;
        }
        positive_roots.extend(found.iter().map(|v| embed(v)));
        offset += n;
    }

    positive_roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    let root_index = positive_roots
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    RootSystem {
        spec: spec.clone(),
        rank,
        cartan,
        simple_gram,
        positive_roots,
        root_index,
    }
}

impl RootSystem {
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn height(coords: &[i64]) -> i64 {
        coords.iter().sum()
    }

    /// Looks up arbitrary (possibly negative) coordinates as a signed root.
    pub fn signed_root_of(&self, coords: &[i64]) -> Option<SignedRoot> {
        if coords.iter().all(|&c| c == 0) {
            return None;
        }
        if coords.iter().all(|&c| c >= 0) {
            return self.root_index.get(coords).map(|&i| (i, true));
        }
        if coords.iter().all(|&c| c <= 0) {
            let neg: Vec<i64> = coords.iter().map(|&c| -c).collect();
            return self.root_index.get(&neg).map(|&i| (i, false));
        }
        None
    }

    pub fn coords_of(&self, root: SignedRoot) -> Vec<i64> {
        let (idx, pos) = root;
        let sign = if pos { 1 } else { -1 };
        self.positive_roots[idx].iter().map(|&c| sign * c).collect()
    }

    /// `<beta, alpha_i^vee>` for `beta` in simple-root coordinates.
    pub fn coroot_pairing(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| beta[j] * self.cartan[i][j]).sum()
    }

    /// Normalized invariant norm `(gamma, gamma)` from coordinates.
    pub fn norm(&self, coords: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if coords[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if coords[j] != 0 {
                    acc += rat_int(coords[i]) * rat_int(coords[j]) * &self.simple_gram[i][j];
                }
            }
        }
        acc
    }

    /// Largest `k >= 0` with `beta - k*alpha` a root.
    pub fn string_down(&self, beta: &[i64], alpha: &[i64]) -> i64 {
        let mut p = 0i64;
        loop {
            let down: Vec<i64> = beta
                .iter()
                .zip(alpha)
                .map(|(&b, &a)| b - (p + 1) * a)
                .collect();
            if self.signed_root_of(&down).is_some() {
                p += 1;
            } else {
                break;
            }
        }
        p
    }
}

/// Basis labels of the Chevalley basis: `e` and `f` indexed by positive
/// roots, `h` by simple coroots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    E(usize),
    F(usize),
    H(usize),
}

/// A semisimple Lie algebra in a Chevalley basis with integral structure
/// constants. Basis order: all `e`, then all `f`, then `h_0..h_{rank-1}`.
#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    pub rs: RootSystem,
    pub dim: usize,
    npos: usize,
    /// `N(a,b)` for positive-root pairs `a < b` (by index) whose sum is a
    /// root; derived constants come out of [`ChevalleyBasis::n_const`].
    n_pos: BTreeMap<(usize, usize), i64>,
    /// Coroot of each positive root in terms of the simple coroots.
    pub coroot: Vec<Vec<i64>>,
}

pub fn build_chevalley_basis(rs: &RootSystem) -> ChevalleyBasis {
    let npos = rs.num_positive();
    let mut cb = ChevalleyBasis {
        rs: rs.clone(),
        dim: 2 * npos + rs.rank,
        npos,
        n_pos: BTreeMap::new(),
        coroot: Vec::new(),
    };

    // coroots: h_gamma = sum_i c_i (alpha_i,alpha_i)/(gamma,gamma) h_i
    for g in 0..npos {
        let coords = &rs.positive_roots[g];
        let gnorm = rs.norm(coords);
        let mut row = Vec::with_capacity(rs.rank);
        for i in 0..rs.rank {
            let v = rat_int(coords[i]) * &rs.simple_gram[i][i] / &gnorm;
            assert!(v.denom().is_one(), "coroot coefficient not integral");
            row.push(v.numer().try_into().expect("coroot coefficient overflow"));
        }
        cb.coroot.push(row);
    }

    // structure constants, by increasing height of the sum
    for g in 0..npos {
        let gamma = rs.positive_roots[g].clone();
        if RootSystem::height(&gamma) < 2 {
            continue;
        }
        // special pairs (a, b), a < b, summing to gamma
        let mut specials: Vec<(usize, usize)> = Vec::new();
        for a in 0..npos {
            for b in (a + 1)..npos {
                let sum: Vec<i64> = rs.positive_roots[a]
                    .iter()
                    .zip(&rs.positive_roots[b])
                    .map(|(x, y)| x + y)
                    .collect();
                if sum == gamma {
                    specials.push((a, b));
                }
            }
        }
        assert!(
            !specials.is_empty(),
            "non-simple root with no decomposition"
        );
        let (es_a, es_b) = specials[0]; // minimal first summand: extraspecial
        let p = rs.string_down(&rs.positive_roots[es_b], &rs.positive_roots[es_a]);
        cb.n_pos.insert((es_a, es_b), p + 1);
        for &(a, b) in specials.iter().skip(1) {
            let n = cb.derive_special(a, b, es_a, es_b, g);
            cb.n_pos.insert((a, b), n);
        }
    }

    // integrality certificate: |N| = p+1 on every positive special pair
    for (&(a, b), &n) in &cb.n_pos {
        let p = rs.string_down(&rs.positive_roots[b], &rs.positive_roots[a]);
        assert_eq!(n.abs(), p + 1, "|N| != p+1 on pair ({a},{b})");
    }
    cb
}

impl ChevalleyBasis {
    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn label_of(&self, idx: usize) -> Label {
        if idx < self.npos {
            Label::E(idx)
        } else if idx < 2 * self.npos {
            Label::F(idx - self.npos)
        } else {
            Label::H(idx - 2 * self.npos)
        }
    }

    pub fn index_of(&self, label: Label) -> usize {
        match label {
            Label::E(g) => g,
            Label::F(g) => self.npos + g,
            Label::H(i) => 2 * self.npos + i,
        }
    }

    fn signed_coords(&self, root: SignedRoot) -> Vec<i64> {
        self.rs.coords_of(root)
    }

    fn root_basis_index(&self, root: SignedRoot) -> usize {
        let (idx, pos) = root;
        if pos {
            idx
        } else {
            self.npos + idx
        }
    }

    /// Structure constant `N(x,y)` for signed roots with `x + y != 0`;
    /// zero when the sum is not a root.
    pub fn n_const(&self, x: SignedRoot, y: SignedRoot) -> i64 {
        let cx = self.signed_coords(x);
        let cy = self.signed_coords(y);
        let sum: Vec<i64> = cx.iter().zip(&cy).map(|(a, b)| a + b).collect();
        assert!(
            sum.iter().any(|&c| c != 0),
            "n_const called on opposite roots"
        );
        if self.rs.signed_root_of(&sum).is_none() {
            return 0;
        }
        match (x.1, y.1) {
            (true, true) => {
                if x.0 < y.0 {
                    *self.n_pos.get(&(x.0, y.0)).unwrap_or(&0)
                } else {
                    -*self.n_pos.get(&(y.0, x.0)).unwrap_or(&0)
                }
            }
            (false, false) => -self.n_const((x.0, true), (y.0, true)),
            _ => {
                // rotate through the zero-sum triple (x, y, z); exactly one
                // of the other two pairs has equal signs
                let z_coords: Vec<i64> = sum.iter().map(|&c| -c).collect();
                let z = self.rs.signed_root_of(&z_coords).expect("triple closure");
                let norm_z = self.rs.norm(&z_coords);
                if z.1 != y.1 {
                    // pair (z, x) has equal signs
                    let n_zx = self.n_const(z, x);
                    let norm_y = self.rs.norm(&cy);
                    let v = rat_int(n_zx) * norm_z / norm_y;
                    assert!(v.denom().is_one());
                    v.numer().try_into().expect("structure constant overflow")
                } else {
                    // pair (y, z) has equal signs
                    let n_yz = self.n_const(y, z);
                    let norm_x = self.rs.norm(&cx);
                    let v = rat_int(n_yz) * norm_z / norm_x;
                    assert!(v.denom().is_one());
                    v.numer().try_into().expect("structure constant overflow")
                }
            }
        }
    }

    /// Derives `N(a,b)` for a non-extraspecial special pair of the root
    /// `gamma` from the extraspecial constant via the four-term Jacobi
    /// relation on `(-a, es_a, es_b)`.
    fn derive_special(&self, a: usize, b: usize, es_a: usize, es_b: usize, gamma: usize) -> i64 {
        let rs = &self.rs;
        let ca = rs.coords_of((a, true));
        let cb = rs.coords_of((b, true));
        let ce = rs.coords_of((es_a, true));
        let ch = rs.coords_of((es_b, true));
        let n_es = *self.n_pos.get(&(es_a, es_b)).expect("extraspecial known");

        // term 1: N(-a, es_a) * N(es_a - a, es_b)
        let t1 = {
            let diff: Vec<i64> = ce.iter().zip(&ca).map(|(e, x)| e - x).collect();
            match rs.signed_root_of(&diff) {
                None => 0i64,
                Some(d) => {
                    let n1 = self.n_const((a, false), (es_a, true));
                    let n2 = self.n_const(d, (es_b, true));
                    n1 * n2
                }
            }
        };
        // term 2: N(es_b, -a) * N(es_b - a, es_a)
        let t2 = {
            let diff: Vec<i64> = ch.iter().zip(&ca).map(|(e, x)| e - x).collect();
            match rs.signed_root_of(&diff) {
                None => 0i64,
                Some(d) => {
                    let n1 = self.n_const((es_b, true), (a, false));
                    let n2 = self.n_const(d, (es_a, true));
                    n1 * n2
                }
            }
        };
        let norm_gamma = rs.norm(&rs.positive_roots[gamma]);
        let norm_b = rs.norm(&cb);
        let v = norm_gamma / norm_b * rat_int(t1 + t2) / rat_int(n_es);
        assert!(
            v.denom().is_one(),
            "derived structure constant not integral"
        );
        v.numer().try_into().expect("structure constant overflow")
    }

    /// Bracket of two basis elements, as a sparse combination of basis
    /// elements (indices sorted ascending).
    pub fn bracket(&self, a: Label, b: Label) -> Vec<(usize, Rat)> {
        match (a, b) {
            (Label::H(_), Label::H(_)) => Vec::new(),
            (Label::H(i), Label::E(g)) => {
                let v = self.rs.coroot_pairing(&self.rs.positive_roots[g], i);
                if v == 0 {
                    Vec::new()
                } else {
                    vec![(self.index_of(Label::E(g)), rat_int(v))]
                }
            }
            (Label::H(i), Label::F(g)) => {
                let v = -self.rs.coroot_pairing(&self.rs.positive_roots[g], i);
                if v == 0 {
                    Vec::new()
                } else {
                    vec![(self.index_of(Label::F(g)), rat_int(v))]
                }
            }
            (Label::E(_) | Label::F(_), Label::H(_)) => negate(self.bracket(b, a)),
            (Label::E(g), Label::F(h)) if g == h => self.coroot[g]
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (self.index_of(Label::H(i)), rat_int(c)))
                .collect(),
            (Label::F(g), Label::E(h)) if g == h => self.coroot[g]
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (self.index_of(Label::H(i)), rat_int(-c)))
                .collect(),
            _ => {
                let x = match a {
                    Label::E(g) => (g, true),
                    Label::F(g) => (g, false),
                    Label::H(_) => unreachable!(),
                };
                let y = match b {
                    Label::E(g) => (g, true),
                    Label::F(g) => (g, false),
                    Label::H(_) => unreachable!(),
                };
                let sum: Vec<i64> = self
                    .signed_coords(x)
                    .iter()
                    .zip(&self.signed_coords(y))
                    .map(|(p, q)| p + q)
                    .collect();
                match self.rs.signed_root_of(&sum) {
                    None => Vec::new(),
                    Some(z) => {
                        let n = self.n_const(x, y);
                        if n == 0 {
                            Vec::new()
                        } else {
                            vec![(self.root_basis_index(z), rat_int(n))]
                        }
                    }
                }
            }
        }
    }

    pub fn bracket_idx(&self, a: usize, b: usize) -> Vec<(usize, Rat)> {
        self.bracket(self.label_of(a), self.label_of(b))
    }

    /// Bracket of two arbitrary elements given densely in basis coordinates.
    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> RatVector {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in self.bracket_idx(i, j) {
                    out[k] += xi * yj * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)` for `x` in dense basis coordinates.
    pub fn ad(&self, x: &[Rat]) -> SparseRatMatrix {
        let mut m = SparseRatMatrix::zero(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.bracket_idx(i, j) {
                    m.add_to(k, j, &(xi * &c));
                }
            }
        }
        m
    }

    fn ad_basis(&self, i: usize) -> SparseRatMatrix {
        let mut m = SparseRatMatrix::zero(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.bracket_idx(i, j) {
                m.add_to(k, j, &c);
            }
        }
        m
    }
}

fn negate(mut v: Vec<(usize, Rat)>) -> Vec<(usize, Rat)> {
    for (_, c) in &mut v {
        *c = -c.clone();
    }
    v
}

/// The genuine Killing form `tr(ad x ∘ ad y)` on the Chevalley basis,
/// plus the restriction to the Cartan and its inverse (which induces the
/// form on weight space).
#[derive(Debug, Clone)]
pub struct KillingForm {
    pub gram: SparseRatMatrix,
    pub h_gram: SparseRatMatrix,
    pub h_gram_inv: SparseRatMatrix,
}

pub fn killing_form(cb: &ChevalleyBasis) -> KillingForm {
    let dim = cb.dim;
    let ads: Vec<SparseRatMatrix> = (0..dim).map(|i| cb.ad_basis(i)).collect();
    let mut gram = SparseRatMatrix::zero(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            // tr(A B) = sum over nonzeros of B of A[c,r] B[r,c]
            let mut acc = Rat::zero();
            for (r, c, v) in ads[j].iter() {
                let a = ads[i].get(c, r);
                if !a.is_zero() {
                    acc += a * v;
                }
            }
            if !acc.is_zero() {
                gram.set(i, j, acc.clone());
                if i != j {
                    gram.set(j, i, acc);
                }
            }
        }
    }
    let rank = cb.rank();
    let mut h_gram = SparseRatMatrix::zero(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            let v = gram.get(cb.index_of(Label::H(i)), cb.index_of(Label::H(j)));
            h_gram.set(i, j, v);
        }
    }
    let h_gram_inv = h_gram
        .invert()
        .expect("Killing form degenerate on the Cartan");
    KillingForm {
        gram,
        h_gram,
        h_gram_inv,
    }
}

impl KillingForm {
    /// Form on weight space: weights are given by their values on the
    /// simple coroots `h_i`; `(mu, eta) = mu^T K^{-1} eta`.
    pub fn weight_form(&self, mu: &[Rat], eta: &[Rat]) -> Rat {
        let tmp = self.h_gram_inv.mul_vec(eta);
        dot(mu, &tmp)
    }

    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        dot(x, &self.gram.mul_vec(y))
    }
}
