//! The affine Weyl group: reduced words, inversion sets, the decomposition
//! into a finite Weyl group element and a translation, and length-ordered
//! enumeration.
//!
//! Words are written left to right: `[i_1, ..., i_r]` denotes the product
//! `w_{i_1} ... w_{i_r}`, with generators numbered `1..=l+1` and `l+1` the
//! affine reflection.

use std::collections::HashSet;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::cterm::Character;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::qfield::Rational;
use crate::root_data::{AffineDatum, AffineRoot, CorootVector, Functional};

/// Hard cap on the number of elements produced by [`enumerate`].
pub const MAX_ENUMERATION: usize = 2_000_000;

/// A word in the simple reflections, generators numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let s: Vec<String> = self.0.iter().map(|i| format!("w{i}")).collect();
        write!(f, "{}", s.join(""))
    }
}

/// An element of the affine Weyl group, carrying a reduced word and its
/// action matrices. Equality and hashing use the normal form
/// `(classical part, translation)`.
#[derive(Clone, Debug)]
pub struct WeylElement {
    word: Vec<usize>,
    root_action: IntMatrix,
    coroot_action: IntMatrix,
    coroot_action_inv: IntMatrix,
    classical: IntMatrix,
    translation: Vec<i64>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.classical == other.classical && self.translation == other.translation
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.classical.hash(state);
        self.translation.hash(state);
    }
}

/// `w^{-1} = w_1 T_H` with `w_1` in the finite Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub classical: WeylElement,
    pub translation: Vec<i64>,
}

fn is_positive_coords(m: &[i64]) -> bool {
    m.iter().all(|&x| x >= 0)
}

impl WeylElement {
    pub fn identity(d: &AffineDatum) -> Self {
        Self::from_reduced(d, Vec::new())
    }

    /// Build from a word already known to be reduced (0-based letters).
    fn from_reduced(d: &AffineDatum, word: Vec<usize>) -> Self {
        let l1 = d.num_generators();
        let dim = d.dim();
        let mut root_action = IntMatrix::identity(l1);
        let mut coroot_action = IntMatrix::identity(dim);
        let mut coroot_action_inv = IntMatrix::identity(dim);
        for &i in &word {
            root_action = root_action.mul(d.refl_root(i));
            coroot_action = coroot_action.mul(d.refl_coroot(i));
            coroot_action_inv = d.refl_coroot(i).mul(&coroot_action_inv);
        }
        Self::with_matrices(d, word, root_action, coroot_action, coroot_action_inv)
    }

    fn with_matrices(
        d: &AffineDatum,
        word: Vec<usize>,
        root_action: IntMatrix,
        coroot_action: IntMatrix,
        coroot_action_inv: IntMatrix,
    ) -> Self {
        let l = d.rank();
        // w^{-1}(D) = D - w_1 H - ((H,H)/2) c, and the classical block of w is w_1^{-1}.
        let classical = coroot_action_inv.block(l);
        let col_d: Vec<i64> = (0..l).map(|r| coroot_action_inv.get(r, l + 1)).collect();
        let w1_inv = coroot_action.block(l);
        let translation = w1_inv.mul_vec(&col_d).into_iter().map(|x| -x).collect();
        Self { word, root_action, coroot_action, coroot_action_inv, classical, translation }
    }

    fn times_generator(&self, d: &AffineDatum, i: usize) -> Self {
        let mut word = self.word.clone();
        word.push(i);
        Self::with_matrices(
            d,
            word,
            self.root_action.mul(d.refl_root(i)),
            self.coroot_action.mul(d.refl_coroot(i)),
            d.refl_coroot(i).mul(&self.coroot_action_inv),
        )
    }

    /// Reduce an arbitrary word (generators numbered from 1).
    pub fn reduce(d: &AffineDatum, word: &[usize]) -> Result<Self> {
        let n = d.num_generators();
        let mut cur = Self::identity(d);
        for &g in word {
            if g == 0 || g > n {
                return Err(Error::InvalidGenerator { index: g, max: n });
            }
            let i = g - 1;
            let img = cur.root_action.column(i);
            if is_positive_coords(&img) {
                cur = cur.times_generator(d, i);
                continue;
            }
            // Exchange condition: -w(alpha_i) is an inversion of w; delete that letter.
            let target: Vec<i64> = img.iter().map(|x| -x).collect();
            let mut prefix = IntMatrix::identity(n);
            let mut drop = None;
            for (k, &letter) in cur.word.iter().enumerate() {
                if prefix.column(letter) == target {
                    drop = Some(k);
                    break;
                }
                prefix = prefix.mul(d.refl_root(letter));
            }
            let k = drop.expect("exchange condition");
            let mut w = cur.word.clone();
            w.remove(k);
            cur = Self::from_reduced(d, w);
        }
        Ok(cur)
    }

    /// Alias of [`Self::reduce`].
    pub fn from_word(d: &AffineDatum, word: &[usize]) -> Result<Self> {
        Self::reduce(d, word)
    }

    pub fn simple(d: &AffineDatum, i: usize) -> Result<Self> {
        Self::reduce(d, &[i])
    }

    /// Recover an element from its action on the extended Cartan subalgebra
    /// by peeling off right descents.
    pub(crate) fn from_action(d: &AffineDatum, m: &IntMatrix, m_inv: &IntMatrix) -> Result<Self> {
        let dim = d.dim();
        let l = d.rank();
        let id = IntMatrix::identity(dim);
        let (mut cur, mut cur_inv) = (m.clone(), m_inv.clone());
        let mut suffix = Vec::new();
        let cap = 100_000;
        while cur != id {
            if suffix.len() > cap {
                return Err(Error::NotInWeylGroup);
            }
            let mut found = None;
            for i in 0..d.num_generators() {
                let a = d.simple_root_ints(i);
                // (v alpha_i)(x) = alpha_i(v^{-1} x)
                let f: Vec<i64> = (0..dim).map(|k| (0..dim).map(|r| a[r] * cur_inv.get(r, k)).sum()).collect();
                let n = f[l + 1];
                let negative = if n != 0 {
                    n < 0
                } else {
                    let root = d
                        .root_from_functional(&Functional::from_ints(&f))
                        .map_err(|_| Error::NotInWeylGroup)?;
                    !root.is_positive()
                };
                if negative {
                    found = Some(i);
                    break;
                }
            }
            let i = found.ok_or(Error::NotInWeylGroup)?;
            cur = cur.mul(d.refl_coroot(i));
            cur_inv = d.refl_coroot(i).mul(&cur_inv);
            suffix.push(i);
        }
        suffix.reverse();
        let w = Self::from_reduced(d, suffix);
        if &w.coroot_action != m {
            return Err(Error::NotInWeylGroup);
        }
        Ok(w)
    }

    /// The translation `T_H` for `H` in the classical coroot lattice.
    pub fn translation(d: &AffineDatum, h: &[i64]) -> Result<Self> {
        if h.len() != d.rank() {
            return Err(Error::DimensionMismatch { expected: d.rank(), found: h.len() });
        }
        let neg: Vec<i64> = h.iter().map(|x| -x).collect();
        Self::from_action(d, &d.translation_matrix(h), &d.translation_matrix(&neg))
    }

    /// Reduced word, generators numbered from 1.
    pub fn word(&self) -> Word {
        Word(self.word.iter().map(|i| i + 1).collect())
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn inverse(&self, d: &AffineDatum) -> Self {
        Self::from_reduced(d, self.word.iter().rev().copied().collect())
    }

    pub fn mul(&self, d: &AffineDatum, other: &Self) -> Self {
        let w: Vec<usize> = self.word.iter().chain(&other.word).map(|i| i + 1).collect();
        Self::reduce(d, &w).expect("valid generators")
    }

    /// Normal form: the classical part `w_1` as a matrix on the classical
    /// coroot basis, and the translation `H`, where `w^{-1} = w_1 T_H`.
    pub fn normal_form(&self) -> (Vec<Vec<i64>>, Vec<i64>) {
        let c = &self.classical;
        let rows = (0..c.rows).map(|i| (0..c.cols).map(|j| c.get(i, j)).collect()).collect();
        (rows, self.translation.clone())
    }

    /// Classical part acting on classical root coordinates.
    pub fn classical_root_matrix(&self, d: &AffineDatum) -> Vec<Vec<i64>> {
        // Roots of the classical part: columns are w_1(alpha_j) in simple-root coordinates.
        let l = d.rank();
        let dec = self.decompose(d).expect("element decomposes");
        (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let a = d.simple_root(j);
                        dec.classical.act_on_root(d, &a).unwrap().classical[i]
                    })
                    .collect()
            })
            .collect()
    }

    pub fn translation_part(&self) -> &[i64] {
        &self.translation
    }

    pub fn decompose(&self, d: &AffineDatum) -> Result<Decomposition> {
        let l = d.rank();
        let dim = d.dim();
        let mut m = IntMatrix::identity(dim);
        let mut m_inv = IntMatrix::identity(dim);
        for i in 0..l {
            for j in 0..l {
                m.set(i, j, self.classical.get(i, j));
                m_inv.set(i, j, self.coroot_action.get(i, j));
            }
        }
        let classical = Self::from_action(d, &m, &m_inv)?;
        Ok(Decomposition { classical, translation: self.translation.clone() })
    }

    /// Rebuild `w` from its decomposition: `w = (w_1 T_H)^{-1}`.
    pub fn recompose(d: &AffineDatum, dec: &Decomposition) -> Result<Self> {
        let t = Self::translation(d, &dec.translation)?;
        Ok(dec.classical.mul(d, &t).inverse(d))
    }

    pub fn act_on_root(&self, d: &AffineDatum, a: &AffineRoot) -> Result<AffineRoot> {
        if a.classical.len() != d.rank() {
            return Err(Error::DimensionMismatch { expected: d.rank(), found: a.classical.len() });
        }
        let m = self.root_action.mul_vec(&d.to_simple_coords(a));
        Ok(d.root_from_simple_coords(&m))
    }

    pub fn act_on_coroot(&self, d: &AffineDatum, x: &CorootVector) -> Result<CorootVector> {
        Ok(CorootVector(apply_rational(&self.coroot_action, &x.0, d.dim())?))
    }

    pub fn inverse_act_on_coroot(&self, d: &AffineDatum, x: &CorootVector) -> Result<CorootVector> {
        Ok(CorootVector(apply_rational(&self.coroot_action_inv, &x.0, d.dim())?))
    }

    /// Contragredient action `(w f)(x) = f(w^{-1} x)`.
    pub fn act_on_functional(&self, d: &AffineDatum, f: &Functional) -> Result<Functional> {
        let dim = d.dim();
        if f.0.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: f.0.len() });
        }
        let m = &self.coroot_action_inv;
        Ok(Functional(
            (0..dim)
                .map(|k| {
                    (0..dim)
                        .filter(|&r| m.get(r, k) != 0)
                        .map(|r| &f.0[r] * Rational::from_integer(m.get(r, k).into()))
                        .sum()
                })
                .collect(),
        ))
    }

    /// The inversion set `{a > 0 : w^{-1} a < 0}`, listed as
    /// `beta_j = w_{i_r} ... w_{i_{j+1}} alpha_{i_j}` for `w = w_{i_r} ... w_{i_1}`.
    pub fn inversion_set(&self, d: &AffineDatum) -> Vec<AffineRoot> {
        let n = d.num_generators();
        let mut prefix = IntMatrix::identity(n);
        let mut out = Vec::with_capacity(self.word.len());
        for &letter in &self.word {
            out.push(d.root_from_simple_coords(&prefix.column(letter)));
            prefix = prefix.mul(d.refl_root(letter));
        }
        out.reverse();
        out
    }

    /// The inversion set of `w^{-1}`, `{a > 0 : w a < 0}`, listed as
    /// `gamma_j = w_{i_1} ... w_{i_{j-1}} alpha_{i_j}`.
    pub fn inverse_inversion_set(&self, d: &AffineDatum) -> Vec<AffineRoot> {
        let n = d.num_generators();
        let mut prefix = IntMatrix::identity(n);
        let mut out = Vec::with_capacity(self.word.len());
        for &letter in self.word.iter().rev() {
            out.push(d.root_from_simple_coords(&prefix.column(letter)));
            prefix = prefix.mul(d.refl_root(letter));
        }
        out
    }
}

fn apply_rational(m: &IntMatrix, x: &[Rational], dim: usize) -> Result<Vec<Rational>> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: x.len() });
    }
    Ok((0..dim)
        .map(|r| {
            (0..dim)
                .filter(|&k| m.get(r, k) != 0 && !x[k].is_zero())
                .map(|k| &x[k] * Rational::from_integer(m.get(r, k).into()))
                .sum()
        })
        .collect())
}

/// Shifted action `w o chi = w(chi + rho) - rho`.
pub fn shifted_action(d: &AffineDatum, w: &WeylElement, chi: &Character) -> Result<Character> {
    let rho = d.rho();
    let f = chi.to_functional(d)?.add(&rho);
    let g = w.act_on_functional(d, &f)?.sub(&rho);
    Ok(Character::from_functional(d, &g))
}

/// All elements of length at most `max_len`, ordered by length and then by
/// lexicographically smallest reduced word.
pub fn enumerate(d: &AffineDatum, max_len: usize) -> Result<Vec<WeylElement>> {
    let mut seen: HashSet<(IntMatrix, Vec<i64>)> = HashSet::new();
    let id = WeylElement::identity(d);
    seen.insert((id.classical.clone(), id.translation.clone()));
    let mut out = vec![id.clone()];
    let mut shell = vec![id];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &shell {
            for i in 0..d.num_generators() {
                if !is_positive_coords(&w.root_action.column(i)) {
                    continue;
                }
                let v = w.times_generator(d, i);
                if seen.insert((v.classical.clone(), v.translation.clone())) {
                    next.push(v);
                }
            }
        }
        if out.len() + next.len() > MAX_ENUMERATION {
            return Err(Error::EnumerationTooLarge(format!(
                "more than {MAX_ENUMERATION} elements up to length {max_len}"
            )));
        }
        // Predecessors are visited in sorted order, so first discovery is lexicographically minimal.
        next.sort_by(|a, b| a.word.cmp(&b.word));
        out.extend(next.iter().cloned());
        if next.is_empty() {
            break;
        }
        shell = next;
    }
    Ok(out)
}

/// Length of a translation `T_H`, computed from a reduced word.
pub fn translation_length(d: &AffineDatum, h: &[i64]) -> Result<usize> {
    Ok(WeylElement::translation(d, h)?.length())
}

/// Elements of the finite Weyl group as matrices on the classical coroot basis.
pub(crate) fn finite_weyl_matrices(d: &AffineDatum, limit: usize) -> Result<Vec<IntMatrix>> {
    let l = d.rank();
    let gens: Vec<IntMatrix> = (0..l).map(|i| d.refl_coroot(i).block(l)).collect();
    let id = IntMatrix::identity(l);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(m) = queue.pop() {
        for g in &gens {
            let n = m.mul(g);
            if seen.insert(n.clone()) {
                if seen.len() > limit {
                    return Err(Error::EnumerationTooLarge(format!("finite Weyl group exceeds {limit}")));
                }
                queue.push(n);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

pub(crate) fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::int;
    use crate::root_data::CartanType;
    use proptest::prelude::*;

    fn a1() -> AffineDatum {
        AffineDatum::build(CartanType::A, 1).unwrap()
    }
    fn a2() -> AffineDatum {
        AffineDatum::build(CartanType::A, 2).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let d = a1();
        assert!(WeylElement::reduce(&d, &[1, 2, 2, 1]).unwrap().is_identity());
        let w = WeylElement::reduce(&d, &[1, 2, 1]).unwrap();
        assert_eq!(w.length(), 3);
        let d2 = a2();
        let x = WeylElement::reduce(&d2, &[1, 2, 1]).unwrap();
        let y = WeylElement::reduce(&d2, &[2, 1, 2]).unwrap();
        assert_eq!(x, y);
        assert!(matches!(WeylElement::reduce(&d, &[3]), Err(Error::InvalidGenerator { index: 3, max: 2 })));
    }

    #[test]
    fn inversion_set_example() {
        let d = a1();
        let w = WeylElement::reduce(&d, &[1, 2]).unwrap();
        let mut inv = w.inversion_set(&d);
        inv.sort();
        let mut expect = vec![AffineRoot::new(vec![1], 0), AffineRoot::new(vec![1], 1)];
        expect.sort();
        assert_eq!(inv, expect);
    }

    #[test]
    fn decompose_example() {
        let d = a1();
        let w = WeylElement::reduce(&d, &[2, 1]).unwrap();
        let dec = w.decompose(&d).unwrap();
        assert!(dec.classical.is_identity());
        assert_eq!(dec.translation, vec![1]);
        // T_{h_1} = w_1 w_2
        let t = WeylElement::translation(&d, &[1]).unwrap();
        assert_eq!(t, WeylElement::reduce(&d, &[1, 2]).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let d = a1();
        for l in 1..=8 {
            assert_eq!(enumerate(&d, l).unwrap().len(), 2 * l + 1);
        }
        assert_eq!(enumerate(&a2(), 2).unwrap().len(), 10);
    }

    #[test]
    fn enumeration_words_are_lexicographically_minimal() {
        let d = a2();
        let els = enumerate(&d, 3).unwrap();
        assert_eq!(els[1].word(), Word(vec![1]));
        assert_eq!(els[4].word(), Word(vec![1, 2]));
        for w in &els {
            // brute force: no smaller reduced word of the same element
            let len = w.length();
            let mut all = vec![vec![]];
            for _ in 0..len {
                all = all
                    .into_iter()
                    .flat_map(|p: Vec<usize>| (1..=3).map(move |g| [p.clone(), vec![g]].concat()))
                    .collect();
            }
            let min = all.into_iter().filter(|x| &WeylElement::reduce(&d, x).unwrap() == w).min().unwrap();
            assert_eq!(w.word(), Word(min));
        }
    }

    #[test]
    fn shifted_action_example() {
        let d = a1();
        let chi = Character::from_ints(&[-3, -3]);
        let w = WeylElement::simple(&d, 1).unwrap();
        let s = shifted_action(&d, &w, &chi).unwrap();
        assert_eq!(s.values(), &[int(1), int(-7)]);
        assert_eq!(s.on_delta(&d), chi.on_delta(&d));
    }

    #[test]
    fn translation_lengths_match_closed_form() {
        // Oracle: l(T_H) = sum over positive classical roots of |alpha(H)|.
        for (k, l) in [(CartanType::A, 2), (CartanType::C, 2), (CartanType::G, 2)] {
            let d = AffineDatum::build(k, l).unwrap();
            let fin = d.finite();
            for x in -2i64..=2 {
                for y in -2i64..=2 {
                    let h = [x, y];
                    let expect: i64 = fin
                        .positive_roots()
                        .iter()
                        .map(|a| (0..l).map(|i| (0..l).map(|j| a[j] * fin.cartan_matrix()[i][j]).sum::<i64>() * h[i]).sum::<i64>().abs())
                        .sum();
                    assert_eq!(translation_length(&d, &h).unwrap() as i64, expect, "{k}{l} H={h:?}");
                }
            }
        }
    }

    #[test]
    fn finite_weyl_orders() {
        for (k, l) in [(CartanType::A, 2), (CartanType::C, 2), (CartanType::G, 2), (CartanType::B, 3)] {
            let d = AffineDatum::build(k, l).unwrap();
            assert_eq!(finite_weyl_matrices(&d, 10_000).unwrap().len() as u64, d.finite().weyl_order());
        }
    }

    fn datum() -> impl Strategy<Value = AffineDatum> {
        prop_oneof![
            Just(a1()),
            Just(a2()),
            Just(AffineDatum::build(CartanType::C, 2).unwrap()),
            Just(AffineDatum::build(CartanType::G, 2).unwrap()),
        ]
    }

    fn word() -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(1usize..=3, 0..9)
    }

    fn fit(d: &AffineDatum, w: &[usize]) -> Vec<usize> {
        w.iter().map(|&g| (g - 1) % d.num_generators() + 1).collect()
    }

    proptest! {
        #[test]
        fn inversion_set_matches_definition(d in datum(), w in word()) {
            let w = WeylElement::reduce(&d, &fit(&d, &w)).unwrap();
            let inv = w.inversion_set(&d);
            prop_assert_eq!(inv.len(), w.length());
            let winv = w.inverse(&d);
            let gammas = w.inverse_inversion_set(&d);
            for (b, g) in inv.iter().zip(&gammas) {
                prop_assert!(b.is_positive());
                let img = winv.act_on_root(&d, b).unwrap();
                prop_assert!(!img.is_positive());
                prop_assert_eq!(&img.neg(), g);
            }
        }

        #[test]
        fn coroot_equivariance(d in datum(), w in word(), idx in 0usize..100) {
            let w = WeylElement::reduce(&d, &fit(&d, &w)).unwrap();
            let roots = d.positive_real_roots(2);
            let a = &roots[idx % roots.len()];
            let wa = w.act_on_root(&d, a).unwrap();
            prop_assert_eq!(d.coroot_of(&wa).unwrap(), w.act_on_coroot(&d, &d.coroot_of(a).unwrap()).unwrap());
        }

        #[test]
        fn form_is_invariant(d in datum(), w in word(), x in proptest::collection::vec(-4i64..4, 4)) {
            let w = WeylElement::reduce(&d, &fit(&d, &w)).unwrap();
            let x = CorootVector::from_ints(&x[..d.dim()]);
            let wx = w.act_on_coroot(&d, &x).unwrap();
            prop_assert_eq!(d.bilinear(&wx, &wx).unwrap(), d.bilinear(&x, &x).unwrap());
        }

        #[test]
        fn decomposition_round_trip(d in datum(), w in word()) {
            let w = WeylElement::reduce(&d, &fit(&d, &w)).unwrap();
            let dec = w.decompose(&d).unwrap();
            prop_assert_eq!(WeylElement::recompose(&d, &dec).unwrap(), w.clone());
            // The matrix of w^{-1} equals w_1 composed with T_H.
            let t = d.translation_matrix(&dec.translation);
            prop_assert_eq!(dec.classical.coroot_action.mul(&t), w.coroot_action_inv.clone());
        }

        #[test]
        fn translation_formula_matches_word(d in datum(), h in proptest::collection::vec(-2i64..=2, 2)) {
            let h = &h[..d.rank()];
            let t = WeylElement::translation(&d, h).unwrap();
            for k in 0..d.dim() {
                let mut e = vec![0i64; d.dim()];
                e[k] = 1;
                let x = CorootVector::from_ints(&e);
                prop_assert_eq!(t.act_on_coroot(&d, &x).unwrap(), d.translation_action(h, &x).unwrap());
            }
        }

        #[test]
        fn shifted_action_is_an_action(d in datum(), w in word(), v in word(), c in proptest::collection::vec(-6i64..0, 3)) {
            let w = WeylElement::reduce(&d, &fit(&d, &w)).unwrap();
            let v = WeylElement::reduce(&d, &fit(&d, &v)).unwrap();
            let chi = Character::from_ints(&c[..d.num_generators()]);
            let lhs = shifted_action(&d, &w.mul(&d, &v), &chi).unwrap();
            let rhs = shifted_action(&d, &w, &shifted_action(&d, &v, &chi).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(lhs.on_delta(&d), chi.on_delta(&d));
        }

        #[test]
        fn length_is_subadditive(d in datum(), w in word(), v in word()) {
            let w = WeylElement::reduce(&d, &fit(&d, &w)).unwrap();
            let v = WeylElement::reduce(&d, &fit(&d, &v)).unwrap();
            prop_assert!(w.mul(&d, &v).length() <= w.length() + v.length());
            prop_assert_eq!(w.inverse(&d).length(), w.length());
        }
    }
}
