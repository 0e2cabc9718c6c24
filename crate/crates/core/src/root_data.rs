//! Finite and affine root data.
//!
//! Coordinates on the extended Cartan subalgebra are always taken in the
//! basis `(h_1, ..., h_l, c, D)`, where `h_i` are the simple coroots of the
//! finite type, `c` is the canonical central element (the coroot of the
//! null root) and `D` the degree derivation. The invariant form is
//! normalised so that the highest coroot has square length 2, extended by
//! `(c, D) = 1` and `(c, c) = (D, D) = 0`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{invert, IntMatrix};
use crate::qfield::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            other => return Err(Error::UnsupportedType { kind: other.to_string(), rank: 0 }),
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Finite-type root datum.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    kind: CartanType,
    rank: usize,
    /// `cartan[i][j] = alpha_j(h_i)`.
    cartan: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i) / 2`; equal to 1 on long roots.
    half_len: Vec<Rational>,
    /// `(h_i, h_j)`.
    gram: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational>>,
    positive_roots: Vec<Vec<i64>>,
    highest_root: Vec<i64>,
    comarks: Vec<i64>,
}

fn dynkin_edges(kind: CartanType, l: usize) -> Result<Vec<(usize, usize, i64, i64)>> {
    let bad = || Err(Error::UnsupportedType { kind: kind.to_string(), rank: l });
    let chain = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1, -1, -1)).collect::<Vec<_>>();
    Ok(match kind {
        CartanType::A if l >= 1 => chain(l),
        CartanType::B if l >= 2 => {
            let mut e = chain(l - 1);
            e.push((l - 2, l - 1, -1, -2));
            e
        }
        CartanType::C if l >= 2 => {
            let mut e = chain(l - 1);
            e.push((l - 2, l - 1, -2, -1));
            e
        }
        CartanType::D if l >= 4 => {
            let mut e = chain(l - 1);
            e.push((l - 3, l - 1, -1, -1));
            e
        }
        CartanType::E if (6..=8).contains(&l) => {
            let mut e = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
            e.extend((2..l - 1).map(|i| (i, i + 1, -1, -1)));
            e
        }
        CartanType::F if l == 4 => vec![(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)],
        CartanType::G if l == 2 => vec![(0, 1, -3, -1)],
        _ => return bad(),
    })
}

impl CartanDatum {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        let l = rank;
        let mut cartan = vec![vec![0i64; l]; l];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j, aij, aji) in dynkin_edges(kind, l)? {
            cartan[i][j] = aij;
            cartan[j][i] = aji;
        }

        // Symmetrise: cartan[i][j] d_i = cartan[j][i] d_j, then scale so long roots have d = 1.
        let mut d: Vec<Option<Rational>> = vec![None; l];
        d[0] = Some(int(1));
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..l {
                if i != j && cartan[i][j] != 0 && d[j].is_none() {
                    let di = d[i].clone().unwrap();
                    d[j] = Some(di * int(cartan[i][j]) / int(cartan[j][i]));
                    queue.push_back(j);
                }
            }
        }
        let d: Vec<Rational> = d.into_iter().map(|x| x.expect("connected Dynkin diagram")).collect();
        let max = d.iter().max().unwrap().clone();
        let half_len: Vec<Rational> = d.iter().map(|x| x / &max).collect();

        let gram: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let v = int(cartan[i][j]) / &half_len[j];
                        debug_assert!(v.is_integer());
                        v.to_integer().to_i64().unwrap()
                    })
                    .collect()
            })
            .collect();

        let cartan_rat: Vec<Vec<Rational>> =
            cartan.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let cartan_inv = invert(&cartan_rat).expect("Cartan matrix is invertible");

        // All roots by closure under simple reflections.
        let reflect = |k: &[i64], i: usize| -> Vec<i64> {
            let p: i64 = (0..l).map(|j| cartan[i][j] * k[j]).sum();
            let mut out = k.to_vec();
            out[i] -= p;
            out
        };
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..l {
            let mut e = vec![0; l];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(k) = queue.pop_front() {
            for i in 0..l {
                let r = reflect(&k, i);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut positive_roots: Vec<Vec<i64>> =
            seen.into_iter().filter(|k| k.iter().all(|&x| x >= 0)).collect();
        positive_roots.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let highest_root = positive_roots.last().unwrap().clone();
        let comarks: Vec<i64> = (0..l)
            .map(|j| (int(highest_root[j]) * &half_len[j]).to_integer().to_i64().unwrap())
            .collect();

        Ok(Self { kind, rank, cartan, half_len, gram, cartan_inv, positive_roots, highest_root, comarks })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest_root
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn dual_coxeter(&self) -> i64 {
        1 + self.comarks.iter().sum::<i64>()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Positive roots in simple-root coordinates, sorted by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn is_root(&self, k: &[i64]) -> bool {
        let neg: Vec<i64> = k.iter().map(|x| -x).collect();
        self.positive_roots.iter().any(|r| r == k || *r == neg)
    }

    /// `(alpha, alpha) / 2` for a classical root.
    pub fn root_half_length(&self, k: &[i64]) -> Rational {
        let l = self.rank;
        let mut s = Rational::zero();
        for i in 0..l {
            for j in 0..l {
                if k[i] != 0 && k[j] != 0 {
                    s += int(k[i] * k[j] * self.cartan[i][j]) * &self.half_len[i];
                }
            }
        }
        s / int(2)
    }

    /// Coroot of a classical root in the basis `h_1..h_l`.
    pub fn classical_coroot(&self, k: &[i64]) -> Vec<i64> {
        let hl = self.root_half_length(k);
        (0..self.rank)
            .map(|j| (int(k[j]) * &self.half_len[j] / &hl).to_integer().to_i64().unwrap())
            .collect()
    }

    /// Order of the finite Weyl group.
    pub fn weyl_order(&self) -> u64 {
        let l = self.rank as u64;
        let fact = |n: u64| (1..=n).product::<u64>();
        match self.kind {
            CartanType::A => fact(l + 1),
            CartanType::B | CartanType::C => (1u64 << l) * fact(l),
            CartanType::D => (1u64 << (l - 1)) * fact(l),
            CartanType::E => match l {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            CartanType::F => 1152,
            CartanType::G => 12,
        }
    }

    /// Length of the longest element of the finite Weyl group.
    pub fn longest_length(&self) -> usize {
        self.positive_roots.len()
    }

    pub(crate) fn cartan_inv(&self) -> &[Vec<Rational>] {
        &self.cartan_inv
    }
}

/// A root `alpha + n delta` with `alpha` classical (possibly zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub classical: Vec<i64>,
    pub n: i64,
}

impl AffineRoot {
    pub fn new(classical: Vec<i64>, n: i64) -> Self {
        Self { classical, n }
    }

    pub fn is_imaginary(&self) -> bool {
        self.classical.iter().all(|&x| x == 0)
    }

    pub fn is_real(&self, d: &CartanDatum) -> bool {
        d.is_root(&self.classical)
    }

    /// Positivity of a real root: `n > 0`, or `n = 0` and `alpha > 0`.
    pub fn is_positive(&self) -> bool {
        self.n > 0 || (self.n == 0 && self.classical.iter().all(|&x| x >= 0) && !self.is_imaginary())
    }

    pub fn neg(&self) -> Self {
        Self { classical: self.classical.iter().map(|x| -x).collect(), n: -self.n }
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &k) in self.classical.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("a{}", i + 1)),
                -1 => parts.push(format!("-a{}", i + 1)),
                _ => parts.push(format!("{k}a{}", i + 1)),
            }
        }
        match self.n {
            0 => {}
            1 => parts.push("d".into()),
            -1 => parts.push("-d".into()),
            n => parts.push(format!("{n}d")),
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Element of the extended Cartan subalgebra in the basis `(h_1..h_l, c, D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CorootVector(pub Vec<Rational>);

/// Linear functional on the extended Cartan subalgebra, given by its values
/// on `(h_1..h_l, c, D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functional(pub Vec<Rational>);

impl CorootVector {
    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| int(x)).collect())
    }
}

impl Functional {
    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| int(x)).collect())
    }

    pub fn add(&self, o: &Functional) -> Functional {
        Functional(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Functional) -> Functional {
        Functional(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Functional {
        Functional(self.0.iter().map(|a| a * s).collect())
    }
}

/// Untwisted affinisation of a finite root datum.
#[derive(Clone, Debug)]
pub struct AffineDatum {
    finite: CartanDatum,
    /// `affine_cartan[i][j] = alpha_j(h_{alpha_i})`, indices `0..=l`.
    affine_cartan: Vec<Vec<i64>>,
    /// Simple coroots `h_{alpha_1}..h_{alpha_{l+1}}` in the extended basis.
    simple_coroots: Vec<Vec<i64>>,
    /// Simple roots as functionals on the extended basis.
    simple_roots: Vec<Vec<i64>>,
    refl_coroot: Vec<IntMatrix>,
    refl_root: Vec<IntMatrix>,
}

impl AffineDatum {
    pub fn new(finite: CartanDatum) -> Self {
        let l = finite.rank;
        let a = &finite.cartan;
        let theta = &finite.highest_root;
        let comarks = &finite.comarks;

        let mut simple_roots = Vec::with_capacity(l + 1);
        for j in 0..l {
            let mut f: Vec<i64> = (0..l).map(|i| a[i][j]).collect();
            f.extend([0, 0]);
            simple_roots.push(f);
        }
        let mut f0: Vec<i64> = (0..l).map(|i| -(0..l).map(|j| theta[j] * a[i][j]).sum::<i64>()).collect();
        f0.extend([0, 1]);
        simple_roots.push(f0);

        let mut simple_coroots = Vec::with_capacity(l + 1);
        for i in 0..l {
            let mut v = vec![0; l + 2];
            v[i] = 1;
            simple_coroots.push(v);
        }
        // The highest root is long, so its affine coroot is -h_theta + c.
        let mut v0: Vec<i64> = comarks.iter().map(|x| -x).collect();
        v0.extend([1, 0]);
        simple_coroots.push(v0);

        let affine_cartan: Vec<Vec<i64>> = (0..=l)
            .map(|i| {
                (0..=l)
                    .map(|j| (0..l + 2).map(|k| simple_roots[j][k] * simple_coroots[i][k]).sum())
                    .collect()
            })
            .collect();

        let dim = l + 2;
        let refl_coroot = (0..=l)
            .map(|i| {
                let mut m = IntMatrix::identity(dim);
                for k in 0..dim {
                    let ak = simple_roots[i][k];
                    for r in 0..dim {
                        m.set(r, k, m.get(r, k) - ak * simple_coroots[i][r]);
                    }
                }
                m
            })
            .collect();
        let refl_root = (0..=l)
            .map(|i| {
                let mut m = IntMatrix::identity(l + 1);
                for j in 0..=l {
                    m.set(i, j, m.get(i, j) - affine_cartan[i][j]);
                }
                m
            })
            .collect();

        Self { finite, affine_cartan, simple_coroots, simple_roots, refl_coroot, refl_root }
    }

    pub fn build(kind: CartanType, rank: usize) -> Result<Self> {
        Ok(Self::new(CartanDatum::new(kind, rank)?))
    }

    pub fn finite(&self) -> &CartanDatum {
        &self.finite
    }

    pub fn rank(&self) -> usize {
        self.finite.rank
    }

    /// Number of simple reflections, `l + 1`.
    pub fn num_generators(&self) -> usize {
        self.finite.rank + 1
    }

    /// Dimension of the extended Cartan subalgebra, `l + 2`.
    pub fn dim(&self) -> usize {
        self.finite.rank + 2
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.finite.dual_coxeter()
    }

    pub fn affine_cartan(&self) -> &[Vec<i64>] {
        &self.affine_cartan
    }

    pub(crate) fn refl_coroot(&self, i: usize) -> &IntMatrix {
        &self.refl_coroot[i]
    }

    pub(crate) fn refl_root(&self, i: usize) -> &IntMatrix {
        &self.refl_root[i]
    }

    pub(crate) fn simple_coroot_ints(&self, i: usize) -> &[i64] {
        &self.simple_coroots[i]
    }

    pub(crate) fn simple_root_ints(&self, i: usize) -> &[i64] {
        &self.simple_roots[i]
    }

    /// Simple root `alpha_i`, `i` in `0..=l` (index `l` is `delta - theta`).
    pub fn simple_root(&self, i: usize) -> AffineRoot {
        let l = self.rank();
        if i < l {
            let mut k = vec![0; l];
            k[i] = 1;
            AffineRoot::new(k, 0)
        } else {
            AffineRoot::new(self.finite.highest_root.iter().map(|x| -x).collect(), 1)
        }
    }

    pub fn simple_coroot(&self, i: usize) -> CorootVector {
        CorootVector::from_ints(&self.simple_coroots[i])
    }

    pub fn delta(&self) -> AffineRoot {
        AffineRoot::new(vec![0; self.rank()], 1)
    }

    /// `rho`: 1 on every simple coroot, 0 on `D`.
    pub fn rho(&self) -> Functional {
        let l = self.rank();
        let mut v = vec![1; l];
        v.extend([self.dual_coxeter(), 0]);
        Functional::from_ints(&v)
    }

    fn check_root(&self, a: &AffineRoot) -> Result<()> {
        if a.classical.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: a.classical.len() });
        }
        Ok(())
    }

    /// Coordinates in the affine simple-root basis `alpha_1..alpha_{l+1}`.
    pub(crate) fn to_simple_coords(&self, a: &AffineRoot) -> Vec<i64> {
        let theta = &self.finite.highest_root;
        let mut m: Vec<i64> = (0..self.rank()).map(|j| a.classical[j] + a.n * theta[j]).collect();
        m.push(a.n);
        m
    }

    pub(crate) fn root_from_simple_coords(&self, m: &[i64]) -> AffineRoot {
        let l = self.rank();
        let n = m[l];
        let theta = &self.finite.highest_root;
        AffineRoot::new((0..l).map(|j| m[j] - n * theta[j]).collect(), n)
    }

    /// `h_a = h_alpha + n (2 / (alpha, alpha)) c` for a real root `a = alpha + n delta`.
    pub fn coroot_of(&self, a: &AffineRoot) -> Result<CorootVector> {
        Ok(CorootVector::from_ints(&self.coroot_ints(a)?))
    }

    pub(crate) fn coroot_ints(&self, a: &AffineRoot) -> Result<Vec<i64>> {
        self.check_root(a)?;
        if a.is_imaginary() {
            return Err(Error::ImaginaryRoot);
        }
        if !a.is_real(&self.finite) {
            return Err(Error::NotARoot(a.to_string()));
        }
        let mut v = self.finite.classical_coroot(&a.classical);
        let factor = (int(1) / self.finite.root_half_length(&a.classical)).to_integer().to_i64().unwrap();
        v.extend([a.n * factor, 0]);
        Ok(v)
    }

    pub fn root_functional(&self, a: &AffineRoot) -> Result<Functional> {
        self.check_root(a)?;
        let l = self.rank();
        let mut v = vec![0i64; l + 2];
        for (j, &k) in a.classical.iter().enumerate() {
            for (i, vi) in v.iter_mut().take(l).enumerate() {
                *vi += k * self.finite.cartan[i][j];
            }
        }
        v[l + 1] = a.n;
        Ok(Functional::from_ints(&v))
    }

    /// Inverse of [`Self::root_functional`]; fails if the functional is not a root.
    pub fn root_from_functional(&self, f: &Functional) -> Result<AffineRoot> {
        let l = self.rank();
        self.check_dim(f.0.len())?;
        let not_root = || Error::NotARoot(format!("{:?}", f.0));
        if !f.0[l].is_zero() {
            return Err(not_root());
        }
        let inv = self.finite.cartan_inv();
        let mut k = Vec::with_capacity(l);
        for row in inv.iter() {
            let x: Rational = (0..l).map(|i| &row[i] * &f.0[i]).sum();
            if !x.is_integer() {
                return Err(not_root());
            }
            k.push(x.to_integer().to_i64().ok_or_else(not_root)?);
        }
        if !f.0[l + 1].is_integer() {
            return Err(not_root());
        }
        let n = f.0[l + 1].to_integer().to_i64().ok_or_else(not_root)?;
        let a = AffineRoot::new(k, n);
        if !a.is_imaginary() && !a.is_real(&self.finite) {
            return Err(not_root());
        }
        Ok(a)
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: n });
        }
        Ok(())
    }

    pub fn pair(&self, f: &Functional, v: &CorootVector) -> Result<Rational> {
        self.check_dim(f.0.len())?;
        self.check_dim(v.0.len())?;
        Ok(f.0.iter().zip(&v.0).map(|(a, b)| a * b).sum())
    }

    /// Invariant form on the extended Cartan subalgebra.
    pub fn bilinear(&self, x: &CorootVector, y: &CorootVector) -> Result<Rational> {
        self.check_dim(x.0.len())?;
        self.check_dim(y.0.len())?;
        Ok(self.form(&x.0, &y.0))
    }

    pub(crate) fn form<T>(&self, x: &[T], y: &[T]) -> Rational
    where
        T: Clone + Into<Rational>,
    {
        let l = self.rank();
        let x: Vec<Rational> = x.iter().cloned().map(Into::into).collect();
        let y: Vec<Rational> = y.iter().cloned().map(Into::into).collect();
        let mut s = Rational::zero();
        for i in 0..l {
            for j in 0..l {
                let g = self.finite.gram[i][j];
                if g != 0 {
                    s += &x[i] * &y[j] * int(g);
                }
            }
        }
        s + &x[l] * &y[l + 1] + &x[l + 1] * &y[l]
    }

    /// Classical form `(x, y)` on integer coroot coordinates `h_1..h_l`.
    pub(crate) fn classical_form(&self, x: &[i64], y: &[i64]) -> i64 {
        let l = self.rank();
        let mut s = 0;
        for i in 0..l {
            for j in 0..l {
                s += x[i] * y[j] * self.finite.gram[i][j];
            }
        }
        s
    }

    /// Action of the translation `T_H` (for `H` in the classical coroot
    /// lattice) on the extended Cartan subalgebra:
    /// `T_H(h' + a c + b D) = h' + (h', H) c + a c + b (D - H - (H, H)/2 c)`.
    pub fn translation_action(&self, h: &[i64], x: &CorootVector) -> Result<CorootVector> {
        let l = self.rank();
        if h.len() != l {
            return Err(Error::DimensionMismatch { expected: l, found: h.len() });
        }
        self.check_dim(x.0.len())?;
        let classical: Vec<Rational> = x.0[..l].to_vec();
        let hr: Vec<Rational> = h.iter().map(|&v| int(v)).collect();
        let cl_form = |u: &[Rational], v: &[Rational]| -> Rational {
            let mut s = Rational::zero();
            for i in 0..l {
                for j in 0..l {
                    s += &u[i] * &v[j] * int(self.finite.gram[i][j]);
                }
            }
            s
        };
        let b = x.0[l + 1].clone();
        let hh = cl_form(&hr, &hr);
        let mut out = vec![Rational::zero(); l + 2];
        for i in 0..l {
            out[i] = &classical[i] - &b * &hr[i];
        }
        out[l] = cl_form(&classical, &hr) + &x.0[l] - &b * hh / int(2);
        out[l + 1] = b;
        Ok(CorootVector(out))
    }

    /// Matrix of `T_H` on the extended basis.
    pub(crate) fn translation_matrix(&self, h: &[i64]) -> IntMatrix {
        let dim = self.dim();
        let mut m = IntMatrix::zeros(dim, dim);
        for k in 0..dim {
            let mut e = vec![0i64; dim];
            e[k] = 1;
            let img = self.translation_action(h, &CorootVector::from_ints(&e)).unwrap();
            for (r, v) in img.0.iter().enumerate() {
                m.set(r, k, v.to_integer().to_i64().unwrap());
            }
        }
        m
    }

    /// All positive real roots with `n <= max_n`.
    pub fn positive_real_roots(&self, max_n: i64) -> Vec<AffineRoot> {
        let pos = &self.finite.positive_roots;
        let mut out: Vec<AffineRoot> = pos.iter().map(|k| AffineRoot::new(k.clone(), 0)).collect();
        for n in 1..=max_n {
            for k in pos {
                out.push(AffineRoot::new(k.clone(), n));
                out.push(AffineRoot::new(k.iter().map(|x| -x).collect(), n));
            }
        }
        out
    }
}
