//! Sparse multivariate polynomials over the integers, and the symmetric
//! polynomials built from tableaux.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{IntVector, Partition};
use crate::tableaux::{enumerate, SkewShape, Tableau};

/// Exponent vector of a monomial. Ordered graded-lexicographically: first by
/// total degree, then lexicographically on the exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// From a nonnegative integer vector.
    pub fn from_vector(w: &IntVector) -> Result<Self> {
        w.entries()
            .iter()
            .enumerate()
            .map(|(index, &value)| u32::try_from(value).map_err(|_| Error::NegativeEntry { index, value }))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn to_vector(&self) -> IntVector {
        IntVector(self.0.iter().map(|&e| e as i64).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Whether the exponents are weakly decreasing.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| match e {
                1 => format!("x{}", i + 1),
                _ => format!("x{}^{}", i + 1, e),
            })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A polynomial in `x1, …, x_nvars` with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::from_term(Monomial::one(nvars), c)
    }

    /// `x_{i+1}` (0-based variable index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_term(Monomial(e), BigInt::one())
    }

    /// `x^w` for a nonnegative exponent vector.
    pub fn monomial(w: &IntVector) -> Result<Self> {
        let m = Monomial::from_vector(w)?;
        Ok(Self::from_term(m, BigInt::one()))
    }

    pub fn from_term(m: Monomial, c: BigInt) -> Self {
        let mut p = MultiPoly::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Result<Self> {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::VariableMismatch {
                    left: nvars,
                    right: m.nvars(),
                });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: highest graded-lex monomial first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Highest power of `x_{var+1}` present.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    fn add_term(&mut self, m: Monomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    fn check_same_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_ring(other)?;
        Ok(Self::sum_of_products(self.nvars, [(self, other)]))
    }

    /// `Σ a_i·b_i`, accumulated in a single pass.
    ///
    /// # Panics
    ///
    /// If any factor does not live in `nvars` variables.
    pub fn sum_of_products<'a>(
        nvars: usize,
        pairs: impl IntoIterator<Item = (&'a MultiPoly, &'a MultiPoly)>,
    ) -> MultiPoly {
        let pairs: Vec<(&MultiPoly, &MultiPoly)> = pairs.into_iter().collect();
        for (a, b) in &pairs {
            assert!(
                a.nvars == nvars && b.nvars == nvars,
                "polynomials live in different rings"
            );
        }
        if let Some(p) = packed::sum_of_products(nvars, &pairs) {
            return p;
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (a, b) in pairs {
            for (ma, ca) in &a.terms {
                for (mb, cb) in &b.terms {
                    let prod = ca * cb;
                    match acc.entry(ma.mul(mb)) {
                        std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += prod,
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(prod);
                        }
                    }
                }
            }
        }
        MultiPoly {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &Monomial) -> MultiPoly {
        assert_eq!(m.nvars(), self.nvars, "polynomials live in different rings");
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `p(x1^k, …, xn^k)`.
    pub fn substitute_powers(&self, k: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.pow(k), c.clone())).collect(),
        }
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.swap(i, j);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Invariant under every permutation of the variables (checked on the
    /// adjacent transpositions, which generate the symmetric group).
    pub fn is_symmetric(&self) -> bool {
        (1..self.nvars).all(|i| {
            self.terms.iter().all(|(m, c)| {
                let mut e = m.0.clone();
                e.swap(i - 1, i);
                self.terms.get(&Monomial(e)) == Some(c)
            })
        })
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, point: &[BigInt]) -> Result<BigInt> {
        self.check_arity(point.len())?;
        let powers: Vec<Vec<BigInt>> = point
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let top = self.degree_in(i).unwrap_or(0);
                let mut table = vec![BigInt::one()];
                for _ in 0..top {
                    let next = table.last().expect("nonempty") * x;
                    table.push(next);
                }
                table
            })
            .collect();
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (table, &e) in powers.iter().zip(&m.0) {
                if e > 0 {
                    v *= &table[e as usize];
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, point: &[BigRational]) -> Result<BigRational> {
        self.check_arity(point.len())?;
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Floating-point evaluation at a complex point.
    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        self.check_arity(point.len())?;
        let mut total = Complex64::zero();
        for (m, c) in &self.terms {
            let mut v = Complex64::new(bigint_to_f64(c), 0.0);
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= x.powu(e);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Value at `(1, …, 1)`: the sum of the coefficients.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn check_arity(&self, got: usize) -> Result<()> {
        if got != self.nvars {
            return Err(Error::WrongArity {
                expected: self.nvars,
                got,
            });
        }
        Ok(())
    }

    /// Groups terms by the power of `x1`. The coefficient of `x1^d` is a
    /// polynomial in the remaining `nvars - 1` variables.
    pub fn collect_first(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let rest = Monomial(m.0[1..].to_vec());
            out.entry(m.0[0])
                .or_insert_with(|| MultiPoly::zero(self.nvars - 1))
                .add_term(rest, c);
        }
        out
    }
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;

            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("polynomials live in different rings")
            }
        }

        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;

            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.0.clone(),
                    coef: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| {
                let c: BigInt = t.coef.parse().map_err(D::Error::custom)?;
                Ok((Monomial(t.exp), c))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        MultiPoly::from_terms(raw.nvars, terms).map_err(D::Error::custom)
    }
}

/// `φ(T) = x^{w(T)}`.
pub fn phi(t: &Tableau) -> MultiPoly {
    MultiPoly::monomial(&t.weight()).expect("weights are nonnegative")
}

/// `Σ_T x^{w(T)}` over the explicit list of tableaux from [`enumerate`].
pub fn skew_schur_from_tableaux(shape: &SkewShape, n: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for t in enumerate(shape, n) {
        p.add_term(
            Monomial::from_vector(&t.weight()).expect("weights are nonnegative"),
            &BigInt::one(),
        );
    }
    p
}

/// The skew Schur polynomial `s_{outer/inner}(x1, …, xn)`.
///
/// Sums `x^{w(T)}` over the same tableaux as [`skew_schur_from_tableaux`],
/// but groups them by peeling off the boxes holding the largest letter,
/// which always form a horizontal strip. Intermediate shapes are memoized,
/// so long rows cost polynomially rather than one visit per tableau.
pub fn skew_schur(shape: &SkewShape, n: usize) -> MultiPoly {
    if let Some(p) = dense::skew_schur(shape, n) {
        return p;
    }
    if let Some(p) = packed::skew_schur(shape, n) {
        return p;
    }
    let mut memo = HashMap::new();
    strip_sum(shape.outer().parts(), shape.inner(), n, n, &mut memo)
}

/// `true` if no column of `outer/inner` holds more ordinary boxes than there
/// are letters.
fn columns_fit(outer: &[usize], inner: &Partition, letters: usize) -> bool {
    (1..=outer.first().copied().unwrap_or(0)).all(|j| {
        let height = outer.iter().take_while(|&&p| p >= j).count();
        let skew = inner.parts().iter().take_while(|&&p| p >= j).count();
        height <= skew + letters
    })
}

fn is_empty_skew(outer: &[usize], inner: &Partition) -> bool {
    (0..outer.len().max(inner.len())).all(|i| outer.get(i).copied().unwrap_or(0) == inner.part(i))
}

fn strip_sum(
    outer: &[usize],
    inner: &Partition,
    letters: usize,
    n: usize,
    memo: &mut HashMap<(Vec<usize>, usize), MultiPoly>,
) -> MultiPoly {
    if letters == 0 {
        return if is_empty_skew(outer, inner) {
            MultiPoly::one(n)
        } else {
            MultiPoly::zero(n)
        };
    }
    if !columns_fit(outer, inner, letters) {
        return MultiPoly::zero(n);
    }
    let key = (outer.to_vec(), letters);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let mut total = MultiPoly::zero(n);
    let mut below = Vec::with_capacity(outer.len());
    let outer_size: usize = outer.iter().sum();
    strips(outer, inner, letters - 1, 0, &mut below, &mut |sigma| {
        let removed = outer_size - sigma.iter().sum::<usize>();
        let mut trimmed = sigma.to_vec();
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        let rest = strip_sum(&trimmed, inner, letters - 1, n, memo);
        if rest.is_zero() {
            return;
        }
        let mut e = vec![0; n];
        e[letters - 1] = removed as u32;
        let shifted = rest.shift(&Monomial(e));
        for (m, c) in shifted.terms {
            total.add_term(m, &c);
        }
    });
    memo.insert(key, total.clone());
    total
}

/// Calls `visit` with every `σ` such that `inner ⊆ σ ⊆ outer`, `outer/σ` is
/// a horizontal strip, and `σ/inner` can still be filled with `letters`
/// letters: no column of `σ/inner` is taller than `letters`, that is
/// `σ_i ≤ inner_{i − letters}`.
fn strips(
    outer: &[usize],
    inner: &Partition,
    letters: usize,
    row: usize,
    sigma: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if row == outer.len() {
        visit(sigma);
        return;
    }
    let next = outer.get(row + 1).copied().unwrap_or(0);
    let lo = next.max(inner.part(row));
    let hi = match row.checked_sub(letters) {
        Some(i) => outer[row].min(inner.part(i)),
        None => outer[row],
    };
    for s in lo..=hi {
        sigma.push(s);
        strips(outer, inner, letters, row + 1, sigma, visit);
        sigma.pop();
    }
}

/// Memo table of complete homogeneous polynomials `h_k(x1, …, xn)`.
///
/// One table per caller; it is not shared between threads.
pub struct HCache {
    n: usize,
    // by_vars[m][k] = h_k(x1, …, x_m), embedded in n variables
    by_vars: Vec<Vec<MultiPoly>>,
}

impl HCache {
    pub fn new(n: usize) -> Self {
        HCache {
            n,
            by_vars: vec![vec![MultiPoly::one(n)]; n + 1],
        }
    }

    /// `h_k(x1, …, xn)`; zero for negative `k`.
    pub fn get(&mut self, k: i64) -> MultiPoly {
        if k < 0 {
            return MultiPoly::zero(self.n);
        }
        let k = k as usize;
        self.extend(k);
        self.by_vars[self.n][k].clone()
    }

    fn extend(&mut self, k: usize) {
        // h_k(x1..x_m) = h_k(x1..x_{m-1}) + x_m * h_{k-1}(x1..x_m)
        for m in 0..=self.n {
            while self.by_vars[m].len() <= k {
                let d = self.by_vars[m].len();
                let next = if m == 0 {
                    MultiPoly::zero(self.n)
                } else {
                    let mut e = vec![0; self.n];
                    e[m - 1] = 1;
                    let lower = &self.by_vars[m - 1][d];
                    lower + &self.by_vars[m][d - 1].shift(&Monomial(e))
                };
                self.by_vars[m].push(next);
            }
        }
    }
}

/// Complete homogeneous symmetric polynomial `h_k(x1, …, xn)`.
pub fn complete_homogeneous(k: usize, n: usize) -> MultiPoly {
    HCache::new(n).get(k as i64)
}

/// `s_{λ/μ} = det(h_{λ_i − μ_j − i + j})`, the Jacobi–Trudi determinant.
/// Independent of the tableau machinery; used as a cross-check.
pub fn skew_schur_jacobi_trudi(shape: &SkewShape, n: usize) -> MultiPoly {
    let outer = shape.outer();
    let inner = shape.inner();
    let l = outer.len();
    if l == 0 {
        return MultiPoly::one(n);
    }
    let mut cache = HCache::new(n);
    let entry: Vec<Vec<MultiPoly>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let k = outer.part(i) as i64 - inner.part(j) as i64 - i as i64 + j as i64;
                    cache.get(k)
                })
                .collect()
        })
        .collect();
    // expansion over column subsets: partial[S] sums signed products for
    // rows 0..|S| assigned to the columns in S
    let mut partial: HashMap<u32, MultiPoly> = HashMap::new();
    partial.insert(0, MultiPoly::one(n));
    for row in entry.iter() {
        let mut next: HashMap<u32, MultiPoly> = HashMap::new();
        for (&used, acc) in &partial {
            for (j, h) in row.iter().enumerate() {
                if used & (1 << j) != 0 || h.is_zero() {
                    continue;
                }
                let inversions = (used >> (j + 1)).count_ones();
                let mut term = acc * h;
                if inversions % 2 == 1 {
                    term = -term;
                }
                let slot = next.entry(used | (1 << j)).or_insert_with(|| MultiPoly::zero(n));
                *slot = &*slot + &term;
            }
        }
        partial = next;
    }
    partial.remove(&((1u32 << l) - 1)).unwrap_or_else(|| MultiPoly::zero(n))
}

/// `m_λ(x1, …, xn)`: the sum of `x^w` over distinct rearrangements `w` of `λ`.
pub fn monomial_symmetric(lambda: &Partition, n: usize) -> Result<MultiPoly> {
    if lambda.len() > n {
        return Err(Error::TooManyParts {
            partition: lambda.clone(),
            n,
        });
    }
    let mut exps: Vec<u32> = (0..n).map(|i| lambda.part(i) as u32).collect();
    exps.sort_unstable();
    let mut p = MultiPoly::zero(n);
    loop {
        p.add_term(Monomial(exps.clone()), &BigInt::one());
        if !next_permutation(&mut exps) {
            break;
        }
    }
    Ok(p)
}

/// Advances to the next lexicographic permutation; false when wrapping.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The strip recursion on dense coefficient arrays.
///
/// Every intermediate polynomial is homogeneous of known degree `D` in a
/// known number of letters `m`, so it is stored as an array over the first
/// `m − 1` exponents, each in `0..=D`. Adding a shifted subresult is then an
/// indexed add. Returns `None` on overflow or when an array would be too big.
mod dense {
    use std::collections::HashMap;
    use std::rc::Rc;

    use num_bigint::BigInt;

    use super::{columns_fit, is_empty_skew, strips, Monomial, MultiPoly};
    use crate::partitions::Partition;
    use crate::tableaux::SkewShape;

    const MAX_LEN: usize = 1 << 22;

    struct Homog {
        degree: usize,
        coeffs: Vec<i128>,
    }

    fn array_len(letters: usize, degree: usize) -> Option<usize> {
        let len = (degree + 1).checked_pow(letters.saturating_sub(1) as u32)?;
        (len <= MAX_LEN).then_some(len)
    }

    pub(super) fn skew_schur(shape: &SkewShape, n: usize) -> Option<MultiPoly> {
        let inner_size = shape.inner().size();
        let mut memo = HashMap::new();
        let top = strip_sum(shape.outer().parts(), shape.inner(), inner_size, n, &mut memo)?;
        let Some(top) = top else {
            return Some(MultiPoly::zero(n));
        };
        let radix = top.degree + 1;
        let mut terms = std::collections::BTreeMap::new();
        for (idx, &c) in top.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut exps = Vec::with_capacity(n);
            let mut rest = idx;
            for _ in 1..n {
                exps.push((rest % radix) as u32);
                rest /= radix;
            }
            let used: u32 = exps.iter().sum();
            exps.push(top.degree as u32 - used);
            terms.insert(Monomial(exps), BigInt::from(c));
        }
        Some(MultiPoly { nvars: n, terms })
    }

    /// `s_{outer/inner}(x1, x2)` indexed by the exponent of `x1`.
    ///
    /// The boxes holding 1 form a shape `τ` whose rows vary independently:
    /// `τ_i` runs over `max(outer_{i+1}, inner_i) ..= min(outer_i, inner_{i−1})`.
    /// The polynomial is the product of one interval sum per row.
    fn two_letters(outer: &[usize], inner: &Partition, degree: usize) -> Option<Homog> {
        let mut coeffs = vec![0i128; degree + 1];
        coeffs[0] = 1;
        let mut width = 1;
        for i in 0..outer.len() {
            let lo = outer.get(i + 1).copied().unwrap_or(0).max(inner.part(i));
            let hi = match i.checked_sub(1) {
                Some(j) => outer[i].min(inner.part(j)),
                None => outer[i],
            };
            if lo > hi {
                return None;
            }
            // multiply by x1^{lo − inner_i} (1 + x1 + … + x1^{hi − lo})
            let offset = lo - inner.part(i);
            let span = hi - lo;
            let mut next = vec![0i128; degree + 1];
            for (e, &c) in coeffs[..width].iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for t in 0..=span {
                    next[e + offset + t] += c;
                }
            }
            coeffs = next;
            width += offset + span;
        }
        Some(Homog { degree, coeffs })
    }

    type Memo = HashMap<(Vec<usize>, usize), Option<Rc<Homog>>>;

    /// `Some(None)` is the zero polynomial.
    fn strip_sum(
        outer: &[usize],
        inner: &Partition,
        inner_size: usize,
        letters: usize,
        memo: &mut Memo,
    ) -> Option<Option<Rc<Homog>>> {
        if letters == 0 {
            return Some(is_empty_skew(outer, inner).then(|| {
                Rc::new(Homog {
                    degree: 0,
                    coeffs: vec![1],
                })
            }));
        }
        let outer_size: usize = outer.iter().sum();
        let degree = outer_size - inner_size;
        if letters == 1 {
            // one letter fills exactly the horizontal strips
            let strip = (0..outer.len()).all(|i| outer.get(i + 1).copied().unwrap_or(0) <= inner.part(i));
            return Some(strip.then(|| {
                Rc::new(Homog {
                    degree,
                    coeffs: vec![1],
                })
            }));
        }
        if letters == 2 {
            return Some(two_letters(outer, inner, degree).map(Rc::new));
        }
        if !columns_fit(outer, inner, letters) {
            return Some(None);
        }
        let key = (outer.to_vec(), letters);
        if let Some(p) = memo.get(&key) {
            return Some(p.clone());
        }
        let radix = degree + 1;
        let mut total = vec![0i128; array_len(letters, degree)?];
        let mut failed = false;
        let mut below = Vec::with_capacity(outer.len());
        strips(outer, inner, letters - 1, 0, &mut below, &mut |sigma| {
            if failed {
                return;
            }
            let mut trimmed = sigma.to_vec();
            while trimmed.last() == Some(&0) {
                trimmed.pop();
            }
            let sub = match strip_sum(&trimmed, inner, inner_size, letters - 1, memo) {
                Some(Some(sub)) => sub,
                Some(None) => return,
                None => {
                    failed = true;
                    return;
                }
            };
            // sub lives in letters − 1 variables with degree − removed; the
            // exponent of the last of those becomes an explicit axis here
            let sub_radix = sub.degree + 1;
            let axes = letters.saturating_sub(2);
            let top_axis = radix.pow(axes as u32);
            for (idx, &c) in sub.coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut rest = idx;
                let mut target = 0;
                let mut used = 0;
                let mut place = 1;
                for _ in 0..axes {
                    let e = rest % sub_radix;
                    rest /= sub_radix;
                    used += e;
                    target += e * place;
                    place *= radix;
                }
                if letters >= 2 {
                    target += (sub.degree - used) * top_axis;
                }
                match total[target].checked_add(c) {
                    Some(v) => total[target] = v,
                    None => {
                        failed = true;
                        return;
                    }
                }
            }
        });
        if failed {
            return None;
        }
        let result = total
            .iter()
            .any(|&c| c != 0)
            .then(|| Rc::new(Homog { degree, coeffs: total }));
        memo.insert(key, result.clone());
        Some(result)
    }
}

/// Word-packed exponents with `i128` coefficients for the hot loops.
///
/// Every routine returns `None` when the exponents do not fit the packing or
/// a coefficient overflows, and the caller falls back to the `BigInt` path.
mod packed {
    use std::collections::HashMap;
    use std::rc::Rc;

    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    use super::{columns_fit, is_empty_skew, strips, Monomial, MultiPoly};
    use crate::partitions::Partition;
    use crate::tableaux::SkewShape;

    type Terms = HashMap<u64, i128>;

    #[derive(Clone, Copy)]
    struct Packing {
        nvars: usize,
        bits: usize,
    }

    impl Packing {
        /// A packing holding every exponent up to `max_degree`.
        fn new(nvars: usize, max_degree: u64) -> Option<Packing> {
            let bits = 64 / nvars.max(1);
            if bits < 64 && max_degree >= 1u64 << bits {
                return None;
            }
            Some(Packing { nvars, bits })
        }

        fn pack(&self, m: &Monomial) -> u64 {
            m.0.iter()
                .enumerate()
                .fold(0, |acc, (i, &e)| acc | (e as u64) << (self.bits * i))
        }

        fn unpack(&self, key: u64) -> Monomial {
            let mask = if self.bits == 64 {
                u64::MAX
            } else {
                (1u64 << self.bits) - 1
            };
            Monomial(
                (0..self.nvars)
                    .map(|i| ((key >> (self.bits * i)) & mask) as u32)
                    .collect(),
            )
        }

        fn unit(&self, var: usize, e: usize) -> u64 {
            (e as u64) << (self.bits * var)
        }

        fn small_terms(&self, p: &MultiPoly) -> Option<Vec<(u64, i64)>> {
            p.terms.iter().map(|(m, c)| Some((self.pack(m), c.to_i64()?))).collect()
        }

        fn poly_from(&self, terms: &Terms) -> MultiPoly {
            MultiPoly {
                nvars: self.nvars,
                terms: terms
                    .iter()
                    .filter(|(_, c)| **c != 0)
                    .map(|(k, c)| (self.unpack(*k), BigInt::from(*c)))
                    .collect(),
            }
        }
    }

    pub(super) fn sum_of_products(nvars: usize, pairs: &[(&MultiPoly, &MultiPoly)]) -> Option<MultiPoly> {
        let live: Vec<(&MultiPoly, &MultiPoly)> = pairs
            .iter()
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .copied()
            .collect();
        if live.is_empty() {
            return Some(MultiPoly::zero(nvars));
        }
        if let Some(p) = homogeneous_sum(nvars, &live) {
            return Some(p);
        }
        let max_degree = pairs
            .iter()
            .map(|(a, b)| a.total_degree().unwrap_or(0) + b.total_degree().unwrap_or(0))
            .max()
            .unwrap_or(0);
        let packing = Packing::new(nvars, max_degree)?;
        let mut acc = Terms::new();
        for (a, b) in pairs {
            let sa = packing.small_terms(a)?;
            let sb = packing.small_terms(b)?;
            for &(ka, ca) in &sa {
                for &(kb, cb) in &sb {
                    let slot = acc.entry(ka + kb).or_insert(0);
                    *slot = slot.checked_add(ca as i128 * cb as i128)?;
                }
            }
        }
        Some(packing.poly_from(&acc))
    }

    /// Degree shared by every term, if there is one.
    fn homogeneous_degree(p: &MultiPoly) -> Option<u64> {
        let mut degrees = p.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Dense accumulation when every product is homogeneous of one degree
    /// `D`: a monomial is indexed by its first `nvars − 1` exponents in radix
    /// `D + 1`, so multiplying monomials adds indices.
    fn homogeneous_sum(nvars: usize, pairs: &[(&MultiPoly, &MultiPoly)]) -> Option<MultiPoly> {
        let mut degree = None;
        for (a, b) in pairs {
            let d = homogeneous_degree(a)? + homogeneous_degree(b)?;
            if *degree.get_or_insert(d) != d {
                return None;
            }
        }
        let degree = degree? as usize;
        let radix = degree + 1;
        let axes = nvars.checked_sub(1)?;
        let len = radix.checked_pow(axes as u32)?;
        if len > 1 << 22 {
            return None;
        }
        let index = |m: &Monomial| {
            m.0[..axes]
                .iter()
                .rev()
                .fold(0usize, |acc, &e| acc * radix + e as usize)
        };
        let mut acc = vec![0i128; len];
        for (a, b) in pairs {
            let sa: Vec<(usize, i64)> = a
                .terms
                .iter()
                .map(|(m, c)| Some((index(m), c.to_i64()?)))
                .collect::<Option<_>>()?;
            let sb: Vec<(usize, i64)> = b
                .terms
                .iter()
                .map(|(m, c)| Some((index(m), c.to_i64()?)))
                .collect::<Option<_>>()?;
            for &(ia, ca) in &sa {
                for &(ib, cb) in &sb {
                    let slot = &mut acc[ia + ib];
                    *slot = slot.checked_add(ca as i128 * cb as i128)?;
                }
            }
        }
        let mut terms = std::collections::BTreeMap::new();
        for (idx, &c) in acc.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut exps = Vec::with_capacity(nvars);
            let mut rest = idx;
            for _ in 0..axes {
                exps.push((rest % radix) as u32);
                rest /= radix;
            }
            let used: u32 = exps.iter().sum();
            exps.push(degree as u32 - used);
            terms.insert(Monomial(exps), BigInt::from(c));
        }
        Some(MultiPoly { nvars, terms })
    }

    pub(super) fn skew_schur(shape: &SkewShape, n: usize) -> Option<MultiPoly> {
        let packing = Packing::new(n, shape.size() as u64)?;
        let mut memo = HashMap::new();
        let terms = strip_sum(shape.outer().parts(), shape.inner(), n, &packing, &mut memo)?;
        Some(packing.poly_from(&terms))
    }

    type Memo = HashMap<(Vec<usize>, usize), Rc<Terms>>;

    fn strip_sum(
        outer: &[usize],
        inner: &Partition,
        letters: usize,
        packing: &Packing,
        memo: &mut Memo,
    ) -> Option<Rc<Terms>> {
        if letters == 0 {
            let mut t = Terms::new();
            if is_empty_skew(outer, inner) {
                t.insert(0, 1);
            }
            return Some(Rc::new(t));
        }
        if !columns_fit(outer, inner, letters) {
            return Some(Rc::new(Terms::new()));
        }
        let key = (outer.to_vec(), letters);
        if let Some(p) = memo.get(&key) {
            return Some(Rc::clone(p));
        }
        let mut total = Terms::new();
        let mut overflow = false;
        let mut below = Vec::with_capacity(outer.len());
        let outer_size: usize = outer.iter().sum();
        strips(outer, inner, letters - 1, 0, &mut below, &mut |sigma| {
            if overflow {
                return;
            }
            let removed = outer_size - sigma.iter().sum::<usize>();
            let mut trimmed = sigma.to_vec();
            while trimmed.last() == Some(&0) {
                trimmed.pop();
            }
            let Some(rest) = strip_sum(&trimmed, inner, letters - 1, packing, memo) else {
                overflow = true;
                return;
            };
            let shift = packing.unit(letters - 1, removed);
            for (k, c) in rest.iter() {
                let slot = total.entry(k + shift).or_insert(0);
                match slot.checked_add(*c) {
                    Some(v) => *slot = v,
                    None => {
                        overflow = true;
                        return;
                    }
                }
            }
        });
        if overflow {
            return None;
        }
        total.retain(|_, c| *c != 0);
        let total = Rc::new(total);
        memo.insert(key, Rc::clone(&total));
        Some(total)
    }
}
