//! Linear recurrences of stretched skew Schur sequences.
//!
//! For partitions `κ, λ, μ ⊇ ν` the sequence
//! `s_k = s_{(κ+kμ)/(λ+kν)}(x1, …, xn)` satisfies, from some index `r` on,
//! the recurrence whose characteristic polynomial is
//! `χ(t) = ∏_{T ∈ SSYT(μ/ν, n)} (t − x^{w(T)})`.
//!
//! This module builds `χ`, checks the recurrence exactly, shrinks `χ` to the
//! least-degree annihilating divisor, and compares that divisor with the
//! Kostka-and-dominance prediction for it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{dominates, sort_decreasing, stretch_condition, IntVector, Partition};
use crate::poly::{skew_schur, Monomial, MultiPoly};
use crate::tableaux::{enumerate, stabilization_index, SkewShape};

/// Monic polynomial in the shift variable `t` with polynomial coefficients.
///
/// `coeffs[j]` is the coefficient of `t^j`. When built from roots, the roots
/// `x^w` are kept as a sorted multiset.
#[derive(Clone, PartialEq, Eq)]
pub struct CharPoly {
    nvars: usize,
    coeffs: Vec<MultiPoly>,
    roots: Vec<Monomial>,
}

impl CharPoly {
    /// `∏ (t − root)`, expanded one linear factor at a time.
    pub fn from_roots(nvars: usize, mut roots: Vec<Monomial>) -> CharPoly {
        roots.sort();
        let mut coeffs = vec![MultiPoly::one(nvars)];
        for root in &roots {
            // (c_0 + … + c_d t^d)(t − ρ)
            let mut next = vec![MultiPoly::zero(nvars); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                next[j + 1] = &next[j + 1] + c;
                next[j] = &next[j] - &c.shift(root);
            }
            coeffs = next;
        }
        CharPoly { nvars, coeffs, roots }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// Roots with multiplicity, in ascending monomial order.
    pub fn roots(&self) -> &[Monomial] {
        &self.roots
    }

    pub fn distinct_roots(&self) -> Vec<Monomial> {
        let mut r = self.roots.clone();
        r.dedup();
        r
    }

    /// Root multiplicities.
    pub fn multiplicities(&self) -> BTreeMap<Monomial, usize> {
        let mut m = BTreeMap::new();
        for r in &self.roots {
            *m.entry(r.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Whether the set of root exponents is closed under permuting variables.
    pub fn is_permutation_invariant(&self) -> bool {
        let mult = self.multiplicities();
        mult.iter().all(|(m, &count)| {
            (1..self.nvars).all(|i| {
                let mut e = m.exponents().to_vec();
                e.swap(i - 1, i);
                mult.get(&Monomial::new(e)) == Some(&count)
            })
        })
    }

    /// Long division by a monic divisor: `self = q·divisor + rem` with
    /// `deg rem < deg divisor`. Returns `(q, rem)` as coefficient lists.
    pub fn div_rem(&self, divisor: &CharPoly) -> Result<(Vec<MultiPoly>, Vec<MultiPoly>)> {
        if divisor.nvars != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: divisor.nvars,
            });
        }
        let d = divisor.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((vec![MultiPoly::zero(self.nvars)], rem));
        }
        let mut quot = vec![MultiPoly::zero(self.nvars); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let lead = rem[top].clone();
            if lead.is_zero() {
                continue;
            }
            quot[top - d] = lead.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let idx = top - d + j;
                rem[idx] = &rem[idx] - &(&lead * c);
            }
        }
        rem.truncate(d);
        Ok((quot, rem))
    }

    /// Exact divisibility by a monic polynomial.
    pub fn is_divisible_by(&self, divisor: &CharPoly) -> Result<bool> {
        let (_, rem) = self.div_rem(divisor)?;
        Ok(rem.iter().all(MultiPoly::is_zero))
    }
}

impl fmt::Display for CharPoly {
    /// E.g. `t^2 - (x1 + x2)*t + x1*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let all_negative = c.terms().all(|(_, a)| a.is_negative());
            let shown = if all_negative { -c } else { c.clone() };
            let sign = match (first, all_negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            f.write_str(sign)?;
            first = false;
            let body = shown.to_string();
            let tpow = match j {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{j}"),
            };
            match (j, body.as_str()) {
                (0, _) => f.write_str(&body)?,
                (_, "1") => f.write_str(&tpow)?,
                _ if shown.len() > 1 => write!(f, "({body})*{tpow}")?,
                _ => write!(f, "{body}*{tpow}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharPoly({self})")
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            nvars: usize,
            degree: usize,
            text: String,
            roots: Vec<IntVector>,
            coeffs: &'a [MultiPoly],
        }
        Repr {
            nvars: self.nvars,
            degree: self.degree(),
            text: self.to_string(),
            roots: self.roots.iter().map(Monomial::to_vector).collect(),
            coeffs: &self.coeffs,
        }
        .serialize(serializer)
    }
}

/// `χ(t) = ∏_{T ∈ SSYT(μ/ν, n)} (t − x^{w(T)})`.
pub fn char_poly(mu: &Partition, nu: &Partition, n: usize) -> Result<CharPoly> {
    let shape = SkewShape::new(mu.clone(), nu.clone())?;
    let roots = enumerate(&shape, n)
        .iter()
        .map(|t| Monomial::from_vector(&t.weight()))
        .collect::<Result<Vec<_>>>()?;
    Ok(CharPoly::from_roots(n, roots))
}

/// The four partitions and the alphabet size of a stretched family
/// `(κ + kμ)/(λ + kν)` in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub kappa: Partition,
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub n: usize,
}

impl Family {
    pub fn new(kappa: Partition, lambda: Partition, mu: Partition, nu: Partition, n: usize) -> Self {
        Family {
            kappa,
            lambda,
            mu,
            nu,
            n,
        }
    }

    /// `κ = λ = ∅`: the plain stretched shapes `kμ/kν`.
    pub fn stretched(mu: Partition, nu: Partition, n: usize) -> Self {
        Family::new(Partition::empty(), Partition::empty(), mu, nu, n)
    }

    /// Shape at index `k`, if it is a valid skew shape.
    pub fn shape(&self, k: usize) -> Option<SkewShape> {
        SkewShape::new(self.kappa.add(&self.mu.scale(k)), self.lambda.add(&self.nu.scale(k))).ok()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}+k{})/({}+k{}), n={}",
            self.kappa, self.mu, self.lambda, self.nu, self.n
        )
    }
}

/// The sequence `k ↦ s_{(κ+kμ)/(λ+kν)}(x1, …, xn)` with cached terms.
///
/// Indices are those of the original family. When `κ ⊉ λ` the first few
/// shapes are invalid; `shift` is the least index with a valid shape, and
/// `(effective_kappa, effective_lambda)` is the family re-based there, so
/// that term `shift + j` is the `j`-th term of the re-based family.
#[derive(Clone, Debug)]
pub struct SchurSequence {
    family: Family,
    shift: usize,
    effective_kappa: Partition,
    effective_lambda: Partition,
    r: usize,
    cache: BTreeMap<usize, MultiPoly>,
}

/// Validates a family and locates the index from which the recurrence of
/// `χ` holds.
pub fn build_sequence(family: &Family) -> Result<SchurSequence> {
    let Family {
        kappa, lambda, mu, nu, ..
    } = family;
    let shift = if kappa.contains(lambda) {
        0
    } else {
        stretch_condition(kappa, lambda, mu, nu)?
    };
    if !mu.contains(nu) {
        return Err(Error::NotContained {
            outer: mu.clone(),
            inner: nu.clone(),
        });
    }
    let effective_kappa = kappa.add(&mu.scale(shift));
    let effective_lambda = lambda.add(&nu.scale(shift));
    let mut r = shift + stabilization_index(&effective_kappa, &effective_lambda, mu, nu)?;
    // r = 0 for κ = λ = ∅ needs μ, ν of length at most n; otherwise s_0 = 1
    // while χ may be the empty product. μ/ν always sits inside 1·μ/1·ν.
    if r == 0 && (mu.len() > family.n || nu.len() > family.n) {
        r = 1;
    }
    Ok(SchurSequence {
        family: family.clone(),
        shift,
        effective_kappa,
        effective_lambda,
        r,
        cache: BTreeMap::new(),
    })
}

impl SchurSequence {
    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.family.n
    }

    /// First index whose shape is valid.
    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn effective_kappa(&self) -> &Partition {
        &self.effective_kappa
    }

    pub fn effective_lambda(&self) -> &Partition {
        &self.effective_lambda
    }

    /// Index from which the recurrence of [`char_poly`] is guaranteed.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Replaces the start index, e.g. from a command-line override.
    pub fn with_start(mut self, r: usize) -> Result<Self> {
        if r < self.shift {
            return Err(Error::IndexBeforeStart {
                k: r,
                start: self.shift,
            });
        }
        self.r = r;
        Ok(self)
    }

    pub fn shape(&self, k: usize) -> Result<SkewShape> {
        if k < self.shift {
            return Err(Error::IndexBeforeStart { k, start: self.shift });
        }
        self.family.shape(k).ok_or(Error::InvalidTerm { k })
    }

    /// Term `k`, computed on first use.
    pub fn term(&mut self, k: usize) -> Result<&MultiPoly> {
        self.ensure(k)?;
        Ok(&self.cache[&k])
    }

    /// Computes and caches every term up to and including `k` from `shift`.
    pub fn ensure(&mut self, k: usize) -> Result<()> {
        for i in self.shift..=k {
            if !self.cache.contains_key(&i) {
                let shape = self.shape(i)?;
                self.cache.insert(i, skew_schur(&shape, self.family.n));
            }
        }
        Ok(())
    }

    /// A term already computed by [`ensure`](Self::ensure).
    pub fn cached(&self, k: usize) -> Option<&MultiPoly> {
        self.cache.get(&k)
    }

    /// `Σ_j coeffs[j]·s_{k+j}`, exactly.
    pub fn residual(&mut self, chi: &CharPoly, k: usize) -> Result<MultiPoly> {
        self.ensure(k + chi.degree())?;
        let pairs = chi.coeffs.iter().enumerate().map(|(j, c)| (c, &self.cache[&(k + j)]));
        Ok(MultiPoly::sum_of_products(self.family.n, pairs))
    }

    /// Terms `from .. from + len` evaluated at an integer point.
    fn specialized_terms(&mut self, point: &[BigInt], from: usize, len: usize) -> Result<Vec<BigInt>> {
        if len == 0 {
            return Ok(Vec::new());
        }
        self.ensure(from + len - 1)?;
        (from..from + len).map(|k| self.cache[&k].eval_int(point)).collect()
    }
}

/// Outcome of checking a recurrence on a window of indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecurrenceCheck {
    /// The identity held at every index `from ..= upto`.
    Holds { from: usize, upto: usize },
    /// First index where the residual is nonzero.
    Fails { k: usize, residual: MultiPoly },
}

impl RecurrenceCheck {
    pub fn holds(&self) -> bool {
        matches!(self, RecurrenceCheck::Holds { .. })
    }
}

/// Checks `Σ_j chi_j · s_{k+j} = 0` exactly for `k = r, …, r + count − 1`.
pub fn verify_recurrence(seq: &mut SchurSequence, chi: &CharPoly, r: usize, count: usize) -> Result<RecurrenceCheck> {
    if chi.nvars != seq.n() {
        return Err(Error::VariableMismatch {
            left: chi.nvars,
            right: seq.n(),
        });
    }
    for k in r..r + count {
        let residual = seq.residual(chi, k)?;
        if !residual.is_zero() {
            return Ok(RecurrenceCheck::Fails { k, residual });
        }
    }
    Ok(RecurrenceCheck::Holds {
        from: r,
        upto: (r + count).saturating_sub(1),
    })
}

/// Shortest linear recurrence of a scalar sequence over the rationals.
///
/// Returns the monic characteristic polynomial, lowest coefficient first:
/// `1, 2, 4, 8` gives `[-2, 1]` for `t − 2`.
pub fn berlekamp_massey(seq: &[BigRational]) -> Vec<BigRational> {
    let mut conn = vec![BigRational::one()];
    let mut prev = vec![BigRational::one()];
    let mut len = 0usize;
    let mut gap = 1usize;
    let mut prev_disc = BigRational::one();
    for i in 0..seq.len() {
        let mut disc = seq[i].clone();
        for j in 1..=len {
            if let Some(c) = conn.get(j) {
                disc += c * &seq[i - j];
            }
        }
        if disc.is_zero() {
            gap += 1;
            continue;
        }
        let factor = &disc / &prev_disc;
        let mut updated = conn.clone();
        if updated.len() < prev.len() + gap {
            updated.resize(prev.len() + gap, BigRational::zero());
        }
        for (j, p) in prev.iter().enumerate() {
            updated[j + gap] -= &factor * p;
        }
        if 2 * len <= i {
            prev = std::mem::replace(&mut conn, updated);
            len = i + 1 - len;
            prev_disc = disc;
            gap = 1;
        } else {
            conn = updated;
            gap += 1;
        }
    }
    conn.resize(len + 1, BigRational::zero());
    conn.reverse();
    conn
}

/// Whether `cand` annihilates `seq` from `seq.r()`.
///
/// Every divisor of a verified `χ` leaves a residual sequence that itself
/// satisfies the `χ` recurrence, so `deg χ` consecutive zero residuals force
/// all later ones to vanish. A random integer specialization screens out
/// most non-annihilators first; a rejection by the screen is always correct.
fn annihilates(seq: &mut SchurSequence, roots: &[Monomial], screen: &Screen, exact: bool) -> Result<bool> {
    // ∏ (t − x^w) at the screening point, low degree first
    let mut c = vec![BigInt::one()];
    for m in roots {
        let v = &screen.values[m];
        c.insert(0, BigInt::zero());
        for j in 0..c.len() - 1 {
            let next = &c[j + 1] * v;
            c[j] -= next;
        }
    }
    for k in 0..screen.window {
        let v: BigInt = c.iter().enumerate().map(|(j, cj)| cj * &screen.terms[k + j]).sum();
        if !v.is_zero() {
            return Ok(false);
        }
    }
    if !exact {
        return Ok(true);
    }
    let cand = CharPoly::from_roots(seq.n(), roots.to_vec());
    Ok(verify_recurrence(seq, &cand, seq.r(), screen.window)?.holds())
}

struct Screen {
    values: BTreeMap<Monomial, BigInt>,
    terms: Vec<BigInt>,
    window: usize,
}

/// Greedy removal of linear factors of `chi`, in canonical root order.
fn greedy_divisor(seq: &mut SchurSequence, chi: &CharPoly, screen: &Screen, exact: bool) -> Result<Vec<Monomial>> {
    let distinct = chi.distinct_roots();
    // Start from the squarefree part when it already annihilates.
    let mut roots = if annihilates(seq, &distinct, screen, exact)? {
        distinct
    } else {
        chi.roots().to_vec()
    };
    let mut i = 0;
    while i < roots.len() {
        let mut trial = roots.clone();
        trial.remove(i);
        if annihilates(seq, &trial, screen, exact)? {
            roots = trial;
        } else {
            i += 1;
        }
    }
    Ok(roots)
}

/// Least-degree annihilator together with its numeric cross-check.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalRecurrence {
    pub poly: CharPoly,
    /// Berlekamp–Massey degree at each specialization point.
    pub specialized_degrees: Vec<usize>,
    pub points: Vec<Vec<i64>>,
    pub seed: u64,
}

impl MinimalRecurrence {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }
}

const SPECIALIZATIONS: usize = 3;
const ATTEMPTS_PER_POINT: usize = 8;

/// The monic divisor of `chi` of least degree annihilating `seq` from
/// `seq.r()`, found by greedy removal of linear factors, and confirmed
/// against Berlekamp–Massey on three random integer specializations.
///
/// Requires that `chi` itself annihilates the sequence.
pub fn minimal_char_poly(seq: &mut SchurSequence, chi: &CharPoly, seed: u64) -> Result<MinimalRecurrence> {
    let n = seq.n();
    let window = chi.degree();
    let r = seq.r();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let distinct = chi.distinct_roots();
    let point = draw_point(&mut rng, n, &distinct);
    let terms = seq.specialized_terms(&point, r, 2 * window + 1)?;
    let values = distinct
        .iter()
        .map(|m| {
            Ok((
                m.clone(),
                MultiPoly::from_term(m.clone(), BigInt::one()).eval_int(&point)?,
            ))
        })
        .collect::<Result<_>>()?;
    let screen = Screen { values, terms, window };

    // The screened search can only err by keeping too few factors, which the
    // exact check of its result catches. A divisor of χ that annihilates
    // also proves that χ does.
    let screened = greedy_divisor(seq, chi, &screen, false)?;
    let roots = if verify_recurrence(seq, &CharPoly::from_roots(n, screened.clone()), r, window.max(1))?.holds() {
        screened
    } else if verify_recurrence(seq, chi, r, window.max(1))?.holds() {
        greedy_divisor(seq, chi, &screen, true)?
    } else {
        return Err(Error::Precondition(format!(
            "{chi} does not annihilate the sequence from index {r}"
        )));
    };
    let poly = CharPoly::from_roots(n, roots);

    let mut specialized_degrees = Vec::new();
    let mut points = Vec::new();
    for _ in 0..SPECIALIZATIONS {
        let mut last = 0;
        let mut found = false;
        for _ in 0..ATTEMPTS_PER_POINT {
            let point = draw_point(&mut rng, n, &distinct);
            let values: Vec<BigRational> = seq
                .specialized_terms(&point, r, 2 * window)?
                .into_iter()
                .map(BigRational::from_integer)
                .collect();
            last = berlekamp_massey(&values).len() - 1;
            if last == poly.degree() {
                specialized_degrees.push(last);
                points.push(point.iter().map(|v| i64::try_from(v).unwrap_or(0)).collect());
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::SpecializationDisagreement {
                exact: poly.degree(),
                numeric: last,
                attempts: ATTEMPTS_PER_POINT,
            });
        }
    }
    Ok(MinimalRecurrence {
        poly,
        specialized_degrees,
        points,
        seed,
    })
}

/// Small positive integers at which the given monomials take pairwise
/// distinct values; redrawn until they do.
fn draw_point(rng: &mut ChaCha8Rng, n: usize, monomials: &[Monomial]) -> Vec<BigInt> {
    let mut bound = 16;
    loop {
        let point: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(2..=bound))).collect();
        let mut values: Vec<BigInt> = monomials
            .iter()
            .map(|m| {
                MultiPoly::from_term(m.clone(), BigInt::one())
                    .eval_int(&point)
                    .expect("same arity")
            })
            .collect();
        values.sort();
        if values.windows(2).all(|w| w[0] != w[1]) {
            return point;
        }
        bound += 4;
    }
}

/// `W = { w : K_{μ/ν,w} > 0 and w̄ ⊵ sort(μ − ν) }`, sorted.
pub fn conjectured_w(mu: &Partition, nu: &Partition, n: usize) -> Result<Vec<IntVector>> {
    let shape = SkewShape::new(mu.clone(), nu.clone())?;
    let target = sort_decreasing(&mu.subtract(nu))?;
    let mut weights: Vec<IntVector> = enumerate(&shape, n).iter().map(|t| t.weight()).collect();
    weights.sort();
    weights.dedup();
    weights.retain(|w| dominates(&sort_decreasing(w).expect("weights are nonnegative"), &target));
    Ok(weights)
}

/// Status of the predicted minimal recurrence for one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Supported,
    RefutedAt(usize),
    Inconclusive(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Supported => f.write_str("SUPPORTED"),
            Verdict::RefutedAt(k) => write!(f, "REFUTED-AT({k})"),
            Verdict::Inconclusive(_) => f.write_str("INCONCLUSIVE"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Evidence for or against the predicted minimal polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub verdict: Verdict,
    /// The predicted root exponents `W`.
    pub predicted: Vec<IntVector>,
    /// Root exponents of the computed minimal polynomial.
    pub minimal: Vec<IntVector>,
    pub predicted_annihilates: bool,
    pub checked_from: usize,
    pub checked_count: usize,
    /// First index and residual where the predicted polynomial fails.
    pub certificate: Option<Certificate>,
    pub note: Option<String>,
}

/// A nonzero residual witnessing that a recurrence fails.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub k: usize,
    pub residual: MultiPoly,
}

/// Compares the predicted minimal polynomial `∏_{w ∈ W} (t − x^w)` with the
/// computed one. This is evidence, never a proof.
pub fn conjecture_check(family: &Family, count: usize, seed: u64) -> Result<ConjectureReport> {
    let mut seq = build_sequence(family)?;
    let chi = char_poly(&family.mu, &family.nu, family.n)?;
    conjecture_check_with(&mut seq, &chi, count, seed)
}

/// [`conjecture_check`] on an already built sequence and `χ`.
pub fn conjecture_check_with(
    seq: &mut SchurSequence,
    chi: &CharPoly,
    count: usize,
    seed: u64,
) -> Result<ConjectureReport> {
    let family = seq.family().clone();
    let predicted = conjectured_w(&family.mu, &family.nu, family.n)?;
    let predicted_poly = CharPoly::from_roots(
        family.n,
        predicted
            .iter()
            .map(Monomial::from_vector)
            .collect::<Result<Vec<_>>>()?,
    );
    let r = seq.r();
    let check = verify_recurrence(seq, &predicted_poly, r, count)?;
    let (predicted_annihilates, certificate) = match check {
        RecurrenceCheck::Holds { .. } => (true, None),
        RecurrenceCheck::Fails { k, residual } => (false, Some(Certificate { k, residual })),
    };
    let minimal = match minimal_char_poly(seq, chi, seed) {
        Ok(m) => m,
        Err(e @ Error::SpecializationDisagreement { .. }) => {
            return Ok(ConjectureReport {
                verdict: Verdict::Inconclusive(e.to_string()),
                predicted,
                minimal: Vec::new(),
                predicted_annihilates,
                checked_from: r,
                checked_count: count,
                certificate,
                note: Some(e.to_string()),
            })
        }
        Err(e) => return Err(e),
    };
    let minimal_w: Vec<IntVector> = minimal.poly.roots().iter().map(Monomial::to_vector).collect();
    let mut sorted_minimal = minimal_w.clone();
    sorted_minimal.sort();
    let (verdict, note) = match (&certificate, sorted_minimal == predicted) {
        (Some(c), _) => (
            Verdict::RefutedAt(c.k),
            Some("predicted polynomial leaves a nonzero residual".to_string()),
        ),
        (None, true) => (Verdict::Supported, None),
        (None, false) => (
            Verdict::RefutedAt(r),
            Some(format!(
                "predicted polynomial annihilates but is not minimal; minimal roots {sorted_minimal:?}"
            )),
        ),
    };
    Ok(ConjectureReport {
        verdict,
        predicted,
        minimal: sorted_minimal,
        predicted_annihilates,
        checked_from: r,
        checked_count: count,
        certificate,
        note,
    })
}

/// Whether the finite-difference table settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PolynomialityVerdict {
    Polynomial,
    Inconclusive,
}

/// Counts `|SSYT(kμ/kν, n)|` for `k = 0..=kmax` and their interpolating
/// polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct PolynomialityReport {
    #[serde(serialize_with = "display_list")]
    pub counts: Vec<BigInt>,
    /// Order of the first finite difference that vanishes on the whole
    /// table, if any.
    pub vanishing_order: Option<usize>,
    /// Degree of the interpolating polynomial; `None` for the zero sequence
    /// or an inconclusive table.
    pub degree: Option<usize>,
    /// Coefficients of `c(k)` in the monomial basis `1, k, k², …`.
    #[serde(serialize_with = "display_list")]
    pub coefficients: Vec<BigRational>,
    pub verdict: PolynomialityVerdict,
}

fn display_list<T: fmt::Display, S: Serializer>(items: &[T], serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(items.iter().map(|x| x.to_string()))
}

/// Finite differences of the tableau counts of `kμ/kν`.
///
/// The table must extend at least two entries past the interpolated degree
/// for a verdict.
pub fn polynomiality_check(mu: &Partition, nu: &Partition, n: usize, kmax: usize) -> Result<PolynomialityReport> {
    let family = Family::stretched(mu.clone(), nu.clone(), n);
    let counts: Vec<BigInt> = (0..=kmax)
        .map(|k| {
            family
                .shape(k)
                .map(|s| skew_schur(&s, n).eval_ones())
                .ok_or(Error::NotContained {
                    outer: mu.clone(),
                    inner: nu.clone(),
                })
        })
        .collect::<Result<_>>()?;

    let mut table = vec![counts.clone()];
    let mut vanishing_order = None;
    for order in 0..=counts.len() {
        let row = &table[order];
        if !row.is_empty() && row.iter().all(Zero::is_zero) {
            vanishing_order = Some(order);
            break;
        }
        if row.len() <= 1 {
            break;
        }
        let next: Vec<BigInt> = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        table.push(next);
    }
    let degree = vanishing_order.and_then(|o| o.checked_sub(1));
    let conclusive = match vanishing_order {
        Some(o) => kmax > o,
        None => false,
    };
    let coefficients = match (conclusive, degree) {
        (true, Some(d)) => newton_to_monomial(&table.iter().take(d + 1).map(|r| r[0].clone()).collect::<Vec<_>>()),
        _ => Vec::new(),
    };
    Ok(PolynomialityReport {
        counts,
        vanishing_order,
        degree: if conclusive { degree } else { None },
        coefficients,
        verdict: if conclusive {
            PolynomialityVerdict::Polynomial
        } else {
            PolynomialityVerdict::Inconclusive
        },
    })
}

/// `Σ_i d_i·C(k, i)` expanded in powers of `k`.
fn newton_to_monomial(forward: &[BigInt]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); forward.len()];
    // basis[i] = C(k, i) as a polynomial in k
    let mut basis = vec![BigRational::one()];
    for (i, d) in forward.iter().enumerate() {
        if i > 0 {
            // C(k, i) = C(k, i-1) * (k - (i-1)) / i
            let shift = BigRational::from_integer(BigInt::from(i as i64 - 1));
            let denom = BigRational::from_integer(BigInt::from(i as i64));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (j, b) in basis.iter().enumerate() {
                next[j + 1] += b / &denom;
                next[j] -= b * &shift / &denom;
            }
            basis = next;
        }
        for (j, b) in basis.iter().enumerate() {
            out[j] += b * BigRational::from_integer(d.clone());
        }
    }
    out
}

/// Everything the command line reports about one family.
#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceReport {
    pub family: Family,
    pub effective_kappa: Partition,
    pub effective_lambda: Partition,
    pub shift: usize,
    pub r: usize,
    pub degree: usize,
    pub verified_upto: Option<usize>,
    pub failure: Option<Certificate>,
    pub minimal_degree: Option<usize>,
    pub minimal: Option<CharPoly>,
    #[serde(rename = "W")]
    pub w: Vec<IntVector>,
    pub conjecture: Option<Verdict>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<ConjectureReport>,
}

/// How far [`analyze`] goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    Verify,
    Minimal,
    Conjecture,
}

/// Builds the sequence and `χ`, verifies the recurrence on `count` indices,
/// and optionally computes the minimal polynomial and the conjecture verdict.
pub fn analyze(
    family: &Family,
    start: Option<usize>,
    count: usize,
    seed: u64,
    depth: Depth,
) -> Result<RecurrenceReport> {
    let mut seq = build_sequence(family)?;
    if let Some(r) = start {
        seq = seq.with_start(r)?;
    }
    let chi = char_poly(&family.mu, &family.nu, family.n)?;
    let r = seq.r();
    let mut report = RecurrenceReport {
        family: family.clone(),
        effective_kappa: seq.effective_kappa().clone(),
        effective_lambda: seq.effective_lambda().clone(),
        shift: seq.shift(),
        r,
        degree: chi.degree(),
        verified_upto: None,
        failure: None,
        minimal_degree: None,
        minimal: None,
        w: conjectured_w(&family.mu, &family.nu, family.n)?,
        conjecture: None,
        seed,
        evidence: None,
    };
    match verify_recurrence(&mut seq, &chi, r, count)? {
        RecurrenceCheck::Holds { upto, .. } => report.verified_upto = Some(upto),
        RecurrenceCheck::Fails { k, residual } => {
            report.failure = Some(Certificate { k, residual });
            return Ok(report);
        }
    }
    if depth == Depth::Verify {
        return Ok(report);
    }
    if depth == Depth::Conjecture {
        let c = conjecture_check_with(&mut seq, &chi, count.max(chi.degree()), seed)?;
        report.conjecture = Some(c.verdict.clone());
        report.evidence = Some(c);
    }
    let minimal = minimal_char_poly(&mut seq, &chi, seed)?;
    report.minimal_degree = Some(minimal.degree());
    report.minimal = Some(minimal.poly);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::poly::complete_homogeneous;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn char_poly_examples() {
        let h = char_poly(&part![1], &part![], 2).unwrap();
        assert_eq!(h.to_string(), "t^2 - (x1 + x2)*t + x1*x2");
        let col = char_poly(&part![1, 1], &part![], 2).unwrap();
        assert_eq!(col.to_string(), "t - x1*x2");
        let trivial = char_poly(&part![1], &part![1], 2).unwrap();
        assert_eq!(trivial.to_string(), "t - 1");
        assert_eq!(char_poly(&part![1, 1, 1], &part![], 2).unwrap().degree(), 0);
    }

    #[test]
    fn h_recurrence() {
        let family = Family::stretched(part![1], part![], 2);
        let mut seq = build_sequence(&family).unwrap();
        assert_eq!(seq.r(), 0);
        for k in 0..5 {
            assert_eq!(seq.term(k).unwrap(), &complete_homogeneous(k, 2));
        }
        let chi = char_poly(&part![1], &part![], 2).unwrap();
        assert_eq!(
            verify_recurrence(&mut seq, &chi, 0, 6).unwrap(),
            RecurrenceCheck::Holds { from: 0, upto: 5 }
        );
    }

    #[test]
    fn single_column_recurrence() {
        let family = Family::stretched(part![1, 1], part![], 2);
        let mut seq = build_sequence(&family).unwrap();
        let chi = char_poly(&part![1, 1], &part![], 2).unwrap();
        assert!(verify_recurrence(&mut seq, &chi, 0, 5).unwrap().holds());
    }

    #[test]
    fn skew_family_recurrence() {
        let family = Family::new(part![1], part![], part![2, 1], part![1], 2);
        let mut seq = build_sequence(&family).unwrap();
        let chi = char_poly(&part![2, 1], &part![1], 2).unwrap();
        let r = seq.r();
        assert!(verify_recurrence(&mut seq, &chi, r, 4).unwrap().holds());
    }

    #[test]
    fn wrong_recurrence_reports_residual() {
        let family = Family::stretched(part![1], part![], 2);
        let mut seq = build_sequence(&family).unwrap();
        let wrong = char_poly(&part![1, 1], &part![], 2).unwrap();
        match verify_recurrence(&mut seq, &wrong, 0, 3).unwrap() {
            RecurrenceCheck::Fails { k, residual } => {
                assert_eq!(k, 0);
                // h_1 - x1 x2 h_0
                assert_eq!(residual.to_string(), "-x1*x2 + x1 + x2");
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn build_sequence_shifts_invalid_start() {
        let family = Family::new(part![], part![2], part![1], part![], 2);
        let mut seq = build_sequence(&family).unwrap();
        assert_eq!(seq.shift(), 2);
        assert_eq!(seq.effective_kappa(), &part![2]);
        assert_eq!(seq.effective_lambda(), &part![2]);
        assert!(seq.shape(1).is_err());
        // (2+j)/(2) is a single row of j boxes
        assert_eq!(seq.term(5).unwrap(), &complete_homogeneous(3, 2));

        let bad = Family::new(part![], part![1], part![1, 1], part![1, 1], 2);
        assert_eq!(build_sequence(&bad).unwrap_err(), Error::NoStretch { index: 0 });
    }

    #[test]
    fn berlekamp_massey_examples() {
        let geo: Vec<_> = [1, 2, 4, 8, 16].iter().map(|&v| q(v)).collect();
        assert_eq!(berlekamp_massey(&geo), vec![q(-2), q(1)]);
        let fib: Vec<_> = [0, 1, 1, 2, 3, 5].iter().map(|&v| q(v)).collect();
        assert_eq!(berlekamp_massey(&fib), vec![q(-1), q(-1), q(1)]);
        // h_k(3, 2) = 3^{k+1} - 2^{k+1}
        let h: Vec<_> = (0..7).map(|k| q(3i64.pow(k + 1) - 2i64.pow(k + 1))).collect();
        assert_eq!(berlekamp_massey(&h), vec![q(6), q(-5), q(1)]);
        assert_eq!(berlekamp_massey(&[q(0), q(0)]), vec![q(1)]);
    }

    #[test]
    fn minimal_examples() {
        let family = Family::stretched(part![1, 1], part![], 2);
        let mut seq = build_sequence(&family).unwrap();
        let chi = char_poly(&part![1, 1], &part![], 2).unwrap();
        let m = minimal_char_poly(&mut seq, &chi, 7).unwrap();
        assert_eq!(m.poly, chi);

        let family = Family::stretched(part![1], part![], 2);
        let mut seq = build_sequence(&family).unwrap();
        let chi = char_poly(&part![1], &part![], 2).unwrap();
        let m = minimal_char_poly(&mut seq, &chi, 7).unwrap();
        assert_eq!(m.poly, chi);
        assert_eq!(m.specialized_degrees, vec![2, 2, 2]);

        let family = Family::stretched(part![2, 1], part![], 3);
        let mut seq = build_sequence(&family).unwrap();
        let chi = char_poly(&part![2, 1], &part![], 3).unwrap();
        assert_eq!(chi.degree(), 8);
        assert_eq!(chi.multiplicities()[&Monomial::new(vec![1, 1, 1])], 2);
        let m = minimal_char_poly(&mut seq, &chi, 7).unwrap();
        assert!(m.poly.multiplicities().values().all(|&c| c == 1));
        assert_eq!(m.degree(), 6);
        assert!(chi.is_divisible_by(&m.poly).unwrap());
        assert!(m.poly.is_permutation_invariant());
    }

    #[test]
    fn conjectured_w_examples() {
        let w = conjectured_w(&part![1], &part![], 2).unwrap();
        assert_eq!(w, vec![IntVector(vec![0, 1]), IntVector(vec![1, 0])]);
        let w = conjectured_w(&part![2, 1], &part![], 3).unwrap();
        assert_eq!(w.len(), 6);
        assert!(!w.contains(&IntVector(vec![1, 1, 1])));
        let w = conjectured_w(&part![1, 1], &part![], 2).unwrap();
        assert_eq!(w, vec![IntVector(vec![1, 1])]);
    }

    #[test]
    fn conjecture_examples() {
        for mu in [part![1], part![1, 1]] {
            let report = conjecture_check(&Family::stretched(mu, part![], 2), 4, 1).unwrap();
            assert_eq!(report.verdict, Verdict::Supported);
        }
    }

    #[test]
    fn polynomiality_examples() {
        let rep = polynomiality_check(&part![1], &part![], 2, 6).unwrap();
        assert_eq!(rep.degree, Some(1));
        assert_eq!(rep.coefficients, vec![q(1), q(1)]);
        let rep = polynomiality_check(&part![1, 1], &part![], 2, 6).unwrap();
        assert_eq!(rep.degree, Some(0));
        let rep = polynomiality_check(&part![2, 1], &part![1], 2, 8).unwrap();
        assert_eq!(rep.verdict, PolynomialityVerdict::Polynomial);
        // h_k(1,1)^2 = (k+1)^2
        assert_eq!(rep.degree, Some(2));
        assert_eq!(rep.coefficients, vec![q(1), q(2), q(1)]);
        let short = polynomiality_check(&part![2, 1], &part![1], 2, 2).unwrap();
        assert_eq!(short.verdict, PolynomialityVerdict::Inconclusive);
    }

    #[test]
    fn division_and_display() {
        let chi = char_poly(&part![2, 1], &part![1], 2).unwrap();
        let sq = CharPoly::from_roots(2, chi.distinct_roots());
        assert!(chi.is_divisible_by(&sq).unwrap());
        let other = CharPoly::from_roots(2, vec![Monomial::new(vec![3, 0])]);
        assert!(!chi.is_divisible_by(&other).unwrap());
    }
}
