//! Skew shapes, semistandard tableaux, and the row-concatenation monoid.
//!
//! Tableaux are stored row by row. Row `i` lists only the entries of the
//! ordinary boxes, which occupy columns `inner_i + 1 ..= outer_i`; the skew
//! boxes to their left carry no value.
//!
//! The product [`insert`] concatenates two tableaux row by row, puts all skew
//! boxes first, and sorts the ordinary entries of each row. The result is
//! again semistandard, the weights add, and the operation is commutative,
//! associative and cancellative with the empty tableau as identity. It is not
//! the plactic product.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{IntVector, Partition};

/// The diagram `outer/inner`, with `inner ⊆ outer`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ShapeJson")]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

#[derive(Deserialize)]
struct ShapeJson {
    outer: Partition,
    #[serde(default)]
    inner: Partition,
}

impl TryFrom<ShapeJson> for SkewShape {
    type Error = Error;

    fn try_from(value: ShapeJson) -> Result<Self> {
        SkewShape::new(value.outer, value.inner)
    }
}

/// A column of a skew diagram, described by how many skew boxes sit at its
/// top and its total height. Two columns "match" when both numbers agree,
/// i.e. when their ordinary boxes cover the same rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnSpan {
    pub skew: usize,
    pub height: usize,
}

impl ColumnSpan {
    /// 1-based `(first_row, last_row)` of the ordinary boxes. For a column
    /// made only of skew boxes this is the empty interval `(skew + 1, skew)`.
    pub fn row_interval(&self) -> (usize, usize) {
        (self.skew + 1, self.height)
    }

    pub fn len(&self) -> usize {
        self.height - self.skew
    }

    pub fn is_empty(&self) -> bool {
        self.height == self.skew
    }
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::NotContained { outer, inner });
        }
        Ok(Self { outer, inner })
    }

    /// A straight (non-skew) shape.
    pub fn straight(outer: Partition) -> Self {
        Self {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    /// Number of rows of the diagram (skew or ordinary).
    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Number of ordinary boxes.
    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn skew_boxes(&self) -> usize {
        self.inner.size()
    }

    /// Ordinary boxes in row `i` (0-based).
    pub fn row_len(&self, i: usize) -> usize {
        self.outer.part(i) - self.inner.part(i)
    }

    /// Columns `1 ..= outer_1`, left to right.
    pub fn columns(&self) -> Vec<ColumnSpan> {
        (1..=self.outer.first())
            .map(|j| ColumnSpan {
                skew: self.inner.parts().iter().take_while(|&&p| p >= j).count(),
                height: self.outer.parts().iter().take_while(|&&p| p >= j).count(),
            })
            .collect()
    }

    /// Shape of the product of two tableaux with these shapes.
    pub fn add(&self, other: &SkewShape) -> SkewShape {
        SkewShape {
            outer: self.outer.add(&other.outer),
            inner: self.inner.add(&other.inner),
        }
    }

    pub fn scale(&self, k: usize) -> SkewShape {
        SkewShape {
            outer: self.outer.scale(k),
            inner: self.inner.scale(k),
        }
    }

    /// Builds a shape from a multiset of columns, placed left to right in
    /// decreasing order.
    pub fn from_columns(columns: &[ColumnSpan]) -> Result<SkewShape> {
        let mut heights: Vec<usize> = columns.iter().map(|c| c.height).collect();
        let mut skews: Vec<usize> = columns.iter().map(|c| c.skew).collect();
        heights.sort_unstable_by(|a, b| b.cmp(a));
        skews.sort_unstable_by(|a, b| b.cmp(a));
        SkewShape::new(conjugate(&heights), conjugate(&skews))
    }
}

/// Conjugate of a weakly decreasing list of column heights.
fn conjugate(cols: &[usize]) -> Partition {
    let rows = cols.first().copied().unwrap_or(0);
    let parts = (1..=rows)
        .map(|i| cols.iter().take_while(|&&c| c >= i).count())
        .collect();
    Partition::new(parts).expect("conjugate of a decreasing list is a partition")
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

impl fmt::Debug for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A semistandard filling of a skew shape with entries in `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct Tableau {
    shape: SkewShape,
    n: usize,
    rows: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    outer: Partition,
    #[serde(default)]
    inner: Partition,
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl TryFrom<TableauJson> for Tableau {
    type Error = Error;

    fn try_from(value: TableauJson) -> Result<Self> {
        let shape = SkewShape::new(value.outer, value.inner)?;
        Tableau::new(shape, value.n, value.rows)
    }
}

impl From<Tableau> for TableauJson {
    fn from(t: Tableau) -> Self {
        TableauJson {
            outer: t.shape.outer,
            inner: t.shape.inner,
            n: t.n,
            rows: t.rows,
        }
    }
}

/// One column of a tableau, usable as a single-column tableau in its own
/// right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnView {
    /// 1-based column index.
    pub col_index: usize,
    /// 1-based `(first_row, last_row)`; empty when the column is all skew.
    pub row_interval: (usize, usize),
    /// Strictly increasing entries from top to bottom.
    pub entries: Vec<usize>,
}

impl ColumnView {
    pub fn span(&self) -> ColumnSpan {
        ColumnSpan {
            skew: self.row_interval.0 - 1,
            height: self.row_interval.1,
        }
    }

    /// The column as a tableau of shape `1^last / 1^(first-1)`.
    pub fn to_tableau(&self, n: usize) -> Tableau {
        let span = self.span();
        let shape = SkewShape {
            outer: Partition::column(span.height),
            inner: Partition::column(span.skew),
        };
        let mut rows = vec![Vec::new(); span.height];
        for (offset, &e) in self.entries.iter().enumerate() {
            rows[span.skew + offset].push(e);
        }
        Tableau { shape, n, rows }
    }
}

impl Tableau {
    /// Builds and validates a tableau. `rows` may omit trailing rows that have
    /// no ordinary boxes.
    pub fn new(shape: SkewShape, n: usize, mut rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.len() > shape.rows() {
            return Err(Error::InvalidTableau(format!(
                "{} rows given for shape {shape} with {} rows",
                rows.len(),
                shape.rows()
            )));
        }
        rows.resize(shape.rows(), Vec::new());
        let t = Tableau { shape, n, rows };
        t.check()?;
        Ok(t)
    }

    /// The empty tableau, identity of [`insert`].
    pub fn empty(n: usize) -> Self {
        Tableau {
            shape: SkewShape::empty(),
            n,
            rows: Vec::new(),
        }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entry at 0-based row `i` and 1-based column `j`, `None` for skew boxes
    /// and positions outside the diagram.
    pub fn entry(&self, i: usize, j: usize) -> Option<usize> {
        let start = self.shape.inner.part(i);
        if j <= start || j > self.shape.outer.part(i) {
            return None;
        }
        self.rows.get(i).map(|r| r[j - start - 1])
    }

    /// Ordinary entries in row-major order.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn is_valid_ssyt(&self) -> bool {
        self.check().is_ok()
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTableau(msg));
        if self.rows.len() != self.shape.rows() {
            return bad(format!(
                "expected {} rows, found {}",
                self.shape.rows(),
                self.rows.len()
            ));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.shape.row_len(i) {
                return bad(format!(
                    "row {} has {} entries, shape {} needs {}",
                    i + 1,
                    row.len(),
                    self.shape,
                    self.shape.row_len(i)
                ));
            }
            if let Some(&e) = row.iter().find(|&&e| e == 0 || e > self.n) {
                return bad(format!("entry {e} in row {} outside 1..={}", i + 1, self.n));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return bad(format!("row {} is not weakly increasing", i + 1));
            }
        }
        for i in 1..self.rows.len() {
            let lo = self.shape.inner.part(i).max(self.shape.inner.part(i - 1)) + 1;
            let hi = self.shape.outer.part(i);
            for j in lo..=hi {
                if let (Some(above), Some(below)) = (self.entry(i - 1, j), self.entry(i, j)) {
                    if above >= below {
                        return bad(format!("column {j} is not strictly increasing at rows {}-{}", i, i + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Content vector of length `n`: entry `k-1` counts the boxes holding `k`.
    pub fn weight(&self) -> IntVector {
        let mut w = vec![0i64; self.n];
        for &e in self.rows.iter().flatten() {
            w[e - 1] += 1;
        }
        IntVector(w)
    }

    /// Every column `1 ..= outer_1`, including columns made only of skew
    /// boxes (those have an empty row interval and no entries).
    pub fn columns(&self) -> Vec<ColumnView> {
        self.shape
            .columns()
            .into_iter()
            .enumerate()
            .map(|(idx, span)| {
                let j = idx + 1;
                let entries = (span.skew..span.height)
                    .map(|i| self.entry(i, j).expect("ordinary box"))
                    .collect();
                ColumnView {
                    col_index: j,
                    row_interval: span.row_interval(),
                    entries,
                }
            })
            .collect()
    }

    /// The `k`-fold product `self ⊠ … ⊠ self`; `k = 0` gives the empty tableau.
    pub fn power(&self, k: usize) -> Result<Tableau> {
        let mut acc = Tableau::empty(self.n);
        for _ in 0..k {
            acc = insert(&acc, self)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Tableau {
    /// English convention, `■` for skew boxes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shape.outer.is_empty() {
            return f.write_str("∅");
        }
        let width = self.n.to_string().len();
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let skew = (0..self.shape.inner.part(i)).map(|_| format!("{:>width$}", "■"));
            let cells: Vec<String> = skew.chain(row.iter().map(|e| format!("{e:>width$}"))).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau({} n={} rows={:?})", self.shape, self.n, self.rows)
    }
}

/// `T1 ⊠ T2`: concatenate rows, skew boxes first, sort each row.
pub fn insert(t1: &Tableau, t2: &Tableau) -> Result<Tableau> {
    if t1.n != t2.n {
        return Err(Error::AlphabetMismatch {
            left: t1.n,
            right: t2.n,
        });
    }
    let shape = t1.shape.add(&t2.shape);
    let rows = (0..shape.rows())
        .map(|i| {
            let mut row: Vec<usize> = t1
                .rows
                .get(i)
                .into_iter()
                .chain(t2.rows.get(i))
                .flatten()
                .copied()
                .collect();
            row.sort_unstable();
            row
        })
        .collect();
    let t = Tableau { shape, n: t1.n, rows };
    t.check()
        .map_err(|e| Error::Internal(format!("{t1:?} ⊠ {t2:?} is not semistandard: {e}")))?;
    Ok(t)
}

/// Product of a sequence of tableaux over alphabet `n`.
pub fn insert_all<'a>(n: usize, ts: impl IntoIterator<Item = &'a Tableau>) -> Result<Tableau> {
    ts.into_iter().try_fold(Tableau::empty(n), |acc, t| insert(&acc, t))
}

/// Whether every column of `small` occurs among the columns of `big`,
/// counting multiplicity.
pub fn sits_inside(small: &SkewShape, big: &SkewShape) -> bool {
    let mut available: BTreeMap<ColumnSpan, usize> = BTreeMap::new();
    for c in big.columns() {
        *available.entry(c).or_default() += 1;
    }
    small.columns().into_iter().all(|c| match available.get_mut(&c) {
        Some(count) if *count > 0 => {
            *count -= 1;
            true
        }
        _ => false,
    })
}

/// Splits `t = t' ⊠ t''` with `t'` of shape `small`, taking for each column
/// of `small` the leftmost unused matching column of `t`.
pub fn decompose(t: &Tableau, small: &SkewShape) -> Result<(Tableau, Tableau)> {
    let cols = t.columns();
    let mut used = vec![false; cols.len()];
    let mut picked = Vec::new();
    for span in small.columns() {
        let idx = cols
            .iter()
            .enumerate()
            .position(|(idx, c)| !used[idx] && c.span() == span)
            .ok_or_else(|| Error::NotInside {
                small: small.to_string(),
                big: t.shape.to_string(),
            })?;
        used[idx] = true;
        picked.push(cols[idx].to_tableau(t.n));
    }
    let rest: Vec<Tableau> = cols
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(c, _)| c.to_tableau(t.n))
        .collect();
    let first = insert_all(t.n, &picked)?;
    let second = insert_all(t.n, &rest)?;
    if &first.shape != small || insert(&first, &second)? != *t {
        return Err(Error::Internal(format!(
            "decomposition of {t:?} along {small} does not reassemble"
        )));
    }
    Ok((first, second))
}

/// Least `r >= 0` such that `μ/ν` sits inside `(κ + rμ)/(λ + rν)`.
///
/// Expects `κ ⊇ λ` so that every shape of the family is valid. When
/// `κ = λ = ∅` the answer is `0`. Otherwise the search runs up to `κ_1 + 1`,
/// beyond which the columns of `μ/ν` are always present.
pub fn stabilization_index(kappa: &Partition, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<usize> {
    let small = SkewShape::new(mu.clone(), nu.clone())?;
    let shape_at = |r: usize| {
        SkewShape::new(kappa.add(&mu.scale(r)), lambda.add(&nu.scale(r))).map_err(|_| Error::InvalidTerm { k: r })
    };
    let bound = kappa.first() + 1;
    // validity at the bound and beyond follows from validity at 0 and μ ⊇ ν
    shape_at(0)?;
    shape_at(bound)?;
    if kappa.is_empty() && lambda.is_empty() {
        return Ok(0);
    }
    for r in 0..=bound {
        if sits_inside(&small, &shape_at(r)?) {
            return Ok(r);
        }
    }
    Err(Error::Internal(format!(
        "{small} does not sit inside ({kappa}+r{mu})/({lambda}+r{nu}) for any r <= {bound}"
    )))
}

/// Every semistandard tableau of `shape` with entries in `1..=n`, ordered
/// lexicographically by reading word.
pub fn enumerate(shape: &SkewShape, n: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    Filler::new(shape, n, None).run(&mut |rows| {
        out.push(Tableau {
            shape: shape.clone(),
            n,
            rows: rows.to_vec(),
        })
    });
    out.sort_by_cached_key(Tableau::reading_word);
    out
}

/// Tableaux of `shape` with the given weight, in the same order as
/// [`enumerate`]. The alphabet is `1..=w.len()`.
pub fn enumerate_with_weight(shape: &SkewShape, w: &IntVector) -> Vec<Tableau> {
    let n = w.len();
    if !w.is_nonnegative() || w.sum() as usize != shape.size() {
        return Vec::new();
    }
    let limit: Vec<usize> = w.entries().iter().map(|&e| e as usize).collect();
    let mut out = Vec::new();
    Filler::new(shape, n, Some(limit)).run(&mut |rows| {
        out.push(Tableau {
            shape: shape.clone(),
            n,
            rows: rows.to_vec(),
        })
    });
    out.sort_by_cached_key(Tableau::reading_word);
    out
}

/// Number of tableaux of `shape` with weight `w`, without materializing them.
pub(crate) fn count_with_weight(shape: &SkewShape, w: &IntVector) -> u64 {
    if !w.is_nonnegative() || w.sum() as usize != shape.size() {
        return 0;
    }
    let limit: Vec<usize> = w.entries().iter().map(|&e| e as usize).collect();
    let mut count = 0u64;
    Filler::new(shape, w.len(), Some(limit)).run(&mut |_| count += 1);
    count
}

/// Column-by-column backtracking fill. Boxes are visited left to right,
/// top to bottom within a column; each box is bounded below by its left
/// neighbour and by the box above it, and above by the room the rest of the
/// column needs.
struct Filler {
    n: usize,
    /// (row, boxes still to fill below this one in its column, has ordinary box above)
    boxes: Vec<(usize, usize, bool)>,
    rows: Vec<Vec<usize>>,
    remaining: Option<Vec<usize>>,
}

impl Filler {
    fn new(shape: &SkewShape, n: usize, remaining: Option<Vec<usize>>) -> Self {
        let mut boxes = Vec::with_capacity(shape.size());
        for span in shape.columns() {
            for i in span.skew..span.height {
                boxes.push((i, span.height - 1 - i, i > span.skew));
            }
        }
        Filler {
            n,
            boxes,
            rows: vec![Vec::new(); shape.rows()],
            remaining,
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Vec<usize>])) {
        self.step(0, visit);
    }

    fn step(&mut self, idx: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
        let Some(&(row, below, has_above)) = self.boxes.get(idx) else {
            visit(&self.rows);
            return;
        };
        let mut lo = self.rows[row].last().copied().unwrap_or(1);
        if has_above {
            let above = *self.rows[row - 1].last().expect("box above is filled");
            lo = lo.max(above + 1);
        }
        let hi = self.n.saturating_sub(below);
        for v in lo..=hi {
            if let Some(rem) = &mut self.remaining {
                if rem[v - 1] == 0 {
                    continue;
                }
                rem[v - 1] -= 1;
            }
            self.rows[row].push(v);
            self.step(idx + 1, visit);
            self.rows[row].pop();
            if let Some(rem) = &mut self.remaining {
                rem[v - 1] += 1;
            }
        }
    }
}
