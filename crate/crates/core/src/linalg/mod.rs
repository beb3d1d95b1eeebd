//! Exact sparse row reduction over the rationals.
//!
//! [`EchelonAccumulator`] keeps its rows in fully reduced echelon form: every
//! row has leading coefficient 1 at its pivot column, and no row has an entry
//! at another row's pivot column. Reducing a vector is then a single pass
//! over its pivot entries.
//!
//! Provenance is not stored per row. Instead every installation and every
//! elimination step is logged, and [`EchelonAccumulator::express_in_span`]
//! replays the log backwards to rewrite a combination of rows as a
//! combination of the originally inserted vectors.

pub mod modular;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Coefficient;

/// A sparse vector with sorted, nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Coefficient)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: Vec::new(),
        }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, Coefficient)>) -> Result<Self> {
        let mut map: BTreeMap<usize, Coefficient> = BTreeMap::new();
        for (i, c) in entries {
            if i >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: i + 1,
                });
            }
            *map.entry(i).or_insert_with(Coefficient::zero) += c;
        }
        Ok(SparseVec {
            dim,
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn from_dense(values: &[Coefficient]) -> Self {
        SparseVec {
            dim: values.len(),
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, Coefficient)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Coefficient {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Coefficient::zero(),
        }
    }

    pub fn leading_index(&self) -> Option<usize> {
        self.entries.first().map(|e| e.0)
    }

    pub fn to_dense(&self) -> Vec<Coefficient> {
        let mut out = vec![Coefficient::zero(); self.dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    /// `self + c * other`
    pub fn add_scaled(&self, other: &SparseVec, c: &Coefficient) -> SparseVec {
        let row: Vec<(u32, Coefficient)> = other
            .entries
            .iter()
            .map(|(i, x)| (*i as u32, x.clone()))
            .collect();
        let mine: Vec<(u32, Coefficient)> = self
            .entries
            .iter()
            .map(|(i, x)| (*i as u32, x.clone()))
            .collect();
        SparseVec {
            dim: self.dim,
            entries: axpy(&mine, &row, &-c.clone())
                .into_iter()
                .map(|(i, x)| (i as usize, x))
                .collect(),
        }
    }
}

/// `a - f * b` on sorted sparse rows.
fn axpy(a: &[(u32, Coefficient)], b: &[(u32, Coefficient)], f: &Coefficient) -> Vec<(u32, Coefficient)> {
    if f.is_zero() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Debug, Clone)]
enum Event {
    /// `row = (inserted[source] - sum a_j * row_j) / scale`
    Install {
        row: u32,
        scale: Coefficient,
        reductions: Vec<(u32, Coefficient)>,
    },
    /// `rows[target] -= factor * rows[source]`
    Eliminate {
        target: u32,
        source: u32,
        factor: Coefficient,
    },
}

/// Outcome of [`EchelonAccumulator::express_in_span`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanMembership {
    /// Coefficients `(inserted index, c)` with `sum c * inserted = v`; zeros omitted.
    InSpan(Vec<(usize, Coefficient)>),
    NotInSpan {
        leading_column: usize,
        remainder: SparseVec,
    },
}

const NO_PIVOT: u32 = u32::MAX;

/// Incremental reduced row echelon form with lazily reconstructed provenance.
#[derive(Debug, Clone)]
pub struct EchelonAccumulator {
    dim: usize,
    rows: Vec<Vec<(u32, Coefficient)>>,
    pivot_of_row: Vec<u32>,
    row_of_col: Vec<u32>,
    /// Rows that may hold an entry at each non-pivot column. May contain stale
    /// or repeated entries; always re-checked against the row.
    col_rows: Vec<Vec<u32>>,
    source_of_row: Vec<usize>,
    inserted: usize,
    track_provenance: bool,
    log: Vec<Event>,
}

impl EchelonAccumulator {
    pub fn new(dim: usize) -> Self {
        Self::with_provenance(dim, true)
    }

    /// With `track_provenance = false` only rank and reduction are available.
    pub fn with_provenance(dim: usize, track_provenance: bool) -> Self {
        EchelonAccumulator {
            dim,
            rows: Vec::new(),
            pivot_of_row: Vec::new(),
            row_of_col: vec![NO_PIVOT; dim],
            col_rows: vec![Vec::new(); dim],
            source_of_row: Vec::new(),
            inserted: 0,
            track_provenance,
            log: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted_count(&self) -> usize {
        self.inserted
    }

    pub fn tracks_provenance(&self) -> bool {
        self.track_provenance
    }

    /// Pivot columns in installation order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivot_of_row.iter().map(|&c| c as usize).collect()
    }

    /// Current pivot rows, in installation order.
    pub fn rows(&self) -> Vec<SparseVec> {
        self.rows
            .iter()
            .map(|r| SparseVec {
                dim: self.dim,
                entries: r.iter().map(|(i, c)| (*i as usize, c.clone())).collect(),
            })
            .collect()
    }

    fn check_dim(&self, v: &SparseVec) -> Result<()> {
        if v.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.dim,
            });
        }
        Ok(())
    }

    /// Remainder of `v` modulo the rows, plus the row multipliers used.
    fn reduce(&self, v: &SparseVec) -> (Vec<(u32, Coefficient)>, Vec<(u32, Coefficient)>) {
        let mut multipliers = Vec::new();
        let mut acc: BTreeMap<u32, Coefficient> = BTreeMap::new();
        for (col, a) in &v.entries {
            let r = self.row_of_col[*col];
            if r == NO_PIVOT {
                *acc.entry(*col as u32).or_insert_with(Coefficient::zero) += a;
            } else {
                multipliers.push((r, a.clone()));
            }
        }
        for (r, a) in &multipliers {
            let pivot = self.pivot_of_row[*r as usize];
            for (col, x) in &self.rows[*r as usize] {
                if *col == pivot {
                    continue;
                }
                *acc.entry(*col).or_insert_with(Coefficient::zero) -= a * x;
            }
        }
        let remainder = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        (remainder, multipliers)
    }

    /// True if `v` lies in the span of the inserted vectors.
    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        self.check_dim(v)?;
        Ok(self.reduce(v).0.is_empty())
    }

    /// Reduces `v` and installs the remainder as a new pivot row if it is
    /// nonzero. Returns whether the rank increased.
    pub fn insert_reduce(&mut self, v: &SparseVec) -> Result<bool> {
        self.check_dim(v)?;
        let source = self.inserted;
        self.inserted += 1;
        let (remainder, multipliers) = self.reduce(v);
        if remainder.is_empty() {
            return Ok(false);
        }
        let pivot = remainder[0].0;
        let scale = remainder[0].1.clone();
        let inv = scale.recip();
        let row: Vec<(u32, Coefficient)> = remainder.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        let k = self.rows.len() as u32;

        let mut eliminations = Vec::new();
        let candidates = std::mem::take(&mut self.col_rows[pivot as usize]);
        for j in candidates {
            let target = &self.rows[j as usize];
            let Ok(at) = target.binary_search_by_key(&pivot, |e| e.0) else {
                continue;
            };
            let factor = target[at].1.clone();
            let updated = axpy(target, &row, &factor);
            // Columns new to this row need an index entry.
            let old = &self.rows[j as usize];
            let mut o = 0;
            for (col, _) in &updated {
                while o < old.len() && old[o].0 < *col {
                    o += 1;
                }
                if o == old.len() || old[o].0 != *col {
                    self.col_rows[*col as usize].push(j);
                }
            }
            self.rows[j as usize] = updated;
            eliminations.push((j, factor));
        }

        for (col, _) in row.iter().skip(1) {
            self.col_rows[*col as usize].push(k);
        }
        self.row_of_col[pivot as usize] = k;
        self.pivot_of_row.push(pivot);
        self.rows.push(row);
        self.source_of_row.push(source);

        if self.track_provenance {
            self.log.push(Event::Install {
                row: k,
                scale,
                reductions: multipliers,
            });
            for (j, factor) in eliminations {
                self.log.push(Event::Eliminate {
                    target: j,
                    source: k,
                    factor,
                });
            }
        }
        Ok(true)
    }

    /// Writes `v` as a combination of inserted vectors, or reports the
    /// leading column of its nonzero remainder.
    pub fn express_in_span(&self, v: &SparseVec) -> Result<SpanMembership> {
        self.check_dim(v)?;
        let (remainder, multipliers) = self.reduce(v);
        if let Some((lead, _)) = remainder.first() {
            return Ok(SpanMembership::NotInSpan {
                leading_column: *lead as usize,
                remainder: SparseVec {
                    dim: self.dim,
                    entries: remainder.into_iter().map(|(i, c)| (i as usize, c)).collect(),
                },
            });
        }
        if !self.track_provenance {
            return Err(Error::InvalidParameters(
                "accumulator was built without provenance".into(),
            ));
        }
        let mut on_rows = vec![Coefficient::zero(); self.rows.len()];
        for (r, a) in multipliers {
            on_rows[r as usize] += a;
        }
        let mut on_inserted: BTreeMap<usize, Coefficient> = BTreeMap::new();
        for event in self.log.iter().rev() {
            match event {
                Event::Eliminate {
                    target,
                    source,
                    factor,
                } => {
                    let t = &on_rows[*target as usize];
                    if !t.is_zero() {
                        let d = t * factor;
                        on_rows[*source as usize] -= d;
                    }
                }
                Event::Install {
                    row,
                    scale,
                    reductions,
                } => {
                    let c = std::mem::replace(&mut on_rows[*row as usize], Coefficient::zero());
                    if c.is_zero() {
                        continue;
                    }
                    let c = c / scale;
                    for (j, a) in reductions {
                        on_rows[*j as usize] -= &c * a;
                    }
                    on_inserted.insert(self.source_of_row[*row as usize], c);
                }
            }
        }
        Ok(SpanMembership::InSpan(
            on_inserted.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        ))
    }
}

/// Rank by straightforward dense elimination; used for cross-checks.
pub fn dense_rank(rows: &[SparseVec]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut m: Vec<Vec<Coefficient>> = rows.iter().map(|r| r.to_dense()).collect();
    let cols = first.dim;
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = Coefficient::one() / &m[rank][col];
        let pivot_row = m[rank].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..cols {
                let d = &f * &pivot_row[c];
                m[r][c] -= d;
            }
        }
        rank += 1;
    }
    rank
}
