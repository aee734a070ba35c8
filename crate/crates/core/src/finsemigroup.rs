//! Finite magmas and semigroups given by Cayley tables.
//!
//! Elements are `0..n`. A [`CayleyTable`] is only structurally checked; an
//! associativity proof is carried by [`SemigroupRecord`], which can only be
//! obtained through [`validate_associativity`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order a [`CayleyTable`] may have.
pub const MAX_ORDER: usize = 6;

/// Largest order accepted by [`enumerate_tables`].
pub const MAX_ENUMERATION_ORDER: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("order {0} outside supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("entry {value} out of range at row {row}, col {col}")]
    EntryOutOfRange { row: usize, col: usize, value: i64 },
    #[error("elements {0} and {1} are both two-sided identities")]
    DuplicateIdentity(usize, usize),
    #[error("enumeration order {0} outside supported range 1..={MAX_ENUMERATION_ORDER}")]
    EnumerationOrder(usize),
}

/// A binary operation on `{0, …, n-1}`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<u8>,
}

impl CayleyTable {
    pub fn new(n: usize, rows: &[Vec<usize>]) -> Result<Self, TableError> {
        let rows: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect();
        Self::from_signed_rows(n, &rows)
    }

    /// Like [`CayleyTable::new`] but accepts raw (possibly negative) entries,
    /// so parse errors can name the offending value.
    pub fn from_signed_rows(n: usize, rows: &[Vec<i64>]) -> Result<Self, TableError> {
        if n == 0 || n > MAX_ORDER {
            return Err(TableError::OrderOutOfRange(n));
        }
        if rows.len() != n {
            return Err(TableError::RowCount {
                expected: n,
                found: rows.len(),
            });
        }
        let mut cells = Vec::with_capacity(n * n);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != n {
                return Err(TableError::RaggedRow {
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value < 0 || value as usize >= n {
                    return Err(TableError::EntryOutOfRange { row, col, value });
                }
                cells.push(value as u8);
            }
        }
        Ok(CayleyTable { n, cells })
    }

    fn from_cells(n: usize, cells: &[usize]) -> Self {
        CayleyTable {
            n,
            cells: cells.iter().map(|&c| c as u8).collect(),
        }
    }

    /// Builds the table of `op` on `{0, …, n-1}`.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, TableError> {
        let rows: Vec<Vec<usize>> = (0..n).map(|r| (0..n).map(|s| op(r, s)).collect()).collect();
        Self::new(n, &rows)
    }

    /// Order of the underlying set.
    pub fn order(&self) -> usize {
        self.n
    }

    /// The product `ξ(r, s)`.
    #[inline]
    pub fn mul(&self, r: usize, s: usize) -> usize {
        self.cells[r * self.n + s] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.n)
            .map(|row| row.iter().map(|&c| c as usize).collect())
            .collect()
    }

    /// Returns a copy with the single entry `(r, s)` replaced.
    pub fn with_entry(&self, r: usize, s: usize, value: usize) -> Result<Self, TableError> {
        let mut rows = self.rows();
        rows[r][s] = value;
        Self::new(self.n, &rows)
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A triple `(r, s, t)` with `ξ(ξ(r,s),t) ≠ ξ(r,ξ(s,t))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Error)]
#[error("not associative: ({r}*{s})*{t} = {left} but {r}*({s}*{t}) = {right}")]
pub struct NonAssociative {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub left: usize,
    pub right: usize,
}

/// A Cayley table whose associativity has been checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupRecord {
    table: CayleyTable,
    identity: Option<usize>,
}

impl SemigroupRecord {
    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn into_table(self) -> CayleyTable {
        self.table
    }
}

/// First failing triple in lexicographic order, if any.
fn first_nonassociative(table: &CayleyTable) -> Option<NonAssociative> {
    let n = table.order();
    for r in 0..n {
        for s in 0..n {
            let rs = table.mul(r, s);
            for t in 0..n {
                let left = table.mul(rs, t);
                let right = table.mul(r, table.mul(s, t));
                if left != right {
                    return Some(NonAssociative { r, s, t, left, right });
                }
            }
        }
    }
    None
}

/// Accepts the table iff every one of the `n³` triples associates.
pub fn validate_associativity(table: &CayleyTable) -> Result<SemigroupRecord, NonAssociative> {
    if let Some(witness) = first_nonassociative(table) {
        return Err(witness);
    }
    let identity = identity_of(table).expect("associative tables have at most one identity");
    Ok(SemigroupRecord {
        table: table.clone(),
        identity,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("malformed table: {0}")]
    Structural(#[from] TableError),
    #[error(transparent)]
    NonAssociative(#[from] NonAssociative),
}

/// Structural check followed by the associativity check.
pub fn validate_rows(n: usize, rows: &[Vec<usize>]) -> Result<SemigroupRecord, ValidationError> {
    let table = CayleyTable::new(n, rows)?;
    Ok(validate_associativity(&table)?)
}

fn is_identity(table: &CayleyTable, e: usize) -> bool {
    (0..table.order()).all(|s| table.mul(e, s) == s && table.mul(s, e) == s)
}

fn identity_of(table: &CayleyTable) -> Result<Option<usize>, TableError> {
    let mut found = None;
    for e in (0..table.order()).filter(|&e| is_identity(table, e)) {
        if let Some(prev) = found {
            return Err(TableError::DuplicateIdentity(prev, e));
        }
        found = Some(e);
    }
    Ok(found)
}

/// The two-sided identity of the semigroup, if it has one.
///
/// Recomputed from the table rather than trusted from the record.
pub fn find_identity(rec: &SemigroupRecord) -> Result<Option<usize>, TableError> {
    identity_of(rec.table())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFilter {
    AllMagmas,
    AssociativeOnly,
}

/// Lexicographic (row-major) stream of Cayley tables of order `n`.
///
/// In associative-only mode partial tables are pruned as soon as a fully
/// determined triple fails to associate.
pub fn enumerate_tables(n: usize, filter: TableFilter) -> Result<TableStream, TableError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(TableError::EnumerationOrder(n));
    }
    Ok(TableStream {
        n,
        filter,
        cells: vec![0; n * n],
        pos: 0,
        done: false,
    })
}

pub struct TableStream {
    n: usize,
    filter: TableFilter,
    cells: Vec<usize>,
    /// Cell currently being tried; `cells[..pos]` are fixed and consistent.
    pos: usize,
    done: bool,
}

impl TableStream {
    fn consistent(&self) -> bool {
        if self.filter == TableFilter::AllMagmas {
            return true;
        }
        let n = self.n;
        let known = |idx: usize| idx <= self.pos;
        for r in 0..n {
            for s in 0..n {
                if !known(r * n + s) {
                    continue;
                }
                let rs = self.cells[r * n + s];
                for t in 0..n {
                    if !known(s * n + t) || !known(rs * n + t) {
                        continue;
                    }
                    let st = self.cells[s * n + t];
                    if !known(r * n + st) {
                        continue;
                    }
                    if self.cells[rs * n + t] != self.cells[r * n + st] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Iterator for TableStream {
    type Item = CayleyTable;

    fn next(&mut self) -> Option<CayleyTable> {
        let total = self.n * self.n;
        while !self.done {
            if self.cells[self.pos] == self.n {
                if self.pos == 0 {
                    self.done = true;
                    break;
                }
                self.cells[self.pos] = 0;
                self.pos -= 1;
                self.cells[self.pos] += 1;
                continue;
            }
            if !self.consistent() {
                self.cells[self.pos] += 1;
                continue;
            }
            if self.pos + 1 == total {
                let table = CayleyTable::from_cells(self.n, &self.cells);
                self.cells[self.pos] += 1;
                return Some(table);
            }
            self.pos += 1;
            self.cells[self.pos] = 0;
        }
        None
    }
}
