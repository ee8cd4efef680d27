//! Carrier-level building blocks: element indices, bitset element sets and
//! square operation tables.

use std::fmt;

use crate::error::AlgebraError;

/// Index of a carrier element. Indices are dense in `0..n`.
pub type Elem = usize;

/// Largest carrier any table in this crate can hold.
pub const MAX_CARRIER: usize = 32;

/// A subset of the carrier, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u32) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            ElementSet(u32::MAX)
        } else {
            ElementSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(a: Elem) -> Self {
        ElementSet(1 << a)
    }

    pub fn contains(self, a: Elem) -> bool {
        self.0 >> a & 1 == 1
    }

    pub fn insert(&mut self, a: Elem) -> bool {
        let fresh = !self.contains(a);
        self.0 |= 1 << a;
        fresh
    }

    pub fn with(self, a: Elem) -> Self {
        ElementSet(self.0 | 1 << a)
    }

    pub fn remove(&mut self, a: Elem) {
        self.0 &= !(1 << a);
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member by index.
    pub fn first(self) -> Option<Elem> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Elem)
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// Renders the set as `{a,b,c}` using the given element names, in index order.
    pub fn render(self, names: &[String]) -> String {
        let inner: Vec<&str> = self.iter().map(|a| names[a].as_str()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Elem> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let mut set = ElementSet::EMPTY;
        for a in iter {
            set.insert(a);
        }
        set
    }
}

impl IntoIterator for ElementSet {
    type Item = Elem;
    type IntoIter = Members;

    fn into_iter(self) -> Members {
        self.iter()
    }
}

/// Iterator over the members of an [`ElementSet`] in increasing index order.
#[derive(Clone)]
pub struct Members(u32);

impl Iterator for Members {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.0 == 0 {
            return None;
        }
        let a = self.0.trailing_zeros() as Elem;
        self.0 &= self.0 - 1;
        Some(a)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

/// A binary operation on an `n`-element carrier, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Table {
    n: usize,
    cells: Vec<u8>,
}

impl Table {
    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(f(a, b) as u8);
            }
        }
        Table { n, cells }
    }

    /// Builds a table from rows, checking shape and index range.
    pub fn from_rows<R: AsRef<[Elem]>>(name: &'static str, n: usize, rows: &[R]) -> Result<Self, AlgebraError> {
        if rows.len() != n || rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(AlgebraError::Shape { table: name, size: n });
        }
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            for &v in row.as_ref() {
                if v >= n {
                    return Err(AlgebraError::IndexOutOfRange { index: v, size: n });
                }
                cells.push(v as u8);
            }
        }
        Ok(Table { n, cells })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.cells[a * self.n + b] as Elem
    }

    pub fn set(&mut self, a: Elem, b: Elem, v: Elem) {
        self.cells[a * self.n + b] = v as u8;
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.cells.chunks(self.n.max(1)).take(self.n).map(|r| r.iter().map(|&v| v as Elem).collect()).collect()
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// The table obtained by renaming every element `a` to `perm[a]`.
    pub fn relabel(&self, perm: &[Elem]) -> Table {
        let mut out = self.clone();
        for a in 0..self.n {
            for b in 0..self.n {
                out.set(perm[a], perm[b], perm[self.get(a, b)]);
            }
        }
        out
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}
