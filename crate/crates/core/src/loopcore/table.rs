//! Cayley tables: the uniform representation of a finite loop.

use rayon::prelude::*;
use thiserror::Error;

use super::bitset::SubloopSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("malformed header: expected `n id`, got `{0}`")]
    MalformedHeader(String),
    #[error("row {row}: expected {expected} entries, found {found}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column {col}: bad entry `{entry}`")]
    BadEntry {
        row: usize,
        col: usize,
        entry: String,
    },
    #[error("row {0} is not a permutation of 0..n")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation of 0..n")]
    ColNotPermutation(usize),
    #[error("element {0} is not a two-sided identity")]
    MissingIdentity(usize),
    #[error("subset is not closed: {x} * {y} = {product} lies outside")]
    NotClosed { x: usize, y: usize, product: usize },
    #[error("table has {rows} rows, header declared {declared}")]
    RowCount { rows: usize, declared: usize },
}

/// A finite loop as an `n x n` table of element indices with a designated
/// two-sided identity. Rows and columns are permutations of `0..n`
/// (quasigroup property); both are checked at construction. Immutable once
/// built, so shared references can be used from any thread.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CayleyTable {
    n: usize,
    id: usize,
    table: Vec<u16>,
    labels: Option<Vec<String>>,
}

impl CayleyTable {
    pub fn new(
        n: usize,
        id: usize,
        table: Vec<u16>,
        labels: Option<Vec<String>>,
    ) -> Result<CayleyTable, TableError> {
        assert!(n > 0 && n <= u16::MAX as usize);
        assert_eq!(table.len(), n * n);
        let t = CayleyTable {
            n,
            id,
            table,
            labels,
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), TableError> {
        let n = self.n;
        for r in 0..n {
            let mut seen = vec![false; n];
            for c in 0..n {
                let v = self.mul(r, c);
                if v >= n || seen[v] {
                    return Err(TableError::RowNotPermutation(r));
                }
                seen[v] = true;
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in 0..n {
                let v = self.mul(r, c);
                if seen[v] {
                    return Err(TableError::ColNotPermutation(c));
                }
                seen[v] = true;
            }
        }
        if self.id >= n {
            return Err(TableError::MissingIdentity(self.id));
        }
        for x in 0..n {
            if self.mul(self.id, x) != x || self.mul(x, self.id) != x {
                return Err(TableError::MissingIdentity(self.id));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> CayleyTable {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    /// The unique `y` with `x * y = id`. In the Moufang loops handled here
    /// this is the two-sided inverse.
    pub fn right_inverse(&self, x: usize) -> usize {
        (0..self.n)
            .find(|&y| self.mul(x, y) == self.id)
            .expect("quasigroup row is a permutation")
    }

    /// Order of the cyclic subloop generated by `x`, via left-bracketed
    /// powers.
    pub fn order_of(&self, x: usize) -> usize {
        let mut acc = x;
        for k in 1..=self.n {
            if acc == self.id {
                return k;
            }
            acc = self.mul(acc, x);
        }
        unreachable!("left powers of {x} never reach the identity");
    }

    /// Smallest product-closed subset containing the seed and the identity.
    ///
    /// Worklist over frontier pairs (new x known plus known x new), so each
    /// ordered pair of the final subloop is multiplied exactly once.
    pub fn closure(&self, seed: &[usize]) -> SubloopSet {
        let mut set = SubloopSet::empty(self.n);
        set.insert(self.id);
        for &g in seed {
            set.insert(g);
        }
        self.close_in_place(&mut set);
        set
    }

    /// Extends `set` (which must contain the identity) to its closure.
    pub fn close_in_place(&self, set: &mut SubloopSet) {
        let mut elems: Vec<usize> = set.indices();
        let mut frontier_start = 0;
        while frontier_start < elems.len() {
            let frontier_end = elems.len();
            for i in frontier_start..frontier_end {
                let x = elems[i];
                // new x all-so-far, and all-older x new
                for j in 0..frontier_end {
                    let y = elems[j];
                    let p = self.mul(x, y);
                    if set.insert(p) {
                        elems.push(p);
                    }
                    if j < frontier_start {
                        let q = self.mul(y, x);
                        if set.insert(q) {
                            elems.push(q);
                        }
                    }
                }
            }
            frontier_start = frontier_end;
        }
    }

    /// Closure that bails out to the full element set as soon as the
    /// partial closure absorbs a known generating set of the whole table.
    /// Sound because closure is monotone.
    pub fn closure_with_generating_set(
        &self,
        base: &SubloopSet,
        extra: usize,
        generating_set: &[usize],
        full: &SubloopSet,
    ) -> SubloopSet {
        let mut set = base.clone();
        set.insert(self.id);
        set.insert(extra);
        let mut elems: Vec<usize> = set.indices();
        let covers_generators = |s: &SubloopSet| generating_set.iter().all(|&g| s.contains(g));
        if covers_generators(&set) {
            return full.clone();
        }
        let mut frontier_start = 0;
        while frontier_start < elems.len() {
            let frontier_end = elems.len();
            for i in frontier_start..frontier_end {
                let x = elems[i];
                for j in 0..frontier_end {
                    let y = elems[j];
                    let p = self.mul(x, y);
                    if set.insert(p) {
                        elems.push(p);
                    }
                    if j < frontier_start {
                        let q = self.mul(y, x);
                        if set.insert(q) {
                            elems.push(q);
                        }
                    }
                }
            }
            if covers_generators(&set) {
                return full.clone();
            }
            frontier_start = frontier_end;
        }
        set
    }

    /// Checks the Moufang identity ((xy)x)z = x(y(xz)) over all triples.
    pub fn is_moufang(&self) -> bool {
        let n = self.n;
        (0..n).into_par_iter().all(|x| {
            for y in 0..n {
                let xy_x = self.mul(self.mul(x, y), x);
                for z in 0..n {
                    if self.mul(xy_x, z) != self.mul(x, self.mul(y, self.mul(x, z))) {
                        return false;
                    }
                }
            }
            true
        })
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).into_par_iter().all(|x| {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return false;
                    }
                }
            }
            true
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// True when every 2-generated subloop is associative.
    pub fn is_diassociative(&self) -> bool {
        (0..self.n).into_par_iter().all(|x| {
            for y in x..self.n {
                let sub = self.closure(&[x, y]);
                let (table, _) = self.subtable(&sub).expect("closure is closed");
                if !table.is_associative() {
                    return false;
                }
            }
            true
        })
    }

    /// Map from element order to the number of elements of that order in
    /// `set`, sorted by order.
    pub fn order_profile(&self, set: &SubloopSet) -> Vec<(usize, usize)> {
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for x in set.iter() {
            let o = self.order_of(x);
            match counts.iter_mut().find(|(ord, _)| *ord == o) {
                Some((_, c)) => *c += 1,
                None => counts.push((o, 1)),
            }
        }
        counts.sort_unstable();
        counts
    }

    /// Induced table on a product-closed subset, together with the map from
    /// sub-index to ambient index. Fails if the subset is not closed; the
    /// construction re-checks the quasigroup and identity invariants.
    pub fn subtable(&self, set: &SubloopSet) -> Result<(CayleyTable, Vec<usize>), TableError> {
        let elems = set.indices();
        let mut pos = vec![usize::MAX; self.n];
        for (k, &e) in elems.iter().enumerate() {
            pos[e] = k;
        }
        let m = elems.len();
        let mut table = vec![0u16; m * m];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                let p = self.mul(x, y);
                if pos[p] == usize::MAX {
                    return Err(TableError::NotClosed { x, y, product: p });
                }
                table[i * m + j] = pos[p] as u16;
            }
        }
        let id = pos[self.id];
        debug_assert!(id != usize::MAX, "subloop sets always contain the identity");
        let labels = self
            .labels
            .as_ref()
            .map(|l| elems.iter().map(|&e| l[e].clone()).collect());
        let sub = CayleyTable::new(m, id, table, labels)?;
        Ok((sub, elems))
    }

    /// Relabel the table along a permutation: element `i` becomes
    /// `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> CayleyTable {
        assert_eq!(perm.len(), self.n);
        let mut table = vec![0u16; self.n * self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                table[perm[x] * self.n + perm[y]] = perm[self.mul(x, y)] as u16;
            }
        }
        CayleyTable::new(self.n, perm[self.id], table, None).expect("relabeling preserves the loop")
    }
}

/// Parses the text format: first line `n id`, then `n` lines of `n`
/// whitespace-separated element indices.
pub fn parse_cayley(text: &str) -> Result<CayleyTable, TableError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| TableError::MalformedHeader(String::new()))?;
    let mut parts = header.split_whitespace();
    let bad_header = || TableError::MalformedHeader(header.to_string());
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(bad_header)?;
    let id: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(bad_header)?;
    if parts.next().is_some() || n == 0 {
        return Err(bad_header());
    }
    let mut table = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (r, line) in lines.enumerate() {
        if r >= n {
            return Err(TableError::RowCount {
                rows: r + 1,
                declared: n,
            });
        }
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != n {
            return Err(TableError::RowLength {
                row: r,
                expected: n,
                found: entries.len(),
            });
        }
        for (c, s) in entries.iter().enumerate() {
            let v: usize = s.parse().map_err(|_| TableError::BadEntry {
                row: r,
                col: c,
                entry: s.to_string(),
            })?;
            if v >= n {
                return Err(TableError::BadEntry {
                    row: r,
                    col: c,
                    entry: s.to_string(),
                });
            }
            table.push(v as u16);
        }
        rows += 1;
    }
    if rows != n {
        return Err(TableError::RowCount { rows, declared: n });
    }
    CayleyTable::new(n, id, table, None)
}

/// Canonical text emission; `parse_cayley(emit_cayley(t))` reproduces `t`
/// bit-exactly (labels are not part of the format).
pub fn emit_cayley(t: &CayleyTable) -> String {
    let mut out = format!("{} {}\n", t.n(), t.id());
    for r in 0..t.n() {
        for c in 0..t.n() {
            if c > 0 {
                out.push(' ');
            }
            out.push_str(&t.mul(r, c).to_string());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s3() -> CayleyTable {
        parse_cayley(include_str!("../../fixtures/s3.tab")).unwrap()
    }

    fn loop5() -> CayleyTable {
        parse_cayley(include_str!("../../fixtures/loop5.tab")).unwrap()
    }

    #[test]
    fn parse_fixture_tables() {
        let t = s3();
        assert_eq!(t.n(), 6);
        assert_eq!(t.id(), 0);
        assert!(t.is_associative());
        assert!(!t.is_commutative());
        let c2xc4 = parse_cayley(include_str!("../../fixtures/c2xc4.tab")).unwrap();
        assert_eq!(c2xc4.n(), 8);
        assert!(c2xc4.is_associative());
        assert!(c2xc4.is_commutative());
    }

    #[test]
    fn emit_parse_round_trip() {
        for fixture in [
            include_str!("../../fixtures/c2.tab"),
            include_str!("../../fixtures/s3.tab"),
            include_str!("../../fixtures/a4.tab"),
            include_str!("../../fixtures/c2xc4.tab"),
        ] {
            let t = parse_cayley(fixture).unwrap();
            assert_eq!(emit_cayley(&t), fixture);
            assert_eq!(parse_cayley(&emit_cayley(&t)).unwrap(), t);
        }
    }

    #[test]
    fn parse_rejects_bad_tables() {
        assert!(matches!(
            parse_cayley("2\n0 1\n1 0\n"),
            Err(TableError::MalformedHeader(_))
        ));
        assert!(matches!(
            parse_cayley("2 0\n0 0\n1 0\n"),
            Err(TableError::RowNotPermutation(0))
        ));
        assert!(matches!(
            parse_cayley("2 0\n0 1\n0 1\n"),
            Err(TableError::ColNotPermutation(0))
        ));
        // Latin square whose designated element is not an identity.
        assert!(matches!(
            parse_cayley("2 1\n0 1\n1 0\n"),
            Err(TableError::MissingIdentity(1))
        ));
        assert!(matches!(
            parse_cayley("2 0\n0 x\n1 0\n"),
            Err(TableError::BadEntry { row: 0, col: 1, .. })
        ));
        assert!(matches!(
            parse_cayley("3 0\n0 1 2\n1 2 0\n"),
            Err(TableError::RowCount { .. })
        ));
    }

    #[test]
    fn closure_of_empty_seed_is_identity() {
        let t = s3();
        let c = t.closure(&[]);
        assert_eq!(c.indices(), vec![0]);
    }

    #[test]
    fn closure_is_idempotent_and_extensive() {
        let t = s3();
        let c = t.closure(&[1, 2]);
        let again = t.closure(&c.indices());
        assert_eq!(c, again);
        assert!(SubloopSet::from_indices(6, &[1, 2]).is_subset(&c));
    }

    #[test]
    fn order5_fixture_is_not_moufang_nor_diassociative() {
        let t = loop5();
        assert!(!t.is_moufang());
        assert!(!t.is_diassociative());
        assert!(s3().is_moufang());
        assert!(s3().is_diassociative());
    }

    #[test]
    fn order_profile_of_s3() {
        let t = s3();
        let all = SubloopSet::full(6);
        assert_eq!(t.order_profile(&all), vec![(1, 1), (2, 3), (3, 2)]);
    }

    #[test]
    fn subtable_rejects_non_closed_sets() {
        let t = s3();
        let bad = SubloopSet::from_indices(6, &[0, 3]);
        assert!(matches!(t.subtable(&bad), Err(TableError::NotClosed { .. })));
    }
}
