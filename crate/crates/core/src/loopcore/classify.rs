//! Isomorphism-type classification of subloops.

use std::fmt;

use super::bitset::SubloopSet;
use super::table::CayleyTable;

/// The isomorphism types that matter for the ambient loop and its Chein
/// doubles, plus a catch-all carrying the order and order profile.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum IsoType {
    Trivial,
    C2,
    C3,
    C4,
    E4,
    C6,
    S3,
    E8,
    C2xC4,
    A4,
    MS3,
    MA4,
    Ambient,
    Other(usize, Vec<(usize, usize)>),
}

impl IsoType {
    /// Order of the named type; `None` for `Ambient` (contextual) and
    /// `Other`.
    pub fn order(&self) -> Option<usize> {
        match self {
            IsoType::Trivial => Some(1),
            IsoType::C2 => Some(2),
            IsoType::C3 => Some(3),
            IsoType::C4 | IsoType::E4 => Some(4),
            IsoType::C6 | IsoType::S3 => Some(6),
            IsoType::E8 | IsoType::C2xC4 => Some(8),
            IsoType::A4 | IsoType::MS3 => Some(12),
            IsoType::MA4 => Some(24),
            IsoType::Ambient | IsoType::Other(..) => None,
        }
    }

    /// Parses the names used by the CLI (`1`, `C2`, ..., `M(S3)`/`MS3`,
    /// `C`).
    pub fn parse_name(name: &str) -> Option<IsoType> {
        Some(match name {
            "1" | "trivial" => IsoType::Trivial,
            "C2" | "c2" => IsoType::C2,
            "C3" | "c3" => IsoType::C3,
            "C4" | "c4" => IsoType::C4,
            "E4" | "e4" => IsoType::E4,
            "C6" | "c6" => IsoType::C6,
            "S3" | "s3" => IsoType::S3,
            "E8" | "e8" => IsoType::E8,
            "C2xC4" | "c2xc4" => IsoType::C2xC4,
            "A4" | "a4" => IsoType::A4,
            "MS3" | "ms3" | "M(S3)" => IsoType::MS3,
            "MA4" | "ma4" | "M(A4)" => IsoType::MA4,
            "C" | "ambient" => IsoType::Ambient,
            _ => return None,
        })
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoType::Trivial => write!(f, "1"),
            IsoType::C2 => write!(f, "C2"),
            IsoType::C3 => write!(f, "C3"),
            IsoType::C4 => write!(f, "C4"),
            IsoType::E4 => write!(f, "E4"),
            IsoType::C6 => write!(f, "C6"),
            IsoType::S3 => write!(f, "S3"),
            IsoType::E8 => write!(f, "E8"),
            IsoType::C2xC4 => write!(f, "C2xC4"),
            IsoType::A4 => write!(f, "A4"),
            IsoType::MS3 => write!(f, "M(S3)"),
            IsoType::MA4 => write!(f, "M(A4)"),
            IsoType::Ambient => write!(f, "C"),
            IsoType::Other(n, profile) => write!(f, "Other({n}, {profile:?})"),
        }
    }
}

/// Invariant fingerprint of a loop: order, order profile, associativity,
/// commutativity. The named catalog types are pairwise separated by it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fingerprint {
    pub order: usize,
    pub profile: Vec<(usize, usize)>,
    pub associative: bool,
    pub commutative: bool,
}

pub fn fingerprint(table: &CayleyTable) -> Fingerprint {
    let all = SubloopSet::full(table.n());
    Fingerprint {
        order: table.n(),
        profile: table.order_profile(&all),
        associative: table.is_associative(),
        commutative: table.is_commutative(),
    }
}

fn catalog_lookup(fp: &Fingerprint) -> Option<IsoType> {
    let p: Vec<(usize, usize)> = fp.profile.clone();
    let t = match (fp.order, fp.associative, fp.commutative) {
        (1, _, _) => IsoType::Trivial,
        (2, true, true) if p == [(1, 1), (2, 1)] => IsoType::C2,
        (3, true, true) if p == [(1, 1), (3, 2)] => IsoType::C3,
        (4, true, true) if p == [(1, 1), (2, 3)] => IsoType::E4,
        (4, true, true) if p == [(1, 1), (2, 1), (4, 2)] => IsoType::C4,
        (6, true, true) if p == [(1, 1), (2, 1), (3, 2), (6, 2)] => IsoType::C6,
        (6, true, false) if p == [(1, 1), (2, 3), (3, 2)] => IsoType::S3,
        (8, true, true) if p == [(1, 1), (2, 7)] => IsoType::E8,
        (8, true, true) if p == [(1, 1), (2, 3), (4, 4)] => IsoType::C2xC4,
        (12, true, false) if p == [(1, 1), (2, 3), (3, 8)] => IsoType::A4,
        (12, false, false) if p == [(1, 1), (2, 9), (3, 2)] => IsoType::MS3,
        (24, false, false) if p == [(1, 1), (2, 15), (3, 8)] => IsoType::MA4,
        _ => return None,
    };
    Some(t)
}

/// Isomorphism type of a product-closed subset of `table`.
///
/// A total function: unrecognized proper subloops classify as `Other` with
/// their order and order profile; the full element set of a table outside
/// the catalog classifies as `Ambient`.
pub fn classify(table: &CayleyTable, set: &SubloopSet) -> IsoType {
    let (sub, _) = table
        .subtable(set)
        .expect("classify requires a product-closed subset");
    classify_table(&sub, set.len() == table.n())
}

fn classify_table(sub: &CayleyTable, is_full: bool) -> IsoType {
    let fp = fingerprint(sub);
    match catalog_lookup(&fp) {
        Some(t) => t,
        None if is_full => IsoType::Ambient,
        None => IsoType::Other(fp.order, fp.profile),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loopcore::are_isomorphic;
    use crate::loopcore::table::parse_cayley;

    fn fixture(text: &str) -> CayleyTable {
        parse_cayley(text).unwrap()
    }

    #[test]
    fn classifies_catalog_fixtures() {
        let cases = [
            (include_str!("../../fixtures/c2.tab"), IsoType::C2),
            (include_str!("../../fixtures/c3.tab"), IsoType::C3),
            (include_str!("../../fixtures/c4.tab"), IsoType::C4),
            (include_str!("../../fixtures/e4.tab"), IsoType::E4),
            (include_str!("../../fixtures/c2xc4.tab"), IsoType::C2xC4),
            (include_str!("../../fixtures/s3.tab"), IsoType::S3),
            (include_str!("../../fixtures/e8.tab"), IsoType::E8),
            (include_str!("../../fixtures/a4.tab"), IsoType::A4),
        ];
        for (text, expected) in cases {
            let t = fixture(text);
            let all = SubloopSet::full(t.n());
            assert_eq!(classify(&t, &all), expected);
        }
    }

    #[test]
    fn subloops_of_s3_classify() {
        let t = fixture(include_str!("../../fixtures/s3.tab"));
        assert_eq!(classify(&t, &t.closure(&[])), IsoType::Trivial);
        assert_eq!(classify(&t, &t.closure(&[1])), IsoType::C2);
        assert_eq!(classify(&t, &t.closure(&[3])), IsoType::C3);
        assert_eq!(classify(&t, &t.closure(&[1, 3])), IsoType::S3);
    }

    #[test]
    fn unknown_type_is_other() {
        let t = fixture(include_str!("../../fixtures/loop5.tab"));
        let all = SubloopSet::full(5);
        assert_eq!(classify(&t, &all), IsoType::Ambient);
        // A 2-element subloop inside the order-5 fixture.
        let sub = t.closure(&[1]);
        assert_eq!(classify(&t, &sub), IsoType::C2);
    }

    #[test]
    fn catalog_fingerprints_are_pairwise_distinct() {
        let tables = [
            include_str!("../../fixtures/c2.tab"),
            include_str!("../../fixtures/c3.tab"),
            include_str!("../../fixtures/c4.tab"),
            include_str!("../../fixtures/e4.tab"),
            include_str!("../../fixtures/c2xc4.tab"),
            include_str!("../../fixtures/s3.tab"),
            include_str!("../../fixtures/e8.tab"),
            include_str!("../../fixtures/a4.tab"),
        ];
        let fps: Vec<Fingerprint> = tables.iter().map(|t| fingerprint(&fixture(t))).collect();
        for i in 0..fps.len() {
            for j in i + 1..fps.len() {
                assert_ne!(fps[i], fps[j]);
            }
        }
        // The fingerprint really separates: tables with equal fingerprints
        // must be isomorphic among the catalog entries.
        for i in 0..tables.len() {
            for j in 0..tables.len() {
                let a = fixture(tables[i]);
                let b = fixture(tables[j]);
                assert_eq!(are_isomorphic(&a, &b).is_some(), i == j);
            }
        }
    }
}
