//! Chein doubling M(G,2), the structural counting lemma for doubled
//! groups, relator checking, and the small-group catalog.

use std::fmt;

use thiserror::Error;

use crate::lattice::enumerate_subloops;
use crate::loopcore::{
    are_isomorphic, classify, emit_cayley, parse_cayley, CayleyTable, IsoType, SubloopSet,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheinError {
    #[error("doubling requires a group, but the table is not associative")]
    NotAssociative,
    #[error("relator uses generator #{index}, but only {arity} generators were supplied")]
    UnknownSymbol { index: usize, arity: usize },
}

/// Doubles a group `G` to the Moufang loop `M(G,2)` on `G x C2` with the
/// twisted product `(g,i)(h,j) = ((g^e h^f)^e, i+j)` where `e = (-1)^j`
/// and `f = (-1)^(i+j)` act by inversion.
///
/// Element `(g,0)` sits at index `g` and `(g,1)` at index `|G| + g`, so
/// coset membership is an index comparison. The result is nonassociative
/// exactly when `G` is nonabelian.
pub fn chein_double(g: &CayleyTable) -> Result<CayleyTable, CheinError> {
    if !g.is_associative() {
        return Err(CheinError::NotAssociative);
    }
    let n = g.n();
    let inv: Vec<usize> = (0..n).map(|x| g.right_inverse(x)).collect();
    let m = 2 * n;
    let mut table = vec![0u16; m * m];
    for gi in 0..n {
        for i in 0..2 {
            for hi in 0..n {
                for j in 0..2 {
                    let x = if j == 1 { inv[gi] } else { gi };
                    let y = if (i + j) % 2 == 1 { inv[hi] } else { hi };
                    let mut p = g.mul(x, y);
                    if j == 1 {
                        p = inv[p];
                    }
                    let row = i * n + gi;
                    let col = j * n + hi;
                    table[row * m + col] = (((i + j) % 2) * n + p) as u16;
                }
            }
        }
    }
    let labels = (0..m)
        .map(|k| {
            let base = g.label(k % n);
            if k < n {
                base
            } else if k % n == g.id() {
                "u".to_string()
            } else {
                format!("{base}u")
            }
        })
        .collect();
    let doubled = CayleyTable::new(m, g.id(), table, None)
        .expect("doubling a group yields a loop")
        .with_labels(labels);
    Ok(doubled)
}

/// Canonical tables for the groups that occur as subloops, parsed from the
/// embedded fixtures, plus the two doubled reference loops.
pub struct GroupCatalog {
    groups: Vec<(IsoType, CayleyTable)>,
    ms3: CayleyTable,
    ma4: CayleyTable,
    trivial: CayleyTable,
}

impl GroupCatalog {
    pub fn load() -> GroupCatalog {
        let fixtures: [(&str, &str); 8] = [
            ("C2", include_str!("../fixtures/c2.tab")),
            ("C3", include_str!("../fixtures/c3.tab")),
            ("C4", include_str!("../fixtures/c4.tab")),
            ("E4", include_str!("../fixtures/e4.tab")),
            ("C2xC4", include_str!("../fixtures/c2xc4.tab")),
            ("S3", include_str!("../fixtures/s3.tab")),
            ("E8", include_str!("../fixtures/e8.tab")),
            ("A4", include_str!("../fixtures/a4.tab")),
        ];
        let mut groups = Vec::new();
        for (name, text) in fixtures {
            let table = parse_cayley(text).expect("embedded fixture parses");
            assert!(table.is_associative(), "catalog entry {name} must be a group");
            let ty = IsoType::parse_name(name).expect("catalog name");
            assert_eq!(
                classify(&table, &SubloopSet::full(table.n())),
                ty,
                "catalog entry {name} classifies as itself"
            );
            groups.push((ty, table));
        }
        let s3 = &groups.iter().find(|(t, _)| *t == IsoType::S3).unwrap().1;
        let a4 = &groups.iter().find(|(t, _)| *t == IsoType::A4).unwrap().1;
        let ms3 = chein_double(s3).unwrap();
        let ma4 = chein_double(a4).unwrap();
        let trivial = CayleyTable::new(1, 0, vec![0], None).unwrap();
        GroupCatalog {
            groups,
            ms3,
            ma4,
            trivial,
        }
    }

    /// The reference table of a catalog type, the doubled loops included.
    pub fn get(&self, ty: &IsoType) -> Option<&CayleyTable> {
        match ty {
            IsoType::Trivial => Some(&self.trivial),
            IsoType::MS3 => Some(&self.ms3),
            IsoType::MA4 => Some(&self.ma4),
            _ => self
                .groups
                .iter()
                .find(|(t, _)| t == ty)
                .map(|(_, table)| table),
        }
    }

    pub fn group_by_name(&self, name: &str) -> Option<&CayleyTable> {
        let ty = IsoType::parse_name(name)?;
        self.groups
            .iter()
            .find(|(t, _)| *t == ty)
            .map(|(_, table)| table)
    }

    pub fn group_names() -> [&'static str; 8] {
        ["C2", "C3", "C4", "E4", "C2xC4", "S3", "E8", "A4"]
    }

    pub fn groups(&self) -> impl Iterator<Item = (&IsoType, &CayleyTable)> {
        self.groups.iter().map(|(t, table)| (t, table))
    }

    pub fn ms3(&self) -> &CayleyTable {
        &self.ms3
    }

    pub fn ma4(&self) -> &CayleyTable {
        &self.ma4
    }
}

/// A relator word over numbered generators with explicit bracketing; no
/// associativity is assumed during evaluation.
#[derive(Clone, Debug)]
pub enum Word {
    Gen(usize),
    Inv(Box<Word>),
    Mul(Box<Word>, Box<Word>),
    Pow(Box<Word>, u32),
}

impl Word {
    pub fn gen(k: usize) -> Word {
        Word::Gen(k)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Word, b: Word) -> Word {
        Word::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Word, k: u32) -> Word {
        Word::Pow(Box::new(a), k)
    }

    pub fn inv(a: Word) -> Word {
        Word::Inv(Box::new(a))
    }

    /// Evaluates under the assignment `gens`; powers expand left-to-right,
    /// so `w^3` is `(ww)w`.
    pub fn eval(&self, table: &CayleyTable, gens: &[usize]) -> Result<usize, CheinError> {
        Ok(match self {
            Word::Gen(k) => *gens.get(*k).ok_or(CheinError::UnknownSymbol {
                index: *k,
                arity: gens.len(),
            })?,
            Word::Inv(w) => table.right_inverse(w.eval(table, gens)?),
            Word::Mul(a, b) => table.mul(a.eval(table, gens)?, b.eval(table, gens)?),
            Word::Pow(w, k) => {
                let base = w.eval(table, gens)?;
                let mut acc = table.id();
                for _ in 0..*k {
                    acc = table.mul(acc, base);
                }
                acc
            }
        })
    }

    fn symbol(k: usize) -> String {
        match k {
            0 => "x".to_string(),
            1 => "y".to_string(),
            2 => "u".to_string(),
            _ => format!("g{k}"),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Gen(k) => write!(f, "{}", Word::symbol(*k)),
            Word::Inv(w) => write!(f, "({w})^-1"),
            Word::Mul(a, b) => write!(f, "({a}{b})"),
            Word::Pow(w, k) => write!(f, "{w}^{k}"),
        }
    }
}

/// The relators presenting `M(G,2)` on generators `x, y, u` given the
/// group relators for `G = <x, y | R>`: appends
/// `u^2 = (xu)^2 = (yu)^2 = ((xy)u)^2 = e`.
pub fn doubling_relators(group_relators: Vec<Word>) -> Vec<Word> {
    let x = || Word::gen(0);
    let y = || Word::gen(1);
    let u = || Word::gen(2);
    let mut relators = group_relators;
    relators.push(Word::pow(u(), 2));
    relators.push(Word::pow(Word::mul(x(), u()), 2));
    relators.push(Word::pow(Word::mul(y(), u()), 2));
    relators.push(Word::pow(Word::mul(Word::mul(x(), y()), u()), 2));
    relators
}

/// Relators of `M(S3)`: group part `x^2 = y^2 = (xy)^3 = e`.
pub fn ms3_relators() -> Vec<Word> {
    doubling_relators(vec![
        Word::pow(Word::gen(0), 2),
        Word::pow(Word::gen(1), 2),
        Word::pow(Word::mul(Word::gen(0), Word::gen(1)), 3),
    ])
}

/// Relators of `M(A4)`: group part `x^2 = y^3 = (xy)^3 = e`.
pub fn ma4_relators() -> Vec<Word> {
    doubling_relators(vec![
        Word::pow(Word::gen(0), 2),
        Word::pow(Word::gen(1), 3),
        Word::pow(Word::mul(Word::gen(0), Word::gen(1)), 3),
    ])
}

/// True when every relator evaluates to the identity under the assignment.
pub fn check_relations(
    table: &CayleyTable,
    gens: &[usize],
    relators: &[Word],
) -> Result<bool, CheinError> {
    Ok(failing_relators(table, gens, relators)?.is_empty())
}

/// Indices of the relators that do not evaluate to the identity.
pub fn failing_relators(
    table: &CayleyTable,
    gens: &[usize],
    relators: &[Word],
) -> Result<Vec<usize>, CheinError> {
    let mut failures = Vec::new();
    for (k, w) in relators.iter().enumerate() {
        if w.eval(table, gens)? != table.id() {
            failures.push(k);
        }
    }
    Ok(failures)
}

/// One verified fact in a structural report.
#[derive(Clone, Debug)]
pub struct LemmaCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Result of checking the structural facts of a doubled group: coset
/// behaviour, cyclic and elementary-abelian subloop counts, mixed spans,
/// and uniqueness of the group inside its double.
pub struct M2nReport {
    pub group_name: String,
    pub group_order: usize,
    pub checks: Vec<LemmaCheck>,
}

impl M2nReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "structural report for M({}) of order {}\n",
            self.group_name,
            2 * self.group_order
        );
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: {}\n",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out
    }
}

fn is_elementary_abelian_2(table: &CayleyTable, set: &SubloopSet) -> bool {
    let (sub, _) = table.subtable(set).expect("enumerated sets are closed");
    sub.is_associative() && (0..sub.n()).all(|x| sub.order_of(x) <= 2)
}

fn count_cyclic_of_order(table: &CayleyTable, subloops: &[SubloopSet], m: usize) -> usize {
    subloops
        .iter()
        .filter(|s| s.len() == m && s.iter().any(|g| table.closure(&[g]) == **s))
        .count()
}

fn count_elementary(table: &CayleyTable, subloops: &[SubloopSet], k: usize) -> usize {
    let size = 1usize << k;
    subloops
        .iter()
        .filter(|s| s.len() == size && is_elementary_abelian_2(table, s))
        .count()
}

/// Checks, exhaustively, every item of the structural lemma on
/// `M = chein_double(G)`. All universally quantified items run over every
/// instance; nothing is sampled.
pub fn verify_m2n_lemma(g: &CayleyTable, group_name: &str) -> Result<M2nReport, CheinError> {
    let m = chein_double(g)?;
    let n = g.n();
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(LemmaCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    let coset_orders = (n..2 * n).all(|x| m.order_of(x) == 2);
    push(
        "every element of Gu has order 2",
        coset_orders,
        format!("checked {n} coset elements"),
    );

    let mut coset_product = true;
    for x in 0..2 * n {
        for y in 0..2 * n {
            let expect_in_g = (x < n) == (y < n);
            if (m.mul(x, y) < n) != expect_in_g {
                coset_product = false;
            }
        }
    }
    push(
        "G.G = Gu.Gu = G and G.Gu = Gu.G = Gu",
        coset_product,
        format!("checked {} products", 4 * n * n),
    );

    let m_subloops = enumerate_subloops(&m);
    let g_subloops = enumerate_subloops(g);
    let g_part = SubloopSet::from_indices(2 * n, &(0..n).collect::<Vec<_>>());
    let gu_part = SubloopSet::from_indices(2 * n, &(n..2 * n).collect::<Vec<_>>());
    let balanced = m_subloops
        .iter()
        .filter(|h| !h.is_subset(&g_part))
        .all(|h| h.intersection_len(&g_part) == h.intersection_len(&gu_part));
    push(
        "every subloop not inside G meets both cosets equally",
        balanced,
        format!("checked {} subloops", m_subloops.len()),
    );

    // Item (i): cyclic subloop counts.
    let mut item_i = true;
    let mut detail_i = Vec::new();
    for order in 1..=2 * n {
        let in_m = count_cyclic_of_order(&m, &m_subloops, order);
        let in_g = count_cyclic_of_order(g, &g_subloops, order);
        let expected = in_g + if order == 2 { n } else { 0 };
        if in_m != expected {
            item_i = false;
        }
        if in_m != 0 || expected != 0 {
            detail_i.push(format!("l[C{order}:M] = {in_m} (expected {expected})"));
        }
    }
    push("cyclic subloop counts", item_i, detail_i.join(", "));

    // Item (ii): adjoining a coset element to an elementary abelian
    // 2-subgroup of G doubles it.
    let mut item_ii = true;
    let mut pairs_ii = 0usize;
    for h in &g_subloops {
        let h_in_m = SubloopSet::from_indices(2 * n, &h.indices());
        if !is_elementary_abelian_2(&m, &h_in_m) {
            continue;
        }
        for coset in n..2 * n {
            let mut seed = h.indices();
            seed.push(coset);
            let span = m.closure(&seed);
            pairs_ii += 1;
            if span.len() != 2 * h.len() || !is_elementary_abelian_2(&m, &span) {
                item_ii = false;
            }
        }
    }
    push(
        "span of E_2^k with a coset element is E_2^(k+1)",
        item_ii,
        format!("checked {pairs_ii} (subgroup, coset element) pairs"),
    );

    // Item (iii): elementary abelian counts
    // l[E_2^k : M] = l[E_2^k : G] + l[E_2^(k-1) : G] * n * 2^(1-k).
    let mut item_iii = true;
    let mut detail_iii = Vec::new();
    let mut k = 1usize;
    while 1usize << k <= 2 * n {
        let in_m = count_elementary(&m, &m_subloops, k);
        let half = 1usize << (k - 1);
        let expected = if !n.is_multiple_of(half) {
            0
        } else {
            count_elementary(g, &g_subloops, k)
                + count_elementary(g, &g_subloops, k - 1) * n / half
        };
        if in_m != expected {
            item_iii = false;
        }
        detail_iii.push(format!(
            "l[E{}:M] = {} (expected {})",
            1 << k,
            in_m,
            expected
        ));
        k += 1;
    }
    push(
        "elementary abelian subloop counts",
        item_iii,
        detail_iii.join(", "),
    );

    // Item (iv): an order-3 group element spans S3 with any coset element.
    let mut item_iv = true;
    let mut pairs_iv = 0usize;
    for x in 0..n {
        if g.order_of(x) != 3 {
            continue;
        }
        for h in 0..n {
            let span = m.closure(&[x, n + h]);
            pairs_iv += 1;
            if classify(&m, &span) != IsoType::S3 {
                item_iv = false;
            }
        }
    }
    push(
        "span of an order-3 element with a coset element is S3",
        item_iv,
        format!("checked {pairs_iv} pairs"),
    );

    // Item (v): uniqueness of G inside M when G has C3 but no S3.
    let has_c3 = (0..n).any(|x| g.order_of(x) == 3);
    let has_s3 = g_subloops
        .iter()
        .any(|s| s.len() == 6 && classify(g, s) == IsoType::S3);
    if has_c3 && !has_s3 {
        let copies = m_subloops
            .iter()
            .filter(|s| {
                if s.len() != n {
                    return false;
                }
                let (sub, _) = m.subtable(s).unwrap();
                are_isomorphic(&sub, g).is_some()
            })
            .count();
        push(
            "G sits in its double exactly once",
            copies == 1,
            format!("found {copies} copies"),
        );
    }

    Ok(M2nReport {
        group_name: group_name.to_string(),
        group_order: n,
        checks,
    })
}

/// Doubled table plus structural report, as printed by the CLI.
pub fn emit_group_report(g: &CayleyTable, name: &str) -> Result<String, CheinError> {
    let m = chein_double(g)?;
    let mut out = format!(
        "M({name}): doubling of {name}, order {} -> {}\n",
        g.n(),
        m.n()
    );
    out.push_str(&format!(
        "moufang: {}, associative: {}\n\n",
        m.is_moufang(),
        m.is_associative()
    ));
    out.push_str(&emit_cayley(&m));
    out.push('\n');
    out.push_str(&verify_m2n_lemma(g, name)?.render());
    Ok(out)
}

/// The worked counterexample on `C2 x C4`: two isomorphic order-2
/// subgroups with different counts of `C4` overgroups.
pub struct C2xC4Demo {
    pub subgroup_count: usize,
    /// Copies of C4 above `A = 1 x {0, 2}`.
    pub c4_above_a: usize,
    /// Copies of C4 above `A' = C2 x 1`.
    pub c4_above_a_prime: usize,
    pub a_isomorphic_a_prime: bool,
}

pub fn subgroup_lattice_demo_c2xc4(catalog: &GroupCatalog) -> C2xC4Demo {
    let t = catalog.get(&IsoType::C2xC4).expect("catalog has C2xC4");
    let subs = enumerate_subloops(t);
    // Element (i, j) of C2 x C4 sits at index 4i + j.
    let a = SubloopSet::from_indices(8, &[0, 2]);
    let a_prime = SubloopSet::from_indices(8, &[0, 4]);
    assert!(subs.contains(&a) && subs.contains(&a_prime));
    let c4_copies: Vec<&SubloopSet> = subs
        .iter()
        .filter(|s| classify(t, s) == IsoType::C4)
        .collect();
    let above = |x: &SubloopSet| c4_copies.iter().filter(|s| x.is_subset(s)).count();
    let (ta, _) = t.subtable(&a).unwrap();
    let (tb, _) = t.subtable(&a_prime).unwrap();
    C2xC4Demo {
        subgroup_count: subs.len(),
        c4_above_a: above(&a),
        c4_above_a_prime: above(&a_prime),
        a_isomorphic_a_prime: are_isomorphic(&ta, &tb).is_some(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::LazyLock;

    static CATALOG: LazyLock<GroupCatalog> = LazyLock::new(GroupCatalog::load);

    #[test]
    fn doubling_s3() {
        let m = CATALOG.ms3();
        assert_eq!(m.n(), 12);
        assert!(m.is_moufang());
        assert!(!m.is_associative());
        assert_eq!(classify(m, &SubloopSet::full(12)), IsoType::MS3);
    }

    #[test]
    fn doubling_a4() {
        let m = CATALOG.ma4();
        assert_eq!(m.n(), 24);
        assert!(m.is_moufang());
        assert!(!m.is_associative());
        let profile = m.order_profile(&SubloopSet::full(24));
        assert_eq!(profile, vec![(1, 1), (2, 15), (3, 8)]);
        assert_eq!(classify(m, &SubloopSet::full(24)), IsoType::MA4);
    }

    #[test]
    fn doubling_c3_gives_s3() {
        let c3 = CATALOG.get(&IsoType::C3).unwrap();
        let doubled = chein_double(c3).unwrap();
        let s3 = CATALOG.get(&IsoType::S3).unwrap();
        assert!(are_isomorphic(&doubled, s3).is_some());
    }

    #[test]
    fn doubling_rejects_nonassociative_input() {
        let m = CATALOG.ms3().clone();
        assert_eq!(chein_double(&m), Err(CheinError::NotAssociative));
    }

    #[test]
    fn doubles_of_all_catalog_groups_are_moufang() {
        for (_, g) in CATALOG.groups() {
            let m = chein_double(g).unwrap();
            assert!(m.is_moufang());
            assert_eq!(m.is_associative(), g.is_commutative());
        }
    }

    #[test]
    fn structural_lemma_on_s3_and_a4() {
        let s3_report = verify_m2n_lemma(CATALOG.get(&IsoType::S3).unwrap(), "S3").unwrap();
        assert!(s3_report.passed(), "{}", s3_report.render());
        let a4_report = verify_m2n_lemma(CATALOG.get(&IsoType::A4).unwrap(), "A4").unwrap();
        assert!(a4_report.passed(), "{}", a4_report.render());
        // M(A4) contains its group part exactly once.
        assert!(a4_report
            .checks
            .iter()
            .any(|c| c.name.contains("exactly once")));
    }

    #[test]
    fn doubled_counts_match_closed_forms() {
        let count_type = |t: &CayleyTable, ty: IsoType| {
            enumerate_subloops(t)
                .iter()
                .filter(|s| classify(t, s) == ty)
                .count()
        };
        // l[C2:M(S3)] = 3 + 6, l[E4:M(S3)] = 0 + 3*6/2
        assert_eq!(count_type(CATALOG.ms3(), IsoType::C2), 9);
        assert_eq!(count_type(CATALOG.ms3(), IsoType::E4), 9);
        assert_eq!(count_type(CATALOG.ms3(), IsoType::S3), 3);
        assert_eq!(count_type(CATALOG.ms3(), IsoType::C3), 1);
        // l[C2:M(A4)] = 3 + 12, l[E4:M(A4)] = 1 + 3*12/2, l[E8:M(A4)] = 3
        assert_eq!(count_type(CATALOG.ma4(), IsoType::C2), 15);
        assert_eq!(count_type(CATALOG.ma4(), IsoType::E4), 19);
        assert_eq!(count_type(CATALOG.ma4(), IsoType::E8), 3);
        assert_eq!(count_type(CATALOG.ma4(), IsoType::S3), 16);
        assert_eq!(count_type(CATALOG.ma4(), IsoType::C3), 4);
        assert_eq!(count_type(CATALOG.ma4(), IsoType::A4), 1);
        assert_eq!(count_type(CATALOG.ma4(), IsoType::MS3), 0);
    }

    #[test]
    fn relator_evaluation() {
        let s3 = CATALOG.get(&IsoType::S3).unwrap();
        // Generators: an involution and a 3-cycle of S3.
        let gens = [1usize, 3usize];
        let relators = vec![
            Word::pow(Word::gen(0), 2),
            Word::pow(Word::gen(1), 3),
            Word::pow(Word::mul(Word::gen(0), Word::gen(1)), 2),
        ];
        assert!(check_relations(s3, &gens, &relators).unwrap());
        let bad = vec![Word::pow(Word::gen(1), 2)];
        assert!(!check_relations(s3, &gens, &bad).unwrap());
        let unknown = vec![Word::gen(5)];
        assert_eq!(
            check_relations(s3, &gens, &unknown),
            Err(CheinError::UnknownSymbol { index: 5, arity: 2 })
        );
    }

    #[test]
    fn c2xc4_demo_values() {
        let demo = subgroup_lattice_demo_c2xc4(&CATALOG);
        assert_eq!(demo.subgroup_count, 8);
        assert_eq!(demo.c4_above_a, 2);
        assert_eq!(demo.c4_above_a_prime, 0);
        assert!(demo.a_isomorphic_a_prime);
    }
}
