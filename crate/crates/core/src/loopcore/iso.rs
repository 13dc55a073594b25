//! Loop isomorphism testing by backtracking over generator images.

use super::bitset::SubloopSet;
use super::classify::fingerprint;
use super::table::CayleyTable;

#[derive(Clone, Copy, Debug)]
enum Def {
    Identity,
    Gen(usize),
    Prod(usize, usize),
}

/// A spanning product structure: every element of the table reached from a
/// generating sequence, each defined either as a generator or as a product
/// of two earlier-known elements. Mapping the generators then determines
/// the image of every element by replaying the definitions.
pub struct GenChain {
    elems: Vec<usize>,
    defs: Vec<Def>,
    n: usize,
}

impl GenChain {
    /// Builds the chain over the subloop generated by `gens` (which must be
    /// distinct and not the identity).
    pub fn new(table: &CayleyTable, gens: &[usize]) -> GenChain {
        let mut elems = vec![table.id()];
        let mut defs = vec![Def::Identity];
        let mut seen = SubloopSet::empty(table.n());
        seen.insert(table.id());
        for (k, &g) in gens.iter().enumerate() {
            assert!(seen.insert(g), "generators must be distinct from earlier ones");
            elems.push(g);
            defs.push(Def::Gen(k));
        }
        let mut frontier_start = 0;
        while frontier_start < elems.len() {
            let frontier_end = elems.len();
            for i in frontier_start..frontier_end {
                for j in 0..frontier_end {
                    let p = table.mul(elems[i], elems[j]);
                    if seen.insert(p) {
                        elems.push(p);
                        defs.push(Def::Prod(i, j));
                    }
                    if j < frontier_start {
                        let q = table.mul(elems[j], elems[i]);
                        if seen.insert(q) {
                            elems.push(q);
                            defs.push(Def::Prod(j, i));
                        }
                    }
                }
            }
            frontier_start = frontier_end;
        }
        GenChain {
            elems,
            defs,
            n: table.n(),
        }
    }

    /// Number of elements the generators reach.
    pub fn span(&self) -> usize {
        self.elems.len()
    }

    pub fn spans_all(&self) -> bool {
        self.span() == self.n
    }

    /// Replays the definitions in `dst` under the given generator images.
    /// Returns the map source-element -> destination-element, or `None` if
    /// the images collide (the induced map is not injective).
    pub fn extend(&self, dst: &CayleyTable, gen_images: &[usize]) -> Option<Vec<usize>> {
        let mut img = vec![usize::MAX; self.elems.len()];
        let mut used = SubloopSet::empty(dst.n());
        for (pos, def) in self.defs.iter().enumerate() {
            let value = match *def {
                Def::Identity => dst.id(),
                Def::Gen(k) => gen_images[k],
                Def::Prod(i, j) => dst.mul(img[i], img[j]),
            };
            if !used.insert(value) {
                return None;
            }
            img[pos] = value;
        }
        let mut map = vec![usize::MAX; self.n];
        for (pos, &e) in self.elems.iter().enumerate() {
            map[e] = img[pos];
        }
        Some(map)
    }
}

/// Deterministic generating sequence: repeatedly adjoin the smallest
/// element outside the running closure.
pub fn generating_sequence(table: &CayleyTable) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closure = table.closure(&[]);
    while closure.len() < table.n() {
        let g = (0..table.n())
            .find(|&x| !closure.contains(x))
            .expect("closure is proper");
        gens.push(g);
        closure = table.closure(&gens);
    }
    gens
}

/// Checks that `map` is a homomorphism from `a` to `b` on every pair.
pub fn is_homomorphism(a: &CayleyTable, b: &CayleyTable, map: &[usize]) -> bool {
    for x in 0..a.n() {
        for y in 0..a.n() {
            if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

/// Searches for an isomorphism from `a` onto `b` by backtracking over
/// images of a generating sequence of `a`, pruning candidates by element
/// order. Returns a witness bijection (as an image array over `a`'s
/// indices) that is checked to be a homomorphism, or `None`.
pub fn are_isomorphic(a: &CayleyTable, b: &CayleyTable) -> Option<Vec<usize>> {
    if a.n() != b.n() {
        return None;
    }
    if fingerprint(a) != fingerprint(b) {
        return None;
    }
    if a.n() == 1 {
        return Some(vec![0]);
    }
    let gens = generating_sequence(a);
    let chain = GenChain::new(a, &gens);
    debug_assert!(chain.spans_all());
    let orders: Vec<usize> = gens.iter().map(|&g| a.order_of(g)).collect();
    let candidates: Vec<Vec<usize>> = orders
        .iter()
        .map(|&o| (0..b.n()).filter(|&y| b.order_of(y) == o).collect())
        .collect();
    let mut images = vec![0usize; gens.len()];
    search(a, b, &chain, &candidates, &mut images, 0)
}

fn search(
    a: &CayleyTable,
    b: &CayleyTable,
    chain: &GenChain,
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
) -> Option<Vec<usize>> {
    if depth == candidates.len() {
        let map = chain.extend(b, images)?;
        return is_homomorphism(a, b, &map).then_some(map);
    }
    for &c in &candidates[depth] {
        if images[..depth].contains(&c) {
            continue;
        }
        images[depth] = c;
        if let Some(found) = search(a, b, chain, candidates, images, depth + 1) {
            return Some(found);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loopcore::table::parse_cayley;

    fn fixture(text: &str) -> CayleyTable {
        parse_cayley(text).unwrap()
    }

    #[test]
    fn s3_isomorphic_to_relabeled_s3() {
        let a = fixture(include_str!("../../fixtures/s3.tab"));
        let perm = [3, 0, 5, 1, 4, 2];
        let b = a.relabel(&perm);
        let map = are_isomorphic(&a, &b).expect("relabelings are isomorphic");
        assert!(is_homomorphism(&a, &b, &map));
        let mut seen = [false; 6];
        for &m in &map {
            assert!(!seen[m]);
            seen[m] = true;
        }
    }

    #[test]
    fn s3_not_isomorphic_to_c6() {
        let a = fixture(include_str!("../../fixtures/s3.tab"));
        let c6 = parse_cayley("6 0\n0 1 2 3 4 5\n1 2 3 4 5 0\n2 3 4 5 0 1\n3 4 5 0 1 2\n4 5 0 1 2 3\n5 0 1 2 3 4\n").unwrap();
        assert!(are_isomorphic(&a, &c6).is_none());
    }

    #[test]
    fn e4_not_isomorphic_to_c4() {
        let e4 = fixture(include_str!("../../fixtures/e4.tab"));
        let c4 = fixture(include_str!("../../fixtures/c4.tab"));
        assert!(are_isomorphic(&e4, &c4).is_none());
    }

    #[test]
    fn generating_sequence_spans() {
        for text in [
            include_str!("../../fixtures/e8.tab"),
            include_str!("../../fixtures/a4.tab"),
            include_str!("../../fixtures/c2xc4.tab"),
        ] {
            let t = fixture(text);
            let gens = generating_sequence(&t);
            assert_eq!(t.closure(&gens).len(), t.n());
            let chain = GenChain::new(&t, &gens);
            assert!(chain.spans_all());
        }
    }
}
