//! Automorphisms of the ambient loop: the three constructive families
//! (lifted linear maps, the diagonal/vector switch, conjugations by
//! order-3 elements), closure into a permutation group with witness
//! words, an independent backtracking search for the full automorphism
//! group, and orbits on subloops.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use thiserror::Error;

use crate::loopcore::{CayleyTable, GenChain, SubloopSet};
use crate::paige::PaigeLoop;
use crate::zorn::{FVec3, VMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    #[error("generator #{0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("applying a generator to an enumerated subloop left the family; the enumeration is incomplete")]
    OrbitEscape,
}

/// An automorphism stored as a permutation of element indices, with an
/// optional word in the generators of the group it came from (generator
/// indices, applied right to left).
#[derive(Clone, Debug)]
pub struct LoopPerm {
    images: Vec<u16>,
    pub word: Option<Vec<usize>>,
}

impl PartialEq for LoopPerm {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for LoopPerm {}

impl Hash for LoopPerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl PartialOrd for LoopPerm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LoopPerm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.images.cmp(&other.images)
    }
}

impl LoopPerm {
    pub fn identity(n: usize) -> LoopPerm {
        LoopPerm {
            images: (0..n as u16).collect(),
            word: Some(Vec::new()),
        }
    }

    pub fn from_images(images: Vec<u16>) -> LoopPerm {
        debug_assert!(is_permutation(&images));
        LoopPerm {
            images,
            word: None,
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// Composition `self . other`: apply `other` first.
    pub fn compose(&self, other: &LoopPerm) -> LoopPerm {
        let images = other
            .images
            .iter()
            .map(|&y| self.images[y as usize])
            .collect();
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => {
                let mut w = a.clone();
                w.extend(b);
                Some(w)
            }
            _ => None,
        };
        LoopPerm { images, word }
    }

    pub fn inverse(&self) -> LoopPerm {
        let mut images = vec![0u16; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u16;
        }
        LoopPerm {
            images,
            word: None,
        }
    }

    pub fn apply_set(&self, set: &SubloopSet) -> SubloopSet {
        let mut out = SubloopSet::empty(set.universe());
        for x in set.iter() {
            out.insert(self.apply(x));
        }
        out
    }

    /// Homomorphism check over all pairs; with bijectivity (structural)
    /// this is the automorphism property.
    pub fn is_automorphism(&self, table: &CayleyTable) -> bool {
        let n = table.n();
        for x in 0..n {
            for y in 0..n {
                if self.apply(table.mul(x, y)) != table.mul(self.apply(x), self.apply(y)) {
                    return false;
                }
            }
        }
        true
    }
}

fn is_permutation(images: &[u16]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&i| {
        let i = i as usize;
        i < seen.len() && !std::mem::replace(&mut seen[i], true)
    })
}

/// 3x3 bit matrix acting on row vectors of F2^3 by `v -> M v`.
pub type BitMatrix3 = [[u8; 3]; 3];

fn apply_matrix(m: &BitMatrix3, v: FVec3) -> FVec3 {
    let row = |i: usize| {
        (0..3).fold(0u8, |acc, j| acc ^ (m[i][j] & v.coord(j)))
    };
    FVec3::new(row(0), row(1), row(2))
}

fn matrix_invertible(m: &BitMatrix3) -> bool {
    // Determinant over F2 by cofactor expansion.
    let d = m[0][0] & (m[1][1] & m[2][2] ^ m[1][2] & m[2][1])
        ^ m[0][1] & (m[1][0] & m[2][2] ^ m[1][2] & m[2][0])
        ^ m[0][2] & (m[1][0] & m[2][1] ^ m[1][1] & m[2][0]);
    d == 1
}

/// Lifts an invertible linear map that respects the cross product to an
/// automorphism fixing the diagonal and acting on both vectors. Returns
/// `None` when the matrix is singular or fails the cross-product
/// compatibility (the lift would not be multiplicative).
pub fn lie_auto(paige: &PaigeLoop, m: &BitMatrix3) -> Option<LoopPerm> {
    if !matrix_invertible(m) {
        return None;
    }
    for a in 0..8u8 {
        for b in 0..8u8 {
            let (va, vb) = (FVec3::from_bits(a), FVec3::from_bits(b));
            if apply_matrix(m, va.cross(vb)) != apply_matrix(m, va).cross(apply_matrix(m, vb)) {
                return None;
            }
        }
    }
    let images = (0..paige.n())
        .map(|i| {
            let x = paige.element(i);
            let image = VMatrix::new(
                x.a(),
                apply_matrix(m, x.alpha()),
                apply_matrix(m, x.beta()),
                x.b(),
            );
            paige.index_of(image).expect("lift preserves the norm") as u16
        })
        .collect();
    let perm = LoopPerm::from_images(images);
    assert!(
        perm.is_automorphism(paige.table()),
        "lift of a cross-product-compatible matrix must be an automorphism"
    );
    Some(perm)
}

/// Coordinate-permutation automorphism: applies `pi` to the coordinates of
/// both vectors. Fixes the canonical involution, whose vectors are
/// constant.
pub fn perm_auto(paige: &PaigeLoop, pi: &[usize; 3]) -> LoopPerm {
    let mut m = [[0u8; 3]; 3];
    for i in 0..3 {
        m[i][pi[i]] = 1;
    }
    lie_auto(paige, &m).expect("coordinate permutations lift to automorphisms")
}

/// All six coordinate permutations, in lexicographic order.
pub fn all_perm_autos(paige: &PaigeLoop) -> Vec<LoopPerm> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    perms.iter().map(|pi| perm_auto(paige, pi)).collect()
}

/// The switch automorphism: swaps the two diagonal entries and the two
/// vectors. An involution as a permutation; exists because the field has
/// characteristic 2.
pub fn delta_auto(paige: &PaigeLoop) -> LoopPerm {
    let images = (0..paige.n())
        .map(|i| {
            let x = paige.element(i);
            let image = VMatrix::new(x.b(), x.beta(), x.alpha(), x.a());
            paige.index_of(image).expect("switch preserves the norm") as u16
        })
        .collect();
    let perm = LoopPerm::from_images(images);
    assert!(
        perm.is_automorphism(paige.table()),
        "the switch map must be an automorphism in characteristic 2"
    );
    perm
}

/// Conjugation `y -> (x^-1 y) x`, returned exactly when it is an
/// automorphism, which happens precisely for `x` of order 3 (and trivially
/// for the identity). For order-3 `x` the two bracketings agree and this
/// is asserted.
pub fn conj_auto(paige: &PaigeLoop, x: usize) -> Option<LoopPerm> {
    let t = paige.table();
    let xi = t.right_inverse(x);
    let images: Vec<u16> = (0..t.n())
        .map(|y| t.mul(t.mul(xi, y), x) as u16)
        .collect();
    if !is_permutation(&images) {
        return None;
    }
    let perm = LoopPerm::from_images(images);
    if !perm.is_automorphism(t) {
        return None;
    }
    if paige.order_of(x) == 3 {
        for y in 0..t.n() {
            assert_eq!(
                t.mul(t.mul(xi, y), x),
                t.mul(xi, t.mul(y, x)),
                "conjugation bracketings must agree for order-3 elements"
            );
        }
    }
    Some(perm)
}

/// The composite conjugation fixing the canonical involution:
/// `phi = c(v1^-1) . c(v0)` with `v0 = tri(010,110,0)`, `v1 = tri(001,101,0)`.
pub fn phi_auto(paige: &PaigeLoop) -> LoopPerm {
    let v0 = paige.named("v0").expect("catalog name");
    let v1 = paige.named("v1").expect("catalog name");
    let v1_inv = paige.table().right_inverse(v1);
    let c_v0 = conj_auto(paige, v0).expect("conjugation by an order-3 element");
    let c_v1_inv = conj_auto(paige, v1_inv).expect("conjugation by an order-3 element");
    let phi = c_v1_inv.compose(&c_v0);
    assert_eq!(
        phi.apply(paige.named("x0").unwrap()),
        paige.named("x0").unwrap(),
        "phi must fix the canonical involution"
    );
    phi
}

/// The generator family used throughout: the six coordinate permutations,
/// the switch, and conjugation by every order-3 element.
pub fn paper_generators(paige: &PaigeLoop) -> Vec<LoopPerm> {
    let mut gens = all_perm_autos(paige);
    gens.push(delta_auto(paige));
    for x in 0..paige.n() {
        if paige.order_of(x) == 3 {
            gens.push(conj_auto(paige, x).expect("order-3 conjugations are automorphisms"));
        }
    }
    gens
}

/// A finite permutation group given by generators, with the full element
/// set and parent links for reconstructing witness words. Built by a
/// deterministic breadth-first closure; at this scale that is simpler than
/// a stabilizer chain and still fast.
pub struct AutGroup {
    gens: Vec<LoopPerm>,
    elements: Vec<LoopPerm>,
    /// `parents[k] = (parent element, generator index)` with
    /// `element[k] = gen . element[parent]`; the identity has no parent.
    parents: Vec<Option<(usize, usize)>>,
    index: HashMap<Vec<u16>, usize>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn gens(&self) -> &[LoopPerm] {
        &self.gens
    }

    pub fn elements(&self) -> &[LoopPerm] {
        &self.elements
    }

    pub fn contains(&self, perm: &LoopPerm) -> bool {
        self.index.contains_key(perm.images())
    }

    /// The generator word of a stored element, outermost generator first.
    pub fn word_for(&self, mut k: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some((parent, gen)) = self.parents[k] {
            word.push(gen);
            k = parent;
        }
        word
    }
}

/// Breadth-first closure of validated generators. Fails if a generator is
/// not an automorphism of the table.
pub fn generate_group(table: &CayleyTable, gens: Vec<LoopPerm>) -> Result<AutGroup, AutError> {
    for (k, g) in gens.iter().enumerate() {
        if g.n() != table.n() || !g.is_automorphism(table) {
            return Err(AutError::NotAutomorphism(k));
        }
    }
    let identity = LoopPerm::identity(table.n());
    let mut elements = vec![identity.clone()];
    let mut parents = vec![None];
    let mut index = HashMap::new();
    index.insert(identity.images().to_vec(), 0usize);
    let mut head = 0;
    while head < elements.len() {
        for (gi, g) in gens.iter().enumerate() {
            let next = g.compose(&elements[head]);
            if !index.contains_key(next.images()) {
                index.insert(next.images().to_vec(), elements.len());
                elements.push(LoopPerm {
                    images: next.images().to_vec(),
                    word: None,
                });
                parents.push(Some((head, gi)));
            }
        }
        head += 1;
    }
    Ok(AutGroup {
        gens,
        elements,
        parents,
        index,
    })
}

/// Finds every automorphism by backtracking over images of a generating
/// sequence, independently of the constructive generator families.
///
/// The sequence starts from the canonical triple whose span is the
/// reference 24-element subloop; a fourth element completes it to a
/// generating set of the whole loop (adjoining any outside element does,
/// which is verified here). Candidate images are pruned by element order,
/// then by partial-homomorphism consistency on the 24-element span, then
/// by product orders against the fourth element, before the full map is
/// built and checked on every pair.
pub fn full_aut_search(paige: &PaigeLoop) -> Vec<LoopPerm> {
    let t = paige.table();
    let n = t.n();
    let x0 = paige.named("x0").unwrap();
    let z0 = paige.named("z0").unwrap();
    let u1 = paige.named("u1").unwrap();
    let core = t.closure(&[x0, z0, u1]);
    assert_eq!(core.len(), 24, "the canonical triple spans the 24-element subloop");
    for w in 0..n {
        if !core.contains(w) {
            assert_eq!(
                t.closure(&[x0, z0, u1, w]).len(),
                n,
                "any element outside the 24-element subloop completes a generating set"
            );
        }
    }
    let w = (0..n).find(|&x| !core.contains(x)).expect("proper subloop");

    let core_chain = GenChain::new(t, &[x0, z0, u1]);
    assert_eq!(core_chain.span(), 24);
    let full_chain = GenChain::new(t, &[x0, z0, u1, w]);
    assert!(full_chain.spans_all());

    let core_elems = core.indices();
    let orders: Vec<usize> = (0..n).map(|x| paige.order_of(x)).collect();
    let by_order = |o: usize| -> Vec<usize> {
        (0..n).filter(|&x| orders[x] == o).collect()
    };
    let a_cands = by_order(orders[x0]);
    let b_cands = by_order(orders[z0]);
    let c_cands = by_order(orders[u1]);
    let d_cands = by_order(orders[w]);

    let o_ab = orders[t.mul(x0, z0)];
    let o_ba = orders[t.mul(z0, x0)];
    let o_ac = orders[t.mul(x0, u1)];
    let o_bc = orders[t.mul(z0, u1)];
    let o_abc = orders[t.mul(t.mul(x0, z0), u1)];

    let mut found: Vec<LoopPerm> = a_cands
        .par_iter()
        .flat_map_iter(|&a| {
            let mut local = Vec::new();
            for &b in &b_cands {
                if orders[t.mul(a, b)] != o_ab || orders[t.mul(b, a)] != o_ba {
                    continue;
                }
                for &c in &c_cands {
                    if orders[t.mul(a, c)] != o_ac
                        || orders[t.mul(b, c)] != o_bc
                        || orders[t.mul(t.mul(a, b), c)] != o_abc
                    {
                        continue;
                    }
                    let Some(partial) = core_chain.extend(t, &[a, b, c]) else {
                        continue;
                    };
                    // Partial homomorphism over the 24-element span.
                    let consistent = core_elems.iter().all(|&x| {
                        core_elems.iter().all(|&y| {
                            partial[t.mul(x, y)] == t.mul(partial[x], partial[y])
                        })
                    });
                    if !consistent {
                        continue;
                    }
                    'next_d: for &d in &d_cands {
                        for &h in &core_elems {
                            if orders[t.mul(h, w)] != orders[t.mul(partial[h], d)]
                                || orders[t.mul(w, h)] != orders[t.mul(d, partial[h])]
                            {
                                continue 'next_d;
                            }
                        }
                        let Some(map) = full_chain.extend(t, &[a, b, c, d]) else {
                            continue;
                        };
                        let hom = (0..n).all(|x| {
                            (0..n).all(|y| map[t.mul(x, y)] == t.mul(map[x], map[y]))
                        });
                        if hom {
                            local.push(LoopPerm::from_images(
                                map.iter().map(|&v| v as u16).collect(),
                            ));
                        }
                    }
                }
            }
            local
        })
        .collect();
    found.sort();
    found.dedup();
    found
}

/// JSON export of a generated group: every element as a permutation array
/// with its generator-word annotation (outermost generator first).
pub fn export_group_json(group: &AutGroup) -> String {
    #[derive(serde::Serialize)]
    struct ElementRecord {
        images: Vec<u16>,
        word: Vec<usize>,
    }
    #[derive(serde::Serialize)]
    struct GroupRecord {
        order: usize,
        generators: Vec<Vec<u16>>,
        elements: Vec<ElementRecord>,
    }
    let record = GroupRecord {
        order: group.order(),
        generators: group.gens().iter().map(|g| g.images().to_vec()).collect(),
        elements: (0..group.order())
            .map(|k| ElementRecord {
                images: group.elements()[k].images().to_vec(),
                word: group.word_for(k),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&record).expect("group serializes");
    text.push('\n');
    text
}

/// Orbit partition of a family of subloops under the group generated by
/// `group.gens()`. The canonical representative of each orbit is its
/// lexicographically least member. Parent links record, for every member,
/// which generator produced it from which member, so mapping witnesses can
/// be reassembled.
pub struct OrbitPartition {
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<Orbit>,
    parents: Vec<Option<(usize, usize)>>,
}

pub struct Orbit {
    /// Index (into the subloop family) of the lexicographically least
    /// member.
    pub representative: usize,
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

pub fn orbits_on_subloops(
    group: &AutGroup,
    subloops: &[SubloopSet],
) -> Result<OrbitPartition, AutError> {
    let mut position: HashMap<&SubloopSet, usize> = HashMap::new();
    for (i, s) in subloops.iter().enumerate() {
        position.insert(s, i);
    }
    let mut orbit_of = vec![usize::MAX; subloops.len()];
    let mut parents: Vec<Option<(usize, usize)>> = vec![None; subloops.len()];
    let mut orbits = Vec::new();
    // The family is sorted, so the first unvisited member of an orbit is
    // its lexicographically least element.
    for start in 0..subloops.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let orbit_id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = orbit_id;
        let mut head = 0;
        while head < members.len() {
            let current = members[head];
            for (gi, g) in group.gens().iter().enumerate() {
                let image = g.apply_set(&subloops[current]);
                let &target = position.get(&image).ok_or(AutError::OrbitEscape)?;
                if orbit_of[target] == usize::MAX {
                    orbit_of[target] = orbit_id;
                    parents[target] = Some((current, gi));
                    members.push(target);
                }
            }
            head += 1;
        }
        members.sort_unstable();
        orbits.push(Orbit {
            representative: start,
            members,
        });
    }
    Ok(OrbitPartition {
        orbit_of,
        orbits,
        parents,
    })
}

impl OrbitPartition {
    /// The chain of generators carrying the orbit representative to the
    /// given member, as one composed permutation.
    fn chain_to(&self, group: &AutGroup, n: usize, member: usize) -> LoopPerm {
        let mut steps = Vec::new();
        let mut cursor = member;
        while let Some((parent, gen)) = self.parents[cursor] {
            steps.push(gen);
            cursor = parent;
        }
        let mut perm = LoopPerm::identity(n);
        // Innermost step first: the chain applies parents before children.
        for &gen in steps.iter().rev() {
            perm = group.gens()[gen].compose(&perm);
        }
        let mut word = Vec::new();
        for &gen in &steps {
            word.push(gen);
        }
        LoopPerm {
            images: perm.images().to_vec(),
            word: Some(word),
        }
    }
}

/// A witness automorphism mapping subloop `b` onto subloop `a` (indices
/// into the enumerated family), reconstructed from the orbit parent links;
/// `None` when the two lie in different orbits.
pub fn mapping_auto(
    group: &AutGroup,
    orbits: &OrbitPartition,
    subloops: &[SubloopSet],
    b: usize,
    a: usize,
) -> Option<LoopPerm> {
    if orbits.orbit_of[a] != orbits.orbit_of[b] {
        return None;
    }
    let n = subloops[a].universe();
    let to_b = orbits.chain_to(group, n, b);
    let to_a = orbits.chain_to(group, n, a);
    let witness = to_a.compose(&to_b.inverse());
    debug_assert_eq!(witness.apply_set(&subloops[b]), subloops[a]);
    Some(witness)
}
