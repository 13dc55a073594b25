//! The three Hasse constants over an enumerated, classified, orbit-
//! partitioned subloop family, and the counting identities relating them.
//!
//! Conventions: `l_glb[B:C]` counts copies of `B` in `C`; `l_iso[A:B:C]`
//! counts copies of `B` in `C` containing the specific subloop `A`;
//! `l_orb[A:B:C]` restricts further to one orbit of the automorphism
//! group. The abstract count `l[A:B]` (copies of `A` inside one `B`) is
//! computed on a reference table of `B`, not inside the ambient loop.

use std::collections::BTreeMap;

use crate::autgroup::OrbitPartition;
use crate::lattice::enumerate_subloops;
use crate::loopcore::{classify, CayleyTable, IsoType, SubloopSet};

/// Per-type index from element to containing subloops, so "copies of B
/// above A" queries scan only candidates through one element of A instead
/// of the whole family.
pub struct ContainmentIndex {
    types: Vec<IsoType>,
    copies: BTreeMap<IsoType, Vec<usize>>,
    through_element: BTreeMap<IsoType, Vec<Vec<u32>>>,
}

impl ContainmentIndex {
    pub fn new(n_elements: usize, subloops: &[SubloopSet], types: &[IsoType]) -> ContainmentIndex {
        assert_eq!(subloops.len(), types.len());
        let mut copies: BTreeMap<IsoType, Vec<usize>> = BTreeMap::new();
        for (i, ty) in types.iter().enumerate() {
            copies.entry(ty.clone()).or_default().push(i);
        }
        let mut through_element = BTreeMap::new();
        for (ty, members) in &copies {
            let mut per_elem: Vec<Vec<u32>> = vec![Vec::new(); n_elements];
            for &m in members {
                for e in subloops[m].iter() {
                    per_elem[e].push(m as u32);
                }
            }
            through_element.insert(ty.clone(), per_elem);
        }
        ContainmentIndex {
            types: copies.keys().cloned().collect(),
            copies,
            through_element,
        }
    }

    /// The distinct types present, in canonical order.
    pub fn types(&self) -> &[IsoType] {
        &self.types
    }

    pub fn copies_of(&self, ty: &IsoType) -> &[usize] {
        self.copies.get(ty).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `l_glb[B:C]`: the number of copies of `B`.
    pub fn count_copies(&self, ty: &IsoType) -> usize {
        self.copies_of(ty).len()
    }

    /// Indices of the copies of `B` containing `A`.
    pub fn copies_above(
        &self,
        subloops: &[SubloopSet],
        a: &SubloopSet,
        b: &IsoType,
    ) -> Vec<usize> {
        let Some(per_elem) = self.through_element.get(b) else {
            return Vec::new();
        };
        let Some(anchor) = a.min_index() else {
            // The empty set sits below every copy.
            return self.copies_of(b).to_vec();
        };
        per_elem[anchor]
            .iter()
            .map(|&m| m as usize)
            .filter(|&m| a.is_subset(&subloops[m]))
            .collect()
    }

    /// `l_iso[A:B:C]`.
    pub fn count_above(&self, subloops: &[SubloopSet], a: &SubloopSet, b: &IsoType) -> usize {
        self.copies_above(subloops, a, b).len()
    }
}

/// `l_orb[A:B:C]` for the orbit given by its member list.
pub fn count_orbit_above(
    subloops: &[SubloopSet],
    orbit_members: &[usize],
    a: &SubloopSet,
) -> usize {
    orbit_members
        .iter()
        .filter(|&&m| a.is_subset(&subloops[m]))
        .count()
}

/// Abstract counts `l[A:B]` for every type `A` occurring inside the
/// reference table of `B`, computed by enumerating and classifying the
/// reference table's own subloops.
pub fn abstract_counts_for_table(table: &CayleyTable) -> BTreeMap<IsoType, usize> {
    let mut counts = BTreeMap::new();
    for sub in enumerate_subloops(table) {
        // The full set of a catalog reference table classifies as the
        // table's own type, since its fingerprint is in the catalog.
        let ty = classify(table, &sub);
        *counts.entry(ty).or_insert(0) += 1;
    }
    counts
}

/// One Hasse-constant bundle for a (sub-type, sup-type) pair.
#[derive(Clone, Debug)]
pub struct HasseRecord {
    pub sub_type: IsoType,
    pub sup_type: IsoType,
    /// Abstract `l[A:B]`: copies of the sub-type inside one copy of the
    /// sup-type.
    pub l_in_sup: usize,
    /// `l_glb[B:C]`: copies of the sup-type in the ambient loop.
    pub sup_copies: usize,
    /// Per sub-orbit: `(orbit label, l_iso[A:B:C])`.
    pub l_iso: Vec<(String, usize)>,
    /// Per (sub-orbit, sup-orbit): `(labels, l_orb[A:B:C])`.
    pub l_orb: Vec<(String, String, usize)>,
}

/// One instance of a counting identity, with both sides computed from
/// independent routes.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub label: String,
    pub lhs: usize,
    pub rhs: usize,
}

impl IdentityCheck {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Inputs shared by the identity and lemma verifiers: the classified
/// family, its orbit partition with labels, and the abstract counts.
pub struct HasseContext<'a> {
    pub subloops: &'a [SubloopSet],
    pub types: &'a [IsoType],
    pub orbits: &'a OrbitPartition,
    pub orbit_labels: &'a [String],
    pub orbit_types: &'a [IsoType],
    pub index: &'a ContainmentIndex,
    /// `(A, B) -> l[A:B]` abstract counts; `B = Ambient` rows use the
    /// ambient census.
    pub abstract_counts: &'a BTreeMap<(IsoType, IsoType), usize>,
}

impl<'a> HasseContext<'a> {
    fn orbit_ids_of_type(&self, ty: &IsoType) -> Vec<usize> {
        (0..self.orbits.orbits.len())
            .filter(|&o| &self.orbit_types[o] == ty)
            .collect()
    }

    fn orbit_size(&self, o: usize) -> usize {
        self.orbits.orbits[o].size()
    }

    fn rep_set(&self, o: usize) -> &SubloopSet {
        &self.subloops[self.orbits.orbits[o].representative]
    }

    pub fn abstract_count(&self, a: &IsoType, b: &IsoType) -> usize {
        self.abstract_counts
            .get(&(a.clone(), b.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn l_iso(&self, a_orbit: usize, b: &IsoType) -> usize {
        self.index
            .count_above(self.subloops, self.rep_set(a_orbit), b)
    }

    pub fn l_orb(&self, a_orbit: usize, b_orbit: usize) -> usize {
        count_orbit_above(
            self.subloops,
            &self.orbits.orbits[b_orbit].members,
            self.rep_set(a_orbit),
        )
    }

    /// The full constants table, one record per ordered type pair with the
    /// sub-type of strictly smaller order. Zero-copy pairs are reported as
    /// zeros, not omitted.
    pub fn records(&self) -> Vec<HasseRecord> {
        let types = self.index.types();
        let mut records = Vec::new();
        for sub in types {
            for sup in types {
                let (Some(o_sub), Some(o_sup)) = (self.type_order(sub), self.type_order(sup))
                else {
                    continue;
                };
                if o_sub >= o_sup {
                    continue;
                }
                records.push(self.record(sub, sup));
            }
        }
        records
    }

    fn type_order(&self, ty: &IsoType) -> Option<usize> {
        match ty {
            IsoType::Ambient => self.subloops.first().map(SubloopSet::universe),
            other => other.order(),
        }
    }

    pub fn record(&self, sub: &IsoType, sup: &IsoType) -> HasseRecord {
        let sub_orbits = self.orbit_ids_of_type(sub);
        let sup_orbits = self.orbit_ids_of_type(sup);
        let l_iso = sub_orbits
            .iter()
            .map(|&a| (self.orbit_labels[a].clone(), self.l_iso(a, sup)))
            .collect();
        let l_orb = sub_orbits
            .iter()
            .flat_map(|&a| {
                sup_orbits.iter().map(move |&b| (a, b))
            })
            .map(|(a, b)| {
                (
                    self.orbit_labels[a].clone(),
                    self.orbit_labels[b].clone(),
                    self.l_orb(a, b),
                )
            })
            .collect();
        HasseRecord {
            sub_type: sub.clone(),
            sup_type: sup.clone(),
            l_in_sup: self.abstract_count(sub, sup),
            sup_copies: self.index.count_copies(sup),
            l_iso,
            l_orb,
        }
    }

    /// CSV export of the constants table.
    pub fn constants_csv(&self) -> String {
        let mut out = String::from("sub_type,sup_type,sub_orbit,sup_orbit,l_glb,l_iso,l_orb\n");
        for rec in self.records() {
            for (a_label, b_label, l_orb) in &rec.l_orb {
                let l_iso = rec
                    .l_iso
                    .iter()
                    .find(|(l, _)| l == a_label)
                    .map(|(_, v)| *v)
                    .unwrap_or(0);
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    rec.sub_type, rec.sup_type, a_label, b_label, rec.l_in_sup, l_iso, l_orb
                ));
            }
        }
        out
    }

    /// Orbit-mates share their constants: `l_iso` depends only on the
    /// orbit of `A` (and the type of `B`), `l_orb` only on the orbits of
    /// both. Checked exhaustively over every subloop, not just
    /// representatives.
    pub fn verify_counting_lemma(&self) -> Vec<IdentityCheck> {
        let types = self.index.types().to_vec();
        let n_orbits = self.orbits.orbits.len();
        let mut checks = Vec::new();
        let mut iso_mismatches = 0usize;
        let mut orb_mismatches = 0usize;
        let mut iso_instances = 0usize;
        let mut orb_instances = 0usize;
        for orbit in &self.orbits.orbits {
            let rep = &self.subloops[orbit.representative];
            for ty in &types {
                let expected = self.index.count_above(self.subloops, rep, ty);
                for &m in &orbit.members {
                    iso_instances += 1;
                    if self.index.count_above(self.subloops, &self.subloops[m], ty) != expected {
                        iso_mismatches += 1;
                    }
                }
            }
            for b_orbit in 0..n_orbits {
                let expected =
                    count_orbit_above(self.subloops, &self.orbits.orbits[b_orbit].members, rep);
                for &m in &orbit.members {
                    orb_instances += 1;
                    if count_orbit_above(
                        self.subloops,
                        &self.orbits.orbits[b_orbit].members,
                        &self.subloops[m],
                    ) != expected
                    {
                        orb_mismatches += 1;
                    }
                }
            }
        }
        checks.push(IdentityCheck {
            label: format!("l_iso constant on orbits ({iso_instances} instances)"),
            lhs: iso_mismatches,
            rhs: 0,
        });
        checks.push(IdentityCheck {
            label: format!("l_orb constant on orbit pairs ({orb_instances} instances)"),
            lhs: orb_mismatches,
            rhs: 0,
        });
        checks
    }

    /// The five counting identities, instantiated for every ordered type
    /// pair (and every orbit where they quantify over orbits). Left sides
    /// come from abstract counts and censuses, right sides from direct
    /// containment counting in the enumerated lattice.
    pub fn verify_identities(&self) -> Vec<IdentityCheck> {
        let types = self.index.types().to_vec();
        let mut checks = Vec::new();
        for a in &types {
            let a_orbits = self.orbit_ids_of_type(a);
            let a_transitive = a_orbits.len() == 1;
            for b in &types {
                let b_orbits = self.orbit_ids_of_type(b);
                let l_ab = self.abstract_count(a, b);
                let l_bc = self.index.count_copies(b);

                // Sum over sup-orbits: l_iso[A:B:C] = sum_j l_orb[A:B_j:C].
                for &ao in &a_orbits {
                    let lhs = self.l_iso(ao, b);
                    let rhs: usize = b_orbits.iter().map(|&bo| self.l_orb(ao, bo)).sum();
                    checks.push(IdentityCheck {
                        label: format!(
                            "orbit sum: l_iso[{}:{}:C] = sum of l_orb",
                            self.orbit_labels[ao], b
                        ),
                        lhs,
                        rhs,
                    });
                }

                // Double count per sup-orbit:
                // l[A:B] * |O(B_j)| = sum_i |O(A_i)| * l_orb[A_i:B_j:C].
                for &bo in &b_orbits {
                    let lhs = l_ab * self.orbit_size(bo);
                    let rhs: usize = a_orbits
                        .iter()
                        .map(|&ao| self.orbit_size(ao) * self.l_orb(ao, bo))
                        .sum();
                    checks.push(IdentityCheck {
                        label: format!(
                            "orbit double count: l[{a}:{b}]*|O({})|",
                            self.orbit_labels[bo]
                        ),
                        lhs,
                        rhs,
                    });
                    if a_transitive {
                        let rhs =
                            self.index.count_copies(a) * self.l_orb(a_orbits[0], bo);
                        checks.push(IdentityCheck {
                            label: format!(
                                "transitive orbit form: l[{a}:{b}]*|O({})| = l[{a}:C]*l_orb",
                                self.orbit_labels[bo]
                            ),
                            lhs,
                            rhs,
                        });
                    }
                }

                // Type-level double count:
                // l[A:B] * l[B:C] = sum_i |O(A_i)| * l_iso[A_i:B:C].
                let lhs = l_ab * l_bc;
                let rhs: usize = a_orbits
                    .iter()
                    .map(|&ao| self.orbit_size(ao) * self.l_iso(ao, b))
                    .sum();
                checks.push(IdentityCheck {
                    label: format!("type double count: l[{a}:{b}]*l[{b}:C]"),
                    lhs,
                    rhs,
                });
                if a_transitive && !a_orbits.is_empty() {
                    let rhs = self.index.count_copies(a) * self.l_iso(a_orbits[0], b);
                    checks.push(IdentityCheck {
                        label: format!("transitive type form: l[{a}:{b}]*l[{b}:C] = l[{a}:C]*l_iso"),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        checks
    }
}
