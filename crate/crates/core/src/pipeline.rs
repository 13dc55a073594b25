//! One-shot assembly of the full analysis: loop construction, subloop
//! enumeration and classification, automorphism group, orbits with
//! canonical labels, covering relations, and abstract counts.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::autgroup::{
    generate_group, orbits_on_subloops, paper_generators, AutGroup, OrbitPartition,
};
use crate::chein::GroupCatalog;
use crate::hasse::{abstract_counts_for_table, ContainmentIndex, HasseContext};
use crate::lattice::{covering_relations, enumerate_subloops, Covers};
use crate::loopcore::{classify, IsoType, SubloopSet};
use crate::paige::PaigeLoop;

pub struct Pipeline {
    pub paige: PaigeLoop,
    pub catalog: GroupCatalog,
    /// All subloops, sorted lexicographically; index order is the
    /// canonical subloop numbering.
    pub subloops: Vec<SubloopSet>,
    pub types: Vec<IsoType>,
    pub index: ContainmentIndex,
    pub covers: Covers,
    pub aut: AutGroup,
    pub orbits: OrbitPartition,
    pub orbit_labels: Vec<String>,
    pub orbit_types: Vec<IsoType>,
    /// `(A, B) -> l[A:B]` for every pair of occurring types; rows with
    /// `B = Ambient` come from the ambient census.
    pub abstract_counts: BTreeMap<(IsoType, IsoType), usize>,
}

impl Pipeline {
    pub fn build() -> Pipeline {
        let paige = PaigeLoop::build();
        let catalog = GroupCatalog::load();
        let subloops = enumerate_subloops(paige.table());
        let types: Vec<IsoType> = subloops
            .par_iter()
            .map(|s| classify(paige.table(), s))
            .collect();
        let index = ContainmentIndex::new(paige.n(), &subloops, &types);
        let covers = covering_relations(&subloops);
        let aut = generate_group(paige.table(), paper_generators(&paige))
            .expect("the constructive generators are automorphisms");
        let orbits = orbits_on_subloops(&aut, &subloops)
            .expect("the enumeration is closed under the action");
        let (orbit_labels, orbit_types) = label_orbits(&subloops, &types, &index, &orbits);
        let abstract_counts = build_abstract_counts(&catalog, &index);
        Pipeline {
            paige,
            catalog,
            subloops,
            types,
            index,
            covers,
            aut,
            orbits,
            orbit_labels,
            orbit_types,
            abstract_counts,
        }
    }

    pub fn hasse(&self) -> HasseContext<'_> {
        HasseContext {
            subloops: &self.subloops,
            types: &self.types,
            orbits: &self.orbits,
            orbit_labels: &self.orbit_labels,
            orbit_types: &self.orbit_types,
            index: &self.index,
            abstract_counts: &self.abstract_counts,
        }
    }

    /// Census count of one type.
    pub fn census(&self, ty: &IsoType) -> usize {
        self.index.count_copies(ty)
    }

    /// Index of the subloop generated by the given elements.
    pub fn subloop_of(&self, seed: &[usize]) -> Option<usize> {
        let set = self.paige.table().closure(seed);
        self.subloops.binary_search(&set).ok()
    }

    /// Orbit id of the orbit with the given label.
    pub fn orbit_by_label(&self, label: &str) -> Option<usize> {
        self.orbit_labels.iter().position(|l| l == label)
    }
}

/// Canonical orbit labels: the type name when the type has one orbit; the
/// Klein-four orbits carry `+`/`-` by the contained-in-A4 criterion, which
/// must agree across each orbit (cross-checking the group action against
/// the containment criterion).
fn label_orbits(
    subloops: &[SubloopSet],
    types: &[IsoType],
    index: &ContainmentIndex,
    orbits: &OrbitPartition,
) -> (Vec<String>, Vec<IsoType>) {
    let n_orbits = orbits.orbits.len();
    let orbit_types: Vec<IsoType> = orbits
        .orbits
        .iter()
        .map(|o| types[o.representative].clone())
        .collect();
    let mut labels = Vec::with_capacity(n_orbits);
    for (oid, orbit) in orbits.orbits.iter().enumerate() {
        let ty = &orbit_types[oid];
        let same_type: Vec<usize> = (0..n_orbits)
            .filter(|&o| &orbit_types[o] == ty)
            .collect();
        let label = if same_type.len() == 1 {
            ty.to_string()
        } else if *ty == IsoType::E4 {
            let in_a4 = |m: usize| index.count_above(subloops, &subloops[m], &IsoType::A4) > 0;
            let rep_in_a4 = in_a4(orbit.representative);
            for &m in &orbit.members {
                assert_eq!(
                    in_a4(m),
                    rep_in_a4,
                    "A4 containment must be constant on an orbit"
                );
            }
            if rep_in_a4 {
                format!("{ty}+")
            } else {
                format!("{ty}-")
            }
        } else {
            let k = same_type.iter().position(|&o| o == oid).unwrap();
            format!("{ty}#{k}")
        };
        labels.push(label);
    }
    (labels, orbit_types)
}

fn build_abstract_counts(
    catalog: &GroupCatalog,
    index: &ContainmentIndex,
) -> BTreeMap<(IsoType, IsoType), usize> {
    let occurring = index.types().to_vec();
    let mut table = BTreeMap::new();
    for sup in &occurring {
        if *sup == IsoType::Ambient {
            for sub in &occurring {
                table.insert((sub.clone(), sup.clone()), index.count_copies(sub));
            }
            continue;
        }
        let reference = catalog
            .get(sup)
            .unwrap_or_else(|| panic!("no reference table for type {sup}"));
        let counts = abstract_counts_for_table(reference);
        for sub in &occurring {
            let value = counts.get(sub).copied().unwrap_or(0);
            table.insert((sub.clone(), sup.clone()), value);
        }
    }
    table
}
