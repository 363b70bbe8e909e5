//! Arrangements of ideal type, the boundary condition over maximal standard
//! parabolic subsystems, and classification of ideals.

use crate::arrangement::Arrangement;
use crate::bits::Mask;
use crate::error::{Error, Result};
use crate::ideals::{counts_within_heights, enumerate, Ideal, IdealFilter};
use crate::rootsys::RootSystem;
use rayon::prelude::*;
use serde::Serialize;

/// `A_I`: one hyperplane per root outside the ideal, in root-index order.
pub fn arrangement_of_ideal_type(rs: &RootSystem, ideal: &Ideal) -> Arrangement {
    Arrangement::from_roots(rs, ideal.complement(rs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionWitness {
    /// Zero-based simple root removed to form the subsystem.
    pub drop: usize,
    /// Zero-based simple roots of the subsystem.
    pub simple: Vec<usize>,
    /// Roots of the subsystem.
    #[serde(skip)]
    pub phi0: Mask,
    /// Roots outside both the subsystem and the ideal, by increasing height.
    pub boundary: Vec<usize>,
    /// `(a, b, g)`: boundary roots `a`, `b` and a subsystem root `g` in their span.
    pub triples: Vec<(usize, usize, usize)>,
}

impl ConditionWitness {
    /// Cartan type of the subsystem, e.g. `D5`.
    pub fn label(&self, rs: &RootSystem) -> String {
        rs.subdiagram_type(&self.simple)
    }
}

/// Tests the boundary condition for the maximal parabolic obtained by
/// removing simple root `drop`.
pub fn check_condition(rs: &RootSystem, ideal: &Ideal, drop: usize) -> Option<ConditionWitness> {
    let p = rs.maximal_parabolic(drop);
    let outside = ideal.complement(rs);
    let mut boundary: Vec<usize> = (outside - p.mask).to_vec();
    if boundary.is_empty() {
        return None;
    }
    boundary.sort_by_key(|&r| (rs.root(r).height, r));
    if boundary.windows(2).any(|w| rs.root(w[0]).height == rs.root(w[1]).height) {
        return None;
    }
    // Distinct heights make the chain test a test on consecutive roots.
    if boundary.windows(2).any(|w| !rs.dominates(w[0], w[1])) {
        return None;
    }
    let mut triples = Vec::new();
    for (i, &a) in boundary.iter().enumerate() {
        for &b in &boundary[i + 1..] {
            let span = rs.span_of_pair(a, b) & p.mask;
            let g = (span & outside).first().or_else(|| span.first())?;
            triples.push((a, b, g));
        }
    }
    Some(ConditionWitness { drop, simple: p.simple, phi0: p.mask, boundary, triples })
}

/// Drop orders scanned: the highest-numbered simple root first.
fn scan_order(rs: &RootSystem) -> impl Iterator<Item = usize> {
    (0..rs.rank()).rev()
}

/// Every maximal standard parabolic meeting the condition, in scan order.
pub fn condition_subsystems(rs: &RootSystem, ideal: &Ideal) -> Vec<ConditionWitness> {
    scan_order(rs).filter_map(|k| check_condition(rs, ideal, k)).collect()
}

/// The first maximal standard parabolic meeting the condition.
pub fn find_condition_subsystem(rs: &RootSystem, ideal: &Ideal) -> Option<ConditionWitness> {
    scan_order(rs).find_map(|k| check_condition(rs, ideal, k))
}

#[derive(Clone, Debug)]
pub struct Reduction {
    /// `A_{I_0}`: the hyperplanes of subsystem roots outside the ideal.
    pub localized: Arrangement,
    /// Those hyperplanes as indices into `A_I`.
    pub modular_flat: Mask,
    pub new_exponent: usize,
    /// The ideal `I ∩ Phi_0` as a root mask.
    pub localized_ideal: Mask,
}

/// Localizes `A_I` at the subsystem of a witness and checks that the result
/// is a modular flat of corank one.
pub fn reduce_via_condition(rs: &RootSystem, ideal: &Ideal, w: &ConditionWitness) -> Result<Reduction> {
    let outside = ideal.complement(rs);
    let arr = Arrangement::from_roots(rs, outside);
    let roots: Vec<usize> = outside.iter().collect();
    let flat = Mask::from_indices((0..roots.len()).filter(|&i| w.phi0.contains(roots[i])));
    let fail = |m: &str| Err(Error::Reduction(m.to_string()));
    if arr.closure(flat) != flat {
        return fail("subsystem hyperplanes are not a flat");
    }
    if arr.rank_of(flat) + 1 != arr.rank() {
        return fail("subsystem flat does not have corank one");
    }
    if !arr.is_modular_coatom(arr.all(), flat, &arr.pair_closures()) {
        return fail("subsystem flat is not modular");
    }
    let new_exponent = arr.len() - flat.len();
    if new_exponent != w.boundary.len() {
        return fail("boundary size differs from the number of added hyperplanes");
    }
    Ok(Reduction {
        localized: Arrangement::from_roots(rs, outside & w.phi0),
        modular_flat: flat,
        new_exponent,
        localized_ideal: ideal.members & w.phi0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Classification {
    Reducible,
    ConditionMet { witness: ConditionWitness },
    PenultimateTheta,
    EmptyIdeal,
    Unresolved,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Reducible => "reducible",
            Classification::ConditionMet { .. } => "condition_met",
            Classification::PenultimateTheta => "penultimate_theta",
            Classification::EmptyIdeal => "empty_ideal",
            Classification::Unresolved => "unresolved",
        }
    }

    pub fn is_resolved(&self) -> bool {
        !matches!(self, Classification::Unresolved)
    }
}

/// Tags an ideal by the first clause it meets: reducible arrangement, then the
/// boundary condition, then `{theta}` or the empty ideal.
pub fn classify_ideal(rs: &RootSystem, ideal: &Ideal) -> Classification {
    if arrangement_of_ideal_type(rs, ideal).decompose().is_reducible() {
        Classification::Reducible
    } else if let Some(witness) = find_condition_subsystem(rs, ideal) {
        Classification::ConditionMet { witness }
    } else if *ideal == Ideal::theta(rs) {
        Classification::PenultimateTheta
    } else if ideal.is_empty() {
        Classification::EmptyIdeal
    } else {
        Classification::Unresolved
    }
}

/// Classifies every ideal in parallel; output follows enumeration order.
pub fn classify_all(rs: &RootSystem, filter: IdealFilter) -> Vec<(Ideal, Classification)> {
    let ideals: Vec<Ideal> = enumerate(rs, filter).collect();
    // Warm the shared span table before the workers race for it.
    rs.span_pairs();
    ideals.into_par_iter().map(|i| (i, classify_ideal(rs, &i))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub all: usize,
    pub classified: usize,
    pub reducible: usize,
    pub condition_met: usize,
    pub penultimate_theta: usize,
    pub empty_ideal: usize,
}

pub fn class_counts(rs: &RootSystem) -> ClassCounts {
    let all = classify_all(rs, IdealFilter::all());
    let count = |n: &str| all.iter().filter(|(_, c)| c.name() == n).count();
    ClassCounts {
        all: all.len(),
        classified: all.iter().filter(|(_, c)| c.is_resolved()).count(),
        reducible: count("reducible"),
        condition_met: count("condition_met"),
        penultimate_theta: count("penultimate_theta"),
        empty_ideal: count("empty_ideal"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightCounts {
    /// `within[t-1]`: ideals contained in the ideal of roots of height `>= t`.
    pub within: Vec<usize>,
    /// Ideals left unresolved by the classification.
    pub unresolved: usize,
}

pub fn height_counts(rs: &RootSystem) -> HeightCounts {
    let c = class_counts(rs);
    HeightCounts { within: counts_within_heights(rs), unresolved: c.all - c.classified }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryRow {
    pub generator: usize,
    /// Every subsystem meeting the condition for the principal ideal, in scan order.
    pub witnesses: Vec<ConditionWitness>,
}

/// For each root of height `t`, the subsystems meeting the condition for the
/// ideal it generates.
pub fn boundary_rows(rs: &RootSystem, t: usize) -> Vec<BoundaryRow> {
    rs.positive_roots()
        .iter()
        .filter(|r| r.height == t)
        .map(|r| {
            let ideal = Ideal::generated(rs, &[r.index]);
            BoundaryRow { generator: r.index, witnesses: condition_subsystems(rs, &ideal) }
        })
        .collect()
}
