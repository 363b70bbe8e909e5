//! Poincare polynomials of ideals: generating functions of the separating
//! sets `N(w) ∩ I^c` by size, which count regions of `A_I` by rank from the
//! region containing the dominant chamber.

use crate::arrangement::Arrangement;
use crate::bits::Mask;
use crate::error::Result;
use crate::idealtype::ConditionWitness;
use crate::ideals::Ideal;
use crate::poly::Poly;
use crate::rootsys::RootSystem;
use serde::Serialize;
use std::collections::HashSet;

/// Default cap on Weyl group elements visited.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// The distinct sets `N(w) ∩ keep` over the Weyl group.
pub fn separating_sets(rs: &RootSystem, keep: Mask, cap: usize) -> Result<HashSet<Mask>> {
    let mut seen = HashSet::new();
    rs.for_each_weyl_element(cap, |w| {
        seen.insert(w.inversions & keep);
    })?;
    Ok(seen)
}

fn rank_generating(sets: &HashSet<Mask>) -> Poly {
    let top = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut c = vec![0i64; top + 1];
    for s in sets {
        c[s.len()] += 1;
    }
    Poly::new(c)
}

pub fn poincare_poly(rs: &RootSystem, ideal: &Ideal, cap: usize) -> Result<Poly> {
    Ok(rank_generating(&separating_sets(rs, ideal.complement(rs), cap)?))
}

/// `prod (1 + t + .. + t^m)` over `exps`.
pub fn exponent_product(exps: &[usize]) -> Poly {
    exps.iter().fold(Poly::one(), |acc, &m| acc.mul(&Poly::t_integer(m + 1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationCheck {
    pub holds: bool,
    pub poly: Poly,
    pub exponents: Vec<usize>,
}

/// Compares the Poincare polynomial with the product over the ideal exponents.
pub fn factorization_check(rs: &RootSystem, ideal: &Ideal, cap: usize) -> Result<FactorizationCheck> {
    let poly = poincare_poly(rs, ideal, cap)?;
    let exponents = ideal.exponents(rs);
    Ok(FactorizationCheck { holds: poly == exponent_product(&exponents), poly, exponents })
}

/// Whether the number of separating sets equals the region count from the
/// characteristic polynomial.
pub fn zaslavsky_crosscheck(rs: &RootSystem, ideal: &Ideal, cap: usize, flat_budget: usize) -> Result<bool> {
    let p = poincare_poly(rs, ideal, cap)?;
    let arr = Arrangement::from_roots(rs, ideal.complement(rs));
    let regions = arr.lattice(flat_budget)?.region_count();
    Ok(p.eval(1) == regions as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCheck {
    pub zeta0: Poly,
    pub fiber_degree: usize,
    pub product_matches: bool,
    /// The regions over the base region of the localization, ordered by
    /// inclusion of separating sets, form a chain of length `fiber_degree`.
    pub fiber_is_chain: bool,
}

/// Splits the Poincare polynomial along the subsystem of a witness: the
/// localization's polynomial times `1 + t + .. + t^e`, `e` the boundary size.
pub fn modular_fiber_factorization(
    rs: &RootSystem,
    ideal: &Ideal,
    w: &ConditionWitness,
    cap: usize,
) -> Result<FiberCheck> {
    let keep = ideal.complement(rs);
    let sets = separating_sets(rs, keep, cap)?;
    let zeta = rank_generating(&sets);
    let local: HashSet<Mask> = sets.iter().map(|&s| s & w.phi0).collect();
    let zeta0 = rank_generating(&local);
    let e = w.boundary.len();
    let product_matches = zeta == zeta0.mul(&Poly::t_integer(e + 1));

    let mut fiber: Vec<Mask> = sets.iter().copied().filter(|s| !s.intersects(w.phi0)).collect();
    fiber.sort_by_key(|s| s.len());
    let fiber_is_chain = fiber.len() == e + 1 && fiber.windows(2).all(|p| p[0].is_subset(p[1]));
    Ok(FiberCheck { zeta0, fiber_degree: e, product_matches, fiber_is_chain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealtype::check_condition;

    fn rs(n: &str) -> RootSystem {
        RootSystem::from_name(n).unwrap()
    }

    #[test]
    fn small_cases() {
        let a2 = rs("A2");
        assert_eq!(poincare_poly(&a2, &Ideal::empty(), DEFAULT_WEYL_CAP).unwrap().coeffs(), &[1, 2, 2, 1]);
        let g2 = rs("G2");
        let p = poincare_poly(&g2, &Ideal::theta(&g2), DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(p, Poly::t_integer(2).mul(&Poly::t_integer(5)));
        assert_eq!(poincare_poly(&g2, &Ideal::all(&g2), DEFAULT_WEYL_CAP).unwrap(), Poly::one());
    }

    #[test]
    fn region_counts() {
        let d4 = rs("D4");
        assert_eq!(poincare_poly(&d4, &Ideal::empty(), DEFAULT_WEYL_CAP).unwrap().eval(1), 192);
        let i2 = Ideal::height_at_least(&d4, 2);
        assert_eq!(poincare_poly(&d4, &i2, DEFAULT_WEYL_CAP).unwrap().eval(1), 16);
        let a3 = rs("A3");
        let beta = Ideal::generated(&a3, &[a3.simple_roots()[1]]);
        assert_eq!(poincare_poly(&a3, &beta, DEFAULT_WEYL_CAP).unwrap().eval(1), 4);
        assert!(zaslavsky_crosscheck(&a3, &beta, DEFAULT_WEYL_CAP, 1000).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(poincare_poly(&rs("E7"), &Ideal::empty(), DEFAULT_WEYL_CAP).is_err());
    }

    #[test]
    fn fiber_over_a_single_boundary_root() {
        let a3 = rs("A3");
        let ideal = Ideal::generated(&a3, &[a3.simple_roots()[1]]);
        let w = check_condition(&a3, &ideal, 2).unwrap();
        let f = modular_fiber_factorization(&a3, &ideal, &w, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(f.fiber_degree, 1);
        assert_eq!(f.zeta0, Poly::t_integer(2));
        assert!(f.product_matches && f.fiber_is_chain);
    }

    #[test]
    fn f4_fiber_example() {
        let f4 = rs("F4");
        let ideal = Ideal::parse(&f4, "[0121]").unwrap();
        let w = check_condition(&f4, &ideal, 3).unwrap();
        let f = modular_fiber_factorization(&f4, &ideal, &w, DEFAULT_WEYL_CAP).unwrap();
        assert!(f.product_matches && f.fiber_is_chain);
        // The localization is the whole B3 arrangement.
        assert_eq!(f.zeta0, exponent_product(&[1, 3, 5]));
        assert_eq!(f.fiber_degree, 4);
    }
}
