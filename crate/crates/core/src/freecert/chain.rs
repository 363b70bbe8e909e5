use super::{pad, reject, sorted, Budget, Exhausted, ModularChain, SearchResult, Verdict};
use crate::arrangement::{Arrangement, Lattice};
use crate::bits::Mask;
use crate::error::Result;
use std::collections::HashMap;

struct ChainSearch<'a> {
    arr: &'a Arrangement,
    lat: &'a Lattice,
    pairs: Vec<Mask>,
    memo: HashMap<Mask, Option<Vec<Mask>>>,
    nodes: usize,
    budget: usize,
}

impl ChainSearch<'_> {
    /// A modular chain of the localization at flat `s` of rank `r`, top down.
    fn chain(&mut self, s: Mask, r: usize) -> SearchResult<Option<Vec<Mask>>> {
        if let Some(c) = self.memo.get(&s) {
            return Ok(c.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Exhausted);
        }
        let found = if r == 0 {
            Some(vec![s])
        } else {
            let mut found = None;
            let coatoms: Vec<Mask> = self.lat.flats_of_rank(r - 1).filter(|x| x.is_subset(s)).collect();
            for x in coatoms {
                if !self.arr.is_modular_coatom(s, x, &self.pairs) {
                    continue;
                }
                if let Some(mut c) = self.chain(x, r - 1)? {
                    c.push(s);
                    found = Some(c);
                    break;
                }
            }
            found
        };
        self.memo.insert(s, found.clone());
        Ok(found)
    }
}

fn chain_exponents(flats: &[Mask], dim: usize) -> Vec<usize> {
    let e: Vec<usize> = flats.windows(2).map(|w| (w[1] - w[0]).len()).collect();
    pad(&sorted(e), dim)
}

/// Searches for a maximal chain of modular flats, descending through
/// modular coatoms of successive localizations.
pub fn supersolvable(arr: &Arrangement, budget: Budget) -> Verdict<ModularChain> {
    let Ok(lat) = arr.lattice(budget.flats) else {
        return Verdict::Unknown;
    };
    let mut s = ChainSearch {
        arr,
        lat: &lat,
        pairs: arr.pair_closures(),
        memo: HashMap::new(),
        nodes: 0,
        budget: budget.nodes,
    };
    match s.chain(arr.all(), lat.top_rank()) {
        Err(Exhausted) => Verdict::Unknown,
        Ok(None) => Verdict::No,
        Ok(Some(flats)) => Verdict::Yes(ModularChain {
            exponents: chain_exponents(&flats, arr.dim()),
            flats: flats.iter().map(|f| f.to_vec()).collect(),
        }),
    }
}

/// Checks that the chain runs from the empty flat to the whole arrangement
/// through flats of every rank, each a modular coatom of the next.
pub fn verify_chain(arr: &Arrangement, chain: &ModularChain) -> Result<Vec<usize>> {
    let r = arr.rank();
    if chain.flats.len() != r + 1 {
        return reject(format!("chain has {} flats, expected {}", chain.flats.len(), r + 1));
    }
    let mut masks = Vec::with_capacity(r + 1);
    for f in &chain.flats {
        if f.iter().any(|&i| i >= arr.len()) {
            return reject("hyperplane index out of range");
        }
        masks.push(Mask::from_indices(f.iter().copied()));
    }
    if !masks[0].is_empty() || masks[r] != arr.all() {
        return reject("chain must start empty and end with every hyperplane");
    }
    let pairs = arr.pair_closures();
    for i in 1..=r {
        let (x, y) = (masks[i - 1], masks[i]);
        if !arr.is_flat(y) || arr.rank_of(y) != i || !x.is_subset(y) {
            return reject(format!("step {} is not a flat of rank {} above the previous", i, i));
        }
        if !arr.is_modular_coatom(y, x, &pairs) {
            return reject(format!("flat {} is not modular in the next", i - 1));
        }
    }
    let e = chain_exponents(&masks, arr.dim());
    if e != sorted(chain.exponents.clone()) {
        return reject(format!("declared exponents {:?}, chain gives {:?}", chain.exponents, e));
    }
    Ok(e)
}
