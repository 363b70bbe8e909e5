use super::{
    multiset_minus, pad, reject, sorted, Budget, Exhausted, InductionBase, InductionRow,
    InductionTable, SearchResult, Verdict,
};
use crate::arrangement::Arrangement;
use crate::bits::Mask;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

type Partial = (Arc<Vec<InductionRow>>, Vec<usize>);

struct Universe<'a> {
    arr: &'a Arrangement,
    pairs: Vec<Mask>,
    memo: HashMap<Mask, Option<Partial>>,
}

impl<'a> Universe<'a> {
    fn new(arr: &'a Arrangement) -> Self {
        Universe { arr, pairs: arr.pair_closures(), memo: HashMap::new() }
    }
}

pub(super) struct IfSearch {
    budget: Budget,
    nodes: usize,
    /// Results for canonical arrangements, shared by every restriction.
    canonical: HashMap<Arrangement, Option<Arc<InductionTable>>>,
}

impl IfSearch {
    pub(super) fn new(budget: Budget) -> Self {
        IfSearch { budget, nodes: 0, canonical: HashMap::new() }
    }

    fn tick(&mut self) -> SearchResult<()> {
        self.nodes += 1;
        if self.nodes > self.budget.nodes {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    pub(super) fn canonical_table(&mut self, c: &Arrangement) -> SearchResult<Option<Arc<InductionTable>>> {
        if let Some(r) = self.canonical.get(c) {
            return Ok(r.clone());
        }
        let mut u = Universe::new(c);
        let out = self.search(&mut u, c.all())?.map(|(rows, exps)| {
            Arc::new(InductionTable { base: None, rows: rows.to_vec(), exponents: exps })
        });
        self.canonical.insert(c.clone(), out.clone());
        Ok(out)
    }

    /// Certificate for the restriction of `within` to `h`, with its padded exponents.
    fn restriction_cert(
        &mut self,
        arr: &Arrangement,
        within: Mask,
        h: usize,
    ) -> SearchResult<Option<(Arc<InductionTable>, Vec<usize>)>> {
        let res = arr.restriction_within(within, h);
        let canon = res.arr.canonical(res.arr.all());
        Ok(self
            .canonical_table(&canon.arr)?
            .map(|t| {
                let e = pad(&t.exponents, arr.dim() - 1);
                (t, e)
            }))
    }

    fn search(&mut self, u: &mut Universe, s: Mask) -> SearchResult<Option<Partial>> {
        if let Some(r) = u.memo.get(&s) {
            return Ok(r.clone());
        }
        self.tick()?;
        let found = self.search_uncached(u, s)?;
        u.memo.insert(s, found.clone());
        Ok(found)
    }

    fn search_uncached(&mut self, u: &mut Universe, s: Mask) -> SearchResult<Option<Partial>> {
        let dim = u.arr.dim();
        if s.is_empty() {
            return Ok(Some((Arc::new(Vec::new()), vec![0; dim])));
        }
        let lat = u.arr.lattice_within(s, self.budget.flats).map_err(|_| Exhausted)?;
        // A free arrangement has a characteristic polynomial with these roots.
        let Some(roots) = lat.char_poly().nonnegative_integer_roots() else {
            return Ok(None);
        };
        let e: Vec<usize> = roots.iter().map(|&x| x as usize).collect();

        let r = lat.top_rank();
        if r >= 2 {
            let coatoms: Vec<Mask> = lat.flats_of_rank(r - 1).collect();
            for x in coatoms {
                if !u.arr.is_modular_coatom(s, x, &u.pairs) {
                    continue;
                }
                if let Some((rows, ex)) = self.search(u, x)? {
                    if let Some(done) = self.extend(u.arr, x, &rows, ex, s - x)? {
                        return Ok(Some(done));
                    }
                }
            }
        }

        // Deletion: try hyperplanes of largest index first.
        let idx: Vec<usize> = s.iter().collect();
        for &h in idx.iter().rev() {
            let res_len = u.arr.restriction_within(s, h).arr.len();
            let b = s.len() - res_len;
            let Some(expected) = multiset_minus(&e, &[b]) else {
                continue;
            };
            let Some((sub, rexp)) = self.restriction_cert(u.arr, s, h)? else {
                continue;
            };
            if rexp != expected {
                continue;
            }
            let Some((rows, before)) = self.search(u, s - Mask::single(h))? else {
                continue;
            };
            let mut want = expected.clone();
            want.push(b - 1);
            if before != sorted(want) {
                continue;
            }
            let mut rows = rows.to_vec();
            rows.push(InductionRow {
                hyperplane: h,
                exponents_before: before,
                exponents_after: e.clone(),
                restriction_exponents: rexp,
                restriction: sub,
            });
            return Ok(Some((Arc::new(rows), e)));
        }
        Ok(None)
    }

    /// Adds the hyperplanes of `add`, in index order, on top of a table for `x`.
    fn extend(
        &mut self,
        arr: &Arrangement,
        x: Mask,
        rows: &[InductionRow],
        exps: Vec<usize>,
        add: Mask,
    ) -> SearchResult<Option<Partial>> {
        let mut cur = x;
        let mut exps = exps;
        let mut rows = rows.to_vec();
        for h in add.iter() {
            cur.insert(h);
            let Some((sub, rexp)) = self.restriction_cert(arr, cur, h)? else {
                return Ok(None);
            };
            let Some(diff) = multiset_minus(&exps, &rexp) else {
                return Ok(None);
            };
            let mut after = rexp.clone();
            after.push(diff[0] + 1);
            let after = sorted(after);
            rows.push(InductionRow {
                hyperplane: h,
                exponents_before: exps,
                exponents_after: after.clone(),
                restriction_exponents: rexp,
                restriction: sub,
            });
            exps = after;
        }
        Ok(Some((Arc::new(rows), exps)))
    }
}

/// Searches for an induction table: modular-coatom lifting first, then
/// deletion of one hyperplane at a time with the restriction certified
/// recursively. Results for canonical restrictions are memoized.
pub fn inductively_free(arr: &Arrangement, budget: Budget) -> Verdict<InductionTable> {
    let mut search = IfSearch::new(budget);
    let mut u = Universe::new(arr);
    match search.search(&mut u, arr.all()) {
        Err(Exhausted) => Verdict::Unknown,
        Ok(None) => Verdict::No,
        Ok(Some((rows, exps))) => Verdict::Yes(InductionTable { base: None, rows: rows.to_vec(), exponents: exps }),
    }
}

/// Builds a table for `arr` from a table of the localization at a modular
/// coatom `x`, adding the remaining hyperplanes in index order.
pub fn lift_induction(
    arr: &Arrangement,
    x: Mask,
    base: &InductionTable,
    budget: Budget,
) -> Result<InductionTable> {
    let r = arr.rank();
    if !arr.is_flat(x) || arr.rank_of(x) + 1 != r {
        return reject("lifting flat is not a coatom");
    }
    if !arr.is_modular_coatom(arr.all(), x, &arr.pair_closures()) {
        return reject("lifting flat is not modular");
    }
    let canon = arr.canonical(x);
    let base_exps = pad(&verify_induction(&canon.arr, base)?, arr.dim());
    let mut search = IfSearch::new(budget);
    let exhausted = || Error::BudgetExhausted { what: "search nodes", limit: budget.nodes };
    let done = search
        .extend(arr, x, &[], base_exps, arr.all() - x)
        .map_err(|_| exhausted())?;
    let Some((rows, exps)) = done else {
        return reject("a restriction could not be certified");
    };
    Ok(InductionTable {
        base: Some(InductionBase { hyperplanes: x.to_vec(), table: Arc::new(base.clone()) }),
        rows: rows.to_vec(),
        exponents: exps,
    })
}

/// Replays an induction table; returns the certified exponents (length `dim`).
pub fn verify_induction(arr: &Arrangement, table: &InductionTable) -> Result<Vec<usize>> {
    let dim = arr.dim();
    let (mut cur, mut exps) = match &table.base {
        None => (Mask::EMPTY, vec![0; dim]),
        Some(b) => {
            if b.hyperplanes.iter().any(|&i| i >= arr.len()) {
                return reject("base hyperplane out of range");
            }
            let m = Mask::from_indices(b.hyperplanes.iter().copied());
            let canon = arr.canonical(m);
            (m, pad(&verify_induction(&canon.arr, &b.table)?, dim))
        }
    };
    for (k, row) in table.rows.iter().enumerate() {
        let h = row.hyperplane;
        if h >= arr.len() || cur.contains(h) {
            return reject(format!("row {}: hyperplane {} is not new", k, h));
        }
        if sorted(row.exponents_before.clone()) != exps {
            return reject(format!("row {}: exponents before do not match the previous row", k));
        }
        cur.insert(h);
        let res = arr.restriction_within(cur, h);
        let canon = res.arr.canonical(res.arr.all());
        let sub = pad(&verify_induction(&canon.arr, &row.restriction)?, dim - 1);
        if sorted(row.restriction_exponents.clone()) != sub {
            return reject(format!("row {}: restriction exponents {:?} but certified {:?}", k, row.restriction_exponents, sub));
        }
        let diff = multiset_minus(&exps, &sub);
        let Some(&[c]) = diff.as_deref() else {
            return reject(format!("row {}: restriction exponents are not contained in the deletion's", k));
        };
        let mut after = sub.clone();
        after.push(c + 1);
        let after = sorted(after);
        if sorted(row.exponents_after.clone()) != after {
            return reject(format!("row {}: exponents after should be {:?}", k, after));
        }
        exps = after;
    }
    if cur != arr.all() {
        return reject("table does not add every hyperplane");
    }
    if sorted(table.exponents.clone()) != exps {
        return reject(format!("declared exponents {:?}, replay gives {:?}", table.exponents, exps));
    }
    Ok(exps)
}
