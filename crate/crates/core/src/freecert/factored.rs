use super::{
    pad, reject, sorted, Budget, Exhausted, FactorBase, FactorRow, FactorizationTable, SearchResult,
    Verdict,
};
use crate::arrangement::{Arrangement, Lattice};
use crate::bits::Mask;
use crate::error::Result;
use crate::linalg::Echelon;
use std::collections::HashMap;
use std::sync::Arc;

type Blocks = Vec<Vec<usize>>;

/// A partition with the rows that build it, or `None` when none exists.
type Found = Option<(Vec<Mask>, Arc<Vec<FactorRow>>)>;

/// Sorted blocks of sorted indices, empty blocks dropped.
fn normal_form(blocks: &[Mask]) -> Blocks {
    let mut v: Blocks = blocks.iter().filter(|b| !b.is_empty()).map(|b| b.to_vec()).collect();
    v.sort();
    v
}

fn to_masks(blocks: &[Vec<usize>]) -> Vec<Mask> {
    blocks.iter().map(|b| Mask::from_indices(b.iter().copied())).collect()
}

fn exponents_of(blocks: &[Mask], dim: usize) -> Vec<usize> {
    pad(&sorted(blocks.iter().map(|b| b.len()).filter(|&n| n > 0).collect()), dim)
}

/// The image partition on `A^H` when `h` (in block `b`) is removed, provided
/// the restriction map is a bijection from the hyperplanes outside block `b`.
fn restricted_partition(arr: &Arrangement, s: Mask, blocks: &[Mask], b: usize, h: usize) -> Option<(Arrangement, Blocks)> {
    let res = arr.restriction_within(s, h);
    let others = s - blocks[b];
    let mut hit = Mask::EMPTY;
    for g in others.iter() {
        let i = res.image[g].expect("restriction image");
        if hit.contains(i) {
            return None;
        }
        hit.insert(i);
    }
    if hit.len() != res.arr.len() {
        return None;
    }
    let canon = res.arr.canonical(res.arr.all());
    let images: Vec<Mask> = blocks
        .iter()
        .enumerate()
        .filter(|&(c, _)| c != b)
        .map(|(_, blk)| {
            let m = Mask::from_indices((*blk & s).iter().map(|g| res.image[g].unwrap()));
            canon.to_canonical(m)
        })
        .collect();
    Some((canon.arr, normal_form(&images)))
}

struct Run<'a> {
    arr: &'a Arrangement,
    blocks: Vec<Mask>,
    pairs: Vec<Mask>,
    memo: HashMap<Mask, Option<Arc<Vec<FactorRow>>>>,
}

struct IfacSearch {
    budget: Budget,
    nodes: usize,
    canonical: HashMap<(Arrangement, Blocks), Option<Arc<FactorizationTable>>>,
}

impl IfacSearch {
    fn new(budget: Budget) -> Self {
        IfacSearch { budget, nodes: 0, canonical: HashMap::new() }
    }

    fn tick(&mut self) -> SearchResult<()> {
        self.nodes += 1;
        if self.nodes > self.budget.nodes {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    fn canonical_table(&mut self, arr: &Arrangement, part: Blocks) -> SearchResult<Option<Arc<FactorizationTable>>> {
        let key = (arr.clone(), part);
        if let Some(r) = self.canonical.get(&key) {
            return Ok(r.clone());
        }
        let blocks = to_masks(&key.1);
        let mut run = Run { arr, blocks: blocks.clone(), pairs: arr.pair_closures(), memo: HashMap::new() };
        let out = self.rows(&mut run, arr.all())?.map(|rows| {
            Arc::new(FactorizationTable {
                base: None,
                rows: rows.to_vec(),
                partition: key.1.clone(),
                exponents: exponents_of(&blocks, arr.dim()),
            })
        });
        self.canonical.insert(key, out.clone());
        Ok(out)
    }

    /// Rows building the subarrangement `s` from empty under the run's partition.
    fn rows(&mut self, run: &mut Run, s: Mask) -> SearchResult<Option<Arc<Vec<FactorRow>>>> {
        if let Some(r) = run.memo.get(&s) {
            return Ok(r.clone());
        }
        self.tick()?;
        let found = self.rows_uncached(run, s)?;
        run.memo.insert(s, found.clone());
        Ok(found)
    }

    fn rows_uncached(&mut self, run: &mut Run, s: Mask) -> SearchResult<Option<Arc<Vec<FactorRow>>>> {
        if s.is_empty() {
            return Ok(Some(Arc::new(Vec::new())));
        }
        let arr = run.arr;
        let rank = arr.rank_of(s);
        // Blocks whose complement is a modular coatom go first.
        let mut order: Vec<(bool, usize)> = (0..run.blocks.len())
            .filter(|&b| run.blocks[b].intersects(s))
            .map(|b| {
                let x = s - run.blocks[b];
                let good = arr.rank_of(x) + 1 == rank
                    && arr.closure(x) & s == x
                    && arr.is_modular_coatom(s, x, &run.pairs);
                (!good, b)
            })
            .collect();
        order.sort();
        for (_, b) in order {
            let hs: Vec<usize> = (run.blocks[b] & s).iter().collect();
            for &h in hs.iter().rev() {
                let Some((res, part)) = restricted_partition(arr, s, &run.blocks, b, h) else {
                    continue;
                };
                let Some(sub) = self.canonical_table(&res, part.clone())? else {
                    continue;
                };
                let Some(prev) = self.rows(run, s - Mask::single(h))? else {
                    continue;
                };
                let mut rows = prev.to_vec();
                rows.push(FactorRow {
                    hyperplane: h,
                    block: b,
                    bijective: true,
                    restriction_partition: part,
                    restriction: sub,
                });
                return Ok(Some(Arc::new(rows)));
            }
        }
        Ok(None)
    }

    fn check(&mut self, arr: &Arrangement, blocks: &[Mask]) -> SearchResult<Option<Arc<Vec<FactorRow>>>> {
        let all = blocks.iter().fold(Mask::EMPTY, |a, &b| a | b);
        let mut run = Run { arr, blocks: blocks.to_vec(), pairs: arr.pair_closures(), memo: HashMap::new() };
        self.rows(&mut run, all)
    }

    /// A partition of the subarrangement `s` with its table: lift through
    /// modular coatoms when possible, otherwise try every nice partition.
    fn find(
        &mut self,
        arr: &Arrangement,
        s: Mask,
        memo: &mut HashMap<Mask, Found>,
    ) -> SearchResult<Found> {
        if let Some(r) = memo.get(&s) {
            return Ok(r.clone());
        }
        self.tick()?;
        let found = self.find_uncached(arr, s, memo)?;
        memo.insert(s, found.clone());
        Ok(found)
    }

    fn find_uncached(
        &mut self,
        arr: &Arrangement,
        s: Mask,
        memo: &mut HashMap<Mask, Found>,
    ) -> SearchResult<Found> {
        if s.is_empty() {
            return Ok(Some((Vec::new(), Arc::new(Vec::new()))));
        }
        let lat = arr.lattice_within(s, self.budget.flats).map_err(|_| Exhausted)?;
        let Some(roots) = lat.char_poly().nonnegative_integer_roots() else {
            return Ok(None);
        };
        let r = lat.top_rank();
        if r >= 2 {
            let pairs = arr.pair_closures();
            let coatoms: Vec<Mask> = lat.flats_of_rank(r - 1).collect();
            for x in coatoms {
                if !arr.is_modular_coatom(s, x, &pairs) {
                    continue;
                }
                if let Some((mut px, _)) = self.find(arr, x, memo)? {
                    px.push(s - x);
                    if let Some(rows) = self.check(arr, &px)? {
                        return Ok(Some((px, rows)));
                    }
                }
            }
        }
        let max_block = roots.iter().copied().max().unwrap_or(0) as usize;
        let mut candidates = Vec::new();
        enumerate_nice(arr, s, &lat, max_block, self, &mut candidates)?;
        for p in candidates {
            if let Some(rows) = self.check(arr, &p)? {
                return Ok(Some((p, rows)));
            }
        }
        Ok(None)
    }
}

/// Every nice partition of the subarrangement `s` into `rank(s)` blocks,
/// found by assigning hyperplanes in index order and pruning dependent
/// transversals and oversized blocks.
fn enumerate_nice(
    arr: &Arrangement,
    s: Mask,
    lat: &Lattice,
    max_block: usize,
    search: &mut IfacSearch,
    out: &mut Vec<Vec<Mask>>,
) -> SearchResult<()> {
    let hs: Vec<usize> = s.iter().collect();
    let r = lat.top_rank();
    let flats: Vec<Mask> = lat.flats.iter().copied().filter(|f| !f.is_empty()).collect();
    let mut blocks: Vec<Mask> = Vec::new();
    fn go(
        k: usize,
        hs: &[usize],
        r: usize,
        max_block: usize,
        arr: &Arrangement,
        flats: &[Mask],
        blocks: &mut Vec<Mask>,
        search: &mut IfacSearch,
        out: &mut Vec<Vec<Mask>>,
    ) -> SearchResult<()> {
        search.tick()?;
        if k == hs.len() {
            if blocks.len() == r && singleton_condition(blocks, flats) {
                out.push(blocks.clone());
            }
            return Ok(());
        }
        if blocks.len() + (hs.len() - k) < r {
            return Ok(());
        }
        let h = hs[k];
        let options = if blocks.len() < r { blocks.len() + 1 } else { blocks.len() };
        for j in 0..options {
            if j < blocks.len() && blocks[j].len() >= max_block {
                continue;
            }
            if !transversals_independent(arr, blocks, j, h) {
                continue;
            }
            if j == blocks.len() {
                blocks.push(Mask::single(h));
                go(k + 1, hs, r, max_block, arr, flats, blocks, search, out)?;
                blocks.pop();
            } else {
                blocks[j].insert(h);
                go(k + 1, hs, r, max_block, arr, flats, blocks, search, out)?;
                blocks[j].remove(h);
            }
        }
        Ok(())
    }
    go(0, &hs, r, max_block, arr, &flats, &mut blocks, search, out)
}

/// Whether `h`, placed in block `j`, together with one hyperplane from each
/// other block is always independent.
fn transversals_independent(arr: &Arrangement, blocks: &[Mask], j: usize, h: usize) -> bool {
    let others: Vec<Vec<usize>> = blocks
        .iter()
        .enumerate()
        .filter(|&(i, b)| i != j && !b.is_empty())
        .map(|(_, b)| b.to_vec())
        .collect();
    let mut e = Echelon::new();
    e.insert(arr.normal(h));
    fn rec(arr: &Arrangement, others: &[Vec<usize>], k: usize, e: &Echelon) -> bool {
        if k == others.len() {
            return true;
        }
        others[k].iter().all(|&g| {
            let mut f = e.clone();
            f.insert(arr.normal(g)) && rec(arr, others, k + 1, &f)
        })
    }
    rec(arr, &others, 0, &e)
}

fn singleton_condition(blocks: &[Mask], flats: &[Mask]) -> bool {
    flats.iter().all(|&x| blocks.iter().any(|&b| (b & x).len() == 1))
}

fn is_independent(arr: &Arrangement, blocks: &[Mask]) -> bool {
    let b: Vec<Vec<usize>> = blocks.iter().map(|m| m.to_vec()).collect();
    fn rec(arr: &Arrangement, b: &[Vec<usize>], k: usize, e: &Echelon) -> bool {
        if k == b.len() {
            return true;
        }
        b[k].iter().all(|&g| {
            let mut f = e.clone();
            f.insert(arr.normal(g)) && rec(arr, b, k + 1, &f)
        })
    }
    rec(arr, &b, 0, &Echelon::new())
}

/// Independence of every transversal, plus a singleton block in the induced
/// partition of every nonempty flat.
pub fn is_nice_partition(arr: &Arrangement, partition: &[Vec<usize>], budget: Budget) -> Result<bool> {
    let blocks = to_masks(partition);
    let all = blocks.iter().fold(Mask::EMPTY, |a, &b| a | b);
    if all != arr.all() || blocks.iter().map(|b| b.len()).sum::<usize>() != arr.len() {
        return Ok(false);
    }
    if blocks.iter().any(|b| b.is_empty()) || !is_independent(arr, &blocks) {
        return Ok(false);
    }
    let lat = arr.lattice(budget.flats)?;
    let flats: Vec<Mask> = lat.flats.iter().copied().filter(|f| !f.is_empty()).collect();
    Ok(singleton_condition(&blocks, &flats))
}

/// All nice partitions of the arrangement, by exhaustive enumeration.
pub fn nice_partitions(arr: &Arrangement, budget: Budget) -> Verdict<Vec<Blocks>> {
    let Ok(lat) = arr.lattice(budget.flats) else {
        return Verdict::Unknown;
    };
    let mut search = IfacSearch::new(budget);
    let mut out = Vec::new();
    match enumerate_nice(arr, arr.all(), &lat, arr.len().max(1), &mut search, &mut out) {
        Err(Exhausted) => Verdict::Unknown,
        Ok(()) if out.is_empty() => Verdict::No,
        Ok(()) => Verdict::Yes(out.iter().map(|p| normal_form(p)).collect()),
    }
}

fn table_for(arr: &Arrangement, blocks: &[Mask], rows: &[FactorRow]) -> FactorizationTable {
    FactorizationTable {
        base: None,
        rows: rows.to_vec(),
        partition: blocks.iter().map(|b| b.to_vec()).collect(),
        exponents: exponents_of(blocks, arr.dim()),
    }
}

/// Searches for a partition and a factorization table.
pub fn inductively_factored(arr: &Arrangement, budget: Budget) -> Verdict<FactorizationTable> {
    let mut search = IfacSearch::new(budget);
    let mut memo = HashMap::new();
    match search.find(arr, arr.all(), &mut memo) {
        Err(Exhausted) => Verdict::Unknown,
        Ok(None) => Verdict::No,
        Ok(Some((blocks, rows))) => Verdict::Yes(table_for(arr, &blocks, &rows)),
    }
}

/// Decides whether the given partition is inductively factored.
pub fn inductively_factored_with(arr: &Arrangement, partition: &[Vec<usize>], budget: Budget) -> Verdict<FactorizationTable> {
    let blocks = to_masks(partition);
    let all = blocks.iter().fold(Mask::EMPTY, |a, &b| a | b);
    if all != arr.all() || blocks.iter().map(|b| b.len()).sum::<usize>() != arr.len() {
        return Verdict::No;
    }
    let mut search = IfacSearch::new(budget);
    match search.check(arr, &blocks) {
        Err(Exhausted) => Verdict::Unknown,
        Ok(None) => Verdict::No,
        Ok(Some(rows)) => Verdict::Yes(table_for(arr, &blocks, &rows)),
    }
}

/// Replays a factorization table; returns the certified exponents.
pub fn verify_factored(arr: &Arrangement, table: &FactorizationTable) -> Result<Vec<usize>> {
    let nblocks = table.partition.len();
    let mut label: Vec<Option<usize>> = vec![None; arr.len()];
    let mut cur = Mask::EMPTY;
    if let Some(FactorBase { hyperplanes, blocks, table: sub }) = &table.base {
        if hyperplanes.len() != blocks.len() {
            return reject("base blocks do not align with base hyperplanes");
        }
        for (&h, &b) in hyperplanes.iter().zip(blocks) {
            if h >= arr.len() || b >= nblocks || label[h].is_some() {
                return reject("malformed base");
            }
            label[h] = Some(b);
            cur.insert(h);
        }
        let canon = arr.canonical(cur);
        let part: Vec<Mask> = (0..nblocks)
            .map(|b| canon.to_canonical(Mask::from_indices(hyperplanes.iter().copied().filter(|&h| label[h] == Some(b)))))
            .collect();
        if normal_form(&part) != sub.partition {
            return reject("base table partition does not match the base blocks");
        }
        verify_factored(&canon.arr, sub)?;
    }
    for (k, row) in table.rows.iter().enumerate() {
        let h = row.hyperplane;
        if h >= arr.len() || cur.contains(h) || row.block >= nblocks {
            return reject(format!("row {}: bad hyperplane or block", k));
        }
        cur.insert(h);
        label[h] = Some(row.block);
        let blocks: Vec<Mask> = (0..nblocks)
            .map(|b| Mask::from_indices(cur.iter().filter(|&g| label[g] == Some(b))))
            .collect();
        let Some((res, part)) = restricted_partition(arr, cur, &blocks, row.block, h) else {
            return reject(format!("row {}: restriction map is not bijective", k));
        };
        if !row.bijective {
            return reject(format!("row {}: recorded as not bijective", k));
        }
        if part != row.restriction_partition || row.restriction.partition != part {
            return reject(format!("row {}: restriction partition mismatch", k));
        }
        verify_factored(&res, &row.restriction)?;
    }
    if cur != arr.all() {
        return reject("table does not add every hyperplane");
    }
    let blocks: Vec<Mask> = (0..nblocks)
        .map(|b| Mask::from_indices(cur.iter().filter(|&g| label[g] == Some(b))))
        .collect();
    if blocks.iter().map(|b| b.to_vec()).collect::<Blocks>() != table.partition {
        return reject("final partition differs from the declared one");
    }
    let e = exponents_of(&blocks, arr.dim());
    if sorted(table.exponents.clone()) != e {
        return reject(format!("declared exponents {:?}, partition gives {:?}", table.exponents, e));
    }
    Ok(e)
}
