use super::Arrangement;
use crate::bits::Mask;
use crate::error::{Error, Result};
use crate::linalg::{dot, primitive, IVec};
use crate::poly::Poly;
use std::collections::HashMap;

pub const DEFAULT_FLAT_BUDGET: usize = 1_000_000;

/// Intersection lattice, with flats stored as the hyperplanes containing them.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub dim: usize,
    pub flats: Vec<Mask>,
    pub rank: Vec<usize>,
    /// Flat indices grouped by rank.
    pub levels: Vec<Vec<usize>>,
    pub mobius: Vec<i64>,
    lower_covers: Vec<Vec<usize>>,
    index: HashMap<Mask, usize>,
}

impl Lattice {
    pub(super) fn build(arr: &Arrangement, within: Mask, budget: usize) -> Result<Lattice> {
        let dim = arr.dim();
        let identity: Vec<IVec> = (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v
            })
            .collect();
        let mut lat = Lattice {
            dim,
            flats: vec![Mask::EMPTY],
            rank: vec![0],
            levels: vec![vec![0]],
            mobius: Vec::new(),
            lower_covers: vec![Vec::new()],
            index: HashMap::from([(Mask::EMPTY, 0)]),
        };
        // Kernels (the flats as subspaces) for the current level only.
        let mut kernels: Vec<Vec<IVec>> = vec![identity];
        loop {
            let cur = lat.levels.last().unwrap().clone();
            let k = lat.levels.len() - 1;
            let mut next: Vec<usize> = Vec::new();
            let mut next_kernels: Vec<Vec<IVec>> = Vec::new();
            for (pos, &x) in cur.iter().enumerate() {
                let xs = lat.flats[x];
                let kx = &kernels[pos];
                let mut covered = xs;
                for h in (within - xs).iter() {
                    if covered.contains(h) {
                        continue;
                    }
                    let nh = arr.normal(h);
                    let c: Vec<i64> = kx.iter().map(|v| dot(nh, v)).collect();
                    let j0 = c.iter().position(|&v| v != 0).expect("hyperplane outside flat");
                    let ky: Vec<IVec> = (0..kx.len())
                        .filter(|&j| j != j0)
                        .map(|j| {
                            let v: IVec = kx[j]
                                .iter()
                                .zip(&kx[j0])
                                .map(|(a, b)| c[j0] * a - c[j] * b)
                                .collect();
                            primitive(&v)
                        })
                        .collect();
                    let mut ys = xs;
                    for g in (within - xs).iter() {
                        if ky.iter().all(|v| dot(arr.normal(g), v) == 0) {
                            ys.insert(g);
                        }
                    }
                    covered |= ys;
                    let y = match lat.index.get(&ys) {
                        Some(&y) => y,
                        None => {
                            if lat.flats.len() >= budget {
                                return Err(Error::BudgetExhausted { what: "flats", limit: budget });
                            }
                            let y = lat.flats.len();
                            lat.flats.push(ys);
                            lat.rank.push(k + 1);
                            lat.lower_covers.push(Vec::new());
                            lat.index.insert(ys, y);
                            next.push(y);
                            next_kernels.push(ky);
                            y
                        }
                    };
                    lat.lower_covers[y].push(x);
                }
            }
            if next.is_empty() {
                break;
            }
            lat.levels.push(next);
            kernels = next_kernels;
        }
        lat.compute_mobius();
        Ok(lat)
    }

    fn compute_mobius(&mut self) {
        let n = self.flats.len();
        let mut mu = vec![0i64; n];
        let mut stamp = vec![usize::MAX; n];
        let mut stack = Vec::new();
        mu[0] = 1;
        for y in 1..n {
            match self.rank[y] {
                1 => mu[y] = -1,
                2 => mu[y] = self.flats[y].len() as i64 - 1,
                _ => {
                    let mut sum = 0i64;
                    stack.clear();
                    stack.extend(self.lower_covers[y].iter().copied());
                    for &z in &self.lower_covers[y] {
                        stamp[z] = y;
                    }
                    while let Some(z) = stack.pop() {
                        sum += mu[z];
                        for &w in &self.lower_covers[z] {
                            if stamp[w] != y {
                                stamp[w] = y;
                                stack.push(w);
                            }
                        }
                    }
                    mu[y] = -sum;
                }
            }
        }
        self.mobius = mu;
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn top_rank(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn index_of(&self, m: Mask) -> Option<usize> {
        self.index.get(&m).copied()
    }

    pub fn flats_of_rank(&self, k: usize) -> impl Iterator<Item = Mask> + '_ {
        self.levels.get(k).into_iter().flatten().map(|&i| self.flats[i])
    }

    /// `sum mu(X) t^(dim X)`.
    pub fn char_poly(&self) -> Poly {
        let mut c = vec![0i64; self.dim + 1];
        for (i, &mu) in self.mobius.iter().enumerate() {
            c[self.dim - self.rank[i]] += mu;
        }
        Poly::new(c)
    }

    /// Zaslavsky's count `(-1)^dim chi(-1)`.
    pub fn region_count(&self) -> u64 {
        let v = self.char_poly().eval(-1);
        (if self.dim % 2 == 0 { v } else { -v }) as u64
    }

    /// Rank-equation test of modularity against every flat.
    pub fn is_modular(&self, arr: &Arrangement, x: Mask) -> bool {
        let Some(xi) = self.index_of(x) else { return false };
        let rx = self.rank[xi];
        self.flats.iter().enumerate().all(|(yi, &y)| {
            let join = arr.closure(x | y) & self.flats[self.levels.last().unwrap()[0]];
            let meet = x & y;
            let rj = arr.rank_of(join);
            let rm = self.index_of(meet).map(|i| self.rank[i]).unwrap_or_else(|| arr.rank_of(meet));
            rx + self.rank[yi] == rj + rm
        })
    }
}
