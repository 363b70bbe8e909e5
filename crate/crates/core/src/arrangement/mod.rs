//! Central hyperplane arrangements over the rationals with exact integer normals.
//!
//! Hyperplanes are addressed by index, and subarrangements by [`Mask`]s over
//! those indices, so localizations and deletions never copy normals.

mod lattice;

pub use lattice::{Lattice, DEFAULT_FLAT_BUDGET};

use crate::bits::{Mask, MAX_BITS};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, Echelon, IVec};
use crate::rootsys::RootSystem;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<IVec>,
}

/// A restriction `A^H` together with the map sending each other hyperplane
/// of the restricted subarrangement to its image.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub arr: Arrangement,
    /// `image[g]` for every `g` in the subarrangement except `H` itself.
    pub image: Vec<Option<usize>>,
}

/// The essentialized form of a subarrangement with normals sorted, used as
/// a memo key and as the coordinate system certificates refer to.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub arr: Arrangement,
    /// `source[i]` is the original index of canonical hyperplane `i`.
    pub source: Vec<usize>,
}

impl Canonical {
    /// Original index to canonical index.
    pub fn position(&self, original: usize) -> Option<usize> {
        self.source.iter().position(|&s| s == original)
    }

    pub fn to_canonical(&self, m: Mask) -> Mask {
        Mask::from_indices(
            self.source
                .iter()
                .enumerate()
                .filter(|(_, &s)| m.contains(s))
                .map(|(i, _)| i),
        )
    }

    pub fn to_original(&self, m: Mask) -> Mask {
        Mask::from_indices(m.iter().map(|i| self.source[i]))
    }
}

/// Irreducible factors (as hyperplane sets) and the dimension of the
/// empty factor left over when the arrangement is not essential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: Vec<Mask>,
    pub empty_dim: usize,
}

impl Decomposition {
    /// More than one factor once every line of the empty factor counts as one.
    pub fn is_reducible(&self) -> bool {
        self.factors.len() + self.empty_dim > 1
    }
}

impl Arrangement {
    /// Builds an arrangement; normals are made primitive and later normals
    /// parallel to earlier ones are dropped.
    pub fn new(dim: usize, normals: Vec<IVec>) -> Result<Arrangement> {
        let mut seen: HashMap<IVec, ()> = HashMap::new();
        let mut out = Vec::new();
        for n in normals {
            if n.len() != dim || linalg::is_zero(&n) {
                return Err(Error::BadNormal(n));
            }
            if seen.insert(linalg::normalize(&n), ()).is_none() {
                out.push(linalg::primitive(&n));
            }
        }
        if out.len() > MAX_BITS {
            return Err(Error::TooManyHyperplanes(out.len()));
        }
        Ok(Arrangement { dim, normals: out })
    }

    pub fn empty(dim: usize) -> Arrangement {
        Arrangement { dim, normals: Vec::new() }
    }

    /// One hyperplane per root in `roots`, in root-index order, written in
    /// the root system's chart of the span of the roots.
    pub fn from_roots(rs: &RootSystem, roots: Mask) -> Arrangement {
        Arrangement {
            dim: rs.rank(),
            normals: roots.iter().map(|r| rs.normal(r)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[IVec] {
        &self.normals
    }

    pub fn normal(&self, i: usize) -> &[i64] {
        &self.normals[i]
    }

    pub fn all(&self) -> Mask {
        Mask::full(self.len())
    }

    pub fn rank(&self) -> usize {
        self.rank_of(self.all())
    }

    pub fn rank_of(&self, m: Mask) -> usize {
        let mut e = Echelon::new();
        for i in m.iter() {
            e.insert(&self.normals[i]);
        }
        e.rank()
    }

    /// Hyperplanes whose normals lie in the span of those in `m`.
    pub fn closure(&self, m: Mask) -> Mask {
        let mut e = Echelon::new();
        for i in m.iter() {
            e.insert(&self.normals[i]);
        }
        let mut c = m;
        for (i, n) in self.normals.iter().enumerate() {
            if !c.contains(i) && e.contains(n) {
                c.insert(i);
            }
        }
        c
    }

    pub fn is_flat(&self, m: Mask) -> bool {
        self.closure(m) == m
    }

    pub fn sub(&self, m: Mask) -> Arrangement {
        Arrangement {
            dim: self.dim,
            normals: m.iter().map(|i| self.normals[i].clone()).collect(),
        }
    }

    /// `A^H` for the subarrangement `within` (which must contain `h`).
    pub fn restriction_within(&self, within: Mask, h: usize) -> Restriction {
        let basis = linalg::kernel(&[self.normals[h].as_slice()], self.dim);
        let mut index: HashMap<IVec, usize> = HashMap::new();
        let mut normals = Vec::new();
        let mut image = vec![None; self.len()];
        for g in within.iter() {
            if g == h {
                continue;
            }
            let v: IVec = basis.iter().map(|b| dot(&self.normals[g], b)).collect();
            let key = linalg::normalize(&v);
            let next = normals.len();
            let idx = *index.entry(key).or_insert_with(|| {
                normals.push(linalg::primitive(&v));
                next
            });
            image[g] = Some(idx);
        }
        Restriction { arr: Arrangement { dim: self.dim.saturating_sub(1), normals }, image }
    }

    pub fn restriction(&self, h: usize) -> Restriction {
        self.restriction_within(self.all(), h)
    }

    /// Essentialize the subarrangement `m`: keep the coordinates on which
    /// its normals project injectively, then sort the normalized normals.
    pub fn canonical(&self, m: Mask) -> Canonical {
        let rows: Vec<IVec> = m.iter().map(|i| self.normals[i].clone()).collect();
        let cols = linalg::pivot_columns(&rows);
        let mut items: Vec<(IVec, usize)> = m
            .iter()
            .map(|i| {
                let v: IVec = cols.iter().map(|&c| self.normals[i][c]).collect();
                (linalg::normalize(&v), i)
            })
            .collect();
        items.sort();
        Canonical {
            arr: Arrangement { dim: cols.len(), normals: items.iter().map(|x| x.0.clone()).collect() },
            source: items.iter().map(|x| x.1).collect(),
        }
    }

    /// Splits the subarrangement `m` into irreducible factors using the
    /// fundamental circuits of a greedy basis.
    pub fn decompose_within(&self, m: Mask) -> Decomposition {
        let idx: Vec<usize> = m.iter().collect();
        let vecs: Vec<IVec> = idx.iter().map(|&i| self.normals[i].clone()).collect();
        let (basis, circuits) = linalg::fundamental_circuits(&vecs);
        let mut parent: Vec<usize> = (0..idx.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for (k, c) in circuits.iter().enumerate() {
            if let Some(supp) = c {
                for &b in supp {
                    let (x, y) = (find(&mut parent, k), find(&mut parent, basis[b]));
                    parent[x] = y;
                }
            }
        }
        let mut groups: Vec<(usize, Mask)> = Vec::new();
        for (k, &h) in idx.iter().enumerate() {
            let r = find(&mut parent, k);
            match groups.iter_mut().find(|g| g.0 == r) {
                Some(g) => g.1.insert(h),
                None => groups.push((r, Mask::single(h))),
            }
        }
        let mut factors: Vec<Mask> = groups.into_iter().map(|g| g.1).collect();
        factors.sort();
        Decomposition { factors, empty_dim: self.dim - basis.len() }
    }

    pub fn decompose(&self) -> Decomposition {
        self.decompose_within(self.all())
    }

    /// `pairs[a * n + b]` is the rank-2 flat spanned by hyperplanes `a` and `b`.
    pub fn pair_closures(&self) -> Vec<Mask> {
        let n = self.len();
        let mut out = vec![Mask::EMPTY; n * n];
        for a in 0..n {
            for b in a + 1..n {
                let c = self.closure(Mask::single(a) | Mask::single(b));
                out[a * n + b] = c;
                out[b * n + a] = c;
            }
        }
        out
    }

    /// Pairwise test for a coatom `x` of the subarrangement `within`: every two
    /// hyperplanes outside `x` share a rank-2 flat with some hyperplane of `x`.
    pub fn is_modular_coatom(&self, within: Mask, x: Mask, pairs: &[Mask]) -> bool {
        let n = self.len();
        let out: Vec<usize> = (within - x).iter().collect();
        for (i, &a) in out.iter().enumerate() {
            for &b in &out[i + 1..] {
                if !pairs[a * n + b].intersects(x) {
                    return false;
                }
            }
        }
        true
    }

    pub fn lattice(&self, budget: usize) -> Result<Lattice> {
        Lattice::build(self, self.all(), budget)
    }

    pub fn lattice_within(&self, m: Mask, budget: usize) -> Result<Lattice> {
        Lattice::build(self, m, budget)
    }

    pub fn dump(&self) -> String {
        let mut s = format!("dim={}\n", self.dim);
        for n in &self.normals {
            let parts: Vec<String> = n.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", parts.join(" "));
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<Arrangement> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().unwrap_or("");
        let dim: usize = head
            .strip_prefix("dim=")
            .and_then(|d| d.trim().parse().ok())
            .ok_or_else(|| Error::BadNormal(Vec::new()))?;
        let mut normals = Vec::new();
        for l in lines {
            let v: std::result::Result<IVec, _> = l.split_whitespace().map(str::parse).collect();
            normals.push(v.map_err(|_| Error::BadNormal(Vec::new()))?);
        }
        Arrangement::new(dim, normals)
    }
}
