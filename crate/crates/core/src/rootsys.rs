//! Irreducible crystallographic root systems in Bourbaki coordinates.
//!
//! Simple roots follow Bourbaki's numbering. F4 and the E-series have
//! half-integer coordinates, so their coordinates are stored doubled.
//! Positive roots are indexed by `(height, coordinates)` ascending; every
//! bitset over roots in this crate uses that index.

use crate::bits::{Mask, MAX_BITS};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, Echelon, IVec};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        let t = CartanType { family, rank };
        if !ok {
            return Err(Error::UnknownType(t.to_string()));
        }
        let n = t.num_positive_roots();
        if n > MAX_BITS {
            return Err(Error::TooManyRoots(t.to_string(), n));
        }
        Ok(t)
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnknownType(s.to_string());
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(fam, rank).map_err(|e| match e {
            Error::UnknownType(_) => bad(),
            e => e,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub index: usize,
    /// Ambient Bourbaki coordinates, multiplied by the system's scale factor.
    pub coords: IVec,
    pub simple_coeffs: Vec<u8>,
    pub height: usize,
}

/// A standard parabolic subsystem: the roots supported on a set of simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parabolic {
    /// Zero-based simple root indices.
    pub simple: Vec<usize>,
    pub mask: Mask,
}

/// An element of the Weyl group, recorded by its action on positive roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// `perm[j]` is `w(root j)`: `k >= 0` for root `k`, `-(k+1)` for its negative.
    pub perm: Vec<i16>,
    /// Positive roots sent to negative roots.
    pub inversions: Mask,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.inversions.len()
    }
}

#[derive(Debug)]
pub struct RootSystem {
    pub ty: CartanType,
    pub scale: i64,
    pub ambient_dim: usize,
    simple_coords: Vec<IVec>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    simple_index: Vec<usize>,
    by_coeffs: HashMap<Vec<u8>, usize>,
    /// `plus_simple[r][i]`: index of `root r + alpha_i` if that is a root.
    plus_simple: Vec<Vec<Option<usize>>>,
    /// `up[r]`: all roots dominating root `r` (reflexive).
    up: Vec<Mask>,
    /// `reflect[i][r]`: index of `s_i(root r)`, or `None` when `r = alpha_i`.
    reflect: Vec<Vec<Option<usize>>>,
    chart: Vec<usize>,
    planes: OnceLock<Vec<Mask>>,
}

fn bourbaki_simple_roots(t: CartanType) -> (i64, usize, Vec<IVec>) {
    let n = t.rank;
    let e = |dim: usize, i: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v
    };
    let diff = |dim: usize, i: usize, j: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v[j] = -1;
        v
    };
    match t.family {
        Family::A => (1, n + 1, (0..n).map(|i| diff(n + 1, i, i + 1)).collect()),
        Family::B => {
            let mut s: Vec<IVec> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            s.push(e(n, n - 1));
            (1, n, s)
        }
        Family::C => {
            let mut s: Vec<IVec> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = e(n, n - 1);
            last[n - 1] = 2;
            s.push(last);
            (1, n, s)
        }
        Family::D => {
            let mut s: Vec<IVec> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![0; n];
            last[n - 2] = 1;
            last[n - 1] = 1;
            s.push(last);
            (1, n, s)
        }
        Family::G => (1, 3, vec![vec![1, -1, 0], vec![-2, 1, 1]]),
        Family::F => (
            2,
            4,
            vec![
                vec![0, 2, -2, 0],
                vec![0, 0, 2, -2],
                vec![0, 0, 0, 2],
                vec![1, -1, -1, -1],
            ],
        ),
        Family::E => {
            let mut s = vec![
                vec![1, -1, -1, -1, -1, -1, -1, 1],
                vec![2, 2, 0, 0, 0, 0, 0, 0],
            ];
            for i in 0..6 {
                // alpha_{i+3} = e_{i+2} - e_{i+1} (1-based e), doubled
                let mut v = vec![0i64; 8];
                v[i + 1] = 2;
                v[i] = -2;
                s.push(v);
            }
            s.truncate(n);
            (2, 8, s)
        }
    }
}

impl RootSystem {
    pub fn new(ty: CartanType) -> RootSystem {
        let (scale, ambient_dim, simple_coords) = bourbaki_simple_roots(ty);
        let n = ty.rank;
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        2 * dot(&simple_coords[i], &simple_coords[j])
                            / dot(&simple_coords[j], &simple_coords[j])
                    })
                    .collect()
            })
            .collect();

        // Close the simple roots under positive-preserving simple reflections.
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut c = vec![0i64; n];
            c[i] = 1;
            seen.insert(c.clone());
            queue.push(c);
        }
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head].clone();
            head += 1;
            for j in 0..n {
                let k: i64 = (0..n).map(|i| c[i] * cartan[i][j]).sum();
                let mut d = c.clone();
                d[j] -= k;
                if d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0) && seen.insert(d.clone()) {
                    queue.push(d);
                }
            }
        }
        let mut roots: Vec<Root> = queue
            .into_iter()
            .map(|c| {
                let mut coords = vec![0i64; ambient_dim];
                for (i, &ci) in c.iter().enumerate() {
                    for (x, s) in coords.iter_mut().zip(&simple_coords[i]) {
                        *x += ci * s;
                    }
                }
                Root {
                    index: 0,
                    height: c.iter().sum::<i64>() as usize,
                    simple_coeffs: c.iter().map(|&x| x as u8).collect(),
                    coords,
                }
            })
            .collect();
        roots.sort_by(|a, b| (a.height, &a.coords).cmp(&(b.height, &b.coords)));
        assert_eq!(roots.len(), ty.num_positive_roots());
        for (i, r) in roots.iter_mut().enumerate() {
            r.index = i;
        }
        let by_coeffs: HashMap<Vec<u8>, usize> =
            roots.iter().map(|r| (r.simple_coeffs.clone(), r.index)).collect();
        let simple_index: Vec<usize> = (0..n)
            .map(|i| {
                let mut c = vec![0u8; n];
                c[i] = 1;
                by_coeffs[&c]
            })
            .collect();
        let plus_simple: Vec<Vec<Option<usize>>> = roots
            .iter()
            .map(|r| {
                (0..n)
                    .map(|i| {
                        let mut c = r.simple_coeffs.clone();
                        c[i] += 1;
                        by_coeffs.get(&c).copied()
                    })
                    .collect()
            })
            .collect();
        let mut up = vec![Mask::EMPTY; roots.len()];
        for r in (0..roots.len()).rev() {
            let mut m = Mask::single(r);
            for t in plus_simple[r].iter().flatten() {
                m |= up[*t];
            }
            up[r] = m;
        }
        let reflect: Vec<Vec<Option<usize>>> = (0..n)
            .map(|j| {
                roots
                    .iter()
                    .map(|r| {
                        let k: i64 = (0..n).map(|i| r.simple_coeffs[i] as i64 * cartan[i][j]).sum();
                        let mut c: Vec<i64> = r.simple_coeffs.iter().map(|&x| x as i64).collect();
                        c[j] -= k;
                        if c.iter().any(|&x| x < 0) {
                            None
                        } else {
                            let c8: Vec<u8> = c.iter().map(|&x| x as u8).collect();
                            Some(by_coeffs[&c8])
                        }
                    })
                    .collect()
            })
            .collect();
        let chart = linalg::pivot_columns(&simple_coords);
        RootSystem {
            ty,
            scale,
            ambient_dim,
            simple_coords,
            cartan,
            roots,
            simple_index,
            by_coeffs,
            plus_simple,
            up,
            reflect,
            chart,
            planes: OnceLock::new(),
        }
    }

    pub fn from_name(s: &str) -> Result<RootSystem> {
        Ok(RootSystem::new(s.parse()?))
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn all_mask(&self) -> Mask {
        Mask::full(self.roots.len())
    }

    pub fn simple_roots(&self) -> &[usize] {
        &self.simple_index
    }

    pub fn simple_coords(&self) -> &[IVec] {
        &self.simple_coords
    }

    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn highest_root(&self) -> usize {
        self.roots.len() - 1
    }

    pub fn coxeter_number(&self) -> usize {
        self.roots[self.highest_root()].height + 1
    }

    pub fn find_by_coeffs(&self, c: &[u8]) -> Option<usize> {
        self.by_coeffs.get(c).copied()
    }

    pub fn find_by_coords(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.coords == coords)
    }

    /// Index of `root r + alpha_i`, when it is a positive root.
    pub fn add_simple(&self, r: usize, i: usize) -> Option<usize> {
        self.plus_simple[r][i]
    }

    /// Roots `beta` with `root r <= beta` in the dominance order.
    pub fn up_set(&self, r: usize) -> Mask {
        self.up[r]
    }

    pub fn dominates(&self, lower: usize, upper: usize) -> bool {
        self.up[lower].contains(upper)
    }

    /// Index of `s_i(root r)`, or `None` when `r` is the simple root `alpha_i`.
    pub fn reflect_simple(&self, i: usize, r: usize) -> Option<usize> {
        self.reflect[i][r]
    }

    /// Roots of each height `1, 2, ..`; index `k` holds height `k + 1`.
    pub fn height_partition(&self) -> Vec<usize> {
        let mut p = vec![0usize; self.coxeter_number() - 1];
        for r in &self.roots {
            p[r.height - 1] += 1;
        }
        p
    }

    /// Exponents, ascending: the conjugate of the height partition.
    pub fn weyl_exponents(&self) -> Vec<usize> {
        let mut e = conjugate_partition(&self.height_partition());
        e.sort_unstable();
        e
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_exponents().iter().map(|&e| e as u128 + 1).product()
    }

    pub fn parabolic(&self, simple: &[usize]) -> Parabolic {
        let mut s = simple.to_vec();
        s.sort_unstable();
        s.dedup();
        let mask = Mask::from_indices(self.roots.iter().filter_map(|r| {
            let inside = r
                .simple_coeffs
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || s.contains(&i));
            inside.then_some(r.index)
        }));
        Parabolic { simple: s, mask }
    }

    /// The maximal standard parabolic obtained by deleting simple root `drop`.
    pub fn maximal_parabolic(&self, drop: usize) -> Parabolic {
        let s: Vec<usize> = (0..self.rank()).filter(|&i| i != drop).collect();
        self.parabolic(&s)
    }

    /// Cartan type name of the subdiagram on `simple`, e.g. `A2xA1`.
    pub fn subdiagram_type(&self, simple: &[usize]) -> String {
        let mut left: Vec<usize> = simple.to_vec();
        left.sort_unstable();
        let mut parts: Vec<(usize, String)> = Vec::new();
        while let Some(&start) = left.first() {
            let mut comp = vec![start];
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for &u in simple {
                    if self.cartan[v][u] != 0 && u != v && !comp.contains(&u) {
                        comp.push(u);
                    }
                }
                k += 1;
            }
            left.retain(|x| !comp.contains(x));
            let name = self.component_name(&comp);
            parts.push((comp.len(), name));
        }
        parts.sort_by(|a, b| b.cmp(a));
        if parts.is_empty() {
            return "0".to_string();
        }
        parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join("x")
    }

    fn component_name(&self, comp: &[usize]) -> String {
        let k = comp.len();
        let mut max_bond = 1;
        let mut degree = vec![0usize; k];
        for (a, &i) in comp.iter().enumerate() {
            for &j in comp {
                if i != j && self.cartan[i][j] != 0 {
                    degree[a] += 1;
                    max_bond = max_bond.max(self.cartan[i][j] * self.cartan[j][i]);
                }
            }
        }
        let len = |i: usize| dot(&self.simple_coords[i], &self.simple_coords[i]);
        let longest = comp.iter().map(|&i| len(i)).max().unwrap_or(0);
        let n_long = comp.iter().filter(|&&i| len(i) == longest).count();
        match max_bond {
            3 => "G2".to_string(),
            2 => {
                if k == 2 || k - n_long == 1 {
                    format!("B{}", k)
                } else if n_long == 1 {
                    format!("C{}", k)
                } else {
                    "F4".to_string()
                }
            }
            _ => {
                let Some(branch) = degree.iter().position(|&d| d == 3) else {
                    return format!("A{}", k);
                };
                // Arm lengths from the branch node.
                let b = comp[branch];
                let mut arms: Vec<usize> = Vec::new();
                for &start in comp {
                    if start == b || self.cartan[b][start] == 0 {
                        continue;
                    }
                    let (mut prev, mut cur, mut l) = (b, start, 1);
                    loop {
                        let next = comp
                            .iter()
                            .copied()
                            .find(|&x| x != prev && x != cur && self.cartan[cur][x] != 0);
                        match next {
                            Some(x) => {
                                prev = cur;
                                cur = x;
                                l += 1;
                            }
                            None => break,
                        }
                    }
                    arms.push(l);
                }
                arms.sort_unstable();
                if arms[1] == 1 {
                    format!("D{}", k)
                } else {
                    format!("E{}", k)
                }
            }
        }
    }

    /// Columns of the ambient space on which the root span projects
    /// isomorphically; hyperplane normals are written in these coordinates.
    pub fn chart(&self) -> &[usize] {
        &self.chart
    }

    /// Primitive normal of the reflecting hyperplane of root `r`, in the chart.
    pub fn normal(&self, r: usize) -> IVec {
        let c = &self.roots[r].coords;
        linalg::primitive(&self.chart.iter().map(|&j| c[j]).collect::<Vec<_>>())
    }

    /// `planes(a)[b]`: roots in the linear span of roots `a` and `b`.
    pub fn span_pairs(&self) -> &[Mask] {
        self.planes.get_or_init(|| {
            let m = self.roots.len();
            let mut out = vec![Mask::EMPTY; m * m];
            for a in 0..m {
                for b in a + 1..m {
                    let mut e = Echelon::new();
                    e.insert(&self.roots[a].coords);
                    e.insert(&self.roots[b].coords);
                    let mut s = Mask::EMPTY;
                    for r in &self.roots {
                        if e.contains(&r.coords) {
                            s.insert(r.index);
                        }
                    }
                    out[a * m + b] = s;
                    out[b * m + a] = s;
                }
            }
            out
        })
    }

    pub fn span_of_pair(&self, a: usize, b: usize) -> Mask {
        self.span_pairs()[a * self.roots.len() + b]
    }

    /// Label in simple-coefficient notation. E-series roots print the
    /// Bourbaki top row `c1 c3 c4 ..` followed by `(c2)`.
    pub fn format_root(&self, r: usize) -> String {
        let c = &self.roots[r].simple_coeffs;
        if self.ty.family == Family::E {
            let top: String = std::iter::once(c[0])
                .chain(c[2..].iter().copied())
                .map(|d| char::from(b'0' + d))
                .collect();
            format!("{}({})", top, c[1])
        } else {
            c.iter().map(|&d| char::from(b'0' + d)).collect()
        }
    }

    pub fn format_coords(&self, r: usize) -> String {
        let c = &self.roots[r].coords;
        let inner: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        format!("({})", inner.join(","))
    }

    /// Parses a positive root: a simple-coefficient digit string (`0121`),
    /// the E-series two-row form (`01110(1)`), or, for classical types,
    /// a signed sum of unit vectors (`e1+e2`, `e2-e4`, `2e3`).
    pub fn parse_root(&self, token: &str) -> Result<usize> {
        let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::BadIdealToken(token.trim().to_string());
        let n = self.rank();
        if t.starts_with('e') || t.starts_with("-e") || t.starts_with("+e") || t.contains("e") {
            return self.parse_ambient(&t).ok_or_else(bad);
        }
        let digits = |s: &str| -> Option<Vec<u8>> {
            s.chars()
                .map(|ch| ch.to_digit(10).map(|d| d as u8))
                .collect::<Option<Vec<u8>>>()
        };
        let coeffs = if let Some(open) = t.find('(') {
            if self.ty.family != Family::E || !t.ends_with(')') {
                return Err(bad());
            }
            let top = digits(&t[..open]).ok_or_else(bad)?;
            let bottom = digits(&t[open + 1..t.len() - 1]).ok_or_else(bad)?;
            if top.len() != n - 1 || bottom.len() != 1 {
                return Err(bad());
            }
            let mut c = vec![top[0], bottom[0]];
            c.extend_from_slice(&top[1..]);
            c
        } else {
            let c = digits(&t).ok_or_else(bad)?;
            if c.len() != n {
                return Err(bad());
            }
            c
        };
        self.find_by_coeffs(&coeffs).ok_or_else(bad)
    }

    fn parse_ambient(&self, t: &str) -> Option<usize> {
        if !matches!(self.ty.family, Family::A | Family::B | Family::C | Family::D) {
            return None;
        }
        let mut v = vec![0i64; self.ambient_dim];
        let mut rest = t;
        while !rest.is_empty() {
            let (sign, r) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let epos = r.find('e')?;
            let mult: i64 = if epos == 0 { 1 } else { r[..epos].parse().ok()? };
            let r = &r[epos + 1..];
            let end = r.find(['+', '-']).unwrap_or(r.len());
            let idx: usize = r[..end].parse().ok()?;
            if idx == 0 || idx > self.ambient_dim {
                return None;
            }
            v[idx - 1] += sign * mult;
            rest = &r[end..];
        }
        self.find_by_coords(&v)
    }

    /// Weyl group order check against `cap`, then a breadth-first walk of the
    /// right weak order from the identity, one length level at a time.
    pub fn for_each_weyl_element<F: FnMut(&WeylElement)>(&self, cap: usize, mut f: F) -> Result<usize> {
        let order = self.weyl_order();
        if order > cap as u128 {
            return Err(Error::BudgetExhausted { what: "Weyl group elements", limit: cap });
        }
        let m = self.roots.len();
        let id = WeylElement {
            perm: (0..m as i16).collect(),
            inversions: Mask::EMPTY,
        };
        let mut level = vec![id];
        let mut count = 0usize;
        while !level.is_empty() {
            let mut next: Vec<WeylElement> = Vec::new();
            let mut seen: HashSet<Mask> = HashSet::new();
            for w in &level {
                f(w);
                count += 1;
                for i in 0..self.rank() {
                    let ai = self.simple_index[i];
                    if w.perm[ai] < 0 {
                        continue;
                    }
                    let mut inv = Mask::single(ai);
                    for b in w.inversions.iter() {
                        inv.insert(self.reflect[i][b].expect("alpha_i is not an inversion"));
                    }
                    if !seen.insert(inv) {
                        continue;
                    }
                    let perm: Vec<i16> = (0..m)
                        .map(|b| match self.reflect[i][b] {
                            Some(c) => w.perm[c],
                            None => -w.perm[ai] - 1,
                        })
                        .collect();
                    next.push(WeylElement { perm, inversions: inv });
                }
            }
            level = next;
        }
        Ok(count)
    }

    pub fn weyl_elements(&self, cap: usize) -> Result<Vec<WeylElement>> {
        let mut v = Vec::new();
        self.for_each_weyl_element(cap, |w| v.push(w.clone()))?;
        Ok(v)
    }
}

/// Conjugate of a partition given as a list of part sizes (any order).
pub fn conjugate_partition(parts: &[usize]) -> Vec<usize> {
    let max = parts.iter().copied().max().unwrap_or(0);
    (1..=max).map(|j| parts.iter().filter(|&&p| p >= j).count()).collect()
}

pub const ALL_SMALL_TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "C2", "C3", "C4", "C5", "D4", "D5",
    "D6", "G2", "F4", "E6", "E7", "E8",
];
