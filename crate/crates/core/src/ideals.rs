//! Upper order ideals of the positive root poset.

use crate::bits::Mask;
use crate::error::{Error, Result};
use crate::rootsys::{conjugate_partition, Family, RootSystem};
use num_integer::binomial;

/// An upward-closed set of positive roots, stored as a root-index bitset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Ideal {
    pub members: Mask,
}

impl Ideal {
    pub fn empty() -> Ideal {
        Ideal { members: Mask::EMPTY }
    }

    pub fn all(rs: &RootSystem) -> Ideal {
        Ideal { members: rs.all_mask() }
    }

    /// `{theta}`, the ideal generated by the highest root.
    pub fn theta(rs: &RootSystem) -> Ideal {
        Ideal { members: Mask::single(rs.highest_root()) }
    }

    /// All roots of height at least `t`.
    pub fn height_at_least(rs: &RootSystem, t: usize) -> Ideal {
        let m = Mask::from_indices(
            rs.positive_roots().iter().filter(|r| r.height >= t).map(|r| r.index),
        );
        Ideal { members: m }
    }

    pub fn generated(rs: &RootSystem, gens: &[usize]) -> Ideal {
        let mut m = Mask::EMPTY;
        for &g in gens {
            m |= rs.up_set(g);
        }
        Ideal { members: m }
    }

    pub fn from_mask(rs: &RootSystem, mask: Mask) -> Option<Ideal> {
        is_upward_closed(rs, mask).then_some(Ideal { members: mask })
    }

    pub fn complement(&self, rs: &RootSystem) -> Mask {
        self.members.complement(rs.num_positive())
    }

    pub fn contains(&self, r: usize) -> bool {
        self.members.contains(r)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// No simple root belongs to the ideal.
    pub fn is_strictly_positive(&self, rs: &RootSystem) -> bool {
        rs.simple_roots().iter().all(|&s| !self.members.contains(s))
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.members.is_subset(other.members)
    }

    /// Minimal elements, ascending by root index.
    pub fn generators(&self, rs: &RootSystem) -> Vec<usize> {
        self.members
            .iter()
            .filter(|&r| {
                self.members
                    .iter()
                    .all(|s| s == r || !rs.dominates(s, r))
            })
            .collect()
    }

    /// Number of complement roots of each height `1, 2, ..` (trailing zeros dropped).
    pub fn height_partition(&self, rs: &RootSystem) -> Vec<usize> {
        let mut p = vec![0usize; rs.coxeter_number()];
        for r in self.complement(rs).iter() {
            p[rs.root(r).height - 1] += 1;
        }
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    /// Exponents of the ideal: the conjugate of the complement's height
    /// partition, ascending. Empty when the complement is empty.
    pub fn exponents(&self, rs: &RootSystem) -> Vec<usize> {
        let mut e = conjugate_partition(&self.height_partition(rs));
        e.sort_unstable();
        e
    }

    /// The exponents padded with zeros to the rank of the root system.
    pub fn padded_exponents(&self, rs: &RootSystem) -> Vec<usize> {
        let e = self.exponents(rs);
        let mut out = vec![0; rs.rank() - e.len()];
        out.extend(e);
        out
    }

    pub fn format(&self, rs: &RootSystem) -> String {
        let g: Vec<String> = self.generators(rs).iter().map(|&r| rs.format_root(r)).collect();
        format!("{}:[{}]", rs.ty, g.join(","))
    }

    /// Parses `[g1,g2,..]`, a bare generator list, `I<t>`, `theta`, or `empty`.
    /// An optional `TYPE:` prefix must match the root system.
    pub fn parse(rs: &RootSystem, spec: &str) -> Result<Ideal> {
        let mut s = spec.trim();
        if let Some((ty, rest)) = s.split_once(':') {
            if ty.trim().parse::<crate::rootsys::CartanType>().ok() != Some(rs.ty) {
                return Err(Error::BadIdealToken(ty.trim().to_string()));
            }
            s = rest.trim();
        }
        let lower = s.to_ascii_lowercase();
        if lower == "theta" {
            return Ok(Ideal::theta(rs));
        }
        if lower == "empty" {
            return Ok(Ideal::empty());
        }
        if let Some(t) = s.strip_prefix('I') {
            let t: usize = t
                .parse()
                .map_err(|_| Error::BadIdealToken(s.to_string()))?;
            if t == 0 {
                return Err(Error::BadIdealToken(s.to_string()));
            }
            return Ok(Ideal::height_at_least(rs, t));
        }
        let inner = match (s.strip_prefix('['), s.strip_prefix('<')) {
            (Some(r), _) => r
                .strip_suffix(']')
                .ok_or_else(|| Error::BadIdeal(format!("missing `]` in `{}`", spec)))?,
            (_, Some(r)) => r
                .strip_suffix('>')
                .ok_or_else(|| Error::BadIdeal(format!("missing `>` in `{}`", spec)))?,
            _ => s,
        };
        let mut gens = Vec::new();
        for tok in split_generators(inner) {
            gens.push(rs.parse_root(tok)?);
        }
        Ok(Ideal::generated(rs, &gens))
    }
}

/// Splits on commas that are not inside parentheses.
fn split_generators(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|t| !t.is_empty()).collect()
}

pub fn is_upward_closed(rs: &RootSystem, mask: Mask) -> bool {
    mask.iter().all(|r| rs.up_set(r).is_subset(mask))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IdealFilter {
    pub strictly_positive: bool,
    /// Only ideals contained in `I_t`, the roots of height at least `t`.
    pub within_height: Option<usize>,
}

impl IdealFilter {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn strict() -> Self {
        Self { strictly_positive: true, within_height: None }
    }

    pub fn within(t: usize) -> Self {
        Self { strictly_positive: false, within_height: Some(t) }
    }
}

/// Depth-first walk over ideals, deciding roots from the highest index down.
/// Ideals come out in increasing order of their membership bitset.
pub struct IdealWalk<'a> {
    rs: &'a RootSystem,
    filter: IdealFilter,
    stack: Vec<(usize, Mask, u8)>,
}

impl<'a> IdealWalk<'a> {
    pub fn new(rs: &'a RootSystem, filter: IdealFilter) -> Self {
        Self { rs, filter, stack: vec![(0, Mask::EMPTY, 0)] }
    }

    fn allowed(&self, r: usize, mask: Mask) -> bool {
        let root = self.rs.root(r);
        if self.filter.strictly_positive && root.height == 1 {
            return false;
        }
        if let Some(t) = self.filter.within_height {
            if root.height < t {
                return false;
            }
        }
        (0..self.rs.rank()).all(|i| match self.rs.add_simple(r, i) {
            Some(c) => mask.contains(c),
            None => true,
        })
    }
}

impl Iterator for IdealWalk<'_> {
    type Item = Ideal;

    fn next(&mut self) -> Option<Ideal> {
        let m = self.rs.num_positive();
        while let Some(top) = self.stack.last_mut() {
            let (pos, mask, state) = *top;
            if pos == m {
                self.stack.pop();
                return Some(Ideal { members: mask });
            }
            let r = m - 1 - pos;
            match state {
                0 => {
                    top.2 = 1;
                    self.stack.push((pos + 1, mask, 0));
                }
                1 => {
                    top.2 = 2;
                    if self.allowed(r, mask) {
                        let mut with = mask;
                        with.insert(r);
                        self.stack.push((pos + 1, with, 0));
                    }
                }
                _ => {
                    self.stack.pop();
                }
            }
        }
        None
    }
}

pub fn enumerate(rs: &RootSystem, filter: IdealFilter) -> IdealWalk<'_> {
    IdealWalk::new(rs, filter)
}

pub fn count(rs: &RootSystem, filter: IdealFilter) -> usize {
    enumerate(rs, filter).count()
}

/// `prod (h + e_i + shift) / |W|`, with `shift = 1` for all ideals and
/// `shift = -1` for strictly positive ones.
pub fn product_formula(rs: &RootSystem, strictly_positive: bool) -> u128 {
    let h = rs.coxeter_number() as i128;
    let num: i128 = rs
        .weyl_exponents()
        .iter()
        .map(|&e| h + e as i128 + if strictly_positive { -1 } else { 1 })
        .product();
    (num / rs.weyl_order() as i128) as u128
}

/// Binomial closed forms for the classical families, if applicable.
pub fn classical_closed_form(rs: &RootSystem, strictly_positive: bool) -> Option<u128> {
    let n = rs.rank() as u128;
    let c = binomial::<u128>;
    Some(match (rs.ty.family, strictly_positive) {
        (Family::A, false) => c(2 * n + 2, n + 1) / (n + 2),
        (Family::A, true) => c(2 * n, n) / (n + 1),
        (Family::B | Family::C, false) => c(2 * n, n),
        (Family::B | Family::C, true) => c(2 * n - 1, n - 1),
        (Family::D, false) => c(2 * n - 1, n) + c(2 * n - 2, n),
        (Family::D, true) => c(2 * n - 2, n) + c(2 * n - 3, n),
        _ => return None,
    })
}

/// Number of ideals contained in `I_t`, for `t = 1 ..= h`.
pub fn counts_within_heights(rs: &RootSystem) -> Vec<usize> {
    (1..=rs.coxeter_number())
        .map(|t| count(rs, IdealFilter::within(t)))
        .collect()
}
