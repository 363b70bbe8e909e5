//! Independent oracles and reference data shared by the integration tests.

#![allow(dead_code)]

use idealarr::{Ideal, Mask, Poly, RootSystem};
use std::collections::{HashMap, HashSet, VecDeque};

/// Weyl group exponents by type, written out by hand.
pub fn known_exponents(name: &str) -> Vec<u64> {
    let (fam, n) = name.split_at(1);
    let n: u64 = n.parse().unwrap();
    match fam {
        "A" => (1..=n).collect(),
        "B" | "C" => (1..=n).map(|i| 2 * i - 1).collect(),
        "D" => {
            let mut e: Vec<u64> = (1..n).map(|i| 2 * i - 1).collect();
            e.push(n - 1);
            e.sort();
            e
        }
        "G" => vec![1, 5],
        "F" => vec![1, 5, 7, 11],
        "E" => match n {
            6 => vec![1, 4, 5, 7, 8, 11],
            7 => vec![1, 5, 7, 9, 11, 13, 17],
            8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
            _ => unreachable!(),
        },
        _ => unreachable!(),
    }
}

/// `prod (h + e + shift) / (e + 1)` over the exponents, with `h` the largest
/// exponent plus one.
pub fn catalan_product(name: &str, shift: i64) -> u128 {
    let e = known_exponents(name);
    let h = *e.iter().max().unwrap() as i64 + 1;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for &x in &e {
        num *= (h + x as i64 + shift) as u128;
        den *= x as u128 + 1;
    }
    assert_eq!(num % den, 0);
    num / den
}

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed forms for classical types: (all ideals, strictly positive ideals).
pub fn classical_counts(name: &str) -> Option<(u128, u128)> {
    let (fam, n) = name.split_at(1);
    let n: u128 = n.parse().ok()?;
    let cat = |m: u128| binom(2 * m, m) / (m + 1);
    match fam {
        "A" => Some((cat(n + 1), cat(n))),
        "B" | "C" => Some((binom(2 * n, n), binom(2 * n - 1, n))),
        "D" => Some((
            binom(2 * n - 2, n - 1) * (3 * n - 2) / n,
            binom(2 * n - 3, n - 1) * (3 * n - 4) / n,
        )),
        _ => None,
    }
}

/// Parts of the conjugate of the partition counting `roots` by height.
pub fn exponents_from_heights(rs: &RootSystem, roots: Mask) -> Vec<usize> {
    let mut by_height: HashMap<usize, usize> = HashMap::new();
    for r in roots.iter() {
        *by_height.entry(rs.root(r).height).or_default() += 1;
    }
    let top = by_height.values().copied().max().unwrap_or(0);
    let mut e: Vec<usize> = (1..=top).map(|k| by_height.values().filter(|&&c| c >= k).count()).collect();
    e.sort();
    e
}

pub fn t_product(exps: &[usize]) -> Poly {
    let mut c = vec![1i64];
    for &m in exps {
        let mut next = vec![0i64; c.len() + m];
        for (i, &a) in c.iter().enumerate() {
            for j in 0..=m {
                next[i + j] += a;
            }
        }
        c = next;
    }
    Poly::new(c)
}

fn add_roots(rs: &RootSystem, a: usize, b: usize) -> Option<usize> {
    let ca = &rs.root(a).simple_coeffs;
    let cb = &rs.root(b).simple_coeffs;
    let s: Vec<u8> = ca.iter().zip(cb).map(|(x, y)| x + y).collect();
    rs.find_by_coeffs(&s)
}

/// Subsets `S` of `keep` such that `S` and `keep \ S` are both closed under
/// sums of two roots landing in `keep`, by exhaustive enumeration.
pub fn weyl_type_sets(rs: &RootSystem, keep: Mask) -> Vec<Mask> {
    let roots: Vec<usize> = keep.iter().collect();
    assert!(roots.len() <= 20);
    let local = |r: usize| roots.iter().position(|&x| x == r).unwrap();
    let mut triples = Vec::new();
    for (i, &a) in roots.iter().enumerate() {
        for &b in &roots[i + 1..] {
            if let Some(c) = add_roots(rs, a, b) {
                if keep.contains(c) {
                    triples.push((local(a), local(b), local(c)));
                }
            }
        }
    }
    let closed = |s: u32| triples.iter().all(|&(a, b, c)| s >> a & 1 == 0 || s >> b & 1 == 0 || s >> c & 1 == 1);
    let full = (1u32 << roots.len()) - 1;
    (0..=full)
        .filter(|&s| closed(s) && closed(full & !s))
        .map(|s| Mask::from_indices((0..roots.len()).filter(|&i| s >> i & 1 == 1).map(|i| roots[i])))
        .collect()
}

pub fn size_polynomial(sets: impl IntoIterator<Item = Mask>) -> Poly {
    let mut c = vec![0i64; 129];
    for s in sets {
        c[s.len()] += 1;
    }
    Poly::new(c)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Sign sets `{beta in keep : (beta, v) < 0}` over the orbit of the sum of
/// positive roots under simple reflections.
pub fn chamber_sign_sets(rs: &RootSystem, keep: Mask) -> HashSet<Mask> {
    let dim = rs.root(0).coords.len();
    let mut rho2 = vec![0i64; dim];
    for r in rs.positive_roots() {
        for (x, y) in rho2.iter_mut().zip(&r.coords) {
            *x += y;
        }
    }
    let simple = rs.simple_coords().to_vec();
    let mut seen: HashSet<Vec<i64>> = HashSet::from([rho2.clone()]);
    let mut queue = VecDeque::from([rho2]);
    while let Some(v) = queue.pop_front() {
        for a in &simple {
            let k = 2 * dot(&v, a) / dot(a, a);
            let w: Vec<i64> = v.iter().zip(a).map(|(x, y)| x - k * y).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.iter()
        .map(|v| Mask::from_indices(keep.iter().filter(|&r| dot(&rs.root(r).coords, v) < 0)))
        .collect()
}

pub fn ideal_of(rs: &RootSystem, spec: &str) -> Ideal {
    Ideal::parse(rs, spec).unwrap()
}

/// One reference boundary row: generator, subsystem label (`None` for "×"),
/// and the listed boundary roots.
pub struct Row {
    pub ty: &'static str,
    pub height: usize,
    pub generator: &'static str,
    pub subsystem: Option<&'static str>,
    pub boundary: &'static [&'static str],
}

/// Zero-based simple root removed for each reference subsystem label.
pub fn drop_for(ty: &str, label: &str) -> usize {
    match (ty, label) {
        ("F4", "B3") => 3,
        ("F4", "C3") => 0,
        ("E6", "D5") => 0,
        ("E6", "D5'") => 5,
        ("E6", "A5") => 1,
        ("E7", "D6") => 0,
        ("E7", "A6") => 1,
        ("E7", "E6") => 6,
        ("E8", "D7") => 0,
        ("E8", "A7") => 1,
        ("E8", "E7") => 7,
        _ => panic!("no subsystem {} in {}", label, ty),
    }
}

macro_rules! row {
    ($ty:expr, $h:expr, $g:expr, x) => {
        Row { ty: $ty, height: $h, generator: $g, subsystem: None, boundary: &[] }
    };
    ($ty:expr, $h:expr, $g:expr, $s:expr, [$($b:expr),*]) => {
        Row { ty: $ty, height: $h, generator: $g, subsystem: Some($s), boundary: &[$($b),*] }
    };
}

pub fn boundary_table() -> Vec<Row> {
    vec![
        row!("F4", 3, "1110", "C3", ["1000", "1100"]),
        row!("F4", 3, "0120", "C3", ["1000", "1100", "1110", "1111"]),
        row!("F4", 3, "0111", "B3", ["0001", "0011"]),
        row!("E6", 3, "11100(0)", "D5", ["10000(0)", "11000(0)"]),
        row!("E6", 3, "01100(1)", "A5", ["00000(1)", "00100(1)", "00110(1)", "00111(1)"]),
        row!("E6", 3, "01110(0)", "D5", ["10000(0)", "11000(0)", "11100(0)", "11100(1)"]),
        row!("E6", 3, "00110(1)", "A5", ["00000(1)", "00100(1)", "01100(1)", "11100(1)"]),
        row!("E6", 3, "00111(0)", "D5'", ["00001(0)", "00011(0)"]),
        row!("E7", 3, "111000(0)", "D6", ["100000(0)", "110000(0)"]),
        row!("E7", 3, "011000(1)", "A6", ["000000(1)", "001000(1)", "001100(1)", "001110(1)", "001111(1)"]),
        row!("E7", 3, "011100(0)", "D6", ["100000(0)", "110000(0)", "111000(0)", "111000(1)"]),
        row!("E7", 3, "001100(1)", "A6", ["000000(1)", "001000(1)", "011000(1)", "111000(1)"]),
        row!("E7", 3, "001110(0)", "E6", ["000001(0)", "000011(0)", "000111(0)"]),
        row!("E7", 3, "000111(0)", "E6", ["000001(0)", "000011(0)"]),
        row!("E8", 3, "1110000(0)", "D7", ["1000000(0)", "1100000(0)"]),
        row!("E8", 3, "0110000(1)", "A7", ["0000000(1)", "0010000(1)", "0011000(1)", "0011100(1)", "0011110(1)", "0011111(1)"]),
        row!("E8", 3, "0111000(0)", "D7", ["1000000(0)", "1100000(0)", "1110000(0)", "1110000(1)"]),
        row!("E8", 3, "0011000(1)", "A7", ["0000000(1)", "0010000(1)", "0110000(1)", "1110000(1)"]),
        row!("E8", 3, "0011100(0)", "E7", ["0000001(0)", "0000011(0)", "0000111(0)", "0001111(0)"]),
        row!("E8", 3, "0001110(0)", "E7", ["0000001(0)", "0000011(0)", "0000111(0)"]),
        row!("E8", 3, "0000111(0)", "E7", ["0000001(0)", "0000011(0)"]),
        row!("F4", 4, "1111", "C3", ["1000", "1100", "1110", "1120", "1220"]),
        row!("F4", 4, "1120", "C3", ["1000", "1100", "1110", "1111"]),
        row!("F4", 4, "0121", "B3", ["0001", "0011", "0111", "1111"]),
        row!("E6", 4, "11110(0)", "D5", ["10000(0)", "11000(0)", "11100(0)", "11100(1)"]),
        row!("E6", 4, "11100(1)", "D5", ["10000(0)", "11000(0)", "11100(0)", "11110(0)", "11111(0)"]),
        row!("E6", 4, "01110(1)", x),
        row!("E6", 4, "00111(1)", "D5'", ["00001(0)", "00011(0)", "00111(0)", "01111(0)", "11111(0)"]),
        row!("E6", 4, "01111(0)", "D5'", ["00001(0)", "00011(0)", "00111(0)", "00111(1)"]),
        row!("E7", 4, "111100(0)", "D6", ["100000(0)", "110000(0)", "111000(0)", "111000(1)"]),
        row!("E7", 4, "111000(1)", "D6", ["100000(0)", "110000(0)", "111000(0)", "111100(0)", "111110(0)", "111111(0)"]),
        row!("E7", 4, "011100(1)", x),
        row!("E7", 4, "011110(0)", "E6", ["000001(0)", "000011(0)", "000111(0)", "001111(0)", "001111(1)"]),
        row!("E7", 4, "001110(1)", "E6", ["000001(0)", "000011(0)", "000111(0)", "001111(0)", "011111(0)", "111111(0)"]),
        row!("E7", 4, "001111(0)", "E6", ["000001(0)", "000011(0)", "000111(0)"]),
        row!("E8", 4, "1111000(0)", "D7", ["1000000(0)", "1100000(0)", "1110000(0)", "1110000(1)"]),
        row!("E8", 4, "1110000(1)", "D7", ["1000000(0)", "1100000(0)", "1110000(0)", "1111000(0)", "1111100(0)", "1111110(0)", "1111111(0)"]),
        row!("E8", 4, "0111000(1)", x),
        row!("E8", 4, "0011100(1)", "E7", ["0000001(0)", "0000011(0)", "0000111(0)", "0001111(0)", "0011111(0)", "0111111(0)", "1111111(0)"]),
        row!("E8", 4, "0111100(0)", "E7", ["0000001(0)", "0000011(0)", "0000111(0)", "0001111(0)", "0011111(0)", "0011111(1)"]),
        row!("E8", 4, "0011110(0)", "E7", ["0000001(0)", "0000011(0)", "0000111(0)", "0001111(0)"]),
        row!("E8", 4, "0001111(0)", "E7", ["0000001(0)", "0000011(0)", "0000111(0)"]),
        row!("E7", 5, "111110(0)", x),
        row!("E7", 5, "111100(1)", x),
        row!("E7", 5, "011110(1)", x),
        row!("E7", 5, "012100(1)", x),
        row!("E7", 5, "011111(0)", "E6", ["000001(0)", "000011(0)", "000111(0)", "001111(0)", "001111(1)"]),
        row!("E7", 5, "001111(1)", "E6", ["000001(0)", "000011(0)", "000111(0)", "001111(0)", "011111(0)", "111111(0)"]),
        row!("E8", 5, "1111100(0)", x),
        row!("E8", 5, "1111000(1)", x),
        row!("E8", 5, "0111100(1)", x),
        row!("E8", 5, "0121000(1)", x),
        row!("E8", 5, "0011110(1)", "E7", ["0000001(0)", "0000011(0)", "0000111(0)", "0001111(0)", "0011111(0)", "0111111(0)", "1111111(0)"]),
        row!("E8", 5, "0111110(0)", "E7", ["0000001(0)", "0000011(0)", "0000111(0)", "0001111(0)", "0011111(0)", "0011111(1)"]),
        row!("E8", 5, "0011111(0)", "E7", ["0000001(0)", "0000011(0)", "0000111(0)", "0001111(0)"]),
        row!("E8", 6, "1111110(0)", x),
        row!("E8", 6, "1111100(1)", x),
        row!("E8", 6, "0111110(1)", x),
        row!("E8", 6, "1121000(1)", x),
        row!("E8", 6, "0121100(1)", x),
        row!("E8", 6, "0111111(0)", "E7", ["0000001(0)", "0000011(0)", "0000111(0)", "0001111(0)", "0011111(0)", "0011111(1)"]),
    ]
}

/// Counts of ideals inside the ideal of roots of height `>= t`, `t = 1, 2, ..`.
pub fn within_height_table() -> Vec<(&'static str, Vec<usize>)> {
    vec![
        ("F4", vec![105, 66, 48, 36, 22]),
        ("E6", vec![833, 418, 254, 150, 62]),
        ("E7", vec![4160, 2431, 1660, 1162, 726, 403]),
        ("E8", vec![25080, 17342, 13395, 10714, 8330, 6623, 4500]),
    ]
}

/// (type, all ideals, ideals resolved by the classification).
pub fn classification_table() -> Vec<(&'static str, usize, usize)> {
    vec![("G2", 8, 8), ("F4", 105, 85), ("E6", 833, 771), ("E7", 4160, 3433), ("E8", 25080, 18902)]
}
