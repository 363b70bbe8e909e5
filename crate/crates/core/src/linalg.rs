//! Exact integer linear algebra on short vectors.
//!
//! Every routine is fraction-free: rows are combined with integer multipliers
//! and divided by their content afterwards, so entries stay small.

use num_integer::Integer;

pub type IVec = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn content(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Divide by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> IVec {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Primitive, with the first nonzero entry positive.
pub fn normalize(v: &[i64]) -> IVec {
    let mut p = primitive(v);
    if let Some(&f) = p.iter().find(|&&x| x != 0) {
        if f < 0 {
            p.iter_mut().for_each(|x| *x = -*x);
        }
    }
    p
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Incrementally built echelon basis of a row space.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    fn reduce(&self, v: &[i64]) -> Vec<i128> {
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (c, row) in &self.rows {
            let a = w[*c];
            if a == 0 {
                continue;
            }
            let p = row[*c];
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi = p * *wi - a * ri;
            }
            let g = content(&w);
            if g > 1 {
                w.iter_mut().for_each(|x| *x /= g);
            }
        }
        w
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let w = self.reduce(v);
        match w.iter().position(|&x| x != 0) {
            None => false,
            Some(c) => {
                self.rows.push((c, w));
                true
            }
        }
    }
}

pub fn rank(rows: &[&[i64]]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn rank_of(rows: &[IVec]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Integer basis of `{x : r . x = 0 for every row r}` in dimension `dim`.
pub fn kernel(rows: &[&[i64]], dim: usize) -> Vec<IVec> {
    // Reduced row echelon form, fraction-free.
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut top = 0;
    for col in 0..dim {
        let Some(pr) = (top..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(top, pr);
        for i in 0..m.len() {
            if i == top || m[i][col] == 0 {
                continue;
            }
            let (p, a) = (m[top][col], m[i][col]);
            let (l, r) = if i < top {
                let (l, r) = m.split_at_mut(top);
                (&mut l[i], &r[0])
            } else {
                let (l, r) = m.split_at_mut(i);
                (&mut r[0], &l[top])
            };
            for (x, y) in l.iter_mut().zip(r.iter()) {
                *x = p * *x - a * y;
            }
            let g = content(l);
            if g > 1 {
                l.iter_mut().for_each(|x| *x /= g);
            }
        }
        pivots.push(col);
        top += 1;
        if top == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        // x_free = L, x_pivot_i = -m[i][free] * L / m[i][pivot_i]
        let l = pivots
            .iter()
            .enumerate()
            .fold(1i128, |acc, (i, &pc)| acc.lcm(&m[i][pc]));
        let mut x = vec![0i128; dim];
        x[free] = l;
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = -m[i][free] * (l / m[i][pc]);
        }
        let g = content(&x);
        basis.push(x.iter().map(|&v| (v / g) as i64).collect());
    }
    basis
}

/// Columns on which the row space of `rows` projects injectively.
pub fn pivot_columns(rows: &[IVec]) -> Vec<usize> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let mut p = e.pivots();
    p.sort_unstable();
    p
}

/// Greedy basis (by index) and, for every non-basis vector, the basis
/// positions appearing in its unique expansion. Zero vectors get `None`.
pub fn fundamental_circuits(vectors: &[IVec]) -> (Vec<usize>, Vec<Option<Vec<usize>>>) {
    // Each echelon row carries its expansion in terms of basis vectors.
    let mut rows: Vec<(usize, Vec<i128>, Vec<i128>)> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    let mut circuits: Vec<Option<Vec<usize>>> = vec![None; vectors.len()];
    let max_basis = vectors.first().map_or(0, |v| v.len());
    for (idx, v) in vectors.iter().enumerate() {
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut comb = vec![0i128; max_basis + 1];
        comb[max_basis] = 1; // coefficient of v itself
        for (c, row, rc) in &rows {
            let a = w[*c];
            if a == 0 {
                continue;
            }
            let p = row[*c];
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi = p * *wi - a * ri;
            }
            for (ci, ri) in comb.iter_mut().zip(rc) {
                *ci = p * *ci - a * ri;
            }
            let g = content(&w).gcd(&content(&comb));
            if g > 1 {
                w.iter_mut().for_each(|x| *x /= g);
                comb.iter_mut().for_each(|x| *x /= g);
            }
        }
        match w.iter().position(|&x| x != 0) {
            Some(c) => {
                // New basis vector: its expansion is itself.
                let k = basis.len();
                basis.push(idx);
                let mut rc = comb.clone();
                rc[max_basis] = 0;
                rc[k] = comb[max_basis];
                rows.push((c, w, rc));
            }
            None => {
                if v.iter().any(|&x| x != 0) {
                    let supp = (0..basis.len()).filter(|&k| comb[k] != 0).collect();
                    circuits[idx] = Some(supp);
                }
            }
        }
    }
    (basis, circuits)
}
