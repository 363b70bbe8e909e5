//! Dense integer polynomials in one variable `t`.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Poly(pub Vec<i64>);

impl Poly {
    pub fn new(mut c: Vec<i64>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![1])
    }

    pub fn monomial(deg: usize, c: i64) -> Poly {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    /// `1 + t + .. + t^(k-1)`.
    pub fn t_integer(k: usize) -> Poly {
        Poly::new(vec![1; k])
    }

    /// `prod (t - r)`.
    pub fn from_roots(roots: &[i64]) -> Poly {
        roots.iter().fold(Poly::one(), |p, &r| p.mul(&Poly(vec![-r, 1])))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly::zero();
        }
        let mut c = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// Quotient by `(t - r)` when the division is exact.
    pub fn div_linear(&self, r: i64) -> Option<Poly> {
        let n = self.0.len();
        if n == 0 {
            return Some(Poly::zero());
        }
        let mut q = vec![0i64; n - 1];
        let mut carry = 0i64;
        for i in (1..n).rev() {
            carry = self.0[i] + carry * r;
            q[i - 1] = carry;
        }
        if self.0[0] + carry * r != 0 {
            return None;
        }
        Some(Poly::new(q))
    }

    /// If the polynomial is monic and splits as `prod (t - e_i)` with all
    /// `e_i >= 0`, the roots in ascending order.
    pub fn nonnegative_integer_roots(&self) -> Option<Vec<i64>> {
        let deg = self.degree()?;
        if self.0[deg] != 1 {
            return None;
        }
        let mut p = self.clone();
        let mut roots = Vec::with_capacity(deg);
        // Sum of roots is the negated subleading coefficient.
        let bound = if deg == 0 { 0 } else { -self.0[deg - 1] };
        let mut r = 0i64;
        while roots.len() < deg {
            if r > bound {
                return None;
            }
            match p.div_linear(r) {
                Some(q) => {
                    roots.push(r);
                    p = q;
                }
                None => r += 1,
            }
        }
        Some(roots)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{}", a)?,
                _ => {
                    if a != 1 {
                        write!(f, "{}", a)?;
                    }
                    if d == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{}", d)?;
                    }
                }
            }
        }
        Ok(())
    }
}
