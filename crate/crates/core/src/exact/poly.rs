use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{parse_rational, rat, RatMatrix, Rational, Subspace};
use crate::error::{Error, Result};

/// Univariate polynomial in `t` over Q; `coeffs[k]` is the coefficient of `t^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// From low-to-high coefficients; trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// From small integer coefficients, low to high.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest `k` with `t^k` dividing `self`, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Divides by `t^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * rat(k as i64)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); n - dd];
        for k in (dd..n).rev() {
            if r[k].is_zero() {
                continue;
            }
            let f = &r[k] / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k - dd + i] -= &f * c;
            }
            q[k - dd] = f;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rational roots with multiplicity, plus the cofactor with no rational
    /// roots. Roots come out in increasing order.
    pub fn rational_roots(&self) -> (Vec<Rational>, Poly) {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut rest = self.clone();
        let mut roots = Vec::new();
        while rest.degree().is_some_and(|d| d > 0) && rest.coeff(0).is_zero() {
            roots.push(Rational::zero());
            rest = rest.shift_down(1);
        }
        loop {
            let Some(deg) = rest.degree() else { break };
            if deg == 0 {
                break;
            }
            let l = rest.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<BigInt> = rest.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
            let a0 = ints[0].abs();
            let an = ints[deg].abs();
            let mut found = None;
            'search: for p in divisors(&a0) {
                for q in divisors(&an) {
                    for sign in [1i64, -1] {
                        let cand = Rational::new(&p * BigInt::from(sign), q.clone());
                        if rest.eval(&cand).is_zero() {
                            found = Some(cand);
                            break 'search;
                        }
                    }
                }
            }
            let Some(r) = found else { break };
            rest = rest.div_rem(&Poly::from_coeffs(vec![-r.clone(), Rational::one()])).0;
            roots.push(r);
        }
        roots.sort();
        (roots, rest)
    }

    /// Characteristic polynomial `det(t·Id - x)` by the Faddeev-LeVerrier recursion.
    pub fn characteristic(x: &RatMatrix) -> Poly {
        let n = x.rows();
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut acc = RatMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = x * &acc;
            for i in 0..n {
                let d = next.get(i, i) + &coeffs[n + 1 - k];
                next.set(i, i, d);
            }
            coeffs[n - k] = -(x * &next).trace() / rat(k as i64);
            acc = next;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, x: &RatMatrix) -> RatMatrix {
        let n = x.rows();
        self.coeffs.iter().rev().fold(RatMatrix::zeros(n, n), |acc, c| {
            let mut next = &acc * x;
            for i in 0..n {
                let d = next.get(i, i) + c;
                next.set(i, i, d);
            }
            next
        })
    }
}

fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let e = n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = a.is_one();
            match k {
                0 => write!(f, "{a}")?,
                _ if unit => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Parses sums of monomials in `t`, for instance `1 - 2*t + 3/4 t^2` or `-t^3`.
impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let bad = || Error::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'/' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut out = Poly::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-Rational::one(), &term[1..]),
                Some(b'+') => (Rational::one(), &term[1..]),
                _ => (Rational::one(), term),
            };
            let (coef, deg) = match body.find('t') {
                None => (parse_rational(body)?, 0),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let coef = if c.is_empty() { Rational::one() } else { parse_rational(c)? };
                    let tail = &body[pos + 1..];
                    let deg = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (coef, deg)
                }
            };
            out = &out + &Poly::monomial(sign * coef, deg);
        }
        Ok(out)
    }
}

/// Matrix with entries in `Q[t]`. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Poly>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        PolyMatrix { rows: n, cols, data }
    }

    /// Constant matrix.
    pub fn constant(m: &RatMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| Poly::constant(m.get(i, j).clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// All entries in row-major order.
    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn eval(&self, x: &Rational) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, p: &Poly) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * p)
    }

    /// Stacks the row-major flattenings of `members` as rows of one matrix.
    pub fn stack_flattened(members: &[PolyMatrix]) -> Self {
        let cols = members.first().map_or(0, |m| m.rows * m.cols);
        Self::from_rows(cols, members.iter().map(|m| m.data.clone()).collect())
    }

    /// Rank over the field `Q(t)`, by fraction-free elimination over `Q[t]`
    /// with content removal after each step.
    pub fn generic_rank(&self) -> usize {
        let mut rows: Vec<Vec<Poly>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let piv = (rank..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c].degree());
            let Some(p) = piv else { continue };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let prow = &head[rank];
            for row in tail.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let a = row[c].clone();
                for j in c..self.cols {
                    row[j] = &(&prow[c] * &row[j]) - &(&a * &prow[j]);
                }
                remove_content(row);
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Flat limit at `t = 0` of the row space.
    ///
    /// While the rows evaluated at zero are dependent, a vanishing
    /// combination of rows is divided by the largest power of `t` it admits
    /// and replaces the lowest-index row taking part in it.
    pub fn flat_limit(&self) -> Result<Subspace> {
        let rank = self.generic_rank();
        if rank < self.rows {
            return Err(Error::RankDrop { rank, rows: self.rows });
        }
        let zero = Rational::zero();
        let mut f = self.clone();
        loop {
            let e = f.eval(&zero);
            let left = e.left_kernel();
            if left.is_zero() {
                return Ok(e.row_space());
            }
            let c = left.basis().row(0).to_vec();
            let mut comb = vec![Poly::zero(); f.cols];
            for (i, ci) in c.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (j, slot) in comb.iter_mut().enumerate() {
                    *slot = &*slot + &f.get(i, j).scale(ci);
                }
            }
            let v = comb
                .iter()
                .filter_map(Poly::valuation)
                .min()
                .ok_or(Error::RankDrop { rank, rows: self.rows })?;
            let target = c.iter().position(|x| !x.is_zero()).expect("kernel vector is nonzero");
            for (j, p) in comb.iter().enumerate() {
                f.set(target, j, p.shift_down(v));
            }
        }
    }
}

fn remove_content(row: &mut [Poly]) {
    let g = row.iter().fold(Poly::zero(), |acc, p| acc.gcd(p));
    if g.degree().is_some_and(|d| d > 0) {
        for p in row.iter_mut() {
            if !p.is_zero() {
                *p = p.div_rem(&g).0;
            }
        }
    }
}

impl<'a> Mul<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;

    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "product shape mismatch");
        PolyMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(Poly::zero(), |acc, k| &acc + &(self.get(i, k) * rhs.get(k, j)))
        })
    }
}

impl<'a> Add<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;

    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sum shape mismatch");
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl<'a> Sub<&'a PolyMatrix> for &'a PolyMatrix {
    type Output = PolyMatrix;

    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "difference shape mismatch");
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}
