//! Exact arithmetic in cyclotomic fields `Q(ζ_n)` and dense matrices over them.
//!
//! Elements are polynomials in `ζ_n` reduced modulo the cyclotomic polynomial
//! `Φ_n`, so equal field elements of one conductor have identical coefficients.
//! Binary operations lift both sides to the lcm of the conductors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CycError {
    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u32, to: u32 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular {rows}x{cols} matrix (determinant {determinant})")]
    Singular {
        rows: usize,
        cols: usize,
        determinant: String,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed serialized value: {0}")]
    Malformed(String),
}

/// Per-conductor data: `φ(n)` and the reduction of `xᵉ` modulo `Φ_n` for
/// `0 ≤ e < 2n`.
#[derive(Debug)]
struct FieldTable {
    degree: usize,
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd] / lead;
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn build_table(n: u32) -> FieldTable {
    let phi = cyclotomic_poly(n);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(2 * n as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..(2 * n as usize).max(2 * degree) {
        powers.push(cur.clone());
        // multiply by x and reduce with the monic Φ_n
        let top = cur[degree - 1];
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..degree {
                cur[i] -= top * phi[i];
            }
        }
    }
    FieldTable { degree, powers }
}

fn table(n: u32) -> Arc<FieldTable> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<FieldTable>>>> = OnceLock::new();
    let map = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("field table lock");
    guard.entry(n).or_insert_with(|| Arc::new(build_table(n))).clone()
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count()
}

/// An element of `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum {
    n: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(n: u32) -> CycNum {
        CycNum {
            n,
            coeffs: vec![BigRational::zero(); table(n).degree],
        }
    }

    pub fn one(n: u32) -> CycNum {
        CycNum::from_rational(n, BigRational::one())
    }

    pub fn from_int(n: u32, v: i64) -> CycNum {
        CycNum::from_rational(n, BigRational::from_integer(v.into()))
    }

    pub fn from_rational(n: u32, v: BigRational) -> CycNum {
        let mut x = CycNum::zero(n);
        x.coeffs[0] = v;
        x
    }

    pub fn from_ratio(n: u32, num: i64, den: i64) -> CycNum {
        CycNum::from_rational(n, BigRational::new(num.into(), den.into()))
    }

    /// `ζ_nᵉ`; negative exponents allowed.
    pub fn zeta_pow(n: u32, e: i64) -> CycNum {
        let t = table(n);
        let e = e.rem_euclid(n as i64) as usize;
        CycNum {
            n,
            coeffs: t.powers[e]
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    pub fn zeta(n: u32) -> CycNum {
        CycNum::zeta_pow(n, 1)
    }

    /// The Gaussian number `x + y i` in conductor 4.
    pub fn gaussian(x: i64, y: i64) -> CycNum {
        CycNum::from_int(4, x) + CycNum::from_int(4, y) * CycNum::zeta(4)
    }

    /// Builds from power-basis coefficients; the vector may be longer than
    /// `φ(n)` and is reduced.
    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> CycNum {
        let t = table(n);
        let mut out = vec![BigRational::zero(); t.degree];
        for (e, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            add_scaled_power(&mut out, &t, e % n as usize, &c);
        }
        CycNum { n, coeffs: out }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Integer power-basis coordinates when all coefficients are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Re-expresses the element with conductor `m`, sending `ζ_n` to `ζ_m^{m/n}`.
    pub fn embed(&self, m: u32) -> Result<CycNum, CycError> {
        if m == 0 {
            return Err(CycError::ZeroConductor);
        }
        if !m.is_multiple_of(self.n) {
            return Err(CycError::NotDivisible { from: self.n, to: m });
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let step = (m / self.n) as usize;
        let t = table(m);
        let mut out = vec![BigRational::zero(); t.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                add_scaled_power(&mut out, &t, j * step, c);
            }
        }
        Ok(CycNum { n: m, coeffs: out })
    }

    fn lift_pair(&self, other: &CycNum) -> (CycNum, CycNum) {
        if self.n == other.n {
            return (self.clone(), other.clone());
        }
        let m = self.n.lcm(&other.n);
        (self.embed(m).unwrap(), other.embed(m).unwrap())
    }

    /// The Galois automorphism `ζ ↦ ζᵃ` for `a` coprime to the conductor.
    pub fn galois(&self, a: u32) -> CycNum {
        let n = self.n as usize;
        let t = table(self.n);
        let mut out = vec![BigRational::zero(); t.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                add_scaled_power(&mut out, &t, (j * a as usize) % n, c);
            }
        }
        CycNum { n: self.n, coeffs: out }
    }

    /// Complex conjugation `ζ ↦ ζ^{n-1}`.
    pub fn conj(&self) -> CycNum {
        if self.n <= 2 {
            return self.clone();
        }
        self.galois(self.n - 1)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        let mut acc = self.clone();
        for a in 2..self.n {
            if a.gcd(&self.n) == 1 {
                acc = &acc * &self.galois(a);
            }
        }
        acc.as_rational().expect("norm is rational")
    }

    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(CycNum::from_rational(self.n, self.coeffs[0].recip()));
        }
        let mut others = CycNum::one(self.n);
        for a in 2..self.n {
            if a.gcd(&self.n) == 1 {
                others = &others * &self.galois(a);
            }
        }
        let norm = (&others * self).as_rational().expect("norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        CycNum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CycNum {
        (0..e).fold(CycNum::one(self.n), |acc, _| &acc * self)
    }

    /// Serializable form `{n, coeffs: ["num/den", …]}`.
    pub fn to_repr(&self) -> CycNumRepr {
        CycNumRepr {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_repr(r: &CycNumRepr) -> Result<CycNum, CycError> {
        if r.n == 0 {
            return Err(CycError::ZeroConductor);
        }
        let degree = table(r.n).degree;
        if r.coeffs.len() != degree {
            return Err(CycError::Malformed(format!("expected {degree} coefficients")));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(|e| CycError::Malformed(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycNum { n: r.n, coeffs })
    }
}

fn add_scaled_power(out: &mut [BigRational], t: &FieldTable, e: usize, c: &BigRational) {
    for (slot, &p) in out.iter_mut().zip(&t.powers[e]) {
        match p {
            0 => {}
            1 => *slot += c,
            -1 => *slot -= c,
            p => *slot += c * BigRational::from_integer(p.into()),
        }
    }
}

fn mul_same(x: &CycNum, y: &CycNum) -> CycNum {
    let t = table(x.n);
    let d = t.degree;
    if x.is_rational() {
        return y.scale(&x.coeffs[0]);
    }
    if y.is_rational() {
        return x.scale(&y.coeffs[0]);
    }
    let mut raw = vec![BigRational::zero(); 2 * d - 1];
    for (i, a) in x.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.coeffs.iter().enumerate() {
            if !b.is_zero() {
                raw[i + j] += a * b;
            }
        }
    }
    let mut out: Vec<BigRational> = raw[..d].to_vec();
    for (e, c) in raw.iter().enumerate().skip(d) {
        if !c.is_zero() {
            add_scaled_power(&mut out, &t, e, c);
        }
    }
    CycNum { n: x.n, coeffs: out }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.n == rhs.n {
            mul_same(self, rhs)
        } else {
            let (x, y) = self.lift_pair(rhs);
            mul_same(&x, &y)
        }
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.n == rhs.n {
            CycNum {
                n: self.n,
                coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
            }
        } else {
            let (x, y) = self.lift_pair(rhs);
            &x + &y
        }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// Value equality across conductors.
pub fn same_value(x: &CycNum, y: &CycNum) -> bool {
    if x.n == y.n {
        x == y
    } else {
        let (a, b) = x.lift_pair(y);
        a == b
    }
}

impl fmt::Display for CycNum {
    /// Prints `c₀ + c₁ z + c₂ z^2 …` with `z = ζ_n`; rational values print bare.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let z = match e {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, e),
            };
            if e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{z}")?;
            } else {
                write!(f, "{mag}*{z}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycNumRepr {
    pub n: u32,
    pub coeffs: Vec<String>,
}

/// A dense row-major matrix whose entries share one conductor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    n: u32,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize, n: u32) -> CycMatrix {
        CycMatrix {
            rows,
            cols,
            n,
            data: vec![CycNum::zero(n); rows * cols],
        }
    }

    pub fn identity(size: usize, n: u32) -> CycMatrix {
        let mut m = CycMatrix::zeros(size, size, n);
        for i in 0..size {
            m.data[i * size + i] = CycNum::one(n);
        }
        m
    }

    pub fn diag(n: u32, entries: &[CycNum]) -> CycMatrix {
        let k = entries.len();
        let mut m = CycMatrix::zeros(k, k, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Builds from rows of entries, lifting everything to conductor `n`.
    pub fn from_rows(n: u32, rows: Vec<Vec<CycNum>>) -> CycMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for x in row {
                data.push(x.embed(n).expect("entry conductor divides matrix conductor"));
            }
        }
        CycMatrix {
            rows: r,
            cols: c,
            n,
            data,
        }
    }

    pub fn from_int_rows(n: u32, rows: &[Vec<i64>]) -> CycMatrix {
        CycMatrix::from_rows(
            n,
            rows.iter()
                .map(|r| r.iter().map(|&v| CycNum::from_int(n, v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v.embed(self.n).expect("entry conductor divides matrix conductor");
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    pub fn embed(&self, m: u32) -> Result<CycMatrix, CycError> {
        let data = self.data.iter().map(|x| x.embed(m)).collect::<Result<Vec<_>, _>>()?;
        Ok(CycMatrix {
            rows: self.rows,
            cols: self.cols,
            n: m,
            data,
        })
    }

    fn lift_pair(&self, other: &CycMatrix) -> (CycMatrix, CycMatrix) {
        if self.n == other.n {
            (self.clone(), other.clone())
        } else {
            let m = self.n.lcm(&other.n);
            (self.embed(m).unwrap(), other.embed(m).unwrap())
        }
    }

    /// Value equality across conductors.
    pub fn same_value(&self, other: &CycMatrix) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let (x, y) = self.lift_pair(other);
        x.data == y.data
    }

    pub fn try_mul(&self, other: &CycMatrix) -> Result<CycMatrix, CycError> {
        if self.cols != other.rows {
            return Err(CycError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (x, y) = self.lift_pair(other);
        let mut out = CycMatrix::zeros(x.rows, y.cols, x.n);
        for i in 0..x.rows {
            for k in 0..x.cols {
                let a = x.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let a_one = a.is_one();
                let a_neg_one = !a_one && (-a).is_one();
                for j in 0..y.cols {
                    let b = y.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    let prod = if a_one {
                        b.clone()
                    } else if a_neg_one {
                        -b
                    } else {
                        a * b
                    };
                    out.data[idx] = &out.data[idx] + &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        self.try_mul(other).expect("conformable matrices")
    }

    pub fn try_add(&self, other: &CycMatrix) -> Result<CycMatrix, CycError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CycError::Dimension("addition of different shapes".into()));
        }
        let (x, y) = self.lift_pair(other);
        let data = x.data.iter().zip(&y.data).map(|(a, b)| a + b).collect();
        Ok(CycMatrix {
            rows: x.rows,
            cols: x.cols,
            n: x.n,
            data,
        })
    }

    pub fn add(&self, other: &CycMatrix) -> CycMatrix {
        self.try_add(other).expect("same shape")
    }

    pub fn sub(&self, other: &CycMatrix) -> CycMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycMatrix {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> CycMatrix {
        let m = self.n.lcm(&c.conductor());
        let c = c.embed(m).unwrap();
        let base = self.embed(m).unwrap();
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            n: m,
            data: base.data.iter().map(|x| x * &c).collect(),
        }
    }

    pub fn transpose(&self) -> CycMatrix {
        let mut out = CycMatrix::zeros(self.cols, self.rows, self.n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Entrywise complex conjugation.
    pub fn conj(&self) -> CycMatrix {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            data: self.data.iter().map(CycNum::conj).collect(),
        }
    }

    /// Block `(i, j)` of the result is `self[i, j] · other`.
    pub fn kron(&self, other: &CycMatrix) -> CycMatrix {
        let (x, y) = self.lift_pair(other);
        let rows = x.rows * y.rows;
        let cols = x.cols * y.cols;
        let mut out = CycMatrix::zeros(rows, cols, x.n);
        for i in 0..x.rows {
            for j in 0..x.cols {
                let a = x.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..y.rows {
                    for l in 0..y.cols {
                        let b = y.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * y.rows + k) * cols + j * y.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// The submatrix of rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> CycMatrix {
        let mut out = CycMatrix::zeros(r1 - r0, c1 - c0, self.n);
        for i in r0..r1 {
            for j in c0..c1 {
                out.data[(i - r0) * (c1 - c0) + (j - c0)] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Places `b` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &CycMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn column(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero(self.n);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn from_columns(n: u32, rows: usize, cols: &[Vec<CycNum>]) -> CycMatrix {
        let mut m = CycMatrix::zeros(rows, cols.len(), n);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn pow(&self, e: u32) -> CycMatrix {
        let mut acc = CycMatrix::identity(self.rows, self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Gauss–Jordan elimination over the field.
    pub fn inverse(&self) -> Result<CycMatrix, CycError> {
        if !self.is_square() {
            return Err(CycError::Dimension("inverse of a non-square matrix".into()));
        }
        let size = self.rows;
        let mut a = self.clone();
        let mut inv = CycMatrix::identity(size, self.n);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !a.get(r, col).is_zero()) else {
                return Err(CycError::Singular {
                    rows: size,
                    cols: size,
                    determinant: "0".into(),
                });
            };
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let p_inv = a.get(col, col).inv()?;
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..size {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.row_sub_scaled(r, col, &f);
                    inv.row_sub_scaled(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> CycNum {
        assert!(self.is_square());
        let size = self.rows;
        let mut a = self.clone();
        let mut det = CycNum::one(self.n);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !a.get(r, col).is_zero()) else {
                return CycNum::zero(self.n);
            };
            if piv != col {
                a.swap_rows(col, piv);
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = &det * &p;
            let p_inv = p.inv().expect("nonzero pivot");
            for r in (col + 1)..size {
                if !a.get(r, col).is_zero() {
                    let f = a.get(r, col) * &p_inv;
                    a.row_sub_scaled(r, col, &f);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &CycNum) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            if !self.data[idx].is_zero() {
                self.data[idx] = &self.data[idx] * c;
            }
        }
    }

    /// `row[r] -= f · row[src]`.
    fn row_sub_scaled(&mut self, r: usize, src: usize, f: &CycNum) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let d = s * f;
            let idx = r * self.cols + j;
            self.data[idx] = &self.data[idx] - &d;
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (CycMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(piv) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(row, piv);
            let p_inv = a.get(row, col).inv().expect("nonzero pivot");
            a.scale_row(row, &p_inv);
            for r in 0..a.rows {
                if r != row && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.row_sub_scaled(r, row, &f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<CycNum>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CycNum::zero(self.n); self.cols];
                v[f] = CycNum::one(self.n);
                for (row, &p) in pivots.iter().enumerate() {
                    let x = r.get(row, f);
                    if !x.is_zero() {
                        v[p] = -x;
                    }
                }
                v
            })
            .collect()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, other.cols);
        let (x, y) = self.lift_pair(other);
        let mut data = x.data;
        data.extend(y.data);
        CycMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            n: x.n,
            data,
        }
    }

    /// Nested `[row][col]` serializable entries.
    pub fn to_repr(&self) -> Vec<Vec<CycNumRepr>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_repr()).collect())
            .collect()
    }

    pub fn from_repr(rows: &[Vec<CycNumRepr>]) -> Result<CycMatrix, CycError> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(CycNum::from_repr).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let n = entries
            .iter()
            .flatten()
            .map(CycNum::conductor)
            .fold(1, |a, b| a.lcm(&b));
        if entries.windows(2).any(|w| w[0].len() != w[1].len()) || entries.is_empty() {
            return Err(CycError::Malformed("ragged or empty matrix".into()));
        }
        Ok(CycMatrix::from_rows(n, entries))
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Solves for the coordinates of `v` in the span of the columns of `basis`,
/// returning `None` when `v` is outside the span.
pub fn solve_in_span(basis: &[Vec<CycNum>], v: &[CycNum], n: u32) -> Option<Vec<CycNum>> {
    let rows = v.len();
    let mut aug = CycMatrix::zeros(rows, basis.len() + 1, n);
    for (j, col) in basis.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            aug.set(i, j, x.clone());
        }
    }
    for (i, x) in v.iter().enumerate() {
        aug.set(i, basis.len(), x.clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&basis.len()) {
        return None;
    }
    let mut out = vec![CycNum::zero(aug.n); basis.len()];
    for (row, &p) in pivots.iter().enumerate() {
        out[p] = r.get(row, basis.len()).clone();
    }
    Some(out)
}
