//! Integer lattices: Smith and Hermite normal forms, rank, index, membership.
// Row operations read two rows at once, so index loops are clearer here.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Rank and nonzero elementary divisors `d₁ | d₂ | …` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Snf {
    pub rank: usize,
    pub divisors: Vec<BigInt>,
}

impl Snf {
    /// Product of the divisors: the index of the row lattice in its
    /// saturation, or in `Zⁿ` when the rank is full.
    pub fn index(&self) -> BigInt {
        self.divisors.iter().product()
    }
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Smith normal form of the matrix with the given rows and `cols` columns.
pub fn smith_normal_form(rows: &[Vec<i64>], cols: usize) -> Snf {
    smith_normal_form_big(to_big(rows), cols)
}

pub fn smith_normal_form_big(mut m: Vec<Vec<BigInt>>, cols: usize) -> Snf {
    let nrows = m.len();
    let mut t = 0;
    while t < nrows.min(cols) {
        // smallest nonzero entry in the remaining block becomes the pivot
        let Some((pi, pj)) = (t..nrows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()))
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in (t + 1)..nrows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let v = &m[t][j] * &q;
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    dirty = true;
                }
            }
            for j in (t + 1)..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold a non-multiple into the pivot row
            let bad = ((t + 1)..nrows)
                .flat_map(|i| ((t + 1)..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        t += 1;
    }
    let divisors: Vec<BigInt> = (0..t).map(|i| m[i][i].abs()).collect();
    Snf {
        rank: divisors.len(),
        divisors,
    }
}

/// Row-style Hermite normal form: nonzero rows with positive pivots, strictly
/// increasing pivot columns and entries above pivots reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        // gcd-combine every lower row into row r
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            if m[r][c].is_zero() {
                m.swap(r, i);
                continue;
            }
            let e = m[r][c].extended_gcd(&m[i][c]);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let u = &m[r][c] / &g;
            let v = &m[i][c] / &g;
            for j in c..cols {
                let a = m[r][j].clone();
                let b = m[i][j].clone();
                m[r][j] = &x * &a + &y * &b;
                m[i][j] = &u * &b - &v * &a;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                for j in c..cols {
                    let v = &m[r][j] * &q;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Rank over `Q` by incremental elimination.
pub fn rational_rank(vectors: &[Vec<BigInt>]) -> usize {
    let mut basis = RationalEchelon::default();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

/// An echelon basis over `Q` that grows one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct RationalEchelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl RationalEchelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`; true when it was independent of the current rows.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut w: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        self.insert_rational(&mut w)
    }

    pub fn insert_rational(&mut self, w: &mut [BigRational]) -> bool {
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        let row: Vec<BigRational> = w.iter().map(|x| x * &inv).collect();
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, row));
        true
    }

    /// Whether `v` lies in the rational span.
    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// A finitely generated subgroup of `Zⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntLattice {
    pub ambient_rank: usize,
    pub generators: Vec<Vec<BigInt>>,
}

/// `((Re z, Im z), (Re w, Im w))`.
pub type GaussPair = ((i64, i64), (i64, i64));

impl IntLattice {
    pub fn new(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> IntLattice {
        assert!(generators.iter().all(|g| g.len() == ambient_rank), "generator length");
        IntLattice {
            ambient_rank,
            generators,
        }
    }

    pub fn from_i64(ambient_rank: usize, generators: &[Vec<i64>]) -> IntLattice {
        IntLattice::new(ambient_rank, to_big(generators))
    }

    /// `Z[i]²` coordinates `(z, w)` flattened to `(Re z, Im z, Re w, Im w)`.
    pub fn from_gaussian_pairs(pairs: &[GaussPair]) -> IntLattice {
        let rows: Vec<Vec<i64>> = pairs.iter().map(|&((a, b), (c, d))| vec![a, b, c, d]).collect();
        IntLattice::from_i64(4, &rows)
    }

    pub fn hnf(&self) -> Vec<Vec<BigInt>> {
        hermite_normal_form(&self.generators, self.ambient_rank)
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.generators)
    }

    /// The same lattice with its Hermite basis as generators.
    pub fn reduced(&self) -> IntLattice {
        IntLattice::new(self.ambient_rank, self.hnf())
    }

    /// Adds generators in batches, keeping the basis reduced in between so
    /// entries stay small.
    pub fn from_stream(ambient_rank: usize, vectors: impl IntoIterator<Item = Vec<BigInt>>) -> IntLattice {
        const BATCH: usize = 32;
        let mut basis: Vec<Vec<BigInt>> = Vec::new();
        let mut pending: Vec<Vec<BigInt>> = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), ambient_rank, "generator length");
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            pending.push(v);
            if pending.len() == BATCH {
                basis.append(&mut pending);
                basis = hermite_normal_form(&basis, ambient_rank);
            }
        }
        basis.append(&mut pending);
        IntLattice::new(ambient_rank, hermite_normal_form(&basis, ambient_rank))
    }

    pub fn snf(&self) -> Snf {
        smith_normal_form_big(self.generators.clone(), self.ambient_rank)
    }

    /// Index in `Zⁿ`; `None` unless the rank is full.
    pub fn index(&self) -> Option<BigInt> {
        let s = self.snf();
        (s.rank == self.ambient_rank).then(|| s.index())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let basis = self.hnf();
        let mut w = v.to_vec();
        for row in &basis {
            let p = row.iter().position(|x| !x.is_zero()).unwrap();
            if w[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            if !(&w[p] % &row[p]).is_zero() {
                return false;
            }
            let q = &w[p] / &row[p];
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Equality as subgroups, by double inclusion.
    pub fn same_lattice(&self, other: &IntLattice) -> bool {
        self.hnf() == other.hnf()
    }

    /// The sum of two lattices.
    pub fn join(&self, other: &IntLattice) -> IntLattice {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        IntLattice::new(self.ambient_rank, g)
    }

    /// `[self : sub]` when `sub ⊂ self` has the same rank.
    pub fn index_of(&self, sub: &IntLattice) -> Option<BigInt> {
        if !self.contains_lattice(sub) {
            return None;
        }
        let basis = self.hnf();
        let pivots: Vec<usize> = basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        // coordinates of each generator of `sub` in the HNF basis
        let coords: Vec<Vec<BigInt>> = sub
            .generators
            .iter()
            .map(|g| {
                let mut w = g.clone();
                let mut c = vec![BigInt::zero(); basis.len()];
                for (k, row) in basis.iter().enumerate() {
                    let q = &w[pivots[k]] / &row[pivots[k]];
                    for (x, y) in w.iter_mut().zip(row) {
                        *x -= &q * y;
                    }
                    c[k] = q;
                }
                c
            })
            .collect();
        let s = smith_normal_form_big(coords, basis.len());
        (s.rank == basis.len()).then(|| s.index())
    }
}

/// `log₂` of a power of two.
pub fn exact_log2(n: &BigInt) -> Option<u64> {
    if !n.is_positive() {
        return None;
    }
    let bits = n.bits() - 1;
    (BigInt::one() << bits as usize == *n).then_some(bits)
}
