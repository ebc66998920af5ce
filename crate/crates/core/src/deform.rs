//! Affine deformations of a representation: the space of affable lifts, the
//! translation subspace `T`, the action of intertwiners, the eigen-analysis
//! for odd `k`, and the block extension built from an invariant subspace.
//!
//! An affable lift of `ρ` is determined by its translation parts at `a` and
//! `b`; we store those two vectors and pass `ρ` alongside.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{CycMatrix, CycNum};
use crate::farey::{self, Slope};
use crate::reps::{self, Builtin, CharWitness, Rep, RepError};
use crate::words::{self, Automorphism, Gen, Word};

#[derive(Debug, Error, PartialEq)]
pub enum DeformError {
    #[error("M·ρ(ψ⁻¹({0}))·M⁻¹ differs from ρ({0})")]
    NotInDelta(char),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("k = {0}: expected an odd k ≥ 5")]
    BadOddK(u32),
    #[error("the improved representation fails: {0}")]
    ExtensionFailed(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Translation parts `(va, vb)` of an affable lift.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffableRep {
    pub va: Vec<CycNum>,
    pub vb: Vec<CycNum>,
}

impl AffableRep {
    pub fn zero(n: usize, cond: u32) -> AffableRep {
        AffableRep {
            va: vec![CycNum::zero(cond); n],
            vb: vec![CycNum::zero(cond); n],
        }
    }

    pub fn new(va: Vec<CycNum>, vb: Vec<CycNum>) -> AffableRep {
        assert_eq!(va.len(), vb.len(), "translation parts of equal length");
        AffableRep { va, vb }
    }

    /// `R(e_i·x, 0)` style constructors take 0-based indices.
    pub fn unit(n: usize, cond: u32, in_b: bool, i: usize) -> AffableRep {
        let mut r = AffableRep::zero(n, cond);
        let slot = if in_b { &mut r.vb } else { &mut r.va };
        slot[i] = CycNum::one(cond);
        r
    }

    pub fn dim(&self) -> usize {
        self.va.len()
    }

    /// Coordinates `(va, vb)` concatenated.
    pub fn coords(&self) -> Vec<CycNum> {
        self.va.iter().chain(&self.vb).cloned().collect()
    }

    pub fn from_coords(c: &[CycNum]) -> AffableRep {
        let n = c.len() / 2;
        AffableRep::new(c[..n].to_vec(), c[n..].to_vec())
    }

    pub fn add(&self, other: &AffableRep) -> AffableRep {
        AffableRep::from_coords(&zip_with(&self.coords(), &other.coords(), |x, y| x + y))
    }

    pub fn sub(&self, other: &AffableRep) -> AffableRep {
        AffableRep::from_coords(&zip_with(&self.coords(), &other.coords(), |x, y| x - y))
    }

    pub fn scale(&self, c: &CycNum) -> AffableRep {
        AffableRep::from_coords(&self.coords().iter().map(|x| x * c).collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.va.iter().chain(&self.vb).all(CycNum::is_zero)
    }

    /// Value equality across conductors.
    pub fn same_value(&self, other: &AffableRep) -> bool {
        self.dim() == other.dim()
            && self
                .coords()
                .iter()
                .zip(other.coords())
                .all(|(x, y)| crate::cyclotomic::same_value(x, &y))
    }
}

fn zip_with(x: &[CycNum], y: &[CycNum], f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Vec<CycNum> {
    x.iter().zip(y).map(|(a, b)| f(a, b)).collect()
}

/// An element `(v, M)` of `Cⁿ ⋊ GL(n)` with `(v, M)(w, N) = (v + Mw, MN)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineElem {
    pub v: Vec<CycNum>,
    pub m: CycMatrix,
}

impl AffineElem {
    pub fn identity(n: usize, cond: u32) -> AffineElem {
        AffineElem {
            v: vec![CycNum::zero(cond); n],
            m: CycMatrix::identity(n, cond),
        }
    }

    pub fn mul(&self, other: &AffineElem) -> AffineElem {
        AffineElem {
            v: zip_with(&self.v, &self.m.mul_vec(&other.v), |x, y| x + y),
            m: self.m.mul(&other.m),
        }
    }

    pub fn inverse(&self) -> AffineElem {
        let mi = self.m.inverse().expect("affine element has invertible linear part");
        let v = mi.mul_vec(&self.v).iter().map(|x| -x).collect();
        AffineElem { v, m: mi }
    }
}

fn generator_elem(rep: &Rep, rhat: &AffableRep, g: Gen) -> AffineElem {
    match g {
        Gen::A => AffineElem {
            v: rhat.va.clone(),
            m: rep.img_a().clone(),
        },
        Gen::B => AffineElem {
            v: rhat.vb.clone(),
            m: rep.img_b().clone(),
        },
    }
}

/// The lift evaluated along `w` in the affine group.
pub fn eval_affable(rep: &Rep, rhat: &AffableRep, w: &Word) -> AffineElem {
    let ea = generator_elem(rep, rhat, Gen::A);
    let eb = generator_elem(rep, rhat, Gen::B);
    let (ia, ib) = (ea.inverse(), eb.inverse());
    w.letters()
        .fold(AffineElem::identity(rep.dim(), rep.conductor()), |acc, l| {
            let step = match (l.gen, l.inverse) {
                (Gen::A, false) => &ea,
                (Gen::A, true) => &ia,
                (Gen::B, false) => &eb,
                (Gen::B, true) => &ib,
            };
            acc.mul(step)
        })
}

/// The `n × 2n` matrix `J` with `eval_w(ρ̂) = J · (va, vb)`: the translation
/// part is linear in the lift, with one block per generator.
pub fn translation_jacobian(rep: &Rep, w: &Word) -> CycMatrix {
    let n = rep.dim();
    let c = rep.conductor();
    let mut ja = CycMatrix::zeros(n, n, c);
    let mut jb = CycMatrix::zeros(n, n, c);
    let mut prefix = CycMatrix::identity(n, c);
    for l in w.letters() {
        let target = if l.gen == Gen::A { &mut ja } else { &mut jb };
        if l.inverse {
            *target = target.sub(&prefix.mul(rep.image(l)));
        } else {
            *target = target.add(&prefix);
        }
        prefix = prefix.mul(rep.image(l));
    }
    let mut j = CycMatrix::zeros(n, 2 * n, c);
    j.set_block(0, 0, &ja);
    j.set_block(0, n, &jb);
    j
}

/// Lifts `conj_{e_i}(ρ̂) − ρ̂`: `va = (I − ρ(a))e_i`, `vb = (I − ρ(b))e_i`.
pub fn translation_basis(rep: &Rep) -> Vec<AffableRep> {
    let n = rep.dim();
    let c = rep.conductor();
    let id = CycMatrix::identity(n, c);
    let da = id.sub(rep.img_a());
    let db = id.sub(rep.img_b());
    (0..n).map(|i| AffableRep::new(da.column(i), db.column(i))).collect()
}

/// Row echelon basis over the field that grows one row at a time.
#[derive(Clone, Debug)]
struct Echelon {
    width: usize,
    cond: u32,
    rows: Vec<(usize, Vec<CycNum>)>,
}

impl Echelon {
    fn new(width: usize, cond: u32) -> Echelon {
        Echelon {
            width,
            cond,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, v: &[CycNum]) -> Vec<CycNum> {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        w
    }

    /// Inserts `v` keeping the rows fully reduced; true when independent.
    fn insert(&mut self, v: &[CycNum]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero pivot");
        let row: Vec<CycNum> = w.iter().map(|x| x * &inv).collect();
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        self.rows.push((p, row));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    fn basis(&self) -> Vec<Vec<CycNum>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// Basis of the vectors orthogonal to every row under `x ↦ Σ rᵢxᵢ`.
    fn kernel(&self) -> Vec<Vec<CycNum>> {
        let pivots = self.pivots();
        (0..self.width)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![CycNum::zero(self.cond); self.width];
                v[f] = CycNum::one(self.cond);
                for (p, row) in &self.rows {
                    if !row[f].is_zero() {
                        v[*p] = -&row[f];
                    }
                }
                v
            })
            .collect()
    }
}

/// The translation subspace `T` and the complement `S` used for standard
/// forms: `S` is the set of coordinate vectors vanishing at the pivot
/// columns of the reduced echelon basis of `T`, with coordinates ordered
/// `va` then `vb`.
#[derive(Clone, Debug)]
pub struct TranslationSpace {
    n: usize,
    ech: Echelon,
}

impl TranslationSpace {
    pub fn new(rep: &Rep) -> TranslationSpace {
        let n = rep.dim();
        let mut ech = Echelon::new(2 * n, rep.conductor());
        for t in translation_basis(rep) {
            ech.insert(&t.coords());
        }
        TranslationSpace { n, ech }
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn contains(&self, x: &AffableRep) -> bool {
        self.ech.reduce(&x.coords()).iter().all(CycNum::is_zero)
    }

    /// The unique representative of the class of `x` in `S`.
    pub fn standard_form(&self, x: &AffableRep) -> AffableRep {
        AffableRep::from_coords(&self.ech.reduce(&x.coords()))
    }

    /// Coordinates that parameterize `S`.
    pub fn free_coords(&self) -> Vec<usize> {
        let p = self.ech.pivots();
        (0..2 * self.n).filter(|c| !p.contains(c)).collect()
    }

    /// Basis of `S`: unit vectors at the free coordinates.
    pub fn standard_basis(&self, cond: u32) -> Vec<AffableRep> {
        self.free_coords()
            .into_iter()
            .map(|c| {
                let mut v = vec![CycNum::zero(cond); 2 * self.n];
                v[c] = CycNum::one(cond);
                AffableRep::from_coords(&v)
            })
            .collect()
    }

    /// Coordinates of a standard-form vector in [`Self::standard_basis`].
    pub fn s_coords(&self, x: &AffableRep) -> Vec<CycNum> {
        let c = self.standard_form(x).coords();
        self.free_coords().into_iter().map(|i| c[i].clone()).collect()
    }

    pub fn from_s_coords(&self, s: &[CycNum], cond: u32) -> AffableRep {
        let mut v = vec![CycNum::zero(cond); 2 * self.n];
        for (c, x) in self.free_coords().into_iter().zip(s) {
            v[c] = x.clone();
        }
        AffableRep::from_coords(&v)
    }
}

pub fn standard_form(rep: &Rep, x: &AffableRep) -> AffableRep {
    TranslationSpace::new(rep).standard_form(x)
}

/// The action `N_{M,ψ}` on lifts as `x ↦ L·x` (orientation-preserving `ψ`)
/// or `x ↦ L·conj(x)` (orientation-reversing `ψ`), on `(va, vb)` coordinates.
#[derive(Clone, Debug)]
pub struct NAction {
    pub matrix: CycMatrix,
    pub conjugate_linear: bool,
}

impl NAction {
    /// Checks `M·ρ(ψ⁻¹(g))·M⁻¹ = ρ(g)` on `g = a, b` (with `conj` applied to
    /// `ρ(ψ⁻¹(g))` when `ψ` reverses orientation) and assembles `L`.
    pub fn new(rep: &Rep, m: &CycMatrix, psi: &Automorphism) -> Result<NAction, DeformError> {
        let n = rep.dim();
        if m.rows() != n || m.cols() != n {
            return Err(DeformError::Dimension(format!(
                "M is {}x{}, rep has dimension {n}",
                m.rows(),
                m.cols()
            )));
        }
        let conjugate_linear = psi.orientation() < 0;
        let minv = m.inverse().map_err(RepError::from)?;
        let c = rep.conductor();
        let mut l = CycMatrix::zeros(2 * n, 2 * n, c);
        for (row0, g, name) in [(0, Word::a(), 'a'), (n, Word::b(), 'b')] {
            let pre = psi.apply_inverse(&g);
            let mut img = rep.evaluate(&pre);
            let mut jac = translation_jacobian(rep, &pre);
            if conjugate_linear {
                img = img.conj();
                jac = jac.conj();
            }
            if !m.mul(&img).mul(&minv).same_value(&rep.evaluate(&g)) {
                return Err(DeformError::NotInDelta(name));
            }
            l.set_block(row0, 0, &m.mul(&jac).embed(c).map_err(RepError::from)?);
        }
        Ok(NAction {
            matrix: l,
            conjugate_linear,
        })
    }

    pub fn apply(&self, x: &AffableRep) -> AffableRep {
        let v = if self.conjugate_linear {
            x.coords().iter().map(CycNum::conj).collect()
        } else {
            x.coords()
        };
        AffableRep::from_coords(&self.matrix.mul_vec(&v))
    }
}

pub fn n_action(rep: &Rep, m: &CycMatrix, psi: &Automorphism, x: &AffableRep) -> Result<AffableRep, DeformError> {
    Ok(NAction::new(rep, m, psi)?.apply(x))
}

/// `N_{ρ(h), ψ_h}(ρ̂) − ρ̂ ∈ T`.
pub fn inner_triviality_check(rep: &Rep, h: &Word, x: &AffableRep) -> bool {
    let act = NAction::new(rep, &rep.evaluate(h), &Automorphism::inner(h)).expect("inner pairs intertwine");
    TranslationSpace::new(rep).contains(&act.apply(x).sub(x))
}

/// The lifts killing `P_k`, as far as a finite slope budget certifies.
#[derive(Clone, Debug)]
pub struct AffableSubspace {
    /// Basis of the solution space in `(va, vb)` coordinates.
    pub basis: Vec<AffableRep>,
    /// Basis of its image in `S`, in reduced echelon form.
    pub quotient_basis: Vec<AffableRep>,
    pub translation_dim: usize,
    /// Number of slopes whose constraints were imposed.
    pub certified_budget: usize,
    /// Solution dimension after each round.
    pub dims_by_round: Vec<usize>,
    /// Whether `ρ(a^k) = I`, so that `T` lies inside the solution space.
    pub base_kills_pk: bool,
}

/// Solves `eval_{w^k}(ρ̂) = 0` for the primitive words `w` of the first
/// slopes in canonical order. Conjugates and inverses of `w^k` impose no
/// further conditions once `ρ(w^k) = I`, so one word per slope suffices.
/// The budget grows by `slope_budget` per round until the dimension has
/// stayed put for two consecutive rounds.
pub fn affable_pk_subspace(rep: &Rep, k: u32, slope_budget: usize) -> AffableSubspace {
    let n = rep.dim();
    let c = rep.conductor();
    let step = slope_budget.max(1);
    let mut constraints = Echelon::new(2 * n, c);
    let mut slopes = Slope::enumerate();
    let mut used = 0;
    let mut dims = Vec::new();
    loop {
        for s in slopes.by_ref().take(step) {
            let jac = translation_jacobian(rep, &farey::primitive_word(&s).pow(k as i64));
            for i in 0..n {
                let row: Vec<CycNum> = (0..2 * n).map(|j| jac.get(i, j).clone()).collect();
                constraints.insert(&row);
            }
            used += 1;
        }
        dims.push(2 * n - constraints.rank());
        let len = dims.len();
        if len >= 3 && dims[len - 1] == dims[len - 2] && dims[len - 2] == dims[len - 3] {
            break;
        }
    }
    let basis: Vec<AffableRep> = constraints
        .kernel()
        .iter()
        .map(|v| AffableRep::from_coords(v))
        .collect();
    let ts = TranslationSpace::new(rep);
    let quotient_basis = echelon_in_s(&ts, basis.iter().map(|b| ts.s_coords(b)), c);
    AffableSubspace {
        basis,
        quotient_basis,
        translation_dim: ts.dim(),
        certified_budget: used,
        dims_by_round: dims,
        base_kills_pk: rep.evaluate(&Word::power_of(Gen::A, k as i64)).is_identity(),
    }
}

/// Reduced echelon basis, in `S`, of the span of the given `S`-coordinate
/// vectors.
fn echelon_in_s(ts: &TranslationSpace, vs: impl Iterator<Item = Vec<CycNum>>, cond: u32) -> Vec<AffableRep> {
    let mut ech = Echelon::new(ts.free_coords().len(), cond);
    for v in vs {
        ech.insert(&v);
    }
    ech.basis().iter().map(|v| ts.from_s_coords(v, cond)).collect()
}

/// The block representation `g ↦ [[ρ(g), Q(g)], [0, I]]` whose `Q` columns
/// are the translation parts of the given lifts.
pub fn build_extension(rep: &Rep, basis: &[AffableRep], name: impl Into<String>) -> Rep {
    let n = rep.dim();
    let m = basis.len();
    let c = rep.conductor();
    let mut a = CycMatrix::identity(n + m, c);
    let mut b = CycMatrix::identity(n + m, c);
    a.set_block(0, 0, rep.img_a());
    b.set_block(0, 0, rep.img_b());
    for (j, x) in basis.iter().enumerate() {
        for i in 0..n {
            a.set(i, n + j, x.va[i].clone());
            b.set(i, n + j, x.vb[i].clone());
        }
    }
    Rep::new(name, a, b).expect("block unipotent extension is invertible")
}

/// The induced action of `N` on `S`, as a map on `S`-coordinates, together
/// with its linearity type.
fn action_on_s(ts: &TranslationSpace, act: &NAction, cond: u32) -> CycMatrix {
    let cols: Vec<Vec<CycNum>> = ts
        .standard_basis(cond)
        .iter()
        .map(|e| ts.s_coords(&act.apply(e)))
        .collect();
    CycMatrix::from_columns(cond, ts.free_coords().len(), &cols)
}

/// The largest subspace of `span(w)` (in `S`-coordinates) mapped into
/// itself by every action.
fn invariant_core(ts: &TranslationSpace, actions: &[NAction], start: Vec<Vec<CycNum>>, cond: u32) -> Vec<Vec<CycNum>> {
    let dim_s = ts.free_coords().len();
    let mats: Vec<(CycMatrix, bool)> = actions
        .iter()
        .map(|a| (action_on_s(ts, a, cond), a.conjugate_linear))
        .collect();
    let mut w = start;
    loop {
        let before = w.len();
        for (mat, conj) in &mats {
            if w.is_empty() {
                return w;
            }
            // Σ cᵢ·N(wᵢ) ∈ span(w): solve [N(w) | w]·(c, d) = 0
            let images: Vec<Vec<CycNum>> = w
                .iter()
                .map(|v| {
                    let v = if *conj {
                        v.iter().map(CycNum::conj).collect()
                    } else {
                        v.clone()
                    };
                    mat.mul_vec(&v)
                })
                .collect();
            let mut cols = images.clone();
            cols.extend(w.iter().cloned());
            let sys = CycMatrix::from_columns(cond, dim_s, &cols);
            let m = w.len();
            let mut keep = Echelon::new(dim_s, cond);
            for sol in sys.nullspace() {
                let mut coeffs: Vec<CycNum> = sol[..m].to_vec();
                if *conj {
                    coeffs = coeffs.iter().map(CycNum::conj).collect();
                }
                let mut x = vec![CycNum::zero(cond); dim_s];
                for (ci, wi) in coeffs.iter().zip(&w) {
                    for (xj, wj) in x.iter_mut().zip(wi) {
                        *xj = &*xj + &(ci * wj);
                    }
                }
                keep.insert(&x);
            }
            w = keep.basis();
        }
        if w.len() == before {
            return w;
        }
    }
}

/// One checked line of the odd-`k` eigen-analysis.
#[derive(Clone, Debug, Serialize)]
pub struct EigenItem {
    pub label: String,
    pub expected_eigenvalue: i64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct EigenReport {
    pub k: u32,
    /// `N1²` on `S`-coordinates.
    pub matrix: CycMatrix,
    pub items: Vec<EigenItem>,
    pub plus_dim: usize,
    pub minus_dim: usize,
    /// The `+k` eigenspace is spanned by the lifts `R(0, b_j)`.
    pub plus_space_is_extension_span: bool,
}

impl EigenReport {
    pub fn passed(&self) -> bool {
        let k = self.k as usize;
        self.items.iter().all(|i| i.pass)
            && self.plus_dim == (k - 3) / 2
            && self.plus_dim + self.minus_dim == k
            && self.plus_space_is_extension_span
    }
}

/// The map `N1²` for `(M1, ψ1)` over `ρ_k` on the standard space `S`, and
/// its eigenvectors with eigenvalues `±k`.
pub fn eigen_split(k: u32) -> Result<EigenReport, DeformError> {
    if k < 5 || k.is_multiple_of(2) {
        return Err(DeformError::BadOddK(k));
    }
    let b = Builtin::RhoOdd(k);
    let rep = b.rep();
    let n = k as usize;
    let ts = TranslationSpace::new(&rep);
    let act = NAction::new(&rep, &b.witness().m1, &Automorphism::psi1())?;
    let once = action_on_s(&ts, &act, k);
    let sq = once.mul(&once);
    let zero = || AffableRep::zero(n, k);
    let vb_of = |entries: &[(usize, i64)]| {
        let mut r = zero();
        for &(i, s) in entries {
            r.vb[i] = CycNum::from_int(k, s);
        }
        r
    };
    let half = (n - 3) / 2;
    let mut cases: Vec<(String, AffableRep, i64)> = Vec::new();
    for j in 1..=half {
        cases.push((
            format!("(a) R(0, e_{} - e_{})", j + 1, n - j),
            vb_of(&[(j, 1), (n - j - 1, -1)]),
            k as i64,
        ));
    }
    for j in 1..=half {
        cases.push((
            format!("(b) R(0, e_{} + e_{})", j + 1, n - j),
            vb_of(&[(j, 1), (n - j - 1, 1)]),
            -(k as i64),
        ));
    }
    cases.push((
        format!("(c) R(0, e_{})", n.div_ceil(2)),
        vb_of(&[((n - 1) / 2, 1)]),
        -(k as i64),
    ));
    cases.push(("(d) R(e_1, 0)".into(), AffableRep::unit(n, k, false, 0), -(k as i64)));
    cases.push((format!("(d) R(0, e_{n})"), vb_of(&[(n - 1, 1)]), -(k as i64)));
    let items = cases
        .into_iter()
        .map(|(label, v, ev)| {
            let x = ts.s_coords(&v);
            let image = sq.mul_vec(&x);
            let scaled: Vec<CycNum> = x.iter().map(|c| c * &CycNum::from_int(k, ev)).collect();
            let in_s = ts.standard_form(&v).same_value(&v);
            EigenItem {
                label,
                expected_eigenvalue: ev,
                pass: in_s && image == scaled,
            }
        })
        .collect();
    let dim_s = ts.free_coords().len();
    let shifted = |ev: i64| sq.sub(&CycMatrix::identity(dim_s, k).scale(&CycNum::from_int(k, ev)));
    let plus = shifted(k as i64).nullspace();
    let minus = shifted(-(k as i64)).nullspace();
    let il: Vec<Vec<CycNum>> = reps::odd_extension_columns(k)
        .into_iter()
        .map(|col| ts.s_coords(&AffableRep::new(vec![CycNum::zero(k); n], col)))
        .collect();
    let mut span = Echelon::new(dim_s, k);
    for v in &il {
        span.insert(v);
    }
    let plus_space_is_extension_span =
        span.rank() == plus.len() && plus.iter().all(|v| span.reduce(v).iter().all(CycNum::is_zero));
    Ok(EigenReport {
        k,
        matrix: sq,
        items,
        plus_dim: plus.len(),
        minus_dim: minus.len(),
        plus_space_is_extension_span,
    })
}

/// Result of the improvement pipeline.
#[derive(Clone, Debug)]
pub struct Improvement {
    pub rep: Rep,
    pub witness: CharWitness,
    pub subspace: AffableSubspace,
    /// Basis of the invariant subspace used for the extension, in `S`.
    pub invariant_basis: Vec<AffableRep>,
}

/// Lifts killing `P_k`, cut down to the part invariant under the actions of
/// `(M1, ψ1)`, `(M2, ψ2)` and `(M−, ψ−)`, then glued on as a block
/// extension. Inner automorphisms act trivially on classes, so these three
/// generate every action that matters.
pub fn improve(rep: &Rep, witness: &CharWitness, k: u32, slope_budget: usize) -> Result<Improvement, DeformError> {
    let check = reps::check_characteristic(rep, witness);
    if !check.passed() {
        return Err(RepError::MissingWitness(format!("{} fails {}", rep.name(), check.failures[0])).into());
    }
    let c = rep.conductor();
    let subspace = affable_pk_subspace(rep, k, slope_budget);
    let ts = TranslationSpace::new(rep);
    let actions = [
        NAction::new(rep, &witness.m1, &Automorphism::psi1())?,
        NAction::new(rep, &witness.m2, &Automorphism::psi2())?,
        NAction::new(rep, &witness.m_minus, &Automorphism::psi_minus())?,
    ];
    let start: Vec<Vec<CycNum>> = subspace.quotient_basis.iter().map(|x| ts.s_coords(x)).collect();
    let core = invariant_core(&ts, &actions, start, c);
    let invariant_basis = echelon_in_s(&ts, core.into_iter(), c);
    let name = format!("improve:{}", rep.name());
    let ext = build_extension(rep, &invariant_basis, name);
    let ext_witness = reps::solve_witness(&ext)
        .ok_or_else(|| DeformError::ExtensionFailed("no characteristic witness found".into()))?;
    if !reps::kernel_contains_pk(&ext, &ext_witness, k, 0)? {
        return Err(DeformError::ExtensionFailed(format!("P_{k} is not in the kernel")));
    }
    Ok(Improvement {
        rep: ext,
        witness: ext_witness,
        subspace,
        invariant_basis,
    })
}

/// Words for comparing kernels: random words, commutators, `k`-th powers of
/// random primitives and their conjugates, and commutators of those.
pub fn kernel_probe_words(k: u32, count: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = k as i64;
    (0..count)
        .map(|i| {
            let u = words::random_word(&mut rng, 8);
            let v = words::random_word(&mut rng, 8);
            let p = words::random_primitive(&mut rng, 5).pow(k);
            let q = words::random_primitive(&mut rng, 5).pow(k);
            match i % 5 {
                0 => u,
                1 => Word::commutator(&u, &v),
                2 => p.conjugate_by(&u),
                3 => Word::commutator(&p, &q.conjugate_by(&v)),
                _ => Word::commutator(&Word::commutator(&u, &v), &p),
            }
        })
        .collect()
}

/// Whether `x` and `y` have the same kernel on the probe words.
pub fn same_kernel_on(x: &Rep, y: &Rep, probes: &[Word]) -> bool {
    probes
        .iter()
        .all(|w| x.evaluate(w).is_identity() == y.evaluate(w).is_identity())
}
