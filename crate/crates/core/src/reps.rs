//! Representations of `F_2` over cyclotomic fields: the builtin catalogue,
//! word evaluation, the oriented-characteristic criterion, witness solving,
//! image closure and kernel membership.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycError, CycMatrix, CycNum, CycNumRepr};
use crate::farey::{self, Slope};
use crate::kernels::RationalEchelon;
use crate::words::{self, Automorphism, Gen, Letter, Word};

#[derive(Debug, Error, PartialEq)]
pub enum RepError {
    #[error("image of {0} is not an invertible square matrix of the common size")]
    BadGenerator(char),
    #[error("unknown representation `{0}`")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no verified characteristic witness: {0}")]
    MissingWitness(String),
    #[error("image has more than {bound} elements")]
    Overflow { bound: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// A homomorphism `F_2 → GL(n)` given by the images of `a` and `b`, which
/// are invertible and share one conductor.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep {
    name: String,
    img_a: CycMatrix,
    img_b: CycMatrix,
    inv_a: CycMatrix,
    inv_b: CycMatrix,
}

impl Rep {
    pub fn new(name: impl Into<String>, img_a: CycMatrix, img_b: CycMatrix) -> Result<Rep, RepError> {
        let n = img_a.conductor().max(1);
        let m = img_b.conductor().max(1);
        let cond = num_integer::lcm(n, m);
        let img_a = img_a.embed(cond)?;
        let img_b = img_b.embed(cond)?;
        if !img_a.is_square() {
            return Err(RepError::BadGenerator('a'));
        }
        if !img_b.is_square() || img_b.rows() != img_a.rows() {
            return Err(RepError::BadGenerator('b'));
        }
        let inv_a = img_a.inverse().map_err(|_| RepError::BadGenerator('a'))?;
        let inv_b = img_b.inverse().map_err(|_| RepError::BadGenerator('b'))?;
        Ok(Rep {
            name: name.into(),
            img_a,
            img_b,
            inv_a,
            inv_b,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Rep {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.img_a.rows()
    }

    pub fn conductor(&self) -> u32 {
        self.img_a.conductor()
    }

    pub fn img_a(&self) -> &CycMatrix {
        &self.img_a
    }

    pub fn img_b(&self) -> &CycMatrix {
        &self.img_b
    }

    pub fn image(&self, l: Letter) -> &CycMatrix {
        match (l.gen, l.sign() > 0) {
            (Gen::A, true) => &self.img_a,
            (Gen::A, false) => &self.inv_a,
            (Gen::B, true) => &self.img_b,
            (Gen::B, false) => &self.inv_b,
        }
    }

    /// The product of generator images along `w`.
    pub fn evaluate(&self, w: &Word) -> CycMatrix {
        let mut acc = CycMatrix::identity(self.dim(), self.conductor());
        for &(g, e) in w.runs() {
            let base = match (g, e > 0) {
                (Gen::A, true) => &self.img_a,
                (Gen::A, false) => &self.inv_a,
                (Gen::B, true) => &self.img_b,
                (Gen::B, false) => &self.inv_b,
            };
            acc = acc.mul(&base.pow(e.unsigned_abs() as u32));
        }
        acc
    }

    /// The same rep with every entry lifted to conductor `m`.
    pub fn embed(&self, m: u32) -> Result<Rep, RepError> {
        Rep::new(self.name.clone(), self.img_a.embed(m)?, self.img_b.embed(m)?)
    }

    pub fn to_record(&self) -> RepRecord {
        RepRecord {
            name: self.name.clone(),
            n: self.dim(),
            conductor: self.conductor(),
            img_a: self.img_a.to_repr(),
            img_b: self.img_b.to_repr(),
        }
    }

    pub fn from_record(r: &RepRecord) -> Result<Rep, RepError> {
        Rep::new(
            r.name.clone(),
            CycMatrix::from_repr(&r.img_a)?,
            CycMatrix::from_repr(&r.img_b)?,
        )
    }
}

/// Serialized form `{name, n, conductor, img_a, img_b}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepRecord {
    pub name: String,
    pub n: usize,
    pub conductor: u32,
    pub img_a: Vec<Vec<CycNumRepr>>,
    pub img_b: Vec<Vec<CycNumRepr>>,
}

/// Kronecker product on generator images.
pub fn tensor(x: &Rep, y: &Rep) -> Rep {
    Rep::new(
        format!("{}*{}", x.name, y.name),
        x.img_a.kron(&y.img_a),
        x.img_b.kron(&y.img_b),
    )
    .expect("Kronecker product of invertible matrices is invertible")
}

/// Entrywise complex conjugate.
pub fn conj_rep(x: &Rep) -> Rep {
    let name = match x.name.strip_prefix("conj:") {
        Some(inner) => inner.to_string(),
        None => format!("conj:{}", x.name),
    };
    Rep::new(name, x.img_a.conj(), x.img_b.conj()).expect("conjugation preserves invertibility")
}

/// Matrices `M1, M2, M−` realizing `ψ1`, `ψ2` and `ψ−` by (conjugate-)inner
/// automorphisms of `GL(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharWitness {
    pub m1: CycMatrix,
    pub m2: CycMatrix,
    pub m_minus: CycMatrix,
}

impl CharWitness {
    /// Witness for the tensor product: each slot is a Kronecker product, since
    /// every defining equation is multiplicative in the rep and `conj`
    /// distributes over `⊗`.
    pub fn tensor(&self, other: &CharWitness) -> CharWitness {
        CharWitness {
            m1: self.m1.kron(&other.m1),
            m2: self.m2.kron(&other.m2),
            m_minus: self.m_minus.kron(&other.m_minus),
        }
    }

    /// Witness for the conjugate rep: conjugate every slot.
    pub fn conj(&self) -> CharWitness {
        CharWitness {
            m1: self.m1.conj(),
            m2: self.m2.conj(),
            m_minus: self.m_minus.conj(),
        }
    }
}

/// One defining equation of the criterion, or an invertibility requirement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CharEquation {
    /// `M1 = ρ(a) M1 ρ(b)`
    OneA,
    /// `M1 ρ(a) = ρ(b) M1`
    OneB,
    /// `M2 ρ(a) = ρ(a) M2`
    TwoA,
    /// `M2 ρ(b) = ρ(ab) M2`
    TwoB,
    /// `M− = ρ(a) M− conj(ρ(a))`
    MinusA,
    /// `M− conj(ρ(b)) = ρ(b) M−`
    MinusB,
    /// a witness slot has the wrong size
    Shape,
    /// a witness slot is singular
    Invertible,
}

impl fmt::Display for CharEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CharEquation::OneA => "M1 = ρ(a)·M1·ρ(b)",
            CharEquation::OneB => "M1·ρ(a) = ρ(b)·M1",
            CharEquation::TwoA => "M2·ρ(a) = ρ(a)·M2",
            CharEquation::TwoB => "M2·ρ(b) = ρ(ab)·M2",
            CharEquation::MinusA => "M− = ρ(a)·M−·conj(ρ(a))",
            CharEquation::MinusB => "M−·conj(ρ(b)) = ρ(b)·M−",
            CharEquation::Shape => "witness size matches the rep",
            CharEquation::Invertible => "witness matrices are invertible",
        };
        f.write_str(s)
    }
}

/// Outcome of [`check_characteristic`]; empty `failures` means it passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharCheck {
    pub failures: Vec<CharEquation>,
}

impl CharCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies the six criterion equations exactly.
pub fn check_characteristic(rep: &Rep, w: &CharWitness) -> CharCheck {
    let n = rep.dim();
    let slots = [&w.m1, &w.m2, &w.m_minus];
    if slots.iter().any(|m| m.rows() != n || m.cols() != n) {
        return CharCheck {
            failures: vec![CharEquation::Shape],
        };
    }
    let (ra, rb) = (&rep.img_a, &rep.img_b);
    let (m1, m2, mm) = (&w.m1, &w.m2, &w.m_minus);
    let checks = [
        (CharEquation::OneA, m1.same_value(&ra.mul(m1).mul(rb))),
        (CharEquation::OneB, m1.mul(ra).same_value(&rb.mul(m1))),
        (CharEquation::TwoA, m2.mul(ra).same_value(&ra.mul(m2))),
        (CharEquation::TwoB, m2.mul(rb).same_value(&ra.mul(rb).mul(m2))),
        (CharEquation::MinusA, mm.same_value(&ra.mul(mm).mul(&ra.conj()))),
        (CharEquation::MinusB, mm.mul(&rb.conj()).same_value(&rb.mul(mm))),
        (
            CharEquation::Invertible,
            slots.iter().all(|m| !m.determinant().is_zero()),
        ),
    ];
    CharCheck {
        failures: checks.iter().filter(|(_, ok)| !ok).map(|(e, _)| *e).collect(),
    }
}

/// Coefficient matrix of `X ↦ Σ L·X·R` on column-stacked `vec(X)`.
fn vec_operator(n: usize, cond: u32, terms: &[(CycMatrix, CycMatrix)]) -> CycMatrix {
    terms.iter().fold(CycMatrix::zeros(n * n, n * n, cond), |acc, (l, r)| {
        acc.add(&r.transpose().kron(l).embed(cond).expect("conductor"))
    })
}

fn unvec(n: usize, cond: u32, v: &[CycNum]) -> CycMatrix {
    let mut m = CycMatrix::zeros(n, n, cond);
    for c in 0..n {
        for r in 0..n {
            m.set(r, c, v[c * n + r].clone());
        }
    }
    m
}

/// Basis of the solutions `X` of the linear equations `Σ L·X·R = 0`.
fn solve_linear(n: usize, cond: u32, equations: &[Vec<(CycMatrix, CycMatrix)>]) -> Vec<CycMatrix> {
    let blocks: Vec<CycMatrix> = equations.iter().map(|t| vec_operator(n, cond, t)).collect();
    let system = blocks[1..].iter().fold(blocks[0].clone(), |acc, b| acc.vstack(b));
    system.nullspace().iter().map(|v| unvec(n, cond, v)).collect()
}

/// Some invertible member of the span of `basis`, searched deterministically:
/// single basis elements first, then small integer combinations.
fn invertible_point(basis: &[CycMatrix], seed: u64) -> Option<CycMatrix> {
    if let Some(m) = basis.iter().find(|m| !m.determinant().is_zero()) {
        return Some(m.clone());
    }
    if basis.len() < 2 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let combo = basis
            .iter()
            .fold(basis[0].scale(&CycNum::zero(basis[0].conductor())), |acc, m| {
                let c: i64 = rng.gen_range(-4..=4);
                acc.add(&m.scale(&CycNum::from_int(m.conductor(), c)))
            });
        if !combo.determinant().is_zero() {
            return Some(combo);
        }
    }
    None
}

/// Solves the three witness conditions as linear systems in the entries of
/// `M1`, `M2`, `M−` and returns an invertible solution when one is found.
/// The `M−` system is linear over the field because `conj` only touches the
/// known images.
pub fn solve_witness(rep: &Rep) -> Option<CharWitness> {
    let n = rep.dim();
    let c = rep.conductor();
    let id = CycMatrix::identity(n, c);
    let (ra, rb) = (rep.img_a.clone(), rep.img_b.clone());
    let neg = |m: &CycMatrix| m.neg();
    let m1_sys = vec![
        vec![(id.clone(), id.clone()), (neg(&ra), rb.clone())],
        vec![(id.clone(), ra.clone()), (neg(&rb), id.clone())],
    ];
    let m2_sys = vec![
        vec![(id.clone(), ra.clone()), (neg(&ra), id.clone())],
        vec![(id.clone(), rb.clone()), (neg(&ra.mul(&rb)), id.clone())],
    ];
    let mm_sys = vec![
        vec![(id.clone(), id.clone()), (neg(&ra), ra.conj())],
        vec![(id.clone(), rb.conj()), (neg(&rb), id.clone())],
    ];
    let m1 = invertible_point(&solve_linear(n, c, &m1_sys), 1)?;
    let m2 = invertible_point(&solve_linear(n, c, &m2_sys), 2)?;
    let m_minus = invertible_point(&solve_linear(n, c, &mm_sys), 3)?;
    Some(CharWitness { m1, m2, m_minus })
}

/// The finite image group with a word for each element.
#[derive(Clone, Debug)]
pub struct FiniteImage {
    pub elements: Vec<CycMatrix>,
    pub words: Vec<Word>,
}

impl FiniteImage {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub const DEFAULT_IMAGE_BOUND: usize = 1_000_000;

/// Breadth-first closure of `{ρ(a), ρ(b)}` under right multiplication by the
/// generators and their inverses. Words are shortlex-minimal.
pub fn image_closure(rep: &Rep, bound: usize) -> Result<FiniteImage, RepError> {
    let id = CycMatrix::identity(rep.dim(), rep.conductor());
    let mut seen: HashMap<CycMatrix, usize> = HashMap::new();
    seen.insert(id.clone(), 0);
    let mut out = FiniteImage {
        elements: vec![id],
        words: vec![Word::identity()],
    };
    let mut head = 0;
    while head < out.elements.len() {
        for l in Letter::ALL {
            let next = out.elements[head].mul(rep.image(l));
            if seen.contains_key(&next) {
                continue;
            }
            if out.elements.len() == bound {
                return Err(RepError::Overflow { bound });
            }
            seen.insert(next.clone(), out.elements.len());
            out.words.push(out.words[head].mul(&Word::from_letters([l])));
            out.elements.push(next);
        }
        head += 1;
    }
    Ok(out)
}

/// Rational coordinates of a matrix in the power basis, entry by entry.
pub fn flatten_matrix(m: &CycMatrix) -> Vec<BigRational> {
    m.entries().iter().flat_map(|x| x.coeffs().iter().cloned()).collect()
}

/// Rank over `Z` of the additive group generated by the image. The group is
/// a finitely generated subgroup of a `Q`-vector space, so its rank is the
/// rank over `Q` of the flattened matrices.
pub fn additive_span_rank(rep: &Rep, bound: usize) -> Result<usize, RepError> {
    let img = image_closure(rep, bound)?;
    let mut ech = RationalEchelon::default();
    for m in &img.elements {
        ech.insert_rational(&mut flatten_matrix(m));
    }
    Ok(ech.rank())
}

/// `P_k ⊂ ker ρ`. For a characteristic rep this follows from `ρ(a^k) = I`,
/// because the kernel is then a characteristic subgroup containing one
/// primitive `k`-th power. The generator words of the closed quotients and
/// random primitive powers are sampled as a second line of evidence.
pub fn kernel_contains_pk(rep: &Rep, witness: &CharWitness, k: u32, seed: u64) -> Result<bool, RepError> {
    let check = check_characteristic(rep, witness);
    if !check.passed() {
        return Err(RepError::MissingWitness(format!(
            "{} fails {}",
            rep.name, check.failures[0]
        )));
    }
    if k == 0 {
        return Err(RepError::InvalidParameter("k must be positive".into()));
    }
    if !rep.evaluate(&Word::power_of(Gen::A, k as i64)).is_identity() {
        return Ok(false);
    }
    if k >= 2 {
        let gens = farey::normal_generators(k.min(5), farey::DEFAULT_RADIUS)
            .map_err(|e| RepError::InvalidParameter(e.to_string()))?;
        for g in gens {
            if !rep.evaluate(&g.base.pow(k as i64)).is_identity() {
                return Ok(false);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let w = words::random_primitive(&mut rng, 8);
        if !rep.evaluate(&w.pow(k as i64)).is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The automorphism `ψ ∘ ψ2^k ∘ ψ⁻¹` with `ψ = outer_rep(s)`: a `k`-fold twist
/// fixing the primitive word of slope `s`.
pub fn multitwist(s: &Slope, k: i64) -> Automorphism {
    let psi = farey::outer_rep(s);
    psi.compose(&Automorphism::psi2().pow(k)).compose(&psi.inverse())
}

/// When `ρ(w^k) = I` for the primitive word `w` of slope `s`, the twist of
/// [`multitwist`] must act trivially on the image; checked on random words.
pub fn multitwist_check(rep: &Rep, s: &Slope, k: i64, samples: usize, seed: u64) -> Result<bool, RepError> {
    let w = farey::primitive_word(s);
    if !rep.evaluate(&w.pow(k)).is_identity() {
        return Err(RepError::Precondition(format!("ρ(({w})^{k}) is not the identity")));
    }
    let twist = multitwist(s, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let h = words::random_word(&mut rng, 12);
        if !rep.evaluate(&twist.apply(&h)).same_value(&rep.evaluate(&h)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parses a matrix entry such as `-2w-1`, `i+1`, `w^2` or `-3/2`; any
/// letter stands for `ζ_n`.
pub fn parse_entry(n: u32, s: &str) -> CycNum {
    let s: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut acc = CycNum::zero(n);
    let mut i = 0;
    let read_int = |i: &mut usize| -> Option<i64> {
        let start = *i;
        while *i < s.len() && s[*i].is_ascii_digit() {
            *i += 1;
        }
        (start < *i).then(|| s[start..*i].iter().collect::<String>().parse().unwrap())
    };
    while i < s.len() {
        let mut sign = 1;
        if s[i] == '+' || s[i] == '-' {
            sign = if s[i] == '-' { -1 } else { 1 };
            i += 1;
        }
        let num = read_int(&mut i);
        let mut den = 1;
        if i < s.len() && s[i] == '/' {
            i += 1;
            den = read_int(&mut i).expect("denominator");
        }
        let mut exp = 0;
        if i < s.len() && s[i].is_alphabetic() {
            i += 1;
            exp = 1;
            if i < s.len() && s[i] == '^' {
                i += 1;
                exp = read_int(&mut i).expect("exponent");
            }
        }
        let coeff = CycNum::from_ratio(n, sign * num.unwrap_or(1), den);
        acc = &acc + &(&coeff * &CycNum::zeta_pow(n, exp));
    }
    acc
}

/// A matrix from whitespace-separated entry strings, one string per row.
pub fn parse_matrix(n: u32, rows: &[&str]) -> CycMatrix {
    CycMatrix::from_rows(
        n,
        rows.iter()
            .map(|r| r.split_whitespace().map(|e| parse_entry(n, e)).collect())
            .collect(),
    )
}

/// The builtin catalogue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Rho2,
    RhoOdd(u32),
    Rho4,
    Rho6,
    TildeRhoOdd(u32),
    TildeRho4,
    TildeRho6,
    TildeTildeRho4,
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Rho2 => write!(f, "rho2"),
            Builtin::RhoOdd(k) => write!(f, "rho_odd:{k}"),
            Builtin::Rho4 => write!(f, "rho4"),
            Builtin::Rho6 => write!(f, "rho6"),
            Builtin::TildeRhoOdd(k) => write!(f, "trho_odd:{k}"),
            Builtin::TildeRho4 => write!(f, "trho4"),
            Builtin::TildeRho6 => write!(f, "trho6"),
            Builtin::TildeTildeRho4 => write!(f, "ttrho4"),
        }
    }
}

impl FromStr for Builtin {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Builtin, RepError> {
        let odd = |arg: &str, min: u32| -> Result<u32, RepError> {
            let k: u32 = arg
                .parse()
                .map_err(|_| RepError::InvalidParameter(format!("`{arg}` is not an integer")))?;
            if k.is_multiple_of(2) || k < min {
                return Err(RepError::InvalidParameter(format!(
                    "k = {k} must be odd and at least {min}"
                )));
            }
            Ok(k)
        };
        match s.split_once(':') {
            Some(("rho_odd", k)) => Ok(Builtin::RhoOdd(odd(k, 3)?)),
            Some(("trho_odd", k)) => Ok(Builtin::TildeRhoOdd(odd(k, 5)?)),
            None => match s {
                "rho2" => Ok(Builtin::Rho2),
                "rho4" => Ok(Builtin::Rho4),
                "rho6" => Ok(Builtin::Rho6),
                "trho4" => Ok(Builtin::TildeRho4),
                "trho6" => Ok(Builtin::TildeRho6),
                "ttrho4" => Ok(Builtin::TildeTildeRho4),
                _ => Err(RepError::UnknownName(s.into())),
            },
            _ => Err(RepError::UnknownName(s.into())),
        }
    }
}

/// Columns `e_{j+1} − e_{k−j}` for `1 ≤ j ≤ (k−3)/2`.
pub fn odd_extension_columns(k: u32) -> Vec<Vec<CycNum>> {
    let k = k as usize;
    (1..=(k - 3) / 2)
        .map(|j| {
            let mut v = vec![CycNum::zero(k as u32); k];
            v[j] = CycNum::one(k as u32);
            v[k - j - 1] = CycNum::from_int(k as u32, -1);
            v
        })
        .collect()
}

/// `[[x(a), 0], [0, I]]` and `[[x(b), B], [0, I]]`.
fn block_extension(base: &Rep, cols: &[Vec<CycNum>], name: String) -> Rep {
    let n = base.dim();
    let m = cols.len();
    let c = base.conductor();
    let mut a = CycMatrix::identity(n + m, c);
    a.set_block(0, 0, base.img_a());
    let mut b = CycMatrix::identity(n + m, c);
    b.set_block(0, 0, base.img_b());
    b.set_block(0, n, &CycMatrix::from_columns(c, n, cols));
    Rep::new(name, a, b).expect("unipotent block extension is invertible")
}

const TRHO6_M1: [&str; 12] = [
    "0 0 0 0 0 0 1 1 1 0 0 -1/2",
    "0 0 0 0 0 0 1 w w^2 0 0 1",
    "0 0 0 0 0 0 1 w^2 w 0 0 1",
    "0 0 0 1 1 1 0 0 0 0 0 0",
    "0 0 0 1 w w^2 0 0 0 0 -2w-1 0",
    "0 0 0 1 w^2 w 0 0 0 0 2w+1 0",
    "1 1 1 0 0 0 0 0 0 1 0 0",
    "1 w w^2 0 0 0 0 0 0 -1 0 0",
    "1 w^2 w 0 0 0 0 0 0 -1 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 -3/2",
    "0 0 0 0 0 0 0 0 0 0 -2w-1 0",
    "0 0 0 0 0 0 0 0 0 -2 0 0",
];

const TRHO6_M2: [&str; 12] = [
    "0 0 0 1 0 0 0 0 0 0 0 0",
    "0 0 0 0 1 0 0 0 0 0 0 0",
    "0 0 0 0 0 w^2 0 0 0 0 0 0",
    "1 0 0 0 0 0 0 0 0 0 0 0",
    "0 1 0 0 0 0 0 0 0 0 0 0",
    "0 0 w^2 0 0 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 1 0 0 0 0 0",
    "0 0 0 0 0 0 0 1 0 0 0 0",
    "0 0 0 0 0 0 0 0 w^2 0 0 0",
    "0 0 0 0 0 0 0 0 0 0 -1 0",
    "0 0 0 0 0 0 0 0 0 -1 0 0",
    "0 0 0 0 0 0 0 0 0 0 0 w^2",
];

const TRHO4_M1: [&str; 4] = ["2 2i i-1 -i-1", "2i 2 -i+1 -i-1", "0 0 2i-2 0", "0 0 0 -2i-2"];

const TTRHO4_B: [&str; 9] = [
    "0 0 0 0 0 1 1 0 0",
    "0 0 0 0 -1 0 0 1 0",
    "0 0 0 0 0 0 1 0 1",
    "0 0 0 0 0 0 0 1 0",
    "0 -1 -1 0 0 0 0 0 0",
    "1 0 0 -1 0 0 0 0 0",
    "0 0 -1 0 0 0 0 0 0",
    "0 0 0 -1 0 0 0 0 -1",
    "0 0 0 0 0 0 0 0 1",
];

const TTRHO4_M1: [&str; 9] = [
    "2 2i i-1 -i-1 -2i 2 i+1 i-1 i-1",
    "2i 2 -i+1 -i-1 2 -2i -i-1 i-1 i-1",
    "0 0 2i-2 0 0 0 2i+2 0 2",
    "0 0 0 -2i-2 0 0 0 2i-2 -2",
    "-2i 2 i+1 i-1 2 2i i-1 -i-1 -i-1",
    "2 -2i -i-1 i-1 2i 2 -i+1 -i-1 i+1",
    "0 0 2i+2 0 0 0 2i-2 0 -2",
    "0 0 0 2i-2 0 0 0 -2i-2 -2",
    "0 0 0 0 0 0 0 0 4",
];

fn diag_of(n: u32, entries: &str) -> CycMatrix {
    let d: Vec<CycNum> = entries.split_whitespace().map(|e| parse_entry(n, e)).collect();
    CycMatrix::diag(n, &d)
}

impl Builtin {
    /// The builtins with small parameters, one per family.
    pub fn catalogue() -> Vec<Builtin> {
        vec![
            Builtin::Rho2,
            Builtin::RhoOdd(3),
            Builtin::RhoOdd(5),
            Builtin::RhoOdd(7),
            Builtin::Rho4,
            Builtin::Rho6,
            Builtin::TildeRhoOdd(5),
            Builtin::TildeRhoOdd(7),
            Builtin::TildeRho4,
            Builtin::TildeRho6,
            Builtin::TildeTildeRho4,
        ]
    }

    /// The `k` with `P_k` in the kernel.
    pub fn power(&self) -> u32 {
        match self {
            Builtin::Rho2 => 2,
            Builtin::RhoOdd(k) | Builtin::TildeRhoOdd(k) => *k,
            Builtin::Rho4 | Builtin::TildeRho4 | Builtin::TildeTildeRho4 => 4,
            Builtin::Rho6 | Builtin::TildeRho6 => 6,
        }
    }

    pub fn rep(&self) -> Rep {
        let name = self.to_string();
        match *self {
            Builtin::Rho2 => Rep::new(name, diag_of(1, "-1 -1 1"), diag_of(1, "1 -1 -1")),
            Builtin::RhoOdd(k) => {
                let d: Vec<CycNum> = (0..k as i64).map(|e| CycNum::zeta_pow(k, e)).collect();
                let mut b = CycMatrix::zeros(k as usize, k as usize, k);
                for i in 0..k as usize {
                    b.set(i, (i + 1) % k as usize, CycNum::one(k));
                }
                Rep::new(name, CycMatrix::diag(k, &d), b)
            }
            Builtin::Rho4 => Rep::new(name, diag_of(4, "i -i"), parse_matrix(4, &["0 1", "-1 0"])),
            Builtin::Rho6 => Ok(tensor(&Builtin::Rho2.rep(), &Builtin::RhoOdd(3).rep()).renamed(name)),
            Builtin::TildeRhoOdd(k) => Ok(block_extension(
                &Builtin::RhoOdd(k).rep(),
                &odd_extension_columns(k),
                name,
            )),
            Builtin::TildeRho4 => Ok(block_extension(
                &Builtin::Rho4.rep(),
                &[
                    vec![CycNum::one(4), CycNum::zero(4)],
                    vec![CycNum::zero(4), CycNum::one(4)],
                ],
                name,
            )),
            Builtin::TildeRho6 => {
                let col = |entries: &[(usize, i64)]| {
                    let mut v = vec![CycNum::zero(3); 9];
                    for &(i, s) in entries {
                        v[i] = CycNum::from_int(3, s);
                    }
                    v
                };
                let cols = vec![col(&[(0, 1), (2, -1)]), col(&[(3, 1), (5, -1)]), col(&[(7, 1)])];
                Ok(block_extension(&Builtin::Rho6.rep(), &cols, name))
            }
            Builtin::TildeTildeRho4 => Rep::new(name, diag_of(4, "1 -1 -i -i -1 1 i i 1"), parse_matrix(4, &TTRHO4_B)),
        }
        .expect("builtin matrices are invertible")
    }

    /// The printed witness where one exists; the Kronecker witness for `ρ6`;
    /// a solved witness for the odd extensions, whose witness is not printed.
    pub fn witness(&self) -> CharWitness {
        match *self {
            Builtin::Rho2 => CharWitness {
                m1: parse_matrix(1, &["0 0 1", "0 1 0", "1 0 0"]),
                m2: parse_matrix(1, &["0 1 0", "1 0 0", "0 0 1"]),
                m_minus: CycMatrix::identity(3, 1),
            },
            Builtin::RhoOdd(k) => {
                let n = k as usize;
                let mut m1 = CycMatrix::zeros(n, n, k);
                for i in 0..n {
                    for j in 0..n {
                        m1.set(i, j, CycNum::zeta_pow(k, (i * j) as i64));
                    }
                }
                let d: Vec<CycNum> = (0..n as i64).map(|i| CycNum::zeta_pow(k, -(i * (i - 1) / 2))).collect();
                CharWitness {
                    m1,
                    m2: CycMatrix::diag(k, &d),
                    m_minus: CycMatrix::identity(n, k),
                }
            }
            Builtin::Rho4 => CharWitness {
                m1: parse_matrix(4, &["1 i", "i 1"]),
                m2: diag_of(4, "i 1"),
                m_minus: CycMatrix::identity(2, 4),
            },
            Builtin::Rho6 => Builtin::Rho2.witness().tensor(&Builtin::RhoOdd(3).witness()),
            Builtin::TildeRhoOdd(_) => solve_witness(&self.rep()).expect("odd extension is characteristic"),
            Builtin::TildeRho4 => CharWitness {
                m1: parse_matrix(4, &TRHO4_M1),
                m2: diag_of(4, "i 1 1 i"),
                m_minus: CycMatrix::identity(4, 4),
            },
            Builtin::TildeRho6 => CharWitness {
                m1: parse_matrix(3, &TRHO6_M1),
                m2: parse_matrix(3, &TRHO6_M2),
                m_minus: CycMatrix::identity(12, 3),
            },
            Builtin::TildeTildeRho4 => CharWitness {
                m1: parse_matrix(4, &TTRHO4_M1),
                m2: diag_of(4, "1 -i -i 1 i 1 1 i 1"),
                m_minus: CycMatrix::identity(9, 4),
            },
        }
    }
}

/// Looks up a builtin by name.
pub fn builtin(name: &str) -> Result<Rep, RepError> {
    Ok(name.parse::<Builtin>()?.rep())
}
