//! The lattice chain showing the nine-dimensional representation `ttrho4`
//! is faithful on `F_2/P_4`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclotomic::CycMatrix;
use crate::reps::{self, Builtin, Rep, DEFAULT_IMAGE_BOUND};
use crate::words::Word;

use super::gamma::{gamma_decode, GammaCoord, GaussInt};
use super::orbit::{
    self, conjugate_orbit_blocks, kernel_normal_generators, saturated_orbit_lattice, SATURATION_ROUNDS,
};
use super::{exact_log2, GaussPair, IntLattice, KernelError};

fn word(s: &str) -> Word {
    s.parse().expect("valid word")
}

/// The auxiliary words `A`..`E` and the four generators `g0`..`g3` of the
/// torsion-free nilpotent subgroup, keyed by name.
pub fn np_words() -> BTreeMap<&'static str, Word> {
    let a = word("baBA");
    let b = word("BabA");
    let c = word("BAba");
    let d = word("a^2b").mul(&word("AB").pow(2)).mul(&word("Aba"));
    let e = word("B").mul(&word("ab").pow(2)).mul(&word("A^3Ba"));
    let g0 = e.pow(-2);
    let g1 = a.pow(4).mul(&d.pow(2));
    let g2 = a.mul(&e.pow(-2)).mul(&a.pow(-4)).mul(&b).mul(&a.inv()).mul(&b.inv());
    let g3 = a
        .pow(9)
        .mul(&c)
        .mul(&a.inv())
        .mul(&c.inv())
        .mul(&b)
        .mul(&a)
        .mul(&b.inv())
        .mul(&a.inv());
    BTreeMap::from([
        ("A", a),
        ("B", b),
        ("C", c),
        ("D", d),
        ("E", e),
        ("g0", g0),
        ("g1", g1),
        ("g2", g2),
        ("g3", g3),
    ])
}

/// `g0, g1, g2', g3` with `g2' = g2·g3·g0·g1⁻¹`. The subgroup is the same as
/// for the literal `g2`, but only `g2'` has `γ = (4, 0)` and the commutator
/// pattern below; the literal word gives `(4+4i, 0)`.
pub fn np_generators() -> [Word; 4] {
    let w = np_words();
    let g2 = w["g2"].mul(&w["g3"]).mul(&w["g0"]).mul(&w["g1"].inv());
    [w["g0"].clone(), w["g1"].clone(), g2, w["g3"].clone()]
}

/// `γ(trho4(g2))` for the literal spelling of `g2`.
pub const LITERAL_G2_GAMMA: GammaCoord = GammaCoord::new(GaussInt::new(4, 4), GaussInt::new(0, 0));

/// `conj(ρ4) ⊗ trho4`, the top-left 8×8 block of `ttrho4`. It has the same
/// kernel as `trho4`: a tensor product is trivial only when both factors are
/// scalar, and `trho4` fixes a vector.
pub fn trho4_prime() -> Rep {
    reps::tensor(&reps::conj_rep(&Builtin::Rho4.rep()), &Builtin::TildeRho4.rep()).renamed("trho4'")
}

fn gauss_lattice(pairs: &[GaussPair]) -> IntLattice {
    IntLattice::from_gaussian_pairs(pairs)
}

/// `Λ = ⟨(−1,1), (−i,−i), (−1,−1), (0,1+i)⟩` in `(z, w)` coordinates.
pub fn printed_lambda() -> IntLattice {
    gauss_lattice(&[
        ((-1, 0), (1, 0)),
        ((0, -1), (0, -1)),
        ((-1, 0), (-1, 0)),
        ((0, 0), (1, 1)),
    ])
}

/// `Λ₁ = ⟨(−1,1), (−i,−i), (−1,−1), (i,−i)⟩`, from conjugates of `a²b²`.
pub fn printed_lambda1() -> IntLattice {
    gauss_lattice(&[
        ((-1, 0), (1, 0)),
        ((0, -1), (0, -1)),
        ((-1, 0), (-1, 0)),
        ((0, 1), (0, -1)),
    ])
}

/// `Λ₂ = ⟨(0,1+i), (0,1−i), (−1−i,0), (−1+i,0)⟩`, from conjugates of `ab⁻¹ab`.
pub fn printed_lambda2() -> IntLattice {
    gauss_lattice(&[
        ((0, 0), (1, 1)),
        ((0, 0), (1, -1)),
        ((-1, -1), (0, 0)),
        ((-1, 1), (0, 0)),
    ])
}

/// The expected γ-coordinates of `trho4` on [`np_generators`].
pub const NP_GAMMA: [GammaCoord; 4] = [
    GammaCoord::new(GaussInt::new(-2, -2), GaussInt::new(2, -2)),
    GammaCoord::new(GaussInt::new(-2, 2), GaussInt::new(2, 2)),
    GammaCoord::new(GaussInt::new(4, 0), GaussInt::new(0, 0)),
    GammaCoord::new(GaussInt::new(0, 0), GaussInt::new(0, 4)),
];

fn block_to_gamma(q: &CycMatrix) -> Result<GammaCoord, KernelError> {
    let mut m = CycMatrix::identity(4, 4);
    m.set_block(0, 2, &q.embed(4).map_err(reps::RepError::from)?);
    gamma_decode(&m)
}

/// γ-coordinates of `trho4(g r g⁻¹)` over the image of `ρ4`, as a sublattice
/// of `Z⁴`.
pub fn gamma_orbit_lattice(relators: &[Word], shuffle: Option<u64>) -> Result<IntLattice, KernelError> {
    let blocks = conjugate_orbit_blocks(
        &Builtin::Rho4.rep(),
        &Builtin::TildeRho4.rep(),
        relators,
        DEFAULT_IMAGE_BOUND,
        shuffle,
    )?;
    let rows = blocks
        .iter()
        .map(|q| Ok(block_to_gamma(q)?.to_vec()))
        .collect::<Result<Vec<_>, KernelError>>()?;
    Ok(IntLattice::from_i64(4, &rows).reduced())
}

/// Integer coordinates of `v` in a basis of `Z⁴`-vectors, if they exist.
fn integer_coords(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let n = basis.len();
    let dim = v.len();
    // columns are basis vectors, augmented by v
    let mut m: Vec<Vec<Rational64>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rational64> = basis.iter().map(|b| Rational64::from_integer(b[i])).collect();
            row.push(Rational64::from_integer(v[i]));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        let Some(p) = (pivot_row..dim).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][c].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r in 0..dim {
            if r != pivot_row && !m[r][c].is_zero() {
                let f = m[r][c];
                let src = m[pivot_row].clone();
                for (x, y) in m[r].iter_mut().zip(src) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut out = vec![0; n];
    for (r, &c) in pivots.iter().enumerate() {
        let x = m[r][n];
        if !x.is_integer() {
            return None;
        }
        out[c] = x.to_integer();
    }
    Some(out)
}

fn gamma_of(w: &Word) -> Result<GammaCoord, KernelError> {
    gamma_decode(&Builtin::TildeRho4.rep().evaluate(w))
}

/// Relators of a presentation of the image of `trho4`, as an extension of
/// the quaternion group by `Λ ≅ Z⁴`: words `x1..x4` in `ker ρ4` whose
/// γ-values form a basis of `Λ`, the commutators `[xi, xj]`, the conjugation
/// action `s·xi·s⁻¹ = Π xj^cj` for `s = a^{±1}, b^{±1}`, and each quaternion
/// relator rewritten as a word in the `xj`. Any group with this presentation
/// is an extension of a quotient of the quaternion group by a quotient of
/// `Z⁴`, and it maps onto the image, so it is the image.
pub fn trho4_image_relators() -> Result<Vec<Word>, KernelError> {
    let rho4 = Builtin::Rho4.rep();
    let image = reps::image_closure(&rho4, DEFAULT_IMAGE_BOUND)?;
    let lambda = printed_lambda();
    let candidates: Vec<(Word, Vec<i64>)> = image
        .words
        .iter()
        .flat_map(|g| [word("a^2b^2"), word("aBab")].map(|r| r.conjugate_by(g)))
        .map(|w| {
            let v = gamma_of(&w)?.to_vec();
            Ok((w, v))
        })
        .collect::<Result<_, KernelError>>()?;
    let count = candidates.len();
    let mut chosen = None;
    'search: for i in 0..count {
        for j in i + 1..count {
            for k in j + 1..count {
                for l in k + 1..count {
                    let pick = [i, j, k, l].map(|t| candidates[t].clone());
                    let rows: Vec<Vec<i64>> = pick.iter().map(|(_, v)| v.clone()).collect();
                    if IntLattice::from_i64(4, &rows).same_lattice(&lambda) {
                        chosen = Some(pick);
                        break 'search;
                    }
                }
            }
        }
    }
    let chosen = chosen.ok_or_else(|| KernelError::Presentation("no conjugates form a basis of Λ".into()))?;
    let basis: Vec<Vec<i64>> = chosen.iter().map(|(_, v)| v.clone()).collect();
    let xs: Vec<Word> = chosen.iter().map(|(w, _)| w.clone()).collect();
    let in_x = |target: &Word| -> Result<Word, KernelError> {
        let v = gamma_of(target)?.to_vec();
        let c = integer_coords(&basis, &v).ok_or_else(|| KernelError::Presentation(format!("{target} is not in Λ")))?;
        Ok(xs
            .iter()
            .zip(&c)
            .fold(Word::identity(), |acc, (x, &e)| acc.mul(&x.pow(e))))
    };
    let mut relators = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            relators.push(Word::commutator(&xs[i], &xs[j]));
        }
    }
    for s in ["a", "A", "b", "B"].map(word) {
        for x in &xs {
            let conj = s.mul(x).mul(&s.inv());
            relators.push(conj.mul(&in_x(&conj)?.inv()));
        }
    }
    for q in kernel_normal_generators(Builtin::Rho4).expect("quaternion relators") {
        relators.push(q.mul(&in_x(&q)?.inv()));
    }
    let trho4 = Builtin::TildeRho4.rep();
    if let Some(bad) = relators.iter().find(|r| !trho4.evaluate(r).is_identity()) {
        return Err(KernelError::NotInKernel(bad.to_string()));
    }
    Ok(relators)
}

/// One checked claim.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub step: String,
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

impl Step {
    fn new(step: &str, claim: impl Into<String>, computed: impl ToString, expected: impl ToString, pass: bool) -> Step {
        Step {
            step: step.to_string(),
            claim: claim.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaithfulReport {
    pub steps: Vec<Step>,
    /// Total exponent `e` in the bound `[ttrho4(G) : ttrho4(N_p)] ≥ 2^e`.
    pub index_exponent: Option<u64>,
}

impl FaithfulReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.pass)
    }

    pub fn failures(&self) -> Vec<&Step> {
        self.steps.iter().filter(|s| !s.pass).collect()
    }
}

fn log2_text(n: &Option<BigInt>) -> String {
    match n {
        Some(n) => match exact_log2(n) {
            Some(e) => format!("2^{e}"),
            None => n.to_string(),
        },
        None => "infinite".into(),
    }
}

/// Runs the five stages and records every comparison.
pub fn verify_faithful_p4() -> Result<FaithfulReport, KernelError> {
    let rho4 = Builtin::Rho4.rep();
    let trho4 = Builtin::TildeRho4.rep();
    let tt = Builtin::TildeTildeRho4.rep();
    let gens = np_generators();
    let mut steps = Vec::new();

    // (i) generators lie in ker ρ4
    for (i, g) in gens.iter().enumerate() {
        let ok = rho4.evaluate(g).is_identity();
        steps.push(Step::new(
            "i",
            format!("rho4(g{i}) = I"),
            if ok { "I" } else { "not I" },
            "I",
            ok,
        ));
    }

    // (ii) γ-coordinates
    let mut lambda_prime_rows = Vec::new();
    for (i, (g, expect)) in gens.iter().zip(NP_GAMMA).enumerate() {
        let got = gamma_decode(&trho4.evaluate(g));
        let pass = got.as_ref().is_ok_and(|c| *c == expect);
        let computed = match &got {
            Ok(c) => c.to_string(),
            Err(e) => e.to_string(),
        };
        if let Ok(c) = got {
            lambda_prime_rows.push(c.to_vec());
        }
        steps.push(Step::new(
            "ii",
            format!("trho4(g{i}) = gamma{expect}"),
            computed,
            expect,
            pass,
        ));
    }

    let literal = gamma_decode(&trho4.evaluate(&np_words()["g2"]));
    let literal_ok =
        literal.as_ref().is_ok_and(|c| *c == LITERAL_G2_GAMMA) && rho4.evaluate(&np_words()["g2"]).is_identity();
    steps.push(Step::new(
        "ii",
        "literal g2 lies in ker rho4 with gamma (4+4i, 0), so g2' = g2 g3 g0 g1^-1 is used",
        literal.map_or_else(|e| e.to_string(), |c| c.to_string()),
        LITERAL_G2_GAMMA,
        literal_ok,
    ));

    // (iii) indices
    let lambda_prime = IntLattice::from_i64(4, &lambda_prime_rows);
    let full = lambda_prime.index();
    steps.push(Step::new(
        "iii",
        "[Z[i]^2 : Lambda'] = 2^7",
        log2_text(&full),
        "2^7",
        full == Some(BigInt::from(128)),
    ));
    let mut relators = vec![word("a^2b^2")];
    relators.push(word("aBab"));
    let lambda = gamma_orbit_lattice(&relators, None)?;
    let lambda_ok = lambda.same_lattice(&printed_lambda());
    steps.push(Step::new(
        "iii",
        "trho4(ker rho4) = gamma(Lambda) with Lambda of index 2",
        format!("index {}", log2_text(&lambda.index())),
        "index 2^1, equal to the printed Lambda",
        lambda_ok && lambda.index() == Some(BigInt::from(2)),
    ));
    let rel = lambda.index_of(&lambda_prime);
    steps.push(Step::new(
        "iii",
        "[Lambda : Lambda'] = 2^6",
        log2_text(&rel),
        "2^6",
        rel == Some(BigInt::from(64)),
    ));

    // (iv) commutators
    let central = tt.evaluate(&Word::commutator(&Word::a(), &Word::b()).pow(2)).pow(8);
    let identity = CycMatrix::identity(9, 4);
    for (i, j, target, label) in [
        (0, 1, &identity, "I"),
        (2, 3, &identity, "I"),
        (2, 0, &central, "ttrho4([a,b]^2)^8"),
        (3, 0, &central, "ttrho4([a,b]^2)^8"),
        (1, 2, &central, "ttrho4([a,b]^2)^8"),
        (3, 1, &central, "ttrho4([a,b]^2)^8"),
    ] {
        let got = tt.evaluate(&Word::commutator(&gens[i], &gens[j]));
        let ok = got.same_value(target);
        steps.push(Step::new(
            "iv",
            format!("ttrho4([g{i},g{j}]) = {label}"),
            if ok { label } else { "different matrix" },
            label,
            ok,
        ));
    }

    // (v) index bound
    let quaternion = reps::image_closure(&rho4, DEFAULT_IMAGE_BOUND)?.order() as u64;
    let top = if gens.iter().all(|g| rho4.evaluate(g).is_identity()) {
        exact_log2(&BigInt::from(quaternion))
    } else {
        None
    };
    let middle = rel.as_ref().and_then(exact_log2);
    let fibre = saturated_orbit_lattice(&trho4_prime(), &tt, &trho4_image_relators()?, SATURATION_ROUNDS)?;
    let commutators: Vec<Word> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .map(|(i, j)| Word::commutator(&gens[i], &gens[j]))
        .collect();
    let sub_blocks = orbit::relator_blocks(&trho4_prime(), &tt, &commutators)?;
    let sub_rows = sub_blocks
        .iter()
        .map(|q| orbit::flatten_integral(q, tt.conductor()))
        .collect::<Result<Vec<_>, _>>()?;
    let sub = IntLattice::new(fibre.ambient_rank, sub_rows);
    let bottom_index = fibre.index_of(&sub);
    let bottom = bottom_index.as_ref().and_then(exact_log2);
    steps.push(Step::new(
        "v",
        "[rho4(G) : rho4(N_p)] = 2^3",
        top.map_or("not a power of two".into(), |e| format!("2^{e}")),
        "2^3",
        top == Some(3),
    ));
    steps.push(Step::new(
        "v",
        "ttrho4(ker trho4) has rank d = 1",
        fibre.rank(),
        1,
        fibre.rank() == 1,
    ));
    steps.push(Step::new(
        "v",
        "[ttrho4(ker trho4) : ttrho4([N_p, N_p])] = 2^3",
        log2_text(&bottom_index),
        "2^3",
        bottom == Some(3),
    ));
    let index_exponent = match (top, middle, bottom) {
        (Some(x), Some(y), Some(z)) => Some(x + y + z),
        _ => None,
    };
    steps.push(Step::new(
        "v",
        "[ttrho4(G) : ttrho4(N_p)] >= 2^(3+6+3)",
        index_exponent.map_or("undetermined".into(), |e| format!("2^{e}")),
        "2^12",
        index_exponent == Some(12),
    ));
    Ok(FaithfulReport { steps, index_exponent })
}

/// `|det|` of a square integer matrix, by fraction-free elimination.
pub fn abs_det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut sign = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = if n == 0 { BigInt::one() } else { m[n - 1][n - 1].clone() };
    num_traits::Signed::abs(&(d * sign))
}
