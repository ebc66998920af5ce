//! The abelian group `ext(ker base)` for a block extension
//! `ext = [[base, Q], [0, I]]`.
//!
//! For `r ∈ ker base` the matrix `ext(g r g⁻¹)` has top-right block
//! `base(g)·Q(r)`, so the group is the `Z[base(F_2)]`-module spanned by the
//! blocks `Q(r)` of normal generators `r` of `ker base`. Blocks are flattened
//! to integer vectors over the power basis of the cyclotomic integers.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclotomic::{totient, CycMatrix, CycNum};
use crate::reps::{self, Builtin, Rep, RepError};
use crate::words::Word;

use super::{IntLattice, KernelError};

/// Size `m` of the added block, after checking `ext(a)`, `ext(b)` have the
/// form `[[base(·), *], [0, I]]`.
pub fn extension_width(base: &Rep, ext: &Rep) -> Result<usize, KernelError> {
    let n = base.dim();
    let total = ext.dim();
    if total <= n {
        return Err(KernelError::NotBlockExtension(format!(
            "{} is not larger than {}",
            ext.name(),
            base.name()
        )));
    }
    let m = total - n;
    for (name, e, b) in [('a', ext.img_a(), base.img_a()), ('b', ext.img_b(), base.img_b())] {
        let ok = e.block(0, n, 0, n).same_value(b)
            && e.block(n, total, 0, n).is_zero()
            && e.block(n, total, n, total).is_identity();
        if !ok {
            return Err(KernelError::NotBlockExtension(format!(
                "{}({name}) is not [[{}({name}), *], [0, I]]",
                ext.name(),
                base.name()
            )));
        }
    }
    Ok(m)
}

/// Top-right blocks `Q(r)`; each relator must lie in `ker base`.
pub fn relator_blocks(base: &Rep, ext: &Rep, relators: &[Word]) -> Result<Vec<CycMatrix>, KernelError> {
    let n = base.dim();
    extension_width(base, ext)?;
    relators
        .iter()
        .map(|r| {
            if !base.evaluate(r).is_identity() {
                return Err(KernelError::NotInKernel(r.to_string()));
            }
            let m = ext.evaluate(r);
            Ok(m.block(0, n, n, m.cols()))
        })
        .collect()
}

/// Entries in the `ext` conductor's power basis, row-major; `None` unless
/// every coefficient is an integer.
pub fn flatten_integral(m: &CycMatrix, cond: u32) -> Result<Vec<BigInt>, KernelError> {
    let m = m.embed(cond).map_err(RepError::from)?;
    let mut out = Vec::with_capacity(m.entries().len() * totient(cond));
    for x in m.entries() {
        out.extend(x.integer_coeffs().ok_or(KernelError::NonIntegral)?);
    }
    Ok(out)
}

/// Inverse of [`flatten_integral`] for an `rows × cols` block.
pub fn unflatten(v: &[BigInt], rows: usize, cols: usize, cond: u32) -> CycMatrix {
    let deg = totient(cond);
    let entries: Vec<Vec<CycNum>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let start = (i * cols + j) * deg;
                    let coeffs = v[start..start + deg]
                        .iter()
                        .map(|c| num_rational::BigRational::from_integer(c.clone()))
                        .collect();
                    CycNum::from_coeffs(cond, coeffs)
                })
                .collect()
        })
        .collect();
    CycMatrix::from_rows(cond, entries)
}

/// Blocks `base(g)·Q(r)` over the finite image of `base`, optionally in a
/// shuffled order.
pub fn conjugate_orbit_blocks(
    base: &Rep,
    ext: &Rep,
    relators: &[Word],
    bound: usize,
    shuffle: Option<u64>,
) -> Result<Vec<CycMatrix>, KernelError> {
    let blocks = relator_blocks(base, ext, relators)?;
    let mut elements = reps::image_closure(base, bound)?.elements;
    if let Some(seed) = shuffle {
        elements.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    Ok(elements
        .iter()
        .flat_map(|g| blocks.iter().map(move |q| g.mul(q)))
        .collect())
}

pub fn conjugate_orbit_lattice(
    base: &Rep,
    ext: &Rep,
    relators: &[Word],
    bound: usize,
) -> Result<IntLattice, KernelError> {
    conjugate_orbit_lattice_shuffled(base, ext, relators, bound, None)
}

pub fn conjugate_orbit_lattice_shuffled(
    base: &Rep,
    ext: &Rep,
    relators: &[Word],
    bound: usize,
    shuffle: Option<u64>,
) -> Result<IntLattice, KernelError> {
    let cond = ext.conductor();
    let n = base.dim();
    let m = extension_width(base, ext)?;
    let ambient = n * m * totient(cond);
    let vectors = conjugate_orbit_blocks(base, ext, relators, bound, shuffle)?
        .iter()
        .map(|q| flatten_integral(q, cond))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntLattice::from_stream(ambient, vectors))
}

/// The same module for a base of any image: start from the relator blocks
/// and close under left multiplication by `base(a)^{±1}`, `base(b)^{±1}`
/// until the Hermite basis stops changing. Terminates because the lattice
/// grows inside a finitely generated free abelian group whenever the
/// generator images have integral inverses.
pub fn saturated_orbit_lattice(
    base: &Rep,
    ext: &Rep,
    relators: &[Word],
    max_rounds: usize,
) -> Result<IntLattice, KernelError> {
    let cond = ext.conductor();
    let n = base.dim();
    let m = extension_width(base, ext)?;
    let ambient = n * m * totient(cond);
    let lift = |x: &CycMatrix| x.embed(cond).map_err(RepError::from);
    let movers = [
        lift(base.img_a())?,
        lift(&base.evaluate(&Word::a().inv()))?,
        lift(base.img_b())?,
        lift(&base.evaluate(&Word::b().inv()))?,
    ];
    let start = relator_blocks(base, ext, relators)?
        .iter()
        .map(|q| flatten_integral(q, cond))
        .collect::<Result<Vec<_>, _>>()?;
    let mut lattice = IntLattice::from_stream(ambient, start);
    for _ in 0..max_rounds {
        let mut next = lattice.generators.clone();
        for v in &lattice.generators {
            let q = unflatten(v, n, m, cond);
            for x in &movers {
                next.push(flatten_integral(&x.mul(&q), cond)?);
            }
        }
        let grown = IntLattice::from_stream(ambient, next);
        if grown.generators == lattice.generators {
            return Ok(lattice);
        }
        lattice = grown;
    }
    Err(KernelError::NoFixedPoint(max_rounds))
}

/// How the rank of `ext(ker base)` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitMethod {
    FiniteImage,
    Saturation,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactSequence {
    pub base: String,
    pub ext: String,
    /// `None` when the image of `base` exceeded the bound.
    pub base_order: Option<usize>,
    pub rank: usize,
    pub method: OrbitMethod,
}

pub const SATURATION_ROUNDS: usize = 64;

/// `1 → Z^rank → F_2/ker ext → F_2/ker base → 1`, with `relators` normal
/// generators of `ker base`. A finite base image is enumerated; past the
/// bound the module is saturated instead.
pub fn exact_sequence_report(
    base: &Rep,
    ext: &Rep,
    relators: &[Word],
    bound: usize,
) -> Result<ExactSequence, KernelError> {
    let (base_order, lattice, method) = match reps::image_closure(base, bound) {
        Ok(img) => (
            Some(img.order()),
            conjugate_orbit_lattice(base, ext, relators, bound)?,
            OrbitMethod::FiniteImage,
        ),
        Err(RepError::Overflow { .. }) => (
            None,
            saturated_orbit_lattice(base, ext, relators, SATURATION_ROUNDS)?,
            OrbitMethod::Saturation,
        ),
        Err(e) => return Err(e.into()),
    };
    Ok(ExactSequence {
        base: base.name().to_string(),
        ext: ext.name().to_string(),
        base_order,
        rank: lattice.rank(),
        method,
    })
}

fn parse(words: &[&str]) -> Vec<Word> {
    words.iter().map(|w| w.parse().expect("valid relator")).collect()
}

/// Normal generators of `ker ρ` for the finite-image builtins: relators of a
/// presentation of the image.
pub fn kernel_normal_generators(b: Builtin) -> Option<Vec<Word>> {
    let c = Word::commutator(&Word::a(), &Word::b());
    let nested = |x: Word| Word::commutator(&x, &c);
    match b {
        Builtin::Rho2 => Some(parse(&["a^2", "b^2", "abab"])),
        Builtin::Rho4 => Some(parse(&["a^4", "b^4", "a^2b^2", "aBab"])),
        Builtin::Rho6 => {
            let mut r = parse(&["a^6", "b^6"]);
            r.extend([c.pow(3), nested(Word::a()), nested(Word::b())]);
            Some(r)
        }
        Builtin::RhoOdd(k) => {
            let k = i64::from(k);
            Some(vec![
                Word::a().pow(k),
                Word::b().pow(k),
                c.pow(k),
                nested(Word::a()),
                nested(Word::b()),
            ])
        }
        _ => None,
    }
}

/// `aba⁻¹b⁻¹a⁻¹bab⁻¹`, a kernel element of every odd `ρ_k` whose block under
/// the odd extension has independent columns.
pub fn odd_kernel_word() -> Word {
    "abABAbaB".parse().expect("valid word")
}

/// `k·(k−3)/2·φ(k)`.
pub fn odd_rank_formula(k: u32) -> usize {
    k as usize * (k as usize - 3) / 2 * totient(k)
}
