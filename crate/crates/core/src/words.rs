//! Reduced words in the free group on `a` and `b`, endomorphisms given by
//! generator images, abelianization, conjugacy and primitivity.
//!
//! Commutators follow `[x, y] = x⁻¹ y⁻¹ x y`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the two free generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    A,
    B,
}

/// A generator raised to `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter {
        gen: Gen::A,
        inverse: false,
    };
    pub const A_INV: Letter = Letter {
        gen: Gen::A,
        inverse: true,
    };
    pub const B: Letter = Letter {
        gen: Gen::B,
        inverse: false,
    };
    pub const B_INV: Letter = Letter {
        gen: Gen::B,
        inverse: true,
    };
    pub const ALL: [Letter; 4] = [Letter::A, Letter::A_INV, Letter::B, Letter::B_INV];

    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn to_char(self) -> char {
        match (self.gen, self.inverse) {
            (Gen::A, false) => 'a',
            (Gen::A, true) => 'A',
            (Gen::B, false) => 'b',
            (Gen::B, true) => 'B',
        }
    }

    /// Index in `0..4` used by coset tables: a, A, b, B.
    pub fn index(self) -> usize {
        match (self.gen, self.inverse) {
            (Gen::A, false) => 0,
            (Gen::A, true) => 1,
            (Gen::B, false) => 2,
            (Gen::B, true) => 3,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unexpected character {ch:?} at offset {at}")]
    UnexpectedChar { ch: char, at: usize },
    #[error("exponent at offset {at} is missing or malformed")]
    BadExponent { at: usize },
    #[error("endomorphism is not an automorphism: composition with the candidate inverse sends {gen:?} to {image}")]
    NotInverse { gen: Gen, image: Word },
}

/// A freely reduced word, stored as runs `(generator, nonzero exponent)` with
/// adjacent runs on different generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    runs: Vec<(Gen, i64)>,
}

impl Word {
    pub fn identity() -> Word {
        Word { runs: Vec::new() }
    }

    pub fn a() -> Word {
        Word::power_of(Gen::A, 1)
    }

    pub fn b() -> Word {
        Word::power_of(Gen::B, 1)
    }

    pub fn power_of(gen: Gen, exp: i64) -> Word {
        if exp == 0 {
            Word::identity()
        } else {
            Word { runs: vec![(gen, exp)] }
        }
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut w = Word::identity();
        for l in letters {
            w.push_run(l.gen, l.sign());
        }
        w
    }

    /// Free reduction of an arbitrary run sequence; zero exponents are allowed.
    pub fn from_runs<I: IntoIterator<Item = (Gen, i64)>>(runs: I) -> Word {
        let mut w = Word::identity();
        for (g, e) in runs {
            w.push_run(g, e);
        }
        w
    }

    fn push_run(&mut self, gen: Gen, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((g, e)) if *g == gen => {
                *e += exp;
                if *e == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((gen, exp)),
        }
    }

    pub fn runs(&self) -> &[(Gen, i64)] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs.iter().flat_map(|&(gen, e)| {
            let l = Letter { gen, inverse: e < 0 };
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        })
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.runs {
            w.push_run(g, e);
        }
        w
    }

    pub fn inv(&self) -> Word {
        Word {
            runs: self.runs.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.inv().mul(&y.inv()).mul(x).mul(y)
    }

    /// `h w h⁻¹`.
    pub fn conjugate_by(&self, h: &Word) -> Word {
        h.mul(self).mul(&h.inv())
    }

    /// Exponent-sum vector `(#a, #b)`.
    pub fn abelianize(&self) -> (i64, i64) {
        self.runs.iter().fold((0, 0), |(x, y), &(g, e)| match g {
            Gen::A => (x + e, y),
            Gen::B => (x, y + e),
        })
    }

    /// Cyclic reduction: the reduced word with no cancellation between its ends.
    pub fn cyclically_reduced(&self) -> Word {
        let mut runs = self.runs.clone();
        loop {
            if runs.len() >= 2 && runs[0].0 == runs[runs.len() - 1].0 {
                let last = runs.pop().unwrap();
                runs[0].1 += last.1;
                if runs[0].1 == 0 {
                    runs.remove(0);
                    continue;
                }
            }
            break;
        }
        Word { runs }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        for &(gen, e) in &self.runs {
            let ch = Letter { gen, inverse: e < 0 }.to_char();
            if e.abs() == 1 {
                write!(f, "{ch}")?;
            } else {
                write!(f, "{ch}^{}", e.abs())?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Letters `a A b B` (upper case is the inverse), optionally followed by
    /// `^n` with `n` a possibly negative integer. `"1"` and `""` are the identity.
    fn from_str(s: &str) -> Result<Word, WordError> {
        let chars: Vec<char> = s.chars().collect();
        let mut w = Word::identity();
        let mut i = 0;
        if s.trim() == "1" {
            return Ok(w);
        }
        while i < chars.len() {
            let ch = chars[i];
            let letter = match ch {
                'a' => Letter::A,
                'A' => Letter::A_INV,
                'b' => Letter::B,
                'B' => Letter::B_INV,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                c => return Err(WordError::UnexpectedChar { ch: c, at: i }),
            };
            i += 1;
            let mut exp = 1i64;
            if i < chars.len() && chars[i] == '^' {
                let start = i;
                i += 1;
                let mut digits = String::new();
                if i < chars.len() && chars[i] == '-' {
                    digits.push('-');
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    digits.push(chars[i]);
                    i += 1;
                }
                exp = digits.parse().map_err(|_| WordError::BadExponent { at: start })?;
            } else if i < chars.len() && chars[i].is_ascii_digit() {
                return Err(WordError::UnexpectedChar { ch: chars[i], at: i });
            }
            w.push_run(letter.gen, letter.sign() * exp);
        }
        Ok(w)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// True iff `u` and `v` are conjugate in the free group.
pub fn conjugate_test(u: &Word, v: &Word) -> bool {
    let cu: Vec<Letter> = u.cyclically_reduced().letters().collect();
    let cv: Vec<Letter> = v.cyclically_reduced().letters().collect();
    if cu.len() != cv.len() {
        return false;
    }
    if cu.is_empty() {
        return true;
    }
    let doubled: Vec<Letter> = cu.iter().chain(cu.iter()).copied().collect();
    doubled.windows(cv.len()).any(|w| w == cv.as_slice())
}

/// Primitivity via the coprime abelianization and a conjugacy comparison with
/// the standard primitive word of that slope.
pub fn is_primitive(u: &Word) -> bool {
    let (p, q) = u.abelianize();
    if p.gcd(&q) != 1 {
        return false;
    }
    let w = crate::farey::Slope::new(p, q)
        .map(|s| crate::farey::primitive_word(&s))
        .expect("coprime pair is a slope");
    conjugate_test(u, &w) || conjugate_test(u, &w.inv())
}

/// An endomorphism determined by the images of `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndoF2 {
    pub image_a: Word,
    pub image_b: Word,
}

impl EndoF2 {
    pub fn new(image_a: Word, image_b: Word) -> EndoF2 {
        EndoF2 { image_a, image_b }
    }

    pub fn identity() -> EndoF2 {
        EndoF2::new(Word::a(), Word::b())
    }

    pub fn image_of(&self, gen: Gen) -> &Word {
        match gen {
            Gen::A => &self.image_a,
            Gen::B => &self.image_b,
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        let inv_a = self.image_a.inv();
        let inv_b = self.image_b.inv();
        let mut out = Word::identity();
        for &(g, e) in w.runs() {
            let piece = match (g, e > 0) {
                (Gen::A, true) => &self.image_a,
                (Gen::A, false) => &inv_a,
                (Gen::B, true) => &self.image_b,
                (Gen::B, false) => &inv_b,
            };
            for _ in 0..e.unsigned_abs() {
                out = out.mul(piece);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &EndoF2) -> EndoF2 {
        EndoF2::new(self.apply(&other.image_a), self.apply(&other.image_b))
    }

    /// The induced integer matrix on the abelianization; columns are the
    /// images of `a` and `b`.
    pub fn abelian_matrix(&self) -> [[i64; 2]; 2] {
        let (x1, y1) = self.image_a.abelianize();
        let (x2, y2) = self.image_b.abelianize();
        [[x1, x2], [y1, y2]]
    }

    pub fn is_identity(&self) -> bool {
        self.image_a == Word::a() && self.image_b == Word::b()
    }
}

/// An endomorphism together with a verified two-sided inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    forward: EndoF2,
    backward: EndoF2,
}

impl Automorphism {
    /// Verifies both compositions on `a` and `b`.
    pub fn new(forward: EndoF2, backward: EndoF2) -> Result<Automorphism, WordError> {
        for (x, y) in [(&forward, &backward), (&backward, &forward)] {
            let c = x.compose(y);
            if c.image_a != Word::a() {
                return Err(WordError::NotInverse {
                    gen: Gen::A,
                    image: c.image_a,
                });
            }
            if c.image_b != Word::b() {
                return Err(WordError::NotInverse {
                    gen: Gen::B,
                    image: c.image_b,
                });
            }
        }
        Ok(Automorphism { forward, backward })
    }

    pub fn identity() -> Automorphism {
        Automorphism {
            forward: EndoF2::identity(),
            backward: EndoF2::identity(),
        }
    }

    pub fn forward(&self) -> &EndoF2 {
        &self.forward
    }

    pub fn backward(&self) -> &EndoF2 {
        &self.backward
    }

    pub fn apply(&self, w: &Word) -> Word {
        self.forward.apply(w)
    }

    pub fn apply_inverse(&self, w: &Word) -> Word {
        self.backward.apply(w)
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            forward: self.forward.compose(&other.forward),
            backward: other.backward.compose(&self.backward),
        }
    }

    pub fn pow(&self, n: i64) -> Automorphism {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Automorphism::identity(), |acc, _| acc.compose(&base))
    }

    /// Orientation: `+1` when the commutator class is preserved.
    pub fn orientation(&self) -> i64 {
        let m = self.forward.abelian_matrix();
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// `a ↦ b, b ↦ b⁻¹a⁻¹`.
    pub fn psi0() -> Automorphism {
        let f = EndoF2::new(Word::b(), "BA".parse().unwrap());
        let g = EndoF2::new("BA".parse().unwrap(), Word::a());
        Automorphism::new(f, g).expect("psi0 inverse")
    }

    /// `a ↦ b, b ↦ a⁻¹`.
    pub fn psi1() -> Automorphism {
        let f = EndoF2::new(Word::b(), "A".parse().unwrap());
        let g = EndoF2::new("B".parse().unwrap(), Word::a());
        Automorphism::new(f, g).expect("psi1 inverse")
    }

    /// `a ↦ a, b ↦ ab`.
    pub fn psi2() -> Automorphism {
        Automorphism::right_twist(1)
    }

    /// `a ↦ a⁻¹, b ↦ b`.
    pub fn psi_minus() -> Automorphism {
        let f = EndoF2::new("A".parse().unwrap(), Word::b());
        Automorphism::new(f.clone(), f).expect("psi_minus involution")
    }

    /// `a ↦ a, b ↦ b⁻¹`; the reflection used for negative slopes.
    pub fn reflect_b() -> Automorphism {
        let f = EndoF2::new(Word::a(), "B".parse().unwrap());
        Automorphism::new(f.clone(), f).expect("reflection involution")
    }

    /// `a ↦ a, b ↦ aᵐ b`, the `m`-th power of `psi2`.
    pub fn right_twist(m: i64) -> Automorphism {
        let f = EndoF2::new(Word::a(), Word::power_of(Gen::A, m).mul(&Word::b()));
        let g = EndoF2::new(Word::a(), Word::power_of(Gen::A, -m).mul(&Word::b()));
        Automorphism {
            forward: f,
            backward: g,
        }
    }

    /// `a ↦ a bᵐ, b ↦ b`.
    pub fn left_twist(m: i64) -> Automorphism {
        let f = EndoF2::new(Word::a().mul(&Word::power_of(Gen::B, m)), Word::b());
        let g = EndoF2::new(Word::a().mul(&Word::power_of(Gen::B, -m)), Word::b());
        Automorphism {
            forward: f,
            backward: g,
        }
    }

    /// The inner automorphism `g ↦ h g h⁻¹`.
    pub fn inner(h: &Word) -> Automorphism {
        let f = EndoF2::new(Word::a().conjugate_by(h), Word::b().conjugate_by(h));
        let hi = h.inv();
        let g = EndoF2::new(Word::a().conjugate_by(&hi), Word::b().conjugate_by(&hi));
        Automorphism {
            forward: f,
            backward: g,
        }
    }
}

/// A uniformly random reduced word whose length is drawn from `0..=max_len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::ALL[rng.gen_range(0..4)];
        if letters.last().is_none_or(|&prev| prev != l.inv()) {
            letters.push(l);
        }
    }
    Word::from_letters(letters)
}

/// The image of `a` under a random product of `steps` automorphisms drawn
/// from `ψ1`, `ψ2^{±1}`, `ψ−` and inner automorphisms by a generator, so the
/// result is primitive by construction.
pub fn random_primitive<R: Rng + ?Sized>(rng: &mut R, steps: usize) -> Word {
    let moves = [
        Automorphism::psi1(),
        Automorphism::psi2(),
        Automorphism::psi2().inverse(),
        Automorphism::psi_minus(),
        Automorphism::inner(&Word::a()),
        Automorphism::inner(&Word::b()),
    ];
    (0..steps).fold(Word::a(), |w, _| moves[rng.gen_range(0..moves.len())].apply(&w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert!(Word::from_letters([Letter::A, Letter::A_INV]).is_identity());
        let x = Word::from_letters([Letter::A, Letter::B, Letter::B_INV, Letter::A]);
        assert_eq!(x, w("a^2"));
        let g = w("abABAbaB");
        assert_eq!(g.len(), 8);
        assert_eq!(Word::from_letters(g.letters()), g);
    }

    #[test]
    fn commutator_convention() {
        assert_eq!(Word::commutator(&Word::a(), &Word::b()), w("ABab"));
        assert!(Word::commutator(&Word::a(), &Word::a()).is_identity());
        // the explicit eight-letter word is [a⁻¹, b⁻¹]·[a, b⁻¹], not the nested commutator
        let nested = Word::commutator(&Word::commutator(&w("A"), &w("B")), &w("B"));
        let product = Word::commutator(&w("A"), &w("B")).mul(&Word::commutator(&w("a"), &w("B")));
        assert_eq!(product, w("abABAbaB"));
        assert!(!conjugate_test(&nested, &product));
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(Word::a().abelianize(), (1, 0));
        assert_eq!(Word::b().abelianize(), (0, 1));
        assert_eq!(w("aabab").abelianize(), (3, 2));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(w("a^2bab"), w("aabab"));
        assert_eq!(w("A^2"), w("AA"));
        assert_eq!(w("a^-2"), w("AA"));
        assert!("a2bab".parse::<Word>().is_err());
        assert!("abc".parse::<Word>().is_err());
        for s in ["a^3ba^2b", "ABab", "1", "b^5A^2"] {
            assert_eq!(w(s).to_string(), s);
        }
    }

    #[test]
    fn generator_automorphisms() {
        assert_eq!(Automorphism::psi2().apply(&Word::b()), w("ab"));
        assert_eq!(Automorphism::psi1().pow(2).apply(&Word::a()), w("A"));
        assert!(Automorphism::psi0().pow(3).forward().is_identity());
        assert!(Automorphism::psi1().pow(4).forward().is_identity());
        let lhs = Automorphism::psi0().compose(&Automorphism::psi2());
        assert_eq!(lhs.forward(), Automorphism::psi1().forward());
    }

    #[test]
    fn conjugacy_examples() {
        assert!(conjugate_test(&w("ab"), &w("ba")));
        assert!(!conjugate_test(&w("a"), &w("b")));
        assert!(!conjugate_test(&w("abAB"), &w("baBA")));
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&w("a")));
        assert!(!is_primitive(&w("abab")));
        assert!(is_primitive(&w("a^2bab")));
        assert!(!is_primitive(&Word::identity()));
        assert!(!is_primitive(&w("abAB")));
    }
}
