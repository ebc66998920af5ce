//! Coordinates `(z, w) ∈ Z[i]²` on the unipotent 4×4 matrices
//! `[[I, Z], [0, I]]` with `Z = [[z, −w̄], [w, z̄]]`.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cyclotomic::{CycMatrix, CycNum};

use super::KernelError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const fn new(re: i64, im: i64) -> GaussInt {
        GaussInt { re, im }
    }

    pub fn conj(self) -> GaussInt {
        GaussInt::new(self.re, -self.im)
    }

    pub fn to_cyc(self) -> CycNum {
        CycNum::gaussian(self.re, self.im)
    }

    /// `None` unless `x` is a Gaussian integer.
    pub fn from_cyc(x: &CycNum) -> Option<GaussInt> {
        let c = x.embed(4).ok()?.integer_coeffs()?;
        Some(GaussInt::new(c[0].to_i64()?, c[1].to_i64()?))
    }
}

impl std::ops::Neg for GaussInt {
    type Output = GaussInt;

    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = match self.im {
            1 => "i".to_string(),
            -1 => "-i".to_string(),
            v => format!("{v}i"),
        };
        match (self.re, self.im) {
            (r, 0) => write!(f, "{r}"),
            (0, _) => write!(f, "{im}"),
            (r, v) if v > 0 => write!(f, "{r}+{im}"),
            (r, _) => write!(f, "{r}{im}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GammaCoord {
    pub z: GaussInt,
    pub w: GaussInt,
}

impl GammaCoord {
    pub const fn new(z: GaussInt, w: GaussInt) -> GammaCoord {
        GammaCoord { z, w }
    }

    /// `(Re z, Im z, Re w, Im w)`.
    pub fn to_vec(self) -> Vec<i64> {
        vec![self.z.re, self.z.im, self.w.re, self.w.im]
    }

    pub fn encode(self) -> CycMatrix {
        let mut m = CycMatrix::identity(4, 4);
        m.set(0, 2, self.z.to_cyc());
        m.set(1, 2, self.w.to_cyc());
        m.set(0, 3, -self.w.conj().to_cyc());
        m.set(1, 3, self.z.conj().to_cyc());
        m
    }
}

impl fmt::Display for GammaCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z, self.w)
    }
}

pub fn gamma(z: GaussInt, w: GaussInt) -> CycMatrix {
    GammaCoord::new(z, w).encode()
}

/// Reads `(z, w)` off a matrix of the unipotent shape, naming the first entry
/// that breaks the shape.
pub fn gamma_decode(m: &CycMatrix) -> Result<GammaCoord, KernelError> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(KernelError::GammaShape(format!(
            "expected 4x4, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let entry = |i: usize, j: usize| {
        GaussInt::from_cyc(m.get(i, j))
            .ok_or_else(|| KernelError::GammaShape(format!("entry ({i}, {j}) is not a Gaussian integer")))
    };
    for i in 0..4 {
        for j in 0..4 {
            let fixed = match (i, j) {
                (0..=1, 2..=3) => continue,
                _ => GaussInt::new(i64::from(i == j), 0),
            };
            if entry(i, j)? != fixed {
                return Err(KernelError::GammaShape(format!("entry ({i}, {j}) should be {fixed}")));
            }
        }
    }
    let z = entry(0, 2)?;
    let w = entry(1, 2)?;
    if entry(0, 3)? != -w.conj() {
        return Err(KernelError::GammaShape("entry (0, 3) should be -conj(w)".into()));
    }
    if entry(1, 3)? != z.conj() {
        return Err(KernelError::GammaShape("entry (1, 3) should be conj(z)".into()));
    }
    Ok(GammaCoord::new(z, w))
}
