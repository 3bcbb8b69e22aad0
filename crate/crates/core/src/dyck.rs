//! Lattice paths, rational Dyck paths and the map from maximal mesa sets to
//! `(2k - 1, k)`-Dyck paths.
//!
//! A path with `ℓ` east and `m` north steps ends at `(ℓ, m)`. For coprime
//! `(m, ℓ)` it is a rational Dyck path when every lattice point it visits,
//! apart from the two endpoints, lies strictly below `y = (m / ℓ) x`, i.e.
//! `b * ℓ < a * m`. Coprimality rules out interior points on the line, so the
//! strict and weak readings agree.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::arith::binomial;
use crate::mesa::{is_admissible, MesaSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyckError {
    #[error("unexpected character {ch:?} at step {position}; paths are strings over N and E")]
    Parse { ch: char, position: usize },
    #[error("a path to ({ell}, {m}) needs at least one east and one north step")]
    DegenerateTarget { ell: u32, m: u32 },
    #[error("gcd({m}, {ell}) != 1")]
    NotCoprime { m: u32, ell: u32 },
    #[error("path {0} touches or crosses the diagonal")]
    NotDyck(LatticePath),
    #[error("context order {order} is not of the form 3k - 1")]
    WrongContext { order: u32 },
    #[error("mesa set has {size} elements, a maximal set in this order has {expected}")]
    NotMaximal { size: usize, expected: usize },
    #[error("{0} is not an admissible mesa set")]
    NotAdmissible(MesaSet),
    #[error("path ends at ({ell}, {m}); expected a (k, 2k - 1) endpoint")]
    InvalidPath { ell: u32, m: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    North,
    East,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::North => 'N',
            Step::East => 'E',
        }
    }
}

/// A sequence of north and east steps from the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `(ℓ, m)` = (number of east steps, number of north steps).
    pub fn target(&self) -> (u32, u32) {
        let north = self.steps.iter().filter(|&&s| s == Step::North).count() as u32;
        (self.steps.len() as u32 - north, north)
    }

    /// Every visited lattice point, starting with `(0, 0)`.
    pub fn points(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        std::iter::once((0, 0)).chain(self.steps.iter().scan((0, 0), |p, s| {
            match s {
                Step::East => p.0 += 1,
                Step::North => p.1 += 1,
            }
            Some(*p)
        }))
    }

    /// Sum over east steps of the height at which the step is taken.
    pub fn area(&self) -> u64 {
        let mut height = 0u64;
        let mut area = 0u64;
        for s in &self.steps {
            match s {
                Step::North => height += 1,
                Step::East => area += height,
            }
        }
        area
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

/// Letters `N`/`E` (either case); whitespace is ignored.
impl FromStr for LatticePath {
    type Err = DyckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .enumerate()
            .map(|(i, c)| match c.to_ascii_uppercase() {
                'N' => Ok(Step::North),
                'E' => Ok(Step::East),
                _ => Err(DyckError::Parse {
                    ch: c,
                    position: i + 1,
                }),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { steps })
    }
}

fn coprime_target(p: &LatticePath) -> Result<(u32, u32), DyckError> {
    let (ell, m) = p.target();
    if ell == 0 || m == 0 {
        return Err(DyckError::DegenerateTarget { ell, m });
    }
    if m.gcd(&ell) != 1 {
        return Err(DyckError::NotCoprime { m, ell });
    }
    Ok((ell, m))
}

/// Whether `p` stays strictly below `y = (m / ℓ) x` between its endpoints.
pub fn is_rational_dyck(p: &LatticePath) -> Result<bool, DyckError> {
    let (ell, m) = coprime_target(p)?;
    let (ell, m) = (ell as u64, m as u64);
    let last = p.len();
    Ok(p.points()
        .enumerate()
        .filter(|&(i, _)| i != 0 && i != last)
        .all(|(_, (a, b))| (b as u64) * ell < (a as u64) * m))
}

/// A lattice path verified to be a rational Dyck path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalDyckPath {
    path: LatticePath,
}

impl RationalDyckPath {
    pub fn new(path: LatticePath) -> Result<Self, DyckError> {
        if is_rational_dyck(&path)? {
            Ok(Self { path })
        } else {
            Err(DyckError::NotDyck(path))
        }
    }

    pub fn path(&self) -> &LatticePath {
        &self.path
    }

    pub fn into_path(self) -> LatticePath {
        self.path
    }

    pub fn target(&self) -> (u32, u32) {
        self.path.target()
    }

    pub fn steps(&self) -> &[Step] {
        self.path.steps()
    }

    pub fn area(&self) -> u64 {
        self.path.area()
    }
}

impl fmt::Display for RationalDyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.path.fmt(f)
    }
}

impl FromStr for RationalDyckPath {
    type Err = DyckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(s.parse()?)
    }
}

/// Reads the subset `M ⊆ [n]` as a path: step `i` is north iff `i ∈ M`.
///
/// Defined for every set; only maximal sets in order `3k - 1` are guaranteed
/// to land on rational Dyck paths (see [`delta`]).
pub fn subset_path(m: &MesaSet) -> LatticePath {
    LatticePath::new(
        (1..=m.order())
            .map(|i| {
                if m.contains(i) {
                    Step::North
                } else {
                    Step::East
                }
            })
            .collect(),
    )
}

/// Sends a maximal admissible mesa set in order `3k - 1` (size `2k - 1`) to its
/// `(2k - 1, k)`-Dyck path.
pub fn delta(m: &MesaSet) -> Result<RationalDyckPath, DyckError> {
    let n = m.order();
    if n % 3 != 2 {
        return Err(DyckError::WrongContext { order: n });
    }
    let k = (n as usize + 1) / 3;
    if m.len() != 2 * k - 1 {
        return Err(DyckError::NotMaximal {
            size: m.len(),
            expected: 2 * k - 1,
        });
    }
    if !is_admissible(m) {
        return Err(DyckError::NotAdmissible(m.clone()));
    }
    RationalDyckPath::new(subset_path(m))
}

/// Positions of the north steps of a `(2k - 1, k)`-Dyck path, in context
/// `3k - 1`.
pub fn delta_inverse(p: &RationalDyckPath) -> Result<MesaSet, DyckError> {
    let (ell, m) = p.target();
    if m != 2 * ell - 1 {
        return Err(DyckError::InvalidPath { ell, m });
    }
    let north = p
        .steps()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == Step::North)
        .map(|(i, _)| i as u32 + 1);
    Ok(MesaSet::new(north, 3 * ell - 1).expect("north positions lie in [1, 3k - 1]"))
}

/// `C_{m,ℓ} = binomial(ℓ + m - 1, m) / ℓ` for coprime positive `m`, `ℓ`.
pub fn rational_catalan(m: u32, ell: u32) -> Result<BigUint, DyckError> {
    if ell == 0 || m == 0 {
        return Err(DyckError::DegenerateTarget { ell, m });
    }
    if m.gcd(&ell) != 1 {
        return Err(DyckError::NotCoprime { m, ell });
    }
    let b = binomial(ell as u64 + m as u64 - 1, m as u64);
    let (q, r) = b.div_rem(&BigUint::from(ell));
    debug_assert!(
        r == BigUint::from(0u32),
        "inexact rational Catalan division"
    );
    Ok(q)
}

pub fn area(p: &RationalDyckPath) -> u64 {
    p.area()
}

/// Pairs `(x, u)` with `x ∈ M`, `u ∈ [n] \ M` and `x < u`.
pub fn inversions(m: &MesaSet) -> u64 {
    let mut inv = 0u64;
    let mut elements_seen = 0u64;
    for v in 1..=m.order() {
        if m.contains(v) {
            elements_seen += 1;
        } else {
            inv += elements_seen;
        }
    }
    inv
}
