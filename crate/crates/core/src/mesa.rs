//! Admissible mesa sets.
//!
//! A finite set `M` of positive integers is the mesa set of some Stirling
//! permutation iff `3 * |M ∩ [1, x]| <= 2x - 1` for every `x` in `M`. This
//! module decides that condition in integer arithmetic, builds canonical
//! witnesses, and exposes the grow/shrink maps between orders `n` and `n + 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::stirling::StirlingPermutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MesaError {
    #[error("mesa sets contain positive integers only")]
    ZeroElement,
    #[error("element {0} occurs more than once")]
    Duplicate(u32),
    #[error("context order {order} is smaller than the largest element {max}")]
    ContextTooSmall { order: u32, max: u32 },
    #[error("context order must be at least 1")]
    ZeroOrder,
    #[error("{0} is not an admissible mesa set")]
    NotAdmissible(MesaSet),
    #[error(
        "cannot add {next} to a mesa set of size {size} in order {order}: \
         order {next} allows at most {max_next} mesas"
    )]
    ExtensionBlocked {
        size: usize,
        order: u32,
        next: u32,
        max_next: u32,
    },
    #[error("cannot parse {0:?} as a set of positive integers")]
    Parse(String),
}

/// A set of positive integers together with the order `n` of the Stirling
/// permutations it is considered in.
///
/// Elements are kept sorted. Admissibility is not enforced here: the type
/// also represents candidates such as `{1}` that are rejected by
/// [`is_admissible`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MesaSet {
    elements: Vec<u32>,
    order: u32,
}

impl MesaSet {
    pub fn new(elements: impl IntoIterator<Item = u32>, order: u32) -> Result<Self, MesaError> {
        let mut elements: Vec<u32> = elements.into_iter().collect();
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(MesaError::Duplicate(w[0]));
        }
        if elements.first() == Some(&0) {
            return Err(MesaError::ZeroElement);
        }
        if order == 0 {
            return Err(MesaError::ZeroOrder);
        }
        if let Some(&max) = elements.last() {
            if max > order {
                return Err(MesaError::ContextTooSmall { order, max });
            }
        }
        Ok(Self { elements, order })
    }

    /// Uses the smallest possible context, `max(M)` (or 1 for the empty set).
    pub fn minimal(elements: impl IntoIterator<Item = u32>) -> Result<Self, MesaError> {
        let elements: Vec<u32> = elements.into_iter().collect();
        let order = elements.iter().copied().max().unwrap_or(1).max(1);
        Self::new(elements, order)
    }

    pub fn empty(order: u32) -> Self {
        assert!(order >= 1, "order must be at least 1");
        Self {
            elements: Vec::new(),
            order,
        }
    }

    /// Mesa set of `w`, in context `w.order()`.
    pub fn of(w: &StirlingPermutation) -> Self {
        Self {
            elements: w.mesa_set().into_iter().collect(),
            order: w.order() as u32,
        }
    }

    /// Decodes a bitmask where bit `v` marks membership of `v`.
    pub fn from_mask(mask: u64, order: u32) -> Result<Self, MesaError> {
        Self::new((0..64u32).filter(|&v| mask >> v & 1 == 1), order)
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.elements.binary_search(&v).is_ok()
    }

    pub fn max(&self) -> Option<u32> {
        self.elements.last().copied()
    }

    /// Same elements, different context order.
    pub fn with_order(&self, order: u32) -> Result<Self, MesaError> {
        Self::new(self.elements.iter().copied(), order)
    }

    /// `[n] \ M` in increasing order.
    pub fn complement(&self) -> Vec<u32> {
        (1..=self.order).filter(|&v| !self.contains(v)).collect()
    }

    /// Bit `v` set iff `v` is an element. Requires every element below 64.
    pub fn mask(&self) -> u64 {
        self.elements.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn to_set(&self) -> BTreeSet<u32> {
        self.elements.iter().copied().collect()
    }
}

impl fmt::Display for MesaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Parses `3,4,5`, `{3,4,5}`, `{}` or the empty string. The context order is
/// the largest element.
impl FromStr for MesaSet {
    type Err = MesaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        if body.is_empty() || body == "∅" {
            return Ok(Self::empty(1));
        }
        let elements = body
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| MesaError::Parse(s.to_string()))?;
        Self::minimal(elements)
    }
}

/// `M ∩ [1, x]`.
pub fn truncate(m: &MesaSet, x: u32) -> Vec<u32> {
    let end = m.elements.partition_point(|&v| v <= x);
    m.elements[..end].to_vec()
}

/// The admissibility test on a sorted, duplicate-free slice.
pub fn is_admissible_sorted(elements: &[u32]) -> bool {
    elements
        .iter()
        .enumerate()
        .all(|(i, &x)| 3 * (i as u64 + 1) <= 2 * x as u64 - 1)
}

/// True iff `3 * |M_x| <= 2x - 1` for every `x ∈ M`. The context order is
/// irrelevant.
pub fn is_admissible(m: &MesaSet) -> bool {
    is_admissible_sorted(&m.elements)
}

/// `floor((2n - 1) / 3)`, the largest mesa count in `Q_n`.
pub fn max_mesa_count(n: u32) -> u32 {
    assert!(n >= 1, "order must be at least 1");
    (2 * n - 1) / 3
}

/// The canonical witness
/// `t_1 m_1 m_1 t_2 m_2 m_2 ... t_l m_l m_l t_{l+1} ... t_{2(n-l)}` with
/// `t_j = u_{ceil(j/2)}`, where `u_1 < u_2 < ...` enumerate `[n] \ M`.
pub fn canonical_witness(m: &MesaSet) -> Result<StirlingPermutation, MesaError> {
    if !is_admissible(m) {
        return Err(MesaError::NotAdmissible(m.clone()));
    }
    let n = m.order as usize;
    let l = m.len();
    let u = m.complement();
    let t = |j: usize| u[j.div_ceil(2) - 1];

    let mut word = Vec::with_capacity(2 * n);
    for (i, &mi) in m.elements.iter().enumerate() {
        word.extend_from_slice(&[t(i + 1), mi, mi]);
    }
    // Admissibility at max(M) gives 3l <= 2n - 1, so t_{l+1} exists.
    for j in l + 1..=2 * (n - l) {
        word.push(t(j));
    }
    Ok(StirlingPermutation::from_trusted(word))
}

/// A word of order `n` with exactly `floor((2n - 1) / 3)` mesas:
/// `t_1 m_1 m_1 t_2 ... t_k m_k m_k t_{k+1} t_{k+2} t_{k+3}` with
/// `m_i = n - k + i` and `t_i = ceil(i / 2)`, dropping every `t_i` whose value
/// would exceed `n - k`.
///
/// # Panics
///
/// If `n == 0`.
pub fn sharp_witness(n: u32) -> StirlingPermutation {
    let k = max_mesa_count(n);
    let low = n - k;
    let t = |i: u32| Some(i.div_ceil(2)).filter(|&v| v <= low);

    let mut word = Vec::with_capacity(2 * n as usize);
    for i in 1..=k {
        word.extend(t(i));
        word.extend_from_slice(&[low + i, low + i]);
    }
    for i in k + 1..=k + 3 {
        word.extend(t(i));
    }
    StirlingPermutation::from_trusted(word)
}

/// Component-wise lower bound on an admissible set of size `l`:
/// `(2, 4, 5, 7, 8, 10, 11, ...)`, i.e. `floor(3i / 2) + 1`.
pub fn minimal_mesa_floor(l: usize) -> Vec<u32> {
    (1..=l as u32).map(|i| 3 * i / 2 + 1).collect()
}

/// `M \ {n + 1}` in context `n`. Requires `M ⊆ [n + 1]`.
pub fn restrict(m: &MesaSet, n: u32) -> Result<MesaSet, MesaError> {
    MesaSet::new(m.elements.iter().copied().filter(|&v| v != n + 1), n)
}

/// `M ∪ {n + 1}` in context `n + 1`, when that set is admissible.
///
/// For admissible `M ⊆ [n]` this is blocked exactly when `n = 3k - 1` and
/// `|M| = 2k - 1`.
pub fn extend(m: &MesaSet, n: u32) -> Result<MesaSet, MesaError> {
    let base = m.with_order(n)?;
    let mut elements = base.elements.clone();
    elements.push(n + 1);
    if is_admissible_sorted(&elements) {
        Ok(MesaSet {
            elements,
            order: n + 1,
        })
    } else {
        Err(MesaError::ExtensionBlocked {
            size: m.len(),
            order: n,
            next: n + 1,
            max_next: max_mesa_count(n + 1),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elements: &[u32], order: u32) -> MesaSet {
        MesaSet::new(elements.iter().copied(), order).unwrap()
    }

    #[test]
    fn truncation() {
        let m = set(&[5, 7], 9);
        assert_eq!(truncate(&m, 6), [5]);
        assert_eq!(truncate(&m, 5), [5]);
        assert_eq!(truncate(&m, 4), Vec::<u32>::new());
        assert!(truncate(&MesaSet::empty(3), 10).is_empty());
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&set(&[5, 7], 7)));
        assert!(!is_admissible(&set(&[3, 4, 5, 6], 6)));
        assert!(is_admissible(&MesaSet::empty(4)));
        assert!(!is_admissible(&set(&[1], 1)));
        assert!(is_admissible(&set(&[3, 4, 5], 5)));
        assert!(!is_admissible(&set(&[2, 3], 3)));
    }

    #[test]
    fn admissibility_ignores_context() {
        let m = set(&[5, 7], 7);
        assert_eq!(is_admissible(&m), is_admissible(&m.with_order(30).unwrap()));
    }

    #[test]
    fn canonical_witnesses() {
        assert_eq!(
            canonical_witness(&set(&[5, 6, 8], 8)).unwrap().to_string(),
            "1551662882334477"
        );
        assert_eq!(
            canonical_witness(&MesaSet::empty(2)).unwrap().to_string(),
            "1122"
        );
        assert_eq!(
            canonical_witness(&set(&[2], 2)).unwrap().to_string(),
            "1221"
        );
        assert!(matches!(
            canonical_witness(&set(&[3, 4, 5, 6], 6)),
            Err(MesaError::NotAdmissible(_))
        ));
    }

    #[test]
    fn empty_set_witness_is_identity() {
        for n in 1..=9 {
            assert_eq!(
                canonical_witness(&MesaSet::empty(n)).unwrap(),
                StirlingPermutation::identity(n as usize)
            );
        }
    }

    #[test]
    fn max_counts() {
        assert_eq!(max_mesa_count(1), 0);
        assert_eq!(max_mesa_count(6), 3);
        assert_eq!(max_mesa_count(9), 5);
    }

    #[test]
    fn sharp_witnesses() {
        assert_eq!(sharp_witness(6).to_string(), "144155266233");
        assert_eq!(sharp_witness(7).to_string(), "14415526627733");
        assert_eq!(sharp_witness(8).to_string(), "1441552662773883");
        assert_eq!(sharp_witness(2).to_string(), "1221");
        assert_eq!(sharp_witness(1).to_string(), "11");
    }

    #[test]
    fn floor_sequence() {
        assert_eq!(minimal_mesa_floor(1), [2]);
        assert_eq!(minimal_mesa_floor(2), [2, 4]);
        assert_eq!(minimal_mesa_floor(5), [2, 4, 5, 7, 8]);
        assert_eq!(minimal_mesa_floor(7), [2, 4, 5, 7, 8, 10, 11]);
    }

    #[test]
    fn restriction() {
        assert_eq!(restrict(&set(&[2, 5], 5), 4).unwrap(), set(&[2], 4));
        assert_eq!(restrict(&set(&[2], 5), 4).unwrap(), set(&[2], 4));
        assert_eq!(restrict(&set(&[3, 4, 5], 5), 4).unwrap(), set(&[3, 4], 4));
        assert!(restrict(&set(&[2, 6], 6), 4).is_err());
    }

    #[test]
    fn extension() {
        assert_eq!(
            extend(&set(&[3, 4, 5], 5), 5),
            Err(MesaError::ExtensionBlocked {
                size: 3,
                order: 5,
                next: 6,
                max_next: 3
            })
        );
        assert_eq!(extend(&MesaSet::empty(1), 1).unwrap(), set(&[2], 2));
        assert!(matches!(
            extend(&set(&[2], 2), 2),
            Err(MesaError::ExtensionBlocked { size: 1, .. })
        ));
        assert_eq!(extend(&set(&[2], 3), 3).unwrap(), set(&[2, 4], 4));
    }

    #[test]
    fn parsing_and_display() {
        let m: MesaSet = "3,4,5".parse().unwrap();
        assert_eq!(m, set(&[3, 4, 5], 5));
        assert_eq!(m.to_string(), "{3,4,5}");
        assert_eq!("{5, 7}".parse::<MesaSet>().unwrap().elements(), [5, 7]);
        assert!("{}".parse::<MesaSet>().unwrap().is_empty());
        assert!("".parse::<MesaSet>().unwrap().is_empty());
        assert!("3,x".parse::<MesaSet>().is_err());
        assert_eq!("2,2".parse::<MesaSet>(), Err(MesaError::Duplicate(2)));
        assert_eq!("0,2".parse::<MesaSet>(), Err(MesaError::ZeroElement));
    }

    #[test]
    fn complement_and_mask() {
        let m = set(&[2, 4, 6, 7, 8], 8);
        assert_eq!(m.complement(), [1, 3, 5]);
        assert_eq!(MesaSet::from_mask(m.mask(), 8).unwrap(), m);
    }
}
