//! Virtual linking numbers, the parity matrix and the odd writhe.

use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{ChordId, GaussDiagram};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("component index {index} out of range (diagram has {count})")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("linking numbers need two distinct components")]
    SameComponent,
    #[error("odd writhe undefined on component {component}: it carries an odd number of endpoints")]
    OddWritheUndefined { component: usize },
}

/// An exact multiple of one half.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

fn check_pair(d: &GaussDiagram, i: usize, j: usize) -> Result<(), InvariantError> {
    let count = d.num_components();
    for index in [i, j] {
        if index >= count {
            return Err(InvariantError::IndexOutOfRange { index, count });
        }
    }
    if i == j {
        return Err(InvariantError::SameComponent);
    }
    Ok(())
}

/// `vlk[i][j]`: signed count of chords with Over endpoint on `i` and Under
/// endpoint on `j`. The diagonal holds self-chord writhes.
pub fn vlk_matrix(d: &GaussDiagram) -> Vec<Vec<i64>> {
    let n = d.num_components();
    let mut m = alloc::vec![alloc::vec![0i64; n]; n];
    for (c, p) in d.placements() {
        let s = d.sign(c).map_or(0, |s| s.value());
        m[p.over.component][p.under.component] += s;
    }
    m
}

/// Virtual linking number of component `i` over component `j`.
pub fn vlk(d: &GaussDiagram, i: usize, j: usize) -> Result<i64, InvariantError> {
    check_pair(d, i, j)?;
    Ok(vlk_matrix(d)[i][j])
}

/// Number of chords with Over endpoint on `i` and Under endpoint on `j`.
pub fn crossing_count(d: &GaussDiagram, i: usize, j: usize) -> usize {
    d.placements()
        .values()
        .filter(|p| p.over.component == i && p.under.component == j)
        .count()
}

/// `(vlk(i, j) + vlk(j, i)) / 2`.
pub fn linking_number(d: &GaussDiagram, i: usize, j: usize) -> Result<HalfInt, InvariantError> {
    check_pair(d, i, j)?;
    let m = vlk_matrix(d);
    Ok(HalfInt::from_twice(m[i][j] + m[j][i]))
}

/// Virtual linking numbers reduced mod 2, for ordered pairs `i != j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParityMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl ParityMatrix {
    pub fn zero(n: usize) -> Self {
        ParityMatrix {
            n,
            bits: alloc::vec![false; n * n],
        }
    }

    /// Matrix with exactly the listed `(over, under)` bits set.
    pub fn with_bits(n: usize, set: &[(usize, usize)]) -> Self {
        let mut m = Self::zero(n);
        for &(i, j) in set {
            m.set(i, j, true);
        }
        m
    }

    pub fn of(d: &GaussDiagram) -> Self {
        let v = vlk_matrix(d);
        let n = d.num_components();
        let mut m = Self::zero(n);
        for (i, j) in Self::pairs(n) {
            m.set(i, j, v[i][j].rem_euclid(2) == 1);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, over: usize, under: usize) -> bool {
        over != under && self.bits[over * self.n + under]
    }

    /// Sets a bit. Diagonal entries are ignored.
    pub fn set(&mut self, over: usize, under: usize, value: bool) {
        assert!(over < self.n && under < self.n, "index out of range");
        if over != under {
            self.bits[over * self.n + under] = value;
        }
    }

    /// Ordered pairs `(i, j)`, `i != j`, in lexicographic order.
    pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
    }

    pub fn is_zero(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for (i, j) in Self::pairs(self.n) {
            t.set(j, i, self.get(i, j));
        }
        t
    }

    /// True when every off-diagonal bit has the same value.
    pub fn is_constant(&self) -> bool {
        let mut it = Self::pairs(self.n).map(|(i, j)| self.get(i, j));
        match it.next() {
            None => true,
            Some(first) => it.all(|b| b == first),
        }
    }

    /// All `2^(n(n-1))` parity matrices on `n` components, ordered by the
    /// binary number formed by the bits in pair order.
    pub fn all(n: usize) -> impl Iterator<Item = ParityMatrix> {
        let k = n * n.saturating_sub(1);
        assert!(k < 32, "too many components to enumerate");
        (0u32..1 << k).map(move |mask| {
            let mut m = ParityMatrix::zero(n);
            for (b, (i, j)) in Self::pairs(n).enumerate() {
                m.set(i, j, mask >> (k - 1 - b) & 1 == 1);
            }
            m
        })
    }
}

impl fmt::Display for ParityMatrix {
    /// Rows of `0`/`1` with `.` on the diagonal, rows separated by `/`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str("/")?;
            }
            for j in 0..self.n {
                let c = if i == j {
                    '.'
                } else if self.get(i, j) {
                    '1'
                } else {
                    '0'
                };
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

pub fn parity_matrix(d: &GaussDiagram) -> ParityMatrix {
    ParityMatrix::of(d)
}

/// Every virtual linking number even.
pub fn is_homogeneous_proper(d: &GaussDiagram) -> bool {
    ParityMatrix::of(d).is_zero()
}

/// Self chords of component `i` separated by an odd number of endpoint
/// occurrences along the component, in position order.
pub fn odd_crossings(d: &GaussDiagram, i: usize) -> Result<Vec<ChordId>, InvariantError> {
    let count = d.num_components();
    if i >= count {
        return Err(InvariantError::IndexOutOfRange { index: i, count });
    }
    let comp = d.component(i);
    let mut first_seen: Vec<(ChordId, usize)> = Vec::new();
    let mut odd = Vec::new();
    let mut has_self = false;
    for (q, e) in comp.iter().enumerate() {
        if let Some(k) = first_seen.iter().position(|&(c, _)| c == e.chord) {
            let (c, p) = first_seen.swap_remove(k);
            has_self = true;
            if (q - p - 1) % 2 == 1 {
                odd.push((p, c));
            }
        } else {
            first_seen.push((e.chord, q));
        }
    }
    if has_self && comp.len() % 2 == 1 {
        return Err(InvariantError::OddWritheUndefined { component: i });
    }
    odd.sort();
    Ok(odd.into_iter().map(|(_, c)| c).collect())
}

/// Sum of the signs of the odd self crossings of component `i`.
pub fn odd_writhe_component(d: &GaussDiagram, i: usize) -> Result<i64, InvariantError> {
    Ok(odd_crossings(d, i)?
        .into_iter()
        .map(|c| d.sign(c).map_or(0, |s| s.value()))
        .sum())
}

/// Sum of the per-component odd writhes.
pub fn odd_writhe(d: &GaussDiagram) -> Result<i64, InvariantError> {
    (0..d.num_components())
        .map(|i| odd_writhe_component(d, i))
        .sum()
}

/// Every invariant of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub components: usize,
    pub chords: usize,
    /// `vlk[i][j]` for `i != j`; zero on the diagonal.
    pub vlk: Vec<Vec<i64>>,
    pub linking: Vec<Vec<HalfInt>>,
    pub parity: ParityMatrix,
    pub homogeneous_proper: bool,
    /// Per-component odd writhe, `None` where undefined.
    pub odd_writhe: Vec<Option<i64>>,
    /// Sum of `odd_writhe`, `None` when any component is undefined.
    pub odd_writhe_total: Option<i64>,
}

impl InvariantReport {
    pub fn of(d: &GaussDiagram) -> Self {
        let n = d.num_components();
        let mut vlk = vlk_matrix(d);
        for (i, row) in vlk.iter_mut().enumerate() {
            row[i] = 0;
        }
        let linking = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| HalfInt::from_twice(vlk[i][j] + vlk[j][i]))
                    .collect()
            })
            .collect();
        let parity = ParityMatrix::of(d);
        let odd_writhe: Vec<Option<i64>> = (0..n).map(|i| odd_writhe_component(d, i).ok()).collect();
        let odd_writhe_total = odd_writhe.iter().copied().sum();
        InvariantReport {
            components: n,
            chords: d.num_chords(),
            vlk,
            linking,
            homogeneous_proper: parity.is_zero(),
            parity,
            odd_writhe,
            odd_writhe_total,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse;

    fn d(s: &str) -> GaussDiagram {
        parse(s).unwrap()
    }

    #[test]
    fn virtual_hopf() {
        let h = d("U1+ ; O1+");
        assert_eq!(vlk(&h, 1, 0), Ok(1));
        assert_eq!(vlk(&h, 0, 1), Ok(0));
        assert_eq!(linking_number(&h, 0, 1).unwrap().to_string(), "1/2");
        let p = parity_matrix(&h);
        assert!(p.get(1, 0) && !p.get(0, 1));
        assert!(!is_homogeneous_proper(&h));
    }

    #[test]
    fn torus_n1() {
        let t = d("O1- O2- ; U1- U2-");
        assert_eq!(vlk(&t, 1, 0), Ok(0));
        assert_eq!(vlk(&t, 0, 1), Ok(-2));
        assert_eq!(linking_number(&t, 0, 1), Ok(HalfInt::from_twice(-2)));
        assert_eq!(linking_number(&t, 0, 1).unwrap().to_string(), "-1");
        assert!(is_homogeneous_proper(&t));
    }

    #[test]
    fn empty_diagram() {
        let u = d(";");
        assert_eq!(vlk(&u, 0, 1), Ok(0));
        assert_eq!(linking_number(&u, 1, 0).unwrap().to_string(), "0");
        assert!(is_homogeneous_proper(&u));
        assert_eq!(odd_writhe(&u), Ok(0));
    }

    #[test]
    fn index_errors() {
        let u = d(";");
        assert_eq!(vlk(&u, 0, 0), Err(InvariantError::SameComponent));
        assert_eq!(
            vlk(&u, 0, 2),
            Err(InvariantError::IndexOutOfRange { index: 2, count: 2 })
        );
    }

    #[test]
    fn virtual_trefoil_odd_writhe() {
        let k = d("O1+ O2+ U1+ U2+ ;");
        assert_eq!(odd_crossings(&k, 0), Ok(alloc::vec![ChordId(1), ChordId(2)]));
        assert_eq!(odd_writhe(&k), Ok(2));
    }

    #[test]
    fn mixed_only_has_zero_odd_writhe() {
        let h = d("U1+ ; O1+");
        assert_eq!(odd_writhe_component(&h, 0), Ok(0));
        assert_eq!(odd_writhe_component(&h, 1), Ok(0));
    }

    #[test]
    fn odd_writhe_undefined_on_odd_component() {
        let x = d("O1+ U1+ U2+ ; O2+");
        assert_eq!(
            odd_writhe_component(&x, 0),
            Err(InvariantError::OddWritheUndefined { component: 0 })
        );
        let r = InvariantReport::of(&x);
        assert_eq!(r.odd_writhe, alloc::vec![None, Some(0)]);
        assert_eq!(r.odd_writhe_total, None);
    }

    #[test]
    fn two_component_link_with_even_odd_writhe() {
        // vlk(2,1) = 2, vlk(1,2) = 0 and a virtual trefoil on each component
        let x = d("O1+ O2+ U1+ U2+ U5+ U6+ ; O3+ O4+ U3+ U4+ O5+ O6+");
        assert_eq!(vlk(&x, 1, 0), Ok(2));
        assert_eq!(vlk(&x, 0, 1), Ok(0));
        assert!(is_homogeneous_proper(&x));
        assert_eq!(odd_writhe(&x), Ok(4));
    }

    #[test]
    fn parity_enumeration() {
        assert_eq!(ParityMatrix::all(2).count(), 4);
        let all: alloc::collections::BTreeSet<_> = ParityMatrix::all(3).collect();
        assert_eq!(all.len(), 64);
        let m = ParityMatrix::with_bits(2, &[(1, 0)]);
        assert_eq!(m.to_string(), ".0/1.");
        assert_eq!(m.transpose(), ParityMatrix::with_bits(2, &[(0, 1)]));
        assert!(!m.is_constant());
    }
}
