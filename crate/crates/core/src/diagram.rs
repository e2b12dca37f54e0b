//! Gauss diagrams of ordered multi-component virtual links.
//!
//! A diagram is a list of circles, one per component, each carrying a cyclic
//! sequence of chord endpoints. Every chord runs from its over endpoint (the
//! tail) to its under endpoint (the head) and carries a sign. Virtual
//! crossings leave no trace on a Gauss diagram and are not represented.
//!
//! Component indices are 0-based throughout the library API; the text
//! formats in [`crate::codec`] are 1-based.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Neg;

/// Identifier of a chord. Any positive integer is allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordId(pub u32);

impl fmt::Display for ChordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Crossing sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// Which end of a chord an endpoint is. `Over` is the tail, `Under` the head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub chord: ChordId,
    pub role: Role,
}

impl Endpoint {
    pub fn new(chord: u32, role: Role) -> Self {
        Endpoint { chord: ChordId(chord), role }
    }

    pub fn over(chord: u32) -> Self {
        Self::new(chord, Role::Over)
    }

    pub fn under(chord: u32) -> Self {
        Self::new(chord, Role::Under)
    }
}

/// Position of an endpoint: component index and cyclic position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub component: usize,
    pub position: usize,
}

/// Location of both endpoints of one chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChordPlacement {
    pub over: Slot,
    pub under: Slot,
}

/// Self chord of one component, or mixed chord between two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChordClass {
    SelfChord(usize),
    Mixed { over: usize, under: usize },
}

/// A reason a diagram is malformed.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("chord id 0 on component {component} is not positive")]
    ZeroId { component: usize },
    #[error("chord {chord} appears {count} times")]
    WrongCount { chord: ChordId, count: usize },
    #[error("chord {chord} has two Over endpoints")]
    TwoOver { chord: ChordId },
    #[error("chord {chord} has two Under endpoints")]
    TwoUnder { chord: ChordId },
    #[error("chord {chord} has no sign")]
    MissingSign { chord: ChordId },
    #[error("sign given for chord {chord}, which has no endpoints")]
    OrphanSign { chord: ChordId },
}

/// Error returned by queries naming a chord or component that does not exist.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LookupError {
    #[error("unknown chord {0}")]
    UnknownChord(ChordId),
    #[error("component {index} out of range (diagram has {count})")]
    ComponentOutOfRange { index: usize, count: usize },
}

/// An ordered virtual link diagram in Gauss-diagram form.
///
/// Values are immutable: every operation returns a new diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    components: Vec<Vec<Endpoint>>,
    signs: BTreeMap<ChordId, Sign>,
}

impl GaussDiagram {
    /// Builds a diagram, rejecting it with the full list of violations when
    /// malformed.
    pub fn new(
        components: Vec<Vec<Endpoint>>,
        signs: BTreeMap<ChordId, Sign>,
    ) -> Result<Self, Vec<Violation>> {
        let d = Self::from_parts_unchecked(components, signs);
        let violations = d.validate();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(violations)
        }
    }

    /// Builds a diagram without checking it. Use [`GaussDiagram::validate`]
    /// before handing the result to any other operation.
    pub fn from_parts_unchecked(
        components: Vec<Vec<Endpoint>>,
        signs: BTreeMap<ChordId, Sign>,
    ) -> Self {
        GaussDiagram { components, signs }
    }

    /// The `n`-component unlink.
    pub fn unlink(n: usize) -> Self {
        GaussDiagram {
            components: alloc::vec![Vec::new(); n],
            signs: BTreeMap::new(),
        }
    }

    pub fn components(&self) -> &[Vec<Endpoint>] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &[Endpoint] {
        &self.components[index]
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_chords(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &BTreeMap<ChordId, Sign> {
        &self.signs
    }

    pub fn sign(&self, chord: ChordId) -> Option<Sign> {
        self.signs.get(&chord).copied()
    }

    /// True when no component carries an endpoint.
    pub fn is_unlink(&self) -> bool {
        self.components.iter().all(Vec::is_empty)
    }

    pub fn into_parts(self) -> (Vec<Vec<Endpoint>>, BTreeMap<ChordId, Sign>) {
        (self.components, self.signs)
    }

    /// Every invariant violation, in a deterministic order.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen: BTreeMap<ChordId, (usize, usize)> = BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for e in comp {
                if e.chord.0 == 0 {
                    out.push(Violation::ZeroId { component: ci });
                    continue;
                }
                let entry = seen.entry(e.chord).or_insert((0, 0));
                match e.role {
                    Role::Over => entry.0 += 1,
                    Role::Under => entry.1 += 1,
                }
            }
        }
        for (&chord, &(overs, unders)) in &seen {
            if overs > 1 {
                out.push(Violation::TwoOver { chord });
            }
            if unders > 1 {
                out.push(Violation::TwoUnder { chord });
            }
            if overs + unders != 2 {
                out.push(Violation::WrongCount {
                    chord,
                    count: overs + unders,
                });
            }
            if !self.signs.contains_key(&chord) {
                out.push(Violation::MissingSign { chord });
            }
        }
        for &chord in self.signs.keys() {
            if !seen.contains_key(&chord) {
                out.push(Violation::OrphanSign { chord });
            }
        }
        out
    }

    /// Where both endpoints of every chord sit.
    pub fn placements(&self) -> BTreeMap<ChordId, ChordPlacement> {
        let mut over = BTreeMap::new();
        let mut under = BTreeMap::new();
        for (component, comp) in self.components.iter().enumerate() {
            for (position, e) in comp.iter().enumerate() {
                let slot = Slot {
                    component,
                    position,
                };
                match e.role {
                    Role::Over => over.insert(e.chord, slot),
                    Role::Under => under.insert(e.chord, slot),
                };
            }
        }
        over.into_iter()
            .filter_map(|(c, o)| under.get(&c).map(|&u| (c, ChordPlacement { over: o, under: u })))
            .collect()
    }

    pub fn placement(&self, chord: ChordId) -> Result<ChordPlacement, LookupError> {
        let mut over = None;
        let mut under = None;
        for (component, comp) in self.components.iter().enumerate() {
            for (position, e) in comp.iter().enumerate() {
                if e.chord == chord {
                    let slot = Slot {
                        component,
                        position,
                    };
                    match e.role {
                        Role::Over => over = Some(slot),
                        Role::Under => under = Some(slot),
                    }
                }
            }
        }
        match (over, under) {
            (Some(over), Some(under)) => Ok(ChordPlacement { over, under }),
            _ => Err(LookupError::UnknownChord(chord)),
        }
    }

    pub fn chord_class(&self, chord: ChordId) -> Result<ChordClass, LookupError> {
        let p = self.placement(chord)?;
        Ok(if p.over.component == p.under.component {
            ChordClass::SelfChord(p.over.component)
        } else {
            ChordClass::Mixed {
                over: p.over.component,
                under: p.under.component,
            }
        })
    }

    /// Chord ids in order of first occurrence along the components.
    pub fn traversal_order(&self) -> Vec<ChordId> {
        let mut seen = BTreeMap::new();
        let mut order = Vec::with_capacity(self.signs.len());
        for e in self.components.iter().flatten() {
            if seen.insert(e.chord, ()).is_none() {
                order.push(e.chord);
            }
        }
        order
    }

    /// Map from current ids to first-occurrence labels `1, 2, ...`.
    pub fn relabel_map(&self) -> BTreeMap<ChordId, ChordId> {
        self.traversal_order()
            .into_iter()
            .enumerate()
            .map(|(i, c)| (c, ChordId(i as u32 + 1)))
            .collect()
    }

    /// The same diagram with chords renamed by first occurrence.
    pub fn relabeled(&self) -> GaussDiagram {
        let map = self.relabel_map();
        self.renamed(&map)
    }

    /// True when chord ids already follow first-occurrence order.
    pub fn is_relabeled(&self) -> bool {
        self.traversal_order()
            .iter()
            .enumerate()
            .all(|(i, c)| c.0 == i as u32 + 1)
    }

    pub(crate) fn renamed(&self, map: &BTreeMap<ChordId, ChordId>) -> GaussDiagram {
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|e| Endpoint {
                        chord: map[&e.chord],
                        role: e.role,
                    })
                    .collect()
            })
            .collect();
        let signs = self.signs.iter().map(|(c, &s)| (map[c], s)).collect();
        GaussDiagram { components, signs }
    }

    /// Mirror image: every crossing changes type, so each chord reverses
    /// direction and changes sign.
    pub fn mirror(&self) -> GaussDiagram {
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|e| Endpoint {
                        chord: e.chord,
                        role: e.role.flip(),
                    })
                    .collect()
            })
            .collect();
        let signs = self.signs.iter().map(|(&c, &s)| (c, -s)).collect();
        GaussDiagram { components, signs }
    }

    /// Key identifying the diagram up to chord relabeling and independent
    /// rotation of each component. Component order is kept.
    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey::of(self)
    }

    pub(crate) fn with_parts(components: Vec<Vec<Endpoint>>, signs: BTreeMap<ChordId, Sign>) -> Self {
        GaussDiagram { components, signs }
    }
}

/// Minimal serialized form of a diagram over all relabelings and rotations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    fn of(d: &GaussDiagram) -> CanonicalKey {
        // Labels are assigned in traversal order, so the lexicographically
        // smallest encoding is found component by component, keeping every
        // partial labeling that ties for the smallest prefix.
        let mut words: Vec<u32> = Vec::new();
        let mut states: Vec<BTreeMap<ChordId, u32>> = alloc::vec![BTreeMap::new()];
        for comp in &d.components {
            words.push(comp.len() as u32);
            if comp.is_empty() {
                continue;
            }
            let mut best: Option<Vec<u32>> = None;
            let mut next_states: Vec<BTreeMap<ChordId, u32>> = Vec::new();
            for labels in &states {
                for rot in 0..comp.len() {
                    let mut labels = labels.clone();
                    let mut enc = Vec::with_capacity(comp.len());
                    for k in 0..comp.len() {
                        let e = comp[(rot + k) % comp.len()];
                        let fresh = labels.len() as u32 + 1;
                        let label = *labels.entry(e.chord).or_insert(fresh);
                        let role = matches!(e.role, Role::Under) as u32;
                        let sign = matches!(d.signs.get(&e.chord), Some(Sign::Neg)) as u32;
                        enc.push(label << 2 | role << 1 | sign);
                    }
                    match best.as_ref().map(|b| enc.cmp(b)) {
                        None | Some(core::cmp::Ordering::Less) => {
                            best = Some(enc);
                            next_states.clear();
                            next_states.push(labels);
                        }
                        Some(core::cmp::Ordering::Equal) => {
                            if !next_states.contains(&labels) {
                                next_states.push(labels);
                            }
                        }
                        Some(core::cmp::Ordering::Greater) => {}
                    }
                }
            }
            words.extend(best.unwrap_or_default());
            states = next_states;
        }
        let mut bytes = Vec::with_capacity(words.len() * 4);
        for w in words {
            bytes.extend_from_slice(&w.to_be_bytes());
        }
        CanonicalKey(bytes)
    }
}

/// `(i + delta) mod len` for cyclic positions.
pub(crate) fn cyc(i: usize, delta: isize, len: usize) -> usize {
    debug_assert!(len > 0);
    (i as isize + delta).rem_euclid(len as isize) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse;

    #[test]
    fn validate_accepts_empty_and_single_chord() {
        assert!(parse(";").unwrap().validate().is_empty());
        assert!(parse("O1+ ; U1+").unwrap().validate().is_empty());
    }

    #[test]
    fn validate_reports_duplicate_over() {
        let d = GaussDiagram::from_parts_unchecked(
            alloc::vec![
                alloc::vec![Endpoint::over(1), Endpoint::over(1)],
                alloc::vec![Endpoint::under(1)],
            ],
            [(ChordId(1), Sign::Pos)].into_iter().collect(),
        );
        let v = d.validate();
        assert!(v.contains(&Violation::TwoOver { chord: ChordId(1) }));
        assert_eq!(
            alloc::format!("{}", Violation::TwoOver { chord: ChordId(1) }),
            "chord 1 has two Over endpoints"
        );
    }

    #[test]
    fn validate_reports_sign_table_mismatch() {
        let d = GaussDiagram::from_parts_unchecked(
            alloc::vec![alloc::vec![Endpoint::over(2), Endpoint::under(2)]],
            [(ChordId(3), Sign::Pos)].into_iter().collect(),
        );
        let v = d.validate();
        assert!(v.contains(&Violation::MissingSign { chord: ChordId(2) }));
        assert!(v.contains(&Violation::OrphanSign { chord: ChordId(3) }));
    }

    #[test]
    fn chord_classes() {
        let d = parse("O1+ U1+ ;").unwrap();
        assert_eq!(d.chord_class(ChordId(1)), Ok(ChordClass::SelfChord(0)));
        let hopf = parse("U1+ ; O1+").unwrap();
        assert_eq!(
            hopf.chord_class(ChordId(1)),
            Ok(ChordClass::Mixed { over: 1, under: 0 })
        );
        let torus = parse("O1- O2- ; U1- U2-").unwrap();
        assert_eq!(
            torus.chord_class(ChordId(2)),
            Ok(ChordClass::Mixed { over: 0, under: 1 })
        );
        assert_eq!(
            torus.chord_class(ChordId(9)),
            Err(LookupError::UnknownChord(ChordId(9)))
        );
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(parse(";").unwrap().mirror(), parse(";").unwrap());
        assert_eq!(
            parse("U1+ ; O1+").unwrap().mirror(),
            parse("O1- ; U1-").unwrap()
        );
    }

    #[test]
    fn canonical_key_examples() {
        let k = |s: &str| parse(s).unwrap().canonical_key();
        assert_eq!(k("O1+ ; U1+"), k("O7+ ; U7+"));
        assert_eq!(k("O1+ U2+ U1+ O2+ ;"), k("U2+ U1+ O2+ O1+ ;"));
        assert_ne!(k("U1+ ; O1+"), k("O1+ ; U1+"));
        assert_ne!(k("O1+ U1+"), k("O1- U1-"));
        assert_ne!(k(";"), k(""));
    }

    #[test]
    fn relabel_follows_first_occurrence() {
        let d = parse("U9+ O4- ; O9+ U4-").unwrap();
        assert_eq!(d.relabeled(), parse("U1+ O2- ; O1+ U2-").unwrap());
        assert!(!d.is_relabeled());
        assert!(d.relabeled().is_relabeled());
    }
}
