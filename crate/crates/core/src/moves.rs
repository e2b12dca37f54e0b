//! Rewrites on Gauss diagrams: Reidemeister moves, arc shifts, sign shifts,
//! the Ξ-move and the forbidden moves.
//!
//! Every move is a pure function from a diagram to a diagram. Positional
//! parameters are 0-based cyclic positions on a 0-based component.
//!
//! Insertion gaps: inserting a pair of endpoints at gap `g` into a component
//! of length `len` places them at cyclic positions `g` and `g + 1` of the new
//! component (length `len + 2`), so `g` ranges over `0..=len + 1`. The value
//! `len + 1` straddles the seam between the last and first positions. This
//! makes every removal exactly invertible, including removal of a pair that
//! wraps around the end of a component.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{cyc, ChordId, Endpoint, GaussDiagram, Role, Sign, Slot};

/// Order of the two endpoints created by [`MoveInstance::R1Insert`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RoleOrder {
    /// Over endpoint first, then Under.
    OverUnder,
    /// Under endpoint first, then Over.
    UnderOver,
}

/// Relative order of the under pair created by [`MoveInstance::R2Insert`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairOrder {
    /// Under endpoints in the same order as the over endpoints.
    Parallel,
    /// Under endpoints in the opposite order.
    Anti,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    R1Remove,
    R1Insert,
    R2Remove,
    R2Insert,
    R3,
    ArcShift,
    SignShift,
    Xi,
    ForbiddenOver,
    ForbiddenUnder,
}

impl MoveKind {
    pub const ALL: [MoveKind; 10] = [
        MoveKind::R1Remove,
        MoveKind::R1Insert,
        MoveKind::R2Remove,
        MoveKind::R2Insert,
        MoveKind::R3,
        MoveKind::ArcShift,
        MoveKind::SignShift,
        MoveKind::Xi,
        MoveKind::ForbiddenOver,
        MoveKind::ForbiddenUnder,
    ];
}

/// One fully parameterized rewrite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveInstance {
    /// Delete a self chord whose endpoints are cyclically adjacent.
    R1Remove { chord: ChordId },
    /// Create a chord with adjacent endpoints at `gap`.
    R1Insert {
        component: usize,
        gap: usize,
        sign: Sign,
        order: RoleOrder,
    },
    /// Delete two oppositely signed chords whose over endpoints are adjacent
    /// and whose under endpoints are adjacent.
    R2Remove { first: ChordId, second: ChordId },
    /// Create chords `a` (sign `sign`) and `b` (sign `-sign`): over pair
    /// `(O_a, O_b)` at `over_gap`, then the under pair at `under_gap`.
    R2Insert {
        over_component: usize,
        over_gap: usize,
        under_component: usize,
        under_gap: usize,
        sign: Sign,
        order: PairOrder,
    },
    /// Swap within the pairs {O(c1),O(c2)}, {U(c1),O(c3)}, {U(c2),U(c3)}.
    R3 { chords: [ChordId; 3] },
    /// Swap the endpoints at `position` and `position + 1` and negate both
    /// chord signs.
    ArcShift { component: usize, position: usize },
    /// Negate one chord sign.
    SignShift { chord: ChordId },
    /// Swap the endpoints at `position` and `position + 2`.
    Xi { component: usize, position: usize },
    /// Swap two adjacent Over endpoints.
    ForbiddenOver { component: usize, position: usize },
    /// Swap two adjacent Under endpoints.
    ForbiddenUnder { component: usize, position: usize },
}

impl MoveInstance {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveInstance::R1Remove { .. } => MoveKind::R1Remove,
            MoveInstance::R1Insert { .. } => MoveKind::R1Insert,
            MoveInstance::R2Remove { .. } => MoveKind::R2Remove,
            MoveInstance::R2Insert { .. } => MoveKind::R2Insert,
            MoveInstance::R3 { .. } => MoveKind::R3,
            MoveInstance::ArcShift { .. } => MoveKind::ArcShift,
            MoveInstance::SignShift { .. } => MoveKind::SignShift,
            MoveInstance::Xi { .. } => MoveKind::Xi,
            MoveInstance::ForbiddenOver { .. } => MoveKind::ForbiddenOver,
            MoveInstance::ForbiddenUnder { .. } => MoveKind::ForbiddenUnder,
        }
    }

    /// Arc shifts and sign shifts each cost one arc shift move.
    pub fn is_arc_shift(&self) -> bool {
        matches!(
            self,
            MoveInstance::ArcShift { .. } | MoveInstance::SignShift { .. }
        )
    }

    /// Chord ids referenced by the instance.
    pub fn chords(&self) -> Vec<ChordId> {
        match *self {
            MoveInstance::R1Remove { chord } | MoveInstance::SignShift { chord } => {
                alloc::vec![chord]
            }
            MoveInstance::R2Remove { first, second } => alloc::vec![first, second],
            MoveInstance::R3 { chords } => chords.to_vec(),
            _ => Vec::new(),
        }
    }

    /// The same move with chord ids renamed through `map`.
    pub fn renamed(&self, map: &BTreeMap<ChordId, ChordId>) -> MoveInstance {
        let r = |c: ChordId| map.get(&c).copied().unwrap_or(c);
        match *self {
            MoveInstance::R1Remove { chord } => MoveInstance::R1Remove { chord: r(chord) },
            MoveInstance::SignShift { chord } => MoveInstance::SignShift { chord: r(chord) },
            MoveInstance::R2Remove { first, second } => MoveInstance::R2Remove {
                first: r(first),
                second: r(second),
            },
            MoveInstance::R3 { chords } => MoveInstance::R3 {
                chords: [r(chords[0]), r(chords[1]), r(chords[2])],
            },
            other => other,
        }
    }
}

/// Role pair of the two endpoints swapped by an arc shift (T = tail/Over,
/// H = head/Under), or `S` for a sign shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcShiftVariant {
    TT,
    HH,
    TH,
    HT,
    S,
}

impl fmt::Display for ArcShiftVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ArcShiftVariant::TT => "TT",
            ArcShiftVariant::HH => "HH",
            ArcShiftVariant::TH => "TH",
            ArcShiftVariant::HT => "HT",
            ArcShiftVariant::S => "S",
        };
        f.write_str(s)
    }
}

/// Variant of an arc-shift-type move as applied to `d`; `None` for other
/// moves or when the move does not apply.
pub fn arc_shift_variant(d: &GaussDiagram, m: &MoveInstance) -> Option<ArcShiftVariant> {
    match *m {
        MoveInstance::SignShift { .. } => Some(ArcShiftVariant::S),
        MoveInstance::ArcShift {
            component,
            position,
        } => {
            let comp = d.components().get(component)?;
            if comp.len() < 2 || position >= comp.len() {
                return None;
            }
            let a = comp[position].role;
            let b = comp[(position + 1) % comp.len()].role;
            Some(match (a, b) {
                (Role::Over, Role::Over) => ArcShiftVariant::TT,
                (Role::Under, Role::Under) => ArcShiftVariant::HH,
                (Role::Over, Role::Under) => ArcShiftVariant::TH,
                (Role::Under, Role::Over) => ArcShiftVariant::HT,
            })
        }
        _ => None,
    }
}

/// A replayable sequence of moves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveScript {
    pub moves: Vec<MoveInstance>,
}

impl MoveScript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, m: MoveInstance) {
        self.moves.push(m);
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, MoveInstance> {
        self.moves.iter()
    }

    /// Number of ArcShift and SignShift moves.
    pub fn arc_shift_cost(&self) -> usize {
        self.moves.iter().filter(|m| m.is_arc_shift()).count()
    }

    pub fn extend(&mut self, other: &MoveScript) {
        self.moves.extend_from_slice(&other.moves);
    }
}

impl From<Vec<MoveInstance>> for MoveScript {
    fn from(moves: Vec<MoveInstance>) -> Self {
        MoveScript { moves }
    }
}

impl<'a> IntoIterator for &'a MoveScript {
    type Item = &'a MoveInstance;
    type IntoIter = core::slice::Iter<'a, MoveInstance>;

    fn into_iter(self) -> Self::IntoIter {
        self.moves.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("unknown chord {0}")]
    UnknownChord(ChordId),
    #[error("component {0} out of range")]
    ComponentOutOfRange(usize),
    #[error("position {position} out of range on component {component}")]
    PositionOutOfRange { component: usize, position: usize },
    #[error("gap {gap} out of range on component {component}")]
    GapOutOfRange { component: usize, gap: usize },
    #[error("component {component} is too short for this move")]
    TooShort { component: usize },
    #[error("endpoints are not adjacent")]
    NotAdjacent,
    #[error("both endpoints belong to the same chord")]
    SameChord,
    #[error("endpoint roles do not fit the move")]
    WrongRoles,
    #[error("chord signs do not fit the move")]
    WrongSigns,
    #[error("chord {0} is not a self chord")]
    NotSelfChord(ChordId),
    #[error("inserted chords would not form a removable pair")]
    BadInsertion,
}

fn adjacent(d: &GaussDiagram, a: Slot, b: Slot) -> bool {
    if a.component != b.component || a == b {
        return false;
    }
    let len = d.component(a.component).len();
    b.position == (a.position + 1) % len || a.position == (b.position + 1) % len
}

/// Of two adjacent positions, the one the other cyclically follows.
fn first_of_pair(len: usize, p: usize, q: usize) -> usize {
    if len == 2 {
        0
    } else if q == (p + 1) % len {
        p
    } else {
        q
    }
}

fn fresh_ids(d: &GaussDiagram, n: usize) -> Vec<ChordId> {
    let mut out = Vec::with_capacity(n);
    let mut next = 1u32;
    while out.len() < n {
        let c = ChordId(next);
        if !d.signs().contains_key(&c) {
            out.push(c);
        }
        next += 1;
    }
    out
}

fn insert_pair(comp: &mut Vec<Endpoint>, gap: usize, first: Endpoint, second: Endpoint) {
    if gap <= comp.len() {
        comp.insert(gap, first);
        comp.insert(gap + 1, second);
    } else {
        comp.push(first);
        comp.insert(0, second);
    }
}

fn remove_slots(components: &mut [Vec<Endpoint>], slots: &mut [Slot]) {
    slots.sort();
    for s in slots.iter().rev() {
        components[s.component].remove(s.position);
    }
}

fn check_position(d: &GaussDiagram, component: usize, position: usize, min_len: usize) -> Result<usize, MoveError> {
    let comp = d
        .components()
        .get(component)
        .ok_or(MoveError::ComponentOutOfRange(component))?;
    if comp.len() < min_len {
        return Err(MoveError::TooShort { component });
    }
    if position >= comp.len() {
        return Err(MoveError::PositionOutOfRange {
            component,
            position,
        });
    }
    Ok(comp.len())
}

fn check_r2_remove(d: &GaussDiagram, first: ChordId, second: ChordId) -> Result<(), MoveError> {
    if first == second {
        return Err(MoveError::SameChord);
    }
    let a = d.placement(first).map_err(|_| MoveError::UnknownChord(first))?;
    let b = d.placement(second).map_err(|_| MoveError::UnknownChord(second))?;
    if d.sign(first) == d.sign(second) {
        return Err(MoveError::WrongSigns);
    }
    if !adjacent(d, a.over, b.over) || !adjacent(d, a.under, b.under) {
        return Err(MoveError::NotAdjacent);
    }
    Ok(())
}

fn r3_pairs(d: &GaussDiagram, chords: [ChordId; 3]) -> Result<[(Slot, Slot); 3], MoveError> {
    let [c1, c2, c3] = chords;
    if c1 == c2 || c2 == c3 || c1 == c3 {
        return Err(MoveError::SameChord);
    }
    let p = |c: ChordId| d.placement(c).map_err(|_| MoveError::UnknownChord(c));
    let (p1, p2, p3) = (p(c1)?, p(c2)?, p(c3)?);
    let pairs = [
        (p1.over, p2.over),
        (p1.under, p3.over),
        (p2.under, p3.under),
    ];
    if pairs.iter().all(|&(a, b)| adjacent(d, a, b)) {
        Ok(pairs)
    } else {
        Err(MoveError::NotAdjacent)
    }
}

/// Applies `m` to `d`, checking every precondition.
pub fn apply(d: &GaussDiagram, m: &MoveInstance) -> Result<GaussDiagram, MoveError> {
    let (mut comps, mut signs) = d.clone().into_parts();
    match *m {
        MoveInstance::R1Remove { chord } => {
            let p = d.placement(chord).map_err(|_| MoveError::UnknownChord(chord))?;
            if p.over.component != p.under.component {
                return Err(MoveError::NotSelfChord(chord));
            }
            if !adjacent(d, p.over, p.under) {
                return Err(MoveError::NotAdjacent);
            }
            remove_slots(&mut comps, &mut [p.over, p.under]);
            signs.remove(&chord);
        }
        MoveInstance::R1Insert {
            component,
            gap,
            sign,
            order,
        } => {
            let comp = comps
                .get_mut(component)
                .ok_or(MoveError::ComponentOutOfRange(component))?;
            if gap > comp.len() + 1 {
                return Err(MoveError::GapOutOfRange { component, gap });
            }
            let id = fresh_ids(d, 1)[0];
            let (a, b) = match order {
                RoleOrder::OverUnder => (Role::Over, Role::Under),
                RoleOrder::UnderOver => (Role::Under, Role::Over),
            };
            insert_pair(
                comp,
                gap,
                Endpoint { chord: id, role: a },
                Endpoint { chord: id, role: b },
            );
            signs.insert(id, sign);
        }
        MoveInstance::R2Remove { first, second } => {
            check_r2_remove(d, first, second)?;
            let a = d.placement(first).expect("checked");
            let b = d.placement(second).expect("checked");
            remove_slots(&mut comps, &mut [a.over, a.under, b.over, b.under]);
            signs.remove(&first);
            signs.remove(&second);
        }
        MoveInstance::R2Insert {
            over_component,
            over_gap,
            under_component,
            under_gap,
            sign,
            order,
        } => {
            let n = comps.len();
            if over_component >= n {
                return Err(MoveError::ComponentOutOfRange(over_component));
            }
            if under_component >= n {
                return Err(MoveError::ComponentOutOfRange(under_component));
            }
            let ids = fresh_ids(d, 2);
            let (a, b) = (ids[0], ids[1]);
            if over_gap > comps[over_component].len() + 1 {
                return Err(MoveError::GapOutOfRange {
                    component: over_component,
                    gap: over_gap,
                });
            }
            insert_pair(
                &mut comps[over_component],
                over_gap,
                Endpoint { chord: a, role: Role::Over },
                Endpoint { chord: b, role: Role::Over },
            );
            if under_gap > comps[under_component].len() + 1 {
                return Err(MoveError::GapOutOfRange {
                    component: under_component,
                    gap: under_gap,
                });
            }
            let (ua, ub) = match order {
                PairOrder::Parallel => (a, b),
                PairOrder::Anti => (b, a),
            };
            insert_pair(
                &mut comps[under_component],
                under_gap,
                Endpoint { chord: ua, role: Role::Under },
                Endpoint { chord: ub, role: Role::Under },
            );
            signs.insert(a, sign);
            signs.insert(b, -sign);
            let out = GaussDiagram::with_parts(comps, signs);
            check_r2_remove(&out, a, b).map_err(|_| MoveError::BadInsertion)?;
            return Ok(out);
        }
        MoveInstance::R3 { chords } => {
            for (x, y) in r3_pairs(d, chords)? {
                let comp = &mut comps[x.component];
                comp.swap(x.position, y.position);
            }
        }
        MoveInstance::ArcShift {
            component,
            position,
        } => {
            let len = check_position(d, component, position, 2)?;
            let q = (position + 1) % len;
            let comp = &mut comps[component];
            let (c1, c2) = (comp[position].chord, comp[q].chord);
            if c1 == c2 {
                return Err(MoveError::SameChord);
            }
            comp.swap(position, q);
            for c in [c1, c2] {
                let s = signs.get_mut(&c).expect("valid diagram");
                *s = -*s;
            }
        }
        MoveInstance::SignShift { chord } => {
            let s = signs.get_mut(&chord).ok_or(MoveError::UnknownChord(chord))?;
            *s = -*s;
        }
        MoveInstance::Xi {
            component,
            position,
        } => {
            let len = check_position(d, component, position, 3)?;
            comps[component].swap(position, (position + 2) % len);
        }
        MoveInstance::ForbiddenOver {
            component,
            position,
        }
        | MoveInstance::ForbiddenUnder {
            component,
            position,
        } => {
            let role = if matches!(m, MoveInstance::ForbiddenOver { .. }) {
                Role::Over
            } else {
                Role::Under
            };
            let len = check_position(d, component, position, 2)?;
            let q = (position + 1) % len;
            let comp = &mut comps[component];
            if comp[position].role != role || comp[q].role != role {
                return Err(MoveError::WrongRoles);
            }
            if comp[position].chord == comp[q].chord {
                return Err(MoveError::SameChord);
            }
            comp.swap(position, q);
        }
    }
    Ok(GaussDiagram::with_parts(comps, signs))
}

/// A move that undoes `m` when applied to `apply(before, m)`.
///
/// Chord ids in the returned move refer to the diagram `apply(before, m)`.
/// Insertions draw fresh ids, so undoing a removal restores `before` up to
/// chord relabeling; every other inverse restores it exactly.
pub fn invert(m: &MoveInstance, before: &GaussDiagram) -> Result<MoveInstance, MoveError> {
    let after = apply(before, m)?;
    Ok(match *m {
        MoveInstance::R1Remove { chord } => {
            let p = before.placement(chord).expect("checked by apply");
            let comp = before.component(p.over.component);
            let first = first_of_pair(comp.len(), p.over.position, p.under.position);
            let order = match comp[first].role {
                Role::Over => RoleOrder::OverUnder,
                Role::Under => RoleOrder::UnderOver,
            };
            MoveInstance::R1Insert {
                component: p.over.component,
                gap: first,
                sign: before.sign(chord).expect("valid"),
                order,
            }
        }
        MoveInstance::R1Insert { .. } => {
            let new = new_chords(before, &after);
            MoveInstance::R1Remove { chord: new[0] }
        }
        MoveInstance::R2Remove { first, second } => {
            let pa = before.placement(first).expect("checked by apply");
            let pb = before.placement(second).expect("checked by apply");
            let ucomp = pa.under.component;
            let ulen = before.component(ucomp).len();
            let y0 = first_of_pair(ulen, pa.under.position, pb.under.position);
            let ocomp = pa.over.component;
            let intermediate: Vec<Endpoint> = before
                .component(ocomp)
                .iter()
                .copied()
                .filter(|e| !(e.role == Role::Under && (e.chord == first || e.chord == second)))
                .collect();
            let pos = |c: ChordId| {
                intermediate
                    .iter()
                    .position(|e| e.chord == c && e.role == Role::Over)
                    .expect("over endpoint present")
            };
            let x0 = first_of_pair(intermediate.len(), pos(first), pos(second));
            let a = intermediate[x0].chord;
            let order = if before.component(ucomp)[y0].chord == a {
                PairOrder::Parallel
            } else {
                PairOrder::Anti
            };
            MoveInstance::R2Insert {
                over_component: ocomp,
                over_gap: x0,
                under_component: ucomp,
                under_gap: y0,
                sign: before.sign(a).expect("valid"),
                order,
            }
        }
        MoveInstance::R2Insert { .. } => {
            let new = new_chords(before, &after);
            MoveInstance::R2Remove {
                first: new[0],
                second: new[1],
            }
        }
        other => other,
    })
}

fn new_chords(before: &GaussDiagram, after: &GaussDiagram) -> Vec<ChordId> {
    after
        .signs()
        .keys()
        .filter(|c| !before.signs().contains_key(c))
        .copied()
        .collect()
}

/// Every instance of `kind` that applies to `d`, ordered by component index
/// and then position (chord traversal order for sign shifts).
pub fn applicable(d: &GaussDiagram, kind: MoveKind) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    let comps = d.components();
    match kind {
        MoveKind::R1Remove => {
            for comp in comps {
                let len = comp.len();
                for p in 0..len {
                    let q = (p + 1) % len;
                    if len >= 2 && comp[p].chord == comp[q].chord && first_of_pair(len, p, q) == p {
                        out.push(MoveInstance::R1Remove {
                            chord: comp[p].chord,
                        });
                    }
                }
            }
        }
        MoveKind::R1Insert => {
            for (component, comp) in comps.iter().enumerate() {
                for gap in 0..=comp.len() + 1 {
                    for sign in [Sign::Pos, Sign::Neg] {
                        for order in [RoleOrder::OverUnder, RoleOrder::UnderOver] {
                            out.push(MoveInstance::R1Insert {
                                component,
                                gap,
                                sign,
                                order,
                            });
                        }
                    }
                }
            }
        }
        MoveKind::R2Remove => {
            for comp in comps {
                let len = comp.len();
                for p in 0..len {
                    let q = (p + 1) % len;
                    let (e, f) = (comp[p], comp[q]);
                    if len >= 2
                        && first_of_pair(len, p, q) == p
                        && e.role == Role::Over
                        && f.role == Role::Over
                        && check_r2_remove(d, e.chord, f.chord).is_ok()
                    {
                        out.push(MoveInstance::R2Remove {
                            first: e.chord,
                            second: f.chord,
                        });
                    }
                }
            }
        }
        MoveKind::R2Insert => {
            for (over_component, ocomp) in comps.iter().enumerate() {
                for over_gap in 0..=ocomp.len() + 1 {
                    for (under_component, ucomp) in comps.iter().enumerate() {
                        let ulen = ucomp.len()
                            + if under_component == over_component { 2 } else { 0 };
                        for under_gap in 0..=ulen + 1 {
                            for sign in [Sign::Pos, Sign::Neg] {
                                for order in [PairOrder::Parallel, PairOrder::Anti] {
                                    let m = MoveInstance::R2Insert {
                                        over_component,
                                        over_gap,
                                        under_component,
                                        under_gap,
                                        sign,
                                        order,
                                    };
                                    if apply(d, &m).is_ok() {
                                        out.push(m);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        MoveKind::R3 => {
            let placements = d.placements();
            for comp in comps {
                let len = comp.len();
                for p in 0..len {
                    for delta in [1isize, -1] {
                        if len < 2 {
                            continue;
                        }
                        let (e, f) = (comp[p], comp[cyc(p, delta, len)]);
                        if e.role != Role::Over || f.role != Role::Over || e.chord == f.chord {
                            continue;
                        }
                        let (c1, c2) = (e.chord, f.chord);
                        let u1 = placements[&c1].under;
                        let ulen = comps[u1.component].len();
                        for nd in [1isize, -1] {
                            let n = comps[u1.component][cyc(u1.position, nd, ulen)];
                            if n.role != Role::Over || n.chord == c1 || n.chord == c2 {
                                continue;
                            }
                            let m = MoveInstance::R3 {
                                chords: [c1, c2, n.chord],
                            };
                            if r3_pairs(d, [c1, c2, n.chord]).is_ok() && !out.contains(&m) {
                                out.push(m);
                            }
                        }
                    }
                }
            }
        }
        MoveKind::ArcShift => {
            for (component, comp) in comps.iter().enumerate() {
                let len = comp.len();
                if len < 2 {
                    continue;
                }
                for position in 0..len {
                    if comp[position].chord != comp[(position + 1) % len].chord {
                        out.push(MoveInstance::ArcShift {
                            component,
                            position,
                        });
                    }
                }
            }
        }
        MoveKind::SignShift => {
            for chord in d.traversal_order() {
                out.push(MoveInstance::SignShift { chord });
            }
        }
        MoveKind::Xi => {
            for (component, comp) in comps.iter().enumerate() {
                if comp.len() >= 3 {
                    for position in 0..comp.len() {
                        out.push(MoveInstance::Xi {
                            component,
                            position,
                        });
                    }
                }
            }
        }
        MoveKind::ForbiddenOver | MoveKind::ForbiddenUnder => {
            let role = if kind == MoveKind::ForbiddenOver {
                Role::Over
            } else {
                Role::Under
            };
            for (component, comp) in comps.iter().enumerate() {
                let len = comp.len();
                if len < 2 {
                    continue;
                }
                for position in 0..len {
                    let (e, f) = (comp[position], comp[(position + 1) % len]);
                    if e.role == role && f.role == role && e.chord != f.chord {
                        out.push(if role == Role::Over {
                            MoveInstance::ForbiddenOver {
                                component,
                                position,
                            }
                        } else {
                            MoveInstance::ForbiddenUnder {
                                component,
                                position,
                            }
                        });
                    }
                }
            }
        }
    }
    out
}
