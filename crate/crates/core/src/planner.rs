//! Constructive unknotting of homogeneous proper links and reduction of any
//! link to the canonical representative of its arc shift class.
//!
//! Scripts produced here use *labeled* semantics: before each move the
//! current diagram is relabeled by first occurrence (see
//! [`GaussDiagram::relabeled`]) and the chord ids in the move refer to those
//! labels. [`replay`] follows the same convention, so a script replays
//! identically on any relabeling of its input.
//!
//! Pipeline, one component at a time from left to right:
//!
//! 1. arc-shift the Under endpoint of every self chord towards its Over
//!    endpoint until the two are adjacent, then delete the chord by R1;
//! 2. for each partner component, take two mixed chords of the same type,
//!    bubble the second one's endpoints next to the first one's on both
//!    circles by single arc shifts, flip a sign if they agree, and delete the
//!    pair by R2;
//! 3. (classification only) at most one chord of each type survives; sort
//!    the survivors into the canonical layout and make every sign positive.

use alloc::vec::Vec;

use crate::diagram::{ChordId, GaussDiagram, Role, Sign};
use crate::families::gen_canonical;
use crate::invariants::ParityMatrix;
use crate::moves::{apply, invert, MoveError, MoveInstance, MoveScript};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PlanError {
    #[error("not homogeneous proper: odd virtual linking numbers {0}")]
    NotHomogeneousProper(ParityMatrix),
    #[error("self chord {0} is not adjacent")]
    SelfChordNotAdjacent(ChordId),
    #[error("component counts differ: {0} vs {1}")]
    ComponentMismatch(usize, usize),
}

/// Failure to replay a script.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("move {index} does not apply: {error}")]
pub struct ReplayError {
    /// 0-based index of the first inapplicable move.
    pub index: usize,
    pub error: MoveError,
}

/// A script together with the diagrams it connects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub input: GaussDiagram,
    pub script: MoveScript,
    /// Relabeled by first occurrence.
    pub output: GaussDiagram,
}

/// Applies `script` to `d` under labeled semantics. The result is relabeled.
pub fn replay(d: &GaussDiagram, script: &MoveScript) -> Result<GaussDiagram, ReplayError> {
    let mut state = d.relabeled();
    for (index, m) in script.iter().enumerate() {
        state = apply(&state, m)
            .map_err(|error| ReplayError { index, error })?
            .relabeled();
    }
    Ok(state)
}

/// Every intermediate state of a replay, starting with the relabeled input.
pub fn replay_states(d: &GaussDiagram, script: &MoveScript) -> Result<Vec<GaussDiagram>, ReplayError> {
    let mut states = alloc::vec![d.relabeled()];
    for (index, m) in script.iter().enumerate() {
        let next = apply(states.last().expect("nonempty"), m)
            .map_err(|error| ReplayError { index, error })?
            .relabeled();
        states.push(next);
    }
    Ok(states)
}

/// The script that undoes `script`: pointwise inverses in reverse order,
/// valid from `replay(d, script)` back to `d`.
pub fn invert_script(d: &GaussDiagram, script: &MoveScript) -> Result<MoveScript, ReplayError> {
    let states = replay_states(d, script)?;
    let mut out = MoveScript::new();
    for (index, m) in script.iter().enumerate().rev() {
        let before = &states[index];
        let inv = invert(m, before).map_err(|error| ReplayError { index, error })?;
        let raw_after = apply(before, m).map_err(|error| ReplayError { index, error })?;
        out.push(inv.renamed(&raw_after.relabel_map()));
    }
    Ok(out)
}

/// Records moves given in stable raw ids as a labeled script.
pub(crate) struct Trace {
    input: GaussDiagram,
    raw: GaussDiagram,
    script: MoveScript,
}

impl Trace {
    pub(crate) fn new(d: &GaussDiagram) -> Self {
        Trace {
            input: d.clone(),
            raw: d.clone(),
            script: MoveScript::new(),
        }
    }

    pub(crate) fn diagram(&self) -> &GaussDiagram {
        &self.raw
    }

    pub(crate) fn push(&mut self, m: MoveInstance) {
        let labeled = m.renamed(&self.raw.relabel_map());
        self.raw = apply(&self.raw, &m).unwrap_or_else(|e| panic!("planner emitted inapplicable move {m:?}: {e}"));
        self.script.push(labeled);
    }

    pub(crate) fn finish(self) -> Reduction {
        Reduction {
            input: self.input,
            output: self.raw.relabeled(),
            script: self.script,
        }
    }

    /// Self chords of `component`, by first occurrence.
    fn self_chords(&self, component: usize) -> Vec<ChordId> {
        let comp = self.raw.component(component);
        let mut out: Vec<ChordId> = Vec::new();
        for e in comp {
            if !out.contains(&e.chord) && comp.iter().filter(|f| f.chord == e.chord).count() == 2 {
                out.push(e.chord);
            }
        }
        out
    }

    fn position(&self, component: usize, chord: ChordId, role: Role) -> usize {
        self.raw
            .component(component)
            .iter()
            .position(|e| e.chord == chord && e.role == role)
            .expect("endpoint present")
    }

    /// Arc-shifts the endpoint `(mover, mover_role)` one slot at a time
    /// along the shorter arc until it is adjacent to `(anchor, anchor_role)`.
    fn bubble(&mut self, component: usize, anchor: (ChordId, Role), mover: (ChordId, Role)) {
        loop {
            let len = self.raw.component(component).len();
            let pa = self.position(component, anchor.0, anchor.1);
            let pb = self.position(component, mover.0, mover.1);
            let ahead = (pb + len - pa) % len;
            if ahead == 1 || ahead == len - 1 {
                return;
            }
            if ahead - 1 < len - ahead {
                self.push(MoveInstance::ArcShift {
                    component,
                    position: (pb + len - 1) % len,
                });
            } else {
                self.push(MoveInstance::ArcShift {
                    component,
                    position: pb,
                });
            }
        }
    }

    fn parallelize_component(&mut self, component: usize) {
        for c in self.self_chords(component) {
            self.bubble(component, (c, Role::Over), (c, Role::Under));
        }
    }

    fn strip_component(&mut self, component: usize) -> Result<(), PlanError> {
        for c in self.self_chords(component) {
            let m = MoveInstance::R1Remove { chord: c };
            if apply(&self.raw, &m).is_err() {
                return Err(PlanError::SelfChordNotAdjacent(c));
            }
            self.push(m);
        }
        Ok(())
    }

    /// Chords with Over on `over` and Under on `under`, by Over position.
    fn mixed_chords(&self, over: usize, under: usize) -> Vec<ChordId> {
        let placements = self.raw.placements();
        let mut v: Vec<(usize, ChordId)> = placements
            .iter()
            .filter(|(_, p)| p.over.component == over && p.under.component == under)
            .map(|(&c, p)| (p.over.position, c))
            .collect();
        v.sort();
        v.into_iter().map(|(_, c)| c).collect()
    }

    /// Removes same-type chords two at a time until at most one remains.
    fn pair_off(&mut self, over: usize, under: usize) {
        loop {
            let chords = self.mixed_chords(over, under);
            if chords.len() < 2 {
                return;
            }
            let (a, b) = (chords[0], chords[1]);
            self.bubble(over, (a, Role::Over), (b, Role::Over));
            self.bubble(under, (a, Role::Under), (b, Role::Under));
            if self.raw.sign(a) == self.raw.sign(b) {
                self.push(MoveInstance::SignShift { chord: b });
            }
            self.push(MoveInstance::R2Remove { first: a, second: b });
        }
    }

    /// Runs the pipeline; leaves at most one chord per ordered type.
    fn reduce(&mut self) {
        let n = self.raw.num_components();
        for i in 0..n {
            self.parallelize_component(i);
            self.strip_component(i)
                .expect("self chords are adjacent after parallelizing");
            for j in i + 1..n {
                self.parallelize_component(j);
                self.strip_component(j)
                    .expect("self chords are adjacent after parallelizing");
                self.pair_off(i, j);
                self.pair_off(j, i);
            }
        }
    }

    /// Sorts the surviving chords into the layout of [`gen_canonical`] and
    /// makes their signs positive.
    fn arrange_canonical(&mut self) {
        let n = self.raw.num_components();
        let rank = |p: &crate::diagram::ChordPlacement| p.over.component * n + p.under.component;
        for k in 0..n {
            loop {
                let placements = self.raw.placements();
                let comp = self.raw.component(k);
                let swap = (0..comp.len().saturating_sub(1))
                    .find(|&p| rank(&placements[&comp[p].chord]) > rank(&placements[&comp[p + 1].chord]));
                match swap {
                    Some(position) => self.push(MoveInstance::ArcShift {
                        component: k,
                        position,
                    }),
                    None => break,
                }
            }
        }
        for c in self.raw.traversal_order() {
            if self.raw.sign(c) == Some(Sign::Neg) {
                self.push(MoveInstance::SignShift { chord: c });
            }
        }
    }
}

/// Makes every self chord's endpoints adjacent using arc shifts only.
pub fn parallelize_self(d: &GaussDiagram) -> Reduction {
    let mut t = Trace::new(d);
    for k in 0..d.num_components() {
        t.parallelize_component(k);
    }
    t.finish()
}

/// Deletes every self chord by R1. All self chords must already be adjacent.
pub fn strip_self(d: &GaussDiagram) -> Result<Reduction, PlanError> {
    let mut t = Trace::new(d);
    for k in 0..d.num_components() {
        t.strip_component(k)?;
    }
    Ok(t.finish())
}

/// A script taking a homogeneous proper diagram to the unlink, using arc
/// shifts, sign shifts, R1 and R2 removals only.
pub fn unknot(d: &GaussDiagram) -> Result<MoveScript, PlanError> {
    let parity = ParityMatrix::of(d);
    if !parity.is_zero() {
        return Err(PlanError::NotHomogeneousProper(parity));
    }
    let mut t = Trace::new(d);
    t.reduce();
    debug_assert!(t.diagram().is_unlink());
    Ok(t.finish().script)
}

/// Reduces `d` to `gen_canonical(parity_matrix(d))`.
pub fn canonicalize_to_class(d: &GaussDiagram) -> Reduction {
    let mut t = Trace::new(d);
    t.reduce();
    t.arrange_canonical();
    let r = t.finish();
    debug_assert_eq!(r.output, gen_canonical(&ParityMatrix::of(d)));
    r
}

/// Outcome of an equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    /// Script taking `d1` to `d2` (labeled semantics), when requested.
    pub witness: Option<MoveScript>,
}

/// Arc shift equivalence: equal parity matrices. With `want_witness`, a
/// replay-verified script from `d1` to `d2` is attached.
pub fn equivalent(d1: &GaussDiagram, d2: &GaussDiagram, want_witness: bool) -> Result<Equivalence, PlanError> {
    if d1.num_components() != d2.num_components() {
        return Err(PlanError::ComponentMismatch(d1.num_components(), d2.num_components()));
    }
    let equivalent = ParityMatrix::of(d1) == ParityMatrix::of(d2);
    let witness = if equivalent && want_witness {
        let r1 = canonicalize_to_class(d1);
        let r2 = canonicalize_to_class(d2);
        let mut w = r1.script;
        w.extend(&invert_script(d2, &r2.script).expect("planner scripts replay"));
        let end = replay(d1, &w).expect("witness replays");
        assert_eq!(end, d2.relabeled(), "witness must end at the second diagram");
        Some(w)
    } else {
        None
    };
    Ok(Equivalence { equivalent, witness })
}
