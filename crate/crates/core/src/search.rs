//! Brackets on the arc shift number of a diagram.
//!
//! The lower bound comes from invariants only. The upper bound comes from a
//! breadth-first search layered by arc shift count over Reidemeister-simplified
//! states, with the planner's script as a fallback when the search gives up.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{CanonicalKey, GaussDiagram};
use crate::invariants::{odd_writhe, vlk_matrix, ParityMatrix};
use crate::moves::{apply, applicable, MoveInstance, MoveKind, MoveScript};
use crate::planner::{replay, unknot, Reduction, Trace};

/// Greedy R1/R2 removal to a fixpoint. At every step the first applicable
/// R1Remove is taken, or else the first applicable R2Remove.
pub fn simplify(d: &GaussDiagram) -> Reduction {
    let mut t = Trace::new(d);
    loop {
        let cur = t.diagram();
        let next = applicable(cur, MoveKind::R1Remove)
            .into_iter()
            .next()
            .or_else(|| applicable(cur, MoveKind::R2Remove).into_iter().next());
        match next {
            Some(m) => t.push(m),
            None => return t.finish(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowerBound {
    /// Some virtual linking number is odd: no sequence of moves reaches the
    /// unlink.
    Obstructed,
    AtLeast(usize),
}

/// Certified lower bound from the parity matrix, the odd writhe and the
/// virtual linking numbers.
pub fn lower_bound(d: &GaussDiagram) -> LowerBound {
    if !ParityMatrix::of(d).is_zero() {
        return LowerBound::Obstructed;
    }
    let j = odd_writhe(d).unwrap_or(0);
    let from_j = j.unsigned_abs().div_ceil(2) as usize;
    let vlk_nonzero = vlk_matrix(d)
        .iter()
        .enumerate()
        .any(|(i, row)| row.iter().enumerate().any(|(j, &v)| i != j && v != 0));
    let nontrivial = !simplify(d).output.is_unlink() && (vlk_nonzero || j != 0);
    LowerBound::AtLeast(from_j.max(nontrivial as usize))
}

/// Limits for [`upper_bound`]. Every field must be positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_arc_shifts: usize,
    pub max_states: usize,
    pub max_chords_inflight: usize,
    /// Also explore R3 moves, at zero cost.
    pub allow_r3: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_arc_shifts: 3,
            max_states: 200_000,
            max_chords_inflight: 16,
            allow_r3: false,
        }
    }
}

/// How a search ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    /// The depth limit was reached without meeting the unlink.
    DepthExhausted,
    StatesExhausted,
    /// Every reachable state was visited. With R3 disabled this only means
    /// the restricted move graph has no path.
    SpaceExhausted,
    /// The search was not run (the diagram is obstructed).
    Skipped,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Found => "found",
            SearchStatus::DepthExhausted => "depth exhausted",
            SearchStatus::StatesExhausted => "states exhausted",
            SearchStatus::SpaceExhausted => "space exhausted",
            SearchStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Arc shift count and a replay-verified script to the unlink.
    pub upper: Option<(usize, MoveScript)>,
    pub states: usize,
    pub status: SearchStatus,
}

/// Successor moves in a fixed order: sign shifts by descending chord id, then
/// arc shifts by component and position.
fn arc_moves(d: &GaussDiagram) -> Vec<MoveInstance> {
    let mut out: Vec<MoveInstance> = d
        .signs()
        .keys()
        .rev()
        .map(|&chord| MoveInstance::SignShift { chord })
        .collect();
    out.extend(applicable(d, MoveKind::ArcShift));
    out
}

struct Node {
    state: GaussDiagram,
    script: MoveScript,
}

/// Layered search for the fewest arc shifts reaching the unlink.
///
/// States are simplify-normal and deduplicated by canonical key. The result
/// depends only on the input and the budget.
pub fn upper_bound(d: &GaussDiagram, budget: SearchBudget) -> SearchOutcome {
    let start = simplify(d);
    let mut states = 1;
    if start.output.is_unlink() {
        return found(d, 0, start.script, states);
    }
    let mut seen: BTreeSet<CanonicalKey> = BTreeSet::new();
    seen.insert(start.output.canonical_key());
    let mut layer = VecDeque::from([Node {
        state: start.output,
        script: start.script,
    }]);

    for depth in 1..=budget.max_arc_shifts {
        let mut next = VecDeque::new();
        while let Some(node) = layer.pop_front() {
            let mut succ: Vec<(MoveInstance, bool)> = arc_moves(&node.state).into_iter().map(|m| (m, true)).collect();
            if budget.allow_r3 {
                succ.extend(applicable(&node.state, MoveKind::R3).into_iter().map(|m| (m, false)));
            }
            for (m, costs) in succ {
                let moved = apply(&node.state, &m).expect("enumerated move applies").relabeled();
                let s = simplify(&moved);
                if s.output.num_chords() > budget.max_chords_inflight {
                    continue;
                }
                let mut script = node.script.clone();
                script.push(m);
                script.extend(&s.script);
                if s.output.is_unlink() {
                    // A zero-cost R3 successor stays at the parent's cost.
                    let k = depth - usize::from(!costs);
                    return found(d, k, script, states + 1);
                }
                if !seen.insert(s.output.canonical_key()) {
                    continue;
                }
                states += 1;
                if states >= budget.max_states {
                    return SearchOutcome {
                        upper: None,
                        states,
                        status: SearchStatus::StatesExhausted,
                    };
                }
                let child = Node {
                    state: s.output,
                    script,
                };
                if costs {
                    next.push_back(child);
                } else {
                    layer.push_back(child);
                }
            }
        }
        if next.is_empty() {
            return SearchOutcome {
                upper: None,
                states,
                status: SearchStatus::SpaceExhausted,
            };
        }
        layer = next;
    }
    SearchOutcome {
        upper: None,
        states,
        status: SearchStatus::DepthExhausted,
    }
}

fn found(d: &GaussDiagram, k: usize, script: MoveScript, states: usize) -> SearchOutcome {
    let end = replay(d, &script).expect("search witness replays");
    assert!(end.is_unlink(), "search witness must end at the unlink");
    assert_eq!(script.arc_shift_cost(), k);
    SearchOutcome {
        upper: Some((k, script)),
        states,
        status: SearchStatus::Found,
    }
}

/// Where the reported upper bound came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperSource {
    Search,
    Planner,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub lower: LowerBound,
    /// Arc shift count and witness script to the unlink.
    pub upper: Option<(usize, MoveScript)>,
    pub upper_source: Option<UpperSource>,
    pub exact: bool,
    pub states: usize,
    pub status: SearchStatus,
}

/// Lower and upper bounds together. When the search does not find the
/// unlink, or finds a costlier path, the planner's script is used instead.
pub fn bracket(d: &GaussDiagram, budget: SearchBudget) -> Bracket {
    let lower = lower_bound(d);
    if lower == LowerBound::Obstructed {
        return Bracket {
            lower,
            upper: None,
            upper_source: None,
            exact: false,
            states: 0,
            status: SearchStatus::Skipped,
        };
    }
    let outcome = upper_bound(d, budget);
    let planned = unknot(d).expect("zero parity matrix admits unknotting");
    let planned_cost = planned.arc_shift_cost();
    let (upper, upper_source) = match outcome.upper {
        Some((k, w)) if k <= planned_cost => (Some((k, w)), Some(UpperSource::Search)),
        _ => (Some((planned_cost, planned)), Some(UpperSource::Planner)),
    };
    let exact = matches!((lower, &upper), (LowerBound::AtLeast(a), Some((b, _))) if a == *b);
    Bracket {
        lower,
        upper,
        upper_source,
        exact,
        states: outcome.states,
        status: outcome.status,
    }
}
