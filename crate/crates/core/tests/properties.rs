#![allow(clippy::needless_range_loop)]

mod oracle;

use std::collections::BTreeMap;

use arcshift_core::codec::{parse, parse_script, serialize, serialize_script};
use arcshift_core::diagram::{ChordId, Endpoint, GaussDiagram, Sign};
use arcshift_core::families::{gen_canonical, gen_random};
use arcshift_core::invariants::{odd_writhe, parity_matrix, vlk_matrix, ParityMatrix};
use arcshift_core::moves::{applicable, apply, invert, MoveInstance, MoveKind, MoveScript, PairOrder, RoleOrder};
use arcshift_core::planner::{canonicalize_to_class, equivalent, invert_script, replay, unknot};
use arcshift_core::search::{bracket, lower_bound, upper_bound, LowerBound, SearchBudget};
use proptest::prelude::*;
use proptest::test_runner::Config;

fn diagram(max_components: usize, max_chords: usize, homogeneous: bool) -> impl Strategy<Value = GaussDiagram> {
    (1..=max_components, 0..=max_chords, any::<u64>())
        .prop_map(move |(k, m, seed)| gen_random(k, m, seed, homogeneous).unwrap())
}

fn same_size_pair() -> impl Strategy<Value = (GaussDiagram, GaussDiagram)> {
    (1usize..=3, 0usize..=7, 0usize..=7, any::<u64>(), any::<u64>())
        .prop_map(|(k, m1, m2, s1, s2)| (gen_random(k, m1, s1, false).unwrap(), gen_random(k, m2, s2, false).unwrap()))
}

/// A diagram together with one applicable move of a kind from `kinds`.
fn with_move(kinds: &'static [MoveKind], homogeneous: bool) -> impl Strategy<Value = (GaussDiagram, MoveInstance)> {
    (diagram(3, 7, homogeneous), any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_filter_map(
        "no applicable move",
        move |(d, ki, mi)| {
            let kind = kinds[ki.index(kinds.len())];
            let moves = applicable(&d, kind);
            if moves.is_empty() {
                return None;
            }
            let m = moves[mi.index(moves.len())];
            Some((d, m))
        },
    )
}

/// Rotates each component and renames chords by a permutation.
fn scramble(d: &GaussDiagram, shifts: &[usize], perm_seed: u64) -> GaussDiagram {
    let n = d.num_chords() as u32;
    let mut ids: Vec<u32> = (1..=n).collect();
    let mut x = perm_seed | 1;
    for i in (1..ids.len()).rev() {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        ids.swap(i, (x % (i as u64 + 1)) as usize);
    }
    let d = d.relabeled();
    let rename = |c: ChordId| ids[c.0 as usize - 1] + 10;
    let comps = d
        .components()
        .iter()
        .enumerate()
        .map(|(k, comp)| {
            let mut v: Vec<Endpoint> = comp.iter().map(|e| Endpoint::new(rename(e.chord), e.role)).collect();
            if !v.is_empty() {
                let r = shifts.get(k).copied().unwrap_or(0) % v.len();
                v.rotate_left(r);
            }
            v
        })
        .collect();
    let signs: BTreeMap<ChordId, Sign> = d.signs().iter().map(|(&c, &s)| (ChordId(rename(c)), s)).collect();
    GaussDiagram::new(comps, signs).unwrap()
}

const REIDEMEISTER: &[MoveKind] = &[
    MoveKind::R1Remove,
    MoveKind::R1Insert,
    MoveKind::R2Remove,
    MoveKind::R2Insert,
    MoveKind::R3,
];
const RIGID: &[MoveKind] = &[MoveKind::Xi, MoveKind::ForbiddenOver, MoveKind::ForbiddenUnder];
const SHIFTS: &[MoveKind] = &[MoveKind::ArcShift, MoveKind::SignShift];

proptest! {
    #![proptest_config(Config::with_cases(1000))]

    #[test]
    fn endpoint_count_is_twice_chords(d in diagram(4, 10, false)) {
        let total: usize = d.components().iter().map(Vec::len).sum();
        prop_assert_eq!(total, 2 * d.num_chords());
        prop_assert!(d.validate().is_empty());
    }

    #[test]
    fn canonical_key_ignores_rotation_and_labels(
        d in diagram(3, 8, false),
        shifts in prop::collection::vec(0usize..20, 3),
        perm in any::<u64>(),
    ) {
        let s = scramble(&d, &shifts, perm);
        prop_assert_eq!(d.canonical_key(), s.canonical_key());
        prop_assert_eq!(d.mirror().canonical_key(), s.mirror().canonical_key());
    }

    #[test]
    fn canonical_key_separates_sign_changes(d in diagram(3, 6, false), i in any::<prop::sample::Index>()) {
        prop_assume!(d.num_chords() > 0);
        let c = ChordId(i.index(d.num_chords()) as u32 + 1);
        let flipped = apply(&d, &MoveInstance::SignShift { chord: c }).unwrap();
        // Total sign sum is a relabeling and rotation invariant that changes.
        prop_assert_ne!(d.canonical_key(), flipped.canonical_key());
    }

    #[test]
    fn mirror_is_involution(d in diagram(3, 8, false)) {
        prop_assert_eq!(d.mirror().mirror(), d.clone());
        let n = d.num_components();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert_eq!(oracle::vlk(&d.mirror(), i, j), -oracle::vlk(&d, j, i));
                }
            }
        }
        prop_assert_eq!(parity_matrix(&d.mirror()), parity_matrix(&d).transpose());
    }

    #[test]
    fn diagram_text_round_trip(d in diagram(4, 10, false)) {
        let text = serialize(&d);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &d.relabeled());
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn parsing_is_total(text in "[OU0-9+\\- ;\n#x]{0,40}") {
        let _ = parse(&text);
        let _ = parse_script(&text);
    }

    #[test]
    fn vlk_matches_oracle(d in diagram(4, 10, false)) {
        let v = vlk_matrix(&d);
        let n = d.num_components();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert_eq!(v[i][j], oracle::vlk(&d, i, j));
                }
            }
        }
        let j = odd_writhe(&d).ok();
        prop_assert_eq!(j, oracle::total_odd_writhe(&d));
    }

    #[test]
    fn sign_sum_parity_matches_count(d in diagram(4, 10, false)) {
        let n = d.num_components();
        let placements = d.placements();
        let pm = parity_matrix(&d);
        for (i, j) in ParityMatrix::pairs(n) {
            let count = placements
                .values()
                .filter(|p| p.over.component == i && p.under.component == j)
                .count();
            prop_assert_eq!(pm.get(i, j), count % 2 == 1);
        }
    }

    #[test]
    fn canonicalize_is_idempotent_and_classifies(d in diagram(3, 8, false)) {
        let r = canonicalize_to_class(&d);
        prop_assert_eq!(&r.output, &gen_canonical(&parity_matrix(&d)));
        prop_assert_eq!(replay(&d, &r.script).unwrap(), r.output.clone());
        let again = canonicalize_to_class(&r.output);
        prop_assert_eq!(again.output, r.output);
        prop_assert!(again.script.is_empty());
    }

    #[test]
    fn equivalence_matches_parity((a, b) in same_size_pair()) {
        let e = equivalent(&a, &b, true).unwrap();
        prop_assert_eq!(e.equivalent, oracle::parity(&a) == oracle::parity(&b));
        if let Some(w) = e.witness {
            prop_assert_eq!(replay(&a, &w).unwrap(), b.relabeled());
        }
    }

    #[test]
    fn mirror_equivalence_is_parity_symmetry(d in diagram(3, 8, false)) {
        let e = equivalent(&d, &d.mirror(), false).unwrap();
        let pm = parity_matrix(&d);
        prop_assert_eq!(e.equivalent, pm == pm.transpose());
        if d.num_components() <= 2 {
            prop_assert_eq!(e.equivalent, pm.is_constant());
        }
    }
}

proptest! {
    #![proptest_config(Config::with_cases(10_000))]

    #[test]
    fn reidemeister_moves_keep_vlk_and_odd_writhe((d, m) in with_move(REIDEMEISTER, false)) {
        let after = apply(&d, &m).unwrap();
        prop_assert_eq!(oracle::vlk_all(&after), oracle::vlk_all(&d));
        for (x, y) in oracle::odd_writhe(&d).into_iter().zip(oracle::odd_writhe(&after)) {
            if let (Some(x), Some(y)) = (x, y) {
                prop_assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn rigid_moves_keep_vlk((d, m) in with_move(RIGID, false)) {
        let after = apply(&d, &m).unwrap();
        prop_assert_eq!(oracle::vlk_all(&after), oracle::vlk_all(&d));
        prop_assert_eq!(after.signs(), d.signs());
    }

    #[test]
    fn shifts_keep_parity((d, m) in with_move(SHIFTS, false)) {
        let after = apply(&d, &m).unwrap();
        prop_assert_eq!(parity_matrix(&after), parity_matrix(&d));
        // Each touched mixed chord moves its own entry by -2 * sign, so an
        // entry shifts by 4 when both touched chords share a type.
        let n = d.num_components();
        let placements = d.placements();
        let mut expected = vec![vec![0i64; n]; n];
        for c in m.chords_touched(&d) {
            let p = placements[&c];
            expected[p.over.component][p.under.component] -= 2 * d.sign(c).unwrap().value();
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let delta = oracle::vlk(&after, i, j) - oracle::vlk(&d, i, j);
                    prop_assert_eq!(delta, expected[i][j]);
                }
            }
        }
    }

    #[test]
    fn arc_shift_moves_odd_writhe_by_at_most_two((d, m) in with_move(&[MoveKind::ArcShift], true)) {
        let after = apply(&d, &m).unwrap();
        for (x, y) in oracle::odd_writhe(&d).into_iter().zip(oracle::odd_writhe(&after)) {
            let (x, y) = (x.unwrap(), y.unwrap());
            prop_assert!((y - x).abs() <= 2);
        }
    }

    #[test]
    fn arc_shift_flips_only_touched_chords((d, m) in with_move(&[MoveKind::ArcShift], false)) {
        let MoveInstance::ArcShift { component, position } = m else { unreachable!() };
        let comp = d.component(component);
        let touched = [comp[position].chord, comp[(position + 1) % comp.len()].chord];
        let after = apply(&d, &m).unwrap();
        for &c in d.signs().keys() {
            let (x, y) = (oracle::is_odd(&d, c.0), oracle::is_odd(&after, c.0));
            if touched.contains(&c) && x.is_some() {
                // Across the seam of an odd-length component the count
                // depends on the basepoint, so only even lengths are checked.
                if comp.len() % 2 == 0 {
                    prop_assert_ne!(x, y);
                }
            } else {
                prop_assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn every_move_inverts((d, m) in with_move(&MoveKind::ALL, false)) {
        let d = d.relabeled();
        let after = apply(&d, &m).unwrap();
        let inv = invert(&m, &d).unwrap();
        prop_assert_eq!(apply(&after, &inv).unwrap().relabeled(), d.clone());
        let script = MoveScript::from(vec![m]);
        let back = invert_script(&d, &script).unwrap();
        prop_assert_eq!(replay(&replay(&d, &script).unwrap(), &back).unwrap(), d);
    }

    #[test]
    fn script_text_round_trip(moves in prop::collection::vec(any_move(), 0..8)) {
        let s = MoveScript::from(moves);
        prop_assert_eq!(parse_script(&serialize_script(&s)).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(Config::with_cases(500))]

    #[test]
    fn unknot_completes_with_consistent_cost(d in diagram(3, 12, true)) {
        let s = unknot(&d).unwrap();
        prop_assert!(s.iter().all(|m| !matches!(
            m.kind(),
            MoveKind::R3 | MoveKind::R1Insert | MoveKind::R2Insert
        )));
        prop_assert!(replay(&d, &s).unwrap().is_unlink());
        let j = oracle::total_odd_writhe(&d).unwrap();
        prop_assert!(2 * s.arc_shift_cost() as i64 >= j.abs());
    }
}

proptest! {
    #![proptest_config(Config::with_cases(150))]

    #[test]
    fn bracket_is_sound_and_monotone(d in diagram(2, 5, true)) {
        let small = SearchBudget { max_arc_shifts: 1, max_states: 2_000, ..SearchBudget::default() };
        let large = SearchBudget { max_arc_shifts: 2, max_states: 20_000, ..SearchBudget::default() };
        let b = bracket(&d, large);
        let LowerBound::AtLeast(lo) = lower_bound(&d) else { panic!("homogeneous proper") };
        let (up, w) = b.upper.clone().unwrap();
        prop_assert!(lo <= up);
        prop_assert!(replay(&d, &w).unwrap().is_unlink());
        let with_r3 = SearchBudget { allow_r3: true, ..large };
        if let Some((k, w)) = upper_bound(&d, with_r3).upper {
            prop_assert_eq!(w.arc_shift_cost(), k);
            prop_assert!(lo <= k);
            prop_assert!(replay(&d, &w).unwrap().is_unlink());
        }
        let cost = |o: Option<(usize, MoveScript)>| o.map_or(usize::MAX, |(k, _)| k);
        prop_assert!(cost(upper_bound(&d, large).upper) <= cost(upper_bound(&d, small).upper));
    }
}

trait Touched {
    fn chords_touched(&self, d: &GaussDiagram) -> Vec<ChordId>;
}

impl Touched for MoveInstance {
    /// Chords whose sign the move negates.
    fn chords_touched(&self, d: &GaussDiagram) -> Vec<ChordId> {
        match *self {
            MoveInstance::SignShift { chord } => vec![chord],
            MoveInstance::ArcShift { component, position } => {
                let comp = d.component(component);
                vec![comp[position].chord, comp[(position + 1) % comp.len()].chord]
            }
            _ => Vec::new(),
        }
    }
}

fn any_move() -> impl Strategy<Value = MoveInstance> {
    let id = || (1u32..30).prop_map(ChordId);
    let sign = || prop_oneof![Just(Sign::Pos), Just(Sign::Neg)];
    prop_oneof![
        id().prop_map(|chord| MoveInstance::R1Remove { chord }),
        (0usize..4, 0usize..20, sign(), prop_oneof![Just(RoleOrder::OverUnder), Just(RoleOrder::UnderOver)])
            .prop_map(|(component, gap, sign, order)| MoveInstance::R1Insert { component, gap, sign, order }),
        (id(), id()).prop_map(|(first, second)| MoveInstance::R2Remove { first, second }),
        (0usize..4, 0usize..20, 0usize..4, 0usize..20, sign(), prop_oneof![Just(PairOrder::Parallel), Just(PairOrder::Anti)])
            .prop_map(|(over_component, over_gap, under_component, under_gap, sign, order)| MoveInstance::R2Insert {
                over_component, over_gap, under_component, under_gap, sign, order,
            }),
        (id(), id(), id()).prop_map(|(a, b, c)| MoveInstance::R3 { chords: [a, b, c] }),
        (0usize..4, 0usize..20).prop_map(|(component, position)| MoveInstance::ArcShift { component, position }),
        id().prop_map(|chord| MoveInstance::SignShift { chord }),
        (0usize..4, 0usize..20).prop_map(|(component, position)| MoveInstance::Xi { component, position }),
        (0usize..4, 0usize..20).prop_map(|(component, position)| MoveInstance::ForbiddenOver { component, position }),
        (0usize..4, 0usize..20).prop_map(|(component, position)| MoveInstance::ForbiddenUnder { component, position }),
    ]
}
