//! Slow, direct recomputations used to check the library.

#![allow(dead_code)]

use std::collections::HashMap;

use arcshift_core::{GaussDiagram, Role};

/// `(component, position)` of every endpoint, keyed by `(chord, role)`.
fn locate(d: &GaussDiagram) -> HashMap<(u32, bool), (usize, usize)> {
    let mut at = HashMap::new();
    for (c, comp) in d.components().iter().enumerate() {
        for (p, e) in comp.iter().enumerate() {
            at.insert((e.chord.0, e.role == Role::Over), (c, p));
        }
    }
    at
}

/// Signed count of chords running from component `i` over component `j`.
pub fn vlk(d: &GaussDiagram, i: usize, j: usize) -> i64 {
    let at = locate(d);
    d.signs()
        .iter()
        .filter(|(c, _)| at[&(c.0, true)].0 == i && at[&(c.0, false)].0 == j)
        .map(|(_, s)| s.value())
        .sum()
}

pub fn vlk_all(d: &GaussDiagram) -> Vec<i64> {
    let n = d.num_components();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(vlk(d, i, j));
            }
        }
    }
    out
}

pub fn parity(d: &GaussDiagram) -> Vec<bool> {
    vlk_all(d).into_iter().map(|v| v % 2 != 0).collect()
}

/// Whether the self chord `chord` has an odd number of endpoints strictly
/// between its two ends. `None` for chords that are not self chords.
pub fn is_odd(d: &GaussDiagram, chord: u32) -> Option<bool> {
    let at = locate(d);
    let (co, po) = at[&(chord, true)];
    let (cu, pu) = at[&(chord, false)];
    if co != cu {
        return None;
    }
    let between = po.abs_diff(pu) - 1;
    Some(between % 2 == 1)
}

/// Odd writhe per component, `None` where undefined.
pub fn odd_writhe(d: &GaussDiagram) -> Vec<Option<i64>> {
    let at = locate(d);
    (0..d.num_components())
        .map(|k| {
            let self_chords: Vec<_> = d
                .signs()
                .iter()
                .filter(|(c, _)| at[&(c.0, true)].0 == k && at[&(c.0, false)].0 == k)
                .collect();
            if !self_chords.is_empty() && d.component(k).len() % 2 == 1 {
                return None;
            }
            Some(
                self_chords
                    .into_iter()
                    .filter(|(c, _)| is_odd(d, c.0) == Some(true))
                    .map(|(_, s)| s.value())
                    .sum(),
            )
        })
        .collect()
}

pub fn total_odd_writhe(d: &GaussDiagram) -> Option<i64> {
    odd_writhe(d).into_iter().sum()
}
