//! Text and JSON renderings of command results.
//!
//! Component indices are 1-based in every output.

use std::fmt::Write;

use arcshift_core::codec::serialize;
use arcshift_core::invariants::InvariantReport;
use arcshift_core::GaussDiagram;
use serde::Serialize;

fn opt(v: Option<i64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| x.to_string())
}

/// `inv` output.
pub fn inv_text(r: &InvariantReport) -> String {
    let mut s = String::new();
    let n = r.components;
    writeln!(s, "components: {n}").unwrap();
    writeln!(s, "chords: {}", r.chords).unwrap();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                writeln!(s, "vlk({},{}): {}", i + 1, j + 1, r.vlk[i][j]).unwrap();
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            writeln!(s, "linking({},{}): {}", i + 1, j + 1, r.linking[i][j]).unwrap();
        }
    }
    writeln!(s, "parity: {}", r.parity).unwrap();
    writeln!(s, "homogeneous_proper: {}", r.homogeneous_proper).unwrap();
    for (i, j) in r.odd_writhe.iter().enumerate() {
        writeln!(s, "odd_writhe({}): {}", i + 1, opt(*j)).unwrap();
    }
    writeln!(s, "odd_writhe: {}", opt(r.odd_writhe_total)).unwrap();
    s
}

#[derive(Serialize, Debug)]
pub struct VlkEntry {
    pub over: usize,
    pub under: usize,
    pub value: i64,
}

#[derive(Serialize, Debug)]
pub struct LinkingEntry {
    pub first: usize,
    pub second: usize,
    /// Twice the linking number, which is always an integer.
    pub twice: i64,
    pub text: String,
}

#[derive(Serialize, Debug)]
pub struct InvJson {
    pub components: usize,
    pub chords: usize,
    pub vlk: Vec<VlkEntry>,
    pub linking: Vec<LinkingEntry>,
    pub parity: String,
    pub homogeneous_proper: bool,
    pub odd_writhe: Vec<Option<i64>>,
    pub odd_writhe_total: Option<i64>,
}

impl From<&InvariantReport> for InvJson {
    fn from(r: &InvariantReport) -> Self {
        let n = r.components;
        let mut vlk = Vec::new();
        let mut linking = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    vlk.push(VlkEntry {
                        over: i + 1,
                        under: j + 1,
                        value: r.vlk[i][j],
                    });
                }
                if i < j {
                    linking.push(LinkingEntry {
                        first: i + 1,
                        second: j + 1,
                        twice: r.linking[i][j].twice(),
                        text: r.linking[i][j].to_string(),
                    });
                }
            }
        }
        InvJson {
            components: n,
            chords: r.chords,
            vlk,
            linking,
            parity: r.parity.to_string(),
            homogeneous_proper: r.homogeneous_proper,
            odd_writhe: r.odd_writhe.clone(),
            odd_writhe_total: r.odd_writhe_total,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct ClassifyJson {
    pub components: usize,
    pub parity: String,
    pub canonical: String,
    pub homogeneous_proper: bool,
}

impl ClassifyJson {
    pub fn text(&self) -> String {
        format!(
            "parity: {}\ncanonical: {}\nhomogeneous_proper: {}\n",
            self.parity, self.canonical, self.homogeneous_proper
        )
    }
}

#[derive(Serialize, Debug)]
pub struct EqJson {
    pub equivalent: bool,
    pub parity_first: String,
    pub parity_second: String,
    pub witness: Option<String>,
}

impl EqJson {
    pub fn text(&self) -> String {
        let mut s = format!("equivalent: {}\n", self.equivalent);
        if !self.equivalent {
            writeln!(s, "parity: {} vs {}", self.parity_first, self.parity_second).unwrap();
        }
        if let Some(w) = &self.witness {
            writeln!(s, "witness: {w}").unwrap();
        }
        s
    }
}

#[derive(Serialize, Debug)]
pub struct UnknotJson {
    pub arc_shifts: usize,
    pub moves: usize,
    pub script: String,
}

impl UnknotJson {
    pub fn text(&self) -> String {
        format!(
            "arc_shifts: {}\nmoves: {}\nscript: {}\n",
            self.arc_shifts, self.moves, self.script
        )
    }
}

#[derive(Serialize, Debug)]
pub struct BoundsJson {
    /// `None` when obstructed.
    pub lower: Option<usize>,
    pub obstructed: bool,
    pub parity: String,
    pub upper: Option<usize>,
    pub exact: bool,
    pub witness: Option<String>,
    pub upper_source: Option<&'static str>,
    pub states: usize,
    pub budget: String,
}

impl BoundsJson {
    /// First line `lower L, upper U, exact|inexact[, witness: ...]`, then
    /// one `key: value` line per remaining field.
    pub fn text(&self) -> String {
        let lower = self.lower.map_or("obstructed".to_string(), |k| k.to_string());
        let upper = self.upper.map_or("none".to_string(), |k| k.to_string());
        let exact = if self.exact { "exact" } else { "inexact" };
        let mut s = format!("lower {lower}, upper {upper}, {exact}");
        if let Some(w) = &self.witness {
            write!(s, ", witness: {w}").unwrap();
        }
        s.push('\n');
        if self.obstructed {
            writeln!(s, "certificate: parity {} is nonzero", self.parity).unwrap();
        }
        if let Some(src) = self.upper_source {
            writeln!(s, "upper_source: {src}").unwrap();
        }
        writeln!(s, "states: {}", self.states).unwrap();
        writeln!(s, "budget: {}", self.budget).unwrap();
        s
    }
}

#[derive(Serialize, Debug)]
pub struct EndpointJson {
    pub chord: u32,
    /// `"O"` or `"U"`.
    pub role: char,
    /// `"+"` or `"-"`.
    pub sign: char,
}

/// Structured form of the diagram text: the same tokens, one array per
/// component, with chords renamed by first occurrence.
#[derive(Serialize, Debug)]
pub struct DiagramJson {
    pub text: String,
    pub components: Vec<Vec<EndpointJson>>,
}

impl From<&GaussDiagram> for DiagramJson {
    fn from(d: &GaussDiagram) -> Self {
        let d = d.relabeled();
        let components = d
            .components()
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|e| EndpointJson {
                        chord: e.chord.0,
                        role: e.role.as_char(),
                        sign: d.sign(e.chord).expect("valid diagram").as_char(),
                    })
                    .collect()
            })
            .collect();
        DiagramJson {
            text: serialize(&d),
            components,
        }
    }
}
