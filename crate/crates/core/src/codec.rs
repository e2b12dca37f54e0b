//! Text formats for diagrams and move scripts.
//!
//! Diagram grammar:
//!
//! ```text
//! diagram   := component (';' component)*
//! component := token*
//! token     := ('O' | 'U') <positive integer> ('+' | '-')
//! ```
//!
//! Tokens are whitespace separated. Component `k` is the `k`-th block. Both
//! occurrences of a chord carry the same sign character.
//!
//! Script grammar: one move per line (a `;` also separates moves, blank
//! lines and `#` comments are ignored). Components are 1-based, positions
//! and gaps 0-based:
//!
//! ```text
//! R1- <id>
//! R1+ <comp> <gap> <sign> <OU|UO>
//! R2- <id> <id>
//! R2+ <ocomp> <ogap> <ucomp> <ugap> <sign> <PAR|ANTI>
//! R3 <id> <id> <id>
//! AS <comp> <pos>
//! SGN <id>
//! XI <comp> <pos>
//! FO <comp> <pos>
//! FU <comp> <pos>
//! ```

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{ChordId, Endpoint, GaussDiagram, Role, Sign};
use crate::moves::{MoveInstance, MoveScript, PairOrder, RoleOrder};

/// A located parse failure. Lines and columns are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl core::error::Error for ParseError {}

/// All per-line errors of a script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptErrors(pub Vec<ParseError>);

impl fmt::Display for ScriptErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl core::error::Error for ScriptErrors {}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

enum Item<'a> {
    Word(Token<'a>),
    Semicolon,
}

/// Splits on whitespace and `;`, tracking line and column.
fn lex(text: &str) -> Vec<Item<'_>> {
    let mut items = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut start: Option<(usize, usize, usize)> = None;
    for (i, ch) in text.char_indices() {
        let boundary = ch.is_whitespace() || ch == ';';
        if boundary {
            if let Some((s, l, c)) = start.take() {
                items.push(Item::Word(Token {
                    text: &text[s..i],
                    line: l,
                    column: c,
                }));
            }
            if ch == ';' {
                items.push(Item::Semicolon);
            }
        } else if start.is_none() {
            start = Some((i, line, column));
        }
        if ch == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    if let Some((s, l, c)) = start {
        items.push(Item::Word(Token {
            text: &text[s..],
            line: l,
            column: c,
        }));
    }
    items
}

fn err(tok: &Token<'_>, message: impl Into<String>) -> ParseError {
    ParseError {
        line: tok.line,
        column: tok.column,
        message: message.into(),
    }
}

fn parse_endpoint(tok: &Token<'_>) -> Result<(Endpoint, Sign), ParseError> {
    let t = tok.text;
    let bad = || err(tok, format!("bad token '{t}'"));
    let mut chars = t.chars();
    let role = match chars.next() {
        Some('O') => Role::Over,
        Some('U') => Role::Under,
        _ => return Err(bad()),
    };
    let sign = match t.chars().last() {
        Some('+') => Sign::Pos,
        Some('-') => Sign::Neg,
        _ => return Err(bad()),
    };
    if t.len() < 3 {
        return Err(bad());
    }
    let digits = &t[1..t.len() - 1];
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let id: u32 = digits
        .parse()
        .map_err(|_| err(tok, format!("chord id in '{t}' is too large")))?;
    if id == 0 {
        return Err(err(tok, "chord id must be positive"));
    }
    Ok((Endpoint::new(id, role), sign))
}

/// Lexes a diagram without checking chord well-formedness. Positions follow
/// token order.
pub fn parse_unchecked(text: &str) -> Result<GaussDiagram, ParseError> {
    let (components, signs, _) = lex_diagram(text)?;
    Ok(GaussDiagram::from_parts_unchecked(components, signs))
}

type Lexed<'a> = (Vec<Vec<Endpoint>>, BTreeMap<ChordId, Sign>, Vec<(Token<'a>, Endpoint, Sign)>);

fn lex_diagram(text: &str) -> Result<Lexed<'_>, ParseError> {
    let mut components = alloc::vec![Vec::new()];
    let mut signs = BTreeMap::new();
    let mut seen = Vec::new();
    for item in lex(text) {
        match item {
            Item::Semicolon => components.push(Vec::new()),
            Item::Word(tok) => {
                let (e, s) = parse_endpoint(&tok)?;
                signs.entry(e.chord).or_insert(s);
                components.last_mut().expect("nonempty").push(e);
                seen.push((tok, e, s));
            }
        }
    }
    Ok((components, signs, seen))
}

/// Parses a diagram, rejecting malformed chords with the location of the
/// offending token.
pub fn parse(text: &str) -> Result<GaussDiagram, ParseError> {
    let (components, signs, seen) = lex_diagram(text)?;
    let mut first: BTreeMap<ChordId, (usize, Role, Sign)> = BTreeMap::new();
    let mut count: BTreeMap<ChordId, usize> = BTreeMap::new();
    for (i, (tok, e, s)) in seen.iter().enumerate() {
        let n = count.entry(e.chord).or_insert(0);
        *n += 1;
        if *n > 2 {
            return Err(err(tok, format!("chord {} appears more than twice", e.chord)));
        }
        match first.get(&e.chord) {
            None => {
                first.insert(e.chord, (i, e.role, *s));
            }
            Some(&(_, role, sign)) => {
                if role == e.role {
                    let which = if role == Role::Over { "Over" } else { "Under" };
                    return Err(err(tok, format!("chord {} has two {which} endpoints", e.chord)));
                }
                if sign != *s {
                    return Err(err(tok, format!("sign mismatch for chord {}", e.chord)));
                }
            }
        }
    }
    for (chord, &(i, _, _)) in &first {
        if count[chord] != 2 {
            return Err(err(&seen[i].0, format!("chord {chord} appears once")));
        }
    }
    GaussDiagram::new(components, signs).map_err(|v| ParseError {
        line: 1,
        column: 1,
        message: v[0].to_string(),
    })
}

/// Serializes with chords renamed by first occurrence.
pub fn serialize(d: &GaussDiagram) -> String {
    let d = d.relabeled();
    let blocks: Vec<String> = d
        .components()
        .iter()
        .map(|comp| {
            let tokens: Vec<String> = comp
                .iter()
                .map(|e| {
                    let s = d.sign(e.chord).unwrap_or(Sign::Pos);
                    format!("{}{}{}", e.role.as_char(), e.chord, s.as_char())
                })
                .collect();
            tokens.join(" ")
        })
        .collect();
    let mut out = String::new();
    for (i, b) in blocks.iter().enumerate() {
        if i > 0 {
            if !blocks[i - 1].is_empty() {
                out.push(' ');
            }
            out.push(';');
            if !b.is_empty() {
                out.push(' ');
            }
        }
        out.push_str(b);
    }
    out
}

fn fmt_sign(s: Sign) -> char {
    s.as_char()
}

impl fmt::Display for MoveInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MoveInstance::R1Remove { chord } => write!(f, "R1- {chord}"),
            MoveInstance::R1Insert {
                component,
                gap,
                sign,
                order,
            } => {
                let o = match order {
                    RoleOrder::OverUnder => "OU",
                    RoleOrder::UnderOver => "UO",
                };
                write!(f, "R1+ {} {gap} {} {o}", component + 1, fmt_sign(sign))
            }
            MoveInstance::R2Remove { first, second } => write!(f, "R2- {first} {second}"),
            MoveInstance::R2Insert {
                over_component,
                over_gap,
                under_component,
                under_gap,
                sign,
                order,
            } => {
                let o = match order {
                    PairOrder::Parallel => "PAR",
                    PairOrder::Anti => "ANTI",
                };
                write!(
                    f,
                    "R2+ {} {over_gap} {} {under_gap} {} {o}",
                    over_component + 1,
                    under_component + 1,
                    fmt_sign(sign)
                )
            }
            MoveInstance::R3 { chords: [a, b, c] } => write!(f, "R3 {a} {b} {c}"),
            MoveInstance::ArcShift {
                component,
                position,
            } => write!(f, "AS {} {position}", component + 1),
            MoveInstance::SignShift { chord } => write!(f, "SGN {chord}"),
            MoveInstance::Xi {
                component,
                position,
            } => write!(f, "XI {} {position}", component + 1),
            MoveInstance::ForbiddenOver {
                component,
                position,
            } => write!(f, "FO {} {position}", component + 1),
            MoveInstance::ForbiddenUnder {
                component,
                position,
            } => write!(f, "FU {} {position}", component + 1),
        }
    }
}

/// One move per line, each line terminated by a newline.
pub fn serialize_script(s: &MoveScript) -> String {
    let mut out = String::new();
    for m in s {
        out.push_str(&m.to_string());
        out.push('\n');
    }
    out
}

/// Moves joined by `"; "` on a single line.
pub fn script_inline(s: &MoveScript) -> String {
    let parts: Vec<String> = s.iter().map(|m| m.to_string()).collect();
    parts.join("; ")
}

struct Args<'t, 'a> {
    verb: &'t Token<'a>,
    rest: &'t [Token<'a>],
}

impl<'t, 'a> Args<'t, 'a> {
    fn expect(&self, n: usize) -> Result<(), ParseError> {
        if self.rest.len() != n {
            let at = self.rest.get(n).unwrap_or(self.verb);
            return Err(err(
                at,
                format!("{} takes {n} arguments, got {}", self.verb.text, self.rest.len()),
            ));
        }
        Ok(())
    }

    fn number(&self, i: usize) -> Result<usize, ParseError> {
        let tok = &self.rest[i];
        tok.text
            .parse()
            .map_err(|_| err(tok, format!("expected a number, got '{}'", tok.text)))
    }

    fn component(&self, i: usize) -> Result<usize, ParseError> {
        match self.number(i)? {
            0 => Err(err(&self.rest[i], "components are numbered from 1")),
            n => Ok(n - 1),
        }
    }

    fn chord(&self, i: usize) -> Result<ChordId, ParseError> {
        match self.number(i)? {
            0 => Err(err(&self.rest[i], "chord id must be positive")),
            n => u32::try_from(n)
                .map(ChordId)
                .map_err(|_| err(&self.rest[i], "chord id is too large")),
        }
    }

    fn sign(&self, i: usize) -> Result<Sign, ParseError> {
        match self.rest[i].text {
            "+" => Ok(Sign::Pos),
            "-" => Ok(Sign::Neg),
            t => Err(err(&self.rest[i], format!("expected '+' or '-', got '{t}'"))),
        }
    }
}

fn parse_move(tokens: &[Token<'_>]) -> Result<MoveInstance, ParseError> {
    let a = Args {
        verb: &tokens[0],
        rest: &tokens[1..],
    };
    let m = match a.verb.text {
        "R1-" => {
            a.expect(1)?;
            MoveInstance::R1Remove { chord: a.chord(0)? }
        }
        "R1+" => {
            a.expect(4)?;
            let order = match a.rest[3].text {
                "OU" => RoleOrder::OverUnder,
                "UO" => RoleOrder::UnderOver,
                t => return Err(err(&a.rest[3], format!("expected OU or UO, got '{t}'"))),
            };
            MoveInstance::R1Insert {
                component: a.component(0)?,
                gap: a.number(1)?,
                sign: a.sign(2)?,
                order,
            }
        }
        "R2-" => {
            a.expect(2)?;
            MoveInstance::R2Remove {
                first: a.chord(0)?,
                second: a.chord(1)?,
            }
        }
        "R2+" => {
            a.expect(6)?;
            let order = match a.rest[5].text {
                "PAR" => PairOrder::Parallel,
                "ANTI" => PairOrder::Anti,
                t => return Err(err(&a.rest[5], format!("expected PAR or ANTI, got '{t}'"))),
            };
            MoveInstance::R2Insert {
                over_component: a.component(0)?,
                over_gap: a.number(1)?,
                under_component: a.component(2)?,
                under_gap: a.number(3)?,
                sign: a.sign(4)?,
                order,
            }
        }
        "R3" => {
            a.expect(3)?;
            MoveInstance::R3 {
                chords: [a.chord(0)?, a.chord(1)?, a.chord(2)?],
            }
        }
        "SGN" => {
            a.expect(1)?;
            MoveInstance::SignShift { chord: a.chord(0)? }
        }
        "AS" | "XI" | "FO" | "FU" => {
            a.expect(2)?;
            let component = a.component(0)?;
            let position = a.number(1)?;
            match a.verb.text {
                "AS" => MoveInstance::ArcShift {
                    component,
                    position,
                },
                "XI" => MoveInstance::Xi {
                    component,
                    position,
                },
                "FO" => MoveInstance::ForbiddenOver {
                    component,
                    position,
                },
                _ => MoveInstance::ForbiddenUnder {
                    component,
                    position,
                },
            }
        }
        _ => return Err(err(a.verb, format!("unknown move verb '{}'", a.verb.text))),
    };
    Ok(m)
}

/// Parses a move script, collecting a diagnostic for every bad line.
pub fn parse_script(text: &str) -> Result<MoveScript, ScriptErrors> {
    let mut script = MoveScript::new();
    let mut errors = Vec::new();
    let mut flush = |tokens: &mut Vec<Token<'_>>| {
        if !tokens.is_empty() {
            match parse_move(tokens) {
                Ok(m) => script.push(m),
                Err(e) => errors.push(e),
            }
            tokens.clear();
        }
    };
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens: Vec<Token<'_>> = Vec::new();
        for item in lex(line) {
            match item {
                Item::Semicolon => flush(&mut tokens),
                Item::Word(mut t) => {
                    t.line = ln + 1;
                    tokens.push(t);
                }
            }
        }
        flush(&mut tokens);
    }
    if errors.is_empty() {
        Ok(script)
    } else {
        Err(ScriptErrors(errors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parses_virtual_hopf() {
        let d = parse("U1+ ; O1+").unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.num_chords(), 1);
        assert_eq!(d.component(0), &[Endpoint::under(1)]);
        assert_eq!(d.component(1), &[Endpoint::over(1)]);
        assert_eq!(d.sign(ChordId(1)), Some(Sign::Pos));
        assert_eq!(serialize(&d), "U1+ ; O1+");
    }

    #[test]
    fn empty_components() {
        let d = parse(";").unwrap();
        assert_eq!(d, GaussDiagram::unlink(2));
        assert_eq!(serialize(&d), ";");
        assert_eq!(parse("").unwrap(), GaussDiagram::unlink(1));
        assert_eq!(serialize(&parse("O1+ U1+ ;").unwrap()), "O1+ U1+ ;");
        assert_eq!(serialize(&parse(" ;\n; O2- U2-  ;").unwrap()), ";; O1- U1- ;");
    }

    #[test]
    fn sign_mismatch_is_located() {
        let e = parse("O1+ ; U1-").unwrap_err();
        assert_eq!(e.message, "sign mismatch for chord 1");
        assert_eq!((e.line, e.column), (1, 7));
    }

    #[test]
    fn lexical_and_semantic_errors() {
        assert_eq!(parse("X1+").unwrap_err().message, "bad token 'X1+'");
        assert_eq!(parse("O1").unwrap_err().message, "bad token 'O1'");
        assert_eq!(parse("O0+ U0+").unwrap_err().message, "chord id must be positive");
        let e = parse("O1+\n  O1+ U1+").unwrap_err();
        assert_eq!(e.message, "chord 1 has two Over endpoints");
        assert_eq!((e.line, e.column), (2, 3));
        assert_eq!(parse("O1+ O2+ U1+").unwrap_err().message, "chord 2 appears once");
    }

    #[test]
    fn serialize_renames_by_first_occurrence() {
        let d = parse("O7+ U3- ; O3- U7+").unwrap();
        assert_eq!(serialize(&d), "O1+ U2- ; O2- U1+");
    }

    #[test]
    fn script_examples() {
        assert_eq!(
            parse_script("SGN 2").unwrap().moves,
            vec![MoveInstance::SignShift { chord: ChordId(2) }]
        );
        let s = parse_script("AS 1 0\nR2- 1 2\n").unwrap();
        assert_eq!(
            s.moves,
            vec![
                MoveInstance::ArcShift {
                    component: 0,
                    position: 0
                },
                MoveInstance::R2Remove {
                    first: ChordId(1),
                    second: ChordId(2)
                }
            ]
        );
        assert_eq!(parse_script("AS 1 0 ; R2- 1 2").unwrap(), s);
        let e = parse_script("FOO 1").unwrap_err();
        assert!(e.0[0].message.starts_with("unknown move verb"));
    }

    #[test]
    fn script_errors_are_per_line() {
        let e = parse_script("SGN 1\nAS 0 1\nSGN\nR1+ 1 0 + XX\n").unwrap_err();
        let lines: Vec<usize> = e.0.iter().map(|x| x.line).collect();
        assert_eq!(lines, vec![2, 3, 4]);
    }

    #[test]
    fn script_text_round_trip() {
        let text = "R1- 3\nR1+ 2 0 - UO\nR2- 1 2\nR2+ 1 3 2 0 + ANTI\nR3 1 2 3\nAS 1 4\nSGN 2\nXI 3 1\nFO 1 0\nFU 2 2\n";
        let s = parse_script(text).unwrap();
        assert_eq!(s.len(), 10);
        assert_eq!(serialize_script(&s), text);
        assert_eq!(script_inline(&parse_script("SGN 2\nR2- 1 2").unwrap()), "SGN 2; R2- 1 2");
    }
}
