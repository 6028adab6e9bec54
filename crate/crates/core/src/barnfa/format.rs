//! Line-oriented text format and DOT export for bar NFAs.
//!
//! ```text
//! # comment
//! states: s t u v
//! initial: s
//! final: s u
//! trans:
//! s |b t
//! t a u
//! ```

use std::collections::BTreeMap;
use std::fmt;

use super::{BarNfa, Transition};
use crate::barstring::BarLetter;
use crate::error::{Error, Location};

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

impl BarNfa {
    pub fn parse(text: &str) -> Result<BarNfa, Error> {
        let mut states: Option<Vec<String>> = None;
        let mut initial: Option<(String, usize)> = None;
        let mut finals: Vec<(String, usize)> = Vec::new();
        let mut raw_trans: Vec<(String, BarLetter, String, usize)> = Vec::new();
        let mut in_trans = false;

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::syntax(Location::Line(lineno), msg);
            if let Some((key, value)) = line.split_once(':') {
                let key = key.trim();
                let words: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                match key {
                    "states" => states = Some(words),
                    "initial" => match words.as_slice() {
                        [one] => initial = Some((one.clone(), lineno)),
                        _ => return Err(err("`initial:` takes exactly one state".into())),
                    },
                    "final" | "finals" => finals.extend(words.into_iter().map(|w| (w, lineno))),
                    "trans" => {
                        if !words.is_empty() {
                            return Err(err("transitions go on the lines after `trans:`".into()));
                        }
                        in_trans = true;
                    }
                    other => return Err(err(format!("unknown key `{other}`"))),
                }
                continue;
            }
            if !in_trans {
                return Err(err(format!("unexpected line `{line}`")));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [src, label, dst] = parts.as_slice() else {
                return Err(err("expected `SRC LABEL DST`".into()));
            };
            let label = BarLetter::parse_token(label).map_err(|e| err(e.to_string()))?;
            raw_trans.push((src.to_string(), label, dst.to_string(), lineno));
        }

        let states = states.ok_or_else(|| Error::InvalidAutomaton("missing `states:` line".into()))?;
        let index: BTreeMap<&str, usize> = states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != states.len() {
            return Err(Error::InvalidAutomaton("duplicate state in `states:`".into()));
        }
        let lookup = |name: &str, lineno: usize| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::syntax(Location::Line(lineno), format!("unknown state `{name}`")))
        };
        let (init_name, init_line) = initial.ok_or_else(|| Error::InvalidAutomaton("missing `initial:` line".into()))?;
        let initial = lookup(&init_name, init_line)?;
        let finals = finals
            .iter()
            .map(|(f, l)| lookup(f, *l))
            .collect::<Result<Vec<_>, _>>()?;
        let transitions = raw_trans
            .iter()
            .map(|(s, label, d, l)| {
                Ok(Transition { source: lookup(s, *l)?, label: label.clone(), target: lookup(d, *l)? })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        BarNfa::new(states, initial, finals, transitions)
    }

    /// Graphviz rendering: final states get a double border, the initial
    /// state is pointed at from a point-shaped marker node.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bar_nfa {\n  rankdir=LR;\n  __start [shape=point, label=\"\"];\n");
        for q in self.states() {
            let shape = if self.is_final(q) { "doublecircle" } else { "circle" };
            out.push_str(&format!("  \"{}\" [shape={shape}];\n", self.state_name(q)));
        }
        out.push_str(&format!("  __start -> \"{}\";\n", self.state_name(self.initial())));
        for t in self.transitions() {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.state_name(t.source),
                self.state_name(t.target),
                t.label
            ));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for BarNfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.states().map(|q| self.state_name(q)).collect();
        writeln!(f, "states: {}", names.join(" "))?;
        writeln!(f, "initial: {}", self.state_name(self.initial()))?;
        let finals: Vec<&str> = self.finals().map(|q| self.state_name(q)).collect();
        if finals.is_empty() {
            writeln!(f, "final:")?;
        } else {
            writeln!(f, "final: {}", finals.join(" "))?;
        }
        writeln!(f, "trans:")?;
        for t in self.transitions() {
            writeln!(f, "{} {} {}", self.state_name(t.source), t.label, self.state_name(t.target))?;
        }
        Ok(())
    }
}
