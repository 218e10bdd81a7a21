//! Plain-text surface files.
//!
//! ```text
//! # comments start with '#'
//! component A genus 1
//! circle A mixed in - out -
//! circle A full+ c
//! circle A full-
//! incoming in
//! outgoing out c
//! ```
//!
//! A mixed circle lists its `S+` intervals separated by `-` tokens for the
//! `S-` arcs; a missing final `-` is implied.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{BoundaryArc, BoundaryCircle, Component, SPlusId, SuturedSurface};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ParsedSurface {
    pub surface: SuturedSurface,
    /// File name of every `S+` id, indexed by the id.
    pub splus_names: Vec<String>,
    pub component_names: Vec<String>,
}

impl ParsedSurface {
    pub fn id_of(&self, name: &str) -> Option<SPlusId> {
        self.splus_names
            .iter()
            .position(|n| n == name)
            .map(|i| SPlusId(i as u32))
    }

    pub fn name_of(&self, id: SPlusId) -> &str {
        &self.splus_names[id.0 as usize]
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses and validates a surface file.
pub fn parse_surface(input: &str) -> Result<ParsedSurface> {
    let mut components: Vec<Component> = Vec::new();
    let mut component_names: Vec<String> = Vec::new();
    let mut splus_names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, SPlusId> = HashMap::new();
    let mut incoming: Option<Vec<SPlusId>> = None;
    let mut outgoing: Option<Vec<SPlusId>> = None;

    let mut intern = |name: &str| -> SPlusId {
        *ids.entry(name.to_string()).or_insert_with(|| {
            splus_names.push(name.to_string());
            SPlusId(splus_names.len() as u32 - 1)
        })
    };

    for (index, raw) in input.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, rest)) = tokens.split_first() else {
            continue;
        };
        match keyword {
            "component" => {
                let [name, "genus", g] = rest else {
                    return Err(parse_err(line, "expected `component <name> genus <g>`"));
                };
                if component_names.iter().any(|n| n == name) {
                    return Err(parse_err(line, format!("component {name} declared twice")));
                }
                let genus = g
                    .parse::<u32>()
                    .map_err(|_| parse_err(line, format!("invalid genus `{g}`")))?;
                component_names.push(name.to_string());
                components.push(Component {
                    genus,
                    boundary: vec![],
                });
            }
            "circle" => {
                let [comp, kind, args @ ..] = rest else {
                    return Err(parse_err(line, "expected `circle <component> <kind> ...`"));
                };
                let ci = component_names
                    .iter()
                    .position(|n| n == comp)
                    .ok_or_else(|| parse_err(line, format!("unknown component `{comp}`")))?;
                let circle = match (*kind, args) {
                    ("full+", [id]) => BoundaryCircle::FullPlus(intern(id)),
                    ("full-", []) => BoundaryCircle::FullMinus,
                    ("mixed", word) if !word.is_empty() => {
                        let mut arcs: Vec<BoundaryArc> = word
                            .iter()
                            .map(|t| match *t {
                                "-" => BoundaryArc::Minus,
                                name => BoundaryArc::Plus(intern(name)),
                            })
                            .collect();
                        if arcs.first() == Some(&BoundaryArc::Minus) && arcs.last() != Some(&BoundaryArc::Minus) {
                            arcs.rotate_left(1);
                        } else if arcs.last() != Some(&BoundaryArc::Minus) {
                            arcs.push(BoundaryArc::Minus);
                        }
                        BoundaryCircle::Mixed(arcs)
                    }
                    _ => {
                        return Err(parse_err(
                            line,
                            "expected `full+ <id>`, `full-` or `mixed <id> - <id> ...`",
                        ))
                    }
                };
                components[ci].boundary.push(circle);
            }
            "incoming" | "outgoing" => {
                let slot = if keyword == "incoming" {
                    &mut incoming
                } else {
                    &mut outgoing
                };
                if slot.is_some() {
                    return Err(parse_err(line, format!("`{keyword}` given twice")));
                }
                *slot = Some(rest.iter().map(|name| intern(name)).collect());
            }
            other => return Err(parse_err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let surface = SuturedSurface {
        components,
        incoming: incoming.unwrap_or_default(),
        outgoing: outgoing.unwrap_or_default(),
    };
    surface.validate()?;
    Ok(ParsedSurface {
        surface,
        splus_names,
        component_names,
    })
}

impl SuturedSurface {
    /// Renders the surface in the text format, naming ids `s<n>` and
    /// components `c<n>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (ci, comp) in self.components.iter().enumerate() {
            let _ = writeln!(out, "component c{ci} genus {}", comp.genus);
            for circle in &comp.boundary {
                let body = match circle {
                    BoundaryCircle::FullPlus(id) => format!("full+ {id}"),
                    BoundaryCircle::FullMinus => "full-".to_string(),
                    BoundaryCircle::Mixed(word) => {
                        let tokens: Vec<String> = word
                            .iter()
                            .map(|a| match a {
                                BoundaryArc::Plus(id) => id.to_string(),
                                BoundaryArc::Minus => "-".to_string(),
                            })
                            .collect();
                        format!("mixed {}", tokens.join(" "))
                    }
                };
                let _ = writeln!(out, "circle c{ci} {body}");
            }
        }
        let list = |ids: &[SPlusId]| {
            ids.iter()
                .map(|id| format!(" {id}"))
                .collect::<String>()
        };
        let _ = writeln!(out, "incoming{}", list(&self.incoming));
        let _ = writeln!(out, "outgoing{}", list(&self.outgoing));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{open_pants, surface_fgp};

    #[test]
    fn parses_a_pants_file() {
        let text = "# pants\ncomponent P genus 0\ncircle P mixed out - a - b\nincoming a b\noutgoing out\n";
        let parsed = parse_surface(text).unwrap();
        assert_eq!(parsed.surface, open_pants(2));
        assert_eq!(parsed.name_of(SPlusId(1)), "a");
    }

    #[test]
    fn leading_sminus_arc_is_read_cyclically() {
        let text = "component c genus 0\ncircle c mixed - a - b\noutgoing a b\n";
        let f = parse_surface(text).unwrap().surface;
        assert_eq!(f.components[0].boundary[0], BoundaryCircle::mixed(&[SPlusId(0), SPlusId(1)]));
    }

    #[test]
    fn missing_sminus_arc_is_an_alternation_error() {
        let text = "component P genus 0\ncircle P mixed a b\noutgoing a b\n";
        assert!(matches!(
            parse_surface(text),
            Err(Error::AlternationViolation { .. })
        ));
    }

    #[test]
    fn reports_line_numbers() {
        let text = "component P genus 0\n\ncircle Q full-\n";
        assert_eq!(
            parse_surface(text).unwrap_err(),
            Error::Parse {
                line: 3,
                message: "unknown component `Q`".into()
            }
        );
    }

    #[test]
    fn text_round_trip() {
        for f in [open_pants(3), surface_fgp(2, 2)] {
            let back = parse_surface(&f.to_text()).unwrap();
            assert_eq!(back.surface, f);
        }
    }
}
