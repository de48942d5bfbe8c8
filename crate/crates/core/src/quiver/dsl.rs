//! Line-oriented text format for bound quivers.
//!
//! ```text
//! # comment
//! vertices 1 2 3
//! gproj 3                 # optional: vertices standing for G-projectives
//! arrow a: 1 -> 2
//! arrow b: 2 -> 3
//! rel a.b                 # zero relation
//! rel a.b = c.d           # commutativity relation
//! ```

use super::{Path, Presentation, Quiver, Relation, VertexKind};
use crate::error::{Error, Result};

fn is_ident(token: &str) -> bool {
    !token.is_empty()
        && token
            .chars()
            .all(|c| !c.is_whitespace() && !matches!(c, ':' | '=' | '.' | '#'))
}

/// A token with its 1-based column.
#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

struct LineParser {
    line: usize,
}

impl LineParser {
    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn ident<'a>(&self, tok: Token<'a>, what: &str) -> Result<&'a str> {
        if is_ident(tok.text) {
            Ok(tok.text)
        } else {
            Err(self.err(tok.column, format!("invalid {what} `{}`", tok.text)))
        }
    }

    fn path(&self, quiver: &Quiver, tok: Token<'_>) -> Result<Path> {
        let mut ids = Vec::new();
        let mut column = tok.column;
        for name in tok.text.split('.') {
            let id = quiver
                .arrow_id(name)
                .ok_or_else(|| self.err(column, format!("unknown arrow `{name}`")))?;
            ids.push(id);
            column += name.chars().count() + 1;
        }
        quiver
            .path(&ids)
            .map_err(|e| self.err(tok.column, e.to_string()))
    }
}

/// Parses the text format into a presentation.
pub fn parse(text: &str) -> Result<Presentation> {
    let mut quiver = Quiver::new();
    let mut gproj = Vec::new();
    let mut relations = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let lp = LineParser { line: n + 1 };
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "vertices" => {
                for &t in &toks[1..] {
                    let name = lp.ident(t, "vertex name")?;
                    quiver
                        .add_vertex(name)
                        .map_err(|e| lp.err(t.column, e.to_string()))?;
                }
            }
            "gproj" => {
                for &t in &toks[1..] {
                    let v = quiver
                        .vertex_id(t.text)
                        .ok_or_else(|| lp.err(t.column, format!("unknown vertex `{}`", t.text)))?;
                    gproj.push(v);
                }
            }
            "arrow" => parse_arrow(&lp, &mut quiver, content, &toks)?,
            "rel" => {
                let (lhs, rhs) = match toks.len() {
                    2 => (toks[1], None),
                    4 if toks[2].text == "=" => (toks[1], Some(toks[3])),
                    _ => {
                        let column = toks.get(2).map_or(head.column, |t| t.column);
                        return Err(
                            lp.err(column, "expected `rel <path>` or `rel <path> = <path>`")
                        );
                    }
                };
                let p = lp.path(&quiver, lhs)?;
                let rel = match rhs {
                    None => Relation::zero(p),
                    Some(t) => {
                        let q = lp.path(&quiver, t)?;
                        if p.source() != q.source() || p.target() != q.target() {
                            return Err(lp.err(t.column, "sides of the relation are not parallel"));
                        }
                        Relation::commutativity(p, q)
                    }
                };
                if rel.terms.iter().any(|t| t.path.len() < 2) {
                    return Err(lp.err(lhs.column, "relation terms need length at least 2"));
                }
                relations.push(rel);
            }
            other => return Err(lp.err(head.column, format!("unknown keyword `{other}`"))),
        }
    }
    let mut kinds = vec![VertexKind::Original; quiver.vertex_count()];
    for v in gproj {
        kinds[v] = VertexKind::Gproj;
    }
    Presentation::with_kinds(quiver, relations, kinds)
}

fn parse_arrow(
    lp: &LineParser,
    quiver: &mut Quiver,
    content: &str,
    toks: &[Token<'_>],
) -> Result<()> {
    // `arrow <name>: <src> -> <dst>`; whitespace around the colon is optional.
    let Some(colon) = content.find(':') else {
        return Err(lp.err(toks[0].column, "expected `arrow <name>: <src> -> <dst>`"));
    };
    let head = &content[..colon];
    let keyword_end = head.find("arrow").unwrap() + "arrow".len();
    let name = head[keyword_end..].trim();
    let name_column = head[..keyword_end].chars().count()
        + head[keyword_end..]
            .chars()
            .take_while(|c| c.is_whitespace())
            .count()
        + 1;
    let name = lp.ident(
        Token {
            text: name,
            column: name_column,
        },
        "arrow name",
    )?;
    let shift = content[..=colon].chars().count();
    let rest: Vec<Token<'_>> = tokens(&content[colon + 1..])
        .into_iter()
        .map(|t| Token {
            text: t.text,
            column: t.column + shift,
        })
        .collect();
    match rest.as_slice() {
        [src, arrow, dst] if arrow.text == "->" => {
            let s = quiver
                .vertex_id(src.text)
                .ok_or_else(|| lp.err(src.column, format!("unknown vertex `{}`", src.text)))?;
            let t = quiver
                .vertex_id(dst.text)
                .ok_or_else(|| lp.err(dst.column, format!("unknown vertex `{}`", dst.text)))?;
            quiver
                .add_arrow(name, s, t)
                .map_err(|e| lp.err(name_column, e.to_string()))?;
            Ok(())
        }
        _ => {
            let column = rest.first().map_or(shift + 1, |t| t.column);
            Err(lp.err(column, "expected `<src> -> <dst>`"))
        }
    }
}

/// Writes a presentation in the text format; `parse(&to_dsl(p)) == p`.
pub fn to_dsl(p: &Presentation) -> String {
    let q = &p.quiver;
    let mut out = String::new();
    out.push_str("vertices");
    for v in q.vertex_names() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    let gproj: Vec<&str> = (0..q.vertex_count())
        .filter(|&v| p.kinds[v] == VertexKind::Gproj)
        .map(|v| q.vertex_name(v))
        .collect();
    if !gproj.is_empty() {
        out.push_str("gproj ");
        out.push_str(&gproj.join(" "));
        out.push('\n');
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {}: {} -> {}\n",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        ));
    }
    for r in &p.relations {
        out.push_str(&format!("rel {}\n", r.display(q)));
    }
    out
}
