//! A small s-expression reader and printer.
//!
//! Atoms are maximal runs of characters other than whitespace, parentheses,
//! `;` and `"`; strings are double-quoted without escapes. A `;` starts a
//! comment running to the end of the line. Every node remembers the line and
//! column where it starts so that later stages can point at it.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug)]
pub enum SExpr {
    Atom(String, Pos),
    Str(String, Pos),
    List(Vec<SExpr>, Pos),
}

impl PartialEq for SExpr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SExpr::Atom(a, _), SExpr::Atom(b, _)) | (SExpr::Str(a, _), SExpr::Str(b, _)) => a == b,
            (SExpr::List(a, _), SExpr::List(b, _)) => a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {msg}")]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: Pos, msg: impl Into<String>) -> ParseError {
        ParseError { pos, msg: msg.into() }
    }
}

impl SExpr {
    pub fn atom(s: impl Into<String>) -> SExpr {
        SExpr::Atom(s.into(), Pos::default())
    }

    pub fn list(items: Vec<SExpr>) -> SExpr {
        SExpr::List(items, Pos::default())
    }

    /// `(head items…)`.
    pub fn tagged(head: &str, items: impl IntoIterator<Item = SExpr>) -> SExpr {
        SExpr::list(std::iter::once(SExpr::atom(head)).chain(items).collect())
    }

    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Atom(_, p) | SExpr::Str(_, p) | SExpr::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(s, _) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items, _) => Some(items),
            _ => None,
        }
    }

    /// The head atom and the remaining items of a list.
    pub fn head(&self) -> Option<(&str, &[SExpr])> {
        let items = self.as_list()?;
        let (first, rest) = items.split_first()?;
        Some((first.as_atom()?, rest))
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos(), msg)
    }

    fn width(&self) -> usize {
        match self {
            SExpr::Atom(s, _) => s.chars().count(),
            SExpr::Str(s, _) => s.chars().count() + 2,
            SExpr::List(items, _) => items.iter().map(|i| i.width() + 1).sum::<usize>() + 1,
        }
    }

    /// Renders with line breaks once a list is wider than `limit` columns.
    pub fn pretty(&self, limit: usize) -> String {
        let mut out = String::new();
        self.pretty_into(&mut out, 0, limit);
        out
    }

    fn pretty_into(&self, out: &mut String, indent: usize, limit: usize) {
        match self {
            SExpr::List(items, _) if indent + self.width() > limit && items.len() > 2 => {
                out.push('(');
                items[0].pretty_into(out, indent + 1, limit);
                out.push(' ');
                items[1].pretty_into(out, indent + 2 + items[0].width(), limit);
                for item in &items[2..] {
                    out.push('\n');
                    out.push_str(&" ".repeat(indent + 2));
                    item.pretty_into(out, indent + 2, limit);
                }
                out.push(')');
            }
            other => out.push_str(&other.to_string()),
        }
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Atom(s, _) => f.write_str(s),
            SExpr::Str(s, _) => write!(f, "\"{s}\""),
            SExpr::List(items, _) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | ';' | '"')
}

/// Parses a whole document into its top-level expressions.
pub fn parse(text: &str) -> Result<Vec<SExpr>, ParseError> {
    let mut stack: Vec<(Vec<SExpr>, Pos)> = vec![(Vec::new(), Pos::default())];
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, col: 1 };
    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        match c {
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    advance(c, &mut pos);
                }
            }
            '(' => {
                chars.next();
                advance(c, &mut pos);
                stack.push((Vec::new(), start));
            }
            ')' => {
                chars.next();
                advance(c, &mut pos);
                if stack.len() == 1 {
                    return Err(ParseError::new(start, "unbalanced ')'"));
                }
                let (items, open) = stack.pop().expect("non-empty stack");
                stack.last_mut().expect("outer level").0.push(SExpr::List(items, open));
            }
            '"' => {
                chars.next();
                advance(c, &mut pos);
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => {
                            advance('"', &mut pos);
                            break;
                        }
                        Some(c) => {
                            advance(c, &mut pos);
                            s.push(c);
                        }
                        None => return Err(ParseError::new(start, "unterminated string")),
                    }
                }
                stack.last_mut().expect("level").0.push(SExpr::Str(s, start));
            }
            c if c.is_whitespace() => {
                chars.next();
                advance(c, &mut pos);
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if is_delimiter(c) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                    advance(c, &mut pos);
                }
                stack.last_mut().expect("level").0.push(SExpr::Atom(s, start));
            }
        }
    }
    if stack.len() > 1 {
        let (_, open) = stack.pop().expect("unclosed level");
        return Err(ParseError::new(open, "unclosed '('"));
    }
    Ok(stack.pop().expect("top level").0)
}

/// Parses text holding exactly one expression.
pub fn parse_one(text: &str) -> Result<SExpr, ParseError> {
    let mut all = parse(text)?;
    match all.len() {
        1 => Ok(all.pop().expect("one item")),
        0 => Err(ParseError::new(Pos { line: 1, col: 1 }, "expected an expression")),
        _ => Err(all[1].error("expected a single expression")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_comments_and_strings() {
        let doc = parse("(a (b c)) ; note\n\"s t\" x").unwrap();
        assert_eq!(doc.len(), 3);
        assert_eq!(doc[0].to_string(), "(a (b c))");
        assert_eq!(doc[1], SExpr::Str("s t".into(), Pos::default()));
        assert_eq!(doc[2].pos(), Pos { line: 2, col: 7 });
    }

    #[test]
    fn reports_unbalanced_input() {
        assert_eq!(parse("(a\n(b)").unwrap_err().pos, Pos { line: 1, col: 1 });
        assert_eq!(parse("a)").unwrap_err().pos, Pos { line: 1, col: 2 });
    }

    #[test]
    fn pretty_printing_reparses_to_the_same_tree() {
        let e = parse_one("(fun tau (ctx (x A) (y A) (z A) (p (E x y)) (q (E y z))) (det 4 5) (ret (E x z)))").unwrap();
        let shown = e.pretty(40);
        assert!(shown.contains('\n'));
        assert_eq!(parse_one(&shown).unwrap(), e);
    }
}
