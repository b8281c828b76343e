//! S-expression syntax for terms and argument values.

use thiserror::Error;

use super::term::{ArgValue, Payload, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("term syntax error at byte {pos}: {msg}")]
pub struct TermParseError {
    pub pos: usize,
    pub msg: String,
}

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

pub fn print_arg(v: &ArgValue) -> String {
    let mut out = String::new();
    write_arg(v, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(Payload::Free(i)) => out.push_str(&format!("(var {i})")),
        Term::Var(Payload::Bound(k)) => out.push_str(&format!("(bnd {k})")),
        Term::Var(Payload::Nested(v)) => {
            out.push_str("(nested ");
            write_arg(v, out);
            out.push(')');
        }
        Term::Op(name, args) => {
            out.push_str("(op ");
            out.push_str(name);
            out.push(' ');
            write_arg(args, out);
            out.push(')');
        }
    }
}

fn write_arg(v: &ArgValue, out: &mut String) {
    match v {
        ArgValue::Term(t) => write_term(t, out),
        ArgValue::Unit => out.push_str("()"),
        ArgValue::Tuple(items) => {
            out.push_str("(tuple");
            for x in items {
                out.push(' ');
                write_arg(x, out);
            }
            out.push(')');
        }
        ArgValue::Scope(body) => {
            out.push_str("(scope ");
            write_arg(body, out);
            out.push(')');
        }
        ArgValue::Outer(w) => {
            out.push_str("(outer ");
            write_arg(w, out);
            out.push(')');
        }
        ArgValue::Variant(tag, x) => {
            out.push_str("(variant ");
            out.push_str(tag);
            out.push(' ');
            write_arg(x, out);
            out.push(')');
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn lex(text: &str) -> Vec<(usize, Tok)> {
    let mut toks = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '(' {
            toks.push((pos, Tok::Open));
            chars.next();
        } else if c == ')' {
            toks.push((pos, Tok::Close));
            chars.next();
        } else {
            let mut atom = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_whitespace() || c == '(' || c == ')' {
                    break;
                }
                atom.push(c);
                chars.next();
            }
            toks.push((pos, Tok::Atom(atom)));
        }
    }
    toks
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Parser {
        Parser { toks: lex(text), at: 0, end: text.len() }
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, TermParseError> {
        Err(TermParseError { pos: self.pos(), msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn expect(&mut self, want: Tok) -> Result<(), TermParseError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            let want = if want == Tok::Open { "`(`" } else { "`)`" };
            self.err(format!("expected {want}"))
        }
    }

    fn atom(&mut self) -> Result<String, TermParseError> {
        match self.peek() {
            Some(Tok::Atom(a)) => {
                let a = a.clone();
                self.at += 1;
                Ok(a)
            }
            _ => self.err("expected an atom"),
        }
    }

    fn index(&mut self) -> Result<usize, TermParseError> {
        let pos = self.pos();
        let a = self.atom()?;
        a.parse().map_err(|_| TermParseError { pos, msg: format!("`{a}` is not an index") })
    }

    fn finish(&mut self) -> Result<(), TermParseError> {
        if self.at < self.toks.len() {
            return self.err("trailing input");
        }
        Ok(())
    }

    fn arg(&mut self) -> Result<ArgValue, TermParseError> {
        self.expect(Tok::Open)?;
        if self.peek() == Some(&Tok::Close) {
            self.at += 1;
            return Ok(ArgValue::Unit);
        }
        let head_pos = self.pos();
        let head = self.atom()?;
        let v = match head.as_str() {
            "tuple" => {
                let mut items = Vec::new();
                while self.peek() != Some(&Tok::Close) {
                    if self.peek().is_none() {
                        return self.err("unclosed tuple");
                    }
                    items.push(self.arg()?);
                }
                ArgValue::Tuple(items)
            }
            "scope" => ArgValue::scope(self.arg()?),
            "outer" => ArgValue::outer(self.arg()?),
            "variant" => {
                let tag = self.atom()?;
                ArgValue::variant(tag, self.arg()?)
            }
            _ => {
                self.at -= 1;
                return self.term_body(head_pos).map(ArgValue::Term);
            }
        };
        self.expect(Tok::Close)?;
        Ok(v)
    }

    fn term(&mut self) -> Result<Term, TermParseError> {
        self.expect(Tok::Open)?;
        let pos = self.pos();
        self.term_body(pos)
    }

    // after the opening parenthesis
    fn term_body(&mut self, head_pos: usize) -> Result<Term, TermParseError> {
        let head = self.atom()?;
        let t = match head.as_str() {
            "var" => Term::free(self.index()?),
            "bnd" => Term::bound(self.index()?),
            "nested" => Term::nested(self.arg()?),
            "op" => {
                let name = self.atom()?;
                Term::op(name, self.arg()?)
            }
            other => {
                return Err(TermParseError { pos: head_pos, msg: format!("unknown form `{other}`") });
            }
        };
        self.expect(Tok::Close)?;
        Ok(t)
    }
}

pub fn parse_term(text: &str) -> Result<Term, TermParseError> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_arg(text: &str) -> Result<ArgValue, TermParseError> {
    let mut p = Parser::new(text);
    let v = p.arg()?;
    p.finish()?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_canonically() {
        let t = Term::op(
            "app",
            ArgValue::Tuple(vec![
                ArgValue::Term(Term::free(0)),
                ArgValue::Term(Term::op("abs", ArgValue::scope(ArgValue::Term(Term::bound(0))))),
            ]),
        );
        assert_eq!(print_term(&t), "(op app (tuple (var 0) (op abs (scope (bnd 0)))))");
        let j = Term::op("join", ArgValue::outer(ArgValue::Term(Term::nested(ArgValue::Term(Term::free(1))))));
        assert_eq!(j.to_string(), "(op join (outer (nested (var 1))))");
        let c = Term::op("m", ArgValue::variant("none", ArgValue::Unit));
        assert_eq!(c.to_string(), "(op m (variant none ()))");
    }

    #[test]
    fn parses_loose_whitespace() {
        let t = parse_term(" ( op  app\n(tuple (var 0)\t(var 1) ) ) ").unwrap();
        assert_eq!(t.to_string(), "(op app (tuple (var 0) (var 1)))");
        assert_eq!(parse_arg("( )").unwrap(), ArgValue::Unit);
        assert_eq!(parse_arg("(var 2)").unwrap(), ArgValue::Term(Term::free(2)));
    }

    #[test]
    fn round_trips() {
        for s in [
            "(var 0)",
            "(op c ())",
            "(op abs (scope (scope (bnd 1))))",
            "(op join (outer (op abs (scope (op app (tuple (bnd 0) (nested (var 0))))))))",
            "(op s (tuple (scope (var 0)) (var 1) (var 2)))",
            "(op m (variant 1 (tuple)))",
        ] {
            assert_eq!(parse_term(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_term("(var x)").unwrap_err().pos, 5);
        assert_eq!(parse_term("(lam 0)").unwrap_err().pos, 1);
        assert_eq!(parse_term("(var 0").unwrap_err().pos, 6);
        assert_eq!(parse_term("(var 0) (var 1)").unwrap_err().msg, "trailing input");
        assert!(parse_term("()").is_err());
    }
}
