//! Arity expressions and their ASCII surface syntax.
//!
//! Grammar, loosest to tightest:
//!
//! ```text
//! sum     := item ('+' item)*          two or more items form a Sum
//! item    := [label ':'] prod          a labelled lone item is a one-variant Sum
//! prod    := comp ('*' comp)*          two or more factors form a Prod
//! comp    := postfix ['.' comp]        right-associative
//! postfix := atom '\''*
//! atom    := 'T' | '1' | '0' | 'T^(' [int (',' int)*] ')'
//!          | '(' sum ')' | '(' sum ',' ')'
//! ```
//!
//! `0` is the empty sum and `(a,)` the one-factor product. Unlabelled sum
//! variants are tagged with their position.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arity {
    /// The tautological arity: the monad itself.
    Theta,
    /// The final module.
    Terminal,
    Prod(Vec<Arity>),
    /// One extra bound variable.
    Deriv(Box<Arity>),
    /// `Comp(outer, inner)`: outer structure whose variables carry inner values.
    Comp(Box<Arity>, Box<Arity>),
    Sum(Vec<(String, Arity)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("arity parse error at byte {pos}: {msg}")]
pub struct ArityParseError {
    pub pos: usize,
    pub msg: String,
}

impl Arity {
    /// Product constructor; the empty product is `Terminal`.
    pub fn prod(factors: Vec<Arity>) -> Arity {
        if factors.is_empty() {
            Arity::Terminal
        } else {
            Arity::Prod(factors)
        }
    }

    pub fn deriv(inner: Arity) -> Arity {
        Arity::Deriv(Box::new(inner))
    }

    pub fn comp(outer: Arity, inner: Arity) -> Arity {
        Arity::Comp(Box::new(outer), Box::new(inner))
    }

    /// Rewrites every empty product to `Terminal`.
    pub fn canonicalize(&self) -> Arity {
        match self {
            Arity::Theta => Arity::Theta,
            Arity::Terminal => Arity::Terminal,
            Arity::Prod(fs) => Arity::prod(fs.iter().map(Arity::canonicalize).collect()),
            Arity::Deriv(a) => Arity::deriv(a.canonicalize()),
            Arity::Comp(a, b) => Arity::comp(a.canonicalize(), b.canonicalize()),
            Arity::Sum(vs) => Arity::Sum(vs.iter().map(|(tag, a)| (tag.clone(), a.canonicalize())).collect()),
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Arity::Theta | Arity::Terminal => true,
            Arity::Prod(fs) => !fs.is_empty() && fs.iter().all(Arity::is_canonical),
            Arity::Deriv(a) => a.is_canonical(),
            Arity::Comp(a, b) => a.is_canonical() && b.is_canonical(),
            Arity::Sum(vs) => vs.iter().all(|(_, a)| a.is_canonical()),
        }
    }

    /// First sum tag that occurs twice within one `Sum` node, if any.
    pub fn duplicate_tag(&self) -> Option<String> {
        match self {
            Arity::Theta | Arity::Terminal => None,
            Arity::Prod(fs) => fs.iter().find_map(Arity::duplicate_tag),
            Arity::Deriv(a) => a.duplicate_tag(),
            Arity::Comp(a, b) => a.duplicate_tag().or_else(|| b.duplicate_tag()),
            Arity::Sum(vs) => {
                for (i, (tag, _)) in vs.iter().enumerate() {
                    if vs[..i].iter().any(|(t, _)| t == tag) {
                        return Some(tag.clone());
                    }
                }
                vs.iter().find_map(|(_, a)| a.duplicate_tag())
            }
        }
    }

    /// Number of `Deriv` layers wrapped around `Theta`, if `self` is such a chain.
    pub fn derivative_order(&self) -> Option<usize> {
        let mut k = 0;
        let mut cur = self;
        loop {
            match cur {
                Arity::Theta => return Some(k),
                Arity::Deriv(a) => {
                    k += 1;
                    cur = a;
                }
                _ => return None,
            }
        }
    }

    /// Calls `f` on `self` and every sub-arity, pre-order.
    pub fn visit(&self, f: &mut dyn FnMut(&Arity)) {
        f(self);
        match self {
            Arity::Theta | Arity::Terminal => {}
            Arity::Prod(fs) => fs.iter().for_each(|a| a.visit(f)),
            Arity::Deriv(a) => a.visit(f),
            Arity::Comp(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Arity::Sum(vs) => vs.iter().for_each(|(_, a)| a.visit(f)),
        }
    }

    pub fn variant(&self, tag: &str) -> Option<&Arity> {
        match self {
            Arity::Sum(vs) => vs.iter().find(|(t, _)| t == tag).map(|(_, a)| a),
            _ => None,
        }
    }
}

/// `Θ^(s)`: the product of the `s_i`-th derivatives of `Theta`.
pub fn algebraic(s: &[usize]) -> Arity {
    Arity::prod(s.iter().map(|&k| derive_n(Arity::Theta, k)).collect())
}

/// n-fold derivative; `derive_n(a, 0) == a`.
pub fn derive_n(a: Arity, n: usize) -> Arity {
    (0..n).fold(a, |acc, _| Arity::deriv(acc))
}

/// True for products of derivative chains over `Theta`, including the empty
/// product and a bare chain (read as a one-factor product).
pub fn is_algebraic(a: &Arity) -> bool {
    match a.canonicalize() {
        Arity::Terminal => true,
        Arity::Prod(fs) => fs.iter().all(|f| f.derivative_order().is_some()),
        other => other.derivative_order().is_some(),
    }
}

pub fn parse_arity(text: &str) -> Result<Arity, ArityParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.len() };
    let a = p.sum()?;
    if let Some(t) = p.peek() {
        return Err(p.error_at(t.pos, format!("unexpected {}", t.kind)));
    }
    Ok(a)
}

pub fn print_arity(a: &Arity) -> String {
    let mut out = String::new();
    write_arity(a, 0, &mut out);
    out
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_arity(self))
    }
}

const LVL_SUM: u8 = 0;
const LVL_PROD: u8 = 1;
const LVL_COMP: u8 = 2;
const LVL_POSTFIX: u8 = 3;
const LVL_ATOM: u8 = 4;

fn level(a: &Arity) -> u8 {
    match a {
        Arity::Sum(vs) if !vs.is_empty() => LVL_SUM,
        Arity::Prod(fs) if fs.len() >= 2 => LVL_PROD,
        Arity::Comp(..) => LVL_COMP,
        Arity::Deriv(_) => LVL_POSTFIX,
        _ => LVL_ATOM,
    }
}

fn write_arity(a: &Arity, min: u8, out: &mut String) {
    if level(a) < min {
        out.push('(');
        write_arity(a, LVL_SUM, out);
        out.push(')');
        return;
    }
    match a {
        Arity::Theta => out.push('T'),
        Arity::Terminal => out.push('1'),
        Arity::Sum(vs) if vs.is_empty() => out.push('0'),
        Arity::Sum(vs) => {
            for (i, (tag, v)) in vs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                if vs.len() == 1 || *tag != i.to_string() {
                    out.push_str(tag);
                    out.push_str(": ");
                }
                write_arity(v, LVL_PROD, out);
            }
        }
        Arity::Prod(fs) if fs.len() == 1 => match fs[0].derivative_order() {
            Some(k) => out.push_str(&format!("T^({k})")),
            None => {
                out.push('(');
                write_arity(&fs[0], LVL_SUM, out);
                out.push_str(",)");
            }
        },
        // Only reachable for non-canonical input; `T^()` reads back as `Terminal`.
        Arity::Prod(_) if level(a) == LVL_ATOM => out.push_str("T^()"),
        Arity::Prod(fs) => {
            for (i, f) in fs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" * ");
                }
                write_arity(f, LVL_COMP, out);
            }
        }
        Arity::Comp(outer, inner) => {
            write_arity(outer, LVL_POSTFIX, out);
            out.push_str(" . ");
            write_arity(inner, LVL_COMP, out);
        }
        Arity::Deriv(inner) => {
            write_arity(inner, LVL_POSTFIX, out);
            out.push('\'');
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    Star,
    Dot,
    Prime,
    Plus,
    LParen,
    RParen,
    Comma,
    Colon,
    Caret,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Prime => f.write_str("`'`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Caret => f.write_str("`^`"),
        }
    }
}

struct Token {
    kind: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ArityParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'*' => Tok::Star,
            b'.' => Tok::Dot,
            b'\'' => Tok::Prime,
            b'+' => Tok::Plus,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b':' => Tok::Colon,
            b'^' => Tok::Caret,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse()
                    .map_err(|_| ArityParseError { pos: start, msg: "integer out of range".into() })?;
                tokens.push(Token { kind: Tok::Int(n), pos: start });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token { kind: Tok::Ident(text[start..i].to_string()), pos: start });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ArityParseError { pos: start, msg: format!("unexpected character {ch:?}") });
            }
        };
        tokens.push(Token { kind, pos: start });
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self, ahead: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + ahead).map(|t| &t.kind)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn error_at(&self, pos: usize, msg: String) -> ArityParseError {
        ArityParseError { pos, msg }
    }

    fn eat(&mut self, kind: &Tok) -> bool {
        if self.peek_kind(0) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: Tok) -> Result<(), ArityParseError> {
        if self.eat(&kind) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |t| t.kind.to_string());
            Err(self.error_at(self.here(), format!("expected {kind}, found {found}")))
        }
    }

    fn sum(&mut self) -> Result<Arity, ArityParseError> {
        let mut items = Vec::new();
        let mut labelled_any = false;
        loop {
            let label = self.label();
            labelled_any |= label.is_some();
            let tag = label.unwrap_or_else(|| items.len().to_string());
            let start = self.here();
            items.push((tag, self.prod()?, start));
            if !self.eat(&Tok::Plus) {
                break;
            }
        }
        if items.len() == 1 && !labelled_any {
            return Ok(items.pop().map(|(_, a, _)| a).expect("one item"));
        }
        for (i, (tag, _, pos)) in items.iter().enumerate() {
            if items[..i].iter().any(|(t, _, _)| t == tag) {
                return Err(self.error_at(*pos, format!("duplicate sum tag `{tag}`")));
            }
        }
        Ok(Arity::Sum(items.into_iter().map(|(t, a, _)| (t, a)).collect()))
    }

    fn label(&mut self) -> Option<String> {
        if self.peek_kind(1) != Some(&Tok::Colon) {
            return None;
        }
        let label = match self.peek_kind(0)? {
            Tok::Ident(s) => s.clone(),
            Tok::Int(n) => n.to_string(),
            _ => return None,
        };
        self.pos += 2;
        Some(label)
    }

    fn prod(&mut self) -> Result<Arity, ArityParseError> {
        let mut factors = vec![self.comp()?];
        while self.eat(&Tok::Star) {
            factors.push(self.comp()?);
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Arity::Prod(factors) })
    }

    fn comp(&mut self) -> Result<Arity, ArityParseError> {
        let outer = self.postfix()?;
        if self.eat(&Tok::Dot) {
            let inner = self.comp()?;
            Ok(Arity::comp(outer, inner))
        } else {
            Ok(outer)
        }
    }

    fn postfix(&mut self) -> Result<Arity, ArityParseError> {
        let mut a = self.atom()?;
        while self.eat(&Tok::Prime) {
            a = Arity::deriv(a);
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Arity, ArityParseError> {
        let Some(tok) = self.peek() else {
            return Err(self.error_at(self.end, "unexpected end of input".into()));
        };
        let pos = tok.pos;
        match tok.kind.clone() {
            Tok::Ident(s) if s == "T" => {
                self.pos += 1;
                if self.eat(&Tok::Caret) {
                    self.expect(Tok::LParen)?;
                    let mut orders = Vec::new();
                    if !self.eat(&Tok::RParen) {
                        loop {
                            match self.peek_kind(0) {
                                Some(Tok::Int(n)) => {
                                    orders.push(*n);
                                    self.pos += 1;
                                }
                                _ => return Err(self.error_at(self.here(), "expected derivative order".into())),
                            }
                            if self.eat(&Tok::RParen) {
                                break;
                            }
                            self.expect(Tok::Comma)?;
                        }
                    }
                    Ok(algebraic(&orders))
                } else {
                    Ok(Arity::Theta)
                }
            }
            Tok::Int(1) => {
                self.pos += 1;
                Ok(Arity::Terminal)
            }
            Tok::Int(0) => {
                self.pos += 1;
                Ok(Arity::Sum(Vec::new()))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.eat(&Tok::Comma) {
                    self.expect(Tok::RParen)?;
                    Ok(Arity::Prod(vec![inner]))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(inner)
                }
            }
            other => Err(self.error_at(pos, format!("unexpected {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use Arity::*;

    fn d(a: Arity) -> Arity {
        Arity::deriv(a)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_arity("T * T").unwrap(), Prod(vec![Theta, Theta]));
        assert_eq!(parse_arity("T^(1)").unwrap(), Prod(vec![d(Theta)]));
        assert_eq!(parse_arity("T . T").unwrap(), Arity::comp(Theta, Theta));
        assert_eq!(parse_arity("T^()").unwrap(), Terminal);
        assert_eq!(parse_arity("T''").unwrap(), d(d(Theta)));
    }

    #[test]
    fn precedence_and_associativity() {
        // `.` binds tighter than `*`, `'` tighter than `.`
        assert_eq!(parse_arity("T . T' * T").unwrap(), Prod(vec![Arity::comp(Theta, d(Theta)), Theta]));
        assert_eq!(parse_arity("T . T . T").unwrap(), Arity::comp(Theta, Arity::comp(Theta, Theta)));
        assert_eq!(parse_arity("T * T * T").unwrap(), Prod(vec![Theta, Theta, Theta]));
        assert_eq!(parse_arity("(T * T) * T").unwrap(), Prod(vec![Prod(vec![Theta, Theta]), Theta]));
        assert_eq!(
            parse_arity("1 + T * T").unwrap(),
            Sum(vec![("0".into(), Terminal), ("1".into(), Prod(vec![Theta, Theta]))])
        );
        assert_eq!(parse_arity("(T * T)'").unwrap(), d(Prod(vec![Theta, Theta])));
    }

    #[test]
    fn labelled_sums() {
        assert_eq!(
            parse_arity("nil: 1 + cons: T * T").unwrap(),
            Sum(vec![("nil".into(), Terminal), ("cons".into(), Prod(vec![Theta, Theta]))])
        );
        assert_eq!(parse_arity("only: T").unwrap(), Sum(vec![("only".into(), Theta)]));
        assert_eq!(parse_arity("0").unwrap(), Sum(vec![]));
        let err = parse_arity("a: T + a: 1").unwrap_err();
        assert!(err.msg.contains("duplicate"), "{err}");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_arity("T * ").unwrap_err();
        assert_eq!(err.pos, 4);
        let err = parse_arity("T & T").unwrap_err();
        assert_eq!(err.pos, 2);
        assert!(parse_arity("(T").is_err());
        assert!(parse_arity("T^(1,").is_err());
        assert!(parse_arity("2").is_err());
        assert!(parse_arity("").is_err());
    }

    #[test]
    fn algebraic_and_derivatives() {
        assert_eq!(algebraic(&[0, 0]), Prod(vec![Theta, Theta]));
        assert_eq!(algebraic(&[1]), Prod(vec![d(Theta)]));
        assert_eq!(algebraic(&[]), Terminal);
        assert_eq!(derive_n(Theta, 2), d(d(Theta)));
        assert_eq!(derive_n(Theta, 0), Theta);
        assert_eq!(derive_n(Terminal, 1), d(Terminal));
    }

    #[test]
    fn algebraic_recognition() {
        assert!(is_algebraic(&Prod(vec![Theta, d(Theta)])));
        assert!(!is_algebraic(&Arity::comp(Theta, Theta)));
        assert!(is_algebraic(&Terminal));
        assert!(is_algebraic(&d(Theta)));
        assert!(is_algebraic(&Prod(vec![])));
        assert!(!is_algebraic(&d(Terminal)));
        assert!(!is_algebraic(&Sum(vec![("a".into(), Theta)])));
    }

    #[test]
    fn printer_output() {
        let cases = [
            ("T * T", Prod(vec![Theta, Theta])),
            ("T'", d(Theta)),
            ("T^(1)", Prod(vec![d(Theta)])),
            ("T . T", Arity::comp(Theta, Theta)),
            ("(T . T) . T", Arity::comp(Arity::comp(Theta, Theta), Theta)),
            ("(T * T,)", Prod(vec![Prod(vec![Theta, Theta])])),
            ("(T . T)'", d(Arity::comp(Theta, Theta))),
            ("T'' * T * T", Prod(vec![d(d(Theta)), Theta, Theta])),
            ("1 + T", Sum(vec![("0".into(), Terminal), ("1".into(), Theta)])),
            ("x: T", Sum(vec![("x".into(), Theta)])),
            ("(1 + T) * T", Prod(vec![Sum(vec![("0".into(), Terminal), ("1".into(), Theta)]), Theta])),
            ("0", Sum(vec![])),
        ];
        for (text, a) in cases {
            assert_eq!(print_arity(&a), text);
            assert_eq!(parse_arity(text).unwrap(), a, "{text}");
        }
    }

    #[test]
    fn canonicalization() {
        let a = Prod(vec![Prod(vec![]), d(Prod(vec![]))]);
        let c = a.canonicalize();
        assert_eq!(c, Prod(vec![Terminal, d(Terminal)]));
        assert!(c.is_canonical());
        assert!(!a.is_canonical());
        // structural equality only: the derivative of the final arity stays distinct
        assert_ne!(d(Terminal), Terminal);
    }

    #[test]
    fn duplicate_tags_detected() {
        let a = Prod(vec![Theta, Sum(vec![("x".into(), Theta), ("x".into(), Terminal)])]);
        assert_eq!(a.duplicate_tag().as_deref(), Some("x"));
        assert_eq!(Theta.duplicate_tag(), None);
    }
}
