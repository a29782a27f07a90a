//! Expression syntax: tokenizer, recursive-descent parser and a printer
//! whose output parses back to the same tree.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := comp ("*" comp)*
//! comp   := factor ("o" factor)*
//! factor := atom ("^" integer)?
//! atom   := literal | "i" | ident ["(" expr ("," expr)* ")"]
//!         | "[" expr "," expr "]" | "(" expr ")"
//! ```

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    /// Nonnegative literal; negation is a separate node.
    Lit(Rational),
    Imag,
    Sym { name: String, args: Vec<Ast> },
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Compose(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
    Bracket(Box<Ast>, Box<Ast>),
}

impl Ast {
    pub fn lit(q: Rational) -> Self {
        if q.is_negative() {
            Ast::Neg(Box::new(Ast::Lit(-q)))
        } else {
            Ast::Lit(q)
        }
    }

    pub fn sym(name: &str) -> Self {
        Ast::Sym { name: name.into(), args: Vec::new() }
    }

    pub fn call(name: &str, args: Vec<Ast>) -> Self {
        Ast::Sym { name: name.into(), args }
    }

    /// Every symbol name in the tree, arguments included.
    pub fn symbols(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Ast::Lit(_) | Ast::Imag => {}
            Ast::Sym { name, args } => {
                out.push(name);
                args.iter().for_each(|a| a.collect(out));
            }
            Ast::Neg(a) | Ast::Pow(a, _) => a.collect(out),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Compose(a, b) | Ast::Bracket(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Ast::Neg(_) | Ast::Add(..) | Ast::Sub(..) => 1,
            Ast::Mul(..) => 2,
            Ast::Compose(..) => 3,
            Ast::Pow(..) => 4,
            _ => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Punct(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let q = parse_rational(&text).map_err(|e| syntax(l0, c0, e.to_string()))?;
            out.push(Token { tok: Tok::Num(q), line: l0, col: c0 });
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
        } else if "+-*^()[],".contains(c) {
            i += 1;
            out.push(Token { tok: Tok::Punct(c), line: l0, col: c0 });
        } else {
            return Err(syntax(l0, c0, format!("unexpected character '{c}'")));
        }
        col += i - start;
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn at(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn at_ident(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == s)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.at(c) {
            self.bump();
            Ok(())
        } else {
            let t = self.peek();
            Err(syntax(t.line, t.col, format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = if self.at('-') {
            self.bump();
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.at('+') {
                self.bump();
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.at('-') {
                self.bump();
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.comp()?;
        while self.at('*') {
            self.bump();
            lhs = Ast::Mul(Box::new(lhs), Box::new(self.comp()?));
        }
        Ok(lhs)
    }

    fn comp(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        while self.at_ident("o") {
            self.bump();
            lhs = Ast::Compose(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if !self.at('^') {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Tok::Num(q) if q.is_integer() => {
                let e = u32::try_from(q.numer()).map_err(|_| syntax(t.line, t.col, "exponent too large"))?;
                Ok(Ast::Pow(Box::new(base), e))
            }
            _ => Err(syntax(t.line, t.col, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let t = self.bump();
        match t.tok {
            Tok::Num(q) => Ok(Ast::Lit(q)),
            Tok::Ident(name) if name == "i" => Ok(Ast::Imag),
            Tok::Ident(name) if name == "o" => Err(syntax(t.line, t.col, "'o' needs a left operand")),
            Tok::Ident(name) => {
                let mut args = Vec::new();
                if self.at('(') {
                    self.bump();
                    args.push(self.expr()?);
                    while self.at(',') {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                }
                Ok(Ast::Sym { name, args })
            }
            Tok::Punct('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Punct('[') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(Ast::Bracket(Box::new(a), Box::new(b)))
            }
            Tok::End => Err(syntax(t.line, t.col, "unexpected end of input")),
            Tok::Punct(c) => Err(syntax(t.line, t.col, format!("unexpected '{c}'"))),
        }
    }
}

pub fn parse(src: &str) -> Result<Ast> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(t.line, t.col, "trailing input"));
    }
    Ok(e)
}

fn write_at(f: &mut fmt::Formatter<'_>, a: &Ast, min: u8) -> fmt::Result {
    if a.prec() < min {
        write!(f, "(")?;
        write_at(f, a, 0)?;
        return write!(f, ")");
    }
    match a {
        Ast::Lit(q) => write!(f, "{}", fmt_rational(q)),
        Ast::Imag => write!(f, "i"),
        Ast::Sym { name, args } => {
            write!(f, "{name}")?;
            if !args.is_empty() {
                write!(f, "(")?;
                for (k, x) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write_at(f, x, 0)?;
                }
                write!(f, ")")?;
            }
            Ok(())
        }
        Ast::Neg(x) => {
            write!(f, "-")?;
            write_at(f, x, 2)
        }
        Ast::Add(x, y) | Ast::Sub(x, y) => {
            write_at(f, x, 1)?;
            write!(f, " {} ", if matches!(a, Ast::Add(..)) { "+" } else { "-" })?;
            write_at(f, y, 2)
        }
        Ast::Mul(x, y) => {
            write_at(f, x, 2)?;
            write!(f, "*")?;
            write_at(f, y, 3)
        }
        Ast::Compose(x, y) => {
            write_at(f, x, 3)?;
            write!(f, " o ")?;
            write_at(f, y, 4)
        }
        Ast::Pow(x, e) => {
            write_at(f, x, 5)?;
            write!(f, "^{e}")
        }
        Ast::Bracket(x, y) => {
            write!(f, "[")?;
            write_at(f, x, 0)?;
            write!(f, ", ")?;
            write_at(f, y, 0)?;
            write!(f, "]")
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn bracket_node() {
        let a = parse("[e(1), f(2)]").unwrap();
        assert_eq!(
            a,
            Ast::Bracket(Box::new(Ast::call("e", vec![Ast::Lit(int(1))])), Box::new(Ast::call("f", vec![Ast::Lit(int(2))])))
        );
    }

    #[test]
    fn product_of_pullbacks() {
        let a = parse("p1(Theta)*p2(Theta)").unwrap();
        assert!(matches!(a, Ast::Mul(..)));
        assert_eq!(a.to_string(), "p1(Theta)*p2(Theta)");
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse("e(").unwrap_err(), Error::Syntax { line: 1, col: 3, msg: "unexpected end of input".into() });
        match parse("a +\n  $").unwrap_err() {
            Error::Syntax { line, col, .. } => assert_eq!((line, col), (2, 3)),
            e => panic!("{e}"),
        }
        assert!(parse("a b").is_err());
        assert!(parse("x^y").is_err());
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("a*b o c^2").unwrap().to_string(), "a*b o c^2");
        let a = parse("-a*b + c").unwrap();
        assert!(matches!(a, Ast::Add(ref l, _) if matches!(**l, Ast::Neg(_))));
        assert_eq!(parse("a - (b - c)").unwrap().to_string(), "a - (b - c)");
        assert_eq!(parse("(a - b) - c").unwrap().to_string(), "a - b - c");
        assert_eq!(parse("(-a)^2").unwrap().to_string(), "(-a)^2");
        assert_eq!(parse("a + (-b)").unwrap().to_string(), "a + (-b)");
        assert_eq!(parse("3/4*i").unwrap().to_string(), "3/4*i");
    }

    #[test]
    fn negative_literal_constructor() {
        let a = Ast::lit(int(-3));
        assert_eq!(parse(&a.to_string()).unwrap(), a);
    }
}
