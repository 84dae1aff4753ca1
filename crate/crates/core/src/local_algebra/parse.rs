use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::{Ideal, Polynomial, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct IdealParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Token::Number(digits.parse().expect("ascii digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    vars: &'a Arc<[String]>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = constant_value(&d).ok_or("division by a non-constant")?;
                if c.is_zero() {
                    return Err("division by zero".into());
                }
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, String> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Polynomial, String> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                let k: u32 = n.try_into().map_err(|_| "exponent too large")?;
                Ok(base.pow(k))
            }
            _ => Err("expected a non-negative integer exponent after '^'".into()),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, String> {
        match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(
                    self.vars,
                    BigRational::from_integer(n),
                ))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Polynomial::named(self.vars, &name)
                    .ok_or_else(|| format!("unknown variable '{name}'"))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err("missing ')'".into());
                }
                Ok(inner)
            }
            Some(Token::Op(c)) => Err(format!("unexpected '{c}'")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

fn constant_value(p: &Polynomial) -> Option<BigRational> {
    match p.term_count() {
        0 => Some(BigRational::zero()),
        1 => {
            let (e, c) = p.terms().next().unwrap();
            e.iter().all(|k| *k == 0).then(|| c.clone())
        }
        _ => None,
    }
}

fn parse_tokens(tokens: &[Token], vars: &Arc<[String]>) -> Result<Polynomial, String> {
    let mut parser = Parser {
        tokens,
        pos: 0,
        vars,
    };
    let p = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(format!("trailing input at token {}", parser.pos + 1));
    }
    Ok(p)
}

/// Parses an infix expression such as `3/4*x^2 - (y - 1)*z`.
pub fn parse_polynomial(text: &str, vars: &Arc<[String]>) -> Result<Polynomial, IdealParseError> {
    let err = |message| IdealParseError { line: 1, message };
    let tokens = tokenize(text).map_err(err)?;
    parse_tokens(&tokens, vars).map_err(err)
}

fn directive<'a>(line: &'a str, keyword: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(keyword)?;
    let rest = rest.trim_start();
    if let Some(r) = rest.strip_prefix(':') {
        Some(r)
    } else if rest.len() < line.len() - keyword.len() {
        Some(rest)
    } else {
        None
    }
}

/// Reads an ideal file: one polynomial per line, `#` comments, and optional
/// `vars` and `order` lines. Without `vars`, variables are taken in order of
/// first appearance. The default order is grevlex.
pub fn parse_ideal_file(text: &str) -> Result<Ideal, IdealParseError> {
    let mut declared: Option<Vec<String>> = None;
    let mut order = TermOrder::default();
    let mut rows: Vec<(usize, Vec<Token>)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| IdealParseError {
            line: line_no,
            message,
        };
        if let Some(rest) = directive(line, "vars") {
            let names: Vec<String> = rest
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            if names.is_empty() {
                return Err(err("empty variable list".into()));
            }
            declared = Some(names);
        } else if let Some(rest) = directive(line, "order") {
            order = rest.trim().parse().map_err(err)?;
        } else {
            rows.push((line_no, tokenize(line).map_err(err)?));
        }
    }
    let names = declared.unwrap_or_else(|| {
        let mut seen: Vec<String> = Vec::new();
        for (_, tokens) in &rows {
            for t in tokens {
                if let Token::Ident(name) = t {
                    if !seen.contains(name) {
                        seen.push(name.clone());
                    }
                }
            }
        }
        seen
    });
    let vars: Arc<[String]> = names.into();
    let mut generators = Vec::with_capacity(rows.len());
    for (line, tokens) in &rows {
        let p = parse_tokens(tokens, &vars).map_err(|message| IdealParseError {
            line: *line,
            message,
        })?;
        generators.push(p);
    }
    Ideal::new(&vars, order, generators).map_err(|e| IdealParseError {
        line: 0,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_algebra::ring;

    #[test]
    fn expressions() {
        let r = ring(&["x", "y"]);
        let p = parse_polynomial("-(x - y)^2 + 3/4*x*y / 3", &r).unwrap();
        assert_eq!(p.to_string(), "-x^2 + 9/4*x*y - y^2");
        assert!(parse_polynomial("x + z", &r).is_err());
        assert!(parse_polynomial("x / y", &r).is_err());
        assert!(parse_polynomial("(x", &r).is_err());
        assert!(parse_polynomial("x ^ y", &r).is_err());
    }

    #[test]
    fn ideal_files() {
        let text =
            "# twisted cubic\nvars: x, y, z\norder lex\nx^2 - y\nx*y - z  # second\n\ny^2 - x*z\n";
        let ideal = parse_ideal_file(text).unwrap();
        assert_eq!(ideal.vars().as_ref(), ["x", "y", "z"]);
        assert_eq!(ideal.order(), TermOrder::Lex);
        assert_eq!(ideal.len(), 3);

        let inferred = parse_ideal_file("b*a - 1\nc").unwrap();
        assert_eq!(inferred.vars().as_ref(), ["b", "a", "c"]);
        assert_eq!(inferred.order(), TermOrder::GrevLex);

        let bad = parse_ideal_file("vars x\nx + 1\nx +").unwrap_err();
        assert_eq!(bad.line, 3);
        assert!(parse_ideal_file("order sideways\nx").is_err());
    }
}
