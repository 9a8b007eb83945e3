//! A small expression language for series.
//!
//! ```text
//! program := sum ("expand" INT)?
//! sum     := product (("+" | "-") product)*
//! product := unary ("*" unary)*
//! unary   := "-" unary | postfix
//! postfix := atom ("[" INT "]" | "^" INT)*
//! atom    := INT | "L" ("^" ["-"] INT)? | "T" ("^" INT)?
//!          | "gen(" INT "," INT ")" | "dr(" INT "," INT "," INT ")"
//!          | "lim(" sum ")" | "(" sum ")"
//! ```

use serde_json::{json, Value as Json};

use super::{normalize_dr, GClass, RationalSeries};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    LPow(i32),
    TPow(u32),
    Gen(i32, u32),
    Dr(i32, u32, u32),
    Lim(Box<Expr>),
    Extract(Box<Expr>, u32),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Expand(Box<Expr>, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Class(GClass),
    Series(RationalSeries),
    Expansion(Vec<GClass>),
}

impl Value {
    pub fn to_json(&self) -> Json {
        match self {
            Value::Class(c) => json!({"class": c.to_json()}),
            Value::Series(s) => json!({"series": s.to_json(), "display": s.to_string()}),
            Value::Expansion(v) => json!({"expansion": v.iter().map(GClass::to_json).collect::<Vec<_>>()}),
        }
    }

    fn into_series(self) -> Result<RationalSeries, Error> {
        match self {
            Value::Class(c) => Ok(RationalSeries::constant(c)),
            Value::Series(s) => Ok(s),
            Value::Expansion(_) => Err(Error::Syntax("`expand` may only appear at the end".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s
                .parse()
                .map_err(|_| Error::Syntax(format!("integer `{s}` out of range at column {}", start + 1)))?;
            out.push((start, Token::Int(v)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Token::Ident(chars[start..i].iter().collect())));
        } else if "()+-*^[],".contains(c) {
            out.push((i, Token::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax(format!("unexpected character `{c}` at column {}", i + 1)));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(c, _)| *c) + 1
    }

    fn error<T>(&self, what: &str) -> Result<T, Error> {
        Err(Error::Syntax(format!("{what} at column {}", self.column())))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(&format!("expected `{c}`"))
        }
    }

    fn int(&mut self) -> Result<i64, Error> {
        let negative = self.eat('-');
        match self.peek() {
            Some(Token::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(if negative { -v } else { v })
            }
            _ => self.error("expected an integer"),
        }
    }

    fn small<T: TryFrom<i64>>(&mut self, what: &str) -> Result<T, Error> {
        let col = self.column();
        let v = self.int()?;
        T::try_from(v).map_err(|_| Error::Syntax(format!("{what} `{v}` out of range at column {col}")))
    }

    fn program(&mut self) -> Result<Expr, Error> {
        let mut e = self.sum()?;
        if self.peek() == Some(&Token::Ident("expand".into())) {
            self.pos += 1;
            let n: usize = self.small("expansion order")?;
            e = Expr::Expand(Box::new(e), n);
        }
        if self.pos != self.tokens.len() {
            return self.error("unexpected trailing input");
        }
        Ok(e)
    }

    fn sum(&mut self) -> Result<Expr, Error> {
        let mut e = self.product()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.product()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.product()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, Error> {
        let mut e = self.unary()?;
        while self.eat('*') {
            e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, Error> {
        let mut e = self.atom()?;
        loop {
            if self.eat('[') {
                let d: u32 = self.small("extraction degree")?;
                self.expect(']')?;
                e = Expr::Extract(Box::new(e), d);
            } else if self.eat('^') {
                let k: u32 = self.small("exponent")?;
                e = Expr::Pow(Box::new(e), k);
            } else {
                return Ok(e);
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "L" => {
                        let k = if self.eat('^') { self.small("exponent")? } else { 1 };
                        Ok(Expr::LPow(k))
                    }
                    "T" => {
                        let k = if self.eat('^') { self.small("exponent")? } else { 1 };
                        Ok(Expr::TPow(k))
                    }
                    "gen" => {
                        self.expect('(')?;
                        let a = self.small("a")?;
                        self.expect(',')?;
                        let b = self.small("b")?;
                        self.expect(')')?;
                        Ok(Expr::Gen(a, b))
                    }
                    "dr" => {
                        self.expect('(')?;
                        let p = self.small("p")?;
                        self.expect(',')?;
                        let q = self.small("q")?;
                        self.expect(',')?;
                        let r = self.small("r")?;
                        self.expect(')')?;
                        Ok(Expr::Dr(p, q, r))
                    }
                    "lim" => {
                        self.expect('(')?;
                        let e = self.sum()?;
                        self.expect(')')?;
                        Ok(Expr::Lim(Box::new(e)))
                    }
                    _ => {
                        self.pos -= 1;
                        self.error(&format!("unknown name `{name}`"))
                    }
                }
            }
            _ => self.error("expected an expression"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, Error> {
    if !text.is_ascii() {
        return Err(Error::Syntax("expressions must be ASCII".into()));
    }
    let tokens = tokenize(text)?;
    Parser {
        tokens,
        pos: 0,
        len: text.len(),
    }
    .program()
}

/// Evaluates an expression; `max_d` caps extraction degrees.
pub fn evaluate(e: &Expr, max_d: u32) -> Result<Value, Error> {
    let series = |e: &Expr| -> Result<RationalSeries, Error> { evaluate(e, max_d)?.into_series() };
    Ok(match e {
        Expr::Int(v) => Value::Class(GClass::constant(*v)),
        Expr::LPow(k) => Value::Class(GClass::monomial(1, *k)),
        Expr::TPow(k) => Value::Series(RationalSeries::t_power(*k)),
        Expr::Gen(a, b) => Value::Series(RationalSeries::generator(*a, *b)?),
        Expr::Dr(p, q, r) => Value::Series(normalize_dr(*p, *q, *r)?),
        Expr::Lim(x) => Value::Class(series(x)?.limit()?),
        Expr::Extract(x, d) => match evaluate(x, max_d)? {
            Value::Class(c) => Value::Class(c),
            other => Value::Series(other.into_series()?.extract_with_limit(*d, max_d)?),
        },
        Expr::Pow(x, k) => match evaluate(x, max_d)? {
            Value::Class(c) => Value::Class(c.pow(*k)),
            other => {
                let s = other.into_series()?;
                Value::Series((0..*k).fold(RationalSeries::one(), |acc, _| &acc * &s))
            }
        },
        Expr::Neg(x) => match evaluate(x, max_d)? {
            Value::Class(c) => Value::Class(-c),
            other => Value::Series(-&other.into_series()?),
        },
        Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) => {
            let (vx, vy) = (evaluate(x, max_d)?, evaluate(y, max_d)?);
            match (vx, vy) {
                (Value::Class(a), Value::Class(b)) => Value::Class(match e {
                    Expr::Add(..) => &a + &b,
                    Expr::Sub(..) => &a - &b,
                    _ => &a * &b,
                }),
                (vx, vy) => {
                    let (a, b) = (vx.into_series()?, vy.into_series()?);
                    Value::Series(match e {
                        Expr::Add(..) => &a + &b,
                        Expr::Sub(..) => &a - &b,
                        _ => &a * &b,
                    })
                }
            }
        }
        Expr::Expand(x, n) => Value::Expansion(series(x)?.expand(*n)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(text: &str) -> Value {
        evaluate(&parse(text).unwrap(), 12).unwrap()
    }

    #[test]
    fn limit_of_extraction() {
        assert_eq!(eval("lim((gen(1,1))[2])"), Value::Class(GClass::one()));
        assert_eq!(eval("lim(gen(1,1)[2])"), Value::Class(GClass::one()));
    }

    #[test]
    fn arithmetic_and_precedence() {
        assert_eq!(eval("1 + 2 * 3"), Value::Class(GClass::constant(7)));
        assert_eq!(eval("(L - 1)^2"), Value::Class(GClass::from_terms([(2, 1), (1, -2), (0, 1)])));
        assert_eq!(eval("L^-2 * L"), Value::Class(GClass::monomial(1, -1)));
        assert_eq!(eval("-3 + 1"), Value::Class(GClass::constant(-2)));
        let Value::Series(s) = eval("gen(1,1) * gen(1,1) - gen(1,1)^2") else {
            panic!("series expected")
        };
        assert!(s.is_zero());
    }

    #[test]
    fn expansion() {
        let Value::Expansion(v) = eval("gen(1,1) expand 3") else {
            panic!("expansion expected")
        };
        assert_eq!(v[3], GClass::monomial(-1, -3));
        let Value::Expansion(v) = eval("T^2 + 1 expand 2") else {
            panic!("expansion expected")
        };
        assert_eq!(v, vec![GClass::one(), GClass::zero(), GClass::one()]);
    }

    #[test]
    fn errors() {
        for bad in ["gen(1)", "1 +", "foo(1)", "gen(1,1) expand", "1 $ 2", "(1", "lim(1) 2", "gen(1,1)[2"] {
            assert!(matches!(parse(bad), Err(Error::Syntax(_))), "{bad}");
        }
        assert!(matches!(parse("ℓ"), Err(Error::Syntax(_))));
        let e = parse("gen(1,0)").unwrap();
        assert!(matches!(evaluate(&e, 12), Err(Error::Series(_))));
        let e = parse("lim(T)").unwrap();
        assert!(matches!(evaluate(&e, 12), Err(Error::Series(_))));
        let e = parse("gen(1,1)[13]").unwrap();
        assert!(matches!(evaluate(&e, 12), Err(Error::Series(_))));
        assert!(evaluate(&parse("gen(1,1)[13]").unwrap(), 13).is_ok());
    }
}
