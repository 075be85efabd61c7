//! Recursive-descent parser and evaluator for first-coordinate expressions.
//!
//! Grammar (precedence low to high):
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := ("-" | "+") unary | power
//! power := atom ("^" unary)?
//! atom  := NUMBER | VAR | FUNC "(" expr ")" | "(" expr ")"
//! ```
//! `VAR` is one of `a b c S A B C` and `FUNC` one of `sqrt sin cos`.

use thiserror::Error;

/// Parse failure with a 1-based column inside the expression text.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("column {col}: {message}")]
pub struct ExprError {
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    SideA,
    SideB,
    SideC,
    /// Twice the triangle area.
    S,
    AngleA,
    AngleB,
    AngleC,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sqrt,
    Sin,
    Cos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Parse tree of a center function.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Values of the variables for one cyclic rotation of the triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Env {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub s: f64,
    pub angle_a: f64,
    pub angle_b: f64,
    pub angle_c: f64,
}

impl Env {
    fn get(&self, v: Var) -> f64 {
        match v {
            Var::SideA => self.a,
            Var::SideB => self.b,
            Var::SideC => self.c,
            Var::S => self.s,
            Var::AngleA => self.angle_a,
            Var::AngleB => self.angle_b,
            Var::AngleC => self.angle_c,
        }
    }
}

/// Relative size below which a divisor counts as zero.
const DIV_CANCEL_EPS: f64 = 1e-12;

/// A value together with a bound on the magnitudes that were summed to
/// produce it. A value tiny relative to its bound is a cancellation to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tracked {
    pub value: f64,
    pub magnitude: f64,
}

impl Expr {
    /// Evaluates with cancellation tracking.
    pub fn eval(&self, env: &Env) -> Tracked {
        let t = |value: f64, magnitude: f64| Tracked { value, magnitude };
        match self {
            Expr::Num(x) => t(*x, x.abs()),
            Expr::Var(v) => {
                let x = env.get(*v);
                t(x, x.abs())
            }
            Expr::Neg(e) => {
                let r = e.eval(env);
                t(-r.value, r.magnitude)
            }
            Expr::Call(f, e) => {
                let r = e.eval(env);
                match f {
                    Func::Sqrt => {
                        let x = if r.value < 0.0 && r.value > -1e-12 * r.magnitude { 0.0 } else { r.value };
                        t(x.sqrt(), r.magnitude.sqrt())
                    }
                    Func::Sin => {
                        let v = r.value.sin();
                        t(v, v.abs())
                    }
                    Func::Cos => {
                        let v = r.value.cos();
                        t(v, v.abs())
                    }
                }
            }
            Expr::Bin(op, l, r) => {
                let (l, r) = (l.eval(env), r.eval(env));
                match op {
                    BinOp::Add => t(l.value + r.value, l.magnitude + r.magnitude),
                    BinOp::Sub => t(l.value - r.value, l.magnitude + r.magnitude),
                    BinOp::Mul => t(l.value * r.value, l.magnitude * r.magnitude),
                    // A divisor that cancelled to zero makes the result undefined.
                    BinOp::Div if r.value.abs() <= DIV_CANCEL_EPS * r.magnitude => t(f64::NAN, f64::NAN),
                    BinOp::Div => t(l.value / r.value, l.magnitude / r.value.abs()),
                    BinOp::Pow => {
                        let v = l.value.powf(r.value);
                        let m = if r.value > 0.0 { l.magnitude.powf(r.value) } else { v.abs() };
                        t(v, m)
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let col = i + 1;
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let value = text
                .parse::<f64>()
                .map_err(|_| ExprError { col, message: format!("malformed number '{text}'") })?;
            out.push((Tok::Num(value), col));
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(ch) {
            out.push((Tok::Sym(ch), col));
            i += 1;
        } else {
            return Err(ExprError { col, message: format!("unexpected character '{ch}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { col: self.col(), message: message.into() })
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(&Tok::Sym(ch)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let open_col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(x)) => {
                self.pos += 1;
                Ok(Expr::Num(x))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(ExprError { col: open_col, message: "unclosed parenthesis".into() });
                }
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let var = match name.as_str() {
                    "a" => Some(Var::SideA),
                    "b" => Some(Var::SideB),
                    "c" => Some(Var::SideC),
                    "S" => Some(Var::S),
                    "A" => Some(Var::AngleA),
                    "B" => Some(Var::AngleB),
                    "C" => Some(Var::AngleC),
                    _ => None,
                };
                if let Some(v) = var {
                    return Ok(Expr::Var(v));
                }
                let func = match name.as_str() {
                    "sqrt" => Func::Sqrt,
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    _ => {
                        self.pos -= 1;
                        return self.err(format!("unknown identifier '{name}'"));
                    }
                };
                let call_col = self.col();
                if !self.eat('(') {
                    return self.err(format!("expected '(' after {name}"));
                }
                let arg = self.expr()?;
                if !self.eat(')') {
                    return Err(ExprError { col: call_col, message: "unclosed parenthesis".into() });
                }
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Some(Tok::Sym(ch)) => self.err(format!("unexpected '{ch}'")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses one expression.
pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end_col: src.chars().count() + 1 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> Env {
        Env { a: 2.0, b: 3.0, c: 4.0, s: 5.0, angle_a: 0.5, angle_b: 1.0, angle_c: 1.5 }
    }

    fn val(src: &str) -> f64 {
        parse_expr(src).unwrap().eval(&env()).value
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(val("1 + 2*3"), 7.0);
        assert_eq!(val("-a^2"), -4.0);
        assert_eq!(val("2^3^2"), 512.0);
        assert_eq!(val("a^-1"), 0.5);
        assert_eq!(val("(a+b)*c/2"), 10.0);
        assert_eq!(val("a - b - c"), -5.0);
        assert_eq!(val("1/2/2"), 0.25);
    }

    #[test]
    fn functions_and_variables() {
        assert_eq!(val("sqrt(S - 1)"), 2.0);
        assert!((val("sin(A) + cos(B/3)") - (0.5f64.sin() + (1.0f64 / 3.0).cos())).abs() < 1e-15);
        assert_eq!(val("C"), 1.5);
    }

    #[test]
    fn cancellation_is_visible() {
        let t = parse_expr("b^2 - b*b").unwrap().eval(&env());
        assert_eq!(t.value, 0.0);
        assert_eq!(t.magnitude, 18.0);
    }

    #[test]
    fn unclosed_parenthesis_reported_at_open() {
        let e = parse_expr("a*(a").unwrap_err();
        assert_eq!(e.col, 3);
        assert!(e.message.contains("unclosed"));
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_expr("a +").is_err());
        assert!(parse_expr("tan(A)").is_err());
        assert!(parse_expr("a b").is_err());
        assert_eq!(parse_expr("a $ b").unwrap_err().col, 3);
    }
}
