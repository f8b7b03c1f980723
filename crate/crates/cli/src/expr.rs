//! A small expression language for q-series.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] integer)?
//! atom  := integer | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Names are the constants `q`, `i`, `omega` (`w`, `ω`), `alpha` (`α`),
//! `sqrt2` (`√2`), `sqrt3` (`√3`), `zeta` (`ζ`) and the series `phi`, `psi`,
//! `phitilde`. Functions: `j`, `J`, `Jbar`, `g`, `G`, `f`, `m`, `subst`,
//! `twist`, plus `phi`, `psi` and `phitilde` with an empty argument list.

use std::fmt;

use mock_theta::mock::{appell_m, f_a, g_mock_base, g_rank_base, phi_tilde, AppellSpec};
use mock_theta::series::to_order;
use mock_theta::thetas::{euler_jm, j_am, jbar_am, jtheta, phi, psi, theta_j, ThetaSpec};
use mock_theta::{Constant, Cyc, Field, Monomial, Mono, Series};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Const(Constant),
    Q,
    /// A nullary series such as `psi`.
    Named(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(String, Vec<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Const(c) => write!(f, "{}", const_name(c)),
            Expr::Q => write!(f, "q"),
            Expr::Named(s) => write!(f, "{s}"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => match **a {
                Expr::Const(Constant::Zeta(_)) => write!(f, "({a})^{k}"),
                Expr::Int(_) | Expr::Const(_) | Expr::Q | Expr::Named(_) | Expr::Call(..) => {
                    write!(f, "{a}^{k}")
                }
                _ => write!(f, "({a})^{k}"),
            },
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn const_name(c: &Constant) -> String {
    match c {
        Constant::I => "i".into(),
        Constant::Omega => "omega".into(),
        Constant::Alpha => "alpha".into(),
        Constant::Sqrt2 => "sqrt2".into(),
        Constant::Sqrt3 => "sqrt3".into(),
        Constant::Zeta(1) => "zeta".into(),
        Constant::Zeta(k) => format!("zeta^{k}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(chars[k].1 as u64 - '0' as u64))
                    .ok_or(ParseError { pos, msg: "integer literal too large".into() })?;
                k += 1;
            }
            out.push((pos, Tok::Int(n)));
        } else if c.is_alphabetic() || c == '_' || c == '√' {
            let mut s = String::new();
            if c == '√' {
                s.push(c);
                k += 1;
            }
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                s.push(chars[k].1);
                k += 1;
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^(),·".contains(c) {
            out.push((pos, Tok::Sym(if c == '·' { '*' } else { c })));
            k += 1;
        } else {
            return Err(ParseError { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    k: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.k).map(|t| t.0).unwrap_or(self.end)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|t| &t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.k += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let bare_zeta = matches!(self.peek(), Some(Tok::Ident(s)) if s == "zeta" || s == "ζ")
            && self.toks.get(self.k + 1).map(|t| &t.1) != Some(&Tok::Sym('('));
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = i64::try_from(*n).or_else(|_| self.err("exponent too large"))?;
                self.k += 1;
                let k = if neg { -n } else { n };
                // zeta^k is a constant, not a power
                if bare_zeta {
                    return Ok(Expr::Const(Constant::Zeta(k.rem_euclid(24))));
                }
                Ok(Expr::Pow(Box::new(base), k))
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.k += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Sym('(')) => {
                self.k += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.k += 1;
                if self.eat('(') {
                    let mut args = Vec::new();
                    if !self.eat(')') {
                        loop {
                            args.push(self.expr()?);
                            if self.eat(')') {
                                break;
                            }
                            self.expect(',')?;
                        }
                    }
                    if args.is_empty() && NULLARY.contains(&name.as_str()) {
                        return Ok(Expr::Named(name));
                    }
                    if !FUNCTIONS.contains(&name.as_str()) {
                        return Err(ParseError { pos, msg: format!("unknown function '{name}'") });
                    }
                    return Ok(Expr::Call(name, args));
                }
                if name == "q" {
                    return Ok(Expr::Q);
                }
                if NULLARY.contains(&name.as_str()) {
                    return Ok(Expr::Named(name));
                }
                match name.parse::<Constant>() {
                    Ok(c) => Ok(Expr::Const(c)),
                    Err(_) => Err(ParseError { pos, msg: format!("unknown name '{name}'") }),
                }
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

const NULLARY: [&str; 3] = ["phi", "psi", "phitilde"];
const FUNCTIONS: [&str; 9] = ["j", "J", "Jbar", "g", "G", "f", "m", "subst", "twist"];

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, k: 0, end: src.len() };
    let e = p.expr()?;
    if p.k < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// evaluation

#[derive(Clone, Debug, thiserror::Error)]
pub enum EvalError {
    #[error("{0}")]
    Math(#[from] mock_theta::Error),
    #[error("{0}")]
    Type(String),
}

/// The value of a subexpression: constants and monomials stay exact until
/// they meet a series.
#[derive(Clone, Debug)]
pub enum Value {
    Scalar(Cyc),
    Mono(Mono),
    Series(Series),
}

fn type_err<T>(msg: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError::Type(msg.into()))
}

impl Value {
    fn into_series(self, n: i64) -> Series {
        match self {
            Value::Scalar(c) => Series::constant(c, n),
            Value::Mono(m) => m.to_series(n),
            Value::Series(s) => s,
        }
    }

    fn as_mono(&self, what: &str) -> Result<Mono, EvalError> {
        match self {
            Value::Scalar(c) => Ok(Monomial::new(c.clone(), 0)?),
            Value::Mono(m) => Ok(m.clone()),
            Value::Series(_) => type_err(format!("{what} must be a monomial c*q^e")),
        }
    }

    fn as_scalar(&self, what: &str) -> Result<Cyc, EvalError> {
        match self {
            Value::Scalar(c) => Ok(c.clone()),
            _ => type_err(format!("{what} must be a constant")),
        }
    }

    fn as_int(&self, what: &str) -> Result<i64, EvalError> {
        let c = self.as_scalar(what)?;
        let r = c.as_rational().filter(|r| r.is_integer());
        match r.and_then(|r| i64::try_from(r.to_integer()).ok()) {
            Some(k) => Ok(k),
            None => type_err(format!("{what} must be an integer")),
        }
    }

    /// A base given as `M`, `q^M` or `u*q^M`.
    fn as_base(&self, what: &str) -> Result<(Cyc, i64), EvalError> {
        let (u, m) = match self {
            Value::Scalar(_) => (Cyc::one(), self.as_int(what)?),
            Value::Mono(b) => (b.coeff().clone(), b.exp()),
            Value::Series(_) => return type_err(format!("{what} must be M or q^M")),
        };
        if m < 1 {
            return type_err(format!("{what} must carry a positive power of q"));
        }
        Ok((u, m))
    }
}

fn normalize(m: Mono) -> Value {
    if m.exp() == 0 {
        Value::Scalar(m.coeff().clone())
    } else {
        Value::Mono(m)
    }
}

fn add(a: Value, b: Value, n: i64, neg: bool) -> Value {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(if neg { x.sub(&y) } else { x.add(&y) }),
        (a, b) => {
            let (x, y) = (a.into_series(n), b.into_series(n));
            Value::Series(if neg { x.sub(&y) } else { x.add(&y) })
        }
    }
}

fn mul(a: Value, b: Value) -> Value {
    use Value::*;
    match (a, b) {
        (Scalar(x), Scalar(y)) => Scalar(x.mul(&y)),
        (Scalar(x), Mono(m)) | (Mono(m), Scalar(x)) => {
            if x.is_zero() {
                Scalar(x)
            } else {
                normalize(m.scale(&x).expect("nonzero"))
            }
        }
        (Mono(x), Mono(y)) => normalize(x.mul(&y)),
        (Series(s), Mono(m)) | (Mono(m), Series(s)) => Series(s.mul_mono(&m)),
        (Series(s), Scalar(x)) | (Scalar(x), Series(s)) => Series(s.scale(&x)),
        (Series(s), Series(t)) => Series(s.mul(&t)),
    }
}

fn div(a: Value, b: Value, n: i64) -> Result<Value, EvalError> {
    use Value::*;
    Ok(match b {
        Scalar(y) => {
            let yi = y.inv()?;
            mul(a, Scalar(yi))
        }
        Mono(m) => mul(a, Mono(m.inv())),
        Series(t) => Series(a.into_series(n).div(&t)?),
    })
}

fn pow(a: Value, k: i64) -> Result<Value, EvalError> {
    Ok(match a {
        Value::Scalar(c) => Value::Scalar(c.pow(k)?),
        Value::Mono(m) => normalize(m.pow(k)),
        Value::Series(s) => {
            if k >= 0 {
                Value::Series(s.pow(k)?)
            } else {
                Value::Series(s.invert()?.pow(-k)?)
            }
        }
    })
}

fn arity(name: &str, args: &[Expr], allowed: &[usize]) -> Result<(), EvalError> {
    if allowed.contains(&args.len()) {
        Ok(())
    } else {
        let want: Vec<String> = allowed.iter().map(|k| k.to_string()).collect();
        type_err(format!("{name} takes {} argument(s), got {}", want.join(" or "), args.len()))
    }
}

fn eval_at(e: &Expr, n: i64) -> Result<Value, EvalError> {
    Ok(match e {
        Expr::Int(k) => Value::Scalar(Cyc::from_scalar(BigRational::from_integer(BigInt::from(*k)))),
        Expr::Const(c) => Value::Scalar(Cyc::embed(*c)),
        Expr::Q => Value::Mono(Monomial::q_pow(1)),
        Expr::Named(s) => Value::Series(match s.as_str() {
            "phi" => phi(n),
            "psi" => psi(n),
            "phitilde" => phi_tilde(n),
            _ => return type_err(format!("unknown series '{s}'")),
        }),
        Expr::Neg(a) => mul(eval_at(a, n)?, Value::Scalar(Cyc::from_int(-1))),
        Expr::Add(a, b) => add(eval_at(a, n)?, eval_at(b, n)?, n, false),
        Expr::Sub(a, b) => add(eval_at(a, n)?, eval_at(b, n)?, n, true),
        Expr::Mul(a, b) => mul(eval_at(a, n)?, eval_at(b, n)?),
        Expr::Div(a, b) => div(eval_at(a, n)?, eval_at(b, n)?, n)?,
        Expr::Pow(a, k) => pow(eval_at(a, n)?, *k)?,
        Expr::Call(name, args) => call(name, args, n)?,
    })
}

fn call(name: &str, args: &[Expr], n: i64) -> Result<Value, EvalError> {
    let vals: Vec<Value> = args.iter().map(|a| eval_at(a, n)).collect::<Result<_, _>>()?;
    let s = |x: Series| Ok(Value::Series(x));
    match name {
        "j" => {
            arity(name, args, &[1, 2, 3])?;
            if vals.len() == 3 {
                let c = vals[0].as_scalar("j(c, e, m): c")?;
                let e = vals[1].as_int("j(c, e, m): e")?;
                let m = vals[2].as_int("j(c, e, m): m")?;
                if c.is_zero() || m < 1 {
                    return type_err("j(c, e, m) needs c != 0 and m >= 1");
                }
                return s(jtheta(c, e, m, n));
            }
            let x = vals[0].as_mono("theta argument")?;
            let (u, m) = match vals.get(1) {
                Some(b) => b.as_base("theta base")?,
                None => (Cyc::one(), 1),
            };
            s(theta_j(&ThetaSpec::with_base_unit(x, m, u), n))
        }
        "J" => {
            arity(name, args, &[1, 2])?;
            if vals.len() == 1 {
                let m = vals[0].as_int("J(m): m")?;
                if m < 1 {
                    return type_err("J(m) needs m >= 1");
                }
                return s(euler_jm(m, n));
            }
            let (a, m) = (vals[0].as_int("J(a, m): a")?, vals[1].as_int("J(a, m): m")?);
            if m < 1 {
                return type_err("J(a, m) needs m >= 1");
            }
            s(j_am(a, m, n))
        }
        "Jbar" => {
            arity(name, args, &[2])?;
            let (a, m) = (vals[0].as_int("Jbar(a, m): a")?, vals[1].as_int("Jbar(a, m): m")?);
            if m < 1 {
                return type_err("Jbar(a, m) needs m >= 1");
            }
            s(jbar_am(a, m, n))
        }
        "g" | "G" => {
            arity(name, args, &[1, 2])?;
            let x = vals[0].as_mono(&format!("{name} argument"))?;
            let m = match vals.get(1) {
                Some(b) => {
                    let (u, m) = b.as_base(&format!("{name} base"))?;
                    if !u.is_one() {
                        return type_err(format!("{name} base must be q^M"));
                    }
                    m
                }
                None => 1,
            };
            s(if name == "g" { g_mock_base(&x, m, n)? } else { g_rank_base(&x, m, n)? })
        }
        "f" => {
            arity(name, args, &[1])?;
            s(f_a(&vals[0].as_scalar("f(a): a")?, n))
        }
        "m" => {
            arity(name, args, &[3])?;
            let x = vals[0].as_mono("m(x, q^M, z): x")?;
            let (u, m) = vals[1].as_base("m(x, q^M, z): base")?;
            if !u.is_one() {
                return type_err("Appell-Lerch base must be q^M");
            }
            let z = vals[2].as_mono("m(x, q^M, z): z")?;
            s(appell_m(&AppellSpec::with_modulus(x, z, m), n)?)
        }
        "subst" => {
            arity(name, args, &[2])?;
            let k = vals[1].as_int("subst(e, k): k")?;
            if k < 1 {
                return type_err("subst(e, k) needs k >= 1");
            }
            Ok(match &vals[0] {
                Value::Scalar(c) => Value::Scalar(c.clone()),
                Value::Mono(m) => normalize(m.subst_q_power(k)),
                Value::Series(x) => Value::Series(x.subst_q_power(k)),
            })
        }
        "twist" => {
            arity(name, args, &[2])?;
            let c = vals[1].as_scalar("twist(e, c): c")?;
            if c.is_zero() {
                return type_err("twist(e, c) needs c != 0");
            }
            Ok(match &vals[0] {
                Value::Scalar(x) => Value::Scalar(x.clone()),
                Value::Mono(m) => normalize(m.twist(&c)),
                Value::Series(x) => Value::Series(x.twist(&c)),
            })
        }
        _ => type_err(format!("unknown function '{name}'")),
    }
}

/// Evaluates `e` as a series known exactly to order `n`.
pub fn eval(e: &Expr, n: i64) -> Result<Series, EvalError> {
    let mut failure = None;
    let r = to_order(n, |w| match eval_at(e, w) {
        Ok(v) => Ok(v.into_series(w)),
        Err(EvalError::Math(m)) => Err(m),
        Err(t) => {
            failure = Some(t);
            Err(mock_theta::Error::ZeroMonomial)
        }
    });
    match (r, failure) {
        (_, Some(t)) => Err(t),
        (r, None) => Ok(r?),
    }
}

/// Evaluates `e` to a monomial such as `zeta*q` or `-alpha`.
pub fn eval_mono(e: &Expr) -> Result<Mono, EvalError> {
    eval_at(e, 0)?.as_mono("sample point")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("1 + 2*q^3").unwrap();
        assert_eq!(e.to_string(), "(1 + (2 * q^3))");
        assert_eq!(parse("-q^2").unwrap().to_string(), "(-q^2)");
        assert_eq!(parse("zeta^5").unwrap(), Expr::Const(Constant::Zeta(5)));
    }

    #[test]
    fn errors_have_positions() {
        assert_eq!(parse("1 + $").unwrap_err().pos, 4);
        assert_eq!(parse("j(q").unwrap_err().pos, 3);
        assert_eq!(parse("foo").unwrap_err().pos, 0);
        assert!(parse("q^x").is_err());
    }

    #[test]
    fn psi_expands() {
        let s = eval(&parse("psi").unwrap(), 6).unwrap();
        assert_eq!(s.to_string(), "1 + q + q^3 + q^6 + O(q^7)");
    }

    #[test]
    fn vanishing_theta() {
        assert!(eval(&parse("j(1,0,1)").unwrap(), 10).unwrap().is_zero());
    }
}
