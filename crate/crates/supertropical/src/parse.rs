//! Text input formats: rationals, semifield elements, polynomials, and
//! sampling grids. All parsers consume the whole input and report failures
//! with a byte position.
//!
//! Grammars:
//!
//! * rational: `-3`, `3/4`, `-3/4` (no whitespace, denominator nonzero);
//! * bipotent element: `-inf` or a rational;
//! * supertropical element: `0`, `t<rational>`, `g<rational>`;
//! * polynomial: terms over `+ - * ^` with rational coefficients and
//!   variables `x1..xn` (aliases `x,y,z` for the first three), e.g.
//!   `x^2*y - 3/4*x + 5`;
//! * grid: comma-separated axes `<var>=<start>..<stop>:<step>`, e.g.
//!   `x=-4..1:1,y=-2..2:1/2`.

use crate::bipotent::BipotentElem;
use crate::poly::{GridAxis, GridSpec, SparsePoly};
use crate::rational::Rational;
use crate::semifield::SupertropicalElem;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

fn parse_bigint(s: &str, offset: usize) -> Result<BigInt, ParseError> {
    if s.is_empty() {
        return err(offset, "expected an integer");
    }
    s.parse::<BigInt>()
        .map_err(|_| ParseError {
            position: offset,
            message: format!("invalid integer '{s}'"),
        })
}

/// Parses `p` or `p/q` with an optional leading sign on `p`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    parse_rational_at(s, 0)
}

fn parse_rational_at(s: &str, offset: usize) -> Result<Rational, ParseError> {
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_bigint(s, offset)?)),
        Some((num, den)) => {
            let n = parse_bigint(num, offset)?;
            let d = parse_bigint(den, offset + num.len() + 1)?;
            if d == BigInt::from(0) {
                return err(offset + num.len() + 1, "denominator is zero");
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Parses `-inf` or a rational into the bipotent semifield.
pub fn parse_bipotent(s: &str) -> Result<BipotentElem, ParseError> {
    if s == "-inf" {
        return Ok(BipotentElem::Zero);
    }
    Ok(BipotentElem::Value(parse_rational(s)?))
}

/// Parses the element grammar `0` | `t<rational>` | `g<rational>`.
pub fn parse_supertropical(s: &str) -> Result<SupertropicalElem, ParseError> {
    if s == "0" {
        return Ok(SupertropicalElem::Zero);
    }
    if let Some(rest) = s.strip_prefix('t') {
        return Ok(SupertropicalElem::Tangible(parse_rational_at(rest, 1)?));
    }
    if let Some(rest) = s.strip_prefix('g') {
        return Ok(SupertropicalElem::Ghost(parse_rational_at(rest, 1)?));
    }
    err(0, format!("expected '0', 't<rational>', or 'g<rational>', found '{s}'"))
}

/// Parses a comma-separated list of rationals, e.g. `2,-1/3`.
pub fn parse_rational_list(input: &str) -> Result<Vec<Rational>, ParseError> {
    split_with_offsets(input, ',')
        .into_iter()
        .map(|(position, part)| parse_rational_at(part, position))
        .collect()
}

/// Parses a one-shot arithmetic expression over supertropical elements:
/// `expr := term ('+' term)*`, `term := atom ('*' atom)*`, `atom :=
/// element | '(' expr ')'`. A minus sign only occurs inside element
/// literals; the semifield has no subtraction.
pub fn parse_supertropical_expr(input: &str) -> Result<SupertropicalElem, ParseError> {
    let mut cursor = ExprCursor { input, pos: 0 };
    let value = cursor.expr()?;
    cursor.skip_ws();
    if cursor.pos < input.len() {
        return err(cursor.pos, "unexpected trailing input");
    }
    Ok(value)
}

struct ExprCursor<'a> {
    input: &'a str,
    pos: usize,
}

impl ExprCursor<'_> {
    fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<SupertropicalElem, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('+') {
                self.pos += 1;
                acc = &acc + &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SupertropicalElem, ParseError> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                acc = &acc * &self.atom()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<SupertropicalElem, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let value = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(value)
            }
            Some('0') | Some('t') | Some('g') => {
                let start = self.pos;
                self.pos += 1;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_digit() || c == '/' || c == '-')
                {
                    self.pos += 1;
                }
                parse_supertropical(&self.input[start..self.pos]).map_err(|e| ParseError {
                    position: start + e.position,
                    message: e.message,
                })
            }
            Some(c) => err(
                self.pos,
                format!("expected an element or '(', found '{c}'"),
            ),
            None => err(self.pos, "expected an element or '('"),
        }
    }
}

/// Resolves a variable name to its 1-based index: `x,y,z` alias `x1,x2,x3`.
fn var_index(name: &str, position: usize) -> Result<usize, ParseError> {
    match name {
        "x" => return Ok(1),
        "y" => return Ok(2),
        "z" => return Ok(3),
        _ => {}
    }
    if let Some(digits) = name.strip_prefix('x') {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            let k: usize = digits.parse().map_err(|_| ParseError {
                position,
                message: format!("variable index out of range in '{name}'"),
            })?;
            if k >= 1 {
                return Ok(k);
            }
        }
    }
    err(
        position,
        format!("unknown variable '{name}'; use x1..xn or the aliases x,y,z"),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Int(n) => format!("number '{n}'"),
            Token::Ident(s) => format!("identifier '{s}'"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Caret => "'^'".into(),
            Token::Slash => "'/'".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' => i += 1,
            b'+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            b'-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            b'*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            b'^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            b'/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                tokens.push((start, Token::Int(parse_bigint(&input[start..i], start)?)));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                tokens.push((start, Token::Ident(input[start..i].to_string())));
            }
            _ => {
                let ch = input[i..].chars().next().expect("in bounds");
                return err(i, format!("unexpected character '{ch}'"));
            }
        }
    }
    Ok(tokens)
}

struct PolyParser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end: usize,
}

impl PolyParser {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.cursor)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    /// number := int ['/' int]; the sign is handled by the term parser.
    fn number(&mut self, first: BigInt) -> Result<Rational, ParseError> {
        if matches!(self.peek(), Some((_, Token::Slash))) {
            self.next();
            match self.next() {
                Some((_, Token::Int(d))) if d != BigInt::from(0) => {
                    Ok(Rational::new(first, d))
                }
                Some((p, Token::Int(_))) => err(p, "denominator is zero"),
                other => err(
                    other.map_or(self.end, |(p, _)| p),
                    "expected a denominator after '/'",
                ),
            }
        } else {
            Ok(Rational::from_integer(first))
        }
    }

    /// factor := number | var ['^' int]. Returns either a coefficient or a
    /// (variable index, exponent) pair.
    fn factor(&mut self) -> Result<FactorValue, ParseError> {
        match self.next() {
            Some((_, Token::Int(n))) => Ok(FactorValue::Coefficient(self.number(n)?)),
            Some((p, Token::Ident(name))) => {
                let var = var_index(&name, p)?;
                let mut exp: u32 = 1;
                if matches!(self.peek(), Some((_, Token::Caret))) {
                    self.next();
                    match self.next() {
                        Some((p2, Token::Int(k))) => {
                            exp = u32::try_from(&k).map_err(|_| ParseError {
                                position: p2,
                                message: format!("exponent {k} out of range"),
                            })?;
                        }
                        other => {
                            return err(
                                other.map_or(self.end, |(p2, _)| p2),
                                "expected a nonnegative integer exponent after '^'",
                            )
                        }
                    }
                }
                Ok(FactorValue::Power(var, exp))
            }
            Some((p, tok)) => err(p, format!("expected a factor, found {}", tok.describe())),
            None => err(self.end, "expected a factor"),
        }
    }

    /// term := factor ('*' factor)*; accumulates coefficient and exponents.
    fn term(&mut self, negative: bool) -> Result<(Rational, Vec<(usize, u32)>), ParseError> {
        let mut coeff = Rational::from_integer(if negative { -1 } else { 1 }.into());
        let mut powers: Vec<(usize, u32)> = Vec::new();
        loop {
            match self.factor()? {
                FactorValue::Coefficient(c) => coeff *= c,
                FactorValue::Power(var, exp) => powers.push((var, exp)),
            }
            if matches!(self.peek(), Some((_, Token::Star))) {
                self.next();
            } else {
                break;
            }
        }
        Ok((coeff, powers))
    }
}

enum FactorValue {
    Coefficient(Rational),
    Power(usize, u32),
}

/// Parses the polynomial grammar into a sparse rational polynomial. The
/// variable count is the highest variable index that occurs (zero for a
/// constant input).
pub fn parse_polynomial(input: &str) -> Result<SparsePoly<Rational>, ParseError> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return err(input.len(), "empty polynomial");
    }
    let mut parser = PolyParser {
        tokens,
        cursor: 0,
        end: input.len(),
    };
    let mut terms: Vec<(Rational, Vec<(usize, u32)>)> = Vec::new();
    let mut negative = match parser.peek() {
        Some((_, Token::Minus)) => {
            parser.next();
            true
        }
        Some((_, Token::Plus)) => {
            parser.next();
            false
        }
        _ => false,
    };
    loop {
        terms.push(parser.term(negative)?);
        match parser.next() {
            None => break,
            Some((_, Token::Plus)) => negative = false,
            Some((_, Token::Minus)) => negative = true,
            Some((p, tok)) => {
                return err(
                    p,
                    format!("expected '+', '-', or end of input, found {}", tok.describe()),
                )
            }
        }
    }
    let n = terms
        .iter()
        .flat_map(|(_, powers)| powers.iter().map(|(var, _)| *var))
        .max()
        .unwrap_or(0);
    let mut poly = SparsePoly::zero(n);
    for (coeff, powers) in terms {
        let mut exp = vec![0u32; n];
        for (var, k) in powers {
            exp[var - 1] += k;
        }
        poly.add_term(exp, coeff);
    }
    Ok(poly)
}

/// Parses a grid spec like `x=-4..1:1,y=-2..2:1/2`. Axes must be listed in
/// variable order (`x` before `y` before `z`) starting at the first
/// variable, one axis per variable.
pub fn parse_grid(input: &str) -> Result<GridSpec, ParseError> {
    let mut axes = Vec::new();
    let mut offset = 0;
    for (position, segment) in split_with_offsets(input, ',') {
        offset = position;
        let (name, rest) = segment
            .split_once('=')
            .ok_or(ParseError {
                position: offset,
                message: format!("expected '<var>=<start>..<stop>:<step>', found '{segment}'"),
            })?;
        let index = var_index(name, offset)?;
        if index != axes.len() + 1 {
            return err(
                offset,
                format!(
                    "axis for variable {} out of order; list axes as x1,x2,… (x,y,z) starting at x1",
                    name
                ),
            );
        }
        let range_offset = offset + name.len() + 1;
        let (range, step_text) = rest.split_once(':').ok_or(ParseError {
            position: range_offset,
            message: "missing ':<step>'".into(),
        })?;
        let (start_text, stop_text) = range.split_once("..").ok_or(ParseError {
            position: range_offset,
            message: "missing '..' between start and stop".into(),
        })?;
        let start = parse_rational_at(start_text, range_offset)?;
        let stop = parse_rational_at(stop_text, range_offset + start_text.len() + 2)?;
        let step_offset = range_offset + range.len() + 1;
        let step = parse_rational_at(step_text, step_offset)?;
        let axis = GridAxis::new(name, start, stop, step).ok_or(ParseError {
            position: offset,
            message: format!("degenerate axis '{segment}': need step > 0 and start <= stop"),
        })?;
        axes.push(axis);
    }
    if axes.is_empty() {
        return err(offset, "empty grid spec");
    }
    Ok(GridSpec { axes })
}

fn split_with_offsets(input: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in input.char_indices() {
        if c == sep {
            out.push((start, &input[start..i]));
            start = i + 1;
        }
    }
    out.push((start, &input[start..]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
        assert_eq!(parse_rational("1/0").unwrap_err().position, 2);
    }

    #[test]
    fn bipotent_elements() {
        assert_eq!(parse_bipotent("-inf").unwrap(), BipotentElem::Zero);
        assert_eq!(parse_bipotent("-2").unwrap(), BipotentElem::from_int(-2));
        assert!(parse_bipotent("inf").is_err());
    }

    #[test]
    fn supertropical_elements() {
        assert_eq!(
            parse_supertropical("t3/2").unwrap(),
            SupertropicalElem::tangible(rat(3, 2))
        );
        assert_eq!(
            parse_supertropical("g-1").unwrap(),
            SupertropicalElem::ghost_int(-1)
        );
        assert_eq!(parse_supertropical("0").unwrap(), SupertropicalElem::Zero);
        assert!(parse_supertropical("h1").is_err());
        assert!(parse_supertropical("t").is_err());
        assert_eq!(parse_supertropical("tx").unwrap_err().position, 1);
    }

    #[test]
    fn univariate_polynomial() {
        let f = parse_polynomial("x^2 - 6*x + 8").unwrap();
        assert_eq!(f.arity(), 1);
        assert_eq!(f.coefficient(&[2]), Some(&int(1)));
        assert_eq!(f.coefficient(&[1]), Some(&int(-6)));
        assert_eq!(f.coefficient(&[0]), Some(&int(8)));
        assert_eq!(f.eval(&[int(2)]).unwrap(), int(0));
    }

    #[test]
    fn multivariate_polynomial() {
        let f = parse_polynomial("x^2*y - 3/4*x + 5").unwrap();
        assert_eq!(f.arity(), 2);
        assert_eq!(f.coefficient(&[2, 1]), Some(&int(1)));
        assert_eq!(f.coefficient(&[1, 0]), Some(&rat(-3, 4)));
        assert_eq!(f.coefficient(&[0, 0]), Some(&int(5)));
        let g = parse_polynomial("x1^2*x2 - 3/4*x1 + 5").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn terms_merge_and_cancel() {
        let f = parse_polynomial("x + x").unwrap();
        assert_eq!(f.coefficient(&[1]), Some(&int(2)));
        let g = parse_polynomial("x - x + 1").unwrap();
        assert_eq!(g.num_terms(), 1);
        let h = parse_polynomial("2*x^2*x").unwrap();
        assert_eq!(h.coefficient(&[3]), Some(&int(2)));
    }

    #[test]
    fn leading_sign_and_constants() {
        let f = parse_polynomial("-x + 2").unwrap();
        assert_eq!(f.coefficient(&[1]), Some(&int(-1)));
        let c = parse_polynomial("7/2").unwrap();
        assert_eq!(c.arity(), 0);
        assert_eq!(c.eval(&[]).unwrap(), rat(7, 2));
    }

    #[test]
    fn polynomial_errors_carry_positions() {
        assert_eq!(parse_polynomial("x +").unwrap_err().position, 3);
        assert_eq!(parse_polynomial("x ^ y").unwrap_err().position, 4);
        assert_eq!(parse_polynomial("w + 1").unwrap_err().position, 0);
        assert_eq!(parse_polynomial("x ? 1").unwrap_err().position, 2);
        assert_eq!(parse_polynomial("x 3").unwrap_err().position, 2);
        assert!(parse_polynomial("").is_err());
    }

    #[test]
    fn grids() {
        let spec = parse_grid("x=-4..1:1,y=-2..2:1/2").unwrap();
        assert_eq!(spec.axes.len(), 2);
        assert_eq!(spec.axes[0].start, int(-4));
        assert_eq!(spec.axes[0].stop, int(1));
        assert_eq!(spec.axes[1].step, rat(1, 2));
        assert_eq!(spec.axes[0].points().len(), 6);
        assert_eq!(spec.axes[1].points().len(), 9);
    }

    #[test]
    fn grid_errors() {
        assert!(parse_grid("").is_err());
        assert!(parse_grid("x=1..0:1").is_err());
        assert!(parse_grid("x=0..1:0").is_err());
        assert!(parse_grid("x=0..1").is_err());
        assert!(parse_grid("y=0..1:1").is_err());
        assert!(parse_grid("x=0..1:1,z=0..1:1").is_err());
        let err = parse_grid("x=0..1:1,y=2..1:1").unwrap_err();
        assert_eq!(err.position, 9);
    }

    #[test]
    fn rational_lists() {
        assert_eq!(parse_rational_list("2").unwrap(), vec![int(2)]);
        assert_eq!(
            parse_rational_list("2,-1/3").unwrap(),
            vec![int(2), rat(-1, 3)]
        );
        assert_eq!(parse_rational_list("2,,3").unwrap_err().position, 2);
    }

    #[test]
    fn element_expressions() {
        let eval = |s: &str| parse_supertropical_expr(s).unwrap();
        assert_eq!(eval("t2 + t2"), SupertropicalElem::ghost_int(2));
        assert_eq!(eval("t2 + t3"), SupertropicalElem::tangible_int(3));
        assert_eq!(eval("g5 + t5"), SupertropicalElem::ghost_int(5));
        assert_eq!(eval("t2 * t3"), SupertropicalElem::tangible_int(5));
        assert_eq!(eval("t1 * (t2 + t2)"), SupertropicalElem::ghost_int(3));
        assert_eq!(eval("0 + t-1/2"), SupertropicalElem::tangible(rat(-1, 2)));
        assert_eq!(eval("0 * g7"), SupertropicalElem::Zero);
        assert_eq!(eval("(t1)"), SupertropicalElem::tangible_int(1));
    }

    #[test]
    fn element_expression_errors() {
        assert_eq!(parse_supertropical_expr("").unwrap_err().position, 0);
        assert_eq!(parse_supertropical_expr("t2 +").unwrap_err().position, 4);
        assert_eq!(parse_supertropical_expr("t2 t3").unwrap_err().position, 3);
        assert_eq!(parse_supertropical_expr("(t2").unwrap_err().position, 3);
        assert_eq!(parse_supertropical_expr("t2 - t3").unwrap_err().position, 3);
        assert_eq!(parse_supertropical_expr("h2").unwrap_err().position, 0);
        assert_eq!(parse_supertropical_expr("t2 + 03").unwrap_err().position, 5);
    }
}
