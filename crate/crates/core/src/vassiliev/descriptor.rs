//! A small term language naming numerical knot invariants.
//!
//! Leaves select a polynomial family, a derivative order, and an evaluation
//! point; `+`, `*`, and `scale` combine them. The text form is what the
//! command line and the report types carry, and parsing is the inverse of
//! display for every descriptor the parser can produce.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num::BigRational;
use serde::de::Error as _;
use std::fmt;
use std::str::FromStr;

/// Symbolic name for a scalar-valued knot invariant.
///
/// `ConwayCoeff(k)` is the coefficient of z^k in the Conway polynomial.
/// The `*Deriv` leaves differentiate a one-variable polynomial `order`
/// times and evaluate at `at`. `HomflyDeriv` takes mixed partials of the
/// two-variable polynomial, and the `*CoeffDeriv` leaves first extract the
/// coefficient of the k-th power of the second variable, leaving a
/// one-variable polynomial in the framing variable.
#[derive(Debug, Clone, PartialEq)]
pub enum InvariantDescriptor {
    Const(Scalar),
    ConwayCoeff(u32),
    JonesDeriv {
        order: u32,
        at: Scalar,
    },
    AlexanderDeriv {
        order: u32,
        at: Scalar,
    },
    ConwayDeriv {
        order: u32,
        at: Scalar,
    },
    QDeriv {
        order: u32,
        at: Scalar,
    },
    HomflyDeriv {
        a_order: u32,
        z_order: u32,
        at_a: Scalar,
        at_z: Scalar,
    },
    /// `coeff` is the z-exponent itself, so `HomflyCoeffDeriv { coeff: 4, .. }`
    /// differentiates the polynomial multiplying z^4.
    HomflyCoeffDeriv {
        coeff: u32,
        order: u32,
        at: Scalar,
    },
    KauffmanCoeffDeriv {
        coeff: u32,
        order: u32,
        at: Scalar,
    },
    Sum(Vec<InvariantDescriptor>),
    Product(Vec<InvariantDescriptor>),
    Scale(Scalar, Box<InvariantDescriptor>),
}

impl InvariantDescriptor {
    /// Convenience for the ubiquitous second Conway coefficient.
    pub fn a2() -> Self {
        InvariantDescriptor::ConwayCoeff(2)
    }

    pub fn a4() -> Self {
        InvariantDescriptor::ConwayCoeff(4)
    }
}

impl fmt::Display for InvariantDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InvariantDescriptor::*;
        match self {
            Const(c) => write!(f, "{c}"),
            ConwayCoeff(2) => write!(f, "a2"),
            ConwayCoeff(4) => write!(f, "a4"),
            ConwayCoeff(k) => write!(f, "conway_coeff({k})"),
            JonesDeriv { order, at } => write!(f, "jones_deriv({order}; {at})"),
            AlexanderDeriv { order, at } => write!(f, "alexander_deriv({order}; {at})"),
            ConwayDeriv { order, at } => write!(f, "conway_deriv({order}; {at})"),
            QDeriv { order, at } => write!(f, "q_deriv({order}; {at})"),
            HomflyDeriv {
                a_order,
                z_order,
                at_a,
                at_z,
            } => write!(f, "homfly_deriv({a_order},{z_order}; {at_a},{at_z})"),
            HomflyCoeffDeriv { coeff, order, at } => {
                write!(f, "homfly_coeff_deriv({coeff},{order}; {at})")
            }
            KauffmanCoeffDeriv { coeff, order, at } => {
                write!(f, "kauffman_coeff_deriv({coeff},{order}; {at})")
            }
            Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    // Sums bind looser than products.
                    if matches!(p, Sum(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            Scale(c, inner) => write!(f, "scale({c}, {inner})"),
        }
    }
}

impl FromStr for InvariantDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_descriptor(s)
    }
}

impl serde::Serialize for InvariantDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for InvariantDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_descriptor(&text).map_err(D::Error::custom)
    }
}

/// Parse the textual descriptor grammar.
///
/// ```text
/// descriptor := product ( "+" product )*
/// product    := factor ( "*" factor )*
/// factor     := leaf | scalar | "scale" "(" scalar "," descriptor ")"
///             | "(" descriptor ")"
/// leaf       := "a2" | "a4"
///             | "conway_coeff" "(" uint ")"
///             | "jones_deriv" "(" uint ";" scalar ")"        (likewise
///               alexander_deriv, conway_deriv, q_deriv)
///             | "homfly_deriv" "(" uint "," uint ";" scalar "," scalar ")"
///             | "homfly_coeff_deriv" "(" uint "," uint ";" scalar ")"
///             | "kauffman_coeff_deriv" "(" uint "," uint ";" scalar ")"
/// ```
///
/// Scalars are rationals `p/q`, the imaginary unit `I`, decimal floats
/// (approximate), `sqrtN` and `sqrt-N` (approximate), combined with `+`,
/// `-`, `*`. A literal complex combination such as `1/2+3*I` is folded
/// into a single constant at parse time.
pub fn parse_descriptor(src: &str) -> Result<InvariantDescriptor> {
    let mut cur = Cursor::new(src);
    let d = parse_sum(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(d)
}

/// Parse a complete scalar expression: rationals, `I`, floats, `sqrtN`,
/// `sqrt-N`, combined with `+`, `-`, `*` and parentheses. Used for
/// evaluation points given on the command line.
pub fn parse_scalar_expr(src: &str) -> Result<Scalar> {
    let mut cur = Cursor::new(src);
    let v = scalar_expr(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input in scalar"));
    }
    Ok(v)
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Consume `c` if it is the next non-space character.
    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, context: &str) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}' {context}")))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    /// Read an identifier ([A-Za-z_][A-Za-z0-9_]*), if present.
    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut end = 0;
        for (i, c) in rest.char_indices() {
            let ok = if i == 0 {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_'
            };
            if !ok {
                break;
            }
            end = i + c.len_utf8();
        }
        if end == 0 {
            return None;
        }
        let word = &rest[..end];
        self.pos += end;
        Some(word)
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let rest = self.rest();
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.error("expected a nonnegative integer"));
        }
        self.pos += digits.len();
        digits
            .parse::<u32>()
            .map_err(|_| self.error("integer out of range"))
    }

    fn digits(&mut self) -> Option<&'a str> {
        let rest = self.rest();
        let end = rest
            .char_indices()
            .take_while(|(_, c)| c.is_ascii_digit())
            .map(|(i, c)| i + c.len_utf8())
            .last()?;
        let out = &rest[..end];
        self.pos += end;
        Some(out)
    }
}

fn parse_sum(cur: &mut Cursor) -> Result<InvariantDescriptor> {
    let mut parts = vec![parse_product(cur)?];
    while cur.eat('+') {
        parts.push(parse_product(cur)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        InvariantDescriptor::Sum(parts)
    })
}

fn parse_product(cur: &mut Cursor) -> Result<InvariantDescriptor> {
    let mut parts = vec![parse_factor(cur)?];
    while cur.eat('*') {
        parts.push(parse_factor(cur)?);
    }
    Ok(if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        InvariantDescriptor::Product(parts)
    })
}

fn parse_factor(cur: &mut Cursor) -> Result<InvariantDescriptor> {
    cur.skip_ws();
    if cur.eat('(') {
        let inner = parse_sum(cur)?;
        cur.expect(')', "to close the group")?;
        return Ok(inner);
    }
    match cur.peek() {
        Some(c) if c.is_ascii_digit() || c == '-' || c == '.' => {
            return Ok(InvariantDescriptor::Const(scalar_expr(cur)?));
        }
        _ => {}
    }
    let start = cur.pos;
    let Some(word) = cur.ident() else {
        return Err(cur.error("expected an invariant, a scalar, or '('"));
    };
    match word {
        "a2" => Ok(InvariantDescriptor::ConwayCoeff(2)),
        "a4" => Ok(InvariantDescriptor::ConwayCoeff(4)),
        "I" => Ok(InvariantDescriptor::Const(Scalar::i())),
        // A scalar expression may begin with sqrt (the digits are part of
        // the same word); back up and let the scalar parser handle it.
        w if w.starts_with("sqrt") => {
            cur.pos = start;
            Ok(InvariantDescriptor::Const(scalar_expr(cur)?))
        }
        "conway_coeff" => {
            cur.expect('(', "after conway_coeff")?;
            let k = cur.uint()?;
            cur.expect(')', "to close conway_coeff")?;
            Ok(InvariantDescriptor::ConwayCoeff(k))
        }
        "jones_deriv" | "alexander_deriv" | "conway_deriv" | "q_deriv" => {
            cur.expect('(', "after the invariant name")?;
            let order = cur.uint()?;
            cur.expect(';', "between order and evaluation point")?;
            let at = scalar_expr(cur)?;
            cur.expect(')', "to close the argument list")?;
            Ok(match word {
                "jones_deriv" => InvariantDescriptor::JonesDeriv { order, at },
                "alexander_deriv" => InvariantDescriptor::AlexanderDeriv { order, at },
                "conway_deriv" => InvariantDescriptor::ConwayDeriv { order, at },
                _ => InvariantDescriptor::QDeriv { order, at },
            })
        }
        "homfly_deriv" => {
            cur.expect('(', "after homfly_deriv")?;
            let a_order = cur.uint()?;
            cur.expect(',', "between the two orders")?;
            let z_order = cur.uint()?;
            cur.expect(';', "between orders and evaluation point")?;
            let at_a = scalar_expr(cur)?;
            cur.expect(',', "between the two coordinates")?;
            let at_z = scalar_expr(cur)?;
            cur.expect(')', "to close homfly_deriv")?;
            Ok(InvariantDescriptor::HomflyDeriv {
                a_order,
                z_order,
                at_a,
                at_z,
            })
        }
        "homfly_coeff_deriv" | "kauffman_coeff_deriv" => {
            cur.expect('(', "after the invariant name")?;
            let coeff = cur.uint()?;
            cur.expect(',', "between coefficient index and order")?;
            let order = cur.uint()?;
            cur.expect(';', "between orders and evaluation point")?;
            let at = scalar_expr(cur)?;
            cur.expect(')', "to close the argument list")?;
            Ok(if word == "homfly_coeff_deriv" {
                InvariantDescriptor::HomflyCoeffDeriv { coeff, order, at }
            } else {
                InvariantDescriptor::KauffmanCoeffDeriv { coeff, order, at }
            })
        }
        "scale" => {
            cur.expect('(', "after scale")?;
            let c = scalar_expr(cur)?;
            cur.expect(',', "between scalar and descriptor in scale")?;
            let inner = parse_sum(cur)?;
            cur.expect(')', "to close scale")?;
            Ok(InvariantDescriptor::Scale(c, Box::new(inner)))
        }
        other => {
            cur.pos = start;
            Err(cur.error(&format!("unknown invariant '{other}'")))
        }
    }
}

// Scalar expressions. `+` and `*` are tried greedily and rolled back when
// the right operand is not a scalar, so that descriptor-level operators
// still work: in "1/2 + a2" the "+" belongs to the descriptor, in
// "1/2+3*I" it belongs to the constant.

fn scalar_expr(cur: &mut Cursor) -> Result<Scalar> {
    let mut acc = scalar_term(cur)?;
    loop {
        cur.skip_ws();
        let save = cur.pos;
        let op = match cur.peek() {
            Some('+') => '+',
            Some('-') => '-',
            _ => break,
        };
        cur.pos += 1;
        match scalar_term(cur) {
            Ok(rhs) => {
                acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
            }
            Err(_) => {
                cur.pos = save;
                break;
            }
        }
    }
    Ok(acc)
}

fn scalar_term(cur: &mut Cursor) -> Result<Scalar> {
    let mut acc = scalar_atom(cur)?;
    loop {
        cur.skip_ws();
        let save = cur.pos;
        if cur.peek() != Some('*') {
            break;
        }
        cur.pos += 1;
        match scalar_atom(cur) {
            Ok(rhs) => acc = &acc * &rhs,
            Err(_) => {
                cur.pos = save;
                break;
            }
        }
    }
    Ok(acc)
}

fn scalar_atom(cur: &mut Cursor) -> Result<Scalar> {
    cur.skip_ws();
    if cur.eat('-') {
        return Ok(-scalar_atom(cur)?);
    }
    if cur.eat('(') {
        let inner = scalar_expr(cur)?;
        cur.expect(')', "to close the scalar group")?;
        return Ok(inner);
    }
    match cur.peek() {
        Some('I') => {
            let save = cur.pos;
            // Reject identifiers that merely start with I.
            if let Some(word) = cur.ident() {
                if word == "I" {
                    return Ok(Scalar::i());
                }
            }
            cur.pos = save;
            Err(cur.error("expected a scalar"))
        }
        Some('s') => {
            if !cur.rest().starts_with("sqrt") {
                return Err(cur.error("expected a scalar"));
            }
            cur.pos += 4;
            // sqrtN and sqrt-N are approximate named constants; a negative
            // argument lands on the positive imaginary axis.
            let neg = cur.peek() == Some('-');
            if neg {
                cur.pos += 1;
            }
            let Some(digits) = cur.digits() else {
                return Err(cur.error("sqrt needs an integer argument"));
            };
            let n: f64 = digits
                .parse()
                .map_err(|_| cur.error("sqrt argument out of range"))?;
            let root = if neg {
                Scalar::approx(0.0, n.sqrt())
            } else {
                Scalar::approx(n.sqrt(), 0.0)
            };
            // An attached integer divisor, as in sqrt2/2.
            if cur.peek() == Some('/') {
                let save = cur.pos;
                cur.pos += 1;
                match cur.digits() {
                    Some(d) => {
                        let den: f64 = d
                            .parse()
                            .map_err(|_| cur.error("divisor out of range"))?;
                        if den == 0.0 {
                            return Err(cur.error("division by zero"));
                        }
                        return Ok(&root * &Scalar::approx(1.0 / den, 0.0));
                    }
                    None => cur.pos = save,
                }
            }
            Ok(root)
        }
        Some(c) if c.is_ascii_digit() || c == '.' => scalar_number(cur),
        _ => Err(cur.error("expected a scalar")),
    }
}

/// A numeric literal: `p`, `p/q`, a decimal float, any of them with a
/// directly attached `i` suffix for an approximate imaginary value.
fn scalar_number(cur: &mut Cursor) -> Result<Scalar> {
    let int_part = cur.digits().unwrap_or("");
    let mut is_float = false;
    let mut text = String::from(int_part);
    if cur.peek() == Some('.') {
        cur.pos += 1;
        let frac = cur
            .digits()
            .ok_or_else(|| cur.error("expected digits after the decimal point"))?;
        is_float = true;
        text = format!("{int_part}.{frac}");
    }
    if text.is_empty() {
        return Err(cur.error("expected a number"));
    }
    if is_float {
        let x: f64 = text
            .parse()
            .map_err(|_| cur.error("float literal out of range"))?;
        return Ok(finish_number(cur, Scalar::approx(x, 0.0), x));
    }
    let numer: num::BigInt = text.parse().expect("digit string");
    // A slash makes it a rational, as long as a denominator follows. The
    // rollback keeps "jones_deriv(0; 1)/..." style errors local.
    let save = cur.pos;
    if cur.peek() == Some('/') {
        cur.pos += 1;
        if let Some(den) = cur.digits() {
            let denom: num::BigInt = den.parse().expect("digit string");
            if denom == num::BigInt::from(0) {
                return Err(cur.error("zero denominator"));
            }
            let value = Scalar::from_rational(BigRational::new(numer, denom));
            let as_float = rational_to_f64(&value);
            return Ok(finish_number(cur, value, as_float));
        }
        cur.pos = save;
    }
    let value = Scalar::from_rational(BigRational::from(numer));
    let as_float = rational_to_f64(&value);
    Ok(finish_number(cur, value, as_float))
}

/// Attach a trailing `i` (no whitespace in between) to make the value
/// imaginary. Approximate printing uses this form.
fn finish_number(cur: &mut Cursor, value: Scalar, as_float: f64) -> Scalar {
    let rest = cur.rest();
    if rest.starts_with('i') {
        let after = rest[1..].chars().next();
        let continues = after.is_some_and(|c| c.is_ascii_alphanumeric() || c == '_');
        if !continues {
            cur.pos += 1;
            return Scalar::approx(0.0, as_float);
        }
    }
    value
}

fn rational_to_f64(s: &Scalar) -> f64 {
    s.to_complex().re
}
