//! Homogeneous polynomial surfaces in projective 3-space and the oriented
//! distributions they cut out of the quadric Q.
//!
//! Restricting the surface polynomial to a twistor fiber gives a binary form
//! whose roots are the intersections of the surface with that fiber; where
//! the intersection is a single point the surface selects one unit tangent
//! direction, which is the value of the distribution.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly;
use crate::proj::{fiber_basis, ProjPoint, S3Point};
use crate::quat::CVector4;
use crate::tangent::{line_to_tangent, TangentField, UnitTangent};
use crate::tol::Tolerances;

/// One monomial of a surface polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    /// Exponents of the four homogeneous coordinates.
    pub exps: [u32; 4],
}

/// A homogeneous polynomial in the four homogeneous coordinates, given as a
/// sparse term list. Parsed from expressions like `z1^2*z4 - z2*z3^2` or
/// `(2+1i)*z1*z4^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSpec {
    terms: Vec<Term>,
    degree: u32,
}

impl SurfaceSpec {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        let terms: Vec<Term> = terms
            .into_iter()
            .filter(|t| t.coeff.norm() > 0.0)
            .collect();
        if terms.is_empty() {
            return Err(Error::Parse("surface polynomial is identically zero".into()));
        }
        let degree = terms[0].exps.iter().sum();
        for t in &terms {
            let d: u32 = t.exps.iter().sum();
            if d != degree {
                return Err(Error::Parse(format!(
                    "polynomial is not homogeneous: found degrees {degree} and {d}"
                )));
            }
        }
        Ok(SurfaceSpec { terms, degree })
    }

    pub fn parse(input: &str) -> Result<Self> {
        parse_surface(input)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn eval(&self, z: &CVector4) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for t in &self.terms {
            let mut v = t.coeff;
            for (k, &e) in t.exps.iter().enumerate() {
                for _ in 0..e {
                    v *= z.0[k];
                }
            }
            acc += v;
        }
        acc
    }

    /// Restriction to the twistor fiber over `x` as a polynomial in the
    /// affine fiber coordinate `t` (the point is `[t·v + vj]`), ascending
    /// coefficients, nominal degree equal to the surface degree.
    pub fn fiber_form(&self, v: CVector4, vj: CVector4) -> Vec<Complex64> {
        let mut acc = vec![Complex64::ZERO];
        for t in &self.terms {
            let mut term_poly = vec![t.coeff];
            for (k, &e) in t.exps.iter().enumerate() {
                let linear = [vj.0[k], v.0[k]];
                for _ in 0..e {
                    term_poly = poly::mul(&term_poly, &linear);
                }
            }
            if term_poly.len() > acc.len() {
                acc.resize(term_poly.len(), Complex64::ZERO);
            }
            for (a, b) in acc.iter_mut().zip(term_poly.iter()) {
                *a += b;
            }
        }
        acc
    }
}

/// The partial unit tangent field cut out of Q by a surface.
pub struct SurfaceField {
    spec: SurfaceSpec,
}

impl SurfaceField {
    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }
}

impl TangentField for SurfaceField {
    fn eval(&self, x: &S3Point) -> Result<UnitTangent> {
        let (v, vj) = fiber_basis(x);
        let form = self.spec.fiber_form(v, vj);
        let scale = form.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        if scale < 1e-13 {
            return Err(Error::RootFindingFailed(
                "surface contains the whole twistor fiber".into(),
            ));
        }
        let d = self.spec.degree() as usize;
        let roots = poly::roots_cp1(&form, d, 1e-10)?;
        let clusters = poly::cluster_cp1(&roots, Tolerances::global().root_cluster);
        if clusters.len() != 1 {
            let q = x.quaternion();
            return Err(Error::MultiValued(q.w, q.x, q.y, q.z, clusters.len()));
        }
        let root = clusters[0].0;
        let rep = if root.is_infinite(1e-12) {
            v
        } else {
            v.scale(root.z / root.w).add(vj)
        };
        line_to_tangent(&ProjPoint::new(rep)?)
    }
}

/// Wraps a surface as a tangent field on the sphere (partial: evaluation
/// fails where the surface meets a fiber more than once).
pub fn surface_distribution(spec: SurfaceSpec) -> SurfaceField {
    SurfaceField { spec }
}

// --- parser ---------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Var(usize),
    Number(f64),
    Imag,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0;
    while pos < chars.len() {
        let ch = chars[pos];
        match ch {
            ' ' | '\t' => pos += 1,
            '+' => {
                tokens.push(Token::Plus);
                pos += 1;
            }
            '-' | '\u{2212}' => {
                tokens.push(Token::Minus);
                pos += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                pos += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                pos += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                pos += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                pos += 1;
            }
            'z' | 'Z' => {
                pos += 1;
                let idx = chars
                    .get(pos)
                    .and_then(|c| c.to_digit(10))
                    .filter(|&d| (1..=4).contains(&d))
                    .ok_or_else(|| {
                        Error::Parse("expected a coordinate index 1-4 after 'z'".into())
                    })?;
                tokens.push(Token::Var(idx as usize - 1));
                pos += 1;
            }
            'i' => {
                tokens.push(Token::Imag);
                pos += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '.') {
                    pos += 1;
                }
                let s: String = chars[start..pos].iter().collect();
                let val = s
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number '{s}'")))?;
                tokens.push(Token::Number(val));
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(found) if found == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    /// number with optional leading sign
    fn signed_number(&mut self) -> Result<f64> {
        let mut sign = 1.0;
        loop {
            match self.peek() {
                Some(Token::Minus) => {
                    sign = -sign;
                    self.pos += 1;
                }
                Some(Token::Plus) => self.pos += 1,
                _ => break,
            }
        }
        match self.next() {
            Some(Token::Number(v)) => Ok(sign * v),
            other => Err(Error::Parse(format!("expected a number, found {other:?}"))),
        }
    }

    /// complex literal inside parentheses: `a`, `a+bi`, `a-bi`, `bi`, `i`
    fn paren_complex(&mut self) -> Result<Complex64> {
        let mut re = 0.0;
        let mut im = 0.0;
        let first = self.signed_number_or_imag()?;
        match first {
            NumOrImag::Real(v) => {
                re = v;
                match self.peek() {
                    Some(Token::RParen) => {}
                    Some(Token::Plus) | Some(Token::Minus) => {
                        let v2 = self.signed_number_or_imag()?;
                        match v2 {
                            NumOrImag::Imag(b) => im = b,
                            NumOrImag::Real(_) => {
                                return Err(Error::Parse(
                                    "expected an imaginary part like '2i'".into(),
                                ))
                            }
                        }
                    }
                    other => {
                        return Err(Error::Parse(format!(
                            "unexpected token {other:?} in complex literal"
                        )))
                    }
                }
            }
            NumOrImag::Imag(b) => im = b,
        }
        self.expect(Token::RParen)?;
        Ok(Complex64::new(re, im))
    }

    fn signed_number_or_imag(&mut self) -> Result<NumOrImag> {
        let mut sign = 1.0;
        loop {
            match self.peek() {
                Some(Token::Minus) => {
                    sign = -sign;
                    self.pos += 1;
                }
                Some(Token::Plus) => self.pos += 1,
                _ => break,
            }
        }
        match self.next() {
            Some(Token::Number(v)) => {
                if matches!(self.peek(), Some(Token::Imag)) {
                    self.pos += 1;
                    Ok(NumOrImag::Imag(sign * v))
                } else {
                    Ok(NumOrImag::Real(sign * v))
                }
            }
            Some(Token::Imag) => Ok(NumOrImag::Imag(sign)),
            other => Err(Error::Parse(format!("expected a number, found {other:?}"))),
        }
    }

    /// one product of factors
    fn term(&mut self) -> Result<Term> {
        let mut coeff = Complex64::ONE;
        let mut exps = [0u32; 4];
        let mut saw_factor = false;
        loop {
            match self.peek() {
                Some(Token::Number(_)) => {
                    let v = self.signed_number()?;
                    if matches!(self.peek(), Some(Token::Imag)) {
                        self.pos += 1;
                        coeff *= Complex64::new(0.0, v);
                    } else {
                        coeff *= v;
                    }
                    saw_factor = true;
                }
                Some(Token::Imag) => {
                    self.pos += 1;
                    coeff *= Complex64::I;
                    saw_factor = true;
                }
                Some(Token::LParen) => {
                    self.pos += 1;
                    coeff *= self.paren_complex()?;
                    saw_factor = true;
                }
                Some(Token::Var(k)) => {
                    let k = *k;
                    self.pos += 1;
                    let mut e = 1u32;
                    if matches!(self.peek(), Some(Token::Caret)) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Number(v)) if v.fract() == 0.0 && v >= 1.0 => {
                                e = v as u32;
                            }
                            other => {
                                return Err(Error::Parse(format!(
                                    "expected a positive integer exponent, found {other:?}"
                                )))
                            }
                        }
                    }
                    exps[k] += e;
                    saw_factor = true;
                }
                Some(Token::Star) => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        if !saw_factor {
            return Err(Error::Parse("empty term".into()));
        }
        Ok(Term { coeff, exps })
    }
}

fn parse_surface(input: &str) -> Result<SurfaceSpec> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty surface expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let mut terms = Vec::new();
    let mut sign = 1.0;
    // optional leading sign
    loop {
        match p.peek() {
            Some(Token::Minus) => {
                sign = -sign;
                p.pos += 1;
            }
            Some(Token::Plus) => p.pos += 1,
            _ => break,
        }
    }
    loop {
        let mut t = p.term()?;
        t.coeff *= sign;
        terms.push(t);
        match p.next() {
            None => break,
            Some(Token::Plus) => sign = 1.0,
            Some(Token::Minus) => sign = -1.0,
            Some(other) => {
                return Err(Error::Parse(format!(
                    "expected '+' or '-' between terms, found {other:?}"
                )))
            }
        }
    }
    SurfaceSpec::new(terms)
}

enum NumOrImag {
    Real(f64),
    Imag(f64),
}
