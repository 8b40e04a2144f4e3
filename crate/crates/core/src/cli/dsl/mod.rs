//! A small expression language over the library's value types.
//!
//! A program is a sequence of items separated by newlines or `;`. An item
//! is a `universe { ... }` declaration, a `let name = expr` binding, or an
//! expression whose canonical form is printed.

mod lexer;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::diracw::{charge_conjugate, gamma, k_form, DiracVector, EndW};
use crate::exactfield::{Scalar, UnitExponent};
use crate::fnforms::{
    axis_index, bianchi_residual, covariant_differential, curvature, fn_bracket, lie_derivative, matrix_wedge,
    matrix_wedge_vec, Form, MatrixForm, Poly, PolyMatrix, PolyVec, ScalarForm, TangentForm, VecForm,
    MAX_DIM,
};
use crate::fockalg::{
    interior_product, op_apply, pairing, super_bracket, DualState, FockState, Interior,
    OperatorElement, Sector, Statistics, Universe,
};
use crate::spintensor::{g_pairing, Epsilon, ScaledTensor, Variance};

use lexer::{tokenize, Tok, Token};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("evaluation error at {line}:{col}: {msg}")]
    Eval { line: usize, col: usize, msg: String },
}

/// Evaluates every expression item and returns their printed forms.
pub fn eval_program(src: &str) -> Result<Vec<String>, DslError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, universe: None, vars: HashMap::new() };
    p.program()
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Value {
    Scalar(Scalar),
    Tensor(ScaledTensor),
    Dirac(DiracVector),
    End(EndW),
    Tangent(TangentForm),
    Form(ScalarForm),
    MForm(MatrixForm),
    VForm(VecForm),
    State(FockState),
    Dual(DualState),
    Op(OperatorElement),
    Text(String),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Tensor(_) => "tensor",
            Value::Dirac(_) => "dirac vector",
            Value::End(_) => "endomorphism",
            Value::Tangent(_) => "tangent-valued form",
            Value::Form(_) => "form",
            Value::MForm(_) => "matrix form",
            Value::VForm(_) => "vector form",
            Value::State(_) => "state",
            Value::Dual(_) => "dual state",
            Value::Op(_) => "operator",
            Value::Text(_) => "text",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(v) => write!(f, "{v}"),
            Value::Tensor(v) => write!(f, "{v}"),
            Value::Dirac(v) => write!(f, "{v}"),
            Value::End(v) => write!(f, "{}", v.to_string().trim_end()),
            Value::Tangent(v) => write!(f, "{v}"),
            Value::Form(v) => write!(f, "{v}"),
            Value::MForm(v) => write!(f, "{v}"),
            Value::VForm(v) => write!(f, "{v}"),
            Value::State(v) => write!(f, "{v}"),
            Value::Dual(v) => write!(f, "{v}"),
            Value::Op(v) => write!(f, "{v}"),
            Value::Text(v) => write!(f, "{v}"),
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    universe: Option<Arc<Universe>>,
    vars: HashMap<String, Value>,
}

type Res<T> = Result<T, DslError>;

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Str(s) => format!("string \"{s}\""),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::Arrow => "'->'".into(),
        Tok::Newline => "end of line".into(),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn parse_err<T>(&self, msg: impl Into<String>) -> Res<T> {
        let (line, col) = self.here();
        Err(DslError::Parse { line, col, msg: msg.into() })
    }

    fn unexpected<T>(&self, wanted: &str) -> Res<T> {
        self.parse_err(format!("expected {wanted}, found {}", describe(self.peek())))
    }

    fn eval_err(at: &Token, msg: impl fmt::Display) -> DslError {
        DslError::Eval { line: at.line, col: at.col, msg: msg.to_string() }
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Res<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.unexpected(&format!("'{c}'"))
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    fn expect_ident(&mut self, name: &str) -> Res<()> {
        if self.is_ident(name) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("'{name}'"))
        }
    }

    fn ident(&mut self) -> Res<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected("a name"),
        }
    }

    fn number(&mut self) -> Res<i64> {
        match self.peek().clone() {
            Tok::Num(n) => match n.parse() {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => self.parse_err("number too large"),
            },
            _ => self.unexpected("a number"),
        }
    }

    fn string(&mut self) -> Res<(String, Token)> {
        let at = self.toks[self.pos].clone();
        match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                Ok((s, at))
            }
            _ => self.unexpected("a quoted string"),
        }
    }

    /// `key=N`.
    fn setting(&mut self, key: &str) -> Res<usize> {
        self.expect_ident(key)?;
        self.expect_sym('=')?;
        let n = self.number()?;
        usize::try_from(n).or_else(|_| self.parse_err("expected a non-negative number"))
    }

    fn program(&mut self) -> Res<Vec<String>> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek(), Tok::Newline | Tok::Sym(';')) {
                self.bump();
            }
            if *self.peek() == Tok::Eof {
                return Ok(out);
            }
            if self.is_ident("universe") {
                self.universe_decl()?;
            } else if self.is_ident("let") {
                self.bump();
                let name = self.ident()?;
                self.expect_sym('=')?;
                let v = self.expr()?;
                self.vars.insert(name, v);
            } else {
                let v = self.expr()?;
                out.push(v.to_string());
            }
            match self.peek() {
                Tok::Newline | Tok::Sym(';') | Tok::Eof => {}
                _ => return self.unexpected("end of item"),
            }
        }
    }

    fn universe_decl(&mut self) -> Res<()> {
        let at = self.bump();
        self.expect_sym('{')?;
        let mut sectors = Vec::new();
        while !self.is_sym('}') {
            self.expect_ident("sector")?;
            let name = self.ident()?;
            self.expect_sym(':')?;
            let statistics = match self.ident()?.as_str() {
                "fermion" => Statistics::Fermion,
                "boson" => Statistics::Boson,
                _ => {
                    self.pos -= 1;
                    return self.unexpected("'fermion' or 'boson'");
                }
            };
            self.expect_sym('[')?;
            let mut modes = Vec::new();
            loop {
                match self.bump().tok {
                    Tok::Num(s) | Tok::Ident(s) => modes.push(s),
                    _ => {
                        self.pos -= 1;
                        return self.unexpected("a mode label");
                    }
                }
                if !self.eat_sym(',') {
                    break;
                }
            }
            self.expect_sym(']')?;
            sectors.push(Sector { name, statistics, modes });
            if !self.eat_sym(';') {
                break;
            }
        }
        self.expect_sym('}')?;
        let u = Universe::new(sectors).map_err(|e| Self::eval_err(&at, e))?;
        self.universe = Some(Arc::new(u));
        Ok(())
    }

    fn expr(&mut self) -> Res<Value> {
        let mut acc = self.product()?;
        loop {
            let at = self.toks[self.pos].clone();
            if self.eat_sym('+') {
                let rhs = self.product()?;
                acc = add(&at, acc, rhs, false)?;
            } else if self.eat_sym('-') {
                let rhs = self.product()?;
                acc = add(&at, acc, rhs, true)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Res<Value> {
        let mut acc = self.wedge()?;
        loop {
            let at = self.toks[self.pos].clone();
            if self.eat_sym('*') {
                let rhs = self.wedge()?;
                acc = mul(&at, acc, rhs)?;
            } else if self.eat_sym('/') {
                let rhs = self.wedge()?;
                let Value::Scalar(s) = rhs else {
                    return Err(Self::eval_err(&at, format!("cannot divide by a {}", rhs.kind())));
                };
                let inv = s.inv().ok_or_else(|| Self::eval_err(&at, "division by zero"))?;
                acc = scale(&at, acc, &inv)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn wedge(&mut self) -> Res<Value> {
        let mut acc = self.unary()?;
        loop {
            let at = self.toks[self.pos].clone();
            if self.eat_sym('^') {
                let rhs = self.unary()?;
                acc = wedge(&at, acc, rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Res<Value> {
        let at = self.toks[self.pos].clone();
        if self.eat_sym('-') {
            let v = self.unary()?;
            return scale(&at, v, &Scalar::from_int(-1));
        }
        self.atom()
    }

    fn require_universe(&self, at: &Token) -> Res<Arc<Universe>> {
        self.universe.clone().ok_or_else(|| Self::eval_err(at, "no universe declared"))
    }

    fn mode_ref(&mut self, at: &Token, sector: &str) -> Res<usize> {
        self.expect_sym(':')?;
        let label = match self.bump().tok {
            Tok::Num(s) | Tok::Ident(s) => s,
            _ => {
                self.pos -= 1;
                return self.unexpected("a mode label");
            }
        };
        let u = self.require_universe(at)?;
        u.mode_index(sector, &label).map_err(|e| Self::eval_err(at, e))
    }

    fn atom(&mut self) -> Res<Value> {
        let at = self.toks[self.pos].clone();
        match at.tok.clone() {
            Tok::Num(n) => {
                self.bump();
                let v: i64 = n.parse().map_err(|_| Self::eval_err(&at, "number too large"))?;
                Ok(Value::Scalar(Scalar::from_int(v)))
            }
            Tok::Sym('(') => {
                self.bump();
                let v = self.expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Sym('~') => {
                self.bump();
                let sector = self.ident()?;
                let k = self.mode_ref(&at, &sector)?;
                let u = self.require_universe(&at)?;
                Ok(Value::Dual(DualState::generator(&u, k)))
            }
            Tok::Ident(name) => {
                self.bump();
                if self.is_sym(':') {
                    let k = self.mode_ref(&at, &name)?;
                    let u = self.require_universe(&at)?;
                    return Ok(Value::State(FockState::generator(&u, k)));
                }
                if self.is_sym('(') && !matches!(name.as_str(), "dirac") {
                    return self.call(&at, &name);
                }
                self.keyword(&at, &name)
            }
            _ => self.unexpected("an expression"),
        }
    }

    fn keyword(&mut self, at: &Token, name: &str) -> Res<Value> {
        let spinor = |v: Variance, k: u8| Ok(Value::Tensor(ScaledTensor::basis(v, k)));
        match name {
            "i" => Ok(Value::Scalar(Scalar::i())),
            "r2" => Ok(Value::Scalar(Scalar::sqrt2())),
            "e1" => spinor(Variance::U, 1),
            "e2" => spinor(Variance::U, 2),
            "eb1" => spinor(Variance::UBar, 1),
            "eb2" => spinor(Variance::UBar, 2),
            "vac" => Ok(Value::State(FockState::vacuum(&self.require_universe(at)?))),
            "one" => Ok(Value::Op(OperatorElement::identity(&self.require_universe(at)?))),
            "tensor" => self.tensor_literal(),
            "dirac" => self.dirac_literal(),
            "form" => self.form_literal(at),
            "mform" => self.mform_literal(at),
            "vform" => self.vform_literal(at),
            "vec" => self.vec_literal(),
            _ => self.vars.get(name).cloned().ok_or_else(|| Self::eval_err(at, format!("unknown name '{name}'"))),
        }
    }

    fn variance(&mut self) -> Res<Variance> {
        let mut name = self.ident()?;
        if self.eat_sym('*') {
            name.push('*');
        }
        match Variance::from_name(&name) {
            Some(v) => Ok(v),
            None => self.parse_err(format!("unknown variance '{name}'")),
        }
    }

    fn tensor_literal(&mut self) -> Res<Value> {
        self.expect_sym('[')?;
        let mut slots = Vec::new();
        if !self.is_sym(']') {
            loop {
                slots.push(self.variance()?);
                if !self.eat_sym(',') {
                    break;
                }
            }
        }
        self.expect_sym(']')?;
        let mut t = ScaledTensor::zero(slots.clone());
        if self.is_ident("unit") {
            self.bump();
            self.expect_sym('=')?;
            let neg = self.eat_sym('-');
            let num = self.number()?;
            let den = if self.eat_sym('/') { self.number()? } else { 1 };
            if den == 0 {
                return self.parse_err("unit denominator is zero");
            }
            t = t.with_unit(UnitExponent::new(if neg { -num } else { num }, den));
        }
        self.expect_sym('{')?;
        while !self.is_sym('}') {
            let idx_at = self.toks[self.pos].clone();
            self.expect_sym('(')?;
            let mut idx = Vec::new();
            loop {
                let n = self.number()?;
                idx.push(u8::try_from(n).unwrap_or(0));
                if !self.eat_sym(',') {
                    break;
                }
            }
            self.expect_sym(')')?;
            self.expect_sym(':')?;
            let v = self.scalar_expr()?;
            t.add_entry(idx, v).map_err(|e| Self::eval_err(&idx_at, e))?;
            if !self.eat_sym(';') {
                break;
            }
        }
        self.expect_sym('}')?;
        Ok(Value::Tensor(t))
    }

    fn scalar_expr(&mut self) -> Res<Scalar> {
        let at = self.toks[self.pos].clone();
        match self.expr()? {
            Value::Scalar(s) => Ok(s),
            other => Err(Self::eval_err(&at, format!("expected a scalar, found a {}", other.kind()))),
        }
    }

    fn scalar_pair(&mut self) -> Res<[Scalar; 2]> {
        self.expect_sym('[')?;
        let a = self.scalar_expr()?;
        self.expect_sym(',')?;
        let b = self.scalar_expr()?;
        self.expect_sym(']')?;
        Ok([a, b])
    }

    fn dirac_literal(&mut self) -> Res<Value> {
        self.expect_sym('(')?;
        self.expect_ident("u")?;
        self.expect_sym(':')?;
        let [a, b] = self.scalar_pair()?;
        self.expect_sym(',')?;
        self.expect_ident("lbar")?;
        self.expect_sym(':')?;
        let [c, d] = self.scalar_pair()?;
        self.expect_sym(')')?;
        Ok(Value::Dirac(DiracVector::new([a, b, c, d])))
    }

    fn chart_header(&mut self) -> Res<(usize, usize)> {
        let deg = self.setting("deg")?;
        let dim = self.setting("dim")?;
        if !(1..=MAX_DIM).contains(&dim) {
            return self.parse_err(format!("chart dimension must be between 1 and {MAX_DIM}"));
        }
        if deg > dim {
            return self.parse_err("degree exceeds chart dimension");
        }
        Ok((deg, dim))
    }

    /// `1` or `dx^dz`; returns the axes in the written order.
    fn subset(&mut self, dim: usize, deg: usize) -> Res<Vec<usize>> {
        let mut axes = Vec::new();
        if *self.peek() == Tok::Num("1".into()) {
            self.bump();
        } else {
            loop {
                let name = self.ident()?;
                let axis = name.strip_prefix('d').and_then(axis_index).filter(|&k| k < dim);
                match axis {
                    Some(k) => axes.push(k),
                    None => {
                        self.pos -= 1;
                        return self.parse_err(format!("'{name}' is not a coordinate differential of this chart"));
                    }
                }
                if !self.eat_sym('^') {
                    break;
                }
            }
        }
        if axes.len() != deg {
            return self.parse_err(format!("expected a {deg}-form component, found degree {}", axes.len()));
        }
        Ok(axes)
    }

    fn poly_string(&mut self, dim: usize) -> Res<Poly> {
        let (s, at) = self.string()?;
        Poly::parse(&s, dim).map_err(|e| DslError::Parse { line: at.line, col: at.col, msg: e.to_string() })
    }

    fn form_literal(&mut self, at: &Token) -> Res<Value> {
        let (deg, dim) = self.chart_header()?;
        self.expect_sym('{')?;
        let mut scalar = ScalarForm::zero(dim, deg);
        let mut tangent = vec![ScalarForm::zero(dim, deg); dim];
        let mut saw_arrow = None;
        while !self.is_sym('}') {
            let axes = self.subset(dim, deg)?;
            let arrow = if *self.peek() == Tok::Arrow {
                self.bump();
                self.expect_ident("axis")?;
                let name = self.ident()?;
                match axis_index(&name).filter(|&k| k < dim) {
                    Some(k) => Some(k),
                    None => {
                        self.pos -= 1;
                        return self.parse_err(format!("'{name}' is not an axis of this chart"));
                    }
                }
            } else {
                None
            };
            if saw_arrow.is_some_and(|s: bool| s != arrow.is_some()) {
                return self.parse_err("mixing scalar and tangent-valued components");
            }
            saw_arrow = Some(arrow.is_some());
            self.expect_sym(':')?;
            self.expect_ident("poly")?;
            let p = self.poly_string(dim)?;
            let term = Form::basis(dim, &axes, p);
            let target = match arrow {
                Some(k) => &mut tangent[k],
                None => &mut scalar,
            };
            *target = target.add(&term).map_err(|e| Self::eval_err(at, e))?;
            if !self.eat_sym(';') {
                break;
            }
        }
        self.expect_sym('}')?;
        if saw_arrow == Some(true) {
            Ok(Value::Tangent(TangentForm::from_axes(tangent).map_err(|e| Self::eval_err(at, e))?))
        } else {
            Ok(Value::Form(scalar))
        }
    }

    fn poly_row(&mut self, dim: usize, fibre: usize) -> Res<Vec<Poly>> {
        self.expect_sym('[')?;
        let mut row = Vec::new();
        loop {
            row.push(self.poly_string(dim)?);
            if !self.eat_sym(',') {
                break;
            }
        }
        self.expect_sym(']')?;
        if row.len() != fibre {
            return self.parse_err(format!("expected {fibre} entries, found {}", row.len()));
        }
        Ok(row)
    }

    fn mform_literal(&mut self, at: &Token) -> Res<Value> {
        let (deg, dim) = self.chart_header()?;
        let fibre = self.setting("fibre")?;
        self.expect_sym('{')?;
        let mut f = MatrixForm::zero(dim, deg);
        while !self.is_sym('}') {
            let axes = self.subset(dim, deg)?;
            self.expect_sym(':')?;
            self.expect_sym('[')?;
            let mut rows = Vec::new();
            loop {
                rows.push(self.poly_row(dim, fibre)?);
                if !self.eat_sym(',') {
                    break;
                }
            }
            self.expect_sym(']')?;
            if rows.len() != fibre {
                return self.parse_err(format!("expected {fibre} rows, found {}", rows.len()));
            }
            f = f.add(&Form::basis(dim, &axes, PolyMatrix(rows))).map_err(|e| Self::eval_err(at, e))?;
            if !self.eat_sym(';') {
                break;
            }
        }
        self.expect_sym('}')?;
        Ok(Value::MForm(f))
    }

    fn vform_literal(&mut self, at: &Token) -> Res<Value> {
        let (deg, dim) = self.chart_header()?;
        let fibre = self.setting("fibre")?;
        self.expect_sym('{')?;
        let mut f = VecForm::zero(dim, deg);
        while !self.is_sym('}') {
            let axes = self.subset(dim, deg)?;
            self.expect_sym(':')?;
            let row = self.poly_row(dim, fibre)?;
            f = f.add(&Form::basis(dim, &axes, PolyVec(row))).map_err(|e| Self::eval_err(at, e))?;
            if !self.eat_sym(';') {
                break;
            }
        }
        self.expect_sym('}')?;
        Ok(Value::VForm(f))
    }

    /// `vec dim=2 ["0", "x"]`, a vector field.
    fn vec_literal(&mut self) -> Res<Value> {
        let dim = self.setting("dim")?;
        if !(1..=MAX_DIM).contains(&dim) {
            return self.parse_err(format!("chart dimension must be between 1 and {MAX_DIM}"));
        }
        let comps = self.poly_row(dim, dim)?;
        Ok(Value::Tangent(TangentForm::vector_field(&comps)))
    }

    fn call(&mut self, at: &Token, name: &str) -> Res<Value> {
        self.expect_sym('(')?;
        let mut args = Vec::new();
        if !self.is_sym(')') {
            loop {
                args.push(self.expr()?);
                if !self.eat_sym(',') {
                    break;
                }
            }
        }
        self.expect_sym(')')?;
        call(at, name, args)
    }
}

fn err(at: &Token, msg: impl fmt::Display) -> DslError {
    Parser::eval_err(at, msg)
}

fn mismatch(at: &Token, op: &str, a: &Value, b: &Value) -> DslError {
    err(at, format!("cannot apply '{op}' to a {} and a {}", a.kind(), b.kind()))
}

#[allow(clippy::result_large_err)]
fn as_tangent(v: Value) -> Result<TangentForm, Value> {
    match v {
        Value::Tangent(t) => Ok(t),
        Value::Form(f) if f.is_zero() => Ok(TangentForm::zero(f.dim(), f.degree())),
        other => Err(other),
    }
}

fn scale(at: &Token, v: Value, s: &Scalar) -> Res<Value> {
    Ok(match v {
        Value::Scalar(x) => Value::Scalar(x * s),
        Value::Tensor(x) => Value::Tensor(x.scale(s)),
        Value::Dirac(x) => Value::Dirac(x.scale(s)),
        Value::End(x) => Value::End(x.scale(s)),
        Value::Tangent(x) => Value::Tangent(x.scale(s)),
        Value::Form(x) => Value::Form(x.scale(s)),
        Value::MForm(x) => Value::MForm(x.scale(s)),
        Value::VForm(x) => Value::VForm(x.scale(s)),
        Value::State(x) => Value::State(x.scale(s)),
        Value::Dual(x) => Value::Dual(x.scale(s)),
        Value::Op(x) => Value::Op(x.scale(s)),
        Value::Text(_) => return Err(err(at, "cannot scale text")),
    })
}

fn add(at: &Token, a: Value, b: Value, subtract: bool) -> Res<Value> {
    let op = if subtract { "-" } else { "+" };
    let b = if subtract { scale(at, b, &Scalar::from_int(-1))? } else { b };
    let e = |x: &dyn fmt::Display| err(at, x);
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
        (Value::Tensor(x), Value::Tensor(y)) => Value::Tensor(x.add(&y).map_err(|r| e(&r))?),
        (Value::Dirac(x), Value::Dirac(y)) => Value::Dirac(x.add(&y)),
        (Value::End(x), Value::End(y)) => Value::End(x.add(&y)),
        (Value::Tangent(x), Value::Tangent(y)) => Value::Tangent(x.add(&y).map_err(|r| e(&r))?),
        (Value::Form(x), Value::Form(y)) => Value::Form(x.add(&y).map_err(|r| e(&r))?),
        (Value::MForm(x), Value::MForm(y)) => Value::MForm(x.add(&y).map_err(|r| e(&r))?),
        (Value::VForm(x), Value::VForm(y)) => Value::VForm(x.add(&y).map_err(|r| e(&r))?),
        (Value::State(x), Value::State(y)) => Value::State(x.add(&y).map_err(|r| e(&r))?),
        (Value::Dual(x), Value::Dual(y)) => Value::Dual(x.add(&y).map_err(|r| e(&r))?),
        (Value::Op(x), Value::Op(y)) => Value::Op(x.add(&y).map_err(|r| e(&r))?),
        (Value::State(x), Value::Scalar(c)) | (Value::Scalar(c), Value::State(x)) => {
            Value::State(x.add(&FockState::scalar(x.universe(), c)).map_err(|r| e(&r))?)
        }
        (Value::Op(x), Value::Scalar(c)) | (Value::Scalar(c), Value::Op(x)) => {
            Value::Op(x.add(&OperatorElement::scalar(x.universe(), c)).map_err(|r| e(&r))?)
        }
        (a, b) => return Err(mismatch(at, op, &a, &b)),
    })
}

fn mul(at: &Token, a: Value, b: Value) -> Res<Value> {
    Ok(match (a, b) {
        (Value::Scalar(s), v) | (v, Value::Scalar(s)) => scale(at, v, &s)?,
        (Value::Tensor(x), Value::Tensor(y)) => Value::Tensor(x.tensor(&y)),
        (Value::End(x), Value::End(y)) => Value::End(x.compose(&y)),
        (Value::End(x), Value::Dirac(y)) => Value::Dirac(x.apply(&y)),
        (Value::Op(x), Value::Op(y)) => Value::Op(x.mul(&y).map_err(|r| err(at, r))?),
        (Value::Op(x), Value::State(y)) => Value::State(op_apply(&x, &y).map_err(|r| err(at, r))?),
        (Value::MForm(x), Value::VForm(y)) => Value::VForm(matrix_wedge_vec(&x, &y).map_err(|r| err(at, r))?),
        (a, b) => return Err(mismatch(at, "*", &a, &b)),
    })
}

fn wedge(at: &Token, a: Value, b: Value) -> Res<Value> {
    let e = |r: &dyn fmt::Display| err(at, r);
    Ok(match (a, b) {
        (Value::State(x), Value::State(y)) => Value::State(x.product(&y).map_err(|r| e(&r))?),
        (Value::Dual(x), Value::Dual(y)) => Value::Dual(x.product(&y).map_err(|r| e(&r))?),
        (Value::Form(x), Value::Form(y)) => Value::Form(x.wedge(&y).map_err(|r| e(&r))?),
        (Value::Form(x), Value::MForm(y)) => Value::MForm(x.wedge_value(&y).map_err(|r| e(&r))?),
        (Value::Form(x), Value::VForm(y)) => Value::VForm(x.wedge_value(&y).map_err(|r| e(&r))?),
        (Value::MForm(x), Value::MForm(y)) => Value::MForm(matrix_wedge(&x, &y).map_err(|r| e(&r))?),
        (Value::MForm(x), Value::VForm(y)) => Value::VForm(matrix_wedge_vec(&x, &y).map_err(|r| e(&r))?),
        (a, b) => return Err(mismatch(at, "^", &a, &b)),
    })
}

fn arity(at: &Token, name: &str, args: &[Value], n: usize) -> Res<()> {
    if args.len() != n {
        return Err(err(at, format!("{name} takes {n} argument(s), found {}", args.len())));
    }
    Ok(())
}

fn wrong_args(at: &Token, name: &str, args: &[Value]) -> DslError {
    let kinds: Vec<&str> = args.iter().map(Value::kind).collect();
    err(at, format!("{name} is not defined for ({})", kinds.join(", ")))
}

fn call(at: &Token, name: &str, args: Vec<Value>) -> Res<Value> {
    let e = |r: &dyn fmt::Display| err(at, r);
    let expected_arity = match name {
        "g" | "eps" | "k" | "fnb" | "lie" | "dcov" | "bracket" | "contract" | "pair" | "apply" => 2,
        "conj" | "gamma" | "cc" | "d" | "curvature" | "bianchi" | "emit" | "absorb" | "json" => 1,
        _ => return Err(err(at, format!("unknown function '{name}'"))),
    };
    arity(at, name, &args, expected_arity)?;
    let mut it = args.clone().into_iter();
    let a = it.next().expect("arity checked");
    let b = it.next();
    let out = match (name, a, b) {
        ("g", Value::Tensor(x), Some(Value::Tensor(y))) => Value::Scalar(g_pairing(&x, &y).map_err(|r| e(&r))?),
        ("eps", Value::Tensor(x), Some(Value::Tensor(y))) => {
            Value::Scalar(Epsilon::standard().eval(&x, &y).map_err(|r| e(&r))?)
        }
        ("k", Value::Dirac(x), Some(Value::Dirac(y))) => Value::Scalar(k_form(&x, &y)),
        ("conj", Value::Scalar(x), None) => Value::Scalar(x.conj()),
        ("conj", Value::Tensor(x), None) => Value::Tensor(x.conj()),
        ("gamma", Value::Tensor(x), None) => Value::End(gamma(&x).map_err(|r| e(&r))?),
        ("cc", Value::Dirac(x), None) => {
            Value::Dirac(charge_conjugate(&Epsilon::standard(), &x).map_err(|r| e(&r))?)
        }
        ("apply", Value::End(x), Some(Value::Dirac(y))) => Value::Dirac(x.apply(&y)),
        ("apply", Value::Op(x), Some(Value::State(y))) => Value::State(op_apply(&x, &y).map_err(|r| e(&r))?),
        ("d", Value::Form(x), None) => Value::Form(x.d()),
        ("d", Value::MForm(x), None) => Value::MForm(x.d()),
        ("d", Value::VForm(x), None) => Value::VForm(x.d()),
        ("fnb", x, Some(y)) => match (as_tangent(x), as_tangent(y)) {
            (Ok(x), Ok(y)) => Value::Tangent(fn_bracket(&x, &y).map_err(|r| e(&r))?),
            _ => return Err(wrong_args(at, name, &args)),
        },
        ("lie", Value::Tangent(u), Some(w)) => match w {
            Value::Form(w) => Value::Form(lie_derivative(&u, &w).map_err(|r| e(&r))?),
            Value::MForm(w) => Value::MForm(lie_derivative(&u, &w).map_err(|r| e(&r))?),
            Value::VForm(w) => Value::VForm(lie_derivative(&u, &w).map_err(|r| e(&r))?),
            _ => return Err(wrong_args(at, name, &args)),
        },
        ("curvature", Value::MForm(a), None) => Value::MForm(curvature(&a).map_err(|r| e(&r))?),
        ("bianchi", Value::MForm(a), None) => Value::MForm(bianchi_residual(&a).map_err(|r| e(&r))?),
        ("dcov", Value::MForm(a), Some(Value::VForm(phi))) => {
            Value::VForm(covariant_differential(&a, &phi).map_err(|r| e(&r))?)
        }
        ("emit", Value::State(z), None) => Value::Op(OperatorElement::emit(&z).map_err(|r| e(&r))?),
        ("absorb", Value::Dual(z), None) => Value::Op(OperatorElement::absorb(&z).map_err(|r| e(&r))?),
        ("bracket", Value::Op(x), Some(Value::Op(y))) => Value::Op(super_bracket(&x, &y).map_err(|r| e(&r))?),
        ("contract", Value::Dual(l), Some(Value::State(p))) => match interior_product(&l, &p).map_err(|r| e(&r))? {
            Interior::State(s) => Value::State(s),
            Interior::Dual(d) => Value::Dual(d),
        },
        ("pair", Value::Dual(l), Some(Value::State(p))) => Value::Scalar(pairing(&l, &p).map_err(|r| e(&r))?),
        ("json", Value::State(s), None) => Value::Text(serde_json::to_string(&s.to_json()).expect("serializable")),
        ("json", Value::Dual(s), None) => Value::Text(serde_json::to_string(&s.to_json()).expect("serializable")),
        _ => return Err(wrong_args(at, name, &args)),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval1(src: &str) -> String {
        let out = eval_program(src).unwrap_or_else(|e| panic!("{e}"));
        assert_eq!(out.len(), 1, "{out:?}");
        out[0].clone()
    }

    #[test]
    fn scalars_and_spinor_pairings() {
        assert_eq!(eval1("g( e1*eb1, e2*eb2 )"), "1");
        assert_eq!(eval1("g(e1*eb1 + e2*eb2, e1*eb1 + e2*eb2)"), "2");
        assert_eq!(eval1("(1 + i) * (1 - i) / 4"), "1/2");
        assert_eq!(eval1("r2 * r2 - 2"), "0");
        assert_eq!(eval1("eps(e1, e2)"), "1");
    }

    #[test]
    fn tensor_literals_round_trip() {
        let src = "tensor [U,Ubar] { (1,1): 1; (1,2): i }";
        assert_eq!(eval1(src), src);
        let printed = eval1("tensor [U*] unit=-3/2 { (2): 1+r2 }");
        assert_eq!(eval1(&printed), printed);
    }

    #[test]
    fn gamma_application() {
        let out = eval1("gamma(e1*eb1 + e2*eb2) * dirac (u: [1, 0], lbar: [0, 0])");
        assert_eq!(eval1(&out), out);
        assert!(out.starts_with("dirac (u: [0, 0], lbar: ["), "{out}");
    }

    #[test]
    fn fn_bracket_matches_library() {
        let out = eval1(r#"fnb(form deg=1 dim=2 { dy -> axis x : poly "x" }, vec dim=2 ["1", "0"])"#);
        assert_eq!(out, r#"form deg=1 dim=2 { dy -> axis x : poly "-1" }"#);
        let out = eval1(r#"fnb(vec dim=2 ["0", "x"], vec dim=2 ["1", "0"])"#);
        assert_eq!(out, r#"form deg=0 dim=2 { 1 -> axis y : poly "-1" }"#);
    }

    #[test]
    fn connection_calculus() {
        let a = r#"mform deg=1 dim=2 fibre=2 { dy : [["0", "x"], ["0", "0"]] }"#;
        assert_eq!(eval1(&format!("curvature({a})")), r#"mform deg=2 dim=2 fibre=2 { dx^dy : [["0", "1"], ["0", "0"]] }"#);
        let out = eval1(&format!(r#"dcov({a}, vform deg=0 dim=2 fibre=2 {{ 1 : ["0", "1"] }})"#));
        assert_eq!(out, r#"vform deg=1 dim=2 fibre=2 { dy : ["x", "0"] }"#);
    }

    #[test]
    fn fock_programs() {
        let src = "universe { sector f: fermion [1,2,3]; sector b: boson [1,2] }\n\
                   f:1 ^ f:2 * (1+i)\n\
                   f:2 ^ f:1\n\
                   b:1 ^ b:1\n\
                   contract(~f:1, f:1 ^ f:2)\n\
                   bracket(absorb(~b:1), emit(b:1))\n\
                   bracket(emit(f:1) * absorb(~f:2), emit(f:2))";
        let out = eval_program(src).unwrap();
        assert_eq!(out, vec!["f:1 ^ f:2 * (1+i)", "f:1 ^ f:2 * (-1)", "b:1 ^ b:1", "f:2", "1", "emit(f:1)"]);
    }

    #[test]
    fn errors_carry_positions() {
        match eval_program("g(e1*eb1,\n  e2 *)") {
            Err(DslError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 7)),
            other => panic!("unexpected {other:?}"),
        }
        match eval_program("g(e1, e2)") {
            Err(DslError::Eval { msg, .. }) => assert!(msg.contains("variance"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(eval_program("f:1"), Err(DslError::Eval { .. })));
        assert!(matches!(eval_program("1 2"), Err(DslError::Parse { .. })));
    }
}
