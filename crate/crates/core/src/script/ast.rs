use std::fmt;

use serde::Serialize;

/// A script: statements in source order.
#[derive(Debug, Clone)]
pub struct Script {
    pub statements: Vec<Statement>,
}

/// Two scripts are equal when their statements are, ignoring positions and
/// source text (so a printed-and-reparsed script equals the original).
impl PartialEq for Script {
    fn eq(&self, other: &Self) -> bool {
        self.statements.len() == other.statements.len()
            && self
                .statements
                .iter()
                .zip(&other.statements)
                .all(|(a, b)| a.kind == b.kind)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub line: usize,
    pub source: String,
    pub kind: StmtKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Binding(Binding),
    Assert { lhs: Expr, rhs: Expr, tol: f64 },
    Directive(Directive),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Binding {
    pub kind: String,
    pub name: String,
    /// Registry id of the resolved form, e.g. `point.foot`.
    pub op: &'static str,
    /// Sub-operation keyword as written (absent for a kind's default form).
    pub keyword: Option<&'static str>,
    pub args: Vec<Arg>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Name(String),
    Num(f64),
    Tuple(Vec<f64>),
    Word(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Poincare,
    Klein,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Poincare => "poincare",
            Model::Klein => "klein",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Directive {
    Render { path: String, width: Option<u32> },
    Tol { key: String, value: f64 },
    Model(Model),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Ln,
    Exp,
    Sqrt,
    Abs,
    Sin,
    Cos,
    Tan,
    Asin,
    Acos,
    Atan,
    Sinh,
    Cosh,
    Tanh,
    Atanh,
}

impl Func {
    pub const ALL: [Func; 14] = [
        Func::Ln,
        Func::Exp,
        Func::Sqrt,
        Func::Abs,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Asin,
        Func::Acos,
        Func::Atan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Atanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Ln => "ln",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Asin => "asin",
            Func::Acos => "acos",
            Func::Atan => "atan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Atanh => "atanh",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }

    pub fn apply(self, x: f64) -> f64 {
        match self {
            Func::Ln => x.ln(),
            Func::Exp => x.exp(),
            Func::Sqrt => x.sqrt(),
            Func::Abs => x.abs(),
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Asin => x.asin(),
            Func::Acos => x.acos(),
            Func::Atan => x.atan(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Tanh => x.tanh(),
            Func::Atanh => x.atanh(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Str(String),
    Name(String),
    Pi,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Shortest round-tripping decimal form.
fn num(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    if x < 0.0 || (x == 0.0 && x.is_sign_negative()) {
        write!(f, "-{:?}", -x)
    } else {
        write!(f, "{x:?}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) if *x < 0.0 => {
                f.write_str("(")?;
                num(f, *x)?;
                f.write_str(")")
            }
            Expr::Num(x) => num(f, *x),
            Expr::Str(s) => write!(f, "\"{s}\""),
            Expr::Name(n) => f.write_str(n),
            Expr::Pi => f.write_str("pi"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) | Arg::Word(n) => f.write_str(n),
            Arg::Num(x) => num(f, *x),
            Arg::Tuple(xs) => {
                f.write_str("(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    num(f, *x)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for StmtKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Binding(b) => {
                write!(f, "{} {} =", b.kind, b.name)?;
                if let Some(k) = b.keyword {
                    write!(f, " {k}")?;
                }
                for a in &b.args {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
            StmtKind::Assert { lhs, rhs, tol } => {
                write!(f, "assert_eq {lhs} {rhs} tol ")?;
                num(f, *tol)
            }
            StmtKind::Directive(Directive::Render { path, width }) => {
                write!(f, "render {path}")?;
                if let Some(w) = width {
                    write!(f, " width {w}")?;
                }
                Ok(())
            }
            StmtKind::Directive(Directive::Tol { key, value }) => {
                write!(f, "tol {key} ")?;
                num(f, *value)
            }
            StmtKind::Directive(Directive::Model(m)) => write!(f, "model {}", m.as_str()),
        }
    }
}

/// Canonical text: one statement per line, comments dropped.
impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.kind)?;
        }
        Ok(())
    }
}
