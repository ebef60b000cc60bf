use std::collections::HashMap;

use super::ast::{Arg, BinOp, Binding, Directive, Expr, Func, Model, Script, Statement, StmtKind};
use super::lexer::{strip_comment, tokenize, Tok, Token};
use super::registry::{self, OpSpec, Slot, Ty, BOLYAI_PARTS, KINDS};
use super::{ErrorKind, ParseError};

/// Parses a whole script; the first error aborts.
pub fn parse(text: &str) -> Result<Script, ParseError> {
    let mut env: HashMap<String, Ty> = HashMap::new();
    let mut statements = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let code = strip_comment(raw);
        if code.trim().is_empty() {
            continue;
        }
        let kind = if code.split_whitespace().next() == Some("render") {
            parse_render(code, line)?
        } else {
            let toks = tokenize(code, line)?;
            let mut cur = Cursor { toks, pos: 0, line, end_col: code.chars().count() + 1 };
            parse_statement(&mut cur, &mut env)?
        };
        statements.push(Statement { line, source: code.trim().to_string(), kind });
    }
    Ok(Script { statements })
}

struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_tok(&self) -> Option<&Tok> {
        self.peek().map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn err_here(&self, kind: ErrorKind, message: impl Into<String>) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(kind, self.line, t.col, &t.text, message),
            None => ParseError::new(kind, self.line, self.end_col, "end of line", message),
        }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        self.err_here(ErrorKind::Syntax, message)
    }

    fn ident(&mut self, what: &str) -> Result<Token, ParseError> {
        match self.peek_tok() {
            Some(Tok::Ident(_)) => Ok(self.next().unwrap()),
            _ => Err(self.syntax(format!("expected {what}"))),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        if self.peek_tok() == Some(&tok) {
            Ok(self.next().unwrap())
        } else {
            Err(self.syntax(format!("expected {what}")))
        }
    }

    fn signed_number(&mut self, what: &str) -> Result<f64, ParseError> {
        let neg = if self.peek_tok() == Some(&Tok::Minus) {
            self.next();
            true
        } else {
            false
        };
        match self.peek_tok() {
            Some(Tok::Num(x)) => {
                let x = *x;
                self.next();
                Ok(if neg { -x } else { x })
            }
            _ => Err(self.syntax(format!("expected {what}"))),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax("unexpected trailing input"))
        }
    }
}

fn parse_render(code: &str, line: usize) -> Result<StmtKind, ParseError> {
    let mut words = Vec::new();
    let mut offset = 0;
    for w in code.split_whitespace() {
        let at = code[offset..].find(w).unwrap() + offset;
        offset = at + w.len();
        words.push((code[..at].chars().count() + 1, w));
    }
    let end_col = code.chars().count() + 1;
    let path = match words.get(1) {
        Some((_, p)) => p.to_string(),
        None => return Err(ParseError::syntax(line, end_col, "end of line", "expected output path")),
    };
    let width = match words.get(2) {
        None => None,
        Some((_, "width")) => match words.get(3) {
            Some((col, w)) => Some(w.parse::<u32>().ok().filter(|w| *w > 0).ok_or_else(|| {
                ParseError::syntax(line, *col, w, "expected a positive integer width")
            })?),
            None => return Err(ParseError::syntax(line, end_col, "end of line", "expected width")),
        },
        Some((col, w)) => return Err(ParseError::syntax(line, *col, w, "expected `width`")),
    };
    if let Some((col, w)) = words.get(4) {
        return Err(ParseError::syntax(line, *col, w, "unexpected trailing input"));
    }
    Ok(StmtKind::Directive(Directive::Render { path, width }))
}

fn parse_statement(cur: &mut Cursor, env: &mut HashMap<String, Ty>) -> Result<StmtKind, ParseError> {
    let head = cur.ident("a statement")?;
    let word = head.text.as_str();
    match word {
        "assert_eq" => parse_assert(cur, env),
        "tol" => {
            let key = cur.ident("a tolerance key")?;
            if !matches!(
                key.text.as_str(),
                "eq" | "assert" | "degenerate" | "eps_eq" | "eps_assert" | "eps_degenerate"
            ) {
                return Err(ParseError::new(
                    ErrorKind::Syntax,
                    cur.line,
                    key.col,
                    &key.text,
                    "unknown tolerance key (expected eq, assert or degenerate)",
                ));
            }
            let value = cur.signed_number("a number")?;
            cur.finish()?;
            Ok(StmtKind::Directive(Directive::Tol { key: key.text, value }))
        }
        "model" => {
            let m = cur.ident("`poincare` or `klein`")?;
            let model = match m.text.as_str() {
                "poincare" => Model::Poincare,
                "klein" => Model::Klein,
                _ => {
                    return Err(ParseError::new(
                        ErrorKind::Syntax,
                        cur.line,
                        m.col,
                        &m.text,
                        "expected `poincare` or `klein`",
                    ))
                }
            };
            cur.finish()?;
            Ok(StmtKind::Directive(Directive::Model(model)))
        }
        _ if KINDS.contains(&word) => parse_binding(cur, env, &head, None),
        _ if registry::is_measure(word)
            && matches!(cur.toks.get(cur.pos + 1).map(|t| &t.tok), Some(Tok::Eq)) =>
        {
            let kw = registry::REGISTRY
                .iter()
                .find(|s| s.kind == "measure" && s.keyword == Some(word))
                .and_then(|s| s.keyword);
            parse_binding(cur, env, &head, kw)
        }
        _ => Err(ParseError::new(
            ErrorKind::UnknownOp,
            cur.line,
            head.col,
            &head.text,
            format!("unknown operation `{word}`"),
        )),
    }
}

struct RawArg {
    arg: Arg,
    col: usize,
    text: String,
}

fn parse_binding(
    cur: &mut Cursor,
    env: &mut HashMap<String, Ty>,
    head: &Token,
    shorthand: Option<&'static str>,
) -> Result<StmtKind, ParseError> {
    let kind: &'static str = if shorthand.is_some() {
        "measure"
    } else {
        KINDS.iter().find(|k| **k == head.text).copied().unwrap()
    };
    let name_tok = cur.ident("a name")?;
    let name = name_tok.text.clone();
    let name_err = |msg: String, kind: ErrorKind| {
        ParseError::new(kind, cur.line, name_tok.col, &name, msg)
    };
    if name.contains('.') {
        return Err(name_err("binding names cannot contain `.`".into(), ErrorKind::Syntax));
    }
    if registry::is_reserved(&name) {
        return Err(name_err(format!("`{name}` is a reserved word"), ErrorKind::Syntax));
    }
    if env.contains_key(&name) {
        return Err(name_err(format!("`{name}` is already bound"), ErrorKind::Duplicate));
    }
    cur.expect(Tok::Eq, "`=`")?;

    let mut raw = Vec::new();
    while !cur.at_end() {
        raw.push(parse_arg(cur)?);
    }

    let keyword: Option<&'static str> = match shorthand {
        Some(k) => Some(k),
        None => match raw.first() {
            Some(RawArg { arg: Arg::Name(w), .. }) if registry::is_keyword(kind, w) => {
                let kw = registry::REGISTRY
                    .iter()
                    .find(|s| s.kind == kind && s.keyword == Some(w.as_str()))
                    .and_then(|s| s.keyword);
                raw.remove(0);
                kw
            }
            _ => None,
        },
    };

    let candidates: Vec<&'static OpSpec> = registry::forms(kind, keyword).collect();
    if candidates.is_empty() {
        return Err(match raw.first() {
            Some(RawArg { arg: Arg::Name(w), col, text }) if !env.contains_key(w) => ParseError::new(
                ErrorKind::UnknownOp,
                cur.line,
                *col,
                text,
                format!("unknown operation `{w}` for `{kind}`"),
            ),
            _ => ParseError::new(
                ErrorKind::UnknownOp,
                cur.line,
                head.col,
                &head.text,
                format!("`{kind}` needs an operation name"),
            ),
        });
    }

    // Unresolved names are reported before any arity or type mismatch.
    for (i, r) in raw.iter().enumerate() {
        if let Arg::Name(n) = &r.arg {
            let side_word = (n == "a" || n == "b")
                && candidates.iter().any(|c| c.args.get(i) == Some(&Slot::Side));
            if !side_word && !env.contains_key(n) {
                return Err(ParseError::new(
                    ErrorKind::Unresolved,
                    cur.line,
                    r.col,
                    &r.text,
                    format!("`{n}` is not defined"),
                ));
            }
        }
    }

    let mut first_err = None;
    for spec in &candidates {
        match check_args(spec, &raw, env, cur.line, head) {
            Ok(args) => {
                env.insert(name.clone(), spec.ret);
                if spec.ret == Ty::Bolyai {
                    for (suffix, ty) in BOLYAI_PARTS {
                        env.insert(format!("{name}.{suffix}"), ty);
                    }
                }
                return Ok(StmtKind::Binding(Binding {
                    kind: kind.to_string(),
                    name,
                    op: spec.id,
                    keyword,
                    args,
                }));
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    if candidates.len() == 1 {
        Err(first_err.unwrap())
    } else {
        Err(ParseError::new(
            ErrorKind::Type,
            cur.line,
            head.col,
            &head.text,
            format!("no form of `{kind}` accepts these arguments"),
        ))
    }
}

fn signature(spec: &OpSpec) -> String {
    let mut s = String::from(spec.kind);
    if let Some(k) = spec.keyword {
        s.push(' ');
        s.push_str(k);
    }
    for a in spec.args {
        s.push(' ');
        s.push_str(a.describe());
    }
    s
}

fn check_args(
    spec: &OpSpec,
    raw: &[RawArg],
    env: &HashMap<String, Ty>,
    line: usize,
    head: &Token,
) -> Result<Vec<Arg>, ParseError> {
    if raw.len() != spec.args.len() {
        return Err(ParseError::new(
            ErrorKind::Type,
            line,
            head.col,
            &head.text,
            format!(
                "expected {} argument(s), got {} (usage: {})",
                spec.args.len(),
                raw.len(),
                signature(spec)
            ),
        ));
    }
    let mut out = Vec::with_capacity(raw.len());
    for (slot, r) in spec.args.iter().zip(raw) {
        let mismatch = |found: &str| {
            ParseError::new(
                ErrorKind::Type,
                line,
                r.col,
                &r.text,
                format!("expected {}, found {found} (usage: {})", slot.describe(), signature(spec)),
            )
        };
        let arg = match (&r.arg, slot) {
            (Arg::Name(n), Slot::Side) if n == "a" || n == "b" => Arg::Word(n.clone()),
            (Arg::Name(n), _) => {
                let ty = env[n];
                if !slot.accepts(ty) {
                    return Err(mismatch(&format!("{} `{n}`", ty.as_str())));
                }
                Arg::Name(n.clone())
            }
            (Arg::Num(x), Slot::Num) => Arg::Num(*x),
            (Arg::Num(x), Slot::Index) if *x >= 0.0 && x.fract() == 0.0 => Arg::Num(*x),
            (Arg::Num(_), _) => return Err(mismatch("a number")),
            (Arg::Tuple(v), Slot::Tuple2) if v.len() == 2 => r.arg.clone(),
            (Arg::Tuple(v), Slot::Tuple3) if v.len() == 3 => r.arg.clone(),
            (Arg::Tuple(v), _) => return Err(mismatch(&format!("a {}-tuple", v.len()))),
            (Arg::Word(_), _) => return Err(mismatch("a word")),
        };
        out.push(arg);
    }
    Ok(out)
}

fn parse_arg(cur: &mut Cursor) -> Result<RawArg, ParseError> {
    let start = cur.peek().cloned().unwrap();
    match &start.tok {
        Tok::LParen => {
            cur.next();
            let mut v = vec![cur.signed_number("a number")?];
            while cur.peek_tok() == Some(&Tok::Comma) {
                cur.next();
                v.push(cur.signed_number("a number")?);
            }
            cur.expect(Tok::RParen, "`)`")?;
            Ok(RawArg { arg: Arg::Tuple(v), col: start.col, text: start.text })
        }
        Tok::Minus | Tok::Num(_) => {
            let x = cur.signed_number("a number")?;
            Ok(RawArg { arg: Arg::Num(x), col: start.col, text: start.text })
        }
        Tok::Ident(n) => {
            cur.next();
            Ok(RawArg { arg: Arg::Name(n.clone()), col: start.col, text: start.text })
        }
        _ => Err(cur.syntax("expected an argument")),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ExprTy {
    Number,
    Label,
}

fn parse_assert(cur: &mut Cursor, env: &HashMap<String, Ty>) -> Result<StmtKind, ParseError> {
    let lhs_col = cur.peek().map(|t| (t.col, t.text.clone()));
    let lhs = parse_expr(cur, env, 0)?;
    if cur.at_end() || matches!(cur.peek_tok(), Some(Tok::Ident(w)) if w == "tol") {
        return Err(cur.syntax(
            "expected a second expression (parenthesize a leading minus: `(-x)`)",
        ));
    }
    let rhs = parse_expr(cur, env, 0)?;
    match cur.peek_tok() {
        Some(Tok::Ident(w)) if w == "tol" => {
            cur.next();
        }
        _ => return Err(cur.syntax("expected `tol`")),
    }
    let tol = match cur.peek_tok() {
        Some(Tok::Num(x)) => {
            let x = *x;
            cur.next();
            x
        }
        _ => return Err(cur.syntax("expected a nonnegative tolerance")),
    };
    cur.finish()?;
    let (lt, rt) = (expr_type(&lhs, env), expr_type(&rhs, env));
    match (lt, rt) {
        (Some(a), Some(b)) if a == b => Ok(StmtKind::Assert { lhs, rhs, tol }),
        _ => {
            let (col, text) = lhs_col.unwrap();
            Err(ParseError::new(
                ErrorKind::Type,
                cur.line,
                col,
                &text,
                "assertions compare two numbers or two labels",
            ))
        }
    }
}

/// `None` when labels are mixed into arithmetic.
fn expr_type(e: &Expr, env: &HashMap<String, Ty>) -> Option<ExprTy> {
    match e {
        Expr::Str(_) => Some(ExprTy::Label),
        Expr::Name(n) if env.get(n) == Some(&Ty::Label) => Some(ExprTy::Label),
        Expr::Name(_) | Expr::Num(_) | Expr::Pi => Some(ExprTy::Number),
        Expr::Neg(a) | Expr::Call(_, a) => (expr_type(a, env)? == ExprTy::Number).then_some(ExprTy::Number),
        Expr::Bin(_, a, b) => (expr_type(a, env)? == ExprTy::Number && expr_type(b, env)? == ExprTy::Number)
            .then_some(ExprTy::Number),
    }
}

fn infix(tok: Option<&Tok>) -> Option<(BinOp, u8, u8)> {
    match tok? {
        Tok::Plus => Some((BinOp::Add, 10, 11)),
        Tok::Minus => Some((BinOp::Sub, 10, 11)),
        Tok::Star => Some((BinOp::Mul, 20, 21)),
        Tok::Slash => Some((BinOp::Div, 20, 21)),
        Tok::Caret => Some((BinOp::Pow, 31, 30)),
        _ => None,
    }
}

fn parse_expr(cur: &mut Cursor, env: &HashMap<String, Ty>, min_bp: u8) -> Result<Expr, ParseError> {
    let mut lhs = parse_prefix(cur, env)?;
    while let Some((op, lbp, rbp)) = infix(cur.peek_tok()) {
        if lbp < min_bp {
            break;
        }
        cur.next();
        let rhs = parse_expr(cur, env, rbp)?;
        lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
    }
    Ok(lhs)
}

fn parse_prefix(cur: &mut Cursor, env: &HashMap<String, Ty>) -> Result<Expr, ParseError> {
    let Some(t) = cur.peek().cloned() else {
        return Err(cur.syntax("expected an expression"));
    };
    match &t.tok {
        Tok::Num(x) => {
            cur.next();
            Ok(Expr::Num(*x))
        }
        Tok::Str(s) => {
            cur.next();
            Ok(Expr::Str(s.clone()))
        }
        Tok::Minus => {
            cur.next();
            Ok(Expr::Neg(Box::new(parse_expr(cur, env, 25)?)))
        }
        Tok::LParen => {
            cur.next();
            let e = parse_expr(cur, env, 0)?;
            cur.expect(Tok::RParen, "`)`")?;
            Ok(e)
        }
        Tok::Ident(n) => {
            cur.next();
            if let Some(func) = Func::from_name(n) {
                if cur.peek_tok() == Some(&Tok::LParen) {
                    cur.next();
                    let e = parse_expr(cur, env, 0)?;
                    cur.expect(Tok::RParen, "`)`")?;
                    return Ok(Expr::Call(func, Box::new(e)));
                }
                return Err(cur.syntax(format!("expected `(` after `{n}`")));
            }
            if n == "pi" {
                return Ok(Expr::Pi);
            }
            match env.get(n) {
                None => Err(ParseError::new(
                    ErrorKind::Unresolved,
                    cur.line,
                    t.col,
                    &t.text,
                    format!("`{n}` is not defined"),
                )),
                Some(Ty::Number) | Some(Ty::Label) => Ok(Expr::Name(n.clone())),
                Some(ty) => Err(ParseError::new(
                    ErrorKind::Type,
                    cur.line,
                    t.col,
                    &t.text,
                    format!("`{n}` is a {}; assertions compare numbers or labels", ty.as_str()),
                )),
            }
        }
        _ => Err(cur.syntax("expected an expression")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> ParseError {
        parse(text).unwrap_err()
    }

    #[test]
    fn binding_and_assertion() {
        let s = parse("point P = (0.5, 0)\n").unwrap();
        assert_eq!(s.statements.len(), 1);
        match &s.statements[0].kind {
            StmtKind::Binding(b) => {
                assert_eq!(b.op, "point.literal");
                assert_eq!(b.args, vec![Arg::Tuple(vec![0.5, 0.0])]);
            }
            other => panic!("{other:?}"),
        }
        let s = parse("hpoint O = (0, 0)\nhpoint P = (0.5, 0)\nhdist d = O P\nassert_eq d 1.0986122886681098 tol 1e-9")
            .unwrap();
        assert_eq!(s.statements.len(), 4);
        assert!(matches!(s.statements[3].kind, StmtKind::Assert { tol, .. } if tol == 1e-9));
        match &s.statements[2].kind {
            StmtKind::Binding(b) => assert_eq!((b.kind.as_str(), b.op), ("measure", "measure.hdist")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unresolved_reference() {
        let e = err("hpoint P = (0.1, 0)\n\nhdist d = P Q\n");
        assert_eq!((e.kind, e.line, e.col, e.token.as_str()), (ErrorKind::Unresolved, 3, 13, "Q"));
    }

    #[test]
    fn diagnostics() {
        let e = err("point P = (0.5, 0)\npoint P = (1, 1)");
        assert_eq!((e.kind, e.line, e.col), (ErrorKind::Duplicate, 2, 7));
        let e = err("frobnicate x = 1");
        assert_eq!((e.kind, e.col), (ErrorKind::UnknownOp, 1));
        let e = err("point P = (0.5, 0)\nmeasure m = nosuch P");
        assert_eq!((e.kind, e.line, e.col), (ErrorKind::UnknownOp, 2, 13));
        let e = err("point P = (0.5 0)");
        assert_eq!((e.kind, e.col, e.token.as_str()), (ErrorKind::Syntax, 16, "0"));
        let e = err("hpoint P = (0.5, 0)\npoint Q = foot P P");
        assert_eq!((e.kind, e.line, e.col), (ErrorKind::Type, 2, 16));
        let e = err("point P = (0.5, 0)\nassert_eq P 1 tol 1e-9");
        assert_eq!(e.kind, ErrorKind::Type);
        let e = err("measure m = circumference 1\nassert_eq m -1 tol 1e-9");
        assert_eq!(e.kind, ErrorKind::Syntax);
        let e = err("render");
        assert_eq!((e.kind, e.col), (ErrorKind::Syntax, 7));
        let e = err("render out.svg width zero");
        assert_eq!(e.col, 22);
        let e = err("point pi = (0, 0)");
        assert_eq!(e.kind, ErrorKind::Syntax);
        let e = err("tol nonsense 1e-9");
        assert_eq!((e.kind, e.col), (ErrorKind::Syntax, 5));
    }

    #[test]
    fn expressions() {
        let s = parse("measure c = circumference 1\nassert_eq c 2*pi*sinh(1) tol 1e-12").unwrap();
        match &s.statements[1].kind {
            StmtKind::Assert { lhs, rhs, .. } => {
                assert_eq!(lhs, &Expr::Name("c".into()));
                assert_eq!(
                    rhs,
                    &Expr::Bin(
                        BinOp::Mul,
                        Box::new(Expr::Bin(BinOp::Mul, Box::new(Expr::Num(2.0)), Box::new(Expr::Pi))),
                        Box::new(Expr::Call(Func::Sinh, Box::new(Expr::Num(1.0))))
                    )
                );
            }
            other => panic!("{other:?}"),
        }
        let s = parse("assert_eq -2^2 (-4) tol 0").unwrap();
        match &s.statements[0].kind {
            StmtKind::Assert { lhs, .. } => assert!(matches!(lhs, Expr::Neg(_))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_directives() {
        let s = parse("# header\n\nmodel klein # trailing\ntol assert 1e-8\nrender fig.svg width 400\n").unwrap();
        assert_eq!(s.statements.len(), 3);
        assert_eq!(s.statements[0].line, 3);
        assert_eq!(
            s.statements[2].kind,
            StmtKind::Directive(Directive::Render { path: "fig.svg".into(), width: Some(400) })
        );
    }

    #[test]
    fn bolyai_parts_bound() {
        let s = parse(
            "hpoint A = (-0.5, -0.2)\nhpoint B = (0.6, -0.3)\nhline l = A B\nhpoint P = (0.1, 0.4)\nbolyai K = l P\nhdist qr = K.q K.r\n",
        );
        assert!(s.is_ok(), "{s:?}");
    }

    #[test]
    fn print_round_trip() {
        let text = "point A = (0, -0.5)\npoint B = (1e-3, 2)\nline l = A B\npoint F = foot A l\nmeasure d = dist A F\nhpoint O = (0, 0)\nhline m = ideal 0 2.5\nhpoint X = foot O m\nhline n = parallel X m a\nassert_eq d (-(1 - 2)) tol 1e-9\nmodel klein\nrender a.svg\n";
        let s = parse(text).unwrap();
        let printed = s.to_string();
        assert_eq!(parse(&printed).unwrap(), s, "{printed}");
    }
}
