//! The line-oriented problem file.
//!
//! ```text
//! field 32003
//! vars a b c d
//! ideal J: a*b^2 a*c^2 b^2*c b*c^2
//! ideal I: J + b*c*d
//! point q: 0 0 0 0 1
//! matrix M: second.matrix rows F
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use fiberideals::{AlgebraError, Field, Ideal, PolyRing, Polynomial};

use crate::CliError;

/// Which coefficient field the problem asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    /// 0 for the rationals.
    pub modulus: u64,
    pub with_i: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located<T> {
    pub line: usize,
    /// 1-based column of the first character of `value`.
    pub column: usize,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDecl {
    pub path: PathBuf,
    /// Ideal whose generators index the rows, in order.
    pub rows: Option<String>,
}

/// A syntactically valid problem; names and expressions are checked by [`Problem::resolve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub ideals: Vec<(String, Vec<Located<String>>)>,
    pub points: Vec<(String, Vec<Located<String>>)>,
    pub matrices: Vec<(String, Located<MatrixDecl>)>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits on `sep`, returning trimmed pieces with their byte offsets.
fn split_with_offsets(text: &str, sep: impl Fn(char) -> bool) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if sep(c) {
            out.push((start, &text[start..i]));
            start = i + c.len_utf8();
        }
    }
    out.push((start, &text[start..]));
    out.into_iter()
        .filter_map(|(off, piece)| {
            let trimmed = piece.trim_start();
            let lead = piece.len() - trimmed.len();
            let trimmed = trimmed.trim_end();
            (!trimmed.is_empty()).then_some((off + lead, trimmed))
        })
        .collect()
}

/// Expressions of an `ideal` line. Commas separate when present; otherwise
/// whitespace does, except around binary operators.
fn split_expressions(body: &str) -> Vec<(usize, String)> {
    if body.contains(',') {
        return split_with_offsets(body, |c| c == ',')
            .into_iter()
            .map(|(o, s)| (o, s.to_string()))
            .collect();
    }
    let tokens = split_with_offsets(body, char::is_whitespace);
    let mut out: Vec<(usize, String)> = Vec::new();
    let mut glue = false;
    for (off, tok) in tokens {
        let starts_op = tok.starts_with(['+', '-', '*', '^', ')']);
        match out.last_mut() {
            Some((_, prev)) if glue || starts_op => prev.push_str(tok),
            _ => out.push((off, tok.to_string())),
        }
        glue = tok.ends_with(['+', '-', '*', '^', '(']);
    }
    out
}

/// Byte offset to 1-based character column.
fn column_of(line: &str, offset: usize) -> usize {
    line[..offset].chars().count() + 1
}

impl ProblemFile {
    /// `base` resolves relative matrix paths.
    pub fn parse(text: &str, base: &Path) -> Result<Self, CliError> {
        let mut field = None;
        let mut vars: Option<Vec<String>> = None;
        let mut ideals = Vec::new();
        let mut points = Vec::new();
        let mut matrices = Vec::new();
        let mut names: BTreeMap<String, usize> = BTreeMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("");
            let Some((kw_off, keyword)) = split_with_offsets(line, char::is_whitespace)
                .first()
                .copied()
            else {
                continue;
            };
            let rest_off = kw_off + keyword.len();
            let rest = &line[rest_off..];
            match keyword {
                "field" => {
                    if field.is_some() {
                        return Err(syntax(lineno, 1, "field declared twice"));
                    }
                    let words = split_with_offsets(rest, char::is_whitespace);
                    let Some(&(off, p)) = words.first() else {
                        return Err(syntax(
                            lineno,
                            column_of(line, rest_off),
                            "field needs a characteristic",
                        ));
                    };
                    let modulus: u64 = p.parse().map_err(|_| {
                        syntax(
                            lineno,
                            column_of(line, rest_off + off),
                            format!("bad characteristic `{p}`"),
                        )
                    })?;
                    let with_i = match words.get(1) {
                        None => false,
                        Some((_, "with-i")) => true,
                        Some(&(o, w)) => {
                            return Err(syntax(
                                lineno,
                                column_of(line, rest_off + o),
                                format!("unexpected `{w}`"),
                            ))
                        }
                    };
                    if let Some(&(o, w)) = words.get(2) {
                        return Err(syntax(
                            lineno,
                            column_of(line, rest_off + o),
                            format!("unexpected `{w}`"),
                        ));
                    }
                    field = Some(FieldSpec { modulus, with_i });
                }
                "vars" => {
                    if field.is_none() {
                        return Err(syntax(lineno, 1, "missing `field` line before `vars`"));
                    }
                    if vars.is_some() {
                        return Err(syntax(lineno, 1, "vars declared twice"));
                    }
                    let mut list = Vec::new();
                    for (o, v) in split_with_offsets(rest, |c| c.is_whitespace() || c == ',') {
                        if !is_identifier(v) {
                            return Err(syntax(
                                lineno,
                                column_of(line, rest_off + o),
                                format!("bad variable name `{v}`"),
                            ));
                        }
                        if names.insert(v.to_string(), lineno).is_some() {
                            return Err(syntax(
                                lineno,
                                column_of(line, rest_off + o),
                                format!("duplicate name `{v}`"),
                            ));
                        }
                        list.push(v.to_string());
                    }
                    if list.is_empty() {
                        return Err(syntax(lineno, column_of(line, rest_off), "no variables"));
                    }
                    vars = Some(list);
                }
                "ideal" | "point" | "matrix" => {
                    if field.is_none() {
                        return Err(syntax(
                            lineno,
                            1,
                            format!("missing `field` line before `{keyword}`"),
                        ));
                    }
                    if vars.is_none() {
                        return Err(syntax(
                            lineno,
                            1,
                            format!("missing `vars` line before `{keyword}`"),
                        ));
                    }
                    let Some(colon) = rest.find(':') else {
                        return Err(syntax(
                            lineno,
                            column_of(line, rest_off),
                            "expected `<name>:`",
                        ));
                    };
                    let name = rest[..colon].trim();
                    let name_col =
                        column_of(line, rest_off + rest[..colon].find(name).unwrap_or(0));
                    if !is_identifier(name) {
                        return Err(syntax(lineno, name_col, format!("bad name `{name}`")));
                    }
                    if let Some(prev) = names.insert(name.to_string(), lineno) {
                        return Err(syntax(
                            lineno,
                            name_col,
                            format!("duplicate name `{name}` (first used on line {prev})"),
                        ));
                    }
                    let body_off = rest_off + colon + 1;
                    let body = &line[body_off..];
                    let locate = |(o, s): (usize, String)| Located {
                        line: lineno,
                        column: column_of(line, body_off + o),
                        value: s,
                    };
                    match keyword {
                        "ideal" => {
                            let exprs: Vec<_> =
                                split_expressions(body).into_iter().map(locate).collect();
                            ideals.push((name.to_string(), exprs));
                        }
                        "point" => {
                            let coords: Vec<_> =
                                split_with_offsets(body, |c| c.is_whitespace() || c == ',')
                                    .into_iter()
                                    .map(|(o, s)| locate((o, s.to_string())))
                                    .collect();
                            if coords.is_empty() {
                                return Err(syntax(
                                    lineno,
                                    column_of(line, body_off),
                                    "point has no coordinates",
                                ));
                            }
                            points.push((name.to_string(), coords));
                        }
                        _ => {
                            let words = split_with_offsets(body, char::is_whitespace);
                            let decl = match words.as_slice() {
                                [(o, path)] => (o, path, None),
                                [(o, path), (_, "rows"), (_, rows)] => {
                                    (o, path, Some(rows.to_string()))
                                }
                                [] => {
                                    return Err(syntax(
                                        lineno,
                                        column_of(line, body_off),
                                        "matrix needs a path",
                                    ))
                                }
                                _ => {
                                    return Err(syntax(
                                        lineno,
                                        column_of(line, body_off),
                                        "expected `<path>` or `<path> rows <ideal>`",
                                    ))
                                }
                            };
                            matrices.push((
                                name.to_string(),
                                Located {
                                    line: lineno,
                                    column: column_of(line, body_off + decl.0),
                                    value: MatrixDecl {
                                        path: base.join(decl.1),
                                        rows: decl.2,
                                    },
                                },
                            ));
                        }
                    }
                }
                other => {
                    return Err(syntax(
                        lineno,
                        column_of(line, kw_off),
                        format!("unknown keyword `{other}`"),
                    ));
                }
            }
        }
        let field = field.ok_or_else(|| syntax(1, 1, "missing `field` line"))?;
        let vars = vars.ok_or_else(|| syntax(1, 1, "missing `vars` line"))?;
        Ok(Self {
            field,
            vars,
            ideals,
            points,
            matrices,
        })
    }
}

/// A problem with every expression parsed over a concrete field.
#[derive(Clone, Debug)]
pub struct Problem<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub ideals: BTreeMap<String, Ideal<F>>,
    pub points: BTreeMap<String, Vec<F::Elem>>,
    pub matrices: BTreeMap<String, Located<MatrixDecl>>,
}

fn algebra_at(e: AlgebraError, line: usize, column: usize) -> CliError {
    match e {
        AlgebraError::Parse { column: c, message } => {
            syntax(line, column + c.saturating_sub(1), message)
        }
        other => CliError::At {
            line,
            column,
            source: other,
        },
    }
}

/// Splits at `+` outside parentheses.
fn top_level_summands(expr: &str) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in expr.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(expr[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(expr[start..].trim());
    out
}

impl<F: Field> Problem<F> {
    pub fn resolve(file: &ProblemFile, ring: PolyRing<F>) -> Result<Self, CliError> {
        let ring = Arc::new(ring);
        let mut ideals: BTreeMap<String, Ideal<F>> = BTreeMap::new();
        for (name, exprs) in &file.ideals {
            let mut gens: Vec<Polynomial<F>> = Vec::new();
            for expr in exprs {
                let summands = top_level_summands(&expr.value);
                let mut rest = Vec::new();
                for s in summands {
                    match ideals.get(s) {
                        Some(other) => gens.extend(other.generators().iter().cloned()),
                        None if ring.var_index(s).is_none()
                            && is_identifier(s)
                            && !is_constant_name(s) =>
                        {
                            return Err(CliError::UnknownName {
                                line: expr.line,
                                column: expr.column,
                                name: s.to_string(),
                            })
                        }
                        None => rest.push(s),
                    }
                }
                if !rest.is_empty() {
                    let text = rest.join("+");
                    gens.push(
                        ring.parse(&text)
                            .map_err(|e| algebra_at(e, expr.line, expr.column))?,
                    );
                }
            }
            let ideal = Ideal::new(ring.clone(), gens).map_err(CliError::Algebra)?;
            ideals.insert(name.clone(), ideal);
        }
        let mut points = BTreeMap::new();
        for (name, coords) in &file.points {
            let mut values = Vec::with_capacity(coords.len());
            for c in coords {
                let p = ring
                    .parse(&c.value)
                    .map_err(|e| algebra_at(e, c.line, c.column))?;
                if !p.is_constant() {
                    return Err(syntax(
                        c.line,
                        c.column,
                        format!("coordinate `{}` is not a constant", c.value),
                    ));
                }
                values.push(
                    p.terms()
                        .first()
                        .map_or_else(|| ring.field().zero(), |(v, _)| v.clone()),
                );
            }
            points.insert(name.clone(), values);
        }
        for (_, m) in &file.matrices {
            if let Some(rows) = &m.value.rows {
                if !ideals.contains_key(rows) {
                    return Err(CliError::UnknownName {
                        line: m.line,
                        column: m.column,
                        name: rows.clone(),
                    });
                }
            }
        }
        Ok(Self {
            ring,
            ideals,
            points,
            matrices: file.matrices.iter().cloned().collect(),
        })
    }

    pub fn ideal(&self, name: &str) -> Result<&Ideal<F>, CliError> {
        self.ideals
            .get(name)
            .ok_or_else(|| CliError::UnknownIdeal(name.to_string()))
    }

    pub fn point(&self, name: &str) -> Result<&[F::Elem], CliError> {
        self.points
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| CliError::UnknownPoint(name.to_string()))
    }
}

/// Names the polynomial parser treats as constants.
fn is_constant_name(s: &str) -> bool {
    s == "i"
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ProblemFile, CliError> {
        ProblemFile::parse(text, Path::new("."))
    }

    #[test]
    fn example_setup() {
        let text = "field 32003\nvars a b c d\nideal J: a*b^2 a*c^2 b^2*c b*c^2\nideal I: J + b*c*d\npoint q: 0 0 0 0 1\n";
        let file = parse(text).unwrap();
        assert_eq!(
            file.field,
            FieldSpec {
                modulus: 32003,
                with_i: false
            }
        );
        assert_eq!(file.vars, ["a", "b", "c", "d"]);
        let exprs: Vec<_> = file.ideals[1].1.iter().map(|e| e.value.as_str()).collect();
        assert_eq!(exprs, ["J+b*c*d"]);
        let field = fiberideals::PrimeField::new(32003).unwrap();
        let ring = PolyRing::new(field, &["a", "b", "c", "d"]).unwrap();
        let problem = Problem::resolve(&file, ring).unwrap();
        assert_eq!(problem.ideals["I"].generators().len(), 5);
        assert_eq!(problem.points["q"], vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn rationals_and_commas() {
        let file = parse("field 0\nvars x y\nideal I: x y\nideal K: x + y, x - y\n").unwrap();
        assert_eq!(file.field.modulus, 0);
        let exprs: Vec<_> = file.ideals[1].1.iter().map(|e| e.value.as_str()).collect();
        assert_eq!(exprs, ["x + y", "x - y"]);
        let split: Vec<_> = split_expressions("s - t  s^2 *t (s+ t)^2")
            .into_iter()
            .map(|(_, s)| s)
            .collect();
        assert_eq!(split, ["s-t", "s^2*t", "(s+t)^2"]);
    }

    #[test]
    fn diagnostics() {
        let err = parse("vars x\n").unwrap_err();
        assert!(matches!(err, CliError::Syntax { line: 1, .. }), "{err}");
        assert!(parse("field 7\nvars x x\n").is_err());
        assert!(parse("field 7\nvars x\nideal x: x\n").is_err());
        assert!(parse("field 7\nvars x\nideal I: x\nideal I: x^2\n").is_err());
        match parse("field 7\nvars x\nbogus\n").unwrap_err() {
            CliError::Syntax { line, column, .. } => assert_eq!((line, column), (3, 1)),
            other => panic!("{other}"),
        }
        let file = parse("field 7\nvars x y\nideal I: x + z\n").unwrap();
        let ring = PolyRing::new(fiberideals::PrimeField::new(7).unwrap(), &["x", "y"]).unwrap();
        match Problem::resolve(&file, ring).unwrap_err() {
            CliError::UnknownName { line, column, name } => {
                assert_eq!((line, column, name.as_str()), (3, 10, "z"));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn matrix_lines() {
        let file =
            parse("field 5\nvars s t\nideal F: s t\nmatrix M: m.txt rows F\nmatrix N: n.txt\n")
                .unwrap();
        assert_eq!(file.matrices[0].1.value.rows.as_deref(), Some("F"));
        assert_eq!(file.matrices[1].1.value.path, Path::new("./n.txt"));
        assert!(parse("field 5\nvars s\nmatrix M: a b\n").is_err());
    }
}
