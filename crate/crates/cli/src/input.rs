//! Coefficient and point arguments: a file of `name = expr` lines, or an
//! inline comma-separated list.

use std::path::Path;

use cubicfold::expr::{parse_assignments, parse_expr, Expr, ParseError};

/// Parameters the coefficients may depend on.
pub const PARAMS: [&str; 2] = ["s3", "s4"];

/// Coefficients of the fibre surface over `k(s3, s4)`.
pub const PAPER_COEFFS: [&str; 4] = [
    "(s3 - s4)*s3*s4",
    "-(s3 - 1)*s3",
    "(s4 - 1)*s4",
    "-((s3 - s4)*s3*s4 - (s3 - 1)*s3 + (s4 - 1)*s4)",
];

fn located(label: &str, e: &ParseError) -> String {
    format!("{label}:{}:{}: {}", e.line, e.col, e.kind)
}

fn parse_list(label: &str, src: &str) -> Result<Vec<Expr>, String> {
    let mut out = Vec::new();
    let mut offset = 0;
    for item in src.split(',') {
        let e = parse_expr(item, &PARAMS).map_err(|mut e| {
            e.col += offset;
            located(label, &e)
        })?;
        out.push(e);
        offset += item.len() + 1;
    }
    Ok(out)
}

fn four(label: &str, v: Vec<Expr>) -> Result<[Expr; 4], String> {
    let n = v.len();
    v.try_into().map_err(|_| format!("{label}: expected 4 entries, found {n}"))
}

/// Reads `a1 .. a4` from a file, or four inline expressions.
pub fn read_coeffs(arg: &str) -> Result<[Expr; 4], String> {
    let path = Path::new(arg);
    if !path.is_file() {
        return four("--coeffs", parse_list("--coeffs", arg)?);
    }
    let label = path.display().to_string();
    let src = std::fs::read_to_string(path).map_err(|e| format!("{label}: {e}"))?;
    let mut slots: [Option<Expr>; 4] = Default::default();
    for (name, e) in parse_assignments(&src, &PARAMS).map_err(|e| located(&label, &e))? {
        let k = match name.as_str() {
            "a1" => 0,
            "a2" => 1,
            "a3" => 2,
            "a4" => 3,
            other => return Err(format!("{label}: unknown coefficient {other:?}; expected a1, a2, a3, a4")),
        };
        if slots[k].replace(e).is_some() {
            return Err(format!("{label}: {name} is assigned twice"));
        }
    }
    let missing: Vec<String> = (0..4).filter(|&k| slots[k].is_none()).map(|k| format!("a{}", k + 1)).collect();
    if !missing.is_empty() {
        return Err(format!("{label}: missing {}", missing.join(", ")));
    }
    Ok(slots.map(|s| s.expect("checked above")))
}

pub fn read_point(arg: &str) -> Result<[Expr; 4], String> {
    four("--point", parse_list("--point", arg)?)
}

pub fn paper_coeffs() -> [Expr; 4] {
    PAPER_COEFFS.map(|s| parse_expr(s, &PARAMS).expect("fixed expressions parse"))
}

pub fn parametric(exprs: &[Expr]) -> bool {
    exprs.iter().any(|e| PARAMS.iter().any(|p| e.mentions(p)))
}
