//! Check records for the `cubic` commands.

use serde_json::{json, Value};

use super::{unit_points, CubeRootOf, DiagonalCubic, OrbitStructure, Partition, Rationality, SurfaceError, SurfaceLine};
use crate::fields::{CubeTest, Field};
use crate::report::{CheckRecord, Mode, Status};

fn show_root<F: Field>(f: &F, c: &CubeRootOf<F::Elem>) -> String {
    match c {
        CubeRootOf::Explicit(e) => f.display(e).to_string(),
        CubeRootOf::Symbolic { radicand, branch: 0 } => format!("cbrt({})", f.display(radicand)),
        CubeRootOf::Symbolic { radicand, branch: 1 } => format!("omega*cbrt({})", f.display(radicand)),
        CubeRootOf::Symbolic { radicand, .. } => format!("omega^2*cbrt({})", f.display(radicand)),
    }
}

fn show_line<F: Field>(f: &F, l: &SurfaceLine<F::Elem>) -> Value {
    let Partition { first: (i, j), second: (h, k) } = l.partition;
    json!({
        "partition": l.partition.label(),
        "equations": format!(
            "x{} = ({}) x{}, x{} = ({}) x{}",
            i + 1,
            show_root(f, &l.lambda),
            j + 1,
            h + 1,
            show_root(f, &l.mu),
            k + 1
        ),
    })
}

fn test_str(t: CubeTest) -> &'static str {
    match t {
        CubeTest::Cube => "cube",
        CubeTest::NotCube => "not_cube",
        CubeTest::Unknown => "unknown",
    }
}

/// The 27 lines: count, membership, the intersection graph and which
/// lines are defined over the coefficient field.
pub fn line_records<F: Field>(s: &DiagonalCubic<F>) -> Result<Vec<CheckRecord>, SurfaceError> {
    let f = s.field();
    let lines = s.lines27()?;
    let shown: Vec<Value> = lines.iter().map(|l| show_line(f, l)).collect();
    let mut out = vec![CheckRecord::new("cubic/lines/count", "27 lines", Mode::Exact, Status::from_bool(lines.len() == 27))
        .with_detail(json!({"summary": format!("{} lines", lines.len())}))];

    let off: Vec<Value> = lines
        .iter()
        .zip(&shown)
        .filter(|(l, _)| !s.line_on_surface(l))
        .map(|(_, v)| v.clone())
        .collect();
    out.push(
        CheckRecord::new("cubic/lines/on_surface", "27 lines", Mode::Exact, Status::from_bool(off.is_empty()))
            .with_witnesses(if off.is_empty() { shown.clone() } else { off.clone() })
            .with_detail(json!({"summary": format!("{} of {} lines lie on S", lines.len() - off.len(), lines.len())})),
    );

    let meets = s.meeting_counts(&lines);
    let (status, summary, bad) = match &meets {
        None => (
            Status::Inconclusive,
            "a cube test relating the symbolic roots is undecided".to_string(),
            vec![],
        ),
        Some(m) => {
            let mut d = m.clone();
            d.sort_unstable();
            d.dedup();
            let bad: Vec<Value> = m
                .iter()
                .zip(&shown)
                .filter(|(c, _)| **c != 10)
                .map(|(c, l)| json!({"line": l, "meets": c}))
                .collect();
            (Status::from_bool(bad.is_empty()), format!("each line meets {d:?} others"), bad)
        }
    };
    out.push(
        CheckRecord::new("cubic/lines/intersections", "27 lines", Mode::Exact, status)
            .with_witnesses(bad)
            .with_detail(json!({"summary": summary})),
    );

    let fams = s.k_rational_lines()?;
    let known = fams.iter().all(|fam| fam.orbits != OrbitStructure::Unknown);
    let families: Vec<Value> = fams
        .iter()
        .map(|fam| {
            json!({
                "partition": fam.partition.label(),
                "tests": fam.tests.map(test_str),
                "mixed_tests": fam.mixed_tests.map(test_str),
                "orbits": fam.orbits,
                "rational_lines": fam.rational_lines.iter().map(|l| show_line(f, l)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let rational: usize = fams.iter().map(|fam| fam.rational_lines.len()).sum();
    out.push(
        CheckRecord::new(
            "cubic/lines/rational",
            "rational lines",
            Mode::Exact,
            if known { Status::Verified } else { Status::Inconclusive },
        )
        .with_detail(json!({"summary": format!("{rational} lines over the coefficient field"), "families": families})),
    );
    Ok(out)
}

pub fn eckardt_records<F: Field>(s: &DiagonalCubic<F>) -> Result<Vec<CheckRecord>, SurfaceError> {
    let f = s.field();
    let pts = s.eckardt_points()?;
    let rational = pts.iter().filter(|p| p.rational == CubeTest::Cube).count();
    let shown: Vec<Value> = pts
        .iter()
        .map(|p| {
            let (i, j) = p.zero_pair;
            let (h, k) = p.other_pair;
            json!({
                "point": format!("x{} = x{} = 0, x{} = ({}) x{}", i + 1, j + 1, h + 1, show_root(f, &p.ratio), k + 1),
                "verified": p.verified,
            })
        })
        .collect();
    let failed: Vec<Value> = pts.iter().zip(&shown).filter(|(p, _)| !p.verified).map(|(_, v)| v.clone()).collect();
    Ok(vec![
        CheckRecord::new("cubic/eckardt/count", "Eckardt points", Mode::Exact, Status::from_bool(pts.len() == 18))
            .with_detail(json!({"summary": format!("{} points, {rational} over the coefficient field", pts.len())})),
        CheckRecord::new("cubic/eckardt/tangent_sections", "Eckardt points", Mode::Exact, Status::from_bool(failed.is_empty()))
            .with_witnesses(if failed.is_empty() { shown } else { failed.clone() })
            .with_detail(json!({
                "summary": format!("{} of {} tangent sections split into three concurrent lines", pts.len() - failed.len(), pts.len()),
            })),
    ])
}

/// The rationality verdict and one record per pairing cube test.
pub fn rationality_records<F: Field>(
    s: &DiagonalCubic<F>,
    point: Option<&[F::Elem; 4]>,
) -> Result<Vec<CheckRecord>, SurfaceError> {
    let f = s.field();
    let res = s.rationality_test(point)?;
    let verdict = match res.verdict {
        Rationality::Rational => "rational",
        Rationality::NotRational => "not_rational",
        Rationality::Inconclusive => "inconclusive",
    };
    let status = if res.verdict == Rationality::Inconclusive {
        Status::Inconclusive
    } else {
        Status::Verified
    };
    let mut out = vec![CheckRecord::new("cubic/rationality/verdict", "Theorem (final)", Mode::Exact, status)
        .with_witnesses(
            res.point
                .iter()
                .map(|p| json!({"rational_point": p.iter().map(|c| f.display(c).to_string()).collect::<Vec<_>>()}))
                .collect(),
        )
        .with_detail(json!({
            "summary": format!("{verdict}: {}", res.certificate),
            "verdict": verdict,
            "certificate": res.certificate,
        }))];
    for p in &res.pairings {
        let Partition { first: (i, j), second: (h, k) } = p.partition;
        let status = if p.test == CubeTest::Unknown {
            Status::Inconclusive
        } else {
            Status::Verified
        };
        out.push(
            CheckRecord::new(
                format!("cubic/rationality/pairing{}", p.partition.label()),
                "Theorem (final)",
                Mode::Exact,
                status,
            )
            .with_detail(json!({
                "summary": format!("a{}a{}/(a{}a{}) is {}", i + 1, j + 1, h + 1, k + 1, test_str(p.test).replace('_', " ")),
                "value": f.display(&p.value).to_string(),
                "test": test_str(p.test),
            })),
        );
    }
    Ok(out)
}

/// The 27 points with coordinates cube roots of unity, each checked on `s`.
pub fn unit_point_record<F: Field>(s: &DiagonalCubic<F>) -> CheckRecord {
    let f = s.field();
    let pts = unit_points(f);
    let off: Vec<Value> = pts
        .iter()
        .filter(|p| !s.contains(*p))
        .map(|p| json!(p.iter().map(|c| f.display(c).to_string()).collect::<Vec<_>>()))
        .collect();
    CheckRecord::new("cubic/unit_points", "unit points", Mode::Exact, Status::from_bool(off.is_empty()))
        .with_witnesses(off.clone())
        .with_detail(json!({"summary": format!("{} of {} unit points lie on S", pts.len() - off.len(), pts.len())}))
}
