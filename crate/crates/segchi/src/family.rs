//! JSON family files.
//!
//! Rationals are stored as canonical `n` / `n/d` strings so files are exact
//! and diffable; emitting the same family always yields the same bytes.

use serde::{Deserialize, Serialize};

use segchi_core::geometry::{GeometryError, ProbeOrigin};
use segchi_core::rational::RationalParseError;
use segchi_core::{Construction, Point, Probe, ProbeKind, Rational, Rect, Role, Segment};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FamilyError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid value in {field}: {message}")]
    Value { field: String, message: String },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    schema: u32,
    k: usize,
    tilde: bool,
    rect: RectDto,
    segments: Vec<SegmentDto>,
    probes: Vec<ProbeDto>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RectDto {
    x0: String,
    y0: String,
    x1: String,
    y1: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RoleDto {
    Base,
    Diagonal,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentDto {
    id: usize,
    role: RoleDto,
    path: Vec<u32>,
    p: [String; 2],
    q: [String; 2],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindDto {
    Base,
    Lower,
    Upper,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbeDto {
    id: usize,
    kind: KindDto,
    origin: Option<[usize; 2]>,
    rect: RectDto,
    root: RectDto,
    pierced: Vec<usize>,
}

fn rect_dto(r: &Rect) -> RectDto {
    RectDto { x0: r.x0().to_string(), y0: r.y0().to_string(), x1: r.x1().to_string(), y1: r.y1().to_string() }
}

fn point_dto(p: &Point) -> [String; 2] {
    [p.x.to_string(), p.y.to_string()]
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit_family(c: &Construction) -> String {
    let file = FamilyFile {
        schema: SCHEMA_VERSION,
        k: c.k,
        tilde: c.tilde,
        rect: rect_dto(&c.rect),
        segments: c
            .segments
            .iter()
            .map(|s| SegmentDto {
                id: s.id(),
                role: match s.role() {
                    Role::Base => RoleDto::Base,
                    Role::Diagonal => RoleDto::Diagonal,
                },
                path: s.path().to_vec(),
                p: point_dto(s.p()),
                q: point_dto(s.q()),
            })
            .collect(),
        probes: c
            .probes
            .iter()
            .map(|p| ProbeDto {
                id: p.id,
                kind: match p.kind {
                    ProbeKind::BaseProbe => KindDto::Base,
                    ProbeKind::Lower => KindDto::Lower,
                    ProbeKind::Upper => KindDto::Upper,
                },
                origin: p.origin.map(|o| [o.outer, o.inner]),
                rect: rect_dto(&p.rect),
                root: rect_dto(&p.root),
                pierced: p.pierced.clone(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("family serialises");
    text.push('\n');
    text
}

fn value_error(field: impl Into<String>, message: impl ToString) -> FamilyError {
    FamilyError::Value { field: field.into(), message: message.to_string() }
}

fn rational(field: &str, text: &str) -> Result<Rational, FamilyError> {
    Rational::parse_canonical(text).map_err(|e: RationalParseError| value_error(field, e))
}

fn rect(field: &str, dto: &RectDto) -> Result<Rect, FamilyError> {
    Rect::new(
        rational(&format!("{field}.x0"), &dto.x0)?,
        rational(&format!("{field}.y0"), &dto.y0)?,
        rational(&format!("{field}.x1"), &dto.x1)?,
        rational(&format!("{field}.y1"), &dto.y1)?,
    )
    .map_err(|e: GeometryError| value_error(field, e))
}

fn point(field: &str, dto: &[String; 2]) -> Result<Point, FamilyError> {
    Ok(Point::new(rational(&format!("{field}[0]"), &dto[0])?, rational(&format!("{field}[1]"), &dto[1])?))
}

/// Inverse of [`emit_family`]. Only structural validity is checked here;
/// probe conditions are the verifier's job.
pub fn parse_family(text: &str) -> Result<Construction, FamilyError> {
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| FamilyError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.schema != SCHEMA_VERSION {
        return Err(value_error("schema", format!("unsupported version {}", file.schema)));
    }
    if file.k < 1 {
        return Err(value_error("k", "level must be at least 1"));
    }
    if file.tilde && !file.probes.is_empty() {
        return Err(value_error("probes", "augmented families carry no probes"));
    }
    let outer = rect("rect", &file.rect)?;

    let mut segments = Vec::with_capacity(file.segments.len());
    for (i, dto) in file.segments.iter().enumerate() {
        let field = format!("segments[{i}]");
        if dto.id != i {
            return Err(value_error(format!("{field}.id"), format!("expected {i}, found {}", dto.id)));
        }
        let role = match dto.role {
            RoleDto::Base => Role::Base,
            RoleDto::Diagonal => Role::Diagonal,
        };
        let p = point(&format!("{field}.p"), &dto.p)?;
        let q = point(&format!("{field}.q"), &dto.q)?;
        let s = Segment::new(p, q, i, role, dto.path.clone()).map_err(|e| value_error(&field, e))?;
        segments.push(s);
    }

    let mut probes = Vec::with_capacity(file.probes.len());
    for (i, dto) in file.probes.iter().enumerate() {
        let field = format!("probes[{i}]");
        if dto.id != i {
            return Err(value_error(format!("{field}.id"), format!("expected {i}, found {}", dto.id)));
        }
        if let Some(&bad) = dto.pierced.iter().find(|&&id| id >= segments.len()) {
            return Err(value_error(format!("{field}.pierced"), format!("unknown segment {bad}")));
        }
        probes.push(Probe {
            rect: rect(&format!("{field}.rect"), &dto.rect)?,
            root: rect(&format!("{field}.root"), &dto.root)?,
            kind: match dto.kind {
                KindDto::Base => ProbeKind::BaseProbe,
                KindDto::Lower => ProbeKind::Lower,
                KindDto::Upper => ProbeKind::Upper,
            },
            id: i,
            origin: dto.origin.map(|[outer, inner]| ProbeOrigin { outer, inner }),
            pierced: dto.pierced.clone(),
        });
    }
    Ok(Construction { k: file.k, rect: outer, segments, probes, tilde: file.tilde })
}
