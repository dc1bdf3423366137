//! Output schemas and the three renderings: JSON lines, CSV, aligned text.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

use crate::arith::{EquilateralRow, NonuniformEntry, RightTriangle, Verdict, Vertex};
use crate::cyclotomic::subfield_degree;
use crate::error::Result;
use crate::hermitian::{Angle, TriangleShape};
use crate::triangle::{CandidateGroup, CandidateJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

/// A record with a fixed column layout.
pub trait Record: Serialize {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn write_records<R: Record>(out: &mut dyn Write, format: Format, rows: &[R]) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in rows {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(R::header())?;
            for r in rows {
                w.write_record(r.cells())?;
            }
            w.flush()?;
        }
        Format::Pretty => {
            let cells: Vec<Vec<String>> = rows.iter().map(|r| r.cells()).collect();
            let mut widths: Vec<usize> = R::header().iter().map(|h| h.chars().count()).collect();
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |out: &mut dyn Write, row: &[String]| -> io::Result<()> {
                let last = row.len() - 1;
                for (i, (c, w)) in row.iter().zip(&widths).enumerate() {
                    if i == last {
                        writeln!(out, "{c}")?;
                    } else {
                        write!(out, "{c}{}  ", " ".repeat(w - c.chars().count()))?;
                    }
                }
                Ok(())
            };
            let header: Vec<String> = R::header().iter().map(|h| h.to_string()).collect();
            line(out, &header)?;
            for row in &cells {
                line(out, row)?;
            }
        }
    }
    Ok(())
}

/// One candidate with its field data and verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateRecord {
    pub angles: [String; 3],
    pub psi: String,
    pub orders: [i64; 3],
    pub factor_exponents: [i64; 3],
    pub det_sign: i8,
    pub e_lower_degree: usize,
    pub e_upper_degree: usize,
    pub e_triangle_degree: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl CandidateRecord {
    pub fn new(
        c: &CandidateGroup,
        det_sign: i8,
        degrees: [usize; 3],
        verdict: Verdict,
    ) -> Self {
        let j = CandidateJson::from(c);
        Self {
            angles: j.angles,
            psi: j.psi,
            orders: j.orders,
            factor_exponents: c.exponents().map(i64::from),
            det_sign,
            e_lower_degree: degrees[0],
            e_upper_degree: degrees[1],
            e_triangle_degree: degrees[2],
            verdict,
        }
    }
}

impl From<&NonuniformEntry> for CandidateRecord {
    fn from(e: &NonuniformEntry) -> Self {
        Self::new(
            &e.candidate,
            e.det_sign,
            [e.lower_degree, e.upper_degree, e.triangle_degree],
            e.verdict.clone(),
        )
    }
}

impl Record for CandidateRecord {
    fn header() -> &'static [&'static str] {
        &[
            "angle1", "angle2", "angle3", "psi", "order1", "order2", "order3", "exponent1", "exponent2", "exponent3",
            "det_sign", "e_lower_degree", "e_upper_degree", "e_triangle_degree", "status", "tag", "reason", "witness",
        ]
    }

    fn cells(&self) -> Vec<String> {
        let mut v: Vec<String> = self.angles.to_vec();
        v.push(self.psi.clone());
        v.extend(self.orders.iter().map(ToString::to_string));
        v.extend(self.factor_exponents.iter().map(ToString::to_string));
        v.extend([
            self.det_sign.to_string(),
            self.e_lower_degree.to_string(),
            self.e_upper_degree.to_string(),
            self.e_triangle_degree.to_string(),
            self.verdict.status.to_string(),
            self.verdict.tag.to_string(),
            self.verdict.reason.clone(),
            opt(&self.verdict.witness),
        ]);
        v
    }
}

fn vertex_text(v: Vertex) -> String {
    v.to_string()
}

/// [F′:Q] for F′ = Q(cos²θ_j, ∏cosθ_j) of the Fuchsian triangle (p, q, r).
pub fn takeuchi_field_degree(v: [Vertex; 3]) -> Result<usize> {
    let angles: [Angle; 3] = v.map(|x| match x {
        Vertex::Finite(n) => Angle::pi_over(n as i64).expect("orders are at least 2"),
        Vertex::Ideal => Angle::Ideal,
    });
    let level = TriangleShape::new(angles, num_rational::Ratio::from_integer(1)).level();
    let cs = angles.iter().map(|a| a.cos(level)).collect::<std::result::Result<Vec<_>, _>>()?;
    let mut gens: Vec<_> = cs.iter().map(|c| c * c).collect();
    gens.push(&(&cs[0] * &cs[1]) * &cs[2]);
    Ok(subfield_degree(&gens)?)
}

/// A Fuchsian triangle (p, q, r) with its Takeuchi verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuchsianRecord {
    pub p: String,
    pub q: String,
    pub r: String,
    /// [F′:Q], reported for admissible rows only.
    pub f_degree: Option<usize>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl FuchsianRecord {
    pub fn new(v: [Vertex; 3], verdict: Verdict) -> Result<Self> {
        let f_degree = if verdict.is_admissible() { Some(takeuchi_field_degree(v)?) } else { None };
        Ok(Self {
            p: vertex_text(v[0]),
            q: vertex_text(v[1]),
            r: vertex_text(v[2]),
            f_degree,
            verdict,
        })
    }

    pub fn from_right(row: &RightTriangle) -> Result<Self> {
        Self::new([Vertex::Finite(2), row.q, row.r], row.verdict())
    }
}

impl Record for FuchsianRecord {
    fn header() -> &'static [&'static str] {
        &["p", "q", "r", "f_degree", "status", "tag", "reason", "witness"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.p.clone(),
            self.q.clone(),
            self.r.clone(),
            opt(&self.f_degree),
            self.verdict.status.to_string(),
            self.verdict.tag.to_string(),
            self.verdict.reason.clone(),
            opt(&self.verdict.witness),
        ]
    }
}

impl Record for EquilateralRow {
    fn header() -> &'static [&'static str] {
        &["n", "p", "s", "sign"]
    }

    fn cells(&self) -> Vec<String> {
        vec![self.n.to_string(), self.p.to_string(), self.s.to_string(), self.sign.to_string()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobsthalRecord {
    pub n: u64,
    pub jacobsthal: u64,
    pub smallest_coprime_prime: u64,
}

impl Record for JacobsthalRecord {
    fn header() -> &'static [&'static str] {
        &["n", "jacobsthal", "smallest_coprime_prime"]
    }

    fn cells(&self) -> Vec<String> {
        vec![self.n.to_string(), self.jacobsthal.to_string(), self.smallest_coprime_prime.to_string()]
    }
}
