//! Text and JSON rendering for each command.

use std::fmt::Write;
use std::sync::Arc;

use serde::Serialize;

use burnside::lattice::LatticeFile;
use burnside::marks::MarksExport;
use burnside::{
    brute_force_units, conjecture_check, unit_group, ConjectureReport, Error, MarksTable,
    SignVector, Subgroup, SubgroupClassList, UnitGroupResult, UnitsReport,
};

use crate::Options;

pub enum Failure {
    Core(Error),
    /// The exhaustive search disagreed; carries the rendered report.
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

pub struct Context<'a> {
    pub name: String,
    pub classes: Arc<SubgroupClassList>,
    pub opts: &'a Options,
}

impl Context<'_> {
    fn marks(&self) -> Result<MarksTable, Failure> {
        Ok(MarksTable::new(Arc::clone(&self.classes))?)
    }

    fn units(&self, marks: &MarksTable) -> Result<UnitGroupResult, Failure> {
        Ok(unit_group(marks, self.opts.seed)?)
    }

    fn header(&self) -> String {
        let g = self.classes.group();
        format!(
            "{}: |G| = {}, degree {}\n",
            self.name,
            g.order(),
            g.degree()
        )
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    text.push('\n');
    Ok(text)
}

fn structure(h: &Subgroup) -> &'static str {
    if h.is_cyclic() {
        "cyclic"
    } else if h.is_abelian() {
        "abelian"
    } else {
        "nonabelian"
    }
}

fn class_table(classes: &SubgroupClassList, with_generators: bool) -> String {
    let file = classes.to_file();
    let mut out = String::new();
    for (i, h) in classes.reps().iter().enumerate() {
        write!(
            out,
            "  H{:<3} order {:<5} size {:<5} {:<10}",
            i + 1,
            h.order(),
            classes.class_sizes()[i],
            structure(h)
        )
        .unwrap();
        if with_generators {
            write!(out, " <{}>", file.classes[i].representative.join(", ")).unwrap();
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out
}

fn signs(u: &SignVector) -> String {
    let cells: Vec<&str> = u
        .signs()
        .iter()
        .map(|&s| if s < 0 { "-" } else { "+" })
        .collect();
    cells.join(" ")
}

fn rank_line(result: &UnitGroupResult) -> String {
    format!(
        "r = {}, rank Ω*(G) = {}\n",
        result.classes.len(),
        result.rank
    )
}

pub fn units(ctx: &Context) -> Result<String, Failure> {
    let marks = ctx.marks()?;
    let result = ctx.units(&marks)?;
    if ctx.opts.json {
        return to_json(&UnitsReport::new(&ctx.name, &result));
    }
    if ctx.opts.quiet {
        return Ok(rank_line(&result));
    }
    let mut out = ctx.header();
    out += &rank_line(&result);
    out += "classes:\n";
    out += &class_table(&ctx.classes, false);
    out += "basis (sign at H1 … Hr):\n";
    for (k, u) in result.basis.iter().enumerate() {
        writeln!(out, "  u{:<3} {}", k + 1, signs(u)).unwrap();
    }
    writeln!(
        out,
        "verified: {} basis vectors are units of the Burnside ring",
        result.basis.len()
    )
    .unwrap();
    Ok(out)
}

pub fn marks(ctx: &Context) -> Result<String, Failure> {
    let marks = ctx.marks()?;
    if ctx.opts.json {
        return to_json(&marks.to_export());
    }
    if ctx.opts.quiet {
        return Ok(marks.to_text());
    }
    let mut out = ctx.header();
    out += "classes:\n";
    out += &class_table(&ctx.classes, false);
    out += "marks (row H_i, column H_j = fixed points of H_j on G/H_i):\n";
    out += &marks.to_text();
    Ok(out)
}

pub fn lattice(ctx: &Context) -> Result<String, Failure> {
    if ctx.opts.json {
        return Ok(ctx.classes.to_json()? + "\n");
    }
    let summary = format!(
        "r = {} classes, {} subgroups\n",
        ctx.classes.len(),
        ctx.classes.subgroup_count()
    );
    if ctx.opts.quiet {
        return Ok(summary);
    }
    let mut out = ctx.header();
    out += &summary;
    out += &class_table(&ctx.classes, true);
    Ok(out)
}

#[derive(Serialize)]
struct OracleReport {
    group: String,
    r: usize,
    rank: usize,
    oracle_units: usize,
    algorithm_units: usize,
    agrees: bool,
}

fn compare_with_oracle(
    ctx: &Context,
    marks: &MarksTable,
    result: &UnitGroupResult,
) -> Result<OracleReport, Failure> {
    let oracle = brute_force_units(marks, ctx.opts.oracle_cap)?;
    let computed = result.elements();
    Ok(OracleReport {
        group: ctx.name.clone(),
        r: marks.len(),
        rank: result.rank,
        oracle_units: oracle.len(),
        algorithm_units: computed.len(),
        agrees: oracle == computed,
    })
}

pub fn oracle(ctx: &Context) -> Result<String, Failure> {
    let marks = ctx.marks()?;
    let result = ctx.units(&marks)?;
    let report = compare_with_oracle(ctx, &marks, &result)?;
    let text = if ctx.opts.json {
        to_json(&report)?
    } else if report.agrees {
        format!(
            "{} units, algorithm agrees with oracle\n",
            report.oracle_units
        )
    } else {
        format!(
            "oracle found {} units, algorithm {}\n",
            report.oracle_units, report.algorithm_units
        )
    };
    if report.agrees {
        Ok(text)
    } else {
        Err(Failure::Mismatch(text))
    }
}

fn conjecture_line(report: &ConjectureReport) -> String {
    let (rel, kind) = match (report.holds, report.is_equality()) {
        (true, true) => ("≤", "equality"),
        (true, false) => ("≤", "strict"),
        (false, _) => (">", "fails"),
    };
    format!("{} {rel} {} ({kind})\n", report.lhs, report.rhs)
}

pub fn conjecture(ctx: &Context) -> Result<String, Failure> {
    let marks = ctx.marks()?;
    let report = conjecture_check(&ctx.units(&marks)?);
    if ctx.opts.json {
        return to_json(&report);
    }
    if ctx.opts.quiet {
        return Ok(conjecture_line(&report));
    }
    let mut out = ctx.header();
    writeln!(out, "rank Ω*(G) - 1 = {}", report.lhs).unwrap();
    writeln!(out, "dim Ω₂(G) - dim Ω(G) = {}", report.rhs).unwrap();
    out += &conjecture_line(&report);
    Ok(out)
}

#[derive(Serialize)]
struct AllReport {
    group: String,
    order: usize,
    lattice: LatticeFile,
    marks: MarksExport,
    units: UnitsReport,
    oracle: OracleStatus,
}

#[derive(Serialize)]
struct OracleStatus {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_units: Option<usize>,
}

pub fn all(ctx: &Context) -> Result<String, Failure> {
    let marks = ctx.marks()?;
    let result = ctx.units(&marks)?;
    let mut units = UnitsReport::new(&ctx.name, &result);
    units.conjecture = Some(conjecture_check(&result));
    let oracle = if marks.len() > ctx.opts.oracle_cap {
        OracleStatus {
            status: "skipped",
            oracle_units: None,
        }
    } else {
        let cmp = compare_with_oracle(ctx, &marks, &result)?;
        OracleStatus {
            status: if cmp.agrees { "agrees" } else { "mismatch" },
            oracle_units: Some(cmp.oracle_units),
        }
    };
    let mismatch = oracle.status == "mismatch";
    let text = to_json(&AllReport {
        group: ctx.name.clone(),
        order: ctx.classes.group().order(),
        lattice: ctx.classes.to_file(),
        marks: marks.to_export(),
        units,
        oracle,
    })?;
    if mismatch {
        Err(Failure::Mismatch(text))
    } else {
        Ok(text)
    }
}
