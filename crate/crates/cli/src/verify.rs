use num_rational::BigRational;
use serde::Serialize;
use udode_symverify::table::Correspondence;
use udode_symverify::{
    check_solution_table_with, limit_coefficients, row_correspondence, LimitReport, TableReport, TableRow,
};

use crate::output::json;
use crate::{Failure, Format, Outcome, VerifyArgs};

#[derive(Serialize)]
struct Report {
    table: TableReport,
    limit: LimitReport,
    correspondence: Vec<Correspondence>,
    pass: bool,
}

pub fn run(args: VerifyArgs) -> Outcome {
    let mut rows = TableRow::standard_rows();
    if let Some(delta) = &args.perturb_b {
        let delta: BigRational =
            delta.parse().map_err(|_| Failure::Usage(format!("--perturb-b: not a rational: {delta}")))?;
        rows = rows.iter().map(|r| r.with_b_shift(&delta)).collect();
    }
    let table = check_solution_table_with(&rows).map_err(|e| Failure::Runtime(e.to_string()))?;
    let limit = limit_coefficients();
    let correspondence = row_correspondence(&rows);
    let pass = table.pass && limit.pass;
    let report = Report { table, limit, correspondence, pass };

    match args.format {
        Format::Json => println!("{}", json(&report)),
        Format::Text | Format::Csv => print_text(&report),
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn print_text(r: &Report) {
    println!("solution table (symbolic n, and n = 4..64):");
    for row in &r.table.rows {
        println!("  {}  {}", if row.pass { "PASS" } else { "FAIL" }, row.label);
        if let Some(res) = &row.residual {
            println!("        residual: {res}");
        }
        if !row.failing_exponents.is_empty() {
            println!("        nonzero for n in {}", ranges(&row.failing_exponents));
        }
    }
    println!("large-n limit of (y''''y'^2, y'''y''y', y''^3) coefficients:");
    for row in &r.limit.rows {
        println!(
            "  {}  {:<7} ({}) -> ({})",
            if row.matches { "PASS" } else { "FAIL" },
            row.name,
            row.coefficients.join(", "),
            row.limit.join(", ")
        );
    }
    println!("row equations as multiples of B, D1, D2:");
    for c in r.correspondence.iter().filter(|c| c.factor.is_some()) {
        println!("  {} = ({}) * {}", c.row, c.factor.as_deref().unwrap_or("?"), c.equation);
    }
    println!("{}", if r.pass { "PASS" } else { "FAIL" });
}

/// `[4, 5, 6, 9]` as `4..=6, 9`.
fn ranges(ns: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < ns.len() {
        let mut j = i;
        while j + 1 < ns.len() && ns[j + 1] == ns[j] + 1 {
            j += 1;
        }
        parts.push(if j == i { ns[i].to_string() } else { format!("{}..={}", ns[i], ns[j]) });
        i = j + 1;
    }
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::ranges;

    #[test]
    fn compresses_runs() {
        assert_eq!(ranges(&[4, 5, 6, 9, 11, 12]), "4..=6, 9, 11..=12");
        assert_eq!(ranges(&[]), "");
    }
}
