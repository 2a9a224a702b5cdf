use std::io;
use std::path::Path;
use std::sync::Arc;

use udode_core::approx::{
    build_solution, error_report, sample, ApproxError, Sample, ScalarFn, Tabulated, TargetSpec, Tolerance,
};
use udode_core::funcparse::{parse, Expr};
use udode_core::smodule::{MAX_EXPONENT, MIN_EXPONENT};

use crate::output::{csv_error, csv_writer, json, num, write_file};
use crate::{ApproximateArgs, Failure, Format, Outcome};

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_table(path: &Path) -> Result<Tabulated, Failure> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let field = |k: usize| rec.get(k).and_then(|s| s.parse::<f64>().ok());
        match (field(0), field(1)) {
            (Some(x), Some(y)) => {
                xs.push(x);
                ys.push(y);
            }
            // a header line
            _ if i == 0 => {}
            _ => return Err(usage(format!("{}: line {} is not two numbers", path.display(), i + 1))),
        }
    }
    Tabulated::new(xs, ys).map_err(usage)
}

fn target(args: &ApproximateArgs) -> Result<TargetSpec, Failure> {
    if !(args.a < args.b) {
        return Err(usage(format!("need a < b, got a = {}, b = {}", args.a, args.b)));
    }
    if !(MIN_EXPONENT..=MAX_EXPONENT).contains(&args.n) {
        return Err(usage(format!("n must be in {MIN_EXPONENT}..={MAX_EXPONENT}, got {}", args.n)));
    }
    let phi: Arc<dyn ScalarFn> = match (&args.phi, &args.phi_csv) {
        (Some(src), _) => Arc::new(parse(src).map_err(|e| usage(format!("--phi: {e}")))?),
        (None, Some(path)) => Arc::new(read_table(path)?),
        (None, None) => return Err(usage("one of --phi, --phi-csv is required")),
    };
    let eps_expr: Expr = parse(&args.eps).map_err(|e| usage(format!("--eps: {e}")))?;
    let eps = if eps_expr.is_constant() {
        Tolerance::Constant(eps_expr.eval(0.0).map_err(|e| usage(format!("--eps: {e}")))?)
    } else {
        Tolerance::Function(Arc::new(eps_expr))
    };
    TargetSpec::new(phi, args.a, args.b, eps)
        .and_then(|t| t.with_probes(args.probes))
        .map_err(classify)
}

fn classify(e: ApproxError) -> Failure {
    match e {
        ApproxError::RefinementFailed { .. } | ApproxError::Module(_) => Failure::Runtime(e.to_string()),
        _ => usage(e),
    }
}

fn write_samples<W: io::Write>(mut w: csv::Writer<W>, rows: &[Sample]) -> Result<(), Failure> {
    w.write_record(["x", "y", "phi", "abs_err"]).map_err(csv_error)?;
    for s in rows {
        w.write_record([num(s.x), num(s.y), num(s.phi), num(s.abs_err)]).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Failure::Runtime(e.to_string()))
}

pub fn run(args: ApproximateArgs, verbose: u8) -> Outcome {
    if args.samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    let t = target(&args)?;
    let sol = build_solution(&t, args.n).map_err(classify)?;
    if verbose > 0 {
        eprintln!("planned {} knots on [{}, {}]", sol.knot_count(), args.a, args.b);
    }
    let report = error_report(&sol, &t, args.samples).map_err(classify)?;

    if let Some(path) = &args.out {
        write_file(path, &sol.to_json())?;
    }
    let rows = if args.csv.is_some() || args.format == Format::Csv {
        sample(&sol, &t, args.samples).map_err(classify)?
    } else {
        Vec::new()
    };
    if let Some(path) = &args.csv {
        let file = std::fs::File::create(path)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
        write_samples(csv_writer(file), &rows)?;
    }

    match args.format {
        Format::Json => println!("{}", json(&report)),
        Format::Csv => write_samples(csv_writer(io::stdout().lock()), &rows)?,
        Format::Text => {
            println!("segments      {}", sol.segments().len());
            println!("grid points   {}", report.grid_size);
            println!("max_abs_err   {}", num(report.max_abs_err));
            println!("mean_abs_err  {}", num(report.mean_abs_err));
            println!("max_rel_err   {}", num(report.max_rel_err));
            println!("argmax_x      {}", num(report.argmax_x));
            println!("{}", if report.pass { "PASS" } else { "FAIL" });
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
