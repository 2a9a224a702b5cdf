use udode_core::residual::{certify, CERTIFY_RESIDUAL_TOL};
use udode_core::PiecewiseSolution;

use crate::output::{json, num};
use crate::{CertifyArgs, Failure, Format, Outcome};

pub fn run(args: CertifyArgs, verbose: u8) -> Outcome {
    let text = std::fs::read_to_string(&args.solution)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.solution.display())))?;
    let sol: PiecewiseSolution = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.solution.display())))?;
    if args.points == 0 {
        return Err(Failure::Usage("--points must be positive".into()));
    }
    if verbose > 0 {
        eprintln!("certifying {} segments at {} points each", sol.segments().len(), args.points);
    }
    let mut report = certify(&sol, args.points);
    if !args.per_point {
        report = report.without_points();
    }
    match args.format {
        Format::Json => println!("{}", json(&report)),
        Format::Text | Format::Csv => {
            let s = &report.summary;
            let j = &report.junctions;
            println!("n                      {}", report.n);
            println!("points                 {}", s.count);
            println!("max_normalized         {} (limit {})", num(s.max_normalized), num(CERTIFY_RESIDUAL_TOL));
            println!("mean_normalized        {}", num(s.mean_normalized));
            println!("argmax_x               {}", num(s.argmax_x));
            println!("junctions              {}", j.count);
            println!("max_value_gap          {}", num(j.max_value_gap));
            println!("max_flat_derivative    {}", num(j.max_flat_derivative));
            println!("max_derivative_mismatch {}", num(j.max_derivative_mismatch));
            println!("{}", if report.pass { "PASS" } else { "FAIL" });
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
