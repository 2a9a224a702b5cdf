use std::io;

use udode_core::elliptic::{complete_k, jacobi_sncndn, EllipticParam};

use crate::output::{csv_error, csv_writer, num};
use crate::{EllipticArgs, Failure, Outcome};

/// `"1.5"`, `"K"`, `"-2K"`, `"0.5K"`.
fn argument(s: &str, k: f64) -> Result<f64, Failure> {
    let s = s.trim();
    let bad = || Failure::Usage(format!("bad argument {s:?}"));
    match s.strip_suffix(['K', 'k']) {
        Some("") => Ok(k),
        Some("-") => Ok(-k),
        Some(mult) => mult.parse::<f64>().map(|v| v * k).map_err(|_| bad()),
        None => s.parse().map_err(|_| bad()),
    }
}

pub fn run(args: EllipticArgs) -> Outcome {
    let m = EllipticParam::new(args.m).map_err(|e| Failure::Usage(e.to_string()))?;
    let k = complete_k(m);
    let xs = args.x.iter().map(|s| argument(s, k)).collect::<Result<Vec<_>, _>>()?;
    println!("# K = {}", num(k));
    let mut w = csv_writer(io::stdout().lock());
    w.write_record(["x", "sn", "cn", "dn"]).map_err(csv_error)?;
    for x in xs {
        let t = jacobi_sncndn(x, m).map_err(|e| Failure::Usage(e.to_string()))?;
        w.write_record([num(x), num(t.s), num(t.c), num(t.d)]).map_err(csv_error)?;
    }
    w.flush().map_err(|e| Failure::Runtime(e.to_string()))
}
