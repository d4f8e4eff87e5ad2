use std::path::PathBuf;

use clap::Args;
use densikit::derivations::{algebraic_flow, completeness_certificate, numeric_flow_check, sample_point};

use crate::{read_certificate, CliError, CliResult};

/// Exit code when the field's certificate yields no polynomial flow.
const EXIT_NO_FLOW: u8 = 2;

#[derive(Args, Debug)]
pub struct FlowArgs {
    /// Certificate file providing the variety and the field.
    pub file: PathBuf,
    /// Field name within the certificate.
    pub field: String,
    /// Also run the exact flow checks and the numeric oracle at a sampled point.
    #[arg(long)]
    pub check: bool,
}

pub fn run(args: &FlowArgs, seed: u64) -> CliResult {
    let cert = read_certificate(&args.file)?;
    let x = &cert.variety;
    let field = cert
        .field(&args.field)
        .ok_or_else(|| CliError::Input(format!("no field `{}` in the certificate", args.field)))?;
    let cc = completeness_certificate(field, x)?;
    outln!("field {}: {}", args.field, cc.describe(field));
    if !cc.has_algebraic_flow() {
        outln!("no polynomial flow available for a {} certificate", cc.name());
        return Ok(EXIT_NO_FLOW);
    }
    let flow = algebraic_flow(field, x, &cc)?;
    outln!("time variable: {}", flow.time_name());
    for line in flow.render() {
        outln!("{line}");
    }
    if !args.check {
        return Ok(0);
    }
    let checks = [
        ("identity at t=0", flow.check_identity_at_zero(x)?),
        ("initial velocity", flow.check_initial_velocity(x)?),
        ("preserves the variety", flow.check_preserves_variety(x)?),
        ("flow-field consistency", flow.check_field_consistency(x)?),
        ("group law", flow.check_group_law(x)?),
    ];
    let point = sample_point(x, seed)?;
    let numeric = numeric_flow_check(&flow, &point);
    let mut ok = true;
    for (name, passed) in checks {
        ok &= passed;
        outln!("{} {name}", if passed { "PASS" } else { "FAIL" });
    }
    ok &= numeric.passed;
    let pt: Vec<String> = point.iter().map(|c| c.to_ratio_string()).collect();
    outln!(
        "{} numeric oracle at ({}): max relative error {:.3e}",
        if numeric.passed { "PASS" } else { "FAIL" },
        pt.join(", "),
        numeric.max_error
    );
    Ok(if ok { 0 } else { 1 })
}
