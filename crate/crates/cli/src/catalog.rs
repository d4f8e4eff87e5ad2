use std::path::PathBuf;

use clap::{Args, ValueEnum};
use densikit::catalog::{danielewski_text, product_with_line, sl_bundle, sp_bundle, ExampleBundle};
use densikit::certfile::{certificate_to_json, render_certificate};
use densikit::certificates::verify_tuple;
use densikit::Rational;

use crate::{read_certificate, write_output, CliError, CliResult};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogName {
    Danielewski,
    Sl,
    Sp,
    ProductLine,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    pub name: CatalogName,
    /// Danielewski polynomial in z (also the base of product-line).
    #[arg(long, default_value = "z^2-1")]
    pub p: String,
    /// Block size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of factors.
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Component index (special linear only).
    #[arg(long)]
    pub i: Option<usize>,
    /// Target value(s), comma separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// product-line: certificate whose variety and field are extended.
    #[arg(long)]
    pub from: Option<PathBuf>,
    /// product-line: field to extend.
    #[arg(long, default_value = "theta2")]
    pub field: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the certificate as JSON.
    #[arg(long)]
    pub json: bool,
}

pub fn parse_rationals(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(|t| t.trim().parse::<Rational>().map_err(|e| CliError::Input(format!("--a: {e}")))).collect()
}

fn build(args: &CatalogArgs) -> Result<ExampleBundle, CliError> {
    let bundle = match args.name {
        CatalogName::Danielewski => danielewski_text(&args.p)?,
        CatalogName::Sl => {
            let n = args.n.unwrap_or(3);
            let a = match &args.a {
                Some(s) => {
                    let v = parse_rationals(s)?;
                    if v.len() != 1 {
                        return Err(CliError::Input("--a takes one value for sl".into()));
                    }
                    v[0].clone()
                }
                None => Rational::one(),
            };
            sl_bundle(n, args.k.unwrap_or(3), args.i.unwrap_or(1), a)?
        }
        CatalogName::Sp => {
            let n = args.n.unwrap_or(2);
            let a = match &args.a {
                Some(s) => parse_rationals(s)?,
                None => (0..n).map(|j| if j == 0 { Rational::one() } else { Rational::zero() }).collect(),
            };
            sp_bundle(n, args.k.unwrap_or(2), &a)?
        }
        CatalogName::ProductLine => {
            let base = match &args.from {
                Some(path) => read_certificate(path)?,
                None => danielewski_text(&args.p)?.certificate,
            };
            let field = base
                .field(&args.field)
                .ok_or_else(|| CliError::Input(format!("no field `{}` in the base certificate", args.field)))?;
            product_with_line(&base.variety, field, &args.field)?
        }
    };
    Ok(bundle)
}

pub fn run(args: &CatalogArgs) -> CliResult {
    let bundle = build(args)?;
    let report = verify_tuple(&bundle.certificate);
    eprint!("{}", report.render());
    eprintln!();
    let text = if args.json {
        certificate_to_json(&bundle.certificate) + "\n"
    } else {
        render_certificate(&bundle.certificate)
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(report.verdict.exit_code() as u8)
}
