//! Command-line front end. [`run`] takes the argument vector and output
//! streams and returns the process exit status:
//! 0 success, 1 domain error, 2 usage error, 3 resource guard tripped.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;
use serde_json::{json, Value};

use crate::arith::{Int, Rat};
use crate::bset::{b2list_compat_guarded, build_ordered_bset, DEFAULT_GUARD};
use crate::error::{Error, Result};
use crate::group::relation_lattice;
use crate::mahler::{mahler_coeffs, mahler_surd, mbar};
use crate::minf::{minf_rational, minf_with, root_of_coeffs, MinfOptions};
use crate::quad::{fundamental_unit, QuadSurd, SquarefreeK};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "minf", version, about = "Exact ultrametric Mahler measure for rational and quadratic numbers")]
pub struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Decimal places for printed measures.
    #[arg(long, global = true, default_value_t = 27, value_parser = clap::value_parser!(u32).range(1..))]
    pub digits: u32,
    /// Largest floor(M(alpha)) the enumeration will accept.
    #[arg(long, global = true, env = "MINF_GUARD", default_value_t = DEFAULT_GUARD, value_parser = clap::value_parser!(u64).range(1..))]
    pub guard: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct NumberInput {
    /// A rational m/n.
    #[arg(long, allow_hyphen_values = true)]
    pub rational: Option<String>,
    /// Coefficients A B C of Ax^2+Bx+C; the (-B+sqrt(D))/(2A) root is used.
    #[arg(long, num_args = 3, allow_negative_numbers = true, value_names = ["A", "B", "C"])]
    pub quadratic: Option<Vec<Int>>,
    /// A surd such as "(5+sqrt(21))/2".
    #[arg(allow_hyphen_values = true)]
    pub surd: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ultrametric Mahler measure with its minimal index and witness.
    Minf {
        #[command(flatten)]
        input: NumberInput,
        /// Use the largest-prime formula for rationals instead of the B-set scan.
        #[arg(long)]
        fast: bool,
    },
    /// Mahler measure of a surd or of a polynomial given by its coefficients.
    Mahler {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Modified Mahler measure and the root of unity realizing it.
    Mbar {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// The ordered B-set used by the minimal-index scan.
    Bset {
        #[command(flatten)]
        input: NumberInput,
    },
    /// Degree-two scan listing "(a, b, c) -- measure" lines.
    B2list {
        #[arg(allow_negative_numbers = true)]
        a: Int,
        #[arg(allow_negative_numbers = true)]
        b: Int,
        #[arg(allow_negative_numbers = true)]
        c: Int,
        /// Squarefree part of the discriminant; derived when omitted.
        #[arg(allow_negative_numbers = true)]
        k: Option<Int>,
    },
    /// Fundamental unit of Q(sqrt(k)) for k > 0.
    Unit {
        #[arg(allow_negative_numbers = true)]
        k: Int,
    },
    /// HNF basis of the multiplicative relations among surds modulo torsion.
    Relations {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        surds: Vec<String>,
    },
    /// Re-run the built-in golden examples.
    Selftest,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_USAGE,
        Error::Resource(_) => EXIT_RESOURCE,
        _ => EXIT_DOMAIN,
    }
}

fn parse_surd(s: &str) -> Result<QuadSurd> {
    s.parse()
}

fn resolve(input: &NumberInput) -> Result<QuadSurd> {
    if let Some(r) = &input.rational {
        let x = parse_surd(r)?;
        if !x.is_rational() {
            return Err(Error::Parse { pos: 0, msg: format!("'{r}' is not rational") });
        }
        return Ok(x);
    }
    if let Some(c) = &input.quadratic {
        return root_of_coeffs(c);
    }
    parse_surd(input.surd.as_deref().unwrap_or_default())
}

// One argument is a surd; two or more are coefficients, highest degree first.
fn surd_or_coeffs(args: &[String]) -> Result<std::result::Result<QuadSurd, Vec<Int>>> {
    if args.len() == 1 {
        return Ok(Ok(parse_surd(&args[0])?));
    }
    let mut coeffs = Vec::with_capacity(args.len());
    let mut pos = 0;
    for a in args {
        let c = a
            .trim()
            .parse::<Int>()
            .map_err(|_| Error::Parse { pos, msg: format!("'{a}' is not an integer coefficient") })?;
        coeffs.push(c);
        pos += a.len() + 1;
    }
    Ok(Err(coeffs))
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    json: bool,
    digits: usize,
}

impl Ctx<'_> {
    fn emit(&mut self, human: &str, value: Value) -> std::io::Result<()> {
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string(&value).expect("json"))
        } else {
            write!(self.out, "{human}")
        }
    }
}

fn measure_json(m: &QuadSurd, digits: usize) -> Value {
    json!({ "exact": m.to_string(), "decimal": m.decimal_expand(digits).unwrap_or_default() })
}

fn dispatch(cli: &Cli, ctx: &mut Ctx<'_>) -> Result<i32> {
    let digits = ctx.digits;
    let opts = MinfOptions { guard: cli.guard, ..MinfOptions::default() };
    match &cli.command {
        Command::Minf { input, fast } => {
            let alpha = resolve(input)?;
            let result = match (fast, alpha.as_rational()) {
                (true, Some(r)) => minf_rational(r, true)?,
                _ => minf_with(&alpha, &opts)?,
            };
            let mut human = format!(
                "input: {}\nvalue: {}\ndecimal: {}\n",
                result.input,
                result.value,
                result.value.decimal(digits)
            );
            if let (Some(j), Some(b), Some(set)) = (result.j_index, &result.b_j, &result.bset) {
                human.push_str(&format!("J: {j} of {}\nb_J: {} (minimal polynomial {})\n", set.len(), b.value, b.minpoly));
            }
            if let Some(w) = &result.witness {
                human.push_str(&format!("witness: {w}\n"));
            }
            ctx.emit(&human, result.to_json(digits)).map_err(io_err)?;
        }
        Command::Mahler { args } => {
            let (label, m) = match surd_or_coeffs(args)? {
                Ok(x) => (x.to_string(), mahler_surd(&x)?),
                Err(c) => {
                    let label = format!("{c:?}");
                    match c.len() {
                        2 => (label, mahler_coeffs(&Int::from(0), &c[0], &c[1])?),
                        3 => (label, mahler_coeffs(&c[0], &c[1], &c[2])?),
                        n => return Err(Error::OutOfScope(n - 1)),
                    }
                }
            };
            let human = format!("input: {label}\nmahler: {m}\ndecimal: {}\n", m.decimal(digits));
            ctx.emit(&human, json!({ "input": label, "mahler": measure_json(m.value(), digits) }))
                .map_err(io_err)?;
        }
        Command::Mbar { args } => {
            let x = match surd_or_coeffs(args)? {
                Ok(x) => x,
                Err(c) => root_of_coeffs(&c)?,
            };
            let r = mbar(&x)?;
            let human = format!(
                "input: {x}\nmbar: {}\ndecimal: {}\nzeta: {}\nreduced: {}\n",
                r.measure,
                r.measure.decimal(digits),
                r.witness_zeta,
                r.reduced
            );
            let value = json!({
                "input": x.to_string(),
                "mbar": measure_json(r.measure.value(), digits),
                "zeta": r.witness_zeta.to_string(),
                "reduced": r.reduced.to_string(),
            });
            ctx.emit(&human, value).map_err(io_err)?;
        }
        Command::Bset { input } => {
            let alpha = resolve(input)?;
            let set = build_ordered_bset(&alpha, cli.guard)?;
            let mut human = String::new();
            for (i, e) in set.entries.iter().enumerate() {
                human.push_str(&format!(
                    "{:>4}  {}  {}  {} = {}\n",
                    i + 1,
                    e.value,
                    e.minpoly,
                    e.mbar.measure,
                    e.mbar.measure.decimal(digits)
                ));
            }
            ctx.emit(&human, set.to_json(digits)).map_err(io_err)?;
        }
        Command::B2list { a, b, c, k } => {
            let k = match k {
                Some(k) => k.clone(),
                None => {
                    let d = b * b - Int::from(4) * a * c;
                    if d.is_positive() || d.is_negative() {
                        crate::arith::squarefree_decompose(&d)?.0
                    } else {
                        return Err(Error::InvalidPolynomial("zero discriminant".into()));
                    }
                }
            };
            let text = b2list_compat_guarded(a, b, c, &k, digits, cli.guard)?;
            let lines: Vec<&str> = text.lines().collect();
            ctx.emit(&text, json!(lines)).map_err(io_err)?;
        }
        Command::Unit { k } => {
            let k = SquarefreeK::new(k.clone())?;
            let eps = fundamental_unit(&k)?;
            let human = format!("unit: {eps}\nnorm: {}\ndecimal: {}\n", eps.norm(), eps.decimal_expand(digits)?);
            let value = json!({
                "k": k.to_string(),
                "unit": measure_json(&eps, digits),
                "norm": eps.norm().to_string(),
            });
            ctx.emit(&human, value).map_err(io_err)?;
        }
        Command::Relations { surds } => {
            let gens = surds.iter().map(|s| parse_surd(s)).collect::<Result<Vec<_>>>()?;
            let lat = relation_lattice(&gens)?;
            let rows: Vec<Vec<String>> =
                lat.basis.iter().map(|r| r.iter().map(Int::to_string).collect()).collect();
            let mut human = format!(
                "generators: {}\nrank of relations: {}\n",
                gens.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                rows.len()
            );
            for r in &rows {
                human.push_str(&format!("[{}]\n", r.join(", ")));
            }
            let value = json!({
                "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "basis": lat.basis.iter().map(|r| r.iter().map(crate::bset::int_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            ctx.emit(&human, value).map_err(io_err)?;
        }
        Command::Selftest => {
            let results = selftest();
            let mut human = String::new();
            for (name, ok) in &results {
                human.push_str(&format!("{} {name}\n", if *ok { "PASS" } else { "FAIL" }));
            }
            let all = results.iter().all(|(_, ok)| *ok);
            let value = json!(results.iter().map(|(n, ok)| json!({ "name": n, "pass": ok })).collect::<Vec<_>>());
            ctx.emit(&human, value).map_err(io_err)?;
            return Ok(if all { EXIT_OK } else { EXIT_DOMAIN });
        }
    }
    Ok(EXIT_OK)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Resource(format!("output failed: {e}"))
}

fn check<F: FnOnce() -> Result<bool>>(name: &str, f: F) -> (String, bool) {
    (name.to_string(), f().unwrap_or(false))
}

/// The golden examples: `M∞(4) = 2`, the degree-two listing for
/// `x² − 5x + 1`, and `M∞((5+√21)/2) = (3+√21)/2`, among others.
pub fn selftest() -> Vec<(String, bool)> {
    let s = |t: &str| t.parse::<QuadSurd>().expect("literal");
    vec![
        check("minf(4) = 2", || Ok(minf_with(&s("4"), &MinfOptions::default())?.value.value() == &s("2"))),
        check("minf_rational(35/6) = 7", || {
            Ok(minf_rational(&Rat::new(Int::from(35), Int::from(6)), false)?.value.value() == &s("7"))
        }),
        check("b2list(1,-5,1,21)", || {
            let out = b2list_compat_guarded(&Int::from(1), &Int::from(-5), &Int::from(1), &Int::from(21), 27, DEFAULT_GUARD)?;
            Ok(out
                == "(1, 3, -3) -- 3.791287847477920003294023597\n\
                    (1, 5, 1) -- 4.791287847477920003294023597\n\
                    (3, 3, -1) -- 3.791287847477920003294023597\n")
        }),
        check("minf((5+sqrt(21))/2) = (3+sqrt(21))/2", || {
            Ok(minf_with(&s("(5+sqrt(21))/2"), &MinfOptions::default())?.value.value() == &s("(3+sqrt(21))/2"))
        }),
        check("mbar(2i) = 2, M(2i) = 4", || {
            Ok(mbar(&s("2*sqrt(-1)"))?.measure.value() == &s("2") && mahler_surd(&s("2*sqrt(-1)"))?.value() == &s("4"))
        }),
        check("fundamental unit of Q(sqrt(21))", || Ok(fundamental_unit(&SquarefreeK::from_i64(21)?)? == s("(5+sqrt(21))/2"))),
        check("minf(-1) = 1", || Ok(minf_with(&s("-1"), &MinfOptions::default())?.value.value().is_one())),
    ]
}

/// Runs the command line. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut ctx = Ctx { out, json: cli.json, digits: cli.digits as usize };
    match dispatch(&cli, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
