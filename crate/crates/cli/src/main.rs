use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mazurcj::bracket::{jones_at_n1, kauffman_bracket, mazur_pattern_diagram, PlanarDiagram};
use mazurcj::crossing::{adequacy_test, diameter_and_bounds, mazur_diameter};
use mazurcj::degrees::{
    fit_knot_degrees, predict_max, predict_min, predict_side, verify, Branch, MinConstants, MinOptions, Prediction,
    QuasiQuadratic, FIT_COLORS,
};
use mazurcj::knotdata::KnotProfile;
use mazurcj::mazur::{mazur_normalized_cj_with, to_unnormalized, Framing, Side};
use mazurcj::surfaces::{addendum_check, catalog, verify_ss};
use mazurcj::{Degree, Error, IntPoly};

#[derive(Parser, Debug)]
#[command(name = "mazurcj", version, about = "Colored Jones polynomials of Mazur doubles")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Largest color accepted.
    #[arg(long, env = "MAZURCJ_N_CAP", default_value_t = 40, global = true)]
    n_cap: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Max,
    Min,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Max => Side::Max,
            SideArg::Min => Side::Min,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FramingArg {
    Corrected,
    Displayed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstantsArg {
    Transported,
    Displayed,
}

/// `n` or an inclusive range `a..b`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Colors(Vec<u32>);

impl FromStr for Colors {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}"));
        match s.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(format!("empty range {s}"));
                }
                Ok(Colors((a..=b).collect()))
            }
            None => Ok(Colors(vec![num(s)?])),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalized colored Jones polynomial `J'_{K,n}`.
    Cj {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        n: Colors,
    },
    /// Normalized colored Jones polynomial of the Mazur double.
    MazurCj {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        n: Colors,
        #[arg(long, value_enum, default_value_t = FramingArg::Corrected)]
        framing: FramingArg,
    },
    /// Fitted degree quasi-polynomials of a knot.
    Fit {
        #[arg(long)]
        knot: String,
        #[arg(long, default_value_t = FIT_COLORS)]
        colors: u32,
    },
    /// Predicted degree of the Mazur double.
    Predict {
        /// Knot whose degrees are fitted.
        #[arg(long, conflicts_with = "profile", required_unless_present = "profile")]
        knot: Option<String>,
        /// Companion degree `a,b,c` or `a,b,c;a,b,c` (even n; odd n).
        #[arg(long)]
        profile: Option<String>,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Work with `J` instead of `J'`.
        #[arg(long)]
        unnormalized: bool,
        #[arg(long, value_enum, default_value_t = ConstantsArg::Transported)]
        constants: ConstantsArg,
    },
    /// Computed against predicted degrees of the Mazur double.
    Verify {
        #[arg(long)]
        knot: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, default_value = "1..10")]
        n: Colors,
    },
    /// Surface catalog at weights `(alpha, beta)`.
    Surfaces {
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        beta: i64,
    },
    /// Strong-Slope arithmetic for a companion with degree `a n^2 + b n + ...`.
    Ssc {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, default_value_t = 0)]
        class: usize,
        /// Gluing check below `a = -1/4`.
        #[arg(long)]
        addendum: bool,
    },
    /// Jones diameter and crossing-number bounds of the Mazur double.
    Crossing {
        #[arg(long)]
        knot: String,
        /// Fail unless every hypothesis holds.
        #[arg(long)]
        strict: bool,
        /// Also fit the double's degrees over this window.
        #[arg(long)]
        window: Option<Colors>,
    },
    /// Kauffman bracket or Jones polynomial of a diagram.
    Bracket {
        #[arg(long, conflicts_with_all = ["knot", "pattern"])]
        diagram: Option<PathBuf>,
        #[arg(long, conflicts_with = "pattern")]
        knot: Option<String>,
        /// The Mazur pattern closed in the 3-sphere.
        #[arg(long)]
        pattern: bool,
        #[arg(long)]
        jones: bool,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

fn quasi_json(q: &QuasiQuadratic<Degree>) -> Value {
    let classes: Vec<Vec<String>> = (0..q.period()).map(|i| q.class(i).iter().map(|x| x.to_string()).collect()).collect();
    json!({ "period": q.period(), "onset": q.onset(), "classes": classes, "text": q.to_string() })
}

fn parse_rational(s: &str) -> Result<Degree, Failure> {
    Degree::from_str(s.trim()).map_err(|e| Failure::Usage(format!("`{s}` is not a rational: {e}")))
}

fn parse_profile(s: &str) -> Result<QuasiQuadratic<Degree>, Failure> {
    let class = |t: &str| -> Result<[Degree; 3], Failure> {
        let v = t.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
        v.try_into().map_err(|_| Failure::Usage(format!("`{t}` needs three coefficients")))
    };
    match s.split_once(';') {
        Some((even, odd)) => Ok(QuasiQuadratic::by_parity(class(even)?, class(odd)?)),
        None => {
            let [a, b, c] = class(s)?;
            Ok(QuasiQuadratic::uniform(a, b, c))
        }
    }
}

fn check_cap(colors: &Colors, cap: u32) -> Result<(), Failure> {
    match colors.0.iter().find(|&&n| n > cap) {
        Some(n) => Err(Failure::Usage(format!("n = {n} exceeds the cap {cap} (MAZURCJ_N_CAP)"))),
        None => Ok(()),
    }
}

fn poly_report(knot: &str, colors: &Colors, f: impl Fn(u32) -> mazurcj::Result<IntPoly>) -> Result<Report, Failure> {
    let polys = colors.0.iter().map(|&n| Ok((n, f(n)?))).collect::<Result<Vec<_>, Error>>()?;
    let text = if let [(_, p)] = polys.as_slice() {
        p.to_string()
    } else {
        polys.iter().map(|(n, p)| format!("{n}\t{p}")).collect::<Vec<_>>().join("\n")
    };
    let rows: Vec<Value> = polys.iter().map(|(n, p)| json!({ "n": n, "poly": p.to_string() })).collect();
    Ok(Report::ok(text, json!({ "knot": knot, "values": rows })))
}

fn prediction_report(p: &Prediction<Degree>) -> (String, Value) {
    let mut text = format!("predicted\t{}\nbranches\t{} {}", p.quasi, p.branches[0], p.branches[1]);
    for w in &p.warnings {
        write!(text, "\nwarning\t{w}").unwrap();
    }
    let branches: Vec<String> = p.branches.iter().map(Branch::to_string).collect();
    (text, json!({ "predicted": quasi_json(&p.quasi), "branches": branches, "warnings": p.warnings }))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Cj { knot, n } => {
            check_cap(n, cli.n_cap)?;
            let k = KnotProfile::resolve(knot)?;
            poly_report(&k.name, n, |l| Ok((*k.eval(l)?).clone()))
        }
        Command::MazurCj { knot, n, framing } => {
            check_cap(n, cli.n_cap)?;
            let k = KnotProfile::resolve(knot)?;
            let framing = match framing {
                FramingArg::Corrected => Framing::Corrected,
                FramingArg::Displayed => Framing::AsDisplayed,
            };
            poly_report(&k.name, n, |l| mazur_normalized_cj_with(&k, l, framing))
        }
        Command::Fit { knot, colors } => {
            if *colors > cli.n_cap {
                return Err(Failure::Usage(format!("{colors} colors exceed the cap {}", cli.n_cap)));
            }
            let k = KnotProfile::resolve(knot)?;
            let fit = fit_knot_degrees(&k, *colors)?;
            let (umax, umin) = (to_unnormalized(&fit.max, Side::Max), to_unnormalized(&fit.min, Side::Min));
            let text = format!(
                "knot\t{}\nmax'\t{}\nmin'\t{}\nmax\t{umax}\nmin\t{umin}",
                k.name, fit.max, fit.min
            );
            let json = json!({
                "knot": k.name,
                "normalized": { "max": quasi_json(&fit.max), "min": quasi_json(&fit.min) },
                "unnormalized": { "max": quasi_json(&umax), "min": quasi_json(&umin) },
            });
            Ok(Report::ok(text, json))
        }
        Command::Predict { knot, profile, side, unnormalized, constants } => {
            let side = Side::from(*side);
            let companion = match (knot, profile) {
                (_, Some(p)) => parse_profile(p)?,
                (Some(k), None) => {
                    let fit = fit_knot_degrees(&KnotProfile::resolve(k)?, FIT_COLORS)?;
                    let primed = fit.side(side).clone();
                    if *unnormalized {
                        to_unnormalized(&primed, side)
                    } else {
                        primed
                    }
                }
                (None, None) => return Err(Failure::Usage("give --knot or --profile".into())),
            };
            let prediction = match (side, *unnormalized) {
                (Side::Min, true) => {
                    let constants = match constants {
                        ConstantsArg::Transported => MinConstants::Transported,
                        ConstantsArg::Displayed => MinConstants::Displayed,
                    };
                    predict_min(&companion, false, MinOptions { constants, ..Default::default() })?
                }
                (Side::Max, true) => predict_max(&companion, false)?,
                (_, false) => predict_side(&companion, side)?.0,
            };
            let (body, mut json) = prediction_report(&prediction);
            json["companion"] = quasi_json(&companion);
            Ok(Report::ok(format!("companion\t{companion}\n{body}"), json))
        }
        Command::Verify { knot, side, n } => {
            check_cap(n, cli.n_cap)?;
            let rep = verify(&KnotProfile::resolve(knot)?, (*side).into(), &n.0)?;
            let (_, pred) = prediction_report(&rep.prediction);
            let json = json!({
                "knot": rep.knot,
                "side": rep.side,
                "companion": quasi_json(&rep.companion),
                "prediction": pred,
                "rows": rep.rows,
                "onset": rep.onset,
                "verdict": rep.verdict,
            });
            Ok(Report { text: rep.to_string(), json, ok: rep.passed() })
        }
        Command::Surfaces { alpha, beta } => {
            let rows = catalog(*alpha, *beta)?;
            let mut text = String::from("path\tpattern\tchi\tslopes\tcounts");
            for r in &rows {
                write!(text, "\n{r}").unwrap();
            }
            let json: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "path": r.path.to_string(),
                        "pattern": r.branch_pattern,
                        "alpha": r.alpha,
                        "beta": r.beta,
                        "chi": r.chi,
                        "slopes": r.slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                        "counts": r.counts,
                        "swapped": r.swapped,
                    })
                })
                .collect();
            Ok(Report::ok(text, Value::Array(json)))
        }
        Command::Ssc { a, b, side, class, addendum } => {
            let (a, b) = (parse_rational(a)?, parse_rational(b)?);
            if *addendum {
                let v = addendum_check(a, b)?;
                let text = format!(
                    "restricted\t{}\nrequired\t{}\ncontradiction\t{}",
                    v.restricted,
                    v.required,
                    if v.contradiction { "yes" } else { "no" }
                );
                let json = json!({
                    "restricted": v.restricted.to_string(),
                    "required": v.required.to_string(),
                    "contradiction": v.contradiction,
                });
                return Ok(Report::ok(text, json));
            }
            let v = verify_ss(a, b, (*side).into(), *class)?;
            let json = json!({
                "case": v.case.to_string(),
                "slope": v.slope.to_string(),
                "copies": [v.glued.m, v.glued.n],
                "chi": v.glued.chi,
                "boundary": v.glued.boundary,
                "predicted": v.predicted.to_string(),
                "achieved": v.achieved.map(|x| x.to_string()),
                "slope_matches": v.slope_matches,
                "pass": v.pass,
            });
            Ok(Report { text: v.to_string(), json, ok: v.pass })
        }
        Command::Crossing { knot, strict, window } => {
            let k = KnotProfile::resolve(knot)?;
            let rep = diameter_and_bounds(&k)?;
            let mut text = rep.to_string();
            let mut json = json!({
                "knot": rep.knot,
                "c": rep.c,
                "wr": rep.writhe,
                "c_plus": rep.c_plus,
                "c_minus": rep.c_minus,
                "delta": quasi_json(&rep.delta_max),
                "delta_star": quasi_json(&rep.delta_min),
                "dj_K": rep.dj_k.to_string(),
                "dj_M": rep.dj_m.to_string(),
                "lower": rep.lower,
                "upper": rep.upper,
                "candidates": rep.candidates(),
                "range": rep.range_text(),
                "violations": rep.violations,
                "certified": rep.certified(),
            });
            let mut ok = !*strict || rep.certified();
            if let Some(w) = window {
                check_cap(w, cli.n_cap)?;
                let m = mazur_diameter(&k, &w.0)?;
                let stats = k.stats.as_ref().expect("checked by diameter_and_bounds");
                let adequacy = adequacy_test(&m.delta_min, stats);
                let holds = m.dj_m == rep.dj_m;
                write!(
                    text,
                    "\nmazur delta\t{}\nmazur delta*\t{}\nmazur dj\t{}\nrelation\t{}\n{adequacy}",
                    m.delta_max,
                    m.delta_min,
                    m.dj_m,
                    if holds { "holds" } else { "fails" }
                )
                .unwrap();
                json["mazur"] = json!({
                    "delta": quasi_json(&m.delta_max),
                    "delta_star": quasi_json(&m.delta_min),
                    "dj": m.dj_m.to_string(),
                    "relation_holds": holds,
                    "adequacy": {
                        "branch": adequacy.branch.to_string(),
                        "sums": adequacy.sums.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                        "reasons": adequacy.reasons,
                        "verdict": adequacy.verdict.to_string(),
                    },
                });
                ok &= holds || !rep.certified();
            }
            Ok(Report { text, json, ok })
        }
        Command::Bracket { diagram, knot, pattern, jones } => {
            let d = match (diagram, knot, pattern) {
                (Some(path), _, _) => PlanarDiagram::parse(&std::fs::read_to_string(path).map_err(Error::from)?)?,
                (_, Some(k), _) => KnotProfile::resolve(k)?
                    .diagram
                    .ok_or_else(|| Failure::Usage(format!("knot `{k}` has no diagram")))?,
                (_, _, true) => mazur_pattern_diagram(),
                _ => return Err(Failure::Usage("give --diagram, --knot or --pattern".into())),
            };
            let p = if *jones { jones_at_n1(&d)? } else { kauffman_bracket(&d)? };
            let json = json!({
                "crossings": d.crossings().len(),
                "writhe": d.writhe(),
                "kind": if *jones { "jones" } else { "bracket" },
                "poly": p.to_string(),
            });
            Ok(Report::ok(p.to_string(), json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable"),
            };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, format!("{body}\n")),
                None => {
                    println!("{body}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
