//! Command-line front end. [`run`] is pure: it returns the exit code and the
//! bytes to print, so the binary is a thin wrapper.

use std::fmt;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::analytics::{
    cantor_witness, entropy_beta, entropy_gap, periodic_count, series_pn, xs_value, zeta_beta,
    zeta_gap, PnSource, PnTable, System, DEFAULT_TOL,
};
use crate::beta::{
    classify_beta, greedy_expand_adaptive, validate_parry, ParrySeq, DEFAULT_PRECISION,
};
use crate::correspond::{ass_of_beta, ass_of_gap, equivalence_level, family_sj};
use crate::covers::{fischer_beta, fischer_gap, min_factor, LabeledGraph};
use crate::error::{Error, Result};
use crate::gaps::{classify_gap, star_condition, GapSet};

/// A parsed `beta:` or `gap:` object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectSpec {
    Beta(ParrySeq),
    /// `beta:1.618…`, expanded greedily once a horizon is known.
    BetaDecimal(String),
    Gap(GapSet),
}

impl fmt::Display for ObjectSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectSpec::Beta(s) => write!(f, "beta:{s}"),
            ObjectSpec::BetaDecimal(d) => write!(f, "beta:{d}"),
            ObjectSpec::Gap(s) => write!(f, "gap:{s}"),
        }
    }
}

fn shift_position(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { position, expected } => Error::Syntax {
            position: position + by,
            expected,
        },
        e => e,
    }
}

pub fn parse_spec(text: &str) -> Result<ObjectSpec> {
    if let Some(rest) = text.strip_prefix("beta:") {
        let decimal = !rest.is_empty()
            && rest.contains('.')
            && rest.chars().all(|c| c.is_ascii_digit() || c == '.');
        if decimal {
            return Ok(ObjectSpec::BetaDecimal(rest.to_string()));
        }
        return rest
            .parse()
            .map(ObjectSpec::Beta)
            .map_err(|e| shift_position(e, 5));
    }
    if let Some(rest) = text.strip_prefix("gap:") {
        return rest
            .parse()
            .map(ObjectSpec::Gap)
            .map_err(|e| shift_position(e, 4));
    }
    Err(Error::Syntax {
        position: 0,
        expected: "'beta:' or 'gap:'".into(),
    })
}

#[derive(Parser, Debug)]
#[command(
    name = "betagap",
    version,
    about = "Beta-shifts, S-gap shifts and the correspondence between them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Horizon for truncated objects and decimal betas.
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// Bracket width for entropies.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Starting fixed-point precision (bits) for greedy expansion of decimal betas.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an expansion of 1 or parse a gap set.
    Validate {
        spec: String,
    },
    /// SFT / sofic class.
    Classify {
        spec: String,
    },
    /// The associated object on the other side.
    Ass {
        spec: String,
    },
    /// Fischer cover.
    Cover {
        spec: String,
        #[arg(long)]
        dot: bool,
    },
    /// Minimal right-resolving factor of the cover's underlying graph.
    Mg {
        spec: String,
    },
    /// Equivalence level between a beta-shift and a gap shift.
    Equiv {
        beta: String,
        gap: String,
    },
    Entropy {
        spec: String,
    },
    Zeta {
        spec: String,
    },
    /// Periodic-point counts p_1..p_n.
    Pn {
        spec: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Count by brute force instead of expanding the zeta function.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Compare zeta-function counts with brute force.
    Oracle {
        spec: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Continued fraction of a gap set.
    Xs {
        spec: String,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Member S_j of the family built from an image of a finite expansion.
    Family {
        spec: String,
        #[arg(long, default_value_t = 1)]
        j: usize,
    },
    Star {
        spec: String,
    },
    /// Neighbours on both sides of the star condition.
    Witness {
        spec: String,
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
}

/// Exit code and the bytes for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Reply {
    text: String,
    json: Value,
    code: i32,
}

impl Reply {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Reply {
            text: text.into(),
            json,
            code: 0,
        }
    }

    fn failing(mut self) -> Self {
        self.code = 1;
        self
    }
}

struct Opts {
    horizon: Option<usize>,
    tol: f64,
    precision: u32,
}

const MAX_PRECISION: u32 = 1024;

impl Opts {
    fn object(&self, text: &str) -> Result<Object> {
        Ok(match parse_spec(text)? {
            ObjectSpec::Beta(s) => Object::Beta(s),
            ObjectSpec::Gap(s) => Object::Gap(s),
            ObjectSpec::BetaDecimal(d) => {
                let h = self.horizon.ok_or(Error::HorizonRequired)?;
                let g = greedy_expand_adaptive(&d, h, self.precision, MAX_PRECISION)?;
                Object::Beta(ParrySeq::truncated(g.digits)?)
            }
        })
    }

    fn beta(&self, text: &str) -> Result<ParrySeq> {
        match self.object(text)? {
            Object::Beta(s) => Ok(s),
            Object::Gap(_) => Err(usage("expected a beta: spec")),
        }
    }

    fn gap(&self, text: &str) -> Result<GapSet> {
        match self.object(text)? {
            Object::Gap(s) => Ok(s),
            Object::Beta(_) => Err(usage("expected a gap: spec")),
        }
    }
}

enum Object {
    Beta(ParrySeq),
    Gap(GapSet),
}

/// Errors that are the caller's fault rather than the object's.
fn usage(msg: &str) -> Error {
    Error::Syntax {
        position: 0,
        expected: msg.trim_start_matches("expected ").into(),
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(e, Error::Syntax { .. })
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let opts = Opts {
        horizon: cli.horizon,
        tol: cli.tol,
        precision: cli.precision,
    };
    let name = command_name(&cli.command);
    match dispatch(&cli.command, &opts) {
        Ok(reply) => {
            let stdout = if cli.json {
                let mut v = json!({ "schema": 1, "command": name });
                v["result"] = reply.json;
                format!("{v}\n")
            } else {
                format!("{}\n", reply.text)
            };
            Output {
                code: reply.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = if is_usage(&e) { 2 } else { 1 };
            if cli.json {
                let v = json!({ "schema": 1, "command": name, "error": { "code": e.code(), "message": e.to_string() } });
                Output {
                    code,
                    stdout: format!("{v}\n"),
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: format!("error[{}]: {e}\n", e.code()),
                }
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Classify { .. } => "classify",
        Command::Ass { .. } => "ass",
        Command::Cover { .. } => "cover",
        Command::Mg { .. } => "mg",
        Command::Equiv { .. } => "equiv",
        Command::Entropy { .. } => "entropy",
        Command::Zeta { .. } => "zeta",
        Command::Pn { .. } => "pn",
        Command::Oracle { .. } => "oracle",
        Command::Xs { .. } => "xs",
        Command::Family { .. } => "family",
        Command::Star { .. } => "star",
        Command::Witness { .. } => "witness",
    }
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    format!("[{}]", crate::seqcore::join(xs))
}

fn graph_text(g: &LabeledGraph) -> String {
    let mut lines = vec![format!("vertices: {}", g.names().join(" "))];
    for e in g.edges() {
        lines.push(format!(
            "{} -{}-> {}",
            g.names()[e.from],
            e.label,
            g.names()[e.to]
        ));
    }
    lines.join("\n")
}

fn cover_of(obj: &Object, horizon: Option<usize>) -> Result<(LabeledGraph, Vec<String>)> {
    match obj {
        Object::Beta(s) => Ok((fischer_beta(s, horizon)?, Vec::new())),
        Object::Gap(s) => {
            let c = fischer_gap(s, horizon)?;
            Ok((c.graph, c.warnings))
        }
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Invalid(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn oracle_counts(obj: &Object, n: usize, jobs: Option<usize>) -> Result<PnTable> {
    let counts = with_jobs(jobs, || {
        (1..=n)
            .map(|k| match obj {
                Object::Beta(s) => periodic_count(System::Beta(s), k),
                Object::Gap(s) => periodic_count(System::Gap(s), k),
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(PnTable {
        counts,
        source: PnSource::Oracle,
    })
}

fn series_counts(obj: &Object, n: usize) -> Result<PnTable> {
    let z = match obj {
        Object::Beta(s) => zeta_beta(s)?,
        Object::Gap(s) => zeta_gap(s)?,
    };
    series_pn(&z, n)
}

fn dispatch(cmd: &Command, o: &Opts) -> Result<Reply> {
    Ok(match cmd {
        Command::Validate { spec } => match o.object(spec)? {
            Object::Beta(s) => {
                let v = validate_parry(&s);
                let reply = Reply::ok(v.to_string(), json!({ "verdict": v.to_string() }));
                if v.is_valid() {
                    reply
                } else {
                    reply.failing()
                }
            }
            Object::Gap(s) => Reply::ok(
                format!("gap:{s}"),
                json!({ "verdict": "Valid", "spec": format!("gap:{s}") }),
            ),
        },
        Command::Classify { spec } => {
            let class = match o.object(spec)? {
                Object::Beta(s) => format!("{:?}", classify_beta(&s)),
                Object::Gap(s) => format!("{:?}", classify_gap(&s)),
            };
            Reply::ok(class.clone(), json!({ "class": class }))
        }
        Command::Ass { spec } => match o.object(spec)? {
            Object::Beta(s) => {
                let g = format!("gap:{}", ass_of_beta(&s)?);
                Reply::ok(g.clone(), json!({ "spec": g, "exact": true }))
            }
            Object::Gap(s) => {
                let r = ass_of_gap(&s)?;
                let b = format!("beta:{}", r.parry);
                let mut text = b.clone();
                if let Some(note) = &r.note {
                    text.push_str(&format!("\nnote: {note}"));
                }
                Reply::ok(text, json!({ "spec": b, "exact": r.exact, "note": r.note }))
            }
        },
        Command::Cover { spec, dot } => {
            let (g, warnings) = cover_of(&o.object(spec)?, o.horizon)?;
            let mut text = if *dot {
                g.to_dot().trim_end().to_string()
            } else {
                graph_text(&g)
            };
            for w in &warnings {
                text.push_str(&format!("\nwarning: {w}"));
            }
            Reply::ok(text, json!({ "graph": g.to_json(), "warnings": warnings }))
        }
        Command::Mg { spec } => {
            let (g, _) = cover_of(&o.object(spec)?, o.horizon)?;
            let f = min_factor(&g);
            let blocks: Vec<String> = f
                .partition
                .blocks
                .iter()
                .map(|b| {
                    format!(
                        "{{{}}}",
                        b.iter()
                            .map(|&v| g.names()[v].as_str())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect();
            let rows: Vec<String> = f.quotient.iter().map(|r| list(r)).collect();
            let text = format!("blocks: {}\nquotient: {}", blocks.join(" "), list(&rows));
            Reply::ok(
                text,
                json!({ "blocks": f.partition.blocks, "quotient": f.quotient, "discrete": f.partition.is_discrete() }),
            )
        }
        Command::Equiv { beta, gap } => {
            let e = equivalence_level(&o.beta(beta)?, &o.gap(gap)?)?;
            let mut text = format!("{:?}", e.level);
            if let Some(c) = &e.certificate {
                text.push_str(&format!("\ncertificate: {}", list(c)));
            }
            if let Some(n) = &e.note {
                text.push_str(&format!("\nnote: {n}"));
            }
            Reply::ok(text, serde_json::to_value(&e).expect("serializable"))
        }
        Command::Entropy { spec } => {
            let i = match o.object(spec)? {
                Object::Beta(s) => entropy_beta(&s, o.tol)?,
                Object::Gap(s) => entropy_gap(&s, o.tol)?,
            };
            Reply::ok(format!("{i}"), json!({ "lo": i.lo, "hi": i.hi }))
        }
        Command::Zeta { spec } => {
            let z = match o.object(spec)? {
                Object::Beta(s) => zeta_beta(&s)?,
                Object::Gap(s) => zeta_gap(&s)?,
            };
            Reply::ok(
                format!("{z}\n{}", z.pretty()),
                json!({ "num": z.num.coeffs(), "den": z.den.coeffs(), "text": z.to_string() }),
            )
        }
        Command::Pn {
            spec,
            n,
            oracle,
            jobs,
        } => {
            let obj = o.object(spec)?;
            let t = if *oracle {
                oracle_counts(&obj, *n, *jobs)?
            } else {
                series_counts(&obj, *n)?
            };
            Reply::ok(
                list(&t.counts),
                serde_json::to_value(&t).expect("serializable"),
            )
        }
        Command::Oracle { spec, n, jobs } => {
            let obj = o.object(spec)?;
            let s = series_counts(&obj, *n)?;
            let b = oracle_counts(&obj, *n, *jobs)?;
            let agree = s.counts == b.counts;
            let text = format!(
                "series: {}\noracle: {}\n{}",
                list(&s.counts),
                list(&b.counts),
                if agree { "agree" } else { "DISAGREE" }
            );
            let reply = Reply::ok(
                text,
                json!({ "series": s.counts, "oracle": b.counts, "agree": agree }),
            );
            if agree {
                reply
            } else {
                reply.failing()
            }
        }
        Command::Xs { spec, depth } => {
            let x = xs_value(&o.gap(spec)?, *depth);
            let conv: Vec<String> = x.convergents.iter().map(|c| c.to_string()).collect();
            let q = &x.quotients;
            let mut text = format!(
                "[{}; {}]\nconvergents: {}",
                q[0],
                crate::seqcore::join(&q[1..]),
                conv.join(" ")
            );
            if x.excluded {
                text.push_str("\nwarning: value lies in {1/n}");
            }
            Reply::ok(text, serde_json::to_value(&x).expect("serializable"))
        }
        Command::Family { spec, j } => {
            let s = format!("gap:{}", family_sj(&o.gap(spec)?, *j)?);
            Reply::ok(s.clone(), json!({ "spec": s }))
        }
        Command::Star { spec } => {
            let v = star_condition(&o.gap(spec)?)?;
            let reply = Reply::ok(
                v.to_string(),
                json!({ "verdict": v.to_string(), "holds": v.holds() }),
            );
            if v.holds() {
                reply
            } else {
                reply.failing()
            }
        }
        Command::Witness { spec, m } => {
            let w = cantor_witness(&o.gap(spec)?, *m)?;
            let (i, out) = (format!("gap:{}", w.inside), format!("gap:{}", w.outside));
            Reply::ok(
                format!("in: {i}\nout: {out}"),
                json!({ "in": i, "out": out }),
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> Output {
        run(std::iter::once("betagap").chain(args.split_whitespace()))
    }

    #[test]
    fn parse_specs() {
        assert!(matches!(
            parse_spec("beta:1(1,0)*"),
            Ok(ObjectSpec::Beta(ParrySeq::Periodic(_)))
        ));
        assert!(matches!(parse_spec("gap:{0,2,3}"), Ok(ObjectSpec::Gap(_))));
        assert!(matches!(parse_spec("gap:0;1,(2)*"), Ok(ObjectSpec::Gap(_))));
        assert!(matches!(
            parse_spec("beta:1,x"),
            Err(Error::Syntax { position: 7, .. })
        ));
        assert!(matches!(
            parse_spec("zap:1"),
            Err(Error::Syntax { position: 0, .. })
        ));
        for s in ["beta:1(1,0)*", "gap:{0,2,3}", "gap:0;1,(2)*", "beta:1,1"] {
            assert_eq!(parse_spec(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn documented_invocations() {
        let o = call("ass beta:1,1");
        assert_eq!((o.code, o.stdout.as_str()), (0, "gap:{0,1}\n"));
        let o = call("star gap:0;(2,1)*");
        assert_eq!((o.code, o.stdout.as_str()), (1, "FailsAt(2)\n"));
        let o = call("pn beta:1(1,0)* --n 2 --oracle");
        assert_eq!((o.code, o.stdout.as_str()), (0, "[1,3]\n"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call("frobnicate").code, 2);
        assert_eq!(call("star beta:1,1").code, 2);
        assert_eq!(call("ass gap:0;(2,1)*").code, 1);
        assert_eq!(call("validate beta:1,0,1,1").code, 1);
        assert_eq!(call("--help").code, 0);
    }

    #[test]
    fn json_carries_schema_and_codes() {
        let o = call("ass gap:0;(2,1)* --json");
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["error"]["code"], "StarFails");
        let o = call("cover gap:{0,2,3} --json");
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        let g = LabeledGraph::from_json(&v["result"]["graph"]).unwrap();
        assert_eq!(g.vertex_count(), 4);
    }

    #[test]
    fn deterministic_output() {
        for args in [
            "equiv beta:1,1 gap:{0,2,3} --json",
            "cover beta:1(1,0)* --dot",
            "oracle gap:0;1,(2)* --n 6 --jobs 3",
        ] {
            assert_eq!(call(args), call(args));
        }
    }

    #[test]
    fn decimal_beta_needs_horizon() {
        assert_eq!(call("validate beta:1.5").code, 1);
        let o = call("validate beta:1.5 --horizon 6");
        assert_eq!(o.stdout, "ValidToHorizon(6)\n");
    }
}
