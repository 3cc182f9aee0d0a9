//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the captured output, so the binary is a thin wrapper.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::conegeom::{count_linear_extensions, gf_via_triangulation, rays_uk, triangulation};
use crate::enumerate::oracle_series;
use crate::error::Error;
use crate::multipoly::Polynomial;
use crate::omega::{ap_step, box_gf, p22_via_omega, BoxGF};
use crate::ratgf::FactoredGF;
use crate::recursion::{compute, denominator_dk, numerator, specialize_single_y, Variant};

/// Largest `k` accepted by `counts` without `--allow-large`.
pub const MAX_COUNTS_K: usize = 12;
/// Largest width accepted by the symbolic verbs without `--allow-large`.
pub const MAX_SYMBOLIC_K: usize = 5;

#[derive(Debug, Parser)]
#[command(
    name = "ppgf",
    version,
    about = "Generating functions of plane partitions with two rows"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Lift the default bounds on k and n.
    #[arg(long, global = true)]
    pub allow_large: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert basis of the cone of 2 x k plane partitions.
    Rays {
        #[arg(long)]
        k: usize,
    },
    /// Ray and triangulation counts for k = 2..=max-k.
    Counts {
        #[arg(long, default_value_t = MAX_COUNTS_K)]
        max_k: usize,
    },
    /// Cones of the half-open triangulation and the resulting numerator.
    Triangulate {
        #[arg(long)]
        k: usize,
    },
    /// Generating function from the recursion.
    Gf {
        #[arg(long)]
        k: usize,
        /// All plane partitions instead of those with a positive last top entry.
        #[arg(long)]
        tilde: bool,
        /// Replace every y_i by a single y.
        #[arg(long)]
        single_y: bool,
    },
    /// Numerator over D_k.
    Numerator {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        tilde: bool,
    },
    /// Truncated series of the generating function.
    Series(SeriesArgs),
    /// Truncated series by direct enumeration.
    Oracle(SeriesArgs),
    /// p_{2,2} by Omega elimination.
    OmegaP22,
    /// p_{2,n+1} from p_{2,n} by Omega elimination.
    ApStep {
        #[arg(long)]
        n: usize,
    },
    /// Cross-check every route at width k.
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        degree: u32,
    },
}

#[derive(Debug, clap::Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub degree: u32,
    /// Only partitions whose last top entry is positive.
    #[arg(long)]
    pub strict_last: bool,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => Outcome::usage(format!("error: {msg}\n")),
        Err(Failure::Compute(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn check_k(k: usize, min: usize, max: usize, allow_large: bool) -> Run<()> {
    if k < min {
        return Err(Failure::Usage(format!("k must be at least {min}")));
    }
    if k > max && !allow_large {
        return Err(Failure::Usage(format!(
            "k = {k} exceeds {max}; pass --allow-large"
        )));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Run<Outcome> {
    let json = cli.format == Format::Json;
    let large = cli.allow_large;
    match &cli.command {
        Command::Rays { k } => {
            check_k(*k, 1, MAX_COUNTS_K, large)?;
            Ok(rays(*k, json))
        }
        Command::Counts { max_k } => {
            check_k(*max_k, 2, MAX_COUNTS_K, large)?;
            Ok(counts(*max_k, json))
        }
        Command::Triangulate { k } => {
            check_k(*k, 1, MAX_SYMBOLIC_K, large)?;
            triangulate(*k, json)
        }
        Command::Gf { k, tilde, single_y } => {
            check_k(*k, 1, MAX_SYMBOLIC_K, large)?;
            let mut g = compute(*k, variant(*tilde));
            if *single_y {
                g = specialize_single_y(&g, *k)?;
            }
            Ok(emit_gf(&g, json))
        }
        Command::Numerator { k, tilde } => {
            check_k(*k, 1, MAX_SYMBOLIC_K, large)?;
            Ok(emit_poly(&numerator(*k, variant(*tilde))?, json))
        }
        Command::Series(a) => {
            check_k(a.k, 1, MAX_SYMBOLIC_K, large)?;
            let g = compute(a.k, variant(!a.strict_last));
            Ok(emit_poly(&g.series(i64::from(a.degree))?, json))
        }
        Command::Oracle(a) => {
            check_k(a.k, 1, MAX_SYMBOLIC_K, large)?;
            Ok(emit_poly(
                &oracle_series(a.k, a.degree, a.strict_last),
                json,
            ))
        }
        Command::OmegaP22 => Ok(emit_box(&p22_via_omega()?, json)),
        Command::ApStep { n } => {
            check_k(*n + 1, 2, MAX_SYMBOLIC_K, large)?;
            let p = box_gf(*n)?;
            Ok(emit_box(&ap_step(&p)?, json))
        }
        Command::Verify { k, degree } => {
            check_k(*k, 1, MAX_SYMBOLIC_K, large)?;
            verify(*k, *degree, json)
        }
    }
}

fn variant(tilde: bool) -> Variant {
    if tilde {
        Variant::Tilde
    } else {
        Variant::Exact
    }
}

fn emit_poly(p: &Polynomial, json: bool) -> Outcome {
    Outcome::ok(if json {
        p.to_json() + "\n"
    } else {
        p.to_text() + "\n"
    })
}

fn emit_gf(g: &FactoredGF, json: bool) -> Outcome {
    Outcome::ok(if json {
        g.to_json() + "\n"
    } else {
        g.to_text() + "\n"
    })
}

fn emit_box(b: &BoxGF, json: bool) -> Outcome {
    emit_gf(&b.value, json)
}

fn rays(k: usize, json: bool) -> Outcome {
    let rays = rays_uk(k);
    if json {
        let v: Vec<Vec<i64>> = rays.iter().map(|r| r.vector()).collect();
        return Outcome::ok(json!({ "k": k, "rays": v }).to_string() + "\n");
    }
    let mut out = format!("|k | {k}|\n|ray nr | ray |\n");
    for (i, r) in rays.iter().enumerate() {
        let _ = writeln!(out, "|{i:02} | {r} |");
    }
    Outcome::ok(out)
}

#[derive(Serialize)]
struct CountsRow {
    k: usize,
    dim: usize,
    rays: usize,
    binomial: usize,
    cones: u64,
    catalan: u64,
}

/// `C(2k, k) / (k + 1)`.
pub fn catalan(k: usize) -> u64 {
    (0..k as u64).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn counts(max_k: usize, json: bool) -> Outcome {
    let rows: Vec<CountsRow> = (2..=max_k)
        .map(|k| CountsRow {
            k,
            dim: 2 * k,
            rays: rays_uk(k).len(),
            binomial: (k + 2) * (k + 1) / 2 - 1,
            cones: count_linear_extensions(k),
            catalan: catalan(k),
        })
        .collect();
    if json {
        return Outcome::ok(serde_json::to_string(&rows).expect("plain data") + "\n");
    }
    let header = [
        "k",
        "dim(C)=2k",
        "nr rays",
        "binom(2+k,2)-1",
        "nr cones in tri",
        "Catalan k",
    ];
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.k.to_string(),
                r.dim.to_string(),
                r.rays.to_string(),
                r.binomial.to_string(),
                r.cones.to_string(),
                r.catalan.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..6)
        .map(|c| {
            cells
                .iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |parts: Vec<&str>| {
        let padded: Vec<String> = parts
            .iter()
            .zip(&widths)
            .map(|(p, w)| format!("{p:>w$}"))
            .collect();
        padded.join("  ") + "\n"
    };
    let mut out = line(header.to_vec());
    for r in &cells {
        out += &line(r.iter().map(String::as_str).collect());
    }
    Outcome::ok(out)
}

fn triangulate(k: usize, json: bool) -> Run<Outcome> {
    let all = rays_uk(k);
    let index = |r| {
        all.iter()
            .position(|x| *x == r)
            .expect("every prefix ray is a basis ray")
    };
    let cones = triangulation(k);
    let num = gf_via_triangulation(k).clear_to(&denominator_dk(k)?)?;
    if json {
        let list: Vec<Value> = cones
            .iter()
            .map(|c| {
                let rays: Vec<usize> = c.rays.iter().map(|&r| index(r)).collect();
                let marked: Vec<usize> = c.halfopen_marks.iter().map(|&i| rays[i]).collect();
                json!({ "rays": rays, "marked": marked })
            })
            .collect();
        let v = json!({ "k": k, "cones": list, "numerator": num.to_json_value() });
        return Ok(Outcome::ok(v.to_string() + "\n"));
    }
    let mut out = format!("|k | {k}|\n|cone nr | rays | marked |\n");
    for (i, c) in cones.iter().enumerate() {
        let rays: Vec<String> = c.rays.iter().map(|&r| format!("{:02}", index(r))).collect();
        let marked: Vec<String> = c
            .halfopen_marks
            .iter()
            .map(|&j| format!("{:02}", index(c.rays[j])))
            .collect();
        let _ = writeln!(out, "|{i:02} | {} | {} |", rays.join(" "), marked.join(" "));
    }
    let _ = writeln!(out, "numerator: {}", num.to_text());
    Ok(Outcome::ok(out))
}

/// Outcome of one cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

/// Runs every cross-check at width `k` with series to total degree `degree`.
pub fn verify_checks(k: usize, degree: u32) -> crate::error::Result<Vec<Check>> {
    let n = i64::from(degree);
    let dk = denominator_dk(k)?;
    let q = compute(k, Variant::Exact);
    let qt = compute(k, Variant::Tilde);
    let num_t = qt.clear_to(&dk)?;
    let omega = box_gf(k)?.to_plane_partition();
    let tri = gf_via_triangulation(k);
    let stabilized = (&qt.series(n)? * &dk.expand()).truncate(n) == num_t.truncate(n);
    let checks = [
        (
            "recursion=oracle (last top entry positive)",
            q.series(n)? == oracle_series(k, degree, true),
        ),
        (
            "recursion=oracle (all)",
            qt.series(n)? == oracle_series(k, degree, false),
        ),
        ("triangulation=recursion", tri.clear_to(&dk)? == num_t),
        ("omega=recursion", omega.clear_to(&dk)? == num_t),
        ("numerator stabilization", stabilized),
    ];
    Ok(checks
        .into_iter()
        .map(|(name, ok)| Check {
            name: name.to_string(),
            ok,
        })
        .collect())
}

fn verify(k: usize, degree: u32, json: bool) -> Run<Outcome> {
    let checks = verify_checks(k, degree)?;
    let all_ok = checks.iter().all(|c| c.ok);
    let out = if json {
        json!({ "k": k, "degree": degree, "ok": all_ok, "checks": checks }).to_string() + "\n"
    } else {
        let mut s = String::new();
        for c in &checks {
            let _ = writeln!(s, "{}: {}", c.name, if c.ok { "ok" } else { "FAILED" });
        }
        s + if all_ok { "OK\n" } else { "FAILED\n" }
    };
    Ok(Outcome {
        code: if all_ok { 0 } else { 1 },
        stdout: out,
        stderr: String::new(),
    })
}
