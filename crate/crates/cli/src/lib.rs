//! Argument parsing and dispatch for the `graftwood` binary.
//!
//! [`execute`] never touches the process streams, so the binary and the
//! golden tests share one code path.

use std::cmp::Reverse;
use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use graftwood::structures::apply_elem;
use graftwood::suites::{run_suite, Suite, SuiteReport};
use graftwood::{
    coproduct, count_indexings, generate_set, generate_trees, oracle_count_indexings, series_coefficients,
    verify_against_enumeration, AlgebraElement, Coeff, CoproductVariant, FamilySelector, GraftOp, OrderedForest,
    PlaneTree, SeriesId, Signature, Strategy, Tensor2Element,
};
use serde_json::{json, Map, Value};

/// Environment variable overriding the default suite bound.
pub const MAX_DEGREE_VAR: &str = "GRAFTWOOD_MAX_DEGREE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn failed(stdout: String) -> Self {
        Outcome { code: 1, stdout, stderr: String::new() }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Debug, Parser)]
#[command(name = "graftwood", version, about = "Ordered forests, grafting operators and their Hopf structures")]
struct Cli {
    /// Structured output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List a family at one degree.
    Enumerate {
        /// G, G0, G<i>, T, Tplus, Tminus, Bl or Br.
        #[arg(long)]
        set: FamilySelector,
        #[arg(long)]
        degree: usize,
        /// Restrict G to one signature, e.g. "++-".
        #[arg(long)]
        signature: Option<Signature>,
        /// Only the trees of the family.
        #[arg(long)]
        trees: bool,
        #[arg(long)]
        count_only: bool,
    },
    /// Coproduct of one forest.
    Coproduct {
        /// full, reduced, left-root, right-root, prec or succ.
        #[arg(long, default_value = "full")]
        variant: CoproductVariant,
        forest: OrderedForest,
    },
    /// Apply concat, nwarrow, lgraft or rgraft.
    Op {
        name: GraftOp,
        #[arg(allow_hyphen_values = true)]
        f: OrderedForest,
        g: OrderedForest,
    },
    /// Coefficients of a counting series.
    Count {
        /// e.g. B_forests, Binfty_length(2), Bi_trees(3), D_dims.
        #[arg(long)]
        table: SeriesId,
        #[arg(long)]
        max: usize,
        /// Compare with the enumerated family.
        #[arg(long)]
        verify: bool,
    },
    /// Number of labellings of a plane tree landing in G or T.
    Indexings {
        #[arg(long)]
        family: FamilySelector,
        /// Plane tree in forest syntax; labels are ignored.
        tree: PlaneTree,
        /// Also run the brute-force count.
        #[arg(long)]
        oracle: bool,
    },
    /// Run a verification suite.
    Check {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

/// Runs one command line (`argv[0]` is the program name).
pub fn execute<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let json = cli.json;
    match cli.command {
        Command::Enumerate { set, degree, signature, trees, count_only } => {
            enumerate(set, degree, signature.as_ref(), trees, count_only, json)
        }
        Command::Coproduct { variant, forest } => match coproduct(&forest, variant) {
            Ok(t) => Outcome::ok(render_tensor(&t, json)),
            Err(e) => Outcome::error(1, e),
        },
        Command::Op { name, f, g } => {
            match apply_elem(name, &AlgebraElement::basis(f), &AlgebraElement::basis(g)) {
                Ok(r) => Outcome::ok(render_element(&r, json)),
                Err(e) => Outcome::error(1, e),
            }
        }
        Command::Count { table, max, verify } => count(table, max, verify, json),
        Command::Indexings { family, tree, oracle } => indexings(family, &tree, oracle, json),
        Command::Check { suite, max_degree } => {
            let max = match max_degree.map(Ok).unwrap_or_else(|| env_max_degree(suite)) {
                Ok(m) => m,
                Err(e) => return Outcome::error(2, e),
            };
            let report = run_suite(suite, max, Strategy::Parallel);
            let text = render_report(&report, json);
            if report.passed() {
                Outcome::ok(text)
            } else {
                Outcome::failed(text)
            }
        }
    }
}

fn env_max_degree(suite: Suite) -> Result<usize, String> {
    match std::env::var(MAX_DEGREE_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{MAX_DEGREE_VAR}={v:?} is not a degree")),
        Err(_) => Ok(suite.default_max_degree()),
    }
}

fn lines<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().fold(String::new(), |mut s, x| {
        let _ = writeln!(s, "{x}");
        s
    })
}

fn json_line(v: Value) -> String {
    format!("{v}\n")
}

fn big(n: impl std::fmt::Display) -> Value {
    // arbitrary_precision keeps the digits exact.
    serde_json::from_str(&n.to_string()).expect("integer literal")
}

fn enumerate(
    set: FamilySelector,
    degree: usize,
    signature: Option<&Signature>,
    trees: bool,
    count_only: bool,
    json: bool,
) -> Outcome {
    let result = if trees {
        if signature.is_some() {
            return Outcome::error(2, "--signature cannot be combined with --trees");
        }
        generate_trees(set, degree).map(|ts| ts.into_iter().map(OrderedForest::from).collect())
    } else {
        generate_set(set, degree, signature)
    };
    let forests: Vec<OrderedForest> = match result {
        Ok(f) => f,
        Err(e) => return Outcome::error(1, e),
    };
    let text = match (count_only, json) {
        (true, true) => json_line(json!(forests.len())),
        (true, false) => format!("{}\n", forests.len()),
        (false, true) => json_line(Value::from(forests.iter().map(|f| f.to_string()).collect::<Vec<_>>())),
        (false, false) => lines(&forests),
    };
    Outcome::ok(text)
}

fn coeff_string(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Terms with an empty trunk first, then those with nothing pruned, then the rest.
fn ordered_terms(t: &Tensor2Element) -> Vec<(&OrderedForest, &OrderedForest, &Coeff)> {
    let mut terms: Vec<_> = t.iter().map(|((a, b), c)| (a, b, c)).collect();
    terms.sort_by_key(|&(a, b, _)| (Reverse(b.is_empty()), Reverse(a.is_empty()), a.clone(), b.clone()));
    terms
}

fn render_tensor(t: &Tensor2Element, json: bool) -> String {
    let terms = ordered_terms(t);
    if json {
        let arr: Vec<Value> = terms
            .into_iter()
            .map(|(a, b, c)| json!({"lea": a.to_string(), "roo": b.to_string(), "coeff": coeff_string(c)}))
            .collect();
        return json_line(Value::from(arr));
    }
    if terms.is_empty() {
        return "0\n".into();
    }
    lines(terms.into_iter().map(|(a, b, c)| {
        let prefix = if c == &Coeff::from_integer(1.into()) { String::new() } else { format!("{} ", coeff_string(c)) };
        format!("{prefix}{a} ⊗ {b}")
    }))
}

fn render_element(e: &AlgebraElement, json: bool) -> String {
    if json {
        let arr: Vec<Value> =
            e.iter().map(|(f, c)| json!({"forest": f.to_string(), "coeff": coeff_string(c)})).collect();
        return json_line(Value::from(arr));
    }
    match e.iter().next() {
        Some((f, c)) if e.len() == 1 && c == &Coeff::from_integer(1.into()) => format!("{f}\n"),
        _ => format!("{e}\n"),
    }
}

fn count(table: SeriesId, max: usize, verify: bool, json: bool) -> Outcome {
    if !verify {
        let t = match series_coefficients(table, max) {
            Ok(t) => t,
            Err(e) => return Outcome::error(1, e),
        };
        let text = if json {
            let map: Map<String, Value> = t.iter().map(|(n, v)| (n.to_string(), big(v))).collect();
            json_line(Value::Object(map))
        } else {
            lines(t.iter().map(|(n, v)| format!("{n} {v}")))
        };
        return Outcome::ok(text);
    }
    let report = match verify_against_enumeration(table, max) {
        Ok(r) => r,
        Err(e) => return Outcome::error(1, e),
    };
    let text = if json {
        let map: Map<String, Value> = report
            .rows
            .iter()
            .map(|r| {
                let v = json!({"series": big(&r.expected), "enumerated": big(&r.enumerated), "match": r.matches()});
                (r.degree.to_string(), v)
            })
            .collect();
        json_line(Value::Object(map))
    } else {
        lines(report.rows.iter().map(|r| {
            let status = if r.matches() { "ok" } else { "MISMATCH" };
            format!("{} {} {} {status}", r.degree, r.expected, r.enumerated)
        }))
    };
    if report.all_match() {
        Outcome::ok(text)
    } else {
        Outcome::failed(text)
    }
}

fn indexings(family: FamilySelector, tree: &PlaneTree, oracle: bool, json: bool) -> Outcome {
    let formula = match count_indexings(tree, family) {
        Ok(n) => n,
        Err(e) => return Outcome::error(1, e),
    };
    if !oracle {
        let text = if json { json_line(json!({"count": big(&formula)})) } else { format!("{formula}\n") };
        return Outcome::ok(text);
    }
    let brute = match oracle_count_indexings(tree, family) {
        Ok(n) => n,
        Err(e) => return Outcome::error(1, e),
    };
    let agree = formula == brute.into();
    let text = if json {
        json_line(json!({"count": big(&formula), "oracle": brute, "match": agree}))
    } else {
        format!("{formula}\noracle {brute}\n")
    };
    if agree {
        Outcome::ok(text)
    } else {
        Outcome::failed(text)
    }
}

fn render_report(report: &SuiteReport, json: bool) -> String {
    if json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "cases": c.cases,
                    "failed": c.failed,
                    "passed": c.passed(),
                    "examples": c.examples,
                })
            })
            .collect();
        return json_line(json!({
            "suite": report.suite.to_string(),
            "max_degree": report.max_degree,
            "passed": report.passed(),
            "checks": checks,
        }));
    }
    let mut out = lines(&report.checks);
    let status = if report.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{status} suite {} (max degree {})", report.suite, report.max_degree);
    out
}
