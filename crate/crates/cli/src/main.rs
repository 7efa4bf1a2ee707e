//! Command-line surface for the winfty library.
//!
//! Exit codes: 0 = success or affirmative verdict, 1 = negative verdict,
//! 2 = malformed input.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};
use winfty::highest_weight::{QuasifiniteVerdict, RootStatus};
use winfty::{glinf, parabolic, HighestWeight, LabelSeq, Poly, Scalar, TruncSeries, Window};

use winfty_cli::parse::{self, parse_operator, parse_poly, parse_quasipoly, parse_scalar};

#[derive(Parser)]
#[command(
    name = "winfty",
    about = "Exact computations in the algebras of differential operators on the circle",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WeightArgs {
    /// Algebra order n (0 selects the full algebra)
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Central charge
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    c: String,
    /// Quasipolynomial phi with phi(0) = 0, e.g. "e(2)-1"
    #[arg(long, allow_hyphen_values = true)]
    phi: String,
}

impl WeightArgs {
    fn build(&self) -> Result<HighestWeight, CliError> {
        let c = parse_scalar(&self.c)?;
        let phi = parse_quasipoly(&self.phi)?;
        Ok(HighestWeight::new(self.n, c, phi)?)
    }
}

#[derive(Args)]
struct GlWeightArgs {
    /// Twist s, real with 0 <= s < 1
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    /// Diagonal labels as "index:value" pairs, comma separated (e.g. "1:1,-2:1/2")
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    lambda: String,
    /// Central charge
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    c: String,
}

impl GlWeightArgs {
    fn build(&self) -> Result<(Scalar, glinf::GlWeight), CliError> {
        let s = parse_scalar(&self.s)?;
        let c = parse_scalar(&self.c)?;
        let mut labels = Vec::new();
        for piece in self.lambda.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (idx, value) = piece.split_once(':').ok_or_else(|| {
                CliError::Input(format!("label '{piece}' is not of the form index:value"))
            })?;
            let idx: i64 = idx
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad label index '{idx}'")))?;
            labels.push((idx, parse_scalar(value.trim())?));
        }
        Ok((s, glinf::GlWeight::new(labels, c)))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Lie bracket of two operator expressions, with the central term
    Bracket {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Central two-cocycle of two operator expressions
    Cocycle {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Membership of an operator in the order-n subalgebra
    Member {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Characteristic polynomial of the weight
    Charpoly {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        json: bool,
    },
    /// Label sequence Delta_0 .. Delta_K of the weight
    Labels {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long = "K", default_value_t = 16)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Quasifiniteness certificate from phi or from a raw label prefix
    Quasifinite {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
        /// Comma-separated label prefix Delta_0,Delta_1,...
        #[arg(long, allow_hyphen_values = true)]
        deltas: Option<String>,
        #[arg(long = "K", default_value_t = 16)]
        order: usize,
        #[arg(long, default_value_t = 8)]
        deg: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exponents and multiplicities of phi + c
    Exponents {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        json: bool,
    },
    /// Check the exponents against the roots of the derived annihilator
    Cor49 {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        json: bool,
    },
    /// Unitarity of the weight (order 1)
    Unitary {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        json: bool,
    },
    /// Level-one Gram matrix on the basis t^{-1} D^{j+1} v
    Gram {
        #[command(flatten)]
        weight: WeightArgs,
        /// Matrix size
        #[arg(long, default_value_t = 8)]
        deg: usize,
        #[arg(long)]
        json: bool,
    },
    /// Depth-one singular-vector test for a candidate polynomial b(w)
    Singular {
        /// Candidate polynomial in w, divisible by [w]_n
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        weight: WeightArgs,
        /// Degree bound for the test monomials g = w^m
        #[arg(long, default_value_t = 8)]
        deg: usize,
        #[arg(long)]
        json: bool,
    },
    /// Zero-mode element acting as multiplication by w on depth-one vectors
    #[command(name = "s-op")]
    SOp {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        json: bool,
    },
    /// Centrally corrected matrix window of an order-1 operator
    Embed {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        s: String,
        #[arg(long = "N", default_value_t = 12)]
        radius: usize,
        #[arg(long = "K", default_value_t = 16)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Derivative-jet window layers over truncated polynomial coefficients
    #[command(name = "embed-rm")]
    EmbedRm {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long = "N", default_value_t = 12)]
        radius: usize,
        #[arg(long)]
        json: bool,
    },
    /// Window of an operator with the integer-twist index projection applied
    Project {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        s: String,
        #[arg(long = "N", default_value_t = 12)]
        radius: usize,
        #[arg(long)]
        json: bool,
    },
    /// Transport a matrix-algebra weight to an order-1 highest weight
    #[command(name = "glweight-to-phi")]
    GlweightToPhi {
        #[command(flatten)]
        weight: GlWeightArgs,
        #[arg(long)]
        json: bool,
    },
    /// Unitarity of a matrix-algebra weight at its twist
    #[command(name = "gl-unitary")]
    GlUnitary {
        #[command(flatten)]
        weight: GlWeightArgs,
        #[arg(long)]
        json: bool,
    },
    /// Echelon basis of the twisted difference span up to a degree
    Aspan {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        deg: usize,
        #[arg(long)]
        json: bool,
    },
    /// Echelon basis of the explicit parabolic family piece at depth k
    Parabolic {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        deg: usize,
        #[arg(long)]
        json: bool,
    },
    /// Minimal recurrence of a coefficient prefix within a degree bound
    Detect {
        /// Comma-separated coefficient prefix c_0,c_1,...
        #[arg(long, allow_hyphen_values = true)]
        deltas: String,
        #[arg(long, default_value_t = 8)]
        deg: usize,
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    Input(String),
}

impl From<parse::ParseError> for CliError {
    fn from(e: parse::ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<winfty::Error> for CliError {
    fn from(e: winfty::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Outcome of a subcommand: rendered text, the machine-readable document,
/// and whether the verdict was negative (exit code 1).
struct Outcome {
    text: String,
    doc: Json,
    negative: bool,
}

impl Outcome {
    fn new(text: impl Into<String>, doc: Json) -> Self {
        Outcome {
            text: text.into(),
            doc,
            negative: false,
        }
    }

    fn verdict(text: impl Into<String>, doc: Json, affirmative: bool) -> Self {
        Outcome {
            text: text.into(),
            doc,
            negative: !affirmative,
        }
    }
}

fn document(
    command: &str,
    inputs: Json,
    result: Json,
    certificates: Json,
    verified_to_order: Json,
) -> Json {
    json!({
        "command": command,
        "inputs": inputs,
        "result": result,
        "certificates": certificates,
        "verified_to_order": verified_to_order,
    })
}

fn poly_w(p: &Poly) -> String {
    p.display("w").to_string()
}

fn series_json(s: &TruncSeries) -> Json {
    Json::Array(s.coeffs().iter().map(|c| json!(c.to_string())).collect())
}

fn window_json(w: &Window) -> Json {
    let entries: Vec<Json> = w
        .nonzero_entries()
        .into_iter()
        .map(|(i, j, v)| json!([i, j, v.to_string()]))
        .collect();
    json!({
        "entries": entries,
        "central": w.central().to_string(),
        "margin": w.margin(),
    })
}

fn parse_deltas(text: &str) -> Result<Vec<Scalar>, CliError> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        out.push(parse_scalar(piece)?);
    }
    if out.is_empty() {
        return Err(CliError::Input("empty coefficient list".into()));
    }
    Ok(out)
}

fn span_outcome(command: &str, inputs: Json, span: &parabolic::PolySpan) -> Outcome {
    let mut text = String::new();
    for row in span.basis() {
        text.push_str(&poly_w(row));
        text.push('\n');
    }
    text.push_str(&format!(
        "dim: {}\ncodim: {} (ambient degree {})",
        span.dim(),
        span.codim(),
        span.ambient_deg()
    ));
    let doc = document(
        command,
        inputs,
        json!({
            "basis": span.basis().iter().map(poly_w).collect::<Vec<_>>(),
            "dim": span.dim(),
            "codim": span.codim(),
            "ambient_deg": span.ambient_deg(),
        }),
        Json::Null,
        Json::Null,
    );
    Outcome::new(text, doc)
}

fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Bracket { a, b, .. } => {
            let x = parse_operator(a)?;
            let y = parse_operator(b)?;
            let result = x.bracket(&y);
            Ok(Outcome::new(
                result.to_string(),
                document(
                    "bracket",
                    json!({"a": a, "b": b}),
                    json!(result.to_string()),
                    Json::Null,
                    Json::Null,
                ),
            ))
        }
        Command::Cocycle { a, b, .. } => {
            let x = parse_operator(a)?;
            let y = parse_operator(b)?;
            let result = x.cocycle(&y);
            Ok(Outcome::new(
                result.to_string(),
                document(
                    "cocycle",
                    json!({"a": a, "b": b}),
                    json!(result.to_string()),
                    Json::Null,
                    Json::Null,
                ),
            ))
        }
        Command::Member { a, n, .. } => {
            let x = parse_operator(a)?;
            let member = x.order_at_least(*n);
            Ok(Outcome::verdict(
                member.to_string(),
                document(
                    "member",
                    json!({"a": a, "n": n}),
                    json!(member),
                    Json::Null,
                    Json::Null,
                ),
                member,
            ))
        }
        Command::Charpoly { weight, .. } => {
            let hw = weight.build()?;
            let b = hw.characteristic_poly();
            Ok(Outcome::new(
                poly_w(&b),
                document(
                    "charpoly",
                    json!({"n": weight.n, "c": weight.c, "phi": weight.phi}),
                    json!(poly_w(&b)),
                    Json::Null,
                    Json::Null,
                ),
            ))
        }
        Command::Labels { weight, order, .. } => {
            let hw = weight.build()?;
            let labels = hw.labels(*order);
            let mut text = String::new();
            for (l, c) in labels.deltas.coeffs().iter().enumerate() {
                text.push_str(&format!("{l}: {c}\n"));
            }
            text.pop();
            Ok(Outcome::new(
                text,
                document(
                    "labels",
                    json!({"n": weight.n, "c": weight.c, "phi": weight.phi, "K": order}),
                    series_json(&labels.deltas),
                    Json::Null,
                    json!(order),
                ),
            ))
        }
        Command::Quasifinite {
            n,
            phi,
            deltas,
            order,
            deg,
            ..
        } => {
            let labels = match (phi, deltas) {
                (Some(phi), None) => {
                    let hw = HighestWeight::new(*n, Scalar::zero(), parse_quasipoly(phi)?)?;
                    // labels from phi are free to any order: extend the
                    // prefix so the degree bound is always admissible
                    let effective = (*order).max(2 * deg + 1 + n);
                    hw.labels(effective)
                }
                (None, Some(list)) => LabelSeq::from_deltas(*n, parse_deltas(list)?),
                _ => {
                    return Err(CliError::Input(
                        "provide exactly one of --phi or --deltas".into(),
                    ))
                }
            };
            let verdict = labels.quasifinite_check(*deg)?;
            let inputs = json!({"n": n, "phi": phi, "deltas": deltas, "K": order, "deg": deg});
            match verdict {
                QuasifiniteVerdict::QuasifiniteToOrder(rec) => Ok(Outcome::verdict(
                    format!(
                        "quasifinite to order {}; certificate: {}",
                        rec.verified_to,
                        poly_w(&rec.poly)
                    ),
                    document(
                        "quasifinite",
                        inputs,
                        json!("quasifinite"),
                        json!(poly_w(&rec.poly)),
                        json!(rec.verified_to),
                    ),
                    true,
                )),
                QuasifiniteVerdict::NotDetected { bound, verified_to } => Ok(Outcome::verdict(
                    format!(
                        "not detected at degree bound {bound} (verified to order {verified_to})"
                    ),
                    document(
                        "quasifinite",
                        inputs,
                        json!("not-detected"),
                        Json::Null,
                        json!(verified_to),
                    ),
                    false,
                )),
            }
        }
        Command::Exponents { weight, .. } => {
            let hw = weight.build()?;
            let exps = hw.exponents();
            let mut text = String::new();
            let mut arr = Vec::new();
            for (r, p) in exps.entries.iter().rev() {
                text.push_str(&format!("{r}: {}\n", p.display("x")));
                arr.push(json!([r.to_string(), p.display("x").to_string()]));
            }
            text.pop();
            if exps.entries.is_empty() {
                text = "(no exponents)".into();
            }
            Ok(Outcome::new(
                text,
                document(
                    "exponents",
                    json!({"n": weight.n, "c": weight.c, "phi": weight.phi}),
                    Json::Array(arr),
                    Json::Null,
                    Json::Null,
                ),
            ))
        }
        Command::Cor49 { weight, .. } => {
            let hw = weight.build()?;
            let report = hw.exponent_root_report();
            let mut text = String::new();
            let mut arr = Vec::new();
            for (r, status) in &report.entries {
                let s = match status {
                    RootStatus::Root => "root",
                    RootStatus::KernelExempt => "exempt (kernel exponent)",
                    RootStatus::NotRoot => "not a root",
                };
                text.push_str(&format!("{r}: {s}\n"));
                arr.push(json!([r.to_string(), s]));
            }
            let passed = report.passed();
            text.push_str(if passed { "pass" } else { "fail" });
            Ok(Outcome::verdict(
                text,
                document(
                    "cor49",
                    json!({"n": weight.n, "c": weight.c, "phi": weight.phi}),
                    json!(if passed { "pass" } else { "fail" }),
                    Json::Array(arr),
                    Json::Null,
                ),
                passed,
            ))
        }
        Command::Unitary { weight, .. } => {
            let hw = weight.build()?;
            let verdict = hw.unitary_classify()?;
            let unitary = verdict.is_unitary();
            Ok(Outcome::verdict(
                verdict.to_string(),
                document(
                    "unitary",
                    json!({"n": weight.n, "c": weight.c, "phi": weight.phi}),
                    json!(if unitary { "unitary" } else { "not unitary" }),
                    json!(verdict.to_string()),
                    Json::Null,
                ),
                unitary,
            ))
        }
        Command::Gram { weight, deg, .. } => {
            let hw = weight.build()?;
            let gram = hw.gram_level1(*deg)?;
            let mut text = String::new();
            let mut arr = Vec::new();
            for row in &gram {
                let rendered: Vec<String> = row.iter().map(Scalar::to_string).collect();
                text.push_str(&format!("[{}]\n", rendered.join(", ")));
                arr.push(Json::Array(
                    rendered.into_iter().map(Json::String).collect(),
                ));
            }
            text.pop();
            Ok(Outcome::new(
                text,
                document(
                    "gram",
                    json!({"n": weight.n, "c": weight.c, "phi": weight.phi, "deg": deg}),
                    Json::Array(arr),
                    Json::Null,
                    Json::Null,
                ),
            ))
        }
        Command::Singular { b, weight, deg, .. } => {
            let hw = weight.build()?;
            let candidate = parse_poly(b)?;
            let singular = hw.singular_check(&candidate, *deg)?;
            Ok(Outcome::verdict(
                singular.to_string(),
                document(
                    "singular",
                    json!({"b": b, "n": weight.n, "c": weight.c, "phi": weight.phi, "deg": deg}),
                    json!(singular),
                    Json::Null,
                    Json::Null,
                ),
                singular,
            ))
        }
        Command::SOp { weight, .. } => {
            let hw = weight.build()?;
            let s = hw.raising_operator()?;
            let rendered = s.display("D").to_string();
            Ok(Outcome::new(
                rendered.clone(),
                document(
                    "s-op",
                    json!({"n": weight.n, "c": weight.c, "phi": weight.phi}),
                    json!(rendered),
                    Json::Null,
                    Json::Null,
                ),
            ))
        }
        Command::Embed {
            a,
            s,
            radius,
            order,
            ..
        } => {
            let op = parse_operator(a)?;
            let twist = parse_scalar(s)?;
            let window = glinf::gl_embed_lifted(&op, &twist, *radius, *order)?;
            Ok(Outcome::new(
                window.to_string(),
                document(
                    "embed",
                    json!({"a": a, "s": s, "N": radius, "K": order}),
                    window_json(&window),
                    Json::Null,
                    json!(order),
                ),
            ))
        }
        Command::EmbedRm { a, s, m, radius, .. } => {
            let op = parse_operator(a)?;
            let twist = parse_scalar(s)?;
            let jets = glinf::gl_embed_jets(&op, &twist, *m, *radius)?;
            let mut text = String::new();
            let mut arr = Vec::new();
            for (i, layer) in jets.layers.iter().enumerate() {
                text.push_str(&format!("u^{i}:\n{layer}\n"));
                arr.push(window_json(layer));
            }
            text.pop();
            Ok(Outcome::new(
                text,
                document(
                    "embed-rm",
                    json!({"a": a, "s": s, "m": m, "N": radius}),
                    Json::Array(arr),
                    Json::Null,
                    Json::Null,
                ),
            ))
        }
        Command::Project { a, s, radius, .. } => {
            let op = parse_operator(a)?;
            let twist = parse_scalar(s)?;
            let Some(k) = twist.as_i64() else {
                return Err(CliError::Input(format!("twist {s} is not an integer")));
            };
            let window = glinf::gl_embed(&op, &twist, *radius)?.project_index(k);
            Ok(Outcome::new(
                window.to_string(),
                document(
                    "project",
                    json!({"a": a, "s": s, "N": radius}),
                    window_json(&window),
                    Json::Null,
                    Json::Null,
                ),
            ))
        }
        Command::GlweightToPhi { weight, .. } => {
            let (s, gw) = weight.build()?;
            let hw = glinf::induced_highest_weight(&[(s, gw)])?;
            let exps = hw.exponents();
            let mut text = format!("phi: {}\nc: {}\nexponents:", hw.phi(), hw.central_charge());
            let mut arr = Vec::new();
            for (r, p) in exps.entries.iter().rev() {
                text.push_str(&format!("\n  {r}: {}", p.display("x")));
                arr.push(json!([r.to_string(), p.display("x").to_string()]));
            }
            Ok(Outcome::new(
                text,
                document(
                    "glweight-to-phi",
                    json!({"s": weight.s, "lambda": weight.lambda, "c": weight.c}),
                    json!({
                        "phi": hw.phi().to_string(),
                        "c": hw.central_charge().to_string(),
                        "exponents": arr,
                    }),
                    Json::Null,
                    Json::Null,
                ),
            ))
        }
        Command::GlUnitary { weight, .. } => {
            let (s, gw) = weight.build()?;
            let verdict = glinf::gl_unitary_check(&gw, &s)?;
            let unitary = verdict.is_unitary();
            Ok(Outcome::verdict(
                verdict.to_string(),
                document(
                    "gl-unitary",
                    json!({"s": weight.s, "lambda": weight.lambda, "c": weight.c}),
                    json!(if unitary { "unitary" } else { "not unitary" }),
                    json!(verdict.to_string()),
                    Json::Null,
                ),
                unitary,
            ))
        }
        Command::Aspan { n, k, deg, .. } => {
            if *k == 0 {
                return Err(CliError::Input("k must be positive".into()));
            }
            let span = parabolic::twisted_difference_span(*n, *k, *deg);
            Ok(span_outcome(
                "aspan",
                json!({"n": n, "k": k, "deg": deg}),
                &span,
            ))
        }
        Command::Parabolic { n, k, deg, .. } => {
            if *k == 0 {
                return Err(CliError::Input("k must be positive".into()));
            }
            let span = parabolic::example_parabolic(*n, *k, *deg);
            Ok(span_outcome(
                "parabolic",
                json!({"n": n, "k": k, "deg": deg}),
                &span,
            ))
        }
        Command::Detect { deltas, deg, .. } => {
            let coeffs = parse_deltas(deltas)?;
            let series = TruncSeries::from_coeffs(coeffs);
            let found = winfty::detect_recurrence(&series, *deg)?;
            let inputs = json!({"deltas": deltas, "deg": deg});
            match found {
                Some(rec) => Ok(Outcome::verdict(
                    format!(
                        "{} (verified to order {})",
                        poly_w(&rec.poly),
                        rec.verified_to
                    ),
                    document(
                        "detect",
                        inputs,
                        json!(poly_w(&rec.poly)),
                        json!(poly_w(&rec.poly)),
                        json!(rec.verified_to),
                    ),
                    true,
                )),
                None => Ok(Outcome::verdict(
                    format!(
                        "none (degree bound {deg}, verified to order {})",
                        series.order()
                    ),
                    document(
                        "detect",
                        inputs,
                        json!("none"),
                        Json::Null,
                        json!(series.order()),
                    ),
                    false,
                )),
            }
        }
    }
}

fn wants_json(command: &Command) -> bool {
    match command {
        Command::Bracket { json, .. }
        | Command::Cocycle { json, .. }
        | Command::Member { json, .. }
        | Command::Charpoly { json, .. }
        | Command::Labels { json, .. }
        | Command::Quasifinite { json, .. }
        | Command::Exponents { json, .. }
        | Command::Cor49 { json, .. }
        | Command::Unitary { json, .. }
        | Command::Gram { json, .. }
        | Command::Singular { json, .. }
        | Command::SOp { json, .. }
        | Command::Embed { json, .. }
        | Command::EmbedRm { json, .. }
        | Command::Project { json, .. }
        | Command::GlweightToPhi { json, .. }
        | Command::GlUnitary { json, .. }
        | Command::Aspan { json, .. }
        | Command::Parabolic { json, .. }
        | Command::Detect { json, .. } => *json,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(outcome) => {
            if wants_json(&cli.command) {
                println!("{}", serde_json::to_string_pretty(&outcome.doc).unwrap());
            } else {
                println!("{}", outcome.text);
            }
            if outcome.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
