//! Command-line surface: every library operation behind JSON-in/JSON-out
//! subcommands, plus `selftest` running the invariant suites.
//!
//! Exit codes: 0 success, 1 failed self-test, 2 malformed input (usage or
//! schema violations, with a diagnostic naming the offending field),
//! 3 domain errors (out-of-range parameters, non-quasi-unipotent input, ...).

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bc_cli::json::{self as codec, SchemaError};
use bc_cli::suites;
use bc_core::bc::{rationalize, BcElem};
use bc_core::expectation::{
    expectation_class, expectation_groupring, hodge_expectation, hurwitz_zeta, riemann_zeta, Beta,
};
use bc_core::group_ring::RatElem;
use bc_core::orbits::OrbitSum;
use bc_core::scissors::{finite_set_assembler, induced_k0_map, K0Group};
use bc_core::witt::{burnside_to_witt, WittVector};

#[derive(Parser)]
#[command(
    name = "bc-cli",
    about = "Exact Bost-Connes computations on the cyclotomic group ring and its lifts",
    version
)]
struct Cli {
    /// Read the primary JSON payload from standard input instead of a flag
    #[arg(long, global = true)]
    stdin: bool,
    /// Pretty-print JSON output
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Operations in the group rings Z[Q/Z] and Q[Q/Z]
    Groupring {
        #[command(subcommand)]
        op: GroupringOp,
    },
    /// The integral Bost-Connes algebra and its rational form
    Bc {
        #[command(subcommand)]
        op: BcOp,
    },
    /// The equivariant orbit model
    Equiv {
        #[command(subcommand)]
        op: EquivOp,
    },
    /// Truncated big Witt vectors and the Burnside correspondence
    Witt {
        #[command(subcommand)]
        op: WittOp,
    },
    /// Graded integer endomorphisms and spectrum Euler characteristics
    Dyn {
        #[command(subcommand)]
        op: DynOp,
    },
    /// Gibbs expectation values
    Expect {
        #[command(subcommand)]
        op: ExpectOp,
    },
    /// pi_0 scissor-congruence K-groups
    K0 {
        #[command(subcommand)]
        op: K0Op,
    },
    /// Run the invariant suites of every module
    Selftest {
        /// Run a single named suite
        #[arg(long)]
        suite: Option<String>,
        /// Seed for the randomized checks
        #[arg(long, default_value_t = suites::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct ElemArg {
    /// Group-ring element JSON
    #[arg(long)]
    elem: Option<String>,
}

#[derive(Subcommand)]
enum GroupringOp {
    /// Convolution product of two elements
    Mul {
        #[arg(long)]
        lhs: Option<String>,
        #[arg(long)]
        rhs: String,
    },
    /// The endomorphism sigma_n: e(r) -> e(nr)
    Sigma {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        elem: ElemArg,
    },
    /// The map rho_tilde_n (or rho_n = rho_tilde_n / n with --rational)
    Rho {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        elem: ElemArg,
        /// Divide by n; requires rational coefficients
        #[arg(long)]
        rational: bool,
    },
    /// The idempotent pi_n in Q[Q/Z]
    Pi {
        #[arg(long)]
        n: u64,
    },
    /// Membership in the subring spanned by the elements n pi_n
    Subring {
        #[command(flatten)]
        elem: ElemArg,
    },
}

#[derive(Subcommand)]
enum BcOp {
    /// Normal-form product of two elements
    Mul {
        #[arg(long)]
        lhs: Option<String>,
        #[arg(long)]
        rhs: String,
    },
    /// Rewrite in the rational crossed-product presentation (mu basis)
    Rationalize {
        #[command(flatten)]
        elem: ElemArg,
    },
}

#[derive(Subcommand)]
enum EquivOp {
    /// Product of orbit sums (diagonal action)
    Product {
        #[arg(long)]
        lhs: Option<String>,
        #[arg(long)]
        rhs: String,
    },
    /// sigma_n on orbit sums
    Sigma {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        elem: ElemArg,
    },
    /// rho_tilde_n (Verschiebung) on orbit sums
    Rho {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        elem: ElemArg,
    },
    /// The equivariant Euler characteristic into Z[Q/Z]
    Chi {
        #[command(flatten)]
        elem: ElemArg,
    },
}

#[derive(Args)]
struct TruncArg {
    /// Truncation generators (comma separated); the set is their divisor
    /// closure
    #[arg(long, default_value = "24")]
    trunc: String,
}

#[derive(Subcommand)]
enum WittOp {
    /// Ghost components of a Witt vector
    Ghost {
        #[command(flatten)]
        elem: ElemArg,
    },
    /// Solve ghost data back to Witt coordinates (integrality-checked)
    FromGhost {
        #[command(flatten)]
        trunc: TruncArg,
        #[arg(long)]
        ghosts: Option<String>,
    },
    /// Witt sum
    Add {
        #[arg(long)]
        lhs: Option<String>,
        #[arg(long)]
        rhs: String,
    },
    /// Witt product
    Mul {
        #[arg(long)]
        lhs: Option<String>,
        #[arg(long)]
        rhs: String,
    },
    /// Frobenius F_n
    Frob {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        elem: ElemArg,
    },
    /// Verschiebung V_n
    Versch {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        elem: ElemArg,
    },
    /// The image of an orbit sum under the Burnside-Witt correspondence
    FromBurnside {
        #[command(flatten)]
        trunc: TruncArg,
        #[arg(long)]
        orbits: Option<String>,
    },
}

#[derive(Args)]
struct EndoArg {
    /// Graded endomorphism JSON {"blocks": [{"degree", "matrix"}]}
    #[arg(long)]
    g: Option<String>,
}

#[derive(Subcommand)]
enum DynOp {
    /// Quasi-unipotence test with cyclotomic certificates
    Check {
        #[command(flatten)]
        g: EndoArg,
        /// Permit zero eigenvalues (the quasi-idempotent condition)
        #[arg(long)]
        allow_zero: bool,
    },
    /// The spectrum Euler characteristic in Z[Q/Z]
    Spectrum {
        #[command(flatten)]
        g: EndoArg,
        /// Weight degrees by (-1)^k
        #[arg(long)]
        signed: bool,
    },
    /// sigma_n: replace the map by its n-th power
    Sigma {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        g: EndoArg,
    },
    /// rho_tilde_n: the Verschiebung block construction
    Rho {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        g: EndoArg,
    },
    /// Kuenneth product
    Product {
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        h: String,
    },
    /// Degreewise disjoint union
    Union {
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        h: String,
    },
}

#[derive(Subcommand)]
enum ExpectOp {
    /// Gibbs expectation of a group-ring element
    Value {
        #[arg(long)]
        beta: f64,
        #[command(flatten)]
        elem: ElemArg,
    },
    /// Expectation of an equivariant orbit class
    Class {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        orbits: Option<String>,
    },
    /// Equivariant Hodge-Deligne expectation polynomial
    Hodge {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        table: Option<String>,
    },
    /// Riemann zeta (or Hurwitz zeta with --a)
    Zeta {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        a: Option<f64>,
    },
}

#[derive(Subcommand)]
enum K0Op {
    /// K_0 of an assembler presentation
    Compute {
        #[arg(long)]
        pres: Option<String>,
    },
    /// The matrix induced on K_0 by a functor given on generators
    Induced {
        #[arg(long)]
        src: Option<String>,
        #[arg(long)]
        dst: String,
        /// Object images JSON {label: [{"o": label, "c": int}]}
        #[arg(long)]
        map: String,
    },
    /// The level-n finite-set assembler and its K_0
    FiniteSets {
        #[arg(long)]
        n: u64,
        /// Also emit the full presentation
        #[arg(long)]
        emit_presentation: bool,
    },
}

enum CliError {
    Schema(SchemaError),
    Domain(bc_core::Error),
    Usage(String),
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError::Schema(e)
    }
}

impl From<bc_core::Error> for CliError {
    fn from(e: bc_core::Error) -> Self {
        CliError::Domain(e)
    }
}

/// Resolves JSON payload flags, falling back to standard input (once) when
/// `--stdin` was given and the flag is absent.
struct PayloadSource {
    stdin_allowed: bool,
    stdin_used: bool,
}

impl PayloadSource {
    fn new(stdin_allowed: bool) -> PayloadSource {
        PayloadSource {
            stdin_allowed,
            stdin_used: false,
        }
    }

    fn take(&mut self, flag: &str, arg: &Option<String>) -> Result<String, CliError> {
        if let Some(s) = arg {
            return Ok(s.clone());
        }
        if self.stdin_allowed && !self.stdin_used {
            self.stdin_used = true;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
            return Ok(buf);
        }
        Err(CliError::Usage(format!(
            "missing --{flag} (pass --stdin to read it from standard input)"
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut payloads = PayloadSource::new(cli.stdin);
    match dispatch(cli.cmd, &mut payloads) {
        Ok(Output::Json(v)) => {
            let rendered = if cli.pretty {
                serde_json::to_string_pretty(&v).expect("serializable")
            } else {
                serde_json::to_string(&v).expect("serializable")
            };
            println!("{rendered}");
            ExitCode::SUCCESS
        }
        Ok(Output::Text(s)) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Output::SelftestFailed(s)) => {
            println!("{s}");
            ExitCode::from(1)
        }
        Err(CliError::Schema(e)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("domain error: {e}");
            ExitCode::from(3)
        }
    }
}

enum Output {
    Json(Value),
    Text(String),
    SelftestFailed(String),
}

fn parse_payload(s: &str, path: &str) -> Result<Value, CliError> {
    Ok(codec::parse_value(s, path)?)
}

fn positive(n: u64, flag: &str) -> Result<u64, CliError> {
    if n == 0 {
        return Err(CliError::Usage(format!("--{flag} must be >= 1")));
    }
    Ok(n)
}

fn beta_arg(beta: f64) -> Result<Beta, CliError> {
    Ok(Beta::new(beta)?)
}

fn dispatch(cmd: Cmd, payloads: &mut PayloadSource) -> Result<Output, CliError> {
    match cmd {
        Cmd::Groupring { op } => groupring(op, payloads),
        Cmd::Bc { op } => bc(op, payloads),
        Cmd::Equiv { op } => equiv(op, payloads),
        Cmd::Witt { op } => witt(op, payloads),
        Cmd::Dyn { op } => dynamical(op, payloads),
        Cmd::Expect { op } => expect(op, payloads),
        Cmd::K0 { op } => k0(op, payloads),
        Cmd::Selftest { suite, seed } => selftest(suite, seed),
    }
}

fn elem_payload(
    payloads: &mut PayloadSource,
    flag: &str,
    arg: &Option<String>,
) -> Result<codec::ElemPayload, CliError> {
    let raw = payloads.take(flag, arg)?;
    let v = parse_payload(&raw, "$")?;
    Ok(codec::parse_elem_auto(&v, "$")?)
}

fn groupring(op: GroupringOp, payloads: &mut PayloadSource) -> Result<Output, CliError> {
    use codec::ElemPayload::{Int, Rat};
    match op {
        GroupringOp::Mul { lhs, rhs } => {
            let l = elem_payload(payloads, "lhs", &lhs)?;
            let r = elem_payload(payloads, "rhs", &Some(rhs))?;
            let v = match (l, r) {
                (Int(a), Int(b)) => codec::int_elem_to_value(&a.mul(&b)),
                (Rat(a), Rat(b)) => codec::rat_elem_to_value(&a.mul(&b)),
                (Int(a), Rat(b)) => codec::rat_elem_to_value(&a.to_rational().mul(&b)),
                (Rat(a), Int(b)) => codec::rat_elem_to_value(&a.mul(&b.to_rational())),
            };
            Ok(Output::Json(v))
        }
        GroupringOp::Sigma { n, elem } => {
            let n = positive(n, "n")?;
            let v = match elem_payload(payloads, "elem", &elem.elem)? {
                Int(a) => codec::int_elem_to_value(&a.sigma(n)),
                Rat(a) => codec::rat_elem_to_value(&a.sigma(n)),
            };
            Ok(Output::Json(v))
        }
        GroupringOp::Rho { n, elem, rational } => {
            let n = positive(n, "n")?;
            let payload = elem_payload(payloads, "elem", &elem.elem)?;
            let v = match (payload, rational) {
                (Int(a), false) => codec::int_elem_to_value(&a.rho_tilde(n)),
                (Rat(a), false) => codec::rat_elem_to_value(&a.rho_tilde(n)),
                (Rat(a), true) => codec::rat_elem_to_value(&a.rho(n)),
                (Int(_), true) => return Err(bc_core::Error::CoefficientMode.into()),
            };
            Ok(Output::Json(v))
        }
        GroupringOp::Pi { n } => {
            let n = positive(n, "n")?;
            Ok(Output::Json(codec::rat_elem_to_value(&RatElem::pi(n))))
        }
        GroupringOp::Subring { elem } => {
            let raw = payloads.take("elem", &elem.elem)?;
            let v = parse_payload(&raw, "$")?;
            let x = codec::parse_int_elem(&v, "$")?;
            let out = match x.in_fixed_subring() {
                Some(cert) => {
                    let coeffs: serde_json::Map<String, Value> = cert
                        .iter()
                        .map(|(d, a)| (d.to_string(), codec::bigint_to_value(a)))
                        .collect();
                    json!({"member": true, "coefficients": coeffs})
                }
                None => json!({"member": false}),
            };
            Ok(Output::Json(out))
        }
    }
}

fn bc(op: BcOp, payloads: &mut PayloadSource) -> Result<Output, CliError> {
    let parse = |raw: &str| -> Result<BcElem, CliError> {
        let v = codec::parse_value(raw, "$")?;
        Ok(codec::parse_bc_elem(&v, "$")?)
    };
    match op {
        BcOp::Mul { lhs, rhs } => {
            let l = parse(&payloads.take("lhs", &lhs)?)?;
            let r = parse(&payloads.take("rhs", &Some(rhs))?)?;
            Ok(Output::Json(codec::bc_elem_to_value(&l.mul(&r))))
        }
        BcOp::Rationalize { elem } => {
            let u = parse(&payloads.take("elem", &elem.elem)?)?;
            Ok(Output::Json(codec::rational_bc_to_value(&rationalize(&u))))
        }
    }
}

fn equiv(op: EquivOp, payloads: &mut PayloadSource) -> Result<Output, CliError> {
    let parse = |raw: &str| -> Result<OrbitSum, CliError> {
        let v = codec::parse_value(raw, "$")?;
        Ok(codec::parse_orbit_sum(&v, "$")?)
    };
    match op {
        EquivOp::Product { lhs, rhs } => {
            let l = parse(&payloads.take("lhs", &lhs)?)?;
            let r = parse(&payloads.take("rhs", &Some(rhs))?)?;
            Ok(Output::Json(codec::orbit_sum_to_value(&l.mul(&r))))
        }
        EquivOp::Sigma { n, elem } => {
            let n = positive(n, "n")?;
            let x = parse(&payloads.take("elem", &elem.elem)?)?;
            Ok(Output::Json(codec::orbit_sum_to_value(&x.sigma(n))))
        }
        EquivOp::Rho { n, elem } => {
            let n = positive(n, "n")?;
            let x = parse(&payloads.take("elem", &elem.elem)?)?;
            Ok(Output::Json(codec::orbit_sum_to_value(&x.rho_tilde(n))))
        }
        EquivOp::Chi { elem } => {
            let x = parse(&payloads.take("elem", &elem.elem)?)?;
            Ok(Output::Json(codec::int_elem_to_value(&x.chi())))
        }
    }
}

fn witt(op: WittOp, payloads: &mut PayloadSource) -> Result<Output, CliError> {
    let parse = |raw: &str| -> Result<WittVector, CliError> {
        let v = codec::parse_value(raw, "$")?;
        Ok(codec::parse_witt(&v, "$")?)
    };
    match op {
        WittOp::Ghost { elem } => {
            let w = parse(&payloads.take("elem", &elem.elem)?)?;
            Ok(Output::Json(codec::ghosts_to_value(&w.ghost())))
        }
        WittOp::FromGhost { trunc, ghosts } => {
            let t = codec::parse_trunc_gens(&trunc.trunc)?;
            let raw = payloads.take("ghosts", &ghosts)?;
            let g = codec::parse_ghosts(&parse_payload(&raw, "$")?, "$")?;
            let w = WittVector::from_ghost(t, &g)?;
            Ok(Output::Json(codec::witt_to_value(&w)))
        }
        WittOp::Add { lhs, rhs } => {
            let l = parse(&payloads.take("lhs", &lhs)?)?;
            let r = parse(&payloads.take("rhs", &Some(rhs))?)?;
            Ok(Output::Json(codec::witt_to_value(&l.add(&r)?)))
        }
        WittOp::Mul { lhs, rhs } => {
            let l = parse(&payloads.take("lhs", &lhs)?)?;
            let r = parse(&payloads.take("rhs", &Some(rhs))?)?;
            Ok(Output::Json(codec::witt_to_value(&l.mul(&r)?)))
        }
        WittOp::Frob { n, elem } => {
            let n = positive(n, "n")?;
            let w = parse(&payloads.take("elem", &elem.elem)?)?;
            Ok(Output::Json(codec::witt_to_value(&w.frobenius(n)?)))
        }
        WittOp::Versch { n, elem } => {
            let n = positive(n, "n")?;
            let w = parse(&payloads.take("elem", &elem.elem)?)?;
            Ok(Output::Json(codec::witt_to_value(&w.verschiebung(n))))
        }
        WittOp::FromBurnside { trunc, orbits } => {
            let t = codec::parse_trunc_gens(&trunc.trunc)?;
            let raw = payloads.take("orbits", &orbits)?;
            let x = codec::parse_orbit_sum(&parse_payload(&raw, "$")?, "$")?;
            Ok(Output::Json(codec::witt_to_value(&burnside_to_witt(
                &x, &t,
            ))))
        }
    }
}

fn dynamical(op: DynOp, payloads: &mut PayloadSource) -> Result<Output, CliError> {
    let parse = |raw: &str| -> Result<bc_core::dynamical::GradedEndo, CliError> {
        let v = codec::parse_value(raw, "$")?;
        Ok(codec::parse_graded_endo(&v, "$")?)
    };
    match op {
        DynOp::Check { g, allow_zero } => {
            let endo = parse(&payloads.take("g", &g.g)?)?;
            let check = endo.quasi_unipotent_check(allow_zero);
            let certs: Vec<Value> = check
                .certificates
                .iter()
                .map(|(k, fac)| {
                    let mut v = codec::cyclo_factorization_to_value(fac);
                    v.as_object_mut()
                        .expect("object")
                        .insert("degree".into(), json!(k));
                    v
                })
                .collect();
            Ok(Output::Json(json!({
                "quasi_unipotent": check.passed,
                "allow_zero": check.allow_zero,
                "certificates": certs,
            })))
        }
        DynOp::Spectrum { g, signed } => {
            let endo = parse(&payloads.take("g", &g.g)?)?;
            let spec = endo.spectrum_euler(signed)?;
            Ok(Output::Json(codec::int_elem_to_value(&spec)))
        }
        DynOp::Sigma { n, g } => {
            let n = positive(n, "n")?;
            let endo = parse(&payloads.take("g", &g.g)?)?;
            Ok(Output::Json(codec::graded_endo_to_value(&endo.sigma_n(n))))
        }
        DynOp::Rho { n, g } => {
            let n = positive(n, "n")?;
            let endo = parse(&payloads.take("g", &g.g)?)?;
            Ok(Output::Json(codec::graded_endo_to_value(
                &endo.rho_tilde_n(n),
            )))
        }
        DynOp::Product { g, h } => {
            let a = parse(&payloads.take("g", &g)?)?;
            let b = parse(&payloads.take("h", &Some(h))?)?;
            Ok(Output::Json(codec::graded_endo_to_value(&a.product(&b))))
        }
        DynOp::Union { g, h } => {
            let a = parse(&payloads.take("g", &g)?)?;
            let b = parse(&payloads.take("h", &Some(h))?)?;
            Ok(Output::Json(codec::graded_endo_to_value(
                &a.disjoint_union(&b),
            )))
        }
    }
}

fn expect(op: ExpectOp, payloads: &mut PayloadSource) -> Result<Output, CliError> {
    match op {
        ExpectOp::Value { beta, elem } => {
            let b = beta_arg(beta)?;
            let z = match elem_payload(payloads, "elem", &elem.elem)? {
                codec::ElemPayload::Int(x) => expectation_groupring(&x, b),
                codec::ElemPayload::Rat(x) => expectation_groupring(&x, b),
            };
            Ok(Output::Text(codec::format_complex(z)))
        }
        ExpectOp::Class { beta, orbits } => {
            let b = beta_arg(beta)?;
            let raw = payloads.take("orbits", &orbits)?;
            let x = codec::parse_orbit_sum(&parse_payload(&raw, "$")?, "$")?;
            Ok(Output::Text(codec::format_complex(expectation_class(
                &x, b,
            ))))
        }
        ExpectOp::Hodge { beta, table } => {
            let b = beta_arg(beta)?;
            let raw = payloads.take("table", &table)?;
            let t = codec::parse_hodge_table(&parse_payload(&raw, "$")?, "$")?;
            let poly = hodge_expectation(&t, b);
            let coeffs: Vec<Value> = poly
                .coeffs()
                .map(|(&(p, q), c)| json!({"p": p, "q": q, "c": codec::format_complex(*c)}))
                .collect();
            let weight: Vec<Value> = poly
                .weight_poly()
                .iter()
                .map(|(w, c)| json!({"degree": w, "c": codec::format_complex(*c)}))
                .collect();
            Ok(Output::Json(json!({
                "coeffs": coeffs,
                "weight": weight,
                "at_one": codec::format_complex(poly.at_one()),
            })))
        }
        ExpectOp::Zeta { beta, a } => {
            let b = beta_arg(beta)?;
            let v = match a {
                None => riemann_zeta(b),
                Some(a) => hurwitz_zeta(b, a)?,
            };
            Ok(Output::Text(codec::format_f64(v)))
        }
    }
}

fn k0(op: K0Op, payloads: &mut PayloadSource) -> Result<Output, CliError> {
    match op {
        K0Op::Compute { pres } => {
            let raw = payloads.take("pres", &pres)?;
            let p = codec::parse_presentation(&parse_payload(&raw, "$")?, "$")?;
            let k = K0Group::from_presentation(&p)?;
            Ok(Output::Json(codec::k0_group_to_value(&k)))
        }
        K0Op::Induced { src, dst, map } => {
            let raw = payloads.take("src", &src)?;
            let ps = codec::parse_presentation(&parse_payload(&raw, "$")?, "$")?;
            let pd = codec::parse_presentation(&parse_payload(&dst, "$.dst")?, "$.dst")?;
            let images = codec::parse_object_images(&parse_payload(&map, "$.map")?, "$.map")?;
            let ks = K0Group::from_presentation(&ps)?;
            let kd = K0Group::from_presentation(&pd)?;
            let matrix = induced_k0_map(&ks, &kd, &images)?;
            let rows: Vec<Value> = matrix
                .iter()
                .map(|row| Value::Array(row.iter().map(codec::bigint_to_value).collect()))
                .collect();
            Ok(Output::Json(json!({
                "src_dims": ks.dims(),
                "dst_dims": kd.dims(),
                "matrix": rows,
            })))
        }
        K0Op::FiniteSets {
            n,
            emit_presentation,
        } => {
            let n = positive(n, "n")?;
            let p = finite_set_assembler(n);
            let k = K0Group::from_presentation(&p)?;
            let mut out = json!({
                "level": n,
                "objects": p.objects.len(),
                "families": p.families.len(),
                "rank": k.rank,
                "torsion": k.torsion.iter().map(codec::bigint_to_value).collect::<Vec<_>>(),
            });
            if emit_presentation {
                out.as_object_mut()
                    .expect("object")
                    .insert("presentation".into(), codec::presentation_to_value(&p));
            }
            Ok(Output::Json(out))
        }
    }
}

fn selftest(suite: Option<String>, seed: u64) -> Result<Output, CliError> {
    let results = match &suite {
        Some(name) => {
            let r = suites::run_suite(name, seed).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown suite {name:?}; available: {}",
                    suites::SUITE_NAMES.join(", ")
                ))
            })?;
            vec![r]
        }
        None => suites::run_all(seed),
    };
    let mut lines = Vec::new();
    let mut all_passed = true;
    let mut total_ms = 0u128;
    for r in &results {
        total_ms += r.millis;
        match &r.outcome {
            Ok(detail) => {
                lines.push(format!("{:<10} pass  {:>6} ms  {detail}", r.name, r.millis));
            }
            Err(violation) => {
                all_passed = false;
                lines.push(format!(
                    "{:<10} FAIL  {:>6} ms  {violation}",
                    r.name, r.millis
                ));
            }
        }
    }
    let verdict = if all_passed { "passed" } else { "FAILED" };
    lines.push(format!(
        "selftest: {}/{} suites {verdict} in {total_ms} ms (seed {seed})",
        results.iter().filter(|r| r.outcome.is_ok()).count(),
        results.len(),
    ));
    let report = lines.join("\n");
    if all_passed {
        Ok(Output::Text(report))
    } else {
        Ok(Output::SelftestFailed(report))
    }
}
