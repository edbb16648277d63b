//! The `torsep` command line.
//!
//! Every subcommand prints one result document on stdout. Exit status: 0 on
//! success (boolean verdicts live in the document, never in the status), 2 on
//! invalid input, 3 when a resource cap is hit, 1 on an internal failure.

mod documents;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::lattice::{kernel_basis, lattice_equal, LatticeBasis};
use crate::limits::Limits;
use crate::segre_veronese::{
    monomial_min_construction, monomial_min_size, segre_weight_matrix, separating_size_bounds, sv_weight_matrix,
    SvSpec,
};
use crate::semigroup::MonomialSemigroup;
use crate::septest::{
    check_separating, check_separating_char0, check_separating_charp, construct_2rplus1, kernel_small_support_spans,
    minimal_monomial_size, oracle_refute, small_support_generators, verify_charp, CharPVerdict, Characteristic,
    MinSearchOutcome, OracleWitness, SeparatingCertificate,
};
use crate::torusrep::TorusRep;

pub use documents::{canonical, restore_integers, GeneratorsDocument, RepDocument, ResultDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "torsep", version, about = "Separating invariants of torus representations, exactly")]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
struct Caps {
    /// Largest n for Hilbert basis enumeration
    #[arg(long, global = true, default_value_t = Limits::default().hilbert_max_dim)]
    max_dim: usize,
    /// Largest n for algorithms scanning all coordinate subsets
    #[arg(long, global = true, default_value_t = Limits::default().subset_max_dim)]
    subset_max_dim: usize,
    /// Largest m tried for p^m in characteristic p
    #[arg(long, global = true, default_value_t = Limits::default().charp_cap)]
    charp_cap: u32,
    /// Candidate budget for exhaustive subset searches
    #[arg(long, global = true, default_value_t = Limits::default().search_budget as u64)]
    search_budget: u64,
    /// Node budget for one semigroup membership search
    #[arg(long, global = true, default_value_t = Limits::default().member_node_budget)]
    member_budget: u64,
    /// Order of the roots of unity used by the oracle
    #[arg(long, global = true, default_value_t = Limits::default().oracle_modulus)]
    oracle_modulus: u64,
    /// Point pairs the oracle may examine
    #[arg(long, global = true, default_value_t = Limits::default().oracle_budget)]
    oracle_budget: u64,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            hilbert_max_dim: self.max_dim,
            subset_max_dim: self.subset_max_dim,
            charp_cap: self.charp_cap,
            search_budget: u128::from(self.search_budget),
            member_node_budget: self.member_budget,
            oracle_modulus: self.oracle_modulus,
            oracle_budget: self.oracle_budget,
        }
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
enum Command {
    /// Hilbert basis of the invariant semigroup, optionally of a coordinate face
    HilbertBasis {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, value_delimiter = ',')]
        face: Option<Vec<usize>>,
    },
    /// Irreducible components of the nullcone
    Nullcone {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Whether points with the given support have closed orbits
    OrbitClosed {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        support: Vec<usize>,
    },
    /// Decomposition of the separating variety
    Sepvar {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Whether V_I x V_J lies in the graph closure
    ClassifyPair {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        i: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        j: Vec<usize>,
    },
    /// Whether the generated subalgebra is separating
    CheckSep {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Invariant monomials with small support (default bound 2r+1)
    Construct {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Whether kernel vectors on r+1 coordinates generate the kernel
    KernelSpan {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Smallest separating subset of a pool of invariant monomials
    MinSearch {
        #[arg(long)]
        rep: PathBuf,
        /// Pool as a generators document
        #[arg(long, conflicts_with = "pool_bound")]
        pool: Option<PathBuf>,
        /// Pool of Hilbert basis elements with at most this support (default r+2)
        #[arg(long)]
        pool_bound: Option<usize>,
        /// Largest subset size tried (default: the pool size)
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Bounds on the separating-set size of a Segre-Veronese cone
    SvBounds {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Minimal monomial separating set of a Segre-Veronese cone
    SvMonomial {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Weight matrix of a Segre-Veronese (or, with --segre, Segre) cone
    SvRep {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, value_delimiter = ',', required_unless_present = "segre")]
        a: Option<Vec<u64>>,
        #[arg(long)]
        segre: bool,
    },
    /// Search for point pairs the generators fail to separate
    Oracle {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        gens: PathBuf,
    },
    /// Re-check the certificate in a result document
    Verify {
        #[arg(long)]
        result: PathBuf,
        /// Defaults to the path recorded in the result document
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long)]
        gens: Option<PathBuf>,
    },
}

/// Runs the command line on `args` (program name first); returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = err.write_all(text.as_bytes());
                EXIT_INVALID
            };
        }
    };
    let echo = command_echo(&cli);
    match dispatch(&cli.command, &cli.caps.limits()) {
        Ok((result, certificate)) => {
            let doc = ResultDocument::new(echo, result, certificate);
            match out.write_all(doc.render().as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "torsep: writing output: {e}");
                    EXIT_INTERNAL
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "torsep: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        e if e.is_resource_cap() => EXIT_RESOURCE,
        Error::Overflow => EXIT_RESOURCE,
        Error::InvariantViolation(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

fn command_echo(cli: &Cli) -> Value {
    let mut v = serde_json::to_value(&cli.command).expect("commands serialize");
    v["caps"] = serde_json::to_value(&cli.caps).expect("caps serialize");
    v
}

type Output = (Value, Value);

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn big_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => Value::String(x.to_string()),
    }
}

fn index_set(rep: &TorusRep, field: &str, v: &[usize]) -> Result<IndexSet> {
    IndexSet::from_indices(rep.dim(), v).map_err(|_| Error::invalid(format!("field `{field}`: indices must be below n = {}", rep.dim())))
}

fn characteristic(c: u64) -> Result<Characteristic> {
    Characteristic::from_u64(c)
}

fn rep_at(path: &Path, limits: &Limits) -> Result<TorusRep> {
    Ok(documents::load_rep(path)?.with_limits(limits.clone()))
}

fn dispatch(command: &Command, limits: &Limits) -> Result<Output> {
    match command {
        Command::HilbertBasis { rep, face } => {
            let rep = rep_at(rep, limits)?;
            let hb = rep.hilbert_basis()?;
            let hb = match face {
                Some(f) => hb.restricted(index_set(&rep, "face", f)?),
                None => hb.clone(),
            };
            Ok((json!({ "count": hb.len(), "elements": hb.elements() }), Value::Null))
        }
        Command::Nullcone { rep } => {
            let rep = rep_at(rep, limits)?;
            Ok((to_value(&rep.nullcone()?), Value::Null))
        }
        Command::OrbitClosed { rep, support } => {
            let rep = rep_at(rep, limits)?;
            let support = index_set(&rep, "support", support)?;
            Ok((json!({ "closed": rep.is_orbit_closed(support)? }), Value::Null))
        }
        Command::Sepvar { rep } => {
            let rep = rep_at(rep, limits)?;
            Ok((to_value(&rep.sepvar_decompose()?), Value::Null))
        }
        Command::ClassifyPair { rep, i, j } => {
            let rep = rep_at(rep, limits)?;
            let (i, j) = (index_set(&rep, "i", i)?, index_set(&rep, "j", j)?);
            Ok((json!({ "class": rep.graph_closure_classify(i, j)? }), Value::Null))
        }
        Command::CheckSep { rep, gens, characteristic: c } => {
            let rep = rep_at(rep, limits)?;
            let s = documents::load_generators(gens, rep.dim())?;
            match characteristic(*c)? {
                Characteristic::Zero => {
                    let v = check_separating_char0(&rep, &s)?;
                    Ok((json!({ "characteristic": 0, "separating": v.separating }), to_value(&v.certificate)))
                }
                Characteristic::Prime(p) => {
                    let v = check_separating_charp(&rep, &s, p, limits.charp_cap)?;
                    Ok((json!({ "characteristic": p, "separating": v.is_yes() }), to_value(&v)))
                }
            }
        }
        Command::Construct { rep, bound } => {
            let rep = rep_at(rep, limits)?;
            let (bound, s) = match bound {
                Some(b) => (*b, small_support_generators(&rep, *b)?),
                None => (2 * rep.rank() + 1, construct_2rplus1(&rep)?),
            };
            Ok((json!({ "bound": bound, "count": s.len(), "generators": s.generators() }), Value::Null))
        }
        Command::KernelSpan { rep } => {
            let rep = rep_at(rep, limits)?;
            let k = kernel_small_support_spans(&rep)?;
            let gens: Vec<Vec<Value>> = k.generators.iter().map(|v| v.iter().map(big_value).collect()).collect();
            Ok((json!({ "spans": k.spans, "support_bound": rep.rank() + 1 }), json!({ "generators": gens })))
        }
        Command::MinSearch { rep, pool, pool_bound, cap, characteristic: c } => {
            let rep = rep_at(rep, limits)?;
            let pool = match pool {
                Some(path) => documents::load_generators(path, rep.dim())?,
                None => small_support_generators(&rep, pool_bound.unwrap_or(rep.rank() + 2))?,
            };
            let r = minimal_monomial_size(&rep, &pool, cap.unwrap_or(pool.len()), characteristic(*c)?)?;
            let certificate = match &r.outcome {
                MinSearchOutcome::Found { witness, .. } => json!({ "generators": witness }),
                MinSearchOutcome::NoneWithinPool { .. } => Value::Null,
            };
            Ok((to_value(&r), certificate))
        }
        Command::SvBounds { n, a, characteristic: c } => {
            let spec = SvSpec::new(n.clone(), a.clone(), characteristic(*c)?)?;
            let b = separating_size_bounds(&spec);
            Ok((
                json!({
                    "case": b.case,
                    "s": [b.s_lower, b.s_upper],
                    "s_prime": [b.s_prime_lower, b.s_prime_upper],
                    "reduced_degrees": b.reduced_degrees,
                }),
                Value::Null,
            ))
        }
        Command::SvMonomial { n, a, characteristic: c } => {
            let spec = SvSpec::new(n.clone(), a.clone(), characteristic(*c)?)?;
            let size = monomial_min_size(&spec);
            let s = monomial_min_construction(&spec)?;
            let size = u64::try_from(size).map(|x| json!(x)).unwrap_or_else(|_| Value::String(size.to_string()));
            Ok((json!({ "size": size, "generators": s.generators() }), Value::Null))
        }
        Command::SvRep { n, a, segre } => {
            let rep = if *segre {
                segre_weight_matrix(n)?
            } else {
                let a = a.clone().ok_or_else(|| Error::invalid("field `a` is required without --segre"))?;
                sv_weight_matrix(&SvSpec::new(n.clone(), a, Characteristic::Zero)?)?
            };
            Ok((to_value(&RepDocument::from_rep(&rep)), Value::Null))
        }
        Command::Oracle { rep, gens } => {
            let rep = rep_at(rep, limits)?;
            let s = documents::load_generators(gens, rep.dim())?;
            let w = oracle_refute(&rep, &s, limits.oracle_modulus, limits.oracle_budget)?;
            Ok((json!({ "refuted": w.is_some() }), to_value(&w)))
        }
        Command::Verify { result, rep, gens } => verify(result, rep.as_deref(), gens.as_deref(), limits),
    }
}

fn recorded_path(doc: &ResultDocument, explicit: Option<&Path>, key: &str) -> Result<PathBuf> {
    if let Some(p) = explicit {
        return Ok(p.to_path_buf());
    }
    doc.command
        .get(key)
        .and_then(Value::as_str)
        .map(PathBuf::from)
        .ok_or_else(|| Error::invalid(format!("field `{key}`: not recorded in the result document; pass --{key}")))
}

fn field<T: for<'de> serde::Deserialize<'de>>(v: &Value, name: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::invalid(format!("field `{name}`: {e}")))
}

fn verify(path: &Path, rep: Option<&Path>, gens: Option<&Path>, limits: &Limits) -> Result<Output> {
    let doc = documents::load_result(path)?;
    let name: String = field(doc.command.get("name").unwrap_or(&Value::Null), "command.name")?;
    let rep = rep_at(&recorded_path(&doc, rep, "rep")?, limits)?;
    let load_gens = |key: &str| -> Result<MonomialSemigroup> {
        documents::load_generators(&recorded_path(&doc, gens, key)?, rep.dim())
    };
    let verified = match name.as_str() {
        "check-sep" => {
            let s = load_gens("gens")?;
            let claimed: bool = field(&doc.result["separating"], "result.separating")?;
            let c: u64 = field(&doc.result["characteristic"], "result.characteristic")?;
            match characteristic(c)? {
                Characteristic::Zero => match &doc.certificate {
                    Value::Null => claimed && check_separating_char0(&rep, &s)?.separating,
                    cert => !claimed && field::<SeparatingCertificate>(cert, "certificate")?.verify(&rep, &s),
                },
                Characteristic::Prime(p) => {
                    let v: CharPVerdict = field(&doc.certificate, "certificate")?;
                    v.is_yes() == claimed && verify_charp(&rep, &s, p, &v)?
                }
            }
        }
        "oracle" => {
            let s = load_gens("gens")?;
            match &doc.certificate {
                Value::Null => true,
                cert => field::<OracleWitness>(cert, "certificate")?.verify(&rep, &s),
            }
        }
        "min-search" => match &doc.certificate {
            Value::Null => true,
            cert => {
                let w: GeneratorsDocument = field(cert, "certificate")?;
                let c: u64 = field(&doc.result["characteristic"], "result.characteristic")?;
                let size: usize = field(&doc.result["size"], "result.size")?;
                let s = w.to_semigroup(rep.dim())?;
                s.check_invariant(rep.weights())?;
                s.len() == size && check_separating(&rep, &s, characteristic(c)?)?
            }
        },
        "kernel-span" => {
            let gens: Vec<Vec<BigInt>> = field::<Vec<Vec<Value>>>(&doc.certificate["generators"], "certificate.generators")?
                .iter()
                .map(|v| v.iter().map(value_to_big).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            let bound = rep.rank() + 1;
            let in_kernel = gens.iter().all(|g| {
                g.len() == rep.dim()
                    && g.iter().filter(|x| x.sign() != num_bigint::Sign::NoSign).count() <= bound
                    && rep.weights().apply(g).iter().all(|x| x.sign() == num_bigint::Sign::NoSign)
            });
            in_kernel && lattice_equal(&LatticeBasis::from_generators(rep.dim(), &gens)?, &kernel_basis(rep.weights()))
        }
        other => return Err(Error::invalid(format!("field `command.name`: `{other}` carries no certificate"))),
    };
    Ok((json!({ "checked": name, "verified": verified }), Value::Null))
}

fn value_to_big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
    .ok_or_else(|| Error::invalid(format!("`{v}` is not an integer")))
}
