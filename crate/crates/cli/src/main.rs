use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use comin_core::chains::{fibre_dimension, transfer_cost_model};
use comin_core::{
    all_spaces, cone_class, delta_i, describe, incidence_matrix, lr_coefficients, vmrt_tower,
    BoundOptions, Error, SchubertClass, Space, SpaceSpec,
};
use serde::Serialize;

mod cache;
mod report;
mod selftest;

use cache::{cached, Cache, CacheKey};
use report::*;

#[derive(Parser)]
#[command(
    name = "comin",
    version,
    about = "Exact Schubert calculus on cominuscule varieties"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Directory for cached results; caching is off when neither this nor the variable is set.
    #[arg(long, env = "COMIN_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpaceArg {
    /// Gr(i,N), P(n), Q(m), LG(n), OG(n), E6 or E7.
    #[arg(long)]
    space: Option<String>,

    /// Marked Dynkin diagram as TYPE,RANK,NODE, e.g. A,3,2 or E7,7.
    #[arg(long)]
    root: Option<String>,
}

impl SpaceArg {
    fn resolve(&self) -> Result<Arc<Space>, Error> {
        let spec: SpaceSpec = match (&self.space, &self.root) {
            (Some(name), _) => name.parse()?,
            (None, Some(root)) => SpaceSpec::parse_root(root)?,
            (None, None) => unreachable!("clap enforces the group"),
        };
        comin_core::space(&spec)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Catalog of cominuscule spaces up to a dimension.
    List {
        #[arg(long, default_value_t = 27)]
        max_dim: usize,
    },
    /// Invariants of one space.
    Info {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Schubert basis with degrees.
    Basis {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Structure constants of [X_a] * [X_b].
    Lr {
        #[command(flatten)]
        space: SpaceArg,
        /// Bitstring over the element order, or a codimension partition like [2,1] on a Grassmannian.
        a: String,
        b: String,
    },
    /// Nonzero entries of the line incidence matrix.
    Incidence {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Chain number delta_X(i).
    Delta {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        i: usize,
    },
    /// Characteristic bound for d-rigidity.
    Bound {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        d: u64,
        /// Leave every delta term unevaluated.
        #[arg(long)]
        skip_delta: bool,
        /// Chain length of the top-level delta term (default: dim X).
        #[arg(long)]
        chain_length: Option<usize>,
    },
    /// Invariant suite on all spaces of dimension at most 10 plus E6.
    Selftest {
        /// Also check the degree of E7.
        #[arg(long)]
        include_e7: bool,
    },
}

fn emit<T: Serialize + Render>(format: Format, value: &T) {
    match format {
        Format::Table => print!("{}", value.table()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialise")
        ),
    }
}

fn partition_text(s: &Space, c: SchubertClass) -> Option<String> {
    s.codim_partition(c).map(|p| {
        let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    })
}

fn parse_class(s: &Space, text: &str) -> Result<SchubertClass, Error> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        if !s.is_grassmannian() {
            return Err(Error::Parse(format!(
                "partitions are only accepted on Grassmannians; use a bitstring of length {}",
                s.dim()
            )));
        }
        let parts: Vec<usize> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad partition `{text}`")))?
        };
        return s.class_from_codim_partition(&parts);
    }
    if t.len() != s.dim() {
        return Err(Error::Parse(format!(
            "class `{text}` must be a bitstring of length {} or a bracketed partition",
            s.dim()
        )));
    }
    let c = SchubertClass::parse_bitstring(t)?;
    s.poset().class(c.bits())
}

fn term(s: &Space, c: SchubertClass, coefficient: String) -> Term {
    Term {
        class: c.to_bitstring(s.dim()),
        dim: c.dim().to_string(),
        partition: partition_text(s, c),
        coefficient,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let cache = match &cli.cache_dir {
        Some(dir) => match Cache::new(dir) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: cache disabled ({}: {e})", dir.display());
                None
            }
        },
        None => None,
    };
    let cache = cache.as_ref();
    let started = Instant::now();
    match cli.command {
        Command::List { max_dim } => {
            let spaces = all_spaces(max_dim)
                .into_iter()
                .map(|d| SpaceRow {
                    name: d.name(),
                    root_type: d.root_type.to_string(),
                    dim: d.dim.to_string(),
                    index: d.index.to_string(),
                    r: d.r.to_string(),
                    vmrt: d.vmrt.to_string(),
                })
                .collect();
            emit(cli.format, &ListReport { spaces });
        }
        Command::Info { space } => {
            let s = space.resolve()?;
            let d = s.descriptor();
            let info = InfoReport {
                name: d.name(),
                root_type: d.root_type.to_string(),
                dim: d.dim.to_string(),
                index: d.index.to_string(),
                r: d.r.to_string(),
                vmrt: d.vmrt.to_string(),
                vmrt_dim: d.vmrt.dim_v.to_string(),
                tower: vmrt_tower(d).iter().map(|v| v.to_string()).collect(),
                degree: s.degrees()[s.fundamental_index()].to_string(),
                basis_size: s.len().to_string(),
                cone_class: cone_class(&s)?.to_bitstring(s.dim()),
            };
            emit(cli.format, &info);
        }
        Command::Basis { space } => {
            let s = space.resolve()?;
            let elements = s
                .poset()
                .root_labels
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            let classes = s
                .basis()
                .iter()
                .enumerate()
                .map(|(k, &c)| BasisRow {
                    index: k.to_string(),
                    class: c.to_bitstring(s.dim()),
                    dim: c.dim().to_string(),
                    partition: partition_text(&s, c),
                    degree: s.degrees()[k].to_string(),
                })
                .collect();
            emit(
                cli.format,
                &BasisReport {
                    space: s.name(),
                    elements,
                    classes,
                },
            );
        }
        Command::Lr { space, a, b } => {
            let s = space.resolve()?;
            let (ca, cb) = (parse_class(&s, &a)?, parse_class(&s, &b)?);
            let terms = lr_coefficients(&s, ca, cb)?
                .into_iter()
                .map(|(c, x)| term(&s, c, x.to_string()))
                .collect();
            emit(
                cli.format,
                &LrReport {
                    space: s.name(),
                    a: ca.to_bitstring(s.dim()),
                    b: cb.to_bitstring(s.dim()),
                    terms,
                },
            );
        }
        Command::Incidence { space } => {
            let s = space.resolve()?;
            let key = CacheKey::new(&s.name(), "incidence", &[]);
            let out = cached(cache, &key, || -> Result<_, Error> {
                let m = incidence_matrix(&s)?;
                Ok(IncidenceReport {
                    space: s.name(),
                    nonzero: m.nonzero_count().to_string(),
                    total_weight: comin_core::incidence::total_weight(m).to_string(),
                    entries: m
                        .entries
                        .iter()
                        .map(|((a, b), x)| IncidenceEntry {
                            sigma: a.to_bitstring(s.dim()),
                            tau: b.to_bitstring(s.dim()),
                            value: x.to_string(),
                        })
                        .collect(),
                })
            })?;
            emit(cli.format, &out);
        }
        Command::Delta { space, i } => {
            let s = space.resolve()?;
            let model = transfer_cost_model(&s, i)?;
            eprintln!("{model}");
            let key = CacheKey::new(&s.name(), "delta", &[("i", i.to_string())]);
            let out = cached(cache, &key, || -> Result<_, Error> {
                Ok(DeltaReport {
                    space: s.name(),
                    i: i.to_string(),
                    value: delta_i(&s, i)?.to_string(),
                    d_i: fibre_dimension(&s, i).to_string(),
                    basis_size: model.basis_size.to_string(),
                    truncation_degree: model.truncation_degree.to_string(),
                    incidence_nonzeros: model.incidence_nonzeros.to_string(),
                })
            })?;
            emit(cli.format, &out);
        }
        Command::Bound {
            space,
            d,
            skip_delta,
            chain_length,
        } => {
            let s = space.resolve()?;
            let desc = describe(&SpaceSpec::Named(s.descriptor().family))?;
            if !skip_delta {
                let i = chain_length.unwrap_or(desc.dim);
                if let Ok(model) = transfer_cost_model(&s, i) {
                    eprintln!("{model}");
                }
            }
            let key = CacheKey::new(
                &s.name(),
                "bound",
                &[
                    ("d", d.to_string()),
                    ("skip_delta", skip_delta.to_string()),
                    (
                        "chain_length",
                        chain_length.map_or("default".into(), |c| c.to_string()),
                    ),
                ],
            );
            let options = BoundOptions {
                skip_delta,
                chain_length,
            };
            let out = cached(cache, &key, || -> Result<_, Error> {
                Ok(BoundOut::from(&comin_core::char_bound_with(
                    &desc, d, options,
                )?))
            })?;
            emit(cli.format, &out);
        }
        Command::Selftest { include_e7 } => {
            let ok = selftest::run(include_e7, cache);
            eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());
            if !ok {
                return Err(Error::Internal("selftest failed".into()));
            }
            return Ok(());
        }
    }
    eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_internal() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
