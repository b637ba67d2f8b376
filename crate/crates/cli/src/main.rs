use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use singleblock::acceptance::{run_all, run_criterion, CriterionResult};
use singleblock::jordan::{dimension_bound, jordan_type, tensor_jordan, BoundInputs};
use singleblock::levi::{candidate_factor_report, level_decomposition, LeviLevelReport};
use singleblock::records::to_records;
use singleblock::root_system::{build_root_system, RootDatum, SimpleType, Weight};
use singleblock::sl2::{sl2_scan, Sl2Kind};
use singleblock::unipotent::{
    g2_class_representative, ClassLabel, UnipotentRepresentative,
};
use singleblock::weyl::dump::dump_modular;
use singleblock::weyl::{
    construct_weyl_module_with, freudenthal_multiplicities, head_multiplicities,
    irreducible_head_mod_p, modular_weight_multiplicities, weyl_dimension, BuildOptions,
    WeightMultTable, DEFAULT_SIZE_CAP,
};
use singleblock::{Error, ErrorKind, Result};

#[derive(Parser)]
#[command(name = "singleblock", version, about = "Jordan blocks of unipotent elements on modular representations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest module dimension built explicitly.
    #[arg(long, env = "SINGLEBLOCK_SIZE_CAP", default_value_t = DEFAULT_SIZE_CAP, global = true)]
    size_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Args)]
struct TypeArg {
    /// Cartan type, e.g. G2 or E6.
    #[arg(long = "type")]
    lie_type: SimpleType,
}

#[derive(Args)]
struct WeightArgs {
    #[command(flatten)]
    ty: TypeArg,
    /// Highest weight as fundamental-weight coefficients, e.g. 1,0.
    #[arg(long, allow_hyphen_values = true)]
    weight: Weight,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of a root system.
    Roots(TypeArg),
    /// Dominant weight multiplicities of V(lambda), or of L(lambda) with --p.
    Char {
        #[command(flatten)]
        w: WeightArgs,
        #[arg(long)]
        p: Option<u64>,
        /// Only weights at most this deep below lambda (requires --p).
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Weyl dimension of V(lambda).
    Dim(WeightArgs),
    /// Build V(lambda) over the integers, reduce mod p and take the head.
    Module {
        #[command(flatten)]
        w: WeightArgs,
        #[arg(long)]
        p: u64,
        /// Print the head's operators in the module dump format.
        #[arg(long)]
        dump: bool,
    },
    /// Jordan type of a unipotent class representative on L(lambda).
    Jordan {
        #[command(flatten)]
        w: WeightArgs,
        #[arg(long)]
        p: u64,
        /// regular, G2a1 or A1_3 (G2 only).
        #[arg(long, conflicts_with = "word")]
        class: Option<ClassLabel>,
        /// Explicit word "root:t;root:t", roots in simple-root coordinates.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Jordan type of J_m (x) J_n over F_p.
    Tensor {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Jordan types of x_alpha(1) on SL2 modules and their SL2(p) summands.
    Sl2scan {
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7])]
        p: Vec<u64>,
        /// Largest highest weight; defaults to p^2 - 1 for the largest prime.
        #[arg(long)]
        max_a: Option<u64>,
        #[arg(long, value_enum, default_value_t = KindArg::Irreducible)]
        kind: KindArg,
        #[arg(long, default_value_t = singleblock::acceptance::SPLIT_SEED)]
        seed: u64,
    },
    /// Level decomposition with respect to a maximal parabolic subgroup.
    Levels {
        #[command(flatten)]
        w: WeightArgs,
        /// Removed node (1-based, Bourbaki order).
        #[arg(long)]
        node: usize,
        /// Use the head of V(lambda) mod p instead of the characteristic-zero character.
        #[arg(long)]
        p: Option<u64>,
        /// Truncate the source to this depth (requires --p).
        #[arg(long)]
        depth: Option<u32>,
        /// Also report Levi composition factors of this level.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Dimension bound (p - 1) p^k (l + 3), or 2^(k+3) with --f4.
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        f4: bool,
    },
    /// Run the acceptance suite.
    Verify {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Weyl,
    Irreducible,
}

/// Emitted text plus whether a verification failed.
struct Outcome {
    text: String,
    failed: bool,
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, failed: false })
}

fn datum_for(t: &SimpleType) -> Result<RootDatum> {
    build_root_system(t.family, t.rank)
}

fn build_opts(cap: usize, depth: Option<u32>) -> BuildOptions {
    BuildOptions {
        size_cap: cap,
        max_depth: depth,
    }
}

fn source_table(
    datum: &RootDatum,
    lambda: &Weight,
    p: Option<u64>,
    depth: Option<u32>,
    cap: usize,
) -> Result<WeightMultTable> {
    datum.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    match (p, depth) {
        (None, None) => freudenthal_multiplicities(datum, lambda),
        (None, Some(_)) => Err(Error::Parse("--depth requires --p".into())),
        (Some(p), depth) => {
            let rep = construct_weyl_module_with(datum, lambda, &build_opts(cap, depth))?;
            head_multiplicities(&rep, p)
        }
    }
}

fn table_rows(table: &WeightMultTable) -> Vec<(String, u64)> {
    table
        .dominant_entries()
        .iter()
        .rev()
        .map(|(w, &m)| (w.to_string(), m))
        .collect()
}

fn parse_word(s: &str) -> Result<Vec<(Vec<i64>, u64)>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (root, param) = t
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("word entry '{t}' is not root:t")))?;
            let root: Weight = root.parse()?;
            let param = param
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad parameter '{param}'")))?;
            Ok((root.0, param))
        })
        .collect()
}

fn level_lines(report: &LeviLevelReport) -> Vec<String> {
    report
        .levels()
        .iter()
        .enumerate()
        .map(|(d, l)| match l {
            Some(t) => {
                let parts: Vec<String> = t.iter().rev().map(|(w, m)| format!("({w}):{m}")).collect();
                format!("level {d}: {}", parts.join(" "))
            }
            None => format!("level {d}: beyond depth limit"),
        })
        .collect()
}

fn criterion_json(r: &CriterionResult) -> serde_json::Value {
    json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail})
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let cap = cli.size_cap;
    let records = cli.format == Format::Records;
    match &cli.command {
        Command::Roots(t) => {
            let d = datum_for(&t.lie_type)?;
            let roots: Vec<String> = d
                .positive_roots()
                .iter()
                .map(|r| Weight(r.clone()).to_string())
                .collect();
            if records {
                let rec = json!({
                    "type": d.label(), "rank": d.rank(), "cartan": d.cartan(),
                    "positive_roots": d.positive_roots(), "weyl_order": d.weyl_group_order(),
                });
                return ok(to_records("roots", &[rec])?);
            }
            let cartan: Vec<String> = d
                .cartan()
                .iter()
                .map(|r| Weight(r.clone()).to_string())
                .collect();
            ok(format!(
                "type {}\nrank {}\ncartan {}\npositive roots {}\nweyl group order {}\nroots {}\n",
                d.label(),
                d.rank(),
                cartan.join(" | "),
                d.num_positive_roots(),
                d.weyl_group_order(),
                roots.join(" ")
            ))
        }
        Command::Char { w, p, depth } => {
            let d = datum_for(&w.ty.lie_type)?;
            let table = source_table(&d, &w.weight, *p, *depth, cap)?;
            let rows = table_rows(&table);
            if records {
                let recs: Vec<_> = rows
                    .iter()
                    .map(|(wt, m)| json!({"weight": wt, "mult": m, "p": p}))
                    .collect();
                return ok(to_records("character", &recs)?);
            }
            let mut out: String = rows.iter().map(|(wt, m)| format!("{wt} {m}\n")).collect();
            if !table.is_truncated() {
                out.push_str(&format!("dim {}\n", table.total_dimension()?));
            }
            ok(out)
        }
        Command::Dim(w) => {
            let d = datum_for(&w.ty.lie_type)?;
            d.check_weight(&w.weight)?;
            let dim = weyl_dimension(&d, &w.weight)?;
            if records {
                let rec = json!({"type": d.label(), "weight": w.weight.to_string(), "dim": dim.to_string()});
                return ok(to_records("dim", &[rec])?);
            }
            ok(format!("{dim}\n"))
        }
        Command::Module { w, p, dump } => {
            let d = datum_for(&w.ty.lie_type)?;
            let rep = construct_weyl_module_with(&d, &w.weight, &build_opts(cap, None))?;
            let head = irreducible_head_mod_p(&rep, *p)?;
            if *dump {
                return ok(dump_modular(&head));
            }
            let rows = table_rows(&modular_weight_multiplicities(&head)?);
            if records {
                let rec = json!({
                    "type": d.label(), "weight": w.weight.to_string(), "p": p,
                    "weyl_dim": rep.dim(), "head_dim": head.dim(), "head_dominant": rows,
                });
                return ok(to_records("module", &[rec])?);
            }
            let mut out = format!("weyl dim {}\nhead dim {}\n", rep.dim(), head.dim());
            for (wt, m) in rows {
                out.push_str(&format!("{wt} {m}\n"));
            }
            ok(out)
        }
        Command::Jordan { w, p, class, word } => {
            let d = datum_for(&w.ty.lie_type)?;
            let rep: UnipotentRepresentative = match (class, word) {
                (_, Some(word)) => UnipotentRepresentative::custom(parse_word(word)?, *p)?,
                (Some(c), None) => {
                    if d.label() != "G2" {
                        return Err(Error::Inadmissible(format!(
                            "class labels are defined for G2, not {}",
                            d.label()
                        )));
                    }
                    g2_class_representative(*c, *p)?
                }
                (None, None) => return Err(Error::Parse("give --class or --word".into())),
            };
            let module = irreducible_head_mod_p(
                &construct_weyl_module_with(&d, &w.weight, &build_opts(cap, None))?,
                *p,
            )?;
            let t = jordan_type(&rep.matrix(&module)?)?;
            if records {
                let rec = json!({
                    "type": d.label(), "weight": w.weight.to_string(), "p": p,
                    "class": rep.label, "dim": module.dim(), "jordan_type": t,
                });
                return ok(to_records("jordan", &[rec])?);
            }
            ok(format!("{t}\n"))
        }
        Command::Tensor { m, n, p } => {
            let t = tensor_jordan(*m, *n, *p)?;
            if records {
                let rec = json!({"m": m, "n": n, "p": p, "jordan_type": t});
                return ok(to_records("tensor", &[rec])?);
            }
            ok(format!("{t}\n"))
        }
        Command::Sl2scan { p, max_a, kind, seed } => {
            let kind = match kind {
                KindArg::Weyl => Sl2Kind::Weyl,
                KindArg::Irreducible => Sl2Kind::Irreducible,
            };
            let top = p.iter().copied().max().unwrap_or(2);
            let a_max = max_a.unwrap_or(top * top - 1);
            let rows = sl2_scan(p, a_max, kind, cap, *seed)?;
            if records {
                return ok(to_records("sl2scan", &rows)?);
            }
            let mut out = String::from("p a dim type summands shape_ok factors\n");
            for r in &rows {
                let summands: Vec<String> = r.summand_types.iter().map(|t| format!("[{t}]")).collect();
                let factors: Vec<String> = r
                    .factors
                    .iter()
                    .map(|(a, m)| if *m == 1 { a.to_string() } else { format!("{a}^{m}") })
                    .collect();
                out.push_str(&format!(
                    "{} {} {} [{}] {} {} {}\n",
                    r.p,
                    r.a,
                    r.dim,
                    r.jordan_type,
                    summands.join(""),
                    r.shape_ok,
                    factors.join(",")
                ));
            }
            ok(out)
        }
        Command::Levels { w, node, p, depth, level } => {
            let d = datum_for(&w.ty.lie_type)?;
            if *node == 0 || *node > d.rank() {
                return Err(Error::Parse(format!("node {node} out of range 1..={}", d.rank())));
            }
            let table = source_table(&d, &w.weight, *p, *depth, cap)?;
            let report = level_decomposition(&table, node - 1)?;
            let factors = level.map(|l| candidate_factor_report(&report, l)).transpose()?;
            if records {
                let levels: Vec<_> = report
                    .levels()
                    .iter()
                    .enumerate()
                    .map(|(i, l)| {
                        json!({
                            "level": i,
                            "entries": l.as_ref().map(|t| t.iter().rev().map(|(w, m)| (w.to_string(), *m)).collect::<Vec<_>>()),
                        })
                    })
                    .collect();
                let mut recs = levels;
                if let Some(f) = &factors {
                    recs.push(json!({"factors": f}));
                }
                return ok(to_records("levels", &recs)?);
            }
            let mut out = format!(
                "{} lambda=({}) removed node {} levi nodes {:?}\n",
                d.label(),
                w.weight,
                node,
                report.levi_nodes().iter().map(|j| j + 1).collect::<Vec<_>>()
            );
            if report.p3_warning() {
                out.push_str("warning: p = 3 and lambda is not a multiple of omega_1\n");
            }
            for l in level_lines(&report) {
                out.push_str(&l);
                out.push('\n');
            }
            if let Some(f) = factors {
                out.push_str(&format!("factors at level {}:", f.level));
                for x in &f.factors {
                    out.push_str(&format!(" ({}) x{} dim {}", x.weight, x.count, x.dim));
                }
                out.push('\n');
            }
            ok(out)
        }
        Command::Bound { p, k, l, f4 } => {
            let b = dimension_bound(&BoundInputs {
                p: *p,
                k: *k,
                l: *l,
                f4_p2_flag: *f4,
            })?;
            if records {
                let rec = json!({"p": p, "k": k, "l": l, "f4": f4, "bound": b});
                return ok(to_records("bound", &[rec])?);
            }
            ok(format!("{b}\n"))
        }
        Command::Verify { criterion } => {
            let results = match criterion {
                Some(id) => vec![run_criterion(*id)
                    .ok_or_else(|| Error::Parse(format!("no criterion {id} (1..=10)")))?],
                None => run_all(),
            };
            let failed = results.iter().any(|r| !r.passed);
            let text = if records {
                let recs: Vec<_> = results.iter().map(criterion_json).collect();
                to_records("verify", &recs)?
            } else {
                results.iter().map(|r| format!("{r}\n")).collect()
            };
            Ok(Outcome { text, failed })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Usage => 2,
                ErrorKind::Precondition => 3,
                ErrorKind::SizeCap => 4,
                ErrorKind::Internal => 5,
            })
        }
    }
}
