use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use metallic_core::averages::{factor_estimate, phi_estimate, AverageEstimate, Axis};
use metallic_core::coding::{window_in, TorusPoint};
use metallic_core::geometry::{build_partitions, tile_partition, Partition};
use metallic_core::induction::{known_n3, self_similarity, spectral_check};
use metallic_core::induction::selfsim::match_table;
use metallic_core::io::{
    check_window_doc, parse_document, tileset_of_kind, Document, PartitionDoc, SubstitutionDoc, TileSetDoc, WindowDoc,
};
use metallic_core::svg::{render_partition, render_substitution, render_tileset, render_window};
use metallic_core::tiles::{Label, TileSetKind};
use metallic_core::{verify, FieldSpec, QuadNum};

#[derive(Parser)]
#[command(name = "metallic-tiler", version, about = "Metallic mean Wang tiles: tile sets, tilings, partitions and self-similarity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a tile set.
    Tiles {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value = "base")]
        set: SetArg,
        #[arg(long, value_enum, default_value = "json")]
        format: TilesFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the identity suite.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Random points per sampled identity.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Window of the configuration coded by a torus point.
    Window {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// "p/q" or "p/q+r/s*beta"
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        origin_x: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        origin_y: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: DocFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate a coordinate of the torus point from label averages.
    Average {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum)]
        axis: Option<AxisArg>,
        /// Table of estimates for k = 1, 10, 100, … up to K.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition of the torus by edge labels or by tiles.
    Partition {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value = "refined")]
        which: WhichArg,
        #[arg(long, value_enum, default_value = "json")]
        format: DocFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Self-similarity from two first-return inductions.
    Selfsim {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: SelfsimFormat,
        /// Compare with the published n = 3 table (n = 3 only).
        #[arg(long, alias = "match-paper")]
        match_published: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a window document.
    Check { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SetArg {
    Base,
    Extended,
    Chip,
}

#[derive(Clone, Copy, ValueEnum)]
enum TilesFormat {
    Json,
    Tsv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum DocFormat {
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SelfsimFormat {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    Row,
    Col,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    East,
    North,
    West,
    South,
    Refined,
}

/// An error that should exit with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn field(n: u32) -> Result<FieldSpec> {
    FieldSpec::new(n).map_err(|e| usage(e.to_string()))
}

fn point(f: FieldSpec, x: &str, y: &str) -> Result<TorusPoint> {
    let parse = |s: &str| QuadNum::parse_expr(f, s).map_err(|e| usage(format!("bad expression `{s}`: {e}")));
    Ok(TorusPoint::new(parse(x)?, parse(y)?))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            let nl = if text.ends_with('\n') { "" } else { "\n" };
            match write!(stdout, "{text}{nl}").and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn set_kind(s: SetArg) -> TileSetKind {
    match s {
        SetArg::Base => TileSetKind::Base,
        SetArg::Extended => TileSetKind::Extended,
        SetArg::Chip => TileSetKind::Chip,
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Tiles { n, set, format, out } => {
            field(n)?;
            let ts = tileset_of_kind(n, set_kind(set));
            let text = match format {
                TilesFormat::Json => Document::Tileset(TileSetDoc::new(&ts)).to_json(),
                TilesFormat::Tsv => {
                    let mut s = String::from("index\tright\ttop\tleft\tbottom\n");
                    for (k, t) in ts.tiles().iter().enumerate() {
                        s += &format!("{k}\t{}\t{}\t{}\t{}\n", t.right.word(), t.top.word(), t.left.word(), t.bottom.word());
                    }
                    s
                }
                TilesFormat::Svg => render_tileset(&ts, 10),
            };
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Verify { n, samples, seed, format, out } => {
            field(n)?;
            let results = verify::run(n, samples, seed);
            let ok = results.iter().all(|r| r.passed);
            let text = match format {
                TextFormat::Text => results
                    .iter()
                    .map(|r| format!("{} {} {}\n", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail))
                    .collect(),
                TextFormat::Json => serde_json::to_string_pretty(&results)?,
            };
            emit(&out, &text)?;
            Ok(ok)
        }
        Command::Window { n, x, y, width, height, origin_x, origin_y, format, out } => {
            let f = field(n)?;
            let p = point(f, &x, &y)?;
            let ts = Arc::new(tileset_of_kind(n, TileSetKind::Base));
            let w = window_in(ts, &p, (origin_x, origin_y), width, height).map_err(|e| usage(e.to_string()))?;
            let text = match format {
                DocFormat::Json => Document::Window(WindowDoc::new(&w, Some(&p))).to_json(),
                DocFormat::Svg => render_window(&w),
            };
            emit(&out, &text)?;
            Ok(w.check_valid().is_ok())
        }
        Command::Average { n, x, y, k, axis, csv, out } => {
            let f = field(n)?;
            let p = point(f, &x, &y)?;
            let axes: Vec<Axis> = match axis {
                Some(AxisArg::Row) => vec![Axis::Row],
                Some(AxisArg::Col) => vec![Axis::Column],
                None => vec![Axis::Column, Axis::Row],
            };
            let target = |a: Axis| match a {
                Axis::Row => p.y.clone(),
                Axis::Column => p.x.clone(),
            };
            let name = |a: Axis| match a {
                Axis::Row => "row",
                Axis::Column => "col",
            };
            let line = |e: &AverageEstimate, sep: &str| {
                let t = target(e.axis);
                let v = QuadNum::from_rational(f, e.value.clone()).to_f64();
                format!("{}{sep}{}{sep}{:.10}{sep}{:.10}{sep}{:.3e}", e.k, name(e.axis), v, t.to_f64(), e.error(&t).to_f64())
            };
            let mut text = String::new();
            if csv {
                text += "k,axis,estimate,target,error\n";
                let mut ks: Vec<u64> = std::iter::successors(Some(1u64), |k| k.checked_mul(10)).take_while(|&j| j < k).collect();
                ks.push(k);
                for a in &axes {
                    for &j in &ks {
                        text += &line(&phi_estimate(&p, j, *a), ",");
                        text.push('\n');
                    }
                }
            } else {
                let estimates = if axis.is_none() {
                    let (c, r) = factor_estimate(&p, k);
                    vec![c, r]
                } else {
                    axes.iter().map(|a| phi_estimate(&p, k, *a)).collect()
                };
                text += "k\taxis\testimate\ttarget\terror\n";
                for e in &estimates {
                    text += &line(e, "\t");
                    text.push('\n');
                }
            }
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Partition { n, which, format, out } => {
            let f = field(n)?;
            let text = match which {
                WhichArg::Refined => {
                    let tiles = tileset_of_kind(n, TileSetKind::Base);
                    let p = tile_partition(f).map_labels(|t| tiles.index_of(t).expect("base tile"));
                    let text = match format {
                        DocFormat::Json => Document::Partition(PartitionDoc::new(n, "refined", &p, |k| k.to_string(), |k| {
                            tiles.get(*k).ok().copied()
                        }))
                        .to_json(),
                        DocFormat::Svg => render_partition(&p, |k| k.to_string()),
                    };
                    text
                }
                edge => {
                    let e = build_partitions(f);
                    let (name, p): (&str, &Partition<Label>) = match edge {
                        WhichArg::East => ("east", &e.east),
                        WhichArg::North => ("north", &e.north),
                        WhichArg::West => ("west", &e.west),
                        _ => ("south", &e.south),
                    };
                    match format {
                        DocFormat::Json => Document::Partition(PartitionDoc::new(n, name, p, |l| l.word(), |_| None)).to_json(),
                        DocFormat::Svg => render_partition(p, |l| l.word()),
                    }
                }
            };
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Selfsim { n, format, match_published, out } => {
            field(n)?;
            if match_published && n != 3 {
                return Err(usage("the published table is for n = 3"));
            }
            let s = self_similarity(n).map_err(|e| anyhow::anyhow!(e))?;
            let spectral = spectral_check(&s.s123.incidence(), n);
            let mut ok = s.actions_renormalize.iter().all(|&b| b) && s.shapes_ok() && spectral.ok();
            let mut text = match format {
                SelfsimFormat::Json => Document::Substitution(SubstitutionDoc::new(n, &s.s123, &s.tiles)).to_json(),
                SelfsimFormat::Svg => render_substitution(&s.s123, &s.tiles, 6),
                SelfsimFormat::Text => {
                    let mut t = s.s123.to_string();
                    t += &format!(
                        "\nrelabeling found: yes\nR^e1 = (β·R2e1)⁻¹: {}\nR^e2 = (β·R2e2)⁻¹: {}\nshapes: {:?}\n\
                         characteristic polynomial divisible by x² − {}x + 1: {}\nother rational roots: {:?}\nPerron root: {}\n",
                        s.actions_renormalize[0],
                        s.actions_renormalize[1],
                        s.shapes(),
                        n * n + 2,
                        spectral.multiplicity_beta_squared > 0,
                        spectral.other_rational_roots,
                        spectral.perron_root,
                    );
                    t
                }
            };
            if match_published {
                let mut report = String::new();
                match match_table(&s.s123, &known_n3(), 2) {
                    Some(m) => {
                        let pairs: Vec<String> = m.bijection.iter().map(|(a, b)| format!("{a}→{b}")).collect();
                        report += &format!("bijection: {}\n", pairs.join(" "));
                        if m.exact() {
                            report += "published table matched exactly\n";
                        } else {
                            ok = false;
                            report += &format!("rules differing from the published table: {:?}\n", m.exceptions);
                            for a in &m.exceptions {
                                report += &format!(
                                    "computed {a} ↦\n{}\npublished {} ↦\n{}\n",
                                    s.s123.image(*a).expect("label"),
                                    m.bijection[a],
                                    known_n3().image(m.bijection[a]).expect("label")
                                );
                            }
                        }
                    }
                    None => {
                        ok = false;
                        report += "no bijection matches the published table\n";
                    }
                }
                match format {
                    SelfsimFormat::Text => text += &report,
                    _ => eprint!("{report}"),
                }
            }
            emit(&out, &text)?;
            Ok(ok)
        }
        Command::Check { file } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let doc = parse_document(&text)?;
            let Document::Window(w) = doc else {
                anyhow::bail!("not a window document");
            };
            let report = check_window_doc(&w)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(report.ok())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
