use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use pgdir::bridge::{self, Lift};
use pgdir::directions::{self, PointMultiset};
use pgdir::formats;
use pgdir::gf::FieldCtx;
use pgdir::plane::{PlaneCtx, Slope};
use pgdir::planecode::{self, Codeword};
use pgdir::search::{self, Classification};
use pgdir::verify;

mod parse;

/// Point multisets with few special directions, and small-weight codewords
/// of the code of points and lines of PG(2,q).
#[derive(Parser, Debug)]
#[command(name = "pgdir", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// The plane PG(2,q).
    Plane {
        #[command(subcommand)]
        op: PlaneOp,
    },
    /// Direction counts of affine multisets.
    Directions {
        #[command(subcommand)]
        op: DirOp,
    },
    /// Codewords of the line code.
    Code {
        #[command(subcommand)]
        op: CodeOp,
    },
    /// Translation between multisets and codewords.
    Bridge {
        #[command(subcommand)]
        op: BridgeOp,
    },
    /// Exhaustive and randomized campaigns.
    Search {
        #[command(subcommand)]
        op: SearchOp,
    },
    /// Run the acceptance criteria.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        /// Run a single criterion (1..=12).
        #[arg(long)]
        criterion: Option<u32>,
        /// Xored into every sampling seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum PlaneOp {
    /// List points and lines with their indices.
    Dump {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand, Debug)]
enum DirOp {
    /// Per-direction counts, special and mod-special directions.
    Spectrum { file: PathBuf },
    /// Write the multiset as a sum of lines, if it is one.
    Decompose { file: PathBuf },
    /// Blocking-set checks on the projective closure.
    Blocking {
        file: PathBuf,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
enum CodeOp {
    /// Membership by both tests, weight, line-sum invariance.
    Check { file: PathBuf },
    /// Reduced polynomial of a codeword.
    Poly { file: PathBuf },
    /// Odd codeword on X=0 and the lines Y=dX, d in the slope list.
    OddGen {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        h: u32,
        /// Comma-separated slopes d.
        #[arg(long, allow_hyphen_values = true)]
        slopes: String,
        /// Homogeneous G of degree |D|-1, e.g. `2*X + Y`.
        #[arg(long = "G", allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        c0: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rank of the codeword at a point, `--at x,y,z`.
    Rank {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Subcommand, Debug)]
enum BridgeOp {
    /// Multiset to the codeword and line combination.
    Set2code {
        file: PathBuf,
        /// Where to write the line combination (default stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the codeword here.
        #[arg(long)]
        word: Option<PathBuf>,
    },
    /// Line combination of an odd codeword to a multiset.
    Code2set {
        file: PathBuf,
        /// Directions d of the covering lines X + dY = 0 (`inf` allowed).
        #[arg(long, allow_hyphen_values = true)]
        slopes: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Codeword to a canonical line combination.
    Decompose {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the rational solution vector here.
        #[arg(long)]
        rational: Option<PathBuf>,
    },
    /// The set {(x,y): y < x} of AG(2,p), three special directions.
    KissSomlai {
        #[arg(long)]
        p: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// The four-direction multiset in AG(2,p).
    FourDir {
        #[arg(long)]
        p: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum SearchOp {
    /// All sets in AG(2,p) with three special directions, p in {3, 5}.
    Ks5 {
        #[arg(long, default_value_t = 5)]
        p: u32,
    },
    /// All codewords of weight at most 2q.
    Minwt {
        #[arg(long)]
        q: u32,
    },
    /// Concurrent-subspace dimensions for four lines.
    Genpos {
        #[arg(long)]
        p: u32,
    },
    /// Label a small-weight codeword.
    Classify { file: PathBuf },
    /// Random odd codewords on three concurrent lines plus a fourth line.
    Case2 {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = search::SEED_CASE2)]
        seed: u64,
    },
    /// No odd codewords on few concurrent lines over an extension field.
    NoSmallOdd {
        #[arg(long)]
        q: u32,
    },
    /// Random instances of every shape, each classified and checked.
    Campaign {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 20)]
        per_case: usize,
        #[arg(long, default_value_t = search::SEED_CLASSIFY)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// Bad input supplied by the user; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    Usage(e.to_string()).into()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn plane_of(q: u64) -> Result<Arc<PlaneCtx>> {
    Ok(PlaneCtx::new(FieldCtx::of_order(q).map_err(usage)?))
}

fn prime_plane(p: u64) -> Result<Arc<PlaneCtx>> {
    Ok(PlaneCtx::new(FieldCtx::prime(p).map_err(usage)?))
}

/// Collected stdout; files get the same `#` config header.
struct Out {
    header: String,
    body: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.body.push_str(s.as_ref());
        self.body.push('\n');
    }

    /// Writes `text` to `path`, or appends it to stdout when no path is given.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<()> {
        match path {
            Some(p) => {
                std::fs::write(p, format!("{}{text}", self.header))
                    .with_context(|| format!("writing {}", p.display()))?;
                self.line(format!("wrote {}", p.display()));
            }
            None => self.body.push_str(text),
        }
        Ok(())
    }
}

fn slope_str(f: &FieldCtx, s: Slope) -> String {
    match s {
        Slope::Infinite => "inf".into(),
        Slope::Finite(d) => f.format_elem(d),
    }
}

fn slope_list(f: &FieldCtx, v: &[Slope]) -> String {
    let parts: Vec<String> = v.iter().map(|&s| slope_str(f, s)).collect();
    format!("[{}]", parts.join(", "))
}

fn directions_cmd(op: &DirOp, out: &mut Out) -> Result<bool> {
    match op {
        DirOp::Spectrum { file } => {
            let m = formats::read_multiset(&read(file)?).map_err(usage)?;
            let plane = m.plane().clone();
            let f = plane.field();
            let sp = directions::spectrum(&m);
            out.line(format!("size {}", sp.size()));
            for s in Slope::all(f) {
                let counts: Vec<String> = sp.counts(s).iter().map(u64::to_string).collect();
                let tag = match (sp.equidistributed(s), sp.mod_equidistributed(s)) {
                    (true, _) => "",
                    (false, true) => " special",
                    (false, false) => " special mod-special",
                };
                let res = sp.residue(s).map_or("-".to_string(), |r| r.to_string());
                out.line(format!(
                    "direction {}: counts {} residue {res}{tag}",
                    slope_str(f, s),
                    counts.join(" ")
                ));
            }
            out.line(format!(
                "special directions: {} {}",
                sp.num_special(),
                slope_list(f, &sp.special(&plane))
            ));
            out.line(format!(
                "mod-special directions: {} {}",
                sp.num_mod_special(),
                slope_list(f, &sp.mod_special(&plane))
            ));
        }
        DirOp::Decompose { file } => {
            let m = formats::read_multiset(&read(file)?).map_err(usage)?;
            let plane = m.plane().clone();
            let f = plane.field();
            match directions::union_of_lines_decomposition(&m) {
                Some(lines) => {
                    out.line(format!("union of {} lines", lines.len()));
                    for (l, k) in lines {
                        let c = plane.line_coords(l);
                        out.line(format!(
                            "line [{}, {}, {}] x{k}",
                            f.format_elem(c[0]),
                            f.format_elem(c[1]),
                            f.format_elem(c[2])
                        ));
                    }
                }
                None => out.line("not a union of lines"),
            }
        }
        DirOp::Blocking { file, n } => {
            let m = formats::read_multiset(&read(file)?).map_err(usage)?;
            let pm = m.to_projective();
            let r = directions::blocking_check(&pm, *n);
            out.line(format!("n-fold blocking: {}", r.is_nfold));
            out.line(format!("minimal: {}", r.is_minimal));
            out.line(format!("essential points: {}", r.essential_points.len()));
            out.line(format!("redei lines: {}", r.redei_lines.len()));
            out.line(format!("every line meets in n mod p: {}", r.all_lines_n_mod_p));
        }
    }
    Ok(true)
}

fn read_word(path: &Path) -> Result<Codeword> {
    formats::read_codeword(&read(path)?).map_err(usage)
}

fn code_cmd(op: &CodeOp, out: &mut Out) -> Result<bool> {
    match op {
        CodeOp::Check { file } => {
            let c = read_word(file)?;
            let lin = planecode::membership_linear(&c);
            let dgm = planecode::membership_dgm(&c);
            out.line(format!("weight {}", c.weight()));
            out.line(format!("member (span): {lin}"));
            out.line(format!("member (polynomial): {dgm}"));
            out.line(format!("line sums constant: {}", planecode::line_sum_invariance(&c)));
            if lin != dgm {
                bail!("membership tests disagree");
            }
        }
        CodeOp::Poly { file } => {
            let c = read_word(file)?;
            let poly = planecode::reduced_polynomial(&c);
            let f = c.plane().field();
            out.line(format!(
                "degree {}",
                poly.total_degree().map_or("-".into(), |d| d.to_string())
            ));
            out.line(poly.display(f));
        }
        CodeOp::OddGen {
            p,
            h,
            slopes,
            g,
            c0,
            out: path,
        } => {
            let f = FieldCtx::new(*p, *h).map_err(usage)?;
            let plane = PlaneCtx::new(f);
            let f = plane.field();
            let d_set = parse::elems(f, slopes).map_err(usage)?;
            let g = parse::poly(f, g).map_err(usage)?;
            let c0 = parse::elem(f, c0).map_err(usage)?;
            let c = planecode::odd_from_polynomial(&plane, &d_set, &g, c0)?;
            let frame = planecode::concurrent_frame_lines(&plane, &d_set);
            let odd = planecode::is_odd_codeword(&c, &frame)?;
            eprintln!("weight {}, odd on its frame: {odd}", c.weight());
            out.emit(path.as_deref(), &formats::write_codeword(&c))?;
        }
        CodeOp::Rank { file, at } => {
            let c = read_word(file)?;
            let plane = c.plane().clone();
            let v = parse::elems(plane.field(), at).map_err(usage)?;
            let v: [_; 3] = v.try_into().map_err(|_| usage("--at needs three coordinates"))?;
            let pt = plane.point_at(v).map_err(usage)?;
            out.line(format!("rank {}", planecode::rank_at(&c, pt)));
        }
    }
    Ok(true)
}

fn bridge_cmd(op: &BridgeOp, out: &mut Out) -> Result<bool> {
    match op {
        BridgeOp::Set2code { file, out: path, word } => {
            let m = formats::read_multiset(&read(file)?).map_err(usage)?;
            let plane = m.plane().clone();
            let sp = directions::spectrum(&m);
            let (c, comb) = bridge::set_to_code(&m);
            eprintln!(
                "weight {}, mod-special directions {}",
                c.weight(),
                slope_list(plane.field(), &sp.mod_special(&plane))
            );
            if let Some(w) = word {
                out.emit(Some(w), &formats::write_codeword(&c))?;
            }
            out.emit(path.as_deref(), &formats::write_combination(&plane, &comb))?;
        }
        BridgeOp::Code2set { file, slopes, out: path } => {
            let (plane, comb) = formats::read_combination(&read(file)?).map_err(usage)?;
            let d_set = parse::slopes(plane.field(), slopes).map_err(usage)?;
            let (m, rep) = bridge::code_to_set(&plane, &comb, &d_set)?;
            let f = plane.field();
            eprintln!(
                "size {}, mod-special directions {}, consistent {}",
                m.size(),
                slope_list(f, &rep.mod_special),
                rep.consistent
            );
            out.emit(path.as_deref(), &formats::write_multiset(&m))?;
            return Ok(rep.consistent);
        }
        BridgeOp::Decompose { file, out: path, rational } => {
            let c = read_word(file)?;
            let plane = c.plane().clone();
            let d = bridge::decompose_codeword(&c, &Lift::Canonical)?;
            if let Some(r) = rational {
                out.emit(Some(r), &formats::write_rational_vector(&plane, &d.rational))?;
            }
            out.emit(path.as_deref(), &formats::write_combination(&plane, &d.canonical))?;
        }
        BridgeOp::KissSomlai { p, out: path } => {
            let plane = prime_plane(*p)?;
            let m = bridge::kiss_somlai_set(&plane)?;
            special_summary(&m, out, true);
            out.emit(path.as_deref(), &formats::write_multiset(&m))?;
        }
        BridgeOp::FourDir { p, out: path } => {
            let plane = prime_plane(*p)?;
            let m = bridge::four_direction_multiset(&plane)?;
            special_summary(&m, out, false);
            out.emit(path.as_deref(), &formats::write_multiset(&m))?;
        }
    }
    Ok(true)
}

fn special_summary(m: &PointMultiset, out: &mut Out, special: bool) {
    let plane = m.plane();
    let sp = directions::spectrum(m);
    let (label, dirs) = if special {
        ("special", sp.special(plane))
    } else {
        ("mod-special", sp.mod_special(plane))
    };
    out.line(format!(
        "{label} directions: {} {}",
        dirs.len(),
        slope_list(plane.field(), &dirs)
    ));
    out.line(format!("size {}", m.size()));
}

fn search_cmd(op: &SearchOp, out: &mut Out) -> Result<bool> {
    let rep = match op {
        SearchOp::Ks5 { p } => search::exhaustive_three_directions(*p)?,
        SearchOp::Minwt { q } => search::exhaustive_min_weight(*q)?,
        SearchOp::Genpos { p } => search::general_position_dim(*p)?,
        SearchOp::Case2 { p, samples, seed } => search::case2_structure(*p, *samples, *seed)?,
        SearchOp::NoSmallOdd { q } => search::no_small_odd(*q)?,
        SearchOp::Campaign { p, per_case, seed } => {
            search::classification_campaign(*p, *per_case, *seed)?
        }
        SearchOp::Classify { file } => return classify(file, out),
    };
    out.body.push_str(&rep.render());
    eprintln!("campaign time {:.2}s", rep.elapsed.as_secs_f64());
    Ok(rep.passed())
}

fn classify(file: &Path, out: &mut Out) -> Result<bool> {
    let c = read_word(file)?;
    let plane = c.plane().clone();
    let f = plane.field();
    let line_str = |l| {
        let v = plane.line_coords(l);
        format!(
            "[{}, {}, {}]",
            f.format_elem(v[0]),
            f.format_elem(v[1]),
            f.format_elem(v[2])
        )
    };
    let point_str = |pt| {
        let v = plane.point_coords(pt);
        format!(
            "({}, {}, {})",
            f.format_elem(v[0]),
            f.format_elem(v[1]),
            f.format_elem(v[2])
        )
    };
    let cls = search::classify_small_weight(&c)?;
    out.line(format!("weight {}", c.weight()));
    out.line(format!("label: {}", cls.label()));
    match &cls {
        Classification::LineCombination(comb) => {
            for (l, a) in comb.iter() {
                out.line(format!("  {a} * {}", line_str(l)));
            }
        }
        Classification::OddOn3PlusLine {
            point,
            frame,
            line,
            coeff,
            ..
        } => {
            out.line(format!("  point {}", point_str(*point)));
            for &l in frame {
                out.line(format!("  frame {}", line_str(l)));
            }
            out.line(format!("  plus {coeff} * {}", line_str(*line)));
        }
        Classification::OddOn4 { point, frame } => {
            out.line(format!("  point {}", point_str(*point)));
            for &l in frame {
                out.line(format!("  frame {}", line_str(l)));
            }
        }
        Classification::Unclassified => {}
    }
    let ok = search::verify_witness(&c, &cls);
    out.line(format!("witness verified: {ok}"));
    Ok(ok && cls != Classification::Unclassified)
}

fn verify_cmd(level: LevelArg, criterion: Option<u32>, seed: u64, out: &mut Out) -> Result<bool> {
    let level = match level {
        LevelArg::Quick => verify::Level::Quick,
        LevelArg::Full => verify::Level::Full,
    };
    let ids: Vec<u32> = match criterion {
        Some(id) if (1..=12).contains(&id) => vec![id],
        Some(id) => return Err(usage(format!("no criterion {id}"))),
        None => (1..=12).collect(),
    };
    let mut all = true;
    for id in ids {
        let r = verify::run_criterion_seeded(id, level, seed);
        eprintln!("criterion {id}: {:.2}s", r.elapsed.as_secs_f64());
        out.line(r.line());
        all &= r.passed;
    }
    Ok(all)
}

fn run(cli: &Cli, out: &mut Out) -> Result<bool> {
    match &cli.cmd {
        Cmd::Plane {
            op: PlaneOp::Dump { q },
        } => {
            let plane = plane_of(*q)?;
            out.body.push_str(&formats::write_plane_dump(&plane));
            Ok(true)
        }
        Cmd::Directions { op } => directions_cmd(op, out),
        Cmd::Code { op } => code_cmd(op, out),
        Cmd::Bridge { op } => bridge_cmd(op, out),
        Cmd::Search { op } => search_cmd(op, out),
        Cmd::Verify {
            level,
            criterion,
            seed,
        } => verify_cmd(*level, *criterion, *seed, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut header = String::new();
    writeln!(header, "# pgdir {}", env!("CARGO_PKG_VERSION")).unwrap();
    writeln!(header, "# config: {:?}", cli.cmd).unwrap();
    let mut out = Out {
        header: header.clone(),
        body: String::new(),
    };
    let res = run(&cli, &mut out);
    print!("{header}{}", out.body);
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    match res {
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
