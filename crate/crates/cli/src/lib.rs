//! The `fpsc` command line. [`run`] parses arguments, dispatches to the
//! core library and returns the exit code with the JSON report, so tests
//! can drive it in-process.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context as _};
use clap::{Args, Parser, Subcommand};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use fpsc_core::cayley::{
    distance_formula_report, one_ended_path, relative_stable_points, BallIndex, BallOptions, ConedOverlay,
    DistformOptions, OneEndedOptions, RelStableParams,
};
use fpsc_core::gensc::{generate, GenMode, GenOptions};
use fpsc_core::io::{DiagramJson, FactorsConfig, GraphJson, PresentationFile};
use fpsc_core::lgraph::{check_cstar, default_radius, girth};
use fpsc_core::vkdiag::{
    check_bigon_structure, check_minimality_conditions, curvature_rhs, search_diagram, to_dot, to_svg,
    CurvatureConvention,
};
use fpsc_core::{parse_frac, Error, Frac, FreeProduct, Presentation, WordProblem};

#[derive(Parser, Debug)]
#[command(name = "fpsc", version, about = "Small cancellation over free products")]
pub struct Cli {
    /// Seed for sampled operations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide.
    #[arg(long, global = true, env = "FPSC_WORKERS", default_value_t = 0)]
    pub workers: usize,
    /// Also write the report here.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the explicit one-ended presentation and its certificate.
    Generate(GenerateArgs),
    /// Check C'*(λ) on a relator graph.
    CheckSc(CheckScArgs),
    /// Dehn reduction of a word.
    Word(WordArgs),
    /// Enumerate a Cayley ball.
    Ball(BallCmd),
    /// Coned-off overlay of a ball.
    Coned(ConedArgs),
    /// Distance formula report on sampled pairs.
    Distform(DistformArgs),
    /// Relatively stable points of a ball.
    Stable(StableArgs),
    /// Sphere-avoiding paths between points of one sphere.
    OneEnded(OneEndedArgs),
    /// Van Kampen diagram of a trivial word.
    Diagram(DiagramArgs),
}

/// Where the presentation comes from. Paths are not hashed, contents are.
#[derive(Args, Debug, Clone, Serialize)]
pub struct Source {
    /// Presentation JSON as written by `generate`.
    #[arg(long, conflicts_with = "config")]
    #[serde(skip)]
    pub presentation: Option<PathBuf>,
    /// Factor config; the presentation is then relator-free.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Use a presentation that is not certified.
    #[arg(long)]
    pub force: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GenerateArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: PathBuf,
    /// Word length L₀.
    #[arg(long, default_value_t = 8)]
    pub scale: usize,
    /// full or compact
    #[arg(long, default_value = "full")]
    pub mode: String,
    #[arg(long, default_value = "1/8")]
    pub lambda: String,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CheckScArgs {
    /// Graph JSON; factors come from the file or from --config.
    #[arg(long, conflicts_with = "presentation")]
    #[serde(skip)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub presentation: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value = "1/8")]
    pub lambda: String,
    /// Defaults to max(8, λ·girth) + 1.
    #[arg(long)]
    pub completion_radius: Option<usize>,
    #[arg(long)]
    #[serde(skip)]
    pub dot: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct WordArgs {
    #[command(flatten)]
    pub source: Source,
    /// Letters separated by spaces, e.g. "0:a 1:a".
    #[arg(long)]
    pub reduce: String,
    #[arg(long, default_value = "1/2")]
    pub theta: String,
    /// Include every rewrite step.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BallArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(short = 'R', long = "radius", default_value_t = 6)]
    pub radius: usize,
    #[arg(long, default_value_t = 4_000_000)]
    pub max_elements: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BallCmd {
    #[command(flatten)]
    pub ball: BallArgs,
    /// Adjacency export (JSON).
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub dot: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ConedArgs {
    #[command(flatten)]
    pub ball: BallArgs,
    /// Peripheral factor indices, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub peripherals: Vec<usize>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DistformArgs {
    #[command(flatten)]
    pub ball: BallArgs,
    #[arg(long, value_delimiter = ',')]
    pub peripherals: Vec<usize>,
    #[arg(short = 'D', default_value_t = 0)]
    pub d: usize,
    #[arg(short = 'M', default_value_t = 1)]
    pub m: usize,
    #[arg(long, default_value_t = 200)]
    pub sample: usize,
    /// Evaluate up to this many geodesics per pair as a cross-check.
    #[arg(long)]
    pub all_geodesics: Option<usize>,
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct StableArgs {
    #[command(flatten)]
    pub ball: BallArgs,
    #[arg(long, value_delimiter = ',')]
    pub peripherals: Vec<usize>,
    #[arg(short = 'D', default_value_t = 0)]
    pub d: usize,
    #[arg(short = 'L', default_value_t = 4)]
    pub l: usize,
    /// Geodesics enumerated per element before giving up.
    #[arg(long, default_value_t = 256)]
    pub cap: usize,
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OneEndedArgs {
    #[command(flatten)]
    pub ball: BallArgs,
    /// Sphere holding the endpoints.
    #[arg(long)]
    pub level: usize,
    /// Endpoints sampled on the sphere; every ordered pair is joined.
    #[arg(long, default_value_t = 6)]
    pub points: usize,
    #[arg(long, default_value_t = 4)]
    pub extension: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DiagramArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub word: String,
    /// Maximum number of Dehn steps replayed.
    #[arg(long, default_value_t = 256)]
    pub budget: usize,
    /// Check the bigon structure with γ1 the first K boundary letters.
    #[arg(long)]
    pub bigon: Option<usize>,
    /// raw-edges or contracted-arcs
    #[arg(long, default_value = "contracted-arcs")]
    pub curvature: String,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub dot: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub svg: Option<PathBuf>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// 0 success, 1 a check failed, 2 bad input or I/O error
    pub code: i32,
    /// the JSON report, empty on errors
    pub report: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    config_hash: String,
    seed: u64,
    ok: bool,
    result: Value,
}

/// Hashes inputs as they are read and collects output writes.
#[derive(Default)]
struct Ctx {
    inputs: BTreeMap<String, String>,
}

impl Ctx {
    fn read(&mut self, role: &str, path: &Path) -> anyhow::Result<String> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.inputs.insert(role.to_string(), hex(&Sha256::digest(text.as_bytes())));
        Ok(text)
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn write_out(path: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    if let Some(p) = path {
        std::fs::write(p, content).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(())
}

fn frac(s: &str, what: &str) -> anyhow::Result<Frac> {
    parse_frac(s).map_err(|e| anyhow!("{what}: {e}"))
}

fn load_factors(ctx: &mut Ctx, path: &Path) -> anyhow::Result<FreeProduct> {
    let cfg: FactorsConfig =
        serde_json::from_str(&ctx.read("config", path)?).with_context(|| format!("bad factor config {}", path.display()))?;
    Ok(cfg.free_product()?)
}

fn load_source(ctx: &mut Ctx, s: &Source) -> anyhow::Result<Presentation> {
    match (&s.presentation, &s.config) {
        (Some(p), _) => {
            let f: PresentationFile = serde_json::from_str(&ctx.read("presentation", p)?)
                .with_context(|| format!("bad presentation file {}", p.display()))?;
            Ok(f.load()?)
        }
        (None, Some(c)) => Ok(Presentation::relator_free(load_factors(ctx, c)?)),
        (None, None) => bail!("give --presentation or --config"),
    }
}

/// Relator-free products are always usable; otherwise certification is
/// required unless forced.
fn build_ball(ctx: &mut Ctx, a: &BallArgs) -> anyhow::Result<(Presentation, BallIndex)> {
    let p = load_source(ctx, &a.source)?;
    let opts = BallOptions { force: a.source.force, max_elements: a.max_elements };
    let b = BallIndex::build(&p, a.radius, opts)?;
    Ok((p, b))
}

fn init_workers(n: usize) {
    if n > 0 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, report: String::new(), stderr: e.to_string() };
        }
    };
    init_workers(cli.workers);
    match execute(&cli) {
        Ok((ok, report)) => {
            if let Some(p) = &cli.report {
                if let Err(e) = std::fs::write(p, &report) {
                    return Outcome { code: 2, report, stderr: format!("error: cannot write {}: {e}\n", p.display()) };
                }
            }
            Outcome { code: if ok { 0 } else { 1 }, report, stderr: String::new() }
        }
        Err(e) => Outcome { code: 2, report: String::new(), stderr: format!("error: {e:#}\n") },
    }
}

fn execute(cli: &Cli) -> anyhow::Result<(bool, String)> {
    let mut ctx = Ctx::default();
    let (name, params, ok, result) = match &cli.command {
        Command::Generate(a) => {
            let (ok, r) = cmd_generate(&mut ctx, a)?;
            ("generate", serde_json::to_value(a)?, ok, r)
        }
        Command::CheckSc(a) => {
            let (ok, r) = cmd_check_sc(&mut ctx, a)?;
            ("check-sc", serde_json::to_value(a)?, ok, r)
        }
        Command::Word(a) => {
            let (ok, r) = cmd_word(&mut ctx, a)?;
            ("word", serde_json::to_value(a)?, ok, r)
        }
        Command::Ball(a) => {
            let (ok, r) = cmd_ball(&mut ctx, a)?;
            ("ball", serde_json::to_value(a)?, ok, r)
        }
        Command::Coned(a) => {
            let (ok, r) = cmd_coned(&mut ctx, a)?;
            ("coned", serde_json::to_value(a)?, ok, r)
        }
        Command::Distform(a) => {
            let (ok, r) = cmd_distform(&mut ctx, a, cli.seed)?;
            ("distform", serde_json::to_value(a)?, ok, r)
        }
        Command::Stable(a) => {
            let (ok, r) = cmd_stable(&mut ctx, a)?;
            ("stable", serde_json::to_value(a)?, ok, r)
        }
        Command::OneEnded(a) => {
            let (ok, r) = cmd_one_ended(&mut ctx, a, cli.seed)?;
            ("one-ended", serde_json::to_value(a)?, ok, r)
        }
        Command::Diagram(a) => {
            let (ok, r) = cmd_diagram(&mut ctx, a)?;
            ("diagram", serde_json::to_value(a)?, ok, r)
        }
    };
    let key = json!({ "command": name, "params": params, "seed": cli.seed, "inputs": ctx.inputs });
    let config_hash = hex(&Sha256::digest(serde_json::to_string(&key)?.as_bytes()));
    let rep = Report { command: name, config_hash, seed: cli.seed, ok, result };
    let mut text = serde_json::to_string_pretty(&rep)?;
    text.push('\n');
    Ok((ok, text))
}

fn cmd_generate(ctx: &mut Ctx, a: &GenerateArgs) -> anyhow::Result<(bool, Value)> {
    let fp = load_factors(ctx, &a.config)?;
    let mode = match a.mode.as_str() {
        "full" => GenMode::Full,
        "compact" => GenMode::Compact,
        m => bail!("unknown mode {m:?}, expected full or compact"),
    };
    if a.scale == 0 || a.scale % 2 == 1 {
        bail!("scale must be a positive even number, got {}", a.scale);
    }
    let lambda = frac(&a.lambda, "lambda")?;
    let g = generate(&fp.specs(), &GenOptions { scale: a.scale, mode, lambda })?;
    let c = &g.certificate;
    let mut file = PresentationFile {
        factors: g.fp.specs(),
        graph: GraphJson::from_graph(&g.graph, &g.fp),
        lambda: None,
        completion_radius: None,
        certificate: Some(serde_json::to_value(c)?),
    };
    if c.valid {
        file.lambda = Some(lambda.to_string());
        file.completion_radius = Some(default_radius(lambda, Some(c.w_len)));
    }
    write_out(&a.out, &(serde_json::to_string(&file)? + "\n"))?;
    Ok((c.valid, serde_json::to_value(c)?))
}

fn cmd_check_sc(ctx: &mut Ctx, a: &CheckScArgs) -> anyhow::Result<(bool, Value)> {
    let (fp, g) = match (&a.graph, &a.presentation) {
        (Some(path), _) => {
            let gj: GraphJson =
                serde_json::from_str(&ctx.read("graph", path)?).with_context(|| format!("bad graph file {}", path.display()))?;
            let fp = match (&gj.factors, &a.config) {
                (_, Some(c)) => load_factors(ctx, c)?,
                (Some(f), None) => FactorsConfig { factors: f.clone() }.free_product()?,
                (None, None) => bail!("the graph file lists no factors; give --config"),
            };
            let g = gj.to_graph(&fp)?;
            (fp, g)
        }
        (None, Some(path)) => {
            let f: PresentationFile = serde_json::from_str(&ctx.read("presentation", path)?)
                .with_context(|| format!("bad presentation file {}", path.display()))?;
            let fp = FactorsConfig { factors: f.factors.clone() }.free_product()?;
            let g = f.graph.to_graph(&fp)?;
            (fp, g)
        }
        (None, None) => bail!("give --graph or --presentation"),
    };
    let lambda = frac(&a.lambda, "lambda")?;
    let radius = a.completion_radius.unwrap_or_else(|| default_radius(lambda, girth(&g)));
    let rep = check_cstar(&g, lambda, radius, &fp)?;
    write_out(&a.dot, &g.to_dot(&fp))?;
    Ok((rep.passed(), serde_json::to_value(&rep)?))
}

fn cmd_word(ctx: &mut Ctx, a: &WordArgs) -> anyhow::Result<(bool, Value)> {
    let p = load_source(ctx, &a.source)?;
    let theta = frac(&a.theta, "theta")?;
    let wp = WordProblem::new(&p, a.source.force)?.with_theta(theta)?;
    let w = p.fp.parse_word(&a.reduce)?;
    let t = wp.trace(&w)?;
    let mut r = json!({
        "input": p.fp.format_word(&w),
        "normal_form": p.fp.format_word(&t.initial),
        "reduced": p.fp.format_word(&t.output),
        "trivial": t.output.is_empty(),
        "steps": t.steps.len(),
    });
    if a.trace {
        r["trace"] = serde_json::to_value(&t.steps)?;
    }
    Ok((true, r))
}

fn cmd_ball(ctx: &mut Ctx, a: &BallCmd) -> anyhow::Result<(bool, Value)> {
    let (_, b) = build_ball(ctx, &a.ball)?;
    if a.out.is_some() {
        write_out(&a.out, &(serde_json::to_string(&b.export())? + "\n"))?;
    }
    if a.dot.is_some() {
        write_out(&a.dot, &ball_dot(&b))?;
    }
    Ok((
        true,
        json!({
            "radius": b.radius(),
            "elements": b.len(),
            "sphere_sizes": b.sphere_sizes(),
            "certified": b.certified(),
        }),
    ))
}

fn ball_dot(b: &BallIndex) -> String {
    let fp = b.fp();
    let mut s = String::from("graph ball {\n  node [shape=point];\n");
    for x in 0..b.len() as u32 {
        for (l, y) in b.neighbors(x) {
            // each edge once, from its smaller end
            if x < y || (x == y && l <= fp.inv_letter(l)) {
                let _ = writeln!(s, "  {x} -- {y} [label=\"{}\"];", fp.letter_name(l));
            }
        }
    }
    s.push_str("}\n");
    s
}

fn cmd_coned(ctx: &mut Ctx, a: &ConedArgs) -> anyhow::Result<(bool, Value)> {
    let (_, b) = build_ball(ctx, &a.ball)?;
    let o = ConedOverlay::new(&b, &a.peripherals)?;
    let cones = o.cones();
    if a.out.is_some() {
        write_out(&a.out, &(serde_json::to_string(&cones)? + "\n"))?;
    }
    let degrees: BTreeMap<usize, usize> = (0..o.num_cones()).fold(BTreeMap::new(), |mut m, c| {
        *m.entry(o.cone_degree(c)).or_default() += 1;
        m
    });
    Ok((
        true,
        json!({
            "peripherals": o.peripherals(),
            "elements": b.len(),
            "cones": o.num_cones(),
            "cone_degree_histogram": degrees,
        }),
    ))
}

fn cmd_distform(ctx: &mut Ctx, a: &DistformArgs, seed: u64) -> anyhow::Result<(bool, Value)> {
    let (_, b) = build_ball(ctx, &a.ball)?;
    let o = ConedOverlay::new(&b, &a.peripherals)?;
    let opts = DistformOptions { d: a.d, m: a.m, sample: a.sample, seed, all_geodesics: a.all_geodesics };
    let rep = distance_formula_report(&o, &opts)?;
    if a.csv.is_some() {
        let mut s = String::from("x,y,d_gamma,d_coned,coset_sum,middle\n");
        for p in &rep.pairs {
            let _ = writeln!(s, "\"{}\",\"{}\",{},{},{},{}", p.x, p.y, p.d_gamma, p.d_coned, p.coset_sum, p.middle);
        }
        write_out(&a.csv, &s)?;
    }
    Ok((true, serde_json::to_value(&rep)?))
}

fn cmd_stable(ctx: &mut Ctx, a: &StableArgs) -> anyhow::Result<(bool, Value)> {
    let (_, b) = build_ball(ctx, &a.ball)?;
    let rep = relative_stable_points(&b, RelStableParams { d: a.d, l: a.l }, &a.peripherals, a.cap)?;
    if a.csv.is_some() {
        let mut s = String::from("id,word,dist,member\n");
        let member: std::collections::BTreeSet<u32> = rep.members.iter().copied().collect();
        for x in 0..b.len() as u32 {
            let _ = writeln!(s, "{x},\"{}\",{},{}", b.fp().format_word(b.word(x)), b.dist(x), member.contains(&x));
        }
        write_out(&a.csv, &s)?;
    }
    let mut r = serde_json::to_value(&rep)?;
    r["member_count"] = json!(rep.members.len());
    r["unverifiable_count"] = json!(rep.unverifiable.len());
    Ok((true, r))
}

fn cmd_one_ended(ctx: &mut Ctx, a: &OneEndedArgs, seed: u64) -> anyhow::Result<(bool, Value)> {
    let (p, b) = build_ball(ctx, &a.ball)?;
    if a.level == 0 || a.level > b.radius() {
        bail!("level must lie in 1..={}", b.radius());
    }
    let sphere: Vec<u32> = b.sphere(a.level).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<u32> = sample(&mut rng, sphere.len(), a.points.min(sphere.len())).into_iter().map(|i| sphere[i]).collect();
    pts.sort_unstable();
    let dist = b.bfs(0);
    let opts = OneEndedOptions { extension: a.extension, force: a.ball.source.force };
    let mut rows = Vec::new();
    let mut ok = true;
    for &x in &pts {
        for &y in &pts {
            let row = match one_ended_path(&b, &p, x, y, opts) {
                Ok(path) => {
                    let min = path.vertices.iter().map(|&v| dist[v as usize] as usize).min().unwrap_or(a.level);
                    let edges_ok = path.vertices.windows(2).all(|w| b.neighbors(w[0]).any(|(_, z)| z == w[1]));
                    let ends_ok = path.vertices.first() == Some(&x) && path.vertices.last() == Some(&y);
                    let verified = min >= a.level && edges_ok && ends_ok;
                    ok &= verified;
                    json!({
                        "x": path.x, "y": path.y, "length": path.vertices.len().saturating_sub(1),
                        "min_dist": min, "verified": verified, "word": path.word, "stats": path.stats,
                    })
                }
                Err(Error::OracleUnsound(m)) => bail!("{m}"),
                Err(Error::InvalidInput(m)) => bail!("{m}"),
                Err(e) => {
                    ok = false;
                    json!({
                        "x": b.fp().format_word(b.word(x)), "y": b.fp().format_word(b.word(y)),
                        "verified": false, "error": e.to_string(),
                    })
                }
            };
            rows.push(row);
        }
    }
    Ok((ok, json!({ "level": a.level, "radius": b.radius(), "paths": rows })))
}

fn cmd_diagram(ctx: &mut Ctx, a: &DiagramArgs) -> anyhow::Result<(bool, Value)> {
    let p = load_source(ctx, &a.source)?;
    let conv: CurvatureConvention = a.curvature.parse()?;
    if !a.source.force && !p.relators().is_empty() && p.certified().is_none() {
        bail!("presentation is not certified; pass --force");
    }
    let w = p.fp.parse_word(&a.word)?;
    let Some(d) = search_diagram(&w, &p, a.budget)? else {
        return Ok((false, json!({ "word": p.fp.format_word(&w), "found": false })));
    };
    d.validate_over(&p, &w)?;
    let mut ok = true;
    let curvature = match curvature_rhs(&d, conv) {
        Ok(c) => serde_json::to_value(c)?,
        Err(e) => json!({ "skipped": e.to_string() }),
    };
    let minimality = check_minimality_conditions(&d, &p, None)?;
    let bigon = match a.bigon {
        Some(k) => {
            let r = check_bigon_structure(&d, k)?;
            ok &= r.ok;
            Some(r)
        }
        None => None,
    };
    write_out(&a.out, &(serde_json::to_string(&DiagramJson::from_diagram(&d, &p.fp))? + "\n"))?;
    write_out(&a.dot, &to_dot(&d, &p.fp))?;
    write_out(&a.svg, &to_svg(&d, &p.fp))?;
    Ok((
        ok,
        json!({
            "word": p.fp.format_word(&w),
            "found": true,
            "vertices": d.num_vertices,
            "edges": d.edges.len(),
            "faces": d.faces.len(),
            "trivial_faces": d.faces.iter().filter(|f| f.trivial).count(),
            "euler": d.euler_characteristic(),
            "curvature": curvature,
            "minimality": minimality,
            "bigon": bigon,
        }),
    ))
}
