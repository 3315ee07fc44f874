use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use approaching::arrgeom::{
    sweep_sequence, triangle_cells, Point, PolyArrangement,
};
use approaching::duality::{dualize, primalize, GenConfig};
use approaching::dynamics::{bichromatic_triangle, flip_graph, FlipFilter};
use approaching::extend::{convex_combination, extend_extreme, levi_extension, Extreme};
use approaching::generators::{
    triple_search, bit_family, bit_pairs, non_pappus_sequence, pencil, random_approaching,
    random_coloring, random_lines, superfactorial_family,
};
use approaching::lp::{
    decide_allowable, decide_with_gap, verify_certificate, Certificate, Constraint, Decision, EncodingMode,
    LinearSystem, NotRealizable, Relation,
};
use approaching::rational;
use approaching::seq::{
    format_perms, parse_perms, validate_allowable, validate_subcandidate, AllowableSequence, Permutation,
    SubSequenceCandidate,
};
use approaching::Rational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::render::{render_svg, Style};
use crate::{Command, Filter, Generate, Mode, Search, Side};

const OK: u8 = 0;
const NEGATIVE: u8 = 2;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Write to `out`, or to stdout when absent.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_suffix(input: &Path, suffix: &str) -> PathBuf {
    let name = input.file_name().and_then(|s| s.to_str()).unwrap_or("out");
    let stem = name.split('.').next().unwrap_or(name);
    input.with_file_name(format!("{stem}{suffix}"))
}

fn read_arr(path: &Path) -> Result<PolyArrangement> {
    Ok(PolyArrangement::from_json(&read(path)?)?)
}

fn read_perms(path: &Path) -> Result<Vec<Permutation>> {
    Ok(parse_perms(&read(path)?)?)
}

fn mode(m: Mode) -> EncodingMode {
    match m {
        Mode::Full => EncodingMode::Full,
        Mode::Reduced => EncodingMode::Reduced,
    }
}

fn parse_point(s: &str) -> Result<Point> {
    let (x, y) = s.split_once(',').ok_or_else(|| anyhow!("point {s:?} is not x,y"))?;
    Ok(Point::new(rational::parse(x)?, rational::parse(y)?))
}

fn mode_name(m: EncodingMode) -> &'static str {
    match m {
        EncodingMode::Full => "full",
        EncodingMode::Reduced => "reduced",
    }
}

/// `.cert.json`: the full constraint system and its multipliers, so the
/// certificate can be checked without re-encoding.
pub fn certificate_json(cert: &Certificate, snapshots: &[Permutation]) -> Value {
    let sys = &cert.encoding.system;
    let constraints: Vec<Value> = sys
        .constraints
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "rel": match c.rel { Relation::Ge => ">=", Relation::Eq => "=" },
                "rhs": c.rhs.to_string(),
                "coeffs": c.coeffs.iter().map(|(j, v)| json!([j, v.to_string()])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "n": cert.encoding.n,
        "mode": mode_name(cert.encoding.mode),
        "snapshots": snapshots.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "variables": sys.var_names,
        "constraints": constraints,
        "multipliers": cert.multipliers.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
    })
}

fn parse_certificate(v: &Value) -> Result<(LinearSystem, Vec<Rational>)> {
    let field = |k: &str| v.get(k).ok_or_else(|| anyhow!("certificate lacks {k:?}"));
    let str_of = |x: &Value| -> Result<Rational> {
        Ok(rational::parse(x.as_str().ok_or_else(|| anyhow!("expected a rational string"))?)?)
    };
    let names: Vec<String> = serde_json::from_value(field("variables")?.clone())?;
    let mut sys = LinearSystem::new(names);
    for c in field("constraints")?.as_array().ok_or_else(|| anyhow!("constraints must be a list"))? {
        let coeffs = c["coeffs"]
            .as_array()
            .ok_or_else(|| anyhow!("coeffs must be a list"))?
            .iter()
            .map(|e| {
                let j = e[0].as_u64().ok_or_else(|| anyhow!("bad variable index"))? as usize;
                Ok((j, str_of(&e[1])?))
            })
            .collect::<Result<Vec<_>>>()?;
        let rhs = str_of(&c["rhs"])?;
        let label = c["label"].as_str().unwrap_or_default().to_string();
        sys.push(match c["rel"].as_str() {
            Some(">=") => Constraint::ge(coeffs, rhs, label),
            Some("=") => Constraint::eq(coeffs, rhs, label),
            other => bail!("unknown relation {other:?}"),
        });
    }
    let z = field("multipliers")?
        .as_array()
        .ok_or_else(|| anyhow!("multipliers must be a list"))?
        .iter()
        .map(str_of)
        .collect::<Result<Vec<_>>>()?;
    Ok((sys, z))
}

pub fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Validate { input, sub } => validate(&input, sub),
        Command::Decide { input, mode: m, gap, out } => decide(&input, mode(m), gap.as_deref(), out),
        Command::Realize { input, mode: m, out } => realize(&input, mode(m), out),
        Command::Verify { input } => verify(&input),
        Command::Sweep { input, out } => {
            let seq = sweep_sequence(&read_arr(&input)?)?;
            emit(out.as_deref(), &format_perms(seq.perms()))?;
            Ok(OK)
        }
        Command::Dual { input, out } => {
            let cfg = GenConfig::from_json(&read(&input)?)?;
            let dual = dualize(&cfg)?;
            eprintln!("path: {:?}", dual.path);
            emit(out.as_deref(), &dual.arrangement.to_json())?;
            Ok(OK)
        }
        Command::Primal { input, out } => {
            let cfg = primalize(&read_arr(&input)?)?;
            emit(out.as_deref(), &cfg.to_json())?;
            Ok(OK)
        }
        Command::Extend { input, p, q, between, lambda, extreme, delta, out } => {
            let arr = read_arr(&input)?;
            let ext = match (p, q, between, lambda, extreme, delta) {
                (Some(p), Some(q), None, None, None, None) => {
                    levi_extension(&arr, &parse_point(&p)?, &parse_point(&q)?)?
                }
                (None, None, Some(i), Some(l), None, None) => {
                    if i == 0 {
                        bail!("--between is 1-based");
                    }
                    convex_combination(&arr, i - 1, &rational::parse(&l)?)?
                }
                (None, None, None, None, Some(side), Some(d)) => {
                    let side = match side {
                        Side::Top => Extreme::Top,
                        Side::Bottom => Extreme::Bottom,
                    };
                    extend_extreme(&arr, &rational::parse(&d)?, side)?
                }
                _ => bail!("give exactly one of --p/--q, --between/--lambda, --extreme/--delta"),
            };
            emit(out.as_deref(), &ext.to_json())?;
            Ok(OK)
        }
        Command::Bichromatic { input, svg } => bichromatic(&input, svg),
        Command::Triangles { input } => triangles(&input),
        Command::Flipgraph { n, filter, out } => flipgraph(n, filter, out),
        Command::Generate { what } => generate(what),
        Command::Search { what } => search(what),
        Command::Render { input, out, crossings, triangles } => {
            let arr = read_arr(&input)?;
            let mut style = Style { crossings, ..Style::default() };
            if triangles {
                style.triangles = triangle_cells(&arr)?.into_iter().map(|t| t.vertices).collect();
            }
            emit(out.as_deref(), &render_svg(&arr, &style)?)?;
            Ok(OK)
        }
    }
}

fn validate(input: &Path, sub: bool) -> Result<u8> {
    let perms = read_perms(input)?;
    let report = if sub {
        validate_subcandidate(&SubSequenceCandidate::new(perms.clone())?)?
    } else {
        validate_allowable(&perms)?
    };
    if report.is_ok() {
        println!("valid");
        if !sub {
            let simple = AllowableSequence::new(perms)?.is_simple();
            println!("simple: {simple}");
        }
        Ok(OK)
    } else {
        println!("invalid\n{report}");
        Ok(NEGATIVE)
    }
}

fn report_negative(input: &Path, perms: &[Permutation], why: NotRealizable, out: Option<PathBuf>) -> Result<u8> {
    match why {
        NotRealizable::Combinatorial(report) => {
            println!("not realizable: some pair changes order twice\n{report}");
        }
        NotRealizable::Farkas(cert) => {
            if !cert.verify() {
                bail!("internal error: certificate failed verification");
            }
            let path = out.unwrap_or_else(|| with_suffix(input, ".cert.json"));
            fs::write(&path, serde_json::to_string_pretty(&certificate_json(&cert, perms))?)?;
            let used = cert.multipliers.iter().filter(|z| !z.is_zero()).count();
            println!("not realizable: Farkas certificate with {used} nonzero multipliers -> {}", path.display());
        }
    }
    Ok(NEGATIVE)
}

fn decide(input: &Path, m: EncodingMode, gap: Option<&str>, out: Option<PathBuf>) -> Result<u8> {
    let perms = read_perms(input)?;
    let sub = SubSequenceCandidate::new(perms.clone())?;
    let gap = gap.map(rational::parse).transpose()?.unwrap_or_else(Rational::zero);
    match decide_with_gap(&sub, m, &gap)? {
        Decision::Realizable(r) => {
            let path = out.unwrap_or_else(|| with_suffix(input, ".arr.json"));
            fs::write(&path, r.arrangement.to_json())?;
            let xs: Vec<String> = r.snapshot_x.iter().map(|x| x.to_string()).collect();
            println!("realizable -> {}", path.display());
            println!("snapshots at x = {}", xs.join(", "));
            Ok(OK)
        }
        Decision::NotRealizable(why) => report_negative(input, &perms, why, out),
    }
}

fn realize(input: &Path, m: EncodingMode, out: Option<PathBuf>) -> Result<u8> {
    let perms = read_perms(input)?;
    let seq = AllowableSequence::new(perms.clone())?;
    match decide_allowable(&seq, m)? {
        Decision::Realizable(r) => {
            let path = out.unwrap_or_else(|| with_suffix(input, ".arr.json"));
            fs::write(&path, r.arrangement.to_json())?;
            println!("realizable -> {}", path.display());
            Ok(OK)
        }
        Decision::NotRealizable(why) => report_negative(input, &perms, why, out),
    }
}

fn verify(input: &Path) -> Result<u8> {
    let v: Value = serde_json::from_str(&read(input)?)?;
    let (sys, z) = parse_certificate(&v)?;
    if verify_certificate(&sys, &z)? {
        println!("certificate verified: {} constraints, {} variables", sys.constraints.len(), sys.num_vars());
        Ok(OK)
    } else {
        println!("certificate REJECTED");
        Ok(NEGATIVE)
    }
}

fn bichromatic(input: &Path, svg: Option<PathBuf>) -> Result<u8> {
    let arr = read_arr(input)?;
    let cell = bichromatic_triangle(&arr)?;
    let labels: Vec<String> = cell.lines.iter().map(|l| (l + 1).to_string()).collect();
    println!("triangle on lines {}", labels.join(" "));
    for v in &cell.vertices {
        println!("  vertex ({}, {})", v.x, v.y);
    }
    if let Some(path) = svg {
        let style = Style { triangles: vec![cell.vertices.clone()], ..Style::default() };
        fs::write(&path, render_svg(&arr, &style)?)?;
    }
    Ok(OK)
}

fn triangles(input: &Path) -> Result<u8> {
    let arr = read_arr(input)?;
    let cells = triangle_cells(&arr)?;
    for t in &cells {
        println!("{} {} {}", t.lines[0] + 1, t.lines[1] + 1, t.lines[2] + 1);
    }
    let n = arr.n();
    println!("{} triangles, n - 2 = {}", cells.len(), n.saturating_sub(2));
    Ok(if cells.len() + 2 >= n { OK } else { NEGATIVE })
}

fn flipgraph(n: usize, filter: Filter, out: Option<PathBuf>) -> Result<u8> {
    let f = match filter {
        Filter::All => FlipFilter::All,
        Filter::Approaching => FlipFilter::Approaching,
    };
    let g = flip_graph(n, f)?;
    let mut text = String::from("# nodes: index feasible reduced-word\n");
    for (i, node) in g.nodes.iter().enumerate() {
        let word: Vec<String> = node.sequence.word()?.iter().map(|k| k.to_string()).collect();
        text.push_str(&format!("node {i} {} {}\n", node.feasible, word.join("")));
    }
    text.push_str("# edges: a b flipped-lines\n");
    for (a, b, t) in &g.edges {
        text.push_str(&format!("edge {a} {b} {},{},{}\n", t[0], t[1], t[2]));
    }
    emit(out.as_deref(), &text)?;
    eprintln!(
        "n = {n}: {} classes, {} feasible, {} edges, connected: {}",
        g.nodes.len(),
        g.feasible_count(),
        g.edges.len(),
        g.connected
    );
    Ok(if g.connected { OK } else { NEGATIVE })
}

fn parse_choices(n: usize, text: Option<&str>) -> Result<Vec<Permutation>> {
    let Some(text) = text else {
        return Ok((1..n).map(|j| Permutation::identity(n - j)).collect());
    };
    text.split(';')
        .map(|part| {
            let order = part
                .split_whitespace()
                .map(|t| t.parse::<usize>().with_context(|| format!("bad label {t:?}")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Permutation::new(order)?)
        })
        .collect()
}

fn generate(what: Generate) -> Result<u8> {
    let (text, out) = match what {
        Generate::Pencil { n, out } => (pencil(n)?.to_json(), out),
        Generate::Random { n, columns, seed, colored, lines, out } => {
            let arr = if lines { random_lines(n, seed)? } else { random_approaching(n, columns, seed)? };
            let arr = if colored { random_coloring(arr, seed)? } else { arr };
            (arr.to_json(), out)
        }
        Generate::Bits { n, bits, seed, out } => {
            let k = bit_pairs(n).len();
            let bits: Vec<bool> = match bits {
                Some(b) => b
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(anyhow!("bits must be 0 or 1")),
                    })
                    .collect::<Result<_>>()?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..k).map(|_| rng.gen_bool(0.5)).collect()
                }
            };
            let m = bit_family(n, &bits)?;
            let shown: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
            eprintln!("bits {shown} for pairs {:?}", m.pairs);
            (m.arrangement.to_json(), out)
        }
        Generate::Superfactorial { n, choices, out } => {
            let choices = parse_choices(n, choices.as_deref())?;
            (superfactorial_family(n, &choices)?.to_json(), out)
        }
        Generate::Nonpappus { out } => (format_perms(non_pappus_sequence()?.perms()), out),
    };
    emit(out.as_deref(), &text)?;
    Ok(OK)
}

fn search(what: Search) -> Result<u8> {
    let Search::Triples { n, budget, mode: m, out, cert_dir } = what;
    let report = triple_search(n, budget, mode(m))?;
    let mut text = format!(
        "# n = {n}, examined {} of {} candidates{}\n",
        report.examined,
        report.total,
        if report.exhaustive() { "" } else { " (inconclusive: budget reached)" }
    );
    for w in &report.infeasible {
        text.push_str(&format!("{} {}\n", w.pi1, w.pi2));
    }
    if let Some(dir) = cert_dir {
        fs::create_dir_all(&dir)?;
        for (k, w) in report.infeasible.iter().enumerate() {
            let json = certificate_json(&w.certificate, &[w.pi1.clone(), w.pi2.clone()]);
            fs::write(dir.join(format!("witness{k}.cert.json")), serde_json::to_string_pretty(&json)?)?;
        }
    }
    emit(out.as_deref(), &text)?;
    eprintln!("{} non-realizable triples", report.infeasible.len());
    Ok(OK)
}

