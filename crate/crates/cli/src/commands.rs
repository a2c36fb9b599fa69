use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use hikita_core::hikita::{
    default_generators, diagram_check, fixed_point_census, unseparated_pairs, BElement, HikitaInstance,
};
use hikita_core::orbitcartan::{build_orbit_scheme, certificate_from_quotient, flatness_from_scheme};
use hikita_core::partitions::{
    a_group_trivial, bvls_dual, collapse, infer_type, kim_betti, normal_orbit_image, surjectivity_necessary,
    OrbitLabel, Partition,
};
use hikita_core::polyring::{default_names, parse_poly};
use hikita_core::rootdata::{
    free_double_cosets, parabolic_fixed_cosets, shortest_longest_intersection, Family, LeviSpec, LieType, Weight,
};
use hikita_core::Error;

use crate::report::{table, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "hikita", version, about = "Nilpotent orbits, Weyl group cosets and Hikita comparisons")]
pub struct Cli {
    /// Print a single JSON object instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized fallbacks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for `batch`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// BVLS dual of an orbit partition.
    Dual {
        /// Type tag `A`..`D` (rank from the partition size) or a full type like `B3`.
        #[arg(long = "type")]
        ty: String,
        /// Parts separated by commas, e.g. `3,3,1`.
        #[arg(long)]
        partition: String,
    },
    /// Collapse of a partition in a classical type.
    Collapse {
        /// Type tag `A`..`D` (rank from the partition size) or a full type like `B3`.
        #[arg(long = "type")]
        ty: String,
        /// Parts separated by commas, e.g. `3,3,1`.
        #[arg(long)]
        partition: String,
    },
    /// Free double cosets `W_M\W/W_L` in their three descriptions.
    Cosets {
        /// Ambient type such as `C3`, needed when the Levis carry no prefix.
        #[arg(long)]
        ambient: Option<String>,
        /// Levi M, e.g. `C3:gl3` or `gl3`.
        #[arg(long)]
        m: String,
        /// Levi L, e.g. `C3:gl2|sp1` or `torus`.
        #[arg(long)]
        l: String,
    },
    /// Orbit scheme of a Levi: `gr I'`, Hilbert function, socle, flatness.
    #[command(name = "orbit-cartan", alias = "orbitcartan")]
    OrbitCartan {
        /// Levi spec, e.g. `C3:gl2|sp1`.
        #[arg(long)]
        levi: String,
        /// Dimension of the special fiber, when known.
        #[arg(long)]
        special_dim: Option<usize>,
        /// Base point in `z(l)`, comma-separated rationals.
        #[arg(long)]
        base: Option<String>,
    },
    /// Weak flatness verdict for a Levi.
    Flatness {
        /// Levi spec, e.g. `C3:gl2|sp1`.
        #[arg(long)]
        levi: String,
        /// Dimension of the special fiber, when known.
        #[arg(long)]
        special_dim: Option<usize>,
    },
    /// Compare both weight maps of the refined Hikita identity.
    HikitaVerify {
        /// Ambient type such as `C3`, needed when the Levis carry no prefix.
        #[arg(long)]
        ambient: Option<String>,
        /// Levi M, e.g. `C3:gl3` or `gl3`.
        #[arg(long)]
        m: String,
        /// Levi L, e.g. `C3:gl2|sp1` or `torus`.
        #[arg(long)]
        l: String,
        /// `default`, or a file with one `name: s ; g` per line.
        #[arg(long, default_value = "default")]
        generators: String,
    },
    /// Component group, normality and surjectivity shape tests.
    Surjectivity {
        /// Type tag `A`..`D` (rank from the partition size) or a full type like `B3`.
        #[arg(long = "type")]
        ty: String,
        /// Parts separated by commas, e.g. `3,3,1`.
        #[arg(long)]
        partition: String,
    },
    /// Betti numbers of the Springer fiber for `(2k+1, 2k+1, 1)`, optionally
    /// compared with the orbit scheme of a Levi.
    Betti {
        /// Index k of the partition `(2k+1, 2k+1, 1)`.
        #[arg(long)]
        k: u64,
        /// Levi whose orbit scheme is compared with the Betti numbers.
        #[arg(long)]
        levi: Option<String>,
    },
    /// Torus fixed points of the parabolic Slodowy variety for `(M, L)`.
    Census {
        /// Ambient type such as `C3`, needed when the Levis carry no prefix.
        #[arg(long)]
        ambient: Option<String>,
        /// Levi M, e.g. `C3:gl3` or `gl3`.
        #[arg(long)]
        m: String,
        /// Levi L, e.g. `C3:gl2|sp1` or `torus`.
        #[arg(long)]
        l: String,
    },
    /// Run one command per line of a file.
    Batch {
        /// File with one command line per line.
        file: PathBuf,
    },
}

#[derive(Debug)]
pub enum Failure {
    Clap(clap::Error),
    Usage(String),
    Internal(String),
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Clap(_) | Failure::Usage(_) => "usage-error",
            Failure::Internal(_) => "internal-error",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Clap(e) => e.to_string().trim().to_string(),
            Failure::Usage(m) | Failure::Internal(m) => m.clone(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InfiniteQuotient | Error::Collapse(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Out<T> = Result<T, Failure>;

fn parse_cli(argv: &[String]) -> Out<Cli> {
    Cli::try_parse_from(std::iter::once("hikita".to_string()).chain(argv.iter().cloned())).map_err(Failure::Clap)
}

/// Parse, run and render one command line.
pub fn run_argv(argv: &[String]) -> Out<String> {
    let cli = parse_cli(argv)?;
    let manifest =
        if let Cmd::Batch { file } = &cli.cmd { run_batch(file, &cli, argv)? } else { manifest_for(&cli, argv)? };
    Ok(render(&manifest, cli.json))
}

fn render(m: &RunManifest, as_json: bool) -> String {
    if as_json {
        serde_json::to_string_pretty(m).expect("manifest serializes")
    } else {
        format!("{}\nwall_time_ms: {:.3}", table(&m.verdicts), m.wall_time_ms)
    }
}

fn manifest_for(cli: &Cli, argv: &[String]) -> Out<RunManifest> {
    let t0 = Instant::now();
    let (verb, verdicts) = execute(cli)?;
    let ms = t0.elapsed().as_secs_f64() * 1e3;
    Ok(RunManifest::new(verb, argv, cli.seed, ms, verdicts))
}

fn run_batch(file: &PathBuf, cli: &Cli, argv: &[String]) -> Out<RunManifest> {
    let t0 = Instant::now();
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let lines: Vec<(usize, Vec<String>)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            let mut toks: Vec<String> = l.split_whitespace().map(str::to_string).collect();
            if toks.first().map(String::as_str) == Some("hikita") {
                toks.remove(0);
            }
            (i + 1, toks)
        })
        .collect();
    let run_line = |toks: &Vec<String>| -> Out<RunManifest> {
        let sub = parse_cli(toks)?;
        if matches!(sub.cmd, Cmd::Batch { .. }) {
            return Err(Failure::Usage("batch files cannot nest batch".into()));
        }
        manifest_for(&sub, toks)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(1).max(1))
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    let results: Vec<Out<RunManifest>> = pool.install(|| lines.par_iter().map(|(_, t)| run_line(t)).collect());

    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for ((line, toks), r) in lines.iter().zip(results) {
        match r {
            Ok(m) => reports.push(json!({"line": line, "status": "ok", "report": m})),
            Err(f) => {
                let entry = json!({"line": line, "status": f.kind(), "input": toks, "error": f.message()});
                failures.push(json!({"line": line, "error": f.message()}));
                reports.push(entry);
            }
        }
    }
    let verdicts = json!({
        "reports": reports,
        "summary": {
            "total": lines.len(),
            "ok": lines.len() - failures.len(),
            "failed": failures.len(),
            "failures": failures,
        },
    });
    let ms = t0.elapsed().as_secs_f64() * 1e3;
    Ok(RunManifest::new("batch", argv, cli.seed, ms, verdicts))
}

/// A type tag `B` (rank from the partition size) or a full type `B3`.
fn parse_type(ty: &str, p: &Partition) -> Out<LieType> {
    let t = if ty.trim().len() > 1 { ty.parse::<LieType>()? } else { infer_type(Family::parse(ty)?, p.size())? };
    Ok(t)
}

fn parse_partition(s: &str) -> Out<Partition> {
    Ok(s.parse::<Partition>()?)
}

/// `C3:gl3`, or a body `gl3` together with `--ambient C3`.
fn parse_levi(ambient: Option<&str>, s: &str) -> Out<LeviSpec> {
    if s.contains(':') {
        let l: LeviSpec = s.parse()?;
        if let Some(a) = ambient {
            let a: LieType = a.parse()?;
            if a != l.ambient {
                return Err(Error::AmbientMismatch(a.to_string(), l.ambient.to_string()).into());
            }
        }
        return Ok(l);
    }
    let a = ambient.ok_or_else(|| Failure::Usage(format!("Levi {s:?} needs --ambient or the form TYPE:BODY")))?;
    Ok(LeviSpec::parse_body(a.parse()?, s)?)
}

fn partition_json(p: &Partition) -> Value {
    json!(p.parts())
}

fn execute(cli: &Cli) -> Out<(&'static str, Value)> {
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::Dual { ty, partition } => {
            let p = parse_partition(partition)?;
            let t = parse_type(ty, &p)?;
            let o = OrbitLabel::new(p, t)?;
            let d = bvls_dual(&o)?;
            Ok((
                "dual",
                json!({
                    "input": o.to_string(),
                    "type": t.to_string(),
                    "dual_type": d.ambient.family.to_string(),
                    "dual_ambient": d.ambient.to_string(),
                    "dual_partition": partition_json(&d.partition),
                }),
            ))
        }
        Cmd::Collapse { ty, partition } => {
            let p = parse_partition(partition)?;
            let fam = match ty.parse::<LieType>() {
                Ok(t) => t.family,
                Err(_) => Family::parse(ty)?,
            };
            let c = collapse(&p, fam)?;
            Ok((
                "collapse",
                json!({"partition": partition_json(&p), "type": fam.to_string(), "collapse": partition_json(&c)}),
            ))
        }
        Cmd::Cosets { ambient, m, l } => {
            let m = parse_levi(ambient.as_deref(), m)?;
            let l = parse_levi(ambient.as_deref(), l)?;
            let labels = free_double_cosets(&m, &l)?;
            let inter = shortest_longest_intersection(&m, &l)?.len();
            let para = parabolic_fixed_cosets(&m, &l)?.len();
            let dual = free_double_cosets(&l, &m)?.len();
            let n = labels.len();
            Ok((
                "cosets",
                json!({
                    "m": m.to_string(),
                    "l": l.to_string(),
                    "free_double_cosets": n,
                    "shortest_longest": inter,
                    "parabolic_fixed": para,
                    "inverse_side": dual,
                    "agree": n == inter && n == para && n == dual,
                    "labels": labels.iter().map(|c| c.rep.to_string()).collect::<Vec<_>>(),
                }),
            ))
        }
        Cmd::OrbitCartan { levi, special_dim, base } => {
            let l = parse_levi(None, levi)?;
            let base = base.as_deref().map(|b| b.parse::<Weight>()).transpose()?;
            let s = build_orbit_scheme(&l, base, seed)?;
            let r = flatness_from_scheme(&s, *special_dim);
            let names = default_names(l.rank(), false);
            let gr: Vec<String> = s.gr_iprime.gb().iter().map(|g| g.format(&names)).collect();
            Ok((
                "orbit-cartan",
                json!({
                    "levi": r.levi,
                    "base_point": s.base_point.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "points": s.points.len(),
                    "generic_dim": r.generic_dim,
                    "special_dim": r.special_dim,
                    "verdict": r.verdict.to_string(),
                    "witnesses": r.witnesses,
                    "hilbert": r.hilbert,
                    "socle": r.socle,
                    "dim_iprime": s.iprime_dim,
                    "dim_gr": s.quotient.dim,
                    "gr_groebner": gr,
                    "basis": s.quotient.basis_strings(&names),
                }),
            ))
        }
        Cmd::Flatness { levi, special_dim } => {
            let l = parse_levi(None, levi)?;
            let s = build_orbit_scheme(&l, None, seed)?;
            let r = flatness_from_scheme(&s, *special_dim);
            Ok(("flatness", serde_json::to_value(&r).expect("report serializes")))
        }
        Cmd::HikitaVerify { ambient, m, l, generators } => {
            let m = parse_levi(ambient.as_deref(), m)?;
            let l = parse_levi(ambient.as_deref(), l)?;
            let inst = HikitaInstance::new(m, l)?;
            let gens = if generators == "default" {
                default_generators(&inst)
            } else {
                read_generators(generators, inst.rank())?
            };
            hikita_verify(&inst, &gens, seed)
        }
        Cmd::Surjectivity { ty, partition } => {
            let p = parse_partition(partition)?;
            let t = parse_type(ty, &p)?;
            let o = OrbitLabel::new(p, t)?;
            Ok((
                "surjectivity",
                json!({
                    "partition": partition_json(&o.partition),
                    "type": t.to_string(),
                    "a_group_trivial": a_group_trivial(&o.partition, t),
                    "normal_orbit_image": normal_orbit_image(&o.partition, t).to_string(),
                    "surjectivity_necessary": surjectivity_necessary(&o.partition, t),
                }),
            ))
        }
        Cmd::Betti { k, levi } => {
            let betti = kim_betti(*k);
            let mut v = json!({"k": k, "partition": [2 * k + 1, 2 * k + 1, 1], "betti": betti});
            if let Some(levi) = levi {
                let l = parse_levi(None, levi)?;
                let s = build_orbit_scheme(&l, None, seed)?;
                let cert = certificate_from_quotient(&l.to_string(), &s.quotient, &betti);
                v["certificate"] = serde_json::to_value(&cert).expect("certificate serializes");
            }
            Ok(("betti", v))
        }
        Cmd::Census { ambient, m, l } => {
            let m = parse_levi(ambient.as_deref(), m)?;
            let l = parse_levi(ambient.as_deref(), l)?;
            let inst = HikitaInstance::new(m, l)?;
            let c = fixed_point_census(&inst)?;
            Ok((
                "census",
                json!({
                    "m": inst.levi_m.to_string(),
                    "l": inst.levi_l.to_string(),
                    "count": c.count,
                    "labels": c.labels.iter().map(|x| x.rep.to_string()).collect::<Vec<_>>(),
                    "dual_labels": c.dual_labels.iter().map(|x| x.rep.to_string()).collect::<Vec<_>>(),
                    "consistent": c.consistent,
                }),
            ))
        }
        Cmd::Batch { .. } => Err(Failure::Usage("batch cannot run here".into())),
    }
}

fn hikita_verify(inst: &HikitaInstance, gens: &[BElement], seed: u64) -> Out<(&'static str, Value)> {
    let report = diagram_check(inst, gens)?;
    let census = fixed_point_census(inst)?;
    let unseparated = unseparated_pairs(inst, gens, seed)?;
    let names = hikita_core::hikita::param_names(inst.nparams());
    let per_generator: Vec<Value> = report
        .per_generator
        .iter()
        .map(|g| {
            let side = |pick_coh: bool| -> Vec<Value> {
                report
                    .bijection
                    .iter()
                    .map(|(q, c)| {
                        let (label, val) = if pick_coh { (c, &g.coh.entries[c]) } else { (q, &g.quant.entries[q]) };
                        json!({"label": label.rep.to_string(), "value": val.format(&names)})
                    })
                    .collect()
            };
            json!({"name": g.name, "coh": side(true), "quant": side(false), "equal": g.equal})
        })
        .collect();
    Ok((
        "hikita-verify",
        json!({
            "instance": {
                "ambient": inst.ambient.to_string(),
                "m": inst.levi_m.to_string(),
                "l": inst.levi_l.to_string(),
                "parameters": names,
            },
            "fixed_points": census.count,
            "bijection": report.bijection.iter().map(|(q, c)| json!([q.rep.to_string(), c.rep.to_string()])).collect::<Vec<_>>(),
            "per_generator": per_generator,
            "mismatches": report.mismatches,
            "anomaly": report.anomaly,
            "unseparated_pairs_at_hbar_zero": unseparated.len(),
            "verdict": if report.equal { "equal" } else { "mismatch" },
        }),
    ))
}

/// Lines `name: s ; g` (the name is optional), in `x1..xn` and `h`.
fn read_generators(path: &str, n: usize) -> Out<Vec<BElement>> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let names = default_names(n, true);
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, body) = match line.split_once(':') {
            Some((a, b)) => (a.trim().to_string(), b),
            None => (format!("line {}", i + 1), line),
        };
        let (s, g) = body.split_once(';').unwrap_or((body, "1"));
        let at = |e: Error| Failure::Usage(format!("{path}:{}: {e}", i + 1));
        let s = parse_poly(s, &names).map_err(at)?;
        let g = parse_poly(g, &names).map_err(at)?;
        out.push(BElement::new(name, s, g, n)?);
    }
    Ok(out)
}
