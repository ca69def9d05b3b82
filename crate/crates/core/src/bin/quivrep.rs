use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quivrep_core::functors::{
    is_covering, lift_path, orbit_canonical, pushforward_left, pushforward_right, restrict, Covering, QuiverMorphism,
};
use quivrep_core::io::*;
use quivrep_core::lie::{phi, psi, roundtrip_check, u_mul, UMode};
use quivrep_core::quiver::{QuiverSchema, Window};
use quivrep_core::rational::{display_rational, parse_rational, Rational};
use quivrep_core::rep::{
    check_relations, decompose, hom_basis, iso, standard_relations, EndAlgebra, IsoResult, Representation,
};
use quivrep_core::workbench::{
    build_v_lambda, catalog_interval_modules, catalog_lambda_family, catalog_preprojective_band, lift_band_rep, run_suite,
    window_classify_with, CatalogEntry, SuiteConfig, VLambdaVariant, WindowSpec, CLASSIFY_SAMPLES,
};
use quivrep_core::Error;

#[derive(Parser)]
#[command(name = "quivrep", version, about = "Exact computations with quiver representations")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Vertex window `a b`; on the grid it means the square `[a,b] x [a,b]`.
    #[arg(long, global = true, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    window: Option<Vec<i64>>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Functor {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Printed,
    Repaired,
}

#[derive(Args)]
struct MnArgs {
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a representation against its quiver's relations, or a relation file.
    CheckRelations {
        rep: String,
        #[arg(long)]
        relations: Option<String>,
    },
    /// Basis of Hom(V, U).
    Hom { v: String, u: String },
    /// Endomorphism algebra: dimension, radical, locality.
    End { v: String },
    /// Krull-Schmidt decomposition.
    Decompose { v: String },
    /// Decide whether two representations are isomorphic.
    Iso { v: String, u: String },
    /// Left or right extension along a covering.
    Pushforward {
        morphism: String,
        rep: String,
        #[arg(long, value_enum, default_value_t = Functor::Left)]
        functor: Functor,
    },
    /// Restriction along a morphism, materialized on `--window`.
    Restrict { morphism: String, rep: String },
    /// Verify the covering property on `--window`.
    CoveringCheck { morphism: String },
    /// Lift a target path to the source, ending at `--at`.
    LiftPath {
        morphism: String,
        path: String,
        #[arg(long, allow_negative_numbers = true)]
        at: String,
    },
    /// Round trip between paths and the modified enveloping algebra on `--window`.
    UIsoCheck {
        #[command(flatten)]
        mn: MnArgs,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Product of two algebra elements.
    UMul {
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        /// Multiply in the irrational-slope algebra, indexed by pairs.
        #[arg(long)]
        irrational: bool,
        x: String,
        y: String,
    },
    /// Image of a path sum on Q_{m,n} in the algebra.
    Phi {
        #[command(flatten)]
        mn: MnArgs,
        pathsum: String,
    },
    /// Path sum of an algebra element.
    Psi {
        #[command(flatten)]
        mn: MnArgs,
        element: String,
    },
    /// Sort random windowed representations into interval classes.
    Classify {
        #[command(flatten)]
        mn: MnArgs,
        #[arg(long, default_value_t = 3)]
        dim_max: usize,
        #[arg(long, default_value_t = CLASSIFY_SAMPLES)]
        samples: usize,
    },
    /// Build and re-verify a catalog.
    Catalog {
        #[command(subcommand)]
        which: CatalogCmd,
    },
    /// Lift a line-quiver representation to the grid.
    LiftBand { rep: String },
    /// Run every check with fixed seeds.
    Suite {
        #[arg(long = "expect-fail")]
        expect_fail: Vec<String>,
        #[arg(long)]
        only: Vec<String>,
        #[arg(long)]
        include_printed: bool,
        #[arg(long)]
        tamper: bool,
        #[arg(long, default_value_t = 4)]
        band_width: usize,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Interval modules of the window given by `--window`.
    Interval {
        #[command(flatten)]
        mn: MnArgs,
    },
    /// The one-parameter family on Q_{m,1}.
    Lambda {
        #[arg(long)]
        m: i64,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,5,7")]
        lambdas: Vec<String>,
    },
    /// Bounded search for preprojective indecomposables.
    Band {
        #[arg(long, default_value_t = 3)]
        width: usize,
        #[arg(long, default_value_t = 2)]
        dim_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "-1,0,1", allow_negative_numbers = true)]
        entries: Vec<i64>,
    },
    /// The seven-vertex grid family.
    VLambda {
        #[arg(long, default_value = "2")]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Variant::Repaired)]
        variant: Variant,
    },
}

/// What a command produces: machine output, human output, and whether it passed.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: impl Into<String>, ok: bool) -> Self {
        Report { json, text: text.into(), ok }
    }
}

fn load(arg: &str) -> Result<Value, Error> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return parse_json(arg);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
    parse_json(&text)
}

fn load_rep(arg: &str) -> Result<Arc<Representation>, Error> {
    Ok(Arc::new(rep_from_json(&load(arg)?)?))
}

fn load_morphism(arg: &str) -> Result<QuiverMorphism, Error> {
    quiver_morphism_from_json(&load(arg)?)
}

fn rational(s: &str) -> Result<Rational, Error> {
    parse_rational(s)
}

fn window(cli: &Cli, schema: &QuiverSchema) -> Result<Window, Error> {
    let Some(w) = &cli.window else {
        return if schema.is_finite() { Ok(Window::Full) } else { Err(Error::Parse("this command needs --window a b".into())) };
    };
    let (a, b) = (w[0], w[1]);
    Ok(match schema {
        QuiverSchema::QinfXinf => Window::rect((a, b), (a, b)),
        _ => Window::interval(a, b),
    })
}

fn window_pair(cli: &Cli) -> Result<(i64, i64), Error> {
    match &cli.window {
        Some(w) => Ok((w[0], w[1])),
        None => Err(Error::Parse("this command needs --window a b".into())),
    }
}

fn entry_json(e: &CatalogEntry, problems: &[String]) -> Value {
    json!({
        "name": e.name,
        "origin": e.origin,
        "rep": rep_to_json(&e.rep),
        "indecomposable": e.expect_indecomposable,
        "relations": e.expect_relations,
        "verified": problems.is_empty(),
        "problems": problems,
    })
}

fn catalog_report(entries: &[CatalogEntry], seed: u64, note: Option<&str>) -> Result<Report, Error> {
    let mut items = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for e in entries {
        let problems = e.verify(seed)?;
        ok &= problems.is_empty();
        text += &format!("{}  {}  {}\n", if problems.is_empty() { "ok  " } else { "FAIL" }, e.name, e.rep.summary());
        for p in &problems {
            text += &format!("      {p}\n");
        }
        items.push(entry_json(e, &problems));
    }
    if let Some(n) = note {
        text += &format!("{} entries ({n})", entries.len());
    } else {
        text += &format!("{} entries", entries.len());
    }
    Ok(Report::new(json!({"entries": items, "note": note}), text, ok))
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::CheckRelations { rep, relations } => {
            let v = load_rep(rep)?;
            let rels = match relations {
                Some(r) => relations_from_json(&load(r)?)?,
                None => standard_relations(&v)?,
            };
            let viol = check_relations(&v, &rels)?;
            let items: Vec<Value> = viol
                .iter()
                .map(|x| json!({"index": x.index, "generator": pathsum_to_json(&x.generator), "residual": matrix_to_json(&x.residual)}))
                .collect();
            let mut text = format!("{} generators, {} violated", rels.len(), viol.len());
            for x in &viol {
                text += &format!("\n  {}", x.generator.label());
            }
            Ok(Report::new(json!({"generators": rels.len(), "violations": items}), text, viol.is_empty()))
        }
        Cmd::Hom { v, u } => {
            let basis = hom_basis(&load_rep(v)?, &load_rep(u)?)?;
            let items: Vec<Value> = basis.iter().map(|f| morphism_to_json(f)["comps"].clone()).collect();
            Ok(Report::new(json!({"dim": basis.len(), "basis": items}), format!("dim Hom = {}", basis.len()), true))
        }
        Cmd::End { v } => {
            let e = EndAlgebra::new(&load_rep(v)?)?;
            let j = json!({"dim": e.dim(), "radical_dim": e.radical_dim(), "semisimple_dim": e.semisimple_dim(), "local": e.is_local()});
            let text = format!(
                "dim End = {}, dim J = {}, dim End/J = {}, local: {}",
                e.dim(),
                e.radical_dim(),
                e.semisimple_dim(),
                e.is_local()
            );
            Ok(Report::new(j, text, true))
        }
        Cmd::Decompose { v } => {
            let d = decompose(&load_rep(v)?, seed)?;
            let items: Vec<Value> = d.summands.iter().map(|s| json!({"rep": rep_to_json(&s.rep), "certified": s.certified})).collect();
            let mut text = format!("{} summands{}", d.len(), if d.is_certified() { "" } else { " (some uncertified)" });
            for s in &d.summands {
                text += &format!("\n  {}{}", s.rep.summary(), if s.certified { "" } else { "  [uncertified]" });
            }
            Ok(Report::new(json!({"summands": items, "certified": d.is_certified()}), text, d.is_certified()))
        }
        Cmd::Iso { v, u } => {
            let r = iso(&load_rep(v)?, &load_rep(u)?, seed)?;
            let witness = match &r {
                IsoResult::Iso(h) => morphism_to_json(h)["comps"].clone(),
                _ => Value::Null,
            };
            Ok(Report::new(json!({"iso": r.label(), "witness": witness}), format!("iso: {}", r.label()), r.is_iso()))
        }
        Cmd::Pushforward { morphism, rep, functor } => {
            let phi = load_morphism(morphism)?;
            let v = load_rep(rep)?;
            let w = match functor {
                Functor::Left => pushforward_left(&phi, &v)?,
                Functor::Right => pushforward_right(&phi, &v)?,
            };
            Ok(Report::new(rep_to_json(&w), w.summary(), true))
        }
        Cmd::Restrict { morphism, rep } => {
            let phi = load_morphism(morphism)?;
            let w = restrict(&phi, &load_rep(rep)?)?.materialize_window(&window(cli, phi.source())?)?;
            Ok(Report::new(rep_to_json(&w), w.summary(), true))
        }
        Cmd::CoveringCheck { morphism } => {
            let phi = load_morphism(morphism)?;
            let vs = window(cli, phi.source())?.vertices(phi.source())?;
            Ok(match is_covering(&phi, &vs)? {
                Covering::Yes => Report::new(json!({"covering": true, "vertices": vs.len()}), format!("covering on {} vertices", vs.len()), true),
                Covering::No { vertex, reason } => Report::new(
                    json!({"covering": false, "vertex": vertex_to_json(vertex), "reason": reason}),
                    format!("not a covering at {vertex}: {reason}"),
                    false,
                ),
            })
        }
        Cmd::LiftPath { morphism, path, at } => {
            let phi = load_morphism(morphism)?;
            let p = path_from_json(phi.target(), &load(path)?)?;
            let x = vertex_from_json(&parse_json(at)?)?;
            let l = lift_path(&phi, &p, x)?;
            Ok(Report::new(path_to_json(phi.source(), &l), l.label(phi.source()), true))
        }
        Cmd::UIsoCheck { mn, degree, samples } => {
            let w = window_pair(cli)?;
            let r = roundtrip_check(mn.m, mn.n, *degree, w, *samples, seed)?;
            let text = format!(
                "{} monomials, {} paths, {} relations, {} products; {} failures{}",
                r.monomials_checked,
                r.paths_checked,
                r.relations_checked,
                r.products_checked,
                r.failures.len(),
                r.failures.first().map(|f| format!("\n  {f}")).unwrap_or_default()
            );
            let j = json!({
                "monomials": r.monomials_checked, "paths": r.paths_checked, "relations": r.relations_checked,
                "products": r.products_checked, "failures": r.failures,
            });
            Ok(Report::new(j, text, r.passed()))
        }
        Cmd::UMul { m, n, irrational, x, y } => {
            let mode = match (irrational, m, n) {
                (true, _, _) => UMode::Irrational { mu_tag: None },
                (false, Some(m), Some(n)) => UMode::rational(*m, *n)?,
                _ => return Err(Error::Parse("u-mul needs --m and --n, or --irrational".into())),
            };
            let p = u_mul(&mode, &uelement_from_json(&load(x)?)?, &uelement_from_json(&load(y)?)?)?;
            Ok(Report::new(uelement_to_json(&p), p.to_string(), true))
        }
        Cmd::Phi { mn, pathsum } => {
            let s = QuiverSchema::qmn(mn.m, mn.n)?;
            let u = phi(&pathsum_from_json(&s, &load(pathsum)?)?)?;
            Ok(Report::new(uelement_to_json(&u), u.to_string(), true))
        }
        Cmd::Psi { mn, element } => {
            let mode = UMode::rational(mn.m, mn.n)?;
            let p = psi(&mode, &uelement_from_json(&load(element)?)?)?;
            Ok(Report::new(pathsum_to_json(&p), p.label(), true))
        }
        Cmd::Classify { mn, dim_max, samples } => {
            let (a, b) = window_pair(cli)?;
            let c = window_classify_with(&WindowSpec::new(mn.m, mn.n, a, b)?, *dim_max, seed, *samples)?;
            let mut text = format!("{} samples, {} classes seen", c.samples, c.class_count());
            for (e, h) in c.catalog.iter().zip(&c.hits) {
                text += &format!("\n  {:<12} {h}", e.name);
            }
            if !c.extra.is_empty() {
                text += &format!("\n  {} classes outside the interval catalog", c.extra.len());
            }
            if c.boundary {
                text += "\n  boundary case: b - a = |m|";
            }
            let family = c.family.as_ref().map(|f| {
                json!({
                    "lambdas": f.lambdas.iter().map(display_rational).collect::<Vec<_>>(),
                    "dims": f.dims,
                    "pairwise_distinct": f.distinct(),
                })
            });
            if let Some(f) = &c.family {
                text += &format!(
                    "\n  lambda family {:?}: {}",
                    f.lambdas.iter().map(display_rational).collect::<Vec<_>>(),
                    if f.distinct() { "pairwise non-isomorphic" } else { "not separated" }
                );
            }
            let ok = c.all_matched() && c.family.as_ref().map_or(true, |f| f.distinct());
            let j = json!({
                "samples": c.samples,
                "classes": c.class_count(),
                "catalog": c.catalog.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
                "hits": c.hits,
                "extra": c.extra.iter().map(|r| rep_to_json(r)).collect::<Vec<_>>(),
                "uncertified": c.uncertified,
                "boundary": c.boundary,
                "family": family,
            });
            Ok(Report::new(j, text, ok))
        }
        Cmd::Catalog { which } => match which {
            CatalogCmd::Interval { mn } => {
                let (a, b) = window_pair(cli)?;
                catalog_report(&catalog_interval_modules(&WindowSpec::new(mn.m, mn.n, a, b)?)?, seed, None)
            }
            CatalogCmd::Lambda { m, lambdas } => {
                let ls = lambdas.iter().map(|l| rational(l)).collect::<Result<Vec<_>, _>>()?;
                catalog_report(&catalog_lambda_family(*m, &ls)?, seed, None)
            }
            CatalogCmd::Band { width, dim_max, entries } => {
                let c = catalog_preprojective_band(*width, *dim_max, entries, seed)?;
                let mut r = catalog_report(&c.entries, seed, Some(c.note))?;
                r.json["candidates"] = json!(c.candidates);
                Ok(r)
            }
            CatalogCmd::VLambda { lambda, variant } => {
                let v = match variant {
                    Variant::Printed => VLambdaVariant::Printed,
                    Variant::Repaired => VLambdaVariant::Repaired,
                };
                catalog_report(&[build_v_lambda(&rational(lambda)?, v)?], seed, None)
            }
        },
        Cmd::LiftBand { rep } => {
            let v = load_rep(rep)?;
            Ok(match lift_band_rep(&v, seed)? {
                Some(u) => {
                    let c = orbit_canonical(&u)?;
                    Report::new(json!({"lift": rep_to_json(&u), "canonical": rep_to_json(&c)}), c.summary(), true)
                }
                None => Report::new(json!({"lift": null}), "no lift found within the search bounds", false),
            })
        }
        Cmd::Suite { expect_fail, only, include_printed, tamper, band_width } => {
            let cfg = SuiteConfig {
                seed,
                expect_fail: expect_fail.iter().cloned().collect(),
                include_printed: *include_printed,
                tamper: *tamper,
                only: only.iter().cloned().collect(),
                band_width: *band_width,
            };
            let r = run_suite(&cfg);
            let j = serde_json::to_value(&r).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Report::new(j, r.to_text().trim_end().to_string(), r.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable")),
                Format::Text => println!("{}", r.text),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("quivrep: {e}");
            ExitCode::from(2)
        }
    }
}
