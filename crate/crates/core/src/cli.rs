//! The `cvxfun` command line: functor constructions, linearization,
//! moment hierarchies, the worked-example report and generators.

use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::cones::{body_product, dual_cone, marked_product, ConvexBody, PolyCone};
use crate::error::{Error, Result};
use crate::functors::{
    hom_cone, schur_body, sym_body, sym_body_monomials, sym_cone, tensor_body, tensor_cone, Partition,
};
use crate::io::{
    body_doc, canonical_string, cone_doc, error_json, map_json, marked_cone_doc, measure_json, objective_doc,
    parse_body, parse_cone, parse_map, parse_marked_cone, parse_measure, parse_objective, pencil_doc,
    q_json, vec_json, vecs_json, Document,
};
use crate::linearizer::{brute_force_max, linearize_sym, linearize_tensor, lp_max_over_body, MultilinearObjective};
use crate::moments::{
    assemble_pencil, finite_convergence, qk_maximize, qk_membership, qk_polar_membership, Measure, MomentPencil,
    PolarVerdict, PolyMap, QkMax, DEFAULT_TOL,
};
use crate::qlinalg::{format_rational, parse_rational, QVector};
use crate::random::{random_body, random_cone, random_objective, rng};
use crate::stsp::stsp_body_vertices;
use crate::verify::{report_json, verify_examples};

#[derive(Debug, Parser)]
#[command(name = "cvxfun", version, about = "Linearization functors on polyhedral cones and convex bodies")]
pub struct Cli {
    /// Output file (`-` for stdout).
    #[arg(short = 'o', long = "output", global = true, default_value = "-")]
    output: String,
    /// Multiply every enumeration cap by this factor (overrides CVXFUN_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for random generation, recorded in provenance.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tensor product of two bodies or two cones.
    Tensor { a: String, b: String },
    /// Symmetric power of a body or cone.
    Sym {
        input: String,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
    },
    /// Schur functor of a body for a partition.
    Schur {
        input: String,
        #[arg(long, value_name = "p1,p2,...")]
        shape: String,
    },
    /// Cone of linear maps sending the first cone into the second.
    Hom { a: String, b: String },
    /// Dual cone, or polar body.
    Dual { input: String },
    /// Product of two bodies or two marked cones.
    Product { a: String, b: String },
    /// Linearize a multilinear objective over one body (symmetric) or two (bilinear).
    Linearize {
        objective: String,
        bodies: Vec<String>,
        /// Also maximize by enumerating vertex tuples and compare.
        #[arg(long)]
        check_bruteforce: bool,
    },
    /// Moment pencils and queries against their spectrahedra.
    Hierarchy(HierarchyArgs),
    /// Check the worked examples; exits 1 if any fails.
    VerifyPaper {
        /// Replacement for the tensor counterexample's β (9 comma-separated rationals).
        #[arg(long)]
        beta: Option<String>,
    },
    /// Generate inputs.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
}

#[derive(Debug, Args)]
struct HierarchyArgs {
    /// Measure document, or a body document whose vertices carry the counting measure.
    #[arg(long, alias = "measure")]
    points: String,
    /// Polynomial map document (identity when omitted).
    #[arg(long)]
    map: Option<String>,
    /// Degree `k` or an inclusive range `a..b`.
    #[arg(short = 'k', default_value = "1")]
    k: String,
    /// Maximize `⟨c, λ⟩` over Q_k (comma-separated rationals).
    #[arg(long, allow_hyphen_values = true)]
    maximize: Option<String>,
    /// Exact Q_k membership of λ.
    #[arg(long, allow_hyphen_values = true)]
    member: Option<String>,
    /// Membership of a point in the polar of Q_k.
    #[arg(long, allow_hyphen_values = true)]
    polar: Option<String>,
    /// Detect the least k with Q_k° = Conv(T(B)) for the counting measure.
    #[arg(long)]
    finite_convergence: bool,
    #[arg(long = "kmax", default_value_t = 4)]
    kmax: u32,
    /// Translate the image points so their average is the origin first.
    #[arg(long)]
    recenter: bool,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long = "box-bound", default_value = "10")]
    box_bound: String,
    /// Write the pencil of the largest k here.
    #[arg(long)]
    pencil_out: Option<String>,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Recentred symmetric travelling salesman polytope.
    Stsp {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Random pointed cone.
    Cone {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 6)]
        rays: usize,
    },
    /// Random polytope with the origin inside.
    Body {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 6)]
        points: usize,
    },
    /// Random integer objective on lifted factor dimensions.
    Objective {
        #[arg(long = "lift-dims", value_name = "d1,d2,...")]
        lift_dims: String,
        #[arg(long)]
        symmetric: bool,
    },
}

/// Result of a command: the document to write and whether verification passed.
pub struct Outcome {
    pub document: Document,
    pub passed: bool,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Input(format!("cannot read stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))
}

fn read_doc(path: &str) -> Result<Document> {
    Document::parse(&read_input(path)?)
}

fn parse_list(s: &str) -> Result<QVector> {
    s.split(',').map(|x| parse_rational(x.trim())).collect()
}

fn parse_usizes(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad integer list {s:?}")))).collect()
}

fn parse_k_range(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::Parse(format!("-k expects an integer or a range a..b, got {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

fn provenance(argv: &[String], seed: Option<u64>, extra: Value) -> Value {
    let mut p = json!({
        "tool": "cvxfun",
        "version": env!("CARGO_PKG_VERSION"),
        "command": argv.join(" "),
        "seed": seed,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut p, extra) {
        m.extend(e);
    }
    p
}

enum Either {
    Body(ConvexBody),
    Cone(PolyCone),
}

fn body_or_cone(path: &str) -> Result<Either> {
    let d = read_doc(path)?;
    match d.kind.as_str() {
        "body" => Ok(Either::Body(parse_body(&d)?)),
        "cone" => Ok(Either::Cone(parse_cone(&d)?)),
        k => Err(Error::Input(format!("{path}: expected a body or cone document, got {k}"))),
    }
}

fn functor_doc(argv: &[String], seed: Option<u64>, doc: Document, extra: Value) -> Outcome {
    Outcome { document: doc.with_provenance(provenance(argv, seed, extra)), passed: true }
}

fn cmd_tensor(a: &str, b: &str, caps: &Caps, argv: &[String], seed: Option<u64>) -> Result<Outcome> {
    match (body_or_cone(a)?, body_or_cone(b)?) {
        (Either::Body(p), Either::Body(q)) => {
            let t = tensor_body(&p, &q, caps)?;
            Ok(functor_doc(
                argv,
                seed,
                body_doc(&t.body),
                json!({"functor": "tensor", "sources": [a, b], "layout": "(p, q, p⊗q) with p⊗q row-major", "left_dim": t.left_dim, "right_dim": t.right_dim}),
            ))
        }
        (Either::Cone(c), Either::Cone(d)) => Ok(functor_doc(
            argv,
            seed,
            cone_doc(&tensor_cone(&c, &d)?),
            json!({"functor": "tensor", "sources": [a, b], "layout": "row-major Kronecker, index i·d₂ + j"}),
        )),
        _ => Err(Error::Input("tensor needs two bodies or two cones".into())),
    }
}

fn cmd_sym(input: &str, n: usize, caps: &Caps, argv: &[String], seed: Option<u64>) -> Result<Outcome> {
    match body_or_cone(input)? {
        Either::Body(p) => {
            let s = sym_body(&p, n, caps)?;
            Ok(functor_doc(
                argv,
                seed,
                body_doc(&s.body),
                json!({
                    "functor": "sym", "n": n, "sources": [input],
                    "layout": "nonconstant coefficients of ∏(1 + pᵢ·x), by degree then descending lex",
                    "monomials": sym_body_monomials(p.dim(), n),
                }),
            ))
        }
        Either::Cone(c) => {
            caps.check_power(c.dim(), n)?;
            Ok(functor_doc(
                argv,
                seed,
                cone_doc(&sym_cone(&c, n)?),
                json!({"functor": "sym", "n": n, "sources": [input], "layout": "monomials of degree n, descending lex"}),
            ))
        }
    }
}

fn cmd_schur(input: &str, shape: &str, caps: &Caps, argv: &[String], seed: Option<u64>) -> Result<Outcome> {
    let lambda: Partition = shape.parse()?;
    match body_or_cone(input)? {
        Either::Body(p) => {
            let s = schur_body(&p, &lambda, caps)?;
            Ok(functor_doc(
                argv,
                seed,
                body_doc(&s.body),
                json!({"functor": "schur", "shape": lambda.to_string(), "sources": [input], "layout": "coordinates at the pivot entries of the symmetrizer image"}),
            ))
        }
        Either::Cone(_) => Err(Error::Input("schur takes a body document".into())),
    }
}

fn cmd_hom(a: &str, b: &str, argv: &[String], seed: Option<u64>) -> Result<Outcome> {
    match (body_or_cone(a)?, body_or_cone(b)?) {
        (Either::Cone(c), Either::Cone(d)) => Ok(functor_doc(
            argv,
            seed,
            cone_doc(&hom_cone(&c, &d)?),
            json!({"functor": "hom", "sources": [a, b], "layout": "F[r][s] at r·d_A + s"}),
        )),
        _ => Err(Error::Input("hom needs two cone documents".into())),
    }
}

fn cmd_dual(input: &str, argv: &[String], seed: Option<u64>) -> Result<Outcome> {
    let doc = match body_or_cone(input)? {
        Either::Body(p) => body_doc(&p.polar()?),
        Either::Cone(c) => cone_doc(&dual_cone(&c)),
    };
    Ok(functor_doc(argv, seed, doc, json!({"functor": "dual", "sources": [input]})))
}

fn cmd_product(a: &str, b: &str, argv: &[String], seed: Option<u64>) -> Result<Outcome> {
    let (da, db) = (read_doc(a)?, read_doc(b)?);
    let doc = match (da.kind.as_str(), db.kind.as_str()) {
        ("body", "body") => body_doc(&body_product(&parse_body(&da)?, &parse_body(&db)?)?),
        ("marked-cone", "marked-cone") => marked_cone_doc(&marked_product(&parse_marked_cone(&da)?, &parse_marked_cone(&db)?)),
        _ => return Err(Error::Input("product needs two bodies or two marked cones".into())),
    };
    Ok(functor_doc(argv, seed, doc, json!({"functor": "product", "sources": [a, b]})))
}

fn cmd_linearize(obj: &str, bodies: &[String], check: bool, caps: &Caps, argv: &[String], seed: Option<u64>) -> Result<Outcome> {
    let t = parse_objective(&read_doc(obj)?)?;
    let ps: Vec<ConvexBody> = bodies.iter().map(|b| parse_body(&read_doc(b)?)).collect::<Result<_>>()?;
    let (functor, f, body) = match ps.len() {
        1 => {
            let (f, s) = linearize_sym(&t, &ps[0], caps)?;
            ("sym", f, s.body)
        }
        2 => {
            let (f, tb) = linearize_tensor(&t, &ps[0], &ps[1], caps)?;
            ("tensor", f, tb.body)
        }
        n => return Err(Error::Input(format!("linearize takes one body (symmetric) or two (bilinear), got {n}"))),
    };
    let (lp, vertex) = lp_max_over_body(&f.linear, &body)?;
    let lp_value = lp + &f.constant;
    let mut report = json!({
        "functor": functor,
        "functional": vec_json(&f.linear),
        "constant": q_json(&f.constant),
        "body_vertices": body.vertices().len(),
        "lp_value": q_json(&lp_value),
        "lp_vertex": vec_json(&vertex),
    });
    let mut passed = true;
    if check {
        let lists: Vec<Vec<QVector>> = if ps.len() == 1 {
            vec![ps[0].vertices().to_vec(); t.order()]
        } else {
            ps.iter().map(|p| p.vertices().to_vec()).collect()
        };
        let refs: Vec<&[QVector]> = lists.iter().map(Vec::as_slice).collect();
        let (bf, argmax) = brute_force_max(&t, &refs, caps)?;
        passed = bf == lp_value;
        report["brute_force_value"] = q_json(&bf);
        report["argmax"] = json!(argmax);
        report["equal"] = json!(passed);
    }
    let doc = Document::new("report", report).with_provenance(provenance(argv, seed, json!({"sources": [obj], "bodies": bodies})));
    Ok(Outcome { document: doc, passed })
}

fn read_measure(path: &str) -> Result<Measure> {
    let d = read_doc(path)?;
    match d.kind.as_str() {
        "body" => Measure::counting(parse_body(&d)?.vertices().to_vec()),
        "measure" => parse_measure(&d.payload_value()),
        "points" => Measure::counting(crate::io::parse_vecs(
            d.payload.get("points").ok_or_else(|| Error::Parse("points document needs \"points\"".into()))?,
        )?),
        k => Err(Error::Input(format!("{path}: expected a measure, points or body document, got {k}"))),
    }
}

fn qkmax_json(r: &QkMax) -> Value {
    json!({
        "value": r.value,
        "lower": r.lower,
        "lambda": r.lambda,
        "cuts": r.cuts,
        "iterations": r.iterations,
        "box_active": r.box_active,
        "exact": r.exact,
    })
}

fn cmd_hierarchy(h: &HierarchyArgs, caps: &Caps, argv: &[String], seed: Option<u64>) -> Result<Outcome> {
    let measure = read_measure(&h.points)?;
    let mut map = match &h.map {
        Some(p) => parse_map(&read_doc(p)?.payload_value())?,
        None => PolyMap::identity(measure.nvars()),
    };
    let r = parse_rational(&h.box_bound)?;
    let mut report = json!({"measure": measure_json(&measure)});
    if h.recenter {
        let pts = match &measure {
            Measure::FinitePoints { points, .. } => points.clone(),
            _ => return Err(Error::Input("--recenter needs a finite point measure".into())),
        };
        let images: Vec<QVector> = pts.iter().map(|x| map.eval(x)).collect();
        let (_, avg) = crate::moments::recenter(&images)?;
        map = map.shifted(&avg)?;
        report["recentered_by"] = vec_json(&avg);
    }
    report["map"] = map_json(&map);
    if h.finite_convergence {
        let pts = match &measure {
            Measure::FinitePoints { points, .. } => points.clone(),
            _ => return Err(Error::Input("finite convergence needs a finite point measure".into())),
        };
        let fc = finite_convergence(&pts, &map, h.kmax, h.tol, caps)?;
        report["finite_convergence"] = json!({
            "k_star": fc.k_star,
            "verified": fc.verified,
            "image_vertices": vecs_json(fc.image.vertices()),
            "polar_vertices": vecs_json(fc.polar.vertices()),
            "levels": fc.levels.iter().map(|l| json!({
                "k": l.k,
                "polar_vertices_inside": l.polar_vertices_inside,
                "passed": l.passed,
                "supports": l.supports.iter().map(|(e, v)| json!({"exact": format_rational(e), "computed": v})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        });
    }
    let ks = parse_k_range(&h.k)?;
    let c = h.maximize.as_deref().map(parse_list).transpose()?;
    let member = h.member.as_deref().map(parse_list).transpose()?;
    let polar = h.polar.as_deref().map(parse_list).transpose()?;
    let mut rows = Vec::new();
    let mut last: Option<MomentPencil> = None;
    for &k in &ks {
        let pencil = assemble_pencil(&measure, &map, k, caps)?;
        let mut row = json!({"k": k, "size": pencil.size()});
        if let Some(c) = &c {
            row["maximize"] = qkmax_json(&qk_maximize(&pencil, c, &r, h.tol)?);
        }
        if let Some(l) = &member {
            row["member"] = json!(qk_membership(&pencil, l)?);
        }
        if let Some(p) = &polar {
            let (v, res) = qk_polar_membership(&pencil, p, &r, h.tol)?;
            let tag = match v {
                PolarVerdict::Inside => "inside",
                PolarVerdict::Outside => "outside",
                PolarVerdict::Borderline => "borderline",
            };
            row["polar"] = json!({"verdict": tag, "support": qkmax_json(&res)});
        }
        rows.push(row);
        last = Some(pencil);
    }
    report["levels"] = Value::Array(rows);
    if let (Some(path), Some(p)) = (&h.pencil_out, &last) {
        let doc = pencil_doc(p).with_provenance(provenance(argv, seed, json!({})));
        write_output(path, &doc.to_canonical_string())?;
    }
    let passed = report.get("finite_convergence").map_or(true, |f| f["verified"] == json!(true));
    let doc = Document::new("report", report).with_provenance(provenance(argv, seed, json!({})));
    Ok(Outcome { document: doc, passed })
}

fn cmd_verify(beta: Option<&str>, caps: &Caps, argv: &[String], seed: Option<u64>) -> Result<Outcome> {
    let beta = beta.map(parse_list).transpose()?;
    if beta.as_ref().is_some_and(|b| b.len() != 9) {
        return Err(Error::Dimension("β needs 9 coordinates".into()));
    }
    let items = verify_examples(beta.as_deref(), caps)?;
    let passed = items.iter().all(|i| i.passed);
    let doc = Document::new("report", report_json(&items)).with_provenance(provenance(argv, seed, json!({})));
    Ok(Outcome { document: doc, passed })
}

fn cmd_gen(what: &GenCommand, argv: &[String], seed: Option<u64>) -> Result<Outcome> {
    let mut g = rng(seed.unwrap_or(0));
    let doc = match what {
        GenCommand::Stsp { n } => {
            let (dim, vs) = stsp_body_vertices(*n)?;
            Document::new("body", json!({"dim": dim, "vertices": vecs_json(&vs)}))
        }
        GenCommand::Cone { dim, rays } => cone_doc(&random_cone(&mut g, *dim, *rays)?),
        GenCommand::Body { dim, points } => body_doc(&random_body(&mut g, *dim, *points)?),
        GenCommand::Objective { lift_dims, symmetric } => {
            let dims = parse_usizes(lift_dims)?;
            let t: MultilinearObjective = random_objective(&mut g, &dims, *symmetric)?;
            objective_doc(&t)
        }
    };
    Ok(Outcome { document: doc.with_provenance(provenance(argv, seed, json!({}))), passed: true })
}

fn write_output(path: &str, s: &str) -> Result<()> {
    if path == "-" {
        std::io::stdout().write_all(s.as_bytes()).map_err(|e| Error::Input(format!("cannot write stdout: {e}")))
    } else {
        fs::write(path, s).map_err(|e| Error::Input(format!("cannot write {path}: {e}")))
    }
}

fn caps_for(cli: &Cli) -> Result<Caps> {
    match cli.cap {
        Some(f) if f == 0 => Err(Error::Input("--cap must be a positive factor".into())),
        Some(f) => Ok(Caps::scaled(f)),
        None => Caps::from_env(),
    }
}

pub fn execute(cli: &Cli, argv: &[String]) -> Result<Outcome> {
    let caps = caps_for(cli)?;
    let seed = cli.seed;
    match &cli.command {
        Command::Tensor { a, b } => cmd_tensor(a, b, &caps, argv, seed),
        Command::Sym { input, n } => cmd_sym(input, *n, &caps, argv, seed),
        Command::Schur { input, shape } => cmd_schur(input, shape, &caps, argv, seed),
        Command::Hom { a, b } => cmd_hom(a, b, argv, seed),
        Command::Dual { input } => cmd_dual(input, argv, seed),
        Command::Product { a, b } => cmd_product(a, b, argv, seed),
        Command::Linearize { objective, bodies, check_bruteforce } => {
            cmd_linearize(objective, bodies, *check_bruteforce, &caps, argv, seed)
        }
        Command::Hierarchy(h) => cmd_hierarchy(h, &caps, argv, seed),
        Command::VerifyPaper { beta } => cmd_verify(beta.as_deref(), &caps, argv, seed),
        Command::Gen { what } => cmd_gen(what, argv, seed),
    }
}

/// Parse arguments, run, write output; returns the process exit code.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let argv: Vec<String> = args.into_iter().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let shown: Vec<String> = argv.iter().skip(1).cloned().collect();
    let result = execute(&cli, &shown).and_then(|out| {
        write_output(&cli.output, &out.document.to_canonical_string())?;
        Ok(out.passed)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprint!("{}", canonical_string(&error_json(&e)));
            e.exit_code()
        }
    }
}
