//! Command dispatch for the `rough` binary. Every command returns a
//! [`Report`] holding both the plain-text rendering and a JSON value, so
//! the binary only has to pick one and print it.

pub mod context;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rough_core::cipca::{build_cipca, ipc_semilinear, SemiLinear};
use rough_core::counting::{CountedSequence, Scheme};
use rough_core::cover::{Auai, NbdDir, PmKind, UPlus};
use rough_core::fuzzy::{construction1, reverse_transform};
use rough_core::measures;
use rough_core::rel_approx::{ApproxSpace, Dir, FamilyKind, MultiKind, ToleranceOp};
use rough_core::roughnat::{self, Minus, Order, Orders, RoughNatural, Suite};
use rough_core::rys::AxiomId;
use rough_core::theorems::{Fixture, Setting};
use rough_core::{CoverSystem, ElementSet, Error, Ratio, Relation, Universe};

pub use context::{parse_context, Context};

#[derive(Parser, Debug)]
#[command(name = "rough", version, about = "Rough-set approximations, granule axioms, counts and rough naturals")]
pub struct Cli {
    /// Context file with the universe and named structures.
    #[arg(long, global = true, value_name = "PATH")]
    pub context: Option<PathBuf>,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply an approximation operator to a set.
    Approx(ApproxArgs),
    /// List a granule family of a relation or cover.
    Granules(GranulesArgs),
    /// Check granule axioms for a theory.
    Axioms(AxiomsArgs),
    /// Count a sequence.
    Count(CountArgs),
    /// Dependency and consistency degrees of two equivalences.
    Measure(MeasureArgs),
    /// Rough naturals.
    Roughnat {
        #[command(subcommand)]
        command: RoughnatCommand,
    },
    /// Fuzzy chains and partitions.
    Fuzzy {
        #[command(subcommand)]
        command: FuzzyCommand,
    },
    /// Quotient of the counting orders by equal IPC counts.
    Cipca(CipcaArgs),
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    /// Operator name, e.g. l1, u2, u3+, lp2, lm4, l6+, l, u, lt, bitten, lw.
    #[arg(long)]
    pub op: String,
    /// The set, e.g. "{a,b}".
    #[arg(long)]
    pub set: String,
    #[arg(long, conflicts_with = "relation")]
    pub cover: Option<String>,
    /// One relation, or several separated by commas for ls/us/lw/uw.
    #[arg(long)]
    pub relation: Option<String>,
}

#[derive(Args, Debug)]
pub struct GranulesArgs {
    /// classes, relateds, blocks, block-intersections, related-intersections
    /// (relations); blocks, friends, nbd, pi, md, reduct (covers).
    #[arg(long)]
    pub family: String,
    #[arg(long, conflicts_with = "relation")]
    pub cover: Option<String>,
    #[arg(long)]
    pub relation: Option<String>,
    /// Repeat the reduct until no block is reducible.
    #[arg(long)]
    pub iterate_reduct: bool,
}

#[derive(Args, Debug)]
pub struct AxiomsArgs {
    /// Theory name (classical, tolerance, auai, lp4-cover, l1-u3plus, ...).
    #[arg(long)]
    pub theory: String,
    #[arg(long, conflicts_with = "relation")]
    pub cover: Option<String>,
    /// One relation, or two separated by a comma for `multiple`.
    #[arg(long)]
    pub relation: Option<String>,
    /// Named granule family replacing the theory's own granules.
    #[arg(long)]
    pub granules: Option<String>,
    /// Restrict to these axioms (repeatable).
    #[arg(long = "axiom")]
    pub axioms: Vec<String>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// ipc, hpc, hppc or ippc.
    #[arg(long)]
    pub scheme: String,
    #[arg(long)]
    pub relation: String,
    #[arg(long)]
    pub sequence: String,
    /// Print the count induced on this subset instead.
    #[arg(long)]
    pub induced: Option<String>,
}

#[derive(Args, Debug)]
pub struct MeasureArgs {
    #[arg(long = "R")]
    pub r: String,
    #[arg(long = "Q")]
    pub q: String,
    /// Consistency constant.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
}

#[derive(Subcommand, Debug)]
pub enum RoughnatCommand {
    /// Evaluate an expression with + . x - over literals like 3 or IDI.
    Eval {
        expr: String,
        /// Subtraction variant: plain, or, and, succ, pred.
        #[arg(long, default_value = "plain")]
        minus: String,
    },
    /// Decide an order (len, p, oplus, odot, otimes, sub, reach) between two literals.
    Order { order: String, x: String, y: String },
    /// Run a theorem suite: ripcna, ripca or foripca.
    Suite {
        suite: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Longest pattern checked exhaustively.
        #[arg(long, default_value_t = 4)]
        exhaustive: usize,
        /// Longest pattern sampled.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FuzzyCommand {
    /// Construction-1: level differences plus the core.
    ToPartition {
        #[arg(long)]
        fuzzy: String,
        /// Comma-separated points of P; defaults to every level.
        #[arg(long)]
        points: Option<String>,
    },
    /// Rebuild a chain from a named granule family read as a partition.
    FromPartition {
        #[arg(long)]
        granules: String,
        #[arg(long)]
        points: String,
    },
}

#[derive(Args, Debug)]
pub struct CipcaArgs {
    #[arg(long)]
    pub relation: String,
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.json).expect("serializable") + "\n"
        } else {
            self.text.clone()
        }
    }
}

type Out = std::result::Result<Report, CliError>;

fn names(u: &Universe, s: &ElementSet) -> Value {
    Value::from(s.iter().map(|i| u.name(i).to_string()).collect::<Vec<_>>())
}

fn lines(v: impl IntoIterator<Item = String>) -> String {
    v.into_iter().map(|l| l + "\n").collect()
}

pub fn load_context(cli: &Cli) -> std::result::Result<Context, CliError> {
    match &cli.context {
        None => Ok(parse_context("")?),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            parse_context(&text).map_err(|e| CliError::Domain(format!("{}: {e}", p.display())))
        }
    }
}

pub fn run(cli: &Cli) -> Out {
    let ctx = load_context(cli)?;
    match &cli.command {
        Command::Approx(a) => approx(&ctx, a),
        Command::Granules(a) => granules(&ctx, a),
        Command::Axioms(a) => axioms(&ctx, a),
        Command::Count(a) => count(&ctx, a),
        Command::Measure(a) => measure(&ctx, a),
        Command::Roughnat { command } => roughnat_cmd(command),
        Command::Fuzzy { command } => fuzzy_cmd(&ctx, command),
        Command::Cipca(a) => cipca(&ctx, a),
    }
}

fn need<'a>(v: &'a Option<String>, what: &str) -> std::result::Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Domain(format!("give --cover or --relation ({what})")))
}

fn relations(ctx: &Context, spec: &str) -> std::result::Result<Vec<Relation>, CliError> {
    Ok(spec.split(',').map(|n| ctx.relation(n.trim()).cloned()).collect::<rough_core::Result<_>>()?)
}

fn cover_op(cs: &CoverSystem, op: &str, x: &ElementSet) -> rough_core::Result<ElementSet> {
    let pm = |k| cs.lp_lm(x, k);
    Ok(match op {
        "l1" => cs.auai(x, Auai::L1),
        "l2" => cs.auai(x, Auai::L2),
        "u1" => cs.auai(x, Auai::U1),
        "u2" => cs.auai(x, Auai::U2),
        "u1+" => cs.uplus(x, UPlus::U1)?,
        "u2+" => cs.uplus(x, UPlus::U2)?,
        "u3+" => cs.uplus(x, UPlus::U3)?,
        "u4+" => cs.uplus(x, UPlus::U4)?,
        "u5+" => cs.uplus(x, UPlus::U5)?,
        "l6+" => cs.nbd_pair(x, NbdDir::L6)?,
        "u6+" => cs.nbd_pair(x, NbdDir::U6)?,
        "lp1" => pm(PmKind::Lp1)?,
        "up1" => pm(PmKind::Up1)?,
        "lp2" => pm(PmKind::Lp2)?,
        "up2" => pm(PmKind::Up2)?,
        "lp3" => pm(PmKind::Lp3)?,
        "up3" => pm(PmKind::Up3)?,
        "lp4" => pm(PmKind::Lp4)?,
        "up4" => pm(PmKind::Up4)?,
        "lm1" => pm(PmKind::Lm1)?,
        "um1" => pm(PmKind::Um1)?,
        "lm2" => pm(PmKind::Lm2)?,
        "um2" => pm(PmKind::Um2)?,
        "lm3" => pm(PmKind::Lm3)?,
        "um3" => pm(PmKind::Um3)?,
        "lm4" => pm(PmKind::Lm4)?,
        "um4" => pm(PmKind::Um4)?,
        "lm5" => pm(PmKind::Lm5)?,
        "um5" => pm(PmKind::Um5)?,
        _ => return Err(Error::KindMismatch { expected: "a cover operator", found: op.into() }),
    })
}

fn relation_op(rels: Vec<Relation>, op: &str, x: &ElementSet) -> rough_core::Result<ElementSet> {
    let one = || -> rough_core::Result<Relation> {
        match rels.as_slice() {
            [r] => Ok(r.clone()),
            _ => Err(Error::Precondition(format!("`{op}` takes a single relation"))),
        }
    };
    let dir = |c: char| if c == 'l' { Dir::Lower } else { Dir::Upper };
    match op {
        "l" | "u" => ApproxSpace::equivalence(one()?)?.classical(x, dir(op.chars().next().unwrap())),
        "esoteric-l" | "esoteric-u" => {
            ApproxSpace::partial_equivalence(one()?)?.esoteric(x, dir(op.chars().last().unwrap()))
        }
        "reflexive-l" | "reflexive-u" => {
            ApproxSpace::reflexive(one()?)?.reflexive_approx(x, dir(op.chars().last().unwrap()))
        }
        "lt" | "ut" | "lstar" | "ustar" | "bitten" => {
            let k = match op {
                "lt" => ToleranceOp::LT,
                "ut" => ToleranceOp::UT,
                "lstar" => ToleranceOp::LStar,
                "ustar" => ToleranceOp::UStar,
                _ => ToleranceOp::BittenUpper,
            };
            ApproxSpace::tolerance(one()?)?.tolerance_ops(x, k)
        }
        "ls" | "us" | "lw" | "uw" => {
            let k = match op {
                "ls" => MultiKind::Ls,
                "us" => MultiKind::Us,
                "lw" => MultiKind::Lw,
                _ => MultiKind::Uw,
            };
            ApproxSpace::multiple(rels)?.multi_approx(x, k)
        }
        _ => Err(Error::KindMismatch { expected: "a relation operator", found: op.into() }),
    }
}

fn approx(ctx: &Context, a: &ApproxArgs) -> Out {
    let u = &ctx.universe;
    let x = u.parse_set(&a.set)?;
    let result = match (&a.cover, &a.relation) {
        (Some(k), _) => cover_op(ctx.cover(k)?, &a.op, &x)?,
        (None, r) => relation_op(relations(ctx, need(r, "approx")?)?, &a.op, &x)?,
    };
    Ok(Report {
        text: lines([u.format_set(&result)]),
        json: json!({ "op": a.op, "input": names(u, &x), "result": names(u, &result) }),
    })
}

fn set_list(u: &Universe, sets: &[ElementSet]) -> Report {
    Report {
        text: lines(sets.iter().map(|s| u.format_set(s))),
        json: json!({ "granules": sets.iter().map(|s| names(u, s)).collect::<Vec<_>>() }),
    }
}

fn distinct(v: impl IntoIterator<Item = ElementSet>) -> Vec<ElementSet> {
    let mut out = Vec::new();
    for s in v {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn granules(ctx: &Context, a: &GranulesArgs) -> Out {
    let u = &ctx.universe;
    if let Some(k) = &a.cover {
        let cs = ctx.cover(k)?;
        let n = u.len();
        return Ok(match a.family.as_str() {
            "blocks" => set_list(u, cs.blocks()),
            "friends" => set_list(u, &distinct((0..n).map(|x| cs.friends(x)).collect::<rough_core::Result<Vec<_>>>()?)),
            "nbd" => set_list(u, &distinct((0..n).map(|x| cs.nbd(x)).collect::<rough_core::Result<Vec<_>>>()?)),
            "pi" => set_list(u, &cs.pi_cover()),
            "md" => {
                let rows: Vec<(String, Vec<String>)> =
                    (0..n).map(|x| Ok((u.name(x).to_string(), cs.minimal_description(x)?))).collect::<rough_core::Result<_>>()?;
                Report {
                    text: lines(rows.iter().map(|(e, m)| format!("{e}: {}", m.join(" ")))),
                    json: json!({ "md": rows.iter().map(|(e, m)| json!({ "element": e, "blocks": m })).collect::<Vec<_>>() }),
                }
            }
            "reduct" => {
                let red = if a.iterate_reduct { cs.iterated_reduct()? } else { cs.covering_reduct()? };
                let rows: Vec<(String, ElementSet)> = red.names().iter().cloned().zip(red.blocks().iter().copied()).collect();
                Report {
                    text: lines(rows.iter().map(|(k, b)| format!("{k} = {}", u.format_set(b)))),
                    json: json!({
                        "reducible": cs.reducible_blocks()?,
                        "blocks": rows.iter().map(|(k, b)| json!({ "name": k, "set": names(u, b) })).collect::<Vec<_>>(),
                    }),
                }
            }
            f => return Err(CliError::Domain(format!("unknown cover family `{f}`"))),
        });
    }
    let r = ctx.relation(need(&a.relation, "granules")?)?.clone();
    let kind = match a.family.as_str() {
        "classes" => FamilyKind::Classes,
        "relateds" => FamilyKind::Relateds,
        "blocks" => FamilyKind::Blocks,
        "block-intersections" => FamilyKind::BlockIntersections,
        "related-intersections" => FamilyKind::RelatedIntersections,
        f => return Err(CliError::Domain(format!("unknown relation family `{f}`"))),
    };
    let sp = if kind == FamilyKind::Classes { ApproxSpace::equivalence(r)? } else { ApproxSpace::tolerance(r)? };
    Ok(set_list(u, &sp.granule_family(kind)?.members))
}

fn axioms(ctx: &Context, a: &AxiomsArgs) -> Out {
    let setting: Setting = a.theory.parse()?;
    let u = &ctx.universe;
    let n = u.len();
    let rows = |r: &Relation| (0..n).map(|x| r.row(x).bits()).collect::<Vec<u64>>();
    let fixture = match (&a.cover, &a.relation) {
        (Some(k), _) => Fixture::from_cover(ctx.cover(k)?),
        (None, r) => {
            let rels = relations(ctx, need(r, "axioms")?)?;
            match rels.as_slice() {
                [one] => Fixture::from_relation(one),
                many => Fixture::Relations { n, rels: many.iter().map(rows).collect() },
            }
        }
    };
    let (inst, mut g) = fixture.instance_named(setting, u)?;
    if let Some(name) = &a.granules {
        g = inst.granules(ctx.granule_family(name)?)?;
    }
    let list: Vec<AxiomId> = if a.axioms.is_empty() {
        AxiomId::ALL.to_vec()
    } else {
        a.axioms.iter().map(|s| s.parse()).collect::<rough_core::Result<_>>()?
    };
    let mut text = Vec::new();
    let mut out = Vec::new();
    for ax in list {
        let v = inst.check_axiom(&g, ax);
        let d = inst.describe(&v);
        text.push(format!("{ax} {d}"));
        out.push(json!({ "axiom": ax.name(), "holds": v.holds(), "detail": d }));
    }
    Ok(Report { text: lines(text), json: json!({ "theory": setting.slug(), "axioms": out }) })
}

fn count(ctx: &Context, a: &CountArgs) -> Out {
    let scheme: Scheme = a.scheme.parse()?;
    let rel = ctx.relation(&a.relation)?;
    let seq = CountedSequence::new(rel, ctx.sequence(&a.sequence)?.clone())?;
    let mut cnt = seq.count(scheme);
    if let Some(sub) = &a.induced {
        cnt = cnt.induced(&seq, &ctx.universe.parse_set(sub)?)?;
    }
    let s = cnt.to_string();
    Ok(Report { text: lines([s.clone()]), json: json!({ "scheme": a.scheme, "sequence": a.sequence, "count": s }) })
}

fn measure(ctx: &Context, a: &MeasureArgs) -> Out {
    let (r, q) = (ctx.relation(&a.r)?, ctx.relation(&a.q)?);
    let u = &ctx.universe;
    let pos = measures::pos(r, q)?;
    let delta = measures::delta(r, q)?;
    let gk = measures::gk(r, q)?;
    let cons = measures::cons(r, q, a.n)?;
    let gcons = measures::gcons(r, q, a.n)?;
    let ratios = |v: &[Ratio]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(Report {
        text: lines([
            format!("pos = {}", u.format_set(&pos)),
            format!("delta = {delta}"),
            format!("gk = {gk}"),
            format!("cons = {cons}"),
            format!("gcons = {gcons}"),
        ]),
        json: json!({
            "n": a.n,
            "pos": names(u, &pos),
            "delta": delta.to_string(),
            "gk": ratios(&gk.0),
            "cons": cons.to_string(),
            "gcons": ratios(&gcons.0),
        }),
    })
}

fn show(x: &RoughNatural) -> String {
    if x.is_zero() {
        "0".into()
    } else {
        x.to_count().to_string()
    }
}

fn roughnat_cmd(c: &RoughnatCommand) -> Out {
    match c {
        RoughnatCommand::Eval { expr, minus } => {
            let v: Minus = minus.parse()?;
            let x = roughnat::eval(expr, v)?.ok_or_else(|| CliError::Domain(format!("`{expr}` is undefined")))?;
            Ok(Report {
                text: lines([show(&x)]),
                json: json!({ "expr": expr, "count": show(&x), "pattern": x.to_string(), "length": x.nu() }),
            })
        }
        RoughnatCommand::Order { order, x, y } => {
            let o: Order = order.parse()?;
            let (x, y): (RoughNatural, RoughNatural) = (x.parse()?, y.parse()?);
            let b = Orders::new().holds(o, &x, &y)?;
            Ok(Report { text: lines([b.to_string()]), json: json!({ "order": order, "holds": b }) })
        }
        RoughnatCommand::Suite { suite, samples, seed, exhaustive, max_len } => {
            let kind: Suite = suite.parse()?;
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(*seed);
            let res = roughnat::run_laws(&roughnat::suite_laws(kind), *exhaustive, *samples, *max_len, &mut rng)?;
            let example = |e: &Option<Vec<RoughNatural>>| {
                e.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
            };
            let text = res.iter().map(|r| {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                match example(&r.example) {
                    Some(e) => format!("{tag} {} {} [{e}]", r.id, r.statement),
                    None => format!("{tag} {} {}", r.id, r.statement),
                }
            });
            let js: Vec<Value> = res
                .iter()
                .map(|r| json!({ "id": r.id, "statement": r.statement, "passed": r.passed, "cases": r.cases, "example": example(&r.example) }))
                .collect();
            Ok(Report { text: lines(text), json: json!({ "suite": suite, "laws": js }) })
        }
    }
}

fn points(s: &str) -> std::result::Result<Vec<Ratio>, CliError> {
    s.split(',').map(|p| p.trim().parse::<Ratio>().map_err(CliError::Domain)).collect()
}

fn fuzzy_cmd(ctx: &Context, c: &FuzzyCommand) -> Out {
    let u = &ctx.universe;
    match c {
        FuzzyCommand::ToPartition { fuzzy, points: p } => {
            let f = ctx.fuzzy_set(fuzzy)?;
            let pts = match p {
                Some(p) => points(p)?,
                None => f.points().collect(),
            };
            let cells = construction1(f, &pts)?;
            Ok(set_list(u, &cells))
        }
        FuzzyCommand::FromPartition { granules, points: p } => {
            let f = reverse_transform(ctx.granule_family(granules)?, &points(p)?)?;
            let levels: Vec<(Ratio, ElementSet)> = f.levels().map(|(a, s)| (a, *s)).collect();
            Ok(Report {
                text: lines(levels.iter().map(|(a, s)| format!("{a} : {}", u.format_set(s)))),
                json: json!({
                    "levels": levels.iter().map(|(a, s)| json!({ "level": a.to_string(), "set": names(u, s) })).collect::<Vec<_>>(),
                }),
            })
        }
    }
}

fn cipca(ctx: &Context, a: &CipcaArgs) -> Out {
    let rel = ctx.relation(&a.relation)?;
    let c = build_cipca(rel)?;
    let cert = c.certificate(rel);
    let (_, semi) = ipc_semilinear(rel)?;
    let semi_text = match &semi {
        SemiLinear::Holds => "holds".to_string(),
        SemiLinear::DownSetNotChain { top, a, b } => {
            format!("fails: {} and {} lie below {} but are incomparable", c.counts[*a], c.counts[*b], c.counts[*top])
        }
        SemiLinear::NoLowerBound { a, b } => format!("fails: {} and {} have no common lower bound", c.counts[*a], c.counts[*b]),
    };
    let verdict = if cert.passed() { "passed".to_string() } else { format!("failed: {}", cert.problems.join("; ")) };
    Ok(Report {
        text: lines([
            format!("classes = {}", cert.classes),
            format!("density = {}", cert.density()),
            format!("certificate = {verdict} ({} products)", cert.products_checked),
            format!("semilinear = {semi_text}"),
        ]),
        json: json!({
            "classes": cert.classes,
            "defined": cert.defined,
            "density": cert.density().to_string(),
            "products": cert.products_checked,
            "certificate": cert.passed(),
            "problems": cert.problems,
            "semilinear": semi_text,
            "counts": c.counts.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        }),
    })
}
