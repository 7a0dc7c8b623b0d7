use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pperfect::acceptance::{criteria, CriterionResult};
use pperfect::fpbialg::{
    check_axioms, colimit_along_frobenius, frobenius, frobenius_nilpotence, grouplikes, is_weakly_primitive,
    verify_phi_formula, GradedBialgebra,
};
use pperfect::group::{groups_up_to_order_8, FiniteGroup};
use pperfect::homology::{
    assemble_fin_bialgebra, homology_csv, homology_rows, periodic_homology_dims, HomologyBasis, HomologyRow,
};
use pperfect::monoid::{
    catalog, fiber_product, group_completion, invert_p, is_locally_monogenic, is_zero_isolated, localize_at_element,
    pi0_pullback_check, AffineMonoid, CommMonoid, LocalizedMonoid, LocallyMonogenic, MonoidElement, MonoidHom,
    DEFAULT_BOUND,
};
use pperfect::perm::{PermGroup, Permutation, DEFAULT_ORDER_BOUND};
use pperfect::structure::{
    canonical_rho, rho_exhaustion, search_rho, verify_rho_action, verify_rho_group, GModule, RhoCandidate,
};
use pperfect::telescope::{default_max_level, DirectSystem, TelescopeElement};
use pperfect::{Error, Result};

/// Largest level degree the telescope commands will build.
const MAX_TELESCOPE_DEGREE: usize = 1 << 16;

#[derive(Parser)]
#[command(
    name = "pperfect",
    version,
    about = "Exact computations around p-perfect commutative monoids"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Permutations and permutation groups.
    #[command(subcommand)]
    Perm(PermCmd),
    /// Direct systems of symmetric groups.
    #[command(subcommand)]
    Telescope(TelescopeCmd),
    /// Finite and affine commutative monoids.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// ρ-structures on groups and modules.
    #[command(subcommand)]
    Structure(StructureCmd),
    /// Truncated graded bialgebras read from JSON.
    #[command(subcommand)]
    Fpbialg(FpbialgCmd),
    /// Mod-p group homology.
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Homology of symmetric groups fed into the bialgebra Frobenius.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
    /// Runs the acceptance checks.
    Acceptance {
        /// Run a single criterion.
        #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(1..=9))]
        only: Option<usize>,
        /// Print the criterion-to-command manifest instead of running.
        #[arg(long)]
        manifest: bool,
    },
}

fn positive() -> RangedU64ValueParser<usize> {
    RangedU64ValueParser::<usize>::new().range(1..)
}

fn prime_arg() -> RangedU64ValueParser<u32> {
    RangedU64ValueParser::<u32>::new().range(2..)
}

#[derive(Args)]
struct GroupSource {
    /// Permutation group JSON `{degree, generators}`.
    #[arg(long = "in", conflicts_with_all = ["symmetric", "alternating"])]
    input: Option<PathBuf>,
    #[arg(long, value_parser = positive())]
    symmetric: Option<usize>,
    #[arg(long, value_parser = positive())]
    alternating: Option<usize>,
    #[arg(long = "order-bound", default_value_t = DEFAULT_ORDER_BOUND, value_parser = positive())]
    order_bound: usize,
}

#[derive(Subcommand)]
enum PermCmd {
    /// Grid transpose of an a × b grid.
    Transpose {
        #[arg(long, value_parser = positive())]
        a: usize,
        #[arg(long, value_parser = positive())]
        b: usize,
    },
    /// Cycle decomposition and sign of a permutation given as an image array.
    Cycles {
        #[arg(long)]
        perm: String,
    },
    /// Whether a q-th root exists, with a witness.
    Root {
        #[arg(long)]
        perm: String,
        #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(2..))]
        q: usize,
    },
    /// Derived series, perfect core and hypoabelianness.
    Derived(GroupSource),
}

#[derive(Args)]
struct Tower {
    #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(2..))]
    p: usize,
}

#[derive(Subcommand)]
enum TelescopeCmd {
    /// First non-commuting pair of generators up to a level.
    Abelian {
        #[command(flatten)]
        tower: Tower,
        #[arg(long = "max-level", value_parser = positive())]
        max_level: Option<usize>,
    },
    /// Pushes an element to a higher level.
    Stabilize {
        #[command(flatten)]
        tower: Tower,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        perm: String,
        #[arg(long)]
        target: usize,
    },
    /// Equality in the colimit.
    Equal {
        #[command(flatten)]
        tower: Tower,
        #[arg(long = "level-a")]
        level_a: usize,
        #[arg(long)]
        a: String,
        #[arg(long = "level-b")]
        level_b: usize,
        #[arg(long)]
        b: String,
    },
    /// Per-level q-th root report for a stabilized element.
    Divisibility {
        #[command(flatten)]
        tower: Tower,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        perm: String,
        #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(2..))]
        q: usize,
        #[arg(long = "max-level", value_parser = positive())]
        max_level: Option<usize>,
    },
}

#[derive(Args)]
struct MonoidInput {
    /// Finite `{size, table, zero}` or affine `{rank, generators}` JSON.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// Group completion with the unit map.
    Complete(MonoidInput),
    /// Invert multiplication by p.
    InvertP {
        #[command(flatten)]
        m: MonoidInput,
        #[arg(long, value_parser = prime_arg())]
        p: u32,
    },
    /// Invert one element, given as an index (finite) or a JSON vector (affine).
    Localize {
        #[command(flatten)]
        m: MonoidInput,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = positive())]
        bound: usize,
    },
    /// Locally monogenic verdict with certificates.
    Locmono {
        #[command(flatten)]
        m: MonoidInput,
        #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = positive())]
        bound: usize,
    },
    /// Whether zero is isolated.
    Isolated(MonoidInput),
    /// Fiber product of `{a, f, b, g}`.
    Fiber {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = positive())]
        bound: usize,
    },
    /// Discrete pullback-square checks.
    Pullback {
        #[command(flatten)]
        m: MonoidInput,
        #[arg(long, value_parser = prime_arg())]
        p: u32,
        #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = positive())]
        bound: usize,
    },
    /// Commutative monoids of a given size up to isomorphism.
    Catalog {
        #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(1..=6))]
        size: usize,
    },
}

#[derive(Args)]
struct GroupTable {
    /// Group table JSON `{size, table, identity}`.
    #[arg(long = "in", conflicts_with = "group")]
    input: Option<PathBuf>,
    /// A named group of order at most 8, e.g. Z3, S3, Q8, Z2xZ2.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Subcommand)]
enum StructureCmd {
    /// Checks a candidate ρ against both conditions and the conclusion.
    Verify {
        #[command(flatten)]
        g: GroupTable,
        #[arg(long)]
        rho: PathBuf,
    },
    /// Every ρ on a group.
    Search {
        #[command(flatten)]
        g: GroupTable,
        #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(2..))]
        p: usize,
    },
    /// The averaging ρ on an abelian group.
    Canonical {
        #[command(flatten)]
        g: GroupTable,
        #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(2..))]
        p: usize,
    },
    /// search_rho over all groups of order at most 8.
    Exhaust {
        #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(2..))]
        p: usize,
    },
    /// Checks ρ on a module `{group, module, action}`.
    Action {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        equivariant: bool,
    },
}

#[derive(Args)]
struct BialgebraInput {
    /// Bialgebra JSON.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum FpbialgCmd {
    /// Verifies every bialgebra axiom.
    Check(BialgebraInput),
    /// Grouplike elements of degree 0.
    Grouplikes(BialgebraInput),
    /// Φ_m of an element such as `2*x + y`, with the weakly-primitive formula.
    Frobenius {
        #[command(flatten)]
        h: BialgebraInput,
        #[arg(long)]
        element: String,
        #[arg(long, value_parser = positive())]
        m: usize,
    },
    /// Φ_p^{∘j} against Φ_{p^j} on positive-degree basis elements.
    Nilpotence(BialgebraInput),
    /// Colimit along Φ_p per degree.
    Colimit(BialgebraInput),
}

#[derive(Args)]
struct Assembly {
    #[arg(long = "N", value_parser = positive())]
    n: usize,
    #[arg(long = "D", value_parser = positive())]
    d: usize,
    #[arg(long, value_parser = prime_arg())]
    p: u32,
    /// Weight window; components of weight above it are dropped.
    #[arg(long = "W", value_parser = positive())]
    w: Option<usize>,
}

impl Assembly {
    fn build(&self) -> Result<GradedBialgebra> {
        let window = self.w.unwrap_or(self.n);
        if window > self.n {
            return Err(Error::Malformed(format!("window {window} exceeds N = {}", self.n)));
        }
        assemble_fin_bialgebra(window, self.d, self.p)
    }
}

#[derive(Subcommand)]
enum HomologyCmd {
    /// H_*(Z/q; F_p) by the bar complex and by the periodic resolution.
    Cyclic {
        #[arg(long, value_parser = RangedU64ValueParser::<usize>::new().range(2..))]
        q: usize,
        #[arg(long = "D", value_parser = positive())]
        d: usize,
        /// Defaults to q.
        #[arg(long, value_parser = prime_arg())]
        p: Option<u32>,
    },
    /// H_*(Σ_n; F_p) dimensions.
    Symmetric {
        #[arg(long = "N", value_parser = positive())]
        n: usize,
        #[arg(long = "D", value_parser = positive())]
        d: usize,
        #[arg(long, value_parser = prime_arg())]
        p: u32,
    },
    /// The assembled bialgebra ⊕_{n ≤ N} H_{≤D}(Σ_n; F_p) as JSON.
    Assemble(Assembly),
}

#[derive(Subcommand)]
enum PipelineCmd {
    /// Assembly, axioms, weak primitivity, Φ formula, nilpotence and colimit.
    FinFrobenius(Assembly),
    /// Degree-0 colimit classes against the localized weight monoid.
    Weights(Assembly),
}

/// What a command produced: the JSON value, optional text and CSV
/// renderings, and whether a yes/no check came out negative.
struct Report {
    value: Value,
    text: Option<String>,
    csv: Option<String>,
    status: u8,
}

impl Report {
    fn new<T: Serialize>(v: &T) -> Result<Self> {
        Ok(Report {
            value: serde_json::to_value(v)?,
            text: None,
            csv: None,
            status: 0,
        })
    }

    fn text(mut self, t: String) -> Self {
        self.text = Some(t);
        self
    }

    fn csv(mut self, c: String) -> Self {
        self.csv = Some(c);
        self
    }

    fn negative_if(mut self, negative: bool) -> Self {
        if negative {
            self.status = 1;
        }
        self
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn parse_perm(text: &str) -> Result<Permutation> {
    Ok(serde_json::from_str(text)?)
}

fn perm_group(src: &GroupSource) -> Result<PermGroup> {
    match (&src.input, src.symmetric, src.alternating) {
        (Some(path), None, None) => {
            let mut g: PermGroup = read_json(path)?;
            g.enumerate(src.order_bound)?;
            Ok(g)
        }
        (None, Some(n), None) => PermGroup::symmetric(n, src.order_bound),
        (None, None, Some(n)) => PermGroup::alternating(n, src.order_bound),
        _ => Err(Error::Malformed(
            "give exactly one of --in, --symmetric, --alternating".into(),
        )),
    }
}

fn finite_group(src: &GroupTable) -> Result<FiniteGroup> {
    match (&src.input, &src.group) {
        (Some(path), None) => read_json(path),
        (None, Some(name)) => groups_up_to_order_8()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::Malformed(format!("unknown group `{name}`"))),
        _ => Err(Error::Malformed("give exactly one of --in, --group".into())),
    }
}

fn tower(t: &Tower, max_level: usize) -> Result<DirectSystem> {
    let sys = DirectSystem::symmetric_tower(t.p)?;
    if sys.degree(max_level.min(32)) > MAX_TELESCOPE_DEGREE || max_level > 32 {
        return Err(Error::Budget {
            what: format!("level {max_level} of the p = {} tower", t.p),
            largest_feasible: format!("degree {MAX_TELESCOPE_DEGREE}"),
        });
    }
    Ok(sys)
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::Perm(cmd) => perm(cmd),
        Command::Telescope(cmd) => telescope(cmd),
        Command::Monoid(cmd) => monoid(cmd),
        Command::Structure(cmd) => structure(cmd),
        Command::Fpbialg(cmd) => fpbialg(cmd),
        Command::Homology(cmd) => homology(cmd),
        Command::Pipeline(cmd) => pipeline(cmd),
        Command::Acceptance { only, manifest } => acceptance(only, manifest),
    }
}

fn describe(p: &Permutation) -> Value {
    json!({
        "images": p.images(),
        "cycles": p.to_string(),
        "cycle_type": p.cycle_type(),
        "sign": p.sign(),
    })
}

fn perm(cmd: PermCmd) -> Result<Report> {
    match cmd {
        PermCmd::Transpose { a, b } => {
            let t = Permutation::grid_transpose(a, b)?;
            Ok(Report::new(&describe(&t))?.text(format!("{t} sign {}", t.sign())))
        }
        PermCmd::Cycles { perm } => {
            let p = parse_perm(&perm)?;
            let mut value = describe(&p);
            value["fixed_points"] = json!(p.fixed_points());
            Ok(Report::new(&value)?.text(format!("{p} sign {}", p.sign())))
        }
        PermCmd::Root { perm, q } => {
            let p = parse_perm(&perm)?;
            let r = p.pth_root(q)?;
            let text = match &r.witness {
                Some(w) => format!("root exists: {w}"),
                None if r.exists => "root exists".to_string(),
                None => "no root".to_string(),
            };
            let negative = !r.exists;
            Ok(Report::new(&r)?.text(text).negative_if(negative))
        }
        PermCmd::Derived(src) => {
            let g = perm_group(&src)?;
            let series: Vec<usize> = g.derived_series()?.iter().filter_map(PermGroup::order).collect();
            let core = g.perfect_core()?.order();
            let value = json!({
                "order": g.order(),
                "derived_series": series,
                "perfect_core_order": core,
                "perfect": g.is_perfect()?,
                "hypoabelian": g.is_hypoabelian()?,
            });
            Ok(Report::new(&value)?.text(format!("derived series {series:?}, perfect core of order {core:?}")))
        }
    }
}

fn telescope(cmd: TelescopeCmd) -> Result<Report> {
    match cmd {
        TelescopeCmd::Abelian { tower: t, max_level } => {
            let level = max_level.unwrap_or(default_max_level(t.p));
            let sys = tower(&t, level)?;
            let v = sys.abelianness_probe(level)?;
            Ok(Report::new(&v)?)
        }
        TelescopeCmd::Stabilize {
            tower: t,
            level,
            perm,
            target,
        } => {
            let sys = tower(&t, target)?;
            let e = element(&sys, level, &perm)?;
            let s = sys.stabilize(&e, target)?;
            Ok(Report::new(&json!({"level": s.level, "value": describe(&s.value)}))?.text(s.value.to_string()))
        }
        TelescopeCmd::Equal {
            tower: t,
            level_a,
            a,
            level_b,
            b,
        } => {
            let sys = tower(&t, level_a.max(level_b))?;
            let (ea, eb) = (element(&sys, level_a, &a)?, element(&sys, level_b, &b)?);
            let equal = sys.colimit_equal(&ea, &eb)?;
            Ok(Report::new(&json!({ "equal": equal }))?
                .text(equal.to_string())
                .negative_if(!equal))
        }
        TelescopeCmd::Divisibility {
            tower: t,
            level,
            perm,
            q,
            max_level,
        } => {
            let top = max_level.unwrap_or(default_max_level(t.p)).max(level);
            let sys = tower(&t, top)?;
            let e = element(&sys, level, &perm)?;
            let records = sys.divisibility_probe(&e, q, top)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["level", "degree", "cycle_type", "has_root", "conjugate_blocks"])
                .map_err(csv_error)?;
            for r in &records {
                w.write_record([
                    r.level.to_string(),
                    r.degree.to_string(),
                    format!("{:?}", r.cycle_type.lengths),
                    r.has_root.to_string(),
                    r.conjugate_blocks.to_string(),
                ])
                .map_err(csv_error)?;
            }
            let table = String::from_utf8(w.into_inner().map_err(|e| csv_error(e.into_error().into()))?)
                .expect("csv output is UTF-8");
            Ok(Report::new(&records)?.csv(table))
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn element(sys: &DirectSystem, level: usize, perm: &str) -> Result<TelescopeElement> {
    let e = TelescopeElement::new(level, parse_perm(perm)?);
    if !sys.contains(&e)? {
        return Err(Error::Malformed(format!(
            "a level-{level} element must have degree {}",
            sys.degree(level)
        )));
    }
    Ok(e)
}

fn load_monoid(m: &MonoidInput) -> Result<CommMonoid> {
    read_json(&m.input)
}

fn localized_value(loc: &LocalizedMonoid) -> Value {
    match loc {
        LocalizedMonoid::Finite(l) => {
            let q = l.monoid();
            json!({
                "representation": "finite",
                "inverted": l.inverted(),
                "size": q.size(),
                "table": q.table(),
                "zero": q.zero(),
                "representatives": l.representatives(),
                "unit_map": l.unit_map(),
                "is_group": q.is_group(),
            })
        }
        LocalizedMonoid::Affine(l) => json!({
            "representation": "affine",
            "inverted": l.inverted(),
            "base": l.base(),
            "elements": "pairs (v, k) with v in the base monoid",
        }),
    }
}

fn monoid(cmd: MonoidCmd) -> Result<Report> {
    match cmd {
        MonoidCmd::Complete(m) => {
            let gc = group_completion(&load_monoid(&m)?)?;
            let text = format!("rank {} torsion {:?}", gc.group.rank, gc.group.torsion);
            Ok(Report::new(&gc)?.text(text))
        }
        MonoidCmd::InvertP { m, p } => {
            let base = load_monoid(&m)?;
            let loc = invert_p(&base, u64::from(p))?;
            let mut value = localized_value(&loc);
            if let LocalizedMonoid::Finite(l) = &loc {
                value["times_p_bijective"] = json!(l.monoid().times_is_bijective(u64::from(p)));
            }
            value["zero_isolated"] = json!(is_zero_isolated(&base).isolated);
            Ok(Report::new(&value)?)
        }
        MonoidCmd::Localize { m, x, bound } => {
            let base = load_monoid(&m)?;
            let x: MonoidElement = serde_json::from_str(&x)?;
            let loc = localize_at_element(&base, &x)?;
            let mut value = localized_value(&loc);
            if let LocalizedMonoid::Affine(l) = &loc {
                let certs = l.inverse_certificates(bound);
                value["is_group"] = json!(certs.is_some());
                value["inverse_certificates"] = json!(certs.map(|c| c
                    .into_iter()
                    .map(|(g, n, z)| json!({"generator": g, "n": n, "z": z}))
                    .collect::<Vec<_>>()));
            }
            Ok(Report::new(&value)?)
        }
        MonoidCmd::Locmono { m, bound } => {
            let v = is_locally_monogenic(&load_monoid(&m)?, bound);
            let status = match v {
                LocallyMonogenic::Yes(_) => 0,
                LocallyMonogenic::No(_) => 1,
                LocallyMonogenic::Unknown { .. } => 2,
            };
            let mut r = Report::new(&v)?;
            r.status = status;
            Ok(r)
        }
        MonoidCmd::Isolated(m) => {
            let v = is_zero_isolated(&load_monoid(&m)?);
            let negative = !v.isolated;
            Ok(Report::new(&v)?.text(v.isolated.to_string()).negative_if(negative))
        }
        MonoidCmd::Fiber { input, bound } => {
            #[derive(serde::Deserialize)]
            struct Square {
                a: CommMonoid,
                f: MonoidHom,
                b: CommMonoid,
                g: MonoidHom,
                c: CommMonoid,
            }
            let sq: Square = read_json(&input)?;
            sq.f.validate(&sq.a, &sq.c, bound)?;
            sq.g.validate(&sq.b, &sq.c, bound)?;
            let fp = fiber_product((&sq.a, &sq.f), (&sq.b, &sq.g), bound)?;
            Ok(Report::new(&fp)?)
        }
        MonoidCmd::Pullback { m, p, bound } => {
            let r = pi0_pullback_check(&load_monoid(&m)?, u64::from(p), bound)?;
            let negative = !r.passed();
            Ok(Report::new(&r)?
                .text(format!("passed: {}", r.passed()))
                .negative_if(negative))
        }
        MonoidCmd::Catalog { size } => {
            let list = catalog(size);
            Ok(
                Report::new(&json!({"size": size, "count": list.len(), "monoids": list}))?
                    .text(format!("{} monoids of size {size}", list.len())),
            )
        }
    }
}

fn structure(cmd: StructureCmd) -> Result<Report> {
    match cmd {
        StructureCmd::Verify { g, rho } => {
            let group = finite_group(&g)?;
            let rho: RhoCandidate = read_json(&rho)?;
            let v = verify_rho_group(&group, &rho)?;
            let negative = !v.conditions_hold;
            Ok(Report::new(&v)?.negative_if(negative))
        }
        StructureCmd::Search { g, p } => {
            let found = search_rho(&finite_group(&g)?, p)?;
            let text = format!("{} candidate(s)", found.len());
            Ok(Report::new(&found)?.text(text))
        }
        StructureCmd::Canonical { g, p } => Ok(Report::new(&canonical_rho(&finite_group(&g)?, p)?)?),
        StructureCmd::Exhaust { p } => {
            let rows = rho_exhaustion(p)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r).map_err(csv_error)?;
            }
            let table = String::from_utf8(w.into_inner().map_err(|e| csv_error(e.into_error().into()))?)
                .expect("csv output is UTF-8");
            let negative = !rows.iter().all(|r| r.passed());
            Ok(Report::new(&rows)?.csv(table).negative_if(negative))
        }
        StructureCmd::Action {
            input,
            rho,
            equivariant,
        } => {
            #[derive(serde::Deserialize)]
            struct ModuleData {
                group: FiniteGroup,
                module: FiniteGroup,
                action: Vec<Vec<usize>>,
            }
            let d: ModuleData = read_json(&input)?;
            let m = GModule::new(d.group, d.module, d.action)?;
            let rho: RhoCandidate = read_json(&rho)?;
            let v = verify_rho_action(&m, &rho, equivariant)?;
            let negative = !v.conditions_hold;
            Ok(Report::new(&v)?.negative_if(negative))
        }
    }
}

fn load_bialgebra(h: &BialgebraInput) -> Result<GradedBialgebra> {
    GradedBialgebra::from_json(&read(&h.input)?)
}

fn fpbialg(cmd: FpbialgCmd) -> Result<Report> {
    match cmd {
        FpbialgCmd::Check(h) => {
            let r = check_axioms(&load_bialgebra(&h)?);
            let negative = !r.passed;
            Ok(Report::new(&r)?
                .text(format!("axioms hold: {}", r.passed))
                .negative_if(negative))
        }
        FpbialgCmd::Grouplikes(h) => {
            let h = load_bialgebra(&h)?;
            let r = grouplikes(&h);
            let names: Vec<String> = r.grouplikes.iter().map(|g| h.format_element(g)).collect();
            Ok(Report::new(&json!({"grouplikes": names, "exhaustive": r.exhaustive}))?.text(names.join(", ")))
        }
        FpbialgCmd::Frobenius { h, element, m } => {
            let h = load_bialgebra(&h)?;
            let x = h.parse_element(&element)?;
            let value = frobenius(&h, &x, m).map(|v| h.format_element(&v));
            let alpha = is_weakly_primitive(&h, &x)?;
            let verdict = match alpha {
                Some(_) => Some(verify_phi_formula(&h, &x, m)?),
                None => None,
            };
            let negative = verdict.as_ref().is_some_and(|v| !v.holds);
            let mut value = json!({
                "element": h.format_element(&x),
                "m": m,
                "frobenius": value.as_ref().ok(),
                "frobenius_error": value.as_ref().err().map(ToString::to_string),
                "weakly_primitive": verdict.is_some(),
                "formula": verdict,
            });
            if let Some(v) = &verdict {
                value["formula"]["alpha"] = json!(h.format_element(&v.alpha));
            }
            Ok(Report::new(&value)?.negative_if(negative))
        }
        FpbialgCmd::Nilpotence(h) => {
            let r = frobenius_nilpotence(&load_bialgebra(&h)?)?;
            let negative = !r.all_vanish();
            Ok(Report::new(&r)?
                .text(format!("all vanish: {}", r.all_vanish()))
                .negative_if(negative))
        }
        FpbialgCmd::Colimit(h) => {
            let r = colimit_along_frobenius(&load_bialgebra(&h)?)?;
            Ok(Report::new(&r)?.text(format!("dims by degree {:?}", r.dims())))
        }
    }
}

fn rows_csv(rows: &[HomologyRow]) -> Result<String> {
    homology_csv(rows)
}

fn homology(cmd: HomologyCmd) -> Result<Report> {
    match cmd {
        HomologyCmd::Cyclic { q, d, p } => {
            let p = p.unwrap_or(q as u32);
            let basis = HomologyBasis::compute(&FiniteGroup::cyclic(q), p, d)?;
            let oracle = periodic_homology_dims(q, p, d)?;
            let rows = homology_rows(&format!("Z/{q}"), &basis);
            let agree = basis.dims() == oracle;
            let value =
                json!({"group": format!("Z/{q}"), "p": p, "bar": basis.dims(), "periodic": oracle, "agree": agree});
            Ok(Report::new(&value)?.csv(rows_csv(&rows)?).negative_if(!agree))
        }
        HomologyCmd::Symmetric { n, d, p } => {
            let g = pperfect::group::symmetric(n);
            let basis = HomologyBasis::compute(&g, p, d)?;
            let rows = homology_rows(&format!("S{n}"), &basis);
            Ok(Report::new(&rows)?.csv(rows_csv(&rows)?))
        }
        HomologyCmd::Assemble(a) => {
            let h = a.build()?;
            let value: Value = serde_json::from_str(&h.to_json())?;
            Ok(Report::new(&value)?)
        }
    }
}

fn pipeline(cmd: PipelineCmd) -> Result<Report> {
    match cmd {
        PipelineCmd::FinFrobenius(a) => {
            let h = a.build()?;
            let axioms = check_axioms(&h);
            let mut classes = Vec::new();
            let mut all_ok = axioms.passed;
            for i in 0..h.dim() {
                if h.degree(i) == 0 {
                    continue;
                }
                let x = std::iter::once((i, 1)).collect();
                let alpha = is_weakly_primitive(&h, &x)?;
                let phi = match &alpha {
                    Some(_) => Some(verify_phi_formula(&h, &x, a.p as usize)?),
                    None => None,
                };
                let ok = phi.as_ref().is_some_and(|v| v.holds);
                all_ok &= ok;
                classes.push(json!({
                    "name": h.basis()[i].name,
                    "degree": h.degree(i),
                    "weight": h.weight(i),
                    "alpha": alpha.as_ref().map(|a| h.format_element(a)),
                    "phi_formula": phi,
                }));
            }
            let nilpotence = frobenius_nilpotence(&h)?;
            let colimit = colimit_along_frobenius(&h)?;
            all_ok &= nilpotence.all_vanish();
            let value = json!({
                "N": h.window(), "D": h.top_degree(), "p": h.p(), "dim": h.dim(),
                "axioms": axioms,
                "classes": classes,
                "nilpotence": nilpotence,
                "colimit": colimit,
            });
            let text = format!(
                "dim {}, axioms {}, nilpotent {}, colimit dims {:?}",
                h.dim(),
                axioms.passed,
                nilpotence.all_vanish(),
                colimit.dims()
            );
            Ok(Report::new(&value)?.text(text).negative_if(!all_ok))
        }
        PipelineCmd::Weights(a) => {
            let h = a.build()?;
            let colimit = colimit_along_frobenius(&h)?;
            let nat = CommMonoid::Affine(AffineMonoid::free(1));
            let LocalizedMonoid::Affine(loc) = invert_p(&nat, u64::from(h.p()))? else {
                unreachable!("affine input localizes affinely")
            };
            let classes = &colimit.degrees[0].classes;
            let fractions: Vec<(Vec<i64>, u32)> = classes.iter().map(|c| (vec![c.weight as i64], 0)).collect();
            let distinct = fractions
                .iter()
                .enumerate()
                .all(|(i, x)| fractions[i + 1..].iter().all(|y| !loc.equal(x, y)));
            let mut weights: Vec<usize> = classes.iter().map(|c| c.weight).collect();
            weights.sort_unstable();
            let onto = weights == (0..=colimit.window).collect::<Vec<_>>();
            let value = json!({
                "window": colimit.window,
                "classes": classes.iter().map(|c| json!({
                    "weight": c.weight,
                    "members": c.members.iter().map(|m| h.format_element(m)).collect::<Vec<_>>(),
                    "fraction": {"numerator": c.weight, "p_power": 0},
                })).collect::<Vec<_>>(),
                "distinct": distinct,
                "onto_window": onto,
            });
            Ok(Report::new(&value)?
                .text(format!(
                    "window {}: weights {weights:?}, bijective {}",
                    colimit.window,
                    distinct && onto
                ))
                .negative_if(!(distinct && onto)))
        }
    }
}

fn acceptance(only: Option<usize>, manifest: bool) -> Result<Report> {
    let all = criteria();
    let selected: Vec<_> = all.iter().filter(|c| only.is_none_or(|k| c.id == k)).collect();
    if manifest {
        let entries: Vec<Value> = selected
            .iter()
            .map(|c| json!({"id": c.id, "name": c.name, "command": c.command, "budget_ms": c.budget.as_millis()}))
            .collect();
        return Report::new(&entries);
    }
    let results: Vec<CriterionResult> = selected.iter().map(|c| c.run()).collect();
    let text = results.iter().map(CriterionResult::line).collect::<Vec<_>>().join("\n");
    let negative = results.iter().any(|r| !r.passed);
    Ok(Report::new(&results)?.text(text).negative_if(negative))
}

fn emit(format: Format, out: Option<&Path>, report: &Report) -> Result<()> {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&report.value)?,
        Format::Text => report
            .text
            .clone()
            .unwrap_or_else(|| serde_json::to_string_pretty(&report.value).expect("values serialize")),
        Format::Csv => report
            .csv
            .clone()
            .ok_or_else(|| Error::Malformed("csv output is not available for this command".into()))?,
    };
    let body = if body.ends_with('\n') { body } else { body + "\n" };
    match out {
        Some(path) => fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn diagnostic(kind: &str, message: &str, code: u8) -> ExitCode {
    eprintln!("{}", json!({"error": kind, "message": message, "exit": code}));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return diagnostic("usage", e.to_string().trim(), 3);
        }
    };
    match run(cli.command).and_then(|r| emit(cli.format, cli.out.as_deref(), &r).map(|()| r.status)) {
        Ok(status) => ExitCode::from(status),
        Err(e) => diagnostic(e.kind(), &e.to_string(), e.exit_code() as u8),
    }
}
