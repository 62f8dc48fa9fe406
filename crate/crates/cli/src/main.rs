//! `qdouble`: command-line front end for the `qdouble` library.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdouble::characters::character_table;
use qdouble::cocycles::TwoCocycle;
use qdouble::condensation::{condense, equivalence_check, verify_cf_symmetry, Fold, WallSpec};
use qdouble::groups::{direct_product, Group, Subgroup};
use qdouble::io::{self, CocycleFile};
use qdouble::lattice::{build_patch, lattice_boundary_character, relation_suite, RelationCheck, SuiteOptions};
use qdouble::modular::{compose, is_modular_invariant, permutation_matrix, search_transposition_invariants, transposition, ModularData};
use qdouble::quantum_double::{fusion_verlinde, QuantumDouble};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "qdouble", version, about = "Anyon data of quantum doubles D(G) of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Threshold for lattice relation residuals and modular-invariant checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Seed for random states and samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Render snapped values as exact sums of roots of unity.
    #[arg(long, global = true)]
    snap: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct GroupArg {
    /// `builtin:S3`, `affine:q=4`, `affine:dickson9`, `product:A×B`, or a group JSON file.
    #[arg(long)]
    group: String,
}

#[derive(Args, Clone)]
struct BoundaryArgs {
    /// `whole`, `trivial`, `gen:i,j`, `members:i,j`, `centralizer:a`, or a subgroup JSON file.
    #[arg(long, default_value = "whole")]
    subgroup: String,
    /// Cocycle JSON file; the trivial cocycle when absent.
    #[arg(long)]
    cocycle: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Group structure.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Character table.
    Chartable(GroupArg),
    /// Anyons of D(G) in canonical order.
    Anyons(GroupArg),
    /// The S-matrix.
    Smatrix(GroupArg),
    /// The T-matrix diagonal.
    Tmatrix(GroupArg),
    /// Fusion rules from the Verlinde formula.
    Fusion(GroupArg),
    /// Anyons condensed at the boundary (K, φ).
    Condense {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        boundary: BoundaryArgs,
    },
    /// Tunneling through a domain wall between G and G′.
    Tunnel {
        #[command(flatten)]
        group: GroupArg,
        /// The group on the right of the wall; defaults to `--group`.
        #[arg(long)]
        right: Option<String>,
        /// `diagonal`, `affine` (needs an `affine:` group), or a subgroup JSON file of G × G′.
        #[arg(long, default_value = "diagonal")]
        wall_u: String,
        /// Cocycle JSON file on the wall subgroup.
        #[arg(long)]
        cocycle: Option<String>,
    },
    /// Modular invariants.
    Modinv {
        #[command(subcommand)]
        command: ModinvCommand,
    },
    /// Verification reports.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// The lattice model on a small patch.
    Lattice {
        #[command(subcommand)]
        command: LatticeCommand,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order, classes and centralizers.
    Info(GroupArg),
}

#[derive(Subcommand)]
enum ModinvCommand {
    /// All transpositions of anyons that are modular invariants.
    Search(GroupArg),
    /// Check a permutation built from transpositions, optionally composed with charge conjugation.
    Check {
        #[command(flatten)]
        group: GroupArg,
        /// A transposition `X,Y` of anyon labels; repeatable.
        #[arg(long = "swap")]
        swaps: Vec<String>,
        /// Compose with charge conjugation J.
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The chargeon-fluxion symmetry for `H⁺ ⋊ H^×`.
    Cf {
        /// A prime power `q`, or `dickson9`.
        field: String,
    },
}

#[derive(Args, Clone)]
struct PatchArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long, default_value_t = 2)]
    width: usize,
    #[arg(long, default_value_t = 1)]
    height: usize,
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Run the operator relation suite.
    Verify {
        #[command(flatten)]
        patch: PatchArgs,
        /// Boundary subgroup; a bulk patch when absent.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long)]
        cocycle: Option<String>,
        #[arg(long, default_value_t = 16)]
        states: usize,
        #[arg(long, default_value_t = 32)]
        samples: usize,
    },
    /// The boundary character read off the ground state.
    Character {
        #[command(flatten)]
        patch: PatchArgs,
        #[command(flatten)]
        boundary: BoundaryArgs,
    },
}

/// Failure modes, mapped to exit codes 2 and 1.
enum Failure {
    Input(String),
    Assertion(String),
}

impl From<qdouble::Error> for Failure {
    fn from(e: qdouble::Error) -> Self {
        Failure::Assertion(e.to_string())
    }
}

type Run = Result<Output, Failure>;

struct Output {
    text: String,
    ok: bool,
}

fn input<T>(r: qdouble::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(e.to_string()))
}

fn emit<T: Serialize>(value: &T, fmt: Format, csv: impl FnOnce() -> Option<String>, ok: bool) -> Run {
    let text = match fmt {
        Format::Json => io::to_json(value),
        Format::Csv => csv().ok_or_else(|| Failure::Input("this report has no CSV form; use --format json".into()))?,
    };
    Ok(Output { text, ok })
}

fn csv_of<R: AsRef<[u8]>>(header: &[&str], rows: impl IntoIterator<Item = Vec<R>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}

fn load_group(spec: &str) -> Result<Group, Failure> {
    input(io::parse_group(spec))
}

fn load_boundary(g: &Group, b: &BoundaryArgs) -> Result<(Subgroup, TwoCocycle), Failure> {
    let k = input(io::parse_subgroup(g, &b.subgroup))?;
    let phi = match &b.cocycle {
        Some(path) => input(CocycleFile::read(path).and_then(|f| f.into_cocycle(g)))?,
        None => TwoCocycle::trivial(&k),
    };
    if phi.subgroup.members != k.members {
        return Err(Failure::Input("cocycle subgroup differs from --subgroup".into()));
    }
    Ok((k, phi))
}

#[derive(Serialize)]
struct ClassInfo {
    rep: usize,
    size: usize,
    element_order: usize,
    centralizer_order: usize,
}

#[derive(Serialize)]
struct GroupInfo {
    label: String,
    order: usize,
    abelian: bool,
    exponent: u64,
    classes: Vec<ClassInfo>,
}

fn group_info(g: &GroupArg, gl: &Global) -> Run {
    let g = load_group(&g.group)?;
    let cd = g.conjugacy();
    let classes: Vec<ClassInfo> = (0..cd.num_classes())
        .map(|c| ClassInfo {
            rep: cd.reps[c],
            size: cd.classes[c].len(),
            element_order: cd.element_orders[cd.reps[c]],
            centralizer_order: cd.centralizers[c].len(),
        })
        .collect();
    let info = GroupInfo { label: g.label().into(), order: g.order(), abelian: g.is_abelian(), exponent: io::exponent(&g), classes };
    let csv = || {
        Some(csv_of(
            &["rep", "size", "element_order", "centralizer_order"],
            info.classes.iter().map(|c| {
                vec![c.rep.to_string(), c.size.to_string(), c.element_order.to_string(), c.centralizer_order.to_string()]
            }),
        ))
    };
    emit(&info, gl.format, csv, true)
}

fn chartable(g: &GroupArg, gl: &Global) -> Run {
    let g = load_group(&g.group)?;
    let t = character_table(&g)?;
    let j = io::CharTableJson::new(&t, gl.snap);
    let csv = || {
        let header: Vec<String> = j.classes.iter().map(|c| format!("class{c}")).collect();
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        Some(csv_of(
            &header,
            j.rows.iter().enumerate().map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, &v)| j.exact.as_ref().and_then(|e| e[i][c].clone()).unwrap_or_else(|| io::format_complex(v)))
                    .collect::<Vec<_>>()
            }),
        ))
    };
    emit(&j, gl.format, csv, true)
}

fn double(g: &GroupArg) -> Result<QuantumDouble, Failure> {
    let g = load_group(&g.group)?;
    Ok(QuantumDouble::new(&g)?)
}

fn anyons(g: &GroupArg, gl: &Global) -> Run {
    let qd = double(g)?;
    let rows = io::anyon_rows(&qd);
    let csv = || {
        Some(csv_of(
            &["label", "class", "class_rep", "irrep", "dim", "kind", "twist"],
            rows.iter().map(|a| {
                vec![
                    a.label.clone(),
                    a.class.to_string(),
                    a.class_rep.to_string(),
                    a.irrep.to_string(),
                    a.dim.to_string(),
                    a.kind.clone(),
                    io::format_complex(a.twist),
                ]
            }),
        ))
    };
    emit(&rows, gl.format, csv, true)
}

fn smatrix(g: &GroupArg, gl: &Global) -> Run {
    let qd = double(g)?;
    let m = io::MatrixJson::s_matrix(&qd, &qd.s_matrix(), gl.snap);
    emit(&m, gl.format, || Some(m.to_csv()), true)
}

fn tmatrix(g: &GroupArg, gl: &Global) -> Run {
    let qd = double(g)?;
    let m = io::MatrixJson::t_vector(&qd, &qd.t_vector(), gl.snap);
    emit(&m, gl.format, || Some(m.to_csv()), true)
}

fn fusion(g: &GroupArg, gl: &Global) -> Run {
    let qd = double(g)?;
    let n = fusion_verlinde(&qd.s_matrix())?;
    let f = io::FusionJson::new(&qd, &n);
    emit(&f, gl.format, || Some(f.to_csv()), true)
}

fn condense_cmd(g: &GroupArg, b: &BoundaryArgs, gl: &Global) -> Run {
    let qd = double(g)?;
    let (k, phi) = load_boundary(&qd.group, b)?;
    let r = condense(&qd, &k, &phi)?;
    let j = io::CondenseJson::new(&qd, &k, &r);
    let csv = || Some(csv_of(&["anyon", "multiplicity"], j.multiplicities.iter().map(|(l, m)| vec![l.clone(), m.to_string()])));
    emit(&j, gl.format, csv, j.verdict.passed)
}

fn tunnel_cmd(g: &GroupArg, right: Option<&str>, wall_u: &str, cocycle: Option<&str>, gl: &Global) -> Run {
    let (left, right, wall) = if wall_u == "affine" {
        let ag = input(io::parse_affine(&g.group))?;
        if right.is_some_and(|r| r != g.group) {
            return Err(Failure::Input("--wall-u affine needs the same group on both sides".into()));
        }
        if cocycle.is_some() {
            return Err(Failure::Input("--wall-u affine carries its own cocycle".into()));
        }
        let wall = input(WallSpec::wall(&ag))?;
        (ag.group.clone(), ag.group, wall)
    } else {
        let left = load_group(&g.group)?;
        let right = match right {
            Some(r) => load_group(r)?,
            None => left.clone(),
        };
        let wall = if wall_u == "diagonal" {
            if right.order() != left.order() || right.rows() != left.rows() {
                return Err(Failure::Input("--wall-u diagonal needs the same group on both sides".into()));
            }
            WallSpec::diagonal(&left)
        } else {
            let gg = direct_product(&left, &right);
            let u = input(io::parse_subgroup(&gg, wall_u))?;
            let phi = match cocycle {
                Some(path) => input(CocycleFile::read(path).and_then(|f| f.into_cocycle(&gg)))?,
                None => TwoCocycle::trivial(&u),
            };
            input(WallSpec::new(u, phi))?
        };
        (left, right, wall)
    };
    let fold = Fold::new(&left, &right)?;
    let v = equivalence_check(&fold, &wall)?;
    let j = io::TunnelJson::new(&fold, &wall.u.members, &v);
    let csv = || {
        let mut header = vec![String::new()];
        header.extend(fold.right.labels());
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        Some(csv_of(
            &header,
            j.matrix.iter().enumerate().map(|(x, row)| {
                std::iter::once(fold.left.label(x)).chain(row.iter().map(i64::to_string)).collect::<Vec<_>>()
            }),
        ))
    };
    emit(&j, gl.format, csv, true)
}

fn modinv_search(g: &GroupArg, gl: &Global) -> Run {
    let qd = double(g)?;
    let hits = search_transposition_invariants(&qd, &ModularData::new(&qd));
    let j = io::ModinvSearchJson::new(&qd, &hits);
    let csv = || {
        Some(csv_of(
            &["x", "y", "kind_x", "kind_y", "s_residual"],
            j.pairs.iter().map(|h| vec![h.x.clone(), h.y.clone(), h.kinds[0].clone(), h.kinds[1].clone(), format!("{:e}", h.s_residual)]),
        ))
    };
    emit(&j, gl.format, csv, true)
}

#[derive(Serialize)]
struct CheckJson {
    group: String,
    permutation: indexmap::IndexMap<String, String>,
    #[serde(flatten)]
    verdict: io::InvariantJson,
}

fn modinv_check(g: &GroupArg, swaps: &[String], dual: bool, gl: &Global) -> Run {
    let qd = double(g)?;
    let n = qd.len();
    let mut perm: Vec<usize> = (0..n).collect();
    for s in swaps {
        let (x, y) = s.split_once(',').ok_or_else(|| Failure::Input(format!("--swap expects X,Y, got '{s}'")))?;
        let find = |l: &str| qd.find_label(l.trim()).ok_or_else(|| Failure::Input(format!("unknown anyon '{l}'")));
        perm = compose(&transposition(n, find(x)?, find(y)?), &perm);
    }
    if dual {
        perm = compose(&perm, &qd.dual_permutation());
    }
    let data = ModularData::new(&qd);
    let mut v = is_modular_invariant(&permutation_matrix(&perm), &data)?;
    v.invariant = v.s_residual < gl.tol && v.t_residual < gl.tol && v.non_negative && v.integral && v.vacuum;
    let j = CheckJson {
        group: qd.group.label().into(),
        permutation: perm.iter().enumerate().map(|(x, &y)| (qd.label(x), qd.label(y))).collect(),
        verdict: (&v).into(),
    };
    emit(&j, gl.format, || None, v.invariant)
}

fn verify_cf(field: &str, gl: &Global) -> Run {
    let h = input(io::parse_near_field(field))?;
    let ag = input(qdouble::groups::affine_group(&h))?;
    let labels = QuantumDouble::new(&ag.group)?.labels();
    let r = verify_cf_symmetry(&h)?;
    let j = io::CfJson::new(&r, &labels);
    emit(&j, gl.format, || None, r.passed)
}

#[derive(Serialize)]
struct LatticeJson {
    group: String,
    width: usize,
    height: usize,
    edges: usize,
    boundary: Option<Vec<usize>>,
    seed: u64,
    threshold: f64,
    relations: Vec<RelationCheck>,
    passed: bool,
}

fn lattice_verify(p: &PatchArgs, subgroup: Option<&str>, cocycle: Option<&str>, states: usize, samples: usize, gl: &Global) -> Run {
    let g = load_group(&p.group.group)?;
    let boundary = match subgroup {
        Some(s) => Some(load_boundary(&g, &BoundaryArgs { subgroup: s.into(), cocycle: cocycle.map(Into::into) })?),
        None if cocycle.is_some() => return Err(Failure::Input("--cocycle needs --subgroup".into())),
        None => None,
    };
    let members = boundary.as_ref().map(|(k, _)| k.members.clone());
    let patch = input(build_patch(&g, p.width, p.height, boundary))?;
    let opts = SuiteOptions { states, samples, seed: gl.seed, threshold: gl.tol };
    let relations = relation_suite(&patch, &patch.default_ribbon(), opts)?;
    let passed = relations.iter().all(|r| r.passed);
    let j = LatticeJson {
        group: g.label().into(),
        width: p.width,
        height: p.height,
        edges: patch.num_edges(),
        boundary: members,
        seed: gl.seed,
        threshold: gl.tol,
        relations,
        passed,
    };
    let csv = || {
        Some(csv_of(
            &["relation", "checks", "residual", "passed"],
            j.relations.iter().map(|r| vec![r.name.clone(), r.checks.to_string(), format!("{:e}", r.residual), r.passed.to_string()]),
        ))
    };
    emit(&j, gl.format, csv, passed)
}

fn lattice_character(p: &PatchArgs, b: &BoundaryArgs, gl: &Global) -> Run {
    let g = load_group(&p.group.group)?;
    let boundary = load_boundary(&g, b)?;
    let patch = input(build_patch(&g, p.width, p.height, Some(boundary)))?;
    let chi = lattice_boundary_character(&patch, &patch.default_ribbon(), gl.seed)?;
    emit(&io::DGJson::new(&chi), gl.format, || None, true)
}

fn dispatch(cli: &Cli) -> Run {
    let gl = &cli.global;
    if !(gl.tol > 0.0) {
        return Err(Failure::Input("--tol must be positive".into()));
    }
    match &cli.command {
        Command::Group { command: GroupCommand::Info(g) } => group_info(g, gl),
        Command::Chartable(g) => chartable(g, gl),
        Command::Anyons(g) => anyons(g, gl),
        Command::Smatrix(g) => smatrix(g, gl),
        Command::Tmatrix(g) => tmatrix(g, gl),
        Command::Fusion(g) => fusion(g, gl),
        Command::Condense { group, boundary } => condense_cmd(group, boundary, gl),
        Command::Tunnel { group, right, wall_u, cocycle } => tunnel_cmd(group, right.as_deref(), wall_u, cocycle.as_deref(), gl),
        Command::Modinv { command: ModinvCommand::Search(g) } => modinv_search(g, gl),
        Command::Modinv { command: ModinvCommand::Check { group, swaps, dual } } => modinv_check(group, swaps, *dual, gl),
        Command::Verify { command: VerifyCommand::Cf { field } } => verify_cf(field, gl),
        Command::Lattice { command: LatticeCommand::Verify { patch, subgroup, cocycle, states, samples } } => {
            lattice_verify(patch, subgroup.as_deref(), cocycle.as_deref(), *states, *samples, gl)
        }
        Command::Lattice { command: LatticeCommand::Character { patch, boundary } } => lattice_character(patch, boundary, gl),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Assertion(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
