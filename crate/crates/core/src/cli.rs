//! Command-line front end. Every command produces a [`CommandReport`] that
//! is rendered as JSON, TSV or aligned text.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bipartitions::build_phi;
use crate::diagrams::{
    adjacency_graph, admissible_moves, apply_move, class_label, class_representative,
    enumerate_orbits, even_exceptions, gamma_graph, m1_diagram_checks, monodromy_group,
    published_gamma_graphs, published_monodromy, vertex_orbits, DiagramError, GammaGraph, Move,
    Parity, ThetaDiagram, EVEN_CLASSES,
};
use crate::geometry::{
    complete_octad, config, count_ovals, hessian, hessian_by_interpolation, net_through,
    octad_signs, sign6, sign7, verify_octad, GeometryError, ProjPoint, DEFAULT_DEPTH,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "octad", version, about = "Real Cayley M-octads: diagrams, tables and geometry checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The S4-orbits of theta-diagrams.
    Orbits,
    /// Collision graphs, monodromy groups and orbit counts per even class.
    Tables,
    /// Adjacency graph of the even classes.
    Adjacency,
    /// Full report for one diagram given as 6 row-major bits.
    Diagram { bits: String },
    /// Geometry operations on a configuration file.
    Octad {
        #[command(subcommand)]
        op: OctadOp,
    },
    #[command(flatten)]
    Geometry(OctadOp),
    /// Fixed data of the two (M-1) diagrams.
    M1Check,
}

#[derive(Debug, Subcommand)]
pub enum OctadOp {
    /// Point-decidable checks on 8 points.
    Verify { file: String },
    /// Eighth base point of the net through 7 points.
    Complete { file: String },
    /// Net and Hessian quartic through the first 7 points.
    Hessian { file: String },
    /// Linking-number sign of 6, 7 or 8 points.
    Chirality { file: String },
    /// Heuristic count of real ovals of the Hessian.
    Ovals {
        file: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(title: &str, header: &[&str]) -> Self {
        Table {
            title: title.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub warnings: Vec<String>,
    pub status: String,
    pub exit_status: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip)]
    pub tables: Vec<Table>,
}

impl CommandReport {
    fn new(command: &str) -> Self {
        CommandReport {
            command: command.into(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            warnings: Vec::new(),
            status: "ok".into(),
            exit_status: 0,
            error: None,
            tables: Vec::new(),
        }
    }

    fn fail(&mut self, code: &str, message: String) {
        self.status = "error".into();
        self.exit_status = 1;
        self.error = Some(ErrorInfo {
            code: code.into(),
            message,
        });
    }
}

/// What a finished invocation writes and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Geometry(GeometryError),
    Diagram(DiagramError),
    Io(String),
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Geometry(e)
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        Failure::Diagram(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Geometry(e) => e.code(),
            Failure::Diagram(DiagramError::OddDiagram(_)) => "odd-diagram",
            Failure::Diagram(DiagramError::MoveNotAllowed(_)) => "move-not-allowed",
            Failure::Diagram(_) => "bad-diagram",
            Failure::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Geometry(e) => e.to_string(),
            Failure::Diagram(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let report = execute(&cli.command);
    render(&report, cli.format)
}

pub fn execute(command: &Command) -> CommandReport {
    let (name, result) = match command {
        Command::Orbits => ("orbits", orbits()),
        Command::Tables => ("tables", tables()),
        Command::Adjacency => ("adjacency", adjacency()),
        Command::Diagram { bits } => ("diagram", diagram(bits)),
        Command::Octad { op } | Command::Geometry(op) => (op_name(op), octad(op)),
        Command::M1Check => ("m1-check", m1_check()),
    };
    match result {
        Ok(mut r) => {
            r.command = name.into();
            r
        }
        Err((mut r, f)) => {
            r.command = name.into();
            r.fail(f.code(), f.message());
            r
        }
    }
}

fn op_name(op: &OctadOp) -> &'static str {
    match op {
        OctadOp::Verify { .. } => "octad verify",
        OctadOp::Complete { .. } => "octad complete",
        OctadOp::Hessian { .. } => "octad hessian",
        OctadOp::Chirality { .. } => "octad chirality",
        OctadOp::Ovals { .. } => "octad ovals",
    }
}

type Outcomeish = Result<CommandReport, (CommandReport, Failure)>;

fn pair(p: (u8, u8)) -> String {
    format!("O{}{}", p.0, p.1)
}

fn exception_warning(exceptions: &[(u8, u8)], odd: &[(u8, u8)]) -> String {
    let list = |v: &[(u8, u8)]| {
        v.iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "computed even exception set in {{0,2,4}}x{{0,3,4}}: {{{}}}; (2,4) is realized by an even orbit and also by an odd orbit (odd classes: {}), so a statement naming (2,4) as the even exception disagrees with this enumeration",
        list(exceptions),
        list(odd)
    )
}

fn orbits() -> Outcomeish {
    let mut r = CommandReport::new("orbits");
    let orbits = enumerate_orbits();
    let mut t = Table::new("orbits", &["representative", "size", "alpha", "beta", "parity", "class"]);
    for o in &orbits {
        t.push([
            o.representative.clone(),
            o.size.to_string(),
            o.label.alpha.to_string(),
            o.label.beta.to_string(),
            parity_str(o.label.parity).into(),
            o.label.name(),
        ]);
    }
    let exceptions = even_exceptions(&orbits);
    let odd: Vec<(u8, u8)> = orbits
        .iter()
        .filter(|o| o.label.parity == Parity::Odd)
        .map(|o| (o.label.alpha, o.label.beta))
        .collect();
    let sum = |p: Parity| -> usize {
        orbits
            .iter()
            .filter(|o| o.label.parity == p)
            .map(|o| o.size)
            .sum()
    };
    r.results = json!({
        "orbits": orbits.iter().map(|o| json!({
            "representative": o.representative,
            "size": o.size,
            "alpha": o.label.alpha,
            "beta": o.label.beta,
            "parity": parity_str(o.label.parity),
            "class": o.label.name(),
        })).collect::<Vec<_>>(),
        "orbit_count": orbits.len(),
        "even_diagrams": sum(Parity::Even),
        "odd_diagrams": sum(Parity::Odd),
        "even_exceptions": exceptions.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
    });
    r.warnings.push(exception_warning(&exceptions, &odd));
    r.tables.push(t);
    Ok(r)
}

fn parity_str(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn gamma_json(g: &GammaGraph) -> Value {
    json!(g
        .edges
        .iter()
        .map(|e| json!([e.u, e.v, e.tag.symbol()]))
        .collect::<Vec<_>>())
}

fn computed_class_data(label: (u8, u8)) -> Result<(GammaGraph, String, usize, usize), Failure> {
    let d = class_representative(label)
        .ok_or_else(|| Failure::Io(format!("no even orbit for {label:?}")))?;
    let phi = build_phi(d.quadratic()).map_err(|e| Failure::Diagram(e.into()))?;
    let g = gamma_graph(&d, &phi)?;
    let m = monodromy_group(&d, &phi)?;
    let orbits = vertex_orbits(&d, &phi)?;
    Ok((g, m.name.to_string(), m.order(), orbits))
}

fn tables() -> Outcomeish {
    let mut r = CommandReport::new("tables");
    let published = published_gamma_graphs();
    let published_groups = published_monodromy();
    let mut t1 = Table::new("collision graphs", &["class", "edges", "published", "isomorphic"]);
    let mut t2 = Table::new("monodromy groups", &["class", "group", "order", "published"]);
    let mut t3 = Table::new("vertex orbits", &["class", "orbits", "published"]);
    let mut rows = Vec::new();
    let mut total = 0;
    let mut mismatches = Vec::new();
    for label in EVEN_CLASSES {
        let key = (label.alpha, label.beta);
        let (g, group, order, orbits) = match computed_class_data(key) {
            Ok(v) => v,
            Err(f) => return Err((r, f)),
        };
        let pg = &published[&key];
        let (pgroup, porbits) = published_groups[&key];
        let iso = g.is_isomorphic(pg);
        if !iso {
            mismatches.push(format!("collision graph of {} differs from the transcription", pair(key)));
        }
        if group != pgroup.as_str() || orbits != porbits {
            mismatches.push(format!("monodromy data of {} differs from the transcription", pair(key)));
        }
        total += orbits;
        t1.push([pair(key), g.describe(), pg.describe(), iso.to_string()]);
        t2.push([pair(key), group.clone(), order.to_string(), pgroup.to_string()]);
        t3.push([pair(key), orbits.to_string(), porbits.to_string()]);
        rows.push(json!({
            "class": pair(key),
            "alpha": key.0,
            "beta": key.1,
            "gamma": gamma_json(&g),
            "gamma_published": gamma_json(pg),
            "gamma_isomorphic": iso,
            "group": group,
            "group_order": order,
            "group_published": pgroup.as_str(),
            "vertex_orbits": orbits,
            "vertex_orbits_published": porbits,
        }));
    }
    t3.push(["total".into(), total.to_string(), String::new()]);
    r.results = json!({ "classes": rows, "total_orbits": total });
    r.warnings.extend(mismatches);
    r.tables = vec![t1, t2, t3];
    Ok(r)
}

fn adjacency() -> Outcomeish {
    let mut r = CommandReport::new("adjacency");
    let g = adjacency_graph();
    let mut t = Table::new("adjacency", &["from", "to"]);
    for &(a, b) in &g.edges {
        t.push([pair(a), pair(b)]);
    }
    for &a in &g.self_loops {
        t.push([pair(a), pair(a)]);
    }
    r.results = json!({
        "vertices": g.vertices.iter().map(|l| l.name()).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|&(a, b)| json!([pair(a), pair(b)])).collect::<Vec<_>>(),
        "self_loops": g.self_loops.iter().map(|&a| pair(a)).collect::<Vec<_>>(),
    });
    r.tables.push(t);
    Ok(r)
}

fn move_name(m: &Move) -> String {
    match m {
        Move::BlackEdge(i, j) => format!("black-edge b{i}{j}"),
        Move::BlackVertex(i) => format!("black-vertex a{i}"),
    }
}

fn diagram(bits: &str) -> Outcomeish {
    let mut r = CommandReport::new("diagram");
    r.inputs.insert("bits".into(), json!(bits));
    let d = match ThetaDiagram::parse_bits(bits) {
        Ok(d) => d,
        Err(e) => return Err((r, e.into())),
    };
    let label = class_label(&d);
    let mut t = Table::new("diagram", &["field", "value"]);
    t.push(["bits".into(), d.bit_string()]);
    t.push(["class".into(), label.name()]);
    t.push(["parity".into(), parity_str(label.parity).into()]);
    let mut results = json!({
        "bits": d.bit_string(),
        "matrix": d.matrix(),
        "class": label.name(),
        "alpha": label.alpha,
        "beta": label.beta,
        "parity": parity_str(label.parity),
        "oval_colors": d.oval_colors(),
        "bridge_colors": d.bridge_colors(),
    });
    if label.parity == Parity::Odd {
        r.warnings.push(
            "odd diagram: moves, collision graph and monodromy are defined for even diagrams only"
                .into(),
        );
    } else {
        let mut moves = Vec::new();
        for m in admissible_moves(&d) {
            let e = match apply_move(&d, m) {
                Ok(e) => e,
                Err(err) => return Err((r, err.into())),
            };
            t.push([move_name(&m), format!("{} {}", e.bit_string(), class_label(&e).name())]);
            moves.push(json!({
                "move": move_name(&m),
                "result": e.bit_string(),
                "class": class_label(&e).name(),
            }));
        }
        let phi = match build_phi(d.quadratic()) {
            Ok(p) => p,
            Err(e) => return Err((r, Failure::Diagram(e.into()))),
        };
        let (g, m, orbits) = match (|| -> Result<_, DiagramError> {
            Ok((
                gamma_graph(&d, &phi)?,
                monodromy_group(&d, &phi)?,
                vertex_orbits(&d, &phi)?,
            ))
        })() {
            Ok(v) => v,
            Err(e) => return Err((r, e.into())),
        };
        t.push(["gamma".into(), g.describe()]);
        t.push(["monodromy".into(), format!("{} (order {})", m.name, m.order())]);
        t.push(["vertex orbits".into(), orbits.to_string()]);
        results["moves"] = json!(moves);
        results["gamma"] = gamma_json(&g);
        results["monodromy"] = json!({
            "group": m.name.as_str(),
            "order": m.order(),
            "vertex_orbits": orbits,
        });
    }
    r.results = results;
    r.tables.push(t);
    Ok(r)
}

fn read_points(r: &mut CommandReport, file: &str, counts: &[usize]) -> Result<Vec<ProjPoint>, Failure> {
    r.inputs.insert("file".into(), json!(file));
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Io(format!("{file}: {e}")))?;
    let pts = config::parse_exact(&text, counts)?;
    r.inputs.insert("points".into(), json!(pts));
    Ok(pts)
}

fn point_table(title: &str, pts: &[ProjPoint]) -> Table {
    let mut t = Table::new(title, &["index", "x0", "x1", "x2", "x3"]);
    for (i, p) in pts.iter().enumerate() {
        t.push(std::iter::once(i.to_string()).chain(p.coords().iter().map(|c| c.to_string())));
    }
    t
}

fn octad(op: &OctadOp) -> Outcomeish {
    let mut r = CommandReport::new(op_name(op));
    match octad_inner(op, &mut r) {
        Ok(()) => Ok(r),
        Err(f) => Err((r, f)),
    }
}

fn octad_inner(op: &OctadOp, r: &mut CommandReport) -> Result<(), Failure> {
    match op {
        OctadOp::Verify { file } => {
            let pts = read_points(r, file, &[8])?;
            let rep = verify_octad(&pts)?;
            let mut t = Table::new("verify", &["check", "value"]);
            t.push(["distinct".into(), rep.distinct.to_string()]);
            t.push(["net_rank".into(), rep.net_rank.to_string()]);
            t.push([
                "coplanar_quadruples".into(),
                rep.coplanar_quadruples
                    .iter()
                    .map(|q| format!("{}{}{}{}", q[0], q[1], q[2], q[3]))
                    .collect::<Vec<_>>()
                    .join(" "),
            ]);
            t.push(["classification".into(), rep.classification.to_string()]);
            r.results = json!(rep);
            r.warnings.push(
                "regular-candidate status does not certify a nonsingular Hessian or a zero-dimensional base locus".into(),
            );
            r.tables.push(t);
        }
        OctadOp::Complete { file } => {
            let pts = read_points(r, file, &[7])?;
            let p = complete_octad(&pts)?;
            let mut all = pts.clone();
            all.push(p.clone());
            r.results = json!({ "point": p, "octad": all });
            r.tables.push(point_table("octad", &all));
        }
        OctadOp::Hessian { file } => {
            let pts = read_points(r, file, &[7, 8])?;
            let net = net_through(&pts[..7])?;
            let h = hessian(&net);
            let agree = hessian_by_interpolation(&net) == h;
            let on_net = pts.iter().all(|p| net.contains(p));
            let mut t = Table::new("hessian", &["field", "value"]);
            for (i, g) in net.generators().iter().enumerate() {
                let rows: Vec<String> = g
                    .matrix()
                    .iter()
                    .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                t.push([format!("generator {i}"), rows.join("; ")]);
            }
            t.push(["hessian".into(), h.to_string()]);
            t.push(["interpolation_agrees".into(), agree.to_string()]);
            t.push(["all_points_on_net".into(), on_net.to_string()]);
            r.results = json!({
                "net": net.generators(),
                "hessian": h,
                "hessian_text": h.to_string(),
                "interpolation_agrees": agree,
                "all_points_on_net": on_net,
            });
            r.tables.push(t);
        }
        OctadOp::Chirality { file } => {
            let pts = read_points(r, file, &[6, 7, 8])?;
            let mut t = Table::new("chirality", &["field", "value"]);
            match pts.len() {
                8 => {
                    let s = octad_signs(&pts)?;
                    t.push(["sign".into(), s.sign.to_string()]);
                    t.push([
                        "per_point".into(),
                        s.per_point.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                    ]);
                    r.results = json!(s);
                }
                7 => {
                    let s = sign7(&pts)?;
                    t.push(["sign7".into(), s.to_string()]);
                    r.results = json!({ "sign7": s });
                }
                _ => {
                    let s = sign6(&pts)?;
                    t.push(["sign6".into(), s.to_string()]);
                    r.results = json!({ "sign6": s });
                }
            }
            r.warnings.push(
                "the absolute sign depends on the orientation convention of the coordinates; only relative statements are convention-free".into(),
            );
            r.tables.push(t);
        }
        OctadOp::Ovals { file, depth } => {
            r.inputs.insert("depth".into(), json!(depth));
            let pts = read_points(r, file, &[7, 8])?;
            let net = net_through(&pts[..7])?;
            let h = hessian(&net);
            let c = count_ovals(&h, *depth);
            let mut t = Table::new("ovals", &["count", "depth", "stabilized"]);
            t.push([c.count.to_string(), c.depth.to_string(), c.stabilized.to_string()]);
            r.results = json!({ "hessian": h, "ovals": c });
            r.warnings
                .push("oval counts come from grid sampling and are not certified".into());
            if !c.stabilized {
                r.warnings
                    .push(format!("count did not stabilize between depths {} and {}", c.depth - 1, c.depth));
            }
            r.tables.push(t);
        }
    }
    Ok(())
}

fn m1_check() -> Outcomeish {
    let mut r = CommandReport::new("m1-check");
    let checks = m1_diagram_checks();
    let mut t = Table::new(
        "m1",
        &["diagram", "opposite_bridge_colors", "symmetry_order", "group", "gamma", "gamma_matches"],
    );
    for c in &checks {
        t.push([
            c.name.clone(),
            c.opposite_bridge_colors.to_string(),
            c.symmetry_order.to_string(),
            c.symmetry_group.to_string(),
            c.gamma.as_ref().map_or("none".into(), |g| g.describe()),
            c.gamma_matches_published.to_string(),
        ]);
        if !c.gamma_matches_published {
            r.warnings
                .push(format!("collision graph of {} differs from the transcription", c.name));
        }
    }
    r.results = json!(checks);
    r.tables.push(t);
    Ok(r)
}

fn render_text(report: &CommandReport) -> String {
    let mut out = String::new();
    for (k, t) in report.tables.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{}", t.title);
        let cols = t.header.len();
        let mut width = vec![0usize; cols];
        for row in std::iter::once(&t.header).chain(&t.rows) {
            for (i, cell) in row.iter().enumerate() {
                width[i] = width[i].max(cell.chars().count());
            }
        }
        for row in std::iter::once(&t.header).chain(&t.rows) {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{:<w$}", c, w = width[i]))
                .collect();
            let _ = writeln!(out, "  {}", line.join("  ").trim_end());
        }
    }
    out
}

fn render_tsv(report: &CommandReport) -> String {
    let mut out = String::new();
    for (k, t) in report.tables.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        if report.tables.len() > 1 {
            let _ = writeln!(out, "# {}", t.title);
        }
        let _ = writeln!(out, "{}", t.header.join("\t"));
        for row in &t.rows {
            let _ = writeln!(out, "{}", row.join("\t"));
        }
    }
    out
}

pub fn render(report: &CommandReport, format: Format) -> Outcome {
    let mut stderr = String::new();
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Tsv | Format::Text => {
            for w in &report.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            if let Some(e) = &report.error {
                let _ = writeln!(stderr, "error[{}]: {}", e.code, e.message);
            }
            if format == Format::Tsv {
                render_tsv(report)
            } else {
                render_text(report)
            }
        }
    };
    Outcome {
        stdout,
        stderr,
        code: report.exit_status,
    }
}
