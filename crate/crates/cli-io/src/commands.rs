use crate::corpus::Corpus;
use crate::render::{render, Format, Overlay};
use crate::suite::{boundary_filtration, run_all, run_criterion, skew_comparison, skew_end_dims};
use crate::{Command, CorpusAction, LabelMethod, RenderFormat, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use cm_modules::{build_t, hom_space, induce, is_isomorphic, rank_one, verify_presentation, Report as Certificate};
use labeling::{check_labels, orbifold_labels_cover, orbifold_labels_direct, postnikov_labels, LabelClass};
use orbifold_ops::{quotient, sym_d, OrbifoldDiagram};
use path_algebra::{frozen_jacobian, preprojective_quotient, preprojective_quotient_g, Presentation};
use quiver_potential::{qp_of_orbifold, qp_of_postnikov, Qp, Site, VertexLabel};
use serde_json::{json, Value};
use std::fmt::{self, Write};
use strand_map::osd::{parse_osd, serialize_osd, Kind, OsdDocument};
use strand_map::{check_grassmannian, validate_postnikov, StrandDiagram, StrandMap};

/// A finished command: text for standard output, the same content as JSON,
/// and the exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn new(text: String, json: Value, ok: bool) -> Report {
        Report { text, json, code: if ok { EXIT_OK } else { EXIT_INVALID } }
    }
}

/// Why a command could not produce a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable input or an argument that does not fit the input.
    Usage(String),
    /// Input that does not describe a valid object.
    Invalid(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid(_) => EXIT_INVALID,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) => f.write_str(m),
        }
    }
}

fn invalid(file: &str) -> impl Fn(&dyn fmt::Display) -> CliError + '_ {
    move |e| CliError::Invalid(format!("{file}: {e}"))
}

/// A parsed input file.
enum Input {
    Postnikov(StrandDiagram),
    Orbifold(OrbifoldDiagram),
}

fn load(corpus: &Corpus, file: &str) -> Result<(OsdDocument, Input), CliError> {
    let text = corpus.resolve(file).map_err(|e| CliError::Usage(format!("{file}: {e}")))?;
    let doc = parse_osd(&text).map_err(|e| invalid(file)(&e))?;
    let input = match doc.kind {
        Kind::Postnikov => Input::Postnikov(doc.diagram.clone()),
        Kind::Orbifold => Input::Orbifold(OrbifoldDiagram::from_osd(&doc).map_err(|e| invalid(file)(&e))?),
    };
    Ok((doc, input))
}

fn orbifold_only(corpus: &Corpus, file: &str) -> Result<OrbifoldDiagram, CliError> {
    match load(corpus, file)?.1 {
        Input::Orbifold(o) => Ok(o),
        Input::Postnikov(_) => Err(CliError::Usage(format!("{file}: expects an orbifold diagram"))),
    }
}

fn qp_of(input: &Input, zeta: i64, file: &str) -> Result<Qp, CliError> {
    match input {
        Input::Postnikov(d) => qp_of_postnikov(d),
        Input::Orbifold(o) => qp_of_orbifold(o, zeta),
    }
    .map_err(|e| invalid(file)(&e))
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn dims_line(name: &str, dims: &[usize]) -> String {
    format!("{name}\t{}\n", list(dims))
}

pub fn execute(command: &Command, corpus: &Corpus) -> Result<Report, CliError> {
    match command {
        Command::Validate { file } => validate(corpus, file),
        Command::Winding { order, file } => winding(corpus, file, *order),
        Command::Cover { d, file } => cover(corpus, file, *d),
        Command::Quotient { order, file } => quotient_cmd(corpus, file, *order),
        Command::Labels { method, file } => labels(corpus, file, *method),
        Command::Qp { zeta, file } => qp_cmd(corpus, file, *zeta),
        Command::Jacobian { maxdeg, file } => jacobian(corpus, file, *maxdeg),
        Command::Boundary { jmax, file } => boundary(corpus, file, *jmax),
        Command::Skew { order, maxdeg, file } => skew(corpus, file, *order, *maxdeg),
        Command::Modules { truncation, file } => modules(corpus, file, *truncation),
        Command::VerifyMain { m, truncation, flip, file } => verify(corpus, file, *m, *truncation, *flip),
        Command::Render { format, quiver, file } => render_cmd(corpus, file, *format, *quiver),
        Command::Corpus { action: CorpusAction::List } => corpus_list(corpus),
        Command::Corpus { action: CorpusAction::Run { criterion } } => corpus_run(corpus, *criterion),
    }
}

fn validate(corpus: &Corpus, file: &str) -> Result<Report, CliError> {
    let (_, input) = load(corpus, file)?;
    let mut text = String::new();
    match input {
        Input::Postnikov(d) => {
            let report = validate_postnikov(&d);
            let mut conditions = serde_json::Map::new();
            for (c, ok) in report.verdicts() {
                let _ = writeln!(text, "condition {c}\t{}", if ok { "ok" } else { "fail" });
                conditions.insert(c.to_string(), json!(ok));
            }
            for v in &report.violations {
                let _ = writeln!(text, "violation\t({})\t{v:?}", v.condition());
            }
            let valid = report.is_valid();
            let _ = writeln!(text, "valid\t{valid}");
            let violations: Vec<String> = report.violations.iter().map(|v| format!("{v:?}")).collect();
            let json = json!({"file": file, "kind": "postnikov", "conditions": conditions, "violations": violations, "valid": valid});
            Ok(Report::new(text, json, valid))
        }
        Input::Orbifold(o) => {
            let weak = o.validate_weak();
            let (bound_ok, bound) = o.is_orbifold();
            for v in &weak {
                let _ = writeln!(text, "violation\t({})\t{v:?}", v.condition());
            }
            let _ = writeln!(text, "weak\t{}", weak.is_empty());
            let _ = writeln!(text, "order\t{}\nmax winding\t{bound}", o.order());
            let _ = writeln!(text, "valid\t{bound_ok}");
            let violations: Vec<String> = weak.iter().map(|v| format!("{v:?}")).collect();
            let json = json!({
                "file": file, "kind": "orbifold", "weak": weak.is_empty(), "violations": violations,
                "order": o.order(), "max_winding": bound, "valid": bound_ok,
            });
            Ok(Report::new(text, json, bound_ok))
        }
    }
}

fn winding(corpus: &Corpus, file: &str, order: Option<usize>) -> Result<Report, CliError> {
    let mut o = orbifold_only(corpus, file)?;
    if let Some(d) = order {
        o = o.with_order(d).map_err(|e| CliError::Usage(format!("{file}: {e}")))?;
    }
    let w = o.windings();
    let n = o.base().n_points();
    let mut text = String::from("strand\tS\n");
    let s: Vec<i64> = (0..n).map(|i| w.s(i)).collect();
    for (i, x) in s.iter().enumerate() {
        let _ = writeln!(text, "{}\t{x}", i + 1);
    }
    text.push_str("pair\tL\n");
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let _ = writeln!(text, "{},{}\t{}", x + 1, y + 1, w.l(x, y));
            pairs.push(json!({"strands": [x + 1, y + 1], "L": w.l(x, y)}));
        }
    }
    let (ok, bound) = o.is_orbifold();
    let _ = writeln!(text, "max\t{bound}\norder\t{}\norbifold\t{ok}", o.order());
    let json = json!({"file": file, "S": s, "L": pairs, "max": bound, "order": o.order(), "orbifold": ok});
    Ok(Report::new(text, json, ok))
}

fn cover(corpus: &Corpus, file: &str, d: usize) -> Result<Report, CliError> {
    let o = orbifold_only(corpus, file)?;
    if d < 2 {
        return Err(CliError::Usage(format!("cover order {d} must be at least 2")));
    }
    let c = sym_d(&o, d);
    let report = validate_postnikov(&c.diagram);
    let osd = serialize_osd(&OsdDocument::postnikov(c.diagram.clone()));
    let mut text = String::new();
    let mut conditions = serde_json::Map::new();
    for (k, ok) in report.verdicts() {
        let _ = writeln!(text, "# condition {k}: {}", if ok { "ok" } else { "fail" });
        conditions.insert(k.to_string(), json!(ok));
    }
    text.push_str(&osd);
    let json = json!({"file": file, "d": d, "osd": osd, "conditions": conditions, "valid": report.is_valid()});
    Ok(Report::new(text, json, report.is_valid()))
}

fn quotient_cmd(corpus: &Corpus, file: &str, order: usize) -> Result<Report, CliError> {
    let d = match load(corpus, file)?.1 {
        Input::Postnikov(d) => d,
        Input::Orbifold(_) => return Err(CliError::Usage(format!("{file}: expects a Postnikov diagram"))),
    };
    let q = quotient(&d, order).map_err(|e| invalid(file)(&e))?;
    let osd = serialize_osd(&q.to_osd());
    let json = json!({"file": file, "order": order, "osd": osd});
    Ok(Report::new(osd, json, true))
}

fn labels(corpus: &Corpus, file: &str, method: LabelMethod) -> Result<Report, CliError> {
    let o = match load(corpus, file)?.1 {
        Input::Postnikov(d) => {
            let l = postnikov_labels(&d).map_err(|e| invalid(file)(&e))?;
            let mut text = String::from("face\tlabel\n");
            let mut rows = Vec::new();
            for (f, s) in l.iter() {
                let _ = writeln!(text, "{f}\t{s}");
                rows.push(json!({"face": f, "label": s.to_string()}));
            }
            return Ok(Report::new(text, json!({"file": file, "labels": rows}), true));
        }
        Input::Orbifold(o) => o,
    };
    let direct = matches!(method, LabelMethod::Direct | LabelMethod::Both)
        .then(|| orbifold_labels_direct(&o))
        .transpose()
        .map_err(|e| invalid(file)(&e))?;
    let cover = matches!(method, LabelMethod::Cover | LabelMethod::Both)
        .then(|| orbifold_labels_cover(&o))
        .transpose()
        .map_err(|e| invalid(file)(&e))?;
    let faces = o.map().faces().len();
    let mut text = String::from("face");
    if direct.is_some() {
        text.push_str("\tdirect");
    }
    if cover.is_some() {
        text.push_str("\tcover");
    }
    text.push('\n');
    let mut rows = Vec::new();
    for f in 0..faces {
        let dl = direct.as_ref().map(|d| d.labels.get(f).map(ToString::to_string).unwrap_or_else(|_| "-".into()));
        let cl = cover.as_ref().map(|c| c.classes[f].as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into()));
        let _ = write!(text, "{f}");
        for x in [&dl, &cl].into_iter().flatten() {
            let _ = write!(text, "\t{x}");
        }
        text.push('\n');
        rows.push(json!({"face": f, "direct": dl, "cover": cl}));
    }
    let mut json = json!({"file": file, "faces": rows});
    if let Some(d) = &direct {
        let _ = writeln!(text, "missing: {}\nadded: {}", list(&d.missing), list(&d.added));
        json["missing"] = json!(d.missing);
        json["added"] = json!(d.added);
    }
    let mut ok = true;
    if let (Some(d), Some(c)) = (&direct, &cover) {
        let check = check_labels(d, c);
        ok = check.passed();
        let _ = writeln!(text, "agreement: {}", if ok { "yes" } else { "no" });
        if !check.disagreeing.is_empty() {
            let _ = writeln!(text, "disagreeing faces: {}", list(&check.disagreeing));
        }
        json["agreement"] = json!(ok);
        json["disagreeing"] = json!(check.disagreeing);
    }
    Ok(Report::new(text, json, ok))
}

fn site(s: Site) -> String {
    match s {
        Site::Crossing(c) => format!("crossing {c}"),
        Site::Point(p) => format!("point {}", p + 1),
    }
}

fn qp_cmd(corpus: &Corpus, file: &str, zeta: i64) -> Result<Report, CliError> {
    let (_, input) = load(corpus, file)?;
    let qp = qp_of(&input, zeta, file)?;
    let weights = qp.grading();
    let mut text = String::from("vertex\tlabel\tfrozen\tcopy\n");
    let mut vertices = Vec::new();
    for (i, v) in qp.quiver.vertices.iter().enumerate() {
        let copy = v.copy.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(text, "{i}\t{}\t{}\t{copy}", v.label, v.frozen);
        vertices.push(json!({"id": i, "label": v.label.to_string(), "frozen": v.frozen, "copy": v.copy}));
    }
    text.push_str("arrow\tsource\ttarget\tsite\tweight\n");
    let mut arrows = Vec::new();
    for (i, a) in qp.quiver.arrows.iter().enumerate() {
        let w = weights.as_ref().map(|w| w[i].to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(text, "{}\t{}\t{}\t{}\t{w}", qp.quiver.arrow_name(i), a.source, a.target, site(a.site));
        arrows.push(json!({"name": qp.quiver.arrow_name(i), "source": a.source, "target": a.target, "site": site(a.site), "weight": weights.as_ref().map(|w| w[i])}));
    }
    let potential = qp.potential_string();
    let _ = writeln!(text, "potential\t{potential}");
    let _ = writeln!(text, "graded\t{}", weights.is_some());
    let json = json!({"file": file, "n": qp.n, "vertices": vertices, "arrows": arrows, "potential": potential, "graded": weights.is_some()});
    Ok(Report::new(text, json, true))
}

fn jacobian(corpus: &Corpus, file: &str, maxdeg: usize) -> Result<Report, CliError> {
    let (_, input) = load(corpus, file)?;
    let qp = qp_of(&input, 1, file)?;
    let a = frozen_jacobian(&qp, maxdeg).map_err(|e| CliError::Usage(format!("{file}: {e}")))?;
    let dims = a.filtered_dimensions();
    let frozen = a.idempotent_dimensions(&qp.quiver.frozen_vertices());
    let text = dims_line("A", &dims) + &dims_line("eAe", &frozen);
    let json = json!({"file": file, "maxdeg": maxdeg, "filtered": dims, "boundary_by_length": frozen});
    Ok(Report::new(text, json, true))
}

fn boundary(corpus: &Corpus, file: &str, jmax: usize) -> Result<Report, CliError> {
    let (_, input) = load(corpus, file)?;
    let qp = qp_of(&input, 1, file)?;
    let (name, expected) = match &input {
        Input::Postnikov(d) => {
            let (k, n) = check_grassmannian(d).ok_or_else(|| CliError::Invalid(format!("{file}: not of Grassmannian type")))?;
            (format!("B({k},{n})"), preprojective_quotient(n, k, jmax).filtered_dimensions())
        }
        Input::Orbifold(o) => {
            let (k, n, _) = o.grassmannian_type().ok_or_else(|| CliError::Invalid(format!("{file}: not of Grassmannian type")))?;
            (format!("B_G({},{k},{n})", o.n0()), preprojective_quotient_g(o.n0(), k, n, jmax).filtered_dimensions())
        }
    };
    let found = boundary_filtration(&qp, jmax).map_err(|e| invalid(file)(&e))?;
    let ok = found == expected;
    let text = dims_line("boundary", &found) + &dims_line(&name, &expected) + &format!("match\t{ok}\n");
    let json = json!({"file": file, "boundary": found, "reference": name, "expected": expected, "match": ok});
    Ok(Report::new(text, json, ok))
}

fn skew(corpus: &Corpus, file: &str, order: Option<usize>, maxdeg: usize) -> Result<Report, CliError> {
    let o = match (load(corpus, file)?.1, order) {
        (Input::Orbifold(o), None) => o,
        (Input::Orbifold(o), Some(d)) => o.with_order(d).map_err(|e| CliError::Usage(format!("{file}: {e}")))?,
        (Input::Postnikov(d), Some(s)) => quotient(&d, s).map_err(|e| invalid(file)(&e))?,
        (Input::Postnikov(_), None) => return Err(CliError::Usage(format!("{file}: --order is required for a Postnikov diagram"))),
    };
    let (a, s) = skew_comparison(&o, maxdeg).map_err(|e| invalid(file)(&e))?;
    let ok = a == s;
    let text = dims_line("A(O)", &a) + &dims_line("skew", &s) + &format!("match\t{ok}\n");
    let json = json!({"file": file, "order": o.order(), "orbifold": a, "skew": s, "match": ok});
    Ok(Report::new(text, json, ok))
}

fn modules(corpus: &Corpus, file: &str, truncation: usize) -> Result<Report, CliError> {
    let (_, input) = load(corpus, file)?;
    let qp = qp_of(&input, 1, file)?;
    let mut text = String::from("label\trank\tdim End\tinduced\n");
    let mut rows = Vec::new();
    let mut ok = true;
    let err = |e: &dyn fmt::Display| CliError::Invalid(format!("{file}: {e}"));
    let mut seen = Vec::new();
    for v in &qp.quiver.vertices {
        let rep = v.label.representative().clone();
        if seen.contains(&rep) {
            continue;
        }
        seen.push(rep.clone());
        let k = rep.len();
        let l = rank_one(&rep, k, qp.n, truncation).map_err(|e| err(&e))?;
        let (module, induced) = match &v.label {
            VertexLabel::Subset(_) => (l, None),
            VertexLabel::Class(c) => {
                let class = LabelClass::of(&rep, c.n0(), c.order());
                let folded = cm_modules::class_module(&class, k, &rep, truncation).map_err(|e| err(&e))?;
                let iso = is_isomorphic(&induce(&l, c.n0()).map_err(|e| err(&e))?, &folded).map_err(|e| err(&e))?;
                (folded, Some(iso))
            }
        };
        let end = hom_space(&module, &module).map_err(|e| err(&e))?.truncated_dim();
        ok &= induced != Some(false);
        let shown = induced.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(text, "{}\t{}\t{end}\t{shown}", v.label, module.total_rank());
        rows.push(json!({"label": v.label.to_string(), "rank": module.total_rank(), "end_dim": end, "induced_isomorphic": induced}));
    }
    let mut json = json!({"file": file, "N": truncation, "modules": rows});
    if let Input::Orbifold(o) = &input {
        let (r2, end) = skew_end_dims(o, truncation).map_err(|e| err(&e))?;
        ok &= r2 == end;
        let _ = writeln!(text, "dim R2\t{r2}\ndim End(T)\t{end}");
        json["R2"] = json!(r2);
        json["end_T"] = json!(end);
    } else {
        let t = build_t(&qp, truncation).map_err(|e| err(&e))?;
        let _ = writeln!(text, "dim End(T)\t{}", t.end.dim());
        json["end_T"] = json!(t.end.dim());
    }
    let _ = writeln!(text, "ok\t{ok}");
    json["ok"] = json!(ok);
    Ok(Report::new(text, json, ok))
}

fn certificate_json(r: &Certificate) -> Value {
    json!({
        "characters": r.characters,
        "gauge": match &r.gauge {
            Ok(g) => json!({"values": g.iter().map(ToString::to_string).collect::<Vec<_>>()}),
            Err(e) => json!({"error": e.to_string()}),
        },
        "generation": r.generation.as_ref().map_err(ToString::to_string).err(),
        "dimensions": r.dimensions.as_ref().map_err(ToString::to_string).err(),
        "end_dim": r.end_dim,
        "end_filtered": r.end_filtered,
        "algebra_filtered": r.algebra_filtered,
        "passed": r.passed(),
    })
}

fn verify(corpus: &Corpus, file: &str, m: usize, truncation: usize, flip: Option<usize>) -> Result<Report, CliError> {
    let o = orbifold_only(corpus, file)?;
    let qp = qp_of_orbifold(&o, 1).map_err(|e| invalid(file)(&e))?;
    let mut p = Presentation::jacobian(&qp);
    if let Some(r) = flip {
        if r >= p.relations.len() {
            return Err(CliError::Usage(format!("relation {r} out of range (0..{})", p.relations.len())));
        }
        p = p.with_flipped_sign(r);
    }
    let r = verify_presentation(&qp, &p, m, truncation).map_err(|e| invalid(file)(&e))?;
    let mut text = String::new();
    let verdict = |x: &Result<(), cm_modules::VerifyError>| match x {
        Ok(()) => "ok".to_string(),
        Err(e) => format!("fail: {e}"),
    };
    let gauge = match &r.gauge {
        Ok(g) => format!("ok [{}]", g.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")),
        Err(e) => format!("fail: {e}"),
    };
    let _ = writeln!(text, "(a) relations\t{gauge}");
    let _ = writeln!(text, "(b) generation\t{}", verdict(&r.generation));
    let _ = writeln!(text, "(c) dimensions\t{}", verdict(&r.dimensions));
    text.push_str(&dims_line("End(T)", &r.end_filtered));
    text.push_str(&dims_line("A", &r.algebra_filtered));
    let _ = writeln!(text, "dim End(T)\t{}\npassed\t{}", r.end_dim, r.passed());
    let mut json = certificate_json(&r);
    json["file"] = json!(file);
    json["flipped"] = json!(flip);
    Ok(Report::new(text, json, r.passed()))
}

fn render_cmd(corpus: &Corpus, file: &str, format: RenderFormat, quiver: bool) -> Result<Report, CliError> {
    let (doc, input) = load(corpus, file)?;
    let mut overlay = Overlay::default();
    if let Input::Orbifold(o) = &input {
        overlay.cone = Some((o.order(), o.cut().iter().map(|c| (c.strand, c.seg)).collect()));
    }
    if quiver {
        let qp = qp_of(&input, 1, file)?;
        let map = StrandMap::build(&doc.diagram).map_err(|e| invalid(file)(&e))?;
        overlay.quiver = Some((qp, map));
    }
    let format = match format {
        RenderFormat::Svg => Format::Svg,
        RenderFormat::Tikz => Format::Tikz,
    };
    let out = render(&doc.diagram, &overlay, format);
    let json = json!({"file": file, "format": if format == Format::Svg { "svg" } else { "tikz" }, "document": out});
    Ok(Report::new(out, json, true))
}

fn corpus_list(corpus: &Corpus) -> Result<Report, CliError> {
    let names = corpus.list().map_err(|e| CliError::Usage(format!("corpus: {e}")))?;
    let rows = crate::map_par(names.len(), |i| {
        let name = &names[i];
        match corpus.read(name).map_err(|e| e.to_string()).and_then(|t| parse_osd(&t).map_err(|e| e.to_string())) {
            Ok(doc) => {
                let kind = if doc.kind == Kind::Orbifold { "orbifold" } else { "postnikov" };
                let order = doc.order.map(|o| o.to_string()).unwrap_or_else(|| "-".into());
                (format!("{name}\t{kind}\t{}\t{order}\t{}\n", doc.diagram.n_points(), doc.diagram.n_crossings()),
                 json!({"file": name, "kind": kind, "points": doc.diagram.n_points(), "order": doc.order, "crossings": doc.diagram.n_crossings()}), true)
            }
            Err(e) => (format!("{name}\terror\t{e}\n"), json!({"file": name, "error": e}), false),
        }
    });
    let mut text = String::from("file\tkind\tpoints\torder\tcrossings\n");
    let ok = rows.iter().all(|r| r.2);
    let items: Vec<Value> = rows.iter().map(|r| r.1.clone()).collect();
    for r in rows {
        text.push_str(&r.0);
    }
    Ok(Report::new(text, json!({"files": items}), ok))
}

fn corpus_run(corpus: &Corpus, criterion: Option<u8>) -> Result<Report, CliError> {
    let outcomes = match criterion {
        Some(id) => vec![run_criterion(corpus, id).ok_or_else(|| CliError::Usage(format!("no criterion {id} (1..10)")))?],
        None => run_all(corpus),
    };
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&o.line());
        text.push('\n');
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(text, "{passed}/{} criteria passed", outcomes.len());
    let items: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({"id": o.id, "title": o.title, "passed": o.passed, "details": o.details, "seconds": o.seconds, "budget": o.budget}))
        .collect();
    Ok(Report::new(text, json!({"criteria": items, "passed": passed, "total": outcomes.len()}), passed == outcomes.len()))
}
