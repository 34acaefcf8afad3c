use crate::corpus::Corpus;
use cm_modules::{
    build_t, class_module, hom_space, induce, is_isomorphic, rank_one, skew_end, verify_main, verify_presentation, VerifyError,
};
use labeling::{cross_validate_labels, orbifold_labels_cover, orbifold_labels_direct, LabelClass, Subset};
use orbifold_ops::{quotient, sym_d, OrbifoldDiagram};
use path_algebra::{
    frozen_jacobian, preprojective_quotient, preprojective_quotient_g, rotation_action, skew_basic_dimensions,
    stable_radical_filtration, Presentation,
};
use quiver_potential::{qp_of_orbifold, qp_of_postnikov, rational, Cyc, Qp};
use std::time::Instant;
use strand_map::osd::{parse_osd, Kind};
use strand_map::{reduce, validate_postnikov, Move, StrandDiagram, StrandMap};

pub const EXAM2: &str = "ex-exam2-order3.osd";
pub const FIXED: &str = "ex-3-9-order3.osd";
pub const ORDER5: &str = "ex-4-10-order5.osd";
pub const COVER5: &str = "ex-4-10-cover.osd";
pub const COVER3: &str = "ex-3-9-cover.osd";
pub const ORBIFOLDS: [&str; 3] = [EXAM2, FIXED, ORDER5];

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub seconds: f64,
    pub budget: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<28} {} ({:.2}s of {:.0}s){}",
            self.id,
            self.title,
            if self.passed { "PASS" } else { "FAIL" },
            self.seconds,
            self.budget,
            if self.details.is_empty() { String::new() } else { format!(": {}", self.details.join("; ")) }
        )
    }
}

/// Collects named checks; any failing check fails the criterion.
#[derive(Default)]
struct Checks {
    ok: bool,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Checks {
        Checks { ok: true, notes: Vec::new() }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.ok = false;
            self.notes.push(format!("{} failed", what.into()));
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, found: T, expected: T) {
        if found != expected {
            self.ok = false;
            self.notes.push(format!("{what}: expected {expected:?}, found {found:?}"));
        }
    }

    fn error(&mut self, e: String) {
        self.ok = false;
        self.notes.push(e);
    }
}

pub fn load_orbifold(corpus: &Corpus, name: &str) -> Result<OrbifoldDiagram, String> {
    let text = corpus.read(name).map_err(|e| format!("{name}: {e}"))?;
    let doc = parse_osd(&text).map_err(|e| format!("{name}: {e}"))?;
    if doc.kind != Kind::Orbifold {
        return Err(format!("{name}: not an orbifold diagram"));
    }
    OrbifoldDiagram::from_osd(&doc).map_err(|e| format!("{name}: {e}"))
}

pub fn load_postnikov(corpus: &Corpus, name: &str) -> Result<StrandDiagram, String> {
    let text = corpus.read(name).map_err(|e| format!("{name}: {e}"))?;
    Ok(parse_osd(&text).map_err(|e| format!("{name}: {e}"))?.diagram)
}

fn orbifold_qp(corpus: &Corpus, name: &str) -> Result<(OrbifoldDiagram, Qp), String> {
    let o = load_orbifold(corpus, name)?;
    let qp = qp_of_orbifold(&o, 1).map_err(|e| format!("{name}: {e}"))?;
    Ok((o, qp))
}

fn windings(corpus: &Corpus, c: &mut Checks) -> Result<(), String> {
    let o = load_orbifold(corpus, EXAM2)?;
    let w = o.windings();
    c.eq("exam2 S", (w.s(0), w.s(1), w.s(2)), (0, 1, 1));
    c.eq("exam2 L(2,3)", w.l(1, 2), 2);
    c.check("exam2 orbifold at d=3", o.is_orbifold().0);
    let two = o.with_order(2).map_err(|e| e.to_string())?;
    c.check("exam2 not orbifold at d=2", !two.is_orbifold().0);
    let o = load_orbifold(corpus, ORDER5)?;
    let w = o.windings();
    c.eq("(4,10) S", (w.s(0), w.s(1)), (2, 3));
    c.eq("(4,10) L", w.l(0, 1), 4);
    c.check("(4,10) orbifold at d=5", o.is_orbifold().0);
    Ok(())
}

fn covers(corpus: &Corpus, c: &mut Checks) -> Result<(), String> {
    let o = load_orbifold(corpus, EXAM2)?;
    let three = sym_d(&o, 3).diagram;
    c.check("sym_3 valid", validate_postnikov(&three).is_valid());
    let two = sym_d(&o, 2).diagram;
    let report = validate_postnikov(&two);
    c.check("sym_2 violates condition (4)", !report.passed(4));
    let (_, moves) = reduce(&two);
    c.check("bigon in the 2-fold cover", moves.iter().any(|m| matches!(m, Move::Bigon { .. })));
    c.check("sym_3 matches bundled cover", three.is_isomorphic(&load_postnikov(corpus, "ex-exam2-cover3.osd")?));
    c.check("sym_2 matches bundled cover", two.is_isomorphic(&load_postnikov(corpus, "ex-exam2-cover2.osd")?));
    Ok(())
}

fn round_trips(corpus: &Corpus, c: &mut Checks) -> Result<(), String> {
    for name in ORBIFOLDS {
        let o = load_orbifold(corpus, name)?;
        let back = quotient(&sym_d(&o, o.order()).diagram, o.order()).map_err(|e| format!("{name}: {e}"))?;
        c.check(format!("quotient(sym) on {name}"), back.is_isomorphic(&o));
    }
    for (name, s) in [(COVER3, 3), (COVER5, 5)] {
        let p = load_postnikov(corpus, name)?;
        let q = quotient(&p, s).map_err(|e| format!("{name}: {e}"))?;
        c.check(format!("sym(quotient) on {name}"), sym_d(&q, s).diagram.is_isomorphic(&p));
    }
    Ok(())
}

fn labels(corpus: &Corpus, c: &mut Checks) -> Result<(), String> {
    for (name, missing, added) in [(ORDER5, vec![3, 5, 10], vec![10]), (EXAM2, vec![5, 7, 9], vec![7, 9])] {
        let d = orbifold_labels_direct(&load_orbifold(corpus, name)?).map_err(|e| format!("{name}: {e}"))?;
        c.eq(&format!("{name} missing"), d.missing, missing);
        c.eq(&format!("{name} added"), d.added, added);
    }
    for name in ORBIFOLDS {
        let check = cross_validate_labels(&load_orbifold(corpus, name)?).map_err(|e| format!("{name}: {e}"))?;
        c.check(format!("cross validation on {name}"), check.passed());
    }
    let cover = orbifold_labels_cover(&load_orbifold(corpus, FIXED)?).map_err(|e| e.to_string())?;
    let central: Vec<&LabelClass> = cover.classes.iter().flatten().filter(|k| k.size() == 1).collect();
    c.eq("central classes", central.len(), 1);
    if let Some(k) = central.first() {
        c.eq("central class", k.canonical().clone(), Subset::new([1, 4, 7]));
    }
    Ok(())
}

fn coefficient_multiset(qp: &Qp) -> Vec<(Cyc, usize)> {
    qp.potential.terms.iter().map(|t| (t.coeff.clone(), t.power)).collect()
}

fn same_multiset(mut found: Vec<(Cyc, usize)>, expected: &[(Cyc, usize)]) -> bool {
    for e in expected {
        match found.iter().position(|f| f == e) {
            Some(i) => {
                found.swap_remove(i);
            }
            None => return false,
        }
    }
    found.is_empty()
}

fn potentials(corpus: &Corpus, c: &mut Checks) -> Result<(), String> {
    let q = |p: i64, d: i64, order: usize| Cyc::rational(order, rational(p, d));
    let (_, qp) = orbifold_qp(corpus, EXAM2)?;
    let w1 = [(q(-1, 1, 3), 1), (q(1, 1, 3), 1), (q(1, 3, 3), 3)];
    c.check("W_O1", same_multiset(coefficient_multiset(&qp), &w1));
    let (_, qp) = orbifold_qp(corpus, ORDER5)?;
    let w2 = [(q(-1, 1, 5), 1), (q(1, 1, 5), 1), (q(1, 1, 5), 1), (q(-1, 1, 5), 1), (q(1, 5, 5), 5)];
    c.check("W_O2", same_multiset(coefficient_multiset(&qp), &w2));
    let (_, qp) = orbifold_qp(corpus, FIXED)?;
    let z = |e: i64| Cyc::zeta(3, e);
    let one = Cyc::one(3);
    let ten: Vec<(Cyc, usize)> =
        [one.clone(), -one.clone(), one.clone(), -one.clone(), one.clone(), one.clone(), one.clone(), -z(1), -z(2), -one]
            .into_iter()
            .map(|x| (x, 1))
            .collect();
    c.check("fixed-point potential", same_multiset(coefficient_multiset(&qp), &ten));
    Ok(())
}

/// Filtered dimensions of `A(O)` and of the basic algebra of the skew group
/// algebra of its cover, for `j = 0..=m`.
pub fn skew_comparison(o: &OrbifoldDiagram, m: usize) -> Result<(Vec<usize>, Vec<usize>), String> {
    let qp = qp_of_orbifold(o, 1).map_err(|e| e.to_string())?;
    let a = frozen_jacobian(&qp, m).map_err(|e| e.to_string())?.filtered_dimensions();
    let cover = sym_d(o, o.order());
    let cqp = qp_of_postnikov(&cover.diagram).map_err(|e| e.to_string())?;
    let map = StrandMap::build(&cover.diagram).map_err(|e| e.to_string())?;
    let action = rotation_action(&cqp, &map, &cover.rotation).map_err(|e| e.to_string())?;
    let big = frozen_jacobian(&cqp, m).map_err(|e| e.to_string())?;
    Ok((a, skew_basic_dimensions(&big, &action)))
}

fn skew(corpus: &Corpus, c: &mut Checks) -> Result<(), String> {
    for name in ORBIFOLDS {
        let (a, s) = skew_comparison(&load_orbifold(corpus, name)?, 6)?;
        c.eq(&format!("{name} A(O) vs skew"), a, s);
    }
    Ok(())
}

/// Radical filtration of the boundary idempotent subalgebra for `j = 0..=jmax`.
pub fn boundary_filtration(qp: &Qp, jmax: usize) -> Result<Vec<usize>, String> {
    let weights = qp.grading().ok_or("quiver has no consistent grading")?;
    let p = Presentation::jacobian(qp);
    let report = stable_radical_filtration(&p, &weights, &qp.quiver.frozen_vertices(), jmax, 10).map_err(|e| e.to_string())?;
    if !report.stable {
        return Err("radical filtration did not stabilise".into());
    }
    Ok(report.dims)
}

fn boundary(corpus: &Corpus, c: &mut Checks) -> Result<(), String> {
    let p = load_postnikov(corpus, COVER5)?;
    let qp = qp_of_postnikov(&p).map_err(|e| e.to_string())?;
    c.eq("B(P) vs B(4,10)", boundary_filtration(&qp, 8)?, preprojective_quotient(10, 4, 8).filtered_dimensions());
    let (_, qp) = orbifold_qp(corpus, ORDER5)?;
    c.eq("B(O) vs B_G(2,4,10)", boundary_filtration(&qp, 8)?, preprojective_quotient_g(2, 4, 10, 8).filtered_dimensions());
    Ok(())
}

pub const N: usize = 12;

fn module_laws(corpus: &Corpus, c: &mut Checks) -> Result<(), String> {
    for name in ORBIFOLDS {
        let o = load_orbifold(corpus, name)?;
        let cover = orbifold_labels_cover(&o).map_err(|e| e.to_string())?;
        let (n0, d) = (o.n0(), o.order());
        let n = n0 * d;
        let mut classes: Vec<LabelClass> = Vec::new();
        for (_, s) in cover.cover_labels.iter() {
            let k = s.len();
            let l = rank_one(s, k, n, N).map_err(|e| format!("{name} L_{s}: {e}"))?;
            c.check(format!("{name} L_{s} relations"), l.check().is_ok());
            let h = hom_space(&l, &l).map_err(|e| e.to_string())?;
            c.eq(&format!("{name} dim End(L_{s})"), h.truncated_dim(), N);
            let class = LabelClass::of(s, n0, d);
            let folded = class_module(&class, k, s, N).map_err(|e| format!("{name} L_[{s}]: {e}"))?;
            c.check(format!("{name} L_[{s}] relations"), folded.check().is_ok());
            let induced = induce(&l, n0).map_err(|e| format!("{name} induce L_{s}: {e}"))?;
            c.check(
                format!("{name} induce(L_{s}) ~ L_[{s}]"),
                is_isomorphic(&induced, &folded).map_err(|e| e.to_string())?,
            );
            if !classes.contains(&class) {
                classes.push(class);
            }
        }
        if name == FIXED {
            let modules: Vec<_> = classes
                .iter()
                .map(|k| class_module(k, 3, k.canonical(), N))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for i in 0..modules.len() {
                for j in i + 1..modules.len() {
                    c.check(
                        format!("L_{} !~ L_{}", classes[i], classes[j]),
                        !is_isomorphic(&modules[i], &modules[j]).map_err(|e| e.to_string())?,
                    );
                }
            }
        }
    }
    let a = Subset::new([1, 2, 7]);
    let b = Subset::new([1, 4, 5]);
    let class = LabelClass::of(&a, 3, 3);
    let la = class_module(&class, 3, &a, N).map_err(|e| e.to_string())?;
    let lb = class_module(&class, 3, &b, N).map_err(|e| e.to_string())?;
    c.check("L_[127] ~ L_[145]", is_isomorphic(&la, &lb).map_err(|e| e.to_string())?);
    Ok(())
}

/// `dim R_2` and `dim End_{B_G}(T_O)` at truncation `N`.
pub fn skew_end_dims(o: &OrbifoldDiagram, truncation: usize) -> Result<(usize, usize), String> {
    let cover = orbifold_labels_cover(o).map_err(|e| e.to_string())?;
    let labels: Vec<Subset> = cover.cover_labels.iter().map(|(_, s)| s.clone()).collect();
    let k = labels.first().map(Subset::len).ok_or("no labels")?;
    let r2 = skew_end(&labels, k, o.n0() * o.order(), o.n0(), truncation).map_err(|e| e.to_string())?;
    let qp = qp_of_orbifold(o, 1).map_err(|e| e.to_string())?;
    let t = build_t(&qp, truncation).map_err(|e| e.to_string())?;
    Ok((r2.dim, t.end.dim()))
}

fn bridge(corpus: &Corpus, c: &mut Checks) -> Result<(), String> {
    for name in [FIXED, ORDER5] {
        let (r2, end) = skew_end_dims(&load_orbifold(corpus, name)?, N)?;
        c.eq(&format!("{name} dim R2 vs End"), r2, end);
    }
    Ok(())
}

fn main_theorem(corpus: &Corpus, c: &mut Checks) -> Result<(), String> {
    for name in [FIXED, ORDER5] {
        let (o, qp) = orbifold_qp(corpus, name)?;
        let report = verify_main(&o, 6, N).map_err(|e| format!("{name}: {e}"))?;
        for f in report.failures() {
            c.error(format!("{name}: {f}"));
        }
        let flipped = Presentation::jacobian(&qp).with_flipped_sign(0);
        let control = verify_presentation(&qp, &flipped, 6, N).map_err(|e| format!("{name}: {e}"))?;
        c.check(
            format!("{name} negative control"),
            control.failures().iter().any(|f| matches!(f, VerifyError::DimensionMismatch { .. })),
        );
    }
    Ok(())
}

type Check = fn(&Corpus, &mut Checks) -> Result<(), String>;

const CRITERIA: [(u8, &str, f64, Check); 10] = [
    (1, "winding invariants", 1.0, windings),
    (2, "cover validity", 1.0, covers),
    (3, "round trips", 5.0, round_trips),
    (4, "labels", 1.0, labels),
    (5, "potentials", 1.0, potentials),
    (6, "jacobian/skew consistency", 60.0, skew),
    (7, "boundary algebras", 60.0, boundary),
    (8, "module laws", 120.0, module_laws),
    (9, "skew-end bridge", 300.0, bridge),
    (10, "main theorem", 600.0, main_theorem),
];

pub fn run_criterion(corpus: &Corpus, id: u8) -> Option<Outcome> {
    let &(id, title, budget, f) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let mut c = Checks::new();
    if let Err(e) = f(corpus, &mut c) {
        c.error(e);
    }
    let seconds = start.elapsed().as_secs_f64();
    if seconds > budget {
        c.error(format!("took {seconds:.1}s"));
    }
    Some(Outcome { id, title, passed: c.ok, details: c.notes, seconds, budget })
}

/// Runs every criterion in order. Criteria run one at a time so that each
/// is timed alone; the heavy ones are parallel inside.
pub fn run_all(corpus: &Corpus) -> Vec<Outcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(corpus, c.0)).collect()
}

/// Identifier, title and time budget in seconds of every criterion.
pub fn criteria() -> Vec<(u8, &'static str, f64)> {
    CRITERIA.iter().map(|c| (c.0, c.1, c.2)).collect()
}
