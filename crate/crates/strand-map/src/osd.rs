//! The line-oriented `.osd` diagram format.
//!
//! ```text
//! osd 1
//! kind orbifold
//! points 3
//! order 3
//! tau 3 2 1
//! strand 1: c1 c2
//! crossing c1: a=(1,1) b=(2,3) chir=L
//! cut: (2,1,R) (3,0,L)
//! ```
//!
//! Strands and crossing positions are 1-based, segments along a strand are
//! 0-based (segment `s` ends at the strand's `s+1`-th crossing). `#` starts a
//! comment. A missing `tau` line means every strand returns to its start.

use crate::diagram::{Chirality, Crossing, DiagramError, Side, StrandDiagram, Visit};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Postnikov,
    Orbifold,
}

/// One crossing of the cut with a strand segment, recording on which side
/// of the segment the orbifold point lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CutRecord {
    pub strand: usize,
    pub seg: usize,
    pub omega: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OsdDocument {
    pub kind: Kind,
    pub diagram: StrandDiagram,
    pub order: Option<usize>,
    pub cut: Vec<CutRecord>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OsdError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> OsdError {
    OsdError::Syntax { line, col, msg: msg.into() }
}

struct Cursor<'a> {
    text: &'a str,
    at: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn col(&self) -> usize {
        self.at + 1
    }

    fn skip_ws(&mut self) {
        while self.text[self.at..].starts_with([' ', '\t']) {
            self.at += 1;
        }
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.at >= self.text.len()
    }

    fn expect(&mut self, lit: &str) -> Result<(), OsdError> {
        self.skip_ws();
        if self.text[self.at..].starts_with(lit) {
            self.at += lit.len();
            Ok(())
        } else {
            Err(err(self.line, self.col(), format!("expected `{lit}`")))
        }
    }

    fn number(&mut self) -> Result<usize, OsdError> {
        self.skip_ws();
        let rest = &self.text[self.at..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(err(self.line, self.col(), "expected a number"));
        }
        let v = rest[..len].parse().map_err(|_| err(self.line, self.col(), "number out of range"))?;
        self.at += len;
        Ok(v)
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.at..];
        let len = rest.find([' ', '\t', ':']).unwrap_or(rest.len());
        self.at += len;
        &rest[..len]
    }

    fn side(&mut self) -> Result<Side, OsdError> {
        self.skip_ws();
        let col = self.col();
        match self.text[self.at..].chars().next() {
            Some('L') => {
                self.at += 1;
                Ok(Side::Left)
            }
            Some('R') => {
                self.at += 1;
                Ok(Side::Right)
            }
            _ => Err(err(self.line, col, "expected `L` or `R`")),
        }
    }

    fn pair(&mut self) -> Result<(usize, usize), OsdError> {
        self.expect("(")?;
        let s = self.number()?;
        self.expect(",")?;
        let p = self.number()?;
        self.expect(")")?;
        Ok((s, p))
    }
}

/// Parses a document.
pub fn parse_osd(text: &str) -> Result<OsdDocument, OsdError> {
    let mut header_seen = false;
    let mut kind = None;
    let mut points: Option<usize> = None;
    let mut order = None;
    let mut tau: Option<Vec<usize>> = None;
    let mut strand_lines: BTreeMap<usize, (usize, Vec<(usize, usize)>)> = BTreeMap::new();
    let mut crossing_lines: BTreeMap<usize, (usize, (usize, usize), (usize, usize), Chirality)> = BTreeMap::new();
    let mut cut = None;

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor { text: body, at: 0, line };
        if cur.done() {
            continue;
        }
        let kw_col = cur.col();
        let kw = cur.word();
        if !header_seen {
            if kw != "osd" {
                return Err(err(line, kw_col, "file must start with `osd 1`"));
            }
            let v = cur.number()?;
            if v != 1 {
                return Err(err(line, kw_col, format!("unsupported format version {v}")));
            }
            header_seen = true;
        } else {
            match kw {
                "kind" => {
                    let col = cur.col();
                    kind = Some(match cur.word() {
                        "postnikov" => Kind::Postnikov,
                        "orbifold" => Kind::Orbifold,
                        other => return Err(err(line, col, format!("unknown kind `{other}`"))),
                    });
                }
                "points" => points = Some(cur.number()?),
                "order" => order = Some(cur.number()?),
                "tau" => {
                    let mut t = Vec::new();
                    while !cur.done() {
                        t.push(cur.number()?);
                    }
                    tau = Some(t);
                }
                "strand" => {
                    let i = cur.number()?;
                    cur.expect(":")?;
                    let mut refs = Vec::new();
                    while !cur.done() {
                        let col = cur.col();
                        cur.expect("c")?;
                        refs.push((cur.number()?, col));
                    }
                    if strand_lines.insert(i, (line, refs)).is_some() {
                        return Err(err(line, kw_col, format!("duplicate strand {i}")));
                    }
                }
                "crossing" => {
                    cur.expect("c")?;
                    let k = cur.number()?;
                    cur.expect(":")?;
                    cur.expect("a=")?;
                    let a = cur.pair()?;
                    cur.expect("b=")?;
                    let b = cur.pair()?;
                    cur.expect("chir=")?;
                    let chir = Chirality::from_side(cur.side()?);
                    if !cur.done() {
                        return Err(err(line, cur.col(), "trailing input"));
                    }
                    if crossing_lines.insert(k, (line, a, b, chir)).is_some() {
                        return Err(err(line, kw_col, format!("duplicate crossing id c{k}")));
                    }
                }
                "cut" => {
                    cur.expect(":")?;
                    let mut recs = Vec::new();
                    while !cur.done() {
                        cur.expect("(")?;
                        let col = cur.col();
                        let s = cur.number()?;
                        cur.expect(",")?;
                        let g = cur.number()?;
                        cur.expect(",")?;
                        let omega = cur.side()?;
                        cur.expect(")")?;
                        if s == 0 {
                            return Err(err(line, col, "strands are numbered from 1"));
                        }
                        recs.push(CutRecord { strand: s - 1, seg: g, omega });
                    }
                    cut = Some((line, recs));
                }
                other => return Err(err(line, kw_col, format!("unknown keyword `{other}`"))),
            }
            if !cur.done() {
                return Err(err(line, cur.col(), "trailing input"));
            }
        }
    }
    if !header_seen {
        return Err(OsdError::Missing("osd"));
    }
    let kind = kind.ok_or(OsdError::Missing("kind"))?;
    let n = points.ok_or(OsdError::Missing("points"))?;
    if kind == Kind::Orbifold && order.is_none() {
        return Err(OsdError::Missing("order"));
    }
    let tau = match tau {
        Some(t) => {
            if t.len() != n || t.iter().any(|&x| x == 0 || x > n) {
                return Err(DiagramError::NotAPermutation(n).into());
            }
            t.into_iter().map(|x| x - 1).collect()
        }
        None => (0..n).collect(),
    };

    let index: BTreeMap<usize, usize> = crossing_lines.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut strands = vec![Vec::new(); n];
    for (&i, (line, refs)) in &strand_lines {
        if i == 0 || i > n {
            return Err(err(*line, 1, format!("strand {i} out of range 1..{n}")));
        }
        for &(k, col) in refs {
            let &c = index.get(&k).ok_or_else(|| err(*line, col, format!("unknown crossing c{k}")))?;
            strands[i - 1].push(c);
        }
    }
    let mut crossings = Vec::with_capacity(index.len());
    for (&k, &(line, a, b, chir)) in &crossing_lines {
        for (s, p) in [a, b] {
            if s == 0 || s > n || p == 0 {
                return Err(err(line, 1, format!("visit ({s},{p}) of c{k} out of range")));
            }
        }
        crossings.push(Crossing {
            label: k,
            a: Visit::new(a.0 - 1, a.1 - 1),
            b: Visit::new(b.0 - 1, b.1 - 1),
            chir,
        });
    }
    let diagram = StrandDiagram::new(n, tau, strands, crossings)?;
    let cut = match (kind, cut) {
        (Kind::Orbifold, Some((line, recs))) => {
            for r in &recs {
                if r.strand >= n || r.seg >= diagram.n_segments(r.strand) {
                    return Err(err(line, 1, format!("cut refers to missing segment ({},{})", r.strand + 1, r.seg)));
                }
            }
            recs
        }
        (Kind::Orbifold, None) => Vec::new(),
        (Kind::Postnikov, Some((line, _))) => return Err(err(line, 1, "cut is only allowed for orbifold diagrams")),
        (Kind::Postnikov, None) => Vec::new(),
    };
    Ok(OsdDocument { kind, diagram, order: if kind == Kind::Orbifold { order } else { None }, cut })
}

/// Writes the canonical text form.
pub fn serialize_osd(doc: &OsdDocument) -> String {
    let d = &doc.diagram;
    let mut out = String::from("osd 1\n");
    let kind = match doc.kind {
        Kind::Postnikov => "postnikov",
        Kind::Orbifold => "orbifold",
    };
    let _ = writeln!(out, "kind {kind}");
    let _ = writeln!(out, "points {}", d.n_points());
    if let Some(o) = doc.order {
        let _ = writeln!(out, "order {o}");
    }
    out.push_str("tau");
    for &t in d.tau() {
        let _ = write!(out, " {}", t + 1);
    }
    out.push('\n');
    for s in 0..d.n_points() {
        let _ = write!(out, "strand {}:", s + 1);
        for &c in d.strand(s) {
            let _ = write!(out, " c{}", d.crossing(c).label);
        }
        out.push('\n');
    }
    let mut cs: Vec<_> = d.crossings().iter().collect();
    cs.sort_by_key(|c| c.label);
    for c in cs {
        let _ = writeln!(
            out,
            "crossing c{}: a=({},{}) b=({},{}) chir={}",
            c.label,
            c.a.strand + 1,
            c.a.pos + 1,
            c.b.strand + 1,
            c.b.pos + 1,
            c.chir.side().letter()
        );
    }
    if doc.kind == Kind::Orbifold {
        out.push_str("cut:");
        for r in &doc.cut {
            let _ = write!(out, " ({},{},{})", r.strand + 1, r.seg, r.omega.letter());
        }
        out.push('\n');
    }
    out
}

/// `serialize(parse(text))`.
pub fn canonical(text: &str) -> Result<String, OsdError> {
    parse_osd(text).map(|d| serialize_osd(&d))
}

impl OsdDocument {
    pub fn postnikov(diagram: StrandDiagram) -> Self {
        OsdDocument { kind: Kind::Postnikov, diagram, order: None, cut: Vec::new() }
    }
}
