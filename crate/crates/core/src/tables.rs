//! Classification tables for the 3D and 4D systems, regenerated from the
//! constraint engine, plus plain-text renderers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::{classify, enumerate_assignments, relabel, rescaling_related, Filter};
use crate::error::{Error, Result};
use crate::group::automorphisms;
use crate::rational::{format_rational, int, product, sign_symbol, Rational};
use crate::registry::{builtin_pattern, tag_for};
use crate::ruleset::{assign_from_signature, derive_constraints, signatures, ParamAssignment, RulePattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WhichTable {
    /// 3D cyclic classes.
    Table1,
    /// 4D cyclic, nonzero rows plus the `α = 0` family.
    Table2,
    /// 4D Klein, nonzero signature.
    Table3,
    /// 4D Klein, zero signature.
    Table4,
}

impl FromStr for WhichTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().trim_start_matches("table") {
            "1" | "i" => Ok(WhichTable::Table1),
            "2" | "ii" => Ok(WhichTable::Table2),
            "3" | "iii" => Ok(WhichTable::Table3),
            "4" | "iv" => Ok(WhichTable::Table4),
            _ => Err(Error::ParseNumber(format!("unknown table `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Format {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::ParseNumber(format!("unknown format `{other}`"))),
        }
    }
}

/// A rendered table: string cells so that families such as `±1` fit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTable {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl ClassTable {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => render_markdown(self),
            Format::Csv => render_csv(self),
            Format::Json => render_json(self),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

impl fmt::Display for ClassTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_markdown(self))
    }
}

pub fn render_markdown(t: &ClassTable) -> String {
    let widths: Vec<usize> = (0..t.columns.len())
        .map(|c| {
            t.rows
                .iter()
                .filter_map(|r| r.get(c))
                .chain(std::iter::once(&t.columns[c]))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(1)
                .max(3)
        })
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = widths
            .iter()
            .enumerate()
            .map(|(c, &w)| {
                let s = cells.get(c).map(String::as_str).unwrap_or("");
                format!("{s}{}", " ".repeat(w - s.chars().count()))
            })
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = format!("**{}**\n\n", t.title);
    out.push_str(&line(&t.columns));
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
    for r in &t.rows {
        out.push_str(&line(r));
    }
    for n in &t.notes {
        out.push_str(&format!("\n{n}\n"));
    }
    out
}

pub fn render_csv(t: &ClassTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.columns).expect("in-memory write");
    for r in &t.rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn render_json(t: &ClassTable) -> String {
    serde_json::to_string_pretty(t).expect("table serializes")
}

pub fn reproduce_table(which: WhichTable) -> ClassTable {
    match which {
        WhichTable::Table1 => table1(),
        WhichTable::Table2 => table2(),
        WhichTable::Table3 => table3(),
        WhichTable::Table4 => table4(),
    }
}

fn signs() -> Vec<Rational> {
    vec![int(-1), int(0), int(1)]
}

fn cells(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn pattern(name: &str) -> RulePattern {
    builtin_pattern(name).expect("builtin group")
}

fn table1() -> ClassTable {
    let p = pattern("c3");
    let cs = derive_constraints(&p);
    let all = enumerate_assignments(&p, &cs, &signs(), Filter::All);
    let classes = classify(&p, &all, &automorphisms(p.group()));

    // Display member: prefer a nonzero, then positive, beta.
    let mut rows: Vec<Vec<Rational>> = classes
        .iter()
        .map(|c| {
            c.orbit
                .iter()
                .map(ParamAssignment::dense)
                .max_by_key(|v| (!v[1].is_zero(), v[1].clone(), v[2].clone()))
                .expect("orbit is nonempty")
        })
        .collect();
    rows.sort_by(|a, b| b[0].cmp(&a[0]).then(b[1].cmp(&a[1])));

    ClassTable {
        title: "3D cyclic extensions: scaling assignments up to i <-> j".into(),
        columns: ["alpha", "beta", "gamma", "i^3", "j^3"].map(String::from).to_vec(),
        rows: rows
            .iter()
            .map(|v| cells(&[v[0].clone(), v[1].clone(), v[2].clone(), &v[0] * &v[1], &v[0] * &v[2]]))
            .collect(),
        notes: vec![format!(
            "{} associative assignments over {{-1, 0, 1}} fall into {} classes.",
            all.len(),
            classes.len()
        )],
    }
}

fn table2() -> ClassTable {
    let p = pattern("c4");
    let cs = derive_constraints(&p);
    let mut nonzero = enumerate_assignments(&p, &cs, &signs(), Filter::NonZero);
    nonzero.sort_by_key(|a| std::cmp::Reverse(a.dense()));
    let mut rows: Vec<Vec<String>> = nonzero
        .iter()
        .map(|a| {
            let v = a.dense();
            let mut row = cells(&v[..6]);
            row.push(tag_for(&p, &v).unwrap_or("").to_string());
            row
        })
        .collect();
    // the alpha = 0 family sits between the two signs
    let split = rows.iter().position(|r| r[0].starts_with('-')).unwrap_or(rows.len());
    rows.insert(
        split,
        ["0", "beta*delta = 0", "gamma*epsilon = 0", "", "", "beta*gamma", ""].map(String::from).to_vec(),
    );

    let all = enumerate_assignments(&p, &cs, &signs(), Filter::All);
    let zero_alpha: Vec<&ParamAssignment> = all.iter().filter(|a| a.dense()[0].is_zero()).collect();
    let commuting = zero_alpha
        .iter()
        .filter(|a| {
            let v = a.dense();
            v[6] == v[0] && v[7] == v[1] && v[8] == v[2]
        })
        .count();

    ClassTable {
        title: "4D cyclic extensions: scaling assignments".into(),
        columns: ["alpha", "beta", "gamma", "delta", "epsilon", "phi", "name"].map(String::from).to_vec(),
        rows,
        notes: vec![format!(
            "alpha = 0: {} associative assignments over {{-1, 0, 1}}, {} of them with ji = ij, kj = jk, ik = ki.",
            zero_alpha.len(),
            commuting
        )],
    }
}

fn signature_cells(v: &[Rational]) -> Vec<String> {
    let mut out = Vec::with_capacity(12);
    for block in v.chunks(3) {
        out.extend(cells(block));
        out.push(format_rational(&product(block)));
    }
    out
}

fn klein_columns() -> Vec<String> {
    [
        "alpha", "beta", "gamma", "rho", "alpha'", "beta'", "gamma'", "rho'", "alpha''", "beta''", "gamma''",
        "rho''", "name",
    ]
    .map(String::from)
    .to_vec()
}

/// The 16 raw nonzero Klein assignments reduce to 8 rows: `(α, β, γ)` is
/// rearranged so that the primed triple is ascending, then the row is rebuilt
/// from `(α, β, γ, ρ″)`.
pub fn table3_assignments() -> Vec<ParamAssignment> {
    let p = pattern("klein4");
    let cs = derive_constraints(&p);
    let raw = enumerate_assignments(&p, &cs, &signs(), Filter::NonZero);
    let mut rows: BTreeMap<(std::cmp::Reverse<Rational>, usize, Vec<Rational>), ParamAssignment> = BTreeMap::new();
    for a in &raw {
        let sig = signatures(&p, a).expect("klein pattern");
        let mut abc = a.dense()[..3].to_vec();
        abc.sort_by_key(|x| x * &sig.rho_pp);
        let row = assign_from_signature(&abc[0], &abc[1], &abc[2], &sig.rho_pp).expect("nonzero row");
        let v = row.dense();
        let negatives = v[3..6].iter().filter(|x| x.is_negative()).count();
        let key = (std::cmp::Reverse(sig.rho_pp.clone()), negatives, v);
        rows.entry(key).or_insert(row);
    }
    rows.into_values().collect()
}

fn table3() -> ClassTable {
    let p = pattern("klein4");
    let rows = table3_assignments()
        .iter()
        .map(|a| {
            let v = a.dense();
            let mut row = signature_cells(&v);
            row.push(tag_for(&p, &v).unwrap_or("").to_string());
            row
        })
        .collect();
    ClassTable {
        title: "4D Klein extensions: nonzero scaling assignments".into(),
        columns: klein_columns(),
        rows,
        notes: vec!["Rows with equal primed and double-primed triples are the commutative systems.".into()],
    }
}

/// Zero-signature Klein assignments moved into normal position by a basis
/// permutation: a nonzero unprimed value goes to `α`; otherwise the nonzero
/// primed values go to the `γ` position. Every image in normal position is
/// kept, so rows related by a permutation that fixes the normal position
/// (such as `j ↔ k` when `α ≠ 0`) are listed separately. Returns `(block, normalized rows)`
/// with blocks `(1,0,0)`, `(0,0,0)`, `(-1,0,0)` in that order.
pub fn table4_blocks() -> Vec<([i8; 3], Vec<ParamAssignment>)> {
    let p = pattern("klein4");
    let cs = derive_constraints(&p);
    let autos = automorphisms(p.group());
    let raw = enumerate_assignments(&p, &cs, &signs(), Filter::ZeroSignature);

    let normal = |v: &Vec<Rational>| {
        if v[..3].iter().any(|x| !x.is_zero()) {
            v[1].is_zero() && v[2].is_zero()
        } else {
            [3, 4, 6, 7].iter().all(|&i| v[i].is_zero())
        }
    };
    let mut blocks: BTreeMap<std::cmp::Reverse<[i8; 3]>, BTreeSet<Vec<Rational>>> = BTreeMap::new();
    for a in &raw {
        for v in autos.iter().map(|s| relabel(&p, a, s).dense()).filter(normal) {
            let key = [sign_symbol(&v[0]), sign_symbol(&v[1]), sign_symbol(&v[2])];
            blocks.entry(std::cmp::Reverse(key)).or_default().insert(v);
        }
    }
    blocks
        .into_iter()
        .map(|(std::cmp::Reverse(key), rows)| {
            let mut rows: Vec<Vec<Rational>> = rows.into_iter().collect();
            rows.sort_by(|a, b| b[3..].cmp(&a[3..]));
            (key, rows.into_iter().map(ParamAssignment::from_values).collect())
        })
        .collect()
}

fn table4() -> ClassTable {
    let p = pattern("klein4");
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for (key, members) in table4_blocks() {
        if key == [0, 0, 0] {
            // Only gamma' and gamma'' can be nonzero here; signs vary freely.
            let mut groups: Vec<((bool, bool), Vec<&ParamAssignment>)> =
                [(true, false), (false, true), (true, true), (false, false)].map(|k| (k, Vec::new())).to_vec();
            for m in &members {
                let v = m.dense();
                let k = (!v[5].is_zero(), !v[8].is_zero());
                groups.iter_mut().find(|(g, _)| *g == k).expect("all patterns listed").1.push(m);
            }
            for ((g1, g2), group) in groups {
                let pm = |nonzero: bool| if nonzero { "±1" } else { "0" }.to_string();
                let zero = || "0".to_string();
                let mut tags: Vec<&str> = group.iter().filter_map(|m| tag_for(&p, &m.dense())).collect();
                tags.dedup();
                rows.push(vec![
                    zero(), zero(), zero(), zero(),
                    zero(), zero(), pm(g1), zero(),
                    zero(), zero(), pm(g2), zero(),
                    tags.join(", "),
                ]);
                notes.push(format!(
                    "Block (0, 0, 0), gamma' {}, gamma'' {}: {} assignments.",
                    if g1 { "nonzero" } else { "zero" },
                    if g2 { "nonzero" } else { "zero" },
                    group.len()
                ));
            }
        } else {
            let first = rows.len() + 1;
            for m in &members {
                let v = m.dense();
                let mut row = signature_cells(&v);
                row.push(tag_for(&p, &v).unwrap_or("").to_string());
                rows.push(row);
            }
            for (x, a) in members.iter().enumerate() {
                for (y, b) in members.iter().enumerate().skip(x + 1) {
                    if rescaling_related(&p, a, b) {
                        notes.push(format!(
                            "Rows {} and {} differ by rescaling a basis element by -1.",
                            first + x,
                            first + y
                        ));
                    }
                }
            }
        }
    }
    ClassTable {
        title: "4D Klein extensions with rho = rho' = rho'' = 0, up to basis permutation".into(),
        columns: klein_columns(),
        rows,
        notes,
    }
}
