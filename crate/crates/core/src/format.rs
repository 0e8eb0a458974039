//! Text formats: `.gsr` instance files and `.fz` fuzzy subset files.
//!
//! `.gsr` is line oriented with `#` comments. A Γ-semiring file has the
//! sections `[gamma_semiring]` (with `name`, `S`, `G`), `[add_S]`, `[add_G]`
//! and `[product]`, the last holding one `gamma = <id>` block per Γ element
//! with row `i`, column `j` giving `sᵢ γ sⱼ`. A semiring file has
//! `[semiring]` (with `name`, `R`), `[add]` and `[mul]`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::fuzzy::FuzzySubset;
use crate::grade::Grade;
use crate::structure::{validate_gamma_semiring, validate_semiring, GammaSemiring, Semiring};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("{carrier}: first element `{id}` is not an additive zero")]
    MissingZero { carrier: String, id: String },
    #[error("line {line}: {msg}")]
    Ragged { line: usize, msg: String },
    #[error("axiom `{law}` fails at {witness}")]
    Axiom { law: &'static str, witness: String },
}

impl FormatError {
    /// Stable short code per error class.
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Io { .. } => "io",
            FormatError::Syntax { .. } => "syntax",
            FormatError::DuplicateId { .. } => "duplicate-id",
            FormatError::MissingZero { .. } => "missing-zero",
            FormatError::Ragged { .. } => "ragged-row",
            FormatError::Axiom { .. } => "axiom",
        }
    }
}

type Result<T> = std::result::Result<T, FormatError>;

/// Contents of a `.gsr` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Gamma(GammaSemiring),
    Semiring(Semiring),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

struct Section {
    name: String,
    line: usize,
    // (line number, content) with comments stripped
    body: Vec<(usize, String)>,
}

fn sections(text: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| syntax(line, format!("malformed section header `{content}`")))?;
            if out.iter().any(|s| s.name == name) {
                return Err(syntax(line, format!("section [{name}] appears twice")));
            }
            out.push(Section { name: name.trim().to_string(), line, body: Vec::new() });
        } else {
            match out.last_mut() {
                Some(s) => s.body.push((line, content.to_string())),
                None => return Err(syntax(line, "content before the first section")),
            }
        }
    }
    Ok(out)
}

fn take<'a>(secs: &'a [Section], name: &str) -> Result<&'a Section> {
    secs.iter()
        .find(|s| s.name == name)
        .ok_or_else(|| syntax(secs.last().map_or(0, |s| s.line), format!("missing section [{name}]")))
}

fn header(sec: &Section, keys: &[&str]) -> Result<HashMap<String, (usize, String)>> {
    let mut out = HashMap::new();
    for (line, content) in &sec.body {
        let (k, v) = content
            .split_once('=')
            .ok_or_else(|| syntax(*line, format!("expected `key = value` in [{}]", sec.name)))?;
        let k = k.trim();
        if !keys.contains(&k) {
            return Err(syntax(*line, format!("unknown key `{k}` in [{}]", sec.name)));
        }
        if out.insert(k.to_string(), (*line, v.trim().to_string())).is_some() {
            return Err(syntax(*line, format!("key `{k}` given twice")));
        }
    }
    for k in keys {
        if !out.contains_key(*k) {
            return Err(syntax(sec.line, format!("[{}] is missing `{k}`", sec.name)));
        }
    }
    Ok(out)
}

fn id_list(line: usize, value: &str) -> Result<Vec<String>> {
    let ids: Vec<String> = value.split_whitespace().map(str::to_string).collect();
    if ids.is_empty() {
        return Err(syntax(line, "empty carrier"));
    }
    let mut seen = HashMap::new();
    for id in &ids {
        if seen.insert(id.as_str(), ()).is_some() {
            return Err(FormatError::DuplicateId { line, id: id.clone() });
        }
    }
    Ok(ids)
}

fn index_map(ids: &[String]) -> HashMap<&str, u32> {
    ids.iter().enumerate().map(|(i, s)| (s.as_str(), i as u32)).collect()
}

// Parses `rows` lines of `ids.len()` entries each.
fn table(rows: &[(usize, String)], height: usize, ids: &[String], what: &str, at: usize) -> Result<Vec<u32>> {
    if rows.len() != height {
        let line = rows.last().map_or(at, |r| r.0);
        return Err(FormatError::Ragged { line, msg: format!("{what} has {} rows, expected {height}", rows.len()) });
    }
    let map = index_map(ids);
    let mut out = Vec::with_capacity(height * ids.len());
    for (line, content) in rows {
        let cells: Vec<&str> = content.split_whitespace().collect();
        if cells.len() != ids.len() {
            return Err(FormatError::Ragged {
                line: *line,
                msg: format!("{what} row has {} entries, expected {}", cells.len(), ids.len()),
            });
        }
        for c in cells {
            out.push(*map.get(c).ok_or_else(|| syntax(*line, format!("unknown id `{c}` in {what}")))?);
        }
    }
    Ok(out)
}

fn check_zero(carrier: &str, ids: &[String], add: &[u32]) -> Result<()> {
    let n = ids.len();
    let ok = (0..n).all(|x| add[x] as usize == x && add[x * n] as usize == x);
    if ok {
        Ok(())
    } else {
        Err(FormatError::MissingZero { carrier: carrier.into(), id: ids[0].clone() })
    }
}

fn structural(e: crate::error::Error) -> FormatError {
    syntax(0, e.to_string())
}

/// Parses and validates `.gsr` text.
pub fn parse_gsr_str(text: &str) -> Result<Structure> {
    let secs = sections(text)?;
    let first = secs.first().ok_or_else(|| syntax(0, "no sections"))?;
    match first.name.as_str() {
        "gamma_semiring" => parse_gamma(&secs).map(Structure::Gamma),
        "semiring" => parse_semiring(&secs).map(Structure::Semiring),
        other => Err(syntax(first.line, format!("expected [gamma_semiring] or [semiring], found [{other}]"))),
    }
}

/// Reads, parses and validates a `.gsr` file.
pub fn read_gsr(path: impl AsRef<Path>) -> Result<Structure> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    parse_gsr_str(&text)
}

fn parse_gamma(secs: &[Section]) -> Result<GammaSemiring> {
    let head = take(secs, "gamma_semiring")?;
    let h = header(head, &["name", "S", "G"])?;
    let s_ids = id_list(h["S"].0, &h["S"].1)?;
    let g_ids = id_list(h["G"].0, &h["G"].1)?;
    let (ns, ng) = (s_ids.len(), g_ids.len());
    let add_s_sec = take(secs, "add_S")?;
    let add_s = table(&add_s_sec.body, ns, &s_ids, "[add_S]", add_s_sec.line)?;
    let add_g_sec = take(secs, "add_G")?;
    let add_g = table(&add_g_sec.body, ng, &g_ids, "[add_G]", add_g_sec.line)?;
    check_zero("S", &s_ids, &add_s)?;
    check_zero("Γ", &g_ids, &add_g)?;

    let psec = take(secs, "product")?;
    let g_map = index_map(&g_ids);
    let mut blocks: Vec<Option<Vec<u32>>> = vec![None; ng];
    let mut body = psec.body.iter().peekable();
    while let Some((line, content)) = body.next() {
        let gid = content
            .split_once('=')
            .filter(|(k, _)| k.trim() == "gamma")
            .map(|(_, v)| v.trim())
            .ok_or_else(|| syntax(*line, "expected `gamma = <id>` to start a product block"))?;
        let k = *g_map.get(gid).ok_or_else(|| syntax(*line, format!("unknown Γ id `{gid}`")))? as usize;
        if blocks[k].is_some() {
            return Err(syntax(*line, format!("product block for `{gid}` given twice")));
        }
        let mut rows = Vec::new();
        while let Some((l, c)) = body.peek() {
            if c.starts_with("gamma") && c.contains('=') {
                break;
            }
            rows.push((*l, c.clone()));
            body.next();
        }
        blocks[k] = Some(table(&rows, ns, &s_ids, &format!("product block `{gid}`"), *line)?);
    }
    if let Some(k) = blocks.iter().position(Option::is_none) {
        return Err(syntax(psec.line, format!("[product] is missing the block for `{}`", g_ids[k])));
    }
    let blocks: Vec<Vec<u32>> = blocks.into_iter().map(|b| b.expect("checked")).collect();
    let mut prod = Vec::with_capacity(ns * ng * ns);
    for x in 0..ns {
        for b in &blocks {
            prod.extend_from_slice(&b[x * ns..(x + 1) * ns]);
        }
    }
    let g = GammaSemiring::new(h["name"].1.clone(), s_ids, g_ids, add_s, add_g, prod).map_err(structural)?;
    if let Some(v) = validate_gamma_semiring(&g).violations().first() {
        return Err(FormatError::Axiom { law: v.axiom.law(), witness: v.describe(g.s_ids(), g.g_ids()) });
    }
    Ok(g)
}

fn parse_semiring(secs: &[Section]) -> Result<Semiring> {
    let head = take(secs, "semiring")?;
    let h = header(head, &["name", "R"])?;
    let ids = id_list(h["R"].0, &h["R"].1)?;
    let n = ids.len();
    let asec = take(secs, "add")?;
    let add = table(&asec.body, n, &ids, "[add]", asec.line)?;
    let msec = take(secs, "mul")?;
    let mul = table(&msec.body, n, &ids, "[mul]", msec.line)?;
    check_zero("R", &ids, &add)?;
    let r = Semiring::new(h["name"].1.clone(), ids, add, mul).map_err(structural)?;
    if let Some(v) = validate_semiring(&r).violations().first() {
        return Err(FormatError::Axiom { law: v.axiom.law(), witness: v.describe(r.ids(), &[]) });
    }
    Ok(r)
}

fn write_rows(out: &mut String, ids: &[String], n: usize, cell: impl Fn(usize, usize) -> usize) {
    for i in 0..n {
        let row: Vec<&str> = (0..n).map(|j| ids[cell(i, j)].as_str()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

pub fn write_gamma(g: &GammaSemiring) -> String {
    let mut out = String::new();
    let (ns, ng) = (g.s_len(), g.g_len());
    let _ = writeln!(out, "[gamma_semiring]");
    let _ = writeln!(out, "name = {}", g.name());
    let _ = writeln!(out, "S = {}", g.s_ids().join(" "));
    let _ = writeln!(out, "G = {}", g.g_ids().join(" "));
    let _ = writeln!(out, "\n[add_S]");
    write_rows(&mut out, g.s_ids(), ns, |i, j| g.add_s(i, j));
    let _ = writeln!(out, "\n[add_G]");
    write_rows(&mut out, g.g_ids(), ng, |i, j| g.add_g(i, j));
    let _ = writeln!(out, "\n[product]");
    for k in 0..ng {
        let _ = writeln!(out, "gamma = {}", g.g_ids()[k]);
        write_rows(&mut out, g.s_ids(), ns, |i, j| g.prod(i, k, j));
    }
    out
}

pub fn write_semiring(r: &Semiring) -> String {
    let mut out = String::new();
    let n = r.len();
    let _ = writeln!(out, "[semiring]");
    let _ = writeln!(out, "name = {}", r.name());
    let _ = writeln!(out, "R = {}", r.ids().join(" "));
    let _ = writeln!(out, "\n[add]");
    write_rows(&mut out, r.ids(), n, |i, j| r.add(i, j));
    let _ = writeln!(out, "\n[mul]");
    write_rows(&mut out, r.ids(), n, |i, j| r.mul(i, j));
    out
}

/// Parses `.fz` text (`id : p/q` per line) over the carrier `ids`; absent
/// elements get grade 0.
pub fn parse_fz(text: &str, ids: &[String]) -> Result<FuzzySubset> {
    let map = index_map(ids);
    let mut grades = vec![None; ids.len()];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (id, g) = content.split_once(':').ok_or_else(|| syntax(line, "expected `id : p/q`"))?;
        let id = id.trim();
        let k = *map.get(id).ok_or_else(|| syntax(line, format!("unknown id `{id}`")))? as usize;
        let grade: Grade = g.trim().parse().map_err(|e| syntax(line, format!("{e}")))?;
        if grades[k].replace(grade).is_some() {
            return Err(FormatError::DuplicateId { line, id: id.to_string() });
        }
    }
    Ok(FuzzySubset::new(grades.into_iter().map(|g| g.unwrap_or(Grade::ZERO)).collect()))
}

pub fn read_fz(path: impl AsRef<Path>, ids: &[String]) -> Result<FuzzySubset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    parse_fz(&text, ids)
}

pub fn write_fz(mu: &FuzzySubset, ids: &[String]) -> String {
    let mut out = String::new();
    for (id, g) in ids.iter().zip(mu.grades()) {
        let _ = writeln!(out, "{id} : {g}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{boolean, boolean_semiring, zn};

    #[test]
    fn round_trip_gamma() {
        for g in [boolean(), zn(4).unwrap()] {
            let text = write_gamma(&g);
            assert_eq!(parse_gsr_str(&text).unwrap(), Structure::Gamma(g));
        }
    }

    #[test]
    fn round_trip_semiring() {
        let r = boolean_semiring();
        assert_eq!(parse_gsr_str(&write_semiring(&r)).unwrap(), Structure::Semiring(r));
    }

    #[test]
    fn missing_product_names_section() {
        let text = write_gamma(&boolean());
        let cut = &text[..text.find("[product]").unwrap()];
        let err = parse_gsr_str(cut).unwrap_err();
        assert_eq!(err.code(), "syntax");
        assert!(err.to_string().contains("[product]"));
    }

    #[test]
    fn error_codes() {
        let text = write_gamma(&boolean());
        let dup = text.replace("S = 0 1", "S = 0 0");
        assert_eq!(parse_gsr_str(&dup).unwrap_err().code(), "duplicate-id");
        let ragged = text.replacen("[add_S]\n0 1", "[add_S]\n0 1 1", 1);
        assert_eq!(parse_gsr_str(&ragged).unwrap_err().code(), "ragged-row");
        let nozero = text.replacen("[add_S]\n0 1\n1 1", "[add_S]\n1 1\n1 1", 1);
        assert_eq!(parse_gsr_str(&nozero).unwrap_err().code(), "missing-zero");
    }

    #[test]
    fn fz_defaults_to_zero() {
        let ids: Vec<String> = vec!["0".into(), "1".into(), "2".into()];
        let mu = parse_fz("0 : 1/1\n# c\n2 : 1/2\n", &ids).unwrap();
        assert_eq!(mu.grades(), &[Grade::ONE, Grade::ZERO, Grade::half()]);
        assert_eq!(parse_fz(&write_fz(&mu, &ids), &ids).unwrap(), mu);
        assert!(parse_fz("3 : 1", &ids).is_err());
    }
}
