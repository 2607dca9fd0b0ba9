//! FCIDUMP reader and writer.
//!
//! The header is a Fortran namelist (`&FCI ... &END` or `/`) carrying at
//! least `NORB` and `NELEC`; each following line is `value i j k l` with
//! 1-based chemists' indices. `i j 0 0` is a one-electron entry, `0 0 0 0`
//! the core energy, and `i 0 0 0` an orbital energy (ignored).

use std::fmt::Write as _;

use super::{ChemioError, MolecularIntegrals};

/// Conflicting duplicates must agree to this absolute tolerance.
pub const DUPLICATE_TOLERANCE: f64 = 1e-10;

struct Header {
    norb: usize,
    nelec: usize,
    ms2: i32,
}

fn parse_err(line: usize, message: impl Into<String>) -> ChemioError {
    ChemioError::Parse { line, message: message.into() }
}

fn parse_header<'a, I>(lines: &mut I) -> Result<(Header, usize), ChemioError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut text = String::new();
    let mut started = false;
    let mut last_line = 0;
    for (no, raw) in lines.by_ref() {
        last_line = no;
        let line = raw.trim();
        if line.is_empty() && !started {
            continue;
        }
        let upper = line.to_ascii_uppercase();
        if !started {
            if !upper.starts_with("&FCI") {
                return Err(parse_err(no, "expected `&FCI` namelist header"));
            }
            started = true;
            text.push_str(&upper[4..]);
        } else {
            text.push(' ');
            text.push_str(&upper);
        }
        let body = text.trim_end();
        if body.ends_with("&END") || body.ends_with('/') {
            let cut = if body.ends_with("&END") { body.len() - 4 } else { body.len() - 1 };
            text.truncate(cut);
            return interpret_header(&text, no).map(|h| (h, no));
        }
    }
    if started {
        Err(parse_err(last_line, "unterminated namelist header (missing `&END`)"))
    } else {
        Err(parse_err(last_line.max(1), "empty file"))
    }
}

fn interpret_header(body: &str, line: usize) -> Result<Header, ChemioError> {
    // Split `KEY=v1,v2,KEY2=...` into key/value-list pairs.
    let mut pairs: Vec<(String, String)> = Vec::new();
    for token in body.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        if let Some((k, v)) = token.split_once('=') {
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        } else if let Some(last) = pairs.last_mut() {
            // continuation of a list value such as ORBSYM=1,1,2
            last.1.push(',');
            last.1.push_str(token);
        } else {
            return Err(parse_err(line, format!("unexpected header token `{token}`")));
        }
    }
    let lookup = |key: &str| pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
    let int = |key: &str| -> Result<Option<i64>, ChemioError> {
        lookup(key)
            .map(|v| {
                v.parse::<i64>()
                    .map_err(|_| parse_err(line, format!("header value {key}=`{v}` is not an integer")))
            })
            .transpose()
    };
    let norb = int("NORB")?.ok_or_else(|| parse_err(line, "header lacks NORB"))?;
    let nelec = int("NELEC")?.ok_or_else(|| parse_err(line, "header lacks NELEC"))?;
    let ms2 = int("MS2")?.unwrap_or(0);
    if norb <= 0 {
        return Err(ChemioError::Domain(format!("NORB={norb} must be positive")));
    }
    if nelec <= 0 || nelec > 2 * norb {
        return Err(ChemioError::Domain(format!(
            "NELEC={nelec} outside (0, 2·NORB={}]",
            2 * norb
        )));
    }
    Ok(Header { norb: norb as usize, nelec: nelec as usize, ms2: ms2 as i32 })
}

fn parse_value(token: &str) -> Option<f64> {
    // Fortran double exponents: 1.0D-03
    let normalized = token.replace(['D', 'd'], "E");
    normalized.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses FCIDUMP text into integrals with all permutation images populated.
pub fn parse_integral_file(text: &str) -> Result<MolecularIntegrals, ChemioError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header, _) = parse_header(&mut lines)?;
    let n = header.norb;
    let mut ints = MolecularIntegrals::zeros(n, header.nelec)?;
    ints.ms2 = header.ms2;

    let mut seen_h = vec![false; n * n];
    let mut seen_v = vec![false; n.pow(4)];
    let mut seen_core = false;

    for (no, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(parse_err(no, format!("expected 5 fields, found {}", fields.len())));
        }
        let value = parse_value(fields[0])
            .ok_or_else(|| parse_err(no, format!("invalid value `{}`", fields[0])))?;
        let mut idx = [0usize; 4];
        for (slot, tok) in idx.iter_mut().zip(&fields[1..]) {
            let i: usize = tok
                .parse()
                .map_err(|_| parse_err(no, format!("invalid index `{tok}`")))?;
            if i > n {
                return Err(parse_err(no, format!("index {i} exceeds NORB={n}")));
            }
            *slot = i;
        }
        let check = |seen: bool, old: f64| -> Result<(), ChemioError> {
            if seen && (old - value).abs() > DUPLICATE_TOLERANCE {
                Err(ChemioError::Integrity {
                    line: no,
                    message: format!("conflicting duplicate: {old} vs {value}"),
                })
            } else {
                Ok(())
            }
        };
        match idx {
            [0, 0, 0, 0] => {
                check(seen_core, ints.core_energy)?;
                if !seen_core {
                    ints.core_energy = value;
                    seen_core = true;
                }
            }
            [_, 0, 0, 0] => {} // orbital energy
            [i, j, 0, 0] if i > 0 && j > 0 => {
                let (p, q) = (i - 1, j - 1);
                let key = p.min(q) * n + p.max(q);
                check(seen_h[key], ints.h(p, q))?;
                if !seen_h[key] {
                    ints.set_h(p, q, value);
                    seen_h[key] = true;
                }
            }
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                let (p, q, r, s) = (i - 1, j - 1, k - 1, l - 1);
                let key = canonical_v_key(p, q, r, s, n);
                check(seen_v[key], ints.v(p, q, r, s))?;
                if !seen_v[key] {
                    ints.set_v(p, q, r, s, value);
                    seen_v[key] = true;
                }
            }
            _ => {
                return Err(parse_err(
                    no,
                    format!("index pattern {idx:?} is not a valid integral class"),
                ))
            }
        }
    }
    Ok(ints)
}

fn canonical_v_key(p: usize, q: usize, r: usize, s: usize, n: usize) -> usize {
    let pq = (p.max(q), p.min(q));
    let rs = (r.max(s), r.min(s));
    let (a, b) = if pq >= rs { (pq, rs) } else { (rs, pq) };
    ((a.0 * n + a.1) * n + b.0) * n + b.1
}

/// Writes integrals as FCIDUMP text; only the unique nonzero entries are
/// emitted, values with 17 significant digits so that reparsing is exact.
pub fn serialize_integral_file(ints: &MolecularIntegrals) -> String {
    let n = ints.n_orbitals();
    let mut out = String::new();
    let orbsym = vec!["1"; n].join(",");
    let _ = writeln!(
        out,
        " &FCI NORB={n},NELEC={},MS2={},\n  ORBSYM={orbsym},\n  ISYM=1,\n &END",
        ints.n_electrons, ints.ms2
    );
    let mut emit = |value: f64, i: usize, j: usize, k: usize, l: usize| {
        if value != 0.0 {
            let _ = writeln!(out, "{value:>25.16e} {i:>4} {j:>4} {k:>4} {l:>4}");
        }
    };
    for p in 0..n {
        for q in 0..=p {
            for r in 0..n {
                for s in 0..=r {
                    if p * (p + 1) / 2 + q >= r * (r + 1) / 2 + s {
                        emit(ints.v(p, q, r, s), p + 1, q + 1, r + 1, s + 1);
                    }
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..=p {
            emit(ints.h(p, q), p + 1, q + 1, 0, 0);
        }
    }
    let _ = writeln!(out, "{:>25.16e} {:>4} {:>4} {:>4} {:>4}", ints.core_energy, 0, 0, 0, 0);
    out
}
