use std::collections::HashSet;

use super::{ModelError, PlaceSpec, PtegModel};

fn err(line: usize, message: impl Into<String>) -> ModelError {
    ModelError::Parse {
        line,
        message: message.into(),
    }
}

fn check_ident(line: usize, what: &str, s: &str) -> Result<(), ModelError> {
    let ok_char = |c: char| c.is_ascii_alphanumeric() || "_-.#~".contains(c);
    if s.starts_with('#') || !s.chars().all(ok_char) {
        return Err(err(line, format!("invalid {what} name `{s}`")));
    }
    Ok(())
}

fn parse_time(line: usize, field: &str, s: &str, allow_inf: bool) -> Result<f64, ModelError> {
    if allow_inf && (s == "inf" || s == "+inf") {
        return Ok(f64::INFINITY);
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(err(
            line,
            format!("{field}: expected a number, found `{s}`"),
        )),
    }
}

/// Parses the line-oriented model format:
///
/// ```text
/// pteg <name>
/// transitions t1 t2 ... tn
/// place <name> from <t> to <t> tokens <k> interval <tmin> <tmax|inf>
/// ```
///
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_model(text: &str) -> Result<PtegModel, ModelError> {
    let mut name = None;
    let mut transitions: Option<Vec<String>> = None;
    let mut places = Vec::new();
    let mut place_names = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "pteg" => {
                if name.is_some() {
                    return Err(err(line, "duplicate `pteg` header"));
                }
                if fields.len() != 2 {
                    return Err(err(line, "expected `pteg <name>`"));
                }
                check_ident(line, "model", fields[1])?;
                name = Some(fields[1].to_string());
            }
            "transitions" => {
                if name.is_none() {
                    return Err(err(line, "`pteg <name>` header must come first"));
                }
                if transitions.is_some() {
                    return Err(err(line, "duplicate `transitions` line"));
                }
                if fields.len() < 2 {
                    return Err(err(line, "empty transition list"));
                }
                let mut seen = HashSet::new();
                for t in &fields[1..] {
                    check_ident(line, "transition", t)?;
                    if !seen.insert(*t) {
                        return Err(err(line, format!("duplicate transition `{t}`")));
                    }
                }
                transitions = Some(fields[1..].iter().map(|s| s.to_string()).collect());
            }
            "place" => {
                let Some(ts) = transitions.as_ref() else {
                    return Err(err(line, "`transitions` must precede places"));
                };
                if fields.len() != 11
                    || fields[2] != "from"
                    || fields[4] != "to"
                    || fields[6] != "tokens"
                    || fields[8] != "interval"
                {
                    return Err(err(
                        line,
                        "expected `place <name> from <t> to <t> tokens <k> interval <tmin> <tmax>`",
                    ));
                }
                let pname = fields[1];
                check_ident(line, "place", pname)?;
                if !place_names.insert(pname.to_string()) {
                    return Err(err(line, format!("duplicate place `{pname}`")));
                }
                for t in [fields[3], fields[5]] {
                    if !ts.iter().any(|x| x == t) {
                        return Err(err(
                            line,
                            format!("place `{pname}` references unknown transition `{t}`"),
                        ));
                    }
                }
                let tokens: u32 = fields[7].parse().map_err(|_| {
                    err(
                        line,
                        format!(
                            "tokens: expected a nonnegative integer, found `{}`",
                            fields[7]
                        ),
                    )
                })?;
                places.push(PlaceSpec {
                    name: pname.to_string(),
                    from: fields[3].to_string(),
                    to: fields[5].to_string(),
                    tokens,
                    tmin: parse_time(line, "tmin", fields[9], false)?,
                    tmax: parse_time(line, "tmax", fields[10], true)?,
                });
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }

    let last = text.lines().count().max(1);
    let name = name.ok_or_else(|| err(last, "missing `pteg <name>` header"))?;
    let transitions = transitions.ok_or_else(|| err(last, "missing `transitions` line"))?;
    Ok(PtegModel {
        name,
        transitions,
        places,
    })
}
