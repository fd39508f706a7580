//! Checks a `v` line against a document, with the direct reading of its
//! constraints rather than the propagators.

use cpsolve_xcsp::InstanceDoc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("malformed assignment `{0}`")]
    Malformed(String),
    #[error("unknown variable `{0}`")]
    Unknown(String),
    #[error("variable `{0}` assigned twice")]
    Twice(String),
    #[error("variable `{0}` not assigned")]
    Missing(String),
    #[error("value {1} outside the domain of `{0}`")]
    OutOfDomain(String, i64),
    #[error("constraint {0} ({1}) violated")]
    Violated(usize, &'static str),
}

/// Values from one or more `v` lines (the `v` prefix is optional).
pub fn parse_values(doc: &InstanceDoc, text: &str) -> Result<Vec<i64>, VerifyError> {
    let mut values: Vec<Option<i64>> = vec![None; doc.vars.len()];
    for line in text.lines() {
        let line = line.trim();
        let body = match line.strip_prefix('v') {
            Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => rest,
            _ if line.contains('=') => line,
            _ => continue,
        };
        for tok in body.split_whitespace() {
            let (name, v) = tok.split_once('=').ok_or_else(|| VerifyError::Malformed(tok.to_string()))?;
            let v: i64 = v.parse().map_err(|_| VerifyError::Malformed(tok.to_string()))?;
            let x = doc.var_id(name).ok_or_else(|| VerifyError::Unknown(name.to_string()))?;
            if values[x].replace(v).is_some() {
                return Err(VerifyError::Twice(name.to_string()));
            }
        }
    }
    values
        .iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| VerifyError::Missing(doc.vars[x].name.clone())))
        .collect()
}

pub fn verify(doc: &InstanceDoc, values: &[i64]) -> Result<(), VerifyError> {
    for (info, &v) in doc.vars.iter().zip(values) {
        if info.values.binary_search(&v).is_err() {
            return Err(VerifyError::OutOfDomain(info.name.clone(), v));
        }
    }
    match doc.first_violated(values) {
        Some(i) => Err(VerifyError::Violated(i, doc.ctrs[i].tag())),
        None => Ok(()),
    }
}
