//! Model files.
//!
//! ```text
//! size=2 mode=kleene
//! join:
//! 0 1
//! 1 1
//! comp:
//! 0 0
//! 0 1
//! one=1 zero=0
//! star: 1 1
//! ```
//!
//! Tables are row-major and may be split over lines freely. `dstar:` takes
//! `-` for undefined entries. `#` starts a comment.

use mkl_core::algebra::{FiniteAlgebra, Mode};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("missing `{0}`")]
    Missing(&'static str),
    #[error("unexpected token `{0}`")]
    Token(String),
    #[error("unknown mode `{0}`")]
    Mode(String),
    #[error("`{field}` has {found} entries, expected {expected}")]
    Length { field: &'static str, expected: usize, found: usize },
    #[error("`{field}` entry {value} is out of range for size {size}")]
    Range { field: &'static str, value: usize, size: usize },
}

fn number(tok: &str) -> Result<usize, ModelError> {
    tok.parse().map_err(|_| ModelError::Token(tok.into()))
}

/// Reads a model and its mode. A missing `star:` is computed; a missing
/// `dstar:` in guarded mode is the guarded dual star.
pub fn parse_model(text: &str) -> Result<(FiniteAlgebra, Mode), ModelError> {
    let toks: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .collect();
    let mut size = None;
    let mut mode = None;
    let mut one = None;
    let mut zero = None;
    let mut tables: [Option<Vec<&str>>; 4] = Default::default();
    const TABLES: [&str; 4] = ["join:", "comp:", "star:", "dstar:"];
    let mut i = 0;
    while i < toks.len() {
        let t = toks[i];
        i += 1;
        if let Some(k) = TABLES.iter().position(|&x| x == t) {
            let start = i;
            while i < toks.len() && !toks[i].contains(['=', ':']) {
                i += 1;
            }
            tables[k] = Some(toks[start..i].to_vec());
            continue;
        }
        match t.split_once('=') {
            Some(("size", v)) => size = Some(number(v)?),
            Some(("mode", v)) => mode = Some(Mode::from_name(v).ok_or(ModelError::Mode(v.into()))?),
            Some(("one", v)) => one = Some(number(v)?),
            Some(("zero", v)) => zero = Some(number(v)?),
            _ => return Err(ModelError::Token(t.into())),
        }
    }
    let n = size.ok_or(ModelError::Missing("size"))?;
    let mode = mode.ok_or(ModelError::Missing("mode"))?;
    let [join, comp, star, dstar] = tables;
    let vector = |field: &'static str,
                  toks: &[&str],
                  len: usize|
     -> Result<Vec<Option<usize>>, ModelError> {
        if toks.len() != len {
            return Err(ModelError::Length { field, expected: len, found: toks.len() });
        }
        toks.iter()
            .map(|t| match *t {
                "-" if field == "dstar" => Ok(None),
                t => match number(t)? {
                    v if v < n => Ok(Some(v)),
                    value => Err(ModelError::Range { field, value, size: n }),
                },
            })
            .collect()
    };
    let total = |v: Vec<Option<usize>>| {
        v.into_iter().map(|x| x.expect("only dstar has holes")).collect::<Vec<_>>()
    };
    let join = total(vector("join", &join.ok_or(ModelError::Missing("join:"))?, n * n)?);
    let comp = total(vector("comp", &comp.ok_or(ModelError::Missing("comp:"))?, n * n)?);
    let element = |field: &'static str, v: Option<usize>| match v {
        None => Err(ModelError::Missing(field)),
        Some(value) if value >= n => Err(ModelError::Range { field, value, size: n }),
        Some(value) => Ok(value),
    };
    let mut m = FiniteAlgebra::new(n, join, comp, element("one", one)?, element("zero", zero)?);
    m = match star {
        Some(s) => {
            m.star = Some(total(vector("star", &s, n)?));
            m
        }
        None => m.with_star(),
    };
    match (dstar, mode) {
        (Some(d), _) => m.dstar = Some(vector("dstar", &d, n)?),
        (None, Mode::MeasurableGuarded) => m = m.with_guarded_dstar(),
        (None, _) => {}
    }
    Ok((m, mode))
}

/// The file text for `m`, ending in a newline.
pub fn render_model(m: &FiniteAlgebra, mode: Mode) -> String {
    let n = m.size;
    let row = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("size={n} mode={}\n", mode.name());
    for (name, t) in [("join", &m.join), ("comp", &m.comp)] {
        out.push_str(name);
        out.push_str(":\n");
        for r in t.chunks(n) {
            out.push_str(&row(r));
            out.push('\n');
        }
    }
    out.push_str(&format!("one={} zero={}\n", m.one, m.zero));
    if let Some(s) = &m.star {
        out.push_str(&format!("star: {}\n", row(s)));
    }
    if let Some(d) = &m.dstar {
        let d: Vec<String> = d.iter().map(|x| x.map_or("-".into(), |v| v.to_string())).collect();
        out.push_str(&format!("dstar: {}\n", d.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mkl_core::algebra::enumerate;

    #[test]
    fn round_trip() {
        let mut ms: Vec<(FiniteAlgebra, Mode)> = enumerate(3, Mode::MeasurableGuarded)
            .unwrap()
            .into_iter()
            .map(|m| (m, Mode::MeasurableGuarded))
            .collect();
        ms.push((FiniteAlgebra::b2(), Mode::Kleene));
        ms.push((FiniteAlgebra::singleton(), Mode::MeasurableLiteral));
        ms.push((FiniteAlgebra::rel(2), Mode::Kleene));
        for (m, mode) in ms {
            let text = render_model(&m, mode);
            assert_eq!(parse_model(&text), Ok((m, mode)), "{text}");
        }
    }

    #[test]
    fn defaults_fill_star_tables() {
        let text = "size=2 mode=guarded join: 0 1 1 1 comp: 0 0 0 1 one=1 zero=0";
        let (m, _) = parse_model(text).unwrap();
        assert_eq!(m, FiniteAlgebra::b2().with_guarded_dstar());
    }

    #[test]
    fn errors() {
        let e = |t| parse_model(t).unwrap_err();
        assert_eq!(e("mode=kleene"), ModelError::Missing("size"));
        assert_eq!(e("size=2 mode=odd"), ModelError::Mode("odd".into()));
        assert_eq!(
            e("size=2 mode=kleene join: 0 1 1 comp: 0 0 0 1 one=1 zero=0"),
            ModelError::Length { field: "join", expected: 4, found: 3 }
        );
        assert_eq!(
            e("size=2 mode=kleene join: 0 1 1 2 comp: 0 0 0 1 one=1 zero=0"),
            ModelError::Range { field: "join", value: 2, size: 2 }
        );
        assert_eq!(e("size=1 mode=kleene join: 0 comp: 0 one=0"), ModelError::Missing("zero"));
    }
}
