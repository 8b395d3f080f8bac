//! A minimal s-expression reader: parenthesized lists, bare atoms and
//! double-quoted strings with `\"` and `\\` escapes. `;` starts a comment
//! running to the end of the line.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    Str(String),
    List(Vec<Sexp>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexpError {
    #[error("line {line}: unexpected `)`")]
    UnexpectedClose { line: usize },
    #[error("line {line}: unclosed `(`")]
    Unclosed { line: usize },
    #[error("line {line}: unterminated string")]
    UnterminatedString { line: usize },
    #[error("line {line}: bad escape `\\{ch}`")]
    BadEscape { line: usize, ch: char },
}

impl Sexp {
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Sexp::Str(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(l) => Some(l),
            _ => None,
        }
    }
}

impl std::fmt::Display for Sexp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::Str(s) => {
                f.write_str("\"")?;
                for c in s.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
            Sexp::List(l) => {
                f.write_str("(")?;
                for (i, x) in l.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// All top-level expressions in `text`.
pub fn parse(text: &str) -> Result<Vec<Sexp>, SexpError> {
    // stack of open lists with the line each was opened on
    let mut stack: Vec<(Vec<Sexp>, usize)> = vec![(Vec::new(), 0)];
    let mut line = 1;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\n' => line += 1,
            c if c.is_whitespace() => {}
            ';' => while chars.next_if(|&c| c != '\n').is_some() {},
            '(' => stack.push((Vec::new(), line)),
            ')' => {
                if stack.len() == 1 {
                    return Err(SexpError::UnexpectedClose { line });
                }
                let (done, _) = stack.pop().expect("checked above");
                stack.last_mut().expect("root").0.push(Sexp::List(done));
            }
            '"' => {
                let start = line;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => return Err(SexpError::UnterminatedString { line: start }),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(ch @ ('"' | '\\')) => s.push(ch),
                            Some(ch) => return Err(SexpError::BadEscape { line, ch }),
                            None => return Err(SexpError::UnterminatedString { line: start }),
                        },
                        Some(ch) => {
                            if ch == '\n' {
                                line += 1;
                            }
                            s.push(ch);
                        }
                    }
                }
                stack.last_mut().expect("root").0.push(Sexp::Str(s));
            }
            c => {
                let mut a = String::from(c);
                while let Some(ch) =
                    chars.next_if(|&ch| !ch.is_whitespace() && !matches!(ch, '(' | ')' | '"' | ';'))
                {
                    a.push(ch);
                }
                stack.last_mut().expect("root").0.push(Sexp::Atom(a));
            }
        }
    }
    if stack.len() > 1 {
        return Err(SexpError::Unclosed { line: stack.last().expect("non-empty").1 });
    }
    Ok(stack.pop().expect("root").0)
}
