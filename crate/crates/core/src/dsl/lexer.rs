use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Identifier starting with an uppercase letter.
    Rel(String),
    /// Identifier starting with a lowercase letter (keywords included).
    Lower(String),
    Quoted(String),
    Digits(String),
    Null(String),
    LParen,
    RParen,
    /// `,` or `&`
    Comma,
    Arrow,
    Dot,
    Equals,
    /// `;` or a line break
    Sep,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Rel(s) | Tok::Lower(s) => format!("`{s}`"),
            Tok::Quoted(s) => format!("`'{s}'`"),
            Tok::Digits(s) => format!("`{s}`"),
            Tok::Null(s) => format!("`?{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Sep => "end of item".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `text` into tokens; `#` starts a comment running to end of line.
pub(crate) fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let lineno = li + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line: lineno, col });
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                '(' => {
                    push(&mut out, Tok::LParen);
                    i += 1;
                }
                ')' => {
                    push(&mut out, Tok::RParen);
                    i += 1;
                }
                ',' | '&' => {
                    push(&mut out, Tok::Comma);
                    i += 1;
                }
                '.' => {
                    push(&mut out, Tok::Dot);
                    i += 1;
                }
                '=' => {
                    push(&mut out, Tok::Equals);
                    i += 1;
                }
                ';' => {
                    push(&mut out, Tok::Sep);
                    i += 1;
                }
                '-' if chars.get(i + 1) == Some(&'>') => {
                    push(&mut out, Tok::Arrow);
                    i += 2;
                }
                '\'' => {
                    let start = i + 1;
                    let mut j = start;
                    while j < chars.len() && ident_char(chars[j]) {
                        j += 1;
                    }
                    if j == start || chars.get(j) != Some(&'\'') {
                        return Err(ParseError::new(lineno, col, "malformed quoted constant"));
                    }
                    push(&mut out, Tok::Quoted(chars[start..j].iter().collect()));
                    i = j + 1;
                }
                '?' => {
                    let start = i + 1;
                    let mut j = start;
                    while j < chars.len() && ident_char(chars[j]) {
                        j += 1;
                    }
                    if j == start {
                        return Err(ParseError::new(lineno, col, "`?` must be followed by a null label"));
                    }
                    push(&mut out, Tok::Null(chars[start..j].iter().collect()));
                    i = j;
                }
                c if c.is_ascii_digit() => {
                    let mut j = i;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j < chars.len() && ident_char(chars[j]) {
                        return Err(ParseError::new(lineno, col, "identifiers cannot start with a digit"));
                    }
                    push(&mut out, Tok::Digits(chars[i..j].iter().collect()));
                    i = j;
                }
                c if c.is_ascii_alphabetic() => {
                    let mut j = i;
                    while j < chars.len() && ident_char(chars[j]) {
                        j += 1;
                    }
                    // Trailing primes are allowed on variables: x'
                    if c.is_ascii_lowercase() {
                        while j < chars.len()
                            && chars[j] == '\''
                            && !chars.get(j + 1).is_some_and(|&n| ident_char(n))
                        {
                            j += 1;
                        }
                    }
                    let word: String = chars[i..j].iter().collect();
                    if c.is_ascii_uppercase() {
                        push(&mut out, Tok::Rel(word));
                    } else {
                        push(&mut out, Tok::Lower(word));
                    }
                    i = j;
                }
                other => {
                    return Err(ParseError::new(lineno, col, format!("unexpected character `{other}`")));
                }
            }
        }
        out.push(Spanned {
            tok: Tok::Sep,
            line: lineno,
            col: chars.len() + 1,
        });
    }
    let line = text.lines().count().max(1);
    out.push(Spanned { tok: Tok::Eof, line, col: 1 });
    Ok(out)
}
