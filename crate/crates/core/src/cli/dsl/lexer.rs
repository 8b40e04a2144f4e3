use super::DslError;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Num(String),
    Ident(String),
    Str(String),
    Sym(char),
    Arrow,
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits DSL text into tokens. Newlines are significant only outside
/// brackets, where they separate items. `#` starts a comment.
pub fn tokenize(src: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut push = |tok: Tok| out.push(Token { tok, line: tl, col: tc });
        match c {
            '\n' => {
                if depth == 0 {
                    push(Tok::Newline);
                }
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '"' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j] != '"' && chars[j] != '\n' {
                    j += 1;
                }
                if j >= chars.len() || chars[j] != '"' {
                    return Err(DslError::Parse { line: tl, col: tc, msg: "unterminated string".into() });
                }
                push(Tok::Str(chars[start..j].iter().collect()));
                col += j + 1 - i;
                i = j + 1;
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                push(Tok::Num(chars[i..j].iter().collect()));
                col += j - i;
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                push(Tok::Ident(chars[i..j].iter().collect()));
                col += j - i;
                i = j;
                continue;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                push(Tok::Arrow);
                i += 2;
                col += 2;
                continue;
            }
            '(' | '[' | '{' => {
                depth += 1;
                push(Tok::Sym(c));
            }
            ')' | ']' | '}' => {
                depth -= 1;
                push(Tok::Sym(c));
            }
            '+' | '-' | '*' | '/' | '^' | ',' | ';' | ':' | '=' | '~' => push(Tok::Sym(c)),
            other => {
                return Err(DslError::Parse { line: tl, col: tc, msg: format!("unexpected character '{other}'") });
            }
        }
        i += 1;
        col += 1;
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}
