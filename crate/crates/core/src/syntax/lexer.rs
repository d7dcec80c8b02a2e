use crate::error::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Str(String),
    Int(u64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Dot,
    Comma,
    Semi,
    Define,
    Arrow,
    Cmp(&'static str),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Int(n) => format!("number {n}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Define => "`:=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Cmp(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
    /// Byte offset of the token start.
    pub offset: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);

    while let Some(&(start, ch)) = chars.peek() {
        let span_at = |len: usize| SourceSpan { line, column: col, length: len };
        if ch == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if ch == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            let len = s.len();
            out.push(Token { tok: Tok::Ident(s), span: span_at(len), offset: start });
            col += len;
            continue;
        }
        if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            let len = s.len();
            let n = s.parse::<u64>().map_err(|_| ParseError {
                span: span_at(len),
                expected: vec!["a number below 2^64".into()],
                found: format!("number {s}"),
            })?;
            out.push(Token { tok: Tok::Int(n), span: span_at(len), offset: start });
            col += len;
            continue;
        }
        if ch == '"' {
            let span_line = line;
            let span_col = col;
            chars.next();
            col += 1;
            let mut s = String::new();
            let mut closed = false;
            let mut width = 1;
            while let Some((_, c)) = chars.next() {
                width += 1;
                col += 1;
                match c {
                    '"' => {
                        closed = true;
                        break;
                    }
                    '\\' => {
                        let Some((_, esc)) = chars.next() else { break };
                        width += 1;
                        col += 1;
                        s.push(esc);
                    }
                    '\n' => break,
                    c => s.push(c),
                }
            }
            if !closed {
                return Err(ParseError {
                    span: SourceSpan { line: span_line, column: span_col, length: 1 },
                    expected: vec!["closing `\"`".into()],
                    found: "unterminated string".into(),
                });
            }
            out.push(Token {
                tok: Tok::Str(s),
                span: SourceSpan { line: span_line, column: span_col, length: width },
                offset: start,
            });
            continue;
        }

        chars.next();
        let next = chars.peek().map(|&(_, c)| c);
        let (tok, len) = match (ch, next) {
            (':', Some('=')) => (Tok::Define, 2),
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('<', Some('=')) => (Tok::Cmp("<="), 2),
            ('>', Some('=')) => (Tok::Cmp(">="), 2),
            ('<', _) => (Tok::Cmp("<"), 1),
            ('>', _) => (Tok::Cmp(">"), 1),
            ('=', _) => (Tok::Cmp("="), 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            ('.', _) => (Tok::Dot, 1),
            (',', _) => (Tok::Comma, 1),
            (';', _) => (Tok::Semi, 1),
            _ => {
                return Err(ParseError {
                    span: span_at(1),
                    expected: vec!["a token".into()],
                    found: format!("character `{ch}`"),
                })
            }
        };
        if len == 2 {
            chars.next();
        }
        out.push(Token { tok, span: span_at(len), offset: start });
        col += len;
    }

    out.push(Token {
        tok: Tok::Eof,
        span: SourceSpan { line, column: col, length: 0 },
        offset: text.len(),
    });
    Ok(out)
}
