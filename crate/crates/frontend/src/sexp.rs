//! Minimal s-expression reader shared by the native formats and the solver
//! config parser. Supports `;` line comments and double-quoted strings.

use crate::FrontendError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    Str(String, Pos),
    List(Vec<Sexp>, Pos),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::Str(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            _ => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            _ => None,
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

#[derive(Debug)]
enum Token {
    Open(Pos),
    Close(Pos),
    Atom(String, Pos),
    Str(String, Pos),
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn tokens(mut self) -> Result<Vec<Token>, FrontendError> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            match c {
                ';' => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                c if c.is_whitespace() => {
                    self.bump();
                }
                '(' => {
                    out.push(Token::Open(self.pos()));
                    self.bump();
                }
                ')' => {
                    out.push(Token::Close(self.pos()));
                    self.bump();
                }
                '"' => {
                    let pos = self.pos();
                    self.bump();
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some(c) => s.push(c),
                                None => {
                                    return Err(err(pos, "unterminated string"));
                                }
                            },
                            Some(c) => s.push(c),
                            None => return Err(err(pos, "unterminated string")),
                        }
                    }
                    out.push(Token::Str(s, pos));
                }
                _ => {
                    let pos = self.pos();
                    let mut s = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if c.is_whitespace() || c == '(' || c == ')' || c == ';' || c == '"' {
                            break;
                        }
                        s.push(c);
                        self.bump();
                    }
                    out.push(Token::Atom(s, pos));
                }
            }
        }
        Ok(out)
    }
}

fn err(pos: Pos, msg: impl Into<String>) -> FrontendError {
    FrontendError::Parse {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

/// Parse a sequence of top-level s-expressions.
pub fn parse_sexps(text: &str) -> Result<Vec<Sexp>, FrontendError> {
    let tokens = Lexer::new(text).tokens()?;
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    for tok in tokens {
        match tok {
            Token::Open(p) => stack.push((Vec::new(), p)),
            Token::Close(p) => {
                let (items, open_pos) = stack
                    .pop()
                    .ok_or_else(|| err(p, "unbalanced closing parenthesis"))?;
                let sexp = Sexp::List(items, open_pos);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(sexp),
                    None => top.push(sexp),
                }
            }
            Token::Atom(a, p) => {
                let sexp = Sexp::Atom(a, p);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(sexp),
                    None => top.push(sexp),
                }
            }
            Token::Str(s, p) => {
                let sexp = Sexp::Str(s, p);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(sexp),
                    None => top.push(sexp),
                }
            }
        }
    }
    if let Some((_, pos)) = stack.pop() {
        return Err(err(pos, "unbalanced opening parenthesis"));
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_lists_and_comments() {
        let out = parse_sexps("; header\n(a (b c) \"d e\") f").unwrap();
        assert_eq!(out.len(), 2);
        let items = out[0].list().unwrap();
        assert_eq!(items[0].atom(), Some("a"));
        assert!(matches!(&items[2], Sexp::Str(s, _) if s == "d e"));
        assert_eq!(out[1].atom(), Some("f"));
    }

    #[test]
    fn unbalanced_is_an_error_with_position() {
        match parse_sexps("(a (b)") {
            Err(FrontendError::Parse { line: 1, col: 1, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        assert!(parse_sexps("a)").is_err());
    }
}
