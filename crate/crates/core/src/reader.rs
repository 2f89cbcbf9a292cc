//! Lexing and parsing of Remora source text into surface syntax trees.
//!
//! The reader keeps square brackets and parentheses distinct, folds the
//! Unicode keyword spellings (`λ`, `Tλ`, `Iλ`, `→`, `∀`, `Π`, `Σ`) into their
//! ASCII equivalents, and recognises the reranking prefix `~(r …)f`.

use std::fmt;

use crate::error::{Error, ErrorKind, Pos, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Symbol,
    Int,
    Float,
    Bool,
    Char,
    Str,
    Tilde,
}

/// A lexeme. `text` holds the canonical spelling: keyword aliases are
/// already normalised, `Str` holds the decoded contents and `Char` holds the
/// single decoded character.
#[derive(Debug, Clone)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub pos: Pos,
}

impl PartialEq for Token {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.text == other.text
    }
}

impl Token {
    pub fn new(kind: TokenKind, text: impl Into<String>, pos: Pos) -> Self {
        Token { kind, text: text.into(), pos }
    }

    pub fn is_symbol(&self, name: &str) -> bool {
        self.kind == TokenKind::Symbol && self.text == name
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Str => {
                f.write_str("\"")?;
                for c in self.text.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        c => write!(f, "{c}")?,
                    }
                }
                f.write_str("\"")
            }
            TokenKind::Char => {
                let c = self.text.chars().next().unwrap_or(' ');
                write!(f, "#\\{}", char_name(c))
            }
            _ => f.write_str(&self.text),
        }
    }
}

const NAMED_CHARS: [(&str, char); 3] = [("space", ' '), ("newline", '\n'), ("tab", '\t')];

/// The spelling of a character after `#\`.
pub fn char_name(c: char) -> String {
    NAMED_CHARS.iter().find(|(_, ch)| *ch == c).map(|(name, _)| name.to_string()).unwrap_or_else(|| c.to_string())
}

fn canonical_symbol(text: &str) -> &str {
    match text {
        "λ" => "fn",
        "Tλ" => "t-fn",
        "Iλ" => "i-fn",
        "→" => "->",
        "∀" => "Forall",
        "Π" => "Pi",
        "Σ" => "Sigma",
        other => other,
    }
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | ';' | '"' | '~')
}

// The backtick is reserved for names the desugarer invents.
fn is_illegal(c: char) -> bool {
    (c.is_control() && !c.is_whitespace()) || c == '`' || c == '\u{FEFF}'
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn pos(&self) -> Pos {
        Pos::new(self.line, self.column)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn atom_text(&mut self) -> Result<String> {
        let mut text = String::new();
        while let Some(c) = self.peek() {
            if is_delimiter(c) {
                break;
            }
            if is_illegal(c) {
                return Err(Error::at(
                    ErrorKind::IllegalCodepoint,
                    self.pos(),
                    format!("illegal character U+{:04X}", c as u32),
                ));
            }
            text.push(c);
            self.bump();
        }
        Ok(text)
    }

    fn string(&mut self, start: Pos) -> Result<Token> {
        self.bump();
        let mut text = String::new();
        loop {
            match self.bump() {
                None => return Err(Error::at(ErrorKind::UnterminatedString, start, "string literal is never closed")),
                Some('"') => break,
                Some('\\') => match self.bump() {
                    Some(c @ ('"' | '\\')) => text.push(c),
                    Some(c) => {
                        return Err(Error::at(ErrorKind::BadCharLiteral, start, format!("unknown string escape \\{c}")))
                    }
                    None => {
                        return Err(Error::at(ErrorKind::UnterminatedString, start, "string literal is never closed"))
                    }
                },
                Some(c) if is_illegal(c) => {
                    return Err(Error::at(
                        ErrorKind::IllegalCodepoint,
                        start,
                        format!("illegal character U+{:04X} in string", c as u32),
                    ))
                }
                Some(c) => text.push(c),
            }
        }
        Ok(Token::new(TokenKind::Str, text, start))
    }

    fn hash(&mut self, start: Pos) -> Result<Token> {
        self.bump();
        if self.peek() == Some('\\') {
            self.bump();
            let first = match self.bump() {
                Some(c) if !c.is_whitespace() && !is_illegal(c) => c,
                _ => return Err(Error::at(ErrorKind::BadCharLiteral, start, "missing character after #\\")),
            };
            let mut name = first.to_string();
            if first.is_alphabetic() {
                name.push_str(&self.atom_text()?);
            }
            if name.chars().count() == 1 {
                return Ok(Token::new(TokenKind::Char, name, start));
            }
            return match NAMED_CHARS.iter().find(|(n, _)| *n == name) {
                Some((_, c)) => Ok(Token::new(TokenKind::Char, c.to_string(), start)),
                None => Err(Error::at(ErrorKind::BadCharLiteral, start, format!("unknown character name #\\{name}"))),
            };
        }
        let rest = self.atom_text()?;
        match rest.as_str() {
            "t" | "f" => Ok(Token::new(TokenKind::Bool, format!("#{rest}"), start)),
            _ => Err(Error::at(ErrorKind::MalformedForm, start, format!("unknown # syntax #{rest}"))),
        }
    }
}

fn classify_numeral(text: &str) -> Option<TokenKind> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    let (whole, frac) = match digits.split_once('.') {
        Some((w, f)) => (w, Some(f)),
        None => (digits, None),
    };
    if whole.is_empty() || !whole.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    match frac {
        None => Some(TokenKind::Int),
        Some(f) if f.bytes().all(|b| b.is_ascii_digit()) => Some(TokenKind::Float),
        Some(_) => None,
    }
}

/// Split source text into tokens, dropping whitespace and `;` comments.
pub fn tokenize(source: &str) -> Result<Vec<Token>> {
    let mut lx = Lexer { chars: source.chars().peekable(), line: 1, column: 1 };
    let mut tokens = Vec::new();
    while let Some(c) = lx.peek() {
        let pos = lx.pos();
        let simple = match c {
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            '[' => Some(TokenKind::LBracket),
            ']' => Some(TokenKind::RBracket),
            '~' => Some(TokenKind::Tilde),
            _ => None,
        };
        if let Some(kind) = simple {
            lx.bump();
            tokens.push(Token::new(kind, c.to_string(), pos));
            continue;
        }
        if c.is_whitespace() {
            lx.bump();
            continue;
        }
        if c == ';' {
            while let Some(c) = lx.peek() {
                if c == '\n' {
                    break;
                }
                lx.bump();
            }
            continue;
        }
        if is_illegal(c) {
            return Err(Error::at(ErrorKind::IllegalCodepoint, pos, format!("illegal character U+{:04X}", c as u32)));
        }
        let token = match c {
            '"' => lx.string(pos)?,
            '#' => lx.hash(pos)?,
            _ => {
                let text = lx.atom_text()?;
                match classify_numeral(&text) {
                    Some(kind) => Token::new(kind, text, pos),
                    None => Token::new(TokenKind::Symbol, canonical_symbol(&text), pos),
                }
            }
        };
        tokens.push(token);
    }
    Ok(tokens)
}

/// A node of the surface syntax tree.
#[derive(Debug, Clone)]
pub enum SurfaceForm {
    Paren { items: Vec<SurfaceForm>, pos: Pos },
    Bracket { items: Vec<SurfaceForm>, pos: Pos },
    Leaf(Token),
    Rerank { ranks: Vec<SurfaceForm>, target: Box<SurfaceForm>, pos: Pos },
}

impl PartialEq for SurfaceForm {
    fn eq(&self, other: &Self) -> bool {
        use SurfaceForm::*;
        match (self, other) {
            (Paren { items: a, .. }, Paren { items: b, .. }) => a == b,
            (Bracket { items: a, .. }, Bracket { items: b, .. }) => a == b,
            (Leaf(a), Leaf(b)) => a == b,
            (Rerank { ranks: ra, target: ta, .. }, Rerank { ranks: rb, target: tb, .. }) => ra == rb && ta == tb,
            _ => false,
        }
    }
}

impl SurfaceForm {
    pub fn pos(&self) -> Pos {
        match self {
            SurfaceForm::Paren { pos, .. } | SurfaceForm::Bracket { pos, .. } | SurfaceForm::Rerank { pos, .. } => *pos,
            SurfaceForm::Leaf(tok) => tok.pos,
        }
    }

    pub fn symbol(&self) -> Option<&str> {
        match self {
            SurfaceForm::Leaf(tok) if tok.kind == TokenKind::Symbol => Some(&tok.text),
            _ => None,
        }
    }

    pub fn is_symbol(&self, name: &str) -> bool {
        self.symbol() == Some(name)
    }

    pub fn leaf(&self) -> Option<&Token> {
        match self {
            SurfaceForm::Leaf(tok) => Some(tok),
            _ => None,
        }
    }

    pub fn sym(name: impl Into<String>) -> Self {
        SurfaceForm::Leaf(Token::new(TokenKind::Symbol, name, Pos::default()))
    }

    pub fn atom(kind: TokenKind, text: impl Into<String>) -> Self {
        SurfaceForm::Leaf(Token::new(kind, text, Pos::default()))
    }

    pub fn int(n: impl fmt::Display) -> Self {
        SurfaceForm::atom(TokenKind::Int, n.to_string())
    }

    pub fn paren(items: Vec<SurfaceForm>) -> Self {
        SurfaceForm::Paren { items, pos: Pos::default() }
    }

    pub fn bracket(items: Vec<SurfaceForm>) -> Self {
        SurfaceForm::Bracket { items, pos: Pos::default() }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, open: &str, items: &[SurfaceForm], close: &str) -> fmt::Result {
    f.write_str(open)?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str(close)
}

impl fmt::Display for SurfaceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceForm::Paren { items, .. } => write_list(f, "(", items, ")"),
            SurfaceForm::Bracket { items, .. } => write_list(f, "[", items, "]"),
            SurfaceForm::Leaf(tok) => write!(f, "{tok}"),
            SurfaceForm::Rerank { ranks, target, .. } => {
                f.write_str("~")?;
                write_list(f, "(", ranks, ")")?;
                write!(f, "{target}")
            }
        }
    }
}

struct Parser {
    tokens: std::vec::IntoIter<Token>,
    peeked: Option<Token>,
}

impl Parser {
    fn peek(&mut self) -> Option<&Token> {
        if self.peeked.is_none() {
            self.peeked = self.tokens.next();
        }
        self.peeked.as_ref()
    }

    fn next(&mut self) -> Option<Token> {
        self.peek();
        self.peeked.take()
    }

    fn form(&mut self) -> Result<Option<SurfaceForm>> {
        let Some(tok) = self.next() else {
            return Ok(None);
        };
        let form = match tok.kind {
            TokenKind::LParen => SurfaceForm::Paren { items: self.list(&tok, TokenKind::RParen)?, pos: tok.pos },
            TokenKind::LBracket => SurfaceForm::Bracket { items: self.list(&tok, TokenKind::RBracket)?, pos: tok.pos },
            TokenKind::RParen | TokenKind::RBracket => {
                return Err(Error::at(ErrorKind::UnbalancedDelimiter, tok.pos, format!("unexpected `{}`", tok.text)))
            }
            TokenKind::Tilde => {
                let dangling = |pos| {
                    Error::at(ErrorKind::DanglingRerank, pos, "`~` must be followed by a rank list and a function")
                };
                let ranks = match self.form() {
                    Ok(Some(SurfaceForm::Paren { items, .. })) | Ok(Some(SurfaceForm::Bracket { items, .. })) => items,
                    Ok(_) => return Err(dangling(tok.pos)),
                    Err(e) => return Err(e),
                };
                if ranks.is_empty() {
                    return Err(dangling(tok.pos));
                }
                let target = self.form()?.ok_or_else(|| dangling(tok.pos))?;
                SurfaceForm::Rerank { ranks, target: Box::new(target), pos: tok.pos }
            }
            _ => SurfaceForm::Leaf(tok),
        };
        Ok(Some(form))
    }

    fn list(&mut self, open: &Token, close: TokenKind) -> Result<Vec<SurfaceForm>> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                None => {
                    return Err(Error::at(
                        ErrorKind::UnbalancedDelimiter,
                        open.pos,
                        format!("`{}` is never closed", open.text),
                    ))
                }
                Some(t) if t.kind == close => {
                    self.next();
                    return Ok(items);
                }
                Some(t) if matches!(t.kind, TokenKind::RParen | TokenKind::RBracket) => {
                    return Err(Error::at(
                        ErrorKind::MismatchedDelimiter,
                        t.pos,
                        format!("`{}` opened at {} is closed by `{}`", open.text, open.pos, t.text),
                    ))
                }
                Some(_) => {
                    if let Some(form) = self.form()? {
                        items.push(form);
                    }
                }
            }
        }
    }
}

/// Assemble a token stream into top-level forms.
pub fn parse(tokens: Vec<Token>) -> Result<Vec<SurfaceForm>> {
    let mut parser = Parser { tokens: tokens.into_iter(), peeked: None };
    let mut forms = Vec::new();
    while let Some(form) = parser.form()? {
        forms.push(form);
    }
    Ok(forms)
}

/// `tokenize` followed by `parse`.
pub fn read(source: &str) -> Result<Vec<SurfaceForm>> {
    parse(tokenize(source)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn lexes_application() {
        use TokenKind::*;
        assert_eq!(kinds("(+ 3 4)"), vec![LParen, Symbol, Int, Int, RParen]);
    }

    #[test]
    fn negative_numerals_are_single_tokens() {
        let toks = tokenize("[0 5 -7 -22 91 100]").unwrap();
        assert_eq!(toks.len(), 8);
        let ints: Vec<_> = toks[1..7].iter().map(|t| (t.kind, t.text.as_str())).collect();
        assert_eq!(ints[2], (TokenKind::Int, "-7"));
        assert_eq!(ints[3], (TokenKind::Int, "-22"));
        assert!(ints.iter().all(|(k, _)| *k == TokenKind::Int));
    }

    #[test]
    fn string_is_one_token() {
        let toks = tokenize("\"aeiou\"").unwrap();
        assert_eq!(toks, vec![Token::new(TokenKind::Str, "aeiou", Pos::default())]);
    }

    #[test]
    fn string_escapes() {
        let toks = tokenize(r#""a\"b\\c""#).unwrap();
        assert_eq!(toks[0].text, "a\"b\\c");
        assert_eq!(tokenize("\"abc").unwrap_err().kind, ErrorKind::UnterminatedString);
    }

    #[test]
    fn symbol_interiors() {
        for s in ["reduce/zero", "char=?", "v*m", "@s", "d-1", "indices-of/2", "-", "->"] {
            let toks = tokenize(s).unwrap();
            assert_eq!(toks.len(), 1, "{s}");
            assert_eq!(toks[0].kind, TokenKind::Symbol, "{s}");
            assert_eq!(toks[0].text, s);
        }
    }

    #[test]
    fn floats_need_a_point() {
        assert_eq!(
            kinds("3.14159 0.0 17 -2.5"),
            vec![TokenKind::Float, TokenKind::Float, TokenKind::Int, TokenKind::Float]
        );
    }

    #[test]
    fn booleans_and_chars() {
        let toks = tokenize("#t #f #\\a #\\space #\\(").unwrap();
        assert_eq!(toks[0].kind, TokenKind::Bool);
        assert_eq!(toks[1].text, "#f");
        assert_eq!((toks[2].kind, toks[2].text.as_str()), (TokenKind::Char, "a"));
        assert_eq!(toks[3].text, " ");
        assert_eq!(toks[4].text, "(");
        assert_eq!(tokenize("#\\spaceship").unwrap_err().kind, ErrorKind::BadCharLiteral);
    }

    #[test]
    fn illegal_codepoints() {
        assert_eq!(tokenize("(+ 1 \u{0007})").unwrap_err().kind, ErrorKind::IllegalCodepoint);
        assert_eq!(tokenize("`x").unwrap_err().kind, ErrorKind::IllegalCodepoint);
    }

    #[test]
    fn comments_are_dropped() {
        assert_eq!(kinds("; hello\n17 ; trailing\n"), vec![TokenKind::Int]);
    }

    #[test]
    fn unicode_keywords_normalise() {
        let toks = tokenize("λ Tλ Iλ → ∀ Π Σ fn").unwrap();
        let texts: Vec<_> = toks.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, ["fn", "t-fn", "i-fn", "->", "Forall", "Pi", "Sigma", "fn"]);
    }

    #[test]
    fn positions() {
        let toks = tokenize("(a\n  bc)").unwrap();
        assert_eq!(toks[0].pos, Pos::new(1, 1));
        assert_eq!(toks[1].pos, Pos::new(1, 2));
        assert_eq!(toks[2].pos, Pos::new(2, 3));
    }

    #[test]
    fn rerank_both_spellings() {
        let forms = read("~(1 1)append ~[2 1]index").unwrap();
        assert_eq!(forms.len(), 2);
        match &forms[0] {
            SurfaceForm::Rerank { ranks, target, .. } => {
                assert_eq!(ranks, &vec![SurfaceForm::int(1), SurfaceForm::int(1)]);
                assert!(target.is_symbol("append"));
            }
            other => panic!("{other:?}"),
        }
        match &forms[1] {
            SurfaceForm::Rerank { ranks, target, .. } => {
                assert_eq!(ranks, &vec![SurfaceForm::int(2), SurfaceForm::int(1)]);
                assert!(target.is_symbol("index"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_list() {
        assert_eq!(read("()").unwrap(), vec![SurfaceForm::paren(vec![])]);
    }

    #[test]
    fn delimiter_errors() {
        assert_eq!(read("(+ 1 2").unwrap_err().kind, ErrorKind::UnbalancedDelimiter);
        assert_eq!(read("1 2)").unwrap_err().kind, ErrorKind::UnbalancedDelimiter);
        let e = read("(+ 1 2]").unwrap_err();
        assert_eq!(e.kind, ErrorKind::MismatchedDelimiter);
        assert_eq!(e.pos, Some(Pos::new(1, 7)));
        assert_eq!(read("~").unwrap_err().kind, ErrorKind::DanglingRerank);
        assert_eq!(read("~f").unwrap_err().kind, ErrorKind::DanglingRerank);
        assert_eq!(read("~(1 1)").unwrap_err().kind, ErrorKind::DanglingRerank);
        assert_eq!(read("~()f").unwrap_err().kind, ErrorKind::DanglingRerank);
    }

    fn arb_leaf() -> impl Strategy<Value = SurfaceForm> {
        prop_oneof![
            "[a-z][a-z0-9/*?!=<>-]{0,6}".prop_map(SurfaceForm::sym),
            (-1000i64..1000).prop_map(SurfaceForm::int),
            (-100i32..100, 0u32..1000).prop_map(|(w, f)| SurfaceForm::atom(TokenKind::Float, format!("{w}.{f}"))),
            prop::bool::ANY.prop_map(|b| SurfaceForm::atom(TokenKind::Bool, if b { "#t" } else { "#f" })),
            "[a-z \\(\"\\\\]".prop_map(|c| SurfaceForm::atom(TokenKind::Char, c)),
            "[a-z \"\\\\]{0,5}".prop_map(|s| SurfaceForm::atom(TokenKind::Str, s)),
        ]
    }

    fn arb_form() -> impl Strategy<Value = SurfaceForm> {
        arb_leaf().prop_recursive(4, 40, 5, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..5).prop_map(SurfaceForm::paren),
                prop::collection::vec(inner.clone(), 0..5).prop_map(SurfaceForm::bracket),
                (prop::collection::vec(0u32..4, 1..4), inner).prop_map(|(ranks, t)| SurfaceForm::Rerank {
                    ranks: ranks.into_iter().map(SurfaceForm::int).collect(),
                    target: Box::new(t),
                    pos: Pos::default(),
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_round_trips(forms in prop::collection::vec(arb_form(), 1..4)) {
            let text = forms.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("\n");
            let reread = read(&text).unwrap();
            prop_assert_eq!(reread, forms);
        }

        #[test]
        fn positions_are_monotone(forms in prop::collection::vec(arb_form(), 1..4)) {
            let text = forms.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("\n ");
            let toks = tokenize(&text).unwrap();
            for pair in toks.windows(2) {
                prop_assert!(pair[0].pos <= pair[1].pos);
            }
        }
    }
}
