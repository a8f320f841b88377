//! Text format for [`ChiSpec`], conventionally stored in `.chi` files.
//!
//! ```text
//! spec     := [prefix] cycle [bound]
//! prefix   := "prefix" "[" natlist "]"
//! cycle    := "periodic" "[" natlist "]"
//! bound    := "bound" "=" nat
//! natlist  := nat ("," nat)*
//! ```
//!
//! Naturals are unsigned decimal digit strings of any length; leading zeros
//! are accepted. `#` starts a comment running to the end of the line.

use num::Num;

use crate::error::{Error, ParseError, Result};
use crate::ratio::Natural;
use crate::series::ChiSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Word(&'a str),
    Nat(&'a str),
    LBracket,
    RBracket,
    Comma,
    Equals,
    Other(char),
    End,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("'{w}'"),
            Tok::Nat(n) => format!("number {n}"),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Equals => "'='".into(),
            Tok::Other(c) => format!("unexpected character {c:?}"),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    src: &'a str,
    offset: usize,
    pos: Pos,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, offset: 0, pos: Pos { line: 1, column: 1 } }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.src[self.offset..].chars().next()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<char> {
        self.src[self.offset..].chars().next()
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.offset;
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
        &self.src[start..self.offset]
    }

    fn next_token(&mut self) -> (Tok<'a>, Pos) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    self.take_while(|c| c != '\n');
                }
                _ => break,
            }
        }
        let at = self.pos;
        let tok = match self.peek() {
            None => Tok::End,
            Some(c) if c.is_ascii_digit() => Tok::Nat(self.take_while(|c| c.is_ascii_digit())),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                Tok::Word(self.take_while(|c| c.is_ascii_alphanumeric() || c == '_'))
            }
            Some(c) => {
                self.bump();
                match c {
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    '=' => Tok::Equals,
                    other => Tok::Other(other),
                }
            }
        };
        (tok, at)
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok<'a>,
    at: Pos,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let mut lexer = Lexer::new(src);
        let (tok, at) = lexer.next_token();
        Parser { lexer, tok, at }
    }

    fn advance(&mut self) {
        let (tok, at) = self.lexer.next_token();
        self.tok = tok;
        self.at = at;
    }

    fn error_at(&self, at: Pos, message: String, expected: Vec<&'static str>) -> ParseError {
        ParseError { line: at.line, column: at.column, message, expected }
    }

    fn unexpected(&self, expected: Vec<&'static str>) -> ParseError {
        self.error_at(self.at, format!("syntax error: found {}", self.tok.describe()), expected)
    }

    fn expect(&mut self, want: Tok<'static>, name: &'static str) -> Result<(), ParseError> {
        if self.tok == want {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(vec![name]))
        }
    }

    fn nat(&mut self) -> Result<(Natural, Pos), ParseError> {
        match self.tok {
            Tok::Nat(digits) => {
                let at = self.at;
                let value = Natural::from_str_radix(digits, 10).expect("lexer yields digits only");
                self.advance();
                Ok((value, at))
            }
            _ => Err(self.unexpected(vec!["natural number"])),
        }
    }

    fn natlist(&mut self) -> Result<Vec<(Natural, Pos)>, ParseError> {
        let mut values = vec![self.nat()?];
        while self.tok == Tok::Comma {
            self.advance();
            values.push(self.nat()?);
        }
        Ok(values)
    }

    fn bracketed(&mut self, empty_message: Option<&str>) -> Result<Vec<(Natural, Pos)>, ParseError> {
        self.expect(Tok::LBracket, "'['")?;
        if let (Tok::RBracket, Some(msg)) = (&self.tok, empty_message) {
            return Err(self.error_at(self.at, msg.to_string(), vec![]));
        }
        let values = self.natlist()?;
        self.expect(Tok::RBracket, "']'")?;
        Ok(values)
    }

    fn spec(&mut self) -> Result<ChiSpec, ParseError> {
        let mut prefix = Vec::new();
        if self.tok == Tok::Word("prefix") {
            self.advance();
            prefix = self.bracketed(None)?;
        }
        if self.tok != Tok::Word("periodic") {
            let expected = if prefix.is_empty() { vec!["'prefix'", "'periodic'"] } else { vec!["'periodic'"] };
            return Err(self.unexpected(expected));
        }
        self.advance();
        let cycle = self.bracketed(Some("cycle must be nonempty"))?;
        let mut bound = None;
        if self.tok == Tok::Word("bound") {
            self.advance();
            self.expect(Tok::Equals, "'='")?;
            bound = Some(self.nat()?);
        }
        if self.tok != Tok::End {
            let expected = if bound.is_some() { vec!["end of input"] } else { vec!["'bound'", "end of input"] };
            return Err(self.unexpected(expected));
        }

        if let Some((b, at)) = &bound {
            if num::Zero::is_zero(b) {
                return Err(self.error_at(*at, Error::ZeroBound.to_string(), vec![]));
            }
            if let Some((v, at)) = prefix.iter().chain(&cycle).find(|(v, _)| v > b) {
                let msg = Error::ValueExceedsBound { value: v.clone(), bound: b.clone() }.to_string();
                return Err(self.error_at(*at, msg, vec![]));
            }
        }
        let strip = |xs: Vec<(Natural, Pos)>| xs.into_iter().map(|(v, _)| v).collect();
        Ok(ChiSpec::new(strip(prefix), strip(cycle), bound.map(|(b, _)| b))
            .expect("validated above"))
    }
}

/// Parses the DSL. Never evaluates the series.
pub fn parse_spec(text: &str) -> Result<ChiSpec, ParseError> {
    Parser::new(text).spec()
}

/// Canonical one-line form, e.g. `prefix[1] periodic[4] bound=7`.
pub fn render_spec(spec: &ChiSpec) -> String {
    let list = |xs: &[Natural]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let mut out = String::new();
    if !spec.prefix().is_empty() {
        out.push_str(&format!("prefix[{}] ", list(spec.prefix())));
    }
    out.push_str(&format!("periodic[{}]", list(spec.cycle())));
    if let Some(b) = spec.declared_bound() {
        out.push_str(&format!(" bound={b}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::collection::vec;
    use proptest::prelude::*;

    fn nats(xs: &[u32]) -> Vec<Natural> {
        xs.iter().map(|&v| Natural::from(v)).collect()
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse_spec("periodic[3,5,7]").unwrap(), ChiSpec::periodic([3u32, 5, 7]).unwrap());
        assert_eq!(
            parse_spec("prefix[9] periodic[0] bound=9").unwrap(),
            ChiSpec::new(nats(&[9]), nats(&[0]), Some(Natural::from(9u32))).unwrap()
        );
        assert_eq!(
            parse_spec(" periodic[ 3 ,5,7 ] ").unwrap(),
            ChiSpec::periodic([3u32, 5, 7]).unwrap()
        );
        assert_eq!(parse_spec("periodic[007]").unwrap(), ChiSpec::periodic([7u32]).unwrap());
        let big = parse_spec("periodic[123456789012345678901234567890]").unwrap();
        assert_eq!(big.cycle()[0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn comments_and_newlines() {
        let text = "# example one\nprefix[1,\n  2] # trailing\nperiodic[4]\n";
        assert_eq!(
            parse_spec(text).unwrap(),
            ChiSpec::new(nats(&[1, 2]), nats(&[4]), None).unwrap()
        );
    }

    #[test]
    fn bound_violation() {
        let err = parse_spec("periodic[3,5,7] bound=2").unwrap_err();
        assert_eq!(err.message, "value 3 exceeds bound 2");
        assert_eq!((err.line, err.column), (1, 10));
        let err = parse_spec("periodic[1,5,2] bound=2").unwrap_err();
        assert_eq!(err.message, "value 5 exceeds bound 2");
        assert_eq!(parse_spec("periodic[1] bound=0").unwrap_err().message, "bound must be at least 1");
    }

    #[test]
    fn empty_cycle() {
        let err = parse_spec("periodic[]").unwrap_err();
        assert_eq!(err.message, "cycle must be nonempty");
        assert_eq!((err.line, err.column), (1, 10));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_spec("periodic[3,,5]").unwrap_err();
        assert_eq!((err.line, err.column), (1, 12));
        assert_eq!(err.expected, vec!["natural number"]);

        let err = parse_spec("prefix[1]\n  bound=3").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert_eq!(err.expected, vec!["'periodic'"]);

        let err = parse_spec("periodic[1] extra").unwrap_err();
        assert_eq!(err.expected, vec!["'bound'", "end of input"]);

        let err = parse_spec("periodic[-1]").unwrap_err();
        assert!(err.to_string().starts_with("1:10: syntax error"), "{err}");

        let err = parse_spec("").unwrap_err();
        assert_eq!((err.line, err.column), (1, 1));

        assert!(parse_spec("periodic[1] bound=").is_err());
        assert!(parse_spec("periodic[1").is_err());
        assert!(parse_spec("periodic[1]]").is_err());
        assert!(parse_spec("periodic[1] prefix[2]").is_err());
        assert!(parse_spec("prefix[] periodic[1]").is_err());
        assert!(parse_spec("Periodic[1]").is_err());
        assert!(parse_spec("periodic[1é]").is_err());
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(render_spec(&ChiSpec::periodic([2u32, 0]).unwrap()), "periodic[2,0]");
        let s = ChiSpec::new(nats(&[1]), nats(&[4]), Some(Natural::from(7u32))).unwrap();
        assert_eq!(render_spec(&s), "prefix[1] periodic[4] bound=7");
    }

    fn arb_spec() -> impl Strategy<Value = ChiSpec> {
        (vec(0u64..u64::MAX, 0..6), vec(0u64..1000, 1..8), proptest::option::of(0u64..1000))
            .prop_map(|(prefix, cycle, extra)| {
                let max = prefix.iter().chain(&cycle).copied().max().unwrap();
                let bound = extra.map(|e| Natural::from(max) + e + 1u32);
                ChiSpec::new(
                    prefix.into_iter().map(Natural::from).collect(),
                    cycle.into_iter().map(Natural::from).collect(),
                    bound,
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn parse_render_round_trip(s in arb_spec()) {
            prop_assert_eq!(parse_spec(&render_spec(&s)).unwrap(), s);
        }

        #[test]
        fn render_parse_idempotent(s in arb_spec(), pad in "[ \t\n]{0,3}") {
            let messy = render_spec(&s).replace(',', &format!("{pad},{pad}")).replace('[', &format!("{pad}[0"));
            let once = render_spec(&parse_spec(&messy).unwrap());
            let twice = render_spec(&parse_spec(&once).unwrap());
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn never_panics(text in "\\PC{0,40}") {
            let _ = parse_spec(&text);
        }
    }
}
