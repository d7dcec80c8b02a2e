use std::io::{self, BufRead, Write};

use adelog_core::model::Concept;
use adelog_core::syntax::{parse_concept_prefix, parse_individual_prefix};
use adelog_core::views::ViewMode;
use adelog_core::{Error, ParseError};

use crate::render;
use crate::session::{Command, Session};

pub const HELP: &str = "\
commands:
  load PATH                     replace the session with a KB file
  classify                      print the concept hierarchy
  subsumes C D                  is C subsumed by D?
  satisfiable C
  instances C                   individuals entailed to be in C
  check IND C                   is IND entailed to be in C?
  define view NAME := C [virtual|actual]
  query NAME [WORLD]
  fire EVENT
  worlds
  describe C [WORLD]            the unique individual in C
  snapshot PATH
  restore PATH
  oracle C D [MAX]              bounded counterexample search
  help
  quit
";

/// A parse failure located in the typed line.
fn shifted(mut e: ParseError, offset: usize, line: &str) -> Error {
    if e.span.line == 1 {
        e.span.column += line[..offset].chars().count();
    }
    Error::Parse(e)
}

struct Cursor<'a> {
    line: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.line[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.line.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        if end == 0 {
            return None;
        }
        self.pos += end;
        Some(&rest[..end])
    }

    fn concept(&mut self) -> Result<Concept, Error> {
        self.skip_ws();
        let (c, used) = parse_concept_prefix(self.rest()).map_err(|e| shifted(e, self.pos, self.line))?;
        self.pos += used;
        Ok(c)
    }

    fn individual(&mut self) -> Result<String, Error> {
        self.skip_ws();
        let (name, used) = parse_individual_prefix(self.rest()).map_err(|e| shifted(e, self.pos, self.line))?;
        self.pos += used;
        Ok(name)
    }

    fn expect(&mut self, token: &str) -> Result<(), Error> {
        self.skip_ws();
        if let Some(rest) = self.rest().strip_prefix(token) {
            self.pos = self.line.len() - rest.len();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{token}`")))
        }
    }

    fn unexpected(&mut self, expected: &str) -> Error {
        self.skip_ws();
        let found = self.rest().split_whitespace().next().map_or("end of input".to_string(), |w| format!("`{w}`"));
        Error::Parse(ParseError {
            span: adelog_core::SourceSpan {
                line: 1,
                column: self.line[..self.pos].chars().count() + 1,
                length: self.rest().split_whitespace().next().map_or(0, |w| w.chars().count()),
            },
            expected: vec![expected.to_string()],
            found,
        })
    }

    fn finish<T>(&mut self, value: T) -> Result<T, Error> {
        if self.at_end() {
            Ok(value)
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn required_word(&mut self, what: &str) -> Result<String, Error> {
        match self.word() {
            Some(w) => Ok(w.to_string()),
            None => Err(self.unexpected(what)),
        }
    }
}

/// Parses one REPL line. Blank lines and `#` comments yield `None`.
pub fn parse_line(line: &str) -> Result<Option<Command>, Error> {
    let mut cur = Cursor { line, pos: 0 };
    let Some(verb) = cur.word() else { return Ok(None) };
    if verb.starts_with('#') {
        return Ok(None);
    }
    let cmd = match verb {
        "load" => Command::Load(cur.required_word("a file path")?),
        "classify" => Command::Classify,
        "subsumes" => {
            let c = cur.concept()?;
            Command::Subsumes(c, cur.concept()?)
        }
        "satisfiable" => Command::Satisfiable(cur.concept()?),
        "instances" => Command::Instances(cur.concept()?),
        "check" => {
            let ind = cur.individual()?;
            Command::Check(ind, cur.concept()?)
        }
        "define" => {
            cur.expect("view")?;
            let name = cur.required_word("a view name")?;
            let (name, body) = match name.split_once(":=") {
                Some((n, "")) => (n.to_string(), cur.concept()?),
                _ => {
                    cur.expect(":=")?;
                    (name, cur.concept()?)
                }
            };
            let mode = match cur.word() {
                None | Some("virtual") => ViewMode::Virtual,
                Some("actual") => ViewMode::Actual,
                Some(_) => return Err(Error::Invalid("expected `virtual` or `actual` after the view body".into())),
            };
            Command::DefineView { name, body, mode }
        }
        "query" => {
            let name = cur.required_word("a view name")?;
            Command::QueryView { name, world: cur.word().map(str::to_string) }
        }
        "fire" => Command::Fire(cur.required_word("an event name")?),
        "worlds" => Command::Worlds,
        "describe" => {
            let body = cur.concept()?;
            Command::Describe { body, world: cur.word().map(str::to_string) }
        }
        "snapshot" => Command::Snapshot(cur.required_word("a file path")?),
        "restore" => Command::Restore(cur.required_word("a file path")?),
        "oracle" => {
            let c = cur.concept()?;
            let d = cur.concept()?;
            let max_domain = match cur.word() {
                None => None,
                Some(w) => Some(w.parse().map_err(|_| Error::Invalid(format!("`{w}` is not a domain size")))?),
            };
            Command::Oracle { c, d, max_domain }
        }
        "help" => Command::Help,
        "quit" | "exit" => Command::Quit,
        other => return Err(Error::Invalid(format!("unknown command `{other}`; type `help`"))),
    };
    cur.finish(Some(cmd))
}

/// Reads commands until `quit` or end of input. Failed commands print an
/// error and leave the session unchanged.
pub fn run<R: BufRead, W: Write>(session: &mut Session, input: R, out: &mut W, prompt: bool) -> io::Result<()> {
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let line = line?;
        match parse_line(&line) {
            Ok(None) => {}
            Ok(Some(Command::Quit)) => break,
            Ok(Some(cmd)) => out.write_all(session.execute(&cmd).text.as_bytes())?,
            Err(e) => out.write_all(render::error(&e, Some(&line), session.settings.format).as_bytes())?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use adelog_core::syntax::parse_concept;

    fn c(s: &str) -> Concept {
        parse_concept(s).unwrap()
    }

    #[test]
    fn parses_two_concepts() {
        assert_eq!(parse_line("subsumes C1 author").unwrap(), Some(Command::Subsumes(c("C1"), c("author"))));
        assert_eq!(
            parse_line("subsumes A and B (all r.A)").unwrap(),
            Some(Command::Subsumes(c("A and B"), c("all r.A")))
        );
    }

    #[test]
    fn parses_checks_and_views() {
        assert_eq!(
            parse_line(r#"check "Logics in Humanities" technical"#).unwrap(),
            Some(Command::Check("Logics in Humanities".into(), c("technical")))
        );
        assert_eq!(
            parse_line("define view authors := author actual").unwrap(),
            Some(Command::DefineView { name: "authors".into(), body: c("author"), mode: ViewMode::Actual })
        );
        assert_eq!(
            parse_line("define view v:= A or B").unwrap(),
            Some(Command::DefineView { name: "v".into(), body: c("A or B"), mode: ViewMode::Virtual })
        );
        assert_eq!(
            parse_line("describe author w1").unwrap(),
            Some(Command::Describe { body: c("author"), world: Some("w1".into()) })
        );
        assert_eq!(
            parse_line("oracle A B 4").unwrap(),
            Some(Command::Oracle { c: c("A"), d: c("B"), max_domain: Some(4) })
        );
    }

    #[test]
    fn blank_and_comment_lines() {
        assert_eq!(parse_line("   ").unwrap(), None);
        assert_eq!(parse_line("# note").unwrap(), None);
    }

    #[test]
    fn errors_point_into_the_line() {
        let Err(Error::Parse(e)) = parse_line("subsumes A and") else { panic!("expected a parse error") };
        assert_eq!(e.span.column, 15);
        let Err(Error::Parse(e)) = parse_line("classify now") else { panic!("expected a parse error") };
        assert_eq!(e.span.column, 10);
        assert!(matches!(parse_line("frobnicate"), Err(Error::Invalid(_))));
    }
}
