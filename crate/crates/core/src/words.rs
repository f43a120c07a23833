//! Free-group words, finite presentations and the presentation text format.
//!
//! Words are stored run-length encoded as `(generator index, exponent)`
//! syllables and are kept freely reduced by every operation. Generator
//! indices refer to the declaration order of the owning [`Presentation`];
//! that order is the canonical basis order used everywhere downstream.

use std::fmt;

use thiserror::Error;

/// A generator name: ASCII letters, digits and underscores, starting with a letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId(String);

impl GeneratorId {
    pub fn new(name: &str) -> Result<Self, ParseError> {
        let mut chars = name.chars();
        let valid = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if valid {
            Ok(GeneratorId(name.to_string()))
        } else {
            Err(ParseError::new(0, 0, format!("invalid generator name `{name}`")))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A freely reduced word in a free group.
///
/// Adjacent syllables always carry distinct generators and no exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(gen: usize) -> Self {
        Word { syllables: vec![(gen, 1)] }
    }

    pub fn power_of(gen: usize, exp: i64) -> Self {
        Word::from_syllables([(gen, exp)])
    }

    /// Builds a word from arbitrary syllables, freely reducing them.
    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(syllables: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    /// Builds a word from signed letters: `+k` is generator `k-1`, `-k` its inverse.
    pub fn from_letters(letters: &[i64]) -> Self {
        Word::from_syllables(letters.iter().map(|&l| {
            assert!(l != 0, "letter 0 is not a generator");
            ((l.unsigned_abs() - 1) as usize, l.signum())
        }))
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|&(g, _)| g).max()
    }

    /// Iterates over single letters as `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.syllables.iter().flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }

    fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == gen {
                last.1 += exp;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((gen, exp));
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &(g, e) in &other.syllables {
            out.push(g, e);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word { syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().multiply(&other.inverse()).multiply(self).multiply(other)
    }

    /// Total exponent of each of the first `rank` generators.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0; rank];
        for &(g, e) in &self.syllables {
            if g < rank {
                sums[g] += e;
            }
        }
        sums
    }

    /// Replaces every generator `g` by `images[g]` and reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &(g, e) in &self.syllables {
            out = out.multiply(&images[g].pow(e));
        }
        out
    }

    /// Renders with the given generator names, e.g. `a^2 b^-1`.
    pub fn render(&self, names: &[GeneratorId]) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        self.syllables
            .iter()
            .map(|&(g, e)| {
                let name = names.get(g).map(|n| n.as_str().to_string()).unwrap_or(format!("x{g}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn multiply(u: &Word, v: &Word) -> Word {
    u.multiply(v)
}

pub fn commutator(u: &Word, v: &Word) -> Word {
    u.commutator(v)
}

pub fn exponent_sums(w: &Word, rank: usize) -> Vec<i64> {
    w.exponent_sums(rank)
}

/// A finite presentation `⟨generators | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<GeneratorId>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<GeneratorId>, relators: Vec<Word>) -> Result<Self, ParseError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(ParseError::new(0, 0, format!("duplicate generator `{g}`")));
            }
        }
        for r in &relators {
            if let Some(m) = r.max_generator() {
                if m >= generators.len() {
                    return Err(ParseError::new(0, 0, "relator uses an undeclared generator".into()));
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Presentation with generators named by `names` and no relators.
    pub fn free(names: &[&str]) -> Self {
        let generators = names.iter().map(|n| GeneratorId::new(n).expect("valid name")).collect();
        Presentation { generators, relators: Vec::new() }
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.as_str() == name)
    }

    /// Renders in the text format accepted by [`parse_presentation`].
    pub fn render(&self) -> String {
        let mut out = String::from("gens:");
        for g in &self.generators {
            out.push(' ');
            out.push_str(g.as_str());
        }
        out.push('\n');
        for r in &self.relators {
            out.push_str("rel: ");
            if r.is_identity() {
                let g = &self.generators[0];
                out.push_str(&format!("[{g},{g}]"));
            } else {
                out.push_str(&r.render(&self.generators));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: String) -> Self {
        ParseError { line, column, message }
    }
}

/// Result of parsing: the presentation plus non-fatal diagnostics.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub presentation: Presentation,
    pub warnings: Vec<String>,
}

/// Parses the presentation text format.
///
/// ```text
/// # genus-2 surface
/// gens: a b c d
/// rel: [a,b] [c,d]
/// ```
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    parse_presentation_with_warnings(text).map(|p| p.presentation)
}

pub fn parse_presentation_with_warnings(text: &str) -> Result<Parsed, ParseError> {
    let mut generators: Option<Vec<GeneratorId>> = None;
    let mut relators = Vec::new();
    let mut warnings = Vec::new();
    let mut sources: Vec<String> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        if let Some(rest) = trimmed.strip_prefix("gens:") {
            if generators.is_some() {
                return Err(ParseError::new(line_no, indent + 1, "`gens:` declared twice".into()));
            }
            let mut gens = Vec::new();
            let base = indent + "gens:".len();
            let mut offset = 0;
            for tok in rest.split_whitespace() {
                let pos = rest[offset..].find(tok).map(|p| p + offset).unwrap_or(offset);
                offset = pos + tok.len();
                let id = GeneratorId::new(tok).map_err(|e| ParseError::new(line_no, base + pos + 1, e.message))?;
                if gens.contains(&id) {
                    return Err(ParseError::new(line_no, base + pos + 1, format!("duplicate generator `{tok}`")));
                }
                gens.push(id);
            }
            generators = Some(gens);
        } else if let Some(rest) = trimmed.strip_prefix("rel:") {
            let gens = generators.as_ref().ok_or_else(|| ParseError::new(line_no, indent + 1, "`rel:` before `gens:`".into()))?;
            let column_base = indent + "rel:".len();
            let mut parser = WordParser { src: rest.as_bytes(), pos: 0, line: line_no, column_base, gens };
            let w = parser.parse_line()?;
            let body = rest.trim().to_string();
            if relators.contains(&w) {
                warnings.push(format!("line {line_no}: duplicate relator `{body}`"));
            }
            sources.push(body);
            relators.push(w);
        } else {
            return Err(ParseError::new(line_no, indent + 1, "expected `gens:` or `rel:`".into()));
        }
    }
    let generators = generators.ok_or_else(|| ParseError::new(1, 1, "missing `gens:` line".into()))?;
    Ok(Parsed { presentation: Presentation { generators, relators }, warnings })
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    column_base: usize,
    gens: &'a [GeneratorId],
}

impl WordParser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column_base + self.pos + 1, message.into())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn parse_line(&mut self) -> Result<Word, ParseError> {
        let w = self.parse_word()?;
        if let Some(c) = self.peek() {
            return Err(self.error(format!("unexpected `{}`", c as char)));
        }
        Ok(w)
    }

    fn parse_word(&mut self) -> Result<Word, ParseError> {
        let mut w = Word::identity();
        let mut terms = 0;
        while let Some(c) = self.peek() {
            if c == b',' || c == b']' || c == b')' {
                break;
            }
            w = w.multiply(&self.parse_term()?);
            terms += 1;
        }
        if terms == 0 {
            return Err(self.error("expected a word"));
        }
        Ok(w)
    }

    fn parse_term(&mut self) -> Result<Word, ParseError> {
        let atom = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.parse_int()?;
            Ok(atom.pow(exp))
        } else {
            Ok(atom)
        }
    }

    fn parse_atom(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let u = self.parse_word()?;
                self.expect(b',')?;
                let v = self.parse_word()?;
                self.expect(b']')?;
                Ok(u.commutator(&v))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.parse_word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.gens.iter().position(|g| g.as_str() == name) {
                    Some(i) => Ok(Word::generator(i)),
                    None => {
                        self.pos = start;
                        Err(self.error(format!("undeclared generator `{name}`")))
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of line")),
        }
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected an integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let value: i64 = text.parse().map_err(|_| {
            let mut e = self.error("exponent out of range");
            e.column = self.column_base + start + 1;
            e
        })?;
        if value == 0 {
            let mut e = self.error("zero exponent");
            e.column = self.column_base + start + 1;
            return Err(e);
        }
        Ok(value)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a() -> Word {
        Word::generator(0)
    }
    fn b() -> Word {
        Word::generator(1)
    }

    #[test]
    fn commutator_sugar_expands() {
        let p = parse_presentation("gens: a b\nrel: [a,b]").unwrap();
        assert_eq!(p.relators(), &[Word::from_letters(&[-1, -2, 1, 2])]);
    }

    #[test]
    fn zero_exponent_is_rejected() {
        let err = parse_presentation("gens: a\nrel: a^0").unwrap_err();
        assert!(err.message.contains("zero exponent"));
        assert_eq!((err.line, err.column), (2, 8));
    }

    #[test]
    fn genus_two_relator() {
        let p = parse_presentation("gens: a b c d\nrel: [a,b] [c,d]").unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0], Word::from_letters(&[-1, -2, 1, 2, -3, -4, 3, 4]));
    }

    #[test]
    fn undeclared_generator_reports_position() {
        let err = parse_presentation("gens: a b\n\nrel: a c").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.column, 8);
        assert!(err.message.contains("undeclared"));
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_presentation("rel: a").is_err());
        assert!(parse_presentation("gens: a\ngens: b").is_err());
        assert!(parse_presentation("gens: a\nrel: [a a]").is_err());
        assert!(parse_presentation("gens: a\nrel: a^").is_err());
        assert!(parse_presentation("gens: a\nrel:").is_err());
        assert!(parse_presentation("gens: 1a").is_err());
        assert!(parse_presentation("gens: a\nfoo: a").is_err());
    }

    #[test]
    fn comments_parentheses_and_negative_powers() {
        let text = "# Klein bottle\ngens: a b\n  # indented comment\nrel: (a b)^2 b^-2\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relators()[0], Word::from_letters(&[1, 2, 1, 2, -2, -2]));
    }

    #[test]
    fn duplicate_relators_warn() {
        let parsed = parse_presentation_with_warnings("gens: a\nrel: a^2\nrel: a a").unwrap();
        assert_eq!(parsed.presentation.relators().len(), 2);
        assert_eq!(parsed.warnings.len(), 1);
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(a().multiply(&b()).multiply(&b().inverse()), a());
        assert!(a().multiply(&a().inverse()).is_identity());
        assert_eq!(Word::power_of(0, 2).multiply(&Word::power_of(0, 3)), Word::power_of(0, 5));
    }

    #[test]
    fn commutator_examples() {
        assert!(a().commutator(&a()).is_identity());
        assert!(a().commutator(&Word::identity()).is_identity());
        assert_eq!(a().commutator(&b()), Word::from_letters(&[-1, -2, 1, 2]));
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(Word::from_letters(&[1, 2, 1, -2]).exponent_sums(2), vec![2, 0]);
        assert_eq!(a().commutator(&b()).exponent_sums(2), vec![0, 0]);
        assert_eq!(Word::from_letters(&[1, 1, 1, -2]).exponent_sums(2), vec![3, -1]);
    }

    #[test]
    fn render_identity_relator_round_trips() {
        let p = parse_presentation("gens: x\nrel: x x^-1").unwrap();
        assert!(p.relators()[0].is_identity());
        assert_eq!(parse_presentation(&p.render()).unwrap(), p);
    }

    pub(crate) fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..rank, prop_oneof![Just(1i64), Just(-1i64)]), 0..=max_len).prop_map(Word::from_syllables)
    }

    proptest! {
        #[test]
        fn multiplication_is_associative(u in word_strategy(3, 20), v in word_strategy(3, 20), w in word_strategy(3, 20)) {
            prop_assert_eq!(u.multiply(&v).multiply(&w), u.multiply(&v.multiply(&w)));
        }

        #[test]
        fn inverse_cancels(w in word_strategy(3, 20)) {
            prop_assert!(w.multiply(&w.inverse()).is_identity());
        }

        #[test]
        fn exponent_sums_are_additive(u in word_strategy(3, 20), v in word_strategy(3, 20)) {
            let lhs = u.multiply(&v).exponent_sums(3);
            let rhs: Vec<i64> = u.exponent_sums(3).iter().zip(v.exponent_sums(3)).map(|(x, y)| x + y).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn render_parse_round_trip(rels in prop::collection::vec(word_strategy(3, 12), 0..4)) {
            let p = Presentation::new(
                vec![GeneratorId::new("a").unwrap(), GeneratorId::new("b2").unwrap(), GeneratorId::new("c_x").unwrap()],
                rels,
            ).unwrap();
            prop_assert_eq!(parse_presentation(&p.render()).unwrap(), p);
        }
    }
}
