use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::label::{LabelNames, NameTable, TimeLabel, WaveLabel};
use crate::error::Error;

/// `-1` for an annihilator `a_λ`, `+1` for a creator `a†_λ`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Eps {
    Annihilation,
    Creation,
}

impl Eps {
    pub fn sign(self) -> i64 {
        match self {
            Eps::Annihilation => -1,
            Eps::Creation => 1,
        }
    }

    pub fn is_creation(self) -> bool {
        self == Eps::Creation
    }

    pub fn token(self) -> &'static str {
        match self {
            Eps::Annihilation => "a",
            Eps::Creation => "a+",
        }
    }

    /// Accepts `a`, `a+`, `a†`, `ad`, `-1`, `+1`, `1` (and the same with `b`).
    pub fn parse(token: &str) -> Option<Eps> {
        match token {
            "a" | "b" | "-1" | "-" => Some(Eps::Annihilation),
            "a+" | "a†" | "ad" | "b+" | "b†" | "bd" | "+1" | "1" | "+" => Some(Eps::Creation),
            _ => None,
        }
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// One entangled operator `a^ε_λ(t, k)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub eps: Eps,
    pub time: TimeLabel,
    pub wave: WaveLabel,
}

/// Ordered product of entangled operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperatorWord {
    letters: Vec<Letter>,
}

impl OperatorWord {
    /// Validates that no time or wave label repeats.
    pub fn new(letters: Vec<Letter>) -> Result<Self, Error> {
        let mut times = BTreeSet::new();
        let mut waves = BTreeSet::new();
        for (i, l) in letters.iter().enumerate() {
            if !times.insert(l.time) {
                return Err(Error::DuplicateLabel {
                    position: i + 1,
                    label: l.time.to_string(),
                });
            }
            if !waves.insert(l.wave) {
                return Err(Error::DuplicateLabel {
                    position: i + 1,
                    label: l.wave.to_string(),
                });
            }
        }
        Ok(OperatorWord { letters })
    }

    /// Letter `s` (1-based) gets labels `t_s`, `k_s`.
    pub fn from_pattern(pattern: &[Eps]) -> Self {
        let letters = pattern
            .iter()
            .enumerate()
            .map(|(i, &eps)| Letter {
                eps,
                time: TimeLabel(i as u32 + 1),
                wave: WaveLabel(i as u32 + 1),
            })
            .collect();
        OperatorWord { letters }
    }

    /// Parses whitespace-separated tokens. Either every token is bare (`a a+ a`)
    /// and labels are positional, or every token is explicit (`a(t1,k1) a+(s,q)`).
    pub fn parse(text: &str) -> Result<(Self, NameTable), Error> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let explicit = tokens.iter().filter(|t| t.contains('(')).count();
        if explicit == 0 {
            let mut pattern = Vec::with_capacity(tokens.len());
            for (i, tok) in tokens.iter().enumerate() {
                let eps = Eps::parse(tok).ok_or_else(|| Error::Parse {
                    position: i + 1,
                    message: format!("unknown operator token `{tok}`"),
                })?;
                pattern.push(eps);
            }
            let word = Self::from_pattern(&pattern);
            let names = word.default_names();
            return Ok((word, names));
        }
        if explicit != tokens.len() {
            return Err(Error::Parse {
                position: 1,
                message: "mix of positional and explicitly labelled tokens".into(),
            });
        }
        let mut names = NameTable::default();
        let mut letters = Vec::with_capacity(tokens.len());
        for (i, tok) in tokens.iter().enumerate() {
            let err = |message: String| Error::Parse {
                position: i + 1,
                message,
            };
            let (head, rest) = tok.split_once('(').expect("counted above");
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| err(format!("missing `)` in `{tok}`")))?;
            let (tname, kname) = inner
                .split_once(',')
                .ok_or_else(|| err(format!("expected `(time,wave)` in `{tok}`")))?;
            let eps = Eps::parse(head).ok_or_else(|| err(format!("unknown operator `{head}`")))?;
            let (tname, kname) = (tname.trim(), kname.trim());
            if tname.is_empty() || kname.is_empty() {
                return Err(err(format!("empty label in `{tok}`")));
            }
            let time = TimeLabel(i as u32 + 1);
            let wave = WaveLabel(i as u32 + 1);
            if names.time_by_name(tname).is_some() {
                return Err(Error::DuplicateLabel {
                    position: i + 1,
                    label: tname.to_string(),
                });
            }
            if names.wave_by_name(kname).is_some() {
                return Err(Error::DuplicateLabel {
                    position: i + 1,
                    label: kname.to_string(),
                });
            }
            names.times.insert(time, tname.to_string());
            names.waves.insert(wave, kname.to_string());
            letters.push(Letter { eps, time, wave });
        }
        Ok((OperatorWord { letters }, names))
    }

    pub fn default_names(&self) -> NameTable {
        let mut names = NameTable::default();
        for l in &self.letters {
            names.times.insert(l.time, l.time.to_string());
            names.waves.insert(l.wave, l.wave.to_string());
        }
        names
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// 1-based access.
    pub fn at(&self, position: usize) -> &Letter {
        &self.letters[position - 1]
    }

    pub fn pattern(&self) -> Vec<Eps> {
        self.letters.iter().map(|l| l.eps).collect()
    }

    pub fn is_balanced(&self) -> bool {
        let creations = self.letters.iter().filter(|l| l.eps.is_creation()).count();
        2 * creations == self.letters.len()
    }

    /// Word with letters `i` and `i+1` (0-based) exchanged.
    pub fn swapped(&self, i: usize) -> Self {
        let mut letters = self.letters.clone();
        letters.swap(i, i + 1);
        OperatorWord { letters }
    }

    pub fn render(&self, names: &dyn LabelNames) -> String {
        self.letters
            .iter()
            .map(|l| {
                format!(
                    "{}({},{})",
                    l.eps.token(),
                    names.time_name(l.time),
                    names.wave_name(l.wave)
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn pattern_to_string(pattern: &[Eps]) -> String {
    pattern
        .iter()
        .map(|e| e.token())
        .collect::<Vec<_>>()
        .join(" ")
}

/// All balanced patterns of the given length, in lexicographic order
/// (annihilation before creation).
pub fn balanced_patterns(len: usize) -> Vec<Vec<Eps>> {
    if len % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(len: usize, creations: usize, current: &mut Vec<Eps>, out: &mut Vec<Vec<Eps>>) {
        let placed = current.len();
        let annihilations = placed - creations;
        if placed == len {
            out.push(current.clone());
            return;
        }
        if annihilations < len / 2 {
            current.push(Eps::Annihilation);
            rec(len, creations, current, out);
            current.pop();
        }
        if creations < len / 2 {
            current.push(Eps::Creation);
            rec(len, creations + 1, current, out);
            current.pop();
        }
    }
    rec(len, 0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positional_parse() {
        let (w, names) = OperatorWord::parse("a a a+ a+").unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.is_balanced());
        assert_eq!(w.at(3).eps, Eps::Creation);
        assert_eq!(w.render(&names), "a(t1,k1) a(t2,k2) a+(t3,k3) a+(t4,k4)");
    }

    #[test]
    fn explicit_parse_and_duplicates() {
        let (w, names) = OperatorWord::parse("a(t1,k1) a+(s,q)").unwrap();
        assert_eq!(w.render(&names), "a(t1,k1) a+(s,q)");
        let err = OperatorWord::parse("a(t,k) a+(t,q)").unwrap_err();
        assert!(matches!(err, Error::DuplicateLabel { position: 2, .. }));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = OperatorWord::parse("a a+ x").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 3, .. }));
        assert!(OperatorWord::parse("a a+(t,k)").is_err());
    }

    #[test]
    fn balanced_pattern_counts() {
        assert_eq!(balanced_patterns(2).len(), 2);
        assert_eq!(balanced_patterns(4).len(), 6);
        assert_eq!(balanced_patterns(6).len(), 20);
        assert_eq!(balanced_patterns(8).len(), 70);
        assert!(balanced_patterns(3).is_empty());
    }
}
