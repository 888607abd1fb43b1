use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One of â, b̂, ĉ, d̂ or their primed copies, ordered a < b < c < d < a′ < … < d′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator(u8);

pub const LETTERS: [char; 4] = ['a', 'b', 'c', 'd'];

impl Generator {
    pub const A: Generator = Generator(0);
    pub const B: Generator = Generator(1);
    pub const C: Generator = Generator(2);
    pub const D: Generator = Generator(3);

    pub fn new(letter: char, primed: bool) -> Option<Self> {
        let k = LETTERS.iter().position(|&l| l == letter)? as u8;
        Some(Generator(k + 4 * primed as u8))
    }

    pub fn all() -> impl Iterator<Item = Generator> {
        (0..8).map(Generator)
    }

    pub fn unprimed() -> [Generator; 4] {
        [Generator::A, Generator::B, Generator::C, Generator::D]
    }

    pub fn letter(self) -> char {
        LETTERS[(self.0 % 4) as usize]
    }

    pub fn primed(self) -> bool {
        self.0 >= 4
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn with_prime(self, primed: bool) -> Generator {
        Generator(self.0 % 4 + 4 * primed as u8)
    }

    pub fn parse(s: &str) -> Option<Self> {
        let mut it = s.chars();
        let l = it.next()?;
        match it.as_str() {
            "" => Generator::new(l, false),
            "'" => Generator::new(l, true),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter(), if self.primed() { "'" } else { "" })
    }
}

/// A monomial in the generators; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// Every word of length `n` over `alphabet`, in deglex order when the alphabet is sorted.
    pub fn all_of_degree(alphabet: &[Generator], n: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        for _ in 0..n {
            out = out.iter().flat_map(|w| alphabet.iter().map(move |&g| w.concat(&Word(vec![g])))).collect();
        }
        out
    }

    pub fn parse(s: &str) -> Option<Word> {
        let s = s.trim();
        if s == "1" {
            return Some(Word::unit());
        }
        s.split('*').map(|p| Generator::parse(p.trim())).collect::<Option<Vec<_>>>().map(Word)
    }
}

impl From<Generator> for Word {
    fn from(g: Generator) -> Self {
        Word(vec![g])
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let s: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&s.join("*"))
    }
}
