//! Words, streams and frequency vectors.
//!
//! Letters are small integers externally (the alphabet
//! `1..=d`) and dense indices `0..d` inside a [`Word`], so count tables
//! stay compact.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact_arith::FieldElement;

pub type Symbol = u32;

/// Largest symbol accepted; keeps the dense symbol index small.
const MAX_SYMBOL: Symbol = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: Vec<u32>,
}

const NO_INDEX: u32 = u32::MAX;

impl Alphabet {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let top = *symbols.iter().max().unwrap();
        if top > MAX_SYMBOL {
            return Err(Error::UnknownSymbol(top));
        }
        let mut index = vec![NO_INDEX; top as usize + 1];
        for (i, &s) in symbols.iter().enumerate() {
            if index[s as usize] != NO_INDEX {
                return Err(Error::DuplicateSymbol(s));
            }
            index[s as usize] = i as u32;
        }
        Ok(Alphabet { symbols, index })
    }

    /// The alphabet `{1, 2, ..., d}`.
    pub fn numbered(d: usize) -> Result<Self> {
        Self::new((1..=d as Symbol).collect())
    }

    /// `{first, first+1, ..., first+len-1}`.
    pub fn range(first: Symbol, len: usize) -> Result<Self> {
        Self::new((first..first + len as Symbol).collect())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> Symbol {
        self.symbols[index]
    }

    pub fn index_of(&self, symbol: Symbol) -> Option<usize> {
        match self.index.get(symbol as usize) {
            Some(&i) if i != NO_INDEX => Some(i as usize),
            _ => None,
        }
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        self.index_of(symbol).is_some()
    }

    /// First shared symbol, if any.
    pub fn overlap(&self, other: &Alphabet) -> Option<Symbol> {
        self.symbols.iter().copied().find(|&s| other.contains(s))
    }

    /// `self` followed by `other`; the two must be disjoint.
    pub fn union(&self, other: &Alphabet) -> Result<Alphabet> {
        if let Some(s) = self.overlap(other) {
            return Err(Error::AlphabetOverlap(s));
        }
        Alphabet::new(self.symbols.iter().chain(&other.symbols).copied().collect())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.symbols).finish()
    }
}

/// Finite word over an [`Alphabet`], stored as dense letter indices.
#[derive(Clone)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u32>,
    prefix_counts: OnceLock<Vec<u32>>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.letters == other.letters
    }
}

impl Eq for Word {}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let letters = symbols
            .into_iter()
            .map(|s| {
                alphabet
                    .index_of(s)
                    .map(|i| i as u32)
                    .ok_or(Error::UnknownSymbol(s))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_indices(alphabet, letters))
    }

    /// Word whose alphabet is the sorted set of its own symbols.
    pub fn from_symbols(symbols: &[Symbol]) -> Result<Self> {
        let mut distinct = symbols.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.is_empty() {
            return Err(Error::EmptyWord);
        }
        Self::new(Alphabet::new(distinct)?, symbols.iter().copied())
    }

    pub(crate) fn from_indices(alphabet: Alphabet, letters: Vec<u32>) -> Self {
        debug_assert!(letters.iter().all(|&l| (l as usize) < alphabet.len()));
        Word {
            alphabet,
            letters,
            prefix_counts: OnceLock::new(),
        }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self::from_indices(alphabet, Vec::new())
    }

    /// Parses the word file format: a run of digits, or comma-separated
    /// integers. Surrounding whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let symbols: Vec<Symbol> = if text.contains(',') {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<Symbol>()
                        .map_err(|_| Error::WordFormat(format!("bad symbol `{}`", t.trim())))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::WordFormat(format!("bad character `{c}`")))
                })
                .collect::<Result<_>>()?
        };
        Self::from_symbols(&symbols)
    }

    /// Digits when every symbol is at most 9, comma-separated otherwise.
    pub fn render(&self) -> String {
        let compact = self.alphabet.symbols().iter().all(|&s| s <= 9);
        let parts: Vec<String> = self.symbols().map(|s| s.to_string()).collect();
        if compact {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    /// Renders a binary word with `a` for the first alphabet symbol and
    /// `b` for the second.
    pub fn to_ab_string(&self) -> String {
        self.letters
            .iter()
            .map(|&l| if l == 0 { 'a' } else { 'b' })
            .collect()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Dense letter indices into the alphabet.
    pub fn indices(&self) -> &[u32] {
        &self.letters
    }

    pub fn symbol_at(&self, i: usize) -> Symbol {
        self.alphabet.symbol(self.letters[i] as usize)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.letters.iter().map(|&l| self.alphabet.symbol(l as usize))
    }

    fn prefix_table(&self) -> &[u32] {
        self.prefix_counts.get_or_init(|| {
            let d = self.alphabet.len();
            let mut table = vec![0u32; (self.letters.len() + 1) * d];
            for (i, &l) in self.letters.iter().enumerate() {
                let (prev, next) = table.split_at_mut((i + 1) * d);
                next[..d].copy_from_slice(&prev[i * d..]);
                next[l as usize] += 1;
            }
            table
        })
    }

    /// `|w|_a`. Symbols outside the alphabet occur zero times.
    pub fn count_letter(&self, symbol: Symbol) -> usize {
        self.count_in(symbol, 0, self.len())
    }

    /// Occurrences of `symbol` in positions `start..end`.
    pub fn count_in(&self, symbol: Symbol, start: usize, end: usize) -> usize {
        assert!(start <= end && end <= self.len(), "range {start}..{end} out of bounds");
        let Some(a) = self.alphabet.index_of(symbol) else {
            return 0;
        };
        let d = self.alphabet.len();
        let table = self.prefix_table();
        (table[end * d + a] - table[start * d + a]) as usize
    }

    /// The factor `w[start..end]`, over the same alphabet.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Self::from_indices(self.alphabet.clone(), self.letters[start..end].to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.render())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Lazy, deterministic, never-ending symbol source with a single consumer.
pub trait SequenceStream: Send {
    fn next_symbol(&mut self) -> Symbol;

    /// Number of symbols emitted so far.
    fn position(&self) -> u64;

    fn alphabet(&self) -> &Alphabet;
}

pub type BoxedStream = Box<dyn SequenceStream>;

impl<S: SequenceStream + ?Sized> SequenceStream for Box<S> {
    fn next_symbol(&mut self) -> Symbol {
        (**self).next_symbol()
    }

    fn position(&self) -> u64 {
        (**self).position()
    }

    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }
}

/// Pulls the next `n` symbols of `stream` into a word over its alphabet.
pub fn take_prefix<S: SequenceStream + ?Sized>(stream: &mut S, n: usize) -> Word {
    let alphabet = stream.alphabet().clone();
    let mut letters = Vec::with_capacity(n);
    for _ in 0..n {
        let s = stream.next_symbol();
        let i = alphabet
            .index_of(s)
            .expect("stream emitted a symbol outside its alphabet");
        letters.push(i as u32);
    }
    Word::from_indices(alphabet, letters)
}

/// `period^ω` for a non-empty period.
#[derive(Clone, Debug)]
pub struct PeriodicStream {
    period: Vec<Symbol>,
    alphabet: Alphabet,
    position: u64,
}

impl PeriodicStream {
    pub fn new(period: &Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(PeriodicStream {
            period: period.symbols().collect(),
            alphabet: period.alphabet().clone(),
            position: 0,
        })
    }

    /// The constant sequence `symbol^ω`.
    pub fn constant(symbol: Symbol) -> Self {
        PeriodicStream {
            period: vec![symbol],
            alphabet: Alphabet::new(vec![symbol]).expect("single-symbol alphabet"),
            position: 0,
        }
    }
}

impl SequenceStream for PeriodicStream {
    fn next_symbol(&mut self) -> Symbol {
        let s = self.period[(self.position % self.period.len() as u64) as usize];
        self.position += 1;
        s
    }

    fn position(&self) -> u64 {
        self.position
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

/// Positive exact letter frequencies summing to one, all in one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencyVector {
    alphabet: Alphabet,
    entries: Vec<FieldElement>,
}

impl FrequencyVector {
    pub fn new(alphabet: Alphabet, entries: Vec<FieldElement>) -> Result<Self> {
        if alphabet.len() != entries.len() {
            return Err(Error::Frequency(format!(
                "{} letters but {} frequencies",
                alphabet.len(),
                entries.len()
            )));
        }
        let mut sum = FieldElement::zero();
        for (s, f) in alphabet.symbols().iter().zip(&entries) {
            sum = sum.checked_add(f)?;
            if !f.is_positive() {
                return Err(Error::Frequency(format!("f({s}) = {f} is not positive")));
            }
        }
        if sum != FieldElement::one() {
            return Err(Error::Frequency(format!("frequencies sum to {sum}, not 1")));
        }
        Ok(FrequencyVector { alphabet, entries })
    }

    /// Parses `f1,f2,...,fd` (exact number grammar) over letters `1..=d`.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|t| t.parse::<FieldElement>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(Alphabet::numbered(entries.len())?, entries)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, symbol: Symbol) -> Option<&FieldElement> {
        self.alphabet.index_of(symbol).map(|i| &self.entries[i])
    }

    /// Same frequencies attached to another alphabet of equal size.
    pub fn relabel(&self, alphabet: Alphabet) -> Result<Self> {
        Self::new(alphabet, self.entries.clone())
    }

    pub fn render(&self) -> String {
        self.entries
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constant_prefix() {
        let mut s = PeriodicStream::constant(1);
        assert_eq!(take_prefix(&mut s, 5).render(), "11111");
        assert_eq!(take_prefix(&mut s, 0).len(), 0);
        assert_eq!(s.position(), 5);
    }

    #[test]
    fn counting() {
        let w = Word::parse("11211").unwrap();
        assert_eq!(w.count_letter(1), 4);
        assert_eq!(w.count_letter(2), 1);
        assert_eq!(w.count_letter(7), 0);
        assert_eq!(w.count_in(1, 1, 3), 1);
        let empty = Word::empty(Alphabet::numbered(2).unwrap());
        assert_eq!(empty.count_letter(1), 0);
    }

    #[test]
    fn file_format() {
        let w = Word::parse(" 3142\n").unwrap();
        assert_eq!(w.render(), "3142");
        let wide = Word::parse("1, 12,3").unwrap();
        assert_eq!(wide.render(), "1,12,3");
        assert!(Word::parse("12x").is_err());
        assert!(Word::parse("").is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(matches!(Alphabet::new(vec![]), Err(Error::EmptyAlphabet)));
        assert!(matches!(Alphabet::new(vec![1, 2, 1]), Err(Error::DuplicateSymbol(1))));
        let a = Alphabet::numbered(3).unwrap();
        let b = Alphabet::range(3, 2).unwrap();
        assert!(matches!(a.union(&b), Err(Error::AlphabetOverlap(3))));
    }

    #[test]
    fn frequency_vector_validation() {
        assert!(FrequencyVector::parse("1/2,1/3,1/6").is_ok());
        assert!(FrequencyVector::parse("1/2,1/2,0").is_err());
        assert!(FrequencyVector::parse("1/2,1/3").is_err());
        assert!(FrequencyVector::parse("(1+sqrt(2))/4,(3-sqrt(2))/4").is_ok());
        assert!(FrequencyVector::parse("(0+sqrt(2))/4,(0+sqrt(5))/4,1/2").is_err());
        assert!(FrequencyVector::parse("3/2,-1/2").is_err());
    }

    proptest! {
        #[test]
        fn counts_sum_to_length(symbols in proptest::collection::vec(1u32..6, 1..200)) {
            let w = Word::from_symbols(&symbols).unwrap();
            let total: usize = w.alphabet().symbols().iter().map(|&a| w.count_letter(a)).sum();
            prop_assert_eq!(total, w.len());
        }

        #[test]
        fn prefix_consistency(period in proptest::collection::vec(1u32..4, 1..10), n in 0usize..50, m in 0usize..50) {
            let p = Word::from_symbols(&period).unwrap();
            let mut whole = PeriodicStream::new(&p).unwrap();
            let mut split = PeriodicStream::new(&p).unwrap();
            let all = take_prefix(&mut whole, n + m);
            let head = take_prefix(&mut split, n);
            let tail = take_prefix(&mut split, m);
            let joined: Vec<Symbol> = head.symbols().chain(tail.symbols()).collect();
            prop_assert_eq!(all.symbols().collect::<Vec<_>>(), joined);
        }
    }
}
