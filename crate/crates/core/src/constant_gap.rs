//! Constant gap sequences: periodic sequences in which consecutive
//! occurrences of each letter are equidistant.
//!
//! Scanning two concatenated periods suffices. The gap sequence of every
//! letter in `period^ω` is itself periodic with period `|period|`, and each
//! occurrence inside the first copy has its successor within the next
//! `|period|` positions, so every gap appears between positions of the
//! doubled word.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sequences::{PeriodicStream, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapCheck {
    Constant,
    /// `letter` occurs with two different consecutive gaps.
    Irregular {
        letter: Symbol,
        first: usize,
        second: usize,
    },
}

impl GapCheck {
    pub fn is_constant(&self) -> bool {
        matches!(self, GapCheck::Constant)
    }
}

pub fn is_constant_gap(period: &Word) -> Result<GapCheck> {
    if period.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = period.len();
    let letters = period.indices();
    let mut last: Vec<Option<usize>> = vec![None; period.alphabet().len()];
    let mut gap: Vec<Option<usize>> = vec![None; period.alphabet().len()];
    for i in 0..2 * n {
        let l = letters[i % n] as usize;
        if let Some(prev) = last[l] {
            let g = i - prev;
            match gap[l] {
                None => gap[l] = Some(g),
                Some(first) if first != g => {
                    return Ok(GapCheck::Irregular {
                        letter: period.alphabet().symbol(l),
                        first,
                        second: g,
                    })
                }
                _ => {}
            }
        }
        last[l] = Some(i);
    }
    Ok(GapCheck::Constant)
}

/// One period of a constant gap sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSpec {
    period: Word,
}

impl GapSpec {
    pub fn new(period: Word) -> Result<Self> {
        match is_constant_gap(&period)? {
            GapCheck::Constant => Ok(GapSpec { period }),
            GapCheck::Irregular {
                letter,
                first,
                second,
            } => Err(Error::NotConstantGap {
                letter,
                first,
                second,
            }),
        }
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Gap of each letter, in alphabet order (letters absent from the
    /// period are skipped).
    pub fn gaps(&self) -> Vec<(Symbol, usize)> {
        let n = self.period.len();
        self.period
            .alphabet()
            .symbols()
            .iter()
            .filter_map(|&s| {
                let c = self.period.count_letter(s);
                (c > 0).then(|| (s, n / c))
            })
            .collect()
    }
}

pub fn gap_stream(spec: &GapSpec) -> PeriodicStream {
    PeriodicStream::new(&spec.period).expect("period is non-empty")
}

/// Two distinct letters with equal counts in the period, the
/// lexicographically smallest such pair. `None` for a one-letter period.
pub fn equal_frequency_pair(period: &Word) -> Result<Option<(Symbol, Symbol)>> {
    let spec = GapSpec::new(period.clone())?;
    let present: Vec<(Symbol, usize)> = spec
        .period
        .alphabet()
        .symbols()
        .iter()
        .map(|&s| (s, spec.period.count_letter(s)))
        .filter(|&(_, c)| c > 0)
        .collect();
    if present.len() < 2 {
        return Ok(None);
    }
    for (i, &(s, c)) in present.iter().enumerate() {
        if let Some(&(t, _)) = present[i + 1..].iter().find(|&&(_, c2)| c2 == c) {
            return Ok(Some((s, t)));
        }
    }
    Err(Error::Invariant(format!(
        "constant gap period {period} has pairwise distinct letter counts"
    )))
}

/// Relabels letters in order of first occurrence, starting from 1.
fn relabel(symbols: &[Symbol]) -> Vec<Symbol> {
    let mut names: HashMap<Symbol, Symbol> = HashMap::new();
    symbols
        .iter()
        .map(|s| {
            let next = names.len() as Symbol + 1;
            *names.entry(*s).or_insert(next)
        })
        .collect()
}

/// Smallest relabeled rotation; equal for periods that differ by rotation
/// and renaming of letters.
pub fn canonical_rotation(symbols: &[Symbol]) -> Vec<Symbol> {
    (0..symbols.len().max(1))
        .map(|r| {
            let rotated: Vec<Symbol> = symbols[r..].iter().chain(&symbols[..r]).copied().collect();
            relabel(&rotated)
        })
        .min()
        .unwrap_or_default()
}

/// Calls `visit` on every word of length `len` over `1..=max_letters`
/// whose letters appear in increasing order of first occurrence
/// (one representative per renaming class).
fn for_each_restricted_growth(len: usize, max_letters: u32, visit: &mut impl FnMut(&[Symbol])) {
    fn go(
        buf: &mut Vec<Symbol>,
        len: usize,
        used: u32,
        max_letters: u32,
        visit: &mut impl FnMut(&[Symbol]),
    ) {
        if buf.len() == len {
            visit(buf);
            return;
        }
        for s in 1..=(used + 1).min(max_letters) {
            buf.push(s);
            go(buf, len, used.max(s), max_letters, visit);
            buf.pop();
        }
    }
    go(&mut Vec::with_capacity(len), len, 0, max_letters, visit);
}

/// All constant gap periods of length `1..=max_len` using between
/// `min_letters` and `max_letters` distinct letters, one per class of
/// rotation and renaming. Found by filtering every candidate word.
pub fn enumerate_periods(max_len: usize, min_letters: u32, max_letters: u32) -> Vec<Word> {
    let mut found = Vec::new();
    for len in 1..=max_len {
        for_each_restricted_growth(len, max_letters, &mut |w| {
            let distinct = *w.iter().max().unwrap();
            if distinct < min_letters {
                return;
            }
            let word = Word::from_symbols(w).expect("non-empty");
            if is_constant_gap(&word).expect("non-empty").is_constant()
                && canonical_rotation(w) == w
            {
                found.push(word);
            }
        });
    }
    found
}
