//! Measurements on finite words: balance profile, factor complexity,
//! empirical frequencies, prefix discrepancy and period detection.
//!
//! Values measured on a prefix bound the infinite sequence from one side
//! only. A measured balance constant is a lower bound for the balance
//! constant of the stream the prefix came from.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{sign_of_surd, sign_of_surd_i128, FieldElement};
use crate::sequences::{Alphabet, FrequencyVector, Symbol, Word};
use crate::suffix_automaton::SuffixAutomaton;

/// Per letter and window length `n`: the smallest and largest number of
/// occurrences of the letter over all factors of length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceProfile {
    alphabet: Alphabet,
    n_max: usize,
    /// Indexed `[letter * n_max + (n - 1)]`.
    min: Vec<u32>,
    max: Vec<u32>,
}

impl BalanceProfile {
    pub(crate) fn from_columns(alphabet: Alphabet, n_max: usize, columns: Vec<(Vec<u32>, Vec<u32>)>) -> Self {
        let d = alphabet.len();
        let mut min = vec![0; d * n_max];
        let mut max = vec![0; d * n_max];
        for (n0, (lo, hi)) in columns.into_iter().enumerate() {
            for a in 0..d {
                min[a * n_max + n0] = lo[a];
                max[a * n_max + n0] = hi[a];
            }
        }
        BalanceProfile {
            alphabet,
            n_max,
            min,
            max,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn slot(&self, symbol: Symbol, n: usize) -> usize {
        assert!((1..=self.n_max).contains(&n), "window length {n} not profiled");
        let a = self.alphabet.index_of(symbol).expect("letter in alphabet");
        a * self.n_max + n - 1
    }

    pub fn min_count(&self, symbol: Symbol, n: usize) -> u32 {
        self.min[self.slot(symbol, n)]
    }

    pub fn max_count(&self, symbol: Symbol, n: usize) -> u32 {
        self.max[self.slot(symbol, n)]
    }

    /// `δ_a(n)`: spread of the letter count over factors of length `n`.
    pub fn deficiency(&self, symbol: Symbol, n: usize) -> u32 {
        let i = self.slot(symbol, n);
        self.max[i] - self.min[i]
    }

    /// Largest deficiency of one letter over all profiled lengths.
    pub fn letter_k(&self, symbol: Symbol) -> u32 {
        (1..=self.n_max)
            .map(|n| self.deficiency(symbol, n))
            .max()
            .unwrap_or(0)
    }

    /// Measured balance constant: the largest deficiency overall.
    pub fn k(&self) -> u32 {
        self.max
            .iter()
            .zip(&self.min)
            .map(|(hi, lo)| hi - lo)
            .max()
            .unwrap_or(0)
    }
}

fn check_n_max(w: &Word, n_max: usize) -> Result<()> {
    if n_max < 1 || n_max > w.len() {
        return Err(Error::OutOfRange {
            name: "n_max",
            value: n_max,
            expected: format!("1 <= n_max <= {}", w.len()),
        });
    }
    Ok(())
}

/// Extremes of window counts of every letter for one window length.
/// Sliding one step changes at most two counts; the incoming letter can
/// only raise a maximum and the outgoing one can only lower a minimum.
fn window_extremes(letters: &[u32], d: usize, n: usize) -> (Vec<u32>, Vec<u32>) {
    let mut count = vec![0u32; d];
    for &l in &letters[..n] {
        count[l as usize] += 1;
    }
    let mut lo = count.clone();
    let mut hi = count.clone();
    for (&out, &inn) in letters.iter().zip(&letters[n..]) {
        let (out, inn) = (out as usize, inn as usize);
        count[inn] += 1;
        count[out] -= 1;
        hi[inn] = hi[inn].max(count[inn]);
        lo[out] = lo[out].min(count[out]);
    }
    (lo, hi)
}

pub fn balance_profile(w: &Word, n_max: usize) -> Result<BalanceProfile> {
    check_n_max(w, n_max)?;
    let d = w.alphabet().len();
    let letters = w.indices();
    let columns: Vec<_> = (1..=n_max)
        .into_par_iter()
        .map(|n| window_extremes(letters, d, n))
        .collect();
    Ok(BalanceProfile::from_columns(w.alphabet().clone(), n_max, columns))
}

/// `C(n)` for `n = 0..=n_max`, with `C(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityTable {
    counts: Vec<u64>,
}

impl ComplexityTable {
    pub(crate) fn new(counts: Vec<u64>) -> Self {
        ComplexityTable { counts }
    }

    pub fn get(&self, n: usize) -> u64 {
        self.counts[n]
    }

    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

pub fn factor_complexity(w: &Word, n_max: usize) -> Result<ComplexityTable> {
    check_n_max(w, n_max)?;
    let sa = SuffixAutomaton::build(w.indices(), w.alphabet().len());
    Ok(ComplexityTable::new(sa.distinct_factors_by_length(n_max)))
}

/// `|w|_a / |w|` for every alphabet letter, as exact rationals.
pub fn empirical_frequencies(w: &Word) -> Result<BTreeMap<Symbol, FieldElement>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    w.alphabet()
        .symbols()
        .iter()
        .map(|&s| Ok((s, FieldElement::rational(w.count_letter(s) as i64, w.len() as i64)?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyReport {
    /// `B_a = max over prefixes p of ||p|_a - f_a |p||`.
    pub per_letter: Vec<(Symbol, FieldElement)>,
    pub overall: FieldElement,
}

/// Running extremes of `(x + y*sqrt(D)) / c` over prefixes, where
/// `x = count*c - len*fa` and `y = -len*fb`.
fn prefix_extremes_small(letters: &[bool], fa: i128, fb: i128, fc: i128, d: i128) -> Option<[(i128, i128); 2]> {
    let (mut hi, mut lo) = ((0i128, 0i128), (0i128, 0i128));
    let mut count = 0i128;
    for (i, &hit) in letters.iter().enumerate() {
        count += hit as i128;
        let len = i as i128 + 1;
        let x = count.checked_mul(fc)?.checked_sub(len.checked_mul(fa)?)?;
        let y = len.checked_mul(fb)?.checked_neg()?;
        if sign_of_surd_i128(x - hi.0, y - hi.1, d)? == Ordering::Greater {
            hi = (x, y);
        }
        if sign_of_surd_i128(x - lo.0, y - lo.1, d)? == Ordering::Less {
            lo = (x, y);
        }
    }
    Some([hi, lo])
}

fn prefix_extremes_big(letters: &[bool], fa: &BigInt, fb: &BigInt, fc: &BigInt, d: &BigInt) -> [(BigInt, BigInt); 2] {
    let zero = || (BigInt::from(0), BigInt::from(0));
    let (mut hi, mut lo) = (zero(), zero());
    let mut count = BigInt::from(0);
    for (i, &hit) in letters.iter().enumerate() {
        if hit {
            count += 1;
        }
        let len = BigInt::from(i + 1);
        let x = &count * fc - &len * fa;
        let y = -(&len * fb);
        if sign_of_surd(&(&x - &hi.0), &(&y - &hi.1), d) == Ordering::Greater {
            hi = (x.clone(), y.clone());
        }
        if sign_of_surd(&(&x - &lo.0), &(&y - &lo.1), d) == Ordering::Less {
            lo = (x, y);
        }
    }
    [hi, lo]
}

fn to_i128(v: &BigInt) -> Option<i128> {
    num_traits::ToPrimitive::to_i128(v)
}

fn letter_discrepancy(w: &Word, symbol: Symbol, f: &FieldElement) -> Result<FieldElement> {
    let (fa, fb, fc) = f.parts();
    let d = f.radicand();
    let hits: Vec<bool> = w.symbols().map(|s| s == symbol).collect();
    let small = match (to_i128(fa), to_i128(fb), to_i128(fc), to_i128(d)) {
        (Some(a), Some(b), Some(c), Some(r)) => prefix_extremes_small(&hits, a, b, c, r)
            .map(|[hi, lo]| [(BigInt::from(hi.0), BigInt::from(hi.1)), (BigInt::from(lo.0), BigInt::from(lo.1))]),
        _ => None,
    };
    let [hi, lo] = small.unwrap_or_else(|| prefix_extremes_big(&hits, fa, fb, fc, d));
    let as_value = |(x, y): (BigInt, BigInt)| FieldElement::quadratic(x, y, fc.clone(), d.clone());
    let hi = as_value(hi)?;
    let lo = -as_value(lo)?;
    Ok(if hi.try_cmp(&lo)? == Ordering::Less { lo } else { hi })
}

/// Prefix discrepancy against exact target frequencies. Every letter of
/// `w` must carry a frequency in `f`.
pub fn discrepancy(w: &Word, f: &FrequencyVector) -> Result<DiscrepancyReport> {
    if let Some(s) = w.alphabet().symbols().iter().find(|&&s| f.get(s).is_none()) {
        return Err(Error::UnknownSymbol(*s));
    }
    let per_letter = f
        .alphabet()
        .symbols()
        .par_iter()
        .zip(f.entries())
        .map(|(&s, fs)| Ok((s, letter_discrepancy(w, s, fs)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut overall = FieldElement::zero();
    for (_, b) in &per_letter {
        if b.try_cmp(&overall)? == Ordering::Greater {
            overall = b.clone();
        }
    }
    Ok(DiscrepancyReport {
        per_letter,
        overall,
    })
}

/// Smallest period `p` of `w`, reported only when `|w| >= 3p`.
pub fn detect_period(w: &Word) -> Option<usize> {
    let s = w.indices();
    if s.len() < 2 {
        return None;
    }
    // prefix function: border[i] = longest proper border of s[..=i]
    let mut border = vec![0usize; s.len()];
    for i in 1..s.len() {
        let mut k = border[i - 1];
        while k > 0 && s[i] != s[k] {
            k = border[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        border[i] = k;
    }
    let p = s.len() - border[s.len() - 1];
    (s.len() >= 3 * p).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanical::{mechanical_stream, MechanicalParams};
    use crate::oracle::{brute_balance, brute_complexity};
    use crate::sequences::{take_prefix, PeriodicStream};

    fn mech(alpha: &str, n: usize) -> Word {
        let p = MechanicalParams::with_slope(alpha.parse().unwrap()).unwrap();
        take_prefix(&mut mechanical_stream(&p), n)
    }

    #[test]
    fn periodic_balance() {
        let w = take_prefix(&mut PeriodicStream::new(&Word::parse("1324").unwrap()).unwrap(), 200);
        let p = balance_profile(&w, 50).unwrap();
        assert_eq!(p.k(), 1);
        assert_eq!(p, brute_balance(&w, 50).unwrap());
    }

    #[test]
    fn constant_word_is_flat() {
        let w = Word::parse(&"1".repeat(30)).unwrap();
        let p = balance_profile(&w, 30).unwrap();
        assert_eq!(p.k(), 0);
        assert_eq!(p.min_count(1, 7), 7);
        let c = factor_complexity(&w, 30).unwrap();
        assert!(c.counts().iter().all(|&x| x == 1));
    }

    #[test]
    fn fibonacci_prefix() {
        let w = mech("(3-sqrt(5))/2", 1000);
        assert_eq!(balance_profile(&w, 100).unwrap().k(), 1);
        assert_eq!(balance_profile(&w, 100).unwrap(), brute_balance(&w, 100).unwrap());
        let c = factor_complexity(&w, 40).unwrap();
        for n in 0..=40 {
            assert_eq!(c.get(n), n as u64 + 1);
        }
        assert_eq!(c, brute_complexity(&w, 40).unwrap());
    }

    #[test]
    fn range_errors() {
        let w = Word::parse("1212").unwrap();
        assert!(balance_profile(&w, 0).is_err());
        assert!(balance_profile(&w, 5).is_err());
        assert!(factor_complexity(&w, 5).is_err());
        assert!(empirical_frequencies(&Word::empty(w.alphabet().clone())).is_err());
    }

    #[test]
    fn frequencies() {
        let f = empirical_frequencies(&Word::parse("1212").unwrap()).unwrap();
        assert_eq!(f[&1].to_string(), "1/2");
        assert_eq!(f[&2].to_string(), "1/2");
        let f = empirical_frequencies(&Word::parse("123123123").unwrap()).unwrap();
        assert!(f.values().all(|x| x.to_string() == "1/3"));
    }

    #[test]
    fn mechanical_discrepancy_at_most_one() {
        for alpha in ["(3-sqrt(5))/2", "2/7", "(0+sqrt(2))/2"] {
            let w = mech(alpha, 2000);
            let a: FieldElement = alpha.parse().unwrap();
            let b = &FieldElement::one() - &a;
            let f = FrequencyVector::new(w.alphabet().clone(), vec![a, b]).unwrap();
            let r = discrepancy(&w, &f).unwrap();
            assert!(r.overall <= FieldElement::one());
            assert!(r.overall.is_positive());
        }
    }

    #[test]
    fn discrepancy_by_hand() {
        let w = Word::parse("1").unwrap();
        let w = Word::new(Alphabet::numbered(2).unwrap(), w.symbols()).unwrap();
        let f = FrequencyVector::parse("1/3,2/3").unwrap();
        let r = discrepancy(&w, &f).unwrap();
        assert_eq!(r.per_letter[0].1.to_string(), "2/3");
        assert_eq!(r.per_letter[1].1.to_string(), "2/3");
        let ones = Word::parse("1111").unwrap();
        let r = discrepancy(&ones, &FrequencyVector::parse("1").unwrap()).unwrap();
        assert!(r.overall.is_zero());
        assert!(discrepancy(&Word::parse("13").unwrap(), &f).is_err());
    }

    #[test]
    fn discrepancy_big_path_agrees() {
        let w = mech("(0+sqrt(2))/2", 300);
        let a: FieldElement = "(0+sqrt(2))/2".parse().unwrap();
        let hits: Vec<bool> = w.symbols().map(|s| s == 1).collect();
        let (fa, fb, fc) = a.parts();
        let small = prefix_extremes_small(&hits, 0, 1, 2, 2).unwrap();
        let big = prefix_extremes_big(&hits, fa, fb, fc, a.radicand());
        assert_eq!(BigInt::from(small[0].0), big[0].0);
        assert_eq!(BigInt::from(small[1].1), big[1].1);
    }

    #[test]
    fn periods() {
        assert_eq!(detect_period(&Word::parse("12121212").unwrap()), Some(2));
        assert_eq!(detect_period(&Word::parse("121212123").unwrap()), None);
        assert_eq!(detect_period(&Word::parse("1").unwrap()), None);
        assert_eq!(detect_period(&mech("1/2", 40)), Some(2));
        assert_eq!(detect_period(&mech("3/7", 21)), Some(7));
        assert_eq!(detect_period(&mech("3/7", 20)), None);
    }

    #[test]
    fn longer_prefix_never_lowers_deficiency() {
        let w = mech("(5-sqrt(7))/4", 3000);
        let short = balance_profile(&w.factor(0, 500), 100).unwrap();
        let long = balance_profile(&w, 100).unwrap();
        for n in 1..=100 {
            for s in [1, 2] {
                assert!(long.deficiency(s, n) >= short.deficiency(s, n));
            }
        }
    }
}
