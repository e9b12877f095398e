//! Colouring of a binary sequence by two sequences over disjoint alphabets,
//! the projection back onto `{a, b}`, and the letter-erasing morphism.
//!
//! In `v = colour(u, a, b)` the `n`-th occurrence of the first letter of
//! `u` becomes `a_n` and the `n`-th occurrence of the second letter
//! becomes `b_n`.

use crate::error::{Error, Result};
use crate::sequences::{Alphabet, SequenceStream, Symbol, Word};

pub struct ColourStream<U, A, B> {
    u: U,
    a: A,
    b: B,
    letter_a: Symbol,
    alphabet: Alphabet,
    occ_a: u64,
    occ_b: u64,
}

/// Lazily colours `u` by `a` and `b`. `u` must be binary; its first
/// alphabet symbol plays the role of `a`.
pub fn colour<U, A, B>(u: U, a: A, b: B) -> Result<ColourStream<U, A, B>>
where
    U: SequenceStream,
    A: SequenceStream,
    B: SequenceStream,
{
    if u.alphabet().len() != 2 {
        return Err(Error::NotBinary(u.alphabet().len()));
    }
    let alphabet = a.alphabet().union(b.alphabet())?;
    Ok(ColourStream {
        letter_a: u.alphabet().symbol(0),
        u,
        a,
        b,
        alphabet,
        occ_a: 0,
        occ_b: 0,
    })
}

impl<U, A, B> ColourStream<U, A, B> {
    /// Occurrences of `a` and `b` consumed from `u` so far.
    pub fn occurrences(&self) -> (u64, u64) {
        (self.occ_a, self.occ_b)
    }

    pub fn into_parts(self) -> (U, A, B) {
        (self.u, self.a, self.b)
    }
}

impl<U, A, B> SequenceStream for ColourStream<U, A, B>
where
    U: SequenceStream,
    A: SequenceStream,
    B: SequenceStream,
{
    fn next_symbol(&mut self) -> Symbol {
        if self.u.next_symbol() == self.letter_a {
            self.occ_a += 1;
            self.a.next_symbol()
        } else {
            self.occ_b += 1;
            self.b.next_symbol()
        }
    }

    fn position(&self) -> u64 {
        self.occ_a + self.occ_b
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

/// Colouring of finite words. Fails when `a` or `b` has fewer symbols
/// than `u` has occurrences of the corresponding letter.
pub fn colour_words(u: &Word, a: &Word, b: &Word) -> Result<Word> {
    if u.alphabet().len() != 2 {
        return Err(Error::NotBinary(u.alphabet().len()));
    }
    let alphabet = a.alphabet().union(b.alphabet())?;
    let mut a_iter = a.symbols();
    let mut b_iter = b.symbols();
    let mut out = Vec::with_capacity(u.len());
    for &letter in u.indices() {
        let next = if letter == 0 {
            a_iter.next().ok_or(Error::Exhausted("a-word"))?
        } else {
            b_iter.next().ok_or(Error::Exhausted("b-word"))?
        };
        out.push(next);
    }
    Word::new(alphabet, out)
}

/// The projection `π`: symbols of `a_side` map to `a`, symbols of
/// `b_side` to `b`. The result is over `{1, 2}` with `1 = a`, `2 = b`.
pub fn project(v: &Word, a_side: &[Symbol], b_side: &[Symbol]) -> Result<Word> {
    let letters = v
        .symbols()
        .map(|s| {
            if a_side.contains(&s) {
                Ok(0)
            } else if b_side.contains(&s) {
                Ok(1)
            } else {
                Err(Error::UnknownSymbol(s))
            }
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(Word::from_indices(Alphabet::numbered(2)?, letters))
}

/// The morphism `π_A`: keeps letters of `keep`, erases the rest. The
/// result stays over the alphabet of `w`.
pub fn erase_to(w: &Word, keep: &[Symbol]) -> Word {
    let letters = w
        .indices()
        .iter()
        .copied()
        .filter(|&l| keep.contains(&w.alphabet().symbol(l as usize)))
        .collect();
    Word::from_indices(w.alphabet().clone(), letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanical::{mechanical_stream, MechanicalParams};
    use crate::sequences::{take_prefix, PeriodicStream};

    fn periodic(s: &str) -> PeriodicStream {
        PeriodicStream::new(&Word::parse(s).unwrap()).unwrap()
    }

    fn binary(ab: &str) -> Word {
        let syms: Vec<Symbol> = ab.chars().map(|c| if c == 'a' { 1 } else { 2 }).collect();
        Word::new(Alphabet::numbered(2).unwrap(), syms).unwrap()
    }

    const U: &str = "aabaababaabaababaababaabaababaabaab";
    const V: &str = "12513615416215361451621531645126135";

    #[test]
    fn reference_colouring() {
        let u = binary(U);
        let a = take_prefix(&mut periodic("121314"), 40);
        let b = take_prefix(&mut periodic("56"), 40);
        assert_eq!(colour_words(&u, &a, &b).unwrap().render(), V);
    }

    #[test]
    fn reference_colouring_as_stream() {
        let u = PeriodicStream::new(&binary(U)).unwrap();
        let mut v = colour(u, periodic("121314"), periodic("56")).unwrap();
        assert_eq!(take_prefix(&mut v, 35).render(), V);
        assert_eq!(v.position(), 35);
        let (occ_a, occ_b) = v.occurrences();
        assert_eq!(occ_a as usize, U.matches('a').count());
        assert_eq!(occ_b as usize, U.matches('b').count());
    }

    #[test]
    fn reference_projection() {
        let w = Word::parse("54162153614").unwrap();
        let p = project(&w, &[1, 2, 3, 4], &[5, 6]).unwrap();
        assert_eq!(p.to_ab_string(), "baabaababaa");
        let empty = Word::empty(Alphabet::numbered(6).unwrap());
        assert!(project(&empty, &[1], &[2]).unwrap().is_empty());
        assert!(project(&w, &[1, 2, 3], &[5, 6]).is_err());
    }

    #[test]
    fn constant_colours_relabel() {
        let p = MechanicalParams::with_slope("(3-sqrt(5))/2".parse().unwrap()).unwrap();
        let u = take_prefix(&mut mechanical_stream(&p), 50);
        let mut v = colour(
            mechanical_stream(&p),
            PeriodicStream::constant(7),
            PeriodicStream::constant(8),
        )
        .unwrap();
        let v = take_prefix(&mut v, 50);
        let relabeled: Vec<Symbol> = u.symbols().map(|s| if s == 1 { 7 } else { 8 }).collect();
        assert_eq!(v.symbols().collect::<Vec<_>>(), relabeled);
    }

    #[test]
    fn alternating_colouring() {
        let u = periodic("12");
        let mut v = colour(u, periodic("12"), PeriodicStream::constant(3)).unwrap();
        assert_eq!(take_prefix(&mut v, 8).render(), "13231323");
    }

    #[test]
    fn overlap_and_arity_rejected() {
        assert!(matches!(
            colour(periodic("12"), periodic("34"), periodic("45")),
            Err(Error::AlphabetOverlap(4))
        ));
        assert!(matches!(
            colour(periodic("123"), periodic("4"), periodic("5")),
            Err(Error::NotBinary(3))
        ));
    }

    #[test]
    fn finite_colouring_runs_out() {
        let u = binary("aab");
        let a = Word::parse("1").unwrap();
        let b = Word::parse("5").unwrap();
        assert!(matches!(colour_words(&u, &a, &b), Err(Error::Exhausted("a-word"))));
    }

    #[test]
    fn erasing() {
        let w = Word::parse("12513615").unwrap();
        assert_eq!(erase_to(&w, &[1, 2, 3, 4]).render(), "12131");
        assert_eq!(erase_to(&w, w.alphabet().symbols()), w);
        assert!(erase_to(&w, &[]).is_empty());
    }

    #[test]
    fn round_trip_and_fidelity() {
        let p = MechanicalParams::with_slope("(0+sqrt(2))/2".parse().unwrap()).unwrap();
        let u_prefix = take_prefix(&mut mechanical_stream(&p), 500);
        let mut v = colour(mechanical_stream(&p), periodic("1213"), periodic("45")).unwrap();
        let v = take_prefix(&mut v, 500);
        for n in [0, 1, 17, 250, 500] {
            let head = v.factor(0, n);
            assert_eq!(project(&head, &[1, 2, 3], &[4, 5]).unwrap().indices(), u_prefix.factor(0, n).indices());
            let a_part: Vec<Symbol> = erase_to(&head, &[1, 2, 3]).symbols().collect();
            let a_ref = take_prefix(&mut periodic("1213"), a_part.len());
            assert_eq!(a_part, a_ref.symbols().collect::<Vec<_>>());
        }
    }
}
