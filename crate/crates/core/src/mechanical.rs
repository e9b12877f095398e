//! Lower mechanical words `s_n = floor((n+1)α + ρ) - floor(nα + ρ)`.
//!
//! `letter_a` is emitted when `s_n = 1` and `letter_b` when `s_n = 0`.
//! These are 1-balanced and the frequency of `letter_a` is `α`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{sign_of_surd, sign_of_surd_i128, FieldElement};
use crate::sequences::{Alphabet, SequenceStream, Symbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MechanicalParams {
    alpha: FieldElement,
    rho: FieldElement,
    letter_a: Symbol,
    letter_b: Symbol,
}

impl MechanicalParams {
    pub fn new(
        alpha: FieldElement,
        rho: FieldElement,
        letter_a: Symbol,
        letter_b: Symbol,
    ) -> Result<Self> {
        let zero = FieldElement::zero();
        let one = FieldElement::one();
        if alpha.try_cmp(&zero)? != Ordering::Greater || alpha.try_cmp(&one)? != Ordering::Less {
            return Err(Error::Mechanical(format!("slope {alpha} not in (0,1)")));
        }
        if rho.try_cmp(&zero)? == Ordering::Less || rho.try_cmp(&one)? != Ordering::Less {
            return Err(Error::Mechanical(format!("intercept {rho} not in [0,1)")));
        }
        alpha.checked_add(&rho)?;
        if letter_a == letter_b {
            return Err(Error::Mechanical("letters a and b must differ".into()));
        }
        Ok(MechanicalParams {
            alpha,
            rho,
            letter_a,
            letter_b,
        })
    }

    /// Slope `alpha`, intercept 0, letters `a = 1`, `b = 2`.
    pub fn with_slope(alpha: FieldElement) -> Result<Self> {
        Self::new(alpha, FieldElement::zero(), 1, 2)
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn rho(&self) -> &FieldElement {
        &self.rho
    }

    pub fn letters(&self) -> (Symbol, Symbol) {
        (self.letter_a, self.letter_b)
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(vec![self.letter_a, self.letter_b]).expect("distinct letters")
    }
}

/// Direct evaluation of the `n`-th symbol from two exact floors.
pub fn mechanical_symbol(p: &MechanicalParams, n: u64) -> Symbol {
    let at = |k: u64| (&p.alpha.scale(k) + &p.rho).floor();
    if at(n + 1) - at(n) == BigInt::from(1) {
        p.letter_a
    } else {
        p.letter_b
    }
}

/// Fractional part `{nα + ρ} = (x + y*sqrt(D)) / C` with fixed `C` and `D`.
#[derive(Clone, Debug)]
enum Fraction {
    Small {
        x: i128,
        y: i128,
        step_x: i128,
        step_y: i128,
        denom: i128,
        radicand: i128,
    },
    Big {
        x: BigInt,
        y: BigInt,
        step_x: BigInt,
        step_y: BigInt,
        denom: BigInt,
        radicand: BigInt,
    },
}

impl Fraction {
    fn new(alpha: &FieldElement, rho: &FieldElement) -> Self {
        let (aa, ab, ac) = alpha.parts();
        let (ra, rb, rc) = rho.parts();
        let denom = ac.lcm(rc);
        let (ka, kr) = (&denom / ac, &denom / rc);
        let radicand = if alpha.radicand().is_zero() {
            rho.radicand().clone()
        } else {
            alpha.radicand().clone()
        };
        let big = Fraction::Big {
            x: ra * &kr,
            y: rb * &kr,
            step_x: aa * &ka,
            step_y: ab * &ka,
            denom,
            radicand,
        };
        big.shrink()
    }

    fn shrink(self) -> Self {
        let Fraction::Big {
            x,
            y,
            step_x,
            step_y,
            denom,
            radicand,
        } = &self
        else {
            return self;
        };
        let fit = |v: &BigInt| v.to_i64().map(i128::from);
        match (
            fit(x),
            fit(y),
            fit(step_x),
            fit(step_y),
            fit(denom),
            fit(radicand),
        ) {
            (Some(x), Some(y), Some(step_x), Some(step_y), Some(denom), Some(radicand)) => {
                Fraction::Small {
                    x,
                    y,
                    step_x,
                    step_y,
                    denom,
                    radicand,
                }
            }
            _ => self,
        }
    }

    fn grow(&mut self) {
        if let Fraction::Small {
            x,
            y,
            step_x,
            step_y,
            denom,
            radicand,
        } = *self
        {
            *self = Fraction::Big {
                x: x.into(),
                y: y.into(),
                step_x: step_x.into(),
                step_y: step_y.into(),
                denom: denom.into(),
                radicand: radicand.into(),
            };
        }
    }

    /// Adds `α`; returns true (and subtracts 1) when the sum reaches 1.
    fn advance(&mut self) -> bool {
        loop {
            match self {
                Fraction::Small {
                    x,
                    y,
                    step_x,
                    step_y,
                    denom,
                    radicand,
                } => {
                    let next = x
                        .checked_add(*step_x)
                        .zip(y.checked_add(*step_y))
                        .and_then(|(nx, ny)| {
                            let sign = sign_of_surd_i128(nx - *denom, ny, *radicand)?;
                            Some((nx, ny, sign))
                        });
                    match next {
                        Some((nx, ny, sign)) => {
                            let carry = sign != Ordering::Less;
                            *x = if carry { nx - *denom } else { nx };
                            *y = ny;
                            return carry;
                        }
                        None => self.grow(),
                    }
                }
                Fraction::Big {
                    x,
                    y,
                    step_x,
                    step_y,
                    denom,
                    radicand,
                } => {
                    *x += &*step_x;
                    *y += &*step_y;
                    let shifted = &*x - &*denom;
                    let carry = sign_of_surd(&shifted, y, radicand) != Ordering::Less;
                    if carry {
                        *x = shifted;
                    }
                    return carry;
                }
            }
        }
    }
}

/// Incremental mechanical word: one exact addition and one sign test per
/// symbol.
#[derive(Clone, Debug)]
pub struct MechanicalStream {
    params: MechanicalParams,
    alphabet: Alphabet,
    fraction: Fraction,
    position: u64,
}

pub fn mechanical_stream(p: &MechanicalParams) -> MechanicalStream {
    MechanicalStream {
        alphabet: p.alphabet(),
        fraction: Fraction::new(&p.alpha, &p.rho),
        params: p.clone(),
        position: 0,
    }
}

impl MechanicalStream {
    pub fn params(&self) -> &MechanicalParams {
        &self.params
    }
}

impl SequenceStream for MechanicalStream {
    fn next_symbol(&mut self) -> Symbol {
        self.position += 1;
        if self.fraction.advance() {
            self.params.letter_a
        } else {
            self.params.letter_b
        }
    }

    fn position(&self) -> u64 {
        self.position
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::take_prefix;
    use proptest::prelude::*;

    fn fe(s: &str) -> FieldElement {
        s.parse().unwrap()
    }

    fn ab(alpha: &str, n: usize) -> String {
        let p = MechanicalParams::with_slope(fe(alpha)).unwrap();
        take_prefix(&mut mechanical_stream(&p), n).to_ab_string()
    }

    // Independent f64 floors; fine for short prefixes of these slopes.
    fn float_oracle(alpha: f64, n: usize) -> String {
        (0..n)
            .map(|k| {
                let (lo, hi) = (k as f64 * alpha, (k + 1) as f64 * alpha);
                if hi.floor() - lo.floor() == 1.0 {
                    'a'
                } else {
                    'b'
                }
            })
            .collect()
    }

    #[test]
    fn half_slope() {
        assert_eq!(ab("1/2", 8), "babababa");
        assert_eq!(float_oracle(0.5, 8), "babababa");
        assert_eq!(ab("1/2", 6), "bababa");
    }

    #[test]
    fn third_slope() {
        assert_eq!(ab("1/3", 6), "bbabba");
    }

    #[test]
    fn fibonacci_slope() {
        assert_eq!(ab("(3-sqrt(5))/2", 10), "bbabbababb");
        let alpha = (3.0 - 5f64.sqrt()) / 2.0;
        assert_eq!(ab("(3-sqrt(5))/2", 10), float_oracle(alpha, 10));
    }

    #[test]
    fn direct_matches_stream() {
        for alpha in ["2/7", "(3-sqrt(5))/2", "(0+sqrt(2))/2", "(-1+sqrt(3))/1"] {
            for rho in ["0", "1/3", "(1-sqrt(2))/-2"] {
                let rho = fe(rho);
                let alpha = fe(alpha);
                if !alpha.compatible(&rho) {
                    continue;
                }
                let p = MechanicalParams::new(alpha, rho, 7, 3).unwrap();
                let w = take_prefix(&mut mechanical_stream(&p), 200);
                let direct: Vec<Symbol> = (0..200).map(|n| mechanical_symbol(&p, n)).collect();
                assert_eq!(w.symbols().collect::<Vec<_>>(), direct);
            }
        }
    }

    #[test]
    fn rational_slope_is_periodic() {
        for (p, q) in [(1, 2), (2, 5), (3, 7), (5, 12)] {
            let params = MechanicalParams::with_slope(FieldElement::rational(p, q).unwrap()).unwrap();
            let w = take_prefix(&mut mechanical_stream(&params), 3 * q as usize);
            let s: Vec<Symbol> = w.symbols().collect();
            for i in q as usize..s.len() {
                assert_eq!(s[i], s[i - q as usize]);
            }
            assert_eq!(w.count_in(1, 0, q as usize), p as usize);
        }
    }

    #[test]
    fn invalid_params() {
        assert!(MechanicalParams::with_slope(fe("0")).is_err());
        assert!(MechanicalParams::with_slope(fe("1")).is_err());
        assert!(MechanicalParams::with_slope(fe("3/2")).is_err());
        assert!(MechanicalParams::new(fe("1/2"), fe("1"), 1, 2).is_err());
        assert!(MechanicalParams::new(fe("1/2"), fe("0"), 1, 1).is_err());
        assert!(MechanicalParams::new(fe("(0+sqrt(2))/2"), fe("(0+sqrt(3))/4"), 1, 2).is_err());
    }

    #[test]
    fn large_coefficients_switch_to_big_integers() {
        let alpha = FieldElement::quadratic(
            BigInt::from(10).pow(30u32),
            BigInt::from(1),
            BigInt::from(10).pow(30u32) * 3,
            2,
        )
        .unwrap();
        let p = MechanicalParams::with_slope(alpha).unwrap();
        let w = take_prefix(&mut mechanical_stream(&p), 60);
        let direct: Vec<Symbol> = (0..60).map(|n| mechanical_symbol(&p, n)).collect();
        assert_eq!(w.symbols().collect::<Vec<_>>(), direct);
    }

    proptest! {
        #[test]
        fn prefix_count_within_one(num in 1i64..100, den_extra in 1i64..100, b in -5i64..5, n in 1usize..400) {
            let den = num + den_extra;
            let alpha = FieldElement::quadratic(num * 10, b, den * 10, 7).unwrap();
            prop_assume!(alpha.is_positive() && alpha < FieldElement::one());
            let p = MechanicalParams::with_slope(alpha.clone()).unwrap();
            let w = take_prefix(&mut mechanical_stream(&p), n);
            for len in 1..=n {
                let count = FieldElement::from_integer(w.count_in(1, 0, len) as i64);
                let gap = &count - &alpha.scale(len as i64);
                prop_assert!(gap <= FieldElement::one() && gap >= -FieldElement::one());
            }
        }
    }
}
