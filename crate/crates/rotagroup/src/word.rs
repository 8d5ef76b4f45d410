//! Words over rotation generators.
//!
//! A word is a sequence of letters `s<id>^<e>` with exponent in `{1,2,3}`;
//! every generator has order 4, so inverses are cubes and exponents live mod
//! 4. A word written left to right denotes the corresponding product, with
//! the rightmost letter acting first.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter references generator {gen} but only {count} generators exist")]
    GenOutOfRange { gen: usize, count: usize },
    #[error("cannot evaluate a word without generators")]
    NoGenerators,
}

/// One factor `g^e` of a word, `e ∈ {1,2,3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub gen: usize,
    pub exp: u8,
}

/// A product of generator powers. Adjacent letters with the same generator
/// merge with exponents mod 4; letters whose exponent vanishes are dropped,
/// so the stored form is reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(gen: usize, exp: i64) -> Self {
        let mut w = Word::empty();
        w.push(gen, exp);
        w
    }

    /// Appends `gen^exp` on the right (it will act first).
    pub fn push(&mut self, gen: usize, exp: i64) {
        let mut e = exp.rem_euclid(4) as u8;
        if let Some(last) = self.letters.last() {
            if last.gen == gen {
                e = (last.exp + e) % 4;
                self.letters.pop();
            }
        }
        if e != 0 {
            self.letters.push(Letter { gen, exp: e });
        }
    }

    /// Product `self · other` (`other` acts first), reduced at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for l in &other.letters {
            out.push(l.gen, l.exp as i64);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        let mut out = Word::empty();
        for l in self.letters.iter().rev() {
            out.push(l.gen, 4 - l.exp as i64);
        }
        out
    }

    pub fn pow(&self, e: usize) -> Word {
        let mut out = Word::empty();
        for _ in 0..e {
            out = out.concat(self);
        }
        out
    }

    /// Commutator `[g, h] = g h g⁻¹ h⁻¹`.
    pub fn commutator(g: &Word, h: &Word) -> Word {
        g.concat(h).concat(&g.inverse()).concat(&h.inverse())
    }

    /// Conjugation `y x y⁻¹`.
    pub fn conjugated(y: &Word, x: &Word) -> Word {
        y.concat(x).concat(&y.inverse())
    }

    /// Exchanges two generator ids in every letter.
    pub fn swap_gens(&self, a: usize, b: usize) -> Word {
        let letters = self
            .letters
            .iter()
            .map(|l| Letter {
                gen: if l.gen == a {
                    b
                } else if l.gen == b {
                    a
                } else {
                    l.gen
                },
                exp: l.exp,
            })
            .collect();
        Word { letters }
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

    /// Multiplies the word out over the given generators.
    pub fn evaluate(&self, gens: &[Permutation]) -> Result<Permutation, WordError> {
        if gens.is_empty() {
            return Err(WordError::NoGenerators);
        }
        let degree = gens[0].degree();
        let mut acc = Permutation::identity(degree);
        let mut pows: Vec<Option<[Permutation; 3]>> = vec![None; gens.len()];
        for l in &self.letters {
            if l.gen >= gens.len() {
                return Err(WordError::GenOutOfRange {
                    gen: l.gen,
                    count: gens.len(),
                });
            }
            let table = pows[l.gen].get_or_insert_with(|| {
                let g = &gens[l.gen];
                let g2 = g * g;
                let g3 = &g2 * g;
                [g.clone(), g2, g3]
            });
            acc = &acc * &table[l.exp as usize - 1];
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}^{}", l.gen, l.exp)?;
        }
        Ok(())
    }
}

/// A word raised to a (possibly huge) power, kept symbolic so reports can
/// show `(base)^exponent` while evaluation powers the evaluated base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerWord {
    pub base: Word,
    pub exponent: BigUint,
}

impl PowerWord {
    pub fn new(base: Word, exponent: BigUint) -> Self {
        PowerWord { base, exponent }
    }

    pub fn evaluate(&self, gens: &[Permutation]) -> Result<Permutation, WordError> {
        Ok(self.base.evaluate(gens)?.power_big(&self.exponent))
    }

    /// Flattens to a plain word when the exponent is small enough to expand.
    pub fn expand(&self, max_letters: usize) -> Option<Word> {
        let e = self.exponent.to_usize()?;
        if e.checked_mul(self.base.len())? > max_letters {
            return None;
        }
        Some(self.base.pow(e))
    }
}

impl fmt::Display for PowerWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^{}", self.base, self.exponent)
    }
}
