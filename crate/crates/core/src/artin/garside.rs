//! Left normal form in the two-generator Artin group
//! `A(m) = ⟨a, b | (ab)_m = (ba)_m⟩`.
//!
//! Simple elements are the alternating words of length at most `m`; the
//! longest one is `Δ`. Every element is uniquely `Δ^k s_1 ⋯ s_r` with each
//! `s_i` a proper non-trivial simple element and `s_{i+1}` starting with the
//! letter `s_i` ends with.

use crate::error::{Error, Result};

/// A generator or its inverse; `gen` is 0 for `a` and 1 for `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u8, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn to_char(self) -> char {
        match (self.gen, self.inverse) {
            (0, false) => 'a',
            (0, true) => 'A',
            (_, false) => 'b',
            (_, true) => 'B',
        }
    }
}

/// Parse a word over `a b A B`.
pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .map(|c| match c {
            'a' => Ok(Letter::new(0, false)),
            'b' => Ok(Letter::new(1, false)),
            'A' => Ok(Letter::new(0, true)),
            'B' => Ok(Letter::new(1, true)),
            _ => Err(Error::Parse(format!("unexpected letter `{}` in dihedral word", c))),
        })
        .collect()
}

pub fn word_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.to_char()).collect()
}

pub fn inverse_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inv()).collect()
}

/// Proper simple factor: alternating word starting with `first`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub first: u8,
    pub len: u32,
}

impl Factor {
    fn last(self) -> u8 {
        if self.len % 2 == 1 {
            self.first
        } else {
            1 - self.first
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub delta: i64,
    pub factors: Vec<Factor>,
}

/// Arithmetic in `A(m)` through normal forms.
#[derive(Debug, Clone, Copy)]
pub struct DihedralArtin {
    m: u32,
}

impl DihedralArtin {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidDihedral(format!("label {} is below 2", m)));
        }
        Ok(DihedralArtin { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn identity(&self) -> NormalForm {
        NormalForm { delta: 0, factors: Vec::new() }
    }

    /// Conjugation by `Δ`: swaps the generators when `m` is odd.
    fn tau(&self, g: u8) -> u8 {
        if self.m % 2 == 1 {
            1 - g
        } else {
            g
        }
    }

    fn mul_positive(&self, nf: &mut NormalForm, g: u8) {
        match nf.factors.last_mut() {
            Some(f) if f.last() != g => {
                f.len += 1;
                if f.len == self.m {
                    nf.factors.pop();
                    nf.delta += 1;
                    for f in &mut nf.factors {
                        f.first = self.tau(f.first);
                    }
                }
            }
            _ => nf.factors.push(Factor { first: g, len: 1 }),
        }
    }

    /// Right multiplication by one letter.
    pub fn mul(&self, nf: &mut NormalForm, l: Letter) {
        if !l.inverse {
            return self.mul_positive(nf, l.gen);
        }
        // x⁻¹ = Δ⁻¹·y where y·x = Δ
        nf.delta -= 1;
        for f in &mut nf.factors {
            f.first = self.tau(f.first);
        }
        let last = 1 - l.gen;
        let first = if (self.m - 1) % 2 == 1 { last } else { 1 - last };
        for k in 0..self.m - 1 {
            self.mul_positive(nf, if k % 2 == 0 { first } else { 1 - first });
        }
    }

    pub fn normal_form(&self, w: &[Letter]) -> NormalForm {
        let mut nf = self.identity();
        for &l in w {
            self.mul(&mut nf, l);
        }
        nf
    }

    fn alternating(first: u8, len: u32) -> impl Iterator<Item = Letter> {
        (0..len).map(move |k| Letter::new(if k % 2 == 0 { first } else { 1 - first }, false))
    }

    /// A word representing `nf`.
    pub fn to_word(&self, nf: &NormalForm) -> Vec<Letter> {
        let delta: Vec<Letter> = Self::alternating(0, self.m).collect();
        let mut out = Vec::new();
        for _ in 0..nf.delta.unsigned_abs() {
            if nf.delta > 0 {
                out.extend_from_slice(&delta);
            } else {
                out.extend(inverse_word(&delta));
            }
        }
        for f in &nf.factors {
            out.extend(Self::alternating(f.first, f.len));
        }
        out
    }

    /// `(ab)_m (ba)_m⁻¹`.
    pub fn relator(&self) -> Vec<Letter> {
        let mut w: Vec<Letter> = Self::alternating(0, self.m).collect();
        w.extend(inverse_word(&Self::alternating(1, self.m).collect::<Vec<_>>()));
        w
    }
}

/// Image in the dihedral group of order `2m` times the exponent sum:
/// `(rotation, reflection, exponent sum)`. A homomorphism, so equal
/// elements of `A(m)` have equal images.
pub fn coxeter_image(m: u32, w: &[Letter]) -> (u32, bool, i64) {
    // ρ^r σ^f with a = σ and b = ρσ
    let (mut r, mut f, mut sum) = (0i64, false, 0i64);
    let m = m as i64;
    for l in w {
        let gr = l.gen as i64;
        // both generators are involutions in the quotient
        r = if f { r - gr } else { r + gr };
        f = !f;
        sum += if l.inverse { -1 } else { 1 };
    }
    (r.rem_euclid(m) as u32, f, sum)
}
