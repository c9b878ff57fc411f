//! PBW-ordered words T1^a T2^b T3^c in the universal enveloping algebra of
//! su(2), reduced with [T_a, T_b] = i eps_abc T_c.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::gauss::GaussRat;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IsoWord {
    pub exps: [u8; 3],
}

/// Linear combination of PBW words.
pub type IsoSum = Vec<(GaussRat, IsoWord)>;

impl IsoWord {
    pub const ONE: IsoWord = IsoWord { exps: [0, 0, 0] };

    pub fn new(a: u8, b: u8, c: u8) -> IsoWord {
        IsoWord { exps: [a, b, c] }
    }

    /// Single generator T_g for g in 1..=3.
    pub fn generator(g: usize) -> IsoWord {
        let mut exps = [0; 3];
        exps[g - 1] = 1;
        IsoWord { exps }
    }

    pub fn degree(self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(self) -> bool {
        self == IsoWord::ONE
    }

    /// Generator sequence (1-based) in PBW order.
    pub fn letters(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (g, &e) in self.exps.iter().enumerate() {
            out.extend(std::iter::repeat(g + 1).take(e as usize));
        }
        out
    }
}

impl fmt::Debug for IsoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (g, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("T{}", g + 1)),
                e => parts.push(format!("T{}^{}", g + 1, e)),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for IsoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Levi-Civita symbol on 1-based indices.
pub fn epsilon(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

thread_local! {
    static RIGHT_GEN: RefCell<HashMap<(IsoWord, usize), IsoSum>> = RefCell::new(HashMap::new());
    static PRODUCT: RefCell<HashMap<(IsoWord, IsoWord), IsoSum>> = RefCell::new(HashMap::new());
}

fn push_scaled(out: &mut IsoSum, k: &GaussRat, terms: &IsoSum) {
    for (c, w) in terms {
        out.push((k * c, *w));
    }
}

fn collect(terms: IsoSum) -> IsoSum {
    let mut map: std::collections::BTreeMap<IsoWord, GaussRat> = Default::default();
    for (c, w) in terms {
        *map.entry(w).or_default() += &c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect()
}

fn append_last(terms: &IsoSum, g: usize) -> IsoSum {
    terms
        .iter()
        .map(|(c, w)| {
            let mut w = *w;
            w.exps[g - 1] += 1;
            (c.clone(), w)
        })
        .collect()
}

/// `word * T_g` reduced to PBW order.
pub fn right_mul_generator(word: IsoWord, g: usize) -> IsoSum {
    if let Some(hit) = RIGHT_GEN.with(|m| m.borrow().get(&(word, g)).cloned()) {
        return hit;
    }
    let [a, b, c] = word.exps;
    let out = match g {
        3 => vec![(GaussRat::ONE, IsoWord::new(a, b, c + 1))],
        2 if c == 0 => vec![(GaussRat::ONE, IsoWord::new(a, b + 1, 0))],
        2 => {
            // X T3 T2 = (X T2) T3 + X [T3, T2],  [T3, T2] = -i T1
            let head = IsoWord::new(a, b, c - 1);
            let mut out = append_last(&right_mul_generator(head, 2), 3);
            push_scaled(&mut out, &(-&GaussRat::I), &right_mul_generator(head, 1));
            collect(out)
        }
        1 if b == 0 && c == 0 => vec![(GaussRat::ONE, IsoWord::new(a + 1, 0, 0))],
        1 if c > 0 => {
            // X T3 T1 = (X T1) T3 + X [T3, T1],  [T3, T1] = i T2
            let head = IsoWord::new(a, b, c - 1);
            let mut out = IsoSum::new();
            for (k, w) in right_mul_generator(head, 1) {
                push_scaled(&mut out, &k, &right_mul_generator(w, 3));
            }
            push_scaled(&mut out, &GaussRat::I, &right_mul_generator(head, 2));
            collect(out)
        }
        1 => {
            // X T2 T1 = (X T1) T2 + X [T2, T1],  [T2, T1] = -i T3
            let head = IsoWord::new(a, b - 1, 0);
            let mut out = IsoSum::new();
            for (k, w) in right_mul_generator(head, 1) {
                push_scaled(&mut out, &k, &right_mul_generator(w, 2));
            }
            out.push((-&GaussRat::I, IsoWord::new(a, b - 1, 1)));
            collect(out)
        }
        _ => panic!("generator index must be 1, 2 or 3"),
    };
    RIGHT_GEN.with(|m| m.borrow_mut().insert((word, g), out.clone()));
    out
}

/// Product of two PBW words, reduced to PBW order.
pub fn mul_words(u: IsoWord, v: IsoWord) -> IsoSum {
    if v.is_one() {
        return vec![(GaussRat::ONE, u)];
    }
    if u.is_one() {
        return vec![(GaussRat::ONE, v)];
    }
    if let Some(hit) = PRODUCT.with(|m| m.borrow().get(&(u, v)).cloned()) {
        return hit;
    }
    let mut acc: IsoSum = vec![(GaussRat::ONE, u)];
    for g in v.letters() {
        let mut next = IsoSum::new();
        for (k, w) in &acc {
            push_scaled(&mut next, k, &right_mul_generator(*w, g));
        }
        acc = collect(next);
    }
    PRODUCT.with(|m| m.borrow_mut().insert((u, v), acc.clone()));
    acc
}

/// Normal-orders an arbitrary product of generators (1-based letters).
pub fn pbw_reduce(letters: &[usize]) -> IsoSum {
    let mut acc: IsoSum = vec![(GaussRat::ONE, IsoWord::ONE)];
    for &g in letters {
        let mut next = IsoSum::new();
        for (k, w) in &acc {
            push_scaled(&mut next, k, &right_mul_generator(*w, g));
        }
        acc = collect(next);
    }
    acc
}

/// Commutator [u, v] in PBW form.
pub fn commutator_words(u: IsoWord, v: IsoWord) -> IsoSum {
    let mut out = mul_words(u, v);
    for (c, w) in mul_words(v, u) {
        out.push((-&c, w));
    }
    collect(out)
}

/// Exact 2x2 spin-1/2 matrices T_a = sigma_a / 2, used as an independent oracle.
pub mod spin_half {
    use super::*;
    use crate::rational::Rational;

    pub type Mat2 = [[GaussRat; 2]; 2];

    pub fn identity() -> Mat2 {
        [[GaussRat::ONE, GaussRat::ZERO], [GaussRat::ZERO, GaussRat::ONE]]
    }

    pub fn generator(g: usize) -> Mat2 {
        let h = GaussRat::frac(1, 2);
        let ih = GaussRat::imag(Rational::new(1, 2));
        let z = GaussRat::ZERO;
        match g {
            1 => [[z.clone(), h.clone()], [h, z]],
            2 => [[z.clone(), -&ih], [ih, z]],
            3 => [[h.clone(), z.clone()], [z, -&h]],
            _ => panic!("generator index must be 1, 2 or 3"),
        }
    }

    pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
        std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
    }

    pub fn add_scaled(acc: &mut Mat2, k: &GaussRat, m: &Mat2) {
        for i in 0..2 {
            for j in 0..2 {
                acc[i][j] += &(k * &m[i][j]);
            }
        }
    }

    pub fn word(w: IsoWord) -> Mat2 {
        w.letters().into_iter().fold(identity(), |acc, g| mul(&acc, &generator(g)))
    }

    pub fn sum(terms: &IsoSum) -> Mat2 {
        let z = GaussRat::ZERO;
        let mut acc = [[z.clone(), z.clone()], [z.clone(), z]];
        for (k, w) in terms {
            add_scaled(&mut acc, k, &word(*w));
        }
        acc
    }

    pub fn letters(letters: &[usize]) -> Mat2 {
        letters.iter().fold(identity(), |acc, &g| mul(&acc, &generator(g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(c: GaussRat, w: IsoWord) -> IsoSum {
        vec![(c, w)]
    }

    #[test]
    fn single_bracket_reorders() {
        // [T3, T1] = i T2
        let got = pbw_reduce(&[3, 1]);
        let mut expected = vec![(GaussRat::I, IsoWord::generator(2)), (GaussRat::ONE, IsoWord::new(1, 0, 1))];
        expected.sort_by_key(|(_, w)| *w);
        assert_eq!(got, expected);
    }

    #[test]
    fn t2_t1_reorders_with_t3() {
        let got = pbw_reduce(&[2, 1]);
        let mut expected = vec![(-&GaussRat::I, IsoWord::generator(3)), (GaussRat::ONE, IsoWord::new(1, 1, 0))];
        expected.sort_by_key(|(_, w)| *w);
        assert_eq!(got, expected);
    }

    #[test]
    fn ordered_words_are_fixed() {
        assert_eq!(pbw_reduce(&[2, 2]), single(GaussRat::ONE, IsoWord::new(0, 2, 0)));
        assert_eq!(pbw_reduce(&[1, 2, 3]), single(GaussRat::ONE, IsoWord::new(1, 1, 1)));
    }

    #[test]
    fn casimir_is_central() {
        let casimir = [IsoWord::new(2, 0, 0), IsoWord::new(0, 2, 0), IsoWord::new(0, 0, 2)];
        for g in 1..=3 {
            let mut total = IsoSum::new();
            for w in casimir {
                total.extend(commutator_words(w, IsoWord::generator(g)));
            }
            assert!(collect(total).is_empty(), "T^2 does not commute with T{g}");
        }
    }

    #[test]
    fn three_letter_word_matches_spin_half() {
        let got = pbw_reduce(&[3, 2, 1]);
        assert!(got.len() <= 6);
        assert_eq!(spin_half::sum(&got), spin_half::letters(&[3, 2, 1]));
    }
}
