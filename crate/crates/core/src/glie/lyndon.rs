//! Lyndon words and the free Lie algebra over GF(2) in the Lyndon basis.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// A word over `{1..m}`; letters are stored as bytes.
pub type Word = Vec<u8>;

/// `w` is strictly smaller than each of its proper suffixes (equivalently,
/// than each of its proper rotations).
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
/// `None` for single letters.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| w.split_at(i))
}

/// Lyndon words of length exactly `d` over `{1..m}`, in lexicographic order.
pub fn lyndon_words(m: u8, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if m == 0 || d == 0 {
        return out;
    }
    // Duval's generation of all Lyndon words of length <= d.
    let mut w: Word = vec![1];
    loop {
        if w.len() == d {
            out.push(w.clone());
        }
        let period = w.len();
        while w.len() < d {
            w.push(w[w.len() - period]);
        }
        while w.last() == Some(&m) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => break,
        }
    }
    out
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`d` part of the free Lie algebra on `m` generators:
/// `(1/d) Σ_{e | d} μ(e) m^{d/e}`.
pub fn witt_number(m: u64, d: u64) -> u64 {
    assert!(d >= 1);
    let mut total: i128 = 0;
    for e in (1..=d).filter(|&e| d.is_multiple_of(e)) {
        total += mobius(e) as i128 * (m as i128).pow((d / e) as u32);
    }
    (total / d as i128) as u64
}

/// A Lyndon word standing for its standard bracketing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LyndonMonomial {
    word: Word,
}

impl LyndonMonomial {
    pub fn new(word: Word) -> Option<Self> {
        (is_lyndon(&word) && !word.contains(&0)).then_some(LyndonMonomial { word })
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    /// Standard bracketing, e.g. `[1,[1,2]]` for the word 112.
    pub fn bracketing(&self) -> String {
        fn go(w: &[u8]) -> String {
            match standard_factorization(w) {
                None => w[0].to_string(),
                Some((u, v)) => format!("[{},{}]", go(u), go(v)),
            }
        }
        go(&self.word)
    }
}

impl fmt::Debug for LyndonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LyndonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.word {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// All Lyndon monomials of degree `d` over `{1..m}`, in lexicographic order.
pub fn lyndon_basis(m: u8, d: usize) -> Vec<LyndonMonomial> {
    lyndon_words(m, d).into_iter().map(|word| LyndonMonomial { word }).collect()
}

/// Homogeneous element of the free Lie algebra over GF(2), as the set of
/// Lyndon words whose coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LieElement {
    degree: usize,
    terms: BTreeSet<Word>,
}

impl LieElement {
    pub fn zero(degree: usize) -> Self {
        LieElement { degree, terms: BTreeSet::new() }
    }

    /// The generator `μ_i`.
    pub fn generator(i: u8) -> Self {
        LieElement::monomial(&LyndonMonomial { word: vec![i] })
    }

    pub fn monomial(m: &LyndonMonomial) -> Self {
        LieElement { degree: m.degree(), terms: BTreeSet::from([m.word.clone()]) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = LyndonMonomial> + '_ {
        self.terms.iter().map(|w| LyndonMonomial { word: w.clone() })
    }

    pub fn term_words(&self) -> &BTreeSet<Word> {
        &self.terms
    }

    /// Sum over GF(2).
    pub fn add(&self, other: &LieElement) -> LieElement {
        assert!(
            self.is_zero() || other.is_zero() || self.degree == other.degree,
            "adding elements of different degrees"
        );
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        LieElement { degree, terms }
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|m| m.bracketing()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Bracket computation with a memo of products of Lyndon words.
#[derive(Default)]
pub struct LieEngine {
    cache: HashMap<(Word, Word), BTreeSet<Word>>,
}

impl LieEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bracket(&mut self, x: &LieElement, y: &LieElement) -> LieElement {
        let degree = x.degree + y.degree;
        let mut acc = BTreeSet::new();
        for u in &x.terms {
            for v in &y.terms {
                let prod = self.bracket_words(u, v);
                xor_into(&mut acc, &prod);
            }
        }
        LieElement { degree, terms: acc }
    }

    /// `[u, v]` for Lyndon words `u`, `v`, expanded in the Lyndon basis.
    ///
    /// For `u < v`: if `u` is a letter or the right factor of `u` is `>= v`,
    /// then `uv` is Lyndon with standard factorization `(u, v)`. Otherwise
    /// `u = (u1, u2)` with `u2 < v` and Jacobi gives
    /// `[[u1, u2], v] = [[u1, v], u2] + [u1, [u2, v]]`.
    pub fn bracket_words(&mut self, u: &[u8], v: &[u8]) -> BTreeSet<Word> {
        if u == v {
            return BTreeSet::new();
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        let key = (u.to_vec(), v.to_vec());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let result = match standard_factorization(u) {
            Some((u1, u2)) if u2 < v => {
                let mut acc = BTreeSet::new();
                for a in self.bracket_words(u1, v) {
                    let t = self.bracket_words(&a, u2);
                    xor_into(&mut acc, &t);
                }
                for b in self.bracket_words(u2, v) {
                    let t = self.bracket_words(u1, &b);
                    xor_into(&mut acc, &t);
                }
                acc
            }
            _ => {
                let mut w = u.to_vec();
                w.extend_from_slice(v);
                BTreeSet::from([w])
            }
        };
        self.cache.insert(key, result.clone());
        result
    }
}

fn xor_into(acc: &mut BTreeSet<Word>, other: &BTreeSet<Word>) {
    for w in other {
        if !acc.remove(w) {
            acc.insert(w.clone());
        }
    }
}

/// `[x, y]` in the free Lie algebra over GF(2).
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    LieEngine::new().bracket(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(m: u8, d: usize) -> Vec<String> {
        lyndon_basis(m, d).iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn lyndon_examples() {
        assert_eq!(words(2, 1), ["1", "2"]);
        assert_eq!(words(2, 3), ["112", "122"]);
        assert_eq!(words(3, 2), ["12", "13", "23"]);
        assert_eq!(words(2, 4), ["1112", "1122", "1222"]);
    }

    #[test]
    fn lyndon_counts_are_witt_numbers() {
        for m in 1..=4u8 {
            for d in 1..=10 {
                assert_eq!(lyndon_words(m, d).len() as u64, witt_number(m as u64, d as u64), "m={m} d={d}");
            }
        }
        // Necklace counting oracle: m^d = Σ_{e | d} e · W(m, e).
        for m in 1..=5u64 {
            for d in 1..=12u64 {
                let s: u64 = (1..=d).filter(|e| d % e == 0).map(|e| e * witt_number(m, e)).sum();
                assert_eq!(s, m.pow(d as u32));
            }
        }
    }

    #[test]
    fn generated_words_are_lyndon_and_sorted() {
        let ws = lyndon_words(3, 6);
        assert!(ws.iter().all(|w| is_lyndon(w)));
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
        // brute force: every word of length 6 over {1,2,3} that is Lyndon
        let mut brute = Vec::new();
        for code in 0..3usize.pow(6) {
            let mut c = code;
            let w: Word = (0..6)
                .map(|_| {
                    let x = (c % 3) as u8 + 1;
                    c /= 3;
                    x
                })
                .rev()
                .collect();
            if is_lyndon(&w) {
                brute.push(w);
            }
        }
        brute.sort();
        assert_eq!(ws, brute);
    }

    #[test]
    fn standard_factorizations() {
        assert_eq!(standard_factorization(b"\x01\x01\x02"), Some((&[1u8][..], &[1u8, 2][..])));
        assert_eq!(standard_factorization(&[1, 2, 2]), Some((&[1u8, 2][..], &[2u8][..])));
        assert_eq!(standard_factorization(&[1, 1, 2, 1, 2]), Some((&[1u8, 1, 2][..], &[1u8, 2][..])));
        assert_eq!(standard_factorization(&[1]), None);
        assert_eq!(LyndonMonomial::new(vec![1, 1, 2]).unwrap().bracketing(), "[1,[1,2]]");
        assert!(LyndonMonomial::new(vec![2, 1]).is_none());
    }

    #[test]
    fn bracket_examples() {
        let mu1 = LieElement::generator(1);
        let mu2 = LieElement::generator(2);
        let b12 = bracket(&mu1, &mu2);
        assert_eq!(b12.to_string(), "[1,2]");
        assert_eq!(bracket(&mu2, &mu1), b12);
        assert!(bracket(&mu1, &mu1).is_zero());
        assert!(bracket(&b12, &b12).is_zero());
        // [[1,2],1] = [1,[1,2]] over GF(2)
        assert_eq!(bracket(&b12, &mu1).to_string(), "[1,[1,2]]");
        assert_eq!(bracket(&b12, &mu2).to_string(), "[[1,2],2]");
    }

    #[test]
    fn non_lyndon_products_are_rewritten() {
        // [[1,2],[1,3]]: 12 < 13 but the right factor 2 of 12 is >= 13, so 1213 is Lyndon.
        let mut e = LieEngine::new();
        assert_eq!(e.bracket_words(&[1, 2], &[1, 3]), BTreeSet::from([vec![1, 2, 1, 3]]));
        // [[1,2,2],[1,2]]: 122 > 12, so this is [12, 122] = 12122 Lyndon
        assert_eq!(e.bracket_words(&[1, 2, 2], &[1, 2]), BTreeSet::from([vec![1, 2, 1, 2, 2]]));
        // [[1,1,2],2]: u=112=(1,12), 12 < 2 -> Jacobi:
        // [[1,2],12] + [1,[12,2]] = 0 + [1,122] = 1122
        assert_eq!(e.bracket_words(&[1, 1, 2], &[2]), BTreeSet::from([vec![1, 1, 2, 2]]));
    }
}
