//! Packed GF(2) vectors and an incrementally maintained row echelon span.

/// A GF(2) vector of fixed width packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    width: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(width: usize) -> Self {
        BitVector { width, words: vec![0; width.div_ceil(64)] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn lowest_set(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(n, w)| n * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(n, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(n * 64 + b)
            })
        })
    }
}

/// Span of inserted vectors, kept in echelon form: every row is zero at the
/// pivots of the rows inserted before it.
#[derive(Debug, Clone)]
pub struct Gf2Span {
    width: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Gf2Span {
    pub fn new(width: usize) -> Self {
        Gf2Span { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduce `v` against the current rows.
    pub fn reduce(&self, mut v: BitVector) -> BitVector {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Add `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: BitVector) -> bool {
        assert_eq!(v.width(), self.width, "vector width mismatch");
        let r = self.reduce(v);
        match r.lowest_set() {
            Some(p) => {
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(width: usize, ones: &[usize]) -> BitVector {
        let mut v = BitVector::zeros(width);
        for &i in ones {
            v.flip(i);
        }
        v
    }

    #[test]
    fn rank_of_dependent_set() {
        let mut s = Gf2Span::new(130);
        assert!(s.insert(vec_of(130, &[0, 70])));
        assert!(s.insert(vec_of(130, &[70, 129])));
        assert!(!s.insert(vec_of(130, &[0, 129])));
        assert!(!s.insert(BitVector::zeros(130)));
        assert!(s.insert(vec_of(130, &[5])));
        assert_eq!(s.rank(), 3);
        assert!(s.contains(&vec_of(130, &[0, 5, 129])));
        assert!(!s.contains(&vec_of(130, &[1])));
    }

    #[test]
    fn matches_brute_force_span_size() {
        // Span size 2^rank against explicit closure for small random sets.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let width = rng.gen_range(1..10);
            let n = rng.gen_range(0..8);
            let vs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << width)).collect();
            let mut closure = std::collections::HashSet::from([0u64]);
            for &v in &vs {
                let more: Vec<u64> = closure.iter().map(|x| x ^ v).collect();
                closure.extend(more);
            }
            let mut s = Gf2Span::new(width);
            for &v in &vs {
                let ones: Vec<usize> = (0..width).filter(|b| v >> b & 1 == 1).collect();
                s.insert(vec_of(width, &ones));
            }
            assert_eq!(1usize << s.rank(), closure.len());
        }
    }

    #[test]
    fn ones_iterates_set_bits() {
        let v = vec_of(200, &[3, 64, 199]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 64, 199]);
        assert_eq!(v.lowest_set(), Some(3));
    }
}
