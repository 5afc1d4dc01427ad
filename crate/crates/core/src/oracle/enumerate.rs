//! Todd–Coxeter enumeration of the cosets of the trivial subgroup for
//! presentations whose generators are all involutions.
//!
//! Relators are scanned HLT-style: every live coset, in order, is scanned
//! against every relator, defining new cosets as needed. Since each generator
//! is its own inverse, setting `c·x = d` also sets `d·x = c`.

use crate::words::GroupWord;

use super::OracleError;

const UNDEF: u32 = u32::MAX;

struct Enumerator {
    m: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    limit: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn count(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.m + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.m + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, OracleError> {
        let n = self.count();
        if n >= self.limit {
            return Err(OracleError::CosetLimit { limit: self.limit });
        }
        let d = n as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.m));
        self.set(c, x, d);
        self.set(d, x, c);
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut next = 0;
        while next < self.queue.len() {
            let e = self.queue[next];
            next += 1;
            for x in 0..self.m {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                if self.get(f, x) == e {
                    self.set(f, x, UNDEF);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                let fx = self.get(f1, x);
                if ex != UNDEF {
                    self.merge(f1, ex);
                } else if fx != UNDEF {
                    self.merge(e1, fx);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x, e1);
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<(), OracleError> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() - 1);
        loop {
            while i <= j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]);
                i += 1;
                if i > j {
                    if f != b {
                        self.coincidence(f, b);
                    }
                    return Ok(());
                }
            }
            while j >= i && self.get(b, w[j]) != UNDEF {
                b = self.get(b, w[j]);
                if j == i {
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if i == j {
                self.set(f, w[i], b);
                self.set(b, w[i], f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Renumber the live cosets as `0..n`, keeping their order.
    fn compact(self) -> (usize, Vec<Vec<u32>>) {
        let mut index = vec![UNDEF; self.count()];
        let mut n = 0u32;
        for c in 0..self.count() as u32 {
            if self.alive(c) {
                index[c as usize] = n;
                n += 1;
            }
        }
        let mut columns = vec![Vec::with_capacity(n as usize); self.m];
        for c in 0..self.count() as u32 {
            if self.alive(c) {
                for (x, col) in columns.iter_mut().enumerate() {
                    col.push(index[self.get(c, x) as usize]);
                }
            }
        }
        (n as usize, columns)
    }
}

/// Enumerate the cosets of the trivial subgroup; returns the coset count and,
/// for each generator, its action as a permutation of `0..n`.
pub(super) fn enumerate(m: usize, relators: &[GroupWord], limit: usize) -> Result<(usize, Vec<Vec<u32>>), OracleError> {
    if limit == 0 {
        return Err(OracleError::CosetLimit { limit });
    }
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| r.letters().iter().map(|&v| v as usize - 1).collect())
        .collect();
    let mut e = Enumerator { m, table: vec![UNDEF; m], parent: vec![0], limit, queue: Vec::new() };
    let mut c = 0u32;
    while (c as usize) < e.count() {
        if e.alive(c) {
            for r in &rels {
                e.scan_and_fill(c, r)?;
                if !e.alive(c) {
                    break;
                }
            }
            for x in 0..m {
                if e.alive(c) && e.get(c, x) == UNDEF {
                    e.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    Ok(e.compact())
}
