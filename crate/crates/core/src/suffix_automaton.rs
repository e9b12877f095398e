//! Suffix automaton over dense letter indices.
//!
//! Each state other than the root stands for the factors whose lengths lie
//! in `(len(link), len]`, and every factor belongs to exactly one state,
//! so distinct factors per length follow from one difference array.

use std::collections::HashMap;

const NONE: u32 = u32::MAX;
const DENSE_LIMIT: usize = 64;

enum Transitions {
    Dense { table: Vec<u32>, width: usize },
    Sparse(HashMap<(u32, u32), u32>),
}

impl Transitions {
    fn get(&self, state: u32, letter: u32) -> u32 {
        match self {
            Transitions::Dense { table, width } => table[state as usize * width + letter as usize],
            Transitions::Sparse(map) => map.get(&(state, letter)).copied().unwrap_or(NONE),
        }
    }

    fn set(&mut self, state: u32, letter: u32, target: u32) {
        match self {
            Transitions::Dense { table, width } => {
                table[state as usize * *width + letter as usize] = target
            }
            Transitions::Sparse(map) => {
                map.insert((state, letter), target);
            }
        }
    }

    fn add_state(&mut self) {
        if let Transitions::Dense { table, width } = self {
            table.extend(std::iter::repeat_n(NONE, *width));
        }
    }

    fn copy_state(&mut self, from: u32, to: u32, alphabet: usize) {
        match self {
            Transitions::Dense { table, width } => {
                let (f, t) = (from as usize * *width, to as usize * *width);
                table.copy_within(f..f + *width, t);
            }
            Transitions::Sparse(map) => {
                for c in 0..alphabet as u32 {
                    if let Some(&target) = map.get(&(from, c)) {
                        map.insert((to, c), target);
                    }
                }
            }
        }
    }
}

pub struct SuffixAutomaton {
    len: Vec<u32>,
    link: Vec<u32>,
    next: Transitions,
    alphabet: usize,
}

impl SuffixAutomaton {
    pub fn build(letters: &[u32], alphabet: usize) -> Self {
        let next = if alphabet <= DENSE_LIMIT {
            Transitions::Dense {
                table: Vec::with_capacity(2 * (letters.len() + 1) * alphabet),
                width: alphabet,
            }
        } else {
            Transitions::Sparse(HashMap::new())
        };
        let mut sa = SuffixAutomaton {
            len: Vec::with_capacity(2 * letters.len() + 1),
            link: Vec::with_capacity(2 * letters.len() + 1),
            next,
            alphabet,
        };
        sa.new_state(0, NONE);
        let mut last = 0u32;
        for &c in letters {
            last = sa.extend(last, c);
        }
        sa
    }

    fn new_state(&mut self, len: u32, link: u32) -> u32 {
        self.len.push(len);
        self.link.push(link);
        self.next.add_state();
        (self.len.len() - 1) as u32
    }

    fn extend(&mut self, last: u32, c: u32) -> u32 {
        let cur = self.new_state(self.len[last as usize] + 1, NONE);
        let mut p = last;
        while p != NONE && self.next.get(p, c) == NONE {
            self.next.set(p, c, cur);
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
            return cur;
        }
        let q = self.next.get(p, c);
        if self.len[p as usize] + 1 == self.len[q as usize] {
            self.link[cur as usize] = q;
            return cur;
        }
        let clone = self.new_state(self.len[p as usize] + 1, self.link[q as usize]);
        self.next.copy_state(q, clone, self.alphabet);
        while p != NONE && self.next.get(p, c) == q {
            self.next.set(p, c, clone);
            p = self.link[p as usize];
        }
        self.link[q as usize] = clone;
        self.link[cur as usize] = clone;
        cur
    }

    #[cfg(test)]
    pub fn state_count(&self) -> usize {
        self.len.len()
    }

    /// Number of distinct factors of each length `0..=n_max`.
    pub fn distinct_factors_by_length(&self, n_max: usize) -> Vec<u64> {
        let mut diff = vec![0i64; n_max + 2];
        for v in 1..self.len.len() {
            let lo = self.len[self.link[v] as usize] as usize + 1;
            let hi = (self.len[v] as usize).min(n_max);
            if lo <= hi {
                diff[lo] += 1;
                diff[hi + 1] -= 1;
            }
        }
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(1);
        let mut running = 0i64;
        for d in diff.iter().take(n_max + 1).skip(1) {
            running += d;
            out.push(running as u64);
        }
        out
    }
}
