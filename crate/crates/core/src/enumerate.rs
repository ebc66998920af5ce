//! Todd–Coxeter coset enumeration over the trivial subgroup, giving the order
//! of a finite quotient of `F_2` together with its regular permutation action.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::kernels::smith_normal_form;
use crate::words::{Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("coset table exceeded {limit} cosets")]
    Overflow { limit: usize },
    #[error("relator {index} is the identity")]
    TrivialRelator { index: usize },
    #[error("coset limit must be positive")]
    ZeroLimit,
}

/// Default bound on the number of cosets defined during an enumeration.
pub const DEFAULT_COSET_LIMIT: usize = 1_000_000;

/// A presentation `⟨a, b | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(relators: Vec<Word>) -> Result<Presentation, EnumError> {
        if let Some(index) = relators.iter().position(Word::is_identity) {
            return Err(EnumError::TrivialRelator { index });
        }
        Ok(Presentation { relators })
    }

    /// Parses relators in word syntax.
    pub fn parse(relators: &[&str]) -> Result<Presentation, crate::words::WordError> {
        let words = relators.iter().map(|r| r.parse()).collect::<Result<Vec<Word>, _>>()?;
        Ok(Presentation::new(words).expect("parsed relators are nontrivial"))
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Invariant factors of the abelianization `Z² / ⟨ab(r)⟩`; zeros denote
    /// free factors, ones are dropped.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| {
                let (x, y) = r.abelianize();
                vec![x, y]
            })
            .collect();
        let snf = smith_normal_form(&rows, 2);
        let mut out: Vec<u64> = snf
            .divisors
            .iter()
            .map(|d| d.try_into().expect("small divisor"))
            .collect();
        out.extend(std::iter::repeat_n(0, 2 - snf.rank));
        out.retain(|&d| d != 1);
        out
    }
}

const NONE: usize = usize::MAX;

struct Enumerator {
    table: Vec<[usize; 4]>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    limit: usize,
}

fn inv_col(x: usize) -> usize {
    x ^ 1
}

impl Enumerator {
    fn new(limit: usize) -> Enumerator {
        Enumerator {
            table: vec![[NONE; 4]],
            parent: vec![0],
            queue: Vec::new(),
            limit,
        }
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), EnumError> {
        if self.table.len() >= self.limit {
            return Err(EnumError::Overflow { limit: self.limit });
        }
        let d = self.table.len();
        self.table.push([NONE; 4]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][inv_col(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = c;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (x, y) = (self.rep(k), self.rep(l));
        if x != y {
            let (lo, hi) = (x.min(y), x.max(y));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, k: usize, l: usize) {
        self.queue.clear();
        self.merge(k, l);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..4 {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                self.table[d][inv_col(x)] = NONE;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != NONE {
                    let t = self.table[mu][x];
                    self.merge(nu, t);
                } else if self.table[nu][inv_col(x)] != NONE {
                    let t = self.table[nu][inv_col(x)];
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][inv_col(x)] = mu;
                }
            }
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn scan_and_fill(&mut self, c: usize, rel: &[usize]) -> Result<(), EnumError> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, rel.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][rel[i]] != NONE {
                f = self.table[f][rel[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][inv_col(rel[j as usize])] != NONE {
                b = self.table[b][inv_col(rel[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if i as isize == j {
                self.table[f][rel[i]] = b;
                self.table[b][inv_col(rel[i])] = f;
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }

    /// HLT strategy: scan every relator at each live coset, then close its row.
    fn run(&mut self, relators: &[Vec<usize>]) -> Result<(), EnumError> {
        let mut c = 0;
        while c < self.table.len() {
            if self.is_live(c) {
                for r in relators {
                    if !self.is_live(c) {
                        break;
                    }
                    self.scan_and_fill(c, r)?;
                }
                for x in 0..4 {
                    if self.is_live(c) && self.table[c][x] == NONE {
                        self.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }
}

/// A completed coset table for the trivial subgroup; coset `0` is the
/// identity and every coset is one group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// `action[c][x]` is the coset `c · x` for columns `a, A, b, B`.
    action: Vec<[usize; 4]>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.action.len()
    }

    pub fn act(&self, c: usize, l: Letter) -> usize {
        self.action[c][l.index()]
    }

    pub fn act_word(&self, c: usize, w: &Word) -> usize {
        w.letters().fold(c, |x, l| self.act(x, l))
    }

    /// A word for each element, from a breadth-first spanning tree at `0`.
    pub fn element_words(&self) -> Vec<Word> {
        let mut words: Vec<Option<Vec<Letter>>> = vec![None; self.order()];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for l in Letter::ALL {
                let d = self.act(c, l);
                if words[d].is_none() {
                    let mut w = words[c].clone().unwrap();
                    w.push(l);
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(|w| Word::from_letters(w.unwrap())).collect()
    }

    /// Element orders; the regular action is free, so `g` has order `m` when
    /// `0 · gᵐ = 0` first.
    pub fn element_orders(&self) -> Vec<usize> {
        self.element_words()
            .iter()
            .map(|w| {
                let mut x = self.act_word(0, w);
                let mut m = 1;
                while x != 0 {
                    x = self.act_word(x, w);
                    m += 1;
                }
                m
            })
            .collect()
    }

    /// `mul[x][y]` is the element `x · y`.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        let words = self.element_words();
        (0..self.order())
            .map(|x| words.iter().map(|w| self.act_word(x, w)).collect())
            .collect()
    }
}

/// Enumerates cosets of the trivial subgroup; the order of the group when the
/// enumeration closes within `coset_limit` cosets. Overflow says nothing about
/// finiteness.
pub fn todd_coxeter(p: &Presentation, coset_limit: usize) -> Result<CosetTable, EnumError> {
    if coset_limit == 0 {
        return Err(EnumError::ZeroLimit);
    }
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| r.letters().map(Letter::index).collect())
        .collect();
    let mut e = Enumerator::new(coset_limit);
    e.run(&relators)?;
    let live: Vec<usize> = (0..e.table.len()).filter(|&c| e.is_live(c)).collect();
    let mut index = vec![NONE; e.table.len()];
    for (i, &c) in live.iter().enumerate() {
        index[c] = i;
    }
    let action = live.iter().map(|&c| e.table[c].map(|d| index[e.rep(d)])).collect();
    Ok(CosetTable { action })
}

/// Order of the group presented by `p`.
pub fn group_order(p: &Presentation, coset_limit: usize) -> Result<usize, EnumError> {
    todd_coxeter(p, coset_limit).map(|t| t.order())
}

/// Isomorphism invariants compared by [`iso_order_exponent_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSignature {
    pub order: usize,
    /// Number of elements of each order.
    pub element_orders: BTreeMap<usize, usize>,
    pub abelian_invariants: Vec<u64>,
}

pub fn signature(p: &Presentation, coset_limit: usize) -> Result<GroupSignature, EnumError> {
    let t = todd_coxeter(p, coset_limit)?;
    let mut element_orders = BTreeMap::new();
    for o in t.element_orders() {
        *element_orders.entry(o).or_insert(0) += 1;
    }
    Ok(GroupSignature {
        order: t.order(),
        element_orders,
        abelian_invariants: p.abelian_invariants(),
    })
}

/// Whether two presentations agree in order, element-order counts and
/// abelianization; necessary for isomorphism, not sufficient.
pub fn iso_order_exponent_check(x: &Presentation, y: &Presentation, coset_limit: usize) -> Result<bool, EnumError> {
    Ok(signature(x, coset_limit)? == signature(y, coset_limit)?)
}

/// Relators `w(s)^k` for the normal generators of `P_k`, `k ≤ 5`.
pub fn power_quotient(k: u32) -> Presentation {
    let gens = crate::farey::normal_generators(k, 0).expect("k at least 2");
    Presentation::new(gens.iter().map(|g| g.word()).collect()).expect("nontrivial generators")
}
