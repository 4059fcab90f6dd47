//! A lower bound for `χ(KG(G, rK2))` that looks at what a color class can be.
//!
//! A color class of `KG(G, rK2)` is a family of pairwise intersecting
//! r-matchings. Either all of its members share an edge `e` (a star class),
//! or it is non-trivial and has at most `α*(G)` members, where `α*` is the
//! largest intersecting family with empty common intersection. Deleting the
//! edge of a star class leaves a proper coloring of `KG(G - e, rK2)` with
//! one color fewer, so
//!
//! ```text
//! χ(G) >= min( min_e 1 + χ(G - e),  ⌈N_r(G) / α*(G)⌉ )
//! ```
//!
//! Unrolling: `χ(G) >= T` whenever every edge set `S` with `|S| < T`
//! satisfies `|S| + ⌈N_r(G - S) / α*(G - S)⌉ >= T`. A graph with no
//! non-trivial family (`α* = 0`) and at least one r-matching gets an
//! infinite quota. `α*` only shrinks when edges are deleted, so a parent's
//! value is a valid stand-in until a check fails, at which point it is
//! recomputed exactly.

use crate::bits::Bits;
use crate::kneser::KneserGraph;

/// Outcome of trying to prove `χ >= target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverOutcome {
    Proved,
    /// Some edge set `S` violates the inequality; the bound says nothing.
    Inconclusive,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverReport {
    pub outcome: CoverOutcome,
    pub nodes: u64,
}

struct Exhausted;

struct Cover<'a> {
    masks: &'a [u128],
    m: usize,
    target: usize,
    nodes: u64,
    budget: u64,
}

fn quota(count: usize, alpha: usize) -> usize {
    if count == 0 {
        0
    } else if alpha == 0 {
        usize::MAX
    } else {
        count.div_ceil(alpha)
    }
}

impl Cover<'_> {
    fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    /// Checks every `S ∪ A` with `A` drawn from edges `next..m`.
    fn visit(&mut self, s: u128, size: usize, next: usize, cap: usize) -> Result<bool, Exhausted> {
        self.tick()?;
        let live: Vec<u128> = self.masks.iter().copied().filter(|&x| x & s == 0).collect();
        let slack = self.target - size;
        let mut cap = cap;
        if quota(live.len(), cap) < slack {
            cap = self.nontrivial_alpha(&live, cap)?;
            if quota(live.len(), cap) < slack {
                return Ok(false);
            }
        }
        if slack == 1 {
            return Ok(true);
        }

        let hits: Vec<usize> = (next..self.m)
            .map(|e| live.iter().filter(|&&x| (x >> e) & 1 == 1).count())
            .collect();
        let mut sorted = hits.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        // union bound: j more edges remove at most the j largest hit counts
        let mut removed = 0;
        let whole_subtree = (1..slack).all(|j| {
            removed += sorted.get(j - 1).copied().unwrap_or(0);
            quota(live.len().saturating_sub(removed), cap).saturating_add(j) >= slack
        });
        if whole_subtree {
            return Ok(true);
        }

        for (off, &h) in hits.iter().enumerate() {
            // an edge in no live matching only makes |S| larger
            if h == 0 {
                continue;
            }
            let e = next + off;
            if !self.visit(s | (1u128 << e), size + 1, e + 1, cap)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest intersecting subfamily of `family` with empty common
    /// intersection. Such a family extends to a maximal clique of the
    /// intersection graph whose common intersection is still empty, so
    /// Bron–Kerbosch over maximal cliques suffices. `cap` is a known upper
    /// bound and stops the search once reached.
    fn nontrivial_alpha(&mut self, family: &[u128], cap: usize) -> Result<usize, Exhausted> {
        let k = family.len();
        let adj: Vec<Bits> = (0..k)
            .map(|i| {
                let mut b = Bits::new(k);
                for j in 0..k {
                    if j != i && family[i] & family[j] != 0 {
                        b.set(j);
                    }
                }
                b
            })
            .collect();
        let mut bk = Clique {
            family,
            adj: &adj,
            best: 0,
            cap,
        };
        bk.expand(self, 0, u128::MAX, Bits::full(k), Bits::new(k))?;
        Ok(bk.best)
    }
}

struct Clique<'a> {
    family: &'a [u128],
    adj: &'a [Bits],
    best: usize,
    cap: usize,
}

impl Clique<'_> {
    fn expand(
        &mut self,
        cover: &mut Cover<'_>,
        size: usize,
        common: u128,
        p: Bits,
        x: Bits,
    ) -> Result<(), Exhausted> {
        cover.tick()?;
        if self.best >= self.cap {
            return Ok(());
        }
        if p.is_empty() {
            if x.is_empty() && common == 0 {
                self.best = self.best.max(size);
            }
            return Ok(());
        }
        if size + p.count() <= self.best {
            return Ok(());
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| p.and_count(&self.adj[u]))
            .expect("p is nonempty");
        let mut p = p;
        let mut x = x;
        let branch: Vec<usize> = p.and_not(&self.adj[pivot]).iter().collect();
        for v in branch {
            self.expand(
                cover,
                size + 1,
                common & self.family[v],
                p.and(&self.adj[v]),
                x.and(&self.adj[v]),
            )?;
            p.clear(v);
            x.set(v);
        }
        Ok(())
    }
}

/// Tries to prove `χ(KG(G, rK2)) >= target` within `budget` search nodes.
pub fn certify_lower_bound(kg: &KneserGraph, target: usize, budget: u64) -> CoverReport {
    let masks: Vec<u128> = kg.vertices().iter().map(|mm| mm.edges().bits()).collect();
    let mut cover = Cover {
        masks: &masks,
        m: kg.base().m(),
        target,
        nodes: 0,
        budget,
    };
    if target == 0 {
        return CoverReport {
            outcome: CoverOutcome::Proved,
            nodes: 0,
        };
    }
    let outcome = match cover.visit(0, 0, 0, usize::MAX) {
        Ok(true) => CoverOutcome::Proved,
        Ok(false) => CoverOutcome::Inconclusive,
        Err(Exhausted) => CoverOutcome::BudgetExhausted,
    };
    CoverReport {
        outcome,
        nodes: cover.nodes,
    }
}

/// `α*` of the r-matchings of the graph underlying `kg`.
pub fn nontrivial_intersecting_number(kg: &KneserGraph) -> usize {
    let masks: Vec<u128> = kg.vertices().iter().map(|mm| mm.edges().bits()).collect();
    let mut cover = Cover {
        masks: &masks,
        m: kg.base().m(),
        target: 0,
        nodes: 0,
        budget: u64::MAX,
    };
    match cover.nontrivial_alpha(&masks, usize::MAX) {
        Ok(a) => a,
        Err(Exhausted) => unreachable!("unbounded budget"),
    }
}
