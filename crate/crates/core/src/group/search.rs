//! Backtracking over images of a generating set.
//!
//! A partial assignment of generator images is extended to the subgroup
//! those generators span by breadth-first closure; every edge `x ↦ x·s` is
//! checked against `f(x)·f(s)`, which is exactly the homomorphism law on the
//! span. Candidates are tried in increasing index order, so results come out
//! lexicographically ordered on generator images.

use std::ops::ControlFlow;

use super::hom::GroupHom;
use super::table::{extend_generators, FiniteGroup, GroupOps, GroupRef};
use crate::error::Result;
use crate::limits::{Limits, Meter};

const UNSET: usize = usize::MAX;

pub(crate) struct HomSearch<'a, T: GroupOps + ?Sized> {
    pub domain: &'a FiniteGroup,
    pub target: &'a T,
    pub gens: Vec<usize>,
    pub candidates: Vec<Vec<usize>>,
    pub injective: bool,
}

struct State {
    img: Vec<usize>,
    known: Vec<usize>,
    used: Vec<bool>,
}

impl<'a, T: GroupOps + ?Sized> HomSearch<'a, T> {
    /// Search with the domain's greedy generators and candidates filtered by
    /// element order (dividing for homomorphisms, equal for embeddings).
    pub fn standard(domain: &'a FiniteGroup, target: &'a T, injective: bool) -> Self {
        let gens = domain.generators().to_vec();
        let candidates = gens
            .iter()
            .map(|&g| order_candidates(target, domain.element_order(g), injective))
            .collect();
        HomSearch {
            domain,
            target,
            gens,
            candidates,
            injective,
        }
    }

    /// Visits every homomorphism; returns `Ok(false)` if the visitor stopped early.
    pub fn run(&self, limits: &Limits, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) -> Result<bool> {
        let n = self.domain.order();
        if self.injective && self.target.order() < n {
            return Ok(true);
        }
        let mut state = State {
            img: vec![UNSET; n],
            known: vec![0],
            used: if self.injective {
                vec![false; self.target.order()]
            } else {
                Vec::new()
            },
        };
        state.img[0] = 0;
        if self.injective {
            state.used[0] = true;
        }
        let meter = limits.meter();
        let flow = self.descend(0, &mut state, &meter, &mut visit)?;
        Ok(flow.is_continue())
    }

    fn descend(
        &self,
        level: usize,
        state: &mut State,
        meter: &Meter,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if level == self.gens.len() {
            assert_eq!(
                state.known.len(),
                self.domain.order(),
                "search generators do not generate the domain"
            );
            return Ok(visit(&state.img));
        }
        let g = self.gens[level];
        if state.img[g] != UNSET {
            // redundant generator: its image is already forced
            if self.candidates[level].contains(&state.img[g]) {
                return self.descend(level + 1, state, meter, visit);
            }
            return Ok(ControlFlow::Continue(()));
        }
        for &t in &self.candidates[level] {
            meter.tick()?;
            let mark = state.known.len();
            if self.extend(level, t, state)
                && self.descend(level + 1, state, meter, visit)?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            self.undo(mark, state);
        }
        Ok(ControlFlow::Continue(()))
    }

    fn undo(&self, mark: usize, state: &mut State) {
        for &x in &state.known[mark..] {
            if self.injective {
                state.used[state.img[x]] = false;
            }
            state.img[x] = UNSET;
        }
        state.known.truncate(mark);
    }

    /// Adds generator `level` with image `t`; false on conflict.
    fn extend(&self, level: usize, t: usize, state: &mut State) -> bool {
        let d = self.domain;
        let gens = &self.gens[..=level];
        let mark = state.known.len();
        let mut head = 0;
        while head < state.known.len() {
            let x = state.known[head];
            let new = head >= mark;
            head += 1;
            let edges: &[usize] = if new { gens } else { &gens[level..] };
            for &s in edges {
                let y = d.mul(x, s);
                let fs = if s == self.gens[level] && state.img[s] == UNSET {
                    t
                } else {
                    state.img[s]
                };
                let expected = self.target.mul(state.img[x], fs);
                let current = state.img[y];
                if current == UNSET {
                    if self.injective {
                        if state.used[expected] {
                            return false;
                        }
                        state.used[expected] = true;
                    }
                    state.img[y] = expected;
                    state.known.push(y);
                } else if current != expected {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn order_candidates<T: GroupOps + ?Sized>(target: &T, order: usize, exact: bool) -> Vec<usize> {
    (0..target.order())
        .filter(|&t| {
            let o = target.element_order(t);
            if exact {
                o == order
            } else {
                order.is_multiple_of(o)
            }
        })
        .collect()
}

/// Visits every homomorphism `domain → target` in canonical order.
pub fn for_each_hom<T: GroupOps + ?Sized>(
    domain: &FiniteGroup,
    target: &T,
    limits: &Limits,
    visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<bool> {
    HomSearch::standard(domain, target, false).run(limits, visit)
}

/// All homomorphisms `G → H`, lexicographic on generator images.
pub fn enumerate_homs(g: &GroupRef, h: &GroupRef, limits: &Limits) -> Result<Vec<GroupHom>> {
    let mut out = Vec::new();
    for_each_hom(g, &**h, limits, |img| {
        out.push(GroupHom::new_unchecked(g.clone(), h.clone(), img.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Cheap isomorphism invariants: order, abelianness, sorted element orders.
pub fn iso_invariants_match(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    g.order() == h.order() && g.order_profile() == h.order_profile() && g.is_abelian() == h.is_abelian()
}

/// Some isomorphism `G → H`, or `None` once the search space is exhausted.
pub fn is_isomorphic(g: &GroupRef, h: &GroupRef, limits: &Limits) -> Result<Option<GroupHom>> {
    if !iso_invariants_match(g, h) {
        return Ok(None);
    }
    let mut found = None;
    HomSearch::standard(g, &**h, true).run(limits, |img| {
        found = Some(img.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found.map(|img| GroupHom::new_unchecked(g.clone(), h.clone(), img)))
}

/// Homomorphisms `r` with `r ∘ f = id`, at most `max` of them.
pub fn left_inverses(f: &GroupHom, max: usize, limits: &Limits) -> Result<Vec<GroupHom>> {
    let (x, a) = (f.domain(), f.codomain());
    if !f.is_injective() {
        return Ok(Vec::new());
    }
    let fixed: Vec<usize> = x.generators().iter().map(|&s| f.apply(s)).collect();
    let k = fixed.len();
    let gens = extend_generators(a, fixed);
    let candidates = gens
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if i < k {
                vec![x.generators()[i]]
            } else {
                order_candidates(&**x, a.element_order(s), false)
            }
        })
        .collect();
    let search = HomSearch {
        domain: a,
        target: &**x,
        gens,
        candidates,
        injective: false,
    };
    collect_limited(&search, a, x, max, limits)
}

/// Homomorphisms `s` with `f ∘ s = id`, at most `max` of them.
pub fn right_inverses(f: &GroupHom, max: usize, limits: &Limits) -> Result<Vec<GroupHom>> {
    let (d, c) = (f.domain(), f.codomain());
    if !f.is_surjective() {
        return Ok(Vec::new());
    }
    let gens = c.generators().to_vec();
    let candidates = gens
        .iter()
        .map(|&s| {
            (0..d.order())
                .filter(|&y| f.apply(y) == s && c.element_order(s) % d.element_order(y) == 0)
                .collect()
        })
        .collect();
    let search = HomSearch {
        domain: c,
        target: &**d,
        gens,
        candidates,
        injective: false,
    };
    collect_limited(&search, c, d, max, limits)
}

fn collect_limited(
    search: &HomSearch<'_, FiniteGroup>,
    from: &GroupRef,
    to: &GroupRef,
    max: usize,
    limits: &Limits,
) -> Result<Vec<GroupHom>> {
    let mut out = Vec::new();
    if max == 0 {
        return Ok(out);
    }
    search.run(limits, |img| {
        out.push(GroupHom::new_unchecked(from.clone(), to.clone(), img.to_vec()));
        if out.len() >= max {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}
