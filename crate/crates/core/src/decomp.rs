//! Exhaustive search over decompositions of a multiset of "cells" into
//! strictly increasing chains (each chain the diagonal of a minor).
//!
//! Cells are processed in sorted order; at each step the cell either extends
//! an existing chain (when the chain admits it) or starts a new one. Equal
//! cells are canonicalized by forcing their choices to be increasing, so
//! each set partition into chains is visited exactly once.

/// What the search is after.
pub(crate) enum Goal<'a> {
    /// Maximum of gamma_i over all decompositions.
    MaxGamma { i: usize },
    /// Collect the decompositions whose gamma profile (gamma_1..gamma_v)
    /// equals `targets` exactly.
    MatchProfile { targets: &'a [i64] },
}

pub(crate) struct Outcome<C> {
    /// Defined for `MaxGamma`; -1 when no decomposition exists (empty input
    /// yields 0).
    pub best: i64,
    /// Defined for `MatchProfile`.
    pub matches: Vec<Vec<Vec<C>>>,
}

/// `can_extend(chain, next)` decides whether `next` may be appended to a
/// (nonempty) chain. It must be monotone: once an extension is rejected,
/// every continuation of it would be rejected too.
pub(crate) fn search<C, F>(cells: &[C], can_extend: F, goal: Goal<'_>) -> Outcome<C>
where
    C: Ord + Eq + Clone,
    F: Fn(&[C], &C) -> bool + Copy,
{
    let mut sorted = cells.to_vec();
    sorted.sort();
    let mut chains: Vec<Vec<C>> = Vec::new();
    let mut state = State {
        cells: sorted,
        can_extend,
        best: -1,
        matches: Vec::new(),
    };
    match goal {
        Goal::MaxGamma { i } => {
            let mut gamma = 0i64;
            state.max_gamma(0, usize::MAX, i, &mut gamma, &mut chains);
            Outcome {
                best: state.best,
                matches: Vec::new(),
            }
        }
        Goal::MatchProfile { targets } => {
            let mut gammas = vec![0i64; targets.len()];
            state.match_profile(0, usize::MAX, targets, &mut gammas, &mut chains);
            Outcome {
                best: -1,
                matches: state.matches,
            }
        }
    }
}

struct State<C, F> {
    cells: Vec<C>,
    can_extend: F,
    best: i64,
    matches: Vec<Vec<Vec<C>>>,
}

impl<C, F> State<C, F>
where
    C: Ord + Eq + Clone,
    F: Fn(&[C], &C) -> bool + Copy,
{
    /// Options for the cell at `idx`: extending chain j has id j, starting a
    /// new chain has id chains.len(). For a repeat of the previous cell only
    /// ids strictly above the previous choice are allowed.
    fn min_option(&self, idx: usize, prev_option: usize) -> usize {
        if idx > 0 && self.cells[idx] == self.cells[idx - 1] {
            prev_option + 1
        } else {
            0
        }
    }

    fn max_gamma(
        &mut self,
        idx: usize,
        prev_option: usize,
        i: usize,
        gamma: &mut i64,
        chains: &mut Vec<Vec<C>>,
    ) {
        if idx == self.cells.len() {
            if *gamma > self.best {
                self.best = *gamma;
            }
            return;
        }
        let remaining = (self.cells.len() - idx) as i64;
        // Every further cell raises gamma_i by at most 1.
        if *gamma + remaining <= self.best {
            return;
        }
        let start = if prev_option == usize::MAX {
            0
        } else {
            self.min_option(idx, prev_option)
        };
        let cell = self.cells[idx].clone();
        let n_chains = chains.len();
        for option in start..=n_chains {
            let delta;
            if option < n_chains {
                if !(self.can_extend)(&chains[option], &cell) {
                    continue;
                }
                let new_len = chains[option].len() + 1;
                delta = if new_len >= i { 1 } else { 0 };
                chains[option].push(cell.clone());
            } else {
                delta = if i == 1 { 1 } else { 0 };
                chains.push(vec![cell.clone()]);
            }
            *gamma += delta;
            self.max_gamma(idx + 1, option, i, gamma, chains);
            *gamma -= delta;
            if option < n_chains {
                chains[option].pop();
            } else {
                chains.pop();
            }
        }
    }

    fn match_profile(
        &mut self,
        idx: usize,
        prev_option: usize,
        targets: &[i64],
        gammas: &mut Vec<i64>,
        chains: &mut Vec<Vec<C>>,
    ) {
        if idx == self.cells.len() {
            if gammas.iter().zip(targets).all(|(g, t)| g == t) {
                self.matches.push(chains.clone());
            }
            return;
        }
        let remaining = (self.cells.len() - idx) as i64;
        // gamma_j only grows, by at most 1 per remaining cell.
        if gammas
            .iter()
            .zip(targets)
            .any(|(&g, &t)| g > t || g + remaining < t)
        {
            return;
        }
        let start = if prev_option == usize::MAX {
            0
        } else {
            self.min_option(idx, prev_option)
        };
        let cell = self.cells[idx].clone();
        let n_chains = chains.len();
        for option in start..=n_chains {
            let new_len;
            if option < n_chains {
                if !(self.can_extend)(&chains[option], &cell) {
                    continue;
                }
                new_len = chains[option].len() + 1;
                chains[option].push(cell.clone());
            } else {
                new_len = 1;
                chains.push(vec![cell.clone()]);
            }
            // Extending a chain to length L raises gamma_j for every j <= L.
            for j in 0..new_len.min(gammas.len()) {
                gammas[j] += 1;
            }
            self.match_profile(idx + 1, option, targets, gammas, chains);
            for j in 0..new_len.min(gammas.len()) {
                gammas[j] -= 1;
            }
            if option < n_chains {
                chains[option].pop();
            } else {
                chains.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Cell;

    fn grid_extend(chain: &[Cell], next: &Cell) -> bool {
        chain.last().is_none_or(|last| last.strictly_below(next))
    }

    #[test]
    fn diagonal_pair_max_gamma() {
        // x11*x22: decompositions {(11),(22)} and {(11,22)}.
        let cells = vec![Cell::new(1, 1), Cell::new(2, 2)];
        let out = search(&cells, grid_extend, Goal::MaxGamma { i: 2 });
        assert_eq!(out.best, 1);
        let out = search(&cells, grid_extend, Goal::MaxGamma { i: 1 });
        assert_eq!(out.best, 2);
    }

    #[test]
    fn antidiagonal_pair_cannot_chain() {
        let cells = vec![Cell::new(1, 2), Cell::new(2, 1)];
        let out = search(&cells, grid_extend, Goal::MaxGamma { i: 2 });
        assert_eq!(out.best, 0);
    }

    #[test]
    fn repeated_cells_split_chains() {
        // x11^2: only the two-singleton decomposition.
        let cells = vec![Cell::new(1, 1), Cell::new(1, 1)];
        let out = search(&cells, grid_extend, Goal::MaxGamma { i: 1 });
        assert_eq!(out.best, 2);
        let out = search(&cells, grid_extend, Goal::MaxGamma { i: 2 });
        assert_eq!(out.best, 0);
    }

    #[test]
    fn profile_search_on_2x2_grid() {
        let cells = vec![
            Cell::new(1, 1),
            Cell::new(1, 2),
            Cell::new(2, 1),
            Cell::new(2, 2),
        ];
        // Profile of the staircase product: gamma_1 = 4, gamma_2 = 1.
        let out = search(&cells, grid_extend, Goal::MatchProfile { targets: &[4, 1] });
        assert_eq!(out.matches.len(), 1);
        let only = &out.matches[0];
        assert_eq!(only.len(), 3);
    }

    #[test]
    fn empty_input_has_the_empty_decomposition() {
        let out = search(&Vec::<Cell>::new(), grid_extend, Goal::MaxGamma { i: 1 });
        assert_eq!(out.best, 0);
    }
}
