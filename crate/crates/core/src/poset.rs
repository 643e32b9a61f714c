//! Finite posets on {0, ..., n-1} with joins, meets, and lattice checks.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover arcs contain a directed cycle through element {0}")]
    Cyclic(usize),
    #[error("cover arc endpoint {0} out of range for {1} elements")]
    OutOfRange(usize, usize),
}

/// Outcome of the pairwise lattice check; `witness` is the first pair (in
/// lexicographic order) missing a join or a meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCheck {
    pub lattice: bool,
    pub witness: Option<(usize, usize)>,
}

/// Partial order stored as a flat n*n reachability matrix plus the cover
/// relation recomputed from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of the given arcs. The cover
    /// relation is recomputed from the closure, so redundant (transitive)
    /// input arcs are harmless. Fails on directed cycles.
    pub fn from_cover_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let mut adj = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(u, v) in arcs {
            for e in [u, v] {
                if e >= n {
                    return Err(PosetError::OutOfRange(e, n));
                }
            }
            adj[u].push(v);
            indegree[v] += 1;
        }
        // Kahn's algorithm: if some element never reaches indegree 0, it
        // sits on a cycle.
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &adj[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if seen != n {
            let culprit = (0..n).find(|&v| indegree[v] > 0).unwrap();
            return Err(PosetError::Cyclic(culprit));
        }

        let mut leq = vec![false; n * n];
        for start in 0..n {
            // Depth-first reachability from `start`.
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if leq[start * n + v] {
                    continue;
                }
                leq[start * n + v] = true;
                stack.extend(adj[v].iter().copied());
            }
        }

        let mut poset = Poset {
            n,
            leq,
            covers: Vec::new(),
        };
        for u in 0..n {
            for v in 0..n {
                if poset.lt(u, v) && !(0..n).any(|w| poset.lt(u, w) && poset.lt(w, v)) {
                    poset.covers.push((u, v));
                }
            }
        }
        Ok(poset)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn le(&self, u: usize, v: usize) -> bool {
        self.leq[u * self.n + v]
    }

    pub fn lt(&self, u: usize, v: usize) -> bool {
        u != v && self.le(u, v)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements covering u (immediate successors).
    pub fn up_covers(&self, u: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|&&(a, _)| a == u)
            .map(|&(_, b)| b)
            .collect()
    }

    /// Elements covered by u (immediate predecessors).
    pub fn down_covers(&self, u: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|&&(_, b)| b == u)
            .map(|&(a, _)| a)
            .collect()
    }

    /// Unique global minimum, if one exists.
    pub fn min(&self) -> Option<usize> {
        (0..self.n).find(|&u| (0..self.n).all(|v| self.le(u, v)))
    }

    /// Unique global maximum, if one exists.
    pub fn max(&self) -> Option<usize> {
        (0..self.n).find(|&u| (0..self.n).all(|v| self.le(v, u)))
    }

    /// Least upper bound as the unique minimal common upper bound; None when
    /// no upper bound exists or several are minimal. The join of the empty
    /// set is the global minimum.
    pub fn join(&self, s: &[usize]) -> Option<usize> {
        let bounds: Vec<usize> = (0..self.n)
            .filter(|&w| s.iter().all(|&x| self.le(x, w)))
            .collect();
        let minimal: Vec<usize> = bounds
            .iter()
            .copied()
            .filter(|&w| !bounds.iter().any(|&other| self.lt(other, w)))
            .collect();
        match minimal[..] {
            [only] => Some(only),
            _ => None,
        }
    }

    /// Greatest lower bound, dual to `join`.
    pub fn meet(&self, s: &[usize]) -> Option<usize> {
        let bounds: Vec<usize> = (0..self.n)
            .filter(|&w| s.iter().all(|&x| self.le(w, x)))
            .collect();
        let maximal: Vec<usize> = bounds
            .iter()
            .copied()
            .filter(|&w| !bounds.iter().any(|&other| self.lt(w, other)))
            .collect();
        match maximal[..] {
            [only] => Some(only),
            _ => None,
        }
    }

    /// Checks that every pair has both a join and a meet.
    pub fn is_lattice(&self) -> LatticeCheck {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.join(&[u, v]).is_none() || self.meet(&[u, v]).is_none() {
                    return LatticeCheck {
                        lattice: false,
                        witness: Some((u, v)),
                    };
                }
            }
        }
        LatticeCheck {
            lattice: true,
            witness: None,
        }
    }

    /// Closed interval [u, v], sorted by element index.
    pub fn interval(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| self.le(u, z) && self.le(z, v))
            .collect()
    }

    /// Open interval (u, v), sorted by element index.
    pub fn open_interval(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| self.lt(u, z) && self.lt(z, v))
            .collect()
    }

    /// Order-reversed poset on the same elements.
    pub fn dual(&self) -> Poset {
        let mut leq = vec![false; self.n * self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                leq[u * self.n + v] = self.le(v, u);
            }
        }
        Poset {
            n: self.n,
            leq,
            covers: self.covers.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        Poset::from_cover_arcs(3, &[(0, 1), (1, 2)]).unwrap()
    }

    /// Boolean lattice on subsets of {0,1,2}: element i is the bitmask of
    /// the subset, ordered by inclusion.
    fn cube_lattice() -> Poset {
        let mut arcs = Vec::new();
        for i in 0..8usize {
            for b in 0..3 {
                if i >> b & 1 == 0 {
                    arcs.push((i, i | 1 << b));
                }
            }
        }
        Poset::from_cover_arcs(8, &arcs).unwrap()
    }

    /// 0 < a,b < x,y < 1 with all four middle relations: no join for (a,b).
    fn bowtie() -> Poset {
        Poset::from_cover_arcs(
            6,
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
        )
        .unwrap()
    }

    /// Hexagon order: 0 < 1,2; 1 < 3; 2 < 4; 3,5 and 4 < 5.
    fn hexagon() -> Poset {
        Poset::from_cover_arcs(6, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn chain_is_a_lattice_with_endpoints() {
        let p = chain3();
        assert!(p.le(0, 2));
        assert!(!p.le(2, 0));
        assert_eq!(p.min(), Some(0));
        assert_eq!(p.max(), Some(2));
        assert_eq!(p.join(&[0, 1]), Some(1));
        assert_eq!(p.meet(&[1, 2]), Some(1));
        assert!(p.is_lattice().lattice);
    }

    #[test]
    fn redundant_transitive_arcs_do_not_pollute_covers() {
        let p = Poset::from_cover_arcs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn cycles_are_rejected() {
        assert_eq!(
            Poset::from_cover_arcs(2, &[(0, 1), (1, 0)]),
            Err(PosetError::Cyclic(0))
        );
    }

    #[test]
    fn out_of_range_arcs_are_rejected() {
        assert_eq!(
            Poset::from_cover_arcs(2, &[(0, 5)]),
            Err(PosetError::OutOfRange(5, 2))
        );
    }

    #[test]
    fn subset_order_has_bitwise_joins_and_meets() {
        let p = cube_lattice();
        assert!(p.is_lattice().lattice);
        assert_eq!(p.min(), Some(0));
        assert_eq!(p.max(), Some(7));
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(p.join(&[i, j]), Some(i | j));
                assert_eq!(p.meet(&[i, j]), Some(i & j));
                assert_eq!(p.le(i, j), i & j == i);
            }
        }
        assert_eq!(p.join(&[]), Some(0));
        assert_eq!(p.meet(&[]), Some(7));
    }

    #[test]
    fn subset_order_covers_flip_one_bit() {
        let p = cube_lattice();
        assert_eq!(p.covers().len(), 12);
        assert_eq!(p.up_covers(0), vec![1, 2, 4]);
        assert_eq!(p.down_covers(7), vec![3, 5, 6]);
    }

    #[test]
    fn bowtie_fails_the_lattice_check_at_the_first_bad_pair() {
        let p = bowtie();
        assert_eq!(p.join(&[1, 2]), None);
        assert_eq!(
            p.is_lattice(),
            LatticeCheck {
                lattice: false,
                witness: Some((1, 2)),
            }
        );
    }

    #[test]
    fn hexagon_is_a_lattice() {
        let p = hexagon();
        assert!(p.is_lattice().lattice);
        assert_eq!(p.join(&[1, 2]), Some(5));
        assert_eq!(p.meet(&[3, 4]), Some(0));
    }

    #[test]
    fn intervals_list_exactly_the_elements_between() {
        let p = cube_lattice();
        assert_eq!(p.interval(0, 7).len(), 8);
        assert_eq!(p.open_interval(0, 7).len(), 6);
        assert_eq!(p.interval(1, 7), vec![1, 3, 5, 7]);
        assert_eq!(p.open_interval(1, 7), vec![3, 5]);
        assert_eq!(p.interval(1, 2), Vec::<usize>::new());
    }

    #[test]
    fn dual_swaps_joins_and_meets() {
        let p = cube_lattice();
        let d = p.dual();
        assert_eq!(d.min(), Some(7));
        assert_eq!(d.max(), Some(0));
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(d.join(&[i, j]), p.meet(&[i, j]));
                assert_eq!(d.meet(&[i, j]), p.join(&[i, j]));
            }
        }
        assert_eq!(d.covers().len(), p.covers().len());
    }
}
