//! Flip-graph enumeration and dihedral orbits.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::collection::{base_collection, WSCollection};
use crate::dihedral::DihedralElement;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::moves::neighbours;

/// Connected component of `seed` in the move graph, sorted.
///
/// Level-synchronous BFS: each frontier is expanded with `exec`, then merged
/// into the visited set in canonical order, so the result does not depend on
/// scheduling.
pub fn enumerate_component(seed: &WSCollection, exec: Execution) -> Result<Vec<WSCollection>> {
    if !seed.is_maximal() {
        return Err(Error::NotMaximal(seed.addable().unwrap_or_else(|| seed.sets()[0])));
    }
    let mut visited: HashSet<WSCollection> = HashSet::from([seed.clone()]);
    let mut frontier = vec![seed.clone()];
    while !frontier.is_empty() {
        let mut next = exec::flat_map(exec, &frontier, neighbours);
        next.sort_unstable();
        next.dedup();
        next.retain(|c| visited.insert(c.clone()));
        frontier = next;
    }
    let mut all: Vec<WSCollection> = visited.into_iter().collect();
    all.sort_unstable();
    Ok(all)
}

/// The component of the base collection; all of `W(k,n)` for `k <= 3`.
pub fn enumerate(k: u8, n: u8, exec: Execution) -> Result<Vec<WSCollection>> {
    enumerate_component(&base_collection(k, n)?, exec)
}

/// Partition into orbits of the dihedral group. Orbits are sorted internally
/// and listed by their least member.
pub fn dihedral_orbits(cs: &[WSCollection]) -> Result<Vec<Vec<WSCollection>>> {
    let Some(first) = cs.first() else {
        return Ok(Vec::new());
    };
    let (k, n) = (first.k(), first.n());
    if let Some(c) = cs.iter().find(|c| c.k() != k || c.n() != n) {
        return Err(Error::Dimension(format!("W({},{}) mixed with W({},{})", k, n, c.k(), c.n())));
    }
    let group: Vec<DihedralElement> = DihedralElement::all(n).collect();
    let mut seen: HashSet<WSCollection> = HashSet::new();
    let mut sorted = cs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut orbits = Vec::new();
    for c in &sorted {
        if seen.contains(c) {
            continue;
        }
        let mut orbit: Vec<WSCollection> = group.iter().map(|g| c.transformed(g)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Summary record emitted after an enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub count: usize,
    pub orbit_count: usize,
    pub sizes_histogram: BTreeMap<usize, usize>,
}

pub fn summarize(cs: &[WSCollection]) -> Result<EnumerationSummary> {
    let mut sizes_histogram = BTreeMap::new();
    for c in cs {
        *sizes_histogram.entry(c.len()).or_insert(0) += 1;
    }
    Ok(EnumerationSummary { count: cs.len(), orbit_count: dihedral_orbits(cs)?.len(), sizes_histogram })
}

/// Move-graph adjacency as indices into `cs`; used for connectivity checks.
pub fn move_graph(cs: &[WSCollection], exec: Execution) -> Vec<Vec<usize>> {
    let index: HashMap<&WSCollection, usize> = cs.iter().enumerate().map(|(i, c)| (c, i)).collect();
    exec::map(exec, cs, |c| {
        let mut adj: Vec<usize> = neighbours(c).iter().filter_map(|d| index.get(d).copied()).collect();
        adj.sort_unstable();
        adj
    })
}

/// Whether the graph on `cs` is connected and closed under moves.
pub fn is_connected_and_closed(cs: &[WSCollection], exec: Execution) -> bool {
    if cs.is_empty() {
        return true;
    }
    let index: HashMap<&WSCollection, usize> = cs.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let closed = exec::map(exec, cs, |c| neighbours(c).iter().all(|d| index.contains_key(d)));
    if !closed.into_iter().all(|b| b) {
        return false;
    }
    let adj = move_graph(cs, exec);
    let mut seen = vec![false; cs.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|b| b)
}
