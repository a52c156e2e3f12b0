//! Anick chains of a monomial algebra.

use crate::error::{Error, Result};
use crate::poly::Word;

use super::ReductionSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnickChains {
    /// `chains[n-1]` holds V^(n) for n = 1..=n_max, each entry (word, tail length).
    pub chains: Vec<Vec<Word>>,
    /// Coefficients of `1 - sum(gens) t + sum_n (-1)^(n+1) sum_{c in V^(n)} t^deg(c)`.
    pub polynomial: Vec<i64>,
}

/// Chains V^(1..=n_max) built by minimal right-overlap extension.
pub fn anick_chains(sys: &ReductionSystem, n_max: usize) -> Result<AnickChains> {
    if !sys.is_monomial() {
        return Err(Error::Invalid("anick_chains needs a monomial system".into()));
    }
    let obstructions: Vec<Vec<u8>> = sys.rules.iter().map(|r| r.lead.0.clone()).collect();
    let occurs_before_end = |w: &[u8]| -> bool {
        // some obstruction occurrence that does not end at the end of w
        obstructions.iter().any(|o| {
            o.len() <= w.len() && (0..w.len() - o.len()).any(|i| &w[i..i + o.len()] == o.as_slice())
        })
    };
    // (chain word, tail start index)
    let mut level: Vec<(Vec<u8>, usize)> = obstructions.iter().map(|o| (o.clone(), 1)).collect();
    level.sort_by(|a, b| sys.order.cmp(&Word(a.0.clone()), &Word(b.0.clone())));
    let mut chains = Vec::new();
    for n in 1..=n_max {
        if n > 1 {
            let mut next: Vec<(Vec<u8>, usize)> = Vec::new();
            for (w, ts) in &level {
                let tail = &w[*ts..];
                for o in &obstructions {
                    // obstruction starting inside the tail and running past its end
                    for j in 0..tail.len() {
                        let rest = &tail[j..];
                        if rest.len() >= o.len() || &o[..rest.len()] != rest {
                            continue;
                        }
                        let u = &o[rest.len()..];
                        let mut tu = tail.to_vec();
                        tu.extend_from_slice(u);
                        if occurs_before_end(&tu) {
                            continue;
                        }
                        let mut nw = w.clone();
                        nw.extend_from_slice(u);
                        let item = (nw, w.len());
                        if !next.contains(&item) {
                            next.push(item);
                        }
                    }
                }
            }
            next.sort_by(|a, b| sys.order.cmp(&Word(a.0.clone()), &Word(b.0.clone())));
            level = next;
        }
        chains.push(level.iter().map(|(w, _)| Word(w.clone())).collect::<Vec<_>>());
        if level.is_empty() {
            // all further levels are empty as well
            for _ in n + 1..=n_max {
                chains.push(Vec::new());
            }
            break;
        }
    }
    let maxdeg = chains
        .iter()
        .flatten()
        .map(|w| sys.degree(w))
        .chain(sys.order.weights.iter().copied())
        .max()
        .unwrap_or(0) as usize;
    let mut poly = vec![0i64; maxdeg + 1];
    poly[0] = 1;
    for &wt in &sys.order.weights {
        poly[wt as usize] -= 1;
    }
    for (k, lvl) in chains.iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for w in lvl {
            poly[sys.degree(w) as usize] += sign;
        }
    }
    while poly.len() > 1 && *poly.last().unwrap() == 0 {
        poly.pop();
    }
    Ok(AnickChains { chains, polynomial: poly })
}
