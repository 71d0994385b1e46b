//! Word problem by braid rewriting.
//!
//! A word is reduced iff no word reachable from it by braid moves contains
//! two equal adjacent letters. The search is exponential, so word lengths
//! are bounded.

use rustc_hash::FxHashSet;

use super::matrix::Bond;
use super::system::CoxeterSystem;
use super::Gen;
use crate::error::{CoxError, Result};

pub const DEFAULT_TITS_BOUND: usize = 10;

/// Decides reducedness of `word` by exploring its braid class.
pub fn tits_is_reduced(sys: &CoxeterSystem, word: &[Gen], bound: usize) -> Result<bool> {
    if word.len() > bound {
        return Err(CoxError::BoundExceeded {
            len: word.len(),
            bound,
        });
    }
    let mut seen: FxHashSet<Vec<Gen>> = FxHashSet::default();
    let mut stack = vec![word.to_vec()];
    seen.insert(word.to_vec());
    while let Some(w) = stack.pop() {
        if w.windows(2).any(|p| p[0] == p[1]) {
            return Ok(false);
        }
        for i in 0..w.len().saturating_sub(1) {
            let (s, t) = (w[i], w[i + 1]);
            let m = match sys.bond(s, t) {
                Bond::Finite(m) => m as usize,
                Bond::Infinite => continue,
            };
            if i + m > w.len() {
                continue;
            }
            let alternates = (0..m).all(|k| w[i + k] == if k % 2 == 0 { s } else { t });
            if !alternates {
                continue;
            }
            let mut next = w.clone();
            for k in 0..m {
                next[i + k] = if k % 2 == 0 { t } else { s };
            }
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    Ok(true)
}
