//! Factor complexity and eventual periodicity of finite words.

use std::collections::HashSet;
use std::hash::Hash;

/// `w = prefix · period^repeats`, with `|period| = n!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicDecomposition<T> {
    pub prefix: Vec<T>,
    pub period: Vec<T>,
    pub repeats: usize,
}

impl<T: Clone> PeriodicDecomposition<T> {
    pub fn reconstruct(&self) -> Vec<T> {
        let mut out = self.prefix.clone();
        for _ in 0..self.repeats {
            out.extend_from_slice(&self.period);
        }
        out
    }
}

/// Number of distinct factors of length `n`.
pub fn distinct_subwords<T: Eq + Hash>(w: &[T], n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    w.windows(n).collect::<HashSet<_>>().len()
}

/// `n!`, or `None` on overflow.
fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// Smallest `o` such that `w[o..]` has period `t`.
fn periodic_from<T: Eq>(w: &[T], t: usize) -> usize {
    let mut o = w.len().saturating_sub(t);
    while o > 0 && w[o - 1] == w[o - 1 + t] {
        o -= 1;
    }
    o
}

/// For a word with fewer than `n` distinct factors of length `n`, writes it
/// as `c d d … d` with `|d| = n!` and `|c| < 2·n!`.
///
/// The suffix after the shortest possible prefix has a period `t ≤ n`, which
/// divides `n!`; `|c|` is then the least length at least that prefix with
/// `|w| - |c|` a multiple of `n!`. Returns `None` when the factor count is
/// at least `n`, or when no decomposition meets the prefix bound.
pub fn periodic_decomposition<T: Eq + Hash + Clone>(w: &[T], n: usize) -> Option<PeriodicDecomposition<T>> {
    if n == 0 || distinct_subwords(w, n) >= n {
        return None;
    }
    let big = factorial(n)?;
    let (offset, t) = (1..=n.min(w.len().max(1)))
        .map(|t| (if t <= w.len() { periodic_from(w, t) } else { 0 }, t))
        .min()?;
    let prefix_len = if w.len() < big {
        w.len()
    } else {
        let rem = (w.len() - offset) % big;
        offset + rem
    };
    if prefix_len >= 2 * big {
        return None;
    }
    let repeats = (w.len() - prefix_len) / big;
    let period: Vec<T> = if repeats > 0 {
        w[prefix_len..prefix_len + big].to_vec()
    } else if w.is_empty() {
        Vec::new()
    } else {
        // no full copy fits; continue the periodic tail to length n!
        let start = offset.min(w.len() - 1);
        (0..big).map(|i| w[start + i % t.min(w.len() - start)].clone()).collect()
    };
    let d = PeriodicDecomposition { prefix: w[..prefix_len].to_vec(), period, repeats };
    (d.reconstruct() == w).then_some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_word() {
        let w: Vec<char> = "xxxxx".chars().collect();
        assert_eq!(distinct_subwords(&w, 2), 1);
        let d = periodic_decomposition(&w, 2).unwrap();
        assert_eq!(d.period, vec!['x', 'x']);
        assert_eq!(d.reconstruct(), w);
        assert!(d.prefix.len() < 4);
    }

    #[test]
    fn alternating_word() {
        let w: Vec<char> = "xy".repeat(20).chars().collect();
        assert_eq!(distinct_subwords(&w, 3), 2);
        let d = periodic_decomposition(&w, 3).unwrap();
        assert_eq!(d.period.len(), 6);
        assert_eq!(d.period, "xyxyxy".chars().collect::<Vec<_>>());
        assert_eq!(d.reconstruct(), w);
    }

    #[test]
    fn rich_word_has_no_decomposition() {
        let w: Vec<char> = "xxyxyyxyyy".chars().collect();
        assert!(distinct_subwords(&w, 2) >= 2);
        assert_eq!(periodic_decomposition(&w, 2), None);
    }

    #[test]
    fn preperiodic_word() {
        let mut w: Vec<u8> = vec![7, 7, 3];
        for _ in 0..10 {
            w.extend([1, 2]);
        }
        // factors of length 4: 7731, 7312, 3121, 1212, 2121 -> 5 >= 4
        assert_eq!(periodic_decomposition(&w, 4), None);
        let n = 6;
        assert!(distinct_subwords(&w, n) < n);
        let d = periodic_decomposition(&w, n).unwrap();
        assert_eq!(d.reconstruct(), w);
        assert_eq!(d.period.len(), 720);
    }

    #[test]
    fn aperiodic_tail_has_no_short_prefix() {
        // two factors of length 3, yet the lone final `y` forces |c| > 2·3!
        let mut w = vec!['x'; 100];
        w.push('y');
        assert_eq!(distinct_subwords(&w, 3), 2);
        assert_eq!(periodic_decomposition(&w, 3), None);
    }
}
