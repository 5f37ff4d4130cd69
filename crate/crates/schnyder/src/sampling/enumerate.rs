use thiserror::Error;

use crate::color::Color;
use crate::words::Word;

pub const DEFAULT_ENUM_CAP: usize = 6;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("n = {n} exceeds the enumeration cap {cap}; |W_n| grows like 16^n / n^5")]
    AboveCap { n: usize, cap: usize },
}

/// All words of `W_n`, lexicographically sorted (b < g < r).
pub fn enumerate_wn(n: usize) -> Result<Vec<Word>, EnumerateError> {
    enumerate_wn_with_cap(n, DEFAULT_ENUM_CAP)
}

pub fn enumerate_wn_with_cap(n: usize, cap: usize) -> Result<Vec<Word>, EnumerateError> {
    if n > cap {
        return Err(EnumerateError::AboveCap { n, cap });
    }
    let mut out = Vec::new();
    let mut prefix: Vec<Color> = Vec::with_capacity(3 * n);
    // ASCII order so the DFS emits sorted output.
    const ORDER: [Color; 3] = [Color::B, Color::G, Color::R];
    struct State {
        n: usize,
        counts: [usize; 3],
        l: i64,
        r: i64,
    }
    fn dfs(st: &mut State, prefix: &mut Vec<Color>, out: &mut Vec<Word>) {
        if prefix.len() == 3 * st.n {
            if st.l == 0 && st.r == 0 {
                out.push(Word::finite(prefix.clone()));
            }
            return;
        }
        for c in ORDER {
            if prefix.last() == Some(&Color::R) && c == Color::B {
                continue;
            }
            let idx = c as usize;
            if st.counts[idx] >= st.n {
                continue;
            }
            let (dl, dr) = crate::words::step_of(c);
            let (l, r) = (st.l + dl, st.r + dr);
            if l < 0 || r < 0 {
                continue;
            }
            // The walk must still be able to come home: each b needs a later
            // r, each surplus g a later b.
            let left = 3 * st.n - prefix.len() - 1;
            if (l + r) as usize > left {
                continue;
            }
            st.counts[idx] += 1;
            let (ol, or) = (st.l, st.r);
            st.l = l;
            st.r = r;
            prefix.push(c);
            dfs(st, prefix, out);
            prefix.pop();
            st.l = ol;
            st.r = or;
            st.counts[idx] -= 1;
        }
    }
    let mut st = State { n, counts: [0; 3], l: 0, r: 0 };
    dfs(&mut st, &mut prefix, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::validate_wn;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_wn(1).unwrap().len(), 1);
        assert_eq!(enumerate_wn(2).unwrap().len(), 3);
        assert_eq!(enumerate_wn(3).unwrap().len(), 14);
        assert_eq!(enumerate_wn(4).unwrap().len(), 84);
        assert_eq!(enumerate_wn_with_cap(5, 5).unwrap().len(), 594);
    }

    #[test]
    fn w1_and_w2() {
        let w1: Vec<String> = enumerate_wn(1).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(w1, vec!["gbr"]);
        let w2: Vec<String> = enumerate_wn(2).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(w2, vec!["gbgbrr", "gbrgbr", "ggbbrr"]);
    }

    #[test]
    fn all_members_and_sorted() {
        for n in 1..=4 {
            let words = enumerate_wn(n).unwrap();
            for w in &words {
                assert!(validate_wn(w).is_member());
            }
            let mut sorted: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            let original = sorted.clone();
            sorted.sort();
            assert_eq!(original, sorted);
        }
    }

    #[test]
    fn cap_guard() {
        assert!(matches!(enumerate_wn(7), Err(EnumerateError::AboveCap { .. })));
    }

    #[test]
    fn letter_counts_balanced() {
        for n in 1..=5 {
            for w in enumerate_wn_with_cap(n, 5).unwrap() {
                let mut counts = [0usize; 3];
                for &l in w.letters() {
                    counts[l as usize] += 1;
                }
                assert_eq!(counts, [n, n, n]);
            }
        }
    }
}
