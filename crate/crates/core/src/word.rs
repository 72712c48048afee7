//! Words in the surface group and in free groups.
//!
//! Letters are nonzero `i32`s; `-x` is the inverse of `x`. The surface group
//! of genus g is presented on letters 1..=2g by the single relator
//! `[1,2][3,4]...`; the presentation satisfies the small-cancellation
//! condition that makes Dehn's algorithm decide the word problem, and its
//! conjugacy refinement canonicalizes free homotopy classes: geodesic cyclic
//! words of a class are connected by rotations and exact-half relator swaps.

use std::collections::{BTreeSet, VecDeque};

/// Freely reduce a word in place semantics (returns the reduced word).
pub fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &l in word {
        debug_assert!(l != 0);
        if let Some(&last) = out.last() {
            if last == -l {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    out
}

/// Cyclically reduce: freely reduce, then trim cancelling first/last letters.
pub fn cyclic_reduce(word: &[i32]) -> Vec<i32> {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn invert(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&l| -l).collect()
}

fn rotations_of(word: &[i32]) -> Vec<Vec<i32>> {
    let n = word.len();
    (0..n)
        .map(|i| {
            let mut r = Vec::with_capacity(n);
            r.extend_from_slice(&word[i..]);
            r.extend_from_slice(&word[..i]);
            r
        })
        .collect()
}

/// All cyclic rotations of the relator and of its inverse.
fn symmetrized_relators(relator: &[i32]) -> Vec<Vec<i32>> {
    let mut out = rotations_of(relator);
    out.extend(rotations_of(&invert(relator)));
    out
}

/// Match the longest prefix of some symmetrized relator against the cyclic
/// word starting at position `start`. Returns (relator index, match length).
fn longest_relator_match(w: &[i32], start: usize, rels: &[Vec<i32>]) -> (usize, usize) {
    let n = w.len();
    let mut best = (0, 0);
    for (ri, r) in rels.iter().enumerate() {
        let mut k = 0;
        while k < r.len() && k < n && w[(start + k) % n] == r[k] {
            k += 1;
        }
        if k > best.1 {
            best = (ri, k);
        }
    }
    best
}

/// Replace the cyclic subword `w[start..start+len]` by `repl`.
fn splice_cyclic(w: &[i32], start: usize, len: usize, repl: &[i32]) -> Vec<i32> {
    let n = w.len();
    let mut out = Vec::with_capacity(n - len + repl.len());
    out.extend_from_slice(repl);
    for i in 0..n - len {
        out.push(w[(start + len + i) % n]);
    }
    out
}

/// Cyclic Dehn reduction: while some cyclic subword covers strictly more than
/// half of a relator, replace it by the inverse of the complementary piece.
/// The result is a geodesic representative of the conjugacy class; it is
/// empty exactly for the trivial class.
pub fn dehn_reduce(word: &[i32], relator: &[i32]) -> Vec<i32> {
    let rels = symmetrized_relators(relator);
    let half = relator.len() / 2;
    let mut w = cyclic_reduce(word);
    'outer: loop {
        if w.is_empty() {
            return w;
        }
        for start in 0..w.len() {
            let (ri, k) = longest_relator_match(&w, start, &rels);
            if k > half {
                // r = u v with u the matched piece; u = v^{-1} in the group.
                let r = &rels[ri];
                let repl = invert(&r[k..]);
                w = cyclic_reduce(&splice_cyclic(&w, start, k, &repl));
                continue 'outer;
            }
        }
        return w;
    }
}

/// True iff the word represents the trivial element (as a conjugacy class,
/// which for loops means null-homotopic).
pub fn is_trivial(word: &[i32], relator: &[i32]) -> bool {
    dehn_reduce(word, relator).is_empty()
}

/// Least rotation in linear time (Booth's algorithm).
fn lexmin_rotation(w: &[i32]) -> Vec<i32> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let at = |i: usize| w[i % n];
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k: usize = 0;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    (0..n).map(|i| at(k + i)).collect()
}

/// Exact-half relator swaps applied at every position, each followed by
/// cyclic reduction. Swaps preserve the conjugacy class and, on geodesic
/// words, the length.
fn half_swaps(w: &[i32], rels: &[Vec<i32>], half: usize) -> Vec<Vec<i32>> {
    let n = w.len();
    let mut out = Vec::new();
    if n < half {
        return out;
    }
    for start in 0..n {
        for r in rels {
            let mut k = 0;
            while k < half && k < n && w[(start + k) % n] == r[k] {
                k += 1;
            }
            if k == half {
                let repl = invert(&r[half..]);
                out.push(cyclic_reduce(&splice_cyclic(w, start, half, &repl)));
            }
        }
    }
    out
}

/// Canonical key of the conjugacy class of `word`, up to inversion when
/// `unoriented` is set. Computed as the lexicographically least rotation over
/// the closure of the geodesic representatives under half-relator swaps.
pub fn conjugacy_key(word: &[i32], relator: &[i32], unoriented: bool) -> Vec<i32> {
    let rels = symmetrized_relators(relator);
    let half = relator.len() / 2;
    let mut seeds = vec![dehn_reduce(word, relator)];
    if unoriented {
        let inv = invert(&seeds[0]);
        seeds.push(dehn_reduce(&inv, relator));
    }
    let mut target_len = seeds.iter().map(|s| s.len()).min().unwrap();
    'restart: loop {
        let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
        for s in &seeds {
            if s.len() == target_len {
                let c = lexmin_rotation(s);
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        // Defensive cap; geodesic closures are small in practice.
        let cap = 20_000;
        while let Some(w) = queue.pop_front() {
            for next in half_swaps(&w, &rels, half) {
                if next.len() < target_len {
                    // A swap exposed a shorter conjugate: restart from it.
                    let shorter = dehn_reduce(&next, relator);
                    target_len = shorter.len();
                    seeds = vec![shorter.clone()];
                    if unoriented {
                        seeds.push(dehn_reduce(&invert(&shorter), relator));
                    }
                    continue 'restart;
                }
                let c = lexmin_rotation(&next);
                if seen.len() < cap && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
        return seen.into_iter().next().unwrap_or_default();
    }
}

/// Exponent-sum vector over letters 1..=n (abelianization).
pub fn exponent_sums(word: &[i32], n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for &l in word {
        let i = (l.unsigned_abs() as usize) - 1;
        if i < n {
            v[i] += l.signum() as i64;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceSpec;

    fn relator2() -> Vec<i32> {
        SurfaceSpec::new(2).unwrap().relator()
    }

    #[test]
    fn reduces_relator_to_identity() {
        let r = relator2();
        assert!(is_trivial(&r, &r));
        let rr: Vec<i32> = r.iter().chain(r.iter()).copied().collect();
        assert!(is_trivial(&rr, &r));
        assert!(is_trivial(&invert(&r), &r));
    }

    #[test]
    fn generator_is_not_trivial() {
        let r = relator2();
        assert!(!is_trivial(&[1], &r));
        assert!(!is_trivial(&[1, 2], &r));
    }

    #[test]
    fn conjugates_share_keys() {
        let r = relator2();
        let w = vec![1, 2, -1, 3];
        for g in [vec![1], vec![2, -3], vec![4, 4, 1]] {
            let mut conj = g.clone();
            conj.extend_from_slice(&w);
            conj.extend(invert(&g));
            assert_eq!(
                conjugacy_key(&w, &r, false),
                conjugacy_key(&conj, &r, false),
                "conjugation by {g:?}"
            );
        }
    }

    #[test]
    fn relator_padding_shares_keys() {
        // w and (prefix of r)^{-1} * w * ... style rewrites must agree.
        let r = relator2();
        let w = vec![1, 2, 1, 2];
        let mut padded = w.clone();
        padded.extend_from_slice(&r);
        assert_eq!(
            conjugacy_key(&w, &r, false),
            conjugacy_key(&padded, &r, false)
        );
    }

    #[test]
    fn unoriented_key_identifies_inverse() {
        let r = relator2();
        let w = vec![1, 3, -2];
        assert_eq!(
            conjugacy_key(&w, &r, true),
            conjugacy_key(&invert(&w), &r, true)
        );
        assert_ne!(
            conjugacy_key(&w, &r, false),
            conjugacy_key(&invert(&w), &r, false)
        );
    }

    #[test]
    fn exponent_sums_mod_two_detect_nonseparating() {
        let v = exponent_sums(&[1, 2, -1, 3], 4);
        assert_eq!(v, vec![0, 1, 1, 0]);
    }

    #[test]
    fn booth_matches_naive_minimum() {
        let words: Vec<Vec<i32>> = vec![
            vec![3],
            vec![2, 1],
            vec![1, 2, -1, -2],
            vec![2, -3, 2, -3, 1],
            vec![-1, -1, 4, -1, 4, 2, 2],
            vec![1, 1, 1, 1],
        ];
        for w in words {
            let naive = rotations_of(&w).into_iter().min().unwrap();
            assert_eq!(lexmin_rotation(&w), naive, "word {w:?}");
        }
    }
}
