//! Permutations of `{0..k-1}`, stored as image arrays.
//!
//! Cycle notation at the text boundary is 1-based, e.g. `(1 2)(3 4)`, with
//! the identity written `e`. Compact forms without spaces (`(12)(34)`) are
//! accepted when every point is a single digit.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let k = image.len();
        let mut seen = vec![false; k];
        for &x in &image {
            if x >= k || seen[x] {
                return Err(Error::InvalidPerm(format!("{image:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm { image })
    }

    pub fn identity(k: usize) -> Self {
        Perm {
            image: (0..k).collect(),
        }
    }

    /// Transposition of two points (0-based).
    pub fn swap(k: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(k);
        p.image.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Perm { image: inv }
    }

    /// Order of the permutation as a group element.
    pub fn element_order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, num_integer::lcm)
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image[cur];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted cycle lengths including fixed points, e.g. `[1, 1, 2]`.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable();
        lens
    }

    /// Parses 1-based cycle notation for a permutation of degree `k`.
    pub fn parse_cycles(text: &str, k: usize) -> Result<Perm> {
        let s = text.trim();
        if s.is_empty() || s == "e" || s == "()" {
            return Ok(Perm::identity(k));
        }
        let mut image: Vec<usize> = (0..k).collect();
        let mut touched = vec![false; k];
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPerm(format!("expected '(' in `{text}`")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::InvalidPerm(format!("unbalanced parentheses in `{text}`")))?;
            let points = parse_cycle_points(&body[..close], k, text)?;
            for (idx, &p) in points.iter().enumerate() {
                if touched[p] {
                    return Err(Error::InvalidPerm(format!(
                        "point {} repeated in `{text}`",
                        p + 1
                    )));
                }
                touched[p] = true;
                image[p] = points[(idx + 1) % points.len()];
            }
            rest = &body[close + 1..];
        }
        Perm::new(image)
    }

    /// All `k!` permutations in lexicographic order of their image arrays.
    pub fn all(k: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(Perm { image: cur.clone() });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

fn parse_cycle_points(body: &str, k: usize, text: &str) -> Result<Vec<usize>> {
    let tokens: Vec<&str> = if body.contains(|c: char| c.is_whitespace() || c == ',') {
        body.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect()
    } else {
        // compact form such as (1324)
        body.char_indices()
            .map(|(i, c)| &body[i..i + c.len_utf8()])
            .collect()
    };
    let mut points = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let v: usize = tok
            .parse()
            .map_err(|_| Error::InvalidPerm(format!("bad point `{tok}` in `{text}`")))?;
        if v == 0 || v > k {
            return Err(Error::InvalidPerm(format!(
                "point {v} out of range 1..={k} in `{text}`"
            )));
        }
        points.push(v - 1);
    }
    if points.is_empty() {
        return Err(Error::InvalidPerm(format!("empty cycle in `{text}`")));
    }
    Ok(points)
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}
