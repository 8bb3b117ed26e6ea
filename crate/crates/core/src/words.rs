//! Words in the standard generators of the cube right-angled Coxeter group and in
//! the free product of four copies of `Z/2`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{
    commutation_graph, standard_table, CommutationGraph, GeneratorName, GeneratorTable, ProjIsom,
};

/// Largest word length the streaming enumerators accept.
pub const MAX_STREAM_LENGTH: usize = 20;
/// Largest free-ball radius that [`enumerate_free_ball`] materializes.
pub const MAX_FREE_BALL_MATERIALIZED: usize = 12;
/// Largest RACG-ball radius that [`enumerate_racg_ball`] materializes.
pub const MAX_RACG_BALL_MATERIALIZED: usize = 8;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterWord(pub Vec<GeneratorName>);

impl CoxeterWord {
    pub fn empty() -> Self {
        CoxeterWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GeneratorName] {
        &self.0
    }

    pub fn concat(&self, other: &CoxeterWord) -> CoxeterWord {
        CoxeterWord(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// The word read backwards, which spells the inverse element.
    pub fn reversed(&self) -> CoxeterWord {
        CoxeterWord(self.0.iter().rev().copied().collect())
    }

    pub fn evaluate(&self) -> ProjIsom {
        evaluate(self)
    }

    pub fn pack(&self) -> Result<PackedWord> {
        PackedWord::from_digits(self.0.iter().map(|g| g.index() as u8))
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<&str> = self.0.iter().map(|g| g.as_str()).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for CoxeterWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(CoxeterWord::empty());
        }
        s.split('.')
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(CoxeterWord)
    }
}

/// Reduced word over `t1..t4`, stored as indices `0..4`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<u8>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = u8>) -> Result<FreeWord> {
        let mut out: Vec<u8> = Vec::new();
        for l in letters {
            if l > 3 {
                return Err(Error::Parse(format!("free letter index {l} out of range")));
            }
            if out.last() == Some(&l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(FreeWord(out))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::reduce(self.0.iter().chain(other.0.iter()).copied()).expect("valid letters")
    }

    /// The corresponding element of the Apollonian group, `t_k -> r_k`.
    pub fn to_apollonian(&self) -> CoxeterWord {
        CoxeterWord(
            self.0
                .iter()
                .map(|&l| GeneratorName::APOLLONIAN[l as usize])
                .collect(),
        )
    }

    pub fn pack(&self) -> Result<PackedWord> {
        PackedWord::from_digits(self.0.iter().copied())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("t{}", l + 1)).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for FreeWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(FreeWord::empty());
        }
        let letters = s
            .split('.')
            .map(|p| match p {
                "t1" => Ok(0),
                "t2" => Ok(1),
                "t3" => Ok(2),
                "t4" => Ok(3),
                _ => Err(Error::Parse(format!("unknown free letter '{p}'"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        if letters.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("'{s}' is not reduced")));
        }
        Ok(FreeWord(letters))
    }
}

/// A word of length at most 20 over an alphabet of at most 8 letters, packed as
/// base-9 digits (digit 0 terminates).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedWord(pub u64);

impl PackedWord {
    pub const EMPTY: PackedWord = PackedWord(0);

    pub fn from_digits(letters: impl IntoIterator<Item = u8>) -> Result<Self> {
        let mut v: u64 = 0;
        let mut place: u64 = 1;
        for (k, l) in letters.into_iter().enumerate() {
            if k >= MAX_STREAM_LENGTH || l > 7 {
                return Err(Error::SizeGuard(
                    "word does not fit a packed representation".into(),
                ));
            }
            v += (u64::from(l) + 1) * place;
            place = place.saturating_mul(9);
        }
        Ok(PackedWord(v))
    }

    pub fn len(self) -> usize {
        let (mut v, mut n) = (self.0, 0);
        while v > 0 {
            v /= 9;
            n += 1;
        }
        n
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn digits(self) -> Vec<u8> {
        let mut v = self.0;
        let mut out = Vec::new();
        while v > 0 {
            out.push((v % 9) as u8 - 1);
            v /= 9;
        }
        out
    }

    pub fn to_coxeter(self) -> CoxeterWord {
        CoxeterWord(
            self.digits()
                .into_iter()
                .map(|d| GeneratorName::ALL[d as usize])
                .collect(),
        )
    }

    pub fn to_free(self) -> FreeWord {
        FreeWord(self.digits())
    }
}

/// Evaluates a word with the standard generator table.
pub fn evaluate(w: &CoxeterWord) -> ProjIsom {
    evaluate_with(standard_table(), w)
}

pub fn evaluate_with(table: &GeneratorTable, w: &CoxeterWord) -> ProjIsom {
    w.0.iter()
        .fold(ProjIsom::identity(), |acc, &g| acc.mul(table.get(g)))
}

/// Deletes pairs `s ... s` whose separating letters all commute with `s`, then
/// returns the lexicographically least rearrangement under commutations.
pub fn normal_form(w: &CoxeterWord) -> CoxeterWord {
    normal_form_in(commutation_graph(), w)
}

pub fn normal_form_in(graph: &CommutationGraph, w: &CoxeterWord) -> CoxeterWord {
    let mut letters = w.0.clone();
    'outer: loop {
        for j in 0..letters.len() {
            let s = letters[j];
            for i in (0..j).rev() {
                let x = letters[i];
                if x == s {
                    letters.remove(j);
                    letters.remove(i);
                    continue 'outer;
                }
                if !graph.commute(x, s) {
                    break;
                }
            }
        }
        break;
    }
    // greedy lexicographically least linear extension
    let mut out = Vec::with_capacity(letters.len());
    while !letters.is_empty() {
        let mut best: Option<usize> = None;
        for k in 0..letters.len() {
            let movable = letters[..k].iter().all(|&y| graph.commute(y, letters[k]));
            if movable && best.is_none_or(|b| letters[k] < letters[b]) {
                best = Some(k);
            }
        }
        let k = best.expect("first letter is always movable");
        out.push(letters.remove(k));
    }
    CoxeterWord(out)
}

/// Whether appending `b` to a normal form keeps it a normal form.
pub fn extends_normal_form(
    graph: &CommutationGraph,
    prefix: &[GeneratorName],
    b: GeneratorName,
) -> bool {
    for &x in prefix.iter().rev() {
        if x == b {
            return false;
        }
        if !graph.commute(x, b) {
            return true;
        }
        if x > b {
            return false;
        }
    }
    true
}

/// Image under the surjection onto the free product: `r_k^⊥ -> t_k`, `r_k -> e`.
pub fn pi_image(w: &CoxeterWord) -> FreeWord {
    FreeWord::reduce(
        w.0.iter()
            .filter(|g| g.is_perp())
            .map(|g| (g.index() - 4) as u8),
    )
    .expect("perp generators map to valid letters")
}

/// Membership in the kernel of [`pi_image`].
pub fn in_infilonian(w: &CoxeterWord) -> bool {
    pi_image(w).is_empty()
}

/// Number of reduced free words of length at most `len`.
pub fn free_ball_size(len: usize) -> u64 {
    1 + 4 * (3u64.pow(len as u32) - 1) / 2
}

/// Number of elements of the cube Coxeter group of word length at most `len`,
/// from the growth series `(1 + t)^2 / ((1 - t)(1 - 5t))`.
pub fn racg_ball_size(len: usize) -> u64 {
    // (1 + t)^2 / (1 - t) = 1 + 3t + 4t^2 + 4t^3 + ...
    let c = |k: usize| match k {
        0 => 1u64,
        1 => 3,
        _ => 4,
    };
    let mut total: u64 = 0;
    for n in 0..=len {
        let sphere = (0..=n).fold(0u64, |acc, k| {
            acc.saturating_add(c(k).saturating_mul(5u64.saturating_pow((n - k) as u32)))
        });
        total = total.saturating_add(sphere);
    }
    total
}

/// Depth-first walk over all reduced free words of length `<= len`, threading a
/// state from parent to child.
pub fn visit_free_ball<S>(
    len: usize,
    root: S,
    step: &impl Fn(&S, u8) -> S,
    visit: &mut impl FnMut(&[u8], &S),
) -> Result<()> {
    if len > MAX_STREAM_LENGTH {
        return Err(Error::SizeGuard(format!(
            "free ball radius {len} exceeds {MAX_STREAM_LENGTH}"
        )));
    }
    let mut word = Vec::with_capacity(len);
    visit(&word, &root);
    free_dfs(len, &mut word, &root, step, visit);
    Ok(())
}

fn free_dfs<S>(
    len: usize,
    word: &mut Vec<u8>,
    state: &S,
    step: &impl Fn(&S, u8) -> S,
    visit: &mut impl FnMut(&[u8], &S),
) {
    if word.len() == len {
        return;
    }
    for l in 0..4u8 {
        if word.last() == Some(&l) {
            continue;
        }
        let next = step(state, l);
        word.push(l);
        visit(word, &next);
        free_dfs(len, word, &next, step, visit);
        word.pop();
    }
}

pub fn enumerate_free_ball(len: usize) -> Result<Vec<FreeWord>> {
    if len > MAX_FREE_BALL_MATERIALIZED {
        return Err(Error::SizeGuard(format!(
            "free ball radius {len} exceeds {MAX_FREE_BALL_MATERIALIZED}; use visit_free_ball"
        )));
    }
    let mut out = Vec::with_capacity(free_ball_size(len) as usize);
    visit_free_ball(len, (), &|_, _| (), &mut |w, _| {
        out.push(FreeWord(w.to_vec()))
    })?;
    Ok(out)
}

/// Depth-first walk over the normal forms of all elements of word length `<= len`.
pub fn visit_racg_ball<S>(
    len: usize,
    root: S,
    step: &impl Fn(&S, GeneratorName) -> S,
    visit: &mut impl FnMut(&[GeneratorName], &S),
) -> Result<()> {
    if len > MAX_STREAM_LENGTH {
        return Err(Error::SizeGuard(format!(
            "RACG ball radius {len} exceeds {MAX_STREAM_LENGTH}"
        )));
    }
    let graph = commutation_graph();
    let mut word = Vec::with_capacity(len);
    visit(&word, &root);
    racg_dfs(graph, len, &mut word, &root, step, visit);
    Ok(())
}

fn racg_dfs<S>(
    graph: &CommutationGraph,
    len: usize,
    word: &mut Vec<GeneratorName>,
    state: &S,
    step: &impl Fn(&S, GeneratorName) -> S,
    visit: &mut impl FnMut(&[GeneratorName], &S),
) {
    if word.len() == len {
        return;
    }
    for b in GeneratorName::ALL {
        if !extends_normal_form(graph, word, b) {
            continue;
        }
        let next = step(state, b);
        word.push(b);
        visit(word, &next);
        racg_dfs(graph, len, word, &next, step, visit);
        word.pop();
    }
}

/// One normal form per group element of word length `<= len`, in depth-first order.
pub fn enumerate_racg_ball(len: usize) -> Result<Vec<CoxeterWord>> {
    if len > MAX_RACG_BALL_MATERIALIZED {
        return Err(Error::SizeGuard(format!(
            "RACG ball radius {len} exceeds {MAX_RACG_BALL_MATERIALIZED}; use visit_racg_ball"
        )));
    }
    let mut out = Vec::new();
    visit_racg_ball(len, (), &|_, _| (), &mut |w, _| {
        out.push(CoxeterWord(w.to_vec()))
    })?;
    Ok(out)
}

/// Breadth-first enumeration deduplicated through [`normal_form`] in a hash set.
/// Slower than [`enumerate_racg_ball`]; kept as an independent route.
pub fn enumerate_racg_ball_bfs(len: usize) -> Result<Vec<CoxeterWord>> {
    if len > MAX_RACG_BALL_MATERIALIZED {
        return Err(Error::SizeGuard(format!(
            "RACG ball radius {len} exceeds {MAX_RACG_BALL_MATERIALIZED}"
        )));
    }
    let mut seen: HashSet<CoxeterWord> = HashSet::new();
    let mut frontier = vec![CoxeterWord::empty()];
    seen.insert(CoxeterWord::empty());
    let mut out = frontier.clone();
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in GeneratorName::ALL {
                let mut letters = w.0.clone();
                letters.push(g);
                let nf = normal_form(&CoxeterWord(letters));
                if nf.len() == w.len() + 1 && seen.insert(nf.clone()) {
                    next.push(nf);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}
