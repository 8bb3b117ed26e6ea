//! Orbit balls and least-squares critical exponent fits.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use super::{dist, FloatIsom, Point3};
use crate::error::{Error, Result};
use crate::group::{standard_table, GeneratorName};
use crate::words::{
    free_ball_size, racg_ball_size, visit_free_ball, visit_racg_ball, CoxeterWord, PackedWord,
};

/// Largest number of entries an orbit ball may hold.
pub const MAX_ORBIT_ENTRIES: u64 = 40_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitGroup {
    Apollonian,
    SuperApollonian,
    Infilonian,
}

impl OrbitGroup {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitGroup::Apollonian => "apollonian",
            OrbitGroup::SuperApollonian => "super-apollonian",
            OrbitGroup::Infilonian => "infilonian",
        }
    }

    /// Upper bound on the number of words enumerated for radius `len`.
    pub fn enumerated_size(self, len: usize) -> u64 {
        match self {
            OrbitGroup::Apollonian => free_ball_size(len),
            OrbitGroup::SuperApollonian | OrbitGroup::Infilonian => racg_ball_size(len),
        }
    }
}

impl fmt::Display for OrbitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrbitGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "apollonian" | "ap" => Ok(OrbitGroup::Apollonian),
            "super-apollonian" | "superapollonian" | "sa" => Ok(OrbitGroup::SuperApollonian),
            "infilonian" | "inf" => Ok(OrbitGroup::Infilonian),
            _ => Err(Error::Parse(format!("unknown group '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitEntry {
    pub word: PackedWord,
    pub displacement: f64,
}

#[derive(Clone, Debug)]
pub struct OrbitBall {
    pub base: Point3,
    /// Sorted by displacement.
    pub entries: Vec<OrbitEntry>,
    /// Largest displacement present.
    pub radius: f64,
    /// Scale below which the counts are close to complete: the median displacement
    /// over words of maximal length, or `radius` for balls without word data.
    pub saturation: f64,
    pub group: Option<OrbitGroup>,
    pub word_length: Option<usize>,
}

impl OrbitBall {
    /// Builds a ball from precomputed entries, sorting them.
    pub fn from_entries(base: Point3, mut entries: Vec<OrbitEntry>) -> Result<Self> {
        if entries
            .iter()
            .any(|e| !(e.displacement >= 0.0) || !e.displacement.is_finite())
        {
            return Err(Error::Invariant(
                "orbit displacements must be finite and nonnegative".into(),
            ));
        }
        entries.sort_by(|a, b| {
            a.displacement
                .total_cmp(&b.displacement)
                .then(a.word.cmp(&b.word))
        });
        let radius = entries.last().map_or(0.0, |e| e.displacement);
        Ok(OrbitBall {
            base,
            entries,
            radius,
            saturation: radius,
            group: None,
            word_length: None,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of entries with displacement `<= t`.
    pub fn count_within(&self, t: f64) -> usize {
        self.entries.partition_point(|e| e.displacement <= t)
    }

    /// The word of an entry spelled in the standard generators.
    pub fn word(&self, e: &OrbitEntry) -> CoxeterWord {
        match self.group {
            Some(OrbitGroup::Apollonian) => e.word.to_free().to_apollonian(),
            _ => e.word.to_coxeter(),
        }
    }

    /// CSV with header `word,displacement`.
    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "word,displacement")?;
        for e in &self.entries {
            writeln!(out, "{},{:.12e}", self.word(e), e.displacement)?;
        }
        Ok(())
    }
}

fn racg_index(g: GeneratorName) -> u8 {
    g.index() as u8
}

/// Orbit of `x0` under all elements of word length `<= len`.
///
/// Entries record `dist(x0, w x0)`, computed from `w^{-1} x0`, which the
/// depth-first walk builds one letter at a time.
pub fn orbit_ball(group: OrbitGroup, x0: Point3, len: usize) -> Result<OrbitBall> {
    let size = group.enumerated_size(len);
    if size > MAX_ORBIT_ENTRIES {
        return Err(Error::SizeGuard(format!(
            "{group} ball of word length {len} has {size} elements (limit {MAX_ORBIT_ENTRIES})"
        )));
    }
    let table = standard_table();
    let gens: Vec<FloatIsom> = GeneratorName::ALL
        .iter()
        .map(|&g| FloatIsom::from_exact(table.get(g)))
        .collect();
    let mut entries = Vec::with_capacity(size as usize);
    let mut failure: Option<Error> = None;
    let apply = |p: &Option<Point3>, g: &FloatIsom| p.and_then(|p| g.apply(&p).ok());
    match group {
        OrbitGroup::Apollonian => {
            let letters: Vec<FloatIsom> = GeneratorName::APOLLONIAN
                .iter()
                .map(|g| gens[g.index()])
                .collect();
            visit_free_ball(
                len,
                Some(x0),
                &|p, l| apply(p, &letters[l as usize]),
                &mut |w, p| push_entry(&mut entries, &mut failure, &x0, w.iter().copied(), p),
            )?;
        }
        OrbitGroup::SuperApollonian | OrbitGroup::Infilonian => {
            let filter = group == OrbitGroup::Infilonian;
            visit_racg_ball(
                len,
                Some(x0),
                &|p, g| apply(p, &gens[g.index()]),
                &mut |w, p| {
                    if !filter || kernel_member(w) {
                        push_entry(
                            &mut entries,
                            &mut failure,
                            &x0,
                            w.iter().map(|&g| racg_index(g)),
                            p,
                        )
                    }
                },
            )?;
        }
    }
    if let Some(e) = failure {
        return Err(e);
    }
    let saturation = sphere_median(&entries, len);
    let mut ball = OrbitBall::from_entries(x0, entries)?;
    ball.saturation = saturation;
    ball.group = Some(group);
    ball.word_length = Some(len);
    Ok(ball)
}

fn sphere_median(entries: &[OrbitEntry], len: usize) -> f64 {
    let mut sphere: Vec<f64> = entries
        .iter()
        .filter(|e| e.word.len() == len)
        .map(|e| e.displacement)
        .collect();
    if sphere.is_empty() {
        return entries.iter().map(|e| e.displacement).fold(0.0, f64::max);
    }
    let mid = sphere.len() / 2;
    *sphere.select_nth_unstable_by(mid, f64::total_cmp).1
}

fn push_entry(
    entries: &mut Vec<OrbitEntry>,
    failure: &mut Option<Error>,
    x0: &Point3,
    letters: impl Iterator<Item = u8>,
    p: &Option<Point3>,
) {
    if failure.is_some() {
        return;
    }
    let Some(p) = p else {
        *failure = Some(Error::Domain(
            "loss of precision while moving the base point".into(),
        ));
        return;
    };
    match PackedWord::from_digits(letters) {
        Ok(word) => entries.push(OrbitEntry {
            word,
            displacement: dist(x0, p),
        }),
        Err(e) => *failure = Some(e),
    }
}

/// Whether a normal form lies in the kernel of the map to the free product.
fn kernel_member(w: &[GeneratorName]) -> bool {
    let mut stack: [u8; 32] = [0; 32];
    let mut top = 0;
    for g in w.iter().filter(|g| g.is_perp()) {
        let l = g.index() as u8;
        if top > 0 && stack[top - 1] == l {
            top -= 1;
        } else {
            stack[top] = l;
            top += 1;
        }
    }
    top == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeltaFit {
    pub slope: f64,
    pub intercept: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub bins: usize,
    /// Distinct counts among the bins.
    pub increments: usize,
}

/// Bin width for orbit counting.
pub const DELTA_BIN: f64 = 0.1;

/// Least-squares slope of `log N(T)` against `T` on `[t_min, t_max]`, sampled every [`DELTA_BIN`].
pub fn estimate_delta(ball: &OrbitBall, window: (f64, f64)) -> Result<DeltaFit> {
    let (t_min, t_max) = window;
    if !(t_min >= 0.0 && t_max > t_min) {
        return Err(Error::Domain(format!("invalid window [{t_min}, {t_max}]")));
    }
    if t_max > 0.9 * ball.radius + 1e-12 {
        return Err(Error::Domain(format!(
            "window end {t_max} exceeds 0.9 times the ball radius {}",
            ball.radius
        )));
    }
    let n = ((t_max - t_min) / DELTA_BIN).floor() as usize + 1;
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    let mut increments = 0;
    let mut last = 0usize;
    for k in 0..n {
        let t = t_min + k as f64 * DELTA_BIN;
        let c = ball.count_within(t);
        if k == 0 || c != last {
            increments += 1;
        }
        last = c;
        xs.push(t);
        ys.push((c.max(1) as f64).ln());
    }
    if increments < 10 {
        return Err(Error::InsufficientData(format!(
            "only {increments} distinct orbit counts in [{t_min}, {t_max}]"
        )));
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(DeltaFit {
        slope,
        intercept: my - slope * mx,
        t_min,
        t_max,
        bins: n,
        increments,
    })
}

/// Fit on the default window `[0.3 S, 0.9 S]` with `S` the saturation scale.
pub fn estimate_delta_default(ball: &OrbitBall) -> Result<DeltaFit> {
    estimate_delta(ball, default_window(ball))
}

pub fn default_window(ball: &OrbitBall) -> (f64, f64) {
    (0.3 * ball.saturation, 0.9 * ball.saturation)
}
