use std::fmt;

use num_rational::Ratio;

use super::{Cover, PointSet, Transform};
use crate::codes::Code;
use crate::error::{check_ambient, Error, Result};

pub type Rational = Ratio<i64>;

/// Half-open interval `[start, end)`; empty when `start == end`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    start: Rational,
    end: Rational,
}

impl Interval {
    pub fn new(start: Rational, end: Rational) -> Result<Self> {
        if start > end {
            return Err(Error::BadInterval(format!(
                "[{}, {}) has start after end",
                fmt_rational(start),
                fmt_rational(end)
            )));
        }
        Ok(Self { start, end })
    }

    pub fn from_ints(start: i64, end: i64) -> Result<Self> {
        Self::new(Rational::from_integer(start), Rational::from_integer(end))
    }

    pub fn start(&self) -> Rational {
        self.start
    }

    pub fn end(&self) -> Rational {
        self.end
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, x: Rational) -> bool {
        self.start <= x && x < self.end
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        other.is_empty() || (self.start <= other.start && other.end <= self.end)
    }
}

pub fn fmt_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadInterval(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", fmt_rational(self.start), fmt_rational(self.end))
    }
}

/// A finite union of half-open intervals, kept sorted, disjoint and with
/// touching pieces merged.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn new(parts: impl IntoIterator<Item = Interval>) -> Self {
        let mut sorted: Vec<Interval> = parts.into_iter().filter(|i| !i.is_empty()).collect();
        sorted.sort_by(|a, b| a.start.cmp(&b.start));
        let mut merged: Vec<Interval> = Vec::with_capacity(sorted.len());
        for iv in sorted {
            match merged.last_mut() {
                Some(last) if iv.start <= last.end => {
                    if iv.end > last.end {
                        last.end = iv.end;
                    }
                }
                _ => merged.push(iv),
            }
        }
        Self { parts: merged }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(iv: Interval) -> Self {
        Self::new([iv])
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// At most one connected component.
    pub fn is_convex(&self) -> bool {
        self.parts.len() <= 1
    }

    pub fn contains(&self, x: Rational) -> bool {
        self.parts.iter().any(|iv| iv.contains(x))
    }

    pub fn endpoints(&self) -> impl Iterator<Item = Rational> + '_ {
        self.parts.iter().flat_map(|iv| [iv.start, iv.end])
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                let start = a.start.max(b.start);
                let end = a.end.min(b.end);
                if start < end {
                    out.push(Interval { start, end });
                }
            }
        }
        IntervalSet::new(out)
    }

    /// `within \ self`.
    pub fn complement_within(&self, within: &Interval) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = within.start;
        for iv in &self.parts {
            if iv.start > cursor {
                out.push(Interval {
                    start: cursor,
                    end: iv.start.min(within.end),
                });
            }
            cursor = cursor.max(iv.end);
        }
        if cursor < within.end {
            out.push(Interval {
                start: cursor,
                end: within.end,
            });
        }
        IntervalSet::new(out.into_iter().filter(|iv| iv.start < iv.end))
    }

    pub fn difference(&self, other: &IntervalSet, within: &Interval) -> IntervalSet {
        self.intersect(&other.complement_within(within))
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|iv| iv.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `n` finite unions of half-open rational intervals inside a bounding
/// half-open universe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalCover {
    universe: Interval,
    sets: Vec<IntervalSet>,
}

/// A [`Cover`] whose point `k` is the elementary cell `cells[k]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CellCover {
    pub cover: Cover,
    pub cells: Vec<Interval>,
}

impl IntervalCover {
    pub fn new(universe: Interval, sets: Vec<IntervalSet>) -> Result<Self> {
        check_ambient(sets.len())?;
        for (i, set) in sets.iter().enumerate() {
            if let Some(iv) = set.parts.iter().find(|iv| !universe.contains_interval(iv)) {
                return Err(Error::BadInterval(format!(
                    "{iv} of set {} lies outside the universe {universe}",
                    i + 1
                )));
            }
        }
        Ok(Self { universe, sets })
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn universe(&self) -> &Interval {
        &self.universe
    }

    pub fn sets(&self) -> &[IntervalSet] {
        &self.sets
    }

    /// Every set is a single interval (or empty). The universe is an
    /// interval by construction.
    pub fn is_convex(&self) -> bool {
        self.sets.iter().all(IntervalSet::is_convex)
    }

    /// Cuts the universe at every endpoint; each elementary cell becomes a
    /// point.
    pub fn to_cells(&self) -> CellCover {
        self.to_cells_with_breakpoints(&[])
    }

    /// As [`to_cells`](Self::to_cells), with extra cut points inside the
    /// universe. The code does not depend on them.
    pub fn to_cells_with_breakpoints(&self, extra: &[Rational]) -> CellCover {
        let mut cuts: Vec<Rational> = [self.universe.start, self.universe.end]
            .into_iter()
            .chain(self.sets.iter().flat_map(|s| s.endpoints()))
            .chain(extra.iter().copied().filter(|&x| self.universe.contains(x)))
            .collect();
        cuts.sort();
        cuts.dedup();
        let cells: Vec<Interval> = cuts
            .windows(2)
            .map(|w| Interval {
                start: w[0],
                end: w[1],
            })
            .collect();
        let members = self
            .sets
            .iter()
            .map(|s| {
                cells
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| s.contains(c.start))
                    .map(|(k, _)| k)
                    .collect::<PointSet>()
            })
            .collect();
        let cover = Cover::new((0..cells.len()).collect(), members)
            .expect("cells partition the universe");
        CellCover { cover, cells }
    }

    pub fn code(&self) -> Code {
        self.to_cells().cover.code()
    }

    fn as_set(&self, iv: Interval) -> IntervalSet {
        IntervalSet::single(iv)
    }

    /// The interval analogue of [`Cover::transform`]. A restriction whose
    /// compatible region is not a single interval is rejected.
    pub fn transform(&self, t: &Transform) -> Result<IntervalCover> {
        let n = self.n();
        match t {
            Transform::Permute(lambda) => {
                if lambda.len() != n {
                    return Err(Error::SizeMismatch {
                        expected: n,
                        found: lambda.len(),
                    });
                }
                let mut sets = vec![IntervalSet::empty(); n];
                for (i, s) in self.sets.iter().enumerate() {
                    sets[lambda.apply(i + 1) - 1] = s.clone();
                }
                IntervalCover::new(self.universe, sets)
            }
            Transform::Flip(i) => {
                if *i == 0 || *i > n {
                    return Err(Error::IndexOutOfRange { index: *i, n });
                }
                let mut sets = self.sets.clone();
                sets[i - 1] = self.sets[i - 1].complement_within(&self.universe);
                IntervalCover::new(self.universe, sets)
            }
            Transform::Restrict { m, mp } => {
                let (m, mp) = (*m, *mp);
                if m == 0 || m > mp || mp > n {
                    return Err(Error::BadParameters { m, mp, n });
                }
                let mut region = self.as_set(self.universe);
                for s in &self.sets[mp..] {
                    region = region.intersect(s);
                }
                for s in &self.sets[m..mp] {
                    region = region.difference(s, &self.universe);
                }
                let universe = match region.parts() {
                    [] => Interval {
                        start: self.universe.start,
                        end: self.universe.start,
                    },
                    [single] => *single,
                    _ => return Err(Error::NonIntervalRegion),
                };
                let sets = self.sets[..m].iter().map(|s| s.intersect(&region)).collect();
                IntervalCover::new(universe, sets)
            }
        }
    }
}
