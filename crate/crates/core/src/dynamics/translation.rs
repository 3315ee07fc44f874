//! Translating one color class vertically until its first combinatorial
//! change with the other class.

use std::fmt;

use num_traits::Signed;

use crate::arrgeom::{
    crossings, is_approaching, perturb_lines_to_simple, verify_triangle_cell, Point,
    PolyArrangement, TriangleCell,
};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    /// A moving line passes a crossing of two static lines.
    LineOverCrossing,
    /// A crossing of two moving lines passes a static line.
    CrossingOverLine,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TranslationEvent {
    pub t: Rational,
    pub kind: EventKind,
    /// 0-based, sorted.
    pub lines: [usize; 3],
    /// Where the event happens, in the moved position.
    pub location: Point,
}

impl fmt::Display for TranslationEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t = {} {:?} lines {:?} at {}",
            self.t,
            self.kind,
            self.lines.map(|l| l + 1),
            self.location
        )
    }
}

/// Split the lines into the moving class and the static class. The moving
/// class is the color tagged "red" if present, otherwise the color of
/// line 1.
fn color_classes(arr: &PolyArrangement) -> Result<(Vec<usize>, Vec<usize>)> {
    let colors = arr
        .colors()
        .ok_or_else(|| Error::Precondition("arrangement has no colors".into()))?;
    let mut tags: Vec<&String> = colors.iter().collect();
    tags.sort();
    tags.dedup();
    if tags.len() != 2 {
        return Err(Error::Precondition(format!(
            "need exactly two colors, found {}",
            tags.len()
        )));
    }
    let moving = if tags.iter().any(|t| t.as_str() == "red") {
        "red".to_string()
    } else {
        colors[0].clone()
    };
    let (red, blue) = (0..arr.n()).partition(|&i| colors[i] == moving);
    Ok((red, blue))
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut v = [a, b, c];
    v.sort_unstable();
    v
}

/// All events with `t > 0` while the moving class is shifted by `t` (up)
/// or `-t` (down), sorted by `t`.
pub fn translation_events(arr: &PolyArrangement, direction: Direction) -> Result<Vec<TranslationEvent>> {
    if !is_approaching(arr, true) {
        return Err(Error::Precondition("needs a strictly approaching arrangement".into()));
    }
    let (red, blue) = color_classes(arr)?;
    let events = crossings(arr)?;
    let is_red = |i: usize| red.contains(&i);
    let sign = match direction {
        Direction::Up => Rational::from_integer(1.into()),
        Direction::Down => Rational::from_integer((-1).into()),
    };
    let mut out = Vec::new();
    for e in &events {
        let members = &e.lines;
        // Pairs within one class meeting at this point.
        for (ai, &a) in members.iter().enumerate() {
            for &b in &members[ai + 1..] {
                if is_red(a) != is_red(b) {
                    continue;
                }
                let red_pair = is_red(a);
                let others = if red_pair { &blue } else { &red };
                for &other in others.iter() {
                    let height = arr.evaluate(other, &e.x);
                    let (t, kind, location) = if red_pair {
                        (
                            (&height - &e.y) * &sign,
                            EventKind::CrossingOverLine,
                            Point::new(e.x.clone(), height),
                        )
                    } else {
                        (
                            (&e.y - &height) * &sign,
                            EventKind::LineOverCrossing,
                            e.point(),
                        )
                    };
                    if t.is_positive() {
                        out.push(TranslationEvent {
                            t,
                            kind,
                            lines: sorted3(a, b, other),
                            location,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn is_pencil(arr: &PolyArrangement) -> Result<bool> {
    let events = crossings(arr)?;
    Ok(events.len() == 1 && events[0].lines.len() == arr.n())
}

fn first_events(arr: &PolyArrangement) -> Result<Vec<TranslationEvent>> {
    let mut all = translation_events(arr, Direction::Up)?;
    all.extend(translation_events(arr, Direction::Down)?);
    all.sort();
    let Some(t0) = all.first().map(|e| e.t.clone()) else {
        return Ok(vec![]);
    };
    Ok(all.into_iter().take_while(|e| e.t == t0).collect())
}

/// A triangular cell bounded by lines of both colors, found as the first
/// event of a vertical translation of one color class.
pub fn bichromatic_triangle(arr: &PolyArrangement) -> Result<TriangleCell> {
    if arr.n() < 3 {
        return Err(Error::Precondition("need at least three lines".into()));
    }
    if is_pencil(arr)? {
        return Err(Error::Pencil("all lines pass through one point".into()));
    }
    let (red, _) = color_classes(arr)?;
    let first = first_events(arr)?;
    for e in &first {
        if let Some(cell) = verify_triangle_cell(arr, e.lines[0], e.lines[1], e.lines[2])? {
            return Ok(cell);
        }
    }
    // Simultaneous or concurrent first events: move only the translated
    // class by a tiny amount and read the participants there.
    let perturbed = perturb_lines_to_simple(arr, &red)?;
    for e in first_events(&perturbed)? {
        if let Some(cell) = verify_triangle_cell(arr, e.lines[0], e.lines[1], e.lines[2])? {
            return Ok(cell);
        }
    }
    Err(Error::Verification(
        "first translation event does not bound a triangular cell".into(),
    ))
}
