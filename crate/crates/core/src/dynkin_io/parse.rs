//! The crossed-Dynkin mini-language.
//!
//! ```text
//! diagram := family rank [ ":" mask ]
//! family  := one of A..G (either case)
//! rank    := decimal digits
//! mask    := ( "*" | "x" )^rank
//! ```
//!
//! Columns in error messages are 1-based character positions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::grading::CrossedDiagram;
use crate::rootsys::{Family, LieType};

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

/// Type and optional mask, before any semantic checks on the crosses.
fn parse_parts(s: &str) -> Result<(LieType, Option<BTreeSet<usize>>)> {
    let chars: Vec<char> = s.chars().collect();
    let Some(&first) = chars.first() else {
        return Err(parse_err(1, "empty diagram"));
    };
    let family = Family::from_letter(first)
        .ok_or_else(|| parse_err(1, format!("expected a family letter A-G, found {first:?}")))?;
    let digits = chars[1..].iter().take_while(|c| c.is_ascii_digit()).count();
    if digits == 0 {
        return Err(parse_err(2, "expected a decimal rank"));
    }
    let rank_text: String = chars[1..1 + digits].iter().collect();
    let rank: usize = rank_text
        .parse()
        .map_err(|_| parse_err(2, format!("rank {rank_text} is too large")))?;
    let lie_type = LieType::new(family, rank).map_err(|e| parse_err(2, e.to_string()))?;
    let mut pos = 1 + digits;
    if pos == chars.len() {
        return Ok((lie_type, None));
    }
    if chars[pos] != ':' {
        return Err(parse_err(pos + 1, format!("expected ':' or end of input, found {:?}", chars[pos])));
    }
    pos += 1;
    let mask = &chars[pos..];
    let mut sigma = BTreeSet::new();
    for (k, &c) in mask.iter().enumerate() {
        match c {
            'x' | 'X' => {
                sigma.insert(k + 1);
            }
            '*' => {}
            other => return Err(parse_err(pos + k + 1, format!("expected '*' or 'x', found {other:?}"))),
        }
    }
    if mask.len() != rank {
        return Err(parse_err(
            pos + 1,
            format!("mask has {} nodes but {lie_type} has rank {rank}", mask.len()),
        ));
    }
    Ok((lie_type, Some(sigma)))
}

/// A bare type such as `E7`.
pub fn parse_type(s: &str) -> Result<LieType> {
    match parse_parts(s)? {
        (t, None) => Ok(t),
        (_, Some(_)) => Err(Error::Semantic(format!("expected a bare type, got the diagram {s}"))),
    }
}

/// Comma-separated 1-based node list such as `1,3`.
pub fn parse_cross_list(s: &str, rank: usize) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    let mut column = 1;
    for item in s.split(',') {
        let node: usize = item
            .parse()
            .map_err(|_| parse_err(column, format!("expected a node number, found {item:?}")))?;
        if node == 0 || node > rank {
            return Err(Error::NodeOutOfRange { node, rank });
        }
        out.insert(node);
        column += item.chars().count() + 1;
    }
    Ok(out)
}

fn require_crosses(t: LieType, sigma: BTreeSet<usize>) -> Result<CrossedDiagram> {
    if sigma.is_empty() {
        return Err(Error::Semantic(format!("{t} has no crossed node; a parabolic needs at least one")));
    }
    CrossedDiagram::new(t, sigma)
}

/// `B4:**x*` and similar; at least one node must be crossed.
pub fn parse_diagram(s: &str) -> Result<CrossedDiagram> {
    match parse_parts(s)? {
        (t, Some(sigma)) => require_crosses(t, sigma),
        (t, None) => Err(Error::Semantic(format!("{t} has no mask; give one or a cross list"))),
    }
}

/// A diagram given either with a mask or as a bare type plus cross list.
pub fn parse_with_crosses(s: &str, crosses: Option<&str>) -> Result<CrossedDiagram> {
    match (parse_parts(s)?, crosses) {
        ((t, Some(sigma)), None) => require_crosses(t, sigma),
        ((t, None), Some(list)) => require_crosses(t, parse_cross_list(list, t.rank())?),
        ((_, Some(_)), Some(_)) => Err(Error::Semantic("give either a mask or a cross list, not both".into())),
        ((t, None), None) => Err(Error::Semantic(format!("{t} has no crossed node; a parabolic needs at least one"))),
    }
}

/// Inverse of [`parse_diagram`].
pub fn print_diagram(d: &CrossedDiagram) -> String {
    d.to_string()
}
