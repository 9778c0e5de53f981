//! Text grammar: terms joined by " + " / " - ", each term `c*V1^e1*V2^e2`,
//! with the coefficient omitted when it is 1 and exponents omitted when 1.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coefficient, FieldSpec};

use super::monomial::Monomial;
use super::multipoly::MultiPoly;
use super::space::VarSpace;

fn format_term(space: &VarSpace, m: &Monomial, c: &Coefficient) -> String {
    let vars: Vec<String> =
        m.0.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| match e {
                1 => space.name(i).to_string(),
                _ => format!("{}^{e}", space.name(i)),
            })
            .collect();
    match (c.is_one(), vars.is_empty()) {
        (_, true) => c.to_string(),
        (true, false) => vars.join("*"),
        (false, false) => format!("{c}*{}", vars.join("*")),
    }
}

pub(crate) fn format_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&format_term(p.space(), m, &abs));
    }
    out
}

fn parse_term(term: &str, negative: bool, space: &Arc<VarSpace>, field: FieldSpec) -> Result<(Monomial, Coefficient)> {
    let mut coeff = if negative { -&field.one() } else { field.one() };
    let mut mono = Monomial::one(space.nvars());
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{term}`")));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coeff = &coeff * &field.parse_coefficient(factor)?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: u32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                (n.trim(), e)
            }
            None => (factor, 1),
        };
        let i = space.index_of(name).ok_or_else(|| Error::Parse(format!("unknown variable `{name}` in {space}")))?;
        mono.0[i] += exp;
    }
    Ok((mono, coeff))
}

/// Parses the text grammar; accepts ASCII `-` or Unicode `−` and free spacing.
pub fn parse_poly(s: &str, space: &Arc<VarSpace>, field: FieldSpec) -> Result<MultiPoly> {
    let s = s.replace('\u{2212}', "-");
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut dangling = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                if !current.trim().is_empty() {
                    terms.push((std::mem::take(&mut current), negative));
                    negative = false;
                }
                negative ^= ch == '-';
                dangling = true;
            }
            c => {
                current.push(c);
                dangling &= c.is_whitespace();
            }
        }
    }
    if dangling || (current.trim().is_empty() && terms.is_empty()) {
        return Err(Error::Parse(format!("incomplete polynomial `{s}`")));
    }
    if !current.trim().is_empty() {
        terms.push((current, negative));
    }
    let mut poly = MultiPoly::zero(space, field);
    for (t, neg) in terms {
        let t = t.trim();
        if t == "0" {
            continue;
        }
        let (m, c) = parse_term(t, neg, space, field)?;
        poly = &poly + &MultiPoly::monomial(space, m, c);
    }
    Ok(poly)
}
