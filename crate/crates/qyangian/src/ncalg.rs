//! Free associative algebra on indexed generators with a graded rewrite
//! engine.
//!
//! Letters are generators x[i,j]^(r) from one of a few families (reflection
//! generators s, quantum-loop generators t/tbar, and the rescaled sigma
//! letters used at q = 1).  Words multiply by concatenation; elements are
//! finite Q(q)-linear combinations of words.
//!
//! A [`RewriteTable`] maps reducible adjacent letter pairs to elements.  A
//! pair is reducible when it is inverted for the PBW letter order, or when it
//! is a diagonal zero-mode inverse pair in the doubled t/tbar alphabet.
//! Rules preserve total mode degree or lower it (the defining relations are
//! filtered, not graded: a degree-d exchange carries tails of degree d-2),
//! which together with a step budget keeps reduction terminating in practice.

use crate::scalars::QRatFun;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("missing rewrite rule for {left} {right} (degree {degree})")]
    MissingRule { left: GenSym, right: GenSym, degree: i64 },
    #[error("step budget {budget} exhausted during reduction")]
    StepBudget { budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// Letters
// ---------------------------------------------------------------------------

/// Generator family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Reflection-equation generators s[i,j]^(r).
    S,
    /// Quantum-loop generators t[i,j]^(r) (nonnegative modes).
    T,
    /// Quantum-loop generators tbar[i,j]^(r) (nonnegative modes).
    Tbar,
    /// Rescaled generators sigma[i,j]^(r) = s[i,j]^(r) / (q - q^-1).
    Sigma,
}

impl Family {
    fn tag(self) -> u64 {
        match self {
            Family::S => 0,
            Family::T => 1,
            Family::Tbar => 2,
            Family::Sigma => 3,
        }
    }

    fn from_tag(t: u64) -> Family {
        match t {
            0 => Family::S,
            1 => Family::T,
            2 => Family::Tbar,
            _ => Family::Sigma,
        }
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Family::S => "s",
            Family::T => "t",
            Family::Tbar => "tb",
            Family::Sigma => "sig",
        }
    }
}

/// A single generator, packed so that the integer order of the packed key is
/// the PBW letter order: t-letters precede tbar-letters, except that each
/// diagonal zero mode tbar[i,i]^(0) sorts directly after t[i,i]^(0) so that
/// inverse pairs become adjacent in ordered words; within a block the order
/// is lexicographic on (i, j, r).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSym(u64);

impl GenSym {
    pub fn new(family: Family, i: u8, j: u8, r: u32) -> GenSym {
        assert!(i >= 1 && j >= 1 && i <= 63 && j <= 63, "index out of range");
        assert!(r < (1 << 24), "mode out of range");
        let (block, sub) = match family {
            Family::S | Family::Sigma | Family::T => (0u64, 0u64),
            Family::Tbar => {
                if i == j && r == 0 {
                    (0, 1)
                } else {
                    (1, 0)
                }
            }
        };
        GenSym(
            block << 56
                | (i as u64) << 48
                | (j as u64) << 40
                | (r as u64) << 16
                | sub << 8
                | family.tag(),
        )
    }

    pub fn family(self) -> Family {
        Family::from_tag(self.0 & 0xff)
    }

    pub fn i(self) -> u8 {
        ((self.0 >> 48) & 0xff) as u8
    }

    pub fn j(self) -> u8 {
        ((self.0 >> 40) & 0xff) as u8
    }

    pub fn r(self) -> u32 {
        ((self.0 >> 16) & 0xff_ffff) as u32
    }

    pub fn degree(self) -> i64 {
        self.r() as i64
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]^({})", self.family().prefix(), self.i(), self.j(), self.r())
    }
}

// ---------------------------------------------------------------------------
// Words and elements
// ---------------------------------------------------------------------------

/// Product of letters; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<GenSym>);

impl Word {
    pub fn one() -> Word {
        Word(Vec::new())
    }

    pub fn letter(g: GenSym) -> Word {
        Word(vec![g])
    }

    pub fn from_letters(ls: impl IntoIterator<Item = GenSym>) -> Word {
        Word(ls.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|g| g.degree()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", g)?;
        }
        Ok(())
    }
}

/// Finite Q(q)-linear combination of words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCElem {
    terms: BTreeMap<Word, QRatFun>,
}

impl NCElem {
    pub fn zero() -> NCElem {
        NCElem::default()
    }

    pub fn one() -> NCElem {
        NCElem::from_word(Word::one())
    }

    pub fn from_word(w: Word) -> NCElem {
        NCElem::from_term(w, QRatFun::one())
    }

    pub fn from_letter(g: GenSym) -> NCElem {
        NCElem::from_word(Word::letter(g))
    }

    pub fn from_term(w: Word, c: QRatFun) -> NCElem {
        let mut e = NCElem::zero();
        e.add_term(w, c);
        e
    }

    pub fn scalar(c: QRatFun) -> NCElem {
        NCElem::from_term(Word::one(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QRatFun)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// The largest word of the support with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &QRatFun)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, w: &Word) -> QRatFun {
        self.terms.get(w).cloned().unwrap_or_else(QRatFun::zero)
    }

    pub fn add_term(&mut self, w: Word, c: QRatFun) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &NCElem) -> NCElem {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &NCElem) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &NCElem, k: &QRatFun) {
        if k.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.mul(k));
        }
    }

    pub fn neg(&self) -> NCElem {
        NCElem { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &NCElem) -> NCElem {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, k: &QRatFun) -> NCElem {
        if k.is_zero() {
            return NCElem::zero();
        }
        NCElem { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul(k))).collect() }
    }

    /// Free product: bilinear extension of word concatenation, no reduction.
    pub fn mul(&self, other: &NCElem) -> NCElem {
        let mut out = NCElem::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&QRatFun) -> QRatFun) -> NCElem {
        let mut out = NCElem::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|w| w.degree()).max()
    }

    /// Terms whose word has the given length and total degree.
    pub fn component(&self, length: usize, degree: i64) -> NCElem {
        let mut out = NCElem::zero();
        for (w, c) in &self.terms {
            if w.len() == length && w.degree() == degree {
                out.add_term(w.clone(), c.clone());
            }
        }
        out
    }

    /// Parse the textual rendering produced by `Display`.
    pub fn parse(s: &str) -> Result<NCElem, ReduceError> {
        parse_elem(s)
    }
}

impl fmt::Display for NCElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            if !w.is_empty() {
                write!(f, " {}", w)?;
            }
        }
        Ok(())
    }
}

fn parse_letter(s: &str) -> Result<GenSym, ReduceError> {
    let err = || ReduceError::Parse(format!("bad letter {s:?}"));
    let open = s.find('[').ok_or_else(err)?;
    let family = match &s[..open] {
        "s" => Family::S,
        "t" => Family::T,
        "tb" => Family::Tbar,
        "sig" => Family::Sigma,
        _ => return Err(err()),
    };
    let close = s.find(']').ok_or_else(err)?;
    let mut idx = s[open + 1..close].split(',');
    let i: u8 = idx.next().ok_or_else(err)?.trim().parse().map_err(|_| err())?;
    let j: u8 = idx.next().ok_or_else(err)?.trim().parse().map_err(|_| err())?;
    if idx.next().is_some() {
        return Err(err());
    }
    let rest = &s[close + 1..];
    let rest = rest.strip_prefix("^(").ok_or_else(err)?;
    let rest = rest.strip_suffix(')').ok_or_else(err)?;
    let r: u32 = rest.trim().parse().map_err(|_| err())?;
    Ok(GenSym::new(family, i, j, r))
}

fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    // Split on the separator only outside parentheses.
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let bytes = s.as_bytes();
    let mut k = 0usize;
    while k < bytes.len() {
        match bytes[k] {
            b'(' => depth += 1,
            b')' => depth = depth.saturating_sub(1),
            _ => {
                if depth == 0 && s[k..].starts_with(sep) {
                    out.push(&s[start..k]);
                    start = k + sep.len();
                    k += sep.len();
                    continue;
                }
            }
        }
        k += 1;
    }
    out.push(&s[start..]);
    out
}

fn parse_elem(s: &str) -> Result<NCElem, ReduceError> {
    let s = s.trim();
    if s == "0" {
        return Ok(NCElem::zero());
    }
    let mut out = NCElem::zero();
    for chunk in split_top_level(s, " + ") {
        let chunk = chunk.trim();
        if !chunk.starts_with('(') {
            return Err(ReduceError::Parse(format!("term must start with coefficient: {chunk:?}")));
        }
        // The coefficient is the parenthesized prefix; find its matching paren.
        let mut depth = 0usize;
        let mut split = None;
        for (k, ch) in chunk.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        split = Some(k);
                        break;
                    }
                }
                _ => {}
            }
        }
        let split = split.ok_or_else(|| ReduceError::Parse("unbalanced parens".into()))?;
        let coeff = QRatFun::parse(&chunk[1..split])
            .map_err(|e| ReduceError::Parse(e.to_string()))?;
        let mut letters = Vec::new();
        for tok in chunk[split + 1..].split_whitespace() {
            letters.push(parse_letter(tok)?);
        }
        out.add_term(Word(letters), coeff);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Rewrite tables
// ---------------------------------------------------------------------------

/// Reduction strategy: which reducible adjacent pair to rewrite first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// True for the diagonal zero-mode inverse pair t[i,i]^(0) tbar[i,i]^(0),
/// which reduces to 1 even though it is not inverted for the letter order.
pub fn is_unit_pair(x: GenSym, y: GenSym) -> bool {
    x.family() == Family::T
        && y.family() == Family::Tbar
        && x.i() == x.j()
        && y.i() == y.j()
        && x.i() == y.i()
        && x.r() == 0
        && y.r() == 0
}

/// True when the adjacent pair x y admits (and requires) a rewrite rule.
pub fn is_reducible_pair(x: GenSym, y: GenSym) -> bool {
    x > y || is_unit_pair(x, y)
}

/// Quadratic rewrite rules keyed by a reducible adjacent pair, synthesized
/// through total degree `dmax`.
#[derive(Debug, Clone)]
pub struct RewriteTable {
    pub family: Family,
    pub n: u8,
    pub dmax: i64,
    rules: HashMap<(GenSym, GenSym), NCElem>,
}

impl RewriteTable {
    pub fn new(family: Family, n: u8) -> RewriteTable {
        RewriteTable { family, n, dmax: -1, rules: HashMap::new() }
    }

    pub fn rule(&self, x: GenSym, y: GenSym) -> Option<&NCElem> {
        self.rules.get(&(x, y))
    }

    pub fn insert_rule(&mut self, x: GenSym, y: GenSym, rhs: NCElem) {
        debug_assert!(is_reducible_pair(x, y));
        self.rules.insert((x, y), rhs);
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Rules with coefficients mapped through q -> 1/q (the table of the
    /// twin presentation at inverted deformation parameter).
    pub fn bar(&self) -> RewriteTable {
        RewriteTable {
            family: self.family,
            n: self.n,
            dmax: self.dmax,
            rules: self
                .rules
                .iter()
                .map(|(k, v)| (*k, v.map_coeffs(|c| c.bar())))
                .collect(),
        }
    }

    /// Versioned line-oriented serialization for on-disk caching.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        out.push_str("qyangian-table v1\n");
        out.push_str(&format!("family {}\n", self.family.prefix()));
        out.push_str(&format!("n {}\n", self.n));
        out.push_str(&format!("dmax {}\n", self.dmax));
        let mut keys: Vec<_> = self.rules.keys().copied().collect();
        keys.sort();
        for (x, y) in keys {
            out.push_str(&format!("rule {} {} := {}\n", x, y, self.rules[&(x, y)]));
        }
        out
    }

    pub fn from_lines(s: &str) -> Result<RewriteTable, ReduceError> {
        let mut lines = s.lines();
        let err = |m: &str| ReduceError::Parse(m.to_string());
        if lines.next() != Some("qyangian-table v1") {
            return Err(err("bad header"));
        }
        let fam_line = lines.next().ok_or_else(|| err("missing family"))?;
        let family = match fam_line.strip_prefix("family ") {
            Some("s") => Family::S,
            Some("t") => Family::T,
            Some("tb") => Family::Tbar,
            Some("sig") => Family::Sigma,
            _ => return Err(err("bad family")),
        };
        let n: u8 = lines
            .next()
            .and_then(|l| l.strip_prefix("n "))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err("bad n"))?;
        let dmax: i64 = lines
            .next()
            .and_then(|l| l.strip_prefix("dmax "))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err("bad dmax"))?;
        let mut table = RewriteTable::new(family, n);
        table.dmax = dmax;
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let body = line.strip_prefix("rule ").ok_or_else(|| err("bad rule line"))?;
            let (lhs, rhs) = body
                .split_once(" := ")
                .ok_or_else(|| err("bad rule line"))?;
            let mut ls = lhs.split_whitespace();
            let x = parse_letter(ls.next().ok_or_else(|| err("bad lhs"))?)?;
            let y = parse_letter(ls.next().ok_or_else(|| err("bad lhs"))?)?;
            table.insert_rule(x, y, NCElem::parse(rhs)?);
        }
        Ok(table)
    }
}

/// First reducible adjacent pair position under the strategy, if any.
fn find_redex(w: &Word, strategy: Strategy) -> Option<usize> {
    let ls = &w.0;
    match strategy {
        Strategy::Leftmost => (0..ls.len().saturating_sub(1))
            .find(|&k| is_reducible_pair(ls[k], ls[k + 1])),
        Strategy::Rightmost => (0..ls.len().saturating_sub(1))
            .rev()
            .find(|&k| is_reducible_pair(ls[k], ls[k + 1])),
    }
}

/// True when no adjacent pair of the word is reducible.
pub fn is_normal_word(w: &Word) -> bool {
    w.0.windows(2).all(|p| !is_reducible_pair(p[0], p[1]))
}

/// Single-shot reduction to normal form.
///
/// Pending terms are processed heaviest-first (degree, then length, then
/// word order), so rewrites merge downward and coefficient cancellation is
/// maximal.  Each rule application costs one step against the budget.
pub fn normal_form(
    x: &NCElem,
    table: &RewriteTable,
    max_steps: u64,
    strategy: Strategy,
) -> Result<NCElem, ReduceError> {
    type Key = (i64, usize, Word);
    let mut pending: BTreeMap<Key, QRatFun> = BTreeMap::new();
    let push = |pending: &mut BTreeMap<Key, QRatFun>, w: Word, c: QRatFun| {
        if c.is_zero() {
            return;
        }
        let key = (w.degree(), w.len(), w);
        match pending.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    };
    for (w, c) in x.terms() {
        push(&mut pending, w.clone(), c.clone());
    }
    let mut out = NCElem::zero();
    let mut steps = 0u64;
    while let Some((key, coeff)) = pending.pop_last() {
        let w = key.2;
        match find_redex(&w, strategy) {
            None => out.add_term(w, coeff),
            Some(k) => {
                let (x0, y0) = (w.0[k], w.0[k + 1]);
                let rhs = table.rule(x0, y0).ok_or(ReduceError::MissingRule {
                    left: x0,
                    right: y0,
                    degree: x0.degree() + y0.degree(),
                })?;
                steps += 1;
                if steps > max_steps {
                    return Err(ReduceError::StepBudget { budget: max_steps });
                }
                for (u, c) in rhs.terms() {
                    let mut v = Vec::with_capacity(w.0.len() - 2 + u.0.len());
                    v.extend_from_slice(&w.0[..k]);
                    v.extend_from_slice(&u.0);
                    v.extend_from_slice(&w.0[k + 2..]);
                    push(&mut pending, Word(v), coeff.mul(c));
                }
            }
        }
    }
    Ok(out)
}

/// Reduce a word both leftmost-first and rightmost-first and compare.
pub fn confluence_probe_word(
    w: &Word,
    table: &RewriteTable,
    max_steps: u64,
) -> Result<bool, ReduceError> {
    let x = NCElem::from_word(w.clone());
    let l = normal_form(&x, table, max_steps, Strategy::Leftmost)?;
    let r = normal_form(&x, table, max_steps, Strategy::Rightmost)?;
    Ok(l == r)
}

// ---------------------------------------------------------------------------
// Alphabet and word enumeration
// ---------------------------------------------------------------------------

/// The admissible letters of the family at rank n with mode exactly r.
///
/// Zero-mode constraints: s[i,j]^(0) exists only for i > j; t[i,j]^(0) only
/// for i >= j; tb[i,j]^(0) only for i <= j.  All (i,j) are admissible for
/// positive modes.  The doubled alphabet `T` includes the tbar letters.
pub fn letters_of_degree(family: Family, n: u8, r: u32) -> Vec<GenSym> {
    let mut out = Vec::new();
    match family {
        Family::S | Family::Sigma => {
            for i in 1..=n {
                for j in 1..=n {
                    if r > 0 || i > j {
                        out.push(GenSym::new(family, i, j, r));
                    }
                }
            }
        }
        Family::T | Family::Tbar => {
            for i in 1..=n {
                for j in 1..=n {
                    if r > 0 || i >= j {
                        out.push(GenSym::new(Family::T, i, j, r));
                    }
                    if r > 0 || i <= j {
                        out.push(GenSym::new(Family::Tbar, i, j, r));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// All words of the exact length and total degree.
pub fn words_of(family: Family, n: u8, length: usize, degree: i64) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(
        family: Family,
        n: u8,
        length: usize,
        degree: i64,
        stack: &mut Vec<GenSym>,
        out: &mut Vec<Word>,
    ) {
        if stack.len() == length {
            if degree == 0 {
                out.push(Word(stack.clone()));
            }
            return;
        }
        if degree < 0 {
            return;
        }
        for r in 0..=degree as u32 {
            for g in letters_of_degree(family, n, r) {
                stack.push(g);
                rec(family, n, length, degree - r as i64, stack, out);
                stack.pop();
            }
        }
    }
    rec(family, n, length, degree, &mut stack, &mut out);
    out
}

/// The normal (ordered) words of the exact length and total degree.
pub fn normal_words_of(family: Family, n: u8, length: usize, degree: i64) -> Vec<Word> {
    words_of(family, n, length, degree)
        .into_iter()
        .filter(is_normal_word_ref)
        .collect()
}

fn is_normal_word_ref(w: &Word) -> bool {
    is_normal_word(w)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::QRatFun;

    fn s(i: u8, j: u8, r: u32) -> GenSym {
        GenSym::new(Family::S, i, j, r)
    }

    #[test]
    fn letter_order_is_lex_on_index_then_mode() {
        assert!(s(1, 2, 5) < s(3, 2, 0));
        assert!(s(2, 1, 0) < s(2, 1, 1));
        assert!(s(2, 1, 9) < s(2, 2, 0));
    }

    #[test]
    fn doubled_alphabet_places_diagonal_zero_modes_adjacent() {
        let t0 = GenSym::new(Family::T, 1, 1, 0);
        let tb0 = GenSym::new(Family::Tbar, 1, 1, 0);
        let t21 = GenSym::new(Family::T, 2, 1, 0);
        let tb12 = GenSym::new(Family::Tbar, 1, 2, 1);
        assert!(t0 < tb0, "inverse sorts directly after the zero mode");
        assert!(tb0 < t21, "inverse stays inside the t block");
        assert!(t21 < tb12, "general tbar letters come after all t letters");
        assert!(is_unit_pair(t0, tb0));
        assert!(!is_unit_pair(tb0, t0));
        assert!(is_reducible_pair(tb0, t0));
        assert!(is_reducible_pair(t0, tb0));
    }

    #[test]
    fn multiply_is_concatenation_with_coefficient_product() {
        let a = NCElem::from_letter(s(2, 1, 0));
        let b = NCElem::from_letter(s(1, 1, 1));
        let ab = a.mul(&b);
        assert_eq!(ab.support_len(), 1);
        let w = Word::from_letters([s(2, 1, 0), s(1, 1, 1)]);
        assert!(ab.coeff(&w).is_one());
        assert!(a.mul(&NCElem::one()) == a);
    }

    #[test]
    fn normal_form_with_hand_built_rule() {
        // Hand-built table holding one exchange rule:
        //   s[3,2]^(0) s[1,2]^(1) -> q^-1 s[1,2]^(1) s[3,2]^(0) - q^-1 (q^-1 - q) s[1,3]^(1)
        // which encodes the q-commutator [s_12(u), s_32^(0)]_q = (q^-1 - q) s_13(u).
        let mut table = RewriteTable::new(Family::S, 3);
        table.dmax = 1;
        let big = s(3, 2, 0);
        let small = s(1, 2, 1);
        let mut rhs = NCElem::from_term(
            Word::from_letters([small, big]),
            QRatFun::qpow(-1),
        );
        rhs.add_term(
            Word::letter(s(1, 3, 1)),
            QRatFun::qpow(-1).mul(&QRatFun::qdiff().neg()).neg(),
        );
        table.insert_rule(big, small, rhs);

        // q-commutator reduces to the single lower letter.
        let lhs = NCElem::from_word(Word::from_letters([small, big])).sub(
            &NCElem::from_term(Word::from_letters([big, small]), QRatFun::q()),
        );
        let nf = normal_form(&lhs, &table, 1000, Strategy::Leftmost).unwrap();
        let expect = NCElem::from_term(Word::letter(s(1, 3, 1)), QRatFun::qdiff().neg().neg());
        // (q^-1 - q) = -(q - q^-1)
        assert_eq!(nf, expect.neg());
        // An ordered word is already normal.
        let ordered = NCElem::from_word(Word::from_letters([small, big]));
        assert_eq!(normal_form(&ordered, &table, 10, Strategy::Rightmost).unwrap(), ordered);
    }

    #[test]
    fn missing_rule_is_reported_with_pair_and_degree() {
        let table = RewriteTable::new(Family::S, 2);
        let w = Word::from_letters([s(2, 1, 3), s(1, 1, 2)]);
        let err = normal_form(&NCElem::from_word(w), &table, 10, Strategy::Leftmost).unwrap_err();
        match err {
            ReduceError::MissingRule { left, right, degree } => {
                assert_eq!(left, s(2, 1, 3));
                assert_eq!(right, s(1, 1, 2));
                assert_eq!(degree, 5);
            }
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn alphabet_respects_zero_mode_constraints() {
        // Rank 2 s-letters: one zero mode, four letters per positive mode.
        assert_eq!(letters_of_degree(Family::S, 2, 0), vec![s(2, 1, 0)]);
        assert_eq!(letters_of_degree(Family::S, 2, 1).len(), 4);
        // Doubled rank-2 alphabet: t lower-triangular + tbar upper-triangular
        // zero modes, eight letters per positive mode.
        assert_eq!(letters_of_degree(Family::T, 2, 0).len(), 6);
        assert_eq!(letters_of_degree(Family::T, 2, 1).len(), 8);
    }

    #[test]
    fn word_enumeration_counts() {
        // Length 2, degree 0 over rank 2: only s[2,1]^(0) s[2,1]^(0).
        let w = words_of(Family::S, 2, 2, 0);
        assert_eq!(w.len(), 1);
        assert!(normal_words_of(Family::S, 2, 2, 0).len() == 1);
        // Length 1 words of degree d = alphabet size.
        assert_eq!(words_of(Family::S, 2, 1, 1).len(), 4);
        assert_eq!(words_of(Family::S, 3, 1, 0).len(), 3);
    }

    #[test]
    fn element_and_table_roundtrip() {
        let mut e = NCElem::from_term(
            Word::from_letters([s(2, 1, 0), s(1, 1, 1)]),
            QRatFun::parse("(q^2-1)/(q^4+q+1)").unwrap(),
        );
        e.add_term(Word::one(), QRatFun::qint(3).neg());
        let back = NCElem::parse(&e.to_string()).unwrap();
        assert_eq!(e, back);

        let mut table = RewriteTable::new(Family::S, 2);
        table.dmax = 2;
        table.insert_rule(
            s(2, 2, 1),
            s(1, 1, 1),
            NCElem::from_term(Word::from_letters([s(1, 1, 1), s(2, 2, 1)]), QRatFun::qpow(2)),
        );
        let text = table.to_lines();
        let parsed = RewriteTable::from_lines(&text).unwrap();
        assert_eq!(parsed.to_lines(), text);
        assert_eq!(parsed.dmax, 2);
        assert_eq!(parsed.n, 2);
    }
}
